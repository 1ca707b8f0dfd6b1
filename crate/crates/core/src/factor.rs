//! Subfactor families p_k(y) and q_k(y) of the s-family, their symmetry
//! checks, the special-value product formulas, and the alternating-spin
//! component polynomials built from them.
//!
//! p_k is defined through s_{2k+1}(y^2) = s_{2k+1}(0) p_k(y) p_k(-y) with
//! p_k(0) = 1 and a derivative-sign convention; q_{k-1} through the even
//! factorization with the weighted Möbius image of p_{-k-1}. The primary
//! extraction path is a polynomial gcd against the Möbius-symmetrized image;
//! a certified fallback factors over the integers and regroups.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, BigRat};
use crate::tau::SFamily;
use crate::unipoly::UniPoly;
use crate::zfactor;

pub const Y_VAR: &str = "y";
pub const ZETA_VAR: &str = "zeta";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtractRoute {
    /// gcd(F, Möbius image of F) recovered the factor directly.
    Gcd,
    /// Full integer factorization and regrouping was needed.
    FullFactorization,
}

#[derive(Debug)]
pub struct PQFamily {
    s: SFamily,
    p: BTreeMap<i64, (UniPoly, ExtractRoute)>,
    q: BTreeMap<i64, UniPoly>,
}

/// c_k = 2^(-k(k+2)) for k >= 0 and 2^(-k^2) (2/3)^(2k+1) for k < 0.
pub fn c_k(k: i64) -> BigRat {
    if k >= 0 {
        rat::rat_pow(&rat::int(2), -k * (k + 2))
    } else {
        rat::rat_pow(&rat::int(2), -k * k) * rat::rat_pow(&rat::rat(2, 3), 2 * k + 1)
    }
}

/// The weighted symmetrization map y -> (1-y)/(1+3y) on polynomials.
fn sym_image(p: &UniPoly, weight: usize) -> Result<UniPoly> {
    let (a, b, g, d) = (rat::int(-1), rat::int(1), rat::int(3), rat::int(1));
    p.mobius_substitute((&a, &b, &g, &d), weight)
}

/// The weighted map y -> (y-1)/(1+3y) used by the even-index factorization.
fn even_fac_image(p: &UniPoly, weight: usize) -> Result<UniPoly> {
    let (a, b, g, d) = (rat::int(1), rat::int(-1), rat::int(3), rat::int(1));
    p.mobius_substitute((&a, &b, &g, &d), weight)
}

impl PQFamily {
    pub fn new() -> Self {
        PQFamily {
            s: SFamily::new(),
            p: BTreeMap::new(),
            q: BTreeMap::new(),
        }
    }

    /// s_n(y^2) / s_n(0) as a polynomial in y, plus s_n(0).
    fn normalized_even_s(&mut self, n: i64) -> Result<(UniPoly, BigRat)> {
        let s_n = self.s.s(n)?;
        let at0 = s_n.eval(&rat::int(0));
        if at0.is_zero() {
            return Err(Error::SplitFailure {
                k: n,
                detail: "s_n(0) = 0".into(),
            });
        }
        let f = s_n.mul_scalar(&at0.recip()).substitute_power(Y_VAR, 2);
        Ok((f, at0))
    }

    /// Does `cand` satisfy the defining product, normalization, convention,
    /// and integrality for p_k?
    fn p_candidate_ok(cand: &UniPoly, k: i64, f: &UniPoly) -> bool {
        if cand.eval(&rat::int(0)) != rat::int(1) {
            return false;
        }
        let product = cand.mul(&cand.scale_arg(&rat::int(-1)));
        if product != *f {
            return false;
        }
        let d1 = cand.derivative().eval(&rat::int(0));
        if k >= 1 && !d1.is_positive() {
            return false;
        }
        if k <= -2 && !d1.is_negative() {
            return false;
        }
        true
    }

    /// Extract p_k from s_{2k+1}(y^2) = s_{2k+1}(0) p_k(y) p_k(-y).
    pub fn p(&mut self, k: i64) -> Result<UniPoly> {
        if let Some((p, _)) = self.p.get(&k) {
            return Ok(p.clone());
        }
        let (p, route) = self.extract_p_inner(k)?;
        if !p.is_integer_coeffs() {
            return Err(Error::NonIntegerCoefficients {
                what: format!("p_{}", k),
            });
        }
        let expect_deg = (k * (k + 1)) as usize;
        if p.degree().unwrap_or(0) != expect_deg {
            return Err(Error::SplitFailure {
                k,
                detail: format!(
                    "degree {} != k(k+1) = {}",
                    p.degree().unwrap_or(0),
                    expect_deg
                ),
            });
        }
        self.p.insert(k, (p.clone(), route));
        Ok(p)
    }

    pub fn p_route(&self, k: i64) -> Option<ExtractRoute> {
        self.p.get(&k).map(|(_, r)| *r)
    }

    fn extract_p_inner(&mut self, k: i64) -> Result<(UniPoly, ExtractRoute)> {
        let (f, _s0) = self.normalized_even_s(2 * k + 1)?;
        let deg_f = f.degree().unwrap_or(0);
        if deg_f == 0 {
            return Ok((UniPoly::one(Y_VAR), ExtractRoute::Gcd));
        }
        let target = (k * (k + 1)) as usize;

        // primary route: p_k is symmetric under the weighted Möbius map while
        // p_k(-y) generically is not, so gcd(F, image of F) recovers it
        let image = sym_image(&f, deg_f)?;
        let g = f.gcd(&image);
        if g.degree() == Some(target) {
            let g0 = g.eval(&rat::int(0));
            if !g0.is_zero() {
                let mut cand = g.mul_scalar(&g0.recip());
                if !Self::p_candidate_ok(&cand, k, &f) {
                    cand = cand.scale_arg(&rat::int(-1));
                }
                if Self::p_candidate_ok(&cand, k, &f) {
                    return Ok((cand, ExtractRoute::Gcd));
                }
            }
        }

        // certified fallback: factor F over the integers and regroup the
        // irreducible factors into {g(y)} vs {g(-y)} classes
        let p = self.extract_p_by_factoring(k, &f)?;
        Ok((p, ExtractRoute::FullFactorization))
    }

    fn extract_p_by_factoring(&self, k: i64, f: &UniPoly) -> Result<UniPoly> {
        let (_, factors) = zfactor::factor_over_q(f)?;
        // classes: self-even factors contribute half multiplicity; mirror
        // pairs contribute an either/or choice
        let mut fixed = UniPoly::one(Y_VAR);
        let mut pairs: Vec<(UniPoly, UniPoly, usize)> = Vec::new();
        let mut used = vec![false; factors.len()];
        for i in 0..factors.len() {
            if used[i] {
                continue;
            }
            let (gi, mi) = &factors[i];
            let mirror = gi.scale_arg(&rat::int(-1)).primitive();
            if mirror == *gi {
                if mi % 2 != 0 {
                    return Err(Error::SplitFailure {
                        k,
                        detail: format!("even factor {} has odd multiplicity {}", gi, mi),
                    });
                }
                fixed = fixed.mul(&gi.pow(mi / 2));
                used[i] = true;
            } else {
                let j = factors
                    .iter()
                    .enumerate()
                    .position(|(j, (gj, mj))| !used[j] && j != i && *gj == mirror && mj == mi)
                    .ok_or_else(|| Error::SplitFailure {
                        k,
                        detail: format!("no mirror partner for factor {}", gi),
                    })?;
                used[i] = true;
                used[j] = true;
                pairs.push((gi.clone(), factors[j].0.clone(), *mi));
            }
        }
        // enumerate assignments of each pair to p
        let npairs = pairs.len();
        let mut winners = Vec::new();
        for mask in 0..(1usize << npairs) {
            let mut cand = fixed.clone();
            for (b, (ga, gb, m)) in pairs.iter().enumerate() {
                let chosen = if mask >> b & 1 == 0 { ga } else { gb };
                cand = cand.mul(&chosen.pow(*m));
            }
            let c0 = cand.eval(&rat::int(0));
            if c0.is_zero() {
                continue;
            }
            let cand = cand.mul_scalar(&c0.recip());
            if Self::p_candidate_ok(&cand, k, f) {
                winners.push(cand);
            }
        }
        winners.dedup();
        match winners.len() {
            1 => Ok(winners.pop_unwrap()),
            0 => Err(Error::SplitFailure {
                k,
                detail: "no grouping satisfies the defining product".into(),
            }),
            _ => {
                // disambiguate by the Möbius self-symmetry
                let weight = (k * (k + 1)) as usize;
                let scale = rat::rat_pow(&rat::rat(1, 2), weight as i64);
                let mut symmetric: Vec<UniPoly> = winners
                    .into_iter()
                    .filter(|cand| {
                        sym_image(cand, weight)
                            .map(|img| img.mul_scalar(&scale) == *cand)
                            .unwrap_or(false)
                    })
                    .collect();
                if symmetric.len() == 1 {
                    Ok(symmetric.pop().unwrap())
                } else {
                    Err(Error::SplitFailure {
                        k,
                        detail: format!("{} symmetric groupings", symmetric.len()),
                    })
                }
            }
        }
    }

    /// Extract q_{k-1} from the even-index factorization
    /// s_{2k}(y^2) = c_k (1+3y)^{k(k+1)} p_{-k-1}((y-1)/(1+3y)) q_{k-1}(y).
    pub fn q_from_even_index(&mut self, k: i64) -> Result<UniPoly> {
        if let Some(q) = self.q.get(&(k - 1)) {
            return Ok(q.clone());
        }
        let s_2k = self.s.s(2 * k)?;
        let lhs = s_2k.substitute_power(Y_VAR, 2);
        let p_needed = self.p(-k - 1)?;
        let weight = (k * (k + 1)) as usize;
        let transformed = even_fac_image(&p_needed, weight)?;
        let divisor = transformed.mul_scalar(&c_k(k));
        let q = lhs.divexact(&divisor)?;
        if !q.is_even_function() {
            return Err(Error::ParityViolation {
                what: format!("q_{}", k - 1),
            });
        }
        if !q.is_integer_coeffs() {
            return Err(Error::NonIntegerCoefficients {
                what: format!("q_{}", k - 1),
            });
        }
        if q.eval(&rat::int(0)) != rat::int(1) {
            return Err(Error::ValueMismatch {
                what: format!("q_{}(0)", k - 1),
                lhs: rat::format_rat(&q.eval(&rat::int(0))),
                rhs: "1".into(),
            });
        }
        self.q.insert(k - 1, q.clone());
        Ok(q)
    }

    /// q_k directly (extracted via the k+1 even factorization).
    pub fn q(&mut self, k: i64) -> Result<UniPoly> {
        self.q_from_even_index(k + 1)
    }

    /// Both Möbius self-symmetries and the evenness of q, exactly.
    pub fn check_symmetries(&mut self, k_min: i64, k_max: i64) -> Result<()> {
        for k in k_min..=k_max {
            let weight = (k * (k + 1)) as usize;
            let scale = rat::rat_pow(&rat::rat(1, 2), weight as i64);
            let p = self.p(k)?;
            let p_img = sym_image(&p, weight)?.mul_scalar(&scale);
            if p_img != p {
                return Err(Error::IdentityFailure {
                    check: format!("p_{} Möbius symmetry", k),
                    residual: p_img.sub(&p).to_string(),
                });
            }
            let q = self.q(k)?;
            let q_img = even_fac_image(&q, weight)?.mul_scalar(&scale);
            if q_img != q {
                return Err(Error::IdentityFailure {
                    check: format!("q_{} Möbius symmetry", k),
                    residual: q_img.sub(&q).to_string(),
                });
            }
            if !q.is_even_function() {
                return Err(Error::ParityViolation {
                    what: format!("q_{}", k),
                });
            }
        }
        Ok(())
    }

    /// Exact reconstruction checks of both factorizations over a k-range.
    pub fn check_round_trips(&mut self, k_min: i64, k_max: i64) -> Result<()> {
        for k in k_min..=k_max {
            let p = self.p(k)?;
            let (f, _) = self.normalized_even_s(2 * k + 1)?;
            let prod = p.mul(&p.scale_arg(&rat::int(-1)));
            if prod != f {
                return Err(Error::IdentityFailure {
                    check: format!("odd factorization at k = {}", k),
                    residual: prod.sub(&f).to_string(),
                });
            }
        }
        for k in (k_min + 1)..=k_max {
            let q = self.q_from_even_index(k)?;
            let p_needed = self.p(-k - 1)?;
            let weight = (k * (k + 1)) as usize;
            let rebuilt = even_fac_image(&p_needed, weight)?
                .mul_scalar(&c_k(k))
                .mul(&q);
            let lhs = self.s.s(2 * k)?.substitute_power(Y_VAR, 2);
            if rebuilt != lhs {
                return Err(Error::IdentityFailure {
                    check: format!("even factorization at k = {}", k),
                    residual: rebuilt.sub(&lhs).to_string(),
                });
            }
        }
        Ok(())
    }
}

impl Default for PQFamily {
    fn default() -> Self {
        PQFamily::new()
    }
}

trait PopUnwrap<T> {
    fn pop_unwrap(self) -> T;
}

impl<T> PopUnwrap<T> for Vec<T> {
    fn pop_unwrap(mut self) -> T {
        self.pop().expect("nonempty")
    }
}

/// Number of alternating sign matrices: prod_{k=0}^{n-1} (3k+1)!/(n+k)!.
pub fn asm_count(n: i64) -> BigRat {
    assert!(n >= 1);
    let mut acc = BigRat::one();
    for k in 0..n {
        acc *= rat::factorial((3 * k + 1) as u64) / rat::factorial((n + k) as u64);
    }
    acc
}

/// Alternating-spin component polynomial A_n(zeta) built from the p, q
/// families: the even and odd cases carry different powers of 2 and of
/// (3 + zeta), with q entering through its reversal zeta^deg q(1/zeta).
pub fn alternating_component(pq: &mut PQFamily, n: i64) -> Result<UniPoly> {
    assert!(n >= 1);
    let (a, b, g, d) = (rat::int(-1), rat::int(1), rat::int(1), rat::int(3));
    let build = |p_poly: &UniPoly,
                 q_poly: &UniPoly,
                 p_weight: usize,
                 q_weight: usize,
                 scale: BigRat|
     -> Result<UniPoly> {
        let p_part = p_poly
            .rename(ZETA_VAR)
            .mobius_substitute((&a, &b, &g, &d), p_weight)?;
        let q_part = q_poly.rename(ZETA_VAR).reverse(q_weight);
        Ok(p_part.mul(&q_part).mul_scalar(&scale))
    };
    let result = if n % 2 == 0 {
        // A_{2k} = 2^{k(2-k)} (3+z)^{k(k-1)} z^{k(k-1)} p_{k-1}((1-z)/(3+z)) q_{k-1}(1/z)
        let k = n / 2;
        let p_poly = pq.p(k - 1)?;
        let q_poly = pq.q(k - 1)?;
        let w = (k * (k - 1)) as usize;
        build(
            &p_poly,
            &q_poly,
            w,
            w,
            rat::rat_pow(&rat::int(2), k * (2 - k)),
        )?
    } else {
        // A_{2k+1} = 2^{-k^2} (3+z)^{k(k+1)} z^{k(k-1)} p_k((1-z)/(3+z)) q_{k-1}(1/z)
        let k = (n - 1) / 2;
        let p_poly = pq.p(k)?;
        let q_poly = pq.q(k - 1)?;
        build(
            &p_poly,
            &q_poly,
            (k * (k + 1)) as usize,
            (k * (k - 1)) as usize,
            rat::rat_pow(&rat::int(2), -k * k),
        )?
    };
    if !result.is_integer_coeffs() {
        return Err(Error::NonIntegerCoefficients {
            what: format!("A_{}", n),
        });
    }
    Ok(result)
}

/// The three special-value product formulas, exact.
pub fn special_values(pq: &mut PQFamily, n_max: i64, asm_max: i64) -> Result<()> {
    for n in 0..=n_max {
        // (i) p_n(1/3) = (2/3)^{n(n+1)} prod_k (2k)!(6k+1)!/((4k)!(4k+1)!)
        let lhs = pq.p(n)?.eval(&rat::rat(1, 3));
        let mut rhs = rat::rat_pow(&rat::rat(2, 3), n * (n + 1));
        for k in 0..=n {
            rhs *= rat::factorial((2 * k) as u64) * rat::factorial((6 * k + 1) as u64)
                / (rat::factorial((4 * k) as u64) * rat::factorial((4 * k + 1) as u64));
        }
        if lhs != rhs {
            return Err(Error::ValueMismatch {
                what: format!("p_{}(1/3)", n),
                lhs: rat::format_rat(&lhs),
                rhs: rat::format_rat(&rhs),
            });
        }
        // (ii) leading coefficient of q_n
        let q = pq.q(n)?;
        let lhs = q.coeff((n * (n + 1)) as usize);
        let mut rhs = rat::rat_pow(&rat::int(2), -n - 1);
        for k in 0..=n {
            rhs *= rat::factorial((2 * k + 1) as u64) * rat::factorial((6 * k + 4) as u64)
                / (rat::factorial((4 * k + 2) as u64) * rat::factorial((4 * k + 3) as u64));
        }
        if lhs != rhs {
            return Err(Error::ValueMismatch {
                what: format!("lead coeff of q_{}", n),
                lhs: rat::format_rat(&lhs),
                rhs: rat::format_rat(&rhs),
            });
        }
    }
    // (iii) A_n(0) = ASM count
    for n in 1..=asm_max {
        let a = alternating_component(pq, n)?;
        let lhs = a.eval(&rat::int(0));
        let rhs = asm_count(n);
        if lhs != rhs {
            return Err(Error::ValueMismatch {
                what: format!("A_{}(0)", n),
                lhs: rat::format_rat(&lhs),
                rhs: rat::format_rat(&rhs),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yp(ints: &[i64]) -> UniPoly {
        UniPoly::from_ints(Y_VAR, ints)
    }

    #[test]
    fn p_family_matches_printed_data() {
        let mut pq = PQFamily::new();
        assert_eq!(pq.p(0).unwrap(), yp(&[1]));
        assert_eq!(pq.p(-1).unwrap(), yp(&[1]));
        assert_eq!(pq.p(1).unwrap(), yp(&[1, 1, 2]));
        assert_eq!(pq.p(-2).unwrap(), yp(&[1, -2, 5]));
        assert_eq!(pq.p(2).unwrap(), yp(&[1, 2, 7, 10, 21, 12, 11]));
        assert_eq!(pq.p(-3).unwrap(), yp(&[1, -3, 12, -30, 81, -63, 66]));
        assert_eq!(
            pq.p(3).unwrap(),
            yp(&[1, 3, 15, 35, 105, 195, 435, 555, 840, 710, 738, 294, 170])
        );
    }

    #[test]
    fn q_family_matches_printed_data() {
        let mut pq = PQFamily::new();
        assert_eq!(pq.q(0).unwrap(), yp(&[1]));
        assert_eq!(pq.q(-1).unwrap(), yp(&[1]));
        assert_eq!(pq.q(1).unwrap(), yp(&[1, 0, 3]));
        assert_eq!(pq.q(-2).unwrap(), yp(&[1, 0, 3]));
        assert_eq!(pq.q(2).unwrap(), yp(&[1, 0, 8, 0, 29, 0, 26]));
        assert_eq!(pq.q(-3).unwrap(), yp(&[1, 0, 3, 0, 39, 0, 21]));
        assert_eq!(
            pq.q(3).unwrap(),
            yp(&[1, 0, 15, 0, 112, 0, 518, 0, 1257, 0, 1547, 0, 646])
        );
    }

    #[test]
    fn c_values() {
        assert_eq!(c_k(1), rat::rat(1, 8));
        assert_eq!(c_k(0), rat::int(1));
        assert_eq!(c_k(-2), rat::rat(27, 128)); // 2^-4 (2/3)^-3
    }

    #[test]
    fn symmetries_and_round_trips() {
        let mut pq = PQFamily::new();
        pq.check_symmetries(-3, 3).unwrap();
        pq.check_round_trips(-4, 4).unwrap();
    }

    #[test]
    fn extraction_route_is_gcd_for_small_k() {
        let mut pq = PQFamily::new();
        for k in [-3, -2, 1, 2, 3] {
            pq.p(k).unwrap();
            assert_eq!(pq.p_route(k), Some(ExtractRoute::Gcd), "k = {}", k);
        }
    }

    #[test]
    fn fallback_route_regroups_correctly() {
        // exercise the factoring fallback directly on the k = 3 input
        let mut pq = PQFamily::new();
        let (f, _) = pq.normalized_even_s(7).unwrap();
        let p3 = pq.extract_p_by_factoring(3, &f).unwrap();
        assert_eq!(p3, pq.p(3).unwrap());
        let (f, _) = pq.normalized_even_s(-5).unwrap();
        let pm3 = pq.extract_p_by_factoring(-3, &f).unwrap();
        assert_eq!(pm3, yp(&[1, -3, 12, -30, 81, -63, 66]));
    }

    #[test]
    fn alternating_components_match_printed_data() {
        let mut pq = PQFamily::new();
        let zp = |ints: &[i64]| UniPoly::from_ints(ZETA_VAR, ints);
        assert_eq!(alternating_component(&mut pq, 1).unwrap(), zp(&[1]));
        assert_eq!(alternating_component(&mut pq, 2).unwrap(), zp(&[2]));
        assert_eq!(alternating_component(&mut pq, 3).unwrap(), zp(&[7, 0, 1]));
        // A_4 = 2(3+z^2)(7+z^2)
        assert_eq!(
            alternating_component(&mut pq, 4).unwrap(),
            zp(&[42, 0, 20, 0, 2])
        );
        // A_5 = (3+z^2)(143+99z^2+13z^4+z^6)
        assert_eq!(
            alternating_component(&mut pq, 5).unwrap(),
            zp(&[143, 0, 99, 0, 13, 0, 1]).mul(&zp(&[3, 0, 1]))
        );
    }

    #[test]
    fn special_value_formulas() {
        let mut pq = PQFamily::new();
        special_values(&mut pq, 3, 6).unwrap();
        // worked example: p_1(1/3) = 1 + 1/3 + 2/9
        assert_eq!(pq.p(1).unwrap().eval(&rat::rat(1, 3)), rat::rat(14, 9));
    }

    #[test]
    fn asm_sequence() {
        let expect: [i64; 9] = [1, 2, 7, 42, 429, 7436, 218348, 10850216, 911835460];
        for (i, &v) in expect.iter().enumerate() {
            assert_eq!(asm_count(i as i64 + 1), rat::int(v));
        }
    }
}
