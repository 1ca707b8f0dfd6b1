//! Tau-function polynomial families from the bilinear recurrence, and the
//! s-family specializations.
//!
//! The recurrence relates three consecutive entries; each forward or backward
//! step solves for the unknown neighbor and certifies that the required
//! exact division succeeds. A failed division is a reportable counterexample,
//! not a crash.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{self, BigRat};
use crate::unipoly::UniPoly;

pub const TAU_VAR: &str = "z";

/// Memoized family tau_n(z, xi) for one fixed xi.
#[derive(Clone, Debug)]
pub struct TauFamily {
    xi: BigRat,
    entries: BTreeMap<i64, UniPoly>,
}

/// bracket(n) = 12(3n - 6 xi - 1)(n - 2 xi) + (9z - 1)(n - 1)(5n - 12 xi)
fn tau_bracket(n: i64, xi: &BigRat) -> UniPoly {
    let n = rat::int(n);
    let c0 = rat::int(12)
        * (rat::int(3) * &n - rat::int(6) * xi - rat::int(1))
        * (&n - rat::int(2) * xi);
    let lin = (&n - rat::int(1)) * (rat::int(5) * &n - rat::int(12) * xi);
    // c0 + (9z - 1) * lin
    UniPoly::new(TAU_VAR, vec![c0 - &lin, rat::int(9) * &lin])
}

/// 2z(z-1)(9z-1)^2 (tau'' tau - tau'^2) + 2(3z-1)^2 (9z-1) tau' tau,
/// the derivative part of the recurrence cleared to the polynomial ring.
fn tau_derivative_part(tau: &UniPoly) -> UniPoly {
    let d1 = tau.derivative();
    let d2 = d1.derivative();
    let hessian = d2.mul(tau).sub(&d1.mul(&d1));
    // 2z(z-1)(9z-1)^2 = 2z(z-1)(81z^2 - 18z + 1)
    let a = UniPoly::from_ints(TAU_VAR, &[0, 2])
        .mul(&UniPoly::from_ints(TAU_VAR, &[-1, 1]))
        .mul(&UniPoly::from_ints(TAU_VAR, &[1, -18, 81]));
    // 2(3z-1)^2(9z-1)
    let b = UniPoly::from_ints(TAU_VAR, &[2])
        .mul(&UniPoly::from_ints(TAU_VAR, &[-1, 3]).pow(2))
        .mul(&UniPoly::from_ints(TAU_VAR, &[-1, 9]));
    a.mul(&hessian).add(&b.mul(&d1).mul(tau))
}

/// Numerator of the step solved at center index n:
/// bracket(n) tau_n^2 - derivative part of tau_n.
fn tau_step_numerator(tau_n: &UniPoly, n: i64, xi: &BigRat) -> UniPoly {
    tau_bracket(n, xi)
        .mul(tau_n)
        .mul(tau_n)
        .sub(&tau_derivative_part(tau_n))
}

/// 8 (2n - 4 xi - 1/3)^2
fn tau_prefactor(n: i64, xi: &BigRat) -> BigRat {
    let t = rat::int(2 * n) - rat::int(4) * xi - rat::rat(1, 3);
    rat::int(8) * &t * &t
}

impl TauFamily {
    /// Start from tau_0 = 1, tau_1 = -4 xi + 5/3.
    pub fn new(xi: BigRat) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(0, UniPoly::one(TAU_VAR));
        entries.insert(
            1,
            UniPoly::constant(TAU_VAR, rat::int(-4) * &xi + rat::rat(5, 3)),
        );
        TauFamily { xi, entries }
    }

    pub fn xi(&self) -> &BigRat {
        &self.xi
    }

    pub fn get(&self, n: i64) -> Option<&UniPoly> {
        self.entries.get(&n)
    }

    pub fn range(&self) -> (i64, i64) {
        let lo = *self.entries.keys().next().expect("nonempty");
        let hi = *self.entries.keys().next_back().expect("nonempty");
        (lo, hi)
    }

    /// Solve the recurrence centered at n for tau_{n+1}; requires entries
    /// n-1 and n. The exact division by tau_{n-1} certifies polynomiality.
    pub fn step_forward(&mut self, n: i64) -> Result<UniPoly> {
        if let Some(t) = self.entries.get(&(n + 1)) {
            return Ok(t.clone());
        }
        let prev = self
            .entries
            .get(&(n - 1))
            .cloned()
            .expect("tau_{n-1} must be present");
        let cur = self
            .entries
            .get(&n)
            .cloned()
            .expect("tau_n must be present");
        let pref = tau_prefactor(n, &self.xi);
        if pref.is_zero() {
            return Err(Error::ZeroPrefactor { n });
        }
        let numerator = tau_step_numerator(&cur, n, &self.xi);
        let divisor = prev.mul_scalar(&pref);
        let next = numerator.divexact(&divisor).map_err(|e| match e {
            Error::NotDivisible { remainder } => Error::PolynomialityViolation {
                family: format!("tau(xi={})", rat::format_rat(&self.xi)),
                index: n + 1,
                remainder: remainder.to_string(),
            },
            other => other,
        })?;
        self.entries.insert(n + 1, next.clone());
        Ok(next)
    }

    /// Solve the recurrence centered at n for tau_{n-1}; requires entries
    /// n and n+1. Polynomiality of backward steps is certified per step,
    /// never assumed.
    pub fn step_backward(&mut self, n: i64) -> Result<UniPoly> {
        if let Some(t) = self.entries.get(&(n - 1)) {
            return Ok(t.clone());
        }
        let cur = self
            .entries
            .get(&n)
            .cloned()
            .expect("tau_n must be present");
        let next = self
            .entries
            .get(&(n + 1))
            .cloned()
            .expect("tau_{n+1} must be present");
        let pref = tau_prefactor(n, &self.xi);
        if pref.is_zero() {
            return Err(Error::ZeroPrefactor { n });
        }
        let numerator = tau_step_numerator(&cur, n, &self.xi);
        let divisor = next.mul_scalar(&pref);
        let prev = numerator.divexact(&divisor).map_err(|e| match e {
            Error::NotDivisible { remainder } => Error::PolynomialityViolation {
                family: format!("tau(xi={})", rat::format_rat(&self.xi)),
                index: n - 1,
                remainder: remainder.to_string(),
            },
            other => other,
        })?;
        self.entries.insert(n - 1, prev.clone());
        Ok(prev)
    }

    /// Extend the family (both directions as needed) to cover lo..=hi.
    pub fn extend_to(&mut self, lo: i64, hi: i64) -> Result<()> {
        let (mut cur_lo, mut cur_hi) = self.range();
        while cur_hi < hi {
            self.step_forward(cur_hi)?;
            cur_hi += 1;
        }
        while cur_lo > lo {
            self.step_backward(cur_lo)?;
            cur_lo -= 1;
        }
        Ok(())
    }

    /// tau_{n+1} given that n-1 and n are already computed.
    pub fn tau_next(&mut self, n: i64) -> Result<UniPoly> {
        self.step_forward(n)
    }

    pub fn tau(&mut self, n: i64) -> Result<UniPoly> {
        let (lo, hi) = self.range();
        self.extend_to(lo.min(n), hi.max(n))?;
        Ok(self.entries[&n].clone())
    }

    /// Recompute every interior entry from its neighbors and compare with
    /// the memoized value.
    pub fn verify_idempotent(&self) -> Result<()> {
        let (lo, hi) = self.range();
        for n in (lo + 1)..hi {
            let pref = tau_prefactor(n, &self.xi);
            if pref.is_zero() {
                continue;
            }
            let numerator = tau_step_numerator(&self.entries[&n], n, &self.xi);
            let divisor = self.entries[&(n - 1)].mul_scalar(&pref);
            let recomputed = numerator.divexact(&divisor)?;
            if recomputed != self.entries[&(n + 1)] {
                return Err(Error::ValueMismatch {
                    what: format!("tau[{}] memo consistency", n + 1),
                    lhs: recomputed.to_string(),
                    rhs: self.entries[&(n + 1)].to_string(),
                });
            }
        }
        Ok(())
    }
}

/// The s-family: s_0 = s_1 = 1, extended to all integer indices by its own
/// printed recurrence (prefactor 8(2n+1)^2, bracket 4(3n+1)(3n+2) +
/// (9z-1) n (5n+3)). Kept as a code path independent of `TauFamily` so the
/// identity s_n = tau_{n+1}(z, 1/6) is a real cross-check.
#[derive(Clone, Debug)]
pub struct SFamily {
    entries: BTreeMap<i64, UniPoly>,
}

fn s_bracket(n: i64) -> UniPoly {
    let c0 = rat::int(4 * (3 * n + 1) * (3 * n + 2));
    let lin = rat::int(n * (5 * n + 3));
    UniPoly::new(TAU_VAR, vec![c0 - &lin, rat::int(9) * &lin])
}

fn s_step_numerator(s_n: &UniPoly, n: i64) -> UniPoly {
    s_bracket(n)
        .mul(s_n)
        .mul(s_n)
        .sub(&tau_derivative_part(s_n))
}

fn s_prefactor(n: i64) -> BigRat {
    rat::int(8 * (2 * n + 1) * (2 * n + 1))
}

impl SFamily {
    pub fn new() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(0, UniPoly::one(TAU_VAR));
        entries.insert(1, UniPoly::one(TAU_VAR));
        SFamily { entries }
    }

    pub fn get(&self, n: i64) -> Option<&UniPoly> {
        self.entries.get(&n)
    }

    pub fn range(&self) -> (i64, i64) {
        let lo = *self.entries.keys().next().expect("nonempty");
        let hi = *self.entries.keys().next_back().expect("nonempty");
        (lo, hi)
    }

    pub fn extend_to(&mut self, lo: i64, hi: i64) -> Result<()> {
        let (mut cur_lo, mut cur_hi) = self.range();
        while cur_hi < hi {
            let n = cur_hi;
            let numerator = s_step_numerator(&self.entries[&n], n);
            let divisor = self.entries[&(n - 1)].mul_scalar(&s_prefactor(n));
            let next = numerator.divexact(&divisor).map_err(|e| match e {
                Error::NotDivisible { remainder } => Error::PolynomialityViolation {
                    family: "s".to_string(),
                    index: n + 1,
                    remainder: remainder.to_string(),
                },
                other => other,
            })?;
            self.entries.insert(n + 1, next);
            cur_hi += 1;
        }
        while cur_lo > lo {
            let n = cur_lo;
            let numerator = s_step_numerator(&self.entries[&n], n);
            let divisor = self.entries[&(n + 1)].mul_scalar(&s_prefactor(n));
            let prev = numerator.divexact(&divisor).map_err(|e| match e {
                Error::NotDivisible { remainder } => Error::PolynomialityViolation {
                    family: "s".to_string(),
                    index: n - 1,
                    remainder: remainder.to_string(),
                },
                other => other,
            })?;
            self.entries.insert(n - 1, prev);
            cur_lo -= 1;
        }
        Ok(())
    }

    pub fn s(&mut self, n: i64) -> Result<UniPoly> {
        let (lo, hi) = self.range();
        self.extend_to(lo.min(n), hi.max(n))?;
        Ok(self.entries[&n].clone())
    }

    /// Forward and backward steps must be mutually consistent: recompute
    /// s_n forward from the two entries below it and compare.
    pub fn verify_direction_consistency(&self) -> Result<()> {
        let (lo, hi) = self.range();
        for n in lo..=(hi - 2) {
            let pref = s_prefactor(n + 1);
            let numerator = s_step_numerator(&self.entries[&(n + 1)], n + 1);
            let divisor = self.entries[&n].mul_scalar(&pref);
            let recomputed = numerator.divexact(&divisor)?;
            if recomputed != self.entries[&(n + 2)] {
                return Err(Error::ValueMismatch {
                    what: format!("s[{}] forward/backward consistency", n + 2),
                    lhs: recomputed.to_string(),
                    rhs: self.entries[&(n + 2)].to_string(),
                });
            }
        }
        Ok(())
    }
}

impl Default for SFamily {
    fn default() -> Self {
        SFamily::new()
    }
}

/// s_n(z) for n in n_min..=n_max (both signs of index).
pub fn s_sequence(n_min: i64, n_max: i64) -> Result<SFamily> {
    assert!(n_min <= 0 && n_max >= 0, "range must contain the seed entries");
    let mut fam = SFamily::new();
    fam.extend_to(n_min, n_max)?;
    Ok(fam)
}

/// sbar_n(z) = tau_n(z, -1/3) for 0 <= n <= n_max.
pub fn sbar_sequence(n_max: i64) -> Result<Vec<UniPoly>> {
    assert!(n_max >= 0);
    let mut fam = TauFamily::new(rat::rat(-1, 3));
    fam.extend_to(0, n_max.max(1))?;
    Ok((0..=n_max).map(|n| fam.get(n).unwrap().clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn zp(ints: &[i64]) -> UniPoly {
        UniPoly::from_ints(TAU_VAR, ints)
    }

    #[test]
    fn initial_conditions() {
        let fam = TauFamily::new(rat(1, 6));
        assert_eq!(fam.get(0).unwrap(), &zp(&[1]));
        assert_eq!(fam.get(1).unwrap(), &zp(&[1])); // -4/6 + 5/3 = 1
        let fam = TauFamily::new(rat(-1, 3));
        assert_eq!(fam.get(1).unwrap(), &zp(&[3])); // 4/3 + 5/3 = 3
        let fam = TauFamily::new(rat(2, 3));
        assert_eq!(fam.get(1).unwrap(), &zp(&[-1])); // -8/3 + 5/3 = -1
    }

    #[test]
    fn xi_two_thirds_hand_values() {
        // tau_2 = 1 and tau_3 = -(3+9z)/4, both solved by hand from the
        // recurrence (derivative terms vanish on constants)
        let mut fam = TauFamily::new(rat(2, 3));
        assert_eq!(fam.tau_next(1).unwrap(), zp(&[1]));
        let tau3 = fam.tau_next(2).unwrap();
        assert_eq!(tau3, zp(&[3, 9]).mul_scalar(&rat(-1, 4)));
    }

    #[test]
    fn xi_one_sixth_matches_s_data() {
        let mut fam = TauFamily::new(rat(1, 6));
        fam.extend_to(0, 5).unwrap();
        assert_eq!(fam.get(2).unwrap(), &zp(&[1]));
        assert_eq!(fam.get(3).unwrap(), &zp(&[1, 1]));
        assert_eq!(fam.get(4).unwrap(), &zp(&[1, 3, 4]));
        assert_eq!(fam.get(5).unwrap(), &zp(&[1, 6, 18, 30, 9]));
    }

    #[test]
    fn s_family_golden_values() {
        let mut s = s_sequence(-5, 5).unwrap();
        assert_eq!(s.s(2).unwrap(), zp(&[1, 1]));
        assert_eq!(s.s(3).unwrap(), zp(&[1, 3, 4]));
        assert_eq!(s.s(4).unwrap(), zp(&[1, 6, 18, 30, 9]));
        assert_eq!(s.s(5).unwrap(), zp(&[1, 10, 51, 168, 355, 318, 121]));
        assert_eq!(s.s(-1).unwrap(), zp(&[1]));
        assert_eq!(s.s(-2).unwrap(), zp(&[3, 9]).mul_scalar(&rat(1, 4)));
        assert_eq!(s.s(-3).unwrap(), zp(&[9, 54, 225]).mul_scalar(&rat(1, 16)));
        assert_eq!(
            s.s(-4).unwrap(),
            zp(&[27, 270, 1620, 7938, 3969]).mul_scalar(&rat(1, 64))
        );
        assert_eq!(
            s.s(-5).unwrap(),
            zp(&[81, 1215, 10206, 64638, 353565, 544563, 352836]).mul_scalar(&rat(1, 256))
        );
    }

    #[test]
    fn sbar_golden_values() {
        let sb = sbar_sequence(6).unwrap();
        assert_eq!(sb[0], zp(&[1]));
        assert_eq!(sb[1], zp(&[3]));
        assert_eq!(sb[2], zp(&[10]));
        assert_eq!(sb[3], zp(&[35, 21]));
        assert_eq!(sb[4], zp(&[126, 252, 198]));
        assert_eq!(sb[5], zp(&[462, 1980, 3960, 4004, 858]));
        assert_eq!(
            sb[6],
            zp(&[1716, 12870, 47190, 105820, 143520, 90558, 24310])
        );
    }

    #[test]
    fn s_equals_tau_shifted_to_20() {
        let mut s = s_sequence(0, 20).unwrap();
        let mut tau = TauFamily::new(rat(1, 6));
        tau.extend_to(0, 21).unwrap();
        for n in 0..=20 {
            assert_eq!(
                s.s(n).unwrap(),
                tau.get(n + 1).unwrap().clone(),
                "s_{} != tau_{}(1/6)",
                n,
                n + 1
            );
        }
    }

    #[test]
    fn nonnegative_integer_coefficients_to_20() {
        let mut s = s_sequence(0, 20).unwrap();
        let sb = sbar_sequence(20).unwrap();
        for n in 0..=20 {
            let sn = s.s(n).unwrap();
            assert!(sn.is_integer_coeffs(), "s_{} not integral", n);
            assert!(sn.has_nonnegative_coeffs(), "s_{} has negative coeff", n);
            let sbn = &sb[n as usize];
            assert!(sbn.is_integer_coeffs(), "sbar_{} not integral", n);
            assert!(sbn.has_nonnegative_coeffs(), "sbar_{} negative", n);
        }
    }

    #[test]
    fn degree_bound_conjecture() {
        // deg s_n <= floor(n(n-1)/4 + n/2) = floor(n(n+1)/4)
        let mut s = s_sequence(0, 20).unwrap();
        for n in 0..=20i64 {
            let d = s.s(n).unwrap().degree().unwrap_or(0) as i64;
            assert!(d <= n * (n + 1) / 4, "deg s_{} = {} exceeds bound", n, d);
        }
        // and the Appendix degrees are matched exactly for small n
        let degs: Vec<i64> = (0..=5)
            .map(|n| s.s(n).unwrap().degree().unwrap_or(0) as i64)
            .collect();
        assert_eq!(degs, vec![0, 0, 1, 2, 4, 6]);
    }

    #[test]
    fn directions_are_mutually_consistent() {
        let mut s = s_sequence(-6, 8).unwrap();
        s.extend_to(-6, 8).unwrap();
        s.verify_direction_consistency().unwrap();
        let mut tau = TauFamily::new(rat(1, 6));
        tau.extend_to(-3, 8).unwrap();
        tau.verify_idempotent().unwrap();
    }

    #[test]
    fn zero_prefactor_detected() {
        // xi = 1/4 makes 2n - 4 xi - 1/3 = 0 at... 2n = 4/3 + 1: never integer.
        // xi = (2n - 1/3)/4: for n = 1, xi = 5/12.
        let mut fam = TauFamily::new(rat(5, 12));
        assert!(matches!(
            fam.tau_next(1),
            Err(Error::ZeroPrefactor { n: 1 })
        ));
    }
}
