//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are indexed by power with trailing zeros trimmed, so the
//! leading coefficient is nonzero unless the polynomial is zero. Every value
//! is immutable after construction; operations return new polynomials.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, BigRat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn new(var: &str, mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn zero(var: &str) -> Self {
        UniPoly::new(var, vec![])
    }

    pub fn one(var: &str) -> Self {
        UniPoly::constant(var, BigRat::one())
    }

    pub fn constant(var: &str, c: BigRat) -> Self {
        UniPoly::new(var, vec![c])
    }

    /// c * var^k
    pub fn monomial(var: &str, k: usize, c: BigRat) -> Self {
        let mut coeffs = vec![BigRat::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(var, coeffs)
    }

    /// Convenience constructor from small integers, lowest power first.
    pub fn from_ints(var: &str, ints: &[i64]) -> Self {
        UniPoly::new(var, ints.iter().map(|&n| rat::int(n)).collect())
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRat {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn leading_coeff(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    /// Same polynomial under a new variable name.
    pub fn rename(&self, var: &str) -> Self {
        UniPoly {
            var: var.to_string(),
            coeffs: self.coeffs.clone(),
        }
    }

    fn check_var(&self, other: &UniPoly) {
        assert_eq!(
            self.var, other.var,
            "mixed polynomial variables {} and {}",
            self.var, other.var
        );
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.check_var(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        UniPoly::new(&self.var, out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.check_var(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        UniPoly::new(&self.var, out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(&self.var, self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.check_var(other);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.var);
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        UniPoly::new(&self.var, out)
    }

    pub fn mul_scalar(&self, s: &BigRat) -> UniPoly {
        UniPoly::new(&self.var, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::one(&self.var);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by var^k.
    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![BigRat::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        UniPoly::new(&self.var, out)
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Complex64::new(rat::rat_to_f64(c), 0.0);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.var);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat::int(k as i64))
            .collect();
        UniPoly::new(&self.var, out)
    }

    /// Quotient and remainder with remainder degree below the divisor's.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        self.check_var(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(&self.var), self.clone());
        }
        let mut quot = vec![BigRat::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let q = rem[k].clone() / lead.clone();
            if !q.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    let idx = k - dd + j;
                    rem[idx] = rem[idx].clone() - &q * b;
                }
            }
            quot[k - dd] = q;
            rem.pop();
        }
        (UniPoly::new(&self.var, quot), UniPoly::new(&self.var, rem))
    }

    /// Exact division; `NotDivisible` carries the remainder.
    pub fn divexact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible { remainder: r })
        }
    }

    /// Monic gcd over the rationals; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        self.check_var(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
            // keep coefficients small between steps
            if !b.is_zero() {
                b = b.monic();
            }
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading_coeff();
        self.mul_scalar(&lead.recip())
    }

    /// Rational content: the positive rational c such that self/c has
    /// coprime integer coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> BigRat {
        let mut g = BigRat::zero();
        for c in &self.coeffs {
            g = rat::gcd_rat(&g, c);
        }
        g
    }

    /// self / content, with the leading coefficient made positive.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.mul_scalar(&c.recip())
    }

    pub fn is_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(rat::is_integer)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// True if only even powers appear.
    pub fn is_even_function(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 0 || c.is_zero())
    }

    /// p(var^k), expressed in a (possibly renamed) variable.
    pub fn substitute_power(&self, new_var: &str, k: usize) -> UniPoly {
        assert!(k >= 1);
        if self.is_zero() {
            return UniPoly::zero(new_var);
        }
        let mut out = vec![BigRat::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        UniPoly::new(new_var, out)
    }

    /// p(c * var)
    pub fn scale_arg(&self, c: &BigRat) -> UniPoly {
        let mut power = BigRat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        UniPoly::new(&self.var, out)
    }

    /// var^weight * p(1/var); requires weight >= deg p.
    pub fn reverse(&self, weight: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let d = self.coeffs.len() - 1;
        assert!(weight >= d, "reverse weight below degree");
        let mut out = vec![BigRat::zero(); weight + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[weight - i] = c.clone();
        }
        UniPoly::new(&self.var, out)
    }

    /// p(q(var)) by Horner in the polynomial ring.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(inner.var());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc = acc.add(&UniPoly::constant(inner.var(), c.clone()));
        }
        acc
    }

    /// Weighted Möbius substitution:
    /// (gamma*y + delta)^weight * p((alpha*y + beta)/(gamma*y + delta)).
    ///
    /// Requires weight >= deg p and a nondegenerate map.
    pub fn mobius_substitute(
        &self,
        map: (&BigRat, &BigRat, &BigRat, &BigRat),
        weight: usize,
    ) -> Result<UniPoly> {
        let (alpha, beta, gamma, delta) = map;
        if (alpha * delta - beta * gamma).is_zero() {
            return Err(Error::DegenerateMap);
        }
        let d = self.degree().unwrap_or(0);
        assert!(weight >= d, "mobius weight below degree");
        let num = UniPoly::new(&self.var, vec![beta.clone(), alpha.clone()]);
        let den = UniPoly::new(&self.var, vec![delta.clone(), gamma.clone()]);
        // sum_k c_k * num^k * den^(weight-k)
        let mut acc = UniPoly::zero(&self.var);
        let mut num_pow = UniPoly::one(&self.var);
        let mut den_pows = Vec::with_capacity(weight + 1);
        let mut dp = UniPoly::one(&self.var);
        for _ in 0..=weight {
            den_pows.push(dp.clone());
            dp = dp.mul(&den);
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = num_pow.mul(&den_pows[weight - k]).mul_scalar(c);
                acc = acc.add(&term);
            }
            num_pow = num_pow.mul(&num);
        }
        Ok(acc)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", rat::format_rat(c))?;
            } else if c.is_one() {
                write!(f, "{}^{}", self.var, k)?;
            } else {
                write!(f, "{}*{}^{}", rat::format_rat(c), self.var, k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn z(ints: &[i64]) -> UniPoly {
        UniPoly::from_ints("z", ints)
    }

    #[test]
    fn construction_trims_trailing_zeros() {
        let p = UniPoly::new("z", vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(UniPoly::new("z", vec![int(0)]).is_zero());
        assert_eq!(UniPoly::zero("z").degree(), None);
    }

    #[test]
    fn divexact_identity_divisor() {
        // (1 + 3z + 4z^2) / 1
        let p = z(&[1, 3, 4]);
        assert_eq!(p.divexact(&UniPoly::one("z")).unwrap(), p);
    }

    #[test]
    fn divexact_splits_s3_factor() {
        // (1 + 3y^2 + 4y^4) / (1 + y + 2y^2) = 1 - y + 2y^2
        let a = UniPoly::from_ints("y", &[1, 0, 3, 0, 4]);
        let b = UniPoly::from_ints("y", &[1, 1, 2]);
        assert_eq!(
            a.divexact(&b).unwrap(),
            UniPoly::from_ints("y", &[1, -1, 2])
        );
    }

    #[test]
    fn divexact_rejects_with_remainder() {
        // (1 + z) / (1 + 2z) leaves a degree-0 remainder
        let a = z(&[1, 1]);
        let b = z(&[1, 2]);
        match a.divexact(&b) {
            Err(Error::NotDivisible { remainder }) => assert!(!remainder.is_zero()),
            other => panic!("expected NotDivisible, got {:?}", other),
        }
    }

    #[test]
    fn mul_div_round_trip_randomized() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let da = (next() % 6) as usize;
            let db = (next() % 6) as usize;
            let mk = |d: usize, next: &mut dyn FnMut() -> u64| {
                let coeffs: Vec<_> = (0..=d)
                    .map(|_| rat(next() as i64 % 1_000_000, 1 + (next() % 50) as i64))
                    .collect();
                UniPoly::new("z", coeffs)
            };
            let a = mk(da, &mut next);
            let b = mk(db, &mut next);
            if b.is_zero() {
                continue;
            }
            assert_eq!(a.mul(&b).divexact(&b).unwrap(), a);
        }
    }

    #[test]
    fn ring_axioms_randomized() {
        let mut state = 42u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let mk = |next: &mut dyn FnMut() -> u64| {
                let d = (next() % 4) as usize;
                UniPoly::new(
                    "z",
                    (0..=d)
                        .map(|_| rat((next() % 2_000_001) as i64 - 1_000_000, 1))
                        .collect(),
                )
            };
            let a = mk(&mut next);
            let b = mk(&mut next);
            let c = mk(&mut next);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.add(&b), b.add(&a));
        }
    }

    #[test]
    fn mobius_identity_on_constant() {
        let p = UniPoly::one("y");
        let one = int(1);
        let zero = int(0);
        let q = p.mobius_substitute((&one, &zero, &zero, &one), 0).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn mobius_symmetry_of_p1() {
        // (1+3y)^2 * p1((1-y)/(1+3y)) / 4 = p1 for p1 = 1 + y + 2y^2
        let p1 = UniPoly::from_ints("y", &[1, 1, 2]);
        let (a, b, g, d) = (int(-1), int(1), int(3), int(1));
        let img = p1.mobius_substitute((&a, &b, &g, &d), 2).unwrap();
        assert_eq!(img.mul_scalar(&rat(1, 4)), p1);
    }

    #[test]
    fn mobius_even_factor_instance() {
        // (1+3y)^2 * p_{-2}((y-1)/(1+3y)) = 8 + 8y^2 for p_{-2} = 1 - 2y + 5y^2,
        // the k = 1 instance of the even-index factorization.
        let pm2 = UniPoly::from_ints("y", &[1, -2, 5]);
        let (a, b, g, d) = (int(1), int(-1), int(3), int(1));
        let img = pm2.mobius_substitute((&a, &b, &g, &d), 2).unwrap();
        assert_eq!(img, UniPoly::from_ints("y", &[8, 0, 8]));
    }

    #[test]
    fn mobius_rejects_degenerate() {
        let p = UniPoly::from_ints("y", &[1, 1]);
        let (a, b, g, d) = (int(2), int(4), int(1), int(2));
        assert!(matches!(
            p.mobius_substitute((&a, &b, &g, &d), 1),
            Err(Error::DegenerateMap)
        ));
    }

    #[test]
    fn mobius_involution_randomized() {
        // The weighted map (1-y)/(1+3y) with the 2^-w scaling is an involution
        // on polynomials of degree <= w when w = deg.
        let mut state = 7u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let (a, b, g, d) = (int(-1), int(1), int(3), int(1));
        for _ in 0..100 {
            let deg = (next() % 5) as usize;
            let p = UniPoly::new(
                "y",
                (0..=deg)
                    .map(|_| rat((next() % 41) as i64 - 20, 1))
                    .collect(),
            );
            let w = deg;
            let once = p.mobius_substitute((&a, &b, &g, &d), w).unwrap();
            let twice = once.mobius_substitute((&a, &b, &g, &d), w).unwrap();
            assert_eq!(twice.mul_scalar(&rat_pow_of_4_inv(w)), p);
        }
    }

    fn rat_pow_of_4_inv(w: usize) -> BigRat {
        crate::rat::rat_pow(&rat(1, 4), w as i64)
    }

    #[test]
    fn content_and_primitive() {
        let p = UniPoly::new("z", vec![rat(4, 3), rat(2, 9), int(-2)]);
        let c = p.content();
        assert_eq!(c, rat(2, 9));
        let pp = p.primitive();
        assert!(pp.is_integer_coeffs());
        assert!(pp.leading_coeff().is_negative() == false);
    }

    #[test]
    fn reverse_and_scale() {
        // z^3 * p(1/z) with p = 1 + 2z
        let p = z(&[1, 2]);
        assert_eq!(p.reverse(3), z(&[0, 0, 2, 1]));
        assert_eq!(p.scale_arg(&int(-1)), z(&[1, -2]));
    }

    #[test]
    fn gcd_basic() {
        let a = z(&[-1, 0, 1]); // z^2 - 1
        let b = z(&[1, 1]); // z + 1
        assert_eq!(a.gcd(&b), b.monic());
        assert_eq!(a.gcd(&UniPoly::zero("z")), a.monic());
    }
}

/// Rational content of a polynomial vector: the positive rational c such
/// that dividing every entry by c leaves integer coefficients with overall
/// gcd 1. Zero for an all-zero vector.
pub fn vector_content(polys: &[UniPoly]) -> BigRat {
    let mut g = BigRat::zero();
    for p in polys {
        g = crate::rat::gcd_rat(&g, &p.content());
    }
    g
}

/// Divide a polynomial vector by its rational content (no-op on zero).
pub fn remove_vector_content(polys: &[UniPoly]) -> Vec<UniPoly> {
    let c = vector_content(polys);
    if c.is_zero() || c.is_one() {
        return polys.to_vec();
    }
    let inv = c.recip();
    polys.iter().map(|p| p.mul_scalar(&inv)).collect()
}
