//! Quadratic extension of the bivariate rational-function field.
//!
//! Elements are u + v*delta with delta^2 a fixed rational function shared by
//! every element entering a computation. This is where the two functional
//! branches x_plus and x_minus live: only delta-even combinations are ever
//! asserted, so no branch of the square root is chosen anywhere.

use crate::bipoly::BiPoly;
use crate::rat::BigRat;
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug)]
pub struct QuadExt {
    rational: RatFunc,
    radical: RatFunc,
    radicand: RatFunc,
}

impl QuadExt {
    pub fn new(rational: RatFunc, radical: RatFunc, radicand: RatFunc) -> Self {
        QuadExt {
            rational,
            radical,
            radicand,
        }
    }

    pub fn from_rational(r: RatFunc, radicand: &RatFunc) -> Self {
        let (v1, v2) = r.vars();
        let zero = RatFunc::zero(v1, v2);
        QuadExt::new(r, zero, radicand.clone())
    }

    pub fn from_poly(p: BiPoly, radicand: &RatFunc) -> Self {
        QuadExt::from_rational(RatFunc::from_poly(p), radicand)
    }

    /// delta itself.
    pub fn radical_unit(radicand: &RatFunc) -> Self {
        let (v1, v2) = radicand.vars();
        QuadExt::new(
            RatFunc::zero(v1, v2),
            RatFunc::one(v1, v2),
            radicand.clone(),
        )
    }

    pub fn rational_part(&self) -> &RatFunc {
        &self.rational
    }

    pub fn radical_part(&self) -> &RatFunc {
        &self.radical
    }

    pub fn radicand(&self) -> &RatFunc {
        &self.radicand
    }

    fn check_compatible(&self, other: &QuadExt) {
        assert!(
            self.radicand.equals(&other.radicand),
            "combining quadratic-extension elements over different radicands"
        );
    }

    pub fn add(&self, other: &QuadExt) -> QuadExt {
        self.check_compatible(other);
        QuadExt::new(
            self.rational.add(&other.rational),
            self.radical.add(&other.radical),
            self.radicand.clone(),
        )
    }

    pub fn sub(&self, other: &QuadExt) -> QuadExt {
        self.check_compatible(other);
        QuadExt::new(
            self.rational.sub(&other.rational),
            self.radical.sub(&other.radical),
            self.radicand.clone(),
        )
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt::new(
            self.rational.neg(),
            self.radical.neg(),
            self.radicand.clone(),
        )
    }

    /// (u1 + v1 d)(u2 + v2 d) = (u1 u2 + v1 v2 d^2) + (u1 v2 + u2 v1) d
    pub fn mul(&self, other: &QuadExt) -> QuadExt {
        self.check_compatible(other);
        let uu = self.rational.mul(&other.rational);
        let vv = self.radical.mul(&other.radical);
        let rational = uu.add(&vv.mul(&self.radicand));
        let radical = self
            .rational
            .mul(&other.radical)
            .add(&other.rational.mul(&self.radical));
        QuadExt::new(rational, radical, self.radicand.clone())
    }

    pub fn mul_ratfunc(&self, r: &RatFunc) -> QuadExt {
        QuadExt::new(
            self.rational.mul(r),
            self.radical.mul(r),
            self.radicand.clone(),
        )
    }

    pub fn mul_scalar(&self, s: &BigRat) -> QuadExt {
        QuadExt::new(
            self.rational.mul_scalar(s),
            self.radical.mul_scalar(s),
            self.radicand.clone(),
        )
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt::new(
            self.rational.clone(),
            self.radical.neg(),
            self.radicand.clone(),
        )
    }

    /// Field norm u^2 - v^2 d^2 (a rational function).
    pub fn norm(&self) -> RatFunc {
        self.rational
            .mul(&self.rational)
            .sub(&self.radical.mul(&self.radical).mul(&self.radicand))
    }

    pub fn recip(&self) -> QuadExt {
        let n = self.norm();
        assert!(!n.is_zero(), "reciprocal of zero-norm element");
        let inv = n.recip();
        QuadExt::new(
            self.rational.mul(&inv),
            self.radical.neg().mul(&inv),
            self.radicand.clone(),
        )
    }

    pub fn div(&self, other: &QuadExt) -> QuadExt {
        self.mul(&other.recip())
    }

    pub fn pow(&self, e: u32) -> QuadExt {
        let (v1, v2) = self.rational.vars();
        let mut acc = QuadExt::from_rational(RatFunc::one(v1, v2), &self.radicand);
        let mut sq = self.clone();
        let mut exp = e;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radicand() -> RatFunc {
        // d^2 = x^2 z + 1, an arbitrary non-square
        RatFunc::from_poly(BiPoly::from_terms("x", "z", &[(2, 1, 1), (0, 0, 1)]))
    }

    fn elem(a: &[(u32, u32, i64)], b: &[(u32, u32, i64)]) -> QuadExt {
        QuadExt::new(
            RatFunc::from_poly(BiPoly::from_terms("x", "z", a)),
            RatFunc::from_poly(BiPoly::from_terms("x", "z", b)),
            radicand(),
        )
    }

    #[test]
    fn conjugate_product_has_zero_radical() {
        let e = elem(&[(1, 0, 2), (0, 0, 1)], &[(0, 1, 3)]);
        let prod = e.mul(&e.conj());
        assert!(prod.radical_part().is_zero());
        assert!(prod.rational_part().equals(&e.norm()));
    }

    #[test]
    fn reciprocal_multiplies_to_one() {
        let e = elem(&[(1, 1, 1)], &[(0, 0, 5)]);
        let p = e.mul(&e.recip());
        assert!(p.radical_part().is_zero());
        assert!(p.rational_part().equals(&RatFunc::one("x", "z")));
    }

    #[test]
    fn squaring_uses_radicand() {
        // (0 + 1*d)^2 = d^2
        let d = QuadExt::radical_unit(&radicand());
        let sq = d.pow(2);
        assert!(sq.radical_part().is_zero());
        assert!(sq.rational_part().equals(&radicand()));
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let e = elem(&[(1, 0, 1), (0, 0, 3)], &[(0, 0, 1)]);
        let p3 = e.pow(3);
        let m3 = e.mul(&e).mul(&e);
        assert!(p3.sub(&m3).is_zero());
    }
}
