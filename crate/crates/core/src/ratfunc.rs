//! Rational functions in two variables.
//!
//! Stored as a numerator/denominator pair of bivariate polynomials with the
//! scalar content removed and the sign of the denominator's leading term
//! canonical. No polynomial gcd is taken: exactness never requires it, and
//! the quadratic-extension computations below keep denominators structurally
//! shared so additions stay cheap.

use std::fmt;

use num_traits::{One, Signed};

use crate::bipoly::BiPoly;
use crate::rat::{self, BigRat};

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: BiPoly,
    den: BiPoly,
}

impl RatFunc {
    pub fn new(num: BiPoly, den: BiPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            let (v1, v2) = den.vars();
            return RatFunc {
                num,
                den: BiPoly::one(v1, v2),
            };
        }
        // remove joint scalar content, keep den's leading coefficient positive
        let mut scale = rat::gcd_rat(&num.content(), &den.content());
        if den
            .leading_term()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            scale = -scale;
        }
        let inv = scale.recip();
        RatFunc {
            num: num.mul_scalar(&inv),
            den: den.mul_scalar(&inv),
        }
    }

    pub fn from_poly(p: BiPoly) -> Self {
        let (v1, v2) = p.vars();
        let one = BiPoly::one(v1, v2);
        RatFunc::new(p, one)
    }

    pub fn from_scalar(v1: &str, v2: &str, c: BigRat) -> Self {
        RatFunc::from_poly(BiPoly::constant(v1, v2, c))
    }

    pub fn zero(v1: &str, v2: &str) -> Self {
        RatFunc::from_poly(BiPoly::zero(v1, v2))
    }

    pub fn one(v1: &str, v2: &str) -> Self {
        RatFunc::from_poly(BiPoly::one(v1, v2))
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn vars(&self) -> (&str, &str) {
        self.den.vars()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc::new(self.num.sub(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_scalar(&self, s: &BigRat) -> RatFunc {
        RatFunc::new(self.num.mul_scalar(s), self.den.clone())
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        assert!(!other.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of zero rational function");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let (v1, v2) = self.vars();
        let mut acc = RatFunc::one(v1, v2);
        let mut sq = base;
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

    /// Equality by cross-multiplication (no gcd reduction is stored).
    pub fn equals(&self, other: &RatFunc) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// True if this is the polynomial `p` (cross-multiplied check).
    pub fn equals_poly(&self, p: &BiPoly) -> bool {
        self.num == p.mul(&self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.num_terms() == 1 && self.den.coeff(0, 0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn xz(terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms("x", "z", terms)
    }

    #[test]
    fn normalization() {
        // (2x) / (-4z) normalizes with positive den lead and content 1
        let r = RatFunc::new(xz(&[(1, 0, 2)]), xz(&[(0, 1, -4)]));
        assert_eq!(r.den().coeff(0, 1), int(2));
        assert_eq!(r.num().coeff(1, 0), int(-1));
    }

    #[test]
    fn field_identities() {
        let a = RatFunc::new(xz(&[(1, 0, 1), (0, 0, 3)]), xz(&[(0, 1, 1)]));
        let b = RatFunc::new(xz(&[(0, 1, 2)]), xz(&[(1, 1, 1), (0, 0, 1)]));
        let sum = a.add(&b);
        assert!(sum.sub(&b).equals(&a));
        let prod = a.mul(&b);
        assert!(prod.div(&b).equals(&a));
        assert!(a.mul(&a.recip()).equals(&RatFunc::one("x", "z")));
        assert!(a.pow(3).equals(&a.mul(&a).mul(&a)));
        assert!(a.pow(-2).equals(&a.mul(&a).recip()));
    }

    #[test]
    fn zero_handling() {
        let z = RatFunc::zero("x", "z");
        let a = RatFunc::new(xz(&[(1, 1, 5)]), xz(&[(0, 0, 7)]));
        assert!(z.is_zero());
        assert!(a.add(&z).equals(&a));
        assert!(a.sub(&a).is_zero());
    }
}
