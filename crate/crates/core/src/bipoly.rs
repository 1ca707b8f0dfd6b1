//! Sparse bivariate polynomials over exact rationals.
//!
//! Terms are a map from exponent pairs to coefficients with no stored zeros.
//! The pair of variable tags rides along so downstream code can keep (x, z)
//! and (t, s) families apart.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, BigRat};
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    vars: (String, String),
    terms: BTreeMap<(u32, u32), BigRat>,
}

impl BiPoly {
    pub fn zero(v1: &str, v2: &str) -> Self {
        BiPoly {
            vars: (v1.to_string(), v2.to_string()),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(v1: &str, v2: &str) -> Self {
        BiPoly::constant(v1, v2, BigRat::one())
    }

    pub fn constant(v1: &str, v2: &str, c: BigRat) -> Self {
        let mut p = BiPoly::zero(v1, v2);
        p.insert((0, 0), c);
        p
    }

    /// c * v1^e1 * v2^e2
    pub fn monomial(v1: &str, v2: &str, e1: u32, e2: u32, c: BigRat) -> Self {
        let mut p = BiPoly::zero(v1, v2);
        p.insert((e1, e2), c);
        p
    }

    /// Build from a list of (e1, e2, coeff) integer triples.
    pub fn from_terms(v1: &str, v2: &str, terms: &[(u32, u32, i64)]) -> Self {
        let mut p = BiPoly::zero(v1, v2);
        for &(e1, e2, c) in terms {
            p.insert((e1, e2), rat::int(c));
        }
        p
    }

    fn insert(&mut self, key: (u32, u32), c: BigRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> (&str, &str) {
        (&self.vars.0, &self.vars.1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> BigRat {
        self.terms
            .get(&(e1, e2))
            .cloned()
            .unwrap_or_else(BigRat::zero)
    }

    pub fn degree1(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree2(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    fn check_vars(&self, other: &BiPoly) {
        assert_eq!(
            self.vars, other.vars,
            "mixed bivariate variables {:?} and {:?}",
            self.vars, other.vars
        );
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        self.check_vars(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.check_vars(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        let mut out = BiPoly::zero(&self.vars.0, &self.vars.1);
        for (k, c) in &self.terms {
            out.terms.insert(*k, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        self.check_vars(other);
        let mut out = BiPoly::zero(&self.vars.0, &self.vars.1);
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                out.insert((a1 + b1, a2 + b2), ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, s: &BigRat) -> BiPoly {
        if s.is_zero() {
            return BiPoly::zero(&self.vars.0, &self.vars.1);
        }
        let mut out = BiPoly::zero(&self.vars.0, &self.vars.1);
        for (k, c) in &self.terms {
            out.terms.insert(*k, c * s);
        }
        out
    }

    pub fn pow(&self, e: usize) -> BiPoly {
        let mut base = self.clone();
        let mut exp = e;
        let mut acc = BiPoly::one(&self.vars.0, &self.vars.1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by v1^e1 * v2^e2.
    pub fn shift_up(&self, e1: u32, e2: u32) -> BiPoly {
        let mut out = BiPoly::zero(&self.vars.0, &self.vars.1);
        for ((a1, a2), c) in &self.terms {
            out.terms.insert((a1 + e1, a2 + e2), c.clone());
        }
        out
    }

    pub fn derivative1(&self) -> BiPoly {
        let mut out = BiPoly::zero(&self.vars.0, &self.vars.1);
        for ((e1, e2), c) in &self.terms {
            if *e1 > 0 {
                out.insert((e1 - 1, *e2), c * rat::int(*e1 as i64));
            }
        }
        out
    }

    pub fn derivative2(&self) -> BiPoly {
        let mut out = BiPoly::zero(&self.vars.0, &self.vars.1);
        for ((e1, e2), c) in &self.terms {
            if *e2 > 0 {
                out.insert((*e1, e2 - 1), c * rat::int(*e2 as i64));
            }
        }
        out
    }

    /// Coefficient of v1^k as a polynomial in v2.
    pub fn coeff_of_power1(&self, k: u32) -> UniPoly {
        let d2 = self.degree2().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRat::zero(); d2 + 1];
        for ((e1, e2), c) in &self.terms {
            if *e1 == k {
                coeffs[*e2 as usize] = c.clone();
            }
        }
        UniPoly::new(&self.vars.1, coeffs)
    }

    /// Assemble from coefficients-by-power of the first variable.
    pub fn from_coeff_view(v1: &str, coeffs: &[UniPoly]) -> BiPoly {
        let v2 = coeffs
            .iter()
            .find(|p| !p.is_zero())
            .map(|p| p.var().to_string())
            .unwrap_or_else(|| "z".to_string());
        let mut out = BiPoly::zero(v1, &v2);
        for (e1, p) in coeffs.iter().enumerate() {
            for (e2, c) in p.coeffs().iter().enumerate() {
                out.insert((e1 as u32, e2 as u32), c.clone());
            }
        }
        out
    }

    /// Evaluate the first variable at a univariate polynomial in the second;
    /// the result is univariate in v2.
    pub fn eval1_poly(&self, arg: &UniPoly) -> UniPoly {
        let d1 = self.degree1().unwrap_or(0);
        let mut acc = UniPoly::zero(arg.var());
        for k in (0..=d1).rev() {
            acc = acc.mul(arg);
            acc = acc.add(&self.coeff_of_power1(k).rename(arg.var()));
        }
        acc
    }

    /// Evaluate the second variable at an exact rational, leaving v1.
    pub fn eval2(&self, value: &BigRat) -> UniPoly {
        let d1 = self.degree1().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRat::zero(); d1 + 1];
        for ((e1, e2), c) in &self.terms {
            coeffs[*e1 as usize] += c * rat::rat_pow(value, *e2 as i64);
        }
        UniPoly::new(&self.vars.0, coeffs)
    }

    pub fn eval(&self, x1: &BigRat, x2: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for ((e1, e2), c) in &self.terms {
            acc += c * rat::rat_pow(x1, *e1 as i64) * rat::rat_pow(x2, *e2 as i64);
        }
        acc
    }

    pub fn eval_c64(&self, x1: Complex64, x2: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((e1, e2), c) in &self.terms {
            acc +=
                Complex64::new(rat::rat_to_f64(c), 0.0) * x1.powi(*e1 as i32) * x2.powi(*e2 as i32);
        }
        acc
    }

    /// Scalar content across all coefficients (positive, zero only for zero).
    pub fn content(&self) -> BigRat {
        let mut g = BigRat::zero();
        for c in self.terms.values() {
            g = rat::gcd_rat(&g, c);
        }
        g
    }

    pub fn leading_term(&self) -> Option<((u32, u32), BigRat)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c.clone()))
    }

    /// Exact division in the polynomial ring, performed as long division in
    /// the first variable over the rational-function field in the second.
    ///
    /// Fails with `NotDivisibleBi` either when a nonzero remainder is left
    /// (carried with denominators cleared) or when the quotient exists only
    /// with rational-function coefficients (the dividend is carried).
    pub fn divexact(&self, divisor: &BiPoly) -> Result<BiPoly> {
        self.check_vars(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Ok(self.clone());
        }
        let dd = divisor.degree1().unwrap_or(0);
        let dn = self.degree1().unwrap_or(0);
        if dn < dd {
            return Err(Error::NotDivisibleBi {
                remainder: self.clone(),
            });
        }
        let v2 = self.vars.1.clone();
        let lead = divisor.coeff_of_power1(dd);

        // coefficients as reduced fractions num/den of univariate polys in v2
        let reduce = |num: UniPoly, den: UniPoly| -> (UniPoly, UniPoly) {
            if num.is_zero() {
                return (num, UniPoly::one(&v2));
            }
            let g = num.gcd(&den);
            let n = num.divexact(&g).expect("gcd divides");
            let d = den.divexact(&g).expect("gcd divides");
            let lc = d.leading_coeff();
            (n.mul_scalar(&lc.recip()), d.mul_scalar(&lc.recip()))
        };

        let mut rem: Vec<(UniPoly, UniPoly)> = (0..=dn)
            .map(|k| (self.coeff_of_power1(k), UniPoly::one(&v2)))
            .collect();
        let mut quot: Vec<(UniPoly, UniPoly)> =
            vec![(UniPoly::zero(&v2), UniPoly::one(&v2)); (dn - dd + 1) as usize];

        for k in (dd..=dn).rev() {
            let (tn, td) = rem[k as usize].clone();
            if tn.is_zero() {
                continue;
            }
            // q = (tn/td) / lead
            let (qn, qd) = reduce(tn, td.mul(&lead));
            for j in 0..dd {
                let idx = (k - dd + j) as usize;
                let bj = divisor.coeff_of_power1(j);
                if bj.is_zero() {
                    continue;
                }
                // rem[idx] -= q * bj
                let (rn, rd) = rem[idx].clone();
                let num = rn.mul(&qd).sub(&qn.mul(&bj).mul(&rd));
                let den = rd.mul(&qd);
                rem[idx] = reduce(num, den);
            }
            rem[k as usize] = (UniPoly::zero(&v2), UniPoly::one(&v2));
            quot[(k - dd) as usize] = (qn, qd);
        }

        if rem.iter().any(|(n, _)| !n.is_zero()) {
            // clear denominators into a reportable polynomial remainder
            let mut common = UniPoly::one(&v2);
            for (_, d) in &rem {
                let g = common.gcd(d);
                common = common.mul(&d.divexact(&g).expect("gcd divides"));
            }
            let mut remainder = BiPoly::zero(&self.vars.0, &self.vars.1);
            for (e1, (n, d)) in rem.iter().enumerate() {
                let scaled = n.mul(&common.divexact(d).expect("lcm divides"));
                for (e2, c) in scaled.coeffs().iter().enumerate() {
                    remainder.insert((e1 as u32, e2 as u32), c.clone());
                }
            }
            return Err(Error::NotDivisibleBi { remainder });
        }
        let mut out = BiPoly::zero(&self.vars.0, &self.vars.1);
        for (e1, (qn, qd)) in quot.iter().enumerate() {
            if !qd.is_constant() {
                return Err(Error::NotDivisibleBi {
                    remainder: self.clone(),
                });
            }
            let exact = qn.mul_scalar(&qd.leading_coeff().recip());
            for (e2, c) in exact.coeffs().iter().enumerate() {
                out.insert((e1 as u32, e2 as u32), c.clone());
            }
        }
        Ok(out)
    }

    /// Promote a univariate polynomial in v2.
    pub fn from_unipoly2(v1: &str, p: &UniPoly) -> BiPoly {
        let mut out = BiPoly::zero(v1, p.var());
        for (e2, c) in p.coeffs().iter().enumerate() {
            out.insert((0, e2 as u32), c.clone());
        }
        out
    }

    /// Promote a univariate polynomial in v1.
    pub fn from_unipoly1(p: &UniPoly, v2: &str) -> BiPoly {
        let mut out = BiPoly::zero(p.var(), v2);
        for (e1, c) in p.coeffs().iter().enumerate() {
            out.insert((e1 as u32, 0), c.clone());
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((e1, e2), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", rat::format_rat(c))?;
            if *e1 > 0 {
                write!(f, "*{}^{}", self.vars.0, e1)?;
            }
            if *e2 > 0 {
                write!(f, "*{}^{}", self.vars.1, e2)?;
            }
        }
        Ok(())
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
    fn arithmetic_and_zero_trimming() {
        let a = xz(&[(0, 0, 1), (1, 0, 2)]);
        let b = xz(&[(0, 0, -1), (1, 0, -2)]);
        assert!(a.add(&b).is_zero());
        let p = a.mul(&xz(&[(1, 1, 3)]));
        assert_eq!(p.coeff(1, 1), int(3));
        assert_eq!(p.coeff(2, 1), int(6));
    }

    #[test]
    fn ring_axioms_randomized() {
        let mut state = 1234567u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let mk = |next: &mut dyn FnMut() -> u64| {
                let nt = 1 + (next() % 4) as usize;
                let mut p = BiPoly::zero("x", "z");
                for _ in 0..nt {
                    p.insert(
                        ((next() % 4) as u32, (next() % 4) as u32),
                        rat::rat((next() % 2_000_001) as i64 - 1_000_000, 1),
                    );
                }
                p
            };
            let a = mk(&mut next);
            let b = mk(&mut next);
            let c = mk(&mut next);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }

    #[test]
    fn divexact_round_trip() {
        let mut state = 77u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let mk = |next: &mut dyn FnMut() -> u64| {
                let nt = 1 + (next() % 4) as usize;
                let mut p = BiPoly::zero("x", "z");
                for _ in 0..nt {
                    p.insert(
                        ((next() % 3) as u32, (next() % 3) as u32),
                        rat::rat((next() % 19) as i64 - 9, 1),
                    );
                }
                p
            };
            let a = mk(&mut next);
            let b = mk(&mut next);
            if b.is_zero() {
                continue;
            }
            let prod = a.mul(&b);
            assert_eq!(prod.divexact(&b).unwrap(), a);
        }
    }

    #[test]
    fn divexact_detects_failure() {
        let a = xz(&[(1, 0, 1), (0, 0, 1)]); // x + 1
        let b = xz(&[(1, 0, 1), (0, 1, 1)]); // x + z
        assert!(matches!(a.divexact(&b), Err(Error::NotDivisibleBi { .. })));
    }

    #[test]
    fn coeff_view_round_trip() {
        let p = xz(&[(0, 0, 3), (1, 2, 5), (2, 1, -7)]);
        let view: Vec<UniPoly> = (0..=2).map(|k| p.coeff_of_power1(k)).collect();
        assert_eq!(BiPoly::from_coeff_view("x", &view), p);
    }

    #[test]
    fn eval_partial() {
        // p = x^2 z + 3x: at x = 1+2s (z renamed s): (1+2s)^2 s + 3(1+2s)
        let p = BiPoly::from_terms("t", "s", &[(2, 1, 1), (1, 0, 3)]);
        let arg = UniPoly::from_ints("s", &[1, 2]);
        let q = p.eval1_poly(&arg);
        // (1+4s+4s^2)s + 3 + 6s = 3 + 7s + 4s^2 + 4s^3
        assert_eq!(q, UniPoly::from_ints("s", &[3, 7, 4, 4]));
    }
}
