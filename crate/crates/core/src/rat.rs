//! Exact rational scalars.
//!
//! `BigRat` is the coefficient field for every exact computation in this
//! crate. It is backed by `num_rational::BigRational`, which maintains the
//! invariants we rely on: always reduced, denominator positive, zero stored
//! as 0/1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type BigRat = BigRational;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> BigRat {
    assert!(den != 0, "rat: zero denominator");
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for small integer constants.
pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Exact integer power with negative exponents allowed (base must be nonzero
/// for negative exponents).
pub fn rat_pow(base: &BigRat, exp: i64) -> BigRat {
    if exp >= 0 {
        num_traits::pow::pow(base.clone(), exp as usize)
    } else {
        assert!(!base.is_zero(), "rat_pow: negative power of zero");
        num_traits::pow::pow(base.recip(), (-exp) as usize)
    }
}

/// Render as a decimal string: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rat(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p"` or `"p/q"` with arbitrary-precision decimal integers.
pub fn parse_rat(s: &str) -> Result<BigRat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid integer {:?}", num))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid integer {:?}", den))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {:?}", s));
    }
    Ok(BigRat::new(n, d))
}

/// True if the rational is an integer.
pub fn is_integer(r: &BigRat) -> bool {
    r.denom().is_one()
}

/// Exact factorial as a rational.
pub fn factorial(n: u64) -> BigRat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRat::from_integer(acc)
}

/// gcd of two rationals: gcd of numerators over lcm of denominators.
/// `gcd_rat(a, b)` is the largest positive rational g with a/g and b/g
/// both integers; gcd(0, 0) = 0.
pub fn gcd_rat(a: &BigRat, b: &BigRat) -> BigRat {
    use num_integer::Integer;
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    BigRat::new(num, den)
}

/// Convert to f64 (lossy; used only by the floating-point bridge).
pub fn rat_to_f64(r: &BigRat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of leading digits for extreme values.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}
