//! Jacobi theta functions of periods pi and pi*tau for complex argument and
//! nome, with series truncation certified against the running partial sum,
//! and the Weierstrass p-function built from theta-1 logarithmic
//! derivatives.

use num_complex::Complex64;

use crate::error::{Error, Result};

const TRUNC_REL: f64 = 1e-18;
const MAX_TERMS: usize = 80;

pub fn check_nome(q: Complex64) -> Result<()> {
    if q.norm() >= 1.0 || q.norm() == 0.0 {
        return Err(Error::NomeOutOfRange);
    }
    Ok(())
}

/// theta_1(u | q) = 2 q^(1/4) sum (-1)^k q^(k(k+1)) sin((2k+1)u)
pub fn theta1(u: Complex64, q: Complex64) -> Complex64 {
    theta1_with_derivatives(u, q).0
}

/// (theta_1, theta_1', theta_1'') at u.
pub fn theta1_with_derivatives(u: Complex64, q: Complex64) -> (Complex64, Complex64, Complex64) {
    let q4 = q.powf(0.25);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut d1 = sum;
    let mut d2 = sum;
    let mut sign = 1.0;
    let mut qpow = Complex64::new(1.0, 0.0); // q^(k(k+1))
    for k in 0..MAX_TERMS {
        let m = (2 * k + 1) as f64;
        let term = qpow * sign;
        let (s, c) = ((m * u).sin(), (m * u).cos());
        sum += term * s;
        d1 += term * c * m;
        d2 -= term * s * m * m;
        let done = term.norm() * (s.norm() + 1.0) < TRUNC_REL * (sum.norm() + 1e-300) && k > 2;
        if done {
            break;
        }
        sign = -sign;
        // q^(k(k+1)) -> q^((k+1)(k+2)): multiply by q^(2k+2)
        qpow *= q.powi(2 * (k as i32) + 2);
    }
    (2.0 * q4 * sum, 2.0 * q4 * d1, 2.0 * q4 * d2)
}

/// theta_1'(0 | q) and theta_1'''(0 | q).
pub fn theta1_zero_derivatives(q: Complex64) -> (Complex64, Complex64) {
    let q4 = q.powf(0.25);
    let mut d1 = Complex64::new(0.0, 0.0);
    let mut d3 = d1;
    let mut sign = 1.0;
    let mut qpow = Complex64::new(1.0, 0.0);
    for k in 0..MAX_TERMS {
        let m = (2 * k + 1) as f64;
        let term = qpow * sign;
        d1 += term * m;
        d3 -= term * m * m * m;
        if term.norm() * m * m * m < TRUNC_REL * (d1.norm() + 1e-300) && k > 2 {
            break;
        }
        sign = -sign;
        qpow *= q.powi(2 * (k as i32) + 2);
    }
    (2.0 * q4 * d1, 2.0 * q4 * d3)
}

pub fn theta2(u: Complex64, q: Complex64) -> Complex64 {
    let q4 = q.powf(0.25);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut qpow = Complex64::new(1.0, 0.0);
    for k in 0..MAX_TERMS {
        let m = (2 * k + 1) as f64;
        let term = qpow * (m * u).cos();
        sum += term;
        if term.norm() < TRUNC_REL * (sum.norm() + 1e-300) && k > 2 {
            break;
        }
        qpow *= q.powi(2 * (k as i32) + 2);
    }
    2.0 * q4 * sum
}

pub fn theta3(u: Complex64, q: Complex64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut qpow = Complex64::new(1.0, 0.0); // q^(k^2)
    for k in 1..MAX_TERMS {
        // q^(k^2) = q^((k-1)^2) * q^(2k-1)
        qpow *= q.powi(2 * (k as i32) - 1);
        let term = 2.0 * qpow * (2.0 * (k as f64) * u).cos();
        sum += term;
        if term.norm() < TRUNC_REL * (sum.norm() + 1e-300) && k > 2 {
            break;
        }
    }
    sum
}

pub fn theta4(u: Complex64, q: Complex64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut qpow = Complex64::new(1.0, 0.0);
    let mut sign = -1.0;
    for k in 1..MAX_TERMS {
        qpow *= q.powi(2 * (k as i32) - 1);
        let term = 2.0 * sign * qpow * (2.0 * (k as f64) * u).cos();
        sum += term;
        if term.norm() < TRUNC_REL * (sum.norm() + 1e-300) && k > 2 {
            break;
        }
        sign = -sign;
    }
    sum
}

/// Weierstrass p-function with periods pi and pi*tau for the nome
/// q = e^(i pi tau): -d^2/dv^2 log theta_1(v) - theta_1'''(0)/(3 theta_1'(0)).
pub fn weierstrass_p(v: Complex64, q: Complex64) -> Complex64 {
    let (t, t1, t2) = theta1_with_derivatives(v, q);
    let (d1, d3) = theta1_zero_derivatives(q);
    -(t2 * t - t1 * t1) / (t * t) - d3 / (3.0 * d1)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theta1_is_odd_and_vanishes_at_zero() {
        let q = c(0.1, 0.0);
        assert!(theta1(c(0.0, 0.0), q).norm() < 1e-15);
        let u = c(0.37, 0.11);
        assert!((theta1(u, q) + theta1(-u, q)).norm() < 1e-14);
    }

    #[test]
    fn quasi_periodicity_under_pi_shift() {
        let q = c(0.1, 0.0);
        let u = c(0.3, 0.1);
        let lhs = theta1(u + c(PI, 0.0), q) + theta1(u, q);
        assert!(lhs.norm() < 1e-12, "residual {}", lhs.norm());
        // theta_4(u) = theta_3(u + pi/2)
        for u in [c(0.2, 0.0), c(1.1, -0.2), c(0.9, 0.3)] {
            let diff = theta4(u, q) - theta3(u + c(PI / 2.0, 0.0), q);
            assert!(diff.norm() < 1e-12);
        }
        // theta_2(u) = theta_1(u + pi/2)
        let diff = theta2(u, q) - theta1(u + c(PI / 2.0, 0.0), q);
        assert!(diff.norm() < 1e-12);
    }

    #[test]
    fn full_period_under_pi_tau() {
        // theta_1(u + pi tau) = -q^-1 e^(-2iu) theta_1(u)
        let q = c(0.15, 0.0);
        let tau_im = -(q.re.ln()) / PI;
        let pitau = c(0.0, PI * tau_im);
        let u = c(0.4, 0.05);
        let lhs = theta1(u + pitau, q);
        let rhs = -(c(-2.0, 0.0) * c(0.0, 1.0) * u).exp() / q * theta1(u, q);
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }

    #[test]
    fn derivative_series_match_finite_differences() {
        let q = c(0.12, 0.0);
        let u = c(0.7, 0.0);
        let h = 1e-5;
        let (t, t1, t2) = theta1_with_derivatives(u, q);
        let tp = theta1(u + c(h, 0.0), q);
        let tm = theta1(u - c(h, 0.0), q);
        assert!((t1 - (tp - tm) / c(2.0 * h, 0.0)).norm() < 1e-8);
        assert!((t2 - (tp - 2.0 * t + tm) / c(h * h, 0.0)).norm() < 1e-5);
        let (d1, d3) = theta1_zero_derivatives(q);
        let (_, t1_at0, _) = theta1_with_derivatives(c(0.0, 0.0), q);
        assert!((d1 - t1_at0).norm() < 1e-14);
        // third derivative by differencing theta_1'' at 0
        let (_, _, t2p) = theta1_with_derivatives(c(h, 0.0), q);
        let (_, _, t2m) = theta1_with_derivatives(c(-h, 0.0), q);
        assert!((d3 - (t2p - t2m) / c(2.0 * h, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn weierstrass_evenness_and_pole() {
        let q = c(0.2, 0.0);
        for v in [c(0.31, 0.0), c(0.9, 0.13)] {
            let diff = weierstrass_p(v, q) - weierstrass_p(-v, q);
            assert!(diff.norm() < 1e-10);
        }
        // v^2 p(v) -> 1 near the origin
        let v = c(1e-4, 0.0);
        let val = weierstrass_p(v, q) * v * v;
        assert!((val - c(1.0, 0.0)).norm() < 1e-6);
        // periodicity
        let v = c(0.47, 0.09);
        let diff = weierstrass_p(v + c(PI, 0.0), q) - weierstrass_p(v, q);
        assert!(diff.norm() < 1e-9);
    }

    #[test]
    fn nome_validation() {
        assert!(check_nome(c(0.3, 0.2)).is_ok());
        assert!(matches!(
            check_nome(c(1.2, 0.0)),
            Err(Error::NomeOutOfRange)
        ));
        assert!(matches!(
            check_nome(c(0.0, 0.0)),
            Err(Error::NomeOutOfRange)
        ));
    }
}
