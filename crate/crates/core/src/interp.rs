//! Exact interpolation: Newton-form polynomial interpolation and Cauchy
//! rational interpolation, both over the rationals.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{self, BigRat};
use crate::unipoly::UniPoly;

/// The unique polynomial of degree < #samples through all samples.
pub fn interpolate(var: &str, samples: &[(BigRat, BigRat)]) -> Result<UniPoly> {
    for (i, (xi, _)) in samples.iter().enumerate() {
        for (xj, _) in &samples[..i] {
            if xi == xj {
                return Err(Error::DuplicateAbscissa {
                    at: rat::format_rat(xi),
                });
            }
        }
    }
    if samples.is_empty() {
        return Ok(UniPoly::zero(var));
    }
    // Newton divided differences
    let n = samples.len();
    let mut coef: Vec<BigRat> = samples.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = &samples[i].0 - &samples[i - level].0;
            coef[i] = (&coef[i] - &coef[i - 1]) / dx;
        }
    }
    // expand the Newton form into monomial coefficients
    let mut poly = UniPoly::zero(var);
    for i in (0..n).rev() {
        // poly = poly * (x - x_i) + coef[i]
        let factor = UniPoly::new(var, vec![-samples[i].0.clone(), rat::int(1)]);
        poly = poly.mul(&factor);
        poly = poly.add(&UniPoly::constant(var, coef[i].clone()));
    }
    Ok(poly)
}

/// Cauchy rational interpolation: find num/den with deg num <= dn and
/// deg den <= dd matching every sample, or None when the linear system has
/// no nontrivial solution at these degree caps.
///
/// The returned pair is coprime with a primitive integer denominator, and is
/// validated against every input sample (spurious poles rejected).
pub fn rational_interpolate(
    var: &str,
    samples: &[(BigRat, BigRat)],
    dn: usize,
    dd: usize,
) -> Option<(UniPoly, UniPoly)> {
    let rows: Vec<Vec<BigRat>> = samples
        .iter()
        .map(|(x, g)| {
            let mut row = Vec::with_capacity(dn + dd + 2);
            let mut p = rat::int(1);
            for _ in 0..=dn {
                row.push(p.clone());
                p *= x;
            }
            let mut p = -g.clone();
            for _ in 0..=dd {
                row.push(p.clone());
                p *= x;
            }
            row
        })
        .collect();
    let (_, basis) = linalg::rat_kernel(&rows);
    let v = basis.first()?;
    let num = UniPoly::new(
        var,
        v[..=dn]
            .iter()
            .map(|c| BigRat::from_integer(c.clone()))
            .collect(),
    );
    let den = UniPoly::new(
        var,
        v[dn + 1..]
            .iter()
            .map(|c| BigRat::from_integer(c.clone()))
            .collect(),
    );
    if den.is_zero() {
        return None;
    }
    let g = num.gcd(&den);
    let num = num.divexact(&g).expect("gcd divides");
    let den = den.divexact(&g).expect("gcd divides");
    // normalize: primitive denominator with positive lead
    let scale = den.primitive().leading_coeff() / den.leading_coeff();
    let num = num.mul_scalar(&scale);
    let den = den.mul_scalar(&scale);
    // every sample must be reproduced without hitting a denominator zero
    for (x, gval) in samples {
        let dv = den.eval(x);
        if dv.is_zero() {
            return None;
        }
        if num.eval(x) / dv != *gval {
            return None;
        }
    }
    Some((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn quadratic_through_three_points() {
        // (0,3), (1,4), (-1,4) -> 3 + x^2
        let p = interpolate(
            "zeta",
            &[(int(0), int(3)), (int(1), int(4)), (int(-1), int(4))],
        )
        .unwrap();
        assert_eq!(p, UniPoly::from_ints("zeta", &[3, 0, 1]));
    }

    #[test]
    fn constant_and_line() {
        assert_eq!(
            interpolate("zeta", &[(int(2), int(1))]).unwrap(),
            UniPoly::one("zeta")
        );
        assert_eq!(
            interpolate("zeta", &[(int(0), int(1)), (int(1), int(2))]).unwrap(),
            UniPoly::from_ints("zeta", &[1, 1])
        );
    }

    #[test]
    fn duplicate_abscissa_rejected() {
        assert!(matches!(
            interpolate("z", &[(int(1), int(1)), (int(1), int(2))]),
            Err(Error::DuplicateAbscissa { .. })
        ));
    }

    #[test]
    fn round_trip_random_polynomials() {
        let mut state = 5u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let deg = (next() % 6) as usize;
            let p = UniPoly::new(
                "z",
                (0..=deg)
                    .map(|_| rat((next() % 201) as i64 - 100, 1 + (next() % 7) as i64))
                    .collect(),
            );
            let xs: Vec<BigRat> = (0..=deg as i64).map(|k| rat(k - 3, 1)).collect();
            let samples: Vec<(BigRat, BigRat)> =
                xs.iter().map(|x| (x.clone(), p.eval(x))).collect();
            assert_eq!(interpolate("z", &samples).unwrap(), p);
        }
    }

    #[test]
    fn rational_interpolation_recovers_ratio() {
        // g = (1 + z^2) / (2 - z)
        let num = UniPoly::from_ints("z", &[1, 0, 1]);
        let den = UniPoly::from_ints("z", &[2, -1]);
        let samples: Vec<(BigRat, BigRat)> = (-4..=4)
            .filter(|&k| k != 2)
            .map(|k| {
                let x = int(k);
                (x.clone(), num.eval(&x) / den.eval(&x))
            })
            .collect();
        let (n, d) = rational_interpolate("z", &samples, 2, 1).unwrap();
        // same ratio up to the canonical scale
        assert!(n.mul(&den).sub(&num.mul(&d)).is_zero());
    }

    #[test]
    fn rational_interpolation_rejects_insufficient_degree() {
        // g = z^3 needs dn >= 3
        let samples: Vec<(BigRat, BigRat)> = (-3..=3).map(|k| (int(k), int(k * k * k))).collect();
        assert!(rational_interpolate("z", &samples, 2, 0).is_none());
    }
}
