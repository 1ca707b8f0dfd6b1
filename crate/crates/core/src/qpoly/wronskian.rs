//! The quantum-Wronskian identity family for P_n(x, z).
//!
//! W_n(z) = -s_n(z) P_n(1/z, z) is the polynomial factor of the Wronskian;
//! the full algebraic identity is verified in the quadratic extension, and
//! its expansions give P_n(1, z) = 4^n s_n(z) and the tau-function value of
//! P_n(1/z, z).

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::rat::{self};
use crate::tau::{TauFamily, TAU_VAR};
use crate::unipoly::UniPoly;

use super::tq::TqSymbols;
use super::{neg_four_thirds_pow, p_at_inverse_z_cleared, p_at_x_one, QPolynomial, X_VAR};

/// W_n(z) as cleared(z) / z^power; the minimal clearing power is n.
#[derive(Clone, Debug)]
pub struct WronskianValue {
    pub cleared: UniPoly,
    pub power: usize,
}

/// W_n(z) = -s_n(z) P_n(1/z, z), with the z-denominators cleared.
pub fn wronskian_value(p: &QPolynomial) -> WronskianValue {
    let pz = p_at_inverse_z_cleared(p);
    WronskianValue {
        cleared: p.r(p.n).mul(&pz).neg(),
        power: p.n,
    }
}

/// The full Wronskian identity, valid for arbitrary x, checked exactly in
/// the quadratic extension:
///
/// x_-^n/(1 - x + x_-(1 - xz)) P_n(x_+, z) P_n(1/(z x_-), z) + (+ <-> -)
///   = 1/(x-1) * (z (xz-1)^2 (x_+ - x_-)^2 / (x (z-1)^2))^n * W_n(z)
pub fn verify_wr1(p: &QPolynomial) -> Result<()> {
    let syms = TqSymbols::new()?;
    let n = p.n;
    let w = wronskian_value(p);

    let one_minus_x = BiPoly::from_terms(X_VAR, TAU_VAR, &[(0, 0, 1), (1, 0, -1)]);
    let one_minus_xz = BiPoly::from_terms(X_VAR, TAU_VAR, &[(0, 0, 1), (1, 1, -1)]);

    let term = |same_is_plus: bool| {
        let (x_same, x_other, inv_same) = if same_is_plus {
            (
                syms.x_plus_theta(),
                syms.x_minus_theta(),
                syms.inv_zx_plus_theta(),
            )
        } else {
            (
                syms.x_minus_theta(),
                syms.x_plus_theta(),
                syms.inv_zx_minus_theta(),
            )
        };
        let g = super::tq::theta_from_poly(one_minus_x.clone()).add(&x_same.mul(
            &super::tq::theta_from_poly(one_minus_xz.clone()),
            syms.delta_sq(),
        ));
        syms.x_pow(same_is_plus, n as u32)
            .mul(&g.recip(syms.delta_sq()), syms.delta_sq())
            .mul(&syms.horner_theta(&p.coeff_view, x_other), syms.delta_sq())
            .mul(&syms.horner_theta(&p.coeff_view, inv_same), syms.delta_sq())
    };
    let lhs = term(false).add(&term(true));

    // RHS = Delta^n W_n(z) / ((x - 1) z^n (z c^2 x (z-1)^2)^n), W_n = cleared/z^n
    let c = BiPoly::from_terms(X_VAR, TAU_VAR, &[(1, 1, 1), (0, 0, -1)]);
    let zc2x_zm1sq = BiPoly::from_terms(X_VAR, TAU_VAR, &[(0, 1, 1)])
        .mul(&c.pow(2))
        .mul(&BiPoly::from_terms(X_VAR, TAU_VAR, &[(1, 0, 1)]))
        .mul(&BiPoly::from_terms(X_VAR, TAU_VAR, &[(0, 1, 1), (0, 0, -1)]).pow(2));
    let num = syms
        .delta_sq()
        .pow(n)
        .mul(&BiPoly::from_unipoly2(X_VAR, &w.cleared));
    let den = BiPoly::from_terms(X_VAR, TAU_VAR, &[(1, 0, 1), (0, 0, -1)])
        .mul(&BiPoly::monomial(
            X_VAR,
            TAU_VAR,
            0,
            w.power as u32,
            rat::int(1),
        ))
        .mul(&zc2x_zm1sq.pow(n));
    let rhs = super::tq::theta_fraction(num, den);

    let diff = lhs.sub(&rhs);
    if diff.is_zero() {
        Ok(())
    } else {
        Err(Error::IdentityFailure {
            check: format!("Wronskian identity, n = {}", n),
            residual: format!(
                "radical {} terms, rational {} terms",
                diff.b.num_terms(),
                diff.a.num_terms()
            ),
        })
    }
}

/// P_n(1, z) = 4^n s_n(z), from expanding the Wronskian identity at x = 0.
pub fn verify_p1(p: &QPolynomial) -> Result<()> {
    let lhs = p_at_x_one(p);
    let rhs = p.r(p.n).mul_scalar(&rat::rat_pow(&rat::int(4), p.n as i64));
    let residual = lhs.sub(&rhs);
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::IdentityFailure {
            check: format!("P_n(1, z) = 4^n s_n, n = {}", p.n),
            residual: residual.to_string(),
        })
    }
}

/// P_n(1/z, z) = (-4/3)^n z^-n tau_{n+2}(z, 2/3).
pub fn verify_pz(p: &QPolynomial) -> Result<()> {
    let mut fam = TauFamily::new(rat::rat(2, 3));
    fam.extend_to(0, p.n as i64 + 2)?;
    let lhs = p_at_inverse_z_cleared(p);
    let rhs = fam
        .get(p.n as i64 + 2)
        .unwrap()
        .mul_scalar(&neg_four_thirds_pow(p.n));
    let residual = lhs.sub(&rhs);
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::IdentityFailure {
            check: format!("P_n(1/z, z) tau value, n = {}", p.n),
            residual: residual.to_string(),
        })
    }
}

/// Combined closed form W_n(z) = -(-4/3)^n z^-n tau_{n+1}(z,1/6) tau_{n+2}(z,2/3).
pub fn verify_product_form(p: &QPolynomial) -> Result<()> {
    let w = wronskian_value(p);
    let mut fam16 = TauFamily::new(rat::rat(1, 6));
    fam16.extend_to(0, p.n as i64 + 1)?;
    let mut fam23 = TauFamily::new(rat::rat(2, 3));
    fam23.extend_to(0, p.n as i64 + 2)?;
    let rhs = fam16
        .get(p.n as i64 + 1)
        .unwrap()
        .mul(fam23.get(p.n as i64 + 2).unwrap())
        .mul_scalar(&neg_four_thirds_pow(p.n))
        .neg();
    let residual = w.cleared.sub(&rhs);
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::IdentityFailure {
            check: format!("Wronskian product form, n = {}", p.n),
            residual: residual.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::compute_p;
    use super::*;

    #[test]
    fn w0_is_minus_one() {
        let p = compute_p(0).unwrap();
        let w = wronskian_value(&p);
        assert_eq!(w.cleared, UniPoly::from_ints(TAU_VAR, &[-1]));
        assert_eq!(w.power, 0);
    }

    #[test]
    fn pz_example_n1() {
        // P_1(1/z, z) = 1/z + 3 and (-4/3) z^-1 tau_3(z, 2/3) = z^-1 + 3
        let p = compute_p(1).unwrap();
        verify_pz(&p).unwrap();
        assert_eq!(
            p_at_inverse_z_cleared(&p),
            UniPoly::from_ints(TAU_VAR, &[1, 3])
        );
    }

    #[test]
    fn p1_example_n2() {
        // P_2(1, z) = 16(1 + z)
        let p = compute_p(2).unwrap();
        verify_p1(&p).unwrap();
        assert_eq!(p_at_x_one(&p), UniPoly::from_ints(TAU_VAR, &[16, 16]));
    }

    #[test]
    fn wr1_small_n() {
        for n in 0..=3 {
            let p = compute_p(n).unwrap();
            verify_wr1(&p).unwrap();
        }
    }

    #[test]
    fn product_form_small_n() {
        for n in 0..=4 {
            let p = compute_p(n).unwrap();
            verify_product_form(&p).unwrap();
        }
    }
}
