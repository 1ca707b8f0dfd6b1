//! Verification suite drivers: each family of checks produces a
//! machine-readable report; a failed check records its obstruction and the
//! suite continues.

use num_complex::Complex64;

use crate::eigen;
use crate::error::Error;
use crate::factor::{self, PQFamily};
use crate::golden;
use crate::numeric;
use crate::qpoly;
use crate::rat::{self};
use crate::report::VerificationReport;
use crate::sos;
use crate::tau::{self, TauFamily};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub tau_n_max: i64,
    pub conj_a_n_max: usize,
    pub tq_n_max: usize,
    pub tq_route_n_max: usize,
    pub eigen_sites: Vec<usize>,
    pub k_min: i64,
    pub k_max: i64,
    pub asm_n_max: i64,
    pub product_n_max: i64,
    pub sos_p_max: i64,
    pub sos_kernel_list: Vec<i64>,
    pub nome_list: Vec<f64>,
    pub numeric_tq_n_max: usize,
    pub transfer_sites: Vec<usize>,
    pub lame_n_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            tau_n_max: 20,
            conj_a_n_max: 20,
            tq_n_max: 8,
            tq_route_n_max: 6,
            eigen_sites: vec![3, 5, 7, 9, 11, 13],
            k_min: -4,
            k_max: 4,
            asm_n_max: 9,
            product_n_max: 3,
            sos_p_max: 10,
            sos_kernel_list: vec![0, 2, 4],
            nome_list: vec![0.05, 0.1, 0.2],
            numeric_tq_n_max: 4,
            transfer_sites: vec![3, 5, 7],
            lame_n_max: 1,
        }
    }
}

/// Tau-function identities: s_n = tau_{n+1}(z, 1/6), sbar_n = tau_n(z, -1/3),
/// integrality and positivity, degree bounds, direction consistency.
pub fn verify_tau_suite(n_max: i64) -> VerificationReport {
    let mut report = VerificationReport::new();
    report.run("tau/s-equals-tau-sixth", || {
        let mut s = tau::s_sequence(0, n_max)?;
        let mut fam = TauFamily::new(rat::rat(1, 6));
        fam.extend_to(0, n_max + 1)?;
        for n in 0..=n_max {
            if s.s(n)? != *fam.get(n + 1).unwrap() {
                return Err(Error::ValueMismatch {
                    what: format!("s_{} vs tau_{}(1/6)", n, n + 1),
                    lhs: s.s(n)?.to_string(),
                    rhs: fam.get(n + 1).unwrap().to_string(),
                });
            }
        }
        Ok(())
    });
    report.run("tau/sbar-equals-tau-minus-third", || {
        let sb = tau::sbar_sequence(n_max)?;
        let mut fam = TauFamily::new(rat::rat(-1, 3));
        fam.extend_to(0, n_max)?;
        for n in 0..=n_max {
            if sb[n as usize] != *fam.get(n).unwrap() {
                return Err(Error::ValueMismatch {
                    what: format!("sbar_{}", n),
                    lhs: sb[n as usize].to_string(),
                    rhs: fam.get(n).unwrap().to_string(),
                });
            }
        }
        Ok(())
    });
    report.run("tau/nonnegative-integer-coefficients", || {
        let mut s = tau::s_sequence(0, n_max)?;
        let sb = tau::sbar_sequence(n_max)?;
        for n in 0..=n_max {
            let sn = s.s(n)?;
            if !sn.is_integer_coeffs() || !sn.has_nonnegative_coeffs() {
                return Err(Error::NonIntegerCoefficients {
                    what: format!("s_{}", n),
                });
            }
            let sbn = &sb[n as usize];
            if !sbn.is_integer_coeffs() || !sbn.has_nonnegative_coeffs() {
                return Err(Error::NonIntegerCoefficients {
                    what: format!("sbar_{}", n),
                });
            }
        }
        Ok(())
    });
    report.run("tau/degree-bound", || {
        let mut s = tau::s_sequence(0, n_max)?;
        for n in 0..=n_max {
            let d = s.s(n)?.degree().unwrap_or(0) as i64;
            if d > n * (n + 1) / 4 {
                return Err(Error::ValueMismatch {
                    what: format!("deg s_{}", n),
                    lhs: d.to_string(),
                    rhs: format!("<= {}", n * (n + 1) / 4),
                });
            }
        }
        Ok(())
    });
    report.run("tau/direction-consistency", || {
        let mut s = tau::s_sequence(-6, 8)?;
        s.extend_to(-6, 8)?;
        s.verify_direction_consistency()
    });
    report
}

/// Positivity, integrality, and degree bounds of every coefficient of P_n.
pub fn verify_conjecture_a(n_max: usize) -> VerificationReport {
    let mut report = VerificationReport::new();
    for n in 0..=n_max {
        report.run(&format!("conjA/n={}", n), || {
            qpoly::compute_p(n)?.validate()
        });
    }
    report
}

/// The TQ relation, the constant-term relation, the Wronskian family, and
/// the dual-route agreement.
pub fn verify_tq_suite(n_max: usize, route_n_max: usize) -> VerificationReport {
    let mut report = VerificationReport::new();
    for n in 0..=n_max {
        let p = match qpoly::compute_p(n) {
            Ok(p) => p,
            Err(e) => {
                report.run(&format!("tq/compute-p/n={}", n), || Err(e.clone()));
                continue;
            }
        };
        report.run(&format!("tq/functional-relation/n={}", n), || {
            qpoly::verify_tq(&p)
        });
        report.run(&format!("tq/r0-relation/n={}", n), || {
            qpoly::verify_r0_relation(&p)
        });
        report.run(&format!("tq/wronskian-identity/n={}", n), || {
            qpoly::verify_wr1(&p)
        });
        report.run(&format!("tq/value-at-one/n={}", n), || qpoly::verify_p1(&p));
        report.run(&format!("tq/value-at-inverse-z/n={}", n), || {
            qpoly::verify_pz(&p)
        });
        report.run(&format!("tq/wronskian-product-form/n={}", n), || {
            qpoly::verify_product_form(&p)
        });
        if n <= route_n_max {
            report.run(&format!("tq/route-agreement/n={}", n), || {
                let via_tq = qpoly::compute_p_via_tq(n)?;
                if via_tq.coeff_view == p.coeff_view {
                    Ok(())
                } else {
                    Err(Error::ValueMismatch {
                        what: format!("P_{} by PDE vs TQ nullspace", n),
                        lhs: "PDE descent".into(),
                        rhs: "TQ nullspace".into(),
                    })
                }
            });
        }
    }
    report
}

/// Ground-state eigenvectors and the eigenvector conjectures.
pub fn verify_eigen_suite(sites: &[usize]) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut pq = PQFamily::new();
    for &n_sites in sites {
        let gs = match eigen::ground_vector(n_sites) {
            Ok(gs) => gs,
            Err(e) => {
                report.run(&format!("eigen/ground-vector/N={}", n_sites), || {
                    Err(e.clone())
                });
                continue;
            }
        };
        report.run(&format!("eigen/resubstitution/N={}", n_sites), || {
            gs.certify_eigenvector()
        });
        report.run(&format!("eigen/norm-conjecture/N={}", n_sites), || {
            eigen::verify_conjecture_1(&gs)
        });
        report.run(&format!("eigen/one-down-component/N={}", n_sites), || {
            eigen::verify_conjecture_2(&gs)
        });
        report.run(&format!("eigen/all-down-component/N={}", n_sites), || {
            eigen::verify_conjecture_3(&gs)
        });
        report.run(
            &format!("eigen/alternating-component/N={}", n_sites),
            || eigen::verify_conjecture_4(&gs, &mut pq),
        );
        report.run(&format!("eigen/symmetries/N={}", n_sites), || {
            let scalar = eigen::verify_symmetries(&gs)?;
            let n = gs.n_half_chain() as i64;
            let expect = rat::rat_pow(&rat::rat(4, 3), 2 * n + 1);
            if scalar != expect {
                return Err(Error::ValueMismatch {
                    what: "chain-length negation scalar".into(),
                    lhs: rat::format_rat(&scalar),
                    rhs: rat::format_rat(&expect),
                });
            }
            Ok(())
        });
    }
    report
}

/// The subfactor factorizations, their symmetries, and the special values.
pub fn verify_conj_e_suite(k_min: i64, k_max: i64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut pq = PQFamily::new();
    report.run("conjE/round-trips", || pq.check_round_trips(k_min, k_max));
    report.run("conjE/symmetries", || {
        pq.check_symmetries(k_min.max(-3), k_max.min(4))
    });
    report.run("conjE/degrees-and-integrality", || {
        for k in k_min..=k_max {
            let p = pq.p(k)?;
            if p.degree().unwrap_or(0) as i64 != k * (k + 1) {
                return Err(Error::ValueMismatch {
                    what: format!("deg p_{}", k),
                    lhs: format!("{:?}", p.degree()),
                    rhs: (k * (k + 1)).to_string(),
                });
            }
        }
        Ok(())
    });
    report
}

/// ASM anchor and the two product formulas.
pub fn verify_special_values(product_n_max: i64, asm_n_max: i64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut pq = PQFamily::new();
    report.run("special/product-formulas-and-asm", || {
        factor::special_values(&mut pq, product_n_max, asm_n_max)
    });
    report.run("special/asm-values", || {
        let expect: [i64; 9] = [1, 2, 7, 42, 429, 7436, 218348, 10850216, 911835460];
        for (i, &v) in expect.iter().enumerate().take(asm_n_max as usize) {
            if factor::asm_count(i as i64 + 1) != rat::int(v) {
                return Err(Error::ValueMismatch {
                    what: format!("asm({})", i + 1),
                    lhs: rat::format_rat(&factor::asm_count(i as i64 + 1)),
                    rhs: v.to_string(),
                });
            }
        }
        Ok(())
    });
    report
}

/// The solid-on-solid recurrence, PDE kernels, and the bridge.
pub fn verify_sos_suite(p_max: i64, kernel_list: &[i64]) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut fam = sos::SosFamily::new();
    report.run("sos/recurrence-divisions", || {
        fam.extend_to(p_max).map(|_| ())
    });
    for &n in kernel_list {
        report.run(&format!("sos/pde-kernel/n={}", n), || {
            let (_, caps) = sos::sos_p_kernel(n)?;
            let _ = caps;
            Ok(())
        });
        report.run(&format!("sos/bridge/n={}", n), || {
            let (p2, _) = sos::sos_p_kernel(n)?;
            fam.extend_to(n)?;
            let scale = sos::sos_bridge_check(fam.get(n).unwrap(), &p2, n)?;
            if scale.numer().bits() == 0 {
                return Err(Error::MismatchBeyondScale {
                    detail: "zero scale".into(),
                });
            }
            Ok(())
        });
    }
    report
}

/// The floating-point bridge: weights, variable maps, functional equation,
/// transfer spectrum, Hamiltonian symmetry, norm agreement, and the
/// soft-failing Schroedinger check.
pub fn verify_numeric_suite(cfg: &SuiteConfig) -> VerificationReport {
    let mut report = VerificationReport::new();
    let u = Complex64::new(0.4, 0.0);
    for &q in &cfg.nome_list {
        report.run(&format!("numeric/variable-maps/q={}", q), || {
            let ctx = numeric::EllipticContext::real(q)?;
            // all map identities at 20 sample points across a period
            let mut state = 0x77aa55u64;
            for _ in 0..20 {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let us = 0.1 + (state % 10_000) as f64 / 10_000.0 * 2.9;
                numeric::variable_maps(&ctx, Complex64::new(us, 0.0))?;
            }
            Ok(())
        });
        for n in 0..=cfg.numeric_tq_n_max {
            report.run(&format!("numeric/tq-residual/q={}/n={}", q, n), || {
                let ctx = numeric::EllipticContext::real(q)?;
                let p = qpoly::compute_p(n)?;
                let r = numeric::tq_residual(&ctx, &p, 20)?;
                let worst = r.max_functional.max(r.max_periodicity);
                if worst > 1e-10 {
                    return Err(Error::ToleranceExceeded {
                        check: format!("tq residual q={} n={}", q, n),
                        residual: worst,
                        tol: 1e-10,
                    });
                }
                Ok(())
            });
        }
    }
    for &n_sites in &cfg.transfer_sites {
        report.run(&format!("numeric/transfer-spectrum/N={}", n_sites), || {
            let ctx = numeric::EllipticContext::real(0.1)?;
            numeric::transfer_spectrum_check(&ctx, u, n_sites).map(|_| ())
        });
        report.run(
            &format!("numeric/hamiltonian-spectrum/N={}", n_sites),
            || {
                let ctx = numeric::EllipticContext::real(0.1)?;
                let maps = numeric::variable_maps(&ctx, u)?;
                numeric::hamiltonian_symmetry_check(maps.zeta.re, n_sites).map(|_| ())
            },
        );
    }
    for n_sites in [3usize, 5] {
        report.run(&format!("numeric/norm-agreement/N={}", n_sites), || {
            let ctx = numeric::EllipticContext::real(0.1)?;
            numeric::norm_cross_check(&ctx, u, n_sites).map(|_| ())
        });
    }
    for n in 0..=cfg.lame_n_max {
        report.run_soft(&format!("numeric/lame-equation/n={}", n), || {
            let check = numeric::lame_residual_check(0.1, n)?;
            if check.residual > 1e-4 {
                return Err(Error::ToleranceExceeded {
                    check: format!("lame n={}", n),
                    residual: check.residual,
                    tol: 1e-4,
                });
            }
            Ok(())
        });
    }
    report
}

/// Golden-data regeneration.
pub fn verify_golden_suite() -> VerificationReport {
    golden::verify_golden()
}

/// The float spectrum invariant at random rational zeta in (-2, 2).
pub fn verify_float_spectrum(sites: &[usize]) -> VerificationReport {
    let mut report = VerificationReport::new();
    for &n_sites in sites {
        report.run(&format!("eigen/float-spectrum/N={}", n_sites), || {
            let sector = eigen::SpinSector::new(n_sites)?;
            let mut state = 0x5a5a5a5au64;
            for _ in 0..10 {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let num = (state % 4000) as i64 - 2000;
                let zeta = num as f64 / 1001.0;
                let min = eigen::min_sector_eigenvalue_f64(&sector, zeta);
                let expect = -(n_sites as f64) / 2.0;
                if (min - expect).abs() > 1e-9 {
                    return Err(Error::SpectrumMiss {
                        check: format!("float H at zeta = {}", zeta),
                        distance: (min - expect).abs(),
                    });
                }
            }
            Ok(())
        });
    }
    report
}

/// Everything, in the order of the acceptance criteria.
pub fn verify_all(cfg: &SuiteConfig) -> VerificationReport {
    let mut report = VerificationReport::new();
    report.merge(verify_golden_suite());
    report.merge(verify_tau_suite(cfg.tau_n_max));
    report.merge(verify_conjecture_a(cfg.conj_a_n_max));
    report.merge(verify_tq_suite(cfg.tq_n_max, cfg.tq_route_n_max));
    report.merge(verify_eigen_suite(&cfg.eigen_sites));
    report.merge(verify_conj_e_suite(cfg.k_min, cfg.k_max));
    report.merge(verify_special_values(cfg.product_n_max, cfg.asm_n_max));
    report.merge(verify_sos_suite(cfg.sos_p_max, &cfg.sos_kernel_list));
    report.merge(verify_numeric_suite(cfg));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_verify_all_passes() {
        let cfg = SuiteConfig {
            tau_n_max: 6,
            conj_a_n_max: 4,
            tq_n_max: 2,
            tq_route_n_max: 2,
            eigen_sites: vec![3, 5],
            k_min: -2,
            k_max: 2,
            asm_n_max: 5,
            product_n_max: 2,
            sos_p_max: 4,
            sos_kernel_list: vec![0, 2],
            nome_list: vec![0.1],
            numeric_tq_n_max: 1,
            transfer_sites: vec![3],
            lame_n_max: 0,
        };
        let report = verify_all(&cfg);
        assert!(report.all_passed(), "\n{}", report.render_text());
        assert!(report.checks.len() >= 30);
    }

    #[test]
    fn trivial_bound_passes() {
        // n_max = 0 everywhere still yields a passing, nonempty report
        let report = verify_tq_suite(0, 0);
        assert!(report.all_passed(), "\n{}", report.render_text());
    }
}
