//! The golden data corpus: the printed polynomial families embedded in the
//! JSON interchange format, checksummed, with a regeneration check that
//! recomputes every object from the recurrences, the PDE, and the
//! factorizations and compares bit-exactly.

use serde_json::{Map, Value};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::factor::{alternating_component, PQFamily, Y_VAR, ZETA_VAR};
use crate::jsonio;
use crate::qpoly::{compute_p, X_VAR};
use crate::rat::{self};
use crate::report::VerificationReport;
use crate::tau::{s_sequence, sbar_sequence, TAU_VAR};
use crate::unipoly::UniPoly;

/// Frozen FNV-1a 64 checksum of the canonical corpus JSON.
pub const CORPUS_CHECKSUM: u64 = 0x57298b9c1b9e4d6b;

pub fn fnv1a64(data: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in data {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn zp(ints: &[i64]) -> UniPoly {
    UniPoly::from_ints(TAU_VAR, ints)
}

fn yp(ints: &[i64]) -> UniPoly {
    UniPoly::from_ints(Y_VAR, ints)
}

fn ap(ints: &[i64]) -> UniPoly {
    UniPoly::from_ints(ZETA_VAR, ints)
}

/// The two-variable polynomials P_0..P_4, by coefficient views in x.
fn golden_p(n: usize) -> BiPoly {
    let views: Vec<UniPoly> = match n {
        0 => vec![zp(&[1])],
        1 => vec![zp(&[3]), zp(&[1])],
        2 => vec![zp(&[10]), zp(&[5, 15]), zp(&[1, 1])],
        3 => vec![
            zp(&[35, 21]),
            zp(&[21, 133, 126]),
            zp(&[7, 35, 126]),
            zp(&[1, 3, 4]),
        ],
        4 => vec![
            zp(&[126, 252, 198]),
            zp(&[84, 864, 2052, 2376]),
            zp(&[36, 342, 1998, 3906, 1782]),
            zp(&[9, 72, 342, 1368, 513]),
            zp(&[1, 6, 18, 30, 9]),
        ],
        _ => panic!("no golden P_{}", n),
    };
    BiPoly::from_coeff_view(X_VAR, &views)
}

fn golden_s(n: i64) -> UniPoly {
    match n {
        -5 => zp(&[81, 1215, 10206, 64638, 353565, 544563, 352836]).mul_scalar(&rat::rat(1, 256)),
        -4 => zp(&[27, 270, 1620, 7938, 3969]).mul_scalar(&rat::rat(1, 64)),
        -3 => zp(&[9, 54, 225]).mul_scalar(&rat::rat(1, 16)),
        -2 => zp(&[3, 9]).mul_scalar(&rat::rat(1, 4)),
        -1 | 0 | 1 => zp(&[1]),
        2 => zp(&[1, 1]),
        3 => zp(&[1, 3, 4]),
        4 => zp(&[1, 6, 18, 30, 9]),
        5 => zp(&[1, 10, 51, 168, 355, 318, 121]),
        _ => panic!("no golden s_{}", n),
    }
}

fn golden_sbar(n: i64) -> UniPoly {
    match n {
        0 => zp(&[1]),
        1 => zp(&[3]),
        2 => zp(&[10]),
        3 => zp(&[35, 21]),
        4 => zp(&[126, 252, 198]),
        5 => zp(&[462, 1980, 3960, 4004, 858]),
        6 => zp(&[1716, 12870, 47190, 105820, 143520, 90558, 24310]),
        _ => panic!("no golden sbar_{}", n),
    }
}

fn golden_pk(k: i64) -> UniPoly {
    match k {
        -3 => yp(&[1, -3, 12, -30, 81, -63, 66]),
        -2 => yp(&[1, -2, 5]),
        -1 | 0 => yp(&[1]),
        1 => yp(&[1, 1, 2]),
        2 => yp(&[1, 2, 7, 10, 21, 12, 11]),
        3 => yp(&[1, 3, 15, 35, 105, 195, 435, 555, 840, 710, 738, 294, 170]),
        _ => panic!("no golden p_{}", k),
    }
}

fn golden_qk(k: i64) -> UniPoly {
    match k {
        -3 => yp(&[1, 0, 3, 0, 39, 0, 21]),
        -2 => yp(&[1, 0, 3]),
        -1 | 0 => yp(&[1]),
        1 => yp(&[1, 0, 3]),
        2 => yp(&[1, 0, 8, 0, 29, 0, 26]),
        3 => yp(&[1, 0, 15, 0, 112, 0, 518, 0, 1257, 0, 1547, 0, 646]),
        _ => panic!("no golden q_{}", k),
    }
}

/// A_1..A_9 as printed, expanded exactly from their factored forms. A_9 is
/// normalized so that A_9(0) equals the alternating-sign-matrix count
/// 911835460 (which also makes it consistent with the A-family formulas).
fn golden_a(n: i64) -> UniPoly {
    let f_26 = ap(&[26, 0, 29, 0, 8, 0, 1]);
    let f_143 = ap(&[143, 0, 99, 0, 13, 0, 1]);
    let f_646 = ap(&[646, 0, 1547, 0, 1257, 0, 518, 0, 112, 0, 15, 0, 1]);
    let f_8398 = ap(&[8398, 0, 14433, 0, 7665, 0, 2010, 0, 240, 0, 21, 0, 1]);
    let f_1411510 = ap(&[
        1411510, 0, 4598551, 0, 5518417, 0, 3530124, 0, 1331064, 0, 327810, 0, 53382, 0, 5820, 0,
        506, 0, 31, 0, 1,
    ]);
    match n {
        1 => ap(&[1]),
        2 => ap(&[2]),
        3 => ap(&[7, 0, 1]),
        4 => ap(&[3, 0, 1]).mul(&ap(&[7, 0, 1])).mul_scalar(&rat::int(2)),
        5 => ap(&[3, 0, 1]).mul(&f_143),
        6 => f_26.mul(&f_143).mul_scalar(&rat::int(2)),
        7 => f_26.mul(&f_8398),
        8 => f_646.mul(&f_8398).mul_scalar(&rat::int(2)),
        9 => f_646.mul(&f_1411510),
        _ => panic!("no golden A_{}", n),
    }
}

/// The corpus as one canonical JSON object, keyed by object id.
pub fn corpus_json() -> Value {
    let mut map = Map::new();
    for n in 0..=4usize {
        map.insert(format!("P{}", n), jsonio::bipoly_to_json(&golden_p(n)));
    }
    for n in -5..=5i64 {
        map.insert(format!("s[{}]", n), jsonio::unipoly_to_json(&golden_s(n)));
    }
    for n in 0..=6i64 {
        map.insert(
            format!("sbar[{}]", n),
            jsonio::unipoly_to_json(&golden_sbar(n)),
        );
    }
    for k in -3..=3i64 {
        map.insert(format!("p[{}]", k), jsonio::unipoly_to_json(&golden_pk(k)));
        map.insert(format!("q[{}]", k), jsonio::unipoly_to_json(&golden_qk(k)));
    }
    for n in 1..=9i64 {
        map.insert(format!("A[{}]", n), jsonio::unipoly_to_json(&golden_a(n)));
    }
    Value::Object(map)
}

pub fn corpus_canonical_string() -> String {
    serde_json::to_string(&corpus_json()).expect("serializable")
}

/// The corpus must hash to the frozen checksum.
pub fn verify_checksum() -> Result<()> {
    let got = fnv1a64(corpus_canonical_string().as_bytes());
    if got != CORPUS_CHECKSUM {
        return Err(Error::ValueMismatch {
            what: "corpus checksum".into(),
            lhs: format!("{:#018x}", got),
            rhs: format!("{:#018x}", CORPUS_CHECKSUM),
        });
    }
    Ok(())
}

/// Regenerate every corpus object from the recurrences, the PDE descent,
/// and the factorizations, and compare bit-exactly.
pub fn verify_golden() -> VerificationReport {
    let mut report = VerificationReport::new();
    report.run("golden/checksum", verify_checksum);

    let compare_uni = |id: &str, computed: &UniPoly, stored: &UniPoly| -> Result<()> {
        if computed == stored {
            Ok(())
        } else {
            Err(Error::ValueMismatch {
                what: id.to_string(),
                lhs: computed.to_string(),
                rhs: stored.to_string(),
            })
        }
    };

    for n in 0..=4usize {
        report.run(&format!("golden/P{}", n), || {
            let p = compute_p(n)?;
            if p.poly == golden_p(n) {
                Ok(())
            } else {
                Err(Error::ValueMismatch {
                    what: format!("P_{}", n),
                    lhs: p.poly.to_string(),
                    rhs: golden_p(n).to_string(),
                })
            }
        });
    }
    report.run("golden/s-family", || {
        let mut s = s_sequence(-5, 5)?;
        for n in -5..=5i64 {
            compare_uni(&format!("s_{}", n), &s.s(n)?, &golden_s(n))?;
        }
        Ok(())
    });
    report.run("golden/sbar-family", || {
        let sb = sbar_sequence(6)?;
        for n in 0..=6i64 {
            compare_uni(&format!("sbar_{}", n), &sb[n as usize], &golden_sbar(n))?;
        }
        Ok(())
    });
    report.run("golden/pq-families", || {
        let mut pq = PQFamily::new();
        for k in -3..=3i64 {
            compare_uni(&format!("p_{}", k), &pq.p(k)?, &golden_pk(k))?;
            compare_uni(&format!("q_{}", k), &pq.q(k)?, &golden_qk(k))?;
        }
        Ok(())
    });
    report.run("golden/A-family", || {
        let mut pq = PQFamily::new();
        for n in 1..=9i64 {
            compare_uni(
                &format!("A_{}", n),
                &alternating_component(&mut pq, n)?,
                &golden_a(n),
            )?;
        }
        Ok(())
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_checksummed() {
        verify_checksum().unwrap();
    }

    #[test]
    fn regeneration_is_bit_exact() {
        let report = verify_golden();
        assert!(report.all_passed(), "\n{}", report.render_text());
    }

    #[test]
    fn corpus_round_trips_through_interchange() {
        let s = corpus_canonical_string();
        let v: Value = serde_json::from_str(&s).unwrap();
        for (id, obj) in v.as_object().unwrap() {
            if id.starts_with('P') {
                let p = jsonio::bipoly_from_json(obj).unwrap();
                assert_eq!(jsonio::bipoly_to_json(&p), *obj, "{}", id);
            } else {
                let p = jsonio::unipoly_from_json(obj).unwrap();
                assert_eq!(jsonio::unipoly_to_json(&p), *obj, "{}", id);
            }
        }
    }
}
