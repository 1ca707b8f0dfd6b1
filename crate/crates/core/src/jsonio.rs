//! Polynomial JSON interchange.
//!
//! Univariate: `{"var":"z","coeffs":["1","3","4"]}`; bivariate:
//! `{"vars":["x","z"],"terms":[[[k,m],"c"],...]}`. Coefficients are decimal
//! strings, `"p/q"` for non-integers. Terms are emitted in sorted exponent
//! order and parsing is strict, so round trips are bit-exact.

use serde_json::{json, Value};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::rat;
use crate::unipoly::UniPoly;

fn bad(detail: impl Into<String>) -> Error {
    Error::ConfigError {
        detail: detail.into(),
    }
}

pub fn unipoly_to_json(p: &UniPoly) -> Value {
    json!({
        "var": p.var(),
        "coeffs": p.coeffs().iter().map(rat::format_rat).collect::<Vec<_>>(),
    })
}

pub fn unipoly_from_json(v: &Value) -> Result<UniPoly> {
    let obj = v.as_object().ok_or_else(|| bad("expected object"))?;
    let var = obj
        .get("var")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing \"var\""))?;
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"coeffs\""))?;
    let parsed = coeffs
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| bad("coefficient must be a string"))
                .and_then(|s| rat::parse_rat(s).map_err(bad))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(var, parsed))
}

pub fn bipoly_to_json(p: &BiPoly) -> Value {
    let (v1, v2) = p.vars();
    json!({
        "vars": [v1, v2],
        "terms": p
            .terms()
            .map(|((e1, e2), c)| json!([[e1, e2], rat::format_rat(c)]))
            .collect::<Vec<_>>(),
    })
}

pub fn bipoly_from_json(v: &Value) -> Result<BiPoly> {
    let obj = v.as_object().ok_or_else(|| bad("expected object"))?;
    let vars = obj
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"vars\""))?;
    if vars.len() != 2 {
        return Err(bad("\"vars\" must have two entries"));
    }
    let v1 = vars[0]
        .as_str()
        .ok_or_else(|| bad("var must be a string"))?;
    let v2 = vars[1]
        .as_str()
        .ok_or_else(|| bad("var must be a string"))?;
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"terms\""))?;
    let mut out = BiPoly::zero(v1, v2);
    for t in terms {
        let pair = t
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| bad("term must be [[e1,e2],\"coeff\"]"))?;
        let exps = pair[0]
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| bad("exponents must be a pair"))?;
        let e1 = exps[0]
            .as_u64()
            .ok_or_else(|| bad("exponent must be a nonnegative integer"))? as u32;
        let e2 = exps[1]
            .as_u64()
            .ok_or_else(|| bad("exponent must be a nonnegative integer"))? as u32;
        let c = pair[1]
            .as_str()
            .ok_or_else(|| bad("coefficient must be a string"))
            .and_then(|s| rat::parse_rat(s).map_err(bad))?;
        let term = BiPoly::monomial(v1, v2, e1, e2, c);
        out = out.add(&term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn unipoly_round_trip_is_bit_exact() {
        let p = UniPoly::new("z", vec![rat(1, 1), rat(3, 1), rat(-4, 7)]);
        let s = serde_json::to_string(&unipoly_to_json(&p)).unwrap();
        let back = unipoly_from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, p);
        let s2 = serde_json::to_string(&unipoly_to_json(&back)).unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn bipoly_round_trip_is_bit_exact() {
        let p = BiPoly::from_terms("x", "z", &[(0, 0, 35), (3, 2, 4), (1, 1, -19)]);
        let s = serde_json::to_string(&bipoly_to_json(&p)).unwrap();
        let back = bipoly_from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, p);
        let s2 = serde_json::to_string(&bipoly_to_json(&back)).unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn randomized_round_trips() {
        let mut state = 2024u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let d = (next() % 7) as usize;
            let p = UniPoly::new(
                "y",
                (0..=d)
                    .map(|_| rat((next() % 4001) as i64 - 2000, 1 + (next() % 97) as i64))
                    .collect(),
            );
            let v = unipoly_to_json(&p);
            assert_eq!(unipoly_from_json(&v).unwrap(), p);

            let mut b = BiPoly::zero("x", "z");
            for _ in 0..(next() % 6) {
                b = b.add(&BiPoly::monomial(
                    "x",
                    "z",
                    (next() % 5) as u32,
                    (next() % 5) as u32,
                    rat((next() % 4001) as i64 - 2000, 1 + (next() % 97) as i64),
                ));
            }
            let v = bipoly_to_json(&b);
            assert_eq!(bipoly_from_json(&v).unwrap(), b);
        }
    }

    #[test]
    fn strict_parsing_rejects_malformed() {
        for s in [
            r#"{"coeffs":["1"]}"#,
            r#"{"var":"z","coeffs":[1]}"#,
            r#"{"var":"z","coeffs":["1/0"]}"#,
            r#"{"vars":["x"],"terms":[]}"#,
        ] {
            let v: Value = serde_json::from_str(s).unwrap();
            assert!(
                unipoly_from_json(&v).is_err() && bipoly_from_json(&v).is_err(),
                "accepted malformed {}",
                s
            );
        }
    }
}
