//! JSON serialization of the symbolic values and verification reports.
//!
//! Variables serialize as strings `up_i_a` / `um_i_k` / `z_k_a` / `zb_k_a`;
//! a scalar serializes as a list of graded components
//! `[re_num, re_den, im_num, im_den, pi_pow]`, with a sixth entry `1`
//! appended only when the component carries a `√2` factor. Key order is
//! deterministic throughout.

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::exterior::Cochain;
use crate::fock::WeightVector;
use crate::poly::Poly;
use crate::scalar::Scalar;

fn big_to_value(n: &num_bigint::BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    let mut comps = Vec::new();
    for (pi, sqrt2, q) in s.components() {
        let mut entry = vec![
            big_to_value(q.re.numer()),
            big_to_value(q.re.denom()),
            big_to_value(q.im.numer()),
            big_to_value(q.im.denom()),
            json!(pi),
        ];
        if sqrt2 {
            entry.push(json!(1));
        }
        comps.push(Value::Array(entry));
    }
    Value::Array(comps)
}

pub fn poly_to_json(p: &Poly) -> Value {
    let mut terms = Vec::new();
    for (mono, coeff) in p.terms() {
        let mut mv = Map::new();
        for (v, e) in mono.vars() {
            mv.insert(v.name(), json!(e));
        }
        terms.push(json!({
            "monomial": Value::Object(mv),
            "coeff": scalar_to_json(coeff),
        }));
    }
    Value::Array(terms)
}

pub fn cochain_to_json(c: &Cochain) -> Value {
    let mut terms = Vec::new();
    for (key, p) in c.terms() {
        let idx: Vec<String> = key
            .iter()
            .map(|e| {
                format!(
                    "{}_{}_{}",
                    if e.double_prime { "xi2" } else { "xi1" },
                    e.a,
                    e.b
                )
            })
            .collect();
        terms.push(json!({
            "indices": idx,
            "value": poly_to_json(p),
        }));
    }
    Value::Array(terms)
}

/// GaussPoly mirrors the polynomial serialization with `z_k_a` / `zb_k_a`
/// tags plus a fixed Gaussian marker and the scale.
pub fn gausspoly_to_json(g: &crate::schrodinger::GaussPoly) -> Value {
    json!({
        "gaussian": true,
        "scale": [big_to_value(g.scale.numer()), big_to_value(g.scale.denom())],
        "poly": poly_to_json(&g.poly),
    })
}

/// Weight tuples serialize as `[numerator, 2]` half-integer pairs.
pub fn weight_to_json(w: &WeightVector) -> Value {
    let entries: Vec<Value> =
        w.0.iter()
            .map(|q| {
                let two = num_bigint::BigInt::from(2);
                let halves = q.numer() * &two / q.denom();
                json!([big_to_value(&halves), 2])
            })
            .collect();
    Value::Array(entries)
}

#[derive(Serialize, Debug, Clone)]
pub struct CheckReport {
    pub check: String,
    pub case: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckReport {
    pub fn pass(check: &str, case: &str) -> Self {
        CheckReport {
            check: check.into(),
            case: case.into(),
            status: "pass".into(),
            witness: None,
            detail: None,
            elapsed_ms: None,
        }
    }

    pub fn fail(check: &str, case: &str, witness: String) -> Self {
        CheckReport {
            check: check.into(),
            case: case.into(),
            status: "fail".into(),
            witness: Some(witness),
            detail: None,
            elapsed_ms: None,
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Stable anchor names for the checks, listed in summaries for
/// traceability.
pub fn check_anchor(check: &str) -> &'static str {
    match check {
        "build" => "cocycle construction via highest-weight closure",
        "closed" => "closedness theorem for the holomorphic cocycles",
        "invariance" => "compact-group invariance of the cocycles",
        "annihilation" => "nilpotent and p-minus annihilation of the harmonics",
        "restriction" => "single-term fiber restriction lemma",
        "weights" => "highest/lowest weight tables",
        "intertwine" => "Fock-to-Schrodinger intertwiner lemma",
        "hessian" => "majorant Hessian determinant law",
        "fiber" => "fiber-integral leading asymptotics",
        "majorant" => "exponential decay estimate of the majorant",
        _ => "unlisted check",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarId;

    #[test]
    fn poly_json_shape() {
        let p = Poly::var(VarId::UMinus(1, 1)).scale(&(Scalar::from_int(-2) * Scalar::pi_pow(1)));
        let v = poly_to_json(&p);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[{"coeff":[[-2,1,0,1,1]],"monomial":{"um_1_1":1}}]"#);
    }

    #[test]
    fn gausspoly_json_has_marker() {
        let g = crate::schrodinger::GaussPoly::new(Poly::var(VarId::Z(1, 1)));
        let v = gausspoly_to_json(&g);
        assert_eq!(v["gaussian"], serde_json::json!(true));
        assert_eq!(
            serde_json::to_string(&v["poly"]).unwrap(),
            r#"[{"coeff":[[1,1,0,1,0]],"monomial":{"z_1_1":1}}]"#
        );
    }

    #[test]
    fn weight_json_half_integers() {
        let w = WeightVector::from_halves(vec![3, -1]);
        let v = weight_to_json(&w);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[[3,2],[-1,2]]");
    }
}
