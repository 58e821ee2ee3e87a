//! JSON encodings of curves, ideals, local models and reports.
//!
//! Rationals are strings ("3/4"); an element a + b*omega of an imaginary
//! quadratic field is the pair [a, b]. Polynomials list the constant term first.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::globalmodel::ModelReport;
use crate::localmin::{LocalChange, LocalModelData};
use crate::quadfield::{primes_above, ClassGroup, FieldSpec, Form, FractionalIdeal, KElement, PrimeIdeal};
use crate::rat::{self, Rat};
use crate::weier::{EqTransform, WeierstrassEq};

pub const SCHEMA_VERSION: u64 = 1;

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Insert "schema_version" as the first key of a top-level document.
pub fn with_schema(v: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    if let Value::Object(m) = v {
        for (k, x) in m {
            if k != "schema_version" {
                out.insert(k, x);
            }
        }
    }
    Value::Object(out)
}

/// Compact JSON with a trailing newline.
pub fn to_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn check_schema(v: &Value) -> Result<()> {
    match v.get("schema_version") {
        None => Ok(()),
        Some(x) if x.as_u64() == Some(SCHEMA_VERSION) => Ok(()),
        Some(x) => Err(bad(format!("unsupported schema_version {x}"))),
    }
}

pub fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| bad(format!("expected an integer, got {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| bad(format!("expected an integer, got {s:?}"))),
        _ => Err(bad(format!("expected an integer, got {v}"))),
    }
}

fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => rat::parse(s),
        Value::Number(_) => Ok(Rat::from_integer(int_from_json(v)?)),
        _ => Err(bad(format!("expected a rational string, got {v}"))),
    }
}

pub fn field_to_json(f: FieldSpec) -> Value {
    match f {
        FieldSpec::Rational => json!({"type": "Q"}),
        FieldSpec::ImQuad { d } => json!({"type": "imquad", "d": d}),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    match v.get("type").and_then(Value::as_str) {
        Some("Q") => Ok(FieldSpec::Rational),
        Some("imquad") => {
            let d = v.get("d").and_then(Value::as_i64).ok_or_else(|| bad("imquad field needs an integer d"))?;
            FieldSpec::imquad(d)
        }
        _ => Err(bad(format!("unknown field {v}"))),
    }
}

/// Parse the --field flag: "Q" or "imquad:-23".
pub fn field_from_flag(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rational);
    }
    let d = s
        .strip_prefix("imquad:")
        .or_else(|| s.strip_prefix("d="))
        .unwrap_or(s)
        .parse::<i64>()
        .map_err(|_| bad(format!("invalid field {s:?}")))?;
    FieldSpec::imquad(d)
}

pub fn elem_to_json(x: &KElement, field: FieldSpec) -> Value {
    if field.is_rational() {
        json!(rat::to_string(x.a()))
    } else {
        json!([rat::to_string(x.a()), rat::to_string(x.b())])
    }
}

pub fn elem_from_json(field: FieldSpec, v: &Value) -> Result<KElement> {
    match v {
        Value::Array(pair) => {
            if pair.len() != 2 {
                return Err(bad("field elements are pairs [a, b]"));
            }
            if field.is_rational() {
                return Err(bad("pair coefficient over Q"));
            }
            Ok(KElement::new(field, rat_from_json(&pair[0])?, rat_from_json(&pair[1])?))
        }
        _ => Ok(KElement::from_rat(field, rat_from_json(v)?)),
    }
}

pub fn poly_to_json(p: &Poly, field: FieldSpec) -> Value {
    Value::Array(p.coeffs().iter().map(|c| elem_to_json(c, field)).collect())
}

pub fn poly_from_json(field: FieldSpec, v: &Value) -> Result<Poly> {
    let arr = v.as_array().ok_or_else(|| bad("polynomials are arrays"))?;
    let coeffs: Result<Vec<KElement>> = arr.iter().map(|c| elem_from_json(field, c)).collect();
    Ok(Poly::new(field, coeffs?))
}

pub fn ideal_to_json(i: &FractionalIdeal) -> Value {
    let (a, b, c) = i.hnf();
    json!({"den": int_to_json(i.den()), "hnf": [int_to_json(a), int_to_json(b), int_to_json(c)]})
}

pub fn ideal_from_json(field: FieldSpec, v: &Value) -> Result<FractionalIdeal> {
    let den = int_from_json(v.get("den").ok_or_else(|| bad("ideal needs den"))?)?;
    let hnf = v.get("hnf").and_then(Value::as_array).ok_or_else(|| bad("ideal needs hnf"))?;
    if hnf.len() != 3 {
        return Err(bad("hnf has three entries"));
    }
    FractionalIdeal::from_hnf(field, den, int_from_json(&hnf[0])?, int_from_json(&hnf[1])?, int_from_json(&hnf[2])?)
}

pub fn prime_to_json(p: &PrimeIdeal) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), int_to_json(p.p()));
    if let Some(s) = p.omega_residue() {
        m.insert("s".into(), int_to_json(s));
    }
    m.insert("norm".into(), int_to_json(&p.norm()));
    m.insert("name".into(), json!(p.to_string()));
    Value::Object(m)
}

pub fn prime_from_json(field: FieldSpec, v: &Value) -> Result<PrimeIdeal> {
    let p = int_from_json(v.get("p").ok_or_else(|| bad("prime needs p"))?)?;
    let s = v.get("s").map(int_from_json).transpose()?;
    let above = primes_above(field, &p);
    above
        .into_iter()
        .find(|q| q.omega_residue().cloned() == s || (s.is_none() && q.omega_residue().is_none()))
        .ok_or_else(|| bad(format!("no prime matches {v}")))
}

pub fn form_to_json(f: &Form) -> Value {
    json!([int_to_json(&f.a), int_to_json(&f.b), int_to_json(&f.c)])
}

pub fn local_change_to_json(prime: &PrimeIdeal, c: &LocalChange, field: FieldSpec) -> Value {
    json!({
        "prime": prime_to_json(prime),
        "a": elem_to_json(&c.a, field),
        "r": elem_to_json(&c.r, field),
        "b": elem_to_json(&c.b, field),
        "h": poly_to_json(&c.h, field),
    })
}

pub fn local_change_from_json(field: FieldSpec, v: &Value) -> Result<(PrimeIdeal, LocalChange)> {
    let get = |k: &str| v.get(k).ok_or_else(|| bad(format!("local model needs {k}")));
    let prime = prime_from_json(field, get("prime")?)?;
    let change = LocalChange {
        a: elem_from_json(field, get("a")?)?,
        r: elem_from_json(field, get("r")?)?,
        b: elem_from_json(field, get("b")?)?,
        h: poly_from_json(field, get("h")?)?,
    };
    if change.a.is_zero() || change.b.is_zero() {
        return Err(bad("local model scalings must be nonzero"));
    }
    Ok((prime, change))
}

/// A curve file: the equation and optional local models to glue.
#[derive(Debug, Clone)]
pub struct CurveInput {
    pub equation: WeierstrassEq,
    pub local_models: Vec<(PrimeIdeal, LocalChange)>,
}

pub fn curve_to_json(eq: &WeierstrassEq) -> Value {
    let f = eq.field();
    json!({
        "field": field_to_json(f),
        "genus": eq.genus(),
        "P": poly_to_json(eq.p(), f),
        "Q": poly_to_json(eq.q(), f),
        "pointed": eq.is_pointed(),
    })
}

pub fn curve_input_to_json(c: &CurveInput) -> Value {
    let mut v = curve_to_json(&c.equation);
    if !c.local_models.is_empty() {
        let f = c.equation.field();
        let lm: Vec<Value> = c.local_models.iter().map(|(p, ch)| local_change_to_json(p, ch, f)).collect();
        v["local_models"] = Value::Array(lm);
    }
    v
}

pub fn curve_from_json(v: &Value) -> Result<CurveInput> {
    check_schema(v)?;
    let field = field_from_json(v.get("field").ok_or_else(|| bad("curve needs field"))?)?;
    let genus = v
        .get("genus")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("curve needs a positive integer genus"))? as usize;
    let p = poly_from_json(field, v.get("P").ok_or_else(|| bad("curve needs P"))?)?;
    let q = match v.get("Q") {
        Some(q) => poly_from_json(field, q)?,
        None => Poly::zero(field),
    };
    let pointed = match v.get("pointed") {
        None => false,
        Some(b) => b.as_bool().ok_or_else(|| bad("pointed is a boolean"))?,
    };
    let eq = WeierstrassEq::new(field, genus, p, q)?.with_pointed(pointed)?;
    let mut local_models = Vec::new();
    if let Some(lm) = v.get("local_models") {
        for x in lm.as_array().ok_or_else(|| bad("local_models is an array"))? {
            local_models.push(local_change_from_json(field, x)?);
        }
    }
    Ok(CurveInput { equation: eq, local_models })
}

pub fn parse_curve(s: &str) -> Result<CurveInput> {
    let v: Value = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
    curve_from_json(&v)
}

pub fn transform_to_json(t: &EqTransform, field: FieldSpec) -> Value {
    let m = t.matrix();
    json!({
        "matrix": [[elem_to_json(&m.a, field), elem_to_json(&m.b, field)],
                   [elem_to_json(&m.c, field), elem_to_json(&m.d, field)]],
        "e": elem_to_json(t.e(), field),
        "H": poly_to_json(t.h(), field),
    })
}

pub fn local_model_to_json(lm: &LocalModelData) -> Value {
    let f = lm.equation.field();
    json!({
        "prime": prime_to_json(&lm.prime),
        "v_delta": lm.v_delta,
        "va": lm.va,
        "vb": lm.vb,
        "change": local_change_to_json(&lm.prime, &lm.change, f)
            .as_object()
            .map(|m| {
                let mut m = m.clone();
                m.remove("prime");
                Value::Object(m)
            })
            .unwrap(),
        "transform": transform_to_json(&lm.transform(), f),
        "equation": curve_to_json(&lm.equation),
    })
}

pub fn class_group_to_json(cg: &ClassGroup) -> Value {
    let f = cg.field();
    json!({
        "h": cg.order(),
        "structure": cg.structure(),
        "discriminant": f.discriminant(),
        "field": field_to_json(f),
        "forms": cg.forms().iter().map(form_to_json).collect::<Vec<_>>(),
    })
}

pub fn report_to_json(r: &ModelReport) -> Value {
    let f = r.field();
    let v = &r.verdicts;
    json!({
        "curve": curve_to_json(&r.input),
        "genus": r.genus(),
        "pointed": r.pointed,
        "class_number": r.class_number,
        "class_structure": r.class_structure,
        "bad_primes": r.local.iter().map(local_model_to_json).collect::<Vec<_>>(),
        "r": elem_to_json(&r.r, f),
        "h": poly_to_json(&r.h, f),
        "ideal_a": ideal_to_json(&r.ideal_a),
        "ideal_b": ideal_to_json(&r.ideal_b),
        "delta": ideal_to_json(&r.delta),
        "ideal_u": r.ideal_u.as_ref().map(ideal_to_json),
        "class_a": form_to_json(&r.class_a),
        "class_b": form_to_json(&r.class_b),
        "class_w": form_to_json(&r.class_w),
        "class_det_omega": form_to_json(&r.class_det_omega),
        "class_delta": form_to_json(&r.class_delta),
        "class_u": r.class_u.as_ref().map(form_to_json),
        "verdicts": {
            "z_is_p1": v.z_is_p1,
            "delta_principal": v.delta_principal,
            "det_omega_free": v.det_omega_free,
            "w_trivial": v.w_trivial,
            "criterion_1": v.criterion_1,
            "criterion_2": v.criterion_2,
            "criterion_3": v.criterion_3,
            "criterion_4": v.criterion_4,
            "unit_discriminant": v.unit_discriminant,
            "exists_integral_eq": v.exists_integral_eq,
            "exists_pointed_eq": v.exists_pointed_eq,
        },
        "synthesized": r.synthesized.as_ref().map(curve_to_json),
        "synthesis_error": r.synthesis_error.as_ref().map(|e| e.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_round_trip_is_byte_identical() {
        let f = FieldSpec::imquad(-23).unwrap();
        let e = WeierstrassEq::new(
            f,
            1,
            Poly::new(f, vec![KElement::new(f, rat::parse("1/2").unwrap(), rat::int(3)), KElement::from_int(f, 0), KElement::from_int(f, 1)]),
            Poly::from_ints(f, &[0, 1]),
        )
        .unwrap();
        let s = to_line(&with_schema(curve_to_json(&e)));
        let back = parse_curve(&s).unwrap();
        assert_eq!(back.equation, e);
        assert_eq!(to_line(&with_schema(curve_to_json(&back.equation))), s);
    }

    #[test]
    fn schema_and_fields() {
        assert_eq!(field_from_flag("Q").unwrap(), FieldSpec::Rational);
        assert_eq!(field_from_flag("imquad:-5").unwrap(), FieldSpec::imquad(-5).unwrap());
        assert!(field_from_flag("imquad:-4").is_err());
        assert!(parse_curve(r#"{"schema_version":9,"field":{"type":"Q"},"genus":1,"P":["1"]}"#).is_err());
        assert!(parse_curve(r#"{"field":{"type":"Q"},"genus":1,"P":["1/0"]}"#).is_err());
        let c = parse_curve(r#"{"field":{"type":"Q"},"genus":1,"P":[0,0,0,1],"Q":["1"]}"#).unwrap();
        assert_eq!(c.equation.discriminant().unwrap(), KElement::from_int(FieldSpec::Rational, -27));
    }

    #[test]
    fn ideals_and_primes_round_trip() {
        let f = FieldSpec::imquad(-5).unwrap();
        for p in primes_above(f, &BigInt::from(2)).into_iter().chain(primes_above(f, &BigInt::from(3))) {
            assert_eq!(prime_from_json(f, &prime_to_json(&p)).unwrap(), p);
            let i = p.ideal().pow(-2);
            assert_eq!(ideal_from_json(f, &ideal_to_json(&i)).unwrap(), i);
        }
    }
}
