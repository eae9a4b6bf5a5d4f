//! JSON wire format. Rationals travel as "p/q" strings (denominator omitted
//! when 1) so that values survive a round-trip bit-exactly; floating-point
//! data from the numeric verifiers lives under separate keys and never mixes
//! with the exact entries.

use crate::exact::{rat_from_str, rat_to_string, Polynomial, Rational, RationalFunction};
use crate::patching::{Bound, PatchingMatrix, RodInterval, Signature};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("json parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational literal `{0}` at {1}")]
    BadRational(String, &'static str),
    #[error("bad signature `{0}` (expected \"riemannian\" or \"lorentzian\")")]
    BadSignature(String),
    #[error("bad rod bound `{0}` (expected \"p/q\", \"-inf\" or \"+inf\")")]
    BadBound(String),
    #[error("zero denominator in entry {0}")]
    ZeroDenominator(&'static str),
}

#[derive(Serialize, Deserialize)]
pub struct RationalFunctionJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct EntriesJson {
    pub p11: RationalFunctionJson,
    pub p12: RationalFunctionJson,
    pub p22: RationalFunctionJson,
}

#[derive(Serialize, Deserialize)]
pub struct RodJson {
    pub lower: String,
    pub upper: String,
}

#[derive(Serialize, Deserialize)]
pub struct PatchingMatrixJson {
    pub signature: String,
    pub nodes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rod: Option<RodJson>,
    pub entries: EntriesJson,
}

fn poly_to_json(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(rat_to_string).collect()
}

fn poly_from_json(coeffs: &[String], ctx: &'static str) -> Result<Polynomial, SchemaError> {
    let cs: Result<Vec<Rational>, _> = coeffs
        .iter()
        .map(|s| rat_from_str(s).map_err(|_| SchemaError::BadRational(s.clone(), ctx)))
        .collect();
    Ok(Polynomial::new(cs?))
}

pub fn ratfun_to_json(f: &RationalFunction) -> RationalFunctionJson {
    RationalFunctionJson { num: poly_to_json(f.num()), den: poly_to_json(f.den()) }
}

pub fn ratfun_from_json(
    j: &RationalFunctionJson,
    ctx: &'static str,
) -> Result<RationalFunction, SchemaError> {
    let num = poly_from_json(&j.num, ctx)?;
    let den = poly_from_json(&j.den, ctx)?;
    RationalFunction::new(num, den).map_err(|_| SchemaError::ZeroDenominator(ctx))
}

fn bound_to_string(b: &Bound) -> String {
    match b {
        Bound::NegInf => "-inf".to_string(),
        Bound::PosInf => "+inf".to_string(),
        Bound::Finite(x) => rat_to_string(x),
    }
}

fn bound_from_string(s: &str) -> Result<Bound, SchemaError> {
    match s {
        "-inf" => Ok(Bound::NegInf),
        "+inf" | "inf" => Ok(Bound::PosInf),
        other => rat_from_str(other)
            .map(Bound::Finite)
            .map_err(|_| SchemaError::BadBound(other.to_string())),
    }
}

pub fn matrix_to_json(p: &PatchingMatrix) -> PatchingMatrixJson {
    PatchingMatrixJson {
        signature: p.signature.as_str().to_string(),
        nodes: p.nodes.iter().map(rat_to_string).collect(),
        rod: p.rod.as_ref().map(|r| RodJson {
            lower: bound_to_string(&r.lower),
            upper: bound_to_string(&r.upper),
        }),
        entries: EntriesJson {
            p11: ratfun_to_json(&p.p11),
            p12: ratfun_to_json(&p.p12),
            p22: ratfun_to_json(&p.p22),
        },
    }
}

pub fn matrix_from_json(j: &PatchingMatrixJson) -> Result<PatchingMatrix, SchemaError> {
    let signature = match j.signature.as_str() {
        "riemannian" => Signature::Riemannian,
        "lorentzian" => Signature::Lorentzian,
        other => return Err(SchemaError::BadSignature(other.to_string())),
    };
    let nodes: Result<Vec<Rational>, _> = j
        .nodes
        .iter()
        .map(|s| rat_from_str(s).map_err(|_| SchemaError::BadRational(s.clone(), "nodes")))
        .collect();
    let rod = match &j.rod {
        None => None,
        Some(r) => Some(RodInterval {
            lower: bound_from_string(&r.lower)?,
            upper: bound_from_string(&r.upper)?,
        }),
    };
    Ok(PatchingMatrix::new(
        ratfun_from_json(&j.entries.p11, "p11")?,
        ratfun_from_json(&j.entries.p12, "p12")?,
        ratfun_from_json(&j.entries.p22, "p22")?,
        signature,
        nodes?,
        rod,
    ))
}

pub fn matrix_to_string(p: &PatchingMatrix) -> String {
    serde_json::to_string_pretty(&matrix_to_json(p)).expect("serializable")
}

pub fn matrix_from_str(s: &str) -> Result<PatchingMatrix, SchemaError> {
    let j: PatchingMatrixJson = serde_json::from_str(s)?;
    matrix_from_json(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_i;
    use crate::patching::RodInterval;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        let p = |cs: &[i64]| Polynomial::new(cs.iter().map(|&c| rat_i(c)).collect());
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let p = PatchingMatrix::new(
            rf(&[-7, 6, 1], &[-25, 0, 1]),
            rf(&[-24], &[-25, 0, 1]),
            rf(&[7, 6, -1], &[-25, 0, 1]),
            Signature::Riemannian,
            vec![rat_i(-5), rat_i(5)],
            Some(RodInterval::top(rat_i(5))),
        );
        let s1 = matrix_to_string(&p);
        let q = matrix_from_str(&s1).unwrap();
        assert!(p.same_entries(&q));
        assert_eq!(p.nodes, q.nodes);
        assert_eq!(p.rod, q.rod);
        assert_eq!(s1, matrix_to_string(&q));
    }

    #[test]
    fn infinite_bounds_round_trip() {
        let p = PatchingMatrix::diagonal(
            rf(&[1], &[0, 2]),
            rf(&[0, -2], &[1]),
            Signature::Riemannian,
            vec![rat_i(0)],
            Some(RodInterval::bottom(rat_i(0))),
        );
        let q = matrix_from_str(&matrix_to_string(&p)).unwrap();
        assert_eq!(q.rod.as_ref().unwrap().lower, Bound::NegInf);
    }

    #[test]
    fn rejects_bad_signature() {
        let s = r#"{"signature":"euclidean","nodes":[],"entries":{
            "p11":{"num":["1"],"den":["1"]},
            "p12":{"num":[],"den":["1"]},
            "p22":{"num":["1"],"den":["1"]}}}"#;
        assert!(matches!(matrix_from_str(s), Err(SchemaError::BadSignature(_))));
    }

    #[test]
    fn rejects_bad_rational() {
        let s = r#"{"signature":"riemannian","nodes":["x"],"entries":{
            "p11":{"num":["1"],"den":["1"]},
            "p12":{"num":[],"den":["1"]},
            "p22":{"num":["1"],"den":["1"]}}}"#;
        assert!(matches!(matrix_from_str(s), Err(SchemaError::BadRational(..))));
    }

    #[test]
    fn fractional_coefficients_round_trip() {
        let p = PatchingMatrix::diagonal(
            RationalFunction::constant(crate::exact::rat(3, 7)),
            RationalFunction::constant(crate::exact::rat(-7, 3)),
            Signature::Lorentzian,
            vec![],
            None,
        );
        let q = matrix_from_str(&matrix_to_string(&p)).unwrap();
        assert!(p.same_entries(&q));
    }
}
