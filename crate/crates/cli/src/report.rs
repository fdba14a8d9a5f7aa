//! Text and JSON rendering.

use std::fmt::Write;

use heckedim::kernel::{DimResult, PiecewiseDim, RegionPiece};
use heckedim::rational::{fmt_q, Q};
use heckedim::selftest::Criterion;
use heckedim::spectral::Check;
use heckedim::Params;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub fn digest(input: &str) -> String {
    let bytes = Sha256::digest(input.as_bytes());
    bytes.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// An integer as a JSON number when it fits in `i64`, else as a decimal string.
fn int_json(x: &num_bigint::BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

#[derive(Serialize)]
struct RatJson {
    num: Value,
    den: Value,
}

fn rat(x: &Q) -> RatJson {
    RatJson { num: int_json(x.numer()), den: int_json(x.denom()) }
}

#[derive(Serialize)]
struct ParamsJson {
    q_s: String,
    q_t: String,
}

fn params(p: &Params) -> ParamsJson {
    ParamsJson { q_s: fmt_q(&p.q_s), q_t: fmt_q(&p.q_t) }
}

#[derive(Serialize)]
struct DimJson {
    a: usize,
    b: usize,
    c: usize,
    dim: RatJson,
    cert: [i64; 3],
    region: String,
}

#[derive(Serialize)]
struct SampleJson {
    params: ParamsJson,
    dim: RatJson,
}

#[derive(Serialize)]
struct RegionJson {
    region: String,
    open: bool,
    a: usize,
    b: usize,
    c: usize,
    cert: [i64; 3],
    samples: Vec<SampleJson>,
}

#[derive(Serialize)]
struct CheckJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<u8>,
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    mode: &'static str,
    input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<ParamsJson>,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Body {
    Result(DimJson),
    Regions(Vec<RegionJson>),
    Checks(Vec<CheckJson>),
}

pub enum Report {
    Dim { digest: String, params: Params, result: Box<DimResult> },
    Piecewise { digest: String, pw: Box<PiecewiseDim> },
    Verify { digest: String, checks: Vec<Check> },
    Selftest { digest: String, results: Vec<Criterion> },
}

fn region_json(pc: &RegionPiece) -> RegionJson {
    RegionJson {
        region: pc.region.to_string(),
        open: pc.region.is_open(),
        a: pc.counts.a,
        b: pc.counts.b,
        c: pc.counts.c,
        cert: pc.cert.as_array(),
        samples: pc
            .samples
            .iter()
            .map(|p| SampleJson { params: params(p), dim: rat(&pc.cert.eval(p)) })
            .collect(),
    }
}

fn cert_formula(cert: &heckedim::Cert) -> String {
    format!("{} + {}/(1+q_s) + {}/(1+q_t)", cert.alpha, cert.beta, cert.gamma)
}

impl Report {
    pub fn dim(digest: String, p: &Params, r: &DimResult) -> Self {
        Report::Dim { digest, params: p.clone(), result: Box::new(r.clone()) }
    }

    pub fn piecewise(digest: String, pw: &PiecewiseDim) -> Self {
        Report::Piecewise { digest, pw: Box::new(pw.clone()) }
    }

    pub fn verify(digest: String, checks: &[Check]) -> Self {
        Report::Verify { digest, checks: checks.to_vec() }
    }

    pub fn selftest(digest: String, results: &[Criterion]) -> Self {
        Report::Selftest { digest, results: results.to_vec() }
    }

    pub fn to_json(&self) -> String {
        let env = match self {
            Report::Dim { digest, params: p, result: r } => Envelope {
                mode: "dim",
                input_digest: digest.clone(),
                params: Some(params(p)),
                body: Body::Result(DimJson {
                    a: r.counts.a,
                    b: r.counts.b,
                    c: r.counts.c,
                    dim: rat(&r.dim),
                    cert: r.cert.as_array(),
                    region: r.region.to_string(),
                }),
            },
            Report::Piecewise { digest, pw } => Envelope {
                mode: "piecewise",
                input_digest: digest.clone(),
                params: None,
                body: Body::Regions(pw.open.iter().chain(&pw.boundary).map(region_json).collect()),
            },
            Report::Verify { digest, checks } => Envelope {
                mode: "verify",
                input_digest: digest.clone(),
                params: None,
                body: Body::Checks(
                    checks
                        .iter()
                        .map(|c| CheckJson { id: None, name: c.name.clone(), passed: c.passed, detail: c.detail.clone() })
                        .collect(),
                ),
            },
            Report::Selftest { digest, results } => Envelope {
                mode: "selftest",
                input_digest: digest.clone(),
                params: None,
                body: Body::Checks(
                    results
                        .iter()
                        .map(|c| CheckJson { id: Some(c.id), name: c.name.to_string(), passed: c.passed, detail: c.detail.clone() })
                        .collect(),
                ),
            },
        };
        let mut s = serde_json::to_string_pretty(&env).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Dim { params: p, result: r, .. } => {
                let _ = writeln!(out, "params: q_s = {}, q_t = {} ({})", fmt_q(&p.q_s), fmt_q(&p.q_t), r.region);
                let _ = writeln!(out, "counts: a = {}, b = {}, c = {}", r.counts.a, r.counts.b, r.counts.c);
                let _ = writeln!(out, "dim: {}", fmt_q(&r.dim));
                let _ = writeln!(out, "certificate: {} = {}", r.cert, cert_formula(&r.cert));
            }
            Report::Piecewise { pw, .. } => {
                for pc in pw.open.iter().chain(&pw.boundary) {
                    let _ = writeln!(out, "{}", pc.region);
                    let _ = writeln!(out, "  counts: a = {}, b = {}, c = {}", pc.counts.a, pc.counts.b, pc.counts.c);
                    let _ = writeln!(out, "  dim = {}  {}", cert_formula(&pc.cert), pc.cert);
                    for p in &pc.samples {
                        let _ = writeln!(out, "  at ({}, {}): {}", fmt_q(&p.q_s), fmt_q(&p.q_t), fmt_q(&pc.cert.eval(p)));
                    }
                }
            }
            Report::Verify { checks, .. } => {
                for c in checks {
                    let _ = writeln!(out, "{c}");
                }
                let failed = checks.iter().filter(|c| !c.passed).count();
                let _ = writeln!(out, "{} checks, {failed} failed", checks.len());
            }
            Report::Selftest { results, .. } => {
                for c in results {
                    let _ = writeln!(out, "{c}");
                }
                let failed = results.iter().filter(|c| !c.passed).count();
                let _ = writeln!(out, "acceptance: {} passed, {failed} failed", results.len() - failed);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_sha256_hex() {
        assert_eq!(
            digest("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn big_integers_become_strings() {
        let big: num_bigint::BigInt = num_bigint::BigInt::from(i64::MAX) * 4;
        assert!(int_json(&big).is_string());
        assert_eq!(int_json(&num_bigint::BigInt::from(-5)), Value::from(-5));
    }
}
