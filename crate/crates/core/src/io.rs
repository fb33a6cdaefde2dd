//! Text formats for curves, pencils and certificates.
//!
//! Curve files are JSON documents with exact coefficients written as integer
//! pairs. Numbers of any size are accepted, and every error carries the line
//! and column of the offending record.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::parse_rational;
use crate::algebra::{ProjPoint, Rational, TernaryForm};
use crate::error::{Error, Result};
use crate::pencil::{Pencil, PencilParameter, TotalRealityCertificate};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub value: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    /// Rational points on the curve, as `["x", "y", "z"]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveDocument {
    pub format_version: u32,
    pub degree: u32,
    pub coefficients: Vec<Coefficient>,
    pub metadata: Option<Metadata>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    a: u32,
    b: u32,
    c: u32,
    num: serde_json::Number,
    den: serde_json::Number,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: u32,
    degree: u32,
    coefficients: Vec<RawRecord>,
    #[serde(default)]
    metadata: Option<Metadata>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Offsets of the opening braces of the records inside the array stored
/// under `key` in the top-level object.
fn record_offsets(text: &str, key: &str) -> Vec<usize> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let (mut depth, mut i) = (0usize, 0usize);
    let mut last_string: Option<(usize, usize)> = None;
    let mut in_array: Option<usize> = None;
    while i < bytes.len() {
        match bytes[i] {
            b'"' => {
                let start = i + 1;
                i += 1;
                while i < bytes.len() && bytes[i] != b'"' {
                    if bytes[i] == b'\\' {
                        i += 1;
                    }
                    i += 1;
                }
                last_string = Some((start, i));
            }
            b'[' | b'{' => {
                if bytes[i] == b'{' && in_array == Some(depth) {
                    out.push(i);
                }
                if bytes[i] == b'[' && depth == 1 && in_array.is_none() {
                    if let Some((s, e)) = last_string {
                        if &text[s..e] == key {
                            in_array = Some(depth + 1);
                        }
                    }
                }
                depth += 1;
            }
            b']' | b'}' => {
                depth = depth.saturating_sub(1);
                if in_array.is_some_and(|d| depth < d) {
                    in_array = None;
                }
            }
            _ => {}
        }
        i += 1;
    }
    out
}

fn parse_integer(n: &serde_json::Number) -> Option<BigInt> {
    n.to_string().parse().ok()
}

fn record_error(text: &str, offsets: &[usize], i: usize, message: String) -> Error {
    let (line, column) = offsets.get(i).map_or((1, 1), |&o| line_col(text, o));
    Error::Parse { line, column, message }
}

fn top_level_error(text: &str, key: &str, message: String) -> Error {
    let needle = format!("\"{key}\"");
    let (line, column) = text.find(&needle).map_or((1, 1), |o| line_col(text, o));
    Error::Parse { line, column, message }
}

fn validate_records(text: &str, key: &str, degree: u32, raw: Vec<RawRecord>) -> Result<Vec<Coefficient>> {
    let offsets = record_offsets(text, key);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(raw.len());
    for (i, r) in raw.into_iter().enumerate() {
        let fail = |m: String| record_error(text, &offsets, i, m);
        let (Some(num), Some(den)) = (parse_integer(&r.num), parse_integer(&r.den)) else {
            return Err(fail("num and den must be integers".into()));
        };
        if !den.is_positive() {
            return Err(fail(format!("denominator {den} is not positive")));
        }
        if !num.gcd(&den).is_one() {
            return Err(fail(format!("fraction {num}/{den} is not reduced")));
        }
        if u64::from(r.a) + u64::from(r.b) + u64::from(r.c) != u64::from(degree) {
            return Err(fail(format!(
                "exponents ({}, {}, {}) do not sum to the degree {degree}",
                r.a, r.b, r.c
            )));
        }
        if !seen.insert((r.a, r.b, r.c)) {
            return Err(fail(format!("monomial ({}, {}, {}) appears twice", r.a, r.b, r.c)));
        }
        out.push(Coefficient { a: r.a, b: r.b, c: r.c, value: Rational::new(num, den) });
    }
    Ok(out)
}

fn syntax_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

fn write_records(out: &mut String, indent: &str, records: &[Coefficient]) {
    out.push_str("[\n");
    for (i, r) in records.iter().enumerate() {
        let _ = write!(
            out,
            "{indent}  {{\"a\": {}, \"b\": {}, \"c\": {}, \"num\": {}, \"den\": {}}}",
            r.a,
            r.b,
            r.c,
            r.value.numer(),
            r.value.denom()
        );
        out.push_str(if i + 1 < records.len() { ",\n" } else { "\n" });
    }
    let _ = write!(out, "{indent}]");
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn records_of(form: &TernaryForm) -> Vec<Coefficient> {
    form.terms()
        .iter()
        .rev()
        .map(|(&(a, b, c), v)| Coefficient { a, b, c, value: v.clone() })
        .collect()
}

fn form_of(degree: u32, records: &[Coefficient]) -> Result<TernaryForm> {
    TernaryForm::new(degree, records.iter().map(|r| ((r.a, r.b, r.c), r.value.clone())))
}

pub fn parse_point(coords: &[String; 3]) -> Result<ProjPoint> {
    let parse = |s: &String| {
        parse_rational(s).ok_or_else(|| Error::InvalidForm(format!("'{s}' is not a rational number")))
    };
    ProjPoint::new(parse(&coords[0])?, parse(&coords[1])?, parse(&coords[2])?)
}

pub fn point_strings(p: &ProjPoint) -> [String; 3] {
    let q = p.normalized();
    std::array::from_fn(|i| q.0[i].to_string())
}

impl CurveDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text).map_err(syntax_error)?;
        if raw.format_version != FORMAT_VERSION {
            return Err(top_level_error(
                text,
                "format_version",
                format!("unsupported format version {}", raw.format_version),
            ));
        }
        if raw.degree == 0 {
            return Err(top_level_error(text, "degree", "degree must be at least 1".into()));
        }
        let coefficients = validate_records(text, "coefficients", raw.degree, raw.coefficients)?;
        if coefficients.iter().all(|c| c.value.is_zero()) {
            return Err(top_level_error(text, "coefficients", "the form is zero".into()));
        }
        Ok(CurveDocument { format_version: raw.format_version, degree: raw.degree, coefficients, metadata: raw.metadata })
    }

    /// Records in decreasing lexicographic order of exponents.
    pub fn from_form(form: &TernaryForm, metadata: Option<Metadata>) -> Self {
        CurveDocument {
            format_version: FORMAT_VERSION,
            degree: form.degree(),
            coefficients: records_of(form),
            metadata,
        }
    }

    pub fn form(&self) -> Result<TernaryForm> {
        form_of(self.degree, &self.coefficients)
    }

    pub fn name(&self) -> Option<&str> {
        self.metadata.as_ref().and_then(|m| m.name.as_deref())
    }

    /// Points listed in the metadata.
    pub fn points(&self) -> Result<Vec<ProjPoint>> {
        self.metadata.iter().flat_map(|m| m.points.iter()).map(parse_point).collect()
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"format_version\": {},", self.format_version);
        let _ = writeln!(out, "  \"degree\": {},", self.degree);
        out.push_str("  \"coefficients\": ");
        write_records(&mut out, "  ", &self.coefficients);
        match &self.metadata {
            None => out.push('\n'),
            Some(m) => {
                out.push_str(",\n  \"metadata\": {");
                let mut fields = Vec::new();
                if let Some(n) = &m.name {
                    fields.push(format!("\n    \"name\": {}", json_string(n)));
                }
                if let Some(n) = &m.notes {
                    fields.push(format!("\n    \"notes\": {}", json_string(n)));
                }
                if !m.points.is_empty() {
                    let pts: Vec<String> = m
                        .points
                        .iter()
                        .map(|p| {
                            let cs: Vec<String> = p.iter().map(|s| json_string(s)).collect();
                            format!("      [{}]", cs.join(", "))
                        })
                        .collect();
                    fields.push(format!("\n    \"points\": [\n{}\n    ]", pts.join(",\n")));
                }
                out.push_str(&fields.join(","));
                out.push_str(if fields.is_empty() { "}\n" } else { "\n  }\n" });
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPencil {
    format_version: u32,
    degree: u32,
    f: Vec<RawRecord>,
    g: Vec<RawRecord>,
    #[serde(default)]
    base_points: Vec<[String; 3]>,
}

/// Serialize the pencil `g + t f` with its base points.
pub fn pencil_to_json(p: &Pencil) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"format_version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"degree\": {},", p.k);
    out.push_str("  \"f\": ");
    write_records(&mut out, "  ", &records_of(&p.f));
    out.push_str(",\n  \"g\": ");
    write_records(&mut out, "  ", &records_of(&p.g));
    out.push_str(",\n  \"base_points\": [");
    let pts: Vec<String> = p
        .base_points
        .iter()
        .map(|q| {
            let cs: Vec<String> = point_strings(q).iter().map(|s| json_string(s)).collect();
            format!("\n    [{}]", cs.join(", "))
        })
        .collect();
    out.push_str(&pts.join(","));
    out.push_str(if pts.is_empty() { "]\n" } else { "\n  ]\n" });
    out.push_str("}\n");
    out
}

pub fn parse_pencil(text: &str) -> Result<Pencil> {
    let raw: RawPencil = serde_json::from_str(text).map_err(syntax_error)?;
    if raw.format_version != FORMAT_VERSION {
        return Err(top_level_error(text, "format_version", format!("unsupported format version {}", raw.format_version)));
    }
    let f = form_of(raw.degree, &validate_records(text, "f", raw.degree, raw.f)?)?;
    let g = form_of(raw.degree, &validate_records(text, "g", raw.degree, raw.g)?)?;
    let base = raw.base_points.iter().map(parse_point).collect::<Result<Vec<_>>>()?;
    Pencil::new(f, g, base)
}

#[derive(Serialize)]
struct CountRecord {
    parameter: String,
    real: usize,
    distinct_real: usize,
    complex_pairs: usize,
}

#[derive(Serialize)]
struct CriticalRecord {
    low: String,
    high: String,
    exact: Option<String>,
    real: Option<usize>,
    complex_pairs: Option<usize>,
}

#[derive(Serialize)]
struct CertificateRecord {
    format_version: u32,
    verdict: String,
    curve_degree: u32,
    pencil_degree: u32,
    witness: Option<String>,
    projection: Vec<Vec<String>>,
    discriminant: Vec<String>,
    critical: Vec<CriticalRecord>,
    samples: Vec<CountRecord>,
}

fn verdict_name(c: &TotalRealityCertificate) -> &'static str {
    if c.is_totally_real() {
        "totally-real"
    } else {
        "not-totally-real"
    }
}

fn parameter_string(p: &PencilParameter) -> String {
    p.to_string()
}

/// Deterministic JSON rendering of a certificate.
pub fn certificate_to_json(cert: &TotalRealityCertificate) -> String {
    let rec = CertificateRecord {
        format_version: FORMAT_VERSION,
        verdict: verdict_name(cert).into(),
        curve_degree: cert.curve_degree,
        pencil_degree: cert.pencil_degree,
        witness: cert.witness.as_ref().map(parameter_string),
        projection: cert.projection.matrix().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
        discriminant: cert.discriminant.coeffs().iter().map(|v| v.to_string()).collect(),
        critical: cert
            .critical
            .iter()
            .map(|c| CriticalRecord {
                low: c.low.to_string(),
                high: c.high.to_string(),
                exact: c.exact.as_ref().map(|v| v.to_string()),
                real: c.count.map(|n| n.real),
                complex_pairs: c.count.map(|n| n.complex_pairs),
            })
            .collect(),
        samples: cert
            .samples
            .iter()
            .map(|s| CountRecord {
                parameter: parameter_string(&s.parameter),
                real: s.count.real,
                distinct_real: s.count.distinct_real,
                complex_pairs: s.count.complex_pairs,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&rec).expect("certificate serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONIC: &str = r#"{
  "format_version": 1,
  "degree": 2,
  "coefficients": [
    {"a": 2, "b": 0, "c": 0, "num": 1, "den": 1},
    {"a": 0, "b": 2, "c": 0, "num": 1, "den": 1},
    {"a": 0, "b": 0, "c": 2, "num": -1, "den": 1}
  ],
  "metadata": {
    "name": "conic",
    "points": [
      ["3/5", "4/5", "1"]
    ]
  }
}
"#;

    #[test]
    fn conic_round_trips_bit_exactly() {
        let doc = CurveDocument::parse(CONIC).unwrap();
        assert_eq!(doc.to_json(), CONIC);
        assert_eq!(CurveDocument::parse(&doc.to_json()).unwrap(), doc);
        assert_eq!(doc.form().unwrap(), TernaryForm::parse("x^2 + y^2 - z^2").unwrap());
        assert_eq!(doc.points().unwrap().len(), 1);
    }

    #[test]
    fn huge_integers_survive() {
        let big = "123456789012345678901234567890123456789";
        let text = CONIC.replacen("\"num\": 1, \"den\": 1}", &format!("\"num\": {big}, \"den\": 1}}"), 1);
        let doc = CurveDocument::parse(&text).unwrap();
        assert_eq!(doc.coefficients[0].value.numer().to_string(), big);
        assert_eq!(doc.to_json(), text);
    }

    #[test]
    fn non_reduced_fraction_is_located() {
        let text = CONIC.replace("\"num\": -1, \"den\": 1", "\"num\": -2, \"den\": 2");
        match CurveDocument::parse(&text) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (7, 5)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exponent_mismatch_is_located() {
        let text = CONIC.replace("{\"a\": 0, \"b\": 2, \"c\": 0", "{\"a\": 1, \"b\": 2, \"c\": 0");
        match CurveDocument::parse(&text) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 6);
                assert!(message.contains("degree"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = CONIC.replace("\"degree\": 2,", "\"degree\": 2");
        assert!(matches!(CurveDocument::parse(&text), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn pencil_round_trip() {
        let f = TernaryForm::parse("x").unwrap();
        let g = TernaryForm::parse("y").unwrap();
        let p = Pencil::new(f, g, vec![ProjPoint::ints(0, 0, 1)]).unwrap();
        let text = pencil_to_json(&p);
        let q = parse_pencil(&text).unwrap();
        assert_eq!(pencil_to_json(&q), text);
    }
}
