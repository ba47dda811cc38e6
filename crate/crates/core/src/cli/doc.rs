//! JSON persistence of fuzzy intervals.

use serde::{Deserialize, Serialize};

use crate::fuzzy::FuzzyInterval;
use crate::interval::Interval;
use crate::piecewise::{Branch, Continuity, Direction, MonotoneFn, Piece, SegmentKind};

use super::CliError;

pub const DOC_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyIntervalDoc {
    pub version: u32,
    pub endpoints: Endpoints,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Endpoints {
    pub a_d: Vec<SegmentDoc>,
    pub a_u: Vec<SegmentDoc>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Seconds since the Unix epoch; only written on request.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentDoc {
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    #[serde(flatten)]
    pub kind: KindDoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchDoc {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KindDoc {
    Constant { value: f64 },
    Affine { slope: f64, intercept: f64 },
    Quadratic { a: f64, b: f64, c: f64 },
    QuadraticRoot { a: f64, b: f64, c: f64, branch: BranchDoc },
    Mobius { p: f64, q: f64, r: f64, s: f64 },
    /// `[alpha, value]` pairs.
    Sampled { knots: Vec<[f64; 2]> },
}

impl From<&SegmentKind> for KindDoc {
    fn from(k: &SegmentKind) -> Self {
        match *k {
            SegmentKind::Constant(value) => KindDoc::Constant { value },
            SegmentKind::Affine { slope, intercept } => KindDoc::Affine { slope, intercept },
            SegmentKind::Quadratic { a, b, c } => KindDoc::Quadratic { a, b, c },
            SegmentKind::QuadraticRoot { a, b, c, branch } => KindDoc::QuadraticRoot {
                a,
                b,
                c,
                branch: match branch {
                    Branch::Plus => BranchDoc::Plus,
                    Branch::Minus => BranchDoc::Minus,
                },
            },
            SegmentKind::Mobius { p, q, r, s } => KindDoc::Mobius { p, q, r, s },
            SegmentKind::Sampled(ref knots) => KindDoc::Sampled { knots: knots.iter().map(|&(x, y)| [x, y]).collect() },
        }
    }
}

impl KindDoc {
    fn to_kind(&self) -> crate::Result<SegmentKind> {
        Ok(match *self {
            KindDoc::Constant { value } => SegmentKind::Constant(value),
            KindDoc::Affine { slope, intercept } => SegmentKind::affine(slope, intercept),
            KindDoc::Quadratic { a, b, c } => SegmentKind::quadratic(a, b, c),
            KindDoc::QuadraticRoot { a, b, c, branch } => SegmentKind::quadratic_root(
                a,
                b,
                c,
                match branch {
                    BranchDoc::Plus => Branch::Plus,
                    BranchDoc::Minus => Branch::Minus,
                },
            ),
            KindDoc::Mobius { p, q, r, s } => SegmentKind::mobius(p, q, r, s),
            KindDoc::Sampled { ref knots } => SegmentKind::sampled(knots.iter().map(|k| (k[0], k[1])).collect())?,
        })
    }
}

fn segments(f: &MonotoneFn) -> Vec<SegmentDoc> {
    f.pieces()
        .iter()
        .map(|p| SegmentDoc { alpha_lo: p.span.lo, alpha_hi: p.span.hi, kind: (&p.kind).into() })
        .collect()
}

pub fn to_doc(f: &FuzzyInterval, metadata: Option<Metadata>) -> FuzzyIntervalDoc {
    FuzzyIntervalDoc {
        version: DOC_VERSION,
        endpoints: Endpoints { a_d: segments(f.a_d()), a_u: segments(f.a_u()) },
        metadata,
    }
}

fn schema(pointer: impl Into<String>, message: impl ToString) -> CliError {
    CliError::Schema { pointer: pointer.into(), message: message.to_string() }
}

fn endpoint(
    segs: &[SegmentDoc],
    name: &str,
    direction: Direction,
    continuity: Continuity,
) -> Result<MonotoneFn, CliError> {
    let pointer = format!("/endpoints/{name}");
    let mut pieces = Vec::with_capacity(segs.len());
    for (i, s) in segs.iter().enumerate() {
        let kind = s.kind.to_kind().map_err(|e| schema(format!("{pointer}/{i}"), e))?;
        let span = Interval::new(s.alpha_lo, s.alpha_hi).map_err(|e| schema(format!("{pointer}/{i}"), e))?;
        pieces.push(Piece { span, kind });
    }
    let f = MonotoneFn::new(pieces, direction, continuity).map_err(|e| schema(&pointer, e))?;
    if f.domain() != Interval::UNIT {
        return Err(schema(pointer, format!("segments cover {} instead of [0, 1]", f.domain())));
    }
    Ok(f)
}

/// Rebuilds and re-validates the interval a document describes.
pub fn from_doc(doc: &FuzzyIntervalDoc) -> Result<FuzzyInterval, CliError> {
    if doc.version != DOC_VERSION {
        return Err(schema("/version", format!("unsupported version {}", doc.version)));
    }
    let a_d = endpoint(&doc.endpoints.a_d, "a_d", Direction::Increasing, Continuity::Left)?;
    let a_u = endpoint(&doc.endpoints.a_u, "a_u", Direction::Decreasing, Continuity::Right)?;
    FuzzyInterval::from_endpoints(a_d, a_u).map_err(|e| schema("/endpoints", e))
}

/// Parses document text, reporting structural errors with a JSON pointer.
pub fn parse_doc(text: &str) -> Result<FuzzyIntervalDoc, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = json_pointer(e.path());
        schema(pointer, e.into_inner())
    })
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { .. } | Segment::Unknown => {}
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

pub fn to_json(doc: &FuzzyIntervalDoc) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_round_trip() {
        let t = FuzzyInterval::triangle(1.0, 2.0, 3.0).unwrap();
        let doc = to_doc(&t, None);
        assert!(matches!(doc.endpoints.a_d[0].kind, KindDoc::Affine { .. }));
        let text = to_json(&doc);
        let back = parse_doc(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(from_doc(&back).unwrap(), t);
    }

    #[test]
    fn closed_forms_round_trip_bit_exactly() {
        let f = crate::expr::eval_str("tr(0.1,0.2,0.3) * tr(1.7,2.9,3.3) / tr(0.3, 0.7, 1.1)").unwrap();
        let doc = to_doc(&f, Some(Metadata { name: Some("q".into()), ..Default::default() }));
        let back = from_doc(&parse_doc(&to_json(&doc)).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn decreasing_lower_endpoint_is_rejected() {
        let text = r#"{"version":1,"endpoints":{
            "a_d":[{"alpha_lo":0,"alpha_hi":1,"kind":"affine","slope":-1,"intercept":2}],
            "a_u":[{"alpha_lo":0,"alpha_hi":1,"kind":"constant","value":3}]}}"#;
        let doc = parse_doc(text).unwrap();
        let err = from_doc(&doc).unwrap_err();
        assert!(matches!(&err, CliError::Schema { pointer, .. } if pointer == "/endpoints/a_d"), "{err}");
    }

    #[test]
    fn structural_errors_have_pointers() {
        let text = r#"{"version":1,"endpoints":{"a_d":[{"alpha_lo":0,"alpha_hi":"x","kind":"constant","value":1}],"a_u":[]}}"#;
        let err = parse_doc(text).unwrap_err();
        let CliError::Schema { pointer, .. } = err else { panic!() };
        assert!(pointer.starts_with("/endpoints/a_d/0"), "{pointer}");
        let err = parse_doc(r#"{"version":1}"#).unwrap_err();
        assert!(matches!(err, CliError::Schema { .. }));
    }
}
