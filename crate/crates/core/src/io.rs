//! Input documents (JSON or CSV) and the JSON report document.
//!
//! JSON input:
//!
//! ```json
//! {"dim": 2, "points": [[0, 0], [2, 0]], "labels": ["a", "b"],
//!  "shape": {"centers": [[0, 0], [1, 0]], "radius": 1}}
//! ```
//!
//! CSV input has a header `x1,...,xn` and one point per row. Reports are
//! serialized with every float written to 17 significant digits.

use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;
use thiserror::Error;

use crate::geom::{Point, PointSet, Tolerance};
use crate::oracle::OracleSummary;
use crate::props::{Prop31Report, PropertyReport};
use crate::region::{ArcRegion, CertificateBundle, Membership};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("csv line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("point list is empty")]
    Empty,
    #[error(transparent)]
    Geometry(#[from] crate::error::Error),
    #[error("cannot read input: {0}")]
    Io(#[from] io::Error),
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

/// Generators and common radius of an arc-polygon shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub centers: Vec<Vec<f64>>,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDocument {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A validated document with its point set (duplicates merged).
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedInput {
    pub document: InputDocument,
    pub set: Option<PointSet>,
    pub duplicates_merged: usize,
}

impl ParsedInput {
    pub fn shape_centers(&self) -> Option<(Vec<Point>, f64)> {
        let shape = self.document.shape.as_ref()?;
        let centers = shape
            .centers
            .iter()
            .map(|c| Point::new(c.clone()).expect("validated"))
            .collect();
        Some((centers, shape.radius))
    }
}

/// Reads a file, choosing CSV for a `.csv` extension and JSON otherwise.
pub fn parse_input_path(path: &Path) -> Result<ParsedInput, ParseError> {
    let text = std::fs::read_to_string(path)?;
    let csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if csv {
        parse_csv(&text)
    } else {
        parse_input(&text)
    }
}

/// Parses JSON when the first non-blank character is `{`, CSV otherwise.
pub fn parse_input(text: &str) -> Result<ParsedInput, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_csv(text)
    }
}

pub fn parse_json(text: &str) -> Result<ParsedInput, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| invalid(".", "expected a JSON object"))?;
    let dim = match obj.get("dim") {
        Some(v) => {
            v.as_u64()
                .filter(|&d| d >= 2)
                .ok_or_else(|| invalid(".dim", "expected an integer >= 2"))? as usize
        }
        None => return Err(invalid(".dim", "missing field")),
    };
    let points = match obj.get("points") {
        Some(v) => coordinate_list(v, ".points", dim)?,
        None => Vec::new(),
    };
    let shape = match obj.get("shape") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let so = v
                .as_object()
                .ok_or_else(|| invalid(".shape", "expected an object"))?;
            let centers = coordinate_list(
                so.get("centers")
                    .ok_or_else(|| invalid(".shape.centers", "missing field"))?,
                ".shape.centers",
                dim,
            )?;
            if centers.is_empty() {
                return Err(invalid(".shape.centers", "expected at least one center"));
            }
            let radius = so
                .get("radius")
                .and_then(Value::as_f64)
                .filter(|r| r.is_finite() && *r > 0.0)
                .ok_or_else(|| invalid(".shape.radius", "expected a positive number"))?;
            Some(ShapeSpec { centers, radius })
        }
    };
    let labels = match obj.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => Some(
            items
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    v.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| invalid(format!(".labels[{i}]"), "expected a string"))
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Some(_) => return Err(invalid(".labels", "expected an array of strings")),
    };
    if let Some(l) = &labels {
        if l.len() != points.len() {
            return Err(invalid(
                ".labels",
                format!("{} labels for {} points", l.len(), points.len()),
            ));
        }
    }
    if points.is_empty() && shape.is_none() {
        return Err(ParseError::Empty);
    }
    finish(InputDocument {
        dim,
        points,
        shape,
        labels,
    })
}

fn coordinate_list(v: &Value, path: &str, dim: usize) -> Result<Vec<Vec<f64>>, ParseError> {
    let items = v
        .as_array()
        .ok_or_else(|| invalid(path, "expected an array of points"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let ppath = format!("{path}[{i}]");
            let coords = p
                .as_array()
                .ok_or_else(|| invalid(&ppath, "expected an array of numbers"))?;
            if coords.len() != dim {
                return Err(invalid(
                    &ppath,
                    format!("expected {dim} coordinates, found {}", coords.len()),
                ));
            }
            coords
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    c.as_f64()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| invalid(format!("{ppath}[{j}]"), "expected a finite number"))
                })
                .collect()
        })
        .collect()
}

pub fn parse_csv(text: &str) -> Result<ParsedInput, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| ParseError::Csv {
        line: 1,
        message: e.to_string(),
    })?;
    let dim = headers.len();
    for (j, h) in headers.iter().enumerate() {
        if h != format!("x{}", j + 1) {
            return Err(ParseError::Csv {
                line: 1,
                message: format!("expected header column `x{}`, found `{h}`", j + 1),
            });
        }
    }
    if dim < 2 {
        return Err(ParseError::Csv {
            line: 1,
            message: format!("need at least 2 columns, found {dim}"),
        });
    }
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| ParseError::Csv {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != dim {
            return Err(ParseError::Csv {
                line,
                message: format!("expected {dim} fields, found {}", record.len()),
            });
        }
        let row = record
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| ParseError::Csv {
                        line,
                        message: format!("`{f}` is not a finite number"),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        points.push(row);
    }
    if points.is_empty() {
        return Err(ParseError::Empty);
    }
    finish(InputDocument {
        dim,
        points,
        shape: None,
        labels: None,
    })
}

fn finish(document: InputDocument) -> Result<ParsedInput, ParseError> {
    if document.points.is_empty() {
        return Ok(ParsedInput {
            document,
            set: None,
            duplicates_merged: 0,
        });
    }
    let points = document
        .points
        .iter()
        .map(|c| Point::new(c.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let (set, duplicates_merged) = PointSet::with_merge_count(points, None)?;
    Ok(ParsedInput {
        document,
        set: Some(set),
        duplicates_merged,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub dim: usize,
    pub points: usize,
    pub duplicates_merged: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullQuery {
    pub point: Point,
    pub farthest_center_distance: f64,
    pub membership: Membership,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    pub radius: f64,
    /// `⋂_{s ∈ S} B̄(s; r)`, the set of feasible enclosing-ball centers.
    pub centers_region: ArcRegion,
    pub queries: Vec<HullQuery>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub r_lo: f64,
    pub r_hi: f64,
    pub steps: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub label: String,
    pub ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub seed: u64,
    pub tolerance: Tolerance,
    pub input: InputSummary,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<PropertyReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bundles: Vec<CertificateBundle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prop31: Option<Prop31Report>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hull: Option<HullReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    /// Wall-clock timings; only present when requested so that reports are
    /// otherwise byte-identical across runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

impl ReportDocument {
    pub fn new(command: &str, seed: u64, tolerance: Tolerance, input: InputSummary) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            seed,
            tolerance,
            input,
            reports: Vec::new(),
            bundles: Vec::new(),
            prop31: None,
            hull: None,
            scan: None,
            oracle: None,
            diagnostics: Vec::new(),
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        to_json_17(self)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Pretty JSON with every float written as `d.dddddddddddddddde±x`.
pub fn to_json_17<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits::default());
    value
        .serialize(&mut ser)
        .expect("report types serialize infallibly");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

#[derive(Default)]
struct SignificantDigits<'a> {
    pretty: PrettyFormatter<'a>,
}

impl Formatter for SignificantDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.pretty.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.pretty.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_points() {
        let p = parse_input(r#"{"dim":2,"points":[[0,0],[2,0]]}"#).unwrap();
        assert_eq!(p.set.unwrap().len(), 2);
        assert_eq!(p.duplicates_merged, 0);
    }

    #[test]
    fn csv_with_duplicate() {
        let p = parse_input("x1,x2\n0,0\n0,0\n2,0").unwrap();
        assert_eq!(p.set.unwrap().len(), 2);
        assert_eq!(p.duplicates_merged, 1);
    }

    #[test]
    fn json_type_error_reports_path() {
        let err = parse_input(r#"{"dim":2,"points":[[0,"a"]]}"#).unwrap_err();
        match err {
            ParseError::Invalid { path, .. } => assert_eq!(path, ".points[0][1]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_syntax_error_reports_position() {
        let err = parse_input("{\"dim\":2,\n \"points\": [[0,0],]}").unwrap_err();
        match err {
            ParseError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dimension_inconsistency_rejected() {
        let err = parse_input(r#"{"dim":2,"points":[[0,0],[1,2,3]]}"#).unwrap_err();
        assert!(matches!(err, ParseError::Invalid { ref path, .. } if path == ".points[1]"));
        let err = parse_csv("x1,x2\n0,0\n1,2,3").unwrap_err();
        assert!(matches!(err, ParseError::Csv { .. }));
    }

    #[test]
    fn empty_rejected() {
        assert!(matches!(
            parse_input(r#"{"dim":2,"points":[]}"#),
            Err(ParseError::Empty)
        ));
        assert!(matches!(parse_csv("x1,x2\n"), Err(ParseError::Empty)));
    }

    #[test]
    fn csv_rejects_nan_and_bad_header() {
        assert!(parse_csv("x1,x2\nNaN,0").is_err());
        assert!(parse_csv("a,b\n0,0").is_err());
    }

    #[test]
    fn shape_document() {
        let p =
            parse_input(r#"{"dim":2,"points":[],"shape":{"centers":[[0,0],[1,0]],"radius":1}}"#)
                .unwrap();
        assert!(p.set.is_none());
        let (c, r) = p.shape_centers().unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(r, 1.0);
    }

    #[test]
    fn floats_written_with_17_digits() {
        let s = to_json_17(&vec![0.1f64, 1.0, 2f64.sqrt()]);
        assert!(s.contains("1.0000000000000001e-1"));
        assert!(s.contains("1.0000000000000000e0"));
        assert!(s.contains("1.4142135623730951e0"));
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![0.1, 1.0, 2f64.sqrt()]);
    }
}
