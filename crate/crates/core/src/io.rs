//! File formats: space descriptions and sequence specifications (JSON with
//! rationals as `"p/q"` strings), point maps and topologies (line-based
//! text).
//!
//! A space file names a carrier, a rule and the rule's parameters:
//!
//! ```json
//! {"carrier": "line", "rule": "piecewise", "parameters": {"r": "1/1"}}
//! {"carrier": {"closed": ["2/1", "4/1"]}, "rule": "square-shift", "parameters": {"offset": "100/1"}}
//! {"carrier": {"points": ["2", "3", "4"]}, "rule": "square-shift", "parameters": {"offset": "0"}}
//! {"carrier": {"points": ["a", "b"]}, "rule": "table", "parameters": {"rows": [["3", "4"], ["4", "3"]]}}
//! ```
//!
//! Line rules on a `points` carrier are materialized as tables. A `table`
//! rule accepts an optional `shift`, applied to an index-0 table.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::metrics::{GQuasiMetric, GqmPoint, GqmSpace, LineCarrier, LineRule, LineSpace, TableSpace};
use crate::numerics::Scalar;
use crate::sequences::{ClosedForm, Sequence};

#[derive(Deserialize)]
#[serde(untagged)]
enum CarrierSpec {
    Named(String),
    Closed { closed: [Value; 2] },
    Points { points: Vec<Value> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    carrier: CarrierSpec,
    rule: String,
    #[serde(default)]
    parameters: BTreeMap<String, Value>,
}

/// Line of the first occurrence of `"key"`, for error messages.
fn line_of(text: &str, key: &str) -> usize {
    let quoted = format!("\"{key}\"");
    text.lines()
        .position(|l| l.contains(&quoted))
        .map_or(1, |i| i + 1)
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, key: &str, message: impl Into<String>) -> Error {
        Error::Parse {
            line: line_of(self.text, key),
            message: message.into(),
        }
    }

    fn rational<S: Scalar>(&self, key: &str, v: &Value) -> Result<S> {
        match v {
            Value::String(s) => S::parse_exact(s)
                .ok_or_else(|| self.err(key, format!("`{s}` is not a rational of the form p/q"))),
            _ => Err(self.err(key, format!("{key}: rationals must be strings like \"3/2\""))),
        }
    }

    fn param<S: Scalar>(&self, params: &BTreeMap<String, Value>, key: &str) -> Result<S> {
        let v = params
            .get(key)
            .ok_or_else(|| self.err("parameters", format!("missing parameter `{key}`")))?;
        self.rational(key, v)
    }

    fn label(&self, key: &str, v: &Value) -> Result<String> {
        match v {
            Value::String(s) => Ok(s.clone()),
            _ => Err(self.err(key, "labels must be strings")),
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line().max(1),
        message: e.to_string(),
    }
}

pub fn parse_space<S: Scalar>(text: &str) -> Result<GqmSpace<S>> {
    let file: SpaceFile = serde_json::from_str(text).map_err(json_error)?;
    let cx = Ctx { text };
    let p = &file.parameters;
    let rule = match file.rule.as_str() {
        "piecewise" => Some(LineRule::Piecewise { r: cx.param(p, "r")? }),
        "square-shift" => Some(LineRule::SquareShift {
            offset: cx.param(p, "offset")?,
        }),
        "shifted" => Some(LineRule::Shifted {
            forward: p
                .get("forward")
                .map_or(Ok(S::one()), |v| cx.rational("forward", v))?,
            backward: p
                .get("backward")
                .map_or(Ok(S::one()), |v| cx.rational("backward", v))?,
            shift: cx.param(p, "shift")?,
        }),
        "table" => None,
        other => return Err(cx.err("rule", format!("unknown rule `{other}`"))),
    };
    match (file.carrier, rule) {
        (CarrierSpec::Points { points }, None) => {
            let labels = points
                .iter()
                .map(|v| cx.label("points", v))
                .collect::<Result<Vec<_>>>()?;
            let rows = match p.get("rows") {
                Some(Value::Array(rows)) => rows
                    .iter()
                    .map(|row| match row {
                        Value::Array(cells) => cells.iter().map(|c| cx.rational("rows", c)).collect(),
                        _ => Err(cx.err("rows", "each row must be an array")),
                    })
                    .collect::<Result<Vec<Vec<S>>>>()?,
                _ => return Err(cx.err("parameters", "table rule needs `rows`")),
            };
            let table = TableSpace::new(labels, rows)?;
            let table = match p.get("shift") {
                Some(v) => table.shift_quasi_metric(cx.rational("shift", v)?)?,
                None => table,
            };
            Ok(GqmSpace::Table(table))
        }
        (_, None) => Err(cx.err("carrier", "table rule needs a `points` carrier")),
        (CarrierSpec::Points { points }, Some(rule)) => {
            let xs = points
                .iter()
                .map(|v| cx.rational("points", v))
                .collect::<Result<Vec<S>>>()?;
            let line = LineSpace::new(LineCarrier::Line, rule)?;
            Ok(GqmSpace::Table(TableSpace::from_rule(&xs, |x, y| {
                line.dist(x, y)
            })?))
        }
        (CarrierSpec::Named(name), Some(rule)) if name == "line" => {
            Ok(GqmSpace::Line(LineSpace::new(LineCarrier::Line, rule)?))
        }
        (CarrierSpec::Named(name), Some(_)) => Err(cx.err("carrier", format!("unknown carrier `{name}`"))),
        (CarrierSpec::Closed { closed }, Some(rule)) => {
            let lo = cx.rational("closed", &closed[0])?;
            let hi = cx.rational("closed", &closed[1])?;
            Ok(GqmSpace::Line(LineSpace::new(
                LineCarrier::Closed { lo, hi },
                rule,
            )?))
        }
    }
}

/// Canonical JSON for a space, accepted by [`parse_space`].
pub fn render_space<S: Scalar>(space: &GqmSpace<S>) -> String {
    let r = |x: &S| Value::String(x.render());
    let value = match space {
        GqmSpace::Table(t) => serde_json::json!({
            "carrier": {"points": t.labels()},
            "rule": "table",
            "parameters": {"rows": t.rows().iter().map(|row| row.iter().map(r).collect::<Vec<_>>()).collect::<Vec<_>>()},
        }),
        GqmSpace::Line(l) => {
            let carrier = match l.carrier() {
                LineCarrier::Line => Value::String("line".into()),
                LineCarrier::Closed { lo, hi } => serde_json::json!({"closed": [r(lo), r(hi)]}),
            };
            let (rule, params) = match l.rule() {
                LineRule::Piecewise { r: rr } => ("piecewise", serde_json::json!({"r": r(rr)})),
                LineRule::SquareShift { offset } => {
                    ("square-shift", serde_json::json!({"offset": r(offset)}))
                }
                LineRule::Shifted {
                    forward,
                    backward,
                    shift,
                } => (
                    "shifted",
                    serde_json::json!({"forward": r(forward), "backward": r(backward), "shift": r(shift)}),
                ),
            };
            serde_json::json!({"carrier": carrier, "rule": rule, "parameters": params})
        }
    };
    serde_json::to_string_pretty(&value).expect("serializable") + "\n"
}

/// A sequence description, before binding to a space.
///
/// ```json
/// {"family": "drift-gap", "parameters": {"r": "1/1"}}
/// {"family": "alt-pow", "parameters": {"base": "10", "odd_value": "1", "mirrored": true}}
/// {"table": ["a", "b", "b"]}
/// {"pair": [{"family": "constant", "parameters": {"value": "0"}}, {"table": ["1/2"]}]}
/// ```
///
/// A table repeats its last term forever.
#[derive(Clone, Debug, PartialEq)]
pub enum SeqSpec<S> {
    Closed(ClosedForm<S>),
    Table(Vec<String>),
    Pair(Box<SeqSpec<S>>, Box<SeqSpec<S>>),
}

pub fn parse_seq<S: Scalar>(text: &str) -> Result<SeqSpec<S>> {
    let value: Value = serde_json::from_str(text).map_err(json_error)?;
    seq_from_value(&Ctx { text }, &value)
}

fn seq_from_value<S: Scalar>(cx: &Ctx, value: &Value) -> Result<SeqSpec<S>> {
    let obj = value
        .as_object()
        .ok_or_else(|| cx.err("", "a sequence must be a JSON object"))?;
    if let Some(pair) = obj.get("pair") {
        return match pair.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok(SeqSpec::Pair(
                Box::new(seq_from_value(cx, a)?),
                Box::new(seq_from_value(cx, b)?),
            )),
            _ => Err(cx.err("pair", "`pair` needs exactly two sequences")),
        };
    }
    if let Some(table) = obj.get("table") {
        let terms = table
            .as_array()
            .ok_or_else(|| cx.err("table", "`table` must be an array"))?
            .iter()
            .map(|v| cx.label("table", v))
            .collect::<Result<Vec<_>>>()?;
        if terms.is_empty() {
            return Err(cx.err("table", "`table` needs at least one term"));
        }
        return Ok(SeqSpec::Table(terms));
    }
    let family = obj
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| cx.err("family", "expected `family`, `table` or `pair`"))?;
    let empty = serde_json::Map::new();
    let params: BTreeMap<String, Value> = obj
        .get("parameters")
        .and_then(Value::as_object)
        .unwrap_or(&empty)
        .iter()
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let form = match family {
        "constant" => ClosedForm::Constant {
            value: cx.param(&params, "value")?,
        },
        "affine" => ClosedForm::Affine {
            a: cx.param(&params, "a")?,
            b: cx.param(&params, "b")?,
        },
        "drift-gap" => ClosedForm::DriftGap {
            r: cx.param(&params, "r")?,
        },
        "alt-pow" => ClosedForm::AltPow {
            base: cx.param(&params, "base")?,
            odd_value: cx.param(&params, "odd_value")?,
            mirrored: match params.get("mirrored") {
                None => false,
                Some(Value::Bool(b)) => *b,
                Some(_) => return Err(cx.err("mirrored", "`mirrored` must be a boolean")),
            },
        },
        other => return Err(cx.err("family", format!("unknown family `{other}`"))),
    };
    Ok(SeqSpec::Closed(form))
}

/// A sequence whose terms are points of a given [`GqmSpace`].
#[derive(Clone, Debug, PartialEq)]
pub enum BoundSeq<S> {
    /// Closed form on a line space.
    Line(ClosedForm<S>),
    /// Closed form on a table whose labels are rationals.
    Labeled(ClosedForm<S>, TableSpace<S>),
    Table(Vec<GqmPoint<S>>),
}

impl<S: Scalar> SeqSpec<S> {
    /// Resolves terms against `space`. Pairs must be split first.
    pub fn bind(&self, space: &GqmSpace<S>) -> Result<BoundSeq<S>> {
        match (self, space) {
            (SeqSpec::Pair(..), _) => Err(Error::UnsupportedSpace("a pair needs a product space".into())),
            (SeqSpec::Closed(f), GqmSpace::Line(_)) => Ok(BoundSeq::Line(f.clone())),
            (SeqSpec::Closed(f), GqmSpace::Table(t)) => Ok(BoundSeq::Labeled(f.clone(), t.clone())),
            (SeqSpec::Table(terms), _) => Ok(BoundSeq::Table(
                terms
                    .iter()
                    .map(|t| space.parse_point(t))
                    .collect::<Result<Vec<_>>>()?,
            )),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SeqSpec::Closed(f) => f.describe(),
            SeqSpec::Table(t) => format!("table of {} terms with constant tail", t.len()),
            SeqSpec::Pair(a, b) => format!("pair of ({}) and ({})", a.describe(), b.describe()),
        }
    }
}

impl<S: Scalar> Sequence<GqmPoint<S>> for BoundSeq<S> {
    fn term(&self, n: u64) -> Result<GqmPoint<S>> {
        match self {
            BoundSeq::Line(f) => f.term(n).map(GqmPoint::Real),
            BoundSeq::Labeled(f, t) => {
                let x = f.term(n)?;
                let label = x.render();
                let i = t
                    .labels()
                    .iter()
                    .position(|l| S::parse_exact(l).as_ref() == Some(&x))
                    .ok_or(Error::PointOutsideCarrier(label))?;
                Ok(GqmPoint::Label(i))
            }
            BoundSeq::Table(terms) => {
                if n == 0 {
                    return Err(Error::ZeroIndex);
                }
                Ok(terms[(n as usize).min(terms.len()) - 1].clone())
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            BoundSeq::Line(f) | BoundSeq::Labeled(f, _) => f.describe(),
            BoundSeq::Table(t) => format!("table of {} terms with constant tail", t.len()),
        }
    }
}
