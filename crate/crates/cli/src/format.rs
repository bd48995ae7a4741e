//! Structured-text documents for (marked) interval systems.
//!
//! ```text
//! family: pentagon
//! d: 2
//! d1: 1
//! n: 1
//! intervals:
//! 0 1 @ 0
//! 1 1 @ 1
//! 2 2 @ 2
//! ```
//!
//! Marks (`@ m`) are optional but must be present on all intervals or none.
//! Intervals are serialized sorted, so parse(serialize(x)) = x.

use std::fmt;
use std::str::FromStr;

use welbound_core::{Family, Interval, MarkedSystem, PolygonSpec, ProperSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemBody {
    Plain(ProperSystem),
    Marked(MarkedSystem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDocument {
    pub spec: PolygonSpec,
    pub body: SystemBody,
}

pub fn serialize(doc: &SystemDocument) -> String {
    let mut out = String::new();
    let spec = &doc.spec;
    out.push_str(&format!("family: {}\n", family_name(spec.family)));
    out.push_str(&format!("d: {}\n", spec.d));
    if let Some(d1) = spec.d1 {
        out.push_str(&format!("d1: {d1}\n"));
    }
    if let Some(d2) = spec.d2 {
        out.push_str(&format!("d2: {d2}\n"));
    }
    out.push_str(&format!("n: {}\n", spec.n));
    out.push_str("intervals:\n");
    match &doc.body {
        SystemBody::Plain(system) => {
            for iv in system.intervals() {
                out.push_str(&format!("{} {}\n", iv.a, iv.b));
            }
        }
        SystemBody::Marked(system) => {
            for (iv, mark) in system.pairs() {
                out.push_str(&format!("{} {} @ {}\n", iv.a, iv.b, mark));
            }
        }
    }
    out
}

pub fn family_name(family: Family) -> &'static str {
    match family {
        Family::Square => "square",
        Family::Pentagon => "pentagon",
        Family::HexagonC => "hexagonC",
        Family::HexagonD => "hexagonD",
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

fn parse_field<T: FromStr>(
    value: &str,
    line_no: usize,
    offset: usize,
    what: &str,
) -> Result<T, ParseError> {
    value
        .trim()
        .parse()
        .map_err(|_| err(line_no, offset + 1, format!("invalid {what}: {value:?}")))
}

pub fn parse(input: &str) -> Result<SystemDocument, ParseError> {
    let mut family: Option<Family> = None;
    let mut d: Option<u32> = None;
    let mut d1: Option<u32> = None;
    let mut d2: Option<u32> = None;
    let mut n: Option<u32> = None;
    let mut in_intervals = false;
    let mut plain: Vec<Interval> = Vec::new();
    let mut marked: Vec<(Interval, i64)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() {
            continue;
        }
        if !in_intervals {
            let Some(colon) = line.find(':') else {
                return Err(err(line_no, 1, "expected `key: value`"));
            };
            let key = line[..colon].trim();
            let value = &line[colon + 1..];
            match key {
                "family" => {
                    family = Some(value.trim().parse().map_err(|_| {
                        err(line_no, colon + 2, format!("unknown family {:?}", value.trim()))
                    })?)
                }
                "d" => d = Some(parse_field(value, line_no, colon + 1, "d")?),
                "d1" => d1 = Some(parse_field(value, line_no, colon + 1, "d1")?),
                "d2" => d2 = Some(parse_field(value, line_no, colon + 1, "d2")?),
                "n" => n = Some(parse_field(value, line_no, colon + 1, "n")?),
                "intervals" => {
                    if !value.trim().is_empty() {
                        return Err(err(
                            line_no,
                            colon + 2,
                            "intervals header takes no value",
                        ));
                    }
                    in_intervals = true;
                }
                other => {
                    return Err(err(line_no, 1, format!("unknown field {other:?}")));
                }
            }
            continue;
        }

        // Interval line: `a b` or `a b @ m`.
        let (coords, mark) = match line.find('@') {
            Some(at) => (&line[..at], Some((&line[at + 1..], at))),
            None => (line, None),
        };
        let mut nums = coords.split_whitespace();
        let a: i64 = match nums.next() {
            Some(tok) => tok.parse().map_err(|_| {
                err(line_no, coord_column(line, 0), format!("invalid endpoint {tok:?}"))
            })?,
            None => return Err(err(line_no, 1, "expected `a b` endpoints")),
        };
        let b: i64 = match nums.next() {
            Some(tok) => tok.parse().map_err(|_| {
                err(line_no, coord_column(line, 1), format!("invalid endpoint {tok:?}"))
            })?,
            None => return Err(err(line_no, line.len() + 1, "missing second endpoint")),
        };
        if let Some(extra) = nums.next() {
            return Err(err(line_no, 1, format!("unexpected token {extra:?}")));
        }
        if a > b {
            return Err(err(line_no, 1, format!("interval endpoints out of order: {a} {b}")));
        }
        match mark {
            Some((mark_str, at)) => {
                if !plain.is_empty() {
                    return Err(err(line_no, at + 1, "mixed marked and unmarked intervals"));
                }
                let m: i64 = mark_str.trim().parse().map_err(|_| {
                    err(line_no, at + 2, format!("invalid mark {:?}", mark_str.trim()))
                })?;
                if m < a || m > b {
                    return Err(err(line_no, at + 2, format!("mark {m} outside [{a}, {b}]")));
                }
                marked.push((Interval::new(a, b), m));
            }
            None => {
                if !marked.is_empty() {
                    return Err(err(line_no, 1, "mixed marked and unmarked intervals"));
                }
                plain.push(Interval::new(a, b));
            }
        }
    }

    let family = family.ok_or_else(|| err(1, 1, "missing field `family`"))?;
    let d = d.ok_or_else(|| err(1, 1, "missing field `d`"))?;
    let n = n.ok_or_else(|| err(1, 1, "missing field `n`"))?;
    if !in_intervals {
        return Err(err(1, 1, "missing `intervals:` section"));
    }
    let spec = PolygonSpec { family, d, d1, d2, n };
    spec.validate().map_err(|e| err(1, 1, e.to_string()))?;
    let body = if marked.is_empty() {
        SystemBody::Plain(ProperSystem::new(plain))
    } else {
        SystemBody::Marked(MarkedSystem::new(marked))
    };
    Ok(SystemDocument { spec, body })
}

fn coord_column(line: &str, token_index: usize) -> usize {
    line.split_whitespace()
        .nth(token_index)
        .and_then(|tok| line.find(tok))
        .map(|p| p + 1)
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(doc: &SystemDocument) {
        let text = serialize(doc);
        assert_eq!(&parse(&text).unwrap(), doc);
    }

    #[test]
    fn plain_roundtrip() {
        roundtrip(&SystemDocument {
            spec: PolygonSpec::square(2, 1),
            body: SystemBody::Plain(ProperSystem::new(vec![
                Interval::new(2, 3),
                Interval::new(1, 2),
                Interval::new(3, 3),
            ])),
        });
    }

    #[test]
    fn marked_roundtrip() {
        roundtrip(&SystemDocument {
            spec: PolygonSpec::pentagon(2, 1, 1),
            body: SystemBody::Marked(MarkedSystem::new(vec![
                (Interval::new(0, 1), 0),
                (Interval::new(1, 1), 1),
                (Interval::new(2, 2), 2),
            ])),
        });
    }

    #[test]
    fn errors_carry_position() {
        let e = parse("family: square\nd: 2\nn: 1\nintervals:\n1 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (5, 3));

        let e = parse("family: nonagon\nd: 2\nn: 1\nintervals:\n").unwrap_err();
        assert_eq!(e.line, 1);

        let e = parse("family: square\nd: 2\nn: 1\nintervals:\n1 2 @ 5\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("outside"));
    }
}
