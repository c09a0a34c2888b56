//! Text formats for instances, matchings, certificates and 0/1 matrices.
//!
//! Instance files come in two equivalent forms. The line form:
//!
//! ```text
//! # optional comments
//! n 2
//! RRBB
//! RRBB
//! BBRR
//! BBRR
//! ```
//!
//! and the JSON form `{"n": 2, "colors": ["RRBB", "RRBB", "BBRR", "BBRR"]}`.
//! Row `i` is left vertex `x_i`, character `j` the color of `(x_i, y_j)`.
//!
//! Matchings are `2n` lines `i j C`, 1-based, sorted by `i`, with `C` in `{R, B}`.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::coloring::{
    validate_coloring, BalancedColoring, Color, ColoringError, DisconnectionCertificate, Matching,
};
use crate::permanent::BinaryMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number, 0 when the problem is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceJson {
    n: usize,
    colors: Vec<String>,
}

// Non-blank lines with comments stripped, paired with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_header(line_no: usize, line: &str) -> Result<usize, ParseError> {
    let rest = line
        .strip_prefix('n')
        .ok_or_else(|| ParseError::at(line_no, format!("expected header `n <integer>`, found {line:?}")))?;
    let value = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '=' || c == ':').trim();
    match value.parse::<usize>() {
        Ok(0) => Err(ParseError::at(line_no, "n must be positive")),
        Ok(n) => Ok(n),
        Err(_) => Err(ParseError::at(line_no, format!("invalid n {value:?}"))),
    }
}

fn build_instance(n: usize, rows: &[(usize, &str)], header_line: usize) -> Result<BalancedColoring, ParseError> {
    let side = 2 * n;
    if rows.len() != side {
        let line = rows.get(side).map_or(header_line, |r| r.0);
        return Err(ParseError::at(line, format!("expected {side} color rows for n = {n}, found {}", rows.len())));
    }
    let mut raw = Vec::with_capacity(side);
    for &(line_no, row) in rows {
        let colors: Vec<Color> = row
            .chars()
            .enumerate()
            .map(|(j, ch)| {
                Color::from_char(ch).ok_or_else(|| {
                    ParseError::at(line_no, format!("column {}: expected R or B, found {ch:?}", j + 1))
                })
            })
            .collect::<Result<_, _>>()?;
        if colors.len() != side {
            return Err(ParseError::at(line_no, format!("expected {side} colors, found {}", colors.len())));
        }
        raw.push(colors);
    }
    validate_coloring(raw).map_err(|e| {
        let line = match e {
            ColoringError::UnbalancedRow { row, .. } => rows[row].0,
            _ => header_line,
        };
        ParseError::at(line, e.to_string())
    })
}

pub fn parse_instance(text: &str) -> Result<BalancedColoring, ParseError> {
    if text.trim_start().starts_with('{') {
        let json: InstanceJson = serde_json::from_str(text)
            .map_err(|e| ParseError::at(e.line(), format!("invalid JSON instance: {e}")))?;
        if json.n == 0 {
            return Err(ParseError::at(0, "n must be positive"));
        }
        let rows: Vec<(usize, &str)> = json.colors.iter().map(|s| (0, s.as_str())).collect();
        return build_instance(json.n, &rows, 0);
    }
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| ParseError::at(0, "empty instance"))?;
    let n = parse_header(header_line, header)?;
    let rows: Vec<(usize, &str)> = lines.collect();
    build_instance(n, &rows, header_line)
}

pub fn format_instance(c: &BalancedColoring) -> String {
    let mut out = format!("n {}\n", c.n());
    for row in c.row_strings() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn format_instance_json(c: &BalancedColoring) -> String {
    serde_json::to_string(&InstanceJson { n: c.n(), colors: c.row_strings() }).expect("plain data serializes")
}

pub fn format_matching(c: &BalancedColoring, m: &Matching) -> String {
    let mut out = String::new();
    for (l, r) in m.edges() {
        writeln!(out, "{} {} {}", l + 1, r + 1, c.color(l, r)).unwrap();
    }
    out
}

/// One parsed matching line, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchingLine {
    pub line: usize,
    pub left: usize,
    pub right: usize,
    pub color: Option<Color>,
}

/// Parses `i j [C]` lines. Only syntax is checked here.
pub fn parse_matching(text: &str) -> Result<Vec<MatchingLine>, ParseError> {
    content_lines(text)
        .map(|(line, content)| {
            let fields: Vec<&str> = content.split_whitespace().collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(ParseError::at(line, format!("expected `i j [C]`, found {content:?}")));
            }
            let index = |s: &str| -> Result<usize, ParseError> {
                match s.parse::<usize>() {
                    Ok(0) | Err(_) => Err(ParseError::at(line, format!("invalid vertex index {s:?}"))),
                    Ok(v) => Ok(v - 1),
                }
            };
            let color = match fields.get(2) {
                None => None,
                Some(s) => Some(
                    s.chars()
                        .next()
                        .filter(|_| s.len() == 1)
                        .and_then(Color::from_char)
                        .ok_or_else(|| ParseError::at(line, format!("invalid color {s:?}")))?,
                ),
            };
            Ok(MatchingLine { line, left: index(fields[0])?, right: index(fields[1])?, color })
        })
        .collect()
}

fn one_based(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn format_certificate(cert: &DisconnectionCertificate) -> String {
    format!(
        "A1 {}\nA2 {}\nB1 {}\nB2 {}\n",
        one_based(&cert.a1),
        one_based(&cert.a2),
        one_based(&cert.b1),
        one_based(&cert.b2)
    )
}

/// Rows of `0`/`1` characters, one row per line; comments and blank lines skipped.
pub fn parse_binary_matrix(text: &str) -> Result<BinaryMatrix, ParseError> {
    let mut rows = Vec::new();
    let mut width = None;
    for (line, content) in content_lines(text) {
        let row: Vec<u8> = content
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(ParseError::at(line, format!("expected 0 or 1, found {ch:?}"))),
            })
            .collect::<Result<_, _>>()?;
        let w = *width.get_or_insert(row.len());
        if row.len() != w {
            return Err(ParseError::at(line, format!("expected {w} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::at(0, "empty matrix"));
    }
    if rows.len() != rows[0].len() {
        return Err(ParseError::at(0, format!("matrix is {}x{}, expected square", rows.len(), rows[0].len())));
    }
    Ok(BinaryMatrix::new(rows).expect("validated square 0/1 rows"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::make_lemma1_instance;

    #[test]
    fn line_format_round_trip() {
        let c = make_lemma1_instance(2);
        let text = format_instance(&c);
        assert_eq!(text, "n 2\nRRBB\nRRBB\nBBRR\nBBRR\n");
        assert_eq!(parse_instance(&text).unwrap(), c);
    }

    #[test]
    fn json_format_equivalent() {
        let c = make_lemma1_instance(2);
        assert_eq!(parse_instance(&format_instance_json(&c)).unwrap(), c);
        assert_eq!(parse_instance(r#"{"n": 1, "colors": ["RB", "BR"]}"#).unwrap(), make_lemma1_instance(1));
    }

    #[test]
    fn comments_and_header_variants() {
        let text = "# figure one\nn = 1\n\nRB  # x1\nBR\n";
        assert_eq!(parse_instance(text).unwrap(), make_lemma1_instance(1));
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let e = parse_instance("n 2\nRRBB\nRRRB\nBBRR\nBBRR\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_instance("n 2\nRRBB\nRRB\nBBRR\nBBRR\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_instance("n 2\nRRBB\nRRXB\nBBRR\nBBRR\n").unwrap_err();
        assert_eq!(e.to_string(), "line 3: column 3: expected R or B, found 'X'");
        let e = parse_instance("x 2\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_instance("n 2\nRRBB\n").unwrap_err();
        assert!(e.message.contains("expected 4 color rows"));
    }

    #[test]
    fn matching_lines() {
        let c = make_lemma1_instance(2);
        let m = Matching::from_permutation(vec![2, 3, 0, 1]).unwrap();
        let text = format_matching(&c, &m);
        assert_eq!(text, "1 3 B\n2 4 B\n3 1 B\n4 2 B\n");
        let parsed = parse_matching(&text).unwrap();
        assert_eq!(parsed[0], MatchingLine { line: 1, left: 0, right: 2, color: Some(Color::Blue) });
        assert!(parse_matching("1 0\n").is_err());
        assert!(parse_matching("1 2 Q\n").is_err());
        assert_eq!(parse_matching("1 2\n").unwrap()[0].color, None);
    }

    #[test]
    fn certificate_lines() {
        let cert = DisconnectionCertificate { a1: vec![0, 1], a2: vec![2, 3], b1: vec![2, 3], b2: vec![0, 1] };
        assert_eq!(format_certificate(&cert), "A1 1 2\nA2 3 4\nB1 3 4\nB2 1 2\n");
    }

    #[test]
    fn binary_matrix_parsing() {
        let m = parse_binary_matrix("0011\n0011\n1100\n1100\n").unwrap();
        assert_eq!(m.size(), 4);
        assert!(parse_binary_matrix("01\n1\n").is_err());
        assert!(parse_binary_matrix("012\n").is_err());
        assert!(parse_binary_matrix("01\n10\n11\n").is_err());
    }
}
