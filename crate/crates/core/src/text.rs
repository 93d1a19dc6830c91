//! The `.prc` line-oriented circuit format.
//!
//! ```text
//! qubits 3
//! # comments run to end of line
//! root x 1/2 2 ctrl +1
//! cx 0 1
//! trans x z 2
//! neg y 0.25 0 ctrl -1
//! ```

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Axis, NamedOp, RootExponent};
use crate::circuit::{sugar_name, Circuit, Control, Gate, Polarity};

/// 1-based line number and half-open 1-based column range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSpan {
    pub line: usize,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}-{}", self.line, self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseErrorKind {
    MissingQubits,
    InvalidQubitCount,
    UnknownMnemonic,
    MalformedRational,
    MalformedNumber,
    MalformedAxis,
    IndexOutOfRange,
    DuplicateControl,
    TargetIsControl,
    MissingToken,
    UnexpectedToken,
}

#[derive(Debug, Clone, PartialEq, Error, Serialize, Deserialize)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    span: SourceSpan,
}

fn tokenize(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    span: SourceSpan {
                        line: line_no,
                        start: line[..s].chars().count() + 1,
                        end: line[..i].chars().count() + 1,
                    },
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

struct LineParser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    /// Where a missing token would have started.
    eol: SourceSpan,
}

impl<'a> LineParser<'a> {
    fn err(kind: ParseErrorKind, span: SourceSpan, message: impl Into<String>) -> ParseError {
        ParseError {
            kind,
            message: message.into(),
            span,
        }
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        let tok = self.tokens.get(self.pos).copied().ok_or_else(|| {
            Self::err(
                ParseErrorKind::MissingToken,
                self.eol,
                format!("expected {what}"),
            )
        })?;
        self.pos += 1;
        Ok(tok)
    }

    fn peek(&self) -> Option<Token<'a>> {
        self.tokens.get(self.pos).copied()
    }

    fn axis(&mut self) -> Result<Axis, ParseError> {
        let tok = self.next("an axis (x, y or z)")?;
        match tok.text {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(Self::err(
                ParseErrorKind::MalformedAxis,
                tok.span,
                format!("expected axis x, y or z, found `{other}`"),
            )),
        }
    }

    fn index(&mut self, n: usize, what: &str) -> Result<(usize, SourceSpan), ParseError> {
        let tok = self.next(what)?;
        let v = parse_index(tok.text).ok_or_else(|| {
            Self::err(
                ParseErrorKind::MalformedNumber,
                tok.span,
                format!("expected {what}, found `{}`", tok.text),
            )
        })?;
        if v >= n {
            return Err(Self::err(
                ParseErrorKind::IndexOutOfRange,
                tok.span,
                format!("line {v} out of range for {n} qubits"),
            ));
        }
        Ok((v, tok.span))
    }

    fn rational(&mut self) -> Result<RootExponent, ParseError> {
        let tok = self.next("an exponent m/k")?;
        let bad = || {
            Self::err(
                ParseErrorKind::MalformedRational,
                tok.span,
                format!("malformed rational `{}`", tok.text),
            )
        };
        let (m, k) = match tok.text.split_once('/') {
            Some((m, k)) => (m, k),
            None => (tok.text, "1"),
        };
        let m: i64 = m.parse().map_err(|_| bad())?;
        if k.starts_with(['+', '-']) {
            return Err(bad());
        }
        let k: i64 = k.parse().map_err(|_| bad())?;
        if k == 0 || m.checked_abs().is_none() || m.abs() > 1 << 40 || k > 1 << 40 {
            return Err(bad());
        }
        RootExponent::new(m, k).map_err(|_| bad())
    }

    fn angle(&mut self) -> Result<f64, ParseError> {
        let tok = self.next("an angle in radians")?;
        tok.text
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| {
                Self::err(
                    ParseErrorKind::MalformedNumber,
                    tok.span,
                    format!("malformed angle `{}`", tok.text),
                )
            })
    }

    /// Optional `ctrl (+|-)<line> ...` tail; the keyword may repeat.
    fn controls(&mut self, n: usize, target: usize) -> Result<Vec<Control>, ParseError> {
        let mut controls: Vec<Control> = Vec::new();
        let mut seen_keyword = false;
        while let Some(tok) = self.peek() {
            self.pos += 1;
            if tok.text == "ctrl" {
                seen_keyword = true;
                continue;
            }
            if !seen_keyword {
                return Err(Self::err(
                    ParseErrorKind::UnexpectedToken,
                    tok.span,
                    format!("unexpected `{}`; controls start with `ctrl`", tok.text),
                ));
            }
            let (polarity, rest) = match tok.text.split_at_checked(1) {
                Some(("+", rest)) => (Polarity::Positive, rest),
                Some(("-", rest)) => (Polarity::Negative, rest),
                _ => {
                    return Err(Self::err(
                        ParseErrorKind::UnexpectedToken,
                        tok.span,
                        format!("control `{}` must be written +<line> or -<line>", tok.text),
                    ))
                }
            };
            let line = parse_index(rest).ok_or_else(|| {
                Self::err(
                    ParseErrorKind::MalformedNumber,
                    tok.span,
                    format!("malformed control line `{}`", tok.text),
                )
            })?;
            if line >= n {
                return Err(Self::err(
                    ParseErrorKind::IndexOutOfRange,
                    tok.span,
                    format!("control line {line} out of range for {n} qubits"),
                ));
            }
            if line == target {
                return Err(Self::err(
                    ParseErrorKind::TargetIsControl,
                    tok.span,
                    format!("line {line} is both target and control"),
                ));
            }
            if controls.iter().any(|c| c.line == line) {
                return Err(Self::err(
                    ParseErrorKind::DuplicateControl,
                    tok.span,
                    format!("duplicate control on line {line}"),
                ));
            }
            controls.push(Control { line, polarity });
        }
        if seen_keyword && controls.is_empty() {
            return Err(Self::err(
                ParseErrorKind::MissingToken,
                self.eol,
                "expected at least one control after `ctrl`",
            ));
        }
        Ok(controls)
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some(tok) => Err(Self::err(
                ParseErrorKind::UnexpectedToken,
                tok.span,
                format!("unexpected `{}`", tok.text),
            )),
            None => Ok(()),
        }
    }
}

fn parse_index(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn sugar_op(name: &str) -> Option<NamedOp> {
    let op = match name {
        "x" => NamedOp::pauli(Axis::X),
        "y" => NamedOp::pauli(Axis::Y),
        "z" => NamedOp::pauli(Axis::Z),
        "h" => NamedOp::hadamard(),
        "s" => NamedOp::root(Axis::Z, 1, 2),
        "sdg" => NamedOp::root(Axis::Z, -1, 2),
        "t" => NamedOp::root(Axis::Z, 1, 4),
        "tdg" => NamedOp::root(Axis::Z, -1, 4),
        "v" => NamedOp::root(Axis::X, 1, 2),
        "vdg" => NamedOp::root(Axis::X, -1, 2),
        "w" => NamedOp::root(Axis::X, 1, 4),
        "wdg" => NamedOp::root(Axis::X, -1, 4),
        _ => return None,
    };
    Some(op)
}

/// Parses one gate directive against an `n`-qubit circuit.
fn parse_gate(p: &mut LineParser<'_>, n: usize) -> Result<Gate, ParseError> {
    let head = p.next("a gate mnemonic")?;
    let gate = match head.text {
        "root" => {
            let axis = p.axis()?;
            let exp = p.rational()?;
            let (target, _) = p.index(n, "a target line")?;
            let controls = p.controls(n, target)?;
            Gate::root(axis, exp, target, controls)
        }
        "trans" => {
            let a = p.axis()?;
            let b = p.axis()?;
            let (target, _) = p.index(n, "a target line")?;
            let controls = p.controls(n, target)?;
            Gate::new(NamedOp::translation(a, b), target, controls)
        }
        "neg" => {
            let axis = p.axis()?;
            let theta = p.angle()?;
            let (target, _) = p.index(n, "a target line")?;
            let controls = p.controls(n, target)?;
            Gate::new(NamedOp::negator(axis, theta), target, controls)
        }
        "cx" => {
            let (control, _) = p.index(n, "a control line")?;
            let (target, span) = p.index(n, "a target line")?;
            if target == control {
                return Err(LineParser::err(
                    ParseErrorKind::TargetIsControl,
                    span,
                    format!("line {target} is both target and control"),
                ));
            }
            p.finish()?;
            Gate::cx(control, target)
        }
        name => {
            let op = sugar_op(name).ok_or_else(|| {
                LineParser::err(
                    ParseErrorKind::UnknownMnemonic,
                    head.span,
                    format!("unknown mnemonic `{name}`"),
                )
            })?;
            let (target, _) = p.index(n, "a target line")?;
            let controls = p.controls(n, target)?;
            Gate::new(op, target, controls)
        }
    };
    Ok(gate)
}

/// Parses a single gate line (no `qubits` header) for an `n`-qubit circuit.
pub fn parse_gate_line(text: &str, n: usize) -> Result<Gate, ParseError> {
    let tokens = tokenize(1, text);
    let eol = eol_span(1, text);
    let mut p = LineParser {
        tokens,
        pos: 0,
        eol,
    };
    parse_gate(&mut p, n)
}

fn eol_span(line_no: usize, line: &str) -> SourceSpan {
    let col = line.split('#').next().unwrap_or("").trim_end().chars().count() + 1;
    SourceSpan {
        line: line_no,
        start: col,
        end: col,
    }
}

/// Parses `.prc` text. LF and CRLF line endings are accepted.
pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    let mut n: Option<usize> = None;
    let mut gates = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let tokens = tokenize(line_no, line);
        let Some(first) = tokens.first().copied() else {
            continue;
        };
        let mut p = LineParser {
            tokens,
            pos: 0,
            eol: eol_span(line_no, line),
        };
        match n {
            None => {
                if first.text != "qubits" {
                    return Err(LineParser::err(
                        ParseErrorKind::MissingQubits,
                        first.span,
                        "the first directive must be `qubits N`",
                    ));
                }
                p.pos = 1;
                let tok = p.next("a qubit count")?;
                let count = parse_index(tok.text).filter(|&c| c >= 1).ok_or_else(|| {
                    LineParser::err(
                        ParseErrorKind::InvalidQubitCount,
                        tok.span,
                        format!("qubit count must be a positive integer, found `{}`", tok.text),
                    )
                })?;
                p.finish()?;
                n = Some(count);
            }
            Some(_) if first.text == "qubits" => {
                return Err(LineParser::err(
                    ParseErrorKind::UnexpectedToken,
                    first.span,
                    "`qubits` may appear only once",
                ));
            }
            Some(count) => gates.push(parse_gate(&mut p, count)?),
        }
    }
    let n = n.ok_or(ParseError {
        kind: ParseErrorKind::MissingQubits,
        message: "missing `qubits N` directive".into(),
        span: SourceSpan {
            line: last_line,
            start: 1,
            end: 1,
        },
    })?;
    Ok(Circuit::unchecked(n, gates))
}

fn write_controls(out: &mut String, g: &Gate) {
    if g.is_controlled() {
        out.push_str(" ctrl");
        for c in g.controls() {
            let _ = write!(out, " {}{}", c.polarity.sign(), c.line);
        }
    }
}

/// Renders one gate as a directive line without a trailing newline.
pub fn print_gate(g: &Gate, sugar: bool) -> String {
    let mut out = String::new();
    if sugar {
        if g.is_cx() && sugar_name(&g.op) == Some("x") {
            return format!("cx {} {}", g.controls()[0].line, g.target);
        }
        if let Some(name) = sugar_name(&g.op) {
            let _ = write!(out, "{name} {}", g.target);
            write_controls(&mut out, g);
            return out;
        }
    }
    match g.op {
        NamedOp::PauliRoot { axis, exp } => {
            let _ = write!(out, "root {axis} {exp} {}", g.target);
        }
        NamedOp::Translation { a, b } => {
            let _ = write!(out, "trans {a} {b} {}", g.target);
        }
        NamedOp::Negator { axis, theta } => {
            let _ = write!(out, "neg {axis} {theta:?} {}", g.target);
        }
    }
    write_controls(&mut out, g);
    out
}

/// Canonical text: controls ascending, rationals reduced, LF line endings.
/// With `sugar = false` only `root`, `trans` and `neg` directives appear.
pub fn print(c: &Circuit, sugar: bool) -> String {
    let mut out = format!("qubits {}\n", c.n());
    for g in c.gates() {
        out.push_str(&print_gate(g, sugar));
        out.push('\n');
    }
    out
}
