//! Textual set-spec expressions.
//!
//! ```text
//! expr := multiples(q[,r]) | pow2 | bernoulli(delta,seed) | bohr(p/q,eps)
//!       | threshold(t) | file(path) | set(x,...)
//!       | union(expr,expr) | intersect(expr,expr)
//!       | translate(expr,k) | complement(expr)
//! ```
//!
//! Whitespace between tokens is ignored. Rationals are written `p/q`, as an
//! integer, or as a finite decimal. `file` takes a bare path (no whitespace,
//! commas, quotes or parentheses) or a double-quoted string with `\"` and
//! `\\` escapes.

use std::fmt;
use std::path::PathBuf;

use crate::rational::{parse_rational, to_pq, Rational};
use crate::set::SetSpec;

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected {}, found {}", self.position, self.expected.join(" | "), self.found)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_set_spec(text: &str) -> Result<SetSpec, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.expr(0)?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error(&["end of input"]));
    }
    Ok(spec)
}

impl std::str::FromStr for SetSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_set_spec(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(_) => {
                let snippet: String = self.rest().chars().take(12).collect();
                format!("{snippet:?}")
            }
        };
        ParseError { position: self.pos, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, label: &str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
        self.pos += len;
        &self.src[start..self.pos]
    }

    /// Raw numeric token: sign, digits, optional `/digits` or `.digits`.
    fn number_token(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        let mut tok = String::new();
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        if i < bytes.len() && bytes[i] == b'-' {
            tok.push('-');
            i += 1;
        }
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            tok.push(bytes[i] as char);
            i += 1;
        }
        self.pos = i;
        (start, tok)
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        let (start, tok) = self.number_token();
        if tok.is_empty() || tok.starts_with('-') {
            self.pos = start;
            return Err(self.error(&["non-negative integer"]));
        }
        tok.parse().map_err(|_| {
            self.pos = start;
            self.error(&["integer below 2^64"])
        })
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let (start, tok) = self.number_token();
        tok.parse().map_err(|_| {
            self.pos = start;
            self.error(&["integer"])
        })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let (start, mut tok) = self.number_token();
        if tok.is_empty() || tok == "-" {
            // allow ".5"
            if !self.rest().starts_with('.') {
                self.pos = start;
                return Err(self.error(&["rational"]));
            }
        }
        self.skip_ws();
        if self.rest().starts_with('/') {
            self.pos += 1;
            let (_, den) = self.number_token();
            tok.push('/');
            tok.push_str(&den);
        } else if self.rest().starts_with('.') {
            self.pos += 1;
            let frac: String = self.rest().bytes().take_while(u8::is_ascii_digit).map(char::from).collect();
            self.pos += frac.len();
            tok.push('.');
            tok.push_str(&frac);
        }
        parse_rational(&tok).ok_or_else(|| {
            self.pos = start;
            self.error(&["rational p/q or decimal"])
        })
    }

    fn path(&mut self) -> Result<PathBuf, ParseError> {
        self.skip_ws();
        if self.rest().starts_with('"') {
            let start = self.pos;
            self.pos += 1;
            let mut out = String::new();
            let mut chars = self.rest().char_indices();
            while let Some((i, c)) = chars.next() {
                match c {
                    '"' => {
                        self.pos += i + 1;
                        return Ok(PathBuf::from(out));
                    }
                    '\\' => match chars.next() {
                        Some((_, e @ ('"' | '\\'))) => out.push(e),
                        _ => {
                            self.pos += i;
                            return Err(self.error(&["escape \\\" or \\\\"]));
                        }
                    },
                    c => out.push(c),
                }
            }
            self.pos = start;
            return Err(self.error(&["closing quote"]));
        }
        let len: usize = self.rest().chars().take_while(|&c| is_bare_path_char(c)).map(char::len_utf8).sum();
        if len == 0 {
            return Err(self.error(&["path"]));
        }
        let p = PathBuf::from(&self.rest()[..len]);
        self.pos += len;
        Ok(p)
    }

    fn expr(&mut self, depth: usize) -> Result<SetSpec, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.error(&["shallower expression"]));
        }
        const HEADS: &[&str] = &[
            "multiples",
            "pow2",
            "bernoulli",
            "bohr",
            "threshold",
            "file",
            "set",
            "union",
            "intersect",
            "translate",
            "complement",
        ];
        self.skip_ws();
        let start = self.pos;
        let name = self.ident().to_string();
        if name == "pow2" {
            return Ok(SetSpec::PowersOf2);
        }
        if !HEADS.contains(&name.as_str()) {
            self.pos = start;
            return Err(self.error(HEADS));
        }
        self.expect('(', "'('")?;
        let spec = match name.as_str() {
            "multiples" => {
                let modulus = self.uint()?;
                let offset = if self.eat(',') { self.uint()? } else { 0 };
                SetSpec::Multiples { modulus, offset }
            }
            "bernoulli" => {
                let density = self.rational()?;
                self.expect(',', "',' then seed")?;
                let seed = self.uint()?;
                SetSpec::Bernoulli { density, seed }
            }
            "bohr" => {
                let theta = self.rational()?;
                self.expect(',', "','")?;
                let eps = self.rational()?;
                SetSpec::Bohr { theta, eps }
            }
            "threshold" => SetSpec::Threshold(self.uint()?),
            "file" => SetSpec::File(self.path()?),
            "set" => {
                let mut members = Vec::new();
                self.skip_ws();
                if !self.rest().starts_with(')') {
                    loop {
                        let x = self.uint()?;
                        members.push(usize::try_from(x).map_err(|_| self.error(&["smaller element"]))?);
                        if !self.eat(',') {
                            break;
                        }
                    }
                }
                SetSpec::Explicit(members)
            }
            "union" | "intersect" => {
                let a = self.expr(depth + 1)?;
                self.expect(',', "','")?;
                let b = self.expr(depth + 1)?;
                if name == "union" {
                    SetSpec::Union(Box::new(a), Box::new(b))
                } else {
                    SetSpec::Intersect(Box::new(a), Box::new(b))
                }
            }
            "translate" => {
                let a = self.expr(depth + 1)?;
                self.expect(',', "','")?;
                SetSpec::Translate(Box::new(a), self.int()?)
            }
            "complement" => SetSpec::Complement(Box::new(self.expr(depth + 1)?)),
            _ => unreachable!(),
        };
        self.expect(')', "')'")?;
        Ok(spec)
    }
}

fn is_bare_path_char(c: char) -> bool {
    !(c.is_whitespace() || matches!(c, ',' | '(' | ')' | '"'))
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSpec::Multiples { modulus, offset: 0 } => write!(f, "multiples({modulus})"),
            SetSpec::Multiples { modulus, offset } => write!(f, "multiples({modulus}, {offset})"),
            SetSpec::PowersOf2 => f.write_str("pow2"),
            SetSpec::Bernoulli { density, seed } => write!(f, "bernoulli({}, {seed})", to_pq(density)),
            SetSpec::Bohr { theta, eps } => write!(f, "bohr({}, {})", to_pq(theta), to_pq(eps)),
            SetSpec::Threshold(t) => write!(f, "threshold({t})"),
            SetSpec::Explicit(members) => {
                f.write_str("set(")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str(")")
            }
            SetSpec::File(path) => {
                let p = path.to_string_lossy();
                if !p.is_empty() && p.chars().all(is_bare_path_char) {
                    write!(f, "file({p})")
                } else {
                    let escaped = p.replace('\\', "\\\\").replace('"', "\\\"");
                    write!(f, "file(\"{escaped}\")")
                }
            }
            SetSpec::Union(a, b) => write!(f, "union({a}, {b})"),
            SetSpec::Intersect(a, b) => write!(f, "intersect({a}, {b})"),
            SetSpec::Translate(a, k) => write!(f, "translate({a}, {k})"),
            SetSpec::Complement(a) => write!(f, "complement({a})"),
        }
    }
}
