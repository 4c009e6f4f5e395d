//! Carriers: integer windows under partial addition and finite groups given
//! by Cayley tables.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite carrier with a (possibly partial) binary operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupModel {
    /// Integers `0..size` under addition, defined when the sum is `< size`.
    /// Witness operands are drawn from `0..operand_bound`.
    ZWindow {
        size: usize,
        operand_bound: usize,
    },
    Cayley(CayleyGroup),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    order: usize,
    table: Vec<u32>,
}

impl CayleyGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn identity(&self) -> usize {
        (0..self.order)
            .find(|&e| (0..self.order).all(|x| self.mul(e, x) == x))
            .expect("validated group has an identity")
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|r| (0..self.order).map(|c| self.mul(r, c)).collect()).collect()
    }
}

impl GroupModel {
    pub fn zwindow(size: usize, operand_bound: usize) -> Result<Self> {
        if operand_bound < 2 || operand_bound > size / 2 {
            return Err(Error::BadBounds { size, operand_bound });
        }
        Ok(GroupModel::ZWindow { size, operand_bound })
    }

    /// The cyclic group `Z_n` as a Cayley table.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadTable("group order must be positive".into()));
        }
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupModel::from_table(rows)
    }

    /// Validates a Cayley table: square, entries in range, Latin, associative.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadTable("empty table".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::BadTable("table too large".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadTable(format!("row {r} has {} entries, expected {n}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::BadTable(format!("entry {v} in row {r} is not below {n}")));
                }
                table.push(v as u32);
            }
        }
        let mut seen = vec![usize::MAX; n];
        for r in 0..n {
            for c in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] == r {
                    return Err(Error::NotALatinSquare { axis: "row", index: r, value: v });
                }
                seen[v] = r;
            }
        }
        seen.fill(usize::MAX);
        for c in 0..n {
            for r in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] == c {
                    return Err(Error::NotALatinSquare { axis: "column", index: c, value: v });
                }
                seen[v] = c;
            }
        }
        let g = CayleyGroup { order: n, table };
        // A Latin square is a quasigroup; associativity makes it a group.
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(GroupModel::Cayley(g))
    }

    /// Number of carrier elements.
    pub fn carrier_size(&self) -> usize {
        match self {
            GroupModel::ZWindow { size, .. } => *size,
            GroupModel::Cayley(g) => g.order,
        }
    }

    /// Size of the operand domain `0..operands()` witnesses are drawn from.
    pub fn operands(&self) -> usize {
        match self {
            GroupModel::ZWindow { operand_bound, .. } => *operand_bound,
            GroupModel::Cayley(g) => g.order,
        }
    }

    /// `b·c`, or `None` when undefined (window overflow or out of carrier).
    #[inline]
    pub fn op(&self, b: usize, c: usize) -> Option<usize> {
        match self {
            GroupModel::ZWindow { size, .. } => {
                let s = b.checked_add(c)?;
                (s < *size).then_some(s)
            }
            GroupModel::Cayley(g) => (b < g.order && c < g.order).then(|| g.mul(b, c)),
        }
    }

    pub fn is_window(&self) -> bool {
        matches!(self, GroupModel::ZWindow { .. })
    }

    pub fn as_cayley(&self) -> Option<&CayleyGroup> {
        match self {
            GroupModel::Cayley(g) => Some(g),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GroupModel::ZWindow { .. } => "zwindow",
            GroupModel::Cayley(_) => "cayley",
        }
    }
}

/// Textual model description: `zwindow:M:L`, `cyclic:n`, or `cayley:<path>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelDesc {
    ZWindow { size: usize, operand_bound: usize },
    Cyclic(usize),
    CayleyFile(PathBuf),
    CayleyRows(Vec<Vec<usize>>),
}

impl FromStr for ModelDesc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("bad model description {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "zwindow" => {
                let (m, l) = rest.split_once(':').ok_or_else(bad)?;
                Ok(ModelDesc::ZWindow {
                    size: m.trim().parse().map_err(|_| bad())?,
                    operand_bound: l.trim().parse().map_err(|_| bad())?,
                })
            }
            "cyclic" => Ok(ModelDesc::Cyclic(rest.trim().parse().map_err(|_| bad())?)),
            "cayley" if !rest.is_empty() => Ok(ModelDesc::CayleyFile(PathBuf::from(rest))),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ModelDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelDesc::ZWindow { size, operand_bound } => write!(f, "zwindow:{size}:{operand_bound}"),
            ModelDesc::Cyclic(n) => write!(f, "cyclic:{n}"),
            ModelDesc::CayleyFile(p) => write!(f, "cayley:{}", p.display()),
            ModelDesc::CayleyRows(rows) => write!(f, "cayley-inline:{}", rows.len()),
        }
    }
}

/// Validates a description into a model, reading the table file if needed.
pub fn build_model(desc: &ModelDesc) -> Result<GroupModel> {
    match desc {
        ModelDesc::ZWindow { size, operand_bound } => GroupModel::zwindow(*size, *operand_bound),
        ModelDesc::Cyclic(n) => GroupModel::cyclic(*n),
        ModelDesc::CayleyRows(rows) => GroupModel::from_table(rows.clone()),
        ModelDesc::CayleyFile(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
            GroupModel::from_table(parse_cayley_table(&text)?)
        }
    }
}

/// Parses a table: one row per line, entries separated by whitespace or
/// commas. Blank lines and `#` comments are skipped.
pub fn parse_cayley_table(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::BadTable(format!("line {}: bad entry {t:?}", lineno + 1))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}
