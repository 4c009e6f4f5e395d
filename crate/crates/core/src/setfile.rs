//! Set file formats.
//!
//! Two encodings are read and written:
//!
//! * plain: one non-negative decimal integer per line (blank lines ignored);
//! * run-length: `RLE1:<M>:<runs>`, where `runs` are comma-separated
//!   alternating gap/run lengths starting with a gap. A trailing gap is
//!   omitted when writing and implied when reading.

use std::path::Path;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::set::DenseSet;

const RLE_MAGIC: &str = "RLE1:";

/// Parses either format. For the run-length form the declared `M` must equal
/// `universe`.
pub fn parse_set_text(text: &str, universe: usize) -> Result<DenseSet> {
    let trimmed = text.trim_start();
    if trimmed.starts_with(RLE_MAGIC) {
        return parse_rle_body(trimmed.trim_end(), Some(universe)).map(|(_, set)| set);
    }
    let mut bits = Bitset::new(universe);
    for (lineno, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::SetFile(format!("line {}: not a non-negative integer: {t:?}", lineno + 1)));
        }
        let x: usize = t.parse().map_err(|_| Error::SetFile(format!("line {}: integer too large", lineno + 1)))?;
        if x >= universe {
            return Err(Error::ElementOutOfRange { element: x, size: universe });
        }
        bits.insert(x);
    }
    Ok(DenseSet::from_bitset(bits))
}

/// Largest universe accepted from a self-describing run-length header.
pub const MAX_RLE_UNIVERSE: usize = 1 << 28;

/// Parses `RLE1:<M>:<runs>` and returns the declared universe with the set.
pub fn parse_rle(text: &str) -> Result<(usize, DenseSet)> {
    parse_rle_body(text, None)
}

fn parse_rle_body(text: &str, expected: Option<usize>) -> Result<(usize, DenseSet)> {
    let body = text.strip_prefix(RLE_MAGIC).ok_or_else(|| Error::SetFile("missing RLE1: header".into()))?;
    let (m, runs) = body.split_once(':').ok_or_else(|| Error::SetFile("expected RLE1:<M>:<runs>".into()))?;
    let m: usize = m.trim().parse().map_err(|_| Error::SetFile(format!("bad universe size {m:?}")))?;
    match expected {
        Some(u) if u != m => return Err(Error::ModelMismatch { expected: u, found: m }),
        None if m > MAX_RLE_UNIVERSE => return Err(Error::SetFile(format!("universe {m} exceeds {MAX_RLE_UNIVERSE}"))),
        _ => {}
    }
    let mut bits = Bitset::new(m);
    let mut pos = 0usize;
    let runs = runs.trim();
    if !runs.is_empty() {
        for (i, tok) in runs.split(',').enumerate() {
            let len: usize = tok.trim().parse().map_err(|_| Error::SetFile(format!("bad run length {tok:?}")))?;
            let end = pos
                .checked_add(len)
                .filter(|&e| e <= m)
                .ok_or_else(|| Error::SetFile(format!("runs exceed universe size {m}")))?;
            if i % 2 == 1 {
                for x in pos..end {
                    bits.insert(x);
                }
            }
            pos = end;
        }
    }
    Ok((m, DenseSet::from_bitset(bits)))
}

pub fn write_plain(set: &DenseSet) -> String {
    let mut out = String::new();
    for x in set.members() {
        out.push_str(&x.to_string());
        out.push('\n');
    }
    out
}

pub fn write_rle(set: &DenseSet) -> String {
    let mut runs = Vec::new();
    let mut pos = 0usize;
    let n = set.universe();
    while let Some(start) = set.bits().next_member(pos) {
        let mut end = start;
        while end < n && set.contains(end) {
            end += 1;
        }
        runs.push((start - pos).to_string());
        runs.push((end - start).to_string());
        pos = end;
    }
    format!("{RLE_MAGIC}{n}:{}", runs.join(","))
}

pub fn read_set_file(path: &Path, universe: usize) -> Result<DenseSet> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_set_text(&text, universe)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn plain_format() {
        let s = parse_set_text("3\n\n 7 \n0\n", 10).unwrap();
        assert_eq!(s.members().collect::<Vec<_>>(), vec![0, 3, 7]);
        assert_eq!(write_plain(&s), "0\n3\n7\n");
        assert!(matches!(parse_set_text("10\n", 10), Err(Error::ElementOutOfRange { .. })));
        assert!(parse_set_text("-1\n", 10).is_err());
        assert!(parse_set_text("1.5\n", 10).is_err());
    }

    #[test]
    fn rle_format() {
        let s = DenseSet::from_members(12, [0, 1, 2, 5, 11]).unwrap();
        let text = write_rle(&s);
        assert_eq!(text, "RLE1:12:0,3,2,1,5,1");
        assert_eq!(parse_set_text(&text, 12).unwrap(), s);
        assert_eq!(write_rle(&DenseSet::empty(4)), "RLE1:4:");
        assert_eq!(parse_set_text("RLE1:4:", 4).unwrap(), DenseSet::empty(4));
        assert_eq!(parse_set_text("RLE1:4:0,4\n", 4).unwrap(), DenseSet::full(4));
    }

    #[test]
    fn rle_errors() {
        assert!(matches!(parse_set_text("RLE1:5:0,3", 6), Err(Error::ModelMismatch { .. })));
        assert!(parse_set_text("RLE1:5:3,3", 5).is_err());
        assert!(parse_set_text("RLE1:5", 5).is_err());
        assert!(parse_set_text("RLE1:5:1,x", 5).is_err());
        assert!(parse_rle("RLE1:99999999999999999999:").is_err());
        assert!(parse_rle("RLE1:999999999999:").is_err());
        assert_eq!(parse_rle("RLE1:3:1,1").unwrap().0, 3);
    }

    proptest! {
        #[test]
        fn both_formats_round_trip(members in proptest::collection::btree_set(0usize..150, 0..60)) {
            let s = DenseSet::from_members(150, members.iter().copied()).unwrap();
            prop_assert_eq!(&parse_set_text(&write_rle(&s), 150).unwrap(), &s);
            prop_assert_eq!(&parse_set_text(&write_plain(&s), 150).unwrap(), &s);
        }
    }
}
