//! Exact rationals and their textual form.
//!
//! Rationals are always written as `p/q` (so `1` prints as `1/1`) and read
//! from `p/q`, a plain integer, or a finite decimal such as `0.3`.

use num_rational::Ratio;

pub type Rational = Ratio<i64>;

pub fn to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, `n`, or a decimal `[-]i.f` exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = parse_int(p.trim())?;
        let q: i64 = parse_int(q.trim())?;
        if q == 0 {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let (neg, int) = match int.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int),
        };
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if !int.bytes().all(|b| b.is_ascii_digit()) || (int.is_empty() && frac.is_empty()) {
            return None;
        }
        let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let num = int.checked_mul(den)?.checked_add(frac.parse::<i64>().ok()?)?;
        let r = Rational::new(num, den);
        return Some(if neg { -r } else { r });
    }
    Some(Rational::from_integer(parse_int(t)?))
}

fn parse_int(t: &str) -> Option<i64> {
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

/// `lhs < rhs` for `lhs = a/b`, compared without overflow.
pub(crate) fn lt(a: i128, b: i128, r: &Rational) -> bool {
    a * (*r.denom() as i128) < (*r.numer() as i128) * b
}

/// serde adapter writing rationals as `"p/q"` strings.
pub mod serde_pq {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| de::Error::custom(format!("bad rational {text:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("1/2"), Some(Rational::new(1, 2)));
        assert_eq!(parse_rational(" 2/4 "), Some(Rational::new(1, 2)));
        assert_eq!(parse_rational("0.3"), Some(Rational::new(3, 10)));
        assert_eq!(parse_rational("-1.25"), Some(Rational::new(-5, 4)));
        assert_eq!(parse_rational("7"), Some(Rational::from_integer(7)));
        assert_eq!(parse_rational(".5"), Some(Rational::new(1, 2)));
        for bad in ["", "1/0", "a", "1.", "1/2/3", "--1", "1.-2"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn always_prints_pq() {
        assert_eq!(to_pq(&Rational::from_integer(1)), "1/1");
        assert_eq!(to_pq(&Rational::new(9, 256)), "9/256");
    }
}
