//! Plain permutations in one-line notation.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// A permutation of `{1..n}` in one-line notation, `n >= 1`.
///
/// Values are 1-based throughout, matching the usual combinatorial
/// convention: `value(i)` is the image of position `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u16>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    /// The value sequence is not a bijection of `{1..n}`.
    NotPermutation(String),
    /// Two permutations that must have equal sizes do not.
    SizeMismatch { left: usize, right: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotPermutation(why) => write!(f, "not a permutation: {why}"),
            PermError::SizeMismatch { left, right } => {
                write!(f, "size mismatch: {left} vs {right}")
            }
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for PermError {}

/// A syntax error with the byte position where parsing failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub(crate) fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.pos, self.msg)
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for ParseError {}

impl Permutation {
    /// Builds a permutation from one-line notation, validating that the
    /// values are a bijection of `{1..n}`.
    pub fn from_values(values: Vec<u16>) -> Result<Self, PermError> {
        if values.is_empty() {
            return Err(PermError::NotPermutation("empty sequence".to_string()));
        }
        let n = values.len();
        let mut seen = alloc::vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(PermError::NotPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v as usize - 1] {
                return Err(PermError::NotPermutation(format!("value {v} repeats")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u16).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// The image of the 1-based position `i`.
    pub fn value(&self, i: usize) -> u16 {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[u16] {
        &self.values
    }

    /// The inverse permutation: `invert(p).value(p.value(i)) == i`.
    pub fn invert(&self) -> Self {
        let mut inv = alloc::vec![0u16; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u16;
        }
        Permutation { values: inv }
    }

    /// Functional composition: `compose(p, q)(i) = p(q(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, PermError> {
        if self.size() != other.size() {
            return Err(PermError::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let values = other
            .values
            .iter()
            .map(|&v| self.values[v as usize - 1])
            .collect();
        Ok(Permutation { values })
    }

    /// `rev(p)(i) = p(n - i + 1)`: the one-line notation read backwards.
    pub fn reverse(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// The next permutation in lexicographic order, if any.
    pub fn lex_successor(&self) -> Option<Permutation> {
        let mut values = self.values.clone();
        if next_permutation(&mut values) {
            Some(Permutation { values })
        } else {
            None
        }
    }
}

/// In-place lexicographic successor; returns false at the last permutation.
pub(crate) fn next_permutation(values: &mut [u16]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One-line literal: a digit string for `n <= 9`, a parenthesized comma
/// list otherwise (e.g. `3124` or `(10,3,1,2)`).
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 9 {
            for &v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "(")?;
            for (i, &v) in self.values.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")
        }
    }
}

/// Parses a permutation literal from `text` starting at byte `start`,
/// returning the value and the byte position just past it.
pub(crate) fn parse_perm_at(text: &str, start: usize) -> Result<(Permutation, usize), ParseError> {
    let bytes = text.as_bytes();
    if start >= bytes.len() {
        return Err(ParseError::new(start, "expected a permutation"));
    }
    if bytes[start] == b'(' {
        let mut values = Vec::new();
        let mut pos = start + 1;
        loop {
            let num_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == num_start {
                return Err(ParseError::new(pos, "expected an integer"));
            }
            let v: u32 = text[num_start..pos]
                .parse()
                .map_err(|_| ParseError::new(num_start, "integer too large"))?;
            if v == 0 || v > u16::MAX as u32 {
                return Err(ParseError::new(num_start, "value out of range"));
            }
            values.push(v as u16);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b')') => {
                    pos += 1;
                    let perm = Permutation::from_values(values)
                        .map_err(|e| ParseError::new(start, e.to_string()))?;
                    return Ok((perm, pos));
                }
                _ => return Err(ParseError::new(pos, "expected ',' or ')'")),
            }
        }
    } else {
        let mut values = Vec::new();
        let mut pos = start;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            let d = bytes[pos] - b'0';
            if d == 0 {
                return Err(ParseError::new(pos, "digit 0 is not a permutation value"));
            }
            values.push(d as u16);
            pos += 1;
        }
        if values.is_empty() {
            return Err(ParseError::new(start, "expected a permutation"));
        }
        let perm =
            Permutation::from_values(values).map_err(|e| ParseError::new(start, e.to_string()))?;
        Ok((perm, pos))
    }
}

impl FromStr for Permutation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let (perm, end) = parse_perm_at(s, 0)?;
        if end != s.len() {
            return Err(ParseError::new(end, "trailing input"));
        }
        Ok(perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Permutation::identity(4).invert(), Permutation::identity(4));
        assert_eq!(p("3124").invert(), p("2314"));
        assert_eq!(p("1432").invert(), p("1432"));
    }

    #[test]
    fn invert_composes_to_identity() {
        for s in ["1", "21", "3124", "2413", "564132897"] {
            let q = p(s);
            assert_eq!(q.compose(&q.invert()).unwrap(), Permutation::identity(q.size()));
            assert_eq!(q.invert().compose(&q).unwrap(), Permutation::identity(q.size()));
        }
    }

    #[test]
    fn compose_examples() {
        assert_eq!(Permutation::identity(4).compose(&p("3124")).unwrap(), p("3124"));
        assert_eq!(p("3124").compose(&p("1432").invert()).unwrap(), p("3421"));
        // Fig-style projection onto the (y,z) plane of a 3-permutation.
        assert_eq!(
            p("156243").compose(&p("342651").invert()).unwrap(),
            p("361542")
        );
    }

    #[test]
    fn compose_size_mismatch() {
        assert_eq!(
            p("12").compose(&p("123")),
            Err(PermError::SizeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_values(alloc::vec![1, 1]).is_err());
        assert!(Permutation::from_values(alloc::vec![2, 3]).is_err());
        assert!(Permutation::from_values(alloc::vec![]).is_err());
    }

    #[test]
    fn literal_round_trip() {
        for s in ["1", "3124", "(10,3,1,2,4,5,6,7,8,9)"] {
            let q = p(s);
            assert_eq!(q.to_string(), s);
            assert_eq!(q.to_string().parse::<Permutation>().unwrap(), q);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = "12x4".parse::<Permutation>().unwrap_err();
        assert_eq!(err.pos, 2);
        let err = "(3,".parse::<Permutation>().unwrap_err();
        assert_eq!(err.pos, 3);
        assert!("31".parse::<Permutation>().is_err());
    }
}
