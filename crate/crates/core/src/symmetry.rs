//! Hypercube symmetries (signed permutation matrices), their action on
//! `d`-permutations and pattern sets, and trivial Wilf equivalence.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::dperm::{DPermError, DPermutation, Sign};
use crate::pattern::{for_each_increasing_subset, PatternLiteral, PatternSet};
use crate::perm::{ParseError, Permutation};

/// An element of `d`-Sym: a signed permutation matrix. Image axis `r` reads
/// source axis `source_axis(r)`, negated when `sign(r)` is `-`. Applied to a
/// diagram it permutes axes and reverses the negated ones; the image of a
/// full diagram is again a diagram, so no re-standardization is needed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedAxisMap {
    /// 0-based: row `r` has its non-zero entry in column `source[r]`.
    source: Vec<usize>,
    negate: Vec<bool>,
}

impl SignedAxisMap {
    pub fn identity(d: usize) -> Self {
        SignedAxisMap {
            source: (0..d).collect(),
            negate: alloc::vec![false; d],
        }
    }

    /// Builds from the CLI literal parts: `axis_perm` maps image axis `r`
    /// to its source axis, and `signs[r]` is the sign of image axis `r`.
    pub fn from_parts(axis_perm: &Permutation, signs: &[Sign]) -> Result<Self, DPermError> {
        if axis_perm.size() != signs.len() {
            return Err(DPermError::BadAxes(alloc::format!(
                "{} signs for {} axes",
                signs.len(),
                axis_perm.size()
            )));
        }
        Ok(SignedAxisMap {
            source: axis_perm.values().iter().map(|&v| v as usize - 1).collect(),
            negate: signs.iter().map(|&s| s == Sign::Minus).collect(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.source.len()
    }

    /// 1-based source axis of image axis `r` (1-based).
    pub fn source_axis(&self, r: usize) -> usize {
        self.source[r - 1] + 1
    }

    /// Sign of image axis `r` (1-based).
    pub fn sign(&self, r: usize) -> Sign {
        if self.negate[r - 1] {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// Matrix entry in row `r`, column `c` (1-based): -1, 0 or 1.
    pub fn entry(&self, r: usize, c: usize) -> i8 {
        if self.source[r - 1] != c - 1 {
            0
        } else if self.negate[r - 1] {
            -1
        } else {
            1
        }
    }

    /// `self o other`: apply `other`, then `self`.
    pub fn compose(&self, other: &SignedAxisMap) -> Result<SignedAxisMap, DPermError> {
        let d = self.dimension();
        if other.dimension() != d {
            return Err(DPermError::DimensionMismatch {
                left: d,
                right: other.dimension(),
            });
        }
        let source = self.source.iter().map(|&m| other.source[m]).collect();
        let negate = self
            .negate
            .iter()
            .zip(&self.source)
            .map(|(&n, &m)| n ^ other.negate[m])
            .collect();
        Ok(SignedAxisMap { source, negate })
    }

    pub fn inverse(&self) -> SignedAxisMap {
        let d = self.dimension();
        let mut source = alloc::vec![0usize; d];
        let mut negate = alloc::vec![false; d];
        for r in 0..d {
            source[self.source[r]] = r;
            negate[self.source[r]] = self.negate[r];
        }
        SignedAxisMap { source, negate }
    }

    /// The image `d`-permutation: coordinates are permuted by rows and
    /// negated coordinates are reflected (`v -> n+1-v`).
    pub fn apply(&self, p: &DPermutation) -> Result<DPermutation, DPermError> {
        let d = self.dimension();
        if p.dimension() != d {
            return Err(DPermError::DimensionMismatch {
                left: d,
                right: p.dimension(),
            });
        }
        let n = p.size();
        let flip = |v: u16| (n as u16) + 1 - v;
        // components[a][x-1] = image coordinate on axis a+2 of the point
        // whose image x-coordinate is x.
        let mut components = alloc::vec![alloc::vec![0u16; n]; d - 1];
        for i in 1..=n {
            let image_coord = |r: usize| {
                let v = p.axis_value(self.source[r] + 1, i);
                if self.negate[r] {
                    flip(v)
                } else {
                    v
                }
            };
            let x = image_coord(0) as usize;
            for (a, row) in components.iter_mut().enumerate() {
                row[x - 1] = image_coord(a + 1);
            }
        }
        let components = components
            .into_iter()
            .map(|values| Permutation::from_values(values).expect("axis bijection"))
            .collect();
        DPermutation::from_components(components)
    }

    /// Transports a vincular pattern: the body is mapped like a diagram and
    /// the adjacency set of a source axis moves to its image axis, reflected
    /// `j -> k-j` when that axis is negated.
    pub fn apply_pattern(&self, pat: &PatternLiteral) -> Result<PatternLiteral, DPermError> {
        let body = self.apply(pat.body())?;
        let k = pat.size() as u16;
        let d = self.dimension();
        let mut adjacencies = alloc::vec![BTreeSet::new(); d];
        for (r, adj) in adjacencies.iter_mut().enumerate() {
            let src = self.source[r] + 1;
            for &j in pat.adjacency(src) {
                adj.insert(if self.negate[r] { k - j } else { j });
            }
        }
        PatternLiteral::new(body, adjacencies)
            .map_err(|e| DPermError::BadPointSet(e.to_string()))
    }

    /// Keeps the rows listed in `axes` (1-based, increasing) and the columns
    /// holding their non-zero entries, giving an element of `d'`-Sym.
    pub fn restrict(&self, axes: &[usize]) -> Result<SignedAxisMap, DPermError> {
        let d = self.dimension();
        for (i, &a) in axes.iter().enumerate() {
            if a == 0 || a > d {
                return Err(DPermError::BadAxes(alloc::format!("axis {a} outside 1..={d}")));
            }
            if i > 0 && axes[i - 1] >= a {
                return Err(DPermError::BadAxes("axes must be increasing".to_string()));
            }
        }
        let mut cols: Vec<usize> = axes.iter().map(|&a| self.source[a - 1]).collect();
        cols.sort_unstable();
        let source = axes
            .iter()
            .map(|&a| cols.binary_search(&self.source[a - 1]).unwrap())
            .collect();
        let negate = axes.iter().map(|&a| self.negate[a - 1]).collect();
        Ok(SignedAxisMap { source, negate })
    }
}

/// Literal `perm:signs`, e.g. `312:+-+`: image axis `r` reads source axis
/// `perm(r)` with the `r`-th sign.
impl fmt::Display for SignedAxisMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm = Permutation::from_values(self.source.iter().map(|&c| c as u16 + 1).collect())
            .expect("rows form a permutation");
        write!(f, "{perm}:")?;
        for &n in &self.negate {
            write!(f, "{}", if n { '-' } else { '+' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedAxisMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SignedAxisMap {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let colon = s
            .find(':')
            .ok_or_else(|| ParseError::new(s.len(), "expected ':' before the sign word"))?;
        let perm: Permutation = s[..colon].parse()?;
        let mut signs = Vec::new();
        for (i, c) in s[colon + 1..].char_indices() {
            match c {
                '+' => signs.push(Sign::Plus),
                '-' => signs.push(Sign::Minus),
                _ => return Err(ParseError::new(colon + 1 + i, "expected '+' or '-'")),
            }
        }
        SignedAxisMap::from_parts(&perm, &signs).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

/// All `2^d * d!` elements of `d`-Sym, in a fixed deterministic order.
pub fn all_symmetries(d: usize) -> Vec<SignedAxisMap> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for c in 0..d {
            if !cur.contains(&c) {
                cur.push(c);
                rec(d, cur, out);
                cur.pop();
            }
        }
    }
    rec(d, &mut cur, &mut perms);
    let mut out = Vec::with_capacity(perms.len() << d);
    for p in &perms {
        for mask in 0..(1u32 << d) {
            out.push(SignedAxisMap {
                source: p.clone(),
                negate: (0..d).map(|r| mask >> r & 1 == 1).collect(),
            });
        }
    }
    out
}

/// `Sym(p)`: the distinct images of `p` under all hypercube symmetries.
pub fn orbit(p: &DPermutation) -> Vec<DPermutation> {
    let mut set = BTreeSet::new();
    for s in all_symmetries(p.dimension()) {
        set.insert(s.apply(p).expect("matching dimension"));
    }
    set.into_iter().collect()
}

/// The distinct images of a pattern under all symmetries of its own
/// dimension, as a pattern set.
pub fn pattern_orbit(pat: &PatternLiteral) -> PatternSet {
    all_symmetries(pat.dimension())
        .iter()
        .map(|s| s.apply_pattern(pat).expect("matching dimension"))
        .collect()
}

/// The transport map: the union over every increasing axis subset of each
/// pattern's image under the corresponding restriction of `s`. This is the
/// pattern set whose containment in `s(p)` is implied by containment of the
/// original set in `p`.
pub fn transport(s: &SignedAxisMap, ps: &PatternSet) -> PatternSet {
    let d = s.dimension();
    let mut out = Vec::new();
    for pat in ps.iter() {
        let dp = pat.dimension();
        for_each_increasing_subset(d, dp, &mut |axes| {
            let r = s.restrict(axes).expect("axes are valid");
            out.push(r.apply_pattern(pat).expect("matching dimension"));
        });
    }
    PatternSet::new(out)
}

/// The trivial `d`-Wilf-equivalence class of a pattern set: all sets `T`
/// such that some symmetry transports `ps` onto `T` and its inverse
/// transports `T` back onto `ps`. The two-way condition matters because
/// transport can lose information on lower-dimensional patterns.
pub fn twe_class(ps: &PatternSet, d: usize) -> Vec<PatternSet> {
    let mut out = BTreeSet::new();
    for s in all_symmetries(d) {
        let t = transport(&s, ps);
        if transport(&s.inverse(), &t) == *ps {
            out.insert(t);
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(s: &str) -> DPermutation {
        s.parse().unwrap()
    }

    fn sym(s: &str) -> SignedAxisMap {
        s.parse().unwrap()
    }

    fn ps(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    #[test]
    fn symmetry_counts() {
        assert_eq!(all_symmetries(1).len(), 2);
        assert_eq!(all_symmetries(2).len(), 8);
        assert_eq!(all_symmetries(3).len(), 48);
    }

    #[test]
    fn apply_examples() {
        let id = SignedAxisMap::identity(3);
        assert_eq!(id.apply(&dp("132/213")).unwrap(), dp("132/213"));
        // reverse = negate the x axis
        assert_eq!(sym("12:-+").apply(&dp("312")).unwrap(), dp("213"));
        // swapping the two axes inverts
        assert_eq!(sym("21:++").apply(&dp("3124")).unwrap(), dp("2314"));
    }

    #[test]
    fn compose_matches_action() {
        let p = dp("1432/3124");
        for a in ["231:+-+", "312:--+", "123:+++", "321:---"] {
            for b in ["213:++-", "132:-++"] {
                let (a, b) = (sym(a), sym(b));
                let via_action = a.apply(&b.apply(&p).unwrap()).unwrap();
                let via_compose = a.compose(&b).unwrap().apply(&p).unwrap();
                assert_eq!(via_action, via_compose);
                let inv = a.inverse();
                assert_eq!(inv.compose(&a).unwrap(), SignedAxisMap::identity(3));
            }
        }
    }

    #[test]
    fn restrict_worked_example() {
        // rows ((0,0,-1),(0,-1,0),(1,0,0)), keep rows 1 and 3
        let s = sym("321:--+");
        assert_eq!(s.entry(1, 3), -1);
        assert_eq!(s.entry(3, 1), 1);
        let r = s.restrict(&[1, 3]).unwrap();
        assert_eq!(r, sym("21:-+"));
        assert_eq!(r.entry(1, 2), -1);
        assert_eq!(r.entry(2, 1), 1);

        let id = SignedAxisMap::identity(3);
        assert_eq!(id.restrict(&[1, 3]).unwrap(), SignedAxisMap::identity(2));
        assert_eq!(s.restrict(&[1, 2, 3]).unwrap(), s);
        assert!(s.restrict(&[3, 1]).is_err());
    }

    #[test]
    fn transport_examples() {
        // full-dimension patterns transport to their plain image
        let id = SignedAxisMap::identity(3);
        assert_eq!(transport(&id, &ps("132/213")), ps("132/213"));
        // a z-reflection turns 12 into 21 on the subsets touching z
        assert_eq!(transport(&sym("123:++-"), &ps("12")), ps("12,21"));
        // the identity transports every set to itself
        assert_eq!(transport(&id, &ps("12")), ps("12"));
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&dp("132/213")).len(), 8);
        assert_eq!(orbit(&dp("123/132")).len(), 24);
        assert_eq!(orbit(&dp("123/123")).len(), 4);
        for p in ["12/12", "132/213", "123/132"] {
            assert_eq!(48 % orbit(&dp(p)).len(), 0);
        }
    }

    #[test]
    fn twe_class_sizes() {
        assert_eq!(twe_class(&ps("12/12"), 3).len(), 4);
        assert_eq!(twe_class(&ps("123"), 3).len(), 1);
        assert_eq!(twe_class(&ps("132"), 3).len(), 2);
        assert_eq!(twe_class(&ps("12"), 3).len(), 1);
        assert_eq!(twe_class(&ps("21"), 3).len(), 1);
    }

    #[test]
    fn literal_round_trip() {
        for s in ["312:+-+", "21:-+", "1234:++--"] {
            assert_eq!(sym(s).to_string(), s);
        }
    }
}
