//! Classical and generalized vincular pattern containment.
//!
//! A pattern of dimension `d'` occurs in a `d`-permutation (`d' <= d`) if
//! some direct projection (an increasing axis subset) has a point subset
//! order-isomorphic to the pattern's body. Vincular adjacency sets force
//! selected consecutive occurrence points to have coordinates differing by
//! exactly one; adjacency is always evaluated on concrete coordinates,
//! never on re-standardized values.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::dperm::{parse_dperm_at, DPermutation, Point};
use crate::perm::ParseError;

/// A pattern: a `d'`-dimensional body plus one adjacency set per axis.
/// All sets empty means a classical pattern.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternLiteral {
    body: DPermutation,
    adjacencies: Vec<BTreeSet<u16>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternError {
    /// The pattern's dimension exceeds the host's.
    DimensionTooLarge { pattern: usize, host: usize },
    /// Adjacency sets malformed: wrong count or a value outside `1..k-1`.
    BadAdjacency(String),
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::DimensionTooLarge { pattern, host } => write!(
                f,
                "pattern dimension {pattern} exceeds host dimension {host}"
            ),
            PatternError::BadAdjacency(why) => write!(f, "bad adjacency sets: {why}"),
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for PatternError {}

impl PatternLiteral {
    pub fn new(body: DPermutation, adjacencies: Vec<BTreeSet<u16>>) -> Result<Self, PatternError> {
        let d = body.dimension();
        let k = body.size();
        if adjacencies.len() != d {
            return Err(PatternError::BadAdjacency(alloc::format!(
                "{} adjacency sets for dimension {d}",
                adjacencies.len()
            )));
        }
        for set in &adjacencies {
            if let Some(&j) = set.iter().find(|&&j| j == 0 || j as usize >= k) {
                return Err(PatternError::BadAdjacency(alloc::format!(
                    "adjacency {j} outside 1..={}",
                    k - 1
                )));
            }
        }
        Ok(PatternLiteral { body, adjacencies })
    }

    /// A pattern with no adjacency constraints.
    pub fn classical(body: DPermutation) -> Self {
        let d = body.dimension();
        PatternLiteral {
            body,
            adjacencies: alloc::vec![BTreeSet::new(); d],
        }
    }

    pub fn body(&self) -> &DPermutation {
        &self.body
    }

    pub fn dimension(&self) -> usize {
        self.body.dimension()
    }

    pub fn size(&self) -> usize {
        self.body.size()
    }

    /// Adjacency set of the 1-based `axis`.
    pub fn adjacency(&self, axis: usize) -> &BTreeSet<u16> {
        &self.adjacencies[axis - 1]
    }

    pub fn adjacencies(&self) -> &[BTreeSet<u16>] {
        &self.adjacencies
    }

    pub fn is_classical(&self) -> bool {
        self.adjacencies.iter().all(|s| s.is_empty())
    }

    /// Key used to order pattern sets: dimension, then size, then literal.
    pub(crate) fn canonical_key(&self) -> (usize, usize, String) {
        (self.dimension(), self.size(), self.to_string())
    }
}

impl From<DPermutation> for PatternLiteral {
    fn from(body: DPermutation) -> Self {
        PatternLiteral::classical(body)
    }
}

impl fmt::Display for PatternLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)?;
        if !self.is_classical() {
            write!(f, "[")?;
            for (i, set) in self.adjacencies.iter().enumerate() {
                if i > 0 {
                    write!(f, ";")?;
                }
                for (j, v) in set.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PatternLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a pattern literal starting at `start`: a `d`-permutation body
/// optionally followed by `[set;set;...]` with one set per axis.
pub(crate) fn parse_pattern_at(
    text: &str,
    start: usize,
) -> Result<(PatternLiteral, usize), ParseError> {
    let (body, mut pos) = parse_dperm_at(text, start)?;
    let bytes = text.as_bytes();
    if bytes.get(pos) != Some(&b'[') {
        return Ok((PatternLiteral::classical(body), pos));
    }
    let bracket = pos;
    pos += 1;
    let mut sets = alloc::vec![BTreeSet::new()];
    loop {
        match bytes.get(pos) {
            Some(b']') => {
                pos += 1;
                break;
            }
            Some(b';') => {
                sets.push(BTreeSet::new());
                pos += 1;
            }
            Some(c) if c.is_ascii_digit() => {
                let num_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let v: u32 = text[num_start..pos]
                    .parse()
                    .map_err(|_| ParseError::new(num_start, "integer too large"))?;
                if v == 0 || v > u16::MAX as u32 {
                    return Err(ParseError::new(num_start, "adjacency out of range"));
                }
                sets.last_mut().unwrap().insert(v as u16);
                if bytes.get(pos) == Some(&b',') {
                    pos += 1;
                    if !bytes.get(pos).is_some_and(|c| c.is_ascii_digit()) {
                        return Err(ParseError::new(pos, "expected an integer"));
                    }
                }
            }
            _ => return Err(ParseError::new(pos, "expected an integer, ';' or ']'")),
        }
    }
    let pat = PatternLiteral::new(body, sets).map_err(|e| ParseError::new(bracket, e.to_string()))?;
    Ok((pat, pos))
}

impl FromStr for PatternLiteral {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let (pat, end) = parse_pattern_at(s, 0)?;
        if end != s.len() {
            return Err(ParseError::new(end, "trailing input"));
        }
        Ok(pat)
    }
}

/// A finite set of patterns, possibly of mixed dimensions, kept sorted by
/// (dimension, size, literal) and deduplicated. Equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PatternSet {
    patterns: Vec<PatternLiteral>,
}

impl PatternSet {
    pub fn new(mut patterns: Vec<PatternLiteral>) -> Self {
        patterns.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        patterns.dedup();
        PatternSet { patterns }
    }

    pub fn singleton(pat: PatternLiteral) -> Self {
        PatternSet {
            patterns: alloc::vec![pat],
        }
    }

    pub fn patterns(&self) -> &[PatternLiteral] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PatternLiteral> {
        self.patterns.iter()
    }

    pub fn union(&self, other: &PatternSet) -> PatternSet {
        let mut all = self.patterns.clone();
        all.extend(other.patterns.iter().cloned());
        PatternSet::new(all)
    }
}

impl FromIterator<PatternLiteral> for PatternSet {
    fn from_iter<T: IntoIterator<Item = PatternLiteral>>(iter: T) -> Self {
        PatternSet::new(iter.into_iter().collect())
    }
}

/// Literal: patterns joined by `,` (e.g. `2413[2;2],3142[2;2]`).
impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for PatternSet {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut patterns = Vec::new();
        let mut pos = 0;
        loop {
            let (pat, end) = parse_pattern_at(s, pos)?;
            patterns.push(pat);
            match s.as_bytes().get(end) {
                None => break,
                Some(b',') => pos = end + 1,
                _ => return Err(ParseError::new(end, "expected ',' or end of input")),
            }
        }
        Ok(PatternSet::new(patterns))
    }
}

/// One occurrence of a pattern: the direct projection used (increasing host
/// axes) and the host diagram points, in increasing order along `axes[0]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Occurrence {
    pub axes: Vec<usize>,
    pub points: Vec<Point>,
}

// ---------------------------------------------------------------------------
// Matching machinery, shared with the counting engine.
// ---------------------------------------------------------------------------

/// Adjacency constraint in x-rank form: the occurrence points with x-ranks
/// `lo` and `hi` (0-based, along the projection's first axis) must satisfy
/// `coord(hi) - coord(lo) == 1` on pattern axis `axis` (0-based).
#[derive(Clone, Debug)]
pub(crate) struct AdjacencyCheck {
    pub axis: usize,
    pub lo: usize,
    pub hi: usize,
}

/// A pattern body flattened into rank tables for the subset DFS.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPattern {
    pub k: usize,
    pub dim: usize,
    /// `val[t][i]`: coordinate on pattern axis `t` of the body point with
    /// x-rank `i` (both 0-based; values are the body's 1-based labels).
    pub val: Vec<Vec<u16>>,
    pub adj: Vec<AdjacencyCheck>,
}

pub(crate) fn compile(pat: &PatternLiteral) -> CompiledPattern {
    let k = pat.size();
    let dim = pat.dimension();
    let mut val = Vec::with_capacity(dim);
    for axis in 1..=dim {
        val.push((1..=k).map(|i| pat.body().axis_value(axis, i)).collect::<Vec<u16>>());
    }
    let mut adj = Vec::new();
    for (t, axis_vals) in val.iter().enumerate() {
        // rank_pos[v-1]: x-rank of the body point whose axis-t coordinate is v
        let mut rank_pos = alloc::vec![0usize; k];
        for (i, &v) in axis_vals.iter().enumerate() {
            rank_pos[v as usize - 1] = i;
        }
        for &j in pat.adjacency(t + 1) {
            adj.push(AdjacencyCheck {
                axis: t,
                lo: rank_pos[j as usize - 1],
                hi: rank_pos[j as usize],
            });
        }
    }
    CompiledPattern { k, dim, val, adj }
}

/// Depth-first occurrence search.
///
/// `coord(id, t)` returns host point `id`'s coordinate on the t-th chosen
/// axis (0-based `t < dim`); `order` lists point ids sorted by `t = 0`.
/// `must_include`, when set, is an index into `order` that every reported
/// occurrence has to use. `on_found` receives the chosen indices into
/// `order` and returns `true` to stop the search; the function returns
/// whether it was stopped.
pub(crate) fn search_occurrences<C, F>(
    coord: &C,
    order: &[usize],
    cp: &CompiledPattern,
    must_include: Option<usize>,
    on_found: &mut F,
) -> bool
where
    C: Fn(usize, usize) -> u16,
    F: FnMut(&[usize]) -> bool,
{
    if order.len() < cp.k {
        return false;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(cp.k);
    dfs(coord, order, cp, must_include, on_found, &mut chosen, 0)
}

fn dfs<C, F>(
    coord: &C,
    order: &[usize],
    cp: &CompiledPattern,
    must_include: Option<usize>,
    on_found: &mut F,
    chosen: &mut Vec<usize>,
    start: usize,
) -> bool
where
    C: Fn(usize, usize) -> u16,
    F: FnMut(&[usize]) -> bool,
{
    let i = chosen.len();
    if i == cp.k {
        return on_found(chosen);
    }
    let needed = cp.k - i - 1;
    for pos in start..order.len() {
        if order.len() - pos - 1 < needed {
            break;
        }
        if let Some(e) = must_include {
            // Once we move past the mandatory point without taking it, no
            // extension can include it any more.
            if pos > e && !chosen.contains(&e) {
                break;
            }
        }
        let id = order[pos];
        let mut ok = true;
        'check: for t in 1..cp.dim {
            let c = coord(id, t);
            for (j, &prev_pos) in chosen.iter().enumerate() {
                let pc = coord(order[prev_pos], t);
                if (c > pc) != (cp.val[t][i] > cp.val[t][j]) {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            for a in &cp.adj {
                if a.lo.max(a.hi) == i {
                    let placed = |rank: usize| -> usize {
                        if rank == i {
                            id
                        } else {
                            order[chosen[rank]]
                        }
                    };
                    let lo_c = coord(placed(a.lo), a.axis);
                    let hi_c = coord(placed(a.hi), a.axis);
                    if hi_c != lo_c + 1 {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if ok {
            chosen.push(pos);
            if dfs(coord, order, cp, must_include, on_found, chosen, pos + 1) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Calls `f` with every increasing subset of `1..=d` of length `len`.
pub(crate) fn for_each_increasing_subset<F: FnMut(&[usize])>(d: usize, len: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(d: usize, len: usize, next: usize, cur: &mut Vec<usize>, f: &mut F) {
        if cur.len() == len {
            f(cur);
            return;
        }
        let remaining = len - cur.len();
        for a in next..=d {
            if d - a + 1 < remaining {
                break;
            }
            cur.push(a);
            rec(d, len, a + 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(len);
    rec(d, len, 1, &mut cur, f);
}

struct HostView {
    /// Flat coordinates, `points[id * d + axis0]`.
    coords: Vec<u16>,
    d: usize,
    n: usize,
}

impl HostView {
    fn new(host: &DPermutation) -> Self {
        let d = host.dimension();
        let n = host.size();
        let mut coords = Vec::with_capacity(n * d);
        for i in 1..=n {
            for axis in 1..=d {
                coords.push(host.axis_value(axis, i));
            }
        }
        HostView { coords, d, n }
    }

    fn coord(&self, id: usize, axis0: usize) -> u16 {
        self.coords[id * self.d + axis0]
    }

    /// Point ids sorted by the given 0-based axis.
    fn order_by(&self, axis0: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&id| self.coord(id, axis0));
        order
    }
}

/// Does `host` contain `pat` in some direct projection?
pub fn contains(host: &DPermutation, pat: &PatternLiteral) -> Result<bool, PatternError> {
    let d = host.dimension();
    let dp = pat.dimension();
    if dp > d {
        return Err(PatternError::DimensionTooLarge { pattern: dp, host: d });
    }
    if pat.size() > host.size() {
        return Ok(false);
    }
    let view = HostView::new(host);
    let cp = compile(pat);
    let mut found = false;
    for_each_increasing_subset(d, dp, &mut |axes| {
        if found {
            return;
        }
        let order = view.order_by(axes[0] - 1);
        let coord = |id: usize, t: usize| view.coord(id, axes[t] - 1);
        if search_occurrences(&coord, &order, &cp, None, &mut |_| true) {
            found = true;
        }
    });
    Ok(found)
}

/// All occurrences of `pat` in `host`, across every direct projection.
pub fn occurrences(host: &DPermutation, pat: &PatternLiteral) -> Result<Vec<Occurrence>, PatternError> {
    let d = host.dimension();
    let dp = pat.dimension();
    if dp > d {
        return Err(PatternError::DimensionTooLarge { pattern: dp, host: d });
    }
    let mut result = Vec::new();
    if pat.size() > host.size() {
        return Ok(result);
    }
    let diagram = host.diagram();
    let view = HostView::new(host);
    let cp = compile(pat);
    for_each_increasing_subset(d, dp, &mut |axes| {
        let order = view.order_by(axes[0] - 1);
        let coord = |id: usize, t: usize| view.coord(id, axes[t] - 1);
        search_occurrences(&coord, &order, &cp, None, &mut |chosen| {
            result.push(Occurrence {
                axes: axes.to_vec(),
                points: chosen.iter().map(|&pos| diagram[order[pos]].clone()).collect(),
            });
            false
        });
    });
    Ok(result)
}

/// Does `host` avoid every pattern in the set? Patterns of dimension larger
/// than the host's cannot occur and are skipped.
pub fn avoids_all(host: &DPermutation, ps: &PatternSet) -> bool {
    ps.iter()
        .filter(|p| p.dimension() <= host.dimension())
        .all(|p| !contains(host, p).expect("dimension checked"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(s: &str) -> DPermutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> PatternLiteral {
        s.parse().unwrap()
    }

    #[test]
    fn grammar_examples() {
        let p = pat("2413[2;2]");
        assert_eq!(p.body(), &dp("2413"));
        assert_eq!(p.adjacency(1).iter().copied().collect::<Vec<_>>(), [2]);
        assert_eq!(p.adjacency(2).iter().copied().collect::<Vec<_>>(), [2]);

        let p = pat("132/213");
        assert!(p.is_classical());
        assert_eq!(p.dimension(), 3);

        let p = pat("312/213[1;2;]");
        assert_eq!(p.adjacency(1).iter().copied().collect::<Vec<_>>(), [1]);
        assert_eq!(p.adjacency(2).iter().copied().collect::<Vec<_>>(), [2]);
        assert!(p.adjacency(3).is_empty());
    }

    #[test]
    fn literal_round_trip() {
        for s in ["2413[2;2]", "132/213", "312/213[1;2;]", "21[;1]", "2413[1,2;]"] {
            assert_eq!(pat(s).to_string().parse::<PatternLiteral>().unwrap(), pat(s));
        }
        // canonical formatting
        assert_eq!(pat("132/213").to_string(), "132/213");
        assert_eq!(pat("312/213[1;2;]").to_string(), "312/213[1;2;]");
    }

    #[test]
    fn parse_rejects_bad_adjacency() {
        // the set count must equal the dimension
        assert!("2413[2]".parse::<PatternLiteral>().is_err());
        assert!("2413[2;2;2]".parse::<PatternLiteral>().is_err());
        // values within 1..k-1
        assert!("2413[4;]".parse::<PatternLiteral>().is_err());
        assert!("21[0;]".parse::<PatternLiteral>().is_err());
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&dp("1432/3124"), &pat("132/213")).unwrap());
        assert!(contains(&dp("1432/3124"), &pat("231")).unwrap());
        // 231 and 312 share no common ascent position, so the pair avoids
        // 12/12 even though each component contains 12.
        assert!(!contains(&dp("231/312"), &pat("12/12")).unwrap());
        assert!(contains(&dp("2413"), &pat("2413[2;2]")).unwrap());
    }

    #[test]
    fn containment_dimension_error() {
        assert_eq!(
            contains(&dp("2413"), &pat("12/12")),
            Err(PatternError::DimensionTooLarge { pattern: 3, host: 2 })
        );
    }

    #[test]
    fn occurrence_examples() {
        let occs = occurrences(&DPermutation::identity(3, 2), &pat("12")).unwrap();
        assert_eq!(occs.len(), 3);

        let occs = occurrences(&dp("1432/3124"), &pat("132/213")).unwrap();
        let target: Vec<Point> = [
            Point::new(alloc::vec![1, 1, 3]),
            Point::new(alloc::vec![2, 4, 1]),
            Point::new(alloc::vec![4, 2, 4]),
        ]
        .to_vec();
        assert!(occs.iter().any(|o| o.points == target));

        assert!(occurrences(&dp("12"), &pat("21")).unwrap().is_empty());
    }

    #[test]
    fn contains_iff_occurrences_nonempty() {
        for host in ["1432/3124", "132/213", "2413", "42135"] {
            for p in ["12", "21", "132", "12/12", "2413[2;2]"] {
                let host = dp(host);
                let p = pat(p);
                if p.dimension() > host.dimension() {
                    continue;
                }
                assert_eq!(
                    contains(&host, &p).unwrap(),
                    !occurrences(&host, &p).unwrap().is_empty()
                );
            }
        }
    }

    #[test]
    fn avoids_all_examples() {
        for n in 1..=5 {
            assert!(avoids_all(
                &DPermutation::identity(n, 3),
                &PatternSet::singleton(pat("21/21"))
            ));
        }
        assert!(avoids_all(&dp("231/312"), &PatternSet::singleton(pat("12/12"))));
        let baxter2d: PatternSet = "2413[2;2],3142[2;2]".parse().unwrap();
        assert!(!avoids_all(&dp("2413"), &baxter2d));
        // higher-dimensional patterns are skipped, not errors
        assert!(avoids_all(&dp("2413"), &PatternSet::singleton(pat("12/12"))));
    }

    #[test]
    fn vincular_adjacency_is_concrete() {
        // 2-41-3 ~ 2413[2;]: positions of the "41" must be adjacent columns.
        let v = pat("2413[2;]");
        assert!(contains(&dp("2413"), &v).unwrap());
        // 25143 contains 2413 as a classical pattern (2,5,1,4 -> no; 2,5,1,3
        // -> 2413 yes at columns 1,2,3,5) but every "41" pair of an
        // occurrence sits on non-adjacent columns or adjacent ones; check
        // against the definition directly.
        let host = dp("25143");
        assert!(contains(&host, &pat("2413")).unwrap());
        assert!(contains(&host, &v).unwrap()); // columns 1,2,3,5: middle pair adjacent
        // 25314 contains 2413 only at columns 1,2,4,5, whose middle pair is
        // two columns apart, so the vincular form does not occur.
        let host = dp("25314");
        assert!(contains(&host, &pat("2413")).unwrap());
        assert!(!contains(&host, &pat("2413[2;]")).unwrap());
    }

    #[test]
    fn pattern_set_literal_and_order() {
        let ps: PatternSet = "3142[2;2],2413[2;2]".parse().unwrap();
        assert_eq!(ps.to_string(), "2413[2;2],3142[2;2]");
        assert_eq!(ps.len(), 2);
        let again: PatternSet = ps.to_string().parse().unwrap();
        assert_eq!(ps, again);
        // mixed dimensions sort 2-dim first
        let ps: PatternSet = "132/213,21".parse().unwrap();
        assert_eq!(ps.to_string(), "21,132/213");
    }
}
