//! Slices, well-sliced and Baxter `d`-permutations, the vincular
//! characterization, and the anti-/complete-Baxter constructions.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::dperm::{
    for_each_dpermutation, standardize, DPermutation, Direction, Point, Sign,
};
use crate::pattern::{self, PatternLiteral, PatternSet};
use crate::perm::Permutation;
use crate::symmetry;

/// The box spanned by two diagram points that are adjacent (differ by one)
/// on at least one axis. `types` lists every such axis; the direction is
/// the sign word of `high - low` with the endpoints ordered by x, so its
/// first sign is always `+`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Slice {
    low: Point,
    high: Point,
    types: Vec<usize>,
    direction: Direction,
}

impl Slice {
    pub fn low(&self) -> &Point {
        &self.low
    }

    pub fn high(&self) -> &Point {
        &self.high
    }

    /// Adjacency axes, 1-based, increasing.
    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn has_type(&self, t: usize) -> bool {
        self.types.contains(&t)
    }

    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    /// Closed interval `[min, max]` covered on `axis` (1-based).
    pub fn interval(&self, axis: usize) -> (u16, u16) {
        let (a, b) = (self.low.coord(axis), self.high.coord(axis));
        (a.min(b), a.max(b))
    }

    /// Strictly positive overlap on every axis; corner or edge contact does
    /// not count. Every slice intersects itself.
    pub fn intersects(&self, other: &Slice) -> bool {
        let d = self.low.dimension();
        for axis in 1..=d {
            let (a0, a1) = self.interval(axis);
            let (b0, b1) = other.interval(axis);
            if a0.max(b0) >= a1.min(b1) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}-{:?} types {:?} dir {}",
            self.low, self.high, self.types, self.direction
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaxterError {
    NotBaxter,
    NotWellSliced,
    /// The slice passed to `intersecting_cell` is not of type 1.
    NotTypeOne,
    /// Some type has no unique intersecting slice (host not well-sliced).
    NoUniqueIntersector { slice_type: usize, found: usize },
    /// Sizes below 2 have no cells.
    TooSmall,
    /// The enumeration space exceeds the node limit.
    ScaleGuardExceeded { bound: u128, limit: u64 },
}

impl fmt::Display for BaxterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaxterError::NotBaxter => write!(f, "not a Baxter d-permutation"),
            BaxterError::NotWellSliced => write!(f, "not well-sliced"),
            BaxterError::NotTypeOne => write!(f, "slice is not of type 1"),
            BaxterError::NoUniqueIntersector { slice_type, found } => write!(
                f,
                "expected exactly one intersecting slice of type {slice_type}, found {found}"
            ),
            BaxterError::TooSmall => write!(f, "size must be at least 2"),
            BaxterError::ScaleGuardExceeded { bound, limit } => {
                write!(f, "job needs {bound} candidates, over the limit {limit}")
            }
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for BaxterError {}

/// One slice per unordered pair of adjacent diagram points, carrying every
/// axis on which the pair is adjacent.
pub fn slices(p: &DPermutation) -> Vec<Slice> {
    let d = p.dimension();
    let points = p.diagram();
    let n = points.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (low, high) = (&points[i], &points[j]);
            let mut types = Vec::new();
            for axis in 1..=d {
                let (a, b) = (low.coord(axis), high.coord(axis));
                if a.abs_diff(b) == 1 {
                    types.push(axis);
                }
            }
            if types.is_empty() {
                continue;
            }
            let signs = (1..=d)
                .map(|axis| {
                    if high.coord(axis) > low.coord(axis) {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect();
            out.push(Slice {
                low: low.clone(),
                high: high.clone(),
                types,
                direction: Direction::new(signs).expect("x-ordered endpoints"),
            });
        }
    }
    out
}

/// Each slice must intersect exactly one slice of every type (a slice
/// counts as its own intersector for its own types), and all intersecting
/// pairs must share the same direction.
pub fn is_well_sliced(p: &DPermutation) -> bool {
    let d = p.dimension();
    let sl = slices(p);
    for s in &sl {
        let mut per_type = alloc::vec![0usize; d];
        for t in &sl {
            if s.intersects(t) {
                if s.direction != t.direction {
                    return false;
                }
                for &ty in &t.types {
                    per_type[ty - 1] += 1;
                }
            }
        }
        if per_type.iter().any(|&c| c != 1) {
            return false;
        }
    }
    true
}

/// Baxter: every direct projection of dimension 2 and 3 is well-sliced
/// (projections of those dimensions are enough; larger ones follow).
pub fn is_baxter(p: &DPermutation) -> bool {
    let d = p.dimension();
    for dim in 2..=d.min(3) {
        let mut ok = true;
        pattern::for_each_increasing_subset(d, dim, &mut |axes| {
            if ok && !is_well_sliced(&p.project(axes).expect("valid axes")) {
                ok = false;
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

/// The two vincular seeds whose occurrences witness crossing slices in the
/// plane, closed under the 8 plane symmetries.
const LIST_A: [&str; 2] = ["2413[2;2]", "3142[2;2]"];

/// The 24 size-3 three-dimensional forbidden patterns (a missing slice
/// intersection where the witnessing points collapse to three).
const LIST_B: [&str; 24] = [
    "312/213[1;2;]",
    "312/231[1;2;]",
    "132/213[1;1;]",
    "132/231[1;1;]",
    "213/312[2;2;]",
    "213/132[2;2;]",
    "231/312[2;1;]",
    "231/132[2;1;]",
    "213/312[1;;2]",
    "213/132[1;;1]",
    "231/312[1;;2]",
    "231/132[1;;1]",
    "312/213[2;;2]",
    "312/231[2;;1]",
    "132/213[2;;2]",
    "132/231[2;;1]",
    "213/132[;1;2]",
    "213/312[;1;1]",
    "231/132[;2;2]",
    "231/312[;2;1]",
    "312/231[;1;2]",
    "312/213[;1;1]",
    "132/231[;2;2]",
    "132/213[;2;1]",
];

/// The symmetry class of (2143,1423)[{2};{2};] (four points, a missing
/// intersection).
const LIST_C: [&str; 24] = [
    "3241/2143[2;;2]",
    "3412/2314[2;2;]",
    "1423/3412[2;;2]",
    "2314/2143[2;;2]",
    "1342/3124[;2;2]",
    "3124/1342[;2;2]",
    "1342/2431[;2;2]",
    "3241/3412[2;;2]",
    "4132/3412[2;;2]",
    "2431/4213[;2;2]",
    "2143/3241[2;2;]",
    "4213/2431[;2;2]",
    "3412/3241[2;2;]",
    "3412/1423[2;2;]",
    "4213/3124[;2;2]",
    "2143/4132[2;2;]",
    "3124/4213[;2;2]",
    "2431/1342[;2;2]",
    "2314/3412[2;;2]",
    "2143/1423[2;2;]",
    "1423/2143[2;;2]",
    "4132/2143[2;;2]",
    "2143/2314[2;2;]",
    "3412/4132[2;2;]",
];

/// The symmetry class of (3412,1432)[{2};{2};] (four points, a crossing of
/// different directions visible only in three dimensions).
const LIST_D: [&str; 24] = [
    "2341/4123[;2;2]",
    "2143/3214[2;2;]",
    "4123/3214[;2;2]",
    "3412/3214[2;2;]",
    "3214/4123[;2;2]",
    "2341/1432[;2;2]",
    "1432/3214[;2;2]",
    "2143/1432[2;2;]",
    "3412/1432[2;2;]",
    "2143/4123[2;2;]",
    "1432/2143[2;;2]",
    "4123/2341[;2;2]",
    "3214/1432[;2;2]",
    "3412/4123[2;2;]",
    "3412/2341[2;2;]",
    "1432/3412[2;;2]",
    "2143/2341[2;2;]",
    "2341/3412[2;;2]",
    "4123/2143[2;;2]",
    "4123/3412[2;;2]",
    "3214/3412[2;;2]",
    "1432/2341[;2;2]",
    "3214/2143[2;;2]",
    "2341/2143[2;;2]",
];

fn parse_list(list: &[&str]) -> PatternSet {
    list.iter()
        .map(|s| s.parse::<PatternLiteral>().expect("embedded literal"))
        .collect()
}

/// The 2-dimensional forbidden pair {2413[2;2], 3142[2;2]}.
pub fn sbaxpa() -> PatternSet {
    parse_list(&LIST_A)
}

/// The 24 embedded size-3 forbidden patterns.
pub fn sbaxpb() -> PatternSet {
    parse_list(&LIST_B)
}

/// The symmetry class of (2143,1423)[{2};{2};], generated.
pub fn sbaxpc() -> PatternSet {
    symmetry::pattern_orbit(&"2143/1423[2;2;]".parse().unwrap())
}

/// The symmetry class of (3412,1432)[{2};{2};], generated.
pub fn sbaxpd() -> PatternSet {
    symmetry::pattern_orbit(&"3412/1432[2;2;]".parse().unwrap())
}

/// Embedded reference lists, for cross-checking the generated classes.
pub fn embedded_sbaxpc() -> PatternSet {
    parse_list(&LIST_C)
}

pub fn embedded_sbaxpd() -> PatternSet {
    parse_list(&LIST_D)
}

/// The full forbidden set for Baxter `d`-permutations: the plane pair for
/// `d = 2`, plus the three families of 3-dimensional patterns for `d >= 3`
/// (2 + 24 + 24 + 24 = 74 patterns).
pub fn baxter_pattern_sets(d: usize) -> PatternSet {
    let mut set = sbaxpa();
    if d >= 3 {
        set = set.union(&sbaxpb()).union(&sbaxpc()).union(&sbaxpd());
    }
    set
}

/// Vincular route: avoid every forbidden pattern.
pub fn is_baxter_vincular(p: &DPermutation) -> bool {
    pattern::avoids_all(p, &baxter_pattern_sets(p.dimension()))
}

/// For a type-1 slice of a well-sliced permutation: per axis `i`, the
/// unique type-`i` slice meeting it spans a width-1 interval on axis `i`;
/// those intervals box a unit cell, returned as its (low, high) corners.
pub fn intersecting_cell(p: &DPermutation, s: &Slice) -> Result<(Point, Point), BaxterError> {
    if !s.has_type(1) {
        return Err(BaxterError::NotTypeOne);
    }
    let d = p.dimension();
    let all = slices(p);
    cell_from_slices(&all, s, d)
}

fn cell_from_slices(all: &[Slice], s: &Slice, d: usize) -> Result<(Point, Point), BaxterError> {
    let mut low = Vec::with_capacity(d);
    let mut high = Vec::with_capacity(d);
    for axis in 1..=d {
        let mut found: Option<(u16, u16)> = None;
        let mut count = 0usize;
        for t in all {
            if t.has_type(axis) && s.intersects(t) {
                count += 1;
                found = Some(t.interval(axis));
            }
        }
        if count != 1 {
            return Err(BaxterError::NoUniqueIntersector {
                slice_type: axis,
                found: count,
            });
        }
        let (a, b) = found.unwrap();
        debug_assert_eq!(b, a + 1, "type-axis interval has width 1");
        low.push(a);
        high.push(b);
    }
    Ok((Point::new(low), Point::new(high)))
}

/// Low corners of the intersecting cells of every type-1 slice, in x order.
fn cell_corners(p: &DPermutation) -> Result<Vec<Point>, BaxterError> {
    let d = p.dimension();
    let all = slices(p);
    let mut corners = Vec::new();
    let mut type1: Vec<&Slice> = all.iter().filter(|s| s.has_type(1)).collect();
    type1.sort_by_key(|s| s.interval(1).0);
    for s in type1 {
        let (low, _) = cell_from_slices(&all, s, d)?;
        corners.push(low);
    }
    Ok(corners)
}

/// The anti-Baxter image: the standardization of the cell centers of a
/// Baxter permutation of size `n`, a permutation of size `n - 1`.
pub fn anti_baxter(p: &DPermutation) -> Result<DPermutation, BaxterError> {
    if p.size() < 2 {
        return Err(BaxterError::TooSmall);
    }
    if !is_baxter(p) {
        return Err(BaxterError::NotBaxter);
    }
    let corners = cell_corners(p)?;
    standardize(&corners).map_err(|_| BaxterError::NotWellSliced)
}

/// The complete Baxter permutation of size `2n - 1`: original points on the
/// odd sublattice (`c -> 2c-1`) merged with cell centers on the even one
/// (`c + 1/2 -> 2c`).
pub fn complete_baxter(p: &DPermutation) -> Result<DPermutation, BaxterError> {
    if p.size() < 2 {
        return Err(BaxterError::TooSmall);
    }
    if !is_baxter(p) {
        return Err(BaxterError::NotBaxter);
    }
    let d = p.dimension();
    let corners = cell_corners(p)?;
    let mut merged: Vec<Point> = p
        .diagram()
        .iter()
        .map(|q| Point::new((1..=d).map(|a| 2 * q.coord(a) - 1).collect()))
        .collect();
    merged.extend(
        corners
            .iter()
            .map(|c| Point::new((1..=d).map(|a| 2 * c.coord(a)).collect())),
    );
    standardize(&merged).map_err(|_| BaxterError::NotWellSliced)
}

/// The anti-Baxter permutations of the plane are exactly the avoiders of
/// 2143[2;] and 3412[2;].
pub fn is_anti_baxter_2d(p: &Permutation) -> bool {
    let host = DPermutation::from(p.clone());
    let ps: PatternSet = "2143[2;],3412[2;]".parse().unwrap();
    pattern::avoids_all(&host, &ps)
}

/// `|A_n^{d-1}|`: the number of distinct anti-Baxter images over all Baxter
/// `d`-permutations of size `n + 1`. Counting is by image enumeration,
/// which follows directly from the definition in any dimension.
pub fn anti_baxter_count(n: usize, d: usize, node_limit: u64) -> Result<BigUint, BaxterError> {
    let hosts = host_space(n + 1, d);
    if hosts > node_limit as u128 {
        return Err(BaxterError::ScaleGuardExceeded {
            bound: hosts,
            limit: node_limit,
        });
    }
    Ok(BigUint::from(anti_baxter_images(n, d).len()))
}

/// The distinct anti-Baxter images of size `n` (from Baxter hosts of size
/// `n + 1`), sorted.
pub fn anti_baxter_images(n: usize, d: usize) -> BTreeSet<DPermutation> {
    let mut images = BTreeSet::new();
    for_each_dpermutation(n + 1, d, &mut |p| {
        if is_baxter(p) {
            images.insert(anti_baxter(p).expect("host is Baxter"));
        }
    });
    images
}

pub(crate) fn host_space(n: usize, d: usize) -> u128 {
    let mut f: u128 = 1;
    for i in 2..=n as u128 {
        f = f.saturating_mul(i);
    }
    let mut out: u128 = 1;
    for _ in 1..d {
        out = out.saturating_mul(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(s: &str) -> DPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn slices_of_the_identity() {
        let sl = slices(&DPermutation::identity(3, 2));
        assert_eq!(sl.len(), 2);
        for s in &sl {
            assert_eq!(s.types(), [1, 2]);
            assert_eq!(s.direction().to_string(), "++");
        }
    }

    #[test]
    fn slices_of_2413() {
        let sl = slices(&dp("2413"));
        let mut type1: Vec<&Slice> = sl.iter().filter(|s| s.has_type(1)).collect();
        type1.sort_by_key(|s| s.interval(1).0);
        let dirs: Vec<_> = type1.iter().map(|s| s.direction().to_string()).collect();
        assert_eq!(dirs, ["++", "+-", "++"]);
        assert_eq!(sl.iter().filter(|s| s.has_type(2)).count(), 3);
        assert_eq!(sl.len(), 6);
    }

    fn perm2d(values: &[u16]) -> DPermutation {
        DPermutation::from(Permutation::from_values(values.to_vec()).unwrap())
    }

    #[test]
    fn well_sliced_examples() {
        assert!(is_well_sliced(&perm2d(&[5, 3, 4, 9, 7, 8, 10, 6, 1, 2])));
        assert!(is_well_sliced(&dp("342651/156243")));
        assert!(!is_well_sliced(&dp("2413")));
        assert!(is_well_sliced(&DPermutation::identity(1, 2)));
    }

    #[test]
    fn baxter_examples() {
        assert!(!is_baxter(&dp("342651/156243")));
        for n in 1..=6 {
            assert!(is_baxter(&DPermutation::identity(n, 3)));
        }
        let mut count = 0;
        for_each_dpermutation(4, 3, &mut |p| {
            if is_baxter(p) {
                count += 1;
            }
        });
        assert_eq!(count, 260);
    }

    #[test]
    fn pattern_set_sizes() {
        assert_eq!(baxter_pattern_sets(2).len(), 2);
        assert_eq!(baxter_pattern_sets(3).len(), 74);
        assert_eq!(baxter_pattern_sets(4).len(), 74);
    }

    #[test]
    fn generated_classes_match_embedded_lists() {
        assert_eq!(
            symmetry::pattern_orbit(&"2413[2;2]".parse().unwrap()),
            sbaxpa()
        );
        assert_eq!(
            symmetry::pattern_orbit(&"312/213[1;2;]".parse().unwrap()),
            sbaxpb()
        );
        assert_eq!(sbaxpc(), embedded_sbaxpc());
        assert_eq!(sbaxpd(), embedded_sbaxpd());
    }

    #[test]
    fn sbaxpd_contains_listed_member() {
        let member: PatternLiteral = "2341/4123[;2;2]".parse().unwrap();
        assert!(sbaxpd().patterns().contains(&member));
    }

    #[test]
    fn vincular_examples() {
        assert!(!is_baxter_vincular(&dp("3142")));
        assert!(is_baxter_vincular(&DPermutation::identity(3, 3)));
        let mut count = 0;
        for_each_dpermutation(4, 3, &mut |p| {
            if is_baxter_vincular(p) {
                count += 1;
            }
        });
        assert_eq!(count, 260);
    }

    #[test]
    fn anti_baxter_fig_examples() {
        let host = perm2d(&[5, 3, 4, 9, 7, 8, 10, 6, 1, 2]);
        assert_eq!(anti_baxter(&host).unwrap(), perm2d(&[4, 3, 5, 8, 7, 9, 6, 2, 1]));
        assert_eq!(
            complete_baxter(&host).unwrap(),
            perm2d(&[9, 8, 5, 6, 7, 10, 17, 16, 13, 14, 15, 18, 19, 12, 11, 4, 1, 2, 3])
        );

        let host3 = dp("14386527/47513268");
        assert_eq!(anti_baxter(&host3).unwrap(), dp("1347526/4631257"));
        assert_eq!(complete_baxter(&host3).unwrap().size(), 15);
    }

    #[test]
    fn anti_baxter_identity() {
        for n in 2..=6 {
            let id = DPermutation::identity(n, 2);
            assert_eq!(anti_baxter(&id).unwrap(), DPermutation::identity(n - 1, 2));
        }
        assert_eq!(
            complete_baxter(&DPermutation::identity(2, 2)).unwrap(),
            DPermutation::identity(3, 2)
        );
    }

    #[test]
    fn anti_baxter_rejects_non_baxter() {
        assert_eq!(anti_baxter(&dp("2413")), Err(BaxterError::NotBaxter));
        assert_eq!(anti_baxter(&dp("1")), Err(BaxterError::TooSmall));
    }

    #[test]
    fn intersecting_cell_identity() {
        let id = DPermutation::identity(3, 2);
        let sl = slices(&id);
        let cells: Vec<_> = sl
            .iter()
            .filter(|s| s.has_type(1))
            .map(|s| intersecting_cell(&id, s).unwrap())
            .collect();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].0.coords(), [1, 1]);
        assert_eq!(cells[0].1.coords(), [2, 2]);
        assert_eq!(cells[1].0.coords(), [2, 2]);
        assert_eq!(cells[1].1.coords(), [3, 3]);
    }

    #[test]
    fn anti_2d_examples() {
        assert!(is_anti_baxter_2d(
            &Permutation::from_values([4, 3, 5, 8, 7, 9, 6, 2, 1].to_vec()).unwrap()
        ));
        assert!(!is_anti_baxter_2d(&"2143".parse().unwrap()));
        let mut count = 0;
        for_each_dpermutation(5, 2, &mut |p| {
            if is_anti_baxter_2d(p.component(1)) {
                count += 1;
            }
        });
        assert_eq!(count, 88);
    }

    #[test]
    fn anti_count_examples() {
        let limit = 1_000_000_000;
        assert_eq!(anti_baxter_count(3, 3, limit).unwrap(), BigUint::from(36u32));
        assert_eq!(anti_baxter_count(4, 3, limit).unwrap(), BigUint::from(444u32));
        assert_eq!(anti_baxter_count(5, 2, limit).unwrap(), BigUint::from(88u32));
        assert!(matches!(
            anti_baxter_count(30, 3, limit),
            Err(BaxterError::ScaleGuardExceeded { .. })
        ));
    }
}
