//! `d`-permutations, their diagrams, standardization, projections and
//! directional sums.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::perm::{parse_perm_at, ParseError, PermError, Permutation};

/// A point of a `d`-dimensional diagram. Axes are 1-based: `coord(1)` is the
/// x-coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<u16>,
}

impl Point {
    pub fn new(coords: Vec<u16>) -> Self {
        Point { coords }
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    /// Coordinate on the 1-based `axis`.
    pub fn coord(&self, axis: usize) -> u16 {
        self.coords[axis - 1]
    }

    pub fn coords(&self) -> &[u16] {
        &self.coords
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A sign word over `{+,-}` whose first letter is `+` (a positive
/// direction). Directions orient the per-axis sums of [`DPermutation::d_sum`]
/// and classify slices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    signs: Vec<Sign>,
}

impl Direction {
    pub fn new(signs: Vec<Sign>) -> Result<Self, DPermError> {
        if signs.is_empty() {
            return Err(DPermError::BadDirection("empty direction".to_string()));
        }
        if signs[0] != Sign::Plus {
            return Err(DPermError::BadDirection(
                "direction must start with '+'".to_string(),
            ));
        }
        Ok(Direction { signs })
    }

    /// The all-`+` direction of the given length.
    pub fn positive(len: usize) -> Self {
        Direction {
            signs: alloc::vec![Sign::Plus; len],
        }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Sign on the 1-based `axis`.
    pub fn sign(&self, axis: usize) -> Sign {
        self.signs[axis - 1]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Direction {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut signs = Vec::new();
        for (i, c) in s.char_indices() {
            match c {
                '+' => signs.push(Sign::Plus),
                '-' => signs.push(Sign::Minus),
                _ => return Err(ParseError::new(i, "expected '+' or '-'")),
            }
        }
        Direction::new(signs).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DPermError {
    /// The component permutations do not all have the same size.
    ComponentSizeMismatch,
    /// A `d`-permutation needs at least one component.
    NoComponents,
    /// Two points share a coordinate on the given axis.
    CoordinateCollision { axis: usize },
    /// Standardization input was empty or mixed dimensions.
    BadPointSet(String),
    /// An axis index outside `1..=d`, a repeated axis, or too few axes.
    BadAxes(String),
    /// Operands of a sum or a symmetry application disagree in dimension.
    DimensionMismatch { left: usize, right: usize },
    BadDirection(String),
    Perm(PermError),
}

impl fmt::Display for DPermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DPermError::ComponentSizeMismatch => write!(f, "components have different sizes"),
            DPermError::NoComponents => write!(f, "a d-permutation needs d >= 2"),
            DPermError::CoordinateCollision { axis } => {
                write!(f, "two points share a coordinate on axis {axis}")
            }
            DPermError::BadPointSet(why) => write!(f, "bad point set: {why}"),
            DPermError::BadAxes(why) => write!(f, "bad axis sequence: {why}"),
            DPermError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            DPermError::BadDirection(why) => write!(f, "bad direction: {why}"),
            DPermError::Perm(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for DPermError {}

impl From<PermError> for DPermError {
    fn from(e: PermError) -> Self {
        DPermError::Perm(e)
    }
}

/// A `d`-permutation: `d-1` permutations of equal size, identified with the
/// diagram `{(i, s1(i), ..., s_{d-1}(i))}` in `[n]^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DPermutation {
    components: Vec<Permutation>,
}

impl DPermutation {
    pub fn from_components(components: Vec<Permutation>) -> Result<Self, DPermError> {
        if components.is_empty() {
            return Err(DPermError::NoComponents);
        }
        let n = components[0].size();
        if components.iter().any(|c| c.size() != n) {
            return Err(DPermError::ComponentSizeMismatch);
        }
        Ok(DPermutation { components })
    }

    /// The diagonal `(Id_n, ..., Id_n)` of dimension `d`.
    pub fn identity(n: usize, d: usize) -> Self {
        DPermutation {
            components: alloc::vec![Permutation::identity(n); d - 1],
        }
    }

    pub fn dimension(&self) -> usize {
        self.components.len() + 1
    }

    pub fn size(&self) -> usize {
        self.components[0].size()
    }

    /// Component `s_i` for `i` in `1..=d-1`.
    pub fn component(&self, i: usize) -> &Permutation {
        &self.components[i - 1]
    }

    pub fn components(&self) -> &[Permutation] {
        &self.components
    }

    /// The augmented component on the 1-based `axis`: axis 1 is the
    /// identity, axis `a >= 2` is component `a-1`.
    pub fn axis_value(&self, axis: usize, i: usize) -> u16 {
        if axis == 1 {
            i as u16
        } else {
            self.components[axis - 2].value(i)
        }
    }

    /// Diagram points in x order: point `i` is `(i, s1(i), ..., s_{d-1}(i))`.
    pub fn diagram(&self) -> Vec<Point> {
        let d = self.dimension();
        (1..=self.size())
            .map(|i| {
                let mut coords = Vec::with_capacity(d);
                coords.push(i as u16);
                for c in &self.components {
                    coords.push(c.value(i));
                }
                Point::new(coords)
            })
            .collect()
    }

    fn check_axes(&self, axes: &[usize], require_distinct: bool) -> Result<(), DPermError> {
        let d = self.dimension();
        if axes.len() < 2 {
            return Err(DPermError::BadAxes("need at least 2 axes".to_string()));
        }
        for (i, &a) in axes.iter().enumerate() {
            if a == 0 || a > d {
                return Err(DPermError::BadAxes(alloc::format!(
                    "axis {a} outside 1..={d}"
                )));
            }
            if require_distinct && axes[..i].contains(&a) {
                return Err(DPermError::BadAxes(alloc::format!("axis {a} repeats")));
            }
        }
        Ok(())
    }

    /// Projection onto an axis sequence (pairwise distinct, not necessarily
    /// increasing). Component `j-1` of the result is the composition of the
    /// augmented components `axes[j] o axes[0]^{-1}`; equivalently the result
    /// is the point set `{(p[axes[0]], ..., p[axes[d'-1]])}`.
    pub fn project(&self, axes: &[usize]) -> Result<DPermutation, DPermError> {
        self.check_axes(axes, true)?;
        let first = self.axis_perm(axes[0]);
        let first_inv = first.invert();
        let components = axes[1..]
            .iter()
            .map(|&a| self.axis_perm(a).compose(&first_inv))
            .collect::<Result<Vec<_>, _>>()?;
        DPermutation::from_components(components)
    }

    fn axis_perm(&self, axis: usize) -> Permutation {
        if axis == 1 {
            Permutation::identity(self.size())
        } else {
            self.components[axis - 2].clone()
        }
    }

    /// Directional sum: component `i-1` of the result is the direct sum
    /// (`dir` has `+` on axis `i`) or skew sum (`-`) of the operands'
    /// components. The x-axis sign must be `+` and is shared by every
    /// direction, so the two diagrams always concatenate left-to-right.
    pub fn d_sum(&self, other: &DPermutation, dir: &Direction) -> Result<DPermutation, DPermError> {
        let d = self.dimension();
        if other.dimension() != d {
            return Err(DPermError::DimensionMismatch {
                left: d,
                right: other.dimension(),
            });
        }
        if dir.len() != d {
            return Err(DPermError::BadDirection(alloc::format!(
                "direction length {} does not match dimension {d}",
                dir.len()
            )));
        }
        let components = (2..=d)
            .map(|axis| {
                let a = &self.components[axis - 2];
                let b = &other.components[axis - 2];
                sum2(a, b, dir.sign(axis))
            })
            .collect();
        DPermutation::from_components(components)
    }
}

/// Direct (`+`) or skew (`-`) sum of two plain permutations.
fn sum2(a: &Permutation, b: &Permutation, sign: Sign) -> Permutation {
    let n = a.size() as u16;
    let k = b.size() as u16;
    let mut values = Vec::with_capacity((n + k) as usize);
    match sign {
        Sign::Plus => {
            values.extend_from_slice(a.values());
            values.extend(b.values().iter().map(|&v| v + n));
        }
        Sign::Minus => {
            values.extend(a.values().iter().map(|&v| v + k));
            values.extend_from_slice(b.values());
        }
    }
    Permutation::from_values(values).expect("shifted concatenation is a permutation")
}

impl From<Permutation> for DPermutation {
    fn from(p: Permutation) -> Self {
        DPermutation {
            components: alloc::vec![p],
        }
    }
}

/// Literal: components joined by `/`, e.g. `1432/3124`.
impl fmt::Display for DPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a `d`-permutation literal starting at byte `start`; stops at the
/// first byte that can't continue the literal.
pub(crate) fn parse_dperm_at(
    text: &str,
    start: usize,
) -> Result<(DPermutation, usize), ParseError> {
    let (first, mut pos) = parse_perm_at(text, start)?;
    let mut components = alloc::vec![first];
    while text.as_bytes().get(pos) == Some(&b'/') {
        let (next, next_pos) = parse_perm_at(text, pos + 1)?;
        components.push(next);
        pos = next_pos;
    }
    let dp =
        DPermutation::from_components(components).map_err(|e| ParseError::new(start, e.to_string()))?;
    Ok((dp, pos))
}

impl FromStr for DPermutation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let (dp, end) = parse_dperm_at(s, 0)?;
        if end != s.len() {
            return Err(ParseError::new(end, "trailing input"));
        }
        Ok(dp)
    }
}

/// Standardization: relabels a coordinate-distinct point set so that the
/// relative order on every axis is preserved and the result is the diagram
/// of a `d`-permutation of size `|points|`.
///
/// Equal coordinates on any axis are an error, never tie-broken.
pub fn standardize(points: &[Point]) -> Result<DPermutation, DPermError> {
    if points.is_empty() {
        return Err(DPermError::BadPointSet("no points".to_string()));
    }
    let d = points[0].dimension();
    if d < 2 {
        return Err(DPermError::BadPointSet("points must have dimension >= 2".to_string()));
    }
    if points.iter().any(|p| p.dimension() != d) {
        return Err(DPermError::BadPointSet("points of mixed dimensions".to_string()));
    }
    let n = points.len();
    // ranks[a][i]: 1-based rank of point i's coordinate on axis a+1.
    let mut ranks = Vec::with_capacity(d);
    for axis in 1..=d {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| points[i].coord(axis));
        for w in order.windows(2) {
            if points[w[0]].coord(axis) == points[w[1]].coord(axis) {
                return Err(DPermError::CoordinateCollision { axis });
            }
        }
        let mut rank = alloc::vec![0u16; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = (r + 1) as u16;
        }
        ranks.push(rank);
    }
    // Order points by x rank, then read each further axis off as a component.
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by_key(|&i| ranks[0][i]);
    let components = (1..d)
        .map(|a| {
            let values = by_x.iter().map(|&i| ranks[a][i]).collect();
            Permutation::from_values(values).expect("ranks form a permutation")
        })
        .collect::<Vec<_>>();
    DPermutation::from_components(components)
}

/// Calls `f` with every `d`-permutation of size `n`, in lexicographic order
/// of the concatenated component notations.
pub fn for_each_dpermutation<F: FnMut(&DPermutation)>(n: usize, d: usize, f: &mut F) {
    fn rec<F: FnMut(&DPermutation)>(
        n: usize,
        slots: usize,
        current: &mut Vec<Permutation>,
        f: &mut F,
    ) {
        if current.len() == slots {
            let dp = DPermutation {
                components: current.clone(),
            };
            f(&dp);
            return;
        }
        let mut values: Vec<u16> = (1..=n as u16).collect();
        loop {
            current.push(Permutation::from_values(values.clone()).expect("permutation"));
            rec(n, slots, current, f);
            current.pop();
            if !crate::perm::next_permutation(&mut values) {
                break;
            }
        }
    }
    let mut current = Vec::with_capacity(d - 1);
    rec(n, d - 1, &mut current, f);
}

/// Like [`for_each_dpermutation`] with the first component pinned; the
/// parallel drivers shard work this way.
pub fn for_each_dpermutation_with_first<F: FnMut(&DPermutation)>(
    n: usize,
    d: usize,
    first: &Permutation,
    f: &mut F,
) {
    let mut g = |rest: &DPermutation| {
        let mut components = Vec::with_capacity(d - 1);
        components.push(first.clone());
        components.extend(rest.components.iter().cloned());
        f(&DPermutation { components });
    };
    if d == 2 {
        f(&DPermutation {
            components: alloc::vec![first.clone()],
        });
    } else {
        for_each_dpermutation(n, d - 1, &mut g);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(s: &str) -> DPermutation {
        s.parse().unwrap()
    }

    fn pt(coords: &[u16]) -> Point {
        Point::new(coords.to_vec())
    }

    #[test]
    fn standardize_two_points() {
        let s = standardize(&[pt(&[2, 5]), pt(&[7, 1])]).unwrap();
        assert_eq!(s, dp("21"));
    }

    #[test]
    fn standardize_subset_of_diagram() {
        // Three points of the diagram of 1432/3124 form the pattern 132/213.
        let s = standardize(&[pt(&[1, 1, 3]), pt(&[2, 4, 1]), pt(&[4, 2, 4])]).unwrap();
        assert_eq!(s, dp("132/213"));
    }

    #[test]
    fn standardize_round_trips_diagrams() {
        for s in ["1432/3124", "342651/156243", "21", "1/1/1"] {
            let v = dp(s);
            assert_eq!(standardize(&v.diagram()).unwrap(), v);
        }
    }

    #[test]
    fn standardize_rejects_collisions() {
        let err = standardize(&[pt(&[1, 2]), pt(&[1, 3])]).unwrap_err();
        assert_eq!(err, DPermError::CoordinateCollision { axis: 1 });
    }

    #[test]
    fn projection_examples() {
        let s = dp("1432/3124");
        assert_eq!(s.project(&[1, 2]).unwrap(), dp("1432"));
        assert_eq!(s.project(&[1, 3]).unwrap(), dp("3124"));
        assert_eq!(s.project(&[2, 3]).unwrap(), dp("3421"));
        assert_eq!(dp("342651/156243").project(&[2, 3]).unwrap(), dp("361542"));
        assert_eq!(s.project(&[1, 2, 3]).unwrap(), s);
    }

    #[test]
    fn indirect_projection_inverts() {
        let s = dp("3124/2413");
        assert_eq!(s.project(&[2, 1]).unwrap(), dp("2314"));
        assert_eq!(s.project(&[3, 1]).unwrap(), dp("3142"));
    }

    #[test]
    fn projection_rejects_bad_axes() {
        let s = dp("12/12");
        assert!(s.project(&[1, 4]).is_err());
        assert!(s.project(&[1, 1]).is_err());
        assert!(s.project(&[2]).is_err());
    }

    #[test]
    fn d_sum_examples() {
        let one = dp("1/1");
        assert_eq!(
            one.d_sum(&one, &"+++".parse().unwrap()).unwrap(),
            dp("12/12")
        );
        assert_eq!(
            one.d_sum(&one, &"+--".parse().unwrap()).unwrap(),
            dp("21/21")
        );
        assert_eq!(
            dp("132/132")
                .d_sum(&dp("21/21"), &"+++".parse().unwrap())
                .unwrap(),
            dp("13254/13254")
        );
    }

    #[test]
    fn d_sum_checks_preconditions() {
        assert!(dp("12/12").d_sum(&dp("1"), &"+++".parse().unwrap()).is_err());
        assert!(dp("12/12")
            .d_sum(&dp("1/1"), &"++".parse().unwrap())
            .is_err());
        assert!("-++".parse::<Direction>().is_err());
    }

    #[test]
    fn dperm_literal_round_trip() {
        for s in ["1432/3124", "1", "12/21/12"] {
            assert_eq!(dp(s).to_string(), s);
        }
    }

    #[test]
    fn host_enumeration_counts() {
        fn factorial(n: usize) -> usize {
            (1..=n).product()
        }
        for d in 2..=4 {
            for n in 1..=4 {
                let mut seen = alloc::collections::BTreeSet::new();
                for_each_dpermutation(n, d, &mut |p| {
                    assert_eq!(p.size(), n);
                    assert_eq!(p.dimension(), d);
                    seen.insert(p.clone());
                });
                assert_eq!(seen.len(), factorial(n).pow(d as u32 - 1));
            }
        }
    }

    #[test]
    fn host_enumeration_is_lexicographic() {
        let mut previous: Option<DPermutation> = None;
        for_each_dpermutation(3, 3, &mut |p| {
            if let Some(prev) = &previous {
                assert!(prev < p);
            }
            previous = Some(p.clone());
        });
    }
}
