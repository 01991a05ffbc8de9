//! Separable `d`-permutations: recursive block structure, decomposition
//! trees, the forbidden-pattern characterizations and the closed-form count.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::dperm::{DPermutation, Direction, Sign};
use crate::pattern::{self, PatternLiteral, PatternSet};
use crate::seq::binomial;
use crate::symmetry;

/// A decomposition into directional sums; leaves are size-1 permutations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SumTree {
    Leaf,
    Node {
        direction: Direction,
        left: Box<SumTree>,
        right: Box<SumTree>,
    },
}

impl SumTree {
    /// Number of leaves, i.e. the size of the permutation it evaluates to.
    pub fn size(&self) -> usize {
        match self {
            SumTree::Leaf => 1,
            SumTree::Node { left, right, .. } => left.size() + right.size(),
        }
    }

    /// Re-evaluates the tree with `d_sum` into a permutation of dimension `d`.
    pub fn evaluate(&self, d: usize) -> DPermutation {
        match self {
            SumTree::Leaf => DPermutation::identity(1, d),
            SumTree::Node {
                direction,
                left,
                right,
            } => left
                .evaluate(d)
                .d_sum(&right.evaluate(d), direction)
                .expect("decomposition trees evaluate cleanly"),
        }
    }
}

impl fmt::Display for SumTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumTree::Leaf => write!(f, "1"),
            SumTree::Node {
                direction,
                left,
                right,
            } => write!(f, "({left} {direction} {right})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparableError {
    NotSeparable,
}

impl fmt::Display for SeparableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparableError::NotSeparable => write!(f, "not a separable d-permutation"),
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for SeparableError {}

/// Where the first `k` x-columns sit on one axis: the bottom interval
/// `{1..k}`, the top interval `{n-k+1..n}`, or neither.
fn block_sign(values: &[u16], k: usize, n: usize) -> Option<Sign> {
    let prefix = &values[..k];
    let (mut min, mut max) = (u16::MAX, 0u16);
    for &v in prefix {
        min = min.min(v);
        max = max.max(v);
    }
    if max as usize == k {
        Some(Sign::Plus)
    } else if min as usize == n - k + 1 {
        Some(Sign::Minus)
    } else {
        None
    }
}

/// For a valid split at `k`, the standardized halves of one component and
/// the direction sign on its axis.
fn split_component(values: &[u16], k: usize, n: usize, sign: Sign) -> (Vec<u16>, Vec<u16>) {
    let (shift_left, shift_right) = match sign {
        Sign::Plus => (0, k as u16),
        Sign::Minus => ((n - k) as u16, 0),
    };
    let left = values[..k].iter().map(|&v| v - shift_left).collect();
    let right = values[k..].iter().map(|&v| v - shift_right).collect();
    (left, right)
}

/// Split points of the component list: `k` such that on every axis the
/// first `k` columns occupy a bottom or top interval.
fn valid_splits(components: &[Vec<u16>], n: usize) -> Vec<(usize, Vec<Sign>)> {
    let mut out = Vec::new();
    for k in 1..n {
        let mut signs = Vec::with_capacity(components.len());
        let mut ok = true;
        for values in components {
            match block_sign(values, k, n) {
                Some(s) => signs.push(s),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push((k, signs));
        }
    }
    out
}

fn separable_rec(components: &[Vec<u16>], n: usize) -> bool {
    if n == 1 {
        return true;
    }
    for (k, signs) in valid_splits(components, n) {
        let mut lefts = Vec::with_capacity(components.len());
        let mut rights = Vec::with_capacity(components.len());
        for (values, &sign) in components.iter().zip(&signs) {
            let (l, r) = split_component(values, k, n, sign);
            lefts.push(l);
            rights.push(r);
        }
        if separable_rec(&lefts, k) && separable_rec(&rights, n - k) {
            return true;
        }
    }
    false
}

fn decompose_rec(components: &[Vec<u16>], n: usize) -> Option<SumTree> {
    if n == 1 {
        return Some(SumTree::Leaf);
    }
    for (k, signs) in valid_splits(components, n) {
        let mut lefts = Vec::with_capacity(components.len());
        let mut rights = Vec::with_capacity(components.len());
        for (values, &sign) in components.iter().zip(&signs) {
            let (l, r) = split_component(values, k, n, sign);
            lefts.push(l);
            rights.push(r);
        }
        if let (Some(left), Some(right)) = (decompose_rec(&lefts, k), decompose_rec(&rights, n - k))
        {
            let mut dir_signs = Vec::with_capacity(components.len() + 1);
            dir_signs.push(Sign::Plus);
            dir_signs.extend(signs);
            let direction = Direction::new(dir_signs).expect("x sign is +");
            return Some(SumTree::Node {
                direction,
                left: Box::new(left),
                right: Box::new(right),
            });
        }
    }
    None
}

fn component_values(p: &DPermutation) -> Vec<Vec<u16>> {
    p.components().iter().map(|c| c.values().to_vec()).collect()
}

/// Structural recursion: size 1, or a `d`-sum of two separables at some
/// split point. Splits are scanned in increasing order of the prefix size.
pub fn is_separable(p: &DPermutation) -> bool {
    separable_rec(&component_values(p), p.size())
}

/// A decomposition tree whose evaluation reproduces `p`. Trees are not
/// canonical; only the round trip is contractual.
pub fn decompose(p: &DPermutation) -> Result<SumTree, SeparableError> {
    decompose_rec(&component_values(p), p.size()).ok_or(SeparableError::NotSeparable)
}

/// The 8 three-dimensional forbidden patterns: the symmetry class of
/// (132,213).
pub fn forbidden_triples() -> PatternSet {
    symmetry::pattern_orbit(&PatternLiteral::classical("132/213".parse().unwrap()))
}

/// Pattern characterization: every defining component avoids {2413, 3142}
/// and, for `d >= 3`, the diagram avoids the symmetric triple patterns.
/// Checking the plain patterns on the `d-1` defining projections alone is
/// enough; the remaining projections cannot introduce a fresh occurrence.
pub fn is_separable_by_patterns(p: &DPermutation) -> bool {
    let p2413: PatternLiteral = "2413".parse().unwrap();
    let p3142: PatternLiteral = "3142".parse().unwrap();
    for c in p.components() {
        let host = DPermutation::from(c.clone());
        if pattern::contains(&host, &p2413).unwrap() || pattern::contains(&host, &p3142).unwrap() {
            return false;
        }
    }
    if p.dimension() >= 3 {
        if !pattern::avoids_all(p, &forbidden_triples()) {
            return false;
        }
    }
    true
}

/// `|Sep_n^{d-1}|` in closed form:
/// `(1/(n-1)) * sum_k C(n-1,k) C(n-1,k+1) (2^{d-1}-1)^k (2^{d-1})^{n-k-1}`,
/// with the `n = 1` value defined as 1. The `d = 2` column is the large
/// Schroeder numbers.
pub fn separable_count(n: usize, d: usize) -> BigUint {
    if n == 1 {
        return BigUint::one();
    }
    let base = BigUint::from(2u32).pow(d as u32 - 1);
    let base_minus = &base - 1u32;
    let mut sum = BigUint::zero();
    for k in 0..=(n - 2) {
        let term = binomial(n as u64 - 1, k as u64)
            * binomial(n as u64 - 1, k as u64 + 1)
            * base_minus.pow(k as u32)
            * base.pow((n - k - 1) as u32);
        sum += term;
    }
    let divisor = BigUint::from(n as u32 - 1);
    assert!((&sum % &divisor).is_zero(), "separable count is an integer");
    sum / divisor
}
