//! Weak-Bruhat order on permutations: inversion sets, comparison, and the
//! interval counts that match the (12,12)-avoidance classes.

use alloc::collections::BTreeSet;
use core::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruhatError {
    SizeMismatch { left: usize, right: usize },
    ScaleGuardExceeded { bound: u128, limit: u64 },
}

impl fmt::Display for BruhatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BruhatError::SizeMismatch { left, right } => {
                write!(f, "size mismatch: {left} vs {right}")
            }
            BruhatError::ScaleGuardExceeded { bound, limit } => {
                write!(f, "job needs {bound} candidates, over the limit {limit}")
            }
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for BruhatError {}

impl From<PermError> for BruhatError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::SizeMismatch { left, right } => BruhatError::SizeMismatch { left, right },
            PermError::NotPermutation(_) => unreachable!("inputs are permutations"),
        }
    }
}

/// All pairs `(i, j)` with `i < j` and `p(i) > p(j)`, 1-based.
pub fn inversion_set(p: &Permutation) -> BTreeSet<(usize, usize)> {
    let n = p.size();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if p.value(i) > p.value(j) {
                out.insert((i, j));
            }
        }
    }
    out
}

/// `a <= b` in the weak Bruhat order: the inversions of `a` are among those
/// of `b`.
pub fn bruhat_leq(a: &Permutation, b: &Permutation) -> Result<bool, BruhatError> {
    if a.size() != b.size() {
        return Err(BruhatError::SizeMismatch {
            left: a.size(),
            right: b.size(),
        });
    }
    Ok(inversion_set(a).is_subset(&inversion_set(b)))
}

fn guard_pairs(n: usize, limit: u64) -> Result<(), BruhatError> {
    let mut f: u128 = 1;
    for i in 2..=n as u128 {
        f = f.saturating_mul(i);
    }
    let bound = f.saturating_mul(f);
    if bound > limit as u128 {
        return Err(BruhatError::ScaleGuardExceeded { bound, limit });
    }
    Ok(())
}

fn count_pairs<F: FnMut(&Permutation, &Permutation) -> bool>(
    n: usize,
    limit: u64,
    mut keep: F,
) -> Result<BigUint, BruhatError> {
    guard_pairs(n, limit)?;
    let mut count = BigUint::zero();
    let mut a = Permutation::identity(n);
    loop {
        let inv_a = inversion_set(&a);
        let mut b = Permutation::identity(n);
        loop {
            if inv_a.is_subset(&inversion_set(&b)) && keep(&a, &b) {
                count += 1u32;
            }
            match b.lex_successor() {
                Some(next) => b = next,
                None => break,
            }
        }
        match a.lex_successor() {
            Some(next) => a = next,
            None => break,
        }
    }
    Ok(count)
}

/// The number of comparable pairs `(a, b)` with `a <= b`, i.e. intervals of
/// the weak-Bruhat poset on `S_n`.
pub fn count_intervals(n: usize, node_limit: u64) -> Result<BigUint, BruhatError> {
    count_pairs(n, node_limit, |_, _| true)
}

/// Intervals `(a, b)` whose sub-poset is a distributive lattice; these are
/// exactly the intervals whose quotient avoids 321. Of the two ways to read
/// the quotient, `compose(b, invert(a))` is the one that reproduces the
/// reference counts 1, 3, 16, 124, 1262.
pub fn count_distributive_intervals(n: usize, node_limit: u64) -> Result<BigUint, BruhatError> {
    count_pairs(n, node_limit, |a, b| {
        let q = b.compose(&a.invert()).expect("equal sizes");
        avoids_321(&q)
    })
}

fn avoids_321(p: &Permutation) -> bool {
    // longest strictly decreasing subsequence must stay below 3
    let n = p.size();
    for i in 1..=n {
        for j in i + 1..=n {
            if p.value(i) <= p.value(j) {
                continue;
            }
            for k in j + 1..=n {
                if p.value(j) > p.value(k) {
                    return false;
                }
            }
        }
    }
    true
}
