//! Closed-form sequences and an embedded table of known sequence prefixes.
//!
//! The embedded prefixes are matched only as far as they are stored: where
//! a count sequence is merely conjectured to continue an OEIS entry, the
//! table holds exactly the terms that agree, never the conjecture.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Catalan numbers `C_n = binom(2n, n) / (n + 1)`, `C_0 = 1`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Baxter numbers: `B_n = sum_k binom(n+1,k-1) binom(n+1,k) binom(n+1,k+1)
/// / (binom(n+1,1) binom(n+1,2))`, the count of plane Baxter permutations.
pub fn baxter_number(n: u64) -> BigUint {
    assert!(n >= 1, "Baxter numbers start at n = 1");
    let mut sum = BigUint::zero();
    for k in 1..=n {
        sum += binomial(n + 1, k - 1) * binomial(n + 1, k) * binomial(n + 1, k + 1);
    }
    let den = binomial(n + 1, 1) * binomial(n + 1, 2);
    assert!((&sum % &den).is_zero());
    sum / den
}

/// A stored sequence prefix. `terms[i]` is the value at `n = i + 1`; the
/// note records what the prefix counts and how far the agreement is known.
#[derive(Clone, Copy, Debug)]
pub struct KnownSequence {
    pub id: &'static str,
    pub note: &'static str,
    pub terms: &'static [u64],
}

/// Sequence prefixes cited by the enumeration tables. Entries marked
/// "prefix agreement only" are conjectural identifications: the stored
/// terms are exactly the ones known to coincide, nothing further.
pub const KNOWN_SEQUENCES: &[KnownSequence] = &[
    KnownSequence {
        id: "A007767",
        note: "pairs of permutations forming weak-Bruhat intervals; \
               3-permutations avoiding 12/12",
        terms: &[1, 3, 17, 151, 1899, 31711],
    },
    KnownSequence {
        id: "A000272",
        note: "3-permutations avoiding {12/12, 132/312}; the values are \
               (n+1)^(n-1) even though the class is often labelled \
               (n+1)^(n+1)",
        terms: &[1, 3, 16, 125, 1296],
    },
    KnownSequence {
        id: "A190291",
        note: "weak-Bruhat intervals that are distributive lattices; \
               3-permutations avoiding {12/12, 123/321}",
        terms: &[1, 3, 16, 124, 1262, 15898],
    },
    KnownSequence {
        id: "A295928",
        note: "3-permutations avoiding {12/12, 231/312}; prefix agreement \
               only",
        terms: &[1, 3, 16, 122, 1188, 13844],
    },
    KnownSequence {
        id: "A001787",
        note: "n*2^(n-1); 3-permutations avoiding {132, 231}; prefix \
               agreement only",
        terms: &[1, 4, 12, 32, 80, 192, 448],
    },
    KnownSequence {
        id: "A047732",
        note: "3-permutations avoiding {132, 321}; prefix agreement only",
        terms: &[1, 4, 12, 27, 51, 86, 134],
    },
    KnownSequence {
        id: "A026150",
        note: "3-permutations avoiding {231, 312}; prefix agreement only",
        terms: &[1, 4, 10, 28, 76, 208, 568],
    },
    KnownSequence {
        id: "A003946",
        note: "4*3^(n-2); 3-permutations avoiding {231, 321}; prefix \
               agreement only",
        terms: &[1, 4, 12, 36, 108, 324, 972],
    },
    KnownSequence {
        id: "A281593",
        note: "3-permutations avoiding {132, 12/12}; prefix agreement only",
        terms: &[1, 3, 11, 41, 153, 573, 2157],
    },
    KnownSequence {
        id: "A026671",
        note: "3-permutations avoiding {132, 12/21}; prefix agreement only",
        terms: &[1, 3, 11, 43, 173, 707, 2917],
    },
    KnownSequence {
        id: "A072863",
        note: "3-permutations avoiding {231, 12/12}; prefix agreement only",
        terms: &[1, 3, 9, 26, 72, 192, 496],
    },
    KnownSequence {
        id: "A001764",
        note: "binom(3n,n)/(2n+1); 3-permutations avoiding {231, 21/12}; \
               prefix agreement only",
        terms: &[1, 3, 12, 55, 273, 1428, 7752],
    },
    KnownSequence {
        id: "A217216",
        note: "3-permutations avoiding {321, 12/21}; prefix agreement only",
        terms: &[1, 3, 11, 47, 221, 1113, 5903],
    },
    KnownSequence {
        id: "A001181",
        note: "Baxter numbers: plane permutations avoiding 2413[2;2] and \
               3142[2;2]",
        terms: &[1, 2, 6, 22, 92, 422, 2074],
    },
    KnownSequence {
        id: "A006318",
        note: "large Schroeder numbers: separable permutations of the plane",
        terms: &[1, 2, 6, 22, 90, 394, 1806],
    },
    KnownSequence {
        id: "A000108",
        note: "Catalan numbers: plane permutations avoiding one size-3 \
               pattern",
        terms: &[1, 2, 5, 14, 42, 132, 429],
    },
];

pub fn known_sequences() -> &'static [KnownSequence] {
    KNOWN_SEQUENCES
}

pub fn lookup(id: &str) -> Option<&'static KnownSequence> {
    KNOWN_SEQUENCES.iter().find(|s| s.id == id)
}

/// Ids whose stored prefix extends `query` (the stored sequence starts
/// with the queried terms and is at least as long). Queries shorter than 3
/// terms match nothing.
pub fn match_sequence(query: &[BigUint]) -> Vec<&'static str> {
    if query.len() < 3 {
        return Vec::new();
    }
    KNOWN_SEQUENCES
        .iter()
        .filter(|s| {
            s.terms.len() >= query.len()
                && s.terms
                    .iter()
                    .zip(query)
                    .all(|(&t, q)| BigUint::from(t) == *q)
        })
        .map(|s| s.id)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(values: &[u64]) -> Vec<BigUint> {
        values.iter().map(|&v| BigUint::from(v)).collect()
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(4), BigUint::from(14u32));
        assert_eq!(catalan(6), BigUint::from(132u32));
    }

    #[test]
    fn baxter_examples() {
        assert_eq!(baxter_number(1), BigUint::from(1u32));
        assert_eq!(baxter_number(5), BigUint::from(92u32));
        assert_eq!(baxter_number(7), BigUint::from(2074u32));
        let prefix: Vec<BigUint> = (1..=7).map(baxter_number).collect();
        assert_eq!(prefix, big(&[1, 2, 6, 22, 92, 422, 2074]));
    }

    #[test]
    fn match_examples() {
        assert_eq!(match_sequence(&big(&[1, 3, 17, 151, 1899])), ["A007767"]);
        assert_eq!(match_sequence(&big(&[1, 3, 16, 125, 1296])), ["A000272"]);
        assert!(match_sequence(&big(&[9, 9, 9])).is_empty());
        assert!(match_sequence(&big(&[1, 3])).is_empty());
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 6), BigUint::from(0u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
    }
}
