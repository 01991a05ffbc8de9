//! Exhaustive enumeration of `d`-permutations under pattern avoidance or
//! named predicates.
//!
//! The avoidance search builds diagrams column by column, drawing the
//! `d-1` remaining coordinates of each new point from per-axis unused-value
//! sets. After every placement it asks whether some forbidden pattern now
//! occurs *using the new point*: coordinates are final once placed, so an
//! occurrence found in a prefix survives in every completion and pruning is
//! sound, vincular adjacencies included.
//!
//! The top columns' assignments form independent subtrees
//! ([`AvoiderSearch::prefixes`]); counts combine by addition, so a driver
//! may distribute subtrees over workers in any order. Everything here also
//! runs single-threaded.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use crate::baxter::{self, BaxterError};
use crate::dperm::{for_each_dpermutation, DPermutation};
use crate::pattern::{
    self, compile, for_each_increasing_subset, search_occurrences, CompiledPattern, PatternSet,
};
use crate::perm::{ParseError, Permutation};
use crate::separable;

/// Default ceiling on the unpruned node bound of a job.
pub const DEFAULT_NODE_LIMIT: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub node_limit: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum NamedPredicate {
    Baxter,
    Separable,
    AntiBaxter,
    WellSliced,
}

impl NamedPredicate {
    pub fn parse(name: &str) -> Option<NamedPredicate> {
        match name {
            "baxter" => Some(NamedPredicate::Baxter),
            "separable" => Some(NamedPredicate::Separable),
            "antibaxter" | "anti-baxter" => Some(NamedPredicate::AntiBaxter),
            "wellsliced" | "well-sliced" => Some(NamedPredicate::WellSliced),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedPredicate::Baxter => "baxter",
            NamedPredicate::Separable => "separable",
            NamedPredicate::AntiBaxter => "antibaxter",
            NamedPredicate::WellSliced => "wellsliced",
        }
    }

    /// Pointwise test backing the predicate. Anti-Baxter counts images, not
    /// a pointwise property, so it has no membership test here.
    fn test(self, p: &DPermutation) -> bool {
        match self {
            NamedPredicate::Baxter => baxter::is_baxter(p),
            NamedPredicate::Separable => separable::is_separable(p),
            NamedPredicate::WellSliced => baxter::is_well_sliced(p),
            NamedPredicate::AntiBaxter => unreachable!("anti-baxter counts images"),
        }
    }
}

impl fmt::Display for NamedPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// What a counting job filters by: a forbidden pattern set or a registered
/// named predicate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Constraint {
    Avoid(PatternSet),
    Predicate(NamedPredicate),
}

/// `@name` for predicates, the comma-joined pattern list otherwise.
impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Avoid(ps) => write!(f, "{ps}"),
            Constraint::Predicate(p) => write!(f, "@{p}"),
        }
    }
}

impl FromStr for Constraint {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        if let Some(name) = s.strip_prefix('@') {
            NamedPredicate::parse(name)
                .map(Constraint::Predicate)
                .ok_or_else(|| ParseError::new(1, alloc::format!("unknown predicate '{name}'")))
        } else {
            Ok(Constraint::Avoid(s.parse()?))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Count,
    List,
}

#[derive(Clone, Debug)]
pub struct CountJob {
    pub d: usize,
    pub n_max: usize,
    pub constraint: Constraint,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub constraint: String,
    pub d: usize,
    pub n: usize,
    pub count: BigUint,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// The unpruned node bound exceeds the configured ceiling.
    ScaleGuardExceeded { bound: u128, limit: u64 },
    BadJob(String),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::ScaleGuardExceeded { bound, limit } => {
                write!(f, "job needs {bound} nodes, over the limit {limit}")
            }
            EngineError::BadJob(why) => write!(f, "bad job: {why}"),
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for EngineError {}

impl From<BaxterError> for EngineError {
    fn from(e: BaxterError) -> Self {
        match e {
            BaxterError::ScaleGuardExceeded { bound, limit } => {
                EngineError::ScaleGuardExceeded { bound, limit }
            }
            other => EngineError::BadJob(other.to_string()),
        }
    }
}

/// Unpruned node bound of the avoidance DFS: partial assignments of `x`
/// columns for `x = 0..=n`.
fn avoid_node_bound(n: usize, d: usize) -> u128 {
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for x in 0..=n {
        total = total.saturating_add(level);
        if x < n {
            let choices = (n - x) as u128;
            let mut per_column: u128 = 1;
            for _ in 1..d {
                per_column = per_column.saturating_mul(choices);
            }
            level = level.saturating_mul(per_column);
        }
    }
    total
}

fn check_guard(bound: u128, cfg: &EngineConfig) -> Result<(), EngineError> {
    if bound > cfg.node_limit as u128 {
        return Err(EngineError::ScaleGuardExceeded {
            bound,
            limit: cfg.node_limit,
        });
    }
    Ok(())
}

/// One forbidden pattern instantiated on one increasing host-axis subset.
struct Check {
    cp: CompiledPattern,
    /// 0-based host axes, increasing, one per pattern axis.
    axes: Vec<usize>,
}

/// A compiled avoidance search over `S_n^{d-1}`; immutable once built, so
/// shared references can drive disjoint subtrees from several threads.
pub struct AvoiderSearch {
    n: usize,
    d: usize,
    checks: Vec<Check>,
}

/// The assignments of the first columns of a search: an independent
/// subtree root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchPrefix {
    columns: Vec<Vec<u16>>,
}

struct State {
    d: usize,
    /// Flat coordinates of placed points, stride `d`, x first.
    coords: Vec<u16>,
    /// Unused-value bitsets for axes `2..=d`.
    unused: Vec<u64>,
    /// Per 0-based axis: placed point ids sorted by that coordinate.
    orders: Vec<Vec<usize>>,
}

impl State {
    fn new(n: usize, d: usize) -> State {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        State {
            d,
            coords: Vec::with_capacity(n * d),
            unused: alloc::vec![full; d - 1],
            orders: alloc::vec![Vec::with_capacity(n); d],
        }
    }

    fn placed(&self) -> usize {
        self.coords.len() / self.d
    }

    fn coord(&self, id: usize, axis0: usize) -> u16 {
        self.coords[id * self.d + axis0]
    }

    /// Places the next column with the given `d-1` coordinate values.
    fn place(&mut self, values: &[u16]) {
        let id = self.placed();
        let x = (id + 1) as u16;
        self.coords.push(x);
        self.coords.extend_from_slice(values);
        for (a, &v) in values.iter().enumerate() {
            self.unused[a] &= !(1 << (v - 1));
        }
        self.orders[0].push(id);
        for axis0 in 1..self.d {
            let v = self.coord(id, axis0);
            let list = &mut self.orders[axis0];
            let pos = list.partition_point(|&q| self.coords[q * self.d + axis0] < v);
            list.insert(pos, id);
        }
    }

    fn unplace(&mut self) {
        let id = self.placed() - 1;
        for axis0 in 1..self.d {
            let v = self.coord(id, axis0);
            self.unused[axis0 - 1] |= 1 << (v - 1);
            let list = &mut self.orders[axis0];
            let pos = list.iter().position(|&q| q == id).expect("placed");
            list.remove(pos);
        }
        self.orders[0].pop();
        self.coords.truncate(id * self.d);
    }

    /// Does any forbidden pattern occur using the newest point?
    fn violates(&self, checks: &[Check]) -> bool {
        let id = self.placed() - 1;
        for check in checks {
            let order = &self.orders[check.axes[0]];
            let e = order.iter().position(|&q| q == id).expect("placed");
            let coord = |q: usize, t: usize| self.coord(q, check.axes[t]);
            if search_occurrences(&coord, order, &check.cp, Some(e), &mut |_| true) {
                return true;
            }
        }
        false
    }

    fn to_dpermutation(&self) -> DPermutation {
        let n = self.placed();
        let components = (1..self.d)
            .map(|axis0| {
                let values = (0..n).map(|id| self.coord(id, axis0)).collect();
                Permutation::from_values(values).expect("bijection by construction")
            })
            .collect();
        DPermutation::from_components(components).expect("equal sizes")
    }
}

impl AvoiderSearch {
    /// Compiles the job: one check per (pattern, increasing axis subset).
    /// Patterns of dimension above `d` can never occur and are dropped.
    pub fn new(n: usize, d: usize, ps: &PatternSet) -> Result<AvoiderSearch, EngineError> {
        if d < 2 {
            return Err(EngineError::BadJob("dimension must be at least 2".to_string()));
        }
        if n == 0 || n > 64 {
            return Err(EngineError::BadJob("size must be in 1..=64".to_string()));
        }
        let mut checks = Vec::new();
        for pat in ps.iter() {
            let dp = pat.dimension();
            if dp > d || pat.size() > n {
                continue;
            }
            let cp = compile(pat);
            for_each_increasing_subset(d, dp, &mut |axes| {
                checks.push(Check {
                    cp: cp.clone(),
                    axes: axes.iter().map(|&a| a - 1).collect(),
                });
            });
        }
        Ok(AvoiderSearch { n, d, checks })
    }

    fn descend<F: FnMut(&State)>(&self, state: &mut State, values: &mut Vec<u16>, emit: &mut F) {
        if values.len() == self.d - 1 {
            state.place(values);
            if !state.violates(&self.checks) {
                if state.placed() == self.n {
                    emit(state);
                } else {
                    let mut next = Vec::with_capacity(self.d - 1);
                    self.descend(state, &mut next, emit);
                }
            }
            state.unplace();
            return;
        }
        let axis = values.len();
        let mut mask = state.unused[axis];
        while mask != 0 {
            let v = mask.trailing_zeros() as u16 + 1;
            mask &= mask - 1;
            values.push(v);
            self.descend(state, values, emit);
            values.pop();
        }
    }

    fn run<F: FnMut(&State)>(&self, prefix: Option<&SearchPrefix>, emit: &mut F) {
        let mut state = State::new(self.n, self.d);
        if let Some(prefix) = prefix {
            for column in &prefix.columns {
                state.place(column);
                if state.violates(&self.checks) {
                    return;
                }
            }
            if state.placed() == self.n {
                emit(&state);
                return;
            }
        }
        let mut values = Vec::with_capacity(self.d - 1);
        self.descend(&mut state, &mut values, emit);
    }

    /// Full sequential count.
    pub fn count(&self) -> u64 {
        self.count_from(None)
    }

    fn count_from_inner(&self, prefix: Option<&SearchPrefix>) -> u64 {
        let mut count = 0u64;
        self.run(prefix, &mut |_| count += 1);
        count
    }

    /// Count of the subtree rooted at `prefix` (0 if the prefix itself
    /// already contains a forbidden pattern).
    pub fn count_from(&self, prefix: Option<&SearchPrefix>) -> u64 {
        self.count_from_inner(prefix)
    }

    /// All avoiders, in lexicographic order of the concatenated one-line
    /// notations.
    pub fn list(&self) -> Vec<DPermutation> {
        let mut out = self.list_from(None);
        out.sort();
        out
    }

    /// Avoiders below `prefix`, unsorted.
    pub fn list_from(&self, prefix: Option<&SearchPrefix>) -> Vec<DPermutation> {
        let mut out = Vec::new();
        self.run(prefix, &mut |state| out.push(state.to_dpermutation()));
        out
    }

    /// The violation-free assignments of the first `depth` columns: roots
    /// of independent subtrees whose counts add up to the full count.
    pub fn prefixes(&self, depth: usize) -> Vec<SearchPrefix> {
        let depth = depth.min(self.n);
        let mut out = Vec::new();
        let mut state = State::new(self.n, self.d);
        self.collect_prefixes(&mut state, depth, &mut out);
        out
    }

    fn collect_prefixes(&self, state: &mut State, depth: usize, out: &mut Vec<SearchPrefix>) {
        if state.placed() == depth {
            let columns = (0..depth)
                .map(|id| (1..self.d).map(|a| state.coord(id, a)).collect())
                .collect();
            out.push(SearchPrefix { columns });
            return;
        }
        fn choose(
            search: &AvoiderSearch,
            state: &mut State,
            values: &mut Vec<u16>,
            depth: usize,
            out: &mut Vec<SearchPrefix>,
        ) {
            if values.len() == search.d - 1 {
                state.place(values);
                if !state.violates(&search.checks) {
                    search.collect_prefixes(state, depth, out);
                }
                state.unplace();
                return;
            }
            let axis = values.len();
            let mut mask = state.unused[axis];
            while mask != 0 {
                let v = mask.trailing_zeros() as u16 + 1;
                mask &= mask - 1;
                values.push(v);
                choose(search, state, values, depth, out);
                values.pop();
            }
        }
        let mut values = Vec::with_capacity(self.d - 1);
        choose(self, state, &mut values, depth, out);
    }
}

/// `|S_n^{d-1}(ps)|` by pruned depth-first search.
pub fn count_avoiders(n: usize, d: usize, ps: &PatternSet) -> Result<BigUint, EngineError> {
    count_avoiders_with(&EngineConfig::default(), n, d, ps)
}

pub fn count_avoiders_with(
    cfg: &EngineConfig,
    n: usize,
    d: usize,
    ps: &PatternSet,
) -> Result<BigUint, EngineError> {
    check_guard(avoid_node_bound(n, d), cfg)?;
    let search = AvoiderSearch::new(n, d, ps)?;
    Ok(BigUint::from(search.count()))
}

/// The same count by filtering every candidate with the standalone
/// containment test; the independent oracle for the pruned search.
pub fn count_avoiders_naive(n: usize, d: usize, ps: &PatternSet) -> BigUint {
    let mut count = 0u64;
    for_each_dpermutation(n, d, &mut |p| {
        if pattern::avoids_all(p, ps) {
            count += 1;
        }
    });
    BigUint::from(count)
}

/// Count of size-`n` `d`-permutations satisfying a named predicate;
/// anti-Baxter counts distinct images instead of filtering.
pub fn count_predicate(n: usize, d: usize, pred: NamedPredicate) -> Result<BigUint, EngineError> {
    count_predicate_with(&EngineConfig::default(), n, d, pred)
}

pub fn count_predicate_with(
    cfg: &EngineConfig,
    n: usize,
    d: usize,
    pred: NamedPredicate,
) -> Result<BigUint, EngineError> {
    if d < 2 || n == 0 {
        return Err(EngineError::BadJob("need d >= 2 and n >= 1".to_string()));
    }
    if pred == NamedPredicate::AntiBaxter {
        return Ok(baxter::anti_baxter_count(n, d, cfg.node_limit)?);
    }
    check_guard(baxter::host_space(n, d), cfg)?;
    let mut count = 0u64;
    for_each_dpermutation(n, d, &mut |p| {
        if pred.test(p) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Runs a list-mode job at `n = n_max`, returning the matching
/// `d`-permutations in lexicographic order of the concatenated notations.
pub fn enumerate_avoiders(
    cfg: &EngineConfig,
    job: &CountJob,
) -> Result<Vec<DPermutation>, EngineError> {
    if job.mode != Mode::List {
        return Err(EngineError::BadJob("enumerate requires list mode".to_string()));
    }
    let (n, d) = (job.n_max, job.d);
    match &job.constraint {
        Constraint::Avoid(ps) => {
            check_guard(avoid_node_bound(n, d), cfg)?;
            let search = AvoiderSearch::new(n, d, ps)?;
            Ok(search.list())
        }
        Constraint::Predicate(NamedPredicate::AntiBaxter) => {
            check_guard(baxter::host_space(n + 1, d), cfg)?;
            Ok(baxter::anti_baxter_images(n, d).into_iter().collect())
        }
        Constraint::Predicate(pred) => {
            check_guard(baxter::host_space(n, d), cfg)?;
            let mut out = Vec::new();
            for_each_dpermutation(n, d, &mut |p| {
                if pred.test(p) {
                    out.push(p.clone());
                }
            });
            Ok(out)
        }
    }
}

/// Batch driver: one row per (job, n) with `n = 1..=n_max`, in input order.
/// `now_ms` supplies timestamps (pass a constant in time-less contexts).
pub fn run_table(
    cfg: &EngineConfig,
    jobs: &[CountJob],
    now_ms: &mut dyn FnMut() -> u64,
) -> Result<CountTable, EngineError> {
    let mut rows = Vec::new();
    for job in jobs {
        for n in 1..=job.n_max {
            let started = now_ms();
            let count = match &job.constraint {
                Constraint::Avoid(ps) => count_avoiders_with(cfg, n, job.d, ps)?,
                Constraint::Predicate(pred) => count_predicate_with(cfg, n, job.d, *pred)?,
            };
            rows.push(CountRow {
                constraint: job.constraint.to_string(),
                d: job.d,
                n,
                count,
                elapsed_ms: now_ms().saturating_sub(started),
            });
        }
    }
    Ok(CountTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    fn count(n: usize, d: usize, s: &str) -> u64 {
        count_avoiders(n, d, &ps(s))
            .unwrap()
            .try_into()
            .unwrap()
    }

    #[test]
    fn count_examples() {
        assert_eq!(count(3, 3, "12/12"), 17);
        assert_eq!(count(4, 3, "123"), 100);
        assert_eq!(count(2, 3, "123/132"), 4);
        assert_eq!(count(3, 3, "12/21,21/12"), 6);
        assert_eq!(count(5, 3, "1234"), 9032);
    }

    #[test]
    fn agrees_with_naive_filter() {
        let sets = [
            "12/12",
            "123",
            "132,231",
            "2413[2;2],3142[2;2]",
            "12/21,21/12",
            "132/213",
        ];
        for s in sets {
            let set = ps(s);
            for n in 1..=4 {
                assert_eq!(
                    count_avoiders(n, 3, &set).unwrap(),
                    count_avoiders_naive(n, 3, &set),
                    "mismatch for {s} at n={n}"
                );
            }
        }
    }

    #[test]
    fn predicate_examples() {
        assert_eq!(
            count_predicate(4, 3, NamedPredicate::Baxter).unwrap(),
            BigUint::from(260u32)
        );
        assert_eq!(
            count_predicate(4, 3, NamedPredicate::Separable).unwrap(),
            BigUint::from(244u32)
        );
        assert_eq!(
            count_predicate(4, 3, NamedPredicate::AntiBaxter).unwrap(),
            BigUint::from(444u32)
        );
    }

    #[test]
    fn prefix_splitting_preserves_counts() {
        for s in ["12/12", "123", "132/213"] {
            let set = ps(s);
            let search = AvoiderSearch::new(4, 3, &set).unwrap();
            let total = search.count();
            for depth in 1..=2 {
                let split: u64 = search
                    .prefixes(depth)
                    .iter()
                    .map(|p| search.count_from(Some(p)))
                    .sum();
                assert_eq!(split, total, "depth {depth} split for {s}");
            }
        }
    }

    #[test]
    fn list_mode_matches_count_and_is_sorted() {
        let set = ps("12/12");
        let search = AvoiderSearch::new(3, 3, &set).unwrap();
        let list = search.list();
        assert_eq!(list.len() as u64, search.count());
        for w in list.windows(2) {
            assert!(w[0] < w[1]);
        }
        for p in &list {
            assert!(pattern::avoids_all(p, &set));
        }
    }

    #[test]
    fn enumerate_diagonals() {
        let orbit = crate::symmetry::pattern_orbit(&"123/132".parse().unwrap());
        let job = CountJob {
            d: 3,
            n_max: 5,
            constraint: Constraint::Avoid(orbit),
            mode: Mode::List,
        };
        let got = enumerate_avoiders(&EngineConfig::default(), &job).unwrap();
        assert_eq!(got.len(), 4);
        let id = Permutation::identity(5);
        let rev = id.reverse();
        for p in [&id, &rev] {
            for q in [&id, &rev] {
                let diag =
                    DPermutation::from_components(alloc::vec![p.clone(), q.clone()]).unwrap();
                assert!(got.contains(&diag));
            }
        }
    }

    #[test]
    fn scale_guard_refuses() {
        let tiny = EngineConfig { node_limit: 10 };
        assert!(matches!(
            count_avoiders_with(&tiny, 4, 3, &ps("12/12")),
            Err(EngineError::ScaleGuardExceeded { .. })
        ));
        assert!(matches!(
            count_predicate_with(&tiny, 4, 3, NamedPredicate::Baxter),
            Err(EngineError::ScaleGuardExceeded { .. })
        ));
    }

    #[test]
    fn run_table_rows() {
        let jobs = [
            CountJob {
                d: 3,
                n_max: 4,
                constraint: Constraint::Avoid(ps("12/12")),
                mode: Mode::Count,
            },
            CountJob {
                d: 2,
                n_max: 5,
                constraint: Constraint::Predicate(NamedPredicate::Baxter),
                mode: Mode::Count,
            },
        ];
        let table = run_table(&EngineConfig::default(), &jobs, &mut || 0).unwrap();
        let counts: Vec<u64> = table
            .rows
            .iter()
            .map(|r| u64::try_from(&r.count).unwrap())
            .collect();
        assert_eq!(counts, [1, 3, 17, 151, 1, 2, 6, 22, 92]);
        assert_eq!(table.rows[0].constraint, "12/12");
        assert_eq!(table.rows[5].constraint, "@baxter");
        let empty = run_table(&EngineConfig::default(), &[], &mut || 0).unwrap();
        assert!(empty.rows.is_empty());
    }

    #[test]
    fn constraint_literals() {
        let c: Constraint = "@baxter".parse().unwrap();
        assert_eq!(c, Constraint::Predicate(NamedPredicate::Baxter));
        let c: Constraint = "12/12,123".parse().unwrap();
        assert_eq!(c.to_string(), "123,12/12");
        assert!("@nonsense".parse::<Constraint>().is_err());
    }
}
