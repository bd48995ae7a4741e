//! Proper systems of integer intervals, their incidence graph, the tree
//! (admissibility) test, and markings.

use num::BigUint;

use crate::polygon::SigmaProfile;

/// A closed integer interval [a, b]; a == b is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub a: i64,
    pub b: i64,
}

impl Interval {
    pub fn new(a: i64, b: i64) -> Self {
        assert!(a <= b, "interval endpoints out of order: [{a}, {b}]");
        Interval { a, b }
    }

    pub fn len(&self) -> u64 {
        (self.b - self.a) as u64 + 1
    }

    pub fn contains(&self, i: i64) -> bool {
        self.a <= i && i <= self.b
    }
}

/// A multiset of intervals in [0, m], kept sorted so that equal multisets
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProperSystem {
    intervals: Vec<Interval>,
}

impl ProperSystem {
    pub fn new(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_unstable();
        ProperSystem { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Sorted lexicographic byte encoding; equal multisets produce equal
    /// encodings and the map is injective.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = String::new();
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            out.push_str(&format!("{},{}", iv.a, iv.b));
        }
        out.into_bytes()
    }
}

/// A marking: one integer point chosen in each interval. Stored as a sorted
/// multiset of (interval, mark) pairs, so markings of duplicate intervals
/// that agree as multisets are identified.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedSystem {
    pairs: Vec<(Interval, i64)>,
}

impl MarkedSystem {
    pub fn new(mut pairs: Vec<(Interval, i64)>) -> Self {
        for (iv, mark) in &pairs {
            assert!(
                iv.contains(*mark),
                "mark {mark} outside interval [{}, {}]",
                iv.a,
                iv.b
            );
        }
        pairs.sort_unstable();
        MarkedSystem { pairs }
    }

    pub fn pairs(&self) -> &[(Interval, i64)] {
        &self.pairs
    }

    pub fn underlying(&self) -> ProperSystem {
        ProperSystem::new(self.pairs.iter().map(|&(iv, _)| iv).collect())
    }

    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = String::new();
        for (i, (iv, mark)) in self.pairs.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            out.push_str(&format!("{},{}@{}", iv.a, iv.b, mark));
        }
        out.into_bytes()
    }
}

/// Why a multiset of intervals fails to be a proper system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// An interval leaves [0, m].
    Range { interval: Interval, m: usize },
    /// Wrong number of intervals.
    Count { got: usize, want: usize },
    /// Coverage at integer point i differs from σ(i).
    Coverage { i: i64, got: u64, want: u64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Range { interval, m } => {
                write!(f, "interval [{}, {}] leaves [0, {m}]", interval.a, interval.b)
            }
            Violation::Count { got, want } => {
                write!(f, "system has {got} intervals, budget is {want}")
            }
            Violation::Coverage { i, got, want } => {
                write!(f, "coverage at i={i}: got {got}, want {want}")
            }
        }
    }
}

/// Checks the three defining bullets of a proper system against a profile.
pub fn validate_proper(system: &ProperSystem, profile: &SigmaProfile) -> Result<(), Violation> {
    let m = profile.m;
    for &iv in system.intervals() {
        if iv.a < 0 || iv.b > m as i64 {
            return Err(Violation::Range { interval: iv, m });
        }
    }
    let want = profile.interval_budget();
    if system.len() != want {
        return Err(Violation::Count { got: system.len(), want });
    }
    for i in 0..=m as i64 {
        let got = system.intervals().iter().filter(|iv| iv.contains(i)).count() as u64;
        let want = profile.sigma[i as usize];
        if got != want {
            return Err(Violation::Coverage { i, got, want });
        }
    }
    Ok(())
}

/// The graph g: one vertex per interval instance, one vertex per half-integer
/// point i + 1/2 (i = 0..m-1), and an edge whenever the half-integer point is
/// an endpoint-neighbor of the interval.
#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    pub interval_count: usize,
    pub half_count: usize,
    /// Edges as (interval index, half-vertex index).
    pub edges: Vec<(usize, usize)>,
}

pub fn incidence_graph(system: &ProperSystem, m: usize) -> IncidenceGraph {
    let mut edges = Vec::new();
    for (idx, iv) in system.intervals().iter().enumerate() {
        // Half-vertex a - 1/2 exists iff a >= 1; half-vertex b + 1/2 iff b <= m-1.
        if iv.a >= 1 {
            edges.push((idx, (iv.a - 1) as usize));
        }
        if iv.b <= m as i64 - 1 {
            edges.push((idx, iv.b as usize));
        }
    }
    IncidenceGraph {
        interval_count: system.len(),
        half_count: m,
        edges,
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

impl IncidenceGraph {
    /// Tree test: connected and |E| = |V| - 1, via union-find. Parallel
    /// edges count as cycles.
    pub fn is_tree(&self) -> bool {
        let v = self.interval_count + self.half_count;
        if self.edges.len() != v - 1 {
            return false;
        }
        let mut dsu = Dsu::new(v);
        for &(iv, h) in &self.edges {
            if !dsu.union(iv, self.interval_count + h) {
                return false; // cycle
            }
        }
        // v-1 successful unions on v vertices leave one component.
        true
    }
}

/// True iff the incidence graph of the system is a tree.
pub fn is_admissible(system: &ProperSystem, m: usize) -> bool {
    incidence_graph(system, m).is_tree()
}

fn binomial(n: u64, k: u64) -> BigUint {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of distinct markings. For pairwise distinct intervals this is the
/// product of interval lengths; duplicate intervals contribute multisets of
/// marks, i.e. a multichoose factor.
pub fn count_markings(system: &ProperSystem) -> BigUint {
    let mut total = BigUint::from(1u32);
    let mut i = 0;
    let intervals = system.intervals();
    while i < intervals.len() {
        let mut j = i;
        while j < intervals.len() && intervals[j] == intervals[i] {
            j += 1;
        }
        let mult = (j - i) as u64;
        let len = intervals[i].len();
        // multisets of size `mult` from `len` choices
        total *= binomial(len + mult - 1, mult);
        i = j;
    }
    total
}

/// All distinct markings of the system.
pub fn enumerate_markings(system: &ProperSystem) -> Vec<MarkedSystem> {
    // Group duplicates; each group picks a non-decreasing sequence of marks.
    let mut groups: Vec<(Interval, usize)> = Vec::new();
    for &iv in system.intervals() {
        match groups.last_mut() {
            Some((prev, count)) if *prev == iv => *count += 1,
            _ => groups.push((iv, 1)),
        }
    }

    let mut results = vec![Vec::new()];
    for (iv, mult) in groups {
        let choices = multisets_of_marks(iv, mult);
        let mut next = Vec::with_capacity(results.len() * choices.len());
        for prefix in &results {
            for choice in &choices {
                let mut v: Vec<(Interval, i64)> = prefix.clone();
                v.extend(choice.iter().map(|&mark| (iv, mark)));
                next.push(v);
            }
        }
        results = next;
    }
    results.into_iter().map(MarkedSystem::new).collect()
}

fn multisets_of_marks(iv: Interval, mult: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(mult);
    fn rec(iv: Interval, mult: usize, min: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() == mult {
            out.push(current.clone());
            return;
        }
        for mark in min..=iv.b {
            current.push(mark);
            rec(iv, mult, mark, current, out);
            current.pop();
        }
    }
    rec(iv, mult, iv.a, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::PolygonSpec;

    fn sys(raw: &[(i64, i64)]) -> ProperSystem {
        ProperSystem::new(raw.iter().map(|&(a, b)| Interval::new(a, b)).collect())
    }

    #[test]
    fn validate_square_d1() {
        let profile = PolygonSpec::square(1, 1).profile().unwrap();
        assert_eq!(validate_proper(&sys(&[(1, 1)]), &profile), Ok(()));
    }

    #[test]
    fn validate_square_d2() {
        let profile = PolygonSpec::square(2, 1).profile().unwrap();
        assert_eq!(validate_proper(&sys(&[(1, 2), (2, 2), (3, 3)]), &profile), Ok(()));
        assert_eq!(
            validate_proper(&sys(&[(1, 2), (2, 3), (2, 2)]), &profile),
            Err(Violation::Coverage { i: 2, got: 3, want: 2 })
        );
    }

    #[test]
    fn validate_range() {
        let profile = PolygonSpec::square(1, 1).profile().unwrap();
        assert!(matches!(
            validate_proper(&sys(&[(1, 3)]), &profile),
            Err(Violation::Range { .. })
        ));
    }

    #[test]
    fn graph_shapes() {
        let g = incidence_graph(&sys(&[(1, 1)]), 2);
        assert_eq!((g.interval_count + g.half_count, g.edges.len()), (3, 2));
        assert!(g.is_tree());

        let g = incidence_graph(&sys(&[(1, 2), (2, 2), (3, 3)]), 4);
        assert_eq!((g.interval_count + g.half_count, g.edges.len()), (7, 6));
        let h2_degree = g.edges.iter().filter(|&&(_, h)| h == 2).count();
        assert_eq!(h2_degree, 3);
        assert!(g.is_tree());

        // Interval starting at 0 only has the right-side edge.
        let g = incidence_graph(&sys(&[(0, 1), (1, 1), (2, 2)]), 3);
        let zero_one_edges = g.edges.iter().filter(|&&(iv, _)| iv == 0).count();
        assert_eq!(zero_one_edges, 1);
    }

    #[test]
    fn parallel_edges_are_cycles() {
        assert!(!is_admissible(&sys(&[(1, 1), (1, 1)]), 2));
    }

    #[test]
    fn marking_counts() {
        assert_eq!(count_markings(&sys(&[(1, 1)])), BigUint::from(1u32));
        assert_eq!(
            count_markings(&sys(&[(1, 2), (2, 2), (3, 3)])),
            BigUint::from(2u32)
        );
        // Duplicates collapse: unordered pairs of marks from {1, 2, 3}.
        assert_eq!(count_markings(&sys(&[(1, 3), (1, 3)])), BigUint::from(6u32));
        let marked = enumerate_markings(&sys(&[(1, 3), (1, 3)]));
        assert_eq!(marked.len(), 6);
        let dedup: std::collections::HashSet<_> =
            marked.iter().map(|ms| ms.canonical_bytes()).collect();
        assert_eq!(dedup.len(), 6);
    }

    #[test]
    fn enumeration_matches_count() {
        for system in [
            sys(&[(1, 2), (2, 2), (3, 3)]),
            sys(&[(0, 2), (0, 2), (1, 3)]),
            sys(&[(2, 2)]),
        ] {
            let n = enumerate_markings(&system).len();
            assert_eq!(BigUint::from(n as u64), count_markings(&system));
        }
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let a = sys(&[(2, 2), (1, 2)]);
        let b = sys(&[(1, 2), (2, 2)]);
        assert_eq!(a.canonical_bytes(), b.canonical_bytes());

        let ma = MarkedSystem::new(vec![(Interval::new(1, 3), 2), (Interval::new(1, 3), 1)]);
        let mb = MarkedSystem::new(vec![(Interval::new(1, 3), 1), (Interval::new(1, 3), 2)]);
        assert_eq!(ma.canonical_bytes(), mb.canonical_bytes());
    }
}
