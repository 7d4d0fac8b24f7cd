//! Supports (edge sets with an optional diagonal), forbidden sets, random graphs
//! and the symmetric-difference error between supports.
//!
//! Vertices are 0-based internally; the edge-list text format is 1-based.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};

/// An unordered pair of distinct vertices, stored as `(min, max)`.
pub type Edge = (usize, usize);

/// Canonical form of an unordered pair.
#[inline]
pub fn edge(i: usize, j: usize) -> Edge {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

/// The support of a symmetric matrix: a set of unordered off-diagonal pairs,
/// plus the diagonal entries that are allowed to be nonzero (empty for simple
/// graphs, which is the common case).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Support {
    n_vertices: usize,
    edges: BTreeSet<Edge>,
    diagonal: BTreeSet<usize>,
}

impl Support {
    /// Empty support on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Support {
            n_vertices: n,
            edges: BTreeSet::new(),
            diagonal: BTreeSet::new(),
        }
    }

    /// Builds a simple-graph support from unordered pairs. Pairs are canonicalized;
    /// self-loops and out-of-range vertices are rejected.
    pub fn from_edges(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for (i, j) in pairs {
            if i == j {
                return Err(Error::InvalidArgument(format!(
                    "self-loop ({i}, {j}) in a simple support"
                )));
            }
            if i >= n || j >= n {
                return Err(Error::InvalidArgument(format!(
                    "vertex out of range in edge ({i}, {j}) for n = {n}"
                )));
            }
            edges.insert(edge(i, j));
        }
        Ok(Support {
            n_vertices: n,
            edges,
            diagonal: BTreeSet::new(),
        })
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.insert((i, j));
            }
        }
        Support {
            n_vertices: n,
            edges,
            diagonal: BTreeSet::new(),
        }
    }

    /// Marks a diagonal entry as part of the support (general, non-simple supports).
    pub fn with_diagonal(mut self, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        for v in vertices {
            if v >= self.n_vertices {
                return Err(Error::InvalidArgument(format!(
                    "diagonal vertex {v} out of range"
                )));
            }
            self.diagonal.insert(v);
        }
        Ok(self)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn diagonal(&self) -> impl Iterator<Item = usize> + '_ {
        self.diagonal.iter().copied()
    }

    /// All free entries as canonical pairs, diagonal ones as `(i, i)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .copied()
            .chain(self.diagonal.iter().map(|&v| (v, v)))
    }

    /// Number of unordered edges (diagonal entries not counted).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Ordered-entry count: 2 per off-diagonal edge plus 1 per diagonal entry.
    /// This matches the counting used in penalty terms (`|S|`).
    pub fn ordered_size(&self) -> usize {
        2 * self.edges.len() + self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.diagonal.is_empty()
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            self.diagonal.contains(&i)
        } else {
            self.edges.contains(&edge(i, j))
        }
    }

    pub fn insert_edge(&mut self, i: usize, j: usize) {
        assert!(i != j && i < self.n_vertices && j < self.n_vertices);
        self.edges.insert(edge(i, j));
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> bool {
        self.edges.remove(&edge(i, j))
    }

    /// Degree of a vertex (diagonal entries do not contribute).
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_subset_of(&self, other: &Support) -> bool {
        self.edges.is_subset(&other.edges) && self.diagonal.is_subset(&other.diagonal)
    }

    /// Serializes to the edge-list text format: a header `n=<N>` followed by
    /// one `i j` pair per line, 1-indexed.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n={}", self.n_vertices);
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "{} {}", i + 1, j + 1);
        }
        for &v in &self.diagonal {
            let _ = writeln!(out, "{} {}", v + 1, v + 1);
        }
        out
    }

    /// Parses the edge-list text format produced by [`Support::to_edge_list`].
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (first_no, header) = lines
            .next()
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: "empty input, expected a `n=<N>` header".into(),
            })?;
        let n: usize = header
            .trim()
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse {
                line: first_no + 1,
                message: format!("expected `n=<N>` header, got {header:?}"),
            })?;
        let mut support = Support::empty(n);
        for (no, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                tok.and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse {
                        line: no + 1,
                        message: format!("expected two 1-based vertex indices, got {line:?}"),
                    })
            };
            let i = parse(it.next())?;
            let j = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: no + 1,
                    message: format!("trailing tokens in {line:?}"),
                });
            }
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::Parse {
                    line: no + 1,
                    message: format!("vertex out of range [1, {n}] in {line:?}"),
                });
            }
            if i == j {
                support.diagonal.insert(i - 1);
            } else {
                support.edges.insert(edge(i - 1, j - 1));
            }
        }
        Ok(support)
    }
}

/// A set of entries known a priori to be zero, closed under transposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSet {
    n_vertices: usize,
    /// Off-diagonal forbidden pairs, canonical form.
    pairs: BTreeSet<Edge>,
    /// Forbidden diagonal entries.
    diagonal: BTreeSet<usize>,
}

impl ForbiddenSet {
    /// The canonical diagonal forbidden set (no self-loops).
    pub fn diagonal(n: usize) -> Self {
        ForbiddenSet {
            n_vertices: n,
            pairs: BTreeSet::new(),
            diagonal: (0..n).collect(),
        }
    }

    /// Empty forbidden set (all entries free).
    pub fn none(n: usize) -> Self {
        ForbiddenSet {
            n_vertices: n,
            pairs: BTreeSet::new(),
            diagonal: BTreeSet::new(),
        }
    }

    /// Builds from ordered pairs; transposes are inserted automatically so the
    /// set is closed under transposition.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut f = ForbiddenSet {
            n_vertices: n,
            pairs: BTreeSet::new(),
            diagonal: BTreeSet::new(),
        };
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidArgument(format!(
                    "forbidden entry ({i}, {j}) out of range for n = {n}"
                )));
            }
            if i == j {
                f.diagonal.insert(i);
            } else {
                f.pairs.insert(edge(i, j));
            }
        }
        Ok(f)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        if i == j {
            self.diagonal.contains(&i)
        } else {
            self.pairs.contains(&edge(i, j))
        }
    }

    /// Number of ordered forbidden entries.
    pub fn ordered_size(&self) -> usize {
        2 * self.pairs.len() + self.diagonal.len()
    }

    /// The maximal support allowed by this forbidden set: all free off-diagonal
    /// pairs plus all free diagonal entries.
    pub fn complement(&self) -> Support {
        let n = self.n_vertices;
        let mut s = Support::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.pairs.contains(&(i, j)) {
                    s.edges.insert((i, j));
                }
            }
            if !self.diagonal.contains(&i) {
                s.diagonal.insert(i);
            }
        }
        s
    }

    /// Free off-diagonal pairs only (the starting support of the backward
    /// algorithm).
    pub fn free_edges(&self) -> Support {
        let mut s = self.complement();
        s.diagonal.clear();
        s
    }

    /// True when the support lives entirely on free entries.
    pub fn allows(&self, s: &Support) -> bool {
        s.n_vertices == self.n_vertices
            && s.edges.iter().all(|&(i, j)| !self.contains(i, j))
            && s.diagonal.iter().all(|&v| !self.contains(v, v))
    }
}

/// Symmetric-difference error between two supports, in unordered entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SupportError(pub usize);

impl SupportError {
    pub fn is_exact(&self) -> bool {
        self.0 == 0
    }
}

/// The kite graph on `n >= 3` vertices: the path `0-1-...-(n-1)` plus the edge
/// `(n-3, n-1)`, which closes a triangle at the far end. Exactly `n` edges.
pub fn make_kite(n: usize) -> Result<Support> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "kite graph needs at least 3 vertices, got {n}"
        )));
    }
    let mut pairs: Vec<Edge> = (0..n - 1).map(|k| (k, k + 1)).collect();
    pairs.push((n - 3, n - 1));
    Support::from_edges(n, pairs)
}

/// Erdős–Rényi sample: each unordered pair is included independently with
/// probability `p`. Deterministic given the RNG state.
pub fn sample_erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Support> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut s = Support::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < p {
                s.edges.insert((i, j));
            }
        }
    }
    Ok(s)
}

/// δ(Ŝ) = |Ŝ ∪ S*| − |Ŝ ∩ S*| counted in unordered entries.
pub fn support_error(estimated: &Support, truth: &Support) -> Result<SupportError> {
    if estimated.n_vertices != truth.n_vertices {
        return Err(Error::InvalidArgument(format!(
            "vertex count mismatch: {} vs {}",
            estimated.n_vertices, truth.n_vertices
        )));
    }
    let e = estimated
        .edges
        .symmetric_difference(&truth.edges)
        .count();
    let d = estimated
        .diagonal
        .symmetric_difference(&truth.diagonal)
        .count();
    Ok(SupportError(e + d))
}

/// The subgraph induced by `vertices`, relabeled to `0..vertices.len()`.
/// Returns the relabeling map alongside: `map[new] = old`.
pub fn induced_subgraph(s: &Support, vertices: &[usize]) -> Result<(Support, Vec<usize>)> {
    let mut map: Vec<usize> = vertices.to_vec();
    map.sort_unstable();
    map.dedup();
    if let Some(&v) = map.iter().find(|&&v| v >= s.n_vertices) {
        return Err(Error::InvalidArgument(format!(
            "vertex {v} out of range for n = {}",
            s.n_vertices
        )));
    }
    let index_of = |v: usize| map.binary_search(&v).ok();
    let mut sub = Support::empty(map.len());
    for &(i, j) in &s.edges {
        if let (Some(a), Some(b)) = (index_of(i), index_of(j)) {
            sub.edges.insert(edge(a, b));
        }
    }
    for &v in &s.diagonal {
        if let Some(a) = index_of(v) {
            sub.diagonal.insert(a);
        }
    }
    Ok((sub, map))
}

/// Outcome of the spanning-kite search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KiteSearch {
    /// A vertex ordering embedding the kite was found.
    Found,
    /// Exhaustive search completed without finding one.
    Absent,
    /// The node budget ran out before the search completed.
    Inconclusive,
}

/// Searches for the kite graph as a spanning (not necessarily induced) subgraph:
/// a Hamiltonian path `v_0 .. v_{n-1}` such that `(v_{n-3}, v_{n-1})` is also an
/// edge. Exact backtracking over path extensions, aborting after `budget`
/// search nodes.
pub fn contains_spanning_kite(s: &Support, budget: u64) -> KiteSearch {
    let n = s.n_vertices;
    if n < 3 {
        return KiteSearch::Absent;
    }
    if s.edge_count() < n {
        // A kite needs n edges; a spanning kite cannot embed into fewer.
        return KiteSearch::Absent;
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            s.edges()
                .filter_map(|(a, b)| {
                    if a == v {
                        Some(b)
                    } else if b == v {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();

    let mut nodes = 0u64;
    let mut used = vec![false; n];
    let mut path = Vec::with_capacity(n);

    fn extend(
        adj: &[Vec<usize>],
        used: &mut [bool],
        path: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        *nodes += 1;
        if *nodes > budget {
            return None; // out of budget
        }
        let n = adj.len();
        if path.len() == n {
            // Path complete; check the terminal triangle edge (v_{n-3}, v_{n-1}).
            let a = path[n - 3];
            let b = path[n - 1];
            return Some(adj[a].contains(&b));
        }
        let last = *path.last().unwrap();
        for &next in &adj[last] {
            if !used[next] {
                used[next] = true;
                path.push(next);
                match extend(adj, used, path, nodes, budget) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
                path.pop();
                used[next] = false;
            }
        }
        Some(false)
    }

    for start in 0..n {
        used[start] = true;
        path.push(start);
        match extend(&adj, &mut used, &mut path, &mut nodes, budget) {
            Some(true) => return KiteSearch::Found,
            Some(false) => {}
            None => return KiteSearch::Inconclusive,
        }
        path.pop();
        used[start] = false;
    }
    KiteSearch::Absent
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kite_3_is_the_triangle() {
        let k = make_kite(3).unwrap();
        let expected = Support::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn kite_5_matches_definition() {
        let k = make_kite(5).unwrap();
        let expected =
            Support::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(k, expected);
        assert_eq!(k.edge_count(), 5);
        assert_eq!(k.ordered_size(), 10);
    }

    #[test]
    fn kite_4_has_terminal_triangle() {
        let k = make_kite(4).unwrap();
        assert_eq!(k.edge_count(), 4);
        // Vertices 1, 2, 3 form a triangle.
        assert!(k.contains_edge(1, 2));
        assert!(k.contains_edge(2, 3));
        assert!(k.contains_edge(1, 3));
    }

    #[test]
    fn kite_rejects_small_n() {
        assert!(make_kite(2).is_err());
    }

    #[test]
    fn erdos_renyi_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let empty = sample_erdos_renyi(10, 0.0, &mut rng).unwrap();
        assert!(empty.is_empty());
        let full = sample_erdos_renyi(10, 1.0, &mut rng).unwrap();
        assert_eq!(full.edge_count(), 45);
        assert!(sample_erdos_renyi(4, 1.5, &mut rng).is_err());
    }

    #[test]
    fn erdos_renyi_is_reproducible() {
        let a = sample_erdos_renyi(30, 0.37, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let b = sample_erdos_renyi(30, 0.37, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn erdos_renyi_mean_edge_count() {
        // Binomial(C(100,2), 0.5): mean 2475, sd ~ 35.2 per draw; the mean of
        // 10^4 draws should land within 3 binomial sigma of the per-draw sd
        // scaled by 1/sqrt(draws).
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draws = 10_000;
        let mut total = 0usize;
        for _ in 0..draws {
            total += sample_erdos_renyi(100, 0.5, &mut rng).unwrap().edge_count();
        }
        let mean = total as f64 / draws as f64;
        let sigma = (4950.0 * 0.25f64).sqrt() / (draws as f64).sqrt();
        assert!(
            (mean - 2475.0).abs() < 3.0 * sigma,
            "mean edge count {mean} too far from 2475"
        );
    }

    #[test]
    fn support_error_examples() {
        let kite = make_kite(5).unwrap();
        assert_eq!(support_error(&kite, &kite).unwrap(), SupportError(0));
        let empty = Support::empty(5);
        assert_eq!(support_error(&empty, &kite).unwrap(), SupportError(5));
        let a = Support::from_edges(5, [(0, 1)]).unwrap();
        let b = Support::from_edges(5, [(1, 2)]).unwrap();
        assert_eq!(support_error(&a, &b).unwrap(), SupportError(2));
        let other = Support::empty(4);
        assert!(support_error(&a, &other).is_err());
    }

    #[test]
    fn induced_subgraph_examples() {
        let kite = make_kite(5).unwrap();
        let (tail, map) = induced_subgraph(&kite, &[2, 3, 4]).unwrap();
        assert_eq!(map, vec![2, 3, 4]);
        assert_eq!(tail, Support::complete(3)); // the terminal triangle
        let (one, _) = induced_subgraph(&kite, &[0, 1]).unwrap();
        assert_eq!(one, Support::from_edges(2, [(0, 1)]).unwrap());
        let (same, map) = induced_subgraph(&kite, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(same, kite);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);
        assert!(induced_subgraph(&kite, &[0, 7]).is_err());
    }

    #[test]
    fn spanning_kite_on_kites_and_star() {
        for n in 3..=12 {
            let k = make_kite(n).unwrap();
            assert_eq!(contains_spanning_kite(&k, 1_000_000), KiteSearch::Found);
        }
        // K_{1,4} is triangle-free, no kite.
        let star = Support::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(contains_spanning_kite(&star, 1_000_000), KiteSearch::Absent);
    }

    #[test]
    fn spanning_kite_in_k4_by_enumeration() {
        // Oracle: enumerate all 4! orderings of K_4 and check the kite pattern
        // directly; compare with the backtracking search.
        let k4 = Support::complete(4);
        let mut found = false;
        let verts = [0usize, 1, 2, 3];
        let mut perm = verts;
        // Heap's algorithm is overkill for 24 permutations; generate naively.
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        perm = [a, b, c, d];
                        let mut sorted = perm;
                        sorted.sort_unstable();
                        if sorted != verts {
                            continue;
                        }
                        let path_ok = (0..3).all(|t| k4.contains_edge(perm[t], perm[t + 1]));
                        if path_ok && k4.contains_edge(perm[1], perm[3]) {
                            found = true;
                        }
                    }
                }
            }
        }
        assert!(found);
        assert_eq!(contains_spanning_kite(&k4, 1_000_000), KiteSearch::Found);
    }

    #[test]
    fn spanning_kite_budget_abort() {
        // A large sparse cycle exhausts a tiny budget without an answer.
        let n = 40;
        let cyc =
            Support::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
        assert_eq!(contains_spanning_kite(&cyc, 3), KiteSearch::Inconclusive);
    }

    #[test]
    fn edge_list_round_trip() {
        let kite = make_kite(5).unwrap();
        let text = kite.to_edge_list();
        assert!(text.starts_with("n=5\n"));
        assert!(text.contains("1 2"));
        let back = Support::from_edge_list(&text).unwrap();
        assert_eq!(back, kite);
    }

    #[test]
    fn edge_list_rejects_malformed() {
        let err = Support::from_edge_list("n=3\n1 x\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other}"),
        }
        assert!(Support::from_edge_list("").is_err());
        assert!(Support::from_edge_list("n=2\n1 3\n").is_err());
    }

    #[test]
    fn forbidden_set_basics() {
        let f = ForbiddenSet::diagonal(4);
        assert!(f.contains(2, 2));
        assert!(!f.contains(0, 1));
        assert_eq!(f.ordered_size(), 4);
        let free = f.complement();
        assert_eq!(free.edge_count(), 6);
        assert_eq!(free.diagonal().count(), 0);
        assert!(f.allows(&make_kite(4).unwrap()));

        let g = ForbiddenSet::from_pairs(4, [(0, 1)]).unwrap();
        assert!(g.contains(1, 0), "closed under transposition");
        assert!(!g.allows(&Support::from_edges(4, [(0, 1)]).unwrap()));
        assert_eq!(g.complement().diagonal().count(), 4);
    }
}
