//! The left-weighting graph on simple braids other than `1` and `Δ`, its lifts
//! to windows of consecutive vertices, and exact path counting over both.

mod cache;
mod count;
mod digraph;
mod lift;
mod spectrum;

pub use cache::GraphCache;
pub use count::{
    count_avoiding, count_loops, count_paths, count_table, loop_counts, path_counts,
    rigid_pa_lower_count, CountRow, CountTable, LoopReading,
};
pub use digraph::SparseDigraph;
pub(crate) use count::{rigid_pa_lower_counts, PaBoundRow};
pub(crate) use spectrum::big_ratio;
pub use lift::{lift, LiftedGraph, DEFAULT_LIFT_CAP};
pub use spectrum::{ratio_estimate, spectral_radius, SpectrumMethod, SpectrumReport};

use crate::braid::{delta, delta_ij, lw, GenSet, Permutation, SimpleBraid};
use crate::error::{Error, Result};

/// Vertices are simple braids except `1` and `Δ`, in lexicographic order of their
/// permutation image; `u → v` iff `(u, v)` is left-weighted.
#[derive(Clone, Debug)]
pub struct LWGraph {
    n: usize,
    vertices: Vec<SimpleBraid>,
    adj: SparseDigraph,
}

pub fn build_graph(n: usize) -> Result<LWGraph> {
    crate::check_strands(n)?;
    let vertices: Vec<SimpleBraid> = Permutation::all(n)
        .into_iter()
        .map(SimpleBraid::from_permutation)
        .filter(|s| !s.is_identity() && !s.is_delta())
        .collect();
    let starts: Vec<GenSet> = vertices.iter().map(|s| s.starting_set()).collect();
    let lists = vertices
        .iter()
        .map(|u| {
            let fin = u.finishing_set();
            (0..vertices.len() as u32).filter(|&v| starts[v as usize].is_subset(fin)).collect()
        })
        .collect();
    Ok(LWGraph { n, vertices, adj: SparseDigraph::from_successors(lists) })
}

impl LWGraph {
    pub(crate) fn from_parts(n: usize, adj: SparseDigraph) -> Result<Self> {
        let g = build_graph(n)?;
        if adj != g.adj {
            return Err(Error::Invalid("cached edges do not match the graph".into()));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.edge_count()
    }

    pub fn vertices(&self) -> &[SimpleBraid] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &SimpleBraid {
        &self.vertices[i]
    }

    pub fn index_of(&self, s: &SimpleBraid) -> Option<usize> {
        self.vertices.binary_search(s).ok()
    }

    pub fn adjacency(&self) -> &SparseDigraph {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.has_edge(u, v)
    }

    /// Vertex indices of a factor sequence, checking that it is a path.
    pub fn path_indices(&self, factors: &[SimpleBraid]) -> Result<Vec<u32>> {
        let idx: Vec<u32> = factors
            .iter()
            .map(|s| self.index_of(s).map(|i| i as u32).ok_or(Error::NotAPath))
            .collect::<Result<_>>()?;
        if idx.windows(2).any(|w| !self.has_edge(w[0] as usize, w[1] as usize)) {
            return Err(Error::NotAPath);
        }
        Ok(idx)
    }
}

/// Outcome of checking that all entries of `A^m` are positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityCheck {
    pub length: usize,
    pub all_positive: bool,
    /// First `(u, v)` in index order with no path of the given length.
    pub violation: Option<(usize, usize)>,
}

/// Whether every ordered vertex pair is joined by a path of exactly `length` edges.
pub fn check_path_length(g: &LWGraph, length: usize) -> ConnectivityCheck {
    let v = g.vertex_count();
    let words = v.div_ceil(64);
    // reach[u] = set of vertices reachable from u in exactly m steps
    let mut reach = vec![0u64; v * words];
    for u in 0..v {
        reach[u * words + u / 64] |= 1 << (u % 64);
    }
    for _ in 0..length {
        let mut next = vec![0u64; v * words];
        for u in 0..v {
            for &w in g.adj.successors(u) {
                let w = w as usize;
                for k in 0..words {
                    next[u * words + k] |= reach[w * words + k];
                }
            }
        }
        reach = next;
    }
    let violation = (0..v)
        .flat_map(|u| (0..v).map(move |t| (u, t)))
        .find(|&(u, t)| reach[u * words + t / 64] & (1 << (t % 64)) == 0);
    ConnectivityCheck { length, all_positive: violation.is_none(), violation }
}

/// `A^5` is entrywise positive.
pub fn check_length5(g: &LWGraph) -> ConnectivityCheck {
    check_path_length(g, 5)
}

/// Product `σ_a σ_{a±1} ⋯ σ_b`, ascending or descending as needed.
fn generator_run(n: usize, a: usize, b: usize) -> Result<SimpleBraid> {
    let letters: Vec<usize> = if a <= b { (a..=b).collect() } else { (b..=a).rev().collect() };
    SimpleBraid::from_positive_word(n, &letters)
}

/// The four intermediate braids of an explicit length-5 path `s1 → x1 → x2 → x3 → x4 → s2`.
///
/// With `m = ⌊n/2⌋`, `c = ⌈n/2⌉`, `i1 = min final(s1)` and `i2 = min` of the
/// generators outside `init(s2)`:
/// `x1 = σ_{i1}⋯σ_m`; `x2` interleaves the two halves (`j ↦ 2j` for `j ≤ m`, odd
/// values after); `x3 = x̄2 Δ_{1,m} Δ_{m+1,n}`; `x4` is the left complement of
/// `σ_{i2}⋯σ_c`. The descent conditions that make the path valid are checked.
pub fn witness_path(g: &LWGraph, s1: &SimpleBraid, s2: &SimpleBraid) -> Result<[SimpleBraid; 4]> {
    let n = g.n();
    if g.index_of(s1).is_none() || g.index_of(s2).is_none() {
        return Err(Error::NotAPath);
    }
    let fail = |what: &str| Error::Convention(format!("witness path: {what}"));
    let m = n / 2;
    let c = n.div_ceil(2);
    let i1 = s1.finishing_set().min().ok_or_else(|| fail("empty finishing set"))?;
    let i2 = GenSet::full(n)
        .difference(s2.starting_set())
        .min()
        .ok_or_else(|| fail("full starting set"))?;

    let x1 = generator_run(n, i1, m)?;
    let pi2: Vec<usize> = (1..=n).map(|j| if j <= m { 2 * j } else { 2 * (j - m) - 1 }).collect();
    let x2 = SimpleBraid::from_image(&pi2)?;
    let x2_bar = SimpleBraid::from_permutation(x2.perm().inverse());
    let blocks = delta_ij(1, m, n)?.then_perm(&delta_ij(m + 1, n, n)?);
    let x3 = x2_bar.then_perm(&blocks);
    if x3.len() != x2_bar.len() + blocks.len() {
        return Err(fail("x3 product is not simple"));
    }
    let x4 = generator_run(n, i2, c)?.left_complement();

    let odd = GenSet::from_indices((1..n).step_by(2));
    let all_but_m = GenSet::full(n).difference(GenSet::from_indices([m]));
    let checks = [
        (x1.starting_set() == GenSet::from_indices([i1]), "init(x1) = {i1}"),
        (x1.finishing_set() == GenSet::from_indices([m]), "final(x1) = {m}"),
        (x2.starting_set() == GenSet::from_indices([m]), "init(x2) = {m}"),
        (x2.finishing_set() == odd, "final(x2) = odd"),
        (x3.starting_set() == odd, "init(x3) = odd"),
        (x3.finishing_set() == all_but_m, "final(x3) = all but m"),
        (x4.starting_set() == all_but_m, "init(x4) = all but m"),
        (
            x4.finishing_set() == GenSet::full(n).difference(GenSet::from_indices([i2])),
            "final(x4) = all but i2",
        ),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(fail(what));
    }
    let path = [*s1, x1, x2, x3, x4, *s2];
    if path.iter().any(|s| s.is_identity() || *s == delta(n)) {
        return Err(fail("intermediate braid is 1 or Δ"));
    }
    if path.windows(2).any(|w| !lw(&w[0], &w[1])) {
        return Err(fail("not a path"));
    }
    Ok([x1, x2, x3, x4])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, letters: &[usize]) -> SimpleBraid {
        SimpleBraid::from_positive_word(n, letters).unwrap()
    }

    #[test]
    fn small_graphs() {
        let g = build_graph(3).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 8);
        assert!((0..4).all(|u| g.adjacency().successors(u).len() == 2));
        let a = g.index_of(&s(3, &[1])).unwrap();
        let b = g.index_of(&s(3, &[1, 2])).unwrap();
        assert!(g.has_edge(a, b));
        assert!(!g.has_edge(a, g.index_of(&s(3, &[2])).unwrap()));
        assert_eq!(build_graph(4).unwrap().vertex_count(), 22);
        assert_eq!(build_graph(5).unwrap().vertex_count(), 118);
    }

    #[test]
    fn connectivity_lengths() {
        for n in 3..=5 {
            let g = build_graph(n).unwrap();
            assert!(check_length5(&g).all_positive);
            assert!(!check_path_length(&g, 1).all_positive);
        }
    }

    #[test]
    fn witness_examples() {
        let g = build_graph(3).unwrap();
        let w = witness_path(&g, &s(3, &[1]), &s(3, &[2])).unwrap();
        assert_eq!(w, [s(3, &[1]), s(3, &[1]), s(3, &[1, 2]), s(3, &[2])]);
        for n in 3..=7 {
            let g = build_graph(n).unwrap();
            let s1 = s(n, &[1]);
            witness_path(&g, &s1, &s1).unwrap();
        }
        assert!(witness_path(&g, &delta(3), &s(3, &[1])).is_err());
    }
}
