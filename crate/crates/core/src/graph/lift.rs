use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::count::path_counts;
use super::{LWGraph, SparseDigraph};
use crate::braid::SimpleBraid;
use crate::error::{Error, Result};

/// Default bound on the number of lifted vertices.
pub const DEFAULT_LIFT_CAP: usize = 5_000_000;

/// The graph `Γ_(k)` whose vertices are the `k`-vertex paths (windows) of the base
/// graph; `(s_1..s_k) → (t_1..t_k)` iff `s_2..s_k = t_1..t_{k-1}`. Each lifted edge
/// reads a `(k+1)`-vertex path of the base.
#[derive(Clone, Debug)]
pub struct LiftedGraph {
    n: usize,
    k: usize,
    /// Windows flattened, `k` base indices each, in lexicographic order.
    windows: Vec<u32>,
    /// Full overlap adjacency before removals.
    full: SparseDigraph,
    adj: SparseDigraph,
    /// Removal mask over the edges of `full`.
    dropped: Vec<bool>,
    removed: Vec<Vec<SimpleBraid>>,
}

/// Lift the base graph to windows of `k ≥ 1` vertices.
pub fn lift(g: &LWGraph, k: usize, cap: usize) -> Result<LiftedGraph> {
    if k == 0 {
        return Err(Error::Invalid("lift needs k ≥ 1".into()));
    }
    let requested = &path_counts(g.adjacency(), k - 1)[k - 1];
    if requested > &BigUint::from(cap) {
        let requested = requested.to_u128().unwrap_or(u128::MAX);
        return Err(Error::LiftCap { requested, cap });
    }
    let base = g.adjacency();
    // depth-first in successor order yields lexicographic windows
    let windows = enumerate_windows(base, g.vertex_count(), k);
    let count = windows.len() / k;
    let lists = (0..count)
        .map(|w| {
            let win = &windows[w * k..(w + 1) * k];
            let last = *win.last().unwrap() as usize;
            base.successors(last)
                .iter()
                .map(|&t| {
                    let mut next: Vec<u32> = win[1..].to_vec();
                    next.push(t);
                    find_window(&windows, k, &next).expect("shifted window is a path") as u32
                })
                .collect::<Vec<u32>>()
        })
        .collect::<Vec<_>>();
    // successors of a window are produced in increasing order because the
    // shifted prefix is fixed and t increases
    let full = SparseDigraph::from_successors(lists);
    Ok(LiftedGraph {
        n: g.n(),
        k,
        windows,
        adj: full.clone(),
        dropped: vec![false; full.edge_count()],
        full,
        removed: Vec::new(),
    })
}

fn enumerate_windows(base: &SparseDigraph, vertex_count: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(k);
    fn rec(base: &SparseDigraph, k: usize, stack: &mut Vec<u32>, out: &mut Vec<u32>) {
        if stack.len() == k {
            out.extend_from_slice(stack);
            return;
        }
        let last = *stack.last().unwrap() as usize;
        for &t in base.successors(last) {
            stack.push(t);
            rec(base, k, stack, out);
            stack.pop();
        }
    }
    for v in 0..vertex_count as u32 {
        stack.push(v);
        rec(base, k, &mut stack, &mut out);
        stack.pop();
    }
    out
}

fn find_window(windows: &[u32], k: usize, target: &[u32]) -> Option<usize> {
    let count = windows.len() / k;
    let (mut lo, mut hi) = (0usize, count);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match windows[mid * k..(mid + 1) * k].cmp(target) {
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => return Some(mid),
        }
    }
    None
}

impl LiftedGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.windows.len() / self.k
    }

    pub fn edge_count(&self) -> usize {
        self.adj.edge_count()
    }

    pub fn adjacency(&self) -> &SparseDigraph {
        &self.adj
    }

    /// Base vertex indices of window `w`.
    pub fn window(&self, w: usize) -> &[u32] {
        &self.windows[w * self.k..(w + 1) * self.k]
    }

    pub fn first_vertex(&self, w: usize) -> usize {
        self.windows[w * self.k] as usize
    }

    pub fn last_vertex(&self, w: usize) -> usize {
        self.windows[(w + 1) * self.k - 1] as usize
    }

    pub fn index_of_window(&self, window: &[u32]) -> Option<usize> {
        (window.len() == self.k).then(|| find_window(&self.windows, self.k, window)).flatten()
    }

    /// Patterns removed so far.
    pub fn removed_patterns(&self) -> &[Vec<SimpleBraid>] {
        &self.removed
    }

    pub fn removed_edge_count(&self) -> usize {
        self.dropped.iter().filter(|&&d| d).count()
    }

    /// Remove every lifted edge whose `(k+1)`-vertex reading contains `pattern`
    /// as consecutive vertices. `pattern` must be a path with at most `k` edges.
    pub fn forbid(&self, g: &LWGraph, pattern: &[SimpleBraid]) -> Result<LiftedGraph> {
        let idx = g.path_indices(pattern)?;
        if idx.is_empty() || idx.len() > self.k + 1 {
            return Err(Error::Invalid(format!(
                "pattern with {} vertices does not fit windows of {} edges",
                idx.len(),
                self.k
            )));
        }
        let mut reading = Vec::with_capacity(self.k + 1);
        let full = &self.full;
        let mut dropped = self.dropped.clone();
        for w in 0..self.vertex_count() {
            let base = full.edge_offset(w);
            for (j, &t) in full.successors(w).iter().enumerate() {
                reading.clear();
                reading.extend_from_slice(self.window(w));
                reading.push(self.last_vertex(t as usize) as u32);
                if reading.windows(idx.len()).any(|sub| sub == idx.as_slice()) {
                    dropped[base + j] = true;
                }
            }
        }
        let adj = full.without_edges(|e| dropped[e]);
        let mut removed = self.removed.clone();
        removed.push(pattern.to_vec());
        Ok(LiftedGraph {
            n: self.n,
            k: self.k,
            windows: self.windows.clone(),
            full: self.full.clone(),
            adj,
            dropped,
            removed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{x_a, x_b};
    use crate::graph::build_graph;

    #[test]
    fn lift_sizes() {
        let g = build_graph(3).unwrap();
        let l1 = lift(&g, 1, DEFAULT_LIFT_CAP).unwrap();
        assert_eq!((l1.vertex_count(), l1.edge_count()), (4, 8));
        let l2 = lift(&g, 2, DEFAULT_LIFT_CAP).unwrap();
        assert_eq!(l2.vertex_count(), 8);
        assert_eq!(l2.edge_count(), 16);
        let g4 = build_graph(4).unwrap();
        assert_eq!(lift(&g4, 3, DEFAULT_LIFT_CAP).unwrap().vertex_count(), 982);
        assert!(matches!(lift(&g4, 3, 100), Err(Error::LiftCap { requested: 982, cap: 100 })));
    }

    #[test]
    fn forbid_removes_single_edges() {
        let g = build_graph(3).unwrap();
        let xa = x_a(3).unwrap();
        let l1 = lift(&g, 1, DEFAULT_LIFT_CAP).unwrap().forbid(&g, xa.factors()).unwrap();
        assert_eq!((l1.edge_count(), l1.removed_edge_count()), (7, 1));

        let xb = x_b(3).unwrap();
        let l3 = lift(&g, 3, DEFAULT_LIFT_CAP).unwrap();
        let before = l3.edge_count();
        let l3b = l3.forbid(&g, xb.factors()).unwrap();
        assert_eq!(l3b.edge_count(), before - 1);

        // a shorter pattern removes every window containing it
        let l3a = l3.forbid(&g, xa.factors()).unwrap();
        assert!(l3a.removed_edge_count() > 1);
        let both = l3a.forbid(&g, xb.factors()).unwrap();
        assert_eq!(both.removed_patterns().len(), 2);
    }

    #[test]
    fn forbid_rejects_non_paths() {
        let g = build_graph(3).unwrap();
        let l1 = lift(&g, 1, DEFAULT_LIFT_CAP).unwrap();
        let s12 = SimpleBraid::from_positive_word(3, &[1, 2]).unwrap();
        assert_eq!(l1.forbid(&g, &[s12, s12]).unwrap_err(), Error::NotAPath);
        let xb = x_b(3).unwrap();
        assert!(l1.forbid(&g, xb.factors()).is_err());
    }
}
