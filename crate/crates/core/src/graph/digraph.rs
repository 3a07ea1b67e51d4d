/// Compressed sparse row adjacency of a 0/1 directed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseDigraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl SparseDigraph {
    /// From per-vertex successor lists (each sorted ascending, no duplicates).
    pub fn from_successors(lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let total = lists.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        for list in lists {
            debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
            targets.extend(list);
            offsets.push(targets.len());
        }
        SparseDigraph { offsets, targets }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(u32, u32)]) -> Self {
        let mut lists = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            lists[u as usize].push(v);
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Self::from_successors(lists)
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn successors(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Index of the edge `u → successors(u)[j]` is `edge_offset(u) + j`.
    pub fn edge_offset(&self, u: usize) -> usize {
        self.offsets[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.successors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.successors(u).iter().map(move |&v| (u as u32, v)))
    }

    /// Predecessor lists.
    pub fn reversed(&self) -> SparseDigraph {
        let mut lists = vec![Vec::new(); self.vertex_count()];
        for (u, v) in self.edges() {
            lists[v as usize].push(u);
        }
        SparseDigraph::from_successors(lists)
    }

    /// Copy without the edges whose global index satisfies `drop`.
    pub fn without_edges(&self, mut drop: impl FnMut(usize) -> bool) -> SparseDigraph {
        let mut lists = Vec::with_capacity(self.vertex_count());
        for u in 0..self.vertex_count() {
            let base = self.offsets[u];
            let list: Vec<u32> = self
                .successors(u)
                .iter()
                .enumerate()
                .filter(|&(j, _)| !drop(base + j))
                .map(|(_, &v)| v)
                .collect();
            lists.push(list);
        }
        SparseDigraph::from_successors(lists)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csr_roundtrip() {
        let g = SparseDigraph::from_edges(3, &[(0, 1), (0, 2), (2, 0), (0, 1)]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.successors(0), &[1, 2]);
        assert!(g.has_edge(2, 0) && !g.has_edge(1, 0));
        assert_eq!(g.reversed().successors(0), &[2]);
        let h = g.without_edges(|e| e == 1);
        assert_eq!(h.successors(0), &[1]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 0)]);
    }
}
