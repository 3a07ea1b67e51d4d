//! Counting, lifting, caching and spectra against direct enumeration.

use garside::braid::SimpleBraid;
use garside::graph::{
    build_graph, count_avoiding, count_table, lift, loop_counts, path_counts, ratio_estimate, spectral_radius,
    GraphCache, LWGraph, LoopReading, DEFAULT_LIFT_CAP,
};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Every path with `l + 1` vertices, by depth-first search.
fn all_paths(g: &LWGraph, l: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut stack: Vec<Vec<usize>> = (0..g.vertex_count()).map(|u| vec![u]).collect();
    while let Some(p) = stack.pop() {
        if p.len() == l + 1 {
            out.push(p);
            continue;
        }
        let u = *p.last().unwrap();
        for w in 0..g.vertex_count() {
            if g.has_edge(u, w) {
                let mut q = p.clone();
                q.push(w);
                stack.push(q);
            }
        }
    }
    out
}

fn contains(p: &[usize], pat: &[usize]) -> bool {
    p.windows(pat.len()).any(|w| w == pat)
}

/// A path pattern in Γ(4) from a start vertex and successor choices.
fn pattern_strategy() -> impl Strategy<Value = Vec<usize>> {
    (0usize..22, prop::collection::vec(0usize..64, 1..=2)).prop_map(|(start, choices)| {
        let g = build_graph(4).unwrap();
        let mut p = vec![start];
        for c in choices {
            let succ = g.adjacency().successors(*p.last().unwrap());
            p.push(succ[c % succ.len()] as usize);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn avoiding_counts_match_enumeration(pat in pattern_strategy(), l in 0usize..5) {
        let g = build_graph(4).unwrap();
        let factors: Vec<SimpleBraid> = pat.iter().map(|&i| *g.vertex(i)).collect();
        let paths = all_paths(&g, l);
        let want_paths = paths.iter().filter(|p| !contains(p, &pat)).count();
        let want_loops = paths.iter().filter(|p| !contains(p, &pat) && g.has_edge(p[l], p[0])).count();
        let want_cyclic = paths
            .iter()
            .filter(|p| {
                let doubled: Vec<usize> = p.iter().chain(p.iter()).chain(p.iter()).copied().collect();
                g.has_edge(p[l], p[0]) && !contains(&doubled[..p.len() + pat.len() - 1], &pat)
            })
            .count();
        let (n_w, loops_w) = count_avoiding(&g, std::slice::from_ref(&factors), l, LoopReading::Linear).unwrap();
        prop_assert_eq!(n_w, BigUint::from(want_paths));
        prop_assert_eq!(loops_w, BigUint::from(want_loops));
        let (_, cyc) = count_avoiding(&g, &[factors], l, LoopReading::Cyclic).unwrap();
        prop_assert_eq!(cyc, BigUint::from(want_cyclic));
    }
}

#[test]
fn lifted_edges_are_longer_paths() {
    for n in 3..=5 {
        let g = build_graph(n).unwrap();
        let counts = path_counts(g.adjacency(), 3);
        for k in 1..=3 {
            if n == 5 && k == 3 {
                continue;
            }
            let l = lift(&g, k, DEFAULT_LIFT_CAP).unwrap();
            assert_eq!(BigUint::from(l.vertex_count()), counts[k - 1]);
            assert_eq!(BigUint::from(l.edge_count()), counts[k]);
        }
    }
}

#[test]
fn loops_are_traces() {
    let g = build_graph(4).unwrap();
    let loops = loop_counts(&g, 4, false);
    for (l, want) in loops.iter().enumerate() {
        let closed = all_paths(&g, l).iter().filter(|p| g.has_edge(p[l], p[0])).count();
        assert_eq!(*want, BigUint::from(closed));
    }
}

#[test]
fn cache_changes_nothing() {
    let g = build_graph(5).unwrap();
    let mut buf = vec![];
    GraphCache::from_graph(&g).write_to(&mut buf).unwrap();
    let h = GraphCache::read_from(buf.as_slice()).unwrap().to_graph().unwrap();
    let a = count_table(&g, 10, &[], LoopReading::Linear, DEFAULT_LIFT_CAP).unwrap();
    let b = count_table(&h, 10, &[], LoopReading::Linear, DEFAULT_LIFT_CAP).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    assert_eq!(v["header"]["vertex_count"], 118);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3412);
}

#[test]
fn spectrum_brackets_growth() {
    for n in 3..=5 {
        let g = build_graph(n).unwrap();
        let s = spectral_radius(g.adjacency());
        let q = ratio_estimate(&path_counts(g.adjacency(), 120)).unwrap();
        assert!(s.lower - 1e-9 <= q.gamma && q.gamma <= s.upper + 1e-9, "n={n}: {s:?} {q:?}");
    }
}

#[test]
fn count_table_at_n3() {
    let g = build_graph(3).unwrap();
    let t = count_table(&g, 20, &[], LoopReading::Linear, DEFAULT_LIFT_CAP).unwrap();
    for r in &t.rows {
        assert_eq!(r.paths, BigUint::from(4u32) << r.l);
    }
}
