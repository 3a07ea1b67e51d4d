use num_bigint::BigUint;
use num_traits::ToPrimitive;
use petgraph::graph::DiGraph;
use serde::Serialize;

use super::SparseDigraph;

pub const SPECTRUM_TOLERANCE: f64 = 1e-10;
pub const SPECTRUM_MAX_ITERATIONS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMethod {
    PowerIteration,
    RatioEstimate,
}

/// An estimate of the spectral radius together with a bracket `[lower, upper]`.
/// For power iteration the bracket is the Collatz–Wielandt bound of the final
/// iterate and always contains the true value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub gamma: f64,
    pub lower: f64,
    pub upper: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub method: SpectrumMethod,
}

/// Spectral radius of a non-negative adjacency matrix: the maximum over strongly
/// connected components, each found by power iteration on `A + I`.
pub fn spectral_radius(adj: &SparseDigraph) -> SpectrumReport {
    spectral_radius_with(adj, SPECTRUM_TOLERANCE, SPECTRUM_MAX_ITERATIONS)
}

pub fn spectral_radius_with(adj: &SparseDigraph, tol: f64, max_iter: usize) -> SpectrumReport {
    let v = adj.vertex_count();
    let mut pg = DiGraph::<(), ()>::with_capacity(v, adj.edge_count());
    for _ in 0..v {
        pg.add_node(());
    }
    pg.extend_with_edges(adj.edges());
    let sccs = petgraph::algo::tarjan_scc(&pg);

    let mut best = SpectrumReport {
        gamma: 0.0,
        lower: 0.0,
        upper: 0.0,
        residual: 0.0,
        iterations: 0,
        converged: true,
        method: SpectrumMethod::PowerIteration,
    };
    let mut local = vec![u32::MAX; v];
    for comp in sccs {
        if comp.len() == 1 {
            let u = comp[0].index();
            if adj.has_edge(u, u) && best.upper < 1.0 {
                best.gamma = best.gamma.max(1.0);
                best.lower = best.lower.max(1.0);
                best.upper = best.upper.max(1.0);
            }
            continue;
        }
        for (i, node) in comp.iter().enumerate() {
            local[node.index()] = i as u32;
        }
        let members: Vec<usize> = comp.iter().map(|c| c.index()).collect();
        let r = component_radius(adj, &members, &local, tol, max_iter);
        for &m in &members {
            local[m] = u32::MAX;
        }
        best.lower = best.lower.max(r.lower);
        best.upper = best.upper.max(r.upper);
        best.iterations = best.iterations.max(r.iterations);
        best.converged &= r.converged;
    }
    best.gamma = if best.upper > 0.0 { 0.5 * (best.lower + best.upper) } else { best.gamma };
    best.residual = best.upper - best.lower;
    best
}

fn component_radius(
    adj: &SparseDigraph,
    members: &[usize],
    local: &[u32],
    tol: f64,
    max_iter: usize,
) -> SpectrumReport {
    let m = members.len();
    let mut x = vec![1.0f64; m];
    let mut y = vec![0.0f64; m];
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    let mut it = 0;
    while it < max_iter {
        it += 1;
        for (i, &u) in members.iter().enumerate() {
            y[i] = adj
                .successors(u)
                .iter()
                .filter_map(|&w| match local[w as usize] {
                    u32::MAX => None,
                    j => Some(x[j as usize]),
                })
                .sum();
        }
        lo = f64::INFINITY;
        hi = 0.0;
        for i in 0..m {
            let q = y[i] / x[i];
            lo = f64::min(lo, q);
            hi = f64::max(hi, q);
        }
        if hi - lo < tol {
            break;
        }
        let mut scale = 0.0f64;
        for i in 0..m {
            x[i] += y[i];
            scale = scale.max(x[i]);
        }
        x.iter_mut().for_each(|xi| *xi /= scale);
    }
    SpectrumReport {
        gamma: 0.5 * (lo + hi),
        lower: lo,
        upper: hi,
        residual: hi - lo,
        iterations: it,
        converged: hi - lo < tol,
        method: SpectrumMethod::PowerIteration,
    }
}

/// `a / b` as a float without overflowing for large integers.
pub(crate) fn big_ratio(a: &BigUint, b: &BigUint) -> f64 {
    let shift = a.bits().max(b.bits()).saturating_sub(900);
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::NAN) / b.to_f64().unwrap_or(f64::NAN)
}

/// Growth estimate from exact counts: the last ratio `N(l+1)/N(l)`, bracketed by
/// the spread of the last few ratios.
pub fn ratio_estimate(counts: &[BigUint]) -> Option<SpectrumReport> {
    let ratios: Vec<f64> = counts
        .windows(2)
        .filter(|w| w[0].bits() > 0)
        .map(|w| big_ratio(&w[1], &w[0]))
        .collect();
    let last = *ratios.last()?;
    let tail = &ratios[ratios.len().saturating_sub(5)..];
    let lower = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let upper = tail.iter().copied().fold(0.0, f64::max);
    Some(SpectrumReport {
        gamma: last,
        lower,
        upper,
        residual: upper - lower,
        iterations: ratios.len(),
        converged: upper - lower < SPECTRUM_TOLERANCE,
        method: SpectrumMethod::RatioEstimate,
    })
}
