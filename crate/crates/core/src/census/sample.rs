use num_bigint::{BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{x_a, x_b, NormalForm, SimpleBraid};
use crate::certify::{Certifier, VerdictKind};
use crate::error::{Error, Result};
use crate::graph::{lift, rigid_pa_lower_counts, LWGraph, LiftedGraph, DEFAULT_LIFT_CAP};

/// Index `i` with `Σ_{j<i} w_j ≤ x < Σ_{j≤i} w_j`.
fn pick<'a>(weights: impl IntoIterator<Item = &'a BigUint>, x: &BigUint) -> usize {
    let mut acc = BigUint::zero();
    for (i, w) in weights.into_iter().enumerate() {
        acc += w;
        if *x < acc {
            return i;
        }
    }
    unreachable!("draw below the total weight")
}

/// Exactly uniform sampler over normal forms `x_1 ⋯ x_r` with infimum 0.
#[derive(Clone, Debug)]
pub struct PathSampler<'g> {
    g: &'g LWGraph,
    /// `ways[m][u]`: paths with `m + 1` vertices starting at `u`.
    ways: Vec<Vec<BigUint>>,
    total: BigUint,
}

impl<'g> PathSampler<'g> {
    pub fn new(g: &'g LWGraph, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("need r ≥ 1 factors".into()));
        }
        let adj = g.adjacency();
        let mut ways = vec![vec![BigUint::from(1u32); g.vertex_count()]];
        for m in 1..r {
            let prev = &ways[m - 1];
            let next = (0..g.vertex_count())
                .map(|u| adj.successors(u).iter().map(|&w| &prev[w as usize]).sum())
                .collect();
            ways.push(next);
        }
        let total = ways[r - 1].iter().sum();
        Ok(PathSampler { g, ways, total })
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> NormalForm {
        let r = self.ways.len();
        let adj = self.g.adjacency();
        let x = rng.gen_biguint_below(&self.total);
        let mut u = pick(&self.ways[r - 1], &x);
        let mut factors = vec![*self.g.vertex(u)];
        for m in (0..r - 1).rev() {
            let succ = adj.successors(u);
            let weights: Vec<&BigUint> = succ.iter().map(|&w| &self.ways[m][w as usize]).collect();
            let total: BigUint = weights.iter().copied().sum();
            let x = rng.gen_biguint_below(&total);
            u = succ[pick(weights, &x)] as usize;
            factors.push(*self.g.vertex(u));
        }
        NormalForm::from_parts(self.g.n(), 0, factors).expect("paths are normal")
    }
}

pub fn sample_uniform_path<R: Rng + ?Sized>(g: &LWGraph, r: usize, rng: &mut R) -> Result<NormalForm> {
    Ok(PathSampler::new(g, r)?.sample(rng))
}

/// Backward counts for loops based at one first vertex `b`.
struct BaseTable {
    /// `ways[m][state]`: completions with `m` more vertices from `state`.
    ways: Vec<Vec<BigUint>>,
    /// Start states with their weights.
    starts: Vec<(usize, BigUint)>,
    total: BigUint,
}

/// Exactly uniform sampler over rigid normal forms `x_1 ⋯ x_r` with infimum 0,
/// optionally conditioned on containing every given pattern as consecutive factors.
/// In open mode the closing edge `x_r → x_1` is not required.
///
/// States are (window of the last `k` vertices, set of patterns seen so far).
pub struct LoopSampler<'g> {
    g: &'g LWGraph,
    r: usize,
    closed: bool,
    lifted: LiftedGraph,
    patterns: Vec<Vec<u32>>,
    /// Pattern hits for each lifted edge, by global edge index.
    edge_hits: Vec<u8>,
    /// Patterns contained in each window.
    window_hits: Vec<u8>,
    pred_mask: Vec<Vec<bool>>,
    totals: Vec<BigUint>,
    total: BigUint,
}

impl<'g> LoopSampler<'g> {
    /// Uniform over all rigid braids with `r` factors.
    pub fn new(g: &'g LWGraph, r: usize) -> Result<Self> {
        Self::containing(g, r, &[])
    }

    /// Uniform over rigid braids with `r` factors containing both certifying patterns.
    pub fn containing_certificate(g: &'g LWGraph, r: usize) -> Result<Self> {
        let n = g.n();
        Self::containing(g, r, &[x_a(n)?.factors().to_vec(), x_b(n)?.factors().to_vec()])
    }

    pub fn containing(g: &'g LWGraph, r: usize, patterns: &[Vec<SimpleBraid>]) -> Result<Self> {
        Self::build(g, r, patterns, true)
    }

    /// Uniform over all normal forms `x_1 ⋯ x_r` (not necessarily rigid) containing every pattern.
    pub fn open_containing(g: &'g LWGraph, r: usize, patterns: &[Vec<SimpleBraid>]) -> Result<Self> {
        Self::build(g, r, patterns, false)
    }

    fn build(g: &'g LWGraph, r: usize, patterns: &[Vec<SimpleBraid>], closed: bool) -> Result<Self> {
        if patterns.len() > 8 {
            return Err(Error::Invalid("at most 8 patterns".into()));
        }
        let idx: Vec<Vec<u32>> = patterns.iter().map(|p| g.path_indices(p)).collect::<Result<_>>()?;
        if idx.iter().any(|p| p.is_empty()) {
            return Err(Error::Invalid("empty pattern".into()));
        }
        let k = idx.iter().map(|p| p.len() - 1).max().unwrap_or(1).max(1);
        if r < k {
            return Err(Error::Invalid(format!("need r ≥ {k} factors for these patterns")));
        }
        let lifted = lift(g, k, DEFAULT_LIFT_CAP)?;
        let suffix_hits = |seq: &[u32]| -> u8 {
            idx.iter().enumerate().filter(|(_, p)| seq.ends_with(p)).fold(0, |m, (i, _)| m | 1 << i)
        };
        let any_hits = |seq: &[u32]| -> u8 {
            idx.iter()
                .enumerate()
                .filter(|(_, p)| seq.windows(p.len()).any(|w| w == p.as_slice()))
                .fold(0, |m, (i, _)| m | 1 << i)
        };
        let adj = lifted.adjacency();
        let mut edge_hits = Vec::with_capacity(adj.edge_count());
        let mut reading = Vec::with_capacity(k + 1);
        for w in 0..lifted.vertex_count() {
            for &t in adj.successors(w) {
                reading.clear();
                reading.extend_from_slice(lifted.window(w));
                reading.push(lifted.last_vertex(t as usize) as u32);
                edge_hits.push(suffix_hits(&reading));
            }
        }
        let window_hits = (0..lifted.vertex_count()).map(|w| any_hits(lifted.window(w))).collect();
        let pred = g.adjacency().reversed();
        let pred_mask = (0..g.vertex_count())
            .map(|b| {
                let mut m = vec![false; g.vertex_count()];
                for &p in pred.successors(b) {
                    m[p as usize] = true;
                }
                m
            })
            .collect();
        let mut s = LoopSampler {
            g,
            r,
            closed,
            lifted,
            patterns: idx,
            edge_hits,
            window_hits,
            pred_mask,
            totals: vec![],
            total: BigUint::zero(),
        };
        let totals = crate::par_map(s.groups(), |b| s.table(b).total);
        s.totals = totals;
        s.total = s.totals.iter().sum();
        Ok(s)
    }

    /// Loops are grouped by first vertex; open paths form a single group.
    fn groups(&self) -> usize {
        if self.closed {
            self.g.vertex_count()
        } else {
            1
        }
    }

    fn full_mask(&self) -> u8 {
        ((1u16 << self.patterns.len()) - 1) as u8
    }

    fn table(&self, b: usize) -> BaseTable {
        let lifted = &self.lifted;
        let adj = lifted.adjacency();
        let masks = 1usize << self.patterns.len();
        let states = lifted.vertex_count() * masks;
        let full = self.full_mask() as usize;
        let steps = self.r - lifted.k();
        let mut ways: Vec<Vec<BigUint>> = Vec::with_capacity(steps + 1);
        let closes = |v: usize| !self.closed || self.pred_mask[b][v];
        ways.push(
            (0..states)
                .map(|s| {
                    let (w, m) = (s / masks, s % masks);
                    BigUint::from((m == full && closes(lifted.last_vertex(w))) as u32)
                })
                .collect(),
        );
        for step in 1..=steps {
            let prev = &ways[step - 1];
            let next = (0..states)
                .map(|s| {
                    let (w, m) = (s / masks, s % masks);
                    let base = adj.edge_offset(w);
                    adj.successors(w)
                        .iter()
                        .enumerate()
                        .map(|(j, &t)| &prev[t as usize * masks + (m | self.edge_hits[base + j] as usize)])
                        .sum()
                })
                .collect();
            ways.push(next);
        }
        let starts: Vec<(usize, BigUint)> = (0..lifted.vertex_count())
            .filter(|&w| !self.closed || lifted.first_vertex(w) == b)
            .map(|w| {
                let s = w * masks + self.window_hits[w] as usize;
                (s, ways[steps][s].clone())
            })
            .collect();
        let total = starts.iter().map(|(_, c)| c).sum();
        BaseTable { ways, starts, total }
    }

    /// Number of braids in the support.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    fn walk<R: Rng + ?Sized>(&self, t: &BaseTable, rng: &mut R) -> NormalForm {
        let lifted = &self.lifted;
        let adj = lifted.adjacency();
        let masks = 1usize << self.patterns.len();
        let x = rng.gen_biguint_below(&t.total);
        let mut state = t.starts[pick(t.starts.iter().map(|(_, c)| c), &x)].0;
        let mut vertices: Vec<u32> = lifted.window(state / masks).to_vec();
        for m in (0..t.ways.len() - 1).rev() {
            let (w, mask) = (state / masks, state % masks);
            let base = adj.edge_offset(w);
            let nexts: Vec<usize> = adj
                .successors(w)
                .iter()
                .enumerate()
                .map(|(j, &t)| t as usize * masks + (mask | self.edge_hits[base + j] as usize))
                .collect();
            let weights: Vec<&BigUint> = nexts.iter().map(|&s| &t.ways[m][s]).collect();
            let total: BigUint = weights.iter().copied().sum();
            let x = rng.gen_biguint_below(&total);
            state = nexts[pick(weights, &x)];
            vertices.push(lifted.last_vertex(state / masks) as u32);
        }
        let factors = vertices.iter().map(|&v| *self.g.vertex(v as usize)).collect();
        debug_assert!(self.patterns.iter().all(|p| vertices.windows(p.len()).any(|w| w == p.as_slice())));
        NormalForm::from_parts(self.g.n(), 0, factors).expect("paths are normal")
    }

    /// `count` independent draws, returned in draw order.
    pub fn sample_many<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<NormalForm>> {
        if self.total.is_zero() {
            return Err(Error::Invalid("no braid satisfies the constraints".into()));
        }
        let bases: Vec<usize> = (0..count)
            .map(|_| pick(&self.totals, &rng.gen_biguint_below(&self.total)))
            .collect();
        let mut out: Vec<Option<NormalForm>> = vec![None; count];
        for b in 0..self.groups() {
            if !bases.contains(&b) {
                continue;
            }
            let t = self.table(b);
            for (i, _) in bases.iter().enumerate().filter(|(_, &x)| x == b) {
                out[i] = Some(self.walk(&t, rng));
            }
        }
        Ok(out.into_iter().map(|x| x.expect("every draw assigned")).collect())
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<NormalForm> {
        Ok(self.sample_many(1, rng)?.pop().expect("one draw"))
    }
}

pub fn sample_uniform_rigid<R: Rng + ?Sized>(g: &LWGraph, r: usize, rng: &mut R) -> Result<NormalForm> {
    LoopSampler::new(g, r)?.sample(rng)
}

/// Certification outcome over seeded uniform rigid samples with `r` factors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    pub n: usize,
    pub l: usize,
    pub sample_count: usize,
    pub seed: u64,
    pub certified: usize,
    pub witness: usize,
    pub inconclusive: usize,
    pub proportion_certified: f64,
    /// `p ± 3σ` with the binomial standard error, clamped to `[0, 1]`.
    pub ci_lo: f64,
    pub ci_hi: f64,
}

pub fn measure_pa_proportion(g: &LWGraph, r: usize, samples: usize, seed: u64) -> Result<SampleReport> {
    if samples == 0 {
        return Err(Error::Invalid("sample count must be positive".into()));
    }
    let sampler = LoopSampler::new(g, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = sampler.sample_many(samples, &mut rng)?;
    let certifier = Certifier::new(g.n())?;
    let kinds = crate::par_map(draws.len(), |i| certifier.certify(&draws[i]).map(|v| v.kind));
    let kinds = kinds.into_iter().collect::<Result<Vec<_>>>()?;
    let count = |k| kinds.iter().filter(|&&x| x == k).count();
    let certified = count(VerdictKind::CertifiedPseudoAnosov);
    let p = certified as f64 / samples as f64;
    let sigma = (p * (1.0 - p) / samples as f64).sqrt();
    Ok(SampleReport {
        n: g.n(),
        l: r,
        sample_count: samples,
        seed,
        certified,
        witness: count(VerdictKind::ReducibilityWitness),
        inconclusive: count(VerdictKind::Inconclusive),
        proportion_certified: p,
        ci_lo: (p - 3.0 * sigma).max(0.0),
        ci_hi: (p + 3.0 * sigma).min(1.0),
    })
}

/// Certified lower bound on the fraction of rigid braids with `r` factors that are
/// pseudo-Anosov: `rigid_pa_lower_count(r−1) / N°(r−1)`.
pub fn exact_pa_bound(g: &LWGraph, r: usize) -> Result<BigRational> {
    if r == 0 {
        return Err(Error::Invalid("need r ≥ 1 factors".into()));
    }
    let row = rigid_pa_lower_counts(g, r - 1, false)?.pop().expect("non-empty");
    if row.loops.is_zero() {
        return Err(Error::Invalid("no rigid braids of this length".into()));
    }
    Ok(BigRational::new(row.lower_bound().into(), row.loops.into()))
}

/// Nearest float to a non-negative rational with possibly huge parts.
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    crate::graph::big_ratio(q.numer().magnitude(), q.denom().magnitude())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, loop_counts};

    fn loops_total(g: &LWGraph, r: usize) -> BigUint {
        loop_counts(g, r - 1, false).pop().expect("non-empty")
    }

    #[test]
    fn supports_match_counts() {
        let g = build_graph(3).unwrap();
        assert_eq!(PathSampler::new(&g, 2).unwrap().total(), &BigUint::from(8u32));
        assert_eq!(LoopSampler::new(&g, 2).unwrap().total(), &BigUint::from(4u32));
        let g4 = build_graph(4).unwrap();
        assert_eq!(*LoopSampler::new(&g4, 7).unwrap().total(), loops_total(&g4, 7));
    }

    #[test]
    fn rigid_draws_are_rigid() {
        let g = build_graph(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let xs = LoopSampler::new(&g, 9).unwrap().sample_many(50, &mut rng).unwrap();
        assert!(xs.iter().all(|x| x.is_rigid().unwrap() && x.canonical_length() == 9 && x.inf() == 0));
    }

    #[test]
    fn constrained_draws_contain_both() {
        let g = build_graph(4).unwrap();
        let s = LoopSampler::containing_certificate(&g, 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = Certifier::new(4).unwrap();
        for x in s.sample_many(20, &mut rng).unwrap() {
            assert!(x.is_rigid().unwrap());
            assert_eq!(c.certify(&x).unwrap().kind, VerdictKind::CertifiedPseudoAnosov);
        }
    }

    #[test]
    fn open_mode_counts_paths() {
        let g = build_graph(3).unwrap();
        let s = LoopSampler::open_containing(&g, 5, &[]).unwrap();
        assert_eq!(s.total(), PathSampler::new(&g, 5).unwrap().total());
        let xa = x_a(3).unwrap().factors().to_vec();
        let s = LoopSampler::open_containing(&g, 6, &[xa.clone()]).unwrap();
        let (avoid, _) = crate::graph::count_avoiding(&g, &[xa], 5, Default::default()).unwrap();
        assert_eq!(s.total() + avoid, BigUint::from(4u32 << 5));
    }

    #[test]
    fn deterministic_for_seed() {
        let g = build_graph(4).unwrap();
        let s = LoopSampler::new(&g, 12).unwrap();
        let a = s.sample_many(10, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = s.sample_many(10, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bound_in_unit_interval() {
        let g = build_graph(3).unwrap();
        let q = exact_pa_bound(&g, 30).unwrap();
        let f = ratio_to_f64(&q);
        assert!(f > 0.0 && f <= 1.0, "{f}");
        assert!(measure_pa_proportion(&g, 10, 0, 1).is_err());
    }
}
