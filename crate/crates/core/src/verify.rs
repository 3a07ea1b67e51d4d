//! End-to-end checks of the numerical claims, each against an independent oracle.
//! Tolerances and sizes are fixed here so every run checks the same thing.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{normal_form, x_a, x_b, BraidWord, NormalForm, Permutation, SimpleBraid};
use crate::census::{
    ball_count, brute_force_sphere, measure_pa_proportion, ratio_to_f64, sphere_counts, sphere_shape, word_length,
    LoopSampler, PathSampler, SphereShape,
};
use crate::certify::{find_subword, Certifier, VerdictKind};
use crate::curves::{image_round, preserved_round_curve_power, transport_round, RoundCurve};
use crate::error::Result;
use crate::graph::{
    build_graph, check_length5, count_avoiding, lift, loop_counts, path_counts, rigid_pa_lower_counts,
    spectral_radius, witness_path, LWGraph, LoopReading, DEFAULT_LIFT_CAP,
};

pub const SEED: u64 = 0x5eed_2024;
pub const RATIO_TOLERANCE: f64 = 1e-8;
pub const GAMMA_TOLERANCE: f64 = 1e-6;
pub const GAP_MARGIN: f64 = 1e-6;
pub const GENERICITY_THRESHOLD: f64 = 0.05;
pub const GENERICITY_LMAX: usize = 200;
pub const GENERICITY_SAMPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{:>2}] {} ({:.2}s): {}", self.id, self.name, self.seconds, self.detail)
    }
}

fn report(id: u8, name: &'static str, start: Instant, limit: Option<Duration>, checks: Vec<(bool, String)>) -> CriterionReport {
    let elapsed = start.elapsed();
    let mut passed = checks.iter().all(|(ok, _)| *ok);
    let mut detail: Vec<String> = checks.into_iter().map(|(ok, d)| if ok { d } else { format!("FAILED {d}") }).collect();
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push(format!("FAILED runtime over {}s", limit.as_secs_f64()));
        }
    }
    CriterionReport { id, name, passed, detail: detail.join("; "), seconds: elapsed.as_secs_f64() }
}

fn graph(n: usize) -> LWGraph {
    build_graph(n).expect("supported strand count")
}

/// Left-weightedness by the sliding definition: no `σ_i` with `σ_i` a prefix of `b`
/// and `aσ_i` still simple, both decided by inversion counts.
fn lw_by_sliding(a: &SimpleBraid, b: &SimpleBraid) -> bool {
    let n = a.n();
    let (pa, pb) = (a.perm(), b.perm());
    !(1..n).any(|i| {
        let t = Permutation::transposition(n, i);
        let a_ext = pa.then(&t).inversions() == pa.inversions() + 1;
        let b_prefix = t.then(pb).inversions() + 1 == pb.inversions();
        a_ext && b_prefix
    })
}

pub fn criterion_1(ns: &[usize]) -> CriterionReport {
    let start = Instant::now();
    let checks = ns
        .iter()
        .map(|&n| {
            let g = graph(n);
            let mut pairs = 0;
            let mut bad = 0;
            for (u, a) in g.vertices().iter().enumerate() {
                for (v, b) in g.vertices().iter().enumerate() {
                    pairs += 1;
                    if g.has_edge(u, v) != lw_by_sliding(a, b) {
                        bad += 1;
                    }
                }
            }
            (bad == 0, format!("n={n}: {pairs} pairs, {bad} disagreements"))
        })
        .collect();
    report(1, "left-weighting oracle", start, Some(Duration::from_secs(1)), checks)
}

pub fn criterion_2(full: &[usize], sampled: &[usize]) -> CriterionReport {
    let start = Instant::now();
    let mut checks = vec![];
    for &n in full.iter().chain(sampled) {
        let g = graph(n);
        let c = check_length5(&g);
        checks.push((c.all_positive, format!("n={n}: A^5 > 0 ({:?})", c.violation)));
    }
    let verify_pair = |g: &LWGraph, u: usize, v: usize| -> bool {
        let (s1, s2) = (g.vertex(u), g.vertex(v));
        match witness_path(g, s1, s2) {
            Ok(xs) => {
                let path: Vec<usize> = std::iter::once(s1)
                    .chain(xs.iter())
                    .chain(std::iter::once(s2))
                    .map(|s| g.index_of(s))
                    .collect::<Option<_>>()
                    .unwrap_or_default();
                path.len() == 6 && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
            }
            Err(_) => false,
        }
    };
    for &n in full {
        let g = graph(n);
        let v = g.vertex_count();
        let bad: usize = crate::par_map(v, |u| (0..v).filter(|&t| !verify_pair(&g, u, t)).count())
            .into_iter()
            .sum();
        checks.push((bad == 0, format!("n={n}: witness paths for all {} pairs, {bad} bad", v * v)));
    }
    for &n in sampled {
        let g = graph(n);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let v = g.vertex_count();
        let bad = (0..1000).filter(|_| !verify_pair(&g, rng.gen_range(0..v), rng.gen_range(0..v))).count();
        checks.push((bad == 0, format!("n={n}: witness paths for 1000 random pairs, {bad} bad")));
    }
    report(2, "length-5 connectivity", start, Some(Duration::from_secs(120)), checks)
}

/// `A^l` as dense big-integer matrix powers.
fn dense_powers(g: &LWGraph, lmax: usize) -> Vec<Vec<Vec<BigUint>>> {
    let v = g.vertex_count();
    let a: Vec<Vec<BigUint>> =
        (0..v).map(|u| (0..v).map(|w| BigUint::from(g.has_edge(u, w) as u32)).collect()).collect();
    let id: Vec<Vec<BigUint>> = (0..v).map(|u| (0..v).map(|w| BigUint::from((u == w) as u32)).collect()).collect();
    let mut out = vec![id];
    for l in 1..=lmax {
        let p = &out[l - 1];
        let next = (0..v)
            .map(|i| (0..v).map(|j| (0..v).map(|k| &p[i][k] * &a[k][j]).sum::<BigUint>()).collect())
            .collect();
        out.push(next);
    }
    out
}

pub fn criterion_3() -> CriterionReport {
    let start = Instant::now();
    let g = graph(3);
    let lmax = 30;
    let paths = path_counts(g.adjacency(), lmax);
    let loops = loop_counts(&g, lmax, false);
    let dense = dense_powers(&g, lmax + 1);
    let mut bad = vec![];
    for l in 1..=lmax {
        let closed_n = BigUint::from(4u32) << l;
        let closed_loop = BigUint::from(2u32) << l;
        let dense_n: BigUint = dense[l].iter().flatten().sum();
        let dense_loop: BigUint = (0..g.vertex_count()).map(|i| &dense[l + 1][i][i]).sum();
        if paths[l] != closed_n || dense_n != closed_n || loops[l] != closed_loop || dense_loop != closed_loop {
            bad.push(format!("l={l}"));
        }
        if &loops[l] * 2u32 != paths[l] {
            bad.push(format!("ratio l={l}"));
        }
    }
    report(
        3,
        "exact counts at n=3",
        start,
        Some(Duration::from_secs(1)),
        vec![(bad.is_empty(), format!("N(l)=4·2^l, N°(l)=2^(l+1), N°/N=1/2 for l=1..{lmax}; mismatches {bad:?}"))],
    )
}

pub fn criterion_4(ns: &[usize]) -> CriterionReport {
    let start = Instant::now();
    let l = 200;
    let checks = ns
        .iter()
        .map(|&n| {
            let g = graph(n);
            let loops = loop_counts(&g, l + 1, false);
            let ratio = |k: usize| BigRational::new(loops[k + 1].clone().into(), loops[k].clone().into());
            let step = (ratio(l) - ratio(l - 1)).abs();
            let step = ratio_to_f64(&step);
            let r = ratio_to_f64(&ratio(l));
            let gamma = spectral_radius(g.adjacency());
            let ok = step < RATIO_TOLERANCE && (r - gamma.gamma).abs() < GAMMA_TOLERANCE && gamma.converged;
            (
                ok,
                format!(
                    "n={n}: |ratio({l})−ratio({})| = {step:.3e}, ratio = {r:.12}, power iteration γ = {:.12} ± {:.1e}",
                    l - 1,
                    gamma.gamma,
                    gamma.residual
                ),
            )
        })
        .collect();
    report(4, "Perron–Frobenius ratios", start, None, checks)
}

/// Spectral radius of the graph avoiding one pattern, with the lift it needed.
pub fn avoiding_radius(g: &LWGraph, pattern: &NormalForm) -> Result<(crate::graph::SpectrumReport, usize)> {
    let k = pattern.canonical_length().saturating_sub(1).max(1);
    let l = lift(g, k, DEFAULT_LIFT_CAP)?.forbid(g, pattern.factors())?;
    Ok((spectral_radius(l.adjacency()), l.vertex_count()))
}

pub fn criterion_5(ns: &[usize]) -> CriterionReport {
    let start = Instant::now();
    let mut checks = vec![];
    for &n in ns {
        let g = graph(n);
        let gamma = spectral_radius(g.adjacency());
        for (name, p) in [("x_A", x_a(n)), ("x_B", x_b(n))] {
            let p = p.expect("patterns exist for n ≥ 3");
            match avoiding_radius(&g, &p) {
                Ok((w, size)) => {
                    let margin = gamma.lower - w.upper;
                    checks.push((
                        margin > GAP_MARGIN && w.converged,
                        format!(
                            "n={n} {name}: γ ∈ [{:.12}, {:.12}], γ_w ∈ [{:.12}, {:.12}], margin {margin:.3e}, lift {size} vertices",
                            gamma.lower, gamma.upper, w.lower, w.upper
                        ),
                    ));
                }
                Err(e) => checks.push((false, format!("n={n} {name}: {e}"))),
            }
        }
    }
    report(5, "strict spectral gap", start, Some(Duration::from_secs(300)), checks)
}

/// Depth-first enumeration of all paths of `l + 1` vertices, counting the paths and the
/// based loops (closing edge back to the first vertex) that avoid `pattern`.
fn brute_avoiding(g: &LWGraph, pattern: &[SimpleBraid], l: usize) -> (u64, u64) {
    fn rec(g: &LWGraph, pattern: &[SimpleBraid], l: usize, seq: &mut Vec<usize>, out: &mut (u64, u64)) {
        if seq.len() == l + 1 {
            let factors: Vec<SimpleBraid> = seq.iter().map(|&i| *g.vertex(i)).collect();
            if find_subword(&factors, pattern).is_none() {
                out.0 += 1;
                if g.has_edge(seq[l], seq[0]) {
                    out.1 += 1;
                }
            }
            return;
        }
        let next: Vec<usize> = match seq.last() {
            None => (0..g.vertex_count()).collect(),
            Some(&u) => (0..g.vertex_count()).filter(|&w| g.has_edge(u, w)).collect(),
        };
        for w in next {
            seq.push(w);
            rec(g, pattern, l, seq, out);
            seq.pop();
        }
    }
    let mut out = (0, 0);
    rec(g, pattern, l, &mut Vec::new(), &mut out);
    out
}

pub fn criterion_6() -> CriterionReport {
    let start = Instant::now();
    let g = graph(3);
    let mut checks = vec![];
    for (name, p) in [("x_A", x_a(3)), ("x_B", x_b(3))] {
        let p = p.expect("n=3 patterns").factors().to_vec();
        let mut bad = vec![];
        for l in 0..=12 {
            let (bp, bl) = brute_avoiding(&g, &p, l);
            match count_avoiding(&g, std::slice::from_ref(&p), l, LoopReading::Linear) {
                Ok((cp, cl)) if cp == BigUint::from(bp) && cl == BigUint::from(bl) => {}
                other => bad.push(format!("l={l}: brute ({bp},{bl}) vs {other:?}")),
            }
        }
        checks.push((bad.is_empty(), format!("n=3 {name}: l=0..12 exact, mismatches {bad:?}")));
    }
    report(6, "subword-count oracle", start, None, checks)
}

/// First `l ≤ lmax` with `N°_{x_A}(l−1) + N°_{x_B}(l−1) < threshold · N°(l−1)`, and the
/// excluded fraction at that `l` (or at `lmax` when none qualifies).
pub fn first_generic_length(g: &LWGraph, lmax: usize, threshold: f64) -> Result<(Option<usize>, f64, BigRational)> {
    let rows = rigid_pa_lower_counts(g, lmax - 1, false)?;
    let frac = |r: &crate::graph::PaBoundRow| {
        BigRational::new((&r.avoid_a + &r.avoid_b).into(), r.loops.clone().into())
    };
    let limit = BigRational::from_float(threshold).expect("finite threshold");
    for l in 5..=lmax {
        let f = frac(&rows[l - 1]);
        if f < limit {
            let bound = BigRational::new(rows[l - 1].lower_bound().into(), rows[l - 1].loops.clone().into());
            return Ok((Some(l), ratio_to_f64(&f), bound));
        }
    }
    let last = &rows[lmax - 1];
    Ok((None, ratio_to_f64(&frac(last)), BigRational::new(last.lower_bound().into(), last.loops.clone().into())))
}

pub fn criterion_7(ns: &[usize]) -> CriterionReport {
    let start = Instant::now();
    let mut checks = vec![];
    for &n in ns {
        let g = graph(n);
        match first_generic_length(&g, GENERICITY_LMAX, GENERICITY_THRESHOLD) {
            Ok((Some(l), f, bound)) => {
                let b = ratio_to_f64(&bound);
                match measure_pa_proportion(&g, l, GENERICITY_SAMPLES, SEED) {
                    Ok(rep) => {
                        let sigma = (rep.proportion_certified * (1.0 - rep.proportion_certified)
                            / rep.sample_count as f64)
                            .sqrt();
                        let ok = rep.proportion_certified >= b - 3.0 * sigma;
                        checks.push((
                            ok,
                            format!(
                                "n={n}: first l = {l} (excluded fraction {f:.5}), exact bound {b:.5}, sampled {:.5} over {} draws",
                                rep.proportion_certified, rep.sample_count
                            ),
                        ));
                    }
                    Err(e) => checks.push((false, format!("n={n}: sampling failed: {e}"))),
                }
            }
            Ok((None, f, _)) => checks.push((
                false,
                format!("n={n}: excluded fraction still {f:.5} at l = {GENERICITY_LMAX} (threshold {GENERICITY_THRESHOLD})"),
            )),
            Err(e) => checks.push((false, format!("n={n}: {e}"))),
        }
    }
    report(7, "genericity among rigid braids", start, None, checks)
}

/// A braid of the requested shape at distance `l`, drawn with a uniform normal sequence.
fn random_shaped(g: &LWGraph, shape: SphereShape, l: usize, rng: &mut ChaCha8Rng) -> NormalForm {
    let (inf, r) = match shape {
        SphereShape::NegativePower => (-(l as i64), rng.gen_range(0..l)),
        SphereShape::Straddling => (-(rng.gen_range(0..=l) as i64), l),
        SphereShape::PositivePower => {
            let k = rng.gen_range(1..=l);
            (k as i64, l - k)
        }
    };
    let factors = if r == 0 {
        vec![]
    } else {
        PathSampler::new(g, r).expect("r ≥ 1").sample(rng).factors().to_vec()
    };
    NormalForm::from_parts(g.n(), inf, factors).expect("paths are normal")
}

pub fn criterion_8(ns: &[usize]) -> CriterionReport {
    let start = Instant::now();
    let mut checks = vec![];
    let g3 = graph(3);
    match brute_force_sphere(3, 4, 1_000_000) {
        Ok(bfs) => {
            let spheres = sphere_counts(&g3, 4);
            let ok_s = (1..=4).all(|l| spheres[l - 1].total == BigUint::from(bfs[l]));
            let ok_b = (0..=4).all(|l| ball_count(&g3, l) == BigUint::from(bfs[..=l].iter().sum::<u64>()));
            checks.push((ok_s && ok_b, format!("n=3 BFS spheres {bfs:?} vs counted {:?}", spheres.iter().map(|s| s.total.to_string()).collect::<Vec<_>>())));
        }
        Err(e) => checks.push((false, format!("BFS: {e}"))),
    }
    let shapes = [SphereShape::NegativePower, SphereShape::Straddling, SphereShape::PositivePower];
    for &n in ns {
        let g = graph(n);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
        let mut bad = 0;
        for i in 0..10_000 {
            let shape = shapes[i % 3];
            let l = rng.gen_range(1..=12);
            let x = random_shaped(&g, shape, l, &mut rng);
            // the sampled braid also round-trips through a word
            let y = normal_form(&x.to_word());
            if word_length(&x) != l as u64 || sphere_shape(&x) != Some(shape) || y != x {
                bad += 1;
            }
        }
        checks.push((bad == 0, format!("n={n}: 10^4 shaped braids, {bad} with wrong length or shape")));
    }
    report(8, "sphere and ball cross-validation", start, None, checks)
}

pub fn criterion_9(n: usize, r: usize, samples: usize) -> CriterionReport {
    let start = Instant::now();
    let mut checks = vec![];
    let g = graph(n);
    let certifier = Certifier::new(n).expect("n ≥ 3");
    match LoopSampler::containing_certificate(&g, r).and_then(|s| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        s.sample_many(samples, &mut rng)
    }) {
        Ok(draws) => {
            let bad: Vec<usize> = crate::par_map(draws.len(), |i| {
                let x = &draws[i];
                let certified = certifier
                    .certify(x)
                    .map(|v| v.kind == VerdictKind::CertifiedPseudoAnosov)
                    .unwrap_or(false);
                let round = preserved_round_curve_power(x, n).is_some();
                (!certified || round || !x.is_rigid().unwrap_or(false)) as usize
            });
            let bad: usize = bad.into_iter().sum();
            checks.push((
                bad == 0,
                format!("n={n} r={r}: {samples} rigid draws containing both patterns, {bad} not certified or with a round witness"),
            ));
        }
        Err(e) => checks.push((false, format!("sampler: {e}"))),
    }
    let mut bad = vec![];
    for m in 3..=6 {
        for l in 1..=8 {
            let x = normal_form(&BraidWord::parse(m, &"s1 ".repeat(l)).expect("valid word"));
            match Certifier::new(m).and_then(|c| c.certify(&x)) {
                Ok(v) if v.kind == VerdictKind::ReducibilityWitness => {}
                other => bad.push(format!("n={m} l={l}: {other:?}")),
            }
        }
    }
    checks.push((bad.is_empty(), format!("σ1 powers give reducibility witnesses, exceptions {bad:?}")));
    report(9, "certifier soundness", start, Some(Duration::from_secs(300)), checks)
}

pub fn criterion_10(ns: &[usize]) -> CriterionReport {
    let start = Instant::now();
    let mut checks = vec![];
    // images of [1,2] and [2,3] under σ1, σ2, σ1σ2, σ2σ1, worked out by hand
    let table: [(&[usize], [Option<(usize, usize)>; 2]); 4] = [
        (&[1], [Some((1, 2)), None]),
        (&[2], [None, Some((2, 3))]),
        (&[1, 2], [None, Some((1, 2))]),
        (&[2, 1], [Some((2, 3)), None]),
    ];
    let mut bad = 0;
    for (word, images) in table {
        let s = SimpleBraid::from_positive_word(3, word).expect("simple");
        for (c, want) in RoundCurve::all(3).iter().zip(images) {
            let got = image_round(&s, c).map(|d| (d.lo(), d.hi()));
            if got != want {
                bad += 1;
            }
        }
    }
    checks.push((bad == 0, format!("n=3 single-factor images, {bad} of 8 wrong")));
    for &n in ns {
        let g = graph(n);
        let xa = x_a(n).expect("n ≥ 3").factors().to_vec();
        let r = 12;
        match LoopSampler::open_containing(&g, r, &[xa]) {
            Ok(s) => {
                let mut rng = ChaCha8Rng::seed_from_u64(SEED);
                match s.sample_many(1000, &mut rng) {
                    Ok(draws) => {
                        let bad = draws
                            .iter()
                            .map(|x| {
                                let inf = rng.gen_range(-3..=3);
                                NormalForm::from_parts(n, inf, x.factors().to_vec()).expect("same factors")
                            })
                            .filter(|x| RoundCurve::all(n).iter().any(|c| transport_round(x, c).is_some()))
                            .count();
                        checks.push((bad == 0, format!("n={n}: 1000 braids containing x_A, {bad} send a round curve to a round curve")));
                    }
                    Err(e) => checks.push((false, format!("n={n}: {e}"))),
                }
            }
            Err(e) => checks.push((false, format!("n={n}: {e}"))),
        }
    }
    report(10, "round-curve transport", start, None, checks)
}

/// All ten criteria at the sizes they are stated for.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_1(&[3, 4]),
        criterion_2(&[3, 4, 5], &[6]),
        criterion_3(),
        criterion_4(&[3, 4, 5]),
        criterion_5(&[3, 4, 5]),
        criterion_6(),
        criterion_7(&[3, 4]),
        criterion_8(&[3, 4, 5]),
        criterion_9(4, 60, 1000),
        criterion_10(&[3, 4, 6]),
    ]
}

/// The criteria restricted to one strand count; the n=3-only criteria run only for n = 3.
pub fn run_for(n: usize) -> Vec<CriterionReport> {
    let mut out = vec![];
    if n <= 4 {
        out.push(criterion_1(&[n]));
    }
    if n <= 5 {
        out.push(criterion_2(&[n], &[]));
    } else {
        out.push(criterion_2(&[], &[n]));
    }
    if n == 3 {
        out.push(criterion_3());
    }
    out.push(criterion_4(&[n]));
    out.push(criterion_5(&[n]));
    if n == 3 {
        out.push(criterion_6());
    }
    out.push(criterion_7(&[n]));
    out.push(criterion_8(&[n]));
    out.push(criterion_9(n, 60, 1000));
    out.push(criterion_10(&[n]));
    out
}
