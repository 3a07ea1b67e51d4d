//! Exact sphere and ball sizes in the Cayley graph of `B_n` with the simple braids
//! as generators, and uniform sampling of normal forms.

mod sample;

pub use sample::{
    exact_pa_bound, measure_pa_proportion, ratio_to_f64, sample_uniform_path, sample_uniform_rigid, LoopSampler,
    PathSampler, SampleReport,
};

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::braid::{NormalForm, Permutation, SimpleBraid};
use crate::error::{Error, Result};
use crate::graph::{path_counts, rigid_pa_lower_counts, LWGraph};

/// Distance to the identity in the Cayley graph over simple braids and their inverses.
pub fn word_length(x: &NormalForm) -> u64 {
    let (inf, sup) = (x.inf(), x.sup());
    if inf >= 0 {
        sup as u64
    } else if sup <= 0 {
        inf.unsigned_abs()
    } else {
        (sup - inf) as u64
    }
}

/// Which of the three normal-form shapes a braid at distance `l` has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SphereShape {
    /// `Δ^{-l} s_1 ⋯ s_k` with `k < l`.
    NegativePower,
    /// `Δ^{-k} s_1 ⋯ s_l` with `0 ≤ k ≤ l`.
    Straddling,
    /// `Δ^k s_1 ⋯ s_{l-k}` with `k ≥ 1`.
    PositivePower,
}

pub fn sphere_shape(x: &NormalForm) -> Option<SphereShape> {
    let l = word_length(x) as i64;
    let (inf, r) = (x.inf(), x.canonical_length() as i64);
    if l == 0 {
        return None;
    }
    if inf == -l && r < l {
        Some(SphereShape::NegativePower)
    } else if (-l..=0).contains(&inf) && r == l {
        Some(SphereShape::Straddling)
    } else if inf >= 1 && inf + r == l {
        Some(SphereShape::PositivePower)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereShapeCounts {
    pub l: usize,
    #[serde(serialize_with = "decimal")]
    pub shape_i: BigUint,
    #[serde(serialize_with = "decimal")]
    pub shape_ii: BigUint,
    #[serde(serialize_with = "decimal")]
    pub shape_iii: BigUint,
    #[serde(serialize_with = "decimal")]
    pub total: BigUint,
}

pub(crate) fn decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `P(0..=lmax)`: `P(0) = 1` and `P(r)` is the number of `r`-vertex paths in Γ.
fn normal_sequence_counts(g: &LWGraph, lmax: usize) -> Vec<BigUint> {
    let mut p = vec![BigUint::one()];
    if lmax > 0 {
        p.extend(path_counts(g.adjacency(), lmax - 1));
    }
    p
}

/// Sphere sizes for `l = 1..=lmax`, split by shape.
pub fn sphere_counts(g: &LWGraph, lmax: usize) -> Vec<SphereShapeCounts> {
    let p = normal_sequence_counts(g, lmax);
    (1..=lmax)
        .map(|l| {
            let shape_i: BigUint = p[..l].iter().sum();
            let shape_ii = &p[l] * BigUint::from(l + 1);
            let shape_iii: BigUint = (1..=l).map(|k| &p[l - k]).sum();
            let total = &shape_i + &shape_ii + &shape_iii;
            SphereShapeCounts { l, shape_i, shape_ii, shape_iii, total }
        })
        .collect()
}

pub fn sphere_count(g: &LWGraph, l: usize) -> Result<SphereShapeCounts> {
    if l == 0 {
        return Err(Error::Invalid("sphere_count needs l ≥ 1".into()));
    }
    Ok(sphere_counts(g, l).pop().expect("l ≥ 1"))
}

/// `|B(l)| = 1 + Σ_{k=1}^{l} |S(k)|`.
pub fn ball_count(g: &LWGraph, l: usize) -> BigUint {
    sphere_counts(g, l).iter().fold(BigUint::one(), |acc, s| acc + &s.total)
}

/// CSV with columns `l,shape_i,shape_ii,shape_iii,total`.
pub fn spheres_csv(rows: &[SphereShapeCounts]) -> String {
    let mut out = String::from("l,shape_i,shape_ii,shape_iii,total\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.l, r.shape_i, r.shape_ii, r.shape_iii, r.total));
    }
    out
}

/// Breadth-first sphere sizes `|S(0)|, …, |S(lmax)|`, keyed by normal form.
/// Fails once more than `guard` braids have been seen.
pub fn brute_force_sphere(n: usize, lmax: usize, guard: usize) -> Result<Vec<u64>> {
    crate::check_strands(n)?;
    let simples: Vec<NormalForm> = Permutation::all(n)
        .into_iter()
        .map(SimpleBraid::from_permutation)
        .filter(|s| !s.is_identity())
        .map(|s| NormalForm::from_simple_product(n, 0, &[s]))
        .collect();
    let gens: Vec<NormalForm> = simples.iter().cloned().chain(simples.iter().map(NormalForm::invert)).collect();
    let mut seen: HashSet<NormalForm> = HashSet::new();
    let mut frontier = vec![NormalForm::identity(n)];
    seen.insert(frontier[0].clone());
    let mut sizes = vec![1];
    for _ in 0..lmax {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &gens {
                let y = x.multiply(s)?;
                if !seen.contains(&y) {
                    if seen.len() >= guard {
                        return Err(Error::SizeGuard(format!("more than {guard} braids in the ball")));
                    }
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        sizes.push(next.len() as u64);
        frontier = next;
    }
    Ok(sizes)
}

/// Certified lower bound on rigid pseudo-Anosov braids in the `l`-sphere of shape
/// `Δ^{-k} s_1 ⋯ s_l`. `even_k` counts only even `k`; `all_k` adds odd `k`, where
/// rigidity closes through `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpherePaBound {
    pub l: usize,
    #[serde(serialize_with = "decimal")]
    pub even_k: BigUint,
    #[serde(serialize_with = "decimal")]
    pub all_k: BigUint,
    #[serde(serialize_with = "decimal")]
    pub sphere_total: BigUint,
}

pub fn sphere_pa_bounds(g: &LWGraph, lmax: usize) -> Result<Vec<SpherePaBound>> {
    if lmax == 0 {
        return Ok(vec![]);
    }
    let plain = rigid_pa_lower_counts(g, lmax - 1, false)?;
    let twisted = rigid_pa_lower_counts(g, lmax - 1, true)?;
    let spheres = sphere_counts(g, lmax);
    Ok((1..=lmax)
        .map(|l| {
            let even = BigUint::from(l / 2 + 1);
            let odd = BigUint::from((l + 1) / 2);
            let even_k = &even * plain[l - 1].lower_bound();
            let all_k = &even_k + &odd * twisted[l - 1].lower_bound();
            SpherePaBound { l, even_k, all_k, sphere_total: spheres[l - 1].total.clone() }
        })
        .collect())
}

impl SpherePaBound {
    pub fn is_zero(&self) -> bool {
        self.all_k.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{normal_form, BraidWord};
    use crate::graph::build_graph;

    #[test]
    fn word_length_examples() {
        assert_eq!(word_length(&NormalForm::identity(3)), 0);
        assert_eq!(word_length(&NormalForm::delta_power(3, -4)), 4);
        let x = normal_form(&BraidWord::parse(3, "D D s1 s1 s2").unwrap());
        assert_eq!((x.inf(), x.canonical_length()), (2, 2));
        assert_eq!(word_length(&x), 4);
        assert_eq!(sphere_shape(&x), Some(SphereShape::PositivePower));
    }

    #[test]
    fn n3_small_spheres() {
        let g = build_graph(3).unwrap();
        let s1 = sphere_count(&g, 1).unwrap();
        assert_eq!(
            [&s1.shape_i, &s1.shape_ii, &s1.shape_iii, &s1.total].map(|x| x.to_string()),
            ["1", "8", "1", "10"].map(String::from)
        );
        assert_eq!(ball_count(&g, 0), BigUint::one());
        let bfs = brute_force_sphere(3, 3, 100_000).unwrap();
        assert_eq!(bfs[..2], [1, 10]);
        let spheres = sphere_counts(&g, 3);
        for l in 1..=3 {
            assert_eq!(spheres[l - 1].total, BigUint::from(bfs[l]));
        }
        assert_eq!(ball_count(&g, 3), BigUint::from(bfs.iter().sum::<u64>()));
    }

    #[test]
    fn size_guard_trips() {
        assert!(matches!(brute_force_sphere(3, 4, 50), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn csv_header() {
        let g = build_graph(3).unwrap();
        assert!(spheres_csv(&sphere_counts(&g, 1)).starts_with("l,shape_i,shape_ii,shape_iii,total\n1,1,8,1,10\n"));
    }
}
