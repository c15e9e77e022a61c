//! Admissible subalgebras and the graded PI-exponent.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::codim::{codim_series, Caps, CodimCache, SeriesValue};
use crate::error::{Error, Result};
use crate::linalg;
use crate::multiplier::ActingAlgebra;
use crate::scalar::{self, Scalar};

/// `A = B_1 + ... + B_t + J` with the `B_i` given by bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnData {
    pub components: Vec<Vec<AlgebraElement>>,
    pub radical: Vec<AlgebraElement>,
}

fn coords(v: &[AlgebraElement]) -> Vec<Vec<Scalar>> {
    v.iter().map(|e| e.coords.clone()).collect()
}

impl WedderburnData {
    /// Checks dimensions, homogeneity, closure of each component,
    /// `B_i B_j ⊆ J` for `i != j`, `span(B ∪ J) = A` as a direct sum, and that
    /// `J` is the radical of `A`.
    pub fn validate(&self, a: &GradedAlgebra) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidAlgebra(format!("wedderburn data: {m}")));
        let all: Vec<&AlgebraElement> = self.components.iter().flatten().chain(&self.radical).collect();
        for e in &all {
            if e.dim() != a.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    found: e.dim(),
                });
            }
            if a.homogeneous_degree(e).is_none() {
                return bad(format!("{e} is not homogeneous"));
            }
        }
        let vecs: Vec<Vec<Scalar>> = all.iter().map(|e| e.coords.clone()).collect();
        if all.len() != a.dim() || linalg::rank(&vecs, a.dim()) != a.dim() {
            return bad("components and radical must form a basis of the algebra".into());
        }
        let j = linalg::rref(&coords(&self.radical), a.dim());
        let rad = linalg::rref(&coords(&a.radical()), a.dim());
        if j != rad {
            return bad("declared radical differs from the computed radical".into());
        }
        for (i, bi) in self.components.iter().enumerate() {
            if bi.is_empty() {
                return bad(format!("component {i} is empty"));
            }
            let span = linalg::rref(&coords(bi), a.dim());
            for x in bi {
                for y in bi {
                    if !span.contains(&a.multiply(x, y)?.coords) {
                        return bad(format!("component {i} is not closed under multiplication"));
                    }
                }
            }
            for (k, bk) in self.components.iter().enumerate() {
                if k == i {
                    continue;
                }
                for x in bi {
                    for y in bk {
                        if !j.contains(&a.multiply(x, y)?.coords) {
                            return bad(format!("B{i} B{k} is not inside the radical"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissible {
    /// Component indices, sorted.
    pub components: Vec<usize>,
    /// An order `l_1, ..., l_k` with `B_{l1} J B_{l2} ... J B_{lk} != 0`.
    pub order: Vec<usize>,
    pub dimension: usize,
}

/// Basis of `span{x y : x in xs, y in ys}`.
fn product_span(a: &GradedAlgebra, xs: &[Vec<Scalar>], ys: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut prods = Vec::with_capacity(xs.len() * ys.len());
    for x in xs {
        for y in ys {
            prods.push(a.mul_unchecked(x, y).coords);
        }
    }
    linalg::span_basis(&prods, a.dim())
}

fn chain_nonzero(a: &GradedAlgebra, wd: &WedderburnData, order: &[usize]) -> bool {
    let j = coords(&wd.radical);
    let mut span = linalg::span_basis(&coords(&wd.components[order[0]]), a.dim());
    for &l in &order[1..] {
        span = product_span(a, &span, &j);
        if span.is_empty() {
            return false;
        }
        span = product_span(a, &span, &coords(&wd.components[l]));
        if span.is_empty() {
            return false;
        }
    }
    !span.is_empty()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// All admissible sets of distinct components, in order of their bitmask.
pub fn admissible_subalgebras(wd: &WedderburnData, a: &GradedAlgebra) -> Vec<Admissible> {
    let t = wd.components.len();
    assert!(t < usize::BITS as usize, "too many components");
    (1usize..(1 << t))
        .into_par_iter()
        .filter_map(|mask| {
            let set: Vec<usize> = (0..t).filter(|i| mask >> i & 1 == 1).collect();
            permutations(&set)
                .into_iter()
                .find(|order| chain_nonzero(a, wd, order))
                .map(|order| Admissible {
                    dimension: set.iter().map(|&i| wd.components[i].len()).sum(),
                    components: set,
                    order,
                })
        })
        .collect()
}

/// Maximal dimension of an admissible subalgebra (0 without components).
pub fn graded_exponent(wd: &WedderburnData, a: &GradedAlgebra) -> usize {
    admissible_subalgebras(wd, a)
        .iter()
        .map(|s| s.dimension)
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub exponent: usize,
    #[serde(serialize_with = "crate::scalar::bigint_text::serialize_vec")]
    pub codims: Vec<BigInt>,
    /// `c_{n+1} / c_n` as `"p/q"`.
    pub ratios: Vec<String>,
    /// Smallest `u` with every ratio in `[d (n/(n+1))^u, d ((n+1)/n)^u]`.
    pub fitted_u: Option<u32>,
    pub u_bound: u32,
    pub pass: bool,
    /// Set when the series stopped early at a resource cap.
    pub truncated: Option<String>,
}

fn pow(x: &Scalar, e: u32) -> Scalar {
    (0..e).fold(Scalar::one(), |acc, _| acc * x)
}

/// Smallest `u <= u_bound` placing every consecutive ratio of `codims`
/// (indexed from `n = 1`) in the window around `d`.
pub fn fit_growth(codims: &[BigInt], d: usize, u_bound: u32) -> Option<u32> {
    let d = scalar::int(d as i64);
    (0..=u_bound).find(|&u| {
        codims.windows(2).enumerate().all(|(i, pair)| {
            if pair[0].is_zero() || pair[1].is_zero() {
                return pair[0].is_zero() && pair[1].is_zero();
            }
            let n = (i + 1) as i64;
            let ratio = Scalar::new(pair[1].clone(), pair[0].clone());
            let shrink = pow(&scalar::ratio(n, n + 1), u);
            let grow = pow(&scalar::ratio(n + 1, n), u);
            &d * shrink <= ratio && ratio <= &d * grow
        })
    })
}

/// Computes `c_1..c_{n_max}` and checks the ratios against the exponent.
/// The exponent `u` of the polynomial factor is fitted and must not exceed
/// `dim A`.
pub fn growth_crosscheck(
    a: &GradedAlgebra,
    w: &ActingAlgebra,
    wd: Option<&WedderburnData>,
    n_max: usize,
    caps: &Caps,
    cache: Option<&dyn CodimCache>,
) -> Result<GrowthReport> {
    let d = wd.map_or(0, |wd| graded_exponent(wd, a));
    let series = codim_series(a, w, n_max, caps, cache)?;
    let codims = series.values();
    let truncated = series.entries.iter().find_map(|e| match &e.value {
        SeriesValue::Truncated { reason } => Some(reason.clone()),
        SeriesValue::Value { .. } => None,
    });
    let ratios = codims
        .windows(2)
        .filter(|p| !p[0].is_zero())
        .map(|p| scalar::to_canonical(&Scalar::new(p[1].clone(), p[0].clone())))
        .collect();
    let u_bound = a.dim() as u32;
    let fitted_u = if d == 0 {
        codims.iter().all(Zero::is_zero).then_some(0)
    } else {
        fit_growth(&codims, d, u_bound)
    };
    Ok(GrowthReport {
        exponent: d,
        pass: fitted_u.is_some() && truncated.is_none(),
        codims,
        ratios,
        fitted_u,
        u_bound,
        truncated,
    })
}
