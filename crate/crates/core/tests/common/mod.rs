//! Random graded algebras for property tests.
//!
//! Each algebra comes from a known associative family (elementary graded
//! matrix and triangular algebras, group algebras, truncated polynomial
//! algebras, nilpotent and zero-product algebras, direct sums) and is then
//! scrambled by a random invertible change of basis inside each homogeneous
//! component.

#![allow(dead_code)]

pub mod props;

use std::collections::HashMap;

use gpilab_core::algebra::{AlgebraElement, GradedAlgebra};
use gpilab_core::free::{GenPolynomial, Token, Var};
use gpilab_core::linalg::Matrix;
use gpilab_core::multiplier::ActingAlgebra;
use gpilab_core::scalar::{int, ratio, Scalar};
use gpilab_core::FiniteGroup;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric group on three letters, elements as permutations in
/// lexicographic order.
pub fn s3() -> FiniteGroup {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    let labels = (0..6).map(|i| format!("s{i}")).collect();
    FiniteGroup::new(labels, table, 0).unwrap()
}

pub fn klein() -> FiniteGroup {
    let table = (0..4).map(|a: usize| (0..4).map(|b: usize| a ^ b).collect()).collect();
    FiniteGroup::new(vec!["e".into(), "a".into(), "b".into(), "ab".into()], table, 0).unwrap()
}

pub fn random_group(r: &mut ChaCha8Rng) -> FiniteGroup {
    match r.gen_range(0..6) {
        0 => FiniteGroup::trivial(),
        1 | 2 => FiniteGroup::cyclic(2),
        3 => FiniteGroup::cyclic(3),
        4 => klein(),
        _ => s3(),
    }
}

type Entries = Vec<(usize, usize, usize, Scalar)>;

struct Raw {
    degrees: Vec<usize>,
    entries: Entries,
    unit: Option<Vec<Scalar>>,
}

/// `M_k` (or `UT_k` when `triangular`) with `deg e_ij = g_i^{-1} g_j`.
fn elementary(g: &FiniteGroup, grades: &[usize], triangular: bool) -> Raw {
    let k = grades.len();
    let mut idx = HashMap::new();
    let mut degrees = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if triangular && j < i {
                continue;
            }
            idx.insert((i, j), degrees.len());
            degrees.push(g.mul(g.inverse(grades[i]), grades[j]));
        }
    }
    let mut entries = Vec::new();
    for (&(i, j), &a) in &idx {
        for (&(j2, l), &b) in &idx {
            if j == j2 {
                entries.push((a, b, idx[&(i, l)], int(1)));
            }
        }
    }
    let mut unit = vec![int(0); degrees.len()];
    for i in 0..k {
        unit[idx[&(i, i)]] = int(1);
    }
    Raw {
        degrees,
        entries,
        unit: Some(unit),
    }
}

fn group_algebra(g: &FiniteGroup) -> Raw {
    let n = g.order();
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            entries.push((a, b, g.mul(a, b), int(1)));
        }
    }
    let mut unit = vec![int(0); n];
    unit[g.identity()] = int(1);
    Raw {
        degrees: (0..n).collect(),
        entries,
        unit: Some(unit),
    }
}

/// `x^lo, ..., x^{hi-1}` inside `F[x]/(x^hi)`, `deg x = d`. Unital iff
/// `lo == 0`.
fn truncated(g: &FiniteGroup, d: usize, lo: usize, hi: usize) -> Raw {
    let pow = |e: usize| (0..e).fold(g.identity(), |acc, _| g.mul(acc, d));
    let degrees = (lo..hi).map(pow).collect();
    let mut entries = Vec::new();
    for i in lo..hi {
        for j in lo..hi {
            if i + j < hi {
                entries.push((i - lo, j - lo, i + j - lo, int(1)));
            }
        }
    }
    let unit = (lo == 0).then(|| (0..hi).map(|i| int(i64::from(i == 0))).collect());
    Raw { degrees, entries, unit }
}

fn zero_product(degrees: Vec<usize>) -> Raw {
    Raw {
        degrees,
        entries: Vec::new(),
        unit: None,
    }
}

fn direct_sum(a: Raw, b: Raw) -> Raw {
    let off = a.degrees.len();
    let mut entries = a.entries;
    entries.extend(b.entries.into_iter().map(|(i, j, k, c)| (i + off, j + off, k + off, c)));
    let unit = match (a.unit, b.unit) {
        (Some(mut u), Some(v)) => {
            u.extend(v);
            Some(u)
        }
        _ => None,
    };
    let mut degrees = a.degrees;
    degrees.extend(b.degrees);
    Raw { degrees, entries, unit }
}

fn random_small(r: &mut ChaCha8Rng) -> Scalar {
    int(r.gen_range(-2..=2))
}

pub fn random_scalar(r: &mut ChaCha8Rng) -> Scalar {
    if r.gen_bool(0.2) {
        ratio(r.gen_range(-3..=3), r.gen_range(1..=3))
    } else {
        int(r.gen_range(-3..=3))
    }
}

/// Random invertible matrix preserving each homogeneous component.
fn homogeneous_change(r: &mut ChaCha8Rng, degrees: &[usize]) -> Matrix {
    let n = degrees.len();
    loop {
        let mut p = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if degrees[i] == degrees[j] {
                    p[(i, j)] = if i == j { int(1) + random_small(r) } else { random_small(r) };
                }
            }
        }
        if p.inverse().is_some() {
            return p;
        }
    }
}

fn scramble(r: &mut ChaCha8Rng, g: FiniteGroup, raw: Raw) -> GradedAlgebra {
    let base = GradedAlgebra::new(g.clone(), raw.degrees.clone(), raw.entries, raw.unit).expect("family is valid");
    let n = base.dim();
    let p = homogeneous_change(r, &raw.degrees);
    let inv = p.inverse().unwrap();
    let cols: Vec<AlgebraElement> = (0..n).map(|j| AlgebraElement::new(p.column(j))).collect();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let prod = base.multiply(&cols[i], &cols[j]).unwrap();
            for (k, c) in inv.apply(&prod.coords).into_iter().enumerate() {
                if c != int(0) {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    let unit = base.unit().map(|u| inv.apply(&u.coords));
    GradedAlgebra::new(g, raw.degrees, entries, unit).expect("change of basis keeps the axioms")
}

fn random_degree(r: &mut ChaCha8Rng, g: &FiniteGroup) -> usize {
    r.gen_range(0..g.order())
}

/// A random graded algebra of dimension exactly `dim` (1..=4).
pub fn random_algebra(r: &mut ChaCha8Rng, dim: usize) -> GradedAlgebra {
    let g = random_group(r);
    let raw = loop {
        let choice = r.gen_range(0..9);
        let d = random_degree(r, &g);
        let d2 = random_degree(r, &g);
        let cand = match (choice, dim) {
            (0, 4) => Some(elementary(&g, &[d, d2], false)),
            (1, 3) => Some(elementary(&g, &[d, d2], true)),
            (1, 4) => Some(direct_sum(elementary(&g, &[d, d2], true), truncated(&g, d, 0, 1))),
            (2, _) if g.order() == dim => Some(group_algebra(&g)),
            (3, _) => Some(truncated(&g, d, 0, dim)),
            (4, _) => Some(truncated(&g, d, 1, dim + 1)),
            (5, _) => Some(zero_product((0..dim).map(|_| random_degree(r, &g)).collect())),
            (6, 4) => Some(direct_sum(truncated(&g, d, 0, 2), truncated(&g, d2, 0, 2))),
            (7, _) => Some(truncated(&g, g.identity(), 0, 1)).map(|mut a| {
                for _ in 1..dim {
                    a = direct_sum(a, truncated(&g, g.identity(), 0, 1));
                }
                a
            }),
            (8, 2..=4) => Some(direct_sum(truncated(&g, d, 0, dim - 1), truncated(&g, d2, 1, 2))),
            _ => None,
        };
        if let Some(c) = cand {
            break c;
        }
    };
    scramble(r, g, raw)
}

pub fn random_element(r: &mut ChaCha8Rng, a: &GradedAlgebra) -> AlgebraElement {
    AlgebraElement::new((0..a.dim()).map(|_| random_scalar(r)).collect())
}

pub fn random_homogeneous(r: &mut ChaCha8Rng, a: &GradedAlgebra, g: usize) -> AlgebraElement {
    AlgebraElement::new(
        a.degrees()
            .iter()
            .map(|&d| if d == g { random_scalar(r) } else { int(0) })
            .collect(),
    )
}

/// A random token word with `letters` letters drawn from `vars`, borders
/// drawn from the acting basis and sometimes repeated or omitted.
pub fn random_word(r: &mut ChaCha8Rng, w: &ActingAlgebra, vars: &[Var], letters: usize) -> Vec<Token> {
    let mut out = Vec::new();
    for _ in 0..letters {
        for _ in 0..r.gen_range(0..=2) {
            out.push(Token::W(r.gen_range(0..w.dim())));
        }
        out.push(Token::X(*vars.choose(r).unwrap()));
    }
    for _ in 0..r.gen_range(0..=2) {
        out.push(Token::W(r.gen_range(0..w.dim())));
    }
    out
}

pub fn random_polynomial(r: &mut ChaCha8Rng, w: &ActingAlgebra, vars: &[Var], max_letters: usize) -> GenPolynomial {
    let mut f = GenPolynomial::zero();
    for _ in 0..r.gen_range(1..=4) {
        let len = r.gen_range(1..=max_letters);
        let word = random_word(r, w, vars, len);
        f = f.add(&GenPolynomial::normalize(w, random_scalar(r), &word).unwrap());
    }
    f
}
