//! Randomized invariants as plain checks keyed by a seed, shared by the
//! proptest suite and the acceptance run.

use std::collections::HashMap;

use gpilab_core::algebra::AlgebraElement;
use gpilab_core::builtins::Builtin;
use gpilab_core::codim::{evaluation_rank, Caps};
use gpilab_core::echelon::{row_from_rational, Echelon};
use gpilab_core::eval::evaluate_at;
use gpilab_core::free::{GenPolynomial, Var};
use gpilab_core::scalar::int;
use gpilab_core::GradedAlgebra;
use rand::seq::SliceRandom;
use rand::Rng;

use super::*;

pub type Check = Result<(), String>;

pub type NamedCheck = (&'static str, fn(u64) -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

macro_rules! ensure_eq {
    ($a:expr, $b:expr) => {{
        let (a, b) = (&$a, &$b);
        if a != b {
            return Err(format!("{} != {}: {a:?} vs {b:?}", stringify!($a), stringify!($b)));
        }
    }};
}

/// Every check with its name; the first argument is the seed.
pub const ALL: [NamedCheck; 9] = [
    ("grading and associativity", grading_and_associativity),
    ("corrupted constants reported", corrupted_constants_reported),
    ("projections idempotent", projections_idempotent),
    ("projection products", projection_products),
    ("evaluation linearity", evaluation_linear),
    ("normal form idempotence", normal_form_idempotent),
    ("echelon rank order-invariance", echelon_rank_order_invariant),
    ("evaluation rank order-invariance", evaluation_rank_order_invariant),
    ("multiplier axioms", multiplier_axioms),
];

fn dim_for(seed: u64) -> usize {
    1 + (seed % 4) as usize
}

pub fn grading_and_associativity(seed: u64) -> Check {
    let mut r = rng(seed);
    let a = random_algebra(&mut r, dim_for(seed));
    let bad = a.check_axioms();
    ensure!(bad.is_empty(), "axioms: {bad:?}");
    let grp = a.group().clone();
    let (g, h) = (r.gen_range(0..grp.order()), r.gen_range(0..grp.order()));
    let x = random_homogeneous(&mut r, &a, g);
    let y = random_homogeneous(&mut r, &a, h);
    let xy = a.multiply(&x, &y).unwrap();
    ensure!(
        xy.is_zero() || a.homogeneous_degree(&xy) == Some(grp.mul(g, h)),
        "degree of {xy} is not {g}*{h}"
    );
    let (p, q, s) = (random_element(&mut r, &a), random_element(&mut r, &a), random_element(&mut r, &a));
    let left = a.multiply(&a.multiply(&p, &q).unwrap(), &s).unwrap();
    let right = a.multiply(&p, &a.multiply(&q, &s).unwrap()).unwrap();
    ensure_eq!(left, right);
    if let Some(u) = a.unit() {
        ensure_eq!(a.multiply(u, &p).unwrap(), p);
        ensure_eq!(a.multiply(&p, u).unwrap(), p);
    }
    Ok(())
}

pub fn corrupted_constants_reported(seed: u64) -> Check {
    let mut r = rng(seed);
    let a = random_algebra(&mut r, 3);
    let mut entries = a.structure_entries();
    let (i, j) = (r.gen_range(0..3), r.gen_range(0..3));
    let k = r.gen_range(0..3);
    entries.push((i, j, k, int(r.gen_range(1..=3))));
    let broken = GradedAlgebra::unchecked(a.group().clone(), a.degrees().to_vec(), entries, None).unwrap();
    let report = broken.check_axioms();
    if a.group().mul(a.degree(i), a.degree(j)) != a.degree(k) {
        ensure!(!report.grading.is_empty(), "e{i} e{j} -> e{k} not flagged");
    }
    Ok(())
}

pub fn projections_idempotent(seed: u64) -> Check {
    let mut r = rng(seed);
    let a = random_algebra(&mut r, dim_for(seed));
    let x = random_element(&mut r, &a);
    let order = a.group().order();
    let mut sum = AlgebraElement::zero(a.dim());
    for h in 0..order {
        let ph = a.project(&x, h).unwrap();
        sum = sum.add(&ph);
        for k in 0..order {
            let pkh = a.project(&ph, k).unwrap();
            if k == h {
                ensure_eq!(pkh, ph);
            } else {
                ensure!(pkh.is_zero(), "pi_{k} pi_{h} x = {pkh}");
            }
        }
    }
    ensure_eq!(sum, x);
    Ok(())
}

pub fn projection_products(seed: u64) -> Check {
    let mut r = rng(seed);
    let a = random_algebra(&mut r, dim_for(seed));
    let grp = a.group().clone();
    let x = random_element(&mut r, &a);
    let y = random_element(&mut r, &a);
    let xy = a.multiply(&x, &y).unwrap();
    for k in 0..grp.order() {
        for h in 0..grp.order() {
            let kh = grp.mul(k, h);
            let prod = a
                .multiply(&a.project(&x, k).unwrap(), &a.project(&y, h).unwrap())
                .unwrap();
            ensure_eq!(a.project(&prod, kh).unwrap(), prod);
            // for mixed elements only the sum over pairs with product kh survives
            let mut total = AlgebraElement::zero(a.dim());
            for k2 in 0..grp.order() {
                for h2 in 0..grp.order() {
                    if grp.mul(k2, h2) == kh {
                        let part = a
                            .multiply(&a.project(&x, k2).unwrap(), &a.project(&y, h2).unwrap())
                            .unwrap();
                        total = total.add(&part);
                    }
                }
            }
            ensure_eq!(total, a.project(&xy, kh).unwrap());
        }
    }
    Ok(())
}

pub fn evaluation_linear(seed: u64) -> Check {
    let mut r = rng(seed);
    let b = *Builtin::ALL.choose(&mut r).unwrap();
    let def = b.definition();
    let (a, w) = (&def.algebra, &def.action);
    let vars = [Var::y(1), Var::y(2), Var::z(1)];
    let f = random_polynomial(&mut r, w, &vars, 3);
    let g = random_polynomial(&mut r, w, &vars, 3);
    let (s, t) = (random_scalar(&mut r), random_scalar(&mut r));
    let point: HashMap<Var, AlgebraElement> = vars
        .iter()
        .map(|&v| (v, random_homogeneous(&mut r, a, v.degree)))
        .collect();
    let combined = evaluate_at(&f.scale(&s).add(&g.scale(&t)), &point, a, w).unwrap();
    let separate = evaluate_at(&f, &point, a, w)
        .unwrap()
        .scale(&s)
        .add(&evaluate_at(&g, &point, a, w).unwrap().scale(&t));
    ensure_eq!(combined, separate);

    // multilinear monomials are linear in each variable
    let word: Vec<_> = random_word(&mut r, w, &vars, 0)
        .into_iter()
        .chain(random_word(&mut r, w, &[Var::y(1)], 1))
        .chain(random_word(&mut r, w, &[Var::z(1)], 1))
        .collect();
    let m = GenPolynomial::normalize(w, int(1), &word).unwrap();
    let u = random_homogeneous(&mut r, a, 0);
    let v = random_homogeneous(&mut r, a, 0);
    let at = |y: AlgebraElement| {
        let mut p = point.clone();
        p.insert(Var::y(1), y);
        evaluate_at(&m, &p, a, w).unwrap()
    };
    ensure_eq!(at(u.scale(&s).add(&v.scale(&t))), at(u).scale(&s).add(&at(v).scale(&t)));
    Ok(())
}

pub fn normal_form_idempotent(seed: u64) -> Check {
    let mut r = rng(seed);
    let b = *Builtin::ALL.choose(&mut r).unwrap();
    let def = b.definition();
    let w = &def.action;
    let vars = [Var::y(1), Var::y(2), Var::z(1), Var::z(2)];
    let f = random_polynomial(&mut r, w, &vars, 4);
    ensure_eq!(f.renormalize(w).unwrap(), f);
    for (m, c) in f.terms() {
        let again = GenPolynomial::normalize(w, c.clone(), &m.tokens()).unwrap();
        ensure_eq!(again, GenPolynomial::monomial(m.clone(), c.clone()));
    }
    let word = random_word(&mut r, w, &vars, 3);
    let once = GenPolynomial::normalize(w, int(1), &word).unwrap();
    ensure_eq!(once.renormalize(w).unwrap(), once);
    Ok(())
}

pub fn echelon_rank_order_invariant(seed: u64) -> Check {
    let mut r = rng(seed);
    let cols = r.gen_range(1..12);
    let rows: Vec<Vec<_>> = (0..r.gen_range(1..20))
        .map(|_| {
            (0..cols)
                .map(|_| if r.gen_bool(0.4) { random_scalar(&mut r) } else { int(0) })
                .collect()
        })
        .collect();
    let rank_of = |order: &[usize]| {
        let mut e = Echelon::new();
        for &i in order {
            if let Some(row) = row_from_rational(rows[i].iter().enumerate()) {
                e.insert(row).unwrap();
            }
        }
        e
    };
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let straight = rank_of(&order).rank();
    ensure_eq!(straight, gpilab_core::linalg::rank(&rows, cols));
    order.shuffle(&mut r);
    ensure_eq!(rank_of(&order).rank(), straight);
    let cut = r.gen_range(0..=order.len());
    let merged = rank_of(&order[..cut]).merge(rank_of(&order[cut..])).unwrap();
    ensure_eq!(merged.rank(), straight);
    Ok(())
}

pub fn evaluation_rank_order_invariant(seed: u64) -> Check {
    let mut r = rng(seed);
    let b = *Builtin::ALL.choose(&mut r).unwrap();
    let def = b.definition();
    let (a, w) = (&def.algebra, &def.action);
    let vars = [Var::y(1), Var::z(1)];
    let mut polys: Vec<GenPolynomial> = (0..r.gen_range(1..8))
        .map(|_| random_polynomial(&mut r, w, &vars, 2))
        .collect();
    let caps = Caps::default();
    let before = evaluation_rank(&polys, a, w, &caps).unwrap();
    polys.shuffle(&mut r);
    ensure_eq!(evaluation_rank(&polys, a, w, &caps).unwrap(), before);
    Ok(())
}

pub fn multiplier_axioms(seed: u64) -> Check {
    use gpilab_core::linalg::Matrix;
    use gpilab_core::multiplier::{grade_component, multiplier_algebra, Multiplier};

    let mut r = rng(seed);
    let dim = dim_for(seed);
    let a = random_algebra(&mut r, dim);
    let m = multiplier_algebra(&a)
        .iter()
        .fold(Multiplier::zero(dim), |acc, b| acc.add(&b.scale(&random_scalar(&mut r))));
    let x = random_element(&mut r, &a);
    let y = random_element(&mut r, &a);
    let apply = |mat: &Matrix, v: &AlgebraElement| AlgebraElement::new(mat.apply(&v.coords));
    let xy = a.multiply(&x, &y).unwrap();
    ensure_eq!(apply(&m.right, &xy), a.multiply(&x, &apply(&m.right, &y)).unwrap());
    ensure_eq!(apply(&m.left, &xy), a.multiply(&apply(&m.left, &x), &y).unwrap());
    ensure_eq!(
        a.multiply(&apply(&m.right, &x), &y).unwrap(),
        a.multiply(&x, &apply(&m.left, &y)).unwrap()
    );
    let sum = (0..a.group().order())
        .map(|g| grade_component(&a, &m, g).unwrap())
        .fold(Multiplier::zero(dim), |acc, part| acc.add(&part));
    ensure_eq!(sum, m);
    Ok(())
}
