//! Multilinear consequences of generator sets and fixed-degree checks of
//! T-ideal bases.
//!
//! Every consequence in `P_md` of a multilinear generator `g(u_1..u_k)` is a
//! combination of `L g(m_1, ..., m_k) R` where the `m_i` are bordered
//! monomials of the degree of `u_i`, `L` is a bordered monomial or a single
//! border acting on the left, `R` likewise on the right, and together they
//! use every variable of `md` exactly once.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::codim::{codim_multidegree, Caps, CodimCache, MultilinearEvaluator, RowSink};
use crate::echelon::{self, Echelon, SparseRow};
use crate::error::{Error, Result};
use crate::eval::is_identity;
use crate::free::{perm_unrank, GenPolynomial, Monomial, MultiDegree, SpanningSet, Var};
use crate::linalg;
use crate::multiplier::ActingAlgebra;
use crate::scalar::Scalar;

/// Named multilinear generators.
#[derive(Clone, Debug, Default)]
pub struct GeneratorSet {
    pub generators: Vec<(String, GenPolynomial)>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<(String, GenPolynomial)>) -> Self {
        GeneratorSet { generators }
    }

    pub fn without(&self, index: usize) -> Self {
        let mut g = self.generators.clone();
        g.remove(index);
        GeneratorSet { generators: g }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Span of the consequences inside `P_md`, in spanning-set coordinates.
#[derive(Clone, Debug)]
pub struct ConsequenceSpace {
    pub multidegree: MultiDegree,
    pub span_size: usize,
    pub echelon: Echelon,
    pub candidates: u64,
    /// False when enumeration stopped early because a target rank was hit.
    pub complete: bool,
}

impl ConsequenceSpace {
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, w: &ActingAlgebra, f: &GenPolynomial) -> Result<bool> {
        let span = SpanningSet::new(w, &self.multidegree)?;
        Ok(match poly_row(&span, f)? {
            None => true,
            Some(row) => self.echelon.contains(&row),
        })
    }
}

fn poly_row(span: &SpanningSet, f: &GenPolynomial) -> Result<Option<SparseRow>> {
    let mut entries = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        let idx = span
            .index_of(m)
            .ok_or_else(|| Error::Precondition(format!("{m} is not a basis monomial of this multidegree")))?;
        entries.push((idx, c));
    }
    Ok(echelon::row_from_rational(entries))
}

/// Shapes `(a, s_1, ..., s_k, c)` summing to `total` with every `s_i >= 1`.
fn shapes(total: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slot: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slot == k + 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        // inner slots still to fill after this one, each needing a letter
        let needed = if slot == 0 { k } else { k - slot };
        let min = usize::from(slot != 0);
        for v in min..=left.saturating_sub(needed) {
            cur.push(v);
            rec(left - v, slot + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= k {
        rec(total, 0, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All bordered monomials on `letters` (in this order) of group degree `deg`.
fn bordered(w: &ActingAlgebra, letters: &[Var], deg: Option<usize>) -> Vec<Monomial> {
    let d = w.dim();
    let count = d.pow(letters.len() as u32 + 1);
    (0..count)
        .filter_map(|mut code| {
            let mut borders = vec![0; letters.len() + 1];
            for b in borders.iter_mut().rev() {
                *b = code % d;
                code /= d;
            }
            let m = Monomial::new_unchecked(borders, letters.to_vec());
            match deg {
                Some(g) if m.degree(w) != g => None,
                _ => Some(m),
            }
        })
        .collect()
}

fn candidate_bound(gens: &GeneratorSet, md: &MultiDegree, w: &ActingAlgebra) -> u64 {
    let n = md.n();
    let fact: u64 = (1..=n as u64).product();
    let mut total: u64 = 0;
    for (_, g) in &gens.generators {
        let k = g.variables().len();
        if k == 0 || k > n {
            continue;
        }
        let per = (w.dim() as u64).saturating_pow((n + k + 2) as u32);
        total = total.saturating_add(per.saturating_mul(fact).saturating_mul(shapes(n, k).len() as u64));
    }
    total
}

/// Echelon basis of the consequences of `gens` inside `P_md`. With
/// `stop_at`, enumeration ends as soon as the rank reaches that value.
pub fn consequences_in_multidegree(
    gens: &GeneratorSet,
    md: &MultiDegree,
    w: &ActingAlgebra,
    caps: &Caps,
    stop_at: Option<usize>,
) -> Result<ConsequenceSpace> {
    let span = SpanningSet::new(w, md)?;
    let bound = candidate_bound(gens, md, w);
    if bound > caps.max_rows {
        return Err(Error::Truncated {
            what: "consequence candidates",
            needed: bound,
            limit: caps.max_rows,
        });
    }
    for (name, g) in &gens.generators {
        if !g.is_multilinear() {
            return Err(Error::Precondition(format!("generator {name} is not multilinear")));
        }
        if g.homogeneous_degree(w).is_none() && !g.is_zero() {
            return Err(Error::Precondition(format!("generator {name} is not homogeneous")));
        }
    }
    let vars = md.variables();
    let n = vars.len();
    let perms: usize = (1..=n).product();
    let mut tasks = Vec::new();
    for (gi, (_, g)) in gens.generators.iter().enumerate() {
        let k = g.variables().len();
        if g.is_zero() || k == 0 || k > n {
            continue;
        }
        for shape in shapes(n, k) {
            for p in 0..perms {
                tasks.push((gi, shape.clone(), p));
            }
        }
    }
    let done = AtomicBool::new(false);
    let candidates = AtomicU64::new(0);
    let merged = tasks
        .into_par_iter()
        .map(|(gi, shape, p)| -> Result<Echelon> {
            let mut sink = RowSink::new(caps);
            if done.load(Ordering::Relaxed) {
                return Ok(sink.echelon);
            }
            let g = &gens.generators[gi].1;
            let order: Vec<Var> = perm_unrank(n, p).into_iter().map(|i| vars[i]).collect();
            let gvars: Vec<Var> = g.variables().into_iter().collect();
            let k = gvars.len();
            let mut pos = shape[0];
            let mut options = Vec::with_capacity(k);
            for (i, u) in gvars.iter().enumerate() {
                let letters = &order[pos..pos + shape[i + 1]];
                pos += shape[i + 1];
                let ms = bordered(w, letters, Some(u.degree));
                if ms.is_empty() {
                    return Ok(sink.echelon);
                }
                options.push(ms);
            }
            let left_letters = &order[..shape[0]];
            let right_letters = &order[pos..];
            let lefts = bordered(w, left_letters, None);
            let rights = bordered(w, right_letters, None);
            let mut idx = vec![0usize; k];
            loop {
                let assign: HashMap<Var, GenPolynomial> = gvars
                    .iter()
                    .zip(&idx)
                    .enumerate()
                    .map(|(i, (u, &j))| (*u, GenPolynomial::monomial(options[i][j].clone(), Scalar::one())))
                    .collect();
                let h = g.substitute(w, &assign)?;
                if !h.is_zero() {
                    for l in &lefts {
                        let hl = if l.is_empty() {
                            h.left_act(w, l.borders()[0])
                        } else {
                            GenPolynomial::monomial(l.clone(), Scalar::one()).mul(w, &h)
                        };
                        if hl.is_zero() {
                            continue;
                        }
                        for r in &rights {
                            let f = if r.is_empty() {
                                hl.right_act(w, r.borders()[0])
                            } else {
                                hl.mul(w, &GenPolynomial::monomial(r.clone(), Scalar::one()))
                            };
                            candidates.fetch_add(1, Ordering::Relaxed);
                            if let Some(row) = poly_row(&span, &f)? {
                                sink.push(row)?;
                                if stop_at.is_some_and(|t| sink.echelon.rank() >= t) {
                                    done.store(true, Ordering::Relaxed);
                                    return Ok(sink.echelon);
                                }
                            }
                        }
                    }
                }
                if done.load(Ordering::Relaxed) {
                    break;
                }
                let mut t = k;
                loop {
                    if t == 0 {
                        return Ok(sink.echelon);
                    }
                    t -= 1;
                    idx[t] += 1;
                    if idx[t] < options[t].len() {
                        break;
                    }
                    idx[t] = 0;
                }
            }
            Ok(sink.echelon)
        })
        .try_reduce(Echelon::new, |x, y| x.merge(y))?;
    let complete = !done.load(Ordering::Relaxed);
    Ok(ConsequenceSpace {
        multidegree: md.clone(),
        span_size: span.len(),
        echelon: merged,
        candidates: candidates.load(Ordering::Relaxed),
        complete,
    })
}

/// Basis of the kernel of the evaluation map on `P_md`, as coefficient
/// vectors over the spanning set.
pub fn evaluation_kernel(a: &GradedAlgebra, w: &ActingAlgebra, md: &MultiDegree) -> Result<Vec<Vec<Scalar>>> {
    let span = SpanningSet::new(w, md)?;
    let ev = MultilinearEvaluator::new(a, w, md)?;
    let mut col_index: HashMap<usize, usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, BigInt)> = Vec::new();
    for (i, m) in span.iter().enumerate() {
        if let Some(row) = ev.row(&m)? {
            for (c, v) in row {
                let next = col_index.len();
                let r = *col_index.entry(c).or_insert(next);
                entries.push((r, i, v));
            }
        }
    }
    let mut rows = vec![vec![Scalar::from_integer(BigInt::from(0)); span.len()]; col_index.len()];
    for (r, i, v) in entries {
        rows[r][i] = Scalar::from_integer(v);
    }
    Ok(linalg::rref(&rows, span.len()).nullspace())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiDegreeReport {
    pub multidegree: MultiDegree,
    /// `|P_md| = dimW^{n+1} n!`.
    pub span_size: usize,
    pub codim: Option<u64>,
    pub consequences: Option<usize>,
    pub status: Status,
    /// For FAIL: a kernel element outside the consequence span.
    pub witness: Option<String>,
    /// For TRUNCATED: the cap that was hit.
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub n: usize,
    pub status: Status,
    pub entries: Vec<MultiDegreeReport>,
}

/// Fixed-degree check that `gens` generate all multilinear identities of
/// degree `n`: for each multidegree, PASS iff the consequence span has
/// dimension `|P_md| - c_md`.
pub fn verify_basis(
    gens: &GeneratorSet,
    a: &GradedAlgebra,
    w: &ActingAlgebra,
    n: usize,
    caps: &Caps,
    cache: Option<&dyn CodimCache>,
) -> Result<BasisReport> {
    for (name, g) in &gens.generators {
        if !is_identity(g, a, w)?.identity {
            return Err(Error::Precondition(format!("generator {name} is not an identity of the algebra")));
        }
    }
    let mut entries = Vec::new();
    for md in MultiDegree::compositions(n, a.group().order()) {
        entries.push(verify_multidegree(gens, a, w, &md, caps, cache)?);
    }
    let status = if entries.iter().any(|e| e.status == Status::Fail) {
        Status::Fail
    } else if entries.iter().any(|e| e.status == Status::Truncated) {
        Status::Truncated
    } else {
        Status::Pass
    };
    Ok(BasisReport { n, status, entries })
}

fn verify_multidegree(
    gens: &GeneratorSet,
    a: &GradedAlgebra,
    w: &ActingAlgebra,
    md: &MultiDegree,
    caps: &Caps,
    cache: Option<&dyn CodimCache>,
) -> Result<MultiDegreeReport> {
    let span = SpanningSet::new(w, md)?;
    let mut report = MultiDegreeReport {
        multidegree: md.clone(),
        span_size: span.len(),
        codim: None,
        consequences: None,
        status: Status::Truncated,
        witness: None,
        note: None,
    };
    let codim = match codim_multidegree(a, w, md, caps, cache) {
        Ok(r) => r.rank,
        Err(e) if e.is_truncation() => {
            report.note = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.codim = Some(codim);
    let kernel_dim = span.len() - codim as usize;
    let cons = match consequences_in_multidegree(gens, md, w, caps, Some(kernel_dim)) {
        Ok(c) => c,
        Err(e) if e.is_truncation() => {
            report.note = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.consequences = Some(cons.dim());
    if cons.dim() == kernel_dim {
        report.status = Status::Pass;
        return Ok(report);
    }
    report.status = Status::Fail;
    for v in evaluation_kernel(a, w, md)? {
        let row = echelon::row_from_rational(v.iter().enumerate()).expect("kernel vectors are nonzero");
        if !cons.echelon.contains(&row) {
            let mut f = GenPolynomial::zero();
            for (i, c) in v.iter().enumerate() {
                f.add_term(span.monomial(i), c.clone());
            }
            report.witness = Some(f.to_string());
            break;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoncontainmentReport {
    pub identity_first: bool,
    pub identity_second: bool,
    /// True iff `f` is an identity under exactly one of the two actions.
    pub separates: bool,
}

/// Evaluates the same polynomial, written in each action's basis, under two
/// actions on `a`.
pub fn noncontainment_witness(
    a: &GradedAlgebra,
    first: (&ActingAlgebra, &GenPolynomial),
    second: (&ActingAlgebra, &GenPolynomial),
) -> Result<NoncontainmentReport> {
    let one = is_identity(first.1, a, first.0)?.identity;
    let two = is_identity(second.1, a, second.0)?.identity;
    Ok(NoncontainmentReport {
        identity_first: one,
        identity_second: two,
        separates: one != two,
    })
}

/// Sum of `|P_md|` over all multidegrees of total degree `n`.
pub fn span_total(w: &ActingAlgebra, n: usize) -> Result<BigInt> {
    let mut total = BigInt::from(0);
    for md in MultiDegree::compositions(n, w.group().order()) {
        total += SpanningSet::new(w, &md)?.len();
    }
    Ok(total)
}
