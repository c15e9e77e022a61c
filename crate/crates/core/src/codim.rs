//! Codimensions `c_{n1,...,ns}` and `c_n` by exact streaming rank.
//!
//! A multilinear monomial evaluated on generic elements is linear in each
//! variable's `ξ`, so its image is a vector indexed by
//! `(k, j_1, ..., j_n)`: basis vector `a_k` of the result and one basis
//! choice per variable. The choice tuple is packed in mixed radix, giving
//! the column `k + dim A * sum_t c_t * radix_t`. Monomials sharing a border
//! prefix share the partial evaluation.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::echelon::{self, Echelon, SparseRow};
use crate::error::{Error, Result};
use crate::format;
use crate::free::{perm_unrank, Monomial, MultiDegree, SpanningSet, Var};
use crate::multiplier::ActingAlgebra;
use crate::scalar::Scalar;

pub const DEFAULT_MAX_ROWS: u64 = 50_000_000;
pub const DEFAULT_MAX_ECHELON_ROWS: usize = 2_000_000;

/// Resource caps. Exceeding either is a hard error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of spanning rows evaluated for one multidegree.
    pub max_rows: u64,
    /// Maximum number of rows stored in one echelon basis.
    pub max_echelon_rows: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_rows: DEFAULT_MAX_ROWS,
            max_echelon_rows: DEFAULT_MAX_ECHELON_ROWS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimResult {
    pub multidegree: MultiDegree,
    pub rank: u64,
    pub rows_processed: u64,
    pub algebra_hash: String,
}

/// Storage for computed multidegree codimensions.
pub trait CodimCache: Sync {
    fn get(&self, key: &str) -> Option<CodimResult>;
    fn put(&self, key: &str, value: &CodimResult) -> Result<()>;
}

pub fn cache_key(a: &GradedAlgebra, w: &ActingAlgebra, md: &MultiDegree) -> String {
    format::content_hash(a, w, &format!("codim:{md}"))
}

type SparseCols = Vec<Vec<(usize, Scalar)>>;

/// Evaluates multilinear monomials of one multidegree on generic elements.
pub struct MultilinearEvaluator<'a> {
    a: &'a GradedAlgebra,
    w: &'a ActingAlgebra,
    vars: Vec<Var>,
    /// basis indices of the generic element of each variable
    choices: Vec<Vec<usize>>,
    radix: Vec<usize>,
    /// `left[b][k]`: nonzero entries of `L_b(e_k)`
    left: Vec<SparseCols>,
    right: Vec<SparseCols>,
    columns: usize,
}

type State = BTreeMap<usize, Scalar>;

impl<'a> MultilinearEvaluator<'a> {
    pub fn new(a: &'a GradedAlgebra, w: &'a ActingAlgebra, md: &MultiDegree) -> Result<Self> {
        md.check_group(a.group())?;
        let vars = md.variables();
        let choices: Vec<Vec<usize>> = vars.iter().map(|v| a.basis_of_degree(v.degree)).collect();
        let mut radix = Vec::with_capacity(vars.len());
        let mut r: usize = 1;
        for c in &choices {
            radix.push(r);
            r = r.checked_mul(c.len().max(1)).ok_or(Error::Truncated {
                what: "evaluation columns",
                needed: u64::MAX,
                limit: usize::MAX as u64,
            })?;
        }
        let columns = r.checked_mul(a.dim().max(1)).ok_or(Error::Truncated {
            what: "evaluation columns",
            needed: u64::MAX,
            limit: usize::MAX as u64,
        })?;
        let left = w.basis().iter().map(|m| m.left.sparse_columns()).collect();
        let right = w.basis().iter().map(|m| m.right.sparse_columns()).collect();
        Ok(MultilinearEvaluator {
            a,
            w,
            vars,
            choices,
            radix,
            left,
            right,
            columns,
        })
    }

    /// Upper bound on the column indices produced.
    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn variables(&self) -> &[Var] {
        &self.vars
    }

    fn dim(&self) -> usize {
        self.a.dim().max(1)
    }

    fn start(&self, var: usize, b: usize) -> State {
        let mut s = State::new();
        for (ci, &j) in self.choices[var].iter().enumerate() {
            for (k, c) in &self.left[b][j] {
                add(&mut s, k + self.dim() * ci * self.radix[var], c.clone());
            }
        }
        s
    }

    fn apply_right(&self, s: &State, b: usize) -> State {
        let dim = self.dim();
        let mut out = State::new();
        for (col, c) in s {
            let (k, code) = (col % dim, col / dim);
            for (k2, r) in &self.right[b][k] {
                add(&mut out, k2 + dim * code, c * r);
            }
        }
        out
    }

    fn times_var(&self, s: &State, var: usize) -> State {
        let dim = self.dim();
        let mut out = State::new();
        for (col, c) in s {
            let (k, code) = (col % dim, col / dim);
            for (ci, &j) in self.choices[var].iter().enumerate() {
                for (k2, m) in self.a.basis_product(k, j) {
                    add(&mut out, k2 + dim * (code + ci * self.radix[var]), c * m);
                }
            }
        }
        out
    }

    /// The image of one multilinear monomial as a primitive integer row
    /// (`None` when it evaluates to zero). Letters must be exactly the
    /// variables of the multidegree.
    pub fn row(&self, m: &Monomial) -> Result<Option<SparseRow>> {
        let pos = |v: &Var| {
            self.vars
                .binary_search(v)
                .map_err(|_| Error::Precondition(format!("{v} is not a variable of this multidegree")))
        };
        if m.len() != self.vars.len() {
            return Err(Error::Precondition("monomial is not in this multidegree".into()));
        }
        let b = m.borders();
        let mut s = self.start(pos(&m.letters()[0])?, b[0]);
        for (x, &bi) in m.letters()[1..].iter().zip(&b[1..]) {
            s = self.times_var(&self.apply_right(&s, bi), pos(x)?);
        }
        let s = self.apply_right(&s, b[b.len() - 1]);
        Ok(echelon::row_from_rational(s.iter().map(|(c, v)| (*c, v))))
    }

    /// Feeds every row of the permutation `perm` (all border sequences) to
    /// `emit`, sharing partial evaluations between common border prefixes.
    pub fn rows_for_permutation(&self, perm: &[usize], emit: &mut dyn FnMut(SparseRow) -> Result<()>) -> Result<()> {
        let n = perm.len();
        if n == 0 {
            return Ok(());
        }
        for b0 in 0..self.w.dim() {
            let s = self.start(perm[0], b0);
            if !s.is_empty() {
                self.dfs(perm, 1, &s, emit)?;
            }
        }
        Ok(())
    }

    fn dfs(&self, perm: &[usize], t: usize, s: &State, emit: &mut dyn FnMut(SparseRow) -> Result<()>) -> Result<()> {
        for b in 0..self.w.dim() {
            let r = self.apply_right(s, b);
            if r.is_empty() {
                continue;
            }
            if t == perm.len() {
                if let Some(row) = echelon::row_from_rational(r.iter().map(|(c, v)| (*c, v))) {
                    emit(row)?;
                }
            } else {
                let next = self.times_var(&r, perm[t]);
                if !next.is_empty() {
                    self.dfs(perm, t + 1, &next, emit)?;
                }
            }
        }
        Ok(())
    }
}

fn add(s: &mut State, col: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match s.entry(col) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Deduplicating echelon used by every rank computation.
pub(crate) struct RowSink {
    seen: HashSet<SparseRow>,
    pub(crate) echelon: Echelon,
}

impl RowSink {
    pub(crate) fn new(caps: &Caps) -> Self {
        RowSink {
            seen: HashSet::new(),
            echelon: Echelon::with_limit(caps.max_echelon_rows),
        }
    }

    pub(crate) fn push(&mut self, row: SparseRow) -> Result<()> {
        if self.seen.contains(&row) {
            return Ok(());
        }
        self.echelon.insert(row.clone())?;
        self.seen.insert(row);
        Ok(())
    }
}

/// Rank of the evaluation images of the whole spanning set of `md`.
fn spanning_rank(a: &GradedAlgebra, w: &ActingAlgebra, md: &MultiDegree, caps: &Caps) -> Result<(u64, u64)> {
    let span = SpanningSet::new(w, md)?;
    let rows = span.len() as u64;
    if rows > caps.max_rows {
        return Err(Error::Truncated {
            what: "spanning rows",
            needed: rows,
            limit: caps.max_rows,
        });
    }
    let n = span.n();
    if n == 0 || a.dim() == 0 {
        return Ok((0, rows));
    }
    let ev = MultilinearEvaluator::new(a, w, md)?;
    let perms: usize = (1..=n).product();
    let chunk = perms.div_ceil(rayon::current_num_threads() * 4).max(1);
    let starts: Vec<usize> = (0..perms).step_by(chunk).collect();
    let merged = starts
        .into_par_iter()
        .map(|start| -> Result<Echelon> {
            let mut sink = RowSink::new(caps);
            for p in start..(start + chunk).min(perms) {
                let perm = perm_unrank(n, p);
                ev.rows_for_permutation(&perm, &mut |row| sink.push(row))?;
            }
            Ok(sink.echelon)
        })
        .try_reduce(Echelon::new, |x, y| x.merge(y))?;
    if merged.rank() > caps.max_echelon_rows {
        return Err(Error::Truncated {
            what: "stored echelon rows",
            needed: merged.rank() as u64,
            limit: caps.max_echelon_rows as u64,
        });
    }
    Ok((merged.rank() as u64, rows))
}

/// `c_md` for one multidegree.
pub fn codim_multidegree(
    a: &GradedAlgebra,
    w: &ActingAlgebra,
    md: &MultiDegree,
    caps: &Caps,
    cache: Option<&dyn CodimCache>,
) -> Result<CodimResult> {
    md.check_group(a.group())?;
    let key = cache_key(a, w, md);
    if let Some(c) = cache {
        if let Some(hit) = c.get(&key) {
            if &hit.multidegree == md {
                return Ok(hit);
            }
        }
    }
    let (rank, rows) = spanning_rank(a, w, md, caps)?;
    let result = CodimResult {
        multidegree: md.clone(),
        rank,
        rows_processed: rows,
        algebra_hash: format::content_hash(a, w, ""),
    };
    if let Some(c) = cache {
        c.put(&key, &result)?;
    }
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimTotal {
    pub n: usize,
    #[serde(serialize_with = "crate::scalar::bigint_text::serialize")]
    pub total: BigInt,
    pub parts: Vec<CodimPart>,
}

/// One multidegree with its multinomial weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimPart {
    pub result: CodimResult,
    #[serde(serialize_with = "crate::scalar::bigint_text::serialize")]
    pub weight: BigInt,
}

/// `c_n = sum_md multinomial(n; md) c_md`.
pub fn codim_total(
    a: &GradedAlgebra,
    w: &ActingAlgebra,
    n: usize,
    caps: &Caps,
    cache: Option<&dyn CodimCache>,
) -> Result<CodimTotal> {
    let mut total = BigInt::zero();
    let mut parts = Vec::new();
    for md in MultiDegree::compositions(n, a.group().order()) {
        let r = codim_multidegree(a, w, &md, caps, cache)?;
        let weight = md.multinomial();
        total += &weight * BigInt::from(r.rank);
        parts.push(CodimPart { result: r, weight });
    }
    Ok(CodimTotal { n, total, parts })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum SeriesValue {
    Value {
        #[serde(serialize_with = "crate::scalar::bigint_text::serialize")]
        codim: BigInt,
    },
    Truncated { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesEntry {
    pub n: usize,
    pub value: SeriesValue,
    /// `c_n / c_{n-1}` as `"p/q"`, when both are known and `c_{n-1} != 0`.
    pub ratio: Option<String>,
    /// `c_n^{1/n}`.
    pub root: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodimSeries {
    pub entries: Vec<SeriesEntry>,
}

impl CodimSeries {
    /// Known values in order, stopping at the first truncated entry.
    pub fn values(&self) -> Vec<BigInt> {
        self.entries
            .iter()
            .map_while(|e| match &e.value {
                SeriesValue::Value { codim } => Some(codim.clone()),
                SeriesValue::Truncated { .. } => None,
            })
            .collect()
    }
}

/// `c_1, ..., c_{n_max}` with ratios and n-th roots. Truncation is recorded
/// per entry.
pub fn codim_series(
    a: &GradedAlgebra,
    w: &ActingAlgebra,
    n_max: usize,
    caps: &Caps,
    cache: Option<&dyn CodimCache>,
) -> Result<CodimSeries> {
    let mut entries: Vec<SeriesEntry> = Vec::new();
    for n in 1..=n_max {
        let value = match codim_total(a, w, n, caps, cache) {
            Ok(t) => SeriesValue::Value { codim: t.total },
            Err(e) if e.is_truncation() => SeriesValue::Truncated { reason: e.to_string() },
            Err(e) => return Err(e),
        };
        let (ratio, root) = match &value {
            SeriesValue::Value { codim } => {
                let prev = entries.last().and_then(|p| match &p.value {
                    SeriesValue::Value { codim } if !codim.is_zero() => Some(codim.clone()),
                    _ => None,
                });
                let ratio = prev.map(|p| {
                    crate::scalar::to_canonical(&Scalar::new(codim.clone(), p))
                });
                let root = codim.to_f64().map(|c| c.powf(1.0 / n as f64));
                (ratio, root)
            }
            SeriesValue::Truncated { .. } => (None, None),
        };
        entries.push(SeriesEntry { n, value, ratio, root });
    }
    Ok(CodimSeries { entries })
}

/// Rank of the generic evaluations of arbitrary (not necessarily
/// multilinear) polynomials. Columns are `(k, ξ-monomial)` pairs assigned in
/// first-seen order.
pub fn evaluation_rank(
    polys: &[crate::free::GenPolynomial],
    a: &GradedAlgebra,
    w: &ActingAlgebra,
    caps: &Caps,
) -> Result<usize> {
    use crate::eval::{evaluate, generic_element};
    use std::collections::HashMap;
    let mut generic = HashMap::new();
    for f in polys {
        for v in f.variables() {
            generic.entry(v).or_insert_with(|| generic_element(a, v));
        }
    }
    let images = polys
        .par_iter()
        .map(|f| evaluate(f, &generic, a, w))
        .collect::<Result<Vec<_>>>()?;
    let mut columns: HashMap<(usize, crate::eval::XiMonomial), usize> = HashMap::new();
    let mut sink = RowSink::new(caps);
    for img in &images {
        let mut entries = Vec::new();
        for (k, p) in img.coords.iter().enumerate() {
            for (m, c) in p.terms() {
                let next = columns.len();
                let col = *columns.entry((k, m.clone())).or_insert(next);
                entries.push((col, c));
            }
        }
        if let Some(row) = echelon::row_from_rational(entries) {
            sink.push(row)?;
        }
    }
    Ok(sink.echelon.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{self, Builtin};

    fn md(c: &[usize]) -> MultiDegree {
        MultiDegree::new(c.to_vec())
    }

    #[test]
    fn small_cases_by_hand() {
        let caps = Caps::default();
        let expect = [
            (Builtin::Full, [1, 0], 4),
            (Builtin::Full, [0, 1], 1),
            (Builtin::D, [1, 0], 2),
            (Builtin::D, [0, 1], 1),
            (Builtin::C, [1, 0], 3),
            (Builtin::F, [1, 0], 1),
            (Builtin::F, [0, 1], 1),
            (Builtin::F, [0, 2], 0),
        ];
        for (b, m, v) in expect {
            let def = b.definition();
            let r = codim_multidegree(&def.algebra, &def.action, &md(&m), &caps, None).unwrap();
            assert_eq!(r.rank, v, "{b} {m:?}");
        }
    }

    #[test]
    fn fast_path_matches_generic_evaluation() {
        let caps = Caps::default();
        for b in Builtin::ALL {
            let def = b.definition();
            let (a, w) = (&def.algebra, &def.action);
            for m in [[2, 0], [1, 1], [0, 2]] {
                let m = md(&m);
                let polys: Vec<_> = SpanningSet::new(w, &m)
                    .unwrap()
                    .iter()
                    .map(|mono| crate::free::GenPolynomial::monomial(mono, crate::scalar::int(1)))
                    .collect();
                let slow = evaluation_rank(&polys, a, w, &caps).unwrap() as u64;
                let fast = codim_multidegree(a, w, &m, &caps, None).unwrap().rank;
                assert_eq!(slow, fast, "{b} {m}");
            }
        }
    }

    #[test]
    fn caps_are_hard_errors() {
        let def = Builtin::Full.definition();
        let caps = Caps {
            max_rows: 10,
            ..Caps::default()
        };
        let err = codim_multidegree(&def.algebra, &def.action, &md(&[2, 0]), &caps, None).unwrap_err();
        assert!(err.is_truncation());
        let caps = Caps {
            max_echelon_rows: 2,
            ..Caps::default()
        };
        let err = codim_multidegree(&def.algebra, &def.action, &md(&[2, 0]), &caps, None).unwrap_err();
        assert!(err.is_truncation());
    }

    #[test]
    fn zero_algebra_series() {
        let a = builtins::zero_algebra();
        let w = ActingAlgebra::scalar(&a);
        let s = codim_series(&a, &w, 3, &Caps::default(), None).unwrap();
        assert!(s.values().iter().all(Zero::is_zero));
        assert_eq!(s.values().len(), 3);
    }

    #[test]
    fn series_ratios() {
        let def = Builtin::F.definition();
        let s = codim_series(&def.algebra, &def.action, 3, &Caps::default(), None).unwrap();
        assert_eq!(s.values(), vec![BigInt::from(2), BigInt::from(5), BigInt::from(13)]);
        assert_eq!(s.entries[1].ratio.as_deref(), Some("5/2"));
        assert_eq!(s.entries[0].ratio, None);
    }
}
