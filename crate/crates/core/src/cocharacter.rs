//! Partitions, hook-length dimensions and cocharacter multiplicities.
//!
//! For a multidegree `(n_1, ..., n_s)` and shapes `λ_g ⊢ n_g`, the
//! multiplicity of `χ_{λ_1} ⊗ ... ⊗ χ_{λ_s}` is the rank of the generic
//! evaluations of the highest weight vectors built from one fixed
//! column-major tableau per block: alternate the letters sharing a column,
//! then identify the letters sharing a row.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::codim::{codim_multidegree, evaluation_rank, Caps, CodimCache};
use crate::error::{Error, Result};
use crate::free::{factorial, perm_unrank, GenPolynomial, Monomial, MultiDegree, SpanningSet, Var};
use crate::multiplier::ActingAlgebra;
use crate::scalar::Scalar;

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Precondition("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Precondition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.parts.len()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..width).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect(),
        }
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.weight());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                out.push(row - j + conj.parts[j] - i - 1);
            }
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// `3+2+1`; the empty partition prints as `∅`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&s.join("+"))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(['+', ','])
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `r`, lexicographically decreasing.
pub fn partitions_of(r: usize) -> Vec<Partition> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, r, &mut Vec::new(), &mut out);
    out
}

/// `d_λ = r! / Π hooks`.
pub fn irrep_dimension(lambda: &Partition) -> BigInt {
    let hooks: BigInt = lambda.hooks().into_iter().map(BigInt::from).product();
    factorial(lambda.weight()) / hooks
}

/// Number of standard tableaux of shape `λ`, by removing the largest entry
/// from every corner in turn.
pub fn standard_tableaux_count(lambda: &Partition) -> u64 {
    fn rec(parts: &mut Vec<usize>, memo: &mut HashMap<Vec<usize>, u64>) -> u64 {
        if parts.iter().all(|&p| p == 0) {
            return 1;
        }
        if let Some(&v) = memo.get(parts.as_slice()) {
            return v;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let corner = parts[i] > 0 && (i + 1 == parts.len() || parts[i + 1] < parts[i]);
            if corner {
                parts[i] -= 1;
                total += rec(parts, memo);
                parts[i] += 1;
            }
        }
        memo.insert(parts.clone(), total);
        total
    }
    rec(&mut lambda.parts.clone(), &mut HashMap::new())
}

/// Column-major fillings of one shape per degree block: block `g` uses the
/// letters `x_1^g, ..., x_{n_g}^g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableauPair {
    /// `tableaux[g][row]` lists the letter indices in that row.
    pub tableaux: Vec<Vec<Vec<usize>>>,
}

impl TableauPair {
    pub fn canonical(shapes: &[Partition]) -> Self {
        let tableaux = shapes
            .iter()
            .map(|lambda| {
                let mut rows: Vec<Vec<usize>> = lambda.parts.iter().map(|&p| Vec::with_capacity(p)).collect();
                let mut next = 1;
                for col_len in lambda.conjugate().parts {
                    for row in rows.iter_mut().take(col_len) {
                        row.push(next);
                        next += 1;
                    }
                }
                rows
            })
            .collect();
        TableauPair { tableaux }
    }

    /// Letter indices per column, per block.
    pub fn columns(&self) -> Vec<Vec<Vec<usize>>> {
        self.tableaux
            .iter()
            .map(|rows| {
                let width = rows.first().map_or(0, Vec::len);
                (0..width)
                    .map(|j| rows.iter().filter_map(|r| r.get(j).copied()).collect())
                    .collect()
            })
            .collect()
    }

    /// `letter -> row` for each block.
    fn rows_of(&self) -> HashMap<Var, Var> {
        let mut out = HashMap::new();
        for (g, rows) in self.tableaux.iter().enumerate() {
            for (r, row) in rows.iter().enumerate() {
                for &i in row {
                    out.insert(Var::new(g, i), Var::new(g, r + 1));
                }
            }
        }
        out
    }
}

fn signed_permutations(items: &[usize]) -> Vec<(Vec<usize>, bool)> {
    if items.len() <= 1 {
        return vec![(items.to_vec(), false)];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for (mut p, odd) in signed_permutations(&rest) {
            p.insert(0, first);
            out.push((p, odd ^ (i % 2 == 1)));
        }
    }
    out
}

/// The column group of the tableau pair as letter substitutions with signs.
fn column_group(t: &TableauPair) -> Vec<(HashMap<Var, Var>, bool)> {
    let mut group: Vec<(HashMap<Var, Var>, bool)> = vec![(HashMap::new(), false)];
    for (g, cols) in t.columns().iter().enumerate() {
        for col in cols {
            if col.len() < 2 {
                continue;
            }
            let perms = signed_permutations(col);
            let mut next = Vec::with_capacity(group.len() * perms.len());
            for (map, sign) in &group {
                for (p, odd) in &perms {
                    let mut m = map.clone();
                    for (&from, &to) in col.iter().zip(p) {
                        m.insert(Var::new(g, from), Var::new(g, to));
                    }
                    next.push((m, sign ^ odd));
                }
            }
            group = next;
        }
    }
    group
}

/// Divides by the content and makes the leading coefficient positive.
fn primitive(f: &GenPolynomial) -> GenPolynomial {
    let mut g = BigInt::zero();
    for (_, c) in f.terms() {
        g = g.gcd(c.numer());
    }
    let lead_negative = f.terms().next().is_some_and(|(_, c)| c.is_negative());
    if lead_negative {
        g = -g;
    }
    if g.is_zero() || g.is_one() {
        return f.clone();
    }
    f.scale(&Scalar::from_integer(g).recip())
}

fn height_guard(shapes: &[Partition], a: &GradedAlgebra) -> bool {
    shapes
        .iter()
        .enumerate()
        .all(|(g, lambda)| lambda.height() <= a.basis_of_degree(g).len())
}

fn check_shapes(shapes: &[Partition], a: &GradedAlgebra) -> Result<MultiDegree> {
    let s = a.group().order();
    if shapes.len() != s {
        return Err(Error::DimensionMismatch {
            expected: s,
            found: shapes.len(),
        });
    }
    Ok(MultiDegree::new(shapes.iter().map(Partition::weight).collect()))
}

/// Highest weight vectors for one shape per degree block, deduplicated up to
/// scalars, in a fixed order. Empty when some `h(λ_g)` exceeds `dim A_g`.
pub fn highest_weight_vectors(shapes: &[Partition], a: &GradedAlgebra, w: &ActingAlgebra) -> Result<Vec<GenPolynomial>> {
    let md = check_shapes(shapes, a)?;
    if md.n() == 0 || !height_guard(shapes, a) {
        return Ok(Vec::new());
    }
    let span = SpanningSet::new(w, &md)?;
    let vars = span.variables().to_vec();
    let tableau = TableauPair::canonical(shapes);
    let rows = tableau.rows_of();
    // letter position -> identified variable, one table per column permutation
    let images: Vec<(Vec<Var>, bool)> = column_group(&tableau)
        .into_iter()
        .map(|(map, odd)| (vars.iter().map(|x| rows[map.get(x).unwrap_or(x)]).collect(), odd))
        .collect();
    let n = md.n();
    let perms: usize = (1..=n).product();
    // borders pass through untouched, so only the letter part depends on the seed
    let combos: HashSet<Vec<(Vec<Var>, i64)>> = (0..perms)
        .into_par_iter()
        .filter_map(|p| {
            let order = perm_unrank(n, p);
            let mut terms: BTreeMap<Vec<Var>, i64> = BTreeMap::new();
            for (image, odd) in &images {
                let word: Vec<Var> = order.iter().map(|&i| image[i]).collect();
                *terms.entry(word).or_insert(0) += if *odd { -1 } else { 1 };
            }
            terms.retain(|_, c| *c != 0);
            let g = terms.values().fold(0i64, |g, c| g.gcd(c));
            let first = *terms.values().next()?;
            let g = if first < 0 { -g } else { g };
            Some(terms.into_iter().map(|(k, c)| (k, c / g)).collect())
        })
        .collect();
    let mut combos: Vec<_> = combos.into_iter().collect();
    combos.sort();
    let border_count = span.border_count();
    let dim_w = w.dim();
    let out = (0..combos.len() * border_count)
        .into_par_iter()
        .map(|idx| {
            let combo = &combos[idx / border_count];
            let mut code = idx % border_count;
            let mut borders = vec![0; n + 1];
            for b in borders.iter_mut().rev() {
                *b = code % dim_w;
                code /= dim_w;
            }
            let mut f = GenPolynomial::zero();
            for (word, c) in combo {
                f.add_term(Monomial::new_unchecked(borders.clone(), word.clone()), Scalar::from_integer(BigInt::from(*c)));
            }
            primitive(&f)
        })
        .collect();
    Ok(out)
}

/// `m_{λ_1,...,λ_s}`: rank of the generic evaluations of the highest weight
/// vectors.
pub fn multiplicity(shapes: &[Partition], a: &GradedAlgebra, w: &ActingAlgebra, caps: &Caps) -> Result<usize> {
    let hwv = highest_weight_vectors(shapes, a, w)?;
    if hwv.len() as u64 > caps.max_rows {
        return Err(Error::Truncated {
            what: "highest weight vectors",
            needed: hwv.len() as u64,
            limit: caps.max_rows,
        });
    }
    evaluation_rank(&hwv, a, w, caps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocharacterEntry {
    pub multidegree: MultiDegree,
    pub shapes: Vec<Partition>,
    pub multiplicity: usize,
    #[serde(serialize_with = "crate::scalar::bigint_text::serialize_vec")]
    pub dims: Vec<BigInt>,
    /// `m · Π d_λ`.
    #[serde(serialize_with = "crate::scalar::bigint_text::serialize")]
    pub contribution: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyCheck {
    pub multidegree: MultiDegree,
    #[serde(serialize_with = "crate::scalar::bigint_text::serialize")]
    pub sum: BigInt,
    pub codim: u64,
    pub consistent: bool,
}

/// Nonzero multiplicities for every multidegree of total degree `n`, with
/// the check `Σ m Π d_λ = c_md` for each multidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityTable {
    pub n: usize,
    pub entries: Vec<CocharacterEntry>,
    pub checks: Vec<ConsistencyCheck>,
}

impl MultiplicityTable {
    pub fn get(&self, shapes: &[Partition]) -> usize {
        self.entries
            .iter()
            .find(|e| e.shapes == shapes)
            .map_or(0, |e| e.multiplicity)
    }

    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.consistent)
    }
}

fn shape_tuples(md: &MultiDegree) -> Vec<Vec<Partition>> {
    let mut out = vec![Vec::new()];
    for &c in &md.counts {
        let parts = partitions_of(c);
        out = out
            .into_iter()
            .flat_map(|t| {
                parts.iter().map(move |p| {
                    let mut t = t.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Nonzero multiplicities of one multidegree and its consistency check.
pub fn cocharacter_multidegree(
    a: &GradedAlgebra,
    w: &ActingAlgebra,
    md: &MultiDegree,
    caps: &Caps,
    cache: Option<&dyn CodimCache>,
) -> Result<(Vec<CocharacterEntry>, ConsistencyCheck)> {
    md.check_group(a.group())?;
    let mut entries = Vec::new();
    let mut sum = BigInt::zero();
    for shapes in shape_tuples(md) {
        let m = multiplicity(&shapes, a, w, caps)?;
        if m == 0 {
            continue;
        }
        let dims: Vec<BigInt> = shapes.iter().map(irrep_dimension).collect();
        let contribution = dims.iter().fold(BigInt::from(m), |acc, d| acc * d);
        sum += &contribution;
        entries.push(CocharacterEntry {
            multidegree: md.clone(),
            shapes,
            multiplicity: m,
            dims,
            contribution,
        });
    }
    let codim = codim_multidegree(a, w, md, caps, cache)?.rank;
    let check = ConsistencyCheck {
        consistent: sum == BigInt::from(codim),
        multidegree: md.clone(),
        sum,
        codim,
    };
    Ok((entries, check))
}

pub fn cocharacter_table(
    a: &GradedAlgebra,
    w: &ActingAlgebra,
    n: usize,
    caps: &Caps,
    cache: Option<&dyn CodimCache>,
) -> Result<MultiplicityTable> {
    let mut entries = Vec::new();
    let mut checks = Vec::new();
    for md in MultiDegree::compositions(n, a.group().order()) {
        let (e, c) = cocharacter_multidegree(a, w, &md, caps, cache)?;
        entries.extend(e);
        checks.push(c);
    }
    Ok(MultiplicityTable { n, entries, checks })
}

/// `Σ_{p≥1, q≥0, 2p+q=n} (q+1) d_{(p+q,p)}`.
pub fn two_row_weighted_sum(n: usize) -> BigInt {
    let mut total = BigInt::zero();
    for p in 1..=n / 2 {
        let q = n - 2 * p;
        let lambda = Partition { parts: vec![p + q, p] };
        total += BigInt::from(q + 1) * irrep_dimension(&lambda);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::Builtin;
    use crate::eval::is_identity;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partitions() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        let counts: Vec<usize> = (0..=8).map(|r| partitions_of(r).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!("3+2".parse::<Partition>().unwrap(), p(&[3, 2]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn hook_formula_matches_tableaux_count() {
        assert_eq!(irrep_dimension(&p(&[4])), BigInt::one());
        assert_eq!(irrep_dimension(&p(&[2, 1])), BigInt::from(2));
        for r in 0..=6 {
            let mut squares = BigInt::zero();
            for lambda in partitions_of(r) {
                let d = irrep_dimension(&lambda);
                assert_eq!(d, BigInt::from(standard_tableaux_count(&lambda)), "{lambda}");
                squares += &d * &d;
            }
            assert_eq!(squares, factorial(r));
        }
    }

    #[test]
    fn two_row_sum() {
        for n in 2..=10u32 {
            assert_eq!(two_row_weighted_sum(n as usize), BigInt::from(2u64.pow(n) - n as u64 - 1));
        }
    }

    #[test]
    fn canonical_tableau_is_column_major() {
        let t = TableauPair::canonical(&[p(&[2, 1]), p(&[1])]);
        assert_eq!(t.tableaux[0], vec![vec![1, 3], vec![2]]);
        assert_eq!(t.tableaux[1], vec![vec![1]]);
        assert_eq!(t.columns()[0], vec![vec![1, 2], vec![3]]);
        assert_eq!(column_group(&t).len(), 2);
    }

    #[test]
    fn pure_identification() {
        let def = Builtin::Full.definition();
        let hwv = highest_weight_vectors(&[p(&[3]), Partition::empty()], &def.algebra, &def.action).unwrap();
        assert_eq!(hwv.len(), 81);
        let y = Var::y(1);
        let cube = Monomial::new(vec![0; 4], vec![y; 3]).unwrap();
        assert!(hwv.contains(&GenPolynomial::monomial(cube, Scalar::one())));
    }

    #[test]
    fn alternating_factor_appears() {
        let def = Builtin::Full.definition();
        let hwv = highest_weight_vectors(&[p(&[1, 1]), Partition::empty()], &def.algebra, &def.action).unwrap();
        let (y1, y2) = (Var::y(1), Var::y(2));
        let mut f = GenPolynomial::zero();
        f.add_term(Monomial::new(vec![0, 2, 0], vec![y1, y2]).unwrap(), Scalar::one());
        f.add_term(Monomial::new(vec![0, 2, 0], vec![y2, y1]).unwrap(), -Scalar::one());
        assert!(hwv.contains(&primitive(&f)));
    }

    #[test]
    fn height_guard_empties() {
        let def = Builtin::Full.definition();
        let hwv = highest_weight_vectors(&[p(&[1, 1, 1]), Partition::empty()], &def.algebra, &def.action).unwrap();
        assert!(hwv.is_empty());
        let hwv = highest_weight_vectors(&[Partition::empty(), p(&[1, 1])], &def.algebra, &def.action).unwrap();
        assert!(hwv.is_empty());
    }

    #[test]
    fn full_table_at_three() {
        let def = Builtin::Full.definition();
        let t = cocharacter_table(&def.algebra, &def.action, 3, &Caps::default(), None).unwrap();
        assert!(t.consistent());
        assert_eq!(t.get(&[p(&[3]), Partition::empty()]), 6);
        assert_eq!(t.get(&[p(&[2, 1]), Partition::empty()]), 2);
        assert_eq!(t.get(&[p(&[2]), p(&[1])]), 3);
        assert_eq!(t.get(&[p(&[1, 1]), p(&[1])]), 1);
        assert_eq!(t.get(&[p(&[1]), p(&[2])]), 0);
    }

    #[test]
    fn field_action_at_one() {
        let def = Builtin::F.definition();
        let t = cocharacter_table(&def.algebra, &def.action, 1, &Caps::default(), None).unwrap();
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.get(&[p(&[1]), Partition::empty()]), 1);
        assert_eq!(t.get(&[Partition::empty(), p(&[1])]), 1);
    }

    #[test]
    fn vanishing_vectors_are_identities() {
        let def = Builtin::D.definition();
        let (a, w) = (&def.algebra, &def.action);
        for shapes in [[p(&[1, 1]), Partition::empty()], [p(&[1]), p(&[1])]] {
            for f in highest_weight_vectors(&shapes, a, w).unwrap() {
                let zero = evaluation_rank(std::slice::from_ref(&f), a, w, &Caps::default()).unwrap() == 0;
                assert_eq!(zero, is_identity(&f, a, w).unwrap().identity, "{f}");
            }
        }
    }
}
