//! The free graded W-algebra: bordered monomials
//! `w_{i0} x_{j1} w_{i1} ... x_{jn} w_{in}`, their normal forms, products,
//! substitutions and the multilinear spanning sets `P_{n1,...,ns}`.
//!
//! Borders index the basis of the acting algebra; index 0 is the unit and
//! is kept positionally, so `w0 x w0` is the bare variable `x`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::multiplier::ActingAlgebra;
use crate::scalar::Scalar;

/// A graded variable `x_index^degree`; `degree` is a group index and
/// `index` starts at 1 within each degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Var {
    pub degree: usize,
    pub index: usize,
}

impl Var {
    pub fn new(degree: usize, index: usize) -> Self {
        Var { degree, index }
    }

    /// Even variable `y_i`.
    pub fn y(index: usize) -> Self {
        Var::new(0, index)
    }

    /// Odd variable `z_i`.
    pub fn z(index: usize) -> Self {
        Var::new(1, index)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            0 => write!(f, "y{}", self.index),
            1 => write!(f, "z{}", self.index),
            d => write!(f, "x{d}_{}", self.index),
        }
    }
}

/// A raw factor of a word before normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    W(usize),
    X(Var),
}

/// A bordered monomial with `letters.len() + 1` borders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    borders: Vec<usize>,
    letters: Vec<Var>,
}

impl Monomial {
    pub fn new(borders: Vec<usize>, letters: Vec<Var>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Precondition("a monomial needs at least one letter".into()));
        }
        if borders.len() != letters.len() + 1 {
            return Err(Error::DimensionMismatch {
                expected: letters.len() + 1,
                found: borders.len(),
            });
        }
        Ok(Monomial { borders, letters })
    }

    pub(crate) fn new_unchecked(borders: Vec<usize>, letters: Vec<Var>) -> Self {
        debug_assert_eq!(borders.len(), letters.len() + 1);
        Monomial { borders, letters }
    }

    /// The bare variable `w0 x w0`.
    pub fn var(v: Var) -> Self {
        Monomial {
            borders: vec![0, 0],
            letters: vec![v],
        }
    }

    pub fn borders(&self) -> &[usize] {
        &self.borders
    }

    pub fn letters(&self) -> &[Var] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `|w_{i0}| g_1 |w_{i1}| ... g_n |w_{in}|`.
    pub fn degree(&self, w: &ActingAlgebra) -> usize {
        let g = w.group();
        let mut d = w.degree(self.borders[0]);
        for (x, &b) in self.letters.iter().zip(&self.borders[1..]) {
            d = g.mul(d, x.degree);
            d = g.mul(d, w.degree(b));
        }
        d
    }

    /// Flat key `(i0, j1, k1, i1, ..., jn, kn, in)`.
    pub fn flat_key(&self) -> Vec<usize> {
        let mut key = Vec::with_capacity(3 * self.letters.len() + 1);
        key.push(self.borders[0]);
        for (x, &b) in self.letters.iter().zip(&self.borders[1..]) {
            key.extend([x.index, x.degree, b]);
        }
        key
    }

    fn key_iter(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.borders[0]).chain(
            self.letters
                .iter()
                .zip(&self.borders[1..])
                .flat_map(|(x, &b)| [x.index, x.degree, b]),
        )
    }

    pub fn tokens(&self) -> Vec<Token> {
        let mut out = vec![Token::W(self.borders[0])];
        for (x, &b) in self.letters.iter().zip(&self.borders[1..]) {
            out.push(Token::X(*x));
            out.push(Token::W(b));
        }
        out
    }

    pub fn is_multilinear(&self) -> bool {
        let set: BTreeSet<&Var> = self.letters.iter().collect();
        set.len() == self.letters.len()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_iter().cmp(other.key_iter())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for tok in self.tokens() {
            match tok {
                Token::W(0) => {}
                Token::W(i) => parts.push(format!("w{i}")),
                Token::X(v) => parts.push(v.to_string()),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A generalized polynomial in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenPolynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

/// `left * right` in the acting algebra, as sparse coordinates.
fn w_product(w: &ActingAlgebra, left: usize, right: usize) -> &[(usize, Scalar)] {
    w.product(left, right)
}

impl GenPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        GenPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// `w_i * self`.
    pub fn left_act(&self, w: &ActingAlgebra, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (k, s) in w_product(w, i, m.borders[0]) {
                let mut b = m.borders.clone();
                b[0] = *k;
                out.add_term(Monomial::new_unchecked(b, m.letters.clone()), c * s);
            }
        }
        out
    }

    /// `self * w_i`.
    pub fn right_act(&self, w: &ActingAlgebra, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let last = m.borders.len() - 1;
            for (k, s) in w_product(w, m.borders[last], i) {
                let mut b = m.borders.clone();
                b[last] = *k;
                out.add_term(Monomial::new_unchecked(b, m.letters.clone()), c * s);
            }
        }
        out
    }

    /// Juxtaposition followed by multiplication of the meeting borders.
    pub fn mul(&self, w: &ActingAlgebra, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let cab = ca * cb;
                let junction = w_product(w, *a.borders.last().unwrap(), b.borders[0]);
                for (k, s) in junction {
                    let mut borders = Vec::with_capacity(a.borders.len() + b.borders.len() - 1);
                    borders.extend_from_slice(&a.borders[..a.borders.len() - 1]);
                    borders.push(*k);
                    borders.extend_from_slice(&b.borders[1..]);
                    let mut letters = a.letters.clone();
                    letters.extend_from_slice(&b.letters);
                    out.add_term(Monomial::new_unchecked(borders, letters), &cab * s);
                }
            }
        }
        out
    }

    /// Normal form of `coeff * t_1 t_2 ... t_m`. Adjacent W-factors are
    /// multiplied out; a missing border is the unit.
    pub fn normalize(w: &ActingAlgebra, coeff: Scalar, tokens: &[Token]) -> Result<Self> {
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(vec![0], coeff)];
        let mut letters = Vec::new();
        for tok in tokens {
            match *tok {
                Token::W(i) => {
                    if i >= w.dim() {
                        return Err(Error::IndexOutOfRange {
                            what: "acting-algebra basis",
                            index: i,
                            bound: w.dim(),
                        });
                    }
                    let mut next = Vec::new();
                    for (b, c) in partial {
                        let last = *b.last().unwrap();
                        for (k, s) in w_product(w, last, i) {
                            let mut nb = b.clone();
                            *nb.last_mut().unwrap() = *k;
                            next.push((nb, &c * s));
                        }
                    }
                    partial = next;
                }
                Token::X(v) => {
                    letters.push(v);
                    for (b, _) in partial.iter_mut() {
                        b.push(0);
                    }
                }
            }
        }
        if letters.is_empty() {
            return Err(Error::Precondition(
                "a word without variables is not an element of the free algebra".into(),
            ));
        }
        let mut out = Self::zero();
        for (b, c) in partial {
            out.add_term(Monomial::new_unchecked(b, letters.clone()), c);
        }
        Ok(out)
    }

    /// Re-normalizes every term through its token sequence.
    pub fn renormalize(&self, w: &ActingAlgebra) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out = out.add(&Self::normalize(w, c.clone(), &m.tokens())?);
        }
        Ok(out)
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self, w: &ActingAlgebra) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree(w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.letters.iter().copied()).collect()
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(Monomial::is_multilinear)
    }

    /// Image under the graded W-endomorphism sending each assigned variable
    /// to its polynomial; unassigned variables are fixed.
    pub fn substitute(&self, w: &ActingAlgebra, assignment: &HashMap<Var, GenPolynomial>) -> Result<Self> {
        for (v, p) in assignment {
            for m in p.terms.keys() {
                let d = m.degree(w);
                if d != v.degree {
                    return Err(Error::DegreeMismatch {
                        var: v.to_string(),
                        expected: v.degree,
                        found: w.group().label(d).to_string(),
                    });
                }
            }
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let image = |v: &Var| match assignment.get(v) {
                Some(p) => p.clone(),
                None => GenPolynomial::var(*v),
            };
            let mut acc = image(&m.letters[0]).left_act(w, m.borders[0]);
            for (x, &b) in m.letters[1..].iter().zip(&m.borders[1..]) {
                if acc.is_zero() {
                    break;
                }
                acc = acc.right_act(w, b).mul(w, &image(x));
            }
            acc = acc.right_act(w, *m.borders.last().unwrap());
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    /// Renames variables letter by letter (used for identifying variables).
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let letters = m.letters.iter().map(|&v| f(v)).collect();
            out.add_term(Monomial::new_unchecked(m.borders.clone(), letters), c.clone());
        }
        out
    }
}

impl fmt::Display for GenPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                if abs.is_integer() {
                    write!(f, "{}*", abs.numer())?;
                } else {
                    write!(f, "({}/{})*", abs.numer(), abs.denom())?;
                }
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Letter counts per group degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree {
    pub counts: Vec<usize>,
}

impl MultiDegree {
    pub fn new(counts: Vec<usize>) -> Self {
        MultiDegree { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.iter().sum()
    }

    /// The variables `x_1^{g},...,x_{n_g}^{g}` for each degree, in block order.
    pub fn variables(&self) -> Vec<Var> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(d, &c)| (1..=c).map(move |i| Var::new(d, i)))
            .collect()
    }

    /// All compositions of `n` into `s` non-negative parts, in
    /// lexicographically decreasing order of the first part.
    pub fn compositions(n: usize, s: usize) -> Vec<MultiDegree> {
        fn rec(n: usize, s: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiDegree>) {
            if s == 1 {
                prefix.push(n);
                out.push(MultiDegree::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=n).rev() {
                prefix.push(first);
                rec(n - first, s - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if s > 0 {
            rec(n, s, &mut Vec::new(), &mut out);
        }
        out
    }

    /// `n! / (n_1! ... n_s!)`.
    pub fn multinomial(&self) -> BigInt {
        let mut out = factorial(self.n());
        for &c in &self.counts {
            out /= factorial(c);
        }
        out
    }

    pub fn check_group(&self, g: &FiniteGroup) -> Result<()> {
        if self.counts.len() != g.order() {
            return Err(Error::DimensionMismatch {
                expected: g.order(),
                found: self.counts.len(),
            });
        }
        Ok(())
    }
}

/// Comma-separated counts, `"2,1"`.
impl std::str::FromStr for MultiDegree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad multidegree {s:?}; expected counts like 2,1")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiDegree::new(counts))
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Lexicographic rank of a permutation of `0..n`.
pub(crate) fn perm_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Inverse of [`perm_rank`].
pub(crate) fn perm_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// The basis of `P_md`: monomials `w_{q0} x_{σ(1)} w_{q1} ... x_{σ(n)} w_{qn}`
/// indexed by `rank(σ) * dimW^{n+1} + (q0 q1 ... qn in base dimW)`.
#[derive(Clone, Debug)]
pub struct SpanningSet {
    dim_w: usize,
    vars: Vec<Var>,
    borders_count: usize,
    len: usize,
}

impl SpanningSet {
    pub fn new(w: &ActingAlgebra, md: &MultiDegree) -> Result<Self> {
        md.check_group(w.group())?;
        let vars = md.variables();
        let n = vars.len();
        let too_big = || Error::Truncated {
            what: "spanning-set size",
            needed: u64::MAX,
            limit: usize::MAX as u64,
        };
        let dim_w = w.dim();
        let borders_count = (0..=n).try_fold(1usize, |acc, _| acc.checked_mul(dim_w)).ok_or_else(too_big)?;
        let perms = (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)).ok_or_else(too_big)?;
        let len = borders_count.checked_mul(perms).ok_or_else(too_big)?;
        Ok(SpanningSet {
            dim_w,
            vars,
            borders_count,
            len,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[Var] {
        &self.vars
    }

    /// Number of border sequences, `dimW^{n+1}`.
    pub fn border_count(&self) -> usize {
        self.borders_count
    }

    pub fn monomial(&self, index: usize) -> Monomial {
        assert!(index < self.len, "spanning index out of range");
        let n = self.n();
        let perm = perm_unrank(n, index / self.borders_count);
        let mut code = index % self.borders_count;
        let mut borders = vec![0; n + 1];
        for b in borders.iter_mut().rev() {
            *b = code % self.dim_w;
            code /= self.dim_w;
        }
        Monomial::new_unchecked(borders, perm.into_iter().map(|p| self.vars[p]).collect())
    }

    /// Index of `m` in the basis, if `m` belongs to `P_md`.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        if m.letters.len() != self.n() {
            return None;
        }
        let mut perm = Vec::with_capacity(self.n());
        let mut seen = vec![false; self.n()];
        for v in &m.letters {
            let p = self.vars.binary_search(v).ok()?;
            if std::mem::replace(&mut seen[p], true) {
                return None;
            }
            perm.push(p);
        }
        let mut code = 0;
        for &b in &m.borders {
            if b >= self.dim_w {
                return None;
            }
            code = code * self.dim_w + b;
        }
        Some(perm_rank(&perm) * self.borders_count + code)
    }

    pub fn iter(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.len).map(|i| self.monomial(i))
    }
}

/// `spanning_multidegree(W, md)`: the lazily enumerated basis of `P_md`.
pub fn spanning_multidegree(w: &ActingAlgebra, md: &MultiDegree) -> Result<SpanningSet> {
    SpanningSet::new(w, md)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::Builtin;
    use crate::scalar::int;

    fn full() -> ActingAlgebra {
        Builtin::Full.definition().action
    }

    fn word(w: &ActingAlgebra, toks: &[Token]) -> GenPolynomial {
        GenPolynomial::normalize(w, int(1), toks).unwrap()
    }

    #[test]
    fn idempotent_border_collapses() {
        let d = Builtin::D.definition().action;
        let p = word(&d, &[Token::W(1), Token::W(1), Token::X(Var::y(1))]);
        let m = Monomial::new(vec![1, 0], vec![Var::y(1)]).unwrap();
        assert_eq!(p, GenPolynomial::monomial(m, int(1)));
    }

    #[test]
    fn nilpotent_and_zero_junctions() {
        let w = full();
        let y = Var::y(1);
        let z = Var::z(1);
        let a = word(&w, &[Token::X(y), Token::W(2)]);
        let b = word(&w, &[Token::W(2), Token::X(z)]);
        assert!(a.mul(&w, &b).is_zero());
        let c = word(&w, &[Token::X(y), Token::W(1)]);
        assert!(c.mul(&w, &b).is_zero());
    }

    #[test]
    fn products() {
        let w = full();
        let p = GenPolynomial::var(Var::y(1)).mul(&w, &GenPolynomial::var(Var::y(2)));
        let m = Monomial::new(vec![0, 0, 0], vec![Var::y(1), Var::y(2)]).unwrap();
        assert_eq!(p, GenPolynomial::monomial(m, int(1)));
        let y = GenPolynomial::var(Var::y(1));
        assert!(y.sub(&y).mul(&w, &GenPolynomial::var(Var::z(1))).is_zero());
        let d = Builtin::D.definition().action;
        let ey = GenPolynomial::var(Var::y(1)).left_act(&d, 1);
        let ze = GenPolynomial::var(Var::z(1)).right_act(&d, 1);
        let prod = ey.mul(&d, &ze);
        let m = Monomial::new(vec![1, 0, 1], vec![Var::y(1), Var::z(1)]).unwrap();
        assert_eq!(prod, GenPolynomial::monomial(m, int(1)));
    }

    #[test]
    fn substitution_examples() {
        let w = full();
        let z = Var::z(1);
        let e12z = GenPolynomial::var(z).left_act(&w, 2);
        let yz = GenPolynomial::var(Var::y(1)).mul(&w, &GenPolynomial::var(z));
        let img = e12z.substitute(&w, &HashMap::from([(z, yz)])).unwrap();
        let expected = word(&w, &[Token::W(2), Token::X(Var::y(1)), Token::X(z)]);
        assert_eq!(img, expected);
        assert_eq!(e12z.substitute(&w, &HashMap::new()).unwrap(), e12z);
        let zero = e12z.substitute(&w, &HashMap::from([(z, GenPolynomial::zero())])).unwrap();
        assert!(zero.is_zero());
        let bad = HashMap::from([(z, GenPolynomial::var(Var::y(2)))]);
        assert!(e12z.substitute(&w, &bad).is_err());
    }

    #[test]
    fn monomial_degree_counts_borders() {
        let w = full();
        let m = Monomial::new(vec![2, 0], vec![Var::z(1)]).unwrap();
        assert_eq!(m.degree(&w), 0);
        let m = Monomial::new(vec![1, 0], vec![Var::z(1)]).unwrap();
        assert_eq!(m.degree(&w), 1);
    }

    #[test]
    fn spanning_set_counts() {
        let f = Builtin::F.definition().action;
        let s = SpanningSet::new(&f, &MultiDegree::new(vec![2, 0])).unwrap();
        assert_eq!(s.len(), 2);
        let letters: Vec<Vec<Var>> = s.iter().map(|m| m.letters().to_vec()).collect();
        assert_eq!(letters, vec![vec![Var::y(1), Var::y(2)], vec![Var::y(2), Var::y(1)]]);
        assert_eq!(SpanningSet::new(&full(), &MultiDegree::new(vec![1, 0])).unwrap().len(), 9);
        let d = Builtin::D.definition().action;
        assert_eq!(SpanningSet::new(&d, &MultiDegree::new(vec![1, 1])).unwrap().len(), 16);
    }

    #[test]
    fn spanning_index_roundtrip() {
        let s = SpanningSet::new(&full(), &MultiDegree::new(vec![2, 1])).unwrap();
        for i in 0..s.len() {
            assert_eq!(s.index_of(&s.monomial(i)), Some(i));
        }
        let not_multilinear = Monomial::new(vec![0; 4], vec![Var::y(1), Var::y(1), Var::z(1)]).unwrap();
        assert_eq!(s.index_of(&not_multilinear), None);
    }

    #[test]
    fn permutations_rank_roundtrip() {
        for n in 0..6 {
            let total: usize = (1..=n).product();
            for r in 0..total {
                assert_eq!(perm_rank(&perm_unrank(n, r)), r);
            }
        }
    }

    #[test]
    fn compositions_and_multinomials() {
        let c = MultiDegree::compositions(3, 2);
        assert_eq!(c.len(), 4);
        assert_eq!(c[0].counts, vec![3, 0]);
        let total: BigInt = c.iter().map(MultiDegree::multinomial).sum();
        assert_eq!(total, BigInt::from(8));
    }

    #[test]
    fn display() {
        let w = full();
        let p = GenPolynomial::var(Var::y(1))
            .left_act(&w, 1)
            .sub(&GenPolynomial::var(Var::y(1)).right_act(&w, 1));
        assert_eq!(p.to_string(), "-y1*w1 + w1*y1");
    }
}
