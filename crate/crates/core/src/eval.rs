//! Generic elements and evaluation of generalized polynomials.
//!
//! The generic element of a variable `x_i^g` is `sum_j a_j ⊗ ξ_{i,j}` over
//! the basis vectors `a_j` of degree `g`, with commuting indeterminates
//! `ξ_{i,j}`. A polynomial is an identity iff it vanishes on generic
//! elements.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::free::{GenPolynomial, Var};
use crate::linalg::Matrix;
use crate::multiplier::ActingAlgebra;
use crate::scalar::{self, Scalar};

/// The indeterminate `ξ_{var, basis}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct XiVar {
    pub var: Var,
    pub basis: usize,
}

impl fmt::Display for XiVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xi[{},{}]", self.var, self.basis)
    }
}

/// Sorted exponent list.
pub type XiMonomial = Vec<(XiVar, u32)>;

/// A polynomial in commuting indeterminates with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommPoly {
    terms: BTreeMap<XiMonomial, Scalar>,
}

fn mul_monomials(a: &XiMonomial, b: &XiMonomial) -> XiMonomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

impl CommPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn variable(x: XiVar) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![(x, 1)], Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XiMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: XiMonomial, c: Scalar) {
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

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        CommPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(mul_monomials(a, b), ca * cb);
            }
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<XiVar> {
        self.terms.keys().flat_map(|m| m.iter().map(|(x, _)| *x)).collect()
    }

    /// Value at a point; missing indeterminates count as 0.
    pub fn eval(&self, point: &HashMap<XiVar, Scalar>) -> Scalar {
        let mut acc = Scalar::zero();
        'terms: for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in m {
                match point.get(x) {
                    Some(val) if !val.is_zero() => {
                        for _ in 0..*e {
                            v *= val;
                        }
                    }
                    _ => continue 'terms,
                }
            }
            acc += v;
        }
        acc
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = scalar::to_canonical(c);
                for (x, e) in m {
                    s.push('*');
                    s.push_str(&x.to_string());
                    if *e > 1 {
                        s.push_str(&format!("^{e}"));
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An algebra element whose coordinates are polynomials in the `ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericMatrixElement {
    /// Declared homogeneous degree; `None` for evaluation results that need
    /// not be homogeneous.
    pub degree: Option<usize>,
    pub coords: Vec<CommPoly>,
}

impl GenericMatrixElement {
    pub fn zero(dim: usize, degree: Option<usize>) -> Self {
        GenericMatrixElement {
            degree,
            coords: vec![CommPoly::zero(); dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CommPoly::is_zero)
    }

    fn apply(&self, m: &Matrix) -> Self {
        let coords = (0..m.rows())
            .map(|i| {
                let mut acc = CommPoly::zero();
                for (j, c) in self.coords.iter().enumerate() {
                    let a = &m[(i, j)];
                    if !a.is_zero() && !c.is_zero() {
                        acc = acc.add(&c.scale(a));
                    }
                }
                acc
            })
            .collect();
        GenericMatrixElement { degree: None, coords }
    }

    fn multiply(&self, a: &GradedAlgebra, other: &Self) -> Self {
        let mut out = Self::zero(a.dim(), None);
        for (i, ci) in self.coords.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in other.coords.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let prod = ci.mul(cj);
                for (k, s) in a.basis_product(i, j) {
                    out.coords[*k] = out.coords[*k].add(&prod.scale(s));
                }
            }
        }
        out
    }

    fn add(&self, other: &Self) -> Self {
        GenericMatrixElement {
            degree: None,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    /// Specializes the indeterminates.
    pub fn at(&self, point: &HashMap<XiVar, Scalar>) -> AlgebraElement {
        AlgebraElement::new(self.coords.iter().map(|p| p.eval(point)).collect())
    }
}

/// `ξ_v = sum_{j : deg a_j = deg v} a_j ⊗ ξ_{v,j}`.
pub fn generic_element(a: &GradedAlgebra, v: Var) -> GenericMatrixElement {
    let mut e = GenericMatrixElement::zero(a.dim(), Some(v.degree));
    for j in a.basis_of_degree(v.degree) {
        e.coords[j] = CommPoly::variable(XiVar { var: v, basis: j });
    }
    e
}

/// Generic elements for `x_1^g, ..., x_n^g` and every degree `g`.
pub fn generic_elements(a: &GradedAlgebra, n: usize) -> Vec<(Var, GenericMatrixElement)> {
    (0..a.group().order())
        .flat_map(|g| (1..=n).map(move |i| Var::new(g, i)))
        .map(|v| (v, generic_element(a, v)))
        .collect()
}

/// Image of `f` under `x ↦ assignment[x]`, borders acting through the
/// multiplier matrices of `w`.
pub fn evaluate(
    f: &GenPolynomial,
    assignment: &HashMap<Var, GenericMatrixElement>,
    a: &GradedAlgebra,
    w: &ActingAlgebra,
) -> Result<GenericMatrixElement> {
    for v in f.variables() {
        match assignment.get(&v) {
            None => return Err(Error::Precondition(format!("no value assigned to {v}"))),
            Some(e) => {
                if let Some(d) = e.degree {
                    if d != v.degree {
                        return Err(Error::DegreeMismatch {
                            var: v.to_string(),
                            expected: v.degree,
                            found: a.group().label(d).to_string(),
                        });
                    }
                }
            }
        }
    }
    let mut out = GenericMatrixElement::zero(a.dim(), None);
    for (m, c) in f.terms() {
        let b = m.borders();
        let mut acc = assignment[&m.letters()[0]].apply(&w.multiplier(b[0]).left);
        for (x, &bi) in m.letters()[1..].iter().zip(&b[1..]) {
            acc = acc.apply(&w.multiplier(bi).right);
            acc = acc.multiply(a, &assignment[x]);
        }
        acc = acc.apply(&w.multiplier(*b.last().unwrap()).right);
        out = out.add(&GenericMatrixElement {
            degree: None,
            coords: acc.coords.iter().map(|p| p.scale(c)).collect(),
        });
    }
    out.degree = f.homogeneous_degree(w);
    Ok(out)
}

/// Numeric evaluation at concrete algebra elements.
pub fn evaluate_at(
    f: &GenPolynomial,
    assignment: &HashMap<Var, AlgebraElement>,
    a: &GradedAlgebra,
    w: &ActingAlgebra,
) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(a.dim());
    for (m, c) in f.terms() {
        let value = |v: &Var| {
            assignment
                .get(v)
                .ok_or_else(|| Error::Precondition(format!("no value assigned to {v}")))
        };
        let b = m.borders();
        let mut acc = w.multiplier(b[0]).left.apply(&value(&m.letters()[0])?.coords);
        for (x, &bi) in m.letters()[1..].iter().zip(&b[1..]) {
            acc = w.multiplier(bi).right.apply(&acc);
            acc = a.multiply(&AlgebraElement::new(acc), value(x)?)?.coords;
        }
        acc = w.multiplier(*b.last().unwrap()).right.apply(&acc);
        out = out.add(&AlgebraElement::new(acc).scale(c));
    }
    Ok(out)
}

/// A concrete point where a polynomial does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub assignment: Vec<(Var, AlgebraElement)>,
    pub value: AlgebraElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub identity: bool,
    pub witness: Option<Witness>,
}

/// Decides whether `f` vanishes on the generic elements. On failure a
/// witness is found by fixing one nonzero `ξ`-monomial of the image, zeroing
/// all other indeterminates, and searching the remaining ones over
/// `0, ±1, ±2, ...` in a deterministic spiral.
pub fn is_identity(f: &GenPolynomial, a: &GradedAlgebra, w: &ActingAlgebra) -> Result<IdentityVerdict> {
    let vars = f.variables();
    let assignment: HashMap<Var, GenericMatrixElement> =
        vars.iter().map(|&v| (v, generic_element(a, v))).collect();
    let image = evaluate(f, &assignment, a, w)?;
    let Some(p) = image.coords.iter().find(|p| !p.is_zero()) else {
        return Ok(IdentityVerdict {
            identity: true,
            witness: None,
        });
    };
    let (lead, _) = p.terms().next().expect("nonzero polynomial");
    let support: Vec<XiVar> = lead.iter().map(|(x, _)| *x).collect();
    let max_exp = p.terms().flat_map(|(m, _)| m.iter().map(|(_, e)| *e)).max().unwrap_or(0);
    let point = spiral_search(&support, max_exp as i64, |pt| !p.eval(pt).is_zero())
        .expect("a polynomial of bounded degree has a nonzero point in a large enough box");
    let mut witness_assignment = Vec::new();
    let mut numeric = HashMap::new();
    for &v in &vars {
        let mut coords = vec![Scalar::zero(); a.dim()];
        for j in a.basis_of_degree(v.degree) {
            if let Some(val) = point.get(&XiVar { var: v, basis: j }) {
                coords[j] = val.clone();
            }
        }
        let el = AlgebraElement::new(coords);
        numeric.insert(v, el.clone());
        witness_assignment.push((v, el));
    }
    let value = evaluate_at(f, &numeric, a, w)?;
    debug_assert!(!value.is_zero());
    Ok(IdentityVerdict {
        identity: false,
        witness: Some(Witness {
            assignment: witness_assignment,
            value,
        }),
    })
}

/// Odometer step; returns false after the last tuple.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Tries integer points of growing radius; values in each coordinate are
/// ordered `0, 1, -1, 2, -2, ...`.
fn spiral_search(
    vars: &[XiVar],
    max_degree: i64,
    mut hit: impl FnMut(&HashMap<XiVar, Scalar>) -> bool,
) -> Option<HashMap<XiVar, Scalar>> {
    let k = vars.len();
    for r in 0..=(max_degree / 2 + 1) {
        let values: Vec<i64> = std::iter::once(0)
            .chain((1..=r).flat_map(|v| [v, -v]))
            .collect();
        let mut idx = vec![0usize; k];
        loop {
            let tuple: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
            if r == 0 || tuple.iter().any(|v| v.abs() == r) {
                let point: HashMap<XiVar, Scalar> = vars
                    .iter()
                    .zip(&tuple)
                    .map(|(x, &v)| (*x, scalar::int(v)))
                    .collect();
                if hit(&point) {
                    return Some(point);
                }
            }
            if !advance(&mut idx, values.len()) {
                break;
            }
        }
    }
    None
}
