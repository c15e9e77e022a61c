//! Finite-dimensional group-graded associative algebras given by structure
//! constants over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupViolation};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

/// Algebras up to this dimension are checked for associativity and grading
/// compatibility when constructed.
pub const EAGER_CHECK_MAX_DIM: usize = 32;

/// Coordinate vector of an element with respect to the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    pub coords: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<Scalar>) -> Self {
        AlgebraElement { coords }
    }

    pub fn zero(dim: usize) -> Self {
        AlgebraElement {
            coords: vec![Scalar::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = Scalar::one();
        e
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        AlgebraElement {
            coords: xs.iter().map(|&x| crate::scalar::int(x)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        AlgebraElement {
            coords: self.coords.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgebraElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Violated algebra axioms, reported as data rather than errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub group: Vec<GroupViolation>,
    /// `(i, j, k)` with `c_ij^k != 0` but `deg k != deg i * deg j`.
    pub grading: Vec<(usize, usize, usize)>,
    /// `(i, j, k)` with `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub associativity: Vec<(usize, usize, usize)>,
    pub unit: Vec<String>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.group.is_empty()
            && self.grading.is_empty()
            && self.associativity.is_empty()
            && self.unit.is_empty()
    }

    pub fn len(&self) -> usize {
        self.group.len() + self.grading.len() + self.associativity.len() + self.unit.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    group: FiniteGroup,
    degrees: Vec<usize>,
    /// `structure[i][j]` lists the nonzero `(k, c_ij^k)`, sorted by `k`.
    structure: Vec<Vec<Vec<(usize, Scalar)>>>,
    unit: Option<AlgebraElement>,
}

impl GradedAlgebra {
    /// Builds and validates an algebra from `(i, j, k, c)` structure entries
    /// meaning `e_i e_j` has coefficient `c` on `e_k`. Repeated entries add.
    pub fn new(
        group: FiniteGroup,
        degrees: Vec<usize>,
        entries: Vec<(usize, usize, usize, Scalar)>,
        unit: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let a = Self::unchecked(group, degrees, entries, unit)?;
        if a.dim() <= EAGER_CHECK_MAX_DIM {
            let report = a.check_axioms();
            if !report.is_empty() {
                return Err(Error::InvalidAlgebra(format!(
                    "{} axiom violation(s): {report:?}",
                    report.len()
                )));
            }
        }
        Ok(a)
    }

    /// Shape and index validation only.
    pub fn unchecked(
        group: FiniteGroup,
        degrees: Vec<usize>,
        entries: Vec<(usize, usize, usize, Scalar)>,
        unit: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let dim = degrees.len();
        for &d in &degrees {
            group.check_index(d)?;
        }
        let mut structure = vec![vec![Vec::<(usize, Scalar)>::new(); dim]; dim];
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange {
                        what: "basis",
                        index: idx,
                        bound: dim,
                    });
                }
            }
            let cell = &mut structure[i][j];
            match cell.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, v)) => *v += c,
                None => cell.push((k, c)),
            }
        }
        for row in &mut structure {
            for cell in row.iter_mut() {
                cell.retain(|(_, c)| !c.is_zero());
                cell.sort_by_key(|(k, _)| *k);
            }
        }
        let unit = match unit {
            Some(u) if u.len() != dim => {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.len(),
                })
            }
            Some(u) => Some(AlgebraElement::new(u)),
            None => None,
        };
        Ok(GradedAlgebra {
            group,
            degrees,
            structure,
            unit,
        })
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn unit(&self) -> Option<&AlgebraElement> {
        self.unit.as_ref()
    }

    /// `e_i e_j` as sparse `(k, c)` pairs.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.structure[i][j]
    }

    /// All nonzero structure constants as `(i, j, k, c)`, in index order.
    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, row) in self.structure.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                for (k, c) in cell {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// Basis indices of homogeneous degree `g`, in basis order.
    pub fn basis_of_degree(&self, g: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == g).collect()
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<AlgebraElement> {
        self.check_element_len(coords.len())?;
        Ok(AlgebraElement::new(coords))
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim(), i)
    }

    fn check_element_len(&self, len: usize) -> Result<()> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: len,
            })
        }
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element_len(a.dim())?;
        self.check_element_len(b.dim())?;
        Ok(self.mul_unchecked(&a.coords, &b.coords))
    }

    pub(crate) fn mul_unchecked(&self, a: &[Scalar], b: &[Scalar]) -> AlgebraElement {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in &self.structure[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        AlgebraElement::new(out)
    }

    /// Homogeneous projection onto `A^h`.
    pub fn project(&self, a: &AlgebraElement, h: usize) -> Result<AlgebraElement> {
        self.group.check_index(h)?;
        self.check_element_len(a.dim())?;
        Ok(AlgebraElement::new(
            a.coords
                .iter()
                .zip(&self.degrees)
                .map(|(c, &d)| if d == h { c.clone() } else { Scalar::zero() })
                .collect(),
        ))
    }

    /// Projection `pi_h` as a matrix.
    pub fn projection_matrix(&self, h: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for i in self.basis_of_degree(h) {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Degree of `a` if it is nonzero and homogeneous.
    pub fn homogeneous_degree(&self, a: &AlgebraElement) -> Option<usize> {
        let mut deg = None;
        for (c, &d) in a.coords.iter().zip(&self.degrees) {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(d),
                Some(g) if g != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Matrix of `x -> m x`.
    pub fn left_mult_matrix(&self, m: &AlgebraElement) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul_unchecked(&m.coords, &self.basis_element(j).coords).coords)
            .collect();
        Matrix::from_columns_sized(&cols, self.dim())
    }

    /// Matrix of `x -> x m`.
    pub fn right_mult_matrix(&self, m: &AlgebraElement) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul_unchecked(&self.basis_element(j).coords, &m.coords).coords)
            .collect();
        Matrix::from_columns_sized(&cols, self.dim())
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let mut report = AxiomReport {
            group: self.group.violations(),
            ..AxiomReport::default()
        };
        let n = self.dim();
        let group_ok = report.group.is_empty();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in &self.structure[i][j] {
                    let expected = self.group.table()[self.degrees[i]][self.degrees[j]];
                    if !group_ok || self.degrees[*k] != expected {
                        report.grading.push((i, j, *k));
                    }
                }
            }
        }
        let basis: Vec<AlgebraElement> = (0..n).map(|i| self.basis_element(i)).collect();
        let products: Vec<Vec<AlgebraElement>> = (0..n)
            .map(|i| (0..n).map(|j| self.mul_unchecked(&basis[i].coords, &basis[j].coords)).collect())
            .collect();
        for (i, row) in products.iter().enumerate() {
            for (j, pij) in row.iter().enumerate() {
                for k in 0..n {
                    let left = self.mul_unchecked(&pij.coords, &basis[k].coords);
                    let right = self.mul_unchecked(&basis[i].coords, &products[j][k].coords);
                    if left != right {
                        report.associativity.push((i, j, k));
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            match self.homogeneous_degree(u) {
                Some(d) if d == self.group.identity() => {}
                Some(d) => report.unit.push(format!("unit has degree {d}, not the identity")),
                None if u.is_zero() && n > 0 => report.unit.push("unit is zero".into()),
                None if n > 0 => report.unit.push("unit is not homogeneous".into()),
                None => {}
            }
            for (i, b) in basis.iter().enumerate() {
                if self.mul_unchecked(&u.coords, &b.coords) != *b {
                    report.unit.push(format!("unit * e{i} != e{i}"));
                }
                if self.mul_unchecked(&b.coords, &u.coords) != *b {
                    report.unit.push(format!("e{i} * unit != e{i}"));
                }
            }
        }
        report
    }

    /// Homogeneous basis of the Jacobson radical.
    ///
    /// Uses the trace-form criterion valid in characteristic zero:
    /// `rad A = { x : tr(L_{xy}) = 0 for all y }`. The radical of a graded
    /// algebra is graded, so the kernel is computed inside each `A^g`.
    pub fn radical(&self) -> Vec<AlgebraElement> {
        let n = self.dim();
        let traces: Vec<Scalar> = (0..n)
            .map(|k| {
                let lk = self.left_mult_matrix(&self.basis_element(k));
                (0..n).fold(Scalar::zero(), |acc, i| acc + &lk[(i, i)])
            })
            .collect();
        // gram[i][j] = tr(L_{e_i e_j})
        let gram: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.structure[i][j]
                            .iter()
                            .fold(Scalar::zero(), |acc, (k, c)| acc + c * &traces[*k])
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        for g in 0..self.group.order() {
            let idx = self.basis_of_degree(g);
            if idx.is_empty() {
                continue;
            }
            let rows: Vec<Vec<Scalar>> = (0..n)
                .map(|i| idx.iter().map(|&j| gram[i][j].clone()).collect())
                .collect();
            let ns = linalg::rref(&rows, idx.len()).nullspace();
            for v in ns {
                let mut coords = vec![Scalar::zero(); n];
                for (&j, c) in idx.iter().zip(v) {
                    coords[j] = c;
                }
                out.push(AlgebraElement::new(coords));
            }
        }
        out
    }

    /// Smallest subalgebra containing `vectors` (and the unit when
    /// `with_unit`), returned as an RREF basis.
    pub fn subalgebra_closure(
        &self,
        vectors: &[AlgebraElement],
        with_unit: bool,
    ) -> Result<Vec<AlgebraElement>> {
        let n = self.dim();
        for v in vectors {
            self.check_element_len(v.dim())?;
        }
        let mut gens: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.coords.clone()).collect();
        if with_unit {
            let u = self.unit.as_ref().ok_or_else(|| {
                Error::Precondition("unital closure requested but the algebra has no unit".into())
            })?;
            gens.push(u.coords.clone());
        }
        let mut basis = linalg::span_basis(&gens, n);
        loop {
            let mut all = basis.clone();
            for a in &basis {
                for b in &basis {
                    all.push(self.mul_unchecked(a, b).coords);
                }
            }
            let next = linalg::span_basis(&all, n);
            if next.len() == basis.len() {
                break;
            }
            basis = next;
        }
        Ok(basis.into_iter().map(AlgebraElement::new).collect())
    }
}

impl Matrix {
    pub(crate) fn from_columns_sized(columns: &[Vec<Scalar>], rows: usize) -> Matrix {
        if columns.is_empty() {
            return Matrix::zeros(rows, 0);
        }
        Matrix::from_columns(columns)
    }
}
