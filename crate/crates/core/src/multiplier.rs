//! Multiplier algebra `M(A)`, its induced grading, and acting algebras
//! realized as graded subalgebras of `M(A)`.
//!
//! A multiplier is a pair `(R, L)` of linear maps with
//! `R(ab) = a R(b)`, `L(ab) = L(a) b` and `R(a) b = a L(b)`. Maps are stored
//! as matrices acting on coordinate columns. `R` lives in the opposite
//! endomorphism algebra, so the product of pairs is
//! `(R1, L1)(R2, L2) = (R2 R1, L1 L2)`.

use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplier {
    /// Right action `a -> R(a)`.
    pub right: Matrix,
    /// Left action `a -> L(a)`.
    pub left: Matrix,
}

impl Multiplier {
    pub fn new(right: Matrix, left: Matrix) -> Self {
        Multiplier { right, left }
    }

    pub fn identity(dim: usize) -> Self {
        Multiplier::new(Matrix::identity(dim), Matrix::identity(dim))
    }

    pub fn zero(dim: usize) -> Self {
        Multiplier::new(Matrix::zeros(dim, dim), Matrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.right.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.right.is_identity() && self.left.is_identity()
    }

    pub fn is_zero(&self) -> bool {
        self.right.is_zero() && self.left.is_zero()
    }

    /// Component-wise product in `End(A)^op x End(A)`.
    pub fn product(&self, other: &Multiplier) -> Multiplier {
        Multiplier::new(&other.right * &self.right, &self.left * &other.left)
    }

    pub fn add(&self, other: &Multiplier) -> Multiplier {
        Multiplier::new(&self.right + &other.right, &self.left + &other.left)
    }

    pub fn scale(&self, s: &Scalar) -> Multiplier {
        Multiplier::new(self.right.scale(s), self.left.scale(s))
    }

    /// `R` entries (row-major) followed by `L` entries.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.right
            .entries()
            .iter()
            .chain(self.left.entries())
            .cloned()
            .collect()
    }

    pub fn from_flat(dim: usize, v: &[Scalar]) -> Multiplier {
        let n2 = dim * dim;
        assert_eq!(v.len(), 2 * n2);
        let to_matrix = |s: &[Scalar]| {
            Matrix::from_rows(s.chunks(dim.max(1)).take(dim).map(|r| r.to_vec()).collect())
        };
        if dim == 0 {
            return Multiplier::zero(0);
        }
        Multiplier::new(to_matrix(&v[..n2]), to_matrix(&v[n2..]))
    }

    /// Group degree `g` such that `R(A^h) ⊆ A^{hg}` and `L(A^h) ⊆ A^{gh}`
    /// for all `h`, if the multiplier is nonzero and homogeneous.
    pub fn homogeneous_degree(&self, a: &GradedAlgebra) -> Option<usize> {
        let g = a.group();
        (0..g.order()).find(|&d| !self.is_zero() && fits_degree(a, self, d))
    }
}

fn fits_degree(a: &GradedAlgebra, m: &Multiplier, g: usize) -> bool {
    let grp = a.group();
    let n = a.dim();
    for p in 0..n {
        for q in 0..n {
            let dp = a.degree(p);
            let dq = a.degree(q);
            if !m.right[(p, q)].is_zero() && dp != grp.mul(dq, g) {
                return false;
            }
            if !m.left[(p, q)].is_zero() && dp != grp.mul(g, dq) {
                return false;
            }
        }
    }
    true
}

/// Checks the three multiplier identities on all basis pairs.
pub fn is_multiplier(a: &GradedAlgebra, m: &Multiplier) -> bool {
    let n = a.dim();
    if m.right.rows() != n || m.right.cols() != n || m.left.rows() != n || m.left.cols() != n {
        return false;
    }
    let basis: Vec<AlgebraElement> = (0..n).map(|i| a.basis_element(i)).collect();
    let r_img: Vec<Vec<Scalar>> = (0..n).map(|j| m.right.column(j)).collect();
    let l_img: Vec<Vec<Scalar>> = (0..n).map(|j| m.left.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let ab = a.mul_unchecked(&basis[i].coords, &basis[j].coords);
            if m.right.apply(&ab.coords) != a.mul_unchecked(&basis[i].coords, &r_img[j]).coords {
                return false;
            }
            if m.left.apply(&ab.coords) != a.mul_unchecked(&l_img[i], &basis[j].coords).coords {
                return false;
            }
            if a.mul_unchecked(&r_img[i], &basis[j].coords) != a.mul_unchecked(&basis[i].coords, &l_img[j]) {
                return false;
            }
        }
    }
    true
}

/// Canonical (RREF) basis of `M(A)`, obtained by solving the multiplier
/// identities as a homogeneous linear system in the `2 dim^2` matrix entries.
pub fn multiplier_algebra(a: &GradedAlgebra) -> Vec<Multiplier> {
    let n = a.dim();
    let n2 = n * n;
    let r_idx = |p: usize, q: usize| p * n + q;
    let l_idx = |p: usize, q: usize| n2 + p * n + q;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut eqs = vec![vec![vec![Scalar::zero(); 2 * n2]; n]; 3];
            // R(e_i e_j) - e_i R(e_j)
            for (k, c) in a.basis_product(i, j) {
                for m in 0..n {
                    eqs[0][m][r_idx(m, *k)] += c;
                    eqs[1][m][l_idx(m, *k)] += c;
                }
            }
            for p in 0..n {
                for (m, c) in a.basis_product(i, p) {
                    eqs[0][*m][r_idx(p, j)] -= c;
                    // - e_i L(e_j)
                    eqs[2][*m][l_idx(p, j)] -= c;
                }
                for (m, c) in a.basis_product(p, j) {
                    // - L(e_i) e_j
                    eqs[1][*m][l_idx(p, i)] -= c;
                    // + R(e_i) e_j
                    eqs[2][*m][r_idx(p, i)] += c;
                }
            }
            for eq in eqs.into_iter().flatten() {
                if eq.iter().any(|x| !x.is_zero()) {
                    rows.push(eq);
                }
            }
        }
    }
    linalg::rref(&rows, 2 * n2)
        .nullspace()
        .iter()
        .map(|v| Multiplier::from_flat(n, v))
        .collect()
}

/// The degree-`g` component `(R_g, L_g)` with
/// `R_g = sum_h pi_{hg} R pi_h` and `L_g = sum_h pi_{gh} L pi_h`.
pub fn grade_component(a: &GradedAlgebra, m: &Multiplier, g: usize) -> Result<Multiplier> {
    a.group().check_index(g)?;
    if !is_multiplier(a, m) {
        return Err(Error::Precondition(
            "grade_component requires a multiplier of the algebra".into(),
        ));
    }
    let grp = a.group();
    let n = a.dim();
    let mut right = Matrix::zeros(n, n);
    let mut left = Matrix::zeros(n, n);
    for h in 0..grp.order() {
        let hg = grp.mul(h, g);
        let gh = grp.mul(g, h);
        for q in a.basis_of_degree(h) {
            for p in a.basis_of_degree(hg) {
                right[(p, q)] = m.right[(p, q)].clone();
            }
            for p in a.basis_of_degree(gh) {
                left[(p, q)] = m.left[(p, q)].clone();
            }
        }
    }
    Ok(Multiplier::new(right, left))
}

/// Basis of each homogeneous component `M(A)^g`, indexed by group element.
pub fn grading_of_m(a: &GradedAlgebra) -> Vec<Vec<Multiplier>> {
    let basis = multiplier_algebra(a);
    let n = a.dim();
    (0..a.group().order())
        .map(|g| {
            let parts: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|m| {
                    grade_component(a, m, g)
                        .expect("basis elements are multipliers")
                        .flatten()
                })
                .collect();
            linalg::span_basis(&parts, 2 * n * n)
                .iter()
                .map(|v| Multiplier::from_flat(n, v))
                .collect()
        })
        .collect()
}

/// `(R_m, L_m)` with `R_m(a) = am` and `L_m(a) = ma`.
pub fn inner_multiplier(a: &GradedAlgebra, m: &AlgebraElement) -> Multiplier {
    Multiplier::new(a.right_mult_matrix(m), a.left_mult_matrix(m))
}

/// A finite-dimensional graded algebra `Φ(W) ⊆ M(A)` with a fixed ordered
/// basis whose element 0 is the identity pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActingAlgebra {
    group: FiniteGroup,
    basis: Vec<Multiplier>,
    degrees: Vec<usize>,
    /// `table[i][j]` = coordinates of `w_i w_j` as sparse `(k, c)`.
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    /// Present when the action came from a subalgebra of `A`.
    elements: Option<Vec<AlgebraElement>>,
}

impl ActingAlgebra {
    /// Action of a unital graded subalgebra by left and right multiplication.
    /// `sub_basis[0]` must be the unit of `A`.
    pub fn from_subalgebra(a: &GradedAlgebra, sub_basis: &[AlgebraElement]) -> Result<Self> {
        let unit = a.unit().ok_or_else(|| {
            Error::InvalidAction("subalgebra actions require a unital algebra".into())
        })?;
        let Some(first) = sub_basis.first() else {
            return Err(Error::InvalidAction("empty subalgebra basis".into()));
        };
        for b in sub_basis {
            if b.dim() != a.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    found: b.dim(),
                });
            }
        }
        if first != unit {
            return Err(Error::InvalidAction(format!(
                "first basis element {first} must be the unit {unit}"
            )));
        }
        let vectors: Vec<Vec<Scalar>> = sub_basis.iter().map(|b| b.coords.clone()).collect();
        if linalg::rank(&vectors, a.dim()) != sub_basis.len() {
            return Err(Error::InvalidAction("subalgebra basis is linearly dependent".into()));
        }
        let mut degrees = Vec::with_capacity(sub_basis.len());
        for (i, b) in sub_basis.iter().enumerate() {
            match a.homogeneous_degree(b) {
                Some(d) => degrees.push(d),
                None => {
                    return Err(Error::InvalidAction(format!(
                        "basis element {i} = {b} is not homogeneous, so the span is not graded"
                    )))
                }
            }
        }
        let mults: Vec<Multiplier> = sub_basis.iter().map(|b| inner_multiplier(a, b)).collect();
        let span = linalg::rref(&vectors, a.dim());
        // Coordinates relative to the RREF basis, converted to the given basis.
        let to_given = change_of_basis(&span, &vectors);
        let mut table = vec![vec![Vec::new(); sub_basis.len()]; sub_basis.len()];
        for i in 0..sub_basis.len() {
            for j in 0..sub_basis.len() {
                let prod = a.multiply(&sub_basis[i], &sub_basis[j])?;
                let Some(rref_coords) = span.coordinates(&prod.coords) else {
                    return Err(Error::InvalidAction(format!(
                        "span not closed: b{i} * b{j} = {prod} lies outside it"
                    )));
                };
                table[i][j] = sparse(&to_given.apply(&rref_coords));
            }
        }
        let w = ActingAlgebra {
            group: a.group().clone(),
            basis: mults,
            degrees,
            table,
            elements: Some(sub_basis.to_vec()),
        };
        w.check_compatibility()?;
        Ok(w)
    }

    /// Action given directly by multiplier pairs with declared degrees.
    pub fn from_multipliers(a: &GradedAlgebra, pairs: Vec<(Multiplier, usize)>) -> Result<Self> {
        let Some((first, _)) = pairs.first() else {
            return Err(Error::InvalidAction("empty multiplier basis".into()));
        };
        if !first.is_identity() || first.dim() != a.dim() {
            return Err(Error::InvalidAction(
                "basis element 0 must be the identity pair (id, id)".into(),
            ));
        }
        for (i, (m, d)) in pairs.iter().enumerate() {
            a.group().check_index(*d)?;
            if !is_multiplier(a, m) {
                return Err(Error::InvalidAction(format!("pair {i} is not a multiplier")));
            }
            if !fits_degree(a, m, *d) {
                return Err(Error::InvalidAction(format!(
                    "pair {i} does not map A^h into A^(h*{d}) / A^({d}*h)"
                )));
            }
        }
        let dim = a.dim();
        let flat: Vec<Vec<Scalar>> = pairs.iter().map(|(m, _)| m.flatten()).collect();
        if linalg::rank(&flat, 2 * dim * dim) != pairs.len() {
            return Err(Error::InvalidAction("multiplier basis is linearly dependent".into()));
        }
        let span = linalg::rref(&flat, 2 * dim * dim);
        let to_given = change_of_basis(&span, &flat);
        let mut table = vec![vec![Vec::new(); pairs.len()]; pairs.len()];
        for i in 0..pairs.len() {
            for j in 0..pairs.len() {
                let prod = pairs[i].0.product(&pairs[j].0);
                let Some(c) = span.coordinates(&prod.flatten()) else {
                    return Err(Error::InvalidAction(format!(
                        "span not closed under product: w{i} w{j}"
                    )));
                };
                table[i][j] = sparse(&to_given.apply(&c));
            }
        }
        let (basis, degrees) = pairs.into_iter().unzip();
        let w = ActingAlgebra {
            group: a.group().clone(),
            basis,
            degrees,
            table,
            elements: None,
        };
        w.check_compatibility()?;
        Ok(w)
    }

    /// Scalar action only: `Φ(W) = F (id, id)`.
    pub fn scalar(a: &GradedAlgebra) -> Self {
        ActingAlgebra {
            group: a.group().clone(),
            basis: vec![Multiplier::identity(a.dim())],
            degrees: vec![a.group().identity()],
            table: vec![vec![vec![(0, Scalar::one())]]],
            elements: None,
        }
    }

    fn check_compatibility(&self) -> Result<()> {
        for (i, w1) in self.basis.iter().enumerate() {
            for (j, w2) in self.basis.iter().enumerate() {
                if &w2.right * &w1.left != &w1.left * &w2.right {
                    return Err(Error::InvalidAction(format!(
                        "rho(w{j}) lambda(w{i}) != lambda(w{i}) rho(w{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn basis(&self) -> &[Multiplier] {
        &self.basis
    }

    pub fn multiplier(&self, i: usize) -> &Multiplier {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// `w_i w_j` in basis coordinates.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<Vec<(usize, Scalar)>>] {
        &self.table
    }

    pub fn subalgebra_elements(&self) -> Option<&[AlgebraElement]> {
        self.elements.as_deref()
    }
}

/// Matrix converting coordinates relative to the RREF rows of `span` into
/// coordinates relative to `given` (whose rows span the same space).
fn change_of_basis(span: &linalg::Rref, given: &[Vec<Scalar>]) -> Matrix {
    // columns: coordinates of given[k] in the RREF basis
    let cols: Vec<Vec<Scalar>> = given
        .iter()
        .map(|g| span.coordinates(g).expect("given rows lie in their own span"))
        .collect();
    let m = Matrix::from_columns(&cols);
    invert(&m).expect("basis change is invertible")
}

fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let red = linalg::rref(&rows, 2 * n);
    if red.rank() != n || red.pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(Matrix::from_rows(red.rows.iter().map(|r| r[n..].to_vec()).collect()))
}

fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}
