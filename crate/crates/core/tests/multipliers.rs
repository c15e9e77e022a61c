mod common;

use gpilab_core::builtins::ut2_algebra;
use gpilab_core::linalg::{self, Matrix};
use gpilab_core::multiplier::{grade_component, grading_of_m, inner_multiplier, is_multiplier, multiplier_algebra, Multiplier};
use gpilab_core::scalar::{int, Scalar};
use gpilab_core::GradedAlgebra;
use proptest::prelude::*;

use common::*;

fn reconstructs(a: &GradedAlgebra, m: &Multiplier) -> bool {
    let sum = (0..a.group().order())
        .map(|g| grade_component(a, m, g).unwrap())
        .fold(Multiplier::zero(a.dim()), |acc, part| acc.add(&part));
    &sum == m
}

fn components_are_multipliers(a: &GradedAlgebra, m: &Multiplier) -> bool {
    (0..a.group().order()).all(|g| {
        let part = grade_component(a, m, g).unwrap();
        is_multiplier(a, &part) && (part.is_zero() || part.homogeneous_degree(a) == Some(g))
    })
}

#[test]
fn ut2_multiplier_algebra() {
    let a = ut2_algebra();
    let basis = multiplier_algebra(&a);
    assert_eq!(basis.len(), 3);
    let split: Vec<usize> = grading_of_m(&a).iter().map(Vec::len).collect();
    assert_eq!(split, vec![2, 1]);
    for m in &basis {
        assert!(reconstructs(&a, m));
        assert!(components_are_multipliers(&a, m));
    }
}

#[test]
fn ut2_inner_multipliers_are_a_graded_isomorphism() {
    let a = ut2_algebra();
    let n = a.dim();
    let images: Vec<Multiplier> = (0..n).map(|i| inner_multiplier(&a, &a.basis_element(i))).collect();
    let flat: Vec<Vec<Scalar>> = images.iter().map(Multiplier::flatten).collect();
    assert_eq!(linalg::rank(&flat, 2 * n * n), n);
    let m_basis: Vec<Vec<Scalar>> = multiplier_algebra(&a).iter().map(Multiplier::flatten).collect();
    let span = linalg::rref(&m_basis, 2 * n * n);
    for (i, img) in images.iter().enumerate() {
        assert!(span.contains(&img.flatten()));
        assert_eq!(img.homogeneous_degree(&a), Some(a.degree(i)));
    }
    // structure constants: Φ(e_i) Φ(e_j) = Σ c_ij^k Φ(e_k)
    for i in 0..n {
        for j in 0..n {
            let lhs = images[i].product(&images[j]);
            let rhs = a
                .basis_product(i, j)
                .iter()
                .fold(Multiplier::zero(n), |acc, (k, c)| acc.add(&images[*k].scale(c)));
            assert_eq!(lhs, rhs, "e{i} e{j}");
        }
    }
    assert_eq!(inner_multiplier(&a, a.unit().unwrap()), Multiplier::identity(n));
}

#[test]
fn non_multiplier_is_rejected() {
    let a = ut2_algebra();
    let mut right = Matrix::identity(3);
    right[(0, 2)] = int(1);
    let bogus = Multiplier::new(right, Matrix::identity(3));
    assert!(!is_multiplier(&a, &bogus));
    assert!(grade_component(&a, &bogus, 0).is_err());
}

#[test]
fn random_four_dimensional_reconstruction() {
    let mut checked = 0;
    for seed in 0..100u64 {
        let mut r = rng(seed);
        let a = random_algebra(&mut r, 4);
        let basis = multiplier_algebra(&a);
        assert!(!basis.is_empty());
        let m = basis
            .iter()
            .fold(Multiplier::zero(4), |acc, b| acc.add(&b.scale(&random_scalar(&mut r))));
        assert!(is_multiplier(&a, &m));
        assert!(reconstructs(&a, &m), "seed {seed}");
        assert!(components_are_multipliers(&a, &m), "seed {seed}");
        checked += 1;
    }
    assert_eq!(checked, 100);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplier_axioms_hold_on_random_elements(seed in any::<u64>()) {
        common::props::multiplier_axioms(seed).map_err(TestCaseError::fail)?;
    }
}
