//! Built-in definitions: `UT_2` with its canonical `Z_2` grading under the
//! four acting algebras `UT_2`, `D`, `C` and `F`, plus a few small algebras
//! used as fixtures.

use std::fmt;
use std::str::FromStr;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::format::{self, Definition};
use crate::free::{GenPolynomial, Var};
use crate::group::FiniteGroup;
use crate::multiplier::ActingAlgebra;
use crate::scalar::int;

/// `UT_2` under one of its four acting algebras. Acting bases:
/// full `{1, e22, e12}`, D `{1, e22}`, C `{1, e12}`, F `{1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Full,
    D,
    C,
    F,
}

const UT2_FULL: &str = include_str!("../data/ut2_full.json");
const UT2_D: &str = include_str!("../data/ut2_d.json");
const UT2_C: &str = include_str!("../data/ut2_c.json");
const UT2_F: &str = include_str!("../data/ut2_f.json");

impl Builtin {
    pub const ALL: [Builtin; 4] = [Builtin::Full, Builtin::D, Builtin::C, Builtin::F];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Full => "ut2:full",
            Builtin::D => "ut2:D",
            Builtin::C => "ut2:C",
            Builtin::F => "ut2:F",
        }
    }

    /// The embedded JSON text.
    pub fn source(self) -> &'static str {
        match self {
            Builtin::Full => UT2_FULL,
            Builtin::D => UT2_D,
            Builtin::C => UT2_C,
            Builtin::F => UT2_F,
        }
    }

    pub fn definition(self) -> Definition {
        format::parse_definition(self.source()).expect("embedded definitions are valid")
    }

    /// The generating set of the T-ideal of generalized graded identities,
    /// written in this action's basis. Identities coming from kernel
    /// elements of the action are not listed.
    pub fn generators(self, w: &ActingAlgebra) -> Vec<(String, GenPolynomial)> {
        let y = |i| GenPolynomial::var(Var::y(i));
        let z = |i| GenPolynomial::var(Var::z(i));
        let comm = y(1).mul(w, &y(2)).sub(&y(2).mul(w, &y(1)));
        let z1z2 = z(1).mul(w, &z(2));
        let mut out = vec![("[y1,y2]".to_string(), comm)];
        match self {
            Builtin::Full | Builtin::D => {
                out.push(("w1*y1 - y1*w1".into(), y(1).left_act(w, 1).sub(&y(1).right_act(w, 1))));
                out.push(("z1*w1 - z1".into(), z(1).right_act(w, 1).sub(&z(1))));
                out.push(("w1*z1".into(), z(1).left_act(w, 1)));
            }
            Builtin::C => {
                out.push(("z1*z2".into(), z1z2));
                out.push(("z1*w1".into(), z(1).right_act(w, 1)));
                out.push(("w1*z1".into(), z(1).left_act(w, 1)));
            }
            Builtin::F => out.push(("z1*z2".into(), z1z2)),
        }
        out
    }

    /// Closed form of the total codimension `c_n`.
    pub fn expected_codim(self, n: u32) -> u64 {
        let p = 1u64 << (n - 1);
        let n = n as u64;
        match self {
            Builtin::Full => p * (n + 2) + 2,
            Builtin::D => n * p + 2,
            Builtin::C => p * (n + 2) + 1,
            Builtin::F => n * p + 1,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown builtin {s:?}; expected one of ut2:full, ut2:D, ut2:C, ut2:F"
                ))
            })
    }
}

/// `UT_2` with basis `e11, e22, e12` and degrees `0, 0, 1` in `Z_2`.
pub fn ut2_algebra() -> GradedAlgebra {
    Builtin::Full.definition().algebra
}

/// `D = F e11 + F e22` as a standalone algebra, both basis vectors even.
pub fn diagonal_algebra() -> GradedAlgebra {
    GradedAlgebra::new(
        FiniteGroup::cyclic(2),
        vec![0, 0],
        vec![(0, 0, 0, int(1)), (1, 1, 1, int(1))],
        Some(vec![int(1), int(1)]),
    )
    .expect("valid algebra")
}

/// `C = F 1 + F e12` with basis `1, e12` and degrees `0, 1`.
pub fn algebra_c() -> GradedAlgebra {
    GradedAlgebra::new(
        FiniteGroup::cyclic(2),
        vec![0, 1],
        vec![(0, 0, 0, int(1)), (0, 1, 1, int(1)), (1, 0, 1, int(1))],
        Some(vec![int(1), int(0)]),
    )
    .expect("valid algebra")
}

/// The field `F` as a one-dimensional `Z_2`-graded algebra.
pub fn field_algebra() -> GradedAlgebra {
    GradedAlgebra::new(
        FiniteGroup::cyclic(2),
        vec![0],
        vec![(0, 0, 0, int(1))],
        Some(vec![int(1)]),
    )
    .expect("valid algebra")
}

/// The zero algebra (dimension 0).
pub fn zero_algebra() -> GradedAlgebra {
    GradedAlgebra::new(FiniteGroup::cyclic(2), vec![], vec![], None).expect("valid algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
        assert!("ut3:full".parse::<Builtin>().is_err());
    }

    #[test]
    fn action_dimensions() {
        let dims: Vec<usize> = Builtin::ALL.iter().map(|b| b.definition().action.dim()).collect();
        assert_eq!(dims, vec![3, 2, 2, 1]);
    }

    #[test]
    fn closed_forms() {
        let full: Vec<u64> = (1..=5).map(|n| Builtin::Full.expected_codim(n)).collect();
        assert_eq!(full, vec![5, 10, 22, 50, 114]);
        let f: Vec<u64> = (1..=6).map(|n| Builtin::F.expected_codim(n)).collect();
        assert_eq!(f, vec![2, 5, 13, 33, 81, 193]);
        assert_eq!(Builtin::D.expected_codim(3), 14);
        assert_eq!(Builtin::C.expected_codim(1), 4);
    }
}
