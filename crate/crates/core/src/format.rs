//! JSON algebra-definition files and their canonical serialization.
//!
//! ```json
//! {
//!   "group": {"labels": ["0", "1"], "table": [[0, 1], [1, 0]], "identity": 0},
//!   "algebra": {"dim": 3, "degrees": [0, 0, 1], "unit": ["1", "1", "0"],
//!               "structure": [[0, 0, 0, "1"], [0, 2, 2, "1"]]},
//!   "action": {"kind": "subalgebra", "basis": [["1", "1", "0"]]},
//!   "wedderburn": {"components": [[["1", "0", "0"]]], "radical": [["0", "0", "1"]]}
//! }
//! ```
//!
//! Scalars are written as `"p/q"` strings; plain integers are accepted on
//! input. `action` defaults to the scalar action and `wedderburn` is optional.

use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exponent::WedderburnData;
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::multiplier::{ActingAlgebra, Multiplier};
use crate::scalar::{self, Scalar};

/// A rational that serializes as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Scalar);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&scalar::to_canonical(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Rat(scalar::int(n))),
            Raw::Text(t) => scalar::parse(&t).map(Rat).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    pub degrees: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Rat>>,
    pub structure: Vec<(usize, usize, usize, Rat)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    #[serde(rename = "R")]
    pub right: Vec<Vec<Rat>>,
    #[serde(rename = "L")]
    pub left: Vec<Vec<Rat>>,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ActionJson {
    Subalgebra { basis: Vec<Vec<Rat>> },
    Multipliers { pairs: Vec<PairJson> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WedderburnJson {
    pub components: Vec<Vec<Vec<Rat>>>,
    pub radical: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DefinitionJson {
    pub group: GroupJson,
    pub algebra: AlgebraJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wedderburn: Option<WedderburnJson>,
}

/// A validated algebra together with its acting algebra and optional
/// Wedderburn data.
#[derive(Clone, Debug)]
pub struct Definition {
    pub algebra: GradedAlgebra,
    pub action: ActingAlgebra,
    pub wedderburn: Option<WedderburnData>,
}

fn scalars(v: &[Rat]) -> Vec<Scalar> {
    v.iter().map(|r| r.0.clone()).collect()
}

fn rats(v: &[Scalar]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn element(a: &GradedAlgebra, v: &[Rat]) -> Result<AlgebraElement> {
    a.element(scalars(v))
}

fn matrix(dim: usize, rows: &[Vec<Rat>], what: &str) -> Result<Matrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Format(format!("{what} must be a {dim}x{dim} matrix")));
    }
    if dim == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    Ok(Matrix::from_rows(rows.iter().map(|r| scalars(r)).collect()))
}

fn matrix_json(m: &Matrix) -> Vec<Vec<Rat>> {
    (0..m.rows()).map(|i| rats(m.row(i))).collect()
}

impl DefinitionJson {
    pub fn build(&self) -> Result<Definition> {
        let g = &self.group;
        let group = FiniteGroup::new(g.labels.clone(), g.table.clone(), g.identity)?;
        let al = &self.algebra;
        if al.degrees.len() != al.dim {
            return Err(Error::Format(format!(
                "algebra.degrees has {} entries but dim is {}",
                al.degrees.len(),
                al.dim
            )));
        }
        let entries = al
            .structure
            .iter()
            .map(|(i, j, k, c)| (*i, *j, *k, c.0.clone()))
            .collect();
        let unit = al.unit.as_ref().map(|u| scalars(u));
        let algebra = GradedAlgebra::new(group, al.degrees.clone(), entries, unit)?;
        let action = match &self.action {
            None => ActingAlgebra::scalar(&algebra),
            Some(ActionJson::Subalgebra { basis }) => {
                let basis = basis
                    .iter()
                    .map(|v| element(&algebra, v))
                    .collect::<Result<Vec<_>>>()?;
                ActingAlgebra::from_subalgebra(&algebra, &basis)?
            }
            Some(ActionJson::Multipliers { pairs }) => {
                let dim = algebra.dim();
                let pairs = pairs
                    .iter()
                    .map(|p| {
                        Ok((
                            Multiplier::new(matrix(dim, &p.right, "R")?, matrix(dim, &p.left, "L")?),
                            p.degree,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ActingAlgebra::from_multipliers(&algebra, pairs)?
            }
        };
        let wedderburn = match &self.wedderburn {
            None => None,
            Some(w) => {
                let components = w
                    .components
                    .iter()
                    .map(|c| c.iter().map(|v| element(&algebra, v)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let radical = w
                    .radical
                    .iter()
                    .map(|v| element(&algebra, v))
                    .collect::<Result<Vec<_>>>()?;
                let wd = WedderburnData {
                    components,
                    radical,
                };
                wd.validate(&algebra)?;
                Some(wd)
            }
        };
        Ok(Definition {
            algebra,
            action,
            wedderburn,
        })
    }
}

pub fn group_json(g: &FiniteGroup) -> GroupJson {
    GroupJson {
        labels: g.labels().to_vec(),
        table: g.table().to_vec(),
        identity: g.identity(),
    }
}

pub fn algebra_json(a: &GradedAlgebra) -> AlgebraJson {
    AlgebraJson {
        dim: a.dim(),
        degrees: a.degrees().to_vec(),
        unit: a.unit().map(|u| rats(&u.coords)),
        structure: a
            .structure_entries()
            .into_iter()
            .map(|(i, j, k, c)| (i, j, k, Rat(c)))
            .collect(),
    }
}

/// The action in its original form when it came from a subalgebra.
pub fn action_json(w: &ActingAlgebra) -> ActionJson {
    match w.subalgebra_elements() {
        Some(els) => ActionJson::Subalgebra {
            basis: els.iter().map(|e| rats(&e.coords)).collect(),
        },
        None => action_as_multipliers(w),
    }
}

pub fn action_as_multipliers(w: &ActingAlgebra) -> ActionJson {
    ActionJson::Multipliers {
        pairs: w
            .basis()
            .iter()
            .zip(w.degrees())
            .map(|(m, &d)| PairJson {
                right: matrix_json(&m.right),
                left: matrix_json(&m.left),
                degree: d,
            })
            .collect(),
    }
}

pub fn wedderburn_json(wd: &WedderburnData) -> WedderburnJson {
    WedderburnJson {
        components: wd
            .components
            .iter()
            .map(|c| c.iter().map(|e| rats(&e.coords)).collect())
            .collect(),
        radical: wd.radical.iter().map(|e| rats(&e.coords)).collect(),
    }
}

impl Definition {
    pub fn to_json(&self) -> DefinitionJson {
        DefinitionJson {
            group: group_json(self.algebra.group()),
            algebra: algebra_json(&self.algebra),
            action: Some(action_json(&self.action)),
            wedderburn: self.wedderburn.as_ref().map(wedderburn_json),
        }
    }

    /// Hex SHA-256 identifying the algebra and its action.
    pub fn content_hash(&self) -> String {
        content_hash(&self.algebra, &self.action, "")
    }
}

pub fn parse_definition(text: &str) -> Result<Definition> {
    let raw: DefinitionJson = serde_json::from_str(text)?;
    raw.build()
}

pub fn load_definition(path: &Path) -> Result<Definition> {
    parse_definition(&std::fs::read_to_string(path)?)
}

/// Compact canonical JSON of the group and algebra.
pub fn canonical_algebra_json(a: &GradedAlgebra) -> String {
    #[derive(Serialize)]
    struct Canon {
        group: GroupJson,
        algebra: AlgebraJson,
    }
    serde_json::to_string(&Canon {
        group: group_json(a.group()),
        algebra: algebra_json(a),
    })
    .expect("serializable")
}

/// Compact canonical JSON of the action, always in multiplier form so that
/// equal actions hash equally regardless of how they were specified.
pub fn canonical_action_json(w: &ActingAlgebra) -> String {
    serde_json::to_string(&action_as_multipliers(w)).expect("serializable")
}

/// SHA-256 over the canonical algebra JSON, the canonical action JSON and
/// `extra`, separated by newlines.
pub fn content_hash(a: &GradedAlgebra, w: &ActingAlgebra, extra: &str) -> String {
    let mut h = Sha256::new();
    h.update(canonical_algebra_json(a).as_bytes());
    h.update(b"\n");
    h.update(canonical_action_json(w).as_bytes());
    h.update(b"\n");
    h.update(extra.as_bytes());
    hex::encode(h.finalize())
}
