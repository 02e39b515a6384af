//! Column-structure signatures of balanced polygons.
//!
//! Decision table, tried in this order (the first match wins):
//!
//! | class | signature |
//! |-------|-----------|
//! | d     | `Col(P) = ∅` (reported with `t = 0`) |
//! | a     | six columns, closed under negation, six products |
//! | e     | `{±u, ±v}`, no products |
//! | b     | `{u, ±v, w}`, products exactly `uv = w`, `w(−v) = u` |
//! | c     | `{u, v, w}`, the single product `uv = w` |
//! | d     | all columns share one base edge, no products |
//! | f     | `{u, v}` with different bases, no products |

use serde::{Deserialize, Serialize};

use super::{ColumnError, ColumnStructure};
use crate::corpus;
use crate::exact::{IntMatrix, IntVector};
use crate::polytope::{AffineLatticeMap, Polytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonClass {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl PolygonClass {
    pub const ALL: [PolygonClass; 6] =
        [PolygonClass::A, PolygonClass::B, PolygonClass::C, PolygonClass::D, PolygonClass::E, PolygonClass::F];

    pub fn letter(self) -> char {
        match self {
            PolygonClass::A => 'a',
            PolygonClass::B => 'b',
            PolygonClass::C => 'c',
            PolygonClass::D => 'd',
            PolygonClass::E => 'e',
            PolygonClass::F => 'f',
        }
    }
}

/// Evidence tying a polygon to its model polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectiveWitness {
    /// `map(k·Δ₂) = P`.
    SimplexMultiple { k: i64, map: AffineLatticeMap },
    /// `A·P` has the same normal fan as `model`.
    SameFan { model: String, matrix: IntMatrix },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonClassification {
    pub class: PolygonClass,
    /// Named columns, e.g. `u`, `v`, `-v`, `w`; class d lists `v1..vt`.
    pub labels: Vec<(String, IntVector)>,
    pub witness: Option<ProjectiveWitness>,
}

impl ColumnStructure {
    pub fn classify(&self) -> Result<PolygonClassification, ColumnError> {
        let p = self.polytope();
        if p.ambient_dim() != 2 {
            return Err(ColumnError::NotAPolygon(p.ambient_dim()));
        }
        if !self.is_balanced() {
            return Err(ColumnError::NotBalanced);
        }
        let n = self.len();
        let products = self.products();
        let neg = |i: usize| self.index_of(&-self.vector(i));
        let negation_closed = (0..n).all(|i| neg(i).is_some());
        let label = |name: &str, i: usize| (name.to_string(), self.vector(i).clone());
        let result = |class, labels, witness| Ok(PolygonClassification { class, labels, witness });

        if n == 0 {
            return result(PolygonClass::D, Vec::new(), None);
        }
        if n == 6 && negation_closed && products.len() == 6 {
            let k = p.facet(0).on_facet.len() as i64 - 1;
            let model = corpus::unit_simplex(2).dilate(k);
            let witness = model.integral_affine_equivalent(p).map(|map| ProjectiveWitness::SimplexMultiple { k, map });
            let labels = (0..n).map(|i| label(&format!("c{i}"), i)).collect();
            return result(PolygonClass::A, labels, witness);
        }
        if n == 4 && negation_closed && products.is_empty() {
            let u = 0;
            let v = (1..n).find(|&j| Some(j) != neg(u)).expect("two pairs");
            let labels = vec![label("u", u), label("-u", neg(u).unwrap()), label("v", v), label("-v", neg(v).unwrap())];
            let witness = same_fan_witness(p, &corpus::unit_square());
            return result(PolygonClass::E, labels, witness);
        }
        if n == 4 && products.len() == 2 {
            // v runs over columns in canonical order, so the lexicographically
            // smallest workable v is chosen.
            for v in 0..n {
                let Some(mv) = neg(v) else { continue };
                let rest: Vec<usize> = (0..n).filter(|&i| i != v && i != mv).collect();
                if rest.len() != 2 || rest.iter().any(|&i| neg(i).is_some()) {
                    continue;
                }
                for (u, w) in [(rest[0], rest[1]), (rest[1], rest[0])] {
                    let mut expected = vec![(u, v, w), (w, mv, u)];
                    expected.sort();
                    if products == expected {
                        let labels = vec![label("u", u), label("v", v), label("-v", mv), label("w", w)];
                        let witness = same_fan_witness(p, &corpus::trapezoid());
                        return result(PolygonClass::B, labels, witness);
                    }
                }
            }
        }
        if n == 3 && products.len() == 1 {
            let (u, v, w) = products[0];
            if u != v && v != w && u != w {
                return result(PolygonClass::C, vec![label("u", u), label("v", v), label("w", w)], None);
            }
        }
        let base = self.columns()[0].base;
        if products.is_empty() && self.columns().iter().all(|c| c.base == base) {
            let labels = (0..n).map(|i| label(&format!("v{}", i + 1), i)).collect();
            return result(PolygonClass::D, labels, None);
        }
        if n == 2 && products.is_empty() && self.columns()[0].base != self.columns()[1].base {
            return result(PolygonClass::F, vec![label("u", 0), label("v", 1)], None);
        }
        Err(ColumnError::Unclassified(format!(
            "vertices {:?}, columns {:?}, products {:?}",
            p.vertices().iter().map(ToString::to_string).collect::<Vec<_>>(),
            self.columns().iter().map(|c| c.v.to_string()).collect::<Vec<_>>(),
            products
        )))
    }
}

fn same_fan_witness(p: &Polytope, model: &Polytope) -> Option<ProjectiveWitness> {
    p.fan_equivalence(model).map(|matrix| ProjectiveWitness::SameFan {
        model: model.name().unwrap_or("model").to_string(),
        matrix,
    })
}
