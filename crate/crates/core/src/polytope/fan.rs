use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use itertools::Itertools;

use super::{AffineLatticeMap, Polytope, PolytopeError};
use crate::exact::{primitive_part, IntMatrix, IntVector};

/// The maximal normal cone at one vertex: all functionals `φ` with
/// `φ(vertex − x) ≥ 0` for the listed primitive edge directions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NormalCone {
    pub vertex: IntVector,
    /// Sorted primitive `vertex − x` over neighbouring vertices `x`.
    pub generators: Vec<IntVector>,
}

impl NormalCone {
    /// `φ` attains its maximum over `P` at this vertex.
    pub fn contains(&self, phi: &IntVector) -> bool {
        self.generators.iter().all(|g| phi.dot(g) >= 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFan {
    pub cones: Vec<NormalCone>,
}

impl NormalFan {
    /// The cones as bare generator sets, which is what fan equality compares.
    pub fn shape(&self) -> BTreeSet<Vec<IntVector>> {
        self.cones.iter().map(|c| c.generators.clone()).collect()
    }

    pub fn same_fan(&self, other: &NormalFan) -> bool {
        self.shape() == other.shape()
    }

    pub fn cones_containing(&self, phi: &IntVector) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cones[i].contains(phi)).collect()
    }
}

impl Polytope {
    pub fn normal_fan(&self) -> Result<NormalFan, PolytopeError> {
        self.require_full_dim()?;
        let neighbours = self.neighbours();
        let cones = self
            .vertices()
            .iter()
            .zip(&neighbours)
            .map(|(v, adj)| {
                let mut generators: Vec<IntVector> =
                    adj.iter().map(|&j| primitive_part(&(v - &self.vertices()[j])).expect("distinct vertices")).collect();
                generators.sort();
                NormalCone { vertex: v.clone(), generators }
            })
            .collect();
        Ok(NormalFan { cones })
    }

    /// Same facet normals, and the same incidence pattern of normals at the
    /// vertices. For full-dimensional polytopes this is equality of normal
    /// fans.
    pub fn projectively_equivalent(&self, other: &Polytope) -> Result<bool, PolytopeError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(PolytopeError::AmbientMismatch(self.ambient_dim(), other.ambient_dim()));
        }
        let normals = |p: &Polytope| -> Result<BTreeSet<IntVector>, PolytopeError> {
            Ok(p.facets()?.iter().map(|f| f.normal.clone()).collect())
        };
        if normals(self)? != normals(other)? {
            return Ok(false);
        }
        Ok(self.vertex_normal_pattern() == other.vertex_normal_pattern())
    }

    /// A unimodular linear map `A` with `A·self` projectively equivalent to
    /// `other`, found by sending the edge directions at some vertex of
    /// `self` onto those at the first simple vertex of `other`.
    pub fn fan_equivalence(&self, other: &Polytope) -> Option<IntMatrix> {
        let n = self.ambient_dim();
        if n != other.ambient_dim() || !self.is_full_dimensional() || !other.is_full_dimensional() {
            return None;
        }
        let directions = |p: &Polytope, v: usize, adj: &[usize]| -> Vec<IntVector> {
            adj.iter().map(|&j| primitive_part(&(&p.vertices()[j] - &p.vertices()[v])).expect("distinct")).collect()
        };
        let other_adj = other.neighbours();
        let target_vertex = (0..other.vertices().len()).find(|&i| other_adj[i].len() == n)?;
        let target = IntMatrix::from_columns(&directions(other, target_vertex, &other_adj[target_vertex])).ok()?;
        let adj = self.neighbours();
        for (v, around) in adj.iter().enumerate() {
            if around.len() != n {
                continue;
            }
            for order in around.iter().copied().permutations(n) {
                let source = IntMatrix::from_columns(&directions(self, v, &order)).ok()?;
                let Some(a) = solve_integral(&source, &target) else { continue };
                if !a.is_unimodular() {
                    continue;
                }
                let image = AffineLatticeMap::new(a.clone(), IntVector::zeros(n)).map_polytope(self);
                if image.projectively_equivalent(other).unwrap_or(false) {
                    return Some(a);
                }
            }
        }
        None
    }

    fn vertex_normal_pattern(&self) -> Vec<Vec<IntVector>> {
        let mut pattern: Vec<Vec<IntVector>> = self
            .vertices()
            .iter()
            .map(|v| self.incident_facets(v).into_iter().map(|i| self.facet(i).normal.clone()).collect())
            .collect();
        pattern.sort();
        pattern
    }
}

/// Integer `A` with `A·source = target`, if `source` is invertible and the
/// solution is integral.
fn solve_integral(source: &IntMatrix, target: &IntMatrix) -> Option<IntMatrix> {
    let n = source.rows();
    let det = source.determinant();
    if det == 0 {
        return None;
    }
    // adj(S)[i][j] = (−1)^{i+j} det(S without row j and column i)
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<IntVector> = (0..n)
                .filter(|&r| r != j)
                .map(|r| IntVector((0..n).filter(|&c| c != i).map(|c| source[(r, c)]).collect()))
                .collect();
            let m = if minor.is_empty() { 1 } else { IntMatrix::from_rows(&minor).unwrap().determinant() };
            adj[(i, j)] = if (i + j) % 2 == 0 { m } else { -m };
        }
    }
    let scaled = target.mul(&adj);
    let mut out = IntMatrix::zeros(scaled.rows(), scaled.cols());
    for i in 0..scaled.rows() {
        for j in 0..scaled.cols() {
            if scaled[(i, j)] % det != 0 {
                return None;
            }
            out[(i, j)] = scaled[(i, j)] / det;
        }
    }
    Some(out)
}
