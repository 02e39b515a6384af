use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{Polytope, PolytopeError};
use crate::exact::{echelon_coordinates, hermite_normal_form, lattice_basis, IntMatrix, IntVector};

/// `x ↦ matrix·x + translation`, from ℤ^cols to ℤ^rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineLatticeMap {
    matrix: IntMatrix,
    translation: IntVector,
    /// Exact inverse, present whenever `matrix` is unimodular.
    #[serde(skip)]
    inverse: Option<(IntMatrix, IntVector)>,
}

impl AffineLatticeMap {
    pub fn new(matrix: IntMatrix, translation: IntVector) -> Self {
        assert_eq!(matrix.rows(), translation.dim(), "translation has the wrong dimension");
        let inverse = if matrix.rows() == matrix.cols() {
            matrix.unimodular_inverse().map(|inv| {
                let t = -&inv.apply(&translation);
                (inv, t)
            })
        } else {
            None
        };
        AffineLatticeMap { matrix, translation, inverse }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(IntMatrix::identity(n), IntVector::zeros(n))
    }

    pub fn translation_by(t: &IntVector) -> Self {
        Self::new(IntMatrix::identity(t.dim()), t.clone())
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &IntVector {
        &self.translation
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &IntVector) -> IntVector {
        &self.matrix.apply(x) + &self.translation
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineLatticeMap) -> AffineLatticeMap {
        AffineLatticeMap::new(self.matrix.mul(&inner.matrix), self.apply(&inner.translation))
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse(&self) -> Option<AffineLatticeMap> {
        let (m, t) = self.inverse.clone()?;
        Some(AffineLatticeMap::new(m, t))
    }

    pub fn map_polytope(&self, p: &Polytope) -> Polytope {
        Polytope::from_points(p.vertices().iter().map(|v| self.apply(v))).expect("nonempty")
    }
}

/// Result of moving a polytope onto a full-dimensional lattice polytope
/// whose lattice points generate ℤ^r affinely.
///
/// The lattice generated by `L_P` need not be all of ℤⁿ, so the canonical
/// map runs from the normalized side back into the ambient space; the
/// other direction is only defined on that affine sublattice.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub polytope: Polytope,
    /// ℤ^r → ℤⁿ, injective, carrying the normalized polytope onto the original.
    pub embedding: AffineLatticeMap,
    origin: IntVector,
    basis: Vec<IntVector>,
}

impl Normalization {
    pub fn is_identity(&self) -> bool {
        self.embedding == AffineLatticeMap::identity(self.origin.dim())
    }

    pub fn from_normalized(&self, c: &IntVector) -> IntVector {
        self.embedding.apply(c)
    }

    /// Coordinates of an ambient point, if it lies on the affine lattice of `P`.
    pub fn to_normalized(&self, x: &IntVector) -> Option<IntVector> {
        echelon_coordinates(&self.basis, &(x - &self.origin))
    }
}

impl Polytope {
    /// Moves `self` to ℤ^r, `r = dim`, so that its lattice points affinely
    /// generate ℤ^r. Already-normalized input is returned unchanged with the
    /// identity map.
    pub fn normalize_full_dim(&self) -> Normalization {
        let n = self.ambient_dim();
        let origin = self.lattice_points()[0].clone();
        let diffs: Vec<IntVector> =
            self.lattice_points().iter().map(|x| x - &origin).filter(|d| !d.is_zero()).collect();
        let basis = lattice_basis(&diffs, n);
        if basis.len() == n && basis.iter().enumerate().all(|(i, b)| *b == IntVector::unit(n, i)) {
            return Normalization {
                polytope: self.clone(),
                embedding: AffineLatticeMap::identity(n),
                origin: IntVector::zeros(n),
                basis,
            };
        }
        let r = basis.len();
        let coords = self.lattice_points().iter().map(|x| {
            echelon_coordinates(&basis, &(x - &origin)).expect("lattice point in its own lattice")
        });
        let mut polytope = Polytope::from_points(coords.collect::<Vec<_>>()).expect("nonempty");
        polytope.name = self.name.clone();
        let matrix = if r == 0 {
            IntMatrix::zeros(n, 0)
        } else {
            IntMatrix::from_columns(&basis).expect("uniform basis")
        };
        Normalization { polytope, embedding: AffineLatticeMap::new(matrix, origin.clone()), origin, basis }
    }

    /// Ordered anchors `(vertex, n neighbours)` whose edge vectors are
    /// linearly independent.
    fn anchors(&self) -> Vec<(usize, Vec<usize>)> {
        let n = self.ambient_dim();
        let neighbours = self.neighbours();
        let mut out = Vec::new();
        for (v, adj) in neighbours.iter().enumerate() {
            for tuple in adj.iter().copied().permutations(n) {
                let rows: Vec<IntVector> =
                    tuple.iter().map(|&w| &self.vertices()[w] - &self.vertices()[v]).collect();
                if IntMatrix::from_rows(&rows).unwrap().rank() == n {
                    out.push((v, tuple));
                }
            }
        }
        out
    }

    /// The canonical lattice map attached to an anchor, and the key (sorted
    /// image of the vertex set) it produces.
    fn anchor_frame(&self, anchor: &(usize, Vec<usize>)) -> (AffineLatticeMap, Vec<IntVector>) {
        let (v, tuple) = anchor;
        let base = &self.vertices()[*v];
        let edges: Vec<IntVector> = tuple.iter().map(|&w| &self.vertices()[w] - base).collect();
        let (_, u) = hermite_normal_form(&IntMatrix::from_columns(&edges).unwrap());
        let map = AffineLatticeMap::new(u.clone(), -&u.apply(base));
        let mut key: Vec<IntVector> = self.vertices().iter().map(|x| map.apply(x)).collect();
        key.sort();
        (map, key)
    }

    fn framed_anchors(&self) -> Vec<(AffineLatticeMap, Vec<IntVector>)> {
        self.anchors().iter().map(|a| self.anchor_frame(a)).collect()
    }

    /// Canonical vertex list under integral-affine equivalence: the least
    /// anchored image of the vertex set. Equal for two full-dimensional
    /// polytopes iff they are integral-affinely equivalent.
    pub fn normal_form(&self) -> Result<Vec<IntVector>, PolytopeError> {
        self.require_full_dim()?;
        if self.ambient_dim() == 0 {
            return Ok(vec![IntVector::zeros(0)]);
        }
        Ok(self.framed_anchors().into_iter().map(|(_, k)| k).min().expect("a full-dimensional polytope has anchors"))
    }

    /// A lattice-affine bijection of ℤⁿ carrying `self` onto `other`, if any.
    pub fn integral_affine_equivalent(&self, other: &Polytope) -> Option<AffineLatticeMap> {
        if self.ambient_dim() != other.ambient_dim()
            || !self.is_full_dimensional()
            || !other.is_full_dimensional()
            || self.vertices().len() != other.vertices().len()
            || self.lattice_points().len() != other.lattice_points().len()
        {
            return None;
        }
        if self.ambient_dim() == 0 {
            return Some(AffineLatticeMap::identity(0));
        }
        let mine = self.framed_anchors();
        let (t_p, key) = mine.into_iter().min_by(|a, b| a.1.cmp(&b.1))?;
        let (t_q, _) = other.framed_anchors().into_iter().find(|(_, k)| *k == key)?;
        let map = t_q.inverse().expect("anchor frames are unimodular").compose(&t_p);
        debug_assert_eq!(map.map_polytope(self).vertices(), other.vertices());
        Some(map)
    }

    /// All lattice-affine self-maps of `self`; the first is the identity.
    pub fn symmetries(&self) -> Result<Vec<AffineLatticeMap>, PolytopeError> {
        self.require_full_dim()?;
        let n = self.ambient_dim();
        if n == 0 {
            return Ok(vec![AffineLatticeMap::identity(0)]);
        }
        let framed = self.framed_anchors();
        let (t0, key) = framed.iter().min_by(|a, b| a.1.cmp(&b.1)).cloned().expect("anchors exist");
        let mut maps: Vec<AffineLatticeMap> = framed
            .into_iter()
            .filter(|(_, k)| *k == key)
            .map(|(t, _)| t.inverse().expect("unimodular").compose(&t0))
            .collect();
        maps.sort_by(|a, b| (a.matrix(), a.translation()).cmp(&(b.matrix(), b.translation())));
        maps.dedup();
        let id = AffineLatticeMap::identity(n);
        let pos = maps.iter().position(|m| *m == id).expect("identity is a symmetry");
        maps.swap(0, pos);
        Ok(maps)
    }

    pub(crate) fn require_full_dim(&self) -> Result<(), PolytopeError> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(PolytopeError::NotFullDimensional { dim: self.dim(), ambient: self.ambient_dim() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn v(c: &[i64]) -> IntVector {
        IntVector(c.to_vec())
    }

    #[test]
    fn map_roundtrip() {
        let m = IntMatrix::from_rows(&[v(&[2, 1]), v(&[1, 1])]).unwrap();
        let f = AffineLatticeMap::new(m, v(&[3, -4]));
        let g = f.inverse().unwrap();
        for x in [v(&[0, 0]), v(&[5, -2]), v(&[-7, 11])] {
            assert_eq!(g.apply(&f.apply(&x)), x);
            assert_eq!(f.apply(&g.apply(&x)), x);
        }
        assert_eq!(g.compose(&f), AffineLatticeMap::identity(2));
        let singular = AffineLatticeMap::new(IntMatrix::from_rows(&[v(&[2, 0]), v(&[0, 1])]).unwrap(), v(&[0, 0]));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn normalize_segment() {
        let seg = Polytope::from_points([[0, 0], [2, 0]]).unwrap();
        let norm = seg.normalize_full_dim();
        assert_eq!(norm.polytope.vertices(), &[v(&[0]), v(&[2])]);
        assert_eq!(norm.from_normalized(&v(&[1])), v(&[1, 0]));
        assert_eq!(norm.to_normalized(&v(&[2, 0])), Some(v(&[2])));
        assert_eq!(norm.to_normalized(&v(&[2, 1])), None);
    }

    #[test]
    fn normalize_is_identity_on_generating_polytopes() {
        let t = corpus::unit_simplex(2).dilate(2);
        let norm = t.normalize_full_dim();
        assert!(norm.is_identity());
        assert_eq!(norm.polytope, t);
        let again = norm.polytope.normalize_full_dim();
        assert!(again.is_identity());
    }

    #[test]
    fn normalize_sublattice_polytope() {
        // Lattice points generate the even-sum sublattice of index 2.
        let t = corpus::non_normal_tetrahedron();
        let norm = t.normalize_full_dim();
        assert!(!norm.is_identity());
        assert_eq!(norm.polytope.dim(), 3);
        assert!(norm.polytope.is_unimodular_simplex());
        let back: Vec<IntVector> = norm.polytope.vertices().iter().map(|c| norm.from_normalized(c)).sorted().collect();
        assert_eq!(back, t.vertices());
        assert!(norm.polytope.normalize_full_dim().is_identity());
    }

    #[test]
    fn normalize_tilted_segment_and_point() {
        let seg = Polytope::from_points([[0, 0, 0], [3, 3, 3]]).unwrap();
        let norm = seg.normalize_full_dim();
        assert_eq!(norm.polytope.vertices(), &[v(&[0]), v(&[3])]);
        let pt = Polytope::from_points([[4, 5]]).unwrap();
        let norm = pt.normalize_full_dim();
        assert_eq!(norm.polytope.ambient_dim(), 0);
        assert_eq!(norm.from_normalized(&v(&[])), v(&[4, 5]));
    }

    #[test]
    fn translation_is_found() {
        let p = corpus::hexagon();
        let t = v(&[7, -3]);
        let q = p.translate(&t);
        let map = p.integral_affine_equivalent(&q).unwrap();
        assert_eq!(map.map_polytope(&p), q);
    }

    #[test]
    fn unimodular_triangles_are_equivalent() {
        let a = corpus::unit_simplex(2);
        let b = Polytope::from_points([[0, 0], [1, 0], [1, 1]]).unwrap();
        let map = a.integral_affine_equivalent(&b).unwrap();
        assert!(map.matrix().is_unimodular());
        assert_eq!(map.map_polytope(&a), b);
        assert!(a.integral_affine_equivalent(&a.dilate(2)).is_none());
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric_on_corpus() {
        let all = corpus::all();
        for p in &all {
            assert!(p.integral_affine_equivalent(p).is_some());
            for q in &all {
                let pq = p.integral_affine_equivalent(q);
                let qp = q.integral_affine_equivalent(p);
                assert_eq!(pq.is_some(), qp.is_some());
                if pq.is_some() {
                    assert_eq!(p.lattice_points().len(), q.lattice_points().len());
                    assert_eq!(p.facets().unwrap().len(), q.facets().unwrap().len());
                    assert_eq!(p.normalized_volume(), q.normalized_volume());
                }
            }
        }
    }

    #[test]
    fn sheared_copy_is_equivalent() {
        let p = corpus::quadrilateral();
        let shear = AffineLatticeMap::new(IntMatrix::from_rows(&[v(&[1, 3]), v(&[0, 1])]).unwrap(), v(&[-2, 5]));
        let q = shear.map_polytope(&p);
        let map = p.integral_affine_equivalent(&q).unwrap();
        assert_eq!(map.map_polytope(&p), q);
        assert_eq!(p.normal_form().unwrap(), q.normal_form().unwrap());
        assert!(p.integral_affine_equivalent(&corpus::trapezoid()).is_none());
    }

    #[test]
    fn symmetry_counts() {
        assert_eq!(corpus::unit_simplex(2).symmetries().unwrap().len(), 6);
        assert_eq!(corpus::unit_square().symmetries().unwrap().len(), 8);
        // The trapezoid has the reflection (x, y) ↦ (2 − x − y, y) swapping its parallel edges' ends.
        let trap = corpus::trapezoid().symmetries().unwrap();
        assert_eq!(trap.len(), 2);
        let flip = AffineLatticeMap::new(IntMatrix::from_rows(&[v(&[-1, -1]), v(&[0, 1])]).unwrap(), v(&[2, 0]));
        assert_eq!(trap[1], flip);
        assert_eq!(corpus::unit_simplex(3).symmetries().unwrap().len(), 24);
        assert_eq!(corpus::pyramid().symmetries().unwrap().len(), 8);
        for p in corpus::all() {
            for s in p.symmetries().unwrap() {
                assert_eq!(s.map_polytope(&p), p);
            }
        }
    }
}
