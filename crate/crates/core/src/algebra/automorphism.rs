use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{binomial, AlgebraElement, AlgebraError, Monomial, Semigroup};
use crate::columns::ColumnStructure;
use crate::exact::{CoeffRing, IntVector, RingMatrix};
use crate::polytope::{AffineLatticeMap, FacetForm, Polytope};

/// A generator of the automorphism group, kept so words can be inverted.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator<R: CoeffRing> {
    /// `x ↦ (1 + λv)^{ht(x)} x`, `ht` the height over `base`.
    Elementary { v: IntVector, base: FacetForm, lambda: R },
    /// `(ξ₁, …, ξₙ₊₁)`: `eᵢ ↦ ξᵢ eᵢ`.
    Torus(Vec<R>),
    /// An integral affine self-map of `P`.
    Symmetry(AffineLatticeMap),
}

impl<R: CoeffRing> Generator<R> {
    pub fn inverse(&self) -> Generator<R> {
        match self {
            Generator::Elementary { v, base, lambda } => {
                Generator::Elementary { v: v.clone(), base: base.clone(), lambda: lambda.neg() }
            }
            Generator::Torus(xi) => Generator::Torus(xi.iter().map(|x| x.inverse().expect("torus entries are units")).collect()),
            Generator::Symmetry(map) => Generator::Symmetry(map.inverse().expect("symmetries are invertible")),
        }
    }

    /// Degree-1 matrix; column `j` is the image of the `j`-th lattice point.
    fn matrix(&self, p: &Polytope) -> RingMatrix<R> {
        let pts = p.lattice_points();
        let m = pts.len();
        let idx = |y: &IntVector| p.lattice_point_index(y);
        match self {
            Generator::Elementary { v, base, lambda } => {
                let mut out = RingMatrix::<R>::zeros(m, m);
                for (j, x) in pts.iter().enumerate() {
                    let h = base.value(x) - base.offset;
                    let mut power = R::one();
                    for k in 0..=h {
                        let y = x + &v.scale(k);
                        let i = idx(&y).unwrap_or_else(|| panic!("{x} + {k}·{v} leaves the polytope"));
                        let c = power.mul(&R::from_i64(binomial(h, k)));
                        out.set(i, j, out.get(i, j).add(&c));
                        power = power.mul(lambda);
                    }
                }
                out
            }
            Generator::Torus(xi) => {
                let mut out = RingMatrix::zeros(m, m);
                let n = p.ambient_dim();
                for (j, x) in pts.iter().enumerate() {
                    let mut entry = xi[n].clone();
                    for (c, xc) in xi.iter().zip(&x.0) {
                        let base = if *xc < 0 { c.inverse().expect("torus entries are units") } else { c.clone() };
                        entry = entry.mul(&base.pow(xc.unsigned_abs() as u32));
                    }
                    out.set(j, j, entry);
                }
                out
            }
            Generator::Symmetry(map) => {
                let mut out = RingMatrix::zeros(m, m);
                for (j, x) in pts.iter().enumerate() {
                    let i = idx(&map.apply(x)).expect("symmetries preserve the lattice points");
                    out.set(i, j, R::one());
                }
                out
            }
        }
    }

    /// Image of a monomial of any degree, from the closed formula.
    pub fn apply_closed_form(&self, m: &Monomial) -> AlgebraElement<R> {
        let d = m.degree as i64;
        match self {
            Generator::Elementary { v, base, lambda } => {
                let h = base.value(&m.point) - d * base.offset;
                let mut out = AlgebraElement::zero();
                let mut power = R::one();
                for k in 0..=h {
                    out.add_term(Monomial::new(&m.point + &v.scale(k), m.degree), power.mul(&R::from_i64(binomial(h, k))));
                    power = power.mul(lambda);
                }
                out
            }
            Generator::Torus(xi) => {
                let n = xi.len() - 1;
                let mut c = xi[n].pow(m.degree);
                for (x, zc) in xi.iter().zip(&m.point.0) {
                    let base = if *zc < 0 { x.inverse().expect("unit") } else { x.clone() };
                    c = c.mul(&base.pow(zc.unsigned_abs() as u32));
                }
                AlgebraElement::monomial(m.clone(), c)
            }
            Generator::Symmetry(map) => {
                // (z, d) ↦ (A z + d t, d)
                let z = &map.matrix().apply(&m.point) + &map.translation().scale(d);
                AlgebraElement::monomial(Monomial::new(z, m.degree), R::one())
            }
        }
    }
}

impl<R: CoeffRing> fmt::Display for Generator<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Elementary { v, lambda, .. } => write!(f, "e{v}^({})", lambda.render()),
            Generator::Torus(xi) => write!(f, "t({})", xi.iter().map(|x| x.render()).collect::<Vec<_>>().join(", ")),
            Generator::Symmetry(map) => write!(f, "σ[{} + {}]", map.matrix(), map.translation()),
        }
    }
}

/// A graded automorphism of `R[P]` given by its degree-1 matrix, together
/// with a word in the generators and a word for its inverse.
///
/// Equality compares matrices only, which is faithful because `R[P]` is
/// generated in degree 1.
#[derive(Clone, Debug)]
pub struct GradedAutomorphism<R: CoeffRing> {
    polytope: Arc<Polytope>,
    matrix: RingMatrix<R>,
    word: Vec<Generator<R>>,
    inverse_word: Vec<Generator<R>>,
}

impl<R: CoeffRing> PartialEq for GradedAutomorphism<R> {
    fn eq(&self, other: &Self) -> bool {
        self.polytope == other.polytope && self.matrix == other.matrix
    }
}

impl<R: CoeffRing> GradedAutomorphism<R> {
    pub fn identity(p: &Polytope) -> Self {
        let m = p.lattice_points().len();
        GradedAutomorphism { polytope: Arc::new(p.clone()), matrix: RingMatrix::identity(m), word: vec![], inverse_word: vec![] }
    }

    fn from_generator(polytope: Arc<Polytope>, g: Generator<R>) -> Self {
        let matrix = g.matrix(&polytope);
        let inverse_word = vec![g.inverse()];
        GradedAutomorphism { polytope, matrix, word: vec![g], inverse_word }
    }

    /// A bare matrix with no word; only for exercising the checks.
    #[cfg(test)]
    pub(crate) fn from_raw_matrix(p: &Polytope, matrix: RingMatrix<R>) -> Self {
        GradedAutomorphism { polytope: Arc::new(p.clone()), matrix, word: vec![], inverse_word: vec![] }
    }

    /// `e_v^λ` for the column vector `v` of `cs`.
    pub fn elementary(cs: &ColumnStructure, v: &IntVector, lambda: R) -> Result<Self, AlgebraError> {
        let i = cs.index_of(v).ok_or_else(|| AlgebraError::NotAColumn(v.clone()))?;
        let p = cs.polytope();
        let base = p.facet(cs.columns()[i].base).clone();
        Ok(Self::from_generator(Arc::new(p.clone()), Generator::Elementary { v: v.clone(), base, lambda }))
    }

    /// Diagonal action `(z, 1) ↦ ξ^z ξₙ₊₁ (z, 1)`.
    pub fn torus(p: &Polytope, xi: Vec<R>) -> Result<Self, AlgebraError> {
        let expected = p.ambient_dim() + 1;
        if xi.len() != expected {
            return Err(AlgebraError::WrongArity { expected, got: xi.len() });
        }
        if let Some(bad) = xi.iter().find(|x| x.inverse().is_none()) {
            return Err(AlgebraError::NonUnit(bad.render()));
        }
        Ok(Self::from_generator(Arc::new(p.clone()), Generator::Torus(xi)))
    }

    pub fn symmetry(p: &Polytope, map: AffineLatticeMap) -> Result<Self, AlgebraError> {
        let preserves = map.is_invertible()
            && map.source_dim() == p.ambient_dim()
            && map.target_dim() == p.ambient_dim()
            && p.lattice_points().iter().all(|x| p.lattice_point_index(&map.apply(x)).is_some());
        if !preserves {
            return Err(AlgebraError::NotASymmetry);
        }
        Ok(Self::from_generator(Arc::new(p.clone()), Generator::Symmetry(map)))
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn matrix(&self) -> &RingMatrix<R> {
        &self.matrix
    }

    pub fn word(&self) -> &[Generator<R>] {
        &self.word
    }

    pub fn inverse_word(&self) -> &[Generator<R>] {
        &self.inverse_word
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `self ∘ other`: matrix `M_self · M_other`, words concatenated.
    pub fn compose(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.polytope != other.polytope {
            return Err(AlgebraError::PolytopeMismatch);
        }
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        let mut inverse_word = other.inverse_word.clone();
        inverse_word.extend(self.inverse_word.iter().cloned());
        Ok(GradedAutomorphism { polytope: self.polytope.clone(), matrix: self.matrix.mul(&other.matrix), word, inverse_word })
    }

    /// Inverse from the stored inverse word, checked against the matrix.
    pub fn invert(&self) -> Self {
        let mut matrix = RingMatrix::identity(self.matrix.rows());
        for g in &self.inverse_word {
            matrix = matrix.mul(&g.matrix(&self.polytope));
        }
        assert!(self.matrix.mul(&matrix).is_identity(), "inverse word does not invert {}", self.render_word());
        GradedAutomorphism {
            polytope: self.polytope.clone(),
            matrix,
            word: self.inverse_word.clone(),
            inverse_word: self.word.clone(),
        }
    }

    /// `[a, b] = a ∘ b ∘ a⁻¹ ∘ b⁻¹`.
    pub fn commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compose(other)?.compose(&self.invert())?.compose(&other.invert())
    }

    pub fn render_word(&self) -> String {
        if self.word.is_empty() {
            return "1".into();
        }
        self.word.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ∘ ")
    }

    /// Image of a degree-1 monomial, as an algebra element.
    pub fn image_of_point(&self, j: usize) -> AlgebraElement<R> {
        let mut out = AlgebraElement::zero();
        for (i, x) in self.polytope.lattice_points().iter().enumerate() {
            out.add_term(Monomial::new(x.clone(), 1), self.matrix.get(i, j).clone());
        }
        out
    }

    /// Image of a monomial, multiplying degree-1 images along one
    /// decomposition. `None` if the monomial is not in `S_P`.
    pub fn apply(&self, sg: &mut Semigroup<'_>, m: &Monomial) -> Option<AlgebraElement<R>> {
        let parts = sg.decompose(&m.point, m.degree)?;
        let zero = IntVector::zeros(self.polytope.ambient_dim());
        let mut out = AlgebraElement::monomial(Monomial::new(zero, 0), R::one());
        for j in parts {
            out = out.mul(&self.image_of_point(j));
        }
        Some(out)
    }

    /// Checks that the degree-1 action extends multiplicatively: all ways
    /// of writing a monomial of degree `2..=max_degree` as a product of
    /// degree-1 monomials give the same image. Returns the first monomial
    /// where two decompositions disagree.
    pub fn degree_consistency(&self, max_degree: u32) -> Result<(), Monomial> {
        let images: Vec<AlgebraElement<R>> = (0..self.polytope.lattice_points().len()).map(|j| self.image_of_point(j)).collect();
        let pts = self.polytope.lattice_points();
        let mut seen: HashMap<Monomial, AlgebraElement<R>> = HashMap::new();
        // Depth-first over non-decreasing index sequences, carrying the product.
        let mut stack: Vec<(usize, Monomial, AlgebraElement<R>)> =
            (0..pts.len()).map(|j| (j, Monomial::new(pts[j].clone(), 1), images[j].clone())).collect();
        while let Some((last, m, img)) = stack.pop() {
            if m.degree >= 2 {
                match seen.get(&m) {
                    Some(prev) if *prev != img => return Err(m),
                    Some(_) => {}
                    None => {
                        seen.insert(m.clone(), img.clone());
                    }
                }
            }
            if m.degree < max_degree {
                for j in last..pts.len() {
                    stack.push((j, m.mul(&Monomial::new(pts[j].clone(), 1)), img.mul(&images[j])));
                }
            }
        }
        Ok(())
    }
}
