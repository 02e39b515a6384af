//! The polytopal algebra `R[P]` and its graded automorphisms.
//!
//! `R[P]` is the semigroup ring of `S_P ⊂ ℤⁿ⁺¹`, the semigroup generated
//! by `(x, 1)` for `x ∈ L_P`. It is generated in degree 1, so a graded
//! automorphism is determined by where it sends the degree-1 monomials;
//! [`GradedAutomorphism`] stores exactly that matrix and derives the
//! action in higher degrees.

mod automorphism;
mod steinberg;
mod symmetry;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::columns::ColumnError;
use crate::exact::{CoeffRing, IntVector};
use crate::polytope::{Polytope, PolytopeError};

pub use automorphism::{Generator, GradedAutomorphism};
pub use steinberg::{
    verify_afemb, verify_steinberg, AfembReport, PairCheck, PairStatus, Presentation, PresentationGenerator, Relation,
    SteinbergReport,
};
pub use symmetry::{column_inversion, inversion_subgroup, sigma_group, InversionReport, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Columns(#[from] ColumnError),
    #[error("automorphisms belong to different polytopes")]
    PolytopeMismatch,
    #[error("{0} is not a column vector")]
    NotAColumn(IntVector),
    #[error("{0} is a column vector but its negative is not")]
    MissingNegative(IntVector),
    #[error("torus parameter {0} is not a unit")]
    NonUnit(String),
    #[error("torus needs {expected} parameters, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("affine map does not preserve the polytope")]
    NotASymmetry,
}

/// `(z, d) ∈ ℤⁿ × ℤ₊`, a monomial of `R[P]` when it lies in `S_P`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub point: IntVector,
    pub degree: u32,
}

impl Monomial {
    pub fn new(point: IntVector, degree: u32) -> Self {
        Monomial { point, degree }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { point: &self.point + &other.point, degree: self.degree + other.degree }
    }
}

/// Finite `R`-linear combination of monomials; never stores zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<R: CoeffRing> {
    terms: BTreeMap<Monomial, R>,
}

impl<R: CoeffRing> AlgebraElement<R> {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial, c: R) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: R) {
        let sum = match self.terms.remove(&m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a.mul(b));
            }
        }
        out
    }
}

/// Membership oracle for `S_P`, memoized per polytope.
///
/// `(z, d) ∈ S_P` iff `d = 0` and `z = 0`, or `(z − x, d − 1) ∈ S_P` for
/// some `x ∈ L_P`. The recursion is cut off outside the cone `d·P`.
pub struct Semigroup<'a> {
    polytope: &'a Polytope,
    memo: HashMap<(IntVector, u32), bool>,
}

impl<'a> Semigroup<'a> {
    pub fn new(polytope: &'a Polytope) -> Self {
        Semigroup { polytope, memo: HashMap::new() }
    }

    pub fn polytope(&self) -> &Polytope {
        self.polytope
    }

    /// `z ∈ d·P`.
    pub fn in_cone(&self, z: &IntVector, d: u32) -> bool {
        let p = self.polytope;
        if d == 0 {
            return z.is_zero();
        }
        match p.facets() {
            Ok(facets) => (0..facets.len()).all(|f| p.height(f, z, d as i64) >= 0),
            // Lower-dimensional polytopes: fall back to the lattice points.
            Err(_) => d == 1 && p.lattice_point_index(z).is_some(),
        }
    }

    pub fn contains(&mut self, z: &IntVector, d: u32) -> bool {
        if z.dim() != self.polytope.ambient_dim() || !self.in_cone(z, d) {
            return false;
        }
        if d <= 1 {
            return d == 0 || self.polytope.lattice_point_index(z).is_some();
        }
        if let Some(&known) = self.memo.get(&(z.clone(), d)) {
            return known;
        }
        let found = self.polytope.lattice_points().iter().any(|x| self.contains(&(z - x), d - 1));
        self.memo.insert((z.clone(), d), found);
        found
    }

    /// Indices of `d` lattice points summing to `z`, if any.
    pub fn decompose(&mut self, z: &IntVector, d: u32) -> Option<Vec<usize>> {
        if !self.contains(z, d) {
            return None;
        }
        let mut out = Vec::with_capacity(d as usize);
        let mut rest = z.clone();
        for k in (1..=d).rev() {
            let i = (0..self.polytope.lattice_points().len())
                .find(|&i| self.contains(&(&rest - &self.polytope.lattice_points()[i]), k - 1))
                .expect("membership was established");
            rest = &rest - &self.polytope.lattice_points()[i];
            out.push(i);
        }
        Some(out)
    }

    /// All `z` with `(z, d) ∈ S_P`, built as iterated sums of lattice points.
    pub fn layer(&self, d: u32) -> BTreeSet<IntVector> {
        let mut layer: BTreeSet<IntVector> = BTreeSet::from([IntVector::zeros(self.polytope.ambient_dim())]);
        for _ in 0..d {
            layer = layer.iter().flat_map(|z| self.polytope.lattice_points().iter().map(move |x| z + x)).collect();
        }
        layer
    }
}

pub fn sp_membership(p: &Polytope, z: &IntVector, d: u32) -> bool {
    Semigroup::new(p).contains(z, d)
}

/// Checks `z + v ∈ S_P` for every `(z, d) ∈ S_P` off the cone over the
/// facet `base`, for `1 ≤ d ≤ max_degree`. Returns the first failure.
///
/// `v` need not be a column vector; that is the point of the check.
pub fn columns_property_counterexample(
    p: &Polytope,
    v: &IntVector,
    base: usize,
    max_degree: u32,
) -> Option<Monomial> {
    let mut sg = Semigroup::new(p);
    for d in 1..=max_degree {
        for z in sg.layer(d) {
            if p.height(base, &z, d as i64) > 0 && !sg.contains(&(&z + v), d) {
                return Some(Monomial::new(z, d));
            }
        }
    }
    None
}

pub fn columns_property_check(p: &Polytope, v: &IntVector, base: usize, max_degree: u32) -> bool {
    columns_property_counterexample(p, v, base, max_degree).is_none()
}

/// `C(n, k)` for small arguments.
pub(crate) fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}
