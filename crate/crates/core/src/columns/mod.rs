//! Column vectors of a lattice polytope and their partial product.
//!
//! A column vector `v` with base facet `F` moves every lattice point of `P`
//! off `F` to another point of `P`. Enumeration only has to look at
//! differences `y − x` of lattice points, and a column always has height
//! `−1` over its base facet, which cuts the candidate set down to one
//! translate of `L_P` per facet. [`Pruning::Literal`] switches that filter
//! off and tests every difference against every facet.

mod classify;
mod rigid;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::exact::IntVector;
use crate::polytope::{Polytope, PolytopeError};

pub use classify::{PolygonClass, PolygonClassification, ProjectiveWitness};
pub use rigid::{verify_certificate, DirectedGraph, RigidCertificate, Rigidity};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColumnError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("the polytope's lattice points do not generate ℤ^{0}; normalize it first")]
    NotNormalized(usize),
    #[error("{0} is not a column vector of this polytope")]
    Foreign(IntVector),
    #[error("Col-divisibility is only defined for balanced polytopes")]
    NotBalanced,
    #[error("classification needs a polygon, got dimension {0}")]
    NotAPolygon(usize),
    #[error("balanced polygon with no matching class: {0}")]
    Unclassified(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Pruning {
    /// Only candidates of height `−1` over the facet.
    #[default]
    HeightConstraint,
    /// Every lattice-point difference against every facet.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColumnVector {
    pub v: IntVector,
    /// Index into [`Polytope::facets`].
    pub base: usize,
}

/// `x + v ∈ P` for every `x ∈ L_P` off the facet: the defining property.
pub fn satisfies_definition(p: &Polytope, v: &IntVector, facet: usize) -> bool {
    let f = p.facet(facet);
    !v.is_zero() && p.lattice_points().iter().filter(|x| !f.contains(x)).all(|x| p.contains(&(x + v)))
}

fn require_normalized(p: &Polytope) -> Result<(), ColumnError> {
    p.facets()?;
    if !p.normalize_full_dim().is_identity() {
        return Err(ColumnError::NotNormalized(p.ambient_dim()));
    }
    Ok(())
}

pub fn column_vectors(p: &Polytope) -> Result<Vec<ColumnVector>, ColumnError> {
    column_vectors_with(p, Pruning::HeightConstraint)
}

pub fn column_vectors_with(p: &Polytope, pruning: Pruning) -> Result<Vec<ColumnVector>, ColumnError> {
    require_normalized(p)?;
    let found = enumerate(p, pruning);
    if cfg!(debug_assertions) && pruning == Pruning::HeightConstraint {
        assert_eq!(found, enumerate(p, Pruning::Literal), "height pruning lost or invented a column");
    }
    Ok(found)
}

fn enumerate(p: &Polytope, pruning: Pruning) -> Vec<ColumnVector> {
    let facets = p.facets().expect("checked full-dimensional");
    let pts = p.lattice_points();
    let mut found: BTreeMap<IntVector, usize> = BTreeMap::new();
    let mut record = |v: IntVector, fi: usize| {
        if let Some(prev) = found.insert(v.clone(), fi) {
            assert_eq!(prev, fi, "column {v} has two base facets");
        }
    };
    match pruning {
        Pruning::HeightConstraint => {
            for (fi, f) in facets.iter().enumerate() {
                let Some(x0) = pts.iter().find(|x| !f.contains(x)) else { continue };
                for y in pts {
                    let v = y - x0;
                    if f.value(&v) == -1 && satisfies_definition(p, &v, fi) {
                        record(v, fi);
                    }
                }
            }
        }
        Pruning::Literal => {
            let diffs: BTreeSet<IntVector> =
                pts.iter().flat_map(|x| pts.iter().map(move |y| y - x)).filter(|d| !d.is_zero()).collect();
            for v in diffs {
                for fi in 0..facets.len() {
                    if satisfies_definition(p, &v, fi) {
                        record(v.clone(), fi);
                    }
                }
            }
        }
    }
    found.into_iter().map(|(v, base)| ColumnVector { v, base }).collect()
}

/// The product `uv`, if it exists: `u + v ≠ 0` and no lattice point off
/// `P_u` is moved by `u` onto `P_v`. The result has base `P_u`.
pub fn product(p: &Polytope, u: &ColumnVector, v: &ColumnVector) -> Result<Option<ColumnVector>, ColumnError> {
    for c in [u, v] {
        if c.base >= p.facets()?.len() || !satisfies_definition(p, &c.v, c.base) {
            return Err(ColumnError::Foreign(c.v.clone()));
        }
    }
    Ok(raw_product(p, u, v))
}

fn raw_product(p: &Polytope, u: &ColumnVector, v: &ColumnVector) -> Option<ColumnVector> {
    let sum = &u.v + &v.v;
    if sum.is_zero() {
        return None;
    }
    let fu = p.facet(u.base);
    let fv = p.facet(v.base);
    let blocked = p.lattice_points().iter().filter(|x| !fu.contains(x)).any(|x| fv.contains(&(x + &u.v)));
    if blocked {
        return None;
    }
    assert!(
        satisfies_definition(p, &sum, u.base),
        "product {} · {} = {sum} is not a column with base {}",
        u.v,
        v.v,
        u.base
    );
    Some(ColumnVector { v: sum, base: u.base })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairEntry {
    Product(usize),
    SumZero,
    NoProduct,
}

/// Outcome of `u·v` for every ordered pair of columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTable {
    size: usize,
    entries: Vec<PairEntry>,
}

impl ProductTable {
    pub fn get(&self, i: usize, j: usize) -> PairEntry {
        self.entries[i * self.size + j]
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        match self.get(i, j) {
            PairEntry::Product(k) => Some(k),
            _ => None,
        }
    }

    /// All `(i, j, k)` with `cᵢ·cⱼ = c_k`, in lexicographic order.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if let Some(k) = self.product(i, j) {
                    out.push((i, j, k));
                }
            }
        }
        out
    }
}

/// `⟨P_u, v⟩ > 1` for the reported pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceWitness {
    pub u: IntVector,
    pub v: IntVector,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Balance {
    pub balanced: bool,
    /// A pair with the largest `⟨P_u, v⟩`, first in canonical order.
    pub witness: Option<BalanceWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "lowercase")]
pub enum DivisibilityWitness {
    /// `ac` and `bc` exist, `a ≠ b`, and no `d` has `db = a` or `da = b`.
    Cd1 { a: IntVector, b: IntVector, c: IntVector },
    /// `ab = cd`, `a ≠ c`, and no `t` has `at = c, td = b` or `ct = a, tb = d`.
    Cd2 { a: IntVector, b: IntVector, c: IntVector, d: IntVector },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisibility {
    pub divisible: bool,
    pub witness: Option<DivisibilityWitness>,
}

/// Violations of the two conditions on a map `μ: Col(P) → Col(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KViolation {
    Height { w: IntVector, v: IntVector, in_p: i64, in_q: i64 },
    Product { v: IntVector, w: IntVector, expected: IntVector, got: Option<IntVector> },
}

#[derive(Serialize)]
struct TableJson<'a> {
    columns: Vec<ColumnJson<'a>>,
    products: Vec<[usize; 3]>,
}

#[derive(Serialize)]
struct ColumnJson<'a> {
    v: &'a [i64],
    base: usize,
}

/// `Col(P)` with its product table.
#[derive(Clone, Debug)]
pub struct ColumnStructure {
    polytope: Polytope,
    columns: Vec<ColumnVector>,
    table: ProductTable,
}

impl ColumnStructure {
    pub fn new(p: &Polytope) -> Result<Self, ColumnError> {
        Self::with_pruning(p, Pruning::HeightConstraint)
    }

    pub fn with_pruning(p: &Polytope, pruning: Pruning) -> Result<Self, ColumnError> {
        let columns = column_vectors_with(p, pruning)?;
        let size = columns.len();
        let mut entries = Vec::with_capacity(size * size);
        for u in &columns {
            for v in &columns {
                let entry = if (&u.v + &v.v).is_zero() {
                    PairEntry::SumZero
                } else {
                    match raw_product(p, u, v) {
                        Some(w) => PairEntry::Product(
                            columns.binary_search(&w).expect("products are columns with the left factor's base"),
                        ),
                        None => PairEntry::NoProduct,
                    }
                };
                entries.push(entry);
            }
        }
        Ok(ColumnStructure { polytope: p.clone(), columns, table: ProductTable { size, entries } })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn columns(&self) -> &[ColumnVector] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn vector(&self, i: usize) -> &IntVector {
        &self.columns[i].v
    }

    pub fn table(&self) -> &ProductTable {
        &self.table
    }

    pub fn index_of(&self, v: &IntVector) -> Option<usize> {
        self.columns.iter().position(|c| c.v == *v)
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.table.product(i, j)
    }

    pub fn products(&self) -> Vec<(usize, usize, usize)> {
        self.table.triples()
    }

    /// `⟨P_u, v⟩` for columns `u = cᵢ`, `v = cⱼ`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.polytope.facet(self.columns[i].base).value(&self.columns[j].v)
    }

    /// Height of a column over its own base facet (always `−1`).
    pub fn column_height(&self, i: usize) -> i64 {
        self.polytope.height(self.columns[i].base, &self.columns[i].v, 0)
    }

    /// Weak product of a sequence: some bracketing has all pairwise
    /// products defined. Interval dynamic programming over the sequence.
    pub fn weak_product(&self, seq: &[usize]) -> Option<usize> {
        let m = seq.len();
        if m == 0 {
            return None;
        }
        // value[i][j]: column index of seq[i..=j] if the segment has a weak product.
        let mut value: Vec<Vec<Option<usize>>> = vec![vec![None; m]; m];
        for i in 0..m {
            value[i][i] = Some(seq[i]);
        }
        for len in 2..=m {
            for i in 0..=m - len {
                let j = i + len - 1;
                value[i][j] = (i..j).find_map(|k| {
                    let (l, r) = (value[i][k]?, value[k + 1][j]?);
                    self.product(l, r)
                });
            }
        }
        value[0][m - 1]
    }

    /// `[V]`: values of all strict products of sequences from `V`.
    ///
    /// A sequence is strict when neighbours multiply and no run of two or
    /// more entries sums to zero. Prefix sums of such a sequence are
    /// distinct columns, so sequences are no longer than `|Col|`.
    pub fn strict_hull(&self, set: &[usize]) -> Vec<usize> {
        let mut out: BTreeSet<usize> = set.iter().copied().collect();
        let mut seen: HashSet<(usize, Vec<IntVector>)> = HashSet::new();
        let mut stack: Vec<(usize, Vec<IntVector>)> =
            set.iter().map(|&v| (v, vec![self.vector(v).clone()])).collect();
        while let Some((last, suffixes)) = stack.pop() {
            for &next in set {
                if self.product(last, next).is_none() {
                    continue;
                }
                let w = self.vector(next);
                let mut grown: Vec<IntVector> = suffixes.iter().map(|s| s + w).collect();
                if grown.iter().any(IntVector::is_zero) {
                    continue;
                }
                let whole = grown[0].clone();
                let idx = self
                    .index_of(&whole)
                    .unwrap_or_else(|| panic!("strict product {whole} is not a column vector"));
                for s in &grown {
                    assert!(self.index_of(s).is_some(), "strict sub-product {s} is not a column vector");
                }
                out.insert(idx);
                grown.push(w.clone());
                let mut key = grown.clone();
                key.sort();
                if seen.insert((next, key)) {
                    stack.push((next, grown));
                }
            }
        }
        out.into_iter().collect()
    }

    /// `⟨V⟩`: closure of `V` under binary products.
    pub fn weak_hull(&self, set: &[usize]) -> Vec<usize> {
        let mut hull: BTreeSet<usize> = set.iter().copied().collect();
        loop {
            let current: Vec<usize> = hull.iter().copied().collect();
            let before = hull.len();
            for &a in &current {
                for &b in &current {
                    if let Some(c) = self.product(a, b) {
                        hull.insert(c);
                    }
                }
            }
            if hull.len() == before {
                return current;
            }
        }
    }

    pub fn balance(&self) -> Balance {
        let mut worst: Option<(i64, usize, usize)> = None;
        let mut abs_ok = true;
        for i in 0..self.len() {
            for j in 0..self.len() {
                let value = self.pairing(i, j);
                if value.abs() > 1 {
                    abs_ok = false;
                }
                if value > 1 && worst.is_none_or(|(w, _, _)| value > w) {
                    worst = Some((value, i, j));
                }
            }
        }
        assert_eq!(worst.is_none(), abs_ok, "one-sided and absolute balance tests disagree");
        Balance {
            balanced: worst.is_none(),
            witness: worst.map(|(value, i, j)| BalanceWitness {
                u: self.vector(i).clone(),
                v: self.vector(j).clone(),
                value,
            }),
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.balance().balanced
    }

    pub fn divisibility(&self) -> Result<Divisibility, ColumnError> {
        if !self.is_balanced() {
            return Err(ColumnError::NotBalanced);
        }
        let n = self.len();
        let witness = self.cd1_violation(n).or_else(|| self.cd2_violation(n));
        Ok(Divisibility { divisible: witness.is_none(), witness })
    }

    fn cd1_violation(&self, n: usize) -> Option<DivisibilityWitness> {
        for c in 0..n {
            let left: Vec<usize> = (0..n).filter(|&a| self.product(a, c).is_some()).collect();
            for &a in &left {
                for &b in &left {
                    if a == b {
                        continue;
                    }
                    let ok = (0..n).any(|d| self.product(d, b) == Some(a) || self.product(d, a) == Some(b));
                    if !ok {
                        return Some(DivisibilityWitness::Cd1 {
                            a: self.vector(a).clone(),
                            b: self.vector(b).clone(),
                            c: self.vector(c).clone(),
                        });
                    }
                }
            }
        }
        None
    }

    fn cd2_violation(&self, n: usize) -> Option<DivisibilityWitness> {
        let triples = self.products();
        for &(a, b, x) in &triples {
            for &(c, d, y) in &triples {
                if x != y || a == c {
                    continue;
                }
                let ok = (0..n).any(|t| {
                    (self.product(a, t) == Some(c) && self.product(t, d) == Some(b))
                        || (self.product(c, t) == Some(a) && self.product(t, b) == Some(d))
                });
                if !ok {
                    return Some(DivisibilityWitness::Cd2 {
                        a: self.vector(a).clone(),
                        b: self.vector(b).clone(),
                        c: self.vector(c).clone(),
                        d: self.vector(d).clone(),
                    });
                }
            }
        }
        None
    }

    /// `{"columns":[{"v":[...],"base":i}],"products":[[i,j,k]]}`.
    pub fn to_json(&self) -> String {
        let doc = TableJson {
            columns: self.columns.iter().map(|c| ColumnJson { v: &c.v, base: c.base }).collect(),
            products: self.products().into_iter().map(|(i, j, k)| [i, j, k]).collect(),
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    /// Graphviz digraph: an edge `u → w` labelled `·v` for each product `uv = w`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph columns {\n");
        for (i, c) in self.columns.iter().enumerate() {
            writeln!(out, "  c{i} [label=\"{}\"];", c.v).unwrap();
        }
        for (i, j, k) in self.products() {
            writeln!(out, "  c{i} -> c{k} [label=\"·{}\"];", self.vector(j)).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Checks that `μ` (given as column indices, `mu[i]` the image of `pᵢ`)
/// preserves pairings and products.
pub fn check_k_morphism(p: &ColumnStructure, q: &ColumnStructure, mu: &[usize]) -> Vec<KViolation> {
    assert_eq!(mu.len(), p.len(), "μ must be total on Col(P)");
    let mut out = Vec::new();
    for w in 0..p.len() {
        for v in 0..p.len() {
            let (in_p, in_q) = (p.pairing(w, v), q.pairing(mu[w], mu[v]));
            if in_p != in_q {
                out.push(KViolation::Height { w: p.vector(w).clone(), v: p.vector(v).clone(), in_p, in_q });
            }
        }
    }
    for (v, w, vw) in p.products() {
        let got = q.product(mu[v], mu[w]);
        if got != Some(mu[vw]) {
            out.push(KViolation::Product {
                v: p.vector(v).clone(),
                w: p.vector(w).clone(),
                expected: q.vector(mu[vw]).clone(),
                got: got.map(|g| q.vector(g).clone()),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests;
