//! Steinberg-type relations between elementary automorphisms, checked as
//! matrix identities over `ℤ[λ, μ]`. An identity between integer
//! polynomial matrices specializes to every commutative ring, so one
//! symbolic check covers them all.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{AlgebraError, GradedAutomorphism};
use crate::columns::{ColumnError, ColumnStructure};
use crate::exact::{CoeffRing, IntPoly, IntVector, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PairStatus {
    /// `uv = w`; checked `[e_u^λ, e_v^μ] = e_w^{−λμ}`.
    Product { w: IntVector, holds: bool },
    /// `vu = w` in the other order; checked `[e_u^λ, e_v^μ] = e_w^{λμ}`,
    /// the inverse of the relation for `(v, u)`.
    Reversed { w: IntVector, holds: bool },
    /// `u + v ∉ Col(P)`; checked that the two commute.
    Commute { holds: bool },
    /// `u + v ∈ Col(P)` but `uv` is not defined. Neither case applies; the
    /// commutator is recorded anyway.
    StableOnly { commutes: bool, matches_product_formula: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub u: IntVector,
    pub v: IntVector,
    pub status: PairStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergReport {
    pub balanced: bool,
    /// `e_u^λ ∘ e_u^μ = e_u^{λ+μ}` for every column `u`.
    pub additive: Vec<(IntVector, bool)>,
    /// Ordered pairs of distinct columns with `u + v ≠ 0`.
    pub pairs: Vec<PairCheck>,
}

impl SteinbergReport {
    pub fn all_hold(&self) -> bool {
        self.additive.iter().all(|(_, ok)| *ok)
            && self.pairs.iter().all(|c| match c.status {
                PairStatus::Product { holds, .. } | PairStatus::Reversed { holds, .. } | PairStatus::Commute { holds } => holds,
                PairStatus::StableOnly { .. } => true,
            })
    }

    /// `(product cases in either order, commuting cases, stable-only pairs)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut out = (0, 0, 0);
        for c in &self.pairs {
            match c.status {
                PairStatus::Product { .. } | PairStatus::Reversed { .. } => out.0 += 1,
                PairStatus::Commute { .. } => out.1 += 1,
                PairStatus::StableOnly { .. } => out.2 += 1,
            }
        }
        out
    }
}

type Aut = GradedAutomorphism<IntPoly>;

pub fn verify_steinberg(cs: &ColumnStructure) -> Result<SteinbergReport, AlgebraError> {
    let (lambda, mu) = (IntPoly::var(0), IntPoly::var(1));
    let at = |v: &IntVector, c: &IntPoly| Aut::elementary(cs, v, c.clone());
    let vectors: Vec<IntVector> = cs.columns().iter().map(|c| c.v.clone()).collect();
    let e_lambda: Vec<Aut> = vectors.iter().map(|v| at(v, &lambda)).collect::<Result<_, _>>()?;
    let e_mu: Vec<Aut> = vectors.iter().map(|v| at(v, &mu)).collect::<Result<_, _>>()?;

    let additive = vectors
        .par_iter()
        .enumerate()
        .map(|(i, v)| {
            let sum = at(v, &lambda.add(&mu))?;
            Ok((v.clone(), e_lambda[i].compose(&e_mu[i])? == sum))
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;

    let minus_lambda_mu = lambda.mul(&mu).neg();
    let pairs: Vec<(usize, usize)> = (0..vectors.len())
        .flat_map(|i| (0..vectors.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && !(&vectors[i] + &vectors[j]).is_zero())
        .collect();
    let pairs = pairs
        .par_iter()
        .map(|&(i, j)| {
            let comm = e_lambda[i].commutator(&e_mu[j])?;
            let sum = &vectors[i] + &vectors[j];
            let status = match cs.product(i, j) {
                Some(k) => PairStatus::Product {
                    w: vectors[k].clone(),
                    holds: comm == at(&vectors[k], &minus_lambda_mu)?,
                },
                None if cs.product(j, i).is_some() => {
                    let k = cs.product(j, i).unwrap();
                    PairStatus::Reversed { w: vectors[k].clone(), holds: comm == at(&vectors[k], &lambda.mul(&mu))? }
                }
                None => match cs.index_of(&sum) {
                    None => PairStatus::Commute { holds: comm.is_identity() },
                    Some(k) => PairStatus::StableOnly {
                        commutes: comm.is_identity(),
                        matches_product_formula: comm == at(&vectors[k], &minus_lambda_mu)?,
                    },
                },
            };
            Ok(PairCheck { u: vectors[i].clone(), v: vectors[j].clone(), status })
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;

    Ok(SteinbergReport { balanced: cs.is_balanced(), additive, pairs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AfembReport {
    pub facet: usize,
    /// Columns with base `facet`.
    pub columns: Vec<IntVector>,
    /// Pairwise commutators with independent parameters are trivial.
    pub commute: bool,
    /// `φ(λ + μ) = φ(λ) ∘ φ(μ)`.
    pub homomorphism: bool,
    pub grid_points: usize,
    pub distinct_images: usize,
    pub note: Option<String>,
}

impl AfembReport {
    pub fn passes(&self) -> bool {
        self.commute && self.homomorphism && self.distinct_images == self.grid_points
    }
}

/// Checks that `(λ₁, …, λ_k) ↦ e_{v₁}^{λ₁} ∘ ⋯ ∘ e_{v_k}^{λ_k}` is an
/// injective homomorphism from `R^k`, `v₁, …, v_k` the columns with base
/// `facet`.
///
/// Injectivity is sampled over ℚ on a 5×5 grid: `(λ₁, λ₂)` runs over
/// `{−2, …, 2}²` and any further parameters are tied to the first two.
pub fn verify_afemb(cs: &ColumnStructure, facet: usize) -> Result<AfembReport, AlgebraError> {
    let columns: Vec<IntVector> = cs.columns().iter().filter(|c| c.base == facet).map(|c| c.v.clone()).collect();
    let k = columns.len();
    if k < 2 {
        return Ok(AfembReport {
            facet,
            columns,
            commute: true,
            homomorphism: true,
            grid_points: 0,
            distinct_images: 0,
            note: Some("fewer than two columns share this base facet; nothing to check".into()),
        });
    }
    let phi = |params: &[IntPoly]| -> Result<Aut, AlgebraError> {
        let mut out = Aut::identity(cs.polytope());
        for (v, c) in columns.iter().zip(params) {
            out = out.compose(&Aut::elementary(cs, v, c.clone())?)?;
        }
        Ok(out)
    };
    let mut commute = true;
    for a in 0..k {
        for b in a + 1..k {
            let ea = Aut::elementary(cs, &columns[a], IntPoly::var(a))?;
            let eb = Aut::elementary(cs, &columns[b], IntPoly::var(b))?;
            commute &= ea.commutator(&eb)?.is_identity();
        }
    }
    let lambda: Vec<IntPoly> = (0..k).map(IntPoly::var).collect();
    let mu: Vec<IntPoly> = (k..2 * k).map(IntPoly::var).collect();
    let sum: Vec<IntPoly> = lambda.iter().zip(&mu).map(|(a, b)| a.add(b)).collect();
    let homomorphism = phi(&sum)? == phi(&lambda)?.compose(&phi(&mu)?)?;

    let mut images = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            let params: Vec<i64> = (0..k).map(|i| match i {
                0 => a,
                1 => b,
                _ => a * b + i as i64,
            }).collect();
            let mut m = GradedAutomorphism::<Rat>::identity(cs.polytope());
            for (v, c) in columns.iter().zip(&params) {
                m = m.compose(&GradedAutomorphism::elementary(cs, v, Rat::from_i64(*c))?)?;
            }
            if !images.contains(&m) {
                images.push(m);
            }
        }
    }
    Ok(AfembReport { facet, columns, commute, homomorphism, grid_points: 25, distinct_images: images.len(), note: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationGenerator {
    pub name: String,
    pub vector: IntVector,
    pub base: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    /// `x_v^a x_v^b = x_v^{a+b}`.
    Add { generator: usize },
    /// `[x_u^a, x_v^b] = x_w^{sign·ab}`, or `= 1` when `result` is `None`.
    Comm { left: usize, right: usize, result: Option<usize>, sign: i8 },
}

/// Unstable Steinberg presentation read off the product table: one
/// generator family per column, one relation template per line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<PresentationGenerator>,
    pub relations: Vec<Relation>,
    /// Pairs with `u + v ∈ Col(P)` and no product in either order.
    pub stable_only: Vec<(usize, usize)>,
}

impl Presentation {
    pub fn from_columns(cs: &ColumnStructure) -> Result<Self, AlgebraError> {
        if !cs.is_balanced() {
            return Err(ColumnError::NotBalanced.into());
        }
        let n = cs.len();
        let generators = cs
            .columns()
            .iter()
            .enumerate()
            .map(|(i, c)| PresentationGenerator { name: format!("v{i}"), vector: c.v.clone(), base: c.base })
            .collect();
        let mut relations: Vec<Relation> = (0..n).map(|generator| Relation::Add { generator }).collect();
        let mut stable_only = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let sum = cs.vector(i) + cs.vector(j);
                if sum.is_zero() {
                    continue;
                }
                let forward = cs.product(i, j).map(|k| Relation::Comm { left: i, right: j, result: Some(k), sign: -1 });
                let backward = cs.product(j, i).map(|k| Relation::Comm { left: j, right: i, result: Some(k), sign: -1 });
                if forward.is_some() || backward.is_some() {
                    relations.extend(forward);
                    relations.extend(backward);
                } else if cs.index_of(&sum).is_none() {
                    relations.push(Relation::Comm { left: i, right: j, result: None, sign: 1 });
                } else {
                    stable_only.push((i, j));
                }
            }
        }
        Ok(Presentation { generators, relations, stable_only })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            writeln!(out, "GEN {} base={} vector={}", g.name, g.base, g.vector).unwrap();
        }
        for r in &self.relations {
            match r {
                Relation::Add { generator } => writeln!(out, "REL add v{generator}").unwrap(),
                Relation::Comm { left, right, result: Some(k), sign } => {
                    writeln!(out, "REL comm v{left} v{right} -> v{k} sign={sign}").unwrap()
                }
                Relation::Comm { left, right, result: None, .. } => writeln!(out, "REL comm v{left} v{right} -> 1").unwrap(),
            }
        }
        for (i, j) in &self.stable_only {
            writeln!(out, "# unstable pair v{i} v{j}: sum is a column, no product").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Every relation instantiated over `ℤ/m`, so the generators are the
    /// finitely many `x_v^a`, `a ∈ ℤ/m`.
    pub fn to_finite_text(&self, modulus: u64) -> String {
        assert!(modulus >= 2, "modulus must be at least 2");
        let m = modulus as i128;
        let mut out = String::new();
        for g in &self.generators {
            for a in 0..modulus {
                writeln!(out, "GEN {}^{a}", g.name).unwrap();
            }
        }
        for r in &self.relations {
            match r {
                Relation::Add { generator } => {
                    for a in 0..m {
                        for b in 0..m {
                            writeln!(out, "REL v{generator}^{a} v{generator}^{b} = v{generator}^{}", (a + b) % m).unwrap();
                        }
                    }
                }
                Relation::Comm { left, right, result, sign } => {
                    for a in 1..m {
                        for b in 1..m {
                            match result {
                                Some(k) => {
                                    let c = (*sign as i128 * a * b).rem_euclid(m);
                                    writeln!(out, "REL [v{left}^{a}, v{right}^{b}] = v{k}^{c}").unwrap()
                                }
                                None => writeln!(out, "REL [v{left}^{a}, v{right}^{b}] = 1").unwrap(),
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
