//! Aggregate reports: one-polytope analysis and the exhaustive polygon scan.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{inversion_subgroup, AlgebraError};
use crate::columns::{
    BalanceWitness, ColumnError, ColumnStructure, DivisibilityWitness, PolygonClass, Pruning,
};
use crate::exact::IntVector;
use crate::polytope::{Polytope, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Columns(#[from] ColumnError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("box side {0} is too large; the scan supports at most {MAX_BOX}")]
    BoxTooLarge(u32),
}

pub const MAX_BOX: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetSummary {
    pub normal: IntVector,
    pub offset: i64,
    pub lattice_points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnSummary {
    pub vector: IntVector,
    pub base: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupShape {
    pub label: String,
    /// Block shape of the stable elementary group, `E` = `E(R)` and
    /// `F` = `R^(ℕ)` the free module of countable rank.
    pub blocks: String,
}

impl GroupShape {
    pub fn for_class(class: PolygonClass, columns: usize) -> Self {
        let (label, blocks) = match class {
            PolygonClass::A => ("E_a".to_string(), "E".to_string()),
            PolygonClass::B => ("E_b".to_string(), "[[E, End(F)], [0, E]]".to_string()),
            PolygonClass::C => ("E_c".to_string(), "[[E, End(F), Hom(F,R)], [0, E, Hom(F,R)], [0, 0, 1]]".to_string()),
            PolygonClass::D => (format!("E_d,{columns}"), format!("[[E, Hom(F,R^{columns})], [0, Id_{columns}]]")),
            PolygonClass::E => ("E_e".to_string(), "E x E".to_string()),
            PolygonClass::F => ("E_f".to_string(), "[[E, Hom(F,R)], [0, 1]] x [[E, Hom(F,R)], [0, 1]]".to_string()),
        };
        GroupShape { label, blocks }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub name: Option<String>,
    pub vertices: Vec<IntVector>,
    /// Vertices in integral-affine normal form.
    pub normal_form: Vec<IntVector>,
    /// The input did not span its lattice and was re-expressed in a basis of it.
    pub renormalized: bool,
    pub dim: usize,
    pub lattice_points: usize,
    pub facets: Vec<FacetSummary>,
    pub columns: Vec<ColumnSummary>,
    /// `(i, j, k)` for `cᵢ cⱼ = c_k`.
    pub products: Vec<[usize; 3]>,
    pub balanced: bool,
    pub balance_witness: Option<BalanceWitness>,
    /// `None` unless balanced.
    pub col_divisible: Option<bool>,
    pub divisibility_witness: Option<DivisibilityWitness>,
    pub class: Option<PolygonClass>,
    pub class_labels: Vec<(String, IntVector)>,
    pub sigma_order: usize,
    pub sigma_inv_order: usize,
    pub group_shape: Option<GroupShape>,
    /// `#Col(P) + n + 1`.
    pub col_plus_dim_plus_one: usize,
}

impl AnalysisReport {
    pub fn analyze(input: &Polytope) -> Result<Self, ReportError> {
        let norm = input.normalize_full_dim();
        let renormalized = !norm.is_identity();
        let p = &norm.polytope;
        let cs = ColumnStructure::new(p)?;
        let balance = cs.balance();
        let divisibility = if balance.balanced { Some(cs.divisibility()?) } else { None };
        let classification = if p.ambient_dim() == 2 && balance.balanced { Some(cs.classify()?) } else { None };
        let inv = inversion_subgroup(&cs)?;
        let facets = p
            .facets()?
            .iter()
            .map(|f| FacetSummary { normal: f.normal.clone(), offset: f.offset, lattice_points: f.on_facet.len() })
            .collect();
        Ok(AnalysisReport {
            name: input.name().map(str::to_string),
            vertices: input.vertices().to_vec(),
            normal_form: p.normal_form()?,
            renormalized,
            dim: p.dim(),
            lattice_points: p.lattice_points().len(),
            facets,
            columns: cs.columns().iter().map(|c| ColumnSummary { vector: c.v.clone(), base: c.base }).collect(),
            products: cs.products().into_iter().map(|(i, j, k)| [i, j, k]).collect(),
            balanced: balance.balanced,
            balance_witness: balance.witness,
            col_divisible: divisibility.as_ref().map(|d| d.divisible),
            divisibility_witness: divisibility.and_then(|d| d.witness),
            class: classification.as_ref().map(|c| c.class),
            class_labels: classification.as_ref().map(|c| c.labels.clone()).unwrap_or_default(),
            sigma_order: inv.sigma_order,
            sigma_inv_order: inv.inv_order,
            group_shape: classification.map(|c| GroupShape::for_class(c.class, cs.len())),
            col_plus_dim_plus_one: cs.len() + p.ambient_dim() + 1,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub box_size: u32,
    /// Lattice polygons up to integral-affine equivalence.
    pub polygons: usize,
    pub balanced: usize,
    pub per_class: BTreeMap<String, usize>,
    /// Normal form of the lexicographically first polygon of each class.
    pub witnesses: BTreeMap<String, Vec<IntVector>>,
    pub absent_classes: Vec<String>,
    pub unclassified: Vec<Vec<IntVector>>,
    /// Balanced polygons that fail Col-divisibility.
    pub not_divisible: Vec<Vec<IntVector>>,
    pub seed: u64,
    pub sample_size: usize,
    /// Sampled polygons whose pruned and literal column sets differ.
    pub sample_mismatches: Vec<Vec<IntVector>>,
}

impl ScanSummary {
    pub fn is_clean(&self) -> bool {
        self.unclassified.is_empty() && self.not_divisible.is_empty() && self.sample_mismatches.is_empty()
    }
}

/// Grid points of `[0, n]²` as bit positions `y·(n+1) + x`.
struct Grid {
    side: i64,
}

impl Grid {
    fn point(&self, bit: u32) -> (i64, i64) {
        (bit as i64 % self.side, bit as i64 / self.side)
    }

    fn bits(&self) -> u32 {
        (self.side * self.side) as u32
    }

    fn points(&self, mask: u32) -> Vec<(i64, i64)> {
        (0..self.bits()).filter(|b| mask & (1 << b) != 0).map(|b| self.point(b)).collect()
    }

    /// All grid points in the convex hull of `mask`.
    fn closure(&self, mask: u32) -> u32 {
        let hull = monotone_chain(self.points(mask));
        if hull.len() < 3 {
            return mask;
        }
        let mut out = 0;
        for b in 0..self.bits() {
            let q = self.point(b);
            let inside = (0..hull.len()).all(|i| cross(hull[i], hull[(i + 1) % hull.len()], q) >= 0);
            if inside {
                out |= 1 << b;
            }
        }
        out
    }

    /// Shift so the set touches both axes.
    fn translate_to_origin(&self, mask: u32) -> u32 {
        let pts = self.points(mask);
        let dx = pts.iter().map(|p| p.0).min().unwrap();
        let dy = pts.iter().map(|p| p.1).min().unwrap();
        pts.iter().fold(0, |acc, &(x, y)| acc | (1 << ((y - dy) * self.side + (x - dx))))
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counter-clockwise hull without collinear points.
fn monotone_chain(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Every lattice-closed point set of `[0, n]²` spanning a polygon, up to
/// translation. Grown from triangles by adding one point and closing.
fn lattice_polygons(n: u32) -> Vec<u32> {
    let grid = Grid { side: n as i64 + 1 };
    let bits = grid.bits();
    let mut seen: HashSet<u32> = HashSet::new();
    let mut frontier: Vec<u32> = Vec::new();
    for a in 0..bits {
        for b in a + 1..bits {
            for c in b + 1..bits {
                if cross(grid.point(a), grid.point(b), grid.point(c)) == 0 {
                    continue;
                }
                let m = grid.closure((1 << a) | (1 << b) | (1 << c));
                if seen.insert(m) {
                    frontier.push(m);
                }
            }
        }
    }
    while let Some(m) = frontier.pop() {
        for b in 0..bits {
            if m & (1 << b) == 0 {
                let grown = grid.closure(m | (1 << b));
                if seen.insert(grown) {
                    frontier.push(grown);
                }
            }
        }
    }
    let mut shapes: Vec<u32> = seen.into_iter().map(|m| grid.translate_to_origin(m)).collect();
    shapes.sort_unstable();
    shapes.dedup();
    shapes
}

struct Scanned {
    normal_form: Vec<IntVector>,
    outcome: Result<Option<(PolygonClass, bool)>, String>,
}

/// Exhaustive scan of lattice polygons with vertices in `[0, n]²`.
///
/// Each balanced polygon is classified and tested for Col-divisibility.
/// A seeded 1% sample (at least one polygon) is recomputed with the
/// literal column definition and compared with the pruned result.
pub fn scan_polygons(n: u32, seed: u64) -> Result<ScanSummary, ReportError> {
    if n > MAX_BOX {
        return Err(ReportError::BoxTooLarge(n));
    }
    let grid = Grid { side: n as i64 + 1 };
    let shapes = lattice_polygons(n);
    let mut polygons: Vec<(Vec<IntVector>, Polytope)> = shapes
        .par_iter()
        .map(|&m| {
            let pts: Vec<[i64; 2]> = grid.points(m).into_iter().map(|(x, y)| [x, y]).collect();
            let p = Polytope::from_points(pts).expect("nonempty");
            (p.normal_form().expect("full-dimensional"), p)
        })
        .collect();
    polygons.sort_by(|a, b| a.0.cmp(&b.0));
    polygons.dedup_by(|a, b| a.0 == b.0);

    let scanned: Vec<Scanned> = polygons
        .par_iter()
        .map(|(nf, p)| {
            let outcome = (|| -> Result<Option<(PolygonClass, bool)>, ColumnError> {
                let cs = ColumnStructure::new(p)?;
                if !cs.is_balanced() {
                    return Ok(None);
                }
                let class = cs.classify()?.class;
                Ok(Some((class, cs.divisibility()?.divisible)))
            })();
            Scanned { normal_form: nf.clone(), outcome: outcome.map_err(|e| e.to_string()) }
        })
        .collect();

    let mut per_class: BTreeMap<String, usize> = PolygonClass::ALL.iter().map(|c| (c.letter().to_string(), 0)).collect();
    let mut witnesses = BTreeMap::new();
    let mut unclassified = Vec::new();
    let mut not_divisible = Vec::new();
    let mut balanced = 0;
    for s in &scanned {
        match &s.outcome {
            Ok(None) => {}
            Ok(Some((class, divisible))) => {
                balanced += 1;
                let key = class.letter().to_string();
                *per_class.get_mut(&key).unwrap() += 1;
                witnesses.entry(key).or_insert_with(|| s.normal_form.clone());
                if !divisible {
                    not_divisible.push(s.normal_form.clone());
                }
            }
            Err(_) => {
                balanced += 1;
                unclassified.push(s.normal_form.clone());
            }
        }
    }
    let absent_classes = per_class.iter().filter(|(_, &c)| c == 0).map(|(k, _)| k.clone()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample_size = polygons.len().div_ceil(100).min(polygons.len());
    let sample: Vec<&(Vec<IntVector>, Polytope)> = polygons.choose_multiple(&mut rng, sample_size).collect();
    let sample_mismatches = sample
        .par_iter()
        .filter(|(_, p)| {
            let pruned = ColumnStructure::with_pruning(p, Pruning::HeightConstraint).map(|c| c.columns().to_vec());
            let literal = ColumnStructure::with_pruning(p, Pruning::Literal).map(|c| c.columns().to_vec());
            pruned != literal
        })
        .map(|(nf, _)| nf.clone())
        .collect();

    Ok(ScanSummary {
        box_size: n,
        polygons: polygons.len(),
        balanced,
        per_class,
        witnesses,
        absent_classes,
        unclassified,
        not_divisible,
        seed,
        sample_size,
        sample_mismatches,
    })
}
