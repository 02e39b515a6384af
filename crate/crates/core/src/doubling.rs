//! Doubling a polytope along a facet, and doubling spectra.
//!
//! With `⟨F,−⟩ = a` and offset `b`, pick `w` with `a·w = 1`. The copy map
//!
//! ```text
//! ψ(x) = (x − ht_F(x)·w, ht_F(x)),   ht_F(x) = a·x − b
//! ```
//!
//! fixes `F` pointwise, sends a point at height `h` over `F` to the level
//! `h` of the new coordinate, and keeps the first `n` coordinates inside
//! the hyperplane of `F`. Since `ψ(w) − ψ(0) = (0, 1)`, the lattices `ℤⁿ×0`
//! and `ψ(ℤⁿ)` together generate ℤⁿ⁺¹, so `conv(P×0, ψ(P))` is an ordinary
//! lattice polytope and no change of basis is needed afterwards.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::columns::{ColumnError, ColumnStructure};
use crate::exact::{integral_section, IntMatrix, IntVector};
use crate::polytope::{AffineLatticeMap, Polytope, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DoublingError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Columns(#[from] ColumnError),
    #[error("facet index {0} is out of range")]
    ForeignFacet(usize),
    #[error("section {0} does not pair to 1 with the facet normal")]
    BadSection(IntVector),
    #[error("column {0} has no image in the doubled polytope")]
    NoExtension(IntVector),
    #[error("column {0} has several candidate images: {1:?}")]
    AmbiguousExtension(IntVector, Vec<IntVector>),
    #[error("a doubling spectrum needs a polytope with column vectors")]
    NoColumns,
    #[error("a doubling spectrum needs at least one step")]
    NoSteps,
}

#[derive(Clone, Debug)]
pub struct DoublingResult {
    pub source: ColumnStructure,
    pub facet: usize,
    pub section: IntVector,
    /// Columns of the doubled polytope.
    pub doubled: ColumnStructure,
    /// `x ↦ (x, 0)`.
    pub embed_base: AffineLatticeMap,
    /// `ψ`.
    pub embed_copy: AffineLatticeMap,
    /// `col_inclusion[i]` is the index in `doubled` of the image of source column `i`.
    pub col_inclusion: Vec<usize>,
    /// Lattice points of the doubled polytope lying in neither copy. Zero
    /// for simplices and prisms, but the hull can pick up points between
    /// the copies in general (a trapezoid gains one).
    pub extra_lattice_points: usize,
}

impl DoublingResult {
    pub fn polytope(&self) -> &Polytope {
        self.doubled.polytope()
    }

    /// Linear part of `ψ`, applied to a vector.
    pub fn copy_linear(&self, v: &IntVector) -> IntVector {
        self.embed_copy.matrix().apply(v)
    }
}

pub fn double_along_facet(p: &Polytope, facet: usize) -> Result<DoublingResult, DoublingError> {
    let normal = &p.facets()?.get(facet).ok_or(DoublingError::ForeignFacet(facet))?.normal;
    let w = integral_section(normal).expect("facet normals are primitive");
    double_along_facet_with_section(p, facet, &w)
}

/// Doubling with a caller-chosen section `w` (`a·w = 1`).
pub fn double_along_facet_with_section(p: &Polytope, facet: usize, w: &IntVector) -> Result<DoublingResult, DoublingError> {
    let source = ColumnStructure::new(p)?;
    let f = p.facets()?.get(facet).ok_or(DoublingError::ForeignFacet(facet))?.clone();
    if f.normal.dot(w) != 1 {
        return Err(DoublingError::BadSection(w.clone()));
    }
    let n = p.ambient_dim();
    let a = &f.normal;
    let b = f.offset;

    let mut base_rows: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    base_rows.push(IntVector::zeros(n));
    let embed_base = AffineLatticeMap::new(IntMatrix::from_rows(&base_rows).unwrap(), IntVector::zeros(n + 1));

    // ψ(x) = (x − (a·x)w + b·w, a·x − b)
    let mut copy_rows: Vec<IntVector> =
        (0..n).map(|i| IntVector((0..n).map(|j| i64::from(i == j) - w[i] * a[j]).collect())).collect();
    copy_rows.push(a.clone());
    let mut shift: Vec<i64> = w.scale(b).into_inner();
    shift.push(-b);
    let embed_copy = AffineLatticeMap::new(IntMatrix::from_rows(&copy_rows).unwrap(), IntVector(shift));

    let points = p.vertices().iter().map(|x| embed_base.apply(x)).chain(p.vertices().iter().map(|x| embed_copy.apply(x)));
    let doubled_polytope = Polytope::from_points(points.collect::<Vec<_>>())?;
    let extra_lattice_points =
        doubled_polytope.lattice_points().len() - (2 * p.lattice_points().len() - f.on_facet.len());
    let doubled = ColumnStructure::new(&doubled_polytope)?;
    let mut result = DoublingResult {
        source,
        facet,
        section: w.clone(),
        doubled,
        embed_base,
        embed_copy,
        col_inclusion: Vec::new(),
        extra_lattice_points,
    };
    result.col_inclusion = extend_columns(&result)?;
    Ok(result)
}

/// Image of every source column among the columns of the doubled polytope.
///
/// A candidate `v′` is accepted when it is a column of `P□` whose base
/// facet meets the floor `P×0` exactly in `G×0`, `G` the base facet of
/// `v`. Tried in order: `(v, 0)`, the linear part of `ψ` applied to `v`,
/// and then every column of `P□` whose first `n` coordinates are `v`.
pub fn extend_columns(r: &DoublingResult) -> Result<Vec<usize>, DoublingError> {
    let p = r.source.polytope();
    let q = r.doubled.polytope();
    let n = p.ambient_dim();
    let floor: Vec<IntVector> = p.lattice_points().iter().map(|x| r.embed_base.apply(x)).collect();

    let acceptable = |col: usize, g: usize| -> bool {
        let face = q.facet(r.doubled.columns()[col].base);
        let gf = p.facet(g);
        p.lattice_points().iter().zip(&floor).all(|(x, y)| face.contains(y) == gf.contains(x))
    };

    let mut out = Vec::with_capacity(r.source.len());
    for c in r.source.columns() {
        let first = [c.v.extended(0), r.copy_linear(&c.v)];
        let direct = first.iter().find_map(|cand| r.doubled.index_of(cand).filter(|&i| acceptable(i, c.base)));
        let image = match direct {
            Some(i) => i,
            None => {
                let matches: Vec<usize> = (0..r.doubled.len())
                    .filter(|&i| r.doubled.vector(i).0[..n] == c.v.0[..] && acceptable(i, c.base))
                    .collect();
                match matches.as_slice() {
                    [] => return Err(DoublingError::NoExtension(c.v.clone())),
                    [i] => *i,
                    _ => {
                        return Err(DoublingError::AmbiguousExtension(
                            c.v.clone(),
                            matches.iter().map(|&i| r.doubled.vector(i).clone()).collect(),
                        ))
                    }
                }
            }
        };
        out.push(image);
    }
    Ok(out)
}

/// One entry of the fairness ledger.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueueRecord {
    pub id: usize,
    /// The vector when it entered the queue.
    pub vector: IntVector,
    pub enqueued_at: usize,
    /// 1-based position in the queue right after entering it.
    pub position: usize,
    pub decomposed_at: Option<usize>,
}

impl QueueRecord {
    /// `decomposed_at − enqueued_at ≤ position`, or still pending.
    pub fn is_fair(&self) -> bool {
        self.decomposed_at.is_none_or(|d| d - self.enqueued_at <= self.position)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumStep {
    pub step: usize,
    /// Queue id and current coordinates of the column that was decomposed.
    pub chosen_id: usize,
    pub chosen: IntVector,
    pub facet_normal: IntVector,
    pub facet_offset: i64,
    pub dim: usize,
    pub lattice_points: usize,
    pub columns: usize,
    pub vertices: Vec<IntVector>,
    /// `(id, vector)` of the pending columns after this step, front first.
    pub queue: Vec<(usize, IntVector)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumLog {
    pub initial_vertices: Vec<IntVector>,
    pub steps: Vec<SpectrumStep>,
    pub ledger: Vec<QueueRecord>,
}

#[derive(Clone, Debug)]
pub struct DoublingSpectrum {
    /// `P₀, P₁, …`; `polytopes[i + 1]` is `polytopes[i]` doubled at step `i + 1`.
    pub polytopes: Vec<Polytope>,
    pub results: Vec<DoublingResult>,
    pub log: SpectrumLog,
}

impl DoublingSpectrum {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.log).expect("serializable")
    }

    pub fn is_fair(&self) -> bool {
        self.log.ledger.iter().all(QueueRecord::is_fair)
    }
}

/// FIFO doubling spectrum.
///
/// The queue starts with `Col(P)` in canonical order. Each step pops the
/// front column, doubles along its base facet, carries the pending columns
/// across the inclusion, and appends every column of the new polytope that
/// is not already pending, including the image of the one just used: every
/// column of every stage has to be decomposed again later on.
pub fn doubling_spectrum(p: &Polytope, steps: usize) -> Result<DoublingSpectrum, DoublingError> {
    if steps == 0 {
        return Err(DoublingError::NoSteps);
    }
    let mut current = ColumnStructure::new(p)?;
    if current.is_empty() {
        return Err(DoublingError::NoColumns);
    }
    let mut ledger: Vec<QueueRecord> = Vec::new();
    // (ledger id, column index in `current`)
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let enqueue = |ledger: &mut Vec<QueueRecord>, queue: &mut VecDeque<(usize, usize)>, cs: &ColumnStructure, col: usize, at: usize| {
        let id = ledger.len();
        queue.push_back((id, col));
        ledger.push(QueueRecord {
            id,
            vector: cs.vector(col).clone(),
            enqueued_at: at,
            position: queue.len(),
            decomposed_at: None,
        });
    };
    for col in 0..current.len() {
        enqueue(&mut ledger, &mut queue, &current, col, 0);
    }

    let mut polytopes = vec![p.clone()];
    let mut results = Vec::with_capacity(steps);
    let mut log_steps = Vec::with_capacity(steps);
    for step in 1..=steps {
        let (id, col) = queue.pop_front().expect("the queue never empties");
        ledger[id].decomposed_at = Some(step);
        let chosen = current.columns()[col].clone();
        let facet = current.polytope().facet(chosen.base).clone();
        let r = double_along_facet(current.polytope(), chosen.base)?;

        queue = queue.into_iter().map(|(qid, c)| (qid, r.col_inclusion[c])).collect();
        let next = r.doubled.clone();
        for c in 0..next.len() {
            if !queue.iter().any(|&(_, q)| q == c) {
                enqueue(&mut ledger, &mut queue, &next, c, step);
            }
        }
        log_steps.push(SpectrumStep {
            step,
            chosen_id: id,
            chosen: chosen.v.clone(),
            facet_normal: facet.normal.clone(),
            facet_offset: facet.offset,
            dim: next.polytope().ambient_dim(),
            lattice_points: next.polytope().lattice_points().len(),
            columns: next.len(),
            vertices: next.polytope().vertices().to_vec(),
            queue: queue.iter().map(|&(qid, c)| (qid, next.vector(c).clone())).collect(),
        });
        polytopes.push(next.polytope().clone());
        current = next;
        results.push(r);
    }
    Ok(DoublingSpectrum {
        polytopes,
        results,
        log: SpectrumLog { initial_vertices: p.vertices().to_vec(), steps: log_steps, ledger },
    })
}
