//! `Σ(P)`, the integral affine symmetries of `P`, and the subgroup
//! `Σ(P)_inv` generated by column inversions.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{AlgebraError, GradedAutomorphism};
use crate::columns::ColumnStructure;
use crate::exact::{CoeffRing, IntMatrix, IntVector};
use crate::polytope::{AffineLatticeMap, Polytope};

/// `perm[j]` is the index of the image of lattice point `j`.
pub type Permutation = Vec<usize>;

fn as_permutation(p: &Polytope, map: &AffineLatticeMap) -> Permutation {
    p.lattice_points()
        .iter()
        .map(|x| p.lattice_point_index(&map.apply(x)).expect("symmetries preserve the lattice points"))
        .collect()
}

fn compose(a: &Permutation, b: &Permutation) -> Permutation {
    b.iter().map(|&j| a[j]).collect()
}

fn inverse(a: &Permutation) -> Permutation {
    let mut out = vec![0; a.len()];
    for (j, &i) in a.iter().enumerate() {
        out[i] = j;
    }
    out
}

/// Closure of a generating set under composition.
fn generate(identity: Permutation, gens: &[Permutation]) -> BTreeSet<Permutation> {
    let mut group = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = compose(s, &g);
            if group.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    group
}

/// `Σ(P)` as permutation matrices of `L_P`, identity first.
pub fn sigma_group<R: CoeffRing>(p: &Polytope) -> Result<Vec<GradedAutomorphism<R>>, AlgebraError> {
    let maps = p.symmetries()?;
    let perms: BTreeSet<Permutation> = maps.iter().map(|m| as_permutation(p, m)).collect();
    for a in &perms {
        for b in &perms {
            assert!(perms.contains(&compose(a, b)), "symmetries are not closed under composition");
        }
    }
    maps.into_iter().map(|m| GradedAutomorphism::symmetry(p, m)).collect()
}

/// `x ↦ x + (ht_v(x,1) − ht_{−v}(x,1))·v`, which swaps the two ends of
/// every lattice segment parallel to `v`.
pub fn column_inversion(cs: &ColumnStructure, v: &IntVector) -> Result<AffineLatticeMap, AlgebraError> {
    let i = cs.index_of(v).ok_or_else(|| AlgebraError::NotAColumn(v.clone()))?;
    let k = cs.index_of(&-v).ok_or_else(|| AlgebraError::MissingNegative(v.clone()))?;
    let p = cs.polytope();
    let (f, g) = (p.facet(cs.columns()[i].base), p.facet(cs.columns()[k].base));
    let n = p.ambient_dim();
    let diff = &f.normal - &g.normal;
    let mut m = IntMatrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            m[(r, c)] += v[r] * diff[c];
        }
    }
    let map = AffineLatticeMap::new(m, v.scale(g.offset - f.offset));
    assert!(
        p.symmetries()?.contains(&map),
        "inversion along {v} is not a symmetry of the polytope"
    );
    Ok(map)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionReport {
    pub sigma_order: usize,
    pub inv_order: usize,
    pub quotient_order: usize,
    /// Columns `v` with `−v` also a column, each contributing an inversion.
    pub invertible_columns: Vec<IntVector>,
    pub normal: bool,
}

/// Computes `Σ(P)_inv ⊂ Σ(P)` and checks that it is normal.
pub fn inversion_subgroup(cs: &ColumnStructure) -> Result<InversionReport, AlgebraError> {
    let p = cs.polytope();
    let identity: Permutation = (0..p.lattice_points().len()).collect();
    let sigma: BTreeSet<Permutation> = p.symmetries()?.iter().map(|m| as_permutation(p, m)).collect();
    let invertible: Vec<IntVector> =
        cs.columns().iter().map(|c| c.v.clone()).filter(|v| cs.index_of(&-v).is_some()).collect();
    let gens: Vec<Permutation> = invertible
        .iter()
        .map(|v| column_inversion(cs, v).map(|m| as_permutation(p, &m)))
        .collect::<Result<_, _>>()?;
    let inv = generate(identity, &gens);
    assert!(inv.is_subset(&sigma), "column inversions generate maps outside Σ");
    let normal = sigma.iter().all(|s| {
        let s_inv = inverse(s);
        gens.iter().all(|g| inv.contains(&compose(&compose(s, g), &s_inv)))
    });
    assert_eq!(sigma.len() % inv.len(), 0, "Σ_inv is not a subgroup of Σ");
    Ok(InversionReport {
        sigma_order: sigma.len(),
        inv_order: inv.len(),
        quotient_order: sigma.len() / inv.len(),
        invertible_columns: invertible,
        normal,
    })
}
