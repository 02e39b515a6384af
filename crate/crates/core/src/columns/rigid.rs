//! Rigid systems: sets of columns whose strict hull is the path-pair
//! structure of a directed graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ColumnStructure;
use crate::exact::IntVector;

/// Simple directed graph on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl DirectedGraph {
    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.vertices];
        for &(a, b) in &self.edges {
            succ[a].push(b);
        }
        succ
    }

    /// Pairs `(s, t)` joined by a nonempty directed path.
    pub fn path_classes(&self) -> BTreeSet<(usize, usize)> {
        let succ = self.successors();
        let mut out = BTreeSet::new();
        for s in 0..self.vertices {
            let mut stack = succ[s].clone();
            let mut seen = BTreeSet::new();
            while let Some(t) = stack.pop() {
                if seen.insert(t) {
                    out.insert((s, t));
                    stack.extend(&succ[t]);
                }
            }
        }
        out
    }

    /// No isolated vertices, loops or multi-edges, and an edge is the only
    /// directed path between its endpoints.
    pub fn check_conditions(&self) -> Result<(), String> {
        let mut touched = vec![false; self.vertices];
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.edges {
            if a == b {
                return Err(format!("loop at {a}"));
            }
            if !seen.insert((a, b)) {
                return Err(format!("multiple edge {a}→{b}"));
            }
            touched[a] = true;
            touched[b] = true;
        }
        if let Some(v) = touched.iter().position(|t| !t) {
            return Err(format!("isolated vertex {v}"));
        }
        let succ = self.successors();
        for &(a, b) in &self.edges {
            // Any path a → b other than the edge leaves a through another edge.
            let mut stack: Vec<usize> = succ[a].iter().copied().filter(|&x| x != b).collect();
            let mut visited = BTreeSet::new();
            while let Some(x) = stack.pop() {
                if x == b {
                    return Err(format!("second path {a}→{b}"));
                }
                if visited.insert(x) {
                    stack.extend(&succ[x]);
                }
            }
        }
        Ok(())
    }
}

/// A graph with a labelling `[V] → path classes`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidCertificate {
    pub graph: DirectedGraph,
    /// Each element of `[V]` with its `(start, end)` pair.
    pub labels: Vec<(IntVector, (usize, usize))>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rigidity {
    Rigid(RigidCertificate),
    NotRigid(String),
    /// The bounded graph search ran out of budget.
    Unknown,
}

/// Re-checks a certificate against the product table alone.
pub fn verify_certificate(cs: &ColumnStructure, set: &[usize], cert: &RigidCertificate) -> Result<(), String> {
    cert.graph.check_conditions()?;
    let hull = cs.strict_hull(set);
    let mut label: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (v, pair) in &cert.labels {
        let i = cs.index_of(v).ok_or_else(|| format!("{v} is not a column"))?;
        if !hull.contains(&i) {
            return Err(format!("{v} is not in the strict hull"));
        }
        label.insert(i, *pair);
    }
    if label.len() != hull.len() || label.len() != cert.labels.len() {
        return Err("labelling does not cover the strict hull exactly once".into());
    }
    let image: BTreeSet<(usize, usize)> = label.values().copied().collect();
    if image.len() != label.len() {
        return Err("labelling is not injective".into());
    }
    if image != cert.graph.path_classes() {
        return Err("labels are not exactly the path classes".into());
    }
    for (&a, &(sa, ta)) in &label {
        for (&b, &(sb, tb)) in &label {
            let composable = ta == sb;
            match cs.product(a, b) {
                Some(c) if composable => {
                    if label.get(&c) != Some(&(sa, tb)) {
                        return Err(format!("label of {}·{} is not the composite", cs.vector(a), cs.vector(b)));
                    }
                }
                Some(_) => return Err(format!("{}·{} exists but labels do not compose", cs.vector(a), cs.vector(b))),
                None if composable => {
                    return Err(format!("labels of {} and {} compose but the product is missing", cs.vector(a), cs.vector(b)))
                }
                None => {}
            }
        }
    }
    Ok(())
}

const SEARCH_BUDGET: u64 = 2_000_000;

impl ColumnStructure {
    pub fn rigidity(&self, set: &[usize]) -> Rigidity {
        let strict = self.strict_hull(set);
        for &a in &strict {
            let neg = -self.vector(a);
            if strict.iter().any(|&b| *self.vector(b) == neg) {
                return Rigidity::NotRigid(format!("strict hull contains ±{}", self.vector(a)));
            }
        }
        let weak = self.weak_hull(set);
        if weak != strict {
            return Rigidity::NotRigid("strict and weak hulls differ".into());
        }
        let irreducible: Vec<usize> = strict
            .iter()
            .copied()
            .filter(|&c| !strict.iter().any(|&a| strict.iter().any(|&b| self.product(a, b) == Some(c))))
            .collect();
        if let Some(cert) = self.glued_candidate(&strict, &irreducible) {
            if verify_certificate(self, set, &cert).is_ok() {
                return Rigidity::Rigid(cert);
            }
        }
        self.search_graphs(set, &strict, &irreducible)
    }

    /// Each element gets a start and an end node; whenever `ab = c` the end
    /// of `a` is glued to the start of `b`, and `c` spans from `a`'s start
    /// to `b`'s end. Irreducibles become the edges.
    fn glued_candidate(&self, strict: &[usize], irreducible: &[usize]) -> Option<RigidCertificate> {
        let pos: BTreeMap<usize, usize> = strict.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let m = strict.len();
        let mut uf = UnionFind::new(2 * m);
        for &a in strict {
            for &b in strict {
                if let Some(c) = self.product(a, b) {
                    let (a, b, c) = (pos[&a], pos[&b], *pos.get(&c)?);
                    uf.union(2 * a + 1, 2 * b);
                    uf.union(2 * c, 2 * a);
                    uf.union(2 * c + 1, 2 * b + 1);
                }
            }
        }
        let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
        let mut node = |x: usize, uf: &mut UnionFind| {
            let root = uf.find(x);
            let next = renumber.len();
            *renumber.entry(root).or_insert(next)
        };
        let mut labels = Vec::with_capacity(m);
        for (k, &c) in strict.iter().enumerate() {
            let pair = (node(2 * k, &mut uf), node(2 * k + 1, &mut uf));
            labels.push((self.vector(c).clone(), pair));
        }
        let edges: Vec<(usize, usize)> =
            irreducible.iter().map(|c| labels[pos[c]].1).collect();
        let used: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        if used.len() != renumber.len() {
            return None;
        }
        Some(RigidCertificate { graph: DirectedGraph { vertices: renumber.len(), edges }, labels })
    }

    /// Exhaustive assignment of irreducibles to edges on at most
    /// `|irreducibles| + 1` vertices, vertices introduced in order.
    fn search_graphs(&self, set: &[usize], strict: &[usize], irreducible: &[usize]) -> Rigidity {
        let k = irreducible.len();
        let max_vertices = k + 1;
        let mut budget = SEARCH_BUDGET;
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(k);
        let mut found = None;
        let exhausted = !self.assign(set, strict, irreducible, max_vertices, 0, &mut edges, &mut budget, &mut found);
        match found {
            Some(cert) => Rigidity::Rigid(cert),
            None if exhausted => Rigidity::Unknown,
            None => Rigidity::NotRigid("no graph realizes the strict hull".into()),
        }
    }

    /// Returns `false` once the budget runs out.
    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        set: &[usize],
        strict: &[usize],
        irreducible: &[usize],
        max_vertices: usize,
        used: usize,
        edges: &mut Vec<(usize, usize)>,
        budget: &mut u64,
        found: &mut Option<RigidCertificate>,
    ) -> bool {
        if found.is_some() {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if edges.len() == irreducible.len() {
            if let Some(cert) = self.labels_from_edges(strict, irreducible, edges, used) {
                if verify_certificate(self, set, &cert).is_ok() {
                    *found = Some(cert);
                }
            }
            return true;
        }
        // Vertices are numbered in order of first appearance.
        for a in 0..=used.min(max_vertices - 1) {
            let after_a = if a == used { used + 1 } else { used };
            for b in 0..=after_a.min(max_vertices - 1) {
                if a == b {
                    continue;
                }
                let new_used = if b == after_a { after_a + 1 } else { after_a };
                edges.push((a, b));
                let ok = self.assign(set, strict, irreducible, max_vertices, new_used, edges, budget, found);
                edges.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Propagates edge labels of irreducibles through the product table.
    fn labels_from_edges(
        &self,
        strict: &[usize],
        irreducible: &[usize],
        edges: &[(usize, usize)],
        vertices: usize,
    ) -> Option<RigidCertificate> {
        let mut label: BTreeMap<usize, (usize, usize)> = irreducible.iter().copied().zip(edges.iter().copied()).collect();
        loop {
            let before = label.len();
            for &a in strict {
                for &b in strict {
                    let Some(c) = self.product(a, b) else { continue };
                    let (Some(&(sa, ta)), Some(&(sb, tb))) = (label.get(&a), label.get(&b)) else { continue };
                    if ta != sb {
                        return None;
                    }
                    match label.get(&c) {
                        Some(&l) if l != (sa, tb) => return None,
                        Some(_) => {}
                        None => {
                            label.insert(c, (sa, tb));
                        }
                    }
                }
            }
            if label.len() == before {
                break;
            }
        }
        if label.len() != strict.len() {
            return None;
        }
        Some(RigidCertificate {
            graph: DirectedGraph { vertices, edges: edges.to_vec() },
            labels: strict.iter().map(|c| (self.vector(*c).clone(), label[c])).collect(),
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
