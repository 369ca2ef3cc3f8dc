//! The interval `[R, S]` of intermediate subalgebras and its order theory.

use std::collections::{HashSet, VecDeque};

use crate::algebra::linalg::{self, Subspace, Vector};
use crate::algebra::{Extension, Subalgebra};
use crate::error::{Error, Result};

/// Resource limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of lattice nodes.
    pub nodes: usize,
    /// Maximum number of `(b, r)` pairs in the t-closedness scan.
    pub scan_pairs: u64,
    /// Maximum number of subspaces visited by the brute-force oracle.
    pub oracle_subspaces: u64,
    /// Maximum number of maximal chains listed.
    pub chains: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: 20_000,
            scan_pairs: 1 << 20,
            oracle_subspaces: 1 << 24,
            chains: 10_000,
        }
    }
}

/// The full interval `[R, S]` with its covering relation.
#[derive(Clone, Debug)]
pub struct ExtensionLattice {
    extension: Extension,
    nodes: Vec<Subalgebra>,
    /// `leq[i][j]` iff `nodes[i] ⊆ nodes[j]`.
    leq: Vec<Vec<bool>>,
    cover_edges: Vec<(usize, usize)>,
    bottom: usize,
    top: usize,
}

/// A maximal chain together with per-step annotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub nodes: Vec<usize>,
    pub kinds: Vec<Option<crate::canonical::MinimalKindTag>>,
    /// Crucial ideal of each step, contracted to the bottom ring.
    pub crucial_traces: Vec<Option<Subspace>>,
}

impl ChainReport {
    fn new(nodes: Vec<usize>) -> Self {
        let steps = nodes.len().saturating_sub(1);
        ChainReport {
            nodes,
            kinds: vec![None; steps],
            crucial_traces: vec![None; steps],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct ChainEnumeration {
    pub chains: Vec<ChainReport>,
    pub truncated: bool,
}

/// Canonical complement of `inner` inside `outer`: the reduced coset
/// representatives.
fn complement(inner: &Subspace, outer: &Subspace) -> Subspace {
    Subspace::span(
        inner.field(),
        inner.ambient_dim(),
        outer.rows().iter().map(|r| inner.reduce(r)),
    )
}

/// One representative per one-dimensional subspace of `space`.
fn projective_points(space: &Subspace) -> impl Iterator<Item = Vector> + '_ {
    linalg::all_vectors(space.field().order(), space.dim())
        .filter(|c| c.iter().find(|&&x| x != 0) == Some(&1))
        .map(move |c| space.combine(&c))
}

/// Breadth-first closure from `R`: every node `T` spawns `T[s]` for each
/// projective point `s` of a complement of `T` in `S`.
pub fn enumerate_interval(ext: &Extension, node_budget: usize) -> Result<ExtensionLattice> {
    let amb = ext.ambient();
    let top = ext.top().space();
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(ext.base().space().clone());
    queue.push_back(ext.base().space().clone());
    while let Some(t) = queue.pop_front() {
        let comp = complement(&t, top);
        for s in projective_points(&comp) {
            let next = amb.closure(&t, &[s]);
            if !seen.contains(&next) {
                if seen.len() >= node_budget {
                    return Err(Error::Budget {
                        what: "lattice nodes",
                        limit: node_budget as u64,
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let nodes = seen
        .into_iter()
        .map(|s| Subalgebra::from_closed(amb.clone(), s))
        .collect();
    Ok(ExtensionLattice::from_nodes(ext.clone(), nodes))
}

/// Every subspace between `R` and `S` that is closed under multiplication,
/// found by walking all subspaces of `S / R`.
pub fn brute_force_interval(ext: &Extension, subspace_budget: u64) -> Result<Vec<Subalgebra>> {
    let amb = ext.ambient();
    let base = ext.base().space();
    let comp = complement(base, ext.top().space());
    let count = linalg::subspace_count(amb.field().order() as u64, comp.dim());
    if count > subspace_budget as u128 {
        return Err(Error::Budget {
            what: "oracle subspaces",
            limit: subspace_budget,
        });
    }
    let mut found = Vec::new();
    linalg::for_each_subspace(amb.field(), comp.dim(), |w| {
        let mut cand = base.clone();
        for r in w.rows() {
            cand.insert(&comp.combine(r));
        }
        let rows = cand.rows();
        let closed = rows
            .iter()
            .enumerate()
            .all(|(i, x)| rows[i..].iter().all(|y| cand.contains(&amb.mul(x, y))));
        if closed {
            found.push(Subalgebra::from_closed(amb.clone(), cand));
        }
        true
    });
    found.sort();
    Ok(found)
}

impl ExtensionLattice {
    /// Builds the order and covering relation on a complete node set.
    pub fn from_nodes(extension: Extension, mut nodes: Vec<Subalgebra>) -> Self {
        nodes.sort();
        nodes.dedup();
        let n = nodes.len();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            for j in i + 1..n {
                if nodes[i].dim() < nodes[j].dim() && nodes[i].is_subalgebra_of(&nodes[j]) {
                    leq[i][j] = true;
                }
            }
        }
        let mut cover_edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && !(i + 1..j).any(|k| leq[i][k] && leq[k][j]) {
                    cover_edges.push((i, j));
                }
            }
        }
        let bottom = nodes
            .iter()
            .position(|x| x == extension.base())
            .expect("base is a node");
        let top = nodes
            .iter()
            .position(|x| x == extension.top())
            .expect("top is a node");
        ExtensionLattice {
            extension,
            nodes,
            leq,
            cover_edges,
            bottom,
            top,
        }
    }

    pub fn extension(&self) -> &Extension {
        &self.extension
    }

    pub fn nodes(&self) -> &[Subalgebra] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.cover_edges
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] || self.leq[j][i]
    }

    pub fn index_of(&self, node: &Subalgebra) -> Option<usize> {
        self.nodes.binary_search(node).ok()
    }

    /// Nodes of the sub-interval `[nodes[lo], nodes[hi]]`.
    pub fn interval_nodes(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.leq[lo][k] && self.leq[k][hi])
            .collect()
    }

    /// Longest cover path from bottom to top and a chain attaining it.
    pub fn length(&self) -> (usize, Vec<usize>) {
        self.longest_path(self.bottom, self.top)
    }

    /// Longest cover path inside `[nodes[lo], nodes[hi]]`.
    pub fn longest_path(&self, lo: usize, hi: usize) -> (usize, Vec<usize>) {
        let n = self.len();
        let mut dist: Vec<Option<usize>> = vec![None; n];
        let mut pred = vec![usize::MAX; n];
        dist[lo] = Some(0);
        // indices are sorted by dimension, a topological order
        for &(i, j) in &self.cover_edges {
            if !self.leq[j][hi] {
                continue;
            }
            if let Some(d) = dist[i] {
                if dist[j].is_none_or(|dj| d + 1 > dj) {
                    dist[j] = Some(d + 1);
                    pred[j] = i;
                }
            }
        }
        let len = dist[hi].expect("hi reachable from lo");
        let mut chain = vec![hi];
        let mut cur = hi;
        while cur != lo {
            cur = pred[cur];
            chain.push(cur);
        }
        chain.reverse();
        (len, chain)
    }

    /// First incomparable pair in index order, if any.
    pub fn incomparable_pair(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !self.comparable(i, j))
    }

    pub fn is_chained(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    pub fn is_pinched_at(&self, node: &Subalgebra) -> Result<bool> {
        let t = self.index_of(node).ok_or(Error::NotANode)?;
        Ok((0..self.len()).all(|k| self.comparable(k, t)))
    }

    /// Least node containing both.
    pub fn join(&self, i: usize, j: usize) -> usize {
        (0..self.len())
            .find(|&k| self.leq[i][k] && self.leq[j][k])
            .expect("top bounds every pair")
    }

    /// Greatest node contained in both.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        (0..self.len())
            .rev()
            .find(|&k| self.leq[k][i] && self.leq[k][j])
            .expect("bottom is below every pair")
    }

    /// `T1 + T2 = T1 T2` for every pair; returns the first failing pair.
    pub fn delta_failure(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let sum = self.nodes[i].space().sum(self.nodes[j].space());
                let compositum = self.nodes[i].join(&self.nodes[j]);
                if sum != *compositum.space() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_delta_extension(&self) -> bool {
        self.delta_failure().is_none()
    }

    /// Both distributive identities over all triples; returns the first
    /// failing triple.
    pub fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        let join: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| self.join(i, j)).collect())
            .collect();
        let meet: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| self.meet(i, j)).collect())
            .collect();
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let first = meet[b][join[c][d]] == join[meet[b][c]][meet[b][d]];
                    let second = join[b][meet[c][d]] == meet[join[b][c]][join[b][d]];
                    if !(first && second) {
                        return Some((b, c, d));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_failure().is_none()
    }

    /// Depth-first listing of bottom-to-top cover paths.
    pub fn maximal_chains(&self, budget: usize) -> ChainEnumeration {
        let mut succ = vec![Vec::new(); self.len()];
        for &(i, j) in &self.cover_edges {
            succ[i].push(j);
        }
        let mut chains = Vec::new();
        let mut truncated = false;
        let mut path = vec![self.bottom];
        fn walk(
            lat: &ExtensionLattice,
            succ: &[Vec<usize>],
            path: &mut Vec<usize>,
            chains: &mut Vec<ChainReport>,
            budget: usize,
            truncated: &mut bool,
        ) {
            if *truncated {
                return;
            }
            let cur = *path.last().expect("nonempty");
            if cur == lat.top {
                if chains.len() >= budget {
                    *truncated = true;
                } else {
                    chains.push(ChainReport::new(path.clone()));
                }
                return;
            }
            for &next in &succ[cur] {
                path.push(next);
                walk(lat, succ, path, chains, budget, truncated);
                path.pop();
            }
        }
        walk(self, &succ, &mut path, &mut chains, budget, &mut truncated);
        ChainEnumeration { chains, truncated }
    }
}

/// A maximal ideal of `R` where the localized interval is not a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticFailure {
    pub maximal_ideal: Subspace,
    /// An incomparable pair of the localized interval, lifted back into the
    /// ambient algebra as subspaces of `eS`.
    pub pair: (Subspace, Subspace),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticVerdict {
    pub arithmetic: bool,
    pub failures: Vec<ArithmeticFailure>,
}

/// Chained after localizing at every maximal ideal of the support.
pub fn is_arithmetic(ext: &Extension, node_budget: usize) -> Result<ArithmeticVerdict> {
    let spec = ext.base().spectrum();
    let mut failures = Vec::new();
    for idx in ext.support_indices() {
        let (local, corner) = ext.localize_with_corner(idx)?;
        let lat = enumerate_interval(&local, node_budget)?;
        if let Some((a, b)) = lat.incomparable_pair() {
            let lift = |s: &Subspace| {
                Subspace::span(
                    corner.field(),
                    corner.ambient_dim(),
                    s.rows().iter().map(|r| corner.combine(r)),
                )
            };
            failures.push(ArithmeticFailure {
                maximal_ideal: spec.maximal_ideals[idx].clone(),
                pair: (lift(lat.nodes[a].space()), lift(lat.nodes[b].space())),
            });
        }
    }
    Ok(ArithmeticVerdict {
        arithmetic: failures.is_empty(),
        failures,
    })
}

/// Comparison of `[R + J, S]` with `[R/I, S/J]` under `T ↦ T/J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCorrespondence {
    pub upper_nodes: usize,
    pub quotient_nodes: usize,
    pub bijective: bool,
    pub order_preserving: bool,
    pub order_reflecting: bool,
}

impl QuotientCorrespondence {
    pub fn holds(&self) -> bool {
        self.bijective && self.order_preserving && self.order_reflecting
    }
}

/// Builds both intervals independently and checks that `T ↦ T/J` is an
/// order isomorphism, for an ideal `J` of `S`.
pub fn quotient_correspondence(
    ext: &Extension,
    j: &Subspace,
    node_budget: usize,
) -> Result<QuotientCorrespondence> {
    let upper_ext = Extension::new(ext.base().plus_ideal(j), ext.top().clone())?;
    let upper = enumerate_interval(&upper_ext, node_budget)?;
    let (reduced, quotient) = ext.modulo(j)?;
    let lower = enumerate_interval(&reduced, node_budget)?;
    let image = upper
        .nodes
        .iter()
        .map(|t| {
            let s = ext.project(&quotient, t.space())?;
            Ok(lower.nodes.binary_search_by(|n| n.space().cmp(&s)).ok())
        })
        .collect::<Result<Vec<_>>>()?;
    let hits: HashSet<usize> = image.iter().flatten().copied().collect();
    let bijective = image.iter().all(Option::is_some)
        && hits.len() == upper.len()
        && upper.len() == lower.len();
    let (mut preserving, mut reflecting) = (bijective, bijective);
    if bijective {
        let phi: Vec<usize> = image.into_iter().flatten().collect();
        for a in 0..upper.len() {
            for b in 0..upper.len() {
                let up = upper.leq(a, b);
                let down = lower.leq(phi[a], phi[b]);
                preserving &= !up || down;
                reflecting &= !down || up;
            }
        }
    }
    Ok(QuotientCorrespondence {
        upper_nodes: upper.len(),
        quotient_nodes: lower.len(),
        bijective,
        order_preserving: preserving,
        order_reflecting: reflecting,
    })
}
