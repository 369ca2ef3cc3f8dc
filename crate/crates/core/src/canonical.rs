//! Minimal-extension types, the canonical decomposition
//! `R ⊆ ⁺R ⊆ ᵗR ⊆ S` and the residual invariant `Λ`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::linalg::{Subspace, Vector};
use crate::algebra::{conductor, Extension, Subalgebra};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_interval, ChainReport, ExtensionLattice};

/// The three types of minimal finite extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MinimalKindTag {
    Inert,
    Decomposed,
    Ramified,
}

impl MinimalKindTag {
    pub fn letter(self) -> char {
        match self {
            MinimalKindTag::Inert => 'I',
            MinimalKindTag::Decomposed => 'D',
            MinimalKindTag::Ramified => 'R',
        }
    }

    /// Decomposed and ramified steps are the infra-integral ones.
    pub fn is_infra_integral(self) -> bool {
        !matches!(self, MinimalKindTag::Inert)
    }
}

/// Classification of a minimal extension `T ⊂ U` with its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalKind {
    pub tag: MinimalKindTag,
    /// `M = (T : U)`, a maximal ideal of `T`.
    pub conductor: Subspace,
    /// Maximal ideals of `U` lying over `M`.
    pub above: Vec<Subspace>,
    /// `[U/Q : T/M]` for each `Q` in `above`.
    pub residual_degrees: Vec<usize>,
}

fn is_prime(n: usize) -> bool {
    crate::algebra::field::big_omega(n as u64) == 1
}

/// Tests the inert, decomposed and ramified condition sets for `T ⊂ U`,
/// assuming the pair is a cover. Exactly one must hold.
pub fn classify_cover(t: &Subalgebra, u: &Subalgebra) -> Result<MinimalKind> {
    let m = conductor(t, u)?.0;
    let t_spec = t.spectrum();
    if t_spec.position(&m).is_none() {
        return Err(Error::invariant(
            "minimal-conductor",
            "conductor of a minimal extension is not maximal",
        ));
    }
    let f = t.residue_dim(&m);
    let u_spec = u.spectrum();
    let above: Vec<Subspace> = u_spec
        .maximal_ideals
        .iter()
        .filter(|q| q.contains_space(&m))
        .cloned()
        .collect();
    let residual_degrees: Vec<usize> = above.iter().map(|q| u.residue_dim(q) / f).collect();
    let amb = t.ambient();

    let inert = above.len() == 1
        && above[0] == m
        && is_prime(u.residue_dim(&m) / f)
        && u.residue_dim(&m).is_multiple_of(f);
    let decomposed = above.iter().enumerate().any(|(i, m1)| {
        above[i + 1..]
            .iter()
            .any(|m2| m1.intersect(m2) == m && u.residue_dim(m1) == f && u.residue_dim(m2) == f)
    });
    let ramified = u.residue_dim(&m) == 2 * f
        && above.iter().any(|mp| {
            mp.dim() > m.dim()
                && m.contains_space(&amb.product_space(mp, mp))
                && u.residue_dim(mp) == f
        });
    let tags: Vec<MinimalKindTag> = [
        (inert, MinimalKindTag::Inert),
        (decomposed, MinimalKindTag::Decomposed),
        (ramified, MinimalKindTag::Ramified),
    ]
    .into_iter()
    .filter_map(|(ok, tag)| ok.then_some(tag))
    .collect();
    match tags.as_slice() {
        [tag] => Ok(MinimalKind {
            tag: *tag,
            conductor: m,
            above,
            residual_degrees,
        }),
        _ => Err(Error::invariant(
            "trichotomy",
            format!("minimal extension satisfies {} condition sets", tags.len()),
        )),
    }
}

/// Classifies `T ⊂ U` after checking that `[T, U] = {T, U}`.
pub fn classify_minimal(t: &Subalgebra, u: &Subalgebra) -> Result<MinimalKind> {
    let ext = Extension::new(t.clone(), u.clone())?;
    if ext.is_trivial() {
        return Err(Error::NotAdjacent);
    }
    match enumerate_interval(&ext, 2) {
        Ok(_) => classify_cover(t, u),
        Err(Error::Budget { .. }) => Err(Error::NotAdjacent),
        Err(e) => Err(e),
    }
}

/// The unique maximal ideal of `T` where `T ⊂ U` is not a local equality,
/// located by localizing at every maximal ideal and checked against the
/// conductor.
pub fn crucial_ideal(t: &Subalgebra, u: &Subalgebra) -> Result<Subspace> {
    let ext = Extension::new(t.clone(), u.clone())?;
    let supp = ext.support();
    let [m] = supp.as_slice() else {
        return Err(Error::invariant(
            "crucial-ideal",
            format!("{} maximal ideals with a proper localization", supp.len()),
        ));
    };
    if *m != conductor(t, u)?.0 {
        return Err(Error::invariant(
            "crucial-ideal",
            "crucial ideal differs from the conductor",
        ));
    }
    Ok(m.clone())
}

/// All residual extensions are isomorphisms and `Max(S) -> Max(R)` is
/// bijective.
pub fn is_subintegral(ext: &Extension) -> Result<bool> {
    let res = ext.residual_extensions()?;
    let mut hit: Vec<usize> = res.iter().map(|r| r.base_index).collect();
    hit.sort_unstable();
    hit.dedup();
    Ok(res.iter().all(|r| r.degree == 1)
        && hit.len() == res.len()
        && hit.len() == ext.base().spectrum().len())
}

/// All residual extensions are isomorphisms.
pub fn is_infra_integral(ext: &Extension) -> Result<bool> {
    Ok(ext.residual_extensions()?.iter().all(|r| r.degree == 1))
}

/// Which route decided t-closedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TClosedPath {
    /// Exhaustive scan of `(b, r) ∈ S × R`.
    Definitional,
    /// Every step of a maximal chain is inert.
    CoverClassification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TClosedVerdict {
    pub t_closed: bool,
    pub path: TClosedPath,
    /// A pair `(b, r)` with `b² - rb, b³ - rb² ∈ R` but `b ∉ R`.
    pub counterexample: Option<(Vector, Vector)>,
}

/// Scans all `b ∈ S \ R`, `r ∈ R` for a failure of
/// `b² - rb ∈ R, b³ - rb² ∈ R ⇒ b ∈ R`.
pub fn t_closed_scan(ext: &Extension) -> Option<(Vector, Vector)> {
    let amb = ext.ambient();
    let base = ext.base();
    let r_elems: Vec<Vector> = base.space().elements().collect();
    for b in ext.top().space().elements() {
        if base.contains(&b) {
            continue;
        }
        let b2 = amb.mul(&b, &b);
        let b3 = amb.mul(&b2, &b);
        for r in &r_elems {
            let rb = amb.mul(r, &b);
            if !base.contains(&amb.sub(&b2, &rb)) {
                continue;
            }
            let rb2 = amb.mul(r, &b2);
            if base.contains(&amb.sub(&b3, &rb2)) {
                return Some((b, r.clone()));
            }
        }
    }
    None
}

/// Every step of one maximal chain of `[R, S]` is inert.
pub fn t_closed_by_covers(ext: &Extension, node_budget: usize) -> Result<bool> {
    let lat = enumerate_interval(ext, node_budget)?;
    let (_, chain) = lat.length();
    for w in chain.windows(2) {
        let kind = classify_cover(&lat.nodes()[w[0]], &lat.nodes()[w[1]])?;
        if kind.tag != MinimalKindTag::Inert {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Definitional scan when `|S|·|R|` fits the budget, cover classification
/// otherwise.
pub fn is_t_closed(
    ext: &Extension,
    scan_budget: u64,
    node_budget: usize,
) -> Result<TClosedVerdict> {
    let q = ext.ambient().field().order() as f64;
    let pairs = q.powi((ext.top().dim() + ext.base().dim()) as i32);
    if pairs <= scan_budget as f64 {
        let counterexample = t_closed_scan(ext);
        Ok(TClosedVerdict {
            t_closed: counterexample.is_none(),
            path: TClosedPath::Definitional,
            counterexample,
        })
    } else {
        Ok(TClosedVerdict {
            t_closed: t_closed_by_covers(ext, node_budget)?,
            path: TClosedPath::CoverClassification,
            counterexample: None,
        })
    }
}

/// Classifies every cover edge of the lattice, in edge order.
pub fn classify_edges(lat: &ExtensionLattice) -> Result<Vec<MinimalKind>> {
    for n in lat.nodes() {
        n.spectrum();
    }
    lat.cover_edges()
        .par_iter()
        .map(|&(i, j)| classify_cover(&lat.nodes()[i], &lat.nodes()[j]))
        .collect()
}

/// Counts of each minimal type among the cover edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub inert: usize,
    pub decomposed: usize,
    pub ramified: usize,
}

impl Census {
    pub fn of(kinds: &[MinimalKind]) -> Self {
        let mut c = Census::default();
        for k in kinds {
            match k.tag {
                MinimalKindTag::Inert => c.inert += 1,
                MinimalKindTag::Decomposed => c.decomposed += 1,
                MinimalKindTag::Ramified => c.ramified += 1,
            }
        }
        c
    }
}

/// `R ⊆ ⁺R ⊆ ᵗR ⊆ S`. The integral closure is `S` itself for finite rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalDecomposition {
    pub seminormalization: Subalgebra,
    pub t_closure: Subalgebra,
}

/// Unique maximal element (under inclusion) among the flagged nodes.
fn unique_greatest(lat: &ExtensionLattice, flagged: &[usize], tag: &'static str) -> Result<usize> {
    let maximal: Vec<usize> = flagged
        .iter()
        .copied()
        .filter(|&i| !flagged.iter().any(|&j| j != i && lat.leq(i, j)))
        .collect();
    match maximal.as_slice() {
        [g] if flagged.iter().all(|&i| lat.leq(i, *g)) => Ok(*g),
        _ => Err(Error::invariant(
            tag,
            format!("{} maximal candidates", maximal.len()),
        )),
    }
}

fn unique_least(lat: &ExtensionLattice, flagged: &[usize], tag: &'static str) -> Result<usize> {
    let minimal: Vec<usize> = flagged
        .iter()
        .copied()
        .filter(|&i| !flagged.iter().any(|&j| j != i && lat.leq(j, i)))
        .collect();
    match minimal.as_slice() {
        [l] if flagged.iter().all(|&i| lat.leq(*l, i)) => Ok(*l),
        _ => Err(Error::invariant(
            tag,
            format!("{} minimal candidates", minimal.len()),
        )),
    }
}

fn node_ext(lat: &ExtensionLattice, i: usize, j: usize) -> Extension {
    Extension::new(lat.nodes()[i].clone(), lat.nodes()[j].clone()).expect("nodes are nested")
}

/// Largest `T ∈ [R, S]` with `R ⊆ T` subintegral.
pub fn seminormalization(lat: &ExtensionLattice) -> Result<Subalgebra> {
    let b = lat.bottom();
    let mut flagged = Vec::new();
    for i in 0..lat.len() {
        if lat.leq(b, i) && is_subintegral(&node_ext(lat, b, i))? {
            flagged.push(i);
        }
    }
    let g = unique_greatest(lat, &flagged, "seminormalization")?;
    Ok(lat.nodes()[g].clone())
}

/// Greatest `B'` with `R ⊆ B'` infra-integral and least `B` with `B ⊆ S`
/// t-closed; the two must agree.
pub fn t_closure(
    lat: &ExtensionLattice,
    scan_budget: u64,
    node_budget: usize,
) -> Result<Subalgebra> {
    let (b, t) = (lat.bottom(), lat.top());
    let mut infra = Vec::new();
    let mut closed = Vec::new();
    for i in 0..lat.len() {
        if is_infra_integral(&node_ext(lat, b, i))? {
            infra.push(i);
        }
        if is_t_closed(&node_ext(lat, i, t), scan_budget, node_budget)?.t_closed {
            closed.push(i);
        }
    }
    let greatest = unique_greatest(lat, &infra, "t-closure")?;
    let least = unique_least(lat, &closed, "t-closure")?;
    if greatest != least {
        return Err(Error::invariant(
            "t-closure",
            "greatest infra-integral node differs from least t-closed-below-S node",
        ));
    }
    Ok(lat.nodes()[greatest].clone())
}

/// Computes both closures and verifies the defining properties of each
/// stage.
pub fn canonical_decomposition(
    lat: &ExtensionLattice,
    scan_budget: u64,
    node_budget: usize,
) -> Result<CanonicalDecomposition> {
    let plus = seminormalization(lat)?;
    let tc = t_closure(lat, scan_budget, node_budget)?;
    let r = &lat.nodes()[lat.bottom()];
    let s = &lat.nodes()[lat.top()];
    if !(plus.is_subalgebra_of(&tc) && r.is_subalgebra_of(&plus) && tc.is_subalgebra_of(s)) {
        return Err(Error::invariant(
            "canonical-decomposition",
            "stages not nested",
        ));
    }
    let ok = is_subintegral(&Extension::new(r.clone(), plus.clone())?)?
        && is_infra_integral(&Extension::new(plus.clone(), tc.clone())?)?
        && is_t_closed(
            &Extension::new(tc.clone(), s.clone())?,
            scan_budget,
            node_budget,
        )?
        .t_closed;
    if !ok {
        return Err(Error::invariant(
            "canonical-decomposition",
            "a stage lacks its defining property",
        ));
    }
    Ok(CanonicalDecomposition {
        seminormalization: plus,
        t_closure: tc,
    })
}

/// `Λ(S/R)`: the longest residual field extension, in prime steps.
pub fn lambda_invariant(ext: &Extension) -> Result<usize> {
    Ok(ext
        .residual_extensions()?
        .iter()
        .map(|r| r.length)
        .max()
        .unwrap_or(0))
}

/// Agreement of `Λ` with its alternative characterizations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaReport {
    pub lambda: usize,
    /// `Λ(S / ᵗR)`.
    pub lambda_over_t_closure: usize,
    /// For t-closed extensions: `max_M ℓ[R_M, S_M]` over the support.
    pub max_local_length: Option<usize>,
    pub length: usize,
    pub support_size: usize,
    pub consistent: bool,
}

pub fn lambda_crosscheck(
    lat: &ExtensionLattice,
    t_closure: &Subalgebra,
    t_closed: bool,
    node_budget: usize,
) -> Result<LambdaReport> {
    let ext = lat.extension();
    let lambda = lambda_invariant(ext)?;
    let over_tc = lambda_invariant(&Extension::new(t_closure.clone(), ext.top().clone())?)?;
    let support = ext.support_indices();
    let length = lat.length().0;
    let mut consistent = lambda == over_tc;
    let max_local_length = if t_closed {
        let mut best = 0;
        for &idx in &support {
            let local = ext.localize_at(idx)?;
            best = best.max(enumerate_interval(&local, node_budget)?.length().0);
        }
        consistent &= best == lambda && length <= support.len() * lambda;
        Some(best)
    } else {
        None
    };
    Ok(LambdaReport {
        lambda,
        lambda_over_t_closure: over_tc,
        max_local_length,
        length,
        support_size: support.len(),
        consistent,
    })
}

/// Outcome of checking a classified maximal chain against the extension's
/// predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub infra_integral: bool,
    pub t_closed: bool,
    pub all_steps_infra: bool,
    pub all_steps_inert: bool,
    /// For local t-closed extensions: `M = (R:S)` and `S` local with maximal
    /// ideal `M`.
    pub local_conductor_ok: Option<bool>,
    pub violations: Vec<String>,
}

impl ChainCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Fills the step kinds and crucial-ideal traces of a chain.
pub fn annotate_chain(lat: &ExtensionLattice, chain: &mut ChainReport) -> Result<()> {
    let base = lat.nodes()[lat.bottom()].space().clone();
    for (k, w) in chain.nodes.clone().windows(2).enumerate() {
        let (t, u) = (&lat.nodes()[w[0]], &lat.nodes()[w[1]]);
        chain.kinds[k] = Some(classify_cover(t, u)?.tag);
        chain.crucial_traces[k] = Some(crucial_ideal(t, u)?.intersect(&base));
    }
    Ok(())
}

/// Infra-integral iff every step is ramified or decomposed; t-closed iff
/// every step is inert; in the local t-closed case the conductor is the
/// maximal ideal and the top ring is local.
pub fn verify_chain_classification(
    lat: &ExtensionLattice,
    chain: &ChainReport,
    t_closed: bool,
) -> Result<ChainCheck> {
    let ext = lat.extension();
    let kinds: Vec<MinimalKindTag> = chain
        .kinds
        .iter()
        .map(|k| k.ok_or_else(|| Error::Hypothesis("chain steps not classified".into())))
        .collect::<Result<_>>()?;
    let infra_integral = is_infra_integral(ext)?;
    let all_steps_infra = kinds.iter().all(|k| k.is_infra_integral());
    let all_steps_inert = kinds.iter().all(|k| !k.is_infra_integral());
    let mut violations = Vec::new();
    if infra_integral != all_steps_infra {
        violations.push(format!(
            "infra-integral = {infra_integral} but all steps ramified/decomposed = {all_steps_infra}"
        ));
    }
    if t_closed != all_steps_inert {
        violations.push(format!(
            "t-closed = {t_closed} but all steps inert = {all_steps_inert}"
        ));
    }
    let local_conductor_ok = (t_closed && ext.base().is_local()).then(|| {
        let m = &ext.base().spectrum().maximal_ideals[0];
        let top_spec = ext.top().spectrum();
        ext.conductor().0 == *m && top_spec.maximal_ideals.as_slice() == [m.clone()]
    });
    if local_conductor_ok == Some(false) {
        violations.push("local t-closed extension without (R:S) = M = Max(S)".into());
    }
    Ok(ChainCheck {
        infra_integral,
        t_closed,
        all_steps_infra,
        all_steps_inert,
        local_conductor_ok,
        violations,
    })
}

/// Grows from `R` along ramified or decomposed covers until none is left;
/// the endpoint is the t-closure.
pub fn greedy_infra_integral_endpoint(lat: &ExtensionLattice, kinds: &[MinimalKind]) -> usize {
    let mut cur = lat.bottom();
    loop {
        let next = lat
            .cover_edges()
            .iter()
            .zip(kinds)
            .find(|((i, _), k)| *i == cur && k.tag.is_infra_integral())
            .map(|((_, j), _)| *j);
        match next {
            Some(j) => cur = j,
            None => return cur,
        }
    }
}

/// Both sides of a length split, computed on independently enumerated
/// sub-intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthSplit {
    pub total: usize,
    pub lower: usize,
    pub upper: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthAdditivity {
    pub at_t_closure: LengthSplit,
    /// `None` when some cover above the seminormalization is ramified, so
    /// subintegrality is not a closure property on this instance.
    pub at_seminormalization: Option<LengthSplit>,
}

fn split_at(
    ext: &Extension,
    total: usize,
    mid: &Subalgebra,
    node_budget: usize,
) -> Result<LengthSplit> {
    let lower = enumerate_interval(&ext.between(ext.base(), mid)?, node_budget)?
        .length()
        .0;
    let upper = enumerate_interval(&ext.between(mid, ext.top())?, node_budget)?
        .length()
        .0;
    Ok(LengthSplit {
        total,
        lower,
        upper,
        holds: total == lower + upper,
    })
}

pub fn length_additivity_check(
    lat: &ExtensionLattice,
    decomposition: &CanonicalDecomposition,
    kinds: &[MinimalKind],
    node_budget: usize,
) -> Result<LengthAdditivity> {
    let ext = lat.extension();
    let total = lat.length().0;
    let at_t_closure = split_at(ext, total, &decomposition.t_closure, node_budget)?;
    let plus = lat
        .index_of(&decomposition.seminormalization)
        .ok_or(Error::NotANode)?;
    let closure_axioms_hold = lat
        .cover_edges()
        .iter()
        .zip(kinds)
        .all(|(&(i, _), k)| !(lat.leq(plus, i) && k.tag == MinimalKindTag::Ramified));
    let at_seminormalization = if closure_axioms_hold {
        Some(split_at(
            ext,
            total,
            &decomposition.seminormalization,
            node_budget,
        )?)
    } else {
        None
    };
    Ok(LengthAdditivity {
        at_t_closure,
        at_seminormalization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, FiniteField};
    use std::sync::Arc;

    const SCAN: u64 = 1 << 20;
    const NODES: usize = 20_000;

    fn f2() -> FiniteField {
        FiniteField::prime(2).unwrap()
    }

    fn alg(f: &[u32]) -> Algebra {
        Algebra::poly_quotient(&f2(), f).unwrap()
    }

    fn k() -> Algebra {
        Algebra::base_field(&f2())
    }

    fn top_and_prime(a: Algebra) -> (Subalgebra, Subalgebra) {
        let a = Arc::new(a);
        (Subalgebra::prime(a.clone()), Subalgebra::whole(a))
    }

    #[test]
    fn three_kinds_of_minimal_extension() {
        let (r, s) = top_and_prime(alg(&[1, 1, 1]));
        assert_eq!(classify_minimal(&r, &s).unwrap().tag, MinimalKindTag::Inert);
        let (r, s) = top_and_prime(Algebra::product(&k(), &k()).unwrap());
        assert_eq!(
            classify_minimal(&r, &s).unwrap().tag,
            MinimalKindTag::Decomposed
        );
        let (r, s) = top_and_prime(alg(&[0, 0, 1]));
        let kind = classify_minimal(&r, &s).unwrap();
        assert_eq!(kind.tag, MinimalKindTag::Ramified);
        assert_eq!(kind.conductor.dim(), 0);
    }

    #[test]
    fn non_adjacent_pairs_are_rejected() {
        let (r, s) = top_and_prime(alg(&[0, 0, 0, 1]));
        assert_eq!(classify_minimal(&r, &s).unwrap_err(), Error::NotAdjacent);
        assert_eq!(classify_minimal(&s, &s).unwrap_err(), Error::NotAdjacent);
    }

    #[test]
    fn crucial_ideals() {
        let (r, s) = top_and_prime(alg(&[1, 1, 1]));
        assert_eq!(crucial_ideal(&r, &s).unwrap().dim(), 0);
        let (r, s) = top_and_prime(alg(&[0, 0, 1]));
        assert_eq!(crucial_ideal(&r, &s).unwrap().dim(), 0);
        // F2 x F2 ⊂ F2 x F4: the F4 factor
        let a = Arc::new(Algebra::product(&k(), &alg(&[1, 1, 1])).unwrap());
        let r = Subalgebra::generated(a.clone(), None, &[vec![1, 0, 0]]);
        let s = Subalgebra::whole(a.clone());
        let m = crucial_ideal(&r, &s).unwrap();
        assert_eq!(m, Subspace::span(&f2(), 3, [vec![1, 0, 0]]));
        let ext = Extension::new(r.clone(), s.clone()).unwrap();
        let other = r
            .spectrum()
            .maximal_ideals
            .iter()
            .position(|x| *x != m)
            .unwrap();
        let loc = ext.localize_at(other).unwrap();
        assert!(loc.is_trivial());
    }

    #[test]
    fn predicates_on_small_extensions() {
        let t4 = Extension::from_prime(Arc::new(alg(&[0, 0, 0, 0, 1])));
        assert!(is_subintegral(&t4).unwrap());
        let kk = Extension::from_prime(Arc::new(Algebra::product(&k(), &k()).unwrap()));
        assert!(is_infra_integral(&kk).unwrap());
        assert!(!is_subintegral(&kk).unwrap());
        let f4 = Extension::from_prime(Arc::new(alg(&[1, 1, 1])));
        let v = is_t_closed(&f4, SCAN, NODES).unwrap();
        assert!(v.t_closed);
        assert_eq!(v.path, TClosedPath::Definitional);
        assert!(!is_infra_integral(&f4).unwrap());
        // the budget fallback agrees
        let v = is_t_closed(&f4, 1, NODES).unwrap();
        assert!(v.t_closed);
        assert_eq!(v.path, TClosedPath::CoverClassification);
        let v = is_t_closed(&kk, SCAN, NODES).unwrap();
        assert!(!v.t_closed);
        assert!(v.counterexample.is_some());
    }

    #[test]
    fn canonical_decomposition_examples() {
        // subintegral: ⁺R = ᵗR = S
        let ext = Extension::from_prime(Arc::new(alg(&[0, 0, 0, 0, 1])));
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let dec = canonical_decomposition(&lat, SCAN, NODES).unwrap();
        assert_eq!(&dec.seminormalization, ext.top());
        assert_eq!(&dec.t_closure, ext.top());

        // t-closed: both are R
        let ext = Extension::from_prime(Arc::new(alg(&[1, 1, 1])));
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let dec = canonical_decomposition(&lat, SCAN, NODES).unwrap();
        assert_eq!(&dec.seminormalization, ext.base());
        assert_eq!(&dec.t_closure, ext.base());

        // F2 ⊆ T3 x F4: ⁺R = T3 x F2, found by lattice scan
        let a = Arc::new(Algebra::product(&alg(&[0, 0, 0, 1]), &alg(&[1, 1, 1])).unwrap());
        let ext = Extension::from_prime(a.clone());
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let dec = canonical_decomposition(&lat, SCAN, NODES).unwrap();
        assert_eq!(dec.seminormalization.dim(), 3);
        // F2 (1, 1) + (y) x 0: local, without the idempotent (1, 0)
        assert!(dec.seminormalization.contains(&[0, 1, 0, 0, 0]));
        assert!(!dec.seminormalization.contains(&[1, 0, 0, 0, 0]));
        assert!(dec.t_closure.contains(&[1, 0, 0, 0, 0]));
        // ᵗR adds the decomposed step that splits off the F4 factor
        assert_eq!(dec.t_closure.dim(), 4);

        // F2 ⊆ F4 x F4: ᵗR = F2 x F2, remaining steps inert
        let a = Arc::new(Algebra::product(&alg(&[1, 1, 1]), &alg(&[1, 1, 1])).unwrap());
        let ext = Extension::from_prime(a);
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let dec = canonical_decomposition(&lat, SCAN, NODES).unwrap();
        assert_eq!(dec.t_closure.dim(), 2);
        assert!(dec.t_closure.contains(&[1, 0, 0, 0]));
        assert_eq!(dec.seminormalization, *ext.base());
        let kinds = classify_edges(&lat).unwrap();
        let tc = lat.index_of(&dec.t_closure).unwrap();
        for (&(i, _), kind) in lat.cover_edges().iter().zip(&kinds) {
            if lat.leq(tc, i) {
                assert_eq!(kind.tag, MinimalKindTag::Inert);
            }
        }
        assert_eq!(greedy_infra_integral_endpoint(&lat, &kinds), tc);
    }

    #[test]
    fn lambda_values() {
        let ext = Extension::from_prime(Arc::new(alg(&[0, 0, 0, 0, 1])));
        assert_eq!(lambda_invariant(&ext).unwrap(), 0);
        let f64_ = Extension::from_prime(Arc::new(alg(&[1, 1, 0, 0, 0, 0, 1])));
        assert_eq!(lambda_invariant(&f64_).unwrap(), 2);
        let a = Algebra::product(&alg(&[1, 1, 1]), &alg(&[1, 1, 0, 1])).unwrap();
        let ext = Extension::from_prime(Arc::new(a));
        assert_eq!(lambda_invariant(&ext).unwrap(), 1);

        let lat = enumerate_interval(&f64_, NODES).unwrap();
        let report = lambda_crosscheck(&lat, f64_.base(), true, NODES).unwrap();
        assert!(report.consistent);
        assert_eq!(report.max_local_length, Some(2));
    }

    #[test]
    fn chain_classification() {
        // all ramified
        let ext = Extension::from_prime(Arc::new(alg(&[0, 0, 0, 1])));
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let mut chain = lat.maximal_chains(10).chains.remove(0);
        annotate_chain(&lat, &mut chain).unwrap();
        let check = verify_chain_classification(&lat, &chain, false).unwrap();
        assert!(check.passed() && check.infra_integral && check.all_steps_infra);

        // F2 ⊂ F4 ⊂ F16: all inert
        let ext = Extension::from_prime(Arc::new(alg(&[1, 1, 0, 0, 1])));
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let mut chain = lat.maximal_chains(10).chains.remove(0);
        assert_eq!(chain.len(), 2);
        annotate_chain(&lat, &mut chain).unwrap();
        let check = verify_chain_classification(&lat, &chain, true).unwrap();
        assert!(check.passed() && check.all_steps_inert);
        assert_eq!(check.local_conductor_ok, Some(true));

        // F2 ⊆ T2 x F4 mixes ramified and inert steps
        let a = Arc::new(Algebra::product(&alg(&[0, 0, 1]), &alg(&[1, 1, 1])).unwrap());
        let ext = Extension::from_prime(a);
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let v = is_t_closed(&ext, SCAN, NODES).unwrap();
        for mut chain in lat.maximal_chains(100).chains {
            annotate_chain(&lat, &mut chain).unwrap();
            let check = verify_chain_classification(&lat, &chain, v.t_closed).unwrap();
            assert!(check.passed());
            assert!(!check.all_steps_inert && !check.all_steps_infra);
        }
    }

    #[test]
    fn length_additivity_with_inert_top_step() {
        // F2 ⊆ T3 x F4
        let a = Arc::new(Algebra::product(&alg(&[0, 0, 0, 1]), &alg(&[1, 1, 1])).unwrap());
        let ext = Extension::from_prime(a);
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let dec = canonical_decomposition(&lat, SCAN, NODES).unwrap();
        let kinds = classify_edges(&lat).unwrap();
        let report = length_additivity_check(&lat, &dec, &kinds, NODES).unwrap();
        assert!(report.at_t_closure.holds);
        assert_eq!(report.at_t_closure.upper, 1);
        if let Some(split) = report.at_seminormalization {
            assert!(split.holds);
        }
    }
}
