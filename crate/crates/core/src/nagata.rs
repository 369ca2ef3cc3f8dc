//! Invariants of the Nagata extension `R(X) ⊆ S(X)`, predicted from `R ⊆ S`.
//!
//! `R(X)` is never built. Each reported value is the base-side quantity known
//! to coincide with the Nagata-side one, tagged with the transfer rule that
//! licenses it.

use serde::Serialize;

use crate::algebra::linalg::Subspace;
use crate::algebra::{Extension, Subalgebra};
use crate::canonical::{is_subintegral, lambda_invariant, seminormalization};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_interval, is_arithmetic, ArithmeticFailure, ExtensionLattice};

/// `R/C ⊆ S/C` for the conductor `C = (R:S)`, realized on the algebra `S/C`.
pub fn reduce_mod_conductor(ext: &Extension) -> Result<Extension> {
    if ext.is_trivial() {
        return Err(Error::Hypothesis(
            "trivial extension has no proper conductor".into(),
        ));
    }
    ext.modulo(&ext.conductor().0).map(|(reduced, _)| reduced)
}

/// Smallest `n ≥ 1` with `M^n ⊆ (R:S)`, for a local base ring `(R, M)`.
pub fn nilpotency_index(ext: &Extension) -> Result<usize> {
    let base = ext.base();
    let spec = base.spectrum();
    let [m] = spec.maximal_ideals.as_slice() else {
        return Err(Error::NotLocal);
    };
    let c = ext.conductor().0;
    let mut power = m.clone();
    for n in 1..=base.dim() + 1 {
        if c.contains_space(&power) {
            return Ok(n);
        }
        power = base.ambient().product_space(&power, m);
    }
    Err(Error::invariant(
        "nilpotency",
        "maximal ideal is not nilpotent modulo the conductor",
    ))
}

/// The filtration `R_i = R + S M^i`, `M_i = M + S M^i` of a local
/// subintegral extension, computed after reducing modulo the conductor.
#[derive(Clone, Debug)]
pub struct SubintegralLocalData {
    /// `R/C ⊆ S/C`.
    pub reduced: Extension,
    /// Maximal ideal of `R/C`.
    pub maximal_ideal: Subspace,
    /// Dimension of the conductor in the unreduced extension.
    pub conductor_dim: usize,
    /// Index of nilpotency of `M/C`.
    pub n: usize,
    /// `R_0 .. R_n`.
    pub rings: Vec<Subalgebra>,
    /// `M_0 .. M_n`.
    pub ideals: Vec<Subspace>,
    /// `L_R(M_i / M_{i+1})` for `i = 1 .. n-1`.
    pub layer_lengths: Vec<usize>,
    /// `L_R(SM / M)`.
    pub sm_over_m_length: usize,
    /// `R/C` is a field, i.e. `(R:S) = M`.
    pub field_case: bool,
}

pub fn filtration_data(ext: &Extension) -> Result<SubintegralLocalData> {
    if !ext.base().is_local() {
        return Err(Error::NotLocal);
    }
    if !is_subintegral(ext)? {
        return Err(Error::NotSubintegral);
    }
    let conductor_dim = ext.conductor().dim();
    let reduced = reduce_mod_conductor(ext)?;
    let n = nilpotency_index(&reduced)?;
    let r = reduced.base();
    let s = reduced.top();
    let amb = reduced.ambient();
    let m = r.spectrum().maximal_ideals[0].clone();
    let mut rings = Vec::with_capacity(n + 1);
    let mut ideals = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let sm_i = amb.product_space(s.space(), &r.ideal_power(&m, i));
        rings.push(r.plus_ideal(&sm_i));
        ideals.push(m.sum(&sm_i));
    }
    let layer_lengths = (1..n)
        .map(|i| r.module_length(&ideals[i], &ideals[i + 1]))
        .collect::<Result<Vec<_>>>()?;
    let sm = amb.product_space(s.space(), &m);
    let sm_over_m_length = r.module_length(&sm, &m)?;
    Ok(SubintegralLocalData {
        field_case: m.dim() == 0,
        reduced,
        maximal_ideal: m,
        conductor_dim,
        n,
        rings,
        ideals,
        layer_lengths,
        sm_over_m_length,
    })
}

/// The three equivalent conditions on a local subintegral extension with
/// zero conductor, each computed on its own path: a single module length,
/// the per-layer lengths, and a chain test on `[R, R_1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationConditions {
    /// `L_R(SM/M) = n - 1`.
    pub total_length: bool,
    /// `L_R(M_i/M_{i+1}) = 1` for `1 <= i < n`.
    pub unit_layers: bool,
    /// `[R, R_1]` is a chain.
    pub chained_to_r1: bool,
}

impl FiltrationConditions {
    pub fn agree(&self) -> bool {
        self.total_length == self.unit_layers && self.unit_layers == self.chained_to_r1
    }
}

pub fn filtration_conditions(
    data: &SubintegralLocalData,
    node_budget: usize,
) -> Result<FiltrationConditions> {
    let r = data.reduced.base();
    let sub = Extension::new(r.clone(), data.rings[1].clone())?;
    let chained_to_r1 = enumerate_interval(&sub, node_budget)?.is_chained();
    Ok(FiltrationConditions {
        total_length: data.sm_over_m_length + 1 == data.n,
        unit_layers: data.layer_lengths.iter().all(|&l| l == 1),
        chained_to_r1,
    })
}

/// Whether `R(X) ⊆ S(X)` has FIP: `R ⊆ ⁺R` must be arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FipVerdict {
    pub fip: bool,
    pub seminormalization: Subalgebra,
    /// Every failing maximal ideal with an incomparable pair.
    pub failures: Vec<ArithmeticFailure>,
}

pub fn nagata_has_fip(lat: &ExtensionLattice, node_budget: usize) -> Result<FipVerdict> {
    let plus = seminormalization(lat)?;
    let sub = Extension::new(lat.extension().base().clone(), plus.clone())?;
    let verdict = is_arithmetic(&sub, node_budget)?;
    Ok(FipVerdict {
        fip: verdict.arithmetic,
        seminormalization: plus,
        failures: verdict.failures,
    })
}

/// Two FIP criteria for a subintegral extension: arithmeticity, and the
/// filtration criterion "`[R_2, S]` chained and `L_R(SM/M) = n - 1`" at every
/// maximal ideal of the support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubintegralCriteria {
    pub arithmetic: bool,
    pub filtration: bool,
}

impl SubintegralCriteria {
    pub fn agree(&self) -> bool {
        self.arithmetic == self.filtration
    }
}

pub fn filtration_criterion_at(data: &SubintegralLocalData, node_budget: usize) -> Result<bool> {
    let s = data.reduced.top();
    // R_2 = R when R/C is a field, and [R, S] itself must be a chain
    let r2 = if data.field_case {
        data.reduced.base().clone()
    } else {
        data.rings[2].clone()
    };
    let chained = enumerate_interval(&Extension::new(r2, s.clone())?, node_budget)?.is_chained();
    Ok(chained && data.sm_over_m_length + 1 == data.n)
}

pub fn nagata_fip_subintegral_crosscheck(
    ext: &Extension,
    node_budget: usize,
) -> Result<SubintegralCriteria> {
    if !is_subintegral(ext)? {
        return Err(Error::NotSubintegral);
    }
    let arithmetic = is_arithmetic(ext, node_budget)?.arithmetic;
    let mut filtration = true;
    for idx in ext.support_indices() {
        let local = ext.localize_at(idx)?;
        let data = filtration_data(&local)?;
        filtration &= filtration_criterion_at(&data, node_budget)?;
    }
    Ok(SubintegralCriteria {
        arithmetic,
        filtration,
    })
}

/// Verdicts of the independent FIP routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CriteriaAgreement {
    /// `R ⊆ ⁺R` arithmetic.
    pub seminormal_part_arithmetic: bool,
    /// Filtration criterion applied to `R ⊆ ⁺R`.
    pub filtration_criterion: bool,
    /// For subintegral `R ⊆ S`: arithmetic on the whole extension.
    pub whole_extension_arithmetic: Option<bool>,
    pub agree: bool,
}

/// Predicted invariants of `R(X) ⊆ S(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NagataReport {
    pub fip: bool,
    /// `|[R(X), S(X)]| = |[R, S]|` when FIP holds.
    pub cardinality: Option<usize>,
    pub length: usize,
    pub lambda: usize,
    pub witnesses: Vec<ArithmeticFailure>,
    pub criteria: CriteriaAgreement,
    /// The same values hold for `R(X_1..X_k) ⊆ S(X_1..X_k)` for every `k`.
    pub any_number_of_variables: bool,
    /// Transfer rule behind each value.
    pub licences: Vec<(&'static str, &'static str)>,
}

pub fn nagata_report(lat: &ExtensionLattice, node_budget: usize) -> Result<NagataReport> {
    let ext = lat.extension();
    let verdict = nagata_has_fip(lat, node_budget)?;
    let plus_ext = Extension::new(ext.base().clone(), verdict.seminormalization.clone())?;
    let filtration = nagata_fip_subintegral_crosscheck(&plus_ext, node_budget)?;
    let whole = if is_subintegral(ext)? {
        Some(is_arithmetic(ext, node_budget)?.arithmetic)
    } else {
        None
    };
    let agree = filtration.agree()
        && filtration.arithmetic == verdict.fip
        && whole.is_none_or(|w| w == verdict.fip);
    if !agree {
        return Err(Error::invariant(
            "fip-criteria",
            format!(
                "arithmetic={} filtration={} whole={whole:?}",
                verdict.fip, filtration.filtration
            ),
        ));
    }
    Ok(NagataReport {
        fip: verdict.fip,
        cardinality: verdict.fip.then_some(lat.len()),
        length: lat.length().0,
        lambda: lambda_invariant(ext)?,
        witnesses: verdict.failures,
        criteria: CriteriaAgreement {
            seminormal_part_arithmetic: verdict.fip,
            filtration_criterion: filtration.filtration,
            whole_extension_arithmetic: whole,
            agree,
        },
        any_number_of_variables: true,
        licences: vec![
            ("fip", "R(X) ⊆ S(X) has FIP iff R ⊆ ⁺R is arithmetic"),
            ("cardinality", "under FIP, |[R(X), S(X)]| = |[R, S]|"),
            ("length", "ℓ[R(X), S(X)] = ℓ[R, S]"),
            ("lambda", "Λ(S(X)/R(X)) = Λ(S/R)"),
            (
                "variables",
                "FIP and length are unchanged by adding Nagata variables",
            ),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::algebra::{Algebra, FiniteField};

    const NODES: usize = 20_000;

    fn f2() -> FiniteField {
        FiniteField::prime(2).unwrap()
    }

    fn alg(f: &[u32]) -> Arc<Algebra> {
        Arc::new(Algebra::poly_quotient(&f2(), f).unwrap())
    }

    #[test]
    fn nilpotency_indices() {
        let t4 = alg(&[0, 0, 0, 0, 1]);
        assert_eq!(
            nilpotency_index(&Extension::from_prime(t4.clone())).unwrap(),
            1
        );
        let r = Subalgebra::new(
            t4.clone(),
            Subspace::span(
                &f2(),
                4,
                [vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
            ),
        )
        .unwrap();
        let ext = Extension::over(t4, r).unwrap();
        assert_eq!(ext.conductor().dim(), 2);
        assert_eq!(nilpotency_index(&ext).unwrap(), 1);
    }

    #[test]
    fn field_case_of_the_filtration() {
        let ext = Extension::from_prime(alg(&[0, 0, 1]));
        let data = filtration_data(&ext).unwrap();
        assert!(data.field_case);
        assert_eq!(data.n, 1);
        assert!(data.layer_lengths.is_empty());
        assert_eq!(data.sm_over_m_length, 0);
        let c = filtration_conditions(&data, NODES).unwrap();
        assert_eq!(
            (c.total_length, c.unit_layers, c.chained_to_r1),
            (true, true, true)
        );
    }

    fn t6() -> Arc<Algebra> {
        alg(&[0, 0, 0, 0, 0, 0, 1])
    }

    #[test]
    fn uniserial_filtration() {
        // R = F2[y^2] = span{1, y^2, y^4} inside F2[y]/(y^6)
        let s = t6();
        let r = Subalgebra::generated(s.clone(), None, &[vec![0, 0, 1, 0, 0, 0]]);
        assert_eq!(r.dim(), 3);
        let data = filtration_data(&Extension::over(s, r).unwrap()).unwrap();
        assert!(!data.field_case);
        assert_eq!(data.conductor_dim, 0);
        assert_eq!(data.n, 3);
        assert_eq!(data.layer_lengths, vec![1, 1]);
        assert_eq!(data.sm_over_m_length, 2);
        let c = filtration_conditions(&data, NODES).unwrap();
        assert_eq!(
            (c.total_length, c.unit_layers, c.chained_to_r1),
            (true, true, true)
        );
        for w in data.ideals[1..].windows(2) {
            assert!(w[0].contains_space(&w[1]) && w[0] != w[1]);
        }
    }

    #[test]
    fn fat_layer_breaks_all_three() {
        // R = F2[y^3] = span{1, y^3}: SM/M = <y^4, y^5> is one layer of length 2
        let s = t6();
        let r = Subalgebra::generated(s.clone(), None, &[vec![0, 0, 0, 1, 0, 0]]);
        let data = filtration_data(&Extension::over(s, r).unwrap()).unwrap();
        assert_eq!(data.n, 2);
        assert_eq!(data.layer_lengths, vec![2]);
        let c = filtration_conditions(&data, NODES).unwrap();
        assert_eq!(
            (c.total_length, c.unit_layers, c.chained_to_r1),
            (false, false, false)
        );
    }

    #[test]
    fn example_t4_criteria() {
        let ext = Extension::from_prime(alg(&[0, 0, 0, 0, 1]));
        let crit = nagata_fip_subintegral_crosscheck(&ext, NODES).unwrap();
        assert_eq!(
            crit,
            SubintegralCriteria {
                arithmetic: false,
                filtration: false
            }
        );
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let report = nagata_report(&lat, NODES).unwrap();
        assert!(!report.fip);
        assert_eq!(report.cardinality, None);
        assert_eq!(report.length, 3);
        assert_eq!(report.lambda, 0);
        assert_eq!(report.witnesses.len(), 1);
    }

    #[test]
    fn minimal_ramified_step_criteria() {
        let ext = Extension::from_prime(alg(&[0, 0, 1]));
        let crit = nagata_fip_subintegral_crosscheck(&ext, NODES).unwrap();
        assert_eq!(
            crit,
            SubintegralCriteria {
                arithmetic: true,
                filtration: true
            }
        );
    }

    #[test]
    fn reports_for_chain_and_field_tower() {
        let ext = Extension::from_prime(alg(&[0, 0, 0, 1]));
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let r = nagata_report(&lat, NODES).unwrap();
        assert_eq!(
            (r.fip, r.cardinality, r.length, r.lambda),
            (true, Some(3), 2, 0)
        );

        let ext = Extension::from_prime(alg(&[1, 1, 0, 0, 0, 0, 1]));
        let lat = enumerate_interval(&ext, NODES).unwrap();
        let r = nagata_report(&lat, NODES).unwrap();
        assert_eq!(
            (r.fip, r.cardinality, r.length, r.lambda),
            (true, Some(4), 2, 2)
        );
        assert!(r.criteria.agree);
    }

    #[test]
    fn not_subintegral_is_rejected() {
        let ext = Extension::from_prime(alg(&[1, 1, 1]));
        assert_eq!(
            nagata_fip_subintegral_crosscheck(&ext, NODES).unwrap_err(),
            Error::NotSubintegral
        );
        assert_eq!(filtration_data(&ext).unwrap_err(), Error::NotSubintegral);
    }
}
