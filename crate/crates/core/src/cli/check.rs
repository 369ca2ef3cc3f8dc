//! The invariant suite behind `ringext check`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::linalg::Subspace;
use crate::algebra::Extension;
use crate::canonical::{
    annotate_chain, canonical_decomposition, classify_edges, is_infra_integral, is_subintegral,
    is_t_closed, lambda_crosscheck, length_additivity_check,
};
use crate::cli::document::InstanceDocument;
use crate::error::{Error, Result};
use crate::lattice::{
    brute_force_interval, enumerate_interval, is_arithmetic, quotient_correspondence, Budget,
};
use crate::nagata::{
    filtration_conditions, filtration_data, nagata_fip_subintegral_crosscheck, nagata_report,
    reduce_mod_conductor,
};

pub const INVARIANTS: [&str; 13] = [
    "oracle-equivalence",
    "covers-are-minimal",
    "length-is-longest-chain",
    "crucial-trace-invariance",
    "trichotomy-census",
    "length-additivity",
    "lambda-consistency",
    "filtration-tri-equivalence",
    "filtration-strictly-decreasing",
    "fip-criteria-agreement",
    "conductor-reduction-stability",
    "arithmetic-delta-distributive",
    "quotient-correspondence",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceCheck {
    pub description: String,
    pub results: Vec<InvariantResult>,
    /// The instance itself, attached when any invariant fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<InstanceDocument>,
}

impl InstanceCheck {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.results
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.status)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryLine {
    pub name: &'static str,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub instances: Vec<InstanceCheck>,
    pub summary: Vec<SummaryLine>,
}

impl CheckReport {
    pub fn new(instances: Vec<InstanceCheck>) -> Self {
        let summary = INVARIANTS
            .iter()
            .map(|&name| {
                let mut line = SummaryLine {
                    name,
                    pass: 0,
                    fail: 0,
                    skip: 0,
                };
                for s in instances.iter().filter_map(|i| i.status(name)) {
                    match s {
                        Status::Pass => line.pass += 1,
                        Status::Fail => line.fail += 1,
                        Status::Skip => line.skip += 1,
                    }
                }
                line
            })
            .collect();
        CheckReport { instances, summary }
    }

    pub fn passed(&self) -> bool {
        self.instances.iter().all(InstanceCheck::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, inst) in self.instances.iter().enumerate() {
            out.push_str(&format!("instance {k}: {}\n", inst.description));
            for r in &inst.results {
                let tag = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                out.push_str(&format!("  {tag} {:<32} {}\n", r.name, r.detail));
            }
            if let Some(doc) = &inst.counterexample {
                out.push_str("  counterexample:\n");
                for line in doc.to_json().lines() {
                    out.push_str(&format!("    {line}\n"));
                }
            }
        }
        out.push_str("summary\n");
        for s in &self.summary {
            out.push_str(&format!(
                "  {:<32} pass {:>4}  fail {:>4}  skip {:>4}\n",
                s.name, s.pass, s.fail, s.skip
            ));
        }
        out
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn record(name: &'static str, f: impl FnOnce() -> Result<Outcome>) -> InvariantResult {
    let (status, detail) = match f() {
        Ok(Outcome::Pass(d)) => (Status::Pass, d),
        Ok(Outcome::Fail(d)) => (Status::Fail, d),
        Ok(Outcome::Skip(d)) => (Status::Skip, d),
        Err(e @ (Error::Budget { .. } | Error::Rejection { .. })) => (Status::Skip, e.to_string()),
        Err(e) => (Status::Fail, e.to_string()),
    };
    InvariantResult {
        name,
        status,
        detail,
    }
}

/// Proper ideals of `S` used to probe the quotient correspondence: the
/// conductor, the nilradical and every maximal ideal.
fn probe_ideals(ext: &Extension) -> Vec<Subspace> {
    let top = ext.top();
    let mut out = BTreeSet::new();
    out.insert(ext.conductor().0);
    out.insert(top.space().intersect(&ext.ambient().nilradical()));
    out.extend(top.spectrum().maximal_ideals.iter().cloned());
    out.into_iter().filter(|j| j != top.space()).collect()
}

/// Runs the suite on one extension. Only a failure to build the interval
/// itself is returned as an error.
pub fn check_extension(
    ext: &Extension,
    description: String,
    budget: &Budget,
) -> Result<InstanceCheck> {
    let lat = enumerate_interval(ext, budget.nodes)?;
    let b = *budget;
    let l = &lat;
    let mut results = Vec::new();

    results.push(record("oracle-equivalence", || {
        let brute = brute_force_interval(ext, b.oracle_subspaces)?;
        Ok(verdict(
            brute.as_slice() == l.nodes(),
            format!("enumerated {}, oracle {}", l.len(), brute.len()),
        ))
    }));

    results.push(record("covers-are-minimal", || {
        for &(i, j) in l.cover_edges() {
            let sub = Extension::new(l.nodes()[i].clone(), l.nodes()[j].clone())?;
            let n = brute_force_interval(&sub, b.oracle_subspaces)?.len();
            if n != 2 {
                return Ok(Outcome::Fail(format!("edge {i}->{j} has {n} nodes")));
            }
        }
        Ok(Outcome::Pass(format!("{} edges", l.cover_edges().len())))
    }));

    let chains = lat.maximal_chains(b.chains);
    results.push(record("length-is-longest-chain", || {
        if chains.truncated {
            return Ok(Outcome::Skip("chain listing truncated".into()));
        }
        let best = chains.chains.iter().map(|c| c.len()).max().unwrap_or(0);
        Ok(verdict(
            best == l.length().0,
            format!("length {}, longest listed chain {best}", l.length().0),
        ))
    }));

    results.push(record("crucial-trace-invariance", || {
        if chains.truncated {
            return Ok(Outcome::Skip("chain listing truncated".into()));
        }
        let support: BTreeSet<Subspace> = ext.support().into_iter().collect();
        for chain in &chains.chains {
            let mut c = chain.clone();
            annotate_chain(l, &mut c)?;
            let traces: BTreeSet<Subspace> = c.crucial_traces.into_iter().flatten().collect();
            if traces != support {
                return Ok(Outcome::Fail(format!(
                    "chain {:?} has {} traces, support has {}",
                    chain.nodes,
                    traces.len(),
                    support.len()
                )));
            }
        }
        Ok(Outcome::Pass(format!(
            "{} chains, support size {}",
            chains.chains.len(),
            support.len()
        )))
    }));

    let kinds = classify_edges(&lat);
    results.push(record("trichotomy-census", || {
        let kinds = kinds.clone()?;
        let all_infra = kinds.iter().all(|k| k.tag.is_infra_integral());
        let all_inert = kinds.iter().all(|k| !k.tag.is_infra_integral());
        let infra = is_infra_integral(ext)?;
        let closed = is_t_closed(ext, b.scan_pairs, b.nodes)?.t_closed;
        Ok(verdict(
            all_infra == infra && all_inert == closed,
            format!(
                "{} edges; infra-integral {infra}, t-closed {closed}",
                kinds.len()
            ),
        ))
    }));

    let decomposition = canonical_decomposition(&lat, b.scan_pairs, b.nodes);
    results.push(record("length-additivity", || {
        let dec = decomposition.clone()?;
        let report = length_additivity_check(l, &dec, &kinds.clone()?, b.nodes)?;
        let t = &report.at_t_closure;
        let ok = t.holds && report.at_seminormalization.as_ref().is_none_or(|s| s.holds);
        Ok(verdict(
            ok,
            format!("{} = {} + {} at tR", t.total, t.lower, t.upper),
        ))
    }));

    results.push(record("lambda-consistency", || {
        let dec = decomposition.clone()?;
        let closed = is_t_closed(ext, b.scan_pairs, b.nodes)?.t_closed;
        let r = lambda_crosscheck(l, &dec.t_closure, closed, b.nodes)?;
        Ok(verdict(
            r.consistent,
            format!("lambda {} over tR {}", r.lambda, r.lambda_over_t_closure),
        ))
    }));

    let mut local_data = Vec::new();
    for idx in ext.support_indices() {
        let local = ext.localize_at(idx);
        let data = local.and_then(|loc| {
            if is_subintegral(&loc)? {
                filtration_data(&loc).map(Some)
            } else {
                Ok(None)
            }
        });
        local_data.push(data);
    }
    results.push(record("filtration-tri-equivalence", || {
        let mut seen = 0;
        for data in &local_data {
            let Some(d) = data.clone()? else { continue };
            if d.field_case {
                continue;
            }
            let c = filtration_conditions(&d, b.nodes)?;
            if !c.agree() {
                return Ok(Outcome::Fail(format!("{c:?}")));
            }
            seen += 1;
        }
        Ok(if seen == 0 {
            Outcome::Skip("no local subintegral part with R/C not a field".into())
        } else {
            Outcome::Pass(format!("{seen} local part(s)"))
        })
    }));

    results.push(record("filtration-strictly-decreasing", || {
        let mut seen = 0;
        for data in &local_data {
            let Some(d) = data.clone()? else { continue };
            if d.field_case {
                continue;
            }
            for i in 1..d.n {
                let (a, c) = (&d.ideals[i], &d.ideals[i + 1]);
                if !(a.contains_space(c) && a != c) {
                    return Ok(Outcome::Fail(format!("M_{i} = M_{}", i + 1)));
                }
            }
            seen += 1;
        }
        Ok(if seen == 0 {
            Outcome::Skip("no local subintegral part with R/C not a field".into())
        } else {
            Outcome::Pass(format!("{seen} local part(s)"))
        })
    }));

    results.push(record("fip-criteria-agreement", || {
        let report = nagata_report(l, b.nodes)?;
        let arithmetic = is_arithmetic(ext, b.nodes)?.arithmetic;
        let mut ok = report.criteria.agree;
        if is_subintegral(ext)? {
            let c = nagata_fip_subintegral_crosscheck(ext, b.nodes)?;
            ok &= c.agree() && c.arithmetic == report.fip && arithmetic == report.fip;
        }
        Ok(verdict(
            ok,
            format!("arithmetic={arithmetic} nagata.fip={}", report.fip),
        ))
    }));

    results.push(record("conductor-reduction-stability", || {
        if ext.is_trivial() {
            return Ok(Outcome::Skip("trivial extension".into()));
        }
        let reduced = reduce_mod_conductor(ext)?;
        let a = nagata_report(l, b.nodes)?;
        let b2 = nagata_report(&enumerate_interval(&reduced, b.nodes)?, b.nodes)?;
        let key = |r: &crate::nagata::NagataReport| (r.fip, r.cardinality, r.length, r.lambda);
        Ok(verdict(
            key(&a) == key(&b2),
            format!("{:?} vs reduced {:?}", key(&a), key(&b2)),
        ))
    }));

    results.push(record("arithmetic-delta-distributive", || {
        if !is_arithmetic(ext, b.nodes)?.arithmetic {
            return Ok(Outcome::Skip("not arithmetic".into()));
        }
        let (delta, dist) = (l.is_delta_extension(), l.is_distributive());
        Ok(verdict(
            delta && dist,
            format!("delta {delta}, distributive {dist}"),
        ))
    }));

    results.push(record("quotient-correspondence", || {
        let ideals = probe_ideals(ext);
        if ideals.is_empty() {
            return Ok(Outcome::Skip("no proper probe ideal".into()));
        }
        for j in &ideals {
            let c = quotient_correspondence(ext, j, b.nodes)?;
            if !c.holds() {
                return Ok(Outcome::Fail(format!("ideal of dim {}: {c:?}", j.dim())));
            }
        }
        Ok(Outcome::Pass(format!("{} ideal(s)", ideals.len())))
    }));

    let mut check = InstanceCheck {
        description,
        results,
        counterexample: None,
    };
    if !check.passed() {
        check.counterexample = Some(InstanceDocument::from_extension(ext));
    }
    Ok(check)
}
