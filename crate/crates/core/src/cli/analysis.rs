//! Runs every analysis on one extension and assembles the result document.

use serde::Serialize;

use crate::algebra::linalg::Subspace;
use crate::algebra::Extension;
use crate::canonical::{
    canonical_decomposition, classify_edges, is_infra_integral, is_subintegral, is_t_closed,
    lambda_crosscheck, CanonicalDecomposition, Census, LambdaReport, MinimalKind, TClosedPath,
    TClosedVerdict,
};
use crate::error::{Error, Result};
use crate::lattice::{
    enumerate_interval, is_arithmetic, ArithmeticVerdict, Budget, ExtensionLattice,
};
use crate::nagata::{nagata_report, CriteriaAgreement, NagataReport};

pub struct Analysis {
    pub lattice: ExtensionLattice,
    pub kinds: Vec<MinimalKind>,
    pub decomposition: CanonicalDecomposition,
    pub subintegral: bool,
    pub infra_integral: bool,
    pub t_closed: TClosedVerdict,
    pub arithmetic: ArithmeticVerdict,
    pub lambda: LambdaReport,
    pub nagata: NagataReport,
}

impl Analysis {
    pub fn run(ext: &Extension, budget: &Budget) -> Result<Self> {
        let lattice = enumerate_interval(ext, budget.nodes)?;
        Self::on_lattice(lattice, budget)
    }

    pub fn on_lattice(lattice: ExtensionLattice, budget: &Budget) -> Result<Self> {
        let ext = lattice.extension().clone();
        let kinds = classify_edges(&lattice)?;
        let decomposition = canonical_decomposition(&lattice, budget.scan_pairs, budget.nodes)?;
        let t_closed = is_t_closed(&ext, budget.scan_pairs, budget.nodes)?;
        let lambda = lambda_crosscheck(
            &lattice,
            &decomposition.t_closure,
            t_closed.t_closed,
            budget.nodes,
        )?;
        if !lambda.consistent {
            return Err(Error::invariant("lambda-transfer", format!("{lambda:?}")));
        }
        Ok(Analysis {
            subintegral: is_subintegral(&ext)?,
            infra_integral: is_infra_integral(&ext)?,
            arithmetic: is_arithmetic(&ext, budget.nodes)?,
            nagata: nagata_report(&lattice, budget.nodes)?,
            lattice,
            kinds,
            decomposition,
            t_closed,
            lambda,
        })
    }

    pub fn document(&self) -> Result<ResultDocument> {
        let lat = &self.lattice;
        let ext = lat.extension();
        let f = ext.ambient().field();
        let spec = ext.base().spectrum();
        let support: Vec<IdealSummary> = ext
            .support_indices()
            .into_iter()
            .map(|i| IdealSummary::of(&spec.maximal_ideals[i]))
            .collect();
        let residual_degrees = ext
            .residual_extensions()?
            .into_iter()
            .map(|r| r.degree)
            .collect();
        Ok(ResultDocument {
            version: env!("CARGO_PKG_VERSION"),
            field: FieldSummary {
                p: f.p(),
                e: f.e(),
                order: f.order(),
            },
            base_dim: ext.base().dim(),
            top_dim: ext.top().dim(),
            interval_cardinality: lat.len(),
            interval_length: lat.length().0,
            support: SupportSummary {
                size: support.len(),
                maximal_ideals: support,
            },
            residual_degrees,
            canonical_decomposition: DecompositionDims {
                base: ext.base().dim(),
                seminormalization: self.decomposition.seminormalization.dim(),
                t_closure: self.decomposition.t_closure.dim(),
                top: ext.top().dim(),
            },
            census: Census::of(&self.kinds),
            predicates: Predicates {
                subintegral: self.subintegral,
                infra_integral: self.infra_integral,
                t_closed: self.t_closed.t_closed,
                t_closed_path: self.t_closed.path,
                chained: lat.is_chained(),
                arithmetic: self.arithmetic.arithmetic,
                delta: lat.is_delta_extension(),
                distributive: lat.is_distributive(),
                pinched_at_tclosure: lat.is_pinched_at(&self.decomposition.t_closure)?,
            },
            lambda: self.lambda.lambda,
            nagata: NagataDocument::of(&self.nagata),
            timing: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealSummary {
    pub dim: usize,
    pub basis: Vec<Vec<u32>>,
}

impl IdealSummary {
    pub fn of(s: &Subspace) -> Self {
        IdealSummary {
            dim: s.dim(),
            basis: s.rows().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub version: &'static str,
    pub field: FieldSummary,
    pub base_dim: usize,
    pub top_dim: usize,
    pub interval_cardinality: usize,
    pub interval_length: usize,
    pub support: SupportSummary,
    /// `[S/Q : R/(Q ∩ R)]` for each maximal ideal `Q` of `S`.
    pub residual_degrees: Vec<usize>,
    pub canonical_decomposition: DecompositionDims,
    pub census: Census,
    pub predicates: Predicates,
    pub lambda: usize,
    pub nagata: NagataDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSummary {
    pub p: u32,
    pub e: u32,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportSummary {
    pub size: usize,
    pub maximal_ideals: Vec<IdealSummary>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionDims {
    pub base: usize,
    pub seminormalization: usize,
    pub t_closure: usize,
    pub top: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub subintegral: bool,
    pub infra_integral: bool,
    pub t_closed: bool,
    pub t_closed_path: TClosedPath,
    pub chained: bool,
    pub arithmetic: bool,
    pub delta: bool,
    pub distributive: bool,
    pub pinched_at_tclosure: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessDocument {
    pub maximal_ideal: IdealSummary,
    pub pair: [IdealSummary; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LicenceDocument {
    pub quantity: &'static str,
    pub rule: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NagataDocument {
    pub fip: bool,
    pub cardinality: Option<usize>,
    pub length: usize,
    pub lambda: usize,
    pub witnesses: Vec<WitnessDocument>,
    pub criteria: CriteriaAgreement,
    pub any_number_of_variables: bool,
    pub licences: Vec<LicenceDocument>,
}

impl NagataDocument {
    pub fn of(r: &NagataReport) -> Self {
        NagataDocument {
            fip: r.fip,
            cardinality: r.cardinality,
            length: r.length,
            lambda: r.lambda,
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessDocument {
                    maximal_ideal: IdealSummary::of(&w.maximal_ideal),
                    pair: [IdealSummary::of(&w.pair.0), IdealSummary::of(&w.pair.1)],
                })
                .collect(),
            criteria: r.criteria,
            any_number_of_variables: r.any_number_of_variables,
            licences: r
                .licences
                .iter()
                .map(|&(quantity, rule)| LicenceDocument { quantity, rule })
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let card = self
            .cardinality
            .map_or_else(|| "-".to_string(), |c| c.to_string());
        out.push_str(&format!("fip          {}\n", yes(self.fip)));
        out.push_str(&format!("cardinality  {card}\n"));
        out.push_str(&format!("length       {}\n", self.length));
        out.push_str(&format!("lambda       {}\n", self.lambda));
        for w in &self.witnesses {
            out.push_str(&format!(
                "witness      at {:?}: {:?} vs {:?}\n",
                w.maximal_ideal.basis, w.pair[0].basis, w.pair[1].basis
            ));
        }
        out.push_str(&format!(
            "criteria     agree {} (filtration {})\n",
            yes(self.criteria.agree),
            yes(self.criteria.filtration_criterion)
        ));
        for l in &self.licences {
            out.push_str(&format!("  {:<12} {}\n", l.quantity, l.rule));
        }
        out
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("results serialize") + "\n"
    }

    pub fn render(&self) -> String {
        let p = &self.predicates;
        let c = &self.census;
        let d = &self.canonical_decomposition;
        let mut out = String::new();
        out.push_str(&format!(
            "field        F_{} (p = {}, e = {})\n",
            self.field.order, self.field.p, self.field.e
        ));
        out.push_str(&format!(
            "dims         R {}, S {}\n",
            self.base_dim, self.top_dim
        ));
        out.push_str(&format!(
            "interval     {} nodes, length {}\n",
            self.interval_cardinality, self.interval_length
        ));
        out.push_str(&format!(
            "support      {} maximal ideal(s)\n",
            self.support.size
        ));
        out.push_str(&format!("residual     {:?}\n", self.residual_degrees));
        out.push_str(&format!(
            "canonical    R {} <= +R {} <= tR {} <= S {}\n",
            d.base, d.seminormalization, d.t_closure, d.top
        ));
        out.push_str(&format!(
            "census       inert {}, decomposed {}, ramified {}\n",
            c.inert, c.decomposed, c.ramified
        ));
        for (name, v) in [
            ("subintegral", p.subintegral),
            ("infra_integral", p.infra_integral),
            ("t_closed", p.t_closed),
            ("chained", p.chained),
            ("arithmetic", p.arithmetic),
            ("delta", p.delta),
            ("distributive", p.distributive),
            ("pinched_at_tclosure", p.pinched_at_tclosure),
        ] {
            out.push_str(&format!("  {name:<20} {}\n", yes(v)));
        }
        out.push_str(&format!("lambda       {}\n", self.lambda));
        out.push_str("nagata\n");
        for line in self.nagata.render().lines() {
            out.push_str(&format!("  {line}\n"));
        }
        if let Some(t) = &self.timing {
            out.push_str(&format!("elapsed      {:.3} ms\n", t.elapsed_ms));
        }
        out
    }
}
