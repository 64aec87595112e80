//! Classification of finite rings and divided extensions, with several
//! independent routes to the φ-Prüfer property.

pub mod calculus;
mod divided;
mod finite;
pub mod theorems;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::dividedext::DividedExtRing;
use crate::error::{Error, Result};
use crate::finring::{nilradical, FiniteRing};
use crate::idealcalc::{is_divided, is_prime, Decision, DEFAULT_IDEAL_BUDGET};

pub use calculus::IdealCalculus;
pub use divided::{sweep_bound, DomLattice};
pub use theorems::{
    check_primary_irreducible, check_t11_bezout, check_t2_divided, check_t2_finite,
    search_t2_failure, PiEntry, PiReport, T11Report, T2Verdict,
};

/// Nil(R) prime and divided, decided exhaustively.
#[derive(Debug, Clone)]
pub struct FinitePhiCheck {
    pub is_phi: bool,
    pub nil_prime: Decision,
    pub nil_divided: Decision,
    pub witness: String,
}

pub fn finite_phi_check(r: &FiniteRing) -> Result<FinitePhiCheck> {
    let nil = nilradical(r);
    let nil_prime = is_prime(&nil);
    let nil_divided = is_divided(&nil, DEFAULT_IDEAL_BUDGET)?;
    let is_phi = nil_prime.holds && nil_divided.holds;
    let witness = if !nil_prime.holds {
        format!(
            "Nil(R) not prime: {}",
            nil_prime.witness.clone().unwrap_or_default()
        )
    } else if !nil_divided.holds {
        format!(
            "Nil(R) not divided: {}",
            nil_divided.witness.clone().unwrap_or_default()
        )
    } else {
        "Nil(R) is a divided prime".to_string()
    };
    Ok(FinitePhiCheck {
        is_phi,
        nil_prime,
        nil_divided,
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Inconclusive,
    /// Not applicable to this ring family.
    Skipped,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_definite(self) -> bool {
        matches!(self, Verdict::True | Verdict::False)
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub verdict: Verdict,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
}

impl Entry {
    pub fn new(verdict: Verdict, method: impl Into<String>) -> Self {
        Entry {
            verdict,
            method: method.into(),
            witness: None,
            basis: None,
        }
    }

    pub fn decided(holds: bool, method: impl Into<String>) -> Self {
        Entry::new(Verdict::from_bool(holds), method)
    }

    pub fn skipped(why: impl Into<String>) -> Self {
        Entry::new(Verdict::Skipped, "none").with_basis(why)
    }

    pub fn inconclusive(err: &Error) -> Self {
        Entry::new(Verdict::Inconclusive, "none").with_witness(err.to_string())
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_witness_opt(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }

    pub fn with_basis(mut self, b: impl Into<String>) -> Self {
        self.basis = Some(b.into());
        self
    }

    pub fn from_decision(d: &Decision, method: &str) -> Self {
        Entry::decided(d.holds, method).with_witness_opt(d.witness.clone())
    }
}

pub fn sampled(seed: u64, budget: usize) -> String {
    format!("sampled(seed={seed},budget={budget})")
}

pub fn bounded(what: impl fmt::Display) -> String {
    format!("bounded({what})")
}

pub const EXHAUSTIVE: &str = "exhaustive";
pub const BY_QUOTIENT: &str = "by-quotient-theorem";
pub const DERIVED: &str = "derived";

/// Deliberately broken checks used to confirm the harness catches bugs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutant {
    /// Tests I ∩ (J + K) = I ∩ J + K instead of distributivity.
    WeakDistributivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub deg_bound: usize,
    pub norm_bound: u64,
    pub gen_bound: u64,
    pub exp_bound: u32,
    pub sample_budget: usize,
    pub pair_budget: u64,
    pub gauss_samples: usize,
    pub seed: u64,
    pub mutant: Option<Mutant>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            deg_bound: 1,
            norm_bound: 64,
            gen_bound: 30,
            exp_bound: 20,
            sample_budget: 1000,
            pair_budget: crate::polycontent::DEFAULT_PAIR_BUDGET,
            gauss_samples: crate::polycontent::DEFAULT_SAMPLES,
            seed: 0,
            mutant: None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum RingRef {
    Finite(FiniteRing),
    Divided(DividedExtRing),
}

impl RingRef {
    pub fn label(&self) -> String {
        match self {
            RingRef::Finite(r) => r.label().to_string(),
            RingRef::Divided(d) => d.spec(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RingRef::Finite(r) => format!("finite ring of order {}", r.order()),
            RingRef::Divided(d) => d.to_string(),
        }
    }
}

pub mod props {
    pub const PHI_RING: &str = "phi_ring";
    pub const STRONGLY_PHI: &str = "strongly_phi";
    pub const PHI_CHAINED: &str = "phi_chained";
    pub const PHI_VNR: &str = "phi_von_neumann_regular";
    pub const PHI_PRUFER: &str = "phi_prufer";
    pub const PHI_BEZOUT: &str = "phi_bezout";
    pub const GAUSSIAN_ALL: &str = "gaussian_all_f";
    pub const GAUSSIAN_NONNIL: &str = "gaussian_nonnil_f";
    pub const ARITHMETICAL: &str = "arithmetical";
    pub const PRUFER: &str = "classical_prufer";
    pub const SEMILOCAL: &str = "semilocal";
    pub const WGLDIM_0: &str = "phi_weak_global_dimension_0";
    pub const WGLDIM_LE_1: &str = "phi_weak_global_dimension_le_1";
}

pub mod routes {
    pub const QUOTIENT_PRUFER: &str = "quotient_prufer_domain";
    pub const PHI_IMAGE_PRUFER: &str = "phi_image_prufer";
    pub const PHI_IMAGE_QUOTIENT: &str = "phi_image_quotient_prufer_domain";
    pub const LOCAL_PRIMES: &str = "localizations_at_primes_valuation";
    pub const LOCAL_MAXIMALS: &str = "localizations_at_maximals_valuation";
    pub const DISTRIBUTIVE: &str = "nonnil_lattice_distributive";
    pub const FACTORIZATION: &str = "nonnil_factorization";
    pub const RESIDUAL_SUM: &str = "residual_of_sum";
    pub const RESIDUAL_MEET: &str = "residual_by_intersection";
    pub const PRODUCT_MEET: &str = "product_over_intersection";
    pub const LOCALLY_PRINCIPAL: &str = "locally_principal";
    pub const GAUSSIAN_F: &str = "nonnil_polynomials_gaussian";
    pub const CONTENT_PAIRS: &str = "content_formula_nonnil_pairs";
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub label: String,
    pub family: String,
    pub properties: BTreeMap<String, Entry>,
    pub routes: BTreeMap<String, Entry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn verdict(&self, key: &str) -> Verdict {
        self.properties
            .get(key)
            .or_else(|| self.routes.get(key))
            .map(|e| e.verdict)
            .unwrap_or(Verdict::Skipped)
    }

    pub fn is_phi_ring(&self) -> bool {
        self.verdict(props::PHI_RING) == Verdict::True
    }
}

/// Consensus over definite route verdicts; contradictions are bugs.
pub fn route_consensus(label: &str, routes: &BTreeMap<String, Entry>) -> Result<Option<bool>> {
    let trues: Vec<&String> = routes
        .iter()
        .filter(|(_, e)| e.verdict == Verdict::True)
        .map(|(k, _)| k)
        .collect();
    let falses: Vec<(&String, &Entry)> = routes
        .iter()
        .filter(|(_, e)| e.verdict == Verdict::False)
        .collect();
    if !trues.is_empty() && !falses.is_empty() {
        let (k, e) = falses[0];
        return Err(Error::InternalInconsistency(format!(
            "{label}: routes disagree ({} true, {k} false: {})",
            trues
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join(","),
            e.witness.clone().unwrap_or_default()
        )));
    }
    Ok(if !trues.is_empty() {
        Some(true)
    } else if !falses.is_empty() {
        Some(false)
    } else {
        None
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiVerdict {
    pub holds: bool,
    pub method: String,
    pub witness: String,
}

pub fn is_phi_ring(r: &RingRef, opts: &ClassifyOptions) -> Result<PhiVerdict> {
    match r {
        RingRef::Finite(f) => {
            let c = finite_phi_check(f)?;
            Ok(PhiVerdict {
                holds: c.is_phi,
                method: EXHAUSTIVE.into(),
                witness: c.witness,
            })
        }
        RingRef::Divided(d) => Ok(divided::phi_verdict(d, opts)),
    }
}

/// All φ-Prüfer routes for a φ-ring. Errors on non-φ-rings and on
/// contradicting definite verdicts.
pub fn phi_prufer_multiroute(
    r: &RingRef,
    opts: &ClassifyOptions,
) -> Result<BTreeMap<String, Entry>> {
    let phi = is_phi_ring(r, opts)?;
    if !phi.holds {
        return Err(Error::NotPhiRing(phi.witness));
    }
    let routes = match r {
        RingRef::Finite(f) => finite::routes(f, opts),
        RingRef::Divided(d) => divided::routes(d, opts),
    };
    route_consensus(&r.label(), &routes)?;
    Ok(routes)
}

pub fn classify(r: &RingRef, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let mut report = match r {
        RingRef::Finite(f) => finite::classify(f, opts)?,
        RingRef::Divided(d) => divided::classify(d, opts)?,
    };
    let consensus = route_consensus(&report.label, &report.routes)?;
    let entry = match consensus {
        _ if !report.is_phi_ring() => Entry::decided(false, DERIVED)
            .with_witness("not a phi-ring")
            .with_basis("phi-Prufer rings are phi-rings by definition"),
        Some(b) => {
            let agreeing = report
                .routes
                .iter()
                .filter(|(_, e)| e.verdict.is_definite())
                .count();
            let mut e = Entry::decided(b, format!("consensus({agreeing} routes)"));
            if let Some(w) = report
                .routes
                .values()
                .find(|e| e.verdict == Verdict::False)
                .and_then(|e| e.witness.clone())
            {
                e = e.with_witness(w);
            }
            e
        }
        None => Entry::new(Verdict::Inconclusive, "consensus(0 routes)"),
    };
    let prufer = entry.verdict;
    report.properties.insert(props::PHI_PRUFER.into(), entry);
    derive_homological(&mut report, prufer);
    Ok(report)
}

fn derive_homological(report: &mut ClassificationReport, prufer: Verdict) {
    let vnr = report.verdict(props::PHI_VNR);
    let strong = report.verdict(props::STRONGLY_PHI);
    if !report.is_phi_ring() {
        for k in [props::WGLDIM_0, props::WGLDIM_LE_1] {
            report
                .properties
                .insert(k.into(), Entry::skipped("requires a phi-ring"));
        }
        return;
    }
    report.properties.insert(
        props::WGLDIM_0.into(),
        Entry::new(vnr, DERIVED)
            .with_basis("phi-weak global dimension 0 exactly for phi-von Neumann regular rings"),
    );
    let le1 = match (prufer.as_bool(), strong.as_bool()) {
        (Some(a), Some(b)) => Verdict::from_bool(a && b),
        (Some(false), _) | (_, Some(false)) => Verdict::False,
        _ => Verdict::Inconclusive,
    };
    report.properties.insert(
        props::WGLDIM_LE_1.into(),
        Entry::new(le1, DERIVED).with_basis(
            "phi-weak global dimension at most 1 exactly for phi-Prufer strongly phi-rings",
        ),
    );
}

#[cfg(test)]
mod tests;
