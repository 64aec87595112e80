//! Corpus construction, suite runner and report emission.

mod parse;
mod suites;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::phiclass::{classify, ClassificationReport, ClassifyOptions, RingRef, Verdict};

pub use parse::{parse_ring, parse_ring_with_cap};

pub const SCHEMA: &str = "phi-lab-report/1";
pub const DEFAULT_PI_BOUND: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteId {
    T1,
    T2,
    T3,
    T4,
    T5,
    Cor0,
    T11,
    Pi,
    Examples,
    Diagram,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::T1,
        SuiteId::T2,
        SuiteId::T3,
        SuiteId::T4,
        SuiteId::T5,
        SuiteId::Cor0,
        SuiteId::T11,
        SuiteId::Pi,
        SuiteId::Examples,
        SuiteId::Diagram,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SuiteId::T1 => "t1",
            SuiteId::T2 => "t2",
            SuiteId::T3 => "t3",
            SuiteId::T4 => "t4",
            SuiteId::T5 => "t5",
            SuiteId::Cor0 => "cor0",
            SuiteId::T11 => "t11",
            SuiteId::Pi => "pi",
            SuiteId::Examples => "examples",
            SuiteId::Diagram => "diagram",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            SuiteId::T1 => "a phi-ring is phi-Prufer iff its nonnil ideal lattice is distributive",
            SuiteId::T2 => {
                "a phi-ring is phi-Prufer iff every nonnil I inside a finitely generated nonnil J factors as I = JK"
            }
            SuiteId::T3 => "phi-Prufer iff (I+J):K = I:K + J:K and K:(I∩J) = K:I + K:J",
            SuiteId::T4 => "phi-Prufer iff (I∩J)K = IK ∩ JK for nonnil I, J, K",
            SuiteId::T5 => {
                "phi-Prufer iff nonnil ideals are locally principal iff non-nilpotent polynomials are Gaussian"
            }
            SuiteId::Cor0 => "all characterizations of phi-Prufer agree on every phi-ring",
            SuiteId::T11 => "a semilocal phi-Prufer ring is phi-Bezout",
            SuiteId::Pi => {
                "in a phi-Prufer ring whose nonnil primes are maximal, primary nonnil ideals are exactly the irreducible ones"
            }
            SuiteId::Examples => {
                "F2[x,y]/(x^2,y^2) is phi-Prufer but not Gaussian; annihilators in Z_(2) ⋉ Q/Z_(2)"
            }
            SuiteId::Diagram => "implications among arithmetical, Gaussian, Prufer and phi-Prufer",
        }
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.id() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown suite id '{s}'")))
    }
}

/// Comma-separated suite ids, or "all".
pub fn parse_suites(s: &str) -> Result<Vec<SuiteId>> {
    if s.trim() == "all" {
        return Ok(SuiteId::ALL.to_vec());
    }
    let mut out: Vec<SuiteId> = s
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn default_corpus_specs() -> Vec<String> {
    let mut v: Vec<String> = (2..=32).map(|n| format!("Zn:{n}")).collect();
    v.extend(
        [
            "trunc:2:2,2",
            "trunc:2:2",
            "trunc:3:2",
            "trunc:2:3",
            "prod:Zn:2|Zn:2",
            "prod:Zn:2|Zn:3",
            "prod:Zn:4|Zn:2",
            "triv:Zn:2|self",
            "triv:Zn:4|Zn:2",
            "triv:Zn:4|self",
            "triv:Zn:3|self",
            "divext:Z",
            "divext:Zloc:2",
            "divext:quad:-1:1",
            "divext:quad:-1:2",
            "selfext:Z",
        ]
        .map(String::from),
    );
    v
}

/// One spec per line; '#' starts a comment.
pub fn read_corpus_text(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect()
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub spec: String,
    pub ring: RingRef,
}

pub fn build_corpus(specs: &[String]) -> std::result::Result<Vec<CorpusEntry>, (String, Error)> {
    specs
        .iter()
        .map(|s| {
            parse_ring(s)
                .map(|ring| CorpusEntry {
                    spec: s.clone(),
                    ring,
                })
                .map_err(|e| (s.clone(), e))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub classify: ClassifyOptions,
    pub pi_bound: u64,
    pub timings: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            classify: ClassifyOptions::default(),
            pi_bound: DEFAULT_PI_BOUND,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub ring: String,
    pub check: String,
    pub detail: String,
}

impl Finding {
    pub fn new(
        ring: impl Into<String>,
        check: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Finding {
            ring: ring.into(),
            check: check.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub checked: usize,
    pub violations: Vec<Finding>,
    pub inconclusive: Vec<Finding>,
    pub observations: Vec<Finding>,
}

/// Per-ring classification outcomes shared by all suites.
pub struct Classified<'a> {
    pub entry: &'a CorpusEntry,
    pub report: Result<ClassificationReport>,
}

pub fn classify_corpus<'a>(
    corpus: &'a [CorpusEntry],
    opts: &ClassifyOptions,
) -> Vec<Classified<'a>> {
    corpus
        .par_iter()
        .map(|entry| Classified {
            entry,
            report: classify(&entry.ring, opts),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub options: CheckOptions,
    pub corpus: Vec<String>,
    pub rings: BTreeMap<String, Value>,
    pub suites: Vec<SuiteReport>,
    pub timings: Option<BTreeMap<String, f64>>,
}

pub fn run_check(corpus: &[CorpusEntry], ids: &[SuiteId], opts: &CheckOptions) -> CheckReport {
    let mut timings = BTreeMap::new();
    let t0 = Instant::now();
    let classified = classify_corpus(corpus, &opts.classify);
    timings.insert("classify".to_string(), t0.elapsed().as_secs_f64());
    let mut rings = BTreeMap::new();
    for c in &classified {
        let v = match &c.report {
            Ok(r) => serde_json::to_value(r).expect("report serializes"),
            Err(e) => json!({ "error": e.to_string() }),
        };
        rings.insert(c.entry.spec.clone(), v);
    }
    let mut reports = Vec::new();
    for &id in ids {
        let t = Instant::now();
        reports.push(suites::run(id, &classified, opts));
        timings.insert(id.id().to_string(), t.elapsed().as_secs_f64());
    }
    CheckReport {
        options: *opts,
        corpus: corpus.iter().map(|e| e.spec.clone()).collect(),
        rings,
        suites: reports,
        timings: opts.timings.then_some(timings),
    }
}

pub fn run_suite(id: SuiteId, corpus: &[CorpusEntry], opts: &CheckOptions) -> SuiteReport {
    let classified = classify_corpus(corpus, &opts.classify);
    suites::run(id, &classified, opts)
}

fn budgets_json(o: &CheckOptions) -> Value {
    let c = &o.classify;
    json!({
        "deg_bound": c.deg_bound,
        "norm_bound": c.norm_bound,
        "gen_bound": c.gen_bound,
        "exp_bound": c.exp_bound,
        "sample_budget": c.sample_budget,
        "pair_budget": c.pair_budget,
        "gauss_samples": c.gauss_samples,
        "pi_bound": o.pi_bound,
    })
}

impl CheckReport {
    pub fn status(&self) -> Status {
        self.suites
            .iter()
            .map(|s| s.status)
            .max()
            .unwrap_or(Status::Pass)
    }

    /// 0 pass, 1 definite violation, 2 inconclusive only.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn summary_line(&self) -> String {
        let pass = self
            .suites
            .iter()
            .filter(|s| s.status == Status::Pass)
            .count();
        format!("suites: {pass}/{} pass", self.suites.len())
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "schema": SCHEMA,
            "seed": self.options.classify.seed,
            "budgets": budgets_json(&self.options),
            "corpus": self.corpus,
            "rings": self.rings,
            "suites": self.suites.iter().map(|s| (s.id.clone(), serde_json::to_value(s).expect("suite serializes"))).collect::<serde_json::Map<_, _>>(),
            "summary": {
                "line": self.summary_line(),
                "status": serde_json::to_value(self.status()).expect("status serializes"),
                "exit_code": self.exit_code(),
            },
        });
        if let Some(t) = &self.timings {
            v["timings_seconds"] = json!(t);
        }
        v
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("json");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# phi-lab report\n");
        let _ = writeln!(s, "- schema: {SCHEMA}");
        let _ = writeln!(s, "- seed: {}", self.options.classify.seed);
        let _ = writeln!(s, "- corpus: {} rings", self.corpus.len());
        let _ = writeln!(s, "- {}\n", self.summary_line());
        let _ = writeln!(
            s,
            "| suite | status | checked | violations | inconclusive |"
        );
        let _ = writeln!(s, "|---|---|---|---|---|");
        for r in &self.suites {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} |",
                r.id,
                status_word(r.status),
                r.checked,
                r.violations.len(),
                r.inconclusive.len()
            );
        }
        for r in &self.suites {
            let _ = writeln!(s, "\n## {}: {}\n", r.id, r.statement);
            for (kind, list) in [
                ("violation", &r.violations),
                ("inconclusive", &r.inconclusive),
                ("observation", &r.observations),
            ] {
                for f in list {
                    let _ = writeln!(s, "- {kind} `{}` {}: {}", f.ring, f.check, f.detail);
                }
            }
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(s, "\n## timings\n");
            for (k, v) in t {
                let _ = writeln!(s, "- {k}: {v:.3}s");
            }
        }
        s
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Inconclusive => "inconclusive",
    }
}

/// Rings whose property (or route) verdict is true, or false with `negate`.
pub fn search(classified: &[Classified<'_>], property: &str, negate: bool) -> Vec<Finding> {
    let want = if negate {
        Verdict::False
    } else {
        Verdict::True
    };
    classified
        .iter()
        .filter_map(|c| {
            let r = c.report.as_ref().ok()?;
            let e = r
                .properties
                .get(property)
                .or_else(|| r.routes.get(property))?;
            (e.verdict == want).then(|| {
                Finding::new(
                    c.entry.spec.clone(),
                    property,
                    e.witness.clone().unwrap_or_else(|| e.method.clone()),
                )
            })
        })
        .collect()
}

pub fn known_properties() -> Vec<&'static str> {
    use crate::phiclass::{props, routes};
    vec![
        props::PHI_RING,
        props::STRONGLY_PHI,
        props::PHI_CHAINED,
        props::PHI_VNR,
        props::PHI_PRUFER,
        props::PHI_BEZOUT,
        props::GAUSSIAN_ALL,
        props::GAUSSIAN_NONNIL,
        props::ARITHMETICAL,
        props::PRUFER,
        props::SEMILOCAL,
        props::WGLDIM_0,
        props::WGLDIM_LE_1,
        routes::QUOTIENT_PRUFER,
        routes::PHI_IMAGE_PRUFER,
        routes::PHI_IMAGE_QUOTIENT,
        routes::LOCAL_PRIMES,
        routes::LOCAL_MAXIMALS,
        routes::DISTRIBUTIVE,
        routes::FACTORIZATION,
        routes::RESIDUAL_SUM,
        routes::RESIDUAL_MEET,
        routes::PRODUCT_MEET,
        routes::LOCALLY_PRINCIPAL,
        routes::GAUSSIAN_F,
        routes::CONTENT_PAIRS,
    ]
}
