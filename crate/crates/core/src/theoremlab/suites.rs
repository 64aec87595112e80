use super::{CheckOptions, Classified, Finding, Status, SuiteId, SuiteReport};
use crate::dividedext::{annihilator_membership, make_divided_ext, DxElem, ModuleTag};
use crate::domainkit::{DomainHandle, KElem};
use crate::error::Error;
use crate::finring::{make_truncated_poly, DEFAULT_CAP};
use crate::phiclass::{
    check_primary_irreducible, check_t11_bezout, classify, props, routes, search_t2_failure,
    sweep_bound, ClassificationReport, Entry, RingRef, Verdict,
};
use crate::polycontent::{ring_gaussian_checks, GaussOptions, SweepMethod};

struct Acc {
    id: SuiteId,
    checked: usize,
    violations: Vec<Finding>,
    inconclusive: Vec<Finding>,
    observations: Vec<Finding>,
}

impl Acc {
    fn new(id: SuiteId) -> Self {
        Acc {
            id,
            checked: 0,
            violations: vec![],
            inconclusive: vec![],
            observations: vec![],
        }
    }

    fn fail(&mut self, ring: &str, check: &str, detail: impl Into<String>) {
        self.violations.push(Finding::new(ring, check, detail));
    }

    fn unsure(&mut self, ring: &str, check: &str, detail: impl Into<String>) {
        self.inconclusive.push(Finding::new(ring, check, detail));
    }

    fn note(&mut self, ring: &str, check: &str, detail: impl Into<String>) {
        self.observations.push(Finding::new(ring, check, detail));
    }

    /// Expects `cond`; records a violation otherwise.
    fn expect(&mut self, ring: &str, check: &str, cond: bool, detail: impl Into<String>) {
        self.checked += 1;
        if !cond {
            self.fail(ring, check, detail);
        }
    }

    fn finish(self) -> SuiteReport {
        let status = if !self.violations.is_empty() {
            Status::Fail
        } else if !self.inconclusive.is_empty() {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        SuiteReport {
            id: self.id.id().to_string(),
            statement: self.id.statement().to_string(),
            status,
            checked: self.checked,
            violations: self.violations,
            inconclusive: self.inconclusive,
            observations: self.observations,
        }
    }
}

pub(super) fn run(id: SuiteId, classified: &[Classified<'_>], opts: &CheckOptions) -> SuiteReport {
    let mut acc = Acc::new(id);
    match id {
        SuiteId::T1 => route_agreement(&mut acc, classified, &[routes::DISTRIBUTIVE], false),
        SuiteId::T2 => {
            route_agreement(&mut acc, classified, &[routes::FACTORIZATION], false);
            t2_search(&mut acc, classified, opts);
        }
        SuiteId::T3 => route_agreement(
            &mut acc,
            classified,
            &[routes::RESIDUAL_SUM, routes::RESIDUAL_MEET],
            false,
        ),
        SuiteId::T4 => route_agreement(&mut acc, classified, &[routes::PRODUCT_MEET], false),
        SuiteId::T5 => route_agreement(
            &mut acc,
            classified,
            &[
                routes::LOCALLY_PRINCIPAL,
                routes::GAUSSIAN_F,
                routes::CONTENT_PAIRS,
            ],
            true,
        ),
        SuiteId::Cor0 => cor0(&mut acc, classified),
        SuiteId::T11 => t11(&mut acc, classified, opts),
        SuiteId::Pi => pi(&mut acc, classified, opts),
        SuiteId::Examples => examples(&mut acc, opts),
        SuiteId::Diagram => diagram(&mut acc, classified),
    }
    acc.finish()
}

/// φ-rings with a usable report; records errors as inconclusive. Route
/// contradictions are reported by the cor0 suite only.
fn phi_reports<'a>(
    acc: &mut Acc,
    classified: &'a [Classified<'a>],
) -> Vec<(&'a Classified<'a>, &'a ClassificationReport)> {
    let mut out = vec![];
    for c in classified {
        match &c.report {
            Ok(r) if r.is_phi_ring() => out.push((c, r)),
            Ok(_) => {}
            Err(Error::InternalInconsistency(_)) => {}
            Err(e) => acc.unsure(&c.entry.spec, "classify", e.to_string()),
        }
    }
    out
}

fn describe(e: &Entry) -> String {
    match &e.witness {
        Some(w) => format!("{} ({w})", e.verdict),
        None => e.verdict.to_string(),
    }
}

/// Each listed route must agree with the quotient-domain route.
fn route_agreement(
    acc: &mut Acc,
    classified: &[Classified<'_>],
    keys: &[&str],
    finite_gated: bool,
) {
    for (c, r) in phi_reports(acc, classified) {
        let spec = &c.entry.spec;
        let base = &r.routes[routes::QUOTIENT_PRUFER];
        for &k in keys {
            let e = &r.routes[k];
            match (base.verdict, e.verdict) {
                (Verdict::Skipped, _) | (_, Verdict::Skipped) => {
                    if !finite_gated || matches!(c.entry.ring, RingRef::Finite(_)) {
                        acc.note(
                            spec,
                            k,
                            format!("skipped: {}", e.basis.clone().unwrap_or_default()),
                        );
                    }
                }
                (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => acc.unsure(
                    spec,
                    k,
                    format!("{k}: {}; quotient: {}", describe(e), describe(base)),
                ),
                (a, b) => {
                    acc.expect(
                        spec,
                        k,
                        a == b,
                        format!(
                            "{k} is {} but quotient-domain route is {}",
                            describe(e),
                            describe(base)
                        ),
                    );
                    if b == Verdict::False {
                        acc.note(spec, k, e.witness.clone().unwrap_or_default());
                    }
                }
            }
        }
    }
}

fn t2_search(acc: &mut Acc, classified: &[Classified<'_>], opts: &CheckOptions) {
    for (c, r) in phi_reports(acc, classified) {
        let RingRef::Divided(d) = &c.entry.ring else {
            continue;
        };
        let spec = &c.entry.spec;
        let prufer = r.routes[routes::QUOTIENT_PRUFER].verdict;
        let (bound, _) = sweep_bound(d, &opts.classify);
        match (search_t2_failure(d, bound), prufer.as_bool()) {
            (Ok(found), Some(p)) => {
                acc.expect(
                    spec,
                    "residual_factorization_search",
                    found.is_none() == p,
                    format!(
                        "search found {} failing pair but the quotient-domain route is {prufer}",
                        if found.is_some() { "a" } else { "no" }
                    ),
                );
                if let Some(v) = found {
                    acc.note(
                        spec,
                        "residual_factorization_search",
                        format!(
                            "I = {}, J = {}: J·(I:J) = {} with I:J = {}",
                            v.i, v.j, v.product, v.k
                        ),
                    );
                }
            }
            (Ok(_), None) => acc.unsure(
                spec,
                "residual_factorization_search",
                "quotient route undecided",
            ),
            (Err(e), _) => acc.unsure(spec, "residual_factorization_search", e.to_string()),
        }
    }
}

fn cor0(acc: &mut Acc, classified: &[Classified<'_>]) {
    for c in classified {
        let spec = &c.entry.spec;
        match &c.report {
            Err(Error::InternalInconsistency(m)) => {
                acc.checked += 1;
                acc.fail(spec, "route_consensus", m.clone());
            }
            Err(e) => acc.unsure(spec, "classify", e.to_string()),
            Ok(r) if r.is_phi_ring() => {
                let definite: Vec<(&String, Verdict)> = r
                    .routes
                    .iter()
                    .filter(|(_, e)| e.verdict.is_definite())
                    .map(|(k, e)| (k, e.verdict))
                    .collect();
                let agree = definite.windows(2).all(|w| w[0].1 == w[1].1);
                acc.expect(
                    spec,
                    "route_consensus",
                    agree,
                    format!("definite routes disagree: {definite:?}"),
                );
                match r.verdict(props::PHI_PRUFER) {
                    Verdict::Inconclusive => {
                        acc.unsure(spec, props::PHI_PRUFER, "no definite route")
                    }
                    v => acc.note(
                        spec,
                        props::PHI_PRUFER,
                        format!("{v} by {} definite routes", definite.len()),
                    ),
                }
                for n in &r.notes {
                    acc.note(spec, "note", n.clone());
                }
            }
            Ok(_) => {}
        }
    }
}

fn t11(acc: &mut Acc, classified: &[Classified<'_>], opts: &CheckOptions) {
    for (c, r) in phi_reports(acc, classified) {
        let spec = &c.entry.spec;
        match check_t11_bezout(&c.entry.ring, &opts.classify) {
            Ok(t) if t.applicable => {
                acc.expect(
                    spec,
                    "two_generated_principal",
                    t.holds,
                    t.witness.clone().unwrap_or_default(),
                );
                acc.expect(
                    spec,
                    props::PHI_BEZOUT,
                    r.verdict(props::PHI_BEZOUT) == Verdict::True,
                    format!(
                        "semilocal phi-Prufer but {} is {}",
                        props::PHI_BEZOUT,
                        r.verdict(props::PHI_BEZOUT)
                    ),
                );
                if matches!(c.entry.ring, RingRef::Divided(_)) {
                    acc.note(
                        spec,
                        "two_generated_principal",
                        format!("{} ideals checked", t.checked),
                    );
                }
            }
            Ok(t) => acc.note(
                spec,
                "applicability",
                format!(
                    "not applicable (semilocal = {}, phi-Prufer = {}); phi-Bezout = {}",
                    t.semilocal, t.phi_prufer, t.phi_bezout
                ),
            ),
            Err(e) => acc.unsure(spec, "t11", e.to_string()),
        }
    }
}

fn pi(acc: &mut Acc, classified: &[Classified<'_>], opts: &CheckOptions) {
    for (c, _) in phi_reports(acc, classified) {
        let spec = &c.entry.spec;
        match check_primary_irreducible(&c.entry.ring, opts.pi_bound) {
            Ok(rep) if rep.vacuous => {}
            Ok(rep) => {
                acc.expect(
                    spec,
                    "nonnil_primes_maximal",
                    rep.hypothesis_holds,
                    "a nonnil prime is not maximal",
                );
                for e in &rep.entries {
                    acc.expect(
                        spec,
                        "primary_iff_irreducible",
                        e.consistent(),
                        format!(
                            "n = {}: primary {}, irreducible {}, prime power {}",
                            e.n, e.primary, e.irreducible, e.prime_power
                        ),
                    );
                    if e.n == 8 || e.n == 12 {
                        acc.note(
                            spec,
                            "primary_iff_irreducible",
                            format!(
                                "n = {}: primary {} [{}], irreducible {} [{}]",
                                e.n,
                                e.primary,
                                e.primary_witness.clone().unwrap_or_else(|| "-".into()),
                                e.irreducible,
                                e.irreducible_witness.clone().unwrap_or_else(|| "-".into())
                            ),
                        );
                    }
                }
            }
            Err(Error::UnsupportedFamily(_)) => {}
            Err(e) => acc.unsure(spec, "primary_iff_irreducible", e.to_string()),
        }
    }
}

const EXAMPLE_RING: &str = "trunc:2:2,2";

fn examples(acc: &mut Acc, opts: &CheckOptions) {
    let r = match make_truncated_poly(2, &[2, 2], DEFAULT_CAP) {
        Ok(r) => r,
        Err(e) => return acc.unsure(EXAMPLE_RING, "construct", e.to_string()),
    };
    let mut co = opts.classify;
    co.deg_bound = 1;
    match classify(&RingRef::Finite(r.clone()), &co) {
        Ok(rep) => {
            for (k, want) in [
                (props::PHI_RING, Verdict::True),
                (props::PHI_VNR, Verdict::True),
                (props::PHI_PRUFER, Verdict::True),
                (props::GAUSSIAN_ALL, Verdict::False),
                (props::ARITHMETICAL, Verdict::False),
            ] {
                let got = rep.verdict(k);
                acc.expect(
                    EXAMPLE_RING,
                    k,
                    got == want,
                    format!("expected {want}, got {got}"),
                );
            }
            let false_routes: Vec<&String> = rep
                .routes
                .iter()
                .filter(|(_, e)| e.verdict != Verdict::True)
                .map(|(k, _)| k)
                .collect();
            acc.expect(
                EXAMPLE_RING,
                "all_routes_true",
                false_routes.is_empty(),
                format!("routes not true: {false_routes:?}"),
            );
            let w = rep.properties[props::GAUSSIAN_ALL]
                .witness
                .clone()
                .unwrap_or_default();
            acc.expect(
                EXAMPLE_RING,
                "gaussian_witness",
                w.starts_with("f = xZ+y [y, x], g = xZ+y [y, x]: fg = 0")
                    && w.ends_with("c(f)c(g) = span{xy}"),
                format!("unexpected witness: {w}"),
            );
            acc.note(EXAMPLE_RING, props::GAUSSIAN_ALL, w);
        }
        Err(e) => acc.unsure(EXAMPLE_RING, "classify", e.to_string()),
    }
    let g = GaussOptions {
        deg_bound: 2,
        pair_budget: opts.classify.pair_budget,
        samples: opts.classify.gauss_samples,
        seed: opts.classify.seed,
    };
    match ring_gaussian_checks(&r, &g) {
        Ok(v) => {
            let nn = &v.gaussian_nonnil_f;
            let samples = match nn.method {
                SweepMethod::Sampled { samples, .. } => samples,
                SweepMethod::Exhaustive => usize::MAX,
            };
            acc.expect(
                EXAMPLE_RING,
                "gaussian_nonnil_f_deg2",
                nn.holds && samples >= 10_000.min(opts.classify.gauss_samples),
                format!("holds = {}, {} pairs", nn.holds, nn.pairs),
            );
            acc.note(
                EXAMPLE_RING,
                "gaussian_nonnil_f_deg2",
                match nn.method {
                    SweepMethod::Sampled {
                        seed,
                        samples,
                        full_bound,
                    } => format!(
                        "{} pairs: full sweep at deg={full_bound} plus sampled(seed={seed},budget={samples}) at deg=2",
                        nn.pairs
                    ),
                    SweepMethod::Exhaustive => format!("{} pairs, full sweep at deg=2", nn.pairs),
                },
            );
        }
        Err(e) => acc.unsure(EXAMPLE_RING, "gaussian_nonnil_f_deg2", e.to_string()),
    }

    let spec = "divext:Zloc:2";
    let d = match DomainHandle::int_loc(2) {
        Ok(d) => make_divided_ext(d, ModuleTag::FractionsModD),
        Err(e) => return acc.unsure(spec, "construct", e.to_string()),
    };
    let x = DxElem {
        a: KElem::int(2),
        m: KElem::zero(),
    };
    let y = DxElem {
        a: KElem::zero(),
        m: KElem::frac(1, 2),
    };
    let a = annihilator_membership(&d, &x, &y, opts.classify.sample_budget, opts.classify.seed);
    acc.expect(spec, "y_in_ann_x", a.y_in_ann_x, "(0, 1/2)·(2, 0) ≠ 0");
    acc.expect(spec, "x_in_ann_y", a.x_in_ann_y, "(2, 0)·(0, 1/2) ≠ 0");
    acc.expect(
        spec,
        "ann_x_in_yR",
        a.ann_x_in_yr,
        a.witness.clone().unwrap_or_default(),
    );
    acc.expect(
        spec,
        "ann_y_in_xR",
        a.ann_y_in_xr,
        a.witness.clone().unwrap_or_default(),
    );
    acc.note(
        spec,
        "annihilators",
        format!(
            "x = (2, 0), y = (0, 1/2): {} samples of (0:x) in yR, {} samples of (0:y) in xR",
            a.ann_x_sampled, a.ann_y_sampled
        ),
    );
}

/// Directed edges `from ⇒ to`, checked when both verdicts are definite.
fn diagram(acc: &mut Acc, classified: &[Classified<'_>]) {
    let general = [
        (props::ARITHMETICAL, props::GAUSSIAN_ALL),
        (props::GAUSSIAN_ALL, props::PRUFER),
    ];
    let phi = [
        (props::GAUSSIAN_ALL, props::PHI_PRUFER),
        (props::PHI_PRUFER, props::PRUFER),
        (props::WGLDIM_LE_1, props::PHI_PRUFER),
        (props::WGLDIM_0, props::PHI_PRUFER),
        (props::PHI_BEZOUT, props::PHI_PRUFER),
        (props::PHI_CHAINED, props::PHI_PRUFER),
    ];
    let strong = [
        (props::PRUFER, props::PHI_PRUFER),
        (props::PHI_PRUFER, props::WGLDIM_LE_1),
    ];
    for c in classified {
        let spec = &c.entry.spec;
        let r = match &c.report {
            Ok(r) => r,
            Err(Error::InternalInconsistency(_)) => continue,
            Err(e) => {
                acc.unsure(spec, "classify", e.to_string());
                continue;
            }
        };
        let mut edges: Vec<(&str, &str)> = general.to_vec();
        if r.is_phi_ring() {
            edges.extend(phi);
            if r.verdict(props::STRONGLY_PHI) == Verdict::True {
                edges.extend(strong);
            }
        }
        for (from, to) in edges {
            let (a, b) = (r.verdict(from), r.verdict(to));
            if a.is_definite() && b.is_definite() {
                acc.expect(
                    spec,
                    &format!("{from} => {to}"),
                    !(a == Verdict::True && b == Verdict::False),
                    format!("{from} holds but {to} fails"),
                );
            }
        }
        let datapoints = [
            (props::PRUFER, props::PHI_RING),
            (props::PHI_PRUFER, props::GAUSSIAN_ALL),
            (props::GAUSSIAN_ALL, props::ARITHMETICAL),
            (props::PHI_PRUFER, props::PHI_BEZOUT),
        ];
        for (from, to) in datapoints {
            if r.verdict(from) == Verdict::True && r.verdict(to) == Verdict::False {
                acc.note(spec, &format!("{from} =/=> {to}"), "separating example");
            }
        }
    }
}
