//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use philab_core::dividedext::{annihilator_membership, make_divided_ext, DxElem, ModuleTag};
use philab_core::domainkit::{DomainHandle, KElem};
use philab_core::finring::{make_truncated_poly, DEFAULT_CAP};
use philab_core::idealcalc::{product, span};
use philab_core::phiclass::{
    check_primary_irreducible, check_t11_bezout, classify, is_phi_ring, props, routes,
    ClassifyOptions, RingRef, Verdict,
};
use philab_core::polycontent::{
    content, nonnil_polys_gaussian, poly_mul, ring_gaussian_checks, GaussOptions, PolyOverRing,
    SweepMethod,
};
use philab_core::theoremlab::{
    build_corpus, default_corpus_specs, parse_ring, run_suite, CheckOptions, Status, SuiteId,
};

const EXAMPLE1_LIMIT: Duration = Duration::from_secs(30);
const EXAMPLE2_LIMIT: Duration = Duration::from_secs(5);
const COR0_LIMIT: Duration = Duration::from_secs(120);
const T5_LIMIT: Duration = Duration::from_secs(60);
const MIN_CORPUS: usize = 25;
const GAUSS_SAMPLES: usize = 10_000;
const ANN_SAMPLES: usize = 1_000;
const GEN_BOUND: u64 = 30;
const NORM_BOUND: u64 = 64;
const EXP_BOUND: u32 = 20;
const PI_BOUND: u64 = 200;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn ring(spec: &str) -> RingRef {
    parse_ring(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn opts() -> ClassifyOptions {
    ClassifyOptions {
        gen_bound: GEN_BOUND,
        norm_bound: NORM_BOUND,
        exp_bound: EXP_BOUND,
        ..ClassifyOptions::default()
    }
}

fn truncated_ring() -> Outcome {
    let start = Instant::now();
    let r = make_truncated_poly(2, &[2, 2], DEFAULT_CAP).map_err(|e| e.to_string())?;
    let rep = classify(&RingRef::Finite(r.clone()), &opts()).map_err(|e| e.to_string())?;
    for k in [props::PHI_RING, props::PHI_VNR, props::PHI_PRUFER] {
        ensure(
            rep.verdict(k) == Verdict::True,
            format!("{k} is {}", rep.verdict(k)),
        )?;
    }
    let bad: Vec<_> = rep
        .routes
        .iter()
        .filter(|(_, e)| e.verdict != Verdict::True)
        .map(|(k, _)| k.clone())
        .collect();
    ensure(bad.is_empty(), format!("routes not true: {bad:?}"))?;
    ensure(
        rep.verdict(props::GAUSSIAN_ALL) == Verdict::False,
        "gaussian_all_f is not false",
    )?;

    let g1 = ring_gaussian_checks(
        &r,
        &GaussOptions {
            deg_bound: 1,
            ..GaussOptions::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let (f, g) = g1
        .gaussian_all_f
        .witness
        .clone()
        .ok_or("no Gaussian witness")?;
    let xzy = PolyOverRing::from_names(&r, &["y", "x"]).map_err(|e| e.to_string())?;
    ensure(
        f == xzy && g == xzy,
        format!("witness ({f}, {g}) is not (xZ+y, xZ+y)"),
    )?;
    let fg = poly_mul(&f, &g).map_err(|e| e.to_string())?;
    ensure(fg.is_zero(), format!("fg = {fg} is not 0"))?;
    let cc = product(&content(&f), &content(&g)).map_err(|e| e.to_string())?;
    let xy = r.parse_elem("xy").ok_or("no element xy")?;
    ensure(
        cc == span(&r, &[xy]) && !cc.is_zero(),
        format!("c(f)c(g) = {cc}, expected (xy)"),
    )?;

    let g2 = ring_gaussian_checks(
        &r,
        &GaussOptions {
            deg_bound: 2,
            samples: GAUSS_SAMPLES,
            seed: 0,
            ..GaussOptions::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let nn = &g2.gaussian_nonnil_f;
    let samples = match nn.method {
        SweepMethod::Sampled { samples, .. } => samples,
        SweepMethod::Exhaustive => usize::MAX,
    };
    ensure(nn.holds, "gaussian_nonnil_f at degree 2 failed")?;
    ensure(samples >= GAUSS_SAMPLES, format!("only {samples} samples"))?;
    within(start, EXAMPLE1_LIMIT)?;
    Ok(format!(
        "witness (xZ+y, xZ+y), fg = 0, c(f)c(g) = (xy); nonnil deg 2 over {} pairs",
        nn.pairs
    ))
}

fn annihilators() -> Outcome {
    let start = Instant::now();
    let d = DomainHandle::int_loc(2).map_err(|e| e.to_string())?;
    let r = make_divided_ext(d, ModuleTag::FractionsModD);
    let x = DxElem {
        a: KElem::int(2),
        m: KElem::zero(),
    };
    let y = DxElem {
        a: KElem::zero(),
        m: KElem::frac(1, 2),
    };
    let a = annihilator_membership(&r, &x, &y, ANN_SAMPLES, 7);
    ensure(a.y_in_ann_x, "(0,1/2) ∉ Ann((2,0))")?;
    ensure(a.x_in_ann_y, "(2,0) ∉ Ann((0,1/2))")?;
    ensure(
        a.ann_x_sampled >= ANN_SAMPLES && a.ann_y_sampled >= ANN_SAMPLES,
        "too few samples",
    )?;
    ensure(
        a.ann_x_in_yr && a.ann_y_in_xr,
        a.witness.clone().unwrap_or_default(),
    )?;
    within(start, EXAMPLE2_LIMIT)?;
    Ok(format!(
        "{} + {} annihilator samples in the principal ideals",
        a.ann_x_sampled, a.ann_y_sampled
    ))
}

fn cor0() -> Outcome {
    let start = Instant::now();
    let specs = default_corpus_specs();
    ensure(specs.len() >= MIN_CORPUS, "corpus too small")?;
    let corpus = build_corpus(&specs).map_err(|(s, e)| format!("{s}: {e}"))?;
    let rep = run_suite(SuiteId::Cor0, &corpus, &CheckOptions::default());
    ensure(rep.status == Status::Pass, format!("{:?}", rep.violations))?;
    let mut phi = 0;
    for e in &corpus {
        let c = classify(&e.ring, &opts()).map_err(|err| format!("{}: {err}", e.spec))?;
        if !c.is_phi_ring() {
            continue;
        }
        phi += 1;
        let defs: Vec<Verdict> = c
            .routes
            .values()
            .map(|e| e.verdict)
            .filter(|v| v.is_definite())
            .collect();
        ensure(
            defs.windows(2).all(|w| w[0] == w[1]),
            format!("{}: routes disagree", e.spec),
        )?;
    }
    within(start, COR0_LIMIT)?;
    Ok(format!(
        "{} rings, {phi} phi-rings, zero contradictions",
        corpus.len()
    ))
}

fn t1() -> Outcome {
    let mut parts = vec![];
    for (spec, expected) in [
        ("divext:Z", true),
        ("divext:Zloc:2", true),
        ("divext:quad:-1:1", true),
        ("divext:quad:-1:2", false),
    ] {
        let rep = classify(&ring(spec), &opts()).map_err(|e| e.to_string())?;
        let r7 = &rep.routes[routes::DISTRIBUTIVE];
        let r3 = &rep.routes[routes::QUOTIENT_PRUFER];
        ensure(
            r7.verdict == r3.verdict,
            format!("{spec}: r7 {} vs r3 {}", r7.verdict, r3.verdict),
        )?;
        ensure(
            r3.verdict == Verdict::from_bool(expected),
            format!("{spec}: r3 is {}", r3.verdict),
        )?;
        if !expected {
            let w = r7.witness.clone().unwrap_or_default();
            ensure(
                w.contains("I = ") && w.contains("K = "),
                "no witness triple",
            )?;
            parts.push(format!("{spec}: {w}"));
        }
    }
    Ok(parts.join("; "))
}

fn t3_t4() -> Outcome {
    let keys = [
        routes::RESIDUAL_SUM,
        routes::RESIDUAL_MEET,
        routes::PRODUCT_MEET,
        routes::FACTORIZATION,
    ];
    let z = classify(&ring("divext:Z"), &opts()).map_err(|e| e.to_string())?;
    for k in keys {
        ensure(
            z.routes[k].verdict == Verdict::True,
            format!("divext:Z {k}: {:?}", z.routes[k].witness),
        )?;
        ensure(z.routes[k].method == "bounded(gen<=30)", "wrong bound")?;
    }
    let q = classify(&ring("divext:quad:-1:2"), &opts()).map_err(|e| e.to_string())?;
    let failing: Vec<&str> = keys
        .into_iter()
        .filter(|k| q.routes[*k].verdict == Verdict::False)
        .collect();
    ensure(!failing.is_empty(), "no identity fails over Z[2i]")?;
    Ok(format!("Z: zero violations; Z[2i] violates {failing:?}"))
}

fn t5() -> Outcome {
    let start = Instant::now();
    let corpus = build_corpus(&default_corpus_specs()).map_err(|(s, e)| format!("{s}: {e}"))?;
    let mut n = 0;
    for e in &corpus {
        let RingRef::Finite(r) = &e.ring else {
            continue;
        };
        if r.order() > 16
            || !is_phi_ring(&e.ring, &opts())
                .map_err(|e| e.to_string())?
                .holds
        {
            continue;
        }
        let v = nonnil_polys_gaussian(r, &GaussOptions::default()).map_err(|e| e.to_string())?;
        ensure(
            v.method == SweepMethod::Exhaustive,
            format!("{}: not a full sweep", e.spec),
        )?;
        ensure(v.holds, format!("{}: {:?}", e.spec, v.witness))?;
        n += 1;
    }
    within(start, T5_LIMIT)?;
    Ok(format!(
        "{n} finite phi-rings of order <= 16, full degree-1 sweeps"
    ))
}

fn t11() -> Outcome {
    let rep = check_t11_bezout(&ring("divext:Zloc:2"), &opts()).map_err(|e| e.to_string())?;
    ensure(rep.semilocal && rep.phi_prufer, "not semilocal phi-Prufer")?;
    ensure(rep.holds, rep.witness.clone().unwrap_or_default())?;
    let want = ((EXP_BOUND + 1) * (EXP_BOUND + 1)) as usize;
    ensure(
        rep.checked == want,
        format!("checked {} of {want}", rep.checked),
    )?;
    Ok(format!("{} exponent pairs principal", rep.checked))
}

fn pi() -> Outcome {
    let rep = check_primary_irreducible(&ring("divext:Z"), PI_BOUND).map_err(|e| e.to_string())?;
    ensure(rep.hypothesis_holds, "nonnil primes not maximal")?;
    ensure(
        rep.violations.is_empty(),
        format!("violations at {:?}", rep.violations),
    )?;
    ensure(rep.entries.len() == (PI_BOUND - 1) as usize, "wrong range")?;
    let e12 = rep.entries.iter().find(|e| e.n == 12).ok_or("no n = 12")?;
    let e8 = rep.entries.iter().find(|e| e.n == 8).ok_or("no n = 8")?;
    ensure(!e12.primary && !e12.irreducible, "n = 12 should fail both")?;
    ensure(
        e12.primary_witness.is_some() && e12.irreducible_witness.is_some(),
        "missing n = 12 witnesses",
    )?;
    ensure(e8.primary && e8.irreducible, "n = 8 should satisfy both")?;
    Ok(format!(
        "n <= {PI_BOUND}; n = 12: {}; {}",
        e12.primary_witness.as_deref().unwrap_or(""),
        e12.irreducible_witness.as_deref().unwrap_or("")
    ))
}

fn negative_gates() -> Outcome {
    for spec in ["Zn:6", "Zn:12", "prod:Zn:2|Zn:2", "selfext:Z"] {
        let rep = classify(&ring(spec), &opts()).map_err(|e| e.to_string())?;
        let e = &rep.properties[props::PHI_RING];
        ensure(e.verdict == Verdict::False, format!("{spec} reported phi"))?;
        ensure(
            e.witness.as_deref().is_some_and(|w| !w.is_empty()),
            format!("{spec}: no witness"),
        )?;
    }
    let z6 = classify(&ring("Zn:6"), &opts()).map_err(|e| e.to_string())?;
    ensure(
        z6.verdict(props::PRUFER) == Verdict::True,
        "Zn:6 not classically Prufer",
    )?;
    let corpus = build_corpus(&["Zn:6".to_string()]).map_err(|(s, e)| format!("{s}: {e}"))?;
    let d = run_suite(SuiteId::Diagram, &corpus, &CheckOptions::default());
    ensure(
        d.observations
            .iter()
            .any(|o| o.ring == "Zn:6" && o.check.starts_with(props::PRUFER)),
        "diagram suite lacks the Zn:6 datapoint",
    )?;
    Ok("Zn:6, Zn:12, Z/2 x Z/2, Z⋉Z not phi; Zn:6 classically Prufer".into())
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_philab"))
            .args(["check", "--suite", "all", "--seed", "42"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure(
        a.status.code() == Some(0),
        format!("exit {:?}", a.status.code()),
    )?;
    ensure(
        !a.stdout.is_empty() && a.stdout == b.stdout,
        "reports differ",
    )?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (
            "truncated polynomial ring is phi-Prufer but not Gaussian",
            truncated_ring,
        ),
        (
            "annihilators in the localized divided extension",
            annihilators,
        ),
        ("route agreement over the default corpus", cor0),
        ("distributivity matches the quotient Prufer test", t1),
        ("residual and product identities", t3_t4),
        (
            "non-nilpotent polynomials are Gaussian on finite phi-rings",
            t5,
        ),
        ("semilocal phi-Prufer is phi-Bezout", t11),
        ("primary iff irreducible iff prime power", pi),
        ("negative gates", negative_gates),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
