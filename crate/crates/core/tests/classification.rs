use philab_core::phiclass::{classify, props, routes, ClassifyOptions, RingRef, Verdict};
use philab_core::theoremlab::{
    build_corpus, default_corpus_specs, parse_ring, run_check, CheckOptions, SuiteId,
};
use proptest::prelude::*;

fn is_prime_power(n: u64) -> bool {
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// a ⇒ b on definite verdicts.
fn implies(a: Verdict, b: Verdict) -> bool {
    a != Verdict::True || b != Verdict::False
}

fn check_invariants(spec: &str) -> Result<(), TestCaseError> {
    let ring = parse_ring(spec).unwrap();
    let rep = classify(&ring, &ClassifyOptions::default())
        .map_err(|e| TestCaseError::fail(format!("{spec}: {e}")))?;
    let v = |k: &str| rep.verdict(k);
    let chain = [
        (props::PHI_CHAINED, props::PHI_BEZOUT),
        (props::PHI_BEZOUT, props::PHI_PRUFER),
        (props::PHI_VNR, props::PHI_PRUFER),
        (props::PHI_VNR, props::STRONGLY_PHI),
        (props::WGLDIM_0, props::WGLDIM_LE_1),
        (props::STRONGLY_PHI, props::PHI_RING),
        (props::ARITHMETICAL, props::GAUSSIAN_ALL),
        (props::GAUSSIAN_ALL, props::GAUSSIAN_NONNIL),
    ];
    for (a, b) in chain {
        prop_assert!(
            implies(v(a), v(b)),
            "{spec}: {a} = {} but {b} = {}",
            v(a),
            v(b)
        );
    }
    if rep.is_phi_ring() {
        let p = v(props::PHI_PRUFER);
        for (k, e) in &rep.routes {
            if e.verdict.is_definite() && p.is_definite() {
                prop_assert_eq!(e.verdict, p, "{}: route {}", spec, k);
            }
        }
    } else {
        prop_assert!(rep.routes.values().all(|e| e.verdict != Verdict::True));
    }
    Ok(())
}

#[test]
fn default_corpus_satisfies_implications() {
    for spec in default_corpus_specs() {
        check_invariants(&spec).unwrap();
    }
}

#[test]
fn cyclic_rings_are_phi_exactly_at_prime_powers() {
    for n in 2..=64u64 {
        let rep = classify(
            &parse_ring(&format!("Zn:{n}")).unwrap(),
            &ClassifyOptions::default(),
        )
        .unwrap();
        assert_eq!(rep.is_phi_ring(), is_prime_power(n), "n = {n}");
        if is_prime_power(n) {
            assert_eq!(rep.verdict(props::PHI_CHAINED), Verdict::True, "n = {n}");
            assert_eq!(rep.verdict(props::PHI_PRUFER), Verdict::True, "n = {n}");
        }
    }
}

#[test]
fn divided_extensions_follow_the_base_domain() {
    let expect = [
        ("divext:Z", true),
        ("divext:Zloc:2", true),
        ("divext:quad:-1:1", true),
        ("divext:quad:-1:2", false),
        ("divext:quad:-5:1", true),
        ("divext:quad:-3:2", false),
    ];
    for (spec, prufer) in expect {
        let rep = classify(&parse_ring(spec).unwrap(), &ClassifyOptions::default()).unwrap();
        assert!(rep.is_phi_ring(), "{spec}");
        assert_eq!(
            rep.verdict(props::PHI_PRUFER),
            Verdict::from_bool(prufer),
            "{spec}"
        );
        assert_eq!(
            rep.routes[routes::QUOTIENT_PRUFER].verdict,
            Verdict::from_bool(prufer),
            "{spec}"
        );
    }
    let rep = classify(
        &parse_ring("selfext:Z").unwrap(),
        &ClassifyOptions::default(),
    )
    .unwrap();
    assert!(!rep.is_phi_ring());
}

#[test]
fn reports_are_deterministic() {
    let corpus = build_corpus(&default_corpus_specs()).unwrap();
    let opts = CheckOptions::default();
    let a = run_check(&corpus, &SuiteId::ALL, &opts).to_json();
    let b = run_check(&corpus, &SuiteId::ALL, &opts).to_json();
    assert_eq!(a, b);
}

fn finite_spec() -> impl Strategy<Value = String> {
    let zn = (2u64..17).prop_map(|n| format!("Zn:{n}"));
    prop_oneof![
        zn.clone(),
        (2u64..9, 2u64..9).prop_map(|(a, b)| format!("prod:Zn:{a}|Zn:{b}")),
        (2u64..9).prop_map(|a| format!("triv:Zn:{a}|self")),
        (
            prop::sample::select(vec![2u64, 3]),
            prop::collection::vec(1u32..4, 1..3)
        )
            .prop_map(|(p, es)| format!(
                "trunc:{p}:{}",
                es.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_finite_rings_satisfy_implications(spec in finite_spec()) {
        let ring = parse_ring(&spec);
        prop_assume!(ring.is_ok());
        check_invariants(&spec)?;
    }

    /// R × S has a non-prime nilradical.
    #[test]
    fn products_are_never_phi(a in 2u64..9, b in 2u64..9) {
        let r = parse_ring(&format!("prod:Zn:{a}|Zn:{b}")).unwrap();
        let RingRef::Finite(_) = &r else { unreachable!() };
        prop_assert!(!classify(&r, &ClassifyOptions::default()).unwrap().is_phi_ring());
    }

    #[test]
    fn labels_reparse_to_the_same_ring(spec in finite_spec()) {
        let Ok(RingRef::Finite(r)) = parse_ring(&spec) else { return Ok(()) };
        let Ok(RingRef::Finite(s)) = parse_ring(r.label()) else {
            return Err(TestCaseError::fail(format!("label {} does not reparse", r.label())));
        };
        prop_assert_eq!(r.label(), s.label());
        prop_assert_eq!(r.order(), s.order());
    }
}
