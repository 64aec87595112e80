use super::*;
use crate::dividedext::{make_divided_ext, ModuleTag};
use crate::domainkit::DomainHandle;
use crate::finring::{make_product, make_truncated_poly, make_zn, DEFAULT_CAP};
use crate::idealcalc::span;

fn fin(r: FiniteRing) -> RingRef {
    RingRef::Finite(r)
}

fn divext(d: DomainHandle) -> RingRef {
    RingRef::Divided(make_divided_ext(d, ModuleTag::FractionsModD))
}

fn all_routes_agree(rep: &ClassificationReport, expected: bool) {
    for (k, e) in &rep.routes {
        if e.verdict.is_definite() {
            assert_eq!(
                e.verdict.as_bool(),
                Some(expected),
                "{}: route {k}",
                rep.label
            );
        }
    }
}

#[test]
fn z8_is_chained_and_gaussian() {
    let opts = ClassifyOptions {
        deg_bound: 2,
        ..ClassifyOptions::default()
    };
    let rep = classify(&fin(make_zn(8).unwrap()), &opts).unwrap();
    for k in [
        props::PHI_RING,
        props::PHI_CHAINED,
        props::PHI_PRUFER,
        props::PHI_VNR,
        props::GAUSSIAN_ALL,
        props::GAUSSIAN_NONNIL,
        props::ARITHMETICAL,
    ] {
        assert_eq!(rep.verdict(k), Verdict::True, "{k}");
    }
    assert_eq!(rep.verdict(props::STRONGLY_PHI), Verdict::True);
    all_routes_agree(&rep, true);
    assert_eq!(rep.properties[props::GAUSSIAN_ALL].method, "bounded(deg=2)");
}

#[test]
fn truncated_polynomial_ring_is_phi_prufer_but_not_gaussian() {
    let r = make_truncated_poly(2, &[2, 2], DEFAULT_CAP).unwrap();
    let rep = classify(&fin(r), &ClassifyOptions::default()).unwrap();
    assert!(rep.is_phi_ring());
    assert_eq!(rep.verdict(props::PHI_VNR), Verdict::True);
    assert_eq!(rep.verdict(props::PHI_PRUFER), Verdict::True);
    assert_eq!(rep.verdict(props::GAUSSIAN_ALL), Verdict::False);
    assert_eq!(rep.verdict(props::GAUSSIAN_NONNIL), Verdict::True);
    assert_eq!(rep.verdict(props::ARITHMETICAL), Verdict::False);
    assert_eq!(rep.verdict(props::WGLDIM_0), Verdict::True);
    assert_eq!(rep.verdict(props::STRONGLY_PHI), Verdict::True);
    assert_eq!(rep.verdict(props::WGLDIM_LE_1), Verdict::True);
    let w = rep.properties[props::GAUSSIAN_ALL].witness.clone().unwrap();
    assert!(w.starts_with("f = xZ+y [y, x], g = xZ+y [y, x]"), "{w}");
    all_routes_agree(&rep, true);
    assert_eq!(rep.notes.len(), 1);
}

#[test]
fn non_phi_rings_carry_witnesses() {
    let z6 = classify(&fin(make_zn(6).unwrap()), &ClassifyOptions::default()).unwrap();
    assert_eq!(z6.verdict(props::PHI_RING), Verdict::False);
    assert_eq!(z6.verdict(props::PRUFER), Verdict::True);
    assert_eq!(z6.verdict(props::PHI_PRUFER), Verdict::False);
    assert!(z6.routes.is_empty());
    let w = z6.properties[props::PHI_RING].witness.clone().unwrap();
    assert!(w.contains("not prime"), "{w}");

    let z2 = make_zn(2).unwrap();
    let p = make_product(&z2, &z2, DEFAULT_CAP).unwrap();
    assert!(
        !is_phi_ring(&fin(p), &ClassifyOptions::default())
            .unwrap()
            .holds
    );
    let z12 = fin(make_zn(12).unwrap());
    assert!(
        !is_phi_ring(&z12, &ClassifyOptions::default())
            .unwrap()
            .holds
    );
    let zz = RingRef::Divided(make_divided_ext(DomainHandle::Int, ModuleTag::SelfModule));
    let v = is_phi_ring(&zz, &ClassifyOptions::default()).unwrap();
    assert!(!v.holds);
    assert!(v.witness.contains("(0, 1) ∉ (2, 0)·R"), "{}", v.witness);
    assert!(matches!(
        phi_prufer_multiroute(&zz, &ClassifyOptions::default()),
        Err(Error::NotPhiRing(_))
    ));
}

#[test]
fn divided_extension_routes() {
    let opts = ClassifyOptions::default();
    for (d, expected) in [
        (DomainHandle::Int, true),
        (DomainHandle::int_loc(2).unwrap(), true),
        (DomainHandle::quad(-1, 1).unwrap(), true),
        (DomainHandle::quad(-1, 2).unwrap(), false),
    ] {
        let rep = classify(&divext(d), &opts).unwrap();
        assert_eq!(
            rep.verdict(props::PHI_PRUFER),
            Verdict::from_bool(expected),
            "{d}"
        );
        assert_eq!(
            rep.routes[routes::DISTRIBUTIVE].verdict,
            rep.routes[routes::QUOTIENT_PRUFER].verdict,
            "{d}"
        );
        assert_eq!(rep.verdict(props::STRONGLY_PHI), Verdict::False);
        all_routes_agree(&rep, expected);
    }
    let zi2 = classify(&divext(DomainHandle::quad(-1, 2).unwrap()), &opts).unwrap();
    let w = zi2.routes[routes::DISTRIBUTIVE].witness.clone().unwrap();
    assert!(w.starts_with("I = "), "{w}");
}

#[test]
fn divided_properties() {
    let opts = ClassifyOptions::default();
    let z = classify(&divext(DomainHandle::Int), &opts).unwrap();
    assert_eq!(z.verdict(props::PHI_CHAINED), Verdict::False);
    assert_eq!(z.verdict(props::PHI_BEZOUT), Verdict::True);
    assert_eq!(z.verdict(props::SEMILOCAL), Verdict::False);
    assert_eq!(z.verdict(props::PRUFER), Verdict::True);
    assert_eq!(z.verdict(props::WGLDIM_LE_1), Verdict::False);
    let w = z.properties[props::STRONGLY_PHI].witness.clone().unwrap();
    assert!(w.starts_with("(2, 0)·(0, 1/2) = (0, 0)"), "{w}");
    let loc = classify(&divext(DomainHandle::int_loc(2).unwrap()), &opts).unwrap();
    assert_eq!(loc.verdict(props::PHI_CHAINED), Verdict::True);
    assert_eq!(loc.verdict(props::SEMILOCAL), Verdict::True);
}

#[test]
fn mutant_is_caught() {
    let opts = ClassifyOptions {
        mutant: Some(Mutant::WeakDistributivity),
        ..ClassifyOptions::default()
    };
    let err = classify(&divext(DomainHandle::Int), &opts).unwrap_err();
    assert!(matches!(err, Error::InternalInconsistency(_)), "{err}");
}

#[test]
fn t2_factorization() {
    let r = make_divided_ext(DomainHandle::Int, ModuleTag::FractionsModD);
    let i = crate::dividedext::NonnilIdealRep::new(&r, DomainHandle::Int.int_ideal(4).unwrap())
        .unwrap();
    let j = crate::dividedext::NonnilIdealRep::new(&r, DomainHandle::Int.int_ideal(2).unwrap())
        .unwrap();
    let v = check_t2_divided(&i, &j).unwrap();
    assert!(v.holds);
    assert_eq!(v.k, "2Z⋉M");
    assert_eq!(check_t2_divided(&j, &j).unwrap().k, "Z⋉M");
    assert_eq!(check_t2_divided(&j, &i), Err(Error::NotContained));
    assert!(search_t2_failure(&r, 30).unwrap().is_none());

    let zi2 = make_divided_ext(DomainHandle::quad(-1, 2).unwrap(), ModuleTag::FractionsModD);
    let bad = search_t2_failure(&zi2, 64)
        .unwrap()
        .expect("a failing pair");
    assert!(!bad.holds);
    assert_ne!(bad.product, bad.i);

    let f = make_zn(8).unwrap();
    let whole = span(&f, &[1]);
    assert!(check_t2_finite(&whole, &whole).unwrap().holds);
    let two = span(&f, &[2]);
    assert!(matches!(
        check_t2_finite(&two, &whole),
        Err(Error::NotNonnil(_))
    ));
}

#[test]
fn primary_irreducible() {
    let rep = check_primary_irreducible(&divext(DomainHandle::Int), 200).unwrap();
    assert!(rep.holds(), "{:?}", rep.violations);
    let e12 = &rep.entries[10];
    assert_eq!(e12.n, 12);
    assert!(!e12.primary && !e12.irreducible);
    assert!(e12
        .primary_witness
        .as_ref()
        .unwrap()
        .starts_with("(3, 0)·(4, 0)"));
    assert_eq!(
        e12.irreducible_witness.as_deref(),
        Some("12Z⋉M = (3Z⋉M) ∩ (4Z⋉M)")
    );
    let e8 = &rep.entries[6];
    assert!(e8.n == 8 && e8.primary && e8.irreducible);
    assert!(
        check_primary_irreducible(&fin(make_zn(8).unwrap()), 10)
            .unwrap()
            .vacuous
    );
    assert!(matches!(
        check_primary_irreducible(&divext(DomainHandle::int_loc(2).unwrap()), 10),
        Err(Error::UnsupportedFamily(_))
    ));
}

#[test]
fn semilocal_bezout() {
    let opts = ClassifyOptions::default();
    let loc = check_t11_bezout(&divext(DomainHandle::int_loc(2).unwrap()), &opts).unwrap();
    assert!(loc.applicable && loc.holds);
    assert_eq!(loc.checked, 21 * 21);
    let z = check_t11_bezout(&divext(DomainHandle::Int), &opts).unwrap();
    assert!(!z.applicable && !z.semilocal);
    assert_eq!(z.phi_bezout, Verdict::True);
    let f = check_t11_bezout(&fin(make_zn(8).unwrap()), &opts).unwrap();
    assert!(f.applicable && f.holds && f.checked > 0);
    assert!(matches!(
        check_t11_bezout(&fin(make_zn(6).unwrap()), &opts),
        Err(Error::NotPhiRing(_))
    ));
}

#[test]
fn report_serializes_with_sorted_keys() {
    let rep = classify(&fin(make_zn(4).unwrap()), &ClassifyOptions::default()).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    let keys: Vec<&String> = v["properties"].as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(v["properties"]["phi_ring"]["verdict"], "true");
}
