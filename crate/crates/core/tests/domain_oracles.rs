use num_integer::Integer;
use philab_core::dividedext::{make_divided_ext, nonnil_span, ModuleTag};
use philab_core::domainkit::quad::{class_number, ideals_up_to_norm, Hnf, QuadOrder};
use philab_core::domainkit::{self, DomainHandle, KElem};
use proptest::prelude::*;

/// Counts reduced primitive positive definite forms ax² + bxy + cy².
fn forms_class_number(disc: i128) -> usize {
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

fn squarefree(d: i64) -> bool {
    (2..=d.unsigned_abs())
        .take_while(|p| p * p <= d.unsigned_abs())
        .all(|p| !d.unsigned_abs().is_multiple_of(p * p))
}

#[test]
fn imaginary_class_numbers_match_reduced_forms() {
    for d in (-100..=-1).filter(|&d| squarefree(d)) {
        let o = QuadOrder::new(d, 1).unwrap();
        assert_eq!(
            class_number(&o).unwrap(),
            forms_class_number(o.discriminant()),
            "d = {d}"
        );
    }
}

#[test]
fn heegner_fields_have_class_number_one() {
    let heegner = [-1, -2, -3, -7, -11, -19, -43, -67];
    for d in (-100..=-1).filter(|&d| squarefree(d)) {
        let o = QuadOrder::new(d, 1).unwrap();
        assert_eq!(
            class_number(&o).unwrap() == 1,
            heegner.contains(&d),
            "d = {d}"
        );
    }
}

fn int(g: u128) -> domainkit::DomIdeal {
    DomainHandle::Int.int_ideal(g).unwrap()
}

fn gen_of(i: &domainkit::DomIdeal) -> u128 {
    match i.data {
        domainkit::IdealData::Int(g) => g,
        _ => unreachable!(),
    }
}

fn lattice() -> impl Strategy<Value = Hnf> {
    (1i128..12, 1i128..12).prop_flat_map(|(a, c)| (0..a).prop_map(move |b| Hnf { a, b, c }))
}

proptest! {
    #[test]
    fn integer_ideal_ops_match_gcd_and_lcm(a in 1u128..2000, b in 1u128..2000) {
        let (i, j) = (int(a), int(b));
        prop_assert_eq!(gen_of(&domainkit::sum(&i, &j).unwrap()), a.gcd(&b));
        prop_assert_eq!(gen_of(&domainkit::intersection(&i, &j).unwrap()), a.lcm(&b));
        prop_assert_eq!(gen_of(&domainkit::product(&i, &j).unwrap()), a * b);
        // smallest k ≥ 1 with a | kb
        let k = (1..=a).find(|k| (k * b) % a == 0).unwrap();
        prop_assert_eq!(gen_of(&domainkit::residual(&i, &j).unwrap()), k);
    }

    #[test]
    fn local_ideal_ops_track_valuations(a in 0u32..30, b in 0u32..30) {
        let d = DomainHandle::int_loc(3).unwrap();
        let (i, j) = (d.loc_ideal(a).unwrap(), d.loc_ideal(b).unwrap());
        prop_assert_eq!(domainkit::sum(&i, &j).unwrap(), d.loc_ideal(a.min(b)).unwrap());
        prop_assert_eq!(domainkit::intersection(&i, &j).unwrap(), d.loc_ideal(a.max(b)).unwrap());
        prop_assert_eq!(domainkit::product(&i, &j).unwrap(), d.loc_ideal(a + b).unwrap());
        prop_assert_eq!(domainkit::residual(&i, &j).unwrap(), d.loc_ideal(a.saturating_sub(b)).unwrap());
    }

    #[test]
    fn hnf_sum_and_meet_agree_with_membership(l in lattice(), m in lattice()) {
        let s = l.sum(&m);
        let i = l.intersection(&m);
        prop_assert_eq!(i.det() * s.det(), l.det() * m.det());
        for x in -15i128..=15 {
            for y in -15i128..=15 {
                prop_assert_eq!(i.contains((x, y)), l.contains((x, y)) && m.contains((x, y)));
                if l.contains((x, y)) || m.contains((x, y)) {
                    prop_assert!(s.contains((x, y)));
                }
            }
        }
    }

    #[test]
    fn hnf_is_canonical(vs in prop::collection::vec((-20i128..20, -20i128..20), 2..5)) {
        if let Some(h) = Hnf::from_vectors(&vs) {
            prop_assert!(h.a > 0 && h.c > 0 && (0..h.a).contains(&h.b));
            for v in &vs {
                prop_assert!(h.contains(*v));
            }
            prop_assert_eq!(Hnf::from_vectors(&h.basis()), Some(h));
        }
    }

    #[test]
    fn norms_multiply_in_maximal_orders(d in prop::sample::select(vec![-5i64, -6, -14, -23, 10, 15, 6]), ix in 0usize..400, jx in 0usize..400) {
        let o = QuadOrder::new(d, 1).unwrap();
        let ids = ideals_up_to_norm(&o, 20);
        let (i, j) = (ids[ix % ids.len()], ids[jx % ids.len()]);
        prop_assert_eq!(i.product(&j, &o).norm_num(), i.norm_num() * j.norm_num());
    }

    #[test]
    fn nonnil_span_is_pullback_of_gcd(gens in prop::collection::vec((1i128..500, -9i128..9, 1i128..9), 1..4), probe in -3000i128..3000) {
        let r = make_divided_ext(DomainHandle::Int, ModuleTag::FractionsModD);
        let xs: Vec<_> = gens.iter().map(|&(a, n, d)| r.el(a, n, d)).collect();
        let span = nonnil_span(&r, &xs).unwrap();
        let g = gens.iter().fold(0i128, |g, &(a, _, _)| g.gcd(&a));
        for x in &xs {
            prop_assert!(span.contains(x));
        }
        prop_assert_eq!(span.contains(&r.el(probe, 1, 7)), probe % g == 0);
        prop_assert_eq!(span.j.contains(&KElem::int(probe)), probe % g == 0);
    }
}
