use philab_core::finring::{make_zn, FiniteRing};
use philab_core::idealcalc::{product, FiniteIdeal};
use philab_core::phiclass::RingRef;
use philab_core::polycontent::{content, poly_mul, PolyOverRing};
use philab_core::theoremlab::parse_ring;
use proptest::prelude::*;

const SPECS: &[&str] = &[
    "Zn:12",
    "Zn:8",
    "trunc:2:2,2",
    "prod:Zn:4|Zn:2",
    "triv:Zn:4|Zn:2",
    "trunc:3:2",
];

fn ring(ix: usize) -> FiniteRing {
    match parse_ring(SPECS[ix % SPECS.len()]).unwrap() {
        RingRef::Finite(r) => r,
        RingRef::Divided(_) => unreachable!(),
    }
}

fn poly(r: &FiniteRing, raw: &[usize]) -> PolyOverRing {
    PolyOverRing::new(r, raw.iter().map(|x| x % r.order()).collect())
}

fn power(i: &FiniteIdeal, k: usize) -> FiniteIdeal {
    (0..k).fold(FiniteIdeal::unit(i.ring()), |acc, _| {
        product(&acc, i).unwrap()
    })
}

fn coeffs() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..1000, 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn content_is_submultiplicative(ix in 0usize..60, a in coeffs(), b in coeffs()) {
        let r = ring(ix);
        let (f, g) = (poly(&r, &a), poly(&r, &b));
        let cfg = content(&poly_mul(&f, &g).unwrap());
        let prod = product(&content(&f), &content(&g)).unwrap();
        prop_assert!(cfg.is_subset(&prod));
    }

    /// c(f)^m·c(f)c(g) = c(f)^m·c(fg) with m = deg g.
    #[test]
    fn dedekind_mertens_holds(ix in 0usize..60, a in coeffs(), b in coeffs()) {
        let r = ring(ix);
        let (f, g) = (poly(&r, &a), poly(&r, &b));
        let m = g.degree().unwrap_or(0);
        let cf = content(&f);
        let lhs = product(&power(&cf, m), &product(&cf, &content(&g)).unwrap()).unwrap();
        let rhs = product(&power(&cf, m), &content(&poly_mul(&f, &g).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_coefficients_are_convolutions(n in 2u64..40, a in coeffs(), b in coeffs()) {
        let r = make_zn(n).unwrap();
        let (f, g) = (poly(&r, &a), poly(&r, &b));
        let h = poly_mul(&f, &g).unwrap();
        let (fa, gb): (Vec<u64>, Vec<u64>) = (
            f.coeffs().iter().map(|&x| x as u64).collect(),
            g.coeffs().iter().map(|&x| x as u64).collect(),
        );
        let mut conv = vec![0u64; (fa.len() + gb.len()).max(1)];
        for (i, x) in fa.iter().enumerate() {
            for (j, y) in gb.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x * y) % n;
            }
        }
        for (k, &c) in conv.iter().enumerate() {
            prop_assert_eq!(h.coeffs().get(k).map_or(0, |&x| x as u64), c);
        }
    }

    /// ℤ/p^k is chained, so every polynomial is Gaussian.
    #[test]
    fn chained_cyclic_rings_are_gaussian(pk in prop::sample::select(vec![4u64, 8, 9, 16, 25, 27, 32]), a in coeffs(), b in coeffs()) {
        let r = make_zn(pk).unwrap();
        let (f, g) = (poly(&r, &a), poly(&r, &b));
        let cfg = content(&poly_mul(&f, &g).unwrap());
        prop_assert_eq!(cfg, product(&content(&f), &content(&g)).unwrap());
    }
}
