use std::collections::BTreeMap;

use super::calculus;
use super::{
    bounded, finite_phi_check, props, routes, sampled, ClassificationReport, ClassifyOptions,
    Entry, Mutant, BY_QUOTIENT, EXHAUSTIVE,
};
use crate::error::Result;
use crate::finring::{phi_image, quotient, FiniteRing};
use crate::idealcalc::{
    enumerate_ideals, is_maximal, is_prime, localize_at, principal_generator, Decision,
    FiniteIdeal, IdealLattice, DEFAULT_IDEAL_BUDGET,
};
use crate::polycontent::{
    content, nonnil_polys_gaussian, poly_mul, ring_gaussian_checks, GaussOptions, GaussVerdict,
    SweepMethod,
};

fn entry_or_inconclusive(r: Result<Entry>) -> Entry {
    r.unwrap_or_else(|e| Entry::inconclusive(&e))
}

fn is_field(r: &FiniteRing) -> Decision {
    match r.elements().find(|&x| x != r.zero() && !r.is_unit(x)) {
        Some(x) => Decision::no(format!("{} is a nonzero non-unit", r.name(x))),
        None => Decision::yes(),
    }
}

fn reduced_quotient(r: &FiniteRing) -> Result<FiniteRing> {
    Ok(quotient(r, &r.nilpotent_set())?.0)
}

/// Pairwise divisibility among nonzero elements (chained test).
fn chained(r: &FiniteRing, skip: impl Fn(usize) -> bool) -> Decision {
    let divides = |a: usize, b: usize| r.elements().any(|s| r.mul(a, s) == b);
    for a in r.elements().filter(|&a| !skip(a)) {
        for b in r.elements().filter(|&b| b > a && !skip(b)) {
            if !divides(a, b) && !divides(b, a) {
                return Decision::no(format!(
                    "{} ∤ {} and {} ∤ {}",
                    r.name(a),
                    r.name(b),
                    r.name(b),
                    r.name(a)
                ));
            }
        }
    }
    Decision::yes()
}

fn valuation_quotient(r: &FiniteRing) -> Result<Decision> {
    let q = reduced_quotient(r)?;
    let zero = q.zero();
    Ok(chained(&q, |a| a == zero))
}

fn localization_route(ideals: &[FiniteIdeal], maximal_only: bool) -> Result<Entry> {
    let mut count = 0;
    for p in ideals {
        let keep = if maximal_only {
            is_maximal(p).holds
        } else {
            is_prime(p).holds
        };
        if !keep {
            continue;
        }
        count += 1;
        let loc = localize_at(p)?;
        let d = valuation_quotient(&loc.ring)?;
        if !d.holds {
            return Ok(Entry::decided(false, EXHAUSTIVE)
                .with_witness(format!("at P = {p}: {}", d.witness.unwrap_or_default())));
        }
    }
    Ok(Entry::decided(true, EXHAUSTIVE).with_basis(format!("{count} localizations checked")))
}

fn locally_principal(lat: &IdealLattice, ideals: &[FiniteIdeal]) -> Result<Entry> {
    let nonnil = lat.nonnil_ids();
    for m in ideals.iter().filter(|m| is_maximal(m).holds) {
        let loc = localize_at(m)?;
        for &id in &nonnil {
            let img = loc.image(&lat.ideal(id));
            if principal_generator(&img).is_none() {
                return Ok(Entry::decided(false, EXHAUSTIVE)
                    .with_witness(format!("{} is not principal at M = {m}", lat.describe(id))));
            }
        }
    }
    Ok(Entry::decided(true, EXHAUSTIVE))
}

/// Every regular element is a unit, so every regular ideal is R.
fn regular_scan(r: &FiniteRing) -> Decision {
    match r
        .elements()
        .find(|&x| !r.is_zerodivisor(x) && !r.is_unit(x))
    {
        Some(x) => Decision::no(format!("{} is regular but not a unit", r.name(x))),
        None => Decision::yes_because("every regular element is a unit, so T(R) = R"),
    }
}

fn gauss_opts(opts: &ClassifyOptions) -> GaussOptions {
    GaussOptions {
        deg_bound: opts.deg_bound,
        pair_budget: opts.pair_budget,
        samples: opts.gauss_samples,
        seed: opts.seed,
    }
}

pub(super) fn gauss_witness(v: &GaussVerdict) -> Option<String> {
    let (f, g) = v.witness.as_ref()?;
    let fg = poly_mul(f, g).ok()?;
    let cf = content(f);
    let cg = content(g);
    let prod = crate::idealcalc::product(&cf, &cg).ok()?;
    Some(format!(
        "f = {f} {}, g = {g} {}: fg = {fg}, c(fg) = {} but c(f)c(g) = {prod}",
        f.coefficient_list(),
        g.coefficient_list(),
        content(&fg)
    ))
}

pub(super) fn gauss_entry(v: &GaussVerdict) -> Entry {
    let e = match v.method {
        SweepMethod::Exhaustive => Entry::decided(v.holds, bounded(format!("deg={}", v.deg_bound)))
            .with_basis(format!("{} pairs, full sweep", v.pairs)),
        SweepMethod::Sampled {
            seed,
            samples,
            full_bound,
        } => Entry::decided(v.holds, sampled(seed, samples)).with_basis(format!(
            "deg={}, full sweep at deg={full_bound}",
            v.deg_bound
        )),
    };
    e.with_witness_opt(gauss_witness(v))
}

pub(super) fn routes(r: &FiniteRing, opts: &ClassifyOptions) -> BTreeMap<String, Entry> {
    let mut out = BTreeMap::new();
    let q = reduced_quotient(r).map(|q| is_field(&q));
    out.insert(
        routes::QUOTIENT_PRUFER.to_string(),
        entry_or_inconclusive(q.map(|d| {
            Entry::from_decision(&d, BY_QUOTIENT)
                .with_basis("a finite domain is a field, hence Prufer")
        })),
    );
    let phi = phi_image(r);
    out.insert(
        routes::PHI_IMAGE_PRUFER.to_string(),
        entry_or_inconclusive(
            phi.as_ref()
                .map(|(p, _, _)| Entry::from_decision(&regular_scan(p), EXHAUSTIVE))
                .map_err(Clone::clone),
        ),
    );
    out.insert(
        routes::PHI_IMAGE_QUOTIENT.to_string(),
        entry_or_inconclusive(phi.as_ref().map_err(Clone::clone).and_then(|(p, _, _)| {
            let q = reduced_quotient(p)?;
            Ok(Entry::from_decision(&is_field(&q), BY_QUOTIENT))
        })),
    );

    let ideals = enumerate_ideals(r, DEFAULT_IDEAL_BUDGET);
    let lat = IdealLattice::new(r, DEFAULT_IDEAL_BUDGET);
    let (ideals, mut lat) = match (ideals, lat) {
        (Ok(i), Ok(l)) => (i, l),
        (Err(e), _) | (_, Err(e)) => {
            for k in [
                routes::LOCAL_PRIMES,
                routes::LOCAL_MAXIMALS,
                routes::DISTRIBUTIVE,
                routes::FACTORIZATION,
                routes::RESIDUAL_SUM,
                routes::RESIDUAL_MEET,
                routes::PRODUCT_MEET,
                routes::LOCALLY_PRINCIPAL,
            ] {
                out.insert(k.to_string(), Entry::inconclusive(&e));
            }
            return gauss_routes(r, opts, out);
        }
    };
    out.insert(
        routes::LOCAL_PRIMES.to_string(),
        entry_or_inconclusive(localization_route(&ideals, false)),
    );
    out.insert(
        routes::LOCAL_MAXIMALS.to_string(),
        entry_or_inconclusive(localization_route(&ideals, true)),
    );

    let nonnil = lat.nonnil_ids();
    let all: Vec<u32> = (0..lat.len() as u32).collect();
    let weakened = opts.mutant == Some(Mutant::WeakDistributivity);
    let sweeps: [(&str, Result<Decision>); 5] = [
        (
            routes::DISTRIBUTIVE,
            calculus::distributive(&mut lat, &nonnil, weakened),
        ),
        (
            routes::FACTORIZATION,
            calculus::factorization(&mut lat, &nonnil),
        ),
        (
            routes::RESIDUAL_SUM,
            calculus::residual_of_sum(&mut lat, &nonnil, &all),
        ),
        (
            routes::RESIDUAL_MEET,
            calculus::residual_by_intersection(&mut lat, &nonnil, &all),
        ),
        (
            routes::PRODUCT_MEET,
            calculus::product_over_intersection(&mut lat, &nonnil),
        ),
    ];
    for (k, d) in sweeps {
        out.insert(
            k.to_string(),
            entry_or_inconclusive(d.map(|d| Entry::from_decision(&d, EXHAUSTIVE))),
        );
    }
    out.insert(
        routes::LOCALLY_PRINCIPAL.to_string(),
        entry_or_inconclusive(locally_principal(&lat, &ideals)),
    );
    gauss_routes(r, opts, out)
}

fn gauss_routes(
    r: &FiniteRing,
    opts: &ClassifyOptions,
    mut out: BTreeMap<String, Entry>,
) -> BTreeMap<String, Entry> {
    let g = gauss_opts(opts);
    out.insert(
        routes::GAUSSIAN_F.to_string(),
        entry_or_inconclusive(nonnil_polys_gaussian(r, &g).map(|v| gauss_entry(&v))),
    );
    out.insert(
        routes::CONTENT_PAIRS.to_string(),
        entry_or_inconclusive(
            ring_gaussian_checks(r, &g).map(|v| gauss_entry(&v.gaussian_nonnil_f)),
        ),
    );
    out
}

fn not_phi(witness: &str) -> Entry {
    Entry::decided(false, EXHAUSTIVE).with_witness(format!("not a phi-ring: {witness}"))
}

pub(super) fn classify(r: &FiniteRing, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let mut p = BTreeMap::new();
    let mut notes = Vec::new();
    let phi = finite_phi_check(r)?;
    p.insert(
        props::PHI_RING.to_string(),
        Entry::decided(phi.is_phi, EXHAUSTIVE).with_witness(phi.witness.clone()),
    );

    let nil = r.nilpotent_set();
    let ideals = enumerate_ideals(r, DEFAULT_IDEAL_BUDGET);

    if phi.is_phi {
        let strong = match r
            .elements()
            .find(|&x| r.is_zerodivisor(x) && !nil.contains(x))
        {
            Some(x) => Entry::decided(false, EXHAUSTIVE)
                .with_witness(format!("{} is a non-nilpotent zerodivisor", r.name(x))),
            None => Entry::decided(true, EXHAUSTIVE),
        };
        p.insert(props::STRONGLY_PHI.to_string(), strong);
        p.insert(
            props::PHI_CHAINED.to_string(),
            Entry::from_decision(&chained(r, |a| nil.contains(a)), EXHAUSTIVE),
        );
        let vnr = match r.elements().find(|&x| !nil.contains(x) && !r.is_unit(x)) {
            Some(x) => Entry::decided(false, EXHAUSTIVE)
                .with_witness(format!("{} is neither nilpotent nor a unit", r.name(x))),
            None => Entry::decided(true, EXHAUSTIVE),
        };
        p.insert(props::PHI_VNR.to_string(), vnr);
        let bezout = reduced_quotient(r).and_then(|q| {
            let qi = enumerate_ideals(&q, DEFAULT_IDEAL_BUDGET)?;
            Ok(match qi.iter().find(|i| principal_generator(i).is_none()) {
                Some(i) => Entry::decided(false, BY_QUOTIENT)
                    .with_witness(format!("{i} is not principal in R/Nil(R)")),
                None => Entry::decided(true, BY_QUOTIENT),
            })
        });
        p.insert(props::PHI_BEZOUT.to_string(), entry_or_inconclusive(bezout));
    } else {
        for k in [
            props::STRONGLY_PHI,
            props::PHI_CHAINED,
            props::PHI_VNR,
            props::PHI_BEZOUT,
        ] {
            p.insert(k.to_string(), not_phi(&phi.witness));
        }
    }

    let g = ring_gaussian_checks(r, &gauss_opts(opts));
    match g {
        Ok(g) => {
            p.insert(
                props::GAUSSIAN_ALL.to_string(),
                gauss_entry(&g.gaussian_all_f),
            );
            p.insert(
                props::GAUSSIAN_NONNIL.to_string(),
                gauss_entry(&g.gaussian_nonnil_f),
            );
        }
        Err(e) => {
            p.insert(props::GAUSSIAN_ALL.to_string(), Entry::inconclusive(&e));
            p.insert(props::GAUSSIAN_NONNIL.to_string(), Entry::inconclusive(&e));
        }
    }

    let arith = IdealLattice::new(r, DEFAULT_IDEAL_BUDGET).and_then(|mut lat| {
        let all: Vec<u32> = (0..lat.len() as u32).collect();
        calculus::distributive(&mut lat, &all, false)
    });
    p.insert(
        props::ARITHMETICAL.to_string(),
        entry_or_inconclusive(arith.map(|d| Entry::from_decision(&d, EXHAUSTIVE))),
    );
    p.insert(
        props::PRUFER.to_string(),
        Entry::from_decision(&regular_scan(r), EXHAUSTIVE),
    );
    let semilocal = ideals.as_ref().map_err(Clone::clone).map(|is| {
        let n = is.iter().filter(|i| is_maximal(i).holds).count();
        Entry::decided(true, EXHAUSTIVE).with_witness(format!("{n} maximal ideals"))
    });
    p.insert(
        props::SEMILOCAL.to_string(),
        entry_or_inconclusive(semilocal),
    );

    let route_map = if phi.is_phi {
        let rm = routes(r, opts);
        if let Ok(lat) = IdealLattice::new(r, DEFAULT_IDEAL_BUDGET) {
            if lat.nonnil_ids().len() == 1 {
                notes.push(
                    "the only nonnil ideal is R, so the ideal-calculus routes hold degenerately"
                        .to_string(),
                );
            }
        }
        rm
    } else {
        BTreeMap::new()
    };

    Ok(ClassificationReport {
        label: r.label().to_string(),
        family: "finite".to_string(),
        properties: p,
        routes: route_map,
        notes,
    })
}
