use std::collections::{BTreeMap, HashMap};

use super::calculus::{self, IdealCalculus};
use super::{
    bounded, props, routes, sampled, ClassificationReport, ClassifyOptions, Entry, Mutant,
    PhiVerdict, Verdict, BY_QUOTIENT, DERIVED,
};
use crate::dividedext::{
    bounded_nonnil_ideals, divided_check, nonnil_intersection, nonnil_product, nonnil_residual,
    nonnil_sum, sampled_divisibility, DividedExtRing, DxElem, ModuleTag, NonnilIdealRep,
};
use crate::domainkit::{
    self, is_prufer_domain, is_valuation_domain, traits, DomainHandle, IdealData, KElem,
};
use crate::error::{Error, Result};
use crate::finring::is_prime;

/// Interning table of nonnil ideals J ⋉ M with memoized operations.
#[derive(Debug, Clone)]
pub struct DomLattice {
    ideals: Vec<NonnilIdealRep>,
    index: HashMap<NonnilIdealRep, u32>,
    memo: HashMap<(u8, u32, u32), u32>,
}

impl DomLattice {
    pub fn new(seed: &[NonnilIdealRep]) -> Self {
        let mut lat = DomLattice {
            ideals: Vec::new(),
            index: HashMap::new(),
            memo: HashMap::new(),
        };
        for rep in seed {
            lat.intern(*rep);
        }
        lat
    }

    /// Bounded nonnil ideals in the order produced by `bounded_nonnil_ideals`.
    pub fn bounded(r: &DividedExtRing, bound: u64) -> Result<(Self, Vec<u32>)> {
        let seed = bounded_nonnil_ideals(r, bound)?;
        let lat = Self::new(&seed);
        let ids = seed.iter().map(|s| lat.index[s]).collect();
        Ok((lat, ids))
    }

    pub fn intern(&mut self, rep: NonnilIdealRep) -> u32 {
        if let Some(&id) = self.index.get(&rep) {
            return id;
        }
        let id = self.ideals.len() as u32;
        self.ideals.push(rep);
        self.index.insert(rep, id);
        id
    }

    pub fn rep(&self, id: u32) -> &NonnilIdealRep {
        &self.ideals[id as usize]
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    fn op(
        &mut self,
        tag: u8,
        a: u32,
        b: u32,
        f: fn(&NonnilIdealRep, &NonnilIdealRep) -> Result<NonnilIdealRep>,
    ) -> Result<u32> {
        if let Some(&id) = self.memo.get(&(tag, a, b)) {
            return Ok(id);
        }
        let rep = f(&self.ideals[a as usize], &self.ideals[b as usize])?;
        let id = self.intern(rep);
        self.memo.insert((tag, a, b), id);
        Ok(id)
    }
}

impl IdealCalculus for DomLattice {
    fn sum(&mut self, a: u32, b: u32) -> Result<u32> {
        self.op(0, a, b, nonnil_sum)
    }

    fn meet(&mut self, a: u32, b: u32) -> Result<u32> {
        self.op(1, a, b, nonnil_intersection)
    }

    fn product(&mut self, a: u32, b: u32) -> Result<u32> {
        self.op(2, a, b, nonnil_product)
    }

    fn residual(&mut self, a: u32, b: u32) -> Result<u32> {
        self.op(3, a, b, nonnil_residual)
    }

    fn contains(&self, big: u32, small: u32) -> Result<bool> {
        self.ideals[small as usize].is_subset(&self.ideals[big as usize])
    }

    fn describe(&self, id: u32) -> String {
        self.ideals[id as usize].to_string()
    }
}

/// Generator bound for ℤ and ℤ_(p) backends, norm bound for quadratic ones.
pub fn sweep_bound(r: &DividedExtRing, opts: &ClassifyOptions) -> (u64, String) {
    match r.base {
        DomainHandle::Quad(_) => (opts.norm_bound, format!("norm<={}", opts.norm_bound)),
        _ => (opts.gen_bound, format!("gen<={}", opts.gen_bound)),
    }
}

pub(super) fn phi_verdict(r: &DividedExtRing, opts: &ClassifyOptions) -> PhiVerdict {
    let v = divided_check(r, opts.sample_budget, opts.seed);
    PhiVerdict {
        holds: v.holds,
        method: sampled(opts.seed, v.sampled),
        witness: match v.witness {
            Some(w) => format!("Nil(R) = 0⋉M is not divided: {w}"),
            None => "Nil(R) = 0⋉M is prime (R/Nil(R) ≅ D) and divided".to_string(),
        },
    }
}

/// A non-nilpotent non-unit: 2, or p in ℤ_(p).
fn nonunit(r: &DividedExtRing) -> DxElem {
    let a = match r.base {
        DomainHandle::IntLoc(p) => p as i128,
        _ => 2,
    };
    DxElem {
        a: KElem::int(a),
        m: KElem::zero(),
    }
}

fn valuation_exponent(mut n: u128, p: u128) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn int_generator(j: &domainkit::DomIdeal) -> Result<u128> {
    match j.data {
        IdealData::Int(g) => Ok(g),
        _ => Err(Error::InternalInconsistency(format!(
            "{j} is not an integer ideal"
        ))),
    }
}

fn locally_principal(r: &DividedExtRing, opts: &ClassifyOptions) -> Result<Entry> {
    let d = r.base;
    match d {
        DomainHandle::Int => {
            let b = opts.gen_bound as u128;
            let primes: Vec<u128> = (2..=b).filter(|&p| is_prime(p as u64)).collect();
            for x in 1..=b {
                for y in x..=b {
                    let j = domainkit::sum(&d.int_ideal(x)?, &d.int_ideal(y)?)?;
                    let g = int_generator(&j)?;
                    for &p in &primes {
                        let v = valuation_exponent(x, p).min(valuation_exponent(y, p));
                        if valuation_exponent(g, p) != v {
                            return Ok(Entry::decided(false, bounded(format!("gen<={b}")))
                                .with_witness(format!(
                                    "({x}, {y})⋉M localized at {p}: generator {g} has the wrong valuation"
                                )));
                        }
                    }
                }
            }
            Ok(Entry::decided(true, bounded(format!("gen<={b}")))
                .with_basis("(x, y) is generated locally by the element of least valuation"))
        }
        DomainHandle::IntLoc(p) => {
            let e = opts.exp_bound;
            for a in 0..=e {
                for b in a..=e {
                    let j = domainkit::sum(&d.loc_ideal(a)?, &d.loc_ideal(b)?)?;
                    if j != d.loc_ideal(a.min(b))? {
                        return Ok(Entry::decided(false, bounded(format!("exp<={e}")))
                            .with_witness(format!("({p}^{a}, {p}^{b}) = {j}")));
                    }
                }
            }
            Ok(Entry::decided(true, bounded(format!("exp<={e}")))
                .with_basis("(p^a, p^b) = p^min(a,b) in the local ring"))
        }
        DomainHandle::Quad(_) => Ok(Entry::skipped(
            "local principality is governed by the quotient-domain route for quadratic backends",
        )),
    }
}

pub(super) fn routes(r: &DividedExtRing, opts: &ClassifyOptions) -> BTreeMap<String, Entry> {
    let mut out = BTreeMap::new();
    let q = match is_prufer_domain(&r.base) {
        Ok(v) => Entry::decided(v.holds, BY_QUOTIENT)
            .with_witness_opt(
                v.non_invertible
                    .map(|j| format!("{j} is not invertible in {}", r.base)),
            )
            .with_basis(format!("R/Nil(R) ≅ {}: {}", r.base, v.reason)),
        Err(e) => Entry::inconclusive(&e),
    };
    for k in [routes::PHI_IMAGE_PRUFER, routes::PHI_IMAGE_QUOTIENT] {
        out.insert(
            k.to_string(),
            Entry::new(q.verdict, DERIVED)
                .with_basis("phi-level conditions reduce to R/Nil(R) for this family"),
        );
    }
    out.insert(routes::QUOTIENT_PRUFER.to_string(), q);
    for k in [routes::LOCAL_PRIMES, routes::LOCAL_MAXIMALS] {
        out.insert(
            k.to_string(),
            Entry::skipped("localizations are computed for finite rings only"),
        );
    }
    for k in [routes::GAUSSIAN_F, routes::CONTENT_PAIRS] {
        out.insert(
            k.to_string(),
            Entry::skipped("polynomial sweeps are run on finite rings only"),
        );
    }

    let (bound, label) = sweep_bound(r, opts);
    let weakened = opts.mutant == Some(Mutant::WeakDistributivity);
    let keys = [
        routes::DISTRIBUTIVE,
        routes::FACTORIZATION,
        routes::RESIDUAL_SUM,
        routes::RESIDUAL_MEET,
        routes::PRODUCT_MEET,
    ];
    match DomLattice::bounded(r, bound) {
        Ok((mut lat, ids)) => {
            let results: [Result<_>; 5] = [
                calculus::distributive(&mut lat, &ids, weakened),
                calculus::factorization(&mut lat, &ids),
                calculus::residual_of_sum(&mut lat, &ids, &ids),
                calculus::residual_by_intersection(&mut lat, &ids, &ids),
                calculus::product_over_intersection(&mut lat, &ids),
            ];
            for (k, d) in keys.into_iter().zip(results) {
                let e = match d {
                    Ok(d) => Entry::from_decision(&d, &bounded(&label))
                        .with_basis(format!("{} nonnil ideals J⋉M", ids.len())),
                    Err(e) => Entry::inconclusive(&e),
                };
                out.insert(k.to_string(), e);
            }
        }
        Err(e) => {
            for k in keys {
                out.insert(k.to_string(), Entry::inconclusive(&e));
            }
        }
    }
    out.insert(
        routes::LOCALLY_PRINCIPAL.to_string(),
        locally_principal(r, opts).unwrap_or_else(|e| Entry::inconclusive(&e)),
    );
    out
}

pub(super) fn classify(r: &DividedExtRing, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let mut p = BTreeMap::new();
    let mut notes = Vec::new();
    let phi = phi_verdict(r, opts);
    p.insert(
        props::PHI_RING.to_string(),
        Entry::decided(phi.holds, phi.method.clone()).with_witness(phi.witness.clone()),
    );
    let base_traits = traits(&r.base);

    if phi.holds {
        let x = nonunit(r);
        let strong = match r.zerodivisor_witness(&x) {
            Some(y) => Entry::decided(false, BY_QUOTIENT).with_witness(format!(
                "{}·{} = {} with {} not nilpotent",
                r.fmt(&x),
                r.fmt(&y),
                r.fmt(&r.mul(&x, &y)),
                r.fmt(&x)
            )),
            None => Entry::new(Verdict::Inconclusive, "none")
                .with_witness(format!("no annihilator found for {}", r.fmt(&x))),
        };
        p.insert(props::STRONGLY_PHI.to_string(), strong);

        let chained = match is_valuation_domain(&r.base) {
            Ok(d) => {
                let probe = sampled_divisibility(r, opts.sample_budget, opts.seed);
                if let (true, Some((a, b))) = (d.holds, probe) {
                    return Err(Error::InternalInconsistency(format!(
                        "{} is a valuation domain but {} and {} are incomparable",
                        r.base,
                        r.fmt(&a),
                        r.fmt(&b)
                    )));
                }
                Entry::from_decision(&d, BY_QUOTIENT)
                    .with_basis("phi-chained exactly when R/Nil(R) is a valuation domain")
            }
            Err(e) => Entry::inconclusive(&e),
        };
        p.insert(props::PHI_CHAINED.to_string(), chained);

        let x = nonunit(r);
        p.insert(
            props::PHI_VNR.to_string(),
            Entry::decided(false, BY_QUOTIENT)
                .with_witness(format!("{} is neither nilpotent nor a unit", r.fmt(&x))),
        );
        let bezout = match &base_traits {
            Ok(t) => Entry::decided(t.is_bezout, BY_QUOTIENT).with_basis(match t.class_number {
                Some(h) => format!("R/Nil(R) ≅ {} with class number {h}", r.base),
                None => format!("R/Nil(R) ≅ {} is not integrally closed", r.base),
            }),
            Err(e) => Entry::inconclusive(e),
        };
        p.insert(props::PHI_BEZOUT.to_string(), bezout);
    } else {
        for k in [
            props::STRONGLY_PHI,
            props::PHI_CHAINED,
            props::PHI_VNR,
            props::PHI_BEZOUT,
        ] {
            p.insert(
                k.to_string(),
                Entry::decided(false, phi.method.clone())
                    .with_witness(format!("not a phi-ring: {}", phi.witness)),
            );
        }
    }

    for k in [
        props::GAUSSIAN_ALL,
        props::GAUSSIAN_NONNIL,
        props::ARITHMETICAL,
    ] {
        p.insert(
            k.to_string(),
            Entry::skipped("decided for finite rings only"),
        );
    }
    let prufer = match r.module {
        ModuleTag::FractionsModD => Entry::decided(true, BY_QUOTIENT).with_basis(
            "every element (a, m) with a ≠ 0 kills some (0, n), so T(R) = R and every regular ideal is R",
        ),
        ModuleTag::SelfModule => Entry::skipped("not decided for D⋉D"),
    };
    p.insert(props::PRUFER.to_string(), prufer);
    p.insert(
        props::SEMILOCAL.to_string(),
        match &base_traits {
            Ok(t) => Entry::decided(t.is_semilocal, BY_QUOTIENT).with_basis(format!(
                "maximal ideals of R are those of {} times M",
                r.base
            )),
            Err(e) => Entry::inconclusive(e),
        },
    );

    let route_map = if phi.holds {
        if matches!(r.base, DomainHandle::Quad(_)) {
            notes.push(format!(
                "ideal-calculus routes range over integral ideals of norm <= {}",
                opts.norm_bound
            ));
        }
        routes(r, opts)
    } else {
        BTreeMap::new()
    };

    Ok(ClassificationReport {
        label: r.spec(),
        family: "divided-extension".to_string(),
        properties: p,
        routes: route_map,
        notes,
    })
}
