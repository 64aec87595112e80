//! Theorem-shaped checks: nonnil factorization, primary versus irreducible,
//! and the semilocal Bézout property.

use num_integer::Integer;
use serde::Serialize;

use super::calculus::IdealCalculus;
use super::{is_phi_ring, ClassifyOptions, DomLattice, RingRef, Verdict};
use crate::dividedext::{
    nonnil_product, nonnil_residual, DividedExtRing, ModuleTag, NonnilIdealRep,
};
use crate::domainkit::{self, is_prufer_domain, traits, DomainHandle};
use crate::error::{Error, Result};
use crate::finring::{make_zn, quotient, FiniteRing};
use crate::idealcalc::{principal_generator, product, residual, span, FiniteIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct T2Verdict {
    pub holds: bool,
    pub i: String,
    pub j: String,
    /// (I : J), the only candidate that can work.
    pub k: String,
    /// J·(I : J)
    pub product: String,
}

/// Decides whether I = J·K for some nonnil K, using K = (I : J).
pub fn check_t2_finite(i: &FiniteIdeal, j: &FiniteIdeal) -> Result<T2Verdict> {
    let r = i.ring();
    let nil = r.nilpotent_set();
    for (name, x) in [("I", i), ("J", j)] {
        if x.members().is_subset(&nil) {
            return Err(Error::NotNonnil(format!("{name} = {x} lies in Nil(R)")));
        }
    }
    if !i.is_subset(j) {
        return Err(Error::NotContained);
    }
    let k = residual(i, j)?;
    let p = product(j, &k)?;
    Ok(T2Verdict {
        holds: p == *i,
        i: i.to_string(),
        j: j.to_string(),
        k: k.to_string(),
        product: p.to_string(),
    })
}

pub fn check_t2_divided(i: &NonnilIdealRep, j: &NonnilIdealRep) -> Result<T2Verdict> {
    if !i.is_subset(j)? {
        return Err(Error::NotContained);
    }
    let k = nonnil_residual(i, j)?;
    let p = nonnil_product(j, &k)?;
    Ok(T2Verdict {
        holds: p == *i,
        i: i.to_string(),
        j: j.to_string(),
        k: k.to_string(),
        product: p.to_string(),
    })
}

/// First pair I ⊆ J among bounded nonnil ideals with J·(I : J) ≠ I.
pub fn search_t2_failure(r: &DividedExtRing, bound: u64) -> Result<Option<T2Verdict>> {
    let (lat, ids) = DomLattice::bounded(r, bound)?;
    for &a in &ids {
        for &b in &ids {
            if a == b || !lat.contains(b, a)? {
                continue;
            }
            let v = check_t2_divided(lat.rep(a), lat.rep(b))?;
            if !v.holds {
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiEntry {
    pub n: u64,
    pub prime_power: bool,
    pub primary: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primary_witness: Option<String>,
    pub irreducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irreducible_witness: Option<String>,
}

impl PiEntry {
    pub fn consistent(&self) -> bool {
        self.primary == self.irreducible && self.irreducible == self.prime_power
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiReport {
    pub vacuous: bool,
    pub hypothesis_holds: bool,
    pub entries: Vec<PiEntry>,
    pub violations: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PiReport {
    pub fn holds(&self) -> bool {
        self.hypothesis_holds && self.violations.is_empty()
    }
}

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).unwrap_or(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Some power of b lies in nℤ.
fn power_divisible(b: u64, n: u64) -> bool {
    let mut x = b % n;
    for _ in 0..64 {
        if x == 0 {
            return true;
        }
        x = (x as u128 * b as u128 % n as u128) as u64;
    }
    false
}

/// xy ∈ nℤ⋉M with x ∉ nℤ⋉M and no power of y in nℤ⋉M, reduced to
/// residues of the ℤ-components.
fn primary_witness(n: u64) -> Option<(u64, u64)> {
    (1..n)
        .flat_map(|x| (1..n).map(move |y| (x, y)))
        .find(|&(x, y)| (x * y) % n == 0 && !power_divisible(y, n))
}

/// Proper divisors a < b with aℤ⋉M ∩ bℤ⋉M = nℤ⋉M.
fn irreducible_witness(d: &DomainHandle, n: u64) -> Result<Option<(u64, u64)>> {
    let divs: Vec<u64> = (1..n).filter(|a| n.is_multiple_of(*a)).collect();
    let target = d.int_ideal(n as u128)?;
    for (ix, &a) in divs.iter().enumerate() {
        for &b in &divs[ix + 1..] {
            if a.lcm(&b) != n {
                continue;
            }
            let meet = domainkit::intersection(&d.int_ideal(a as u128)?, &d.int_ideal(b as u128)?)?;
            if meet == target {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// Nonnil primes pℤ⋉M are maximal: ℤ/p is a field for every prime g ≤ 50.
fn nonnil_primes_maximal(r: &DividedExtRing) -> Result<bool> {
    for g in 2..=50u64 {
        let rep = NonnilIdealRep::new(r, r.base.int_ideal(g as u128)?)?;
        if rep.is_prime()? {
            let q = make_zn(g)?;
            if q.elements().skip(1).any(|x| !q.is_unit(x)) || !rep.is_maximal()? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn check_primary_irreducible(r: &RingRef, bound: u64) -> Result<PiReport> {
    let d = match r {
        RingRef::Finite(_) => {
            return Ok(PiReport {
                vacuous: true,
                hypothesis_holds: true,
                entries: vec![],
                violations: vec![],
                note: Some("every proper nonnil ideal case is empty for this ring".into()),
            })
        }
        RingRef::Divided(d)
            if d.base == DomainHandle::Int && d.module == ModuleTag::FractionsModD =>
        {
            d
        }
        RingRef::Divided(d) => {
            return Err(Error::UnsupportedFamily(format!(
                "primary/irreducible sweep is implemented for divext:Z, not {}",
                d.spec()
            )))
        }
    };
    let hypothesis_holds = nonnil_primes_maximal(d)?;
    let mut entries = Vec::new();
    for n in 2..=bound {
        let pw = primary_witness(n);
        let iw = irreducible_witness(&d.base, n)?;
        entries.push(PiEntry {
            n,
            prime_power: is_prime_power(n),
            primary: pw.is_none(),
            primary_witness: pw.map(|(x, y)| {
                format!(
                    "({x}, 0)·({y}, 0) ∈ {n}Z⋉M, ({x}, 0) ∉ {n}Z⋉M, no power of ({y}, 0) in {n}Z⋉M"
                )
            }),
            irreducible: iw.is_none(),
            irreducible_witness: iw.map(|(a, b)| format!("{n}Z⋉M = ({a}Z⋉M) ∩ ({b}Z⋉M)")),
        });
    }
    let violations = entries
        .iter()
        .filter(|e| !e.consistent())
        .map(|e| e.n)
        .collect();
    Ok(PiReport {
        vacuous: false,
        hypothesis_holds,
        entries,
        violations,
        note: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct T11Report {
    pub semilocal: bool,
    pub phi_prufer: bool,
    pub applicable: bool,
    /// Number of 2-generated nonnil ideals tested.
    pub checked: usize,
    /// Every tested ideal was principal.
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub phi_bezout: Verdict,
}

fn finite_t11(r: &FiniteRing) -> Result<T11Report> {
    let (q, _) = quotient(r, &r.nilpotent_set())?;
    let phi_prufer = q.elements().skip(1).all(|x| q.is_unit(x));
    let nil = r.nilpotent_set();
    let mut checked = 0;
    let mut witness = None;
    'outer: for a in r.elements() {
        for b in r.elements().filter(|&b| b >= a) {
            let i = span(r, &[a, b]);
            if i.members().is_subset(&nil) {
                continue;
            }
            checked += 1;
            if principal_generator(&i).is_none() {
                witness = Some(format!("({}, {}) is not principal", r.name(a), r.name(b)));
                break 'outer;
            }
        }
    }
    let holds = witness.is_none();
    Ok(T11Report {
        semilocal: true,
        phi_prufer,
        applicable: phi_prufer,
        checked,
        holds,
        witness,
        phi_bezout: Verdict::from_bool(holds),
    })
}

fn divided_t11(r: &DividedExtRing, opts: &ClassifyOptions) -> Result<T11Report> {
    let t = traits(&r.base);
    let phi_bezout = match &t {
        Ok(t) => Verdict::from_bool(t.is_bezout),
        Err(_) => Verdict::Inconclusive,
    };
    let semilocal = t.as_ref().map(|t| t.is_semilocal).unwrap_or(false);
    let phi_prufer = is_prufer_domain(&r.base)?.holds;
    let mut report = T11Report {
        semilocal,
        phi_prufer,
        applicable: semilocal && phi_prufer,
        checked: 0,
        holds: true,
        witness: None,
        phi_bezout,
    };
    let p = match r.base {
        DomainHandle::IntLoc(p) if report.applicable => p,
        _ => return Ok(report),
    };
    let d = r.base;
    let e = opts.exp_bound;
    for a in 0..=e {
        for b in 0..=e {
            let j = NonnilIdealRep::new(r, domainkit::sum(&d.loc_ideal(a)?, &d.loc_ideal(b)?)?)?;
            let g = NonnilIdealRep::new(r, d.loc_ideal(a.min(b))?)?;
            report.checked += 1;
            if j != g {
                report.holds = false;
                report.witness = Some(format!("({p}^{a}, {p}^{b})⋉M = {j} is not {g}"));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

pub fn check_t11_bezout(r: &RingRef, opts: &ClassifyOptions) -> Result<T11Report> {
    let phi = is_phi_ring(r, opts)?;
    if !phi.holds {
        return Err(Error::NotPhiRing(phi.witness));
    }
    match r {
        RingRef::Finite(f) => finite_t11(f),
        RingRef::Divided(d) => divided_t11(d, opts),
    }
}
