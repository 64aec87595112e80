//! Trivial extensions D ⋉ K/D over the domain backends, and the negative
//! family D ⋉ D.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domainkit::{self, quad, DomIdeal, DomainHandle, FracIdeal, IdealData, KElem, Q};
use crate::error::{Error, Result};
use crate::finring::{FiniteRing, HARD_LIMIT};

/// Height bound for sampled numerators and denominators.
pub const SAMPLE_HEIGHT: i128 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleTag {
    FractionsModD,
    SelfModule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DividedExtRing {
    pub base: DomainHandle,
    pub module: ModuleTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DxElem {
    pub a: KElem,
    pub m: KElem,
}

pub fn make_divided_ext(base: DomainHandle, module: ModuleTag) -> DividedExtRing {
    DividedExtRing { base, module }
}

impl DividedExtRing {
    pub fn spec(&self) -> String {
        match self.module {
            ModuleTag::FractionsModD => format!("divext:{}", self.base.spec()),
            ModuleTag::SelfModule => format!("selfext:{}", self.base.spec()),
        }
    }

    pub fn is_divisible_module(&self) -> bool {
        self.module == ModuleTag::FractionsModD
    }

    fn canon_m(&self, m: &KElem) -> KElem {
        match self.module {
            ModuleTag::FractionsModD => self.base.reduce_mod_d(m),
            ModuleTag::SelfModule => *m,
        }
    }

    pub fn elem(&self, a: KElem, m: KElem) -> Result<DxElem> {
        if !self.base.in_domain(&a) {
            return Err(Error::InvalidDomain(format!(
                "{} is not in {}",
                self.base.fmt_elem(&a),
                self.base
            )));
        }
        if self.module == ModuleTag::SelfModule && !self.base.in_domain(&m) {
            return Err(Error::InvalidDomain(format!(
                "{} is not in the module {}",
                self.base.fmt_elem(&m),
                self.base
            )));
        }
        Ok(DxElem {
            a,
            m: self.canon_m(&m),
        })
    }

    /// Shorthand for rational components; panics on invalid input.
    pub fn el(&self, a: i128, mn: i128, md: i128) -> DxElem {
        self.elem(KElem::int(a), KElem::frac(mn, md))
            .expect("valid element")
    }

    pub fn zero(&self) -> DxElem {
        DxElem {
            a: KElem::zero(),
            m: KElem::zero(),
        }
    }

    pub fn one(&self) -> DxElem {
        DxElem {
            a: KElem::int(1),
            m: KElem::zero(),
        }
    }

    pub fn add(&self, x: &DxElem, y: &DxElem) -> DxElem {
        DxElem {
            a: x.a.add(&y.a),
            m: self.canon_m(&x.m.add(&y.m)),
        }
    }

    pub fn neg(&self, x: &DxElem) -> DxElem {
        DxElem {
            a: x.a.neg(),
            m: self.canon_m(&x.m.neg()),
        }
    }

    pub fn mul(&self, x: &DxElem, y: &DxElem) -> DxElem {
        let b = &self.base;
        DxElem {
            a: b.k_mul(&x.a, &y.a),
            m: self.canon_m(&b.k_mul(&x.a, &y.m).add(&b.k_mul(&y.a, &x.m))),
        }
    }

    pub fn fmt(&self, x: &DxElem) -> String {
        format!(
            "({}, {})",
            self.base.fmt_elem(&x.a),
            self.base.fmt_elem(&x.m)
        )
    }

    /// A fixed nonzero element of K/D (or of D for the self module).
    fn basic_torsion(&self) -> KElem {
        match (self.module, self.base) {
            (ModuleTag::SelfModule, _) => KElem::int(1),
            (_, DomainHandle::IntLoc(p)) => KElem::frac(1, p as i128),
            _ => KElem::frac(1, 2),
        }
    }

    pub fn is_nilpotent(&self, x: &DxElem) -> bool {
        x.a.is_zero()
    }

    pub fn is_unit(&self, x: &DxElem) -> bool {
        self.base.is_unit(&x.a)
    }

    pub fn inverse(&self, x: &DxElem) -> Option<DxElem> {
        if !self.is_unit(x) {
            return None;
        }
        let b = &self.base;
        let ai = b.k_inv(&x.a)?;
        let m = b.k_mul(&b.k_mul(&ai, &ai), &x.m).neg();
        Some(DxElem {
            a: ai,
            m: self.canon_m(&m),
        })
    }

    /// A nonzero y with x·y = 0, if one exists.
    pub fn zerodivisor_witness(&self, x: &DxElem) -> Option<DxElem> {
        if x.a.is_zero() {
            let y = if x.m.is_zero() {
                self.basic_torsion()
            } else {
                x.m
            };
            return Some(DxElem {
                a: KElem::zero(),
                m: y,
            });
        }
        if self.module == ModuleTag::SelfModule || self.is_unit(x) {
            return None;
        }
        let inv = self.base.k_inv(&x.a)?;
        Some(DxElem {
            a: KElem::zero(),
            m: self.canon_m(&inv),
        })
    }

    /// Is y ∈ x·R?
    pub fn principal_contains(&self, x: &DxElem, y: &DxElem) -> bool {
        let b = &self.base;
        if !x.a.is_zero() {
            let inv = b.k_inv(&x.a).expect("nonzero");
            let c = b.k_mul(&y.a, &inv);
            if !b.in_domain(&c) {
                return false;
            }
            match self.module {
                ModuleTag::FractionsModD => true,
                ModuleTag::SelfModule => {
                    let rest = y.m.sub(&b.k_mul(&c, &x.m));
                    b.in_domain(&b.k_mul(&rest, &inv))
                }
            }
        } else {
            if !y.a.is_zero() {
                return false;
            }
            match self.module {
                ModuleTag::FractionsModD => in_fractional_span(b, &[x.m, KElem::int(1)], &y.m),
                ModuleTag::SelfModule => in_fractional_span(b, &[x.m], &y.m),
            }
        }
    }

    pub fn random_domain_elem(&self, rng: &mut ChaCha8Rng, height: i128) -> KElem {
        match self.base {
            DomainHandle::Int => KElem::int(rng.gen_range(-height..=height)),
            DomainHandle::IntLoc(p) => loop {
                let v = rng.gen_range(1..=height);
                if v % p as i128 != 0 {
                    break KElem::frac(rng.gen_range(-height..=height), v);
                }
            },
            DomainHandle::Quad(_) => KElem::quad(
                rng.gen_range(-height..=height),
                rng.gen_range(-height..=height),
            ),
        }
    }

    pub fn random_module_elem(&self, rng: &mut ChaCha8Rng, height: i128) -> KElem {
        if self.module == ModuleTag::SelfModule {
            return self.random_domain_elem(rng, height);
        }
        let mut coord = || Q::new(rng.gen_range(0..height), rng.gen_range(1..=height));
        let k = match self.base {
            DomainHandle::Quad(_) => KElem {
                x: coord(),
                y: coord(),
            },
            _ => KElem::rat(coord()),
        };
        self.base.reduce_mod_d(&k)
    }

    pub fn random_elem(&self, rng: &mut ChaCha8Rng, height: i128) -> DxElem {
        DxElem {
            a: self.random_domain_elem(rng, height),
            m: self.random_module_elem(rng, height),
        }
    }
}

impl fmt::Display for DividedExtRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.module {
            ModuleTag::FractionsModD => write!(f, "{0}⋉K/{0}", self.base),
            ModuleTag::SelfModule => write!(f, "{0}⋉{0}", self.base),
        }
    }
}

/// Membership of `t` in the D-submodule of K generated by `gens`.
pub fn in_fractional_span(d: &DomainHandle, gens: &[KElem], t: &KElem) -> bool {
    let nz: Vec<&KElem> = gens.iter().filter(|g| !g.is_zero()).collect();
    if t.is_zero() {
        return true;
    }
    if nz.is_empty() {
        return false;
    }
    match d {
        DomainHandle::Int => {
            let l = nz.iter().fold(*t.x.denom(), |l, g| l.lcm(g.x.denom()));
            let g = nz
                .iter()
                .fold(0i128, |acc, w| acc.gcd(&(w.x * Q::from(l)).to_integer()));
            (t.x * Q::from(l)).to_integer() % g == 0
        }
        DomainHandle::IntLoc(p) => {
            let v = |q: &Q| {
                let p = *p as i128;
                let (mut n, mut dd, mut v) = (*q.numer(), *q.denom(), 0i64);
                while n % p == 0 {
                    n /= p;
                    v += 1;
                }
                while dd % p == 0 {
                    dd /= p;
                    v -= 1;
                }
                v
            };
            let lo = nz.iter().map(|g| v(&g.x)).min().expect("nonempty");
            v(&t.x) >= lo
        }
        DomainHandle::Quad(o) => {
            let l = nz.iter().fold(t.x.denom().lcm(t.y.denom()), |l, g| {
                l.lcm(g.x.denom()).lcm(g.y.denom())
            });
            let sc = |k: &KElem| {
                (
                    (k.x * Q::from(l)).to_integer(),
                    (k.y * Q::from(l)).to_integer(),
                )
            };
            let ints: Vec<quad::QuadInt> = nz.iter().map(|g| sc(g)).collect();
            match FracIdeal::from_generators(o, &ints) {
                Some(fi) => fi.lattice.contains(sc(t)),
                None => false,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElemPredicates {
    pub is_nilpotent: bool,
    pub is_zerodivisor: bool,
    pub is_unit: bool,
    pub zerodivisor_witness: Option<DxElem>,
    pub inverse: Option<DxElem>,
}

pub fn elem_predicates(r: &DividedExtRing, x: &DxElem) -> ElemPredicates {
    let w = r.zerodivisor_witness(x);
    ElemPredicates {
        is_nilpotent: r.is_nilpotent(x),
        is_zerodivisor: w.is_some(),
        is_unit: r.is_unit(x),
        zerodivisor_witness: w,
        inverse: r.inverse(x),
    }
}

/// A nonnil ideal J ⋉ M with J a nonzero ideal of D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NonnilIdealRep {
    pub ring: DividedExtRing,
    pub j: DomIdeal,
}

impl NonnilIdealRep {
    pub fn new(ring: &DividedExtRing, j: DomIdeal) -> Result<Self> {
        if ring.module != ModuleTag::FractionsModD {
            return Err(Error::NotPhiRing(format!(
                "{} has a non-divided nilradical",
                ring.spec()
            )));
        }
        if j.handle != ring.base {
            return Err(Error::MixedDomains);
        }
        if j.is_zero() {
            return Err(Error::NotNonnil("the D-component is zero".into()));
        }
        Ok(NonnilIdealRep { ring: *ring, j })
    }

    pub fn contains(&self, x: &DxElem) -> bool {
        self.j.contains(&x.a)
    }

    pub fn is_whole(&self) -> bool {
        self.j.is_whole()
    }

    /// |R / (J ⋉ M)| = |D / J|.
    pub fn quotient_order(&self) -> Option<u128> {
        self.j.norm()
    }

    pub fn is_subset(&self, other: &NonnilIdealRep) -> Result<bool> {
        self.j.is_subset(&other.j)
    }

    pub fn is_maximal(&self) -> Result<bool> {
        match (self.j.data, self.ring.base) {
            (IdealData::Int(g), _) => Ok(crate::finring::is_prime(g as u64)),
            (IdealData::Loc(Some(k)), _) => Ok(k == 1),
            (IdealData::Quad(Some(fi)), DomainHandle::Quad(o)) => {
                if fi.norm_num() == 1 {
                    return Ok(false);
                }
                let q = quad_quotient(&o, &fi)?;
                Ok(q.elements().skip(1).all(|x| q.is_unit(x)))
            }
            _ => Ok(false),
        }
    }

    pub fn is_prime(&self) -> Result<bool> {
        // D/J is finite for J ≠ 0 in every backend, so prime means maximal.
        self.is_maximal()
    }
}

impl fmt::Display for NonnilIdealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⋉M", self.j)
    }
}

/// O / J as a finite ring, elements indexed by HNF-reduced coordinates.
pub fn quad_quotient(o: &quad::QuadOrder, fi: &FracIdeal) -> Result<FiniteRing> {
    let h = fi.lattice;
    let n = h.det() as usize;
    if n > HARD_LIMIT {
        return Err(Error::TooLarge {
            order: n as u128,
            cap: HARD_LIMIT,
        });
    }
    let reduce = |v: quad::QuadInt| -> usize {
        let k = Integer::div_floor(&v.1, &h.c);
        let (x, y) = (v.0 - k * h.b, v.1 - k * h.c);
        (y * h.a + x.rem_euclid(h.a)) as usize
    };
    let elem = |i: usize| -> quad::QuadInt { ((i as i128) % h.a, (i as i128) / h.a) };
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let (u, v) = (elem(i), elem(j));
            add[i * n + j] = reduce((u.0 + v.0, u.1 + v.1));
            mul[i * n + j] = reduce(o.mul(u, v));
        }
    }
    let names = (0..n).map(|i| o.fmt_elem(elem(i))).collect();
    FiniteRing::from_tables(
        add,
        mul,
        0,
        reduce((1, 0)),
        format!("quad-quotient:{fi}"),
        names,
    )
}

pub fn nonnil_span(r: &DividedExtRing, gens: &[DxElem]) -> Result<NonnilIdealRep> {
    if gens.iter().all(|g| g.a.is_zero()) {
        return Err(Error::NotNonnil(format!(
            "generators {} are all nilpotent",
            gens.iter().map(|g| r.fmt(g)).collect::<Vec<_>>().join(", ")
        )));
    }
    let a: Vec<KElem> = gens.iter().map(|g| g.a).collect();
    NonnilIdealRep::new(r, r.base.ideal_from_gens(&a)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnilOps {
    pub sum: NonnilIdealRep,
    pub intersection: NonnilIdealRep,
    pub product: NonnilIdealRep,
    pub residual: NonnilIdealRep,
}

fn same_ring(i: &NonnilIdealRep, j: &NonnilIdealRep) -> Result<()> {
    if i.ring == j.ring {
        Ok(())
    } else {
        Err(Error::MixedRings)
    }
}

fn lift(i: &NonnilIdealRep, j: DomIdeal) -> NonnilIdealRep {
    NonnilIdealRep { ring: i.ring, j }
}

pub fn nonnil_sum(i: &NonnilIdealRep, j: &NonnilIdealRep) -> Result<NonnilIdealRep> {
    same_ring(i, j)?;
    Ok(lift(i, domainkit::sum(&i.j, &j.j)?))
}

pub fn nonnil_intersection(i: &NonnilIdealRep, j: &NonnilIdealRep) -> Result<NonnilIdealRep> {
    same_ring(i, j)?;
    Ok(lift(i, domainkit::intersection(&i.j, &j.j)?))
}

pub fn nonnil_product(i: &NonnilIdealRep, j: &NonnilIdealRep) -> Result<NonnilIdealRep> {
    same_ring(i, j)?;
    Ok(lift(i, domainkit::product(&i.j, &j.j)?))
}

pub fn nonnil_residual(i: &NonnilIdealRep, j: &NonnilIdealRep) -> Result<NonnilIdealRep> {
    same_ring(i, j)?;
    Ok(lift(i, domainkit::residual(&i.j, &j.j)?))
}

pub fn nonnil_calc(i: &NonnilIdealRep, j: &NonnilIdealRep) -> Result<NonnilOps> {
    Ok(NonnilOps {
        sum: nonnil_sum(i, j)?,
        intersection: nonnil_intersection(i, j)?,
        product: nonnil_product(i, j)?,
        residual: nonnil_residual(i, j)?,
    })
}

/// Nonnil ideals of bounded size: gℤ for g ≤ bound, p^k with p^k ≤ bound,
/// or integral ideals of norm ≤ bound.
pub fn bounded_nonnil_ideals(r: &DividedExtRing, bound: u64) -> Result<Vec<NonnilIdealRep>> {
    let b = &r.base;
    let js: Vec<DomIdeal> = match b {
        DomainHandle::Int => (1..=bound as u128)
            .map(|g| b.int_ideal(g))
            .collect::<Result<_>>()?,
        DomainHandle::IntLoc(p) => {
            let mut out = vec![];
            let mut pk = 1u64;
            let mut k = 0;
            while pk <= bound.max(1) {
                out.push(b.loc_ideal(k)?);
                k += 1;
                pk = pk.saturating_mul(*p);
            }
            out
        }
        DomainHandle::Quad(o) => quad::ideals_up_to_norm(o, bound as i128)
            .into_iter()
            .map(|fi| DomIdeal {
                handle: *b,
                data: IdealData::Quad(Some(fi)),
            })
            .collect(),
    };
    js.into_iter().map(|j| NonnilIdealRep::new(r, j)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DividedVerdict {
    pub holds: bool,
    pub sampled: usize,
    /// True when a positive answer rests on sampling only.
    pub by_sampling: bool,
    pub witness: Option<String>,
}

/// Samples (nonnil x, nil n) pairs and checks n ∈ xR.
pub fn divided_check(r: &DividedExtRing, budget: usize, seed: u64) -> DividedVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(DxElem, DxElem)> = vec![(
        DxElem {
            a: KElem::int(2),
            m: KElem::zero(),
        },
        DxElem {
            a: KElem::zero(),
            m: r.basic_torsion(),
        },
    )];
    while pairs.len() < budget.max(1) {
        let x = r.random_elem(&mut rng, SAMPLE_HEIGHT);
        if x.a.is_zero() {
            continue;
        }
        let n = DxElem {
            a: KElem::zero(),
            m: r.random_module_elem(&mut rng, SAMPLE_HEIGHT),
        };
        pairs.push((x, n));
    }
    let sampled = pairs.len();
    for (x, n) in pairs {
        if !r.principal_contains(&x, &n) {
            return DividedVerdict {
                holds: false,
                sampled,
                by_sampling: false,
                witness: Some(format!("{} ∉ {}·R", r.fmt(&n), r.fmt(&x))),
            };
        }
    }
    DividedVerdict {
        holds: true,
        sampled,
        by_sampling: true,
        witness: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorReport {
    pub y_in_ann_x: bool,
    pub x_in_ann_y: bool,
    pub ann_x_sampled: usize,
    pub ann_x_in_yr: bool,
    pub ann_y_sampled: usize,
    pub ann_y_in_xr: bool,
    pub witness: Option<String>,
}

impl AnnihilatorReport {
    pub fn holds(&self) -> bool {
        self.y_in_ann_x && self.x_in_ann_y && self.ann_x_in_yr && self.ann_y_in_xr
    }
}

/// Random elements of (0 : x).
fn sample_annihilator(
    r: &DividedExtRing,
    x: &DxElem,
    rng: &mut ChaCha8Rng,
    n: usize,
) -> Vec<DxElem> {
    let b = &r.base;
    let mut out = Vec::with_capacity(n);
    if r.module == ModuleTag::SelfModule {
        // (0 : x) is 0 when a ≠ 0 and 0 ⋉ D otherwise.
        if !x.a.is_zero() {
            return vec![r.zero()];
        }
        return (0..n)
            .map(|_| DxElem {
                a: KElem::zero(),
                m: r.random_domain_elem(rng, 64),
            })
            .collect();
    }
    if !x.a.is_zero() {
        let inv = b.k_inv(&x.a).expect("nonzero");
        for _ in 0..n {
            let k = r.random_domain_elem(rng, 64);
            out.push(DxElem {
                a: KElem::zero(),
                m: b.reduce_mod_d(&b.k_mul(&k, &inv)),
            });
        }
    } else {
        // b·m ∈ D: multiples of the common denominator of m.
        let l = x.m.x.denom().lcm(x.m.y.denom());
        for _ in 0..n {
            let k = r.random_domain_elem(rng, 64);
            out.push(DxElem {
                a: b.k_mul(&k, &KElem::int(l)),
                m: r.random_module_elem(rng, SAMPLE_HEIGHT),
            });
        }
    }
    out
}

pub fn annihilator_membership(
    r: &DividedExtRing,
    x: &DxElem,
    y: &DxElem,
    budget: usize,
    seed: u64,
) -> AnnihilatorReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = r.zero();
    let y_in_ann_x = r.mul(x, y) == zero;
    let ann_x = sample_annihilator(r, x, &mut rng, budget);
    let ann_y = sample_annihilator(r, y, &mut rng, budget);
    for z in ann_x.iter().chain(&ann_y) {
        debug_assert!(r.mul(z, x) == zero || r.mul(z, y) == zero);
    }
    let bad_x = ann_x.iter().find(|z| !r.principal_contains(y, z));
    let bad_y = ann_y.iter().find(|z| !r.principal_contains(x, z));
    let witness = bad_x
        .map(|z| format!("{} ∈ (0:x) but not in yR", r.fmt(z)))
        .or_else(|| bad_y.map(|z| format!("{} ∈ (0:y) but not in xR", r.fmt(z))));
    AnnihilatorReport {
        y_in_ann_x,
        x_in_ann_y: r.mul(y, x) == zero,
        ann_x_sampled: ann_x.len(),
        ann_x_in_yr: bad_x.is_none(),
        ann_y_sampled: ann_y.len(),
        ann_y_in_xr: bad_y.is_none(),
        witness,
    }
}

/// Either a | b or b | a for sampled non-nil pairs; returns the first
/// incomparable pair.
pub fn sampled_divisibility(
    r: &DividedExtRing,
    budget: usize,
    seed: u64,
) -> Option<(DxElem, DxElem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = vec![(r.el(2, 0, 1), r.el(3, 0, 1))];
    while pairs.len() < budget.max(1) {
        let x = r.random_elem(&mut rng, 256);
        let y = r.random_elem(&mut rng, 256);
        if !x.a.is_zero() && !y.a.is_zero() {
            pairs.push((x, y));
        }
    }
    pairs
        .into_iter()
        .find(|(x, y)| !r.principal_contains(x, y) && !r.principal_contains(y, x))
}

/// Checks on sampled elements that the zerodivisors are exactly the
/// non-units and the nilpotents exactly {a = 0}.
pub fn sampled_zerodivisor_agreement(r: &DividedExtRing, budget: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..budget).all(|_| {
        let x = r.random_elem(&mut rng, 512);
        let p = elem_predicates(r, &x);
        let w_ok = p
            .zerodivisor_witness
            .map(|w| w != r.zero() && r.mul(&x, &w) == r.zero())
            .unwrap_or(true);
        let nil_ok = !p.is_nilpotent || r.mul(&x, &x) == r.zero();
        let zd_ok = match r.module {
            ModuleTag::FractionsModD => p.is_zerodivisor == !p.is_unit,
            ModuleTag::SelfModule => p.is_zerodivisor == p.is_nilpotent,
        };
        let inv_ok = p
            .inverse
            .map(|i| r.mul(&x, &i) == r.one())
            .unwrap_or(!p.is_unit);
        w_ok && nil_ok && zd_ok && inv_ok && p.is_nilpotent == x.a.is_zero()
    })
}

impl DxElem {
    pub fn is_one(&self) -> bool {
        self.a.x.is_one() && self.a.y.is_zero() && self.m.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zq() -> DividedExtRing {
        make_divided_ext(DomainHandle::Int, ModuleTag::FractionsModD)
    }

    fn z2q() -> DividedExtRing {
        make_divided_ext(DomainHandle::IntLoc(2), ModuleTag::FractionsModD)
    }

    #[test]
    fn multiplication_law() {
        let r = zq();
        assert_eq!(r.mul(&r.el(2, 0, 1), &r.el(0, 1, 2)), r.zero());
        let s = z2q();
        let (x, y) = (s.el(2, 0, 1), s.el(0, 1, 2));
        assert_eq!(s.mul(&x, &y), s.zero());
        assert_eq!(s.fmt(&y), "(0, 1/2)");
    }

    #[test]
    fn predicates() {
        let r = zq();
        let p = elem_predicates(&r, &r.el(0, 3, 7));
        assert!(p.is_nilpotent && p.is_zerodivisor && !p.is_unit);
        let s = z2q();
        let p = elem_predicates(&s, &s.el(2, 0, 1));
        assert!(!p.is_nilpotent && p.is_zerodivisor);
        assert_eq!(p.zerodivisor_witness, Some(s.el(0, 1, 2)));
        let p = elem_predicates(&r, &r.el(1, 2, 5));
        assert!(p.is_unit);
        assert_eq!(p.inverse, Some(r.el(1, -2, 5)));
        // 3 is a unit of ℤ_(2)
        assert!(elem_predicates(&s, &s.el(3, 1, 4)).is_unit);
    }

    #[test]
    fn spans_and_calculus() {
        let r = zq();
        let i = nonnil_span(&r, &[r.el(4, 0, 1), r.el(6, 1, 2)]).unwrap();
        assert_eq!(i.to_string(), "2Z⋉M");
        assert!(matches!(
            nonnil_span(&r, &[r.el(0, 1, 3)]),
            Err(Error::NotNonnil(_))
        ));
        let five = nonnil_span(&r, &[r.el(5, 1, 3)]).unwrap();
        assert_eq!(five.to_string(), "5Z⋉M");
        let a = nonnil_span(&r, &[r.el(4, 0, 1)]).unwrap();
        let b = nonnil_span(&r, &[r.el(6, 0, 1)]).unwrap();
        let ops = nonnil_calc(&a, &b).unwrap();
        assert_eq!(ops.sum.to_string(), "2Z⋉M");
        assert_eq!(ops.residual.to_string(), "2Z⋉M");
        let c = nonnil_span(&r, &[r.el(2, 0, 1)]).unwrap();
        let d = nonnil_span(&r, &[r.el(3, 0, 1)]).unwrap();
        assert_eq!(nonnil_product(&c, &d).unwrap().to_string(), "6Z⋉M");
        let s = z2q();
        let e = nonnil_span(&s, &[s.el(2, 0, 1)]).unwrap();
        assert_eq!(nonnil_sum(&a, &e), Err(Error::MixedRings));
    }

    #[test]
    fn divided_property() {
        let r = zq();
        assert!(r.principal_contains(&r.el(2, 0, 1), &r.el(0, 1, 2)));
        let v = divided_check(&r, 1000, 7);
        assert!(v.holds && v.by_sampling && v.sampled == 1000);
        let s = make_divided_ext(DomainHandle::Int, ModuleTag::SelfModule);
        let v = divided_check(&s, 100, 7);
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap(), "(0, 1) ∉ (2, 0)·R");
    }

    #[test]
    fn annihilators_of_example_ring() {
        let s = z2q();
        let (x, y) = (s.el(2, 0, 1), s.el(0, 1, 2));
        let rep = annihilator_membership(&s, &x, &y, 200, 3);
        assert!(rep.holds(), "{rep:?}");
        // the only m with 2m ≡ 0 are 0 and 1/2
        let ann: Vec<_> = sample_annihilator(&s, &x, &mut ChaCha8Rng::seed_from_u64(1), 50)
            .into_iter()
            .map(|z| z.m)
            .collect();
        assert!(ann
            .iter()
            .all(|m| *m == KElem::zero() || *m == KElem::frac(1, 2)));
    }

    #[test]
    fn nonnil_primes_are_maximal() {
        let r = zq();
        for p in 2..=50u128 {
            let i = NonnilIdealRep::new(&r, DomainHandle::Int.int_ideal(p).unwrap()).unwrap();
            let prime = crate::finring::is_prime(p as u64);
            assert_eq!(i.is_prime().unwrap(), prime);
            if prime {
                assert_eq!(i.quotient_order(), Some(p));
            }
        }
        let g = make_divided_ext(DomainHandle::quad(-1, 1).unwrap(), ModuleTag::FractionsModD);
        let two = nonnil_span(&g, &[g.elem(KElem::quad(1, 1), KElem::zero()).unwrap()]).unwrap();
        assert!(two.is_maximal().unwrap());
        let three = nonnil_span(&g, &[g.elem(KElem::int(3), KElem::zero()).unwrap()]).unwrap();
        assert!(three.is_maximal().unwrap());
        let five = nonnil_span(&g, &[g.elem(KElem::int(5), KElem::zero()).unwrap()]).unwrap();
        assert!(!five.is_maximal().unwrap());
    }

    #[test]
    fn zerodivisors_agree_with_units() {
        for r in [
            zq(),
            z2q(),
            make_divided_ext(DomainHandle::quad(-1, 2).unwrap(), ModuleTag::FractionsModD),
        ] {
            assert!(sampled_zerodivisor_agreement(&r, 300, 11), "{r}");
        }
        assert!(sampled_zerodivisor_agreement(
            &make_divided_ext(DomainHandle::Int, ModuleTag::SelfModule),
            300,
            11
        ));
    }

    #[test]
    fn chained_spot_check() {
        assert!(sampled_divisibility(&z2q(), 500, 5).is_none());
        assert!(sampled_divisibility(&zq(), 500, 5).is_some());
    }
}
