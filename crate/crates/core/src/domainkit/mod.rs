//! Integral domains with exact ideal arithmetic: ℤ, ℤ localized at a prime,
//! and quadratic orders.

pub mod quad;

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::finring::is_prime;
use crate::idealcalc::Decision;
pub use quad::{FracIdeal, Hnf, QuadInt, QuadOrder};

pub type Q = Ratio<i128>;

/// Sampled invertibility cross-check bound on ideal norms.
pub const PRUFER_NORM_BOUND: i128 = 64;
/// Largest |d| the Bézout oracle will decide.
pub const BEZOUT_TABLE_RANGE: i64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainHandle {
    Int,
    IntLoc(u64),
    Quad(QuadOrder),
}

impl DomainHandle {
    pub fn int_loc(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(DomainHandle::IntLoc(p))
    }

    pub fn quad(d: i64, f: u64) -> Result<Self> {
        QuadOrder::new(d, f).map(DomainHandle::Quad)
    }

    /// Parses "Z", "Zloc:<p>" or "quad:<d>:<f>".
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDomain(format!("unrecognized domain spec {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["Z"] => Ok(DomainHandle::Int),
            ["Zloc", p] => DomainHandle::int_loc(p.parse().map_err(|_| bad())?),
            ["quad", d, f] => {
                DomainHandle::quad(d.parse().map_err(|_| bad())?, f.parse().map_err(|_| bad())?)
            }
            _ => Err(bad()),
        }
    }

    pub fn spec(&self) -> String {
        match self {
            DomainHandle::Int => "Z".into(),
            DomainHandle::IntLoc(p) => format!("Zloc:{p}"),
            DomainHandle::Quad(o) => format!("quad:{}:{}", o.d, o.f),
        }
    }

    pub fn basis_description(&self) -> String {
        match self {
            DomainHandle::Int | DomainHandle::IntLoc(_) => "1".into(),
            DomainHandle::Quad(o) => format!("1, {}", o.theta_name()),
        }
    }

    // ---- elements of the fraction field K, stored as x + y·θ ----

    pub fn k_mul(&self, a: &KElem, b: &KElem) -> KElem {
        match self {
            DomainHandle::Quad(o) => KElem {
                x: a.x * b.x - Q::from(o.n) * a.y * b.y,
                y: a.x * b.y + a.y * b.x + Q::from(o.t) * a.y * b.y,
            },
            _ => KElem::rat(a.x * b.x),
        }
    }

    pub fn k_norm(&self, a: &KElem) -> Q {
        match self {
            DomainHandle::Quad(o) => {
                a.x * a.x + Q::from(o.t) * a.x * a.y + Q::from(o.n) * a.y * a.y
            }
            _ => a.x,
        }
    }

    pub fn k_inv(&self, a: &KElem) -> Option<KElem> {
        if a.is_zero() {
            return None;
        }
        Some(match self {
            DomainHandle::Quad(o) => {
                let n = self.k_norm(a);
                KElem {
                    x: (a.x + Q::from(o.t) * a.y) / n,
                    y: -a.y / n,
                }
            }
            _ => KElem::rat(a.x.recip()),
        })
    }

    pub fn in_domain(&self, a: &KElem) -> bool {
        match self {
            DomainHandle::Int => a.x.is_integer(),
            DomainHandle::IntLoc(p) => *a.x.denom() % *p as i128 != 0,
            DomainHandle::Quad(_) => a.x.is_integer() && a.y.is_integer(),
        }
    }

    pub fn is_unit(&self, a: &KElem) -> bool {
        if !self.in_domain(a) || a.is_zero() {
            return false;
        }
        match self {
            DomainHandle::Int => a.x.abs().is_one(),
            DomainHandle::IntLoc(p) => *a.x.numer() % *p as i128 != 0,
            DomainHandle::Quad(_) => self.k_norm(a).abs().is_one(),
        }
    }

    /// Canonical representative of a + D in K/D.
    pub fn reduce_mod_d(&self, a: &KElem) -> KElem {
        let frac = |q: Q| q - q.floor();
        match self {
            DomainHandle::Int => KElem::rat(frac(a.x)),
            DomainHandle::IntLoc(p) => {
                let p = *p as i128;
                let (u, v) = (*a.x.numer(), *a.x.denom());
                let (mut pk, mut w) = (1i128, v);
                while w % p == 0 {
                    w /= p;
                    pk *= p;
                }
                if pk == 1 {
                    return KElem::zero();
                }
                let winv = quad::mod_inverse(w.rem_euclid(pk), pk).expect("coprime");
                KElem::rat(Q::new((u.rem_euclid(pk) * winv).rem_euclid(pk), pk))
            }
            DomainHandle::Quad(_) => KElem {
                x: frac(a.x),
                y: frac(a.y),
            },
        }
    }

    pub fn fmt_elem(&self, a: &KElem) -> String {
        match self {
            DomainHandle::Quad(o) if !a.y.is_zero() || !a.x.is_integer() => {
                let th = o.theta_name();
                let th = if th.contains('/') {
                    format!("({th})")
                } else {
                    th
                };
                if a.y.is_zero() {
                    a.x.to_string()
                } else if a.x.is_zero() {
                    format!("{}·{th}", a.y)
                } else {
                    format!("{}+{}·{th}", a.x, a.y)
                }
            }
            DomainHandle::Quad(o) => o.fmt_elem((a.x.to_integer(), 0)),
            _ => a.x.to_string(),
        }
    }

    /// Valuation at p of a nonzero rational.
    fn vp(p: u64, q: &Q) -> i64 {
        let p = p as i128;
        let mut v = 0i64;
        let (mut n, mut d) = (*q.numer(), *q.denom());
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        while d % p == 0 {
            d /= p;
            v -= 1;
        }
        v
    }

    // ---- ideals ----

    pub fn zero_ideal(&self) -> DomIdeal {
        let data = match self {
            DomainHandle::Int => IdealData::Int(0),
            DomainHandle::IntLoc(_) => IdealData::Loc(None),
            DomainHandle::Quad(_) => IdealData::Quad(None),
        };
        DomIdeal {
            handle: *self,
            data,
        }
    }

    pub fn unit_ideal(&self) -> DomIdeal {
        let data = match self {
            DomainHandle::Int => IdealData::Int(1),
            DomainHandle::IntLoc(_) => IdealData::Loc(Some(0)),
            DomainHandle::Quad(_) => IdealData::Quad(Some(FracIdeal::whole())),
        };
        DomIdeal {
            handle: *self,
            data,
        }
    }

    pub fn int_ideal(&self, g: u128) -> Result<DomIdeal> {
        match self {
            DomainHandle::Int => Ok(DomIdeal {
                handle: *self,
                data: IdealData::Int(g),
            }),
            _ => Err(Error::MixedDomains),
        }
    }

    pub fn loc_ideal(&self, k: u32) -> Result<DomIdeal> {
        match self {
            DomainHandle::IntLoc(_) => Ok(DomIdeal {
                handle: *self,
                data: IdealData::Loc(Some(k)),
            }),
            _ => Err(Error::MixedDomains),
        }
    }

    /// Fractional ideal of a quadratic order; asserts the θ-closure.
    pub fn quad_ideal(&self, lattice: Hnf, den: i128) -> Result<DomIdeal> {
        match self {
            DomainHandle::Quad(o) => {
                if !lattice.is_ideal_of(o) {
                    return Err(Error::InvalidDomain(format!(
                        "lattice {lattice} is not closed under multiplication by θ"
                    )));
                }
                Ok(DomIdeal {
                    handle: *self,
                    data: IdealData::Quad(Some(FracIdeal::new(lattice, den))),
                })
            }
            _ => Err(Error::MixedDomains),
        }
    }

    /// Ideal of D generated by elements of D.
    pub fn ideal_from_gens(&self, gens: &[KElem]) -> Result<DomIdeal> {
        if let Some(g) = gens.iter().find(|g| !self.in_domain(g)) {
            return Err(Error::InvalidDomain(format!(
                "{} is not in {}",
                self.fmt_elem(g),
                self.spec()
            )));
        }
        let nz: Vec<&KElem> = gens.iter().filter(|g| !g.is_zero()).collect();
        if nz.is_empty() {
            return Ok(self.zero_ideal());
        }
        let data = match self {
            DomainHandle::Int => IdealData::Int(
                nz.iter()
                    .fold(0i128, |g, a| g.gcd(&a.x.to_integer()))
                    .unsigned_abs(),
            ),
            DomainHandle::IntLoc(p) => {
                IdealData::Loc(nz.iter().map(|a| Self::vp(*p, &a.x) as u32).min())
            }
            DomainHandle::Quad(o) => {
                let ints: Vec<QuadInt> = nz
                    .iter()
                    .map(|a| (a.x.to_integer(), a.y.to_integer()))
                    .collect();
                IdealData::Quad(FracIdeal::from_generators(o, &ints))
            }
        };
        Ok(DomIdeal {
            handle: *self,
            data,
        })
    }

    pub fn principal(&self, a: &KElem) -> Result<DomIdeal> {
        self.ideal_from_gens(std::slice::from_ref(a))
    }
}

impl fmt::Display for DomainHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainHandle::Int => write!(f, "ℤ"),
            DomainHandle::IntLoc(p) => write!(f, "ℤ_({p})"),
            DomainHandle::Quad(o) => write!(f, "ℤ[{}]", o.theta_name()),
        }
    }
}

/// Element x + y·θ of the fraction field (y = 0 for the rational backends).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KElem {
    pub x: Q,
    pub y: Q,
}

impl KElem {
    pub fn rat(x: Q) -> Self {
        KElem { x, y: Q::zero() }
    }

    pub fn int(x: i128) -> Self {
        KElem::rat(Q::from(x))
    }

    pub fn frac(n: i128, d: i128) -> Self {
        KElem::rat(Q::new(n, d))
    }

    pub fn quad(x: i128, y: i128) -> Self {
        KElem {
            x: Q::from(x),
            y: Q::from(y),
        }
    }

    pub fn zero() -> Self {
        KElem::int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &KElem) -> KElem {
        KElem {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }

    pub fn neg(&self) -> KElem {
        KElem {
            x: -self.x,
            y: -self.y,
        }
    }

    pub fn sub(&self, o: &KElem) -> KElem {
        self.add(&o.neg())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealData {
    Int(u128),
    /// `None` is the zero ideal, `Some(k)` is p^k.
    Loc(Option<u32>),
    Quad(Option<FracIdeal>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DomIdeal {
    pub handle: DomainHandle,
    pub data: IdealData,
}

impl DomIdeal {
    pub fn is_zero(&self) -> bool {
        matches!(
            self.data,
            IdealData::Int(0) | IdealData::Loc(None) | IdealData::Quad(None)
        )
    }

    pub fn is_whole(&self) -> bool {
        *self == self.handle.unit_ideal()
    }

    pub fn is_integral(&self) -> bool {
        match self.data {
            IdealData::Quad(Some(fi)) => fi.is_integral(),
            _ => true,
        }
    }

    /// Absolute norm (index in D) for integral ideals; `None` for the zero
    /// ideal and for ℤ_(p), where it is not finite-index in the usual sense.
    pub fn norm(&self) -> Option<u128> {
        match self.data {
            IdealData::Int(0) | IdealData::Loc(None) | IdealData::Quad(None) => None,
            IdealData::Int(g) => Some(g),
            IdealData::Loc(Some(k)) => match self.handle {
                DomainHandle::IntLoc(p) => (p as u128).checked_pow(k),
                _ => None,
            },
            IdealData::Quad(Some(fi)) => fi.is_integral().then(|| fi.norm_num() as u128),
        }
    }

    pub fn contains(&self, a: &KElem) -> bool {
        if a.is_zero() {
            return true;
        }
        match (self.data, self.handle) {
            (IdealData::Int(g), _) => {
                a.x.is_integer() && g != 0 && a.x.to_integer() % g as i128 == 0
            }
            (IdealData::Loc(None), _) | (IdealData::Quad(None), _) => false,
            (IdealData::Loc(Some(k)), DomainHandle::IntLoc(p)) => {
                DomainHandle::vp(p, &a.x) >= k as i64
            }
            (IdealData::Quad(Some(fi)), _) => {
                let l = a.x.denom().lcm(a.y.denom());
                let v = (
                    (a.x * Q::from(l)).to_integer(),
                    (a.y * Q::from(l)).to_integer(),
                );
                fi.contains(v, l)
            }
            _ => false,
        }
    }

    pub fn is_subset(&self, other: &DomIdeal) -> Result<bool> {
        Ok(sum(self, other)? == *other)
    }

    /// A finite generating set in D.
    pub fn generators(&self) -> Vec<KElem> {
        match (self.data, self.handle) {
            (IdealData::Int(g), _) => vec![KElem::int(g as i128)],
            (IdealData::Loc(None), _) | (IdealData::Quad(None), _) => vec![KElem::zero()],
            (IdealData::Loc(Some(k)), DomainHandle::IntLoc(p)) => {
                vec![KElem::int((p as i128).pow(k))]
            }
            (IdealData::Quad(Some(fi)), _) => fi
                .lattice
                .basis()
                .iter()
                .map(|&(x, y)| KElem {
                    x: Q::new(x, fi.den),
                    y: Q::new(y, fi.den),
                })
                .collect(),
            _ => vec![],
        }
    }

    pub fn describe(&self) -> String {
        match (self.data, self.handle) {
            (IdealData::Quad(Some(fi)), DomainHandle::Quad(o)) => {
                format!("{} = {}", fi.generators_string(&o), fi)
            }
            _ => self.to_string(),
        }
    }
}

impl fmt::Display for DomIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.data, self.handle) {
            (IdealData::Int(0), _) | (IdealData::Loc(None), _) | (IdealData::Quad(None), _) => {
                write!(f, "0")
            }
            (IdealData::Int(1), _) => write!(f, "Z"),
            (IdealData::Int(g), _) => write!(f, "{g}Z"),
            (IdealData::Loc(Some(k)), DomainHandle::IntLoc(p)) => write!(f, "{p}^{k}"),
            (IdealData::Quad(Some(fi)), _) => write!(f, "{fi}"),
            _ => write!(f, "?"),
        }
    }
}

fn same(i: &DomIdeal, j: &DomIdeal) -> Result<()> {
    if i.handle == j.handle {
        Ok(())
    } else {
        Err(Error::MixedDomains)
    }
}

fn quad_of(h: &DomainHandle) -> QuadOrder {
    match h {
        DomainHandle::Quad(o) => *o,
        _ => unreachable!("quadratic data on a rational handle"),
    }
}

fn wrap(i: &DomIdeal, data: IdealData) -> DomIdeal {
    DomIdeal {
        handle: i.handle,
        data,
    }
}

pub fn sum(i: &DomIdeal, j: &DomIdeal) -> Result<DomIdeal> {
    same(i, j)?;
    let data = match (i.data, j.data) {
        (IdealData::Int(g), IdealData::Int(h)) => IdealData::Int(g.gcd(&h)),
        (IdealData::Loc(a), IdealData::Loc(b)) => IdealData::Loc(match (a, b) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (x, None) | (None, x) => x,
        }),
        (IdealData::Quad(a), IdealData::Quad(b)) => IdealData::Quad(match (a, b) {
            (Some(a), Some(b)) => Some(a.sum(&b)),
            (x, None) | (None, x) => x,
        }),
        _ => return Err(Error::MixedDomains),
    };
    Ok(wrap(i, data))
}

pub fn product(i: &DomIdeal, j: &DomIdeal) -> Result<DomIdeal> {
    same(i, j)?;
    let data = match (i.data, j.data) {
        (IdealData::Int(g), IdealData::Int(h)) => IdealData::Int(g * h),
        (IdealData::Loc(a), IdealData::Loc(b)) => IdealData::Loc(a.zip(b).map(|(a, b)| a + b)),
        (IdealData::Quad(a), IdealData::Quad(b)) => {
            let o = quad_of(&i.handle);
            IdealData::Quad(a.zip(b).map(|(a, b)| a.product(&b, &o)))
        }
        _ => return Err(Error::MixedDomains),
    };
    Ok(wrap(i, data))
}

pub fn intersection(i: &DomIdeal, j: &DomIdeal) -> Result<DomIdeal> {
    same(i, j)?;
    let data = match (i.data, j.data) {
        (IdealData::Int(g), IdealData::Int(h)) => IdealData::Int(g.lcm(&h)),
        (IdealData::Loc(a), IdealData::Loc(b)) => IdealData::Loc(a.zip(b).map(|(a, b)| a.max(b))),
        (IdealData::Quad(a), IdealData::Quad(b)) => {
            IdealData::Quad(a.zip(b).map(|(a, b)| a.intersection(&b)))
        }
        _ => return Err(Error::MixedDomains),
    };
    Ok(wrap(i, data))
}

/// Fractional colon {x ∈ K : x·J ⊆ I}; for the rational backends this is
/// already the D-level residual of integral ideals only when it is integral,
/// so it is offered for quadratic orders.
pub fn colon(i: &DomIdeal, j: &DomIdeal) -> Result<DomIdeal> {
    same(i, j)?;
    if j.is_zero() {
        return Err(Error::ZeroIdealResidualDividend);
    }
    match (i.data, j.data) {
        (IdealData::Quad(a), IdealData::Quad(Some(b))) => {
            let o = quad_of(&i.handle);
            Ok(wrap(i, IdealData::Quad(a.map(|a| a.colon(&b, &o)))))
        }
        _ => residual(i, j),
    }
}

/// (I :_D J) = {x ∈ D : xJ ⊆ I}.
pub fn residual(i: &DomIdeal, j: &DomIdeal) -> Result<DomIdeal> {
    same(i, j)?;
    if j.is_zero() {
        return Err(Error::ZeroIdealResidualDividend);
    }
    let data = match (i.data, j.data) {
        (IdealData::Int(g), IdealData::Int(h)) => IdealData::Int(g / g.gcd(&h)),
        (IdealData::Loc(a), IdealData::Loc(Some(b))) => {
            IdealData::Loc(a.map(|a| a.saturating_sub(b)))
        }
        (IdealData::Quad(a), IdealData::Quad(Some(b))) => {
            let o = quad_of(&i.handle);
            IdealData::Quad(a.map(|a| a.colon(&b, &o).intersection(&FracIdeal::whole())))
        }
        _ => return Err(Error::MixedDomains),
    };
    Ok(wrap(i, data))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomIdealOps {
    pub sum: DomIdeal,
    pub product: DomIdeal,
    pub intersection: DomIdeal,
    pub residual: DomIdeal,
}

pub fn dom_ideal_ops(i: &DomIdeal, j: &DomIdeal) -> Result<DomIdealOps> {
    Ok(DomIdealOps {
        sum: sum(i, j)?,
        product: product(i, j)?,
        intersection: intersection(i, j)?,
        residual: residual(i, j)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invertibility {
    pub invertible: bool,
    /// I·(D:I).
    pub product: DomIdeal,
}

pub fn is_invertible_ideal(i: &DomIdeal) -> Result<Invertibility> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let whole = i.handle.unit_ideal();
    let product = match i.data {
        IdealData::Quad(Some(a)) => {
            let o = quad_of(&i.handle);
            let inv = FracIdeal::whole().colon(&a, &o);
            wrap(i, IdealData::Quad(Some(a.product(&inv, &o))))
        }
        _ => whole,
    };
    Ok(Invertibility {
        invertible: product == whole,
        product,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruferVerdict {
    pub holds: bool,
    pub reason: String,
    /// Number of ideals tested for invertibility.
    pub sampled: usize,
    pub non_invertible: Option<DomIdeal>,
}

pub fn is_prufer_domain(d: &DomainHandle) -> Result<PruferVerdict> {
    let o = match d {
        DomainHandle::Int | DomainHandle::IntLoc(_) => {
            return Ok(PruferVerdict {
                holds: true,
                reason: "principal ideal domain".into(),
                sampled: 0,
                non_invertible: None,
            })
        }
        DomainHandle::Quad(o) => *o,
    };
    let ideals = quad::ideals_up_to_norm(&o, PRUFER_NORM_BOUND);
    let sampled = ideals.len();
    let mut bad = None;
    for fi in ideals {
        let id = wrap(&d.unit_ideal(), IdealData::Quad(Some(fi)));
        if !is_invertible_ideal(&id)?.invertible {
            bad = Some(id);
            break;
        }
    }
    if let (true, Some(b)) = (o.is_maximal(), &bad) {
        return Err(Error::InternalInconsistency(format!(
            "maximal order {d} has non-invertible ideal {b}"
        )));
    }
    let reason = if o.is_maximal() {
        "maximal order, hence Dedekind".to_string()
    } else {
        format!("conductor {} > 1, not integrally closed", o.f)
    };
    Ok(PruferVerdict {
        holds: o.is_maximal(),
        reason,
        sampled,
        non_invertible: bad,
    })
}

pub fn is_valuation_domain(d: &DomainHandle) -> Result<Decision> {
    if let DomainHandle::IntLoc(p) = d {
        return Ok(Decision::yes_because(format!(
            "discrete valuation ring at {p}"
        )));
    }
    let a = d.principal(&KElem::int(2))?;
    let b = d.principal(&KElem::int(3))?;
    if a.is_subset(&b)? || b.is_subset(&a)? {
        return Err(Error::InternalInconsistency(format!(
            "(2) and (3) comparable in {d}"
        )));
    }
    Ok(Decision::no(format!("{a} ⊄ {b} and {b} ⊄ {a}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainTraits {
    pub is_bezout: bool,
    pub is_semilocal: bool,
    pub class_number: Option<usize>,
}

pub fn traits(d: &DomainHandle) -> Result<DomainTraits> {
    match d {
        DomainHandle::Int => Ok(DomainTraits {
            is_bezout: true,
            is_semilocal: false,
            class_number: Some(1),
        }),
        DomainHandle::IntLoc(_) => Ok(DomainTraits {
            is_bezout: true,
            is_semilocal: true,
            class_number: Some(1),
        }),
        DomainHandle::Quad(o) => {
            if o.d.abs() > BEZOUT_TABLE_RANGE {
                return Err(Error::OutOfTableRange(format!(
                    "|d| = {} exceeds {BEZOUT_TABLE_RANGE}",
                    o.d.abs()
                )));
            }
            let class_number = if o.is_maximal() {
                Some(quad::class_number(o)?)
            } else {
                None
            };
            Ok(DomainTraits {
                is_bezout: class_number == Some(1),
                is_semilocal: false,
                class_number,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zi(d: i64, f: u64) -> DomainHandle {
        DomainHandle::quad(d, f).unwrap()
    }

    #[test]
    fn integer_ops() {
        let z = DomainHandle::Int;
        let ops = dom_ideal_ops(&z.int_ideal(4).unwrap(), &z.int_ideal(6).unwrap()).unwrap();
        assert_eq!(ops.sum.to_string(), "2Z");
        assert_eq!(ops.intersection.to_string(), "12Z");
        assert_eq!(ops.product.to_string(), "24Z");
        assert_eq!(ops.residual.to_string(), "2Z");
    }

    #[test]
    fn local_ops() {
        let l = DomainHandle::int_loc(2).unwrap();
        let s = sum(&l.loc_ideal(2).unwrap(), &l.loc_ideal(3).unwrap()).unwrap();
        assert_eq!(s.to_string(), "2^2");
        assert!(l.principal(&KElem::frac(12, 5)).unwrap() == l.loc_ideal(2).unwrap());
    }

    #[test]
    fn mixed_domains() {
        let z = DomainHandle::Int.int_ideal(2).unwrap();
        let l = DomainHandle::IntLoc(2).loc_ideal(1).unwrap();
        assert_eq!(sum(&z, &l), Err(Error::MixedDomains));
        assert_eq!(
            residual(&z, &DomainHandle::Int.zero_ideal()),
            Err(Error::ZeroIdealResidualDividend)
        );
    }

    #[test]
    fn invertibility_examples() {
        let gi = zi(-1, 1);
        let i = gi
            .ideal_from_gens(&[KElem::int(2), KElem::quad(1, 1)])
            .unwrap();
        let inv = is_invertible_ideal(&i).unwrap();
        assert!(inv.invertible);
        assert_eq!(i, gi.principal(&KElem::quad(1, 1)).unwrap());

        let z2i = zi(-1, 2);
        let j = z2i
            .ideal_from_gens(&[KElem::int(2), KElem::quad(0, 1)])
            .unwrap();
        let inv = is_invertible_ideal(&j).unwrap();
        assert!(!inv.invertible);
        assert!(inv.product.is_subset(&z2i.unit_ideal()).unwrap());
        let c = colon(&j, &j).unwrap();
        assert!(z2i.unit_ideal().is_subset(&c).unwrap());
        assert_ne!(c, z2i.unit_ideal());
        assert!(c.contains(&KElem {
            x: Q::zero(),
            y: Q::new(1, 2)
        }));
        assert_eq!(
            is_invertible_ideal(&z2i.zero_ideal()),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn prufer_and_valuation() {
        assert!(is_prufer_domain(&DomainHandle::Int).unwrap().holds);
        assert!(is_prufer_domain(&zi(-1, 1)).unwrap().holds);
        let v = is_prufer_domain(&zi(-1, 2)).unwrap();
        assert!(!v.holds);
        let w = v.non_invertible.unwrap();
        assert_eq!(w.norm(), Some(2));
        assert!(w.contains(&KElem::int(2)) && w.contains(&KElem::quad(0, 1)));

        assert!(is_valuation_domain(&DomainHandle::IntLoc(2)).unwrap().holds);
        assert!(!is_valuation_domain(&DomainHandle::Int).unwrap().holds);
        let g = is_valuation_domain(&zi(-1, 1)).unwrap();
        assert!(!g.holds && g.witness.is_some());
    }

    #[test]
    fn bezout_traits() {
        let t = traits(&DomainHandle::IntLoc(2)).unwrap();
        assert!(t.is_bezout && t.is_semilocal);
        let t = traits(&zi(-1, 1)).unwrap();
        assert!(t.is_bezout && !t.is_semilocal);
        assert!(!traits(&zi(-5, 1)).unwrap().is_bezout);
        assert!(!traits(&zi(-1, 2)).unwrap().is_bezout);
        assert!(matches!(
            traits(&zi(-101, 1)),
            Err(Error::OutOfTableRange(_))
        ));
    }

    #[test]
    fn canonical_mod_d() {
        let l = DomainHandle::IntLoc(2);
        assert_eq!(l.reduce_mod_d(&KElem::frac(5, 12)), KElem::frac(3, 4));
        assert_eq!(l.reduce_mod_d(&KElem::frac(1, 3)), KElem::zero());
        let z = DomainHandle::Int;
        assert_eq!(z.reduce_mod_d(&KElem::frac(-1, 3)), KElem::frac(2, 3));
    }

    #[test]
    fn parse_specs() {
        assert_eq!(DomainHandle::parse("Z").unwrap(), DomainHandle::Int);
        assert_eq!(
            DomainHandle::parse("Zloc:2").unwrap(),
            DomainHandle::IntLoc(2)
        );
        assert_eq!(
            DomainHandle::parse("quad:-1:2").unwrap().spec(),
            "quad:-1:2"
        );
        assert!(DomainHandle::parse("quad:4:1").is_err());
        assert!(DomainHandle::parse("Zloc:4").is_err());
    }
}
