//! Ideal arithmetic, predicates and localization over finite rings.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::finring::{quotient, Elem, FiniteRing};

pub const DEFAULT_IDEAL_BUDGET: usize = 4096;

#[derive(Clone)]
pub struct FiniteIdeal {
    ring: FiniteRing,
    members: ElemSet,
    gens: Option<Vec<Elem>>,
}

impl PartialEq for FiniteIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.members == other.members
    }
}

impl Eq for FiniteIdeal {}

impl fmt::Debug for FiniteIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self
            .generators()
            .into_iter()
            .map(|g| self.ring.name(g))
            .collect();
        write!(f, "span{{{}}}", gens.join(","))
    }
}

impl FiniteIdeal {
    /// Wraps a member set that is already known to be an ideal.
    pub(crate) fn from_members(ring: &FiniteRing, members: ElemSet) -> Self {
        FiniteIdeal {
            ring: ring.clone(),
            members,
            gens: None,
        }
    }

    /// Checks closure before wrapping.
    pub fn try_from_members(ring: &FiniteRing, members: ElemSet) -> Option<Self> {
        let ideal = Self::from_members(ring, members);
        ideal.is_closed().then_some(ideal)
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Self::from_members(ring, ElemSet::from_iter_len(ring.order(), [ring.zero()]))
    }

    pub fn unit(ring: &FiniteRing) -> Self {
        Self::from_members(ring, ElemSet::full(ring.order()))
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a)
    }

    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn is_whole(&self) -> bool {
        self.members.contains(self.ring.one())
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 1
    }

    pub fn is_subset(&self, other: &FiniteIdeal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// The explicit generators if the ideal was built by `span`, otherwise a
    /// greedy generating set (smallest indices first).
    pub fn generators(&self) -> Vec<Elem> {
        if let Some(g) = &self.gens {
            return g.clone();
        }
        minimal_generators(&self.ring, &self.members)
    }

    fn is_closed(&self) -> bool {
        let r = &self.ring;
        if !self.contains(r.zero()) {
            return false;
        }
        self.members.iter().all(|a| {
            self.members.iter().all(|b| self.contains(r.add(a, b)))
                && r.elements().all(|s| self.contains(r.mul(s, a)))
        })
    }
}

fn minimal_generators(r: &FiniteRing, members: &ElemSet) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut cur = ElemSet::from_iter_len(r.order(), [r.zero()]);
    for a in members.iter() {
        if !cur.contains(a) {
            gens.push(a);
            cur = additive_closure(r, &cur, r.elements().map(|s| r.mul(s, a)));
        }
    }
    gens
}

/// Subgroup generated by `base` (assumed a subgroup) and `seeds`.
fn additive_closure(r: &FiniteRing, base: &ElemSet, seeds: impl Iterator<Item = Elem>) -> ElemSet {
    let mut set = base.clone();
    let mut members: Vec<Elem> = set.iter().collect();
    for s in seeds {
        if set.contains(s) {
            continue;
        }
        let old = members.clone();
        let mut t = s;
        while !set.contains(t) {
            for &x in &old {
                let y = r.add(x, t);
                if set.insert(y) {
                    members.push(y);
                }
            }
            t = r.add(t, s);
        }
    }
    set
}

fn zero_set(r: &FiniteRing) -> ElemSet {
    ElemSet::from_iter_len(r.order(), [r.zero()])
}

/// Least ideal containing `gens`.
pub fn span(r: &FiniteRing, gens: &[Elem]) -> FiniteIdeal {
    let seeds = gens
        .iter()
        .flat_map(|&g| r.elements().map(move |s| r.mul(s, g)));
    FiniteIdeal {
        ring: r.clone(),
        members: additive_closure(r, &zero_set(r), seeds),
        gens: Some(gens.to_vec()),
    }
}

fn same(i: &FiniteIdeal, j: &FiniteIdeal) -> Result<()> {
    if i.ring.same_ring(&j.ring) {
        Ok(())
    } else {
        Err(Error::MixedRings)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeOps {
    pub sum: FiniteIdeal,
    pub intersection: FiniteIdeal,
    pub product: FiniteIdeal,
}

pub fn lattice_ops(i: &FiniteIdeal, j: &FiniteIdeal) -> Result<LatticeOps> {
    Ok(LatticeOps {
        sum: sum(i, j)?,
        intersection: intersection(i, j)?,
        product: product(i, j)?,
    })
}

pub fn sum(i: &FiniteIdeal, j: &FiniteIdeal) -> Result<FiniteIdeal> {
    same(i, j)?;
    let r = &i.ring;
    Ok(FiniteIdeal::from_members(
        r,
        additive_closure(r, &i.members, j.members.iter()),
    ))
}

pub fn intersection(i: &FiniteIdeal, j: &FiniteIdeal) -> Result<FiniteIdeal> {
    same(i, j)?;
    Ok(FiniteIdeal::from_members(
        &i.ring,
        i.members.intersection(&j.members),
    ))
}

pub fn product(i: &FiniteIdeal, j: &FiniteIdeal) -> Result<FiniteIdeal> {
    same(i, j)?;
    let r = &i.ring;
    let seeds = i
        .members
        .iter()
        .flat_map(|a| j.members.iter().map(move |b| r.mul(a, b)));
    Ok(FiniteIdeal::from_members(
        r,
        additive_closure(r, &zero_set(r), seeds),
    ))
}

/// (I : J) = {x : xJ ⊆ I}.
pub fn residual(i: &FiniteIdeal, j: &FiniteIdeal) -> Result<FiniteIdeal> {
    same(i, j)?;
    let r = &i.ring;
    let gens = j.generators();
    let members = ElemSet::from_iter_len(
        r.order(),
        r.elements()
            .filter(|&x| gens.iter().all(|&g| i.contains(r.mul(x, g)))),
    );
    Ok(FiniteIdeal::from_members(r, members))
}

/// {x : x^k ∈ q for some k}.
pub fn radical(q: &FiniteIdeal) -> FiniteIdeal {
    let r = &q.ring;
    let members = ElemSet::from_iter_len(
        r.order(),
        r.elements().filter(|&x| {
            let mut p = x;
            for _ in 0..r.order() {
                if q.contains(p) {
                    return true;
                }
                p = r.mul(p, x);
            }
            false
        }),
    );
    FiniteIdeal::from_members(r, members)
}

fn principal_sets(r: &FiniteRing) -> Vec<ElemSet> {
    let z = zero_set(r);
    r.elements()
        .map(|a| additive_closure(r, &z, r.elements().map(|s| r.mul(s, a))))
        .collect()
}

/// All ideals of `r`, sorted by size then membership bitmap. Memoized on the
/// ring once an enumeration succeeds.
pub fn enumerate_ideals(r: &FiniteRing, budget: usize) -> Result<Vec<FiniteIdeal>> {
    Ok(ideal_sets(r, budget)?
        .iter()
        .map(|s| FiniteIdeal::from_members(r, s.clone()))
        .collect())
}

pub(crate) fn ideal_sets(r: &FiniteRing, budget: usize) -> Result<&Vec<ElemSet>> {
    let cache = r.ideal_cache();
    if let Some(v) = cache.get() {
        if v.len() <= budget {
            return Ok(v);
        }
        return Err(Error::budget("enumerating ideals", budget));
    }
    let principal = principal_sets(r);
    let start = zero_set(r);
    let mut seen: HashSet<ElemSet> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for x in r.elements() {
            if cur.contains(x) || principal[x].is_subset(&cur) {
                continue;
            }
            let next = additive_closure(r, &cur, principal[x].iter());
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::budget("enumerating ideals", budget));
                }
                queue.push(next);
            }
        }
    }
    queue.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
    let _ = cache.set(queue);
    Ok(cache.get().expect("just set"))
}

/// A predicate outcome with an optional human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Decision {
    pub fn yes() -> Self {
        Decision {
            holds: true,
            witness: None,
        }
    }

    pub fn yes_because(w: impl Into<String>) -> Self {
        Decision {
            holds: true,
            witness: Some(w.into()),
        }
    }

    pub fn no(w: impl Into<String>) -> Self {
        Decision {
            holds: false,
            witness: Some(w.into()),
        }
    }
}

pub fn is_prime(i: &FiniteIdeal) -> Decision {
    let r = &i.ring;
    if i.is_whole() {
        return Decision::no("ideal is the whole ring");
    }
    for a in r.elements().filter(|&a| !i.contains(a)) {
        for b in (a..r.order()).filter(|&b| !i.contains(b)) {
            if i.contains(r.mul(a, b)) {
                return Decision::no(format!(
                    "{}*{} = {} in I with neither factor in I",
                    r.name(a),
                    r.name(b),
                    r.name(r.mul(a, b))
                ));
            }
        }
    }
    Decision::yes()
}

pub fn is_maximal(i: &FiniteIdeal) -> Decision {
    let r = &i.ring;
    if i.is_whole() {
        return Decision::no("ideal is the whole ring");
    }
    for x in r.elements().filter(|&x| !i.contains(x)) {
        let bigger = additive_closure(r, &i.members, r.elements().map(|s| r.mul(s, x)));
        if !bigger.contains(r.one()) {
            return Decision::no(format!(
                "I + ({}) is a proper ideal strictly containing I",
                r.name(x)
            ));
        }
    }
    Decision::yes()
}

pub fn is_primary(q: &FiniteIdeal) -> Decision {
    let r = &q.ring;
    if q.is_whole() {
        return Decision::no("ideal is the whole ring");
    }
    let rad = radical(q);
    for x in r.elements().filter(|&x| !q.contains(x)) {
        for y in r.elements().filter(|&y| !rad.contains(y)) {
            if q.contains(r.mul(x, y)) {
                return Decision::no(format!(
                    "{}*{} in q, {} not in q and no power of {} in q",
                    r.name(x),
                    r.name(y),
                    r.name(x),
                    r.name(y)
                ));
            }
        }
    }
    Decision::yes()
}

pub fn is_irreducible(q: &FiniteIdeal, budget: usize) -> Result<Decision> {
    if q.is_whole() {
        return Ok(Decision::no("ideal is the whole ring"));
    }
    let r = &q.ring;
    let above: Vec<&ElemSet> = ideal_sets(r, budget)?
        .iter()
        .filter(|s| q.members.is_subset(s) && **s != q.members)
        .collect();
    for (ai, a) in above.iter().enumerate() {
        for b in &above[ai + 1..] {
            if a.intersection(b) == q.members {
                let a = FiniteIdeal::from_members(r, (*a).clone());
                let b = FiniteIdeal::from_members(r, (*b).clone());
                return Ok(Decision::no(format!("q = {a} ∩ {b}")));
            }
        }
    }
    Ok(Decision::yes())
}

pub fn is_divided(i: &FiniteIdeal, budget: usize) -> Result<Decision> {
    let r = &i.ring;
    for s in ideal_sets(r, budget)? {
        if !s.is_subset(&i.members) && !i.members.is_subset(s) {
            let other = FiniteIdeal::from_members(r, s.clone());
            return Ok(Decision::no(format!("incomparable with {other}")));
        }
    }
    Ok(Decision::yes())
}

pub fn is_nonnil(i: &FiniteIdeal) -> Decision {
    let r = &i.ring;
    match i.members.iter().find(|&a| !r.is_nilpotent(a)) {
        Some(a) => Decision::yes_because(format!("{} is not nilpotent", r.name(a))),
        None => Decision::no("every element is nilpotent"),
    }
}

#[derive(Debug, Clone)]
pub struct IdealPredicates {
    pub is_prime: Decision,
    pub is_maximal: Decision,
    pub is_primary: Decision,
    pub is_irreducible: Decision,
    pub is_divided: Decision,
    pub is_nonnil: Decision,
}

pub fn predicates(i: &FiniteIdeal, budget: usize) -> Result<IdealPredicates> {
    Ok(IdealPredicates {
        is_prime: is_prime(i),
        is_maximal: is_maximal(i),
        is_primary: is_primary(i),
        is_irreducible: is_irreducible(i, budget)?,
        is_divided: is_divided(i, budget)?,
        is_nonnil: is_nonnil(i),
    })
}

/// R_P realized as R / {r : s·r = 0 for some s ∉ P}.
#[derive(Debug, Clone)]
pub struct Localization {
    pub ring: FiniteRing,
    /// Image of each element of the original ring.
    pub map: Vec<Elem>,
    pub kernel: FiniteIdeal,
}

impl Localization {
    pub fn image(&self, i: &FiniteIdeal) -> FiniteIdeal {
        let members =
            ElemSet::from_iter_len(self.ring.order(), i.members.iter().map(|a| self.map[a]));
        FiniteIdeal::from_members(&self.ring, members)
    }
}

pub fn localize_at(p: &FiniteIdeal) -> Result<Localization> {
    if !is_prime(p).holds {
        return Err(Error::NotPrime);
    }
    let r = &p.ring;
    let outside: Vec<Elem> = r.elements().filter(|&s| !p.contains(s)).collect();
    let torsion = ElemSet::from_iter_len(
        r.order(),
        r.elements()
            .filter(|&x| outside.iter().any(|&s| r.mul(s, x) == r.zero())),
    );
    let (ring, map) = quotient(r, &torsion)?;
    let kernel = ElemSet::from_iter_len(r.order(), r.elements().filter(|&x| map[x] == ring.zero()));
    if kernel != torsion {
        return Err(Error::InternalInconsistency(
            "localization kernel differs from the torsion ideal".into(),
        ));
    }
    if let Some(&s) = outside.iter().find(|&&s| !ring.is_unit(map[s])) {
        return Err(Error::InternalInconsistency(format!(
            "{} does not become a unit in the localization",
            r.name(s)
        )));
    }
    Ok(Localization {
        ring,
        map,
        kernel: FiniteIdeal::from_members(r, torsion),
    })
}

/// Returns a generator if the ideal is principal.
pub fn principal_generator(i: &FiniteIdeal) -> Option<Elem> {
    let r = &i.ring;
    let z = zero_set(r);
    i.members
        .iter()
        .find(|&a| additive_closure(r, &z, r.elements().map(|s| r.mul(s, a))) == i.members)
}

/// Complete ideal lattice of a ring with memoized binary operations, used by
/// the exhaustive sweeps. Ideals are addressed by their position in
/// [`enumerate_ideals`] order.
#[derive(Clone)]
pub struct IdealLattice {
    ring: FiniteRing,
    sets: Vec<ElemSet>,
    index: HashMap<ElemSet, u32>,
    principal: Vec<u32>,
    nonnil: Vec<bool>,
    sums: Memo,
    meets: Memo,
    prods: Memo,
    resids: Memo,
}

#[derive(Clone)]
enum Memo {
    Dense(Vec<u32>, usize),
    Sparse(HashMap<(u32, u32), u32>),
}

impl Memo {
    fn new(n: usize) -> Self {
        if n <= 1024 {
            Memo::Dense(vec![u32::MAX; n * n], n)
        } else {
            Memo::Sparse(HashMap::new())
        }
    }

    fn get_or(&mut self, a: u32, b: u32, f: impl FnOnce() -> u32) -> u32 {
        match self {
            Memo::Dense(v, n) => {
                let k = a as usize * *n + b as usize;
                if v[k] == u32::MAX {
                    v[k] = f();
                }
                v[k]
            }
            Memo::Sparse(m) => *m.entry((a, b)).or_insert_with(f),
        }
    }
}

impl IdealLattice {
    pub fn new(r: &FiniteRing, budget: usize) -> Result<Self> {
        let sets = ideal_sets(r, budget)?.clone();
        let index: HashMap<ElemSet, u32> = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        let principal = principal_sets(r).into_iter().map(|s| index[&s]).collect();
        let nil = r.nilpotent_set();
        let nonnil = sets.iter().map(|s| !s.is_subset(&nil)).collect();
        let n = sets.len();
        Ok(IdealLattice {
            ring: r.clone(),
            sets,
            index,
            principal,
            nonnil,
            sums: Memo::new(n),
            meets: Memo::new(n),
            prods: Memo::new(n),
            resids: Memo::new(n),
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, id: u32) -> &ElemSet {
        &self.sets[id as usize]
    }

    pub fn ideal(&self, id: u32) -> FiniteIdeal {
        FiniteIdeal::from_members(&self.ring, self.sets[id as usize].clone())
    }

    pub fn id_of(&self, s: &ElemSet) -> u32 {
        self.index[s]
    }

    pub fn principal(&self, a: Elem) -> u32 {
        self.principal[a]
    }

    pub fn zero_id(&self) -> u32 {
        self.principal[self.ring.zero()]
    }

    pub fn whole_id(&self) -> u32 {
        self.principal[self.ring.one()]
    }

    pub fn is_nonnil(&self, id: u32) -> bool {
        self.nonnil[id as usize]
    }

    pub fn nonnil_ids(&self) -> Vec<u32> {
        (0..self.len() as u32)
            .filter(|&i| self.is_nonnil(i))
            .collect()
    }

    pub fn contains(&self, big: u32, small: u32) -> bool {
        self.sets[small as usize].is_subset(&self.sets[big as usize])
    }

    pub fn sum(&mut self, a: u32, b: u32) -> u32 {
        let (sets, index, ring) = (&self.sets, &self.index, &self.ring);
        self.sums.get_or(a, b, || {
            let s = additive_closure(ring, &sets[a as usize], sets[b as usize].iter());
            index[&s]
        })
    }

    pub fn meet(&mut self, a: u32, b: u32) -> u32 {
        let (sets, index) = (&self.sets, &self.index);
        self.meets.get_or(a, b, || {
            index[&sets[a as usize].intersection(&sets[b as usize])]
        })
    }

    pub fn product(&mut self, a: u32, b: u32) -> u32 {
        let (sets, index, ring) = (&self.sets, &self.index, &self.ring);
        self.prods.get_or(a, b, || {
            let seeds = sets[a as usize]
                .iter()
                .flat_map(|x| sets[b as usize].iter().map(move |y| ring.mul(x, y)));
            index[&additive_closure(ring, &zero_set(ring), seeds)]
        })
    }

    /// (a : b)
    pub fn residual(&mut self, a: u32, b: u32) -> u32 {
        let (sets, index, ring) = (&self.sets, &self.index, &self.ring);
        self.resids.get_or(a, b, || {
            let gens = minimal_generators(ring, &sets[b as usize]);
            let members = ElemSet::from_iter_len(
                ring.order(),
                ring.elements().filter(|&x| {
                    gens.iter()
                        .all(|&g| sets[a as usize].contains(ring.mul(x, g)))
                }),
            );
            index[&members]
        })
    }

    /// Content-style span of a coefficient list as an ideal id.
    pub fn span_of(&mut self, elems: &[Elem]) -> u32 {
        let mut acc = self.zero_id();
        for &e in elems {
            let p = self.principal[e];
            acc = self.sum(acc, p);
        }
        acc
    }

    pub fn describe(&self, id: u32) -> String {
        self.ideal(id).to_string()
    }
}
