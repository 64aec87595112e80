//! Small commutative rings with identity, stored as explicit operation tables.
//!
//! Elements are indices `0..order`. Every constructor here produces a ring
//! whose tables have been checked: the full axiom check is exhaustive for
//! order up to [`VERIFY_LIMIT`], larger rings get the quadratic checks only.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::idealcalc::FiniteIdeal;

pub type Elem = usize;

/// Default cap on constructed ring order.
pub const DEFAULT_CAP: usize = 256;
/// Rings up to this order get the cubic (associativity/distributivity) check.
pub const VERIFY_LIMIT: usize = 64;
/// Hard ceiling on any table, independent of the configurable cap.
pub const HARD_LIMIT: usize = 4096;

#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<RingData>,
}

struct RingData {
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    label: String,
    names: Vec<String>,
    name_index: HashMap<String, Elem>,
    pub(crate) ideals: OnceLock<Vec<ElemSet>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.inner.label)
            .field("order", &self.inner.order)
            .finish()
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Builds a ring from raw tables (row-major, `a * order + b`).
    pub fn from_tables(
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        label: impl Into<String>,
        names: Vec<String>,
    ) -> Result<Self> {
        let order = names.len();
        if order < 2 {
            return Err(Error::InvalidOrder(order as u64));
        }
        if order > HARD_LIMIT {
            return Err(Error::TooLarge {
                order: order as u128,
                cap: HARD_LIMIT,
            });
        }
        if add.len() != order * order || mul.len() != order * order {
            return Err(Error::AxiomViolation("table size mismatch".into()));
        }
        if add.iter().chain(&mul).any(|&e| e >= order) || zero >= order || one >= order {
            return Err(Error::AxiomViolation("table entry out of range".into()));
        }
        if zero == one {
            return Err(Error::AxiomViolation("identity equals zero".into()));
        }
        let mut neg = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if add[a * order + b] == zero {
                    neg[a] = b;
                    break;
                }
            }
            if neg[a] == usize::MAX {
                return Err(Error::AxiomViolation(format!(
                    "element {} has no additive inverse",
                    names[a]
                )));
            }
        }
        let name_index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let ring = FiniteRing {
            inner: Arc::new(RingData {
                order,
                add,
                mul,
                neg,
                zero,
                one,
                label: label.into(),
                names,
                name_index,
                ideals: OnceLock::new(),
            }),
        };
        ring.verify_axioms()?;
        Ok(ring)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.order
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.inner.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.inner.one
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.inner.add[a * self.inner.order + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.inner.mul[a * self.inner.order + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.inner.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut k: usize) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `k * a` in the additive group.
    pub fn times(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(self.zero(), |acc, _| self.add(acc, a))
    }

    pub fn additive_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.zero() {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.inner.names[a]
    }

    /// Accepts a printed element name or a plain index.
    pub fn parse_elem(&self, s: &str) -> Option<Elem> {
        let s = s.trim();
        if let Some(&e) = self.inner.name_index.get(s) {
            return Some(e);
        }
        s.parse::<usize>().ok().filter(|&i| i < self.order())
    }

    pub fn same_ring(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub(crate) fn ideal_cache(&self) -> &OnceLock<Vec<ElemSet>> {
        &self.inner.ideals
    }

    /// Checks the commutative ring axioms. Associativity and distributivity
    /// are only checked exhaustively up to [`VERIFY_LIMIT`].
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order();
        let (z, o) = (self.zero(), self.one());
        let fail = |what: &str, args: &[Elem]| {
            let names: Vec<&str> = args.iter().map(|&a| self.name(a)).collect();
            Err(Error::AxiomViolation(format!("{what} fails at {names:?}")))
        };
        for a in 0..n {
            if self.add(a, z) != a {
                return fail("additive identity", &[a]);
            }
            if self.mul(a, o) != a {
                return fail("multiplicative identity", &[a]);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", &[a, b]);
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("multiplicative commutativity", &[a, b]);
                }
            }
        }
        if n > VERIFY_LIMIT {
            return Ok(());
        }
        for a in 0..n {
            for b in 0..n {
                let ab_sum = self.add(a, b);
                let ab_prod = self.mul(a, b);
                for c in 0..n {
                    if self.add(ab_sum, c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", &[a, b, c]);
                    }
                    if self.mul(ab_prod, c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity", &[a, b, c]);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(ab_prod, self.mul(a, c)) {
                        return fail("distributivity", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_nilpotent(&self, a: Elem) -> bool {
        self.pow(a, self.order()) == self.zero()
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(a, b) == self.one())
    }

    /// Zero counts as a zerodivisor.
    pub fn is_zerodivisor(&self, a: Elem) -> bool {
        self.elements()
            .any(|b| b != self.zero() && self.mul(a, b) == self.zero())
    }

    pub fn nilpotent_set(&self) -> ElemSet {
        ElemSet::from_iter_len(
            self.order(),
            self.elements().filter(|&a| self.is_nilpotent(a)),
        )
    }

    pub fn zerodivisor_set(&self) -> ElemSet {
        ElemSet::from_iter_len(
            self.order(),
            self.elements().filter(|&a| self.is_zerodivisor(a)),
        )
    }

    pub fn unit_set(&self) -> ElemSet {
        ElemSet::from_iter_len(self.order(), self.elements().filter(|&a| self.is_unit(a)))
    }
}

fn check_cap(order: u128, cap: usize) -> Result<usize> {
    let cap = cap.min(HARD_LIMIT);
    if order > cap as u128 {
        return Err(Error::TooLarge { order, cap });
    }
    Ok(order as usize)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// ℤ/nℤ.
pub fn make_zn(n: u64) -> Result<FiniteRing> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    let n = check_cap(n as u128, HARD_LIMIT)?;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push((a + b) % n);
            mul.push((a * b) % n);
        }
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    FiniteRing::from_tables(add, mul, 0, 1, format!("Zn:{n}"), names)
}

fn var_name(i: usize, nvars: usize) -> String {
    const LETTERS: [&str; 6] = ["x", "y", "z", "w", "u", "v"];
    if nvars <= LETTERS.len() {
        LETTERS[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// F_p[x_1..x_k]/(x_1^e_1, …, x_k^e_k).
///
/// Monomials are indexed in mixed radix with `x_1` varying fastest; an
/// element's index is `Σ c_j p^j` over monomial indices `j`.
pub fn make_truncated_poly(p: u64, exps: &[u32], cap: usize) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::InvalidModulus(p));
    }
    if exps.contains(&0) {
        return Err(Error::InvalidExponents(
            "exponents must be at least 1".into(),
        ));
    }
    let nmono: u128 = exps.iter().map(|&e| e as u128).product();
    if nmono > 64 {
        return Err(Error::TooLarge {
            order: u128::MAX,
            cap,
        });
    }
    let order = (p as u128).checked_pow(nmono as u32).unwrap_or(u128::MAX);
    let order = check_cap(order, cap)?;
    let nmono = nmono as usize;
    let p = p as usize;

    let exponents: Vec<Vec<u32>> = (0..nmono)
        .map(|mut j| {
            exps.iter()
                .map(|&e| {
                    let v = (j % e as usize) as u32;
                    j /= e as usize;
                    v
                })
                .collect()
        })
        .collect();
    let mono_index = |ev: &[u32]| -> usize {
        ev.iter()
            .zip(exps)
            .rev()
            .fold(0usize, |acc, (&v, &e)| acc * e as usize + v as usize)
    };
    let mut mono_mul = vec![None; nmono * nmono];
    for i in 0..nmono {
        for j in 0..nmono {
            let ev: Vec<u32> = exponents[i]
                .iter()
                .zip(&exponents[j])
                .map(|(a, b)| a + b)
                .collect();
            if ev.iter().zip(exps).all(|(&v, &e)| v < e) {
                mono_mul[i * nmono + j] = Some(mono_index(&ev));
            }
        }
    }
    let coeffs: Vec<Vec<usize>> = (0..order)
        .map(|mut x| {
            (0..nmono)
                .map(|_| {
                    let c = x % p;
                    x /= p;
                    c
                })
                .collect()
        })
        .collect();
    let encode = |cs: &[usize]| cs.iter().rev().fold(0usize, |acc, &c| acc * p + c);

    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    let mut buf = vec![0usize; nmono];
    for a in 0..order {
        for b in 0..order {
            let s: Vec<usize> = coeffs[a]
                .iter()
                .zip(&coeffs[b])
                .map(|(x, y)| (x + y) % p)
                .collect();
            add.push(encode(&s));
            buf.iter_mut().for_each(|c| *c = 0);
            for i in 0..nmono {
                if coeffs[a][i] == 0 {
                    continue;
                }
                for j in 0..nmono {
                    if let Some(k) = mono_mul[i * nmono + j] {
                        buf[k] = (buf[k] + coeffs[a][i] * coeffs[b][j]) % p;
                    }
                }
            }
            mul.push(encode(&buf));
        }
    }

    let mono_names: Vec<String> = exponents
        .iter()
        .map(|ev| {
            let mut s = String::new();
            for (vi, &v) in ev.iter().enumerate() {
                match v {
                    0 => {}
                    1 => s.push_str(&var_name(vi, exps.len())),
                    _ => s.push_str(&format!("{}^{}", var_name(vi, exps.len()), v)),
                }
            }
            s
        })
        .collect();
    let names = coeffs
        .iter()
        .map(|cs| {
            let terms: Vec<String> = cs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| match (c, mono_names[j].is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono_names[j].clone(),
                    (_, false) => format!("{c}{}", mono_names[j]),
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            }
        })
        .collect();
    let exps_label: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
    FiniteRing::from_tables(
        add,
        mul,
        0,
        1,
        format!("trunc:{p}:{}", exps_label.join(",")),
        names,
    )
}

/// A finite module over a finite ring, given by tables.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    order: usize,
    add: Vec<Elem>,
    act: Vec<Elem>,
    zero: Elem,
    label: String,
    names: Vec<String>,
}

impl FiniteModule {
    /// `act[a * order + m]` is `a·m`. The tables are checked against `base`.
    pub fn from_tables(
        base: &FiniteRing,
        add: Vec<Elem>,
        act: Vec<Elem>,
        zero: Elem,
        label: impl Into<String>,
        names: Vec<String>,
    ) -> Result<Self> {
        let order = names.len();
        if order == 0 || add.len() != order * order || act.len() != base.order() * order {
            return Err(Error::InvalidModule("table size mismatch".into()));
        }
        if add.iter().chain(&act).any(|&e| e >= order) || zero >= order {
            return Err(Error::InvalidModule("table entry out of range".into()));
        }
        let m = FiniteModule {
            order,
            add,
            act,
            zero,
            label: label.into(),
            names,
        };
        m.verify(base)?;
        Ok(m)
    }

    /// The ring as a module over itself.
    pub fn regular(base: &FiniteRing) -> Self {
        let n = base.order();
        let mut add = Vec::with_capacity(n * n);
        let mut act = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(base.add(a, b));
                act.push(base.mul(a, b));
            }
        }
        FiniteModule {
            order: n,
            add,
            act,
            zero: base.zero(),
            label: "self".into(),
            names: base.elements().map(|a| base.name(a).to_string()).collect(),
        }
    }

    /// ℤ/k with `a·m = (index(a)·m) mod k`. Only valid when reading element
    /// indices as integers is a ring map to ℤ/k (e.g. reduction ℤ/n → ℤ/k
    /// for k | n); anything else is rejected by the module check.
    pub fn cyclic(base: &FiniteRing, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidModule("cyclic module needs k >= 1".into()));
        }
        let mut add = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                add.push((a + b) % k);
            }
        }
        let mut act = Vec::with_capacity(base.order() * k);
        for a in base.elements() {
            for m in 0..k {
                act.push((a % k) * m % k);
            }
        }
        Self::from_tables(
            base,
            add,
            act,
            0,
            format!("Zn:{k}"),
            (0..k).map(|i| i.to_string()).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn act(&self, r: Elem, m: Elem) -> Elem {
        self.act[r * self.order + m]
    }

    pub fn verify(&self, base: &FiniteRing) -> Result<()> {
        let n = self.order;
        let bad = |s: String| Err(Error::InvalidModule(s));
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return bad(format!("zero is not an additive identity at {a}"));
            }
            if !(0..n).any(|b| self.add(a, b) == self.zero) {
                return bad(format!("{a} has no additive inverse"));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return bad(format!("addition not commutative at ({a},{b})"));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return bad(format!("addition not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        for m in 0..n {
            if self.act(base.one(), m) != m {
                return bad(format!("identity does not act trivially on {m}"));
            }
        }
        for r in base.elements() {
            for s in base.elements() {
                for m in 0..n {
                    if self.act(base.add(r, s), m) != self.add(self.act(r, m), self.act(s, m)) {
                        return bad(format!("(r+s)m != rm+sm at r={r}, s={s}, m={m}"));
                    }
                    if self.act(base.mul(r, s), m) != self.act(r, self.act(s, m)) {
                        return bad(format!("(rs)m != r(sm) at r={r}, s={s}, m={m}"));
                    }
                }
            }
            for m in 0..n {
                for m2 in 0..n {
                    if self.act(r, self.add(m, m2)) != self.add(self.act(r, m), self.act(r, m2)) {
                        return bad(format!("r(m+m') != rm+rm' at r={r}, m={m}, m'={m2}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A ⋉ M with `(r1,m1)(r2,m2) = (r1 r2, r1 m2 + r2 m1)`. Carrier index is
/// `a * |M| + m`.
pub fn make_trivial_ext(a: &FiniteRing, m: &FiniteModule, cap: usize) -> Result<FiniteRing> {
    m.verify(a)?;
    let order = check_cap(a.order() as u128 * m.order() as u128, cap)?;
    let mo = m.order();
    let split = |x: Elem| (x / mo, x % mo);
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (r1, m1) = split(x);
        for y in 0..order {
            let (r2, m2) = split(y);
            add.push(a.add(r1, r2) * mo + m.add(m1, m2));
            let r = a.mul(r1, r2);
            let mm = m.add(m.act(r1, m2), m.act(r2, m1));
            mul.push(r * mo + mm);
        }
    }
    let names = (0..order)
        .map(|x| {
            let (r, mm) = split(x);
            format!("({},{})", a.name(r), m.names[mm])
        })
        .collect();
    FiniteRing::from_tables(
        add,
        mul,
        a.zero() * mo + m.zero,
        a.one() * mo + m.zero,
        format!("triv:{}|{}", a.label(), m.label()),
        names,
    )
}

/// R × S with componentwise operations.
pub fn make_product(r: &FiniteRing, s: &FiniteRing, cap: usize) -> Result<FiniteRing> {
    let order = check_cap(r.order() as u128 * s.order() as u128, cap)?;
    let so = s.order();
    let split = |x: Elem| (x / so, x % so);
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a1, b1) = split(x);
        for y in 0..order {
            let (a2, b2) = split(y);
            add.push(r.add(a1, a2) * so + s.add(b1, b2));
            mul.push(r.mul(a1, a2) * so + s.mul(b1, b2));
        }
    }
    let names = (0..order)
        .map(|x| {
            let (a, b) = split(x);
            format!("({},{})", r.name(a), s.name(b))
        })
        .collect();
    FiniteRing::from_tables(
        add,
        mul,
        r.zero() * so + s.zero(),
        r.one() * so + s.one(),
        format!("prod:{}|{}", wrap_label(r.label()), s.label()),
        names,
    )
}

// A nested left operand needs parentheses to stay unambiguous.
fn wrap_label(label: &str) -> String {
    if label.contains('|') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// Surjection onto R/I. Coset representatives are the smallest indices.
pub fn quotient(r: &FiniteRing, ideal: &ElemSet) -> Result<(FiniteRing, Vec<Elem>)> {
    let n = r.order();
    if ideal.contains(r.one()) {
        return Err(Error::InvalidOrder(1));
    }
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for i in ideal.iter() {
            class[r.add(x, i)] = c;
        }
    }
    let q = reps.len();
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            add.push(class[r.add(a, b)]);
            mul.push(class[r.mul(a, b)]);
        }
    }
    let names = reps.iter().map(|&a| format!("[{}]", r.name(a))).collect();
    let gens: Vec<&str> = ideal.iter().map(|i| r.name(i)).collect();
    let ring = FiniteRing::from_tables(
        add,
        mul,
        class[r.zero()],
        class[r.one()],
        format!("({})/({})", r.label(), gens.join(",")),
        names,
    )?;
    Ok((ring, class))
}

/// Nil(R) as an ideal.
pub fn nilradical(r: &FiniteRing) -> FiniteIdeal {
    FiniteIdeal::from_members(r, r.nilpotent_set())
}

pub fn zerodivisors(r: &FiniteRing) -> ElemSet {
    r.zerodivisor_set()
}

pub fn units(r: &FiniteRing) -> ElemSet {
    r.unit_set()
}

/// φ(R) ≅ R/K with K = {x : s·x = 0 for some s ∉ Nil(R)}.
pub fn phi_image(r: &FiniteRing) -> Result<(FiniteRing, Vec<Elem>, ElemSet)> {
    let check = crate::phiclass::finite_phi_check(r)?;
    if !check.is_phi {
        return Err(Error::PhiRingRequired(check.witness));
    }
    let nil = r.nilpotent_set();
    let kernel = ElemSet::from_iter_len(
        r.order(),
        r.elements().filter(|&x| {
            r.elements()
                .any(|s| !nil.contains(s) && r.mul(s, x) == r.zero())
        }),
    );
    let (q, map) = quotient(r, &kernel)?;
    Ok((q, map, kernel))
}

pub mod iso {
    //! Isomorphism testing for tiny rings (test support).

    use super::{Elem, FiniteRing};
    use crate::idealcalc::enumerate_ideals;

    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct Invariants {
        pub order: usize,
        pub units: usize,
        pub nilpotents: usize,
        pub ideals: Option<usize>,
    }

    pub fn invariants(r: &FiniteRing) -> Invariants {
        Invariants {
            order: r.order(),
            units: r.unit_set().count(),
            nilpotents: r.nilpotent_set().count(),
            ideals: enumerate_ideals(r, 4096).ok().map(|v| v.len()),
        }
    }

    fn signature(r: &FiniteRing, a: Elem) -> (usize, bool, bool, bool) {
        (
            r.additive_order(a),
            r.is_unit(a),
            r.is_nilpotent(a),
            r.mul(a, a) == a,
        )
    }

    /// Returns a ring isomorphism `r → s` as an index map, if one exists.
    pub fn find_isomorphism(r: &FiniteRing, s: &FiniteRing) -> Option<Vec<Elem>> {
        if invariants(r) != invariants(s) {
            return None;
        }
        // Greedy additive generators of r.
        let mut gens = Vec::new();
        let mut span = vec![r.zero()];
        let mut in_span = vec![false; r.order()];
        in_span[r.zero()] = true;
        for a in r.elements() {
            if in_span[a] {
                continue;
            }
            gens.push(a);
            let old = span.clone();
            let mut t = a;
            while !in_span[t] {
                for &x in &old {
                    let y = r.add(x, t);
                    if !in_span[y] {
                        in_span[y] = true;
                        span.push(y);
                    }
                }
                t = r.add(t, a);
            }
        }
        let mut map = vec![usize::MAX; r.order()];
        map[r.zero()] = s.zero();
        extend(r, s, &gens, 0, &mut map)
    }

    fn extend(
        r: &FiniteRing,
        s: &FiniteRing,
        gens: &[Elem],
        depth: usize,
        map: &mut Vec<Elem>,
    ) -> Option<Vec<Elem>> {
        if depth == gens.len() {
            let ok = r.elements().all(|a| {
                r.elements()
                    .all(|b| map[r.mul(a, b)] == s.mul(map[a], map[b]))
            }) && map[r.one()] == s.one();
            return ok.then(|| map.clone());
        }
        let g = gens[depth];
        let sig = signature(r, g);
        let used: Vec<bool> = {
            let mut u = vec![false; s.order()];
            for &v in map.iter().filter(|&&v| v != usize::MAX) {
                u[v] = true;
            }
            u
        };
        for cand in s.elements() {
            if used[cand] || signature(s, cand) != sig {
                continue;
            }
            let saved = map.clone();
            if assign_coset(r, s, g, cand, map) {
                if let Some(found) = extend(r, s, gens, depth + 1, map) {
                    return Some(found);
                }
            }
            *map = saved;
        }
        None
    }

    // Extends the additive map from the current subgroup to subgroup + <g>.
    fn assign_coset(r: &FiniteRing, s: &FiniteRing, g: Elem, img: Elem, map: &mut [Elem]) -> bool {
        let known: Vec<Elem> = r.elements().filter(|&a| map[a] != usize::MAX).collect();
        let mut t = g;
        let mut ti = img;
        loop {
            if map[t] != usize::MAX {
                return map[t] == ti;
            }
            for &x in &known {
                let y = r.add(x, t);
                let yi = s.add(map[x], ti);
                if map[y] != usize::MAX && map[y] != yi {
                    return false;
                }
                map[y] = yi;
            }
            t = r.add(t, g);
            ti = s.add(ti, img);
        }
    }
}
