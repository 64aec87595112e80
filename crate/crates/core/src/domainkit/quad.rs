//! Quadratic orders ℤ[θ] and their fractional ideals as 2×2 Hermite normal
//! forms over the basis (1, θ).

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// The order of conductor `f` in ℚ(√d), presented as ℤ[θ] with θ = f·ω and
/// θ² = tθ − n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadOrder {
    pub d: i64,
    pub f: u64,
    pub t: i128,
    pub n: i128,
}

pub type QuadInt = (i128, i128);

pub fn is_squarefree(d: i64) -> bool {
    let m = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= m {
        if m.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadOrder {
    pub fn new(d: i64, f: u64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidDomain(format!(
                "d = {d} must be squarefree and not 0 or 1"
            )));
        }
        if f == 0 {
            return Err(Error::InvalidDomain("conductor must be at least 1".into()));
        }
        let (fi, di) = (f as i128, d as i128);
        let (t, n) = if d.rem_euclid(4) == 1 {
            (fi, -fi * fi * (di - 1) / 4)
        } else {
            (0, -fi * fi * di)
        };
        Ok(QuadOrder { d, f, t, n })
    }

    pub fn is_maximal(&self) -> bool {
        self.f == 1
    }

    pub fn is_imaginary(&self) -> bool {
        self.d < 0
    }

    /// Discriminant of ℤ[θ], i.e. f²·disc(O_K).
    pub fn discriminant(&self) -> i128 {
        self.t * self.t - 4 * self.n
    }

    pub fn mul(&self, a: QuadInt, b: QuadInt) -> QuadInt {
        (
            a.0 * b.0 - self.n * a.1 * b.1,
            a.0 * b.1 + a.1 * b.0 + self.t * a.1 * b.1,
        )
    }

    pub fn conj(&self, a: QuadInt) -> QuadInt {
        (a.0 + self.t * a.1, -a.1)
    }

    pub fn norm(&self, a: QuadInt) -> i128 {
        a.0 * a.0 + self.t * a.0 * a.1 + self.n * a.1 * a.1
    }

    /// Real embedding of θ and its conjugate (real fields only).
    fn theta_real(&self) -> (f64, f64) {
        let s = (self.d as f64).sqrt();
        let f = self.f as f64;
        if self.d.rem_euclid(4) == 1 {
            (f * (1.0 + s) / 2.0, f * (1.0 - s) / 2.0)
        } else {
            (f * s, -f * s)
        }
    }

    pub fn theta_name(&self) -> String {
        let f = if self.f == 1 {
            String::new()
        } else {
            self.f.to_string()
        };
        let root = if self.d == -1 {
            "i".to_string()
        } else {
            format!("√{}", self.d)
        };
        if self.d.rem_euclid(4) == 1 {
            format!("{f}(1+{root})/2")
        } else {
            format!("{f}{root}")
        }
    }

    pub fn fmt_elem(&self, a: QuadInt) -> String {
        let th = self.theta_name();
        let th = if th.contains('/') {
            format!("({th})")
        } else {
            th
        };
        match a {
            (x, 0) => x.to_string(),
            (0, 1) => th,
            (0, -1) => format!("-{th}"),
            (0, y) => format!("{y}{th}"),
            (x, 1) => format!("{x}+{th}"),
            (x, -1) => format!("{x}-{th}"),
            (x, y) if y < 0 => format!("{x}{y}{th}"),
            (x, y) => format!("{x}+{y}{th}"),
        }
    }

    /// Fundamental unit ε > 1 of a real order, as a float, found by the
    /// smallest y ≥ 1 making x² + txy + ny² = ±1 solvable.
    pub fn fundamental_unit(&self, max_y: i128) -> Option<(QuadInt, f64)> {
        if self.is_imaginary() {
            return None;
        }
        let disc = self.discriminant();
        let (th, _) = self.theta_real();
        for y in 1..=max_y {
            for sign in [4i128, -4] {
                let s2 = disc * y * y + sign;
                if s2 < 0 {
                    continue;
                }
                let s = isqrt(s2);
                if s * s != s2 {
                    continue;
                }
                for root in [-self.t * y + s, -self.t * y - s] {
                    if root.rem_euclid(2) != 0 {
                        continue;
                    }
                    let x = root / 2;
                    let v = x as f64 + y as f64 * th;
                    if v.abs() > 1.0 + 1e-9 {
                        return Some(((x, y), v.abs()));
                    }
                }
            }
        }
        None
    }
}

pub fn isqrt(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Full-rank sublattice of ℤ² in Hermite normal form: basis (a,0), (b,c)
/// with a, c > 0 and 0 ≤ b < a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hnf {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl Hnf {
    /// HNF of the lattice spanned by `vecs`; `None` if the rank is below 2.
    pub fn from_vectors(vecs: &[QuadInt]) -> Option<Hnf> {
        let mut vs: Vec<QuadInt> = vecs.iter().copied().filter(|v| *v != (0, 0)).collect();
        // Euclid on the second coordinate.
        loop {
            let pivot = vs
                .iter()
                .enumerate()
                .filter(|(_, v)| v.1 != 0)
                .min_by_key(|(_, v)| v.1.abs())
                .map(|(i, _)| i);
            let pi = pivot?;
            let p = vs[pi];
            let mut changed = false;
            for (i, v) in vs.iter_mut().enumerate() {
                if i != pi && v.1 != 0 {
                    let q = Integer::div_floor(&v.1, &p.1);
                    *v = (v.0 - q * p.0, v.1 - q * p.1);
                    changed = true;
                }
            }
            if !changed {
                let mut w = p;
                if w.1 < 0 {
                    w = (-w.0, -w.1);
                }
                let a = vs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != pi)
                    .fold(0i128, |g, (_, v)| g.gcd(&v.0));
                if a == 0 {
                    return None;
                }
                return Some(Hnf {
                    a,
                    b: w.0.rem_euclid(a),
                    c: w.1,
                });
            }
        }
    }

    pub fn basis(&self) -> [QuadInt; 2] {
        [(self.a, 0), (self.b, self.c)]
    }

    pub fn contains(&self, v: QuadInt) -> bool {
        if v.1 % self.c != 0 {
            return false;
        }
        let k = v.1 / self.c;
        (v.0 - k * self.b) % self.a == 0
    }

    /// Index in ℤ².
    pub fn det(&self) -> i128 {
        self.a * self.c
    }

    pub fn scale(&self, k: i128) -> Hnf {
        Hnf {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
        }
    }

    pub fn sum(&self, other: &Hnf) -> Hnf {
        let [u, v] = self.basis();
        let [w, x] = other.basis();
        Hnf::from_vectors(&[u, v, w, x]).expect("sum of full-rank lattices")
    }

    pub fn intersection(&self, other: &Hnf) -> Hnf {
        // Second coordinates: multiples of lcm(c1,c2) whose first-coordinate
        // congruences are simultaneously solvable.
        let cl = self.c.lcm(&other.c);
        let g = self.a.gcd(&other.a);
        let e = (cl / self.c) * self.b - (cl / other.c) * other.b;
        let c = cl * (g / g.gcd(&e));
        let a = self.a.lcm(&other.a);
        let r1 = (c / self.c) * self.b;
        let r2 = (c / other.c) * other.b;
        let (x0, _) = crt(r1, self.a, r2, other.a).expect("compatible by choice of c");
        Hnf {
            a,
            b: x0.rem_euclid(a),
            c,
        }
    }

    /// Closed under multiplication by θ?
    pub fn is_ideal_of(&self, o: &QuadOrder) -> bool {
        self.basis()
            .iter()
            .all(|&v| self.contains(o.mul((0, 1), v)))
    }
}

impl fmt::Display for Hnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; 0 {}]", self.a, self.b, self.c)
    }
}

/// x ≡ r1 (mod m1), x ≡ r2 (mod m2).
pub fn crt(r1: i128, m1: i128, r2: i128, m2: i128) -> Option<(i128, i128)> {
    let g = m1.gcd(&m2);
    if (r2 - r1).rem_euclid(g) != 0 {
        return None;
    }
    let l = m1.lcm(&m2);
    let m1g = m1 / g;
    let m2g = m2 / g;
    let inv = mod_inverse(m1g.rem_euclid(m2g), m2g).unwrap_or(0);
    let k = (((r2 - r1) / g).rem_euclid(m2g) * inv).rem_euclid(m2g.max(1));
    Some(((r1 + m1 * k).rem_euclid(l), l))
}

pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    if m == 1 {
        return Some(0);
    }
    let e = a.extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// A nonzero fractional ideal `lattice / den`, canonical when
/// gcd(den, a, b, c) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FracIdeal {
    pub den: i128,
    pub lattice: Hnf,
}

impl FracIdeal {
    pub fn new(lattice: Hnf, den: i128) -> FracIdeal {
        let g = den.gcd(&lattice.a).gcd(&lattice.b).gcd(&lattice.c);
        FracIdeal {
            den: den / g,
            lattice: Hnf {
                a: lattice.a / g,
                b: lattice.b / g,
                c: lattice.c / g,
            },
        }
    }

    pub fn integral(lattice: Hnf) -> FracIdeal {
        FracIdeal::new(lattice, 1)
    }

    pub fn whole() -> FracIdeal {
        FracIdeal::integral(Hnf { a: 1, b: 0, c: 1 })
    }

    /// Ideal generated by integral elements.
    pub fn from_generators(o: &QuadOrder, gens: &[QuadInt]) -> Option<FracIdeal> {
        let vecs: Vec<QuadInt> = gens.iter().flat_map(|&g| [g, o.mul(g, (0, 1))]).collect();
        Hnf::from_vectors(&vecs).map(FracIdeal::integral)
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Index of an integral ideal (its norm for ideals of ℤ[θ]).
    pub fn norm_num(&self) -> i128 {
        self.lattice.det()
    }

    /// Membership of (x + yθ) / q.
    pub fn contains(&self, v: QuadInt, q: i128) -> bool {
        // v/q ∈ L/den  ⟺  v·den ∈ q·L ... compare over common denominator
        let l = self.den.lcm(&q);
        let vs = (v.0 * (l / q), v.1 * (l / q));
        self.lattice.scale(l / self.den).contains(vs)
    }

    fn common(&self, other: &FracIdeal) -> (Hnf, Hnf, i128) {
        let l = self.den.lcm(&other.den);
        (
            self.lattice.scale(l / self.den),
            other.lattice.scale(l / other.den),
            l,
        )
    }

    pub fn sum(&self, other: &FracIdeal) -> FracIdeal {
        let (a, b, l) = self.common(other);
        FracIdeal::new(a.sum(&b), l)
    }

    pub fn intersection(&self, other: &FracIdeal) -> FracIdeal {
        let (a, b, l) = self.common(other);
        FracIdeal::new(a.intersection(&b), l)
    }

    pub fn product(&self, other: &FracIdeal, o: &QuadOrder) -> FracIdeal {
        let mut vecs = Vec::with_capacity(4);
        for u in self.lattice.basis() {
            for v in other.lattice.basis() {
                vecs.push(o.mul(u, v));
            }
        }
        let h = Hnf::from_vectors(&vecs).expect("product of nonzero ideals");
        FracIdeal::new(h, self.den * other.den)
    }

    /// {x ∈ K : x·other ⊆ self}.
    pub fn colon(&self, other: &FracIdeal, o: &QuadOrder) -> FracIdeal {
        let mut acc: Option<FracIdeal> = None;
        for w in other.lattice.basis() {
            // w/den_other inverted is den_other·w'/N(w)
            let nw = o.norm(w).abs();
            let wc = o.conj(w);
            let wc = if o.norm(w) < 0 { (-wc.0, -wc.1) } else { wc };
            let vecs: Vec<QuadInt> = self
                .lattice
                .basis()
                .iter()
                .map(|&u| {
                    let p = o.mul(u, wc);
                    (p.0 * other.den, p.1 * other.den)
                })
                .collect();
            let h = Hnf::from_vectors(&vecs).expect("nonzero");
            let part = FracIdeal::new(h, nw * self.den);
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersection(&part),
            });
        }
        acc.expect("two basis vectors")
    }

    pub fn contains_ideal(&self, other: &FracIdeal) -> bool {
        self.sum(other) == *self
    }

    pub fn generators_string(&self, o: &QuadOrder) -> String {
        let [u, v] = self.lattice.basis();
        let body = format!("({}, {})", o.fmt_elem(u), o.fmt_elem(v));
        if self.den == 1 {
            body
        } else {
            format!("{body}/{}", self.den)
        }
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.lattice)
        } else {
            write!(f, "{}/{}", self.lattice, self.den)
        }
    }
}

/// All integral ideals of norm at most `bound`, ordered by (norm, a, b, c).
pub fn ideals_up_to_norm(o: &QuadOrder, bound: i128) -> Vec<FracIdeal> {
    let mut out = Vec::new();
    for norm in 1..=bound {
        for a in 1..=norm {
            if norm % a != 0 {
                continue;
            }
            let c = norm / a;
            for b in 0..a {
                let h = Hnf { a, b, c };
                if h.is_ideal_of(o) {
                    out.push(FracIdeal::integral(h));
                }
            }
        }
    }
    out
}

/// A generator of an integral ideal, if it is principal.
pub fn principal_generator(o: &QuadOrder, ideal: &FracIdeal) -> Option<QuadInt> {
    assert!(ideal.is_integral());
    let norm = ideal.norm_num();
    let disc = o.discriminant();
    let y_bound: i128 = if o.is_imaginary() {
        isqrt(4 * norm / (-disc)) + 1
    } else {
        let (_, eps) = o.fundamental_unit(10_000_000)?;
        let r = (norm as f64 * eps).sqrt();
        let (th, thc) = o.theta_real();
        (2.0 * r / (th - thc).abs()).ceil() as i128 + 1
    };
    for y in -y_bound..=y_bound {
        let signs: &[i128] = if o.is_imaginary() { &[1] } else { &[1, -1] };
        for &sg in signs {
            // x² + t y x + (n y² − sg·norm) = 0
            let s2 = o.t * o.t * y * y - 4 * (o.n * y * y - sg * norm);
            if s2 < 0 {
                continue;
            }
            let s = isqrt(s2);
            if s * s != s2 {
                continue;
            }
            for root in [-o.t * y + s, -o.t * y - s] {
                if root.rem_euclid(2) != 0 {
                    continue;
                }
                let cand = (root / 2, y);
                if ideal.lattice.contains(cand) && o.norm(cand).abs() == norm {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Class number of a maximal order from the ideals of norm at most the
/// Minkowski bound, grouped by I ~ J ⟺ I·J' principal.
pub fn class_number(o: &QuadOrder) -> Result<usize> {
    if !o.is_maximal() {
        return Err(Error::InvalidDomain(
            "class numbers are computed for maximal orders only".into(),
        ));
    }
    let disc = o.discriminant() as f64;
    let bound = if o.is_imaginary() {
        (2.0 / std::f64::consts::PI) * disc.abs().sqrt()
    } else {
        0.5 * disc.sqrt()
    };
    let ideals = ideals_up_to_norm(o, bound.floor() as i128);
    let mut reps: Vec<FracIdeal> = Vec::new();
    for i in ideals {
        let is_new = reps.iter().all(|r| {
            let rc = conjugate(o, r);
            principal_generator(o, &i.product(&rc, o)).is_none()
        });
        if is_new {
            reps.push(i);
        }
    }
    Ok(reps.len())
}

pub fn conjugate(o: &QuadOrder, i: &FracIdeal) -> FracIdeal {
    let vecs: Vec<QuadInt> = i.lattice.basis().iter().map(|&v| o.conj(v)).collect();
    FracIdeal::new(Hnf::from_vectors(&vecs).expect("nonzero"), i.den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_normalizes() {
        let h = Hnf::from_vectors(&[(4, 0), (6, 2), (0, 4)]).unwrap();
        assert_eq!(h, Hnf { a: 4, b: 2, c: 2 });
        assert_eq!(Hnf::from_vectors(&[(2, 0), (4, 0)]), None);
        assert_eq!(Hnf::from_vectors(&[h.basis()[0], h.basis()[1]]).unwrap(), h);
    }

    #[test]
    fn intersection_matches_brute_force() {
        let ls = [
            Hnf { a: 2, b: 0, c: 1 },
            Hnf { a: 3, b: 1, c: 2 },
            Hnf { a: 4, b: 3, c: 6 },
            Hnf { a: 6, b: 2, c: 4 },
            Hnf { a: 5, b: 0, c: 5 },
        ];
        for x in &ls {
            for y in &ls {
                let i = x.intersection(y);
                for u in -60..60 {
                    for v in -60..60 {
                        assert_eq!(
                            i.contains((u, v)),
                            x.contains((u, v)) && y.contains((u, v)),
                            "{x} ∩ {y} at ({u},{v})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gaussian_integers() {
        let o = QuadOrder::new(-1, 1).unwrap();
        assert_eq!((o.t, o.n), (0, 1));
        let i = FracIdeal::from_generators(&o, &[(2, 0), (1, 1)]).unwrap();
        assert_eq!(i.norm_num(), 2);
        assert!(principal_generator(&o, &i).is_some());
        assert_eq!(class_number(&o).unwrap(), 1);
    }

    #[test]
    fn nonmaximal_order_colon() {
        let o = QuadOrder::new(-1, 2).unwrap();
        assert_eq!((o.t, o.n), (0, 4));
        let j = FracIdeal::from_generators(&o, &[(2, 0), (0, 1)]).unwrap();
        let c = j.colon(&j, &o);
        assert!(c.contains_ideal(&FracIdeal::whole()));
        assert_ne!(c, FracIdeal::whole());
    }
}
