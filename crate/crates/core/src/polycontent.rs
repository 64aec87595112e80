//! Polynomials over finite rings, content ideals and bounded Gaussian checks.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::finring::{Elem, FiniteRing};
use crate::idealcalc::{span, FiniteIdeal, IdealLattice, DEFAULT_IDEAL_BUDGET};

pub const DEFAULT_PAIR_BUDGET: u64 = 1_000_000;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyOverRing {
    ring: FiniteRing,
    coeffs: Vec<Elem>,
}

impl PolyOverRing {
    /// Coefficients in ascending degree; trailing zeros are trimmed.
    pub fn new(ring: &FiniteRing, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&ring.zero()) {
            coeffs.pop();
        }
        PolyOverRing {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        PolyOverRing::new(ring, vec![])
    }

    /// Parses coefficient names, lowest degree first.
    pub fn from_names(ring: &FiniteRing, names: &[&str]) -> Result<Self> {
        let coeffs = names
            .iter()
            .enumerate()
            .map(|(i, n)| {
                ring.parse_elem(n)
                    .ok_or_else(|| Error::parse(i, format!("unknown element {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyOverRing::new(ring, coeffs))
    }

    /// The polynomial whose coefficient digits in base |R| spell `index`.
    pub fn from_index(ring: &FiniteRing, mut index: u64, len: usize) -> Self {
        let n = ring.order() as u64;
        let coeffs = (0..len)
            .map(|_| {
                let c = (index % n) as Elem;
                index /= n;
                c
            })
            .collect();
        PolyOverRing::new(ring, coeffs)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient_list(&self) -> String {
        let names: Vec<&str> = self.coeffs.iter().map(|&c| self.ring.name(c)).collect();
        format!("[{}]", names.join(", "))
    }

    /// Replaces nilpotent coefficients by zero.
    pub fn strip_nilpotent(&self) -> Self {
        let r = &self.ring;
        let c = self
            .coeffs
            .iter()
            .map(|&a| if r.is_nilpotent(a) { r.zero() } else { a })
            .collect();
        PolyOverRing::new(r, c)
    }
}

impl fmt::Display for PolyOverRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let r = &self.ring;
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == r.zero() {
                continue;
            }
            let name = r.name(c);
            let coef = if k > 0 && c == r.one() {
                String::new()
            } else if k > 0 && name.contains(['+', '-']) {
                format!("({name})")
            } else {
                name.to_string()
            };
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}Z"),
                _ => format!("{coef}Z^{k}"),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for PolyOverRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn mul_coeffs(r: &FiniteRing, f: &[Elem], g: &[Elem], out: &mut Vec<Elem>) {
    out.clear();
    if f.is_empty() || g.is_empty() {
        return;
    }
    out.resize(f.len() + g.len() - 1, r.zero());
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = r.add(out[i + j], r.mul(a, b));
        }
    }
    while out.last() == Some(&r.zero()) {
        out.pop();
    }
}

pub fn poly_mul(f: &PolyOverRing, g: &PolyOverRing) -> Result<PolyOverRing> {
    if !f.ring.same_ring(&g.ring) {
        return Err(Error::MixedRings);
    }
    let mut out = Vec::new();
    mul_coeffs(&f.ring, &f.coeffs, &g.coeffs, &mut out);
    Ok(PolyOverRing::new(&f.ring, out))
}

pub fn content(f: &PolyOverRing) -> FiniteIdeal {
    span(&f.ring, &f.coeffs)
}

pub fn poly_is_nilpotent(f: &PolyOverRing) -> bool {
    f.coeffs.iter().all(|&c| f.ring.is_nilpotent(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussOptions {
    pub deg_bound: usize,
    pub pair_budget: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for GaussOptions {
    fn default() -> Self {
        GaussOptions {
            deg_bound: 1,
            pair_budget: DEFAULT_PAIR_BUDGET,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMethod {
    Exhaustive,
    /// Full sweep at `full_bound` plus `samples` seeded pairs at the target bound.
    Sampled {
        seed: u64,
        samples: usize,
        full_bound: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussVerdict {
    pub holds: bool,
    pub deg_bound: usize,
    pub method: SweepMethod,
    pub pairs: u64,
    pub witness: Option<(PolyOverRing, PolyOverRing)>,
}

/// Precomputed content ids and nilpotency for all polynomials of a bound.
struct Table {
    n: u64,
    len: usize,
    coeffs: Vec<Vec<Elem>>,
    content: Vec<u32>,
    nil: Vec<bool>,
}

fn poly_count(r: &FiniteRing, deg_bound: usize) -> Option<u64> {
    (r.order() as u64).checked_pow(deg_bound as u32 + 1)
}

fn build_table(lat: &mut IdealLattice, deg_bound: usize) -> Table {
    let r = lat.ring().clone();
    let len = deg_bound + 1;
    let n = poly_count(&r, deg_bound).expect("checked by caller");
    let mut coeffs = Vec::with_capacity(n as usize);
    let mut content = Vec::with_capacity(n as usize);
    let mut nil = Vec::with_capacity(n as usize);
    for i in 0..n {
        let p = PolyOverRing::from_index(&r, i, len);
        content.push(lat.span_of(&p.coeffs));
        nil.push(poly_is_nilpotent(&p));
        coeffs.push(p.coeffs);
    }
    Table {
        n,
        len,
        coeffs,
        content,
        nil,
    }
}

/// Does c(fg) = c(f)c(g) hold for table entries f, g?
fn pair_ok(lat: &mut IdealLattice, t: &Table, f: usize, g: usize, buf: &mut Vec<Elem>) -> bool {
    mul_coeffs(&lat.ring().clone(), &t.coeffs[f], &t.coeffs[g], buf);
    let cfg = lat.span_of(buf);
    cfg == lat.product(t.content[f], t.content[g])
}

fn witness(r: &FiniteRing, t: &Table, f: usize, g: usize) -> (PolyOverRing, PolyOverRing) {
    (
        PolyOverRing::from_index(r, f as u64, t.len),
        PolyOverRing::from_index(r, g as u64, t.len),
    )
}

/// First failing pair in (f, g) index order, scanning f in parallel.
fn sweep(lat: &IdealLattice, t: &Table, fs: &[usize], gs: &[usize]) -> Option<(usize, usize)> {
    fs.par_iter()
        .map_init(
            || (lat.clone(), Vec::new()),
            |(lat, buf), &f| {
                gs.iter()
                    .find(|&&g| !pair_ok(lat, t, f, g, buf))
                    .map(|&g| (f, g))
            },
        )
        .find_first(|o| o.is_some())
        .flatten()
}

fn check_all(
    r: &FiniteRing,
    opts: &GaussOptions,
    nonnil_f: bool,
    nonnil_g: bool,
    fixed_f: Option<&PolyOverRing>,
) -> Result<GaussVerdict> {
    let mut lat = IdealLattice::new(r, DEFAULT_IDEAL_BUDGET)?;
    let count = poly_count(r, opts.deg_bound)
        .filter(|&c| c <= 1 << 24)
        .ok_or_else(|| Error::budget("enumerating polynomials", opts.pair_budget as usize))?;
    let table = build_table(&mut lat, opts.deg_bound);
    let pick = |restrict: bool| -> Vec<usize> {
        (0..table.n as usize)
            .filter(|&i| !restrict || !table.nil[i])
            .collect()
    };
    let fs = pick(nonnil_f);
    let gs = pick(nonnil_g);

    if let Some(f) = fixed_f {
        if count > opts.pair_budget {
            return Err(Error::budget(
                "sweeping g for a fixed f",
                opts.pair_budget as usize,
            ));
        }
        let cf = lat.span_of(&f.coeffs);
        let mut buf = Vec::new();
        let bad = gs.iter().find(|&&g| {
            mul_coeffs(r, &f.coeffs, &table.coeffs[g], &mut buf);
            let cfg = lat.span_of(&buf);
            cfg != lat.product(cf, table.content[g])
        });
        return Ok(GaussVerdict {
            holds: bad.is_none(),
            deg_bound: opts.deg_bound,
            method: SweepMethod::Exhaustive,
            pairs: gs.len() as u64,
            witness: bad.map(|&g| (f.clone(), PolyOverRing::from_index(r, g as u64, table.len))),
        });
    }

    let pairs = (fs.len() as u64).saturating_mul(gs.len() as u64);
    if pairs <= opts.pair_budget {
        let w = sweep(&lat, &table, &fs, &gs);
        return Ok(GaussVerdict {
            holds: w.is_none(),
            deg_bound: opts.deg_bound,
            method: SweepMethod::Exhaustive,
            pairs,
            witness: w.map(|(f, g)| witness(r, &table, f, g)),
        });
    }

    // Full sweep at the largest bound that fits, then seeded samples.
    let mut full_bound = opts.deg_bound;
    let mut swept = 0u64;
    let mut found = None;
    while full_bound > 0 {
        full_bound -= 1;
        let m = poly_count(r, full_bound).unwrap_or(u64::MAX);
        if m.saturating_mul(m) <= opts.pair_budget {
            // Indices below |R|^(b+1) are exactly the polynomials of degree ≤ b.
            let below = |v: &[usize]| -> Vec<usize> {
                v.iter().copied().filter(|&i| (i as u64) < m).collect()
            };
            let (sf, sg) = (below(&fs), below(&gs));
            swept = sf.len() as u64 * sg.len() as u64;
            found = sweep(&lat, &table, &sf, &sg);
            break;
        }
    }
    if found.is_none() && !fs.is_empty() && !gs.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut buf = Vec::new();
        for _ in 0..opts.samples {
            let f = fs[rng.gen_range(0..fs.len())];
            let g = gs[rng.gen_range(0..gs.len())];
            if !pair_ok(&mut lat, &table, f, g, &mut buf) {
                found = Some((f, g));
                break;
            }
        }
    }
    Ok(GaussVerdict {
        holds: found.is_none(),
        deg_bound: opts.deg_bound,
        method: SweepMethod::Sampled {
            seed: opts.seed,
            samples: opts.samples,
            full_bound,
        },
        pairs: swept + opts.samples as u64,
        witness: found.map(|(f, g)| witness(r, &table, f, g)),
    })
}

/// c(fg) = c(f)c(g) for every g of degree ≤ `deg_bound`.
pub fn is_gaussian_poly(
    f: &PolyOverRing,
    deg_bound: usize,
    pair_budget: u64,
) -> Result<GaussVerdict> {
    let opts = GaussOptions {
        deg_bound,
        pair_budget,
        ..GaussOptions::default()
    };
    check_all(&f.ring, &opts, false, false, Some(f))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingGaussian {
    pub gaussian_all_f: GaussVerdict,
    pub gaussian_nonnil_f: GaussVerdict,
}

pub fn ring_gaussian_checks(r: &FiniteRing, opts: &GaussOptions) -> Result<RingGaussian> {
    Ok(RingGaussian {
        gaussian_all_f: check_all(r, opts, false, false, None)?,
        gaussian_nonnil_f: check_all(r, opts, true, true, None)?,
    })
}

/// Every non-nilpotent f of degree ≤ bound is Gaussian against all g of
/// degree ≤ bound.
pub fn nonnil_polys_gaussian(r: &FiniteRing, opts: &GaussOptions) -> Result<GaussVerdict> {
    check_all(r, opts, true, false, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_truncated_poly, make_zn, DEFAULT_CAP};

    fn example_ring() -> FiniteRing {
        make_truncated_poly(2, &[2, 2], DEFAULT_CAP).unwrap()
    }

    #[test]
    fn products_and_content() {
        let r = example_ring();
        let f = PolyOverRing::from_names(&r, &["y", "x"]).unwrap();
        assert_eq!(f.to_string(), "xZ+y");
        assert!(poly_mul(&f, &f).unwrap().is_zero());
        assert_eq!(content(&f).size(), 8);
        assert!(poly_is_nilpotent(&f));
        assert!(poly_mul(&f, &PolyOverRing::zero(&r)).unwrap().is_zero());

        let z4 = make_zn(4).unwrap();
        let a = PolyOverRing::new(&z4, vec![1, 1]);
        let b = PolyOverRing::new(&z4, vec![3, 1]);
        assert_eq!(poly_mul(&a, &b).unwrap().coeffs(), &[3, 0, 1]);

        let z8 = make_zn(8).unwrap();
        let c = PolyOverRing::new(&z8, vec![4, 2]);
        assert_eq!(content(&c), span(&z8, &[2]));
        assert!(poly_is_nilpotent(&PolyOverRing::new(&z8, vec![2, 2])));
        assert!(!poly_is_nilpotent(&PolyOverRing::new(&z8, vec![2, 1])));
        assert_eq!(content(&PolyOverRing::zero(&z8)).size(), 1);
    }

    #[test]
    fn example_polynomial_is_not_gaussian() {
        let r = example_ring();
        let f = PolyOverRing::from_names(&r, &["y", "x"]).unwrap();
        let v = is_gaussian_poly(&f, 1, DEFAULT_PAIR_BUDGET).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().1, f);

        let z4 = make_zn(4).unwrap();
        let g = PolyOverRing::new(&z4, vec![1, 2]);
        assert!(is_gaussian_poly(&g, 2, DEFAULT_PAIR_BUDGET).unwrap().holds);
    }

    #[test]
    fn ring_level_checks() {
        let r = example_ring();
        let opts = GaussOptions {
            deg_bound: 1,
            ..GaussOptions::default()
        };
        let v = ring_gaussian_checks(&r, &opts).unwrap();
        assert!(!v.gaussian_all_f.holds);
        let (f, g) = v.gaussian_all_f.witness.unwrap();
        assert_eq!(
            (f.to_string(), g.to_string()),
            ("xZ+y".into(), "xZ+y".into())
        );
        assert!(v.gaussian_nonnil_f.holds);

        let z8 = make_zn(8).unwrap();
        let v = ring_gaussian_checks(
            &z8,
            &GaussOptions {
                deg_bound: 2,
                ..opts
            },
        )
        .unwrap();
        assert!(v.gaussian_all_f.holds && v.gaussian_nonnil_f.holds);
        assert_eq!(v.gaussian_all_f.method, SweepMethod::Exhaustive);
    }

    #[test]
    fn budget_errors() {
        let r = example_ring();
        let f = PolyOverRing::from_names(&r, &["y", "x"]).unwrap();
        assert!(matches!(
            is_gaussian_poly(&f, 3, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
