//! Ideal-calculus identities swept over id-addressed ideal families.

use crate::error::Result;
use crate::idealcalc::{Decision, IdealLattice};

/// Interned ideals with the four lattice operations. `residual(a, b)` is (a : b).
pub trait IdealCalculus {
    fn sum(&mut self, a: u32, b: u32) -> Result<u32>;
    fn meet(&mut self, a: u32, b: u32) -> Result<u32>;
    fn product(&mut self, a: u32, b: u32) -> Result<u32>;
    fn residual(&mut self, a: u32, b: u32) -> Result<u32>;
    fn contains(&self, big: u32, small: u32) -> Result<bool>;
    fn describe(&self, id: u32) -> String;
}

impl IdealCalculus for IdealLattice {
    fn sum(&mut self, a: u32, b: u32) -> Result<u32> {
        Ok(IdealLattice::sum(self, a, b))
    }

    fn meet(&mut self, a: u32, b: u32) -> Result<u32> {
        Ok(IdealLattice::meet(self, a, b))
    }

    fn product(&mut self, a: u32, b: u32) -> Result<u32> {
        Ok(IdealLattice::product(self, a, b))
    }

    fn residual(&mut self, a: u32, b: u32) -> Result<u32> {
        Ok(IdealLattice::residual(self, a, b))
    }

    fn contains(&self, big: u32, small: u32) -> Result<bool> {
        Ok(IdealLattice::contains(self, big, small))
    }

    fn describe(&self, id: u32) -> String {
        IdealLattice::describe(self, id)
    }
}

fn triple<C: IdealCalculus>(c: &C, i: u32, j: u32, k: u32) -> String {
    format!(
        "I = {}, J = {}, K = {}",
        c.describe(i),
        c.describe(j),
        c.describe(k)
    )
}

/// I ∩ (J + K) = I ∩ J + I ∩ K. With `weakened`, tests I ∩ (J + K) = I ∩ J + K.
pub fn distributive<C: IdealCalculus>(c: &mut C, ids: &[u32], weakened: bool) -> Result<Decision> {
    for &i in ids {
        for &j in ids {
            for &k in ids {
                let jk = c.sum(j, k)?;
                let lhs = c.meet(i, jk)?;
                let ij = c.meet(i, j)?;
                let rhs = if weakened {
                    c.sum(ij, k)?
                } else {
                    let ik = c.meet(i, k)?;
                    c.sum(ij, ik)?
                };
                if lhs != rhs {
                    return Ok(Decision::no(format!(
                        "{}: I∩(J+K) = {} but {} = {}",
                        triple(c, i, j, k),
                        c.describe(lhs),
                        if weakened { "I∩J+K" } else { "I∩J+I∩K" },
                        c.describe(rhs)
                    )));
                }
            }
        }
    }
    Ok(Decision::yes())
}

/// For I ⊆ J: J·(I : J) = I.
pub fn factorization<C: IdealCalculus>(c: &mut C, ids: &[u32]) -> Result<Decision> {
    for &i in ids {
        for &j in ids {
            if !c.contains(j, i)? {
                continue;
            }
            let k = c.residual(i, j)?;
            let p = c.product(j, k)?;
            if p != i {
                return Ok(Decision::no(format!(
                    "I = {}, J = {}: J·(I:J) = {} ≠ I",
                    c.describe(i),
                    c.describe(j),
                    c.describe(p)
                )));
            }
        }
    }
    Ok(Decision::yes())
}

/// (I + J) : K = I : K + J : K for I, J in `ij` and K in `ks`.
pub fn residual_of_sum<C: IdealCalculus>(c: &mut C, ij: &[u32], ks: &[u32]) -> Result<Decision> {
    for &i in ij {
        for &j in ij {
            for &k in ks {
                let s = c.sum(i, j)?;
                let lhs = c.residual(s, k)?;
                let a = c.residual(i, k)?;
                let b = c.residual(j, k)?;
                let rhs = c.sum(a, b)?;
                if lhs != rhs {
                    return Ok(Decision::no(format!(
                        "{}: (I+J):K = {} but I:K+J:K = {}",
                        triple(c, i, j, k),
                        c.describe(lhs),
                        c.describe(rhs)
                    )));
                }
            }
        }
    }
    Ok(Decision::yes())
}

/// K : (I ∩ J) = K : I + K : J for I, J in `ij` and K in `ks`.
pub fn residual_by_intersection<C: IdealCalculus>(
    c: &mut C,
    ij: &[u32],
    ks: &[u32],
) -> Result<Decision> {
    for &i in ij {
        for &j in ij {
            for &k in ks {
                let m = c.meet(i, j)?;
                let lhs = c.residual(k, m)?;
                let a = c.residual(k, i)?;
                let b = c.residual(k, j)?;
                let rhs = c.sum(a, b)?;
                if lhs != rhs {
                    return Ok(Decision::no(format!(
                        "{}: K:(I∩J) = {} but K:I+K:J = {}",
                        triple(c, i, j, k),
                        c.describe(lhs),
                        c.describe(rhs)
                    )));
                }
            }
        }
    }
    Ok(Decision::yes())
}

/// (I ∩ J)·K = IK ∩ JK.
pub fn product_over_intersection<C: IdealCalculus>(c: &mut C, ids: &[u32]) -> Result<Decision> {
    for &i in ids {
        for &j in ids {
            for &k in ids {
                let m = c.meet(i, j)?;
                let lhs = c.product(m, k)?;
                let ik = c.product(i, k)?;
                let jk = c.product(j, k)?;
                let rhs = c.meet(ik, jk)?;
                if lhs != rhs {
                    return Ok(Decision::no(format!(
                        "{}: (I∩J)K = {} but IK∩JK = {}",
                        triple(c, i, j, k),
                        c.describe(lhs),
                        c.describe(rhs)
                    )));
                }
            }
        }
    }
    Ok(Decision::yes())
}
