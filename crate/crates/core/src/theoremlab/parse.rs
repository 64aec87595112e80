//! Recursive-descent parser for ring specs.
//!
//! ```text
//! ring   := "(" ring ")" | "Zn:" n | "trunc:" p ":" e ("," e)*
//!         | "triv:" ring "|" module | "prod:" ring "|" ring
//!         | "divext:" domain | "selfext:" domain
//! module := "self" | "Zn:" k
//! domain := "Z" | "Zloc:" p | "quad:" d ":" f
//! ```

use crate::dividedext::{make_divided_ext, ModuleTag};
use crate::domainkit::DomainHandle;
use crate::error::{Error, Result};
use crate::finring::{
    make_product, make_trivial_ext, make_truncated_poly, make_zn, FiniteModule, FiniteRing,
};
use crate::phiclass::RingRef;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    cap: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{tok}'")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        self.eat("-");
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::parse(start, "expected an integer"));
        }
        let text = &self.src[start..self.pos + digits];
        self.pos += digits;
        let v: i64 = text
            .parse()
            .map_err(|_| Error::parse(start, format!("integer '{text}' out of range")))?;
        Ok(v)
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        let v = self.int()?;
        u64::try_from(v).map_err(|_| Error::parse(start, "expected a non-negative integer"))
    }

    fn ring(&mut self) -> Result<RingRef> {
        if self.eat("(") {
            let r = self.ring()?;
            self.expect(")")?;
            return Ok(r);
        }
        let start = self.pos;
        if self.eat("Zn:") {
            return Ok(RingRef::Finite(make_zn(self.uint()?)?));
        }
        if self.eat("trunc:") {
            let p = self.uint()?;
            self.expect(":")?;
            let mut exps = vec![self.exponent()?];
            while self.eat(",") {
                exps.push(self.exponent()?);
            }
            return Ok(RingRef::Finite(make_truncated_poly(p, &exps, self.cap)?));
        }
        if self.eat("triv:") {
            let a = self.finite(start)?;
            self.expect("|")?;
            let m = self.module(&a)?;
            return Ok(RingRef::Finite(make_trivial_ext(&a, &m, self.cap)?));
        }
        if self.eat("prod:") {
            let a = self.finite(start)?;
            self.expect("|")?;
            let b = self.finite(start)?;
            return Ok(RingRef::Finite(make_product(&a, &b, self.cap)?));
        }
        if self.eat("divext:") {
            let d = self.domain()?;
            return Ok(RingRef::Divided(make_divided_ext(
                d,
                ModuleTag::FractionsModD,
            )));
        }
        if self.eat("selfext:") {
            let d = self.domain()?;
            return Ok(RingRef::Divided(make_divided_ext(d, ModuleTag::SelfModule)));
        }
        Err(Error::parse(start, "expected a ring spec"))
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        let e = self.uint()?;
        u32::try_from(e).map_err(|_| Error::parse(start, "exponent out of range"))
    }

    fn finite(&mut self, start: usize) -> Result<FiniteRing> {
        match self.ring()? {
            RingRef::Finite(r) => Ok(r),
            RingRef::Divided(_) => Err(Error::parse(
                start,
                "divided extensions cannot be combined with other constructions",
            )),
        }
    }

    fn module(&mut self, base: &FiniteRing) -> Result<FiniteModule> {
        if self.eat("self") {
            return Ok(FiniteModule::regular(base));
        }
        if self.eat("Zn:") {
            let k = self.uint()?;
            return FiniteModule::cyclic(base, k as usize);
        }
        Err(Error::parse(
            self.pos,
            "expected a module spec ('self' or 'Zn:k')",
        ))
    }

    fn domain(&mut self) -> Result<DomainHandle> {
        if self.eat("Zloc:") {
            return DomainHandle::int_loc(self.uint()?);
        }
        if self.eat("quad:") {
            let d = self.int()?;
            self.expect(":")?;
            let f = self.uint()?;
            return DomainHandle::quad(d, f);
        }
        if self.eat("Z") {
            return Ok(DomainHandle::Int);
        }
        Err(Error::parse(
            self.pos,
            "expected a domain ('Z', 'Zloc:p' or 'quad:d:f')",
        ))
    }
}

/// Parses and constructs a ring, with finite constructions capped at `cap` elements.
pub fn parse_ring_with_cap(spec: &str, cap: usize) -> Result<RingRef> {
    let mut p = Parser {
        src: spec.trim(),
        pos: 0,
        cap,
    };
    let r = p.ring()?;
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(r)
}

pub fn parse_ring(spec: &str) -> Result<RingRef> {
    parse_ring_with_cap(spec, crate::finring::DEFAULT_CAP)
}
