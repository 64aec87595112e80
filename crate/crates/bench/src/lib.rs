//! Fixtures shared by the criterion benches.

use philab_core::dividedext::{make_divided_ext, DividedExtRing, ModuleTag};
use philab_core::domainkit::DomainHandle;
use philab_core::finring::{make_truncated_poly, make_zn, FiniteRing, DEFAULT_CAP};

/// The order-16 ring F2[x,y]/(x^2,y^2).
pub fn example_ring() -> FiniteRing {
    make_truncated_poly(2, &[2, 2], DEFAULT_CAP).expect("fixture ring")
}

pub fn cyclic(n: u64) -> FiniteRing {
    make_zn(n).expect("fixture ring")
}

/// ℤ[2i] ⋉ K/ℤ[2i], the non-Prüfer divided extension.
pub fn gaussian_suborder_ext() -> DividedExtRing {
    make_divided_ext(
        DomainHandle::quad(-1, 2).expect("fixture order"),
        ModuleTag::FractionsModD,
    )
}

pub fn integer_ext() -> DividedExtRing {
    make_divided_ext(DomainHandle::Int, ModuleTag::FractionsModD)
}
