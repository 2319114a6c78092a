//! Certificates for doubly-twisted conjugacy in free groups.
//!
//! Given homomorphisms `φ, ψ : G → H` between free groups, `u, v ∈ H` lie in
//! the same doubly-twisted class when `u = φ(g) v ψ(g)⁻¹` for some `g ∈ G`.
//! This crate certifies `[u] ≠ [v]` through remnant conditions on generator
//! image tables, searches for explicit witnesses of `[u] = [v]`, and
//! estimates by sampling how often the certificates apply.
//!
//! ```
//! use std::sync::Arc;
//! use twistclass::{distinguish, Alphabet, Homomorphism, Verdict, Word};
//!
//! let f2 = Arc::new(Alphabet::standard(2).unwrap());
//! let phi = Homomorphism::parse("a=aba, b=Ba", &f2, &f2).unwrap();
//! let psi = Homomorphism::parse("a=bbA, b=aaa", &f2, &f2).unwrap();
//! let u = Word::parse("1", &f2).unwrap();
//! let v = Word::parse("b", &f2).unwrap();
//! assert_eq!(distinguish(&phi, &psi, &u, &v, 0).unwrap().verdict, Verdict::Distinct);
//! ```

pub mod conjugacy;
pub mod error;
pub mod genericity;
pub mod hom;
pub mod remnant;
pub mod word;

pub use conjugacy::{
    classdist_check, conjugacy_witness, distinguish, equalizer_trivial_by_remnant, eta_has_remnant, quick_distinguish,
    DistinguishResult, Method, Orientation, Verdict,
};
pub use error::{Error, Result};
pub use genericity::{ball_size, run_density, DensityConfig, DensityReport, RandomModel, SampleMode};
pub use hom::Homomorphism;
pub use remnant::{compute_remnant, has_remnant, remnant_length, remnant_ratio, RemnantReport};
pub use word::{Alphabet, Letter, Word};
