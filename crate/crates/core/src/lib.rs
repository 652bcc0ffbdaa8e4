//! Finitary deduction over encoded word languages, orthomodular
//! compatibility checks, a truncated infinitesimal arithmetic kernel,
//! sinusoidal step gluing with exact derivatives, and a prime-encoded
//! subparticle algebra.

pub mod glue;
pub mod hyper;
pub mod logic;
pub mod omlattice;
pub mod rational;
pub mod subparticle;
pub mod suite;
pub mod word_codec;
