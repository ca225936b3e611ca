//! Exact exponent bookkeeping for mixed moments `∫₀ᵀ Δᵏ(t) |ζ(½+it)|^{2m} dt`.
//!
//! A [`FactDatabase`] holds the known moment and pointwise bounds as exact
//! rationals. [`derive_mixed_bound`] searches Hölder splittings of the
//! integrand over those facts and returns the smallest growth exponent,
//! with a [`Derivation`] recording each step.
//!
//! ```
//! use divzeta::bounds::{derive_mixed_bound, rat, FactDatabase};
//!
//! let d = derive_mixed_bound(3, 2, &FactDatabase::default()).unwrap();
//! assert_eq!(d.growth(), &rat(59, 32));
//! ```

mod derive;
mod facts;
mod holder;
mod rational;
mod render;
mod trivial;

pub use derive::{
    derive_conditional_bound, derive_mixed_bound, derive_mixed_bound_with, Derivation, HolderStep, PointwiseStep,
    SearchOptions, Strategy,
};
pub use facts::{
    m_of_a, zeta_moment_exponent, Atom, EtaEntry, FactDatabase, LogPower, MomentFact, PointwiseFact, Validity,
    ZetaPointwise,
};
pub use holder::holder_combine;
pub use rational::{decimal, farey_interior, int, parse_rational, rat, to_f64, Rational};
pub use render::{derivation_tree, render_derivation};
pub use trivial::{conjectural_exponent, trivial_bound, trivial_bound_detailed, ConjecturalExponent, TrivialBound, TrivialStrategy};

/// The six `(k, m)` pairs whose exponents the engine is expected to reproduce.
pub const THEOREM_TARGETS: [(u32, u32); 6] = [(1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3)];
