//! Symbolic Stone-duality engine.
//!
//! Materializes the Gelfand spectrum of the algebra of bounded measurable
//! functions on finite and symbolically infinite carriers, and turns the
//! structure theory around it — closure/clopen correspondence, completeness
//! versus extreme disconnectedness, measure lifting and support shift, halos
//! and the halo-cover compactness criterion, plus the seminormed-algebra
//! layer (characters, unitization, density constant) — into executable,
//! exact-arithmetic property checks.
//!
//! Three carriers are supported: finite explicit point sets, the symbolic
//! naturals (finite–cofinite sets), and an uncountable universe with named
//! witnesses (countable/co-countable sets). Subsets live in a unique normal
//! form, so every topological predicate on the spectrum is a decidable
//! computation on normal forms.
//!
//! Start with the runnable examples (`cargo run --example <name>`) or the
//! `stone-duality` CLI, which consumes TOML model documents (see `models/`
//! and the README for the grammar).

pub mod error;
pub mod exact;
pub mod carrier;
pub mod algebra;
pub mod function;
pub mod spectrum;
pub mod measure;
pub mod gelfand;
pub mod topology;
pub mod model;
pub mod checks;

pub use carrier::{Carrier, CarrierKind, PointLabel, SetExpr, SymbolicSet};
pub use error::{Error, Result};
pub use exact::{Radical, Scalar, ScalarField};
pub use function::{quasi_norm, FnElement, NormValue, QuasiNorm};
