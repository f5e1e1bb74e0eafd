//! Picard numbers of quintic surfaces.
//!
//! * [`charspace`], [`delsarte`]: character combinatorics of Fermat and
//!   four-monomial surfaces over `C` and `F̄_p`.
//! * [`gf`]: finite fields and point counting, including counts twisted by
//!   automorphisms.
//! * [`frobpoly`]: reconstruction of Frobenius characteristic polynomials
//!   from traces.
//! * [`padlift`]: p-adic lifting of curves, resultants, irreducibility.
//! * [`latgram`]: Gram matrices of curve configurations.

pub mod arith;
pub mod charspace;
pub mod cyclo;
pub mod delsarte;
pub mod error;
pub mod fixtures;
pub mod frobpoly;
pub mod gf;
pub mod latgram;
pub mod models;
pub mod modpoly;
pub mod mpoly;
pub mod padlift;
pub mod smith;
pub mod zpoly;

pub use error::{Error, Result};
