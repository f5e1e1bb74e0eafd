//! Finite fields and point counting.

pub mod auto;
pub mod cache;
pub mod count;
pub mod field;

pub use auto::Automorphism;
pub use count::{
    count_affine, count_double_cover, count_projective, count_twisted, count_twisted_as, count_twisted_h90, h2_trace,
    Compiled,
};
pub use field::{Elt, Field, ONE, ZERO};
