//! Classification of cyclic covers of curves.
//!
//! * [`branching`]: branching data of `Z/d` covers of smooth curves and the
//!   loci they define in `M_g`.
//! * [`cover_algebra`]: divisor-class bookkeeping for `w^d = f` and the
//!   irreducibility criterion.
//! * [`sing_smooth`]: irreducible components of the singular locus of `M_g`.
//! * [`stable_graphs`]: numerical types of prime-order automorphisms of stable
//!   curves, encoded as labelled graphs.
//! * [`sing_stable`]: boundary components of the singular locus of the
//!   compactification, and automorphism-count bounds.
//! * [`cli`]: the command-line front end.

pub mod arith;
pub mod branching;
pub mod cli;
pub mod cover_algebra;
pub mod error;
pub mod picard;
pub mod sing_smooth;
pub mod sing_stable;
pub mod stable_graphs;

pub use error::{Error, Result};
