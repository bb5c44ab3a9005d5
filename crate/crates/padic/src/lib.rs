//! Fixed-precision arithmetic in Q_p (p odd) and in its rank two étale
//! algebras, with norms, the Hilbert 90 parametrization of the norm one
//! group and its finite quotients.

mod error;
mod etale;
mod number;

pub use error::{PadicError, Result};
pub use etale::{EtaleAlgebra, EtaleElt, EtaleKind};
pub use number::{PAdic, PAdicField};
