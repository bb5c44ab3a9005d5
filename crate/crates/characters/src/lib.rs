//! Additive and multiplicative characters of Q_p and of its quadratic
//! étale algebras.

pub mod add;
pub mod error;
pub mod etale_char;
pub mod mult;
pub mod spec;
pub mod units;

pub use add::{psi0, AddChar, AddCharE};
pub use error::{CharError, Result};
pub use etale_char::{omega_char, omega_ef, EtaleChar, U1Char};
pub use mult::{root_of_unity, MultChar};
pub use spec::{CharSpec, PiChar, PiSpec, TauSpec, ValueSpec};
pub use units::{unit_group, Base, UnitGroup};
