pub mod algebra;
pub mod cohomology;
pub mod cyclotomic;
pub mod error;
pub mod exec;
pub mod jordan;
pub mod plov;
pub mod powersum;
pub mod random;
pub mod serde_exact;

pub use error::{Error, Result};
pub use exec::Exec;
