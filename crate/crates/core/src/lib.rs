//! Vector sublattices and minimal lattice-subspaces of `R^k` generated by
//! positive vectors, with positive bases, completion of security markets by
//! options and minimum-cost portfolio insurance.
//!
//! ```
//! use lattice_kit::lattice::{classify, LatticeKind, PayoffCollection};
//! use lattice_kit::Options;
//!
//! let x = PayoffCollection::new(vec![
//!     vec![6.0, 0.0, 0.0, 1.0],
//!     vec![6.0, 4.0, 0.0, 0.0],
//!     vec![8.0, 4.0, 2.0, 0.0],
//! ])?;
//! let c = classify(&x, &Options::default())?;
//! assert_eq!(c.kind, LatticeKind::LatticeSubspace);
//! assert_eq!((c.n, c.m, c.d), (3, 4, 3));
//! # Ok::<(), lattice_kit::Error>(())
//! ```

pub mod error;
pub mod exec;
pub mod lattice;
pub mod markets;
pub mod numerics;
mod options;

pub use error::{Error, Result};
pub use exec::Exec;
pub use options::Options;
