//! Classification and exact solution of depressed cubics `x³ + ax = b` over ℚ_p, p > 3.
//!
//! ```
//! use padic_cubic::{classifier, solver, CubicInstance, Prime};
//!
//! let inst = CubicInstance::from_integers(4, 5, Prime::new(11).unwrap()).unwrap();
//! assert_eq!(classifier::signature(&inst).unwrap().units, 3);
//! let roots = solver::all_roots(&inst, 2).unwrap();
//! assert_eq!(roots[1].expansion.to_string(), "2 + 2·11 + O(11^2)");
//! ```

pub mod classifier;
pub mod error;
pub mod fp_cubic;
pub mod limits;
pub mod oracle;
pub mod padic;
pub mod residues;
pub mod solver;

pub use classifier::{Classification, CubicInstance, DomainTag, LocationSignature, Region};
pub use error::{Error, Result};
pub use fp_cubic::FpCubic;
pub use limits::Limits;
pub use padic::{DigitExpansion, PadicRational, Prime, Valuation};
pub use solver::{RootRecord, DEFAULT_DIGITS};
