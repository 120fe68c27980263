//! Roots of `x^2 + x + c` over GF(2^m) from a precomputed bit matrix.
//!
//! ```
//! use gf2quad::{Field, SolverTables};
//!
//! let field = Field::new(7, 0x89).unwrap();
//! let tables = SolverTables::build(&field).unwrap();
//! let c = field.element(0x06).unwrap();
//! let (x0, x1) = tables.solve_reduced(c).unwrap().roots.unwrap();
//! assert_eq!((x0.index(), x1.index()), (0x02, 0x03));
//! ```

pub mod baselines;
pub mod bitmatrix;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod poly;
pub mod reed_muller;
pub mod solver;
pub mod verify;

pub use bitmatrix::BitMatrix;
pub use error::{Error, Result};
pub use field::{default_modulus, Field, FieldElement, FieldOps, OpTally, TalliedField};
pub use solver::{GeneralRoots, SolveOutcome, SolverTables, TablesJson, XorCostReport};
