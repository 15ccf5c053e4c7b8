//! Exact computation of the componentwise sum of all width-one tensors of a
//! given shape and entry sum, together with the combinatorial machinery the
//! closed forms rest on: multiset Eulerian polynomials, the lexicographic
//! shelling of the grid order complex, and f-/h-vectors.
//!
//! All arithmetic is exact ([`num_bigint`]). Coordinates are 1-based at every
//! public boundary.
//!
//! ```
//! use widthone::{sigma, DimVector, Limits};
//!
//! let n = DimVector::new(vec![2, 2]).unwrap();
//! let t = sigma::sigma_tableaux(&n, 2, &Limits::default()).unwrap();
//! let h = sigma::sigma_hpoly(&n, 2, &Limits::default()).unwrap();
//! assert_eq!(t, h);
//! assert_eq!(t.to_decimal_strings(), ["5", "4", "4", "5"]);
//! ```

pub mod error;
pub mod eulerian;
pub mod limits;
pub mod oracle;
pub mod poly;
pub mod poset;
pub mod shelling;
pub mod sigma;

pub use error::{Error, Result};
pub use eulerian::{binomial, Multiplicity, Word};
pub use limits::Limits;
pub use poly::IntPolynomial;
pub use poset::{DenseTensor, DimVector, MultiIndex};
