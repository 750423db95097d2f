//! Exact computations in finite Coxeter groups, their Artin groups and the
//! algebras attached to them.
//!
//! Groups are enumerated once and then queried through dense element indices.
//! Polynomial coefficients are generic over [`Coefficient`]; the aliases at the
//! crate root fix them to `i64`.

pub mod coxeter;
pub mod dual;
pub mod error;
pub mod garside;
pub mod hecke;
pub mod laurent;
pub mod mikado;
pub mod scalar;
pub mod tl;
pub mod verify;

pub use coxeter::{CoxeterElement, CoxeterGroup, CoxeterType, DescentSet, Family, StandardCoxeterElement};
pub use error::{Error, Result};
pub use garside::{BraidGroup, BraidWord, GarsideNormalForm};
pub use hecke::{HeckeAlgebra, HeckeElement, KlTable};
pub use laurent::LaurentPolynomial;
pub use scalar::{Coefficient, GoldenInt, Matrix, Scalar};
pub use tl::{TemperleyLieb, TlElement};

/// Laurent polynomials in `v` with machine-integer coefficients.
pub type Laurent = LaurentPolynomial<i64>;
/// Reflection representation matrices over `Z[φ]`.
pub type GoldenMatrix = Matrix<GoldenInt>;
/// Integer matrices.
pub type IntMatrix = Matrix<i64>;
/// Hecke algebra elements over `Z[v, v⁻¹]`.
pub type Hecke = HeckeElement<i64>;
