//! Tensor fields on a chart and the differential operators built on them.
//!
//! Conventions used throughout the crate:
//!
//! * `Π♯α = Π(α, −)`, i.e. `(Π♯α)ⁱ = Σⱼ Πʲⁱ αⱼ`;
//! * `N*` acts on one-forms through the transpose matrix;
//! * the Schouten bracket of bivectors is
//!   `[P,Q]^{ijk} = ½ Σₗ ↻(i,j,k) (Pⁱˡ ∂ₗQʲᵏ + Qⁱˡ ∂ₗPʲᵏ)`, so that for a
//!   single bivector `[P,P]^{ijk} = Jac(xᵢ, xⱼ, xₖ)` where `Jac` is the
//!   Jacobiator of `{f,g} = Π(df,dg)`. With this scale the bracket of
//!   right-invariant extensions is the extension of the algebraic bracket.

mod ops;
mod pn;
mod tensors;

use thiserror::Error;

use crate::expr::ExprError;

pub use ops::{
    d_function, deformed_bracket, lie_bracket, lie_derivative_oneform, nijenhuis_torsion,
    oneform_bracket, schouten_bivector, sharp, torsion_on_fields,
};
pub use pn::{compatibility_defect, magri_morosi, np_bivector, pn_verify};
pub use tensors::{
    Bivector, ConcomitantTensor, EndoField, OneForm, SymmetricDefect, Tensor, TorsionTensor,
    Trivector, VectorField,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("expected {expected} components, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("N·P ≠ P·Nᵀ: {witness}")]
    NotCompatible { witness: String },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

pub type Result<T, E = CalculusError> = std::result::Result<T, E>;
