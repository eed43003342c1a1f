//! Graded Σ-modules, operads, cooperads and free algebras.

mod arity_one;
mod check;
mod coinv;
mod cooperad;
mod lie;
mod maps;
mod operad;
pub mod perm;
mod shape;

pub use arity_one::{exterior_coalgebra, monomial_label, monomials, polynomial_algebra};
pub use check::{check_cooperad, check_operad, AxiomReport};
pub use coinv::{check_regime, free_algebra_basis, Mono, Normalizer, Species};
pub use cooperad::{linear_dual_cooperad, linear_dual_operad, Cooperad, CooperadArity};
pub use lie::{left_normed, lie_embedding, LIE_ARITY_CAP};
pub use maps::{CooperadMap, OperadMap};
pub use operad::{Operad, OperadMetadata};
pub use shape::{Kind, Tables};

use crate::error::Result;
use crate::gradedlin::Field;

pub fn preset_operad(name: &str, max_arity: usize, field: Field) -> Result<Operad> {
    Operad::preset(name, max_arity, field)
}

/// `S^{-1}P`: degrees drop by `n − 1` in arity `n` and the action picks up the sign.
pub fn operadic_desuspension(p: &Operad) -> Operad {
    p.desuspend()
}

#[cfg(test)]
mod tests;
