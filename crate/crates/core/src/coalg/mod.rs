//! Finite conilpotent coalgebras over cooperads.

mod cofree;
mod morphism;
mod ops;
mod presentation;

pub use cofree::cofree_conilpotent;
pub use morphism::CoalgebraMorphism;
pub use ops::{cocommutator, pushforward, sub_coalgebra};
pub(crate) use presentation::push_word;
pub use presentation::{
    check_cooperad_regime, cooperad_slope, CoalgebraPresentation, CoalgebraReport, Law, Tensor,
    Violation,
};

#[cfg(test)]
mod tests;
