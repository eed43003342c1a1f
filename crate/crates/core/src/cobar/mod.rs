//! Cobar complexes `Ω_α X`, their maps, weak-equivalence tests and the
//! one-sided bar and cobar constructions over arity-1 twisting cochains.

mod analysis;
mod comodule;
mod complex;

pub use analysis::{
    alpha_weq, class_survives, cobar_map, compare_level, functoriality_check, CobarMap,
    FunctorialityReport, LevelVerdict, MembershipCertificate, MembershipLevel, Stability,
    WeqReport, DEFAULT_STABILITY,
};
pub use comodule::{
    bar_comodule, bar_map, cobar_comodule, counit_check, free_power_module, invertible_module,
    power_module, trivial_module, AlgebraModule, CounitReport, ModuleMap,
};
pub use complex::{cobar_complex, CobarComplex, SliceDims};

#[cfg(test)]
mod tests;
