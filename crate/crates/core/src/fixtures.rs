//! The worked examples: coalgebras over `Ass^c` built inside the cofree
//! coalgebra on `x` (degree 1) and `y` (degree 4), and truncated `y`-modules.

use crate::coalg::{cofree_conilpotent, sub_coalgebra, CoalgebraMorphism, CoalgebraPresentation};
use crate::cobar::{free_power_module, power_module, AlgebraModule};
use crate::error::Result;
use crate::gradedlin::{BasisElement, Field, GradedBasis, LinearMap, Vector};
use crate::sigmaop::{Cooperad, Operad};

/// Arity bound used for the bundled cooperads and presets.
pub const FIXTURE_ARITY: usize = 4;

fn ambient(field: Field, max_arity: usize) -> Result<CoalgebraPresentation> {
    let c = Cooperad::preset("Ass^c", max_arity, field)?;
    let gens = GradedBasis::new(vec![
        BasisElement::new("x", 1, 1),
        BasisElement::new("y", 4, 1),
    ])?;
    Ok(cofree_conilpotent(&c, &gens, 2)?.renamed("C~"))
}

fn named(c: &CoalgebraPresentation, label: &str, terms: &[&str]) -> (String, Vector<usize>) {
    let field = c.field();
    let v = Vector::from_terms(
        field,
        terms.iter().map(|t| {
            (
                c.generators().index_of(t).expect("ambient label"),
                field.one(),
            )
        }),
    );
    (label.to_string(), v)
}

/// The cofree `Ass^c`-coalgebra on `x`, `y`, cut at word length 2.
pub fn c_tilde(field: Field, max_arity: usize) -> Result<CoalgebraPresentation> {
    ambient(field, max_arity)
}

/// Spanned by `x` and `w = x⊗x`, with `dw = x`.
pub fn example_x(field: Field, max_arity: usize) -> Result<CoalgebraPresentation> {
    let ct = ambient(field, max_arity)?;
    let span = [named(&ct, "x", &["x"]), named(&ct, "w", &["x⊗x"])];
    sub_coalgebra(&ct, "X", &span, &[(1, Vector::basis(field, 0))])
}

/// Spanned by `x`.
pub fn example_c1(field: Field, max_arity: usize) -> Result<CoalgebraPresentation> {
    let ct = ambient(field, max_arity)?;
    sub_coalgebra(&ct, "C1", &[named(&ct, "x", &["x"])], &[])
}

/// Spanned by `x`, `y` and `z = x⊗y + y⊗x`, with `dz = y`.
pub fn example_c2(field: Field, max_arity: usize) -> Result<CoalgebraPresentation> {
    let ct = ambient(field, max_arity)?;
    let span = [
        named(&ct, "x", &["x"]),
        named(&ct, "y", &["y"]),
        named(&ct, "z", &["x⊗y", "y⊗x"]),
    ];
    sub_coalgebra(&ct, "C2", &span, &[(2, Vector::basis(field, 1))])
}

/// `C1 → C2`.
pub fn inclusion_c1_c2(field: Field, max_arity: usize) -> Result<CoalgebraMorphism> {
    let c1 = example_c1(field, max_arity)?;
    let c2 = example_c2(field, max_arity)?;
    let map = LinearMap::new(
        field,
        c1.generators().clone(),
        c2.generators().clone(),
        0,
        vec![Vector::basis(field, 0)],
    )?;
    CoalgebraMorphism::new(c1, c2, map)
}

/// `X → 0`.
pub fn x_to_zero(field: Field, max_arity: usize) -> Result<CoalgebraMorphism> {
    Ok(CoalgebraMorphism::to_zero(&example_x(field, max_arity)?))
}

/// The `Ass^c` fixtures by name.
pub fn ass_coalgebras(field: Field, max_arity: usize) -> Result<Vec<CoalgebraPresentation>> {
    Ok(vec![
        example_x(field, max_arity)?,
        example_c1(field, max_arity)?,
        example_c2(field, max_arity)?,
        c_tilde(field, max_arity)?,
    ])
}

/// `y·k[y]/(y^{n+1})` over `algebra`, with `x` acting as zero.
pub fn y_module(algebra: &Operad, n: usize) -> Result<AlgebraModule> {
    power_module(algebra, "y", n)
}

/// The free module `S(y) = y·k[y]` as seen through weight `level`.
pub fn s_y(algebra: &Operad, level: u32) -> Result<AlgebraModule> {
    free_power_module(algebra, "y", level)
}
