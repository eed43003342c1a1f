//! Undecorated (non-suspended) operad data. `Com`, `Ass` and `Unit` are given
//! by formulas valid in every arity; everything else is tabulated.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::perm;
use crate::error::{Error, Result};
use crate::gradedlin::{Field, Vector};

/// Arity-indexed tables for an operad with finitely many tabulated arities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub field: Field,
    pub max_arity: usize,
    /// `bases[n]` lists `(label, degree, weight)`; index 0 is unused.
    pub bases: Vec<Vec<(String, i64, u32)>>,
    /// `actions[n][j][x]` is `x·τ_j`, where `τ_j` swaps inputs `j` and `j+1`.
    pub actions: Vec<Vec<Vec<Vector<usize>>>>,
    /// `(a, i, x, b, y) ↦ x ∘_i y` with `i` zero-based.
    pub compositions: HashMap<(usize, usize, usize, usize, usize), Vector<usize>>,
    pub unit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    Com,
    Ass,
    Lie,
    Unit,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Com,
    Ass,
    Unit,
    Table(Kind, Arc<Tables>),
}

impl Shape {
    pub fn kind(&self) -> Kind {
        match self {
            Shape::Com => Kind::Com,
            Shape::Ass => Kind::Ass,
            Shape::Unit => Kind::Unit,
            Shape::Table(k, _) => *k,
        }
    }

    /// Largest arity with data, if bounded.
    pub fn arity_bound(&self) -> Option<usize> {
        match self {
            Shape::Com | Shape::Ass => None,
            Shape::Unit => Some(1),
            Shape::Table(_, t) => Some(t.max_arity),
        }
    }

    fn table_arity(&self, n: usize) -> Result<&Tables> {
        match self {
            Shape::Table(_, t) if n >= 1 && n <= t.max_arity => Ok(t),
            Shape::Table(_, t) => Err(Error::Arity(format!(
                "arity {n} beyond the tabulated bound {}",
                t.max_arity
            ))),
            _ => unreachable!(),
        }
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(match self {
            _ if n == 0 => 0,
            Shape::Com => 1,
            Shape::Ass => {
                if n > 12 {
                    return Err(Error::Arity(format!("Ass({n}) is too large to enumerate")));
                }
                perm::factorial(n) as usize
            }
            Shape::Unit => usize::from(n == 1),
            Shape::Table(_, t) => {
                if n > t.max_arity {
                    0
                } else {
                    t.bases[n].len()
                }
            }
        })
    }

    /// Whether the arity-`n` component is known to vanish.
    pub fn vanishes(&self, n: usize) -> bool {
        match self {
            Shape::Unit => n != 1,
            Shape::Table(_, t) => n == 0 || n > t.max_arity || t.bases[n].is_empty(),
            _ => n == 0,
        }
    }

    pub fn unit(&self) -> usize {
        match self {
            Shape::Table(_, t) => t.unit,
            _ => 0,
        }
    }

    pub fn label(&self, n: usize, x: usize) -> String {
        match self {
            Shape::Com => {
                if n == 1 {
                    "id".into()
                } else {
                    format!("mu{n}")
                }
            }
            Shape::Ass => {
                if n == 1 {
                    "id".into()
                } else {
                    ass_label(&perm::unrank(n, x))
                }
            }
            Shape::Unit => "id".into(),
            Shape::Table(_, t) => t.bases[n][x].0.clone(),
        }
    }

    pub fn degree(&self, n: usize, x: usize) -> i64 {
        match self {
            Shape::Table(_, t) => t.bases[n][x].1,
            _ => 0,
        }
    }

    pub fn weight(&self, n: usize, x: usize) -> u32 {
        match self {
            Shape::Table(_, t) => t.bases[n][x].2,
            _ => n.saturating_sub(1) as u32,
        }
    }

    /// Right action of the adjacent transposition `τ_j` on a basis element.
    pub fn act(&self, field: Field, n: usize, j: usize, x: usize) -> Result<Vector<usize>> {
        Ok(match self {
            Shape::Com | Shape::Unit => Vector::basis(field, x),
            Shape::Ass => {
                let w = perm::unrank(n, x);
                let swapped: Vec<usize> = w
                    .iter()
                    .map(|&v| {
                        if v == j {
                            j + 1
                        } else if v == j + 1 {
                            j
                        } else {
                            v
                        }
                    })
                    .collect();
                Vector::basis(field, perm::rank(&swapped))
            }
            Shape::Table(..) => self.table_arity(n)?.actions[n][j][x].clone(),
        })
    }

    /// `x ∘_i y` for basis elements `x` of arity `a` and `y` of arity `b`.
    pub fn compose(
        &self,
        field: Field,
        a: usize,
        i: usize,
        x: usize,
        b: usize,
        y: usize,
    ) -> Result<Vector<usize>> {
        if i >= a {
            return Err(Error::Arity(format!(
                "∘_{} on an arity-{a} operation",
                i + 1
            )));
        }
        Ok(match self {
            Shape::Com => Vector::basis(field, 0),
            Shape::Unit => Vector::basis(field, 0),
            Shape::Ass => {
                let u = perm::unrank(a, x);
                let v = perm::unrank(b, y);
                Vector::basis(field, perm::rank(&ass_substitute(&u, i, &v)))
            }
            Shape::Table(..) => {
                let t = self.table_arity(a + b - 1)?;
                t.compositions
                    .get(&(a, i, x, b, y))
                    .cloned()
                    .unwrap_or_else(|| Vector::zero(field))
            }
        })
    }
}

/// Monomial `x_{u_0} … x_{u_{a-1}}` with `x_i` replaced by the monomial `v` on
/// the block of variables starting at `i`.
pub fn ass_substitute(u: &[usize], i: usize, v: &[usize]) -> Vec<usize> {
    let b = v.len();
    let mut out = Vec::with_capacity(u.len() + b - 1);
    for &t in u {
        if t == i {
            out.extend(v.iter().map(|&s| s + i));
        } else if t < i {
            out.push(t);
        } else {
            out.push(t + b - 1);
        }
    }
    out
}

pub fn ass_label(w: &[usize]) -> String {
    if w.len() < 10 {
        let digits: String = w.iter().map(|&d| char::from(b'1' + d as u8)).collect();
        format!("mu{digits}")
    } else {
        let parts: Vec<String> = w.iter().map(|d| (d + 1).to_string()).collect();
        format!("mu{}", parts.join("."))
    }
}

/// Sign of the operadic desuspension `S^{-k}` on `x ∘_i y`, for `x` of arity
/// `a` and `y` of arity `b` and undecorated degree `deg_y`.
pub fn desuspension_sign(k: u32, a: usize, i: usize, b: usize, deg_y: i64) -> bool {
    let (a, i, b) = (a as i64, i as i64 + 1, b as i64);
    let mut odd = false;
    for level in 0..k as i64 {
        let deg_y_level = deg_y - level * (b - 1);
        let e = (b - 1) * (a - i) + (a - 1) * deg_y_level;
        odd ^= e.rem_euclid(2) == 1;
    }
    odd
}
