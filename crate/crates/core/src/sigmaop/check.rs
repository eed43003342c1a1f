//! Exhaustive verification of operad and cooperad laws below `max_arity`.

use serde::Serialize;

use super::cooperad::Cooperad;
use super::operad::Operad;
use super::perm;
use crate::error::Result;
use crate::gradedlin::Vector;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub object: String,
    pub checked_up_to_arity: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn describe(o: &Operad, v: &Vector<usize>, n: usize) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(&x, c)| format!("{c}*{}", o.label(n, x)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn check_operad(o: &Operad) -> Result<AxiomReport> {
    let m = o.max_arity();
    let field = o.field();
    let mut fails = Vec::new();
    let dims: Vec<usize> = (0..=m).map(|n| o.dim(n).unwrap_or(0)).collect();

    // Group relations and grading for the action.
    for n in 2..=m {
        for x in 0..dims[n] {
            let e = Vector::basis(field, x);
            for j in 0..n - 1 {
                let once = o.act_vec(n, j, &e)?;
                for (&y, _) in once.iter() {
                    if o.degree(n, y) != o.degree(n, x) || o.weight(n, y) != o.weight(n, x) {
                        fails.push(format!(
                            "action of τ{} on {} changes degree or weight",
                            j + 1,
                            o.label(n, x)
                        ));
                    }
                }
                if o.act_vec(n, j, &once)? != e {
                    fails.push(format!("τ{}² ≠ 1 on {}", j + 1, o.label(n, x)));
                }
                if j + 2 < n {
                    let mut v = e.clone();
                    for _ in 0..3 {
                        v = o.act_vec(n, j + 1, &o.act_vec(n, j, &v)?)?;
                    }
                    if v != e {
                        fails.push(format!("(τ{}τ{})³ ≠ 1 on {}", j + 1, j + 2, o.label(n, x)));
                    }
                }
                for l in j + 2..n - 1 {
                    let lhs = o.act_vec(n, l, &once)?;
                    let rhs = o.act_vec(n, j, &o.act_vec(n, l, &e)?)?;
                    if lhs != rhs {
                        fails.push(format!(
                            "τ{} and τ{} do not commute on {}",
                            j + 1,
                            l + 1,
                            o.label(n, x)
                        ));
                    }
                }
            }
        }
    }

    // Unit laws.
    let u = o.unit();
    for n in 1..=m {
        for x in 0..dims[n] {
            let e = Vector::basis(field, x);
            if o.compose(1, 0, u, n, x)? != e {
                fails.push(format!("id ∘ {} ≠ {}", o.label(n, x), o.label(n, x)));
            }
            for i in 0..n {
                if o.compose(n, i, x, 1, u)? != e {
                    fails.push(format!(
                        "{} ∘{} id ≠ {}",
                        o.label(n, x),
                        i + 1,
                        o.label(n, x)
                    ));
                }
            }
        }
    }

    // Sequential and parallel associativity.
    for a in 1..=m {
        for b in 1..=m {
            for c in 1..=m {
                if a + b + c - 2 > m {
                    continue;
                }
                let n = a + b + c - 2;
                for x in 0..dims[a] {
                    for y in 0..dims[b] {
                        for z in 0..dims[c] {
                            for i in 0..a {
                                let xy = o.compose(a, i, x, b, y)?;
                                for j in 0..b {
                                    let lhs = o.compose_vec(
                                        a + b - 1,
                                        i + j,
                                        &xy,
                                        c,
                                        &Vector::basis(field, z),
                                    )?;
                                    let yz = o.compose(b, j, y, c, z)?;
                                    let rhs = o.compose_vec(
                                        a,
                                        i,
                                        &Vector::basis(field, x),
                                        b + c - 1,
                                        &yz,
                                    )?;
                                    if lhs != rhs {
                                        fails.push(format!(
                                            "sequential associativity fails for ({}, {}, {}) at ∘{} ∘{}: {} vs {}",
                                            o.label(a, x),
                                            o.label(b, y),
                                            o.label(c, z),
                                            i + 1,
                                            j + 1,
                                            describe(o, &lhs, n),
                                            describe(o, &rhs, n)
                                        ));
                                    }
                                }
                                for j in i + 1..a {
                                    let lhs = o.compose_vec(
                                        a + b - 1,
                                        j + b - 1,
                                        &xy,
                                        c,
                                        &Vector::basis(field, z),
                                    )?;
                                    let xz = o.compose(a, j, x, c, z)?;
                                    let mut rhs = o.compose_vec(
                                        a + c - 1,
                                        i,
                                        &xz,
                                        b,
                                        &Vector::basis(field, y),
                                    )?;
                                    if (o.degree(b, y) * o.degree(c, z)).rem_euclid(2) == 1 {
                                        rhs = rhs.negated();
                                    }
                                    if lhs != rhs {
                                        fails.push(format!(
                                            "parallel associativity fails for ({}, {}, {}) at ∘{} ∘{}: {} vs {}",
                                            o.label(a, x),
                                            o.label(b, y),
                                            o.label(c, z),
                                            i + 1,
                                            j + 1,
                                            describe(o, &lhs, n),
                                            describe(o, &rhs, n)
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // Equivariance of ∘_i with respect to both arguments.
    for a in 1..=m {
        for b in 1..=m + 1 - a {
            let n = a + b - 1;
            for x in 0..dims[a] {
                for y in 0..dims[b] {
                    for i in 0..a {
                        for j in 0..a.saturating_sub(1) {
                            let tau = swap(a, j);
                            let lhs =
                                o.compose_vec(a, i, &o.act(a, j, x)?, b, &Vector::basis(field, y))?;
                            let i2 = tau[i];
                            let rho = block_perm(&tau, i, b);
                            let rhs = o.act_perm(n, &rho, &o.compose(a, i2, x, b, y)?)?;
                            if lhs != rhs {
                                fails.push(format!(
                                    "equivariance fails: ({}·τ{}) ∘{} {}",
                                    o.label(a, x),
                                    j + 1,
                                    i + 1,
                                    o.label(b, y)
                                ));
                            }
                        }
                        for j in 0..b.saturating_sub(1) {
                            let lhs =
                                o.compose_vec(a, i, &Vector::basis(field, x), b, &o.act(b, j, y)?)?;
                            let rhs = o.act_vec(n, i + j, &o.compose(a, i, x, b, y)?)?;
                            if lhs != rhs {
                                fails.push(format!(
                                    "equivariance fails: {} ∘{} ({}·τ{})",
                                    o.label(a, x),
                                    i + 1,
                                    o.label(b, y),
                                    j + 1
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(AxiomReport {
        object: o.name().to_string(),
        checked_up_to_arity: m,
        failures: fails,
    })
}

fn swap(n: usize, j: usize) -> perm::Perm {
    let mut p = perm::identity(n);
    p.swap(j, j + 1);
    p
}

/// The permutation of the `a + b − 1` composite inputs induced by permuting
/// the `a` outer inputs by `sigma` when the block of `b` inputs sits at `i`.
fn block_perm(sigma: &[usize], i: usize, b: usize) -> perm::Perm {
    let mut out = Vec::new();
    for &r in sigma {
        if r == i {
            out.extend(i..i + b);
        } else if r < i {
            out.push(r);
        } else {
            out.push(r + b - 1);
        }
    }
    out
}

/// Cooperad laws: the transposed operad laws, plus weight connectedness
/// (weight 0 is exactly the counit) and weight additivity of decompositions.
pub fn check_cooperad(c: &Cooperad) -> Result<AxiomReport> {
    let mut report = check_operad(c.predual())?;
    report.object = c.name().to_string();
    let m = c.max_arity();
    for n in 1..=m {
        for x in 0..c.dim(n)? {
            let counit = n == 1 && x == c.counit();
            let w = c.weight(n, x);
            if counit && w != 0 {
                report.failures.push(format!(
                    "connected weight: the counit {} has weight {w}",
                    c.label(n, x)
                ));
            }
            if !counit && w == 0 {
                report.failures.push(format!(
                    "connected weight: {} has weight 0 but is not the coaugmentation",
                    c.label(n, x)
                ));
            }
        }
    }
    for a in 1..=m {
        for b in 1..=m + 1 - a {
            let n = a + b - 1;
            for z in 0..c.dim(n)? {
                for i in 0..a {
                    for (x, y, _) in c.decompose(z, a, i, b)? {
                        if c.weight(a, x) + c.weight(b, y) != c.weight(n, z) {
                            report.failures.push(format!(
                                "decomposition of {} into {} ⊗ {} does not preserve weight",
                                c.label(n, z),
                                c.label(a, x),
                                c.label(b, y)
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
