use std::fmt;

use num_traits::One;

use super::ast::GroupExpr;
use crate::arith::{fmt_rat, Int, Rat};
use crate::hgroup::{Component, LocalPresentation};
use crate::linalg::{hermite_form, integer_kernel, IntMat, RatMat};

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Z => write!(f, "Z"),
            Component::Inverted(n) => write!(f, "Z[1/{n}]"),
        }
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for GroupExpr {
    /// Text that parses back to the same tree. A `mat` item that is not the
    /// last summand is parenthesized, since `mat(A) * g` extends to the right.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Oplus(c) => write!(f, "oplus({})", join(c)),
            GroupExpr::Gen(v) => {
                let parts: Vec<String> = v.iter().map(fmt_rat).collect();
                write!(f, "gen({})", parts.join(", "))
            }
            GroupExpr::Mat(a, e) => match **e {
                GroupExpr::Sum(_) => write!(f, "mat({a}) * ({e})"),
                _ => write!(f, "mat({a}) * {e}"),
            },
            GroupExpr::Sum(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    match item {
                        GroupExpr::Mat(..) if i + 1 < items.len() => write!(f, "({item})")?,
                        GroupExpr::Sum(_) => write!(f, "({item})")?,
                        _ => write!(f, "{item}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// Unimodular matrix whose first columns are the given saturated basis.
fn unimodular_completion(w: &IntMat) -> IntMat {
    let u = hermite_form(&w.transpose()).transform;
    u.to_rat()
        .inverse()
        .expect("unimodular transform")
        .transpose()
        .to_int()
        .expect("inverse of a unimodular matrix is integral")
}

/// A canonical expression for `h`: one `oplus` for the coordinate-aligned
/// divisible directions, one `mat(A) * oplus(..)` for every other divisible
/// subspace, then `gen` items for the lattice parts.
pub fn canonical_expr(h: &LocalPresentation) -> GroupExpr {
    let d = h.dim();
    let mut inverted = vec![Int::one(); d];
    let mut skewed = Vec::new();
    let mut gens = Vec::new();
    for e in h.entries() {
        let p = Int::from(e.prime());
        let r = e.divisible_rank();
        if r > 0 {
            let w = integer_kernel(&e.dual_module().transpose());
            let aligned: Option<Vec<usize>> = w
                .columns()
                .iter()
                .map(|c| {
                    let nz: Vec<usize> = (0..d).filter(|&i| c[i] != Int::from(0)).collect();
                    (nz.len() == 1).then(|| nz[0])
                })
                .collect();
            match aligned {
                Some(axes) => {
                    for i in axes {
                        inverted[i] *= &p;
                    }
                }
                None => {
                    let a = unimodular_completion(&w);
                    let comps = (0..d)
                        .map(|i| {
                            if i < r {
                                Component::Inverted(p.clone())
                            } else {
                                Component::Z
                            }
                        })
                        .collect();
                    skewed.push(GroupExpr::Mat(
                        a.to_rat(),
                        Box::new(GroupExpr::Oplus(comps)),
                    ));
                }
            }
        }
        let b = e.basis();
        for c in b.columns().into_iter().take(d - r) {
            if !c.iter().all(Rat::is_integer) {
                gens.push(GroupExpr::Gen(c));
            }
        }
    }
    let oplus = GroupExpr::Oplus(
        inverted
            .into_iter()
            .map(|n| {
                if n.is_one() {
                    Component::Z
                } else {
                    Component::Inverted(n)
                }
            })
            .collect(),
    );
    let mut items = vec![oplus];
    items.extend(gens);
    items.extend(skewed);
    if items.len() == 1 {
        items.pop().expect("one item")
    } else {
        GroupExpr::Sum(items)
    }
}

/// Canonical text of `h`.
pub fn canonical_text(h: &LocalPresentation) -> String {
    canonical_expr(h).to_string()
}

/// Witness matrices in report syntax, `mat([a,b;c,d])`.
pub fn fmt_witness(a: &RatMat) -> String {
    format!("mat({a})")
}
