//! The standard datatypes: naturals, lists, vectors, finite sets, binary
//! trees and their height-indexed refinement, over finite index sets.
//!
//! Naturals used as indices are truncated to `Nat<N`; an equation
//! `n = suc m` whose right side leaves the range is simply empty.

use crate::desc::{Algebra, DescCode, DescFam, MuTree};
use crate::error::Result;
use crate::finset::{FinFn, FinSet, Value};
use crate::ornament::{OrnCode, OrnFam};

pub fn star() -> Value {
    Value::label("star")
}

/// `Enum(a, b, ...)` with `k` labels.
pub fn alphabet(k: usize) -> FinSet {
    FinSet::enumeration((0..k).map(|i| ((b'a' + i as u8) as char).to_string()))
}

fn zs() -> FinSet {
    FinSet::enumeration(["z", "s"])
}

fn is_z(t: &Value) -> bool {
    t.as_label() == Some("z")
}

/// `Σ {z, s}. z ↦ 1, s ↦ var ⋆`.
pub fn nat_desc() -> Result<DescFam> {
    DescFam::tabulate(FinSet::star(), FinSet::star(), |_| {
        DescCode::sigma(zs(), |t| Ok(if is_z(t) { DescCode::One } else { DescCode::Var(star()) }))
    })
}

/// The constant map from `idx` to `⋆`.
pub fn to_star(idx: &FinSet) -> Result<FinFn> {
    Ok(FinFn::constant(idx.clone(), FinSet::star(), star())?.with_label("to-star"))
}

/// Lists over `a`: insert an element at each successor.
pub fn list_orn(a: &FinSet) -> Result<OrnFam> {
    let nat = nat_desc()?;
    let id = FinFn::identity(FinSet::star())?.with_label("id-star");
    OrnFam::tabulate(nat.clone(), id.clone(), id, |j| {
        OrnCode::copy(nat.at(j)?, |t, _| {
            Ok(if is_z(t) {
                OrnCode::Unit
            } else {
                OrnCode::insert(a.clone(), |_| Ok(OrnCode::var_inv(star())))?
            })
        })
    })
}

pub fn list_desc(a: &FinSet) -> Result<DescFam> {
    list_orn(a)?.interp()
}

/// Vectors over `a`, indexed by `Nat<n`, as an ornament of lists.
pub fn vec_orn(a: &FinSet, n: usize) -> Result<OrnFam> {
    let list = list_desc(a)?;
    let idx = FinSet::nat(n);
    let f = to_star(&idx)?;
    OrnFam::tabulate(list.clone(), f.clone(), f, |k| {
        OrnCode::copy(list.at(&star())?, |t, _| {
            if is_z(t) {
                return OrnCode::insert(FinSet::Eq(k.clone(), Value::num(0)), |_| Ok(OrnCode::Unit));
            }
            Ok(OrnCode::Sigma(crate::desc::tabulate(a, |_| {
                OrnCode::insert(idx.clone(), |m| {
                    let suc = Value::num(m.as_num().expect("numeral") + 1);
                    OrnCode::insert(FinSet::Eq(k.clone(), suc), |_| Ok(OrnCode::var_inv(m.clone())))
                })
            })?))
        })
    })
}

pub fn vec_desc(a: &FinSet, n: usize) -> Result<DescFam> {
    vec_orn(a, n)?.interp()
}

/// Finite sets `Fin k` for `k < n`, as an ornament of the naturals.
pub fn fin_orn(n: usize) -> Result<OrnFam> {
    let nat = nat_desc()?;
    let idx = FinSet::nat(n);
    let f = to_star(&idx)?;
    OrnFam::tabulate(nat.clone(), f.clone(), f, |k| {
        OrnCode::insert(idx.clone(), |m| {
            let suc = Value::num(m.as_num().expect("numeral") + 1);
            OrnCode::insert(FinSet::Eq(k.clone(), suc), |_| {
                OrnCode::copy(nat.at(&star())?, |t, _| {
                    Ok(if is_z(t) { OrnCode::Unit } else { OrnCode::var_inv(m.clone()) })
                })
            })
        })
    })
}

pub fn fin_desc(n: usize) -> Result<DescFam> {
    fin_orn(n)?.interp()
}

/// `X ↦ X × X`.
pub fn square_desc() -> Result<DescFam> {
    DescFam::tabulate(FinSet::star(), FinSet::star(), |_| {
        DescCode::pi(FinSet::enumeration(["l", "r"]), |_| Ok(DescCode::Var(star())))
    })
}

/// `X ↦ (X_k × X_{k+1}) + (X_k × X_k)`, indexed by `Nat<n`, ornamenting
/// the square.
pub fn height_orn(n: usize) -> Result<OrnFam> {
    let sq = square_desc()?;
    let idx = FinSet::nat(n);
    let f = to_star(&idx)?;
    let pair = |l: &Value, r: &Value| -> Result<OrnCode> {
        OrnCode::copy(sq.at(&star())?, |side, _| {
            Ok(OrnCode::var_inv(if side.as_label() == Some("l") { l.clone() } else { r.clone() }))
        })
    };
    OrnFam::tabulate(sq.clone(), f.clone(), f, |k| {
        OrnCode::insert(FinSet::enumeration(["skew", "even"]), |tag| {
            if tag.as_label() == Some("even") {
                return pair(k, k);
            }
            let suc = Value::num(k.as_num().expect("numeral") + 1);
            OrnCode::insert(idx.clone(), |m| {
                OrnCode::insert(FinSet::Eq(m.clone(), suc.clone()), |_| pair(k, m))
            })
        })
    })
}

pub fn height_desc(n: usize) -> Result<DescFam> {
    height_orn(n)?.interp()
}

/// The length algebra on lists over `a`, with values below `bound`.
pub fn length_alg(a: &FinSet, bound: usize) -> Result<Algebra> {
    Algebra::length(list_desc(a)?, bound)
}

/// `k ↦ 2k : Nat<n → Nat<2n`.
pub fn twice(n: usize) -> Result<FinFn> {
    Ok(FinFn::tabulate(FinSet::nat(n), FinSet::nat(2 * n), |k| {
        Ok(Value::num(2 * k.as_num().expect("numeral")))
    })?
    .with_label("twice"))
}

pub fn zero() -> MuTree {
    MuTree::con(Value::pair(Value::label("z"), Value::Unit))
}

pub fn suc(t: MuTree) -> MuTree {
    MuTree::con(Value::pair(Value::label("s"), t.into_value()))
}

pub fn numeral(k: usize) -> MuTree {
    (0..k).fold(zero(), |t, _| suc(t))
}

pub fn nil() -> MuTree {
    zero()
}

pub fn cons(x: &str, t: MuTree) -> MuTree {
    MuTree::con(Value::pair(Value::label("s"), Value::pair(Value::label(x), t.into_value())))
}

pub fn list(items: &[&str]) -> MuTree {
    items.iter().rev().fold(nil(), |t, x| cons(x, t))
}
