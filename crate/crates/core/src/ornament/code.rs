use std::collections::BTreeMap;
use std::fmt;

use crate::desc::{branch, branch_violations, tabulate, write_branches, DescCode};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet, Value};

/// An ornament code, read against a description code of the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrnCode {
    /// New data: a `Σ` that the base does not have.
    Insert(FinSet, BTreeMap<Value, OrnCode>),
    /// Fixes the base `Σ` to a literal choice.
    Delete(Value, Box<OrnCode>),
    /// Refines `var k` to `var i` for a witness `i ∈ u⁻¹ k`.
    VarInv(Value),
    Unit,
    Sigma(BTreeMap<Value, OrnCode>),
    Pi(BTreeMap<Value, OrnCode>),
}

fn misaligned(orn: &OrnCode, base: &DescCode) -> Error {
    Error::Alignment(format!("{orn} cannot ornament {base}"))
}

impl OrnCode {
    pub fn insert(s: FinSet, f: impl FnMut(&Value) -> Result<OrnCode>) -> Result<Self> {
        let b = tabulate(&s, f)?;
        Ok(OrnCode::Insert(s, b))
    }

    pub fn delete(w: Value, rest: OrnCode) -> Self {
        OrnCode::Delete(w, Box::new(rest))
    }

    pub fn var_inv(i: Value) -> Self {
        OrnCode::VarInv(Value::inv_wit(i))
    }

    /// Copies a base `Σ` or `Π`, building each branch from the base branch.
    pub fn copy(
        base: &DescCode,
        mut f: impl FnMut(&Value, &DescCode) -> Result<OrnCode>,
    ) -> Result<Self> {
        match base {
            DescCode::Sigma(_, b) | DescCode::Pi(_, b) => {
                let mut out = BTreeMap::new();
                for (k, c) in b {
                    out.insert(k.clone(), f(k, c)?);
                }
                Ok(if matches!(base, DescCode::Sigma(..)) { OrnCode::Sigma(out) } else { OrnCode::Pi(out) })
            }
            _ => Err(Error::Alignment(format!("only Σ and Π can be copied, not {base}"))),
        }
    }

    /// The code-for-code copy of `base`, refining nothing.
    pub fn identity(base: &DescCode) -> Result<Self> {
        match base {
            DescCode::Var(i) => Ok(OrnCode::var_inv(i.clone())),
            DescCode::One => Ok(OrnCode::Unit),
            _ => OrnCode::copy(base, |_, c| OrnCode::identity(c)),
        }
    }

    /// `⌊o⌋`: the ornamented description, with alignment against `base`.
    pub fn interp(&self, base: &DescCode, u: &FinFn) -> Result<DescCode> {
        match (self, base) {
            (OrnCode::Insert(s, b), _) => {
                check_total(s, b)?;
                let mut out = BTreeMap::new();
                for (k, o) in b {
                    out.insert(k.clone(), o.interp(base, u)?);
                }
                Ok(DescCode::Sigma(s.clone(), out))
            }
            (OrnCode::Delete(w, rest), DescCode::Sigma(s, t)) => {
                if !s.contains(w)? {
                    return Err(Error::Alignment(format!("deleted witness {w} is not in {s}")));
                }
                rest.interp(branch(t, w)?, u)
            }
            (OrnCode::VarInv(w), DescCode::Var(k)) => {
                let i = w
                    .as_inv_wit()
                    .ok_or_else(|| Error::Alignment(format!("{w} is not an inverse-image witness")))?;
                if !u.dom().contains(i)? {
                    return Err(Error::Alignment(format!("{i} is not an index of the ornamented type")));
                }
                if u.apply(i)? != *k {
                    return Err(Error::Alignment(format!("index {i} does not refine {k}")));
                }
                Ok(DescCode::Var(i.clone()))
            }
            (OrnCode::Unit, DescCode::One) => Ok(DescCode::One),
            (OrnCode::Sigma(b), DescCode::Sigma(s, t)) | (OrnCode::Pi(b), DescCode::Pi(s, t)) => {
                check_total(s, b)?;
                let mut out = BTreeMap::new();
                for (k, o) in b {
                    out.insert(k.clone(), o.interp(branch(t, k)?, u)?);
                }
                Ok(if matches!(self, OrnCode::Sigma(_)) {
                    DescCode::Sigma(s.clone(), out)
                } else {
                    DescCode::Pi(s.clone(), out)
                })
            }
            _ => Err(misaligned(self, base)),
        }
    }

    /// The shape eraser: inserted components vanish, deleted choices come
    /// back, everything else is copied.
    pub fn forget_shape(&self, base: &DescCode, sh: &Value) -> Result<Value> {
        let bad = || Error::MalformedElement(format!("{sh} is not a shape of {self}"));
        match (self, base) {
            (OrnCode::Insert(_, b), _) => {
                let (s, rest) = sh.as_pair().ok_or_else(bad)?;
                branch(b, s)?.forget_shape(base, rest)
            }
            (OrnCode::Delete(w, rest), DescCode::Sigma(_, t)) => {
                Ok(Value::pair(w.clone(), rest.forget_shape(branch(t, w)?, sh)?))
            }
            (OrnCode::VarInv(_), DescCode::Var(_)) | (OrnCode::Unit, DescCode::One) => Ok(Value::Unit),
            (OrnCode::Sigma(b), DescCode::Sigma(_, t)) => {
                let (s, rest) = sh.as_pair().ok_or_else(bad)?;
                Ok(Value::pair(s.clone(), branch(b, s)?.forget_shape(branch(t, s)?, rest)?))
            }
            (OrnCode::Pi(b), DescCode::Pi(s, t)) => {
                let keys = s.enumerate()?;
                let parts = sh.untuple(keys.len()).ok_or_else(bad)?;
                let mut out = Vec::with_capacity(keys.len());
                for (k, part) in keys.iter().zip(parts) {
                    out.push(branch(b, k)?.forget_shape(branch(t, k)?, part)?);
                }
                Ok(Value::tuple(out))
            }
            _ => Err(misaligned(self, base)),
        }
    }
}

fn check_total(s: &FinSet, b: &BTreeMap<Value, OrnCode>) -> Result<()> {
    let mut out = Vec::new();
    branch_violations(s, b, "ornament", &mut out);
    if out.is_empty() {
        Ok(())
    } else {
        Err(Error::IllFormed(out))
    }
}

/// Deletes every `Σ` of `base` along the shape `sh`, keeping the `Π`
/// skeleton and refining each variable to `next` of its position.
pub(crate) fn delete_along(base: &DescCode, sh: &Value, next: &FinFn) -> Result<OrnCode> {
    let mut path = Vec::new();
    delete_rec(base, sh, next, &mut path)
}

fn delete_rec(base: &DescCode, sh: &Value, next: &FinFn, path: &mut Vec<Value>) -> Result<OrnCode> {
    let bad = || Error::MalformedElement(format!("{sh} is not a shape of {base}"));
    match base {
        DescCode::Var(_) => {
            let pos = path.iter().rev().fold(Value::Unit, |acc, k| Value::pair(k.clone(), acc));
            Ok(OrnCode::var_inv(next.apply(&pos)?))
        }
        DescCode::One => Ok(OrnCode::Unit),
        DescCode::Sigma(_, t) => {
            let (s, rest) = sh.as_pair().ok_or_else(bad)?;
            Ok(OrnCode::delete(s.clone(), delete_rec(branch(t, s)?, rest, next, path)?))
        }
        DescCode::Pi(s, t) => {
            let keys = s.enumerate()?;
            let parts = sh.untuple(keys.len()).ok_or_else(bad)?;
            let mut out = BTreeMap::new();
            for (k, part) in keys.iter().zip(parts) {
                path.push(k.clone());
                let o = delete_rec(branch(t, k)?, part, next, path);
                path.pop();
                out.insert(k.clone(), o?);
            }
            Ok(OrnCode::Pi(out))
        }
    }
}

impl fmt::Display for OrnCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrnCode::Insert(s, b) => {
                write!(f, "(insert {s} ")?;
                write_branches(f, &s.enumerate().unwrap_or_default(), b)?;
                write!(f, ")")
            }
            OrnCode::Delete(w, rest) => write!(f, "(delete {w} {rest})"),
            OrnCode::VarInv(w) => match w.as_inv_wit() {
                Some(i) => write!(f, "(var-inv {i})"),
                None => write!(f, "(var-inv {w})"),
            },
            OrnCode::Unit => write!(f, "one"),
            OrnCode::Sigma(b) => {
                write!(f, "(sigma ")?;
                write_branches(f, &[], b)?;
                write!(f, ")")
            }
            OrnCode::Pi(b) => {
                write!(f, "(pi ")?;
                write_branches(f, &[], b)?;
                write!(f, ")")
            }
        }
    }
}
