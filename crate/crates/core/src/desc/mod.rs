//! Descriptions of indexed functors and their least fixpoints.

mod algebra;
mod code;
mod mu;

use std::collections::BTreeMap;
use std::fmt;

pub use algebra::Algebra;
pub use code::DescCode;
pub(crate) use code::{branch, branch_violations, tabulate, write_branches};
pub use mu::MuTree;

use crate::error::{Error, Result};
use crate::finset::{Family, FinFn, FinSet, Value};

/// A family of codes `J → IDesc I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescFam {
    in_idx: FinSet,
    out_idx: FinSet,
    at: BTreeMap<Value, DescCode>,
}

impl DescFam {
    /// Validates and builds; every violation is reported at once.
    pub fn new(in_idx: FinSet, out_idx: FinSet, at: BTreeMap<Value, DescCode>) -> Result<Self> {
        let d = DescFam { in_idx, out_idx, at };
        let problems = d.violations();
        if problems.is_empty() {
            Ok(d)
        } else {
            Err(Error::IllFormed(problems))
        }
    }

    pub fn tabulate(
        in_idx: FinSet,
        out_idx: FinSet,
        f: impl FnMut(&Value) -> Result<DescCode>,
    ) -> Result<Self> {
        let at = tabulate(&out_idx, f)?;
        Self::new(in_idx, out_idx, at)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = self.in_idx.violations();
        out.extend(self.out_idx.violations());
        branch_violations(&self.out_idx, &self.at, "desc", &mut out);
        for (j, c) in &self.at {
            c.collect_violations(&self.in_idx, &j.to_string(), &mut out);
        }
        out
    }

    pub fn in_idx(&self) -> &FinSet {
        &self.in_idx
    }

    pub fn out_idx(&self) -> &FinSet {
        &self.out_idx
    }

    pub fn at(&self, j: &Value) -> Result<&DescCode> {
        self.at
            .get(j)
            .ok_or_else(|| Error::IndexMismatch(format!("{j} is not an output index")))
    }

    pub fn codes(&self) -> impl Iterator<Item = (&Value, &DescCode)> {
        self.at.iter()
    }

    pub fn is_endo(&self) -> bool {
        self.in_idx.same_as(&self.out_idx).unwrap_or(false)
    }

    pub(crate) fn require_endo(&self) -> Result<()> {
        if self.is_endo() {
            Ok(())
        } else {
            Err(Error::IndexMismatch(format!(
                "description from {} to {} is not an endofunctor",
                self.in_idx, self.out_idx
            )))
        }
    }

    /// `⟦d⟧ x`, one symbolic set per output index.
    pub fn interp(&self, x: &Family) -> Result<Family> {
        if !x.index().same_as(&self.in_idx)? {
            return Err(Error::IndexMismatch(format!(
                "family over {} given to a description over {}",
                x.index(),
                self.in_idx
            )));
        }
        Family::new(self.out_idx.clone(), |j| self.at(j)?.interp(x))
    }

    /// Pointwise counts of `⟦d⟧ x`.
    pub fn interp_counts(&self, x: &Family) -> Result<Vec<(Value, usize)>> {
        self.interp(x)?.counts()
    }
}

impl fmt::Display for DescFam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ", self.in_idx, self.out_idx)?;
        write_branches(f, &self.out_idx.enumerate().unwrap_or_default(), &self.at)
    }
}

/// `d ∘ e`: substitutes `e` at every variable of `d`.
pub fn compose_desc(d: &DescFam, e: &DescFam) -> Result<DescFam> {
    if !d.in_idx.same_as(&e.out_idx)? {
        return Err(Error::IndexMismatch(format!(
            "cannot compose: {} expects inputs {} but receives {}",
            d, d.in_idx, e.out_idx
        )));
    }
    DescFam::tabulate(e.in_idx.clone(), d.out_idx.clone(), |c| {
        d.at(c)?.subst(&mut |b| Ok(e.at(b)?.clone()))
    })
}

/// The three functors induced by an index map `f : A → B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjointKind {
    /// `Δf : Set/B → Set/A`.
    Reindex,
    /// `Σf : Set/A → Set/B`.
    Exists,
    /// `Πf : Set/A → Set/B`.
    Forall,
}

impl AdjointKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "reindex" => Some(AdjointKind::Reindex),
            "exists" => Some(AdjointKind::Exists),
            "forall" => Some(AdjointKind::Forall),
            _ => None,
        }
    }
}

pub fn adjoint_desc(kind: AdjointKind, f: &FinFn) -> Result<DescFam> {
    let (a, b) = (f.dom().clone(), f.cod().clone());
    match kind {
        AdjointKind::Reindex => DescFam::tabulate(b, a, |x| Ok(DescCode::Var(f.apply(x)?))),
        AdjointKind::Exists | AdjointKind::Forall => DescFam::tabulate(a, b.clone(), |y| {
            let fibre = f.inverse_image(y)?;
            let body = tabulate(&fibre, |w| {
                let x = w.as_inv_wit().expect("inverse image element");
                Ok(DescCode::Var(x.clone()))
            })?;
            Ok(if kind == AdjointKind::Exists {
                DescCode::Sigma(fibre, body)
            } else {
                DescCode::Pi(fibre, body)
            })
        }),
    }
}

/// The identity description `var` at every index.
pub fn identity_desc(idx: &FinSet) -> Result<DescFam> {
    DescFam::tabulate(idx.clone(), idx.clone(), |i| Ok(DescCode::Var(i.clone())))
}

/// Pushes `d : I → J` forward along `u : I → K` and `v : J → L`: at `l`, a
/// choice of `j` over `l` followed by `d j` with its variables renamed by `u`.
pub fn cobase_change(d: &DescFam, u: &FinFn, v: &FinFn) -> Result<DescFam> {
    if !u.dom().same_as(&d.in_idx)? || !v.dom().same_as(&d.out_idx)? {
        return Err(Error::IndexMismatch("frame maps do not start at the description's indices".into()));
    }
    DescFam::tabulate(u.cod().clone(), v.cod().clone(), |l| {
        let fibre = v.inverse_image(l)?;
        let body = tabulate(&fibre, |w| {
            let j = w.as_inv_wit().expect("inverse image element");
            d.at(j)?.subst(&mut |i| Ok(DescCode::Var(u.apply(i)?)))
        })?;
        Ok(DescCode::Sigma(fibre, body))
    })
}
