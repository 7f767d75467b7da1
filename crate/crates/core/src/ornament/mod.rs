//! Ornaments, their interpretation, and their correspondence with
//! cartesian morphisms of containers.

mod code;
mod compose;
mod forget;

use std::collections::BTreeMap;
use std::fmt;

pub use code::OrnCode;
pub(crate) use code::delete_along;
pub use compose::{hcompose, identity_orn, reindex_orn, vcompose};
pub use forget::{forget, forget_direct, ornamental_algebra};

use crate::container::{container_to_desc, desc_to_container, CartMorphism};
use crate::desc::{tabulate, write_branches, DescCode, DescFam, MuTree};
use crate::error::{Error, Result};
use crate::finset::{Family, FinFn, Value};
use crate::report::Report;

/// `orn D u v`: one ornament code per index `j : J`, each read against the
/// base code at `v j`. The ornamented type has inputs `I = dom u` and
/// outputs `J = dom v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrnFam {
    base: DescFam,
    u: FinFn,
    v: FinFn,
    at: BTreeMap<Value, OrnCode>,
}

impl OrnFam {
    pub fn new(base: DescFam, u: FinFn, v: FinFn, at: BTreeMap<Value, OrnCode>) -> Result<Self> {
        if !u.cod().same_as(base.in_idx())? || !v.cod().same_as(base.out_idx())? {
            return Err(Error::FrameMismatch(format!(
                "frames land in {} and {}, base is indexed by {} and {}",
                u.cod(),
                v.cod(),
                base.in_idx(),
                base.out_idx()
            )));
        }
        let mut missing = Vec::new();
        crate::desc::branch_violations(v.dom(), &at, "ornament", &mut missing);
        if !missing.is_empty() {
            return Err(Error::IllFormed(missing));
        }
        let o = OrnFam { base, u, v, at };
        for (j, c) in &o.at {
            c.interp(o.base.at(&o.v.apply(j)?)?, &o.u).map_err(|e| at_index(e, j))?;
        }
        Ok(o)
    }

    pub fn tabulate(
        base: DescFam,
        u: FinFn,
        v: FinFn,
        f: impl FnMut(&Value) -> Result<OrnCode>,
    ) -> Result<Self> {
        let at = tabulate(v.dom(), f)?;
        Self::new(base, u, v, at)
    }

    pub fn base(&self) -> &DescFam {
        &self.base
    }

    pub fn u(&self) -> &FinFn {
        &self.u
    }

    pub fn v(&self) -> &FinFn {
        &self.v
    }

    pub fn at(&self, j: &Value) -> Result<&OrnCode> {
        self.at
            .get(j)
            .ok_or_else(|| Error::IndexMismatch(format!("{j} is not an index of the ornament")))
    }

    pub fn codes(&self) -> impl Iterator<Item = (&Value, &OrnCode)> {
        self.at.iter()
    }

    fn base_at(&self, j: &Value) -> Result<&DescCode> {
        self.base.at(&self.v.apply(j)?)
    }

    /// `⌊o⌋ : DescFam(I, J)`.
    pub fn interp(&self) -> Result<DescFam> {
        DescFam::tabulate(self.u.dom().clone(), self.v.dom().clone(), |j| {
            self.at(j)?.interp(self.base_at(j)?, &self.u)
        })
    }

    /// φ: the cartesian morphism `⟨⌊o⌋⟩ → ⟨D⟩` erasing ornamentation from
    /// shapes.
    pub fn to_cart(&self) -> Result<CartMorphism> {
        let src = desc_to_container(&self.interp()?)?;
        let tgt = desc_to_container(&self.base)?;
        CartMorphism::tabulate(src, tgt, self.u.clone(), self.v.clone(), |j, sh| {
            self.at(j)?.forget_shape(self.base_at(j)?, sh)
        })
    }

    pub(crate) fn require_endo(&self) -> Result<()> {
        self.base.require_endo()?;
        if !self.u.ext_eq(&self.v)? {
            return Err(Error::FrameMismatch("ornament of fixpoints needs u = v".into()));
        }
        Ok(())
    }
}

fn at_index(e: Error, j: &Value) -> Error {
    match e {
        Error::Alignment(m) => Error::Alignment(format!("at {j}: {m}")),
        Error::IllFormed(ms) => Error::IllFormed(ms.into_iter().map(|m| format!("at {j}: {m}")).collect()),
        other => other,
    }
}

impl fmt::Display for OrnFam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_branches(f, &self.v.dom().enumerate().unwrap_or_default(), &self.at)
    }
}

pub fn interp_orn(o: &OrnFam) -> Result<DescFam> {
    o.interp()
}

pub fn orn_to_cart(o: &OrnFam) -> Result<CartMorphism> {
    o.to_cart()
}

/// ψ: the ornament of `⟨tgt⟩⁻¹` presenting a cartesian morphism. Each target
/// shape is copied, the source shapes above it are inserted, and positions
/// are refined to the source's next indices.
pub fn cart_to_orn(m: &CartMorphism) -> Result<OrnFam> {
    m.ensure_cartesian()?;
    let base = container_to_desc(m.tgt())?;
    let (src, tgt) = (m.src(), m.tgt());
    OrnFam::tabulate(base.clone(), m.u().clone(), m.v().clone(), |j| {
        let vj = m.v().apply(j)?;
        let sigma = m.sigma_at(j)?.clone().with_label(format!("sigma-{j}"));
        OrnCode::copy(base.at(&vj)?, |sh, _| {
            OrnCode::insert(sigma.inverse_image(sh)?, |w| {
                let sh_src = w.as_inv_wit().expect("inverse image element");
                let n = src.next(j, sh_src)?;
                let ps = tgt.positions(&vj, sh)?;
                let pis = tabulate(ps, |p| Ok(OrnCode::var_inv(n.apply(p)?)))?;
                Ok(OrnCode::Pi(pis))
            })
        })
    })
}

/// ψ relative to a description `base` with `⟨base⟩` the target of `m`: each
/// source shape is inserted, then the base code is followed along its image
/// with every `Σ` deleted. The result ornaments `base` itself.
pub fn cart_to_orn_over(m: &CartMorphism, base: &DescFam) -> Result<OrnFam> {
    m.ensure_cartesian()?;
    if desc_to_container(base)? != *m.tgt() {
        return Err(Error::BaseMismatch("the morphism does not land in the container of the base".into()));
    }
    OrnFam::tabulate(base.clone(), m.u().clone(), m.v().clone(), |j| {
        let code = base.at(&m.v().apply(j)?)?;
        OrnCode::insert(m.src().shapes(j)?.clone(), |sh| {
            delete_along(code, &m.map_shape(j, sh)?, m.src().next(j, sh)?)
        })
    })
}

/// Moves a tree of `src` into `over`, where `over` at each index is a `Σ`
/// of the shapes of `src` followed by a `Σ`-free skeleton, as produced by
/// [`cart_to_orn_over`].
pub fn embed_tree(src: &DescFam, over: &DescFam, j: &Value, t: &MuTree) -> Result<MuTree> {
    let (sh, leaves) = src.at(j)?.split(t.payload())?;
    let target = over.at(j)?;
    let DescCode::Sigma(_, b) = target else {
        return Err(Error::BaseMismatch(format!("{target} does not start with a choice of shape")));
    };
    let skeleton = crate::desc::branch(b, &sh)?;
    let shape = Value::pair(sh, skeleton.unique_shape()?);
    let mut subs = Vec::with_capacity(leaves.len());
    for (i, sub) in leaves {
        subs.push(embed_tree(src, over, &i, &MuTree::new(sub)?)?.into_value());
    }
    Ok(MuTree::con(target.build_exact(&shape, subs)?))
}

/// Inverse of [`embed_tree`].
pub fn extract_tree(over: &DescFam, src: &DescFam, j: &Value, t: &MuTree) -> Result<MuTree> {
    let (sh, leaves) = over.at(j)?.split(t.payload())?;
    let (inner, _) = sh
        .as_pair()
        .ok_or_else(|| Error::MalformedElement(format!("{t} has no shape component")))?;
    let mut subs = Vec::with_capacity(leaves.len());
    for (i, sub) in leaves {
        subs.push(extract_tree(over, src, &i, &MuTree::new(sub)?)?.into_value());
    }
    Ok(MuTree::con(src.at(j)?.build_exact(inner, subs)?))
}

/// ψ∘φ at the level of counts: `⌊ψ (φ o)⌋` and `⌊o⌋` have equal
/// interpretation counts on every family with components of size at most
/// `max`.
pub fn check_psi_phi(o: &OrnFam, max: usize) -> Result<Report> {
    let there = o.interp()?;
    let back = cart_to_orn(&o.to_cart()?)?.interp()?;
    let mut r = Report::new("psi-phi");
    let families = Family::all_small(there.in_idx(), max)?;
    for x in &families {
        let (a, b) = (there.interp_counts(x)?, back.interp_counts(x)?);
        r.expect(a == b, || {
            let show = |cs: &[(Value, usize)]| cs.iter().map(|(j, n)| format!("{j}:{n}")).collect::<Vec<_>>().join(" ");
            format!("counts {} vs {} after the round trip", show(&a), show(&b))
        });
    }
    r.count("families", families.len());
    Ok(r)
}
