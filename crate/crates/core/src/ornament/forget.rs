use super::OrnFam;
use crate::desc::{Algebra, MuTree};
use crate::error::Result;
use crate::finset::{Family, Value};

/// The ornamental algebra `⌊o⌋(μD ∘ u) → μD ∘ v`: apply φ at the fixpoint
/// of the base, then `Con`. The carrier is `μD` cut off at `depth`; payloads
/// whose image would be deeper have no entry.
pub fn ornamental_algebra(o: &OrnFam, depth: usize) -> Result<Algebra> {
    o.require_endo()?;
    let desc = o.interp()?;
    let base = o.base();
    let mu = base.mu_family(depth)?;
    let carrier = Family::new(desc.in_idx().clone(), |i| Ok(mu.at(&o.u().apply(i)?)?.clone()))?;
    let cart = o.to_cart()?;
    let d = desc.clone();
    Algebra::tabulate(desc, carrier, |i, p| {
        let (sh, leaves) = d.at(i)?.split(p)?;
        let vi = o.v().apply(i)?;
        let mut deepest = 0;
        let mut subs = Vec::with_capacity(leaves.len());
        for (k, sub) in leaves {
            deepest = deepest.max(base.tree_depth(&o.u().apply(&k)?, &MuTree::new(sub.clone())?)?);
            subs.push(sub);
        }
        if deepest + 1 > depth {
            return Ok(None);
        }
        let payload = base.at(&vi)?.build_exact(&cart.map_shape(i, &sh)?, subs)?;
        Ok(Some(Value::con(payload)))
    })
}

/// Folds the ornamental algebra over `t`. Without an explicit index the
/// first index at which `t` is well-indexed is used.
pub fn forget(o: &OrnFam, t: &MuTree, j: Option<&Value>) -> Result<MuTree> {
    let desc = o.interp()?;
    let j = match j {
        Some(j) => j.clone(),
        None => desc.index_of(t)?,
    };
    let depth = desc.tree_depth(&j, t)?;
    let alg = ornamental_algebra(o, depth)?;
    MuTree::new(alg.fold(&j, t)?)
}

/// The same map computed by recursion along φ, without an algebra.
pub fn forget_direct(o: &OrnFam, t: &MuTree, j: Option<&Value>) -> Result<MuTree> {
    o.require_endo()?;
    let desc = o.interp()?;
    let j = match j {
        Some(j) => j.clone(),
        None => desc.index_of(t)?,
    };
    desc.tree_depth(&j, t)?;
    o.to_cart()?.map_mu(&desc, o.base(), &j, t)
}
