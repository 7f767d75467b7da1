use super::{cart_to_orn_over, OrnCode, OrnFam};
use crate::container::{desc_to_container, CartMorphism};
use crate::desc::{cobase_change, compose_desc, DescFam};
use crate::error::{Error, Result};
use crate::finset::{FinFn, Value};

/// Copies every code of `d`, with identity frames.
pub fn identity_orn(d: &DescFam) -> Result<OrnFam> {
    let u = FinFn::identity(d.in_idx().clone())?;
    let v = FinFn::identity(d.out_idx().clone())?;
    OrnFam::tabulate(d.clone(), u, v, |j| OrnCode::identity(d.at(j)?))
}

/// `o1 ∘ o2` for `o2` an ornament of `⌊o1⌋`: the two cartesian morphisms
/// are composed and the result is presented again as an ornament of
/// `o1`'s base.
pub fn vcompose(o2: &OrnFam, o1: &OrnFam) -> Result<OrnFam> {
    if *o2.base() != o1.interp()? {
        return Err(Error::FrameMismatch(
            "the outer ornament is not an ornament of the inner one's interpretation".into(),
        ));
    }
    let m = o1.to_cart()?.compose(&o2.to_cart()?)?;
    cart_to_orn_over(&m, o1.base())
}

/// `o2 ∘ o1` side by side: from `⌊o2⌋ ∘ ⌊o1⌋` to `D2 ∘ D1`. A composite
/// shape is an outer shape with an inner shape at each outer position;
/// both layers move along their own shape maps.
pub fn hcompose(o2: &OrnFam, o1: &OrnFam) -> Result<OrnFam> {
    if !o1.v().ext_eq(o2.u())? {
        return Err(Error::FrameMismatch(
            "the inner ornament's output frame differs from the outer one's input frame".into(),
        ));
    }
    let (f2, f1) = (o2.interp()?, o1.interp()?);
    let (g2, g1) = (o2.base(), o1.base());
    let (m2, m1) = (o2.to_cart()?, o1.to_cart()?);
    let src = compose_desc(&f2, &f1)?;
    let tgt = compose_desc(g2, g1)?;
    let m = CartMorphism::tabulate(
        desc_to_container(&src)?,
        desc_to_container(&tgt)?,
        o1.u().clone(),
        o2.v().clone(),
        |j, sh| {
            let (outer, inner) = f2.at(j)?.split(sh)?;
            let outer_img = m2.map_shape(j, &outer)?;
            let mut inner_img = Vec::with_capacity(inner.len());
            for (b, ish) in inner {
                inner_img.push(m1.map_shape(&b, &ish)?);
            }
            g2.at(&o2.v().apply(j)?)?.build_exact(&outer_img, inner_img)
        },
    )?;
    cart_to_orn_over(&m, &tgt)
}

/// Presents `d` as an ornament of its cobase change along `u` and `v`: each
/// index `j` deletes the choice of `j` above `v j` and copies `d j`.
pub fn reindex_orn(d: &DescFam, u: &FinFn, v: &FinFn) -> Result<OrnFam> {
    let base = cobase_change(d, u, v)?;
    OrnFam::tabulate(base, u.clone(), v.clone(), |j| {
        Ok(OrnCode::delete(Value::inv_wit(j.clone()), OrnCode::identity(d.at(j)?)?))
    })
}

