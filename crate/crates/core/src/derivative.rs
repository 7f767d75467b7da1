//! One-hole contexts of containers and the derivative of a cartesian
//! morphism.

use crate::container::{CartMorphism, Container};
use crate::error::{Error, Result};
use crate::finset::{Family, FinSet, Value};
use crate::report::Report;

/// `∂ᵢ c`: shapes are `(sh, hole)` with the hole pointing at `i`; the
/// positions are the remaining ones, in their original order.
pub fn derive_container(c: &Container, i: &Value) -> Result<Container> {
    if !c.in_idx().contains(i)? {
        return Err(Error::IndexMismatch(format!("{i} is not an input index")));
    }
    Container::tabulate(
        c.in_idx().clone(),
        c.out_idx().clone(),
        |j| {
            let mut shapes = Vec::new();
            for sh in c.shapes(j)?.enumerate()? {
                let n = c.next(j, &sh)?;
                for p in c.positions(j, &sh)?.enumerate()? {
                    if n.apply(&p)? == *i {
                        shapes.push(Value::pair(sh.clone(), p));
                    }
                }
            }
            Ok(FinSet::Lit(shapes))
        },
        |j, shp| {
            let (sh, hole) = shp.as_pair().expect("shape and hole");
            let rest = c.positions(j, sh)?.enumerate()?.into_iter().filter(|p| p != hole);
            Ok(FinSet::lit(rest))
        },
        |j, shp, p| c.next(j, shp.as_pair().expect("shape and hole").0)?.apply(p),
    )
}

/// An element of `⟦∂ᵢ c⟧ x` at `j`, unpacked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZipperCtx {
    pub j: Value,
    pub shape: Value,
    pub hole: Value,
    pub rest: Vec<Value>,
}

impl ZipperCtx {
    pub fn from_element(dc: &Container, j: &Value, el: &Value) -> Result<Self> {
        let (shp, rest) = dc.check_element(j, el)?;
        let (shape, hole) = shp.as_pair().expect("shape and hole");
        Ok(ZipperCtx { j: j.clone(), shape: shape.clone(), hole: hole.clone(), rest })
    }

    pub fn to_element(&self) -> Value {
        Value::pair(
            Value::pair(self.shape.clone(), self.hole.clone()),
            Value::tuple(self.rest.clone()),
        )
    }
}

/// Fills the hole of `ctx` with `val`, giving an element of `⟦c⟧ x`.
pub fn plug(c: &Container, ctx: &ZipperCtx, x: &Family, val: &Value) -> Result<Value> {
    let ps = c.positions(&ctx.j, &ctx.shape)?.enumerate()?;
    let at = ps
        .iter()
        .position(|p| *p == ctx.hole)
        .ok_or_else(|| Error::MalformedElement(format!("{} is not a position of {}", ctx.hole, ctx.shape)))?;
    if ctx.rest.len() + 1 != ps.len() {
        return Err(Error::MalformedElement(format!("context for {} has the wrong arity", ctx.shape)));
    }
    let i = c.next(&ctx.j, &ctx.shape)?.apply(&ctx.hole)?;
    if !x.at(&i)?.contains(val)? {
        return Err(Error::IndexMismatch(format!("{val} is not a value at the hole's index {i}")));
    }
    let mut vals = ctx.rest.clone();
    vals.insert(at, val.clone());
    Ok(Value::pair(ctx.shape.clone(), Value::tuple(vals)))
}

/// Verifies that plugging is a bijection from (context, value) pairs onto
/// (element, position over `i`) pairs, at every output index.
pub fn check_plug(c: &Container, i: &Value, x: &Family) -> Result<Report> {
    let dc = derive_container(c, i)?;
    let xi = x.at(i)?.enumerate()?;
    let mut r = Report::new("plug");
    let (mut lhs, mut rhs) = (0, 0);
    for j in c.out_idx().enumerate()? {
        let mut plugged = Vec::new();
        for el in dc.interp_at(&j, x)?.enumerate()? {
            let ctx = ZipperCtx::from_element(&dc, &j, &el)?;
            for v in &xi {
                plugged.push((plug(c, &ctx, x, v)?, ctx.hole.clone()));
            }
        }
        let mut holes = Vec::new();
        for el in c.interp_at(&j, x)?.enumerate()? {
            let (sh, _) = c.check_element(&j, &el)?;
            let n = c.next(&j, &sh)?;
            for p in c.positions(&j, &sh)?.enumerate()? {
                if n.apply(&p)? == *i {
                    holes.push((el.clone(), p));
                }
            }
        }
        lhs += plugged.len();
        rhs += holes.len();
        plugged.sort();
        holes.sort();
        let injective = plugged.windows(2).all(|w| w[0] != w[1]);
        r.expect(injective, || format!("plugging at {j} is not injective"));
        r.expect(plugged == holes, || {
            format!("at {j}: {} plugged pairs, {} element-position pairs", plugged.len(), holes.len())
        });
    }
    r.count("contexts_times_values", lhs);
    r.count("positions_over_index", rhs);
    Ok(r)
}

/// `∂ᵢ m : ∂ᵢ F → ∂_{u i} G`, moving the shape and keeping the hole.
pub fn derive_orn(m: &CartMorphism, i: &Value) -> Result<CartMorphism> {
    m.ensure_cartesian()?;
    let src = derive_container(m.src(), i)?;
    let tgt = derive_container(m.tgt(), &m.u().apply(i)?)?;
    CartMorphism::tabulate(src, tgt, m.u().clone(), m.v().clone(), |j, shp| {
        let (sh, hole) = shp.as_pair().expect("shape and hole");
        Ok(Value::pair(m.map_shape(j, sh)?, hole.clone()))
    })
}
