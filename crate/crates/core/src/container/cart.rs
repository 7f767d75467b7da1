use std::collections::BTreeMap;

use super::Container;
use crate::desc::{DescFam, MuTree};
use crate::error::{Error, Result};
use crate::finset::{FinFn, Value};
use crate::report::Report;

/// A container morphism whose position maps are identities: source
/// positions are exactly the target positions pulled back along `σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartMorphism {
    src: Container,
    tgt: Container,
    u: FinFn,
    v: FinFn,
    sigma: BTreeMap<Value, FinFn>,
}

impl CartMorphism {
    /// Checks that frames and shape maps fit the two containers. Whether
    /// the result is cartesian is left to [`CartMorphism::check`].
    pub fn new(
        src: Container,
        tgt: Container,
        u: FinFn,
        v: FinFn,
        sigma: BTreeMap<Value, FinFn>,
    ) -> Result<Self> {
        let mut frame = Vec::new();
        if !u.dom().same_as(src.in_idx())? || !u.cod().same_as(tgt.in_idx())? {
            frame.push(format!("u runs {} → {}, expected {} → {}", u.dom(), u.cod(), src.in_idx(), tgt.in_idx()));
        }
        if !v.dom().same_as(src.out_idx())? || !v.cod().same_as(tgt.out_idx())? {
            frame.push(format!("v runs {} → {}, expected {} → {}", v.dom(), v.cod(), src.out_idx(), tgt.out_idx()));
        }
        if !frame.is_empty() {
            return Err(Error::FrameMismatch(frame.join("; ")));
        }
        let mut problems = Vec::new();
        for j in src.out_idx().enumerate()? {
            match sigma.get(&j) {
                None => problems.push(format!("no shape map at {j}")),
                Some(f) => {
                    if !f.dom().same_as(src.shapes(&j)?)? {
                        problems.push(format!("shape map at {j} does not cover the source shapes"));
                    }
                    if !f.cod().same_as(tgt.shapes(&v.apply(&j)?)?)? {
                        problems.push(format!("shape map at {j} does not land in the target shapes"));
                    }
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::IllFormed(problems));
        }
        Ok(CartMorphism { src, tgt, u, v, sigma })
    }

    pub fn tabulate(
        src: Container,
        tgt: Container,
        u: FinFn,
        v: FinFn,
        mut f: impl FnMut(&Value, &Value) -> Result<Value>,
    ) -> Result<Self> {
        let mut sigma = BTreeMap::new();
        for j in src.out_idx().enumerate()? {
            let cod = tgt.shapes(&v.apply(&j)?)?.clone();
            let table = FinFn::tabulate(src.shapes(&j)?.clone(), cod, |sh| f(&j, sh))?;
            sigma.insert(j, table);
        }
        Self::new(src, tgt, u, v, sigma)
    }

    pub fn identity(c: &Container) -> Result<Self> {
        let u = FinFn::identity(c.in_idx().clone())?;
        let v = FinFn::identity(c.out_idx().clone())?;
        Self::tabulate(c.clone(), c.clone(), u, v, |_, sh| Ok(sh.clone()))
    }

    pub fn src(&self) -> &Container {
        &self.src
    }

    pub fn tgt(&self) -> &Container {
        &self.tgt
    }

    pub fn u(&self) -> &FinFn {
        &self.u
    }

    pub fn v(&self) -> &FinFn {
        &self.v
    }

    pub fn sigma_at(&self, j: &Value) -> Result<&FinFn> {
        self.sigma
            .get(j)
            .ok_or_else(|| Error::IndexMismatch(format!("{j} is not a source index of the morphism")))
    }

    pub fn map_shape(&self, j: &Value, sh: &Value) -> Result<Value> {
        self.sigma_at(j)?.apply(sh)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CartMorphism) -> Result<Self> {
        if inner.tgt != self.src {
            return Err(Error::FrameMismatch("inner morphism does not land in the outer source".into()));
        }
        Self::tabulate(
            inner.src.clone(),
            self.tgt.clone(),
            self.u.compose(&inner.u)?,
            self.v.compose(&inner.v)?,
            |j, sh| self.map_shape(&inner.v.apply(j)?, &inner.map_shape(j, sh)?),
        )
    }

    /// Maps an element `Pair(shape, values)`: the shape moves along `σ`,
    /// the values stay in place.
    pub fn apply(&self, j: &Value, el: &Value) -> Result<Value> {
        let (sh, vals) = self.src.check_element(j, el)?;
        Ok(Value::pair(self.map_shape(j, &sh)?, Value::tuple(vals)))
    }

    /// Exhaustively verifies shape images, position-set equality and index
    /// coherence `u ∘ n = n' ∘ σ`.
    pub fn check(&self) -> Report {
        let mut r = Report::new("cartesian");
        if let Err(e) = self.check_into(&mut r) {
            r.fail(e.to_string());
        }
        r
    }

    fn check_into(&self, r: &mut Report) -> Result<()> {
        for j in self.src.out_idx().enumerate()? {
            let vj = self.v.apply(&j)?;
            let tgt_shapes = self.tgt.shapes(&vj)?;
            for sh in self.src.shapes(&j)?.enumerate()? {
                let img = self.map_shape(&j, &sh)?;
                r.expect(tgt_shapes.contains(&img)?, || format!("shape {sh} at {j} maps outside the target"));
                if !tgt_shapes.contains(&img)? {
                    continue;
                }
                let ps = self.src.positions(&j, &sh)?.enumerate()?;
                let qs = self.tgt.positions(&vj, &img)?.enumerate()?;
                r.expect(ps == qs, || {
                    format!("positions of {sh} at {j} differ from those of {img}: {} vs {}", ps.len(), qs.len())
                });
                if ps != qs {
                    continue;
                }
                let (n, m) = (self.src.next(&j, &sh)?, self.tgt.next(&vj, &img)?);
                for p in &ps {
                    let (a, b) = (self.u.apply(&n.apply(p)?)?, m.apply(p)?);
                    r.expect(a == b, || format!("position {p} of {sh} at {j}: u(next) = {a} but target next = {b}"));
                }
            }
        }
        Ok(())
    }

    pub fn ensure_cartesian(&self) -> Result<()> {
        let r = self.check();
        if r.passed() {
            Ok(())
        } else {
            Err(Error::NotCartesian(r.violations))
        }
    }

    /// The induced map `μF j → μG (v j)`, given descriptions whose
    /// containers are the source and target.
    pub fn map_mu(&self, src: &DescFam, tgt: &DescFam, j: &Value, t: &MuTree) -> Result<MuTree> {
        if !self.u.ext_eq(&self.v)? {
            return Err(Error::FrameMismatch("fixpoints need equal index maps u and v".into()));
        }
        self.map_mu_unchecked(src, tgt, j, t)
    }

    fn map_mu_unchecked(&self, src: &DescFam, tgt: &DescFam, j: &Value, t: &MuTree) -> Result<MuTree> {
        let (sh, leaves) = src.at(j)?.split(t.payload())?;
        let img = self.map_shape(j, &sh)?;
        let mut mapped = Vec::with_capacity(leaves.len());
        for (i, sub) in leaves {
            mapped.push(self.map_mu_unchecked(src, tgt, &i, &MuTree::new(sub)?)?.into_value());
        }
        let payload = tgt.at(&self.v.apply(j)?)?.build_exact(&img, mapped)?;
        Ok(MuTree::con(payload))
    }
}

pub fn apply_cart(m: &CartMorphism, j: &Value, el: &Value) -> Result<Value> {
    m.apply(j, el)
}

pub fn check_cartesian(m: &CartMorphism) -> Report {
    m.check()
}
