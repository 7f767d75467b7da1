//! Indexed containers `S ◁ P / n` and cartesian morphisms between them.

mod cart;

use std::collections::BTreeMap;

pub use cart::{apply_cart, check_cartesian, CartMorphism};

use crate::desc::{tabulate, DescCode, DescFam};
use crate::error::{Error, Result};
use crate::finset::{Family, FinFn, FinSet, Value};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Container {
    in_idx: FinSet,
    out_idx: FinSet,
    shapes: BTreeMap<Value, FinSet>,
    positions: BTreeMap<Value, BTreeMap<Value, FinSet>>,
    next: BTreeMap<Value, BTreeMap<Value, FinFn>>,
}

impl Container {
    /// Tabulates shapes, positions and next-index maps over every output
    /// index and shape.
    pub fn tabulate(
        in_idx: FinSet,
        out_idx: FinSet,
        mut shapes: impl FnMut(&Value) -> Result<FinSet>,
        mut positions: impl FnMut(&Value, &Value) -> Result<FinSet>,
        mut next: impl FnMut(&Value, &Value, &Value) -> Result<Value>,
    ) -> Result<Self> {
        let mut s_map = BTreeMap::new();
        let mut p_map = BTreeMap::new();
        let mut n_map = BTreeMap::new();
        for j in out_idx.enumerate()? {
            let s = shapes(&j)?;
            let mut ps = BTreeMap::new();
            let mut ns = BTreeMap::new();
            for sh in s.enumerate()? {
                let p = positions(&j, &sh)?;
                let n = FinFn::tabulate(p.clone(), in_idx.clone(), |q| next(&j, &sh, q))?;
                ps.insert(sh.clone(), p);
                ns.insert(sh, n);
            }
            s_map.insert(j.clone(), s);
            p_map.insert(j.clone(), ps);
            n_map.insert(j, ns);
        }
        Ok(Container { in_idx, out_idx, shapes: s_map, positions: p_map, next: n_map })
    }

    pub fn in_idx(&self) -> &FinSet {
        &self.in_idx
    }

    pub fn out_idx(&self) -> &FinSet {
        &self.out_idx
    }

    pub fn shapes(&self, j: &Value) -> Result<&FinSet> {
        self.shapes
            .get(j)
            .ok_or_else(|| Error::IndexMismatch(format!("{j} is not an output index of the container")))
    }

    pub fn positions(&self, j: &Value, sh: &Value) -> Result<&FinSet> {
        self.positions
            .get(j)
            .and_then(|m| m.get(sh))
            .ok_or_else(|| Error::MalformedElement(format!("{sh} is not a shape at {j}")))
    }

    pub fn next(&self, j: &Value, sh: &Value) -> Result<&FinFn> {
        self.next
            .get(j)
            .and_then(|m| m.get(sh))
            .ok_or_else(|| Error::MalformedElement(format!("{sh} is not a shape at {j}")))
    }

    /// Replaces the shape set at every index, keeping positions and next
    /// maps for the shapes that remain.
    pub fn restrict_shapes(&self, mut keep: impl FnMut(&Value, &Value) -> bool) -> Result<Self> {
        let mut c = self.clone();
        for (j, s) in c.shapes.iter_mut() {
            let kept: Vec<Value> = s.enumerate()?.into_iter().filter(|sh| keep(j, sh)).collect();
            let p = c.positions.get_mut(j).expect("index");
            let n = c.next.get_mut(j).expect("index");
            p.retain(|sh, _| kept.contains(sh));
            n.retain(|sh, _| kept.contains(sh));
            *s = FinSet::Lit(kept);
        }
        Ok(c)
    }

    /// `⟦S ◁ P / n⟧ x` at `j`: a shape paired with one `x (n p)` per position.
    pub fn interp_at(&self, j: &Value, x: &Family) -> Result<FinSet> {
        let shapes = self.shapes(j)?;
        let mut fibres = BTreeMap::new();
        for sh in shapes.enumerate()? {
            let p = self.positions(j, &sh)?;
            let n = self.next(j, &sh)?;
            let slots = tabulate(p, |q| Ok(x.at(&n.apply(q)?)?.clone()))?;
            fibres.insert(sh, FinSet::dprod(p.clone(), slots));
        }
        Ok(FinSet::dsum(shapes.clone(), fibres))
    }

    pub fn interp(&self, x: &Family) -> Result<Family> {
        if !x.index().same_as(&self.in_idx)? {
            return Err(Error::IndexMismatch(format!(
                "family over {} given to a container over {}",
                x.index(),
                self.in_idx
            )));
        }
        Family::new(self.out_idx.clone(), |j| self.interp_at(j, x))
    }

    /// Checks that `el` is `Pair(shape, values)` with one value per position.
    pub fn check_element(&self, j: &Value, el: &Value) -> Result<(Value, Vec<Value>)> {
        let bad = || Error::MalformedElement(format!("{el} is not an element at {j}"));
        let (sh, vals) = el.as_pair().ok_or_else(bad)?;
        if !self.shapes(j)?.contains(sh)? {
            return Err(bad());
        }
        let n = self.positions(j, sh)?.cardinality()?;
        let vals = vals.untuple(n).ok_or_else(bad)?;
        Ok((sh.clone(), vals.into_iter().cloned().collect()))
    }
}

/// `⟨D⟩`: shapes, positions and next indices read off the codes.
pub fn desc_to_container(d: &DescFam) -> Result<Container> {
    Container::tabulate(
        d.in_idx().clone(),
        d.out_idx().clone(),
        |j| d.at(j)?.shapes(),
        |j, sh| d.at(j)?.positions(sh),
        |j, sh, p| d.at(j)?.next(sh, p),
    )
}

/// `⟨C⟩⁻¹`: `Σ (sh : S j) Π (p : P sh) var (n p)`.
pub fn container_to_desc(c: &Container) -> Result<DescFam> {
    DescFam::tabulate(c.in_idx.clone(), c.out_idx.clone(), |j| {
        DescCode::sigma(c.shapes(j)?.clone(), |sh| {
            let n = c.next(j, sh)?;
            DescCode::pi(c.positions(j, sh)?.clone(), |p| Ok(DescCode::Var(n.apply(p)?)))
        })
    })
}

pub fn interp_container(c: &Container, x: &Family) -> Result<Family> {
    c.interp(x)
}

/// Reads an element of `⟦D⟧ x` as an element of `⟦⟨D⟩⟧ x`.
pub fn desc_element_to_container(d: &DescFam, j: &Value, v: &Value) -> Result<Value> {
    let (sh, leaves) = d.at(j)?.split(v)?;
    Ok(Value::pair(sh, Value::tuple(leaves.into_iter().map(|(_, l)| l).collect::<Vec<_>>())))
}

/// Inverse of [`desc_element_to_container`].
pub fn container_element_to_desc(d: &DescFam, c: &Container, j: &Value, el: &Value) -> Result<Value> {
    let (sh, vals) = c.check_element(j, el)?;
    d.at(j)?.build_exact(&sh, vals)
}

/// Compares `⟦D⟧ x`, `⟦⟨D⟩⟧ x` and `⟦⟨⟨D⟩⟩⁻¹⟧ x` index by index, and checks
/// that the element translations are mutually inverse injections.
pub fn check_round_trip(d: &DescFam, x: &Family) -> Result<Report> {
    let c = desc_to_container(d)?;
    let back = container_to_desc(&c)?;
    let (fd, fc, fb) = (d.interp(x)?, c.interp(x)?, back.interp(x)?);
    let mut r = Report::new("round-trip");
    let (mut nd, mut nc, mut nb) = (0, 0, 0);
    for j in d.out_idx().enumerate()? {
        let (ed, ec, eb) = (fd.at(&j)?.enumerate()?, fc.at(&j)?.enumerate()?, fb.at(&j)?.enumerate()?);
        nd += ed.len();
        nc += ec.len();
        nb += eb.len();
        r.expect(ed.len() == ec.len() && ec.len() == eb.len(), || {
            format!("at {j}: {} description elements, {} container elements, {} after the round trip", ed.len(), ec.len(), eb.len())
        });
        let mut images = Vec::with_capacity(ed.len());
        for v in &ed {
            let el = desc_element_to_container(d, &j, v)?;
            r.expect(fc.at(&j)?.contains(&el)?, || format!("{v} at {j} maps to {el}, not a container element"));
            let v2 = container_element_to_desc(d, &c, &j, &el)?;
            r.expect(v2 == *v, || format!("{v} at {j} comes back as {v2}"));
            images.push(el);
        }
        images.sort();
        images.dedup();
        r.expect(images.len() == ed.len(), || format!("element translation at {j} is not injective"));
        // An element of the inverse image carries the container shape in
        // the first component of its own shape.
        let mut from_back = Vec::with_capacity(eb.len());
        for w in &eb {
            let (sh, vals) = desc_element_to_container(&back, &j, w)?.as_pair().map(|(a, b)| (a.clone(), b.clone())).expect("pair");
            let inner = sh.as_pair().map(|(a, _)| a.clone()).ok_or_else(|| Error::MalformedElement(format!("{w} at {j}")))?;
            from_back.push(Value::pair(inner, vals));
        }
        from_back.sort();
        let mut ec_sorted = ec.clone();
        ec_sorted.sort();
        r.expect(from_back == ec_sorted, || format!("the inverse image at {j} does not project onto the container elements"));
    }
    r.count("desc", nd);
    r.count("container", nc);
    r.count("inverse", nb);
    Ok(r)
}
