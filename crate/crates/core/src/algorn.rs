//! Algebraic ornaments: indexing a datatype by the result of a fold.

use std::collections::BTreeMap;

use crate::container::{desc_to_container, CartMorphism, Container};
use crate::desc::{Algebra, DescCode, DescFam, MuTree};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet, Value};
use crate::ornament::{cart_to_orn_over, ornamental_algebra, OrnFam};
use crate::report::Report;

/// `D^α` together with the pieces it was built from.
#[derive(Debug, Clone)]
pub struct AlgOrn {
    pub ornament: OrnFam,
    /// `⌊D^α⌋`, indexed by pairs `(i, x)` with `x` in the carrier at `i`.
    pub desc: DescFam,
    /// The refined container: shapes `(sh, f)` with `α(sh, f) = x`.
    pub container: Container,
    pub cart: CartMorphism,
    pub algebra: Algebra,
}

/// Builds `D^α` over the description of `alg`.
pub fn algebraic_ornament(alg: &Algebra) -> Result<AlgOrn> {
    let d = alg.desc();
    let base = desc_to_container(d)?;
    let mut pairs = Vec::new();
    for i in d.in_idx().enumerate()? {
        for x in alg.carrier().at(&i)?.enumerate()? {
            pairs.push(Value::pair(i.clone(), x));
        }
    }
    let idx = FinSet::Lit(pairs);

    // Group the algebra's table by result: shapes over (i, x) are exactly the
    // (shape, assignment) pairs the algebra sends to x.
    let mut fibres: BTreeMap<Value, Vec<Value>> = BTreeMap::new();
    for i in d.in_idx().enumerate()? {
        for (payload, x) in alg.table(&i)?.entries()? {
            let (sh, leaves) = d.at(&i)?.split(&payload)?;
            let f = Value::tuple(leaves.into_iter().map(|(_, l)| l).collect::<Vec<_>>());
            fibres.entry(Value::pair(i.clone(), x)).or_default().push(Value::pair(sh, f));
        }
    }
    let split = |ix: &Value| -> (Value, Value) {
        let (i, x) = ix.as_pair().expect("pair index");
        (i.clone(), x.clone())
    };
    let container = Container::tabulate(
        idx.clone(),
        idx.clone(),
        |ix| Ok(FinSet::Lit(fibres.get(ix).cloned().unwrap_or_default())),
        |ix, shf| {
            let (i, _) = split(ix);
            let (sh, _) = shf.as_pair().expect("shape pair");
            Ok(base.positions(&i, sh)?.clone())
        },
        |ix, shf, p| {
            let (i, _) = split(ix);
            let (sh, f) = shf.as_pair().expect("shape pair");
            let ps = base.positions(&i, sh)?.enumerate()?;
            let k = ps.iter().position(|q| q == p).expect("position");
            let fk = f.untuple(ps.len()).expect("assignment")[k].clone();
            Ok(Value::pair(base.next(&i, sh)?.apply(p)?, fk))
        },
    )?;
    let fst = FinFn::tabulate(idx.clone(), d.in_idx().clone(), |ix| Ok(split(ix).0))?.with_label("fst");
    let cart = CartMorphism::tabulate(container.clone(), base, fst.clone(), fst, |_, shf| {
        Ok(shf.as_pair().expect("shape pair").0.clone())
    })?;
    let ornament = cart_to_orn_over(&cart, d)?;
    let desc = ornament.interp()?;
    Ok(AlgOrn { ornament, desc, container, cart, algebra: alg.clone() })
}

impl AlgOrn {
    /// Lifts a tree of `D` at `i` to `D^α` at `(i, fold α t)`.
    pub fn remember(&self, i: &Value, t: &MuTree) -> Result<(Value, MuTree)> {
        let d = self.algebra.desc();
        let code = d.at(i)?;
        let (sh, leaves) = code.split(t.payload())?;
        let mut xs = Vec::with_capacity(leaves.len());
        let mut subs = Vec::with_capacity(leaves.len());
        for (k, sub) in leaves {
            let (ix, lifted) = self.remember(&k, &MuTree::new(sub)?)?;
            xs.push(ix.as_pair().expect("pair index").1.clone());
            subs.push(lifted.into_value());
        }
        let x = self.algebra.apply(i, &code.build_exact(&sh, xs.clone())?)?;
        let ix = Value::pair(i.clone(), x);
        let target = self.desc.at(&ix)?;
        let DescCode::Sigma(_, b) = target else {
            unreachable!("algebraic ornaments start with a choice of shape")
        };
        let shf = Value::pair(sh, Value::tuple(xs));
        let skeleton = crate::desc::branch(b, &shf)?;
        let payload = target.build_exact(&Value::pair(shf, skeleton.unique_shape()?), subs)?;
        Ok((ix, MuTree::con(payload)))
    }

    /// Forgets a tree of `D^α` at `(i, x)` and re-folds it, returning the
    /// plain tree with `Refl` once the fold is confirmed to be `x`.
    pub fn recompute(&self, ix: &Value, t: &MuTree) -> Result<(MuTree, Value)> {
        let depth = self.desc.tree_depth(ix, t)?;
        let plain = MuTree::new(ornamental_algebra(&self.ornament, depth)?.fold(ix, t)?)?;
        let (i, x) = ix
            .as_pair()
            .ok_or_else(|| Error::IndexMismatch(format!("{ix} is not an (index, value) pair")))?;
        let y = self.algebra.fold(i, &plain)?;
        if y != *x {
            return Err(Error::CoherenceViolation(format!("{plain} folds to {y}, not {x}")));
        }
        Ok((plain, Value::Refl))
    }

    /// Checks `μD^α (i, x) ≅ { t : μD i | fold α t = x }` up to `depth`, with
    /// remember and forget as the two directions.
    pub fn check_coherence(&self, i: &Value, x: &Value, depth: usize) -> Result<Report> {
        if !self.algebra.carrier().at(i)?.contains(x)? {
            return Err(Error::Domain(format!("{x} is not in the carrier at {i}")));
        }
        let ix = Value::pair(i.clone(), x.clone());
        let lhs = self.desc.mu_enumerate(&ix, depth)?;
        let mut rhs = Vec::new();
        for t in self.algebra.desc().mu_enumerate(i, depth)? {
            match self.algebra.fold(i, &t) {
                Ok(y) if y == *x => rhs.push(t),
                Ok(_) | Err(Error::CarrierOverflow(_)) => {}
                Err(e) => return Err(e),
            }
        }
        let mut r = Report::new("coherence");
        r.count("lhs", lhs.len());
        r.count("rhs", rhs.len());
        r.expect(lhs.len() == rhs.len(), || format!("{} refined trees but {} plain trees", lhs.len(), rhs.len()));
        let alg = ornamental_algebra(&self.ornament, depth)?;
        for t in &rhs {
            let (jx, lifted) = self.remember(i, t)?;
            r.expect(jx == ix && lhs.contains(&lifted), || format!("remember {t} is not a refined tree at {ix}"));
            let back = MuTree::new(alg.fold(&ix, &lifted)?)?;
            r.expect(back == *t, || format!("forget after remember changes {t} into {back}"));
        }
        for t in &lhs {
            let plain = MuTree::new(alg.fold(&ix, t)?)?;
            r.expect(rhs.contains(&plain), || format!("forget {t} does not fold to {x}"));
            let (_, again) = self.remember(i, &plain)?;
            r.expect(again == *t, || format!("remember after forget changes {t}"));
        }
        Ok(r)
    }
}

pub fn remember(alg: &Algebra, i: &Value, t: &MuTree) -> Result<(Value, MuTree)> {
    algebraic_ornament(alg)?.remember(i, t)
}

pub fn recompute(alg: &Algebra, ix: &Value, t: &MuTree) -> Result<(MuTree, Value)> {
    algebraic_ornament(alg)?.recompute(ix, t)
}

pub fn check_coherence(alg: &Algebra, i: &Value, x: &Value, depth: usize) -> Result<Report> {
    algebraic_ornament(alg)?.check_coherence(i, x, depth)
}
