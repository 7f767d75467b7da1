use std::collections::BTreeMap;

use super::{DescFam, MuTree};
use crate::error::{Error, Result};
use crate::finset::{Family, FinFn, FinSet, Value};

/// A finite algebra `⟦D⟧ X → X`, tabulated per index.
///
/// Over a truncated carrier some payloads have no image; the table at `i`
/// then covers only part of `⟦D⟧ X i`, and applying it elsewhere reports
/// [`Error::CarrierOverflow`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    desc: DescFam,
    carrier: Family,
    table: BTreeMap<Value, FinFn>,
}

impl Algebra {
    pub fn new(desc: DescFam, carrier: Family, table: BTreeMap<Value, FinFn>) -> Result<Self> {
        desc.require_endo()?;
        let fx = desc.interp(&carrier)?;
        let mut problems = Vec::new();
        for i in desc.in_idx().enumerate()? {
            let Some(f) = table.get(&i) else {
                problems.push(format!("no algebra table at {i}"));
                continue;
            };
            let (dom, cod) = (fx.at(&i)?, carrier.at(&i)?);
            for p in f.dom().enumerate()? {
                if !dom.contains(&p)? {
                    problems.push(format!("table entry {p} at {i} is not a payload over the carrier"));
                }
            }
            if !f.cod().same_as(cod)? {
                problems.push(format!("table at {i} does not land in the carrier"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::IllFormed(problems));
        }
        Ok(Algebra { desc, carrier, table })
    }

    /// Builds the table from `f`; `None` leaves a payload without image.
    pub fn tabulate(
        desc: DescFam,
        carrier: Family,
        mut f: impl FnMut(&Value, &Value) -> Result<Option<Value>>,
    ) -> Result<Self> {
        let fx = desc.interp(&carrier)?;
        let mut table = BTreeMap::new();
        for i in desc.in_idx().enumerate()? {
            let mut pairs = Vec::new();
            for p in fx.at(&i)?.enumerate()? {
                if let Some(x) = f(&i, &p)? {
                    pairs.push((p, x));
                }
            }
            let dom = FinSet::lit(pairs.iter().map(|(p, _)| p.clone()));
            table.insert(i.clone(), FinFn::from_pairs(dom, carrier.at(&i)?.clone(), pairs)?);
        }
        Self::new(desc, carrier, table)
    }

    /// Counts constructors that take at least one recursive argument, with
    /// values in `Nat<bound`. On lists this is the length.
    pub fn length(desc: DescFam, bound: usize) -> Result<Self> {
        let carrier = Family::uniform(desc.in_idx().clone(), FinSet::nat(bound))?;
        let d = desc.clone();
        Self::tabulate(desc, carrier, |i, p| {
            let (_, leaves) = d.at(i)?.split(p)?;
            let sum: usize = leaves.iter().map(|(_, n)| n.as_num().expect("numeral")).sum();
            let n = sum + usize::from(!leaves.is_empty());
            Ok((n < bound).then(|| Value::num(n)))
        })
    }

    /// The algebra into the one-point carrier.
    pub fn constant(desc: DescFam) -> Result<Self> {
        let carrier = Family::uniform(desc.in_idx().clone(), FinSet::unit())?;
        Self::tabulate(desc, carrier, |_, _| Ok(Some(Value::Unit)))
    }

    /// Carrier: the payloads of depth-one trees. Such payloads map to
    /// themselves; anything with a recursive argument is undefined.
    pub fn projection(desc: DescFam) -> Result<Self> {
        let empty = Family::uniform(desc.in_idx().clone(), FinSet::empty())?;
        let carrier = desc.interp(&empty)?;
        let carrier = Family::new(desc.in_idx().clone(), |i| Ok(FinSet::lit(carrier.at(i)?.enumerate()?)))?;
        let c = carrier.clone();
        Self::tabulate(desc, carrier, |i, p| Ok(c.at(i)?.contains(p)?.then(|| p.clone())))
    }

    pub fn desc(&self) -> &DescFam {
        &self.desc
    }

    pub fn carrier(&self) -> &Family {
        &self.carrier
    }

    pub fn table(&self, i: &Value) -> Result<&FinFn> {
        self.table
            .get(i)
            .ok_or_else(|| Error::IndexMismatch(format!("{i} is not an index of the algebra")))
    }

    pub fn apply(&self, i: &Value, payload: &Value) -> Result<Value> {
        self.table(i)?.apply(payload).map_err(|_| {
            Error::CarrierOverflow(format!("algebra at {i} has no image for {payload}"))
        })
    }

    /// The catamorphism: fold the subtrees, then apply the table.
    pub fn fold(&self, i: &Value, t: &MuTree) -> Result<Value> {
        let code = self.desc.at(i)?;
        let (sh, leaves) = code.split(t.payload())?;
        let mut folded = Vec::with_capacity(leaves.len());
        for (k, sub) in leaves {
            folded.push(self.fold(&k, &MuTree::new(sub)?)?);
        }
        let payload = code.build_exact(&sh, folded)?;
        self.apply(i, &payload)
    }
}

#[cfg(test)]
mod tests {
    use super::super::DescCode;
    use super::*;

    fn star() -> Value {
        Value::label("star")
    }

    fn list_desc() -> DescFam {
        DescFam::tabulate(FinSet::star(), FinSet::star(), |_| {
            DescCode::sigma(FinSet::enumeration(["z", "s"]), |t| {
                Ok(if t.as_label() == Some("z") {
                    DescCode::One
                } else {
                    DescCode::sigma(FinSet::enumeration(["a", "b"]), |_| Ok(DescCode::Var(star())))?
                })
            })
        })
        .unwrap()
    }

    fn list(items: &[&str]) -> MuTree {
        let mut t = Value::con(Value::pair(Value::label("z"), Value::Unit));
        for x in items.iter().rev() {
            t = Value::con(Value::pair(Value::label("s"), Value::pair(Value::label(x), t)));
        }
        MuTree::new(t).unwrap()
    }

    #[test]
    fn length_of_lists() {
        let alg = Algebra::length(list_desc(), 4).unwrap();
        assert_eq!(alg.fold(&star(), &list(&[])).unwrap(), Value::num(0));
        assert_eq!(alg.fold(&star(), &list(&["a", "b"])).unwrap(), Value::num(2));
        assert!(matches!(
            alg.fold(&star(), &list(&["a", "b", "a", "b"])),
            Err(Error::CarrierOverflow(_))
        ));
    }

    #[test]
    fn projection_returns_depth_one_payload() {
        let alg = Algebra::projection(list_desc()).unwrap();
        let nil = list(&[]);
        assert_eq!(alg.fold(&star(), &nil).unwrap(), *nil.payload());
    }

    #[test]
    fn constant_folds_to_unit() {
        let alg = Algebra::constant(list_desc()).unwrap();
        assert_eq!(alg.fold(&star(), &list(&["b"])).unwrap(), Value::Unit);
    }

    #[test]
    fn table_outside_payloads_is_rejected() {
        let d = list_desc();
        let carrier = Family::uniform(FinSet::star(), FinSet::unit()).unwrap();
        let bogus = FinFn::from_pairs(
            FinSet::lit([Value::label("nope")]),
            FinSet::unit(),
            [(Value::label("nope"), Value::Unit)],
        )
        .unwrap();
        let table = [(star(), bogus)].into_iter().collect();
        assert!(matches!(Algebra::new(d, carrier, table), Err(Error::IllFormed(_))));
    }
}
