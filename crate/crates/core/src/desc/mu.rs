use std::collections::{BTreeMap, HashSet};
use std::fmt;

use super::DescFam;
use crate::error::{Error, Result};
use crate::finset::{Family, FinSet, Value};

/// An inhabitant of `μD`: a `Con` node whose payload inhabits the
/// interpretation of the description, with subtrees at its positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MuTree(Value);

impl MuTree {
    pub fn new(v: Value) -> Result<Self> {
        match v {
            Value::Con(_) => Ok(MuTree(v)),
            other => Err(Error::MalformedElement(format!("{other} is not a constructor node"))),
        }
    }

    pub fn con(payload: Value) -> Self {
        MuTree(Value::con(payload))
    }

    pub fn payload(&self) -> &Value {
        self.0.as_con().expect("constructor node")
    }

    pub fn value(&self) -> &Value {
        &self.0
    }

    pub fn into_value(self) -> Value {
        self.0
    }
}

impl fmt::Display for MuTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl DescFam {
    /// Trees of depth at most `depth` at every index, each list ordered by
    /// depth and then by the canonical order of the interpretation.
    pub fn mu_family(&self, depth: usize) -> Result<Family> {
        self.require_endo()?;
        let idx = self.in_idx().enumerate()?;
        let mut levels: BTreeMap<Value, Vec<Value>> =
            idx.iter().map(|i| (i.clone(), Vec::new())).collect();
        for _ in 0..depth {
            let x = Family::from_map(
                self.in_idx().clone(),
                levels.iter().map(|(i, ts)| (i.clone(), FinSet::Lit(ts.clone()))).collect(),
            )?;
            let mut grown = levels.clone();
            let mut changed = false;
            for i in &idx {
                let seen: HashSet<&Value> = levels[i].iter().collect();
                let fresh: Vec<Value> = self
                    .at(i)?
                    .interp(&x)?
                    .enumerate()?
                    .into_iter()
                    .map(Value::con)
                    .filter(|t| !seen.contains(t))
                    .collect();
                changed |= !fresh.is_empty();
                grown.get_mut(i).expect("index").extend(fresh);
            }
            levels = grown;
            if !changed {
                break;
            }
        }
        Family::from_map(
            self.in_idx().clone(),
            levels.into_iter().map(|(i, ts)| (i, FinSet::Lit(ts))).collect(),
        )
    }

    pub fn mu_enumerate(&self, j: &Value, depth: usize) -> Result<Vec<MuTree>> {
        self.require_endo()?;
        if !self.in_idx().contains(j)? {
            return Err(Error::IndexMismatch(format!("{j} is not an index of the description")));
        }
        Ok(self
            .mu_family(depth)?
            .at(j)?
            .enumerate()?
            .into_iter()
            .map(MuTree)
            .collect())
    }

    pub fn mu_count(&self, j: &Value, depth: usize) -> Result<usize> {
        Ok(self.mu_enumerate(j, depth)?.len())
    }

    /// Depth of `t` read as a tree at index `j`; fails unless `t` is
    /// well-indexed there.
    pub fn tree_depth(&self, j: &Value, t: &MuTree) -> Result<usize> {
        let code = self.at(j)?;
        let (sh, leaves) = code.split(t.payload())?;
        if !code.shapes()?.contains(&sh)? {
            return Err(Error::MalformedElement(format!("{t} has no valid shape at {j}")));
        }
        let mut deepest = 0;
        for (i, sub) in leaves {
            let sub = MuTree::new(sub)?;
            deepest = deepest.max(self.tree_depth(&i, &sub)?);
        }
        Ok(1 + deepest)
    }

    pub fn is_tree_at(&self, j: &Value, t: &MuTree) -> bool {
        self.tree_depth(j, t).is_ok()
    }

    /// The first index, in canonical order, at which `t` is well-indexed.
    pub fn index_of(&self, t: &MuTree) -> Result<Value> {
        self.out_idx()
            .enumerate()?
            .into_iter()
            .find(|j| self.is_tree_at(j, t))
            .ok_or_else(|| Error::MalformedElement(format!("{t} is not a tree of the description")))
    }
}

#[cfg(test)]
mod tests {
    use super::super::DescCode;
    use super::*;

    fn star() -> Value {
        Value::label("star")
    }

    fn nat_desc() -> DescFam {
        DescFam::tabulate(FinSet::star(), FinSet::star(), |_| {
            DescCode::sigma(FinSet::enumeration(["z", "s"]), |t| {
                Ok(if t.as_label() == Some("z") { DescCode::One } else { DescCode::Var(star()) })
            })
        })
        .unwrap()
    }

    fn numeral(k: usize) -> MuTree {
        let mut t = Value::con(Value::pair(Value::label("z"), Value::Unit));
        for _ in 0..k {
            t = Value::con(Value::pair(Value::label("s"), t));
        }
        MuTree::new(t).unwrap()
    }

    #[test]
    fn numerals_in_order() {
        let ts = nat_desc().mu_enumerate(&star(), 4).unwrap();
        assert_eq!(ts, (0..4).map(numeral).collect::<Vec<_>>());
        assert!(nat_desc().mu_enumerate(&star(), 0).unwrap().is_empty());
    }

    #[test]
    fn depth_and_index() {
        let d = nat_desc();
        assert_eq!(d.tree_depth(&star(), &numeral(2)).unwrap(), 3);
        assert_eq!(d.index_of(&numeral(1)).unwrap(), star());
        let bogus = MuTree::con(Value::pair(Value::label("q"), Value::Unit));
        assert!(d.index_of(&bogus).is_err());
    }

    #[test]
    fn non_endo_is_rejected() {
        let d = DescFam::tabulate(FinSet::star(), FinSet::nat(2), |_| Ok(DescCode::One)).unwrap();
        assert!(matches!(d.mu_enumerate(&Value::num(0), 2), Err(Error::IndexMismatch(_))));
    }
}
