use std::collections::BTreeMap;
use std::fmt;

use super::{FinSet, Value};
use crate::error::{Error, Result};

/// A total function between finite sets, stored as a table.
///
/// The optional label only names the function when it is printed inside an
/// inverse-image set; it takes no part in equality.
#[derive(Debug, Clone)]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    table: BTreeMap<Value, Value>,
    label: Option<String>,
}

impl PartialEq for FinFn {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.table == other.table
    }
}

impl Eq for FinFn {}

impl FinFn {
    pub fn tabulate(
        dom: FinSet,
        cod: FinSet,
        mut f: impl FnMut(&Value) -> Result<Value>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for a in dom.enumerate()? {
            let b = f(&a)?;
            if !cod.contains(&b)? {
                return Err(Error::Domain(format!("image {b} of {a} is not in the codomain")));
            }
            table.insert(a, b);
        }
        Ok(FinFn { dom, cod, table, label: None })
    }

    pub fn from_pairs(
        dom: FinSet,
        cod: FinSet,
        pairs: impl IntoIterator<Item = (Value, Value)>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (a, b) in pairs {
            if table.insert(a.clone(), b).is_some() {
                return Err(Error::ill(format!("duplicate table entry for {a}")));
            }
        }
        let elems = dom.enumerate()?;
        let mut problems = Vec::new();
        for a in &elems {
            match table.get(a) {
                None => problems.push(format!("missing table entry for {a}")),
                Some(b) if !cod.contains(b)? => {
                    problems.push(format!("image {b} of {a} is not in the codomain"))
                }
                Some(_) => {}
            }
        }
        for a in table.keys() {
            if !elems.contains(a) {
                problems.push(format!("table entry {a} is not in the domain"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::IllFormed(problems));
        }
        Ok(FinFn { dom, cod, table, label: None })
    }

    pub fn identity(s: FinSet) -> Result<Self> {
        Self::tabulate(s.clone(), s, |a| Ok(a.clone()))
    }

    pub fn constant(dom: FinSet, cod: FinSet, value: Value) -> Result<Self> {
        Self::tabulate(dom, cod, |_| Ok(value.clone()))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FinFn) -> Result<Self> {
        FinFn::tabulate(inner.dom.clone(), self.cod.clone(), |a| self.apply(&inner.apply(a)?))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn apply(&self, v: &Value) -> Result<Value> {
        self.table
            .get(v)
            .cloned()
            .ok_or_else(|| Error::Domain(format!("{v} is not in the domain of the function")))
    }

    /// Table entries in domain enumeration order.
    pub fn entries(&self) -> Result<Vec<(Value, Value)>> {
        Ok(self
            .dom
            .enumerate()?
            .into_iter()
            .map(|a| {
                let b = self.table[&a].clone();
                (a, b)
            })
            .collect())
    }

    /// Preimages of `t`, in domain order.
    pub fn preimages(&self, t: &Value) -> Result<Vec<Value>> {
        Ok(self
            .dom
            .enumerate()?
            .into_iter()
            .filter(|a| self.table.get(a) == Some(t))
            .collect())
    }

    /// `InvImg(self, t)`; `t` must lie in the codomain.
    pub fn inverse_image(&self, t: &Value) -> Result<FinSet> {
        if !self.cod.contains(t)? {
            return Err(Error::Domain(format!("{t} is not in the codomain of the function")));
        }
        Ok(FinSet::InvImg(std::sync::Arc::new(self.clone()), t.clone()))
    }

    /// Extensional equality: domains enumerate equally and the tables agree.
    pub fn ext_eq(&self, other: &FinFn) -> Result<bool> {
        let a = self.dom.enumerate()?;
        if a != other.dom.enumerate()? {
            return Ok(false);
        }
        Ok(a.iter().all(|x| self.table.get(x) == other.table.get(x)))
    }
}

impl fmt::Display for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(fn {} {} {} (", self.label.as_deref().unwrap_or("_"), self.dom, self.cod)?;
        let mut first = true;
        for (a, b) in &self.table {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "({a} {b})")?;
        }
        write!(f, "))")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twice(n: usize) -> FinFn {
        FinFn::tabulate(FinSet::nat(n), FinSet::nat(2 * n), |a| {
            Ok(Value::num(2 * a.as_num().unwrap()))
        })
        .unwrap()
    }

    #[test]
    fn identity_and_constant() {
        let s = FinSet::enumeration(["z", "s"]);
        let id = FinFn::identity(s.clone()).unwrap();
        assert_eq!(id.apply(&Value::label("z")).unwrap(), Value::label("z"));
        let unit = FinSet::lit([Value::Unit]);
        let k = FinFn::constant(s, unit, Value::Unit).unwrap();
        assert_eq!(k.apply(&Value::label("s")).unwrap(), Value::Unit);
    }

    #[test]
    fn successor_on_truncated_naturals() {
        let suc = FinFn::tabulate(FinSet::nat(4), FinSet::nat(5), |a| {
            Ok(Value::num(a.as_num().unwrap() + 1))
        })
        .unwrap();
        assert_eq!(suc.apply(&Value::num(2)).unwrap(), Value::num(3));
    }

    #[test]
    fn apply_outside_domain() {
        let f = twice(3);
        assert!(matches!(f.apply(&Value::num(5)), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_images() {
        let f = twice(3);
        let s = f.inverse_image(&Value::num(4)).unwrap();
        assert_eq!(s.enumerate().unwrap(), vec![Value::inv_wit(Value::num(2))]);
        let odd = f.inverse_image(&Value::num(3)).unwrap();
        assert!(odd.enumerate().unwrap().is_empty());
        assert!(matches!(f.inverse_image(&Value::num(9)), Err(Error::Domain(_))));

        let dom = FinSet::enumeration(["a", "b", "c"]);
        let unit = FinSet::lit([Value::Unit]);
        let k = FinFn::constant(dom, unit, Value::Unit).unwrap();
        let all = k.inverse_image(&Value::Unit).unwrap().enumerate().unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!(all[0], Value::inv_wit(Value::label("a")));
    }

    #[test]
    fn from_pairs_reports_missing_entries() {
        let dom = FinSet::enumeration(["a", "b"]);
        let err = FinFn::from_pairs(dom.clone(), dom, [(Value::label("a"), Value::label("b"))])
            .unwrap_err();
        assert!(err.to_string().contains("missing table entry for b"));
    }

    #[test]
    fn extensional_equality_ignores_labels() {
        let a = twice(2).with_label("twice");
        let b = twice(2);
        assert_eq!(a, b);
        assert!(a.ext_eq(&b).unwrap());
    }
}
