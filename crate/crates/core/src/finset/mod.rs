//! Symbolic finite sets, their canonical enumeration, and total finite
//! functions between them.
//!
//! Every set enumerates in a fixed order: `Enum` in declaration order, `Sum`
//! left before right, products lexicographically with the first component
//! major. Bijection checks elsewhere in the crate compare by position, so this
//! order is part of the contract.

mod func;
mod value;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use func::FinFn;
pub use value::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinSet {
    Enum(Vec<Arc<str>>),
    Sum(Box<FinSet>, Box<FinSet>),
    Prod(Box<FinSet>, Box<FinSet>),
    /// `[Refl]` when both sides are structurally equal, empty otherwise.
    Eq(Value, Value),
    /// `InvWit(a)` for every `a` with `f(a) = t`.
    InvImg(Arc<FinFn>, Value),
    Named(String),
    /// An explicit list of distinct values, in the given order.
    Lit(Vec<Value>),
    /// Dependent sum: `Pair(s, t)` with `t` drawn from the fibre over `s`.
    DSum(Box<FinSet>, BTreeMap<Value, FinSet>),
    /// Dependent product, reified as tuples keyed by the base enumeration.
    DProd(Box<FinSet>, BTreeMap<Value, FinSet>),
}

impl FinSet {
    pub fn enumeration<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        FinSet::Enum(labels.into_iter().map(|l| Arc::from(l.as_ref())).collect())
    }

    /// Truncated naturals `0..n`.
    pub fn nat(n: usize) -> Self {
        FinSet::Enum((0..n).map(|k| Arc::from(k.to_string())).collect())
    }

    pub fn lit(values: impl IntoIterator<Item = Value>) -> Self {
        FinSet::Lit(values.into_iter().collect())
    }

    pub fn unit() -> Self {
        FinSet::Lit(vec![Value::Unit])
    }

    pub fn empty() -> Self {
        FinSet::Lit(Vec::new())
    }

    /// The one-point index set `{star}` used for unindexed datatypes.
    pub fn star() -> Self {
        FinSet::enumeration(["star"])
    }

    pub fn sum(a: FinSet, b: FinSet) -> Self {
        FinSet::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: FinSet, b: FinSet) -> Self {
        FinSet::Prod(Box::new(a), Box::new(b))
    }

    pub fn dsum(base: FinSet, fibres: BTreeMap<Value, FinSet>) -> Self {
        FinSet::DSum(Box::new(base), fibres)
    }

    pub fn dprod(base: FinSet, fibres: BTreeMap<Value, FinSet>) -> Self {
        FinSet::DProd(Box::new(base), fibres)
    }

    pub fn enumerate(&self) -> Result<Vec<Value>> {
        match self {
            FinSet::Enum(ls) => Ok(ls.iter().map(|l| Value::Label(l.clone())).collect()),
            FinSet::Sum(a, b) => {
                let mut out: Vec<Value> = a.enumerate()?.into_iter().map(Value::inl).collect();
                out.extend(b.enumerate()?.into_iter().map(Value::inr));
                Ok(out)
            }
            FinSet::Prod(a, b) => {
                let left = a.enumerate()?;
                let right = b.enumerate()?;
                let mut out = Vec::with_capacity(left.len() * right.len());
                for x in &left {
                    for y in &right {
                        out.push(Value::pair(x.clone(), y.clone()));
                    }
                }
                Ok(out)
            }
            FinSet::Eq(v, w) => Ok(if v == w { vec![Value::Refl] } else { Vec::new() }),
            FinSet::InvImg(f, t) => Ok(f.preimages(t)?.into_iter().map(Value::inv_wit).collect()),
            FinSet::Named(n) => Err(Error::UnresolvedName(n.clone())),
            FinSet::Lit(vs) => Ok(vs.clone()),
            FinSet::DSum(base, fibres) => {
                let mut out = Vec::new();
                for s in base.enumerate()? {
                    for t in fibre(fibres, &s)?.enumerate()? {
                        out.push(Value::pair(s.clone(), t));
                    }
                }
                Ok(out)
            }
            FinSet::DProd(base, fibres) => {
                let keys = base.enumerate()?;
                let mut columns = Vec::with_capacity(keys.len());
                for s in &keys {
                    columns.push(fibre(fibres, s)?.enumerate()?);
                }
                Ok(cartesian(&columns))
            }
        }
    }

    /// Number of elements, computed arithmetically.
    pub fn cardinality(&self) -> Result<usize> {
        match self {
            FinSet::Enum(ls) => Ok(ls.len()),
            FinSet::Sum(a, b) => Ok(a.cardinality()? + b.cardinality()?),
            FinSet::Prod(a, b) => Ok(a.cardinality()? * b.cardinality()?),
            FinSet::Eq(v, w) => Ok(usize::from(v == w)),
            FinSet::InvImg(f, t) => Ok(f.preimages(t)?.len()),
            FinSet::Named(n) => Err(Error::UnresolvedName(n.clone())),
            FinSet::Lit(vs) => Ok(vs.len()),
            FinSet::DSum(base, fibres) => {
                let mut n = 0;
                for s in base.enumerate()? {
                    n += fibre(fibres, &s)?.cardinality()?;
                }
                Ok(n)
            }
            FinSet::DProd(base, fibres) => {
                let mut n = 1;
                for s in base.enumerate()? {
                    n *= fibre(fibres, &s)?.cardinality()?;
                }
                Ok(n)
            }
        }
    }

    pub fn contains(&self, v: &Value) -> Result<bool> {
        match (self, v) {
            (FinSet::Enum(ls), Value::Label(l)) => Ok(ls.iter().any(|x| x == l)),
            (FinSet::Enum(_), _) => Ok(false),
            (FinSet::Sum(a, _), Value::InL(x)) => a.contains(x),
            (FinSet::Sum(_, b), Value::InR(x)) => b.contains(x),
            (FinSet::Sum(..), _) => Ok(false),
            (FinSet::Prod(a, b), Value::Pair(x, y)) => Ok(a.contains(x)? && b.contains(y)?),
            (FinSet::Prod(..), _) => Ok(false),
            (FinSet::Eq(a, b), Value::Refl) => Ok(a == b),
            (FinSet::Eq(..), _) => Ok(false),
            (FinSet::InvImg(f, t), Value::InvWit(a)) => {
                Ok(f.dom().contains(a)? && &f.apply(a)? == t)
            }
            (FinSet::InvImg(..), _) => Ok(false),
            (FinSet::Named(n), _) => Err(Error::UnresolvedName(n.clone())),
            (FinSet::Lit(vs), _) => Ok(vs.contains(v)),
            (FinSet::DSum(base, fibres), Value::Pair(s, t)) => {
                Ok(base.contains(s)? && fibre(fibres, s)?.contains(t)?)
            }
            (FinSet::DSum(..), _) => Ok(false),
            (FinSet::DProd(base, fibres), _) => {
                let keys = base.enumerate()?;
                let Some(parts) = v.untuple(keys.len()) else {
                    return Ok(false);
                };
                for (s, x) in keys.iter().zip(parts) {
                    if !fibre(fibres, s)?.contains(x)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// True when both sets enumerate to the same sequence.
    pub fn same_as(&self, other: &FinSet) -> Result<bool> {
        Ok(self == other || self.enumerate()? == other.enumerate()?)
    }

    /// Replace every `Named` alias using `lookup`.
    pub fn resolve(&self, lookup: &dyn Fn(&str) -> Option<FinSet>) -> Result<FinSet> {
        Ok(match self {
            FinSet::Named(n) => lookup(n).ok_or_else(|| Error::UnresolvedName(n.clone()))?,
            FinSet::Sum(a, b) => FinSet::sum(a.resolve(lookup)?, b.resolve(lookup)?),
            FinSet::Prod(a, b) => FinSet::prod(a.resolve(lookup)?, b.resolve(lookup)?),
            FinSet::DSum(base, fs) => FinSet::dsum(base.resolve(lookup)?, resolve_fibres(fs, lookup)?),
            FinSet::DProd(base, fs) => {
                FinSet::dprod(base.resolve(lookup)?, resolve_fibres(fs, lookup)?)
            }
            other => other.clone(),
        })
    }

    /// Well-formedness violations: duplicate elements, unresolved names,
    /// non-total fibres.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_violations(&mut out);
        out
    }

    fn collect_violations(&self, out: &mut Vec<String>) {
        match self {
            FinSet::Enum(ls) => {
                for (k, l) in ls.iter().enumerate() {
                    if ls[..k].contains(l) {
                        out.push(format!("duplicate label {l} in {self}"));
                    }
                }
            }
            FinSet::Lit(vs) => {
                for (k, v) in vs.iter().enumerate() {
                    if vs[..k].contains(v) {
                        out.push(format!("duplicate value {v} in {self}"));
                    }
                }
            }
            FinSet::Named(n) => out.push(format!("unresolved set name {n}")),
            FinSet::Sum(a, b) | FinSet::Prod(a, b) => {
                a.collect_violations(out);
                b.collect_violations(out);
            }
            FinSet::DSum(base, fs) | FinSet::DProd(base, fs) => {
                base.collect_violations(out);
                match base.enumerate() {
                    Ok(keys) => {
                        for k in &keys {
                            match fs.get(k) {
                                Some(s) => s.collect_violations(out),
                                None => out.push(format!("missing fibre over {k}")),
                            }
                        }
                    }
                    Err(e) => out.push(e.to_string()),
                }
            }
            FinSet::Eq(..) | FinSet::InvImg(..) => {}
        }
    }
}

fn fibre<'a>(fibres: &'a BTreeMap<Value, FinSet>, s: &Value) -> Result<&'a FinSet> {
    fibres
        .get(s)
        .ok_or_else(|| Error::ill(format!("missing fibre over {s}")))
}

fn resolve_fibres(
    fs: &BTreeMap<Value, FinSet>,
    lookup: &dyn Fn(&str) -> Option<FinSet>,
) -> Result<BTreeMap<Value, FinSet>> {
    fs.iter()
        .map(|(k, s)| Ok((k.clone(), s.resolve(lookup)?)))
        .collect()
}

/// Lexicographic product of columns, first column major, as tuples.
pub(crate) fn cartesian(columns: &[Vec<Value>]) -> Vec<Value> {
    if columns.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    let total: usize = columns.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; columns.len()];
    loop {
        out.push(Value::tuple(
            idx.iter().zip(columns).map(|(&k, c)| c[k].clone()).collect::<Vec<_>>(),
        ));
        let mut pos = columns.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < columns[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn is_nat_enum(ls: &[Arc<str>]) -> bool {
    !ls.is_empty() && ls.iter().enumerate().all(|(k, l)| **l == *k.to_string())
}

fn write_fibres(f: &mut fmt::Formatter<'_>, fs: &BTreeMap<Value, FinSet>) -> fmt::Result {
    write!(f, "(")?;
    for (k, (v, s)) in fs.iter().enumerate() {
        if k > 0 {
            write!(f, " ")?;
        }
        write!(f, "({v} {s})")?;
    }
    write!(f, ")")
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinSet::Enum(ls) if is_nat_enum(ls) => write!(f, "(nat< {})", ls.len()),
            FinSet::Enum(ls) => {
                write!(f, "(enum")?;
                for l in ls {
                    write!(f, " {l}")?;
                }
                write!(f, ")")
            }
            FinSet::Sum(a, b) => write!(f, "(sum {a} {b})"),
            FinSet::Prod(a, b) => write!(f, "(prod {a} {b})"),
            FinSet::Eq(a, b) => write!(f, "(eq {a} {b})"),
            FinSet::InvImg(g, t) => write!(f, "(inv {} {t})", g.label().unwrap_or("_")),
            FinSet::Named(n) => write!(f, "{n}"),
            FinSet::Lit(vs) => {
                write!(f, "(lit")?;
                for v in vs {
                    write!(f, " {v}")?;
                }
                write!(f, ")")
            }
            FinSet::DSum(base, fs) => {
                write!(f, "(dsum {base} ")?;
                write_fibres(f, fs)?;
                write!(f, ")")
            }
            FinSet::DProd(base, fs) => {
                write!(f, "(dprod {base} ")?;
                write_fibres(f, fs)?;
                write!(f, ")")
            }
        }
    }
}

/// An index-set-indexed family of finite sets, `X : I → Set`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    index: FinSet,
    at: BTreeMap<Value, FinSet>,
}

impl Family {
    pub fn new(index: FinSet, mut f: impl FnMut(&Value) -> Result<FinSet>) -> Result<Self> {
        let mut at = BTreeMap::new();
        for i in index.enumerate()? {
            let s = f(&i)?;
            at.insert(i, s);
        }
        Ok(Family { index, at })
    }

    pub fn from_map(index: FinSet, at: BTreeMap<Value, FinSet>) -> Result<Self> {
        let missing: Vec<String> = index
            .enumerate()?
            .into_iter()
            .filter(|i| !at.contains_key(i))
            .map(|i| format!("family has no set at index {i}"))
            .collect();
        if !missing.is_empty() {
            return Err(Error::IllFormed(missing));
        }
        Ok(Family { index, at })
    }

    pub fn uniform(index: FinSet, set: FinSet) -> Result<Self> {
        Self::new(index, |_| Ok(set.clone()))
    }

    pub fn index(&self) -> &FinSet {
        &self.index
    }

    pub fn at(&self, i: &Value) -> Result<&FinSet> {
        self.at
            .get(i)
            .ok_or_else(|| Error::IndexMismatch(format!("{i} is not an index of the family")))
    }

    /// Pointwise cardinalities in index order.
    pub fn counts(&self) -> Result<Vec<(Value, usize)>> {
        self.index
            .enumerate()?
            .into_iter()
            .map(|i| {
                let n = self.at(&i)?.cardinality()?;
                Ok((i, n))
            })
            .collect()
    }

    /// Every family over `index` whose components are literal sets of at
    /// most `max` fresh labels (`x0`, `x1`, ...).
    pub fn all_small(index: &FinSet, max: usize) -> Result<Vec<Family>> {
        let keys = index.enumerate()?;
        let sizes: Vec<Vec<Value>> = keys.iter().map(|_| (0..=max).map(Value::num).collect()).collect();
        cartesian(&sizes)
            .into_iter()
            .map(|choice| {
                let ns = choice.untuple(keys.len()).expect("tuple of sizes");
                let at = keys
                    .iter()
                    .zip(ns)
                    .map(|(i, n)| {
                        let n = n.as_num().expect("numeral");
                        (i.clone(), FinSet::lit((0..n).map(|k| Value::label(format!("x{k}")))))
                    })
                    .collect();
                Family::from_map(index.clone(), at)
            })
            .collect()
    }
}
