use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{FinSet, Family, Value};

/// A description code: `var i`, `1`, `Σ S T` or `Π S T`.
///
/// Branch maps are keyed by the elements of `S`; a well-formed code has
/// exactly one branch per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescCode {
    Var(Value),
    One,
    Sigma(FinSet, BTreeMap<Value, DescCode>),
    Pi(FinSet, BTreeMap<Value, DescCode>),
}

fn malformed(code: &DescCode, v: &Value) -> Error {
    Error::MalformedElement(format!("{v} does not inhabit {code}"))
}

pub(crate) fn branch<'a, C>(map: &'a BTreeMap<Value, C>, s: &Value) -> Result<&'a C> {
    map.get(s)
        .ok_or_else(|| Error::MalformedElement(format!("no branch for {s}")))
}

/// Builds a branch table over every element of `s`.
pub(crate) fn tabulate<C>(
    s: &FinSet,
    mut f: impl FnMut(&Value) -> Result<C>,
) -> Result<BTreeMap<Value, C>> {
    let mut out = BTreeMap::new();
    for x in s.enumerate()? {
        let c = f(&x)?;
        out.insert(x, c);
    }
    Ok(out)
}

impl DescCode {
    pub fn var(i: Value) -> Self {
        DescCode::Var(i)
    }

    pub fn sigma(s: FinSet, f: impl FnMut(&Value) -> Result<DescCode>) -> Result<Self> {
        let b = tabulate(&s, f)?;
        Ok(DescCode::Sigma(s, b))
    }

    pub fn pi(s: FinSet, f: impl FnMut(&Value) -> Result<DescCode>) -> Result<Self> {
        let b = tabulate(&s, f)?;
        Ok(DescCode::Pi(s, b))
    }

    /// `⟦code⟧ x` as a symbolic finite set.
    pub fn interp(&self, x: &Family) -> Result<FinSet> {
        Ok(match self {
            DescCode::Var(i) => x.at(i)?.clone(),
            DescCode::One => FinSet::unit(),
            DescCode::Sigma(s, b) => FinSet::dsum(s.clone(), interp_branches(b, x)?),
            DescCode::Pi(s, b) => FinSet::dprod(s.clone(), interp_branches(b, x)?),
        })
    }

    /// The shapes of the code, i.e. its interpretation at the terminal family.
    pub fn shapes(&self) -> Result<FinSet> {
        Ok(match self {
            DescCode::Var(_) | DescCode::One => FinSet::unit(),
            DescCode::Sigma(s, b) => FinSet::dsum(s.clone(), shapes_of(b)?),
            DescCode::Pi(s, b) => FinSet::dprod(s.clone(), shapes_of(b)?),
        })
    }

    /// The recursive positions of shape `sh`.
    pub fn positions(&self, sh: &Value) -> Result<FinSet> {
        match self {
            DescCode::Var(_) => Ok(FinSet::unit()),
            DescCode::One => Ok(FinSet::empty()),
            DescCode::Sigma(_, b) => {
                let (s, rest) = sh.as_pair().ok_or_else(|| malformed(self, sh))?;
                branch(b, s)?.positions(rest)
            }
            DescCode::Pi(s, b) => {
                let keys = s.enumerate()?;
                let parts = sh.untuple(keys.len()).ok_or_else(|| malformed(self, sh))?;
                let mut fibres = BTreeMap::new();
                for (k, part) in keys.iter().zip(parts) {
                    fibres.insert(k.clone(), branch(b, k)?.positions(part)?);
                }
                Ok(FinSet::dsum(s.clone(), fibres))
            }
        }
    }

    /// The input index a position of shape `sh` points to.
    pub fn next(&self, sh: &Value, p: &Value) -> Result<Value> {
        match self {
            DescCode::Var(i) if *p == Value::Unit => Ok(i.clone()),
            DescCode::Var(_) | DescCode::One => {
                Err(Error::MalformedElement(format!("{p} is not a position of {self}")))
            }
            DescCode::Sigma(_, b) => {
                let (s, rest) = sh.as_pair().ok_or_else(|| malformed(self, sh))?;
                branch(b, s)?.next(rest, p)
            }
            DescCode::Pi(s, b) => {
                let keys = s.enumerate()?;
                let parts = sh.untuple(keys.len()).ok_or_else(|| malformed(self, sh))?;
                let (k, q) = p.as_pair().ok_or_else(|| malformed(self, p))?;
                let at = keys.iter().position(|x| x == k).ok_or_else(|| malformed(self, p))?;
                branch(b, k)?.next(parts[at], q)
            }
        }
    }

    /// Splits an element of the interpretation into its shape and the
    /// values at its positions, each tagged with its input index. Leaves
    /// come out in position enumeration order.
    pub fn split(&self, v: &Value) -> Result<(Value, Vec<(Value, Value)>)> {
        let mut leaves = Vec::new();
        let sh = self.split_into(v, &mut leaves)?;
        Ok((sh, leaves))
    }

    fn split_into(&self, v: &Value, leaves: &mut Vec<(Value, Value)>) -> Result<Value> {
        match self {
            DescCode::Var(i) => {
                leaves.push((i.clone(), v.clone()));
                Ok(Value::Unit)
            }
            DescCode::One if *v == Value::Unit => Ok(Value::Unit),
            DescCode::One => Err(malformed(self, v)),
            DescCode::Sigma(_, b) => {
                let (s, rest) = v.as_pair().ok_or_else(|| malformed(self, v))?;
                let inner = branch(b, s)?.split_into(rest, leaves)?;
                Ok(Value::pair(s.clone(), inner))
            }
            DescCode::Pi(s, b) => {
                let keys = s.enumerate()?;
                let parts = v.untuple(keys.len()).ok_or_else(|| malformed(self, v))?;
                let mut shapes = Vec::with_capacity(keys.len());
                for (k, part) in keys.iter().zip(parts) {
                    shapes.push(branch(b, k)?.split_into(part, leaves)?);
                }
                Ok(Value::tuple(shapes))
            }
        }
    }

    /// Inverse of [`DescCode::split`]: fills the positions of `sh` with
    /// `leaves`, consumed in position order.
    pub fn build(&self, sh: &Value, leaves: &mut dyn Iterator<Item = Value>) -> Result<Value> {
        match self {
            DescCode::Var(_) => leaves
                .next()
                .ok_or_else(|| Error::MalformedElement(format!("too few values for {self}"))),
            DescCode::One if *sh == Value::Unit => Ok(Value::Unit),
            DescCode::One => Err(malformed(self, sh)),
            DescCode::Sigma(_, b) => {
                let (s, rest) = sh.as_pair().ok_or_else(|| malformed(self, sh))?;
                Ok(Value::pair(s.clone(), branch(b, s)?.build(rest, leaves)?))
            }
            DescCode::Pi(s, b) => {
                let keys = s.enumerate()?;
                let parts = sh.untuple(keys.len()).ok_or_else(|| malformed(self, sh))?;
                let mut out = Vec::with_capacity(keys.len());
                for (k, part) in keys.iter().zip(parts) {
                    out.push(branch(b, k)?.build(part, leaves)?);
                }
                Ok(Value::tuple(out))
            }
        }
    }

    /// Builds from a complete list of leaves, rejecting leftovers.
    pub fn build_exact(&self, sh: &Value, leaves: Vec<Value>) -> Result<Value> {
        let mut it = leaves.into_iter();
        let v = self.build(sh, &mut it)?;
        if it.next().is_some() {
            return Err(Error::MalformedElement(format!("too many values for shape {sh}")));
        }
        Ok(v)
    }

    /// The only shape of a code without `Σ`.
    pub fn unique_shape(&self) -> Result<Value> {
        match self {
            DescCode::Var(_) | DescCode::One => Ok(Value::Unit),
            DescCode::Sigma(..) => Err(Error::ill(format!("{self} has more than one shape"))),
            DescCode::Pi(s, b) => {
                let keys = s.enumerate()?;
                let mut out = Vec::with_capacity(keys.len());
                for k in &keys {
                    out.push(branch(b, k)?.unique_shape()?);
                }
                Ok(Value::tuple(out))
            }
        }
    }

    /// Replaces every `var i` by `f(i)`.
    pub fn subst(&self, f: &mut dyn FnMut(&Value) -> Result<DescCode>) -> Result<DescCode> {
        Ok(match self {
            DescCode::Var(i) => f(i)?,
            DescCode::One => DescCode::One,
            DescCode::Sigma(s, b) => DescCode::Sigma(s.clone(), subst_branches(b, f)?),
            DescCode::Pi(s, b) => DescCode::Pi(s.clone(), subst_branches(b, f)?),
        })
    }

    pub(crate) fn collect_violations(&self, in_idx: &FinSet, at: &str, out: &mut Vec<String>) {
        match self {
            DescCode::Var(i) => match in_idx.contains(i) {
                Ok(true) => {}
                Ok(false) => out.push(format!("{at}: var {i} is not an input index")),
                Err(e) => out.push(format!("{at}: {e}")),
            },
            DescCode::One => {}
            DescCode::Sigma(s, b) | DescCode::Pi(s, b) => {
                out.extend(s.violations().into_iter().map(|m| format!("{at}: {m}")));
                branch_violations(s, b, at, out);
                for (k, c) in b {
                    c.collect_violations(in_idx, &format!("{at}/{k}"), out);
                }
            }
        }
    }
}

/// Reports missing and extraneous branch keys against the enumeration of `s`.
pub(crate) fn branch_violations<C>(
    s: &FinSet,
    b: &BTreeMap<Value, C>,
    at: &str,
    out: &mut Vec<String>,
) {
    match s.enumerate() {
        Ok(keys) => {
            for k in &keys {
                if !b.contains_key(k) {
                    out.push(format!("{at}: missing branch for {k}"));
                }
            }
            for k in b.keys() {
                if !keys.contains(k) {
                    out.push(format!("{at}: branch {k} is not an element of {s}"));
                }
            }
        }
        Err(e) => out.push(format!("{at}: {e}")),
    }
}

fn interp_branches(b: &BTreeMap<Value, DescCode>, x: &Family) -> Result<BTreeMap<Value, FinSet>> {
    b.iter().map(|(k, c)| Ok((k.clone(), c.interp(x)?))).collect()
}

fn shapes_of(b: &BTreeMap<Value, DescCode>) -> Result<BTreeMap<Value, FinSet>> {
    b.iter().map(|(k, c)| Ok((k.clone(), c.shapes()?))).collect()
}

fn subst_branches(
    b: &BTreeMap<Value, DescCode>,
    f: &mut dyn FnMut(&Value) -> Result<DescCode>,
) -> Result<BTreeMap<Value, DescCode>> {
    b.iter().map(|(k, c)| Ok((k.clone(), c.subst(f)?))).collect()
}

pub(crate) fn write_branches<C: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    keys: &[Value],
    b: &BTreeMap<Value, C>,
) -> fmt::Result {
    write!(f, "(")?;
    let mut first = true;
    // Declared order first so printed tables read like the set they cover.
    let extra = b.keys().filter(|k| !keys.contains(k));
    for k in keys.iter().filter(|k| b.contains_key(*k)).chain(extra) {
        if !first {
            write!(f, " ")?;
        }
        first = false;
        write!(f, "({k} {})", b[k])?;
    }
    write!(f, ")")
}

impl fmt::Display for DescCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescCode::Var(i) => write!(f, "(var {i})"),
            DescCode::One => write!(f, "one"),
            DescCode::Sigma(s, b) | DescCode::Pi(s, b) => {
                let head = if matches!(self, DescCode::Sigma(..)) { "sigma" } else { "pi" };
                write!(f, "({head} {s} ")?;
                write_branches(f, &s.enumerate().unwrap_or_default(), b)?;
                write!(f, ")")
            }
        }
    }
}
