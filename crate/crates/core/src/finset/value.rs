use std::fmt;
use std::sync::Arc;

/// Canonical inhabitants of the finite set calculus.
///
/// Tuples (the reified form of dependent products) are right-nested pairs
/// terminated by [`Value::Unit`]; the empty tuple is `Unit` itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Label(Arc<str>),
    Pair(Box<Value>, Box<Value>),
    InL(Box<Value>),
    InR(Box<Value>),
    Refl,
    InvWit(Box<Value>),
    Con(Box<Value>),
    Unit,
}

impl Value {
    pub fn label(name: impl AsRef<str>) -> Self {
        Value::Label(Arc::from(name.as_ref()))
    }

    /// The numeral `k` of the truncated naturals, a label spelled in decimal.
    pub fn num(k: usize) -> Self {
        Value::label(k.to_string())
    }

    pub fn pair(a: Value, b: Value) -> Self {
        Value::Pair(Box::new(a), Box::new(b))
    }

    pub fn inl(a: Value) -> Self {
        Value::InL(Box::new(a))
    }

    pub fn inr(a: Value) -> Self {
        Value::InR(Box::new(a))
    }

    pub fn inv_wit(a: Value) -> Self {
        Value::InvWit(Box::new(a))
    }

    pub fn con(payload: Value) -> Self {
        Value::Con(Box::new(payload))
    }

    pub fn tuple<I>(items: I) -> Self
    where
        I: IntoIterator<Item = Value>,
        I::IntoIter: DoubleEndedIterator,
    {
        items
            .into_iter()
            .rev()
            .fold(Value::Unit, |acc, v| Value::pair(v, acc))
    }

    /// Reads a tuple of exactly `len` components.
    pub fn untuple(&self, len: usize) -> Option<Vec<&Value>> {
        let mut out = Vec::with_capacity(len);
        let mut cur = self;
        for _ in 0..len {
            match cur {
                Value::Pair(a, rest) => {
                    out.push(a.as_ref());
                    cur = rest;
                }
                _ => return None,
            }
        }
        matches!(cur, Value::Unit).then_some(out)
    }

    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match self {
            Value::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_label(&self) -> Option<&str> {
        match self {
            Value::Label(l) => Some(l),
            _ => None,
        }
    }

    pub fn as_num(&self) -> Option<usize> {
        let l = self.as_label()?;
        if l.is_empty() || !l.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        l.parse().ok()
    }

    pub fn as_inv_wit(&self) -> Option<&Value> {
        match self {
            Value::InvWit(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_con(&self) -> Option<&Value> {
        match self {
            Value::Con(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Label(l) => write!(f, "{l}"),
            Value::Pair(a, b) => write!(f, "(pair {a} {b})"),
            Value::InL(a) => write!(f, "(inl {a})"),
            Value::InR(a) => write!(f, "(inr {a})"),
            Value::Refl => write!(f, "refl"),
            Value::InvWit(a) => write!(f, "(inv-wit {a})"),
            Value::Con(a) => write!(f, "(con {a})"),
            Value::Unit => write!(f, "unit"),
        }
    }
}
