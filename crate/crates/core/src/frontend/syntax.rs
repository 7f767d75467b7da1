//! Typed forms read from s-expressions. Names stay unresolved here; the
//! evaluator looks them up.

use std::collections::BTreeSet;
use std::fmt;

use super::sexpr::{ParseError, Pos, Sexpr};
use crate::finset::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Enum(Vec<String>),
    Sum(Box<SetExpr>, Box<SetExpr>),
    Prod(Box<SetExpr>, Box<SetExpr>),
    Eq(Value, Value),
    Inv(Name, Value),
    Nat(usize),
    Lit(Vec<Value>),
    DSum(Box<SetExpr>, Vec<(Value, SetExpr)>),
    DProd(Box<SetExpr>, Vec<(Value, SetExpr)>),
    Named(Name),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescExpr {
    Var(Value),
    One,
    Sigma(SetExpr, Vec<(Value, DescExpr)>),
    Pi(SetExpr, Vec<(Value, DescExpr)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrnExpr {
    Insert(SetExpr, Vec<(Value, OrnExpr)>),
    Delete(Value, Box<OrnExpr>),
    VarInv(Value),
    One,
    Sigma(Vec<(Value, OrnExpr)>),
    Pi(Vec<(Value, OrnExpr)>),
}

/// A family of sets over an index set that is known from context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamExpr {
    Uniform(SetExpr),
    Table(Vec<(Value, SetExpr)>),
    /// Every family whose components have at most this many elements.
    AllSmall(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Set,
    Fn,
    Desc,
    Orn,
    Alg,
    Cart,
    Container,
    AlgOrn,
    Pullback,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Set => "set",
            Kind::Fn => "fn",
            Kind::Desc => "desc",
            Kind::Orn => "orn",
            Kind::Alg => "alg",
            Kind::Cart => "cart",
            Kind::Container => "container",
            Kind::AlgOrn => "algorn",
            Kind::Pullback => "pullback",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Ref(Kind),
    Val,
    Set,
    Fam,
    Word(&'static [&'static str]),
    OptDepth,
    OptVal,
    OptFam,
}

/// Every command: its head, the kind it binds (if any) and its arguments.
const COMMANDS: &[(&str, Option<Kind>, &[Slot])] = {
    use Kind::*;
    use Slot::*;
    &[
        ("enumerate", None, &[Slot::Set]),
        ("interp-count", None, &[Ref(Desc), Fam]),
        ("mu-count", None, &[Ref(Desc), Val, OptDepth]),
        ("forget", None, &[Ref(Orn), Val, OptVal]),
        ("orn-interp", Some(Desc), &[Ref(Orn)]),
        ("orn-to-cart", Some(Cart), &[Ref(Orn)]),
        ("cart-check", None, &[Ref(Cart)]),
        ("vcompose", Some(Orn), &[Ref(Orn), Ref(Orn), OptDepth]),
        ("hcompose", Some(Orn), &[Ref(Orn), Ref(Orn), OptDepth]),
        ("compose-desc", Some(Desc), &[Ref(Desc), Ref(Desc)]),
        ("algorn", Some(AlgOrn), &[Ref(Alg)]),
        ("remember", None, &[Ref(AlgOrn), Val, Val]),
        ("recompute", None, &[Ref(AlgOrn), Val, Val]),
        ("coherence", None, &[Ref(AlgOrn), Val, Val, OptDepth]),
        ("pullback", Some(Pullback), &[Ref(Orn), Ref(Orn)]),
        ("pullback-check", None, &[Ref(Pullback), OptDepth]),
        ("derive", Some(Container), &[Ref(Container), Val, OptFam]),
        ("derive-orn", Some(Cart), &[Ref(Cart), Val]),
        ("reindex", Some(Orn), &[Ref(Desc), Ref(Fn), Ref(Fn)]),
        ("identity-orn", Some(Orn), &[Ref(Desc)]),
        ("cart-to-orn", Some(Orn), &[Ref(Cart)]),
        ("adjoint", Some(Desc), &[Word(&["reindex", "exists", "forall"]), Ref(Fn)]),
    ]
};

/// Command heads in dispatch order.
pub fn command_names() -> impl Iterator<Item = &'static str> {
    COMMANDS.iter().map(|(n, _, _)| *n)
}

const DEFINITIONS: &[&str] = &["set", "fn", "desc", "orn", "alg"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Ref(Name),
    Val(Value),
    Set(SetExpr),
    Fam(FamExpr),
    Word(String),
    Depth(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub op: &'static str,
    pub bind: Option<(Name, Kind)>,
    pub args: Vec<Arg>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Form {
    Set { name: Name, set: SetExpr },
    Fn { name: Name, dom: SetExpr, cod: SetExpr, pairs: Vec<(Value, Value)> },
    Desc { name: Name, in_idx: SetExpr, out_idx: SetExpr, codes: Vec<(Value, DescExpr)> },
    Orn { name: Name, base: Name, u: Name, v: Name, codes: Vec<(Value, OrnExpr)> },
    Alg { name: Name, desc: Name, carrier: FamExpr, tables: Vec<(Value, Vec<(Value, Value)>)> },
    Command(Command),
}

impl Form {
    /// The name this form introduces, with its kind.
    pub fn binding(&self) -> Option<(&Name, Kind)> {
        match self {
            Form::Set { name, .. } => Some((name, Kind::Set)),
            Form::Fn { name, .. } => Some((name, Kind::Fn)),
            Form::Desc { name, .. } => Some((name, Kind::Desc)),
            Form::Orn { name, .. } => Some((name, Kind::Orn)),
            Form::Alg { name, .. } => Some((name, Kind::Alg)),
            Form::Command(c) => c.bind.as_ref().map(|(n, k)| (n, *k)),
        }
    }

    pub fn is_definition(&self) -> bool {
        !matches!(self, Form::Command(_))
    }
}

/// A parsed form with its canonical echo and source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub form: Form,
    pub text: String,
    pub pos: Pos,
}

type PResult<T> = Result<T, ParseError>;

fn err<T>(at: &Sexpr, message: impl Into<String>, expected: &[&str]) -> PResult<T> {
    Err(ParseError::new(at.pos(), message, expected))
}

fn name(x: &Sexpr) -> PResult<Name> {
    match x.atom() {
        Some(a) if !a.is_empty() => Ok(Name { text: a.to_string(), pos: x.pos() }),
        _ => err(x, format!("expected a name, found {x}"), &["NAME"]),
    }
}

fn int(x: &Sexpr) -> PResult<usize> {
    match x.atom().and_then(|a| a.parse().ok()) {
        Some(n) => Ok(n),
        None => err(x, format!("expected a non-negative integer, found {x}"), &["INT"]),
    }
}

fn is_int(x: &Sexpr) -> bool {
    x.atom().is_some_and(|a| !a.is_empty() && a.bytes().all(|b| b.is_ascii_digit()))
}

fn arity(x: &Sexpr, head: &str, args: &[Sexpr], n: usize, shape: &str) -> PResult<()> {
    if args.len() == n {
        Ok(())
    } else {
        err(x, format!("`{head}` takes {n} argument(s), found {}", args.len()), &[shape])
    }
}

const VALUE_HEADS: &[&str] = &["num", "pair", "inl", "inr", "inv-wit", "con"];

pub fn value(x: &Sexpr) -> PResult<Value> {
    if let Some(a) = x.atom() {
        return Ok(match a {
            "unit" => Value::Unit,
            "refl" => Value::Refl,
            _ => Value::label(a),
        });
    }
    let Some((head, args)) = x.head() else {
        return err(x, "expected a value", VALUE_HEADS);
    };
    match head {
        "num" => {
            arity(x, head, args, 1, "(num INT)")?;
            Ok(Value::num(int(&args[0])?))
        }
        "pair" => {
            arity(x, head, args, 2, "(pair val val)")?;
            Ok(Value::pair(value(&args[0])?, value(&args[1])?))
        }
        "inl" | "inr" | "inv-wit" | "con" => {
            arity(x, head, args, 1, "(HEAD val)")?;
            let v = value(&args[0])?;
            Ok(match head {
                "inl" => Value::inl(v),
                "inr" => Value::inr(v),
                "inv-wit" => Value::inv_wit(v),
                _ => Value::con(v),
            })
        }
        _ => err(x, format!("unknown value form `{head}`"), VALUE_HEADS),
    }
}

/// `((key item)*)`, rejecting repeated keys.
fn table<T>(x: &Sexpr, mut item: impl FnMut(&Sexpr) -> PResult<T>) -> PResult<Vec<(Value, T)>> {
    let Some(entries) = x.list() else {
        return err(x, "expected a parenthesized table", &["((val item)*)"]);
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        match e.list() {
            Some([k, v]) => {
                let key = value(k)?;
                if !seen.insert(key.clone()) {
                    return err(k, format!("duplicate entry for {key}"), &[]);
                }
                out.push((key, item(v)?));
            }
            _ => return err(e, "expected a (key item) entry", &["(val item)"]),
        }
    }
    Ok(out)
}

const SET_HEADS: &[&str] = &["enum", "sum", "prod", "eq", "inv", "nat<", "lit", "dsum", "dprod", "NAME"];

pub fn set_expr(x: &Sexpr) -> PResult<SetExpr> {
    if x.atom().is_some() {
        return Ok(SetExpr::Named(name(x)?));
    }
    let Some((head, args)) = x.head() else {
        return err(x, "expected a set expression", SET_HEADS);
    };
    match head {
        "enum" => args
            .iter()
            .map(|a| name(a).map(|n| n.text))
            .collect::<PResult<_>>()
            .map(SetExpr::Enum),
        "lit" => args.iter().map(value).collect::<PResult<_>>().map(SetExpr::Lit),
        "sum" | "prod" => {
            arity(x, head, args, 2, "(HEAD setexpr setexpr)")?;
            let (a, b) = (Box::new(set_expr(&args[0])?), Box::new(set_expr(&args[1])?));
            Ok(if head == "sum" { SetExpr::Sum(a, b) } else { SetExpr::Prod(a, b) })
        }
        "eq" => {
            arity(x, head, args, 2, "(eq val val)")?;
            Ok(SetExpr::Eq(value(&args[0])?, value(&args[1])?))
        }
        "inv" => {
            arity(x, head, args, 2, "(inv NAME val)")?;
            Ok(SetExpr::Inv(name(&args[0])?, value(&args[1])?))
        }
        "nat<" => {
            arity(x, head, args, 1, "(nat< INT)")?;
            Ok(SetExpr::Nat(int(&args[0])?))
        }
        "dsum" | "dprod" => {
            arity(x, head, args, 2, "(HEAD setexpr ((val setexpr)*))")?;
            let base = Box::new(set_expr(&args[0])?);
            let fibres = table(&args[1], set_expr)?;
            Ok(if head == "dsum" { SetExpr::DSum(base, fibres) } else { SetExpr::DProd(base, fibres) })
        }
        _ => err(x, format!("unknown set form `{head}`"), SET_HEADS),
    }
}

const DESC_HEADS: &[&str] = &["(var val)", "one", "(sigma ..)", "(pi ..)"];

pub fn desc_expr(x: &Sexpr) -> PResult<DescExpr> {
    if x.atom() == Some("one") {
        return Ok(DescExpr::One);
    }
    let Some((head, args)) = x.head() else {
        return err(x, format!("expected a description code, found {x}"), DESC_HEADS);
    };
    match head {
        "var" => {
            arity(x, head, args, 1, "(var val)")?;
            Ok(DescExpr::Var(value(&args[0])?))
        }
        "sigma" | "pi" => {
            arity(x, head, args, 2, "(HEAD setexpr ((val desccode)*))")?;
            let s = set_expr(&args[0])?;
            let b = table(&args[1], desc_expr)?;
            Ok(if head == "sigma" { DescExpr::Sigma(s, b) } else { DescExpr::Pi(s, b) })
        }
        _ => err(x, format!("unknown description form `{head}`"), DESC_HEADS),
    }
}

const ORN_HEADS: &[&str] = &["(insert ..)", "(delete ..)", "(var-inv val)", "one", "(sigma ..)", "(pi ..)"];

pub fn orn_expr(x: &Sexpr) -> PResult<OrnExpr> {
    if x.atom() == Some("one") {
        return Ok(OrnExpr::One);
    }
    let Some((head, args)) = x.head() else {
        return err(x, format!("expected an ornament code, found {x}"), ORN_HEADS);
    };
    match head {
        "insert" => {
            arity(x, head, args, 2, "(insert setexpr ((val orncode)*))")?;
            Ok(OrnExpr::Insert(set_expr(&args[0])?, table(&args[1], orn_expr)?))
        }
        "delete" => {
            arity(x, head, args, 2, "(delete val orncode)")?;
            Ok(OrnExpr::Delete(value(&args[0])?, Box::new(orn_expr(&args[1])?)))
        }
        "var-inv" => {
            arity(x, head, args, 1, "(var-inv val)")?;
            Ok(OrnExpr::VarInv(value(&args[0])?))
        }
        "sigma" | "pi" => {
            arity(x, head, args, 1, "(HEAD ((val orncode)*))")?;
            let b = table(&args[0], orn_expr)?;
            Ok(if head == "sigma" { OrnExpr::Sigma(b) } else { OrnExpr::Pi(b) })
        }
        _ => err(x, format!("unknown ornament form `{head}`"), ORN_HEADS),
    }
}

pub fn fam_expr(x: &Sexpr) -> PResult<FamExpr> {
    match x.head() {
        Some(("family", args)) => {
            arity(x, "family", args, 1, "(family ((val setexpr)*))")?;
            Ok(FamExpr::Table(table(&args[0], set_expr)?))
        }
        Some(("all-small", args)) => {
            arity(x, "all-small", args, 1, "(all-small INT)")?;
            Ok(FamExpr::AllSmall(int(&args[0])?))
        }
        _ => Ok(FamExpr::Uniform(set_expr(x)?)),
    }
}

fn command(x: &Sexpr, head: &str, args: &[Sexpr]) -> PResult<Option<Command>> {
    let Some(&(op, bind_kind, slots)) = COMMANDS.iter().find(|(n, _, _)| *n == head) else {
        return Ok(None);
    };
    let mut rest = args;
    let bind = match bind_kind {
        Some(k) => {
            let Some((first, tail)) = rest.split_first() else {
                return err(x, format!("`{op}` needs a name for its result"), &["NAME"]);
            };
            rest = tail;
            Some((name(first)?, k))
        }
        None => None,
    };
    let mut out = Vec::new();
    let mut it = rest.iter().peekable();
    for slot in slots {
        let next = it.peek().copied();
        let arg = match (slot, next) {
            (Slot::OptDepth, Some(a)) if is_int(a) => Arg::Depth(int(a)?),
            (Slot::OptDepth, _) => continue,
            (Slot::OptVal | Slot::OptFam, None) => continue,
            (_, None) => return err(x, format!("`{op}` is missing arguments"), &[slot_shape(*slot)]),
            (Slot::Ref(_), Some(a)) => Arg::Ref(name(a)?),
            (Slot::Val | Slot::OptVal, Some(a)) => Arg::Val(value(a)?),
            (Slot::Set, Some(a)) => Arg::Set(set_expr(a)?),
            (Slot::Fam | Slot::OptFam, Some(a)) => Arg::Fam(fam_expr(a)?),
            (Slot::Word(ws), Some(a)) => match a.atom() {
                Some(w) if ws.contains(&w) => Arg::Word(w.to_string()),
                _ => return err(a, format!("unexpected {a}"), ws),
            },
        };
        it.next();
        out.push(arg);
    }
    if let Some(extra) = it.next() {
        return err(extra, format!("`{op}` has too many arguments"), &[")"]);
    }
    Ok(Some(Command { op, bind, args: out }))
}

fn slot_shape(s: Slot) -> &'static str {
    match s {
        Slot::Ref(_) => "NAME",
        Slot::Val | Slot::OptVal => "val",
        Slot::Set => "setexpr",
        Slot::Fam | Slot::OptFam => "famspec",
        Slot::Word(_) => "keyword",
        Slot::OptDepth => "INT",
    }
}

pub fn form(x: &Sexpr) -> PResult<Form> {
    let Some((head, args)) = x.head() else {
        return err(x, format!("expected a top-level form, found {x}"), &["(HEAD ...)"]);
    };
    match head {
        "set" => {
            arity(x, head, args, 2, "(set NAME setexpr)")?;
            Ok(Form::Set { name: name(&args[0])?, set: set_expr(&args[1])? })
        }
        "fn" => {
            arity(x, head, args, 4, "(fn NAME setexpr setexpr ((val val)*))")?;
            Ok(Form::Fn {
                name: name(&args[0])?,
                dom: set_expr(&args[1])?,
                cod: set_expr(&args[2])?,
                pairs: table(&args[3], value)?,
            })
        }
        "desc" => {
            arity(x, head, args, 4, "(desc NAME setexpr setexpr ((val desccode)*))")?;
            Ok(Form::Desc {
                name: name(&args[0])?,
                in_idx: set_expr(&args[1])?,
                out_idx: set_expr(&args[2])?,
                codes: table(&args[3], desc_expr)?,
            })
        }
        "orn" => {
            arity(x, head, args, 5, "(orn NAME NAME NAME NAME ((val orncode)*))")?;
            Ok(Form::Orn {
                name: name(&args[0])?,
                base: name(&args[1])?,
                u: name(&args[2])?,
                v: name(&args[3])?,
                codes: table(&args[4], orn_expr)?,
            })
        }
        "alg" => {
            arity(x, head, args, 4, "(alg NAME NAME famspec ((val ((val val)*))*))")?;
            Ok(Form::Alg {
                name: name(&args[0])?,
                desc: name(&args[1])?,
                carrier: fam_expr(&args[2])?,
                tables: table(&args[3], |t| table(t, value))?,
            })
        }
        _ => match command(x, head, args)? {
            Some(c) => Ok(Form::Command(c)),
            None => {
                let mut expected: Vec<&str> = DEFINITIONS.to_vec();
                expected.extend(command_names());
                err(x, format!("unknown form `{head}`"), &expected)
            }
        },
    }
}
