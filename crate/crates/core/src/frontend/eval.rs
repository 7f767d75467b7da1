use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use super::syntax::{Arg, Command, DescExpr, FamExpr, Form, Kind, Name, OrnExpr, SetExpr, Statement};
use super::Session;
use crate::algorn::{algebraic_ornament, AlgOrn};
use crate::container::{check_round_trip, desc_to_container, CartMorphism, Container};
use crate::derivative::{check_plug, derive_container, derive_orn};
use crate::desc::{adjoint_desc, compose_desc, AdjointKind, Algebra, DescCode, DescFam, MuTree};
use crate::error::Error;
use crate::finset::{Family, FinFn, FinSet, Value};
use crate::ornament::{
    cart_to_orn, check_psi_phi, extract_tree, forget, forget_direct, hcompose, identity_orn, ornamental_algebra, reindex_orn,
    vcompose, OrnCode, OrnFam,
};
use crate::pullback::{check_pullback_square, pullback_orn, PullbackResult};
use crate::report::Report;

/// Largest component size of the families a check ranges over by default.
const SMALL: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// One line of output. Fields are declared in key order so every JSON
/// object on the line has sorted keys.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub cmd: Option<String>,
    pub payload: Json,
    pub status: Status,
}

impl Record {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    /// True for a successful command whose check reported violations.
    pub fn check_failed(&self) -> bool {
        self.status == Status::Ok && self.payload.get("status").and_then(Json::as_str) == Some("fail")
    }
}

#[derive(Debug)]
enum Failure {
    Name { name: String, kind: Kind, pos: super::sexpr::Pos },
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type EResult<T> = Result<T, Failure>;

#[derive(Debug, Default)]
struct Env {
    sets: BTreeMap<String, FinSet>,
    fns: BTreeMap<String, FinFn>,
    descs: BTreeMap<String, DescFam>,
    orns: BTreeMap<String, OrnFam>,
    algs: BTreeMap<String, Algebra>,
    carts: BTreeMap<String, CartMorphism>,
    containers: BTreeMap<String, Container>,
    algorns: BTreeMap<String, AlgOrn>,
    pullbacks: BTreeMap<String, PullbackResult>,
}

fn unbound<T>(n: &Name, kind: Kind) -> EResult<T> {
    Err(Failure::Name { name: n.text.clone(), kind, pos: n.pos })
}

impl Env {
    fn set(&self, n: &Name) -> EResult<FinSet> {
        self.sets.get(&n.text).cloned().map_or_else(|| unbound(n, Kind::Set), Ok)
    }

    fn func(&self, n: &Name) -> EResult<&FinFn> {
        self.fns.get(&n.text).map_or_else(|| unbound(n, Kind::Fn), Ok)
    }

    /// Descriptions, then the interpretation of an ornament, an algebraic
    /// ornament or a pullback apex of that name.
    fn desc(&self, n: &Name) -> EResult<DescFam> {
        if let Some(d) = self.descs.get(&n.text) {
            return Ok(d.clone());
        }
        if let Some(o) = self.orns.get(&n.text) {
            return Ok(o.interp()?);
        }
        if let Some(a) = self.algorns.get(&n.text) {
            return Ok(a.desc.clone());
        }
        if let Some(p) = self.pullbacks.get(&n.text) {
            return Ok(p.apex.clone());
        }
        unbound(n, Kind::Desc)
    }

    fn orn(&self, n: &Name) -> EResult<OrnFam> {
        if let Some(o) = self.orns.get(&n.text) {
            return Ok(o.clone());
        }
        if let Some(a) = self.algorns.get(&n.text) {
            return Ok(a.ornament.clone());
        }
        if let Some(p) = self.pullbacks.get(&n.text) {
            return Ok(p.proj1.clone());
        }
        unbound(n, Kind::Orn)
    }

    fn cart(&self, n: &Name) -> EResult<CartMorphism> {
        if let Some(m) = self.carts.get(&n.text) {
            return Ok(m.clone());
        }
        match self.orn(n) {
            Ok(o) => Ok(o.to_cart()?),
            Err(_) => unbound(n, Kind::Cart),
        }
    }

    fn container(&self, n: &Name) -> EResult<Container> {
        if let Some(c) = self.containers.get(&n.text) {
            return Ok(c.clone());
        }
        match self.desc(n) {
            Ok(d) => Ok(desc_to_container(&d)?),
            Err(_) => unbound(n, Kind::Container),
        }
    }

    fn alg(&self, n: &Name) -> EResult<&Algebra> {
        self.algs.get(&n.text).map_or_else(|| unbound(n, Kind::Alg), Ok)
    }

    fn algorn(&self, n: &Name) -> EResult<AlgOrn> {
        if let Some(a) = self.algorns.get(&n.text) {
            return Ok(a.clone());
        }
        match self.algs.get(&n.text) {
            Some(alg) => Ok(algebraic_ornament(alg)?),
            None => unbound(n, Kind::AlgOrn),
        }
    }

    fn pullback(&self, n: &Name) -> EResult<&PullbackResult> {
        self.pullbacks.get(&n.text).map_or_else(|| unbound(n, Kind::Pullback), Ok)
    }

    fn set_expr(&self, s: &SetExpr) -> EResult<FinSet> {
        Ok(match s {
            SetExpr::Enum(ls) => FinSet::enumeration(ls),
            SetExpr::Sum(a, b) => FinSet::sum(self.set_expr(a)?, self.set_expr(b)?),
            SetExpr::Prod(a, b) => FinSet::prod(self.set_expr(a)?, self.set_expr(b)?),
            SetExpr::Eq(a, b) => FinSet::Eq(a.clone(), b.clone()),
            SetExpr::Inv(f, t) => self.func(f)?.inverse_image(t)?,
            SetExpr::Nat(n) => FinSet::nat(*n),
            SetExpr::Lit(vs) => FinSet::lit(vs.iter().cloned()),
            SetExpr::DSum(base, fs) => FinSet::dsum(self.set_expr(base)?, self.fibres(fs)?),
            SetExpr::DProd(base, fs) => FinSet::dprod(self.set_expr(base)?, self.fibres(fs)?),
            SetExpr::Named(n) => self.set(n)?,
        })
    }

    fn fibres(&self, fs: &[(Value, SetExpr)]) -> EResult<BTreeMap<Value, FinSet>> {
        fs.iter().map(|(k, s)| Ok((k.clone(), self.set_expr(s)?))).collect()
    }

    fn desc_code(&self, c: &DescExpr) -> EResult<DescCode> {
        Ok(match c {
            DescExpr::Var(i) => DescCode::Var(i.clone()),
            DescExpr::One => DescCode::One,
            DescExpr::Sigma(s, b) => DescCode::Sigma(self.set_expr(s)?, self.desc_branches(b)?),
            DescExpr::Pi(s, b) => DescCode::Pi(self.set_expr(s)?, self.desc_branches(b)?),
        })
    }

    fn desc_branches(&self, b: &[(Value, DescExpr)]) -> EResult<BTreeMap<Value, DescCode>> {
        b.iter().map(|(k, c)| Ok((k.clone(), self.desc_code(c)?))).collect()
    }

    fn orn_code(&self, c: &OrnExpr) -> EResult<OrnCode> {
        Ok(match c {
            OrnExpr::Insert(s, b) => OrnCode::Insert(self.set_expr(s)?, self.orn_branches(b)?),
            OrnExpr::Delete(w, rest) => OrnCode::delete(w.clone(), self.orn_code(rest)?),
            OrnExpr::VarInv(i) => OrnCode::var_inv(i.clone()),
            OrnExpr::One => OrnCode::Unit,
            OrnExpr::Sigma(b) => OrnCode::Sigma(self.orn_branches(b)?),
            OrnExpr::Pi(b) => OrnCode::Pi(self.orn_branches(b)?),
        })
    }

    fn orn_branches(&self, b: &[(Value, OrnExpr)]) -> EResult<BTreeMap<Value, OrnCode>> {
        b.iter().map(|(k, c)| Ok((k.clone(), self.orn_code(c)?))).collect()
    }

    fn families(&self, f: &FamExpr, index: &FinSet) -> EResult<Vec<Family>> {
        Ok(match f {
            FamExpr::Uniform(s) => vec![Family::uniform(index.clone(), self.set_expr(s)?)?],
            FamExpr::Table(rows) => vec![Family::from_map(index.clone(), self.fibres(rows)?)?],
            FamExpr::AllSmall(k) => Family::all_small(index, *k)?,
        })
    }

    fn define(&mut self, form: &Form) -> EResult<Json> {
        let (name, kind) = form.binding().expect("definitions bind a name");
        let name = name.text.clone();
        match form {
            Form::Set { set, .. } => {
                let s = self.set_expr(set)?;
                let problems = s.violations();
                if !problems.is_empty() {
                    return Err(Error::IllFormed(problems).into());
                }
                let n = s.cardinality()?;
                self.sets.insert(name.clone(), s);
                Ok(json!({"defined": name, "kind": kind.as_str(), "cardinality": n}))
            }
            Form::Fn { dom, cod, pairs, .. } => {
                let f = FinFn::from_pairs(self.set_expr(dom)?, self.set_expr(cod)?, pairs.clone())?;
                self.fns.insert(name.clone(), f.with_label(name.clone()));
                Ok(json!({"defined": name, "kind": kind.as_str()}))
            }
            Form::Desc { in_idx, out_idx, codes, .. } => {
                let d = DescFam::new(self.set_expr(in_idx)?, self.set_expr(out_idx)?, self.desc_branches(codes)?)?;
                let shapes = shape_counts(&desc_to_container(&d)?)?;
                self.descs.insert(name.clone(), d);
                Ok(json!({"defined": name, "kind": kind.as_str(), "shapes": shapes}))
            }
            Form::Orn { base, u, v, codes, .. } => {
                let o = OrnFam::new(
                    self.desc(base)?,
                    self.func(u)?.clone(),
                    self.func(v)?.clone(),
                    self.orn_branches(codes)?,
                )?;
                let shapes = shape_counts(&desc_to_container(&o.interp()?)?)?;
                self.orns.insert(name.clone(), o);
                Ok(json!({"defined": name, "kind": kind.as_str(), "shapes": shapes}))
            }
            Form::Alg { desc, carrier, tables, .. } => {
                let d = self.desc(desc)?;
                let carrier = match self.families(carrier, d.in_idx())?.as_slice() {
                    [x] => x.clone(),
                    _ => return Err(Error::ill("an algebra needs a single carrier family").into()),
                };
                let mut table = BTreeMap::new();
                for (i, rows) in tables {
                    let dom = FinSet::lit(rows.iter().map(|(p, _)| p.clone()));
                    table.insert(i.clone(), FinFn::from_pairs(dom, carrier.at(i)?.clone(), rows.clone())?);
                }
                self.algs.insert(name.clone(), Algebra::new(d, carrier, table)?);
                Ok(json!({"defined": name, "kind": kind.as_str()}))
            }
            Form::Command(_) => unreachable!("commands are not definitions"),
        }
    }
}

fn key(v: &Value) -> String {
    v.to_string()
}

fn shape_counts(c: &Container) -> EResult<Map<String, Json>> {
    let mut m = Map::new();
    for j in c.out_idx().enumerate()? {
        m.insert(key(&j), json!(c.shapes(&j)?.cardinality()?));
    }
    Ok(m)
}

/// `status`, `checked`, every count, and up to three counterexamples.
pub fn report_json(r: &Report) -> Json {
    let mut m = Map::new();
    m.insert("status".into(), json!(if r.passed() { "pass" } else { "fail" }));
    m.insert("checked".into(), json!(r.checked));
    for (k, n) in &r.counts {
        m.insert(k.clone(), json!(n));
    }
    if !r.passed() {
        m.insert("violations".into(), json!(r.violations.len()));
        m.insert("counterexamples".into(), json!(r.violations.iter().take(3).collect::<Vec<_>>()));
    }
    Json::Object(m)
}

fn with(mut payload: Json, k: &str, v: impl Into<Json>) -> Json {
    payload.as_object_mut().expect("object payload").insert(k.into(), v.into());
    payload
}

/// Adds `other` to `r`, summing counts that both carry.
fn merge(r: &mut Report, other: Report) {
    r.checked += other.checked;
    r.violations.extend(other.violations);
    for (k, n) in other.counts {
        *r.counts.entry(k).or_default() += n;
    }
}

struct Args<'a>(std::slice::Iter<'a, Arg>);

impl<'a> Args<'a> {
    fn name(&mut self) -> &'a Name {
        match self.0.next() {
            Some(Arg::Ref(n)) => n,
            other => unreachable!("parser guarantees a name, got {other:?}"),
        }
    }

    fn val(&mut self) -> &'a Value {
        match self.0.next() {
            Some(Arg::Val(v)) => v,
            other => unreachable!("parser guarantees a value, got {other:?}"),
        }
    }

    fn opt_val(&mut self) -> Option<&'a Value> {
        match self.0.next() {
            Some(Arg::Val(v)) => Some(v),
            _ => None,
        }
    }

    fn set(&mut self) -> &'a SetExpr {
        match self.0.next() {
            Some(Arg::Set(s)) => s,
            other => unreachable!("parser guarantees a set, got {other:?}"),
        }
    }

    fn fam(&mut self) -> Option<&'a FamExpr> {
        match self.0.next() {
            Some(Arg::Fam(f)) => Some(f),
            _ => None,
        }
    }

    fn word(&mut self) -> &'a str {
        match self.0.next() {
            Some(Arg::Word(w)) => w,
            other => unreachable!("parser guarantees a keyword, got {other:?}"),
        }
    }

    fn depth(&mut self, default: usize) -> usize {
        match self.0.next() {
            Some(Arg::Depth(d)) => *d,
            _ => default,
        }
    }
}

fn tree(v: &Value) -> EResult<MuTree> {
    Ok(MuTree::new(v.clone())?)
}

/// Every tree of the composite's interpretation up to `depth`: forgetting
/// along the composite agrees with moving the tree back to `⌊o2⌋` and
/// forgetting along `o2`, then `o1`.
fn vcompose_report(comp: &OrnFam, o2: &OrnFam, o1: &OrnFam, depth: usize) -> EResult<Report> {
    let mut r = comp.to_cart()?.check();
    let (ac, a2, a1) = (ornamental_algebra(comp, depth)?, ornamental_algebra(o2, depth)?, ornamental_algebra(o1, depth)?);
    let (d, inner) = (comp.interp()?, o2.interp()?);
    let mu = d.mu_family(depth)?;
    let mut trees = 0;
    for j in d.out_idx().enumerate()? {
        let mid = o2.v().apply(&j)?;
        for t in mu.at(&j)?.enumerate()? {
            trees += 1;
            let t = MuTree::new(t)?;
            let direct = ac.fold(&j, &t)?;
            let outer = extract_tree(&d, &inner, &j, &t)?;
            let stepwise = a1.fold(&mid, &MuTree::new(a2.fold(&j, &outer)?)?)?;
            r.expect(direct == stepwise, || format!("{t} at {j}: composite gives {direct}, steps give {stepwise}"));
        }
    }
    r.count("trees", trees);
    Ok(r)
}

/// The composite's interpretation against the composite of the two
/// interpretations, on small families and, for fixpoints, up to `depth`.
fn hcompose_report(h: &OrnFam, o2: &OrnFam, o1: &OrnFam, depth: usize) -> EResult<Report> {
    let mut r = h.to_cart()?.check();
    let (hd, direct) = (h.interp()?, compose_desc(&o2.interp()?, &o1.interp()?)?);
    for x in Family::all_small(hd.in_idx(), 1)? {
        let (a, b) = (hd.interp_counts(&x)?, direct.interp_counts(&x)?);
        r.expect(a == b, || "interpretation counts differ from the composite of the interpretations".into());
    }
    if hd.is_endo() {
        let mut trees = 0;
        for j in hd.out_idx().enumerate()? {
            let (a, b) = (hd.mu_count(&j, depth)?, direct.mu_count(&j, depth)?);
            trees += a;
            r.expect(a == b, || format!("at {j}: {a} trees, but {b} in the composite of the interpretations"));
        }
        r.count("trees", trees);
    }
    Ok(r)
}

fn cart_report(m: &CartMorphism) -> EResult<Report> {
    let mut r = m.check();
    let mut shapes = 0;
    for j in m.src().out_idx().enumerate()? {
        shapes += m.src().shapes(&j)?.cardinality()?;
    }
    r.count("shapes", shapes);
    Ok(r)
}

fn bound(c: &Command) -> String {
    c.bind.as_ref().expect("binding command").0.text.clone()
}

struct Runner {
    env: Env,
    depth: usize,
}

impl Runner {
    fn run(&mut self, c: &Command) -> EResult<Json> {
        let mut a = Args(c.args.iter());
        let env = &self.env;
        let depth = self.depth;
        Ok(match c.op {
            "enumerate" => {
                let vs = env.set_expr(a.set())?.enumerate()?;
                json!({"count": vs.len(), "values": vs.iter().map(key).collect::<Vec<_>>()})
            }
            "interp-count" => {
                let d = env.desc(a.name())?;
                let families = env.families(a.fam().expect("famspec"), d.in_idx())?;
                let mut r = Report::new("round-trip");
                for x in &families {
                    merge(&mut r, check_round_trip(&d, x)?);
                }
                let mut out = with(report_json(&r), "families", families.len());
                if let [x] = families.as_slice() {
                    let counts: Map<String, Json> =
                        d.interp_counts(x)?.iter().map(|(j, n)| (key(j), json!(n))).collect();
                    out = with(out, "counts", counts);
                }
                out
            }
            "mu-count" => {
                let d = env.desc(a.name())?;
                let j = a.val();
                json!({"count": d.mu_count(j, a.depth(depth))?})
            }
            "forget" => {
                let o = env.orn(a.name())?;
                let t = tree(a.val())?;
                let j = a.opt_val();
                let (x, y) = (forget(&o, &t, j)?, forget_direct(&o, &t, j)?);
                if x != y {
                    return Err(Error::CoherenceViolation(format!("algebra gives {x}, recursion gives {y}")).into());
                }
                json!({"value": key(x.value())})
            }
            "orn-interp" => {
                let d = env.orn(a.name())?.interp()?;
                let out = json!({"desc": d.to_string()});
                let n = bound(c);
                self.env.descs.insert(n, d);
                out
            }
            "orn-to-cart" => {
                let o = env.orn(a.name())?;
                let m = o.to_cart()?;
                let mut r = cart_report(&m)?;
                merge(&mut r, check_psi_phi(&o, SMALL)?);
                let n = bound(c);
                self.env.carts.insert(n, m);
                report_json(&r)
            }
            "cart-check" => report_json(&cart_report(&env.cart(a.name())?)?),
            "vcompose" | "hcompose" => {
                let (o2, o1) = (env.orn(a.name())?, env.orn(a.name())?);
                let d = a.depth(depth);
                let (comp, r) = if c.op == "vcompose" {
                    let comp = vcompose(&o2, &o1)?;
                    let r = vcompose_report(&comp, &o2, &o1, d)?;
                    (comp, r)
                } else {
                    let comp = hcompose(&o2, &o1)?;
                    let r = hcompose_report(&comp, &o2, &o1, d)?;
                    (comp, r)
                };
                let n = bound(c);
                self.env.orns.insert(n, comp);
                report_json(&r)
            }
            "compose-desc" => {
                let (d, e) = (env.desc(a.name())?, env.desc(a.name())?);
                let de = compose_desc(&d, &e)?;
                let out = json!({"shapes": shape_counts(&desc_to_container(&de)?)?});
                let n = bound(c);
                self.env.descs.insert(n, de);
                out
            }
            "algorn" => {
                let r = algebraic_ornament(env.alg(a.name())?)?;
                let out = with(report_json(&cart_report(&r.cart)?), "indices", r.desc.out_idx().cardinality()?);
                let n = bound(c);
                self.env.algorns.insert(n, r);
                out
            }
            "remember" => {
                let r = env.algorn(a.name())?;
                let (i, t) = (a.val(), tree(a.val())?);
                let (ix, lifted) = r.remember(i, &t)?;
                json!({"index": key(&ix), "value": key(lifted.value())})
            }
            "recompute" => {
                let r = env.algorn(a.name())?;
                let (ix, t) = (a.val(), tree(a.val())?);
                let (plain, witness) = r.recompute(ix, &t)?;
                json!({"value": key(plain.value()), "witness": key(&witness)})
            }
            "coherence" => {
                let r = env.algorn(a.name())?;
                let (i, x) = (a.val(), a.val());
                report_json(&r.check_coherence(i, x, a.depth(depth))?)
            }
            "pullback" => {
                let (o1, o2) = (env.orn(a.name())?, env.orn(a.name())?);
                let p = pullback_orn(&o1, &o2)?;
                let shapes = shape_counts(&p.apex_container)?;
                let out = json!({"indices": p.apex.out_idx().cardinality()?, "shapes": shapes});
                let n = bound(c);
                self.env.pullbacks.insert(n, p);
                out
            }
            "pullback-check" => {
                let p = env.pullback(a.name())?;
                report_json(&check_pullback_square(p, a.depth(depth))?)
            }
            "derive" => {
                let cont = env.container(a.name())?;
                let i = a.val();
                let families = match a.fam() {
                    Some(f) => env.families(f, cont.in_idx())?,
                    None => Family::all_small(cont.in_idx(), SMALL)?,
                };
                let dc = derive_container(&cont, i)?;
                let mut r = Report::new("plug");
                for x in &families {
                    merge(&mut r, check_plug(&cont, i, x)?);
                }
                let out = with(with(report_json(&r), "families", families.len()), "shapes", shape_counts(&dc)?);
                let n = bound(c);
                self.env.containers.insert(n, dc);
                out
            }
            "derive-orn" => {
                let m = env.cart(a.name())?;
                let dm = derive_orn(&m, a.val())?;
                let out = report_json(&cart_report(&dm)?);
                let n = bound(c);
                self.env.carts.insert(n, dm);
                out
            }
            "reindex" | "identity-orn" | "cart-to-orn" => {
                let o = match c.op {
                    "reindex" => {
                        let d = env.desc(a.name())?;
                        reindex_orn(&d, env.func(a.name())?, env.func(a.name())?)?
                    }
                    "identity-orn" => identity_orn(&env.desc(a.name())?)?,
                    _ => cart_to_orn(&env.cart(a.name())?)?,
                };
                let out = report_json(&cart_report(&o.to_cart()?)?);
                let n = bound(c);
                self.env.orns.insert(n, o);
                out
            }
            "adjoint" => {
                let kind = AdjointKind::parse(a.word()).expect("parser checks the keyword");
                let d = adjoint_desc(kind, env.func(a.name())?)?;
                let out = json!({"shapes": shape_counts(&desc_to_container(&d)?)?});
                let n = bound(c);
                self.env.descs.insert(n, d);
                out
            }
            op => unreachable!("no dispatch for {op}"),
        })
    }

    fn statement(&mut self, s: &Statement) -> (Record, Outcome) {
        let result = match &s.form {
            Form::Command(c) => self.run(c),
            form => self.env.define(form),
        };
        let cmd = Some(s.text.clone());
        match result {
            Ok(payload) => {
                let rec = Record { cmd, status: Status::Ok, payload };
                let outcome = if rec.check_failed() { Outcome::CheckFailed } else { Outcome::Passed };
                (rec, outcome)
            }
            Err(f) => {
                let (code, message, pos) = match f {
                    Failure::Name { name, kind, pos } => ("E-NAME", format!("no {} named `{name}`", kind.as_str()), pos),
                    Failure::Engine(e) => (e.code(), e.to_string(), s.pos),
                };
                let payload = json!({"code": code, "message": message, "line": pos.line, "column": pos.column});
                // Bad definitions and unknown names are validation errors;
                // a failing command on valid input is a run-time failure.
                let outcome = if code == "E-NAME" || s.form.is_definition() {
                    Outcome::Invalid
                } else {
                    Outcome::CheckFailed
                };
                (Record { cmd, status: Status::Error, payload }, outcome)
            }
        }
    }
}

/// How a run ended, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Passed,
    CheckFailed,
    Invalid,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Passed => 0,
            Outcome::CheckFailed => 1,
            Outcome::Invalid => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<Record>,
    pub outcome: Outcome,
}

impl RunOutput {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    /// Newline-delimited records.
    pub fn render(&self) -> String {
        self.records.iter().map(|r| r.to_line() + "\n").collect()
    }
}

/// Evaluates every statement in order. `depth` is the default enumeration
/// depth for commands that take an optional one.
pub fn run_session(session: &Session, depth: usize) -> RunOutput {
    let mut runner = Runner { env: Env::default(), depth };
    let mut records = Vec::with_capacity(session.statements.len());
    let mut outcome = Outcome::Passed;
    for s in &session.statements {
        let (rec, o) = runner.statement(s);
        records.push(rec);
        outcome = outcome.max(o);
    }
    RunOutput { records, outcome }
}
