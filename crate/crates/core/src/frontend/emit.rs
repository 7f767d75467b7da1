//! Prints engine objects as session definitions. Reading the output back
//! rebuilds equal objects.

use std::fmt::Display;

use crate::desc::{Algebra, DescFam, MuTree};
use crate::error::Result;
use crate::finset::{FinFn, FinSet, Value};
use crate::ornament::OrnFam;

/// `(head NAME pre...` followed by one table row per line.
fn block(head: &str, name: &str, pre: &[String], rows: Vec<String>) -> String {
    let mut s = format!("({head} {name}");
    for p in pre {
        s.push(' ');
        s.push_str(p);
    }
    if rows.is_empty() {
        s.push_str(" ())\n");
        return s;
    }
    s.push_str("\n  (");
    s.push_str(&rows.join("\n   "));
    s.push_str("))\n");
    s
}

fn row(k: &Value, v: impl Display) -> String {
    format!("({k} {v})")
}

pub fn set_form(name: &str, s: &FinSet) -> String {
    format!("(set {name} {s})\n")
}

pub fn fn_form(name: &str, f: &FinFn) -> Result<String> {
    let rows = f.entries()?.iter().map(|(a, b)| row(a, b)).collect();
    Ok(block("fn", name, &[f.dom().to_string(), f.cod().to_string()], rows))
}

pub fn desc_form(name: &str, d: &DescFam) -> Result<String> {
    let mut rows = Vec::new();
    for j in d.out_idx().enumerate()? {
        rows.push(row(&j, d.at(&j)?));
    }
    Ok(block("desc", name, &[d.in_idx().to_string(), d.out_idx().to_string()], rows))
}

/// `base`, `u` and `v` name objects defined earlier in the session.
pub fn orn_form(name: &str, base: &str, u: &str, v: &str, o: &OrnFam) -> Result<String> {
    let mut rows = Vec::new();
    for j in o.v().dom().enumerate()? {
        rows.push(row(&j, o.at(&j)?));
    }
    Ok(block("orn", name, &[base.into(), u.into(), v.into()], rows))
}

pub fn alg_form(name: &str, desc: &str, alg: &Algebra) -> Result<String> {
    let idx = alg.desc().in_idx().enumerate()?;
    let mut fam = Vec::new();
    let mut rows = Vec::new();
    for i in &idx {
        fam.push(row(i, alg.carrier().at(i)?));
        let entries: Vec<String> = alg.table(i)?.entries()?.iter().map(|(p, x)| row(p, x)).collect();
        rows.push(format!("({i} ({}))", entries.join("\n     ")));
    }
    let carrier = format!("(family ({}))", fam.join(" "));
    Ok(block("alg", name, &[desc.into(), carrier], rows))
}

pub fn tree(t: &MuTree) -> String {
    t.value().to_string()
}

#[cfg(test)]
mod tests {
    use super::super::{parse_session, run_session};
    use super::*;
    use crate::corpus::{alphabet, length_alg, list_desc, list_orn, nat_desc, star};

    #[test]
    fn printed_corpus_reads_back() {
        let a = alphabet(2);
        let lo = list_orn(&a).unwrap();
        let mut text = desc_form("NatD", &nat_desc().unwrap()).unwrap();
        text += &fn_form("id-star", lo.u()).unwrap();
        text += &orn_form("ListOrn", "NatD", "id-star", "id-star", &lo).unwrap();
        text += &desc_form("ListD", &list_desc(&a).unwrap()).unwrap();
        text += &alg_form("len", "ListD", &length_alg(&a, 3).unwrap()).unwrap();
        text += &format!("(mu-count ListOrn {} 3)\n", star());
        let s = parse_session(&text).unwrap();
        let out = run_session(&s, 3);
        assert_eq!(out.exit_code(), 0, "{}", out.render());
        assert!(out.render().ends_with("{\"cmd\":\"(mu-count ListOrn star 3)\",\"payload\":{\"count\":7},\"status\":\"ok\"}\n"));
    }
}
