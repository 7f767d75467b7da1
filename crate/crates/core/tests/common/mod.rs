//! Session fixtures, generated by printing the corpus as definitions.

#![allow(dead_code)]

use std::path::PathBuf;

use ornament_engine::corpus::*;
use ornament_engine::desc::MuTree;
use ornament_engine::finset::{FinFn, FinSet, Value};
use ornament_engine::frontend::emit::{alg_form, desc_form, fn_form, orn_form, tree};
use ornament_engine::ornament::identity_orn;

pub const N: usize = 4;

pub fn sessions_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("sessions")
}

/// Every list over `a` with length at most `max`, shortest first.
pub fn all_lists(a: &[&'static str], max: usize) -> Vec<Vec<&'static str>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for l in &layer {
            for x in a {
                let mut m: Vec<&str> = l.clone();
                m.push(x);
                next.push(m);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn unwrap(s: ornament_engine::Result<String>) -> String {
    s.expect("corpus prints")
}

fn nat() -> String {
    unwrap(desc_form("NatD", &nat_desc().unwrap()))
}

fn list_d() -> String {
    unwrap(desc_form("ListD", &list_desc(&alphabet(2)).unwrap()))
}

fn frames() -> String {
    let id = FinFn::identity(FinSet::star()).unwrap();
    unwrap(fn_form("id-star", &id)) + &unwrap(fn_form("to-star", &to_star(&FinSet::nat(N)).unwrap()))
}

fn list_orn_form() -> String {
    unwrap(orn_form("ListOrn", "NatD", "id-star", "id-star", &list_orn(&alphabet(2)).unwrap()))
}

fn fin_orn_form() -> String {
    unwrap(orn_form("FinOrn", "NatD", "to-star", "to-star", &fin_orn(N).unwrap()))
}

fn vec_orn_form() -> String {
    unwrap(orn_form("VecOrn", "ListD", "to-star", "to-star", &vec_orn(&alphabet(2), N).unwrap()))
}

fn height_orn_form() -> String {
    unwrap(desc_form("SquareD", &square_desc().unwrap()))
        + &unwrap(orn_form("HeightOrn", "SquareD", "to-star", "to-star", &height_orn(N).unwrap()))
}

fn len_alg() -> String {
    unwrap(alg_form("len", "ListD", &length_alg(&alphabet(2), N).unwrap()))
}

fn header(what: &str) -> String {
    format!("; {what}\n\n")
}

pub fn list_tree(items: &[&str]) -> MuTree {
    list(items)
}

fn roundtrip() -> String {
    let mut s = header("descriptions against their containers and back");
    s += &nat();
    s += &list_d();
    s += &unwrap(desc_form("FinD", &fin_desc(N).unwrap()));
    s += &unwrap(desc_form("VecD", &vec_desc(&alphabet(2), N).unwrap()));
    s += "\n(set Two (enum x0 x1))\n";
    for d in ["NatD", "ListD", "FinD", "VecD"] {
        s += &format!("(interp-count {d} (all-small 2))\n");
    }
    s += "(interp-count ListD Two)\n";
    s += &frames();
    for (name, kind) in [("Restrict", "reindex"), ("Exists", "exists"), ("Forall", "forall")] {
        s += &format!("(adjoint {name} {kind} to-star)\n(interp-count {name} (all-small 2))\n");
    }
    s += "(interp-count VecD (family ((0 (enum x0)) (1 Two) (2 (enum)) (3 Two))))\n";
    s
}

fn forget_session() -> String {
    let mut s = header("forgetting the list ornament computes lengths");
    s += &nat();
    s += &frames();
    s += &list_orn_form();
    s += "\n";
    for l in all_lists(&["a", "b"], 3) {
        s += &format!("(forget ListOrn {})\n", tree(&list_tree(&l)));
    }
    s
}

fn coherence() -> String {
    let mut s = header("the algebraic ornament of the length algebra");
    s += &list_d();
    s += &len_alg();
    s += "\n(algorn LenOrn len)\n";
    for n in 0..N {
        s += &format!("(mu-count LenOrn (pair star {n}) {})\n", N + 1);
        s += &format!("(coherence LenOrn star {n} {})\n", N + 1);
    }
    let ab = tree(&list_tree(&["a", "b"]));
    s += &format!("(remember LenOrn star {ab})\n");
    let lifted = {
        let r = ornament_engine::algorn::algebraic_ornament(&length_alg(&alphabet(2), N).unwrap()).unwrap();
        r.remember(&star(), &list_tree(&["a", "b"])).unwrap()
    };
    s += &format!("(recompute LenOrn {} {})\n", lifted.0, tree(&lifted.1));
    s += "(coherence len star 1 4)\n";
    s
}

fn pullback() -> String {
    let mut s = header("lists and finite sets over the naturals: bounded lists");
    s += &nat();
    s += &frames();
    s += &list_orn_form();
    s += &fin_orn_form();
    s += "\n(pullback Bounded ListOrn FinOrn)\n";
    for n in 0..N {
        s += &format!("(mu-count Bounded (pair star {n}) {N})\n");
    }
    s += &format!("(pullback-check Bounded {N})\n");
    s += "(cart-check Bounded)\n";
    s
}

fn cartesian() -> String {
    let mut s = header("every corpus ornament presents a cartesian morphism");
    s += &nat();
    s += &list_d();
    s += &frames();
    s += &list_orn_form();
    s += &fin_orn_form();
    s += &vec_orn_form();
    s += &height_orn_form();
    s += &len_alg();
    s += &unwrap(orn_form("ListId", "ListD", "id-star", "id-star", &identity_orn(&list_desc(&alphabet(2)).unwrap()).unwrap()));
    s += "\n";
    for o in ["ListOrn", "FinOrn", "VecOrn", "HeightOrn", "ListId"] {
        s += &format!("(orn-to-cart {o}Cart {o})\n");
    }
    s += "(algorn LenOrn len)\n(orn-to-cart LenCart LenOrn)\n";
    s += "(identity-orn NatId NatD)\n(orn-to-cart NatIdCart NatId)\n";
    s += "(vcompose VecNat VecOrn ListOrn)\n(orn-to-cart VecNatCart VecNat)\n";
    s += "(hcompose Balanced VecOrn HeightOrn 2)\n(cart-check Balanced)\n";
    s += "(orn-interp VecD VecOrn)\n";
    s += "(reindex Reindexed VecD to-star to-star)\n(cart-check Reindexed)\n";
    s += "(pullback Bounded ListOrn FinOrn)\n(cart-check Bounded)\n";
    s += "(cart-to-orn Again VecOrnCart)\n(orn-to-cart AgainCart Again)\n";
    s
}

fn compositions() -> String {
    let mut s = header("vertical and horizontal composition");
    s += &nat();
    s += &list_d();
    s += &frames();
    s += &list_orn_form();
    s += &vec_orn_form();
    s += &height_orn_form();
    s += "\n(vcompose VecNat VecOrn ListOrn 3)\n";
    for n in 0..N {
        s += &format!("(mu-count VecNat {n} 4)\n");
    }
    let v = {
        let vo = vec_orn(&alphabet(2), N).unwrap();
        let comp = ornament_engine::ornament::vcompose(&vo, &list_orn(&alphabet(2)).unwrap()).unwrap();
        let t = comp.interp().unwrap().mu_enumerate(&Value::num(2), 3).unwrap();
        t.into_iter().next().expect("a composite tree at 2")
    };
    s += &format!("(forget VecNat {} 2)\n", tree(&v));
    s += "(hcompose Balanced VecOrn HeightOrn 2)\n";
    for n in 0..N {
        s += &format!("(mu-count Balanced {n} 2)\n");
    }
    s += "(compose-desc ListSquare ListD SquareD)\n";
    s += "(mu-count ListSquare star 2)\n";
    s
}

fn derivative() -> String {
    let mut s = header("one-hole contexts");
    s += &nat();
    s += &list_d();
    s += &unwrap(desc_form("FinD", &fin_desc(N).unwrap()));
    s += &frames();
    s += &list_orn_form();
    s += &fin_orn_form();
    s += &vec_orn_form();
    s += &height_orn_form();
    s += "\n(orn-interp VecD VecOrn)\n(orn-interp HeightD HeightOrn)\n";
    s += "(derive ListHole ListD star)\n(enumerate (enum a b))\n";
    for d in ["NatD", "SquareD"] {
        s += &format!("(derive {d}Hole {d} star)\n");
    }
    for d in ["FinD", "VecD", "HeightD"] {
        for i in 0..N {
            s += &format!("(derive {d}Hole{i} {d} {i} (all-small 1))\n");
        }
    }
    s += "(derive-orn ListHoleOrn ListOrn star)\n";
    for o in ["FinOrn", "VecOrn", "HeightOrn"] {
        for i in 0..N {
            s += &format!("(derive-orn {o}Hole{i} {o} {i})\n");
        }
    }
    s
}

fn failing() -> String {
    let mut s = header("a valid session whose commands fail at run time");
    s += &list_d();
    s += &len_alg();
    s += "\n(mu-count ListD star 2)\n(coherence len star 9)\n(mu-count ListD elsewhere 2)\n";
    s
}

fn malformed() -> String {
    let mut s = header("syntax errors are reported with positions and nothing runs");
    s += "(set A (enum a b))\n(mu-count A)\n(set B (bag a))\n(set A (enum c))\n";
    s
}

fn unbound() -> String {
    let mut s = header("names must be defined before use");
    s += "(set A (enum a b))\n(enumerate A)\n(mu-count Missing star 2)\n";
    s += "(desc Partial (enum star) (enum star) ((star (sigma (enum z s) ((z one))))))\n";
    s
}

/// `(name, text, expected exit code)`.
pub fn sessions() -> Vec<(&'static str, String, i32)> {
    vec![
        ("roundtrip", roundtrip(), 0),
        ("forget", forget_session(), 0),
        ("coherence", coherence(), 0),
        ("pullback", pullback(), 0),
        ("cartesian", cartesian(), 0),
        ("compositions", compositions(), 0),
        ("derivative", derivative(), 0),
        ("failing", failing(), 1),
        ("malformed", malformed(), 2),
        ("unbound", unbound(), 2),
    ]
}

/// Runs the engine binary on a session file, returning stdout and the exit code.
pub fn run_engine(file: &std::path::Path, extra: &[&str]) -> (String, i32) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_engine"))
        .arg("run")
        .arg(file)
        .args(extra)
        .output()
        .expect("engine runs");
    (String::from_utf8(out.stdout).expect("utf-8 output"), out.status.code().expect("exit code"))
}

pub fn records(output: &str) -> Vec<serde_json::Value> {
    output.lines().map(|l| serde_json::from_str(l).expect("one JSON record per line")).collect()
}

/// Records whose command starts with `prefix`.
pub fn select<'a>(recs: &'a [serde_json::Value], prefix: &str) -> Vec<&'a serde_json::Value> {
    recs.iter()
        .filter(|r| r["cmd"].as_str().is_some_and(|c| c.starts_with(prefix)))
        .collect()
}
