//! One PASS/FAIL line per acceptance criterion. Every expected number comes
//! from an oracle written here, independent of the engine's own checks.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};

use common::{all_lists, records, run_engine, select, sessions, sessions_dir, N};
use ornament_engine::algorn::algebraic_ornament;
use ornament_engine::container::{check_round_trip, desc_to_container, Container};
use ornament_engine::corpus::*;
use ornament_engine::derivative::{check_plug, derive_container, derive_orn};
use ornament_engine::desc::{compose_desc, DescFam};
use ornament_engine::finset::{Family, Value};
use ornament_engine::ornament::{
    check_psi_phi, extract_tree, forget, hcompose, identity_orn, reindex_orn, vcompose, OrnFam,
};
use ornament_engine::pullback::{check_pullback_square, pullback_orn};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn size(x: &Family, i: usize) -> usize {
    x.at(&Value::num(i)).unwrap().cardinality().unwrap()
}

/// Closed-form interpretation counts for the four descriptions.
fn expected_count(which: &str, x: &Family, j: &Value) -> usize {
    let star_size = || x.at(&star()).unwrap().cardinality().unwrap();
    let k = j.as_num();
    match which {
        "nat" => 1 + star_size(),
        "list" => 1 + 2 * star_size(),
        // fin k: zero or successor of an element at k - 1, both needing k ≥ 1
        "fin" => match k.unwrap() {
            0 => 0,
            k => 1 + size(x, k - 1),
        },
        "vec" => match k.unwrap() {
            0 => 1,
            k => 2 * size(x, k - 1),
        },
        _ => unreachable!(),
    }
}

fn criterion_1() -> Outcome {
    let a = alphabet(2);
    let descs = [
        ("nat", e(nat_desc())?),
        ("list", e(list_desc(&a))?),
        ("fin", e(fin_desc(N))?),
        ("vec", e(vec_desc(&a, N))?),
    ];
    let mut families = 0;
    let mut elements = 0;
    for (name, d) in &descs {
        for x in e(Family::all_small(d.in_idx(), 2))? {
            families += 1;
            let r = e(check_round_trip(d, &x))?;
            ensure(r.passed(), || format!("{name}: {r}"))?;
            let c = e(desc_to_container(d))?;
            for (j, n) in e(d.interp_counts(&x))? {
                let want = expected_count(name, &x, &j);
                let via_container = e(c.interp(&x))?.at(&j).unwrap().cardinality().unwrap();
                ensure(n == want && via_container == want, || {
                    format!("{name} at {j}: {n} and {via_container}, expected {want}")
                })?;
                elements += n;
            }
        }
    }
    Ok(format!("{families} families, {elements} elements, bijections validated"))
}

fn criterion_2() -> Outcome {
    let lo = e(list_orn(&alphabet(2)))?;
    let lists = all_lists(&["a", "b"], 3);
    ensure(lists.len() == 15, || format!("{} lists", lists.len()))?;
    for l in &lists {
        let got = e(forget(&lo, &list(l), None))?;
        ensure(got == numeral(l.len()), || format!("forget {l:?} gave {got}"))?;
    }
    Ok("15 lists forget to their lengths".into())
}

fn criterion_3() -> Outcome {
    let alg = e(length_alg(&alphabet(2), N))?;
    let r = e(algebraic_ornament(&alg))?;
    let mut sizes = Vec::new();
    for n in 0..N {
        let ix = Value::pair(star(), Value::num(n));
        let count = e(r.desc.mu_count(&ix, N + 1))?;
        ensure(count == 1 << n, || format!("|mu| at {ix} is {count}"))?;
        let rep = e(r.check_coherence(&star(), &Value::num(n), N + 1))?;
        ensure(rep.passed(), || rep.to_string())?;
        // Oracle: lift every list of length n and forget it again.
        let lists: Vec<_> = all_lists(&["a", "b"], n).into_iter().filter(|l| l.len() == n).collect();
        let mut lifted = Vec::new();
        for l in &lists {
            let (jx, t) = e(r.remember(&star(), &list(l)))?;
            ensure(jx == ix, || format!("{l:?} remembered at {jx}"))?;
            let back = e(forget(&r.ornament, &t, Some(&ix)))?;
            ensure(back == list(l), || format!("{l:?} comes back as {back}"))?;
            lifted.push(t);
        }
        let all = e(r.desc.mu_enumerate(&ix, N + 1))?;
        lifted.sort_by_key(|t| t.value().clone());
        let mut all_sorted = all.clone();
        all_sorted.sort_by_key(|t| t.value().clone());
        ensure(lifted == all_sorted, || format!("remember is not onto at {ix}"))?;
        sizes.push(count);
    }
    Ok(format!("sizes {sizes:?}, remember and forget inverse"))
}

fn criterion_4() -> Outcome {
    let pb = e(pullback_orn(&e(list_orn(&alphabet(2)))?, &e(fin_orn(N))?))?;
    let lists = all_lists(&["a", "b"], 3);
    let mut got = Vec::new();
    for n in 1..N {
        let want = lists.iter().filter(|l| l.len() < n).count();
        let count = e(pb.apex.mu_count(&Value::pair(star(), Value::num(n)), N))?;
        ensure(count == want, || format!("bound {n}: {count} trees, expected {want}"))?;
        got.push(count);
    }
    let rep = e(check_pullback_square(&pb, N))?;
    ensure(rep.passed(), || rep.to_string())?;
    Ok(format!("bounded lists {got:?}, square and universality hold"))
}

fn corpus_ornaments() -> Result<Vec<(&'static str, OrnFam)>, String> {
    let a = alphabet(2);
    let (lo, fo, vo, ho) = (e(list_orn(&a))?, e(fin_orn(N))?, e(vec_orn(&a, N))?, e(height_orn(N))?);
    let alg = e(algebraic_ornament(&e(length_alg(&a, N))?))?;
    let pb = e(pullback_orn(&lo, &fo))?;
    let vd = e(vo.interp())?;
    let id_frame = e(to_star(&ornament_engine::finset::FinSet::nat(N)))?;
    Ok(vec![
        ("list", lo.clone()),
        ("fin", fo.clone()),
        ("vec", vo.clone()),
        ("height", ho.clone()),
        ("vec via algorn", alg.ornament),
        ("id nat", e(identity_orn(&e(nat_desc())?))?),
        ("id list", e(identity_orn(&e(list_desc(&a))?))?),
        ("id square", e(identity_orn(&e(square_desc())?))?),
        ("vcompose", e(vcompose(&vo, &lo))?),
        ("hcompose", e(hcompose(&vo, &ho))?),
        ("reindex", e(reindex_orn(&vd, &id_frame, &id_frame))?),
        ("pullback left", pb.proj1),
        ("pullback right", pb.proj2),
    ])
}

fn criterion_5() -> Outcome {
    let orns = corpus_ornaments()?;
    for (name, o) in &orns {
        let r = e(o.to_cart())?.check();
        ensure(r.passed(), || format!("{name}: {r}"))?;
        let rt = e(check_psi_phi(o, 2))?;
        ensure(rt.passed(), || format!("{name}: {rt}"))?;
    }
    Ok(format!("{} ornaments cartesian, psi after phi preserves counts", orns.len()))
}

fn criterion_6() -> Outcome {
    let a = alphabet(2);
    let (lo, vo, ho) = (e(list_orn(&a))?, e(vec_orn(&a, N))?, e(height_orn(N))?);
    let comp = e(vcompose(&vo, &lo))?;
    let (cd, vd) = (e(comp.interp())?, e(vo.interp())?);
    let mut trees = 0;
    for j in e(cd.out_idx().enumerate())? {
        for t in e(cd.mu_enumerate(&j, 3))? {
            let direct = e(forget(&comp, &t, Some(&j)))?;
            let v = e(extract_tree(&cd, &vd, &j, &t))?;
            let stepwise = e(forget(&lo, &e(forget(&vo, &v, Some(&j)))?, Some(&star())))?;
            ensure(direct == stepwise, || format!("{t}: {direct} vs {stepwise}"))?;
            // Oracle: a vector of length j forgets to the numeral j.
            ensure(direct == numeral(j.as_num().unwrap()), || format!("{t} forgets to {direct}"))?;
            trees += 1;
        }
    }
    let h = e(hcompose(&vo, &ho))?;
    let r = e(h.to_cart())?.check();
    ensure(r.passed(), || r.to_string())?;
    let hd = e(h.interp())?;
    let direct = e(compose_desc(&vd, &e(ho.interp())?))?;
    let mut counts = Vec::new();
    for j in e(hd.out_idx().enumerate())? {
        for depth in 0..=2 {
            let (x, y) = (e(hd.mu_count(&j, depth))?, e(direct.mu_count(&j, depth))?);
            ensure(x == y, || format!("at {j}, depth {depth}: {x} vs {y}"))?;
        }
        counts.push(e(hd.mu_count(&j, 2))?);
    }
    Ok(format!("{trees} composite trees commute; horizontal composite cartesian, counts {counts:?}"))
}

/// Σ over elements of positions pointing at `i`, and `|⟦∂c⟧ x| · |x i|`,
/// both by enumeration.
fn leibniz(c: &Container, i: &Value, x: &Family) -> Result<(usize, usize), String> {
    let dc = e(derive_container(c, i))?;
    let (mut lhs, mut contexts) = (0, 0);
    for j in e(c.out_idx().enumerate())? {
        for el in e(e(c.interp_at(&j, x))?.enumerate())? {
            let (sh, _) = e(c.check_element(&j, &el))?;
            let next = e(c.next(&j, &sh))?;
            for p in e(e(c.positions(&j, &sh))?.enumerate())? {
                lhs += usize::from(e(next.apply(&p))? == *i);
            }
        }
        contexts += e(e(dc.interp_at(&j, x))?.cardinality())?;
    }
    Ok((lhs, contexts * e(e(x.at(i))?.cardinality())?))
}

fn criterion_7() -> Outcome {
    let a = alphabet(2);
    let descs: Vec<(&str, DescFam)> = vec![
        ("nat", e(nat_desc())?),
        ("list", e(list_desc(&a))?),
        ("fin", e(fin_desc(N))?),
        ("vec", e(vec_desc(&a, N))?),
        ("square", e(square_desc())?),
        ("height", e(height_desc(N))?),
    ];
    let mut instances = 0;
    for (name, d) in &descs {
        let c = e(desc_to_container(d))?;
        for i in e(c.in_idx().enumerate())? {
            for x in e(Family::all_small(c.in_idx(), 2))? {
                let (lhs, rhs) = leibniz(&c, &i, &x)?;
                ensure(lhs == rhs, || format!("{name} at {i}: {lhs} vs {rhs}"))?;
                let r = e(check_plug(&c, &i, &x))?;
                ensure(r.passed(), || format!("{name}: {r}"))?;
                instances += 1;
            }
        }
    }
    let mut morphisms = 0;
    for (name, o) in corpus_ornaments()? {
        let m = e(o.to_cart())?;
        for i in e(m.src().in_idx().enumerate())? {
            let dm = e(derive_orn(&m, &i))?;
            let r = dm.check();
            ensure(r.passed(), || format!("{name} at {i}: {r}"))?;
            morphisms += 1;
        }
    }
    let dl = e(derive_container(&e(desc_to_container(&descs[1].1))?, &star()))?;
    let holes = e(e(dl.shapes(&star()))?.cardinality())?;
    ensure(holes == a.cardinality().unwrap(), || format!("{holes} list contexts"))?;
    Ok(format!("{instances} plug instances, {morphisms} derived morphisms, {holes} list contexts"))
}

fn payload_counts(recs: &[serde_json::Value], prefix: &str) -> Vec<u64> {
    select(recs, prefix).iter().map(|r| r["payload"]["count"].as_u64().unwrap_or(u64::MAX)).collect()
}

fn criterion_8() -> Outcome {
    let mut outputs = std::collections::BTreeMap::new();
    for (name, _, code) in sessions() {
        let ses = sessions_dir().join(format!("{name}.ses"));
        let (first, c1) = run_engine(&ses, &[]);
        let (second, c2) = run_engine(&ses, &[]);
        ensure(first == second, || format!("{name}: runs differ"))?;
        ensure(c1 == code && c2 == code, || format!("{name}: exit {c1}, expected {code}"))?;
        let golden = e(std::fs::read_to_string(sessions_dir().join(format!("{name}.out"))))?;
        ensure(first == golden, || format!("{name}: output differs from the golden file"))?;
        if code == 0 {
            let recs = records(&first);
            ensure(recs.iter().all(|r| r["status"] == "ok" && r["payload"]["status"] != "fail"), || {
                format!("{name}: a record failed")
            })?;
        }
        outputs.insert(name, records(&first));
    }
    // The sessions reproduce the library-level numbers.
    let forgets = select(&outputs["forget"], "(forget ");
    let want: Vec<String> = all_lists(&["a", "b"], 3).iter().map(|l| numeral(l.len()).to_string()).collect();
    let got: Vec<String> = forgets.iter().map(|r| r["payload"]["value"].as_str().unwrap().to_string()).collect();
    ensure(got == want, || "forget session disagrees with list lengths".into())?;
    ensure(payload_counts(&outputs["coherence"], "(mu-count") == [1, 2, 4, 8], || "coherence counts".into())?;
    ensure(payload_counts(&outputs["pullback"], "(mu-count") == [0, 1, 3, 7], || "pullback counts".into())?;
    ensure(payload_counts(&outputs["compositions"], "(mu-count VecNat") == [1, 2, 4, 8], || "vcompose counts".into())?;
    let list_holes = &select(&outputs["derivative"], "(derive ListHole ")[0]["payload"]["shapes"]["star"];
    ensure(*list_holes == 2, || format!("list contexts {list_holes}"))?;
    Ok(format!("{} sessions byte-identical across runs, exit codes 0/1/2 honored", outputs.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("description/container round trip", criterion_1),
        ("ornamental algebra computes length", criterion_2),
        ("algebraic ornament coherence", criterion_3),
        ("pullback gives bounded lists", criterion_4),
        ("ornaments are cartesian", criterion_5),
        ("vertical and horizontal composition", criterion_6),
        ("derivatives and plugging", criterion_7),
        ("session frontend", criterion_8),
    ];
    let mut failed = Vec::new();
    for (k, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS [{}] {title}: {detail}", k + 1),
            Err(reason) => {
                println!("FAIL [{}] {title}: {reason}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

