//! Pullbacks of ornaments and derivatives of containers and morphisms.

use ornament_engine::container::{desc_to_container, CartMorphism, Container};
use ornament_engine::corpus::*;
use ornament_engine::derivative::{check_plug, derive_container, derive_orn, plug, ZipperCtx};
use ornament_engine::desc::{DescCode, DescFam};
use ornament_engine::finset::{Family, FinFn, FinSet, Value};
use ornament_engine::ornament::{cart_to_orn, hcompose, identity_orn, vcompose, OrnCode, OrnFam};
use ornament_engine::pullback::{check_pullback_square, pullback_orn};
use proptest::prelude::*;

const N: usize = 4;

fn sorted(mut v: Vec<Value>) -> Vec<Value> {
    v.sort();
    v
}

#[test]
fn pulling_back_along_the_identity_changes_nothing() {
    let a = alphabet(2);
    for o in [list_orn(&a).unwrap(), fin_orn(N).unwrap(), vec_orn(&a, N).unwrap()] {
        let r = pullback_orn(&o, &identity_orn(o.base()).unwrap()).unwrap();
        assert!(check_pullback_square(&r, 3).unwrap().passed());
        let d = o.interp().unwrap();
        for j in d.out_idx().enumerate().unwrap() {
            let over = Value::pair(j.clone(), o.v().apply(&j).unwrap());
            assert_eq!(r.apex.mu_count(&over, 4).unwrap(), d.mu_count(&j, 4).unwrap(), "at {j}");
        }
    }
}

#[test]
fn self_pullback_is_the_diagonal() {
    let a = alphabet(2);
    for o in [fin_orn(N).unwrap(), vec_orn(&a, N).unwrap()] {
        let r = pullback_orn(&o, &o).unwrap();
        let c = desc_to_container(&o.interp().unwrap()).unwrap();
        for j in c.out_idx().enumerate().unwrap() {
            let mine = c.shapes(&j).unwrap().enumerate().unwrap();
            let diag: Vec<Value> = mine.iter().map(|s| Value::pair(s.clone(), s.clone())).collect();
            let apex = r.apex_container.shapes(&Value::pair(j.clone(), j.clone())).unwrap();
            assert_eq!(sorted(apex.enumerate().unwrap()), sorted(diag));
        }
        assert!(check_pullback_square(&r, 3).unwrap().passed());
    }
}

#[test]
fn a_missing_shape_pair_breaks_universality() {
    let r = pullback_orn(&list_orn(&alphabet(2)).unwrap(), &fin_orn(N).unwrap()).unwrap();
    assert!(check_pullback_square(&r, 4).unwrap().passed());
    let mut broken = r.clone();
    let mut dropped = false;
    broken.apex_container = r
        .apex_container
        .restrict_shapes(|_, _| {
            let keep = dropped;
            dropped = true;
            keep
        })
        .unwrap();
    let rep = check_pullback_square(&broken, 4).unwrap();
    assert!(!rep.passed());
    assert!(rep.violations[0].contains("set pullback"), "{rep}");
}

/// An ornament of the naturals inserting `k0` labels at zero and `k1` at
/// each successor.
fn labelled(k0: usize, k1: usize) -> OrnFam {
    let nat = nat_desc().unwrap();
    let id = FinFn::identity(FinSet::star()).unwrap();
    let labels = |k: usize, p: &str| FinSet::enumeration((0..k).map(|i| format!("{p}{i}")));
    OrnFam::tabulate(nat.clone(), id.clone(), id, |j| {
        OrnCode::copy(nat.at(j)?, |t, _| {
            if t.as_label() == Some("z") {
                OrnCode::insert(labels(k0, "n"), |_| Ok(OrnCode::Unit))
            } else {
                OrnCode::insert(labels(k1, "c"), |_| Ok(OrnCode::var_inv(star())))
            }
        })
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Arbitrary labellings of the naturals: the apex holds exactly the
    // pairs of trees over the same numeral, with no shape lost.
    #[test]
    fn pullbacks_of_labelled_naturals_count_pairs(k0 in 0usize..3, k1 in 0usize..3, l0 in 0usize..3, l1 in 0usize..3) {
        let r = pullback_orn(&labelled(k0, k1), &labelled(l0, l1)).unwrap();
        prop_assert!(check_pullback_square(&r, 3).unwrap().passed());
        prop_assert!(r.proj1.to_cart().unwrap().check().passed());
        prop_assert!(r.proj2.to_cart().unwrap().check().passed());
        let at = Value::pair(star(), star());
        for depth in 0..=3u32 {
            let want: usize = (0..depth).map(|n| k0 * l0 * (k1 * l1).pow(n)).sum();
            prop_assert_eq!(r.apex.mu_count(&at, depth as usize).unwrap(), want);
        }
    }
}

fn corpus_containers() -> Vec<(&'static str, Container)> {
    let a = alphabet(2);
    [
        ("nat", nat_desc().unwrap()),
        ("list", list_desc(&a).unwrap()),
        ("fin", fin_desc(N).unwrap()),
        ("vec", vec_desc(&a, N).unwrap()),
        ("square", square_desc().unwrap()),
        ("height", height_desc(N).unwrap()),
    ]
    .into_iter()
    .map(|(n, d)| (n, desc_to_container(&d).unwrap()))
    .collect()
}

#[test]
fn list_and_nat_contexts() {
    let a = alphabet(2);
    let list = desc_to_container(&list_desc(&a).unwrap()).unwrap();
    let dl = derive_container(&list, &star()).unwrap();
    let holes = dl.shapes(&star()).unwrap().enumerate().unwrap();
    assert_eq!(holes.len(), 2);
    for h in &holes {
        assert_eq!(dl.positions(&star(), h).unwrap().cardinality().unwrap(), 0);
    }
    let nat = desc_to_container(&nat_desc().unwrap()).unwrap();
    let dn = derive_container(&nat, &star()).unwrap();
    let only = dn.shapes(&star()).unwrap().enumerate().unwrap();
    assert_eq!(only.len(), 1);
    assert_eq!(dn.positions(&star(), &only[0]).unwrap().cardinality().unwrap(), 0);

    // Plug b into the hole after a cons a.
    let x = Family::uniform(FinSet::star(), FinSet::enumeration(["a", "b"])).unwrap();
    let cons_a = holes.iter().find(|h| h.to_string().contains(" a")).expect("cons a context");
    let ctx = ZipperCtx { j: star(), shape: cons_a.as_pair().unwrap().0.clone(), hole: cons_a.as_pair().unwrap().1.clone(), rest: vec![] };
    let el = plug(&list, &ctx, &x, &Value::label("b")).unwrap();
    let (sh, vals) = list.check_element(&star(), &el).unwrap();
    assert_eq!(sh, ctx.shape);
    assert_eq!(vals, vec![Value::label("b")]);
    assert_eq!(plug(&list, &ctx, &x, &Value::label("c")).unwrap_err().code(), "E-INDEX");
}

#[test]
fn indices_nothing_points_at_have_no_contexts() {
    let vec = desc_to_container(&vec_desc(&alphabet(2), N).unwrap()).unwrap();
    // Only a vector of length 4 would hold one of length 3.
    let d = derive_container(&vec, &Value::num(N - 1)).unwrap();
    for j in d.out_idx().enumerate().unwrap() {
        assert_eq!(d.shapes(&j).unwrap().cardinality().unwrap(), 0);
    }
    // No inputs at all: constants, with nothing to differentiate.
    let konst = DescFam::tabulate(FinSet::empty(), FinSet::star(), |_| {
        DescCode::sigma(FinSet::enumeration(["p", "q"]), |_| Ok(DescCode::One))
    })
    .unwrap();
    let c = desc_to_container(&konst).unwrap();
    assert_eq!(derive_container(&c, &star()).unwrap_err().code(), "E-INDEX");
    let none = Family::uniform(FinSet::empty(), FinSet::unit()).unwrap();
    assert_eq!(c.interp(&none).unwrap().at(&star()).unwrap().cardinality().unwrap(), 2);
}

#[test]
fn plugging_is_a_bijection_on_the_corpus() {
    for (name, c) in corpus_containers() {
        for i in c.in_idx().enumerate().unwrap() {
            for x in Family::all_small(c.in_idx(), 2).unwrap() {
                let r = check_plug(&c, &i, &x).unwrap();
                assert!(r.passed(), "{name} at {i}: {r}");
                assert_eq!(r.counts["contexts_times_values"], r.counts["positions_over_index"]);
            }
        }
    }
}

fn morphisms() -> Vec<(&'static str, CartMorphism)> {
    let a = alphabet(2);
    let (lo, fo, vo, ho) = (list_orn(&a).unwrap(), fin_orn(N).unwrap(), vec_orn(&a, N).unwrap(), height_orn(N).unwrap());
    vec![
        ("list", lo.to_cart().unwrap()),
        ("fin", fo.to_cart().unwrap()),
        ("vec", vo.to_cart().unwrap()),
        ("height", ho.to_cart().unwrap()),
        ("vec-nat", vcompose(&vo, &lo).unwrap().to_cart().unwrap()),
        ("balanced", hcompose(&vo, &ho).unwrap().to_cart().unwrap()),
    ]
}

fn table(m: &CartMorphism) -> Vec<(Value, Vec<(Value, Value)>)> {
    m.src()
        .out_idx()
        .enumerate()
        .unwrap()
        .into_iter()
        .map(|j| {
            let rows = m.sigma_at(&j).unwrap().entries().unwrap();
            (j, rows)
        })
        .collect()
}

/// Matches each source context with the target context over its image by
/// search, without consulting `derive_orn`.
fn matched(m: &CartMorphism, i: &Value) -> CartMorphism {
    let src = derive_container(m.src(), i).unwrap();
    let tgt = derive_container(m.tgt(), &m.u().apply(i).unwrap()).unwrap();
    let t = tgt.clone();
    CartMorphism::tabulate(src, tgt, m.u().clone(), m.v().clone(), |j, shp| {
        let (sh, hole) = shp.as_pair().unwrap();
        let img = m.map_shape(j, sh)?;
        let hits: Vec<Value> = t
            .shapes(&m.v().apply(j)?)?
            .enumerate()?
            .into_iter()
            .filter(|c| c.as_pair().unwrap() == (&img, hole))
            .collect();
        assert_eq!(hits.len(), 1);
        Ok(hits[0].clone())
    })
    .unwrap()
}

#[test]
fn deriving_and_ornamenting_commute() {
    for (name, m) in morphisms() {
        for i in m.src().in_idx().enumerate().unwrap() {
            let dm = derive_orn(&m, &i).unwrap();
            assert!(dm.check().passed(), "{name} at {i}");
            let other = matched(&m, &i);
            assert!(other.check().passed());
            assert_eq!(table(&dm), table(&other), "{name} at {i}");
            // The derived morphism re-presented as an ornament counts the
            // same as the derivative of the source.
            let ornamented = cart_to_orn(&dm).unwrap().interp().unwrap();
            for x in Family::all_small(m.src().in_idx(), 1).unwrap() {
                let direct = dm.src().interp(&x).unwrap().counts().unwrap();
                assert_eq!(ornamented.interp_counts(&x).unwrap(), direct, "{name} at {i}");
            }
        }
    }
}

#[test]
fn derivatives_respect_identities_and_composition() {
    for (_, c) in corpus_containers() {
        let id = CartMorphism::identity(&c).unwrap();
        for i in c.in_idx().enumerate().unwrap() {
            let dc = derive_container(&c, &i).unwrap();
            assert_eq!(derive_orn(&id, &i).unwrap(), CartMorphism::identity(&dc).unwrap());
        }
    }
    let a = alphabet(2);
    let (outer, inner) = (list_orn(&a).unwrap().to_cart().unwrap(), vec_orn(&a, N).unwrap().to_cart().unwrap());
    let both = outer.compose(&inner).unwrap();
    for i in inner.src().in_idx().enumerate().unwrap() {
        let whole = derive_orn(&both, &i).unwrap();
        let steps = derive_orn(&outer, &inner.u().apply(&i).unwrap())
            .unwrap()
            .compose(&derive_orn(&inner, &i).unwrap())
            .unwrap();
        assert_eq!(table(&whole), table(&steps), "at {i}");
    }
}

#[test]
fn derive_orn_needs_a_cartesian_morphism() {
    let (lc, nc) = (
        desc_to_container(&list_desc(&alphabet(2)).unwrap()).unwrap(),
        desc_to_container(&nat_desc().unwrap()).unwrap(),
    );
    let z = nc.shapes(&star()).unwrap().enumerate().unwrap()[0].clone();
    let id = FinFn::identity(FinSet::star()).unwrap();
    let broken = CartMorphism::tabulate(lc, nc, id.clone(), id, |_, _| Ok(z.clone())).unwrap();
    assert_eq!(derive_orn(&broken, &star()).unwrap_err().code(), "E-NOTCART");
}
