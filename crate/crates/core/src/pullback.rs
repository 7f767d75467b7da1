//! Pullbacks of two ornaments of the same base.

use crate::container::{CartMorphism, Container};
use crate::desc::{DescFam, MuTree};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet, Value};
use crate::ornament::{cart_to_orn_over, ornamental_algebra, OrnFam};
use crate::report::Report;

/// The apex of the square and its two legs, each leg both as a cartesian
/// morphism and as an ornament.
#[derive(Debug, Clone)]
pub struct PullbackResult {
    pub apex: DescFam,
    pub apex_container: Container,
    pub cart1: CartMorphism,
    pub cart2: CartMorphism,
    pub proj1: OrnFam,
    pub proj2: OrnFam,
    pub left: OrnFam,
    pub right: OrnFam,
}

fn agreeing(a: &FinFn, b: &FinFn) -> Result<FinSet> {
    let mut out = Vec::new();
    for x in a.dom().enumerate()? {
        let fx = a.apply(&x)?;
        for y in b.dom().enumerate()? {
            if b.apply(&y)? == fx {
                out.push(Value::pair(x.clone(), y));
            }
        }
    }
    Ok(FinSet::Lit(out))
}

fn halves(v: &Value) -> (&Value, &Value) {
    v.as_pair().expect("pair")
}

fn projection(dom: &FinSet, cod: &FinSet, first: bool, label: &str) -> Result<FinFn> {
    Ok(FinFn::tabulate(dom.clone(), cod.clone(), |p| {
        let (a, b) = halves(p);
        Ok(if first { a.clone() } else { b.clone() })
    })?
    .with_label(label))
}

/// Shapes over `(j1, j2)` are the pairs of shapes with a common image in
/// the base; positions are shared, and each position points at the pair
/// of refined indices.
pub fn pullback_orn(o1: &OrnFam, o2: &OrnFam) -> Result<PullbackResult> {
    if o1.base() != o2.base() {
        return Err(Error::BaseMismatch("the two ornaments refine different descriptions".into()));
    }
    let (f, g) = (o1.interp()?, o2.interp()?);
    let (m1, m2) = (o1.to_cart()?, o2.to_cart()?);
    let (cf, cg) = (m1.src().clone(), m2.src().clone());
    let in_idx = agreeing(o1.u(), o2.u())?;
    let out_idx = agreeing(o1.v(), o2.v())?;
    let apex_container = Container::tabulate(
        in_idx.clone(),
        out_idx.clone(),
        |j| {
            let (j1, j2) = halves(j);
            let mut shapes = Vec::new();
            for a in cf.shapes(j1)?.enumerate()? {
                let img = m1.map_shape(j1, &a)?;
                for b in cg.shapes(j2)?.enumerate()? {
                    if m2.map_shape(j2, &b)? == img {
                        shapes.push(Value::pair(a.clone(), b));
                    }
                }
            }
            Ok(FinSet::Lit(shapes))
        },
        |j, sh| Ok(cf.positions(halves(j).0, halves(sh).0)?.clone()),
        |j, sh, p| {
            let ((j1, j2), (a, b)) = (halves(j), halves(sh));
            Ok(Value::pair(cf.next(j1, a)?.apply(p)?, cg.next(j2, b)?.apply(p)?))
        },
    )?;
    let leg = |first: bool, c: &Container| -> Result<CartMorphism> {
        let name = if first { "fst" } else { "snd" };
        CartMorphism::tabulate(
            apex_container.clone(),
            c.clone(),
            projection(&in_idx, c.in_idx(), first, name)?,
            projection(&out_idx, c.out_idx(), first, name)?,
            |_, sh| {
                let (a, b) = halves(sh);
                Ok(if first { a.clone() } else { b.clone() })
            },
        )
    };
    let cart1 = leg(true, &cf)?;
    let cart2 = leg(false, &cg)?;
    let proj1 = cart_to_orn_over(&cart1, &f)?;
    let proj2 = cart_to_orn_over(&cart2, &g)?;
    let apex = proj1.interp()?;
    Ok(PullbackResult {
        apex,
        apex_container,
        cart1,
        cart2,
        proj1,
        proj2,
        left: o1.clone(),
        right: o2.clone(),
    })
}

/// Commutation of the two forget paths on every apex tree up to `depth`,
/// and, index by index, that the apex shapes are exactly the set pullback
/// of the two shape maps.
pub fn check_pullback_square(r: &PullbackResult, depth: usize) -> Result<Report> {
    let mut rep = Report::new("pullback");
    let (m1, m2) = (r.left.to_cart()?, r.right.to_cart()?);
    let mut shapes = 0;
    for j in r.apex_container.out_idx().enumerate()? {
        let (j1, j2) = halves(&j);
        let mut brute = Vec::new();
        for a in m1.src().shapes(j1)?.enumerate()? {
            for b in m2.src().shapes(j2)?.enumerate()? {
                if m1.map_shape(j1, &a)? == m2.map_shape(j2, &b)? {
                    brute.push(Value::pair(a.clone(), b));
                }
            }
        }
        let mut apex = r.apex_container.shapes(&j)?.enumerate()?;
        shapes += apex.len();
        brute.sort();
        apex.sort();
        rep.expect(apex == brute, || {
            format!("apex shapes at {j}: {} found, {} in the set pullback", apex.len(), brute.len())
        });
    }
    rep.count("shapes", shapes);

    rep.expect(r.proj2.interp()? == r.apex, || "the two legs present different apexes".into());

    let a1 = ornamental_algebra(&r.proj1, depth)?;
    let a2 = ornamental_algebra(&r.proj2, depth)?;
    let b1 = ornamental_algebra(&r.left, depth)?;
    let b2 = ornamental_algebra(&r.right, depth)?;
    let mut trees = 0;
    let mu = r.apex.mu_family(depth)?;
    for j in r.apex.out_idx().enumerate()? {
        let (j1, j2) = halves(&j);
        for t in mu.at(&j)?.enumerate()? {
            trees += 1;
            let t = MuTree::new(t)?;
            let x = b1.fold(j1, &MuTree::new(a1.fold(&j, &t)?)?)?;
            let y = b2.fold(j2, &MuTree::new(a2.fold(&j, &t)?)?)?;
            rep.expect(x == y, || format!("{t} at {j} forgets to {x} on one side and {y} on the other"));
        }
    }
    rep.count("trees", trees);
    Ok(rep)
}

