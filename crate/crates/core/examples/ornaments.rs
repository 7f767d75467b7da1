//! Lists, vectors and finite sets as ornaments, and what forgetting does.

use ornament_engine::corpus::{alphabet, fin_orn, list, list_orn, star, vec_orn};
use ornament_engine::finset::Value;
use ornament_engine::ornament::{cart_to_orn, check_psi_phi, forget, ornamental_algebra};

fn main() -> ornament_engine::Result<()> {
    let a = alphabet(2);
    let lo = list_orn(&a)?;
    println!("ListOrn over NatD: {lo}");

    let alg = ornamental_algebra(&lo, 4)?;
    for l in [vec![], vec!["a"], vec!["b", "a", "b"]] {
        let t = list(&l);
        println!("forget {t} = {}", forget(&lo, &t, None)?);
        assert_eq!(alg.fold(&star(), &t)?, *forget(&lo, &t, None)?.value());
    }

    let vo = vec_orn(&a, 4)?;
    let fo = fin_orn(4)?;
    for (name, o) in [("list", &lo), ("vec", &vo), ("fin", &fo)] {
        let m = o.to_cart()?;
        println!("{name}: {} | {}", m.check(), check_psi_phi(o, 2)?);
    }

    let vd = vo.interp()?;
    let fd = fo.interp()?;
    for n in 0..4 {
        let k = Value::num(n);
        println!("n = {n}: {} vectors, {} elements of Fin n", vd.mu_count(&k, 5)?, fd.mu_count(&k, 5)?);
    }

    let again = cart_to_orn(&vo.to_cart()?)?;
    println!("vectors re-presented over the list container: {} codes", again.codes().count());
    Ok(())
}
