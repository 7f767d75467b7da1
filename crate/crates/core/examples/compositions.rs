//! Vertical and horizontal composition of ornaments.

use ornament_engine::corpus::{alphabet, height_orn, list_orn, star, vec_orn};
use ornament_engine::desc::compose_desc;
use ornament_engine::finset::Value;
use ornament_engine::ornament::{extract_tree, forget, hcompose, vcompose};

fn main() -> ornament_engine::Result<()> {
    let a = alphabet(2);
    let (lo, vo, ho) = (list_orn(&a)?, vec_orn(&a, 4)?, height_orn(4)?);

    // Vectors straight over the naturals.
    let vn = vcompose(&vo, &lo)?;
    let (cd, vd) = (vn.interp()?, vo.interp()?);
    let two = Value::num(2);
    for t in cd.mu_enumerate(&two, 3)? {
        let via_lists = forget(&lo, &forget(&vo, &extract_tree(&cd, &vd, &two, &t)?, Some(&two))?, Some(&star()))?;
        println!("{t}\n  -> {} (stepwise {via_lists})", forget(&vn, &t, Some(&two))?);
    }

    // Balanced binary trees over binary trees.
    let bal = hcompose(&vo, &ho)?;
    println!("horizontal composite: {}", bal.to_cart()?.check());
    let direct = compose_desc(&vd, &ho.interp()?)?;
    let bd = bal.interp()?;
    for n in 0..4 {
        let k = Value::num(n);
        println!("height {n}: {} composite trees, {} by direct composition", bd.mu_count(&k, 2)?, direct.mu_count(&k, 2)?);
    }
    Ok(())
}
