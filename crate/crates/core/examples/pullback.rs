//! Bounded lists as the pullback of lists and finite sets over the naturals.

use ornament_engine::corpus::{alphabet, fin_orn, list_orn, star};
use ornament_engine::finset::Value;
use ornament_engine::pullback::{check_pullback_square, pullback_orn};

fn main() -> ornament_engine::Result<()> {
    let r = pullback_orn(&list_orn(&alphabet(2))?, &fin_orn(4)?)?;
    for n in 0..4 {
        let ix = Value::pair(star(), Value::num(n));
        println!("lists shorter than {n}: {}", r.apex.mu_count(&ix, 4)?);
    }
    let ix = Value::pair(star(), Value::num(2));
    for t in r.apex.mu_enumerate(&ix, 3)? {
        println!("  {t}");
    }
    println!("{}", check_pullback_square(&r, 4)?);
    println!("left leg: {}", r.proj1.to_cart()?.check());
    println!("right leg: {}", r.proj2.to_cart()?.check());
    Ok(())
}
