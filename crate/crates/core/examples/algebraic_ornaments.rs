//! Indexing lists by their length through the length algebra.

use ornament_engine::algorn::algebraic_ornament;
use ornament_engine::corpus::{alphabet, length_alg, list, star};
use ornament_engine::finset::Value;

fn main() -> ornament_engine::Result<()> {
    let r = algebraic_ornament(&length_alg(&alphabet(2), 4)?)?;
    for n in 0..4 {
        let ix = Value::pair(star(), Value::num(n));
        println!("lists of length {n}: {}", r.desc.mu_count(&ix, 5)?);
        println!("  {}", r.check_coherence(&star(), &Value::num(n), 5)?);
    }

    let t = list(&["b", "a"]);
    let (ix, lifted) = r.remember(&star(), &t)?;
    println!("remember {t} = {lifted} at {ix}");
    let (back, witness) = r.recompute(&ix, &lifted)?;
    println!("recompute gives {back} with witness {witness}");
    println!("ornament is cartesian: {}", r.cart.check());
    Ok(())
}
