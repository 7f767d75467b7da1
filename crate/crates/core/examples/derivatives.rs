//! One-hole contexts, plugging, and derivatives of ornaments.

use ornament_engine::container::desc_to_container;
use ornament_engine::corpus::{alphabet, height_orn, list_desc, star, vec_orn};
use ornament_engine::derivative::{check_plug, derive_container, derive_orn, plug, ZipperCtx};
use ornament_engine::finset::{Family, FinSet, Value};
use ornament_engine::ornament::hcompose;

fn main() -> ornament_engine::Result<()> {
    let list = desc_to_container(&list_desc(&alphabet(2))?)?;
    let dl = derive_container(&list, &star())?;
    let x = Family::uniform(FinSet::star(), FinSet::enumeration(["p", "q"]))?;
    for el in dl.interp_at(&star(), &x)?.enumerate()? {
        let ctx = ZipperCtx::from_element(&dl, &star(), &el)?;
        println!("context {el}: plug p -> {}", plug(&list, &ctx, &x, &Value::label("p"))?);
    }
    println!("{}", check_plug(&list, &star(), &x)?);

    let a = alphabet(2);
    let bal = hcompose(&vec_orn(&a, 4)?, &height_orn(4)?)?.to_cart()?;
    for i in bal.src().in_idx().enumerate()? {
        let d = derive_orn(&bal, &i)?;
        let shapes: usize = d
            .src()
            .out_idx()
            .enumerate()?
            .iter()
            .map(|j| d.src().shapes(j).map(|s| s.cardinality().unwrap_or(0)).unwrap_or(0))
            .sum();
        println!("balanced trees, hole at height {i}: {shapes} contexts, {}", d.check());
    }
    Ok(())
}
