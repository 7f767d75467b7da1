//! Descriptions as containers and back, with the element bijection checked.

use ornament_engine::container::{
    check_round_trip, container_to_desc, desc_element_to_container, desc_to_container,
};
use ornament_engine::corpus::{alphabet, vec_desc};
use ornament_engine::finset::{Family, FinSet, Value};

fn main() -> ornament_engine::Result<()> {
    let vec = vec_desc(&alphabet(2), 4)?;
    let c = desc_to_container(&vec)?;
    for j in c.out_idx().enumerate()? {
        let shapes = c.shapes(&j)?.enumerate()?;
        println!("index {j}: {} shapes", shapes.len());
        for sh in shapes {
            println!("  {sh} with {} positions", c.positions(&j, &sh)?.cardinality()?);
        }
    }

    let x = Family::uniform(FinSet::nat(4), FinSet::enumeration(["u", "w"]))?;
    let one = Value::num(1);
    for el in vec.interp(&x)?.at(&one)?.enumerate()? {
        println!("{el}  ->  {}", desc_element_to_container(&vec, &one, &el)?);
    }

    for x in Family::all_small(c.in_idx(), 1)?.iter().take(3) {
        println!("{}", check_round_trip(&vec, x)?);
    }
    let back = container_to_desc(&c)?;
    println!("container read back as a description at 0: {}", back.at(&Value::num(0))?);
    Ok(())
}
