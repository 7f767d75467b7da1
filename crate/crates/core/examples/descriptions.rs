//! Descriptions of naturals and lists: interpretations, fixpoints, folds.

use ornament_engine::corpus::{alphabet, length_alg, list, list_desc, nat_desc, star};
use ornament_engine::desc::compose_desc;
use ornament_engine::corpus::square_desc;
use ornament_engine::finset::{Family, FinSet};

fn main() -> ornament_engine::Result<()> {
    let nat = nat_desc()?;
    let lists = list_desc(&alphabet(2))?;
    println!("NatD  = {nat}");
    println!("ListD = {lists}");

    let three = Family::uniform(FinSet::star(), FinSet::enumeration(["p", "q", "r"]))?;
    for (name, d) in [("NatD", &nat), ("ListD", &lists)] {
        let n = d.interp_counts(&three)?[0].1;
        println!("|{name} X| with |X| = 3: {n}");
    }

    for depth in 0..=4 {
        println!("lists of depth <= {depth}: {}", lists.mu_count(&star(), depth)?);
    }
    for t in lists.mu_enumerate(&star(), 2)? {
        println!("  {t}");
    }

    let len = length_alg(&alphabet(2), 4)?;
    let t = list(&["a", "b", "b"]);
    println!("length of {t} = {}", len.fold(&star(), &t)?);

    let ls = compose_desc(&lists, &square_desc()?)?;
    println!("lists of pairs, depth <= 2: {}", ls.mu_count(&star(), 2)?);
    Ok(())
}
