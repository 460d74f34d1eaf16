//! Conjugacy classes of order-39 nonabelian subgroups of
//! `PSL(2,13) x C3 x C3`.
//!
//! These are the raw material of the certified pipeline: order 39 = 13 * 3
//! forces a nonabelian semidirect product `C13 : C3`, the 13-part must land
//! in the `PSL(2,13)` factor, and the class census below is what the triple
//! search draws its candidates from.

use tdlc::perm::{find_subgroups, SubgroupFilter};
use tdlc::pipeline::BuiltGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let built = BuiltGroup::product(vec![
        BuiltGroup::psl2(13)?,
        BuiltGroup::cyclic(3)?,
        BuiltGroup::cyclic(3)?,
    ])?;
    println!("group: {} (order {})", built.description(), built.group().order());

    let classes = find_subgroups(built.group(), 39, SubgroupFilter::Nonabelian)?;
    println!("order-39 nonabelian conjugacy classes: {}", classes.len());
    println!();
    for (index, class) in classes.iter().enumerate() {
        let words: Vec<String> =
            class.generators().iter().map(|g| g.cycles_string()).collect();
        println!("class {}: order {}, abelian {}", index + 1, class.order(), class.is_abelian());
        for word in words {
            println!("  {word}");
        }
    }

    // For contrast: every order-39 subgroup, abelian ones included. The
    // cyclic C39 classes only appear here.
    let any = find_subgroups(built.group(), 39, SubgroupFilter::Any)?;
    println!();
    println!(
        "all order-39 classes: {} ({} abelian)",
        any.len(),
        any.iter().filter(|h| h.is_abelian()).count()
    );
    Ok(())
}
