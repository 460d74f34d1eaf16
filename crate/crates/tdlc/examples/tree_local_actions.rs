//! Ball maps of a (2,3)-biregular tree with prescribed local actions.
//!
//! A truncated ball of the biregular tree carries a legal edge labeling;
//! an automorphism of the ball induces, at each interior vertex, a
//! permutation of labels — its local action. Prescribing which local
//! actions are allowed on each side carves out a finite shadow of a
//! universal group, small enough to enumerate exactly.

use tdlc::perm::PermGroup;
use tdlc::tree::{
    build_ball, canonical_labeling, enumerate_universal, max_edge_fixator_size,
    root_local_action_image, TreeSide,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ball = build_ball(2, 3, 2, TreeSide::X)?;
    let labeling = canonical_labeling(&ball);
    println!(
        "(2,3)-biregular ball, radius {}: {} vertices",
        ball.radius(),
        ball.vertex_count()
    );
    println!();

    // Full local groups on both sides.
    let m = PermGroup::symmetric(2);
    let n = PermGroup::symmetric(3);
    let maps = enumerate_universal(&ball, &labeling, &m, &n, true)?;
    println!("local groups Sym(2)/Sym(3), root fixed: {} ball maps", maps.len());

    let image = root_local_action_image(&ball, &labeling, &m, &n)?;
    println!(
        "local actions realised at the root: {} (prescribed group has order {})",
        image.len(),
        m.order()
    );
    println!("every realised action lies in Sym(2): {}", image.iter().all(|p| m.contains(p)));
    println!();

    // Trivial local groups leave only the identity.
    let trivial_maps = enumerate_universal(
        &ball,
        &labeling,
        &PermGroup::trivial(2),
        &PermGroup::trivial(3),
        true,
    )?;
    println!("trivial local groups: {} ball map(s)", trivial_maps.len());
    println!();

    // Freely acting local groups (cyclic rotations) pin down every edge:
    // at radii 2 and 3 all edge fixators are trivial.
    for radius in [2usize, 3] {
        let ball = build_ball(2, 3, radius, TreeSide::X)?;
        let labeling = canonical_labeling(&ball);
        let free_m = PermGroup::cyclic(2);
        let free_n = PermGroup::cyclic(3);
        let maps = enumerate_universal(&ball, &labeling, &free_m, &free_n, true)?;
        println!(
            "free local groups C2/C3 at radius {}: {} maps, largest edge fixator {}",
            radius,
            maps.len(),
            max_edge_fixator_size(&ball, &maps)
        );
    }
    Ok(())
}
