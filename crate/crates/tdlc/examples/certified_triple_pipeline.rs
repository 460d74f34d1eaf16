//! End-to-end run: search `PSL(2,13) x C3 x C3` for a subgroup triple of
//! order 39 whose coset complex passes every certificate premise, then
//! print the certificate and the triangle-orbit statistics.

use std::time::Instant;

use tdlc::certify::CertifyOptions;
use tdlc::pipeline::{certified_triple_search, BuiltGroup, SearchSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let start = Instant::now();
    let built = BuiltGroup::product(vec![
        BuiltGroup::psl2(13)?,
        BuiltGroup::cyclic(3)?,
        BuiltGroup::cyclic(3)?,
    ])?;
    println!("ambient group: {} (order {})", built.description(), built.group().order());

    let spec = SearchSpec { order: 39, nonabelian: true, count: 3 };
    let search = certified_triple_search(&built, &spec, &CertifyOptions::from_env()?)?;
    let stats = &search.stats;
    println!("subgroup classes of order {}: {}", spec.order, stats.class_count);
    println!("candidate pool size: {}", stats.pool_size);
    println!("triples considered: {}", stats.triples_considered);
    println!("  pairwise trivial intersections: {}", stats.pairwise_trivial);
    println!("  generating the whole group: {}", stats.generating);
    println!("  full part-permuting symmetry: {}", stats.symmetric);
    println!("  identity link screen passed: {}", stats.local_screen_passed);
    println!("  complexes built: {}", stats.complexes_built);
    println!("  certificates attempted: {}", stats.certificates_attempted);

    let Some(found) = &search.certified else {
        println!("no certified triple found");
        return Ok(());
    };
    println!();
    for (i, subgroup) in found.subgroups.iter().enumerate() {
        let words: Vec<String> =
            subgroup.generators().iter().map(|g| g.cycles_string()).collect();
        println!("subgroup {}: order {} = <{}>", i + 1, subgroup.order(), words.join(", "));
    }
    println!("part permutations realised by symmetries: {:?}", found.symmetries);
    println!();
    println!("{}", found.certificate.text_report());
    println!(
        "triangle orbits under right multiplication alone: {}",
        found.plain_triangle_orbits.len()
    );
    for orbit in &found.plain_triangle_orbits {
        println!("  representative {:?}, size {}", orbit.representative, orbit.size);
    }
    println!("elapsed: {:.1?}", start.elapsed());
    Ok(())
}
