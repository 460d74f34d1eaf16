//! The coset complex of Sym(4) on its three Sylow 2-subgroups.
//!
//! Each dihedral subgroup has index 3, so the complex is a tripartite
//! 9-vertex complex whose triangles are the triples of cosets with a common
//! element. Small enough to print, it still shows the two actions this
//! crate attaches to a coset complex: plain right multiplication, which
//! preserves the three parts, and the extended action when extra symmetry
//! is available (none here — Sym(4) is not a recognised product shape).

use tdlc::perm::{PermGroup, Permutation};
use tdlc::pipeline::{assemble_coset, BuiltGroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let built = BuiltGroup::symmetric(4)?;
    let dihedral = |a: &str, b: &str, c: &str| -> Result<PermGroup, tdlc::Error> {
        let generators = [a, b, c]
            .iter()
            .map(|text| Permutation::parse_cycles(text, 4))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(4, generators)
    };
    let subgroups = [
        dihedral("(1 2)", "(3 4)", "(1 3)(2 4)")?,
        dihedral("(1 3)", "(2 4)", "(1 2)(3 4)")?,
        dihedral("(1 4)", "(2 3)", "(1 2)(3 4)")?,
    ];
    for (i, h) in subgroups.iter().enumerate() {
        let words: Vec<String> = h.generators().iter().map(|g| g.cycles_string()).collect();
        println!("subgroup {}: order {} = <{}>", i + 1, h.order(), words.join(", "));
    }

    let assembled = assemble_coset(&built, subgroups)?;
    let complex = &assembled.coset.complex;
    println!();
    println!("part sizes: {:?}", assembled.coset.part_sizes());
    println!(
        "complex: {} vertices, {} edges, {} triangles, euler characteristic {}",
        complex.vertex_count(),
        complex.edge_count(),
        complex.triangle_count(),
        complex.euler_characteristic()
    );
    println!("connected: {}", complex.is_connected());
    println!("flag: {}", complex.is_flag());
    println!("every edge in a triangle: {}", complex.every_edge_in_a_triangle());

    println!();
    println!("appended part-permuting symmetries: {}", assembled.symmetries.len());
    let action = &assembled.action;
    println!("action generators: {}", action.generators().len());
    println!("vertex orbits: {}", action.vertex_orbits(complex.vertex_count()).len());
    println!("directed edge orbits: {}", action.directed_edge_orbit_count(complex));
    let orbits = action.triangle_orbits(complex);
    println!("triangle orbits: {}", orbits.len());
    for orbit in &orbits {
        println!("  representative {:?}, size {}", orbit.representative, orbit.size);
    }
    Ok(())
}
