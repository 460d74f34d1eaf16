//! Certify the octahedron surface under its full symmetry group.
//!
//! The octahedron is the smallest complex that exercises every premise: it
//! is connected, flag, edge-transitive, and has `H_1 = 0` — but its vertex
//! links are 4-cycles, so the link-girth premise fails and none of the
//! curvature conclusions may be derived. The exercise is seeing a
//! certificate fail honestly.

use tdlc::certify::{certify, CertifyOptions, Environment};
use tdlc::complex::{octahedron, octahedron_symmetries, VertexAction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let complex = octahedron();
    let action = VertexAction::new(complex.vertex_count(), octahedron_symmetries())?;

    println!(
        "octahedron: {} vertices, {} edges, {} triangles, euler characteristic {}",
        complex.vertex_count(),
        complex.edge_count(),
        complex.triangle_count(),
        complex.euler_characteristic()
    );
    println!(
        "symmetry action: {} generators, respects complex: {}",
        action.generators().len(),
        action.respects(&complex)
    );
    println!(
        "directed edge orbits: {}",
        action.directed_edge_orbit_count(&complex)
    );
    println!();

    let environment = Environment {
        group: "octahedron symmetry group".to_string(),
        subgroup_generators: Vec::new(),
        conventions: Environment::standard_conventions(),
    };
    let certificate = certify(&complex, Some(&action), environment, &CertifyOptions::from_env()?)?;
    print!("{}", certificate.text_report());

    println!();
    println!(
        "all premises pass: {} (the 4-cycle links sink the girth premise)",
        certificate.all_premises_pass()
    );
    Ok(())
}
