//! Exact integral homology of four small spaces.
//!
//! The zoo covers the phenomena the homology kernel must get right: a
//! 2-sphere (free part in the top degree), a circle (free part in degree 1),
//! the 6-vertex projective plane (2-torsion — the reason Smith normal form
//! over the rationals is not enough), and the 16-cell boundary (a
//! 3-dimensional facet list, exercising the general-dimension chain
//! builder).

use tdlc::complex::{cross_polytope_facets, octahedron};
use tdlc::homology::{complex_homology, facet_homology, HomologyGroup};

fn print_groups(name: &str, groups: &[HomologyGroup]) {
    let display: Vec<String> = groups.iter().map(HomologyGroup::display).collect();
    println!("{name}:");
    for (k, group) in display.iter().enumerate() {
        println!("  H_{k} = {group}");
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A 2-sphere, as the octahedron surface.
    let sphere = octahedron();
    print_groups("octahedron (2-sphere)", &complex_homology(&sphere)?);

    // A circle, as a hollow triangle.
    let circle = facet_homology(3, &[vec![0, 1], vec![1, 2], vec![0, 2]])?;
    print_groups("hollow triangle (circle)", &circle);

    // The 6-vertex triangulation of the real projective plane: H_1 has
    // 2-torsion, which only an integral computation can see.
    let projective_facets: Vec<Vec<u32>> = [
        [1u32, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
        [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
    ]
    .iter()
    .map(|t| t.iter().map(|&v| v - 1).collect())
    .collect();
    let projective = facet_homology(6, &projective_facets)?;
    print_groups("6-vertex projective plane", &projective);

    // The 16-cell boundary: a 3-sphere with 8 vertices and 16 tetrahedra.
    let sixteen_cell = facet_homology(8, &cross_polytope_facets(4))?;
    print_groups("16-cell boundary (3-sphere)", &sixteen_cell);

    Ok(())
}
