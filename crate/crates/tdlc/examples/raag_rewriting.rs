//! Normal forms and kernel rewriting in the octahedron graph group.
//!
//! The right-angled Artin group on the octahedron graph has six generators,
//! one per vertex, commuting exactly along edges. The exponent-sum
//! homomorphism to the integers has a finitely generated kernel; its
//! natural generators are the edge elements `u * v^-1`, and any word of
//! exponent sum zero rewrites over them.

use std::sync::Arc;

use tdlc::graph::Graph;
use tdlc::perm::Permutation;
use tdlc::raag::{
    display_edge_word, edge_word_to_raag, rewrite_in_edge_generators, sd_multiply, RaagWord,
    SdElement,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graph = Arc::new(Graph::octahedron());
    println!(
        "octahedron graph group: {} generators, {} commuting pairs",
        graph.vertex_count(),
        graph.edge_count()
    );
    println!();

    // Normal forms: adjacent generators commute, antipodal ones do not.
    for text in ["1 0", "0 1 0^-1 1^-1", "0 5 0^-1 5^-1", "3 1 2 1^-1"] {
        let word = RaagWord::parse(graph.clone(), text)?;
        let normal = word.normalize();
        println!(
            "word {:>14}  ->  normal form {} (length {}, exponent sum {})",
            format!("{text:?}"),
            normal.display(),
            normal.len(),
            word.exponent_sum()
        );
    }
    println!();

    // A kernel element and its expression over edge generators.
    let kernel = RaagWord::parse(graph.clone(), "0 5^-1 1 4^-1")?;
    println!("kernel element: {}", kernel.display());
    let letters = rewrite_in_edge_generators(&kernel)?;
    println!("over edge generators: {}", display_edge_word(&letters));
    let back = edge_word_to_raag(&graph, &letters)?;
    println!("round trip equals the original: {}", back.equals(&kernel)?);
    println!();

    // The semidirect product with a graph symmetry: multiplying (h, q) pairs
    // relabels the left word by the right automorphism.
    let rotate = Permutation::from_images(vec![0, 2, 3, 4, 1, 5])?;
    let left = SdElement::new(RaagWord::parse(graph.clone(), "1 0^-1")?, rotate.clone())?;
    let right = SdElement::new(RaagWord::parse(graph.clone(), "1 5^-1")?, rotate)?;
    let product = sd_multiply(&left, &right)?;
    println!("semidirect product:");
    println!("  {} * {} = {}", left.display(), right.display(), product.display());
    Ok(())
}
