//! Syllable normal forms in `Sym(3) * Sym(3)` amalgamated over the
//! rotation subgroup.
//!
//! Every element of an amalgamated free product has a unique normal form
//! `c * t1 * t2 * ...` with `c` in the amalgamated subgroup and each `ti` a
//! nontrivial coset representative from alternating sides. Pushing letters
//! one at a time keeps words normal; the syllable count is the length in
//! the Bass-Serre tree.

use std::sync::Arc;

use tdlc::amalgam::{normal_form, AmalgamPresentation, AmalgamWord, Side};
use tdlc::perm::{PermGroup, Permutation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rotation = Permutation::parse_cycles("(1 2 3)", 3)?;
    let presentation = Arc::new(AmalgamPresentation::new(
        PermGroup::symmetric(3),
        PermGroup::symmetric(3),
        PermGroup::new(3, vec![rotation.clone()])?,
        &[rotation.clone()],
        &[rotation.clone()],
    )?);
    println!("factors: Sym(3) and Sym(3), amalgamated over the rotation subgroup A3");
    println!();

    let flip = Permutation::parse_cycles("(1 2)", 3)?;
    let other_flip = Permutation::parse_cycles("(2 3)", 3)?;

    // Letters from the amalgamated subgroup collapse into the prefix.
    let central = normal_form(&presentation, &[(Side::A, rotation.clone())])?;
    println!("rotation alone: {} ({} syllables)", central.display(), central.syllable_length());

    // Alternating flips never collapse: the syllable count grows.
    let mut word = AmalgamWord::identity(presentation.clone());
    for step in 1..=4 {
        let side = if step % 2 == 1 { Side::A } else { Side::B };
        word.push_right(side, &flip)?;
        println!("after {} flips: {} ({} syllables)", step, word.display(), word.syllable_length());
    }
    println!();

    // Same-side letters merge: a flip then a rotation on one side is a
    // single syllable.
    let merged = normal_form(
        &presentation,
        &[(Side::A, flip.clone()), (Side::A, rotation.clone()), (Side::B, other_flip.clone())],
    )?;
    println!("flip * rotation * other-side flip: {}", merged.display());
    println!("syllables: {}", merged.syllable_length());

    // Normal forms are idempotent: renormalizing the letter expansion
    // reproduces the word.
    let again = normal_form(&presentation, &merged.to_letters()?)?;
    println!("renormalized: {}", again.display());

    // With a trivial amalgamated subgroup the construction is a free
    // product; in C2 * C3 the alternating word never shortens.
    let free = Arc::new(AmalgamPresentation::new(
        PermGroup::cyclic(2),
        PermGroup::cyclic(3),
        PermGroup::trivial(1),
        &[],
        &[],
    )?);
    let a = Permutation::parse_cycles("(1 2)", 2)?;
    let b = Permutation::parse_cycles("(1 2 3)", 3)?;
    let zigzag = normal_form(
        &free,
        &[(Side::A, a.clone()), (Side::B, b.clone()), (Side::A, a), (Side::B, b)],
    )?;
    println!();
    println!("C2 * C3 zigzag: {} ({} syllables)", zigzag.display(), zigzag.syllable_length());
    Ok(())
}
