//! Normal forms in amalgamated free products of finite permutation groups.
//!
//! An [`AmalgamPresentation`] holds two finite groups joined over a common
//! subgroup via explicit embeddings, together with a right transversal of
//! the subgroup in each factor. Every element of the product factors
//! uniquely as a subgroup element followed by alternating non-subgroup
//! transversal representatives; [`normal_form`] computes that factorization
//! by absorbing subgroup letters leftward into the prefix, and
//! [`AmalgamWord::syllable_length`] counts the alternating part, which does
//! not depend on the choice of transversals.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{coset_space, CosetSpace, PermGroup, Permutation};

/// Which free factor a letter belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// An embedding of the amalgamated subgroup into one factor, stored as the
/// full element map in both directions.
#[derive(Clone, Debug)]
struct Embedding {
    forward: HashMap<Permutation, Permutation>,
    reverse: HashMap<Permutation, Permutation>,
}

/// Extends generator images to the whole subgroup by a tracked closure,
/// verifying on every Cayley edge that the extension is well defined, which
/// makes it a homomorphism; injectivity is checked on the final map.
fn build_embedding(
    c: &PermGroup,
    target: &PermGroup,
    images: &[Permutation],
) -> Result<Embedding> {
    if images.len() != c.generators().len() {
        return Err(Error::input(format!(
            "embedding needs one image per generator: got {} images for {} generators",
            images.len(),
            c.generators().len()
        )));
    }
    for image in images {
        if !target.contains(image) {
            return Err(Error::input(format!(
                "embedding image {} lies outside the target factor",
                image.cycles_string()
            )));
        }
    }
    let mut forward = HashMap::new();
    forward.insert(
        Permutation::identity(c.degree()),
        Permutation::identity(target.degree()),
    );
    let mut queue = vec![Permutation::identity(c.degree())];
    while let Some(x) = queue.pop() {
        let fx = forward[&x].clone();
        for (g, image) in c.generators().iter().zip(images) {
            let y = x.then(g);
            let fy = fx.then(image);
            match forward.get(&y) {
                Some(existing) => {
                    if *existing != fy {
                        return Err(Error::input(
                            "generator images do not define a homomorphism",
                        ));
                    }
                }
                None => {
                    forward.insert(y.clone(), fy);
                    queue.push(y);
                }
            }
        }
    }
    let mut reverse = HashMap::with_capacity(forward.len());
    for (x, fx) in &forward {
        if reverse.insert(fx.clone(), x.clone()).is_some() {
            return Err(Error::input("embedding is not injective"));
        }
    }
    Ok(Embedding { forward, reverse })
}

/// Two finite groups amalgamated over a common subgroup, with fixed right
/// transversals (identity-first, lexicographically least by default).
#[derive(Debug)]
pub struct AmalgamPresentation {
    a: PermGroup,
    b: PermGroup,
    c: PermGroup,
    embed_a: Embedding,
    embed_b: Embedding,
    cosets_a: CosetSpace,
    cosets_b: CosetSpace,
    transversal_a: Vec<Permutation>,
    transversal_b: Vec<Permutation>,
}

impl AmalgamPresentation {
    /// Builds the presentation from generator images of the amalgamated
    /// subgroup in each factor, with the default identity-first transversals.
    pub fn new(
        a: PermGroup,
        b: PermGroup,
        c: PermGroup,
        images_in_a: &[Permutation],
        images_in_b: &[Permutation],
    ) -> Result<Self> {
        let embed_a = build_embedding(&c, &a, images_in_a)?;
        let embed_b = build_embedding(&c, &b, images_in_b)?;
        let image_group_a = PermGroup::new(a.degree(), images_in_a.to_vec())?;
        let image_group_b = PermGroup::new(b.degree(), images_in_b.to_vec())?;
        let cosets_a = coset_space(&a, &image_group_a)?;
        let cosets_b = coset_space(&b, &image_group_b)?;
        let transversal_a = (0..cosets_a.len())
            .map(|i| cosets_a.representative(i).clone())
            .collect();
        let transversal_b = (0..cosets_b.len())
            .map(|i| cosets_b.representative(i).clone())
            .collect();
        Ok(AmalgamPresentation {
            a,
            b,
            c,
            embed_a,
            embed_b,
            cosets_a,
            cosets_b,
            transversal_a,
            transversal_b,
        })
    }

    pub fn factor(&self, side: Side) -> &PermGroup {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    pub fn amalgamated_subgroup(&self) -> &PermGroup {
        &self.c
    }

    /// The right transversal in use for one side, aligned with coset
    /// indices; index 0 is the coset of the subgroup itself.
    pub fn transversal(&self, side: Side) -> &[Permutation] {
        match side {
            Side::A => &self.transversal_a,
            Side::B => &self.transversal_b,
        }
    }

    fn cosets(&self, side: Side) -> &CosetSpace {
        match side {
            Side::A => &self.cosets_a,
            Side::B => &self.cosets_b,
        }
    }

    fn embedding(&self, side: Side) -> &Embedding {
        match side {
            Side::A => &self.embed_a,
            Side::B => &self.embed_b,
        }
    }

    /// The image of a subgroup element in one factor.
    pub fn embed(&self, side: Side, c_element: &Permutation) -> Result<Permutation> {
        self.embedding(side)
            .forward
            .get(c_element)
            .cloned()
            .ok_or_else(|| {
                Error::input(format!(
                    "{} is not an element of the amalgamated subgroup",
                    c_element.cycles_string()
                ))
            })
    }

    /// Replaces both transversals; each entry must represent its own coset.
    pub fn set_transversals(
        &mut self,
        transversal_a: Vec<Permutation>,
        transversal_b: Vec<Permutation>,
    ) -> Result<()> {
        for (side, transversal) in [(Side::A, &transversal_a), (Side::B, &transversal_b)] {
            let cosets = self.cosets(side);
            if transversal.len() != cosets.len() {
                return Err(Error::input(format!(
                    "transversal has {} entries but there are {} cosets",
                    transversal.len(),
                    cosets.len()
                )));
            }
            for (i, t) in transversal.iter().enumerate() {
                if cosets.coset_of(t) != Some(i) {
                    return Err(Error::input(format!(
                        "transversal entry {} does not represent coset {i}",
                        t.cycles_string()
                    )));
                }
            }
        }
        self.transversal_a = transversal_a;
        self.transversal_b = transversal_b;
        Ok(())
    }

    /// Factors a group element of one side as subgroup-part times
    /// transversal representative, returning the subgroup part in subgroup
    /// coordinates along with the coset index.
    fn factorize(&self, side: Side, x: &Permutation) -> Result<(Permutation, usize)> {
        let index = self.cosets(side).coset_of(x).ok_or_else(|| {
            Error::input(format!(
                "letter {} lies outside its tagged factor",
                x.cycles_string()
            ))
        })?;
        let t = &self.transversal(side)[index];
        let c_image = x.then(&t.inverse());
        let c_element = self
            .embedding(side)
            .reverse
            .get(&c_image)
            .expect("an element of a coset differs from its representative by the subgroup")
            .clone();
        Ok((c_element, index))
    }
}

/// A normal-form word: a subgroup prefix followed by alternating
/// non-subgroup transversal representatives (stored as coset indices).
#[derive(Clone, Debug)]
pub struct AmalgamWord {
    presentation: Arc<AmalgamPresentation>,
    prefix: Permutation,
    syllables: Vec<(Side, u32)>,
}

impl PartialEq for AmalgamWord {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.presentation, &other.presentation)
            && self.prefix == other.prefix
            && self.syllables == other.syllables
    }
}

impl Eq for AmalgamWord {}

impl AmalgamWord {
    pub fn identity(presentation: Arc<AmalgamPresentation>) -> Self {
        let prefix = Permutation::identity(presentation.c.degree());
        AmalgamWord { presentation, prefix, syllables: Vec::new() }
    }

    /// The subgroup prefix, in subgroup coordinates.
    pub fn prefix(&self) -> &Permutation {
        &self.prefix
    }

    pub fn syllables(&self) -> &[(Side, u32)] {
        &self.syllables
    }

    /// Number of alternating non-subgroup syllables.
    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }

    /// The syllables as group elements of their sides, with the prefix
    /// emitted first through the A-side embedding.
    pub fn to_letters(&self) -> Result<Vec<(Side, Permutation)>> {
        let mut letters = Vec::new();
        if !self.prefix.is_identity() {
            letters.push((Side::A, self.presentation.embed(Side::A, &self.prefix)?));
        }
        for &(side, index) in &self.syllables {
            letters.push((side, self.presentation.transversal(side)[index as usize].clone()));
        }
        Ok(letters)
    }

    /// Multiplies a letter onto the right, restoring the normal form.
    ///
    /// A same-side letter first merges with the last syllable. The result
    /// is factored against the subgroup: a non-subgroup part becomes the
    /// new last syllable, while the subgroup part is carried leftward
    /// through the remaining syllables (re-factoring each, which never
    /// creates or destroys a syllable) until it is absorbed by the prefix.
    pub fn push_right(&mut self, side: Side, letter: &Permutation) -> Result<()> {
        if !self.presentation.factor(side).contains(letter) {
            return Err(Error::input(format!(
                "letter {} lies outside its tagged factor",
                letter.cycles_string()
            )));
        }
        let mut x = letter.clone();
        if let Some(&(last_side, index)) = self.syllables.last() {
            if last_side == side {
                let t = &self.presentation.transversal(side)[index as usize];
                x = t.then(&x);
                self.syllables.pop();
            }
        }
        let (c_part, index) = self.presentation.factorize(side, &x)?;
        let mut fixed_tail = 0;
        if index != 0 {
            self.syllables.push((side, index as u32));
            fixed_tail = 1;
        }
        let mut carry = c_part;
        for i in (0..self.syllables.len() - fixed_tail).rev() {
            if carry.is_identity() {
                break;
            }
            let (side_i, index_i) = self.syllables[i];
            let t = &self.presentation.transversal(side_i)[index_i as usize];
            let merged = t.then(&self.presentation.embed(side_i, &carry)?);
            let (next_carry, next_index) = self.presentation.factorize(side_i, &merged)?;
            debug_assert_ne!(next_index, 0, "a coset representative stays outside the subgroup");
            self.syllables[i] = (side_i, next_index as u32);
            carry = next_carry;
        }
        self.prefix = self.prefix.then(&carry);
        Ok(())
    }

    pub fn display(&self) -> String {
        let syllables: Vec<String> = self
            .syllables
            .iter()
            .map(|&(side, index)| {
                let t = &self.presentation.transversal(side)[index as usize];
                format!(
                    "{}:{}",
                    match side {
                        Side::A => "a",
                        Side::B => "b",
                    },
                    t.cycles_string()
                )
            })
            .collect();
        format!("[{} | {}]", self.prefix.cycles_string(), syllables.join(" "))
    }
}

/// Normal form of a raw alternating word, built by pushing letters one at a
/// time onto the identity.
pub fn normal_form(
    presentation: &Arc<AmalgamPresentation>,
    letters: &[(Side, Permutation)],
) -> Result<AmalgamWord> {
    let mut word = AmalgamWord::identity(presentation.clone());
    for (side, letter) in letters {
        word.push_right(*side, letter)?;
    }
    Ok(word)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Sym(3) amalgamated with itself over its rotation subgroup, both
    /// embeddings the identity.
    pub(crate) fn sym3_over_alt3() -> Arc<AmalgamPresentation> {
        let a = PermGroup::symmetric(3);
        let b = PermGroup::symmetric(3);
        let rot = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        let c = PermGroup::new(3, vec![rot.clone()]).unwrap();
        Arc::new(AmalgamPresentation::new(a, b, c, &[rot.clone()], &[rot]).unwrap())
    }

    /// Free product: the amalgamated subgroup is trivial.
    fn free_product(a: PermGroup, b: PermGroup) -> Arc<AmalgamPresentation> {
        let c = PermGroup::trivial(1);
        Arc::new(AmalgamPresentation::new(a, b, c, &[], &[]).unwrap())
    }

    fn random_letters(
        p: &Arc<AmalgamPresentation>,
        rng: &mut ChaCha8Rng,
        max_len: usize,
    ) -> Vec<(Side, Permutation)> {
        let elements_a = p.factor(Side::A).elements().unwrap().to_vec();
        let elements_b = p.factor(Side::B).elements().unwrap().to_vec();
        let len = rng.gen_range(0..=max_len);
        (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    (Side::A, elements_a[rng.gen_range(0..elements_a.len())].clone())
                } else {
                    (Side::B, elements_b[rng.gen_range(0..elements_b.len())].clone())
                }
            })
            .collect()
    }

    #[test]
    fn subgroup_letters_collapse_into_the_prefix() {
        let p = sym3_over_alt3();
        let r = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        let letters = vec![(Side::A, r.clone()), (Side::B, r.clone())];
        let nf = normal_form(&p, &letters).unwrap();
        assert_eq!(nf.syllable_length(), 0);
        assert_eq!(*nf.prefix(), r.then(&r));
    }

    #[test]
    fn free_product_of_involutions_is_irreducible() {
        let p = free_product(PermGroup::cyclic(2), PermGroup::cyclic(2));
        let flip = Permutation::parse_cycles("(1 2)", 2).unwrap();
        let letters = vec![
            (Side::A, flip.clone()),
            (Side::B, flip.clone()),
            (Side::A, flip.clone()),
            (Side::B, flip.clone()),
        ];
        let nf = normal_form(&p, &letters).unwrap();
        assert_eq!(nf.syllable_length(), 4);
        assert!(nf.prefix().is_identity());
        // Renormalizing its own letters changes nothing.
        let again = normal_form(&p, &nf.to_letters().unwrap()).unwrap();
        assert_eq!(again, nf);
    }

    #[test]
    fn normal_form_is_idempotent_and_congruent() {
        let p = sym3_over_alt3();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let u = random_letters(&p, &mut rng, 6);
            let v = random_letters(&p, &mut rng, 6);
            let nf_u = normal_form(&p, &u).unwrap();
            let nf_v = normal_form(&p, &v).unwrap();
            // Idempotence.
            assert_eq!(normal_form(&p, &nf_u.to_letters().unwrap()).unwrap(), nf_u);
            // The product's normal form only depends on the factors' forms.
            let mut uv = u.clone();
            uv.extend(v.iter().cloned());
            let direct = normal_form(&p, &uv).unwrap();
            let mut via_forms = nf_u.to_letters().unwrap();
            via_forms.extend(nf_v.to_letters().unwrap());
            assert_eq!(normal_form(&p, &via_forms).unwrap(), direct);
            // Subadditivity of syllable length.
            assert!(
                direct.syllable_length() <= nf_u.syllable_length() + nf_v.syllable_length()
            );
        }
    }

    #[test]
    fn relator_insertions_do_not_change_the_normal_form() {
        let p = sym3_over_alt3();
        let c_elements = p.amalgamated_subgroup().elements().unwrap().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let base = random_letters(&p, &mut rng, 6);
            let reference = normal_form(&p, &base).unwrap();
            let c = c_elements[rng.gen_range(0..c_elements.len())].clone();
            let position = rng.gen_range(0..=base.len());
            // Either a same-side trivial pair or a cross-side amalgamation
            // relator: both represent the identity of the product.
            let pair = match rng.gen_range(0..3) {
                0 => {
                    let img = p.embed(Side::A, &c).unwrap();
                    vec![(Side::A, img.clone()), (Side::A, img.inverse())]
                }
                1 => {
                    let img = p.embed(Side::B, &c).unwrap();
                    vec![(Side::B, img.clone()), (Side::B, img.inverse())]
                }
                _ => vec![
                    (Side::A, p.embed(Side::A, &c).unwrap()),
                    (Side::B, p.embed(Side::B, &c).unwrap().inverse()),
                ],
            };
            let mut inserted = base.clone();
            inserted.splice(position..position, pair);
            assert_eq!(normal_form(&p, &inserted).unwrap(), reference);
        }
    }

    #[test]
    fn syllable_length_does_not_depend_on_the_transversal() {
        let default = sym3_over_alt3();
        // A second presentation with random coset representatives.
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut shuffled = AmalgamPresentation::new(
            PermGroup::symmetric(3),
            PermGroup::symmetric(3),
            PermGroup::new(3, vec![Permutation::parse_cycles("(1 2 3)", 3).unwrap()])
                .unwrap(),
            &[Permutation::parse_cycles("(1 2 3)", 3).unwrap()],
            &[Permutation::parse_cycles("(1 2 3)", 3).unwrap()],
        )
        .unwrap();
        let c_images: Vec<Permutation> = shuffled
            .amalgamated_subgroup()
            .elements()
            .unwrap()
            .to_vec();
        let random_transversal = |side: Side,
                                  p: &AmalgamPresentation,
                                  rng: &mut ChaCha8Rng| {
            (0..p.transversal(side).len())
                .map(|i| {
                    let rep = p.transversal(side)[i].clone();
                    let c = p
                        .embed(side, &c_images[rng.gen_range(0..c_images.len())])
                        .unwrap();
                    c.then(&rep)
                })
                .collect::<Vec<_>>()
        };
        let ta = random_transversal(Side::A, &shuffled, &mut rng);
        let tb = random_transversal(Side::B, &shuffled, &mut rng);
        shuffled.set_transversals(ta, tb).unwrap();
        let shuffled = Arc::new(shuffled);

        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let letters = random_letters(&default, &mut rng, 8);
            let left = normal_form(&default, &letters).unwrap();
            let right = normal_form(&shuffled, &letters).unwrap();
            assert_eq!(left.syllable_length(), right.syllable_length());
        }
    }

    /// Independent free-product reduction: merge adjacent same-side letters,
    /// dropping identities.
    fn free_reduce(letters: &[(Side, Permutation)]) -> Vec<(Side, Permutation)> {
        let mut stack: Vec<(Side, Permutation)> = Vec::new();
        for (side, g) in letters {
            if g.is_identity() {
                continue;
            }
            match stack.last() {
                Some((top_side, top)) if top_side == side => {
                    let merged = top.then(g);
                    stack.pop();
                    if !merged.is_identity() {
                        stack.push((*side, merged));
                    }
                }
                _ => stack.push((*side, g.clone())),
            }
        }
        stack
    }

    #[test]
    fn trivial_amalgam_matches_free_product_reduction() {
        let p = free_product(PermGroup::cyclic(2), PermGroup::cyclic(3));
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..200 {
            let letters = random_letters(&p, &mut rng, 8);
            let nf = normal_form(&p, &letters).unwrap();
            let oracle = free_reduce(&letters);
            assert!(nf.prefix().is_identity());
            assert_eq!(nf.to_letters().unwrap(), oracle);
        }
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let p = sym3_over_alt3();
        // A letter outside its tagged factor.
        let too_big = Permutation::identity(4);
        assert!(normal_form(&p, &[(Side::A, too_big)]).is_err());
        // Generator images that are not a homomorphism: an order-3 generator
        // cannot map to a transposition.
        let c = PermGroup::new(3, vec![Permutation::parse_cycles("(1 2 3)", 3).unwrap()])
            .unwrap();
        let bad = AmalgamPresentation::new(
            PermGroup::symmetric(3),
            PermGroup::symmetric(3),
            c.clone(),
            &[Permutation::parse_cycles("(1 2)", 3).unwrap()],
            &[Permutation::parse_cycles("(1 2 3)", 3).unwrap()],
        );
        assert!(bad.is_err());
        // A collapsing (non-injective) embedding.
        let collapsing = AmalgamPresentation::new(
            PermGroup::symmetric(3),
            PermGroup::symmetric(3),
            c,
            &[Permutation::identity(3)],
            &[Permutation::parse_cycles("(1 2 3)", 3).unwrap()],
        );
        assert!(collapsing.is_err());
        // A transversal entry in the wrong coset.
        let mut p2 = AmalgamPresentation::new(
            PermGroup::symmetric(3),
            PermGroup::symmetric(3),
            PermGroup::new(3, vec![Permutation::parse_cycles("(1 2 3)", 3).unwrap()])
                .unwrap(),
            &[Permutation::parse_cycles("(1 2 3)", 3).unwrap()],
            &[Permutation::parse_cycles("(1 2 3)", 3).unwrap()],
        )
        .unwrap();
        let ta = p2.transversal(Side::A).to_vec();
        let mut tb = p2.transversal(Side::B).to_vec();
        tb.swap(0, 1);
        assert!(p2.set_transversals(ta, tb).is_err());
    }
}
