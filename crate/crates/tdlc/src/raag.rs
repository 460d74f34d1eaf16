//! Right-angled Artin group words over a graph, with canonical normal forms,
//! the exponent-sum homomorphism, rewriting of its kernel in edge generators,
//! and semidirect products with graph automorphisms.
//!
//! The group attached to a graph has one generator per vertex, and two
//! generators commute exactly when their vertices are adjacent. A word is a
//! sequence of signed vertex letters; [`RaagWord::normalize`] computes the
//! shortlex-least representative under the vertex order, which solves the
//! word problem: two words are equal in the group iff their normal forms
//! coincide.
//!
//! The exponent-sum homomorphism sends every generator to `1`; its kernel is
//! generated by the edge letters `u v^{-1}` over adjacent pairs, and
//! [`rewrite_in_edge_generators`] expresses any kernel element in those
//! letters. [`SdElement`] pairs a word with a graph automorphism and
//! multiplies by the usual twisted rule, which is how stabilizer swap
//! witnesses turn edge letters into products of automorphism conjugates
//! ([`edge_generator_from_conjugates`]).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

/// A word in the right-angled Artin group of a graph: signed vertex letters
/// over a shared defining graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaagWord {
    graph: Arc<Graph>,
    letters: Vec<(u32, i8)>,
}

fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RaagWord {
    /// The empty word.
    pub fn identity(graph: Arc<Graph>) -> Self {
        RaagWord { graph, letters: Vec::new() }
    }

    /// Builds a word from `(vertex, exponent)` pairs; exponents of magnitude
    /// greater than one are expanded into repeated letters.
    pub fn new(graph: Arc<Graph>, letters: &[(u32, i32)]) -> Result<Self> {
        let n = graph.vertex_count();
        let mut expanded = Vec::new();
        for &(v, e) in letters {
            if v as usize >= n {
                return Err(Error::input(format!(
                    "letter {v} out of range for a graph on {n} vertices"
                )));
            }
            let sign: i8 = if e >= 0 { 1 } else { -1 };
            for _ in 0..e.unsigned_abs() {
                expanded.push((v, sign));
            }
        }
        Ok(RaagWord { graph, letters: expanded })
    }

    /// The single-letter word `v^exponent`.
    pub fn generator(graph: Arc<Graph>, v: u32, exponent: i32) -> Result<Self> {
        RaagWord::new(graph, &[(v, exponent)])
    }

    /// Parses whitespace-separated letters `v` or `v^k` with decimal
    /// 0-based vertices; `e` (or an empty string) is the identity.
    pub fn parse(graph: Arc<Graph>, text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "e" {
            return Ok(RaagWord::identity(graph));
        }
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in trimmed.split_whitespace() {
            // Track the byte offset of each token for error positions.
            offset = trimmed[offset..]
                .find(token)
                .map(|p| p + offset)
                .unwrap_or(offset);
            let (vertex_text, exponent) = match token.split_once('^') {
                None => (token, 1),
                Some((v, e)) => (
                    v,
                    e.parse::<i32>().map_err(|_| {
                        Error::parse(offset, format!("bad exponent in {token:?}"))
                    })?,
                ),
            };
            let vertex: u32 = vertex_text
                .parse()
                .map_err(|_| Error::parse(offset, format!("bad vertex in {token:?}")))?;
            if exponent == 0 {
                return Err(Error::parse(offset, format!("zero exponent in {token:?}")));
            }
            letters.push((vertex, exponent));
            offset += token.len();
        }
        RaagWord::new(graph, &letters)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn letters(&self) -> &[(u32, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation (the group product, unreduced).
    pub fn concat(&self, other: &RaagWord) -> Result<RaagWord> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(Error::input("words are defined over different graphs"));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(RaagWord { graph: self.graph.clone(), letters })
    }

    /// The group inverse: reversed letters with flipped exponents.
    pub fn inverse(&self) -> RaagWord {
        let letters = self.letters.iter().rev().map(|&(v, e)| (v, -e)).collect();
        RaagWord { graph: self.graph.clone(), letters }
    }

    /// Applies a graph automorphism to every letter (`v` becomes `q(v)`).
    pub fn relabeled(&self, q: &Permutation) -> Result<RaagWord> {
        if !self.graph.is_automorphism(q) {
            return Err(Error::input(
                "relabeling permutation is not an automorphism of the defining graph",
            ));
        }
        let letters = self.letters.iter().map(|&(v, e)| (q.apply(v), e)).collect();
        Ok(RaagWord { graph: self.graph.clone(), letters })
    }

    /// Sum of the exponents: the value of the homomorphism sending every
    /// generator to one.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e as i64).sum()
    }

    /// The canonical shortlex-least representative.
    ///
    /// One pass inserts each letter into an already-canonical prefix,
    /// sinking it left past commuting letters: passing a larger vertex
    /// improves the shortlex position, and meeting the inverse letter
    /// cancels both. A cancellation can unlock further moves among the
    /// surviving letters, so the pass is iterated to a fixpoint. Each pass
    /// either shortens the word or strictly decreases it lexicographically,
    /// so the iteration terminates.
    pub fn normalize(&self) -> RaagWord {
        let mut current = self.letters.clone();
        loop {
            let (next, changed) = piling_pass(&self.graph, &current);
            current = next;
            if !changed {
                return RaagWord { graph: self.graph.clone(), letters: current };
            }
        }
    }

    /// Word-problem equality: do the normal forms coincide?
    pub fn equals(&self, other: &RaagWord) -> Result<bool> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(Error::input("words are defined over different graphs"));
        }
        Ok(self.normalize().letters == other.normalize().letters)
    }

    /// Renders the word with 0-based vertices, merging runs into powers;
    /// the empty word renders as `e`.
    pub fn display(&self) -> String {
        if self.letters.is_empty() {
            return "e".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let (v, e) = self.letters[i];
            let mut run = 0;
            while i < self.letters.len() && self.letters[i] == (v, e) {
                run += 1;
                i += 1;
            }
            let power = run * e as i64;
            match power {
                1 => parts.push(format!("{v}")),
                p => parts.push(format!("{v}^{p}")),
            }
        }
        parts.join(" ")
    }
}

/// One insertion pass: returns the rebuilt word and whether anything moved
/// or cancelled.
fn piling_pass(graph: &Graph, letters: &[(u32, i8)]) -> (Vec<(u32, i8)>, bool) {
    let mut out: Vec<(u32, i8)> = Vec::with_capacity(letters.len());
    let mut changed = false;
    'letters: for &(v, e) in letters {
        let mut pos = out.len();
        let mut j = out.len();
        while j > 0 {
            let (u, f) = out[j - 1];
            if u == v {
                if f == -e {
                    out.remove(j - 1);
                    changed = true;
                    continue 'letters;
                }
                break;
            }
            if graph.has_edge(u, v) {
                if u > v {
                    pos = j - 1;
                }
                j -= 1;
            } else {
                break;
            }
        }
        if pos != out.len() {
            changed = true;
        }
        out.insert(pos, (v, e));
    }
    (out, changed)
}

// ---------------------------------------------------------------------------
// Edge-generator rewriting
// ---------------------------------------------------------------------------

/// A power of an edge generator: `(from to^{-1})^{exponent}` over a graph
/// edge `{from, to}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLetter {
    pub from: u32,
    pub to: u32,
    pub exponent: i64,
}

/// Renders an edge-letter word like `(0 2^-1)^3 (2 4^-1)^-1`.
pub fn display_edge_word(letters: &[EdgeLetter]) -> String {
    if letters.is_empty() {
        return "e".to_string();
    }
    letters
        .iter()
        .map(|l| {
            if l.exponent == 1 {
                format!("({} {}^-1)", l.from, l.to)
            } else {
                format!("({} {}^-1)^{}", l.from, l.to, l.exponent)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The lexicographically least shortest path between two vertices, found by
/// a breadth-first distance sweep from the target followed by a greedy
/// least-neighbor descent.
fn lex_least_path(graph: &Graph, from: u32, to: u32) -> Option<Vec<u32>> {
    let n = graph.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[to as usize] = 0;
    let mut queue = std::collections::VecDeque::from([to]);
    while let Some(v) = queue.pop_front() {
        for &w in graph.neighbors(v) {
            if dist[w as usize] == usize::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist[from as usize] == usize::MAX {
        return None;
    }
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        // Neighbor lists are sorted, so the first strict descent is least.
        let next = *graph
            .neighbors(cur)
            .iter()
            .find(|&&w| dist[w as usize] + 1 == dist[cur as usize])?;
        path.push(next);
        cur = next;
    }
    Some(path)
}

/// Rewrites a kernel element (exponent sum zero) of the group of a
/// connected graph as a word in edge generators.
///
/// The word is collected into maximal same-vertex syllables
/// `x_1^{b_1} ... x_n^{b_n}`; with partial sums `a_i = b_1 + ... + b_i`,
/// the product telescopes as `prod_i x_i^{a_i} x_{i+1}^{-a_i}`, and each
/// factor is expanded along the least shortest path from `x_i` to `x_{i+1}`
/// into powers of genuine edge letters.
pub fn rewrite_in_edge_generators(h: &RaagWord) -> Result<Vec<EdgeLetter>> {
    let graph = h.graph();
    if graph.vertex_count() > 0 && !graph.is_connected() {
        return Err(Error::input(
            "edge-generator rewriting needs a connected defining graph",
        ));
    }
    if h.exponent_sum() != 0 {
        return Err(Error::domain(format!(
            "exponent sum is {}, so the word lies outside the kernel",
            h.exponent_sum()
        )));
    }
    // Collapse into syllables, merging across interior cancellations.
    let mut syllables: Vec<(u32, i64)> = Vec::new();
    for &(v, e) in h.letters() {
        match syllables.last_mut() {
            Some((u, b)) if *u == v => {
                *b += e as i64;
                if *b == 0 {
                    syllables.pop();
                }
            }
            _ => syllables.push((v, e as i64)),
        }
    }
    let mut out = Vec::new();
    let mut partial = 0i64;
    for window in syllables.windows(2) {
        let (x, b) = window[0];
        let (y, _) = window[1];
        partial += b;
        if partial == 0 {
            continue;
        }
        let path = lex_least_path(graph, x, y)
            .ok_or_else(|| Error::input("defining graph is not connected"))?;
        for step in path.windows(2) {
            out.push(EdgeLetter { from: step[0], to: step[1], exponent: partial });
        }
    }
    Ok(out)
}

/// Expands an edge-letter word back into a plain word, validating that
/// every letter really is a graph edge.
pub fn edge_word_to_raag(graph: &Arc<Graph>, letters: &[EdgeLetter]) -> Result<RaagWord> {
    let mut word: Vec<(u32, i32)> = Vec::new();
    for l in letters {
        if !graph.has_edge(l.from, l.to) {
            return Err(Error::input(format!(
                "({}, {}) is not an edge of the defining graph",
                l.from, l.to
            )));
        }
        let exponent = i32::try_from(l.exponent)
            .map_err(|_| Error::input(format!("edge exponent {} too large", l.exponent)))?;
        // The endpoints commute, so (u v^-1)^a = u^a v^-a for either sign.
        word.push((l.from, exponent));
        word.push((l.to, -exponent));
    }
    RaagWord::new(graph.clone(), &word)
}

// ---------------------------------------------------------------------------
// Semidirect products with graph automorphisms
// ---------------------------------------------------------------------------

/// A pair (word, graph automorphism) multiplying by the twisted rule
/// `(h, q)(h', q') = (h * q.h', q q')`, where `q.h'` relabels the letters of
/// `h'` through `q` and automorphisms compose as functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdElement {
    h: RaagWord,
    q: Permutation,
}

impl SdElement {
    pub fn new(h: RaagWord, q: Permutation) -> Result<Self> {
        if !h.graph().is_automorphism(&q) {
            return Err(Error::input(
                "semidirect factor is not an automorphism of the defining graph",
            ));
        }
        Ok(SdElement { h, q })
    }

    pub fn identity(graph: Arc<Graph>) -> Self {
        let q = Permutation::identity(graph.vertex_count());
        SdElement { h: RaagWord::identity(graph), q }
    }

    pub fn word(&self) -> &RaagWord {
        &self.h
    }

    pub fn automorphism(&self) -> &Permutation {
        &self.q
    }

    /// Is this the identity up to normalize-equality of the word part?
    pub fn is_identity(&self) -> bool {
        self.q.is_identity() && self.h.normalize().is_empty()
    }

    pub fn display(&self) -> String {
        format!("({}, {})", self.h.display(), self.q.cycles_string())
    }
}

/// The twisted product. Word parts are concatenated, never normalized, so
/// identities about products are meaningful only up to [`sd_equal`].
pub fn sd_multiply(a: &SdElement, b: &SdElement) -> Result<SdElement> {
    if !same_graph(a.h.graph(), b.h.graph()) {
        return Err(Error::input("semidirect elements live over different graphs"));
    }
    let h = a.h.concat(&b.h.relabeled(&a.q)?)?;
    // Function composition `a.q` after `b.q`: apply b.q first.
    let q = b.q.then(&a.q);
    Ok(SdElement { h, q })
}

/// The inverse `(q^{-1}.h^{-1}, q^{-1})`.
pub fn sd_inverse(a: &SdElement) -> SdElement {
    let q_inv = a.q.inverse();
    let h = a
        .h
        .inverse()
        .relabeled(&q_inv)
        .expect("the inverse of a graph automorphism is a graph automorphism");
    SdElement { h, q: q_inv }
}

/// Equality in the semidirect product: equal automorphisms and
/// normalize-equal words.
pub fn sd_equal(a: &SdElement, b: &SdElement) -> Result<bool> {
    Ok(a.q == b.q && a.h.equals(&b.h)?)
}

/// Verifies `(h, 1)(1, p)(h, 1)^{-1} = (h * p.h^{-1}, p)` for every
/// automorphism in `autos`, comparing the product computed by [`sd_multiply`]
/// against the closed formula.
pub fn conjugation_formula_check(h: &RaagWord, autos: &[Permutation]) -> Result<bool> {
    let base = SdElement::new(h.clone(), Permutation::identity(h.graph().vertex_count()))?;
    for p in autos {
        let inner = SdElement::new(RaagWord::identity(h.graph().clone()), p.clone())?;
        let lhs = sd_multiply(&sd_multiply(&base, &inner)?, &sd_inverse(&base))?;
        let rhs = SdElement::new(h.concat(&h.inverse().relabeled(p)?)?, p.clone())?;
        if !sd_equal(&lhs, &rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Edge generators from stabilizer swaps
// ---------------------------------------------------------------------------

/// A verified two-step factorization of an edge letter through a stabilizer
/// swap witness.
#[derive(Clone, Debug)]
pub struct SwapTrace {
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub q: Permutation,
    /// The conjugate `(x z^-1, 1)(1, q)(x z^-1, 1)^{-1}`.
    pub conjugate: SdElement,
    /// The closing factor `(1, q^{-1})`.
    pub closer: SdElement,
    /// The verified product, equal to `(x y^-1, 1)`.
    pub product: SdElement,
    pub steps: Vec<String>,
}

/// Given a triangle `{x, y, z}` of the defining graph and an automorphism
/// `q` fixing `z` with `q(x) = y`, factors the edge letter `x y^{-1}` as a
/// product of two conjugates of automorphisms, verifying the key identity
/// `x z^{-1} * q.(z x^{-1}) = x y^{-1}` by normalization.
pub fn edge_generator_from_conjugates(
    graph: &Arc<Graph>,
    x: u32,
    y: u32,
    z: u32,
    q: &Permutation,
) -> Result<SwapTrace> {
    let n = graph.vertex_count();
    for v in [x, y, z] {
        if v as usize >= n {
            return Err(Error::input(format!("vertex {v} out of range")));
        }
    }
    if !graph.is_automorphism(q) {
        return Err(Error::input("swap witness is not a graph automorphism"));
    }
    if q.apply(z) != z {
        return Err(Error::domain(format!(
            "swap witness moves the apex: q({z}) = {}",
            q.apply(z)
        )));
    }
    if q.apply(x) != y {
        return Err(Error::domain(format!(
            "swap witness misses the edge: q({x}) = {} but {y} is required",
            q.apply(x)
        )));
    }
    if x == z || y == z || !graph.has_edge(x, z) || (x != y && !graph.has_edge(x, y)) {
        return Err(Error::input(format!(
            "{{{x}, {y}, {z}}} is not a triangle of the defining graph"
        )));
    }

    let xz = RaagWord::new(graph.clone(), &[(x, 1), (z, -1)])?;
    let target = RaagWord::new(graph.clone(), &[(x, 1), (y, -1)])?;
    // Key identity, checked directly before assembling the trace.
    let lhs = xz.concat(&xz.inverse().relabeled(q)?)?;
    if !lhs.equals(&target)? {
        return Err(Error::domain(format!(
            "swap identity fails: normalize({}) = {} but {} was expected",
            lhs.display(),
            lhs.normalize().display(),
            target.normalize().display()
        )));
    }

    let identity_q = Permutation::identity(n);
    let conjugator = SdElement::new(xz, identity_q.clone())?;
    let inner = SdElement::new(RaagWord::identity(graph.clone()), q.clone())?;
    let conjugate = sd_multiply(&sd_multiply(&conjugator, &inner)?, &sd_inverse(&conjugator))?;
    let closer = sd_inverse(&inner);
    let product = sd_multiply(&conjugate, &closer)?;
    let expected = SdElement::new(target.clone(), identity_q)?;
    if !sd_equal(&product, &expected)? {
        return Err(Error::domain(format!(
            "trace product {} is not ({}, 1)",
            product.display(),
            target.display()
        )));
    }
    let steps = vec![
        format!(
            "conjugate (1, q) by ({}, 1): ({}, {})",
            conjugate.word().display(),
            conjugate.word().normalize().display(),
            q.cycles_string()
        ),
        format!(
            "multiply by (1, q^-1): ({}, ()) with q^-1 = {}",
            product.word().normalize().display(),
            q.inverse().cycles_string()
        ),
    ];
    Ok(SwapTrace {
        x,
        y,
        z,
        q: q.clone(),
        conjugate,
        closer,
        product,
        steps,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn path_graph() -> Arc<Graph> {
        Arc::new(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap())
    }

    pub(crate) fn octahedron_graph() -> Arc<Graph> {
        Arc::new(crate::complex::tests::octahedron().skeleton())
    }

    fn octahedron_symmetries() -> Vec<Permutation> {
        let gens = vec![
            Permutation::from_images(vec![0, 2, 3, 4, 1, 5]).unwrap(),
            Permutation::from_images(vec![5, 1, 2, 3, 4, 0]).unwrap(),
            Permutation::from_images(vec![1, 0, 4, 5, 2, 3]).unwrap(),
        ];
        let group = crate::perm::PermGroup::new(6, gens).unwrap();
        group.elements().unwrap().to_vec()
    }

    fn word(graph: &Arc<Graph>, letters: &[(u32, i32)]) -> RaagWord {
        RaagWord::new(graph.clone(), letters).unwrap()
    }

    fn random_word(graph: &Arc<Graph>, rng: &mut ChaCha8Rng, max_len: usize) -> RaagWord {
        let n = graph.vertex_count() as u32;
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<(u32, i32)> = (0..len)
            .map(|_| (rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        word(graph, &letters)
    }

    /// A random kernel element: balanced positive and negative letters.
    fn random_kernel_word(graph: &Arc<Graph>, rng: &mut ChaCha8Rng, half: usize) -> RaagWord {
        let n = graph.vertex_count() as u32;
        let k = rng.gen_range(0..=half);
        let mut letters: Vec<(u32, i32)> = Vec::new();
        for _ in 0..k {
            letters.push((rng.gen_range(0..n), 1));
            letters.push((rng.gen_range(0..n), -1));
        }
        for i in (1..letters.len()).rev() {
            letters.swap(i, rng.gen_range(0..=i));
        }
        word(graph, &letters)
    }

    #[test]
    fn inverse_pairs_cancel() {
        let g = path_graph();
        assert!(word(&g, &[(0, 1), (0, -1)]).normalize().is_empty());
        assert!(word(&g, &[(0, 1), (1, 1), (1, -1), (0, -1)]).normalize().is_empty());
    }

    #[test]
    fn adjacent_conjugation_collapses() {
        // Over the path 0-1-2, conjugating 0 by 1 collapses because they
        // commute.
        let g = path_graph();
        let w = word(&g, &[(1, 1), (0, 1), (1, -1)]);
        assert_eq!(w.normalize().letters(), &[(0, 1)]);
    }

    #[test]
    fn non_adjacent_conjugation_is_stuck() {
        let g = path_graph();
        let w = word(&g, &[(2, 1), (0, 1), (2, -1)]);
        assert_eq!(w.normalize(), w);
    }

    #[test]
    fn commuting_letters_sort_to_shortlex_least() {
        // 2 0 1 over the path: letter 1 commutes with both, so it can lead.
        let g = path_graph();
        let w = word(&g, &[(2, 1), (0, 1), (1, 1)]);
        assert_eq!(w.normalize().letters(), &[(1, 1), (2, 1), (0, 1)]);
    }

    #[test]
    fn hidden_cancellation_through_commuting_blocker() {
        // 1^-1 0 1 with 0 ~ 1: the 0 slips aside and the pair cancels.
        let g = path_graph();
        let w = word(&g, &[(1, -1), (0, 1), (1, 1)]);
        assert_eq!(w.normalize().letters(), &[(0, 1)]);
    }

    #[test]
    fn exponent_sums() {
        let g = path_graph();
        assert_eq!(RaagWord::identity(g.clone()).exponent_sum(), 0);
        assert_eq!(word(&g, &[(0, 1), (1, -1)]).exponent_sum(), 0);
        assert_eq!(word(&g, &[(0, 2), (2, -1)]).exponent_sum(), 1);
        // Homomorphism and normalization invariance on random words.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let oct = octahedron_graph();
        for _ in 0..50 {
            let u = random_word(&oct, &mut rng, 8);
            let v = random_word(&oct, &mut rng, 8);
            let uv = u.concat(&v).unwrap();
            assert_eq!(uv.exponent_sum(), u.exponent_sum() + v.exponent_sum());
            assert_eq!(u.normalize().exponent_sum(), u.exponent_sum());
        }
    }

    #[test]
    fn normalize_is_idempotent_and_length_nonincreasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let oct = octahedron_graph();
        for _ in 0..200 {
            let w = random_word(&oct, &mut rng, 10);
            let nf = w.normalize();
            assert!(nf.len() <= w.len());
            assert_eq!(nf.normalize(), nf);
        }
    }

    /// Brute-force reachability: all words obtainable by swapping adjacent
    /// commuting letters or cancelling adjacent inverse pairs.
    fn reachable_class(graph: &Graph, start: &[(u32, i8)]) -> Vec<Vec<(u32, i8)>> {
        let mut seen = std::collections::HashSet::new();
        let mut queue = std::collections::VecDeque::new();
        seen.insert(start.to_vec());
        queue.push_back(start.to_vec());
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(1) {
                let (u, e) = w[i];
                let (v, f) = w[i + 1];
                if u == v && e == -f {
                    let mut next = w.clone();
                    next.drain(i..i + 2);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                } else if u != v && graph.has_edge(u, v) {
                    let mut next = w.clone();
                    next.swap(i, i + 1);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    fn shortlex_min(words: &[Vec<(u32, i8)>]) -> Vec<(u32, i8)> {
        words
            .iter()
            .min_by(|a, b| {
                a.len()
                    .cmp(&b.len())
                    .then_with(|| {
                        let key = |w: &[(u32, i8)]| {
                            w.iter().map(|&(v, e)| (v, -e)).collect::<Vec<_>>()
                        };
                        key(a).cmp(&key(b))
                    })
            })
            .unwrap()
            .clone()
    }

    #[test]
    fn normal_form_matches_reachability_oracle_on_three_vertices() {
        // Every labeled graph on three vertices, every word of length at
        // most five: the normal form must be constant on each reachability
        // class and equal to its shortlex-least member.
        let all_edges = [(0u32, 1u32), (0, 2), (1, 2)];
        for mask in 0..8u32 {
            let edges: Vec<(u32, u32)> = all_edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let graph = Arc::new(Graph::from_edges(3, &edges).unwrap());
            let letters: Vec<(u32, i8)> =
                (0..3).flat_map(|v| [(v, 1i8), (v, -1i8)]).collect();
            let mut checked: std::collections::HashSet<Vec<(u32, i8)>> =
                std::collections::HashSet::new();
            let mut stack: Vec<Vec<(u32, i8)>> = vec![Vec::new()];
            for _ in 0..5 {
                let mut next_level = Vec::new();
                for w in &stack {
                    for &l in &letters {
                        let mut longer = w.clone();
                        longer.push(l);
                        next_level.push(longer);
                    }
                }
                for w in &next_level {
                    if checked.contains(w) {
                        continue;
                    }
                    let class = reachable_class(&graph, w);
                    let least = shortlex_min(&class);
                    for member in &class {
                        let nf = RaagWord {
                            graph: graph.clone(),
                            letters: member.clone(),
                        }
                        .normalize();
                        assert_eq!(
                            nf.letters(),
                            &least[..],
                            "graph mask {mask:#b}, word {member:?}"
                        );
                        checked.insert(member.clone());
                    }
                }
                stack = next_level;
            }
        }
    }

    #[test]
    fn rewrite_direct_edge() {
        let triangle = Arc::new(Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap());
        let h = word(&triangle, &[(0, 1), (2, -1)]);
        let rewritten = rewrite_in_edge_generators(&h).unwrap();
        assert_eq!(rewritten, vec![EdgeLetter { from: 0, to: 2, exponent: 1 }]);
    }

    #[test]
    fn rewrite_telescopes_along_a_path() {
        let g = path_graph();
        let h = word(&g, &[(0, 1), (2, -1)]);
        let rewritten = rewrite_in_edge_generators(&h).unwrap();
        assert_eq!(
            rewritten,
            vec![
                EdgeLetter { from: 0, to: 1, exponent: 1 },
                EdgeLetter { from: 1, to: 2, exponent: 1 },
            ]
        );
        let expanded = edge_word_to_raag(&g, &rewritten).unwrap();
        assert!(expanded.equals(&h).unwrap());
        assert_eq!(display_edge_word(&rewritten), "(0 1^-1) (1 2^-1)");
    }

    #[test]
    fn rewrite_requires_kernel_membership_and_connectivity() {
        let g = path_graph();
        let outside = word(&g, &[(0, 1)]);
        assert!(matches!(
            rewrite_in_edge_generators(&outside),
            Err(Error::Domain(_))
        ));
        let split = Arc::new(Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap());
        let h = word(&split, &[(0, 1), (2, -1)]);
        assert!(matches!(rewrite_in_edge_generators(&h), Err(Error::Input(_))));
    }

    #[test]
    fn rewrite_round_trips_on_random_kernel_words() {
        let oct = octahedron_graph();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let h = random_kernel_word(&oct, &mut rng, 4);
            let rewritten = rewrite_in_edge_generators(&h).unwrap();
            for l in &rewritten {
                assert!(oct.has_edge(l.from, l.to), "output must use edge letters");
            }
            let expanded = edge_word_to_raag(&oct, &rewritten).unwrap();
            assert!(expanded.equals(&h).unwrap(), "failed on {}", h.display());
        }
    }

    #[test]
    fn semidirect_group_laws() {
        let oct = octahedron_graph();
        let autos = octahedron_symmetries();
        assert_eq!(autos.len(), 48);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let random_element = |rng: &mut ChaCha8Rng| {
            let h = random_word(&oct, rng, 6);
            let q = autos[rng.gen_range(0..autos.len())].clone();
            SdElement::new(h, q).unwrap()
        };
        let e = SdElement::identity(oct.clone());
        for _ in 0..100 {
            let a = random_element(&mut rng);
            let b = random_element(&mut rng);
            let c = random_element(&mut rng);
            // Identity, inverse, associativity, all up to normalize-equality.
            assert!(sd_equal(&sd_multiply(&e, &a).unwrap(), &a).unwrap());
            assert!(sd_equal(&sd_multiply(&a, &e).unwrap(), &a).unwrap());
            assert!(sd_multiply(&a, &sd_inverse(&a)).unwrap().is_identity());
            let left = sd_multiply(&sd_multiply(&a, &b).unwrap(), &c).unwrap();
            let right = sd_multiply(&a, &sd_multiply(&b, &c).unwrap()).unwrap();
            assert!(sd_equal(&left, &right).unwrap());
        }
    }

    #[test]
    fn conjugation_formula_holds() {
        let oct = octahedron_graph();
        let autos = octahedron_symmetries();
        // Empty word: conjugation is trivial.
        assert!(conjugation_formula_check(&RaagWord::identity(oct.clone()), &autos).unwrap());
        // A generator fixed by an antipodal swap of non-adjacent vertices.
        let swap = Permutation::from_images(vec![0, 3, 2, 1, 4, 5]).unwrap();
        let x = word(&oct, &[(0, 1)]);
        assert!(conjugation_formula_check(&x, &[swap]).unwrap());
        // Random words against the whole symmetry group.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let h = random_word(&oct, &mut rng, 6);
            let p = autos[rng.gen_range(0..autos.len())].clone();
            assert!(conjugation_formula_check(&h, &[p]).unwrap());
        }
    }

    #[test]
    fn swap_traces_cover_all_directed_octahedron_edges() {
        let complex = crate::complex::tests::octahedron();
        let graph = octahedron_graph();
        let gens = vec![
            Permutation::from_images(vec![0, 2, 3, 4, 1, 5]).unwrap(),
            Permutation::from_images(vec![5, 1, 2, 3, 4, 0]).unwrap(),
            Permutation::from_images(vec![1, 0, 4, 5, 2, 3]).unwrap(),
        ];
        let action = crate::complex::VertexAction::new(6, gens).unwrap();
        let mut directed = 0;
        for &(u, v) in complex.edges() {
            for (x, y) in [(u, v), (v, u)] {
                let (z, q) = crate::certify::edge_swap_witness(&complex, &action, x, y)
                    .expect("octahedron swaps everywhere");
                let trace = edge_generator_from_conjugates(&graph, x, y, z, &q).unwrap();
                let target = SdElement::new(
                    word(&graph, &[(x, 1), (y, -1)]),
                    Permutation::identity(6),
                )
                .unwrap();
                assert!(sd_equal(&trace.product, &target).unwrap());
                assert_eq!(trace.steps.len(), 2);
                directed += 1;
            }
        }
        assert_eq!(directed, 24);
    }

    #[test]
    fn degenerate_swap_trace_is_trivial() {
        let g = path_graph();
        let trace =
            edge_generator_from_conjugates(&g, 0, 0, 1, &Permutation::identity(3)).unwrap();
        assert!(trace.product.is_identity());
    }

    #[test]
    fn invalid_witnesses_are_rejected() {
        let g = octahedron_graph();
        // Rotation moving the claimed apex.
        let rotate = Permutation::from_images(vec![0, 2, 3, 4, 1, 5]).unwrap();
        let err = edge_generator_from_conjugates(&g, 1, 2, 3, &rotate).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        // Witness sending x somewhere other than y.
        let err = edge_generator_from_conjugates(&g, 1, 3, 0, &rotate).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        // Non-automorphism.
        let err = edge_generator_from_conjugates(&g, 1, 2, 0, &Permutation::identity(5))
            .unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let g = path_graph();
        let w = RaagWord::parse(g.clone(), "0 1^-2 2^3").unwrap();
        assert_eq!(
            w.letters(),
            &[(0, 1), (1, -1), (1, -1), (2, 1), (2, 1), (2, 1)]
        );
        assert_eq!(w.display(), "0 1^-2 2^3");
        assert_eq!(RaagWord::parse(g.clone(), "e").unwrap().display(), "e");
        assert!(RaagWord::parse(g.clone(), "0^0").is_err());
        assert!(RaagWord::parse(g.clone(), "7").is_err());
        assert!(RaagWord::parse(g.clone(), "0^x").is_err());
        let reparsed = RaagWord::parse(g.clone(), &w.display()).unwrap();
        assert_eq!(reparsed, w);
    }

    #[test]
    fn words_over_different_graphs_do_not_mix() {
        let a = path_graph();
        let b = Arc::new(Graph::from_edges(3, &[(0, 1)]).unwrap());
        let u = word(&a, &[(0, 1)]);
        let v = word(&b, &[(0, 1)]);
        assert!(u.concat(&v).is_err());
        assert!(u.equals(&v).is_err());
        // Equal content behind different allocations is fine.
        let a2 = Arc::new(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        let w = word(&a2, &[(0, 1)]);
        assert!(u.equals(&w).unwrap());
    }
}
