//! Permutations and finite permutation groups.
//!
//! Conventions used throughout the crate:
//!
//! * Points are `0`-based internally; cycle notation in text is `1`-based.
//! * Actions are right actions: in a product `a · b` the permutation `a`
//!   applies first, so `"(1 2)(2 3)"` parses to the permutation `"(1 3 2)"`.
//! * Canonical representatives (of cosets, of orbit sets, of subgroup
//!   conjugacy classes) are lexicographically least under the image-sequence
//!   order, which makes every derived listing deterministic.
//!
//! Group orders and membership come from a deterministic Schreier-style
//! stabilizer chain; explicit element enumeration is also available (and used
//! as an oracle in the test suite) for the group sizes this crate targets,
//! roughly `|G| <= 10^4`.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Hard cap on explicit element enumeration. Groups past this size are out of
/// scope for the enumerative operations (coset spaces, cores, subgroup
/// search); stabilizer-chain operations still work.
const MAX_ENUMERATION: usize = 1_000_000;

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

/// A permutation of `{0, .., degree-1}`, stored as its image sequence.
///
/// Equality, hashing and ordering all follow the image sequence; the derived
/// `Ord` is exactly the lexicographic order used for canonical
/// representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from an explicit image sequence, validating that
    /// it is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::input(format!(
                    "image sequence {images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Product `self · other` under the right-action convention: `self`
    /// applies first.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    /// Smallest point moved by the permutation, if any.
    pub fn min_moved_point(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|&(i, &img)| i as u32 != img).map(|(i, _)| i as u32)
    }

    /// Order of the permutation as a group element (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut order: u64 = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                p = self.images[p as usize];
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Parses `1`-based cycle notation. Cycles compose left to right, points
    /// within a cycle map left to right, and `()` denotes the identity.
    /// Separators inside a cycle may be spaces or commas.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut result = Permutation::identity(degree);
        let mut pos = 0usize;
        let mut saw_cycle = false;
        while pos < bytes.len() {
            let b = bytes[pos];
            if b.is_ascii_whitespace() {
                pos += 1;
                continue;
            }
            if b != b'(' {
                return Err(Error::parse(pos, format!("expected '(', found {:?}", b as char)));
            }
            let open = pos;
            pos += 1;
            let mut cycle: Vec<u32> = Vec::new();
            loop {
                while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b',')
                {
                    pos += 1;
                }
                if pos >= bytes.len() {
                    return Err(Error::parse(open, "unclosed cycle"));
                }
                if bytes[pos] == b')' {
                    pos += 1;
                    break;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(Error::parse(
                        pos,
                        format!("expected point or ')', found {:?}", bytes[pos] as char),
                    ));
                }
                let value: u64 = text[start..pos]
                    .parse()
                    .map_err(|_| Error::parse(start, "point out of range"))?;
                if value == 0 {
                    return Err(Error::parse(start, "points are 1-based; 0 is not a point"));
                }
                if value > degree as u64 {
                    return Err(Error::parse(
                        start,
                        format!("point {value} exceeds degree {degree}"),
                    ));
                }
                let point = (value - 1) as u32;
                if cycle.contains(&point) {
                    return Err(Error::parse(start, format!("point {value} repeated in cycle")));
                }
                cycle.push(point);
            }
            saw_cycle = true;
            if cycle.len() >= 2 {
                let mut images: Vec<u32> = (0..degree as u32).collect();
                for w in cycle.windows(2) {
                    images[w[0] as usize] = w[1];
                }
                images[cycle[cycle.len() - 1] as usize] = cycle[0];
                result = result.then(&Permutation { images });
            }
        }
        if !saw_cycle {
            return Err(Error::parse(0, "expected at least one cycle, e.g. \"()\""));
        }
        Ok(result)
    }

    /// Formats the permutation in `1`-based disjoint-cycle notation; the
    /// identity prints as `()`.
    pub fn cycles_string(&self) -> String {
        let mut seen = vec![false; self.images.len()];
        let mut out = String::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start as u32 {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start as u32;
            let mut first = true;
            while !seen[p as usize] {
                seen[p as usize] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
                first = false;
                p = self.images[p as usize];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

// ---------------------------------------------------------------------------
// Stabilizer chain
// ---------------------------------------------------------------------------

/// One level of a stabilizer chain: a base point, the strong generators
/// introduced at this level, and a transversal mapping each orbit point
/// `beta` to a word `u` with `u(base) = beta`.
struct ChainLevel {
    base: u32,
    gens: Vec<Permutation>,
    transversal: Vec<Option<Permutation>>,
}

/// Deterministic Schreier-style stabilizer chain. No randomization: base
/// points are the least moved points of the residues that create them,
/// orbits are explored breadth-first with generators in insertion order, and
/// Schreier generators are sifted in ascending orbit order.
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

impl StabChain {
    fn new(degree: usize, generators: &[Permutation]) -> StabChain {
        let mut chain = StabChain { degree, levels: Vec::new() };
        for g in generators {
            if !g.is_identity() {
                chain.add_generator(0, g.clone());
            }
        }
        // Close under Schreier generators: whenever one fails to sift, its
        // residue becomes a new strong generator and the scan restarts. Each
        // insertion strictly grows some orbit (or adds a level), so the loop
        // terminates.
        'closure: loop {
            for i in 0..chain.levels.len() {
                let orbit: Vec<u32> = chain.levels[i]
                    .transversal
                    .iter()
                    .enumerate()
                    .filter_map(|(p, t)| t.as_ref().map(|_| p as u32))
                    .collect();
                let gens = chain.level_generators(i);
                for &beta in &orbit {
                    let u_beta = chain.levels[i].transversal[beta as usize].clone().unwrap();
                    for s in &gens {
                        let img = s.apply(beta);
                        let u_img = chain.levels[i].transversal[img as usize].as_ref().unwrap();
                        let schreier = u_beta.then(s).then(&u_img.inverse());
                        if let Some((level, residue)) = chain.sift_residue(i + 1, schreier) {
                            chain.add_generator(level, residue);
                            continue 'closure;
                        }
                    }
                }
            }
            break;
        }
        chain
    }

    /// Generators available at level `i`: everything introduced at this level
    /// or deeper (all of which fix the earlier base points).
    fn level_generators(&self, i: usize) -> Vec<Permutation> {
        self.levels[i..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    fn add_generator(&mut self, level: usize, g: Permutation) {
        if g.is_identity() {
            return;
        }
        if level == self.levels.len() {
            let base = g.min_moved_point().expect("non-identity permutation moves a point");
            self.levels.push(ChainLevel {
                base,
                gens: Vec::new(),
                transversal: vec![None; self.degree],
            });
        }
        self.levels[level].gens.push(g);
        for i in (0..=level).rev() {
            self.rebuild_transversal(i);
        }
    }

    fn rebuild_transversal(&mut self, i: usize) {
        let gens = self.level_generators(i);
        let base = self.levels[i].base;
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[base as usize] = Some(Permutation::identity(self.degree));
        let mut queue = vec![base];
        let mut head = 0;
        while head < queue.len() {
            let beta = queue[head];
            head += 1;
            let u = transversal[beta as usize].clone().unwrap();
            for g in &gens {
                let img = g.apply(beta);
                if transversal[img as usize].is_none() {
                    transversal[img as usize] = Some(u.then(g));
                    queue.push(img);
                }
            }
        }
        self.levels[i].transversal = transversal;
    }

    /// Sifts `g` through levels `start..`; returns the level and residue where
    /// sifting gets stuck, or `None` if `g` reduces to the identity.
    fn sift_residue(&self, start: usize, mut g: Permutation) -> Option<(usize, Permutation)> {
        for i in start..self.levels.len() {
            if g.is_identity() {
                return None;
            }
            let beta = g.apply(self.levels[i].base);
            match &self.levels[i].transversal[beta as usize] {
                None => return Some((i, g)),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        if g.is_identity() {
            None
        } else {
            Some((self.levels.len(), g))
        }
    }

    fn order(&self) -> u64 {
        self.levels
            .iter()
            .map(|l| l.transversal.iter().filter(|t| t.is_some()).count() as u64)
            .product()
    }

    fn contains(&self, g: &Permutation) -> bool {
        self.sift_residue(0, g.clone()).is_none()
    }
}

// ---------------------------------------------------------------------------
// PermGroup
// ---------------------------------------------------------------------------

/// A finite permutation group given by generators, with lazily computed,
/// write-once caches for its stabilizer chain and element list.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
    elements: OnceLock<(Vec<Permutation>, HashMap<Permutation, usize>)>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup::new_unchecked(self.degree, self.generators.clone())
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Builds a group from generators, rejecting degree mismatches. Identity
    /// generators and duplicates are dropped.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        Ok(Self::new_unchecked(degree, generators))
    }

    fn new_unchecked(degree: usize, generators: Vec<Permutation>) -> Self {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        PermGroup {
            degree,
            generators: gens,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new_unchecked(degree, Vec::new())
    }

    /// The full symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut images: Vec<u32> = (0..n as u32).collect();
            images.swap(0, 1);
            gens.push(Permutation { images });
        }
        if n >= 3 {
            let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            gens.push(Permutation { images });
        }
        Self::new_unchecked(n, gens)
    }

    /// The cyclic group generated by an `n`-cycle on `n` points.
    pub fn cyclic(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            gens.push(Permutation { images });
        }
        Self::new_unchecked(n, gens)
    }

    /// `PSL(2, p)` acting on the projective line over `F_p`: points `0..p-1`
    /// are the residues and point `p` is infinity. Generated by `x -> x + 1`
    /// and `x -> -1/x`.
    pub fn psl2(p: u64) -> Result<Self> {
        let (t, s) = projective_generators(p)?;
        Ok(Self::new_unchecked((p + 1) as usize, vec![t, s]))
    }

    /// `PGL(2, p)` on the projective line: `PSL(2, p)` extended by
    /// `x -> lambda x` for the least quadratic non-residue `lambda`.
    pub fn pgl2(p: u64) -> Result<Self> {
        let (t, s) = projective_generators(p)?;
        let n = (p + 1) as usize;
        let lambda = least_non_residue(p)
            .ok_or_else(|| Error::input(format!("{p} has no quadratic non-residue")))?;
        let mut images: Vec<u32> = (0..n as u32).collect();
        for x in 0..p {
            images[x as usize] = ((lambda * x) % p) as u32;
        }
        let m = Permutation { images };
        Ok(Self::new_unchecked(n, vec![t, s, m]))
    }

    /// Direct product acting on the disjoint union of the factors' points.
    pub fn direct_product(factors: &[PermGroup]) -> Self {
        let degree: usize = factors.iter().map(|f| f.degree).sum();
        let mut gens = Vec::new();
        let mut offset = 0u32;
        for f in factors {
            for g in &f.generators {
                let mut images: Vec<u32> = (0..degree as u32).collect();
                for (i, &img) in g.images.iter().enumerate() {
                    images[offset as usize + i] = offset + img;
                }
                gens.push(Permutation { images });
            }
            offset += f.degree as u32;
        }
        Self::new_unchecked(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    /// Group order, from the stabilizer chain.
    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    /// Membership test by sifting through the stabilizer chain.
    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().contains(g)
    }

    /// True if every generator of `other` lies in `self`.
    pub fn is_subgroup(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Explicit element list (breadth-first closure of the generators, so the
    /// order is deterministic), together with an index map. Errors out past
    /// the enumeration cap.
    pub fn elements(&self) -> Result<&[Permutation]> {
        self.elements_with_index().map(|(els, _)| els)
    }

    pub(crate) fn elements_with_index(
        &self,
    ) -> Result<(&[Permutation], &HashMap<Permutation, usize>)> {
        if self.elements.get().is_none() {
            let mut list = vec![self.identity()];
            let mut index: HashMap<Permutation, usize> = HashMap::new();
            index.insert(self.identity(), 0);
            let mut head = 0;
            while head < list.len() {
                let current = list[head].clone();
                head += 1;
                for g in &self.generators {
                    let next = current.then(g);
                    if !index.contains_key(&next) {
                        if list.len() >= MAX_ENUMERATION {
                            return Err(Error::input(format!(
                                "group has more than {MAX_ENUMERATION} elements; explicit \
                                 enumeration is out of scope"
                            )));
                        }
                        index.insert(next.clone(), list.len());
                        list.push(next);
                    }
                }
            }
            let _ = self.elements.set((list, index));
        }
        let (els, idx) = self.elements.get().unwrap();
        Ok((els.as_slice(), idx))
    }

    /// Orbit of a point, sorted ascending.
    pub fn orbit_point(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[point as usize] = true;
        let mut queue = vec![point];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for g in &self.generators {
                let img = g.apply(p);
                if !seen[img as usize] {
                    seen[img as usize] = true;
                    queue.push(img);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// Orbit of an ordered tuple under the diagonal action, sorted.
    pub fn orbit_tuple(&self, tuple: &[u32]) -> Vec<Vec<u32>> {
        self.orbit_by(tuple.to_vec(), |g, t| t.iter().map(|&p| g.apply(p)).collect())
    }

    /// Orbit of a point set (each set kept sorted), sorted.
    pub fn orbit_set(&self, set: &[u32]) -> Vec<Vec<u32>> {
        let mut start = set.to_vec();
        start.sort_unstable();
        self.orbit_by(start, |g, t| {
            let mut img: Vec<u32> = t.iter().map(|&p| g.apply(p)).collect();
            img.sort_unstable();
            img
        })
    }

    fn orbit_by(
        &self,
        start: Vec<u32>,
        act: impl Fn(&Permutation, &Vec<u32>) -> Vec<u32>,
    ) -> Vec<Vec<u32>> {
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        seen.insert(start.clone(), ());
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let t = queue[head].clone();
            head += 1;
            for g in &self.generators {
                let img = act(g, &t);
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    queue.push(img);
                }
            }
        }
        queue.sort();
        queue
    }
}

fn projective_generators(p: u64) -> Result<(Permutation, Permutation)> {
    if !is_prime(p) {
        return Err(Error::input(format!("psl2/pgl2 require a prime, got {p}")));
    }
    let n = (p + 1) as usize;
    let inf = p as u32;
    // t: x -> x + 1, fixing infinity.
    let mut t_images: Vec<u32> = (0..n as u32).collect();
    for x in 0..p {
        t_images[x as usize] = ((x + 1) % p) as u32;
    }
    // s: x -> -1/x, swapping 0 and infinity.
    let mut s_images: Vec<u32> = (0..n as u32).collect();
    s_images[0] = inf;
    s_images[p as usize] = 0;
    for x in 1..p {
        let inv = mod_inverse(x, p).expect("nonzero residue has an inverse");
        s_images[x as usize] = ((p - inv) % p) as u32;
    }
    Ok((Permutation { images: t_images }, Permutation { images: s_images }))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    // Fermat: a^(p-2) mod p for prime p.
    if a % p == 0 {
        return None;
    }
    let mut result: u64 = 1;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    Some(result)
}

fn least_non_residue(p: u64) -> Option<u64> {
    let residues: std::collections::HashSet<u64> = (1..p).map(|x| x * x % p).collect();
    (2..p).find(|x| !residues.contains(x))
}

// ---------------------------------------------------------------------------
// Coset spaces
// ---------------------------------------------------------------------------

/// The right coset space `H\G`: cosets `Hx` indexed `0..len`, each represented
/// by its lexicographically least element. Coset `0` is `H` itself, so its
/// representative is the identity.
#[derive(Debug)]
pub struct CosetSpace {
    reps: Vec<Permutation>,
    /// Maps every element of `G` to the index of its coset.
    coset_of: HashMap<Permutation, usize>,
    subgroup_order: usize,
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representative(&self, coset: usize) -> &Permutation {
        &self.reps[coset]
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup_order
    }

    /// Index of the coset containing `g`, if `g` lies in the parent group.
    pub fn coset_of(&self, g: &Permutation) -> Option<usize> {
        self.coset_of.get(g).copied()
    }

    /// Right action: the index of `(H r_i) · g`.
    pub fn act(&self, coset: usize, g: &Permutation) -> usize {
        let moved = self.reps[coset].then(g);
        *self
            .coset_of
            .get(&moved)
            .unwrap_or_else(|| panic!("action left the group: {} not in parent", moved))
    }
}

/// Builds the right coset space `H\G`. Errors if `H` is not a subgroup of `G`
/// or if `G` is too large to enumerate.
pub fn coset_space(g: &PermGroup, h: &PermGroup) -> Result<CosetSpace> {
    if h.degree() != g.degree() {
        return Err(Error::input(format!(
            "subgroup degree {} does not match parent degree {}",
            h.degree(),
            g.degree()
        )));
    }
    if !g.is_subgroup(h) {
        return Err(Error::input("subgroup generators do not all lie in the parent group"));
    }
    let h_elements = h.elements()?;
    let g_elements = g.elements()?;
    // Bucket every element of G by its coset; the canonical representative of
    // a coset is its least element, found by minimizing h·x over h in H.
    let mut coset_of: HashMap<Permutation, usize> = HashMap::with_capacity(g_elements.len());
    let mut reps: Vec<Permutation> = Vec::new();
    for x in g_elements {
        if coset_of.contains_key(x) {
            continue;
        }
        let members: Vec<Permutation> = h_elements.iter().map(|h| h.then(x)).collect();
        let rep = members.iter().min().unwrap().clone();
        let idx = reps.len();
        reps.push(rep);
        for m in members {
            coset_of.insert(m, idx);
        }
    }
    // Renumber so cosets are sorted by representative; the identity
    // representative (coset of H itself) sorts first.
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| reps[a].cmp(&reps[b]));
    let mut rank = vec![0usize; reps.len()];
    for (new_idx, &old_idx) in order.iter().enumerate() {
        rank[old_idx] = new_idx;
    }
    let sorted_reps: Vec<Permutation> = order.iter().map(|&i| reps[i].clone()).collect();
    for v in coset_of.values_mut() {
        *v = rank[*v];
    }
    let expected = g.order() / h.order();
    if sorted_reps.len() as u64 != expected {
        return Err(Error::input(format!(
            "coset count {} disagrees with index {}",
            sorted_reps.len(),
            expected
        )));
    }
    Ok(CosetSpace { reps: sorted_reps, coset_of, subgroup_order: h_elements.len() })
}

// ---------------------------------------------------------------------------
// Derived subgroups: core, normal closure
// ---------------------------------------------------------------------------

/// Selects a small deterministic generating set from a list of elements:
/// scan in ascending order, keeping each element not generated by those
/// already kept.
fn reduce_to_generators(degree: usize, elements: &mut Vec<Permutation>) -> PermGroup {
    elements.sort();
    let mut group = PermGroup::trivial(degree);
    for e in elements.iter() {
        if !group.contains(e) {
            let mut gens = group.generators().to_vec();
            gens.push(e.clone());
            group = PermGroup::new_unchecked(degree, gens);
        }
    }
    group
}

/// The normal core of `H` in `G`: the kernel of the action of `G` on the
/// coset space `H\G`, computed by testing every element of `G` against every
/// coset.
pub fn core(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let cs = coset_space(g, h)?;
    let mut kernel: Vec<Permutation> = Vec::new();
    for x in g.elements()? {
        if (0..cs.len()).all(|i| cs.act(i, x) == i) {
            kernel.push(x.clone());
        }
    }
    Ok(reduce_to_generators(g.degree(), &mut kernel))
}

/// The normal closure of `H` in `G`: the smallest normal subgroup of `G`
/// containing `H`, built by saturating under conjugation by the generators
/// of `G`.
pub fn normal_closure(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if h.degree() != g.degree() {
        return Err(Error::input("normal closure requires matching degrees"));
    }
    if !g.is_subgroup(h) {
        return Err(Error::input("normal closure requires H to lie in G"));
    }
    let mut gens: Vec<Permutation> = h.generators().to_vec();
    let mut group = PermGroup::new_unchecked(g.degree(), gens.clone());
    'grow: loop {
        for n in group.generators() {
            for s in g.generators() {
                let conj = s.inverse().then(n).then(s);
                if !group.contains(&conj) {
                    gens.push(conj);
                    group = PermGroup::new_unchecked(g.degree(), gens.clone());
                    continue 'grow;
                }
            }
        }
        return Ok(group);
    }
}

// ---------------------------------------------------------------------------
// Subgroup search
// ---------------------------------------------------------------------------

/// Structural filter for [`find_subgroups`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupFilter {
    Any,
    Abelian,
    Nonabelian,
}

impl SubgroupFilter {
    fn accepts(&self, group: &PermGroup) -> bool {
        match self {
            SubgroupFilter::Any => true,
            SubgroupFilter::Abelian => group.is_abelian(),
            SubgroupFilter::Nonabelian => !group.is_abelian(),
        }
    }
}

/// Canonical key of a subgroup: the sorted list of element image sequences.
/// Two subgroups are equal iff their keys are equal, and keys compare
/// lexicographically, which fixes all representative choices.
fn subgroup_key(h: &PermGroup) -> Result<Vec<Vec<u32>>> {
    let mut key: Vec<Vec<u32>> = h.elements()?.iter().map(|e| e.images().to_vec()).collect();
    key.sort();
    Ok(key)
}

/// Finds subgroups of the given order, up to conjugacy, returning one
/// representative per class (the representative with the least canonical
/// key). The search covers orders of the form `p` or `p · q` with `p` the
/// largest prime factor, `p` dividing `|G|` exactly once, and `q` prime:
/// such a subgroup contains a full Sylow `p`-subgroup of `G`, so it suffices
/// to extend one fixed Sylow subgroup by normalizing elements of order `q`.
pub fn find_subgroups(
    g: &PermGroup,
    order: u64,
    filter: SubgroupFilter,
) -> Result<Vec<PermGroup>> {
    let g_order = g.order();
    if order == 0 || g_order % order != 0 {
        return Err(Error::input(format!("order {order} does not divide |G| = {g_order}")));
    }
    if order == 1 {
        let trivial = PermGroup::trivial(g.degree());
        return Ok(if filter.accepts(&trivial) { vec![trivial] } else { vec![] });
    }
    let p = largest_prime_factor(order);
    let cofactor = order / p;
    if cofactor != 1 && !is_prime(cofactor) {
        return Err(Error::input(format!(
            "subgroup search supports orders p or p·q with q prime; {order} = {p} · {cofactor}"
        )));
    }
    if (g_order / p) % p == 0 {
        return Err(Error::input(format!(
            "subgroup search requires the largest prime {p} to divide |G| exactly once"
        )));
    }

    let elements = g.elements()?;
    let mut sorted: Vec<&Permutation> = elements.iter().collect();
    sorted.sort();

    // A Sylow p-subgroup, generated by the least element of order p.
    let x = sorted
        .iter()
        .find(|e| e.order() == p)
        .ok_or_else(|| Error::input("no element of the required prime order"))?;
    let sylow = PermGroup::new_unchecked(g.degree(), vec![(*x).clone()]);
    let sylow_set: std::collections::HashSet<&Permutation> =
        sylow.elements()?.iter().collect();

    let mut candidates: Vec<PermGroup> = Vec::new();
    if cofactor == 1 {
        candidates.push(sylow.clone());
    } else {
        // Normalizer elements of order q extend the Sylow subgroup.
        for e in &sorted {
            if e.order() != cofactor {
                continue;
            }
            let conj = e.inverse().then(x).then(e);
            if !sylow_set.contains(&conj) {
                continue;
            }
            let h = PermGroup::new_unchecked(g.degree(), vec![(*x).clone(), (*e).clone()]);
            if h.order() == order {
                candidates.push(h);
            }
        }
    }

    // Dedup candidates, filter, then group into conjugacy classes.
    let mut by_key: Vec<(Vec<Vec<u32>>, PermGroup)> = Vec::new();
    for c in candidates {
        if !filter.accepts(&c) {
            continue;
        }
        let key = subgroup_key(&c)?;
        if !by_key.iter().any(|(k, _)| *k == key) {
            by_key.push((key, c));
        }
    }
    by_key.sort_by(|a, b| a.0.cmp(&b.0));

    let mut class_reps: Vec<(Vec<Vec<u32>>, PermGroup)> = Vec::new();
    let mut seen_class_ids: Vec<Vec<Vec<u32>>> = Vec::new();
    for (key, cand) in by_key {
        let class_id = conjugacy_class_id(g, &cand)?;
        if !seen_class_ids.contains(&class_id) {
            seen_class_ids.push(class_id);
            class_reps.push((key, cand));
        }
    }
    class_reps.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(class_reps.into_iter().map(|(_, c)| c).collect())
}

/// Least subgroup key over the whole conjugacy class: a canonical class
/// invariant.
fn conjugacy_class_id(g: &PermGroup, h: &PermGroup) -> Result<Vec<Vec<u32>>> {
    let class = conjugacy_class(g, h)?;
    Ok(subgroup_key(&class[0]).expect("class member enumerates"))
}

/// The full conjugacy class of `H` under `G`, sorted by canonical key. Each
/// conjugate is returned with conjugated generators.
pub fn conjugacy_class(g: &PermGroup, h: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut seen: Vec<(Vec<Vec<u32>>, PermGroup)> = Vec::new();
    let start_key = subgroup_key(h)?;
    seen.push((start_key, h.clone()));
    let mut head = 0;
    while head < seen.len() {
        let current = seen[head].1.clone();
        head += 1;
        for s in g.generators() {
            let s_inv = s.inverse();
            let gens: Vec<Permutation> =
                current.generators().iter().map(|x| s_inv.then(x).then(s)).collect();
            let conj = PermGroup::new_unchecked(g.degree(), gens);
            let key = subgroup_key(&conj)?;
            if !seen.iter().any(|(k, _)| *k == key) {
                seen.push((key, conj));
            }
        }
    }
    seen.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(seen.into_iter().map(|(_, c)| c).collect())
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut largest = 1;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            largest = d;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        largest = n;
    }
    largest
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(s, degree).unwrap()
    }

    #[test]
    fn cycle_parsing_composes_left_to_right() {
        let a = perm("(1 2)(2 3)", 3);
        let b = perm("(1 3 2)", 3);
        assert_eq!(a, b);
    }

    #[test]
    fn cycle_parsing_accepts_commas_and_whitespace() {
        assert_eq!(perm("(1,2)( 3 , 4 )", 4), perm("(1 2)(3 4)", 4));
        assert_eq!(perm("()", 5), Permutation::identity(5));
    }

    #[test]
    fn cycle_parse_errors_carry_positions() {
        let err = Permutation::parse_cycles("(1 2", 4).unwrap_err();
        assert!(matches!(err, Error::Parse { position: 0, .. }), "{err}");
        let err = Permutation::parse_cycles("(1 2)(2 5)", 4).unwrap_err();
        assert!(matches!(err, Error::Parse { position: 8, .. }), "{err}");
        let err = Permutation::parse_cycles("(1 0)", 4).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = Permutation::parse_cycles("(1 2 1)", 4).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = Permutation::parse_cycles("", 4).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
    }

    #[test]
    fn cycles_round_trip() {
        for s in ["()", "(1 2)", "(1 3 2)", "(1 2)(3 4 5)"] {
            let p = perm(s, 6);
            assert_eq!(p.cycles_string(), s);
            assert_eq!(perm(&p.cycles_string(), 6), p);
        }
    }

    #[test]
    fn permutation_order_is_lcm_of_cycle_lengths() {
        assert_eq!(perm("(1 2)(3 4 5)", 5).order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(perm("(1 2 3 4 5 6 7 8 9 10 11 12 13)", 13).order(), 13);
    }

    #[test]
    fn standard_group_orders() {
        assert_eq!(PermGroup::symmetric(4).order(), 24);
        assert_eq!(PermGroup::cyclic(12).order(), 12);
        assert_eq!(PermGroup::trivial(5).order(), 1);
        assert_eq!(PermGroup::symmetric(1).order(), 1);
    }

    #[test]
    fn psl2_orders() {
        // |PSL(2,p)| = p(p^2-1)/2 for odd primes.
        assert_eq!(PermGroup::psl2(5).unwrap().order(), 60);
        assert_eq!(PermGroup::psl2(7).unwrap().order(), 168);
        assert_eq!(PermGroup::psl2(13).unwrap().order(), 1092);
        assert_eq!(PermGroup::pgl2(13).unwrap().order(), 2184);
        assert!(PermGroup::psl2(12).is_err());
    }

    #[test]
    fn direct_product_order_multiplies() {
        let q = PermGroup::direct_product(&[
            PermGroup::psl2(13).unwrap(),
            PermGroup::cyclic(3),
            PermGroup::cyclic(3),
        ]);
        assert_eq!(q.degree(), 20);
        assert_eq!(q.order(), 9828);
    }

    #[test]
    fn chain_order_matches_exhaustive_closure() {
        let groups = vec![
            PermGroup::trivial(3),
            PermGroup::symmetric(3),
            PermGroup::symmetric(5),
            PermGroup::cyclic(9),
            PermGroup::psl2(5).unwrap(),
            PermGroup::psl2(7).unwrap(),
            PermGroup::new(6, vec![perm("(1 2)(3 4)", 6), perm("(3 4 5 6)", 6)]).unwrap(),
        ];
        for g in &groups {
            assert_eq!(g.order(), g.elements().unwrap().len() as u64);
        }
    }

    #[test]
    fn membership_agrees_with_closure() {
        let g = PermGroup::new(5, vec![perm("(1 2 3)", 5), perm("(3 4 5)", 5)]).unwrap();
        // <3-cycles> on 5 points is Alt(5).
        assert_eq!(g.order(), 60);
        let all = PermGroup::symmetric(5);
        let set: std::collections::HashSet<&Permutation> =
            g.elements().unwrap().iter().collect();
        for e in all.elements().unwrap() {
            assert_eq!(g.contains(e), set.contains(e), "disagree on {e}");
        }
    }

    #[test]
    fn orbits_of_points_tuples_sets() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.orbit_point(0), vec![0, 1, 2]);
        assert_eq!(s3.orbit_tuple(&[0, 1]).len(), 6);
        assert_eq!(s3.orbit_set(&[0, 1]).len(), 3);
        let fix = PermGroup::new(4, vec![perm("(1 2 3)", 4)]).unwrap();
        assert_eq!(fix.orbit_point(3), vec![3]);
    }

    #[test]
    fn coset_space_of_point_stabilizer() {
        let s4 = PermGroup::symmetric(4);
        // Stabilizer of point 4 inside Sym(4).
        let s3 = PermGroup::new(4, vec![perm("(1 2)", 4), perm("(1 2 3)", 4)]).unwrap();
        let cs = coset_space(&s4, &s3).unwrap();
        assert_eq!(cs.len(), 4);
        assert!(cs.representative(0).is_identity());
        // Each representative is minimal in its coset.
        for (i, rep) in cs.representatives().iter().enumerate() {
            for h in s3.elements().unwrap() {
                let member = h.then(rep);
                assert!(rep <= &member);
                assert_eq!(cs.coset_of(&member), Some(i));
            }
        }
    }

    #[test]
    fn coset_action_is_a_right_action() {
        let s4 = PermGroup::symmetric(4);
        let h = PermGroup::new(4, vec![perm("(1 2)", 4)]).unwrap();
        let cs = coset_space(&s4, &h).unwrap();
        assert_eq!(cs.len(), 12);
        for a in s4.elements().unwrap().iter().take(24) {
            for b in s4.generators() {
                let ab = a.then(b);
                for i in 0..cs.len() {
                    assert_eq!(cs.act(cs.act(i, a), b), cs.act(i, &ab));
                }
            }
        }
    }

    #[test]
    fn coset_space_rejects_non_subgroups() {
        let a4 = PermGroup::new(4, vec![perm("(1 2 3)", 4), perm("(2 3 4)", 4)]).unwrap();
        let h = PermGroup::new(4, vec![perm("(1 2)", 4)]).unwrap();
        assert!(coset_space(&a4, &h).is_err());
        let wrong_degree = PermGroup::symmetric(3);
        assert!(coset_space(&a4, &wrong_degree).is_err());
    }

    #[test]
    fn core_of_point_stabilizer_is_trivial() {
        let s4 = PermGroup::symmetric(4);
        let s3 = PermGroup::new(4, vec![perm("(1 2)", 4), perm("(1 2 3)", 4)]).unwrap();
        assert_eq!(core(&s4, &s3).unwrap().order(), 1);
    }

    #[test]
    fn core_of_normal_subgroup_is_itself() {
        let s4 = PermGroup::symmetric(4);
        let a4 = PermGroup::new(4, vec![perm("(1 2 3)", 4), perm("(2 3 4)", 4)]).unwrap();
        let c = core(&s4, &a4).unwrap();
        assert_eq!(c.order(), 12);
        assert!(a4.is_subgroup(&c) && c.is_subgroup(&a4));
    }

    /// Oracle: the core is the intersection of all conjugates of H, computed
    /// here by explicit element-set intersection.
    #[test]
    fn core_matches_conjugate_intersection_oracle() {
        let g = PermGroup::new(4, vec![perm("(1 2 3 4)", 4), perm("(1 2)", 4)]).unwrap();
        let h = PermGroup::new(4, vec![perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)]).unwrap();
        let computed = core(&g, &h).unwrap();
        let mut intersection: std::collections::HashSet<Permutation> =
            h.elements().unwrap().iter().cloned().collect();
        for e in g.elements().unwrap() {
            let e_inv = e.inverse();
            let conj: std::collections::HashSet<Permutation> = h
                .elements()
                .unwrap()
                .iter()
                .map(|x| e_inv.then(x).then(e))
                .collect();
            intersection.retain(|x| conj.contains(x));
        }
        assert_eq!(computed.order(), intersection.len() as u64);
        for x in &intersection {
            assert!(computed.contains(x));
        }
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = PermGroup::symmetric(4);
        let transposition = PermGroup::new(4, vec![perm("(1 2)", 4)]).unwrap();
        assert_eq!(normal_closure(&s4, &transposition).unwrap().order(), 24);
        let three_cycle = PermGroup::new(4, vec![perm("(1 2 3)", 4)]).unwrap();
        assert_eq!(normal_closure(&s4, &three_cycle).unwrap().order(), 12);
        let double = PermGroup::new(4, vec![perm("(1 2)(3 4)", 4)]).unwrap();
        assert_eq!(normal_closure(&s4, &double).unwrap().order(), 4);
    }

    #[test]
    fn find_subgroups_in_sym3() {
        let s3 = PermGroup::symmetric(3);
        let found = find_subgroups(&s3, 3, SubgroupFilter::Any).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].order(), 3);
        assert!(found[0].contains(&perm("(1 2 3)", 3)));
    }

    #[test]
    fn find_subgroups_order39_in_affine_group() {
        // <x -> x+1, x -> 3x> on 13 points: the order-39 affine group.
        let x = perm("(1 2 3 4 5 6 7 8 9 10 11 12 13)", 13);
        let y = Permutation::from_images((0..13).map(|i| (3 * i) % 13).collect()).unwrap();
        let g = PermGroup::new(13, vec![x, y]).unwrap();
        assert_eq!(g.order(), 39);
        assert!(!g.is_abelian());
        let found = find_subgroups(&g, 39, SubgroupFilter::Nonabelian).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].order(), 39);
    }

    #[test]
    fn find_subgroups_rejects_bad_orders() {
        let s4 = PermGroup::symmetric(4);
        assert!(find_subgroups(&s4, 5, SubgroupFilter::Any).is_err());
        // 4 = 2^2 but 2 divides 24 more than once: unsupported shape.
        assert!(find_subgroups(&s4, 4, SubgroupFilter::Any).is_err());
    }

    #[test]
    fn conjugacy_class_of_point_stabilizer() {
        let s4 = PermGroup::symmetric(4);
        let s3 = PermGroup::new(4, vec![perm("(1 2)", 4), perm("(1 2 3)", 4)]).unwrap();
        let class = conjugacy_class(&s4, &s3).unwrap();
        assert_eq!(class.len(), 4);
        for member in &class {
            assert_eq!(member.order(), 6);
        }
    }
}
