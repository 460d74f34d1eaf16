//! From named group descriptions to certified coset complexes.
//!
//! This module glues the building blocks together.  It constructs groups
//! from structured descriptions while remembering their direct-product
//! factors, searches for triples of subgroups whose coset complex passes
//! every curvature and homology check, and extends the right-multiplication
//! action on such a complex by symmetries induced from group automorphisms
//! that permute the three subgroups.  The extension matters: right
//! multiplication preserves each part of the tripartite complex, so on its
//! own it can never be transitive on directed edges.
//!
//! For ambient groups of the shape `psl2(p) x cyclic(c) x cyclic(c)` with
//! `c` prime, automorphisms are assembled from a fractional linear map on
//! the projective line (conjugating the `psl2` factor) and an invertible
//! 2x2 matrix over `F_c` (mixing the two cyclic factors).  For other shapes
//! the search still runs, but no extension is attempted.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::certify::{certify, Certificate, CertifyOptions, CheckStatus, Environment};
use crate::complex::{coset_complex, CosetComplex, TriangleOrbit, VertexAction};
use crate::error::{Error, Result};
use crate::perm::{conjugacy_class, find_subgroups, PermGroup, Permutation, SubgroupFilter};

// ---------------------------------------------------------------------------
// Built groups
// ---------------------------------------------------------------------------

/// How one direct factor of a built group was constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Symmetric(u64),
    Cyclic(u64),
    Psl2(u64),
    Explicit,
}

/// One direct factor of a built group: its kind and where its points sit
/// inside the ambient degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuiltFactor {
    pub kind: FactorKind,
    pub offset: usize,
    pub degree: usize,
}

/// A permutation group built from a named description, with the factor
/// structure retained so later stages can recognise product shapes.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    group: PermGroup,
    factors: Vec<BuiltFactor>,
    description: String,
}

impl BuiltGroup {
    /// The full symmetric group on `n` points.
    pub fn symmetric(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("symmetric(n) requires n >= 1"));
        }
        let group = PermGroup::symmetric(n as usize);
        Ok(BuiltGroup {
            factors: vec![BuiltFactor {
                kind: FactorKind::Symmetric(n),
                offset: 0,
                degree: group.degree(),
            }],
            description: format!("symmetric({n})"),
            group,
        })
    }

    /// The cyclic group rotating `n` points.
    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("cyclic(n) requires n >= 1"));
        }
        let group = PermGroup::cyclic(n as usize);
        Ok(BuiltGroup {
            factors: vec![BuiltFactor {
                kind: FactorKind::Cyclic(n),
                offset: 0,
                degree: group.degree(),
            }],
            description: format!("cyclic({n})"),
            group,
        })
    }

    /// `PSL(2, p)` acting on the projective line over `F_p` (point `p` is
    /// the point at infinity).
    pub fn psl2(p: u64) -> Result<Self> {
        let group = PermGroup::psl2(p)?;
        Ok(BuiltGroup {
            factors: vec![BuiltFactor {
                kind: FactorKind::Psl2(p),
                offset: 0,
                degree: group.degree(),
            }],
            description: format!("psl2({p})"),
            group,
        })
    }

    /// `PGL(2, p)` on the same projective line as [`BuiltGroup::psl2`].
    pub fn pgl2(p: u64) -> Result<Self> {
        let group = PermGroup::pgl2(p)?;
        Ok(BuiltGroup {
            factors: vec![BuiltFactor {
                kind: FactorKind::Explicit,
                offset: 0,
                degree: group.degree(),
            }],
            description: format!("pgl2({p})"),
            group,
        })
    }

    /// A group given by explicit generators.
    pub fn explicit(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        let count = generators.len();
        let group = PermGroup::new(degree, generators)?;
        Ok(BuiltGroup {
            factors: vec![BuiltFactor { kind: FactorKind::Explicit, offset: 0, degree }],
            description: format!("explicit(degree {degree}, {count} generators)"),
            group,
        })
    }

    /// The direct product of the given groups, acting on the disjoint union
    /// of their points.  Nested products are flattened.
    pub fn product(factors: Vec<BuiltGroup>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::input("direct_product needs at least two factors"));
        }
        let groups: Vec<PermGroup> = factors.iter().map(|f| f.group.clone()).collect();
        let group = PermGroup::direct_product(&groups);
        let mut flat = Vec::new();
        let mut offset = 0usize;
        for factor in &factors {
            for sub in &factor.factors {
                flat.push(BuiltFactor {
                    kind: sub.kind,
                    offset: offset + sub.offset,
                    degree: sub.degree,
                });
            }
            offset += factor.group.degree();
        }
        let description = format!(
            "direct_product({})",
            factors.iter().map(|f| f.description.as_str()).collect::<Vec<_>>().join(", ")
        );
        Ok(BuiltGroup { group, factors: flat, description })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn factors(&self) -> &[BuiltFactor] {
        &self.factors
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

// ---------------------------------------------------------------------------
// Arithmetic on the projective line over F_p
// ---------------------------------------------------------------------------

fn add_m(a: u64, b: u64, m: u64) -> u64 {
    (a + b) % m
}

fn sub_m(a: u64, b: u64, m: u64) -> u64 {
    (a + m - b % m) % m
}

fn mul_m(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_m(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_m(acc, base, m);
        }
        base = mul_m(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime.
fn inv_m(a: u64, m: u64) -> u64 {
    pow_m(a, m - 2, m)
}

/// A 2x2 matrix over `F_m`, acting on the projective line by fractional
/// linear maps `x -> (ax + b) / (cx + d)` and on column vectors directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Mat2 {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    m: u64,
}

impl Mat2 {
    fn det(&self) -> u64 {
        sub_m(mul_m(self.a, self.d, self.m), mul_m(self.b, self.c, self.m), self.m)
    }

    /// The adjugate, which is the inverse up to the (nonzero) determinant
    /// scalar, so it represents the inverse fractional linear map.
    fn adjugate(&self) -> Mat2 {
        Mat2 {
            a: self.d,
            b: sub_m(0, self.b, self.m),
            c: sub_m(0, self.c, self.m),
            d: self.a,
            m: self.m,
        }
    }

    /// Matrix product; as fractional linear maps this is the composite
    /// `x -> self(rhs(x))`.
    fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: add_m(mul_m(self.a, rhs.a, self.m), mul_m(self.b, rhs.c, self.m), self.m),
            b: add_m(mul_m(self.a, rhs.b, self.m), mul_m(self.b, rhs.d, self.m), self.m),
            c: add_m(mul_m(self.c, rhs.a, self.m), mul_m(self.d, rhs.c, self.m), self.m),
            d: add_m(mul_m(self.c, rhs.b, self.m), mul_m(self.d, rhs.d, self.m), self.m),
            m: self.m,
        }
    }

    fn scale(&self, k: u64) -> Mat2 {
        Mat2 {
            a: mul_m(self.a, k, self.m),
            b: mul_m(self.b, k, self.m),
            c: mul_m(self.c, k, self.m),
            d: mul_m(self.d, k, self.m),
            m: self.m,
        }
    }

    fn apply_vector(&self, v: [u64; 2]) -> [u64; 2] {
        [
            add_m(mul_m(self.a, v[0], self.m), mul_m(self.b, v[1], self.m), self.m),
            add_m(mul_m(self.c, v[0], self.m), mul_m(self.d, v[1], self.m), self.m),
        ]
    }

    /// Evaluates the fractional linear map at a point of `F_m + {oo}`,
    /// with `m` itself encoding the point at infinity.
    fn apply_projective(&self, x: u64) -> u64 {
        let infinity = self.m;
        let (num, den) = if x == infinity {
            (self.a, self.c)
        } else {
            (
                add_m(mul_m(self.a, x, self.m), self.b, self.m),
                add_m(mul_m(self.c, x, self.m), self.d, self.m),
            )
        };
        if den == 0 {
            infinity
        } else {
            mul_m(num, inv_m(den, self.m), self.m)
        }
    }
}

/// A matrix sending the three distinct points `z` to `(0, 1, oo)`.
fn standard_frame(p: u64, z: [u64; 3]) -> Mat2 {
    let infinity = p;
    let [z0, z1, z2] = z;
    if z0 == infinity {
        // x -> (z1 - z2) / (x - z2)
        Mat2 { a: 0, b: sub_m(z1, z2, p), c: 1, d: sub_m(0, z2, p), m: p }
    } else if z1 == infinity {
        // x -> (x - z0) / (x - z2)
        Mat2 { a: 1, b: sub_m(0, z0, p), c: 1, d: sub_m(0, z2, p), m: p }
    } else if z2 == infinity {
        // x -> (x - z0) / (z1 - z0)
        Mat2 { a: 1, b: sub_m(0, z0, p), c: 0, d: sub_m(z1, z0, p), m: p }
    } else {
        // x -> ((x - z0)(z1 - z2)) / ((x - z2)(z1 - z0))
        let u = sub_m(z1, z2, p);
        let w = sub_m(z1, z0, p);
        Mat2 {
            a: u,
            b: sub_m(0, mul_m(z0, u, p), p),
            c: w,
            d: sub_m(0, mul_m(z2, w, p), p),
            m: p,
        }
    }
}

/// The unique fractional linear map over `F_p + {oo}` taking the three
/// distinct `source` points to the three distinct `target` points, realised
/// as a permutation of `{0, .., p}` with `p` playing the point at infinity.
pub(crate) fn mobius_through(p: u64, source: [u64; 3], target: [u64; 3]) -> Result<Permutation> {
    for triple in [&source, &target] {
        if triple.iter().any(|&z| z > p) {
            return Err(Error::input(format!("projective points must lie in 0..={p}")));
        }
        if triple[0] == triple[1] || triple[0] == triple[2] || triple[1] == triple[2] {
            return Err(Error::input("the three projective points must be distinct"));
        }
    }
    let matrix = standard_frame(p, target).adjugate().mul(&standard_frame(p, source));
    if matrix.det() == 0 {
        return Err(Error::domain("fractional linear interpolation produced a singular matrix"));
    }
    let images: Vec<u32> = (0..=p).map(|x| matrix.apply_projective(x) as u32).collect();
    let map = Permutation::from_images(images)?;
    for (s, t) in source.iter().zip(target.iter()) {
        if map.apply(*s as u32) as u64 != *t {
            return Err(Error::domain("fractional linear interpolation missed a target point"));
        }
    }
    Ok(map)
}

// ---------------------------------------------------------------------------
// Product shape and automorphisms permuting a subgroup triple
// ---------------------------------------------------------------------------

/// The ambient shape `psl2(p) x cyclic(c) x cyclic(c)` with `c` prime: a
/// projective line block followed by two equal cyclic blocks.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ProductShape {
    p: u64,
    c: u64,
    line_len: usize,
    block: [usize; 2],
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

pub(crate) fn product_shape(built: &BuiltGroup) -> Option<ProductShape> {
    if built.factors.len() != 3 {
        return None;
    }
    let (f0, f1, f2) = (&built.factors[0], &built.factors[1], &built.factors[2]);
    let p = match f0.kind {
        FactorKind::Psl2(p) => p,
        _ => return None,
    };
    let (c1, c2) = match (f1.kind, f2.kind) {
        (FactorKind::Cyclic(a), FactorKind::Cyclic(b)) => (a, b),
        _ => return None,
    };
    if c1 != c2 || !is_prime(c1) {
        return None;
    }
    Some(ProductShape { p, c: c1, line_len: f0.degree, block: [f1.offset, f2.offset] })
}

/// Restriction of a group element to the projective-line block.
fn line_part(shape: &ProductShape, g: &Permutation) -> Result<Permutation> {
    let images = g.images()[..shape.line_len].to_vec();
    if images.iter().any(|&x| x as usize >= shape.line_len) {
        return Err(Error::domain("element does not preserve the projective-line block"));
    }
    Permutation::from_images(images)
}

/// The rotation amount of a group element on one cyclic block.
fn block_exponent(shape: &ProductShape, g: &Permutation, which: usize) -> Result<u64> {
    let offset = shape.block[which];
    let c = shape.c as usize;
    let first = g.apply(offset as u32) as usize;
    if first < offset || first >= offset + c {
        return Err(Error::domain("element does not preserve a cyclic block"));
    }
    let e = first - offset;
    for t in 0..c {
        let expected = offset + (t + e) % c;
        if g.apply((offset + t) as u32) as usize != expected {
            return Err(Error::domain("element does not rotate a cyclic block"));
        }
    }
    Ok(e as u64)
}

/// Rebuilds a group element from a line permutation and block rotations.
fn assemble_element(shape: &ProductShape, line: &Permutation, e: [u64; 2]) -> Result<Permutation> {
    let c = shape.c as usize;
    let mut images = line.images().to_vec();
    for (which, &exp) in e.iter().enumerate() {
        let offset = shape.block[which];
        debug_assert_eq!(images.len(), offset);
        for t in 0..c {
            images.push((offset + (t + exp as usize) % c) as u32);
        }
    }
    Permutation::from_images(images)
}

/// An ambient-group automorphism that permutes the three subgroups of a
/// candidate triple: conjugation by a fractional linear map on the `psl2`
/// factor together with an invertible matrix mixing the two cyclic factors.
#[derive(Clone, Debug)]
pub(crate) struct TripleSymmetry {
    pub(crate) sigma: [usize; 3],
    line: Permutation,
    line_inv: Permutation,
    matrix: Mat2,
}

impl TripleSymmetry {
    pub(crate) fn apply(&self, shape: &ProductShape, g: &Permutation) -> Result<Permutation> {
        let gl = line_part(shape, g)?;
        let conjugated = self.line_inv.then(&gl).then(&self.line);
        let e = [block_exponent(shape, g, 0)?, block_exponent(shape, g, 1)?];
        assemble_element(shape, &conjugated, self.matrix.apply_vector(e))
    }
}

/// Shape-specific data of one subgroup of order `p * c`: the projective
/// point fixed by its order-`p` part, the canonical central exponent
/// vector, and two elements generating it.
#[derive(Clone, Debug)]
pub(crate) struct TripleProfile {
    omega: u64,
    v: [u64; 2],
    sylow: Permutation,
    zgen: Permutation,
}

/// The conjugation multiplier `k` with `e^-1 s e = s^k`, an invariant of
/// how `e` normalises the cyclic group generated by `s`.
fn conjugation_multiplier(p: u64, s: &Permutation, e: &Permutation) -> Option<u64> {
    let conjugated = e.inverse().then(s).then(e);
    let mut power = s.clone();
    for k in 1..p {
        if power == conjugated {
            return Some(k);
        }
        power = power.then(s);
    }
    None
}

/// Extracts the triple profile of a subgroup, or `None` when the subgroup
/// does not have the expected `p * c` structure.
fn subgroup_profile(shape: &ProductShape, elements: &[Permutation]) -> Option<TripleProfile> {
    if elements.len() as u64 != shape.p * shape.c {
        return None;
    }
    let sylow = elements.iter().find(|e| e.order() == shape.p)?.clone();
    let line = line_part(shape, &sylow).ok()?;
    let fixed: Vec<u64> = (0..shape.line_len as u64)
        .filter(|&x| line.apply(x as u32) as u64 == x)
        .collect();
    if fixed.len() != 1 {
        return None;
    }
    let omega = fixed[0];
    let base = elements.iter().find(|e| e.order() == shape.c)?.clone();
    let mut best: Option<(u64, Permutation)> = None;
    let mut power = base.clone();
    for _ in 1..shape.c {
        let k = conjugation_multiplier(shape.p, &sylow, &power)?;
        if best.as_ref().map_or(true, |(kb, _)| k < *kb) {
            best = Some((k, power.clone()));
        }
        power = power.then(&base);
    }
    let (_, zgen) = best?;
    let v = [
        block_exponent(shape, &zgen, 0).ok()?,
        block_exponent(shape, &zgen, 1).ok()?,
    ];
    Some(TripleProfile { omega, v, sylow, zgen })
}

/// Solves `A v_i = w_i` for an invertible matrix over `F_c`, if one exists.
fn solve_linear(c: u64, v: &[[u64; 2]; 3], w: &[[u64; 2]; 3]) -> Option<Mat2> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let basis = Mat2 { a: v[i][0], b: v[j][0], c: v[i][1], d: v[j][1], m: c };
        let det = basis.det();
        if det == 0 {
            continue;
        }
        let targets = Mat2 { a: w[i][0], b: w[j][0], c: w[i][1], d: w[j][1], m: c };
        let candidate = targets.mul(&basis.adjugate()).scale(inv_m(det, c));
        if candidate.det() == 0 {
            return None;
        }
        if (0..3).all(|k| candidate.apply_vector(v[k]) == w[k]) {
            return Some(candidate);
        }
        return None;
    }
    None
}

const SIGMAS: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// All part permutations realised by ambient-group automorphisms mapping
/// each subgroup of the triple onto the corresponding image subgroup.
/// Candidates come from interpolation (the fractional linear map is pinned
/// by the three fixed points, the matrix by the exponent vectors); each
/// candidate is then verified on explicit generators.
pub(crate) fn triple_symmetries(
    shape: &ProductShape,
    profiles: [&TripleProfile; 3],
    sets: [&HashSet<Permutation>; 3],
) -> Result<Vec<TripleSymmetry>> {
    let omegas = [profiles[0].omega, profiles[1].omega, profiles[2].omega];
    if omegas[0] == omegas[1] || omegas[0] == omegas[2] || omegas[1] == omegas[2] {
        return Ok(Vec::new());
    }
    let v = [profiles[0].v, profiles[1].v, profiles[2].v];
    let mut out = Vec::new();
    for sigma in SIGMAS {
        let targets = [omegas[sigma[0]], omegas[sigma[1]], omegas[sigma[2]]];
        let w = [v[sigma[0]], v[sigma[1]], v[sigma[2]]];
        let Some(matrix) = solve_linear(shape.c, &v, &w) else {
            continue;
        };
        let line = mobius_through(shape.p, omegas, targets)?;
        let symmetry =
            TripleSymmetry { sigma, line_inv: line.inverse(), line, matrix };
        let verified = (0..3).all(|i| {
            [&profiles[i].sylow, &profiles[i].zgen].into_iter().all(|g| {
                match symmetry.apply(shape, g) {
                    Ok(image) => sets[sigma[i]].contains(&image),
                    Err(_) => false,
                }
            })
        });
        if verified {
            out.push(symmetry);
        }
    }
    Ok(out)
}

/// True when the part permutations generate the full symmetric group on
/// the three parts.
pub(crate) fn sigma_closure_is_full(symmetries: &[TripleSymmetry]) -> bool {
    let compose = |a: [usize; 3], b: [usize; 3]| [b[a[0]], b[a[1]], b[a[2]]];
    let mut seen: HashSet<[usize; 3]> = HashSet::new();
    seen.insert([0, 1, 2]);
    let mut frontier: Vec<[usize; 3]> = vec![[0, 1, 2]];
    while let Some(current) = frontier.pop() {
        for sym in symmetries {
            let next = compose(current, sym.sigma);
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    seen.len() == 6
}

// ---------------------------------------------------------------------------
// Candidate pool
// ---------------------------------------------------------------------------

/// One candidate subgroup with the precomputed data the filters need.
struct PoolMember {
    group: PermGroup,
    class: usize,
    elements: Vec<Permutation>,
    set: HashSet<Permutation>,
    profile: Option<TripleProfile>,
}

fn pool_member(shape: Option<&ProductShape>, class: usize, group: PermGroup) -> Result<PoolMember> {
    let mut elements = group.elements()?.to_vec();
    elements.sort();
    let profile = shape.and_then(|s| subgroup_profile(s, &elements));
    let set: HashSet<Permutation> = elements.iter().cloned().collect();
    Ok(PoolMember { group, class, elements, set, profile })
}

/// True when the two subgroups intersect only in the identity.
fn pair_trivial(members: &[PoolMember], a: usize, b: usize) -> bool {
    members[a].elements.iter().filter(|e| members[b].set.contains(e)).count() == 1
}

// ---------------------------------------------------------------------------
// Local screen: identity links computed from the subgroups alone
// ---------------------------------------------------------------------------

/// Necessary conditions for a triple, measured on the three identity-coset
/// vertices without building the complex: every identity edge must lie in a
/// triangle, and no identity link may contain a four-cycle.  Links of a
/// tripartite coset complex are bipartite, so "no four-cycle" means every
/// link cycle has length at least six.  Right multiplication is transitive
/// on the vertices of each part, which makes these links representative;
/// the final certificate still re-measures every link of the built complex.
struct LocalScreen {
    triangle_counts: [usize; 3],
    four_cycle_free: bool,
}

/// The set of pairwise products `{ x.then(y) }`.
fn product_set(a: &PoolMember, b: &PoolMember) -> HashSet<Permutation> {
    let mut out = HashSet::with_capacity(a.elements.len() * b.elements.len());
    for x in &a.elements {
        for y in &b.elements {
            out.insert(x.then(y));
        }
    }
    out
}

/// Bit rows of the bipartite identity-link adjacency at the part-`i`
/// identity vertex, and the four-cycle test on them.
fn link_has_four_cycle(
    members: [&PoolMember; 3],
    products: &HashMap<(usize, usize), HashSet<Permutation>>,
    part: usize,
) -> bool {
    let (j, k) = match part {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let center = members[part];
    let prod_kj = &products[&(k, j)];
    let n = center.elements.len();
    let words = n.div_ceil(64);
    let inverses: Vec<Permutation> = center.elements.iter().map(|h| h.inverse()).collect();
    let mut rows: Vec<Vec<u64>> = vec![vec![0u64; words]; n];
    for (row, h_prime) in center.elements.iter().enumerate() {
        for (col, h_inv) in inverses.iter().enumerate() {
            if prod_kj.contains(&h_prime.then(h_inv)) {
                rows[row][col / 64] |= 1u64 << (col % 64);
            }
        }
    }
    for r1 in 0..n {
        for r2 in r1 + 1..n {
            let common: u32 =
                (0..words).map(|w| (rows[r1][w] & rows[r2][w]).count_ones()).sum();
            if common >= 2 {
                return true;
            }
        }
    }
    false
}

fn local_screen(members: [&PoolMember; 3]) -> LocalScreen {
    let mut products: HashMap<(usize, usize), HashSet<Permutation>> = HashMap::new();
    for k in 0..3usize {
        for i in 0..3usize {
            if k != i {
                products.insert((k, i), product_set(members[k], members[i]));
            }
        }
    }
    let pairs = [(0usize, 1usize, 2usize), (0, 2, 1), (1, 2, 0)];
    let mut triangle_counts = [0usize; 3];
    for (slot, (i, j, k)) in pairs.into_iter().enumerate() {
        let ki = &products[&(k, i)];
        let kj = &products[&(k, j)];
        let common = ki.iter().filter(|x| kj.contains(*x)).count();
        debug_assert_eq!(common % members[k].elements.len(), 0);
        triangle_counts[slot] = common / members[k].elements.len();
    }
    if triangle_counts.iter().any(|&c| c == 0) {
        return LocalScreen { triangle_counts, four_cycle_free: false };
    }
    let four_cycle_free =
        (0..3).all(|part| !link_has_four_cycle(members, &products, part));
    LocalScreen { triangle_counts, four_cycle_free }
}

// ---------------------------------------------------------------------------
// Assembled actions and environments
// ---------------------------------------------------------------------------

/// The vertex map induced by a triple symmetry: coset `V_i r` of part `i`
/// goes to the coset of part `sigma(i)` containing the automorphic image of
/// its representative.
fn symmetry_vertex_map(
    cc: &CosetComplex,
    shape: &ProductShape,
    symmetry: &TripleSymmetry,
) -> Result<Permutation> {
    let mut images = vec![0u32; cc.complex.vertex_count()];
    for part in 0..3usize {
        let target_part = symmetry.sigma[part];
        let offset = cc.part_offset(part) as usize;
        let target_offset = cc.part_offset(target_part);
        for index in 0..cc.spaces[part].len() {
            let image = symmetry.apply(shape, cc.spaces[part].representative(index))?;
            let target_index = cc.spaces[target_part]
                .coset_of(&image)
                .ok_or_else(|| Error::domain("automorphism image left the ambient group"))?;
            images[offset + index] = target_offset + target_index as u32;
        }
    }
    Permutation::from_images(images)
}

/// Right multiplication by the ambient generators plus the vertex maps of
/// the given symmetries, as one action on the complex.
fn combined_action(
    built: &BuiltGroup,
    cc: &CosetComplex,
    shape: Option<&ProductShape>,
    symmetries: &[TripleSymmetry],
) -> Result<(VertexAction, Vec<[usize; 3]>)> {
    let mut maps = Vec::new();
    for g in built.group.generators() {
        maps.push(cc.vertex_map_of(g)?);
    }
    let mut sigmas = Vec::new();
    if let Some(shape) = shape {
        for symmetry in symmetries {
            maps.push(symmetry_vertex_map(cc, shape, symmetry)?);
            sigmas.push(symmetry.sigma);
        }
    }
    let action = VertexAction::new(cc.complex.vertex_count(), maps)?;
    Ok((action, sigmas))
}

fn triple_environment(
    built: &BuiltGroup,
    subgroups: &[PermGroup; 3],
    extended: bool,
) -> Environment {
    let mut conventions = Environment::standard_conventions();
    if extended {
        conventions.push(
            "the recorded action combines right multiplication with vertex maps of \
             ambient-group automorphisms permuting the three subgroups"
                .to_string(),
        );
    }
    Environment {
        group: built.description.clone(),
        subgroup_generators: subgroups
            .iter()
            .map(|h| h.generators().iter().map(|g| g.cycles_string()).collect())
            .collect(),
        conventions,
    }
}

// ---------------------------------------------------------------------------
// Coset assembly for an explicit triple
// ---------------------------------------------------------------------------

/// A coset complex with its action: right multiplication, extended by
/// subgroup-permuting symmetries whenever the ambient shape admits them.
pub struct AssembledCoset {
    pub coset: CosetComplex,
    pub action: VertexAction,
    /// Part permutations realised by the appended symmetry maps.
    pub symmetries: Vec<[usize; 3]>,
    pub environment: Environment,
}

/// Builds the coset complex of an explicit subgroup triple and attaches
/// the richest action this crate knows how to construct for it.
pub fn assemble_coset(built: &BuiltGroup, subgroups: [PermGroup; 3]) -> Result<AssembledCoset> {
    for h in &subgroups {
        if !built.group.is_subgroup(h) {
            return Err(Error::input(
                "each subgroup must have the ambient degree and generators inside the group",
            ));
        }
    }
    let shape = product_shape(built);
    let cc = coset_complex(&built.group, &subgroups)?;
    let mut symmetries = Vec::new();
    if let Some(shape) = &shape {
        let members: Vec<PoolMember> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| pool_member(Some(shape), i, h.clone()))
            .collect::<Result<_>>()?;
        if members.iter().all(|m| m.profile.is_some()) {
            symmetries = triple_symmetries(
                shape,
                [
                    members[0].profile.as_ref().unwrap(),
                    members[1].profile.as_ref().unwrap(),
                    members[2].profile.as_ref().unwrap(),
                ],
                [&members[0].set, &members[1].set, &members[2].set],
            )?;
        }
    }
    let (action, sigmas) = combined_action(built, &cc, shape.as_ref(), &symmetries)?;
    let environment = triple_environment(built, &subgroups, !sigmas.is_empty());
    Ok(AssembledCoset { coset: cc, action, symmetries: sigmas, environment })
}

// ---------------------------------------------------------------------------
// Searching for certified triples
// ---------------------------------------------------------------------------

/// What to search for: subgroups of the given order, abelian or not, and
/// how many of them make one candidate tuple (always three here).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub order: u64,
    pub nonabelian: bool,
    pub count: usize,
}

/// How far each candidate got through the filter chain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Conjugacy classes of subgroups with the requested order and kind.
    pub class_count: usize,
    /// All class members considered as triple entries.
    pub pool_size: usize,
    pub triples_considered: usize,
    pub pairwise_trivial: usize,
    pub generating: usize,
    /// Triples whose part permutation symmetries generate the full
    /// symmetric group (always counted when no extension shape applies).
    pub symmetric: usize,
    pub local_screen_passed: usize,
    pub complexes_built: usize,
    pub certificates_attempted: usize,
}

/// A triple whose complex passed every certificate premise.
pub struct CertifiedTriple {
    pub subgroups: [PermGroup; 3],
    pub coset: CosetComplex,
    pub action: VertexAction,
    /// Part permutations realised by the appended symmetry maps.
    pub symmetries: Vec<[usize; 3]>,
    pub certificate: Certificate,
    /// Triangle orbits under right multiplication alone, which preserves
    /// the three parts; the extended action may merge these orbits.
    pub plain_triangle_orbits: Vec<TriangleOrbit>,
}

/// Outcome of a triple search: the class representatives, the filter
/// statistics, and the first certified triple in canonical order, if any.
pub struct TripleSearch {
    pub representatives: Vec<PermGroup>,
    pub stats: SearchStats,
    pub certified: Option<CertifiedTriple>,
}

/// Searches subgroup triples of the ambient group for one whose coset
/// complex passes every certificate premise, scanning candidates in a
/// fixed canonical order so the outcome is deterministic.
///
/// Candidates are one subgroup per conjugacy-class representative in the
/// first slot and arbitrary class members in the other two; every triple is
/// simultaneously conjugate to such a normalised one, and conjugate triples
/// have isomorphic complexes.  Filters run cheapest first: pairwise trivial
/// intersections, generation of the whole group, existence of a full set of
/// subgroup-permuting symmetries (on extension shapes), and the identity
/// link screen; only survivors get a complex, an action, and a certificate.
pub fn certified_triple_search(
    built: &BuiltGroup,
    spec: &SearchSpec,
    options: &CertifyOptions,
) -> Result<TripleSearch> {
    if spec.count != 3 {
        return Err(Error::input("the coset construction takes exactly three subgroups"));
    }
    let filter = if spec.nonabelian { SubgroupFilter::Nonabelian } else { SubgroupFilter::Any };
    let representatives = find_subgroups(&built.group, spec.order, filter)?;
    let shape = product_shape(built);
    let mut members: Vec<PoolMember> = representatives
        .iter()
        .enumerate()
        .map(|(class, g)| pool_member(shape.as_ref(), class, g.clone()))
        .collect::<Result<_>>()?;
    let rep_count = members.len();
    for class in 0..rep_count {
        for conjugate in conjugacy_class(&built.group, &members[class].group)? {
            let member = pool_member(shape.as_ref(), class, conjugate)?;
            if member.set != members[class].set {
                members.push(member);
            }
        }
    }
    let pool_size = members.len();
    let mut stats = SearchStats {
        class_count: rep_count,
        pool_size,
        ..SearchStats::default()
    };
    let group_order = built.group.order();
    let degree = built.group.degree();
    let mut trivial_memo: HashMap<(usize, usize), bool> = HashMap::new();
    let mut generate_memo: HashMap<(usize, usize), bool> = HashMap::new();
    let pair_key = |a: usize, b: usize| (a.min(b), a.max(b));

    for r in 0..rep_count {
        for i in 0..pool_size {
            if members[i].class < r {
                continue;
            }
            for j in i..pool_size {
                if members[j].class < r {
                    continue;
                }
                stats.triples_considered += 1;
                let trivial = [(r, i), (r, j), (i, j)].into_iter().all(|(a, b)| {
                    *trivial_memo
                        .entry(pair_key(a, b))
                        .or_insert_with(|| a != b && pair_trivial(&members, a, b))
                });
                if !trivial {
                    continue;
                }
                stats.pairwise_trivial += 1;
                let mut pair_generates = |a: usize, b: usize| -> Result<bool> {
                    if let Some(&known) = generate_memo.get(&pair_key(a, b)) {
                        return Ok(known);
                    }
                    let mut gens = members[a].group.generators().to_vec();
                    gens.extend_from_slice(members[b].group.generators());
                    let generated = PermGroup::new(degree, gens)?.order() == group_order;
                    generate_memo.insert(pair_key(a, b), generated);
                    Ok(generated)
                };
                let generates = pair_generates(r, i)?
                    || pair_generates(r, j)?
                    || pair_generates(i, j)?
                    || {
                        let mut gens = members[r].group.generators().to_vec();
                        gens.extend_from_slice(members[i].group.generators());
                        gens.extend_from_slice(members[j].group.generators());
                        PermGroup::new(degree, gens)?.order() == group_order
                    };
                if !generates {
                    continue;
                }
                stats.generating += 1;
                let mut symmetries: Vec<TripleSymmetry> = Vec::new();
                if let Some(shape) = &shape {
                    let (Some(pr), Some(pi), Some(pj)) = (
                        members[r].profile.as_ref(),
                        members[i].profile.as_ref(),
                        members[j].profile.as_ref(),
                    ) else {
                        continue;
                    };
                    symmetries = triple_symmetries(
                        shape,
                        [pr, pi, pj],
                        [&members[r].set, &members[i].set, &members[j].set],
                    )?;
                    if !sigma_closure_is_full(&symmetries) {
                        continue;
                    }
                }
                stats.symmetric += 1;
                let screen = local_screen([&members[r], &members[i], &members[j]]);
                if screen.triangle_counts.iter().any(|&c| c == 0) || !screen.four_cycle_free {
                    continue;
                }
                stats.local_screen_passed += 1;
                let subgroups = [
                    members[r].group.clone(),
                    members[i].group.clone(),
                    members[j].group.clone(),
                ];
                let cc = coset_complex(&built.group, &subgroups)?;
                stats.complexes_built += 1;
                if !cc.complex.is_connected()
                    || !cc.complex.every_edge_in_a_triangle()
                    || !cc.complex.is_flag()
                {
                    continue;
                }
                let (action, sigmas) =
                    combined_action(built, &cc, shape.as_ref(), &symmetries)?;
                if !action.respects(&cc.complex) {
                    continue;
                }
                if shape.is_some() && action.directed_edge_orbit_count(&cc.complex) != 1 {
                    continue;
                }
                stats.certificates_attempted += 1;
                let environment = triple_environment(built, &subgroups, !sigmas.is_empty());
                let certificate = certify(&cc.complex, Some(&action), environment, options)?;
                if certificate.premises.iter().all(|p| p.status == CheckStatus::Pass) {
                    let plain_triangle_orbits = cc
                        .right_multiplication_action(built.group.generators())?
                        .triangle_orbits(&cc.complex);
                    return Ok(TripleSearch {
                        representatives,
                        stats,
                        certified: Some(CertifiedTriple {
                            subgroups,
                            coset: cc,
                            action,
                            symmetries: sigmas,
                            certificate,
                            plain_triangle_orbits,
                        }),
                    });
                }
            }
        }
    }
    Ok(TripleSearch { representatives, stats, certified: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_groups_track_factors_and_descriptions() {
        let product = BuiltGroup::product(vec![
            BuiltGroup::symmetric(2).unwrap(),
            BuiltGroup::cyclic(3).unwrap(),
        ])
        .unwrap();
        assert_eq!(product.description(), "direct_product(symmetric(2), cyclic(3))");
        assert_eq!(product.group().order(), 6);
        assert_eq!(product.group().degree(), 5);
        assert_eq!(product.factors()[0].offset, 0);
        assert_eq!(product.factors()[1].offset, 2);

        let nested = BuiltGroup::product(vec![product, BuiltGroup::cyclic(2).unwrap()]).unwrap();
        assert_eq!(nested.factors().len(), 3);
        assert_eq!(nested.factors()[2].offset, 5);
        assert_eq!(
            nested.description(),
            "direct_product(direct_product(symmetric(2), cyclic(3)), cyclic(2))"
        );
        assert!(BuiltGroup::symmetric(0).is_err());
        assert!(BuiltGroup::product(vec![BuiltGroup::cyclic(2).unwrap()]).is_err());
    }

    #[test]
    fn fractional_linear_maps_interpolate_three_points() {
        let p = 13u64;
        let map = mobius_through(p, [0, 1, 13], [2, 5, 7]).unwrap();
        assert_eq!(map.apply(0), 2);
        assert_eq!(map.apply(1), 5);
        assert_eq!(map.apply(13), 7);
        assert!(PermGroup::pgl2(13).unwrap().contains(&map));
        assert!(mobius_through(p, [0, 0, 1], [2, 5, 7]).is_err());
        assert!(mobius_through(p, [0, 1, 14], [2, 5, 7]).is_err());
    }

    #[test]
    fn fractional_linear_interpolation_matches_brute_force() {
        let p = 5u64;
        let pgl = PermGroup::pgl2(p).unwrap();
        let elements = pgl.elements().unwrap().to_vec();
        for (source, target) in
            [([0u64, 1, 5], [3u64, 5, 0]), ([2, 4, 1], [5, 2, 3]), ([0, 1, 2], [0, 1, 2])]
        {
            let map = mobius_through(p, source, target).unwrap();
            let matches: Vec<&Permutation> = elements
                .iter()
                .filter(|g| {
                    source
                        .iter()
                        .zip(target.iter())
                        .all(|(s, t)| g.apply(*s as u32) as u64 == *t)
                })
                .collect();
            assert_eq!(matches.len(), 1);
            assert_eq!(*matches[0], map);
        }
    }

    #[test]
    fn linear_solver_finds_exactly_the_consistent_maps() {
        let v = [[1u64, 0], [0, 1], [2, 2]];
        let swapped = [[0u64, 1], [1, 0], [2, 2]];
        let a = solve_linear(3, &v, &swapped).unwrap();
        for k in 0..3 {
            assert_eq!(a.apply_vector(v[k]), swapped[k]);
        }
        for sigma in SIGMAS {
            let w = [v[sigma[0]], v[sigma[1]], v[sigma[2]]];
            assert!(solve_linear(3, &v, &w).is_some());
        }
        let bad = [[1u64, 0], [0, 1], [1, 1]];
        let rotated = [bad[1], bad[2], bad[0]];
        assert!(solve_linear(3, &bad, &rotated).is_none());
    }

    #[test]
    fn product_automorphisms_are_homomorphisms() {
        let built = BuiltGroup::product(vec![
            BuiltGroup::psl2(13).unwrap(),
            BuiltGroup::cyclic(3).unwrap(),
            BuiltGroup::cyclic(3).unwrap(),
        ])
        .unwrap();
        let shape = product_shape(&built).unwrap();
        let line = mobius_through(13, [0, 1, 13], [1, 2, 5]).unwrap();
        let symmetry = TripleSymmetry {
            sigma: [0, 1, 2],
            line_inv: line.inverse(),
            line,
            matrix: Mat2 { a: 1, b: 1, c: 0, d: 1, m: 3 },
        };
        let elements = built.group().elements().unwrap();
        let step = elements.len() / 17;
        for t in 0..16 {
            let g = &elements[1 + t * step];
            let h = &elements[2 + t * step / 2];
            let gh = symmetry.apply(&shape, &g.then(h)).unwrap();
            let images = symmetry.apply(&shape, g).unwrap().then(&symmetry.apply(&shape, h).unwrap());
            assert_eq!(gh, images);
            assert!(built.group().contains(&symmetry.apply(&shape, g).unwrap()));
        }
    }

    #[test]
    fn coset_assembly_without_extension_shape_uses_right_multiplication() {
        let built = BuiltGroup::symmetric(3).unwrap();
        let subgroups = [
            PermGroup::new(3, vec![Permutation::parse_cycles("(1 2)", 3).unwrap()]).unwrap(),
            PermGroup::new(3, vec![Permutation::parse_cycles("(1 3)", 3).unwrap()]).unwrap(),
            PermGroup::new(3, vec![Permutation::parse_cycles("(2 3)", 3).unwrap()]).unwrap(),
        ];
        let assembled = assemble_coset(&built, subgroups).unwrap();
        let complex = &assembled.coset.complex;
        assert_eq!(complex.vertex_count(), 9);
        assert_eq!(complex.edge_count(), 18);
        assert_eq!(complex.triangle_count(), 6);
        assert!(assembled.symmetries.is_empty());
        assert!(assembled.action.respects(complex));
        assert_eq!(assembled.action.directed_edge_orbit_count(complex), 6);

        let wrong_degree =
            PermGroup::new(4, vec![Permutation::parse_cycles("(1 2)", 4).unwrap()]).unwrap();
        let bad = [
            wrong_degree,
            PermGroup::new(3, vec![Permutation::parse_cycles("(1 3)", 3).unwrap()]).unwrap(),
            PermGroup::new(3, vec![Permutation::parse_cycles("(2 3)", 3).unwrap()]).unwrap(),
        ];
        assert!(assemble_coset(&built, bad).is_err());
    }

    #[test]
    fn identity_link_screen_matches_the_built_complex() {
        let built = BuiltGroup::symmetric(3).unwrap();
        let groups = [
            PermGroup::new(3, vec![Permutation::parse_cycles("(1 2)", 3).unwrap()]).unwrap(),
            PermGroup::new(3, vec![Permutation::parse_cycles("(1 3)", 3).unwrap()]).unwrap(),
            PermGroup::new(3, vec![Permutation::parse_cycles("(2 3)", 3).unwrap()]).unwrap(),
        ];
        let members: Vec<PoolMember> = groups
            .iter()
            .enumerate()
            .map(|(class, g)| pool_member(None, class, g.clone()).unwrap())
            .collect();
        let screen = local_screen([&members[0], &members[1], &members[2]]);
        let cc = coset_complex(built.group(), &groups).unwrap();
        let per_edge = cc.complex.triangles_per_edge();
        let identity = [cc.vertex_of(0, 0), cc.vertex_of(1, 0), cc.vertex_of(2, 0)];
        for (slot, (a, b)) in [(0usize, 1usize), (0, 2), (1, 2)].into_iter().enumerate() {
            let edge = cc.complex.edge_id(identity[a], identity[b]).unwrap();
            assert_eq!(screen.triangle_counts[slot], per_edge[edge as usize] as usize);
        }
        assert!(screen.four_cycle_free);
        for v in identity {
            let (graph, _) = cc.complex.link(v);
            assert!(graph.girth().map_or(true, |g| g >= 6));
        }
    }

    #[test]
    fn symmetries_permute_parts_and_extend_the_action() {
        let built = BuiltGroup::product(vec![
            BuiltGroup::psl2(7).unwrap(),
            BuiltGroup::cyclic(3).unwrap(),
            BuiltGroup::cyclic(3).unwrap(),
        ])
        .unwrap();
        let shape = product_shape(&built).unwrap();
        let representatives =
            find_subgroups(built.group(), 21, SubgroupFilter::Nonabelian).unwrap();
        assert_eq!(representatives.len(), 9);
        let mut pool: Vec<PoolMember> = Vec::new();
        for (class, rep) in representatives.iter().enumerate() {
            for conjugate in conjugacy_class(built.group(), rep).unwrap() {
                pool.push(pool_member(Some(&shape), class, conjugate).unwrap());
            }
        }
        assert_eq!(pool.len(), 72);
        assert!(pool.iter().all(|m| m.profile.is_some()));

        // Pick three members with pairwise distinct fixed points and
        // exponent vectors summing to zero, so a full set of symmetries
        // must exist.
        let want = [[1u64, 0], [0, 1], [2, 2]];
        let mut chosen: Vec<&PoolMember> = Vec::new();
        for target in want {
            let next = pool
                .iter()
                .find(|m| {
                    let profile = m.profile.as_ref().unwrap();
                    profile.v == target
                        && chosen
                            .iter()
                            .all(|c| c.profile.as_ref().unwrap().omega != profile.omega)
                })
                .unwrap();
            chosen.push(next);
        }
        let profiles =
            [0, 1, 2].map(|i| chosen[i].profile.as_ref().unwrap());
        let sets = [0, 1, 2].map(|i| &chosen[i].set);
        let symmetries = triple_symmetries(&shape, profiles, sets).unwrap();
        assert!(sigma_closure_is_full(&symmetries));

        let subgroups =
            [chosen[0].group.clone(), chosen[1].group.clone(), chosen[2].group.clone()];
        let cc = coset_complex(built.group(), &subgroups).unwrap();
        let (action, sigmas) =
            combined_action(&built, &cc, Some(&shape), &symmetries).unwrap();
        assert_eq!(sigmas.len(), symmetries.len());
        assert!(action.respects(&cc.complex));
        assert_eq!(action.directed_edge_orbit_count(&cc.complex), 1);
    }

    #[test]
    #[ignore = "timing probe for the full search; run with --ignored"]
    fn probe_search_phases() {
        use std::time::Instant;
        let t0 = Instant::now();
        let built = BuiltGroup::product(vec![
            BuiltGroup::psl2(13).unwrap(),
            BuiltGroup::cyclic(3).unwrap(),
            BuiltGroup::cyclic(3).unwrap(),
        ])
        .unwrap();
        let shape = product_shape(&built).unwrap();
        let representatives =
            find_subgroups(built.group(), 39, SubgroupFilter::Nonabelian).unwrap();
        eprintln!("[{:?}] {} classes", t0.elapsed(), representatives.len());
        let mut pool: Vec<PoolMember> = Vec::new();
        for (class, rep) in representatives.iter().enumerate() {
            for conjugate in conjugacy_class(built.group(), rep).unwrap() {
                pool.push(pool_member(Some(&shape), class, conjugate).unwrap());
            }
        }
        eprintln!("[{:?}] pool {}", t0.elapsed(), pool.len());
        // Stage timings over the scan, stopping at the first full-screen triple.
        let mut n_trivial = 0usize;
        let mut n_sym = 0usize;
        let mut found: Option<(usize, usize, usize)> = None;
        'outer: for r in 0..pool.len() {
            if r > 0 && pool[r].class == pool[r - 1].class {
                continue;
            }
            for i in 0..pool.len() {
                for j in i..pool.len() {
                    if !(pair_trivial(&pool, r, i)
                        && pair_trivial(&pool, r, j)
                        && pair_trivial(&pool, i, j))
                    {
                        continue;
                    }
                    n_trivial += 1;
                    let profiles = [
                        pool[r].profile.as_ref().unwrap(),
                        pool[i].profile.as_ref().unwrap(),
                        pool[j].profile.as_ref().unwrap(),
                    ];
                    let sets = [&pool[r].set, &pool[i].set, &pool[j].set];
                    let symmetries = triple_symmetries(&shape, profiles, sets).unwrap();
                    if !sigma_closure_is_full(&symmetries) {
                        continue;
                    }
                    n_sym += 1;
                    let screen = local_screen([&pool[r], &pool[i], &pool[j]]);
                    if screen.triangle_counts.iter().any(|&c| c == 0) || !screen.four_cycle_free
                    {
                        continue;
                    }
                    eprintln!(
                        "[{:?}] first screened triple ({r},{i},{j}) counts {:?} after trivial={} sym={}",
                        t0.elapsed(),
                        screen.triangle_counts,
                        n_trivial,
                        n_sym
                    );
                    found = Some((r, i, j));
                    break 'outer;
                }
            }
        }
        let (r, i, j) = found.expect("no screened triple");
        let subgroups =
            [pool[r].group.clone(), pool[i].group.clone(), pool[j].group.clone()];
        let t1 = Instant::now();
        let cc = coset_complex(built.group(), &subgroups).unwrap();
        eprintln!(
            "[{:?}] complex built in {:?}: v={} e={} t={}",
            t0.elapsed(),
            t1.elapsed(),
            cc.complex.vertex_count(),
            cc.complex.edge_count(),
            cc.complex.triangle_count()
        );
        let t2 = Instant::now();
        let symmetries = triple_symmetries(
            &shape,
            [
                pool[r].profile.as_ref().unwrap(),
                pool[i].profile.as_ref().unwrap(),
                pool[j].profile.as_ref().unwrap(),
            ],
            [&pool[r].set, &pool[i].set, &pool[j].set],
        )
        .unwrap();
        let (action, _) = combined_action(&built, &cc, Some(&shape), &symmetries).unwrap();
        eprintln!("[{:?}] action assembled in {:?}", t0.elapsed(), t2.elapsed());
        let t3 = Instant::now();
        let orbits = action.directed_edge_orbit_count(&cc.complex);
        eprintln!("[{:?}] directed edge orbits = {orbits} in {:?}", t0.elapsed(), t3.elapsed());
        let t4 = Instant::now();
        let respects = action.respects(&cc.complex);
        eprintln!("[{:?}] respects = {respects} in {:?}", t0.elapsed(), t4.elapsed());
        let t5 = Instant::now();
        let reports =
            crate::certify::survey_links(&cc.complex, &CertifyOptions::default()).unwrap();
        let girth = crate::certify::min_link_girth(&reports);
        eprintln!("[{:?}] link survey girth {girth:?} in {:?}", t0.elapsed(), t5.elapsed());
        let t6 = Instant::now();
        let homology = crate::homology::complex_homology(&cc.complex).unwrap();
        eprintln!(
            "[{:?}] homology {:?} in {:?}",
            t0.elapsed(),
            homology.iter().map(|h| h.display()).collect::<Vec<_>>(),
            t6.elapsed()
        );
    }

    #[test]
    fn search_rejects_malformed_requests() {
        let built = BuiltGroup::symmetric(4).unwrap();
        let spec = SearchSpec { order: 6, nonabelian: true, count: 2 };
        assert!(certified_triple_search(&built, &spec, &CertifyOptions::default()).is_err());
        let spec = SearchSpec { order: 0, nonabelian: true, count: 3 };
        assert!(certified_triple_search(&built, &spec, &CertifyOptions::default()).is_err());
    }
}
