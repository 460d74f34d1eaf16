//! Finite balls of a biregular tree with legal edge labelings, local
//! actions, and enumeration of ball maps whose local actions lie in
//! prescribed permutation groups.
//!
//! A ball of radius `r` in the `(|X|, |Y|)`-biregular tree is rooted, with
//! vertices alternating between an `X`-side (degree `|X|`) and a `Y`-side
//! (degree `|Y|`); vertices at depth `r` are truncated and carry no
//! local-action constraint. A legal labeling assigns a label to every
//! directed edge so that the labels leaving an `X`-vertex biject onto `X`
//! (likewise `Y`), while the labels arriving at any fixed vertex are all
//! equal. Conjugating a ball map by the labeling at a vertex yields its
//! local action there, and [`enumerate_universal`] lists every ball map
//! whose local actions at interior vertices lie in `M` on the `X`-side and
//! `N` on the `Y`-side.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Which side of the bipartition a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeSide {
    X,
    Y,
}

impl TreeSide {
    pub fn other(self) -> TreeSide {
        match self {
            TreeSide::X => TreeSide::Y,
            TreeSide::Y => TreeSide::X,
        }
    }
}

/// A rooted radius-`r` ball of the biregular tree, vertices numbered in
/// breadth-first order with the root at `0`.
#[derive(Clone, Debug)]
pub struct BiregularBall {
    radius: usize,
    x_degree: usize,
    y_degree: usize,
    parent: Vec<Option<u32>>,
    children: Vec<Vec<u32>>,
    depth: Vec<usize>,
    side: Vec<TreeSide>,
}

/// Builds the ball of the given radius, rooted on the chosen side.
pub fn build_ball(
    x_degree: usize,
    y_degree: usize,
    radius: usize,
    root_side: TreeSide,
) -> Result<BiregularBall> {
    if x_degree < 2 || y_degree < 2 {
        return Err(Error::input(format!(
            "biregular tree needs both degrees at least 2, got ({x_degree}, {y_degree})"
        )));
    }
    let mut ball = BiregularBall {
        radius,
        x_degree,
        y_degree,
        parent: vec![None],
        children: vec![Vec::new()],
        depth: vec![0],
        side: vec![root_side],
    };
    let mut frontier = vec![0u32];
    for d in 1..=radius {
        let mut next = Vec::new();
        for &v in &frontier {
            let side = ball.side[v as usize].other();
            // The root spends its whole degree on children; deeper vertices
            // keep one edge for the parent.
            let count = if d == 1 {
                ball.degree_of(ball.side[v as usize])
            } else {
                ball.degree_of(ball.side[v as usize]) - 1
            };
            for _ in 0..count {
                let w = ball.parent.len() as u32;
                ball.parent.push(Some(v));
                ball.children.push(Vec::new());
                ball.depth.push(d);
                ball.side.push(side);
                ball.children[v as usize].push(w);
                next.push(w);
            }
        }
        frontier = next;
    }
    Ok(ball)
}

impl BiregularBall {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn x_degree(&self) -> usize {
        self.x_degree
    }

    pub fn y_degree(&self) -> usize {
        self.y_degree
    }

    pub fn side(&self, v: u32) -> TreeSide {
        self.side[v as usize]
    }

    pub fn depth(&self, v: u32) -> usize {
        self.depth[v as usize]
    }

    pub fn parent(&self, v: u32) -> Option<u32> {
        self.parent[v as usize]
    }

    pub fn children(&self, v: u32) -> &[u32] {
        &self.children[v as usize]
    }

    /// Degree of the given side in the full tree.
    pub fn degree_of(&self, side: TreeSide) -> usize {
        match side {
            TreeSide::X => self.x_degree,
            TreeSide::Y => self.y_degree,
        }
    }

    /// Interior vertices have their full star inside the ball.
    pub fn is_interior(&self, v: u32) -> bool {
        self.depth[v as usize] < self.radius
    }

    /// All out-neighbors of `v` (parent first, then children).
    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        if let Some(p) = self.parent[v as usize] {
            out.push(p);
        }
        out.extend_from_slice(&self.children[v as usize]);
        out
    }

    /// Is `g` a side-preserving automorphism of the ball? Any graph
    /// automorphism of a radius-`r` ball fixes the root (the unique vertex
    /// of minimal eccentricity), so this also forces depth preservation.
    pub fn is_ball_map(&self, g: &Permutation) -> bool {
        if g.degree() != self.vertex_count() {
            return false;
        }
        (0..self.vertex_count() as u32).all(|v| {
            let gv = g.apply(v);
            self.side[v as usize] == self.side[gv as usize]
                && self.depth[v as usize] == self.depth[gv as usize]
                && match self.parent[v as usize] {
                    None => gv == v,
                    Some(p) => self.parent[gv as usize] == Some(g.apply(p)),
                }
        })
    }
}

// ---------------------------------------------------------------------------
// Legal labelings
// ---------------------------------------------------------------------------

/// Labels on the directed edges of a ball: `up[v]` labels the edge from `v`
/// to its parent, `down[v][i]` the edge from `v` to its `i`-th child.
/// Labels leaving a vertex are drawn from its own side's label set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegalLabeling {
    up: Vec<Option<u32>>,
    down: Vec<Vec<u32>>,
}

impl LegalLabeling {
    /// The label on the directed edge from `v` to `w`, when adjacent.
    pub fn label(&self, ball: &BiregularBall, v: u32, w: u32) -> Option<u32> {
        if ball.parent(v) == Some(w) {
            return self.up[v as usize];
        }
        ball.children(v)
            .iter()
            .position(|&c| c == w)
            .map(|i| self.down[v as usize][i])
    }

    /// Overwrites the label on the directed edge from `v` to `w`.
    pub fn set_label(&mut self, ball: &BiregularBall, v: u32, w: u32, label: u32) -> Result<()> {
        if ball.parent(v) == Some(w) {
            self.up[v as usize] = Some(label);
            return Ok(());
        }
        match ball.children(v).iter().position(|&c| c == w) {
            Some(i) => {
                self.down[v as usize][i] = label;
                Ok(())
            }
            None => Err(Error::input(format!("({v}, {w}) is not an edge of the ball"))),
        }
    }

    /// Applies `sigma` to every label leaving an `X`-vertex and `tau` to
    /// every label leaving a `Y`-vertex.
    pub fn relabeled(
        &self,
        ball: &BiregularBall,
        sigma: &Permutation,
        tau: &Permutation,
    ) -> Result<LegalLabeling> {
        if sigma.degree() != ball.x_degree() || tau.degree() != ball.y_degree() {
            return Err(Error::input("label permutations must match the side degrees"));
        }
        let map = |side: TreeSide, label: u32| match side {
            TreeSide::X => sigma.apply(label),
            TreeSide::Y => tau.apply(label),
        };
        let mut out = self.clone();
        for v in 0..ball.vertex_count() {
            let side = ball.side(v as u32);
            if let Some(l) = out.up[v] {
                out.up[v] = Some(map(side, l));
            }
            for l in &mut out.down[v] {
                *l = map(side, *l);
            }
        }
        Ok(out)
    }
}

/// The first broken labeling axiom, with the offending vertex and labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelingViolation {
    /// The labels leaving an interior vertex do not biject onto its side's
    /// label set.
    OutLabelsNotBijective { vertex: u32, labels: Vec<u32> },
    /// The labels arriving at a vertex are not all equal; pairs are
    /// `(origin, label)`.
    IncomingNotConstant { vertex: u32, incoming: Vec<(u32, u32)> },
}

/// Checks the three labeling axioms in order: out-label bijectivity on
/// interior `X`-vertices, then on interior `Y`-vertices, then incoming
/// constancy everywhere. Returns the first violation, or `None` when legal.
pub fn validate_labeling(ball: &BiregularBall, l: &LegalLabeling) -> Option<LabelingViolation> {
    for want in [TreeSide::X, TreeSide::Y] {
        for v in 0..ball.vertex_count() as u32 {
            if ball.side(v) != want || !ball.is_interior(v) {
                continue;
            }
            let mut labels: Vec<u32> = ball
                .neighbors(v)
                .iter()
                .map(|&w| l.label(ball, v, w).unwrap())
                .collect();
            let expected = ball.degree_of(want) as u32;
            let mut sorted = labels.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != expected as usize || sorted.iter().any(|&x| x >= expected) {
                labels.sort_unstable();
                return Some(LabelingViolation::OutLabelsNotBijective { vertex: v, labels });
            }
        }
    }
    for v in 0..ball.vertex_count() as u32 {
        let incoming: Vec<(u32, u32)> = ball
            .neighbors(v)
            .iter()
            .map(|&w| (w, l.label(ball, w, v).unwrap()))
            .collect();
        if incoming.windows(2).any(|pair| pair[0].1 != pair[1].1) {
            return Some(LabelingViolation::IncomingNotConstant { vertex: v, incoming });
        }
    }
    None
}

/// The canonical legal labeling: the root's incoming label is `0`, and each
/// vertex hands the labels of its side's set to its children in increasing
/// order, skipping the label already spent on its parent edge.
pub fn canonical_labeling(ball: &BiregularBall) -> LegalLabeling {
    let n = ball.vertex_count();
    let mut labeling = LegalLabeling {
        up: vec![None; n],
        down: (0..n).map(|v| vec![0; ball.children(v as u32).len()]).collect(),
    };
    // address[v] = the constant label arriving at v.
    let mut address = vec![0u32; n];
    for v in 0..n as u32 {
        let spent = match ball.parent(v) {
            Some(p) => {
                labeling.up[v as usize] = Some(address[p as usize]);
                Some(address[p as usize])
            }
            None => None,
        };
        let mut next = 0u32;
        for i in 0..ball.children(v).len() {
            if Some(next) == spent {
                next += 1;
            }
            labeling.down[v as usize][i] = next;
            address[ball.children(v)[i] as usize] = next;
            next += 1;
        }
    }
    labeling
}

// ---------------------------------------------------------------------------
// Local actions
// ---------------------------------------------------------------------------

/// Image labels of the star of `v` under a partially assigned vertex map;
/// `None` when the star is not fully and consistently mapped.
fn star_action(
    ball: &BiregularBall,
    l: &LegalLabeling,
    images: &[u32],
    v: u32,
) -> Option<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    let gv = images[v as usize];
    if gv == UNSET || !ball.is_interior(v) || !ball.is_interior(gv) {
        return None;
    }
    let degree = ball.degree_of(ball.side(v));
    let mut out = vec![UNSET; degree];
    for w in ball.neighbors(v) {
        let gw = images[w as usize];
        if gw == UNSET {
            return None;
        }
        let a = l.label(ball, v, w)? as usize;
        let b = l.label(ball, gv, gw)?;
        if a >= degree || out[a] != UNSET {
            return None;
        }
        out[a] = b;
    }
    Some(out)
}

/// The local action of a ball map at an interior vertex: conjugate the map
/// by the labeling to get a permutation of the vertex's side label set.
pub fn local_action(
    ball: &BiregularBall,
    l: &LegalLabeling,
    g: &Permutation,
    v: u32,
) -> Result<Permutation> {
    if g.degree() != ball.vertex_count() {
        return Err(Error::input("map degree does not match the ball"));
    }
    if !ball.is_interior(v) {
        return Err(Error::domain(format!(
            "vertex {v} is on the truncation boundary; its local action is undefined"
        )));
    }
    if !ball.is_interior(g.apply(v)) {
        return Err(Error::domain(format!(
            "image vertex {} is on the truncation boundary",
            g.apply(v)
        )));
    }
    let images = star_action(ball, l, g.images(), v).ok_or_else(|| {
        Error::domain(format!("the labeling does not induce a bijection at vertex {v}"))
    })?;
    Permutation::from_images(images)
}

/// Does every interior local action of `g` lie in `m` (on the `X`-side) or
/// `n` (on the `Y`-side)?
pub fn is_universal_element(
    ball: &BiregularBall,
    l: &LegalLabeling,
    g: &Permutation,
    m: &PermGroup,
    n: &PermGroup,
) -> Result<bool> {
    check_local_groups(ball, m, n)?;
    if g.degree() != ball.vertex_count() {
        return Ok(false);
    }
    for v in 0..ball.vertex_count() as u32 {
        if !ball.is_interior(v) {
            continue;
        }
        let action = match star_action(ball, l, g.images(), v) {
            Some(images) => match Permutation::from_images(images) {
                Ok(p) => p,
                Err(_) => return Ok(false),
            },
            None => return Ok(false),
        };
        let group = match ball.side(v) {
            TreeSide::X => m,
            TreeSide::Y => n,
        };
        if !group.contains(&action) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_local_groups(ball: &BiregularBall, m: &PermGroup, n: &PermGroup) -> Result<()> {
    if m.degree() != ball.x_degree() {
        return Err(Error::input(format!(
            "X-side group has degree {} but the tree has X-degree {}",
            m.degree(),
            ball.x_degree()
        )));
    }
    if n.degree() != ball.y_degree() {
        return Err(Error::input(format!(
            "Y-side group has degree {} but the tree has Y-degree {}",
            n.degree(),
            ball.y_degree()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All ball maps whose interior local actions lie in `m` and `n`, found by
/// depth-first extension in breadth-first vertex order. A vertex's local
/// action is tested as soon as its star is fully mapped, pruning early.
/// With `fix_root`, the root is pinned immediately (it is automatic for
/// radius at least one, since ball automorphisms preserve depth).
pub fn enumerate_universal(
    ball: &BiregularBall,
    l: &LegalLabeling,
    m: &PermGroup,
    n: &PermGroup,
    fix_root: bool,
) -> Result<Vec<Permutation>> {
    if ball.radius() == 0 {
        return Err(Error::input("enumeration needs a ball of radius at least 1"));
    }
    check_local_groups(ball, m, n)?;
    if let Some(violation) = validate_labeling(ball, l) {
        return Err(Error::input(format!("labeling is not legal: {violation:?}")));
    }
    const UNSET: u32 = u32::MAX;
    let n_vertices = ball.vertex_count();
    let mut images = vec![UNSET; n_vertices];
    let mut used = vec![false; n_vertices];
    let mut pending_children: Vec<usize> =
        (0..n_vertices).map(|v| ball.children(v as u32).len()).collect();
    let mut found = Vec::new();
    let _ = fix_root; // The root is forced for every radius >= 1 ball.

    fn extend(
        ball: &BiregularBall,
        l: &LegalLabeling,
        m: &PermGroup,
        n: &PermGroup,
        images: &mut Vec<u32>,
        used: &mut Vec<bool>,
        pending_children: &mut Vec<usize>,
        next: u32,
        found: &mut Vec<Permutation>,
    ) {
        if next as usize == ball.vertex_count() {
            found.push(
                Permutation::from_images(images.clone())
                    .expect("a completed assignment is a bijection"),
            );
            return;
        }
        let candidates: Vec<u32> = match ball.parent(next) {
            None => vec![next],
            Some(p) => ball.children(images[p as usize])
                .iter()
                .copied()
                .filter(|&w| !used[w as usize])
                .collect(),
        };
        for w in candidates {
            images[next as usize] = w;
            used[w as usize] = true;
            let mut ok = true;
            if let Some(p) = ball.parent(next) {
                pending_children[p as usize] -= 1;
                // Once the last child of p is placed, p's star is fully
                // mapped and its local action can be tested.
                if pending_children[p as usize] == 0 && ball.is_interior(p) {
                    ok = match star_action(ball, l, images, p) {
                        Some(action_images) => {
                            let action = Permutation::from_images(action_images)
                                .expect("legal labelings induce bijections");
                            let group = match ball.side(p) {
                                TreeSide::X => m,
                                TreeSide::Y => n,
                            };
                            group.contains(&action)
                        }
                        None => false,
                    };
                }
            }
            if ok {
                extend(ball, l, m, n, images, used, pending_children, next + 1, found);
            }
            if let Some(p) = ball.parent(next) {
                pending_children[p as usize] += 1;
            }
            used[w as usize] = false;
            images[next as usize] = UNSET;
        }
    }

    extend(
        ball,
        l,
        m,
        n,
        &mut images,
        &mut used,
        &mut pending_children,
        0,
        &mut found,
    );
    found.sort();
    Ok(found)
}

/// The set of root local actions over all enumerated root-fixing maps; for
/// a faithful ball (radius at least 2) this equals the prescribed root-side
/// group exactly.
pub fn root_local_action_image(
    ball: &BiregularBall,
    l: &LegalLabeling,
    m: &PermGroup,
    n: &PermGroup,
) -> Result<Vec<Permutation>> {
    if ball.radius() < 2 {
        return Err(Error::input(
            "the root image needs radius at least 2 so depth-1 stars are constrained",
        ));
    }
    let maps = enumerate_universal(ball, l, m, n, true)?;
    let mut out: Vec<Permutation> = maps
        .iter()
        .map(|g| local_action(ball, l, g, 0).expect("root is interior"))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// How many of the maps fix both endpoints of the edge `{u, w}`.
pub fn edge_fixator_size(maps: &[Permutation], u: u32, w: u32) -> usize {
    maps.iter().filter(|g| g.apply(u) == u && g.apply(w) == w).count()
}

/// The largest pointwise edge fixator over all ball edges.
pub fn max_edge_fixator_size(ball: &BiregularBall, maps: &[Permutation]) -> usize {
    let mut max = 0;
    for v in 0..ball.vertex_count() as u32 {
        for &c in ball.children(v) {
            max = max.max(edge_fixator_size(maps, v, c));
        }
    }
    max
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn ball23(radius: usize) -> BiregularBall {
        build_ball(2, 3, radius, TreeSide::X).unwrap()
    }

    /// All side- and parent-structure-preserving bijections, with no
    /// local-action filtering: the brute-force frame for oracle checks.
    fn all_ball_maps(ball: &BiregularBall) -> Vec<Permutation> {
        fn extend(
            ball: &BiregularBall,
            images: &mut Vec<u32>,
            used: &mut Vec<bool>,
            next: u32,
            out: &mut Vec<Permutation>,
        ) {
            if next as usize == ball.vertex_count() {
                out.push(Permutation::from_images(images.clone()).unwrap());
                return;
            }
            let candidates: Vec<u32> = match ball.parent(next) {
                None => vec![next],
                Some(p) => ball
                    .children(images[p as usize])
                    .iter()
                    .copied()
                    .filter(|&w| !used[w as usize])
                    .collect(),
            };
            for w in candidates {
                images[next as usize] = w;
                used[w as usize] = true;
                extend(ball, images, used, next + 1, out);
                used[w as usize] = false;
            }
        }
        let mut images = vec![u32::MAX; ball.vertex_count()];
        let mut used = vec![false; ball.vertex_count()];
        let mut out = Vec::new();
        extend(ball, &mut images, &mut used, 0, &mut out);
        out.sort();
        out
    }

    #[test]
    fn ball_sizes_match_the_geometric_sums() {
        assert_eq!(ball23(0).vertex_count(), 1);
        assert_eq!(ball23(1).vertex_count(), 3);
        assert_eq!(ball23(2).vertex_count(), 7);
        assert_eq!(ball23(3).vertex_count(), 11);
        let rooted_y = build_ball(2, 3, 1, TreeSide::Y).unwrap();
        assert_eq!(rooted_y.vertex_count(), 4);
        assert_eq!(build_ball(3, 3, 2, TreeSide::X).unwrap().vertex_count(), 10);
        assert!(build_ball(1, 3, 2, TreeSide::X).is_err());
    }

    #[test]
    fn ball_structure_is_biregular() {
        let b = ball23(3);
        for v in 0..b.vertex_count() as u32 {
            if b.is_interior(v) {
                assert_eq!(b.neighbors(v).len(), b.degree_of(b.side(v)));
            }
            for &c in b.children(v) {
                assert_eq!(b.side(c), b.side(v).other());
                assert_eq!(b.depth(c), b.depth(v) + 1);
            }
        }
    }

    #[test]
    fn canonical_labelings_are_legal() {
        for radius in 0..4 {
            let b = ball23(radius);
            assert_eq!(validate_labeling(&b, &canonical_labeling(&b)), None);
        }
        let b33 = build_ball(3, 3, 3, TreeSide::Y).unwrap();
        assert_eq!(validate_labeling(&b33, &canonical_labeling(&b33)), None);
    }

    #[test]
    fn swapping_sibling_out_labels_breaks_incoming_constancy() {
        let b = ball23(2);
        let mut l = canonical_labeling(&b);
        // Swap the labels the root sends to its two children.
        let a = l.label(&b, 0, 1).unwrap();
        let c = l.label(&b, 0, 2).unwrap();
        l.set_label(&b, 0, 1, c).unwrap();
        l.set_label(&b, 0, 2, a).unwrap();
        match validate_labeling(&b, &l) {
            Some(LabelingViolation::IncomingNotConstant { vertex, .. }) => {
                assert!(vertex == 1 || vertex == 2);
            }
            other => panic!("expected an incoming-constancy violation, got {other:?}"),
        }
    }

    #[test]
    fn global_label_permutations_preserve_legality() {
        let b = ball23(3);
        let l = canonical_labeling(&b);
        let sigma = Permutation::parse_cycles("(1 2)", 2).unwrap();
        let tau = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        let relabeled = l.relabeled(&b, &sigma, &tau).unwrap();
        assert_eq!(validate_labeling(&b, &relabeled), None);
        assert_ne!(relabeled, l);
    }

    #[test]
    fn identity_has_identity_local_actions() {
        let b = ball23(2);
        let l = canonical_labeling(&b);
        let id = Permutation::identity(b.vertex_count());
        for v in 0..b.vertex_count() as u32 {
            if b.is_interior(v) {
                assert!(local_action(&b, &l, &id, v).unwrap().is_identity());
            }
        }
        // Boundary vertices have no local action.
        assert!(local_action(&b, &l, &id, 3).is_err());
    }

    #[test]
    fn root_subtree_swap_acts_as_a_transposition() {
        let b = ball23(2);
        let l = canonical_labeling(&b);
        // Swap the two depth-1 subtrees: 1 <-> 2 drags 3,4 <-> 5,6.
        let swap = Permutation::from_images(vec![0, 2, 1, 5, 6, 3, 4]).unwrap();
        assert!(b.is_ball_map(&swap));
        let at_root = local_action(&b, &l, &swap, 0).unwrap();
        assert_eq!(at_root, Permutation::parse_cycles("(1 2)", 2).unwrap());
    }

    #[test]
    fn local_action_satisfies_the_composition_law() {
        let b = ball23(2);
        let l = canonical_labeling(&b);
        let maps =
            enumerate_universal(&b, &l, &PermGroup::symmetric(2), &PermGroup::symmetric(3), true)
                .unwrap();
        for g in &maps {
            for h in &maps {
                let composed = h.then(g);
                for v in 0..b.vertex_count() as u32 {
                    if !b.is_interior(v) {
                        continue;
                    }
                    let lhs = local_action(&b, &l, &composed, v).unwrap();
                    let rhs = local_action(&b, &l, h, v)
                        .unwrap()
                        .then(&local_action(&b, &l, g, h.apply(v)).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn universal_membership_examples() {
        let b = ball23(2);
        let l = canonical_labeling(&b);
        let id = Permutation::identity(7);
        let trivial2 = PermGroup::trivial(2);
        let trivial3 = PermGroup::trivial(3);
        assert!(is_universal_element(&b, &l, &id, &trivial2, &trivial3).unwrap());
        let swap = Permutation::from_images(vec![0, 2, 1, 5, 6, 3, 4]).unwrap();
        assert!(
            is_universal_element(&b, &l, &swap, &PermGroup::symmetric(2), &trivial3).unwrap()
        );
        assert!(!is_universal_element(&b, &l, &swap, &trivial2, &trivial3).unwrap());
    }

    #[test]
    fn trivial_groups_enumerate_only_the_identity() {
        let b = ball23(2);
        let l = canonical_labeling(&b);
        let maps =
            enumerate_universal(&b, &l, &PermGroup::trivial(2), &PermGroup::trivial(3), true)
                .unwrap();
        assert_eq!(maps, vec![Permutation::identity(7)]);
    }

    #[test]
    fn full_local_groups_give_eight_maps_matching_brute_force() {
        let b = ball23(2);
        let l = canonical_labeling(&b);
        let m = PermGroup::symmetric(2);
        let n = PermGroup::symmetric(3);
        let maps = enumerate_universal(&b, &l, &m, &n, true).unwrap();
        assert_eq!(maps.len(), 8);
        // Oracle: filter the unpruned frame through the membership test.
        let oracle: Vec<Permutation> = all_ball_maps(&b)
            .into_iter()
            .filter(|g| is_universal_element(&b, &l, g, &m, &n).unwrap())
            .collect();
        assert_eq!(maps, oracle);
        // Full symmetric local groups impose no constraint at all.
        assert_eq!(maps, all_ball_maps(&b));
        // The output is a group: closed under composition and inverse.
        let index: std::collections::HashSet<_> = maps.iter().cloned().collect();
        for g in &maps {
            assert!(index.contains(&g.inverse()));
            for h in &maps {
                assert!(index.contains(&g.then(h)));
            }
        }
    }

    #[test]
    fn root_images_recover_each_local_group() {
        let s2 = PermGroup::symmetric(2);
        let s3 = PermGroup::symmetric(3);
        let b23 = ball23(2);
        let l23 = canonical_labeling(&b23);
        let b33 = build_ball(3, 3, 2, TreeSide::X).unwrap();
        let l33 = canonical_labeling(&b33);
        let cases: Vec<(&BiregularBall, &LegalLabeling, PermGroup, &PermGroup)> = vec![
            (&b23, &l23, PermGroup::trivial(2), &s3),
            (&b23, &l23, PermGroup::symmetric(2), &s3),
            (
                &b33,
                &l33,
                PermGroup::new(3, vec![Permutation::parse_cycles("(1 2)", 3).unwrap()])
                    .unwrap(),
                &s3,
            ),
            (&b33, &l33, PermGroup::cyclic(3), &s3),
            (&b33, &l33, PermGroup::symmetric(3), &s3),
        ];
        for (ball, labeling, m, n) in cases {
            let image = root_local_action_image(ball, labeling, &m, n).unwrap();
            let mut expected = m.elements().unwrap().to_vec();
            expected.sort();
            assert_eq!(image, expected, "root image must equal M for |M| = {}", m.order());
        }
        // Radius 1 is too shallow for the image to be meaningful.
        let b1 = ball23(1);
        assert!(root_local_action_image(&b1, &canonical_labeling(&b1), &s2, &s3).is_err());
    }

    #[test]
    fn free_local_actions_have_trivial_edge_fixators() {
        // Regular (hence free) actions on both sides.
        let m = PermGroup::symmetric(2);
        let n = PermGroup::cyclic(3);
        for radius in [2, 3] {
            let b = ball23(radius);
            let l = canonical_labeling(&b);
            let maps = enumerate_universal(&b, &l, &m, &n, true).unwrap();
            assert!(maps.len() > 1, "enumeration is nontrivial at radius {radius}");
            assert_eq!(
                max_edge_fixator_size(&b, &maps),
                1,
                "only the identity fixes an edge pointwise at radius {radius}"
            );
        }
    }

    #[test]
    fn illegal_labelings_are_rejected_by_enumeration() {
        let b = ball23(2);
        let mut l = canonical_labeling(&b);
        l.set_label(&b, 0, 1, 1).unwrap();
        l.set_label(&b, 0, 2, 1).unwrap();
        let err = enumerate_universal(
            &b,
            &l,
            &PermGroup::symmetric(2),
            &PermGroup::symmetric(3),
            true,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }
}
