//! Two-dimensional simplicial complexes and group actions on them.
//!
//! Complexes come from two constructors:
//!
//! * [`Complex::from_facets`] — an explicit list of vertices, edges and
//!   triangles, closed downward.
//! * [`coset_complex`] — the tripartite complex attached to a group `G` and
//!   three subgroups `V1, V2, V3`: vertices are the right cosets `Vi x`, two
//!   cosets are adjacent when they intersect, and triangles are the
//!   pairwise-adjacent triples (one coset per part).
//!
//! [`VertexAction`] wraps a set of vertex permutations (typically induced by
//! right multiplication on cosets) and counts orbits of vertices, directed
//! edges and triangles — the transitivity inputs of the certification
//! pipeline in [`crate::certify`].

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{coset_space, CosetSpace, PermGroup, Permutation};

// ---------------------------------------------------------------------------
// Complex
// ---------------------------------------------------------------------------

/// A finite simplicial complex of dimension at most two. Edges and triangles
/// are stored as sorted tuples in lexicographic order, so indices are
/// canonical.
pub struct Complex {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
    edge_index: HashMap<(u32, u32), u32>,
    triangles: Vec<[u32; 3]>,
    triangle_index: HashMap<[u32; 3], u32>,
    /// For tripartite coset complexes: which part each vertex belongs to.
    parts: Option<Vec<u8>>,
}

impl Complex {
    /// Builds a complex from facets of size one, two or three. Edges of
    /// listed triangles are added automatically; duplicates collapse.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<u32>]) -> Result<Self> {
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut triangles: Vec<[u32; 3]> = Vec::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            for &v in &f {
                if v as usize >= vertex_count {
                    return Err(Error::input(format!(
                        "facet {facet:?} uses vertex {v}, but there are only {vertex_count}"
                    )));
                }
            }
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("facet {facet:?} repeats a vertex")));
            }
            match f.len() {
                0 => return Err(Error::input("empty facet")),
                1 => {}
                2 => edges.push((f[0], f[1])),
                3 => {
                    triangles.push([f[0], f[1], f[2]]);
                    edges.push((f[0], f[1]));
                    edges.push((f[0], f[2]));
                    edges.push((f[1], f[2]));
                }
                n => {
                    return Err(Error::input(format!(
                        "facet {facet:?} has {n} vertices; this complex type is at most \
                         two-dimensional"
                    )))
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        triangles.sort_unstable();
        triangles.dedup();
        Ok(Self::assemble(vertex_count, edges, triangles, None))
    }

    fn assemble(
        vertex_count: usize,
        edges: Vec<(u32, u32)>,
        triangles: Vec<[u32; 3]>,
        parts: Option<Vec<u8>>,
    ) -> Self {
        let edge_index =
            edges.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect::<HashMap<_, _>>();
        let triangle_index =
            triangles.iter().enumerate().map(|(i, &t)| (t, i as u32)).collect::<HashMap<_, _>>();
        Complex { vertex_count, edges, edge_index, triangles, triangle_index, parts }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn edge_id(&self, u: u32, v: u32) -> Option<u32> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_index.get(&key).copied()
    }

    pub fn has_triangle(&self, mut t: [u32; 3]) -> bool {
        t.sort_unstable();
        self.triangle_index.contains_key(&t)
    }

    /// Part label of a vertex in a tripartite coset complex.
    pub fn part(&self, v: u32) -> Option<u8> {
        self.parts.as_ref().map(|p| p[v as usize])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// The 1-skeleton as a graph on the same vertex set.
    pub fn skeleton(&self) -> Graph {
        Graph::from_edges(self.vertex_count, &self.edges)
            .expect("stored edges are valid by construction")
    }

    pub fn is_connected(&self) -> bool {
        self.skeleton().is_connected()
    }

    /// How many triangles contain each edge, aligned with [`Self::edges`].
    pub fn triangles_per_edge(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.edges.len()];
        for &[a, b, c] in &self.triangles {
            for (u, v) in [(a, b), (a, c), (b, c)] {
                counts[self.edge_index[&(u, v)] as usize] += 1;
            }
        }
        counts
    }

    pub fn every_edge_in_a_triangle(&self) -> bool {
        self.triangles_per_edge().iter().all(|&c| c > 0)
    }

    /// True when every triangle of the 1-skeleton is a face: the complex is
    /// the clique complex of its own skeleton.
    pub fn is_flag(&self) -> bool {
        let skeleton = self.skeleton();
        for &(u, v) in &self.edges {
            let nu = skeleton.neighbors(u);
            let nv = skeleton.neighbors(v);
            // Sorted-list intersection; count each clique once via u < v < w.
            let (mut i, mut j) = (0, 0);
            while i < nu.len() && j < nv.len() {
                match nu[i].cmp(&nv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let w = nu[i];
                        if w > v && !self.has_triangle([u, v, w]) {
                            return false;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        true
    }

    /// The link of a vertex: the graph whose vertices are the neighbors of
    /// `v` and whose edges are the opposite sides of triangles through `v`.
    /// Returns the link and the map from link vertices back to complex
    /// vertices (sorted ascending).
    pub fn link(&self, v: u32) -> (Graph, Vec<u32>) {
        let mut members: Vec<u32> = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                members.push(b);
            } else if b == v {
                members.push(a);
            }
        }
        members.sort_unstable();
        let local: HashMap<u32, u32> =
            members.iter().enumerate().map(|(i, &w)| (w, i as u32)).collect();
        let mut edges = Vec::new();
        for &[a, b, c] in &self.triangles {
            let opposite = if a == v {
                Some((b, c))
            } else if b == v {
                Some((a, c))
            } else if c == v {
                Some((a, b))
            } else {
                None
            };
            if let Some((x, y)) = opposite {
                edges.push((local[&x], local[&y]));
            }
        }
        let link = Graph::from_edges(members.len(), &edges)
            .expect("link edges index into the neighbor list");
        (link, members)
    }
}

// ---------------------------------------------------------------------------
// Coset complexes
// ---------------------------------------------------------------------------

/// A coset complex together with the coset spaces that index its parts.
/// Vertices are numbered part by part: part `i` occupies the range
/// `offset(i) .. offset(i) + spaces[i].len()`, and within a part cosets
/// follow the canonical order of [`CosetSpace`], so vertex `offset(i)` is
/// the subgroup `Vi` itself.
pub struct CosetComplex {
    pub complex: Complex,
    pub spaces: [CosetSpace; 3],
}

impl CosetComplex {
    pub fn part_sizes(&self) -> [usize; 3] {
        [self.spaces[0].len(), self.spaces[1].len(), self.spaces[2].len()]
    }

    pub fn part_offset(&self, part: usize) -> u32 {
        self.spaces[..part].iter().map(|s| s.len() as u32).sum()
    }

    /// The global vertex id of coset `index` in `part`.
    pub fn vertex_of(&self, part: usize, index: usize) -> u32 {
        self.part_offset(part) + index as u32
    }

    /// The vertex permutation induced by right multiplication by `g`, which
    /// must lie in the parent group.
    pub fn vertex_map_of(&self, g: &Permutation) -> Result<Permutation> {
        if self.spaces[0].coset_of(g).is_none() {
            return Err(Error::input(format!(
                "element {g} is not in the group acting on the complex"
            )));
        }
        let n = self.complex.vertex_count();
        let mut images = Vec::with_capacity(n);
        for part in 0..3 {
            let offset = self.part_offset(part);
            for idx in 0..self.spaces[part].len() {
                images.push(offset + self.spaces[part].act(idx, g) as u32);
            }
        }
        Permutation::from_images(images)
    }

    /// The action of a subgroup of the parent group by right multiplication,
    /// given by its generators.
    pub fn right_multiplication_action(&self, generators: &[Permutation]) -> Result<VertexAction> {
        let maps =
            generators.iter().map(|g| self.vertex_map_of(g)).collect::<Result<Vec<_>>>()?;
        VertexAction::new(self.complex.vertex_count(), maps)
    }
}

/// Builds the coset complex of `(G; V1, V2, V3)`: tripartite on the right
/// coset spaces, with adjacency given by coset intersection and triangles
/// given by pairwise adjacency.
pub fn coset_complex(g: &PermGroup, subgroups: &[PermGroup; 3]) -> Result<CosetComplex> {
    let spaces = [
        coset_space(g, &subgroups[0])?,
        coset_space(g, &subgroups[1])?,
        coset_space(g, &subgroups[2])?,
    ];
    let offsets = [0u32, spaces[0].len() as u32, (spaces[0].len() + spaces[1].len()) as u32];
    let vertex_count = spaces.iter().map(|s| s.len()).sum();

    // Two cosets intersect exactly when some group element lies in both, so a
    // single sweep over the group finds every adjacent pair.
    let mut pair_sets: [HashSet<(u32, u32)>; 3] =
        [HashSet::new(), HashSet::new(), HashSet::new()];
    for x in g.elements()? {
        let in_part = [
            offsets[0] + spaces[0].coset_of(x).expect("x is in G") as u32,
            offsets[1] + spaces[1].coset_of(x).expect("x is in G") as u32,
            offsets[2] + spaces[2].coset_of(x).expect("x is in G") as u32,
        ];
        pair_sets[0].insert((in_part[0], in_part[1]));
        pair_sets[1].insert((in_part[0], in_part[2]));
        pair_sets[2].insert((in_part[1], in_part[2]));
    }
    let mut edges: Vec<(u32, u32)> = pair_sets.iter().flatten().copied().collect();
    edges.sort_unstable();

    // Cross-part adjacency lists for the triangle sweep.
    let mut low_to_high: HashMap<u32, Vec<u32>> = HashMap::new();
    for &(u, w) in &pair_sets[1] {
        low_to_high.entry(u).or_default().push(w);
    }
    for &(v, w) in &pair_sets[2] {
        low_to_high.entry(v).or_default().push(w);
    }
    for list in low_to_high.values_mut() {
        list.sort_unstable();
    }

    // Triangles: for each part-0/part-1 edge, the part-2 vertices adjacent to
    // both endpoints.
    let mut triangles: Vec<[u32; 3]> = Vec::new();
    let empty: Vec<u32> = Vec::new();
    for &(u, v) in pair_sets[0].iter() {
        let nu = low_to_high.get(&u).unwrap_or(&empty);
        let nv = low_to_high.get(&v).unwrap_or(&empty);
        let (mut i, mut j) = (0, 0);
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    triangles.push([u, v, nu[i]]);
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    triangles.sort_unstable();

    let mut parts = vec![0u8; vertex_count];
    for (part, space) in spaces.iter().enumerate() {
        for idx in 0..space.len() {
            parts[offsets[part] as usize + idx] = part as u8;
        }
    }
    let complex = Complex::assemble(vertex_count, edges, triangles, Some(parts));
    Ok(CosetComplex { complex, spaces })
}

// ---------------------------------------------------------------------------
// Vertex actions and orbits
// ---------------------------------------------------------------------------

/// A group acting on a complex, given by the vertex permutations of its
/// generators.
pub struct VertexAction {
    generators: Vec<Permutation>,
}

/// One orbit of triangles under a [`VertexAction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleOrbit {
    /// Lexicographically least triangle in the orbit.
    pub representative: [u32; 3],
    pub size: usize,
}

impl VertexAction {
    pub fn new(vertex_count: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != vertex_count {
                return Err(Error::input(format!(
                    "vertex map degree {} does not match vertex count {vertex_count}",
                    g.degree()
                )));
            }
        }
        Ok(VertexAction { generators })
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// True when every generator maps edges to edges and triangles to
    /// triangles.
    pub fn respects(&self, complex: &Complex) -> bool {
        self.generators.iter().all(|g| {
            complex.edges.iter().all(|&(u, v)| complex.edge_id(g.apply(u), g.apply(v)).is_some())
                && complex
                    .triangles
                    .iter()
                    .all(|&[a, b, c]| complex.has_triangle([g.apply(a), g.apply(b), g.apply(c)]))
        })
    }

    /// Orbits on vertices, each sorted, listed by least member.
    pub fn vertex_orbits(&self, vertex_count: usize) -> Vec<Vec<u32>> {
        let mut seen = vec![false; vertex_count];
        let mut orbits = Vec::new();
        for start in 0..vertex_count as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start as usize] = true;
            let mut head = 0;
            while head < orbit.len() {
                let v = orbit[head];
                head += 1;
                for g in &self.generators {
                    let img = g.apply(v);
                    if !seen[img as usize] {
                        seen[img as usize] = true;
                        orbit.push(img);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Number of orbits on directed edges (ordered adjacent pairs).
    pub fn directed_edge_orbit_count(&self, complex: &Complex) -> usize {
        let ids = |u: u32, v: u32| -> u32 {
            let e = complex.edge_id(u, v).expect("image of an edge is an edge");
            2 * e + u32::from(u > v)
        };
        let total = 2 * complex.edge_count();
        let mut seen = vec![false; total];
        let mut orbits = 0;
        for start in 0..total {
            if seen[start] {
                continue;
            }
            orbits += 1;
            seen[start] = true;
            let mut queue = vec![start as u32];
            while let Some(d) = queue.pop() {
                let (a, b) = complex.edges[(d / 2) as usize];
                let (u, v) = if d % 2 == 0 { (a, b) } else { (b, a) };
                for g in &self.generators {
                    let img = ids(g.apply(u), g.apply(v));
                    if !seen[img as usize] {
                        seen[img as usize] = true;
                        queue.push(img);
                    }
                }
            }
        }
        orbits
    }

    /// Orbits on triangles, sorted by representative.
    pub fn triangle_orbits(&self, complex: &Complex) -> Vec<TriangleOrbit> {
        let mut seen = vec![false; complex.triangle_count()];
        let mut orbits = Vec::new();
        for start in 0..complex.triangle_count() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start as u32];
            let mut head = 0;
            while head < members.len() {
                let [a, b, c] = complex.triangles[members[head] as usize];
                head += 1;
                for g in &self.generators {
                    let mut img = [g.apply(a), g.apply(b), g.apply(c)];
                    img.sort_unstable();
                    let id = complex.triangle_index[&img];
                    if !seen[id as usize] {
                        seen[id as usize] = true;
                        members.push(id);
                    }
                }
            }
            let representative =
                members.iter().map(|&i| complex.triangles[i as usize]).min().unwrap();
            orbits.push(TriangleOrbit { representative, size: members.len() });
        }
        orbits.sort_by_key(|o| o.representative);
        orbits
    }
}

// ---------------------------------------------------------------------------
// Stock complexes
// ---------------------------------------------------------------------------

/// The octahedron surface: poles `0` and `5`, equator square `1-2-3-4`, so
/// the antipodal pairs are `(0,5)`, `(1,3)`, `(2,4)`. Its skeleton matches
/// [`Graph::octahedron`](crate::graph::Graph::octahedron).
pub fn octahedron() -> Complex {
    let facets: Vec<Vec<u32>> = vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 1],
        vec![5, 1, 2],
        vec![5, 2, 3],
        vec![5, 3, 4],
        vec![5, 4, 1],
    ];
    Complex::from_facets(6, &facets).expect("octahedron facets are valid")
}

/// Generators of the full (order-48) symmetry group of [`octahedron`],
/// as vertex permutations: an equator rotation, the pole swap, and a
/// reflection exchanging a pole with an equator vertex.
pub fn octahedron_symmetries() -> Vec<Permutation> {
    vec![
        Permutation::from_images(vec![0, 2, 3, 4, 1, 5]).expect("valid images"),
        Permutation::from_images(vec![5, 1, 2, 3, 4, 0]).expect("valid images"),
        Permutation::from_images(vec![1, 0, 4, 5, 2, 3]).expect("valid images"),
    ]
}

/// Facets of the boundary of the cross-polytope with the given number of
/// axes: vertices `2i` and `2i+1` are the two poles of axis `i`, and the
/// `2^axes` facets choose one pole per axis. Three axes give an octahedron
/// surface (with a labeling different from [`octahedron`]), four give the
/// 16-cell boundary.
pub fn cross_polytope_facets(axes: usize) -> Vec<Vec<u32>> {
    let mut facets = Vec::with_capacity(1 << axes);
    for choice in 0..(1u32 << axes) {
        let facet: Vec<u32> =
            (0..axes as u32).map(|i| 2 * i + ((choice >> i) & 1)).collect();
        facets.push(facet);
    }
    facets
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) use super::octahedron;

    /// The six-vertex triangulation of the real projective plane.
    pub(crate) fn projective_plane() -> Complex {
        let facets: Vec<Vec<u32>> = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
            [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
        ]
        .iter()
        .map(|t| t.iter().map(|&v| v - 1).collect())
        .collect();
        Complex::from_facets(6, &facets).unwrap()
    }

    #[test]
    fn facet_construction_validates() {
        assert!(Complex::from_facets(3, &[vec![0, 3]]).is_err());
        assert!(Complex::from_facets(3, &[vec![0, 0, 1]]).is_err());
        assert!(Complex::from_facets(5, &[vec![0, 1, 2, 3]]).is_err());
        assert!(Complex::from_facets(3, &[vec![]]).is_err());
    }

    #[test]
    fn facets_close_downward_and_collapse() {
        let c = Complex::from_facets(4, &[vec![2, 1, 0], vec![0, 1], vec![3]]).unwrap();
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(c.triangles(), &[[0, 1, 2]]);
        assert_eq!(c.edge_id(2, 0), Some(1));
        assert!(c.has_triangle([2, 0, 1]));
        assert!(!c.is_connected());
    }

    #[test]
    fn cross_polytope_three_axes_is_an_octahedron() {
        let c = Complex::from_facets(6, &cross_polytope_facets(3)).unwrap();
        assert_eq!(c.vertex_count(), 6);
        assert_eq!(c.edge_count(), 12);
        assert_eq!(c.triangle_count(), 8);
        assert!(c.is_flag());
        assert!(!c.has_triangle([0, 1, 2]));
        assert_eq!(cross_polytope_facets(4).len(), 16);
    }

    #[test]
    fn octahedron_counts_and_checks() {
        let c = octahedron();
        assert_eq!(c.vertex_count(), 6);
        assert_eq!(c.edge_count(), 12);
        assert_eq!(c.triangle_count(), 8);
        assert_eq!(c.euler_characteristic(), 2);
        assert!(c.is_connected());
        assert!(c.every_edge_in_a_triangle());
        assert!(c.triangles_per_edge().iter().all(|&n| n == 2));
        assert!(c.is_flag());
    }

    #[test]
    fn octahedron_links_are_squares() {
        let c = octahedron();
        for v in 0..6 {
            let (link, members) = c.link(v);
            assert_eq!(members.len(), 4);
            assert_eq!(link.regular_degree(), Some(2));
            assert!(link.is_connected());
            assert_eq!(link.girth(), Some(4));
        }
        let (_, members) = c.link(0);
        assert_eq!(members, vec![1, 2, 3, 4]);
    }

    #[test]
    fn octahedron_symmetries_act_transitively() {
        let c = octahedron();
        let rotate = Permutation::from_images(vec![0, 2, 3, 4, 1, 5]).unwrap();
        let flip_poles = Permutation::from_images(vec![5, 1, 2, 3, 4, 0]).unwrap();
        let edge_axis = Permutation::from_images(vec![1, 0, 4, 5, 2, 3]).unwrap();
        let group =
            PermGroup::new(6, vec![rotate.clone(), flip_poles.clone(), edge_axis.clone()])
                .unwrap();
        assert_eq!(group.order(), 48);

        let action = VertexAction::new(6, vec![rotate, flip_poles, edge_axis]).unwrap();
        assert!(action.respects(&c));
        assert_eq!(action.vertex_orbits(6).len(), 1);
        assert_eq!(action.directed_edge_orbit_count(&c), 1);
        let orbits = action.triangle_orbits(&c);
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0], TriangleOrbit { representative: [0, 1, 2], size: 8 });
    }

    #[test]
    fn projective_plane_counts() {
        let c = projective_plane();
        assert_eq!(c.vertex_count(), 6);
        assert_eq!(c.edge_count(), 15);
        assert_eq!(c.triangle_count(), 10);
        assert_eq!(c.euler_characteristic(), 1);
        assert!(c.every_edge_in_a_triangle());
        assert!(c.triangles_per_edge().iter().all(|&n| n == 2));
        // The skeleton is the complete graph on six vertices, so twenty
        // 3-cliques but only ten faces: not flag.
        assert!(!c.is_flag());
    }

    fn s3_with_involutions() -> (PermGroup, [PermGroup; 3]) {
        let g = PermGroup::symmetric(3);
        let v = |s: &str| {
            PermGroup::new(3, vec![Permutation::parse_cycles(s, 3).unwrap()]).unwrap()
        };
        (g, [v("(1 2)"), v("(1 3)"), v("(2 3)")])
    }

    #[test]
    fn small_coset_complex_counts_match_brute_force() {
        let (g, subgroups) = s3_with_involutions();
        let cc = coset_complex(&g, &subgroups).unwrap();
        assert_eq!(cc.part_sizes(), [3, 3, 3]);
        assert_eq!(cc.complex.vertex_count(), 9);
        assert_eq!(cc.complex.part(0), Some(0));
        assert_eq!(cc.complex.part(8), Some(2));
        assert!(cc.spaces.iter().all(|s| s.representative(0).is_identity()));

        // Brute-force adjacency: compare against explicit coset element sets.
        let coset_elements = |part: usize, idx: usize| -> Vec<Permutation> {
            let rep = cc.spaces[part].representative(idx);
            subgroups[part].elements().unwrap().iter().map(|h| h.then(rep)).collect()
        };
        let mut expected_edges = 0;
        let mut expected_triangles = 0;
        for i in 0..3 {
            for j in 0..3 {
                let a = coset_elements(0, i);
                let b = coset_elements(1, j);
                let meet_ab = a.iter().any(|x| b.contains(x));
                if meet_ab {
                    expected_edges += 1;
                }
                for k in 0..3 {
                    let c = coset_elements(2, k);
                    if meet_ab
                        && a.iter().any(|x| c.contains(x))
                        && b.iter().any(|x| c.contains(x))
                    {
                        expected_triangles += 1;
                    }
                }
            }
        }
        // Part 0/2 and 1/2 edges by symmetry of the count above.
        let e02 = cc
            .complex
            .edges()
            .iter()
            .filter(|&&(u, v)| cc.complex.part(u) == Some(0) && cc.complex.part(v) == Some(2))
            .count();
        let e12 = cc
            .complex
            .edges()
            .iter()
            .filter(|&&(u, v)| cc.complex.part(u) == Some(1) && cc.complex.part(v) == Some(2))
            .count();
        let e01 = cc.complex.edge_count() - e02 - e12;
        assert_eq!(e01, expected_edges);
        assert_eq!(cc.complex.triangle_count(), expected_triangles);
        assert!(cc.complex.is_connected());
    }

    #[test]
    fn small_coset_complex_action_orbits() {
        let (g, subgroups) = s3_with_involutions();
        let cc = coset_complex(&g, &subgroups).unwrap();
        let action = cc.right_multiplication_action(g.generators()).unwrap();
        assert!(action.respects(&cc.complex));
        // Right multiplication is transitive on each part and on triangles,
        // but preserves parts, so directed edges fall into six orbits.
        assert_eq!(action.vertex_orbits(9).len(), 3);
        assert_eq!(action.directed_edge_orbit_count(&cc.complex), 6);
        let orbits = action.triangle_orbits(&cc.complex);
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].representative, [0, 3, 6]);
        assert_eq!(orbits[0].size, cc.complex.triangle_count());
    }

    #[test]
    fn vertex_map_rejects_elements_outside_the_group() {
        let (g, subgroups) = s3_with_involutions();
        let cc = coset_complex(&g, &subgroups).unwrap();
        assert!(cc.vertex_map_of(&g.identity()).is_ok());
        // Wrong degree, hence certainly not an element of the parent group.
        assert!(cc.vertex_map_of(&Permutation::identity(4)).is_err());
        // Vertex maps of the wrong size are caught by the action constructor.
        assert!(VertexAction::new(9, vec![Permutation::identity(4)]).is_err());
    }
}
