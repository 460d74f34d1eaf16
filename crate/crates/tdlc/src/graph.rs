//! Undirected simple graphs: connectivity, girth, bipartitions, regularity.
//!
//! These are the combinatorial checks applied to vertex links of the
//! two-dimensional complexes built elsewhere in the crate, but the type is
//! self-contained and also backs the commutation graphs of the right-angled
//! Artin groups in [`crate::raag`].

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`, stored as sorted adjacency
/// lists. Loops are rejected; duplicate edges collapse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adjacency: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list, validating vertex ranges and
    /// rejecting loops.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u} is not allowed")));
            }
            g.adjacency[u as usize].push(v);
            g.adjacency[v as usize].push(u);
        }
        for list in &mut g.adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(g)
    }

    /// The path on `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path edges are in range and loop-free")
    }

    /// The cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::input(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v - 1, v)).collect();
        edges.push((n as u32 - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete-graph edges are in range and loop-free")
    }

    /// The complete multipartite graph whose parts have the given sizes:
    /// vertices are numbered part by part and two vertices are adjacent
    /// exactly when they lie in different parts.
    pub fn complete_multipartite(parts: &[usize]) -> Graph {
        let n: usize = parts.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (index, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(index, size));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if part_of[u] != part_of[v] {
                    edges.push((u as u32, v as u32));
                }
            }
        }
        Graph::from_edges(n, &edges).expect("multipartite edges are in range and loop-free")
    }

    /// The octahedron skeleton: poles `0` and `5`, equator cycle `1-2-3-4`,
    /// so the non-adjacent (antipodal) pairs are `(0,5)`, `(1,3)`, `(2,4)`.
    pub fn octahedron() -> Graph {
        let edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (5, 1),
            (5, 2),
            (5, 3),
            (5, 4),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
        ];
        Graph::from_edges(6, &edges).expect("octahedron edges are in range and loop-free")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, u: u32) -> &[u32] {
        &self.adjacency[u as usize]
    }

    pub fn degree(&self, u: u32) -> usize {
        self.adjacency[u as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Is `q` a graph automorphism? A permutation of the vertices is one
    /// exactly when it maps every edge to an edge.
    pub fn is_automorphism(&self, q: &crate::perm::Permutation) -> bool {
        q.degree() == self.vertex_count()
            && self
                .edges()
                .iter()
                .all(|&(u, v)| self.has_edge(q.apply(u), q.apply(v)))
    }

    /// Number of connected components (an empty graph has none).
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut queue = vec![start as u32];
            seen[start] = true;
            while let Some(u) = queue.pop() {
                for &v in self.neighbors(u) {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        queue.push(v);
                    }
                }
            }
        }
        components
    }

    /// True when the graph has at most one component.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Length of a shortest cycle, or `None` for a forest.
    ///
    /// Breadth-first search from every start vertex: a non-tree edge between
    /// visited vertices `u`, `v` closes a walk of length
    /// `dist(u) + dist(v) + 1` through the start. Every such walk contains a
    /// cycle no longer than itself, and a shortest cycle is found exactly when
    /// the search starts on it, so the minimum over all starts is the girth.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for start in 0..n {
            dist.fill(usize::MAX);
            parent.fill(u32::MAX);
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start as u32]);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if dist[v as usize] == usize::MAX {
                        dist[v as usize] = dist[u as usize] + 1;
                        parent[v as usize] = u;
                        queue.push_back(v);
                    } else if parent[u as usize] != v {
                        let cycle = dist[u as usize] + dist[v as usize] + 1;
                        if best.is_none_or(|b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
            if best == Some(3) {
                break;
            }
        }
        best
    }

    /// A proper 2-coloring if the graph is bipartite, else `None`. Each
    /// component is colored starting from its least vertex, which gets color
    /// `0`, so the coloring is deterministic.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start as u32]);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if color[v as usize] == u8::MAX {
                        color[v as usize] = 1 - color[u as usize];
                        queue.push_back(v);
                    } else if color[v as usize] == color[u as usize] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// The common vertex degree, if the graph is regular and nonempty.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adjacency.first()?.len();
        self.adjacency.iter().all(|l| l.len() == first).then_some(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: u32) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    fn complete_bipartite(a: u32, b: u32) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges((a + b) as usize, &edges).unwrap()
    }

    /// Outer 5-cycle, inner pentagram, five spokes.
    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn named_constructors_have_expected_shape() {
        assert_eq!(Graph::path(4).edge_count(), 3);
        assert_eq!(Graph::path(1).edge_count(), 0);
        assert_eq!(Graph::cycle(5).unwrap(), cycle_graph(5));
        assert!(Graph::cycle(2).is_err());
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert_eq!(Graph::complete_multipartite(&[2, 3]), complete_bipartite(2, 3));
        let oct = Graph::octahedron();
        assert_eq!(oct.vertex_count(), 6);
        assert_eq!(oct.edge_count(), 12);
        assert_eq!(oct.regular_degree(), Some(4));
        assert!(!oct.has_edge(0, 5));
        assert!(!oct.has_edge(1, 3));
        assert!(!oct.has_edge(2, 4));
        assert_eq!(oct.girth(), Some(3));
    }

    #[test]
    fn construction_validates_input() {
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        // Duplicate edges collapse.
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn adjacency_queries() {
        let g = Graph::from_edges(4, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(1, 2));
        assert_eq!(g.degree(3), 0);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn connectivity_and_components() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.component_count(), 2);
        assert!(cycle_graph(6).is_connected());
        assert_eq!(Graph::new(0).component_count(), 0);
        assert!(Graph::new(0).is_connected());
    }

    #[test]
    fn girth_of_standard_graphs() {
        assert_eq!(cycle_graph(3).girth(), Some(3));
        assert_eq!(cycle_graph(6).girth(), Some(6));
        assert_eq!(complete_bipartite(3, 3).girth(), Some(4));
        assert_eq!(petersen().girth(), Some(5));
        // Forests have no cycles.
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), None);
        assert_eq!(Graph::new(3).girth(), None);
    }

    /// Oracle: compare BFS girth with exhaustive simple-cycle enumeration on
    /// every graph with at most 6 vertices and a modest edge count.
    #[test]
    fn girth_matches_exhaustive_enumeration() {
        fn brute_girth(g: &Graph) -> Option<usize> {
            // Shortest cycle through a fixed least vertex, minimized over
            // vertices: depth-first over simple paths.
            let n = g.vertex_count();
            let mut best: Option<usize> = None;
            for start in 0..n as u32 {
                let mut stack = vec![(start, vec![start])];
                while let Some((u, path)) = stack.pop() {
                    for &v in g.neighbors(u) {
                        if v == start && path.len() >= 3 {
                            if best.is_none_or(|b| path.len() < b) {
                                best = Some(path.len());
                            }
                        } else if v > start && !path.contains(&v) {
                            let mut next = path.clone();
                            next.push(v);
                            stack.push((v, next));
                        }
                    }
                }
            }
            best
        }
        let samples = [
            cycle_graph(5),
            petersen(),
            complete_bipartite(2, 3),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 2)])
                .unwrap(),
            Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(),
        ];
        for g in &samples {
            assert_eq!(g.girth(), brute_girth(g), "graph {g:?}");
        }
    }

    #[test]
    fn bipartition_of_even_and_odd_cycles() {
        let coloring = cycle_graph(6).bipartition().unwrap();
        assert_eq!(coloring, vec![0, 1, 0, 1, 0, 1]);
        assert!(cycle_graph(5).bipartition().is_none());
        assert!(petersen().bipartition().is_none());
        let k33 = complete_bipartite(3, 3).bipartition().unwrap();
        assert_eq!(k33, vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn regularity() {
        assert_eq!(cycle_graph(5).regular_degree(), Some(2));
        assert_eq!(petersen().regular_degree(), Some(3));
        assert_eq!(complete_bipartite(2, 3).regular_degree(), None);
        assert_eq!(Graph::new(2).regular_degree(), Some(0));
        assert_eq!(Graph::new(0).regular_degree(), None);
    }

    #[test]
    fn automorphism_detection() {
        use crate::perm::Permutation;
        let square = cycle_graph(4);
        let rotate = Permutation::from_images(vec![1, 2, 3, 0]).unwrap();
        let diagonal_swap = Permutation::from_images(vec![0, 3, 2, 1]).unwrap();
        // Transposing two adjacent corners breaks the square.
        let corner_swap = Permutation::from_images(vec![1, 0, 2, 3]).unwrap();
        assert!(square.is_automorphism(&rotate));
        assert!(square.is_automorphism(&diagonal_swap));
        assert!(!square.is_automorphism(&corner_swap));
        // Degree mismatch is never an automorphism.
        assert!(!square.is_automorphism(&Permutation::identity(5)));
    }
}
