//! Simple connected graphs with vertex colors, the family constructors, and
//! automorphism search.
//!
//! Loops and multiple edges are never stored; bouquets are built as their
//! twice-subdivided simple models. Vertex colors carry roots, the center of a
//! bouquet, and the black/white marks that orient the loops of a directed
//! bouquet. Automorphisms must preserve colors.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// Color of the tail subdivision vertex of a directed loop.
pub const BLACK: u32 = 1;
/// Color of the head subdivision vertex of a directed loop.
pub const WHITE: u32 = 2;
/// Color of a bouquet's central vertex.
pub const CENTER: u32 = 3;

/// Largest graph handed to the automorphism search.
pub const MAX_AUTOMORPHISM_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    colors: Vec<u32>,
}

impl Graph {
    /// Builds a simple graph; rejects loops, repeated edges and bad indices.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)], colors: Vec<u32>) -> Result<Self> {
        if colors.len() != vertex_count {
            return Err(Error::InvalidGraph(format!(
                "{} colors for {vertex_count} vertices",
                colors.len()
            )));
        }
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            if !adj[u].insert(v) || !adj[v].insert(u) {
                return Err(Error::InvalidGraph(format!("repeated edge ({u}, {v})")));
            }
        }
        Ok(Graph {
            adjacency: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            colors,
        })
    }

    pub fn uncolored(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new(vertex_count, edges, vec![0; vertex_count])
    }

    /// `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::param("complete graph needs n >= 1"));
        }
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::uncolored(n, &edges)
    }

    /// The wheel `W_{n+1}`: hub 0 joined to the rim cycle `1, ..., n`.
    pub fn wheel(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::param("wheel needs rim size n >= 3"));
        }
        let mut edges = Vec::new();
        for i in 1..=n {
            edges.push((0, i));
            edges.push((i, i % n + 1));
        }
        Graph::uncolored(n + 1, &edges)
    }

    /// Simple model of the bouquet `B_n`: center 0, loop `i` subdivided by
    /// vertices `2i+1` and `2i+2`.
    pub fn bouquet_model(n: usize) -> Result<Self> {
        Graph::subdivided_bouquet(n, 0, 0)
    }

    /// Model of the directed bouquet: as [`Graph::bouquet_model`], with the
    /// first subdivision vertex of every loop black and the second white.
    pub fn directed_bouquet_model(n: usize) -> Result<Self> {
        Graph::subdivided_bouquet(n, BLACK, WHITE)
    }

    fn subdivided_bouquet(n: usize, tail: u32, head: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::param("bouquet needs n >= 1"));
        }
        let mut edges = Vec::new();
        let mut colors = vec![CENTER];
        for i in 0..n {
            let (a, b) = (2 * i + 1, 2 * i + 2);
            edges.extend([(0, a), (a, b), (b, 0)]);
            colors.extend([tail, head]);
        }
        Graph::new(2 * n + 1, &edges, colors)
    }

    /// Copy of `g` with `v` given a color no other vertex carries.
    pub fn rooted(g: &Graph, v: usize) -> Result<Self> {
        if v >= g.vertex_count() {
            return Err(Error::OutOfRange {
                index: v,
                size: g.vertex_count(),
            });
        }
        let mut out = g.clone();
        out.colors[v] = g.colors.iter().max().copied().unwrap_or(0) + 1;
        Ok(out)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|u| {
                self.adjacency[u]
                    .iter()
                    .filter(move |&&v| v > u)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    pub(crate) fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::InvalidGraph("graph is not connected".into()))
        }
    }

    /// Whether `p` preserves adjacency and colors.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.vertex_count()
            && (0..self.vertex_count()).all(|v| {
                self.colors[v] == self.colors[p.apply(v)]
                    && self.degree(v) == self.degree(p.apply(v))
                    && self.adjacency[v]
                        .iter()
                        .all(|&u| self.has_edge(p.apply(v), p.apply(u)))
            })
    }

    /// All color- and adjacency-preserving vertex bijections, found by
    /// backtracking over vertices in breadth-first order with candidates
    /// restricted to matching color and degree.
    pub fn automorphism_group(&self) -> Result<PermutationGroup> {
        let n = self.vertex_count();
        if n > MAX_AUTOMORPHISM_VERTICES {
            return Err(Error::CapExceeded {
                what: "automorphism search vertex count",
                cap: MAX_AUTOMORPHISM_VERTICES as u128,
            });
        }
        let order = self.search_order();
        let mut search = AutSearch {
            g: self,
            order: &order,
            image: vec![usize::MAX; n],
            used: vec![false; n],
            found: Vec::new(),
        };
        search.extend(0);
        Ok(PermutationGroup::from_elements_unchecked(n, search.found))
    }

    fn search_order(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        order
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertex_count(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            colors: Some(self.colors.clone()),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let edges: Vec<_> = j.edges.iter().map(|&[u, v]| (u, v)).collect();
        let colors = j.colors.clone().unwrap_or_else(|| vec![0; j.vertices]);
        Graph::new(j.vertices, &edges, colors)
    }

    /// Parses the plain edge-list format: `u v` per edge, `c v color` to
    /// color a vertex, optional `n count` for the vertex count; `#` starts a
    /// comment. Vertices are 0-based.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut colored = Vec::new();
        let mut declared: Option<usize> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad number {s:?}", lineno + 1)))
            };
            match toks.as_slice() {
                ["c", v, c] => colored.push((num(v)?, num(c)? as u32)),
                ["n", k] => declared = Some(num(k)?),
                [u, v] => edges.push((num(u)?, num(v)?)),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected 'u v', 'c v color' or 'n count'",
                        lineno + 1
                    )))
                }
            }
        }
        let inferred = edges
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .chain(colored.iter().map(|&(v, _)| v))
            .max()
            .map_or(0, |m| m + 1);
        let n = declared.unwrap_or(inferred).max(inferred);
        let mut colors = vec![0; n];
        for (v, c) in colored {
            colors[v] = c;
        }
        Graph::new(n, &edges, colors)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.vertex_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        for (v, &c) in self.colors.iter().enumerate() {
            if c != 0 {
                let _ = writeln!(out, "c {v} {c}");
            }
        }
        out
    }
}

/// JSON form: `{vertices, edges: [[u, v], ...], colors: [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<u32>>,
}

struct AutSearch<'a> {
    g: &'a Graph,
    order: &'a [usize],
    image: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Permutation>,
}

impl AutSearch<'_> {
    fn extend(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.found
                .push(Permutation::from_images_unchecked(self.image.clone()));
            return;
        }
        let v = self.order[depth];
        for w in 0..self.g.vertex_count() {
            if self.used[w]
                || self.g.colors[w] != self.g.colors[v]
                || self.g.degree(w) != self.g.degree(v)
            {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                self.g.has_edge(u, v) == self.g.has_edge(self.image[u], w)
            });
            if !consistent {
                continue;
            }
            self.image[v] = w;
            self.used[w] = true;
            self.extend(depth + 1);
            self.used[w] = false;
            self.image[v] = usize::MAX;
        }
    }
}
