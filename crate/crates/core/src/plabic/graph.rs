use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subsets::check_kn;

pub type VertexId = usize;
pub type EdgeId = usize;
/// Half-edge `2e` runs from `edges[e][0]` to `edges[e][1]`; `2e + 1` runs back.
pub type HalfEdge = usize;

#[inline]
pub fn twin(h: HalfEdge) -> HalfEdge {
    h ^ 1
}

#[inline]
pub fn edge_of(h: HalfEdge) -> EdgeId {
    h / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Black,
    White,
    Boundary,
}

impl Colour {
    pub fn is_inner(self) -> bool {
        self != Colour::Boundary
    }

    pub fn inverted(self) -> Colour {
        match self {
            Colour::Black => Colour::White,
            Colour::White => Colour::Black,
            Colour::Boundary => Colour::Boundary,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub colour: Colour,
    /// Outgoing half-edges in clockwise order.
    pub rotation: Vec<HalfEdge>,
}

/// A plabic graph in a disk, stored as a rotation system.
///
/// The boundary cycle is part of the edge set: boundary vertex `b_i` has
/// clockwise rotation `[b_i -> b_{i+1}, inner edge, b_i -> b_{i-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlabicGraph {
    pub(crate) n: usize,
    pub(crate) k: usize,
    pub(crate) vertices: Vec<Vertex>,
    pub(crate) edges: Vec<[VertexId; 2]>,
    /// `boundary[i - 1]` is the vertex carrying boundary label `i`.
    pub(crate) boundary: Vec<VertexId>,
}

/// Faces traced from the rotation system; every half-edge has its face on the left.
#[derive(Clone, Debug)]
pub struct Faces {
    pub face_of: Vec<usize>,
    pub cycles: Vec<Vec<HalfEdge>>,
    pub outer: usize,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn inner(&self) -> impl Iterator<Item = usize> + '_ {
        let outer = self.outer;
        (0..self.cycles.len()).filter(move |&f| f != outer)
    }
}

impl PlabicGraph {
    /// Assembles and validates a graph.
    pub fn from_parts(
        n: usize,
        k: usize,
        vertices: Vec<Vertex>,
        edges: Vec<[VertexId; 2]>,
        boundary: Vec<VertexId>,
    ) -> Result<Self> {
        let g = PlabicGraph {
            n,
            k,
            vertices,
            edges,
            boundary,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn boundary_vertex(&self, label: usize) -> VertexId {
        self.boundary[label - 1]
    }

    pub fn boundary_label(&self, v: VertexId) -> Option<usize> {
        self.boundary.iter().position(|&b| b == v).map(|p| p + 1)
    }

    #[inline]
    pub fn tail(&self, h: HalfEdge) -> VertexId {
        self.edges[h / 2][h % 2]
    }

    #[inline]
    pub fn head(&self, h: HalfEdge) -> VertexId {
        self.edges[h / 2][1 - h % 2]
    }

    pub fn colour(&self, v: VertexId) -> Colour {
        self.vertices[v].colour
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.vertices[v].rotation.len()
    }

    pub fn is_boundary_edge(&self, e: EdgeId) -> bool {
        let [a, b] = self.edges[e];
        !self.colour(a).is_inner() && !self.colour(b).is_inner()
    }

    pub fn inner_vertex_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.colour.is_inner()).count()
    }

    /// Position of every half-edge inside its tail's rotation.
    pub(crate) fn rotation_positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.edges.len() * 2];
        for v in &self.vertices {
            for (i, &h) in v.rotation.iter().enumerate() {
                pos[h] = i;
            }
        }
        pos
    }

    /// Clockwise successor of `h` around its tail.
    pub(crate) fn next_cw(&self, h: HalfEdge, pos: &[usize]) -> HalfEdge {
        let rot = &self.vertices[self.tail(h)].rotation;
        rot[(pos[h] + 1) % rot.len()]
    }

    pub(crate) fn next_ccw(&self, h: HalfEdge, pos: &[usize]) -> HalfEdge {
        let rot = &self.vertices[self.tail(h)].rotation;
        rot[(pos[h] + rot.len() - 1) % rot.len()]
    }

    /// The half-edge `b_i -> b_{i+1}`.
    pub(crate) fn boundary_cycle_half_edge(&self, label: usize) -> HalfEdge {
        self.vertices[self.boundary_vertex(label)].rotation[0]
    }

    /// The inner half-edge leaving boundary vertex `label`.
    pub fn boundary_stub(&self, label: usize) -> HalfEdge {
        self.vertices[self.boundary_vertex(label)].rotation[1]
    }

    pub fn faces(&self) -> Faces {
        let pos = self.rotation_positions();
        let mut face_of = vec![usize::MAX; self.edges.len() * 2];
        let mut cycles = Vec::new();
        for start in 0..self.edges.len() * 2 {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cycle = Vec::new();
            let mut h = start;
            loop {
                face_of[h] = id;
                cycle.push(h);
                h = self.next_cw(twin(h), &pos);
                if h == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        let outer = face_of[self.boundary_cycle_half_edge(1)];
        Faces { face_of, cycles, outer }
    }

    /// Face id of the boundary face between `b_i` and `b_{i+1}`.
    pub fn boundary_face(&self, faces: &Faces, label: usize) -> usize {
        faces.face_of[twin(self.boundary_cycle_half_edge(label))]
    }

    pub fn is_frozen_face(&self, faces: &Faces, f: usize) -> bool {
        faces.cycles[f].iter().any(|&h| self.is_boundary_edge(edge_of(h)))
    }

    pub fn inner_face_count(&self) -> usize {
        self.faces().len() - 1
    }

    pub fn validate(&self) -> Result<()> {
        let (n, k) = (self.n, self.k);
        check_kn(k, n)?;
        let bad = |m: String| Err(Error::Malformed(m));
        if self.boundary.len() != n {
            return bad(format!("{} boundary vertices, expected {n}", self.boundary.len()));
        }
        let nv = self.vertices.len();
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            if a >= nv || b >= nv {
                return bad(format!("edge {e} has an endpoint out of range"));
            }
            if a == b {
                return bad(format!("edge {e} is a loop"));
            }
        }
        let mut seen = vec![false; self.edges.len() * 2];
        for (v, vert) in self.vertices.iter().enumerate() {
            for &h in &vert.rotation {
                if h >= seen.len() || seen[h] {
                    return bad(format!("half-edge {h} repeated or out of range at vertex {v}"));
                }
                seen[h] = true;
                if self.tail(h) != v {
                    return bad(format!("half-edge {h} listed at vertex {v} but leaves {}", self.tail(h)));
                }
            }
        }
        if let Some(h) = seen.iter().position(|s| !s) {
            return bad(format!("half-edge {h} missing from its tail's rotation"));
        }
        let mut is_boundary = vec![false; nv];
        for &b in &self.boundary {
            if b >= nv || is_boundary[b] {
                return bad("boundary vertex list is not injective".into());
            }
            is_boundary[b] = true;
        }
        for (v, vert) in self.vertices.iter().enumerate() {
            if (vert.colour == Colour::Boundary) != is_boundary[v] {
                return bad(format!("vertex {v} colour disagrees with the boundary list"));
            }
        }
        for label in 1..=n {
            let b = self.boundary_vertex(label);
            let rot = &self.vertices[b].rotation;
            let next = self.boundary_vertex(label % n + 1);
            let prev = self.boundary_vertex((label + n - 2) % n + 1);
            if rot.len() != 3
                || self.head(rot[0]) != next
                || self.head(rot[2]) != prev
                || !self.colour(self.head(rot[1])).is_inner()
            {
                return bad(format!(
                    "boundary vertex {label} must have rotation [next boundary, one inner edge, previous boundary]"
                ));
            }
        }
        // connectivity
        let mut visited = vec![false; nv];
        let mut queue = VecDeque::from([self.boundary[0]]);
        visited[self.boundary[0]] = true;
        while let Some(v) = queue.pop_front() {
            for &h in &self.vertices[v].rotation {
                let w = self.head(h);
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if visited.iter().any(|v| !v) {
            return bad("graph is not connected".into());
        }
        let faces = self.faces();
        let euler = nv as i64 - self.edges.len() as i64 + faces.len() as i64;
        if euler != 2 {
            return bad(format!("rotation system has Euler characteristic {euler}, not a disk"));
        }
        let outer = &faces.cycles[faces.outer];
        if outer.len() != n || (1..=n).any(|i| faces.face_of[self.boundary_cycle_half_edge(i)] != faces.outer) {
            return bad("boundary cycle does not bound a single outer face".into());
        }
        Ok(())
    }

    /// Graph with every inner colour inverted.
    pub fn invert_colours(&self) -> PlabicGraph {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.colour = v.colour.inverted();
        }
        g
    }

    /// Relabels boundary vertex `i` as `f(i)`; `f` must be a rotation of `[n]`
    /// relative to the current clockwise order.
    pub(crate) fn relabel_boundary(&self, f: impl Fn(usize) -> usize) -> PlabicGraph {
        let mut g = self.clone();
        for label in 1..=self.n {
            g.boundary[f(label) - 1] = self.boundary[label - 1];
        }
        g
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            k: self.k,
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexJson {
                    id,
                    colour: v.colour,
                    label: self.boundary_label(id),
                    rotation: v.rotation.clone(),
                })
                .collect(),
            edges: self.edges.clone(),
            labels: None,
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let nv = j.vertices.len();
        let mut vertices = vec![
            Vertex {
                colour: Colour::Boundary,
                rotation: Vec::new()
            };
            nv
        ];
        let mut filled = vec![false; nv];
        let mut boundary = vec![usize::MAX; j.n];
        for v in &j.vertices {
            if v.id >= nv || filled[v.id] {
                return Err(Error::Malformed(format!("vertex id {} repeated or out of range", v.id)));
            }
            filled[v.id] = true;
            vertices[v.id] = Vertex {
                colour: v.colour,
                rotation: v.rotation.clone(),
            };
            if v.colour == Colour::Boundary {
                let label = v
                    .label
                    .filter(|&l| l >= 1 && l <= j.n)
                    .ok_or_else(|| Error::Malformed(format!("boundary vertex {} lacks a label in [1, n]", v.id)))?;
                if boundary[label - 1] != usize::MAX {
                    return Err(Error::Malformed(format!("boundary label {label} repeated")));
                }
                boundary[label - 1] = v.id;
            }
        }
        if boundary.contains(&usize::MAX) {
            return Err(Error::Malformed("missing boundary labels".into()));
        }
        PlabicGraph::from_parts(j.n, j.k, vertices, j.edges.clone(), boundary)
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph plabic {\n  node [shape=circle, label=\"\", width=0.2];\n");
        for (id, v) in self.vertices.iter().enumerate() {
            let attrs = match v.colour {
                Colour::Black => "style=filled, fillcolor=black".to_string(),
                Colour::White => "style=filled, fillcolor=white".to_string(),
                Colour::Boundary => format!("shape=plaintext, label=\"{}\"", self.boundary_label(id).unwrap_or_default()),
            };
            let _ = writeln!(s, "  v{id} [{attrs}];");
        }
        for (e, [a, b]) in self.edges.iter().enumerate() {
            let style = if self.is_boundary_edge(e) { " [style=dotted]" } else { "" };
            let _ = writeln!(s, "  v{a} -- v{b}{style};");
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VertexJson {
    pub id: usize,
    pub colour: Colour,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<usize>,
    pub rotation: Vec<HalfEdge>,
}

/// Wire format of a graph. `labels` is informational on output and ignored on input.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GraphJson {
    pub n: usize,
    pub k: usize,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<usize>>>,
}

/// Incremental construction from a straight-line drawing: rotations are
/// read off by sorting edge directions clockwise.
pub(crate) struct EmbeddingBuilder {
    pos: Vec<(f64, f64)>,
    colours: Vec<Colour>,
    edges: Vec<[VertexId; 2]>,
    /// Boundary attachments in clockwise order: inner vertex and stub direction.
    stubs: Vec<(VertexId, f64)>,
}

impl EmbeddingBuilder {
    pub fn new() -> Self {
        EmbeddingBuilder {
            pos: Vec::new(),
            colours: Vec::new(),
            edges: Vec::new(),
            stubs: Vec::new(),
        }
    }

    pub fn vertex(&mut self, x: f64, y: f64, colour: Colour) -> VertexId {
        self.pos.push((x, y));
        self.colours.push(colour);
        self.pos.len() - 1
    }

    pub fn edge(&mut self, a: VertexId, b: VertexId) {
        self.edges.push([a, b]);
    }

    /// Attaches the next boundary vertex (in clockwise order) to `v`,
    /// leaving `v` in direction `angle` (radians, counterclockwise from east).
    pub fn stub(&mut self, v: VertexId, angle: f64) {
        self.stubs.push((v, angle));
    }

    /// `first_label` is the label of the first stub added.
    pub fn finish(self, n: usize, k: usize, first_label: usize) -> Result<PlabicGraph> {
        if self.stubs.len() != n {
            return Err(Error::Malformed(format!("{} boundary stubs for n = {n}", self.stubs.len())));
        }
        let inner = self.pos.len();
        let mut edges = self.edges.clone();
        let mut dirs: Vec<Vec<(f64, HalfEdge)>> = vec![Vec::new(); inner + n];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            let (ax, ay) = self.pos[a];
            let (bx, by) = self.pos[b];
            dirs[a].push(((by - ay).atan2(bx - ax), 2 * e));
            dirs[b].push(((ay - by).atan2(ax - bx), 2 * e + 1));
        }
        let bvert = |slot: usize| inner + slot;
        let mut stub_half = Vec::with_capacity(n);
        for (slot, &(v, angle)) in self.stubs.iter().enumerate() {
            let e = edges.len();
            edges.push([v, bvert(slot)]);
            dirs[v].push((angle, 2 * e));
            stub_half.push(2 * e + 1);
        }
        let mut cycle_half = Vec::with_capacity(n);
        for slot in 0..n {
            let e = edges.len();
            edges.push([bvert(slot), bvert((slot + 1) % n)]);
            cycle_half.push(2 * e);
        }
        let mut vertices = Vec::with_capacity(inner + n);
        for (v, dir) in dirs.iter().enumerate().take(inner) {
            let mut d = dir.clone();
            // clockwise = decreasing angle
            d.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite angles"));
            vertices.push(Vertex {
                colour: self.colours[v],
                rotation: d.into_iter().map(|p| p.1).collect(),
            });
        }
        for slot in 0..n {
            let prev = (slot + n - 1) % n;
            vertices.push(Vertex {
                colour: Colour::Boundary,
                rotation: vec![cycle_half[slot], stub_half[slot], twin(cycle_half[prev])],
            });
        }
        let mut boundary = vec![0; n];
        for slot in 0..n {
            boundary[(first_label - 1 + slot) % n] = bvert(slot);
        }
        PlabicGraph::from_parts(n, k, vertices, edges, boundary)
    }
}
