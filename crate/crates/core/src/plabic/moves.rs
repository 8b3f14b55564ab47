//! Local moves: square move, (un)contraction of unicoloured edges, and
//! insertion/removal of degree-two vertices.

use super::graph::{edge_of, twin, Colour, EdgeId, HalfEdge, PlabicGraph, Vertex, VertexId};
use crate::error::{Error, Result};
use crate::subsets::KSubset;

/// Mutable working copy with tombstones; `finish` renumbers densely,
/// preserving the relative order of surviving vertices and edges.
struct Draft {
    n: usize,
    k: usize,
    vertices: Vec<Option<Vertex>>,
    edges: Vec<Option<[VertexId; 2]>>,
    boundary: Vec<VertexId>,
}

impl Draft {
    fn new(g: &PlabicGraph) -> Self {
        Draft {
            n: g.n,
            k: g.k,
            vertices: g.vertices.iter().cloned().map(Some).collect(),
            edges: g.edges.iter().copied().map(Some).collect(),
            boundary: g.boundary.clone(),
        }
    }

    fn vertex(&self, v: VertexId) -> &Vertex {
        self.vertices[v].as_ref().expect("live vertex")
    }

    fn vertex_mut(&mut self, v: VertexId) -> &mut Vertex {
        self.vertices[v].as_mut().expect("live vertex")
    }

    fn head(&self, h: HalfEdge) -> VertexId {
        self.edges[h / 2].expect("live edge")[1 - h % 2]
    }

    fn set_tail(&mut self, h: HalfEdge, v: VertexId) {
        self.edges[h / 2].as_mut().expect("live edge")[h % 2] = v;
    }

    fn replace_in_rotation(&mut self, v: VertexId, old: HalfEdge, new: HalfEdge) {
        let rot = &mut self.vertex_mut(v).rotation;
        let i = rot.iter().position(|&h| h == old).expect("half-edge in rotation");
        rot[i] = new;
    }

    fn is_inner(&self, v: VertexId) -> bool {
        self.vertex(v).colour.is_inner()
    }

    fn add_edge(&mut self, a: VertexId, b: VertexId) -> EdgeId {
        self.edges.push(Some([a, b]));
        self.edges.len() - 1
    }

    fn add_vertex(&mut self, colour: Colour) -> VertexId {
        self.vertices.push(Some(Vertex {
            colour,
            rotation: Vec::new(),
        }));
        self.vertices.len() - 1
    }

    fn removable_degree_two(&self, v: VertexId) -> Result<()> {
        let vert = self.vertices[v]
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("no vertex {v}")))?;
        if !vert.colour.is_inner() || vert.rotation.len() != 2 {
            return Err(Error::Precondition(format!("vertex {v} is not an inner vertex of degree 2")));
        }
        let (a, b) = (self.head(vert.rotation[0]), self.head(vert.rotation[1]));
        if a == b {
            return Err(Error::Precondition(format!("removing vertex {v} would create a loop")));
        }
        if !self.is_inner(a) && !self.is_inner(b) {
            return Err(Error::Precondition(format!("vertex {v} joins two boundary vertices")));
        }
        Ok(())
    }

    fn remove_degree_two(&mut self, v: VertexId) -> Result<()> {
        self.removable_degree_two(v)?;
        let rot = self.vertex(v).rotation.clone();
        let (h1, h2) = (rot[0], rot[1]);
        let b = self.head(h2);
        // keep the edge of h1; its v-end moves to b and takes h2's slot at b
        self.set_tail(h1, b);
        self.replace_in_rotation(b, twin(h2), h1);
        self.edges[edge_of(h2)] = None;
        self.vertices[v] = None;
        Ok(())
    }

    fn contractible(&self, e: EdgeId) -> Result<()> {
        let [u, v] = self
            .edges
            .get(e)
            .copied()
            .flatten()
            .ok_or_else(|| Error::Precondition(format!("no edge {e}")))?;
        let (cu, cv) = (self.vertex(u).colour, self.vertex(v).colour);
        if !cu.is_inner() || cu != cv {
            return Err(Error::Precondition(format!("edge {e} is not a unicoloured inner edge")));
        }
        let parallel = self.vertex(u).rotation.iter().any(|&h| edge_of(h) != e && self.head(h) == v);
        if parallel {
            return Err(Error::Precondition(format!("edge {e} has a parallel edge")));
        }
        Ok(())
    }

    fn contract_edge(&mut self, e: EdgeId) -> Result<()> {
        self.contractible(e)?;
        let [a, b] = self.edges[e].expect("live edge");
        let (u, v) = (a.min(b), a.max(b));
        let huv = if a == u { 2 * e } else { 2 * e + 1 };
        let after = |rot: &[HalfEdge], h: HalfEdge| {
            let i = rot.iter().position(|&x| x == h).expect("in rotation");
            rot[i + 1..].iter().chain(&rot[..i]).copied().collect::<Vec<_>>()
        };
        let mut merged = after(&self.vertex(u).rotation, huv);
        let from_v = after(&self.vertex(v).rotation, twin(huv));
        for &h in &from_v {
            self.set_tail(h, u);
        }
        merged.extend(from_v);
        self.vertex_mut(u).rotation = merged;
        self.vertices[v] = None;
        self.edges[e] = None;
        Ok(())
    }

    /// Moves `len` consecutive half-edges starting at rotation index `start`
    /// onto a new vertex of the same colour, joined to `v` by a new edge.
    fn uncontract(&mut self, v: VertexId, start: usize, len: usize) -> Result<VertexId> {
        let vert = self
            .vertices
            .get(v)
            .cloned()
            .flatten()
            .ok_or_else(|| Error::Precondition(format!("no vertex {v}")))?;
        let d = vert.rotation.len();
        if !vert.colour.is_inner() || start >= d || len == 0 || len >= d {
            return Err(Error::Precondition(format!(
                "cannot split {len} of {d} half-edges from vertex {v} at {start}"
            )));
        }
        let w = self.add_vertex(vert.colour);
        let e = self.add_edge(v, w);
        let block: Vec<HalfEdge> = (0..len).map(|i| vert.rotation[(start + i) % d]).collect();
        let mut rest = vec![2 * e];
        rest.extend((len..d).map(|i| vert.rotation[(start + i) % d]));
        for &h in &block {
            self.set_tail(h, w);
        }
        let mut wrot = vec![2 * e + 1];
        wrot.extend(block);
        self.vertex_mut(v).rotation = rest;
        self.vertex_mut(w).rotation = wrot;
        Ok(w)
    }

    fn insert_vertex(&mut self, e: EdgeId, colour: Colour) -> Result<VertexId> {
        let [a, b] = self
            .edges
            .get(e)
            .copied()
            .flatten()
            .ok_or_else(|| Error::Precondition(format!("no edge {e}")))?;
        if !colour.is_inner() {
            return Err(Error::Precondition("inserted vertex must be black or white".into()));
        }
        if !self.is_inner(a) && !self.is_inner(b) {
            return Err(Error::Precondition(format!("edge {e} lies on the boundary cycle")));
        }
        let m = self.add_vertex(colour);
        // edge e becomes a–m, new edge f is m–b
        self.edges[e] = Some([a, m]);
        let f = self.add_edge(m, b);
        self.replace_in_rotation(b, 2 * e + 1, 2 * f + 1);
        self.vertex_mut(m).rotation = vec![2 * e + 1, 2 * f];
        Ok(m)
    }

    fn finish(self) -> Result<PlabicGraph> {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        for (v, slot) in self.vertices.iter().enumerate() {
            if slot.is_some() {
                vmap[v] = next;
                next += 1;
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (e, slot) in self.edges.iter().enumerate() {
            if let Some([a, b]) = slot {
                emap[e] = edges.len();
                edges.push([vmap[*a], vmap[*b]]);
            }
        }
        let hmap = |h: HalfEdge| 2 * emap[h / 2] + h % 2;
        let vertices = self
            .vertices
            .into_iter()
            .flatten()
            .map(|v| Vertex {
                colour: v.colour,
                rotation: v.rotation.into_iter().map(hmap).collect(),
            })
            .collect();
        let boundary = self.boundary.iter().map(|&b| vmap[b]).collect();
        PlabicGraph::from_parts(self.n, self.k, vertices, edges, boundary)
    }

    fn contract_all(&mut self) {
        loop {
            let mut changed = false;
            for v in 0..self.vertices.len() {
                if self.vertices[v].is_some() && self.removable_degree_two(v).is_ok() {
                    self.remove_degree_two(v).expect("checked");
                    changed = true;
                }
            }
            for e in 0..self.edges.len() {
                if self.edges[e].is_some() && self.contractible(e).is_ok() {
                    self.contract_edge(e).expect("checked");
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
}

impl PlabicGraph {
    /// Removes the degree-two inner vertex `v`, merging its two edges.
    pub fn remove_vertex(&self, v: VertexId) -> Result<PlabicGraph> {
        let mut d = Draft::new(self);
        d.remove_degree_two(v)?;
        d.finish()
    }

    /// Subdivides edge `e` with a new vertex of the given colour.
    pub fn insert_vertex(&self, e: EdgeId, colour: Colour) -> Result<(PlabicGraph, VertexId)> {
        let mut d = Draft::new(self);
        d.insert_vertex(e, colour)?;
        let g = d.finish()?;
        let m = g.vertices.len() - 1;
        Ok((g, m))
    }

    /// Contracts the unicoloured inner edge `e`.
    pub fn contract_edge(&self, e: EdgeId) -> Result<PlabicGraph> {
        let mut d = Draft::new(self);
        d.contract_edge(e)?;
        d.finish()
    }

    /// Inverse of edge contraction: moves `len` consecutive half-edges of
    /// `v` (from rotation index `start`) to a new vertex of the same colour.
    pub fn uncontract(&self, v: VertexId, start: usize, len: usize) -> Result<(PlabicGraph, VertexId)> {
        let mut d = Draft::new(self);
        d.uncontract(v, start, len)?;
        let g = d.finish()?;
        let w = g.vertices.len() - 1;
        Ok((g, w))
    }

    /// Applies contractions and degree-two removals until neither applies.
    pub fn contracted(&self) -> PlabicGraph {
        let mut d = Draft::new(self);
        d.contract_all();
        d.finish().expect("contraction preserves validity")
    }

    fn square_face(&self, label: &KSubset) -> Result<Vec<HalfEdge>> {
        let fl = self.face_labels()?;
        let f = fl
            .face_with_label(label)
            .ok_or_else(|| Error::LabelAbsent(label.to_string()))?;
        if self.is_frozen_face(&fl.faces, f) {
            return Err(Error::Frozen(label.to_string()));
        }
        let cycle = fl.faces.cycles[f].clone();
        let not = |why: &str| Err(Error::NotMutable(label.to_string(), why.to_string()));
        if cycle.len() != 4 {
            return not(&format!("face has {} sides", cycle.len()));
        }
        let corners: Vec<VertexId> = cycle.iter().map(|&h| self.tail(h)).collect();
        if corners.iter().any(|&c| !self.colour(c).is_inner()) {
            return not("face touches the boundary");
        }
        for i in 0..4 {
            if self.colour(corners[i]) == self.colour(corners[(i + 1) % 4]) {
                return not("face colours do not alternate");
            }
            if corners[i] == corners[(i + 2) % 4] {
                return not("face corners are not distinct");
            }
        }
        Ok(cycle)
    }

    /// Strict square move: the face must have four trivalent corners.
    pub fn square_move(&self, label: &KSubset) -> Result<PlabicGraph> {
        let cycle = self.square_face(label)?;
        if cycle.iter().any(|&h| self.degree(self.tail(h)) != 3) {
            return Err(Error::NotMutable(label.to_string(), "corners are not trivalent".into()));
        }
        let mut g = self.clone();
        for &h in &cycle {
            let c = self.tail(h);
            g.vertices[c].colour = g.vertices[c].colour.inverted();
        }
        Ok(g)
    }

    /// Mutation at the face labelled `label`: normalise the corners to
    /// degree three, apply the square move and contract. Returns the new
    /// graph and the label replacing `label`.
    pub fn mutate(&self, label: &KSubset) -> Result<(PlabicGraph, KSubset)> {
        let g = self.contracted();
        let before = g.labels()?;
        let cycle = g.square_face(label)?;
        let mut d = Draft::new(&g);
        for &h_out in &cycle {
            let c = g.tail(h_out);
            let deg = d.vertex(c).rotation.len();
            if deg > 3 {
                let idx = d.vertex(c).rotation.iter().position(|&x| x == h_out).expect("in rotation");
                d.uncontract(c, (idx + 1) % deg, deg - 2)?;
            }
        }
        for &h in &cycle {
            let c = g.tail(h);
            let col = d.vertex(c).colour.inverted();
            d.vertex_mut(c).colour = col;
        }
        d.contract_all();
        let out = d.finish()?;
        let after = out.labels()?;
        let gone: Vec<_> = before.iter().filter(|l| !after.contains(l)).collect();
        let new: Vec<_> = after.iter().filter(|l| !before.contains(l)).copied().collect();
        if gone != vec![label] || new.len() != 1 {
            return Err(Error::Mismatch(format!(
                "mutation at {label} changed {} labels",
                gone.len().max(new.len())
            )));
        }
        Ok((out, new[0]))
    }

    /// Labels of faces that can be mutated.
    pub fn mutable_labels(&self) -> Result<Vec<KSubset>> {
        let g = self.contracted();
        let fl = g.face_labels()?;
        Ok(fl
            .left
            .iter()
            .flatten()
            .filter(|l| g.square_face(l).is_ok())
            .copied()
            .collect())
    }
}
