//! Trips, reducedness and face labels.

use std::collections::BTreeSet;
use std::fmt;

use super::graph::{edge_of, twin, Colour, EdgeId, Faces, HalfEdge, PlabicGraph, VertexId};
use crate::error::{Error, Result};
use crate::subsets::{frozen_label, KSubset, LabelCollection};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trip {
    pub start: usize,
    pub end: usize,
    pub half_edges: Vec<HalfEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducednessWitness {
    RoundTrip(Vec<HalfEdge>),
    Leaf(VertexId),
    SelfIntersection { trip: usize, edge: EdgeId },
    BadDoubleCrossing { trips: (usize, usize), edges: (EdgeId, EdgeId) },
}

impl fmt::Display for ReducednessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReducednessWitness::RoundTrip(h) => write!(f, "round trip of length {}", h.len()),
            ReducednessWitness::Leaf(v) => write!(f, "leaf at vertex {v}"),
            ReducednessWitness::SelfIntersection { trip, edge } => {
                write!(f, "trip from {trip} crosses itself on edge {edge}")
            }
            ReducednessWitness::BadDoubleCrossing { trips, edges } => write!(
                f,
                "trips from {} and {} cross on edges {} and {} in the same order",
                trips.0, trips.1, edges.0, edges.1
            ),
        }
    }
}

/// Left labels of every inner face; `None` for the outer face.
#[derive(Clone, Debug)]
pub struct FaceLabels {
    pub faces: Faces,
    pub left: Vec<Option<KSubset>>,
}

impl FaceLabels {
    pub fn face_with_label(&self, label: &KSubset) -> Option<usize> {
        self.left.iter().position(|l| l.as_ref() == Some(label))
    }
}

impl PlabicGraph {
    fn trip_step(&self, h: HalfEdge, pos: &[usize]) -> HalfEdge {
        let back = twin(h);
        match self.colour(self.head(h)) {
            Colour::White => self.next_cw(back, pos),
            _ => self.next_ccw(back, pos),
        }
    }

    /// Trips indexed by their starting boundary label (`trips()[i - 1]` starts at `i`).
    pub fn trips(&self) -> Vec<Trip> {
        let pos = self.rotation_positions();
        (1..=self.n)
            .map(|i| {
                let mut h = self.boundary_stub(i);
                let mut half_edges = vec![h];
                let limit = self.edges.len() * 2 + 1;
                while self.colour(self.head(h)).is_inner() && half_edges.len() <= limit {
                    h = self.trip_step(h, &pos);
                    half_edges.push(h);
                }
                let end = self.boundary_label(self.head(h)).unwrap_or(0);
                Trip {
                    start: i,
                    end,
                    half_edges,
                }
            })
            .collect()
    }

    /// `perm[i - 1]` is where the trip starting at `i` ends.
    pub fn trip_permutation(&self) -> Vec<usize> {
        self.trips().iter().map(|t| t.end).collect()
    }

    pub fn round_trips(&self) -> Vec<Vec<HalfEdge>> {
        let pos = self.rotation_positions();
        let mut used = vec![false; self.edges.len() * 2];
        for t in self.trips() {
            for h in t.half_edges {
                used[h] = true;
            }
        }
        for e in 0..self.edges.len() {
            if self.is_boundary_edge(e) {
                used[2 * e] = true;
                used[2 * e + 1] = true;
            }
        }
        let mut out = Vec::new();
        for start in 0..used.len() {
            if used[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            while !used[h] {
                used[h] = true;
                cycle.push(h);
                h = self.trip_step(h, &pos);
            }
            out.push(cycle);
        }
        out
    }

    /// First obstruction to reducedness found, or `None` when reduced.
    pub fn reducedness_witness(&self) -> Option<ReducednessWitness> {
        let g = self.contracted();
        for (v, vert) in g.vertices.iter().enumerate() {
            if vert.colour.is_inner() && vert.rotation.len() <= 1 {
                return Some(ReducednessWitness::Leaf(v));
            }
        }
        if let Some(r) = g.round_trips().into_iter().next() {
            return Some(ReducednessWitness::RoundTrip(r));
        }
        let trips = g.trips();
        // (trip, index along trip) for each traversal direction of each edge
        let mut visits: Vec<[Option<(usize, usize)>; 2]> = vec![[None, None]; g.edges.len()];
        for (t, trip) in trips.iter().enumerate() {
            for (idx, &h) in trip.half_edges.iter().enumerate() {
                visits[edge_of(h)][h % 2] = Some((t, idx));
            }
        }
        let essential = |e: EdgeId| {
            let [a, b] = g.edges[e];
            g.colour(a).is_inner() && g.colour(b).is_inner() && g.colour(a) != g.colour(b)
        };
        let mut crossings: Vec<(usize, usize, usize, usize, EdgeId)> = Vec::new();
        for (e, visit) in visits.iter().enumerate() {
            if let [Some((t1, i1)), Some((t2, i2))] = *visit {
                if !essential(e) {
                    continue;
                }
                if t1 == t2 {
                    return Some(ReducednessWitness::SelfIntersection { trip: t1 + 1, edge: e });
                }
                let (a, ia, b, ib) = if t1 < t2 { (t1, i1, t2, i2) } else { (t2, i2, t1, i1) };
                crossings.push((a, b, ia, ib, e));
            }
        }
        crossings.sort();
        for (x, c1) in crossings.iter().enumerate() {
            for c2 in &crossings[x + 1..] {
                if (c1.0, c1.1) != (c2.0, c2.1) {
                    break;
                }
                if (c1.2 < c2.2) == (c1.3 < c2.3) {
                    return Some(ReducednessWitness::BadDoubleCrossing {
                        trips: (c1.0 + 1, c1.1 + 1),
                        edges: (c1.4, c2.4),
                    });
                }
            }
        }
        None
    }

    pub fn is_reduced(&self) -> bool {
        self.reducedness_witness().is_none()
    }

    /// Left face labels: `j` belongs to the label of a face iff the face is
    /// to the left of the trip starting at `j`.
    pub fn face_labels(&self) -> Result<FaceLabels> {
        if let Some(w) = self.reducedness_witness() {
            return Err(Error::NotReduced(w.to_string()));
        }
        let faces = self.faces();
        let nf = faces.len();
        let mut bits = vec![0u64; nf];
        for trip in self.trips() {
            let on_trip: BTreeSet<EdgeId> = trip.half_edges.iter().map(|&h| edge_of(h)).collect();
            let mut uf = UnionFind::new(nf);
            for e in 0..self.edges.len() {
                if on_trip.contains(&e) {
                    continue;
                }
                let (f1, f2) = (faces.face_of[2 * e], faces.face_of[2 * e + 1]);
                if f1 != faces.outer && f2 != faces.outer {
                    uf.union(f1, f2);
                }
            }
            let mut side = vec![0u8; nf];
            for &h in &trip.half_edges {
                for (f, s) in [(faces.face_of[h], 1u8), (faces.face_of[twin(h)], 2u8)] {
                    if f != faces.outer {
                        side[uf.find(f)] |= s;
                    }
                }
            }
            for f in faces.inner() {
                match side[uf.find(f)] {
                    1 => bits[f] |= 1u64 << (trip.start - 1),
                    2 => {}
                    3 => {
                        return Err(Error::NotReduced(format!(
                            "trip from {} does not separate the disk",
                            trip.start
                        )))
                    }
                    _ => return Err(Error::Malformed(format!("face {f} unreachable from trip {}", trip.start))),
                }
            }
        }
        let left: Vec<Option<KSubset>> = (0..nf)
            .map(|f| (f != faces.outer).then(|| KSubset::from_bits(self.n, bits[f])))
            .collect();
        for l in left.iter().flatten() {
            if l.len() != self.k {
                return Err(Error::Mismatch(format!(
                    "face label {l} has size {}, expected k = {}",
                    l.len(),
                    self.k
                )));
            }
        }
        Ok(FaceLabels { faces, left })
    }

    /// Left labels as a collection.
    pub fn labels(&self) -> Result<LabelCollection> {
        let fl = self.face_labels()?;
        LabelCollection::new(self.n, self.k, fl.left.into_iter().flatten())
    }

    /// Right labels (complements of the left labels).
    pub fn right_labels(&self) -> Result<LabelCollection> {
        Ok(self.labels()?.complements())
    }

    /// True iff the trip permutation is `i ↦ i + k` and boundary faces carry
    /// the cyclic intervals `<i-k+1, i>`.
    pub fn has_top_cell_labels(&self) -> Result<bool> {
        let perm = self.trip_permutation();
        if (1..=self.n).any(|i| perm[i - 1] != (i + self.k - 1) % self.n + 1) {
            return Ok(false);
        }
        let fl = self.face_labels()?;
        Ok((1..=self.n).all(|i| fl.left[self.boundary_face(&fl.faces, i)] == Some(frozen_label(i as i64, self.k, self.n))))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}
