//! Quivers of plabic graphs and quiver mutation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plabic::{Colour, PlabicGraph};
use crate::subsets::KSubset;

/// Vertices are labels; arrows a multiplicity map on ordered pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    /// label -> frozen
    vertices: BTreeMap<KSubset, bool>,
    arrows: BTreeMap<(KSubset, KSubset), u32>,
}

impl Quiver {
    pub fn new(
        n: usize,
        vertices: BTreeMap<KSubset, bool>,
        arrows: impl IntoIterator<Item = ((KSubset, KSubset), u32)>,
    ) -> Result<Self> {
        let mut q = Quiver {
            n,
            vertices,
            arrows: BTreeMap::new(),
        };
        for ((a, b), m) in arrows {
            if !q.vertices.contains_key(&a) || !q.vertices.contains_key(&b) {
                return Err(Error::LabelAbsent(format!("arrow {a} -> {b}")));
            }
            if a == b {
                return Err(Error::Invalid(format!("loop at {a}")));
            }
            *q.arrows.entry((a, b)).or_default() += m;
        }
        q.normalize();
        Ok(q)
    }

    /// Quiver of a reduced graph with vertices labelled by left face labels.
    pub fn from_graph(g: &PlabicGraph) -> Result<Self> {
        let g = g.contracted();
        let fl = g.face_labels()?;
        let label = |f: usize| fl.left[f].expect("inner face");
        let mut vertices = BTreeMap::new();
        for f in fl.faces.inner() {
            vertices.insert(label(f), g.is_frozen_face(&fl.faces, f));
        }
        let mut arrows = BTreeMap::new();
        for (e, &[a, b]) in g.edges().iter().enumerate() {
            let (ca, cb) = (g.colour(a), g.colour(b));
            if !ca.is_inner() || !cb.is_inner() || ca == cb {
                continue;
            }
            // half-edge from the black end to the white end
            let bw = if ca == Colour::Black { 2 * e } else { 2 * e + 1 };
            let (from, to) = (fl.faces.face_of[bw], fl.faces.face_of[bw ^ 1]);
            if from == fl.faces.outer || to == fl.faces.outer || from == to {
                continue;
            }
            *arrows.entry((label(from), label(to))).or_default() += 1;
        }
        let mut q = Quiver {
            n: g.n(),
            vertices,
            arrows,
        };
        q.normalize();
        Ok(q)
    }

    /// Same quiver with every label replaced by its complement.
    pub fn complemented(&self) -> Quiver {
        Quiver {
            n: self.n,
            vertices: self.vertices.iter().map(|(l, &f)| (l.complement(), f)).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|(&(a, b), &m)| ((a.complement(), b.complement()), m))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &BTreeMap<KSubset, bool> {
        &self.vertices
    }

    pub fn arrows(&self) -> &BTreeMap<(KSubset, KSubset), u32> {
        &self.arrows
    }

    pub fn multiplicity(&self, from: &KSubset, to: &KSubset) -> u32 {
        self.arrows.get(&(*from, *to)).copied().unwrap_or(0)
    }

    pub fn is_frozen(&self, v: &KSubset) -> Option<bool> {
        self.vertices.get(v).copied()
    }

    pub fn mutable_vertices(&self) -> impl Iterator<Item = &KSubset> {
        self.vertices.iter().filter(|(_, &f)| !f).map(|(l, _)| l)
    }

    /// Arrows into `w` with multiplicities.
    pub fn incoming(&self, w: &KSubset) -> Vec<(KSubset, u32)> {
        self.arrows
            .iter()
            .filter(|((_, b), _)| b == w)
            .map(|(&(a, _), &m)| (a, m))
            .collect()
    }

    pub fn outgoing(&self, w: &KSubset) -> Vec<(KSubset, u32)> {
        self.arrows
            .iter()
            .filter(|((a, _), _)| a == w)
            .map(|(&(_, b), &m)| (b, m))
            .collect()
    }

    fn check_mutable(&self, w: &KSubset) -> Result<()> {
        match self.vertices.get(w) {
            None => Err(Error::LabelAbsent(w.to_string())),
            Some(true) => Err(Error::Frozen(w.to_string())),
            Some(false) => Ok(()),
        }
    }

    /// Cancels 2-cycles and drops arrows between frozen vertices.
    fn normalize(&mut self) {
        let keys: Vec<_> = self.arrows.keys().copied().collect();
        for (a, b) in keys {
            let ab = self.multiplicity(&a, &b);
            let ba = self.multiplicity(&b, &a);
            let c = ab.min(ba);
            if c > 0 {
                self.arrows.insert((a, b), ab - c);
                self.arrows.insert((b, a), ba - c);
            }
        }
        let frozen = |l: &KSubset| self.vertices.get(l).copied().unwrap_or(false);
        let keep: BTreeMap<_, _> = self
            .arrows
            .iter()
            .filter(|(&(a, b), &m)| m > 0 && !(frozen(&a) && frozen(&b)))
            .map(|(&k, &m)| (k, m))
            .collect();
        self.arrows = keep;
    }

    pub fn mutate(&self, w: &KSubset) -> Result<Quiver> {
        self.check_mutable(w)?;
        let frozen = |l: &KSubset| self.vertices[l];
        let mut arrows = self.arrows.clone();
        for (i, a) in self.incoming(w) {
            for (j, b) in self.outgoing(w) {
                if i != j && !(frozen(&i) && frozen(&j)) {
                    *arrows.entry((i, j)).or_default() += a * b;
                }
            }
        }
        let mut out = BTreeMap::new();
        for ((a, b), m) in arrows {
            let key = if a == *w || b == *w { (b, a) } else { (a, b) };
            *out.entry(key).or_default() += m;
        }
        let mut q = Quiver {
            n: self.n,
            vertices: self.vertices.clone(),
            arrows: out,
        };
        q.normalize();
        Ok(q)
    }

    /// Renames vertex `old` to `new`.
    pub fn relabel(&self, old: &KSubset, new: &KSubset) -> Result<Quiver> {
        let frozen = *self.vertices.get(old).ok_or_else(|| Error::LabelAbsent(old.to_string()))?;
        if old != new && self.vertices.contains_key(new) {
            return Err(Error::Invalid(format!("label {new} already present")));
        }
        let r = |l: KSubset| if l == *old { *new } else { l };
        let mut vertices = self.vertices.clone();
        vertices.remove(old);
        vertices.insert(*new, frozen);
        Ok(Quiver {
            n: self.n,
            vertices,
            arrows: self.arrows.iter().map(|(&(a, b), &m)| ((r(a), r(b)), m)).collect(),
        })
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            n: self.n,
            vertices: self
                .vertices
                .iter()
                .map(|(l, &frozen)| QuiverVertexJson {
                    label: l.elements(),
                    frozen,
                })
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|((a, b), &m)| ArrowJson {
                    from: a.elements(),
                    to: b.elements(),
                    multiplicity: m,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &QuiverJson) -> Result<Self> {
        let mut vertices = BTreeMap::new();
        for v in &j.vertices {
            if vertices
                .insert(KSubset::new(j.n, v.label.iter().copied())?, v.frozen)
                .is_some()
            {
                return Err(Error::Invalid(format!("duplicate quiver vertex {:?}", v.label)));
            }
        }
        let arrows = j
            .arrows
            .iter()
            .map(|a| {
                Ok((
                    (
                        KSubset::new(j.n, a.from.iter().copied())?,
                        KSubset::new(j.n, a.to.iter().copied())?,
                    ),
                    a.multiplicity,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(j.n, vertices, arrows)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for (l, &frozen) in &self.vertices {
            let shape = if frozen { "box" } else { "ellipse" };
            let _ = writeln!(s, "  \"{}\" [shape={shape}];", l.to_key());
        }
        for ((a, b), &m) in &self.arrows {
            for _ in 0..m {
                let _ = writeln!(s, "  \"{}\" -> \"{}\";", a.to_key(), b.to_key());
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuiverVertexJson {
    pub label: Vec<usize>,
    pub frozen: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ArrowJson {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuiverJson {
    pub n: usize,
    pub vertices: Vec<QuiverVertexJson>,
    pub arrows: Vec<ArrowJson>,
}
