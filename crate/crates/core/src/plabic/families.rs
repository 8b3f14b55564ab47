//! The named families: rectangle, checkboard and their duals.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::graph::{Colour, EmbeddingBuilder, HalfEdge, PlabicGraph};
use crate::error::{Error, Result};
use crate::subsets::{check_kn, KSubset, LabelCollection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Rec,
    Ch,
    DualRec,
    DualCh,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Rec, Family::Ch, Family::DualRec, Family::DualCh];

    pub fn name(self) -> &'static str {
        match self {
            Family::Rec => "rec",
            Family::Ch => "ch",
            Family::DualRec => "dual-rec",
            Family::DualCh => "dual-ch",
        }
    }

    pub fn build(self, k: usize, n: usize) -> Result<PlabicGraph> {
        Ok(self.build_with_grid(k, n)?.graph)
    }

    pub fn build_with_grid(self, k: usize, n: usize) -> Result<GridGraph> {
        match self {
            Family::Rec => Ok(GridGraph {
                graph: build_rectangle(k, n)?,
                grid: BTreeMap::new(),
            }),
            Family::Ch => build_checkboard(k, n),
            Family::DualRec => {
                check_kn(k, n)?;
                Ok(GridGraph {
                    graph: build_dual(&build_rectangle(n - k, n)?, k)?,
                    grid: BTreeMap::new(),
                })
            }
            Family::DualCh => {
                check_kn(k, n)?;
                let base = build_checkboard(n - k, n)?;
                Ok(GridGraph {
                    graph: build_dual(&base.graph, k)?,
                    grid: base.grid,
                })
            }
        }
    }

    /// Labels predicted by the closed formulas, frozen labels included.
    pub fn formula_labels(self, k: usize, n: usize) -> Result<LabelCollection> {
        check_kn(k, n)?;
        let (rows, cols) = self.grid_shape(k, n);
        let labels: BTreeSet<KSubset> = (0..=rows)
            .flat_map(|i| (0..=cols).map(move |j| (i, j)))
            .map(|(i, j)| self.formula_label(k, n, i, j))
            .collect();
        LabelCollection::new(n, k, labels)
    }

    /// `(rows, cols)` of the extended face grid: indices run over `0..=rows`, `0..=cols`.
    pub fn grid_shape(self, k: usize, n: usize) -> (usize, usize) {
        match self {
            Family::Rec | Family::Ch => (n - k, k),
            Family::DualRec | Family::DualCh => (k, n - k),
        }
    }

    /// Closed-form left label of grid face `(i, j)` (extended indices allowed).
    pub fn formula_label(self, k: usize, n: usize, i: usize, j: usize) -> KSubset {
        let (i, j, k_, n_) = (i as i64, j as i64, k as i64, n as i64);
        let pre = |m: i64| KSubset::prefix(n, m);
        let c = (i + j + 1).div_euclid(2);
        match self {
            Family::Rec => pre(i + j).difference(&pre(i)).union(&pre(n_).difference(&pre(n_ - k_ + j))),
            Family::Ch => Family::Rec.formula_label(k, n, i as usize, j as usize).rotate(-c),
            Family::DualRec => pre(i).union(&pre(k_ + j).difference(&pre(i + j))),
            Family::DualCh => Family::DualRec.formula_label(k, n, i as usize, j as usize).rotate(-c),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family {s:?}; expected rec, ch, dual-rec or dual-ch")))
    }
}

/// A family graph together with the half-edges locating its inner grid
/// faces: `grid[(i, j)]` has face `f_{i,j}` on its left.
#[derive(Clone, Debug)]
pub struct GridGraph {
    pub graph: PlabicGraph,
    pub grid: BTreeMap<(usize, usize), HalfEdge>,
}

impl GridGraph {
    /// Left label of every inner grid face as traced from the graph.
    pub fn grid_labels(&self) -> Result<BTreeMap<(usize, usize), KSubset>> {
        let fl = self.graph.face_labels()?;
        Ok(self
            .grid
            .iter()
            .map(|(&pos, &h)| (pos, fl.left[fl.faces.face_of[h]].expect("inner face")))
            .collect())
    }
}

/// The rectangle graph exactly as laid out on the `2(n-k) x 2k` grid, before contraction.
pub fn rectangle_representative(k: usize, n: usize) -> Result<PlabicGraph> {
    check_kn(k, n)?;
    let (rows, cols) = (2 * (n - k), 2 * k);
    let exists = |i: usize, j: usize| {
        (1..=rows).contains(&i)
            && (1..=cols).contains(&j)
            && (i + j).is_multiple_of(2)
            && (i, j) != (1, 1)
            && (i, j) != (rows, cols)
    };
    let mut b = EmbeddingBuilder::new();
    let mut id = BTreeMap::new();
    for i in 1..=rows {
        for j in 1..=cols {
            if exists(i, j) {
                let colour = if i % 2 == 0 { Colour::White } else { Colour::Black };
                id.insert((i, j), b.vertex(j as f64, -(i as f64), colour));
            }
        }
    }
    let mut edges = BTreeSet::new();
    for (&(i, j), &v) in &id {
        let candidates: Vec<(usize, usize)> = if i % 2 == 1 {
            vec![(i + 1, j + 1), (i + 1, j.wrapping_sub(1))]
        } else {
            vec![(i + 1, j.wrapping_sub(1)), (i.wrapping_sub(1), j.wrapping_sub(1))]
        };
        for (a, c) in candidates {
            if let Some(&w) = id.get(&(a, c)) {
                edges.insert((v.min(w), v.max(w)));
            }
        }
    }
    for (v, w) in edges {
        b.edge(v, w);
    }
    b.stub(id[&(2, 2)], PI);
    for j in (3..cols).step_by(2) {
        b.stub(id[&(1, j)], FRAC_PI_2);
    }
    for i in (2..rows).step_by(2) {
        b.stub(id[&(i, cols)], 0.0);
    }
    b.stub(id[&(rows - 1, cols - 1)], -FRAC_PI_2);
    b.finish(n, k, 1)
}

/// Contracted rectangle graph.
pub fn build_rectangle(k: usize, n: usize) -> Result<PlabicGraph> {
    Ok(rectangle_representative(k, n)?.contracted())
}

pub fn build_checkboard(k: usize, n: usize) -> Result<GridGraph> {
    check_kn(k, n)?;
    let rows = n - k;
    let mut b = EmbeddingBuilder::new();
    let mut id = BTreeMap::new();
    let white = |i: usize, j: usize| (i + j).is_multiple_of(2);
    for i in 1..=rows {
        for j in 1..=k {
            let colour = if white(i, j) { Colour::White } else { Colour::Black };
            id.insert((i, j), b.vertex(j as f64, -(i as f64), colour));
        }
    }
    for i in 1..=rows {
        for j in 1..=k {
            if j < k {
                b.edge(id[&(i, j)], id[&(i, j + 1)]);
            }
            if i < rows {
                b.edge(id[&(i, j)], id[&(i + 1, j)]);
            }
        }
    }
    // clockwise from the top-left corner: top, right, bottom, left
    for j in 1..=k {
        if !white(1, j) {
            b.stub(id[&(1, j)], FRAC_PI_2);
        }
    }
    for i in 1..=rows {
        if white(i, k) {
            b.stub(id[&(i, k)], 0.0);
        }
    }
    for j in (1..=k).rev() {
        if !white(rows, j) {
            b.stub(id[&(rows, j)], -FRAC_PI_2);
        }
    }
    for i in (1..=rows).rev() {
        if white(i, 1) {
            b.stub(id[&(i, 1)], PI);
        }
    }
    let graph = b.finish(n, k, 1)?;
    // face f_{i,j} lies south of the edge v_{i,j} -- v_{i,j+1}, i.e. left of v_{i,j+1} -> v_{i,j}
    let mut grid = BTreeMap::new();
    for i in 1..rows {
        for j in 1..k {
            let (u, v) = (id[&(i, j + 1)], id[&(i, j)]);
            let h = graph.vertices[u]
                .rotation
                .iter()
                .copied()
                .find(|&h| graph.head(h) == v)
                .expect("grid edge");
            grid.insert((i, j), h);
        }
    }
    Ok(GridGraph { graph, grid })
}

/// Inverts colours of a graph of type `π_{n-k,n}` and relabels `i ↦ i + k`,
/// giving a graph of type `π_{k,n}` whose labels are the complements.
pub fn build_dual(g: &PlabicGraph, k: usize) -> Result<PlabicGraph> {
    let n = g.n();
    check_kn(k, n)?;
    if g.k() != n - k {
        return Err(Error::Mismatch(format!(
            "dual of a graph with k = {} requested for k = {k}",
            g.k()
        )));
    }
    let perm = g.trip_permutation();
    if (1..=n).any(|i| perm[i - 1] != (i + n - k - 1) % n + 1) {
        return Err(Error::Mismatch(format!(
            "input does not have trip permutation i ↦ i + {}",
            n - k
        )));
    }
    let mut d = g.invert_colours().relabel_boundary(|i| (i + k - 1) % n + 1);
    d.k = k;
    d.validate()?;
    Ok(d)
}
