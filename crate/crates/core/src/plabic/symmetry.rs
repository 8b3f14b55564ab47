//! The dihedral group acting on plabic graphs.

use std::collections::BTreeSet;

use super::graph::PlabicGraph;
use crate::error::Result;
use crate::subsets::{reduce, DihedralElement, LabelCollection};

impl PlabicGraph {
    /// Rotations relabel the boundary; reflections mirror the embedding and
    /// relabel by `j ↦ g(j) + k`, so that labels transform by `g`.
    pub fn dihedral_act(&self, g: &DihedralElement) -> PlabicGraph {
        if !g.reflected {
            return self.relabel_boundary(|j| reduce(j as i64 + g.shift as i64, self.n));
        }
        let mut mirrored = self.clone();
        for v in &mut mirrored.vertices {
            v.rotation.reverse();
        }
        let (s, k) = (g.shift as i64, self.k as i64);
        let out = mirrored.relabel_boundary(|j| reduce(s + 2 + k - j as i64, self.n));
        debug_assert!(out.validate().is_ok());
        out
    }

    /// Distinct label collections in the `D_n`-orbit.
    pub fn orbit(&self) -> Result<BTreeSet<LabelCollection>> {
        let c = self.labels()?;
        Ok(DihedralElement::all(self.n).iter().map(|g| c.act(g)).collect())
    }

    pub fn stabilizer(&self) -> Result<BTreeSet<DihedralElement>> {
        let c = self.labels()?;
        Ok(DihedralElement::all(self.n).into_iter().filter(|g| c.act(g) == c).collect())
    }
}
