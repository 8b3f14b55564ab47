//! Exact A-seed mutation over the Plücker field of the mirror Grassmannian
//! and the search for expressions of Plücker coordinates in a given seed.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::plabic::PlabicGraph;
use crate::poly::{Laurent, RationalExpr, Var};
use crate::quiver::Quiver;
use crate::subsets::{check_kn, frozen_right_label, superpotential_label, KSubset, LabelCollection};

/// Default depth bound for mutation searches, overridable through `PLABICA_BUDGET`.
pub fn default_budget() -> usize {
    std::env::var("PLABICA_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(24)
}

/// A point of `Gr(n-k, n)` given by an `(n-k) x n` matrix, rescaled so that
/// `p_{J_n} = 1`.
#[derive(Clone, Debug)]
pub struct GrassmannPoint {
    k: usize,
    n: usize,
    matrix: Vec<Vec<BigRational>>,
}

impl GrassmannPoint {
    /// Uses the matrix as given, without rescaling.
    pub fn from_matrix(k: usize, n: usize, matrix: Vec<Vec<BigRational>>) -> Result<Self> {
        check_kn(k, n)?;
        if matrix.len() != n - k || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("expected an {} x {n} matrix", n - k)));
        }
        Ok(GrassmannPoint { k, n, matrix })
    }

    /// Random integer matrix with entries in `[-9, 9]`, resampled until every
    /// frozen minor and every minor in `avoid` is nonzero, then normalised.
    pub fn random(k: usize, n: usize, seed: u64, avoid: &[KSubset]) -> Result<Self> {
        check_kn(k, n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let frozen: Vec<KSubset> = (1..=n as i64).map(|i| frozen_right_label(i, k, n)).collect();
        for _ in 0..10_000 {
            let matrix: Vec<Vec<BigRational>> = (0..n - k)
                .map(|_| {
                    (0..n)
                        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-9..=9))))
                        .collect()
                })
                .collect();
            let p = GrassmannPoint { k, n, matrix };
            if frozen
                .iter()
                .chain(avoid)
                .all(|j| p.plucker(j).map(|x| !x.is_zero()).unwrap_or(false))
            {
                return Ok(p.normalized());
            }
        }
        Err(Error::Arithmetic("could not sample a point with nonvanishing minors".into()))
    }

    fn normalized(mut self) -> Self {
        let jn = frozen_right_label(self.n as i64, self.k, self.n);
        let s = self.plucker(&jn).expect("size n-k");
        for x in &mut self.matrix[0] {
            *x = &*x / &s;
        }
        self
    }

    pub fn matrix(&self) -> &[Vec<BigRational>] {
        &self.matrix
    }

    /// Maximal minor on the columns `j`.
    pub fn plucker(&self, j: &KSubset) -> Result<BigRational> {
        let r = self.n - self.k;
        if j.len() != r || j.n() != self.n {
            return Err(Error::Mismatch(format!("{j} is not an {r}-subset of [{}]", self.n)));
        }
        let cols = j.elements();
        let mut m: Vec<Vec<BigRational>> = (0..r)
            .map(|i| cols.iter().map(|&c| self.matrix[i][c - 1].clone()).collect())
            .collect();
        Ok(determinant(&mut m))
    }

    /// Variable assignment for expression evaluation.
    pub fn valuation(&self, q: BigRational) -> impl Fn(Var) -> BigRational + '_ {
        move |v| match v {
            Var::P(j) => self.plucker(&j).expect("label size"),
            Var::Q => q.clone(),
        }
    }
}

/// Quiver plus one cluster variable per vertex, keyed by right labels.
#[derive(Clone, Debug)]
pub struct Seed {
    n: usize,
    k: usize,
    quiver: Quiver,
    vars: BTreeMap<KSubset, RationalExpr>,
}

impl Seed {
    /// Initial seed: a symbol `p_J` for each right label, with `p_{J_n} = 1`.
    pub fn from_graph(g: &PlabicGraph) -> Result<Self> {
        let quiver = Quiver::from_graph(g)?.complemented();
        let jn = frozen_right_label(g.n() as i64, g.k(), g.n());
        if !quiver.vertices().contains_key(&jn) {
            return Err(Error::Mismatch(format!("J_n = {jn} is not a right label")));
        }
        let vars = quiver
            .vertices()
            .keys()
            .map(|&j| (j, if j == jn { RationalExpr::one() } else { Laurent::p(j).into() }))
            .collect();
        Ok(Seed {
            n: g.n(),
            k: g.k(),
            quiver,
            vars,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn variables(&self) -> &BTreeMap<KSubset, RationalExpr> {
        &self.vars
    }

    pub fn var(&self, j: &KSubset) -> Option<&RationalExpr> {
        self.vars.get(j)
    }

    pub fn right_labels(&self) -> BTreeSet<KSubset> {
        self.vars.keys().copied().collect()
    }

    /// Label taking the place of `i` under a square move, read off from the
    /// four quiver neighbours `Sab, Sbc, Scd, Sad` of `i = Sac`: the result is `Sbd`.
    pub fn exchanged_label(&self, i: &KSubset) -> Result<KSubset> {
        match self.quiver.is_frozen(i) {
            None => return Err(Error::LabelAbsent(i.to_string())),
            Some(true) => return Err(Error::Frozen(i.to_string())),
            Some(false) => {}
        }
        let nb: BTreeSet<KSubset> = self
            .quiver
            .incoming(i)
            .into_iter()
            .chain(self.quiver.outgoing(i))
            .map(|(l, _)| l)
            .collect();
        let ones = self
            .quiver
            .incoming(i)
            .iter()
            .chain(&self.quiver.outgoing(i))
            .all(|&(_, m)| m == 1);
        if nb.len() != 4 || !ones {
            return Err(Error::NotMutable(
                i.to_string(),
                "quiver neighbourhood is not a square".into(),
            ));
        }
        let mut it = nb.iter();
        let first = *it.next().expect("four");
        let (s, u) = it.fold((first, first), |(s, u), l| (s.intersection(l), u.union(l)));
        let new = s.union(&u.difference(i));
        if new.len() != i.len() || s.len() + 2 != i.len() || self.vars.contains_key(&new) {
            return Err(Error::NotMutable(
                i.to_string(),
                "neighbour labels are not of square shape".into(),
            ));
        }
        Ok(new)
    }

    pub fn mutate(&self, i: &KSubset) -> Result<Seed> {
        let new = self.exchanged_label(i)?;
        self.mutate_to(i, &new)
    }

    /// Exchange relation `a_i a_i' = ∏_{v→i} a_v + ∏_{i→v} a_v`, with the new
    /// variable filed under `new`.
    pub fn mutate_to(&self, i: &KSubset, new: &KSubset) -> Result<Seed> {
        let a = self.vars.get(i).ok_or_else(|| Error::LabelAbsent(i.to_string()))?;
        let product = |nb: Vec<(KSubset, u32)>| {
            nb.into_iter().fold(RationalExpr::one(), |acc, (l, m)| {
                (0..m).fold(acc, |acc, _| acc.mul(&self.vars[&l]))
            })
        };
        let sum = product(self.quiver.incoming(i)).add(&product(self.quiver.outgoing(i)));
        let a_new = sum.div(a)?;
        let quiver = self.quiver.mutate(i)?.relabel(i, new)?;
        let mut vars = self.vars.clone();
        vars.remove(i);
        vars.insert(*new, a_new);
        Ok(Seed {
            n: self.n,
            k: self.k,
            quiver,
            vars,
        })
    }
}

struct SearchState {
    graph: PlabicGraph,
    right: BTreeSet<KSubset>,
    /// parent index, mutated left label, resulting left label
    parent: Option<(usize, KSubset, KSubset)>,
}

/// Breadth-first exploration of the mutation graph from a fixed graph.
/// Levels are processed in lexicographic order of their label collections,
/// which makes every result deterministic.
pub struct MutationSearch {
    states: Vec<SearchState>,
    index: HashMap<LabelCollection, usize>,
    level: Vec<usize>,
    depth: usize,
    seeds: HashMap<usize, Seed>,
}

impl MutationSearch {
    pub fn new(g: &PlabicGraph) -> Result<Self> {
        let graph = g.contracted();
        let left = graph.labels()?;
        let right = left.complements().labels().clone();
        let seed = Seed::from_graph(&graph)?;
        let mut index = HashMap::new();
        index.insert(left, 0);
        Ok(MutationSearch {
            states: vec![SearchState {
                graph,
                right,
                parent: None,
            }],
            index,
            level: vec![0],
            depth: 0,
            seeds: HashMap::from([(0, seed)]),
        })
    }

    fn expand(&mut self) -> Result<()> {
        let mut next: Vec<(String, usize)> = Vec::new();
        for &s in &self.level.clone() {
            let g = self.states[s].graph.clone();
            for label in g.mutable_labels()? {
                let (h, new) = g.mutate(&label)?;
                let c = h.labels()?;
                if self.index.contains_key(&c) {
                    continue;
                }
                let key = c.serialize_key();
                let right = c.complements().labels().clone();
                self.states.push(SearchState {
                    graph: h,
                    right,
                    parent: Some((s, label, new)),
                });
                let id = self.states.len() - 1;
                self.index.insert(c, id);
                next.push((key, id));
            }
        }
        next.sort();
        self.level = next.into_iter().map(|(_, id)| id).collect();
        self.depth += 1;
        Ok(())
    }

    /// First state (in search order) containing each target right label.
    pub fn locate(&mut self, targets: &BTreeSet<KSubset>, budget: usize) -> Result<BTreeMap<KSubset, usize>> {
        let mut found = BTreeMap::new();
        for s in 0..self.states.len() {
            for t in targets {
                if !found.contains_key(t) && self.states[s].right.contains(t) {
                    found.insert(*t, s);
                }
            }
        }
        while found.len() < targets.len() {
            if self.level.is_empty() {
                let missing: Vec<String> = targets
                    .iter()
                    .filter(|t| !found.contains_key(t))
                    .map(|t| t.to_string())
                    .collect();
                return Err(Error::Invalid(format!(
                    "labels {} unreachable by mutation",
                    missing.join(", ")
                )));
            }
            if self.depth >= budget {
                return Err(Error::Budget(format!(
                    "no graph within {budget} mutations contains all targets"
                )));
            }
            self.expand()?;
            for &s in &self.level {
                for t in targets {
                    if !found.contains_key(t) && self.states[s].right.contains(t) {
                        found.insert(*t, s);
                    }
                }
            }
        }
        Ok(found)
    }

    /// Mutation path from the root: pairs (mutated left label, new left label).
    pub fn path(&self, mut s: usize) -> Vec<(KSubset, KSubset)> {
        let mut out = Vec::new();
        while let Some((p, a, b)) = self.states[s].parent {
            out.push((a, b));
            s = p;
        }
        out.reverse();
        out
    }

    pub fn graph(&self, s: usize) -> &PlabicGraph {
        &self.states[s].graph
    }

    pub fn seed(&mut self, s: usize) -> Result<Seed> {
        if let Some(seed) = self.seeds.get(&s) {
            return Ok(seed.clone());
        }
        let (p, a, b) = self.states[s].parent.expect("non-root state has a parent");
        let seed = self.seed(p)?.mutate_to(&a.complement(), &b.complement())?;
        self.seeds.insert(s, seed.clone());
        Ok(seed)
    }

    /// Number of label collections discovered so far.
    pub fn discovered(&self) -> usize {
        self.states.len()
    }

    /// Explores until no new collection appears or the budget is reached.
    pub fn exhaust(&mut self, budget: usize) -> Result<BTreeSet<LabelCollection>> {
        while !self.level.is_empty() && self.depth < budget {
            self.expand()?;
        }
        if !self.level.is_empty() {
            return Err(Error::Budget(format!("mutation class not exhausted within {budget} steps")));
        }
        Ok(self.index.keys().cloned().collect())
    }

    /// Expressions in the root seed for every target right label.
    pub fn express(&mut self, targets: &BTreeSet<KSubset>, budget: usize) -> Result<BTreeMap<KSubset, RationalExpr>> {
        let found = self.locate(targets, budget)?;
        let mut out = BTreeMap::new();
        for (t, s) in found {
            let seed = self.seed(s)?;
            out.insert(t, seed.var(&t).expect("target in seed").clone());
        }
        Ok(out)
    }
}

/// `p_J` as an expression in the seed of `g`, found by breadth-first search.
pub fn express_plucker(g: &PlabicGraph, j: &KSubset, budget: usize) -> Result<RationalExpr> {
    if j.n() != g.n() || j.len() != g.n() - g.k() {
        return Err(Error::Mismatch(format!(
            "{j} is not an {}-subset of [{}]",
            g.n() - g.k(),
            g.n()
        )));
    }
    let mut search = MutationSearch::new(g)?;
    let mut out = search.express(&BTreeSet::from([*j]), budget)?;
    Ok(out.remove(j).expect("found"))
}

/// `W_1, ..., W_n` with `W_i = p_{J_i^+} / p_{J_i}` in the seed of `g`.
pub fn superpotential_terms(g: &PlabicGraph, budget: usize) -> Result<Vec<RationalExpr>> {
    let (k, n) = (g.k(), g.n());
    let plus: Vec<KSubset> = (1..=n as i64).map(|i| superpotential_label(i, k, n)).collect();
    let mut search = MutationSearch::new(g)?;
    let exprs = search.express(&plus.iter().copied().collect(), budget)?;
    let root = search.seed(0)?;
    (1..=n)
        .map(|i| {
            let ji = frozen_right_label(i as i64, k, n);
            exprs[&plus[i - 1]].div(root.var(&ji).expect("frozen label present"))
        })
        .collect()
}

/// `W = Σ W_i q^{[i = k]}`.
pub fn assemble_superpotential(terms: &[RationalExpr], k: usize) -> RationalExpr {
    let q: RationalExpr = Laurent::q().into();
    terms.iter().enumerate().fold(RationalExpr::zero(), |acc, (i, t)| {
        acc.add(&if i + 1 == k { t.mul(&q) } else { t.clone() })
    })
}

pub fn superpotential(g: &PlabicGraph, budget: usize) -> Result<RationalExpr> {
    Ok(assemble_superpotential(&superpotential_terms(g, budget)?, g.k()))
}
