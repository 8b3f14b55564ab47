//! Tropicalization, superpotential polytopes, Gelfand-Tsetlin polytopes,
//! the lattice map `F`, and exact polytope oracles.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::plabic::PlabicGraph;
use crate::poly::{RationalExpr, Var};
use crate::seeds::superpotential;
use crate::subsets::{frozen_right_label, DihedralElement, KSubset, LabelCollection};
use crate::superpotential::ClosedFormFamily;

fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Exponent vectors of a Laurent polynomial with positive coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalForm {
    coords: Vec<Var>,
    exponents: Vec<Vec<i64>>,
}

impl TropicalForm {
    pub fn coords(&self) -> &[Var] {
        &self.coords
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    /// `min(v · u)` over the exponent vectors `u`.
    pub fn eval(&self, v: &[BigRational]) -> Result<BigRational> {
        if v.len() != self.coords.len() {
            return Err(Error::Mismatch(format!(
                "point has {} coordinates, expected {}",
                v.len(),
                self.coords.len()
            )));
        }
        self.exponents
            .iter()
            .map(|u| {
                u.iter()
                    .zip(v)
                    .map(|(&e, x)| x * rat(e))
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .min()
            .ok_or_else(|| Error::Invalid("tropicalization of the zero polynomial".into()))
    }
}

/// Tropicalizes over the variables that occur in `h`, in sorted order.
pub fn tropicalize(h: &RationalExpr) -> Result<TropicalForm> {
    let l = h
        .as_laurent()
        .ok_or_else(|| Error::Invalid(format!("not a Laurent polynomial: {h}")))?;
    let coords: BTreeSet<Var> = l.terms().keys().flat_map(|m| m.exponents().iter().map(|p| p.0)).collect();
    tropicalize_in(h, &coords.into_iter().collect::<Vec<_>>())
}

pub fn tropicalize_in(h: &RationalExpr, coords: &[Var]) -> Result<TropicalForm> {
    let l = h
        .as_laurent()
        .ok_or_else(|| Error::Invalid(format!("not a Laurent polynomial: {h}")))?;
    let index: BTreeMap<Var, usize> = coords.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut exponents = Vec::with_capacity(l.len());
    for (m, c) in l.terms() {
        if !c.is_positive() {
            return Err(Error::Invalid(format!("negative coefficient {c} on {m}")));
        }
        let mut u = vec![0i64; coords.len()];
        for &(v, e) in m.exponents() {
            let i = *index
                .get(&v)
                .ok_or_else(|| Error::Mismatch(format!("variable {v} is not a coordinate")))?;
            u[i] = e.into();
        }
        exponents.push(u);
    }
    Ok(TropicalForm {
        coords: coords.to_vec(),
        exponents,
    })
}

/// `a · x + b >= 0` with coprime integer entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Inequality {
    pub a: Vec<BigInt>,
    pub b: BigInt,
}

impl Inequality {
    pub fn new(a: Vec<BigInt>, b: BigInt) -> Self {
        let g = a.iter().fold(b.abs(), |g, x| g.gcd(x));
        if g.is_zero() || g.is_one() {
            return Inequality { a, b };
        }
        Inequality {
            a: a.iter().map(|x| x / &g).collect(),
            b: &b / &g,
        }
    }

    pub fn from_ints(a: &[i64], b: i64) -> Self {
        Inequality::new(a.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(b))
    }

    /// Clears denominators.
    pub fn from_rational(a: &[BigRational], b: &BigRational) -> Self {
        let l = a.iter().chain([b]).fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let scale = |x: &BigRational| (x * rat(l.clone())).to_integer();
        Inequality::new(a.iter().map(scale).collect(), scale(b))
    }

    pub fn value(&self, x: &[BigRational]) -> BigRational {
        self.a
            .iter()
            .zip(x)
            .fold(rat(self.b.clone()), |s, (c, y)| s + y * rat(c.clone()))
    }

    pub fn value_int(&self, x: &[BigInt]) -> BigInt {
        self.a.iter().zip(x).fold(self.b.clone(), |s, (c, y)| s + c * y)
    }

    fn is_trivial(&self) -> bool {
        self.a.iter().all(Zero::is_zero) && !self.b.is_negative()
    }
}

/// A polyhedron `{x : a·x + b >= 0 for every row}` with canonical, sorted, distinct rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    coords: Vec<String>,
    rows: Vec<Inequality>,
}

impl HPolytope {
    pub fn new(coords: Vec<String>, rows: impl IntoIterator<Item = Inequality>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for r in rows {
            if r.a.len() != coords.len() {
                return Err(Error::Mismatch(format!(
                    "row of length {} in dimension {}",
                    r.a.len(),
                    coords.len()
                )));
            }
            if !r.is_trivial() {
                set.insert(Inequality::new(r.a, r.b));
            }
        }
        Ok(HPolytope {
            coords,
            rows: set.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn rows(&self) -> &[Inequality] {
        &self.rows
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.rows.iter().all(|r| !r.value(x).is_negative())
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.rows.iter().all(|r| !r.value_int(x).is_negative())
    }

    /// `{x : a·x + r·b >= 0}`; for systems with `b` homogeneous in a parameter this is the `r`-th dilate.
    pub fn dilate(&self, r: &BigInt) -> HPolytope {
        HPolytope {
            coords: self.coords.clone(),
            rows: self
                .rows
                .iter()
                .map(|row| Inequality::new(row.a.clone(), &row.b * r))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        }
    }

    pub fn translate(&self, t: &[BigInt]) -> HPolytope {
        let rows = self.rows.iter().map(|r| {
            let shift: BigInt = r.a.iter().zip(t).map(|(a, x)| a * x).sum();
            Inequality::new(r.a.clone(), &r.b - shift)
        });
        HPolytope::new(self.coords.clone(), rows).expect("same dimension")
    }

    /// Exact vertices by incremental double description on the homogenized cone.
    /// Empty polyhedra have no vertices; unbounded ones are an error.
    pub fn vertices(&self) -> Result<Vec<Vec<BigRational>>> {
        let d = self.dim();
        let mut cone: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows.len() + 1);
        let mut t = vec![BigInt::zero(); d + 1];
        t[d] = BigInt::one();
        cone.push(t);
        cone.extend(self.rows.iter().map(|r| r.a.iter().cloned().chain([r.b.clone()]).collect()));
        let (lineality, rays) = double_description(d + 1, &cone);
        let mut out = BTreeSet::new();
        let mut recession = !lineality.is_empty();
        for r in rays {
            if r[d].is_zero() {
                recession = true;
                continue;
            }
            let t = rat(r[d].clone());
            out.insert(r[..d].iter().map(|x| rat(x.clone()) / &t).collect::<Vec<_>>());
        }
        if out.is_empty() {
            return Ok(Vec::new());
        }
        if recession {
            return Err(Error::Unbounded);
        }
        Ok(out.into_iter().collect())
    }

    /// Vertices by solving every square subsystem; for bounded polytopes of
    /// dimension at most 8 with few rows. Used as an independent oracle.
    pub fn vertices_brute_force(&self) -> Result<Vec<Vec<BigRational>>> {
        let (d, m) = (self.dim(), self.rows.len());
        if d > 8 {
            return Err(Error::OutOfRange(format!(
                "brute-force enumeration needs dimension <= 8, got {d}"
            )));
        }
        if binomial(m, d) > 2_000_000 {
            return Err(Error::OutOfRange(format!("{m} rows in dimension {d} is too many subsets")));
        }
        let mut out = BTreeSet::new();
        if d == 0 {
            if self.contains(&[]) {
                out.insert(Vec::new());
            }
            return Ok(out.into_iter().collect());
        }
        let mut idx: Vec<usize> = (0..d).collect();
        if m < d {
            return Ok(Vec::new());
        }
        loop {
            let a: Vec<Vec<BigRational>> = idx
                .iter()
                .map(|&i| self.rows[i].a.iter().map(|x| rat(x.clone())).collect())
                .collect();
            let rhs: Vec<BigRational> = idx.iter().map(|&i| -rat(self.rows[i].b.clone())).collect();
            if let Some(x) = linalg::solve(&a, &rhs) {
                if self.contains(&x) {
                    out.insert(x);
                }
            }
            let Some(p) = (0..d).rev().find(|&p| idx[p] < m - d + p) else {
                break;
            };
            idx[p] += 1;
            for q in p + 1..d {
                idx[q] = idx[q - 1] + 1;
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Integer points, by depth-first search in the bounding box of the vertices.
    pub fn lattice_points(&self) -> Result<Vec<Vec<BigInt>>> {
        let verts = self.vertices()?;
        if verts.is_empty() {
            return Ok(Vec::new());
        }
        let d = self.dim();
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for i in 0..d {
            let min = verts.iter().map(|v| &v[i]).min().expect("nonempty").ceil().to_integer();
            let max = verts.iter().map(|v| &v[i]).max().expect("nonempty").floor().to_integer();
            let to = |x: &BigInt| {
                x.to_i64()
                    .ok_or_else(|| Error::Arithmetic("coordinate bound exceeds i64".into()))
            };
            lo.push(to(&min)?);
            hi.push(to(&max)?);
        }
        let rows: Vec<(Vec<i128>, i128)> = self
            .rows
            .iter()
            .map(|r| {
                let conv = |x: &BigInt| x.to_i128().ok_or_else(|| Error::Arithmetic("row entry exceeds i128".into()));
                Ok((r.a.iter().map(conv).collect::<Result<Vec<_>>>()?, conv(&r.b)?))
            })
            .collect::<Result<_>>()?;
        // rows are checked as soon as their last nonzero coordinate is fixed
        let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); d];
        for (i, (a, _)) in rows.iter().enumerate() {
            if let Some(j) = a.iter().rposition(|&x| x != 0) {
                by_last[j].push(i);
            }
        }
        let mut out = Vec::new();
        let mut x = lo.clone();
        let mut partial = vec![0i128; rows.len()];
        lattice_dfs(0, &lo, &hi, &rows, &by_last, &mut x, &mut partial, &mut out);
        Ok(out.into_iter().map(|p| p.into_iter().map(BigInt::from).collect()).collect())
    }

    pub fn lattice_count(&self) -> Result<usize> {
        Ok(self.lattice_points()?.len())
    }

    /// The irredundant subsystem: rows whose tight vertices span a facet.
    /// For full-dimensional polytopes this is the unique minimal description.
    pub fn facets(&self) -> Result<HPolytope> {
        let verts = self.vertices()?;
        let Some(v0) = verts.first() else {
            return Ok(self.clone());
        };
        let diffs: Vec<Vec<BigRational>> = verts.iter().map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
        let aff = linalg::rank(&diffs);
        let mut keep = Vec::new();
        for r in &self.rows {
            let tight: Vec<Vec<BigRational>> = verts
                .iter()
                .filter(|v| r.value(v).is_zero())
                .map(|v| v.iter().cloned().chain([BigRational::one()]).collect())
                .collect();
            if tight.len() < verts.len() && linalg::rank(&tight) == aff {
                keep.push(r.clone());
            }
        }
        HPolytope::new(self.coords.clone(), keep)
    }

    pub fn to_json(&self) -> Result<PolytopeJson> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                Ok(RowJson {
                    a: r.a
                        .iter()
                        .map(|x| x.to_i64().ok_or_else(|| Error::Arithmetic(format!("entry {x} exceeds i64"))))
                        .collect::<Result<_>>()?,
                    b: r.b.to_string(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(PolytopeJson {
            coords: self.coords.clone(),
            rows,
        })
    }

    pub fn from_json(j: &PolytopeJson) -> Result<Self> {
        let rows = j
            .rows
            .iter()
            .map(|r| {
                let b: BigInt = r.b.parse().map_err(|_| Error::Parse(format!("bad constant {:?}", r.b)))?;
                Ok(Inequality::new(r.a.iter().map(|&x| BigInt::from(x)).collect(), b))
            })
            .collect::<Result<Vec<_>>>()?;
        HPolytope::new(j.coords.clone(), rows)
    }
}

#[allow(clippy::too_many_arguments)]
fn lattice_dfs(
    i: usize,
    lo: &[i64],
    hi: &[i64],
    rows: &[(Vec<i128>, i128)],
    by_last: &[Vec<usize>],
    x: &mut Vec<i64>,
    partial: &mut Vec<i128>,
    out: &mut Vec<Vec<i64>>,
) {
    if i == lo.len() {
        if rows.iter().all(|(a, b)| a.iter().any(|&c| c != 0) || *b >= 0) {
            out.push(x.clone());
        }
        return;
    }
    for v in lo[i]..=hi[i] {
        x[i] = v;
        for (r, (a, _)) in rows.iter().enumerate() {
            partial[r] += a[i] * v as i128;
        }
        if by_last[i].iter().all(|&r| partial[r] + rows[r].1 >= 0) {
            lattice_dfs(i + 1, lo, hi, rows, by_last, x, partial, out);
        }
        for (r, (a, _)) in rows.iter().enumerate() {
            partial[r] -= a[i] * v as i128;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|x| x.count_ones() as usize).sum()
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Generators of `{y : h·y >= 0 for h in rows}`: a lineality basis and the extreme rays.
fn double_description(dim: usize, rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut rays: Vec<(Vec<BigInt>, Bits)> = Vec::new();
    let mut processed = Bits::new(m);
    for (idx, h) in rows.iter().enumerate() {
        if let Some(p) = lineality.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l0 = lineality.swap_remove(p);
            if dot(h, &l0).is_negative() {
                l0 = l0.into_iter().map(|x| -x).collect();
            }
            let s0 = dot(h, &l0);
            let reduce = |v: &[BigInt]| -> Vec<BigInt> {
                let c = dot(h, v);
                primitive(v.iter().zip(&l0).map(|(x, y)| &s0 * x - &c * y).collect())
            };
            lineality = lineality.iter().map(|l| reduce(l)).collect();
            for (r, z) in rays.iter_mut() {
                *r = reduce(r);
                z.set(idx);
            }
            rays.push((primitive(l0), processed.clone()));
        } else {
            let vals: Vec<BigInt> = rays.iter().map(|(r, _)| dot(h, r)).collect();
            let mut next = Vec::new();
            let (mut plus, mut minus) = (Vec::new(), Vec::new());
            for (i, v) in vals.iter().enumerate() {
                if v.is_positive() {
                    plus.push(i);
                    next.push(rays[i].clone());
                } else if v.is_negative() {
                    minus.push(i);
                } else {
                    let (r, mut z) = rays[i].clone();
                    z.set(idx);
                    next.push((r, z));
                }
            }
            let need = dim.saturating_sub(lineality.len() + 2);
            for &p in &plus {
                for &q in &minus {
                    let z = rays[p].1.and(&rays[q].1);
                    if z.count() < need {
                        continue;
                    }
                    let adjacent = rays
                        .iter()
                        .enumerate()
                        .all(|(i, (_, zi))| i == p || i == q || !z.subset_of(zi));
                    if !adjacent {
                        continue;
                    }
                    let (vp, vq) = (&vals[p], &vals[q]);
                    let r = primitive(rays[q].0.iter().zip(&rays[p].0).map(|(a, b)| vp * a - vq * b).collect());
                    let mut z = z;
                    z.set(idx);
                    next.push((r, z));
                }
            }
            rays = next;
        }
        processed.set(idx);
    }
    (lineality, rays.into_iter().map(|(r, _)| r).collect())
}

/// Equality of bounded polytopes in the same coordinates, by mutual vertex containment.
pub fn polytopes_equal(p: &HPolytope, q: &HPolytope) -> Result<bool> {
    if p.dim() != q.dim() {
        return Ok(false);
    }
    let (vp, vq) = (p.vertices()?, q.vertices()?);
    Ok(vp.iter().all(|v| q.contains(v)) && vq.iter().all(|v| p.contains(v)))
}

/// `x ↦ M x + t` with an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLatticeMap {
    domain: Vec<String>,
    codomain: Vec<String>,
    matrix: Vec<Vec<BigInt>>,
    translation: Vec<BigInt>,
}

impl AffineLatticeMap {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, matrix: Vec<Vec<BigInt>>, translation: Vec<BigInt>) -> Result<Self> {
        if matrix.len() != codomain.len() || translation.len() != codomain.len() || matrix.iter().any(|r| r.len() != domain.len())
        {
            return Err(Error::Mismatch("affine map dimensions".into()));
        }
        Ok(AffineLatticeMap {
            domain,
            codomain,
            matrix,
            translation,
        })
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn translation(&self) -> &[BigInt] {
        &self.translation
    }

    pub fn with_translation(mut self, t: Vec<BigInt>) -> Result<Self> {
        if t.len() != self.codomain.len() {
            return Err(Error::Mismatch("translation length".into()));
        }
        self.translation = t;
        Ok(self)
    }

    fn rational_matrix(&self) -> Vec<Vec<BigRational>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(|x| rat(x.clone())).collect())
            .collect()
    }

    /// Zero for non-square maps.
    pub fn determinant(&self) -> BigInt {
        if self.domain.len() != self.codomain.len() {
            return BigInt::zero();
        }
        linalg::determinant(&mut self.rational_matrix()).to_integer()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// The integer inverse matrix; an error unless `|det| = 1`.
    pub fn inverse_matrix(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_unimodular() {
            return Err(Error::Invalid(format!("map has determinant {}", self.determinant())));
        }
        let inv = linalg::inverse(&self.rational_matrix()).expect("unimodular");
        Ok(inv
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
            .collect())
    }

    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.matrix
            .iter()
            .zip(&self.translation)
            .map(|(r, t)| r.iter().zip(x).fold(rat(t.clone()), |s, (a, y)| s + y * rat(a.clone())))
            .collect()
    }

    pub fn apply_int(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix
            .iter()
            .zip(&self.translation)
            .map(|(r, t)| t + dot(r, x))
            .collect()
    }

    pub fn apply_inverse_int(&self, y: &[BigInt]) -> Result<Vec<BigInt>> {
        let inv = self.inverse_matrix()?;
        let shifted: Vec<BigInt> = y.iter().zip(&self.translation).map(|(a, t)| a - t).collect();
        Ok(inv.iter().map(|r| dot(r, &shifted)).collect())
    }

    /// The image polytope `{M x + t : x in P}`.
    pub fn image(&self, p: &HPolytope) -> Result<HPolytope> {
        if p.coords() != self.domain.as_slice() {
            return Err(Error::Mismatch("polytope coordinates differ from the map's domain".into()));
        }
        let inv = self.inverse_matrix()?;
        let d = self.codomain.len();
        let rows = p.rows().iter().map(|r| {
            let a: Vec<BigInt> = (0..d)
                .map(|j| r.a.iter().zip(&inv).map(|(c, row)| c * &row[j]).sum())
                .collect();
            let b = &r.b - dot(&a, &self.translation);
            Inequality::new(a, b)
        });
        HPolytope::new(self.codomain.clone(), rows)
    }
}

fn label_coord(l: &KSubset) -> String {
    format!("v[{}]", l.to_key())
}

fn gt_coord(a: usize, b: usize) -> String {
    format!("f[{a},{b}]")
}

/// `𝓡_G`: right labels of `g` except `J_n`, sorted.
pub fn region_coordinates(g: &PlabicGraph) -> Result<Vec<KSubset>> {
    let jn = frozen_right_label(g.n() as i64, g.k(), g.n());
    Ok(g.right_labels()?.labels().iter().copied().filter(|l| *l != jn).collect())
}

/// `Γ^r` for a superpotential written in the variables `coords` (and `q`).
pub fn polytope_of_superpotential(w: &RationalExpr, coords: &[KSubset], r: &BigRational) -> Result<HPolytope> {
    let mut vars: Vec<Var> = coords.iter().map(|l| Var::P(*l)).collect();
    vars.push(Var::Q);
    let t = tropicalize_in(w, &vars)?;
    let d = coords.len();
    let rows = t.exponents().iter().map(|u| {
        let a: Vec<BigRational> = u[..d].iter().map(|&e| rat(e)).collect();
        Inequality::from_rational(&a, &(r * rat(u[d])))
    });
    HPolytope::new(coords.iter().map(label_coord).collect(), rows)
}

/// `Γ_G^r`, with `W` derived in the seed of `g`.
pub fn superpotential_polytope(g: &PlabicGraph, r: &BigRational, budget: usize) -> Result<HPolytope> {
    let w = superpotential(g, budget)?;
    polytope_of_superpotential(&w, &region_coordinates(g)?, r)
}

fn gt_index(k: usize, a: usize, b: usize) -> usize {
    a * k + b - 1
}

/// `𝒢𝒯^r_{k,n}` in coordinates `f_{a,b}`, `0 <= a < n-k`, `1 <= b <= k`.
pub fn gt_polytope_dilate(k: usize, n: usize, r: &BigInt) -> Result<HPolytope> {
    crate::subsets::check_kn(k, n)?;
    let d = k * (n - k);
    let coords = (0..n - k).flat_map(|a| (1..=k).map(move |b| gt_coord(a, b))).collect();
    let unit = |i: usize, s: i64| {
        let mut v = vec![BigInt::zero(); d];
        v[i] = BigInt::from(s);
        v
    };
    let mut rows = vec![
        Inequality::new(unit(gt_index(k, 0, k), -1), r.clone()),
        Inequality::new(unit(gt_index(k, n - k - 1, 1), 1), BigInt::zero()),
    ];
    for a in 0..n - k {
        for b in 1..=k {
            if b < k {
                let mut v = unit(gt_index(k, a, b), -1);
                v[gt_index(k, a, b + 1)] += 1;
                rows.push(Inequality::new(v, BigInt::zero()));
            }
            if a > 0 {
                let mut v = unit(gt_index(k, a, b), -1);
                v[gt_index(k, a - 1, b)] += 1;
                rows.push(Inequality::new(v, BigInt::zero()));
            }
        }
    }
    HPolytope::new(coords, rows)
}

pub fn gt_polytope(k: usize, n: usize) -> Result<HPolytope> {
    gt_polytope_dilate(k, n, &BigInt::one())
}

/// The inequality system listed for `σ^m G^ch_{k,n}` in terms of `v_{i,j}`,
/// written out directly from its closed description.
pub fn rotated_checkboard_system(m: i64, k: usize, n: usize) -> Result<HPolytope> {
    crate::subsets::check_kn(k, n)?;
    let fam = ClosedFormFamily::ChRot;
    let jn = frozen_right_label(n as i64, k, n);
    let coords: Vec<KSubset> = {
        let mut s = BTreeSet::new();
        for i in 0..=n - k {
            for j in 0..=k {
                s.insert(fam.y_label(m, k, n, i, j));
            }
        }
        s.remove(&jn);
        s.into_iter().collect()
    };
    let index: BTreeMap<KSubset, usize> = coords.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let (k_, n_) = (k as i64, n as i64);
    let delta = |x: i64| i64::from((m - x).rem_euclid(n_) == 0);
    let half_delta = |twice: i64| if twice % 2 == 0 { delta(twice / 2) } else { 0 };
    let eps = |d: i64| half_delta(-d) + half_delta(d + 1 + 2 * k_);
    // rows `c >= Σ s·v` become `-Σ s·v + c >= 0`
    let row = |terms: &[((i64, i64), i64)], c: i64| -> Inequality {
        let mut a = vec![BigInt::zero(); coords.len()];
        for &((i, j), s) in terms {
            let l = fam.y_label(m, k, n, i as usize, j as usize);
            if let Some(&x) = index.get(&l) {
                a[x] -= s;
            }
        }
        Inequality::new(a, BigInt::from(c))
    };
    let in_grid = |i: i64, j: i64| (0..=n_ - k_).contains(&i) && (0..=k_).contains(&j);
    let mut rows = vec![
        row(&[((0, k_), 1), ((1, k_ - 1), -1)], delta((k_ + 1).div_euclid(2))),
        row(
            &[((n_ - k_, 0), 1), ((n_ - k_ - 1, 1), -1)],
            delta((n_ + k_ + 1).div_euclid(2)),
        ),
    ];
    for a in 0..n_ - k_ {
        for b in 1..=k_ {
            let e = eps(a - b);
            let four = [((a, b), 1), ((a + 1, b - 1), -1), ((a, b + 1), -1), ((a + 1, b), 1)];
            if four.iter().all(|&((i, j), _)| in_grid(i, j)) {
                rows.push(row(&four, e));
            }
            let five = [((a, b), 1), ((a + 1, b - 1), -1), ((a - 1, b), -1), ((a, b - 1), 1)];
            if five.iter().all(|&((i, j), _)| in_grid(i, j)) {
                rows.push(row(&five, e));
            }
        }
    }
    HPolytope::new(coords.iter().map(label_coord).collect(), rows)
}

fn ceil_half(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

/// The lattice map `F` taking `Γ_G` for `G = fam.graph(m, k, n)` onto `𝒢𝒯¹_{k,n}`.
///
/// The linear part sends `f_{a,b}` to the difference of the two grid
/// coordinates across one diagonal (`v_{i,j} = 0` for `J_n`). For the
/// rotated checkboard the translation follows the three cases
/// `m = ⌈k/2⌉`, `m = ⌈(n+k)/2⌉` and otherwise `f_{a,b} + δ_{a-b<d}`;
/// for the other families it is read off from the lowest vertex of the
/// untranslated image of the closed-form polytope.
pub fn unimodular_map_f(fam: ClosedFormFamily, m: i64, k: usize, n: usize) -> Result<AffineLatticeMap> {
    crate::subsets::check_kn(k, n)?;
    let m = if fam == ClosedFormFamily::ChBase { 0 } else { m };
    let jn = frozen_right_label(n as i64, k, n);
    let (rows, cols) = fam.y_shape(k, n);
    let mut labels = BTreeSet::new();
    for i in 0..=rows {
        for j in 0..=cols {
            labels.insert(fam.y_label(m, k, n, i, j));
        }
    }
    labels.remove(&jn);
    let coords: Vec<KSubset> = labels.into_iter().collect();
    if coords.len() != k * (n - k) {
        return Err(Error::Mismatch(format!(
            "{} grid coordinates, expected {}",
            coords.len(),
            k * (n - k)
        )));
    }
    let index: BTreeMap<KSubset, usize> = coords.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let along_difference = matches!(
        fam,
        ClosedFormFamily::ChBase | ClosedFormFamily::ChRot | ClosedFormFamily::DualChRefl
    );
    let d = k * (n - k);
    let mut matrix = vec![vec![BigInt::zero(); d]; d];
    for a in 0..n - k {
        for b in 1..=k {
            let (p, q) = if along_difference {
                ((a, b), (a + 1, b - 1))
            } else {
                ((k - b, a), (k - b + 1, a + 1))
            };
            let row = &mut matrix[gt_index(k, a, b)];
            for ((i, j), s) in [(p, 1), (q, -1)] {
                if let Some(&x) = index.get(&fam.y_label(m, k, n, i, j)) {
                    row[x] += s;
                }
            }
        }
    }
    let domain = coords.iter().map(label_coord).collect();
    let codomain = (0..n - k).flat_map(|a| (1..=k).map(move |b| gt_coord(a, b))).collect();
    let map = AffineLatticeMap::new(domain, codomain, matrix, vec![BigInt::zero(); d])?;
    if !map.is_unimodular() {
        return Err(Error::Mismatch(format!(
            "{fam}: linear part has determinant {}",
            map.determinant()
        )));
    }
    let t = match fam {
        ClosedFormFamily::ChBase | ClosedFormFamily::ChRot => rotation_translation(m, k, n),
        _ => {
            let gamma = polytope_of_superpotential(&fam.closed_form_w(m, k, n)?, &coords, &BigRational::one())?;
            let verts = map.image(&gamma)?.vertices()?;
            (0..d)
                .map(|i| {
                    -verts
                        .iter()
                        .map(|v| v[i].clone())
                        .min()
                        .unwrap_or_else(BigRational::zero)
                        .floor()
                        .to_integer()
                })
                .collect()
        }
    };
    map.with_translation(t)
}

fn rotation_translation(m: i64, k: usize, n: usize) -> Vec<BigInt> {
    let (k_, n_) = (k as i64, n as i64);
    let m = m.rem_euclid(n_);
    let d = k * (n - k);
    if m == ceil_half(k_).rem_euclid(n_) {
        return vec![BigInt::zero(); d];
    }
    if m == ceil_half(n_ + k_).rem_euclid(n_) {
        return vec![BigInt::one(); d];
    }
    // the unique diagonal with ε_{m,d} = 1
    let eps = |dd: i64| {
        let hit = |twice: i64| twice % 2 == 0 && (m - twice / 2).rem_euclid(n_) == 0;
        hit(-dd) || hit(dd + 1 + 2 * k_)
    };
    let target = (1 - k_..=n_ - k_ - 2).find(|&dd| eps(dd)).unwrap_or(i64::MIN);
    let mut t = vec![BigInt::zero(); d];
    for a in 0..n - k {
        for b in 1..=k {
            if (a as i64) - (b as i64) < target {
                t[gt_index(k, a, b)] = BigInt::one();
            }
        }
    }
    t
}

/// Outcome of comparing `F(Γ_G)` with `𝒢𝒯¹_{k,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtCheck {
    pub family: ClosedFormFamily,
    pub m: i64,
    pub labels: Vec<Vec<usize>>,
    pub unimodular: bool,
    pub equivalent: bool,
    pub lattice_points: usize,
    pub gt_lattice_points: usize,
}

/// Builds `Γ_G` from the derived superpotential of `G = fam.graph(m, k, n)`,
/// maps it by `F` and compares with `𝒢𝒯¹_{k,n}`.
pub fn check_no_body_is_gt(fam: ClosedFormFamily, m: i64, k: usize, n: usize, budget: usize) -> Result<GtCheck> {
    let g = fam.graph(m, k, n)?;
    let gamma = superpotential_polytope(&g, &BigRational::one(), budget)?;
    let f = unimodular_map_f(fam, m, k, n)?;
    let gt = gt_polytope(k, n)?;
    let image = f.image(&gamma)?;
    Ok(GtCheck {
        family: fam,
        m,
        labels: g.labels()?.labels().iter().map(KSubset::elements).collect(),
        unimodular: f.is_unimodular(),
        equivalent: polytopes_equal(&image, &gt)?,
        lattice_points: gamma.lattice_count()?,
        gt_lattice_points: gt.lattice_count()?,
    })
}

/// A closed-form family and parameter describing a graph with labels `c`.
pub fn identify_orbit_member(c: &LabelCollection) -> Option<(ClosedFormFamily, i64)> {
    let (k, n) = (c.k(), c.n());
    ClosedFormFamily::ALL.into_iter().find_map(|fam| {
        (0..n as i64).find_map(|m| {
            let g = fam.graph(m, k, n).ok()?;
            (g.labels().ok()? == *c).then_some((fam, m))
        })
    })
}

/// Runs [`check_no_body_is_gt`] once per distinct member of `D_n G^ch ∪ D_n Ĝ^ch`.
pub fn check_gt_orbit(k: usize, n: usize, budget: usize) -> Result<Vec<GtCheck>> {
    let mut members = BTreeSet::new();
    for base in [crate::plabic::Family::Ch, crate::plabic::Family::DualCh] {
        members.extend(base.build(k, n)?.orbit()?);
    }
    members
        .iter()
        .map(|c| {
            let (fam, m) =
                identify_orbit_member(c).ok_or_else(|| Error::Mismatch(format!("orbit member {c:?} matches no closed form")))?;
            check_no_body_is_gt(fam, m, k, n, budget)
        })
        .collect()
}

/// Unimodular invariants of `Γ_G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodyStatistics {
    pub shift: i64,
    pub reflected: bool,
    pub lattice_points: usize,
    pub vertices: usize,
    pub facets: usize,
    pub lattice_points_r2: usize,
}

impl BodyStatistics {
    fn invariants(&self) -> (usize, usize, usize, usize) {
        (self.lattice_points, self.vertices, self.facets, self.lattice_points_r2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub rotations: Vec<BodyStatistics>,
    pub rotations_agree: bool,
    /// Reported for reference only; reflections are not expected to agree.
    pub reflections: Vec<BodyStatistics>,
    pub reflections_match_rotations: bool,
}

pub fn body_statistics(g: &PlabicGraph, element: &DihedralElement, budget: usize) -> Result<BodyStatistics> {
    let h = g.dihedral_act(element);
    let coords = region_coordinates(&h)?;
    let w = superpotential(&h, budget)?;
    let one = polytope_of_superpotential(&w, &coords, &BigRational::one())?;
    let two = polytope_of_superpotential(&w, &coords, &rat(2))?;
    Ok(BodyStatistics {
        shift: element.shift as i64,
        reflected: element.reflected,
        lattice_points: one.lattice_count()?,
        vertices: one.vertices()?.len(),
        facets: one.facets()?.rows().len(),
        lattice_points_r2: two.lattice_count()?,
    })
}

/// Compares the invariants of `Δ_{σ^m G}` over all rotations; reflections are listed separately.
pub fn conjecture_scan(g: &PlabicGraph, budget: usize) -> Result<ScanReport> {
    let n = g.n();
    let rotations = (0..n as i64)
        .map(|s| body_statistics(g, &DihedralElement::rotation(n, s), budget))
        .collect::<Result<Vec<_>>>()?;
    let reflections = (0..n as i64)
        .map(|s| body_statistics(g, &DihedralElement::reflection(n, s), budget))
        .collect::<Result<Vec<_>>>()?;
    let rotations_agree = rotations.windows(2).all(|w| w[0].invariants() == w[1].invariants());
    let reflections_match_rotations = reflections.iter().all(|r| r.invariants() == rotations[0].invariants());
    Ok(ScanReport {
        rotations,
        rotations_agree,
        reflections,
        reflections_match_rotations,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RowJson {
    pub a: Vec<i64>,
    pub b: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolytopeJson {
    pub coords: Vec<String>,
    pub rows: Vec<RowJson>,
}

/// Vertex coordinates as `"p/q"` text.
pub fn vertices_json(verts: &[Vec<BigRational>]) -> Vec<Vec<String>> {
    verts
        .iter()
        .map(|v| v.iter().map(|x| format!("{}/{}", x.numer(), x.denom())).collect())
        .collect()
}
