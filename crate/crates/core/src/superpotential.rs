//! Diagonal mutation sequences on checkboard graphs and closed formulas for
//! the superpotential of the (dual) checkboard orbits.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plabic::{Family, PlabicGraph};
use crate::poly::{Laurent, Monomial, RationalExpr, Var};
use crate::seeds::Seed;
use crate::subsets::{check_kn, frozen_right_label, reduce, superpotential_label, DihedralElement, KSubset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagonalKind {
    Up,
    Down,
}

/// Grid positions `(i, j)` of `G^ch_{k,n}` in mutation order.
///
/// Downward: diagonal `d+1` top to bottom, then diagonal `d` top to bottom.
/// Upward: diagonal `d-1` top to bottom, then diagonal `d` bottom to top.
pub fn diagonal_sequence(kind: DiagonalKind, d: i64, k: usize, n: usize) -> Result<Vec<(usize, usize)>> {
    check_kn(k, n)?;
    let (lo, hi) = (2 - k as i64, (n - k) as i64 - 2);
    if d % 2 != 0 || d < lo || d > hi {
        return Err(Error::OutOfRange(format!(
            "diagonal {d} must be even and within [{lo}, {hi}]"
        )));
    }
    let diagonal = |e: i64| -> Vec<(usize, usize)> {
        (1..n - k)
            .filter_map(|i| {
                let j = i as i64 - e;
                (1..k as i64).contains(&j).then_some((i, j as usize))
            })
            .collect()
    };
    Ok(match kind {
        DiagonalKind::Down => diagonal(d + 1).into_iter().chain(diagonal(d)).collect(),
        DiagonalKind::Up => diagonal(d - 1).into_iter().chain(diagonal(d).into_iter().rev()).collect(),
    })
}

/// For each `i`, a mutation sequence on `G^ch_{k,n}` and the grid position
/// that carries `J_i^+` afterwards.
/// A grid position `(i, j)` of the checkboard graph.
pub type GridPos = (usize, usize);

/// A mutation sequence and the position carrying the target label after it.
pub type Route = (Vec<GridPos>, GridPos);

pub fn checkboard_routes(k: usize, n: usize) -> Result<BTreeMap<usize, Route>> {
    check_kn(k, n)?;
    let (k_, n_) = (k as i64, n as i64);
    let mut routes = BTreeMap::new();
    let mut add = |i: i64, seq: Vec<(usize, usize)>, last: (usize, usize)| {
        routes.entry(reduce(i, n)).or_insert((seq, last));
    };
    add(k_ / 2, vec![], (1, k - 1));
    add((n_ + k_) / 2, vec![], (n - k - 1, 1));
    if k % 2 == 1 {
        add((k_ + 1) / 2, vec![(1, k - 1)], (1, k - 1));
    }
    if (n - k) % 2 == 1 {
        add((n_ + k_ + 1) / 2, vec![(n - k - 1, 1)], (n - k - 1, 1));
    }
    let mut d = 2 - k_ + (k_ % 2);
    while d <= n_ - k_ - 2 {
        for (kind, target) in [(DiagonalKind::Down, k_ + d / 2), (DiagonalKind::Up, n_ - d / 2)] {
            let seq = diagonal_sequence(kind, d, k, n)?;
            if let Some(&last) = seq.last() {
                add(target, seq, last);
            }
        }
        d += 2;
    }
    if routes.len() != n {
        return Err(Error::Mismatch(format!(
            "diagonal routes cover {} of {n} terms",
            routes.len()
        )));
    }
    Ok(routes)
}

/// Applies grid-position mutations to `G^ch_{k,n}` together with its seed.
/// Returns the final graph, seed and position-to-left-label map.
pub fn replay_positions(k: usize, n: usize, seq: &[(usize, usize)]) -> Result<(PlabicGraph, Seed, BTreeMap<GridPos, KSubset>)> {
    let gg = Family::Ch.build_with_grid(k, n)?;
    let mut pos = gg.grid_labels()?;
    let mut g = gg.graph;
    let mut seed = Seed::from_graph(&g)?;
    for p in seq {
        let label = *pos.get(p).ok_or_else(|| Error::OutOfRange(format!("no grid face {p:?}")))?;
        let (h, new) = g.mutate(&label)?;
        seed = seed.mutate_to(&label.complement(), &new.complement())?;
        pos.insert(*p, new);
        g = h;
    }
    Ok((g, seed, pos))
}

/// `W_1..W_n` for `G^ch_{k,n}` obtained along the diagonal sequences.
pub fn checkboard_terms_by_diagonals(k: usize, n: usize) -> Result<Vec<RationalExpr>> {
    let routes = checkboard_routes(k, n)?;
    let root = Seed::from_graph(&Family::Ch.build(k, n)?)?;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let (seq, last) = &routes[&i];
        let (_, seed, pos) = replay_positions(k, n, seq)?;
        let right = pos[last].complement();
        let want = superpotential_label(i as i64, k, n);
        if right != want {
            return Err(Error::Mismatch(format!("route for J_{i}^+ ends at {right}, expected {want}")));
        }
        let ji = frozen_right_label(i as i64, k, n);
        out.push(seed.var(&right).expect("label in seed").div(root.var(&ji).expect("frozen"))?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormFamily {
    ChBase,
    ChRot,
    ChRefl,
    DualChRot,
    DualChRefl,
}

impl ClosedFormFamily {
    pub const ALL: [ClosedFormFamily; 5] = [
        ClosedFormFamily::ChBase,
        ClosedFormFamily::ChRot,
        ClosedFormFamily::ChRefl,
        ClosedFormFamily::DualChRot,
        ClosedFormFamily::DualChRefl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedFormFamily::ChBase => "ch-base",
            ClosedFormFamily::ChRot => "ch-rot",
            ClosedFormFamily::ChRefl => "ch-refl",
            ClosedFormFamily::DualChRot => "dual-ch-rot",
            ClosedFormFamily::DualChRefl => "dual-ch-refl",
        }
    }

    /// The dihedral element `g` such that the formula describes `g · G` for the base graph `G`.
    pub fn element(self, m: i64, n: usize) -> DihedralElement {
        match self {
            ClosedFormFamily::ChBase => DihedralElement::identity(n),
            ClosedFormFamily::ChRot | ClosedFormFamily::DualChRot => DihedralElement::rotation(n, m),
            // σ^m ρ with ρ = x ↦ n + 1 - x
            ClosedFormFamily::ChRefl | ClosedFormFamily::DualChRefl => DihedralElement::reflection(n, m - 1),
        }
    }

    pub fn base(self) -> Family {
        match self {
            ClosedFormFamily::ChBase | ClosedFormFamily::ChRot | ClosedFormFamily::ChRefl => Family::Ch,
            ClosedFormFamily::DualChRot | ClosedFormFamily::DualChRefl => Family::DualCh,
        }
    }

    /// The graph whose superpotential the formula describes.
    pub fn graph(self, m: i64, k: usize, n: usize) -> Result<PlabicGraph> {
        Ok(self.base().build(k, n)?.dihedral_act(&self.element(m, n)))
    }

    /// `(rows, cols)`: `y_{i,j}` is defined for `0 <= i <= rows`, `0 <= j <= cols`.
    pub fn y_shape(self, k: usize, n: usize) -> (usize, usize) {
        match self {
            ClosedFormFamily::ChBase | ClosedFormFamily::ChRot | ClosedFormFamily::DualChRefl => (n - k, k),
            ClosedFormFamily::ChRefl | ClosedFormFamily::DualChRot => (k, n - k),
        }
    }

    /// Right label indexing `y_{i,j}`.
    pub fn y_label(self, m: i64, k: usize, n: usize, i: usize, j: usize) -> KSubset {
        let (i, j, k_, n_) = (i as i64, j as i64, k as i64, n as i64);
        let pre = |x: i64| KSubset::prefix(n, x);
        let c = (i + j + 1).div_euclid(2);
        match self {
            ClosedFormFamily::ChBase => pre(i).union(&pre(n_ - k_ + j).difference(&pre(i + j))).rotate(-c),
            ClosedFormFamily::ChRot => ClosedFormFamily::ChBase.y_label(0, k, n, i as usize, j as usize).rotate(m),
            ClosedFormFamily::ChRefl => pre(n_)
                .difference(&pre(n_ - j))
                .union(&pre(n_ - j - i).difference(&pre(k_ - i)))
                .rotate(c + m),
            ClosedFormFamily::DualChRot => pre(n_)
                .difference(&pre(k_ + j))
                .union(&pre(i + j).difference(&pre(i)))
                .rotate(m - c),
            ClosedFormFamily::DualChRefl => pre(n_ - k_ - i)
                .union(&pre(n_ - j).difference(&pre(n_ - i - j)))
                .rotate(c + m),
        }
    }

    fn sums_along_difference(self) -> bool {
        matches!(
            self,
            ClosedFormFamily::ChBase | ClosedFormFamily::ChRot | ClosedFormFamily::DualChRefl
        )
    }

    /// q-exponents of the two isolated terms.
    fn special_exponents(self, m: i64, k: usize, n: usize) -> [u32; 2] {
        let (k_, n_) = (k as i64, n as i64);
        let half = |x: i64, ceil: bool| {
            if ceil {
                Half::int((x + 1).div_euclid(2))
            } else {
                Half::int(x.div_euclid(2))
            }
        };
        let [a, b] = match self {
            ClosedFormFamily::ChBase => return [0, 0],
            ClosedFormFamily::ChRot => [half(k_, true), half(n_ + k_, true)],
            ClosedFormFamily::ChRefl => [Half::int(0), half(n_, false)],
            ClosedFormFamily::DualChRot => [Half::int(0), half(n_, true)],
            ClosedFormFamily::DualChRefl => [half(k_, false), half(n_ + k_, false)],
        };
        [delta(m, a, n), delta(m, b, n)]
    }

    /// q-exponent of the diagonal `d`.
    fn epsilon(self, m: i64, d: i64, k: usize, n: usize) -> u32 {
        let k_ = k as i64;
        let h = |num: i64| Half { twice: num };
        match self {
            ClosedFormFamily::ChBase => u32::from(d == 0),
            ClosedFormFamily::ChRot => delta(m, h(-d), n) + delta(m, h(d + 1 + 2 * k_), n),
            ClosedFormFamily::ChRefl => delta(m, h(d), n) + delta(m, h(-(d + 1)), n),
            ClosedFormFamily::DualChRot => delta(m, h(-d), n) + delta(m, h(d + 1), n),
            ClosedFormFamily::DualChRefl => delta(m, h(d + 2 * k_), n) + delta(m, h(-(d + 1)), n),
        }
    }

    /// The closed formula for `W`, assembled term by term.
    pub fn closed_form_w(self, m: i64, k: usize, n: usize) -> Result<RationalExpr> {
        Ok(self
            .closed_form_parts(m, k, n)?
            .into_iter()
            .fold(RationalExpr::zero(), |acc, (_, t)| acc.add(&t)))
    }

    /// The individual summands: the two isolated terms (tagged `None`)
    /// followed by each diagonal `d` (tagged `Some(d)`), q included.
    pub fn closed_form_parts(self, m: i64, k: usize, n: usize) -> Result<Vec<(Option<i64>, RationalExpr)>> {
        check_kn(k, n)?;
        let (rows, cols) = self.y_shape(k, n);
        let jn = frozen_right_label(n as i64, k, n);
        let y = |i: i64, j: i64| -> Result<Monomial> {
            if i < 0 || j < 0 || i > rows as i64 || j > cols as i64 {
                return Err(Error::OutOfRange(format!(
                    "{}: y_{{{i},{j}}} outside the index range 0..={rows} x 0..={cols} for (k, n) = ({k}, {n})",
                    self.name()
                )));
            }
            let l = self.y_label(m, k, n, i as usize, j as usize);
            Ok(if l == jn { Monomial::one() } else { Monomial::var(Var::P(l)) })
        };
        let frac = |num: [Monomial; 2], den: [Monomial; 2], qexp: u32| -> RationalExpr {
            let mut mono = num[0].mul(&num[1]).div(&den[0]).div(&den[1]);
            if qexp > 0 {
                mono = mono.mul(&Monomial::from_exponents([(Var::Q, qexp as i32)]));
            }
            Laurent::term(mono, 1).into()
        };
        let (k_, n_) = (k as i64, n as i64);
        let [q1, q2] = self.special_exponents(m, k, n);
        let (r, c) = (rows as i64, cols as i64);
        // the isolated terms sit at the two corners of the grid not crossed by the diagonals
        let corners = if self.sums_along_difference() {
            [[(1, c - 1), (0, c)], [(r - 1, 1), (r, 0)]]
        } else {
            [[(1, 1), (0, 0)], [(r - 1, c - 1), (r, c)]]
        };
        let mut parts = Vec::new();
        for ([(a, b), (x, z)], qe) in corners.into_iter().zip([q1, q2]) {
            parts.push((None, frac([y(a, b)?, Monomial::one()], [y(x, z)?, Monomial::one()], qe)));
        }
        let in_range = |a: i64, b: i64| (0..=r).contains(&a) && (0..=c).contains(&b);
        let diagonals: Vec<i64> = if self.sums_along_difference() {
            (1 - k_..=n_ - k_ - 2).collect()
        } else {
            (1..=n_ - 2).collect()
        };
        type Pair = [(i64, i64); 2];
        for d in diagonals {
            let e = self.epsilon(m, d, k, n);
            if e > 1 {
                return Err(Error::Mismatch(format!("q-exponent {e} on diagonal {d}")));
            }
            let mut sum = RationalExpr::zero();
            for a in 0..=r {
                let b = if self.sums_along_difference() { a - d } else { d - a };
                // numerator and denominator grid positions of the two summands
                let terms: [(Pair, Pair); 2] = if self.sums_along_difference() {
                    [
                        ([(a, b + 1), (a + 1, b - 1)], [(a, b), (a + 1, b)]),
                        ([(a - 1, b), (a + 1, b - 1)], [(a, b - 1), (a, b)]),
                    ]
                } else {
                    [
                        ([(a, b - 1), (a + 1, b + 1)], [(a, b), (a + 1, b)]),
                        ([(a - 1, b), (a + 1, b + 1)], [(a, b), (a, b + 1)]),
                    ]
                };
                for (num, den) in terms {
                    if num.iter().chain(&den).all(|&(x, z)| in_range(x, z)) {
                        sum = sum.add(&frac(
                            [y(num[0].0, num[0].1)?, y(num[1].0, num[1].1)?],
                            [y(den[0].0, den[0].1)?, y(den[1].0, den[1].1)?],
                            e,
                        ));
                    }
                }
            }
            parts.push((Some(d), sum));
        }
        Ok(parts)
    }
}

impl fmt::Display for ClosedFormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedFormFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosedFormFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown closed-form family {s:?}")))
    }
}

/// A value in `½ℤ`, stored doubled.
#[derive(Clone, Copy, Debug)]
struct Half {
    twice: i64,
}

impl Half {
    fn int(x: i64) -> Half {
        Half { twice: 2 * x }
    }
}

/// Kronecker delta `δ_{m,x}` modulo `n`; zero when `x` is not an integer.
fn delta(m: i64, x: Half, n: usize) -> u32 {
    if x.twice % 2 != 0 {
        return 0;
    }
    u32::from((m - x.twice / 2).rem_euclid(n as i64) == 0)
}
