//! Cyclic combinatorics on `[n]`: subsets, cyclic intervals, weak separation
//! and the dihedral group acting on all of it.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 64;

/// A subset of `[n] = {1, ..., n}`, stored as a bitmask (bit `i - 1` for element `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset {
    n: u8,
    bits: u64,
}

impl KSubset {
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_n(n)?;
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::OutOfRange(format!("element {e} not in [1, {n}]")));
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(Error::Invalid(format!("duplicate element {e}")));
            }
            bits |= bit;
        }
        Ok(KSubset { n: n as u8, bits })
    }

    /// Builds a subset, reducing every element into `[n]` cyclically.
    pub fn cyclic(n: usize, elements: impl IntoIterator<Item = i64>) -> Self {
        let mut bits = 0u64;
        for e in elements {
            bits |= 1u64 << (reduce(e, n) - 1);
        }
        KSubset { n: n as u8, bits }
    }

    pub fn empty(n: usize) -> Self {
        KSubset { n: n as u8, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        KSubset {
            n: n as u8,
            bits: full_mask(n),
        }
    }

    /// `[m] = {1, ..., m}`, empty for `m <= 0`.
    pub fn prefix(n: usize, m: i64) -> Self {
        let m = m.clamp(0, n as i64) as usize;
        KSubset {
            n: n as u8,
            bits: full_mask(m),
        }
    }

    pub(crate) fn from_bits(n: usize, bits: u64) -> Self {
        KSubset {
            n: n as u8,
            bits: bits & full_mask(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, e: usize) -> bool {
        e >= 1 && e <= self.n() && self.bits & (1u64 << (e - 1)) != 0
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (1..=self.n()).filter(move |e| bits & (1u64 << (e - 1)) != 0)
    }

    pub fn complement(&self) -> Self {
        KSubset {
            n: self.n,
            bits: !self.bits & full_mask(self.n()),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        KSubset {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        KSubset {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        KSubset {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    /// Image under `x -> x + shift` modulo `n`.
    pub fn rotate(&self, shift: i64) -> Self {
        KSubset::cyclic(self.n(), self.iter().map(|e| e as i64 + shift))
    }

    /// Image under an arbitrary map on `[n]`.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut bits = 0u64;
        for e in self.iter() {
            bits |= 1u64 << (f(e) - 1);
        }
        KSubset { n: self.n, bits }
    }

    /// Text form `a,b,c` used for CLI arguments and map keys.
    pub fn to_key(&self) -> String {
        self.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches(['[', '{']).trim_end_matches([']', '}']);
        let mut elements = Vec::new();
        for part in text.split([',', ' ']).filter(|p| !p.is_empty()) {
            let e: usize = part
                .parse()
                .map_err(|_| Error::Parse(format!("bad label element {part:?}")))?;
            elements.push(e);
        }
        KSubset::new(n, elements)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfRange(format!("n = {n} must lie in [1, {MAX_N}]")));
    }
    Ok(())
}

fn full_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Reduces an integer into `[1, n]` modulo `n`.
pub fn reduce(x: i64, n: usize) -> usize {
    (x - 1).rem_euclid(n as i64) as usize + 1
}

// Lexicographic order on the sorted element lists.
impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let mut a = self.iter();
            let mut b = other.iter();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(_), None) => return Ordering::Greater,
                    (Some(x), Some(y)) if x != y => return x.cmp(&y),
                    _ => {}
                }
            }
        })
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_key())
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_key())
    }
}

// A bare subset serializes as its sorted element array; `n` comes from context.
impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

/// The cyclic interval `<a, b>`, wrapping past `n` when `a > b`.
pub fn cyclic_interval(a: usize, b: usize, n: usize) -> Result<KSubset> {
    check_n(n)?;
    if a == 0 || a > n || b == 0 || b > n {
        return Err(Error::OutOfRange(format!("interval endpoints <{a},{b}> outside [1, {n}]")));
    }
    Ok(if a <= b {
        KSubset::from_bits(n, full_mask(b) & !full_mask(a - 1))
    } else {
        KSubset::from_bits(n, !full_mask(a - 1) | full_mask(b))
    })
}

/// Cyclic interval with endpoints taken modulo `n`.
pub fn cyclic_interval_mod(a: i64, b: i64, n: usize) -> KSubset {
    cyclic_interval(reduce(a, n), reduce(b, n), n).expect("reduced endpoints are in range")
}

/// Frozen label `I_i = <i-k+1, i>` of the boundary face between `i` and `i+1`.
pub fn frozen_label(i: i64, k: usize, n: usize) -> KSubset {
    cyclic_interval_mod(i - k as i64 + 1, i, n)
}

/// `J_i = <i+1, i+n-k>`, the complement of `I_i`.
pub fn frozen_right_label(i: i64, k: usize, n: usize) -> KSubset {
    cyclic_interval_mod(i + 1, i + (n - k) as i64, n)
}

/// `J_i^+ = <i+1, i+n-k-1> ∪ {i+n-k+1}`.
pub fn superpotential_label(i: i64, k: usize, n: usize) -> KSubset {
    let nk = (n - k) as i64;
    let mut s = if nk >= 2 {
        cyclic_interval_mod(i + 1, i + nk - 1, n)
    } else {
        KSubset::empty(n)
    };
    s = s.union(&KSubset::cyclic(n, [i + nk + 1]));
    s
}

/// Validates `2 <= k <= n - 2`.
pub fn check_kn(k: usize, n: usize) -> Result<()> {
    if n > MAX_N || k < 2 || k + 2 > n {
        return Err(Error::OutOfRange(format!(
            "(k, n) = ({k}, {n}) outside 2 <= k <= n-2, n <= {MAX_N}"
        )));
    }
    Ok(())
}

/// True iff `(a, b, c, d)` is strictly cyclically ordered: all distinct, and
/// `b`, `c`, `d` appear in that order reading the cycle from just after `a`.
pub fn strictly_cyclic(a: usize, b: usize, c: usize, d: usize, n: usize) -> bool {
    if a == b || a == c || a == d || b == c || b == d || c == d {
        return false;
    }
    let pos = |x: usize| (x + n - a) % n;
    pos(b) < pos(c) && pos(c) < pos(d)
}

/// Weak separation `I ∥ J`.
pub fn is_weakly_separated(i: &KSubset, j: &KSubset) -> Result<bool> {
    if i.n() != j.n() {
        return Err(Error::Mismatch(format!("ground sets {} and {}", i.n(), j.n())));
    }
    if i.len() != j.len() {
        return Err(Error::Mismatch(format!("cardinalities {} and {}", i.len(), j.len())));
    }
    Ok(weakly_separated_unchecked(i, j))
}

pub(crate) fn weakly_separated_unchecked(i: &KSubset, j: &KSubset) -> bool {
    // Reading I\J and J\I around the circle, separation fails iff the
    // membership pattern alternates at least four times.
    let n = i.n();
    let a = i.difference(j);
    let b = j.difference(i);
    let mut pattern: Vec<bool> = Vec::new();
    for x in 1..=n {
        if a.contains(x) {
            pattern.push(true);
        } else if b.contains(x) {
            pattern.push(false);
        }
    }
    if pattern.len() < 4 {
        return true;
    }
    let changes = (0..pattern.len())
        .filter(|&t| pattern[t] != pattern[(t + 1) % pattern.len()])
        .count();
    changes <= 2
}

/// A set of `k`-subsets of `[n]` kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelCollection {
    n: usize,
    k: usize,
    labels: BTreeSet<KSubset>,
}

impl LabelCollection {
    pub fn new(n: usize, k: usize, labels: impl IntoIterator<Item = KSubset>) -> Result<Self> {
        check_n(n)?;
        let mut set = BTreeSet::new();
        for l in labels {
            if l.n() != n || l.len() != k {
                return Err(Error::Mismatch(format!("label {l} is not a {k}-subset of [{n}]")));
            }
            if !set.insert(l) {
                return Err(Error::Invalid(format!("duplicate label {l}")));
            }
        }
        Ok(LabelCollection { n, k, labels: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, l: &KSubset) -> bool {
        self.labels.contains(l)
    }

    pub fn iter(&self) -> impl Iterator<Item = &KSubset> {
        self.labels.iter()
    }

    pub fn labels(&self) -> &BTreeSet<KSubset> {
        &self.labels
    }

    pub fn is_weakly_separated(&self) -> bool {
        let v: Vec<_> = self.labels.iter().collect();
        v.iter()
            .enumerate()
            .all(|(a, x)| v[a + 1..].iter().all(|y| weakly_separated_unchecked(x, y)))
    }

    /// Collection of complements, a collection of `(n-k)`-subsets.
    pub fn complements(&self) -> LabelCollection {
        LabelCollection {
            n: self.n,
            k: self.n - self.k,
            labels: self.labels.iter().map(KSubset::complement).collect(),
        }
    }

    pub fn act(&self, g: &DihedralElement) -> LabelCollection {
        LabelCollection {
            n: self.n,
            k: self.k,
            labels: self.labels.iter().map(|l| g.apply(l)).collect(),
        }
    }

    /// Canonical text used for ordering and hashing search frontiers.
    pub fn serialize_key(&self) -> String {
        self.labels.iter().map(|l| l.to_key()).collect::<Vec<_>>().join(";")
    }
}

/// Maximality via the cardinality criterion `|C| = k(n-k) + 1` together with
/// pairwise weak separation.
pub fn is_maximal_wsc(c: &LabelCollection) -> bool {
    c.len() == c.k() * (c.n() - c.k()) + 1 && c.is_weakly_separated()
}

#[derive(Serialize, Deserialize)]
struct CollectionJson {
    n: usize,
    k: usize,
    labels: Vec<Vec<usize>>,
}

impl Serialize for LabelCollection {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CollectionJson {
            n: self.n,
            k: self.k,
            labels: self.labels.iter().map(KSubset::elements).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabelCollection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CollectionJson::deserialize(d)?;
        let labels = raw
            .labels
            .into_iter()
            .map(|l| KSubset::new(raw.n, l))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        LabelCollection::new(raw.n, raw.k, labels).map_err(serde::de::Error::custom)
    }
}

/// `σ^shift` or `σ^shift ∘ τ` with `σ = i ↦ i+1` and `τ = i ↦ n+2-i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralElement {
    pub n: usize,
    pub shift: usize,
    pub reflected: bool,
}

impl DihedralElement {
    pub fn identity(n: usize) -> Self {
        DihedralElement {
            n,
            shift: 0,
            reflected: false,
        }
    }

    pub fn rotation(n: usize, shift: i64) -> Self {
        DihedralElement {
            n,
            shift: shift.rem_euclid(n as i64) as usize,
            reflected: false,
        }
    }

    /// `σ^shift ∘ τ`.
    pub fn reflection(n: usize, shift: i64) -> Self {
        DihedralElement {
            n,
            shift: shift.rem_euclid(n as i64) as usize,
            reflected: true,
        }
    }

    /// The reflection `x ↦ c - x`.
    pub fn reflection_about(n: usize, c: i64) -> Self {
        // σ^s τ (x) = s + 2 - x
        Self::reflection(n, c - 2)
    }

    pub fn sigma(n: usize) -> Self {
        Self::rotation(n, 1)
    }

    pub fn tau(n: usize) -> Self {
        Self::reflection(n, 0)
    }

    /// All `2n` elements, rotations first.
    pub fn all(n: usize) -> Vec<Self> {
        (0..n as i64)
            .map(|s| Self::rotation(n, s))
            .chain((0..n as i64).map(|s| Self::reflection(n, s)))
            .collect()
    }

    pub fn apply_point(&self, x: usize) -> usize {
        let x = x as i64;
        let s = self.shift as i64;
        if self.reflected {
            reduce(s + 2 - x, self.n)
        } else {
            reduce(x + s, self.n)
        }
    }

    pub fn apply(&self, i: &KSubset) -> KSubset {
        i.map(|x| self.apply_point(x))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n as i64;
        let sign = if self.reflected { -1 } else { 1 };
        DihedralElement {
            n: self.n,
            shift: (self.shift as i64 + sign * other.shift as i64).rem_euclid(n) as usize,
            reflected: self.reflected ^ other.reflected,
        }
    }

    pub fn inverse(&self) -> Self {
        if self.reflected {
            *self
        } else {
            Self::rotation(self.n, -(self.shift as i64))
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.reflected && self.shift == 0
    }

    /// Image of `1..=n` as a permutation vector (index `x - 1`).
    pub fn as_permutation(&self) -> Vec<usize> {
        (1..=self.n).map(|x| self.apply_point(x)).collect()
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.shift, self.reflected) {
            (0, false) => write!(f, "id"),
            (s, false) => write!(f, "σ^{s}"),
            (0, true) => write!(f, "τ"),
            (s, true) => write!(f, "σ^{s}τ"),
        }
    }
}

/// Subgroup of `D_n` generated by `gens`.
pub fn generated_subgroup(n: usize, gens: &[DihedralElement]) -> BTreeSet<DihedralElement> {
    let mut group = BTreeSet::from([DihedralElement::identity(n)]);
    let mut frontier = vec![DihedralElement::identity(n)];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = g.compose(h);
            if group.insert(gh) {
                frontier.push(gh);
            }
        }
    }
    group
}

/// Brute-force test that `perm` (a bijection of `[n]`, given as images of
/// `1..=n`) maps weakly separated pairs of `k`-subsets to weakly separated pairs.
pub fn preserves_weak_separation(perm: &[usize], k: usize) -> Result<bool> {
    let n = perm.len();
    check_n(n)?;
    let mut seen = vec![false; n + 1];
    for &p in perm {
        if p == 0 || p > n || seen[p] {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation of [{n}]")));
        }
        seen[p] = true;
    }
    let subsets = all_k_subsets(n, k);
    let images: Vec<KSubset> = subsets.iter().map(|s| s.map(|x| perm[x - 1])).collect();
    for a in 0..subsets.len() {
        for b in a + 1..subsets.len() {
            if weakly_separated_unchecked(&subsets[a], &subsets[b]) && !weakly_separated_unchecked(&images[a], &images[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn all_k_subsets(n: usize, k: usize) -> Vec<KSubset> {
    let mut out: Vec<KSubset> = (0u64..(1u64 << n))
        .filter(|b| b.count_ones() as usize == k)
        .map(|b| KSubset::from_bits(n, b))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn intervals() {
        assert_eq!(cyclic_interval(2, 4, 6).unwrap(), s(6, &[2, 3, 4]));
        assert_eq!(cyclic_interval(5, 2, 6).unwrap(), s(6, &[5, 6, 1, 2]));
        assert_eq!(cyclic_interval(1, 1, 5).unwrap(), s(5, &[1]));
        assert!(matches!(cyclic_interval(0, 2, 5), Err(Error::OutOfRange(_))));
        assert!(cyclic_interval(2, 7, 6).is_err());
    }

    #[test]
    fn weak_separation_examples() {
        assert!(!is_weakly_separated(&s(4, &[1, 3]), &s(4, &[2, 4])).unwrap());
        assert!(is_weakly_separated(&s(4, &[1, 2]), &s(4, &[2, 3])).unwrap());
        assert!(is_weakly_separated(&s(4, &[1, 2]), &s(5, &[2, 3])).is_err());
        assert!(is_weakly_separated(&s(4, &[1, 2]), &s(4, &[3])).is_err());
    }

    // Oracle: literal quantifier over a, c ∈ I\J and b, d ∈ J\I.
    fn ws_oracle(i: &KSubset, j: &KSubset) -> bool {
        let n = i.n();
        let a = i.difference(j).elements();
        let b = j.difference(i).elements();
        for &x in &a {
            for &z in &a {
                for &y in &b {
                    for &w in &b {
                        if strictly_cyclic(x, y, z, w, n) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn weak_separation_matches_quantifier_oracle() {
        for n in 4..=7 {
            for k in 1..n {
                let all = all_k_subsets(n, k);
                for x in &all {
                    for y in &all {
                        assert_eq!(weakly_separated_unchecked(x, y), ws_oracle(x, y), "{x} {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn frozen_labels_pairwise_separated() {
        let (k, n) = (3, 6);
        let frozen: Vec<_> = (1..=n as i64).map(|i| frozen_label(i, k, n)).collect();
        let mut pairs = 0;
        for a in 0..n {
            for b in a + 1..n {
                assert!(is_weakly_separated(&frozen[a], &frozen[b]).unwrap());
                pairs += 1;
            }
        }
        assert_eq!(pairs, 15);
    }

    #[test]
    fn maximality_by_cardinality() {
        let frozen = (1..=4).map(|i| frozen_label(i, 2, 4));
        let c = LabelCollection::new(4, 2, frozen).unwrap();
        assert!(!is_maximal_wsc(&c));
        let mut labels: Vec<_> = c.iter().copied().collect();
        labels.push(s(4, &[2, 4]));
        assert!(is_maximal_wsc(&LabelCollection::new(4, 2, labels).unwrap()));
    }

    #[test]
    fn dihedral_examples() {
        let sigma = DihedralElement::sigma(6);
        assert_eq!(sigma.apply(&s(6, &[1, 2, 4])), s(6, &[2, 3, 5]));
        let tau = DihedralElement::tau(4);
        assert_eq!(tau.apply(&s(4, &[1, 2])), s(4, &[1, 4]));
        for (k, n) in [(2usize, 5usize), (3, 7), (4, 9)] {
            for i in 1..=n as i64 {
                for m in 0..n as i64 {
                    let g = DihedralElement::rotation(n, m);
                    assert_eq!(g.apply(&frozen_right_label(i, k, n)), frozen_right_label(i + m, k, n));
                    assert_eq!(g.apply(&superpotential_label(i, k, n)), superpotential_label(i + m, k, n));
                }
            }
        }
    }

    #[test]
    fn superpotential_label_example() {
        assert_eq!(superpotential_label(1, 3, 6), s(6, &[2, 3, 5]));
        assert_eq!(superpotential_label(4, 3, 6), s(6, &[2, 5, 6]));
    }

    #[test]
    fn group_structure() {
        for n in 3..=8 {
            let all = DihedralElement::all(n);
            assert_eq!(all.len(), 2 * n);
            let perms: BTreeSet<Vec<usize>> = all.iter().map(|g| g.as_permutation()).collect();
            assert_eq!(perms.len(), 2 * n);
            for g in &all {
                assert!(g.compose(&g.inverse()).is_identity());
                for h in &all {
                    let gh = g.compose(h);
                    for x in 1..=n {
                        assert_eq!(gh.apply_point(x), g.apply_point(h.apply_point(x)));
                    }
                }
            }
            let generated = generated_subgroup(n, &[DihedralElement::sigma(n), DihedralElement::tau(n)]);
            assert_eq!(generated.len(), 2 * n);
        }
        assert_eq!(DihedralElement::reflection_about(5, 2), DihedralElement::tau(5));
    }

    #[test]
    fn preserving_permutations() {
        for g in DihedralElement::all(5) {
            assert!(preserves_weak_separation(&g.as_permutation(), 2).unwrap());
        }
        assert!(!preserves_weak_separation(&[3, 2, 1, 4, 5], 2).unwrap());
        assert!(preserves_weak_separation(&[1, 1, 2, 3, 4], 2).is_err());
    }

    #[test]
    fn parse_and_order() {
        assert_eq!(KSubset::parse(6, "1,4,6").unwrap(), s(6, &[1, 4, 6]));
        assert_eq!(KSubset::parse(6, "[2, 3, 5]").unwrap(), s(6, &[2, 3, 5]));
        assert!(KSubset::parse(6, "1,x").is_err());
        assert!(s(6, &[1, 5]) < s(6, &[2, 3]));
        assert!(s(6, &[1, 2]) < s(6, &[1, 3]));
    }

    #[test]
    fn collection_json() {
        let c = LabelCollection::new(4, 2, [s(4, &[2, 3]), s(4, &[1, 4])]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"n":4,"k":2,"labels":[[1,4],[2,3]]}"#);
        let back: LabelCollection = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
