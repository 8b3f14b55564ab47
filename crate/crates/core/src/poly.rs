//! Laurent polynomials over the integers in Plücker variables and `q`,
//! and quotients of them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subsets::KSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    P(KSubset),
    Q,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::P(l) => write!(f, "p[{}]", l.to_key()),
            Var::Q => write!(f, "q"),
        }
    }
}

/// Sparse exponent vector: sorted by variable, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (Var, i32)>) -> Self {
        let mut map: BTreeMap<Var, i32> = BTreeMap::new();
        for (v, e) in exps {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn exponents(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0.binary_search_by(|(x, _)| x.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn combine(&self, other: &Monomial, sign: i32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let pick = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match pick {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.combine(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.combine(other, -1)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }
}

/// Lexicographic order on exponent vectors (missing entries are 0). It is
/// compatible with multiplication, which is what exact division relies on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(x), None) => return x.1.cmp(&0),
                (None, Some(y)) => return 0.cmp(&y.1),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return x.1.cmp(&0),
                    Ordering::Greater => return 0.cmp(&y.1),
                    Ordering::Equal => {
                        if x.1 != y.1 {
                            return x.1.cmp(&y.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Laurent::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Laurent { terms }
    }

    pub fn var(v: Var) -> Self {
        Laurent::term(Monomial::var(v), 1)
    }

    pub fn p(label: KSubset) -> Self {
        Laurent::var(Var::P(label))
    }

    pub fn q() -> Self {
        Laurent::var(Var::Q)
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().expect("one term"))
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(x, d)| (x.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Laurent {
        let mut out = Laurent::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Coordinatewise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Monomial {
        self.exponent_bound(|a, b| a.min(b))
    }

    pub fn max_exponents(&self) -> Monomial {
        self.exponent_bound(|a, b| a.max(b))
    }

    fn exponent_bound(&self, pick: impl Fn(i32, i32) -> i32) -> Monomial {
        let mut vars: BTreeMap<Var, i32> = BTreeMap::new();
        for m in self.terms.keys() {
            for &(v, _) in &m.0 {
                vars.insert(v, 0);
            }
        }
        for v in vars.clone().keys() {
            let e = self.terms.keys().map(|m| m.exponent(*v)).reduce(&pick).unwrap_or(0);
            vars.insert(*v, e);
        }
        Monomial::from_exponents(vars)
    }

    /// Exact quotient `self / d` if it is a Laurent polynomial.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        let (lm, lc) = d.leading()?;
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if let Some((m, c)) = d.as_monomial() {
            if self.terms.values().any(|x| !x.is_multiple_of(c)) {
                return None;
            }
            let inv = m.inverse();
            return Some(Laurent {
                terms: self.terms.iter().map(|(x, y)| (x.mul(&inv), y / c)).collect(),
            });
        }
        // quotient exponents are confined to the box [min(A) - min(D), max(A) - max(D)]
        let lo = self.min_exponents().div(&d.min_exponents());
        let hi = self.max_exponents().div(&d.max_exponents());
        let mut vars: Vec<Var> = lo.0.iter().chain(&hi.0).map(|p| p.0).collect();
        for m in self.terms.keys().chain(d.terms.keys()) {
            vars.extend(m.0.iter().map(|p| p.0));
        }
        vars.sort();
        vars.dedup();
        let in_box = |t: &Monomial| {
            vars.iter()
                .all(|&v| (lo.exponent(v)..=hi.exponent(v)).contains(&t.exponent(v)))
        };
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !rc.is_multiple_of(lc) {
                return None;
            }
            let t = rm.div(lm);
            if !in_box(&t) {
                return None;
            }
            let c = rc / lc;
            rem = &rem - &d.mul_term(&t, &c);
            quot.add_term(t, c);
        }
        Some(quot)
    }

    pub fn eval(&self, value: &impl Fn(Var) -> BigRational) -> BigRational {
        let mut cache: BTreeMap<Var, BigRational> = BTreeMap::new();
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for &(v, e) in &m.0 {
                let x = cache.entry(v).or_insert_with(|| value(v)).clone();
                let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
                t = if e > 0 { t * p } else { t / p };
            }
            total += t;
        }
        total
    }

    /// Renames every Plücker variable through `f`.
    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Laurent {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::from_exponents(m.0.iter().map(|&(v, e)| (f(v), e))), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exps: m
                    .0
                    .iter()
                    .map(|(v, e)| {
                        let key = match v {
                            Var::P(l) => l.to_key(),
                            Var::Q => "q".to_string(),
                        };
                        (key, *e)
                    })
                    .collect(),
            })
            .collect()
    }

    pub fn from_json(n: usize, terms: &[TermJson]) -> Result<Laurent> {
        let mut out = Laurent::zero();
        for t in terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            let mut exps = Vec::new();
            for (k, &e) in &t.exps {
                let v = if k == "q" { Var::Q } else { Var::P(KSubset::parse(n, k)?) };
                exps.push((v, e));
            }
            out.add_term(Monomial::from_exponents(exps), c);
        }
        Ok(out)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign, abs) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            match (abs.is_one(), m.is_one()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{m}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{m}")?,
            }
        }
        Ok(())
    }
}

/// A quotient of Laurent polynomials. Stored as a Laurent polynomial with
/// denominator 1 whenever the division is exact; otherwise the denominator
/// is stripped of monomial factors and content. Equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalExpr {
    num: Laurent,
    den: Laurent,
}

impl RationalExpr {
    pub fn new(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(RationalExpr::canonical(num, den))
    }

    fn canonical(num: Laurent, den: Laurent) -> Self {
        if let Some(q) = num.div_exact(&den) {
            return RationalExpr {
                num: q,
                den: Laurent::one(),
            };
        }
        let shift = den.min_exponents();
        let inv = shift.inverse();
        let mut den = den.mul_term(&inv, &BigInt::one());
        let mut num = num.mul_term(&inv, &BigInt::one());
        let mut g = num.content().gcd(&den.content());
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if !g.is_one() && !g.is_zero() {
            num = Laurent {
                terms: num.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect(),
            };
            den = Laurent {
                terms: den.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect(),
            };
        }
        RationalExpr { num, den }
    }

    pub fn from_laurent(l: Laurent) -> Self {
        RationalExpr {
            num: l,
            den: Laurent::one(),
        }
    }

    pub fn zero() -> Self {
        RationalExpr::from_laurent(Laurent::zero())
    }

    pub fn one() -> Self {
        RationalExpr::from_laurent(Laurent::one())
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> &Laurent {
        &self.den
    }

    /// The Laurent form, when the denominator is 1.
    pub fn as_laurent(&self) -> Option<&Laurent> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RationalExpr) -> RationalExpr {
        if self.den == o.den {
            return RationalExpr::canonical(&self.num + &o.num, self.den.clone());
        }
        RationalExpr::canonical(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn mul(&self, o: &RationalExpr) -> RationalExpr {
        RationalExpr::canonical(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &RationalExpr) -> Result<RationalExpr> {
        if o.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(RationalExpr::canonical(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn eval(&self, value: &impl Fn(Var) -> BigRational) -> Result<BigRational> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(Error::Arithmetic("denominator vanishes at this point".into()));
        }
        Ok(self.num.eval(value) / d)
    }

    pub fn map_vars(&self, f: impl Fn(Var) -> Var + Copy) -> RationalExpr {
        RationalExpr::canonical(self.num.map_vars(f), self.den.map_vars(f))
    }

    pub fn to_json(&self) -> ExprJson {
        ExprJson {
            num: self.num.to_json(),
            den: self.den.to_json(),
        }
    }

    pub fn from_json(n: usize, j: &ExprJson) -> Result<Self> {
        RationalExpr::new(Laurent::from_json(n, &j.num)?, Laurent::from_json(n, &j.den)?)
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalExpr {}

impl From<Laurent> for RationalExpr {
    fn from(l: Laurent) -> Self {
        RationalExpr::from_laurent(l)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub coeff: String,
    pub exps: BTreeMap<String, i32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ExprJson {
    pub num: Vec<TermJson>,
    pub den: Vec<TermJson>,
}
