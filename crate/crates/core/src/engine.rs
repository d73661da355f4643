//! Reduction of Hessenberg functions to complete products by the modular law.
//!
//! Every function `f` obeying the modular law satisfies
//! `[b+1] f(h1) = [j-i] f(h2) + ([b+1] - [j-i]) f(h0)` on admissible triples.
//! Repeating this step drives any `h` to products of complete paths, giving
//! `f(h) = sum_lambda c_lambda(h) f(k_lambda)` with `c_lambda` in `Q(q)`.
//!
//! Two coordinate systems are carried by the same reducer. [`Expansion`]
//! stores `c_lambda` directly over `Q(q)`. The default engine instead stores
//! `c_lambda * lambda!_q`, the e-coefficients of the chromatic quasisymmetric
//! function, which live in `Z[q]`; each step then needs only an exact
//! polynomial division by `[b+1]_q` instead of rational function arithmetic.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::dyck::{Hess, Partition};
use crate::error::{Error, Result};
use crate::qpoly::{q_binomial, q_factorial, q_int};
use crate::symfunc::{Basis, SymFunc};
use crate::{QPoly, QRat};

/// Default bound on relation applications in a single [`Engine::expand`] call.
pub const DEFAULT_STEP_LIMIT: u64 = 10_000_000;

pub const CACHE_SCHEMA: &str = "chromod/1";

/// One application of the three-term relation to `h1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub i: usize,
    pub j: usize,
    pub b: usize,
    pub h0: Hess,
    pub h2: Hess,
    pub coeff_h2: QRat,
    pub coeff_h0: QRat,
}

/// The relation's coefficients as polynomials over the common denominator
/// `[b+1]_q`.
struct StepPolys {
    num_h2: QPoly,
    num_h0: QPoly,
    den: QPoly,
}

impl StepPolys {
    fn new(i: usize, j: usize, b: usize) -> Self {
        let den = q_int(b + 1);
        let num_h2 = q_int(j - i);
        let num_h0 = &den - &num_h2;
        StepPolys { num_h2, num_h0, den }
    }
}

/// Checks conditions (1)-(4) of the three-term relation for `h` at `(i, j, b)`.
pub fn check_relation_conditions(h: &Hess, i: usize, j: usize, b: usize) -> bool {
    failed_condition(h, i, j, b).is_none()
}

fn failed_condition(h: &Hess, i: usize, j: usize, b: usize) -> Option<String> {
    let n = h.n();
    if !(1 <= i && i < j && j <= n && b >= 1) {
        return Some(format!("indices out of range: i={i}, j={j}, b={b}, n={n}"));
    }
    let hi = h.at(i);
    let cond1 = if i == 1 { h.at(1) > 1 } else { h.at(i - 1) < hi };
    if !cond1 {
        return Some("condition (1): h(i-1) < h(i)".into());
    }
    let constant = (i..j).all(|l| h.at(l) == hi);
    if !(j - 1 < hi && constant && hi < h.at(j)) {
        return Some("condition (2): j-1 < h(i) = ... = h(j-1) < h(j)".into());
    }
    if (1..=n).any(|l| (i..=j.saturating_sub(2)).contains(&h.at(l)) && j >= i + 2) {
        return Some("condition (3): some h(l) lies in {i, ..., j-2}".into());
    }
    if b > h.at(j) - hi {
        return Some("condition (4): b > h(j) - h(i)".into());
    }
    let top = h.at(hi);
    if !(1..=b).all(|l| h.at(hi + l) == top) {
        return Some("condition (4): h not constant on h(i), ..., h(i)+b".into());
    }
    None
}

/// Builds the two children and coefficients of the relation at `(i, j, b)`.
pub fn apply_relation(h: &Hess, i: usize, j: usize, b: usize) -> Result<Step> {
    if let Some(reason) = failed_condition(h, i, j, b) {
        return Err(Error::RelationConditions(format!("{h} at (i={i}, j={j}, b={b}): {reason}")));
    }
    let (h0, h2) = children(h, i, j, b)?;
    let p = StepPolys::new(i, j, b);
    let den = QRat::from_poly(p.den.clone());
    let coeff_h2 = QRat::from_poly(p.num_h2).checked_div(&den)?;
    let coeff_h0 = QRat::from_poly(p.num_h0).checked_div(&den)?;
    Ok(Step { i, j, b, h0, h2, coeff_h2, coeff_h0 })
}

fn children(h: &Hess, i: usize, j: usize, b: usize) -> Result<(Hess, Hess)> {
    let mut v0 = h.values().to_vec();
    let mut v2 = h.values().to_vec();
    for l in i..j {
        v0[l - 1] -= 1;
    }
    for l in i..j - 1 {
        v2[l - 1] -= 1;
    }
    v2[j - 2] += b;
    Ok((Hess::from_values(v0)?, Hess::from_values(v2)?))
}

/// Step for a non-aligned `h`: the smallest misaligned `i`, the end `j` of its
/// constant run and the largest admissible `b`.
pub fn choose_step_nonaligned(h: &Hess) -> Result<(usize, usize, usize)> {
    let i = h
        .first_misaligned()
        .ok_or_else(|| Error::NoStep(format!("{h} is aligned")))?;
    let hi = h.at(i);
    let j = (i + 1..=h.n())
        .find(|&l| h.at(l) > hi)
        .ok_or_else(|| Error::Consistency(format!("no j for {h} at i={i}")))?;
    let top = h.at(hi);
    let b = (1..)
        .take_while(|&l| hi + l <= h.at(j) && h.at(hi + l) == top)
        .last()
        .ok_or_else(|| Error::Consistency(format!("no b for {h} at i={i}")))?;
    Ok((i, j, b))
}

/// Step for an aligned `h` inside its leftmost non-complete irreducible
/// component. Indices are returned relative to the whole of `h`.
pub fn choose_step_aligned(h: &Hess) -> Result<(usize, usize, usize, usize)> {
    if !h.is_aligned() {
        return Err(Error::NoStep(format!("{h} is not aligned")));
    }
    let ranges = h.component_ranges();
    let (c, &(s, t)) = ranges
        .iter()
        .enumerate()
        .find(|(_, &(s, t))| h.at(s) != t)
        .ok_or_else(|| Error::NoStep(format!("{h} is a product of complete paths")))?;
    let j = (s..=t).find(|&l| h.at(l) == t).unwrap();
    let hj1 = h.at(j - 1);
    let i = (s..j).rev().take_while(|&l| h.at(l) == hj1).last().unwrap();
    Ok((c, i, j, t - hj1))
}

/// The step the reduction algorithm takes at `h`, or `None` when `h` is a
/// product of complete paths.
pub fn choose_step(h: &Hess) -> Result<Option<(usize, usize, usize)>> {
    if h.as_complete_product().is_some() {
        return Ok(None);
    }
    let (i, j, b) = if h.is_aligned() {
        let (_, i, j, b) = choose_step_aligned(h)?;
        (i, j, b)
    } else {
        choose_step_nonaligned(h)?
    };
    debug_assert!(check_relation_conditions(h, i, j, b), "{h} ({i},{j},{b})");
    Ok(Some((i, j, b)))
}

/// `f(h) = sum_lambda terms[lambda] * f(k_lambda)` for every `f` obeying the
/// modular law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    n: usize,
    terms: BTreeMap<Partition, QRat>,
}

impl Expansion {
    pub fn base(p: Partition) -> Self {
        let n = p.weight();
        Expansion { n, terms: BTreeMap::from([(p, QRat::one())]) }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Partition, QRat)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (p, c) in terms {
            if p.weight() != n {
                return Err(Error::DegreeMismatch { expected: n, found: p.weight() });
            }
            if !c.is_zero() {
                out.insert(p, c);
            }
        }
        Ok(Expansion { n, terms: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &QRat)> {
        self.terms.iter()
    }

    pub fn get(&self, p: &Partition) -> QRat {
        self.terms.get(p).cloned().unwrap_or_else(QRat::zero)
    }

    /// Sum of all coefficients, i.e. the value at `f = 1`.
    pub fn coefficient_sum(&self) -> QRat {
        self.terms.values().fold(QRat::zero(), |acc, c| &acc + c)
    }

    /// Scales by `lambda!_q`, giving the e-basis coefficients of `csf_q`.
    fn to_scaled(&self) -> Result<ECoeffs> {
        let mut out = BTreeMap::new();
        for (p, c) in &self.terms {
            let v = c.mul_poly(&lambda_factorial(p));
            let poly = v.is_polynomial().ok_or_else(|| Error::NotPolynomial {
                partition: p.to_string(),
                value: v.to_string(),
            })?;
            out.insert(p.clone(), poly);
        }
        Ok(ECoeffs { n: self.n, terms: out })
    }
}

/// `lambda!_q = prod_i lambda_i!_q`.
pub fn lambda_factorial(p: &Partition) -> QPoly {
    p.parts().iter().fold(QPoly::one(), |acc, &k| &acc * &q_factorial(k))
}

/// Polynomial e-coefficients `c_lambda * lambda!_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ECoeffs {
    n: usize,
    terms: BTreeMap<Partition, QPoly>,
}

impl ECoeffs {
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &QPoly)> {
        self.terms.iter()
    }

    fn to_expansion(&self) -> Expansion {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| {
                let den = QRat::from_poly(lambda_factorial(p));
                (p.clone(), QRat::from_poly(c.clone()).checked_div(&den).unwrap())
            })
            .collect();
        Expansion { n: self.n, terms }
    }

    pub fn to_symfunc(&self) -> SymFunc {
        SymFunc::from_terms(
            self.n,
            Basis::E,
            self.terms.iter().map(|(p, c)| (p.clone(), QRat::from_poly(c.clone()))),
        )
        .expect("partitions have the right weight")
    }
}

/// Coordinates the reducer can work in.
trait Coords: Clone + Send + Sync + Sized {
    fn base(p: &Partition) -> Self;
    fn combine(step: &StepPolys, v2: &Self, v0: Option<&Self>) -> Result<Self>;
    fn product(&self, other: &Self) -> Self;
}

impl Coords for Expansion {
    fn base(p: &Partition) -> Self {
        Expansion::base(p.clone())
    }

    fn combine(step: &StepPolys, v2: &Self, v0: Option<&Self>) -> Result<Self> {
        let den = QRat::from_poly(step.den.clone());
        let c2 = QRat::from_poly(step.num_h2.clone()).checked_div(&den)?;
        let c0 = QRat::from_poly(step.num_h0.clone()).checked_div(&den)?;
        let mut terms: BTreeMap<Partition, QRat> = BTreeMap::new();
        for (p, c) in &v2.terms {
            terms.insert(p.clone(), c * &c2);
        }
        if let Some(v0) = v0 {
            for (p, c) in &v0.terms {
                let t = c * &c0;
                let e = terms.entry(p.clone()).or_insert_with(QRat::zero);
                *e = &*e + &t;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Expansion { n: v2.n, terms })
    }

    fn product(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Partition, QRat> = BTreeMap::new();
        for (p1, c1) in &self.terms {
            for (p2, c2) in &other.terms {
                let e = terms.entry(p1.union(p2)).or_insert_with(QRat::zero);
                *e = &*e + &(c1 * c2);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Expansion { n: self.n + other.n, terms }
    }
}

impl Coords for ECoeffs {
    fn base(p: &Partition) -> Self {
        ECoeffs { n: p.weight(), terms: BTreeMap::from([(p.clone(), lambda_factorial(p))]) }
    }

    fn combine(step: &StepPolys, v2: &Self, v0: Option<&Self>) -> Result<Self> {
        let mut terms: BTreeMap<Partition, QPoly> = BTreeMap::new();
        for (p, c) in &v2.terms {
            terms.insert(p.clone(), c * &step.num_h2);
        }
        if let Some(v0) = v0 {
            for (p, c) in &v0.terms {
                let t = c * &step.num_h0;
                let e = terms.entry(p.clone()).or_insert_with(QPoly::zero);
                *e = &*e + &t;
            }
        }
        let mut out = BTreeMap::new();
        for (p, c) in terms {
            if c.is_zero() {
                continue;
            }
            let quot = c.div_exact(&step.den).ok_or_else(|| {
                Error::Consistency(format!("e-coefficient of {p} not divisible by [b+1]_q"))
            })?;
            out.insert(p, quot);
        }
        Ok(ECoeffs { n: v2.n, terms: out })
    }

    fn product(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Partition, QPoly> = BTreeMap::new();
        for (p1, c1) in &self.terms {
            for (p2, c2) in &other.terms {
                let e = terms.entry(p1.union(p2)).or_insert_with(QPoly::zero);
                *e = &*e + &(c1 * c2);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ECoeffs { n: self.n + other.n, terms }
    }
}

/// Memoized reducer over one coordinate system.
struct Reducer<V> {
    memo: DashMap<Hess, Arc<V>>,
}

impl<V: Coords> Reducer<V> {
    fn new() -> Self {
        Reducer { memo: DashMap::new() }
    }

    fn lookup(&self, h: &Hess) -> Option<Arc<V>> {
        if let Some(p) = h.as_complete_product() {
            return Some(Arc::new(V::base(&p)));
        }
        self.memo.get(h).map(|v| v.clone())
    }

    /// Iterative depth-first reduction. Each stack entry is either waiting for
    /// its children or ready to combine them.
    fn reduce(&self, h: &Hess, multiplicative: bool, step_limit: u64, counter: &AtomicU64) -> Result<Arc<V>> {
        if let Some(v) = self.lookup(h) {
            return Ok(v);
        }
        let mut stack = vec![h.clone()];
        while let Some(top) = stack.last().cloned() {
            if self.lookup(&top).is_some() {
                stack.pop();
                continue;
            }
            if counter.fetch_add(1, Ordering::Relaxed) >= step_limit {
                return Err(Error::StepLimit(step_limit));
            }
            if multiplicative && !top.is_irreducible() {
                let comps = top.irreducible_components();
                let missing: Vec<Hess> = comps.iter().filter(|c| self.lookup(c).is_none()).cloned().collect();
                if missing.is_empty() {
                    let value = comps
                        .iter()
                        .map(|c| self.lookup(c).unwrap())
                        .reduce(|a, b| Arc::new(a.product(&b)))
                        .unwrap();
                    self.memo.entry(top).or_insert(value);
                    stack.pop();
                } else {
                    stack.extend(missing);
                }
                continue;
            }
            let (i, j, b) = choose_step(&top)?
                .ok_or_else(|| Error::Consistency(format!("no step for {top}")))?;
            let polys = StepPolys::new(i, j, b);
            let (h0, h2) = children(&top, i, j, b)?;
            let need_h0 = !polys.num_h0.is_zero();
            let v2 = self.lookup(&h2);
            let v0 = if need_h0 { self.lookup(&h0) } else { None };
            match (v2, need_h0, v0) {
                (Some(v2), false, _) => {
                    let value = V::combine(&polys, &v2, None)?;
                    self.memo.entry(top).or_insert(Arc::new(value));
                    stack.pop();
                }
                (Some(v2), true, Some(v0)) => {
                    let value = V::combine(&polys, &v2, Some(&v0))?;
                    self.memo.entry(top).or_insert(Arc::new(value));
                    stack.pop();
                }
                (v2, _, _) => {
                    if v2.is_none() {
                        stack.push(h2);
                    }
                    if need_h0 && self.lookup(&h0).is_none() {
                        stack.push(h0);
                    }
                }
            }
        }
        self.lookup(h)
            .ok_or_else(|| Error::Consistency(format!("reduction of {h} left no value")))
    }
}

/// Configuration and shared memo tables.
pub struct Engine {
    scaled: Reducer<ECoeffs>,
    rational: Reducer<Expansion>,
    step_limit: u64,
    multiplicative: bool,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine {
            scaled: Reducer::new(),
            rational: Reducer::new(),
            step_limit: DEFAULT_STEP_LIMIT,
            multiplicative: false,
        }
    }

    pub fn with_step_limit(mut self, limit: u64) -> Self {
        self.step_limit = limit;
        self
    }

    /// Reduce products component by component.
    pub fn with_multiplicative_shortcut(mut self, on: bool) -> Self {
        self.multiplicative = on;
        self
    }

    /// Shared engine used by the free functions of this module.
    pub fn global() -> &'static Engine {
        static ENGINE: OnceLock<Engine> = OnceLock::new();
        ENGINE.get_or_init(Engine::new)
    }

    /// Polynomial e-coefficients of `csf_q(h)`.
    pub fn e_coeffs(&self, h: &Hess) -> Result<Arc<ECoeffs>> {
        let counter = AtomicU64::new(0);
        self.scaled.reduce(h, self.multiplicative, self.step_limit, &counter)
    }

    pub fn expand(&self, h: &Hess) -> Result<Expansion> {
        Ok(self.e_coeffs(h)?.to_expansion())
    }

    /// Same result as [`Engine::expand`] computed entirely in `Q(q)`, without
    /// using that the coefficients of `csf_q` are polynomials.
    pub fn expand_rational(&self, h: &Hess) -> Result<Expansion> {
        let counter = AtomicU64::new(0);
        Ok((*self.rational.reduce(h, self.multiplicative, self.step_limit, &counter)?).clone())
    }

    pub fn csf_e(&self, h: &Hess) -> Result<SymFunc> {
        Ok(self.e_coeffs(h)?.to_symfunc())
    }

    pub fn memo_len(&self) -> usize {
        self.scaled.memo.len()
    }

    /// Appends every memoized expansion to a JSON-lines file. A new file
    /// starts with a schema header line.
    pub fn save_cache(&self, path: &Path) -> Result<usize> {
        let fresh = !path.exists() || std::fs::metadata(path)?.len() == 0;
        let mut entries: Vec<(Hess, Arc<ECoeffs>)> =
            self.scaled.memo.iter().map(|e| (e.key().clone(), e.value().clone())).collect();
        entries.sort_by(|a, b| (a.0.n(), &a.0).cmp(&(b.0.n(), &b.0)));
        let file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
        let mut w = std::io::BufWriter::new(file);
        if fresh {
            serde_json::to_writer(&mut w, &CacheHeader { schema: CACHE_SCHEMA.into(), kind: "expansion".into() })?;
            writeln!(w)?;
        }
        for (h, v) in &entries {
            let rec = CacheRecord {
                h: h.clone(),
                terms: v.to_expansion().terms.into_iter().map(|(partition, value)| CacheTerm { partition, value }).collect(),
            };
            serde_json::to_writer(&mut w, &rec)?;
            writeln!(w)?;
        }
        w.flush()?;
        Ok(entries.len())
    }

    /// Loads records written by [`Engine::save_cache`]. Returns the number of
    /// entries read.
    pub fn load_cache(&self, path: &Path) -> Result<usize> {
        let file = std::fs::File::open(path)?;
        let mut count = 0;
        for (k, line) in std::io::BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            if k == 0 {
                let header: CacheHeader = serde_json::from_str(&line)?;
                if header.schema != CACHE_SCHEMA {
                    return Err(Error::Precondition(format!("cache schema {} unsupported", header.schema)));
                }
                continue;
            }
            let rec: CacheRecord = serde_json::from_str(&line)?;
            let n = rec.h.n();
            let exp = Expansion::from_terms(n, rec.terms.into_iter().map(|t| (t.partition, t.value)))?;
            self.scaled.memo.insert(rec.h, Arc::new(exp.to_scaled()?));
            count += 1;
        }
        Ok(count)
    }
}

#[derive(Serialize, Deserialize)]
struct CacheHeader {
    schema: String,
    kind: String,
}

#[derive(Serialize, Deserialize)]
struct CacheTerm {
    partition: Partition,
    value: QRat,
}

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    h: Hess,
    terms: Vec<CacheTerm>,
}

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<CacheTerm> = self
            .terms
            .iter()
            .map(|(p, c)| CacheTerm { partition: p.clone(), value: c.clone() })
            .collect();
        terms.serialize(s)
    }
}

pub fn expand(h: &Hess) -> Result<Expansion> {
    Engine::global().expand(h)
}

pub fn csf_e(h: &Hess) -> Result<SymFunc> {
    Engine::global().csf_e(h)
}

/// A `Q(q)`-module that modular-law functions can take values in.
pub trait RatModule: Clone {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &QRat) -> Self;
}

impl RatModule for QRat {
    fn zero_like(&self) -> Self {
        QRat::zero()
    }
    fn add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn scale(&self, c: &QRat) -> Self {
        self * c
    }
}

impl RatModule for SymFunc {
    fn zero_like(&self) -> Self {
        SymFunc::zero(self.degree(), self.basis())
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
    fn scale(&self, c: &QRat) -> Self {
        SymFunc::scale(self, c)
    }
}

/// `sum_lambda c_lambda * base(lambda)`.
pub fn evaluate<M: RatModule>(exp: &Expansion, base: impl Fn(&Partition) -> Option<M>) -> Result<M> {
    let mut acc: Option<M> = None;
    for (p, c) in exp.terms() {
        let v = base(p).ok_or_else(|| Error::MissingBase(p.to_string()))?;
        let t = v.scale(c);
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t)?,
        });
    }
    acc.ok_or_else(|| Error::Precondition("empty expansion".into()))
}

/// The base values of `csf_q`: `f(k_lambda) = lambda!_q e_lambda`.
pub fn csf_base(p: &Partition) -> Option<SymFunc> {
    Some(SymFunc::basis_element(Basis::E, p.clone()).scale(&QRat::from_poly(lambda_factorial(p))))
}

/// Checks `f(h1) = [j-i] f(h2) + (1 - [j-i]) f(h0)` with `f = csf_q`.
pub fn verify_relation_basic(h: &Hess, i: usize, j: usize) -> Result<bool> {
    let n = h.n();
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::Precondition(format!("need 1 <= i < j <= n, got i={i}, j={j}")));
    }
    let hi = h.at(i);
    let cond1 = if i == 1 { h.at(1) > 1 } else { h.at(i - 1) < hi };
    let cond2 = j - 1 < hi && (i..j).all(|l| h.at(l) == hi);
    let cond3 = j < i + 2 || !(1..=n).any(|l| (i..=j - 2).contains(&h.at(l)));
    if !(cond1 && cond2 && cond3) {
        return Err(Error::RelationConditions(format!("{h} at (i={i}, j={j})")));
    }
    let mut v0 = h.values().to_vec();
    let mut v2 = h.values().to_vec();
    for l in i..j {
        v0[l - 1] -= 1;
    }
    for l in i..j - 1 {
        v2[l - 1] -= 1;
    }
    let h0 = Hess::from_values(v0)?;
    let h2 = Hess::from_values(v2)?;
    let c2 = QRat::from_poly(q_int(j - i));
    let c0 = &QRat::one() - &c2;
    two_term_identity(h, &h2, &c2, &h0, &c0)
}

/// Checks `f(h1) = [h(i)-a] f(h2) + (1 - [h(i)-a]) f(h0)` where `h0`, `h2`
/// lower `h(i)` to `a` and `a+1`.
pub fn verify_relation_basic_dual(h: &Hess, i: usize, a: usize) -> Result<bool> {
    let n = h.n();
    if !(1 <= i && i <= n) {
        return Err(Error::Precondition(format!("need 1 <= i <= n, got i={i}")));
    }
    let hi = h.at(i);
    let cond1 = if i == 1 { h.at(1) > 1 } else { h.at(i - 1) < hi };
    let cond2 = 1 <= a && a < hi && (a + 1..=hi).all(|l| h.at(l) == h.at(hi));
    if !(cond1 && cond2) {
        return Err(Error::RelationConditions(format!("{h} at (i={i}, a={a})")));
    }
    let mut v0 = h.values().to_vec();
    let mut v2 = h.values().to_vec();
    v0[i - 1] = a;
    v2[i - 1] = a + 1;
    let h0 = Hess::from_values(v0)
        .map_err(|e| Error::RelationConditions(format!("h0 is not a Hessenberg function: {e}")))?;
    let h2 = Hess::from_values(v2)
        .map_err(|e| Error::RelationConditions(format!("h2 is not a Hessenberg function: {e}")))?;
    let c2 = QRat::from_poly(q_int(hi - a));
    let c0 = &QRat::one() - &c2;
    two_term_identity(h, &h2, &c2, &h0, &c0)
}

fn two_term_identity(h: &Hess, h2: &Hess, c2: &QRat, h0: &Hess, c0: &QRat) -> Result<bool> {
    let lhs = csf_e(h)?;
    let rhs = csf_e(h2)?.scale(c2).checked_add(&csf_e(h0)?.scale(c0))?;
    Ok(lhs == rhs)
}

/// The `h_k`, `0 <= k <= a`, of the q-Chu-Vandermonde generalization.
pub fn chu_vandermonde_family(h: &Hess, i: usize, j: usize, a: usize, b: usize) -> Result<Vec<Hess>> {
    let n = h.n();
    if !(1 <= i && i < j && j <= n && a >= 1 && b >= 1) {
        return Err(Error::Precondition(format!("bad indices i={i}, j={j}, a={a}, b={b}")));
    }
    let hi = h.at(i);
    let cond1 = if i == 1 { h.at(1) > a } else { h.at(i - 1) + a <= hi };
    let cond2 = j - 1 < hi && (i..j).all(|l| h.at(l) == hi) && hi < h.at(j);
    let cond3 = j < i + 2 || !(1..=n).any(|l| (i..=j - 2).contains(&h.at(l)));
    // With j - i > a + b every right-hand coefficient vanishes.
    let cond4 = j - i <= a + b
        && b <= h.at(j) - hi
        && hi >= a
        && (hi + 1 - a..=hi + b).all(|l| h.at(l) == h.at(hi));
    if !(cond1 && cond2 && cond3 && cond4) {
        return Err(Error::RelationConditions(format!("{h} at (i={i}, j={j}, a={a}, b={b})")));
    }
    (0..=a)
        .map(|k| {
            let mut v = h.values().to_vec();
            for l in i..=j - 1 {
                if l + k < j {
                    v[l - 1] -= a;
                } else {
                    v[l - 1] += b;
                }
            }
            Hess::from_values(v).map_err(|e| {
                Error::RelationConditions(format!("h_{k} is not a Hessenberg function: {e}"))
            })
        })
        .collect()
}

/// Coefficients of the q-Chu-Vandermonde relation
/// `C(a+b, a) f(h) = sum_k q^((a-k)(l-k)) C(a+b-l, a-k) C(l, k) f(h_k)`, `l = j-i`.
pub fn chu_vandermonde_coeffs(l: usize, a: usize, b: usize) -> Vec<QPoly> {
    (0..=a)
        .map(|k| {
            if k > l || a + b < l {
                return QPoly::zero();
            }
            let top = a + b - l;
            let shift = (a - k) * (l - k);
            (&q_binomial(top, a - k) * &q_binomial(l, k)).shift(shift)
        })
        .collect()
}

pub fn verify_chu_vandermonde(h: &Hess, i: usize, j: usize, a: usize, b: usize) -> Result<bool> {
    let family = chu_vandermonde_family(h, i, j, a, b)?;
    let coeffs = chu_vandermonde_coeffs(j - i, a, b);
    let lhs = csf_e(h)?.scale(&QRat::from_poly(q_binomial(a + b, a)));
    let mut rhs = SymFunc::zero(h.n(), Basis::E);
    for (hk, c) in family.iter().zip(&coeffs) {
        if !c.is_zero() {
            rhs = rhs.checked_add(&csf_e(hk)?.scale(&QRat::from_poly(c.clone())))?;
        }
    }
    Ok(lhs == rhs)
}
