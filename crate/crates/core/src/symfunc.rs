//! Homogeneous symmetric functions over `Q(q)` in the monomial, elementary,
//! Schur and power-sum bases.
//!
//! Conversions go through the monomial basis. The matrix expressing each basis
//! in monomials is computed by direct counting and cached per degree together
//! with its inverse over `Q`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dyck::Partition;
use crate::error::{Error, Result};
use crate::{QPoly, QRat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    M,
    E,
    S,
    P,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::M, Basis::E, Basis::S, Basis::P];

    pub fn tag(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::S => "s",
            Basis::P => "p",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(Basis::M),
            "e" => Ok(Basis::E),
            "s" => Ok(Basis::S),
            "p" => Ok(Basis::P),
            other => Err(Error::Precondition(format!("unknown basis {other:?}"))),
        }
    }
}

/// A degree-`n` symmetric function stored in one basis. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    degree: usize,
    basis: Basis,
    coeffs: BTreeMap<Partition, QRat>,
}

impl SymFunc {
    pub fn zero(degree: usize, basis: Basis) -> Self {
        SymFunc { degree, basis, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(
        degree: usize,
        basis: Basis,
        terms: impl IntoIterator<Item = (Partition, QRat)>,
    ) -> Result<Self> {
        let mut f = SymFunc::zero(degree, basis);
        for (p, c) in terms {
            f.add_term(p, c)?;
        }
        Ok(f)
    }

    /// The single basis element `b_lambda`.
    pub fn basis_element(basis: Basis, p: Partition) -> Self {
        let degree = p.weight();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(p, QRat::one());
        SymFunc { degree, basis, coeffs }
    }

    pub fn add_term(&mut self, p: Partition, c: QRat) -> Result<()> {
        if p.weight() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: p.weight() });
        }
        if c.is_zero() {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Nonzero terms in partition order, `(n)` first.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &QRat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, p: &Partition) -> Result<QRat> {
        if p.weight() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: p.weight() });
        }
        Ok(self.coeffs.get(p).cloned().unwrap_or_else(QRat::zero))
    }

    /// Coefficients as polynomials, failing on the first one outside `Z[q]`.
    pub fn polynomial_coeffs(&self) -> Result<Vec<(Partition, QPoly)>> {
        self.coeffs
            .iter()
            .map(|(p, c)| match c.is_polynomial() {
                Some(poly) => Ok((p.clone(), poly)),
                None => Err(Error::NotPolynomial { partition: p.to_string(), value: c.to_string() }),
            })
            .collect()
    }

    pub fn scale(&self, c: &QRat) -> SymFunc {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(p, x)| (p.clone(), x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        SymFunc { degree: self.degree, basis: self.basis, coeffs }
    }

    pub fn checked_add(&self, other: &SymFunc) -> Result<SymFunc> {
        if self.basis != other.basis {
            return Err(Error::Precondition(format!(
                "adding {} and {} basis values",
                self.basis, other.basis
            )));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        if !self.is_zero() {
            for (p, c) in &other.coeffs {
                out.add_term(p.clone(), c.clone())?;
            }
        }
        Ok(out)
    }

    /// Product in the ring of symmetric functions, for the multiplicative
    /// bases `e` and `p`.
    pub fn mul_multiplicative(&self, other: &SymFunc) -> Result<SymFunc> {
        if self.basis != other.basis || !matches!(self.basis, Basis::E | Basis::P) {
            return Err(Error::Precondition("product needs two e-basis or two p-basis values".into()));
        }
        let mut out = SymFunc::zero(self.degree + other.degree, self.basis);
        for (p1, c1) in &self.coeffs {
            for (p2, c2) in &other.coeffs {
                out.add_term(p1.union(p2), c1 * c2)?;
            }
        }
        Ok(out)
    }

    pub fn convert(&self, target: Basis) -> SymFunc {
        if target == self.basis {
            return self.clone();
        }
        let n = self.degree;
        let parts = partitions(n);
        let index = partition_index(n);
        // Source to monomial coordinates.
        let mut mono: Vec<QRat> = vec![QRat::zero(); parts.len()];
        if self.basis == Basis::M {
            for (p, c) in &self.coeffs {
                mono[index[p]] = c.clone();
            }
        } else {
            let t = transition(self.basis, n);
            for (p, c) in &self.coeffs {
                let row = &t.to_m[index[p]];
                for (k, entry) in row.iter().enumerate() {
                    if !entry.is_zero() {
                        mono[k] = &mono[k] + &c.scale_ratio(entry, &BigInt::one()).unwrap();
                    }
                }
            }
        }
        if target == Basis::M {
            return SymFunc::from_dense(n, Basis::M, &parts, mono);
        }
        let t = transition(target, n);
        let mut out = vec![QRat::zero(); parts.len()];
        for (k, c) in mono.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, entry) in t.from_m[k].iter().enumerate() {
                if !entry.is_zero() {
                    let term = c.scale_ratio(entry.numer(), entry.denom()).unwrap();
                    out[l] = &out[l] + &term;
                }
            }
        }
        SymFunc::from_dense(n, target, &parts, out)
    }

    fn from_dense(degree: usize, basis: Basis, parts: &[Partition], values: Vec<QRat>) -> SymFunc {
        let coeffs = parts
            .iter()
            .cloned()
            .zip(values)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SymFunc { degree, basis, coeffs }
    }

    /// Value at `x_1 = ... = x_k = 1`, all other variables zero, computed
    /// through the monomial expansion.
    pub fn principal_specialization_one(&self, k: usize) -> QRat {
        let m = self.convert(Basis::M);
        let mut acc = QRat::zero();
        for (p, c) in m.terms() {
            let count = monomial_count(p, k);
            if !count.is_zero() {
                acc = &acc + &c.scale_ratio(&count, &BigInt::one()).unwrap();
            }
        }
        acc
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){}{p}", self.basis)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFunc[{}; deg {}]({self})", self.basis, self.degree)
    }
}

/// Number of distinct monomials of type `p` in `k` variables.
fn monomial_count(p: &Partition, k: usize) -> BigInt {
    let l = p.len();
    if l > k {
        return BigInt::zero();
    }
    // k! / ((k - l)! * prod mult_i!)
    let mut num = BigInt::one();
    for x in (k - l + 1)..=k {
        num *= x;
    }
    let mut mult: HashMap<usize, usize> = HashMap::new();
    for &x in p.parts() {
        *mult.entry(x).or_default() += 1;
    }
    for &m in mult.values() {
        for x in 1..=m {
            num /= x;
        }
    }
    num
}

#[derive(Serialize, Deserialize)]
struct SymFuncTerm {
    partition: Partition,
    num: QPoly,
    den: QPoly,
}

#[derive(Serialize, Deserialize)]
struct SymFuncWire {
    degree: usize,
    basis: Basis,
    coeffs: Vec<SymFuncTerm>,
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymFuncWire {
            degree: self.degree,
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, c)| SymFuncTerm {
                    partition: p.clone(),
                    num: c.numer().clone(),
                    den: c.denom().clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = SymFuncWire::deserialize(d)?;
        let mut f = SymFunc::zero(w.degree, w.basis);
        for t in w.coeffs {
            let c = QRat::new(t.num, t.den).map_err(D::Error::custom)?;
            f.add_term(t.partition, c).map_err(D::Error::custom)?;
        }
        Ok(f)
    }
}

/// Transition data for one basis in one degree: `to_m[l][k]` is the
/// coefficient of `m_{mu_k}` in `b_{lambda_l}`; `from_m` is its inverse.
struct Transition {
    to_m: Vec<Vec<BigInt>>,
    from_m: Vec<Vec<BigRational>>,
}

fn transition_cache() -> &'static DashMap<(Basis, usize), Arc<Transition>> {
    static CACHE: OnceLock<DashMap<(Basis, usize), Arc<Transition>>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

fn partition_cache() -> &'static DashMap<usize, Arc<Vec<Partition>>> {
    static CACHE: OnceLock<DashMap<usize, Arc<Vec<Partition>>>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

fn partitions(n: usize) -> Arc<Vec<Partition>> {
    partition_cache()
        .entry(n)
        .or_insert_with(|| Arc::new(Partition::all(n)))
        .clone()
}

fn partition_index(n: usize) -> HashMap<Partition, usize> {
    partitions(n).iter().cloned().enumerate().map(|(k, p)| (p, k)).collect()
}

fn transition(basis: Basis, n: usize) -> Arc<Transition> {
    assert!(basis != Basis::M);
    if let Some(t) = transition_cache().get(&(basis, n)) {
        return t.clone();
    }
    let parts = partitions(n);
    let to_m: Vec<Vec<BigInt>> = parts
        .iter()
        .map(|lam| {
            let row = expand_in_monomials(basis, lam, n);
            parts
                .iter()
                .map(|mu| row.get(mu).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    let from_m = invert(&to_m).expect("transition matrix of a basis is invertible");
    let t = Arc::new(Transition { to_m, from_m });
    transition_cache().entry((basis, n)).or_insert(t).clone()
}

fn invert(a: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v: Vec<BigRational> = row.iter().map(|x| BigRational::from(x.clone())).collect();
            v.extend((0..n).map(|c| if c == r { BigRational::one() } else { BigRational::zero() }));
            v
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Monomial expansion of a single basis element `b_lambda`, restricted to
/// monomial types with at most `num_vars` parts.
pub fn expand_in_monomials(basis: Basis, lambda: &Partition, num_vars: usize) -> BTreeMap<Partition, BigInt> {
    let n = lambda.weight();
    let mut out = BTreeMap::new();
    for mu in Partition::all(n) {
        if mu.len() > num_vars {
            continue;
        }
        let c = match basis {
            Basis::M => {
                if &mu == lambda {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
            Basis::E => zero_one_matrices(lambda.parts(), mu.parts()),
            Basis::S => kostka(lambda, &mu),
            Basis::P => part_assignments(lambda.parts(), mu.parts()),
        };
        if !c.is_zero() {
            out.insert(mu, c);
        }
    }
    out
}

/// Number of 0-1 matrices with row sums `rows` and column sums `cols`.
fn zero_one_matrices(rows: &[usize], cols: &[usize]) -> BigInt {
    fn rec(rows: &[usize], cols: Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), BigInt>) -> BigInt {
        let Some((&r, rest)) = rows.split_first() else {
            return if cols.iter().all(|&c| c == 0) { BigInt::one() } else { BigInt::zero() };
        };
        let key = (rest.len(), cols.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        // Group columns by remaining sum; choose how many ones go in each group.
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &c in &cols {
            match groups.last_mut() {
                Some((v, k)) if *v == c => *k += 1,
                _ => groups.push((c, 1)),
            }
        }
        let mut total = BigInt::zero();
        let mut choice = vec![0usize; groups.len()];
        fn choose(
            g: usize,
            left: usize,
            groups: &[(usize, usize)],
            choice: &mut Vec<usize>,
            rest: &[usize],
            memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
            total: &mut BigInt,
        ) {
            if g == groups.len() {
                if left != 0 {
                    return;
                }
                let mut weight = BigInt::one();
                let mut next = Vec::new();
                for (&(v, k), &t) in groups.iter().zip(choice.iter()) {
                    weight *= binomial(k, t);
                    next.extend(std::iter::repeat_n(v.saturating_sub(1), t));
                    next.extend(std::iter::repeat_n(v, k - t));
                }
                next.sort_unstable_by(|a, b| b.cmp(a));
                let sub = rec(rest, next, memo);
                *total += weight * sub;
                return;
            }
            let (v, k) = groups[g];
            let max = if v == 0 { 0 } else { k.min(left) };
            for t in 0..=max {
                choice[g] = t;
                choose(g + 1, left - t, groups, choice, rest, memo, total);
            }
            choice[g] = 0;
        }
        choose(0, r, &groups, &mut choice, rest, memo, &mut total);
        memo.insert(key, total.clone());
        total
    }
    let mut cols = cols.to_vec();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    rec(rows, cols, &mut HashMap::new())
}

/// Number of maps from the parts of `parts` to the positions of `cols` whose
/// fibres sum to the column values.
fn part_assignments(parts: &[usize], cols: &[usize]) -> BigInt {
    fn rec(parts: &[usize], cols: Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), BigInt>) -> BigInt {
        let Some((&p, rest)) = parts.split_first() else {
            return if cols.iter().all(|&c| c == 0) { BigInt::one() } else { BigInt::zero() };
        };
        let key = (rest.len(), cols.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for k in 0..cols.len() {
            if cols[k] >= p {
                let mut next = cols.clone();
                next[k] -= p;
                next.sort_unstable_by(|a, b| b.cmp(a));
                total += rec(rest, next, memo);
            }
        }
        memo.insert(key, total.clone());
        total
    }
    let mut cols = cols.to_vec();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    rec(parts, cols, &mut HashMap::new())
}

/// Kostka number: semistandard tableaux of shape `lambda` and content `mu`,
/// counted by peeling horizontal strips for the largest entry.
fn kostka(lambda: &Partition, mu: &Partition) -> BigInt {
    fn rec(shape: Vec<usize>, content: &[usize], memo: &mut HashMap<(Vec<usize>, usize), BigInt>) -> BigInt {
        let Some((&last, rest)) = content.split_last() else {
            return if shape.iter().all(|&x| x == 0) { BigInt::one() } else { BigInt::zero() };
        };
        let key = (shape.clone(), content.len());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        let mut inner = vec![0usize; shape.len()];
        fn strips(
            row: usize,
            left: usize,
            shape: &[usize],
            inner: &mut Vec<usize>,
            rest: &[usize],
            memo: &mut HashMap<(Vec<usize>, usize), BigInt>,
            total: &mut BigInt,
        ) {
            if row == shape.len() {
                if left == 0 {
                    let mut next = inner.clone();
                    while next.last() == Some(&0) {
                        next.pop();
                    }
                    *total += rec(next, rest, memo);
                }
                return;
            }
            let below = shape.get(row + 1).copied().unwrap_or(0);
            let top = shape[row];
            for v in below..=top {
                let removed = top - v;
                if removed > left {
                    continue;
                }
                inner[row] = v;
                strips(row + 1, left - removed, shape, inner, rest, memo, total);
            }
        }
        strips(0, last, &shape, &mut inner, rest, memo, &mut total);
        memo.insert(key, total.clone());
        total
    }
    rec(lambda.parts().to_vec(), mu.parts(), &mut HashMap::new())
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Every coefficient is a polynomial with nonnegative integer coefficients.
pub fn is_positive(f: &SymFunc) -> bool {
    f.terms().all(|(_, c)| c.denom().is_one() && c.numer().is_nonnegative())
}
