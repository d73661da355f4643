//! Hessenberg functions, Dyck paths and partitions.
//!
//! A Hessenberg function `h: [n] -> [n]` is non-decreasing with `h(i) >= i`.
//! It encodes the indifference graph with edges `{i, j}`, `i < j <= h(i)`,
//! and the Dyck path with `h(i)` north steps before the `i`-th east step.
//! Indices in the public API are 1-based to match that convention.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest size accepted by [`enumerate`].
pub const MAX_ENUMERATE: usize = 14;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Hess {
    values: Vec<usize>,
}

impl Hess {
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        for (k, &v) in values.iter().enumerate() {
            let i = k + 1;
            if v < i {
                return Err(Error::InvalidHess { index: i, reason: format!("h({i}) = {v} < {i}") });
            }
            if v > n {
                return Err(Error::InvalidHess { index: i, reason: format!("h({i}) = {v} > n = {n}") });
            }
            if k > 0 && v < values[k - 1] {
                return Err(Error::InvalidHess {
                    index: i,
                    reason: format!("h({i}) = {v} < h({}) = {}", i - 1, values[k - 1]),
                });
            }
        }
        Ok(Hess { values })
    }

    pub fn empty() -> Self {
        Hess { values: Vec::new() }
    }

    /// The complete path `k_n`.
    pub fn complete(n: usize) -> Self {
        Hess { values: vec![n; n] }
    }

    /// The path graph `(2, 3, ..., n, n)`.
    pub fn path(n: usize) -> Self {
        Hess { values: (1..=n).map(|i| (i + 1).min(n)).collect() }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `h(i)` for `1 <= i <= n`, with `h(0) = 0` and `h(i) = n` past the end.
    pub fn at(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else if i > self.n() {
            self.n()
        } else {
            self.values[i - 1]
        }
    }

    pub fn to_word(&self) -> String {
        let mut w = String::with_capacity(2 * self.n());
        let mut prev = 0;
        for &v in &self.values {
            w.extend(std::iter::repeat_n('n', v - prev));
            w.push('e');
            prev = v;
        }
        w
    }

    pub fn from_word(word: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut north = 0usize;
        let mut east = 0usize;
        for (pos, ch) in word.chars().enumerate() {
            match ch {
                'n' | 'N' => north += 1,
                'e' | 'E' => {
                    east += 1;
                    if east > north {
                        return Err(Error::InvalidWord {
                            position: pos + 1,
                            reason: "path goes below the diagonal".into(),
                        });
                    }
                    values.push(north);
                }
                other => {
                    return Err(Error::InvalidWord {
                        position: pos + 1,
                        reason: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        if north != east {
            return Err(Error::InvalidWord {
                position: word.chars().count(),
                reason: format!("{north} north steps but {east} east steps"),
            });
        }
        Hess::from_values(values)
    }

    /// Concatenation of Dyck paths.
    pub fn product(&self, other: &Hess) -> Hess {
        let shift = self.n();
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|v| v + shift));
        Hess { values }
    }

    /// Reverses the Dyck word and swaps north with east steps.
    pub fn transpose(&self) -> Hess {
        let n = self.n();
        // h^t(i) = n + 1 - min{ j : h(j) >= n + 1 - i }
        let values = (1..=n)
            .map(|i| {
                let target = n + 1 - i;
                let j = self.values.iter().position(|&v| v >= target).unwrap() + 1;
                n + 1 - j
            })
            .collect();
        Hess { values }
    }

    /// Positions `k < n` where the path touches the diagonal, i.e. `h(k) = k`.
    fn cut_points(&self) -> Vec<usize> {
        (1..self.n()).filter(|&k| self.at(k) == k).collect()
    }

    /// Ranges `(start, end)` (1-based, inclusive) of the irreducible components.
    pub fn component_ranges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 1;
        for k in self.cut_points() {
            out.push((start, k));
            start = k + 1;
        }
        if self.n() > 0 {
            out.push((start, self.n()));
        }
        out
    }

    /// Restriction to `[start, end]`, re-indexed from 1.
    pub fn restrict(&self, start: usize, end: usize) -> Hess {
        let off = start - 1;
        Hess { values: (start..=end).map(|i| self.at(i) - off).collect() }
    }

    pub fn irreducible_components(&self) -> Vec<Hess> {
        self.component_ranges()
            .into_iter()
            .map(|(s, e)| self.restrict(s, e))
            .collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.n() > 0 && self.cut_points().is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.n() > 0 && self.values[0] == self.n()
    }

    /// Every irreducible component satisfies: for each `i`, either
    /// `h(h(i)+1) > h(h(i))` or `h(h(i))` is the component's top.
    pub fn is_aligned(&self) -> bool {
        self.first_misaligned().is_none()
    }

    /// Smallest `i` with `h(h(i)+1) = h(h(i))` and `h(h(i))` below the top
    /// of the irreducible component containing `i`.
    pub fn first_misaligned(&self) -> Option<usize> {
        for (s, t) in self.component_ranges() {
            for i in s..=t {
                let hi = self.at(i);
                let hhi = self.at(hi);
                if hhi < t && self.at(hi + 1) == hhi {
                    return Some(i);
                }
            }
        }
        None
    }

    /// `h(h(1)+1) = n`, reading `h(n+1)` as `n`.
    pub fn is_abelian(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.at(self.at(1) + 1) == self.n()
    }

    pub fn area_sequence(&self) -> Vec<usize> {
        self.values.iter().enumerate().map(|(k, &v)| v - (k + 1)).collect()
    }

    /// Total area `sum h(i) - i`, the number of edges.
    pub fn area(&self) -> usize {
        self.area_sequence().iter().sum()
    }

    /// The decreasingly sorted clique sizes when `h` is a product of
    /// complete paths.
    pub fn as_complete_product(&self) -> Option<Partition> {
        let mut parts = Vec::new();
        for (s, t) in self.component_ranges() {
            if self.at(s) != t {
                return None;
            }
            parts.push(t - s + 1);
        }
        Some(Partition::new(parts))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n()).flat_map(move |i| (i + 1..=self.at(i)).map(move |j| (i, j)))
    }
}

impl TryFrom<Vec<usize>> for Hess {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Hess::from_values(v)
    }
}

impl From<Hess> for Vec<usize> {
    fn from(h: Hess) -> Self {
        h.values
    }
}

impl FromStr for Hess {
    type Err = Error;
    /// Accepts `2,4,4,5,5`, `(2,4,4,5,5)` or a Dyck word such as `nnenee`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Hess::empty());
        }
        if t.chars().all(|c| matches!(c, 'n' | 'e' | 'N' | 'E')) {
            return Hess::from_word(t);
        }
        let values = t
            .split(',')
            .enumerate()
            .map(|(k, x)| {
                x.trim().parse::<usize>().map_err(|_| Error::InvalidHess {
                    index: k + 1,
                    reason: format!("not a nonnegative integer: {x:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Hess::from_values(values)
    }
}

impl fmt::Display for Hess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Hess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hess{self}")
    }
}

/// Integer partition with weakly decreasing positive parts.
///
/// Ordered reverse-lexicographically, so `(n)` sorts first and `(1^n)` last.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts decreasingly and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// `lambda_i`, 1-based, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.first();
        Partition((1..=first).map(|k| self.0.iter().filter(|&&p| p >= k).count()).collect())
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    /// The product of complete paths `k_{lambda_1} k_{lambda_2} ...`.
    pub fn complete_product(&self) -> Hess {
        self.0
            .iter()
            .fold(Hess::empty(), |acc, &p| acc.product(&Hess::complete(p)))
    }

    /// All partitions of `n`, in the crate's order (`(n)` first).
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=rem.min(max)).rev() {
                cur.push(k);
                rec(rem - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<usize>> for Partition {
    fn from(v: Vec<usize>) -> Self {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Partition::default());
        }
        let parts = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Precondition(format!("bad partition part {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Lexicographic iterator over all Hessenberg functions of size `n`.
pub struct HessIter {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for HessIter {
    type Item = Hess;

    fn next(&mut self) -> Option<Hess> {
        let cur = self.next.take()?;
        // Advance: find the rightmost position that can be incremented.
        let n = self.n;
        let mut succ = cur.clone();
        let mut k = n;
        let advanced = loop {
            if k == 0 {
                break false;
            }
            k -= 1;
            if succ[k] < n {
                succ[k] += 1;
                for t in k + 1..n {
                    succ[t] = succ[t - 1].max(t + 1);
                }
                break true;
            }
        };
        if advanced {
            self.next = Some(succ);
        }
        Some(Hess { values: cur })
    }
}

/// All Hessenberg functions of size `n` (Catalan(n) of them).
pub fn enumerate(n: usize) -> Result<HessIter> {
    if !(1..=MAX_ENUMERATE).contains(&n) {
        return Err(Error::OutOfRange { what: "n", value: n, min: 1, max: MAX_ENUMERATE });
    }
    Ok(HessIter { n, next: Some((1..=n).collect()) })
}

pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn h(v: &[usize]) -> Hess {
        Hess::from_values(v.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Hess::from_values(vec![2, 3, 3]).is_ok());
        assert!(Hess::from_values(vec![1, 3, 3]).is_ok());
        assert!(Hess::from_values(vec![2, 2, 3]).is_ok());
        match Hess::from_values(vec![3, 2, 3]) {
            Err(Error::InvalidHess { index, .. }) => assert_eq!(index, 2),
            other => panic!("{other:?}"),
        }
        assert!(Hess::from_values(vec![2, 1]).is_err());
        assert!(Hess::from_values(vec![1, 3]).is_err());
        assert!("3,2,1".parse::<Hess>().is_err());
    }

    #[test]
    fn words() {
        assert_eq!(h(&[2, 3, 3]).to_word(), "nnenee");
        assert_eq!(h(&[1, 2, 3, 4]).to_word(), "nenenene");
        assert_eq!(Hess::from_word("nnneee").unwrap(), Hess::complete(3));
        assert_eq!("nnenee".parse::<Hess>().unwrap(), h(&[2, 3, 3]));
        match Hess::from_word("neen") {
            Err(Error::InvalidWord { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(Hess::from_word("nne").is_err());
    }

    #[test]
    fn products() {
        assert_eq!(Hess::complete(2).product(&Hess::complete(3)), h(&[2, 2, 5, 5, 5]));
        assert_eq!(h(&[2, 3, 3]).product(&Hess::empty()), h(&[2, 3, 3]));
        assert_eq!(h(&[2, 2]).product(&h(&[1])), h(&[2, 2, 3]));
    }

    #[test]
    fn transposes() {
        assert_eq!(Hess::complete(4).transpose(), Hess::complete(4));
        assert_eq!(h(&[2, 3, 3]).transpose(), h(&[2, 3, 3]));
        assert_eq!(h(&[3, 3, 4, 5, 5]).transpose(), h(&[2, 3, 5, 5, 5]));
        // word-level definition
        for x in enumerate(6).unwrap() {
            let w: String = x
                .to_word()
                .chars()
                .rev()
                .map(|c| if c == 'n' { 'e' } else { 'n' })
                .collect();
            assert_eq!(Hess::from_word(&w).unwrap(), x.transpose());
        }
    }

    #[test]
    fn components() {
        assert_eq!(h(&[1, 2, 3]).irreducible_components(), vec![h(&[1]); 3]);
        assert_eq!(Hess::complete(5).irreducible_components(), vec![Hess::complete(5)]);
        assert_eq!(
            h(&[2, 2, 5, 5, 5]).irreducible_components(),
            vec![h(&[2, 2]), h(&[3, 3, 3])]
        );
    }

    #[test]
    fn alignment() {
        assert!(h(&[2, 3, 3]).is_aligned());
        assert!(!h(&[2, 4, 4, 5, 5]).is_aligned());
        assert!(Hess::complete(6).is_aligned());
        // aligned components make an aligned product
        assert!(h(&[2, 3, 3]).product(&h(&[2, 3, 3])).is_aligned());
    }

    #[test]
    fn abelian() {
        assert!(h(&[3, 5, 5, 6, 6, 6]).is_abelian());
        assert!(!h(&[2, 4, 4, 5, 5]).is_abelian());
        assert!(Hess::complete(4).is_abelian());
        assert!(h(&[2, 3, 3]).is_abelian());
    }

    #[test]
    fn areas() {
        assert_eq!(h(&[2, 4, 4, 5, 5]).area_sequence(), vec![1, 2, 1, 1, 0]);
        assert_eq!(h(&[3, 3, 4, 5, 5]).area_sequence(), vec![2, 1, 1, 1, 0]);
        assert_eq!(Hess::complete(4).area_sequence(), vec![3, 2, 1, 0]);
    }

    #[test]
    fn complete_products() {
        assert_eq!(Partition::new(vec![3, 1]).complete_product(), h(&[3, 3, 3, 4]));
        assert_eq!(h(&[2, 3, 3]).as_complete_product(), None);
        assert_eq!(h(&[2, 2, 5, 5, 5]).as_complete_product(), Some(Partition::new(vec![3, 2])));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(1).unwrap().count(), 1);
        assert_eq!(enumerate(3).unwrap().count(), 5);
        assert_eq!(enumerate(5).unwrap().count(), 42);
        assert!(enumerate(0).is_err());
        assert!(enumerate(15).is_err());
        for n in 1..=10 {
            let all: HashSet<Hess> = enumerate(n).unwrap().collect();
            assert_eq!(all.len() as u64, catalan(n));
        }
    }

    #[test]
    fn exhaustive_invariants() {
        for n in 1..=8 {
            for x in enumerate(n).unwrap() {
                assert_eq!(x.transpose().transpose(), x);
                let prod = x
                    .irreducible_components()
                    .iter()
                    .fold(Hess::empty(), |acc, c| acc.product(c));
                assert_eq!(prod, x);
                assert_eq!(Hess::from_word(&x.to_word()).unwrap(), x);
                if n <= 7 {
                    let mut a = x.area_sequence();
                    let mut b = x.transpose().area_sequence();
                    a.sort();
                    b.sort();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn partition_order_and_conjugate() {
        let all = Partition::all(4);
        let shown: Vec<String> = all.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(Partition::new(vec![4, 3, 2, 2]).conjugate(), Partition::new(vec![4, 4, 2, 1]));
        assert_eq!(Partition::all(10).len(), 42);
    }
}
