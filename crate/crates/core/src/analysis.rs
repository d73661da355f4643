//! Shape of coefficient polynomials: palindromicity, unimodality,
//! log-concavity and synchronization, closed formulas for paths and
//! lollipops, and the exhaustive scan over all Hessenberg functions of a size.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dyck::{enumerate, Hess, Partition};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::qpoly::{q_factorial, q_int};
use crate::symfunc::Basis;
use crate::{QPoly, QRat};

/// Largest size accepted by [`scan`].
pub const MAX_SCAN: usize = 12;

/// `c_i = c_{2k-i}` for every `i`, coefficients outside `0..=2k` being zero.
pub fn is_palindromic(p: &QPoly, two_k: usize) -> bool {
    if p.is_zero() {
        return true;
    }
    if p.degree().unwrap() > two_k {
        return false;
    }
    (0..=two_k).all(|i| p.coeff(i) == p.coeff(two_k - i))
}

/// Weakly increasing then weakly decreasing coefficient sequence.
pub fn is_unimodal(p: &QPoly) -> bool {
    let c = p.coeffs();
    let mut k = 0;
    while k + 1 < c.len() && c[k] <= c[k + 1] {
        k += 1;
    }
    while k + 1 < c.len() && c[k] >= c[k + 1] {
        k += 1;
    }
    k + 1 >= c.len()
}

/// Nonnegative coefficients, no zero strictly between two nonzero ones, and
/// `a_j^2 >= a_{j-1} a_{j+1}`. The zero polynomial passes vacuously.
pub fn is_log_concave(p: &QPoly) -> bool {
    if p.is_zero() {
        return true;
    }
    if !p.is_nonnegative() {
        return false;
    }
    let lo = p.valuation().unwrap();
    let c = &p.coeffs()[lo..];
    if c.iter().any(|x| x.is_zero()) {
        return false;
    }
    c.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// `a_k b_k >= a_{k+1} b_{k-1}` and `a_k b_k >= a_{k-1} b_{k+1}` for all
/// `k >= 1`; both inputs must be log-concave.
pub fn are_synchronized(p1: &QPoly, p2: &QPoly) -> Result<bool> {
    if !is_log_concave(p1) || !is_log_concave(p2) {
        return Err(Error::Precondition("synchronization needs log-concave inputs".into()));
    }
    let top = p1.coeffs().len().max(p2.coeffs().len()) + 1;
    Ok((1..=top).all(|k| {
        let mid = p1.coeff(k) * p2.coeff(k);
        mid >= p1.coeff(k + 1) * p2.coeff(k - 1) && mid >= p1.coeff(k - 1) * p2.coeff(k + 1)
    }))
}

/// The numerator of a coefficient whose denominator is a constant, with its
/// sign normalized so the leading coefficient is positive.
pub fn normalized_numerator(c: &QRat) -> Option<QPoly> {
    if !c.denom().is_constant() {
        return None;
    }
    let num = c.numer();
    Some(if num.leading().is_some_and(|l| l.is_negative()) { -num } else { num.clone() })
}

/// `sum over distinct rearrangements alpha of parts of [alpha_1] prod_{i>=2} [alpha_i - 1]`.
fn rearrangement_sum(parts: &[usize]) -> QPoly {
    if parts.is_empty() {
        return QPoly::one();
    }
    let perms: BTreeSet<Vec<usize>> = parts.iter().copied().permutations(parts.len()).collect();
    perms.iter().fold(QPoly::zero(), |acc, a| {
        let term = a[1..].iter().fold(q_int(a[0]), |t, &x| &t * &q_int(x - 1));
        &acc + &term
    })
}

/// The e-coefficient of `e_lambda` in `csf_q` of the path `(2, 3, ..., n, n)`:
/// `q^{l-1}` times the sum over distinct rearrangements `alpha` of `lambda`
/// of `[alpha_1]_q prod_{i>=2} [alpha_i - 1]_q`.
pub fn path_coefficient(lambda: &Partition) -> QPoly {
    if lambda.is_empty() {
        return QPoly::one();
    }
    rearrangement_sum(lambda.parts()).shift(lambda.len() - 1)
}

/// The lollipop `(2, 3, ..., n+1, n+m, ..., n+m)`: a path on `n + 1` vertices
/// glued to a clique on `m`.
pub fn lollipop_hess(n: usize, m: usize) -> Result<Hess> {
    if m == 0 {
        return Err(Error::Precondition("lollipop needs m >= 1".into()));
    }
    Hess::from_values((1..=n + m).map(|i| if i <= n { i + 1 } else { n + m }).collect())
}

/// The e-coefficient of `e_lambda` in `csf_q` of the lollipop, for `m > n`.
pub fn lollipop_coefficient(n: usize, m: usize, lambda: &Partition) -> Result<QPoly> {
    if m <= n {
        return Err(Error::Precondition(format!("lollipop formula needs m > n, got n={n}, m={m}")));
    }
    if lambda.weight() != n + m {
        return Err(Error::DegreeMismatch { expected: n + m, found: lambda.weight() });
    }
    let l1 = lambda.first();
    if l1 == n + m {
        return Ok(&q_int(n + m) * &q_factorial(m - 1));
    }
    if l1 < m {
        return Ok(QPoly::zero());
    }
    let tail = rearrangement_sum(&lambda.parts()[1..]);
    Ok((&(&q_factorial(m - 1) * &q_int(l1 - 1)) * &tail).shift(lambda.len() - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Palindromic,
    Unimodal,
    LogConcave,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Palindromic => "palindromic",
            Property::Unimodal => "unimodal",
            Property::LogConcave => "log-concave",
        })
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "palindromic" => Ok(Property::Palindromic),
            "unimodal" => Ok(Property::Unimodal),
            "log-concave" => Ok(Property::LogConcave),
            other => Err(Error::Precondition(format!("unknown property {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffFlags {
    pub partition: Partition,
    pub zero: bool,
    /// Constant denominator, so the numerator can be examined.
    pub polynomial: bool,
    pub palindromic: bool,
    pub unimodal: bool,
    pub log_concave: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub partition: Partition,
    pub property: Property,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub h: Hess,
    pub basis: Basis,
    /// Twice the palindromic center, the number of edges of `h`.
    pub two_center: usize,
    pub coeffs: Vec<CoeffFlags>,
    pub failures: Vec<Failure>,
}

impl ShapeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every coefficient of `csf_q(h)` in `basis`.
pub fn shape_report(engine: &Engine, h: &Hess, basis: Basis, property: Property) -> Result<ShapeReport> {
    let f = engine.csf_e(h)?.convert(basis);
    let two_center = h.area();
    let mut coeffs = Vec::new();
    let mut failures = Vec::new();
    for (p, c) in f.terms() {
        let flags = match normalized_numerator(c) {
            Some(num) => CoeffFlags {
                partition: p.clone(),
                zero: num.is_zero(),
                polynomial: true,
                palindromic: is_palindromic(&num, two_center),
                unimodal: is_unimodal(&num),
                log_concave: is_log_concave(&num),
            },
            None => CoeffFlags {
                partition: p.clone(),
                zero: false,
                polynomial: false,
                palindromic: false,
                unimodal: false,
                log_concave: false,
            },
        };
        let ok = match property {
            Property::Palindromic => flags.palindromic,
            Property::Unimodal => flags.unimodal,
            Property::LogConcave => flags.log_concave,
        };
        if !ok {
            failures.push(Failure { partition: p.clone(), property });
        }
        coeffs.push(flags);
    }
    Ok(ShapeReport { h: h.clone(), basis, two_center, coeffs, failures })
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub n: usize,
    pub basis: Basis,
    pub property: Property,
    pub irreducible_only: bool,
    pub chunk: usize,
}

impl ScanOptions {
    pub fn new(n: usize, basis: Basis, property: Property) -> Self {
        ScanOptions { n, basis, property, irreducible_only: false, chunk: 512 }
    }
}

/// Runs the checks over every `h` of size `n` in lexicographic order, handing
/// each report to `sink` as soon as its chunk is done. Work inside a chunk is
/// parallel; the order of reports is fixed.
pub fn scan_with(engine: &Engine, opts: &ScanOptions, mut sink: impl FnMut(ShapeReport) -> Result<()>) -> Result<()> {
    if !(1..=MAX_SCAN).contains(&opts.n) {
        return Err(Error::OutOfRange { what: "n", value: opts.n, min: 1, max: MAX_SCAN });
    }
    let all: Vec<Hess> = enumerate(opts.n)?
        .filter(|h| !opts.irreducible_only || h.is_irreducible())
        .collect();
    for chunk in all.chunks(opts.chunk.max(1)) {
        let reports: Vec<Result<ShapeReport>> = chunk
            .par_iter()
            .map(|h| shape_report(engine, h, opts.basis, opts.property))
            .collect();
        for r in reports {
            sink(r?)?;
        }
    }
    Ok(())
}

pub fn scan(engine: &Engine, opts: &ScanOptions) -> Result<Vec<ShapeReport>> {
    let mut out = Vec::new();
    scan_with(engine, opts, |r| {
        out.push(r);
        Ok(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::csf_e;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn palindromes() {
        assert!(is_palindromic(&q_int(3), 2));
        assert!(is_palindromic(&q_int(3).shift(1), 4));
        assert!(!is_palindromic(&q_int(3), 3));
        assert!(is_palindromic(&p(&[0, 1]), 2));
        assert!(!is_palindromic(&p(&[1, 2]), 0));
    }

    #[test]
    fn unimodal_and_log_concave() {
        let a = p(&[1, 3, 2]);
        assert!(is_unimodal(&a) && is_log_concave(&a));
        let b = p(&[1, 3, 10, 10, 3, 1]);
        assert!(is_unimodal(&b));
        assert!(!is_log_concave(&b));
        let c = p(&[1, 0, 1]);
        assert!(!is_log_concave(&c));
        assert!(!is_unimodal(&c));
        assert!(is_log_concave(&QPoly::zero()));
        assert!(is_log_concave(&p(&[0, 0, 2, 3])));
        assert!(!is_log_concave(&p(&[1, -1])));
    }

    #[test]
    fn synchronization() {
        let x = &q_int(4) * &q_int(3);
        let y = &q_int(5) * &q_int(2);
        assert!(are_synchronized(&x, &y).unwrap());
        assert!(are_synchronized(&x, &x).unwrap());
        assert!(are_synchronized(&p(&[1, 0, 1]), &x).is_err());
    }

    #[test]
    fn q_integer_pairs_are_synchronized() {
        for n in 0..=10 {
            for m in 1..=10 {
                let x = &q_int(n) * &q_int(m);
                let y = &q_int(n + 1) * &q_int(m - 1);
                assert!(are_synchronized(&x, &y).unwrap(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn path_formula_small() {
        assert_eq!(path_coefficient(&part(&[2, 1])), p(&[0, 1]));
        for n in 1..=6 {
            assert_eq!(path_coefficient(&part(&[n])), q_int(n));
        }
        for n in 1..=6 {
            let f = csf_e(&Hess::path(n)).unwrap();
            for lam in Partition::all(n) {
                let want = f.coefficient(&lam).unwrap().is_polynomial().unwrap();
                assert_eq!(path_coefficient(&lam), want, "{lam}");
            }
        }
    }

    #[test]
    fn summing_over_parts_overcounts_repeats() {
        // Summing over the index i instead of over distinct rearrangements
        // counts (2,2) twice.
        let over_parts = |lam: &[usize]| -> QPoly {
            let mut acc = QPoly::zero();
            for i in 0..lam.len() {
                let mut t = q_int(lam[i]);
                for (j, &x) in lam.iter().enumerate() {
                    if j != i {
                        t = &t * &q_int(x - 1);
                    }
                }
                acc = &acc + &t;
            }
            acc.shift(lam.len() - 1)
        };
        let lam = part(&[2, 2]);
        let truth = csf_e(&Hess::path(4)).unwrap().coefficient(&lam).unwrap().is_polynomial().unwrap();
        assert_eq!(truth, p(&[0, 1, 1]));
        assert_eq!(over_parts(&[2, 2]), p(&[0, 2, 2]));
        assert_eq!(path_coefficient(&lam), truth);
    }

    #[test]
    fn lollipops() {
        assert_eq!(lollipop_hess(2, 3).unwrap().values(), &[2, 3, 5, 5, 5]);
        let f = csf_e(&lollipop_hess(2, 3).unwrap()).unwrap();
        for lam in Partition::all(5) {
            let want = f.coefficient(&lam).unwrap().is_polynomial().unwrap();
            assert_eq!(lollipop_coefficient(2, 3, &lam).unwrap(), want, "{lam}");
        }
        assert!(lollipop_coefficient(3, 3, &part(&[6])).is_err());
        assert_eq!(lollipop_coefficient(1, 4, &part(&[3, 2])).unwrap(), QPoly::zero());
    }

    #[test]
    fn counterexample_power_sum() {
        let engine = Engine::new();
        let h = Hess::from_values(vec![3, 4, 5, 5, 5]).unwrap();
        let r = shape_report(&engine, &h, Basis::P, Property::LogConcave).unwrap();
        assert!(r.failures.iter().any(|f| f.partition == part(&[1, 1, 1, 1, 1])));
    }

    #[test]
    fn small_scan_passes() {
        let engine = Engine::new();
        for n in 1..=6 {
            let reports = scan(&engine, &ScanOptions::new(n, Basis::E, Property::LogConcave)).unwrap();
            assert_eq!(reports.len() as u64, crate::dyck::catalan(n));
            assert!(reports.iter().all(|r| r.passed()));
            for r in &reports {
                for c in &r.coeffs {
                    assert!(!c.log_concave || c.unimodal);
                    assert!(c.palindromic, "{} {}", r.h, c.partition);
                }
            }
        }
        assert!(scan(&engine, &ScanOptions::new(13, Basis::E, Property::LogConcave)).is_err());
    }

    fn arb_log_concave() -> impl Strategy<Value = QPoly> {
        prop::collection::vec(1usize..6, 1..4).prop_map(|v| v.iter().fold(QPoly::one(), |acc, &k| &acc * &q_int(k)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn products_of_log_concave_stay_log_concave(
            a in prop::collection::vec(1i64..20, 1..6),
            b in prop::collection::vec(1i64..20, 1..6),
        ) {
            let mut x = p(&a);
            let mut y = p(&b);
            // samples that are not log-concave are swapped for a q-integer
            if !is_log_concave(&x) { x = q_int(a.len()); }
            if !is_log_concave(&y) { y = q_int(b.len()); }
            prop_assert!(is_log_concave(&(&x * &y)));
        }

        #[test]
        fn pairwise_synchronized_sums_are_log_concave(
            base in arb_log_concave(),
            pairs in prop::collection::vec((1usize..7, 1usize..7), 1..4),
        ) {
            let family: Vec<QPoly> = pairs.iter().map(|&(n, m)| &base * &(&q_int(n) * &q_int(m))).collect();
            let all_sync = family.iter().tuple_combinations().all(|(x, y)| are_synchronized(x, y).unwrap());
            if all_sync {
                let sum = family.iter().fold(QPoly::zero(), |acc, x| &acc + x);
                prop_assert!(is_log_concave(&sum));
            }
        }
    }
}
