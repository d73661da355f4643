//! Brute-force ground truth: the chromatic quasisymmetric function from proper
//! colorings, and the q-chromatic polynomial.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyck::{Hess, Partition};
use crate::error::{Error, Result};
use crate::qpoly::{q_factorial, q_int};
use crate::symfunc::{Basis, SymFunc};
use crate::{QPoly, QRat};

/// Largest `n` the coloring enumeration accepts.
pub const MAX_ORACLE: usize = 8;

/// `csf_q(h)` in the monomial basis, from all proper colorings with `n` colors.
pub fn csf_oracle(h: &Hess) -> Result<SymFunc> {
    csf_oracle_with_colors(h, h.n())
}

/// As [`csf_oracle`] with `colors` available colors. The result holds the
/// coefficients of `m_mu` for every `mu` with at most `colors` parts.
pub fn csf_oracle_with_colors(h: &Hess, colors: usize) -> Result<SymFunc> {
    let n = h.n();
    if !(1..=MAX_ORACLE).contains(&n) {
        return Err(Error::OutOfRange { what: "n", value: n, min: 1, max: MAX_ORACLE });
    }
    if colors == 0 || colors > MAX_ORACLE + 1 {
        return Err(Error::OutOfRange { what: "colors", value: colors, min: 1, max: MAX_ORACLE + 1 });
    }
    // lower[i] = smallest j < i adjacent to i (an interval up to i - 1)
    let lower: Vec<usize> = (0..n)
        .map(|i| (0..i).find(|&j| h.values()[j] > i).unwrap_or(i))
        .collect();
    let buckets: Vec<BTreeMap<Vec<usize>, Vec<u64>>> = (0..colors)
        .into_par_iter()
        .map(|c0| {
            let mut st = Search {
                n,
                colors,
                lower: &lower,
                kappa: vec![0; n],
                counts: vec![0; colors],
                out: BTreeMap::new(),
            };
            st.kappa[0] = c0;
            st.counts[c0] += 1;
            st.go(1, 0);
            st.out
        })
        .collect();
    let mut merged: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
    for b in buckets {
        for (k, v) in b {
            let e = merged.entry(k).or_default();
            if e.len() < v.len() {
                e.resize(v.len(), 0);
            }
            for (x, y) in e.iter_mut().zip(v) {
                *x += y;
            }
        }
    }
    let terms = merged.into_iter().map(|(counts, poly)| {
        let coeffs: Vec<i64> = poly.into_iter().map(|c| c as i64).collect();
        (Partition::new(counts), QRat::from_poly(QPoly::from_i64s(&coeffs)))
    });
    SymFunc::from_terms(n, Basis::M, terms)
}

struct Search<'a> {
    n: usize,
    colors: usize,
    lower: &'a [usize],
    kappa: Vec<usize>,
    counts: Vec<usize>,
    out: BTreeMap<Vec<usize>, Vec<u64>>,
}

impl Search<'_> {
    fn go(&mut self, v: usize, asc: usize) {
        if v == self.n {
            // Only the monomial x^mu with weakly decreasing exponents is kept:
            // its coefficient is the coefficient of m_mu.
            if self.counts.windows(2).all(|w| w[0] >= w[1]) {
                let e = self.out.entry(self.counts.clone()).or_default();
                if e.len() <= asc {
                    e.resize(asc + 1, 0);
                }
                e[asc] += 1;
            }
            return;
        }
        'color: for c in 0..self.colors {
            let mut extra = 0;
            for u in self.lower[v]..v {
                let cu = self.kappa[u];
                if cu == c {
                    continue 'color;
                }
                if cu < c {
                    extra += 1;
                }
            }
            self.kappa[v] = c;
            self.counts[c] += 1;
            self.go(v + 1, asc + extra);
            self.counts[c] -= 1;
        }
    }
}

/// Polynomial in `x` with coefficients in `Q(q)`, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct XPoly {
    coeffs: Vec<QRat>,
}

impl XPoly {
    pub fn new(mut coeffs: Vec<QRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPoly::new(vec![QRat::one()])
    }

    /// `x - c`
    pub fn linear(c: QRat) -> Self {
        XPoly::new(vec![-c, QRat::one()])
    }

    pub fn coeffs(&self) -> &[QRat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = QRat::zero();
        XPoly::new(
            (0..len)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return XPoly::zero();
        }
        let mut out = vec![QRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                out[a + b] = &out[a + b] + &(x * y);
            }
        }
        XPoly::new(out)
    }

    pub fn scale(&self, c: &QRat) -> XPoly {
        XPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &QRat) -> QRat {
        self.coeffs.iter().rev().fold(QRat::zero(), |acc, c| &(&acc * x) + c)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct XPolyWire {
    xcoeffs: Vec<QRat>,
}

impl Serialize for XPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        XPolyWire { xcoeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for XPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(XPoly::new(XPolyWire::deserialize(d)?.xcoeffs))
    }
}

/// `prod_i (x - [h(i) - i]_q)`.
pub fn chromatic_poly_q(h: &Hess) -> XPoly {
    h.area_sequence()
        .into_iter()
        .fold(XPoly::one(), |acc, a| acc.mul(&XPoly::linear(QRat::from_poly(q_int(a)))))
}

/// `alpha(e_k) = prod_{j<k} (x - [j]_q) / k!_q`.
pub fn alpha_e(k: usize) -> XPoly {
    let num = (0..k).fold(XPoly::one(), |acc, j| acc.mul(&XPoly::linear(QRat::from_poly(q_int(j)))));
    num.scale(&QRat::from_poly(q_factorial(k)).inv().expect("q-factorial is nonzero"))
}

/// The ring homomorphism `alpha` applied to an e-basis symmetric function.
pub fn alpha_apply(f: &SymFunc) -> Result<XPoly> {
    if f.basis() != Basis::E {
        return Err(Error::Precondition(format!("alpha needs e-basis input, got {}", f.basis())));
    }
    let mut cache: BTreeMap<usize, XPoly> = BTreeMap::new();
    let mut acc = XPoly::zero();
    for (p, c) in f.terms() {
        let mut term = XPoly::one();
        for &k in p.parts() {
            let a = cache.entry(k).or_insert_with(|| alpha_e(k));
            term = term.mul(a);
        }
        acc = acc.add(&term.scale(c));
    }
    Ok(acc)
}
