use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Coeff;

/// Dense univariate polynomial in `q` with exact integer coefficients.
///
/// `coeffs[k]` is the coefficient of `q^k`. The vector never ends in a zero,
/// so the zero polynomial is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from coefficients, constant term first.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| T::from_i64(c).expect("coefficient out of range"))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `q^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_at_one(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c)
    }

    /// Coefficient reversal `q^deg * p(1/q)`.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> T {
        let mut g = T::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        self.div_scalar_exact(&g)
    }

    /// Divides every coefficient by `c`; `c` must divide all of them.
    pub fn div_scalar_exact(&self, c: &T) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!(x.is_multiple_of(c));
                    x.clone() / c
                })
                .collect(),
        }
    }

    /// Pseudo-remainder of `self` by `divisor`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("pseudo_rem by zero polynomial");
        let lb = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (k, d) in divisor.coeffs.iter().enumerate() {
                r[shift + k] -= lr.clone() * d;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::from_coeffs(r)
    }

    /// Quotient and remainder when every division step is exact over the
    /// integers, otherwise `None`.
    pub fn div_rem_integral(&self, divisor: &Self) -> Option<(Self, Self)> {
        let db = divisor.degree().expect("division by zero polynomial");
        let lb = divisor.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); r.len() - db];
        while r.len() > db {
            let lr = r.last().unwrap().clone();
            let (qc, rem) = lr.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            let shift = r.len() - 1 - db;
            for (k, d) in divisor.coeffs.iter().enumerate() {
                r[shift + k] -= qc.clone() * d;
            }
            quot[shift] = qc;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Some((Self::from_coeffs(quot), Self::from_coeffs(r)))
    }

    /// `self / divisor` when the division is exact in `Z[q]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_one() {
            return Some(self.clone());
        }
        match self.div_rem_integral(divisor) {
            Some((quot, rem)) if rem.is_zero() => Some(quot),
            _ => None,
        }
    }

    /// Primitive gcd over `Q[q]`, normalized to positive leading coefficient.
    ///
    /// Returns zero only when both inputs are zero.
    pub fn gcd_primitive(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return Self::one();
            }
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Gcd in `Z[q]`: integer content gcd times the primitive gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let c = self.content().gcd(&other.content());
        self.gcd_primitive(other).scale(&c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Nonnegative integer coefficients throughout.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`, with `[0]_q = 0`.
pub fn q_int<T: Coeff>(n: usize) -> Poly<T> {
    Poly::from_coeffs(vec![T::one(); n])
}

/// `n!_q = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial<T: Coeff>(n: usize) -> Poly<T> {
    (1..=n).fold(Poly::one(), |acc, j| &acc * &q_int(j))
}

/// Gaussian binomial coefficient, zero outside `0 <= k <= n`.
pub fn q_binomial<T: Coeff>(n: usize, k: usize) -> Poly<T> {
    if k > n {
        return Poly::zero();
    }
    // Pascal recurrence keeps everything integral.
    let mut row: Vec<Poly<T>> = vec![Poly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let left = if j >= 1 { row[j - 1].clone() } else { Poly::zero() };
            let right = if j < m { row[j].shift(j) } else { Poly::zero() };
            next.push(&left + &right);
        }
        row = next;
    }
    row.swap_remove(k)
}

fn add_coeffs<T: Coeff>(a: &[T], b: &[T], negate_b: bool) -> Vec<T> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let x = a.get(k).cloned().unwrap_or_else(T::zero);
        let y = b.get(k).cloned().unwrap_or_else(T::zero);
        out.push(if negate_b { x - y } else { x + y });
    }
    out
}

impl<'a, T: Coeff> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &'a Poly<T>) -> Poly<T> {
        Poly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl<'a, T: Coeff> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &'a Poly<T>) -> Poly<T> {
        Poly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl<'a, T: Coeff> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr<Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Coeff> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Coeff> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{abs}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Coeff> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = Poly<BigInt>;

    fn p(c: &[i64]) -> P {
        P::from_i64s(c)
    }

    #[test]
    fn q_integers() {
        assert!(q_int::<BigInt>(0).is_zero());
        assert_eq!(q_int::<BigInt>(1), p(&[1]));
        assert_eq!(q_int::<BigInt>(3), p(&[1, 1, 1]));
    }

    #[test]
    fn q_factorials() {
        assert_eq!(q_factorial::<BigInt>(0), p(&[1]));
        assert_eq!(q_factorial::<BigInt>(2), p(&[1, 1]));
        assert_eq!(q_factorial::<BigInt>(3), p(&[1, 2, 2, 1]));
        for n in 0..8usize {
            let expect: i64 = (1..=n as i64).product();
            assert_eq!(q_factorial::<BigInt>(n).eval_at_one(), BigInt::from(expect));
        }
    }

    #[test]
    fn q_binomials() {
        assert_eq!(q_binomial::<BigInt>(4, 2), p(&[1, 1, 2, 1, 1]));
        assert!(q_binomial::<BigInt>(2, 3).is_zero());
        // [n choose k] * k! * (n-k)! = n!
        for n in 0..7 {
            for k in 0..=n {
                let lhs = &(&q_binomial::<BigInt>(n, k) * &q_factorial(k)) * &q_factorial(n - k);
                assert_eq!(lhs, q_factorial(n));
            }
        }
    }

    #[test]
    fn eval_and_reverse() {
        assert_eq!(p(&[1, 2, 2, 1]).eval_at_one(), BigInt::from(6));
        assert_eq!(p(&[1, 3]).reverse(), p(&[3, 1]));
        assert_eq!(p(&[0, 0, 1]).reverse(), p(&[1]));
        assert_eq!(p(&[1, 2, 3]).eval(&BigInt::from(2)), BigInt::from(17));
    }

    #[test]
    fn exact_division() {
        let a = p(&[0, 1, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[0, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[1, 1]).div_exact(&p(&[2])), None);
        assert_eq!(q_factorial::<BigInt>(3).div_exact(&q_int(3)), Some(p(&[1, 1])));
    }

    #[test]
    fn gcd_of_q_integers() {
        // gcd([4]_q, [6]_q) = [2]_q
        assert_eq!(q_int::<BigInt>(4).gcd(&q_int(6)), q_int(2));
        assert_eq!(p(&[2, 2]).gcd(&p(&[4, 4])), p(&[2, 2]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, 0, 1])), p(&[1]));
        assert_eq!(P::zero().gcd(&p(&[3, 0, 3])), p(&[3, 0, 3]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 3, 0, -2]).to_string(), "-2q^3 + 3q + 1");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn fixed_width_coefficients() {
        let a: Poly<i64> = q_int(4);
        let b: Poly<i64> = q_int(6);
        assert_eq!(a.gcd(&b), q_int(2));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|v| p(&v))
    }

    proptest! {
        #[test]
        fn q_int_additivity(m in 0usize..12, n in 0usize..12) {
            let lhs = q_int::<BigInt>(m + n);
            let rhs = &q_int::<BigInt>(m) + &q_int::<BigInt>(n).shift(m);
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(q_int::<BigInt>(n).eval_at_one(), BigInt::from(n));
        }

        #[test]
        fn reverse_is_involutive(v in prop::collection::vec(-9i64..9, 1..8), c in 1i64..9) {
            let mut v = v;
            v[0] = c;
            let a = p(&v);
            prop_assert_eq!(a.reverse().reverse(), a);
        }

        #[test]
        fn product_divides_back(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b), Some(a.clone()));
            let g = prod.gcd_primitive(&b);
            prop_assert!(b.primitive_part().div_exact(&g).is_some());
        }
    }
}
