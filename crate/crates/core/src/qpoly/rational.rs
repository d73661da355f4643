use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Coeff, Poly};
use crate::error::{Error, Result};

/// Element of the rational function field `Q(q)`, kept in lowest terms.
///
/// Canonical form: `num` and `den` share no common factor in `Z[q]` (neither a
/// polynomial factor nor an integer one) and `den` has a positive leading
/// coefficient. Zero is `0/1`. Two equal field elements therefore have equal
/// representations and `==` is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Coeff> RatFunc<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(mut num: Poly<T>, mut den: Poly<T>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if !den.is_constant() {
            let g = num.gcd_primitive(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("primitive gcd divides numerator");
                den = den.div_exact(&g).expect("primitive gcd divides denominator");
            }
        }
        let c = num.content().gcd(&den.content());
        let mut c = c;
        if den.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn from_int(c: T) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `n / d` as a constant of `Q(q)`.
    pub fn from_ratio(n: T, d: T) -> Result<Self> {
        Self::new(Poly::constant(n), Poly::constant(d))
    }

    pub fn numer(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The numerator when the value lies in `Z[q]`.
    pub fn is_polynomial(&self) -> Option<Poly<T>> {
        self.den.is_one().then(|| self.num.clone())
    }

    /// Multiplies by the integer fraction `n / d`.
    pub fn scale_ratio(&self, n: &T, d: &T) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.num.scale(n), self.den.scale(d)))
    }

    pub fn mul_poly(&self, p: &Poly<T>) -> Self {
        Self::normalize(&self.num * p, self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Equality by cross-multiplication, independent of normalization.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Value at `q = 1` as an integer fraction `(num, den)`, if the
    /// denominator does not vanish there.
    pub fn eval_at_one(&self) -> Option<(T, T)> {
        let d = self.den.eval_at_one();
        (!d.is_zero()).then(|| (self.num.eval_at_one(), d))
    }
}

impl<'a, T: Coeff> Add<&'a RatFunc<T>> for &'a RatFunc<T> {
    type Output = RatFunc<T>;
    fn add(self, rhs: &'a RatFunc<T>) -> RatFunc<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a, T: Coeff> Sub<&'a RatFunc<T>> for &'a RatFunc<T> {
    type Output = RatFunc<T>;
    fn sub(self, rhs: &'a RatFunc<T>) -> RatFunc<T> {
        self + &(-rhs)
    }
}

impl<'a, T: Coeff> Mul<&'a RatFunc<T>> for &'a RatFunc<T> {
    type Output = RatFunc<T>;
    fn mul(self, rhs: &'a RatFunc<T>) -> RatFunc<T> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Coeff> Neg for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn neg(self) -> RatFunc<T> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<T: Coeff> Neg for RatFunc<T> {
    type Output = RatFunc<T>;
    fn neg(self) -> RatFunc<T> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr<RatFunc<T>> for RatFunc<T> {
            type Output = RatFunc<T>;
            fn $m(self, rhs: RatFunc<T>) -> RatFunc<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Coeff> From<Poly<T>> for RatFunc<T> {
    fn from(p: Poly<T>) -> Self {
        RatFunc::from_poly(p)
    }
}

impl<T: Coeff> fmt::Display for RatFunc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<T: Coeff> fmt::Debug for RatFunc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
