//! Coefficient ring bounds.
//!
//! Everything in [`crate::qpoly`] is written against [`Coeff`], an exact
//! integer type. `BigInt` is the default used throughout the crate (see the
//! aliases at the crate root); fixed-width integers work for small inputs but
//! may overflow in intermediate pseudo-remainders.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, NumAssignRef, NumRef, Signed};

/// Exact integer coefficient type for polynomials in `q`.
pub trait Coeff:
    Integer
    + Signed
    + NumRef
    + NumAssignRef
    + FromPrimitive
    + Clone
    + Hash
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Integer
        + Signed
        + NumRef
        + NumAssignRef
        + FromPrimitive
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + Send
        + Sync
        + 'static
{
}
