//! Exact arithmetic over a two-level tower `F_q ⊂ F_{q^s}` with `q` prime.
//!
//! Elements of the extension are coefficient vectors over `F_q` with respect
//! to the construction modulus, lowest degree first. Both levels implement
//! [`Field`], so polynomial and decoding code is written once
//! and reused at either level.

mod basis;
mod ext;
mod irreducible;
pub mod linalg;
mod poly;
mod prime;

pub use basis::{dual_basis, power_basis, DualBasisPair};
pub use ext::{ExtElem, ExtField, MAX_DEGREE};
pub use irreducible::{canonical_root, count_irreducibles, find_irreducibles, is_irreducible, minimal_poly};
pub use poly::Poly;
pub use prime::{is_prime, next_prime, PrimeField};

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order q^s exceeds 2^32")]
    FieldTooLarge,
    #[error("only {found} monic irreducible polynomials of degree {degree} exist, {wanted} requested")]
    Exhausted {
        degree: usize,
        wanted: usize,
        found: usize,
    },
    #[error("basis is linearly dependent over the base field")]
    SingularBasis,
    #[error("trace left the base field (coordinate {0} nonzero); modulus is broken")]
    TraceOutsideBase(usize),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

/// A finite field whose elements are small `Copy` values.
///
/// Elements do not carry a reference to their field; every operation goes
/// through the field value, which holds the modulus.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Copy + Debug + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, GfError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Image of an integer in the prime subfield.
    fn from_int(&self, n: u64) -> Self::Elem;

    /// Number of elements.
    fn order(&self) -> u64;

    /// Characteristic (the prime `q`).
    fn characteristic(&self) -> u64;

    /// Bijection `[0, order) -> field`, used for enumeration and sampling.
    fn from_index(&self, idx: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;

    /// Serialized form of an element (`gf` element format).
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, GfError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.order()).map(move |i| self.from_index(i)))
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

/// Parse a `c0:c1:...` coefficient list of decimal integers.
pub(crate) fn parse_coeffs(input: &str, what: &'static str) -> Result<Vec<u64>, GfError> {
    input
        .split(':')
        .map(|c| c.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| GfError::Parse {
            what,
            input: input.to_string(),
        })
}
