//! Generic commutative-ring abstraction and the concrete rings the library
//! computes in.

pub mod monoid;
pub mod numeric;
pub mod poly;
pub mod residue;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::RingError;

pub use monoid::{MonElem, MonoidAlgebra, MonoidOps, RingMulMonoid, TableMonoid};
pub use numeric::{Integers, SLocalIntegers};
pub use poly::{Monomial, MultiPoly, PolynomialRing};
pub use residue::Residue;

/// A described commutative ring. The descriptor owns all arithmetic; elements
/// are inert data kept in canonical form, so equality of elements is
/// structural equality.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    /// Inverse of n * 1 when n is a unit.
    fn invert_int(&self, n: &BigInt) -> Result<Self::Elem, RingError>;

    /// The unique y with n * y = x, failing loudly otherwise. Every call in
    /// the pipeline is backed by an integrality theorem, so failure aborts.
    fn exact_div_int(&self, x: &Self::Elem, n: &BigInt) -> Result<Self::Elem, RingError>;

    fn is_torsion_free(&self) -> bool;
    fn render(&self, x: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, RingError> {
        if q.denom().is_one() {
            return Ok(self.from_int(q.numer()));
        }
        let inv = self.invert_int(q.denom())?;
        Ok(self.mul(&self.from_int(q.numer()), &inv))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    fn is_one(&self, x: &Self::Elem) -> bool {
        *x == self.one()
    }

    fn pow(&self, x: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Self::Elem>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// All elements, for finite rings; `None` otherwise.
    fn enumerate(&self) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// A torsion-free ring together with its tensor-with-Q extension and the
/// integrality-checked retraction back.
pub trait RationalExtension: Ring {
    type Ext: Ring;

    fn rational_extension(&self) -> Self::Ext;
    fn embed(&self, x: &Self::Elem) -> <Self::Ext as Ring>::Elem;

    /// Certifies that every coefficient denominator is a unit of the base and
    /// returns the base-ring element. Failure signals a theorem violation.
    fn retract(&self, x: &<Self::Ext as Ring>::Elem) -> Result<Self::Elem, RingError>;
}

/// Renders a signed sequence of terms, folding leading minus signs into the
/// separators. `terms` must be nonempty strings.
pub(crate) fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

/// Wraps a coefficient in parentheses when it would parse ambiguously as a
/// factor of a product term.
pub(crate) fn coeff_factor(s: &str) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

pub(crate) fn v_p_int(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0i64;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// p-adic valuation of a nonzero rational.
pub(crate) fn v_p_rational(q: &BigRational, p: u64) -> i64 {
    v_p_int(q.numer(), p) - v_p_int(q.denom(), p)
}
