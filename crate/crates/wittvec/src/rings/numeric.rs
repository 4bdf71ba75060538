//! The integers, and the S-local rationals Z_S = Z[p^{-1}, p not in S].

use num::{BigInt, BigRational, One, Signed, Zero};

use super::{RationalExtension, Ring};
use crate::error::RingError;
use crate::trunc::PrimeSet;

/// Plain Z. Used for universal-polynomial coefficients and desk examples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn invert_int(&self, n: &BigInt) -> Result<BigInt, RingError> {
        if n.abs().is_one() {
            Ok(n.clone())
        } else {
            Err(RingError::NotAUnit(format!("{n} in Z")))
        }
    }

    fn exact_div_int(&self, x: &BigInt, n: &BigInt) -> Result<BigInt, RingError> {
        if n.is_zero() {
            return Err(RingError::NotDivisible("division by zero".into()));
        }
        if (x % n).is_zero() {
            Ok(x / n)
        } else {
            Err(RingError::NotDivisible(format!("{x} by {n} in Z")))
        }
    }

    fn is_torsion_free(&self) -> bool {
        true
    }

    fn render(&self, x: &BigInt) -> String {
        x.to_string()
    }
}

impl RationalExtension for Integers {
    type Ext = SLocalIntegers;

    fn rational_extension(&self) -> SLocalIntegers {
        SLocalIntegers::rationals()
    }

    fn embed(&self, x: &BigInt) -> BigRational {
        BigRational::from(x.clone())
    }

    fn retract(&self, x: &BigRational) -> Result<BigInt, RingError> {
        if x.denom().is_one() {
            Ok(x.numer().clone())
        } else {
            Err(RingError::NonIntegral(format!("{x} not in Z")))
        }
    }
}

/// Z_S: rationals whose denominator has every prime factor outside the
/// generating prime set. With an empty prime set this is all of Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SLocalIntegers {
    primes: PrimeSet,
}

impl SLocalIntegers {
    pub fn new(primes: PrimeSet) -> Self {
        SLocalIntegers { primes }
    }

    /// Q, as the S-local ring with no generating primes.
    pub fn rationals() -> Self {
        SLocalIntegers {
            primes: PrimeSet::empty(),
        }
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    /// Membership test: denominator coprime to every generating prime.
    pub fn denominator_ok(&self, q: &BigRational) -> bool {
        self.primes
            .primes()
            .iter()
            .all(|&p| !(q.denom() % BigInt::from(p)).is_zero())
    }
}

impl Ring for SLocalIntegers {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from(n.clone())
    }

    fn invert_int(&self, n: &BigInt) -> Result<BigRational, RingError> {
        if n.is_zero() {
            return Err(RingError::NotAUnit("0".into()));
        }
        for &p in self.primes.primes() {
            if (n % BigInt::from(p)).is_zero() {
                return Err(RingError::NotAUnit(format!("{n} in Z_S (divisible by {p})")));
            }
        }
        Ok(BigRational::new(BigInt::one(), n.clone()))
    }

    fn from_rational(&self, q: &BigRational) -> Result<BigRational, RingError> {
        if self.denominator_ok(q) {
            Ok(q.clone())
        } else {
            Err(RingError::NonIntegral(format!("{q} not in Z_S")))
        }
    }

    fn exact_div_int(&self, x: &BigRational, n: &BigInt) -> Result<BigRational, RingError> {
        if n.is_zero() {
            return Err(RingError::NotDivisible("division by zero".into()));
        }
        let q = x / BigRational::from(n.clone());
        if self.denominator_ok(&q) {
            Ok(q)
        } else {
            Err(RingError::NotDivisible(format!("{x} by {n} in Z_S")))
        }
    }

    fn is_torsion_free(&self) -> bool {
        true
    }

    fn render(&self, x: &BigRational) -> String {
        x.to_string()
    }
}

impl RationalExtension for SLocalIntegers {
    type Ext = SLocalIntegers;

    fn rational_extension(&self) -> SLocalIntegers {
        SLocalIntegers::rationals()
    }

    fn embed(&self, x: &BigRational) -> BigRational {
        x.clone()
    }

    fn retract(&self, x: &BigRational) -> Result<BigRational, RingError> {
        if self.denominator_ok(x) {
            Ok(x.clone())
        } else {
            Err(RingError::NonIntegral(format!(
                "{x} has a denominator inside S = {}",
                self.primes
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zs(primes: &[u64]) -> SLocalIntegers {
        SLocalIntegers::new(PrimeSet::new(primes.to_vec()).unwrap())
    }

    #[test]
    fn invert_respects_prime_set() {
        let r = zs(&[2]);
        assert_eq!(
            r.invert_int(&BigInt::from(3)).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(3))
        );
        assert!(matches!(
            r.invert_int(&BigInt::from(2)),
            Err(RingError::NotAUnit(_))
        ));
        assert!(matches!(
            r.invert_int(&BigInt::from(6)),
            Err(RingError::NotAUnit(_))
        ));
    }

    #[test]
    fn exact_division() {
        let z = Integers;
        assert_eq!(
            z.exact_div_int(&BigInt::from(6), &BigInt::from(3)).unwrap(),
            BigInt::from(2)
        );
        assert!(z.exact_div_int(&BigInt::from(1), &BigInt::from(2)).is_err());

        let r = zs(&[2]);
        // 3 is invertible in Z_S with S generated by {2}
        assert!(r
            .exact_div_int(&BigRational::from(BigInt::from(1)), &BigInt::from(3))
            .is_ok());
        // 2 is not
        assert!(r
            .exact_div_int(&BigRational::from(BigInt::from(1)), &BigInt::from(2))
            .is_err());
        assert!(r
            .exact_div_int(&BigRational::from(BigInt::from(6)), &BigInt::from(2))
            .is_ok());
    }

    #[test]
    fn retraction() {
        let r = zs(&[3]);
        let half = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(r.retract(&half).unwrap(), half);
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(matches!(r.retract(&third), Err(RingError::NonIntegral(_))));
    }

    #[test]
    fn closure_under_ops() {
        // sums and products of S-local rationals stay S-local
        let r = zs(&[2, 5]);
        let a = BigRational::new(BigInt::from(4), BigInt::from(21));
        let b = BigRational::new(BigInt::from(-6), BigInt::from(77));
        for x in [r.add(&a, &b), r.mul(&a, &b), r.sub(&a, &b)] {
            assert!(r.denominator_ok(&x));
        }
    }
}
