//! Residue rings Z/m with desk-scale moduli.

use num::{BigInt, Signed, ToPrimitive};

use super::Ring;
use crate::error::RingError;
use crate::trunc::{factorize, PrimeSet};

/// Z/m, elements stored as canonical representatives in [0, m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    modulus: u64,
}

impl Residue {
    pub fn new(modulus: u64) -> Result<Self, RingError> {
        if modulus < 2 {
            return Err(RingError::Invalid(format!("modulus {modulus} too small")));
        }
        Ok(Residue { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Z/m is a Z_S-algebra exactly when every prime factor of m lies in the
    /// generating prime set.
    pub fn is_zs_algebra(&self, primes: &PrimeSet) -> bool {
        factorize(self.modulus).iter().all(|&(p, _)| primes.contains(p))
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        let mut r = n % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_u64().expect("reduced residue fits u64")
    }
}

impl Ring for Residue {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        self.reduce_int(n)
    }

    fn invert_int(&self, n: &BigInt) -> Result<u64, RingError> {
        let a = self.reduce_int(n) as i128;
        let m = self.modulus as i128;
        // extended Euclid
        let (mut old_r, mut r) = (a, m);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 {
            return Err(RingError::NotAUnit(format!("{n} mod {}", self.modulus)));
        }
        let inv = old_s.rem_euclid(m) as u64;
        Ok(inv)
    }

    fn exact_div_int(&self, x: &u64, n: &BigInt) -> Result<u64, RingError> {
        let inv = self.invert_int(n).map_err(|_| {
            RingError::NotDivisible(format!("{x} by {n} mod {} (not a unit)", self.modulus))
        })?;
        Ok(self.mul(x, &inv))
    }

    fn is_torsion_free(&self) -> bool {
        false
    }

    fn render(&self, x: &u64) -> String {
        x.to_string()
    }

    fn enumerate(&self) -> Option<Vec<u64>> {
        Some((0..self.modulus).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arithmetic() {
        let r = Residue::new(9).unwrap();
        assert_eq!(r.add(&7, &5), 3);
        assert_eq!(r.neg(&4), 5);
        assert_eq!(r.mul(&4, &7), 1);
        assert_eq!(r.from_i64(-1), 8);
    }

    #[test]
    fn inversion() {
        let r = Residue::new(9).unwrap();
        assert_eq!(r.invert_int(&BigInt::from(5)).unwrap(), 2);
        assert!(r.invert_int(&BigInt::from(3)).is_err());
    }

    #[test]
    fn zs_algebra_validity() {
        let nine = Residue::new(9).unwrap();
        assert!(nine.is_zs_algebra(&PrimeSet::new(vec![3]).unwrap()));
        assert!(!nine.is_zs_algebra(&PrimeSet::new(vec![2]).unwrap()));
        let twelve = Residue::new(12).unwrap();
        assert!(twelve.is_zs_algebra(&PrimeSet::new(vec![2, 3]).unwrap()));
        assert!(!twelve.is_zs_algebra(&PrimeSet::new(vec![2]).unwrap()));
    }
}
