//! Monoid algebras Z_S R for the multiplicative monoid of a ring R.
//!
//! Two monoid flavors: a finite explicitly tabulated monoid (the
//! multiplicative monoid of a small finite ring) and the multiplicative
//! monoid of a coefficient-ring whose elements admit a total order.

use std::collections::BTreeMap;

use num::{BigInt, BigRational};

use super::{coeff_factor, join_terms, RationalExtension, Ring, SLocalIntegers};
use crate::error::RingError;
use crate::rings::Residue;

/// Commutative monoid with decidable equality on elements.
pub trait MonoidOps: Clone + PartialEq + std::fmt::Debug {
    type Elt: Clone + Ord + std::fmt::Debug;

    fn unit(&self) -> Self::Elt;
    fn op(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn render_elt(&self, a: &Self::Elt) -> String;

    fn pow(&self, a: &Self::Elt, mut k: u64) -> Self::Elt {
        let mut base = a.clone();
        let mut acc = self.unit();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.op(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.op(&base, &base);
            }
        }
        acc
    }

    /// All elements for finite monoids, `None` otherwise.
    fn elements(&self) -> Option<Vec<Self::Elt>> {
        None
    }
}

/// Finite commutative monoid given by a full multiplication table.
/// Elements are indices into `labels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMonoid {
    labels: Vec<String>,
    unit: usize,
    table: Vec<Vec<usize>>,
}

impl TableMonoid {
    pub fn new(labels: Vec<String>, unit: usize, table: Vec<Vec<usize>>) -> Result<Self, RingError> {
        let n = labels.len();
        if unit >= n || table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(RingError::Invalid("malformed monoid table".into()));
        }
        let m = TableMonoid { labels, unit, table };
        // unit law, commutativity, associativity on the full table
        for i in 0..n {
            if m.table[unit][i] != i || m.table[i][unit] != i {
                return Err(RingError::Invalid(format!("unit law fails at {i}")));
            }
            for j in 0..n {
                if m.table[i][j] != m.table[j][i] {
                    return Err(RingError::Invalid(format!("not commutative at ({i},{j})")));
                }
                for k in 0..n {
                    if m.table[m.table[i][j]][k] != m.table[i][m.table[j][k]] {
                        return Err(RingError::Invalid(format!(
                            "not associative at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// The multiplicative monoid of Z/m, labels "0".."m-1", together with the
    /// residue value of each label.
    pub fn from_residue_ring(ring: &Residue) -> (Self, Vec<u64>) {
        let m = ring.modulus();
        let labels = (0..m).map(|i| i.to_string()).collect();
        let table = (0..m)
            .map(|i| (0..m).map(|j| ring.mul(&i, &j) as usize).collect())
            .collect();
        let monoid = TableMonoid::new(labels, 1, table).expect("residue monoid is valid");
        (monoid, (0..m).collect())
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

impl MonoidOps for TableMonoid {
    type Elt = usize;

    fn unit(&self) -> usize {
        self.unit
    }

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn render_elt(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.labels.len()).collect())
    }
}

/// The multiplicative monoid of the S-local rationals. Keys are exact
/// rationals, so the monoid algebra Z_S R for R = Z_S needs no table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMulMonoid {
    pub ring: SLocalIntegers,
}

impl MonoidOps for RingMulMonoid {
    type Elt = BigRational;

    fn unit(&self) -> BigRational {
        self.ring.one()
    }

    fn op(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.ring.mul(a, b)
    }

    fn render_elt(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// Element of a monoid algebra: a finite sorted combination sum n_r [r].
#[derive(Debug, Clone, PartialEq)]
pub struct MonElem<C: Ring, M: MonoidOps> {
    pub terms: BTreeMap<M::Elt, C::Elem>,
}

impl<C: Ring, M: MonoidOps> MonElem<C, M> {
    pub fn zero() -> Self {
        MonElem {
            terms: BTreeMap::new(),
        }
    }
}

/// The monoid algebra with coefficients in `coeff` (Z_S or its rational
/// extension) over the given monoid.
#[derive(Debug, Clone, PartialEq)]
pub struct MonoidAlgebra<C: Ring, M: MonoidOps> {
    pub coeff: C,
    pub monoid: M,
}

impl<C: Ring, M: MonoidOps> MonoidAlgebra<C, M> {
    pub fn new(coeff: C, monoid: M) -> Self {
        MonoidAlgebra { coeff, monoid }
    }

    /// The basis element [r].
    pub fn bracket(&self, r: M::Elt) -> MonElem<C, M> {
        let mut terms = BTreeMap::new();
        terms.insert(r, self.coeff.one());
        MonElem { terms }
    }

    fn insert_term(&self, terms: &mut BTreeMap<M::Elt, C::Elem>, r: M::Elt, c: C::Elem) {
        if self.coeff.is_zero(&c) {
            return;
        }
        match terms.remove(&r) {
            None => {
                terms.insert(r, c);
            }
            Some(prev) => {
                let s = self.coeff.add(&prev, &c);
                if !self.coeff.is_zero(&s) {
                    terms.insert(r, s);
                }
            }
        }
    }

    /// The map sum n_r [r] -> sum n_r r into a target ring, with `image`
    /// giving the target value of each monoid element and `map_coeff` the
    /// coefficient embedding.
    pub fn augment<S: Ring>(
        &self,
        x: &MonElem<C, M>,
        target: &S,
        image: &dyn Fn(&M::Elt) -> S::Elem,
        map_coeff: &dyn Fn(&C::Elem) -> Result<S::Elem, RingError>,
    ) -> Result<S::Elem, RingError> {
        let mut acc = target.zero();
        for (r, c) in &x.terms {
            acc = target.add(&acc, &target.mul(&map_coeff(c)?, &image(r)));
        }
        Ok(acc)
    }
}

impl<C: Ring, M: MonoidOps> Ring for MonoidAlgebra<C, M> {
    type Elem = MonElem<C, M>;

    fn zero(&self) -> MonElem<C, M> {
        MonElem::zero()
    }

    fn one(&self) -> MonElem<C, M> {
        self.bracket(self.monoid.unit())
    }

    fn add(&self, a: &MonElem<C, M>, b: &MonElem<C, M>) -> MonElem<C, M> {
        let mut terms = a.terms.clone();
        for (r, c) in &b.terms {
            self.insert_term(&mut terms, r.clone(), c.clone());
        }
        MonElem { terms }
    }

    fn neg(&self, a: &MonElem<C, M>) -> MonElem<C, M> {
        MonElem {
            terms: a
                .terms
                .iter()
                .map(|(r, c)| (r.clone(), self.coeff.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &MonElem<C, M>, b: &MonElem<C, M>) -> MonElem<C, M> {
        let mut terms = BTreeMap::new();
        for (ra, ca) in &a.terms {
            for (rb, cb) in &b.terms {
                self.insert_term(&mut terms, self.monoid.op(ra, rb), self.coeff.mul(ca, cb));
            }
        }
        MonElem { terms }
    }

    fn from_int(&self, n: &BigInt) -> MonElem<C, M> {
        let c = self.coeff.from_int(n);
        let mut terms = BTreeMap::new();
        if !self.coeff.is_zero(&c) {
            terms.insert(self.monoid.unit(), c);
        }
        MonElem { terms }
    }

    fn invert_int(&self, n: &BigInt) -> Result<MonElem<C, M>, RingError> {
        let c = self.coeff.invert_int(n)?;
        let mut terms = BTreeMap::new();
        terms.insert(self.monoid.unit(), c);
        Ok(MonElem { terms })
    }

    fn exact_div_int(&self, x: &MonElem<C, M>, n: &BigInt) -> Result<MonElem<C, M>, RingError> {
        let mut terms = BTreeMap::new();
        for (r, c) in &x.terms {
            let q = self.coeff.exact_div_int(c, n).map_err(|e| {
                RingError::NotDivisible(format!("coefficient of [{}]: {e}", self.monoid.render_elt(r)))
            })?;
            if !self.coeff.is_zero(&q) {
                terms.insert(r.clone(), q);
            }
        }
        Ok(MonElem { terms })
    }

    fn is_torsion_free(&self) -> bool {
        self.coeff.is_torsion_free()
    }

    fn is_zero(&self, x: &MonElem<C, M>) -> bool {
        x.terms.is_empty()
    }

    fn render(&self, x: &MonElem<C, M>) -> String {
        if x.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (r, c) in &x.terms {
            let bracket = format!("[{}]", self.monoid.render_elt(r));
            let coeff = self.coeff.render(c);
            let s = if self.coeff.is_one(c) {
                bracket
            } else if coeff == "-1" {
                format!("-{bracket}")
            } else {
                format!("{}*{bracket}", coeff_factor(&coeff))
            };
            parts.push(s);
        }
        join_terms(parts)
    }
}

impl<C: RationalExtension, M: MonoidOps> RationalExtension for MonoidAlgebra<C, M> {
    type Ext = MonoidAlgebra<C::Ext, M>;

    fn rational_extension(&self) -> Self::Ext {
        MonoidAlgebra::new(self.coeff.rational_extension(), self.monoid.clone())
    }

    fn embed(&self, x: &MonElem<C, M>) -> MonElem<C::Ext, M> {
        MonElem {
            terms: x
                .terms
                .iter()
                .map(|(r, c)| (r.clone(), self.coeff.embed(c)))
                .collect(),
        }
    }

    fn retract(&self, x: &MonElem<C::Ext, M>) -> Result<MonElem<C, M>, RingError> {
        let mut terms = BTreeMap::new();
        for (r, c) in &x.terms {
            let rc = self.coeff.retract(c).map_err(|e| {
                RingError::NonIntegral(format!("coefficient of [{}]: {e}", self.monoid.render_elt(r)))
            })?;
            if !self.coeff.is_zero(&rc) {
                terms.insert(r.clone(), rc);
            }
        }
        Ok(MonElem { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trunc::PrimeSet;
    use num::{One, Zero};

    fn zs_r9() -> MonoidAlgebra<SLocalIntegers, TableMonoid> {
        let ring = Residue::new(9).unwrap();
        let (monoid, _) = TableMonoid::from_residue_ring(&ring);
        MonoidAlgebra::new(
            SLocalIntegers::new(PrimeSet::new(vec![3]).unwrap()),
            monoid,
        )
    }

    #[test]
    fn brackets_multiply_in_the_monoid() {
        let a = zs_r9();
        let x = a.bracket(2);
        let y = a.bracket(5);
        // [2] * [5] = [10 mod 9] = [1]
        assert_eq!(a.mul(&x, &y), a.one());
    }

    #[test]
    fn augmentation_is_a_hom() {
        let a = zs_r9();
        let target = Residue::new(9).unwrap();
        let image = |r: &usize| *r as u64;
        let coeff = |c: &BigRational| target.from_rational(c);
        let x = a.add(&a.bracket(2), &a.bracket(7));
        let y = a.sub(&a.bracket(4), &a.one());
        let pi = |e: &MonElem<SLocalIntegers, TableMonoid>| {
            a.augment(e, &target, &image, &coeff).unwrap()
        };
        assert_eq!(pi(&a.add(&x, &y)), target.add(&pi(&x), &pi(&y)));
        assert_eq!(pi(&a.mul(&x, &y)), target.mul(&pi(&x), &pi(&y)));
        assert_eq!(pi(&a.bracket(5)), 5);
    }

    #[test]
    fn augmentation_in_f2() {
        let ring = Residue::new(2).unwrap();
        let (monoid, _) = TableMonoid::from_residue_ring(&ring);
        let a = MonoidAlgebra::new(
            SLocalIntegers::new(PrimeSet::new(vec![2]).unwrap()),
            monoid,
        );
        // [1] + [1] augments to 0 in F_2
        let x = a.add(&a.bracket(1), &a.bracket(1));
        let v = a
            .augment(&x, &ring, &|r| *r as u64, &|c| ring.from_rational(c))
            .unwrap();
        assert_eq!(v, 0);
    }

    #[test]
    fn table_validation_rejects_bad_tables() {
        // 2-element "monoid" with a broken unit
        assert!(TableMonoid::new(
            vec!["e".into(), "a".into()],
            0,
            vec![vec![1, 1], vec![1, 1]]
        )
        .is_err());
    }

    #[test]
    fn rational_monoid_keys() {
        let zs = SLocalIntegers::new(PrimeSet::new(vec![2]).unwrap());
        let a = MonoidAlgebra::new(zs.clone(), RingMulMonoid { ring: zs });
        let two = BigRational::from(BigInt::from(2));
        let x = a.bracket(two.clone());
        let sq = a.mul(&x, &x);
        assert_eq!(sq, a.bracket(&two * &two));
        let _ = BigRational::zero();
        let _ = BigRational::one();
    }
}
