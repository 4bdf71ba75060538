//! Sparse multivariate polynomials with graded-lexicographic term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::BigInt;

use super::{coeff_factor, join_terms, RationalExtension, Ring};
use crate::error::RingError;

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial in canonical form: sorted terms, no zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<R: Ring> {
    pub terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }
}

/// Polynomial ring over a base ring, with named variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialRing<R: Ring> {
    pub base: R,
    pub vars: Vec<String>,
}

impl<R: Ring> PolynomialRing<R> {
    pub fn new(base: R, vars: Vec<String>) -> Self {
        PolynomialRing { base, vars }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, idx: usize) -> MultiPoly<R> {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(self.nvars(), idx), self.base.one());
        MultiPoly { terms }
    }

    pub fn var_named(&self, name: &str) -> Option<MultiPoly<R>> {
        self.vars.iter().position(|v| v == name).map(|i| self.var(i))
    }

    pub fn constant(&self, c: R::Elem) -> MultiPoly<R> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(Monomial::constant(self.nvars()), c);
        }
        MultiPoly { terms }
    }

    fn insert_term(&self, terms: &mut BTreeMap<Monomial, R::Elem>, m: Monomial, c: R::Elem) {
        if self.base.is_zero(&c) {
            return;
        }
        match terms.remove(&m) {
            None => {
                terms.insert(m, c);
            }
            Some(prev) => {
                let s = self.base.add(&prev, &c);
                if !self.base.is_zero(&s) {
                    terms.insert(m, s);
                }
            }
        }
    }

    /// Substitutes `images` for the variables and maps coefficients into a
    /// target ring.
    pub fn evaluate<S: Ring>(
        &self,
        x: &MultiPoly<R>,
        target: &S,
        images: &[S::Elem],
        map_coeff: &dyn Fn(&R::Elem) -> Result<S::Elem, RingError>,
    ) -> Result<S::Elem, RingError> {
        assert_eq!(images.len(), self.nvars());
        let mut acc = target.zero();
        for (mono, coeff) in &x.terms {
            let mut term = map_coeff(coeff)?;
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    term = target.mul(&term, &target.pow(&images[i], e as u64));
                }
            }
            acc = target.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Substitution endomorphism: variables map to polynomials of this ring.
    pub fn substitute(&self, x: &MultiPoly<R>, images: &[MultiPoly<R>]) -> MultiPoly<R> {
        self.evaluate(x, self, images, &|c| Ok(self.constant(c.clone())))
            .expect("substitution cannot fail")
    }

    pub fn total_degree(&self, x: &MultiPoly<R>) -> u64 {
        x.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

impl<R: Ring> Ring for PolynomialRing<R> {
    type Elem = MultiPoly<R>;

    fn zero(&self) -> MultiPoly<R> {
        MultiPoly::zero()
    }

    fn one(&self) -> MultiPoly<R> {
        self.constant(self.base.one())
    }

    fn add(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            self.insert_term(&mut terms, m.clone(), c.clone());
        }
        MultiPoly { terms }
    }

    fn neg(&self, a: &MultiPoly<R>) -> MultiPoly<R> {
        MultiPoly {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.base.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.insert_term(&mut terms, ma.mul(mb), self.base.mul(ca, cb));
            }
        }
        MultiPoly { terms }
    }

    fn from_int(&self, n: &BigInt) -> MultiPoly<R> {
        self.constant(self.base.from_int(n))
    }

    fn invert_int(&self, n: &BigInt) -> Result<MultiPoly<R>, RingError> {
        Ok(self.constant(self.base.invert_int(n)?))
    }

    fn exact_div_int(&self, x: &MultiPoly<R>, n: &BigInt) -> Result<MultiPoly<R>, RingError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &x.terms {
            let q = self.base.exact_div_int(c, n).map_err(|e| {
                RingError::NotDivisible(format!(
                    "coefficient of {} in {}: {e}",
                    self.render_monomial(m),
                    self.render(x)
                ))
            })?;
            if !self.base.is_zero(&q) {
                terms.insert(m.clone(), q);
            }
        }
        Ok(MultiPoly { terms })
    }

    fn is_torsion_free(&self) -> bool {
        self.base.is_torsion_free()
    }

    fn is_zero(&self, x: &MultiPoly<R>) -> bool {
        x.terms.is_empty()
    }

    fn render(&self, x: &MultiPoly<R>) -> String {
        if x.terms.is_empty() {
            return "0".to_string();
        }
        // descending graded-lex
        let mut parts = Vec::new();
        for (m, c) in x.terms.iter().rev() {
            let mono = self.render_monomial(m);
            let coeff = self.base.render(c);
            let s = if m.is_constant() {
                coeff
            } else if self.base.is_one(c) {
                mono
            } else if coeff == "-1" {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", coeff_factor(&coeff))
            };
            parts.push(s);
        }
        join_terms(parts)
    }
}

impl<R: Ring> PolynomialRing<R> {
    pub fn render_monomial(&self, m: &Monomial) -> String {
        let factors: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

impl<R: RationalExtension> RationalExtension for PolynomialRing<R> {
    type Ext = PolynomialRing<R::Ext>;

    fn rational_extension(&self) -> Self::Ext {
        PolynomialRing::new(self.base.rational_extension(), self.vars.clone())
    }

    fn embed(&self, x: &MultiPoly<R>) -> MultiPoly<R::Ext> {
        MultiPoly {
            terms: x
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.base.embed(c)))
                .collect(),
        }
    }

    fn retract(&self, x: &MultiPoly<R::Ext>) -> Result<MultiPoly<R>, RingError> {
        let ext = self.rational_extension();
        let mut terms = BTreeMap::new();
        for (m, c) in &x.terms {
            let r = self.base.retract(c).map_err(|e| {
                RingError::NonIntegral(format!("monomial {}: {e}", ext.render_monomial(m)))
            })?;
            if !self.base.is_zero(&r) {
                terms.insert(m.clone(), r);
            }
        }
        Ok(MultiPoly { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Integers;

    fn zx() -> PolynomialRing<Integers> {
        PolynomialRing::new(Integers, vec!["X".into()])
    }

    #[test]
    fn square_of_binomial() {
        let r = zx();
        let x1 = r.add(&r.var(0), &r.one());
        let sq = r.mul(&x1, &x1);
        assert_eq!(r.render(&sq), "X^2 + 2*X + 1");
    }

    #[test]
    fn exact_divide() {
        let r = zx();
        let x = r.var(0);
        let six_x2 = r.mul(&r.from_i64(6), &r.mul(&x, &x));
        let d = r.exact_div_int(&six_x2, &BigInt::from(3)).unwrap();
        assert_eq!(r.render(&d), "2*X^2");
        assert!(r.exact_div_int(&x, &BigInt::from(2)).is_err());
    }

    #[test]
    fn graded_lex_render() {
        let r = PolynomialRing::new(Integers, vec!["X".into(), "Y".into()]);
        let x = r.var(0);
        let y = r.var(1);
        let e = r.add(
            &r.mul(&x, &r.mul(&y, &y)),
            &r.add(&r.mul(&x, &x), &r.sub(&y, &r.from_i64(3))),
        );
        // degree 3 term first, then degree 2, 1, 0
        assert_eq!(r.render(&e), "X*Y^2 + X^2 + Y - 3");
    }

    #[test]
    fn substitution() {
        let r = zx();
        let x = r.var(0);
        let p = r.add(&r.mul(&x, &x), &r.one()); // X^2 + 1
        let img = r.add(&x, &r.one()); // X + 1
        let s = r.substitute(&p, &[img]);
        assert_eq!(r.render(&s), "X^2 + 2*X + 2");
    }
}
