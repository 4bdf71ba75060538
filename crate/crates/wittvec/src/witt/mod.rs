//! Witt vector arithmetic over Z_S-algebras: component and ghost
//! representations, Frobenius and Verschiebung, the operators T_l, the
//! projector on S-indexed components and its splitting.

pub mod series;
pub mod universal;

use num::BigInt;

use crate::error::WittError;
use crate::rings::Ring;
use crate::trunc::{divisors, factorize, moebius, PrimeSet, TruncationSet};

pub use series::{lambda_to_witt, witt_to_lambda, LambdaSeries};
pub use universal::{universal_polynomials, Universal, UnivOp};

/// Components (a_n) indexed by a divisor-stable truncation set.
#[derive(Debug, Clone, PartialEq)]
pub struct WittVector<R: Ring> {
    pub ring: R,
    pub trunc: TruncationSet,
    comps: Vec<R::Elem>,
}

/// Ghost entries (g_n) over the same index sets.
#[derive(Debug, Clone, PartialEq)]
pub struct GhostVector<R: Ring> {
    pub ring: R,
    pub trunc: TruncationSet,
    entries: Vec<R::Elem>,
}

impl<R: Ring> WittVector<R> {
    pub fn new(ring: R, trunc: TruncationSet, comps: Vec<R::Elem>) -> Result<Self, WittError> {
        if comps.len() != trunc.len() {
            return Err(WittError::Truncation(format!(
                "{} components for truncation {trunc}",
                comps.len()
            )));
        }
        Ok(WittVector { ring, trunc, comps })
    }

    pub fn zero(ring: R, trunc: TruncationSet) -> Self {
        let comps = trunc.members().iter().map(|_| ring.zero()).collect();
        WittVector { ring, trunc, comps }
    }

    /// The Teichmuller representative (r, 0, 0, ...).
    pub fn teichmuller(ring: R, trunc: TruncationSet, r: R::Elem) -> Self {
        let mut w = WittVector::zero(ring, trunc);
        if let Some(i) = w.trunc.position(1) {
            w.comps[i] = r;
        }
        w
    }

    pub fn components(&self) -> &[R::Elem] {
        &self.comps
    }

    pub fn component(&self, n: u64) -> Option<&R::Elem> {
        self.trunc.position(n).map(|i| &self.comps[i])
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| self.ring.is_zero(c))
    }

    /// Restriction of components to a divisor-stable subset.
    pub fn project(&self, sub: &TruncationSet) -> Result<WittVector<R>, WittError> {
        if !sub.is_subset_of(&self.trunc) {
            return Err(WittError::Truncation(format!(
                "{sub} is not a subset of {}",
                self.trunc
            )));
        }
        let comps = sub
            .members()
            .iter()
            .map(|&n| self.component(n).unwrap().clone())
            .collect();
        Ok(WittVector {
            ring: self.ring.clone(),
            trunc: sub.clone(),
            comps,
        })
    }

    /// g_n = sum over d | n of d * a_d^{n/d}.
    pub fn ghost(&self) -> GhostVector<R> {
        let r = &self.ring;
        let entries = self
            .trunc
            .members()
            .iter()
            .map(|&n| {
                let mut g = r.zero();
                for d in divisors(n) {
                    let a = self.component(d).expect("divisor stable");
                    let term = r.mul(&r.from_i64(d as i64), &r.pow(a, n / d));
                    g = r.add(&g, &term);
                }
                g
            })
            .collect();
        GhostVector {
            ring: self.ring.clone(),
            trunc: self.trunc.clone(),
            entries,
        }
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.comps.iter().map(|c| self.ring.render(c)).collect();
        format!("({})", parts.join(", "))
    }
}

impl<R: Ring> GhostVector<R> {
    pub fn new(ring: R, trunc: TruncationSet, entries: Vec<R::Elem>) -> Result<Self, WittError> {
        if entries.len() != trunc.len() {
            return Err(WittError::Truncation(format!(
                "{} entries for truncation {trunc}",
                entries.len()
            )));
        }
        Ok(GhostVector { ring, trunc, entries })
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn entry(&self, n: u64) -> Option<&R::Elem> {
        self.trunc.position(n).map(|i| &self.entries[i])
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|c| self.ring.render(c)).collect();
        format!("({})", parts.join(", "))
    }

    /// Unique preimage under the ghost map, by the recursion
    /// a_n = (g_n - sum_{d|n, d<n} d a_d^{n/d}) / n.
    pub fn to_witt(&self) -> Result<WittVector<R>, WittError> {
        let r = &self.ring;
        let mut w = WittVector::zero(self.ring.clone(), self.trunc.clone());
        for (i, &n) in self.trunc.members().iter().enumerate() {
            let mut rest = self.entries[i].clone();
            for d in divisors(n) {
                if d == n {
                    continue;
                }
                let a = w.component(d).expect("divisor stable");
                let term = r.mul(&r.from_i64(d as i64), &r.pow(a, n / d));
                rest = r.sub(&rest, &term);
            }
            w.comps[i] = r.exact_div_int(&rest, &BigInt::from(n))?;
        }
        Ok(w)
    }

    pub fn map_entries(&self, f: impl Fn(u64, &R::Elem) -> R::Elem) -> GhostVector<R> {
        let entries = self
            .trunc
            .members()
            .iter()
            .zip(&self.entries)
            .map(|(&n, e)| f(n, e))
            .collect();
        GhostVector {
            ring: self.ring.clone(),
            trunc: self.trunc.clone(),
            entries,
        }
    }

    /// Entrywise sum (ghost-side addition).
    pub fn add(&self, other: &GhostVector<R>) -> Result<GhostVector<R>, WittError> {
        check_compatible(&self.ring, &other.ring, &self.trunc, &other.trunc)?;
        Ok(self.map_entries(|n, e| self.ring.add(e, other.entry(n).unwrap())))
    }

    /// Entrywise product (ghost-side multiplication).
    pub fn mul(&self, other: &GhostVector<R>) -> Result<GhostVector<R>, WittError> {
        check_compatible(&self.ring, &other.ring, &self.trunc, &other.trunc)?;
        Ok(self.map_entries(|n, e| self.ring.mul(e, other.entry(n).unwrap())))
    }

    pub fn neg(&self) -> GhostVector<R> {
        self.map_entries(|_, e| self.ring.neg(e))
    }

    /// F_k on ghost entries: entry n of the output is entry nk of the input.
    pub fn frobenius(&self, k: u64) -> GhostVector<R> {
        let out = self.trunc.quotient(k);
        let entries = out
            .members()
            .iter()
            .map(|&n| self.entry(n * k).unwrap().clone())
            .collect();
        GhostVector {
            ring: self.ring.clone(),
            trunc: out,
            entries,
        }
    }

    /// V_k on ghost entries: entry n is k * (entry n/k) when k | n, else 0.
    /// The input must live over out_trunc / k.
    pub fn verschiebung(&self, k: u64, out_trunc: &TruncationSet) -> Result<GhostVector<R>, WittError> {
        if out_trunc.quotient(k) != self.trunc {
            return Err(WittError::Truncation(format!(
                "verschiebung: input truncation {} is not {out_trunc}/{k}",
                self.trunc
            )));
        }
        let r = &self.ring;
        let entries = out_trunc
            .members()
            .iter()
            .map(|&n| {
                if n % k == 0 {
                    r.mul(&r.from_i64(k as i64), self.entry(n / k).unwrap())
                } else {
                    r.zero()
                }
            })
            .collect();
        Ok(GhostVector {
            ring: self.ring.clone(),
            trunc: out_trunc.clone(),
            entries,
        })
    }

    /// T_l = 1 + l^{-1} V_l (1 - F_l) for a prime l outside S; componentwise
    /// this is b_n = a_n for l not dividing n and b_n = a_{n/l} otherwise.
    pub fn t_l(&self, l: u64, primes: &PrimeSet) -> Result<GhostVector<R>, WittError> {
        if primes.contains(l) {
            return Err(WittError::Precondition(format!("l = {l} lies in S")));
        }
        if !crate::trunc::is_prime(l) {
            return Err(WittError::Precondition(format!("l = {l} is not prime")));
        }
        Ok(self.map_entries(|n, e| {
            if n % l == 0 {
                self.entry(n / l).unwrap().clone()
            } else {
                e.clone()
            }
        }))
    }

    /// T_m for m prime to S, as the product of the T_l over l^ord_l(m).
    pub fn t_m(&self, m: u64, primes: &PrimeSet) -> Result<GhostVector<R>, WittError> {
        let mut g = self.clone();
        for (l, e) in factorize(m) {
            for _ in 0..e {
                g = g.t_l(l, primes)?;
            }
        }
        Ok(g)
    }

    /// The projector on ghost entries: entry n of the output is entry n_S.
    pub fn phi_s(&self, primes: &PrimeSet) -> GhostVector<R> {
        self.map_entries(|n, _| self.entry(primes.s_part(n)).unwrap().clone())
    }

    /// The projector computed as the stationary limit of T_{m}: m is the
    /// product of all primes outside S up to the truncation bound, raised
    /// high enough that a further factor changes nothing.
    pub fn phi_s_stationary_limit(&self, primes: &PrimeSet) -> Result<GhostVector<R>, WittError> {
        let max = self.trunc.members().last().copied().unwrap_or(1);
        let mut g = self.clone();
        for l in 2..=max {
            if crate::trunc::is_prime(l) && !primes.contains(l) {
                let e = ord_bound(l, max);
                for _ in 0..e {
                    g = g.t_l(l, primes)?;
                }
            }
        }
        Ok(g)
    }

    /// The projector via the double-sum formula
    /// (sum over n prime to S of n^{-1} V_n) (sum of mu(n) n^{-1} V_n F_n).
    pub fn phi_s_double_sum(&self, primes: &PrimeSet) -> Result<GhostVector<R>, WittError> {
        let r = &self.ring;
        let max = self.trunc.members().last().copied().unwrap_or(1);
        // inner operator: n^{-1} V_n F_n scales entry m by 1 when n | m, 0 otherwise
        let mut inner = GhostVector {
            ring: self.ring.clone(),
            trunc: self.trunc.clone(),
            entries: self.trunc.members().iter().map(|_| r.zero()).collect(),
        };
        for n in 1..=max {
            if !primes.is_coprime(n) {
                continue;
            }
            let mu = moebius(n);
            if mu == 0 {
                continue;
            }
            let inv_n = r
                .invert_int(&BigInt::from(n))
                .map_err(WittError::Ring)?;
            let scale = r.mul(&r.from_i64(mu), &inv_n);
            // V_n F_n on ghost entries: m -> n * a_m when n | m, else 0
            let contrib = self.map_entries(|m, e| {
                if m % n == 0 {
                    r.mul(&r.mul(&r.from_i64(n as i64), e), &scale)
                } else {
                    r.zero()
                }
            });
            inner = inner.add(&contrib)?;
        }
        // outer operator: sum of n^{-1} V_n over n prime to S
        let mut out = GhostVector {
            ring: self.ring.clone(),
            trunc: self.trunc.clone(),
            entries: self.trunc.members().iter().map(|_| r.zero()).collect(),
        };
        for n in 1..=max {
            if !primes.is_coprime(n) {
                continue;
            }
            let inv_n = r
                .invert_int(&BigInt::from(n))
                .map_err(WittError::Ring)?;
            let contrib = out.map_entries(|m, _| {
                if m % n == 0 {
                    match inner.entry(m / n) {
                        Some(e) => r.mul(&r.mul(&r.from_i64(n as i64), e), &inv_n),
                        None => r.zero(),
                    }
                } else {
                    r.zero()
                }
            });
            out = out.add(&contrib)?;
        }
        Ok(out)
    }
}

fn ord_bound(l: u64, max: u64) -> u32 {
    let mut e = 0;
    let mut q = l;
    while q <= max {
        e += 1;
        q = q.saturating_mul(l);
    }
    e.max(1)
}

fn check_compatible<R: Ring>(
    r1: &R,
    r2: &R,
    t1: &TruncationSet,
    t2: &TruncationSet,
) -> Result<(), WittError> {
    if r1 != r2 {
        return Err(WittError::Precondition("ring descriptors differ".into()));
    }
    if t1 != t2 {
        return Err(WittError::Truncation(format!("{t1} vs {t2}")));
    }
    Ok(())
}

fn binary_op<R: Ring>(
    op: UnivOp,
    u: &WittVector<R>,
    v: &WittVector<R>,
) -> Result<WittVector<R>, WittError> {
    check_compatible(&u.ring, &v.ring, &u.trunc, &v.trunc)?;
    if u.ring.is_torsion_free() {
        // direct ghost round-trip
        let gu = u.ghost();
        let gv = v.ghost();
        let g = match op {
            UnivOp::Add => gu.add(&gv)?,
            UnivOp::Mul => gu.mul(&gv)?,
            _ => unreachable!(),
        };
        g.to_witt()
    } else {
        let univ = universal_polynomials(op, &u.trunc, &PrimeSet::empty())?;
        let inputs: Vec<R::Elem> = u.comps.iter().chain(v.comps.iter()).cloned().collect();
        univ.evaluate(&u.ring, &inputs)
    }
}

/// Witt vector addition.
pub fn witt_add<R: Ring>(u: &WittVector<R>, v: &WittVector<R>) -> Result<WittVector<R>, WittError> {
    binary_op(UnivOp::Add, u, v)
}

/// Witt vector multiplication.
pub fn witt_mul<R: Ring>(u: &WittVector<R>, v: &WittVector<R>) -> Result<WittVector<R>, WittError> {
    binary_op(UnivOp::Mul, u, v)
}

/// Witt vector additive inverse.
pub fn witt_neg<R: Ring>(u: &WittVector<R>) -> Result<WittVector<R>, WittError> {
    if u.ring.is_torsion_free() {
        u.ghost().neg().to_witt()
    } else {
        let univ = universal_polynomials(UnivOp::Neg, &u.trunc, &PrimeSet::empty())?;
        univ.evaluate(&u.ring, &u.comps)
    }
}

/// Witt vector subtraction.
pub fn witt_sub<R: Ring>(u: &WittVector<R>, v: &WittVector<R>) -> Result<WittVector<R>, WittError> {
    witt_add(u, &witt_neg(v)?)
}

/// Witt-side Frobenius, the ghost-conjugate of the shift map.
pub fn witt_frobenius<R: Ring>(k: u64, u: &WittVector<R>) -> Result<WittVector<R>, WittError> {
    if u.ring.is_torsion_free() {
        u.ghost().frobenius(k).to_witt()
    } else {
        let univ = universal_polynomials(UnivOp::Frobenius(k), &u.trunc, &PrimeSet::empty())?;
        univ.evaluate(&u.ring, &u.comps)
    }
}

/// Witt-side Verschiebung: component n of the output is component n/k when
/// k | n and 0 otherwise (no scalar factor on the component side).
pub fn witt_verschiebung<R: Ring>(
    k: u64,
    u: &WittVector<R>,
    out_trunc: &TruncationSet,
) -> Result<WittVector<R>, WittError> {
    if out_trunc.quotient(k) != u.trunc {
        return Err(WittError::Truncation(format!(
            "verschiebung: input truncation {} is not {out_trunc}/{k}",
            u.trunc
        )));
    }
    let r = &u.ring;
    let comps = out_trunc
        .members()
        .iter()
        .map(|&n| {
            if n % k == 0 {
                u.component(n / k).unwrap().clone()
            } else {
                r.zero()
            }
        })
        .collect();
    WittVector::new(u.ring.clone(), out_trunc.clone(), comps)
}

/// Witt-side projector: ghost(output)_n = ghost(input)_{n_S}.
pub fn phi_s_witt<R: Ring>(u: &WittVector<R>, primes: &PrimeSet) -> Result<WittVector<R>, WittError> {
    if u.ring.is_torsion_free() {
        u.ghost().phi_s(primes).to_witt()
    } else {
        let univ = universal_polynomials(UnivOp::PhiS, &u.trunc, primes)?;
        univ.evaluate(&u.ring, &u.comps)
    }
}

/// The splitting of the projection W_N -> W_{S_N}: input over S_N, output
/// over {1, ..., N-1}, with ghost(output)_n = ghost(input)_{n_S}.
pub fn phi_bar<R: Ring>(
    u: &WittVector<R>,
    primes: &PrimeSet,
    bound: u64,
) -> Result<WittVector<R>, WittError> {
    let s_n = primes.s_truncation(bound);
    if u.trunc != s_n {
        return Err(WittError::Truncation(format!(
            "phi-bar input truncation {} is not S_N = {s_n}",
            u.trunc
        )));
    }
    if u.ring.is_torsion_free() {
        let g = u.ghost();
        let full = TruncationSet::full(bound);
        let entries = full
            .members()
            .iter()
            .map(|&n| g.entry(primes.s_part(n)).unwrap().clone())
            .collect();
        GhostVector::new(u.ring.clone(), full, entries)?.to_witt()
    } else {
        let univ = universal_polynomials(UnivOp::PhiBar(bound), &u.trunc, primes)?;
        univ.evaluate(&u.ring, &u.comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{Integers, PolynomialRing, Residue, SLocalIntegers};
    use num::BigInt;

    fn ps(primes: &[u64]) -> PrimeSet {
        PrimeSet::new(primes.to_vec()).unwrap()
    }

    fn wz(trunc: &[u64], comps: &[i64]) -> WittVector<Integers> {
        WittVector::new(
            Integers,
            TruncationSet::new(trunc.to_vec()).unwrap(),
            comps.iter().map(|&c| BigInt::from(c)).collect(),
        )
        .unwrap()
    }

    fn gz(trunc: &[u64], entries: &[i64]) -> GhostVector<Integers> {
        GhostVector::new(
            Integers,
            TruncationSet::new(trunc.to_vec()).unwrap(),
            entries.iter().map(|&c| BigInt::from(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn ghost_of_teichmuller() {
        let t = TruncationSet::full(4);
        let w = WittVector::teichmuller(Integers, t, BigInt::from(2));
        assert_eq!(w.ghost(), gz(&[1, 2, 3], &[2, 4, 8]));
    }

    #[test]
    fn ghost_examples() {
        assert_eq!(wz(&[1, 2], &[1, 1]).ghost(), gz(&[1, 2], &[1, 3]));
        assert_eq!(wz(&[1, 2, 3], &[0, 0, 0]).ghost(), gz(&[1, 2, 3], &[0, 0, 0]));
    }

    #[test]
    fn from_ghost_round_trip() {
        assert_eq!(gz(&[1, 2], &[1, 3]).to_witt().unwrap(), wz(&[1, 2], &[1, 1]));
        // Teichmuller ghost (r, r^2, r^3) -> (r, 0, 0)
        assert_eq!(
            gz(&[1, 2, 3], &[5, 25, 125]).to_witt().unwrap(),
            wz(&[1, 2, 3], &[5, 0, 0])
        );
        // (0, 1) is not a ghost image over Z
        assert!(matches!(
            gz(&[1, 2], &[0, 1]).to_witt(),
            Err(WittError::Ring(crate::error::RingError::NotDivisible(_)))
        ));
    }

    #[test]
    fn add_and_mul_frozen_examples() {
        // ghost oracle: (1,0)+(1,0) has ghost (2,2), a_2 = (2-4)/2 = -1
        let one = wz(&[1, 2], &[1, 0]);
        assert_eq!(witt_add(&one, &one).unwrap(), wz(&[1, 2], &[2, -1]));
        // (0,1)*(0,1) has ghost (0,4), a_2 = 4/2
        let v = wz(&[1, 2], &[0, 1]);
        assert_eq!(witt_mul(&v, &v).unwrap(), wz(&[1, 2], &[0, 2]));
    }

    #[test]
    fn unit_laws() {
        let t = TruncationSet::full(6);
        let u = wz(&[1, 2, 3, 4, 5], &[3, -1, 4, 1, -5]);
        let zero = WittVector::zero(Integers, t.clone());
        let one = WittVector::teichmuller(Integers, t, BigInt::from(1));
        assert_eq!(witt_add(&u, &zero).unwrap(), u);
        assert_eq!(witt_mul(&u, &one).unwrap(), u);
        assert!(witt_add(&u, &witt_neg(&u).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn teichmuller_is_multiplicative() {
        let t = TruncationSet::full(7);
        let a = WittVector::teichmuller(Integers, t.clone(), BigInt::from(3));
        let b = WittVector::teichmuller(Integers, t.clone(), BigInt::from(-4));
        let ab = WittVector::teichmuller(Integers, t, BigInt::from(-12));
        assert_eq!(witt_mul(&a, &b).unwrap(), ab);
    }

    #[test]
    fn torsion_ring_arithmetic_matches_universal_evaluation() {
        // over Z/9 the universal path is the only one; spot-check 1+1 ghostwise
        let r9 = Residue::new(9).unwrap();
        let t = TruncationSet::full(4);
        let one = WittVector::teichmuller(r9.clone(), t.clone(), 1);
        let two = witt_add(&one, &one).unwrap();
        // components of 2 in W(Z) are (2, -1, -2) at {1,2,3}; reduced mod 9
        let expect = WittVector::new(r9, t, vec![2u64, 8, 7]).unwrap();
        assert_eq!(two, expect);
    }

    #[test]
    fn universal_closed_forms_at_two() {
        // sum second component x2 + y2 - x1 y1; product x1^2 y2 + y1^2 x2 + 2 x2 y2
        let t = TruncationSet::new(vec![1, 2]).unwrap();
        let add = universal_polynomials(UnivOp::Add, &t, &PrimeSet::empty()).unwrap();
        let mul = universal_polynomials(UnivOp::Mul, &t, &PrimeSet::empty()).unwrap();
        assert_eq!(add.ring.render(&add.comps[0]), "x1 + y1");
        assert_eq!(add.ring.render(&add.comps[1]), "-x1*y1 + x2 + y2");
        assert_eq!(mul.ring.render(&mul.comps[0]), "x1*y1");
        assert_eq!(mul.ring.render(&mul.comps[1]), "x1^2*y2 + x2*y1^2 + 2*x2*y2");
    }

    #[test]
    fn frobenius_ghost_side() {
        let g = gz(&[1, 2, 3, 4], &[10, 20, 30, 40]);
        assert_eq!(g.frobenius(2), gz(&[1, 2], &[20, 40]));
        assert_eq!(g.frobenius(1), g);
    }

    #[test]
    fn frobenius_of_teichmuller() {
        let t = TruncationSet::full(7);
        let w = WittVector::teichmuller(Integers, t, BigInt::from(3));
        let f2 = witt_frobenius(2, &w).unwrap();
        let expect = WittVector::teichmuller(Integers, TruncationSet::full(4), BigInt::from(9));
        assert_eq!(f2, expect);
    }

    #[test]
    fn verschiebung_ghost_side() {
        let t = TruncationSet::full(5);
        let g = gz(&[1, 2], &[7, 11]);
        let v = g.verschiebung(2, &t).unwrap();
        assert_eq!(v, gz(&[1, 2, 3, 4], &[0, 14, 0, 22]));
    }

    #[test]
    fn frobenius_verschiebung_composite() {
        // F_k V_k = k, on both representations
        let t = TruncationSet::full(9);
        let small = t.quotient(2);
        let g = GhostVector::new(
            Integers,
            small.clone(),
            small.members().iter().map(|&n| BigInt::from(n as i64 + 5)).collect(),
        )
        .unwrap();
        let fv = g.verschiebung(2, &t).unwrap().frobenius(2);
        let doubled = g.map_entries(|_, e| Integers.mul(&BigInt::from(2), e));
        assert_eq!(fv, doubled);

        let w = WittVector::new(
            Integers,
            small.clone(),
            small.members().iter().map(|&n| BigInt::from(n as i64 - 3)).collect(),
        )
        .unwrap();
        let wfv = witt_frobenius(2, &witt_verschiebung(2, &w, &t).unwrap()).unwrap();
        let two = WittVector::teichmuller(Integers, small.clone(), BigInt::from(1));
        let two = witt_add(&two, &two).unwrap();
        assert_eq!(wfv, witt_mul(&two, &w).unwrap());
    }

    #[test]
    fn t_l_examples() {
        let g = gz(&[1, 2, 3, 4, 5, 6], &[1, 2, 3, 4, 5, 6]);
        // l = 3: b_n = a_{n/3} when 3 | n
        let t3 = g.t_l(3, &ps(&[2])).unwrap();
        assert_eq!(t3, gz(&[1, 2, 3, 4, 5, 6], &[1, 2, 1, 4, 5, 2]));
        // l in S rejected
        assert!(g.t_l(2, &ps(&[2])).is_err());
        // T_l T_l' = T_l' T_l
        let a = g.t_l(3, &ps(&[2])).unwrap().t_l(5, &ps(&[2])).unwrap();
        let b = g.t_l(5, &ps(&[2])).unwrap().t_l(3, &ps(&[2])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn phi_s_ghost_formulas_agree() {
        let g = gz(&[1, 2, 3, 4, 5, 6], &[11, 22, 33, 44, 55, 66]);
        let p = ps(&[2]);
        let direct = g.phi_s(&p);
        assert_eq!(direct, gz(&[1, 2, 3, 4, 5, 6], &[11, 22, 11, 44, 11, 22]));
        assert_eq!(g.phi_s_stationary_limit(&p).unwrap(), direct);
        // double-sum formula needs inverses of numbers prime to S
        let zs = SLocalIntegers::new(p.clone());
        let gq = GhostVector::new(
            zs,
            g.trunc.clone(),
            g.entries().iter().map(|e| num::BigRational::from(e.clone())).collect(),
        )
        .unwrap();
        let ds = gq.phi_s_double_sum(&p).unwrap();
        let direct_q = gq.phi_s(&p);
        assert_eq!(ds, direct_q);
        // idempotent
        assert_eq!(direct.phi_s(&p), direct);
    }

    #[test]
    fn phi_s_witt_on_teichmuller() {
        // P = {2}, T = {1,2,3}: phi_S(<r>) has ghost (r, r^2, r) and
        // components (r, 0, (r - r^3)/3)
        let p = ps(&[2]);
        let zs = SLocalIntegers::new(p.clone());
        let ring = PolynomialRing::new(zs, vec!["r".into()]);
        let t = TruncationSet::full(4);
        let w = WittVector::teichmuller(ring.clone(), t, ring.var(0));
        let out = phi_s_witt(&w, &p).unwrap();
        let g = out.ghost();
        assert_eq!(ring.render(g.entry(1).unwrap()), "r");
        assert_eq!(ring.render(g.entry(2).unwrap()), "r^2");
        assert_eq!(ring.render(g.entry(3).unwrap()), "r");
        assert_eq!(ring.render(out.component(1).unwrap()), "r");
        assert_eq!(ring.render(out.component(2).unwrap()), "0");
        assert_eq!(ring.render(out.component(3).unwrap()), "-1/3*r^3 + 1/3*r");
    }

    #[test]
    fn phi_bar_splits_the_projection() {
        let p = ps(&[3]);
        let zs = SLocalIntegers::new(p.clone());
        let bound = 7;
        let s_n = p.s_truncation(bound);
        let w = WittVector::new(
            zs,
            s_n.clone(),
            vec![
                num::BigRational::from(BigInt::from(4)),
                num::BigRational::from(BigInt::from(-2)),
            ],
        )
        .unwrap();
        let lifted = phi_bar(&w, &p, bound).unwrap();
        assert_eq!(lifted.trunc, TruncationSet::full(bound));
        assert_eq!(lifted.project(&s_n).unwrap(), w);
    }

    #[test]
    fn phi_bar_trivial_bound() {
        let p = ps(&[2]);
        let zs = SLocalIntegers::new(p.clone());
        let s2 = p.s_truncation(2);
        let w = WittVector::new(zs, s2, vec![num::BigRational::from(BigInt::from(9))]).unwrap();
        let out = phi_bar(&w, &p, 2).unwrap();
        assert_eq!(out, w);
    }

    #[test]
    fn lambda_series_round_trip() {
        let w = wz(&[1, 2], &[1, 1]);
        let s = witt_to_lambda(&w).unwrap();
        // (1-t)(1-t^2) = 1 - t - t^2 mod t^3
        assert_eq!(s.render("t"), "1 - t - t^2");
        assert_eq!(lambda_to_witt(&s), w);

        let w2 = wz(&[1, 2, 3, 4, 5], &[2, -3, 0, 7, -1]);
        assert_eq!(lambda_to_witt(&witt_to_lambda(&w2).unwrap()), w2);

        let single = wz(&[1], &[5]);
        assert_eq!(witt_to_lambda(&single).unwrap().render("t"), "1 - 5*t");
    }

    #[test]
    fn log_derivative_is_ghost() {
        // 1 - a t has ghost (a, a^2, a^3, ...); and in general the
        // log-derivative recovers the ghost map
        let zq = SLocalIntegers::rationals();
        let a = num::BigRational::from(BigInt::from(3));
        let mut coeffs = vec![zq.zero(); 5];
        coeffs[0] = zq.neg(&a);
        let s = LambdaSeries::new(zq.clone(), 6, coeffs).unwrap();
        let g = s.log_derivative();
        for n in 1..=5u64 {
            assert_eq!(*g.entry(n).unwrap(), zq.pow(&a, n));
        }

        let w = WittVector::new(
            zq.clone(),
            TruncationSet::full(7),
            [2i64, -1, 3, 0, 5, -2]
                .iter()
                .map(|&c| num::BigRational::from(BigInt::from(c)))
                .collect(),
        )
        .unwrap();
        assert_eq!(witt_to_lambda(&w).unwrap().log_derivative(), w.ghost());
    }

    #[test]
    fn lambda_transport_of_addition_and_multiplication() {
        let zq = SLocalIntegers::rationals();
        let mk = |comps: &[i64]| {
            WittVector::new(
                zq.clone(),
                TruncationSet::full(6),
                comps.iter().map(|&c| num::BigRational::from(BigInt::from(c))).collect(),
            )
            .unwrap()
        };
        let u = mk(&[1, -2, 0, 3, 1]);
        let v = mk(&[2, 1, -1, 0, 4]);
        // addition transports to series multiplication
        let sum = witt_add(&u, &v).unwrap();
        let via_series = witt_to_lambda(&u)
            .unwrap()
            .series_mul(&witt_to_lambda(&v).unwrap())
            .unwrap();
        assert_eq!(witt_to_lambda(&sum).unwrap(), via_series);
        // multiplication transports to the Hadamard product on ghost entries
        let prod = witt_mul(&u, &v).unwrap();
        let hadamard = u.ghost().mul(&v.ghost()).unwrap();
        assert_eq!(witt_to_lambda(&prod).unwrap().log_derivative(), hadamard);
    }
}
