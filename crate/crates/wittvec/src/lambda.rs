//! Lambda-ring structure from commuting Frobenius lifts: Adams operations,
//! the tau exponents, the Newton-identity construction of the lambda
//! operations, their explicit binomial formula, the associated series, and
//! the Dwork product.

use num::BigInt;

use crate::error::LambdaError;
use crate::rings::{
    MonoidAlgebra, MonoidOps, MultiPoly, PolynomialRing, RationalExtension, Ring, SLocalIntegers,
};
use crate::trunc::{divisors, moebius, ord_p, s_partitions, PrimeSet, TruncationSet};
use crate::witt::{witt_to_lambda, GhostVector, LambdaSeries, WittVector};

/// A family of commuting Frobenius lifts on a base ring, one per prime of S,
/// given by their action on generators.
pub trait FrobeniusLift<B: Ring>: Clone {
    fn apply(&self, ring: &B, p: u64, x: &B::Elem) -> B::Elem;
}

/// Lifts on a polynomial ring, specified by variable images per prime.
#[derive(Debug, Clone)]
pub struct PolySubstitution<C: Ring> {
    images: std::collections::BTreeMap<u64, Vec<MultiPoly<C>>>,
}

impl<C: Ring> PolySubstitution<C> {
    pub fn new(images: std::collections::BTreeMap<u64, Vec<MultiPoly<C>>>) -> Self {
        PolySubstitution { images }
    }

    /// The classical power lift: each variable maps to its p-th power.
    pub fn power_lifts(ring: &PolynomialRing<C>, primes: &PrimeSet) -> Self {
        let mut images = std::collections::BTreeMap::new();
        for &p in primes.primes() {
            images.insert(
                p,
                (0..ring.nvars()).map(|i| ring.pow(&ring.var(i), p)).collect(),
            );
        }
        PolySubstitution { images }
    }
}

impl<C: Ring> FrobeniusLift<PolynomialRing<C>> for PolySubstitution<C> {
    fn apply(&self, ring: &PolynomialRing<C>, p: u64, x: &MultiPoly<C>) -> MultiPoly<C> {
        let images = self
            .images
            .get(&p)
            .unwrap_or_else(|| panic!("no Frobenius lift for prime {p}"));
        ring.substitute(x, images)
    }
}

/// The canonical lifts on a monoid algebra: [r] maps to [r^p], coefficients
/// untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct MonoidPowerLift;

impl<C: Ring, M: MonoidOps> FrobeniusLift<MonoidAlgebra<C, M>> for MonoidPowerLift {
    fn apply(
        &self,
        ring: &MonoidAlgebra<C, M>,
        p: u64,
        x: &crate::rings::MonElem<C, M>,
    ) -> crate::rings::MonElem<C, M> {
        let mut out = ring.zero();
        for (r, c) in &x.terms {
            let mut term = ring.bracket(ring.monoid.pow(r, p));
            term.terms.values_mut().for_each(|v| *v = c.clone());
            out = ring.add(&out, &term);
        }
        out
    }
}

/// A prime set together with commuting Frobenius lifts on a torsion-free
/// base ring. Validity (commutation and the mod-p congruence) is checked on
/// the supplied witness elements at construction.
#[derive(Debug, Clone)]
pub struct AdamsContext<B: RationalExtension, L: FrobeniusLift<B>> {
    pub ring: B,
    pub primes: PrimeSet,
    lifts: L,
}

impl<B: RationalExtension, L: FrobeniusLift<B>> AdamsContext<B, L> {
    pub fn new(
        ring: B,
        primes: PrimeSet,
        lifts: L,
        witnesses: &[B::Elem],
    ) -> Result<Self, LambdaError> {
        if !ring.is_torsion_free() {
            return Err(LambdaError::Precondition(
                "base ring must be Z-torsion-free".into(),
            ));
        }
        let ctx = AdamsContext { ring, primes, lifts };
        ctx.check_lifts(witnesses)?;
        Ok(ctx)
    }

    fn check_lifts(&self, witnesses: &[B::Elem]) -> Result<(), LambdaError> {
        let r = &self.ring;
        // include pairwise products of the witnesses
        let mut elems: Vec<B::Elem> = witnesses.to_vec();
        for i in 0..witnesses.len() {
            for j in i..witnesses.len() {
                elems.push(r.mul(&witnesses[i], &witnesses[j]));
            }
        }
        for &p in self.primes.primes() {
            for b in &elems {
                let psi = self.lifts.apply(r, p, b);
                let diff = r.sub(&psi, &r.pow(b, p));
                if r.exact_div_int(&diff, &BigInt::from(p)).is_err() {
                    return Err(LambdaError::BadLifts(format!(
                        "Frobenius congruence fails mod {p} on {}",
                        r.render(b)
                    )));
                }
            }
            for &q in self.primes.primes() {
                if q <= p {
                    continue;
                }
                for b in &elems {
                    let pq = self.lifts.apply(r, p, &self.lifts.apply(r, q, b));
                    let qp = self.lifts.apply(r, q, &self.lifts.apply(r, p, b));
                    if pq != qp {
                        return Err(LambdaError::BadLifts(format!(
                            "lifts for {p} and {q} do not commute on {}",
                            r.render(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// psi^n = product over p in S of the p-lift applied ord_p(n) times;
    /// primes outside S act as the identity, so psi^n = psi^{n_S}.
    pub fn adams(&self, n: u64, x: &B::Elem) -> B::Elem {
        assert!(n >= 1);
        let mut out = x.clone();
        for &p in self.primes.primes() {
            for _ in 0..ord_p(n, p) {
                out = self.lifts.apply(&self.ring, p, &out);
            }
        }
        out
    }

    /// tau_k(x) = k^{-1} sum over d | k of mu(d) psi^{k/d}(x), in the
    /// rational extension of the base.
    pub fn tau(&self, k: u64, x: &B::Elem) -> <B::Ext as Ring>::Elem {
        assert!(k >= 1);
        let ext = self.ring.rational_extension();
        let mut acc = ext.zero();
        for d in divisors(k) {
            let mu = moebius(d);
            if mu == 0 {
                continue;
            }
            let term = ext.mul(
                &ext.from_i64(mu),
                &self.ring.embed(&self.adams(k / d, x)),
            );
            acc = ext.add(&acc, &term);
        }
        let inv_k = ext.invert_int(&BigInt::from(k)).expect("k invertible in B tensor Q");
        ext.mul(&inv_k, &acc)
    }

    /// lambda^0 .. lambda^n of x by the Newton-identity recursion
    /// n lambda^n = sum_{i=1..n} (-1)^{i-1} lambda^{n-i} psi^i(x).
    pub fn lambda_ops(&self, x: &B::Elem, n_max: u64) -> Result<Vec<B::Elem>, LambdaError> {
        let r = &self.ring;
        let mut lams = vec![r.one()];
        let psis: Vec<B::Elem> = (1..=n_max).map(|i| self.adams(i, x)).collect();
        for n in 1..=n_max {
            let mut acc = r.zero();
            for i in 1..=n {
                let term = r.mul(&lams[(n - i) as usize], &psis[(i - 1) as usize]);
                acc = if i % 2 == 1 {
                    r.add(&acc, &term)
                } else {
                    r.sub(&acc, &term)
                };
            }
            let lam = r.exact_div_int(&acc, &BigInt::from(n)).map_err(|e| {
                LambdaError::Ring(crate::error::RingError::NotDivisible(format!(
                    "lambda^{n} of {}: {e} (falsified Frobenius congruence?)",
                    r.render(x)
                )))
            })?;
            lams.push(lam);
        }
        Ok(lams)
    }

    /// lambda^n via the Newton recursion.
    pub fn lambda_wilkerson(&self, n: u64, x: &B::Elem) -> Result<B::Elem, LambdaError> {
        Ok(self.lambda_ops(x, n)?.pop().unwrap())
    }

    /// lambda^n via the explicit binomial formula
    /// (-1)^n lambda^n(x) = sum over ||nu|| = n of (-1)^|nu| C(tau(x), nu),
    /// computed in the rational extension and retracted.
    pub fn lambda_explicit(&self, n: u64, x: &B::Elem) -> Result<B::Elem, LambdaError> {
        assert!(n >= 1);
        let ext = self.ring.rational_extension();
        // binomial tables C(tau_k(x), j) for every S-smooth part k <= n
        let parts: Vec<u64> = (1..=n).filter(|&k| self.primes.is_smooth(k)).collect();
        let mut binom: std::collections::BTreeMap<u64, Vec<<B::Ext as Ring>::Elem>> =
            Default::default();
        for &k in &parts {
            let tau_k = self.tau(k, x);
            let max_j = n / k;
            binom.insert(k, binomial_table(&ext, &tau_k, max_j));
        }
        let mut acc = ext.zero();
        for nu in s_partitions(n, &self.primes) {
            let mut term = ext.one();
            for (&k, &mult) in nu.entries() {
                term = ext.mul(&term, &binom[&k][mult as usize]);
            }
            if nu.size() % 2 == 1 {
                acc = ext.sub(&acc, &term);
            } else {
                acc = ext.add(&acc, &term);
            }
        }
        if n % 2 == 1 {
            acc = ext.neg(&acc);
        }
        self.ring
            .retract(&acc)
            .map_err(|e| LambdaError::Ring(e))
    }

    /// The series 1 - lambda^1(x) t + lambda^2(x) t^2 - ... mod t^N, computed
    /// both from the lambda operations and from the product form
    /// prod over k in S of (1 - t^k)^{tau_k(x)}, asserted equal.
    pub fn lambda_series(&self, x: &B::Elem, precision: u64) -> Result<LambdaSeries<B>, LambdaError> {
        let r = &self.ring;
        let lams = self.lambda_ops(x, precision.saturating_sub(1))?;
        let coeffs: Vec<B::Elem> = (1..precision)
            .map(|i| {
                let l = &lams[i as usize];
                if i % 2 == 1 {
                    r.neg(l)
                } else {
                    l.clone()
                }
            })
            .collect();
        let series = LambdaSeries::new(r.clone(), precision, coeffs)?;
        let product = self.lambda_series_product_form(x, precision)?;
        if product != series {
            return Err(LambdaError::DualPath(format!(
                "lambda series coefficient form and product form differ for {}",
                r.render(x)
            )));
        }
        Ok(series)
    }

    /// The product form of the lambda series, expanded by binomial series in
    /// the rational extension and retracted coefficientwise.
    pub fn lambda_series_product_form(
        &self,
        x: &B::Elem,
        precision: u64,
    ) -> Result<LambdaSeries<B>, LambdaError> {
        let ext = self.ring.rational_extension();
        let n = precision as usize;
        let mut dense = vec![ext.zero(); n];
        dense[0] = ext.one();
        for k in 1..precision {
            if !self.primes.is_smooth(k) {
                continue;
            }
            let tau_k = self.tau(k, x);
            // (1 - t^k)^{tau_k} = sum_j C(tau_k, j) (-1)^j t^{kj}
            let max_j = (precision - 1) / k;
            let binoms = binomial_table(&ext, &tau_k, max_j);
            let mut factor = vec![ext.zero(); n];
            for (j, b) in binoms.iter().enumerate() {
                let idx = (k as usize) * j;
                if idx >= n {
                    break;
                }
                factor[idx] = if j % 2 == 1 { ext.neg(b) } else { b.clone() };
            }
            dense = dense_mul_ext(&ext, &dense, &factor, n);
        }
        let coeffs = dense[1..]
            .iter()
            .map(|c| self.ring.retract(c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(LambdaError::Ring)?;
        Ok(LambdaSeries::new(self.ring.clone(), precision, coeffs)?)
    }

    /// Ghost entries (psi^n(x)) for n = 1 .. N-1.
    pub fn psi_series(&self, x: &B::Elem, precision: u64) -> GhostVector<B> {
        let full = TruncationSet::full(precision);
        let entries = full.members().iter().map(|&n| self.adams(n, x)).collect();
        GhostVector::new(self.ring.clone(), full, entries).expect("length matches")
    }

    /// The same entries by the resummation sum_k tau_k(x) k t^k / (1 - t^k),
    /// whose coefficient of t^n is sum over k | n of k tau_k(x).
    pub fn psi_series_resummed(
        &self,
        x: &B::Elem,
        precision: u64,
    ) -> Result<GhostVector<B>, LambdaError> {
        let ext = self.ring.rational_extension();
        let full = TruncationSet::full(precision);
        let entries = full
            .members()
            .iter()
            .map(|&n| {
                let mut acc = ext.zero();
                for k in divisors(n) {
                    let term = ext.mul(&ext.from_i64(k as i64), &self.tau(k, x));
                    acc = ext.add(&acc, &term);
                }
                self.ring.retract(&acc)
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(LambdaError::Ring)?;
        Ok(GhostVector::new(self.ring.clone(), full, entries)?)
    }

    /// The unique ring homomorphism into W_{S_N}(B) whose ghost entries are
    /// (psi^n(x)) for n in S_N.
    pub fn alpha_tilde(&self, x: &B::Elem, bound: u64) -> Result<WittVector<B>, LambdaError> {
        let s_n = self.primes.s_truncation(bound);
        let entries = s_n.members().iter().map(|&n| self.adams(n, x)).collect();
        let g = GhostVector::new(self.ring.clone(), s_n, entries)?;
        Ok(g.to_witt()?)
    }
}

/// C(x, 0), C(x, 1), ..., C(x, max_j) with C(x, j) = x(x-1)...(x-j+1)/j!.
pub fn binomial_table<E: Ring>(ext: &E, x: &E::Elem, max_j: u64) -> Vec<E::Elem> {
    let mut out = vec![ext.one()];
    let mut rising = ext.one();
    for j in 1..=max_j {
        // multiply by (x - (j-1)) and divide by j
        rising = ext.mul(&rising, &ext.sub(x, &ext.from_i64(j as i64 - 1)));
        rising = ext
            .exact_div_int(&rising, &BigInt::from(j))
            .expect("division is exact in the rational extension");
        out.push(rising.clone());
    }
    out
}

/// C(x, k) in the rational extension of a torsion-free ring.
pub fn binomial<B: RationalExtension>(
    base: &B,
    x: &B::Elem,
    k: u64,
) -> <B::Ext as Ring>::Elem {
    let ext = base.rational_extension();
    binomial_table(&ext, &base.embed(x), k).pop().unwrap()
}

fn dense_mul_ext<E: Ring>(r: &E, a: &[E::Elem], b: &[E::Elem], n: usize) -> Vec<E::Elem> {
    let mut out = vec![r.zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if r.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] = r.add(&out[i + j], &r.mul(ai, bj));
        }
    }
    out
}

/// The base ring Z_S[X] with the power Frobenius lift, for a single prime.
pub type DworkRing = PolynomialRing<SLocalIntegers>;

/// Output of the Dwork product computation.
pub struct DworkProduct {
    pub ctx: AdamsContext<DworkRing, PolySubstitution<SLocalIntegers>>,
    /// lambda_S(X) mod t^N over Z_S[X].
    pub lambda_series: LambdaSeries<DworkRing>,
    /// F(X, t) = lambda_S(X) with t -> -t.
    pub f_series: LambdaSeries<DworkRing>,
}

/// Computes lambda_S(X) and F(X, t) mod t^N for B = Z_S[X] with S generated
/// by the single odd prime p and the lift X -> X^p. Certifies p-integrality
/// of all coefficients and checks F(X, -t) against the splitting of the
/// Teichmuller representative.
pub fn dwork_product(p: u64, precision: u64) -> Result<DworkProduct, LambdaError> {
    if p == 2 {
        return Err(LambdaError::Precondition(
            "the Dwork product relation is stated for odd primes only".into(),
        ));
    }
    let primes = PrimeSet::new(vec![p]).map_err(|e| LambdaError::Ring(e))?;
    let base = SLocalIntegers::new(primes.clone());
    let ring = PolynomialRing::new(base, vec!["X".into()]);
    let lifts = PolySubstitution::power_lifts(&ring, &primes);
    let x = ring.var(0);
    let witnesses = vec![x.clone(), ring.add(&x, &ring.one())];
    let ctx = AdamsContext::new(ring.clone(), primes.clone(), lifts, &witnesses)?;

    // dual-path checked internally; retraction into Z_S[X] certifies
    // p-integrality of every coefficient
    let lambda_series = ctx.lambda_series(&x, precision)?;
    let f_series = lambda_series.alternate();

    // F(X, -t) is the image of <X> under the splitting of W_N -> W_{S_N}
    let teich = WittVector::teichmuller(ring.clone(), primes.s_truncation(precision), x);
    let lifted = crate::witt::phi_bar(&teich, &primes, precision)?;
    let via_witt = witt_to_lambda(&lifted)?;
    if via_witt != lambda_series {
        return Err(LambdaError::DualPath(
            "Dwork product disagrees with the Teichmuller splitting".into(),
        ));
    }
    Ok(DworkProduct {
        ctx,
        lambda_series,
        f_series,
    })
}

/// p-integrality check used by the CLI and tests: every coefficient of every
/// t-degree has a denominator prime to p. Coefficients live in Z_S[X] by
/// construction; this verifies the raw rational data rather than trusting
/// the type.
pub fn dwork_coefficients_p_integral(d: &DworkProduct) -> bool {
    use num::Zero;
    let p = BigInt::from(d.ctx.primes.primes()[0]);
    d.f_series.coeffs().iter().all(|c| {
        c.terms.values().all(|q| !(q.denom() % &p).is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{Residue, TableMonoid};
    use num::{BigRational, One, Zero};

    fn ps(primes: &[u64]) -> PrimeSet {
        PrimeSet::new(primes.to_vec()).unwrap()
    }

    fn poly_ctx(primes: &[u64]) -> AdamsContext<DworkRing, PolySubstitution<SLocalIntegers>> {
        let p = ps(primes);
        let base = SLocalIntegers::new(p.clone());
        let ring = PolynomialRing::new(base, vec!["X".into()]);
        let lifts = PolySubstitution::power_lifts(&ring, &p);
        let x = ring.var(0);
        let w = vec![x.clone(), ring.add(&x, &ring.from_i64(2))];
        AdamsContext::new(ring, p, lifts, &w).unwrap()
    }

    fn monoid_ctx(
        modulus: u64,
        primes: &[u64],
    ) -> AdamsContext<MonoidAlgebra<SLocalIntegers, TableMonoid>, MonoidPowerLift> {
        let p = ps(primes);
        let target = Residue::new(modulus).unwrap();
        let (monoid, _) = TableMonoid::from_residue_ring(&target);
        let ring = MonoidAlgebra::new(SLocalIntegers::new(p.clone()), monoid);
        let w: Vec<_> = (0..modulus.min(4)).map(|i| ring.bracket(i as usize)).collect();
        AdamsContext::new(ring, p, MonoidPowerLift, &w).unwrap()
    }

    #[test]
    fn adams_basics() {
        let ctx = poly_ctx(&[2]);
        let r = ctx.ring.clone();
        let x = r.var(0);
        assert_eq!(ctx.adams(1, &x), x);
        // psi^6(X) = X^{6_S} = X^2 for S generated by 2
        assert_eq!(ctx.adams(6, &x), r.pow(&x, 2));
        // psi^n psi^m = psi^{nm}
        let e = r.add(&r.pow(&x, 2), &r.from_i64(3));
        for (n, m) in [(2, 3), (4, 2), (6, 4)] {
            assert_eq!(ctx.adams(n, &ctx.adams(m, &e)), ctx.adams(n * m, &e));
        }
    }

    #[test]
    fn adams_on_monoid_algebra() {
        let ctx = monoid_ctx(9, &[2]);
        let r = ctx.ring.clone();
        let x = r.bracket(2);
        // psi^6([2]) = [2]^2 = [4]
        assert_eq!(ctx.adams(6, &x), r.bracket(4));
    }

    #[test]
    fn tau_examples() {
        let ctx = poly_ctx(&[2]);
        let r = ctx.ring.clone();
        let ext = r.rational_extension();
        let x = r.var(0);
        // tau_1 = x
        assert_eq!(ctx.tau(1, &x), r.embed(&x));
        // tau_2(X) = (X^2 - X)/2
        let expect = ext
            .exact_div_int(&ext.sub(&ext.pow(&r.embed(&x), 2), &r.embed(&x)), &BigInt::from(2))
            .unwrap();
        assert_eq!(ctx.tau(2, &x), expect);
        // tau_4 = (psi^4 - psi^2)/4
        let expect4 = ext
            .exact_div_int(
                &ext.sub(&ext.pow(&r.embed(&x), 4), &ext.pow(&r.embed(&x), 2)),
                &BigInt::from(4),
            )
            .unwrap();
        assert_eq!(ctx.tau(4, &x), expect4);
    }

    #[test]
    fn tau_on_teichmuller_monoid() {
        let ctx = monoid_ctx(9, &[2]);
        let r = ctx.ring.clone();
        let ext = r.rational_extension();
        let x = r.bracket(2);
        // tau_2([r]) = ([r^2] - [r])/2
        let expect = ext
            .exact_div_int(&ext.sub(&r.embed(&r.bracket(4)), &r.embed(&x)), &BigInt::from(2))
            .unwrap();
        assert_eq!(ctx.tau(2, &x), expect);
    }

    #[test]
    fn wilkerson_small_cases() {
        let ctx = poly_ctx(&[2]);
        let r = ctx.ring.clone();
        let x = r.var(0);
        let lams = ctx.lambda_ops(&x, 2).unwrap();
        assert!(r.is_one(&lams[0]));
        assert_eq!(lams[1], x);
        // lambda^2(x) = (x^2 - psi^2 x)/2 = (X^2 - X^2)/2 = 0
        assert!(r.is_zero(&lams[2]));

        // over P={3}: psi^2 = id so lambda^2(X) = (X^2 - X)/2
        let ctx3 = poly_ctx(&[3]);
        let r3 = ctx3.ring.clone();
        let x3 = r3.var(0);
        let l2 = ctx3.lambda_wilkerson(2, &x3).unwrap();
        assert_eq!(r3.render(&l2), "1/2*X^2 - 1/2*X");
    }

    #[test]
    fn lambda_of_teichmuller_vanishes() {
        // [r]^2 = [r^2] = psi^2[r], so lambda^2([r]) = 0
        let ctx = monoid_ctx(9, &[2]);
        let x = ctx.ring.bracket(2);
        assert!(ctx.ring.is_zero(&ctx.lambda_wilkerson(2, &x).unwrap()));
    }

    #[test]
    fn explicit_matches_wilkerson() {
        let ctx = poly_ctx(&[2]);
        let r = ctx.ring.clone();
        let x = r.var(0);
        let e = r.add(&r.mul(&r.from_i64(2), &x), &r.pow(&x, 2));
        for n in 1..=6 {
            assert_eq!(
                ctx.lambda_explicit(n, &e).unwrap(),
                ctx.lambda_wilkerson(n, &e).unwrap(),
                "n = {n}"
            );
        }
        let ctxm = monoid_ctx(4, &[2]);
        let rm = ctxm.ring.clone();
        let em = rm.sub(&rm.bracket(3), &rm.mul(&rm.from_i64(2), &rm.bracket(2)));
        for n in 1..=5 {
            assert_eq!(
                ctxm.lambda_explicit(n, &em).unwrap(),
                ctxm.lambda_wilkerson(n, &em).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn lambda_series_is_additive() {
        let ctx = poly_ctx(&[2]);
        let r = ctx.ring.clone();
        let x = r.var(0);
        let y = r.sub(&r.pow(&x, 2), &r.from_i64(3));
        let sx = ctx.lambda_series(&x, 7).unwrap();
        let sy = ctx.lambda_series(&y, 7).unwrap();
        let sxy = ctx.lambda_series(&r.add(&x, &y), 7).unwrap();
        assert_eq!(sx.series_mul(&sy).unwrap(), sxy);
        // lambda_S(0) = 1
        let s0 = ctx.lambda_series(&r.zero(), 7).unwrap();
        assert_eq!(s0, LambdaSeries::one(r, 7));
    }

    #[test]
    fn psi_is_log_derivative_of_lambda_series() {
        let ctx = poly_ctx(&[2]);
        let r = ctx.ring.clone();
        let x = r.var(0);
        let s = ctx.lambda_series(&x, 9).unwrap();
        assert_eq!(s.log_derivative(), ctx.psi_series(&x, 9));
    }

    #[test]
    fn resummation_identity() {
        for ctx in [poly_ctx(&[2]), poly_ctx(&[3]), poly_ctx(&[2])] {
            let r = ctx.ring.clone();
            let x = r.var(0);
            let e = r.add(&r.pow(&x, 2), &r.neg(&x));
            assert_eq!(ctx.psi_series_resummed(&e, 12).unwrap(), ctx.psi_series(&e, 12));
        }
    }

    #[test]
    fn alpha_tilde_of_teichmuller() {
        let ctx = monoid_ctx(9, &[3]);
        let r = ctx.ring.clone();
        let x = r.bracket(2);
        let w = ctx.alpha_tilde(&x, 10).unwrap();
        let expect = WittVector::teichmuller(r.clone(), ctx.primes.s_truncation(10), x);
        assert_eq!(w, expect);
    }

    #[test]
    fn alpha_tilde_is_additive_and_multiplicative() {
        let ctx = poly_ctx(&[2]);
        let r = ctx.ring.clone();
        let x = r.var(0);
        let y = r.add(&r.pow(&x, 2), &r.from_i64(1));
        let ax = ctx.alpha_tilde(&x, 9).unwrap();
        let ay = ctx.alpha_tilde(&y, 9).unwrap();
        let asum = ctx.alpha_tilde(&r.add(&x, &y), 9).unwrap();
        let aprod = ctx.alpha_tilde(&r.mul(&x, &y), 9).unwrap();
        assert_eq!(crate::witt::witt_add(&ax, &ay).unwrap(), asum);
        assert_eq!(crate::witt::witt_mul(&ax, &ay).unwrap(), aprod);
    }

    #[test]
    fn diagram_through_the_splitting() {
        // phi_bar(alpha_tilde(x)) corresponds to lambda_S(x)
        let ctx = poly_ctx(&[3]);
        let r = ctx.ring.clone();
        let x = r.var(0);
        let e = r.add(&x, &r.from_i64(2));
        let bound = 8;
        let a = ctx.alpha_tilde(&e, bound).unwrap();
        let lifted = crate::witt::phi_bar(&a, &ctx.primes, bound).unwrap();
        assert_eq!(witt_to_lambda(&lifted).unwrap(), ctx.lambda_series(&e, bound).unwrap());
    }

    #[test]
    fn rejects_bad_lifts() {
        let p = ps(&[2]);
        let base = SLocalIntegers::new(p.clone());
        let ring = PolynomialRing::new(base, vec!["X".into()]);
        // X -> X + 1 is not a Frobenius lift for 2
        let mut images = std::collections::BTreeMap::new();
        images.insert(2, vec![ring.add(&ring.var(0), &ring.one())]);
        let bad = PolySubstitution::new(images);
        let x = ring.var(0);
        assert!(matches!(
            AdamsContext::new(ring.clone(), p, bad, &[x]),
            Err(LambdaError::BadLifts(_))
        ));
    }

    #[test]
    fn binomial_examples() {
        let zq = SLocalIntegers::rationals();
        let x = BigRational::from(BigInt::from(7));
        assert!(binomial_table(&zq, &x, 0)[0].is_one());
        assert_eq!(binomial_table(&zq, &x, 1)[1], x);
        // C(7, 2) = 21
        assert_eq!(binomial_table(&zq, &x, 2)[2], BigRational::from(BigInt::from(21)));
        // C(X, 2) = (X^2 - X)/2 symbolically
        let ring = PolynomialRing::new(crate::rings::Integers, vec!["X".into()]);
        let sym = binomial(&ring, &ring.var(0), 2);
        let ext = ring.rational_extension();
        assert_eq!(ext.render(&sym), "1/2*X^2 - 1/2*X");
        let _ = BigRational::zero();
    }

    #[test]
    fn dwork_product_small() {
        let d = dwork_product(3, 4).unwrap();
        let ring = &d.ctx.ring;
        // coefficient of t^1 in F(X, t) is X
        assert_eq!(ring.render(d.f_series.coeff(1)), "X");
        // coefficient of t^3 in F(X, t) is (X^3 - X^2)/2
        assert_eq!(ring.render(d.f_series.coeff(3)), "1/2*X^3 - 1/2*X^2");
        assert!(dwork_coefficients_p_integral(&d));
        assert!(dwork_product(2, 4).is_err());
    }
}
