//! The map alpha_{S_N} : B -> W_{S_N}(R) and kernel-membership tests: the
//! lambda criterion, the ghost criterion for torsion-free targets, direct
//! evaluation, and the augmentation-ideal-power oracle for perfect F_p
//! targets.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{KernelError, RingError};
use crate::lambda::{AdamsContext, FrobeniusLift};
use crate::rings::{
    v_p_rational, MonElem, MonoidAlgebra, MultiPoly, PolynomialRing, RationalExtension, Residue,
    Ring, RingMulMonoid, SLocalIntegers, TableMonoid,
};
use crate::trunc::{is_prime, PrimeSet};
use crate::witt::WittVector;

/// Targets that can certify being an algebra over the S-local integers.
pub trait ZsAlgebra: Ring {
    fn zs_algebra_ok(&self, primes: &PrimeSet) -> bool;
}

impl ZsAlgebra for Residue {
    fn zs_algebra_ok(&self, primes: &PrimeSet) -> bool {
        self.is_zs_algebra(primes)
    }
}

impl ZsAlgebra for SLocalIntegers {
    // Z_{S'} receives Z_S exactly when S' is contained in S.
    fn zs_algebra_ok(&self, primes: &PrimeSet) -> bool {
        self.primes().primes().iter().all(|&p| primes.contains(p))
    }
}

impl<C: ZsAlgebra> ZsAlgebra for PolynomialRing<C> {
    fn zs_algebra_ok(&self, primes: &PrimeSet) -> bool {
        self.base.zs_algebra_ok(primes)
    }
}

/// A ring homomorphism B -> R, specified on generators.
pub trait RingMap<B: Ring, R: Ring>: Clone {
    fn apply(&self, base: &B, target: &R, x: &B::Elem) -> Result<R::Elem, RingError>;

    /// Spot-check that the data defines a homomorphism.
    fn validate(&self, _base: &B, _target: &R) -> Result<(), KernelError> {
        Ok(())
    }
}

/// The augmentation Z_S R -> R for a tabulated finite monoid: [r] maps to
/// the residue `values[r]`.
#[derive(Debug, Clone)]
pub struct TableAugmentation {
    pub values: Vec<u64>,
}

impl RingMap<MonoidAlgebra<SLocalIntegers, TableMonoid>, Residue> for TableAugmentation {
    fn apply(
        &self,
        base: &MonoidAlgebra<SLocalIntegers, TableMonoid>,
        target: &Residue,
        x: &MonElem<SLocalIntegers, TableMonoid>,
    ) -> Result<u64, RingError> {
        base.augment(x, target, &|r| self.values[*r] % target.modulus(), &|c| {
            target.from_rational(c)
        })
    }

    fn validate(
        &self,
        base: &MonoidAlgebra<SLocalIntegers, TableMonoid>,
        target: &Residue,
    ) -> Result<(), KernelError> {
        let m = &base.monoid;
        if self.values.len() != m.len() {
            return Err(KernelError::Inapplicable(format!(
                "{} images for a monoid of size {}",
                self.values.len(),
                m.len()
            )));
        }
        if self.values[crate::rings::MonoidOps::unit(m)] % target.modulus() != target.one() {
            return Err(KernelError::Inapplicable("unit does not map to 1".into()));
        }
        for i in 0..m.len() {
            for j in i..m.len() {
                let lhs = self.values[crate::rings::MonoidOps::op(m, &i, &j)] % target.modulus();
                let rhs = target.mul(
                    &(self.values[i] % target.modulus()),
                    &(self.values[j] % target.modulus()),
                );
                if lhs != rhs {
                    return Err(KernelError::Inapplicable(format!(
                        "images are not multiplicative at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The augmentation Z_S Z_S -> Z_S with keys the rationals themselves.
#[derive(Debug, Clone)]
pub struct SelfAugmentation;

impl RingMap<MonoidAlgebra<SLocalIntegers, RingMulMonoid>, SLocalIntegers> for SelfAugmentation {
    fn apply(
        &self,
        base: &MonoidAlgebra<SLocalIntegers, RingMulMonoid>,
        target: &SLocalIntegers,
        x: &MonElem<SLocalIntegers, RingMulMonoid>,
    ) -> Result<BigRational, RingError> {
        base.augment(x, target, &|r| r.clone(), &|c| target.from_rational(c))
    }
}

/// Evaluation of a polynomial base at chosen target values.
#[derive(Debug, Clone)]
pub struct PolyMap<R: Ring> {
    pub images: Vec<R::Elem>,
}

impl<R: Ring> RingMap<PolynomialRing<SLocalIntegers>, R> for PolyMap<R> {
    fn apply(
        &self,
        base: &PolynomialRing<SLocalIntegers>,
        target: &R,
        x: &MultiPoly<SLocalIntegers>,
    ) -> Result<R::Elem, RingError> {
        base.evaluate(x, target, &self.images, &|c| target.from_rational(c))
    }

    fn validate(&self, base: &PolynomialRing<SLocalIntegers>, _target: &R) -> Result<(), KernelError> {
        if self.images.len() != base.nvars() {
            return Err(KernelError::Inapplicable(format!(
                "{} images for {} variables",
                self.images.len(),
                base.nvars()
            )));
        }
        Ok(())
    }
}

/// Outcome of a membership test, with the first violated constraint when the
/// element is not in the kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<R: Ring> {
    pub member: bool,
    /// (constraint label, offending value) for the first failure.
    pub witness: Option<(String, R::Elem)>,
}

impl<R: Ring> Verdict<R> {
    fn member() -> Self {
        Verdict {
            member: true,
            witness: None,
        }
    }

    fn fail(label: String, value: R::Elem) -> Self {
        Verdict {
            member: false,
            witness: Some((label, value)),
        }
    }

    pub fn describe(&self, target: &R) -> String {
        match &self.witness {
            None => "member".to_string(),
            Some((label, v)) => format!("not a member: {label} = {}", target.render(v)),
        }
    }
}

/// alpha_{S_N} together with everything needed to test membership in its
/// kernel: the Adams context on B, the map pi : B -> R and the bound N.
#[derive(Debug, Clone)]
pub struct KernelProblem<B, L, R, P>
where
    B: RationalExtension,
    L: FrobeniusLift<B>,
    R: ZsAlgebra,
    P: RingMap<B, R>,
{
    pub ctx: AdamsContext<B, L>,
    pub target: R,
    pub map: P,
    pub bound: u64,
}

impl<B, L, R, P> KernelProblem<B, L, R, P>
where
    B: RationalExtension,
    L: FrobeniusLift<B>,
    R: ZsAlgebra,
    P: RingMap<B, R>,
{
    pub fn new(
        ctx: AdamsContext<B, L>,
        target: R,
        map: P,
        bound: u64,
    ) -> Result<Self, KernelError> {
        if bound < 2 {
            return Err(KernelError::Inapplicable(format!(
                "truncation bound {bound} leaves nothing to test"
            )));
        }
        if !target.zs_algebra_ok(&ctx.primes) {
            return Err(KernelError::Inapplicable(format!(
                "target is not an algebra over the S-local integers for {:?}",
                ctx.primes.primes()
            )));
        }
        map.validate(&ctx.ring, &target)?;
        Ok(KernelProblem {
            ctx,
            target,
            map,
            bound,
        })
    }

    fn pi(&self, x: &B::Elem) -> Result<R::Elem, KernelError> {
        Ok(self.map.apply(&self.ctx.ring, &self.target, x)?)
    }

    /// The composite of the ghost-section map into W_{S_N}(B) with the
    /// componentwise application of pi.
    pub fn alpha(&self, x: &B::Elem) -> Result<WittVector<R>, KernelError> {
        let w = self.ctx.alpha_tilde(x, self.bound)?;
        let comps = w
            .components()
            .iter()
            .map(|c| self.pi(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WittVector::new(self.target.clone(), w.trunc.clone(), comps)
            .map_err(crate::error::WittError::from)?)
    }

    /// Membership via pi(lambda^n(x)) = 0 for 1 <= n < N.
    pub fn in_kernel_lambda(&self, x: &B::Elem) -> Result<Verdict<R>, KernelError> {
        let lams = self.ctx.lambda_ops(x, self.bound - 1)?;
        for n in 1..self.bound {
            let v = self.pi(&lams[n as usize])?;
            if !self.target.is_zero(&v) {
                return Ok(Verdict::fail(format!("pi(lambda^{n}(x))"), v));
            }
        }
        Ok(Verdict::member())
    }

    /// Membership via the ghost coordinates pi(psi^nu(x)) = 0 for nu in S_N.
    /// Only valid when the target has no torsion.
    pub fn in_kernel_ghost(&self, x: &B::Elem) -> Result<Verdict<R>, KernelError> {
        if !self.target.is_torsion_free() {
            return Err(KernelError::Inapplicable(
                "ghost criterion needs a torsion-free target".into(),
            ));
        }
        for nu in self.ctx.primes.s_truncation(self.bound).members() {
            let v = self.pi(&self.ctx.adams(*nu, x))?;
            if !self.target.is_zero(&v) {
                return Ok(Verdict::fail(format!("pi(psi^{nu}(x))"), v));
            }
        }
        Ok(Verdict::member())
    }

    /// Membership by evaluating alpha(x) and comparing with zero.
    pub fn in_kernel_direct(&self, x: &B::Elem) -> Result<Verdict<R>, KernelError> {
        let w = self.alpha(x)?;
        for (&n, c) in w.trunc.members().iter().zip(w.components()) {
            if !self.target.is_zero(c) {
                return Ok(Verdict::fail(format!("alpha(x)_{n}"), c.clone()));
            }
        }
        Ok(Verdict::member())
    }
}

/// The monoid-algebra problem over a residue target, the shape used by the
/// augmentation-ideal oracle.
pub type AugmentationProblem = KernelProblem<
    MonoidAlgebra<SLocalIntegers, TableMonoid>,
    crate::lambda::MonoidPowerLift,
    Residue,
    TableAugmentation,
>;

impl AugmentationProblem {
    /// Brute-force membership of x in I^n where I = ker(pi) is the
    /// augmentation ideal, for R a perfect F_p-algebra. I is spanned over
    /// Z_S = Z_(p) by {[r] - r[1]} and p[1]; I^n by n-fold products of
    /// those generators, multiplied through by the monoid basis.
    pub fn ideal_power_membership(
        &self,
        x: &MonElem<SLocalIntegers, TableMonoid>,
        n: u64,
    ) -> Result<bool, KernelError> {
        let p = self.target.modulus();
        if !is_prime(p) {
            return Err(KernelError::NotPerfect(format!(
                "Z/{p} is not a perfect F_p-algebra"
            )));
        }
        if !self.ctx.primes.contains(p) {
            return Err(KernelError::NotPerfect(format!(
                "characteristic {p} is not in the prime set"
            )));
        }
        assert!(n >= 1);
        let base = &self.ctx.ring;
        let zs = &base.coeff;

        // generators of I
        let mut gens = Vec::new();
        for r in 0..base.monoid.len() {
            let g = base.sub(
                &base.bracket(r),
                &base.mul(&base.from_i64(self.values_of(r) as i64), &base.one()),
            );
            if !base.is_zero(&g) {
                gens.push(g);
            }
        }
        gens.push(base.from_i64(p as i64));

        // n-fold products
        let mut products = vec![base.one()];
        for _ in 0..n {
            let mut next = Vec::new();
            for prod in &products {
                for g in &gens {
                    next.push(base.mul(prod, g));
                }
            }
            products = next;
        }
        // module generators: every product times every basis element
        let dim = base.monoid.len();
        let mut vectors = Vec::new();
        for prod in &products {
            for s in 0..dim {
                let v = base.mul(prod, &base.bracket(s));
                let coords = to_coords(zs, &v, dim);
                if coords.iter().any(|c| !c.is_zero()) {
                    vectors.push(coords);
                }
            }
        }
        let target_coords = to_coords(zs, x, dim);
        Ok(in_local_span(&vectors, &target_coords, p))
    }

    fn values_of(&self, r: usize) -> u64 {
        self.map.values[r]
    }
}

fn to_coords(
    zs: &SLocalIntegers,
    x: &MonElem<SLocalIntegers, TableMonoid>,
    dim: usize,
) -> Vec<BigRational> {
    let mut v = vec![zs.zero(); dim];
    for (r, c) in &x.terms {
        v[*r] = c.clone();
    }
    v
}

/// Membership of `x` in the Z_(p)-span of `gens` inside Q^dim. All inputs
/// have denominators prime to p. Scales rows to integer vectors (a p-unit
/// scaling, harmless), brings the generators to Hermite form over Z, then
/// solves the triangular system and checks the coefficients are p-integral.
fn in_local_span(gens: &[Vec<BigRational>], x: &[BigRational], p: u64) -> bool {
    let dim = x.len();
    let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| clear_denominators(g)).collect();

    // Hermite form by column, Euclidean-style
    let mut pivots: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for col in 0..dim {
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate() {
                if row[col].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(j) if rows[i][col].abs() < rows[j][col].abs() => Some(i),
                    keep => keep,
                };
            }
            let Some(bi) = best else { break };
            let pivot = rows.swap_remove(bi);
            let mut again = false;
            for row in rows.iter_mut() {
                if !row[col].is_zero() {
                    let q = &row[col] / &pivot[col]; // truncated quotient
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a -= &q * b;
                    }
                    again = again || !row[col].is_zero();
                }
            }
            if again {
                rows.push(pivot);
            } else {
                pivots.push((col, pivot));
                break;
            }
        }
        rows.retain(|row| row.iter().any(|a| !a.is_zero()));
    }

    // forced back-substitution; pivots are in ascending column order and each
    // pivot row is zero left of its pivot column
    let mut rem: Vec<BigRational> = x.to_vec();
    for (col, row) in &pivots {
        if rem[*col].is_zero() {
            continue;
        }
        let c = &rem[*col] / BigRational::from(row[*col].clone());
        if v_p_rational(&c, p) < 0 {
            return false;
        }
        for (a, b) in rem.iter_mut().zip(row) {
            *a -= &c * BigRational::from(b.clone());
        }
    }
    rem.iter().all(|a| a.is_zero())
}

fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for q in v {
        lcm = num::integer::lcm(lcm, q.denom().clone());
    }
    v.iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect()
}
