//! Lazily generated universal Witt polynomials.
//!
//! The component formulas for sum, product, negation, Frobenius and the
//! projector splittings are obtained by a ghost round-trip in a polynomial
//! ring over exact rationals (S-local when an operation divides by primes
//! outside S) and memoized per (operation, truncation, prime set). The
//! evaluation of the memoized polynomials is what makes the operations
//! available over rings with torsion.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::WittError;
use crate::rings::{MultiPoly, PolynomialRing, Ring, SLocalIntegers};
use crate::trunc::{PrimeSet, TruncationSet};
use crate::witt::{GhostVector, WittVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnivOp {
    Add,
    Mul,
    Neg,
    Frobenius(u64),
    PhiS,
    PhiBar(u64),
}

impl UnivOp {
    fn arity(self) -> usize {
        match self {
            UnivOp::Add | UnivOp::Mul => 2,
            _ => 1,
        }
    }
}

/// A memoized family of component polynomials for one operation at one
/// truncation level. Variables are x{n} for n in the input truncation,
/// followed by y{n} for binary operations.
#[derive(Debug, Clone)]
pub struct Universal {
    pub ring: PolynomialRing<SLocalIntegers>,
    pub in_trunc: TruncationSet,
    pub out_trunc: TruncationSet,
    pub comps: Vec<MultiPoly<SLocalIntegers>>,
}

impl Universal {
    /// Evaluates the component polynomials at concrete components. `inputs`
    /// is the concatenation of the operand component lists.
    pub fn evaluate<R: Ring>(&self, target: &R, inputs: &[R::Elem]) -> Result<WittVector<R>, WittError> {
        assert_eq!(inputs.len(), self.ring.nvars());
        let comps = self
            .comps
            .iter()
            .map(|p| {
                self.ring
                    .evaluate(p, target, inputs, &|c| target.from_rational(c))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WittVector::new(target.clone(), self.out_trunc.clone(), comps)?)
    }
}

type Key = (UnivOp, Vec<u64>, Vec<u64>);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Universal>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Universal>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns (computing and memoizing on first use) the universal component
/// polynomials for `op` at the given input truncation. The prime set matters
/// only for the projector operations, whose coefficients live in Z_S.
pub fn universal_polynomials(
    op: UnivOp,
    in_trunc: &TruncationSet,
    primes: &PrimeSet,
) -> Result<Arc<Universal>, WittError> {
    let key: Key = (
        op,
        in_trunc.members().to_vec(),
        primes.primes().to_vec(),
    );
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let computed = Arc::new(generate(op, in_trunc, primes)?);
    let mut guard = cache().lock().unwrap();
    // a racing thread may have inserted meanwhile; either value is identical
    let entry = guard.entry(key).or_insert(computed);
    Ok(entry.clone())
}

fn generate(op: UnivOp, in_trunc: &TruncationSet, primes: &PrimeSet) -> Result<Universal, WittError> {
    let base = SLocalIntegers::new(primes.clone());
    let mut vars: Vec<String> = in_trunc.members().iter().map(|n| format!("x{n}")).collect();
    if op.arity() == 2 {
        vars.extend(in_trunc.members().iter().map(|n| format!("y{n}")));
    }
    let ring = PolynomialRing::new(base, vars);
    let n_in = in_trunc.len();

    let first: Vec<MultiPoly<SLocalIntegers>> = (0..n_in).map(|i| ring.var(i)).collect();
    let u = WittVector::new(ring.clone(), in_trunc.clone(), first)?;
    let gu = u.ghost();

    let ghost_out: GhostVector<PolynomialRing<SLocalIntegers>> = match op {
        UnivOp::Add | UnivOp::Mul => {
            let second: Vec<MultiPoly<SLocalIntegers>> =
                (n_in..2 * n_in).map(|i| ring.var(i)).collect();
            let v = WittVector::new(ring.clone(), in_trunc.clone(), second)?;
            let gv = v.ghost();
            match op {
                UnivOp::Add => gu.add(&gv)?,
                _ => gu.mul(&gv)?,
            }
        }
        UnivOp::Neg => gu.neg(),
        UnivOp::Frobenius(k) => gu.frobenius(k),
        UnivOp::PhiS => gu.phi_s(primes),
        UnivOp::PhiBar(bound) => {
            let full = TruncationSet::full(bound);
            let entries = full
                .members()
                .iter()
                .map(|&n| gu.entry(primes.s_part(n)).unwrap().clone())
                .collect();
            GhostVector::new(ring.clone(), full, entries)?
        }
    };

    let out = ghost_out.to_witt()?;
    Ok(Universal {
        ring,
        in_trunc: in_trunc.clone(),
        out_trunc: out.trunc.clone(),
        comps: out.components().to_vec(),
    })
}
