//! The Lambda-series picture: truncated power series 1 + a_1 t + ... mod t^N
//! as an alternative presentation of Witt vectors over a full truncation
//! {1, ..., N-1}.

use crate::error::WittError;
use crate::rings::Ring;
use crate::trunc::TruncationSet;
use crate::witt::{GhostVector, WittVector};

/// 1 + a_1 t + ... + a_{N-1} t^{N-1} mod t^N; the constant 1 is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSeries<R: Ring> {
    pub ring: R,
    /// N: series are taken mod t^N.
    pub precision: u64,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> LambdaSeries<R> {
    pub fn new(ring: R, precision: u64, coeffs: Vec<R::Elem>) -> Result<Self, WittError> {
        if coeffs.len() as u64 != precision.saturating_sub(1) {
            return Err(WittError::Precondition(format!(
                "{} coefficients for precision {precision}",
                coeffs.len()
            )));
        }
        Ok(LambdaSeries { ring, precision, coeffs })
    }

    pub fn one(ring: R, precision: u64) -> Self {
        let coeffs = (1..precision).map(|_| ring.zero()).collect();
        LambdaSeries { ring, precision, coeffs }
    }

    /// Coefficient of t^i (i >= 1).
    pub fn coeff(&self, i: u64) -> &R::Elem {
        &self.coeffs[(i - 1) as usize]
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// Dense coefficient list including the leading 1.
    pub fn dense(&self) -> Vec<R::Elem> {
        let mut v = Vec::with_capacity(self.precision as usize);
        v.push(self.ring.one());
        v.extend(self.coeffs.iter().cloned());
        v
    }

    pub fn from_dense(ring: R, precision: u64, mut dense: Vec<R::Elem>) -> Result<Self, WittError> {
        if dense.is_empty() || !ring.is_one(&dense[0]) {
            return Err(WittError::Precondition("constant term must be 1".into()));
        }
        dense.remove(0);
        dense.resize(precision.saturating_sub(1) as usize, ring.zero());
        LambdaSeries::new(ring, precision, dense)
    }

    /// Series product mod t^N: the additive law of the Lambda-ring.
    pub fn series_mul(&self, other: &LambdaSeries<R>) -> Result<LambdaSeries<R>, WittError> {
        if self.ring != other.ring || self.precision != other.precision {
            return Err(WittError::Precondition("series context mismatch".into()));
        }
        let a = self.dense();
        let b = other.dense();
        let dense = dense_mul(&self.ring, &a, &b, self.precision as usize);
        LambdaSeries::from_dense(self.ring.clone(), self.precision, dense)
    }

    /// t -> -t: flips the sign of every odd coefficient.
    pub fn alternate(&self) -> LambdaSeries<R> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let i = idx + 1;
                if i % 2 == 1 {
                    self.ring.neg(c)
                } else {
                    c.clone()
                }
            })
            .collect();
        LambdaSeries {
            ring: self.ring.clone(),
            precision: self.precision,
            coeffs,
        }
    }

    /// -t d/dt log of the series: ghost entries over {1, ..., N-1}.
    pub fn log_derivative(&self) -> GhostVector<R> {
        let r = &self.ring;
        let s = self.dense();
        // numerator -t s'(t): coefficient of t^i is -i * a_i
        let mut numer: Vec<R::Elem> = vec![r.zero(); self.precision as usize];
        for i in 1..self.precision as usize {
            numer[i] = r.mul(&r.from_i64(-(i as i64)), &s[i]);
        }
        let q = dense_div_unit(r, &numer, &s, self.precision as usize);
        let full = TruncationSet::full(self.precision);
        let entries = (1..self.precision).map(|i| q[i as usize].clone()).collect();
        GhostVector::new(r.clone(), full, entries).expect("length matches")
    }

    pub fn render(&self, var: &str) -> String {
        let mut parts = vec!["1".to_string()];
        for (idx, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            let i = idx + 1;
            let power = if i == 1 {
                var.to_string()
            } else {
                format!("{var}^{i}")
            };
            let coeff = self.ring.render(c);
            let s = if coeff == "1" {
                power
            } else if coeff == "-1" {
                format!("-{power}")
            } else {
                format!("{}*{power}", crate::rings::coeff_factor(&coeff))
            };
            parts.push(s);
        }
        crate::rings::join_terms(parts)
    }
}

fn dense_mul<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem], n: usize) -> Vec<R::Elem> {
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

/// Power series division by a series with constant term 1.
fn dense_div_unit<R: Ring>(r: &R, numer: &[R::Elem], denom: &[R::Elem], n: usize) -> Vec<R::Elem> {
    let mut q = vec![r.zero(); n];
    for i in 0..n {
        let mut acc = numer.get(i).cloned().unwrap_or_else(|| r.zero());
        for j in 0..i {
            acc = r.sub(&acc, &r.mul(&q[j], &denom[i - j]));
        }
        q[i] = acc; // denom[0] = 1
    }
    q
}

/// Expands prod over n in T of (1 - a_n t^n) mod t^N. Requires the full
/// truncation {1, ..., N-1}.
pub fn witt_to_lambda<R: Ring>(w: &WittVector<R>) -> Result<LambdaSeries<R>, WittError> {
    let n_members = w.trunc.members();
    let precision = n_members.len() as u64 + 1;
    if w.trunc != TruncationSet::full(precision) {
        return Err(WittError::Truncation(format!(
            "lambda presentation needs the full truncation, got {}",
            w.trunc
        )));
    }
    let r = &w.ring;
    let n = precision as usize;
    let mut dense = vec![r.zero(); n];
    dense[0] = r.one();
    for &m in n_members {
        let a = w.component(m).unwrap();
        if r.is_zero(a) {
            continue;
        }
        // multiply by (1 - a t^m)
        let mut next = dense.clone();
        for i in 0..n - m as usize {
            let shifted = r.mul(a, &dense[i]);
            next[i + m as usize] = r.sub(&next[i + m as usize], &shifted);
        }
        dense = next;
    }
    LambdaSeries::from_dense(r.clone(), precision, dense)
}

/// Inverse of `witt_to_lambda`: peels components degree by degree.
pub fn lambda_to_witt<R: Ring>(s: &LambdaSeries<R>) -> WittVector<R> {
    let r = &s.ring;
    let precision = s.precision;
    let n = precision as usize;
    let full = TruncationSet::full(precision);
    let mut remaining = s.dense();
    let mut comps = Vec::with_capacity(n - 1);
    for m in 1..n {
        // by induction `remaining` is 1 + c_m t^m + ... ; a_m = -c_m
        let a = r.neg(&remaining[m]);
        comps.push(a.clone());
        if !r.is_zero(&a) {
            // divide by (1 - a t^m)
            let mut denom = vec![r.zero(); n];
            denom[0] = r.one();
            denom[m] = r.neg(&a);
            remaining = dense_div_unit(r, &remaining, &denom, n);
        }
    }
    WittVector::new(r.clone(), full, comps).expect("length matches")
}
