//! Number-theoretic substrate: truncation sets, S-parts, the Moebius
//! function, divisor and multi-index enumeration.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::RingError;

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // These bases are a proven deterministic set for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Trial-division factorization, ascending primes with multiplicities.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut q = 1u64;
        for _ in 0..e {
            q *= p;
            out.extend(prev.iter().map(|d| d * q));
        }
    }
    out.sort_unstable();
    out
}

/// Standard Moebius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut sign = 1i64;
    for (_, e) in factorize(n) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

pub fn ord_p(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// The generating primes of a multiplicatively closed, divisor-stable S.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(mut primes: Vec<u64>) -> Result<Self, RingError> {
        primes.sort_unstable();
        primes.dedup();
        for &p in &primes {
            if !is_prime(p) {
                return Err(RingError::Invalid(format!("{p} is not prime")));
            }
        }
        Ok(PrimeSet { primes })
    }

    pub fn empty() -> Self {
        PrimeSet { primes: Vec::new() }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// n_S, the largest S-smooth divisor of n.
    pub fn s_part(&self, n: u64) -> u64 {
        assert!(n >= 1);
        let mut out = 1u64;
        for &p in &self.primes {
            let mut m = n;
            while m % p == 0 {
                m /= p;
                out *= p;
            }
        }
        out
    }

    /// True when every prime factor of n lies in the set.
    pub fn is_smooth(&self, n: u64) -> bool {
        self.s_part(n) == n
    }

    /// True when n is coprime to every prime of the set.
    pub fn is_coprime(&self, n: u64) -> bool {
        self.primes.iter().all(|&p| n % p != 0)
    }

    /// S_N: all S-smooth integers below N, ascending.
    pub fn s_truncation(&self, bound: u64) -> TruncationSet {
        let members = (1..bound).filter(|&n| self.is_smooth(n)).collect();
        TruncationSet { members }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Finite divisor-stable subset of the natural numbers, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncationSet {
    members: Vec<u64>,
}

impl TruncationSet {
    pub fn new(mut members: Vec<u64>) -> Result<Self, RingError> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&n| n == 0) {
            return Err(RingError::Invalid("0 is not a valid index".into()));
        }
        let t = TruncationSet { members };
        for &n in &t.members {
            for d in divisors(n) {
                if !t.contains(d) {
                    return Err(RingError::Invalid(format!(
                        "not divisor stable: {n} present but {d} missing"
                    )));
                }
            }
        }
        Ok(t)
    }

    /// The full initial segment {1, ..., bound-1}.
    pub fn full(bound: u64) -> Self {
        TruncationSet {
            members: (1..bound).collect(),
        }
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.members.binary_search(&n).is_ok()
    }

    pub fn position(&self, n: u64) -> Option<usize> {
        self.members.binary_search(&n).ok()
    }

    /// T/k = {n : nk in T}, the target truncation of the k-th Frobenius.
    pub fn quotient(&self, k: u64) -> TruncationSet {
        assert!(k >= 1);
        TruncationSet {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&n| self.contains(n * k))
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &TruncationSet) -> bool {
        self.members.iter().all(|&n| other.contains(n))
    }
}

impl fmt::Display for TruncationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, n) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "}}")
    }
}

/// An S-tuple (nu_k) with finitely many nonzero entries, keys S-smooth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex {
    entries: BTreeMap<u64, u64>,
}

impl MultiIndex {
    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    /// |nu| = sum of multiplicities.
    pub fn size(&self) -> u64 {
        self.entries.values().sum()
    }

    /// ||nu|| = sum of k * nu_k.
    pub fn norm(&self) -> u64 {
        self.entries.iter().map(|(k, v)| k * v).sum()
    }
}

/// All multi-indices nu with S-smooth parts and ||nu|| = n, in lexicographic
/// order on the ascending part list.
pub fn s_partitions(n: u64, primes: &PrimeSet) -> Vec<MultiIndex> {
    assert!(n >= 1);
    let parts: Vec<u64> = (1..=n).filter(|&k| primes.is_smooth(k)).collect();
    let mut out = Vec::new();
    let mut current: Vec<u64> = Vec::new();
    fn rec(parts: &[u64], start: usize, remaining: u64, current: &mut Vec<u64>, out: &mut Vec<MultiIndex>) {
        if remaining == 0 {
            let mut entries = BTreeMap::new();
            for &p in current.iter() {
                *entries.entry(p).or_insert(0) += 1;
            }
            out.push(MultiIndex { entries });
            return;
        }
        for (i, &p) in parts.iter().enumerate().skip(start) {
            if p > remaining {
                break;
            }
            current.push(p);
            rec(parts, i, remaining - p, current, out);
            current.pop();
        }
    }
    rec(&parts, 0, n, &mut current, &mut out);
    out
}
