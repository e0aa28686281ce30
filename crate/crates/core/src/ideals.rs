//! Prime ideals of `O_K`: splitting of rational primes, valuations, principal
//! ideal factorisation and the k-free test.
//!
//! A prime ideal of degree one over `p` is `(p, δ - r)` for a root `r` of the
//! minimal polynomial of δ modulo `p`; membership of `a + bδ` is the linear
//! congruence `a + b·r ≡ 0 (mod p)`. The two ideals over a split prime are
//! ordered by ascending root.

use std::fmt;

use crate::arith::{self, factor, is_prime, p_adic_valuation};
use crate::error::{Error, Result};
use crate::ring::{AlgInt, BasisKind, FieldParams};

/// Below this bound roots modulo `p` are found by exhaustive search.
const EXHAUSTIVE_ROOT_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitKind {
    Ramified,
    Split,
    Inert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplittingType {
    pub kind: SplitKind,
    /// Split: both roots in ascending order. Ramified: the double root twice.
    pub roots: Option<(u64, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Selector {
    Sole,
    First,
    Second,
}

/// A prime ideal of `O_K` above the rational prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeIdealRef {
    pub p: u64,
    pub selector: Selector,
    pub kind: SplitKind,
    /// The residue of δ modulo the ideal (degree-one ideals only).
    pub root: Option<u64>,
}

impl PrimeIdealRef {
    /// Absolute norm `No(𝔭) = [O_K : 𝔭]`.
    pub fn norm(&self) -> u64 {
        match self.kind {
            SplitKind::Inert => self.p * self.p,
            _ => self.p,
        }
    }

    pub fn residue_degree(&self) -> u32 {
        match self.kind {
            SplitKind::Inert => 2,
            _ => 1,
        }
    }

    pub fn ramification_index(&self) -> u32 {
        match self.kind {
            SplitKind::Ramified => 2,
            _ => 1,
        }
    }

    /// `No(𝔭)^k`, or `None` on overflow.
    pub fn norm_power(&self, k: u32) -> Option<u128> {
        (self.norm() as u128).checked_pow(k)
    }

    /// Whether `x ∈ 𝔭`.
    pub fn contains(&self, x: AlgInt) -> bool {
        let p = self.p as i128;
        match self.root {
            Some(r) => (x.a + x.b * r as i128).rem_euclid(p) == 0,
            None => x.a.rem_euclid(p) == 0 && x.b.rem_euclid(p) == 0,
        }
    }

    /// Ordering key: norm first, then prime, then selector.
    pub fn sort_key(&self) -> (u64, u64, Selector) {
        (self.norm(), self.p, self.selector)
    }
}

impl fmt::Display for PrimeIdealRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.root {
            Some(r) => write!(f, "({}, δ - {})", self.p, r),
            None => write!(f, "({})", self.p),
        }
    }
}

pub type IdealFactorisation = Vec<(PrimeIdealRef, u32)>;

fn min_poly_mod(field: &FieldParams, t: u64, p: u64) -> u64 {
    let (t1, t0) = field.min_poly();
    let t = t as i128;
    let p = p as i128;
    (t * t - t1 * t - t0).rem_euclid(p) as u64
}

fn roots_mod_p(field: &FieldParams, p: u64) -> Vec<u64> {
    if p < EXHAUSTIVE_ROOT_BOUND {
        return (0..p).filter(|&t| min_poly_mod(field, t, p) == 0).collect();
    }
    // Large odd primes: complete the square and take a modular square root.
    let d = field.d().rem_euclid(p as i64) as u64;
    let Some(s) = arith::sqrt_mod_prime(d, p) else {
        return Vec::new();
    };
    let mut roots: Vec<u64> = match field.basis_kind() {
        BasisKind::SqrtBasis => vec![s, (p - s) % p],
        BasisKind::HalfBasis => {
            let half = p.div_ceil(2);
            vec![
                arith::mul_mod((1 + s) % p, half, p),
                arith::mul_mod((1 + p - s) % p, half, p),
            ]
        }
    };
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// How the rational prime `p` decomposes in `O_K`.
pub fn splitting_type(field: &FieldParams, p: u64) -> Result<SplittingType> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let roots = roots_mod_p(field, p);
    let ramified = field.discriminant().rem_euclid(p as i64) == 0;
    Ok(match (ramified, roots.as_slice()) {
        (true, [r, ..]) => SplittingType {
            kind: SplitKind::Ramified,
            roots: Some((*r, *r)),
        },
        (false, [r1, r2]) => SplittingType {
            kind: SplitKind::Split,
            roots: Some((*r1, *r2)),
        },
        (false, []) => SplittingType {
            kind: SplitKind::Inert,
            roots: None,
        },
        _ => unreachable!("minimal polynomial mod {p} has roots {roots:?}"),
    })
}

/// Decomposition kind from the Kronecker symbol `(d_K | p)` alone; no roots.
pub fn splitting_kind(field: &FieldParams, p: u64) -> SplitKind {
    match arith::kronecker(field.discriminant(), p as i64) {
        0 => SplitKind::Ramified,
        1 => SplitKind::Split,
        _ => SplitKind::Inert,
    }
}

/// The prime ideals above `p`, in selector order.
pub fn primes_above(field: &FieldParams, p: u64) -> Result<Vec<PrimeIdealRef>> {
    let st = splitting_type(field, p)?;
    Ok(match (st.kind, st.roots) {
        (SplitKind::Split, Some((r1, r2))) => vec![
            PrimeIdealRef {
                p,
                selector: Selector::First,
                kind: SplitKind::Split,
                root: Some(r1),
            },
            PrimeIdealRef {
                p,
                selector: Selector::Second,
                kind: SplitKind::Split,
                root: Some(r2),
            },
        ],
        (kind, roots) => vec![PrimeIdealRef {
            p,
            selector: Selector::Sole,
            kind,
            root: roots.map(|(r, _)| r),
        }],
    })
}

/// Every prime ideal with `No(𝔭) <= norm_bound`, sorted by norm.
pub fn prime_ideals_up_to(field: &FieldParams, norm_bound: u64) -> Vec<PrimeIdealRef> {
    let mut out = Vec::new();
    for p in arith::primes_up_to(norm_bound) {
        for ideal in primes_above(field, p).expect("p is prime") {
            if ideal.norm() <= norm_bound {
                out.push(ideal);
            }
        }
    }
    out.sort_by_key(PrimeIdealRef::sort_key);
    out
}

/// The prime ideals with `No(𝔭)^k <= bound`, sorted by norm.
pub fn prime_ideals_with_power_up_to(field: &FieldParams, k: u32, bound: u128) -> Vec<PrimeIdealRef> {
    let norm_bound = root_floor(bound, k);
    prime_ideals_up_to(field, norm_bound.min(u64::MAX as u128) as u64)
}

/// `floor(n^(1/k))`.
pub fn root_floor(n: u128, k: u32) -> u128 {
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u128;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Exponent of 𝔭 in the principal ideal `(x)`.
///
/// Powers of `p` are stripped first (`x ∈ pO_K` iff `p` divides both
/// coordinates). The remainder `y` lies in at most one ideal over a split `p`
/// and is not divisible by `𝔭²` when `p` ramifies.
pub fn valuation(field: &FieldParams, x: AlgInt, ideal: &PrimeIdealRef) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let p = ideal.p as i128;
    let mut y = x;
    let mut m = 0u32;
    while y.a % p == 0 && y.b % p == 0 {
        y = AlgInt::new(y.a / p, y.b / p);
        m += 1;
    }
    Ok(match ideal.kind {
        SplitKind::Inert => m,
        SplitKind::Ramified => 2 * m + u32::from(field.norm(y) % p == 0),
        SplitKind::Split => {
            if ideal.contains(y) {
                m + p_adic_valuation(field.norm(y).unsigned_abs(), ideal.p)
            } else {
                m
            }
        }
    })
}

/// `(x) = ∏ 𝔭^{v_𝔭(x)}` over the prime ideals dividing `(x)`.
pub fn factor_principal(field: &FieldParams, x: AlgInt) -> Result<IdealFactorisation> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut out = Vec::new();
    for (p, _) in factor(field.norm(x).unsigned_abs())? {
        for ideal in primes_above(field, p)? {
            let v = valuation(field, x, &ideal)?;
            if v > 0 {
                out.push((ideal, v));
            }
        }
    }
    Ok(out)
}

/// Whether `v_𝔭(x) < k` for every prime ideal 𝔭. Zero is never k-free.
pub fn is_kfree(field: &FieldParams, x: AlgInt, k: u32) -> bool {
    if x.is_zero() {
        return false;
    }
    let n = field.norm(x).unsigned_abs();
    let Ok(factors) = factor(n) else {
        // Norms beyond the factoring budget are out of desk scale.
        panic!("norm {n} of {x} exceeds the factoring budget");
    };
    for (p, e) in factors {
        // Every valuation over p is bounded by v_p(N(x)).
        if e < k {
            continue;
        }
        for ideal in primes_above(field, p).expect("factor returns primes") {
            if valuation(field, x, &ideal).expect("x is nonzero") >= k {
                return false;
            }
        }
    }
    true
}
