//! The B-free shift attached to `V'_k`: the sublattices `Γ_{𝔭^k}`,
//! admissibility of finite patterns, small-window pattern counts, entropy and
//! the Erdős sum of reciprocal indices.
//!
//! A finite pattern is admissible when, for every prime ideal 𝔭, it misses at
//! least one coset of `Γ_{𝔭^k}` in `Z²`. A pattern with fewer points than the
//! index of `Γ_{𝔭^k}` trivially misses a coset, so only ideals with
//! `No(𝔭)^k <= |pattern|` are examined.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::arith;
use crate::error::{Error, Result};
use crate::ideals::{prime_ideals_with_power_up_to, splitting_kind, PrimeIdealRef, SplitKind};
use crate::kfree::density_estimate;
use crate::lattice::Sublattice;
use crate::lfunctions::{zeta_k_euler, zeta_k_special};
use crate::pointset::PointSet;
use crate::ring::{AlgInt, FieldParams};

/// Largest window accepted by [`count_admissible_subsets`].
pub const MAX_COUNT_WINDOW: usize = 20;

/// Prime bound used when `ζ_K(k)` has no closed form.
pub const EULER_FALLBACK_BOUND: u64 = 1_000_000;

fn reduce_mod(x: AlgInt, m: i128) -> AlgInt {
    AlgInt::new(x.a.rem_euclid(m), x.b.rem_euclid(m))
}

/// `Γ_{𝔭^k} = ι(𝔭^k)`, the coordinate image of the ideal power.
///
/// The `Z`-module is spanned by the products `p^i (δ - r)^(k-i)` times
/// `{1, δ}`; since `p^k O_K ⊆ 𝔭^k`, all arithmetic is done modulo `p^k`.
pub fn ideal_lattice(field: &FieldParams, ideal: &PrimeIdealRef, k: u32) -> Sublattice {
    assert!(k >= 1, "k must be positive");
    let p = ideal.p as i128;
    let pk = p
        .checked_pow(k)
        .unwrap_or_else(|| panic!("{}^{k} overflows", ideal.p));
    let mut gens = vec![(pk, 0), (0, pk)];
    if let Some(r) = ideal.root {
        let pi = AlgInt::new(-(r as i128), 1);
        let mut pi_pow = AlgInt::ONE;
        // pi_pow = (δ - r)^(k - i), p_pow = p^i
        let mut terms = Vec::with_capacity(k as usize + 1);
        for _ in 0..=k {
            terms.push(pi_pow);
            pi_pow = reduce_mod(field.mul(pi_pow, pi), pk);
        }
        let mut p_pow = 1i128;
        for i in 0..=k as usize {
            let g = reduce_mod(terms[k as usize - i].scale(p_pow), pk);
            for basis in [AlgInt::ONE, AlgInt::DELTA] {
                let v = reduce_mod(field.mul(g, basis), pk);
                gens.push((v.a, v.b));
            }
            p_pow *= p;
        }
    }
    let lat = Sublattice::from_generators(gens).expect("p^k Z² is full rank");
    debug_assert_eq!(Some(lat.index()), ideal.norm_power(k));
    lat
}

/// `ι(𝔞𝔟)` from the lattices of two ideals: the `Z`-span of products of
/// basis elements.
pub fn ideal_product_lattice(field: &FieldParams, lhs: &Sublattice, rhs: &Sublattice) -> Sublattice {
    let modulus = (lhs.index() * rhs.index()) as i128;
    let mut gens = vec![(modulus, 0), (0, modulus)];
    for (x1, y1) in lhs.columns() {
        for (x2, y2) in rhs.columns() {
            let v = reduce_mod(field.mul(AlgInt::new(x1, y1), AlgInt::new(x2, y2)), modulus);
            gens.push((v.a, v.b));
        }
    }
    Sublattice::from_generators(gens).expect("full rank")
}

fn meets_every_coset(lattice: &Sublattice, pattern: &PointSet) -> bool {
    let index = lattice.index();
    if (pattern.len() as u128) < index {
        return false;
    }
    let hit: HashSet<u128> = pattern
        .iter()
        .map(|&(x, y)| lattice.coset_id((x as i128, y as i128)))
        .collect();
    hit.len() as u128 == index
}

/// The first prime ideal (by norm) for which the pattern meets every coset of
/// `Γ_{𝔭^k}`, if any.
pub fn violated_ideal(field: &FieldParams, k: u32, pattern: &PointSet) -> Option<PrimeIdealRef> {
    if pattern.is_empty() {
        return None;
    }
    let ideals = prime_ideals_with_power_up_to(field, k, pattern.len() as u128);
    ideals
        .par_iter()
        .find_first(|ideal| meets_every_coset(&ideal_lattice(field, ideal, k), pattern))
        .copied()
}

pub fn is_admissible(field: &FieldParams, k: u32, pattern: &PointSet) -> bool {
    violated_ideal(field, k, pattern).is_none()
}

/// Number of admissible subsets of a window of at most 20 points.
pub fn count_admissible_subsets(field: &FieldParams, k: u32, window: &PointSet) -> Result<u64> {
    let n = window.len();
    if n > MAX_COUNT_WINDOW {
        return Err(Error::WindowTooLarge(n));
    }
    // For each relevant ideal: bitmask of window points in each coset.
    let coset_masks: Vec<Vec<u32>> = prime_ideals_with_power_up_to(field, k, n as u128)
        .iter()
        .map(|ideal| {
            let lat = ideal_lattice(field, ideal, k);
            let mut masks = vec![0u32; lat.index() as usize];
            for (i, &(x, y)) in window.iter().enumerate() {
                masks[lat.coset_id((x as i128, y as i128)) as usize] |= 1 << i;
            }
            masks
        })
        .collect();
    let count = (0u64..1 << n)
        .into_par_iter()
        .filter(|&subset| {
            let s = subset as u32;
            !coset_masks
                .iter()
                .any(|masks| masks.iter().all(|&m| m & s != 0))
        })
        .count();
    Ok(count as u64)
}

/// `log(2)` times the density estimate on `[-N, N]²`, in nats.
pub fn entropy_estimate(field: &FieldParams, k: u32, n: u32) -> f64 {
    std::f64::consts::LN_2 * density_estimate(field, k, n)
}

/// `ζ_K(k)` as a float: the closed form where the parity allows, otherwise the
/// Euler product up to [`EULER_FALLBACK_BOUND`].
pub fn zeta_k_value(field: &FieldParams, k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k} must be at least 2")));
    }
    Ok(match zeta_k_special(field, k) {
        Ok(v) => v.float_shadow,
        Err(Error::ParityMismatch { .. }) => zeta_k_euler(field, k as f64, EULER_FALLBACK_BOUND),
        Err(e) => return Err(e),
    })
}

/// `log(2)/ζ_K(k)`, in nats.
pub fn entropy_exact(field: &FieldParams, k: u32) -> Result<f64> {
    Ok(std::f64::consts::LN_2 / zeta_k_value(field, k)?)
}

/// `Σ No(𝔭)^{-k}` over prime ideals with `No(𝔭) <= prime_bound`.
pub fn erdos_sum(field: &FieldParams, k: u32, prime_bound: u64) -> f64 {
    let mut terms: Vec<f64> = Vec::new();
    for p in arith::primes_up_to(prime_bound) {
        let pf = p as f64;
        match splitting_kind(field, p) {
            SplitKind::Split => {
                terms.push(2.0 * pf.powi(-(k as i32)));
            }
            SplitKind::Ramified => terms.push(pf.powi(-(k as i32))),
            SplitKind::Inert => {
                if p.checked_mul(p).is_some_and(|n| n <= prime_bound) {
                    terms.push(pf.powi(-2 * k as i32));
                }
            }
        }
    }
    // Smallest terms first.
    terms.iter().rev().sum()
}
