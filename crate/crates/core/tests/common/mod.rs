//! Reference implementations used as oracles. They share no code with the
//! library beyond plain integer types: norms come from the defining equation
//! of δ, roots from exhaustive search and valuations from norm bookkeeping.

#![allow(dead_code)]

pub const PANEL: [i64; 10] = [-1, -2, -3, -5, -7, 2, 3, 5, 6, 15];
pub const REAL_PANEL: [i64; 5] = [2, 3, 5, 6, 15];

/// `(t1, t0)` with δ² = t1·δ + t0.
pub fn delta_relation(d: i64) -> (i128, i128) {
    if d.rem_euclid(4) == 1 {
        (1, ((d - 1) / 4) as i128)
    } else {
        (0, d as i128)
    }
}

/// `N(a + bδ) = (a + bδ)(a + bδ')` with δ + δ' = t1, δδ' = -t0.
pub fn norm(d: i64, a: i128, b: i128) -> i128 {
    let (t1, t0) = delta_relation(d);
    a * a + t1 * a * b - t0 * b * b
}

pub fn disc(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

pub fn factor_int(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn vp(mut n: u128, p: u128) -> u32 {
    let mut e = 0;
    while n != 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|q| q * q <= n).all(|q| !n.is_multiple_of(q))
}

fn min_poly_at(d: i64, t: i128) -> i128 {
    let (t1, t0) = delta_relation(d);
    t * t - t1 * t - t0
}

/// Distinct roots of the minimal polynomial of δ modulo `p`, ascending.
pub fn roots_mod(d: i64, p: u128) -> Vec<u128> {
    let p = p as i128;
    (0..p)
        .filter(|&t| min_poly_at(d, t).rem_euclid(p) == 0)
        .map(|t| t as u128)
        .collect()
}

/// Lifts a simple root modulo `p` to a root modulo `p^j` by digit search.
pub fn hensel_root(d: i64, r: u128, p: u128, j: u32) -> u128 {
    let mut root = r as i128;
    let p = p as i128;
    let mut pk = p;
    for _ in 1..j {
        let next = pk * p;
        root = (0..p)
            .map(|t| root + t * pk)
            .find(|&c| min_poly_at(d, c).rem_euclid(next) == 0)
            .expect("simple root lifts");
        pk = next;
    }
    root as u128
}

/// One prime ideal: `p`, its norm, and the root of δ it sends δ to (split
/// and ramified) or `None` (inert).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleIdeal {
    pub p: u128,
    pub norm: u128,
    pub root: Option<u128>,
    pub split: bool,
}

pub fn ideals_above(d: i64, p: u128) -> Vec<OracleIdeal> {
    let roots = roots_mod(d, p);
    match roots.len() {
        0 => vec![OracleIdeal { p, norm: p * p, root: None, split: false }],
        1 => vec![OracleIdeal { p, norm: p, root: Some(roots[0]), split: false }],
        _ => roots
            .iter()
            .map(|&r| OracleIdeal { p, norm: p, root: Some(r), split: true })
            .collect(),
    }
}

/// Prime ideals of norm at most `bound`, sorted by norm then root.
pub fn ideals_up_to(d: i64, bound: u128) -> Vec<OracleIdeal> {
    let mut out: Vec<OracleIdeal> = (2..=bound as u64)
        .filter(|&p| is_prime(p))
        .flat_map(|p| ideals_above(d, p as u128))
        .filter(|i| i.norm <= bound)
        .collect();
    out.sort_by_key(|i| (i.norm, i.root));
    out
}

/// `v_𝔭(a + bδ)` for `x != 0`. Inert and ramified primes are the only primes
/// above `p`, so the valuation is read off `v_p(N(x))`; for split primes the
/// largest `j` with `a + b·r_j ≡ 0 (mod p^j)` is used, `r_j` the lifted root.
pub fn valuation(d: i64, a: i128, b: i128, ideal: &OracleIdeal) -> u32 {
    let n = norm(d, a, b).unsigned_abs();
    assert!(n != 0, "zero has no valuation");
    let v = vp(n, ideal.p);
    if !ideal.split {
        return if ideal.root.is_none() { v / 2 } else { v };
    }
    let r = ideal.root.unwrap();
    let mut j = 0;
    while j < v {
        let pk = ideal.p.pow(j + 1) as i128;
        let rj = hensel_root(d, r, ideal.p, j + 1) as i128;
        if (a + b * rj).rem_euclid(pk) != 0 {
            break;
        }
        j += 1;
    }
    j
}

pub fn is_kfree(d: i64, a: i128, b: i128, k: u32) -> bool {
    let n = norm(d, a, b).unsigned_abs();
    if n == 0 {
        return false;
    }
    factor_int(n).iter().all(|&(p, _)| {
        ideals_above(d, p)
            .iter()
            .all(|ideal| valuation(d, a, b, ideal) < k)
    })
}

/// Admissibility via the relation `x ~ y iff v_𝔭(x - y) >= k`.
pub fn is_admissible(d: i64, k: u32, pattern: &[(i64, i64)]) -> bool {
    let n = pattern.len() as u128;
    if n == 0 {
        return true;
    }
    let same = |ideal: &OracleIdeal, x: (i64, i64), y: (i64, i64)| {
        let (a, b) = ((x.0 - y.0) as i128, (x.1 - y.1) as i128);
        (a == 0 && b == 0) || valuation(d, a, b, ideal) >= k
    };
    let max_norm = (1..).take_while(|&q: &u128| q.pow(k) <= n).last().unwrap_or(1);
    for ideal in ideals_up_to(d, max_norm) {
        let index = ideal.norm.pow(k);
        if index > n {
            continue;
        }
        let mut reps: Vec<(i64, i64)> = Vec::new();
        for &x in pattern {
            if !reps.iter().any(|&r| same(&ideal, x, r)) {
                reps.push(x);
            }
        }
        if reps.len() as u128 == index {
            return false;
        }
    }
    true
}

/// `Σ χ(n) n^{-s}` for `n <= terms`, with `χ` the Kronecker symbol of `disc`.
pub fn dirichlet_series(disc: i64, s: f64, terms: u64) -> f64 {
    let f = disc.unsigned_abs();
    let table: Vec<i32> = (0..f).map(|n| kronecker(disc, n)).collect();
    (1..=terms)
        .rev()
        .map(|n| table[(n % f) as usize] as f64 * (n as f64).powf(-s))
        .sum()
}

/// Kronecker symbol `(D | n)` for a fundamental discriminant `D`, by
/// factoring `n` and using Euler's criterion at odd primes.
pub fn kronecker(disc: i64, n: u64) -> i32 {
    if n == 0 {
        return 0;
    }
    let mut out = 1;
    for (p, e) in factor_int(n as u128) {
        let p = p as i64;
        let sym: i32 = if p == 2 {
            if disc % 2 == 0 {
                0
            } else if disc.rem_euclid(8) == 1 || disc.rem_euclid(8) == 7 {
                1
            } else {
                -1
            }
        } else {
            let a = disc.rem_euclid(p) as u128;
            if a == 0 {
                0
            } else {
                let mut r = 1u128;
                let (mut base, mut exp) = (a, (p as u128 - 1) / 2);
                while exp > 0 {
                    if exp & 1 == 1 {
                        r = r * base % p as u128;
                    }
                    base = base * base % p as u128;
                    exp >>= 1;
                }
                if r == 1 {
                    1
                } else {
                    -1
                }
            }
        };
        out *= sym.pow(e);
    }
    out
}
