//! Dedekind zeta values of quadratic fields.
//!
//! `ζ_K(s) = ζ(s) L(χ, s)` where `χ = (d_K | ·)` is the Kronecker character of
//! conductor `f = |d_K|`. When `k` has the parity of `χ` (odd for imaginary
//! fields, even for real ones) the L-value has the closed form
//!
//! ```text
//! L(χ, k) = (-1)^(1 + (k - e)/2) · τ(χ) / (2 i^e) · (2π/f)^k · B_{k,χ} / k!
//! ```
//!
//! with `e ∈ {0, 1}` the parity of `χ`. Using `τ(χ) = ±√f` or `±i√f` this is
//! a rational multiple of `π^k / √f`, which is how [`ExactZetaValue`] stores
//! it.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{self, kronecker};
use crate::error::{Error, Result};
use crate::ideals::{splitting_kind, SplitKind};
use crate::ring::FieldParams;

/// Primes per block of the parallel Euler product.
const EULER_BLOCK: usize = 4096;

/// Truncated Euler product `∏_{No(𝔭) <= prime_bound} (1 - No(𝔭)^{-s})^{-1}`.
pub fn zeta_k_euler(field: &FieldParams, s: f64, prime_bound: u64) -> f64 {
    assert!(s > 1.0, "s must exceed 1");
    let primes = arith::primes_up_to(prime_bound);
    let block_sums: Vec<f64> = primes
        .par_chunks(EULER_BLOCK)
        .map(|block| {
            let mut acc = 0.0;
            for &p in block {
                let pf = p as f64;
                acc += match splitting_kind(field, p) {
                    SplitKind::Split => -2.0 * (-pf.powf(-s)).ln_1p(),
                    SplitKind::Ramified => -(-pf.powf(-s)).ln_1p(),
                    SplitKind::Inert if p.checked_mul(p).is_some_and(|n| n <= prime_bound) => {
                        -(-pf.powf(-2.0 * s)).ln_1p()
                    }
                    SplitKind::Inert => 0.0,
                };
            }
            acc
        })
        .collect();
    block_sums.iter().sum::<f64>().exp()
}

/// A real Dirichlet character given by a Kronecker symbol `(D | ·)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirichletChar {
    disc: i64,
    modulus: u64,
}

impl DirichletChar {
    /// The trivial character modulo 1.
    pub fn trivial() -> Self {
        DirichletChar { disc: 1, modulus: 1 }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, a: i64) -> i8 {
        kronecker(self.disc, a)
    }

    /// `χ(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        self.value(-1) == -1
    }

    /// One period of values, `χ(1), ..., χ(f)`.
    pub fn table(&self) -> Vec<i8> {
        (1..=self.modulus as i64).map(|a| self.value(a)).collect()
    }
}

/// The quadratic character `(d_K | ·)` of the field, of conductor `|d_K|`.
pub fn kronecker_character(field: &FieldParams) -> DirichletChar {
    DirichletChar {
        disc: field.discriminant(),
        modulus: field.conductor(),
    }
}

/// `τ(χ) = Σ χ(a) e^{2πia/f}`, snapped to `sign · √f` or `sign · i√f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussSum {
    /// The directly summed value.
    pub value: Complex64,
    pub sign: i8,
    pub imaginary: bool,
}

impl GaussSum {
    /// The exact value `sign·√f` (or `sign·i√f`) as a complex float.
    pub fn snapped(&self, modulus: u64) -> Complex64 {
        let r = self.sign as f64 * (modulus as f64).sqrt();
        if self.imaginary {
            Complex64::new(0.0, r)
        } else {
            Complex64::new(r, 0.0)
        }
    }
}

pub fn gauss_sum(chi: &DirichletChar) -> GaussSum {
    let f = chi.modulus();
    let mut value = Complex64::new(0.0, 0.0);
    for (i, &c) in chi.table().iter().enumerate() {
        if c != 0 {
            let angle = 2.0 * PI * (i as f64 + 1.0) / f as f64;
            value += Complex64::from_polar(c as f64, angle);
        }
    }
    let imaginary = chi.is_odd();
    let component = if imaginary { value.im } else { value.re };
    let sign = if component >= 0.0 { 1 } else { -1 };
    let snapped = GaussSum { value, sign, imaginary }.snapped(f);
    assert!(
        (snapped - value).norm() < 1e-6 * (f as f64).sqrt().max(1.0),
        "Gauss sum {value} is not ±√f or ±i√f for f = {f}"
    );
    GaussSum {
        value,
        sign,
        imaginary,
    }
}

/// `B_0, ..., B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * BigRational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(j)));
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli_number(n: usize) -> BigRational {
    bernoulli_numbers(n).pop().expect("non-empty")
}

/// `B_n(t) = Σ_j C(n, j) B_j t^(n - j)`.
pub fn bernoulli_polynomial_value(n: usize, t: &BigRational) -> BigRational {
    let b = bernoulli_numbers(n);
    let mut acc = BigRational::zero();
    for (j, bj) in b.iter().enumerate() {
        let coeff = BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(j)));
        acc += coeff * bj * num_traits::pow(t.clone(), n - j);
    }
    acc
}

/// `B_{k,χ} = f^(k-1) Σ_{a=1}^{f} χ(a) B_k(a/f)`.
pub fn generalized_bernoulli(chi: &DirichletChar, k: usize) -> BigRational {
    assert!(k >= 1, "k must be positive");
    let f = chi.modulus();
    let bk = bernoulli_numbers(k);
    let fq = BigRational::from_integer(BigInt::from(f));
    let mut acc = BigRational::zero();
    for (i, &c) in chi.table().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let t = BigRational::new(BigInt::from(i + 1), BigInt::from(f));
        let mut poly = BigRational::zero();
        for (j, bj) in bk.iter().enumerate() {
            let coeff = BigRational::from_integer(binomial(BigInt::from(k), BigInt::from(j)));
            poly += coeff * bj * num_traits::pow(t.clone(), k - j);
        }
        if c > 0 {
            acc += poly;
        } else {
            acc -= poly;
        }
    }
    acc * num_traits::pow(fq, k - 1)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// A number `rational · π^pi_power`, divided by `√f` when `inv_sqrt_disc` is
/// set, times the Riemann zeta value `ζ(k)` when `odd_zeta_factor = Some(k)`.
/// The last factor has no closed form and only enters the float shadow.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactZetaValue {
    pub rational: BigRational,
    pub pi_power: u32,
    pub inv_sqrt_disc: bool,
    /// `f = |d_K|`, the number under the square root.
    pub disc_abs: u64,
    pub odd_zeta_factor: Option<u32>,
    pub float_shadow: f64,
}

impl ExactZetaValue {
    fn new(
        rational: BigRational,
        pi_power: u32,
        inv_sqrt_disc: bool,
        disc_abs: u64,
        odd_zeta_factor: Option<u32>,
    ) -> Self {
        let mut float_shadow = rational.to_f64().expect("finite rational") * PI.powi(pi_power as i32);
        if inv_sqrt_disc {
            float_shadow /= (disc_abs as f64).sqrt();
        }
        if let Some(k) = odd_zeta_factor {
            float_shadow *= riemann_zeta(k);
        }
        ExactZetaValue {
            rational,
            pi_power,
            inv_sqrt_disc,
            disc_abs,
            odd_zeta_factor,
            float_shadow,
        }
    }

    /// Whether the value is fully exact (no odd zeta factor).
    pub fn is_exact(&self) -> bool {
        self.odd_zeta_factor.is_none()
    }

    /// The rational `q` with `value = q · π^n · √f` (the `1/√f` factor written
    /// as `√f / f`).
    pub fn rational_times_sqrt_disc(&self) -> BigRational {
        if self.inv_sqrt_disc {
            &self.rational / BigRational::from_integer(BigInt::from(self.disc_abs))
        } else {
            self.rational.clone()
        }
    }
}

/// `ζ(k)` for integer `k >= 2` by Euler–Maclaurin summation.
pub fn riemann_zeta(k: u32) -> f64 {
    assert!(k >= 2);
    let s = k as f64;
    let n = 64u32;
    let nf = n as f64;
    let mut acc = 0.0;
    for i in (1..n).rev() {
        acc += (i as f64).powf(-s);
    }
    acc + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + s * nf.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * nf.powf(-s - 3.0) / 720.0
}

/// `ζ(2m) = (-1)^(m+1) B_{2m} (2π)^{2m} / (2 (2m)!)` as `(rational, 2m)`.
fn riemann_zeta_even_exact(k: usize) -> BigRational {
    debug_assert!(k.is_multiple_of(2) && k >= 2);
    let m = k / 2;
    let sign = if m % 2 == 1 { 1 } else { -1 };
    let two_k = BigInt::one() << k;
    bernoulli_number(k) * BigRational::new(two_k * sign, factorial(k) * 2)
}

fn parity_name(odd: bool) -> &'static str {
    if odd {
        "odd character, k must be odd"
    } else {
        "even character, k must be even"
    }
}

/// `L(χ, k)` in closed form for `k >= 1` of the same parity as `χ`.
pub fn l_value_for_character(chi: &DirichletChar, k: u32) -> Result<ExactZetaValue> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let odd = chi.is_odd();
    let e = u32::from(odd);
    if k % 2 != e {
        return Err(Error::ParityMismatch {
            k,
            parity: parity_name(odd),
        });
    }
    let f = chi.modulus();
    let tau = gauss_sum(chi);
    // τ/(2 i^e) = sign·√f/2 = sign·f/(2√f)
    let sign = if (1 + (k - e) / 2).is_multiple_of(2) { 1 } else { -1 } * tau.sign as i64;
    let ku = k as usize;
    let numer = BigInt::from(sign) * (BigInt::one() << (ku - 1));
    let denom = num_traits::pow(BigInt::from(f), ku - 1) * factorial(ku);
    let rational = generalized_bernoulli(chi, ku) * BigRational::new(numer, denom);
    Ok(ExactZetaValue::new(rational, k, true, f, None))
}

/// `L(χ_K, k)` for `k >= 2` of the parity of the field character.
pub fn l_value(field: &FieldParams, k: u32) -> Result<ExactZetaValue> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k} must be at least 2")));
    }
    l_value_for_character(&kronecker_character(field), k)
}

/// `ζ_K(k) = ζ(k) L(χ, k)`. For odd `k` the factor `ζ(k)` stays symbolic.
pub fn zeta_k_special(field: &FieldParams, k: u32) -> Result<ExactZetaValue> {
    let l = l_value(field, k)?;
    if k.is_multiple_of(2) {
        let rational = riemann_zeta_even_exact(k as usize) * &l.rational;
        Ok(ExactZetaValue::new(rational, 2 * k, true, l.disc_abs, None))
    } else {
        Ok(ExactZetaValue::new(l.rational, k, true, l.disc_abs, Some(k)))
    }
}

/// `α_k = ζ_K(k) / (ζ(k) π^k) = L(χ, k)/π^k`, an exact rational multiple of
/// `1/√f`.
pub fn alpha_invariant(field: &FieldParams, k: u32) -> Result<ExactZetaValue> {
    let l = l_value(field, k)?;
    Ok(ExactZetaValue::new(l.rational, 0, true, l.disc_abs, None))
}

/// `Σ_{n <= terms} χ(n) n^{-k}`, summed from the tail.
pub fn l_series(chi: &DirichletChar, k: u32, terms: u64) -> f64 {
    let table = chi.table();
    let f = chi.modulus();
    let mut acc = 0.0;
    for n in (1..=terms).rev() {
        let c = table[((n - 1) % f) as usize];
        if c != 0 {
            acc += c as f64 * (n as f64).powi(-(k as i32));
        }
    }
    acc
}
