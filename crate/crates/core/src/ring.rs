//! The ring of integers `O_K = Z[δ]` of a quadratic field `K = Q(√d)`.
//!
//! Elements are stored as integral coordinates `(a, b)` with respect to the
//! ordered basis `{1, δ}`, where `δ = √d` when `d ≡ 2, 3 (mod 4)` and
//! `δ = (1 + √d)/2` when `d ≡ 1 (mod 4)`. The coordinate map is the embedding
//! of `O_K` into `Z²` used throughout the crate.
//!
//! Coordinates are `i128` and every operation is overflow-checked, so an
//! oversized product panics instead of wrapping.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::arith::{exact_sqrt, is_squarefree};
use crate::error::{Error, Result};

/// Default coefficient bound for the fundamental unit search.
pub const DEFAULT_UNIT_SEARCH_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// `δ = √d`, for `d ≡ 2, 3 (mod 4)`.
    SqrtBasis,
    /// `δ = (1 + √d)/2`, for `d ≡ 1 (mod 4)`.
    HalfBasis,
}

/// A quadratic field given by its square-free parameter `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldParams {
    d: i64,
    disc: i64,
    basis: BasisKind,
}

impl FieldParams {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::ExcludedValue(d));
        }
        if !is_squarefree(d) {
            return Err(Error::NotSquareFree(d));
        }
        let (disc, basis) = if d.rem_euclid(4) == 1 {
            (d, BasisKind::HalfBasis)
        } else {
            (4 * d, BasisKind::SqrtBasis)
        };
        Ok(FieldParams { d, disc, basis })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The field discriminant `d_K`.
    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    pub fn basis_kind(&self) -> BasisKind {
        self.basis
    }

    /// Conductor of the attached quadratic character, `|d_K|`.
    pub fn conductor(&self) -> u64 {
        self.disc.unsigned_abs()
    }

    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    /// The constant `c` with `δ² = c` (square-root basis) or `δ² = δ + c`
    /// (half basis).
    fn delta_square_constant(&self) -> i128 {
        match self.basis {
            BasisKind::SqrtBasis => self.d as i128,
            BasisKind::HalfBasis => ((self.d - 1) / 4) as i128,
        }
    }

    /// Coefficients `(t1, t0)` of the minimal polynomial `X² - t1 X - t0` of δ.
    pub fn min_poly(&self) -> (i128, i128) {
        match self.basis {
            BasisKind::SqrtBasis => (0, self.d as i128),
            BasisKind::HalfBasis => (1, self.delta_square_constant()),
        }
    }

    pub fn mul(&self, x: AlgInt, y: AlgInt) -> AlgInt {
        let c = self.delta_square_constant();
        let bf = x.b * y.b;
        let a = x.a * y.a + bf * c;
        let b = x.a * y.b + x.b * y.a;
        match self.basis {
            BasisKind::SqrtBasis => AlgInt::new(a, b),
            BasisKind::HalfBasis => AlgInt::new(a, b + bf),
        }
    }

    /// `x^e` for `e >= 0`; negative exponents are accepted for units only.
    pub fn pow(&self, x: AlgInt, e: i64) -> Result<AlgInt> {
        let base = if e < 0 { self.unit_inverse(x)? } else { x };
        let mut acc = AlgInt::ONE;
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        Ok(acc)
    }

    pub fn unit_inverse(&self, u: AlgInt) -> Result<AlgInt> {
        match self.norm(u) {
            1 => Ok(self.conjugate(u)),
            -1 => Ok(-self.conjugate(u)),
            n => Err(Error::NotAUnit(n)),
        }
    }

    /// The field norm, given by the binary quadratic form
    /// `a² - d b²` or `a² + ab + ((1-d)/4) b²`.
    pub fn norm(&self, x: AlgInt) -> i128 {
        let c = self.delta_square_constant();
        match self.basis {
            BasisKind::SqrtBasis => x.a * x.a - c * x.b * x.b,
            BasisKind::HalfBasis => x.a * x.a + x.a * x.b - c * x.b * x.b,
        }
    }

    /// The nontrivial Galois automorphism.
    pub fn conjugate(&self, x: AlgInt) -> AlgInt {
        match self.basis {
            BasisKind::SqrtBasis => AlgInt::new(x.a, -x.b),
            BasisKind::HalfBasis => AlgInt::new(x.a + x.b, -x.b),
        }
    }

    pub fn trace(&self, x: AlgInt) -> i128 {
        match self.basis {
            BasisKind::SqrtBasis => 2 * x.a,
            BasisKind::HalfBasis => 2 * x.a + x.b,
        }
    }

    pub fn is_unit(&self, x: AlgInt) -> bool {
        self.norm(x).abs() == 1
    }

    /// The element `(u + v√d)/2`, rejected unless it lies in `O_K`.
    pub fn from_half_presentation(&self, u: i128, v: i128) -> Result<AlgInt> {
        match self.basis {
            BasisKind::SqrtBasis if u % 2 == 0 && v % 2 == 0 => Ok(AlgInt::new(u / 2, v / 2)),
            BasisKind::HalfBasis if (u - v) % 2 == 0 => Ok(AlgInt::new((u - v) / 2, v)),
            _ => Err(Error::InvalidArgument(format!(
                "({u} + {v}√{})/2 is not an algebraic integer",
                self.d
            ))),
        }
    }

    /// Numerical value of δ: real for real fields, `(re, im)` in general.
    pub fn delta_complex(&self) -> (f64, f64) {
        let root = (self.d.unsigned_abs() as f64).sqrt();
        let (re, im) = if self.is_real() { (root, 0.0) } else { (0.0, root) };
        match self.basis {
            BasisKind::SqrtBasis => (re, im),
            BasisKind::HalfBasis => ((1.0 + re) / 2.0, im / 2.0),
        }
    }

    /// The complex embedding `a + bδ ∈ C` (for real fields, the first real
    /// embedding with `√d > 0`).
    pub fn embed(&self, x: AlgInt) -> (f64, f64) {
        let (re, im) = self.delta_complex();
        (x.a as f64 + x.b as f64 * re, x.b as f64 * im)
    }

    pub fn unit_group(&self) -> Result<UnitGroupDescription> {
        self.unit_group_with_bound(DEFAULT_UNIT_SEARCH_BOUND)
    }

    /// Torsion units and, for real fields, the fundamental unit found by
    /// scanning `b = 1, 2, ...` for solutions of `|N(a + bδ)| = 1`.
    pub fn unit_group_with_bound(&self, bound: u64) -> Result<UnitGroupDescription> {
        if self.is_real() {
            let fundamental = self.fundamental_unit(bound)?;
            Ok(UnitGroupDescription {
                torsion: vec![AlgInt::new(-1, 0), AlgInt::ONE],
                fundamental: Some(fundamental),
            })
        } else {
            // The norm form is positive definite and every unit has
            // coordinates in [-1, 1].
            let mut torsion = Vec::new();
            for a in -1..=1 {
                for b in -1..=1 {
                    let x = AlgInt::new(a, b);
                    if self.norm(x) == 1 {
                        torsion.push(x);
                    }
                }
            }
            Ok(UnitGroupDescription {
                torsion,
                fundamental: None,
            })
        }
    }

    fn fundamental_unit(&self, bound: u64) -> Result<AlgInt> {
        let d = self.d as i128;
        for b in 1..=bound as i128 {
            // Smallest positive trace (or `a`) at the first admissible b gives
            // the smallest unit above 1.
            let candidate = match self.basis {
                BasisKind::SqrtBasis => [-1i128, 1]
                    .iter()
                    .filter_map(|s| exact_sqrt(d * b * b + s))
                    .filter(|&a| a > 0)
                    .min()
                    .map(|a| AlgInt::new(a, b)),
                BasisKind::HalfBasis => [-4i128, 4]
                    .iter()
                    .filter_map(|s| exact_sqrt(d * b * b + s))
                    .filter(|&t| t > 0)
                    .min()
                    .map(|t| AlgInt::new((t - b) / 2, b)),
            };
            if let Some(eps) = candidate {
                return Ok(eps);
            }
        }
        Err(Error::SearchBoundExceeded(bound))
    }
}

impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(√{})", self.d)
    }
}

/// An element `a + bδ` of `O_K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AlgInt {
    pub a: i128,
    pub b: i128,
}

impl AlgInt {
    pub const ZERO: AlgInt = AlgInt { a: 0, b: 0 };
    pub const ONE: AlgInt = AlgInt { a: 1, b: 0 };
    pub const DELTA: AlgInt = AlgInt { a: 0, b: 1 };

    pub const fn new(a: i128, b: i128) -> Self {
        AlgInt { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn scale(&self, n: i128) -> AlgInt {
        AlgInt::new(self.a * n, self.b * n)
    }

    /// Lattice point in `Z²`, if it fits in `i64` coordinates.
    pub fn to_point(&self) -> Option<(i64, i64)> {
        Some((i64::try_from(self.a).ok()?, i64::try_from(self.b).ok()?))
    }
}

impl From<(i64, i64)> for AlgInt {
    fn from((a, b): (i64, i64)) -> Self {
        AlgInt::new(a as i128, b as i128)
    }
}

impl Add for AlgInt {
    type Output = AlgInt;
    fn add(self, rhs: AlgInt) -> AlgInt {
        AlgInt::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for AlgInt {
    type Output = AlgInt;
    fn sub(self, rhs: AlgInt) -> AlgInt {
        AlgInt::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for AlgInt {
    type Output = AlgInt;
    fn neg(self) -> AlgInt {
        AlgInt::new(-self.a, -self.b)
    }
}

impl fmt::Display for AlgInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupDescription {
    /// Roots of unity in `O_K`, sorted by coordinates.
    pub torsion: Vec<AlgInt>,
    /// The fundamental unit `ε₀ > 1`, present exactly for real fields.
    pub fundamental: Option<AlgInt>,
}
