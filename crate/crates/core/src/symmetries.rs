//! Finite checks of the stabiliser of `V'_k` inside `GL(2, Z)`.
//!
//! The predicted stabiliser consists of the maps `x ↦ ε·σ(x)` for units `ε`
//! and `σ ∈ Gal(K/Q)`, written as integer matrices in the basis `{1, δ}`.
//! Everything here checks necessary conditions on finite boxes: a failed check
//! disproves membership, a passed one is evidence only.
//!
//! [`counterexample_pattern`] certifies non-membership in the normaliser: for
//! a matrix outside the stabiliser it builds an admissible pattern whose image
//! meets every coset of some `Γ_{𝔭₀^k}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideals::{factor_principal, is_kfree, prime_ideals_up_to, PrimeIdealRef};
use crate::kfree::KFreeMask;
use crate::lattice::Sublattice;
use crate::pointset::{LatticeBox, Point, PointSet};
use crate::ring::{AlgInt, FieldParams};
use crate::shiftspace::{ideal_lattice, ideal_product_lattice, is_admissible, violated_ideal};

/// Default window for the finite checks.
pub const DEFAULT_BOX_RADIUS: u32 = 100;
/// Default bound on matrix entries in [`stabilizer_search`].
pub const DEFAULT_ENTRY_BOUND: i64 = 3;
/// Default search radius for the witness `w` in [`counterexample_pattern`].
pub const DEFAULT_WITNESS_RADIUS: i64 = 200;

/// An integer matrix with determinant ±1, acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GLMatrix {
    m: [[i128; 2]; 2],
}

impl GLMatrix {
    pub const IDENTITY: GLMatrix = GLMatrix {
        m: [[1, 0], [0, 1]],
    };

    pub fn new(m11: i128, m12: i128, m21: i128, m22: i128) -> Result<Self> {
        let det = m11 * m22 - m12 * m21;
        if det != 1 && det != -1 {
            return Err(Error::InvalidArgument(format!(
                "matrix [[{m11},{m12}],[{m21},{m22}]] has determinant {det}"
            )));
        }
        Ok(GLMatrix {
            m: [[m11, m12], [m21, m22]],
        })
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(c1: AlgInt, c2: AlgInt) -> Result<Self> {
        GLMatrix::new(c1.a, c2.a, c1.b, c2.b)
    }

    pub fn entries(&self) -> [[i128; 2]; 2] {
        self.m
    }

    pub fn det(&self) -> i128 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn max_abs_entry(&self) -> i128 {
        self.m.iter().flatten().map(|e| e.abs()).max().unwrap_or(0)
    }

    pub fn apply(&self, (x, y): (i128, i128)) -> (i128, i128) {
        (
            self.m[0][0] * x + self.m[0][1] * y,
            self.m[1][0] * x + self.m[1][1] * y,
        )
    }

    pub fn apply_alg(&self, v: AlgInt) -> AlgInt {
        let (a, b) = self.apply((v.a, v.b));
        AlgInt::new(a, b)
    }

    /// Image of a point set; fails if a coordinate leaves the `i64` range.
    pub fn apply_set(&self, set: &PointSet) -> Result<PointSet> {
        set.iter()
            .map(|&(x, y)| {
                let (u, v) = self.apply((x as i128, y as i128));
                match (i64::try_from(u), i64::try_from(v)) {
                    (Ok(u), Ok(v)) => Ok((u, v)),
                    _ => Err(Error::SearchBudgetExceeded(
                        "image point exceeds 64-bit coordinates".into(),
                    )),
                }
            })
            .collect::<Result<Vec<Point>>>()
            .map(PointSet::from_iter)
    }

    pub fn mul(&self, rhs: &GLMatrix) -> GLMatrix {
        let (a, b) = (self.m, rhs.m);
        GLMatrix {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    pub fn inverse(&self) -> GLMatrix {
        let det = self.det();
        let m = self.m;
        GLMatrix {
            m: [
                [det * m[1][1], -det * m[0][1]],
                [-det * m[1][0], det * m[0][0]],
            ],
        }
    }

    /// Every matrix with entries in `[-bound, bound]` and determinant ±1, in
    /// lexicographic order.
    pub fn all_with_entry_bound(bound: i64) -> Vec<GLMatrix> {
        let r = -(bound as i128)..=bound as i128;
        let mut out = Vec::new();
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        if let Ok(m) = GLMatrix::new(a, b, c, d) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for GLMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m;
        write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// Parses `[[a,b],[c,d]]` or the flat form `a,b,c,d` (row-major).
impl FromStr for GLMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '[' && *c != ']')
            .collect();
        let entries: Vec<i128> = cleaned
            .split(',')
            .map(|t| {
                t.parse::<i128>()
                    .map_err(|e| Error::Parse(format!("bad matrix entry {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        let [a, b, c, d] = entries.as_slice() else {
            return Err(Error::Parse(format!("matrix needs 4 entries, got {s:?}")));
        };
        GLMatrix::new(*a, *b, *c, *d)
    }
}

/// The map `x ↦ unit · σ(x)`, with `σ` the identity or the conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetryElement {
    pub unit: AlgInt,
    pub use_conjugation: bool,
}

/// The matrix of `x ↦ unit · σ(x)` acting on coordinates.
pub fn embed_map(field: &FieldParams, elem: &SymmetryElement) -> Result<GLMatrix> {
    if !field.is_unit(elem.unit) {
        return Err(Error::NotAUnit(field.norm(elem.unit)));
    }
    let sigma = |x: AlgInt| {
        if elem.use_conjugation {
            field.conjugate(x)
        } else {
            x
        }
    };
    GLMatrix::from_columns(
        field.mul(elem.unit, sigma(AlgInt::ONE)),
        field.mul(elem.unit, sigma(AlgInt::DELTA)),
    )
}

/// Whether `M = embed_map(ε, σ^j)` for some unit `ε`. Exact: `ε` must be the
/// image of 1.
pub fn is_predicted_element(field: &FieldParams, m: &GLMatrix) -> bool {
    let unit = m.apply_alg(AlgInt::ONE);
    field.is_unit(unit)
        && [false, true].iter().any(|&conj| {
            embed_map(
                field,
                &SymmetryElement {
                    unit,
                    use_conjugation: conj,
                },
            )
            .is_ok_and(|e| e == *m)
        })
}

/// `O^× ⋊ Gal(K/Q)` as matrices. For real fields the unit group is truncated
/// to `±ε₀^m` with `|m| <= unit_power_bound`.
pub fn predicted_stabilizer(field: &FieldParams, unit_power_bound: u32) -> Result<Vec<GLMatrix>> {
    let group = field.unit_group()?;
    let mut units = group.torsion.clone();
    if let Some(eps) = group.fundamental {
        units.clear();
        let b = unit_power_bound as i64;
        for m in -b..=b {
            let u = field.pow(eps, m)?;
            units.push(u);
            units.push(-u);
        }
    }
    let mut out = Vec::new();
    for unit in units {
        for use_conjugation in [false, true] {
            out.push(embed_map(
                field,
                &SymmetryElement {
                    unit,
                    use_conjugation,
                },
            )?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Whether `M` maps `V'_k ∩ box` into `V'_k` wherever the image stays in the
/// box.
pub fn check_preserves(field: &FieldParams, k: u32, m: &GLMatrix, window: &LatticeBox) -> bool {
    check_preserves_mask(&KFreeMask::new(field, k, window), m)
}

/// [`check_preserves`] against a precomputed mask.
pub fn check_preserves_mask(mask: &KFreeMask, m: &GLMatrix) -> bool {
    mask.points().all(|(x, y)| {
        let image = m.apply((x as i128, y as i128));
        mask.get(image) != Some(false)
    })
}

/// All matrices with entries bounded by `entry_bound` that pass
/// [`check_preserves`] on the box, sorted.
pub fn stabilizer_search(
    field: &FieldParams,
    k: u32,
    entry_bound: i64,
    window: &LatticeBox,
) -> Vec<GLMatrix> {
    let mask = KFreeMask::new(field, k, window);
    let mut found: Vec<GLMatrix> = GLMatrix::all_with_entry_bound(entry_bound)
        .into_par_iter()
        .filter(|m| check_preserves_mask(&mask, m))
        .collect();
    found.sort_unstable();
    found
}

/// Whether [`stabilizer_search`] returns the same set for `k = 2, ..., k_max`.
pub fn stab_k_independence(
    field: &FieldParams,
    window: &LatticeBox,
    k_max: u32,
    entry_bound: i64,
) -> bool {
    assert!(k_max >= 3, "k_max must be at least 3");
    let base = stabilizer_search(field, 2, entry_bound, window);
    (3..=k_max).all(|k| stabilizer_search(field, k, entry_bound, window) == base)
}

/// A certified pair: `pattern` is admissible, `image = M(pattern)` is not.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub matrix: GLMatrix,
    pub pattern: PointSet,
    pub image: PointSet,
    /// The k-free element whose image is divisible by `𝔭₀^k`.
    pub witness: Point,
    /// `𝔭₀`.
    pub violated_ideal: PrimeIdealRef,
    /// Coset representatives of `Γ_{𝔭₀^k}` met by the image (all of them).
    pub met_cosets: Vec<(i128, i128)>,
}

/// Points with `max(|x|, |y|) = r`, in sorted order.
fn shell(r: i64) -> Vec<Point> {
    if r == 0 {
        return vec![(0, 0)];
    }
    let mut pts = Vec::with_capacity(8 * r as usize);
    for t in -r..=r {
        pts.extend([(t, -r), (t, r)]);
        if t.abs() != r {
            pts.extend([(-r, t), (r, t)]);
        }
    }
    pts.sort_unstable();
    pts
}

/// Finds a k-free `w` and a prime ideal `𝔭₀` with `𝔭₀^k | (M w)`.
fn find_witness(
    field: &FieldParams,
    k: u32,
    m: &GLMatrix,
    max_radius: i64,
) -> Result<(AlgInt, PrimeIdealRef)> {
    for r in 1..=max_radius {
        for p in shell(r) {
            let w = AlgInt::from(p);
            if !is_kfree(field, w, k) {
                continue;
            }
            let image = m.apply_alg(w);
            let mut hits: Vec<PrimeIdealRef> = factor_principal(field, image)?
                .into_iter()
                .filter(|&(_, e)| e >= k)
                .map(|(ideal, _)| ideal)
                .collect();
            hits.sort_by_key(PrimeIdealRef::sort_key);
            if let Some(&ideal) = hits.first() {
                return Ok((w, ideal));
            }
        }
    }
    Err(Error::SearchBudgetExceeded(format!(
        "no k-free w with a k-th prime power dividing M(w) within radius {max_radius}"
    )))
}

fn to_point(x: AlgInt) -> Result<Point> {
    x.to_point().ok_or_else(|| {
        Error::SearchBudgetExceeded("pattern point exceeds 64-bit coordinates".into())
    })
}

/// Builds an admissible pattern `S'` with non-admissible image `M(S')`.
///
/// 1. Find k-free `w` and `𝔭₀` with `𝔭₀^k | (M w)`; set `n = No(𝔭₀)^k`.
/// 2. Let `𝔏 = ∏_{𝔭 ∈ P} 𝔭^k` over all prime ideals of norm below `No(𝔭₀)`
///    (or the smallest prime ideal of larger norm when there are none).
/// 3. Pick `s_2, ..., s_n ∈ 1 + 𝔏` whose images meet every nonzero coset of
///    `𝔭₀^k`; with `s_1 = w` the image meets all cosets.
/// 4. For `𝔭₀` and any other prime of the same norm whose cosets are all met
///    by `S`, replace some `s_j` by `s_j + w`. This keeps `M(s_j)` modulo
///    `𝔭₀^k` and keeps every element congruent to `1`, `w` or `1 + w`
///    modulo `𝔏`.
///
/// Both properties are re-checked with [`is_admissible`] before returning.
pub fn counterexample_pattern(
    field: &FieldParams,
    k: u32,
    m: &GLMatrix,
    witness_radius: i64,
) -> Result<Counterexample> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k} must be at least 2")));
    }
    if is_predicted_element(field, m) {
        return Err(Error::IsStabilizerElement);
    }
    let (w, p0) = find_witness(field, k, m, witness_radius)?;
    let norm0 = p0.norm();
    let gamma0 = ideal_lattice(field, &p0, k);
    let n = gamma0.index();

    let mut aux: Vec<PrimeIdealRef> = prime_ideals_up_to(field, norm0.saturating_sub(1));
    if aux.is_empty() {
        let mut bound = norm0 + 1;
        while aux.is_empty() {
            aux = prime_ideals_up_to(field, bound)
                .into_iter()
                .filter(|i| i.norm() != norm0)
                .take(1)
                .collect();
            bound *= 2;
        }
    }
    let aux_lattice = aux
        .iter()
        .map(|i| ideal_lattice(field, i, k))
        .reduce(|l, r| ideal_product_lattice(field, &l, &r))
        .expect("auxiliary set is non-empty");

    // One element of 1 + 𝔏 per nonzero coset of 𝔭₀^k under M.
    let [(a, _), (b, c)] = aux_lattice.columns();
    let mut by_coset: BTreeMap<u128, AlgInt> = BTreeMap::new();
    let half = (n / 2) as i128;
    'scan: for j in 0..n as i128 {
        for i in 0..n as i128 {
            // Centre the coefficients to keep coordinates small.
            let (ci, cj) = (i - half, j - half);
            let s = AlgInt::new(1 + ci * a + cj * b, cj * c);
            let coset = gamma0.coset_id(m.apply((s.a, s.b)));
            if coset != 0 {
                by_coset.entry(coset).or_insert(s);
                if by_coset.len() as u128 == n - 1 {
                    break 'scan;
                }
            }
        }
    }
    if by_coset.len() as u128 != n - 1 {
        return Err(Error::SearchBudgetExceeded(
            "1 + 𝔏 does not reach every coset of 𝔭₀^k".into(),
        ));
    }
    let mut elems: Vec<AlgInt> = std::iter::once(w).chain(by_coset.into_values()).collect();

    // Repair step for 𝔭₀ and the other primes of the same norm.
    let same_norm: Vec<(PrimeIdealRef, Sublattice)> = prime_ideals_up_to(field, norm0)
        .into_iter()
        .filter(|i| i.norm() == norm0)
        .map(|i| (i, ideal_lattice(field, &i, k)))
        .collect();
    let meets_all = |elems: &[AlgInt], lat: &Sublattice| {
        let mut hit: Vec<u128> = elems.iter().map(|e| lat.coset_id((e.a, e.b))).collect();
        hit.sort_unstable();
        hit.dedup();
        hit.len() as u128 == lat.index()
    };
    let mut modified = vec![false; elems.len()];
    for idx in 0..same_norm.len() {
        if !meets_all(&elems, &same_norm[idx].1) {
            continue;
        }
        let repaired = (1..elems.len()).filter(|&j| !modified[j]).find_map(|j| {
            let mut trial = elems.clone();
            trial[j] = trial[j] + w;
            let mut sorted = trial.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let distinct = sorted.len() == trial.len();
            let ok = distinct && same_norm[..=idx].iter().all(|(_, lat)| !meets_all(&trial, lat));
            ok.then_some((j, trial))
        });
        match repaired {
            Some((j, trial)) => {
                modified[j] = true;
                elems = trial;
            }
            None => {
                return Err(Error::SearchBudgetExceeded(format!(
                    "no repair move for the prime {}",
                    same_norm[idx].0
                )))
            }
        }
    }

    let pattern: PointSet = elems.iter().map(|&e| to_point(e)).collect::<Result<_>>()?;
    let image = m.apply_set(&pattern)?;
    if pattern.len() as u128 != n || !is_admissible(field, k, &pattern) {
        return Err(Error::SearchBudgetExceeded(
            "constructed pattern failed admissibility certification".into(),
        ));
    }
    let Some(bad) = violated_ideal(field, k, &image) else {
        return Err(Error::SearchBudgetExceeded(
            "image of the constructed pattern is admissible".into(),
        ));
    };
    let mut met: Vec<(i128, i128)> = image
        .iter()
        .map(|&(x, y)| gamma0.reduce((x as i128, y as i128)))
        .collect();
    met.sort_unstable();
    met.dedup();
    debug_assert_eq!(met.len() as u128, n);
    let _ = bad;
    Ok(Counterexample {
        matrix: *m,
        pattern,
        image,
        witness: to_point(w)?,
        violated_ideal: p0,
        met_cosets: met,
    })
}
