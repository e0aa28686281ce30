//! The embedded k-free set `V'_k` on finite windows, the ramified-support set
//! `W`, level sets of the norm form, and density estimates.

use rayon::prelude::*;

use crate::arith::factor;
use crate::ideals::{is_kfree, prime_ideals_with_power_up_to};
use crate::lattice::Sublattice;
use crate::pointset::{LatticeBox, Point, PointSet};
use crate::ring::{AlgInt, BasisKind, FieldParams};
use crate::shiftspace::ideal_lattice;

/// Rows per parallel block. Fixed so that merges are independent of the
/// thread count.
const BLOCK_ROWS: u64 = 32;

/// An upper bound for `|N(x)|` over the box.
pub fn max_norm_bound(field: &FieldParams, window: &LatticeBox) -> u128 {
    let (a, b) = window.max_abs();
    let (a, b) = (a as u128, b as u128);
    let d = field.d().unsigned_abs() as u128;
    match field.basis_kind() {
        BasisKind::SqrtBasis => a * a + d * b * b,
        BasisKind::HalfBasis => a * a + a * b + (d + 1) / 4 * b * b,
    }
}

/// The lattices `Γ_{𝔭^k}` that can contain a nonzero point of the box.
pub fn sieve_lattices(field: &FieldParams, k: u32, window: &LatticeBox) -> Vec<Sublattice> {
    let bound = max_norm_bound(field, window);
    prime_ideals_with_power_up_to(field, k, bound)
        .iter()
        .map(|ideal| ideal_lattice(field, ideal, k))
        .collect()
}

/// Marks every point of `block` lying in one of the lattices; returns the
/// survivor mask in row-major order.
fn sieve_block(lattices: &[Sublattice], block: &LatticeBox) -> Vec<bool> {
    let w = block.width() as usize;
    let mut alive = vec![true; block.area() as usize];
    let x_min = block.x_min() as i128;
    let x_max = block.x_max() as i128;
    for lat in lattices {
        let (a, c) = (lat.a(), lat.c());
        // First row of the block on a lattice row.
        let y0 = block.y_min() as i128;
        let mut y = y0 + (-y0).rem_euclid(c);
        while y <= block.y_max() as i128 {
            let offset = lat.row_offset(y).expect("lattice row");
            let mut x = x_min + (offset - x_min).rem_euclid(a);
            let row = (y - y0) as usize * w;
            while x <= x_max {
                alive[row + (x - x_min) as usize] = false;
                x += a;
            }
            y += c;
        }
    }
    if block.contains((0, 0)) {
        alive[(-block.y_min()) as usize * w + (-block.x_min()) as usize] = false;
    }
    alive
}

fn survivors<'a>(block: &'a LatticeBox, alive: &'a [bool]) -> impl Iterator<Item = Point> + 'a {
    block.points().zip(alive).filter_map(|(p, &keep)| keep.then_some(p))
}

/// `V'_k ∩ box` by sieving out the cosets `Γ_{𝔭^k}` for every prime ideal
/// with `No(𝔭)^k` at most the largest norm in the box.
pub fn enumerate_kfree(field: &FieldParams, k: u32, window: &LatticeBox) -> PointSet {
    assert!(k >= 2, "k must be at least 2");
    let lattices = sieve_lattices(field, k, window);
    let blocks: Vec<Vec<Point>> = window
        .row_blocks(BLOCK_ROWS)
        .par_iter()
        .map(|block| survivors(block, &sieve_block(&lattices, block)).collect())
        .collect();
    blocks.into_iter().flatten().collect()
}

/// `V'_k ∩ box` by testing each point with [`is_kfree`].
pub fn enumerate_kfree_pointwise(field: &FieldParams, k: u32, window: &LatticeBox) -> PointSet {
    window
        .points()
        .filter(|&p| is_kfree(field, AlgInt::from(p), k))
        .collect()
}

/// Number of points of `V'_k` in the box.
pub fn count_kfree(field: &FieldParams, k: u32, window: &LatticeBox) -> u64 {
    assert!(k >= 2, "k must be at least 2");
    let lattices = sieve_lattices(field, k, window);
    let counts: Vec<u64> = window
        .row_blocks(BLOCK_ROWS)
        .par_iter()
        .map(|block| sieve_block(&lattices, block).iter().filter(|&&b| b).count() as u64)
        .collect();
    counts.iter().sum()
}

/// Membership bitmap of `V'_k` over a box, for repeated lookups.
#[derive(Debug, Clone)]
pub struct KFreeMask {
    window: LatticeBox,
    alive: Vec<bool>,
}

impl KFreeMask {
    pub fn new(field: &FieldParams, k: u32, window: &LatticeBox) -> Self {
        assert!(k >= 2, "k must be at least 2");
        let lattices = sieve_lattices(field, k, window);
        let alive = window
            .row_blocks(BLOCK_ROWS)
            .par_iter()
            .flat_map_iter(|block| sieve_block(&lattices, block))
            .collect();
        KFreeMask {
            window: *window,
            alive,
        }
    }

    pub fn window(&self) -> &LatticeBox {
        &self.window
    }

    /// `Some(membership)` for points of the box, `None` outside.
    pub fn get(&self, (x, y): (i128, i128)) -> Option<bool> {
        if !self.window.contains_i128((x, y)) {
            return None;
        }
        let row = (y - self.window.y_min() as i128) as usize;
        let col = (x - self.window.x_min() as i128) as usize;
        Some(self.alive[row * self.window.width() as usize + col])
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        survivors(&self.window, &self.alive)
    }
}

/// `|V'_k ∩ [-N, N]²| / (2N + 1)²`.
pub fn density_estimate(field: &FieldParams, k: u32, n: u32) -> f64 {
    let window = LatticeBox::centered(n);
    count_kfree(field, k, &window) as f64 / window.area() as f64
}

/// Square-free points whose norm has only prime factors dividing `d_K`.
pub fn compute_w(field: &FieldParams, window: &LatticeBox) -> PointSet {
    let disc = field.discriminant() as i128;
    window
        .points()
        .filter(|&p| {
            let x = AlgInt::from(p);
            let n = field.norm(x);
            n != 0
                && factor(n.unsigned_abs())
                    .expect("norm within budget")
                    .iter()
                    .all(|&(q, _)| disc % q as i128 == 0)
                && is_kfree(field, x, 2)
        })
        .collect()
}

/// Points of the box with `N(x) = c`.
pub fn level_set(field: &FieldParams, c: i128, window: &LatticeBox) -> PointSet {
    window
        .points()
        .filter(|&p| field.norm(AlgInt::from(p)) == c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(d: i64) -> FieldParams {
        FieldParams::new(d).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let g = field(-1);
        let origin = LatticeBox::new(0, 0, 0, 0).unwrap();
        assert!(enumerate_kfree(&g, 2, &origin).is_empty());
        let s = enumerate_kfree(&g, 2, &LatticeBox::centered(1));
        assert_eq!(s.len(), 8);
        assert!(!s.contains(&(0, 0)));
        let s = enumerate_kfree(&g, 2, &LatticeBox::centered(3));
        assert!(!s.contains(&(2, 0)));
        assert!(s.contains(&(1, 1)));
    }

    #[test]
    fn sieve_matches_pointwise() {
        for d in [-1, -2, -3, -5, -7, 2, 3, 5, 6, 15] {
            let f = field(d);
            for k in [2, 3] {
                let b = LatticeBox::new(-23, 17, -9, 31).unwrap();
                assert_eq!(
                    enumerate_kfree(&f, k, &b),
                    enumerate_kfree_pointwise(&f, k, &b),
                    "d={d} k={k}"
                );
            }
        }
    }

    #[test]
    fn density_at_zero_radius() {
        assert_eq!(density_estimate(&field(-1), 2, 0), 0.0);
        assert_eq!(density_estimate(&field(7), 3, 0), 0.0);
    }

    #[test]
    fn w_examples() {
        let w = compute_w(&field(-1), &LatticeBox::centered(4));
        let expected: PointSet = [
            (1, 0),
            (-1, 0),
            (0, 1),
            (0, -1),
            (1, 1),
            (1, -1),
            (-1, 1),
            (-1, -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(w, expected);
        let w = compute_w(&field(-2), &LatticeBox::centered(4));
        let expected: PointSet = [(1, 0), (-1, 0), (0, 1), (0, -1)].into_iter().collect();
        assert_eq!(w, expected);
        assert!(compute_w(&field(5), &LatticeBox::centered(2)).contains(&(1, 0)));
    }

    #[test]
    fn level_set_examples() {
        let units = level_set(&field(-1), 1, &LatticeBox::centered(5));
        let expected: PointSet = [(1, 0), (-1, 0), (0, 1), (0, -1)].into_iter().collect();
        assert_eq!(units, expected);
        let s = level_set(&field(-2), 11, &LatticeBox::centered(4));
        for p in [(3, 1), (3, -1), (-3, 1), (-3, -1)] {
            assert!(s.contains(&p));
        }
        assert_eq!(s.len(), 4);
        let zero = level_set(&field(-7), 0, &LatticeBox::centered(6));
        assert_eq!(zero.points(), &[(0, 0)]);
    }

    #[test]
    fn norm_bound_dominates() {
        for d in [-7, -1, 2, 5, 15] {
            let f = field(d);
            let b = LatticeBox::new(-13, 4, -2, 9).unwrap();
            let bound = max_norm_bound(&f, &b);
            for p in b.points() {
                assert!(f.norm(AlgInt::from(p)).unsigned_abs() <= bound);
            }
        }
    }
}
