mod common;

use proptest::prelude::*;
use proptest::sample::select;

use quadfree::ideals::{prime_ideals_up_to, primes_above};
use quadfree::kfree::{
    compute_w, count_kfree, density_estimate, enumerate_kfree, enumerate_kfree_pointwise, level_set,
    KFreeMask,
};
use quadfree::lfunctions::zeta_k_euler;
use quadfree::shiftspace::{
    count_admissible_subsets, entropy_exact, entropy_estimate, erdos_sum, ideal_lattice,
    is_admissible,
};
use quadfree::symmetries::predicted_stabilizer;
use quadfree::{AlgInt, FieldParams, LatticeBox, PointSet};

use common::PANEL;

fn field(d: i64) -> FieldParams {
    FieldParams::new(d).unwrap()
}

#[test]
fn sieve_agrees_with_point_test() {
    let window = LatticeBox::centered(200);
    for d in PANEL {
        let f = field(d);
        for k in [2, 3] {
            let sieved = enumerate_kfree(&f, k, &window);
            assert_eq!(sieved, enumerate_kfree_pointwise(&f, k, &window), "d={d} k={k}");
            assert_eq!(sieved.len() as u64, count_kfree(&f, k, &window));
        }
    }
}

#[test]
fn enumerate_matches_oracle_on_small_box() {
    let window = LatticeBox::new(-37, 25, -19, 41).unwrap();
    for d in PANEL {
        let f = field(d);
        for k in [2, 3] {
            let expected: PointSet = window
                .points()
                .filter(|&(a, b)| common::is_kfree(d, a as i128, b as i128, k))
                .collect();
            assert_eq!(enumerate_kfree(&f, k, &window), expected, "d={d} k={k}");
        }
    }
}

/// `M(V ∩ box) ∩ box = V ∩ M(box) ∩ box` for predicted symmetries `M`.
#[test]
fn stabiliser_covariance() {
    let window = LatticeBox::centered(100);
    for d in PANEL {
        let f = field(d);
        let set = enumerate_kfree(&f, 2, &window);
        let mask = KFreeMask::new(&f, 2, &window);
        for m in predicted_stabilizer(&f, 1).unwrap() {
            let inv = m.inverse();
            let lhs: PointSet = m
                .apply_set(&set)
                .unwrap()
                .iter()
                .copied()
                .filter(|&p| window.contains(p))
                .collect();
            let rhs: PointSet = mask
                .points()
                .filter(|&(x, y)| window.contains_i128(inv.apply((x as i128, y as i128))))
                .collect();
            assert_eq!(lhs, rhs, "d={d} M={m}");
        }
    }
}

#[test]
fn w_is_closed_under_units_and_conjugation() {
    let window = LatticeBox::centered(30);
    for d in PANEL {
        let f = field(d);
        let w = compute_w(&f, &window);
        let torsion = f.unit_group().unwrap().torsion;
        for &(a, b) in w.points() {
            let x = AlgInt::new(a as i128, b as i128);
            let mut images = vec![f.conjugate(x)];
            images.extend(torsion.iter().map(|&u| f.mul(u, x)));
            for y in images {
                if let Some(p) = y.to_point().filter(|&p| window.contains(p)) {
                    assert!(w.contains(&p), "d={d}: {x} in W but {y} not");
                }
            }
        }
    }
}

#[test]
fn derived_w_and_density_examples() {
    let w = compute_w(&field(-1), &LatticeBox::centered(2));
    let brute: PointSet = LatticeBox::centered(2)
        .points()
        .filter(|&(a, b)| {
            let n = common::norm(-1, a as i128, b as i128);
            n == 1 || n == 2
        })
        .collect();
    assert_eq!(w, brute);
    assert_eq!(w.len(), 8);
    let w = compute_w(&field(-2), &LatticeBox::centered(2));
    assert_eq!(w.len(), 4);

    // 1/(ζ(2) L(χ_{-4}, 2)) with the L-value summed directly.
    let catalan = common::dirichlet_series(-4, 2.0, 2_000_000);
    let oracle = 1.0 / (std::f64::consts::PI.powi(2) / 6.0 * catalan);
    assert!((density_estimate(&field(-1), 2, 500) - oracle).abs() < 0.01);
    assert!((oracle - 0.6637).abs() < 1e-4);
    let f5 = field(5);
    assert!((density_estimate(&f5, 2, 500) - 1.0 / zeta_k_euler(&f5, 2.0, 1_000_000)).abs() < 0.01);
    assert!((entropy_estimate(&field(-1), 2, 500) - std::f64::consts::LN_2 * oracle).abs() < 0.007);
}

#[test]
fn density_increases_with_k() {
    for d in PANEL {
        let f = field(d);
        let densities: Vec<f64> = (2..=5).map(|k| density_estimate(&f, k, 50)).collect();
        assert!(densities.windows(2).all(|w| w[0] <= w[1]), "d={d}: {densities:?}");
    }
}

#[test]
fn level_sets_match_brute_force() {
    for d in PANEL {
        let f = field(d);
        let window = LatticeBox::centered(25);
        for c in [-11i128, -4, -1, 1, 2, 3, 9, 11] {
            let expected: PointSet = window
                .points()
                .filter(|&(a, b)| common::norm(d, a as i128, b as i128) == c)
                .collect();
            assert_eq!(level_set(&f, c, &window), expected, "d={d} c={c}");
        }
    }
}

#[test]
fn ideal_lattice_indices_multiply() {
    for d in PANEL {
        let f = field(d);
        for ideal in prime_ideals_up_to(&f, 30) {
            let base = ideal_lattice(&f, &ideal, 1).index();
            assert_eq!(base, ideal.norm() as u128);
            for k in 2..=4 {
                assert_eq!(ideal_lattice(&f, &ideal, k).index(), base.pow(k), "d={d} {ideal}");
            }
        }
    }
}

#[test]
fn derived_ideal_lattice_example() {
    let g = field(-1);
    let first = primes_above(&g, 5).unwrap()[0];
    let lat = ideal_lattice(&g, &first, 1);
    assert_eq!(lat.index(), 5);
    let [[a, rho], [z, c]] = lat.basis();
    assert_eq!((a, z, c), (5, 0, 1));
    assert!(rho == 2 || rho == 3);
    // The lattice is the Z-span of ι(5), ι(5i), ι(π), ι(πi) for one of
    // π = 2 ± i; here π = δ - 2 lies in it.
    for (x, y) in [(5, 0), (0, 5), (-2, 1), (-1, -2)] {
        assert!(lat.contains((x, y)));
    }
}

fn window_strategy() -> impl Strategy<Value = (i64, u32, i64, i64)> {
    (select(PANEL.to_vec()), 2u32..=3, -200i64..=194, -200i64..=194)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn windows_of_kfree_sets_are_admissible((d, k, x0, y0) in window_strategy()) {
        let f = field(d);
        let window = LatticeBox::new(x0, x0 + 5, y0, y0 + 5).unwrap();
        let set = enumerate_kfree(&f, k, &window);
        let pts: Vec<(i64, i64)> = set.points().iter().copied().take(30).collect();
        prop_assert!(is_admissible(&f, k, &pts.iter().copied().collect()));
        prop_assert!(common::is_admissible(d, k, &pts));
    }

    #[test]
    fn admissibility_is_translation_invariant(d in select(PANEL.to_vec()), k in 2u32..=3,
            pts in proptest::collection::vec((-6i64..6, -6i64..6), 0..40),
            t in (-10_000i64..=10_000, -10_000i64..=10_000)) {
        let f = field(d);
        let s: PointSet = pts.into_iter().collect();
        prop_assert_eq!(is_admissible(&f, k, &s), is_admissible(&f, k, &s.translate(t)));
        prop_assert_eq!(is_admissible(&f, k, &s), common::is_admissible(d, k, s.points()));
    }

    #[test]
    fn admissibility_is_hereditary(d in select(PANEL.to_vec()),
            pts in proptest::collection::vec((-8i64..8, -8i64..8), 0..12), mask in any::<u64>()) {
        let f = field(d);
        let s: PointSet = pts.into_iter().collect();
        if is_admissible(&f, 2, &s) {
            let sub: PointSet = s.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, &p)| p).collect();
            prop_assert!(is_admissible(&f, 2, &sub));
        }
    }

    /// Inclusion–exclusion over the cosets of the only relevant lattice
    /// `2Z²` (norm 2 ramified, next prime ideal has norm 5).
    #[test]
    fn subset_count_matches_product_formula(pts in proptest::collection::vec((-9i64..9, -9i64..9), 0..21)) {
        let s: PointSet = pts.into_iter().take(20).collect();
        let s: PointSet = s.points().iter().copied().take(20).collect();
        let n = s.len() as u32;
        let mut sizes = [0u32; 4];
        for &(x, y) in s.points() {
            sizes[(x.rem_euclid(2) * 2 + y.rem_euclid(2)) as usize] += 1;
        }
        let meeting_all: u64 = sizes.iter().map(|&c| (1u64 << c) - 1).product();
        let expected = (1u64 << n) - meeting_all;
        prop_assert_eq!(count_admissible_subsets(&field(-1), 2, &s).unwrap(), expected);
    }
}

#[test]
fn entropy_estimate_converges() {
    let mut err_small = 0.0;
    let mut err_large = 0.0;
    for d in PANEL {
        let f = field(d);
        let exact = entropy_exact(&f, 2).unwrap();
        err_small += (entropy_estimate(&f, 2, 100) - exact).abs();
        err_large += (entropy_estimate(&f, 2, 800) - exact).abs();
    }
    assert!(err_large < err_small, "{err_large} vs {err_small}");
}

#[test]
fn erdos_tail_is_small() {
    let g = field(-1);
    let a = erdos_sum(&g, 2, 10_000);
    let b = erdos_sum(&g, 2, 100_000);
    assert!(b > a && b - a < 1e-3);
    assert!(b - a < 2.0 / (10_000f64 * 10_000f64.ln()));
}

#[test]
fn entropies_distinct_across_panel() {
    let values: Vec<f64> = PANEL.iter().map(|&d| entropy_exact(&field(d), 2).unwrap()).collect();
    for (i, x) in values.iter().enumerate() {
        for y in &values[i + 1..] {
            assert!((x - y).abs() > 1e-6);
        }
    }
    assert!((values[0] - 0.46014).abs() < 1e-4);
}
