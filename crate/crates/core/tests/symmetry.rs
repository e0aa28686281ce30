mod common;

use quadfree::kfree::compute_w;
use quadfree::symmetries::{
    check_preserves, counterexample_pattern, embed_map, is_predicted_element,
    predicted_stabilizer, stab_k_independence, stabilizer_search, DEFAULT_WITNESS_RADIUS,
};
use quadfree::{AlgInt, Error, FieldParams, GLMatrix, LatticeBox, SymmetryElement};

fn field(d: i64) -> FieldParams {
    FieldParams::new(d).unwrap()
}

fn elem(unit: AlgInt, use_conjugation: bool) -> SymmetryElement {
    SymmetryElement {
        unit,
        use_conjugation,
    }
}

#[test]
fn imaginary_predicted_groups_are_closed() {
    for (d, order) in [(-1, 8), (-2, 4), (-3, 12), (-5, 4), (-7, 4)] {
        let group = predicted_stabilizer(&field(d), 0).unwrap();
        assert_eq!(group.len(), order);
        assert!(group.contains(&GLMatrix::IDENTITY));
        for a in &group {
            assert!(group.contains(&a.inverse()));
            for b in &group {
                assert!(group.contains(&a.mul(b)), "d={d}: {a}·{b}");
            }
        }
    }
}

/// `m(ε, σ) m(ε', σ') = m(ε σ(ε'), σσ')`.
#[test]
fn semidirect_relation() {
    for d in common::PANEL {
        let f = field(d);
        let group = f.unit_group().unwrap();
        let mut units = group.torsion.clone();
        if let Some(eps) = group.fundamental {
            units.extend([eps, f.pow(eps, -1).unwrap(), -f.pow(eps, 2).unwrap()]);
        }
        for &u in &units {
            for &v in &units {
                for s in [false, true] {
                    for t in [false, true] {
                        let lhs = embed_map(&f, &elem(u, s)).unwrap().mul(&embed_map(&f, &elem(v, t)).unwrap());
                        let sv = if s { f.conjugate(v) } else { v };
                        let rhs = embed_map(&f, &elem(f.mul(u, sv), s ^ t)).unwrap();
                        assert_eq!(lhs, rhs, "d={d} u={u} v={v}");
                    }
                }
            }
        }
    }
}

#[test]
fn predicted_elements_preserve_w() {
    let window = LatticeBox::centered(40);
    for d in common::PANEL {
        let f = field(d);
        let w = compute_w(&f, &window);
        for m in predicted_stabilizer(&f, 2).unwrap() {
            for &(x, y) in w.points() {
                let (a, b) = m.apply((x as i128, y as i128));
                if window.contains_i128((a, b)) {
                    assert!(w.contains(&(a as i64, b as i64)), "d={d} M={m}");
                }
            }
        }
    }
}

#[test]
fn real_unit_powers_up_to_five_preserve() {
    let window = LatticeBox::centered(200);
    for d in [2, 3, 5] {
        let f = field(d);
        let eps = f.unit_group().unwrap().fundamental.unwrap();
        for m in -5..=5 {
            let m_mat = embed_map(&f, &elem(f.pow(eps, m).unwrap(), false)).unwrap();
            assert!(check_preserves(&f, 2, &m_mat, &window), "d={d} m={m}");
        }
    }
}

#[test]
fn stabiliser_search_is_k_independent() {
    let window = LatticeBox::centered(25);
    for d in [-1, -2, -3] {
        assert!(stab_k_independence(&field(d), &window, 3, 2));
    }
}

#[test]
fn search_results_are_predicted_elements() {
    let window = LatticeBox::centered(40);
    for d in [2, 3, 5] {
        let f = field(d);
        let found = stabilizer_search(&f, 2, 3, &window);
        assert!(found.iter().all(|m| is_predicted_element(&f, m)), "d={d}");
        assert!(found.contains(&GLMatrix::IDENTITY));
    }
}

#[test]
fn counterexamples_are_certified_by_oracle() {
    let cases = [
        (-2, GLMatrix::new(1, 1, 0, 1).unwrap()),
        (-1, GLMatrix::new(1, 0, 1, 1).unwrap()),
        (-3, GLMatrix::new(1, 1, 0, 1).unwrap()),
        (-7, GLMatrix::new(2, 1, 1, 1).unwrap()),
        (3, GLMatrix::new(1, 1, 0, 1).unwrap()),
    ];
    for (d, m) in cases {
        let cx = counterexample_pattern(&field(d), 2, &m, DEFAULT_WITNESS_RADIUS).unwrap();
        assert!(common::is_admissible(d, 2, cx.pattern.points()), "d={d} M={m}");
        assert!(!common::is_admissible(d, 2, cx.image.points()), "d={d} M={m}");
        let n = cx.violated_ideal.norm().pow(2) as usize;
        assert_eq!(cx.pattern.len(), n);
        assert_eq!(cx.met_cosets.len(), n);
    }
}

#[test]
fn counterexample_refuses_predicted_elements() {
    for d in [-1, -3, 2, 5] {
        let f = field(d);
        for m in predicted_stabilizer(&f, 2).unwrap() {
            assert_eq!(
                counterexample_pattern(&f, 2, &m, 50),
                Err(Error::IsStabilizerElement),
                "d={d} M={m}"
            );
        }
    }
}

#[test]
fn shear_fails_check_preserves() {
    let shear = GLMatrix::new(1, 1, 0, 1).unwrap();
    let window = LatticeBox::centered(30);
    let f = field(-2);
    assert!(!check_preserves(&f, 2, &shear, &window));
    // Oracle: a k-free point whose image lies in the box and is not k-free.
    let witness = window.points().find(|&(x, y)| {
        let (a, b) = ((x + y) as i128, y as i128);
        common::is_kfree(-2, x as i128, y as i128, 2)
            && window.contains_i128((a, b))
            && !common::is_kfree(-2, a, b, 2)
    });
    assert!(witness.is_some());
}
