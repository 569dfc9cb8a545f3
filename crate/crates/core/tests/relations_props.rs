use hypalg_core::geometry::{lift_config, LatticeConfig};
use hypalg_core::linalg::{rank, to_q};
use hypalg_core::rational::{int, rat, Rational};
use hypalg_core::relations::{has_minimal_negative_support, lattice_slice_lv, nsupp, relation_lattice};
use proptest::prelude::*;

fn config(dim: usize) -> impl Strategy<Value = LatticeConfig> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, dim), dim + 1..dim + 5)
        .prop_filter_map("full dimensional", |pts| lift_config(&pts).ok())
}

fn exponent(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-3i64..=2, prop::sample::select(vec![1i64, 2, 3, 5])), n)
        .prop_map(|v| v.into_iter().map(|(p, q)| rat(p, q)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_exact(cfg in config(2)) {
        let l = relation_lattice(&cfg);
        for b in &l.basis {
            prop_assert_eq!(cfg.combine(b), vec![0; cfg.m + 1]);
            prop_assert!(l.contains(b));
        }
    }

    #[test]
    fn rank_identity(cfg in config(3)) {
        let l = relation_lattice(&cfg);
        let rank_a = rank(&to_q(&cfg.lifted));
        prop_assert_eq!(l.rank + rank_a, cfg.len());
        prop_assert_eq!(l.basis.len(), l.rank);
        if l.rank > 0 {
            prop_assert_eq!(rank(&to_q(&l.basis)), l.rank);
        }
    }

    #[test]
    fn lattice_membership(cfg in config(2), c in prop::collection::vec(-5i64..=5, 0..6)) {
        let l = relation_lattice(&cfg);
        let c: Vec<i64> = c.into_iter().chain(std::iter::repeat(0)).take(l.rank).collect();
        let x = l.element(&c);
        prop_assert!(l.contains(&x));
        prop_assert_eq!(cfg.combine(&x), vec![0; cfg.m + 1]);
        let mut y = x.clone();
        y[0] += 1;
        prop_assert_eq!(l.contains(&y), cfg.combine(&y) == vec![0; cfg.m + 1]);
    }

    /// The slice at bound 2B cut back to coefficients in [-B, B] is the slice at bound B.
    #[test]
    fn slice_stability(v in exponent(5), b in 2i64..=8) {
        let cfg = LatticeConfig::alpha_beta(&[2], &[1, 1]).unwrap();
        let l = relation_lattice(&cfg);
        let gamma = &l.basis[0];
        let small = lattice_slice_lv(&v, &l, b);
        let large: Vec<Vec<i64>> = lattice_slice_lv(&v, &l, 2 * b)
            .into_iter()
            .filter(|x| (-b..=b).any(|c| gamma.iter().map(|g| g * c).collect::<Vec<_>>() == *x))
            .collect();
        prop_assert_eq!(small, large);
    }

    #[test]
    fn nsupp_is_negative_integers(v in exponent(6)) {
        let s = nsupp(&v);
        for (i, x) in v.iter().enumerate() {
            prop_assert_eq!(s.contains(&i), x < &int(0) && x.is_integer());
        }
    }
}

#[test]
fn minimality_examples() {
    let cfg = LatticeConfig::alpha_beta(&[2], &[1, 1]).unwrap();
    let l = relation_lattice(&cfg);
    let v = vec![int(-1), int(-1), int(0), int(0), int(0)];
    assert!(has_minimal_negative_support(&v, &l, 50));
    let w = vec![int(-1), int(0), int(-1), int(-1), int(-1)];
    // adding -gamma gives (0, 2, -2, -2, -2), whose negative support is smaller
    assert!(!has_minimal_negative_support(&w, &l, 50));
}
