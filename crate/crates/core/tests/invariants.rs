use leibniz_core::algebra::{Element, Side};
use leibniz_core::analysis::{classify, derived_series, lower_central_series};
use leibniz_core::constructions::{direct_sum, random_algebra, RandomKind};
use leibniz_core::exactmath::{Field, Matrix, Polynomial, Subspace};
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn small_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), n).prop_map(|rows| {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            Matrix::from_i64(Q, &refs)
        })
    })
}

fn kind() -> impl Strategy<Value = RandomKind> {
    prop_oneof![
        Just(RandomKind::Nilpotent),
        Just(RandomKind::Solvable),
        Just(RandomKind::Mixed)
    ]
}

fn element(dim: usize, coords: &[i64]) -> Element {
    Element::from_i64(Q, &coords[..dim])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in small_matrix(5)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        prop_assert_eq!(m.image().dim(), m.rank());
    }

    #[test]
    fn rref_is_idempotent(m in small_matrix(5)) {
        let once = m.rref();
        let twice = once.reduced.rref();
        prop_assert_eq!(&once.reduced, &twice.reduced);
    }

    #[test]
    fn minimal_divides_characteristic(m in small_matrix(4)) {
        let min = m.minimal_polynomial().unwrap();
        let chr = m.characteristic_polynomial().unwrap();
        prop_assert!(min.eval_matrix(&m).is_zero());
        prop_assert!(chr.eval_matrix(&m).is_zero());
        prop_assert!(min.divides(&chr));
        prop_assert_eq!(chr.degree(), Some(m.rows()));
    }

    #[test]
    fn root_split_reexpands(coeffs in prop::collection::vec(-4i64..=4, 1..6), lead in 1i64..4) {
        let mut c = coeffs.clone();
        c.push(lead);
        let p = Polynomial::from_i64(Q, &c);
        let split = p.linear_root_split().unwrap();
        let lc = p.leading().unwrap().clone();
        prop_assert_eq!(Polynomial::from_split(&lc, &split), p.clone());
        for (r, _) in &split.roots {
            prop_assert!(p.eval(r).is_zero());
            prop_assert!(!split.cofactor.eval(r).is_zero());
        }
    }

    #[test]
    fn subspace_sum_and_intersection(
        a in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 0..4),
        b in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 0..4),
    ) {
        let to = |vs: &Vec<Vec<i64>>| Subspace::span(Q, 4, vs.iter().map(|v| v.iter().map(|&x| Q.from_i64(x)).collect::<Vec<_>>()));
        let (u, w) = (to(&a), to(&b));
        let s = u.sum(&w);
        let i = u.intersection(&w);
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u) && i.contains_subspace(&Subspace::zero(Q, 4)));
        prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_algebras_satisfy_identity(
        k in kind(), n in 1usize..=5, seed in any::<u64>(),
        x in prop::collection::vec(-2i64..=2, 5),
        y in prop::collection::vec(-2i64..=2, 5),
        z in prop::collection::vec(-2i64..=2, 5),
    ) {
        let a = random_algebra(k, n, seed).unwrap().algebra;
        prop_assert!(a.validate().violations.is_empty());
        let (x, y, z) = (element(n, &x), element(n, &y), element(n, &z));
        let lhs = a.multiply(&x, &a.multiply(&y, &z).unwrap()).unwrap();
        let rhs = a
            .multiply(&a.multiply(&x, &y).unwrap(), &z)
            .unwrap()
            .add(&a.multiply(&y, &a.multiply(&x, &z).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_multiplications_are_derivations(
        k in kind(), n in 1usize..=5, seed in any::<u64>(),
        x in prop::collection::vec(-2i64..=2, 5),
    ) {
        let a = random_algebra(k, n, seed).unwrap().algebra;
        let l = a.mult_operator(&element(n, &x), Side::Left).unwrap();
        prop_assert!(a.check_derivation(&l).is_ok());
    }

    #[test]
    fn series_descend(k in kind(), n in 1usize..=5, seed in any::<u64>()) {
        let a = random_algebra(k, n, seed).unwrap().algebra;
        for s in [derived_series(&a).unwrap(), lower_central_series(&a).unwrap()] {
            for pair in s.terms.windows(2) {
                prop_assert!(pair[0].contains_subspace(&pair[1]));
            }
        }
        let d = derived_series(&a).unwrap();
        let l = lower_central_series(&a).unwrap();
        for (dt, lt) in d.terms.iter().zip(&l.terms) {
            prop_assert!(lt.contains_subspace(dt));
        }
    }

    #[test]
    fn direct_sum_flags_conjoin(
        k1 in kind(), n1 in 1usize..=3, s1 in any::<u64>(),
        k2 in kind(), n2 in 1usize..=3, s2 in any::<u64>(),
    ) {
        let a = random_algebra(k1, n1, s1).unwrap().algebra;
        let b = random_algebra(k2, n2, s2).unwrap().algebra;
        let (fa, fb) = (classify(&a).unwrap(), classify(&b).unwrap());
        let f = classify(&direct_sum(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(f.abelian, fa.abelian && fb.abelian);
        prop_assert_eq!(f.nilpotent, fa.nilpotent && fb.nilpotent);
        prop_assert_eq!(f.solvable, fa.solvable && fb.solvable);
        prop_assert_eq!(f.strongly_solvable, fa.strongly_solvable && fb.strongly_solvable);
        prop_assert_eq!(f.lie, fa.lie && fb.lie);
    }
}
