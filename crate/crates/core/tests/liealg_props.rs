use proptest::prelude::*;

use symred::exactpoly::{q, QMatrix, Rational};
use symred::liealg::{GroupTag, LieAlgebraData, NumericLie};

mod common;
use common::{rational, space};

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// `aff(1)`: `[E_1, E_2] = E_2`.
fn aff1() -> LieAlgebraData {
    LieAlgebraData::from_sparse(2, [(1, 0, 1, q(1, 1)), (1, 1, 0, q(-1, 1))]).unwrap()
}

fn commutator(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.mul(b).add(&b.mul(a).scale(&q(-1, 1)))
}

proptest! {
    #[test]
    fn coadjoint_of_bracket_is_commutator_so3(x in prop::collection::vec(rational(), 3), y in prop::collection::vec(rational(), 3)) {
        let l = LieAlgebraData::so3();
        let lhs = l.coad_operator(&l.bracket(&x, &y).unwrap()).unwrap();
        let rhs = commutator(&l.coad_operator(&x).unwrap(), &l.coad_operator(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coadjoint_of_bracket_is_commutator_aff1(x in prop::collection::vec(rational(), 2), y in prop::collection::vec(rational(), 2)) {
        let l = aff1();
        let lhs = l.coad_operator(&l.bracket(&x, &y).unwrap()).unwrap();
        let rhs = commutator(&l.coad_operator(&x).unwrap(), &l.coad_operator(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coadjoint_pairing(x in prop::collection::vec(rational(), 3), y in prop::collection::vec(rational(), 3), s in prop::collection::vec(rational(), 3)) {
        let l = LieAlgebraData::so3();
        let coad = l.coad_operator(&x).unwrap();
        let ad = l.ad_operator(&x).unwrap();
        let dot = |a: &[Rational], m: &QMatrix, b: &[Rational]| -> Rational {
            (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| &a[i] * &m[(i, j)] * &b[j]).sum()
        };
        // ⟨coad_X σ, Y⟩ = Σ_ij Y_i coad_ij σ_j and ⟨σ, ad_X Y⟩ = Σ_ij σ_i ad_ij Y_j
        prop_assert_eq!(dot(&y, &coad, &s) + dot(&s, &ad, &y), q(0, 1));
    }

    #[test]
    fn adjoint_by_conjugation_matches_exponential(seed in any::<u64>()) {
        let h = space("so3_cotangent_r3");
        let lie = h.space().lie();
        let num = NumericLie::new(lie).unwrap();
        for g in lie.sample_group(seed, 10).unwrap() {
            let conj = num.adjoint_by_conjugation(&g.matrix, &g.inverse);
            let expo = num.adjoint_by_exponential(&g.log_vector());
            prop_assert!((conj - expo).amax() < 1e-8);
        }
    }
}

#[test]
fn so3_axioms_by_brute_force() {
    let l = LieAlgebraData::so3();
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*l.c(k, i, j), q(levi_civita(i, j, k), 1));
            }
        }
    }
    let r = l.check_lie_axioms();
    assert!(r.antisymmetry_ok && r.jacobi_ok);
}

#[test]
fn so3_adjoint_of_e1() {
    let l = LieAlgebraData::so3();
    let ad = l.ad_operator(&l.basis_vector(0)).unwrap();
    // column j is [E_1, E_j] = Σ_k ε_1jk E_k
    for j in 0..3 {
        for k in 0..3 {
            assert_eq!(ad[(k, j)], q(levi_civita(0, j, k), 1));
        }
    }
    assert_eq!(ad[(2, 1)], q(1, 1));
    assert_eq!(ad[(1, 2)], q(-1, 1));
}

#[test]
fn abelian_operators_vanish() {
    let l = LieAlgebraData::abelian(2);
    let x = vec![q(3, 1), q(-1, 2)];
    assert!(l.ad_operator(&x).unwrap().is_zero());
    assert!(l.coad_operator(&x).unwrap().is_zero());
    assert!(l.check_lie_axioms().all_ok());
}

#[test]
fn so2_exponential_is_rotation() {
    let gen = QMatrix::from_rows(vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap();
    let l = LieAlgebraData::abelian(1).with_rep(vec![gen]).unwrap().with_group_tag(GroupTag::Orthogonal);
    let num = NumericLie::new(&l).unwrap();
    for t in [0.0, 0.3, -1.0, 2.5] {
        let g = num.exponentiate(&[1.0], t).unwrap().matrix;
        let (c, s) = (f64::cos(t), f64::sin(t));
        let want = nalgebra::DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        assert!((g - want).amax() < 1e-12, "t = {t}");
    }
}

#[test]
fn so3_samples_are_orthogonal() {
    let h = space("so3_cotangent_r3");
    for g in h.space().lie().sample_group(0, 50).unwrap() {
        let eye = nalgebra::DMatrix::<f64>::identity(6, 6);
        assert!((g.matrix.transpose() * &g.matrix - eye).amax() < 1e-10);
    }
}
