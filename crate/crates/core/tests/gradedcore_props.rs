use std::sync::Arc;

use proptest::prelude::*;

use symred::exactpoly::{parse_polynomial, q, vars_from, Polynomial, QMatrix, Vars};
use symred::gradedcore::{
    cocone, cone, fiber_matrix, is_acyclic, pointwise_cohomology, subset_size, total_complex, verify_chain_map,
    BlockMap, DgModule, FreeGradedModule, KoszulAlgebra, Placement, SuperFunction,
};
use symred::liealg::CounterRng;
use symred::reduction::{anchor, random_poly};

mod common;
use common::{point, space, CORPUS};

const DIM: usize = 2;

fn vars() -> Vars {
    vars_from(["x", "y"])
}

fn module(name: &str, degrees: &[i32]) -> FreeGradedModule {
    FreeGradedModule::new(name, degrees.iter().enumerate().map(|(i, &k)| (format!("{name}{i}"), k)).collect()).unwrap()
}

fn random_entry(rng: &mut CounterRng, degree: i32) -> SuperFunction {
    let v = vars();
    let mut f = SuperFunction::zero(&v, DIM);
    if !(-(DIM as i32)..=0).contains(&degree) {
        return f;
    }
    let z = symred::dgmanifold::QuasiSmoothSpace::new(&v, symred::liealg::LieAlgebraData::abelian(DIM), vec![Polynomial::zero(&v); DIM]).unwrap();
    for s in (0..1u64 << DIM).filter(|s| subset_size(*s) as i32 == -degree) {
        if !rng.next_u64().is_multiple_of(3) {
            f.add_assign_scaled(&SuperFunction::monomial(&v, DIM, s, random_poly(&z, rng)), &q(1, 1));
        }
    }
    f
}

fn random_map(src: &FreeGradedModule, tgt: &FreeGradedModule, degree: i32, seed: u64) -> BlockMap {
    let mut rng = CounterRng::new(seed);
    let mut m = BlockMap::zero(src, tgt, degree, &vars(), DIM);
    for c in 0..src.rank() {
        for r in 0..tgt.rank() {
            let e = random_entry(&mut rng, m.entry_degree(r, c));
            m.set(r, c, e).unwrap();
        }
    }
    m
}

fn degrees() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(-1i32..=1, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(
        (da, db, dc, dd) in (degrees(), degrees(), degrees(), degrees()),
        (kf, kg, kh) in (-1i32..=1, -1i32..=1, -1i32..=1),
        seed in any::<u64>(),
    ) {
        let (a, b, c, d) = (module("a", &da), module("b", &db), module("c", &dc), module("d", &dd));
        let h = random_map(&a, &b, kh, seed);
        let g = random_map(&b, &c, kg, seed.wrapping_add(1));
        let f = random_map(&c, &d, kf, seed.wrapping_add(2));
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left.degree(), kf + kg + kh);
        prop_assert_eq!(f.compose(&g).unwrap().degree(), kf + kg);
        prop_assert!(left.try_sub(&right).unwrap().is_zero());
    }

    #[test]
    fn evaluation_commutes_with_composition(
        (da, db, dc) in (degrees(), degrees(), degrees()),
        (kf, kg) in (-1i32..=1, -1i32..=1),
        seed in any::<u64>(),
        m in point(2),
    ) {
        let (a, b, c) = (module("a", &da), module("b", &db), module("c", &dc));
        let g = random_map(&a, &b, kg, seed);
        let f = random_map(&b, &c, kf, seed.wrapping_add(7));
        let lhs = fiber_matrix(&f.compose(&g).unwrap(), &m).unwrap();
        let rhs = fiber_matrix(&f, &m).unwrap().mul(&fiber_matrix(&g, &m).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cone_of_identity_is_acyclic_everywhere(m in point(2)) {
        let v = vars();
        let mu = vec![parse_polynomial("x^2 - y", &v).unwrap(), parse_polynomial("x*y", &v).unwrap()];
        let alg = Arc::new(KoszulAlgebra::new(&v, mu).unwrap());
        let md = module("m", &[0, 1]);
        let mut d = BlockMap::zero(&md, &md, 1, &v, DIM);
        d.set(1, 0, alg.poly(parse_polynomial("x + 2*y", &v).unwrap())).unwrap();
        let dg = DgModule::new(alg, d).unwrap();
        let c = cone(&BlockMap::identity(dg.module(), &v, DIM), &dg, &dg).unwrap();
        prop_assert!(c.square().unwrap().is_zero());
        let h = pointwise_cohomology(&c, &m).unwrap();
        prop_assert!(is_acyclic(&h), "{:?}", h);
    }
}

#[test]
fn cones_and_cocones_of_corpus_maps_square_to_zero() {
    for name in CORPUS {
        let h = space(name);
        let z = h.space();
        let dmu = z.dmu_map();
        assert!(cocone(&dmu, &z.ambient_tangent(), &z.colie_module()).unwrap().square().unwrap().is_zero(), "{name}");
        assert!(cone(&dmu, &z.ambient_tangent(), &z.colie_module()).unwrap().square().unwrap().is_zero(), "{name}");
        let dual = z.dmu_dual_map();
        assert!(cone(&dual, &z.lie_module(), &z.ambient_cotangent()).unwrap().square().unwrap().is_zero(), "{name}");
        let rho = anchor(&h).unwrap();
        let (g, t) = (z.lie_module(), z.tangent_module().unwrap());
        assert!(verify_chain_map(&rho, &g, &t).unwrap().ok, "{name}");
        assert!(cone(&rho, &g, &t).unwrap().square().unwrap().is_zero(), "{name}");
        assert!(cocone(&rho, &g, &t).unwrap().square().unwrap().is_zero(), "{name}");
    }
}

#[test]
fn s1_tangent_cocone_matches_hand_assembly() {
    let h = space("s1_r2");
    let z = h.space();
    let t = z.tangent_module().unwrap();
    assert_eq!(t.module().degrees(), vec![0, 0, 1]);
    // D(∂x) = x ι, D(∂y) = y ι, D(ι) = 0
    let v = z.vars();
    let want = [["0", "0", "0"], ["0", "0", "0"], ["x", "y", "0"]];
    for (r, row) in want.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            let e = t.differential().get(r, c);
            assert_eq!(e.body(), parse_polynomial(s, v).unwrap(), "({r}, {c})");
            assert_eq!(e.terms().filter(|(s, _)| *s != 0).count(), 0);
        }
    }
}

#[test]
fn zero_outer_map_gives_zero_differential() {
    let v = vars();
    let alg = Arc::new(KoszulAlgebra::trivial(&v, DIM));
    let a = DgModule::with_zero_differential(alg.clone(), module("a", &[0, -1]));
    let b = DgModule::with_zero_differential(alg, module("b", &[0]));
    let g = BlockMap::zero(a.module(), b.module(), 0, &v, DIM);
    for p in [Placement::SourceShifted, Placement::TargetShifted] {
        assert!(total_complex(&a, &b, &g, p).unwrap().differential().is_zero());
    }
}

#[test]
fn cone_of_zero_map_is_block_diagonal() {
    let v = vars();
    let alg = Arc::new(KoszulAlgebra::new(&v, vec![parse_polynomial("x", &v).unwrap(), parse_polynomial("y", &v).unwrap()]).unwrap());
    let md = module("m", &[0, 1]);
    let mut d = BlockMap::zero(&md, &md, 1, &v, DIM);
    d.set(1, 0, alg.poly(parse_polynomial("y^2", &v).unwrap())).unwrap();
    let m = DgModule::new(alg.clone(), d).unwrap();
    let c = cone(&BlockMap::zero(m.module(), m.module(), 0, &v, DIM), &m, &m).unwrap();
    let dd = c.differential();
    for r in 0..4 {
        for col in 0..4 {
            let e = dd.get(r, col);
            if (r < 2) != (col < 2) {
                assert!(e.is_zero());
            }
        }
    }
    // −δ_M on the shifted copy; entries of degree 0 are unchanged by the twist
    assert_eq!(dd.get(1, 0).scale(&q(-1, 1)), *m.differential().get(1, 0));
    assert_eq!(dd.get(3, 2), m.differential().get(1, 0));
}

#[test]
fn pointwise_cohomology_of_zero_differential_is_rank_profile() {
    let v = vars_from(["x"]);
    let alg = Arc::new(KoszulAlgebra::trivial(&v, 0));
    let dg = DgModule::with_zero_differential(alg, module("m", &[-1, 0]));
    let h = pointwise_cohomology(&dg, &[q(5, 1)]).unwrap();
    assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![(-1, 1), (0, 1)]);
}

#[test]
fn fiber_matrix_of_identity_is_identity() {
    let md = module("m", &[0, 1, -1]);
    let id = BlockMap::identity(&md, &vars(), DIM);
    assert_eq!(fiber_matrix(&id, &[q(1, 1), q(2, 1)]).unwrap(), QMatrix::identity(12));
}
