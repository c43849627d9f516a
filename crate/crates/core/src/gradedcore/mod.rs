//! Free graded modules over `C∞(Z) = Poly ⊗ Λ𝔤`, block maps with Koszul
//! signs, cones, total complexes and pointwise cohomology.
//!
//! Shift convention: `M[n]_k = M_{k+n}`, and the cone of `f: M → N` is
//! `M[1] ⊕ N`. Signs of shifted basis elements are absorbed into the
//! block formulas documented on [`total_complex`].

mod cohomology;
mod module;
mod superfn;

pub use cohomology::{fiber_differential, fiber_matrix, is_acyclic, pointwise_cohomology, FiberBasis, MAX_FIBER_DIM};
pub use module::{
    chain_map_residual, cocone, cone, total_complex, verify_chain_map, BasisElement, Block, BlockMap, ChainMapReport,
    DgModule, EntryWitness, FreeGradedModule, Placement, SHIFT_CONVENTION,
};
pub use superfn::{merge_sign, subset_indices, subset_size, KoszulAlgebra, Subset, SuperFunction, MAX_DIM};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradedError {
    #[error("context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("entry ({row} <- {col}) must have degree {expected}: {entry}")]
    DegreeMismatch { row: String, col: String, expected: i32, entry: String },
    #[error("not a chain map: {0}")]
    NotChainMap(Box<EntryWitness>),
    #[error("differential does not square to zero: {0}")]
    NotSquareZero(Box<EntryWitness>),
    #[error("bad point: {0}")]
    Point(String),
    #[error("internal consistency: {0}")]
    Internal(String),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactpoly::{parse_polynomial, q, vars_from, Polynomial, Vars};

    fn s1() -> (Vars, Arc<KoszulAlgebra>) {
        let v = vars_from(["x", "y"]);
        let mu = vec![parse_polynomial("1/2*x^2 + 1/2*y^2", &v).unwrap()];
        (v.clone(), Arc::new(KoszulAlgebra::new(&v, mu).unwrap()))
    }

    fn koszul_module(alg: &Arc<KoszulAlgebra>) -> DgModule {
        DgModule::with_zero_differential(alg.clone(), FreeGradedModule::new("O", vec![("1".into(), 0)]).unwrap())
    }

    /// Rank-2 module `e (deg 0), f (deg 1)` with `De = x f`.
    fn two_term(alg: &Arc<KoszulAlgebra>) -> DgModule {
        let v = alg.vars().clone();
        let m = FreeGradedModule::new("M", vec![("e".into(), 0), ("f".into(), 1)]).unwrap();
        let mut d = BlockMap::zero(&m, &m, 1, &v, alg.dim());
        d.set(1, 0, alg.poly(Polynomial::var(&v, 0).unwrap())).unwrap();
        DgModule::new(alg.clone(), d).unwrap()
    }

    #[test]
    fn zero_differential_cohomology_is_rank_profile() {
        let v = vars_from(["x"]);
        let alg = Arc::new(KoszulAlgebra::trivial(&v, 0));
        let m = FreeGradedModule::new("M", vec![("a".into(), -1), ("b".into(), 0)]).unwrap();
        let dg = DgModule::with_zero_differential(alg, m);
        let h = pointwise_cohomology(&dg, &[q(3, 1)]).unwrap();
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![(-1, 1), (0, 1)]);
    }

    #[test]
    fn koszul_complex_off_zero_set_is_acyclic() {
        let (_, alg) = s1();
        let h = pointwise_cohomology(&koszul_module(&alg), &[q(1, 1), q(0, 1)]).unwrap();
        assert!(is_acyclic(&h), "{h:?}");
        let h0 = pointwise_cohomology(&koszul_module(&alg), &[q(0, 1), q(0, 1)]).unwrap();
        assert_eq!(h0.into_iter().collect::<Vec<_>>(), vec![(-1, 1), (0, 1)]);
    }

    #[test]
    fn cone_of_zero_map_is_diagonal() {
        let (v, alg) = s1();
        let m = two_term(&alg);
        let f = BlockMap::zero(m.module(), m.module(), 0, &v, 1);
        let c = cone(&f, &m, &m).unwrap();
        let d = c.differential();
        assert_eq!(c.module().degrees(), vec![-1, 0, 0, 1]);
        assert_eq!(d.get(1, 0), &-m.differential().get(1, 0));
        assert_eq!(d.get(3, 2), m.differential().get(1, 0));
        assert!(d.get(2, 0).is_zero() && d.get(3, 1).is_zero());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let (v, alg) = s1();
        let m = two_term(&alg);
        let id = BlockMap::identity(m.module(), &v, 1);
        let c = cone(&id, &m, &m).unwrap();
        for p in [[q(0, 1), q(0, 1)], [q(1, 1), q(2, 1)], [q(-1, 3), q(0, 1)]] {
            assert!(is_acyclic(&pointwise_cohomology(&c, &p).unwrap()));
        }
        let cc = cocone(&id, &m, &m).unwrap();
        assert!(is_acyclic(&pointwise_cohomology(&cc, &[q(2, 1), q(1, 1)]).unwrap()));
    }

    #[test]
    fn non_chain_map_is_rejected_with_witness() {
        let (v, alg) = s1();
        let m = two_term(&alg);
        let mut f = BlockMap::zero(m.module(), m.module(), 0, &v, 1);
        f.set(0, 0, alg.one()).unwrap();
        match cone(&f, &m, &m) {
            Err(GradedError::NotChainMap(w)) => assert_eq!((w.row_name.as_str(), w.col_name.as_str()), ("f", "e")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degree_is_enforced_on_entries() {
        let (v, alg) = s1();
        let m = two_term(&alg);
        let mut f = BlockMap::zero(m.module(), m.module(), 0, &v, 1);
        assert!(matches!(f.set(1, 0, alg.one()), Err(GradedError::DegreeMismatch { .. })));
        assert!(matches!(f.set(0, 1, alg.one()), Err(GradedError::DegreeMismatch { .. })));
        assert!(f.set(1, 0, alg.generator(0)).is_ok());
    }

    #[test]
    fn identity_and_differential_are_chain_maps() {
        let (v, alg) = s1();
        let m = two_term(&alg);
        assert!(verify_chain_map(&BlockMap::identity(m.module(), &v, 1), &m, &m).unwrap().ok);
        // D applied twice as an operator vanishes on a generic element
        let x = alg.poly(Polynomial::var(&v, 0).unwrap());
        let elt = vec![&x * &alg.generator(0), x.clone()];
        let once = m.apply(&elt).unwrap();
        assert!(m.apply(&once).unwrap().iter().all(SuperFunction::is_zero));
    }

    #[test]
    fn square_zero_failure_names_block() {
        let (v, alg) = s1();
        let m = FreeGradedModule::new("M", vec![("e".into(), 0), ("f".into(), 1)]).unwrap();
        let mut d = BlockMap::zero(&m, &m, 1, &v, 1);
        d.set(0, 0, alg.generator(0)).unwrap_err();
        d.set(1, 0, alg.one()).unwrap();
        d.set(1, 1, alg.generator(0)).unwrap_err();
        assert!(DgModule::new(alg.clone(), d).is_ok());
        // De = E1 f gives D²e = μ f
        let n = FreeGradedModule::new("N", vec![("e".into(), -1), ("f".into(), 1)]).unwrap();
        let mut d2 = BlockMap::zero(&n, &n, 1, &v, 1);
        d2.set(1, 0, alg.generator(0)).unwrap();
        match DgModule::new(alg, d2) {
            Err(GradedError::NotSquareZero(w)) => assert_eq!(w.row_block, "N"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_modules_are_supported() {
        let (v, alg) = s1();
        let z = FreeGradedModule::empty("0");
        let id = BlockMap::identity(&z, &v, 1);
        assert_eq!(id.rows(), 0);
        let dg = DgModule::with_zero_differential(alg, z);
        assert!(pointwise_cohomology(&dg, &[q(0, 1), q(0, 1)]).unwrap().is_empty());
        assert!(cone(&id, &dg, &dg).unwrap().module().rank() == 0);
    }

    #[test]
    fn dual_squares_to_zero() {
        let (_, alg) = s1();
        let m = two_term(&alg);
        let c = cone(&BlockMap::identity(m.module(), alg.vars(), 1), &m, &m).unwrap();
        let d = c.dual();
        assert!(d.square().unwrap().is_zero());
        assert_eq!(d.module().degrees(), vec![1, 0, 0, -1]);
    }
}
