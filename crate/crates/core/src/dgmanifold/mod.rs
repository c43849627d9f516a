//! The derived zero locus `Z` of a moment map: its Koszul algebra, bigraded
//! forms, contractions, and the tangent and cotangent dg-modules.

mod forms;

pub use forms::{sign_table, swap_sign, DerivedForm, Gen, VectorFieldOnZ, SIGN_CONVENTION};

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exactpoly::{bareiss_rank, Polynomial, QMatrix, Rational, Vars};
use crate::gradedcore::{
    cocone, cone, BlockMap, DgModule, FreeGradedModule, GradedError, KoszulAlgebra, SuperFunction,
};
use crate::liealg::LieAlgebraData;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DgError {
    #[error("{expected} moment map components expected, got {got}")]
    MomentCount { expected: usize, got: usize },
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("point is not in the zero set: μ(m) = {values:?}")]
    NotInZeroSet { values: Vec<String> },
    #[error("cannot contract a form of form degree 0: {0}")]
    ContractZeroForm(String),
}

/// `M = ℝⁿ`, a Lie algebra `𝔤`, and `μ = (μ¹..μᵈ)`.
#[derive(Clone, Debug)]
pub struct QuasiSmoothSpace {
    lie: LieAlgebraData,
    algebra: Arc<KoszulAlgebra>,
}

impl QuasiSmoothSpace {
    pub fn new(vars: &Vars, lie: LieAlgebraData, mu: Vec<Polynomial>) -> Result<Self, DgError> {
        if mu.len() != lie.dim() {
            return Err(DgError::MomentCount { expected: lie.dim(), got: mu.len() });
        }
        let algebra = Arc::new(KoszulAlgebra::new(vars, mu)?);
        Ok(QuasiSmoothSpace { lie, algebra })
    }

    pub fn vars(&self) -> &Vars {
        self.algebra.vars()
    }

    pub fn n(&self) -> usize {
        self.vars().len()
    }

    pub fn d(&self) -> usize {
        self.lie.dim()
    }

    pub fn lie(&self) -> &LieAlgebraData {
        &self.lie
    }

    pub fn mu(&self) -> &[Polynomial] {
        self.algebra.mu()
    }

    pub fn algebra(&self) -> &Arc<KoszulAlgebra> {
        &self.algebra
    }

    pub fn koszul_delta(&self, f: &SuperFunction) -> Result<SuperFunction, DgError> {
        Ok(self.algebra.try_delta(f)?)
    }

    /// `∂μʲ/∂x_a`.
    pub fn jacobian_entry(&self, j: usize, a: usize) -> Polynomial {
        self.mu()[j].partial(a).expect("variable index in range")
    }

    /// `dμʲ = Σ_a ∂_a μʲ dx_a`.
    pub fn dmu(&self, j: usize) -> DerivedForm {
        let mut out = DerivedForm::zero(self.vars(), self.d());
        for a in 0..self.n() {
            let p = self.jacobian_entry(j, a);
            out.add_assign_scaled(&DerivedForm::term(self.vars(), self.d(), vec![Gen::Dx(a as u16)], p), &Rational::one());
        }
        out
    }

    pub fn form(&self, g: Gen) -> DerivedForm {
        DerivedForm::generator(self.vars(), self.d(), g)
    }

    /// `d(x_a) = dx_a`, `d(E_j) = dE_j`, `dΘ_i = -Σ_{j<k} c^i_{jk} Θ_j Θ_k`.
    pub fn derham_d(&self, w: &DerivedForm) -> DerivedForm {
        let (vars, d) = (self.vars().clone(), self.d());
        w.derivation(
            (1, 0),
            |p| {
                let mut out = DerivedForm::zero(&vars, d);
                for a in 0..vars.len() {
                    let dp = p.partial(a).expect("variable index in range");
                    out.add_assign_scaled(&DerivedForm::term(&vars, d, vec![Gen::Dx(a as u16)], dp), &Rational::one());
                }
                out
            },
            |g| match g {
                Gen::E(j) => DerivedForm::generator(&vars, d, Gen::DE(j)),
                Gen::Theta(i) => {
                    let mut out = DerivedForm::zero(&vars, d);
                    for j in 0..d {
                        for k in j + 1..d {
                            let c = self.lie.c(i as usize, j, k);
                            if !c.is_zero() {
                                let t = DerivedForm::term(
                                    &vars,
                                    d,
                                    vec![Gen::Theta(j as u16), Gen::Theta(k as u16)],
                                    Polynomial::one(&vars),
                                );
                                out.add_assign_scaled(&t, &-c.clone());
                            }
                        }
                    }
                    out
                }
                Gen::Dx(_) | Gen::DE(_) => DerivedForm::zero(&vars, d),
            },
        )
    }

    /// `δ(E_j) = μʲ`, `δ(dE_j) = dμʲ`, zero on `x`, `dx`, `Θ`.
    pub fn form_inner_delta(&self, w: &DerivedForm) -> DerivedForm {
        let (vars, d) = (self.vars().clone(), self.d());
        w.derivation(
            (0, 1),
            |_| DerivedForm::zero(&vars, d),
            |g| match g {
                Gen::E(j) => DerivedForm::from_poly(self.mu()[j as usize].clone(), d),
                Gen::DE(j) => self.dmu(j as usize),
                _ => DerivedForm::zero(&vars, d),
            },
        )
    }

    /// `ι_X` of bidegree `(-1, k)`: `ι_X(dx_a) = f_a`, `ι_X(dE_j) = g_j`.
    pub fn contract(&self, x: &VectorFieldOnZ, w: &DerivedForm) -> Result<DerivedForm, DgError> {
        if w.terms().any(|(word, _)| word.iter().all(|g| matches!(g, Gen::E(_)))) {
            return Err(DgError::ContractZeroForm(w.to_string()));
        }
        Ok(self.contract_unchecked(x, w))
    }

    fn contract_unchecked(&self, x: &VectorFieldOnZ, w: &DerivedForm) -> DerivedForm {
        let (vars, d) = (self.vars().clone(), self.d());
        w.derivation(
            (-1, x.degree),
            |_| DerivedForm::zero(&vars, d),
            |g| match g {
                Gen::Dx(a) => DerivedForm::from_function(&x.smooth[a as usize]),
                Gen::DE(j) => DerivedForm::from_function(&x.contraction[j as usize]),
                _ => DerivedForm::zero(&vars, d),
            },
        )
    }

    /// `L_X = ι_X d + d ι_X`, defined on forms of any degree.
    pub fn lie_derivative(&self, x: &VectorFieldOnZ, w: &DerivedForm) -> DerivedForm {
        let mut out = self.contract_unchecked(x, &self.derham_d(w));
        out.add_assign_scaled(&self.derham_d(&self.contract_unchecked(x, w)), &Rational::one());
        out
    }

    /// `Q = Σ μʲ ι_{σ_j}`, the degree 1 field whose Lie derivative is `δ`.
    pub fn homological_vector_field(&self) -> VectorFieldOnZ {
        let alg = &self.algebra;
        VectorFieldOnZ {
            degree: 1,
            smooth: vec![alg.zero(); self.n()],
            contraction: self.mu().iter().map(|p| alg.poly(p.clone())).collect(),
        }
    }

    fn zero_module(&self, block: &str, names: Vec<String>) -> DgModule {
        let module = FreeGradedModule::new(block, names.into_iter().map(|n| (n, 0)).collect())
            .expect("generated names are unique");
        DgModule::with_zero_differential(self.algebra.clone(), module)
    }

    /// `𝔤_Z`: basis `E1..Ed` in degree 0, zero differential.
    pub fn lie_module(&self) -> DgModule {
        self.zero_module("g", (1..=self.d()).map(|i| format!("E{i}")).collect())
    }

    /// `𝔤*_Z`: basis `σ1..σd` in degree 0.
    pub fn colie_module(&self) -> DgModule {
        self.zero_module("g*", (1..=self.d()).map(|i| format!("σ{i}")).collect())
    }

    /// `ι*_Z T_M`: basis `∂/∂x_a`.
    pub fn ambient_tangent(&self) -> DgModule {
        self.zero_module("TM", self.vars().iter().map(|v| format!("∂{v}")).collect())
    }

    /// `ι*_Z T*_M`: basis `dx_a`.
    pub fn ambient_cotangent(&self) -> DgModule {
        self.zero_module("T*M", self.vars().iter().map(|v| format!("d{v}")).collect())
    }

    /// `dμ: ι*T_M → 𝔤*_Z`, `∂_a ↦ Σ_j ∂_a μʲ σ_j`.
    pub fn dmu_map(&self) -> BlockMap {
        let (t, g) = (self.ambient_tangent(), self.colie_module());
        BlockMap::from_fn(t.module(), g.module(), 0, self.vars(), self.d(), |j, a| {
            self.algebra.poly(self.jacobian_entry(j, a))
        })
        .expect("polynomial entries have degree 0")
    }

    /// `dμ*: 𝔤_Z → ι*T*_M`, `E_j ↦ Σ_a ∂_a μʲ dx_a`.
    pub fn dmu_dual_map(&self) -> BlockMap {
        let (g, t) = (self.lie_module(), self.ambient_cotangent());
        BlockMap::from_fn(g.module(), t.module(), 0, self.vars(), self.d(), |a, j| {
            self.algebra.poly(self.jacobian_entry(j, a))
        })
        .expect("polynomial entries have degree 0")
    }

    /// `T_Z = cocone(dμ)`: `∂_a` in degree 0, `ι_j` in degree 1,
    /// `D(∂_a) = Σ_j ∂_a μʲ ι_j`.
    pub fn tangent_module(&self) -> Result<DgModule, DgError> {
        let raw = cocone(&self.dmu_map(), &self.ambient_tangent(), &self.colie_module())?;
        let mut names: Vec<(String, i32)> = self.vars().iter().map(|v| (format!("∂{v}"), 0)).collect();
        names.extend((1..=self.d()).map(|j| (format!("ι{j}"), 1)));
        let module = tangent_like_module(&raw, "TM", "ι", names)?;
        Ok(raw.relabel(&module)?)
    }

    /// `T*_Z = cone(dμ*)`: `dE_j` in degree -1, `dx_a` in degree 0,
    /// `D(dE_j) = Σ_a ∂_a μʲ dx_a`.
    pub fn cotangent_module(&self) -> Result<DgModule, DgError> {
        let raw = cone(&self.dmu_dual_map(), &self.lie_module(), &self.ambient_cotangent())?;
        let mut names: Vec<(String, i32)> = (1..=self.d()).map(|j| (format!("dE{j}"), -1)).collect();
        names.extend(self.vars().iter().map(|v| (format!("d{v}"), 0)));
        let module = tangent_like_module(&raw, "dE", "T*M", names)?;
        Ok(raw.relabel(&module)?)
    }

    /// Jacobian complex `T_m M → 𝔤*` at a zero of `μ`.
    pub fn point_tangent_complex(&self, m: &[Rational]) -> Result<PointTangentComplex, DgError> {
        if m.len() != self.n() {
            return Err(DgError::PointDimension { expected: self.n(), got: m.len() });
        }
        let values: Vec<Rational> = self.mu().iter().map(|p| p.eval(m).expect("length checked")).collect();
        if values.iter().any(|v| !v.is_zero()) {
            return Err(DgError::NotInZeroSet { values: values.iter().map(ToString::to_string).collect() });
        }
        let rows: Vec<Vec<Rational>> = (0..self.d())
            .map(|j| (0..self.n()).map(|a| self.jacobian_entry(j, a).eval(m).expect("length checked")).collect())
            .collect();
        let rank = bareiss_rank(&rows);
        let jacobian = if rows.is_empty() { QMatrix::zeros(0, self.n()) } else { QMatrix::from_rows(rows).expect("rectangular") };
        Ok(PointTangentComplex { jacobian, rank, kernel_dim: self.n() - rank, cokernel_dim: self.d() - rank })
    }
}

fn tangent_like_module(
    raw: &DgModule,
    first: &str,
    second: &str,
    names: Vec<(String, i32)>,
) -> Result<FreeGradedModule, GradedError> {
    let split = raw.module().blocks()[0].len;
    let (a, b) = names.split_at(split);
    FreeGradedModule::new(first, a.to_vec())?.direct_sum(&FreeGradedModule::new(second, b.to_vec())?)
}

/// `D_m μ: ℝⁿ → ℝᵈ` and its kernel and cokernel dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointTangentComplex {
    pub jacobian: QMatrix,
    pub rank: usize,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

/// `⟨α, v⟩` for `α` in the cotangent basis and `v` in the tangent basis:
/// `dx_a(∂_b) = δ_ab`, `dE_j(ι_k) = δ_jk`.
pub fn duality_pairing(z: &QuasiSmoothSpace) -> QMatrix {
    let (n, d) = (z.n(), z.d());
    let mut m = QMatrix::zeros(n + d, n + d);
    // cotangent order: dE then dx; tangent order: ∂ then ι
    for a in 0..n {
        m[(d + a, a)] = Rational::one();
    }
    for j in 0..d {
        m[(j, n + j)] = Rational::one();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_polynomial, q, vars_from};

    fn s1(shift: bool) -> QuasiSmoothSpace {
        let v = vars_from(["x", "y"]);
        let mu = if shift { "1/2*x^2 + 1/2*y^2 - 1/2" } else { "1/2*x^2 + 1/2*y^2" };
        QuasiSmoothSpace::new(&v, LieAlgebraData::abelian(1), vec![parse_polynomial(mu, &v).unwrap()]).unwrap()
    }

    fn poly(z: &QuasiSmoothSpace, s: &str) -> Polynomial {
        parse_polynomial(s, z.vars()).unwrap()
    }

    #[test]
    fn koszul_delta_of_generator_is_moment() {
        let z = s1(false);
        let e1 = z.algebra().generator(0);
        assert_eq!(z.koszul_delta(&e1).unwrap().body(), poly(&z, "1/2*x^2 + 1/2*y^2"));
    }

    #[test]
    fn derham_d_of_product_and_generators() {
        let z = s1(false);
        let xy = DerivedForm::from_poly(poly(&z, "x*y"), 1);
        let expected = {
            let mut f = DerivedForm::term(z.vars(), 1, vec![Gen::Dx(0)], poly(&z, "y"));
            f.add_assign_scaled(&DerivedForm::term(z.vars(), 1, vec![Gen::Dx(1)], poly(&z, "x")), &q(1, 1));
            f
        };
        assert_eq!(z.derham_d(&xy), expected);
        assert_eq!(z.derham_d(&z.form(Gen::E(0))), z.form(Gen::DE(0)));
        assert!(z.derham_d(&z.form(Gen::DE(0))).is_zero());
        let xe = DerivedForm::term(z.vars(), 1, vec![Gen::E(0)], poly(&z, "x"));
        let dxe = z.derham_d(&xe);
        assert_eq!(dxe.num_terms(), 2);
        assert!(z.derham_d(&dxe).is_zero());
    }

    #[test]
    fn inner_delta_on_generators() {
        let z = s1(false);
        let expected = {
            let mut f = DerivedForm::term(z.vars(), 1, vec![Gen::Dx(0)], poly(&z, "x"));
            f.add_assign_scaled(&DerivedForm::term(z.vars(), 1, vec![Gen::Dx(1)], poly(&z, "y")), &q(1, 1));
            f
        };
        assert_eq!(z.form_inner_delta(&z.form(Gen::DE(0))), expected);
        assert!(z.form_inner_delta(&z.form(Gen::Dx(0))).is_zero());
        let e = z.form(Gen::E(0));
        assert_eq!(z.derham_d(&z.form_inner_delta(&e)), z.form_inner_delta(&z.derham_d(&e)));
    }

    #[test]
    fn contraction_pairs_generators() {
        let z = s1(false);
        let alg = z.algebra();
        let dx = VectorFieldOnZ::new(0, vec![alg.one(), alg.zero()], vec![alg.zero()]).unwrap();
        let dxdy = z.form(Gen::Dx(0)).wedge(&z.form(Gen::Dx(1)));
        assert_eq!(z.contract(&dx, &dxdy).unwrap(), z.form(Gen::Dx(1)));
        let iota = VectorFieldOnZ::new(1, vec![alg.zero(), alg.zero()], vec![alg.one()]).unwrap();
        assert_eq!(z.contract(&iota, &z.form(Gen::DE(0))).unwrap(), DerivedForm::from_poly(Polynomial::one(z.vars()), 1));
        assert!(z.contract(&iota, &z.form(Gen::Dx(0))).unwrap().is_zero());
        assert!(matches!(z.contract(&iota, &z.form(Gen::E(0))), Err(DgError::ContractZeroForm(_))));
    }

    #[test]
    fn tangent_and_cotangent_modules() {
        let z = s1(false);
        let t = z.tangent_module().unwrap();
        assert_eq!(t.module().degrees(), vec![0, 0, 1]);
        assert_eq!(t.differential().get(2, 0).body(), poly(&z, "x"));
        let c = z.cotangent_module().unwrap();
        assert_eq!(c.module().degrees(), vec![-1, 0, 0]);
        assert_eq!(c.differential().get(1, 0).body(), poly(&z, "x"));
        assert_eq!(c.differential().get(2, 0).body(), poly(&z, "y"));
        assert_eq!(duality_pairing(&z), {
            let mut m = QMatrix::zeros(3, 3);
            m[(1, 0)] = q(1, 1);
            m[(2, 1)] = q(1, 1);
            m[(0, 2)] = q(1, 1);
            m
        });
    }

    #[test]
    fn zero_moment_map_gives_zero_differentials() {
        let v = vars_from(["x", "y"]);
        let z = QuasiSmoothSpace::new(&v, LieAlgebraData::abelian(1), vec![Polynomial::zero(&v)]).unwrap();
        assert!(z.tangent_module().unwrap().differential().is_zero());
        assert!(z.cotangent_module().unwrap().differential().is_zero());
    }

    #[test]
    fn point_tangent_complexes() {
        let z = s1(false);
        let p = z.point_tangent_complex(&[q(0, 1), q(0, 1)]).unwrap();
        assert_eq!((p.kernel_dim, p.cokernel_dim), (2, 1));
        let zs = s1(true);
        let p = zs.point_tangent_complex(&[q(1, 1), q(0, 1)]).unwrap();
        assert_eq!((p.kernel_dim, p.cokernel_dim), (1, 0));
        assert_eq!(p.jacobian.row(0), &[q(1, 1), q(0, 1)]);
        assert!(matches!(zs.point_tangent_complex(&[q(0, 1), q(0, 1)]), Err(DgError::NotInZeroSet { .. })));
        let p = zs.point_tangent_complex(&[q(3, 5), q(4, 5)]).unwrap();
        assert_eq!(p.rank, 1);
    }

    #[test]
    fn sign_table_is_recorded() {
        let t = sign_table();
        assert!(t.contains(&("dE", "dE", 1)));
        assert!(t.contains(&("E", "E", -1)));
        assert!(t.contains(&("dx", "E", 1)));
        assert!(t.contains(&("dE", "E", -1)));
    }
}
