//! Hamiltonian G-spaces with linear action and constant symplectic form,
//! the anchor of the action algebroid, the total tangent and cotangent
//! complexes of `Z/G`, and the reduced form `ω♭_red` between them.

pub mod anchors;
mod complexes;
mod exactness;
mod numeric;
mod point;
mod report;

pub use complexes::{
    alpha_maps, anchor, basis_action, build_total_complexes, check_anchor, check_total_complexes, equivariance_residual, omega_flat,
    omega_flat_inverse, theta_field, verify_theorem, TotalComplexes,
};
pub use exactness::{
    check_exactness, form_to_cotangent, random_form, random_function, random_homogeneous, random_poly, random_vector_field,
};
pub use numeric::{check_closure, check_equivariance_finite, check_multiplicativity, check_reduced_pullback};
pub use point::{analyze_point, Classification, PointAnalysis};
pub use report::{CheckRecord, Kind, ReportMetadata, Status, VerificationReport};

use num_traits::{One, Zero};

use crate::dgmanifold::{DerivedForm, DgError, Gen, QuasiSmoothSpace};
use crate::exactpoly::{Polynomial, QMatrix, Rational};
use crate::gradedcore::GradedError;
use crate::liealg::LieError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReductionError {
    #[error("invalid Hamiltonian space: {0}")]
    Structure(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Dg(#[from] DgError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// `(M = ℝⁿ, ω, 𝔤, μ)` with `E_i♯ = Σ (A_i)_{ab} x_b ∂_a`.
#[derive(Clone, Debug)]
pub struct HamiltonianSpace {
    pub name: String,
    space: QuasiSmoothSpace,
    omega: QMatrix,
}

impl HamiltonianSpace {
    /// Structural checks only: shapes, representation present, `μ` of degree ≤ 2.
    pub fn new(name: &str, space: QuasiSmoothSpace, omega: QMatrix) -> Result<Self, ReductionError> {
        let n = space.n();
        if omega.rows() != n || omega.cols() != n {
            return Err(ReductionError::Structure(format!(
                "omega is {}x{}, expected {n}x{n}",
                omega.rows(),
                omega.cols()
            )));
        }
        let rep = space.lie().rep().ok_or(LieError::MissingRep)?;
        if let Some(a) = rep.iter().find(|a| a.rows() != n) {
            return Err(ReductionError::Structure(format!("rep matrices are {0}x{0}, expected {n}x{n}", a.rows())));
        }
        if let Some((j, p)) = space.mu().iter().enumerate().find(|(_, p)| p.total_degree().unwrap_or(0) > 2) {
            return Err(ReductionError::Structure(format!("mu[{}] = {p} has degree above 2", j + 1)));
        }
        Ok(HamiltonianSpace { name: name.to_string(), space, omega })
    }

    pub fn space(&self) -> &QuasiSmoothSpace {
        &self.space
    }

    pub fn omega(&self) -> &QMatrix {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn d(&self) -> usize {
        self.space.d()
    }

    pub fn rep(&self) -> &[QMatrix] {
        self.space.lie().rep().expect("checked in new")
    }

    /// `λω` and `λμ`.
    pub fn scaled(&self, lambda: &Rational) -> Result<Self, ReductionError> {
        let mu = self.space.mu().iter().map(|p| p.scale(lambda)).collect();
        let space = QuasiSmoothSpace::new(self.space.vars(), self.space.lie().clone(), mu)?;
        HamiltonianSpace::new(&self.name, space, self.omega.scale(lambda))
    }

    /// Components `V^a_i = Σ_b (A_i)_{ab} x_b` of `E_i♯`.
    pub fn vector_field(&self, i: usize) -> Vec<Polynomial> {
        let a = &self.rep()[i];
        (0..self.n()).map(|r| Polynomial::linear(self.space.vars(), a.row(r))).collect()
    }

    /// `ω = Σ_{a<b} ω_ab dx_a dx_b`.
    pub fn omega_form(&self) -> DerivedForm {
        let z = &self.space;
        let mut out = DerivedForm::zero(z.vars(), z.d());
        for a in 0..self.n() {
            for b in a + 1..self.n() {
                let c = &self.omega[(a, b)];
                if !c.is_zero() {
                    let t = DerivedForm::term(
                        z.vars(),
                        z.d(),
                        vec![Gen::Dx(a as u16), Gen::Dx(b as u16)],
                        Polynomial::constant(z.vars(), c.clone()),
                    );
                    out.add_assign_scaled(&t, &Rational::one());
                }
            }
        }
        out
    }
}

fn first_nonzero_poly<'a>(items: impl IntoIterator<Item = (String, &'a Polynomial)>) -> Option<String> {
    items.into_iter().find(|(_, p)| !p.is_zero()).map(|(label, p)| format!("{label}: residual {p}"))
}

fn lie_axioms_record(h: &HamiltonianSpace) -> CheckRecord {
    let r = h.space.lie().check_lie_axioms();
    let witness = r
        .witnesses
        .first()
        .map(|w| format!("{} at indices {:?}: residual {}", w.identity, w.indices, w.residual));
    CheckRecord::exact("lie.axioms", anchors::LIE_AXIOMS, if r.all_ok() { None } else { witness })
}

/// `Σ_a ω_ab X^a` for polynomial `X`.
fn contract_omega(h: &HamiltonianSpace, x: &[Polynomial], b: usize) -> Polynomial {
    let mut out = Polynomial::zero(h.space.vars());
    for (a, xa) in x.iter().enumerate() {
        out.add_scaled(xa, &h.omega[(a, b)]);
    }
    out
}

/// `E_i♯(f) = Σ_a V^a_i ∂_a f`.
pub fn apply_vector_field(v: &[Polynomial], f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.vars());
    for (a, va) in v.iter().enumerate() {
        out.add_product(va, &f.partial(a).expect("index in range"));
    }
    out
}

/// Checks (a)–(e) of a Hamiltonian space plus the Lie algebra axioms.
pub fn validate_hamiltonian(h: &HamiltonianSpace) -> VerificationReport {
    let mut rep = VerificationReport::new(&h.name);
    let (n, d) = (h.n(), h.d());
    let z = &h.space;
    let lie = z.lie();
    rep.push(lie_axioms_record(h));

    let omega = &h.omega;
    let witness = if n % 2 != 0 {
        Some(format!("n = {n} is odd"))
    } else if let Some((a, b)) =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| omega[(a, b)] != -omega[(b, a)].clone())
    {
        Some(format!("omega[{},{}] = {} but omega[{},{}] = {}", a + 1, b + 1, omega[(a, b)], b + 1, a + 1, omega[(b, a)]))
    } else if omega.inverse().is_none() {
        Some(format!("omega is singular (rank {})", omega.rank()))
    } else {
        None
    };
    rep.push(CheckRecord::exact("hamiltonian.omega", anchors::OMEGA_NONDEGENERATE, witness));

    let mut witness = None;
    for (i, a) in h.rep().iter().enumerate() {
        let r = a.transpose().mul(omega).add(&omega.mul(a));
        if let Some((x, y)) = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| !r[(x, y)].is_zero()) {
            witness = Some(format!("E{}: (A^T ω + ω A)[{},{}] = {}", i + 1, x + 1, y + 1, r[(x, y)]));
            break;
        }
    }
    rep.push(CheckRecord::exact("hamiltonian.invariance", anchors::OMEGA_INVARIANT, witness));

    let fields: Vec<Vec<Polynomial>> = (0..d).map(|i| h.vector_field(i)).collect();
    let mut residuals = Vec::new();
    for (i, v) in fields.iter().enumerate() {
        for b in 0..n {
            let mut r = contract_omega(h, v, b);
            r.add_scaled(&z.jacobian_entry(i, b), &-Rational::one());
            residuals.push((format!("E{} on ∂{}", i + 1, z.vars()[b]), r));
        }
    }
    rep.push(CheckRecord::exact(
        "hamiltonian.moment_map",
        anchors::HAMILTON,
        first_nonzero_poly(residuals.iter().map(|(l, p)| (l.clone(), p))),
    ));

    let mut residuals = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut r = Polynomial::zero(z.vars());
            for b in 0..n {
                r.add_product(&contract_omega(h, &fields[i], b), &fields[j][b]);
            }
            for k in 0..d {
                r.add_scaled(&z.mu()[k], &-lie.c(k, i, j).clone());
            }
            residuals.push((format!("(E{}, E{})", i + 1, j + 1), r));
        }
    }
    rep.push(CheckRecord::exact(
        "hamiltonian.pairing",
        anchors::PAIRING,
        first_nonzero_poly(residuals.iter().map(|(l, p)| (l.clone(), p))),
    ));

    let mut residuals = Vec::new();
    for (i, v) in fields.iter().enumerate() {
        let coad = lie.coad_operator(&lie.basis_vector(i)).expect("basis vector has the right length");
        for j in 0..d {
            let mut r = apply_vector_field(v, &z.mu()[j]);
            for l in 0..d {
                r.add_scaled(&z.mu()[l], &-coad[(j, l)].clone());
            }
            residuals.push((format!("E{}♯(μ{})", i + 1, j + 1), r));
        }
    }
    rep.push(CheckRecord::exact(
        "hamiltonian.equivariance",
        anchors::MOMENT_EQUIVARIANCE,
        first_nonzero_poly(residuals.iter().map(|(l, p)| (l.clone(), p))),
    ));
    rep
}
