//! Group-level identities: exact reductions on `M` plus sampling at finite `g`.

use nalgebra::{DMatrix, DVector};
use num_traits::{One, ToPrimitive};

use super::{anchors, validate_hamiltonian, CheckRecord, HamiltonianSpace, Kind, VerificationReport};
use crate::dgmanifold::{DerivedForm, Gen};
use crate::exactpoly::{Polynomial, QMatrix, Rational};
use crate::liealg::{CounterRng, NumericGroupElement, NumericLie};

fn to_f64(m: &QMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64().unwrap_or(f64::NAN))
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, v| if v.is_nan() { f64::NAN } else { acc.max(v.abs()) })
}

fn worse(acc: &mut (f64, usize), r: f64, s: usize) {
    if (r.is_nan() && !acc.0.is_nan()) || r > acc.0 {
        *acc = (r, s);
    }
}

fn witness(name: &str, worst: (f64, usize)) -> Option<String> {
    Some(format!("{name}: residual {:e} at sample {}", worst.0, worst.1))
}

/// Numeric Lie data and `count` group samples, or the reason numeric rows are skipped.
fn numeric_setup(h: &HamiltonianSpace, seed: u64, count: usize) -> Result<(NumericLie, Vec<NumericGroupElement>), String> {
    let lie = h.space().lie();
    if lie.group_tag().is_none() {
        return Err("no group tag".into());
    }
    let num = NumericLie::new(lie).map_err(|e| e.to_string())?;
    if h.d() == 0 {
        return Ok((num, (0..count).map(|_| NumericGroupElement::identity(h.n(), 0)).collect()));
    }
    let samples = lie.sample_group(seed, count).map_err(|e| e.to_string())?;
    Ok((num, samples))
}

/// `θ = Σ Θ_i E_i`, the Maurer–Cartan form paired with `𝔤`.
fn theta_form(h: &HamiltonianSpace) -> DerivedForm {
    let z = h.space();
    let mut out = DerivedForm::zero(z.vars(), z.d());
    for i in 0..h.d() {
        let t = DerivedForm::term(z.vars(), z.d(), vec![Gen::Theta(i as u16), Gen::E(i as u16)], Polynomial::one(z.vars()));
        out.add_assign_scaled(&t, &Rational::one());
    }
    out
}

/// `u*θ = 0`, `u*dθ = 0` and `u*(ι*ω + dθ) = ι*ω`, exactly.
pub fn check_reduced_pullback(h: &HamiltonianSpace) -> VerificationReport {
    let mut rep = VerificationReport::new(&h.name);
    let z = h.space();
    let theta = theta_form(h);
    let u_theta = theta.without_theta();
    rep.push(CheckRecord::exact(
        "pullback.theta",
        anchors::PULLBACK,
        (!u_theta.is_zero()).then(|| format!("u*θ = {u_theta}")),
    ));
    let dtheta = z.derham_d(&theta);
    let u_dtheta = dtheta.without_theta();
    rep.push(CheckRecord::exact(
        "pullback.d_theta",
        anchors::PULLBACK,
        (!u_dtheta.is_zero()).then(|| format!("u*dθ = {u_dtheta}")),
    ));
    let omega = h.omega_form();
    let mut red = omega.clone();
    red.add_assign_scaled(&dtheta, &Rational::one());
    let mut r = red.without_theta();
    r.add_assign_scaled(&omega, &-Rational::one());
    rep.push(CheckRecord::exact("pullback.reduction", anchors::REDUCTION, (!r.is_zero()).then(|| format!("u*ω_red - ω = {r}"))));
    rep
}

/// Exact reductions of the closure identity and its sampled form.
pub fn check_closure(h: &HamiltonianSpace, samples: usize, seed: u64, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new(&h.name);
    let z = h.space();
    let omega = h.omega_form();
    let d_omega = z.derham_d(&omega);
    rep.push(CheckRecord::exact("closure.d_omega", anchors::D_OMEGA, (!d_omega.is_zero()).then(|| format!("dω = {d_omega}"))));
    let base = validate_hamiltonian(h);
    for (id, from) in [("closure.hamilton", "hamiltonian.moment_map"), ("closure.pairing", "hamiltonian.pairing")] {
        let w = base.get(from).and_then(|r| if r.passed() { None } else { Some(r.witness.clone().unwrap_or_default()) });
        rep.push(CheckRecord::exact(id, anchors::CLOSURE_CHAIN, w));
    }

    let (num, group) = match numeric_setup(h, seed, samples) {
        Ok(v) => v,
        Err(reason) => {
            rep.push(CheckRecord::skipped("closure.numeric", Kind::Numeric, anchors::CLOSURE, &reason));
            return rep;
        }
    };
    let (n, d) = (h.n(), h.d());
    let om = to_f64(h.omega());
    let jac: Vec<Vec<Polynomial>> = (0..d).map(|j| (0..n).map(|a| z.jacobian_entry(j, a)).collect()).collect();
    let mut rng = CounterRng::new(seed ^ 0x636c_6f73_7572_6521);
    let mut worst = (0.0, 0);
    for (s, g) in group.iter().enumerate() {
        let m = rng.symmetric_vec(n);
        let v1 = DVector::from_vec(rng.symmetric_vec(n));
        let v2 = DVector::from_vec(rng.symmetric_vec(n));
        let x1 = rng.symmetric_vec(d);
        let x2 = rng.symmetric_vec(d);
        let mv = DVector::from_column_slice(&m);
        let act = |x: &[f64]| if d == 0 { DMatrix::zeros(n, n) } else { num.rep_of(x) };
        let w1 = &g.matrix * (act(&x1) * &mv + &v1);
        let w2 = &g.matrix * (act(&x2) * &mv + &v2);
        let lhs = v1.dot(&(&om * &v2)) - w1.dot(&(&om * &w2));
        // dμ^{X}(v) = Σ_j X^j ∇μʲ(m)·v
        let dmu = |x: &[f64], v: &DVector<f64>| -> f64 {
            (0..d).map(|j| x[j] * (0..n).map(|a| jac[j][a].eval_f64(&m) * v[a]).sum::<f64>()).sum()
        };
        let br = num.bracket(&x1, &x2);
        let mu_br: f64 = (0..d).map(|k| br[k] * z.mu()[k].eval_f64(&m)).sum();
        let rhs = dmu(&x2, &v1) - dmu(&x1, &v2) - mu_br;
        worse(&mut worst, (lhs - rhs).abs(), s);
    }
    rep.push(CheckRecord::numeric("closure.numeric", anchors::CLOSURE, worst.0, tol, witness("(s* - t*)ω - ι_μ dθ", worst)));
    rep
}

/// Ad-cocycle identity, the multiplicativity of `θ`, and their exact shadows.
pub fn check_multiplicativity(h: &HamiltonianSpace, samples: usize, seed: u64, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new(&h.name);
    let z = h.space();
    let lie = z.lie();
    let axioms = lie.check_lie_axioms();
    let w = axioms
        .witnesses
        .iter()
        .find(|w| w.identity == "jacobi")
        .map(|w| format!("jacobi at {:?}: residual {}", w.indices, w.residual));
    rep.push(CheckRecord::exact("multiplicativity.jacobi", anchors::COCYCLE, if axioms.jacobi_ok { None } else { w }));
    let mut mc = None;
    for i in 0..h.d() {
        let t = z.form(Gen::Theta(i as u16));
        let r = z.derham_d(&z.derham_d(&t));
        if !r.is_zero() {
            mc = Some(format!("ddΘ{} = {r}", i + 1));
            break;
        }
    }
    rep.push(CheckRecord::exact("multiplicativity.maurer_cartan", anchors::MAURER_CARTAN, mc));

    let (num, group) = match numeric_setup(h, seed, 2 * samples) {
        Ok(v) => v,
        Err(reason) => {
            for (id, a) in [("multiplicativity.adjoint_cocycle", anchors::COCYCLE), ("multiplicativity.theta", anchors::MULTIPLICATIVE)] {
                rep.push(CheckRecord::skipped(id, Kind::Numeric, a, &reason));
            }
            rep.push(CheckRecord::skipped("multiplicativity.abelian", Kind::Exact, anchors::COCYCLE, &reason));
            return rep;
        }
    };
    let d = h.d();
    let neg = |x: Vec<f64>| x.into_iter().map(|v| -v).collect::<Vec<_>>();
    let mut rng = CounterRng::new(seed ^ 0x6d75_6c74_6970_6c79);
    let (mut worst_ad, mut worst_theta) = ((0.0, 0), (0.0, 0));
    let mut abelian_witness = None;
    for s in 0..if d == 0 { 0 } else { samples } {
        let (g1, g2) = (&group[2 * s], &group[2 * s + 1]);
        let prod = &g1.matrix * &g2.matrix;
        let prod_inv = &g2.inverse * &g1.inverse;
        let ad_prod_inv = num.adjoint_by_conjugation(&prod_inv, &prod);
        let ad1_inv = num.adjoint_by_exponential(&neg(g1.log_vector()));
        let ad2_inv = num.adjoint_by_exponential(&neg(g2.log_vector()));
        worse(&mut worst_ad, max_abs(&(&ad_prod_inv - &ad2_inv * &ad1_inv)), s);

        let y1 = rng.symmetric_vec(d);
        let y2 = rng.symmetric_vec(d);
        let tangent = &g1.matrix * num.rep_of(&y1) * &g2.matrix + &prod * num.rep_of(&y2);
        let lhs = DVector::from_vec(num.coordinates(&(&prod_inv * tangent)));
        let rhs = &ad2_inv * DVector::from_column_slice(&y1) + DVector::from_column_slice(&y2);
        worse(&mut worst_theta, max_abs(&DMatrix::from_column_slice(d, 1, (lhs - rhs).as_slice())), s);

        if lie.is_abelian() && abelian_witness.is_none() {
            for ad in [&ad1_inv, &ad2_inv] {
                if *ad != DMatrix::identity(d, d) {
                    abelian_witness = Some(format!("Ad differs from the identity at sample {s}"));
                }
            }
        }
    }
    rep.push(CheckRecord::numeric(
        "multiplicativity.adjoint_cocycle",
        anchors::COCYCLE,
        worst_ad.0,
        tol,
        witness("Ad_{(g1 g2)^-1} - Ad_{g2^-1} Ad_{g1^-1}", worst_ad),
    ));
    rep.push(CheckRecord::numeric(
        "multiplicativity.theta",
        anchors::MULTIPLICATIVE,
        worst_theta.0,
        tol,
        witness("(m*θ) - Ad_{g2^-1} pr1*θ - pr2*θ", worst_theta),
    ));
    rep.push(if lie.is_abelian() {
        CheckRecord::exact("multiplicativity.abelian", anchors::COCYCLE, abelian_witness)
    } else {
        CheckRecord::skipped("multiplicativity.abelian", Kind::Exact, anchors::COCYCLE, "nonabelian")
    });
    rep
}

/// Finite-group forms of the action, coadjoint and invariance identities.
pub fn check_equivariance_finite(h: &HamiltonianSpace, samples: usize, seed: u64, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new(&h.name);
    let rows = [
        ("equivariance.action", anchors::ACTION_EQUIVARIANCE),
        ("equivariance.coadjoint", anchors::COADJOINT_EQUIVARIANCE),
        ("equivariance.omega", anchors::OMEGA_G_INVARIANT),
    ];
    let (num, group) = match numeric_setup(h, seed, samples) {
        Ok(v) => v,
        Err(reason) => {
            for (id, a) in rows {
                rep.push(CheckRecord::skipped(id, Kind::Numeric, a, &reason));
            }
            return rep;
        }
    };
    let d = h.d();
    let om = to_f64(h.omega());
    let coad = |x: &[f64]| -num.ad_matrix(x).transpose();
    let mut worst = [(0.0, 0); 3];
    for (s, g) in group.iter().enumerate() {
        let x = g.log_vector();
        let ad_g = num.adjoint_by_exponential(&x);
        let ad_g_inv = num.adjoint_by_exponential(&x.iter().map(|v| -v).collect::<Vec<_>>());
        for i in 0..d {
            let moved: Vec<f64> = ad_g_inv.column(i).iter().copied().collect();
            let lhs = num.rep_of(&moved);
            let rhs = &g.inverse * &num.rep[i] * &g.matrix;
            worse(&mut worst[0], max_abs(&(lhs - rhs)), s);
            let mut e = vec![0.0; d];
            e[i] = 1.0;
            let lhs = coad(&moved);
            let rhs = ad_g.transpose() * coad(&e) * ad_g_inv.transpose();
            worse(&mut worst[1], max_abs(&(lhs - rhs)), s);
        }
        worse(&mut worst[2], max_abs(&(g.matrix.transpose() * &om * &g.matrix - &om)), s);
    }
    for ((id, a), w) in rows.into_iter().zip(worst) {
        rep.push(CheckRecord::numeric(id, a, w.0, tol, witness(id, w)));
    }
    rep
}
