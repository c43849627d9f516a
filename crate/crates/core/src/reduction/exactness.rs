use num_traits::One;

use super::{anchors, CheckRecord, HamiltonianSpace, VerificationReport};
use crate::dgmanifold::{DerivedForm, Gen, QuasiSmoothSpace, VectorFieldOnZ};
use crate::exactpoly::{Monomial, Polynomial, Rational};
use crate::gradedcore::{subset_size, SuperFunction};
use crate::liealg::CounterRng;

fn small_int(rng: &mut CounterRng) -> Rational {
    let v = (rng.next_u64() % 7) as i64 - 3;
    Rational::from_integer(if v == 0 { 1.into() } else { v.into() })
}

/// A polynomial with up to three terms of degree at most two.
pub fn random_poly(z: &QuasiSmoothSpace, rng: &mut CounterRng) -> Polynomial {
    let n = z.n();
    let terms = 1 + rng.next_u64() % 3;
    let mut p = Polynomial::zero(z.vars());
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        if n > 0 {
            for _ in 0..rng.next_u64() % 3 {
                exps[(rng.next_u64() % n as u64) as usize] += 1;
            }
        }
        let t = Polynomial::from_terms(z.vars(), [(Monomial::from_exponents(exps), small_int(rng))]);
        p.add_scaled(&t, &Rational::one());
    }
    p
}

/// A random homogeneous element of `C∞(Z)` of degree `-k`.
pub fn random_homogeneous(z: &QuasiSmoothSpace, rng: &mut CounterRng, k: usize) -> SuperFunction {
    let d = z.d();
    let mut f = z.algebra().zero();
    if k > d {
        return f;
    }
    for _ in 0..2 {
        let subsets: Vec<u64> = (0..1u64 << d).filter(|s| subset_size(*s) == k).collect();
        let s = subsets[(rng.next_u64() % subsets.len() as u64) as usize];
        f.add_assign_scaled(&SuperFunction::monomial(z.vars(), d, s, random_poly(z, rng)), &Rational::one());
    }
    f
}

/// A random element of `C∞(Z)` mixing several degrees.
pub fn random_function(z: &QuasiSmoothSpace, rng: &mut CounterRng) -> SuperFunction {
    let mut f = z.algebra().zero();
    for _ in 0..3 {
        let k = (rng.next_u64() % (z.d() as u64 + 1)) as usize;
        f.add_assign_scaled(&random_homogeneous(z, rng, k), &Rational::one());
    }
    f
}

/// A random form: up to three terms, each a polynomial times a word of up
/// to three generators drawn from `dx`, `Θ`, `dE`, `E`.
pub fn random_form(z: &QuasiSmoothSpace, rng: &mut CounterRng) -> DerivedForm {
    let (n, d) = (z.n() as u64, z.d() as u64);
    let mut w = DerivedForm::zero(z.vars(), z.d());
    for _ in 0..1 + rng.next_u64() % 3 {
        let mut word = Vec::new();
        for _ in 0..rng.next_u64() % 4 {
            let kind = rng.next_u64() % 4;
            let g = match kind {
                0 if n > 0 => Gen::Dx((rng.next_u64() % n) as u16),
                1 if d > 0 => Gen::Theta((rng.next_u64() % d) as u16),
                2 if d > 0 => Gen::DE((rng.next_u64() % d) as u16),
                3 if d > 0 => Gen::E((rng.next_u64() % d) as u16),
                _ => continue,
            };
            word.push(g);
        }
        w.add_assign_scaled(&DerivedForm::term(z.vars(), z.d(), word, random_poly(z, rng)), &Rational::one());
    }
    w
}

/// A random vector field of degree `k ∈ {0, -1}`.
pub fn random_vector_field(z: &QuasiSmoothSpace, rng: &mut CounterRng, k: i32) -> VectorFieldOnZ {
    let smooth = (0..z.n()).map(|_| random_homogeneous(z, rng, (-k) as usize)).collect();
    let contraction = (0..z.d()).map(|_| random_homogeneous(z, rng, (1 - k) as usize)).collect();
    VectorFieldOnZ::new(k, smooth, contraction).expect("homogeneous by construction")
}

/// Coefficients of a 1-form in the `T*_Z` basis `dE_1..dE_d, dx_1..dx_n`,
/// written with coefficients on the left.
pub fn form_to_cotangent(z: &QuasiSmoothSpace, w: &DerivedForm) -> Option<Vec<SuperFunction>> {
    let (n, d) = (z.n(), z.d());
    let mut out = vec![z.algebra().zero(); n + d];
    for (word, p) in w.terms() {
        let (head, rest) = word.split_first()?;
        let mut s = 0u64;
        for g in rest {
            match g {
                Gen::E(j) => s |= 1 << j,
                _ => return None,
            }
        }
        // moving dE past E_S costs (-1)^{|S|}; dx commutes with E
        let (idx, sign) = match head {
            Gen::DE(j) => (*j as usize, if subset_size(s) % 2 == 1 { -Rational::one() } else { Rational::one() }),
            Gen::Dx(a) => (d + *a as usize, Rational::one()),
            _ => return None,
        };
        out[idx].add_assign_scaled(&SuperFunction::monomial(z.vars(), d, s, p.clone()), &sign);
    }
    Some(out)
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut bad: impl FnMut(&T) -> Option<String>) -> Option<String> {
    items.into_iter().find_map(|x| bad(&x))
}

/// The exactness suite on `count` random inputs drawn from `seed`.
pub fn check_exactness(h: &HamiltonianSpace, seed: u64, count: usize) -> VerificationReport {
    let mut rep = VerificationReport::new(&h.name);
    let z = h.space();
    let mut rng = CounterRng::new(seed ^ 0x6578_6163_746e_6573);
    let functions: Vec<SuperFunction> = (0..count).map(|_| random_function(z, &mut rng)).collect();
    let forms: Vec<DerivedForm> = (0..count).map(|_| random_form(z, &mut rng)).collect();

    rep.push(CheckRecord::exact(
        "exactness.koszul",
        anchors::KOSZUL_SQUARE,
        first_failure(&functions, |f| {
            let r = z.algebra().delta(&z.algebra().delta(f));
            (!r.is_zero()).then(|| format!("δ²({f}) = {r}"))
        }),
    ));
    rep.push(CheckRecord::exact(
        "exactness.derham",
        anchors::DERHAM_SQUARE,
        first_failure(&forms, |w| {
            let r = z.derham_d(&z.derham_d(w));
            (!r.is_zero()).then(|| format!("d²({w}) = {r}"))
        }),
    ));
    rep.push(CheckRecord::exact(
        "exactness.inner",
        anchors::INNER_SQUARE,
        first_failure(&forms, |w| {
            let r = z.form_inner_delta(&z.form_inner_delta(w));
            (!r.is_zero()).then(|| format!("δ²({w}) = {r}"))
        }),
    ));
    rep.push(CheckRecord::exact(
        "exactness.commute",
        anchors::D_DELTA_COMMUTE,
        first_failure(&forms, |w| {
            let mut r = z.derham_d(&z.form_inner_delta(w));
            r.add_assign_scaled(&z.form_inner_delta(&z.derham_d(w)), &-Rational::one());
            (!r.is_zero()).then(|| format!("(dδ - δd)({w}) = {r}"))
        }),
    ));
    let q = z.homological_vector_field();
    rep.push(CheckRecord::exact(
        "exactness.lie_derivative",
        anchors::LIE_DERIVATIVE_DELTA,
        first_failure(&forms, |w| {
            let mut r = z.lie_derivative(&q, w);
            r.add_assign_scaled(&z.form_inner_delta(w), &-Rational::one());
            (!r.is_zero()).then(|| format!("(L_Q - δ)({w}) = {r}"))
        }),
    ));
    let fields: Vec<VectorFieldOnZ> = (0..count).map(|i| random_vector_field(z, &mut rng, -((i % 2) as i32))).collect();
    rep.push(CheckRecord::exact(
        "exactness.cartan",
        anchors::CARTAN,
        first_failure(fields.iter().zip(&functions), |(x, f)| {
            let lhs = z.contract(x, &z.derham_d(&DerivedForm::from_function(f))).ok();
            let lhs = lhs.and_then(|l| l.to_function());
            let rhs = x.apply(f);
            (lhs.as_ref() != Some(&rhs)).then(|| format!("ι_X d({f}) = {lhs:?}, X({f}) = {rhs}"))
        }),
    ));

    let witness = match z.tangent_module() {
        Ok(t) => first_failure(0..z.n(), |&a| {
            (0..z.d()).find_map(|j| {
                let e = t.differential().get(z.n() + j, a);
                (e.body() != z.jacobian_entry(j, a) || e.terms().count() > 1)
                    .then(|| format!("D(∂{}) has {e} on ι{}", z.vars()[a], j + 1))
            })
        }),
        Err(e) => Some(format!("error: {e}")),
    };
    rep.push(CheckRecord::exact("exactness.tangent", anchors::TANGENT, witness));

    let witness = match z.cotangent_module() {
        Ok(cot) => first_failure(&functions, |f| {
            let df = form_to_cotangent(z, &z.derham_d(&DerivedForm::from_function(f)));
            let lhs = df.and_then(|df| cot.apply(&df).ok());
            let rhs = form_to_cotangent(z, &z.derham_d(&DerivedForm::from_function(&z.algebra().delta(f))));
            match (lhs, rhs) {
                (Some(l), Some(r)) if l == r => None,
                (Some(_), Some(_)) => Some(format!("δ¹(d({f})) differs from d(δ({f}))")),
                _ => Some(format!("d({f}) is not a 1-form in the cotangent basis")),
            }
        }),
        Err(e) => Some(format!("error: {e}")),
    };
    rep.push(CheckRecord::exact("exactness.cotangent", anchors::COTANGENT, witness));
    rep
}
