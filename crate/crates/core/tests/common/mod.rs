#![allow(dead_code)]

use proptest::prelude::*;

use symred::cli::{load_space, LoadedSpace};
use symred::exactpoly::{q, vars_from, Monomial, Polynomial, Rational, Vars};
use symred::reduction::HamiltonianSpace;

pub const CORPUS: [&str; 5] = ["s1_r2", "s1_r2_shifted", "so3_cotangent_r3", "t2_c2", "trivial_group"];
pub const NONTRIVIAL: [&str; 4] = ["s1_r2", "s1_r2_shifted", "so3_cotangent_r3", "t2_c2"];

pub fn builtin(name: &str) -> LoadedSpace {
    load_space(name).unwrap()
}

pub fn space(name: &str) -> HamiltonianSpace {
    builtin(name).hamiltonian
}

pub fn xyz() -> Vars {
    vars_from(["x", "y", "z"])
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| q(if neg { -n } else { n }, d))
}

/// Degree ≤ 3 in up to three variables, at most four terms.
pub fn poly(vars: Vars) -> impl Strategy<Value = Polynomial> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0u32..=3, n), rational()), 0..=4).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(mut e, c)| {
            while e.iter().sum::<u32>() > 3 {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            (Monomial::from_exponents(e), c)
        });
        Polynomial::from_terms(&vars, terms)
    })
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

use symred::cli::{load_config, RationalValue, SpaceConfig};

pub fn config(name: &str) -> SpaceConfig {
    builtin(name).config
}

/// Adds `delta` to entry `(r, c)` of rep matrix `i` (all 0-based).
pub fn perturb_rep(name: &str, i: usize, r: usize, c: usize, delta: Rational) -> LoadedSpace {
    let mut cfg = config(name);
    let entry = &mut cfg.lie.rep[i][r][c];
    let old = match entry {
        RationalValue::Int(v) => Rational::from_integer((*v).into()),
        RationalValue::Text(s) => symred::exactpoly::parse_rational(s).unwrap(),
    };
    *entry = RationalValue::from(&(old + delta));
    load_config(cfg).unwrap()
}

/// Adds 1 to `c^k_{ij}` (0-based), keeping the antisymmetric partner in step.
pub fn perturb_constant(name: &str, k: usize, i: usize, j: usize) -> LoadedSpace {
    let mut cfg = config(name);
    let (k1, i1, j1) = (k + 1, i + 1, j + 1);
    let consts = &mut cfg.lie.structure_constants;
    if let Some(e) = consts.iter_mut().find(|e| (e.0, e.1, e.2) == (k1, i1, j1)) {
        let v = match &e.3 {
            RationalValue::Int(v) => *v,
            other => panic!("non-integer constant {other}"),
        };
        e.3 = RationalValue::Int(v + 1);
    } else if let Some(e) = consts.iter_mut().find(|e| (e.0, e.1, e.2) == (k1, j1, i1)) {
        let v = match &e.3 {
            RationalValue::Int(v) => *v,
            other => panic!("non-integer constant {other}"),
        };
        e.3 = RationalValue::Int(v - 1);
    } else {
        consts.push((k1, i1, j1, RationalValue::Int(1)));
    }
    load_config(cfg).unwrap()
}
