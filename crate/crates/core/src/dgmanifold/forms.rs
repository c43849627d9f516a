//! Bigraded forms on `Z`: polynomial coefficients times monomials in
//! `dx_a`, `dE_j`, `E_j` and the left-invariant coframe `Θ_i`.
//!
//! Bidegrees (form, derived): `x (0,0)`, `E (0,-1)`, `dx (1,0)`,
//! `dE (1,-1)`, `Θ (1,0)`. Two homogeneous objects of bidegrees `(p,q)`
//! and `(p',q')` commute up to `(-1)^{pp' + qq'}`; [`swap_sign`] is the
//! only place this rule is written down.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactpoly::{Polynomial, Rational, Vars};
use crate::gradedcore::{subset_indices, SuperFunction};

/// Odd or even generators of the form algebra, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Dx(u16),
    Theta(u16),
    DE(u16),
    E(u16),
}

impl Gen {
    pub fn bidegree(self) -> (i32, i32) {
        match self {
            Gen::Dx(_) | Gen::Theta(_) => (1, 0),
            Gen::DE(_) => (1, -1),
            Gen::E(_) => (0, -1),
        }
    }
}

/// `(-1)^{pp' + qq'}`.
pub fn swap_sign(a: (i32, i32), b: (i32, i32)) -> i32 {
    if (a.0 * b.0 + a.1 * b.1).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The commutation sign for every pair of generator kinds.
pub fn sign_table() -> Vec<(&'static str, &'static str, i32)> {
    let kinds = [("dx", Gen::Dx(0)), ("Θ", Gen::Theta(0)), ("dE", Gen::DE(0)), ("E", Gen::E(0))];
    let mut out = Vec::new();
    for (i, (na, a)) in kinds.iter().enumerate() {
        for (nb, b) in &kinds[i..] {
            out.push((*na, *nb, swap_sign(a.bidegree(), b.bidegree())));
        }
    }
    out
}

pub const SIGN_CONVENTION: &str = "bigraded: x(0,0) E(0,-1) dx(1,0) dE(1,-1) Θ(1,0); swap sign (-1)^(pp'+qq')";

/// Sorts a generator word into canonical order; `None` when it vanishes.
fn normal_order(mut word: Vec<Gen>) -> Option<(Vec<Gen>, i32)> {
    let mut sign = 1;
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            sign *= swap_sign(word[j - 1].bidegree(), word[j].bidegree());
            word.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in word.windows(2) {
        if w[0] == w[1] && swap_sign(w[0].bidegree(), w[0].bidegree()) < 0 {
            return None;
        }
    }
    Some((word, sign))
}

#[derive(Clone, PartialEq, Eq)]
pub struct DerivedForm {
    vars: Vars,
    dim: usize,
    terms: BTreeMap<Vec<Gen>, Polynomial>,
}

impl DerivedForm {
    pub fn zero(vars: &Vars, dim: usize) -> Self {
        DerivedForm { vars: vars.clone(), dim, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: Polynomial, dim: usize) -> Self {
        let vars = p.vars().clone();
        let mut f = Self::zero(&vars, dim);
        f.accumulate(vec![], &p, &Rational::one());
        f
    }

    pub fn generator(vars: &Vars, dim: usize, g: Gen) -> Self {
        Self::term(vars, dim, vec![g], Polynomial::one(vars))
    }

    /// `p · w` for an arbitrary generator word `w`.
    pub fn term(vars: &Vars, dim: usize, word: Vec<Gen>, p: Polynomial) -> Self {
        let mut f = Self::zero(vars, dim);
        if let Some((w, s)) = normal_order(word) {
            f.accumulate(w, &p, &Rational::from_integer(s.into()));
        }
        f
    }

    pub fn from_function(f: &SuperFunction) -> Self {
        let mut out = Self::zero(f.vars(), f.dim());
        for (s, p) in f.terms() {
            let word = subset_indices(s).map(|i| Gen::E(i as u16)).collect();
            out.accumulate(word, p, &Rational::one());
        }
        out
    }

    fn accumulate(&mut self, word: Vec<Gen>, p: &Polynomial, c: &Rational) {
        if p.is_zero() || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(word.clone()).or_insert_with(|| Polynomial::zero(&self.vars));
        entry.add_scaled(p, c);
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Gen], &Polynomial)> {
        self.terms.iter().map(|(w, p)| (w.as_slice(), p))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Bidegrees present, sorted.
    pub fn bidegrees(&self) -> Vec<(i32, i32)> {
        let mut v: Vec<_> = self.terms.keys().map(|w| word_bidegree(w)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Back to a function on `Z` when only `E` generators occur.
    pub fn to_function(&self) -> Option<SuperFunction> {
        let mut terms = Vec::new();
        for (w, p) in &self.terms {
            let mut s = 0u64;
            for g in w {
                match g {
                    Gen::E(i) => s |= 1 << i,
                    _ => return None,
                }
            }
            terms.push((s, p.clone()));
        }
        Some(SuperFunction::from_terms(&self.vars, self.dim, terms))
    }

    pub fn add_assign_scaled(&mut self, other: &DerivedForm, c: &Rational) {
        for (w, p) in &other.terms {
            self.accumulate(w.clone(), p, c);
        }
    }

    pub fn scale(&self, c: &Rational) -> DerivedForm {
        let mut out = Self::zero(&self.vars, self.dim);
        out.add_assign_scaled(self, c);
        out
    }

    pub fn wedge(&self, other: &DerivedForm) -> DerivedForm {
        let mut out = Self::zero(&self.vars, self.dim);
        for (wa, pa) in &self.terms {
            for (wb, pb) in &other.terms {
                let mut word = wa.clone();
                word.extend_from_slice(wb);
                if let Some((w, s)) = normal_order(word) {
                    let mut p = Polynomial::zero(&self.vars);
                    p.add_product(pa, pb);
                    out.accumulate(w, &p, &Rational::from_integer(s.into()));
                }
            }
        }
        out
    }

    /// Drops every term containing a `Θ`.
    pub fn without_theta(&self) -> DerivedForm {
        DerivedForm {
            vars: self.vars.clone(),
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| !w.iter().any(|g| matches!(g, Gen::Theta(_))))
                .map(|(w, p)| (w.clone(), p.clone()))
                .collect(),
        }
    }

    /// Applies a derivation of bidegree `bideg` given its action on
    /// polynomial coefficients and on generators.
    pub fn derivation(
        &self,
        bideg: (i32, i32),
        on_poly: impl Fn(&Polynomial) -> DerivedForm,
        on_gen: impl Fn(Gen) -> DerivedForm,
    ) -> DerivedForm {
        let mut out = Self::zero(&self.vars, self.dim);
        let one = Rational::one();
        for (word, p) in &self.terms {
            let rest = DerivedForm::term(&self.vars, self.dim, word.clone(), Polynomial::one(&self.vars));
            out.add_assign_scaled(&on_poly(p).wedge(&rest), &one);
            let mut sign = 1;
            for (i, g) in word.iter().enumerate() {
                let image = on_gen(*g);
                if !image.is_zero() {
                    let prefix = DerivedForm::term(&self.vars, self.dim, word[..i].to_vec(), p.clone());
                    let suffix = DerivedForm::term(&self.vars, self.dim, word[i + 1..].to_vec(), Polynomial::one(&self.vars));
                    let piece = prefix.wedge(&image).wedge(&suffix);
                    out.add_assign_scaled(&piece, &Rational::from_integer(sign.into()));
                }
                sign *= swap_sign(bideg, g.bidegree());
            }
        }
        out
    }
}

fn word_bidegree(w: &[Gen]) -> (i32, i32) {
    w.iter().fold((0, 0), |(p, q), g| {
        let (a, b) = g.bidegree();
        (p + a, q + b)
    })
}

impl fmt::Display for DerivedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p})")?;
            for g in w {
                match g {
                    Gen::Dx(a) => write!(f, "*d{}", self.vars[*a as usize])?,
                    Gen::Theta(i) => write!(f, "*Θ{}", i + 1)?,
                    Gen::DE(j) => write!(f, "*dE{}", j + 1)?,
                    Gen::E(j) => write!(f, "*E{}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DerivedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `X = Σ f_a ∂/∂x_a + Σ g_j ι_{σ_j}`, homogeneous of degree `k`:
/// `|f_a| = k` and `|g_j| = k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFieldOnZ {
    pub degree: i32,
    pub smooth: Vec<SuperFunction>,
    pub contraction: Vec<SuperFunction>,
}

impl VectorFieldOnZ {
    pub fn new(degree: i32, smooth: Vec<SuperFunction>, contraction: Vec<SuperFunction>) -> Option<Self> {
        let ok = smooth.iter().all(|f| f.is_homogeneous_of(degree))
            && contraction.iter().all(|g| g.is_homogeneous_of(degree - 1));
        ok.then_some(VectorFieldOnZ { degree, smooth, contraction })
    }

    /// Action on functions as a graded derivation of degree `k`.
    pub fn apply(&self, f: &SuperFunction) -> SuperFunction {
        let vars = f.vars().clone();
        let dim = f.dim();
        let mut out = SuperFunction::zero(&vars, dim);
        let one = Rational::one();
        for (s, p) in f.terms() {
            let es = SuperFunction::monomial(&vars, dim, s, Polynomial::one(&vars));
            for (a, fa) in self.smooth.iter().enumerate() {
                let dp = p.partial(a).expect("variable index in range");
                if dp.is_zero() || fa.is_zero() {
                    continue;
                }
                out.add_product(&fa.mul_poly(&dp), &es);
            }
            for (pos, i) in subset_indices(s).enumerate() {
                let g = &self.contraction[i];
                if g.is_zero() {
                    continue;
                }
                let before = s & ((1u64 << i) - 1);
                let after = s & !((1u64 << (i + 1)) - 1);
                let left = SuperFunction::monomial(&vars, dim, before, p.clone());
                let right = SuperFunction::monomial(&vars, dim, after, Polynomial::one(&vars));
                let piece = &(&left * g) * &right;
                let sign = if self.degree.rem_euclid(2) == 1 && pos % 2 == 1 { -&one } else { one.clone() };
                out.add_assign_scaled(&piece, &sign);
            }
        }
        out
    }
}
