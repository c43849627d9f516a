use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::GradedError;
use crate::exactpoly::{Polynomial, Rational, Vars};

/// Subset of `{0..d-1}` as a bitmask; bit `i` is the odd generator `E_{i+1}`.
pub type Subset = u64;

/// Maximum Lie algebra dimension representable by a [`Subset`].
pub const MAX_DIM: usize = 64;

pub fn subset_size(s: Subset) -> usize {
    s.count_ones() as usize
}

/// Indices in increasing order.
pub fn subset_indices(s: Subset) -> impl Iterator<Item = usize> {
    (0..MAX_DIM).filter(move |i| s >> i & 1 == 1)
}

/// Sign of `E_S · E_T = ± E_{S∪T}` for disjoint `S`, `T`.
pub fn merge_sign(s: Subset, t: Subset) -> i32 {
    let mut inversions = 0u32;
    for j in subset_indices(t) {
        inversions += (s >> j >> 1).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Element of `Poly ⊗ Λ𝔤`: a polynomial coefficient for each monomial `E_S`.
///
/// `E_S` has degree `-|S|`.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperFunction {
    vars: Vars,
    dim: usize,
    terms: BTreeMap<Subset, Polynomial>,
}

impl SuperFunction {
    pub fn zero(vars: &Vars, dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "Lie algebra dimension above {MAX_DIM}");
        SuperFunction { vars: vars.clone(), dim, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: Polynomial, dim: usize) -> Self {
        let mut f = Self::zero(&p.vars().clone(), dim);
        f.insert(0, p);
        f
    }

    pub fn constant(vars: &Vars, dim: usize, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(vars, c), dim)
    }

    pub fn one(vars: &Vars, dim: usize) -> Self {
        Self::constant(vars, dim, Rational::one())
    }

    /// The odd generator `E_{i+1}` (0-based `i`).
    pub fn generator(vars: &Vars, dim: usize, i: usize) -> Self {
        assert!(i < dim);
        Self::monomial(vars, dim, 1 << i, Polynomial::one(vars))
    }

    pub fn monomial(vars: &Vars, dim: usize, s: Subset, coef: Polynomial) -> Self {
        let mut f = Self::zero(vars, dim);
        f.insert(s, coef);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (Subset, Polynomial)>>(vars: &Vars, dim: usize, terms: I) -> Self {
        let mut f = Self::zero(vars, dim);
        for (s, p) in terms {
            f.insert(s, p);
        }
        f
    }

    fn insert(&mut self, s: Subset, p: Polynomial) {
        debug_assert!(s >> self.dim == 0, "subset outside Lie algebra");
        if p.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(&p, &Rational::one());
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · coef · E_s`.
    fn accumulate(&mut self, s: Subset, coef: &Polynomial, c: &Rational) {
        let entry = self.terms.entry(s).or_insert_with(|| Polynomial::zero(&self.vars));
        entry.add_scaled(coef, c);
        if entry.is_zero() {
            self.terms.remove(&s);
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

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &Polynomial)> {
        self.terms.iter().map(|(s, p)| (*s, p))
    }

    pub fn coefficient(&self, s: Subset) -> Option<&Polynomial> {
        self.terms.get(&s)
    }

    /// The `|S| = 0` part.
    pub fn body(&self) -> Polynomial {
        self.terms.get(&0).cloned().unwrap_or_else(|| Polynomial::zero(&self.vars))
    }

    /// `Some(k)` when every stored term has degree `k`; `None` for zero or mixed.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|s| -(subset_size(*s) as i32));
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    /// True when zero or of degree `k`.
    pub fn is_homogeneous_of(&self, k: i32) -> bool {
        self.terms.keys().all(|s| -(subset_size(*s) as i32) == k)
    }

    /// Degree `k` component.
    pub fn component(&self, k: i32) -> SuperFunction {
        SuperFunction {
            vars: self.vars.clone(),
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| -(subset_size(**s) as i32) == k)
                .map(|(s, p)| (*s, p.clone()))
                .collect(),
        }
    }

    fn check_context(&self, other: &SuperFunction) -> Result<(), GradedError> {
        if self.dim != other.dim || self.vars[..] != other.vars[..] {
            return Err(GradedError::ContextMismatch {
                left: format!("{:?} / dim {}", self.vars, self.dim),
                right: format!("{:?} / dim {}", other.vars, other.dim),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SuperFunction) -> Result<SuperFunction, GradedError> {
        self.check_context(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn try_mul(&self, other: &SuperFunction) -> Result<SuperFunction, GradedError> {
        self.check_context(other)?;
        let mut out = SuperFunction::zero(&self.vars, self.dim);
        out.add_product(self, other);
        Ok(out)
    }

    /// `self += c · other`.
    pub fn add_assign_scaled(&mut self, other: &SuperFunction, c: &Rational) {
        for (s, p) in other.terms.iter() {
            self.accumulate(*s, p, c);
        }
    }

    /// `self += a · b` with the graded sign rule.
    pub fn add_product(&mut self, a: &SuperFunction, b: &SuperFunction) {
        let one = Rational::one();
        let minus = -Rational::one();
        for (s, p) in a.terms.iter() {
            for (t, r) in b.terms.iter() {
                if s & t != 0 {
                    continue;
                }
                let c = if merge_sign(*s, *t) > 0 { &one } else { &minus };
                let entry = self.terms.entry(s | t).or_insert_with(|| Polynomial::zero(&self.vars));
                let mut prod = Polynomial::zero(&self.vars);
                prod.add_product(p, r);
                entry.add_scaled(&prod, c);
                if entry.is_zero() {
                    self.terms.remove(&(s | t));
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> SuperFunction {
        let mut out = SuperFunction::zero(&self.vars, self.dim);
        out.add_assign_scaled(self, c);
        out
    }

    pub fn mul_poly(&self, p: &Polynomial) -> SuperFunction {
        SuperFunction::from_terms(&self.vars, self.dim, self.terms.iter().map(|(s, q)| (*s, q * p)))
    }

    /// The parity automorphism `E_S ↦ (-1)^{k|S|} E_S`.
    pub fn twist(&self, k: i32) -> SuperFunction {
        if k % 2 == 0 {
            return self.clone();
        }
        SuperFunction {
            vars: self.vars.clone(),
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(s, p)| (*s, if subset_size(*s) % 2 == 1 { -p } else { p.clone() }))
                .collect(),
        }
    }

    /// Applies `f` to every polynomial coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Polynomial) -> Polynomial) -> SuperFunction {
        SuperFunction::from_terms(&self.vars, self.dim, self.terms.iter().map(|(s, p)| (*s, f(p))))
    }

    /// Evaluates the polynomial coefficients at `m`, keeping the exterior part.
    pub fn eval(&self, m: &[Rational]) -> Result<BTreeMap<Subset, Rational>, GradedError> {
        let mut out = BTreeMap::new();
        for (s, p) in &self.terms {
            let v = p.eval(m).map_err(|e| GradedError::Point(e.to_string()))?;
            if !v.is_zero() {
                out.insert(*s, v);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *s == 0 {
                write!(f, "({p})")?;
            } else {
                let gens: Vec<String> = subset_indices(*s).map(|i| format!("E{}", i + 1)).collect();
                write!(f, "({p})*{}", gens.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&SuperFunction> for &SuperFunction {
    type Output = SuperFunction;
    fn add(self, rhs: &SuperFunction) -> SuperFunction {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&SuperFunction> for &SuperFunction {
    type Output = SuperFunction;
    fn sub(self, rhs: &SuperFunction) -> SuperFunction {
        self.check_context(rhs).unwrap_or_else(|e| panic!("{e}"));
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-Rational::one());
        out
    }
}

impl Mul<&SuperFunction> for &SuperFunction {
    type Output = SuperFunction;
    fn mul(self, rhs: &SuperFunction) -> SuperFunction {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &SuperFunction {
    type Output = SuperFunction;
    fn neg(self) -> SuperFunction {
        self.scale(&-Rational::one())
    }
}

/// `C∞(M) ⊗ Λ𝔤` with the Koszul differential `δ(E_j) = μʲ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulAlgebra {
    vars: Vars,
    mu: Vec<Polynomial>,
}

impl KoszulAlgebra {
    pub fn new(vars: &Vars, mu: Vec<Polynomial>) -> Result<Self, GradedError> {
        if mu.len() > MAX_DIM {
            return Err(GradedError::Shape(format!("Lie algebra dimension {} above {MAX_DIM}", mu.len())));
        }
        for p in &mu {
            if p.vars()[..] != vars[..] {
                return Err(GradedError::ContextMismatch {
                    left: format!("{:?}", vars),
                    right: format!("{:?}", p.vars()),
                });
            }
        }
        Ok(KoszulAlgebra { vars: vars.clone(), mu })
    }

    /// `μ ≡ 0`, so `δ = 0`.
    pub fn trivial(vars: &Vars, dim: usize) -> Self {
        KoszulAlgebra { vars: vars.clone(), mu: vec![Polynomial::zero(vars); dim] }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[Polynomial] {
        &self.mu
    }

    pub fn zero(&self) -> SuperFunction {
        SuperFunction::zero(&self.vars, self.dim())
    }

    pub fn one(&self) -> SuperFunction {
        SuperFunction::one(&self.vars, self.dim())
    }

    pub fn poly(&self, p: Polynomial) -> SuperFunction {
        SuperFunction::from_poly(p, self.dim())
    }

    pub fn generator(&self, i: usize) -> SuperFunction {
        SuperFunction::generator(&self.vars, self.dim(), i)
    }

    pub fn constant(&self, c: Rational) -> SuperFunction {
        SuperFunction::constant(&self.vars, self.dim(), c)
    }

    pub fn check(&self, f: &SuperFunction) -> Result<(), GradedError> {
        if f.dim != self.dim() || f.vars[..] != self.vars[..] {
            return Err(GradedError::ContextMismatch {
                left: format!("{:?} / dim {}", self.vars, self.dim()),
                right: format!("{:?} / dim {}", f.vars, f.dim),
            });
        }
        Ok(())
    }

    /// `δ(p E_S) = Σ_i (-1)^{i-1} p μ^{s_i} E_{S∖s_i}`.
    pub fn delta(&self, f: &SuperFunction) -> SuperFunction {
        let mut out = self.zero();
        let one = Rational::one();
        let minus = -Rational::one();
        for (s, p) in f.terms.iter() {
            for (pos, i) in subset_indices(*s).enumerate() {
                if self.mu[i].is_zero() {
                    continue;
                }
                let mut prod = Polynomial::zero(&self.vars);
                prod.add_product(p, &self.mu[i]);
                out.accumulate(s & !(1 << i), &prod, if pos % 2 == 0 { &one } else { &minus });
            }
        }
        out
    }

    pub fn try_delta(&self, f: &SuperFunction) -> Result<SuperFunction, GradedError> {
        self.check(f)?;
        Ok(self.delta(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_polynomial, q, vars_from};

    fn ctx() -> (Vars, KoszulAlgebra) {
        let v = vars_from(["x", "y"]);
        let mu = vec![
            parse_polynomial("1/2*x^2 + 1/2*y^2", &v).unwrap(),
            parse_polynomial("x*y", &v).unwrap(),
        ];
        let k = KoszulAlgebra::new(&v, mu).unwrap();
        (v, k)
    }

    #[test]
    fn odd_generators_anticommute() {
        let (_, k) = ctx();
        let e1 = k.generator(0);
        let e2 = k.generator(1);
        let e12 = &e1 * &e2;
        assert_eq!(e12.coefficient(0b11).unwrap().constant_term(), q(1, 1));
        assert_eq!(&e2 * &e1, -&e12);
        assert!((&e1 * &e1).is_zero());
        assert_eq!(e12.degree(), Some(-2));
    }

    #[test]
    fn odd_square_of_linear_combination_vanishes() {
        let (v, k) = ctx();
        let x = k.poly(Polynomial::var(&v, 0).unwrap());
        let y = k.poly(Polynomial::var(&v, 1).unwrap());
        let a = &(&x * &k.generator(0)) + &(&y * &k.generator(1));
        assert!((&a * &a).is_zero());
    }

    #[test]
    fn merge_signs() {
        assert_eq!(merge_sign(0b001, 0b010), 1);
        assert_eq!(merge_sign(0b010, 0b001), -1);
        assert_eq!(merge_sign(0b110, 0b001), 1);
        assert_eq!(merge_sign(0b100, 0b011), 1);
        assert_eq!(merge_sign(0b010, 0b101), -1);
    }

    #[test]
    fn koszul_delta_on_generators() {
        let (_, k) = ctx();
        let e1 = k.generator(0);
        let e2 = k.generator(1);
        assert_eq!(k.delta(&e1), k.poly(k.mu()[0].clone()));
        let d12 = k.delta(&(&e1 * &e2));
        let expected = &(&k.poly(k.mu()[0].clone()) * &e2) - &(&k.poly(k.mu()[1].clone()) * &e1);
        assert_eq!(d12, expected);
        assert!(k.delta(&d12).is_zero());
    }

    #[test]
    fn twist_and_components() {
        let (v, k) = ctx();
        let f = &k.one() + &k.generator(1);
        assert_eq!(f.degree(), None);
        assert_eq!(f.component(-1), k.generator(1));
        assert_eq!(f.twist(1), &k.one() - &k.generator(1));
        assert_eq!(f.twist(2), f);
        assert_eq!(f.body(), Polynomial::one(&v));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let (v, k) = ctx();
        let other = SuperFunction::one(&v, 3);
        assert!(k.one().try_mul(&other).is_err());
        assert!(k.try_delta(&other).is_err());
    }
}
