use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{PolyError, Rational};

/// Ordered variable names shared by every polynomial of one space.
pub type Vars = Arc<[String]>;

pub fn vars_from<I, S>(names: I) -> Vars
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    names.into_iter().map(Into::into).collect::<Vec<_>>().into()
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with rational coefficients in canonical form.
///
/// Terms are kept in a map keyed by graded-lex monomials and zero
/// coefficients are never stored, so two polynomials over the same
/// variable list are equal exactly when their term maps are equal.
#[derive(Clone)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(vars: &Vars, index: usize) -> Result<Self, PolyError> {
        if index >= vars.len() {
            return Err(PolyError::UnknownVariable(format!("#{index}")));
        }
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        Ok(Self::from_terms(vars, [(Monomial::from_exponents(exps), Rational::one())]))
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length must match variable count");
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `Σ coeffs[i] x_i`.
    pub fn linear(vars: &Vars, coeffs: &[Rational]) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Monomial::from_exponents(e), c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Rebinds a polynomial to an equal variable list (no-op on content).
    pub fn with_vars(mut self, vars: &Vars) -> Result<Self, PolyError> {
        if !same_vars(&self.vars, vars) {
            return Err(PolyError::VariableMismatch {
                left: self.vars.to_vec(),
                right: vars.to_vec(),
            });
        }
        self.vars = vars.clone();
        Ok(self)
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    /// Lifts a polynomial over the empty variable list (a bare constant)
    /// onto `vars`.
    fn lift_constant(&self, vars: &Vars) -> Option<Polynomial> {
        if self.vars.is_empty() {
            Some(Polynomial::constant(vars, self.constant_term()))
        } else {
            None
        }
    }

    fn align<'a>(
        &'a self,
        other: &'a Polynomial,
    ) -> Result<(std::borrow::Cow<'a, Polynomial>, std::borrow::Cow<'a, Polynomial>), PolyError> {
        use std::borrow::Cow;
        if self.check_compatible(other).is_ok() {
            return Ok((Cow::Borrowed(self), Cow::Borrowed(other)));
        }
        if let Some(l) = self.lift_constant(&other.vars) {
            return Ok((Cow::Owned(l), Cow::Borrowed(other)));
        }
        if let Some(r) = other.lift_constant(&self.vars) {
            return Ok((Cow::Borrowed(self), Cow::Owned(r)));
        }
        Err(PolyError::VariableMismatch {
            left: self.vars.to_vec(),
            right: other.vars.to_vec(),
        })
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        let (a, b) = self.align(other)?;
        let mut out = a.into_owned();
        for (m, c) in b.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        let (a, b) = self.align(other)?;
        let mut out = a.into_owned();
        for (m, c) in b.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        let (a, b) = self.align(other)?;
        let mut out = Polynomial::zero(&a.vars);
        for (ma, ca) in a.terms.iter() {
            for (mb, cb) in b.terms.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `self += c · other`, in place.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        assert!(same_vars(&self.vars, &other.vars), "variable lists differ");
        if c.is_zero() {
            return;
        }
        for (m, v) in other.terms.iter() {
            self.add_term(m.clone(), v * c);
        }
    }

    /// `self += a · b`, in place.
    pub fn add_product(&mut self, a: &Polynomial, b: &Polynomial) {
        assert!(same_vars(&a.vars, &b.vars), "variable lists differ");
        for (ma, ca) in a.terms.iter() {
            for (mb, cb) in b.terms.iter() {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to the variable at `index`.
    pub fn partial(&self, index: usize) -> Result<Polynomial, PolyError> {
        if index >= self.nvars() {
            return Err(PolyError::UnknownVariable(format!("#{index}")));
        }
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in self.terms.iter() {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.to_vec();
            exps[index] -= 1;
            out.add_term(Monomial::from_exponents(exps), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn partial_by_name(&self, name: &str) -> Result<Polynomial, PolyError> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        self.partial(idx)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.partial(i).expect("index in range")).collect()
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch { expected: self.nvars(), got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars(), "evaluation point dimension");
        self.terms
            .iter()
            .map(|(m, c)| {
                let base = c.to_f64().unwrap_or(f64::NAN);
                m.0.iter()
                    .zip(point)
                    .fold(base, |acc, (&e, x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Substitutes linear forms for every variable: `x_i ↦ Σ_j sub[i][j] x_j`.
    pub fn linear_substitute(&self, sub: &[Vec<Rational>]) -> Polynomial {
        let images: Vec<Polynomial> = sub.iter().map(|row| Polynomial::linear(&self.vars, row)).collect();
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in self.terms.iter() {
            let mut t = Polynomial::constant(&self.vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &images[i];
                }
            }
            out = &out + &t;
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (name, &e) in self.vars.iter().zip(m.0.iter()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_polynomial, q};

    fn xy() -> Vars {
        vars_from(["x", "y"])
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &xy()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
    }

    #[test]
    fn multiplication_by_zero() {
        let zero = Polynomial::zero(&xy());
        assert!((&p("3*x^2*y - 1/7") * &zero).is_zero());
    }

    #[test]
    fn moment_map_difference_is_half() {
        let a = p("1/2*x^2 + 1/2*y^2");
        let b = p("1/2*x^2 + 1/2*y^2 - 1/2");
        assert_eq!(&a - &b, Polynomial::constant(&xy(), q(1, 2)));
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        let a = p("x");
        let b = parse_polynomial("u", &vars_from(["u", "v"])).unwrap();
        let err = a.try_add(&b).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("\"x\"") && msg.contains("\"u\""), "{msg}");
    }

    #[test]
    fn bare_constant_lifts() {
        let c = Polynomial::constant(&vars_from(Vec::<String>::new()), q(2, 1));
        assert_eq!(p("x").try_mul(&c).unwrap(), p("2*x"));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x^2*y").partial(0).unwrap(), p("2*x*y"));
        assert!(p("5/3").partial(0).unwrap().is_zero());
        assert_eq!(p("1/2*x^2 + 1/2*y^2 - 1/2").partial_by_name("y").unwrap(), p("y"));
        assert!(matches!(p("x").partial_by_name("z"), Err(PolyError::UnknownVariable(_))));
        assert!(p("x").partial(7).is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("1/2*x^2 + 1/2*y^2").eval(&[q(1, 1), q(0, 1)]).unwrap(), q(1, 2));
        assert_eq!(p("x^3 - 4*x*y + 9/4").eval(&[q(0, 1), q(0, 1)]).unwrap(), q(9, 4));
        assert_eq!(
            p("1/2*x^2 + 1/2*y^2 - 1/2").eval(&[q(3, 5), q(4, 5)]).unwrap(),
            q(0, 1)
        );
        assert!(matches!(
            p("x").eval(&[q(1, 1)]),
            Err(PolyError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn display_is_graded_lex_descending() {
        assert_eq!(p("y - 1/2 + x^2 + x*y").to_string(), "x^2 + x*y + y - 1/2");
        assert_eq!(Polynomial::zero(&xy()).to_string(), "0");
        assert_eq!(p("-x").to_string(), "-x");
    }

    #[test]
    fn linear_substitution_rotates() {
        // x -> -y, y -> x maps x^2 + 2y to y^2 + 2x
        let sub = vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]];
        assert_eq!(p("x^2 + 2*y").linear_substitute(&sub), p("y^2 + 2*x"));
    }
}
