//! Double-precision group elements for the finite (group-level) checks.

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use super::{GroupTag, LieAlgebraData, LieError};

/// Residual bound for `exp(A) exp(-A) = I`.
pub const EXP_RESIDUAL_TOL: f64 = 1e-13;
/// Residual bound for `gᵀg = I` on orthogonal samples.
pub const ORTHO_TOL: f64 = 1e-10;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 in counter form: the `i`-th output depends only on `(seed, i)`.
#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { seed, counter: 0 }
    }

    /// Starts the stream at an arbitrary counter, for partitioned sampling.
    pub fn at(seed: u64, counter: u64) -> Self {
        CounterRng { seed, counter }
    }

    pub fn value_at(seed: u64, counter: u64) -> u64 {
        let mut z = seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = Self::value_at(self.seed, self.counter);
        self.counter += 1;
        v
    }

    /// Uniform in `[0, 1)` with 53 bits.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_unit() - 1.0
    }

    pub fn symmetric_vec(&mut self, len: usize) -> Vec<f64> {
        (0..len).map(|_| self.next_symmetric()).collect()
    }
}

fn norm_inf(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
}

fn exp_series(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = norm_inf(a);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = a / 2f64.powi(squarings);
    let mut sum = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..64 {
        term = &term * &scaled / k as f64;
        sum += &term;
        if norm_inf(&term) < 1e-16 * norm_inf(&sum).max(1.0) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Matrix exponential by scaling and squaring of the truncated Taylor series.
///
/// Returns `(exp(A), exp(-A), residual)` with residual `‖exp(A) exp(-A) - I‖_∞`.
pub fn expm(a: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>, f64) {
    let n = a.nrows();
    let e = exp_series(a);
    let einv = exp_series(&(-a));
    let residual = norm_inf(&(&e * &einv - DMatrix::<f64>::identity(n, n)));
    (e, einv, residual)
}

/// A sampled group element `g = exp(scale · Σ source_i A_i)`.
#[derive(Debug, Clone)]
pub struct NumericGroupElement {
    pub matrix: DMatrix<f64>,
    pub inverse: DMatrix<f64>,
    pub source: Vec<f64>,
    pub scale: f64,
}

impl NumericGroupElement {
    pub fn identity(n: usize, d: usize) -> Self {
        NumericGroupElement {
            matrix: DMatrix::identity(n, n),
            inverse: DMatrix::identity(n, n),
            source: vec![0.0; d],
            scale: 0.0,
        }
    }

    /// The Lie algebra vector `scale · source` with `g = exp(rep(X))`.
    pub fn log_vector(&self) -> Vec<f64> {
        self.source.iter().map(|v| v * self.scale).collect()
    }
}

/// Floating-point view of a Lie algebra with a representation.
#[derive(Debug, Clone)]
pub struct NumericLie {
    pub dim: usize,
    pub n: usize,
    pub tag: GroupTag,
    pub rep: Vec<DMatrix<f64>>,
    /// `c[(k*d + i)*d + j]`
    constants: Vec<f64>,
    gram_inverse: DMatrix<f64>,
}

fn to_f64(r: &crate::exactpoly::Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl NumericLie {
    pub fn new(l: &LieAlgebraData) -> Result<Self, LieError> {
        let rep_q = l.rep().ok_or(LieError::MissingRep)?;
        let tag = l.group_tag().ok_or(LieError::MissingGroupTag)?;
        let d = l.dim();
        let n = rep_q.first().map_or(0, |m| m.rows());
        let rep: Vec<DMatrix<f64>> = rep_q
            .iter()
            .map(|m| DMatrix::from_fn(n, n, |i, j| to_f64(&m[(i, j)])))
            .collect();
        let mut constants = Vec::with_capacity(d * d * d);
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    constants.push(to_f64(l.c(k, i, j)));
                }
            }
        }
        let gram = DMatrix::from_fn(d, d, |a, b| rep[a].dot(&rep[b]));
        let gram_inverse = if d == 0 {
            DMatrix::zeros(0, 0)
        } else {
            gram.try_inverse().ok_or(LieError::UnfaithfulRep)?
        };
        Ok(NumericLie { dim: d, n, tag, rep, constants, gram_inverse })
    }

    pub fn c(&self, k: usize, i: usize, j: usize) -> f64 {
        self.constants[(k * self.dim + i) * self.dim + j]
    }

    pub fn rep_of(&self, x: &[f64]) -> DMatrix<f64> {
        self.rep
            .iter()
            .zip(x)
            .fold(DMatrix::zeros(self.n, self.n), |acc, (a, xi)| acc + a * *xi)
    }

    pub fn ad_matrix(&self, x: &[f64]) -> DMatrix<f64> {
        let d = self.dim;
        DMatrix::from_fn(d, d, |k, j| (0..d).map(|i| x[i] * self.c(k, i, j)).sum())
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let ad = self.ad_matrix(x);
        (&ad * nalgebra::DVector::from_column_slice(y)).iter().copied().collect()
    }

    /// Coordinates of an `n×n` matrix in the representation basis (least squares).
    pub fn coordinates(&self, m: &DMatrix<f64>) -> Vec<f64> {
        let rhs = nalgebra::DVector::from_fn(self.dim, |a, _| self.rep[a].dot(m));
        (&self.gram_inverse * rhs).iter().copied().collect()
    }

    /// `Ad_g` as a `d×d` matrix, from conjugation `g A_i g⁻¹` in the representation.
    pub fn adjoint_by_conjugation(&self, g: &DMatrix<f64>, g_inv: &DMatrix<f64>) -> DMatrix<f64> {
        let d = self.dim;
        let mut out = DMatrix::zeros(d, d);
        for i in 0..d {
            let conj = g * &self.rep[i] * g_inv;
            for (k, v) in self.coordinates(&conj).into_iter().enumerate() {
                out[(k, i)] = v;
            }
        }
        out
    }

    /// `Ad_{exp X} = exp(ad_X)` computed in the adjoint representation.
    pub fn adjoint_by_exponential(&self, x: &[f64]) -> DMatrix<f64> {
        expm(&self.ad_matrix(x)).0
    }

    pub fn exponentiate(&self, x: &[f64], scale: f64) -> Result<NumericGroupElement, LieError> {
        let a = self.rep_of(x) * scale;
        let (mut g, mut g_inv, residual) = expm(&a);
        if residual > EXP_RESIDUAL_TOL {
            return Err(LieError::ExpResidual { residual, tolerance: EXP_RESIDUAL_TOL });
        }
        if matches!(self.tag, GroupTag::Orthogonal | GroupTag::UnitaryRealForm) {
            // Newton–Schulz polar iteration pulls g back onto O(n)
            let eye = DMatrix::<f64>::identity(self.n, self.n);
            for _ in 0..2 {
                g = &g * (&eye * 3.0 - g.transpose() * &g) * 0.5;
            }
            let residual = norm_inf(&(g.transpose() * &g - &eye));
            if residual > ORTHO_TOL {
                return Err(LieError::NotOrthogonal { residual, tolerance: ORTHO_TOL });
            }
            g_inv = g.transpose();
        }
        Ok(NumericGroupElement { matrix: g, inverse: g_inv, source: x.to_vec(), scale })
    }
}

impl LieAlgebraData {
    /// Deterministic group samples `exp(X)` with `X` uniform in `[-1, 1]^d`.
    /// Sample `s` draws from counters `s·d .. (s+1)·d`.
    pub fn sample_group(&self, seed: u64, count: usize) -> Result<Vec<NumericGroupElement>, LieError> {
        let num = NumericLie::new(self)?;
        let d = self.dim();
        (0..count)
            .map(|s| {
                let mut rng = CounterRng::at(seed, (s * d) as u64);
                let x = rng.symmetric_vec(d);
                num.exponentiate(&x, 1.0)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{q, QMatrix};

    fn so2() -> LieAlgebraData {
        let gen = QMatrix::from_rows(vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap();
        LieAlgebraData::abelian(1).with_rep(vec![gen]).unwrap().with_group_tag(GroupTag::Orthogonal)
    }

    #[test]
    fn rng_is_counter_addressable() {
        let mut a = CounterRng::new(7);
        let seq: Vec<u64> = (0..5).map(|_| a.next_u64()).collect();
        let mut b = CounterRng::at(7, 3);
        assert_eq!(b.next_u64(), seq[3]);
        assert_ne!(CounterRng::value_at(8, 0), seq[0]);
        let mut c = CounterRng::new(1);
        for _ in 0..1000 {
            let v = c.next_symmetric();
            assert!((-1.0..1.0).contains(&v));
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let (e, _, r) = expm(&DMatrix::zeros(3, 3));
        assert_eq!(e, DMatrix::identity(3, 3));
        assert_eq!(r, 0.0);
    }

    #[test]
    fn so2_exponential_is_rotation() {
        let num = NumericLie::new(&so2()).unwrap();
        for t in [0.3, 1.0, 2.5, -4.0] {
            let g = num.exponentiate(&[1.0], t).unwrap();
            let expected = DMatrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
            assert!((&g.matrix - expected).amax() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn so3_samples_are_orthogonal_and_reproducible() {
        let l = crate::liealg::LieAlgebraData::so3()
            .with_rep(so3_rep())
            .unwrap()
            .with_group_tag(GroupTag::Orthogonal);
        let a = l.sample_group(0, 20).unwrap();
        let b = l.sample_group(0, 20).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.matrix, y.matrix);
            let r = (x.matrix.transpose() * &x.matrix - DMatrix::<f64>::identity(3, 3)).amax();
            assert!(r < 1e-10);
            assert!(x.source.iter().all(|v| (-1.0..1.0).contains(v)));
        }
    }

    fn so3_rep() -> Vec<QMatrix> {
        // (L_i)_{ab} = -ε_{iab}
        let eps = |i: usize, a: usize, b: usize| -> i64 {
            match (i, a, b) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
                (0, 2, 1) | (1, 0, 2) | (2, 1, 0) => -1,
                _ => 0,
            }
        };
        (0..3)
            .map(|i| {
                QMatrix::from_rows((0..3).map(|a| (0..3).map(|b| q(-eps(i, a, b), 1)).collect()).collect()).unwrap()
            })
            .collect()
    }

    #[test]
    fn adjoint_routes_agree() {
        let l = LieAlgebraData::so3().with_rep(so3_rep()).unwrap().with_group_tag(GroupTag::Orthogonal);
        let num = NumericLie::new(&l).unwrap();
        for g in l.sample_group(3, 25).unwrap() {
            let conj = num.adjoint_by_conjugation(&g.matrix, &g.inverse);
            let via_exp = num.adjoint_by_exponential(&g.log_vector());
            assert!((conj - via_exp).amax() < 1e-8);
        }
    }

    #[test]
    fn missing_rep_is_an_error() {
        assert!(matches!(LieAlgebraData::so3().sample_group(0, 1), Err(LieError::MissingRep)));
    }
}
