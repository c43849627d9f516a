use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::superfn::{merge_sign, subset_size};
use super::{BlockMap, DgModule, GradedError, SuperFunction};
use crate::exactpoly::{bareiss_rank, QMatrix, Rational};

/// Largest Lie algebra dimension for which the `2^d`-dimensional fibers are built.
pub const MAX_FIBER_DIM: usize = 12;

/// Basis `E_S ⊗ e_c` of the fiber `Λ𝔤 ⊗ ℝ^rank` at a point, indexed `c · 2^d + S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberBasis {
    pub dim: usize,
    pub module_degrees: Vec<i32>,
}

impl FiberBasis {
    pub fn new(dim: usize, module_degrees: Vec<i32>) -> Result<Self, GradedError> {
        if dim > MAX_FIBER_DIM {
            return Err(GradedError::Shape(format!("fiber of Λ^•ℝ^{dim} is too large")));
        }
        Ok(FiberBasis { dim, module_degrees })
    }

    pub fn len(&self) -> usize {
        self.module_degrees.len() << self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, c: usize, s: u64) -> usize {
        (c << self.dim) + s as usize
    }

    pub fn degree(&self, idx: usize) -> i32 {
        let c = idx >> self.dim;
        let s = (idx & ((1 << self.dim) - 1)) as u64;
        self.module_degrees[c] - subset_size(s) as i32
    }
}

/// Adds `sign · E_S · f` (evaluated at `m`) into column `col` over target basis element `r`.
#[allow(clippy::too_many_arguments)]
fn scatter(
    mat: &mut QMatrix,
    basis: &FiberBasis,
    col: usize,
    r: usize,
    s: u64,
    f: &SuperFunction,
    sign: &Rational,
    m: &[Rational],
) -> Result<(), GradedError> {
    for (t, v) in f.eval(m)? {
        if s & t != 0 {
            continue;
        }
        let merged = if merge_sign(s, t) > 0 { v } else { -v };
        mat[(basis.index(r, s | t), col)] += merged * sign;
    }
    Ok(())
}

/// Matrix of a `C∞(Z)`-linear map on fibers at `m`: `F(E_S e_c) = (-1)^{k|S|} E_S F(e_c)`.
pub fn fiber_matrix(f: &BlockMap, m: &[Rational]) -> Result<QMatrix, GradedError> {
    let src = FiberBasis::new(f.dim(), f.source().degrees())?;
    let tgt = FiberBasis::new(f.dim(), f.target().degrees())?;
    let mut mat = QMatrix::zeros(tgt.len(), src.len());
    for c in 0..f.cols() {
        for s in 0..(1u64 << f.dim()) {
            let col = src.index(c, s);
            let sign = if f.degree() % 2 != 0 && subset_size(s) % 2 == 1 { -Rational::one() } else { Rational::one() };
            for r in 0..f.rows() {
                scatter(&mut mat, &tgt, col, r, s, f.get(r, c), &sign, m)?;
            }
        }
    }
    Ok(mat)
}

/// Full differential on the fiber at `m`, including the Koszul part on `Λ𝔤`.
pub fn fiber_differential(d: &DgModule, m: &[Rational]) -> Result<(FiberBasis, QMatrix), GradedError> {
    let alg = d.algebra();
    let basis = FiberBasis::new(alg.dim(), d.module().degrees())?;
    let mut mat = fiber_matrix(d.differential(), m)?;
    let one = Rational::one();
    for c in 0..d.module().rank() {
        for s in 0..(1u64 << alg.dim()) {
            let es = SuperFunction::monomial(alg.vars(), alg.dim(), s, crate::exactpoly::Polynomial::one(alg.vars()));
            let col = basis.index(c, s);
            for (t, v) in alg.delta(&es).eval(m)? {
                mat[(basis.index(c, t), col)] += v * &one;
            }
        }
    }
    Ok((basis, mat))
}

/// Cohomology dimensions per degree of the fiber complex at `m`.
///
/// Every degree carrying a fiber basis element appears in the result.
pub fn pointwise_cohomology(d: &DgModule, m: &[Rational]) -> Result<BTreeMap<i32, usize>, GradedError> {
    let nvars = d.algebra().vars().len();
    if m.len() != nvars {
        return Err(GradedError::Point(format!("point has {} coordinates, expected {nvars}", m.len())));
    }
    let (basis, mat) = fiber_differential(d, m)?;
    let sq = mat.mul(&mat);
    if !sq.is_zero() {
        return Err(GradedError::Internal("evaluated differential does not square to zero".into()));
    }
    let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for i in 0..basis.len() {
        by_degree.entry(basis.degree(i)).or_default().push(i);
    }
    // rank of d_k : C^k → C^{k+1}
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    for (&k, cols) in &by_degree {
        let Some(rows) = by_degree.get(&(k + 1)) else {
            ranks.insert(k, 0);
            continue;
        };
        let block: Vec<Vec<Rational>> =
            rows.iter().map(|&r| cols.iter().map(|&c| mat[(r, c)].clone()).collect()).collect();
        ranks.insert(k, bareiss_rank(&block));
    }
    Ok(by_degree
        .iter()
        .map(|(&k, cols)| {
            let out = ranks[&k];
            let inc = ranks.get(&(k - 1)).copied().unwrap_or(0);
            (k, cols.len() - out - inc)
        })
        .collect())
}

/// True when every entry of the cohomology map is zero.
pub fn is_acyclic(h: &BTreeMap<i32, usize>) -> bool {
    h.values().all(Zero::is_zero)
}
