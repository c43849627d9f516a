//! Finite-dimensional Lie algebras given by structure constants.
//!
//! The bracket is `[E_i, E_j] = Σ_k c^k_{ij} E_k`. The coadjoint operator
//! uses `ad*_X = -(ad_X)ᵀ` in the dual basis, i.e.
//! `⟨ad*_X σ, Y⟩ = -⟨σ, [X, Y]⟩`.

mod numeric;

pub use numeric::{
    expm, CounterRng, NumericGroupElement, NumericLie, EXP_RESIDUAL_TOL, ORTHO_TOL,
};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactpoly::{QMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupTag {
    Orthogonal,
    UnitaryRealForm,
    Abelian,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LieError {
    #[error("vector has length {got}, Lie algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("structure constant index ({k}, {i}, {j}) out of range for dimension {dim}")]
    IndexOutOfRange { k: usize, i: usize, j: usize, dim: usize },
    #[error("representation matrix {index} is {rows}x{cols}, expected {n}x{n}")]
    BadRepMatrix { index: usize, rows: usize, cols: usize, n: usize },
    #[error("expected {expected} representation matrices, got {got}")]
    RepCount { expected: usize, got: usize },
    #[error("no matrix representation supplied")]
    MissingRep,
    #[error("no group tag supplied")]
    MissingGroupTag,
    #[error("representation matrices are linearly dependent; adjoint action is not recoverable")]
    UnfaithfulRep,
    #[error("matrix exponential residual {residual:e} exceeds {tolerance:e}")]
    ExpResidual { residual: f64, tolerance: f64 },
    #[error("orthogonality residual {residual:e} exceeds {tolerance:e}")]
    NotOrthogonal { residual: f64, tolerance: f64 },
}

/// Structure constants plus an optional matrix representation on ℝⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraData {
    dim: usize,
    /// `c[(k * dim + i) * dim + j] = c^k_{ij}`
    constants: Vec<Rational>,
    rep: Option<Vec<QMatrix>>,
    group_tag: Option<GroupTag>,
}

/// One failed identity instance: 1-based indices and the nonzero residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomWitness {
    pub identity: &'static str,
    pub indices: Vec<usize>,
    pub residual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAxiomReport {
    pub antisymmetry_ok: bool,
    pub jacobi_ok: bool,
    /// `None` when no representation is attached.
    pub rep_ok: Option<bool>,
    pub witnesses: Vec<AxiomWitness>,
}

impl LieAxiomReport {
    pub fn all_ok(&self) -> bool {
        self.antisymmetry_ok && self.jacobi_ok && self.rep_ok.unwrap_or(true)
    }
}

impl LieAlgebraData {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebraData {
            dim,
            constants: vec![Rational::zero(); dim * dim * dim],
            rep: None,
            group_tag: None,
        }
    }

    /// Builds from a sparse list of `(k, i, j, c^k_{ij})` with 0-based indices.
    /// Entries are taken literally; antisymmetric partners are not filled in.
    pub fn from_sparse(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self, LieError> {
        let mut l = Self::abelian(dim);
        for (k, i, j, c) in entries {
            if k >= dim || i >= dim || j >= dim {
                return Err(LieError::IndexOutOfRange { k, i, j, dim });
            }
            l.constants[(k * dim + i) * dim + j] = c;
        }
        Ok(l)
    }

    /// `so(3)` with `c^k_{ij} = ε_{ijk}`.
    pub fn so3() -> Self {
        let mut entries = Vec::new();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            entries.push((k, i, j, Rational::from_integer(1.into())));
            entries.push((k, j, i, Rational::from_integer((-1).into())));
        }
        Self::from_sparse(3, entries).expect("indices in range")
    }

    pub fn with_rep(mut self, rep: Vec<QMatrix>) -> Result<Self, LieError> {
        if rep.len() != self.dim {
            return Err(LieError::RepCount { expected: self.dim, got: rep.len() });
        }
        let n = rep.first().map_or(0, QMatrix::rows);
        for (index, a) in rep.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(LieError::BadRepMatrix { index, rows: a.rows(), cols: a.cols(), n });
            }
        }
        self.rep = Some(rep);
        Ok(self)
    }

    pub fn with_group_tag(mut self, tag: GroupTag) -> Self {
        self.group_tag = Some(tag);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rep(&self) -> Option<&[QMatrix]> {
        self.rep.as_deref()
    }

    pub fn group_tag(&self) -> Option<GroupTag> {
        self.group_tag
    }

    /// `c^k_{ij}`, 0-based.
    pub fn c(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.constants[(k * self.dim + i) * self.dim + j]
    }

    pub fn set_c(&mut self, k: usize, i: usize, j: usize, value: Rational) {
        let d = self.dim;
        self.constants[(k * d + i) * d + j] = value;
    }

    pub fn rep_mut(&mut self) -> Option<&mut Vec<QMatrix>> {
        self.rep.as_mut()
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// Nonzero constants as 0-based `(k, i, j, value)`.
    pub fn sparse_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let d = self.dim;
        let mut out = Vec::new();
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let c = self.c(k, i, j);
                    if !c.is_zero() {
                        out.push((k, i, j, c.clone()));
                    }
                }
            }
        }
        out
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(LieError::DimensionMismatch { expected: self.dim, got: v.len() })
        }
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let d = self.dim;
        let mut out = vec![Rational::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(k, i, j);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(ad_X)^k_j = Σ_i X^i c^k_{ij}` as a matrix with row `k`, column `j`.
    pub fn ad_operator(&self, x: &[Rational]) -> Result<QMatrix, LieError> {
        self.check_len(x)?;
        let d = self.dim;
        let mut m = QMatrix::zeros(d, d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for k in 0..d {
                for j in 0..d {
                    let c = self.c(k, i, j);
                    if !c.is_zero() {
                        m[(k, j)] += xi * c;
                    }
                }
            }
        }
        Ok(m)
    }

    /// `ad*_X = -(ad_X)ᵀ`; column `l` holds the components of `ad*_X σ_l`.
    pub fn coad_operator(&self, x: &[Rational]) -> Result<QMatrix, LieError> {
        let ad = self.ad_operator(x)?;
        Ok(ad.transpose().scale(&-Rational::from_integer(1.into())))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::from_integer(1.into());
        v
    }

    /// Representation matrix of a Lie algebra vector, `Σ X^i A_i`.
    pub fn rep_of(&self, x: &[Rational]) -> Result<QMatrix, LieError> {
        self.check_len(x)?;
        let rep = self.rep.as_ref().ok_or(LieError::MissingRep)?;
        let n = rep.first().map_or(0, QMatrix::rows);
        Ok(rep
            .iter()
            .zip(x)
            .fold(QMatrix::zeros(n, n), |acc, (a, xi)| acc.add(&a.scale(xi))))
    }

    /// Checks antisymmetry, Jacobi, and (if present) the representation
    /// bracket relation exactly. Witnesses use 1-based indices.
    pub fn check_lie_axioms(&self) -> LieAxiomReport {
        let d = self.dim;
        let mut witnesses = Vec::new();

        let mut antisymmetry_ok = true;
        'anti: for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let r = self.c(k, i, j) + self.c(k, j, i);
                    if !r.is_zero() {
                        antisymmetry_ok = false;
                        witnesses.push(AxiomWitness {
                            identity: "antisymmetry",
                            indices: vec![k + 1, i + 1, j + 1],
                            residual: r,
                        });
                        break 'anti;
                    }
                }
            }
        }

        let mut jacobi_ok = true;
        'jac: for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let mut r = Rational::zero();
                        for m in 0..d {
                            r += self.c(m, i, j) * self.c(l, m, k)
                                + self.c(m, j, k) * self.c(l, m, i)
                                + self.c(m, k, i) * self.c(l, m, j);
                        }
                        if !r.is_zero() {
                            jacobi_ok = false;
                            witnesses.push(AxiomWitness {
                                identity: "jacobi",
                                indices: vec![i + 1, j + 1, k + 1, l + 1],
                                residual: r,
                            });
                            break 'jac;
                        }
                    }
                }
            }
        }

        let rep_ok = self.rep.as_ref().map(|rep| {
            for i in 0..d {
                for j in 0..d {
                    let comm = rep[i].mul(&rep[j]).add(&rep[j].mul(&rep[i]).scale(&-Rational::from_integer(1.into())));
                    let expected = self
                        .rep_of(&self.bracket(&self.basis_vector(i), &self.basis_vector(j)).expect("dims"))
                        .expect("rep present");
                    let diff = comm.add(&expected.scale(&-Rational::from_integer(1.into())));
                    if !diff.is_zero() {
                        let n = diff.rows();
                        let (a, b) = (0..n)
                            .flat_map(|a| (0..n).map(move |b| (a, b)))
                            .find(|&(a, b)| !diff[(a, b)].is_zero())
                            .expect("nonzero entry");
                        witnesses.push(AxiomWitness {
                            identity: "representation bracket",
                            indices: vec![i + 1, j + 1, a + 1, b + 1],
                            residual: diff[(a, b)].clone(),
                        });
                        return false;
                    }
                }
            }
            true
        });

        LieAxiomReport { antisymmetry_ok, jacobi_ok, rep_ok, witnesses }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::q;

    #[test]
    fn abelian_axioms_hold() {
        let r = LieAlgebraData::abelian(3).check_lie_axioms();
        assert!(r.antisymmetry_ok && r.jacobi_ok && r.rep_ok.is_none());
        let ad = LieAlgebraData::abelian(2).ad_operator(&[q(1, 1), q(-2, 3)]).unwrap();
        assert!(ad.is_zero());
        assert!(LieAlgebraData::abelian(2).coad_operator(&[q(1, 1), q(0, 1)]).unwrap().is_zero());
    }

    /// Brute-force Levi-Civita symbol, independent of `so3()`'s table.
    fn epsilon(i: usize, j: usize, k: usize) -> i64 {
        let p = [i, j, k];
        if p[0] == p[1] || p[1] == p[2] || p[0] == p[2] {
            return 0;
        }
        let inversions = (0..3).flat_map(|a| (a + 1..3).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn so3_matches_levi_civita_and_passes_axioms() {
        let l = LieAlgebraData::so3();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(*l.c(k, i, j), q(epsilon(i, j, k), 1));
                }
            }
        }
        let r = l.check_lie_axioms();
        assert!(r.all_ok(), "{r:?}");
    }

    #[test]
    fn symmetric_constants_are_caught_with_witness() {
        let l = LieAlgebraData::from_sparse(2, [(0, 0, 1, q(1, 1)), (0, 1, 0, q(1, 1))]).unwrap();
        let r = l.check_lie_axioms();
        assert!(!r.antisymmetry_ok);
        assert_eq!(r.witnesses[0].indices, vec![1, 1, 2]);
        assert_eq!(r.witnesses[0].residual, q(2, 1));
    }

    #[test]
    fn jacobi_violation_is_caught() {
        // antisymmetric but [[E1,E2],E3] + cyclic != 0
        let l = LieAlgebraData::from_sparse(
            3,
            [(2, 0, 1, q(1, 1)), (2, 1, 0, q(-1, 1)), (0, 2, 2, q(0, 1)), (0, 0, 2, q(1, 1)), (0, 2, 0, q(-1, 1))],
        )
        .unwrap();
        let r = l.check_lie_axioms();
        assert!(r.antisymmetry_ok);
        assert!(!r.jacobi_ok);
        assert_eq!(r.witnesses[0].identity, "jacobi");
    }

    #[test]
    fn so3_ad_of_first_basis_vector() {
        let l = LieAlgebraData::so3();
        let ad = l.ad_operator(&l.basis_vector(0)).unwrap();
        // E2 -> E3, E3 -> -E2
        assert_eq!(ad[(2, 1)], q(1, 1));
        assert_eq!(ad[(1, 2)], q(-1, 1));
        assert_eq!(ad[(0, 1)], q(0, 1));
        assert_eq!(ad.rank(), 2);
    }

    #[test]
    fn coadjoint_pairing_identity() {
        let l = LieAlgebraData::so3();
        let x = [q(1, 2), q(-3, 1), q(2, 5)];
        let y = [q(7, 1), q(0, 1), q(-1, 3)];
        let sigma = [q(1, 1), q(4, 3), q(-2, 1)];
        let coad = l.coad_operator(&x).unwrap();
        let ad = l.ad_operator(&x).unwrap();
        let coad_sigma: Vec<Rational> = (0..3).map(|r| (0..3).map(|c| &coad[(r, c)] * &sigma[c]).sum()).collect();
        let ad_y: Vec<Rational> = (0..3).map(|r| (0..3).map(|c| &ad[(r, c)] * &y[c]).sum()).collect();
        let lhs: Rational = coad_sigma.iter().zip(&y).map(|(a, b)| a * b).sum::<Rational>()
            + sigma.iter().zip(&ad_y).map(|(a, b)| a * b).sum::<Rational>();
        assert!(lhs.is_zero());
    }

    #[test]
    fn dimension_errors() {
        let l = LieAlgebraData::so3();
        assert!(matches!(l.ad_operator(&[q(1, 1)]), Err(LieError::DimensionMismatch { expected: 3, got: 1 })));
        assert!(LieAlgebraData::from_sparse(2, [(2, 0, 0, q(1, 1))]).is_err());
        assert!(matches!(l.rep_of(&[q(1, 1), q(0, 1), q(0, 1)]), Err(LieError::MissingRep)));
    }
}
