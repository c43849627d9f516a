use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::{GradedError, KoszulAlgebra, SuperFunction};
use crate::exactpoly::{Rational, Vars};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
}

/// Named contiguous range of basis elements, e.g. the `𝔤*` block of a total complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

/// Free graded module over `C∞(Z)` with a fixed ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGradedModule {
    basis: Vec<BasisElement>,
    blocks: Vec<Block>,
}

impl FreeGradedModule {
    /// Single-block module; basis names must be unique.
    pub fn new(block: &str, basis: Vec<(String, i32)>) -> Result<Self, GradedError> {
        let len = basis.len();
        Self::from_parts(
            basis.into_iter().map(|(name, degree)| BasisElement { name, degree }).collect(),
            vec![Block { name: block.to_string(), start: 0, len }],
        )
    }

    fn from_parts(basis: Vec<BasisElement>, blocks: Vec<Block>) -> Result<Self, GradedError> {
        let mut seen = HashSet::new();
        for b in &basis {
            if !seen.insert(b.name.as_str()) {
                return Err(GradedError::Shape(format!("duplicate basis name {}", b.name)));
            }
        }
        Ok(FreeGradedModule { basis, blocks })
    }

    pub fn empty(block: &str) -> Self {
        FreeGradedModule { basis: vec![], blocks: vec![Block { name: block.into(), start: 0, len: 0 }] }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.basis.iter().map(|b| b.degree).collect()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    /// Name of the block containing basis index `i`.
    pub fn block_of(&self, i: usize) -> &str {
        self.blocks
            .iter()
            .find(|b| (b.start..b.start + b.len).contains(&i))
            .map_or("", |b| b.name.as_str())
    }

    /// `M[n]`: a degree `k` element of `M` sits in degree `k - n`. Names gain the suffix `[n]`.
    pub fn shift(&self, n: i32) -> FreeGradedModule {
        FreeGradedModule {
            basis: self
                .basis
                .iter()
                .map(|b| BasisElement { name: format!("{}[{n}]", b.name), degree: b.degree - n })
                .collect(),
            blocks: self.blocks.iter().map(|b| Block { name: format!("{}[{n}]", b.name), ..b.clone() }).collect(),
        }
    }

    pub fn direct_sum(&self, other: &FreeGradedModule) -> Result<FreeGradedModule, GradedError> {
        let offset = self.rank();
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| Block { start: b.start + offset, ..b.clone() }));
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        Self::from_parts(basis, blocks)
    }

    /// Dual basis `e^c` of degree `-|e_c|`, named `name^`.
    pub fn dual(&self) -> FreeGradedModule {
        FreeGradedModule {
            basis: self
                .basis
                .iter()
                .map(|b| BasisElement { name: format!("{}^", b.name), degree: -b.degree })
                .collect(),
            blocks: self.blocks.iter().map(|b| Block { name: format!("{}^", b.name), ..b.clone() }).collect(),
        }
    }

    /// Same degrees, new names and a single block.
    pub fn renamed(&self, block: &str, names: &[String]) -> Result<FreeGradedModule, GradedError> {
        if names.len() != self.rank() {
            return Err(GradedError::Shape(format!("{} names for rank {}", names.len(), self.rank())));
        }
        Self::new(block, names.iter().cloned().zip(self.degrees()).collect())
    }

    /// Submodule spanned by one block.
    pub fn sub_block(&self, name: &str) -> Result<FreeGradedModule, GradedError> {
        let b = self.block(name).ok_or_else(|| GradedError::Shape(format!("no block named {name}")))?;
        Ok(FreeGradedModule {
            basis: self.basis[b.start..b.start + b.len].to_vec(),
            blocks: vec![Block { name: b.name.clone(), start: 0, len: b.len }],
        })
    }
}

/// First nonzero entry of a map that was expected to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryWitness {
    pub row: usize,
    pub col: usize,
    pub row_name: String,
    pub col_name: String,
    pub row_block: String,
    pub col_block: String,
    pub residual: SuperFunction,
}

impl fmt::Display for EntryWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry ({} <- {}) in block ({}, {}): {}",
            self.row_name, self.col_name, self.row_block, self.col_block, self.residual
        )
    }
}

/// Homogeneous `C∞(Z)`-linear map between free graded modules.
///
/// Column `c` holds the image of source basis element `c`:
/// `F(e_c) = Σ_r F_rc e_r`, with `|F_rc| = |e_c| + deg F - |e_r|`.
/// On a general element `F(a e) = (-1)^{deg F · |a|} a F(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    source: FreeGradedModule,
    target: FreeGradedModule,
    degree: i32,
    vars: Vars,
    dim: usize,
    entries: Vec<SuperFunction>,
}

impl BlockMap {
    pub fn zero(source: &FreeGradedModule, target: &FreeGradedModule, degree: i32, vars: &Vars, dim: usize) -> Self {
        BlockMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            vars: vars.clone(),
            dim,
            entries: vec![SuperFunction::zero(vars, dim); source.rank() * target.rank()],
        }
    }

    pub fn identity(module: &FreeGradedModule, vars: &Vars, dim: usize) -> Self {
        let mut m = Self::zero(module, module, 0, vars, dim);
        for i in 0..module.rank() {
            m.entries[i * module.rank() + i] = SuperFunction::one(vars, dim);
        }
        m
    }

    /// Builds a map from `entry(row, col)`, checking every entry's degree.
    pub fn from_fn(
        source: &FreeGradedModule,
        target: &FreeGradedModule,
        degree: i32,
        vars: &Vars,
        dim: usize,
        mut entry: impl FnMut(usize, usize) -> SuperFunction,
    ) -> Result<Self, GradedError> {
        let mut m = Self::zero(source, target, degree, vars, dim);
        for c in 0..source.rank() {
            for r in 0..target.rank() {
                m.set(r, c, entry(r, c))?;
            }
        }
        Ok(m)
    }

    pub fn source(&self) -> &FreeGradedModule {
        &self.source
    }

    pub fn target(&self) -> &FreeGradedModule {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    /// Required degree of entry `(r, c)`.
    pub fn entry_degree(&self, r: usize, c: usize) -> i32 {
        self.source.degree(c) + self.degree - self.target.degree(r)
    }

    pub fn get(&self, r: usize, c: usize) -> &SuperFunction {
        &self.entries[c * self.rows() + r]
    }

    pub fn set(&mut self, r: usize, c: usize, f: SuperFunction) -> Result<(), GradedError> {
        if f.dim() != self.dim || f.vars()[..] != self.vars[..] {
            return Err(GradedError::ContextMismatch {
                left: format!("{:?} / dim {}", self.vars, self.dim),
                right: format!("{:?} / dim {}", f.vars(), f.dim()),
            });
        }
        let expected = self.entry_degree(r, c);
        if !f.is_homogeneous_of(expected) {
            return Err(GradedError::DegreeMismatch {
                row: self.target.name(r).to_string(),
                col: self.source.name(c).to_string(),
                expected,
                entry: f.to_string(),
            });
        }
        let rows = self.rows();
        self.entries[c * rows + r] = f;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SuperFunction::is_zero)
    }

    pub fn first_nonzero(&self) -> Option<EntryWitness> {
        for c in 0..self.cols() {
            for r in 0..self.rows() {
                let e = self.get(r, c);
                if !e.is_zero() {
                    return Some(EntryWitness {
                        row: r,
                        col: c,
                        row_name: self.target.name(r).to_string(),
                        col_name: self.source.name(c).to_string(),
                        row_block: self.target.block_of(r).to_string(),
                        col_block: self.source.block_of(c).to_string(),
                        residual: e.clone(),
                    });
                }
            }
        }
        None
    }

    fn same_shape(&self, other: &BlockMap) -> Result<(), GradedError> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(GradedError::Shape(format!(
                "maps differ in shape: {}x{} deg {} vs {}x{} deg {}",
                self.rows(),
                self.cols(),
                self.degree,
                other.rows(),
                other.cols(),
                other.degree
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &BlockMap) -> Result<BlockMap, GradedError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            a.add_assign_scaled(b, &Rational::one());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &BlockMap) -> Result<BlockMap, GradedError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            a.add_assign_scaled(b, &-Rational::one());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> BlockMap {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.scale(c);
        }
        out
    }

    /// `self ∘ first`, with `(G∘F)_{sc} = Σ_r (-1)^{deg G · |F_rc|} F_rc G_sr`.
    pub fn compose(&self, first: &BlockMap) -> Result<BlockMap, GradedError> {
        if first.target != self.source {
            return Err(GradedError::Shape(format!(
                "cannot compose: target of inner map {:?} differs from source of outer map {:?}",
                first.target.degrees(),
                self.source.degrees()
            )));
        }
        if first.dim != self.dim || first.vars[..] != self.vars[..] {
            return Err(GradedError::ContextMismatch {
                left: format!("{:?} / dim {}", self.vars, self.dim),
                right: format!("{:?} / dim {}", first.vars, first.dim),
            });
        }
        let mut out = BlockMap::zero(&first.source, &self.target, self.degree + first.degree, &self.vars, self.dim);
        let out_rows = out.rows();
        for c in 0..first.cols() {
            for r in 0..first.rows() {
                let f = first.get(r, c);
                if f.is_zero() {
                    continue;
                }
                let ft = f.twist(self.degree);
                for s in 0..self.rows() {
                    let g = self.get(s, r);
                    if !g.is_zero() {
                        out.entries[c * out_rows + s].add_product(&ft, g);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise application of the Koszul differential (raises the degree by one).
    pub fn delta_entries(&self, algebra: &KoszulAlgebra) -> BlockMap {
        let mut out = self.clone();
        out.degree += 1;
        for e in out.entries.iter_mut() {
            *e = algebra.delta(e);
        }
        out
    }

    /// `F(Σ a_c e_c)` for a coefficient vector over the source basis.
    pub fn apply(&self, coeffs: &[SuperFunction]) -> Result<Vec<SuperFunction>, GradedError> {
        if coeffs.len() != self.cols() {
            return Err(GradedError::Shape(format!("{} coefficients for rank {}", coeffs.len(), self.cols())));
        }
        let mut out = vec![SuperFunction::zero(&self.vars, self.dim); self.rows()];
        for (c, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let at = a.twist(self.degree);
            for (r, o) in out.iter_mut().enumerate() {
                o.add_product(&at, self.get(r, c));
            }
        }
        Ok(out)
    }

    /// `Fᵗ: N^∨ → M^∨` with `Fᵗ(e^r) = Σ_c (-1)^{|F_rc| |e^r|} F_rc e^c`.
    pub fn koszul_transpose(&self) -> BlockMap {
        let src = self.target.dual();
        let tgt = self.source.dual();
        let mut out = BlockMap::zero(&src, &tgt, self.degree, &self.vars, self.dim);
        let out_rows = out.rows();
        for c in 0..self.cols() {
            for r in 0..self.rows() {
                out.entries[r * out_rows + c] = self.get(r, c).twist(self.target.degree(r));
            }
        }
        out
    }

    /// The same entries viewed between relabelled modules of identical degrees.
    pub fn relabel(&self, source: &FreeGradedModule, target: &FreeGradedModule) -> Result<BlockMap, GradedError> {
        if source.degrees() != self.source.degrees() || target.degrees() != self.target.degrees() {
            return Err(GradedError::Shape("relabelling must preserve degrees".into()));
        }
        Ok(BlockMap { source: source.clone(), target: target.clone(), ..self.clone() })
    }

    /// Restriction to one source block and one target block.
    pub fn sub_block(&self, row_block: &str, col_block: &str) -> Result<BlockMap, GradedError> {
        let rb = self.target.block(row_block).ok_or_else(|| GradedError::Shape(format!("no block {row_block}")))?.clone();
        let cb = self.source.block(col_block).ok_or_else(|| GradedError::Shape(format!("no block {col_block}")))?.clone();
        let mut out = BlockMap::zero(
            &self.source.sub_block(col_block)?,
            &self.target.sub_block(row_block)?,
            self.degree,
            &self.vars,
            self.dim,
        );
        for c in 0..cb.len {
            for r in 0..rb.len {
                out.entries[c * rb.len + r] = self.get(rb.start + r, cb.start + c).clone();
            }
        }
        Ok(out)
    }

    /// Writes `sub` into the given block position (shapes must agree).
    pub fn set_block(&mut self, row_block: &str, col_block: &str, sub: &BlockMap) -> Result<(), GradedError> {
        let rb = self.target.block(row_block).ok_or_else(|| GradedError::Shape(format!("no block {row_block}")))?.clone();
        let cb = self.source.block(col_block).ok_or_else(|| GradedError::Shape(format!("no block {col_block}")))?.clone();
        if sub.rows() != rb.len || sub.cols() != cb.len || sub.degree != self.degree {
            return Err(GradedError::Shape(format!("block ({row_block}, {col_block}) has the wrong shape")));
        }
        for c in 0..cb.len {
            for r in 0..rb.len {
                self.set(rb.start + r, cb.start + c, sub.get(r, c).clone())?;
            }
        }
        Ok(())
    }
}

/// Free graded module with a differential `D(f e) = δf·e + (-1)^{|f|} f·De`.
///
/// Only the images `De_c = Σ_r a_rc e_r` are stored; the `δ` part is the
/// Koszul differential acting on coefficients.
#[derive(Clone, Debug)]
pub struct DgModule {
    algebra: Arc<KoszulAlgebra>,
    differential: BlockMap,
}

impl DgModule {
    /// Checks shape, degree 1 and `D² = 0` exactly.
    pub fn new(algebra: Arc<KoszulAlgebra>, differential: BlockMap) -> Result<Self, GradedError> {
        if differential.source != differential.target || differential.degree != 1 {
            return Err(GradedError::Shape("differential must be a degree 1 endomorphism".into()));
        }
        if differential.dim != algebra.dim() || differential.vars[..] != algebra.vars()[..] {
            return Err(GradedError::ContextMismatch {
                left: format!("{:?} / dim {}", algebra.vars(), algebra.dim()),
                right: format!("{:?} / dim {}", differential.vars, differential.dim),
            });
        }
        let dg = DgModule { algebra, differential };
        if let Some(w) = dg.square()?.first_nonzero() {
            return Err(GradedError::NotSquareZero(Box::new(w)));
        }
        Ok(dg)
    }

    /// Module with `De_c = 0` for every basis element.
    pub fn with_zero_differential(algebra: Arc<KoszulAlgebra>, module: FreeGradedModule) -> Self {
        let differential = BlockMap::zero(&module, &module, 1, algebra.vars(), algebra.dim());
        DgModule { algebra, differential }
    }

    pub fn algebra(&self) -> &Arc<KoszulAlgebra> {
        &self.algebra
    }

    pub fn module(&self) -> &FreeGradedModule {
        &self.differential.source
    }

    pub fn differential(&self) -> &BlockMap {
        &self.differential
    }

    /// Basis images of `D²`: `δ(a_tc) + Σ_r (-1)^{|a_rc|} a_rc a_tr`.
    pub fn square(&self) -> Result<BlockMap, GradedError> {
        self.differential.delta_entries(&self.algebra).try_add(&self.differential.compose(&self.differential)?)
    }

    /// `D(Σ a_c e_c)` including the action on coefficients.
    pub fn apply(&self, coeffs: &[SuperFunction]) -> Result<Vec<SuperFunction>, GradedError> {
        let mut out = self.differential.apply(coeffs)?;
        for (o, a) in out.iter_mut().zip(coeffs) {
            o.add_assign_scaled(&self.algebra.try_delta(a)?, &Rational::one());
        }
        Ok(out)
    }

    /// Hom-dual with `D^∨φ = δ∘φ - (-1)^{|φ|} φ∘D`; on the dual basis
    /// `D^∨ e^c = -Σ_r (-1)^{|e_c| + |a_cr||e_c|} a_cr e^r`.
    pub fn dual(&self) -> DgModule {
        let m = self.module();
        let dm = m.dual();
        let mut d = BlockMap::zero(&dm, &dm, 1, self.algebra.vars(), self.algebra.dim());
        let rows = d.rows();
        for c in 0..m.rank() {
            let sign = if m.degree(c) % 2 == 0 { -Rational::one() } else { Rational::one() };
            for r in 0..m.rank() {
                d.entries[c * rows + r] = self.differential.get(c, r).twist(m.degree(c)).scale(&sign);
            }
        }
        DgModule { algebra: self.algebra.clone(), differential: d }
    }

    /// Same differential on a relabelled module of identical degrees.
    pub fn relabel(&self, module: &FreeGradedModule) -> Result<DgModule, GradedError> {
        Ok(DgModule { algebra: self.algebra.clone(), differential: self.differential.relabel(module, module)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapReport {
    pub ok: bool,
    pub witness: Option<EntryWitness>,
}

/// Residual `D_tgt ∘ F - (-1)^{deg F} F ∘ D_src` on basis elements.
pub fn chain_map_residual(f: &BlockMap, src: &DgModule, tgt: &DgModule) -> Result<BlockMap, GradedError> {
    if f.source() != src.module() || f.target() != tgt.module() {
        return Err(GradedError::Shape("map does not go between the given modules".into()));
    }
    let lhs = f.delta_entries(&tgt.algebra).try_add(&tgt.differential.compose(f)?)?;
    let rhs = f.compose(&src.differential)?;
    if f.degree() % 2 == 0 {
        lhs.try_sub(&rhs)
    } else {
        lhs.try_add(&rhs)
    }
}

pub fn verify_chain_map(f: &BlockMap, src: &DgModule, tgt: &DgModule) -> Result<ChainMapReport, GradedError> {
    let witness = chain_map_residual(f, src, tgt)?.first_nonzero();
    Ok(ChainMapReport { ok: witness.is_none(), witness })
}

pub const SHIFT_CONVENTION: &str =
    "cone(f) = M[1] ⊕ N with D(s e) = -s(D_M e) + f e; shifting by k sends E_S ↦ (-1)^(k|S|) E_S";

/// Where the source of the outer map lands in a two-term total complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// `A[1] ⊕ B`: the cone convention.
    SourceShifted,
    /// `A ⊕ B[-1]`: the cocone convention.
    TargetShifted,
}

/// Total complex of `A → B` via `g`.
///
/// `SourceShifted` uses
/// `D(s e_c) = -Σ_r (-1)^{|a_rc|} a_rc s(e_r) + Σ_r g_rc n_r` and `D n = D_B n`;
/// `TargetShifted` uses
/// `D e_c = D_A e_c + Σ_r (-1)^{|g_rc|} g_rc s'(n_r)` and
/// `D s'(n_c) = -Σ_r (-1)^{|b_rc|} b_rc s'(n_r)`.
/// Only `D² = 0` is checked.
pub fn total_complex(a: &DgModule, b: &DgModule, g: &BlockMap, placement: Placement) -> Result<DgModule, GradedError> {
    if g.source() != a.module() || g.target() != b.module() || g.degree() != 0 {
        return Err(GradedError::Shape("outer map must be degree 0 from A to B".into()));
    }
    let alg = a.algebra.clone();
    let (vars, dim) = (alg.vars().clone(), alg.dim());
    let na = a.module().rank();
    let minus = -Rational::one();
    let (module, entries): (FreeGradedModule, Vec<(usize, usize, SuperFunction)>) = match placement {
        Placement::SourceShifted => {
            let module = a.module().shift(1).direct_sum(b.module())?;
            let mut e = Vec::new();
            for c in 0..na {
                for r in 0..na {
                    e.push((r, c, a.differential.get(r, c).twist(1).scale(&minus)));
                }
                for r in 0..b.module().rank() {
                    e.push((na + r, c, g.get(r, c).clone()));
                }
            }
            for c in 0..b.module().rank() {
                for r in 0..b.module().rank() {
                    e.push((na + r, na + c, b.differential.get(r, c).clone()));
                }
            }
            (module, e)
        }
        Placement::TargetShifted => {
            let module = a.module().direct_sum(&b.module().shift(-1))?;
            let mut e = Vec::new();
            for c in 0..na {
                for r in 0..na {
                    e.push((r, c, a.differential.get(r, c).clone()));
                }
                for r in 0..b.module().rank() {
                    e.push((na + r, c, g.get(r, c).twist(1)));
                }
            }
            for c in 0..b.module().rank() {
                for r in 0..b.module().rank() {
                    e.push((na + r, na + c, b.differential.get(r, c).twist(1).scale(&minus)));
                }
            }
            (module, e)
        }
    };
    let mut d = BlockMap::zero(&module, &module, 1, &vars, dim);
    for (r, c, f) in entries {
        d.set(r, c, f)?;
    }
    DgModule::new(alg, d)
}

fn require_chain_map(f: &BlockMap, src: &DgModule, tgt: &DgModule) -> Result<(), GradedError> {
    if f.degree() != 0 {
        return Err(GradedError::Shape("cone and cocone need a degree 0 map".into()));
    }
    match verify_chain_map(f, src, tgt)?.witness {
        Some(w) => Err(GradedError::NotChainMap(Box::new(w))),
        None => Ok(()),
    }
}

/// `cone(f) = M[1] ⊕ N` for a chain map `f: M → N`.
pub fn cone(f: &BlockMap, m: &DgModule, n: &DgModule) -> Result<DgModule, GradedError> {
    require_chain_map(f, m, n)?;
    total_complex(m, n, f, Placement::SourceShifted)
}

/// `cocone(f) = M ⊕ N[-1]` for a chain map `f: M → N`.
pub fn cocone(f: &BlockMap, m: &DgModule, n: &DgModule) -> Result<DgModule, GradedError> {
    require_chain_map(f, m, n)?;
    total_complex(m, n, f, Placement::TargetShifted)
}
