use num_traits::{One, Zero};

use super::{anchors, CheckRecord, HamiltonianSpace, ReductionError, VerificationReport};
use crate::dgmanifold::VectorFieldOnZ;
use crate::exactpoly::{QMatrix, Rational};
use crate::gradedcore::{
    total_complex, verify_chain_map, BlockMap, DgModule, FreeGradedModule, GradedError, Placement, SuperFunction,
};

/// `ρ: 𝔤_Z → T_Z`, `E_i ↦ Σ_a V^a_i ∂_a + Σ_j η_ji ι_j` with `η_ji = Σ_k c^k_{ij} E_k`.
pub fn anchor(h: &HamiltonianSpace) -> Result<BlockMap, ReductionError> {
    let z = h.space();
    let (n, d) = (h.n(), h.d());
    let alg = z.algebra();
    let fields: Vec<_> = (0..d).map(|i| h.vector_field(i)).collect();
    let t = z.tangent_module()?;
    let g = z.lie_module();
    Ok(BlockMap::from_fn(g.module(), t.module(), 0, z.vars(), d, |r, i| {
        if r < n {
            alg.poly(fields[i][r].clone())
        } else {
            eta(h, r - n, i)
        }
    })?)
}

/// `η_ji = Σ_k c^k_{ij} E_k`.
fn eta(h: &HamiltonianSpace, j: usize, i: usize) -> SuperFunction {
    let alg = h.space().algebra();
    let mut out = alg.zero();
    for k in 0..h.d() {
        let c = h.space().lie().c(k, i, j);
        if !c.is_zero() {
            out.add_assign_scaled(&alg.generator(k), c);
        }
    }
    out
}

/// The degree 0 field by which `E_k` acts on `C∞(Z)`: `E_k♯` on `x`,
/// `E_j ↦ -Σ_l c^l_{kj} E_l` on generators.
pub fn theta_field(h: &HamiltonianSpace, k: usize) -> VectorFieldOnZ {
    let alg = h.space().algebra();
    let smooth = h.vector_field(k).into_iter().map(|p| alg.poly(p)).collect();
    let contraction = (0..h.d())
        .map(|j| {
            let mut g = alg.zero();
            for l in 0..h.d() {
                let c = h.space().lie().c(l, k, j);
                if !c.is_zero() {
                    g.add_assign_scaled(&alg.generator(l), &-c.clone());
                }
            }
            g
        })
        .collect();
    VectorFieldOnZ::new(0, smooth, contraction).expect("homogeneous by construction")
}

/// Infinitesimal action of `E_k` on the basis of a module assembled from
/// the blocks `g`, `TM`, `ι`, `dE`, `T*M`, `g*` and their shifts.
pub fn basis_action(h: &HamiltonianSpace, module: &FreeGradedModule, k: usize) -> Result<BlockMap, ReductionError> {
    let z = h.space();
    let a = &h.rep()[k];
    let lie = z.lie();
    let mut out = BlockMap::zero(module, module, 0, z.vars(), h.d());
    for block in module.blocks() {
        let base = block.name.split('[').next().unwrap_or("");
        for c in 0..block.len {
            for r in 0..block.len {
                let v: Rational = match base {
                    "g" | "dE" => -lie.c(r, k, c).clone(),
                    "ι" | "g*" => lie.c(c, k, r).clone(),
                    "TM" => -a[(r, c)].clone(),
                    "T*M" => a[(c, r)].clone(),
                    other => return Err(ReductionError::Structure(format!("no G-action on block {other}"))),
                };
                if !v.is_zero() {
                    out.set(block.start + r, block.start + c, z.algebra().constant(v))?;
                }
            }
        }
    }
    Ok(out)
}

/// `θ_k(F) + B_tgt ∘ F - F ∘ B_src`; zero iff `F` commutes with the action of `E_k`.
pub fn equivariance_residual(h: &HamiltonianSpace, k: usize, f: &BlockMap) -> Result<BlockMap, ReductionError> {
    let theta = theta_field(h, k);
    let moved = BlockMap::from_fn(f.source(), f.target(), f.degree(), f.vars(), f.dim(), |r, c| theta.apply(f.get(r, c)))?;
    let bt = basis_action(h, f.target(), k)?;
    let bs = basis_action(h, f.source(), k)?;
    Ok(moved.try_add(&bt.compose(f)?)?.try_sub(&f.compose(&bs)?)?)
}

fn first_equivariance_witness(h: &HamiltonianSpace, f: &BlockMap) -> Result<Option<String>, ReductionError> {
    for k in 0..h.d() {
        if let Some(w) = equivariance_residual(h, k, f)?.first_nonzero() {
            return Ok(Some(format!("E{}: {w}", k + 1)));
        }
    }
    Ok(None)
}

fn error_record(id: &str, anchor: &str, e: impl std::fmt::Display) -> CheckRecord {
    CheckRecord::exact(id, anchor, Some(format!("error: {e}")))
}

/// Chain condition and infinitesimal equivariance of the anchor.
pub fn check_anchor(h: &HamiltonianSpace) -> VerificationReport {
    let mut rep = VerificationReport::new(&h.name);
    let z = h.space();
    let rho = match anchor(h) {
        Ok(r) => r,
        Err(e) => {
            rep.push(error_record("anchor.chain_map", anchors::ANCHOR, &e));
            return rep;
        }
    };
    let eta_zero = (h.n()..rho.rows()).all(|r| (0..rho.cols()).all(|c| rho.get(r, c).is_zero()));
    let tangent = z.tangent_module().expect("built by anchor");
    let record = match verify_chain_map(&rho, &z.lie_module(), &tangent) {
        Ok(r) => CheckRecord::exact("anchor.chain_map", anchors::ANCHOR, r.witness.map(|w| w.to_string())),
        Err(e) => error_record("anchor.chain_map", anchors::ANCHOR, e),
    };
    rep.push(record.with_detail(if eta_zero { "η = 0" } else { "η ≠ 0" }));
    rep.push(match first_equivariance_witness(h, &rho) {
        Ok(w) => CheckRecord::exact("anchor.equivariance", anchors::ANCHOR_EQUIVARIANCE, w),
        Err(e) => error_record("anchor.equivariance", anchors::ANCHOR_EQUIVARIANCE, e),
    });
    rep
}

/// `α: T_Z[1] → 𝔤*_Z` and `α*: T*_Z[-1] → 𝔤_Z`.
pub fn alpha_maps(h: &HamiltonianSpace) -> Result<(BlockMap, BlockMap), ReductionError> {
    let z = h.space();
    let (n, d) = (h.n(), h.d());
    let alg = z.algebra();
    let t1 = z.tangent_module()?.module().shift(1);
    let c1 = z.cotangent_module()?.module().shift(-1);
    let unit = |hit: bool| if hit { alg.one() } else { alg.zero() };
    let alpha = BlockMap::from_fn(&t1, z.colie_module().module(), 0, z.vars(), d, |j, c| unit(c >= n && c - n == j))?;
    let alpha_star = BlockMap::from_fn(&c1, z.lie_module().module(), 0, z.vars(), d, |j, c| unit(c == j))?;
    Ok((alpha, alpha_star))
}

/// The anchor, its dual and the two total complexes.
#[derive(Clone, Debug)]
pub struct TotalComplexes {
    pub rho: BlockMap,
    pub rho_star: BlockMap,
    /// `𝔤_Z[1] ⊕ T_Z`, blocks `g[1]`, `TM`, `ι`.
    pub tot_t: DgModule,
    /// `T*_Z ⊕ 𝔤*_Z[-1]`, blocks `dE`, `T*M`, `g*[-1]`.
    pub tot_tstar: DgModule,
}

/// `ρ* = -ρᵗ` transported to the `dE`, `dx` basis of `T*_Z`.
fn rho_star(h: &HamiltonianSpace, rho: &BlockMap) -> Result<BlockMap, ReductionError> {
    let z = h.space();
    let (n, d) = (h.n(), h.d());
    let tr = rho.koszul_transpose();
    let minus = -Rational::one();
    let cot = z.cotangent_module()?;
    Ok(BlockMap::from_fn(cot.module(), z.colie_module().module(), 0, z.vars(), d, |i, c| {
        let col = if c < d { n + c } else { c - d };
        tr.get(i, col).scale(&minus)
    })?)
}

pub fn build_total_complexes(h: &HamiltonianSpace) -> Result<TotalComplexes, ReductionError> {
    let z = h.space();
    let rho = anchor(h)?;
    let rho_star = rho_star(h, &rho)?;
    let tot_t = total_complex(&z.lie_module(), &z.tangent_module()?, &rho, Placement::SourceShifted)?;
    let tot_tstar = total_complex(&z.cotangent_module()?, &z.colie_module(), &rho_star, Placement::TargetShifted)?;
    Ok(TotalComplexes { rho, rho_star, tot_t, tot_tstar })
}

/// Index of the `Tot(T)` basis element dual to each `Tot(T*)` basis element.
fn duality_permutation(h: &HamiltonianSpace) -> Vec<usize> {
    let (n, d) = (h.n(), h.d());
    let mut p: Vec<usize> = (0..d).map(|j| d + n + j).collect();
    p.extend((0..n).map(|a| d + a));
    p.extend(0..d);
    p
}

/// Finds signs `s` with `b_rc = s_r s_c a_{π r, π c}`, or explains why none exist.
fn signed_permutation_witness(a: &BlockMap, b: &BlockMap, perm: &[usize]) -> Option<String> {
    let m = b.rows();
    for (r, &p) in perm.iter().enumerate().take(m) {
        if b.target().degree(r) != a.target().degree(p) {
            return Some(format!("degree of {} differs from {}", b.target().name(r), a.target().name(p)));
        }
    }
    // union-find with parity
    let mut parent: Vec<usize> = (0..m).collect();
    let mut parity = vec![false; m];
    fn find(parent: &mut [usize], parity: &mut [bool], x: usize) -> (usize, bool) {
        if parent[x] == x {
            return (x, false);
        }
        let (root, p) = find(parent, parity, parent[x]);
        parent[x] = root;
        parity[x] ^= p;
        (root, parity[x])
    }
    let minus = -Rational::one();
    for r in 0..m {
        for c in 0..m {
            let (x, y) = (b.get(r, c), a.get(perm[r], perm[c]));
            let flip = if x == y {
                false
            } else if *x == y.scale(&minus) {
                true
            } else {
                return Some(format!("({} <- {}): {} vs dual entry {}", b.target().name(r), b.source().name(c), x, y));
            };
            if x.is_zero() {
                continue;
            }
            let (ra, pa) = find(&mut parent, &mut parity, r);
            let (rb, pb) = find(&mut parent, &mut parity, c);
            if ra == rb {
                if pa ^ pb != flip {
                    return Some(format!("inconsistent signs at ({} <- {})", b.target().name(r), b.source().name(c)));
                }
            } else {
                parent[ra] = rb;
                parity[ra] = pa ^ pb ^ flip;
            }
        }
    }
    None
}

/// Square-zero of both total complexes and their duality.
pub fn check_total_complexes(h: &HamiltonianSpace) -> (VerificationReport, Option<TotalComplexes>) {
    let mut rep = VerificationReport::new(&h.name);
    let z = h.space();
    let built = (|| -> Result<_, ReductionError> {
        let rho = anchor(h)?;
        let rs = rho_star(h, &rho)?;
        let t = total_complex(&z.lie_module(), &z.tangent_module()?, &rho, Placement::SourceShifted);
        let ts = total_complex(&z.cotangent_module()?, &z.colie_module(), &rs, Placement::TargetShifted);
        Ok((rho, rs, t, ts))
    })();
    let (rho, rs, t, ts) = match built {
        Ok(v) => v,
        Err(e) => {
            rep.push(error_record("tot_t.square_zero", anchors::TOT_T, &e));
            rep.push(error_record("tot_tstar.square_zero", anchors::TOT_TSTAR, &e));
            return (rep, None);
        }
    };
    let square_zero = |id: &str, anchor: &str, r: &Result<DgModule, GradedError>| match r {
        Ok(_) => CheckRecord::exact(id, anchor, None),
        Err(GradedError::NotSquareZero(w)) => CheckRecord::exact(id, anchor, Some(w.to_string())),
        Err(e) => error_record(id, anchor, e),
    };
    rep.push(square_zero("tot_t.square_zero", anchors::TOT_T, &t));
    rep.push(square_zero("tot_tstar.square_zero", anchors::TOT_TSTAR, &ts));
    match (t, ts) {
        (Ok(tot_t), Ok(tot_tstar)) => {
            let witness = signed_permutation_witness(
                tot_t.dual().differential(),
                tot_tstar.differential(),
                &duality_permutation(h),
            );
            rep.push(CheckRecord::exact("tot.duality", anchors::TOT_DUALITY, witness));
            (rep, Some(TotalComplexes { rho, rho_star: rs, tot_t, tot_tstar }))
        }
        _ => {
            rep.push(CheckRecord::skipped(
                "tot.duality",
                super::Kind::Exact,
                anchors::TOT_DUALITY,
                "a total complex failed to assemble",
            ));
            (rep, None)
        }
    }
}

/// `ω♭_red = α + (ι*_Z ω)♭ + α*` as a block map `Tot(T) → Tot(T*)`.
pub fn omega_flat(h: &HamiltonianSpace, tc: &TotalComplexes) -> Result<BlockMap, ReductionError> {
    let z = h.space();
    let (n, d) = (h.n(), h.d());
    let (alpha, alpha_star) = alpha_maps(h)?;
    let alg = z.algebra();
    Ok(BlockMap::from_fn(tc.tot_t.module(), tc.tot_tstar.module(), 0, z.vars(), d, |r, c| {
        match (r < d, r < d + n, c < d, c < d + n) {
            // dE_r ← E_c[1]
            (true, _, true, _) => alpha_star.get(c, r).clone(),
            // dx_b ← ∂_a: Σ_b ω_ab dx_b
            (false, true, false, true) => alg.constant(h.omega()[(c - d, r - d)].clone()),
            // τ_j ← ι_i
            (false, false, false, false) => alpha.get(r - d - n, c - d).clone(),
            _ => alg.zero(),
        }
    })?)
}

fn constant_matrix(b: &BlockMap) -> Option<QMatrix> {
    let mut m = QMatrix::zeros(b.rows(), b.cols());
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            for (s, p) in b.get(r, c).terms() {
                if s != 0 || !p.is_constant() {
                    return None;
                }
                m[(r, c)] = p.constant_term();
            }
        }
    }
    Some(m)
}

fn constant_map(src: &FreeGradedModule, tgt: &FreeGradedModule, m: &QMatrix, b: &BlockMap) -> Result<BlockMap, ReductionError> {
    let (vars, dim) = (b.vars().clone(), b.dim());
    Ok(BlockMap::from_fn(src, tgt, 0, &vars, dim, |r, c| SuperFunction::constant(&vars, dim, m[(r, c)].clone()))?)
}

/// Two-sided inverse of `W` by block back-substitution, for `W` block
/// lower triangular with invertible constant diagonal blocks.
pub fn omega_flat_inverse(w: &BlockMap) -> Result<BlockMap, ReductionError> {
    let src_blocks: Vec<String> = w.source().blocks().iter().map(|b| b.name.clone()).collect();
    let tgt_blocks: Vec<String> = w.target().blocks().iter().map(|b| b.name.clone()).collect();
    if src_blocks.len() != tgt_blocks.len() {
        return Err(ReductionError::Structure("block counts differ".into()));
    }
    let k = src_blocks.len();
    let blk = |i: usize, j: usize| w.sub_block(&tgt_blocks[i], &src_blocks[j]);
    for i in 0..k {
        for j in i + 1..k {
            if let Some(e) = blk(i, j)?.first_nonzero() {
                return Err(ReductionError::Structure(format!("not block lower triangular: {e}")));
            }
        }
    }
    // y[i][j]: target block j of W → source block i of W
    let mut y: Vec<Vec<Option<BlockMap>>> = vec![vec![None; k]; k];
    for i in 0..k {
        let di = blk(i, i)?;
        let inv = constant_matrix(&di)
            .and_then(|m| m.inverse())
            .ok_or_else(|| ReductionError::Structure(format!("diagonal block {} is not an invertible constant", tgt_blocks[i])))?;
        y[i][i] = Some(constant_map(di.target(), di.source(), &inv, &di)?);
    }
    let minus = -Rational::one();
    for j in 0..k {
        for i in j + 1..k {
            // Y_ij = -Y_ii Σ_{j<=l<i} W_il Y_lj
            let mut acc: Option<BlockMap> = None;
            for (l, yl) in y.iter().enumerate().take(i).skip(j) {
                let term = blk(i, l)?.compose(yl[j].as_ref().expect("filled"))?;
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.try_add(&term)?,
                });
            }
            let acc = acc.expect("nonempty range");
            y[i][j] = Some(y[i][i].as_ref().expect("filled").compose(&acc)?.scale(&minus));
        }
    }
    let mut out = BlockMap::zero(w.target(), w.source(), 0, w.vars(), w.dim());
    for (i, row) in y.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            if let Some(m) = m {
                out.set_block(&src_blocks[i], &tgt_blocks[j], m)?;
            }
        }
    }
    Ok(out)
}

/// The three off-diagonal identities, each as a residual block map.
fn identity_residuals(tc: &TotalComplexes, w: &BlockMap) -> Result<[BlockMap; 3], ReductionError> {
    let dt = tc.tot_t.differential();
    let ds = tc.tot_tstar.differential();
    let comp = |a: (&str, &str), b: (&str, &str), c: (&str, &str), e: (&str, &str)| -> Result<BlockMap, ReductionError> {
        let lhs = ds.sub_block(a.0, a.1)?.compose(&w.sub_block(b.0, b.1)?)?;
        let rhs = w.sub_block(c.0, c.1)?.compose(&dt.sub_block(e.0, e.1)?)?;
        Ok(lhs.try_sub(&rhs)?)
    };
    // dμ* α* - (ι*ω)♭ ρ₀
    let one = comp(("T*M", "dE"), ("dE", "g[1]"), ("T*M", "TM"), ("TM", "g[1]"))?;
    // ρ₀* (ι*ω)♭ - α dμ
    let two = comp(("g*[-1]", "T*M"), ("T*M", "TM"), ("g*[-1]", "ι"), ("ι", "TM"))?;
    // η* α* - α η
    let three = comp(("g*[-1]", "dE"), ("dE", "g[1]"), ("g*[-1]", "ι"), ("ι", "g[1]"))?;
    Ok([one, two, three])
}

fn shifted_dg(dg: &DgModule, n: i32) -> Result<DgModule, ReductionError> {
    let m = dg.module().shift(n);
    let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
    let a = dg.differential();
    let d = BlockMap::from_fn(&m, &m, 1, a.vars(), a.dim(), |r, c| a.get(r, c).twist(n).scale(&sign))?;
    Ok(DgModule::new(dg.algebra().clone(), d)?)
}

fn alpha_records(h: &HamiltonianSpace) -> Result<Vec<CheckRecord>, ReductionError> {
    let z = h.space();
    let n = h.n();
    let (alpha, alpha_star) = alpha_maps(h)?;
    let mut out = Vec::new();

    let mut witness = None;
    for c in 0..alpha.cols() {
        for r in 0..alpha.rows() {
            let expected = if c >= n && c - n == r { z.algebra().one() } else { z.algebra().zero() };
            if alpha.get(r, c) != &expected {
                witness = Some(format!("α({}) has {} on {}", alpha.source().name(c), alpha.get(r, c), alpha.target().name(r)));
            }
        }
    }
    for c in 0..alpha_star.cols() {
        for r in 0..alpha_star.rows() {
            let expected = if c == r { z.algebra().one() } else { z.algebra().zero() };
            if alpha_star.get(r, c) != &expected {
                witness = Some(format!("α*({}) has {} on {}", alpha_star.source().name(c), alpha_star.get(r, c), alpha_star.target().name(r)));
            }
        }
    }
    out.push(CheckRecord::exact("alpha.values", anchors::ALPHA, witness));

    // α on the subcomplex 𝔤*_Z[-1] ⊂ T_Z, where it is the identity
    let t = z.tangent_module()?;
    let iota = t.differential().sub_block("ι", "ι")?;
    let witness = if let Some(w) = iota.first_nonzero() {
        Some(format!("ι block is not a subcomplex: {w}"))
    } else {
        let sub = shifted_dg(&DgModule::with_zero_differential(z.algebra().clone(), t.module().sub_block("ι")?), 1)?;
        let a = alpha.sub_block("g*", "ι[1]")?;
        verify_chain_map(&a, &sub, &z.colie_module())?.witness.map(|w| w.to_string())
    };
    out.push(CheckRecord::exact("alpha.chain_map", anchors::ALPHA, witness));

    let cot = shifted_dg(&z.cotangent_module()?, -1)?;
    let witness = verify_chain_map(&alpha_star, &cot, &z.lie_module())?.witness.map(|w| w.to_string());
    out.push(CheckRecord::exact("alpha_star.chain_map", anchors::ALPHA, witness));
    Ok(out)
}

/// The three identities, the chain-map property of `ω♭_red`, its inverse,
/// and infinitesimal equivariance.
pub fn verify_theorem(h: &HamiltonianSpace, tc: &TotalComplexes) -> VerificationReport {
    let mut rep = VerificationReport::new(&h.name);
    match alpha_records(h) {
        Ok(rs) => rs.into_iter().for_each(|r| rep.push(r)),
        Err(e) => rep.push(error_record("alpha.values", anchors::ALPHA, e)),
    }
    let w = match omega_flat(h, tc) {
        Ok(w) => w,
        Err(e) => {
            rep.push(error_record("theorem.chain_map", anchors::OMEGA_RED, e));
            return rep;
        }
    };

    let ids = [
        ("theorem.identity_1", anchors::IDENTITY_1),
        ("theorem.identity_2", anchors::IDENTITY_2),
        ("theorem.identity_3", anchors::IDENTITY_3),
    ];
    let mut ids_ok = true;
    match identity_residuals(tc, &w) {
        Ok(res) => {
            for ((id, anchor), r) in ids.iter().zip(res.iter()) {
                let witness = r.first_nonzero().map(|w| w.to_string());
                ids_ok &= witness.is_none();
                let mut rec = CheckRecord::exact(id, anchor, witness);
                if *id == "theorem.identity_3" {
                    let eta_zero = tc.tot_t.differential().sub_block("ι", "g[1]").map(|b| b.is_zero()).unwrap_or(true);
                    rec = rec.with_detail(if eta_zero { "η = 0" } else { "η ≠ 0" });
                }
                rep.push(rec);
            }
        }
        Err(e) => {
            ids_ok = false;
            for (id, anchor) in ids {
                rep.push(error_record(id, anchor, &e));
            }
        }
    }

    let chain = verify_chain_map(&w, &tc.tot_t, &tc.tot_tstar);
    let chain_ok = matches!(&chain, Ok(r) if r.ok);
    rep.push(match chain {
        Ok(r) => CheckRecord::exact("theorem.chain_map", anchors::CHAIN_MAP, r.witness.map(|w| w.to_string())),
        Err(e) => error_record("theorem.chain_map", anchors::CHAIN_MAP, e),
    });
    rep.push(CheckRecord::exact(
        "theorem.consistency",
        anchors::CHAIN_MAP,
        (ids_ok != chain_ok).then(|| format!("identities pass = {ids_ok}, chain map passes = {chain_ok}")),
    ));

    match omega_flat_inverse(&w) {
        Ok(y) => {
            let check = |id: &str, prod: Result<BlockMap, GradedError>, module: &FreeGradedModule| match prod {
                Ok(p) => {
                    let id_map = BlockMap::identity(module, w.vars(), w.dim());
                    let witness = p.try_sub(&id_map).ok().and_then(|r| r.first_nonzero()).map(|w| w.to_string());
                    CheckRecord::exact(id, anchors::INVERSE, witness)
                }
                Err(e) => error_record(id, anchors::INVERSE, e),
            };
            rep.push(check("theorem.inverse_left", y.compose(&w), tc.tot_t.module()));
            rep.push(check("theorem.inverse_right", w.compose(&y), tc.tot_tstar.module()));
        }
        Err(e) => {
            rep.push(error_record("theorem.inverse_left", anchors::INVERSE, &e));
            rep.push(error_record("theorem.inverse_right", anchors::INVERSE, &e));
        }
    }

    let eq = |id: &str, anchor: &str, f: &BlockMap| match first_equivariance_witness(h, f) {
        Ok(w) => CheckRecord::exact(id, anchor, w),
        Err(e) => error_record(id, anchor, e),
    };
    rep.push(eq("theorem.equivariance_tot_t", anchors::TOT_EQUIVARIANCE, tc.tot_t.differential()));
    rep.push(eq("theorem.equivariance_tot_tstar", anchors::TOT_EQUIVARIANCE, tc.tot_tstar.differential()));
    rep.push(CheckRecord::exact("theorem.equivariance_delta", anchors::TOT_EQUIVARIANCE, delta_equivariance_witness(h)));
    rep.push(eq("theorem.equivariance_omega", anchors::OMEGA_RED_EQUIVARIANCE, &w));
    rep
}

/// `θ_k δ = δ θ_k` on the generators `E_j` (both sides vanish on `x_a`).
fn delta_equivariance_witness(h: &HamiltonianSpace) -> Option<String> {
    let alg = h.space().algebra();
    for k in 0..h.d() {
        let theta = theta_field(h, k);
        for j in 0..h.d() {
            let e = alg.generator(j);
            let r = &theta.apply(&alg.delta(&e)) - &alg.delta(&theta.apply(&e));
            if !r.is_zero() {
                return Some(format!("E{} on E{}: residual {r}", k + 1, j + 1));
            }
        }
    }
    None
}
