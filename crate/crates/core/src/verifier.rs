//! Exact identity testing on evaluation grids.
//!
//! Both sides of every identity are polynomial in `(u, v)` with known degree
//! bounds `(D_u, D_v)`. Agreement on the grid `{0..=D_u} × {0..=D_v}` therefore
//! proves the identity. Grid points are checked in parallel; the reported
//! violation is the first one in grid order.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::{BetaSolution, CliffordRep};
use crate::error::{Error, Result};
use crate::matrix::{ConstMatrix, SparsePolyMatrix};
use crate::rmatrix::fundamental_r;
use crate::scalar::{rat, rational_to_string, GaussianRational as GR, Rational};

/// Largest chain length accepted by the monodromy checks.
pub const MAX_SITES: usize = 3;

static GRID_SCALE: AtomicUsize = AtomicUsize::new(1);

/// Multiplies the number of points per grid axis (the minimal grid is scale 1).
pub fn set_grid_scale(k: usize) {
    GRID_SCALE.store(k.max(1), Ordering::Relaxed);
}

pub fn grid_scale() -> usize {
    GRID_SCALE.load(Ordering::Relaxed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridPoint {
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub u: Rational,
    #[serde(serialize_with = "ser_opt_rational")]
    pub v: Option<Rational>,
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational_to_string(r)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub point: GridPoint,
    pub row: usize,
    pub col: usize,
    #[serde(serialize_with = "ser_gaussian")]
    pub lhs: GR,
    #[serde(serialize_with = "ser_gaussian")]
    pub rhs: GR,
}

fn ser_gaussian<S: serde::Serializer>(a: &GR, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::json::gaussian(a).serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub parameters: BTreeMap<String, String>,
    pub degree_u: usize,
    pub degree_v: Option<usize>,
    pub grid: Vec<GridPoint>,
    pub pass: bool,
    pub first_violation: Option<Violation>,
}

impl IdentityReport {
    pub fn summary(&self) -> String {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let verdict = if self.pass { "pass" } else { "FAIL" };
        format!("{} [{}] {} points: {verdict}", self.identity, params.join(", "), self.grid.len())
    }
}

/// Parameters as `(key, value)` pairs.
pub type Params<'a> = &'a [(&'a str, String)];

fn first_difference(lhs: &ConstMatrix, rhs: &ConstMatrix) -> Option<(usize, usize, GR, GR)> {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Some((usize::MAX, usize::MAX, GR::zero(), GR::zero()));
    }
    let diff = lhs.sub(rhs);
    let first = diff.iter().next().map(|(i, j, _)| (i, j));
    first.map(|(i, j)| (i, j, lhs.get(i, j), rhs.get(i, j)))
}

/// Evaluates `f` on the grid `{0..=deg_u} × {0..=deg_v}` (enlarged by the grid scale)
/// and compares both sides exactly.
pub fn check_on_grid<F>(identity: &str, params: Params, deg_u: usize, deg_v: Option<usize>, f: F) -> Result<IdentityReport>
where
    F: Fn(&GR, Option<&GR>) -> Result<(ConstMatrix, ConstMatrix)> + Sync,
{
    let scale = grid_scale();
    let top = |deg: usize| (deg + 1) * scale - 1;
    let mut grid = Vec::new();
    for i in 0..=top(deg_u) {
        match deg_v {
            None => grid.push(GridPoint { u: rat(i as i64, 1), v: None }),
            Some(dv) => {
                for j in 0..=top(dv) {
                    grid.push(GridPoint { u: rat(i as i64, 1), v: Some(rat(j as i64, 1)) });
                }
            }
        }
    }
    let outcomes: Vec<Result<Option<Violation>>> = grid
        .par_iter()
        .map(|p| {
            let u = GR::from_rational(&p.u);
            let v = p.v.as_ref().map(GR::from_rational);
            let (lhs, rhs) = f(&u, v.as_ref())?;
            if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
                return Err(Error::DimensionMismatch(format!("{identity}: sides have different shapes")));
            }
            Ok(first_difference(&lhs, &rhs).map(|(row, col, lhs, rhs)| Violation { point: p.clone(), row, col, lhs, rhs }))
        })
        .collect();
    let mut first_violation = None;
    for o in outcomes {
        if let Some(v) = o? {
            first_violation = Some(v);
            break;
        }
    }
    Ok(IdentityReport {
        identity: identity.to_string(),
        parameters: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        degree_u: deg_u,
        degree_v: deg_v,
        grid,
        pass: first_violation.is_none(),
        first_violation,
    })
}

fn at(m: &SparsePolyMatrix, x: &GR) -> ConstMatrix {
    m.eval(x, None).expect("univariate matrix")
}

fn square_dim(m: &SparsePolyMatrix, n: usize) -> Result<()> {
    if m.rows() != n * n || m.cols() != n * n {
        return Err(Error::DimensionMismatch(format!("expected a {0}x{0} matrix, got {1}x{2}", n * n, m.rows(), m.cols())));
    }
    Ok(())
}

/// `R₁₂(u−v)R₁₃(u)R₂₃(v) = R₂₃(v)R₁₃(u)R₁₂(u−v)` on `Cⁿ⊗Cⁿ⊗Cⁿ`.
pub fn check_rrr(r: &SparsePolyMatrix, n: usize, label: &str) -> Result<IdentityReport> {
    square_dim(r, n)?;
    let deg = r.degree_u().unwrap_or(0);
    let dims = [n, n, n];
    let params = [("R", label.to_string()), ("n", n.to_string())];
    check_on_grid("yang_baxter", &params, 3 * deg, Some(2 * deg), |u, v| {
        let v = v.unwrap();
        let r12 = at(r, &(u - v)).embed(&dims, &[0, 1]);
        let r13 = at(r, u).embed(&dims, &[0, 2]);
        let r23 = at(r, v).embed(&dims, &[1, 2]);
        Ok((r12.mul(&r13).mul(&r23), r23.mul(&r13).mul(&r12)))
    })
}

/// Which legs carry the auxiliary space in an RLL relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RllLayout {
    /// `R₁₂(u)·L_a(u+v)·L_b(v) = L_b(v)·L_a(u+v)·R₁₂(u)` on `V⊗V⊗S`, vector R.
    VectorAux,
    /// `R(u)·L₁(u+v)·L₂(v) = L₂(v)·L₁(u+v)·R(u)` on `V⊗S⊗S`, spinor R.
    SpinorAux,
    /// `Ř(u)·L₁(u+v)·L₂(v) = L₁(v)·L₂(u+v)·Ř(u)` on `V⊗S⊗S`.
    SpinorAuxCheck,
}

impl RllLayout {
    pub fn as_str(self) -> &'static str {
        match self {
            RllLayout::VectorAux => "vector_aux",
            RllLayout::SpinorAux => "spinor_aux",
            RllLayout::SpinorAuxCheck => "spinor_aux_check",
        }
    }
}

/// RLL relation with the spinor L-operator of `rep`.
pub fn check_rll(rep: &CliffordRep, r: &SparsePolyMatrix, layout: RllLayout, label: &str) -> Result<IdentityReport> {
    let (d, n) = (rep.d(), rep.spinor_dim());
    let l = rep.l_operator();
    let deg = r.degree_u().unwrap_or(0) + 1;
    let params = [("R", label.to_string()), ("d", d.to_string()), ("layout", layout.as_str().to_string())];
    match layout {
        RllLayout::VectorAux => {
            square_dim(r, d)?;
            let dims = [d, d, n];
            check_on_grid("rll", &params, deg, Some(2), |u, v| {
                let v = v.unwrap();
                let rr = at(r, u).embed(&dims, &[0, 1]);
                let la = at(&l, &(u + v)).embed(&dims, &[0, 2]);
                let lb = at(&l, v).embed(&dims, &[1, 2]);
                Ok((rr.mul(&la).mul(&lb), lb.mul(&la).mul(&rr)))
            })
        }
        RllLayout::SpinorAux | RllLayout::SpinorAuxCheck => {
            square_dim(r, n)?;
            let dims = [d, n, n];
            check_on_grid("rll", &params, deg, Some(2), |u, v| {
                let v = v.unwrap();
                let rr = at(r, u).embed(&dims, &[1, 2]);
                let uv = u + v;
                let l1 = |x: &GR| at(&l, x).embed(&dims, &[0, 1]);
                let l2 = |x: &GR| at(&l, x).embed(&dims, &[0, 2]);
                let lhs = rr.mul(&l1(&uv)).mul(&l2(v));
                let rhs = if layout == RllLayout::SpinorAux {
                    l2(v).mul(&l1(&uv)).mul(&rr)
                } else {
                    l1(v).mul(&l2(&uv)).mul(&rr)
                };
                Ok((lhs, rhs))
            })
        }
    }
}

fn half() -> GR {
    GR::frac(1, 2)
}

/// `L(u+β+½)·L(−u−½) = −u(u+β+1)·I`.
pub fn check_inversion(rep: &CliffordRep, beta: &Rational) -> Result<IdentityReport> {
    let l = rep.l_operator();
    let b = GR::from_rational(beta);
    let dim = l.rows();
    let params = [("d", rep.d().to_string()), ("beta", rational_to_string(beta))];
    check_on_grid("inversion", &params, 2, None, |u, _| {
        let lhs = at(&l, &(u + &b + half())).mul(&at(&l, &(-u - half())));
        let c = -(u * &(u + &b + GR::one()));
        Ok((lhs, ConstMatrix::scalar(dim, c)))
    })
}

/// Solves for the β that makes `L(u+β+½)·L(−u−½)` diagonal.
///
/// The product is affine in β, so its off-diagonal part is `A(u) + β·B(u)`;
/// both are sampled at three values of `u`.
pub fn solve_inversion_beta(rep: &CliffordRep) -> BetaSolution {
    let l = rep.l_operator();
    let prod = |u: &GR, beta: &GR| at(&l, &(u + beta + half())).mul(&at(&l, &(-u - half())));
    let off = |m: &ConstMatrix| -> Vec<(usize, usize, GR)> { m.iter().filter(|(i, j, _)| i != j).map(|(i, j, v)| (i, j, v.clone())).collect() };
    let mut pairs = Vec::new();
    for k in 0..3 {
        let u = GR::from_int(k);
        let a = prod(&u, &GR::zero());
        let b = prod(&u, &GR::one()).sub(&a);
        let keys: std::collections::BTreeSet<(usize, usize)> = off(&a).iter().chain(off(&b).iter()).map(|(i, j, _)| (*i, *j)).collect();
        for (i, j) in keys {
            pairs.push((a.get(i, j), b.get(i, j)));
        }
    }
    solve_affine(&pairs)
}

/// Common root β of the equations `a + β·b = 0`.
pub fn solve_affine(pairs: &[(GR, GR)]) -> BetaSolution {
    let mut beta: Option<GR> = None;
    for (a, b) in pairs {
        if b.is_zero() {
            if !a.is_zero() {
                return BetaSolution::NoSolution;
            }
            continue;
        }
        let cand = -(a / b);
        match &beta {
            None => beta = Some(cand),
            Some(x) if *x != cand => return BetaSolution::NoSolution,
            _ => {}
        }
    }
    match beta {
        None => BetaSolution::Unconstrained,
        Some(b) if b.is_real() => BetaSolution::Unique(b.re()),
        Some(_) => BetaSolution::NoSolution,
    }
}

/// Spinor blocks `L^{ab}` of an evaluated L-operator.
pub fn l_blocks(l: &ConstMatrix, d: usize, n: usize) -> Vec<Vec<ConstMatrix>> {
    let idx = |a: usize| (a * n..(a + 1) * n).collect::<Vec<_>>();
    (0..d).map(|a| (0..d).map(|b| l.submatrix(&idx(a), &idx(b))).collect()).collect()
}

/// Places square blocks along the diagonal.
pub fn block_diag(blocks: &[ConstMatrix]) -> ConstMatrix {
    let total: usize = blocks.iter().map(ConstMatrix::rows).sum();
    let mut trips = Vec::new();
    let mut off = 0;
    for b in blocks {
        trips.extend(b.iter().map(|(i, j, v)| (off + i, off + j, v.clone())));
        off += b.rows();
    }
    ConstMatrix::from_triplets(total, total, trips)
}

/// `Σ_c L^{a₁c}(u+β−½)·γ^{b₀}·L^{cb₁}(−½−u) = −Σ_{a₀} R^{a₀a₁}_{b₀b₁}(u)·γ^{a₀}`
/// for all `a₁, b₀, b₁`, with `R` the fundamental `so(d)` R-matrix.
pub fn check_llr_fusion(rep: &CliffordRep, beta: &Rational) -> Result<IdentityReport> {
    let (d, n) = (rep.d(), rep.spinor_dim());
    let l = rep.l_operator();
    let r = fundamental_r(1, d)?.matrix;
    let b = GR::from_rational(beta);
    let params = [("d", d.to_string()), ("beta", rational_to_string(beta))];
    check_on_grid("llr_fusion", &params, 2, None, |u, _| {
        let left = l_blocks(&at(&l, &(u + &b - half())), d, n);
        let right = l_blocks(&at(&l, &(-half() - u)), d, n);
        let rv = at(&r, u);
        let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
        for a1 in 0..d {
            for b0 in 0..d {
                for b1 in 0..d {
                    let mut acc = ConstMatrix::zeros(n, n);
                    for c in 0..d {
                        acc = acc.add(&left[a1][c].mul(rep.gamma(b0)).mul(&right[c][b1]));
                    }
                    lhs.push(acc);
                    let mut s = ConstMatrix::zeros(n, n);
                    for a0 in 0..d {
                        let coeff = rv.get(a0 * d + a1, b0 * d + b1);
                        if !coeff.is_zero() {
                            s = s.sub(&rep.gamma(a0).scale(&coeff));
                        }
                    }
                    rhs.push(s);
                }
            }
        }
        Ok((block_diag(&lhs), block_diag(&rhs)))
    })
}

/// Spinor-auxiliary monodromy on `S₀ ⊗ V₁ ⊗ … ⊗ V_N`.
pub struct SpinorChain<'a> {
    rep: &'a CliffordRep,
    l: SparsePolyMatrix,
    pub sites: usize,
}

impl<'a> SpinorChain<'a> {
    pub fn new(rep: &'a CliffordRep, sites: usize) -> Result<Self> {
        if sites == 0 || sites > MAX_SITES {
            return Err(Error::ResourceGuard(format!("chain length {sites} outside 1..={MAX_SITES}")));
        }
        Ok(Self { rep, l: rep.l_operator(), sites })
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![self.rep.spinor_dim()];
        dims.extend(std::iter::repeat(self.rep.d()).take(self.sites));
        dims
    }

    /// Dimension of the quantum space `V^{⊗N}`.
    pub fn quantum_dim(&self) -> usize {
        self.rep.d().pow(self.sites as u32)
    }

    fn site(&self, x: &GR, k: usize) -> ConstMatrix {
        at(&self.l, x).embed(&self.dims(), &[k, 0])
    }

    /// `T(x) = L₀₁(x)⋯L₀N(x)`.
    pub fn monodromy(&self, x: &GR) -> ConstMatrix {
        (2..=self.sites).fold(self.site(x, 1), |acc, k| acc.mul(&self.site(x, k)))
    }

    /// `T̃(x) = L₀N(x)⋯L₀₁(x)`.
    pub fn reversed(&self, x: &GR) -> ConstMatrix {
        (1..self.sites).rev().fold(self.site(x, self.sites), |acc, k| acc.mul(&self.site(x, k)))
    }

    /// Auxiliary block `T_{αβ}` acting on the quantum space.
    pub fn block(&self, t: &ConstMatrix, alpha: usize, beta: usize) -> ConstMatrix {
        let q = self.quantum_dim();
        let rows: Vec<usize> = (alpha * q..(alpha + 1) * q).collect();
        let cols: Vec<usize> = (beta * q..(beta + 1) * q).collect();
        t.submatrix(&rows, &cols)
    }
}

/// Vector-auxiliary monodromy `𝕋(u) = R₀₁(u)⋯R₀N(u)` on `V₀ ⊗ V^{⊗N}`.
pub fn vector_monodromy_at(r: &SparsePolyMatrix, d: usize, sites: usize, u: &GR) -> ConstMatrix {
    let dims = vec![d; sites + 1];
    let rv = at(r, u);
    (2..=sites).fold(rv.embed(&dims, &[0, 1]), |acc, k| acc.mul(&rv.embed(&dims, &[0, k])))
}

fn sign_n(sites: usize) -> GR {
    GR::from_int(if sites % 2 == 0 { 1 } else { -1 })
}

/// `T(u+β−½)·(γ^{b₀}⊗I)·T̃(−u−½) = (−1)^N Σ_{a₀} γ^{a₀} ⊗ 𝕋^{a₀}_{b₀}(u)` for every `b₀`.
pub fn check_monodromy_fusion(rep: &CliffordRep, sites: usize, beta: &Rational) -> Result<IdentityReport> {
    let chain = SpinorChain::new(rep, sites)?;
    let (d, q) = (rep.d(), chain.quantum_dim());
    let r = fundamental_r(1, d)?.matrix;
    let b = GR::from_rational(beta);
    let id_q = ConstMatrix::identity(q);
    let params = [("d", d.to_string()), ("N", sites.to_string()), ("beta", rational_to_string(beta))];
    check_on_grid("monodromy_fusion", &params, 2 * sites, None, |u, _| {
        let t = chain.monodromy(&(u + &b - half()));
        let tt = chain.reversed(&(-u - half()));
        let big = vector_monodromy_at(&r, d, sites, u);
        let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
        for b0 in 0..d {
            lhs.push(t.mul(&rep.gamma(b0).kron(&id_q)).mul(&tt));
            let mut s = ConstMatrix::zeros(t.rows(), t.cols());
            for a0 in 0..d {
                let rows: Vec<usize> = (a0 * q..(a0 + 1) * q).collect();
                let cols: Vec<usize> = (b0 * q..(b0 + 1) * q).collect();
                s = s.add(&rep.gamma(a0).kron(&big.submatrix(&rows, &cols)));
            }
            rhs.push(s.scale(&sign_n(sites)));
        }
        Ok((block_diag(&lhs), block_diag(&rhs)))
    })
}

/// Indices with chirality `−1` and `+1` (even `d`).
pub fn chirality_blocks(rep: &CliffordRep) -> Result<(Vec<usize>, Vec<usize>)> {
    let c = rep.chirality()?;
    let n = rep.spinor_dim();
    let (mut neg, mut pos) = (Vec::new(), Vec::new());
    for i in 0..n {
        if c.get(i, i) == GR::one() {
            pos.push(i);
        } else if c.get(i, i) == -GR::one() {
            neg.push(i);
        } else {
            return Err(Error::DimensionMismatch("chirality element is not diagonal".into()));
        }
    }
    Ok((neg, pos))
}

/// Trace identity for `d = 4`:
/// `tr 𝕋(u) = (−1)^N·½[(T₁₁+T₄₄)(T̃₂₂+T̃₃₃) + (T₂₂+T₃₃)(T̃₁₁+T̃₄₄)]`,
/// with `T = T(u + ½)` and the inverse `T̄ = T⁻¹(u + c)` realized as `T̃(1 − u − c)`
/// (inversion with β = 1); the chirality blocks are `{1,4}` and `{2,3}`.
/// The identity holds for `c = 3/2`.
pub fn check_trace_fusion(rep: &CliffordRep, sites: usize, inverse_offset: &Rational) -> Result<IdentityReport> {
    if rep.d() != 4 {
        return Err(Error::DimensionMismatch("the two-block trace identity is specific to d = 4".into()));
    }
    let chain = SpinorChain::new(rep, sites)?;
    let (d, q) = (rep.d(), chain.quantum_dim());
    let (first, second) = chirality_blocks(rep)?;
    let r = fundamental_r(1, d)?.matrix;
    let c = GR::from_rational(inverse_offset);
    let params = [("d", d.to_string()), ("N", sites.to_string()), ("inverse_offset", rational_to_string(inverse_offset))];
    check_on_grid("trace_fusion", &params, 2 * sites, None, |u, _| {
        let t = chain.monodromy(&(u + half()));
        let tt = chain.reversed(&(GR::one() - u - &c));
        let sum = |m: &ConstMatrix, idx: &[usize]| idx.iter().fold(ConstMatrix::zeros(q, q), |acc, &a| acc.add(&chain.block(m, a, a)));
        let lhs = sum(&t, &first).mul(&sum(&tt, &second)).add(&sum(&t, &second).mul(&sum(&tt, &first)));
        let lhs = lhs.scale(&(sign_n(sites) * half()));
        let big = vector_monodromy_at(&r, d, sites, u);
        let tr = (0..d).fold(ConstMatrix::zeros(q, q), |acc, a| {
            let idx: Vec<usize> = (a * q..(a + 1) * q).collect();
            acc.add(&big.submatrix(&idx, &idx))
        });
        Ok((lhs, tr))
    })
}

/// `tr 𝕋(u) = ((−1)^N/n)·Σ_a tr₀(γᵃ·T(u+β−½)·γᵃ·T̃(−u−½))`.
pub fn check_gamma_trace_fusion(rep: &CliffordRep, sites: usize, beta: &Rational) -> Result<IdentityReport> {
    let chain = SpinorChain::new(rep, sites)?;
    let (d, n, q) = (rep.d(), rep.spinor_dim(), chain.quantum_dim());
    let r = fundamental_r(1, d)?.matrix;
    let b = GR::from_rational(beta);
    let id_q = ConstMatrix::identity(q);
    let params = [("d", d.to_string()), ("N", sites.to_string()), ("beta", rational_to_string(beta))];
    check_on_grid("gamma_trace_fusion", &params, 2 * sites, None, |u, _| {
        let t = chain.monodromy(&(u + &b - half()));
        let tt = chain.reversed(&(-u - half()));
        let mut acc = ConstMatrix::zeros(t.rows(), t.cols());
        for g in rep.gammas() {
            let gg = g.kron(&id_q);
            acc = acc.add(&gg.mul(&t).mul(&gg).mul(&tt));
        }
        let lhs = acc.partial_trace(n, q, 1)?.scale(&(sign_n(sites) * GR::frac(1, n as i64)));
        let big = vector_monodromy_at(&r, d, sites, u);
        Ok((lhs, big.partial_trace(d, q, 1)?))
    })
}

/// `(1 + s·γ⁵₁γ⁵₂)·Σ_b γ₁^{ab}γ₂^{bc} = Σ_b γ₂^{ab}γ₁^{bc}·(1 + s·γ⁵₁γ⁵₂)` for all `a, c`.
pub fn chiral_gamma_identity(rep: &CliffordRep, sign: i64) -> Result<bool> {
    let n = rep.spinor_dim();
    let id = ConstMatrix::identity(n);
    let c = rep.chirality()?;
    let proj = ConstMatrix::identity(n * n).add(&c.kron(c).scale(&GR::from_int(sign)));
    let g2 = |a: usize, b: usize| rep.antisym_product(&[a, b]).matrix;
    for a in 0..rep.d() {
        for cc in 0..rep.d() {
            let (mut l, mut r) = (ConstMatrix::zeros(n * n, n * n), ConstMatrix::zeros(n * n, n * n));
            for b in 0..rep.d() {
                l = l.add(&g2(a, b).kron(&id).mul(&id.kron(&g2(b, cc))));
                r = r.add(&id.kron(&g2(a, b)).mul(&g2(b, cc).kron(&id)));
            }
            if proj.mul(&l) != r.mul(&proj) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_gammas;
    use crate::invariants::SpinorPairSpace;
    use crate::rmatrix::{combined_checked, spinor_parts};

    #[test]
    fn rrr_fundamental_so4() {
        let r = fundamental_r(1, 4).unwrap();
        let rep = check_rrr(&r.matrix, 4, "so4").unwrap();
        assert!(rep.pass);
        assert_eq!(rep.grid.len(), 7 * 5);
    }

    #[test]
    fn rrr_detects_broken_matrix() {
        let r = fundamental_r(1, 4).unwrap().matrix;
        let broken = r.add(&ConstMatrix::identity(16).to_poly());
        let rep = check_rrr(&broken, 4, "broken").unwrap();
        assert!(!rep.pass);
        assert!(rep.first_violation.is_some());
    }

    #[test]
    fn rll_layouts_d4() {
        let g = build_gammas(4).unwrap();
        let parts = spinor_parts(&SpinorPairSpace::new(&g)).unwrap();
        let rhat = combined_checked(&parts);
        let r = crate::invariants::swap_operator(4).to_poly().mul(&rhat);
        assert!(check_rll(&g, &fundamental_r(1, 4).unwrap().matrix, RllLayout::VectorAux, "so4").unwrap().pass);
        assert!(check_rll(&g, &rhat, RllLayout::SpinorAuxCheck, "spinor").unwrap().pass);
        assert!(check_rll(&g, &r, RllLayout::SpinorAux, "spinor").unwrap().pass);
    }

    #[test]
    fn inversion_d4() {
        let g = build_gammas(4).unwrap();
        assert!(check_inversion(&g, &rat(1, 1)).unwrap().pass);
        let bad = check_inversion(&g, &rat(0, 1)).unwrap();
        assert!(!bad.pass && bad.first_violation.is_some());
        assert_eq!(solve_inversion_beta(&g), BetaSolution::Unique(rat(1, 1)));
    }

    #[test]
    fn fusion_small() {
        let g = build_gammas(4).unwrap();
        assert!(check_llr_fusion(&g, &rat(1, 1)).unwrap().pass);
        assert!(check_monodromy_fusion(&g, 1, &rat(1, 1)).unwrap().pass);
        assert!(check_trace_fusion(&g, 1, &rat(3, 2)).unwrap().pass);
        assert!(!check_trace_fusion(&g, 1, &rat(1, 1)).unwrap().pass);
        assert!(check_gamma_trace_fusion(&g, 1, &rat(1, 1)).unwrap().pass);
        assert!(matches!(SpinorChain::new(&g, 4), Err(Error::ResourceGuard(_))));
    }

    #[test]
    fn chiral_identity_holds_for_odd_sector() {
        // γ⁵⊗γ⁵ = (−1)^z, so the odd-z projector is ½(1 − γ⁵⊗γ⁵)
        let g = build_gammas(4).unwrap();
        assert!(chiral_gamma_identity(&g, -1).unwrap());
        assert!(!chiral_gamma_identity(&g, 1).unwrap());
    }
}
