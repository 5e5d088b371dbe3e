//! Basis freedom between R-matrices: intertwiners, Kronecker factorization,
//! block decomposition under similarity, signed-monomial table matching and the
//! support argument for zero patterns of the RTT algebra.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::swap_operator;
use crate::json;
use crate::matrix::{ConstMatrix, SparsePolyMatrix};
use crate::poly::{Poly, SpectralPoly};
use crate::scalar::{rational_to_string, GaussianRational as GR, Rational};

/// `u ↦ αu + γ₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reparam {
    pub alpha: Rational,
    pub gamma0: Rational,
}

impl Reparam {
    pub fn identity() -> Self {
        Self::scale(Rational::from_integer(1.into()))
    }

    pub fn scale(alpha: Rational) -> Self {
        Self { alpha, gamma0: Rational::zero() }
    }

    pub fn apply(&self, m: &SparsePolyMatrix) -> SparsePolyMatrix {
        m.compose_affine(&GR::from_rational(&self.alpha), &GR::from_rational(&self.gamma0))
    }

    pub fn to_json(&self) -> Value {
        json!({ "alpha": rational_to_string(&self.alpha), "gamma0": rational_to_string(&self.gamma0) })
    }
}

fn trace_poly(m: &SparsePolyMatrix) -> Poly {
    m.trace().as_u().cloned().unwrap_or_default()
}

/// Solutions `G` of `R_B(αu+γ₀)·G = λ(u)·G·R_A(u)` with `λ = tr R_B(αu+γ₀) / tr R_A(u)`.
#[derive(Clone, Debug)]
pub struct IntertwinerSpace {
    pub reparam: Reparam,
    /// `λ` as numerator and denominator; `(1, 1)` when `tr R_A` vanishes identically.
    pub lambda: (Poly, Poly),
    pub samples: Vec<Rational>,
    pub basis: Vec<ConstMatrix>,
}

impl IntertwinerSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exact polynomial check of the defining relation for one candidate.
    pub fn holds(&self, r_a: &SparsePolyMatrix, r_b: &SparsePolyMatrix, g: &ConstMatrix) -> bool {
        intertwines(r_a, &self.reparam.apply(r_b), &self.lambda, g)
    }
}

fn intertwines(r_a: &SparsePolyMatrix, r_b_re: &SparsePolyMatrix, lambda: &(Poly, Poly), g: &ConstMatrix) -> bool {
    let gp = g.to_poly();
    let lhs = r_b_re.mul(&gp).map(|p| p.mul(&lambda.1.clone().into()));
    let rhs = gp.mul(r_a).map(|p| p.mul(&lambda.0.clone().into()));
    lhs == rhs
}

/// Sample points avoiding zeros of `tr R_A`, enough for the cleared identity.
pub fn default_samples(r_a: &SparsePolyMatrix, r_b: &SparsePolyMatrix) -> Vec<Rational> {
    let da = r_a.degree_u().unwrap_or(0);
    let db = r_b.degree_u().unwrap_or(0);
    let need = 2 * da.max(db) + 2;
    let tr = trace_poly(r_a);
    (1..).map(|k: i64| Rational::from_integer(k.into())).filter(|u| tr.is_zero() || !tr.eval(&GR::from_rational(u)).is_zero()).take(need).collect()
}

pub fn intertwiner_space(r_a: &SparsePolyMatrix, r_b: &SparsePolyMatrix, reparam: &Reparam, samples: &[Rational]) -> Result<IntertwinerSpace> {
    let n = r_a.rows();
    if r_b.rows() != n || !r_a.is_square() || !r_b.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} against {}x{}", r_a.rows(), r_a.cols(), r_b.rows(), r_b.cols())));
    }
    let rb = reparam.apply(r_b);
    let (ta, tb) = (trace_poly(r_a), trace_poly(&rb));
    let lambda = if ta.is_zero() {
        (Poly::one(), Poly::one())
    } else {
        let g = tb.gcd(&ta);
        (tb.div_exact(&g).unwrap_or(tb.clone()), ta.div_exact(&g).unwrap_or(ta.clone()))
    };
    let mut rows: Vec<(usize, usize, GR)> = Vec::new();
    let mut row = 0;
    for s in samples {
        let u = GR::from_rational(s);
        let (a, b) = (r_a.eval(&u, None)?, rb.eval(&u, None)?);
        let (num, den) = (lambda.0.eval(&u), lambda.1.eval(&u));
        // den·(B G)_{ij} − num·(G A)_{ij} = 0, unknown g_{kl} at k·n + l
        for i in 0..n {
            for j in 0..n {
                for (k, bik) in b.row(i) {
                    rows.push((row, k * n + j, &den * bik));
                }
                for k in 0..n {
                    let akj = a.get(k, j);
                    if !akj.is_zero() {
                        rows.push((row, i * n + k, -(&num * &akj)));
                    }
                }
                row += 1;
            }
        }
    }
    let system = ConstMatrix::from_triplets(row, n * n, rows);
    let basis = system
        .nullspace()
        .into_iter()
        .map(|v| ConstMatrix::from_triplets(n, n, v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k / n, k % n, x))))
        .collect();
    Ok(IntertwinerSpace { reparam: reparam.clone(), lambda, samples: samples.to_vec(), basis })
}

/// Exact square root of a Gaussian rational, when it exists.
pub fn gaussian_sqrt(c: &GR) -> Option<GR> {
    fn rat_sqrt(r: &Rational) -> Option<Rational> {
        if r.is_negative() {
            return None;
        }
        let (p, q) = (r.numer().sqrt(), r.denom().sqrt());
        (&p * &p == *r.numer() && &q * &q == *r.denom()).then(|| Rational::new(p, q))
    }
    let (x, y) = (c.re(), c.im());
    if y.is_zero() {
        return match rat_sqrt(&x) {
            Some(s) => Some(GR::from_rational(&s)),
            None => rat_sqrt(&-x).map(|s| GR::new(Rational::zero(), s)),
        };
    }
    let modulus = rat_sqrt(&(&x * &x + &y * &y))?;
    let two = Rational::from_integer(BigInt::from(2));
    let p = rat_sqrt(&((&x + &modulus) / &two))?;
    let q = &y / (&two * &p);
    Some(GR::new(p, q))
}

#[derive(Clone, Debug, PartialEq)]
pub enum KronFactor {
    /// `G = g⊗g`.
    Square(ConstMatrix),
    /// `G = g⊗h` with `h` not a multiple of `g` that splits symmetrically.
    Pair(ConstMatrix, ConstMatrix),
}

/// Factors `G` on `V⊗V` (`dim V = n`) via the rank-one test on its reshuffle.
pub fn kron_factorize(g_full: &ConstMatrix, n: usize) -> Option<KronFactor> {
    if g_full.rows() != n * n || g_full.cols() != n * n || g_full.is_zero() {
        return None;
    }
    // M[(i1 j1), (i2 j2)] = G[(i1 i2), (j1 j2)]
    let m = ConstMatrix::from_triplets(n * n, n * n, g_full.iter().map(|(r, c, x)| ((r / n) * n + c / n, (r % n) * n + c % n, x.clone())));
    let (pr, pc, pivot) = m.iter().next().map(|(i, j, x)| (i, j, x.clone()))?;
    let col: Vec<GR> = (0..n * n).map(|i| m.get(i, pc)).collect();
    let row: Vec<GR> = (0..n * n).map(|j| m.get(pr, j)).collect();
    let inv = pivot.inv()?;
    for i in 0..n * n {
        for j in 0..n * n {
            if m.get(i, j) != &col[i] * &row[j] * &inv {
                return None;
            }
        }
    }
    let g = ConstMatrix::from_triplets(n, n, (0..n * n).map(|k| (k / n, k % n, col[k].clone())));
    let h = ConstMatrix::from_triplets(n, n, (0..n * n).map(|k| (k / n, k % n, &row[k] * &inv)));
    // G = g⊗h; if h = c·g then G = (√c·g)⊗(√c·g)
    if let Some(c) = crate::rmatrix::const_proportionality(&h, &g) {
        if let Some(s) = gaussian_sqrt(&c) {
            let mut sym = g.scale(&s);
            // fix the sign so that the first nonzero entry has a positive leading part
            if sym.iter().next().map(|(_, _, x)| x.leading_sign().is_lt()).unwrap_or(false) {
                sym = sym.neg();
            }
            return Some(KronFactor::Square(sym));
        }
    }
    Some(KronFactor::Pair(g, h))
}

/// Shape of a single block.
#[derive(Clone, Debug, PartialEq)]
pub enum BlockForm {
    /// `a·I`.
    Scalar { a: Poly },
    /// `a·I + b·P` on `W⊗W`: the sl(n) fundamental form.
    Direct { a: Poly, b: Poly },
    /// `a·I + b·K` with `K` constant of rank one: the sl(n) fundamental–conjugate form.
    Crossed { a: Poly, b: Poly, k: ConstMatrix },
    Other,
}

impl BlockForm {
    pub fn name(&self) -> &'static str {
        match self {
            BlockForm::Scalar { .. } => "scalar",
            BlockForm::Direct { .. } => "sl fundamental",
            BlockForm::Crossed { .. } => "sl fundamental-conjugate",
            BlockForm::Other => "other",
        }
    }

    /// `(α, γ)` with `a/b = αu + γ`, so the block is `b(u)` times the standard
    /// form at `αu + γ`.
    pub fn affine_ratio(&self) -> Option<(GR, GR)> {
        let (a, b) = match self {
            BlockForm::Direct { a, b } | BlockForm::Crossed { a, b, .. } => (a, b),
            _ => return None,
        };
        let q = a.div_exact(b)?;
        (q.degree() == Some(1)).then(|| (q.coeff(1), q.coeff(0)))
    }
}

fn poly_of(p: &SpectralPoly) -> Poly {
    p.as_u().cloned().unwrap_or_default()
}

/// Classifies a block on `W₁⊗W₂` (`dims` = `(dim W₁, dim W₂)`).
pub fn classify_block(m: &SparsePolyMatrix, dims: (usize, usize)) -> BlockForm {
    let size = m.rows();
    let diag: Vec<Poly> = (0..size).map(|i| poly_of(&m.get(i, i))).collect();
    if m.iter().all(|(i, j, _)| i == j) && diag.iter().all(|x| *x == diag[0]) {
        return BlockForm::Scalar { a: diag[0].clone() };
    }
    let (p, q) = dims;
    if p == q && p >= 2 {
        let b = poly_of(&m.get(1, p));
        let a = poly_of(&m.get(1, 1));
        let sw = swap_operator(p);
        let cand = ConstMatrix::identity(size).times_poly(&a).add(&sw.times_poly(&b));
        if !b.is_zero() && cand == *m {
            return BlockForm::Direct { a, b };
        }
    }
    let mut seen: Vec<Poly> = Vec::new();
    for a in diag.iter() {
        if seen.contains(a) {
            continue;
        }
        seen.push(a.clone());
        let rest = m.sub(&ConstMatrix::identity(size).times_poly(a));
        let Some(pivot) = rest.iter().next().map(|(_, _, x)| poly_of(x)) else { continue };
        let shape: Option<Vec<(usize, usize, GR)>> = rest
            .iter()
            .map(|(i, j, x)| {
                let x = poly_of(x);
                let (qt, r) = x.div_rem(&pivot);
                (r.is_zero()).then(|| qt.as_constant()).flatten().map(|c| (i, j, c))
            })
            .collect();
        let Some(shape) = shape else { continue };
        let k = ConstMatrix::from_triplets(size, size, shape);
        if k.rank() == 1 {
            return BlockForm::Crossed { a: a.clone(), b: pivot, k };
        }
    }
    BlockForm::Other
}

#[derive(Clone, Debug)]
pub struct Block {
    /// Indices into `site_blocks` of the two tensor factors.
    pub sectors: (usize, usize),
    /// Two-site indices (row = column ordering) of the block in the full space.
    pub indices: Vec<usize>,
    pub matrix: SparsePolyMatrix,
    pub form: BlockForm,
}

#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub v: ConstMatrix,
    pub conjugated: SparsePolyMatrix,
    /// Partition of single-site indices.
    pub site_blocks: Vec<Vec<usize>>,
    pub blocks: Vec<Block>,
    /// Every nonzero entry lies inside one of the blocks.
    pub block_diagonal: bool,
}

impl BlockDecomposition {
    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                let mut v = json!({
                    "sectors": [b.sectors.0, b.sectors.1],
                    "indices": b.indices,
                    "form": b.form.name(),
                    "matrix": json::poly_matrix(&b.matrix),
                });
                if let Some((al, ga)) = b.form.affine_ratio() {
                    v["affine_ratio"] = json!({ "alpha": json::gaussian(&al), "gamma": json::gaussian(&ga) });
                }
                v
            })
            .collect();
        json!({
            "v": json::const_matrix(&self.v),
            "site_blocks": self.site_blocks,
            "block_diagonal": self.block_diagonal,
            "blocks": blocks,
        })
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Conjugates `R` by `V⊗V` (identity if `v` is `None`) and splits it along the
/// finest partition of single-site indices that its entries respect.
pub fn block_decompose(r: &SparsePolyMatrix, n: usize, v: Option<&ConstMatrix>) -> Result<BlockDecomposition> {
    let v = v.cloned().unwrap_or_else(|| ConstMatrix::identity(n));
    if v.rows() != n || r.rows() != n * n {
        return Err(Error::DimensionMismatch(format!("similarity {}x{} for factor dimension {n}", v.rows(), v.cols())));
    }
    let vv = v.kron(&v);
    let conj = vv.to_poly().mul(r).mul(&vv.inverse()?.to_poly());
    let mut parent: Vec<usize> = (0..n).collect();
    for (i, j, _) in conj.iter() {
        for (x, y) in [(i / n, j / n), (i % n, j % n)] {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx.max(ry)] = rx.min(ry);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let root = find(&mut parent, x);
        groups.entry(root).or_default().push(x);
    }
    let site_blocks: Vec<Vec<usize>> = groups.into_values().collect();
    let mut label = vec![0; n];
    for (k, g) in site_blocks.iter().enumerate() {
        for &x in g {
            label[x] = k;
        }
    }
    let sector = |i: usize| (label[i / n], label[i % n]);
    let block_diagonal = conj.iter().all(|(i, j, _)| sector(i) == sector(j));
    let mut blocks = Vec::new();
    for (s1, g1) in site_blocks.iter().enumerate() {
        for (s2, g2) in site_blocks.iter().enumerate() {
            let indices: Vec<usize> = g1.iter().flat_map(|&a| g2.iter().map(move |&b| a * n + b)).collect();
            let m = conj.submatrix(&indices, &indices);
            if m.is_zero() {
                continue;
            }
            let form = classify_block(&m, (g1.len(), g2.len()));
            blocks.push(Block { sectors: (s1, s2), indices, matrix: m, form });
        }
    }
    Ok(BlockDecomposition { v, conjugated: conj, site_blocks, blocks, block_diagonal })
}

/// `uI + P` on `W⊗W`.
pub fn sl_fundamental(n: usize) -> SparsePolyMatrix {
    ConstMatrix::identity(n * n).times_poly(&Poly::x()).add(&swap_operator(n).to_poly())
}

/// A monomial matrix `s` with `s·e_j = i^{phase_j}·e_{perm_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub phase: Vec<u8>,
}

fn unit(e: u8) -> GR {
    match e % 4 {
        0 => GR::one(),
        1 => GR::i(),
        2 => -GR::one(),
        _ => -GR::i(),
    }
}

impl SignedPermutation {
    pub fn matrix(&self) -> ConstMatrix {
        let n = self.perm.len();
        ConstMatrix::from_triplets(n, n, (0..n).map(|j| (self.perm[j], j, unit(self.phase[j]))))
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.phase.iter().all(|&e| e == 0)
    }
}

#[derive(Clone, Debug)]
pub struct BasisMatch {
    pub s: SignedPermutation,
    /// `(s⊗s)·R·(s⊗s)^{-1} = λ·table`.
    pub lambda: GR,
}

/// Exponent `e` with `t = λ·r·i^e`, `Some(None)` when both vanish, `None` on mismatch.
fn unit_ratio(t: &SpectralPoly, r: &SpectralPoly, lambda: &GR) -> Option<Option<u8>> {
    match (t.is_zero(), r.is_zero()) {
        (true, true) => Some(None),
        (false, false) => {
            let lr = r.scale(lambda);
            (0..4u8).find(|&e| lr.scale(&unit(e)) == *t).map(Some)
        }
        _ => None,
    }
}

struct MatchProblem<'a> {
    n: usize,
    r: &'a SparsePolyMatrix,
    t: &'a SparsePolyMatrix,
    lambda: GR,
    /// `by_max[k]`: index quadruples whose largest entry is `k`.
    by_max: Vec<Vec<[usize; 4]>>,
}

impl MatchProblem<'_> {
    fn images(&self, q: &[usize; 4], perm: &[usize]) -> (usize, usize, usize, usize) {
        let n = self.n;
        (q[0] * n + q[1], q[2] * n + q[3], perm[q[0]] * n + perm[q[1]], perm[q[2]] * n + perm[q[3]])
    }

    fn perm_ok(&self, k: usize, perm: &[usize]) -> bool {
        self.by_max[k].iter().all(|q| {
            let (ri, rj, ti, tj) = self.images(q, perm);
            unit_ratio(&self.t.get(ti, tj), &self.r.get(ri, rj), &self.lambda).is_some()
        })
    }

    fn phase_ok(&self, k: usize, perm: &[usize], ph: &[u8]) -> bool {
        self.by_max[k].iter().all(|q| {
            let (ri, rj, ti, tj) = self.images(q, perm);
            match unit_ratio(&self.t.get(ti, tj), &self.r.get(ri, rj), &self.lambda) {
                Some(None) => true,
                Some(Some(e)) => (ph[q[0]] + ph[q[1]] + 8 - ph[q[2]] - ph[q[3]]) % 4 == e,
                None => false,
            }
        })
    }

    fn phases(&self, perm: &[usize], ph: &mut Vec<u8>) -> bool {
        let k = ph.len();
        if k == self.n {
            return true;
        }
        let choices: &[u8] = if k == 0 { &[0] } else { &[0, 1, 2, 3] };
        for &e in choices {
            ph.push(e);
            if self.phase_ok(k, perm, ph) && self.phases(perm, ph) {
                return true;
            }
            ph.pop();
        }
        false
    }

    fn search(&self, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> Option<SignedPermutation> {
        let k = perm.len();
        if k == self.n {
            let mut ph = Vec::new();
            return self.phases(perm, &mut ph).then(|| SignedPermutation { perm: perm.clone(), phase: ph });
        }
        for x in 0..self.n {
            if used[x] {
                continue;
            }
            perm.push(x);
            used[x] = true;
            if self.perm_ok(k, perm) {
                if let Some(s) = self.search(perm, used) {
                    return Some(s);
                }
            }
            perm.pop();
            used[x] = false;
        }
        None
    }
}

/// Searches monomial `s` (entries `±1, ±i`) and a constant `λ` with
/// `(s⊗s)·R·(s⊗s)^{-1} = λ·table`.
pub fn table_basis_match(r: &SparsePolyMatrix, table: &SparsePolyMatrix, n: usize) -> Result<Option<BasisMatch>> {
    if r.rows() != n * n || table.rows() != n * n {
        return Err(Error::DimensionMismatch(format!("tables of size {} and {} for factor dimension {n}", r.rows(), table.rows())));
    }
    let mut diag_r: Vec<SpectralPoly> = (0..n * n).map(|i| r.get(i, i)).collect();
    let mut diag_t: Vec<SpectralPoly> = (0..n * n).map(|i| table.get(i, i)).collect();
    if r.nnz() != table.nnz() {
        return Ok(None);
    }
    let Some(t0) = diag_t.iter().find(|x| !x.is_zero()).cloned() else { return Ok(None) };
    diag_r.dedup();
    let mut lambdas: Vec<GR> = Vec::new();
    for x in diag_r.iter().filter(|x| !x.is_zero()) {
        let (Some(pt), Some(pr)) = (t0.as_u(), x.as_u()) else { continue };
        let (q, rem) = pt.div_rem(pr);
        if let (true, Some(c)) = (rem.is_zero(), q.as_constant()) {
            if !lambdas.contains(&c) {
                lambdas.push(c);
            }
        }
    }
    diag_t.retain(|x| !x.is_zero());
    let mut by_max = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    by_max[a.max(b).max(c).max(d)].push([a, b, c, d]);
                }
            }
        }
    }
    for lambda in lambdas {
        // λ is inverted: table entries are λ_t·R entries, so R = table/λ_t
        let Some(li) = lambda.inv() else { continue };
        let problem = MatchProblem { n, r, t: table, lambda: lambda.clone(), by_max: by_max.clone() };
        let found = (0..n).into_par_iter().find_map_first(|first| {
            let mut perm = vec![first];
            let mut used = vec![false; n];
            used[first] = true;
            if !problem.perm_ok(0, &perm) {
                return None;
            }
            problem.search(&mut perm, &mut used)
        });
        if let Some(s) = found {
            return Ok(Some(BasisMatch { s, lambda: li }));
        }
    }
    Ok(None)
}

/// Exact check that `(s⊗s)·R·(s⊗s)^{-1} = λ·table`.
pub fn verify_basis_match(r: &SparsePolyMatrix, table: &SparsePolyMatrix, m: &BasisMatch) -> Result<bool> {
    let s = m.s.matrix();
    let ss = s.kron(&s);
    let lhs = ss.to_poly().mul(r).mul(&ss.inverse()?.to_poly());
    Ok(lhs == table.map(|p| p.scale(&m.lambda)))
}

/// Zero pattern of a generic `T` forced by the support of `R` in
/// `R(u−v)·T₁(u)·T₂(v) = T₂(v)·T₁(u)·R(u−v)`.
#[derive(Clone, Debug, Serialize)]
pub struct RttPattern {
    pub n: usize,
    /// Entries `(α, β)` of `T^α_β` forced to vanish, 0-based.
    pub zero: BTreeSet<(usize, usize)>,
    /// Products `T^a_b·T^c_d` forced to vanish in which neither factor is diagonal.
    pub unresolved_products: BTreeSet<((usize, usize), (usize, usize))>,
}

impl RttPattern {
    pub fn allowed(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|a| (0..self.n).map(move |b| (a, b))).filter(|e| !self.zero.contains(e)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.allowed().iter().all(|(a, b)| a == b)
    }
}

/// Fixpoint of the support argument. An equation reduced to a single product
/// `X·Y = 0` with a diagonal (assumed nonzero) factor forces the other factor to vanish.
pub fn rtt_pattern(r: &SparsePolyMatrix, n: usize) -> Result<RttPattern> {
    if n > 8 {
        return Err(Error::DimensionOutOfRange(n, "spinor dimension ≤ 8"));
    }
    let nz = |i: usize, j: usize| !r.get(i, j).is_zero();
    let mut zero: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut unresolved = BTreeSet::new();
    loop {
        let mut changed = false;
        for a1 in 0..n {
            for a2 in 0..n {
                for g1 in 0..n {
                    for g2 in 0..n {
                        let mut terms = Vec::new();
                        for b1 in 0..n {
                            for b2 in 0..n {
                                let (x, y) = ((b1, g1), (b2, g2));
                                if nz(a1 * n + a2, b1 * n + b2) && !zero.contains(&x) && !zero.contains(&y) {
                                    terms.push((x, y));
                                }
                                let (x, y) = ((a1, b1), (a2, b2));
                                if nz(b1 * n + b2, g1 * n + g2) && !zero.contains(&x) && !zero.contains(&y) {
                                    terms.push((x, y));
                                }
                            }
                        }
                        if let [(x, y)] = terms[..] {
                            let forced = if x.0 == x.1 && y.0 != y.1 {
                                Some(y)
                            } else if y.0 == y.1 && x.0 != x.1 {
                                Some(x)
                            } else {
                                None
                            };
                            match forced {
                                Some(e) => changed |= zero.insert(e),
                                None if x.0 != x.1 => {
                                    unresolved.insert((x, y));
                                }
                                None => {}
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    unresolved.retain(|(x, y)| !zero.contains(x) && !zero.contains(y));
    Ok(RttPattern { n, zero, unresolved_products: unresolved })
}

/// `[R(u), T⊗T] = 0` for a constant `T` with commuting (scalar) entries, which
/// is the RTT relation for such `T`.
pub fn scalar_rtt_holds(r: &SparsePolyMatrix, t: &ConstMatrix) -> bool {
    let tt = t.kron(t).to_poly();
    r.mul(&tt) == tt.mul(r)
}

/// Pattern of a block partition of `0..n`: positions `(a, b)` in the same block.
pub fn partition_pattern(parts: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = parts.iter().flat_map(|p| p.iter().flat_map(move |&a| p.iter().map(move |&b| (a, b)))).collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_gammas;
    use crate::invariants::SpinorPairSpace;
    use crate::rmatrix::{fundamental_r, spinor_parts, Chirality};
    use crate::scalar::rat;

    fn part(d: usize, c: Chirality) -> SparsePolyMatrix {
        let g = build_gammas(d).unwrap();
        spinor_parts(&SpinorPairSpace::new(&g)).unwrap().into_iter().find(|p| p.chirality == c).unwrap().unchecked.matrix
    }

    fn v4() -> ConstMatrix {
        ConstMatrix::from_triplets(4, 4, [(0, 0), (1, 3), (2, 2), (3, 1)].map(|(i, j)| (i, j, GR::one())))
    }

    #[test]
    fn identity_is_an_intertwiner() {
        let r = part(3, Chirality::Full);
        let sp = intertwiner_space(&r, &r, &Reparam::identity(), &default_samples(&r, &r)).unwrap();
        assert!(sp.dim() >= 1);
        assert!(sp.holds(&r, &r, &ConstMatrix::identity(4)));
        // so(3) against uI + P at 2u
        let sl = sl_fundamental(2);
        let re = Reparam::scale(rat(2, 1));
        let sp = intertwiner_space(&r, &sl, &re, &default_samples(&r, &sl)).unwrap();
        assert!(sp.holds(&r, &sl, &ConstMatrix::identity(4)));
    }

    #[test]
    fn kron_roundtrip() {
        let g = ConstMatrix::from_dense(vec![vec![GR::from_int(1), GR::from_int(2)], vec![GR::from_int(0), GR::frac(-1, 3)]]);
        match kron_factorize(&g.kron(&g), 2) {
            Some(KronFactor::Square(s)) => assert!(s == g || s == g.neg()),
            x => panic!("{x:?}"),
        }
        let h = ConstMatrix::from_dense(vec![vec![GR::from_int(0), GR::from_int(1)], vec![GR::from_int(1), GR::from_int(0)]]);
        assert!(matches!(kron_factorize(&g.kron(&h), 2), Some(KronFactor::Pair(..))));
        assert_eq!(kron_factorize(&ConstMatrix::identity(9), 3), Some(KronFactor::Square(ConstMatrix::identity(3))));
        assert_eq!(kron_factorize(&swap_operator(2), 2), None);
        assert_eq!(gaussian_sqrt(&GR::new(rat(0, 1), rat(2, 1))), Some(GR::new(rat(1, 1), rat(1, 1))));
    }

    #[test]
    fn so4_minus_splits_into_sl2_blocks() {
        let r = part(4, Chirality::Minus);
        let auto = block_decompose(&r, 4, None).unwrap();
        assert_eq!(auto.site_blocks, vec![vec![0, 3], vec![1, 2]]);
        let dec = block_decompose(&r, 4, Some(&v4())).unwrap();
        assert!(dec.block_diagonal);
        assert_eq!(dec.site_blocks, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(dec.blocks.len(), 2);
        for b in &dec.blocks {
            assert_eq!(b.form, BlockForm::Direct { a: Poly::x(), b: Poly::one() });
        }
        let plus = block_decompose(&part(4, Chirality::Plus), 4, None).unwrap();
        assert_eq!(plus.blocks.len(), 8);
        assert!(plus.blocks.iter().all(|b| b.indices.len() == 1));
    }

    #[test]
    fn so6_plus_blocks_are_crossed() {
        let dec = block_decompose(&part(6, Chirality::Plus), 8, None).unwrap();
        assert_eq!(dec.blocks.len(), 2);
        for b in &dec.blocks {
            assert_eq!(b.form.name(), "sl fundamental-conjugate");
            assert!(b.form.affine_ratio().is_some());
        }
    }

    #[test]
    fn so5_maps_to_sp4_by_monomial() {
        let r = part(5, Chirality::Full);
        let sp = fundamental_r(-1, 4).unwrap().matrix;
        let re = Reparam::scale(rat(2, 1));
        let m = table_basis_match(&r, &re.apply(&sp), 4).unwrap().expect("monomial intertwiner");
        assert!(verify_basis_match(&r, &re.apply(&sp), &m).unwrap());
        let s = m.s.matrix();
        let g = s.kron(&s);
        assert!(matches!(kron_factorize(&g, 4), Some(KronFactor::Square(_))));
        let space = intertwiner_space(&r, &sp, &re, &default_samples(&r, &sp)).unwrap();
        assert!(space.holds(&r, &sp, &g));
    }

    #[test]
    fn rtt_support_argument() {
        let p = rtt_pattern(&part(4, Chirality::Minus), 4).unwrap();
        assert_eq!(p.allowed(), partition_pattern(&[vec![0, 3], vec![1, 2]]));
        let plus = part(4, Chirality::Plus);
        let q = rtt_pattern(&plus, 4).unwrap();
        assert_eq!(q.allowed(), partition_pattern(&[vec![0, 3], vec![1, 2]]));
        // block-diagonal T beyond the diagonal is still a solution
        let mut t = ConstMatrix::identity(4);
        t = t.add(&ConstMatrix::from_triplets(4, 4, [(0, 3, GR::one())]));
        assert!(scalar_rtt_holds(&plus, &t));
    }
}
