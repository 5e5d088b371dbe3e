//! Periodic chains: monodromy matrices, transfer matrices, their commutativity
//! and the fusion identities relating spinor and vector auxiliary spaces.

use serde::Serialize;
use serde_json::{json, Value};

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::json;
use crate::matrix::{ConstMatrix, SparsePolyMatrix};
use crate::poly::{Poly, SpectralPoly};
use crate::rmatrix::{fundamental_r, spinor_parts, Chirality};
use crate::invariants::SpinorPairSpace;
use crate::scalar::{rational_to_string, GaussianRational as GR, Rational};
use crate::verifier::{check_on_grid, check_trace_fusion, IdentityReport, MAX_SITES};

/// Largest monodromy dimension built as a polynomial matrix.
pub const MAX_MONODROMY_DIM: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    /// Vector auxiliary space, fundamental R factors, vector sites.
    Vector,
    /// Spinor auxiliary space, L factors, vector sites.
    LChain,
    /// Spinor auxiliary space, spinorial R factors of one part, spinor sites.
    RChain(Chirality),
}

impl ChainKind {
    pub fn label(self) -> String {
        match self {
            ChainKind::Vector => "vector".into(),
            ChainKind::LChain => "spinor L".into(),
            ChainKind::RChain(c) => format!("spinor R {}", c.as_str()),
        }
    }
}

/// `T(u)` on `aux ⊗ site^{⊗N}`, the ordered product `X₀₁(u)⋯X₀N(u)`.
#[derive(Clone, Debug)]
pub struct Monodromy {
    pub d: usize,
    pub kind: ChainKind,
    pub sites: usize,
    pub aux_dim: usize,
    pub site_dim: usize,
    pub factor_degree: usize,
    pub matrix: SparsePolyMatrix,
}

impl Monodromy {
    pub fn quantum_dim(&self) -> usize {
        self.site_dim.pow(self.sites as u32)
    }

    fn dims(&self) -> Vec<usize> {
        let mut dims = vec![self.aux_dim];
        dims.extend(std::iter::repeat(self.site_dim).take(self.sites));
        dims
    }

    pub fn degree(&self) -> usize {
        self.matrix.degree_u().unwrap_or(0)
    }

    /// Auxiliary block `T^α_β`, an operator on the quantum space.
    pub fn block(&self, alpha: usize, beta: usize) -> SparsePolyMatrix {
        let q = self.quantum_dim();
        let rows: Vec<usize> = (alpha * q..(alpha + 1) * q).collect();
        let cols: Vec<usize> = (beta * q..(beta + 1) * q).collect();
        self.matrix.submatrix(&rows, &cols)
    }

    /// Auxiliary positions `(α, β)` whose block is not identically zero.
    pub fn nonzero_blocks(&self) -> Vec<(usize, usize)> {
        let q = self.quantum_dim();
        let mut v: Vec<(usize, usize)> = self.matrix.iter().map(|(i, j, _)| (i / q, j / q)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Conjugation of the auxiliary space, `(V⊗I)·T·(V⊗I)^{-1}`.
    pub fn conjugate_aux(&self, v: &ConstMatrix) -> Result<Self> {
        let id = ConstMatrix::identity(self.quantum_dim());
        let big = v.kron(&id);
        let matrix = big.to_poly().mul(&self.matrix).mul(&big.inverse()?.to_poly());
        Ok(Self { matrix, ..self.clone() })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "kind": self.kind.label(),
            "sites": self.sites,
            "aux_dim": self.aux_dim,
            "site_dim": self.site_dim,
            "degree": self.degree(),
            "nonzero_blocks": self.nonzero_blocks(),
            "matrix": json::poly_matrix(&self.matrix),
        })
    }
}

fn guard(d: usize, sites: usize, total: usize) -> Result<()> {
    if !(3..=6).contains(&d) {
        return Err(Error::DimensionOutOfRange(d, "3..=6"));
    }
    if sites == 0 || sites > MAX_SITES {
        return Err(Error::ResourceGuard(format!("chain length {sites} outside 1..={MAX_SITES}")));
    }
    if total > MAX_MONODROMY_DIM {
        return Err(Error::ResourceGuard(format!("monodromy dimension {total} exceeds {MAX_MONODROMY_DIM}")));
    }
    Ok(())
}

fn chain_product(factor: &SparsePolyMatrix, dims: &[usize], legs: impl Fn(usize) -> [usize; 2], sites: usize) -> SparsePolyMatrix {
    (2..=sites).fold(factor.embed(dims, &legs(1)), |acc, k| acc.mul(&factor.embed(dims, &legs(k))))
}

/// `𝕋(u) = R₀₁(u)⋯R₀N(u)` with fundamental `so(d)` factors.
pub fn vector_monodromy(d: usize, sites: usize) -> Result<Monodromy> {
    guard(d, sites, d.pow(sites as u32 + 1))?;
    let r = fundamental_r(1, d)?;
    let dims = vec![d; sites + 1];
    let matrix = chain_product(&r.matrix, &dims, |k| [0, k], sites);
    Ok(Monodromy { d, kind: ChainKind::Vector, sites, aux_dim: d, site_dim: d, factor_degree: r.degree, matrix })
}

/// Spinor-auxiliary monodromy: `L₀₁(u)⋯L₀N(u)` on vector sites, or
/// `R₀₁(u)⋯R₀N(u)` with the unchecked spinorial part of the given chirality on spinor sites.
pub fn spinor_monodromy(rep: &CliffordRep, sites: usize, kind: ChainKind) -> Result<Monodromy> {
    let (d, n) = (rep.d(), rep.spinor_dim());
    match kind {
        ChainKind::Vector => vector_monodromy(d, sites),
        ChainKind::LChain => {
            guard(d, sites, n * d.pow(sites as u32))?;
            let mut dims = vec![n];
            dims.extend(std::iter::repeat(d).take(sites));
            // the L-operator acts on V ⊗ S: its vector leg is the site, its spinor leg the auxiliary space
            let matrix = chain_product(&rep.l_operator(), &dims, |k| [k, 0], sites);
            Ok(Monodromy { d, kind, sites, aux_dim: n, site_dim: d, factor_degree: 1, matrix })
        }
        ChainKind::RChain(c) => {
            guard(d, sites, n.pow(sites as u32 + 1))?;
            let part = spinor_parts(&SpinorPairSpace::new(rep))?
                .into_iter()
                .find(|p| p.chirality == c)
                .ok_or_else(|| Error::DimensionMismatch(format!("no {} part for d = {d}", c.as_str())))?;
            let dims = vec![n; sites + 1];
            let matrix = chain_product(&part.unchecked.matrix, &dims, |k| [0, k], sites);
            Ok(Monodromy { d, kind, sites, aux_dim: n, site_dim: n, factor_degree: part.unchecked.degree, matrix })
        }
    }
}

/// `t(u) = tr₀ T(u)`.
#[derive(Clone, Debug)]
pub struct TransferMatrix {
    pub t: SparsePolyMatrix,
    pub kind: ChainKind,
    pub d: usize,
    pub sites: usize,
}

impl TransferMatrix {
    pub fn degree(&self) -> usize {
        self.t.degree_u().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({ "d": self.d, "kind": self.kind.label(), "sites": self.sites, "degree": self.degree(), "matrix": json::poly_matrix(&self.t) })
    }
}

pub fn transfer(m: &Monodromy) -> Result<TransferMatrix> {
    Ok(TransferMatrix { t: m.matrix.partial_trace(m.aux_dim, m.quantum_dim(), 1)?, kind: m.kind, d: m.d, sites: m.sites })
}

/// `[t(u), t(v)] = 0` on the grid `{0..=deg}²`.
pub fn check_commuting_family(t: &TransferMatrix) -> Result<IdentityReport> {
    let deg = t.degree();
    let params = [("d", t.d.to_string()), ("N", t.sites.to_string()), ("chain", t.kind.label())];
    check_on_grid("commuting_transfer", &params, deg, Some(deg), |u, v| {
        let v = v.ok_or(Error::MissingVariable("v"))?;
        let (a, b) = (t.t.eval(u, None)?, t.t.eval(v, None)?);
        Ok((a.mul(&b), b.mul(&a)))
    })
}

/// `tr 𝕋(u)` against the bilinear combination of chirality-block traces of the
/// spinor monodromy with `T̄ = T⁻¹(u + c)`; the identity holds for `c = 3/2`.
pub fn fusion_trace_identity(rep: &CliffordRep, sites: usize, inverse_offset: &Rational) -> Result<IdentityReport> {
    if sites > 2 {
        return Err(Error::ResourceGuard(format!("trace fusion is checked for N ≤ 2, got {sites}")));
    }
    check_trace_fusion(rep, sites, inverse_offset)
}

/// `T(u+β+½)·T̃(−u−½) = (−u(u+β+1))^N·I` for the L chain, `T̃` the reversed product.
pub fn check_monodromy_inversion(rep: &CliffordRep, sites: usize, beta: &Rational) -> Result<IdentityReport> {
    let m = spinor_monodromy(rep, sites, ChainKind::LChain)?;
    let dims = m.dims();
    let l = rep.l_operator();
    let b = GR::from_rational(beta);
    let half = GR::frac(1, 2);
    let params = [("d", rep.d().to_string()), ("N", sites.to_string()), ("beta", rational_to_string(beta))];
    check_on_grid("monodromy_inversion", &params, 2 * sites, None, |u, _| {
        let t = m.matrix.eval(&(u + &b + &half), None)?;
        let lt = l.eval(&(-u - &half), None)?;
        let rev = (1..sites).rev().fold(lt.embed(&dims, &[sites, 0]), |acc, k| acc.mul(&lt.embed(&dims, &[k, 0])));
        let c = -(u * &(u + &b + GR::one()));
        let scalar = (0..sites).fold(GR::one(), |acc, _| acc * &c);
        Ok((t.mul(&rev), ConstMatrix::scalar(t.rows(), scalar)))
    })
}

/// Positions outside `pattern` whose blocks are not identically zero.
pub fn pattern_violations(m: &Monodromy, pattern: &[(usize, usize)]) -> Vec<(usize, usize)> {
    m.nonzero_blocks().into_iter().filter(|e| !pattern.contains(e)).collect()
}

/// Result of splitting a spinor monodromy along an auxiliary similarity.
#[derive(Clone, Debug, Serialize)]
pub struct AuxSplit {
    pub groups: Vec<Vec<usize>>,
    /// The conjugated monodromy has no entries between groups.
    pub block_diagonal: bool,
    /// The transfer matrix equals the sum of the group traces.
    pub trace_splits: bool,
}

pub fn split_by_similarity(m: &Monodromy, v: &ConstMatrix, groups: &[Vec<usize>]) -> Result<AuxSplit> {
    let c = m.conjugate_aux(v)?;
    let group_of = |a: usize| groups.iter().position(|g| g.contains(&a));
    let block_diagonal = c.nonzero_blocks().iter().all(|&(a, b)| group_of(a).is_some() && group_of(a) == group_of(b));
    let t = transfer(m)?.t;
    let q = m.quantum_dim();
    let sum = groups.iter().flatten().fold(SparsePolyMatrix::zeros(q, q), |acc, &a| acc.add(&c.block(a, a)));
    Ok(AuxSplit { groups: groups.to_vec(), block_diagonal, trace_splits: sum == t })
}

/// Polynomial `∏ (−u(u+β+1))` used by the inversion check, for reporting.
pub fn inversion_scalar(sites: usize, beta: &Rational) -> SpectralPoly {
    let b = GR::from_rational(beta);
    let f = Poly::from_coeffs(vec![GR::zero(), -(&b + GR::one()), -GR::one()]);
    SpectralPoly::U((0..sites).fold(Poly::one(), |acc, _| acc.mul(&f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_gammas;
    use crate::scalar::rat;

    #[test]
    fn single_site_is_the_factor() {
        let m = vector_monodromy(4, 1).unwrap();
        assert_eq!(m.matrix, fundamental_r(1, 4).unwrap().matrix);
        assert_eq!(vector_monodromy(4, 2).unwrap().degree(), 4);
        let g = build_gammas(3).unwrap();
        assert_eq!(spinor_monodromy(&g, 1, ChainKind::LChain).unwrap().matrix.permute_factors(&[2, 3], &[1, 0]), g.l_operator());
        assert!(matches!(vector_monodromy(4, 4), Err(Error::ResourceGuard(_))));
    }

    #[test]
    fn transfer_commutes_small() {
        let g = build_gammas(4).unwrap();
        for kind in [ChainKind::Vector, ChainKind::LChain, ChainKind::RChain(Chirality::Minus)] {
            let t = transfer(&spinor_monodromy(&g, 2, kind).unwrap()).unwrap();
            assert!(check_commuting_family(&t).unwrap().pass, "{kind:?}");
        }
    }

    #[test]
    fn so4_chain_pattern_and_split() {
        let g = build_gammas(4).unwrap();
        let m = spinor_monodromy(&g, 2, ChainKind::RChain(Chirality::Minus)).unwrap();
        let allowed = crate::equivalence::partition_pattern(&[vec![0, 3], vec![1, 2]]);
        assert!(pattern_violations(&m, &allowed).is_empty());
        let v = ConstMatrix::from_triplets(4, 4, [(0, 0), (1, 3), (2, 2), (3, 1)].map(|(i, j)| (i, j, GR::one())));
        let s = split_by_similarity(&m, &v, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(s.block_diagonal && s.trace_splits);
        let plus = spinor_monodromy(&g, 2, ChainKind::RChain(Chirality::Plus)).unwrap();
        assert!(plus.nonzero_blocks().iter().all(|(a, b)| a == b));
    }

    #[test]
    fn inversion_and_trace_fusion() {
        let g = build_gammas(4).unwrap();
        assert!(check_monodromy_inversion(&g, 2, &rat(1, 1)).unwrap().pass);
        assert!(fusion_trace_identity(&g, 2, &rat(3, 2)).unwrap().pass);
        assert!(!fusion_trace_identity(&g, 2, &rat(1, 1)).unwrap().pass);
        assert_eq!(inversion_scalar(1, &rat(1, 1)).degree_u(), Some(2));
    }
}
