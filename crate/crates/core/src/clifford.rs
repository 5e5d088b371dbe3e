//! Gamma matrices, chirality, antisymmetrized products and the spinor L-operator.
//!
//! For `d = 2m` the generators are Pauli strings on `m` qubits:
//! `γ^{2k+1} = σ₃^{⊗k} ⊗ σ₁ ⊗ I…` and `γ^{2k+2} = σ₃^{⊗k} ⊗ σ₂ ⊗ I…`.
//! Odd `d` appends the chirality element of `d − 1`. Indices are 0-based in code.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ConstMatrix, SparsePolyMatrix};
use crate::poly::SpectralPoly;
use crate::scalar::{GaussianRational as GR, Rational};

/// Largest dimension [`build_gammas`] accepts.
pub const MAX_D: usize = 12;

fn pauli(k: u8) -> ConstMatrix {
    let (one, i) = (GR::one(), GR::i());
    match k {
        0 => ConstMatrix::identity(2),
        1 => ConstMatrix::from_triplets(2, 2, [(0, 1, one.clone()), (1, 0, one)]),
        2 => ConstMatrix::from_triplets(2, 2, [(0, 1, -&i), (1, 0, i)]),
        _ => ConstMatrix::from_triplets(2, 2, [(0, 0, one.clone()), (1, 1, -one)]),
    }
}

fn pauli_string(ks: &[u8]) -> ConstMatrix {
    ks.iter().fold(ConstMatrix::identity(1), |acc, &k| acc.kron(&pauli(k)))
}

/// Gamma-matrix representation of the Clifford algebra for `so(d)`.
#[derive(Clone, Debug)]
pub struct CliffordRep {
    d: usize,
    gammas: Vec<ConstMatrix>,
    chirality: Option<ConstMatrix>,
}

/// Builds the fixed recursive Pauli-block representation, `2 ≤ d ≤ 12`.
pub fn build_gammas(d: usize) -> Result<CliffordRep> {
    if !(2..=MAX_D).contains(&d) {
        return Err(Error::DimensionOutOfRange(d, "2..=12"));
    }
    if d % 2 == 1 {
        let lower = build_gammas(d - 1)?;
        let mut gammas = lower.gammas;
        gammas.push(lower.chirality.expect("even d has a chirality element"));
        return Ok(CliffordRep { d, gammas, chirality: None });
    }
    let m = d / 2;
    let mut gammas = Vec::with_capacity(d);
    for k in 0..m {
        for s in [1u8, 2] {
            let mut ks = vec![3u8; k];
            ks.push(s);
            ks.resize(m, 0);
            gammas.push(pauli_string(&ks));
        }
    }
    let chirality = Some(chirality_element(&gammas).0);
    Ok(CliffordRep { d, gammas, chirality })
}

/// `ω·γ¹⋯γᵈ` with `ω ∈ {1, −i}` chosen so the square is the identity.
fn chirality_element(gammas: &[ConstMatrix]) -> (ConstMatrix, GR) {
    let n = gammas[0].rows();
    let prod = gammas.iter().fold(ConstMatrix::identity(n), |acc, g| acc.mul(g));
    if prod.mul(&prod) == ConstMatrix::identity(n) {
        (prod, GR::one())
    } else {
        let w = -GR::i();
        (prod.scale(&w), w)
    }
}

/// Result of [`CliffordRep::antisym_product`].
#[derive(Clone, Debug)]
pub struct AntisymProduct {
    pub matrix: ConstMatrix,
    /// Set when an index repeats; the product is then zero.
    pub repeated: bool,
}

impl CliffordRep {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Spinor dimension `2^⌊d/2⌋`.
    pub fn spinor_dim(&self) -> usize {
        self.gammas[0].rows()
    }

    pub fn gammas(&self) -> &[ConstMatrix] {
        &self.gammas
    }

    pub fn gamma(&self, a: usize) -> &ConstMatrix {
        &self.gammas[a]
    }

    /// Chirality element (even `d` only).
    pub fn chirality(&self) -> Result<&ConstMatrix> {
        self.chirality.as_ref().ok_or(Error::OddDimension(self.d))
    }

    /// Phase `ω` with chirality `= ω·γ¹⋯γᵈ`.
    pub fn chirality_phase(&self) -> Result<GR> {
        self.chirality()?;
        Ok(chirality_element(&self.gammas).1)
    }

    /// `γ^{a₁…a_k}`, the normalized antisymmetrized product.
    pub fn antisym_product(&self, indices: &[usize]) -> AntisymProduct {
        let n = self.spinor_dim();
        let mut seen = vec![false; self.d];
        for &a in indices {
            if std::mem::replace(&mut seen[a], true) {
                return AntisymProduct { matrix: ConstMatrix::zeros(n, n), repeated: true };
            }
        }
        let matrix = indices.iter().fold(ConstMatrix::identity(n), |acc, &a| acc.mul(&self.gammas[a]));
        AntisymProduct { matrix, repeated: false }
    }

    /// Literal `(1/k!)·Σ_σ sgn(σ) γ^{a_σ1}⋯γ^{a_σk}`; exponential in `k`, used as a test oracle.
    pub fn antisym_product_by_permutations(&self, indices: &[usize]) -> ConstMatrix {
        let n = self.spinor_dim();
        let k = indices.len();
        let mut total = ConstMatrix::zeros(n, n);
        let mut count = 0i64;
        for_each_permutation(k, &mut |perm, sign| {
            let p = perm.iter().fold(ConstMatrix::identity(n), |acc, &i| acc.mul(&self.gammas[indices[i]]));
            total = if sign > 0 { total.add(&p) } else { total.sub(&p) };
            count += 1;
        });
        total.scale(&GR::frac(1, count))
    }

    /// `L^{ab}(u) = u·δ^{ab} − ½γ^{ab}` on `V ⊗ S`, row index `a·n + α`.
    pub fn l_operator(&self) -> SparsePolyMatrix {
        let n = self.spinor_dim();
        let mut trips = Vec::new();
        for a in 0..self.d {
            for al in 0..n {
                trips.push((a * n + al, a * n + al, SpectralPoly::u()));
            }
            for b in 0..self.d {
                if a == b {
                    continue;
                }
                let g = self.antisym_product(&[a, b]).matrix.scale(&GR::frac(-1, 2));
                for (i, j, v) in g.iter() {
                    trips.push((a * n + i, b * n + j, SpectralPoly::constant(v.clone())));
                }
            }
        }
        SparsePolyMatrix::from_triplets(self.d * n, self.d * n, trips)
    }

    /// `L(x)` at a fixed spectral value.
    pub fn l_at(&self, x: &GR) -> ConstMatrix {
        self.l_operator().eval(x, None).expect("univariate")
    }

    pub fn generators(&self) -> GeneratorSet {
        let n = self.spinor_dim();
        let g = (0..self.d)
            .map(|a| {
                (0..self.d)
                    .map(|b| {
                        if a == b {
                            ConstMatrix::zeros(n, n)
                        } else {
                            self.antisym_product(&[a, b]).matrix.scale(&GR::frac(-1, 2))
                        }
                    })
                    .collect()
            })
            .collect();
        GeneratorSet { d: self.d, n, g }
    }

    /// Checks `γᵃγᵇ + γᵇγᵃ = 2δᵃᵇ·I` for all pairs; returns the failing pairs.
    pub fn clifford_violations(&self) -> Vec<(usize, usize)> {
        let n = self.spinor_dim();
        let two = ConstMatrix::scalar(n, GR::from_int(2));
        let mut bad = Vec::new();
        for a in 0..self.d {
            for b in a..self.d {
                let ac = self.gammas[a].mul(&self.gammas[b]).add(&self.gammas[b].mul(&self.gammas[a]));
                let expect = if a == b { two.clone() } else { ConstMatrix::zeros(n, n) };
                if ac != expect {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}

fn for_each_permutation(k: usize, f: &mut impl FnMut(&[usize], i32)) {
    fn rec(p: &mut Vec<usize>, start: usize, sign: i32, f: &mut impl FnMut(&[usize], i32)) {
        if start == p.len() {
            f(p, sign);
            return;
        }
        for i in start..p.len() {
            p.swap(start, i);
            rec(p, start + 1, if i == start { sign } else { -sign }, f);
            p.swap(start, i);
        }
    }
    let mut p: Vec<usize> = (0..k).collect();
    rec(&mut p, 0, 1, f);
}

/// The generators `G^{ab} = −½γ^{ab}` built from a representation.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub d: usize,
    pub n: usize,
    /// `g[a][b]`
    pub g: Vec<Vec<ConstMatrix>>,
}

/// Which generator identity to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Lie algebra commutation relations.
    Lie,
    /// Symmetry condition.
    Symmetry,
    /// Yangian evaluation constraint with the free scalar β.
    Constraint,
}

/// Outcome of solving the constraint for β.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaSolution {
    Unique(#[serde(serialize_with = "crate::json::ser_rational")] Rational),
    Unconstrained,
    NoSolution,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub relation: Relation,
    pub d: usize,
    pub tuples_checked: usize,
    /// First few failing index tuples (0-based).
    pub failures: Vec<[usize; 4]>,
    pub beta: Option<BetaSolution>,
    pub pass: bool,
}

impl GeneratorSet {
    fn delta(a: usize, b: usize) -> bool {
        a == b
    }

    fn zero(&self) -> ConstMatrix {
        ConstMatrix::zeros(self.n, self.n)
    }

    fn tuples(&self) -> impl Iterator<Item = [usize; 4]> {
        let d = self.d;
        (0..d.pow(4)).map(move |k| [k / (d * d * d), (k / (d * d)) % d, (k / d) % d, k % d])
    }

    pub fn verify(&self, relation: Relation) -> GeneratorReport {
        match relation {
            Relation::Lie => self.check_with(relation, |[a1, b1, a2, b2]| {
                let g = &self.g;
                let lhs = g[a1][b1].commutator(&g[a2][b2]);
                let mut rhs = self.zero();
                if Self::delta(a1, b2) {
                    rhs = rhs.add(&g[a2][b1]);
                }
                if Self::delta(a2, b1) {
                    rhs = rhs.sub(&g[a1][b2]);
                }
                if Self::delta(a1, a2) {
                    rhs = rhs.add(&g[b1][b2]);
                }
                if Self::delta(b1, b2) {
                    rhs = rhs.sub(&g[a2][a1]);
                }
                lhs == rhs
            }),
            Relation::Symmetry => self.check_with(relation, |[a1, a2, b1, b2]| {
                let g = &self.g;
                let lhs = if Self::delta(a1, a2) { g[b1][b2].add(&g[b2][b1]) } else { self.zero() };
                let rhs = if Self::delta(b1, b2) { g[a2][a1].add(&g[a1][a2]) } else { self.zero() };
                lhs == rhs
            }),
            Relation::Constraint => self.solve_constraint(),
        }
    }

    fn check_with(&self, relation: Relation, ok: impl Fn([usize; 4]) -> bool) -> GeneratorReport {
        let mut failures = Vec::new();
        let mut count = 0;
        let mut pass = true;
        for t in self.tuples() {
            count += 1;
            if !ok(t) {
                pass = false;
                if failures.len() < 8 {
                    failures.push(t);
                }
            }
        }
        GeneratorReport { relation, d: self.d, tuples_checked: count, failures, beta: None, pass }
    }

    /// Splits the constraint into `A − β·B` per index tuple `(a₁, a₂, b₁, b₂)`.
    fn constraint_parts(&self, [a1, a2, b1, b2]: [usize; 4]) -> (ConstMatrix, ConstMatrix) {
        let g = &self.g;
        let mut a = self.zero();
        let mut b = self.zero();
        if Self::delta(a1, a2) {
            for c in 0..self.d {
                a = a.add(&g[c][b1].mul(&g[c][b2]));
            }
            b = b.add(&g[b1][b2]);
        }
        if Self::delta(b1, b2) {
            for c in 0..self.d {
                a = a.sub(&g[a2][c].mul(&g[a1][c]));
            }
            b = b.sub(&g[a2][a1]);
        }
        (a, b)
    }

    /// Solves the linear condition on β and verifies it on every tuple.
    pub fn solve_constraint(&self) -> GeneratorReport {
        let parts: Vec<_> = self.tuples().map(|t| (t, self.constraint_parts(t))).collect();
        let beta: Option<GR> = parts.iter().find_map(|(_, (a, b))| b.iter().next().map(|(i, j, bv)| &a.get(i, j) / bv));
        let (solution, failures) = match beta {
            None => {
                let bad: Vec<_> = parts.iter().filter(|(_, (a, _))| !a.is_zero()).map(|(t, _)| *t).take(8).collect();
                (if bad.is_empty() { BetaSolution::Unconstrained } else { BetaSolution::NoSolution }, bad)
            }
            Some(beta) => {
                let bad: Vec<_> = parts
                    .iter()
                    .filter(|(_, (a, b))| *a != b.scale(&beta))
                    .map(|(t, _)| *t)
                    .take(8)
                    .collect();
                match (bad.is_empty(), beta.as_rational()) {
                    (true, Some(r)) => (BetaSolution::Unique(r), bad),
                    _ => (BetaSolution::NoSolution, bad),
                }
            }
        };
        GeneratorReport {
            relation: Relation::Constraint,
            d: self.d,
            tuples_checked: parts.len(),
            pass: matches!(solution, BetaSolution::Unique(_) | BetaSolution::Unconstrained),
            failures,
            beta: Some(solution),
        }
    }
}

/// Convenience: `verify_generator_relations` on the generators of `rep`.
pub fn verify_generator_relations(gs: &GeneratorSet, which: Relation) -> GeneratorReport {
    gs.verify(which)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    #[test]
    fn clifford_relations_small() {
        for d in 2..=8 {
            let rep = build_gammas(d).unwrap();
            assert_eq!(rep.spinor_dim(), 1 << (d / 2));
            assert!(rep.clifford_violations().is_empty(), "d = {d}");
        }
        assert!(build_gammas(1).is_err());
        assert!(build_gammas(13).is_err());
    }

    #[test]
    fn chirality_properties() {
        let rep = build_gammas(4).unwrap();
        let c = rep.chirality().unwrap();
        assert_eq!(c.mul(c), ConstMatrix::identity(4));
        assert!(c.trace().is_zero());
        for g in rep.gammas() {
            assert!(c.mul(g).add(&g.mul(c)).is_zero());
        }
        let five = build_gammas(5).unwrap();
        assert_eq!(five.gamma(4), c);
        assert!(five.chirality().is_err());
    }

    #[test]
    fn antisym_products() {
        let rep = build_gammas(4).unwrap();
        assert_eq!(rep.antisym_product(&[]).matrix, ConstMatrix::identity(4));
        assert_eq!(&rep.antisym_product(&[2]).matrix, rep.gamma(2));
        assert_eq!(rep.antisym_product(&[0, 1]).matrix, rep.gamma(0).mul(rep.gamma(1)));
        assert_eq!(rep.antisym_product(&[0, 1, 2]).matrix, rep.antisym_product_by_permutations(&[0, 1, 2]));
        let rep_ = rep.antisym_product(&[1, 1]);
        assert!(rep_.repeated && rep_.matrix.is_zero());
        let top = rep.antisym_product(&[0, 1, 2, 3]).matrix;
        let w = rep.chirality_phase().unwrap();
        assert_eq!(top.scale(&w), *rep.chirality().unwrap());
    }

    #[test]
    fn l_operator_shape() {
        let rep = build_gammas(3).unwrap();
        let l = rep.l_operator();
        assert_eq!(l.degree_u(), Some(1));
        assert_eq!(l.rows(), 6);
        for a in 0..3 {
            for al in 0..2 {
                assert_eq!(l.get(a * 2 + al, a * 2 + al), SpectralPoly::u());
            }
        }
        let l0 = l.eval(&GR::zero(), None).unwrap();
        let g = rep.generators();
        for a in 0..3 {
            for b in 0..3 {
                let blk = l0.submatrix(&[a * 2, a * 2 + 1], &[b * 2, b * 2 + 1]);
                assert_eq!(blk, g.g[a][b]);
            }
        }
    }

    #[test]
    fn lie_and_symmetry() {
        for d in [3, 4, 5] {
            let g = build_gammas(d).unwrap().generators();
            assert!(g.verify(Relation::Lie).pass, "lie d = {d}");
            assert!(g.verify(Relation::Symmetry).pass);
        }
    }

    #[test]
    fn constraint_beta() {
        for d in 3..=6 {
            let r = build_gammas(d).unwrap().generators().solve_constraint();
            assert_eq!(r.beta, Some(BetaSolution::Unique(rat(d as i64 - 2, 2))), "d = {d}");
        }
    }

    proptest! {
        #[test]
        fn antisymmetric_under_swap(a in 0usize..6, b in 0usize..6, c in 0usize..6) {
            prop_assume!(a != b && b != c && a != c);
            let rep = build_gammas(6).unwrap();
            let x = rep.antisym_product(&[a, b, c]).matrix;
            let y = rep.antisym_product(&[b, a, c]).matrix;
            prop_assert_eq!(x, y.neg());
        }
    }
}
