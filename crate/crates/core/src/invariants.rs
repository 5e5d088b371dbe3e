//! The two-site invariant `z = ½ Σ γᵃ ⊗ γᵃ` and everything built from it.
//!
//! Projectors are Lagrange polynomials in `z`; they are assembled from the
//! powers `z⁰ … z^r`, which stay cheap because `z` has at most `d` entries per row.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::clifford::CliffordRep;
use crate::error::Result;
use crate::matrix::ConstMatrix;
use crate::poly::Poly;
use crate::scalar::{rat, GaussianRational as GR, Rational};

/// `½ Σ_a γᵃ ⊗ γᵃ` on `S ⊗ S`.
pub fn build_z(rep: &CliffordRep) -> ConstMatrix {
    let n = rep.spinor_dim();
    let mut z = ConstMatrix::zeros(n * n, n * n);
    for g in rep.gammas() {
        z = z.add(&g.kron(g));
    }
    z.scale(&GR::frac(1, 2))
}

/// `Σ_{|S|=k} Γ_S ⊗ Γ_S` over index sets `a₁ < … < a_k`, with `Γ_S` the ordered product.
pub fn gamma_pair_sum(rep: &CliffordRep, k: usize) -> ConstMatrix {
    let n = rep.spinor_dim();
    let mut total = ConstMatrix::zeros(n * n, n * n);
    for set in combinations(rep.d(), k) {
        let g = rep.antisym_product(&set).matrix;
        total = total.add(&g.kron(&g));
    }
    total
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Roots of the characteristic polynomial: `−m…m` for `d = 2m`, and
/// `(−1)^k (2k+1)/2`, `k = 0…m`, for `d = 2m+1`.
pub fn roots(d: usize) -> Vec<Rational> {
    let m = (d / 2) as i64;
    if d % 2 == 0 {
        (-m..=m).map(|k| rat(k, 1)).collect()
    } else {
        (0..=m).map(|k| rat(if k % 2 == 0 { 2 * k + 1 } else { -(2 * k + 1) }, 2)).collect()
    }
}

/// Minimal polynomial of `z`: `z·∏(z² − k²)` for even `d`, `∏(z − z_k)` for odd `d`.
pub fn characteristic_poly(d: usize) -> Poly {
    roots(d).iter().fold(Poly::one(), |acc, r| acc.mul(&Poly::linear(-GR::from_rational(r), GR::one())))
}

/// `I_k(z, d)` as a polynomial in `z`, from `I_{m+1} = z·I_m − (m/4)(d−m+1)·I_{m−1}`.
pub fn invariant_poly(k: usize, d: usize) -> Poly {
    let mut prev = Poly::one();
    if k == 0 {
        return prev;
    }
    let mut cur = Poly::x();
    for m in 1..k {
        let c = GR::frac(m as i64 * (d as i64 - m as i64 + 1), 4);
        let next = Poly::x().mul(&cur).sub(&prev.scale(&c));
        prev = cur;
        cur = next;
    }
    cur
}

/// The full characteristic polynomial `W_d = I_{d+1}(z, d)`.
pub fn tower_characteristic_poly(d: usize) -> Poly {
    invariant_poly(d + 1, d)
}

/// Powers `z⁰ … z^top` of a matrix, for evaluating polynomials in it.
#[derive(Clone, Debug)]
pub struct PowerTable {
    powers: Vec<ConstMatrix>,
}

impl PowerTable {
    pub fn new(z: &ConstMatrix, top: usize) -> Self {
        let mut powers = vec![ConstMatrix::identity(z.rows())];
        for k in 0..top {
            let next = powers[k].mul(z);
            powers.push(next);
        }
        Self { powers }
    }

    pub fn eval(&self, p: &Poly) -> ConstMatrix {
        let n = self.powers[0].rows();
        let mut acc = ConstMatrix::zeros(n, n);
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.power(k).scale(c));
            }
        }
        acc
    }

    pub fn power(&self, k: usize) -> &ConstMatrix {
        assert!(k < self.powers.len(), "power table too short: need z^{k}");
        &self.powers[k]
    }
}

/// `z` together with its spectral data on `S ⊗ S`.
#[derive(Clone, Debug)]
pub struct SpinorPairSpace {
    pub d: usize,
    pub n: usize,
    pub z: ConstMatrix,
    pub roots: Vec<Rational>,
    pub projectors: Vec<ConstMatrix>,
    pub powers: PowerTable,
}

/// Lagrange basis polynomial for `roots[k]`.
pub fn lagrange_poly(roots: &[Rational], k: usize) -> Poly {
    let rk = &roots[k];
    let mut p = Poly::one();
    for (j, rj) in roots.iter().enumerate() {
        if j != k {
            let inv = GR::from_rational(&(Rational::one() / (rk - rj)));
            p = p.mul(&Poly::linear(-GR::from_rational(rj), GR::one())).scale(&inv);
        }
    }
    p
}

impl SpinorPairSpace {
    pub fn new(rep: &CliffordRep) -> Self {
        let z = build_z(rep);
        let roots = roots(rep.d());
        let powers = PowerTable::new(&z, rep.d() + 1);
        let projectors = (0..roots.len()).map(|k| powers.eval(&lagrange_poly(&roots, k))).collect();
        Self { d: rep.d(), n: rep.spinor_dim(), z, roots, projectors, powers }
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    /// Index of a root in [`Self::roots`].
    pub fn root_index(&self, r: &Rational) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    pub fn projector(&self, r: &Rational) -> &ConstMatrix {
        &self.projectors[self.root_index(r).expect("not a root")]
    }

    /// Evaluates a polynomial in `z`.
    pub fn eval(&self, p: &Poly) -> ConstMatrix {
        self.powers.eval(p)
    }

    /// Parity class of a root: `z_k mod 2` for even `d`; odd `d` has a single class.
    pub fn parity(&self, r: &Rational) -> usize {
        if self.d % 2 == 1 {
            return 0;
        }
        let k: i64 = r.to_integer().try_into().unwrap();
        k.rem_euclid(2) as usize
    }

    /// `(Π₊, Π₋)`: the odd-`z` and even-`z` sectors (even `d` only).
    pub fn chirality_projectors(&self) -> Result<(ConstMatrix, ConstMatrix)> {
        if self.d % 2 == 1 {
            return Err(crate::error::Error::OddDimension(self.d));
        }
        let dim = self.dim();
        let (mut plus, mut minus) = (ConstMatrix::zeros(dim, dim), ConstMatrix::zeros(dim, dim));
        for (r, p) in self.roots.iter().zip(&self.projectors) {
            if self.parity(r) == 1 {
                plus = plus.add(p);
            } else {
                minus = minus.add(p);
            }
        }
        Ok((plus, minus))
    }

    /// Sign of `P_k` in the spectral expansion of the permutation.
    pub fn permutation_sign(&self, r: &Rational) -> i64 {
        // even d: (−1)^{k(k−1)/2}; odd d: same rule at j = z_k − ½
        let j = if self.d % 2 == 0 { r.clone() } else { r - rat(1, 2) };
        let j: i64 = j.to_integer().try_into().unwrap();
        if (j * (j - 1) / 2).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `Σ_k sign_k P_k`.
    pub fn permutation_spectral(&self) -> ConstMatrix {
        let mut acc = ConstMatrix::zeros(self.dim(), self.dim());
        for (r, p) in self.roots.iter().zip(&self.projectors) {
            acc = if self.permutation_sign(r) > 0 { acc.add(p) } else { acc.sub(p) };
        }
        acc
    }

    /// Pairwise regrouping `Σ_k (−1)^k (P_{2k} + P_{2k+1})` (even `d`).
    pub fn permutation_paired(&self) -> ConstMatrix {
        let mut acc = ConstMatrix::zeros(self.dim(), self.dim());
        for (r, p) in self.roots.iter().zip(&self.projectors) {
            let j: i64 = r.to_integer().try_into().unwrap();
            let k = j.div_euclid(2);
            acc = if k.rem_euclid(2) == 0 { acc.add(p) } else { acc.sub(p) };
        }
        acc
    }
}

/// Permutation of the two tensor factors of `Cⁿ ⊗ Cⁿ`.
pub fn swap_operator(n: usize) -> ConstMatrix {
    ConstMatrix::from_triplets(n * n, n * n, (0..n * n).map(|k| (k, (k % n) * n + k / n, GR::one())))
}

/// How to build the permutation operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PermutationMethod {
    /// Signed sum of eigenprojectors of `z`.
    Spectral,
    /// Signed sum of `Γ_S ⊗ Γ_S` over a basis of the matrix algebra.
    GammaSum,
}

/// The permutation `𝒫` on `S ⊗ S`.
pub fn permutation_operator(rep: &CliffordRep, method: PermutationMethod) -> ConstMatrix {
    match method {
        PermutationMethod::Spectral => SpinorPairSpace::new(rep).permutation_spectral(),
        PermutationMethod::GammaSum => {
            // even d: all subsets of the d gammas; odd d: subsets of size ≤ m already span
            let m = rep.d() / 2;
            let top = if rep.d() % 2 == 0 { rep.d() } else { m };
            let n = rep.spinor_dim();
            let mut acc = ConstMatrix::zeros(n * n, n * n);
            for k in 0..=top {
                let j = gamma_pair_sum(rep, k);
                acc = if (k * k.saturating_sub(1) / 2) % 2 == 0 { acc.add(&j) } else { acc.sub(&j) };
            }
            acc.scale(&GR::frac(1, 1 << m))
        }
    }
}

/// The invariants `I₀ … I_{k_max}` on `S ⊗ S`.
#[derive(Clone, Debug)]
pub struct InvariantTower {
    pub d: usize,
    pub values: Vec<ConstMatrix>,
}

/// Builds the tower by the recurrence.
pub fn invariant_tower(space: &SpinorPairSpace, k_max: usize) -> InvariantTower {
    let d = space.d;
    let dim = space.dim();
    let mut values = vec![ConstMatrix::identity(dim)];
    if k_max >= 1 {
        values.push(space.z.clone());
    }
    for m in 1..k_max {
        let c = GR::frac(m as i64 * (d as i64 - m as i64 + 1), 4);
        let next = space.z.mul(&values[m]).sub(&values[m - 1].scale(&c));
        values.push(next);
    }
    InvariantTower { d, values }
}

/// Direct contraction form of `I_k`.
///
/// With unnormalized antisymmetrization `γ̃^{a₁…a_k} = k!·Γ_S` summed over
/// increasing index tuples, `I_k = (1/(k!·2^k)) Σ γ̃ ⊗ γ̃ = (k!/2^k)·Σ_S Γ_S ⊗ Γ_S`.
pub fn invariant_by_contraction(rep: &CliffordRep, k: usize) -> ConstMatrix {
    let fact: i64 = (1..=k as i64).product();
    gamma_pair_sum(rep, k).scale(&GR::frac(fact, 1 << k))
}

/// `c` with `a = c·b`, if the matrices are proportional (and `b ≠ 0`).
pub fn proportionality(a: &ConstMatrix, b: &ConstMatrix) -> Option<GR> {
    let (i, j, bv) = b.iter().next()?;
    let c = &a.get(i, j) / bv;
    (*a == b.scale(&c)).then_some(c)
}

/// Ranks of the eigenprojectors, paired with the root they belong to.
pub fn multiplicities(space: &SpinorPairSpace) -> Vec<(Rational, usize)> {
    space.roots.iter().cloned().zip(space.projectors.iter().map(ConstMatrix::rank)).collect()
}

/// Eigenspace dimensions from the kernel of `z − z_k`, independent of the projectors.
pub fn kernel_multiplicities(space: &SpinorPairSpace) -> Vec<(Rational, usize)> {
    let dim = space.dim();
    space
        .roots
        .iter()
        .map(|r| {
            let shifted = space.z.sub(&ConstMatrix::scalar(dim, GR::from_rational(r)));
            (r.clone(), dim - shifted.rank())
        })
        .collect()
}

/// `γ±ᵃ = γᵃ ⊗ I ± I ⊗ γᵃ`; checks `z·γ±ᵃ = γ±ᵃ·(−z ± 1)` for every `a`.
pub fn ladder_relations_hold(rep: &CliffordRep, z: &ConstMatrix) -> bool {
    let n = rep.spinor_dim();
    let id = ConstMatrix::identity(n);
    let big = ConstMatrix::identity(n * n);
    rep.gammas().iter().all(|g| {
        let (g1, g2) = (g.kron(&id), id.kron(g));
        let plus = g1.add(&g2);
        let minus = g1.sub(&g2);
        z.mul(&plus) == plus.mul(&big.sub(z)) && z.mul(&minus) == minus.mul(&z.neg().sub(&big))
    })
}

/// Odd `d = 2m+1`: the scalar `c` with `I_k = c·I_{2m+1−k}` for each `k ≤ m`.
pub fn odd_duality_constants(tower: &InvariantTower) -> Vec<(usize, Option<GR>)> {
    let d = tower.d;
    (0..=d / 2).map(|k| (k, proportionality(&tower.values[k], &tower.values[d - k]))).collect()
}

/// Ranks of `½(I ± 𝒫)` predicted from the spectral signs: `Σ_j binom(2m, m+j)` over `j` with sign `±`.
pub fn symmetric_dimension_formula(m: u64) -> (u64, u64) {
    let mut plus = 0;
    let mut minus = 0;
    for k in 0..=2 * m {
        let j = k as i64 - m as i64;
        if (j * (j - 1) / 2).rem_euclid(2) == 0 {
            plus += binomial(2 * m, k);
        } else {
            minus += binomial(2 * m, k);
        }
    }
    (plus, minus)
}

/// `(2^m ± 1)·2^{m−1}`
pub fn symmetric_dimension_closed(m: u32) -> (u64, u64) {
    let p = 1u64 << m;
    ((p + 1) * p / 2, (p - 1) * p / 2)
}

/// Is `r` an integer? Used to split roots by class.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one() || r.numer().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_gammas;

    fn space(d: usize) -> SpinorPairSpace {
        SpinorPairSpace::new(&build_gammas(d).unwrap())
    }

    #[test]
    fn z_spectrum_small() {
        let s3 = space(3);
        assert!(s3.z.trace().is_zero());
        let m3 = multiplicities(&s3);
        assert_eq!(m3, vec![(rat(1, 2), 3), (rat(-3, 2), 1)]);
        let m4: Vec<usize> = multiplicities(&space(4)).into_iter().map(|x| x.1).collect();
        assert_eq!(m4, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn characteristic_polys() {
        assert_eq!(characteristic_poly(4), Poly::from_ints(&[0, 4, 0, -5, 0, 1]));
        assert_eq!(invariant_poly(5, 4), characteristic_poly(4));
        let w5 = characteristic_poly(5);
        assert_eq!(w5.degree(), Some(3));
        assert_eq!(w5.eval(&GR::frac(5, 2)), GR::zero());
        for d in 3..=6 {
            let s = space(d);
            assert!(s.eval(&characteristic_poly(d)).is_zero());
            assert!(s.eval(&tower_characteristic_poly(d)).is_zero());
        }
    }

    #[test]
    fn projector_algebra() {
        let s = space(5);
        let dim = s.dim();
        let mut sum = ConstMatrix::zeros(dim, dim);
        for (i, p) in s.projectors.iter().enumerate() {
            sum = sum.add(p);
            for (j, q) in s.projectors.iter().enumerate() {
                let pq = p.mul(q);
                if i == j {
                    assert_eq!(&pq, p);
                } else {
                    assert!(pq.is_zero());
                }
            }
        }
        assert_eq!(sum, ConstMatrix::identity(dim));
        // P_{1/2} = −¼(z + 3/2)(z − 5/2)
        let p = Poly::linear(GR::frac(3, 2), GR::one()).mul(&Poly::linear(GR::frac(-5, 2), GR::one()));
        assert_eq!(s.eval(&p.scale(&GR::frac(-1, 4))), *s.projector(&rat(1, 2)));
    }

    #[test]
    fn permutation_forms_agree() {
        for d in 3..=6 {
            let rep = build_gammas(d).unwrap();
            let spectral = permutation_operator(&rep, PermutationMethod::Spectral);
            assert_eq!(spectral, swap_operator(rep.spinor_dim()), "d = {d}");
            assert_eq!(permutation_operator(&rep, PermutationMethod::GammaSum), spectral, "d = {d}");
        }
        let s = space(6);
        assert_eq!(s.permutation_paired(), s.permutation_spectral());
    }

    #[test]
    fn tower_matches_contraction() {
        let rep = build_gammas(4).unwrap();
        let s = SpinorPairSpace::new(&rep);
        let t = invariant_tower(&s, 5);
        for k in 0..=5 {
            assert_eq!(t.values[k], invariant_by_contraction(&rep, k), "k = {k}");
        }
        assert!(t.values[5].is_zero());
    }

    #[test]
    fn ladder() {
        let rep = build_gammas(4).unwrap();
        assert!(ladder_relations_hold(&rep, &build_z(&rep)));
    }

    #[test]
    fn dimension_formula() {
        for m in 1..=4 {
            let (p, q) = symmetric_dimension_closed(m as u32);
            assert_eq!(symmetric_dimension_formula(m), (p, q));
        }
    }
}
