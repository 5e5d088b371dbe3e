//! Fundamental and spinorial R-matrices.
//!
//! Spinorial parts are built from the Beta-function ratios between eigenvalues of
//! `z` in one parity class, then cleared of denominators and normalized:
//! the entry polynomials are made coprime, the coefficients primitive Gaussian
//! integers, and the first nonzero entry of the unchecked `R` gets a positive
//! leading coefficient.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::invariants::{gamma_pair_sum, swap_operator, SpinorPairSpace};
use crate::matrix::{ConstMatrix, SparsePolyMatrix};
use crate::poly::Poly;
use crate::scalar::{rat, rational_to_string, GaussianRational as GR, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "algebra", content = "n", rename_all = "lowercase")]
pub enum Symmetry {
    So(usize),
    Sp(usize),
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symmetry::So(n) => write!(f, "so({n})"),
            Symmetry::Sp(n) => write!(f, "sp({n})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepPair {
    VectorVector,
    SpinorSpinor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chirality {
    /// Odd-`z` sector.
    Plus,
    /// Even-`z` sector.
    Minus,
    Full,
    NotApplicable,
}

impl Chirality {
    pub fn as_str(self) -> &'static str {
        match self {
            Chirality::Plus => "plus",
            Chirality::Minus => "minus",
            Chirality::Full => "full",
            Chirality::NotApplicable => "n/a",
        }
    }
}

/// A labeled R-matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RObject {
    pub symmetry: Symmetry,
    pub rep_pair: RepPair,
    pub chirality: Chirality,
    /// `true` for `Ř = 𝒫R`.
    pub checked: bool,
    pub degree: usize,
    /// Dimension of one tensor factor.
    pub factor_dim: usize,
    pub matrix: SparsePolyMatrix,
}

impl RObject {
    fn new(symmetry: Symmetry, rep_pair: RepPair, chirality: Chirality, checked: bool, factor_dim: usize, matrix: SparsePolyMatrix) -> Self {
        let degree = matrix.degree_u().unwrap_or(0);
        Self { symmetry, rep_pair, chirality, checked, degree, factor_dim, matrix }
    }

    /// `R(x)`.
    pub fn at(&self, x: &GR) -> ConstMatrix {
        self.matrix.eval(x, None).expect("univariate")
    }

    /// The other form (`R ↔ Ř`), obtained by multiplying with the permutation.
    pub fn toggled(&self) -> Self {
        let p = swap_operator(self.factor_dim).to_poly();
        Self { checked: !self.checked, matrix: p.mul(&self.matrix), ..self.clone() }
    }

    pub fn label(&self) -> String {
        let form = if self.checked { "checked" } else { "unchecked" };
        let pair = match self.rep_pair {
            RepPair::VectorVector => "vector",
            RepPair::SpinorSpinor => "spinor",
        };
        format!("{} {pair} {} {form}", self.symmetry, self.chirality.as_str())
    }
}

/// Upper and lower invariant metrics for `so(n)` (`ε = +1`) or `sp(n)` (`ε = −1`).
///
/// The symplectic upper form is `ε^{ab} = (−1)^a δ^{a+b, n+1}` in 1-based indices,
/// and the lower form is its negative, so that `ε^{ab}ε_{bc} = δ^a_c`.
pub fn metric(epsilon: i8, n: usize) -> Result<(ConstMatrix, ConstMatrix)> {
    match epsilon {
        1 => Ok((ConstMatrix::identity(n), ConstMatrix::identity(n))),
        -1 if n % 2 == 0 && n > 0 => {
            let upper = ConstMatrix::from_triplets(n, n, (0..n).map(|a| (a, n - 1 - a, GR::from_int(if a % 2 == 0 { -1 } else { 1 }))));
            Ok((upper.clone(), upper.neg()))
        }
        -1 => Err(Error::OddSymplectic(n)),
        _ => Err(Error::DimensionMismatch(format!("epsilon must be ±1, got {epsilon}"))),
    }
}

/// `K^{a₁a₂}_{b₁b₂} = ε^{a₁a₂} ε_{b₁b₂}`.
pub fn k_operator(epsilon: i8, n: usize) -> Result<ConstMatrix> {
    let (upper, lower) = metric(epsilon, n)?;
    let mut trips = Vec::new();
    for (a1, a2, x) in upper.iter() {
        for (b1, b2, y) in lower.iter() {
            trips.push((a1 * n + a2, b1 * n + b2, x * y));
        }
    }
    Ok(ConstMatrix::from_triplets(n * n, n * n, trips))
}

/// The scalar `c` with `K² = c·K`.
pub fn k_square_constant(epsilon: i8, n: usize) -> Result<GR> {
    let (upper, lower) = metric(epsilon, n)?;
    Ok(lower.iter().map(|(a, b, x)| x * &upper.get(a, b)).fold(GR::zero(), |s, x| s + x))
}

/// `R(u) = u(u + n/2 − ε)·I + (u + n/2 − ε)·P − εu·K`.
pub fn fundamental_r(epsilon: i8, n: usize) -> Result<RObject> {
    let k = k_operator(epsilon, n)?;
    let shift = GR::frac(n as i64 - 2 * epsilon as i64, 2);
    let lin = Poly::linear(shift.clone(), GR::one());
    let id = ConstMatrix::identity(n * n).times_poly(&Poly::x().mul(&lin));
    let p = swap_operator(n).times_poly(&lin);
    let kk = k.times_poly(&Poly::linear(GR::zero(), GR::from_int(-(epsilon as i64))));
    let sym = if epsilon == 1 { Symmetry::So(n) } else { Symmetry::Sp(n) };
    Ok(RObject::new(sym, RepPair::VectorVector, Chirality::NotApplicable, false, n, id.add(&p).add(&kk)))
}

/// Ratio `B((z_k+1−u)/2, u) / B((z_ref+1−u)/2, u)` as a reduced fraction of polynomials in `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaCoefficient {
    pub z_k: Rational,
    pub z_ref: Rational,
    pub numerator: Poly,
    pub denominator: Poly,
}

impl BetaCoefficient {
    pub fn eval(&self, u: &GR) -> Option<GR> {
        let inv = self.denominator.eval(u).inv()?;
        Some(&self.numerator.eval(u) * &inv)
    }
}

impl Serialize for BetaCoefficient {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BetaCoefficient", 4)?;
        st.serialize_field("z_k", &rational_to_string(&self.z_k))?;
        st.serialize_field("z_ref", &rational_to_string(&self.z_ref))?;
        st.serialize_field("numerator", &crate::json::poly(&self.numerator.clone().into()))?;
        st.serialize_field("denominator", &crate::json::poly(&self.denominator.clone().into()))?;
        st.end()
    }
}

/// Iterates `B(x+1, y) = x/(x+y)·B(x, y)` from `z_ref` to `z_k`.
pub fn beta_ratio(z_k: &Rational, z_ref: &Rational) -> Result<BetaCoefficient> {
    let half = (z_k - z_ref) / rat(2, 1);
    if !half.is_integer() {
        return Err(Error::CrossParity(rational_to_string(z_k), rational_to_string(z_ref)));
    }
    let j: i64 = half.to_integer().try_into().map_err(|_| Error::ResourceGuard("root gap too large".into()))?;
    let (lo, steps) = if j >= 0 { (z_ref, j) } else { (z_k, -j) };
    let (mut num, mut den) = (Poly::one(), Poly::one());
    for i in 0..steps {
        let c = GR::from_rational(&(lo + Rational::from_integer((1 + 2 * i).into())));
        num = num.mul(&Poly::linear(c.clone(), -GR::one()));
        den = den.mul(&Poly::linear(c, GR::one()));
    }
    if j < 0 {
        std::mem::swap(&mut num, &mut den);
    }
    let g = num.gcd(&den);
    let (num, den) = (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap());
    let lead = den.leading().inv().unwrap();
    Ok(BetaCoefficient { z_k: z_k.clone(), z_ref: z_ref.clone(), numerator: num.scale(&lead), denominator: den.scale(&lead) })
}

/// Scales a polynomial matrix to primitive Gaussian-integer coefficients with a
/// positive leading coefficient in its first nonzero entry; returns the factor used.
pub fn primitive_normalize(m: &SparsePolyMatrix) -> (SparsePolyMatrix, GR) {
    let coeffs: Vec<GR> = m.iter().flat_map(|(_, _, p)| p.table().into_iter().flatten()).filter(|c| !c.is_zero()).collect();
    if coeffs.is_empty() {
        return (m.clone(), GR::one());
    }
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator()));
    let mut g = BigInt::zero();
    for c in &coeffs {
        let (r, i) = c.scale_int(&den).numerators();
        g = g.gcd(&r).gcd(&i);
    }
    let mut factor = GR::from_rational(&Rational::new(den, g.abs()));
    let (_, _, first) = m.iter().next().unwrap();
    let top = first.table().into_iter().flatten().rfind(|c| !c.is_zero()).unwrap();
    if (&top * &factor).leading_sign().is_lt() {
        factor = -factor;
    }
    (m.map(|p| p.scale(&factor)), factor)
}

fn entry_gcd(coeffs: &[Poly]) -> Poly {
    coeffs.iter().fold(Poly::zero(), |g, p| g.gcd(p))
}

/// One parity class of the spinorial solution.
#[derive(Clone, Debug)]
pub struct SpinorPart {
    pub chirality: Chirality,
    /// `Ř = Σ coefficient_k·P_k` after normalization.
    pub coefficients: Vec<(Rational, Poly)>,
    pub checked: RObject,
    pub unchecked: RObject,
}

impl SpinorPart {
    /// Number of independent invariant tensors in the part: distinct eigenvalue
    /// functions up to sign (`c·(P_k − P_{−k})` is a single tensor).
    pub fn tensor_count(&self) -> usize {
        let mut seen: Vec<Poly> = Vec::new();
        for (_, c) in &self.coefficients {
            if !seen.contains(c) && !seen.contains(&c.neg()) {
                seen.push(c.clone());
            }
        }
        seen.len()
    }
}

/// Builds the normalized parts from an already computed pair space.
pub fn spinor_parts(space: &SpinorPairSpace) -> Result<Vec<SpinorPart>> {
    let d = space.d;
    let classes: Vec<(Chirality, Vec<Rational>)> = if d % 2 == 1 {
        vec![(Chirality::Full, space.roots.clone())]
    } else {
        [(Chirality::Minus, 0), (Chirality::Plus, 1)]
            .into_iter()
            .map(|(c, p)| (c, space.roots.iter().filter(|r| space.parity(r) == p).cloned().collect()))
            .collect()
    };
    let perm = swap_operator(space.n).to_poly();
    let mut out = Vec::new();
    for (chirality, class) in classes {
        let z_ref = class.iter().max().unwrap().clone();
        let ratios = class.iter().map(|r| beta_ratio(r, &z_ref)).collect::<Result<Vec<_>>>()?;
        let common = ratios.iter().fold(Poly::one(), |acc, b| acc.lcm(&b.denominator));
        let mut coeffs: Vec<Poly> = ratios.iter().map(|b| b.numerator.mul(&common.div_exact(&b.denominator).unwrap())).collect();
        let g = entry_gcd(&coeffs);
        coeffs = coeffs.iter().map(|c| c.div_exact(&g).unwrap()).collect();
        let build = |cs: &[Poly]| {
            class.iter().zip(cs).fold(SparsePolyMatrix::zeros(space.dim(), space.dim()), |acc, (r, c)| acc.add(&space.projector(r).times_poly(c)))
        };
        let (unchecked, factor) = primitive_normalize(&perm.mul(&build(&coeffs)));
        let coeffs: Vec<Poly> = coeffs.iter().map(|c| c.scale(&factor)).collect();
        let checked = perm.mul(&unchecked);
        let sym = Symmetry::So(d);
        out.push(SpinorPart {
            chirality,
            coefficients: class.into_iter().zip(coeffs).collect(),
            checked: RObject::new(sym, RepPair::SpinorSpinor, chirality, true, space.n, checked),
            unchecked: RObject::new(sym, RepPair::SpinorSpinor, chirality, false, space.n, unchecked),
        });
    }
    Ok(out)
}

/// Spinorial R-matrices for `3 ≤ d ≤ 8`: checked and unchecked form of each part.
pub fn spinor_r(rep: &CliffordRep) -> Result<Vec<RObject>> {
    if !(3..=8).contains(&rep.d()) {
        return Err(Error::DimensionOutOfRange(rep.d(), "3..=8"));
    }
    let parts = spinor_parts(&SpinorPairSpace::new(rep))?;
    Ok(parts.into_iter().flat_map(|p| [p.checked, p.unchecked]).collect())
}

/// Sum of the checked parts (the full `Ř` with unit relative weights).
pub fn combined_checked(parts: &[SpinorPart]) -> SparsePolyMatrix {
    let dim = parts[0].checked.matrix.rows();
    parts.iter().fold(SparsePolyMatrix::zeros(dim, dim), |acc, p| acc.add(&p.checked.matrix))
}

/// Ratio `w_{k+2}/w_k` of consecutive coefficients in the Shankar–Witten sum
/// `Σ_k w_k Σ_{|S|=k} Γ_S ⊗ Γ_S`, as `(numerator, denominator)` in `u`.
///
/// This is `(k + u)/(k + 2 − u − d)` for both parities.
pub fn sw_step(k: usize, d: usize) -> (Poly, Poly) {
    let k = k as i64;
    (Poly::linear(GR::from_int(k), GR::one()), Poly::linear(GR::from_int(k + 2 - d as i64), -GR::one()))
}

/// The same ratio read off the quoted Gamma-function coefficients; for odd `k` the
/// denominator is `k − u − d`, which is off by one from [`sw_step`].
pub fn sw_step_quoted(k: usize, d: usize) -> (Poly, Poly) {
    if k % 2 == 0 {
        return sw_step(k, d);
    }
    let k = k as i64;
    (Poly::linear(GR::from_int(k), GR::one()), Poly::linear(GR::from_int(k - d as i64), -GR::one()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

fn sw_sum(rep: &CliffordRep, parity: Parity, step: fn(usize, usize) -> (Poly, Poly)) -> SparsePolyMatrix {
    let d = rep.d();
    let start = if parity == Parity::Even { 0 } else { 1 };
    let ks: Vec<usize> = (start..=d).step_by(2).collect();
    // w_k = Π num / Π den; multiply through by the full product of denominators
    let mut nums = vec![Poly::one()];
    let mut dens = vec![Poly::one()];
    for w in ks.windows(2) {
        let (a, b) = step(w[0], d);
        nums.push(nums.last().unwrap().mul(&a));
        dens.push(dens.last().unwrap().mul(&b));
    }
    let total = dens.last().unwrap().clone();
    let dim = rep.spinor_dim().pow(2);
    let mut acc = SparsePolyMatrix::zeros(dim, dim);
    for (i, &k) in ks.iter().enumerate() {
        let c = nums[i].mul(&total.div_exact(&dens[i]).unwrap());
        acc = acc.add(&gamma_pair_sum(rep, k).times_poly(&c));
    }
    acc
}

/// Shankar–Witten form restricted to one parity of `k`, denominators cleared.
pub fn sw_expansion(rep: &CliffordRep, parity: Parity) -> SparsePolyMatrix {
    sw_sum(rep, parity, sw_step)
}

/// As [`sw_expansion`] but with the quoted odd-`k` Gamma ratio.
pub fn sw_expansion_quoted(rep: &CliffordRep, parity: Parity) -> SparsePolyMatrix {
    sw_sum(rep, parity, sw_step_quoted)
}

/// The scalar `c` with `a = c·b` if the matrices are proportional.
pub fn const_proportionality(a: &ConstMatrix, b: &ConstMatrix) -> Option<GR> {
    if b.is_zero() {
        return a.is_zero().then(GR::one);
    }
    crate::invariants::proportionality(a, b)
}

/// Whether `a(u) ∝ b(u)` at every sample point (with a nonzero factor).
pub fn proportional_at(a: &SparsePolyMatrix, b: &SparsePolyMatrix, points: &[GR]) -> bool {
    points.iter().all(|u| {
        let (x, y) = (a.eval(u, None).unwrap(), b.eval(u, None).unwrap());
        matches!(const_proportionality(&x, &y), Some(c) if !c.is_zero())
    })
}

/// Outcome of [`verify_defining_relations`].
#[derive(Clone, Debug, Serialize)]
pub struct DefiningReport {
    pub d: usize,
    pub commutes_with_z: bool,
    pub symmetry_condition: bool,
    pub constant_term_relation: bool,
    pub eigenvalue_recursion: bool,
    pub pass: bool,
}

/// Checks the defining relations of `Ř` (sum of all parts):
/// `[Ř, z] = 0`; `[Ř, G^{ab}⊗I + I⊗G^{ab}] = 0`; the `v⁰` part of the check-form
/// RLL relation, `Ř(u)·L₁(u)L₂(0) = L₁(0)L₂(u)·Ř(u)` on `V⊗S⊗S`; and the ladder
/// recursion `c(z+2)·(z+1+u) = c(z)·(z+1−u)` between adjacent roots of each class.
pub fn verify_defining_relations(rep: &CliffordRep, space: &SpinorPairSpace, parts: &[SpinorPart]) -> DefiningReport {
    let rhat = combined_checked(parts);
    let z = space.z.to_poly();
    let commutes_with_z = rhat.mul(&z) == z.mul(&rhat);

    let n = rep.spinor_dim();
    let id = ConstMatrix::identity(n);
    let gens = rep.generators();
    let mut symmetry_condition = true;
    'outer: for a in 0..rep.d() {
        for b in 0..rep.d() {
            let g = &gens.g[a][b];
            let two = g.kron(&id).add(&id.kron(g)).to_poly();
            if rhat.mul(&two) != two.mul(&rhat) {
                symmetry_condition = false;
                break 'outer;
            }
        }
    }

    let l = rep.l_operator();
    let l0 = l.eval(&GR::zero(), None).unwrap().to_poly();
    let dims = [rep.d(), n, n];
    let (l1u, l2u) = (l.embed(&dims, &[0, 1]), l.embed(&dims, &[0, 2]));
    let (l10, l20) = (l0.embed(&dims, &[0, 1]), l0.embed(&dims, &[0, 2]));
    let big = rhat.embed(&dims, &[1, 2]);
    let constant_term_relation = big.mul(&l1u).mul(&l20) == l10.mul(&l2u).mul(&big);

    let eigenvalue_recursion = parts.iter().all(|p| {
        let mut cs = p.coefficients.clone();
        cs.sort_by(|x, y| x.0.cmp(&y.0));
        cs.windows(2).all(|w| {
            let zc = GR::from_rational(&(&w[0].0 + Rational::one()));
            let lhs = w[1].1.mul(&Poly::linear(zc.clone(), GR::one()));
            let rhs = w[0].1.mul(&Poly::linear(zc, -GR::one()));
            (&w[1].0 - &w[0].0) == rat(2, 1) && lhs == rhs
        })
    });
    let pass = commutes_with_z && symmetry_condition && constant_term_relation && eigenvalue_recursion;
    DefiningReport { d: rep.d(), commutes_with_z, symmetry_condition, constant_term_relation, eigenvalue_recursion, pass }
}

/// `tr₂(A·γᵃ₂·B·γᵇ₂)` for all `a, b`, with `γ₂ = I ⊗ γ`.
pub fn gamma_sandwich_traces(rep: &CliffordRep, a_op: &ConstMatrix, b_op: &ConstMatrix) -> Vec<Vec<ConstMatrix>> {
    let n = rep.spinor_dim();
    let id = ConstMatrix::identity(n);
    let g2: Vec<ConstMatrix> = rep.gammas().iter().map(|g| id.kron(g)).collect();
    (0..rep.d())
        .map(|a| {
            let left = a_op.mul(&g2[a]).mul(b_op);
            (0..rep.d()).map(|b| left.mul(&g2[b]).partial_trace(n, n, 2).unwrap()).collect()
        })
        .collect()
}

/// Writes `blocks[a][b] = s·L^{ab}(x)` if possible, returning `(s, x)`.
pub fn fit_l_operator(rep: &CliffordRep, blocks: &[Vec<ConstMatrix>]) -> Option<(GR, GR)> {
    let gens = rep.generators();
    let g = &gens.g[0][1];
    let (i, j, gv) = g.iter().next()?;
    let s = &blocks[0][1].get(i, j) / gv;
    if s.is_zero() {
        return None;
    }
    let x = &blocks[0][0].get(0, 0) / &s;
    let n = rep.spinor_dim();
    let ok = (0..rep.d()).all(|a| {
        (0..rep.d()).all(|b| {
            let expect = if a == b { ConstMatrix::scalar(n, x.clone()) } else { gens.g[a][b].clone() };
            blocks[a][b] == expect.scale(&s)
        })
    });
    ok.then_some((s, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_gammas;
    use crate::poly::SpectralPoly;

    fn u(k: i64) -> GR {
        GR::from_int(k)
    }

    #[test]
    fn fundamental_examples() {
        let sp2 = fundamental_r(-1, 2).unwrap();
        // R^{−1,−1}_{−1,−1} = (u+1)(u+2)
        assert_eq!(sp2.matrix.get(0, 0), SpectralPoly::U(Poly::from_ints(&[2, 3, 1])));
        let so4 = fundamental_r(1, 4).unwrap();
        assert_eq!(so4.at(&GR::zero()), swap_operator(4).scale(&u(1)));
        let k = k_operator(1, 4).unwrap();
        assert_eq!(k.mul(&k), k.scale(&u(4)));
        assert_eq!(k_square_constant(-1, 4).unwrap(), u(-4));
        assert!(matches!(fundamental_r(-1, 3), Err(Error::OddSymplectic(3))));
    }

    #[test]
    fn beta_examples() {
        let b = beta_ratio(&rat(2, 1), &rat(0, 1)).unwrap();
        assert_eq!(b.eval(&u(3)).unwrap(), GR::frac(-2, 4));
        let b = beta_ratio(&rat(3, 1), &rat(1, 1)).unwrap();
        assert_eq!(b.eval(&u(1)).unwrap(), GR::frac(1, 3));
        let one = beta_ratio(&rat(5, 2), &rat(5, 2)).unwrap();
        assert!(one.numerator.is_constant() && one.eval(&u(7)) == Some(GR::one()));
        assert!(matches!(beta_ratio(&rat(1, 1), &rat(0, 1)), Err(Error::CrossParity(..))));
        // round trip
        let up = beta_ratio(&rat(-3, 1), &rat(3, 1)).unwrap();
        let down = beta_ratio(&rat(3, 1), &rat(-3, 1)).unwrap();
        assert_eq!(up.numerator, down.denominator.scale(&(up.numerator.leading() / down.denominator.leading())));
    }

    #[test]
    fn so3_is_two_u_plus_permutation() {
        let rs = spinor_r(&build_gammas(3).unwrap()).unwrap();
        let r = rs.iter().find(|r| !r.checked).unwrap();
        let expect = ConstMatrix::identity(4).times_poly(&Poly::from_ints(&[0, 2])).add(&swap_operator(2).to_poly());
        assert_eq!(r.matrix, expect);
    }

    #[test]
    fn so4_parts() {
        let space = SpinorPairSpace::new(&build_gammas(4).unwrap());
        let parts = spinor_parts(&space).unwrap();
        let (pi_plus, pi_minus) = space.chirality_projectors().unwrap();
        let plus = parts.iter().find(|p| p.chirality == Chirality::Plus).unwrap();
        assert_eq!(plus.unchecked.degree, 0);
        assert_eq!(plus.unchecked.matrix, pi_plus.to_poly());
        let minus = parts.iter().find(|p| p.chirality == Chirality::Minus).unwrap();
        assert_eq!(minus.checked.matrix.mul(&pi_minus.to_poly()), minus.checked.matrix);
        assert!(minus.checked.matrix.mul(&plus.checked.matrix).is_zero());
    }

    #[test]
    fn defining_relations_small() {
        for d in 3..=5 {
            let rep = build_gammas(d).unwrap();
            let space = SpinorPairSpace::new(&rep);
            let parts = spinor_parts(&space).unwrap();
            let rep_ = verify_defining_relations(&rep, &space, &parts);
            assert!(rep_.pass, "{rep_:?}");
        }
    }

    #[test]
    fn sw_matches_parts_d4() {
        let rep = build_gammas(4).unwrap();
        let parts = spinor_parts(&SpinorPairSpace::new(&rep)).unwrap();
        let pts = [u(1), u(2), u(3)];
        for parity in [Parity::Even, Parity::Odd] {
            let sw = sw_expansion(&rep, parity);
            assert!(parts.iter().any(|p| proportional_at(&sw, &p.checked.matrix, &pts)), "{parity:?}");
        }
    }
}
