//! Polynomials in the spectral parameters.
//!
//! [`Poly`] is a dense univariate polynomial over [`GaussianRational`].
//! [`SpectralPoly`] is either univariate in `u` or bivariate in `(u, v)`; the
//! bivariate form stores one [`Poly`] in `v` per power of `u`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational as GR, Rational};

/// Dense polynomial in one variable, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<GR>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GR::one())
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self { c: vec![GR::zero(), GR::one()] }
    }

    pub fn constant(a: GR) -> Self {
        Self::from_coeffs(vec![a])
    }

    /// `a + b·x`
    pub fn linear(a: GR, b: GR) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(mut c: Vec<GR>) -> Self {
        while c.last().is_some_and(GR::is_zero) {
            c.pop();
        }
        Self { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&k| GR::from_int(k)).collect())
    }

    pub fn coeffs(&self) -> &[GR] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> GR {
        self.c.get(k).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Constant term when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<GR> {
        match self.c.len() {
            0 => Some(GR::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> GR {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &GR) -> GR {
        let mut acc = GR::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self { c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![GR::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j].add_product(a, b);
            }
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, k: &GR) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { c: self.c.iter().map(|a| a * k).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `p(α·x + γ₀)`
    pub fn compose_affine(&self, alpha: &GR, gamma0: &GR) -> Self {
        let lin = Self::linear(gamma0.clone(), alpha.clone());
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(a.clone()));
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().inv().unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![GR::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] -= &(&t * b);
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero only if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common multiple.
    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        self.mul(o).div_exact(&self.gcd(o)).unwrap().monic()
    }

    pub(crate) fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let s = a.to_string();
            let compound = !a.is_real() && !a.re().eq(&Rational::from_integer(0.into()));
            let body = if k == 0 {
                if compound { format!("({s})") } else { s }
            } else {
                let mono = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                if a.is_one() {
                    mono
                } else if (-a).is_one() {
                    format!("-{mono}")
                } else if compound {
                    format!("({s}){mono}")
                } else {
                    format!("{s}{mono}")
                }
            };
            if !first && !body.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "u")
    }
}

/// Polynomial in `u`, or in `u` and `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpectralPoly {
    /// Univariate in `u`.
    U(Poly),
    /// `Σ u^i · p_i(v)`; never all-constant `p_i` (that normalizes to `U`).
    UV(Vec<Poly>),
}

impl Default for SpectralPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for SpectralPoly {
    fn from(p: Poly) -> Self {
        Self::U(p)
    }
}

impl From<GR> for SpectralPoly {
    fn from(a: GR) -> Self {
        Self::U(Poly::constant(a))
    }
}

impl SpectralPoly {
    pub fn zero() -> Self {
        Self::U(Poly::zero())
    }

    pub fn one() -> Self {
        Self::U(Poly::one())
    }

    pub fn constant(a: GR) -> Self {
        Self::U(Poly::constant(a))
    }

    pub fn u() -> Self {
        Self::U(Poly::x())
    }

    pub fn v() -> Self {
        Self::UV(vec![Poly::x()])
    }

    /// Builds from a `coeffs[i][j]` table of `u^i v^j` coefficients.
    pub fn from_table(t: Vec<Vec<GR>>) -> Self {
        Self::normalize(t.into_iter().map(Poly::from_coeffs).collect())
    }

    fn normalize(mut ps: Vec<Poly>) -> Self {
        while ps.last().is_some_and(Poly::is_zero) {
            ps.pop();
        }
        if ps.iter().all(Poly::is_constant) {
            Self::U(Poly::from_coeffs(ps.iter().map(|p| p.coeff(0)).collect()))
        } else {
            Self::UV(ps)
        }
    }

    fn rows(&self) -> Vec<Poly> {
        match self {
            Self::U(p) => p.coeffs().iter().map(|a| Poly::constant(a.clone())).collect(),
            Self::UV(ps) => ps.clone(),
        }
    }

    /// The univariate polynomial, when there is no `v` dependence.
    pub fn as_u(&self) -> Option<&Poly> {
        match self {
            Self::U(p) => Some(p),
            Self::UV(_) => None,
        }
    }

    pub fn is_bivariate(&self) -> bool {
        matches!(self, Self::UV(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::U(p) if p.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Self::U(p) if p.is_constant())
    }

    pub fn as_constant(&self) -> Option<GR> {
        match self {
            Self::U(p) => p.as_constant(),
            Self::UV(_) => None,
        }
    }

    /// Degree in `u`; `None` for zero.
    pub fn degree_u(&self) -> Option<usize> {
        match self {
            Self::U(p) => p.degree(),
            Self::UV(ps) => ps.len().checked_sub(1),
        }
    }

    /// Degree in `v`; `None` for zero.
    pub fn degree_v(&self) -> Option<usize> {
        match self {
            Self::U(p) => (!p.is_zero()).then_some(0),
            Self::UV(ps) => ps.iter().filter_map(Poly::degree).max(),
        }
    }

    /// Coefficient table `t[i][j]` of `u^i v^j`.
    pub fn table(&self) -> Vec<Vec<GR>> {
        match self {
            Self::U(p) => vec![p.coeffs().to_vec()],
            Self::UV(ps) => {
                let w = ps.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
                ps.iter().map(|p| (0..w).map(|j| p.coeff(j)).collect()).collect()
            }
        }
    }

    pub fn eval(&self, u: &GR, v: Option<&GR>) -> Result<GR> {
        match self {
            Self::U(p) => Ok(p.eval(u)),
            Self::UV(ps) => {
                let v = v.ok_or(Error::MissingVariable("v"))?;
                Ok(Poly::from_coeffs(ps.iter().map(|p| p.eval(v)).collect()).eval(u))
            }
        }
    }

    /// Substitutes a value for `v`, leaving a polynomial in `u`.
    pub fn eval_v(&self, v: &GR) -> Poly {
        match self {
            Self::U(p) => p.clone(),
            Self::UV(ps) => Poly::from_coeffs(ps.iter().map(|p| p.eval(v)).collect()),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Self::U(a), Self::U(b)) => Self::U(a.add(b)),
            _ => {
                let (a, b) = (self.rows(), o.rows());
                let n = a.len().max(b.len());
                let z = Poly::zero();
                Self::normalize((0..n).map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z))).collect())
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::U(p) => Self::U(p.neg()),
            Self::UV(ps) => Self::UV(ps.iter().map(Poly::neg).collect()),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Self::U(a), Self::U(b)) => Self::U(a.mul(b)),
            _ => {
                let (a, b) = (self.rows(), o.rows());
                if a.is_empty() || b.is_empty() {
                    return Self::zero();
                }
                let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
                for (i, p) in a.iter().enumerate() {
                    for (j, q) in b.iter().enumerate() {
                        out[i + j] = out[i + j].add(&p.mul(q));
                    }
                }
                Self::normalize(out)
            }
        }
    }

    pub fn scale(&self, k: &GR) -> Self {
        match self {
            Self::U(p) => Self::U(p.scale(k)),
            Self::UV(ps) => Self::normalize(ps.iter().map(|p| p.scale(k)).collect()),
        }
    }
}

impl fmt::Display for SpectralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::U(p) => p.fmt_var(f, "u"),
            Self::UV(ps) => {
                let mut first = true;
                for (i, p) in ps.iter().enumerate().rev() {
                    if p.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    write!(f, "(")?;
                    p.fmt_var(f, "v")?;
                    write!(f, ")")?;
                    match i {
                        0 => {}
                        1 => write!(f, "u")?,
                        _ => write!(f, "u^{i}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // u^2 - 1
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[-1, 1])));
        assert_eq!(a.gcd(&p(&[2, 2])), p(&[1, 1]));
        assert_eq!(p(&[1, 1]).lcm(&p(&[-1, 1])), a);
    }

    #[test]
    fn affine_composition() {
        // (u+1)^2 at u -> 2u + 3 is (2u+4)^2
        let q = p(&[1, 1]).pow(2).compose_affine(&GR::from_int(2), &GR::from_int(3));
        assert_eq!(q, p(&[16, 16, 4]));
    }

    #[test]
    fn bivariate_eval() {
        let s = SpectralPoly::u().add(&SpectralPoly::v());
        assert!(s.is_bivariate());
        assert_eq!(s.eval(&GR::from_int(1), Some(&GR::from_int(2))).unwrap(), GR::from_int(3));
        assert!(s.eval(&GR::one(), None).is_err());
        let back = s.sub(&SpectralPoly::v());
        assert_eq!(back, SpectralPoly::u());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 2]).to_string(), "2u^2-1");
        assert_eq!(p(&[0, -1]).to_string(), "-u");
        assert_eq!(SpectralPoly::u().add(&SpectralPoly::v()).to_string(), "(1)u+(v)");
    }

    fn arb() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-20i64..20, 0..5).prop_map(|c| Poly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn degree_additive(a in arb(), b in arb()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(a.mul(&b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }

        #[test]
        fn div_rem_identity(a in arb(), b in arb()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn eval_is_ring_map(a in arb(), b in arb(), x in -5i64..5) {
            let x = GR::from_int(x);
            prop_assert_eq!(a.mul(&b).eval(&x), &a.eval(&x) * &b.eval(&x));
            prop_assert_eq!(a.add(&b).eval(&x), &a.eval(&x) + &b.eval(&x));
        }
    }
}
