//! Exact scalars.
//!
//! [`GaussianRational`] is the field `Q(i)` used for every matrix entry. Values are
//! kept as `(re + im·i) / den` over a shared positive denominator, fully reduced.
//! Small values live in machine words; anything that would overflow moves to
//! arbitrary precision and comes back down when it fits again.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Shorthand for the rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats a rational as `"p/q"` (always with an explicit denominator).
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Small { re: i64, im: i64, den: i64 },
    Big { re: BigInt, im: BigInt, den: BigInt },
}

/// Exact complex number `a + b·i` with rational `a`, `b`.
#[derive(Clone, Debug)]
pub struct GaussianRational(Repr);

const LIM: i128 = i64::MAX as i128;

fn fits(x: i128) -> bool {
    (-LIM..=LIM).contains(&x)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl GaussianRational {
    pub fn zero() -> Self {
        Self(Repr::Small { re: 0, im: 0, den: 1 })
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self(Repr::Small { re: 0, im: 1, den: 1 })
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_i128(n as i128, 0, 1)
    }

    /// `p/q` as a real Gaussian rational. Panics if `q == 0`.
    pub fn frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_i128(p as i128, 0, q as i128)
    }

    pub fn new(re: Rational, im: Rational) -> Self {
        let den = re.denom().lcm(im.denom());
        let r = re.numer() * (&den / re.denom());
        let i = im.numer() * (&den / im.denom());
        Self::from_big(r, i, den)
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::from_big(r.numer().clone(), BigInt::zero(), r.denom().clone())
    }

    fn from_i128(mut re: i128, mut im: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            re = -re;
            im = -im;
            den = -den;
        }
        if re == 0 && im == 0 {
            return Self::zero();
        }
        if den != 1 {
            let g = gcd_u128(gcd_u128(re.unsigned_abs(), im.unsigned_abs()), den as u128) as i128;
            if g > 1 {
                re /= g;
                im /= g;
                den /= g;
            }
        }
        if fits(re) && fits(im) && fits(den) {
            Self(Repr::Small { re: re as i64, im: im as i64, den: den as i64 })
        } else {
            Self::from_big(BigInt::from(re), BigInt::from(im), BigInt::from(den))
        }
    }

    fn from_big(mut re: BigInt, mut im: BigInt, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            re = -re;
            im = -im;
            den = -den;
        }
        if re.is_zero() && im.is_zero() {
            return Self::zero();
        }
        let g = re.gcd(&im).gcd(&den);
        if !g.is_one() {
            re /= &g;
            im /= &g;
            den /= &g;
        }
        match (re.to_i64(), im.to_i64(), den.to_i64()) {
            (Some(r), Some(i), Some(d)) if r != i64::MIN && i != i64::MIN => {
                Self(Repr::Small { re: r, im: i, den: d })
            }
            _ => Self(Repr::Big { re, im, den }),
        }
    }

    fn big_parts(&self) -> (BigInt, BigInt, BigInt) {
        match &self.0 {
            Repr::Small { re, im, den } => (BigInt::from(*re), BigInt::from(*im), BigInt::from(*den)),
            Repr::Big { re, im, den } => (re.clone(), im.clone(), den.clone()),
        }
    }

    pub fn re(&self) -> Rational {
        let (r, _, d) = self.big_parts();
        Rational::new(r, d)
    }

    pub fn im(&self) -> Rational {
        let (_, i, d) = self.big_parts();
        Rational::new(i, d)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { re: 0, im: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { re: 1, im: 0, den: 1 })
    }

    pub fn is_real(&self) -> bool {
        match &self.0 {
            Repr::Small { im, .. } => *im == 0,
            Repr::Big { im, .. } => im.is_zero(),
        }
    }

    /// True when both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big { den, .. } => den.is_one(),
        }
    }

    /// Real value as a rational, if the imaginary part vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_real().then(|| self.re())
    }

    pub fn conj(&self) -> Self {
        match &self.0 {
            Repr::Small { re, im, den } => Self(Repr::Small { re: *re, im: -*im, den: *den }),
            Repr::Big { re, im, den } => Self(Repr::Big { re: re.clone(), im: -im, den: den.clone() }),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Repr::Small { re, im, den } = self.0 {
            let (r, i, d) = (re as i128, im as i128, den as i128);
            let n = r * r + i * i;
            if let (Some(a), Some(b)) = (r.checked_mul(d), i.checked_mul(d)) {
                return Some(Self::from_i128(a, -b, n));
            }
        }
        let (r, i, d) = self.big_parts();
        let n = &r * &r + &i * &i;
        Some(Self::from_big(r * &d, -(i * &d), n))
    }

    /// `self += a * b` without an intermediate allocation on the fast path.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        if let (
            Repr::Small { re: r0, im: i0, den: 1 },
            Repr::Small { re: r1, im: i1, den: 1 },
            Repr::Small { re: r2, im: i2, den: 1 },
        ) = (&self.0, &a.0, &b.0)
        {
            let re = *r0 as i128 + (*r1 as i128) * (*r2 as i128) - (*i1 as i128) * (*i2 as i128);
            let im = *i0 as i128 + (*r1 as i128) * (*i2 as i128) + (*i1 as i128) * (*r2 as i128);
            if fits(re) && fits(im) {
                self.0 = Repr::Small { re: re as i64, im: im as i64, den: 1 };
                return;
            }
        }
        let p = a * b;
        *self += &p;
    }

    /// Integer-valued real part as `i64`, when it is one.
    pub fn to_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small { re, im: 0, den: 1 } => Some(re),
            _ => None,
        }
    }

    /// Least common multiple of the denominators (as the shared denominator).
    pub fn denominator(&self) -> BigInt {
        self.big_parts().2
    }

    /// Numerators over the shared denominator.
    pub fn numerators(&self) -> (BigInt, BigInt) {
        let (r, i, _) = self.big_parts();
        (r, i)
    }

    /// Multiply by an integer.
    pub fn scale_int(&self, k: &BigInt) -> Self {
        let (r, i, d) = self.big_parts();
        Self::from_big(r * k, i * k, d)
    }

    /// A stable sign convention for normalizing: the sign of the real part,
    /// or of the imaginary part when the real part vanishes.
    pub fn leading_sign(&self) -> Ordering {
        let (r, i, _) = self.big_parts();
        if !r.is_zero() {
            r.sign().cmp_zero()
        } else {
            i.sign().cmp_zero()
        }
    }
}

trait CmpZero {
    fn cmp_zero(self) -> Ordering;
}

impl CmpZero for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for GaussianRational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { re: a, im: b, den: c }, Repr::Small { re: x, im: y, den: z }) => {
                a == x && b == y && c == z
            }
            (Repr::Big { re: a, im: b, den: c }, Repr::Big { re: x, im: y, den: z }) => {
                a == x && b == y && c == z
            }
            _ => false,
        }
    }
}

impl Eq for GaussianRational {}

impl Hash for GaussianRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { re, im, den } => (0u8, re, im, den).hash(state),
            Repr::Big { re, im, den } => (1u8, re, im, den).hash(state),
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<&Rational> for GaussianRational {
    fn from(r: &Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::from_rational(&r)
    }
}

fn add_impl(a: &GaussianRational, b: &GaussianRational, sign: i128) -> GaussianRational {
    if let (Repr::Small { re: r1, im: i1, den: d1 }, Repr::Small { re: r2, im: i2, den: d2 }) = (&a.0, &b.0) {
        let (r1, i1, d1, r2, i2, d2) = (*r1 as i128, *i1 as i128, *d1 as i128, *r2 as i128, *i2 as i128, *d2 as i128);
        if d1 == d2 {
            return GaussianRational::from_i128(r1 + sign * r2, i1 + sign * i2, d1);
        }
        return GaussianRational::from_i128(r1 * d2 + sign * r2 * d1, i1 * d2 + sign * i2 * d1, d1 * d2);
    }
    let (r1, i1, d1) = a.big_parts();
    let (r2, i2, d2) = b.big_parts();
    let s = BigInt::from(sign);
    GaussianRational::from_big(&r1 * &d2 + &s * &r2 * &d1, &i1 * &d2 + &s * &i2 * &d1, d1 * d2)
}

fn mul_impl(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    if let (Repr::Small { re: r1, im: i1, den: d1 }, Repr::Small { re: r2, im: i2, den: d2 }) = (&a.0, &b.0) {
        let (r1, i1, d1, r2, i2, d2) = (*r1 as i128, *i1 as i128, *d1 as i128, *r2 as i128, *i2 as i128, *d2 as i128);
        return GaussianRational::from_i128(r1 * r2 - i1 * i2, r1 * i2 + i1 * r2, d1 * d2);
    }
    let (r1, i1, d1) = a.big_parts();
    let (r2, i2, d2) = b.big_parts();
    GaussianRational::from_big(&r1 * &r2 - &i1 * &i2, &r1 * &i2 + &i1 * &r2, d1 * d2)
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
        impl $tr<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, 1));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, -1));
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, |a, b| mul_impl(a, &b.inv().expect("division by zero")));

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        match &self.0 {
            Repr::Small { re, im, den } => GaussianRational(Repr::Small { re: -re, im: -im, den: *den }),
            Repr::Big { re, im, den } => GaussianRational(Repr::Big { re: -re, im: -im, den: den.clone() }),
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        *self = add_impl(self, rhs, 1);
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        *self = add_impl(self, rhs, -1);
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = mul_impl(self, rhs);
    }
}

fn fmt_rat(f: &mut fmt::Formatter<'_>, n: &BigInt, d: &BigInt) -> fmt::Result {
    let g = n.gcd(d);
    let (n, d) = if g.is_zero() { (n.clone(), d.clone()) } else { (n / &g, d / &g) };
    if d.is_one() {
        write!(f, "{n}")
    } else {
        write!(f, "{n}/{d}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, i, d) = self.big_parts();
        if i.is_zero() {
            return fmt_rat(f, &r, &d);
        }
        if !r.is_zero() {
            fmt_rat(f, &r, &d)?;
            if i.is_positive() {
                write!(f, "+")?;
            }
        }
        if i == -BigInt::one() && d.is_one() {
            return write!(f, "-i");
        }
        if i.is_one() && d.is_one() {
            return write!(f, "i");
        }
        fmt_rat(f, &i, &d)?;
        write!(f, "i")
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts real rationals (`"3/4"`); complex values go through JSON.
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(Self::from_rational(&parse_rational(s)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    #[test]
    fn reduced_and_equal() {
        assert_eq!(GaussianRational::frac(2, 4), GaussianRational::frac(1, 2));
        assert_eq!(GaussianRational::frac(-3, -6), GaussianRational::frac(1, 2));
        assert!(GaussianRational::frac(0, 7).is_zero());
        assert_eq!(GaussianRational::i() * GaussianRational::i(), GaussianRational::from_int(-1));
    }

    #[test]
    fn display() {
        assert_eq!(g((1, 2), (-3, 4)).to_string(), "1/2-3/4i");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        assert_eq!(GaussianRational::from_int(-5).to_string(), "-5");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = GaussianRational::from_int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.re(), Rational::from_integer(BigInt::from(i64::MAX) * BigInt::from(i64::MAX)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
    }

    #[test]
    fn inverse() {
        let z = g((3, 1), (4, 1));
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn add_product_matches() {
        let mut acc = g((1, 3), (2, 1));
        let a = g((5, 2), (-1, 1));
        let b = g((7, 1), (1, 5));
        let expect = &acc + &(&a * &b);
        acc.add_product(&a, &b);
        assert_eq!(acc, expect);
    }

    fn arb() -> impl Strategy<Value = GaussianRational> {
        (-1000i64..1000, 1i64..50, -1000i64..1000, 1i64..50)
            .prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(a in arb(), b in arb()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn mul_div_roundtrip(a in arb(), b in arb()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(&(&a * &b) / &b, a);
        }

        #[test]
        fn distributive(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn parts_roundtrip(a in arb()) {
            prop_assert_eq!(GaussianRational::new(a.re(), a.im()), a);
        }
    }
}
