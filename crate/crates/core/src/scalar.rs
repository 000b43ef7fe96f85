//! Exact coefficient arithmetic.
//!
//! All computations in this crate run over one of two coefficient domains,
//! selected at runtime:
//!
//! - generic mode: the field Q(delta) of rational functions in a formal
//!   loop parameter delta, represented as quotients of polynomials in
//!   canonical form (coprime, monic denominator);
//! - numeric mode: the rationals Q, with delta specialized to a fixed value.
//!
//! No floating point is used anywhere. [`Scalar`] is the runtime-tagged sum
//! of the two domains; values of different tags never meet in one
//! computation (mixing is a programming error and panics).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

macro_rules! fmt_debug_via_display {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", self)
        }
    };
}

/// Arbitrary precision rational number, always in reduced form with a
/// positive denominator (maintained by the underlying representation).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero rational");
        Rational(self.0.recip())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(std::ops::$trait::$method(&self.0, &rhs.0))
            }
        }
        impl std::ops::$trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl std::ops::Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl std::ops::Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses "p", "-p" or "p/q".
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse rational: {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::InvalidArgument(format!("zero denominator in {s:?}")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// Polynomial in delta with rational coefficients.
///
/// `coeffs[i]` is the coefficient of delta^i. Invariant: the vector is
/// empty (the zero polynomial) or the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DeltaPoly {
    coeffs: Vec<Rational>,
}

impl DeltaPoly {
    pub fn zero() -> Self {
        DeltaPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        DeltaPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        DeltaPoly::from_coeffs(vec![c])
    }

    /// The polynomial delta.
    pub fn delta() -> Self {
        DeltaPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// delta^k.
    pub fn delta_pow(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        DeltaPoly::from_coeffs(coeffs)
    }

    /// Builds from low-to-high coefficients, stripping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        DeltaPoly { coeffs }
    }

    /// Convenience constructor from integer coefficients, low to high.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        DeltaPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Evaluation at a rational point by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return DeltaPoly::zero();
        }
        DeltaPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Quotient and remainder; panics on zero divisor.
    pub fn div_rem(&self, rhs: &DeltaPoly) -> (DeltaPoly, DeltaPoly) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let d = rhs.coeffs.len();
        if self.coeffs.len() < d {
            return (DeltaPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); self.coeffs.len() - d + 1];
        let lead = rhs.leading().unwrap().clone();
        for k in (0..quo.len()).rev() {
            let c = &rem[k + d - 1] / &lead;
            if !c.is_zero() {
                for (i, rc) in rhs.coeffs.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &(&c * rc);
                }
            }
            quo[k] = c;
        }
        (DeltaPoly::from_coeffs(quo), DeltaPoly::from_coeffs(rem))
    }

    /// Exact division; panics if the division leaves a remainder.
    /// Used inside fraction-free elimination where exactness is an invariant.
    pub fn exact_div(&self, rhs: &DeltaPoly) -> DeltaPoly {
        let (q, r) = self.div_rem(rhs);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &DeltaPoly) -> DeltaPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) if !l.is_one() => {
                let inv = l.recip();
                a.scale(&inv)
            }
            _ => a,
        }
    }
}

impl std::ops::Add for &DeltaPoly {
    type Output = DeltaPoly;
    fn add(self, rhs: &DeltaPoly) -> DeltaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            coeffs.push(&a + &b);
        }
        DeltaPoly::from_coeffs(coeffs)
    }
}

impl std::ops::Sub for &DeltaPoly {
    type Output = DeltaPoly;
    fn sub(self, rhs: &DeltaPoly) -> DeltaPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &DeltaPoly {
    type Output = DeltaPoly;
    fn neg(self) -> DeltaPoly {
        DeltaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &DeltaPoly {
    type Output = DeltaPoly;
    fn mul(self, rhs: &DeltaPoly) -> DeltaPoly {
        if self.is_zero() || rhs.is_zero() {
            return DeltaPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        DeltaPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for DeltaPoly {
    /// Renders highest degree first, e.g. "δ^2 - 1".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && deg > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "{}δ", if unit_coeff { "" } else { "*" })?,
                _ => write!(f, "{}δ^{}", if unit_coeff { "" } else { "*" }, deg)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DeltaPoly {
    fmt_debug_via_display!();
}

impl Serialize for DeltaPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DeltaPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(DeltaPoly::from_coeffs(Vec::deserialize(deserializer)?))
    }
}

/// Rational function in delta, kept in canonical form: numerator and
/// denominator coprime, denominator monic and nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatFunc {
    num: DeltaPoly,
    den: DeltaPoly,
}

impl RatFunc {
    /// Builds and normalizes; fails on a zero denominator polynomial.
    pub fn new(num: DeltaPoly, den: DeltaPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: DeltaPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g);
        let mut den = den.exact_div(&g);
        let lead = den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: DeltaPoly) -> Self {
        RatFunc {
            num: p,
            den: DeltaPoly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(DeltaPoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(DeltaPoly::one())
    }

    pub fn num(&self) -> &DeltaPoly {
        &self.num
    }

    pub fn den(&self) -> &DeltaPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == DeltaPoly::one() && self.den == DeltaPoly::one()
    }

    /// Returns the polynomial part if the denominator is 1.
    pub fn as_poly(&self) -> Option<&DeltaPoly> {
        (self.den == DeltaPoly::one()).then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Evaluates at delta = x; fails when the denominator vanishes there.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAt(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }
}

impl std::ops::Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("nonzero denominators")
    }
}

impl std::ops::Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::ops::Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == DeltaPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fmt_debug_via_display!();
}

/// Coefficient domain selector: formal delta or a fixed rational value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Mode {
    Generic,
    At(Rational),
}

impl Mode {
    pub fn at_int(n: i64) -> Self {
        Mode::At(Rational::from_int(n))
    }
}

/// A coefficient: a rational function of delta (generic mode) or a
/// rational number (numeric mode). The two tags never mix in one
/// computation; mixed arithmetic panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Generic(RatFunc),
    Numeric(Rational),
}

impl Scalar {
    pub fn zero(mode: &Mode) -> Self {
        match mode {
            Mode::Generic => Scalar::Generic(RatFunc::zero()),
            Mode::At(_) => Scalar::Numeric(Rational::zero()),
        }
    }

    pub fn one(mode: &Mode) -> Self {
        match mode {
            Mode::Generic => Scalar::Generic(RatFunc::one()),
            Mode::At(_) => Scalar::Numeric(Rational::one()),
        }
    }

    /// delta^k in the given mode.
    pub fn delta_pow(mode: &Mode, k: usize) -> Self {
        match mode {
            Mode::Generic => Scalar::Generic(RatFunc::from_poly(DeltaPoly::delta_pow(k))),
            Mode::At(q) => Scalar::Numeric(q.pow(k as u32)),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::Numeric(r)
    }

    pub fn from_poly(p: DeltaPoly) -> Self {
        Scalar::Generic(RatFunc::from_poly(p))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Generic(f) => f.is_zero(),
            Scalar::Numeric(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Generic(f) => f.is_one(),
            Scalar::Numeric(r) => r.is_one(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        match self {
            Scalar::Generic(f) => Ok(Scalar::Generic(f.recip()?)),
            Scalar::Numeric(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZeroPolynomial)
                } else {
                    Ok(Scalar::Numeric(r.recip()))
                }
            }
        }
    }

    /// Evaluates a generic scalar at delta = x (Horner); numeric scalars
    /// are returned unchanged since they carry no delta dependence.
    pub fn specialize(&self, x: &Rational) -> Result<Rational> {
        match self {
            Scalar::Generic(f) => f.eval(x),
            Scalar::Numeric(r) => Ok(r.clone()),
        }
    }

    fn pair<'a>(&'a self, rhs: &'a Scalar) -> (&'a Scalar, &'a Scalar) {
        match (self, rhs) {
            (Scalar::Generic(_), Scalar::Numeric(_)) | (Scalar::Numeric(_), Scalar::Generic(_)) => {
                panic!("mixed scalar modes in one computation")
            }
            _ => (self, rhs),
        }
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match self.pair(rhs) {
            (Scalar::Generic(a), Scalar::Generic(b)) => Scalar::Generic(a + b),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Scalar::Numeric(a + b),
            _ => unreachable!(),
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match self.pair(rhs) {
            (Scalar::Generic(a), Scalar::Generic(b)) => Scalar::Generic(a - b),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Scalar::Numeric(a - b),
            _ => unreachable!(),
        }
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match self.pair(rhs) {
            (Scalar::Generic(a), Scalar::Generic(b)) => Scalar::Generic(a * b),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Scalar::Numeric(a * b),
            _ => unreachable!(),
        }
    }
}

impl std::ops::Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.recip().expect("division by zero scalar");
        self * &inv
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Generic(f) => Scalar::Generic(-f),
            Scalar::Numeric(r) => Scalar::Numeric(-r),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Generic(g) => write!(f, "{g}"),
            Scalar::Numeric(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fmt_debug_via_display!();
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Generic(g) => g.serialize(serializer),
            Scalar::Numeric(r) => r.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Generic(RatFunc),
            Numeric(Rational),
        }
        Ok(match Repr::deserialize(deserializer)? {
            Repr::Generic(g) => Scalar::Generic(g),
            Repr::Numeric(r) => Scalar::Numeric(r),
        })
    }
}

/// Total order on polynomials used only for deterministic output ordering.
pub fn poly_cmp(a: &DeltaPoly, b: &DeltaPoly) -> Ordering {
    a.coeffs()
        .len()
        .cmp(&b.coeffs().len())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn rational_reduction_and_sign() {
        let r = rat(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r, rat(-3, 2));
        assert_eq!((&rat(1, 3) + &rat(1, 6)).to_string(), "1/2");
    }

    #[test]
    fn rational_parse_roundtrip() {
        for s in ["0", "5", "-7/3", "22/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn poly_mul_and_display() {
        let p = DeltaPoly::from_ints(&[-1, 0, 1]); // delta^2 - 1
        let q = DeltaPoly::from_ints(&[1, 1]); // delta + 1
        assert_eq!((&p * &q), DeltaPoly::from_ints(&[-1, -1, 1, 1]));
        assert_eq!(p.to_string(), "δ^2 - 1");
        assert_eq!(q.to_string(), "δ + 1");
        assert_eq!(DeltaPoly::zero().to_string(), "0");
        assert_eq!(DeltaPoly::from_ints(&[0, -2]).to_string(), "-2*δ");
    }

    #[test]
    fn poly_eval_horner() {
        // specialize(delta^2 - 1, 3) = 8
        let p = DeltaPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(p.eval(&rat(3, 1)), rat(8, 1));
    }

    #[test]
    fn poly_gcd_monic() {
        let a = DeltaPoly::from_ints(&[-2, 0, 2]); // 2(delta^2 - 1)
        let b = DeltaPoly::from_ints(&[3, 3]); // 3(delta + 1)
        assert_eq!(a.gcd(&b), DeltaPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn ratfunc_normalize_cancels() {
        // (delta^2 - 1)/(delta - 1) normalizes to delta + 1
        let f = RatFunc::new(
            DeltaPoly::from_ints(&[-1, 0, 1]),
            DeltaPoly::from_ints(&[-1, 1]),
        )
        .unwrap();
        assert_eq!(f.as_poly(), Some(&DeltaPoly::from_ints(&[1, 1])));
    }

    #[test]
    fn ratfunc_denominator_monic() {
        // 1/(2 delta) has canonical form (1/2)/delta
        let f = RatFunc::new(DeltaPoly::one(), DeltaPoly::from_ints(&[0, 2])).unwrap();
        assert_eq!(f.den(), &DeltaPoly::delta());
        assert_eq!(f.num(), &DeltaPoly::constant(rat(1, 2)));
    }

    #[test]
    fn ratfunc_zero_denominator_rejected() {
        let err = RatFunc::new(DeltaPoly::one(), DeltaPoly::zero()).unwrap_err();
        assert_eq!(err.to_string(), "division by zero polynomial");
    }

    #[test]
    fn scalar_specialize() {
        let s = Scalar::from_poly(DeltaPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(s.specialize(&rat(3, 1)).unwrap(), rat(8, 1));
        let pole = Scalar::Generic(
            RatFunc::new(DeltaPoly::one(), DeltaPoly::from_ints(&[-1, 1])).unwrap(),
        );
        assert!(pole.specialize(&rat(1, 1)).is_err());
    }

    #[test]
    #[should_panic(expected = "mixed scalar modes")]
    fn scalar_modes_do_not_mix() {
        let _ = &Scalar::one(&Mode::Generic) + &Scalar::one(&Mode::at_int(2));
    }

    #[test]
    fn scalar_json_shapes() {
        let g = Scalar::delta_pow(&Mode::Generic, 2);
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"num":["0","0","1"],"den":["1"]}"#
        );
        let n = Scalar::delta_pow(&Mode::At(rat(3, 2)), 2);
        assert_eq!(serde_json::to_string(&n).unwrap(), r#""9/4""#);
        let back: Scalar = serde_json::from_str(r#"{"num":["0","0","1"],"den":["1"]}"#).unwrap();
        assert_eq!(back, g);
    }
}
