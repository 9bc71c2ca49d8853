//! Exact coefficient arithmetic.
//!
//! Two layers: [`GaussianRational`] is the field ℚ(i) with arbitrary
//! precision rational parts, and [`Scalar`] extends it by formal powers of π
//! and half-integer powers of 2 (i.e. an optional √2 factor per term), so
//! quantities such as `-2√2·π` or `π⁻¹/16` stay exact through every
//! computation. Nothing in this module touches floating point; numeric
//! evaluation happens only at the [`Scalar::eval_f64`] boundary.

// Dense index loops over small matrices are the idiom here.
#![allow(
    clippy::needless_range_loop,
    clippy::assign_op_pattern,
    clippy::type_complexity
)]
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of ℚ(i): `re + im·i` with exact rational parts.
///
/// `BigRational` keeps denominators positive and fractions reduced, so
/// structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        assert!(!n.is_zero(), "division by zero in Q(i)");
        GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    pub fn eval_f64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().expect("rational out of f64 range"),
            self.im.to_f64().expect("rational out of f64 range"),
        )
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "({}{}i)", self.re, self.im)
        } else {
            write!(f, "({}+{}i)", self.re, self.im)
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_int(1)
    }
}

/// Key of one graded component: `(power of π, √2 present?)`.
///
/// A term `(k, true)` stands for `π^k·√2`; integer powers of 2 are folded
/// into the rational coefficient.
type Grade = (i32, bool);

/// A finite sum `Σ q · π^k · √2^ε` with `q ∈ ℚ(i)`, `k ∈ ℤ`, `ε ∈ {0,1}`.
///
/// π is treated as transcendental, √2 as a square root of 2, so the
/// representation is canonical: equal values have equal term maps.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct Scalar {
    terms: BTreeMap<Grade, GaussianRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_rat(q: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert((0, false), q);
        }
        Scalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(GaussianRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_rat(GaussianRational::from_ratio(num, den))
    }

    pub fn i() -> Self {
        Scalar::from_rat(GaussianRational::i())
    }

    /// `π^k`.
    pub fn pi_pow(k: i32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((k, false), GaussianRational::one());
        Scalar { terms }
    }

    /// `2^(k/2)` as an exact scalar.
    pub fn two_pow_half(k: i32) -> Self {
        let whole = k.div_euclid(2);
        let rem = k.rem_euclid(2) == 1;
        let mut q = GaussianRational::one();
        if whole >= 0 {
            for _ in 0..whole {
                q = q * GaussianRational::from_int(2);
            }
        } else {
            for _ in 0..(-whole) {
                q = q * GaussianRational::from_ratio(1, 2);
            }
        }
        let mut terms = BTreeMap::new();
        terms.insert((0, rem), q);
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the value lies in ℚ(i) (no π, no √2 factors).
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&(k, s)| k == 0 && !s)
    }

    /// Extract the ℚ(i) value; `None` if π or √2 factors are present.
    pub fn as_rat(&self) -> Option<GaussianRational> {
        if self.terms.is_empty() {
            return Some(GaussianRational::zero());
        }
        if !self.is_rational() {
            return None;
        }
        self.terms.get(&(0, false)).cloned()
    }

    fn insert(&mut self, key: Grade, q: GaussianRational) {
        if q.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(q);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + q;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn conj(&self) -> Self {
        Scalar {
            terms: self.terms.iter().map(|(k, q)| (*k, q.conj())).collect(),
        }
    }

    /// Inverse of a single-graded scalar (`q·π^k·√2^ε`). Panics when the
    /// scalar is zero or a genuine sum of different grades.
    pub fn inv(&self) -> Self {
        assert_eq!(self.terms.len(), 1, "inverse of a non-monomial scalar");
        let (&(k, s), q) = self.terms.iter().next().unwrap();
        let mut out = Scalar::from_rat(q.inv()) * Scalar::pi_pow(-k);
        if s {
            // 1/√2 = √2/2
            out = out * Scalar::two_pow_half(-1);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Scalar::one();
        for _ in 0..n {
            out = out * self.clone();
        }
        out
    }

    pub fn eval_f64(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(k, s), q) in &self.terms {
            let mut v = q.eval_f64();
            v *= std::f64::consts::PI.powi(k);
            if s {
                v *= std::f64::consts::SQRT_2;
            }
            acc += v;
        }
        acc
    }

    /// Iterate graded components as `(pi_pow, sqrt2, coefficient)`.
    pub fn components(&self) -> impl Iterator<Item = (i32, bool, &GaussianRational)> {
        self.terms.iter().map(|(&(k, s), q)| (k, s, q))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(k, s), q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", q)?;
            if s {
                write!(f, "·√2")?;
            }
            if k != 0 {
                write!(f, "·π^{}", k)?;
            }
        }
        Ok(())
    }
}

impl Add for Scalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (k, q) in rhs.terms {
            out.insert(k, q);
        }
        out
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Self) {
        for (k, q) in rhs.terms {
            self.insert(k, q);
        }
    }
}

impl Sub for Scalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Self;
    fn neg(self) -> Self {
        Scalar {
            terms: self.terms.into_iter().map(|(k, q)| (k, -q)).collect(),
        }
    }
}

impl Mul for Scalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&(k1, s1), q1) in &self.terms {
            for (&(k2, s2), q2) in &rhs.terms {
                let mut q = q1 * q2;
                let s = s1 ^ s2;
                if s1 && s2 {
                    q = q * GaussianRational::from_int(2);
                }
                out.insert((k1 + k2, s), q);
            }
        }
        out
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Self) {
        *self = self.clone() * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    #[test]
    fn gaussian_rational_field_ops() {
        let a = GaussianRational::new(q(1, 2).re, q(3, 4).re);
        let b = a.inv();
        assert_eq!(&a * &b, GaussianRational::one());
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn sqrt2_folding() {
        let s = Scalar::two_pow_half(1);
        assert_eq!(s.clone() * s, Scalar::from_int(2));
        assert_eq!(
            Scalar::two_pow_half(3),
            Scalar::two_pow_half(1) * Scalar::from_int(2)
        );
        assert_eq!(
            Scalar::two_pow_half(-1) * Scalar::two_pow_half(1),
            Scalar::one()
        );
    }

    #[test]
    fn pi_powers_add() {
        let p = Scalar::pi_pow(2) * Scalar::pi_pow(-3);
        assert_eq!(p, Scalar::pi_pow(-1));
        assert!((Scalar::pi_pow(1).eval_f64().re - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn mixed_sums_are_canonical() {
        // 2i·(2πi) = -4π, the scalar arising in the Weyl action.
        let lam = Scalar::from_int(2) * Scalar::i() * Scalar::pi_pow(1);
        let v = Scalar::from_int(2) * Scalar::i() * lam;
        assert_eq!(v, Scalar::from_int(-4) * Scalar::pi_pow(1));
    }

    #[test]
    fn monomial_inverse() {
        let s = Scalar::from_int(-3) * Scalar::pi_pow(2) * Scalar::two_pow_half(1);
        assert_eq!(s.clone() * s.inv(), Scalar::one());
    }
}
