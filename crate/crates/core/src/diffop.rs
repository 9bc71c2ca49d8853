//! Differential operators with polynomial coefficients.
//!
//! A [`DiffOperator`] is a finite sum of `coefficient · ∂^D` terms where `D`
//! is a derivative multi-index (stored as a [`Monomial`] over variable
//! identifiers). Application and composition are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::poly::{Monomial, Poly, VarId};
use crate::scalar::{GaussianRational, Scalar};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOperator {
    // derivative multi-index -> polynomial coefficient
    terms: BTreeMap<Monomial, Poly>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        DiffOperator {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        DiffOperator::mul_by(Poly::one())
    }

    /// Multiplication operator `p ↦ c·p`.
    pub fn mul_by(c: Poly) -> Self {
        let mut op = DiffOperator::zero();
        op.add_part(Monomial::one(), c);
        op
    }

    /// `∂/∂v`.
    pub fn d(v: VarId) -> Self {
        let mut op = DiffOperator::zero();
        op.add_part(Monomial::var(v), Poly::one());
        op
    }

    pub fn add_part(&mut self, deriv: Monomial, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(deriv) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + &coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Monomial, &Poly)> {
        self.terms.iter()
    }

    /// Maximal derivative order appearing.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for (d, p) in &self.terms {
            out.add_part(d.clone(), p.scale(c));
        }
        out
    }

    /// Apply to a polynomial: differentiate, then multiply.
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (deriv, coeff) in &self.terms {
            let mut q = p.clone();
            for (v, e) in deriv.vars() {
                for _ in 0..e {
                    q = q.derivative(v);
                    if q.is_zero() {
                        break;
                    }
                }
                if q.is_zero() {
                    break;
                }
            }
            if !q.is_zero() {
                out = &out + &(coeff * &q);
            }
        }
        out
    }

    /// Operator composition `self ∘ rhs`, expanded to canonical form via the
    /// generalized Leibniz rule.
    pub fn compose(&self, rhs: &DiffOperator) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                // ∂^{da}(cb · ∂^{db} f) = Σ_{S ≤ da} binom(da,S) ∂^S(cb) ∂^{da-S+db} f
                for (split, binom) in multi_splits(da) {
                    let mut dcb = cb.clone();
                    for (v, e) in split.vars() {
                        for _ in 0..e {
                            dcb = dcb.derivative(v);
                            if dcb.is_zero() {
                                break;
                            }
                        }
                        if dcb.is_zero() {
                            break;
                        }
                    }
                    if dcb.is_zero() {
                        continue;
                    }
                    let remainder = sub_multi(da, &split);
                    let coeff = ca * &dcb.scale(&Scalar::from_rat(binom.clone()));
                    out.add_part(remainder.mul(db), coeff);
                }
            }
        }
        out
    }

    /// Commutator `[self, rhs]`.
    pub fn commutator(&self, rhs: &DiffOperator) -> DiffOperator {
        &self.compose(rhs) - &rhs.compose(self)
    }
}

/// All sub-multi-indices `S ≤ d` with multinomial coefficients `∏ C(dᵢ, sᵢ)`.
fn multi_splits(d: &Monomial) -> Vec<(Monomial, GaussianRational)> {
    let vars: Vec<(VarId, u32)> = d.vars().collect();
    let mut out: Vec<(Vec<(VarId, u32)>, BigRational)> = vec![(Vec::new(), BigRational::one())];
    for &(v, e) in &vars {
        let mut next = Vec::new();
        for (prefix, c) in &out {
            for s in 0..=e {
                let mut p = prefix.clone();
                if s > 0 {
                    p.push((v, s));
                }
                next.push((p, c * BigRational::from_integer(binomial(e, s))));
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|(p, c)| {
            (
                Monomial::from_pairs(p),
                GaussianRational::new(c, BigRational::from_integer(BigInt::from(0))),
            )
        })
        .collect()
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for j in 0..k {
        num *= BigInt::from((n - j) as i64);
        den *= BigInt::from((j + 1) as i64);
    }
    num / den
}

fn sub_multi(a: &Monomial, b: &Monomial) -> Monomial {
    let pairs = a.vars().map(|(v, e)| (v, e - b.exponent(v))).collect();
    Monomial::from_pairs(pairs)
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d.is_one() {
                write!(f, "[{}]", c)?;
            } else {
                write!(f, "[{}]·∂({})", c, d)?;
            }
        }
        Ok(())
    }
}

impl Add for &DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_part(d.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_part(d.clone(), -c);
        }
        out
    }
}

impl Neg for &DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        DiffOperator {
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }
}

impl Mul for &DiffOperator {
    type Output = DiffOperator;
    fn mul(self, rhs: &DiffOperator) -> DiffOperator {
        self.compose(rhs)
    }
}
