//! Sparse multivariate polynomials over [`Scalar`].
//!
//! Variables are structured tags rather than strings. The Fock space
//! variables `u⁺_{i,a}` / `u⁻_{i,k}` carry a row index `i ∈ [1, p+q]` and a
//! column index in `[1, m]`. The second index of `u⁻` is stored already
//! shifted down by `m` relative to the convention that places it in
//! `[m+1, 2m]`; the bijection is `k ↦ k − m`. Coordinate variables
//! `z_{k,a}` / `z̄_{k,a}` use the same `(row, column)` layout.
//!
//! Term order is graded lexicographic on (total degree, variable tag), which
//! makes serialization deterministic.

// Dense index loops over small matrices are the idiom here.
#![allow(
    clippy::needless_range_loop,
    clippy::assign_op_pattern,
    clippy::type_complexity
)]
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A structured variable identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum VarId {
    /// `u⁺_{row, col}`
    UPlus(u8, u8),
    /// `u⁻_{row, col}` (column already shifted to `[1, m]`)
    UMinus(u8, u8),
    /// `z_{row, col}`
    Z(u8, u8),
    /// `z̄_{row, col}`
    ZBar(u8, u8),
}

impl VarId {
    pub fn name(&self) -> String {
        match self {
            VarId::UPlus(i, a) => format!("up_{}_{}", i, a),
            VarId::UMinus(i, k) => format!("um_{}_{}", i, k),
            VarId::Z(i, a) => format!("z_{}_{}", i, a),
            VarId::ZBar(i, a) => format!("zb_{}_{}", i, a),
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A monomial: map from variable to positive exponent. No zero exponents are
/// stored; the empty monomial is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn from_pairs(mut pairs: Vec<(VarId, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(VarId, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            if let Some(last) = out.last_mut() {
                if last.0 == v {
                    last.1 += e;
                    continue;
                }
            }
            out.push((v, e));
        }
        Monomial { exps: out }
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.exps
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut pairs = self.exps.clone();
        pairs.extend(other.exps.iter().copied());
        Monomial::from_pairs(pairs)
    }

    /// Divide by `v` once; `None` if not divisible.
    pub fn div_var(&self, v: VarId) -> Option<Monomial> {
        let e = self.exponent(v);
        if e == 0 {
            return None;
        }
        let mut pairs = self.exps.clone();
        for p in pairs.iter_mut() {
            if p.0 == v {
                p.1 -= 1;
            }
        }
        Some(Monomial::from_pairs(pairs))
    }

    /// Degree in a variable class selected by the predicate.
    pub fn degree_where(&self, pred: impl Fn(VarId) -> bool) -> u32 {
        self.exps
            .iter()
            .filter(|&&(v, _)| pred(v))
            .map(|&(_, e)| e)
            .sum()
    }
}

// Graded lexicographic: total degree first, then the variable sequence.
impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.exps {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial with [`Scalar`] coefficients. The empty term map is
/// the canonical zero; all constructors normalize.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: VarId) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), Scalar::one());
        p
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
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

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Leading term in the graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero();
        for (m, q) in &self.terms {
            out.add_term(m.clone(), q * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        let mut out = Poly::zero();
        for (m, q) in &self.terms {
            out.add_term(m.clone(), f(q));
        }
        out
    }

    /// Exact partial derivative.
    pub fn derivative(&self, v: VarId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let dm = m.div_var(v).unwrap();
            out.add_term(dm, c * &Scalar::from_int(e as i64));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// The homogeneous part of maximal total degree.
    pub fn top_degree_part(&self) -> Poly {
        let d = self.total_degree();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Exact evaluation: every variable must be assigned.
    pub fn eval_exact(&self, assign: &dyn Fn(VarId) -> Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (var, e) in m.vars() {
                v = v * assign(var).pow(e);
            }
            acc += v;
        }
        acc
    }

    /// Numeric evaluation with complex assignments.
    pub fn eval_f64(&self, assign: &dyn Fn(VarId) -> Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.eval_f64();
            for (var, e) in m.vars() {
                v *= assign(var).powi(e as i32);
            }
            acc += v;
        }
        acc
    }

    /// Substitute each variable by a polynomial.
    pub fn substitute(&self, assign: &dyn Fn(VarId) -> Poly) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut v = Poly::constant(c.clone());
            for (var, e) in m.vars() {
                v = &v * &assign(var).pow(e);
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Swap `z ↔ z̄` and conjugate coefficients. Panics on Fock variables,
    /// which have no conjugation in this representation.
    pub fn conj_z(&self) -> Poly {
        let swap = |v: VarId| match v {
            VarId::Z(i, a) => VarId::ZBar(i, a),
            VarId::ZBar(i, a) => VarId::Z(i, a),
            other => panic!("conj_z on non-coordinate variable {other:?}"),
        };
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let pairs = m.vars().map(|(v, e)| (swap(v), e)).collect();
            out.add_term(Monomial::from_pairs(pairs), c.conj());
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})·{}", c, m)?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(i: u8, a: u8) -> Poly {
        Poly::var(VarId::UPlus(i, a))
    }

    #[test]
    fn monomial_normalization() {
        let m = Monomial::from_pairs(vec![
            (VarId::UPlus(2, 1), 1),
            (VarId::UPlus(1, 1), 2),
            (VarId::UPlus(2, 1), 0),
        ]);
        assert_eq!(m.degree(), 3);
        assert_eq!(m.exponent(VarId::UPlus(1, 1)), 2);
        assert_eq!(m.exponent(VarId::UPlus(2, 1)), 1);
    }

    #[test]
    fn zero_is_canonical() {
        let p = &up(1, 1) - &up(1, 1);
        assert!(p.is_zero());
        assert_eq!(p, Poly::zero());
    }

    #[test]
    fn derivative_basics() {
        // d/du (u²) = 2u
        let u = up(1, 1);
        let p = &u * &u;
        assert_eq!(
            p.derivative(VarId::UPlus(1, 1)),
            u.scale(&Scalar::from_int(2))
        );
        // d/du1 (u2) = 0
        assert!(up(2, 1).derivative(VarId::UPlus(1, 1)).is_zero());
    }

    #[test]
    fn graded_lex_order() {
        let low = Monomial::var(VarId::UPlus(9, 9));
        let high = Monomial::from_pairs(vec![(VarId::UPlus(1, 1), 2)]);
        assert!(low < high, "degree dominates the order");
    }
}
