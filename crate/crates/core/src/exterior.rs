//! Exterior algebra with sign bookkeeping.
//!
//! [`Cochain`] models elements of `∧•𝔭* ⊗ 𝒫`: finite sums of exterior
//! monomials in the dual basis vectors `ξ′_{a,b}` / `ξ″_{a,b}` with [`Poly`]
//! coefficients. Index sets are kept strictly sorted; antisymmetry is
//! normalized into a sign at construction time.
//!
//! [`Wedge`] models elements of `∧•𝔭₊` (or `∧•𝔭₋`): exterior monomials in
//! the basis vectors `X_{a,b}` (resp. `Y_{a,b}`) with scalar coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::poly::Poly;
use crate::scalar::{GaussianRational, Scalar};

/// One cotangent index: `ξ′_{a,b}` (holomorphic) or `ξ″_{a,b}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ExtIndex {
    /// `false` = ξ′ (sorts first), `true` = ξ″.
    pub double_prime: bool,
    pub a: u8,
    pub b: u8,
}

impl ExtIndex {
    pub fn prime(a: u8, b: u8) -> Self {
        ExtIndex {
            double_prime: false,
            a,
            b,
        }
    }
    pub fn dprime(a: u8, b: u8) -> Self {
        ExtIndex {
            double_prime: true,
            a,
            b,
        }
    }
}

impl fmt::Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.double_prime { "''" } else { "'" };
        write!(f, "xi{}_{}_{}", mark, self.a, self.b)
    }
}

/// Sort an index list, returning `(sorted, sign)`; `None` when an index
/// repeats (the monomial vanishes).
fn sort_with_sign<T: Ord + Copy>(mut idx: Vec<T>) -> Option<(Vec<T>, i8)> {
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in idx.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((idx, sign))
}

/// An element of the exterior algebra over [`ExtIndex`] with [`Poly`]
/// coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Cochain {
    terms: BTreeMap<Vec<ExtIndex>, Poly>,
}

impl Cochain {
    pub fn zero() -> Self {
        Cochain {
            terms: BTreeMap::new(),
        }
    }

    /// A degree-zero cochain with the given value.
    pub fn scalar(p: Poly) -> Self {
        let mut c = Cochain::zero();
        c.add_term(Vec::new(), p);
        c
    }

    /// Build from a (possibly unsorted) index list; normalizes the sign.
    pub fn monomial(indices: Vec<ExtIndex>, coeff: Poly) -> Self {
        let mut c = Cochain::zero();
        c.add_term(indices, coeff);
        c
    }

    pub fn add_term(&mut self, indices: Vec<ExtIndex>, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_with_sign(indices) else {
            return;
        };
        let coeff = if sign < 0 {
            coeff.scale(&Scalar::from_int(-1))
        } else {
            coeff
        };
        use std::collections::btree_map::Entry;
        match self.terms.entry(sorted) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<ExtIndex>, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, indices: &[ExtIndex]) -> Poly {
        self.terms.get(indices).cloned().unwrap_or_else(Poly::zero)
    }

    /// The Hodge bidegree `(#ξ′, #ξ″)` when homogeneous; `None` for mixed or
    /// zero cochains.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut deg = None;
        for key in self.terms.keys() {
            let p = key.iter().filter(|i| !i.double_prime).count();
            let q = key.len() - p;
            match deg {
                None => deg = Some((p, q)),
                Some(d) if d == (p, q) => {}
                _ => return None,
            }
        }
        deg
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        let mut out = Cochain::zero();
        for (k, p) in &self.terms {
            out.add_term(k.clone(), p.scale(c));
        }
        out
    }

    pub fn map_values(&self, f: impl Fn(&Poly) -> Poly) -> Cochain {
        let mut out = Cochain::zero();
        for (k, p) in &self.terms {
            out.add_term(k.clone(), f(p));
        }
        out
    }

    /// Graded-antisymmetric product; polynomial coefficients multiply.
    pub fn wedge(&self, rhs: &Cochain) -> Cochain {
        let mut out = Cochain::zero();
        for (k1, p1) in &self.terms {
            for (k2, p2) in &rhs.terms {
                let mut idx = k1.clone();
                idx.extend_from_slice(k2);
                out.add_term(idx, p1 * p2);
            }
        }
        out
    }

    /// Keep only the terms whose every index satisfies the predicate.
    pub fn retain_indices(&self, keep: impl Fn(&ExtIndex) -> bool) -> Cochain {
        let mut out = Cochain::zero();
        for (k, p) in &self.terms {
            if k.iter().all(&keep) {
                out.add_term(k.clone(), p.clone());
            }
        }
        out
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})·", p)?;
            if k.is_empty() {
                write!(f, "1")?;
            }
            for (n, idx) in k.iter().enumerate() {
                if n > 0 {
                    write!(f, "∧")?;
                }
                write!(f, "{}", idx)?;
            }
        }
        Ok(())
    }
}

impl Add for &Cochain {
    type Output = Cochain;
    fn add(self, rhs: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (k, p) in &rhs.terms {
            out.add_term(k.clone(), p.clone());
        }
        out
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (k, p) in &rhs.terms {
            out.add_term(k.clone(), -p);
        }
        out
    }
}

impl Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        self.map_values(|p| -p)
    }
}

/// An element of `∧•𝔭₊` (or `∧•𝔭₋`) in the monomial basis of wedges of
/// `X_{a,b}` (resp. `Y_{a,b}`), with exact ℚ(i) coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Wedge {
    terms: BTreeMap<Vec<(u8, u8)>, GaussianRational>,
}

impl Wedge {
    pub fn zero() -> Self {
        Wedge {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(indices: Vec<(u8, u8)>, coeff: GaussianRational) -> Self {
        let mut w = Wedge::zero();
        w.add_term(indices, coeff);
        w
    }

    pub fn add_term(&mut self, indices: Vec<(u8, u8)>, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_with_sign(indices) else {
            return;
        };
        let coeff = if sign < 0 { -coeff } else { coeff };
        use std::collections::btree_map::Entry;
        match self.terms.entry(sorted) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + coeff;
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<(u8, u8)>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &GaussianRational) -> Wedge {
        let mut out = Wedge::zero();
        for (k, q) in &self.terms {
            out.add_term(k.clone(), q * c);
        }
        out
    }

    pub fn degree(&self) -> Option<usize> {
        let mut d = None;
        for k in self.terms.keys() {
            match d {
                None => d = Some(k.len()),
                Some(n) if n == k.len() => {}
                _ => return None,
            }
        }
        d
    }
}

impl Add for &Wedge {
    type Output = Wedge;
    fn add(self, rhs: &Wedge) -> Wedge {
        let mut out = self.clone();
        for (k, q) in &rhs.terms {
            out.add_term(k.clone(), q.clone());
        }
        out
    }
}

impl Sub for &Wedge {
    type Output = Wedge;
    fn sub(self, rhs: &Wedge) -> Wedge {
        let mut out = self.clone();
        for (k, q) in &rhs.terms {
            out.add_term(k.clone(), -q.clone());
        }
        out
    }
}
