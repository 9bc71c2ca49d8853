//! Case-specific Lie algebra data over the Fock model: generator bases of
//! `𝔨`, `𝔭₊`, `𝔭₋` and of the compact dual `𝔨′`, torus weights and
//! highest/lowest weight tests.
//!
//! Conventions, fixed once and validated by the normalization-lock tests:
//!
//! * `𝔭₊` basis `X_{a,b}` and `𝔭₋` basis `Y_{a,b}` are the matrices below;
//!   in every case `Y = σ(X)` for the conjugation `σ(M) = −H M* H` of the
//!   real form, so `E = (X+Y)/2` and `F = (Y−X)/(2i)` are real tangent
//!   vectors with `X = E − iF`.
//! * case A `𝔨` is spanned by matrix units `e_{a,b}` of the two diagonal
//!   blocks; cases B and C use `k_{a,b} = e_{a,b} − e_{n+b,n+a}`.
//! * `𝔨′` of case A is realized on the column side and derived through the
//!   same Weyl embedding; for cases B and C the `𝔨′` operators on `𝒫₋` are
//!   taken in closed form and validated by commutation with the derived
//!   `𝔤`-action.

use num_rational::BigRational;
use num_traits::Zero;

use crate::cases::DualPairCase;
use crate::diffop::DiffOperator;
use crate::exterior::Wedge;
use crate::linalg;
use crate::poly::{Poly, VarId};
use crate::scalar::{GaussianRational, Scalar};
use crate::weyl::{
    cmat_commutator, cmat_scale, cmat_sub, cmat_trace, cmat_unit, cmat_zero, CMat, FockSpace,
};

fn gi(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn ii() -> GaussianRational {
    GaussianRational::i()
}

/// Which model of the pair the operators act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// `𝒫₋` only (no `u⁺` columns).
    Minus,
    /// `𝒫₊` only.
    Plus,
    /// The full `𝒫 = 𝒫₋ ⊗ 𝒫₊`.
    Full,
}

/// Case data bundled with a chosen model.
#[derive(Clone, Debug)]
pub struct CaseAlgebra {
    pub case: DualPairCase,
    pub model: Model,
    pub space: FockSpace,
}

impl CaseAlgebra {
    pub fn new(case: DualPairCase, model: Model) -> Self {
        let m = case.m_cols();
        let (mp, mm) = match model {
            Model::Minus => (0, m),
            Model::Plus => (m, 0),
            Model::Full => (m, m),
        };
        let space = FockSpace::new(case.p_rows(), case.rows() - case.p_rows(), mp, mm);
        CaseAlgebra { case, model, space }
    }

    pub fn rows(&self) -> usize {
        self.case.rows() as usize
    }

    // ----- 𝔤 bases as complexified matrices on the rows -----

    /// `𝔨` basis elements with names.
    pub fn k_basis(&self) -> Vec<(String, CMat)> {
        let n = self.rows();
        let mut out = Vec::new();
        match self.case {
            DualPairCase::A { p, q, .. } => {
                for a in 1..=p {
                    for b in 1..=p {
                        out.push((format!("e_{a}{b}"), cmat_unit(n, a, b)));
                    }
                }
                for a in p + 1..=p + q {
                    for b in p + 1..=p + q {
                        out.push((format!("e_{a}{b}"), cmat_unit(n, a, b)));
                    }
                }
            }
            DualPairCase::B { n: nn, .. } | DualPairCase::C { n: nn, .. } => {
                for a in 1..=nn {
                    for b in 1..=nn {
                        out.push((format!("k_{a}{b}"), self.k_unit(a, b)));
                    }
                }
            }
        }
        out
    }

    /// `k_{a,b} = e_{a,b} − e_{n+b,n+a}` for cases B and C.
    fn k_unit(&self, a: u8, b: u8) -> CMat {
        let n = self.rows();
        let nn = (n / 2) as u8;
        cmat_sub(&cmat_unit(n, a, b), &cmat_unit(n, nn + b, nn + a))
    }

    /// Torus generators of `𝔨` (ordered; weight tuples refer to this order).
    pub fn k_torus(&self) -> Vec<CMat> {
        let n = self.rows();
        match self.case {
            DualPairCase::A { p, q, .. } => (1..=p + q).map(|i| cmat_unit(n, i, i)).collect(),
            DualPairCase::B { n: nn, .. } | DualPairCase::C { n: nn, .. } => {
                (1..=nn).map(|a| self.k_unit(a, a)).collect()
            }
        }
    }

    /// Raising operators (positive root vectors of the Borel 𝔟).
    pub fn k_raising(&self) -> Vec<CMat> {
        let n = self.rows();
        let mut out = Vec::new();
        match self.case {
            DualPairCase::A { p, q, .. } => {
                for a in 1..=p {
                    for b in a + 1..=p {
                        out.push(cmat_unit(n, a, b));
                    }
                }
                // the Borel takes the lower triangle in the second block
                for nu in p + 1..=p + q {
                    for mu in nu + 1..=p + q {
                        out.push(cmat_unit(n, mu, nu));
                    }
                }
            }
            DualPairCase::B { n: nn, .. } | DualPairCase::C { n: nn, .. } => {
                for a in 1..=nn {
                    for b in a + 1..=nn {
                        out.push(self.k_unit(a, b));
                    }
                }
            }
        }
        out
    }

    /// Lowering operators (negatives of the raising set).
    pub fn k_lowering(&self) -> Vec<CMat> {
        let n = self.rows();
        let mut out = Vec::new();
        match self.case {
            DualPairCase::A { p, q, .. } => {
                for a in 1..=p {
                    for b in a + 1..=p {
                        out.push(cmat_unit(n, b, a));
                    }
                }
                for nu in p + 1..=p + q {
                    for mu in nu + 1..=p + q {
                        out.push(cmat_unit(n, nu, mu));
                    }
                }
            }
            DualPairCase::B { n: nn, .. } | DualPairCase::C { n: nn, .. } => {
                for a in 1..=nn {
                    for b in a + 1..=nn {
                        out.push(self.k_unit(b, a));
                    }
                }
            }
        }
        out
    }

    /// The matrix of `X_{a,b} ∈ 𝔭₊`.
    pub fn x_matrix(&self, a: u8, b: u8) -> CMat {
        let n = self.rows();
        match self.case {
            DualPairCase::A { .. } => {
                // X = E − iF realizes as 2i·e_{α,μ}
                cmat_scale(&cmat_unit(n, a, b), &(gi(2) * ii()))
            }
            DualPairCase::B { n: nn, .. } => {
                let mut m = cmat_unit(n, b, nn + a);
                m = crate::weyl::cmat_add(&m, &cmat_unit(n, a, nn + b));
                m
            }
            DualPairCase::C { n: nn, .. } => {
                cmat_sub(&cmat_unit(n, a, nn + b), &cmat_unit(n, b, nn + a))
            }
        }
    }

    /// The matrix of `Y_{a,b} = σ(X_{a,b}) ∈ 𝔭₋`.
    pub fn y_matrix(&self, a: u8, b: u8) -> CMat {
        self.sigma(&self.x_matrix(a, b))
    }

    /// Conjugation of the real form: `σ(M) = −H M* H` with `H` the row
    /// signature.
    pub fn sigma(&self, m: &CMat) -> CMat {
        let n = self.rows();
        let p = self.space.p as usize;
        let sign = |i: usize| if i < p { 1i64 } else { -1 };
        let mut out = cmat_zero(n);
        for i in 0..n {
            for j in 0..n {
                // (M*)_{ij} = conj(M_{ji})
                let v = m[j][i].conj();
                out[i][j] = &v * &gi(-sign(i) * sign(j));
            }
        }
        out
    }

    /// Basis of `𝔭₊` in the order of [`DualPairCase::p_plus_indices`].
    pub fn p_plus_basis(&self) -> Vec<((u8, u8), CMat)> {
        self.case
            .p_plus_indices()
            .into_iter()
            .map(|(a, b)| ((a, b), self.x_matrix(a, b)))
            .collect()
    }

    pub fn p_minus_basis(&self) -> Vec<((u8, u8), CMat)> {
        self.case
            .p_plus_indices()
            .into_iter()
            .map(|(a, b)| ((a, b), self.y_matrix(a, b)))
            .collect()
    }

    // ----- ω on the chosen model -----

    /// `ω` of a row-side complexified matrix.
    pub fn omega(&self, m: &CMat) -> DiffOperator {
        self.space.omega_v(m)
    }

    pub fn omega_x(&self, a: u8, b: u8) -> DiffOperator {
        self.omega(&self.x_matrix(a, b))
    }

    pub fn omega_y(&self, a: u8, b: u8) -> DiffOperator {
        self.omega(&self.y_matrix(a, b))
    }

    // ----- 𝔨′ -----

    /// Case A only: `ω` of a column-side complexified matrix given on the
    /// combined `(u⁺ columns, u⁻ columns)` index set.
    pub fn omega_w(&self, m: &CMat) -> DiffOperator {
        self.space.omega_w(m)
    }

    fn w_ncols(&self) -> usize {
        (self.space.m_plus + self.space.m_minus) as usize
    }

    /// Case A: `𝔨′` matrix unit `e'_{k,ℓ}` of the `u⁻` block (1-based
    /// within the block).
    fn a_kprime_minus_unit(&self, k: u8, l: u8) -> CMat {
        assert!(self.space.m_minus > 0);
        let off = self.space.m_plus;
        cmat_unit(self.w_ncols(), off + k, off + l)
    }

    /// Case A: `𝔨′` matrix unit `e'_{a,b}` of the `u⁺` block.
    fn a_kprime_plus_unit(&self, a: u8, b: u8) -> CMat {
        assert!(self.space.m_plus > 0);
        cmat_unit(self.w_ncols(), a, b)
    }

    /// Torus operators of `𝔨′` in the normalization whose eigenvalues are
    /// the printed weight entries (length = number of columns).
    pub fn kprime_torus_ops(&self) -> Vec<DiffOperator> {
        let m = self.case.m_cols();
        match self.case {
            DualPairCase::A { .. } => (1..=m)
                .map(|k| self.omega_w(&self.a_kprime_minus_unit(k, k)))
                .collect(),
            DualPairCase::B { .. } => (1..=m)
                .map(|k| self.b_kprime_t1(k, k).scale(&Scalar::from_ratio(-1, 2)))
                .collect(),
            DualPairCase::C { .. } => (1..=m).map(|k| self.c_kprime_s1(k, k)).collect(),
        }
    }

    /// Nilpotent radical `𝔫` of the Borel of `𝔨′` acting on `𝒫₋`.
    pub fn kprime_nilpotent_ops(&self) -> Vec<DiffOperator> {
        let m = self.case.m_cols();
        let mut out = Vec::new();
        match self.case {
            DualPairCase::A { .. } => {
                for k in 1..=m {
                    for l in k + 1..=m {
                        out.push(self.omega_w(&self.a_kprime_minus_unit(k, l)));
                    }
                }
            }
            DualPairCase::B { .. } => {
                for k in 1..=m {
                    for l in k + 1..=m {
                        out.push(self.b_kprime_t1(k, l));
                        out.push(self.b_kprime_t3(k, l));
                    }
                }
            }
            DualPairCase::C { .. } => {
                for k in 1..=m {
                    for l in k + 1..=m {
                        out.push(self.c_kprime_s1(k, l).scale(&Scalar::from_int(-1)));
                    }
                }
                for k in 1..=m {
                    for l in k..=m {
                        out.push(self.c_kprime_s2(k, l));
                    }
                }
            }
        }
        out
    }

    /// All implemented `𝔨′` generators (used by commutation checks).
    pub fn kprime_all_ops(&self) -> Vec<(String, DiffOperator)> {
        let m = self.case.m_cols();
        let mut out = Vec::new();
        match self.case {
            DualPairCase::A { .. } => {
                if self.space.m_minus > 0 {
                    for k in 1..=m {
                        for l in 1..=m {
                            out.push((
                                format!("e'_minus_{k}{l}"),
                                self.omega_w(&self.a_kprime_minus_unit(k, l)),
                            ));
                        }
                    }
                }
                if self.space.m_plus > 0 {
                    for a in 1..=m {
                        for b in 1..=m {
                            out.push((
                                format!("e'_plus_{a}{b}"),
                                self.omega_w(&self.a_kprime_plus_unit(a, b)),
                            ));
                        }
                    }
                }
            }
            DualPairCase::B { .. } => {
                for k in 1..=m {
                    for l in 1..=m {
                        if k <= l {
                            out.push((format!("w'{k}^w''{l}"), self.b_kprime_t1(k, l)));
                        }
                        if k < l {
                            out.push((format!("w'{k}^w'{l}"), self.b_kprime_t2(k, l)));
                            out.push((format!("w''{k}^w''{l}"), self.b_kprime_t3(k, l)));
                        }
                    }
                }
            }
            DualPairCase::C { .. } => {
                for k in 1..=m {
                    for l in 1..=m {
                        out.push((format!("s1_{k}{l}"), self.c_kprime_s1(k, l)));
                        if k <= l {
                            out.push((format!("s2_{k}{l}"), self.c_kprime_s2(k, l)));
                            out.push((format!("s3_{k}{l}"), self.c_kprime_s3(k, l)));
                        }
                    }
                }
            }
        }
        out
    }

    fn half_rows(&self) -> u8 {
        self.rows() as u8 / 2
    }

    /// Case B: `ω(w′_k ∧ w″_ℓ) = 2Σ_α(u⁻_{α+n,k}∂_{α+n,ℓ} − u⁻_{α,ℓ}∂_{α,k})`.
    pub fn b_kprime_t1(&self, k: u8, l: u8) -> DiffOperator {
        let n = self.half_rows();
        let mut op = DiffOperator::zero();
        for al in 1..=n {
            op = &op
                + &mul_d(VarId::UMinus(al + n, k), VarId::UMinus(al + n, l))
                    .scale(&Scalar::from_int(2));
            op = &op
                - &mul_d(VarId::UMinus(al, l), VarId::UMinus(al, k)).scale(&Scalar::from_int(2));
        }
        op
    }

    /// Case B: `ω(w′_k ∧ w′_ℓ) = 2Σ_α(u⁻_{α+n,k}∂_{α,ℓ} − u⁻_{α+n,ℓ}∂_{α,k})`.
    pub fn b_kprime_t2(&self, k: u8, l: u8) -> DiffOperator {
        let n = self.half_rows();
        let mut op = DiffOperator::zero();
        for al in 1..=n {
            op = &op
                + &mul_d(VarId::UMinus(al + n, k), VarId::UMinus(al, l))
                    .scale(&Scalar::from_int(2));
            op = &op
                - &mul_d(VarId::UMinus(al + n, l), VarId::UMinus(al, k))
                    .scale(&Scalar::from_int(2));
        }
        op
    }

    /// Case B: `ω(w″_k ∧ w″_ℓ) = 2Σ_α(u⁻_{α,k}∂_{α+n,ℓ} − u⁻_{α,ℓ}∂_{α+n,k})`.
    pub fn b_kprime_t3(&self, k: u8, l: u8) -> DiffOperator {
        let n = self.half_rows();
        let mut op = DiffOperator::zero();
        for al in 1..=n {
            op = &op
                + &mul_d(VarId::UMinus(al, k), VarId::UMinus(al + n, l))
                    .scale(&Scalar::from_int(2));
            op = &op
                - &mul_d(VarId::UMinus(al, l), VarId::UMinus(al + n, k))
                    .scale(&Scalar::from_int(2));
        }
        op
    }

    /// Case C: `ω(e_{k,ℓ} − e_{r+ℓ,r+k}) = Σ_α(u⁻_{α,k}∂_{α,ℓ} − u⁻_{α+n,ℓ}∂_{α+n,k})`.
    pub fn c_kprime_s1(&self, k: u8, l: u8) -> DiffOperator {
        let n = self.half_rows();
        let mut op = DiffOperator::zero();
        for al in 1..=n {
            op = &op + &mul_d(VarId::UMinus(al, k), VarId::UMinus(al, l));
            op = &op - &mul_d(VarId::UMinus(al + n, l), VarId::UMinus(al + n, k));
        }
        op
    }

    /// Case C: `ω(e_{k,r+ℓ} + e_{ℓ,r+k}) = Σ_α(u⁻_{α,k}∂_{α+n,ℓ} + u⁻_{α,ℓ}∂_{α+n,k})`.
    pub fn c_kprime_s2(&self, k: u8, l: u8) -> DiffOperator {
        let n = self.half_rows();
        let mut op = DiffOperator::zero();
        for al in 1..=n {
            op = &op + &mul_d(VarId::UMinus(al, k), VarId::UMinus(al + n, l));
            op = &op + &mul_d(VarId::UMinus(al, l), VarId::UMinus(al + n, k));
        }
        op
    }

    /// Case C: `ω(e_{r+k,ℓ} + e_{r+ℓ,k}) = Σ_α(u⁻_{α+n,ℓ}∂_{α,k} + u⁻_{α+n,k}∂_{α,ℓ})`.
    pub fn c_kprime_s3(&self, k: u8, l: u8) -> DiffOperator {
        let n = self.half_rows();
        let mut op = DiffOperator::zero();
        for al in 1..=n {
            op = &op + &mul_d(VarId::UMinus(al + n, l), VarId::UMinus(al, k));
            op = &op + &mul_d(VarId::UMinus(al + n, k), VarId::UMinus(al, l));
        }
        op
    }

    // ----- weights and annihilation -----

    /// Derivative of the case-A determinant twist `det^{−(r−s)/2}`; zero for
    /// the other cases.
    pub fn det_twist(&self, m: &CMat) -> GaussianRational {
        match self.case {
            DualPairCase::A { r, s, .. } => {
                let c = GaussianRational::new(
                    BigRational::new((-((r as i64) - (s as i64))).into(), 2.into()),
                    BigRational::from_integer(0.into()),
                );
                &c * &cmat_trace(m)
            }
            _ => gi(0),
        }
    }

    // ----- adjoint action on ∧𝔭± -----

    /// Expand `[m, X_{a,b}]` over the `X`-basis (or `[m, Y_{a,b}]` over the
    /// `Y`-basis when `minus` is set). Errors if the bracket leaves the span,
    /// which would signal a non-`𝔨` argument.
    pub fn ad_matrix(&self, m: &CMat, minus: bool) -> Result<Vec<Vec<GaussianRational>>, String> {
        let idx = self.case.p_plus_indices();
        let basis: Vec<CMat> = idx
            .iter()
            .map(|&(a, b)| {
                if minus {
                    self.y_matrix(a, b)
                } else {
                    self.x_matrix(a, b)
                }
            })
            .collect();
        let n = self.rows();
        // columns: basis elements flattened; rows: matrix entries
        let mut mat: Vec<Vec<GaussianRational>> = vec![Vec::new(); n * n];
        for b in &basis {
            for i in 0..n {
                for j in 0..n {
                    mat[i * n + j].push(b[i][j].clone());
                }
            }
        }
        let mut cols = Vec::new();
        for x in &basis {
            let br = cmat_commutator(m, x);
            let rhs: Vec<GaussianRational> = (0..n * n).map(|f| br[f / n][f % n].clone()).collect();
            match linalg::solve(&mat, &rhs) {
                Ok(sol) => cols.push(sol),
                Err(_) => return Err("bracket leaves the span of 𝔭±".into()),
            }
        }
        // transpose: out[target][source]
        let d = basis.len();
        let mut out = vec![vec![gi(0); d]; d];
        for (src, col) in cols.iter().enumerate() {
            for (tgt, v) in col.iter().enumerate() {
                out[tgt][src] = v.clone();
            }
        }
        Ok(out)
    }

    /// Apply the adjoint action (as a derivation) to a wedge in the
    /// `∧𝔭₊`-monomial basis (`minus` for `∧𝔭₋`).
    pub fn ad_wedge(&self, m: &CMat, w: &Wedge, minus: bool) -> Wedge {
        let idx = self.case.p_plus_indices();
        let pos_of = |ab: (u8, u8)| idx.iter().position(|&x| x == ab).unwrap();
        let ad = self.ad_matrix(m, minus).expect("ad_wedge: not a 𝔨 element");
        let mut out = Wedge::zero();
        for (mono, coeff) in w.terms() {
            for (slot, &ab) in mono.iter().enumerate() {
                let src = pos_of(ab);
                for (tgt, c) in ad.iter().map(|row| &row[src]).enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut new_mono = mono.clone();
                    new_mono[slot] = idx[tgt];
                    out.add_term(new_mono, coeff * c);
                }
            }
        }
        out
    }

    /// Check whether `[x, y]` of two `𝔭`-basis matrices lies in the span of
    /// the `𝔨` basis.
    pub fn bracket_in_k_span(&self, x: &CMat, y: &CMat) -> bool {
        let br = cmat_commutator(x, y);
        let n = self.rows();
        let basis = self.k_basis();
        let mut mat: Vec<Vec<GaussianRational>> = vec![Vec::new(); n * n];
        for (_, b) in &basis {
            for i in 0..n {
                for j in 0..n {
                    mat[i * n + j].push(b[i][j].clone());
                }
            }
        }
        let rhs: Vec<GaussianRational> = (0..n * n).map(|f| br[f / n][f % n].clone()).collect();
        linalg::solve(&mat, &rhs).is_ok()
    }
}

/// `u_v · ∂/∂u_w` as an operator.
pub fn mul_d(v: VarId, w: VarId) -> DiffOperator {
    DiffOperator::mul_by(Poly::var(v)).compose(&DiffOperator::d(w))
}

/// Weight entries are half-integers, stored as numerators over 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightVector(pub Vec<BigRational>);

impl WeightVector {
    pub fn from_halves(halves: Vec<i64>) -> Self {
        WeightVector(
            halves
                .into_iter()
                .map(|h| BigRational::new(h.into(), 2.into()))
                .collect(),
        )
    }

    pub fn from_ints(ws: Vec<i64>) -> Self {
        WeightVector(ws.into_iter().map(BigRational::from_integer_i64).collect())
    }
}

trait FromI64 {
    fn from_integer_i64(n: i64) -> Self;
}

impl FromI64 for BigRational {
    fn from_integer_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
}

/// Outcome of a simultaneous-eigenvector test.
#[derive(Clone, Debug)]
pub enum WeightResult {
    Weight(WeightVector),
    /// Not an eigenvector of the generator at this position.
    NotWeight {
        generator: usize,
    },
}

/// Eigenvalue of `op` on `p`, when `p` is an exact eigenvector.
pub fn eigenvalue_of(op: &DiffOperator, p: &Poly) -> Option<GaussianRational> {
    assert!(!p.is_zero(), "zero polynomial has no weight");
    let image = op.apply(p);
    if image.is_zero() {
        return Some(gi(0));
    }
    let (m0, c0) = p.leading().unwrap();
    let ic = image.coefficient(m0);
    let c0r = c0.as_rat()?;
    let icr = ic.as_rat()?;
    let lam = &icr * &c0r.inv();
    let expect = p.scale(&Scalar::from_rat(lam.clone()));
    if expect == image {
        Some(lam)
    } else {
        None
    }
}

/// Simultaneous torus eigenvalues of a polynomial under a list of operators.
pub fn weight_of_poly(torus: &[DiffOperator], p: &Poly) -> WeightResult {
    let mut out = Vec::new();
    for (n, op) in torus.iter().enumerate() {
        match eigenvalue_of(op, p) {
            Some(lam) if lam.im.is_zero() => out.push(lam.re),
            _ => return WeightResult::NotWeight { generator: n },
        }
    }
    WeightResult::Weight(WeightVector(out))
}

/// Simultaneous eigenvalues of a wedge under the adjoint action of torus
/// matrices.
pub fn weight_of_wedge(alg: &CaseAlgebra, torus: &[CMat], w: &Wedge, minus: bool) -> WeightResult {
    let mut out = Vec::new();
    for (n, t) in torus.iter().enumerate() {
        let image = alg.ad_wedge(t, w, minus);
        if image.is_zero() {
            out.push(BigRational::from_integer(0.into()));
            continue;
        }
        let (m0, c0) = w.terms().next().unwrap();
        let ic = image
            .terms()
            .find(|(m, _)| *m == m0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| gi(0));
        let lam = &ic * &c0.inv();
        if image == w.scale(&lam) && lam.im.is_zero() {
            out.push(lam.re);
        } else {
            return WeightResult::NotWeight { generator: n };
        }
    }
    WeightResult::Weight(WeightVector(out))
}

/// First generator in `ops` that fails to annihilate `p`, with the image.
pub fn annihilation_witness(ops: &[DiffOperator], p: &Poly) -> Option<(usize, Poly)> {
    for (n, op) in ops.iter().enumerate() {
        let image = op.apply(p);
        if !image.is_zero() {
            return Some((n, image));
        }
    }
    None
}

/// Reference weight tuple of `e_D` under the `𝔨` torus.
pub fn e_weight_table(case: DualPairCase) -> WeightVector {
    let mut w = Vec::new();
    match case {
        DualPairCase::A { p, q, r, s } => {
            let (p, q, r, s) = (p as i64, q as i64, r as i64, s as i64);
            for _ in 0..r {
                w.push(2 * q);
            }
            for _ in 0..p - r {
                w.push(2 * s);
            }
            for _ in 0..s {
                w.push(-2 * p);
            }
            for _ in 0..q - s {
                w.push(-2 * r);
            }
        }
        DualPairCase::B { n, r } => {
            for _ in 0..r {
                w.push(2 * (n as i64 + 1));
            }
            for _ in 0..n - r {
                w.push(2 * r as i64);
            }
        }
        DualPairCase::C { n, r } => {
            for _ in 0..r {
                w.push(2 * (n as i64 - 1));
            }
            for _ in 0..n - r {
                w.push(2 * r as i64);
            }
        }
    }
    WeightVector::from_halves(w)
}

/// Reference weight tuple of `f_D` under the `𝔨` torus; differs from the
/// `e_D` table by the constant shift `+(r−s)/2` in case A only.
pub fn f_weight_table(case: DualPairCase) -> WeightVector {
    match case {
        DualPairCase::A { p, q, r, s } => {
            let (p, q, r, s) = (p as i64, q as i64, r as i64, s as i64);
            let mut w = Vec::new();
            for _ in 0..r {
                w.push(2 * q + (r - s));
            }
            for _ in 0..p - r {
                w.push(r + s);
            }
            for _ in 0..s {
                w.push((r - s) - 2 * p);
            }
            for _ in 0..q - s {
                w.push(-(r + s));
            }
            WeightVector::from_halves(w)
        }
        _ => e_weight_table(case),
    }
}

/// Reference weight tuple of `f_D` under the `𝔨′` torus (length = number
/// of `u⁻` columns).
pub fn kprime_f_weight_table(case: DualPairCase) -> WeightVector {
    let mut w = Vec::new();
    match case {
        DualPairCase::A { p, q, r, s } => {
            let (p, q, r, s) = (p as i64, q as i64, r as i64, s as i64);
            for _ in 0..r {
                w.push(-2 * s + (p + q));
            }
            for _ in 0..s {
                w.push(2 * r - (p + q));
            }
        }
        DualPairCase::B { n, r } => {
            for _ in 0..r {
                w.push(2 * (n as i64 - r as i64 + 1));
            }
        }
        DualPairCase::C { n, r } => {
            for _ in 0..r {
                w.push(2 * (n as i64 - r as i64 - 1));
            }
        }
    }
    WeightVector::from_halves(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn um(i: u8, k: u8) -> Poly {
        Poly::var(VarId::UMinus(i, k))
    }

    /// Normalization lock: case A `𝔨` action on `𝒫₋`:
    /// `ω(e_{αβ}) = Σ_k u⁻_{αk}∂_{βk} + δ_{αβ}(r+s)/2`,
    /// `ω(e_{μν}) = −Σ_k u⁻_{νk}∂_{μk} − δ_{μν}(r+s)/2`.
    #[test]
    fn lock_case_a_k_action_on_p_minus() {
        let case = DualPairCase::a(2, 2, 1, 1);
        let alg = CaseAlgebra::new(case, Model::Minus);
        let m = case.m_cols();
        let half = Scalar::from_ratio(m as i64, 2);
        for a in 1..=2u8 {
            for b in 1..=2u8 {
                let got = alg.omega(&cmat_unit(4, a, b));
                let mut expect = DiffOperator::zero();
                for k in 1..=m {
                    expect = &expect + &mul_d(VarId::UMinus(a, k), VarId::UMinus(b, k));
                }
                if a == b {
                    expect = &expect + &DiffOperator::identity().scale(&half);
                }
                assert_eq!(got, expect, "e_{a}{b}");
            }
        }
        for mu in 3..=4u8 {
            for nu in 3..=4u8 {
                let got = alg.omega(&cmat_unit(4, mu, nu));
                let mut expect = DiffOperator::zero();
                for k in 1..=m {
                    expect = &expect - &mul_d(VarId::UMinus(nu, k), VarId::UMinus(mu, k));
                }
                if mu == nu {
                    expect = &expect - &DiffOperator::identity().scale(&half);
                }
                assert_eq!(got, expect, "e_{mu}{nu}");
            }
        }
    }

    /// Spec example: A(1,1,1,0), ω(e₁₁)·u⁻₁₁ = (3/2)·u⁻₁₁.
    #[test]
    fn diag_eigenvalue_example() {
        let alg = CaseAlgebra::new(DualPairCase::a(1, 1, 1, 0), Model::Minus);
        let got = alg.omega(&cmat_unit(2, 1, 1)).apply(&um(1, 1));
        assert_eq!(got, um(1, 1).scale(&Scalar::from_ratio(3, 2)));
    }

    /// Normalization lock: case B `𝔨` action,
    /// `ω(v_α⋄v_{β+n}) = −iΣ_k(u_{α+n,k}∂_{β+n,k} + u_{α,k}∂_{β,k}) − i·r·δ_{αβ}`.
    #[test]
    fn lock_case_b_k_action_on_p_minus() {
        let case = DualPairCase::b(2, 1);
        let alg = CaseAlgebra::new(case, Model::Minus);
        let r = 1u8;
        let n = 2u8;
        for a in 1..=n {
            for b in 1..=n {
                // v_α⋄v_{β+n} = −i·k_{αβ}
                let elt = cmat_scale(&alg.k_unit(a, b), &(-ii()));
                let got = alg.omega(&elt);
                let mut expect = DiffOperator::zero();
                for k in 1..=r {
                    expect = &expect
                        + &(&mul_d(VarId::UMinus(a + n, k), VarId::UMinus(b + n, k))
                            + &mul_d(VarId::UMinus(a, k), VarId::UMinus(b, k)))
                            .scale(&(-Scalar::i()));
                }
                if a == b {
                    expect = &expect
                        - &DiffOperator::identity()
                            .scale(&(Scalar::i() * Scalar::from_int(r as i64)));
                }
                assert_eq!(got, expect, "v_{a}⋄v_({b}+n)");
            }
        }
    }

    /// Normalization lock: case C `𝔨` action matches the same display.
    #[test]
    fn lock_case_c_k_action_on_p_minus() {
        let case = DualPairCase::c(3, 1);
        let alg = CaseAlgebra::new(case, Model::Minus);
        let r = 1u8;
        let n = 3u8;
        for a in 1..=n {
            for b in 1..=n {
                let elt = cmat_scale(&alg.k_unit(a, b), &(-ii()));
                let got = alg.omega(&elt);
                let mut expect = DiffOperator::zero();
                for k in 1..=r {
                    expect = &expect
                        + &(&mul_d(VarId::UMinus(a + n, k), VarId::UMinus(b + n, k))
                            + &mul_d(VarId::UMinus(a, k), VarId::UMinus(b, k)))
                            .scale(&(-Scalar::i()));
                }
                if a == b {
                    expect = &expect
                        - &DiffOperator::identity()
                            .scale(&(Scalar::i() * Scalar::from_int(r as i64)));
                }
                assert_eq!(got, expect);
            }
        }
    }

    /// Normalization lock: case A `𝔨′` action on `𝒫₋` (the `e′_{kℓ}` block):
    /// `ω(e'_{kℓ}) = Σ_α u⁻_{αk}∂_{αℓ} − Σ_μ u⁻_{μℓ}∂_{μk} + δ_{kℓ}(p−q)/2`.
    #[test]
    fn lock_case_a_kprime_action() {
        let case = DualPairCase::a(2, 1, 1, 1);
        let alg = CaseAlgebra::new(case, Model::Minus);
        let (p, q, m) = (2u8, 1u8, 2u8);
        for k in 1..=m {
            for l in 1..=m {
                let got = alg.omega_w(&alg.a_kprime_minus_unit(k, l));
                let mut expect = DiffOperator::zero();
                for al in 1..=p {
                    expect = &expect + &mul_d(VarId::UMinus(al, k), VarId::UMinus(al, l));
                }
                for mu in p + 1..=p + q {
                    expect = &expect - &mul_d(VarId::UMinus(mu, l), VarId::UMinus(mu, k));
                }
                if k == l {
                    expect = &expect
                        + &DiffOperator::identity()
                            .scale(&Scalar::from_ratio(p as i64 - q as i64, 2));
                }
                assert_eq!(got, expect, "e'_{k}{l}");
            }
        }
    }

    /// Case A `𝔨′`, `e'_{ab}` block: the derived action is the `u⁺`
    /// mirror of the `e'_{kℓ}` display,
    /// `ω(e'_{ab}) = −Σ_α u⁺_{αb}∂_{αa} + Σ_μ u⁺_{μa}∂_{μb} − δ_{ab}(p−q)/2`.
    #[test]
    fn lock_case_a_kprime_plus_block() {
        let case = DualPairCase::a(2, 1, 1, 1);
        let alg = CaseAlgebra::new(case, Model::Plus);
        let (p, q, m) = (2u8, 1u8, 2u8);
        for a in 1..=m {
            for b in 1..=m {
                let got = alg.omega_w(&alg.a_kprime_plus_unit(a, b));
                let mut expect = DiffOperator::zero();
                for al in 1..=p {
                    expect = &expect - &mul_d(VarId::UPlus(al, b), VarId::UPlus(al, a));
                }
                for mu in p + 1..=p + q {
                    expect = &expect + &mul_d(VarId::UPlus(mu, a), VarId::UPlus(mu, b));
                }
                if a == b {
                    expect = &expect
                        - &DiffOperator::identity()
                            .scale(&Scalar::from_ratio(p as i64 - q as i64, 2));
                }
                assert_eq!(got, expect, "e'+_{a}{b}");
            }
        }
    }

    /// The `𝔨′` operators of cases B and C commute with the derived
    /// `𝔤`-action (dual pair property).
    #[test]
    fn kprime_commutes_with_g_cases_b_c() {
        for case in [DualPairCase::b(2, 1), DualPairCase::c(3, 1)] {
            let alg = CaseAlgebra::new(case, Model::Minus);
            let mut g_ops: Vec<DiffOperator> =
                alg.k_basis().iter().map(|(_, m)| alg.omega(m)).collect();
            for ((a, b), m) in alg.p_plus_basis() {
                let _ = (a, b);
                g_ops.push(alg.omega(&m));
            }
            for ((_, _), m) in alg.p_minus_basis() {
                g_ops.push(alg.omega(&m));
            }
            for (name, kp) in alg.kprime_all_ops() {
                for g in &g_ops {
                    let c = kp.commutator(g);
                    assert!(c.is_zero(), "{case:?} {name} fails to commute: {c:?}");
                }
            }
        }
    }

    /// Weight machinery: `u⁻₁₁ + u⁻₂₁` with distinct row weights is not a
    /// weight vector.
    #[test]
    fn non_weight_vector_detected() {
        let case = DualPairCase::a(2, 2, 1, 1);
        let alg = CaseAlgebra::new(case, Model::Minus);
        let torus: Vec<DiffOperator> = alg.k_torus().iter().map(|t| alg.omega(t)).collect();
        let p = &um(1, 1) + &um(2, 1);
        match weight_of_poly(&torus, &p) {
            WeightResult::NotWeight { .. } => {}
            WeightResult::Weight(w) => panic!("unexpected weight {w:?}"),
        }
    }
}
