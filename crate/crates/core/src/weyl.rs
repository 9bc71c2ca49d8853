//! The infinitesimal Fock model.
//!
//! The polynomial model `𝒫` lives on variables `u⁺_{i,a}` / `u⁻_{i,k}` with
//! rows `i ∈ [1, p+q]` and columns in `[1, m₊]` / `[1, m₋]`. Each variable
//! owns a conjugate pair of vectors in the complexified symplectic space: a
//! multiplication vector (acting as `u_J·`) and an annihilation vector
//! (acting as `2iλ·∂/∂u_J`, i.e. `−4π·∂/∂u_J` at `λ = 2πi`). The pairs are
//! normalized so that `⟨⟨ann_J, mult_J⟩⟩ = 2i`.
//!
//! A Lie algebra element enters as a complexified matrix acting on the rows
//! (the `V` side) or on the columns (the `W` side). Its image under the
//! quadratic embedding into the Weyl algebra is
//!
//! `j(X) = (i/8λ) Σ_J [(X·a_J)·m_J + m_J·(X·a_J) − (X·m_J)·a_J − a_J·(X·m_J)]`
//!
//! (a symmetrized contraction over a `⟨⟨,⟩⟩`-dual basis), which this module
//! expands into an exact [`DiffOperator`].

// Dense index loops over small matrices are the idiom here.
#![allow(
    clippy::needless_range_loop,
    clippy::assign_op_pattern,
    clippy::type_complexity
)]
use crate::diffop::DiffOperator;
use crate::poly::{Poly, VarId};
use crate::scalar::{GaussianRational, Scalar};

/// Complexified matrix with exact ℚ(i) entries, indexed `[row][col]`,
/// 0-based.
pub type CMat = Vec<Vec<GaussianRational>>;

pub fn cmat_zero(n: usize) -> CMat {
    vec![vec![GaussianRational::from_int(0); n]; n]
}

/// Matrix unit `e_{i,j}` (1-based indices).
pub fn cmat_unit(n: usize, i: u8, j: u8) -> CMat {
    let mut m = cmat_zero(n);
    m[i as usize - 1][j as usize - 1] = GaussianRational::from_int(1);
    m
}

pub fn cmat_add(a: &CMat, b: &CMat) -> CMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| x.clone() + y.clone())
                .collect()
        })
        .collect()
}

pub fn cmat_sub(a: &CMat, b: &CMat) -> CMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| x.clone() - y.clone())
                .collect()
        })
        .collect()
}

pub fn cmat_scale(a: &CMat, c: &GaussianRational) -> CMat {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

pub fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let mut out = cmat_zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let prod = &a[i][k] * &b[k][j];
                out[i][j] = out[i][j].clone() + prod;
            }
        }
    }
    out
}

pub fn cmat_commutator(a: &CMat, b: &CMat) -> CMat {
    cmat_sub(&cmat_mul(a, b), &cmat_mul(b, a))
}

pub fn cmat_is_zero(a: &CMat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

pub fn cmat_trace(a: &CMat) -> GaussianRational {
    let mut t = GaussianRational::from_int(0);
    for (i, row) in a.iter().enumerate() {
        t = t + row[i].clone();
    }
    t
}

/// The Fock space shape: row split `(p, q)` and column counts of the two
/// variable families. Sub-models of a full `(m, m)` model are obtained by
/// setting one of the column counts to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    pub p: u8,
    pub q: u8,
    pub m_plus: u8,
    pub m_minus: u8,
}

/// Column tag: `u⁺` column `a` or `u⁻` column `k` (both 1-based, `u⁻`
/// already shifted down by `m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Col {
    Plus(u8),
    Minus(u8),
}

impl FockSpace {
    pub fn new(p: u8, q: u8, m_plus: u8, m_minus: u8) -> Self {
        FockSpace {
            p,
            q,
            m_plus,
            m_minus,
        }
    }

    pub fn rows(&self) -> u8 {
        self.p + self.q
    }

    fn ncols(&self) -> u8 {
        self.m_plus + self.m_minus
    }

    /// All variables, `u⁺` block first, row-major.
    pub fn vars(&self) -> Vec<VarId> {
        let mut out = Vec::new();
        for i in 1..=self.rows() {
            for a in 1..=self.m_plus {
                out.push(VarId::UPlus(i, a));
            }
        }
        for i in 1..=self.rows() {
            for k in 1..=self.m_minus {
                out.push(VarId::UMinus(i, k));
            }
        }
        out
    }

    fn var_index(&self, v: VarId) -> usize {
        match v {
            VarId::UPlus(i, a) => ((i - 1) as usize) * self.m_plus as usize + (a - 1) as usize,
            VarId::UMinus(i, k) => {
                self.rows() as usize * self.m_plus as usize
                    + ((i - 1) as usize) * self.m_minus as usize
                    + (k - 1) as usize
            }
            _ => panic!("not a Fock variable"),
        }
    }

    fn var_of(&self, idx: usize) -> VarId {
        let nplus = self.rows() as usize * self.m_plus as usize;
        if idx < nplus {
            let i = idx / self.m_plus as usize;
            let a = idx % self.m_plus as usize;
            VarId::UPlus(i as u8 + 1, a as u8 + 1)
        } else {
            let j = idx - nplus;
            let i = j / self.m_minus as usize;
            let k = j % self.m_minus as usize;
            VarId::UMinus(i as u8 + 1, k as u8 + 1)
        }
    }

    pub fn num_vars(&self) -> usize {
        self.rows() as usize * self.ncols() as usize
    }

    fn row_of(v: VarId) -> u8 {
        match v {
            VarId::UPlus(i, _) | VarId::UMinus(i, _) => i,
            _ => panic!("not a Fock variable"),
        }
    }

    fn col_of(v: VarId) -> Col {
        match v {
            VarId::UPlus(_, a) => Col::Plus(a),
            VarId::UMinus(_, k) => Col::Minus(k),
            _ => panic!("not a Fock variable"),
        }
    }

    /// Flat index into the primed basis; `con` is the construction type
    /// (`false` = single prime, `true` = double prime).
    fn primed_index(&self, v: VarId, con: bool) -> usize {
        self.var_index(v) * 2 + con as usize
    }

    /// Is the primed vector `(v, con)` the multiplication vector of its
    /// variable? The double-prime construction is the multiplication vector
    /// exactly on the first `p` rows.
    fn is_mult(&self, v: VarId, con: bool) -> bool {
        (Self::row_of(v) <= self.p) == con
    }

    fn ann_index(&self, v: VarId) -> usize {
        self.primed_index(v, Self::row_of(v) > self.p)
    }

    fn mult_index(&self, v: VarId) -> usize {
        self.primed_index(v, Self::row_of(v) <= self.p)
    }

    /// `ρ` of a primed basis vector: multiplication by the variable, or
    /// `2iλ·∂ = −4π·∂` for the annihilation partner.
    fn rho(&self, primed: usize) -> DiffOperator {
        let v = self.var_of(primed / 2);
        let con = primed % 2 == 1;
        if self.is_mult(v, con) {
            DiffOperator::mul_by(Poly::var(v))
        } else {
            DiffOperator::d(v).scale(&(Scalar::from_int(-4) * Scalar::pi_pow(1)))
        }
    }

    /// Multiplication operator of the Weyl pair attached to a variable.
    pub fn weyl_mult(&self, v: VarId) -> DiffOperator {
        self.rho(self.mult_index(v))
    }

    /// Annihilation operator (`2iλ ∂/∂u` at `λ = 2πi`).
    pub fn weyl_ann(&self, v: VarId) -> DiffOperator {
        self.rho(self.ann_index(v))
    }

    /// Expand the quadratic Weyl element of a primed-basis matrix into a
    /// differential operator. `g[target][source]` over primed indices.
    fn omega_from_primed(&self, g: &[Vec<GaussianRational>]) -> DiffOperator {
        // i/(8λ) = 1/(16π) at λ = 2πi
        let coef = Scalar::from_ratio(1, 16) * Scalar::pi_pow(-1);
        let mut op = DiffOperator::zero();
        let dim = 2 * self.num_vars();
        for var in self.vars() {
            let aj = self.ann_index(var);
            let mj = self.mult_index(var);
            let rho_m = self.rho(mj);
            let rho_a = self.rho(aj);
            for t in 0..dim {
                // (X a_J)·m_J + m_J·(X a_J)
                if !g[t][aj].is_zero() {
                    let rho_t = self.rho(t);
                    let sym = &rho_t.compose(&rho_m) + &rho_m.compose(&rho_t);
                    op = &op + &sym.scale(&(Scalar::from_rat(g[t][aj].clone()) * coef.clone()));
                }
                // −(X m_J)·a_J − a_J·(X m_J)
                if !g[t][mj].is_zero() {
                    let rho_t = self.rho(t);
                    let sym = &rho_t.compose(&rho_a) + &rho_a.compose(&rho_t);
                    op = &op - &sym.scale(&(Scalar::from_rat(g[t][mj].clone()) * coef.clone()));
                }
            }
        }
        op
    }

    /// Row sign: `+1` on the first `p` rows, `−1` after.
    fn row_sign(&self, i: usize) -> i64 {
        if (i as u8) < self.p {
            1
        } else {
            -1
        }
    }

    fn col_sign(c: Col) -> i64 {
        match c {
            Col::Plus(_) => 1,
            Col::Minus(_) => -1,
        }
    }

    /// `C̃ = −H Mᵗ H` for a signature matrix `H` given through `sign`.
    fn conj_part(m: &CMat, sign: &dyn Fn(usize) -> i64) -> CMat {
        let n = m.len();
        let mut out = cmat_zero(n);
        for i in 0..n {
            for j in 0..n {
                let s = GaussianRational::from_int(-sign(i) * sign(j));
                out[i][j] = &m[j][i] * &s;
            }
        }
        out
    }

    /// Build the primed-basis matrix of a complexified matrix acting on the
    /// rows (the `V` side of the tensor).
    fn primed_of_v(&self, m: &CMat) -> Vec<Vec<GaussianRational>> {
        assert_eq!(m.len(), self.rows() as usize);
        let dim = 2 * self.num_vars();
        let mut g = vec![vec![GaussianRational::from_int(0); dim]; dim];
        let conj = Self::conj_part(m, &|i| self.row_sign(i));
        for var in self.vars() {
            let i = Self::row_of(var) as usize - 1;
            let col = Self::col_of(var);
            for con in [false, true] {
                // single-prime constructions on plus columns (and
                // double-prime on minus columns) see old scalars directly
                let direct = (Self::col_sign(col) > 0) == !con;
                let src = self.primed_index(var, con);
                for j in 0..self.rows() as usize {
                    let entry = if direct { &m[j][i] } else { &conj[j][i] };
                    if entry.is_zero() {
                        continue;
                    }
                    let tgt_var = match col {
                        Col::Plus(a) => VarId::UPlus(j as u8 + 1, a),
                        Col::Minus(k) => VarId::UMinus(j as u8 + 1, k),
                    };
                    let tgt = self.primed_index(tgt_var, con);
                    g[tgt][src] = g[tgt][src].clone() + entry.clone();
                }
            }
        }
        g
    }

    /// Build the primed-basis matrix of a complexified matrix acting on the
    /// columns (the `W` side). The matrix is indexed over the combined
    /// column list, `u⁺` columns first; it must be block diagonal with
    /// respect to the two column families.
    fn primed_of_w(&self, m: &CMat) -> Vec<Vec<GaussianRational>> {
        let nc = self.ncols() as usize;
        assert_eq!(m.len(), nc);
        let csign = |c: usize| {
            if (c as u8) < self.m_plus {
                1
            } else {
                -1
            }
        };
        for r in 0..nc {
            for c in 0..nc {
                if csign(r) != csign(c) {
                    assert!(
                        m[r][c].is_zero(),
                        "W-side matrix must preserve column blocks"
                    );
                }
            }
        }
        let dim = 2 * self.num_vars();
        let mut g = vec![vec![GaussianRational::from_int(0); dim]; dim];
        let conj = Self::conj_part(m, &csign);
        let col_idx = |c: Col| match c {
            Col::Plus(a) => a as usize - 1,
            Col::Minus(k) => self.m_plus as usize + k as usize - 1,
        };
        let col_of_idx = |d: usize| {
            if (d as u8) < self.m_plus {
                Col::Plus(d as u8 + 1)
            } else {
                Col::Minus(d as u8 - self.m_plus + 1)
            }
        };
        for var in self.vars() {
            let i = Self::row_of(var);
            let c = col_idx(Self::col_of(var));
            for con in [false, true] {
                let direct = (csign(c) > 0) == !con;
                let src = self.primed_index(var, con);
                for d in 0..nc {
                    let entry = if direct { &m[d][c] } else { &conj[d][c] };
                    if entry.is_zero() {
                        continue;
                    }
                    let tgt_var = match col_of_idx(d) {
                        Col::Plus(a) => VarId::UPlus(i, a),
                        Col::Minus(k) => VarId::UMinus(i, k),
                    };
                    let tgt = self.primed_index(tgt_var, con);
                    g[tgt][src] = g[tgt][src].clone() + entry.clone();
                }
            }
        }
        g
    }

    /// `ω` of a complexified matrix acting on the rows.
    pub fn omega_v(&self, m: &CMat) -> DiffOperator {
        self.omega_from_primed(&self.primed_of_v(m))
    }

    /// `ω` of a complexified matrix acting on the columns.
    pub fn omega_w(&self, m: &CMat) -> DiffOperator {
        self.omega_from_primed(&self.primed_of_w(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    /// `𝒫₋` model of the `(U(1,1), U(0,1))` pair.
    fn tiny_minus() -> FockSpace {
        FockSpace::new(1, 1, 0, 1)
    }

    #[test]
    fn weyl_pair_is_canonical() {
        let f = tiny_minus();
        let v = VarId::UMinus(1, 1);
        // [ann, mult] = 2iλ = -4π
        let comm = f.weyl_ann(v).commutator(&f.weyl_mult(v));
        let expect = DiffOperator::identity().scale(&(Scalar::from_int(-4) * Scalar::pi_pow(1)));
        assert_eq!(comm, expect);
    }

    #[test]
    fn diag_unit_acts_with_half_constant() {
        // ω(e_11) = u∂u + m/2 on the minus model with one column.
        let f = tiny_minus();
        let m = cmat_unit(2, 1, 1);
        let op = f.omega_v(&m);
        let u = VarId::UMinus(1, 1);
        let expect = &DiffOperator::mul_by(Poly::var(u)).compose(&DiffOperator::d(u))
            + &DiffOperator::identity().scale(&Scalar::from_ratio(1, 2));
        assert_eq!(op, expect);
    }

    #[test]
    fn mu_diag_unit_has_minus_sign() {
        let f = tiny_minus();
        let m = cmat_unit(2, 2, 2);
        let op = f.omega_v(&m);
        let u = VarId::UMinus(2, 1);
        let expect = &(&DiffOperator::zero()
            - &DiffOperator::mul_by(Poly::var(u)).compose(&DiffOperator::d(u)))
            - &DiffOperator::identity().scale(&Scalar::from_ratio(1, 2));
        assert_eq!(op, expect);
    }

    #[test]
    fn omega_is_a_lie_homomorphism_on_gl2() {
        // [ω(a), ω(b)] = ω([a,b]) for matrix units of gl(2) acting on the
        // (U(1,1), U(0,2)) minus model.
        let f = FockSpace::new(1, 1, 0, 2);
        let units: Vec<CMat> = vec![
            cmat_unit(2, 1, 1),
            cmat_unit(2, 1, 2),
            cmat_unit(2, 2, 1),
            cmat_unit(2, 2, 2),
        ];
        for a in &units {
            for b in &units {
                let lhs = f.omega_v(a).commutator(&f.omega_v(b));
                let rhs = f.omega_v(&cmat_commutator(a, b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn v_and_w_actions_commute() {
        let f = FockSpace::new(1, 1, 1, 1);
        let v = cmat_unit(2, 1, 2);
        // block-diagonal W matrix: plus block unit and minus block unit
        let mut w = cmat_zero(2);
        w[0][0] = gi(3);
        w[1][1] = gi(-2);
        let comm = f.omega_v(&v).commutator(&f.omega_w(&w));
        assert!(
            comm.is_zero(),
            "row and column actions must commute: {comm:?}"
        );
    }
}
