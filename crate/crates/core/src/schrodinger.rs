//! The Schrödinger model: polynomial-times-Gaussian vectors, the
//! intertwiner `ι` from the Fock model, coordinate and Siegel-parabolic
//! actions, and the highest-term extraction.
//!
//! A [`GaussPoly`] is `P(z, z̄)·exp(−π·τ·Σ|z_{k,a}|²)` with `P` exact and a
//! rational Gaussian scale `τ` (`τ = 1` is the vacuum normalization; Siegel
//! scaling moves it). `z` and `z̄` are independent symbolic variables;
//! complex conjugation swaps them and conjugates coefficients.

// Dense index loops over small matrices are the idiom here.
#![allow(
    clippy::needless_range_loop,
    clippy::assign_op_pattern,
    clippy::type_complexity
)]
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cases::DualPairCase;
use crate::diffop::DiffOperator;
use crate::poly::{Poly, VarId};
use crate::scalar::{GaussianRational, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussPoly {
    pub poly: Poly,
    /// Gaussian scale `τ` in `exp(−π·τ·Σ|z|²)`.
    pub scale: BigRational,
}

impl GaussPoly {
    /// The vacuum `φ₀`.
    pub fn vacuum() -> Self {
        GaussPoly {
            poly: Poly::one(),
            scale: BigRational::one(),
        }
    }

    pub fn new(poly: Poly) -> Self {
        GaussPoly {
            poly,
            scale: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Complex conjugation: swap `z ↔ z̄`, conjugate coefficients.
    pub fn conj(&self) -> Self {
        GaussPoly {
            poly: self.poly.conj_z(),
            scale: self.scale.clone(),
        }
    }

    /// Keep only the maximal-total-degree homogeneous part of the
    /// polynomial prefactor.
    pub fn highest_term(&self) -> Self {
        GaussPoly {
            poly: self.poly.top_degree_part(),
            scale: self.scale.clone(),
        }
    }

    /// Numeric evaluation at a `(p+q)×m` complex point (row-major).
    pub fn evaluate(&self, pt: &[Vec<Complex64>]) -> Complex64 {
        let assign = |v: VarId| match v {
            VarId::Z(i, a) => pt[i as usize - 1][a as usize - 1],
            VarId::ZBar(i, a) => pt[i as usize - 1][a as usize - 1].conj(),
            other => panic!("GaussPoly evaluated on Fock variable {other:?}"),
        };
        let mut norm2 = 0.0f64;
        for row in pt {
            for z in row {
                norm2 += z.norm_sqr();
            }
        }
        let tau = self.scale.to_f64().expect("scale out of range");
        self.poly.eval_f64(&assign) * (-std::f64::consts::PI * tau * norm2).exp()
    }
}

/// Apply a z-side differential operator to a Gaussian vector through the
/// chain rule `∂_z(P·φ₀^τ) = (∂_z P − τπ z̄ P)·φ₀^τ` (and mirrored for z̄).
pub fn gauss_apply(op: &DiffOperator, g: &GaussPoly) -> GaussPoly {
    let tau_pi = Scalar::from_rat(GaussianRational::new(-g.scale.clone(), BigRational::zero()))
        * Scalar::pi_pow(1);
    let mut out = Poly::zero();
    for (deriv, coeff) in op.parts() {
        let mut q = g.poly.clone();
        for (v, e) in deriv.vars() {
            let partner = match v {
                VarId::Z(i, a) => VarId::ZBar(i, a),
                VarId::ZBar(i, a) => VarId::Z(i, a),
                other => panic!("gauss_apply on Fock variable {other:?}"),
            };
            for _ in 0..e {
                // (∂q) + (−τπ·partner)·q
                q = &q.derivative(v) + &(&Poly::var(partner).scale(&tau_pi) * &q);
            }
        }
        out = &out + &(coeff * &q);
    }
    GaussPoly {
        poly: out,
        scale: g.scale.clone(),
    }
}

/// Is the row an `α`-row (first block) of the case?
fn is_alpha(case: DualPairCase, i: u8) -> bool {
    i <= case.p_rows()
}

fn sqrt2_inv() -> Scalar {
    Scalar::two_pow_half(-1)
}

fn two_pi() -> Scalar {
    Scalar::from_int(2) * Scalar::pi_pow(1)
}

/// The `ι`-conjugate of multiplication by a Fock variable: a first-order
/// operator on the Schrödinger model.
pub fn iota_mult_op(case: DualPairCase, v: VarId) -> DiffOperator {
    let c = sqrt2_inv();
    match v {
        VarId::UPlus(i, a) if is_alpha(case, i) => {
            // (1/√2)(−2π z + 2 ∂_z̄)
            let m = DiffOperator::mul_by(Poly::var(VarId::Z(i, a))).scale(&(-two_pi()));
            let d = DiffOperator::d(VarId::ZBar(i, a)).scale(&Scalar::from_int(2));
            (&m + &d).scale(&c)
        }
        VarId::UPlus(i, a) => {
            let m = DiffOperator::mul_by(Poly::var(VarId::ZBar(i, a))).scale(&(-two_pi()));
            let d = DiffOperator::d(VarId::Z(i, a)).scale(&Scalar::from_int(2));
            (&m + &d).scale(&c)
        }
        VarId::UMinus(i, k) if is_alpha(case, i) => {
            let m = DiffOperator::mul_by(Poly::var(VarId::ZBar(i, k))).scale(&two_pi());
            let d = DiffOperator::d(VarId::Z(i, k)).scale(&Scalar::from_int(-2));
            (&m + &d).scale(&c)
        }
        VarId::UMinus(i, k) => {
            let m = DiffOperator::mul_by(Poly::var(VarId::Z(i, k))).scale(&two_pi());
            let d = DiffOperator::d(VarId::ZBar(i, k)).scale(&Scalar::from_int(-2));
            (&m + &d).scale(&c)
        }
        other => panic!("iota_mult_op on coordinate variable {other:?}"),
    }
}

/// The `ι`-conjugate of the annihilation operator `2iλ·∂/∂u = −4π·∂/∂u`.
pub fn iota_ann_op(case: DualPairCase, v: VarId) -> DiffOperator {
    let c = sqrt2_inv();
    match v {
        VarId::UPlus(i, a) if is_alpha(case, i) => {
            let m = DiffOperator::mul_by(Poly::var(VarId::ZBar(i, a))).scale(&two_pi());
            let d = DiffOperator::d(VarId::Z(i, a)).scale(&Scalar::from_int(2));
            (&m + &d).scale(&c)
        }
        VarId::UPlus(i, a) => {
            let m = DiffOperator::mul_by(Poly::var(VarId::Z(i, a))).scale(&two_pi());
            let d = DiffOperator::d(VarId::ZBar(i, a)).scale(&Scalar::from_int(2));
            (&m + &d).scale(&c)
        }
        VarId::UMinus(i, k) if is_alpha(case, i) => {
            let m = DiffOperator::mul_by(Poly::var(VarId::Z(i, k))).scale(&(-two_pi()));
            let d = DiffOperator::d(VarId::ZBar(i, k)).scale(&Scalar::from_int(-2));
            (&m + &d).scale(&c)
        }
        VarId::UMinus(i, k) => {
            let m = DiffOperator::mul_by(Poly::var(VarId::ZBar(i, k))).scale(&(-two_pi()));
            let d = DiffOperator::d(VarId::Z(i, k)).scale(&Scalar::from_int(-2));
            (&m + &d).scale(&c)
        }
        other => panic!("iota_ann_op on coordinate variable {other:?}"),
    }
}

/// The intertwiner `ι: 𝒫 → 𝒮`, sending `1 ↦ φ₀` and a monomial to the
/// product of the per-variable operators applied to `φ₀`.
pub fn iota(case: DualPairCase, p: &Poly) -> GaussPoly {
    let mut acc = GaussPoly {
        poly: Poly::zero(),
        scale: BigRational::one(),
    };
    for (mono, coeff) in p.terms() {
        let mut g = GaussPoly::vacuum();
        for (v, e) in mono.vars() {
            let op = iota_mult_op(case, v);
            for _ in 0..e {
                g = gauss_apply(&op, &g);
            }
        }
        acc.poly = &acc.poly + &g.poly.scale(coeff);
    }
    acc
}

/// Real-coordinate direction of the Schrödinger model: the real or
/// imaginary part of the `(row, col)` complex coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealDirection {
    pub row: u8,
    pub col: u8,
    pub imag: bool,
}

/// `ρ(e_j) = ∂/∂x_j` expressed in `z, z̄` coordinates
/// (`x = (z+z̄)/2`, `y = (z−z̄)/(2i)`).
pub fn schrodinger_e(d: RealDirection) -> DiffOperator {
    let dz = DiffOperator::d(VarId::Z(d.row, d.col));
    let dzb = DiffOperator::d(VarId::ZBar(d.row, d.col));
    if d.imag {
        (&dz - &dzb).scale(&Scalar::i())
    } else {
        &dz + &dzb
    }
}

/// `ρ(f_j) = 2πi·x_j` in `z, z̄` coordinates.
pub fn schrodinger_f(d: RealDirection) -> DiffOperator {
    let z = Poly::var(VarId::Z(d.row, d.col));
    let zb = Poly::var(VarId::ZBar(d.row, d.col));
    if d.imag {
        // 2πi·(z−z̄)/(2i) = π(z−z̄)
        DiffOperator::mul_by(&z - &zb).scale(&Scalar::pi_pow(1))
    } else {
        // 2πi·(z+z̄)/2 = πi(z+z̄)
        DiffOperator::mul_by(&z + &zb).scale(&(Scalar::pi_pow(1) * Scalar::i()))
    }
}

/// Action of the Levi element `m′(t·Id)` (`t > 0`): the exact prefactor
/// `t^e` together with the rescaled vector (`z ↦ t·z`, Gaussian scale
/// `τ ↦ τ·t²`).
pub fn siegel_m(case: DualPairCase, t: &BigRational, g: &GaussPoly) -> (BigRational, GaussPoly) {
    assert!(t.is_positive(), "m'(t·Id) requires t > 0");
    let e = case.siegel_exponent();
    let mut pref = BigRational::one();
    for _ in 0..e {
        pref *= t.clone();
    }
    let t_scalar = Scalar::from_rat(GaussianRational::new(t.clone(), BigRational::zero()));
    let mut poly = Poly::zero();
    for (mono, c) in g.poly.terms() {
        poly.add_term(mono.clone(), c * &t_scalar.pow(mono.degree()));
    }
    let scale = &g.scale * t * t;
    (pref, GaussPoly { poly, scale })
}

/// Action of the unipotent element `n′(b)`: the unimodular phase
/// `ψ(tr(bβ)/2)` with `ψ(x) = e^{2πix}`. `b` and `β` are `m×m` complex
/// matrices (Hermitian resp. the moment matrix); the trace must be real.
pub fn siegel_n_phase(b: &[Vec<Complex64>], beta: &[Vec<Complex64>]) -> Complex64 {
    let m = b.len();
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..m {
        for j in 0..m {
            tr += b[i][j] * beta[j][i];
        }
    }
    assert!(
        tr.im.abs() < 1e-9,
        "tr(bβ) must be real for a unimodular phase"
    );
    let phase = std::f64::consts::PI * tr.re; // 2π·(tr/2)
    Complex64::new(phase.cos(), phase.sin())
}

/// The standard base vector of the case as an exact coordinate matrix:
/// entry `[k][j]` is the coefficient of row `k` in column `j`.
pub fn standard_z(case: DualPairCase) -> Vec<Vec<GaussianRational>> {
    let rows = case.rows() as usize;
    let m = case.m_cols() as usize;
    let mut z = vec![vec![GaussianRational::from_int(0); m]; rows];
    match case {
        DualPairCase::A { p, r, .. } => {
            for j in 0..r as usize {
                z[j][j] = GaussianRational::from_int(1);
            }
            for j in r as usize..m {
                z[p as usize + (j - r as usize)][j] = GaussianRational::from_int(1);
            }
        }
        DualPairCase::B { .. } | DualPairCase::C { .. } => {
            for j in 0..m {
                z[j][j] = GaussianRational::from_int(1);
            }
        }
    }
    z
}

/// Numeric version of [`standard_z`].
pub fn standard_point(case: DualPairCase) -> Vec<Vec<Complex64>> {
    standard_z(case)
        .iter()
        .map(|row| row.iter().map(|c| c.eval_f64()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: u8, a: u8) -> Poly {
        Poly::var(VarId::Z(i, a))
    }
    fn zb(i: u8, a: u8) -> Poly {
        Poly::var(VarId::ZBar(i, a))
    }

    #[test]
    fn iota_of_one_is_vacuum() {
        let g = iota(DualPairCase::a(1, 1, 1, 0), &Poly::one());
        assert_eq!(g, GaussPoly::vacuum());
    }

    #[test]
    fn iota_of_u_plus() {
        // ι(u⁺₁₁) = −2√2·π·z₁₁·φ₀
        let case = DualPairCase::a(1, 1, 1, 0);
        let g = iota(case, &Poly::var(VarId::UPlus(1, 1)));
        let expect =
            z(1, 1).scale(&(Scalar::from_int(-2) * Scalar::two_pow_half(1) * Scalar::pi_pow(1)));
        assert_eq!(g.poly, expect);
    }

    #[test]
    fn iota_of_u_minus() {
        // ι(u⁻₁₁) = 2√2·π·z̄₁₁·φ₀ on an α-row
        let case = DualPairCase::a(1, 1, 1, 0);
        let g = iota(case, &Poly::var(VarId::UMinus(1, 1)));
        let expect =
            zb(1, 1).scale(&(Scalar::from_int(2) * Scalar::two_pow_half(1) * Scalar::pi_pow(1)));
        assert_eq!(g.poly, expect);
    }

    #[test]
    fn highest_term_of_square() {
        // ι((u⁺₁₁)²) has highest term 8π²·z₁₁²·φ₀
        let case = DualPairCase::a(1, 1, 1, 0);
        let g = iota(case, &Poly::var(VarId::UPlus(1, 1)).pow(2));
        let top = g.highest_term();
        let expect = z(1, 1)
            .pow(2)
            .scale(&(Scalar::from_int(8) * Scalar::pi_pow(2)));
        assert_eq!(top.poly, expect);
        // a pure u⁺ power maps to its highest term on the nose
        assert_eq!(g.poly, expect);
        // mixing u⁻ and u⁺ produces a genuine lower-order tail:
        // ι(u⁻₁₁u⁺₁₁) = (−8π²·z₁₁z̄₁₁ + 4π)·φ₀
        let mixed = iota(
            case,
            &(&Poly::var(VarId::UMinus(1, 1)) * &Poly::var(VarId::UPlus(1, 1))),
        );
        let mut exp_mixed =
            (&z(1, 1) * &zb(1, 1)).scale(&(Scalar::from_int(-8) * Scalar::pi_pow(2)));
        exp_mixed = &exp_mixed + &Poly::constant(Scalar::from_int(4) * Scalar::pi_pow(1));
        assert_eq!(mixed.poly, exp_mixed);
        assert!(mixed.poly.num_terms() > mixed.highest_term().poly.num_terms());
    }

    #[test]
    fn schrodinger_pair_commutation() {
        // [ρ(e_j), ρ(f_j)] = 2πi·id
        let d = RealDirection {
            row: 1,
            col: 1,
            imag: false,
        };
        let comm = schrodinger_e(d).commutator(&schrodinger_f(d));
        let expect = DiffOperator::identity()
            .scale(&(Scalar::from_int(2) * Scalar::pi_pow(1) * Scalar::i()));
        assert_eq!(comm, expect);
        let d = RealDirection {
            row: 1,
            col: 1,
            imag: true,
        };
        let comm = schrodinger_e(d).commutator(&schrodinger_f(d));
        assert_eq!(comm, expect);
    }

    #[test]
    fn rho_f_on_vacuum() {
        // ρ(f_j)·φ₀ = 2πi·x_j·φ₀ and ρ(e_j)·φ₀ = −2π·x_j·φ₀
        let d = RealDirection {
            row: 1,
            col: 1,
            imag: false,
        };
        let f = gauss_apply(&schrodinger_f(d), &GaussPoly::vacuum());
        let x = (&z(1, 1) + &zb(1, 1)).scale(&Scalar::from_ratio(1, 2));
        assert_eq!(
            f.poly,
            x.scale(&(Scalar::from_int(2) * Scalar::pi_pow(1) * Scalar::i()))
        );
        let e = gauss_apply(&schrodinger_e(d), &GaussPoly::vacuum());
        assert_eq!(e.poly, x.scale(&(Scalar::from_int(-2) * Scalar::pi_pow(1))));
    }

    #[test]
    fn siegel_identity_and_semigroup() {
        let case = DualPairCase::a(1, 1, 1, 0);
        let g = GaussPoly::new(&z(1, 1) + &zb(2, 1));
        let one = BigRational::one();
        let (pref, h) = siegel_m(case, &one, &g);
        assert_eq!(pref, BigRational::one());
        assert_eq!(h, g);
        // m'(t)∘m'(s) = m'(ts)
        let t = BigRational::new(3.into(), 2.into());
        let s = BigRational::new(5.into(), 7.into());
        let (p1, g1) = siegel_m(case, &s, &g);
        let (p2, g2) = siegel_m(case, &t, &g1);
        let (p3, g3) = siegel_m(case, &(&t * &s), &g);
        assert_eq!(&p1 * &p2, p3);
        assert_eq!(g2, g3);
    }

    #[test]
    fn evaluate_examples() {
        // φ₀ at 0 → 1
        let case = DualPairCase::a(2, 2, 1, 1);
        let zero = vec![vec![Complex64::new(0.0, 0.0); 2]; 4];
        assert!((GaussPoly::vacuum().evaluate(&zero) - 1.0).norm() < 1e-15);
        // φ₀ at the standard x → exp(−π·m)
        let pt = standard_point(case);
        let got = GaussPoly::vacuum().evaluate(&pt);
        let expect = (-std::f64::consts::PI * 2.0).exp();
        assert!((got.re - expect).abs() < 1e-15 && got.im == 0.0);
        // z₁₁·φ₀ at z₁₁ = 1 → e^{−π}
        let g = GaussPoly::new(z(1, 1));
        let mut pt = vec![vec![Complex64::new(0.0, 0.0); 1]; 2];
        pt[0][0] = Complex64::new(1.0, 0.0);
        let got = g.evaluate(&pt);
        assert!((got.re - (-std::f64::consts::PI).exp()).abs() < 1e-15);
    }

    #[test]
    fn unipotent_phase_examples() {
        // traceless bβ gives the trivial phase; in general the phase is
        // unimodular
        let b = vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 2.0)],
            vec![Complex64::new(1.0, -2.0), Complex64::new(0.0, 0.0)],
        ];
        let beta = vec![
            vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(-3.0, 0.0)],
        ];
        let phase = siegel_n_phase(&b, &beta);
        assert!((phase - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let beta2 = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, -1.0), Complex64::new(2.0, 0.0)],
        ];
        let phase = siegel_n_phase(&b, &beta2);
        assert!((phase.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn conjugation_equivariance() {
        let g = GaussPoly::new(&z(1, 1).scale(&Scalar::i()) + &zb(2, 1));
        let pt = vec![
            vec![Complex64::new(0.3, -0.2)],
            vec![Complex64::new(-0.1, 0.7)],
        ];
        // the swap-and-conjugate involution realizes pointwise complex
        // conjugation of the Schwartz vector
        let lhs = g.conj().evaluate(&pt);
        let rhs = g.evaluate(&pt).conj();
        assert!((lhs - rhs).norm() < 1e-14);
        assert_eq!(g.conj().conj(), g);
    }
}
