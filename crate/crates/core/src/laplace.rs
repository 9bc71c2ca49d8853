//! Laplace-method asymptotics and the fiber-integral leading terms.
//!
//! Two independent routes produce the leading asymptotics of the fiber
//! integral `J(t)`:
//!
//! * [`fiber_leading_closed_form`] transcribes the closed-form theorems per
//!   case;
//! * [`fiber_leading_from_cocycle`] re-derives the leading term from the
//!   cocycle data: the single-term fiber restriction, the intertwined
//!   highest term evaluated at the scaled standard frame, the exact
//!   majorant Hessian, and the Laplace formula
//!   `(2π/T)^{n/2}·f(0)·det(A)^{−1/2}·e^{−T·h(0)}` at `T = t²`.
//!
//! Two conventions are fixed here and documented once:
//!
//! * the fiber volume form is taken in block orientation (all `x`
//!   coordinates before all `y` coordinates over `I`), under which
//!   `(⋀_I ξ′) ∧ (⋀_I ξ″) = (−i/2)^{|I|}·dvol`;
//! * the amplitude enters through the displayed highest-term convention in
//!   which every Fock variable contributes a `(−2√2π·coordinate)` leading
//!   factor; relative to the raw intertwiner image (whose `u⁻` factors come
//!   out with `+2√2π`) this multiplies by `(−1)^{deg f_D}`.

// Dense index loops over small matrices are the idiom here.
#![allow(
    clippy::needless_range_loop,
    clippy::assign_op_pattern,
    clippy::type_complexity
)]
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cases::DualPairCase;
use crate::cocycle::{build_phi, restrict_to_fiber, PhiKind};
use crate::exterior::ExtIndex;
use crate::linalg;
use crate::poly::VarId;
use crate::scalar::{GaussianRational, Scalar};
use crate::schrodinger::{iota, standard_z};

#[derive(Debug, Error)]
pub enum LaplaceError {
    #[error("Hessian is not positive definite")]
    NotPositiveDefinite,
    #[error("fiber restriction is not a single term ({0} terms)")]
    RestrictionNotSingle(usize),
    #[error("Hessian determinant {0} is not a power of two; cannot take an exact square root")]
    NonDyadicDeterminant(BigRational),
    #[error("leading terms disagree: re-derived {rederived}, closed form {closed}")]
    LeadingMismatch { rederived: String, closed: String },
    #[error("cocycle construction failed: {0}")]
    Cocycle(String),
}

/// `c · t^a · exp(−rate·π·t²)` with exact coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub coeff: Scalar,
    pub t_pow: i64,
    /// Gaussian rate as the integer multiple of `π` in the exponent.
    pub rate: i64,
}

impl LeadingTerm {
    pub fn eval(&self, t: f64) -> Complex64 {
        let c = self.coeff.eval_f64();
        let p = t.powi(self.t_pow as i32);
        let g = (-(self.rate as f64) * std::f64::consts::PI * t * t).exp();
        c * p * g
    }

    pub fn describe(&self) -> String {
        format!(
            "({}) · t^{} · exp(−{}πt²)",
            self.coeff, self.t_pow, self.rate
        )
    }
}

fn minus_i_pow(k: i64) -> Scalar {
    let k = k.rem_euclid(4);
    let mut s = Scalar::one();
    for _ in 0..k {
        s *= -Scalar::i();
    }
    s
}

/// The closed-form leading term of `J(t)` per case.
pub fn fiber_leading_closed_form(case: DualPairCase) -> LeadingTerm {
    match case {
        DualPairCase::A { p, q, r, s } => {
            let (p, q, r, s) = (p as i64, q as i64, r as i64, s as i64);
            let n = p * s + r * q - r * s;
            let coeff = minus_i_pow(n)
                * Scalar::two_pow_half(2 * (p * s + r * q - 5 * r * s) as i32)
                * Scalar::pi_pow((2 * p * s + 2 * r * q - 4 * r * s) as i32);
            LeadingTerm {
                coeff,
                t_pow: (p + q) * (r + s) - 2 * r * s,
                rate: r + s,
            }
        }
        DualPairCase::B { n, r } => {
            let (n, r) = (n as i64, r as i64);
            let coeff = minus_i_pow((2 * n * r + r - r * r) / 2)
                * Scalar::two_pow_half(((20 * n * r + 15 * r - 19 * r * r) / 2) as i32)
                * Scalar::pi_pow((2 * r * (n - r + 1)) as i32);
            LeadingTerm {
                coeff,
                t_pow: 2 * n * r + r - r * r,
                rate: r,
            }
        }
        DualPairCase::C { n, r } => {
            let (n, r) = (n as i64, r as i64);
            let coeff = minus_i_pow((2 * n * r - r * r - r) / 2)
                * Scalar::two_pow_half(((16 * n * r - 13 * r - 15 * r * r) / 2) as i32)
                * Scalar::pi_pow((2 * r * (n - r - 1)) as i32);
            LeadingTerm {
                coeff,
                t_pow: 2 * n * r - r * r - r,
                rate: r,
            }
        }
    }
}

/// Columns of the standard frame in the complex coordinate model (these are
/// the columns the Gaussian `φ₀` sees; case B uses the `r` complex columns).
fn laplace_columns(case: DualPairCase) -> Vec<Vec<GaussianRational>> {
    let z = standard_z(case);
    let rows = case.rows() as usize;
    let m = case.m_cols() as usize;
    (0..m)
        .map(|j| (0..rows).map(|k| z[k][j].clone()).collect())
        .collect()
}

/// Exact `det(A)^{−1/2}·π^{−N}` for `A = π·Hess(M)`: requires the
/// determinant of the majorant Hessian to be a (half-)power of two.
fn inv_sqrt_det_pi_hessian(case: DualPairCase) -> Result<Scalar, LaplaceError> {
    let cols = laplace_columns(case);
    let h = crate::geometry::hessian_exact(case, &cols);
    let hq: Vec<Vec<GaussianRational>> = h;
    let det = linalg::determinant(&hq).map_err(|e| LaplaceError::Cocycle(e.to_string()))?;
    if !det.im.is_zero() || !det.re.is_positive() {
        return Err(LaplaceError::NotPositiveDefinite);
    }
    let det = det.re;
    // det = 2^k exactly?
    let num = det.numer().clone();
    let den = det.denom().clone();
    let pow2 = |mut v: num_bigint::BigInt| -> Option<i32> {
        let mut k = 0i32;
        let two: num_bigint::BigInt = 2.into();
        let one: num_bigint::BigInt = 1.into();
        while v.clone() % two.clone() == 0.into() {
            v /= two.clone();
            k += 1;
        }
        if v == one {
            Some(k)
        } else {
            None
        }
    };
    let (kn, kd) = match (pow2(num), pow2(den)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(LaplaceError::NonDyadicDeterminant(det)),
    };
    let k = kn - kd; // det = 2^k
    let n_half = hq.len() as i32 / 2;
    Ok(Scalar::two_pow_half(-k) * Scalar::pi_pow(-n_half))
}

/// Re-derive the leading term of `J(t)` from the cocycle data.
pub fn fiber_leading_from_cocycle(case: DualPairCase) -> Result<LeadingTerm, LaplaceError> {
    let phi = build_phi(case, PhiKind::Full).map_err(|e| LaplaceError::Cocycle(e.to_string()))?;
    let restricted = restrict_to_fiber(case, &phi);
    if restricted.num_terms() != 1 {
        return Err(LaplaceError::RestrictionNotSingle(restricted.num_terms()));
    }
    let nn = case.dprime() as i64;
    let idx = case.index_set();
    let expected_key: Vec<ExtIndex> = idx
        .iter()
        .map(|&(a, b)| ExtIndex::prime(a, b))
        .chain(idx.iter().map(|&(a, b)| ExtIndex::dprime(a, b)))
        .collect();
    let coeff_poly = restricted.coefficient(&expected_key);
    if coeff_poly.is_zero() {
        return Err(LaplaceError::RestrictionNotSingle(0));
    }

    // amplitude: intertwine, take the highest term, apply the displayed
    // sign convention, evaluate at the standard frame
    let g = iota(case, &coeff_poly);
    let top = g.highest_term();
    let degree = top.poly.total_degree() as i64;
    let uminus_deg = coeff_poly
        .terms()
        .next()
        .map(|(m, _)| m.degree_where(|v| matches!(v, VarId::UMinus(_, _))))
        .unwrap_or(0) as i64;
    let sign = if uminus_deg % 2 == 1 {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    };

    let z = standard_z(case);
    let assign = |v: VarId| -> Scalar {
        match v {
            VarId::Z(i, a) => Scalar::from_rat(z[i as usize - 1][a as usize - 1].clone()),
            VarId::ZBar(i, a) => Scalar::from_rat(z[i as usize - 1][a as usize - 1].conj()),
            other => panic!("fiber amplitude on Fock variable {other:?}"),
        }
    };
    let amp = top.poly.eval_exact(&assign) * sign;

    // volume conversion (block orientation): (−i/2)^N
    let conv = (Scalar::from_ratio(-1, 2) * Scalar::i()).pow(nn as u32);
    // Laplace: (2π)^N·t^{−2N} and det(π·Hess M)^{−1/2}
    let lap = (Scalar::from_int(2) * Scalar::pi_pow(1)).pow(nn as u32);
    let det_part = inv_sqrt_det_pi_hessian(case)?;

    let coeff = amp * conv * lap * det_part;
    let e = case.siegel_exponent() as i64;
    Ok(LeadingTerm {
        coeff,
        t_pow: e + degree - 2 * nn,
        rate: case.m_cols() as i64,
    })
}

/// Comparison report between the two routes.
#[derive(Debug, Clone)]
pub struct FiberReport {
    pub closed: LeadingTerm,
    pub rederived: LeadingTerm,
    pub matches: bool,
}

pub fn fiber_compare(case: DualPairCase) -> Result<FiberReport, LaplaceError> {
    let closed = fiber_leading_closed_form(case);
    let rederived = fiber_leading_from_cocycle(case)?;
    let matches = closed == rederived;
    Ok(FiberReport {
        closed,
        rederived,
        matches,
    })
}

// ----- numeric Laplace machinery -----

/// A Laplace integration problem `J(T) = ∫ f(x)·e^{−T·h(x)} dx`.
pub struct LaplaceProblem<'a> {
    pub dim: usize,
    pub amplitude: &'a dyn Fn(&[f64]) -> Complex64,
    pub phase: &'a dyn Fn(&[f64]) -> f64,
    pub hessian: Option<Vec<Vec<f64>>>,
}

fn fd_hessian(phase: &dyn Fn(&[f64]) -> f64, dim: usize, step: f64) -> Vec<Vec<f64>> {
    let mut h = vec![vec![0.0; dim]; dim];
    let at = |coords: &[f64]| phase(coords);
    for a in 0..dim {
        for b in 0..dim {
            let v = if a == b {
                let mut up = vec![0.0; dim];
                up[a] = step;
                let mut dn = vec![0.0; dim];
                dn[a] = -step;
                (at(&up) - 2.0 * at(&vec![0.0; dim]) + at(&dn)) / (step * step)
            } else {
                let mut pp = vec![0.0; dim];
                pp[a] = step;
                pp[b] = step;
                let mut pm = pp.clone();
                pm[b] = -step;
                let mut mp = pp.clone();
                mp[a] = -step;
                let mut mm = pp.clone();
                mm[a] = -step;
                mm[b] = -step;
                (at(&pp) - at(&pm) - at(&mp) + at(&mm)) / (4.0 * step * step)
            };
            h[a][b] = v;
        }
    }
    h
}

/// Cholesky-based determinant; `None` when not positive definite.
fn cholesky_det(h: &[Vec<f64>]) -> Option<f64> {
    let n = h.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = h[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut det = 1.0;
    for i in 0..n {
        det *= l[i][i] * l[i][i];
    }
    Some(det)
}

/// Leading Laplace term `(2π/T)^{n/2}·f(0)·det(A)^{−1/2}·e^{−T·h(0)}`.
pub fn laplace_leading(p: &LaplaceProblem, t: f64) -> Result<Complex64, LaplaceError> {
    let h = match &p.hessian {
        Some(h) => h.clone(),
        None => fd_hessian(p.phase, p.dim, 1e-4),
    };
    let det = cholesky_det(&h).ok_or(LaplaceError::NotPositiveDefinite)?;
    let zero = vec![0.0; p.dim];
    let f0 = (p.amplitude)(&zero);
    let h0 = (p.phase)(&zero);
    let pref = (2.0 * std::f64::consts::PI / t).powf(p.dim as f64 / 2.0);
    Ok(f0 * pref / det.sqrt() * (-t * h0).exp())
}

/// Gauss–Hermite nodes and weights for `∫ f(y) e^{−y²} dy` (Golub–Welsch on
/// the symmetric Jacobi matrix).
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    use num_complex::Complex;
    let mut jac = vec![vec![Complex::new(0.0f64, 0.0); n]; n];
    for i in 1..n {
        let b = (i as f64 / 2.0).sqrt();
        jac[i - 1][i] = Complex::new(b, 0.0);
        jac[i][i - 1] = Complex::new(b, 0.0);
    }
    let (vals, vecs) = crate::geometry::hermitian_eigen(&jac, 1e-9).expect("symmetric");
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let w = std::f64::consts::PI.sqrt() * vecs[0][k].norm_sqr();
            (vals[k], w)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs.into_iter().unzip()
}

/// Quadrature scheme selection.
pub enum Scheme {
    /// Tensor Gauss–Hermite; requires the phase to be exactly `Σ xᵢ²`.
    GaussHermite { nodes: usize },
    /// Uniform Monte Carlo over the box `[-half_width, half_width]^dim`.
    MonteCarlo {
        seed: u64,
        samples: u64,
        half_width: f64,
    },
}

/// Numeric `J(T) = ∫ f·e^{−T·h}` with an error estimate.
pub fn quadrature(p: &LaplaceProblem, t: f64, scheme: &Scheme) -> (Complex64, f64) {
    match scheme {
        Scheme::GaussHermite { nodes } => {
            // substitute x = y/√T per axis
            let (xs, ws) = gauss_hermite(*nodes);
            let scale = 1.0 / t.sqrt();
            let mut total = Complex64::new(0.0, 0.0);
            let mut idx = vec![0usize; p.dim];
            loop {
                let mut w = 1.0;
                let pt: Vec<f64> = idx
                    .iter()
                    .map(|&k| {
                        w *= ws[k];
                        xs[k] * scale
                    })
                    .collect();
                total += (p.amplitude)(&pt) * w;
                // advance the multi-index
                let mut carry = 0;
                while carry < p.dim {
                    idx[carry] += 1;
                    if idx[carry] < xs.len() {
                        break;
                    }
                    idx[carry] = 0;
                    carry += 1;
                }
                if carry == p.dim {
                    break;
                }
            }
            (total * scale.powi(p.dim as i32), 1e-12)
        }
        Scheme::MonteCarlo {
            seed,
            samples,
            half_width,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let vol = (2.0 * half_width).powi(p.dim as i32);
            let mut sum = Complex64::new(0.0, 0.0);
            let mut sum2 = 0.0f64;
            for _ in 0..*samples {
                let pt: Vec<f64> = (0..p.dim)
                    .map(|_| rng.gen_range(-half_width..*half_width))
                    .collect();
                let v = (p.amplitude)(&pt) * (-t * (p.phase)(&pt)).exp();
                sum += v;
                sum2 += v.norm_sqr();
            }
            let n = *samples as f64;
            let mean = sum / n;
            let var = (sum2 / n - mean.norm_sqr()).max(0.0);
            (mean * vol, vol * (var / n).sqrt())
        }
    }
}


#[cfg(test)]
mod sweep_tests {
    use super::*;

    /// The re-derivation reproduces the closed form for every desk-scale
    /// case-A parameter choice, including the positive-definite signature
    /// (s = 0) cases.
    #[test]
    fn case_a_rederivation_matches_everywhere() {
        for (p, q, r, s) in [
            (1u8, 1u8, 1u8, 0u8),
            (1, 1, 1, 1),
            (2, 1, 1, 0),
            (2, 1, 1, 1),
            (2, 2, 1, 1),
            (2, 2, 2, 1),
            (3, 1, 2, 1),
            (3, 1, 3, 0),
        ] {
            let case = DualPairCase::a(p, q, r, s);
            if case.validate().is_err() || case.dprime() > 4 {
                continue;
            }
            let rep = fiber_compare(case).unwrap();
            assert!(
                rep.matches,
                "A({p},{q},{r},{s}): {} vs {}",
                rep.rederived.describe(),
                rep.closed.describe()
            );
        }
    }

    /// The divergence from the tabulated closed forms in families B and C
    /// is exactly a power of two, with the parameter dependence pinned
    /// here. The acceptance suite asserts strict equality and stays red;
    /// this test guards the analysis itself against regressions.
    #[test]
    fn b_c_gap_structure() {
        // closed/rederived = 2^{num/den} with num = 8nr + 9r − 5r² (B) and
        // num = 4nr − r² − 3r (C), den = 4
        let b_num = |n: i64, r: i64| 8 * n * r + 9 * r - 5 * r * r;
        let c_num = |n: i64, r: i64| 4 * n * r - r * r - 3 * r;
        for (case, num, den) in [
            (DualPairCase::b(2, 1), b_num(2, 1), 4i64),
            (DualPairCase::b(3, 1), b_num(3, 1), 4),
            (DualPairCase::b(3, 2), b_num(3, 2), 4),
            (DualPairCase::c(3, 1), c_num(3, 1), 4),
            (DualPairCase::c(2, 1), c_num(2, 1), 4),
        ] {
            let rep = fiber_compare(case).unwrap();
            assert_eq!(rep.rederived.t_pow, rep.closed.t_pow, "{case}");
            assert_eq!(rep.rederived.rate, rep.closed.rate, "{case}");
            // closed = rederived · 2^{num/den} with den | 2·num
            assert_eq!(num % (den / 2), 0, "{case}: gap not a half-integer");
            let gap = Scalar::two_pow_half((num / (den / 2)) as i32);
            assert_eq!(
                rep.rederived.coeff * gap,
                rep.closed.coeff,
                "{case}: unexpected gap"
            );
        }
    }
}
