//! Numeric symmetric-space layer: matrix realizations of normal tangent
//! vectors, matrix exponentials through Hermitian eigendecomposition,
//! majorants and the exponential-decay certificates.
//!
//! All kernels are generic over the floating scalar through `num_traits`;
//! the crate root exposes `f64` aliases. Everything is anchored at the
//! standard base point: the basis `v_1, …, v_{p+q}` is orthonormal for the
//! majorant form, so matrices act on plain coordinate vectors.

// Dense index loops over small matrices are the idiom here.
#![allow(
    clippy::needless_range_loop,
    clippy::assign_op_pattern,
    clippy::type_complexity
)]
use num_complex::Complex;
use num_traits::{Float, FromPrimitive};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cases::DualPairCase;
use crate::fock::{CaseAlgebra, Model};
use crate::scalar::GaussianRational;
use crate::weyl::CMat;

pub type CM<F> = Vec<Vec<Complex<F>>>;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("matrix is not Hermitian within tolerance (deviation {0})")]
    NotHermitian(f64),
    #[error("decay certificate failed at t={t}, sample {sample}: M={m}, bound={bound}")]
    CertificateFailure {
        t: f64,
        sample: usize,
        m: f64,
        bound: f64,
    },
    #[error("analytic and finite-difference Hessians disagree: entry ({0},{1}) rel. error {2}")]
    HessianMismatch(usize, usize, f64),
}

fn c<F: Float>(re: f64) -> Complex<F> {
    Complex::new(F::from(re).unwrap(), F::zero())
}

pub fn cmat_to_float<F: Float + FromPrimitive>(m: &CMat) -> CM<F> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|g| {
                    let v = g.eval_f64();
                    Complex::new(F::from_f64(v.re).unwrap(), F::from_f64(v.im).unwrap())
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Float>(m: &CM<F>, v: &[Complex<F>]) -> Vec<Complex<F>> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Complex::new(F::zero(), F::zero()), |acc, (a, x)| {
                    acc + *a * *x
                })
        })
        .collect()
}

pub fn mat_mul<F: Float>(a: &CM<F>, b: &CM<F>) -> CM<F> {
    let n = a.len();
    let mut out = vec![vec![Complex::new(F::zero(), F::zero()); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].norm_sqr() == F::zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn inner<F: Float>(x: &[Complex<F>], y: &[Complex<F>]) -> Complex<F> {
    // antilinear in the first argument, matching the majorant convention
    x.iter()
        .zip(y)
        .fold(Complex::new(F::zero(), F::zero()), |acc, (a, b)| {
            acc + a.conj() * *b
        })
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns `(eigenvalues, eigenvectors as columns)`.
pub fn hermitian_eigen<F: Float + FromPrimitive>(
    a: &CM<F>,
    herm_tol: f64,
) -> Result<(Vec<F>, CM<F>), GeometryError> {
    let n = a.len();
    let mut dev = F::zero();
    for i in 0..n {
        for j in 0..n {
            let d = (a[i][j] - a[j][i].conj()).norm();
            if d > dev {
                dev = d;
            }
        }
    }
    if dev.to_f64().unwrap_or(f64::INFINITY) > herm_tol {
        return Err(GeometryError::NotHermitian(
            dev.to_f64().unwrap_or(f64::NAN),
        ));
    }

    let mut m = a.clone();
    // symmetrize against round-off
    for i in 0..n {
        for j in 0..n {
            let avg = (m[i][j] + m[j][i].conj()) * c::<F>(0.5);
            m[i][j] = avg;
        }
    }
    let mut v: CM<F> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Complex::new(F::one(), F::zero())
                    } else {
                        Complex::new(F::zero(), F::zero())
                    }
                })
                .collect()
        })
        .collect();

    let eps = F::from_f64(1e-30).unwrap();
    for _sweep in 0..100 {
        let mut off = F::zero();
        for i in 0..n {
            for j in i + 1..n {
                off = off + m[i][j].norm_sqr();
            }
        }
        if off < eps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq.norm_sqr() < eps {
                    continue;
                }
                let app = m[p][p].re;
                let aqq = m[q][q].re;
                let abs = apq.norm();
                let phase = apq / Complex::new(abs, F::zero());
                let two = F::from_f64(2.0).unwrap();
                let theta = (two * abs).atan2(app - aqq) / two;
                let (s, co) = theta.sin_cos();
                let cs = Complex::new(co, F::zero());
                let sn = phase * Complex::new(s, F::zero());
                // J = [[c, −s·e^{iφ}], [s·e^{−iφ}, c]] in the (p,q) plane
                for i in 0..n {
                    let vip = v[i][p];
                    let viq = v[i][q];
                    v[i][p] = vip * cs + viq * sn.conj();
                    v[i][q] = viq * cs - vip * sn;
                }
                // m ← J* m J
                for i in 0..n {
                    let mip = m[i][p];
                    let miq = m[i][q];
                    m[i][p] = mip * cs + miq * sn.conj();
                    m[i][q] = miq * cs - mip * sn;
                }
                for i in 0..n {
                    let mpi = m[p][i];
                    let mqi = m[q][i];
                    m[p][i] = mpi * cs + mqi * sn;
                    m[q][i] = mqi * cs - mpi * sn.conj();
                }
            }
        }
    }
    let vals = (0..n).map(|i| m[i][i].re).collect();
    Ok((vals, v))
}

/// `exp(−tX)·v` through the eigendecomposition of a Hermitian `X`.
pub fn exp_apply<F: Float + FromPrimitive>(
    x: &CM<F>,
    t: F,
    v: &[Complex<F>],
) -> Result<Vec<Complex<F>>, GeometryError> {
    let (vals, vecs) = hermitian_eigen(x, 1e-12)?;
    let n = v.len();
    let mut out = vec![Complex::new(F::zero(), F::zero()); n];
    for k in 0..n {
        let col: Vec<Complex<F>> = (0..n).map(|i| vecs[i][k]).collect();
        let coef = inner(&col, v) * Complex::new((-vals[k] * t).exp(), F::zero());
        for i in 0..n {
            out[i] = out[i] + col[i] * coef;
        }
    }
    Ok(out)
}

/// Dense matrix exponential by scaling and squaring (Taylor core); the
/// independent oracle for [`exp_apply`].
pub fn matrix_exp<F: Float + FromPrimitive>(a: &CM<F>) -> CM<F> {
    let n = a.len();
    let mut norm = F::zero();
    for row in a {
        let mut s = F::zero();
        for x in row {
            s = s + x.norm();
        }
        if s > norm {
            norm = s;
        }
    }
    let mut squarings = 0u32;
    let mut scale = F::one();
    while norm * scale > F::from_f64(0.5).unwrap() {
        scale = scale / F::from_f64(2.0).unwrap();
        squarings += 1;
    }
    let b: CM<F> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| *x * Complex::new(scale, F::zero()))
                .collect()
        })
        .collect();
    // Taylor series on the scaled matrix
    let mut result: CM<F> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Complex::new(F::one(), F::zero())
                    } else {
                        Complex::new(F::zero(), F::zero())
                    }
                })
                .collect()
        })
        .collect();
    let mut term = result.clone();
    for k in 1..=20 {
        term = mat_mul(&term, &b);
        let inv = Complex::new(F::from_f64(1.0 / k as f64).unwrap(), F::zero());
        for i in 0..n {
            for j in 0..n {
                term[i][j] = term[i][j] * inv;
                result[i][j] = result[i][j] + term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mat_mul(&result, &result);
    }
    result
}

/// A tangent vector of the normal space, stored as coefficients over the
/// `(E_a, F_a)` basis indexed by `I`, together with its Hermitian matrix.
#[derive(Clone, Debug)]
pub struct TangentVector<F: Float> {
    pub xs: Vec<F>,
    pub ys: Vec<F>,
    pub matrix: CM<F>,
}

/// Geometry context at the standard base point: the case, the normal-space
/// basis matrices and the columns of the standard frame vector.
pub struct MajorantContext<F: Float> {
    pub case: DualPairCase,
    pub e_mats: Vec<CM<F>>,
    pub f_mats: Vec<CM<F>>,
    pub columns: Vec<Vec<Complex<F>>>,
}

/// Exact `(E_a, F_a)` matrices over the index set `I`:
/// `E = (X+Y)/2`, `F = (Y−X)/(2i)`.
pub fn normal_basis_exact(case: DualPairCase) -> (Vec<CMat>, Vec<CMat>) {
    let alg = CaseAlgebra::new(case, Model::Minus);
    let half = GaussianRational::from_ratio(1, 2);
    let half_i = &GaussianRational::from_ratio(1, 2) * &GaussianRational::i();
    let mut es = Vec::new();
    let mut fs = Vec::new();
    for (a, b) in case.index_set() {
        let x = alg.x_matrix(a, b);
        let y = alg.y_matrix(a, b);
        let e = crate::weyl::cmat_scale(&crate::weyl::cmat_add(&x, &y), &half);
        // (Y−X)/(2i) = −(i/2)(Y−X)... 1/(2i) = −i/2
        let f = crate::weyl::cmat_scale(&crate::weyl::cmat_sub(&y, &x), &(-half_i.clone()));
        es.push(e);
        fs.push(f);
    }
    (es, fs)
}

/// Columns of the standard frame vector in the `v`-basis (real-module
/// columns: case B uses all `2r` of them).
pub fn standard_columns_exact(case: DualPairCase) -> Vec<Vec<GaussianRational>> {
    let rows = case.rows() as usize;
    let zero = GaussianRational::from_int(0);
    let mut cols: Vec<Vec<GaussianRational>> = Vec::new();
    let unit = |idx: usize| {
        let mut v = vec![zero.clone(); rows];
        v[idx] = GaussianRational::from_int(1);
        v
    };
    match case {
        DualPairCase::A { p, r, s, .. } => {
            for j in 0..r as usize {
                cols.push(unit(j));
            }
            for j in 0..s as usize {
                cols.push(unit(p as usize + j));
            }
        }
        DualPairCase::B { n, r } => {
            // E_j = (v_j + v_{n+j})/√2 and F_j = (i v_j − i v_{n+j})/√2
            for j in 0..r as usize {
                let mut v = vec![zero.clone(); rows];
                // store unnormalized; normalization is applied numerically
                v[j] = GaussianRational::from_int(1);
                v[n as usize + j] = GaussianRational::from_int(1);
                cols.push(v);
            }
            for j in 0..r as usize {
                let mut v = vec![zero.clone(); rows];
                v[j] = GaussianRational::i();
                v[n as usize + j] = -GaussianRational::i();
                cols.push(v);
            }
        }
        DualPairCase::C { r, .. } => {
            for j in 0..r as usize {
                cols.push(unit(j));
            }
        }
    }
    cols
}

impl<F: Float + FromPrimitive> MajorantContext<F> {
    pub fn new(case: DualPairCase) -> Self {
        let (es, fs) = normal_basis_exact(case);
        let e_mats = es.iter().map(cmat_to_float).collect();
        let f_mats = fs.iter().map(cmat_to_float).collect();
        let sqrt2_inv = F::from_f64(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        let columns = standard_columns_exact(case)
            .iter()
            .map(|col| {
                let needs_norm = matches!(case, DualPairCase::B { .. });
                col.iter()
                    .map(|g| {
                        let v = g.eval_f64();
                        let mut z =
                            Complex::new(F::from_f64(v.re).unwrap(), F::from_f64(v.im).unwrap());
                        if needs_norm {
                            z = z * Complex::new(sqrt2_inv, F::zero());
                        }
                        z
                    })
                    .collect()
            })
            .collect();
        MajorantContext {
            case,
            e_mats,
            f_mats,
            columns,
        }
    }

    pub fn dim(&self) -> usize {
        self.e_mats.len()
    }

    /// Realize coefficient vectors over `(E, F)` as a tangent vector.
    pub fn tangent(&self, xs: &[F], ys: &[F]) -> TangentVector<F> {
        let n = self.e_mats[0].len();
        let mut m = vec![vec![Complex::new(F::zero(), F::zero()); n]; n];
        for (k, x) in xs.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    m[i][j] = m[i][j] + self.e_mats[k][i][j] * Complex::new(*x, F::zero());
                }
            }
        }
        for (k, y) in ys.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    m[i][j] = m[i][j] + self.f_mats[k][i][j] * Complex::new(*y, F::zero());
                }
            }
        }
        TangentVector {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            matrix: m,
        }
    }

    /// Random unit normal vector.
    pub fn random_unit(&self, rng: &mut impl Rng) -> TangentVector<F> {
        let d = self.dim();
        let mut xs = vec![F::zero(); d];
        let mut ys = vec![F::zero(); d];
        let mut norm2 = 0.0f64;
        let mut raw = Vec::with_capacity(2 * d);
        for _ in 0..2 * d {
            // Box-Muller
            let u1: f64 = rng.gen_range(1e-12..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            let g = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
            norm2 += g * g;
            raw.push(g);
        }
        let norm = norm2.sqrt();
        for k in 0..d {
            xs[k] = F::from_f64(raw[k] / norm).unwrap();
            ys[k] = F::from_f64(raw[d + k] / norm).unwrap();
        }
        self.tangent(&xs, &ys)
    }

    /// The majorant `M_{z₀}(exp(tX)z₀, x) = Σ_j ‖exp(−tX)x_j‖²`.
    pub fn majorant(&self, x: &TangentVector<F>, t: F) -> Result<F, GeometryError> {
        let mut acc = F::zero();
        for col in &self.columns {
            let w = exp_apply(&x.matrix, t, col)?;
            for z in w {
                acc = acc + z.norm_sqr();
            }
        }
        Ok(acc)
    }

    /// `f(X) = −Σ_j Σ_{λ<0} ‖p_λ(x_j)‖²·λ` over strictly negative
    /// eigenvalues.
    pub fn f_function(&self, x: &TangentVector<F>) -> Result<F, GeometryError> {
        let (vals, vecs) = hermitian_eigen(&x.matrix, 1e-12)?;
        let n = vals.len();
        let tol = F::from_f64(1e-12).unwrap();
        let mut acc = F::zero();
        for col in &self.columns {
            for k in 0..n {
                if vals[k] < -tol {
                    let evec: Vec<Complex<F>> = (0..n).map(|i| vecs[i][k]).collect();
                    let a = inner(&evec, col);
                    acc = acc - a.norm_sqr() * vals[k];
                }
            }
        }
        Ok(acc)
    }
}

/// Certified decay constants `(b, c)` with the sampling data used.
#[derive(Debug, Clone)]
pub struct DecayCertificate {
    pub b: f64,
    pub c: f64,
    pub sampled_min_f: f64,
    pub samples: usize,
}

/// Estimate the sphere minimum of `f`, derive `(b, c)`, and certify the
/// majorant bound `M ≥ c·e^{2bt}` on a fresh validation grid.
pub fn decay_constants<F: Float + FromPrimitive>(
    ctx: &MajorantContext<F>,
    samples: usize,
    seed: u64,
    grid_normals: usize,
    t_grid: &[f64],
) -> Result<DecayCertificate, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_f = f64::INFINITY;
    for _ in 0..samples {
        let x = ctx.random_unit(&mut rng);
        let f = ctx.f_function(&x)?.to_f64().unwrap();
        if f < min_f {
            min_f = f;
        }
    }
    let nterms = ctx.columns.len() * ctx.e_mats[0].len();
    let cval = min_f / nterms as f64;
    // columns are unit vectors, so max_j ‖x_j‖² = 1 and b = c
    let b = cval;

    let m0 = ctx.columns.len() as f64;
    for sample in 0..grid_normals {
        let x = ctx.random_unit(&mut rng);
        for &t in t_grid {
            let m = ctx.majorant(&x, F::from_f64(t).unwrap())?.to_f64().unwrap();
            let bound = cval * (2.0 * b * t).exp();
            // also the weak form: the majorant never drops below its value
            // at the base point
            if m < bound || m < m0 - 1e-9 {
                return Err(GeometryError::CertificateFailure {
                    t,
                    sample,
                    m,
                    bound: bound.max(m0),
                });
            }
        }
    }
    Ok(DecayCertificate {
        b,
        c: cval,
        sampled_min_f: min_f,
        samples,
    })
}

/// Exact Hessian of the majorant `M` at the origin in the `(x_a, y_a)`
/// coordinates (block order: all `x` first, then all `y`), computed from
/// `∂²M/∂u_a∂u_b = Σ_cols 4·Re(X_a col, X_b col)`.
pub fn hessian_exact(
    case: DualPairCase,
    columns: &[Vec<GaussianRational>],
) -> Vec<Vec<GaussianRational>> {
    let (es, fs) = normal_basis_exact(case);
    let mut basis: Vec<&CMat> = Vec::new();
    basis.extend(es.iter());
    basis.extend(fs.iter());
    let d = basis.len();
    let rows = case.rows() as usize;
    let apply = |m: &CMat, v: &[GaussianRational]| -> Vec<GaussianRational> {
        (0..rows)
            .map(|i| {
                let mut acc = GaussianRational::from_int(0);
                for j in 0..rows {
                    if !m[i][j].is_zero() {
                        acc = acc + &m[i][j] * &v[j];
                    }
                }
                acc
            })
            .collect()
    };
    let mut h = vec![vec![GaussianRational::from_int(0); d]; d];
    for a in 0..d {
        for b in a..d {
            let mut acc = GaussianRational::from_int(0);
            for col in columns {
                let xa = apply(basis[a], col);
                let xb = apply(basis[b], col);
                // Re(xa, xb) with the antilinear-first Hermitian pairing
                let mut ip = GaussianRational::from_int(0);
                for i in 0..rows {
                    ip = ip + &xa[i].conj() * &xb[i];
                }
                let re = GaussianRational::new(
                    ip.re.clone(),
                    num_rational::BigRational::from_integer(0.into()),
                );
                acc = acc + re;
            }
            let val = &acc * &GaussianRational::from_int(4);
            h[a][b] = val.clone();
            h[b][a] = val;
        }
    }
    h
}

/// Numeric Hessian of `M∘exp` by central finite differences, and the
/// analytic cross-check. Returns the analytic matrix on success.
pub fn hessian_checked<F: Float + FromPrimitive>(
    ctx: &MajorantContext<F>,
    step: f64,
    rel_tol: f64,
) -> Result<Vec<Vec<f64>>, GeometryError> {
    let case = ctx.case;
    let cols = standard_columns_exact(case);
    // case B geometry columns carry the 1/√2 normalization
    let scale = match case {
        DualPairCase::B { .. } => GaussianRational::from_ratio(1, 2),
        _ => GaussianRational::from_int(1),
    };
    let exact = hessian_exact(case, &cols);
    let d2 = exact.len();
    let analytic: Vec<Vec<f64>> = exact
        .iter()
        .map(|row| row.iter().map(|g| (g * &scale).eval_f64().re).collect())
        .collect();

    let d = ctx.dim();
    let m_at = |coords: &[f64]| -> Result<f64, GeometryError> {
        let xs: Vec<F> = coords[..d]
            .iter()
            .map(|&v| F::from_f64(v).unwrap())
            .collect();
        let ys: Vec<F> = coords[d..]
            .iter()
            .map(|&v| F::from_f64(v).unwrap())
            .collect();
        let x = ctx.tangent(&xs, &ys);
        Ok(ctx.majorant(&x, F::one())?.to_f64().unwrap())
    };

    // gradient at 0 vanishes
    for a in 0..d2 {
        let mut up = vec![0.0; d2];
        up[a] = step;
        let mut dn = vec![0.0; d2];
        dn[a] = -step;
        let g = (m_at(&up)? - m_at(&dn)?) / (2.0 * step);
        if g.abs() > 1e-8 {
            return Err(GeometryError::HessianMismatch(a, a, g.abs()));
        }
    }

    for a in 0..d2 {
        for b in 0..d2 {
            let fd = if a == b {
                let mut up = vec![0.0; d2];
                up[a] = step;
                let mut dn = vec![0.0; d2];
                dn[a] = -step;
                (m_at(&up)? - 2.0 * m_at(&vec![0.0; d2])? + m_at(&dn)?) / (step * step)
            } else {
                let mut pp = vec![0.0; d2];
                pp[a] = step;
                pp[b] = step;
                let mut pm = vec![0.0; d2];
                pm[a] = step;
                pm[b] = -step;
                let mut mp = vec![0.0; d2];
                mp[a] = -step;
                mp[b] = step;
                let mut mm = vec![0.0; d2];
                mm[a] = -step;
                mm[b] = -step;
                (m_at(&pp)? - m_at(&pm)? - m_at(&mp)? + m_at(&mm)?) / (4.0 * step * step)
            };
            let an = analytic[a][b];
            let denom = an.abs().max(1.0);
            let rel = (fd - an).abs() / denom;
            if rel > rel_tol {
                return Err(GeometryError::HessianMismatch(a, b, rel));
            }
        }
    }
    Ok(analytic)
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = f64;

    #[test]
    fn exp_apply_identity_at_zero() {
        let ctx = MajorantContext::<F>::new(DualPairCase::a(2, 1, 1, 1));
        let x = ctx.tangent(&[0.0, 0.0], &[0.0, 0.0]);
        let v = vec![
            Complex::new(1.0, 0.5),
            Complex::new(-0.25, 0.0),
            Complex::new(0.0, 2.0),
        ];
        let w = exp_apply(&x.matrix, 1.0, &v).unwrap();
        for (a, b) in v.iter().zip(&w) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn eigen_vs_scaling_squaring() {
        let ctx = MajorantContext::<F>::new(DualPairCase::a(2, 2, 1, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let x = ctx.random_unit(&mut rng);
            let t: f64 = rng.gen_range(-1.5..1.5);
            let scaled: CM<F> = x
                .matrix
                .iter()
                .map(|r| r.iter().map(|z| z * Complex::new(-t, 0.0)).collect())
                .collect();
            let dense = matrix_exp(&scaled);
            let v: Vec<Complex<F>> = (0..x.matrix.len())
                .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let via_eigen = exp_apply(&x.matrix, t, &v).unwrap();
            let via_dense = mat_vec(&dense, &v);
            let mut num = 0.0;
            let mut den = 0.0;
            for (a, b) in via_eigen.iter().zip(&via_dense) {
                num += (a - b).norm_sqr();
                den += b.norm_sqr();
            }
            assert!((num / den.max(1e-30)).sqrt() < 1e-9);
        }
    }

    #[test]
    fn majorant_at_zero_counts_columns() {
        for case in [
            DualPairCase::a(2, 1, 1, 1),
            DualPairCase::b(2, 1),
            DualPairCase::c(3, 1),
        ] {
            let ctx = MajorantContext::<F>::new(case);
            let d = ctx.dim();
            let x = ctx.tangent(&vec![0.0; d], &vec![0.0; d]);
            let m = ctx.majorant(&x, 0.0).unwrap();
            assert!(
                (m - case.m_rank() as f64).abs() < 1e-12,
                "{case:?}: M(0) = {m}"
            );
        }
    }

    #[test]
    fn rank_one_sphericality() {
        // unit normal along a single (α,μ) slot: ‖exp(−tX)v₁‖² = cosh²t + sinh²t
        let case = DualPairCase::a(1, 1, 1, 0);
        let ctx = MajorantContext::<F>::new(case);
        for (xc, yc) in [(1.0, 0.0), (0.0, 1.0), (0.6, -0.8)] {
            let x = ctx.tangent(&[xc], &[yc]);
            for t in [0.0, 0.3, 1.1, 2.5] {
                let m = ctx.majorant(&x, t).unwrap();
                let expect = t.cosh().powi(2) + t.sinh().powi(2);
                assert!((m - expect).abs() < 1e-9, "t={t}: {m} vs {expect}");
            }
        }
    }

    #[test]
    fn f_function_properties() {
        let ctx = MajorantContext::<F>::new(DualPairCase::a(2, 1, 1, 1));
        let d = ctx.dim();
        // zero matrix: no negative eigenvalues
        let x0 = ctx.tangent(&vec![0.0; d], &vec![0.0; d]);
        assert_eq!(ctx.f_function(&x0).unwrap(), 0.0);
        // scaling: f(2X) = 2 f(X)
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = ctx.random_unit(&mut rng);
        let xs2: Vec<f64> = x.xs.iter().map(|v| 2.0 * v).collect();
        let ys2: Vec<f64> = x.ys.iter().map(|v| 2.0 * v).collect();
        let x2 = ctx.tangent(&xs2, &ys2);
        let f1 = ctx.f_function(&x).unwrap();
        let f2 = ctx.f_function(&x2).unwrap();
        assert!((f2 - 2.0 * f1).abs() < 1e-9);
        assert!(f1 > 0.0);
    }

    #[test]
    fn decay_certificate_case_a() {
        let ctx = MajorantContext::<F>::new(DualPairCase::a(2, 1, 1, 1));
        let t_grid: Vec<f64> = (0..11).map(|k| 0.5 * k as f64).collect();
        let cert = decay_constants(&ctx, 500, 42, 50, &t_grid).unwrap();
        assert!(cert.b > 0.0 && cert.c > 0.0);
        assert!((cert.b - cert.c).abs() < 1e-15, "unit columns give b = c");
    }

    #[test]
    fn hessian_case_a_2211() {
        let case = DualPairCase::a(2, 2, 1, 1);
        let ctx = MajorantContext::<F>::new(case);
        let h = hessian_checked(&ctx, 1e-4, 1e-5).unwrap();
        // block order: x-coordinates over I = {(1,3),(1,4),(2,3)}, then y.
        // The (1,3) slot is doubled (column hits on both sides).
        let expect_diag = [8.0, 4.0, 4.0, 8.0, 4.0, 4.0];
        for (a, row) in h.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let e = if a == b { expect_diag[a] } else { 0.0 };
                assert!((v - e).abs() < 1e-12, "H[{a}][{b}] = {v}");
            }
        }
    }
}
