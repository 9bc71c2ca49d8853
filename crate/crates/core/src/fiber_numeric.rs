//! Direct numeric evaluation of the fiber integral.
//!
//! This integrates the translated cocycle over the normal space, including
//! the differential of the exponential map, so it validates the entire
//! Laplace assembly (amplitude, Hessian, volume conversion, orientation)
//! independently of the leading-term bookkeeping. It is slow and sits
//! behind the `numeric-fiber` feature for tests; the functions themselves
//! are always available.
//!
//! The pullback at `Y ∈ N` of the translated form is evaluated as
//!
//! `t^e · Σ_terms  P_term(t·exp(Y)·x) · det[ ξ_idx(J(V_b)) ] · φ₀(t·exp(Y)·x)`
//!
//! where `J(V) = −proj_𝔭 Φ(ad_Y)(V)` with `Φ(z) = (e^z − 1)/z`, and the
//! coordinates are the block-ordered `(x_a, y_a)` over the index set `I`.

// Dense index loops over small matrices are the idiom here.
#![allow(
    clippy::needless_range_loop,
    clippy::assign_op_pattern,
    clippy::type_complexity
)]
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cases::DualPairCase;
use crate::cocycle::{build_phi, PhiKind};
use crate::exterior::ExtIndex;
use crate::fock::{CaseAlgebra, Model};
use crate::geometry::{cmat_to_float, mat_vec, MajorantContext, CM};
use crate::schrodinger::{iota, GaussPoly};

type C64 = Complex64;

fn zero_mat(n: usize) -> CM<f64> {
    vec![vec![C64::new(0.0, 0.0); n]; n]
}

fn commutator(a: &CM<f64>, b: &CM<f64>) -> CM<f64> {
    let n = a.len();
    let mut out = zero_mat(n);
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
        }
    }
    out
}

/// `Φ(ad_Y)(V) = Σ_k ad_Y^k(V)/(k+1)!`.
fn dexp_transport(y: &CM<f64>, v: &CM<f64>, terms: usize) -> CM<f64> {
    let n = v.len();
    let mut acc = v.clone();
    let mut cur = v.clone();
    let mut fact = 1.0f64;
    for k in 1..terms {
        cur = commutator(y, &cur);
        fact *= (k + 1) as f64;
        for i in 0..n {
            for j in 0..n {
                acc[i][j] += cur[i][j] / fact;
            }
        }
    }
    acc
}

/// Zero out the diagonal blocks (the `𝔨` part).
fn proj_p(case: DualPairCase, m: &CM<f64>) -> CM<f64> {
    let p = case.p_rows() as usize;
    let n = m.len();
    let mut out = zero_mat(n);
    for i in 0..n {
        for j in 0..n {
            if (i < p) != (j < p) {
                out[i][j] = m[i][j];
            }
        }
    }
    out
}

/// Extraction slots: `ξ′_{ab}(W) = W[r][c]/scale` read off the `X`-matrix
/// support (mirrored for `ξ″` on the `Y`-matrix).
struct Extractor {
    prime: Vec<((u8, u8), usize, usize, C64)>,
    dprime: Vec<((u8, u8), usize, usize, C64)>,
}

impl Extractor {
    fn new(case: DualPairCase) -> Self {
        let alg = CaseAlgebra::new(case, Model::Minus);
        let mut prime = Vec::new();
        let mut dprime = Vec::new();
        for (a, b) in case.p_plus_indices() {
            let xm = cmat_to_float::<f64>(&alg.x_matrix(a, b));
            let ym = cmat_to_float::<f64>(&alg.y_matrix(a, b));
            let find = |m: &CM<f64>| {
                for (i, row) in m.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        if v.norm() > 1e-12 {
                            return (i, j, *v);
                        }
                    }
                }
                panic!("zero basis matrix");
            };
            let (i, j, s) = find(&xm);
            prime.push(((a, b), i, j, s));
            let (i, j, s) = find(&ym);
            dprime.push(((a, b), i, j, s));
        }
        Extractor { prime, dprime }
    }

    fn eval(&self, idx: &ExtIndex, w: &CM<f64>) -> C64 {
        let table = if idx.double_prime {
            &self.dprime
        } else {
            &self.prime
        };
        let (_, i, j, s) = table
            .iter()
            .find(|(ab, _, _, _)| *ab == (idx.a, idx.b))
            .expect("index outside 𝔭 basis");
        w[*i][*j] / s
    }
}

fn det_complex(m: &mut [Vec<C64>]) -> C64 {
    let n = m.len();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col][col].norm();
        for r in col + 1..n {
            if m[r][col].norm() > best {
                best = m[r][col].norm();
                piv = r;
            }
        }
        if best < 1e-300 {
            return C64::new(0.0, 0.0);
        }
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let sub = f * m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Result of the Monte-Carlo fiber integration.
#[derive(Debug, Clone)]
pub struct FiberQuadrature {
    pub value: C64,
    pub stderr: f64,
    pub samples: u64,
}

/// Monte-Carlo evaluation of `J(t)` over the normal space with Gaussian
/// importance sampling.
///
/// The fiber is oriented by the same convention the leading-term assembly
/// uses: block coordinate order `(x_1…x_N, y_1…y_N)` over `I`, times
/// `(−1)^{deg f_D}` (the displayed-amplitude orientation). Both routes
/// therefore compare directly.
pub fn numeric_fiber_integral(
    case: DualPairCase,
    t: f64,
    samples: u64,
    seed: u64,
) -> Result<FiberQuadrature, crate::laplace::LaplaceError> {
    let orientation = if crate::cocycle::special_harmonic(case).total_degree() % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    // Schrödinger form of φ: exterior keys with Gaussian-polynomial values
    let phi = build_phi(case, PhiKind::Full)
        .map_err(|e| crate::laplace::LaplaceError::Cocycle(e.to_string()))?;
    let terms: Vec<(Vec<ExtIndex>, GaussPoly)> = phi
        .terms()
        .map(|(k, p)| (k.clone(), iota(case, p)))
        .collect();

    let ctx = MajorantContext::<f64>::new(case);
    let extractor = Extractor::new(case);
    let nn = ctx.dim();
    let dim = 2 * nn;
    let e_exp = case.siegel_exponent() as i32;

    // complex-model columns of the standard frame
    let z_std = crate::schrodinger::standard_z(case);
    let rows = case.rows() as usize;
    let m_cols = case.m_cols() as usize;
    let cols: Vec<Vec<C64>> = (0..m_cols)
        .map(|j| (0..rows).map(|k| z_std[k][j].eval_f64()).collect())
        .collect();

    // tangent directions in block order
    let mut dirs: Vec<CM<f64>> = Vec::with_capacity(dim);
    for k in 0..nn {
        let mut xs = vec![0.0; nn];
        xs[k] = 1.0;
        dirs.push(ctx.tangent(&xs, &vec![0.0; nn]).matrix);
    }
    for k in 0..nn {
        let mut ys = vec![0.0; nn];
        ys[k] = 1.0;
        dirs.push(ctx.tangent(&vec![0.0; nn], &ys).matrix);
    }

    // Gaussian importance width from the smallest Hessian scale
    let sigma = 1.0 / (t * std::f64::consts::PI.sqrt());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = C64::new(0.0, 0.0);
    let mut sum2 = 0.0f64;

    let integrand = |coords: &[f64]| -> C64 {
        let xs = &coords[..nn];
        let ys = &coords[nn..];
        let yv = ctx.tangent(xs, ys);
        // point: t·exp(Y)·columns
        let ey = crate::geometry::matrix_exp(&yv.matrix);
        let pt: Vec<Vec<C64>> = {
            // evaluate() expects the (p+q)×m layout
            let mut grid = vec![vec![C64::new(0.0, 0.0); m_cols]; rows];
            for (j, col) in cols.iter().enumerate() {
                let moved = mat_vec(&ey, col);
                for (k, v) in moved.iter().enumerate() {
                    grid[k][j] = v * t;
                }
            }
            grid
        };
        // transported frame J(V_b) = −proj_𝔭 Φ(ad_Y)(V_b)
        let jmats: Vec<CM<f64>> = dirs
            .iter()
            .map(|v| {
                let tr = dexp_transport(&yv.matrix, v, 24);
                let pr = proj_p(case, &tr);
                pr.iter()
                    .map(|row| row.iter().map(|z| -z).collect())
                    .collect()
            })
            .collect();
        let mut total = C64::new(0.0, 0.0);
        for (key, gp) in &terms {
            let val = gp.evaluate(&pt);
            if val.norm() < 1e-300 {
                continue;
            }
            let mut pm: Vec<Vec<C64>> = key
                .iter()
                .map(|idx| jmats.iter().map(|j| extractor.eval(idx, j)).collect())
                .collect();
            total += val * det_complex(&mut pm);
        }
        total * t.powi(e_exp)
    };

    let norm_const = (sigma * (2.0 * std::f64::consts::PI).sqrt()).powi(dim as i32);
    for _ in 0..samples {
        let coords: Vec<f64> = (0..dim)
            .map(|_| {
                let u1: f64 = rng.gen_range(1e-12..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                sigma * (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            })
            .collect();
        let mut logpdf = 0.0;
        for c in &coords {
            logpdf += -c * c / (2.0 * sigma * sigma);
        }
        let weight = norm_const * (-logpdf).exp();
        let v = integrand(&coords) * weight;
        sum += v;
        sum2 += v.norm_sqr();
    }
    let n = samples as f64;
    let mean = sum / n * orientation;
    let var = (sum2 / n - mean.norm_sqr()).max(0.0);
    Ok(FiberQuadrature {
        value: mean,
        stderr: (var / n).sqrt(),
        samples,
    })
}
