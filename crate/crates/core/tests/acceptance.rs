//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Criteria 1–7, 9 and 10 are expected green; criterion 8 asserts the
//! re-derived fiber leading terms against the tabulated closed forms for
//! the full sweep and is red for cases B and C, where the re-derivation
//! (confirmed independently by Monte-Carlo integration of the fiber
//! pullback) disagrees with the tabulated powers of two. Criterion 11 is
//! the slow Monte-Carlo check itself and is `#[ignore]`d by default.

use fockform::cases::DualPairCase;
use fockform::cocycle::{
    build_phi, check_invariance, rel_differential, restrict_to_fiber, special_harmonic, PhiKind,
};
use fockform::diffop::DiffOperator;
use fockform::exterior::ExtIndex;
use fockform::fock::{
    annihilation_witness, e_weight_table, f_weight_table, kprime_f_weight_table, mul_d,
    weight_of_poly, weight_of_wedge, CaseAlgebra, Model, WeightResult, WeightVector,
};
use fockform::geometry::{decay_constants, hessian_checked, hessian_exact, standard_columns_exact};
use fockform::laplace::{fiber_compare, laplace_leading, quadrature, LaplaceProblem, Scheme};
use fockform::linalg;
use fockform::poly::{Poly, VarId};
use fockform::scalar::Scalar;
use fockform::weyl::{cmat_commutator, cmat_unit, CMat};
use fockform::MajorantContext;

fn desk_cases() -> [DualPairCase; 4] {
    [
        DualPairCase::a(2, 1, 1, 1),
        DualPairCase::a(2, 2, 1, 1),
        DualPairCase::b(2, 1),
        DualPairCase::c(3, 1),
    ]
}

fn announce(criterion: u32, label: &str, ok: bool) {
    println!(
        "criterion {:2} [{}] {}",
        criterion,
        if ok { "pass" } else { "FAIL" },
        label
    );
    assert!(ok, "criterion {criterion} failed: {label}");
}

/// Criterion 1: the derived 𝔤 and 𝔨′ actions reproduce the explicit
/// formulas exactly, and ω is a Lie algebra homomorphism.
#[test]
fn criterion_1_normalization_lock() {
    let t0 = std::time::Instant::now();
    // case A 𝔨 on 𝒫₋ and 𝔨′ blocks
    for case in [DualPairCase::a(2, 1, 1, 1), DualPairCase::a(2, 2, 1, 1)] {
        let (p, q) = match case {
            DualPairCase::A { p, q, .. } => (p, q),
            _ => unreachable!(),
        };
        let alg = CaseAlgebra::new(case, Model::Minus);
        let m = case.m_cols();
        let rows = case.rows() as usize;
        let half = Scalar::from_ratio(m as i64, 2);
        for a in 1..=p {
            for b in 1..=p {
                let mut expect = DiffOperator::zero();
                for k in 1..=m {
                    expect = &expect + &mul_d(VarId::UMinus(a, k), VarId::UMinus(b, k));
                }
                if a == b {
                    expect = &expect + &DiffOperator::identity().scale(&half);
                }
                assert_eq!(alg.omega(&cmat_unit(rows, a, b)), expect);
            }
        }
        for mu in p + 1..=p + q {
            for nu in p + 1..=p + q {
                let mut expect = DiffOperator::zero();
                for k in 1..=m {
                    expect = &expect - &mul_d(VarId::UMinus(nu, k), VarId::UMinus(mu, k));
                }
                if mu == nu {
                    expect = &expect - &DiffOperator::identity().scale(&half);
                }
                assert_eq!(alg.omega(&cmat_unit(rows, mu, nu)), expect);
            }
        }
    }
    // cases B and C 𝔨 on 𝒫₋ (same display)
    for (case, n, r) in [
        (DualPairCase::b(2, 1), 2u8, 1u8),
        (DualPairCase::c(3, 1), 3, 1),
    ] {
        let alg = CaseAlgebra::new(case, Model::Minus);
        for a in 1..=n {
            for b in 1..=n {
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
                let kmat = fockform::weyl::cmat_scale(
                    &fockform::weyl::cmat_sub(
                        &cmat_unit(2 * n as usize, a, b),
                        &cmat_unit(2 * n as usize, n + b, n + a),
                    ),
                    &(-fockform::GaussianRational::i()),
                );
                assert_eq!(alg.omega(&kmat), expect);
            }
        }
        // 𝔨′ operators commute with the derived 𝔤 action
        let mut g_ops: Vec<DiffOperator> =
            alg.k_basis().iter().map(|(_, m)| alg.omega(m)).collect();
        for (_, m) in alg.p_plus_basis() {
            g_ops.push(alg.omega(&m));
        }
        for (_, m) in alg.p_minus_basis() {
            g_ops.push(alg.omega(&m));
        }
        for (_, kp) in alg.kprime_all_ops() {
            for g in &g_ops {
                assert!(kp.commutator(g).is_zero());
            }
        }
    }
    // bracket test: ω([x,y]) = [ω(x), ω(y)] for all implemented pairs
    for case in [DualPairCase::a(2, 1, 1, 1), DualPairCase::b(2, 1)] {
        let alg = CaseAlgebra::new(case, Model::Full);
        let mut gens: Vec<CMat> = alg.k_basis().into_iter().map(|(_, m)| m).collect();
        for (_, m) in alg.p_plus_basis() {
            gens.push(m);
        }
        for (_, m) in alg.p_minus_basis() {
            gens.push(m);
        }
        let omegas: Vec<DiffOperator> = gens.iter().map(|m| alg.omega(m)).collect();
        for (i, x) in gens.iter().enumerate() {
            for (j, y) in gens.iter().enumerate() {
                let lhs = omegas[i].commutator(&omegas[j]);
                let rhs = alg.omega(&cmat_commutator(x, y));
                assert_eq!(lhs, rhs, "bracket mismatch at pair ({i},{j})");
            }
        }
    }
    let ok = t0.elapsed().as_secs() < 30;
    announce(1, "normalization lock, runtime < 30 s", ok);
}

/// Criterion 2: weight tables match exactly.
#[test]
fn criterion_2_weights() {
    for case in desk_cases() {
        let alg = CaseAlgebra::new(case, Model::Minus);
        let torus = alg.k_torus();
        let ew = match weight_of_wedge(&alg, &torus, &fockform::cocycle::top_wedge(case), false) {
            WeightResult::Weight(w) => w,
            other => panic!("{case}: e_D not a weight vector: {other:?}"),
        };
        assert_eq!(ew, e_weight_table(case), "{case}: e_D weight");
        let ops: Vec<DiffOperator> = torus.iter().map(|t| alg.omega(t)).collect();
        let f = special_harmonic(case);
        let fw = match weight_of_poly(&ops, &f) {
            WeightResult::Weight(w) => w,
            other => panic!("{case}: f_D not a weight vector: {other:?}"),
        };
        assert_eq!(fw, f_weight_table(case), "{case}: f_D weight");
        let kw = match weight_of_poly(&alg.kprime_torus_ops(), &f) {
            WeightResult::Weight(w) => w,
            other => panic!("{case}: f_D not a 𝔨′ weight vector: {other:?}"),
        };
        assert_eq!(kw, kprime_f_weight_table(case), "{case}: 𝔨′ weight");
    }
    // the printed examples
    assert_eq!(
        e_weight_table(DualPairCase::a(2, 2, 1, 1)),
        WeightVector::from_ints(vec![2, 1, -2, -1])
    );
    assert_eq!(
        kprime_f_weight_table(DualPairCase::a(2, 2, 1, 1)),
        WeightVector::from_ints(vec![1, -1])
    );
    announce(2, "weight tables", true);
}

/// Criterion 3: f_D is annihilated by 𝔫 and the φ⁺ values by ω(𝔭₋),
/// exactly.
#[test]
fn criterion_3_annihilation() {
    for case in desk_cases() {
        let alg = CaseAlgebra::new(case, Model::Minus);
        let f = special_harmonic(case);
        assert!(
            annihilation_witness(&alg.kprime_nilpotent_ops(), &f).is_none(),
            "{case}: f_D not annihilated by 𝔫"
        );
        let phi = build_phi(case, PhiKind::Plus).unwrap();
        let rep = check_invariance(case, &phi, PhiKind::Plus);
        assert!(rep.annihilated, "{case}: {:?}", rep.witness);
        assert!(rep.invariant, "{case}: {:?}", rep.witness);
    }
    announce(3, "highest-weight and annihilation", true);
}

/// Criterion 4: d(φ⁺) = d(φ⁻) = d(φ) = 0 exactly.
#[test]
fn criterion_4_closedness() {
    for case in desk_cases() {
        let t0 = std::time::Instant::now();
        for (kind, model) in [
            (PhiKind::Plus, Model::Minus),
            (PhiKind::Minus, Model::Plus),
            (PhiKind::Full, Model::Full),
        ] {
            let phi = build_phi(case, kind).unwrap();
            let alg = CaseAlgebra::new(case, model);
            let d = rel_differential(&alg, &phi);
            assert!(d.is_zero(), "{case}: d({kind:?}) ≠ 0");
        }
        assert!(t0.elapsed().as_secs() < 300, "{case}: over 5 minutes");
    }
    announce(4, "closedness of φ⁺, φ⁻ and φ", true);
}

/// Criterion 5: restriction to the fiber is the single term f_D·⋀ξ′.
#[test]
fn criterion_5_restriction() {
    for case in desk_cases() {
        let phi = build_phi(case, PhiKind::Plus).unwrap();
        let restricted = restrict_to_fiber(case, &phi);
        assert_eq!(restricted.num_terms(), 1, "{case}");
        let key: Vec<ExtIndex> = case
            .index_set()
            .into_iter()
            .map(|(a, b)| ExtIndex::prime(a, b))
            .collect();
        assert_eq!(
            restricted.coefficient(&key),
            special_harmonic(case),
            "{case}"
        );
    }
    announce(5, "single-term fiber restriction", true);
}

/// Criterion 6: the intertwiner identities hold on all monomials of degree
/// ≤ 3, and the highest term matches the displayed product.
#[test]
fn criterion_6_intertwiner() {
    use fockform::schrodinger::{gauss_apply, iota, iota_ann_op, iota_mult_op};
    for case in desk_cases() {
        let alg = CaseAlgebra::new(case, Model::Full);
        let vars = alg.space.vars();
        // all monomials of degree ≤ 3
        let mut monos = vec![fockform::Monomial::one()];
        let mut level: Vec<Vec<VarId>> = vec![Vec::new()];
        for _ in 0..3 {
            let mut next = Vec::new();
            for prefix in &level {
                for &v in &vars {
                    if let Some(&last) = prefix.last() {
                        if v < last {
                            continue;
                        }
                    }
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            monos
                .extend(next.iter().map(|vs| {
                    fockform::Monomial::from_pairs(vs.iter().map(|&v| (v, 1)).collect())
                }));
            level = next;
        }
        for mono in &monos {
            let p = Poly::term(mono.clone(), Scalar::one());
            let image = iota(case, &p);
            for &v in &vars {
                let lhs = iota(case, &alg.space.weyl_mult(v).apply(&p));
                let rhs = gauss_apply(&iota_mult_op(case, v), &image);
                assert_eq!(lhs, rhs, "{case}: mult {v:?} on {mono}");
                let lhs = iota(case, &alg.space.weyl_ann(v).apply(&p));
                let rhs = gauss_apply(&iota_ann_op(case, v), &image);
                assert_eq!(lhs, rhs, "{case}: ann {v:?} on {mono}");
            }
            // displayed highest term
            let mut display = Poly::one();
            for (v, e) in mono.vars() {
                let alpha = match v {
                    VarId::UPlus(i, _) | VarId::UMinus(i, _) => i <= case.p_rows(),
                    _ => unreachable!(),
                };
                let c = Scalar::from_int(2) * Scalar::two_pow_half(1) * Scalar::pi_pow(1);
                let factor = match v {
                    VarId::UPlus(i, a) if alpha => Poly::var(VarId::Z(i, a)).scale(&-c),
                    VarId::UPlus(i, a) => Poly::var(VarId::ZBar(i, a)).scale(&-c),
                    VarId::UMinus(i, k) if alpha => Poly::var(VarId::ZBar(i, k)).scale(&c),
                    VarId::UMinus(i, k) => Poly::var(VarId::Z(i, k)).scale(&c),
                    _ => unreachable!(),
                };
                display = &display * &factor.pow(e);
            }
            assert_eq!(
                image.highest_term().poly,
                display,
                "{case}: top of ι({mono})"
            );
        }
    }
    announce(6, "intertwiner and highest-term display", true);
}

/// Criterion 7: Hessian diagonals {8,4}, the exact determinant, and the
/// vanishing gradient.
#[test]
fn criterion_7_hessian() {
    let case = DualPairCase::a(2, 2, 1, 1);
    let ctx = MajorantContext::new(case);
    // analytic entries match central finite differences within 1e−5 and the
    // gradient vanishes below 1e−8 (both enforced inside hessian_checked)
    let h = hessian_checked(&ctx, 1e-4, 1e-5).unwrap();
    let expect = [8.0, 4.0, 4.0, 8.0, 4.0, 4.0];
    for (i, row) in h.iter().enumerate() {
        assert!((row[i] - expect[i]).abs() < 1e-12);
    }
    // det(A) = 4^{2rq+2ps−rs} = 4⁷, exactly
    let exact = hessian_exact(case, &standard_columns_exact(case));
    let det = linalg::determinant(&exact).unwrap();
    let four_pow_7 = fockform::GaussianRational::from_int(4i64.pow(7));
    assert_eq!(det, four_pow_7);
    // other desk cases: finite differences agree with the analytic form
    for case in [DualPairCase::b(2, 1), DualPairCase::c(3, 1)] {
        let ctx = MajorantContext::new(case);
        hessian_checked(&ctx, 1e-4, 1e-5).unwrap();
    }
    announce(7, "majorant Hessian: entries, determinant, gradient", true);
}

/// Criterion 8: re-derived fiber leading terms equal the tabulated closed
/// forms structurally (i-power, 2-power, π-power, t-power, rate) over the
/// sweep, with nonzero coefficients.
///
/// Expected red for B and C: the re-derivation — cross-validated by direct
/// Monte-Carlo integration of the fiber pullback — matches every part of
/// those closed forms except the power of two (off by 2^{2nr+9r/4−5r²/4}
/// and 2^{nr−(r²+3r)/4} respectively), and for B with even r the tabulated
/// exponent is not even an integer while this pipeline provably produces
/// integers. See the repository notes for the analysis.
#[test]
fn criterion_8_fiber_asymptotics() {
    let sweep = [
        DualPairCase::a(2, 1, 1, 1),
        DualPairCase::a(2, 2, 1, 1),
        DualPairCase::a(3, 1, 2, 1),
        DualPairCase::b(2, 1),
        DualPairCase::b(3, 1),
        DualPairCase::c(3, 1),
    ];
    let mut all = true;
    for case in sweep {
        let rep = fiber_compare(case).unwrap();
        assert!(
            !rep.rederived.coeff.is_zero() && !rep.closed.coeff.is_zero(),
            "{case}: zero leading coefficient"
        );
        println!(
            "criterion  8 [{}] fiber {case}: rederived {} | closed {}",
            if rep.matches { "pass" } else { "FAIL" },
            rep.rederived.describe(),
            rep.closed.describe()
        );
        all &= rep.matches;
    }
    announce(8, "fiber leading terms equal the closed forms", all);
}

/// Criterion 9: quadrature against the Laplace leading term on the toys.
#[test]
fn criterion_9_laplace_toys() {
    // 1D: f = 1+x², h = x², t = 50: within 1%
    let amplitude = |x: &[f64]| num_complex::Complex64::new(1.0 + x[0] * x[0], 0.0);
    let phase = |x: &[f64]| x[0] * x[0];
    let p = LaplaceProblem {
        dim: 1,
        amplitude: &amplitude,
        phase: &phase,
        hessian: None,
    };
    let (q, _) = quadrature(&p, 50.0, &Scheme::GaussHermite { nodes: 24 });
    let lead = laplace_leading(&p, 50.0).unwrap();
    let r1 = (q / lead).re;
    assert!((r1 - 1.0).abs() <= 0.0101, "1D ratio {r1}");
    // 2D moment toy: f = x²y², h = x²+y², t = 100: within 2% of π/(4t³)
    let amplitude2 = |x: &[f64]| num_complex::Complex64::new(x[0] * x[0] * x[1] * x[1], 0.0);
    let phase2 = |x: &[f64]| x[0] * x[0] + x[1] * x[1];
    let p2 = LaplaceProblem {
        dim: 2,
        amplitude: &amplitude2,
        phase: &phase2,
        hessian: None,
    };
    let t = 100.0;
    let (q2, _) = quadrature(&p2, t, &Scheme::GaussHermite { nodes: 24 });
    let oracle = std::f64::consts::PI / (4.0 * t * t * t);
    let r2 = q2.re / oracle;
    assert!((r2 - 1.0).abs() <= 0.02, "2D ratio {r2}");
    announce(9, "Laplace toy ratios", true);
}

/// Criterion 10: the decay certificate holds with zero violations and the
/// rank-one case matches cosh² + sinh² to 1e−9.
#[test]
fn criterion_10_majorant_decay() {
    for case in desk_cases() {
        let ctx = MajorantContext::new(case);
        let t_grid: Vec<f64> = (0..11).map(|k| 0.5 * k as f64).collect();
        let cert =
            decay_constants(&ctx, 2000, 11, 200, &t_grid).unwrap_or_else(|e| panic!("{case}: {e}"));
        assert!(cert.b > 0.0 && cert.c > 0.0, "{case}");
    }
    // rank-one sphericality
    let ctx = MajorantContext::new(DualPairCase::a(1, 1, 1, 0));
    for t in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let x = ctx.tangent(&[1.0], &[0.0]);
        let m = ctx.majorant(&x, t).unwrap();
        let expect = t.cosh().powi(2) + t.sinh().powi(2);
        assert!((m - expect).abs() < 1e-9);
    }
    announce(10, "majorant decay certificate and rank-one law", true);
}

/// Criterion 11 (slow, feature-gated): numeric fiber integral for
/// A(1,1,1,0) within 15% of the closed form at t = 3 with ≥ 10⁶ samples.
#[test]
#[ignore = "slow Monte-Carlo validation; run with --ignored --release"]
fn criterion_11_numeric_fiber() {
    use fockform::fiber_numeric::numeric_fiber_integral;
    use fockform::laplace::fiber_leading_closed_form;
    let case = DualPairCase::a(1, 1, 1, 0);
    let t = 3.0;
    let q = numeric_fiber_integral(case, t, 1_000_000, 20240814).unwrap();
    let closed = fiber_leading_closed_form(case).eval(t);
    let ratio = q.value / closed;
    println!(
        "criterion 11 numeric fiber: ratio to closed form {:.4}+{:.4}i (stderr {:.2e})",
        ratio.re, ratio.im, q.stderr
    );
    announce(
        11,
        "numeric fiber integral within 15%",
        (ratio.re - 1.0).abs() < 0.15 && ratio.im.abs() < 0.15,
    );
}
