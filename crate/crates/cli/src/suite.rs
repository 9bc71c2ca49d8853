//! The verification checks behind the CLI verbs.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use serde_json::json;

use fockform::cases::DualPairCase;
use fockform::cocycle::{
    build_phi, check_invariance, plus_module, rel_differential, restrict_to_fiber,
    special_harmonic, PhiKind,
};
use fockform::exterior::ExtIndex;
use fockform::fock::{
    annihilation_witness, e_weight_table, f_weight_table, kprime_f_weight_table, weight_of_poly,
    weight_of_wedge, CaseAlgebra, Model, WeightResult,
};
use fockform::geometry::{decay_constants, hessian_checked};
use fockform::laplace::{fiber_compare, laplace_leading, quadrature, LaplaceProblem, Scheme};
use fockform::poly::{Monomial, Poly, VarId};
use fockform::report::{check_anchor, cochain_to_json, weight_to_json, CheckReport};
use fockform::schrodinger::{gauss_apply, iota, iota_ann_op, iota_mult_op};
use fockform::MajorantContext;

pub struct Output {
    pub dir: Option<PathBuf>,
    pub timings: bool,
    pub seed: u64,
}

pub fn default_checks() -> Vec<String> {
    [
        "build",
        "closed",
        "invariance",
        "annihilation",
        "restriction",
        "weights",
        "intertwine",
        "hessian",
        "fiber",
        "majorant",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

pub fn run_suite(
    case: DualPairCase,
    checks: &[String],
    out: &Output,
    numeric: bool,
    samples: u64,
) -> Result<bool, String> {
    let mut reports = Vec::new();
    for check in checks {
        let t0 = Instant::now();
        let mut rep = match check.as_str() {
            "build" => check_build(case),
            "closed" => check_closed(case),
            "invariance" => check_invariance_all(case),
            "annihilation" => check_annihilation(case),
            "restriction" => check_restriction(case),
            "weights" => check_weights(case),
            "intertwine" => check_intertwine(case, 2),
            "hessian" => check_hessian(case),
            "fiber" => check_fiber(case, 3.0, numeric, samples),
            "majorant" => check_majorant(case, out.seed),
            other => return Err(format!("unknown check '{other}'")),
        };
        if out.timings {
            rep.elapsed_ms = Some(t0.elapsed().as_millis() as u64);
        }
        reports.push(rep);
    }
    emit(&reports, out)
}

/// Print one line per report, write per-check and summary JSON files when a
/// directory is configured, and return overall success.
pub fn emit(reports: &[CheckReport], out: &Output) -> Result<bool, String> {
    let mut all = true;
    for rep in reports {
        all &= rep.passed();
        println!(
            "[{}] {} :: {} ({})",
            if rep.passed() { "pass" } else { "FAIL" },
            rep.check,
            rep.case,
            check_anchor(&rep.check)
        );
        if let Some(w) = &rep.witness {
            println!("       witness: {w}");
        }
    }
    if let Some(dir) = &out.dir {
        fs::create_dir_all(dir).map_err(|e| e.to_string())?;
        for rep in reports {
            let path = dir.join(format!("{}-{}.json", rep.check, slug(&rep.case)));
            fs::write(&path, serde_json::to_string_pretty(rep).unwrap())
                .map_err(|e| e.to_string())?;
        }
        let summary: Vec<_> = reports
            .iter()
            .map(|r| {
                json!({
                    "check": r.check,
                    "case": r.case,
                    "status": r.status,
                    "anchor": check_anchor(&r.check),
                })
            })
            .collect();
        let path = dir.join("summary.json");
        fs::write(
            &path,
            serde_json::to_string_pretty(&json!({ "checks": summary, "all_passed": all })).unwrap(),
        )
        .map_err(|e| e.to_string())?;
    }
    Ok(all)
}

fn slug(case: &str) -> String {
    case.chars().filter(|c| c.is_ascii_alphanumeric()).collect()
}

fn check_build(case: DualPairCase) -> CheckReport {
    let name = case.to_string();
    match build_phi(case, PhiKind::Full) {
        Ok(phi) => {
            let bideg = phi.bidegree();
            let d = case.dprime() as usize;
            if bideg == Some((d, d)) {
                CheckReport::pass("build", &name)
                    .with_detail(json!({"terms": phi.num_terms(), "bidegree": [d, d]}))
            } else {
                CheckReport::fail(
                    "build",
                    &name,
                    format!("unexpected bidegree {bideg:?}, wanted ({d},{d})"),
                )
            }
        }
        Err(e) => CheckReport::fail("build", &name, e.to_string()),
    }
}

fn check_closed(case: DualPairCase) -> CheckReport {
    let name = case.to_string();
    let checks = [
        (PhiKind::Plus, Model::Minus, "dφ⁺"),
        (PhiKind::Minus, Model::Plus, "dφ⁻"),
        (PhiKind::Full, Model::Full, "dφ"),
    ];
    for (kind, model, label) in checks {
        let phi = match build_phi(case, kind) {
            Ok(p) => p,
            Err(e) => return CheckReport::fail("closed", &name, e.to_string()),
        };
        let alg = CaseAlgebra::new(case, model);
        let d = rel_differential(&alg, &phi);
        if !d.is_zero() {
            return CheckReport::fail("closed", &name, format!("{label} ≠ 0: {d:?}"));
        }
    }
    CheckReport::pass("closed", &name)
}

fn check_invariance_all(case: DualPairCase) -> CheckReport {
    let name = case.to_string();
    for kind in [PhiKind::Plus, PhiKind::Minus, PhiKind::Full] {
        let phi = match build_phi(case, kind) {
            Ok(p) => p,
            Err(e) => return CheckReport::fail("invariance", &name, e.to_string()),
        };
        let rep = check_invariance(case, &phi, kind);
        if !rep.invariant || !rep.annihilated {
            return CheckReport::fail(
                "invariance",
                &name,
                rep.witness.unwrap_or_else(|| format!("{kind:?} fails")),
            );
        }
    }
    CheckReport::pass("invariance", &name)
}

fn check_annihilation(case: DualPairCase) -> CheckReport {
    let name = case.to_string();
    let alg = CaseAlgebra::new(case, Model::Minus);
    let f = special_harmonic(case);
    if let Some((n, image)) = annihilation_witness(&alg.kprime_nilpotent_ops(), &f) {
        return CheckReport::fail(
            "annihilation",
            &name,
            format!("nilpotent generator #{n} does not annihilate f_D: {image}"),
        );
    }
    // φ⁺ values under ω(𝔭₋)
    let phi = match build_phi(case, PhiKind::Plus) {
        Ok(p) => p,
        Err(e) => return CheckReport::fail("annihilation", &name, e.to_string()),
    };
    let pm: Vec<_> = alg
        .p_minus_basis()
        .into_iter()
        .map(|(_, m)| alg.omega(&m))
        .collect();
    for (_, value) in phi.terms() {
        if let Some((n, image)) = annihilation_witness(&pm, value) {
            return CheckReport::fail(
                "annihilation",
                &name,
                format!("Y-basis element #{n} does not annihilate a φ⁺ value: {image}"),
            );
        }
    }
    CheckReport::pass("annihilation", &name)
}

fn check_restriction(case: DualPairCase) -> CheckReport {
    let name = case.to_string();
    let phi = match build_phi(case, PhiKind::Plus) {
        Ok(p) => p,
        Err(e) => return CheckReport::fail("restriction", &name, e.to_string()),
    };
    let restricted = restrict_to_fiber(case, &phi);
    if restricted.num_terms() != 1 {
        return CheckReport::fail(
            "restriction",
            &name,
            format!(
                "{} terms after restriction, wanted 1",
                restricted.num_terms()
            ),
        );
    }
    let key: Vec<ExtIndex> = case
        .index_set()
        .into_iter()
        .map(|(a, b)| ExtIndex::prime(a, b))
        .collect();
    if restricted.coefficient(&key) != special_harmonic(case) {
        return CheckReport::fail(
            "restriction",
            &name,
            "restricted coefficient differs from f_D".into(),
        );
    }
    CheckReport::pass("restriction", &name)
        .with_detail(json!({"restricted": cochain_to_json(&restricted)}))
}

fn check_weights(case: DualPairCase) -> CheckReport {
    let name = case.to_string();
    let alg = CaseAlgebra::new(case, Model::Minus);
    let torus = alg.k_torus();
    // e_D
    let ew = match weight_of_wedge(&alg, &torus, &fockform::cocycle::top_wedge(case), false) {
        WeightResult::Weight(w) => w,
        WeightResult::NotWeight { generator } => {
            return CheckReport::fail(
                "weights",
                &name,
                format!("e_D is not a weight vector of torus generator {generator}"),
            )
        }
    };
    if ew != e_weight_table(case) {
        return CheckReport::fail("weights", &name, format!("e_D weight {ew:?} off-table"));
    }
    // f_D under 𝔨 and 𝔨′
    let torus_ops: Vec<_> = torus.iter().map(|t| alg.omega(t)).collect();
    let f = special_harmonic(case);
    let fw = match weight_of_poly(&torus_ops, &f) {
        WeightResult::Weight(w) => w,
        WeightResult::NotWeight { generator } => {
            return CheckReport::fail(
                "weights",
                &name,
                format!("f_D is not a weight vector of torus generator {generator}"),
            )
        }
    };
    if fw != f_weight_table(case) {
        return CheckReport::fail("weights", &name, format!("f_D weight {fw:?} off-table"));
    }
    let kp = match weight_of_poly(&alg.kprime_torus_ops(), &f) {
        WeightResult::Weight(w) => w,
        WeightResult::NotWeight { generator } => {
            return CheckReport::fail(
                "weights",
                &name,
                format!("f_D not a 𝔨′ weight vector at generator {generator}"),
            )
        }
    };
    if kp != kprime_f_weight_table(case) {
        return CheckReport::fail("weights", &name, format!("𝔨′ weight {kp:?} off-table"));
    }
    CheckReport::pass("weights", &name).with_detail(json!({
        "e_weight": weight_to_json(&ew),
        "f_weight": weight_to_json(&fw),
        "kprime_weight": weight_to_json(&kp),
    }))
}

/// All monomials in `vars` of total degree ≤ `max`.
fn monomials_up_to(vars: &[VarId], max: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for d in 1..=max {
        let mut level: Vec<Vec<(VarId, u32)>> = vec![Vec::new()];
        for _ in 0..d {
            let mut next = Vec::new();
            for prefix in &level {
                let start = prefix.last().map(|&(v, _)| v);
                for &v in vars {
                    if let Some(sv) = start {
                        if v < sv {
                            continue;
                        }
                    }
                    let mut p = prefix.clone();
                    p.push((v, 1));
                    next.push(p);
                }
            }
            level = next;
        }
        out.extend(level.into_iter().map(Monomial::from_pairs));
    }
    out
}

pub fn check_intertwine(case: DualPairCase, max_degree: u32) -> CheckReport {
    let name = case.to_string();
    let alg = CaseAlgebra::new(case, Model::Full);
    let vars = alg.space.vars();
    let monos = monomials_up_to(&vars, max_degree);
    for mono in &monos {
        let p = Poly::term(mono.clone(), fockform::Scalar::one());
        let image = iota(case, &p);
        for &v in &vars {
            // multiplication side
            let lhs = iota(case, &alg.space.weyl_mult(v).apply(&p));
            let rhs = gauss_apply(&iota_mult_op(case, v), &image);
            if lhs != rhs {
                return CheckReport::fail(
                    "intertwine",
                    &name,
                    format!("mult({v:?}) fails on {mono}"),
                );
            }
            // annihilation side
            let lhs = iota(case, &alg.space.weyl_ann(v).apply(&p));
            let rhs = gauss_apply(&iota_ann_op(case, v), &image);
            if lhs != rhs {
                return CheckReport::fail(
                    "intertwine",
                    &name,
                    format!("ann({v:?}) fails on {mono}"),
                );
            }
        }
        // highest term of a monomial image matches the displayed product
        let top = image.highest_term();
        let mut display = fockform::Poly::one();
        for (v, e) in mono.vars() {
            let factor = leading_factor(case, v);
            display = &display * &factor.pow(e);
        }
        if top.poly != display {
            return CheckReport::fail(
                "intertwine",
                &name,
                format!("highest term of ι({mono}) differs from the displayed product"),
            );
        }
    }
    CheckReport::pass("intertwine", &name)
        .with_detail(json!({"monomials": monos.len(), "max_degree": max_degree}))
}

/// The displayed leading factor of one Fock variable under `ι`.
fn leading_factor(case: DualPairCase, v: VarId) -> Poly {
    use fockform::Scalar;
    let alpha = match v {
        VarId::UPlus(i, _) | VarId::UMinus(i, _) => i <= case.p_rows(),
        _ => unreachable!(),
    };
    let two_sqrt2_pi = Scalar::from_int(2) * Scalar::two_pow_half(1) * Scalar::pi_pow(1);
    match v {
        VarId::UPlus(i, a) if alpha => Poly::var(VarId::Z(i, a)).scale(&-two_sqrt2_pi),
        VarId::UPlus(i, a) => Poly::var(VarId::ZBar(i, a)).scale(&-two_sqrt2_pi),
        VarId::UMinus(i, k) if alpha => Poly::var(VarId::ZBar(i, k)).scale(&two_sqrt2_pi),
        VarId::UMinus(i, k) => Poly::var(VarId::Z(i, k)).scale(&two_sqrt2_pi),
        _ => unreachable!(),
    }
}

pub fn check_hessian(case: DualPairCase) -> CheckReport {
    let name = case.to_string();
    let ctx = MajorantContext::new(case);
    match hessian_checked(&ctx, 1e-4, 1e-5) {
        Ok(h) => {
            let mut detail =
                json!({"diagonal": h.iter().enumerate().map(|(i, r)| r[i]).collect::<Vec<_>>()});
            if let DualPairCase::A { p, q, r, s } = case {
                // det(A) = 4^{2rq+2ps−rs} exactly
                let expo = 2 * (r as u32) * (q as u32) + 2 * (p as u32) * (s as u32)
                    - (r as u32) * (s as u32);
                let mut det = 1.0f64;
                for (i, row) in h.iter().enumerate() {
                    det *= row[i];
                }
                let expect = 4.0f64.powi(expo as i32);
                if (det - expect).abs() > 1e-6 * expect {
                    return CheckReport::fail("hessian", &name, format!("det {det} ≠ 4^{expo}"));
                }
                detail["det"] = json!(det);
                detail["det_is_4_pow"] = json!(expo);
            }
            CheckReport::pass("hessian", &name).with_detail(detail)
        }
        Err(e) => CheckReport::fail("hessian", &name, e.to_string()),
    }
}

pub fn check_fiber(case: DualPairCase, t: f64, numeric: bool, samples: u64) -> CheckReport {
    let name = case.to_string();
    match fiber_compare(case) {
        Ok(rep) => {
            let mut detail = json!({
                "closed_form": rep.closed.describe(),
                "rederived": rep.rederived.describe(),
                "match": rep.matches,
                "closed_form_at_t": format!("{:?}", rep.closed.eval(t)),
                "rederived_at_t": format!("{:?}", rep.rederived.eval(t)),
            });
            if numeric {
                match fockform::fiber_numeric::numeric_fiber_integral(case, t, samples, 20240814) {
                    Ok(q) => {
                        let ratio = q.value / rep.rederived.eval(t);
                        detail["numeric"] = json!({
                            "value": format!("{:?}", q.value),
                            "stderr": q.stderr,
                            "ratio_to_rederived": format!("{:.4}+{:.4}i", ratio.re, ratio.im),
                        });
                    }
                    Err(e) => {
                        detail["numeric_error"] = json!(e.to_string());
                    }
                }
            }
            if rep.matches {
                CheckReport::pass("fiber", &name).with_detail(detail)
            } else {
                CheckReport::fail(
                    "fiber",
                    &name,
                    format!(
                        "re-derived {} vs closed form {}",
                        rep.rederived.describe(),
                        rep.closed.describe()
                    ),
                )
                .with_detail(detail)
            }
        }
        Err(e) => CheckReport::fail("fiber", &name, e.to_string()),
    }
}

fn check_majorant(case: DualPairCase, seed: u64) -> CheckReport {
    let name = case.to_string();
    let ctx = MajorantContext::new(case);
    let t_grid: Vec<f64> = (0..11).map(|k| 0.5 * k as f64).collect();
    match decay_constants(&ctx, 2000, seed, 200, &t_grid) {
        Ok(cert) => CheckReport::pass("majorant", &name).with_detail(json!({
            "b": cert.b,
            "c": cert.c,
            "sampled_min_f": cert.sampled_min_f,
            "samples": cert.samples,
        })),
        Err(e) => CheckReport::fail("majorant", &name, e.to_string()),
    }
}

pub fn majorant_csv(
    case: DualPairCase,
    samples: usize,
    tmax: f64,
    out: &Output,
) -> Result<bool, String> {
    use rand::SeedableRng;
    let ctx = MajorantContext::new(case);
    let t_grid: Vec<f64> = (0..11).map(|k| tmax * k as f64 / 10.0).collect();
    let cert = decay_constants(&ctx, samples, out.seed, 200, &t_grid).map_err(|e| e.to_string())?;
    let mut csv = String::from("x_id,t,M,bound\n");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(out.seed ^ 0x5eed);
    for x_id in 0..20 {
        let x = ctx.random_unit(&mut rng);
        for &t in &t_grid {
            let m = ctx.majorant(&x, t).map_err(|e| e.to_string())?;
            let bound = cert.c * (2.0 * cert.b * t).exp();
            csv.push_str(&format!("{x_id},{t},{m},{bound}\n"));
        }
    }
    let summary = json!({
        "case": case.to_string(),
        "b": cert.b,
        "c": cert.c,
        "sampled_min_f": cert.sampled_min_f,
        "samples": cert.samples,
        "status": "pass",
    });
    match &out.dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| e.to_string())?;
            fs::write(dir.join("majorant.csv"), &csv).map_err(|e| e.to_string())?;
            fs::write(
                dir.join("majorant-certificate.json"),
                serde_json::to_string_pretty(&summary).unwrap(),
            )
            .map_err(|e| e.to_string())?;
            println!(
                "wrote majorant.csv and majorant-certificate.json to {}",
                dir.display()
            );
        }
        None => {
            print!("{csv}");
            println!("{}", serde_json::to_string_pretty(&summary).unwrap());
        }
    }
    Ok(true)
}

pub fn print_cocycle(case: DualPairCase, kind: &str) -> Result<(), String> {
    let kind = match kind {
        "plus" => PhiKind::Plus,
        "minus" => PhiKind::Minus,
        _ => PhiKind::Full,
    };
    let phi = build_phi(case, kind).map_err(|e| e.to_string())?;
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "case": case.to_string(),
            "bidegree": phi.bidegree(),
            "cochain": cochain_to_json(&phi),
        }))
        .unwrap()
    );
    Ok(())
}

pub fn print_weights(case: DualPairCase) {
    let alg = CaseAlgebra::new(case, Model::Minus);
    let torus = alg.k_torus();
    let ew = weight_of_wedge(&alg, &torus, &fockform::cocycle::top_wedge(case), false);
    let torus_ops: Vec<_> = torus.iter().map(|t| alg.omega(t)).collect();
    let f = special_harmonic(case);
    let fw = weight_of_poly(&torus_ops, &f);
    let kp = weight_of_poly(&alg.kprime_torus_ops(), &f);
    let render = |w: &WeightResult| match w {
        WeightResult::Weight(w) => weight_to_json(w),
        WeightResult::NotWeight { generator } => json!({"not_a_weight_vector_at": generator}),
    };
    let module_dim = plus_module(case).map(|m| m.pairs.len()).unwrap_or(0);
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "case": case.to_string(),
            "index_set": case.index_set(),
            "dprime": case.dprime(),
            "module_dimension": module_dim,
            "e_weight": render(&ew),
            "f_weight": render(&fw),
            "kprime_f_weight": render(&kp),
        }))
        .unwrap()
    );
}

pub fn print_actions(case: DualPairCase, model: &str) {
    let model = match model {
        "plus" => Model::Plus,
        "full" => Model::Full,
        _ => Model::Minus,
    };
    let alg = CaseAlgebra::new(case, model);
    let mut entries = Vec::new();
    for (name, m) in alg.k_basis() {
        entries.push(json!({
            "generator": name,
            "action": format!("{:?}", alg.omega(&m)),
        }));
    }
    for ((a, b), m) in alg.p_plus_basis() {
        entries.push(json!({
            "generator": format!("X_{a}{b}"),
            "action": format!("{:?}", alg.omega(&m)),
        }));
    }
    for ((a, b), m) in alg.p_minus_basis() {
        entries.push(json!({
            "generator": format!("Y_{a}{b}"),
            "action": format!("{:?}", alg.omega(&m)),
        }));
    }
    for (name, op) in alg.kprime_all_ops() {
        entries.push(json!({
            "generator": name,
            "action": format!("{op:?}"),
        }));
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "case": case.to_string(),
            "model": format!("{model:?}"),
            "actions": entries,
        }))
        .unwrap()
    );
}

type AmpFn = Box<dyn Fn(&[f64]) -> num_complex::Complex64>;
type PhaseFn = Box<dyn Fn(&[f64]) -> f64>;

pub fn laplace_toy(dim: usize, t: f64) {
    let (amp, phase): (AmpFn, PhaseFn) = if dim == 1 {
        (
            Box::new(|x: &[f64]| num_complex::Complex64::new(1.0 + x[0] * x[0], 0.0)),
            Box::new(|x: &[f64]| x[0] * x[0]),
        )
    } else {
        (
            Box::new(|x: &[f64]| num_complex::Complex64::new(x[0] * x[0] * x[1] * x[1], 0.0)),
            Box::new(|x: &[f64]| x[0] * x[0] + x[1] * x[1]),
        )
    };
    let p = LaplaceProblem {
        dim,
        amplitude: &*amp,
        phase: &*phase,
        hessian: None,
    };
    let (q, err) = quadrature(&p, t, &Scheme::GaussHermite { nodes: 24 });
    let lead = laplace_leading(&p, t);
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "dim": dim,
            "t": t,
            "quadrature": q.re,
            "quadrature_error_estimate": err,
            "leading": lead.map(|l| l.re).map_err(|e| e.to_string()).ok(),
        }))
        .unwrap()
    );
}
