use fockform::cases::DualPairCase;
use fockform::fiber_numeric::numeric_fiber_integral;
use fockform::laplace::{fiber_leading_closed_form, fiber_leading_from_cocycle};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("A2211");
    let (case, t, samples) = match which {
        "A2211" => (DualPairCase::a(2, 2, 1, 1), 2.2, 150_000u64),
        "B31" => (DualPairCase::b(3, 1), 2.2, 120_000),
        "C31" => (DualPairCase::c(3, 1), 2.5, 150_000),
        _ => panic!("unknown"),
    };
    let q = numeric_fiber_integral(case, t, samples, 99).unwrap();
    let reder = fiber_leading_from_cocycle(case).unwrap().eval(t);
    let closed = fiber_leading_closed_form(case).eval(t);
    println!(
        "{case:?} t={t}: MC/rederived = {:.4}+{:.4}i, MC/closed = {:.4}+{:.4}i (stderr/|v| {:.1e})",
        (q.value / reder).re,
        (q.value / reder).im,
        (q.value / closed).re,
        (q.value / closed).im,
        q.stderr / q.value.norm()
    );
}
