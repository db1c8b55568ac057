//! Acceptance criteria, one line each. Criteria listed in `EXPECTED_RED` are
//! implemented as stated and fail for documented reasons; any other failure
//! makes the target exit nonzero.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use kam_atlas::action::{separatrix_fit, ActionFunction, Side};
use kam_atlas::fourier::OneDSeries;
use kam_atlas::logring::{expand_operator, haus_constant, leading_constant};
use kam_atlas::measure::scaling_study;
use kam_atlas::portrait::{Portrait, RegionKind};
use kam_atlas::resonance::{bezout_complete, enumerate_generators, CoveringParams};
use kam_atlas::twist::{default_cm, empirical_sublevel_fn, normalized_f, pd_det_bound, sublevel_bound};
use nalgebra::DMatrix;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that fail when implemented as stated; see the README.
const EXPECTED_RED: [(u32, &str); 2] = [
    (1, "target is the half-area normalization 2√2/π; the inner action of the stated normalization tends to 4√2/π"),
    (7, "with α = √ε K^(9n/2+2) the covering hypotheses fail (α ≫ 1) for every ε in the set"),
];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn pendulum() -> Portrait {
    Portrait::of_potential(&OneDSeries::cosine(1.0), f64::INFINITY).unwrap()
}

fn figure() -> OneDSeries {
    OneDSeries::from_trig(&[(1, 0.0, 1.0), (5, 0.5, 0.0)])
}

fn c1_separatrix_action() -> Outcome {
    let t = Instant::now();
    let f = ActionFunction::new(&pendulum(), 1).unwrap();
    let value = f.action(1.0 - 1e-10).unwrap();
    let elapsed = t.elapsed();
    let target = 0.900_316_316_1;
    let diff = (value - target).abs();
    outcome(
        diff <= 1e-6 && elapsed < Duration::from_secs(1),
        format!(
            "I(1 - 1e-10) = {value:.10}, target {target}, |diff| = {diff:.3e}, 4√2/π = {:.10}, {elapsed:.2?}",
            4.0 * SQRT_2 / PI
        ),
    )
}

fn c2_figure_regions() -> Outcome {
    let p = Portrait::of_potential(&figure(), 10.0).unwrap();
    let e: Vec<f64> = (0..=10).map(|i| p.morse.value(i)).collect();
    let mut bad = 0;
    for r in &p.regions {
        let want = match r.kind {
            RegionKind::InnerEven => {
                let j = r.index / 2;
                let jm = (0..j).rev().find(|&l| e[2 * l] > e[2 * j]);
                let jp = (j + 1..=5).find(|&l| e[2 * l] > e[2 * j]);
                match (jm, jp) {
                    (Some(a), Some(b)) => Some(e[2 * a].min(e[2 * b])),
                    _ => None,
                }
            }
            RegionKind::InnerOdd => Some(e[r.index - 1].min(e[r.index + 1])),
            _ => None,
        };
        if want.is_some_and(|w| w != r.e_hi) || r.e_lo >= r.e_hi {
            bad += 1;
        }
    }
    let crit = p.morse.count();
    let regions = p.regions.len();
    outcome(
        crit == 10 && regions == 11 && bad == 0,
        format!("{crit} critical points, {regions} regions, {bad} inconsistent energy intervals"),
    )
}

fn c3_jensen() -> Outcome {
    let f = ActionFunction::new(&pendulum(), 0).unwrap();
    let mut worst = f64::INFINITY;
    let mut violations = 0;
    for i in 0..100 {
        let t = i as f64 / 99.0;
        let e = 1.0 + 10f64.powf(-6.0 + t * (999f64.log10() + 6.0));
        match f.twist(e) {
            Ok(v) => {
                worst = worst.min(v);
                if v < 2.0 - 1e-6 {
                    violations += 1;
                }
            }
            Err(_) => violations += 1,
        }
    }
    outcome(violations == 0, format!("min ∂²E/∂I² = {worst:.9} over E - 1 in [1e-6, 999], {violations} violations"))
}

fn c4_cosine_concavity() -> Outcome {
    let f = ActionFunction::new(&pendulum(), 1).unwrap();
    let mut worst = f64::NEG_INFINITY;
    let mut violations = 0;
    for i in 0..100 {
        let e = -1.0 + 2.0 * (i as f64 + 0.5) / 100.0;
        match f.twist(e) {
            Ok(v) => {
                worst = worst.max(v);
                if v > -1.0 / 27.0 + 1e-6 {
                    violations += 1;
                }
            }
            Err(_) => violations += 1,
        }
    }
    outcome(violations == 0, format!("max ∂²E/∂I² = {worst:.6} (bound -1/27), {violations} violations"))
}

fn c5_separatrix_fit() -> Outcome {
    let t = Instant::now();
    let f = ActionFunction::new(&pendulum(), 1).unwrap();
    let upper = separatrix_fit(&f, Side::Upper, 1e-3, 0.1, 3, 48);
    let lower = separatrix_fit(&f, Side::Lower, 1e-9, 1e-7, 1, 48);
    let elapsed = t.elapsed();
    match (upper, lower) {
        (Ok(u), Ok(l)) => {
            let pass = u.residual <= 1e-6
                && u.psi0() > 0.0
                && l.max_abs_psi() <= 1e-8
                && l.phi0().abs() <= 1e-8
                && elapsed < Duration::from_secs(30);
            outcome(
                pass,
                format!(
                    "upper: residual {:.2e}, ψ(0) = {:.6}; minimum side (J = 1, z in [1e-9, 1e-7]): max|ψ| = {:.2e}, φ(0) = {:.2e}; {elapsed:.2?}",
                    u.residual,
                    u.psi0(),
                    l.max_abs_psi(),
                    l.phi0()
                ),
            )
        }
        (u, l) => outcome(false, format!("fit failed: {:?} / {:?}", u.err(), l.err())),
    }
}

fn c6_rescaling() -> Outcome {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for (name, g) in [("pendulum", OneDSeries::cosine(1.0)), ("figure", figure())] {
        let base = Portrait::of_potential(&g, f64::INFINITY).unwrap();
        for lambda in [0.25, 4.0] {
            let scaled = Portrait::of_potential(&g.scaled(lambda), f64::INFINITY).unwrap();
            for r in base.regions.iter().filter(|r| r.is_inner()) {
                let a = ActionFunction::new(&base, r.index).and_then(|f| normalized_f(&f, 0.02, 0.98, 16));
                let b = ActionFunction::new(&scaled, r.index).and_then(|f| normalized_f(&f, 0.02, 0.98, 16));
                match (a, b) {
                    (Ok(a), Ok(b)) => {
                        let sup = a.values.iter().zip(&b.values).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
                        worst = worst.max(sup);
                    }
                    _ => failures.push(format!("{name} region {} λ = {lambda}", r.index)),
                }
            }
        }
    }
    outcome(
        worst <= 1e-8 && failures.is_empty(),
        format!("sup |F_λ - F| = {worst:.2e} over all inner regions; failures: {failures:?}"),
    )
}

fn c7_covering_scaling() -> Outcome {
    let t = Instant::now();
    let params = CoveringParams::new(2, 1e-6, 4, 24).unwrap();
    let eps = [1e-5, 1e-6, 1e-7];
    let r = scaling_study(&params, &eps, 10_000_000, 7, params.c2());
    let elapsed = t.elapsed();
    match r {
        Ok(s) => outcome(
            (s.slope - 1.0).abs() <= 0.1 && s.bound_holds && elapsed < Duration::from_secs(120),
            format!("slope {:.4}, fitted c₂ {:.3e}, bound holds: {}, {elapsed:.2?}", s.slope, s.fitted_c2, s.bound_holds),
        ),
        Err(e) => outcome(false, format!("ν = {}: {e}", CoveringParams::default_nu(2))),
    }
}

/// The same study with `α = √ε`, reported as a note next to criterion 7.
fn c7_note() -> String {
    let t = Instant::now();
    let params = CoveringParams::new(2, 1e-6, 4, 24).unwrap().with_alpha_exponent(0.0);
    match scaling_study(&params, &[1e-5, 1e-6, 1e-7], 10_000_000, 7, params.c2()) {
        Ok(s) => format!(
            "with ν = 0: slope {:.4}, fitted c₂ {:.3e}, bound holds: {}, {:.2?}",
            s.slope,
            s.fitted_c2,
            s.bound_holds,
            t.elapsed()
        ),
        Err(e) => format!("with ν = 0: {e}"),
    }
}

fn c8_operator() -> Outcome {
    let op = expand_operator(2).unwrap().to_string();
    let want = "z^6*D^7 + 18*z^5*D^6 + 98*z^4*D^5 + 184*z^3*D^4 + 100*z^2*D^3 + 8*z*D^2";
    let int = |v: i64| BigRational::from_integer(v.into());
    let c13 = leading_constant(1, 3).unwrap().constant == int(6);
    let c26 = leading_constant(2, 6).unwrap().constant == int(92160);
    let mut table_bad = 0;
    for m in 0..=3 {
        for k in 0..=9 {
            if leading_constant(m, k).unwrap().constant != BigRational::from_integer(haus_constant(m, k)) {
                table_bad += 1;
            }
        }
    }
    outcome(
        op == want && c13 && c26 && table_bad == 0,
        format!("expansion exact: {}, (1,3) = 6: {c13}, (2,6) = 92160: {c26}, table mismatches: {table_bad}", op == want),
    )
}

fn c9_sublevel() -> Outcome {
    let mut worst = 0.0f64;
    let mut bound_ok = true;
    for m in 1..=3u32 {
        let fact: f64 = (1..=m).map(f64::from).product();
        for eta in [1e-2, 1e-4] {
            let emp = empirical_sublevel_fn(|x| x.powi(m as i32), -1.0, 1.0, 2_000_000, eta);
            worst = worst.max((emp - 2.0 * eta.powf(1.0 / m as f64)).abs());
            // x^m is (m!, m)-non-degenerate with C^{m+1} norm m!
            let b = sublevel_bound(fact, m, fact, 2.0, eta, default_cm(m));
            bound_ok &= emp <= b;
        }
    }
    outcome(worst <= 1e-3 && bound_ok, format!("max |meas - 2η^(1/m)| = {worst:.2e}, bound respected: {bound_ok}"))
}

fn random_spd(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
    &a * a.transpose() + DMatrix::identity(d, d) * 0.1
}

fn c10_pd_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let mut violations = 0;
    let mut count = 0;
    for (d, pairs) in [(2usize, 334), (3, 333), (5, 333)] {
        for _ in 0..pairs {
            let p = random_spd(&mut rng, d);
            let q0 = random_spd(&mut rng, d);
            let lam0 = p.clone().try_inverse().unwrap().singular_values().max() * q0.singular_values().max();
            let q = q0 * (rng.gen_range(0.0..1.0) / (2.0 * d as f64 * lam0));
            count += 1;
            let direct = (&p + &q).determinant() >= p.determinant() / 2.0;
            match pd_det_bound(&p, &q) {
                Ok(c) if c.holds && direct && c.lambda <= 1.0 / (2.0 * d as f64) + 1e-12 => {}
                _ => violations += 1,
            }
        }
    }
    outcome(violations == 0, format!("{count} pairs, {violations} violations"))
}

fn c11_bezout() -> Outcome {
    let mut count = 0;
    let mut bad = 0;
    for n in 2..=4 {
        for k in enumerate_generators(n, 12) {
            count += 1;
            let ok = bezout_complete(&k).is_ok_and(|f| {
                f.det() == 1
                    && f.k() == k.as_slice()
                    && f.hat_norm() <= k.linf()
                    && f.inverse_norm() as f64 <= f.inverse_bound() * (1.0 + 1e-12)
                    && f.verify()
            });
            if !ok {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("{count} generators, {bad} failures"))
}

fn read_tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn c12_end_to_end() -> Outcome {
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/benchmark.json");
    let base = std::env::temp_dir().join(format!("kam-atlas-acceptance-{}", std::process::id()));
    let t = Instant::now();
    let mut codes = Vec::new();
    for run in ["a", "b"] {
        let status = Command::new(env!("CARGO_BIN_EXE_kam-atlas"))
            .args(["study", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(base.join(run))
            .output()
            .expect("binary runs");
        codes.push(status.status.code());
    }
    let elapsed = t.elapsed();
    let (a, b) = (read_tree(&base.join("a")), read_tree(&base.join("b")));
    let identical = !a.is_empty() && a == b;
    let _ = std::fs::remove_dir_all(&base);
    outcome(
        codes.iter().all(|c| *c == Some(0)) && identical && elapsed < Duration::from_secs(300),
        format!("exit codes {codes:?}, {} files, bit-identical: {identical}, {elapsed:.2?} for two runs", a.len()),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "pendulum separatrix action", c1_separatrix_action),
        (2, "figure potential regions", c2_figure_regions),
        (3, "outer Jensen bound", c3_jensen),
        (4, "cosine concavity", c4_cosine_concavity),
        (5, "separatrix expansion fit", c5_separatrix_fit),
        (6, "rescaling invariance", c6_rescaling),
        (7, "covering scaling", c7_covering_scaling),
        (8, "operator expansion", c8_operator),
        (9, "sublevel law", c9_sublevel),
        (10, "PD determinant bound", c10_pd_bound),
        (11, "Bezout frames", c11_bezout),
        (12, "end-to-end study", c12_end_to_end),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let o = run();
        let known = EXPECTED_RED.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let verdict = match (o.pass, known) {
            (true, _) => "PASS",
            (false, Some(_)) => "FAIL (known)",
            (false, None) => "FAIL",
        };
        println!("criterion {id:>2} [{name}]: {verdict}: {}", o.detail);
        if let (false, Some(why)) = (o.pass, known) {
            println!("    analysis: {why}");
        }
        if id == 7 {
            println!("    note: {}", c7_note());
        }
        if !o.pass && known.is_none() {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
