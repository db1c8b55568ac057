use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{CoveringSection, FitSection, OneDSection, StudyConfig, SCHEMA_VERSION};
use super::kam::kam_threshold;
use super::svg::{line_plot, Axes, Series};
use crate::action::{separatrix_fit, ActionFunction, ActionProfile, SeparatrixFit, Side};
use crate::error::Result;
use crate::fourier::{check_genericity, FourierPotential, OneDSeries};
use crate::measure::{budget_shape, mc_measure, scaling_study, SampleBox};
use crate::portrait::{Portrait, RegionKind};
use crate::resonance::{enumerate_generators, transverse_form, zone_params, Covering, CoveringParams, Generator};
use crate::twist::{birkhoff_delta, certify_nondegeneracy, normalized_f, twist_field};

const FIT_RESIDUAL: f64 = 1e-6;
const MINIMUM_COEF: f64 = 1e-8;
const SLOPE_TOL: f64 = 0.1;
const PROFILE_MARGIN: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Green,
    Red,
    Skipped,
}

/// A reported number with the operation that produced it and its tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub op: String,
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub status: Status,
    pub messages: Vec<String>,
    pub quantities: BTreeMap<String, Quantity>,
    pub files: Vec<String>,
}

impl Section {
    fn new() -> Self {
        Self {
            status: Status::Green,
            messages: Vec::new(),
            quantities: BTreeMap::new(),
            files: Vec::new(),
        }
    }

    fn skipped(reason: &str) -> Self {
        Self {
            status: Status::Skipped,
            messages: vec![reason.to_string()],
            ..Self::new()
        }
    }

    fn put(&mut self, key: impl Into<String>, value: f64, op: &str, tol: Option<f64>) {
        self.quantities.insert(
            key.into(),
            Quantity {
                value,
                op: op.to_string(),
                tol,
            },
        );
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.status = Status::Red;
        self.messages.push(msg.into());
    }

    fn write(&mut self, root: &Path, rel: &str, contents: impl AsRef<[u8]>) -> Result<()> {
        let path = root.join(rel);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, contents)?;
        self.files.push(rel.to_string());
        Ok(())
    }
}

/// Top-level `summary.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema_version: u32,
    pub name: String,
    pub seed: u64,
    /// `true` when no section is red.
    pub passed: bool,
    pub sections: BTreeMap<String, Section>,
}

/// Which parts of a study to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Plan {
    pub genericity: bool,
    pub covering: bool,
    pub scaling: bool,
    pub portraits: bool,
    pub actions: bool,
    pub twist: bool,
    pub budget: bool,
    pub kam: bool,
}

impl Plan {
    pub fn all() -> Self {
        Self {
            genericity: true,
            covering: true,
            scaling: true,
            portraits: true,
            actions: true,
            twist: true,
            budget: true,
            kam: true,
        }
    }

    pub fn none() -> Self {
        Self {
            genericity: false,
            covering: false,
            scaling: false,
            portraits: false,
            actions: false,
            twist: false,
            budget: false,
            kam: false,
        }
    }

    fn oned(&self) -> bool {
        self.portraits || self.actions || self.twist
    }
}

#[derive(Clone, Debug)]
pub struct StudyReport {
    pub out: PathBuf,
    pub summary: Summary,
}

impl StudyReport {
    pub fn passed(&self) -> bool {
        self.summary.passed
    }
}

pub fn run_study(cfg: &StudyConfig, out: &Path) -> Result<StudyReport> {
    run_plan(cfg, out, Plan::all())
}

/// Runs the selected sections. Numerical failures turn a section red and the
/// remaining sections still run; only I/O and config problems are errors.
pub fn run_plan(cfg: &StudyConfig, out: &Path, plan: Plan) -> Result<StudyReport> {
    cfg.validate()?;
    let f = cfg.potential()?;
    fs::create_dir_all(out)?;
    let mut sections = BTreeMap::new();
    if plan.genericity {
        sections.insert("genericity".into(), genericity_section(cfg, &f, out)?);
    }
    if plan.covering {
        sections.insert("covering".into(), covering_section(cfg, &f, out)?);
    }
    if plan.scaling {
        sections.insert("scaling".into(), scaling_section(cfg, &f, out)?);
    }
    if plan.oned() {
        sections.insert("oned".into(), oned_section(cfg, &f, out, plan)?);
    }
    if plan.budget {
        sections.insert("budget".into(), budget_section(cfg, &f, out)?);
    }
    if plan.kam {
        sections.insert("kam".into(), kam_section(cfg, out)?);
    }
    let summary = Summary {
        schema_version: SCHEMA_VERSION,
        name: cfg.name.clone(),
        seed: cfg.seed,
        passed: sections.values().all(|s: &Section| s.status != Status::Red),
        sections,
    };
    fs::write(out.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(StudyReport {
        out: out.to_path_buf(),
        summary,
    })
}

fn genericity_section(cfg: &StudyConfig, f: &FourierPotential, out: &Path) -> Result<Section> {
    let Some(g) = &cfg.genericity else {
        return Ok(Section::skipped("no genericity block"));
    };
    let mut sec = Section::new();
    let report = match check_genericity(f, g.delta, g.beta, g.k_max) {
        Ok(r) => r,
        Err(e) => {
            sec.fail(e.to_string());
            return Ok(sec);
        }
    };
    sec.write(out, "genericity.json", serde_json::to_string_pretty(&report)? + "\n")?;
    sec.put("cutoff", report.cutoff, "cutoff_n", None);
    sec.put("modes_checked", report.checks.len() as f64, "check_genericity", None);
    let min_ratio = report.checks.iter().map(|c| c.decay_ratio).fold(f64::INFINITY, f64::min);
    sec.put("min_decay_ratio", min_ratio, "check_genericity", None);
    let min_beta = report
        .checks
        .iter()
        .filter_map(|c| c.morse_beta)
        .fold(f64::INFINITY, f64::min);
    if min_beta.is_finite() {
        sec.put("min_morse_beta", min_beta, "morse_analyze", None);
    }
    if let Some(fail) = report.first_failure() {
        sec.fail(format!("generator {} fails: {:?}", fail.k, fail.failure));
    }
    Ok(sec)
}

fn covering_params(c: &CoveringSection, n: usize, eps: f64) -> Result<CoveringParams> {
    let mut p = CoveringParams::new(n, eps, c.k0, c.k)?;
    if let Some(nu) = c.alpha_exponent {
        p = p.with_alpha_exponent(nu);
    }
    if let Some(m) = c.threshold {
        p = p.with_threshold(m);
    }
    Ok(p)
}

fn ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => ball_volume(n - 2) * std::f64::consts::TAU / n as f64,
    }
}

fn covering_section(cfg: &StudyConfig, f: &FourierPotential, out: &Path) -> Result<Section> {
    let (Some(c), Some(g)) = (&cfg.covering, &cfg.genericity) else {
        return Ok(Section::skipped("no covering block"));
    };
    let mut sec = Section::new();
    let n = f.dim();
    let ball = ball_volume(n);
    let mut rows = csv::Writer::from_writer(Vec::new());
    rows.write_record(["eps", "alpha", "zone", "measure", "std_error", "fraction", "samples", "hits", "seed"])?;
    for (i, &eps) in c.eps.iter().enumerate() {
        let cov = match covering_params(c, n, eps).and_then(Covering::new) {
            Ok(cov) => cov,
            Err(e) => {
                sec.fail(format!("ε = {eps:e}: {e}"));
                continue;
            }
        };
        let seed = cfg.seed.wrapping_add(i as u64);
        for tag in ["R0", "R1", "R2"] {
            let pred = |y: &[f64]| {
                y.iter().map(|v| v * v).sum::<f64>() < 1.0
                    && cov.classify(y).map(|l| l.zone.tag() == tag).unwrap_or(false)
            };
            match mc_measure(pred, &SampleBox::cube(n), c.zone_samples, seed) {
                Ok(m) => {
                    rows.write_record([
                        format!("{eps:e}"),
                        format!("{:.17e}", cov.alpha()),
                        tag.to_string(),
                        format!("{:.17e}", m.value),
                        format!("{:.17e}", m.std_error),
                        format!("{:.17e}", m.value / ball),
                        m.samples.to_string(),
                        m.hits.to_string(),
                        seed.to_string(),
                    ])?;
                    sec.put(format!("fraction_{tag}_eps{eps:e}"), m.value / ball, "mc_measure", Some(m.std_error / ball));
                }
                Err(e) => sec.fail(e.to_string()),
            }
        }
    }
    sec.write(out, "covering_fractions.csv", rows.into_inner().map_err(|e| e.into_error())?)?;

    let p = covering_params(c, n, c.eps[0]);
    let cov = p.and_then(|p| Covering::new(p.clone()).map(|cov| (p, cov)));
    match cov {
        Ok((p, cov)) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "k", "low_mode", "cutoff", "big_r", "r", "eps_k", "chi_k", "eps_bar", "beta_bar", "s_bar", "s_hat",
                "mu", "kappa", "eps_condition", "s_bar_condition", "radius_condition", "eps_beta_condition",
            ])?;
            for k in cov.low_generators() {
                match zone_params(k, &p, f, g.beta, g.delta) {
                    Ok(z) => {
                        let num = [
                            z.cutoff, z.big_r, z.r, z.eps_k, z.chi_k, z.eps_bar, z.beta_bar, z.s_bar, z.s_hat, z.mu,
                            z.kappa,
                        ]
                        .map(|v| format!("{v:.17e}"));
                        let mut rec = vec![format!("{k}"), z.low_mode.to_string()];
                        rec.extend(num);
                        rec.extend(
                            [
                                z.eps_condition(p.k),
                                z.s_bar_condition(),
                                z.radius_condition(),
                                z.eps_beta_condition(),
                            ]
                            .map(|b| b.to_string()),
                        );
                        w.write_record(rec)?;
                    }
                    Err(e) => sec.fail(format!("zone {k}: {e}")),
                }
            }
            sec.write(out, "zone_params.csv", w.into_inner().map_err(|e| e.into_error())?)?;
            sec.put("alpha", p.alpha(), "CoveringParams::alpha", None);
            sec.put("gamma", p.gamma(), "CoveringParams::gamma", None);
            sec.put("low_generators", cov.low_generators().len() as f64, "Covering::new", None);
        }
        Err(e) => sec.fail(e.to_string()),
    }
    Ok(sec)
}

fn scaling_section(cfg: &StudyConfig, f: &FourierPotential, out: &Path) -> Result<Section> {
    let Some(c) = &cfg.covering else {
        return Ok(Section::skipped("no covering block"));
    };
    let mut sec = Section::new();
    let params = match covering_params(c, f.dim(), c.eps[0]) {
        Ok(p) => p,
        Err(e) => {
            sec.fail(e.to_string());
            return Ok(sec);
        }
    };
    let c2 = c.c2.unwrap_or_else(|| params.c2());
    let study = match scaling_study(&params, &c.eps, c.samples, cfg.seed, c2) {
        Ok(s) => s,
        Err(e) => {
            sec.fail(e.to_string());
            return Ok(sec);
        }
    };
    let mut buf = Vec::new();
    study.write_csv(&mut buf)?;
    sec.write(out, "scaling.csv", buf)?;
    let measured: Vec<(f64, f64)> = study.points.iter().map(|p| (p.eps, p.estimate.value)).collect();
    let fitted: Vec<(f64, f64)> = study
        .points
        .iter()
        .map(|p| (p.eps, (study.intercept + study.slope * p.eps.ln()).exp()))
        .collect();
    let svg = line_plot(
        "doubly resonant zone",
        "eps",
        "meas(R2)",
        Axes { log_x: true, log_y: true },
        &[
            Series { label: "Monte Carlo", points: measured, markers: true },
            Series { label: "log-log fit", points: fitted, markers: false },
        ],
    );
    sec.write(out, "scaling.svg", svg)?;
    let slope_se = slope_error(&study);
    sec.put("slope", study.slope, "scaling_study", Some(slope_se));
    sec.put("fitted_c2", study.fitted_c2, "scaling_study", None);
    sec.put("configured_c2", study.configured_c2, "config", None);
    for p in &study.points {
        sec.put(format!("measure_eps{:e}", p.eps), p.estimate.value, "mc_measure", Some(p.estimate.std_error));
    }
    if (study.slope - 1.0).abs() > SLOPE_TOL {
        sec.fail(format!("slope {:.4} outside 1 ± {SLOPE_TOL}", study.slope));
    }
    if !study.bound_holds {
        sec.fail("measure exceeds c₂ ε K^γ");
    }
    Ok(sec)
}

/// Standard error of the slope propagated from the per-point relative errors.
fn slope_error(s: &crate::measure::ScalingStudy) -> f64 {
    let xs: Vec<f64> = s.points.iter().map(|p| p.eps.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    xs.iter()
        .zip(&s.points)
        .map(|(x, p)| ((x - mx) / sxx * p.estimate.std_error / p.estimate.value).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn gen_dir(k: &Generator) -> String {
    let parts: Vec<String> = k.as_slice().iter().map(|c| c.to_string()).collect();
    format!("oned/k_{}", parts.join("_"))
}

fn oned_section(cfg: &StudyConfig, f: &FourierPotential, out: &Path, plan: Plan) -> Result<Section> {
    let Some(o) = &cfg.oned else {
        return Ok(Section::skipped("no oned block"));
    };
    let mut sec = Section::new();
    let gens: Vec<Generator> = enumerate_generators(f.dim(), o.k_max)
        .into_iter()
        .filter(|k| f.project(k).map(|g| !g.is_zero()).unwrap_or(false))
        .take(o.max_generators)
        .collect();
    sec.put("generators", gens.len() as f64, "enumerate_generators", None);
    if gens.is_empty() {
        sec.fail("no generator carries a Fourier mode");
    }
    for k in &gens {
        let g = f.project(k)?.scaled(2.0 * o.eps / k.norm_sq());
        generator_analysis(&mut sec, out, k, &g, o, plan)?;
    }
    Ok(sec)
}

fn generator_analysis(
    sec: &mut Section,
    out: &Path,
    k: &Generator,
    g: &OneDSeries,
    o: &OneDSection,
    plan: Plan,
) -> Result<()> {
    let dir = gen_dir(k);
    let key = |name: &str| format!("{k}.{name}");
    let morse = match crate::fourier::morse_analyze(g) {
        Ok(m) => m,
        Err(e) => {
            sec.fail(format!("{k}: {e}"));
            return Ok(());
        }
    };
    let top = morse.value(0);
    let bottom = morse.values().into_iter().fold(f64::INFINITY, f64::min);
    let portrait = match Portrait::of_potential(g, top + 3.0 * (top - bottom)) {
        Ok(p) => p,
        Err(e) => {
            sec.fail(format!("{k}: {e}"));
            return Ok(());
        }
    };
    let eps_bar = morse.sup_abs;
    let root = eps_bar.sqrt();
    sec.put(key("eps_bar"), eps_bar, "OneDSeries::sup_abs", None);
    sec.put(key("critical_points"), morse.count() as f64, "morse_analyze", None);
    sec.put(key("morse_beta"), morse.beta, "morse_analyze", None);
    if plan.portraits {
        sec.write(out, &format!("{dir}/portrait.json"), portrait.to_json()? + "\n")?;
        let p_max = 1.1 * (portrait.e_flat - bottom).sqrt();
        sec.write(out, &format!("{dir}/portrait.svg"), portrait.to_svg(p_max))?;
    }
    if !(plan.actions || plan.twist) {
        return Ok(());
    }
    let tf = if k.dim() >= 2 { Some(transverse_form(k)?) } else { None };
    let mut fits: Vec<SeparatrixFit> = Vec::new();
    for region in &portrait.regions {
        let r = region.index;
        let af = match ActionFunction::new(&portrait, r) {
            Ok(a) => a,
            Err(e) => {
                sec.fail(format!("{k} region {r}: {e}"));
                continue;
            }
        };
        let profile = ActionProfile::uniform_grid(&af, o.profile_points, PROFILE_MARGIN)
            .and_then(|es| ActionProfile::build(af.clone(), &es));
        let profile = match profile {
            Ok(p) => p,
            Err(e) => {
                sec.fail(format!("{k} region {r} profile: {e}"));
                continue;
            }
        };
        let mut buf = Vec::new();
        profile.write_csv(&mut buf)?;
        sec.write(out, &format!("{dir}/profile_r{r}.csv"), buf)?;
        if !profile.is_monotone() {
            sec.fail(format!("{k} region {r}: action profile not monotone"));
        }

        // Outer regions end at E♭, which is not a critical energy.
        let sides = [(Side::Lower, true), (Side::Upper, region.is_inner())];
        for (side, present) in sides {
            if !present {
                continue;
            }
            let at_minimum = side == Side::Lower && region.kind == RegionKind::InnerOdd;
            let fc: &FitSection = if at_minimum { &o.minimum_fit } else { &o.fit };
            let tag = format!("r{r}_{}", if side == Side::Lower { "lower" } else { "upper" });
            match separatrix_fit(&af, side, fc.zmin, fc.zmax, fc.degree, fc.samples) {
                Ok(fit) => {
                    if at_minimum {
                        let tol = Some(MINIMUM_COEF * root);
                        sec.put(key(&format!("{tag}.max_abs_psi")), fit.max_abs_psi(), "separatrix_fit", tol);
                        sec.put(key(&format!("{tag}.phi0")), fit.phi0(), "separatrix_fit", tol);
                        if fit.max_abs_psi() > MINIMUM_COEF * root || fit.phi0().abs() > MINIMUM_COEF * root {
                            sec.fail(format!("{k} {tag}: log terms do not vanish at the minimum"));
                        }
                    } else {
                        sec.put(key(&format!("{tag}.psi0")), fit.psi0(), "separatrix_fit", Some(fit.residual));
                        sec.put(key(&format!("{tag}.residual")), fit.residual, "separatrix_fit", Some(FIT_RESIDUAL * root));
                        if fit.residual > FIT_RESIDUAL * root {
                            sec.fail(format!("{k} {tag}: residual {:e}", fit.residual));
                        }
                        if !fit.sign_condition_holds() {
                            sec.fail(format!("{k} {tag}: wrong sign of ψ(0)"));
                        }
                    }
                    fits.push(fit);
                }
                Err(e) => sec.fail(format!("{k} {tag}: {e}")),
            }
        }

        if plan.twist && region.is_inner() {
            twist_analysis(sec, out, k, &dir, &af, &profile, tf.as_ref().map(|t| &t.hessian), o)?;
        }
        if plan.twist && region.kind == RegionKind::InnerOdd {
            let theta = portrait.morse.theta(region.index);
            match birkhoff_delta(g, theta) {
                Ok(b) => {
                    sec.put(key(&format!("r{r}.birkhoff_delta")), b.delta, "birkhoff_delta", None);
                    sec.put(key(&format!("r{r}.birkhoff_c")), b.c, "birkhoff_delta", None);
                }
                Err(e) => sec.fail(format!("{k} region {r}: {e}")),
            }
        }
    }
    sec.write(out, &format!("{dir}/fits.json"), serde_json::to_string_pretty(&fits)? + "\n")?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn twist_analysis(
    sec: &mut Section,
    out: &Path,
    k: &Generator,
    dir: &str,
    af: &ActionFunction,
    profile: &ActionProfile,
    transverse: Option<&nalgebra::DMatrix<f64>>,
    o: &OneDSection,
) -> Result<()> {
    let r = af.region().index;
    let key = |name: &str| format!("{k}.r{r}.{name}");
    let t = &o.twist;
    let nt = match normalized_f(af, t.lo, t.hi, t.nodes) {
        Ok(nt) => nt,
        Err(e) => {
            sec.fail(format!("{k} region {r} twist: {e}"));
            return Ok(());
        }
    };
    let cert = certify_nondegeneracy(&nt, t.m_max);
    let doc = serde_json::json!({
        "normalized": &nt,
        "certificate": cert.as_ref().ok(),
        "error": cert.as_ref().err().map(|e| e.to_string()),
    });
    sec.write(out, &format!("{dir}/twist_r{r}.json"), serde_json::to_string_pretty(&doc)? + "\n")?;
    let pts: Vec<(f64, f64)> = nt.x.iter().copied().zip(nt.values.iter().copied()).collect();
    let svg = line_plot(
        &format!("normalized twist F, k = {k}, region {r}"),
        "x",
        "F(x)",
        Axes::default(),
        &[Series { label: "F", points: pts, markers: false }],
    );
    sec.write(out, &format!("{dir}/twist_r{r}.svg"), svg)?;
    match cert {
        Ok(c) => {
            sec.put(key("xi"), c.xi, "certify_nondegeneracy", c.error_estimates.iter().copied().reduce(f64::max));
            sec.put(key("m"), c.m as f64, "certify_nondegeneracy", None);
        }
        Err(e) => sec.fail(format!("{k} region {r}: {e}")),
    }
    if let Some(h) = transverse {
        match twist_field(profile, h, None) {
            Ok(field) => {
                let mut buf = Vec::new();
                field.write_csv(&mut buf)?;
                sec.write(out, &format!("{dir}/twist_field_r{r}.csv"), buf)?;
                let worst = field.points.iter().map(|p| p.det.abs()).fold(f64::INFINITY, f64::min);
                sec.put(key("min_abs_det"), worst, "twist_field", None);
            }
            Err(e) => sec.fail(format!("{k} region {r} twist field: {e}")),
        }
    }
    Ok(())
}

fn budget_section(cfg: &StudyConfig, f: &FourierPotential, out: &Path) -> Result<Section> {
    let Some(b) = &cfg.budget else {
        return Ok(Section::skipped("no budget block"));
    };
    let mut sec = Section::new();
    match budget_shape(b.eps, f.dim(), &b.ks, b.c, b.c2, b.a) {
        Ok(t) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["label", "K", "resonant", "exponential", "total"])?;
            for r in &t.rows {
                w.write_record([
                    r.label.clone(),
                    format!("{:.17e}", r.k),
                    format!("{:.17e}", r.resonant),
                    format!("{:.17e}", r.exponential),
                    format!("{:.17e}", r.total),
                ])?;
            }
            sec.write(out, "budget.csv", w.into_inner().map_err(|e| e.into_error())?)?;
            sec.put("gamma", t.gamma, "budget_shape", None);
            if let Some(k) = t.crossover {
                sec.put("crossover_k", k, "budget_shape", Some(1e-12 * k));
            }
            let grid: Vec<(f64, f64)> = t.rows.iter().filter(|r| r.label == "grid").map(|r| (r.k, r.total)).collect();
            let svg = line_plot(
                "measure budget",
                "K",
                "bound",
                Axes { log_x: true, log_y: true },
                &[Series { label: "resonant + exponential", points: grid, markers: false }],
            );
            sec.write(out, "budget.svg", svg)?;
        }
        Err(e) => sec.fail(e.to_string()),
    }
    Ok(sec)
}

fn kam_section(cfg: &StudyConfig, out: &Path) -> Result<Section> {
    let Some(inp) = &cfg.kam else {
        return Ok(Section::skipped("no kam block"));
    };
    let mut sec = Section::new();
    match kam_threshold(inp) {
        Ok(t) => {
            sec.write(
                out,
                "kam.json",
                serde_json::to_string_pretty(&serde_json::json!({ "input": inp, "threshold": &t }))? + "\n",
            )?;
            sec.messages.push(format!("values are relative to C_kam = {}", inp.c_kam));
            sec.put("max_perturbation", t.max_perturbation, "kam_threshold", None);
            sec.put("measure_coefficient", t.measure_coefficient, "kam_threshold", None);
            sec.put("d_star", t.d_star, "kam_threshold", None);
            sec.put("r_star", t.r_star, "kam_threshold", None);
            if let (Some(e), Some(l), Some(a)) = (t.eps, t.measure_loss, t.admissible) {
                sec.put("eps", e, "kam_threshold", None);
                sec.put("measure_loss", l, "kam_threshold", None);
                sec.put("admissible", f64::from(u8::from(a)), "kam_threshold", None);
            }
        }
        Err(e) => sec.fail(e.to_string()),
    }
    Ok(sec)
}
