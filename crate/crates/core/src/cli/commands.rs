//! Bodies of the subcommands. Each returns an [`Outcome`] holding every
//! rendering it supports; `run` picks one.

use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::RunConfig;
use super::output::{collect_adjudications, csv_row, relations_csv, standing_adjudications, Adjudication};
use crate::catalog::{build_rep, RepClass, RepKind, Representation};
use crate::error::{Error, Result};
use crate::lab::{
    boost_action_1d, continuity_residual, dirac_spectrum, evolve, fv_split, kg_residual, time_derivative, write_binary, write_csv,
    EvolveOptions, GridState, Space, Theory,
};
use crate::position::{build_position, newton_wigner, Ansatz};
use crate::scalar::{parse_scalar, GaussianRational, OnShellScalar};
use crate::spin::Spin;
use crate::verify::{
    check_casimirs, check_discrete, check_jm, check_lie_algebra, check_position, check_position_core, commutant_dimension_with,
    d_space, jm_scan, no_time_operator, nw_witnesses, twist_check, Casimirs, CheckReport, Commutant, DSpace, ScanTable,
    TimeOperatorVerdict, TwistVerdict,
};

pub struct Outcome {
    pub ok: bool,
    pub result: Value,
    pub markdown: String,
    pub csv: Option<String>,
    pub binary: Option<Vec<u8>>,
    pub adjudications: Vec<Adjudication>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn spins(cfg: &RunConfig, default: &[Spin]) -> Result<Vec<Spin>> {
    match &cfg.spin {
        None => Ok(default.to_vec()),
        Some(text) => {
            let s = Spin::parse(text)?;
            if !s.exact_supported() {
                return Err(Error::Config(format!("exact suites cover s = 0 and s = 1/2 only, got s = {s}")));
            }
            Ok(vec![s])
        }
    }
}

/// The four-block construction is only catalogued at `s = 0`.
fn available(kind: RepKind, spin: Spin) -> bool {
    kind.class() != RepClass::QuadSym || spin == Spin::ZERO
}

/// `(spin, kind)` pairs selected by `--rep`, every catalogued one for `all` or nothing.
fn selection(cfg: &RunConfig, spins: &[Spin]) -> Result<Vec<(Spin, RepKind)>> {
    let all = cfg.rep.is_empty() || cfg.rep.iter().any(|r| r.eq_ignore_ascii_case("all"));
    let kinds: Vec<RepKind> = if all { RepKind::all() } else { cfg.rep.iter().map(|r| RepKind::parse(r)).collect::<Result<_>>()? };
    let mut out = Vec::new();
    for &s in spins {
        for &k in &kinds {
            if available(k, s) {
                out.push((s, k));
            } else if !all && cfg.spin.is_some() {
                return Err(Error::Config(format!("{} is only catalogued at s = 0", k.label())));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Config("no representation matches the selection".into()));
    }
    Ok(out)
}

fn build_all(sel: &[(Spin, RepKind)]) -> Result<Vec<Representation>> {
    sel.par_iter().map(|&(s, k)| build_rep(k, s)).collect()
}

// ---------------------------------------------------------------- catalog

#[derive(Serialize)]
struct CatalogEntry {
    rep: String,
    kind: String,
    spin: String,
    class: RepClass,
    dim: usize,
    blocks: usize,
    expected: crate::catalog::Expected,
    generators: Vec<(String, String)>,
    t: String,
    s: String,
}

fn catalog_entry(rep: &Representation) -> CatalogEntry {
    CatalogEntry {
        rep: rep.label(),
        kind: rep.kind.label().into(),
        spin: rep.spin.to_string(),
        class: rep.class(),
        dim: rep.dim(),
        blocks: rep.blocks,
        expected: rep.expected.clone(),
        generators: rep.generators.named().into_iter().map(|(n, op)| (n, op.render())).collect(),
        t: rep.t.render(),
        s: rep.s.render(),
    }
}

pub fn catalog(cfg: &RunConfig) -> Result<Outcome> {
    let sel = selection(cfg, &spins(cfg, &[Spin::ZERO, Spin::HALF])?)?;
    let reps = build_all(&sel)?;
    let entries: Vec<CatalogEntry> = reps.iter().map(catalog_entry).collect();
    let mut md = String::from("## Catalog\n\n| rep | s | dim | T | S | T^2 | S^2 | omega | spectrum |\n|---|---|---|---|---|---|---|---|---|\n");
    let mut csv = String::from("rep,spin,class,dim,t_antilinear,s_antilinear,t_sq,s_sq,omega,spectrum\n");
    let ch = |anti: bool| if anti { "anti-unitary" } else { "unitary" };
    for e in &entries {
        let x = &e.expected;
        md.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            e.kind,
            e.spin,
            e.dim,
            ch(x.t_antilinear),
            ch(x.s_antilinear),
            x.t_sq,
            x.s_sq,
            x.omega,
            x.spectrum.label()
        ));
        csv.push_str(&csv_row(&[
            &e.kind,
            &e.spin,
            &format!("{:?}", e.class),
            &e.dim.to_string(),
            &x.t_antilinear.to_string(),
            &x.s_antilinear.to_string(),
            &x.t_sq.to_string(),
            &x.s_sq.to_string(),
            &x.omega.to_string(),
            x.spectrum.label(),
        ]));
    }
    Ok(Outcome {
        ok: true,
        result: json!({ "representations": entries }),
        markdown: md,
        csv: Some(csv),
        binary: None,
        adjudications: standing_adjudications(),
    })
}

// ---------------------------------------------------------------- verify

const SUITES: [&str; 4] = ["lie", "casimir", "discrete", "position"];

fn suites(cfg: &RunConfig) -> Result<Vec<&'static str>> {
    match cfg.suite.as_deref() {
        None | Some("all") => Ok(SUITES.to_vec()),
        Some(s) => SUITES
            .iter()
            .find(|x| **x == s)
            .map(|x| vec![*x])
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`; expected lie, casimir, discrete, position or all"))),
    }
}

fn exact_constant(text: &str, what: &str) -> Result<GaussianRational> {
    parse_scalar(text)?.as_constant().ok_or_else(|| Error::Config(format!("--{what} must be a constant, got `{text}`")))
}

fn real_constant(text: &str, what: &str) -> Result<BigRational> {
    let c = exact_constant(text, what)?;
    if !c.is_real() {
        return Err(Error::Config(format!("--{what} must be real, got `{text}`")));
    }
    Ok(c.re)
}

/// Ansatz named on the command line, with its coefficients.
pub fn parse_ansatz(cfg: &RunConfig) -> Result<Option<Ansatz>> {
    let Some(name) = cfg.ansatz.as_deref() else { return Ok(None) };
    let a_scalar = || -> Result<OnShellScalar> { cfg.a.as_deref().map(parse_scalar).unwrap_or_else(|| Ok(OnShellScalar::zero())) };
    let sin_b = || -> Result<BigRational> {
        real_constant(cfg.sin_b.as_deref().ok_or_else(|| Error::Config(format!("`{name}` needs --sin-b")))?, "sin-b")
    };
    let cos_b = || -> Result<BigRational> {
        real_constant(cfg.cos_b.as_deref().ok_or_else(|| Error::Config(format!("`{name}` needs --cos-b")))?, "cos-b")
    };
    let takes = |a: bool, s: bool, c: bool| -> Result<()> {
        for (given, allowed, flag) in [(cfg.a.is_some(), a, "a"), (cfg.sin_b.is_some(), s, "sin-b"), (cfg.cos_b.is_some(), c, "cos-b")] {
            if given && !allowed {
                return Err(Error::Config(format!("`{name}` does not take --{flag}")));
            }
        }
        Ok(())
    };
    let ansatz = match name {
        "newton-wigner" | "nw" => {
            takes(false, false, false)?;
            Ansatz::NewtonWigner
        }
        "shifted" => {
            takes(true, false, false)?;
            Ansatz::Shifted { f: a_scalar()? }
        }
        "spin-shifted" => {
            takes(true, false, false)?;
            let a = cfg.a.as_deref().map(|t| exact_constant(t, "a")).transpose()?.unwrap_or_else(GaussianRational::zero);
            Ansatz::SpinShifted { a }
        }
        "cross-term" => {
            takes(false, false, false)?;
            Ansatz::CrossTerm
        }
        "two-block" => {
            takes(true, true, true)?;
            Ansatz::TwoBlock { a: a_scalar()?, sin_b: sin_b()?, cos_b: cos_b()? }
        }
        "two-block-cos" => {
            takes(true, false, true)?;
            Ansatz::TwoBlockCos { a: a_scalar()?, cos_b: cos_b()? }
        }
        "two-block-sin" => {
            takes(true, true, false)?;
            Ansatz::TwoBlockSin { a: a_scalar()?, sin_b: sin_b()? }
        }
        "off-diagonal" => {
            takes(false, false, false)?;
            Ansatz::OffDiagonal
        }
        "off-diagonal-doubled" => {
            takes(false, false, false)?;
            Ansatz::OffDiagonalDoubled
        }
        "dirac" => {
            takes(false, false, false)?;
            Ansatz::Dirac
        }
        other => {
            return Err(Error::Config(format!(
                "unknown ansatz `{other}`; expected newton-wigner, shifted, spin-shifted, cross-term, two-block, \
                 two-block-cos, two-block-sin, off-diagonal, off-diagonal-doubled or dirac"
            )))
        }
    };
    Ok(Some(ansatz))
}

#[derive(Serialize, Default)]
struct RepVerdicts {
    rep: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    lie: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    casimir_values: Option<Casimirs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    casimir: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrete: Option<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    position: Vec<CheckReport>,
}

impl RepVerdicts {
    fn reports(&self) -> Vec<&CheckReport> {
        let mut v: Vec<&CheckReport> = [&self.lie, &self.casimir, &self.discrete].into_iter().flatten().collect();
        v.extend(&self.position);
        v
    }
}

fn verify_rep(rep: &Representation, suites: &[&str], ansatz: Option<&Ansatz>) -> Result<RepVerdicts> {
    let mut v = RepVerdicts { rep: rep.label(), ..Default::default() };
    for suite in suites {
        match *suite {
            "lie" => v.lie = Some(check_lie_algebra(rep)?),
            "casimir" => {
                let (values, report) = check_casimirs(rep)?;
                v.casimir_values = Some(values);
                v.casimir = Some(report);
            }
            "discrete" => v.discrete = Some(check_discrete(rep)?),
            "position" => match ansatz {
                Some(a) => {
                    let q = build_position(rep, a)?;
                    let mut report = check_position(rep, &q)?;
                    report.suite = format!("position {a}");
                    v.position.push(report);
                    let mut jm = check_jm(&rep.generators, &q, &rep.label())?.report;
                    jm.suite = format!("jm {a}");
                    v.position.push(jm);
                }
                None => {
                    let mut report = check_position(rep, &newton_wigner(rep))?;
                    report.suite = "position newton-wigner".into();
                    v.position.push(report);
                    if rep.spin == Spin::ZERO && matches!(rep.class(), RepClass::Up | RepClass::Down) {
                        v.position.extend(nw_witnesses(rep)?.into_iter().map(|(_, r)| r));
                    }
                }
            },
            _ => unreachable!("suite names are validated"),
        }
    }
    Ok(v)
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let sel = selection(cfg, &spins(cfg, &[Spin::ZERO, Spin::HALF])?)?;
    let suites = suites(cfg)?;
    let ansatz = parse_ansatz(cfg)?;
    let reps = build_all(&sel)?;
    let verdicts: Vec<RepVerdicts> = reps.par_iter().map(|r| verify_rep(r, &suites, ansatz.as_ref())).collect::<Result<_>>()?;
    let reports: Vec<&CheckReport> = verdicts.iter().flat_map(RepVerdicts::reports).collect();
    let ok = reports.iter().all(|r| r.as_expected());
    let mut md = String::from("## Verification\n\n");
    for v in &verdicts {
        if let Some(c) = &v.casimir_values {
            md.push_str(&format!(
                "{}: eta = `{}`, varpi = `{}`\n\n",
                c.rep,
                c.eta.as_deref().unwrap_or("not constant"),
                c.varpi.as_deref().unwrap_or("not constant")
            ));
        }
        for r in v.reports() {
            md.push_str(&r.to_markdown());
            md.push('\n');
        }
    }
    let adjudications = collect_adjudications(reports.iter().copied());
    Ok(Outcome {
        ok,
        result: json!({ "suites": suites, "representations": verdicts }),
        markdown: md,
        csv: Some(relations_csv(&reports)),
        binary: None,
        adjudications,
    })
}

// ---------------------------------------------------------------- position-scan

#[derive(Serialize)]
struct ScanResult {
    table: ScanTable,
    passing_symmetric: Vec<String>,
    unique: bool,
    /// The cross-term candidate on the upper shell; its components do not commute.
    cross_term: CheckReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    twist: Option<TwistVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    d_space: Vec<DSpace>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    witnesses: Vec<CheckReport>,
}

impl ScanResult {
    fn reports(&self) -> Vec<&CheckReport> {
        let mut v = vec![&self.cross_term];
        v.extend(self.twist.iter().map(|t| &t.report));
        v.extend(&self.witnesses);
        v
    }

    fn markdown(&self) -> String {
        let mut md = self.table.to_markdown();
        md.push_str(&format!(
            "\nSymmetric-spectrum members admitting a position: {}\n\n",
            if self.passing_symmetric.is_empty() { "none".to_string() } else { self.passing_symmetric.join(", ") }
        ));
        md.push_str(&self.cross_term.to_markdown());
        if let Some(t) = &self.twist {
            md.push_str(&format!(
                "\nTwist on {}: generators fixed = {}, off-diagonal maps to Dirac = {}\n\n",
                t.rep, t.generators_fixed, t.maps_to_dirac
            ));
        }
        if !self.d_space.is_empty() {
            md.push_str("\n| rep | case | dim D | verdict |\n|---|---|---|---|\n");
            for d in &self.d_space {
                md.push_str(&format!("| {} | {} | {} | {} |\n", d.rep, d.case, d.dimension, d.verdict));
            }
            md.push('\n');
        }
        for w in &self.witnesses {
            md.push_str(&w.to_markdown());
            md.push('\n');
        }
        md
    }
}

fn position_scan_at(spin: Spin) -> Result<ScanResult> {
    let table = jm_scan(spin)?;
    let passing_symmetric: Vec<String> = table.passing_symmetric().into_iter().map(String::from).collect();
    let up = build_rep(RepKind::Up, spin)?;
    let mut cross_term = check_position_core(&up.generators, &build_position(&up, &Ansatz::CrossTerm)?, &up.label())?;
    cross_term.suite = "position cross-term".into();
    for r in cross_term.relations.iter_mut() {
        if spin != Spin::ZERO && r.id.starts_with("commute") {
            r.expected_violation = true;
        }
    }
    let twist = if spin == Spin::HALF { Some(twist_check(&build_rep(RepKind::U3, spin)?)?) } else { None };
    let (d_space, witnesses) = if spin == Spin::ZERO {
        let d: Vec<DSpace> = RepKind::SYMMETRIC.par_iter().map(|&k| d_space(&build_rep(k, spin)?)).collect::<Result<_>>()?;
        let mut w = Vec::new();
        for k in [RepKind::Up, RepKind::Down] {
            w.extend(nw_witnesses(&build_rep(k, spin)?)?.into_iter().map(|(_, r)| r));
        }
        (d, w)
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(ScanResult { unique: passing_symmetric.len() == 1, table, passing_symmetric, cross_term, twist, d_space, witnesses })
}

fn scan_ok(s: &ScanResult) -> bool {
    s.reports().iter().all(|r| r.as_expected()) && s.twist.as_ref().map_or(true, |t| t.generators_fixed)
}

pub fn position_scan(cfg: &RunConfig) -> Result<Outcome> {
    let spin = spins(cfg, &[Spin::HALF])?[0];
    let scan = position_scan_at(spin)?;
    let ok = scan_ok(&scan);
    let adjudications = collect_adjudications(scan.reports());
    Ok(Outcome { ok, result: to_value(&scan), markdown: scan.markdown(), csv: None, binary: None, adjudications })
}

// ---------------------------------------------------------------- commutant

#[derive(Serialize)]
struct CommutantEntry {
    commutant: Commutant,
    #[serde(skip_serializing_if = "Option::is_none")]
    time_operator: Option<TimeOperatorVerdict>,
}

pub fn commutant(cfg: &RunConfig) -> Result<Outcome> {
    let sel = selection(cfg, &spins(cfg, &[Spin::ZERO, Spin::HALF])?)?;
    let reps = build_all(&sel)?;
    let entries: Vec<CommutantEntry> = reps
        .par_iter()
        .map(|r| {
            Ok(CommutantEntry {
                commutant: commutant_dimension_with(r, !cfg.without_t, !cfg.without_s)?,
                time_operator: if cfg.time_operator { Some(no_time_operator(r)?) } else { None },
            })
        })
        .collect::<Result<_>>()?;
    let ok = entries.iter().all(|e| e.commutant.certified);
    let mut md = String::from("## Commutant\n\n| rep | uses T | uses S | dimension | irreducible | basis |\n|---|---|---|---|---|---|\n");
    let mut csv = String::from("rep,uses_t,uses_s,dimension,irreducible,certified,no_time_operator\n");
    for e in &entries {
        let c = &e.commutant;
        md.push_str(&format!(
            "| {} | {} | {} | {} | {} | `{}` |\n",
            c.rep,
            c.uses_t,
            c.uses_s,
            c.dimension,
            c.irreducible,
            c.basis.join("; ")
        ));
        let time = e.time_operator.as_ref().map(|t| t.contradiction.to_string()).unwrap_or_default();
        csv.push_str(&csv_row(&[
            &c.rep,
            &c.uses_t.to_string(),
            &c.uses_s.to_string(),
            &c.dimension.to_string(),
            &c.irreducible.to_string(),
            &c.certified.to_string(),
            &time,
        ]));
    }
    for t in entries.iter().filter_map(|e| e.time_operator.as_ref()) {
        md.push_str(&format!("\n{}: [q0, P0] = `{}`, no time operator = {}\n", t.rep, t.commutator_shape, t.contradiction));
    }
    Ok(Outcome {
        ok,
        result: json!({ "commutants": entries }),
        markdown: md,
        csv: Some(csv),
        binary: None,
        adjudications: standing_adjudications(),
    })
}

// ---------------------------------------------------------------- evolve

/// Largest norm drift accepted before `evolve` reports failure.
pub const NORM_DRIFT_LIMIT: f64 = 1e-10;

pub struct EvolveParams {
    pub theory: Theory,
    pub n: usize,
    pub dims: usize,
    pub half_width: f64,
    pub mass: f64,
    pub dt: f64,
    pub steps: usize,
    pub record_every: usize,
    pub width: f64,
    pub center: [f64; 3],
    pub k0: [f64; 3],
}

fn triple(v: &[f64], default: [f64; 3]) -> [f64; 3] {
    if v.is_empty() {
        default
    } else {
        [v[0], v[1], v[2]]
    }
}

impl EvolveParams {
    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        let p = EvolveParams {
            theory: cfg.theory.as_deref().unwrap_or("T1").parse()?,
            n: cfg.n.unwrap_or(64),
            dims: cfg.dims.unwrap_or(1),
            half_width: cfg.half_width.unwrap_or(20.0),
            mass: cfg.mass.unwrap_or(1.0),
            dt: cfg.dt.unwrap_or(1e-3),
            steps: cfg.steps.unwrap_or(1000),
            record_every: cfg.record_every.unwrap_or(10),
            width: cfg.width.unwrap_or(1.5),
            center: triple(&cfg.center, [0.0; 3]),
            k0: triple(&cfg.k0, [0.5, 0.0, 0.0]),
        };
        if !(p.mass > 0.0 && p.dt > 0.0 && p.width > 0.0 && p.half_width > 0.0) {
            return Err(Error::Config("--mass, --dt, --width and --half-width must be positive".into()));
        }
        if p.record_every == 0 || p.steps == 0 {
            return Err(Error::Config("--steps and --record-every must be at least 1".into()));
        }
        Ok(p)
    }

    fn initial(&self) -> Result<GridState> {
        let weights = vec![Complex64::new(1.0, 0.0); self.theory.components()];
        GridState::gaussian(self.n, self.dims, self.half_width, self.mass, self.center, self.width, self.k0, &weights)
    }
}

#[derive(Serialize)]
struct EvolveSummary {
    theory: Theory,
    n: usize,
    dims: usize,
    half_width: f64,
    mass: f64,
    dt: f64,
    steps: usize,
    record_every: usize,
    norm_drift: f64,
    component_drift: f64,
    norm_drift_limit: f64,
    /// Residual of the Klein-Gordon equation over the first two steps.
    kg_residual: f64,
    continuity: crate::lab::ContinuityResidual,
    records: Vec<crate::lab::Observables>,
}

pub fn run_evolve(p: &EvolveParams, keep_snapshots: bool) -> Result<(crate::lab::Trajectory, Value, bool)> {
    let psi0 = p.initial()?;
    let traj = evolve(p.theory, &psi0, p.dt, p.steps, EvolveOptions { record_every: p.record_every, keep_snapshots })?;
    let short = evolve(p.theory, &psi0, p.dt, 2, EvolveOptions { record_every: 1, keep_snapshots: true })?;
    let summary = EvolveSummary {
        theory: p.theory,
        n: p.n,
        dims: p.dims,
        half_width: p.half_width,
        mass: p.mass,
        dt: p.dt,
        steps: p.steps,
        record_every: p.record_every,
        norm_drift: traj.norm_drift(),
        component_drift: traj.component_drift(),
        norm_drift_limit: NORM_DRIFT_LIMIT,
        kg_residual: kg_residual(&short)?,
        continuity: continuity_residual(&short)?,
        records: traj.records.clone(),
    };
    let ok = summary.norm_drift < NORM_DRIFT_LIMIT;
    Ok((traj, to_value(&summary), ok))
}

pub fn evolve_command(cfg: &RunConfig, binary: bool) -> Result<Outcome> {
    let p = EvolveParams::from_config(cfg)?;
    let (traj, result, ok) = run_evolve(&p, binary)?;
    let mut csv = Vec::new();
    write_csv(&traj, &mut csv)?;
    let bin = if binary {
        let mut b = Vec::new();
        write_binary(&traj.snapshots, &mut b)?;
        Some(b)
    } else {
        None
    };
    let md = format!(
        "## Evolution {}\n\n| quantity | value |\n|---|---|\n| n | {} |\n| dims | {} |\n| dt | {:e} |\n| steps | {} |\n| norm drift | {:.3e} |\n| component drift | {:.3e} |\n| KG residual | {:.3e} |\n| continuity residual | {:.3e} |\n| continuity residual, printed sign | {:.3e} |\n",
        p.theory,
        p.n,
        p.dims,
        p.dt,
        p.steps,
        result["norm_drift"].as_f64().unwrap_or(f64::NAN),
        result["component_drift"].as_f64().unwrap_or(f64::NAN),
        result["kg_residual"].as_f64().unwrap_or(f64::NAN),
        result["continuity"]["corrected"].as_f64().unwrap_or(f64::NAN),
        result["continuity"]["printed"].as_f64().unwrap_or(f64::NAN),
    );
    Ok(Outcome {
        ok,
        result,
        markdown: md,
        csv: Some(String::from_utf8(csv).expect("CSV is ASCII")),
        binary: bin,
        adjudications: standing_adjudications(),
    })
}

// ---------------------------------------------------------------- report

#[derive(Serialize)]
struct NumericSummary {
    norm_drift: Vec<(Theory, f64)>,
    /// `dirac_spectrum` at `p = (3, 4, 0)`, `m = 0` and `p = (0, 3, 0)`, `m = 4`; both give `±5`.
    dirac_345: Vec<[f64; 4]>,
    boost_relative_error: f64,
    boost_sign: i8,
    fv_printed_proportional: bool,
    fv_imaginary_proportional: bool,
    fv_imaginary_constant: Option<f64>,
}

fn numeric_summary() -> Result<NumericSummary> {
    let norm_drift = Theory::ALL
        .par_iter()
        .map(|&t| {
            let p = EvolveParams {
                theory: t,
                n: 64,
                dims: 1,
                half_width: 20.0,
                mass: 1.0,
                dt: 1e-3,
                steps: 1000,
                record_every: 100,
                width: 1.5,
                center: [0.0; 3],
                k0: [0.5, 0.0, 0.0],
            };
            let traj = evolve(t, &p.initial()?, p.dt, p.steps, EvolveOptions { record_every: p.record_every, keep_snapshots: false })?;
            Ok((t, traj.norm_drift()))
        })
        .collect::<Result<Vec<_>>>()?;
    let dirac_345 = vec![dirac_spectrum([3.0, 4.0, 0.0], 0.0), dirac_spectrum([0.0, 3.0, 0.0], 4.0)];
    let mut rapidity = GridState::gaussian(1024, 1, 8.0, 1.0, [0.0; 3], 0.5, [0.0; 3], &[Complex64::new(1.0, 0.0)])?;
    rapidity.space = Space::Momentum;
    let boost = boost_action_1d(0.5, &rapidity)?;
    let psi = GridState::gaussian(64, 1, 20.0, 1.0, [0.0; 3], 1.5, [0.5, 0.0, 0.0], &[Complex64::new(1.0, 0.0)])?;
    let dpsi = time_derivative(Theory::T1, &psi)?;
    let fv = fv_split(psi.component(0), dpsi.component(0), 1.0)?;
    Ok(NumericSummary {
        norm_drift,
        dirac_345,
        boost_relative_error: boost.relative_error,
        boost_sign: boost.sign,
        fv_printed_proportional: fv.printed.proportional,
        fv_imaginary_proportional: fv.imaginary.proportional,
        fv_imaginary_constant: fv.imaginary.constant,
    })
}

pub fn report(cfg: &RunConfig) -> Result<Outcome> {
    let spin_list = spins(cfg, &[Spin::ZERO, Spin::HALF])?;
    let all = RunConfig { rep: vec!["all".into()], ..cfg.clone() };
    let catalog = catalog(&all)?;
    let verify = verify(&all)?;
    let commutant = commutant(&RunConfig { time_operator: true, ..all.clone() })?;
    let scans: Vec<ScanResult> = spin_list.iter().map(|&s| position_scan_at(s)).collect::<Result<_>>()?;
    let numeric = numeric_summary()?;
    let numeric_ok = numeric.norm_drift.iter().all(|(_, d)| *d < NORM_DRIFT_LIMIT);
    let ok = verify.ok && commutant.ok && scans.iter().all(scan_ok) && numeric_ok;

    let mut scan_reports: Vec<&CheckReport> = Vec::new();
    for s in &scans {
        scan_reports.extend(s.reports());
    }
    let mut adjudications = verify.adjudications.clone();
    for a in collect_adjudications(scan_reports) {
        if !adjudications.contains(&a) {
            adjudications.push(a);
        }
    }

    let mut md = String::from("# plab report\n\n");
    md.push_str(&catalog.markdown);
    md.push('\n');
    md.push_str(&verify.markdown);
    md.push_str("## Position scans\n\n");
    for s in &scans {
        md.push_str(&s.markdown());
        md.push('\n');
    }
    md.push_str(&commutant.markdown);
    md.push_str("\n## Numeric checks\n\n| quantity | value |\n|---|---|\n");
    for (t, d) in &numeric.norm_drift {
        md.push_str(&format!("| norm drift {t}, 1000 steps | {d:.3e} |\n"));
    }
    md.push_str(&format!("| boost relative error, phi = 0.5 | {:.3e} |\n", numeric.boost_relative_error));
    md.push_str(&format!("| Feshbach-Villars 1/m proportional | {} |\n", numeric.fv_printed_proportional));
    md.push_str(&format!("| Feshbach-Villars i/m proportional | {} |\n\n", numeric.fv_imaginary_proportional));
    md.push_str(&super::output::adjudications_markdown(&adjudications));

    Ok(Outcome {
        ok,
        result: json!({
            "catalog": catalog.result,
            "verification": verify.result,
            "position_scans": scans.iter().map(to_value).collect::<Vec<_>>(),
            "commutants": commutant.result,
            "numeric": to_value(&numeric),
        }),
        markdown: md,
        csv: None,
        binary: None,
        adjudications,
    })
}
