//! Pipeline execution and report writing.

use crate::config::{
    AlgebraSource, Backend, BathState, Couplings, Experiment, ExperimentSpec, LieAlgConfig, MhiConfig, Observables,
    SpinBathConfig,
};
use crate::{io_err, CliError, Result};
use decohere_core::gtfd::{analyze, time_grid, Analysis, DenseDynamics, PureDiagonalDynamics, RelevantSpace, VerdictReport, DEFAULT_PAULI_CAP};
use decohere_core::mhi::{context_invariance_with, csp_check, is_actual_valued, preferred_context, CspSummary, INVARIANCE_TOL};
use decohere_core::qcore::io::operator_from_json;
use decohere_core::qcore::Operator;
use decohere_core::spinbath::{initial_pure, initial_state, make_partition, AnalyticSpinBath, ProductState, SpinBathModel};
use decohere_liealg::builtins::{abelian, extended_galilei, mass_shell, pauli_lubanski, poincare, su2};
use decohere_liealg::json::{from_json, to_json};
use decohere_liealg::{contract_casimir, is_casimir, same_structure, BasisMap, ExactAlgebra, ExactPoly, NcPoly};
use serde::Serialize;
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Largest register (P plus bath) evolved as a full amplitude vector.
pub const STATE_VECTOR_MAX_FACTORS: usize = 24;

pub const REPORT_FILE: &str = "report.json";
pub const CONFIG_FILE: &str = "config.json";

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub kind: &'static str,
    pub seed: u64,
    /// The config file exactly as read.
    pub config_echo: String,
    pub wall_time_s: f64,
    pub result: Value,
    pub manifest: Vec<String>,
}

struct Outputs<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl Outputs<'_> {
    fn write(&mut self, name: &str, contents: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(io_err(&path))?;
        self.files.push(name.to_string());
        Ok(())
    }
}

/// Parses, validates and runs `text`, writing everything into `out_dir`.
/// Relative file references in the config resolve against `base_dir`.
pub fn run_config(text: &str, base_dir: &Path, out_dir: &Path) -> Result<RunReport> {
    let exp = crate::parse_config(text).map_err(CliError::Validation)?;
    let start = Instant::now();
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let mut out = Outputs {
        dir: out_dir,
        files: Vec::new(),
    };
    out.write(CONFIG_FILE, text.as_bytes())?;
    let result = match &exp.spec {
        ExperimentSpec::SpinBath(c) => run_spinbath(&exp, c, &mut out)?,
        ExperimentSpec::Mhi(c) => run_mhi(c, base_dir, &mut out)?,
        ExperimentSpec::LieAlg(c) => run_liealg(c, base_dir, &mut out)?,
    };
    let mut manifest = out.files.clone();
    manifest.push(REPORT_FILE.to_string());
    let report = RunReport {
        tool: "decohere",
        version: env!("CARGO_PKG_VERSION"),
        kind: exp.spec.kind(),
        seed: exp.seed,
        config_echo: text.to_string(),
        wall_time_s: start.elapsed().as_secs_f64(),
        result,
        manifest,
    };
    let body = serde_json::to_string_pretty(&report).map_err(|e| CliError::Runtime(e.to_string()))?;
    let path = out_dir.join(REPORT_FILE);
    fs::write(&path, body).map_err(io_err(&path))?;
    Ok(report)
}

// ---- spinbath_gtfd ----

/// Model and initial state for a spin-bath config; the random bath draws from `seed + 1`.
pub fn build_spinbath(seed: u64, c: &SpinBathConfig) -> Result<(SpinBathModel<f64>, ProductState<f64>)> {
    let model = match &c.couplings {
        Couplings::List(g) => SpinBathModel::new(g.clone())?,
        Couplings::Random { low, high, seed: s } => SpinBathModel::random(c.n_bath, *low, *high, s.unwrap_or(seed))?,
    };
    let state = match &c.bath {
        BathState::Uniform(pair) => ProductState::uniform(c.p, *pair, c.n_bath)?,
        BathState::Random => ProductState::random_bath(c.p, c.n_bath, seed.wrapping_add(1))?,
        BathState::List(pairs) => ProductState::new(c.p, pairs.clone())?,
    };
    Ok((model, state))
}

/// Series and verdict for a spin-bath config, without touching the filesystem.
pub fn analyze_spinbath(seed: u64, c: &SpinBathConfig) -> Result<Analysis<f64>> {
    let (model, state) = build_spinbath(seed, c)?;
    let sig = model.sig();
    let part = make_partition(&model, &c.partition)?;
    let space = match &c.observables {
        Observables::Pauli => RelevantSpace::pauli_basis(&part, &sig, DEFAULT_PAULI_CAP)?,
        Observables::Collective => RelevantSpace::collective(&part, &sig)?,
        Observables::Labels(l) => RelevantSpace::from_pauli_labels(&part, &sig, l)?,
    };
    let (t0, t1, n) = c.times;
    let times = time_grid(t0, t1, n)?;
    let a = match c.backend {
        Backend::Analytic => analyze(&AnalyticSpinBath::new(model, state)?, &space, &times, &c.detection)?,
        Backend::StateVector => {
            if model.n_factors() > STATE_VECTOR_MAX_FACTORS {
                return Err(CliError::Runtime(format!(
                    "state-vector backend holds at most {STATE_VECTOR_MAX_FACTORS} spins, model has {}",
                    model.n_factors()
                )));
            }
            let psi = initial_pure(&model, &state)?;
            analyze(&PureDiagonalDynamics::new(psi, model.diagonal_hamiltonian())?, &space, &times, &c.detection)?
        }
        Backend::Dense => {
            let rho = initial_state(&model, &state)?;
            analyze(&DenseDynamics::new(rho, &model.hamiltonian_operator()?)?, &space, &times, &c.detection)?
        }
    };
    Ok(a)
}

fn run_spinbath(exp: &Experiment, c: &SpinBathConfig, out: &mut Outputs) -> Result<Value> {
    let a = analyze_spinbath(exp.seed, c)?;
    let (model, _) = build_spinbath(exp.seed, c)?;
    out.write(&c.series_file, a.series.to_csv().as_bytes())?;
    let verdict: VerdictReport = a.report();
    let text = serde_json::to_string_pretty(&verdict).map_err(|e| CliError::Runtime(e.to_string()))?;
    out.write(&c.verdict_file, text.as_bytes())?;
    Ok(json!({
        "backend": c.backend.name(),
        "couplings": model.couplings(),
        "observables": a.series.labels(),
        "verdict": verdict,
    }))
}

// ---- mhi_context ----

fn read_operator(base: &Path, file: &Path) -> Result<Operator<f64>> {
    let path = base.join(file);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    operator_from_json(&text).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct CandidateResult {
    label: String,
    actual_valued: bool,
}

#[derive(Serialize)]
struct InvarianceResult {
    generator: PathBuf,
    params: Vec<f64>,
    invariant: bool,
}

fn run_mhi(c: &MhiConfig, base: &Path, out: &mut Outputs) -> Result<Value> {
    let h = read_operator(base, &c.hamiltonian)?;
    let ctx = preferred_context(&h, c.group_tol)?;
    let summary = ctx.decomposition().summary();
    let candidates = c
        .candidates
        .iter()
        .map(|(label, file)| {
            let obs = read_operator(base, file)?;
            Ok(CandidateResult {
                label: label.clone(),
                actual_valued: is_actual_valued(&obs, &ctx, c.tol)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let csp: Option<CspSummary> = match &c.csp_first {
        Some(first) => Some(csp_check(&h, first, c.tol)?.summary()),
        None => None,
    };
    let invariance = match &c.invariance {
        Some((file, params)) => {
            let g = read_operator(base, file)?;
            Some(InvarianceResult {
                generator: file.clone(),
                params: params.clone(),
                invariant: context_invariance_with(&ctx, &g, params, INVARIANCE_TOL)?,
            })
        }
        None => None,
    };
    let report = json!({
        "eigenvalues": summary.eigenvalues,
        "multiplicities": summary.multiplicities,
        "group_tol": summary.group_tol,
        "candidates": candidates,
        "csp": csp,
        "invariance": invariance,
    });
    let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Runtime(e.to_string()))?;
    out.write(&c.report_file, text.as_bytes())?;
    Ok(report)
}

// ---- liealg_contract ----

fn load_algebra(src: &AlgebraSource, base: &Path) -> Result<ExactAlgebra> {
    Ok(match src {
        AlgebraSource::Builtin(name) => match name.as_str() {
            "poincare" => poincare(),
            "extended_galilei" => extended_galilei(),
            "su2" => su2(),
            "abelian3" => abelian(3),
            other => return Err(CliError::Runtime(format!("unknown builtin algebra `{other}`"))),
        },
        AlgebraSource::File(file) => {
            let path = base.join(file);
            let text = fs::read_to_string(&path).map_err(io_err(&path))?;
            from_json(&text)?
        }
    })
}

fn brackets(alg: &ExactAlgebra) -> Vec<String> {
    alg.nonzero_brackets().map(|(a, b, _)| alg.format_bracket(a, b)).collect()
}

fn stage(alg: &ExactAlgebra) -> Value {
    json!({ "generators": alg.names(), "brackets": brackets(alg) })
}

/// Every stage of a contraction run, kept in memory for inspection.
pub struct Contraction {
    pub source: ExactAlgebra,
    pub extended: ExactAlgebra,
    pub map: BasisMap<decohere_liealg::Rational>,
    pub rebased: ExactAlgebra,
    pub rescaled: ExactAlgebra,
    pub contracted: ExactAlgebra,
}

pub fn contract_pipeline(c: &LieAlgConfig, base: &Path) -> Result<Contraction> {
    let source = load_algebra(&c.source, base)?;
    let extended = match &c.central {
        Some(m) => source.extend_trivially(m)?,
        None => source.clone(),
    };
    let mut map = BasisMap::identity(&extended);
    for r in &c.basis_change {
        let terms = r.terms.iter().map(|(g, x)| (g.as_str(), x.clone())).collect();
        map = map.replace(&r.old, &r.new, terms)?;
    }
    let rebased = extended.change_basis(&map)?;
    let schedule: Vec<(&str, i32)> = c.schedule.iter().map(|(g, k)| (g.as_str(), *k)).collect();
    let rescaled = rebased.rescale(&schedule)?;
    let contracted = rescaled.contract()?;
    Ok(Contraction {
        source,
        extended,
        map,
        rebased,
        rescaled,
        contracted,
    })
}

/// Contracted name → target name: drop the trailing prime, then undo any
/// basis-change renaming.
fn default_mapping(c: &LieAlgConfig, contracted: &ExactAlgebra) -> Vec<(String, String)> {
    contracted
        .names()
        .iter()
        .map(|n| {
            let bare = n.strip_suffix('\'').unwrap_or(n);
            let target = c
                .basis_change
                .iter()
                .find(|r| r.new == bare)
                .map_or(bare, |r| r.old.as_str());
            (n.clone(), target.to_string())
        })
        .collect()
}

fn casimir_poly(name: &str, alg: &ExactAlgebra) -> Result<ExactPoly> {
    Ok(match name {
        "mass_shell" => mass_shell(alg, "")?,
        "pauli_lubanski" => pauli_lubanski(alg)?,
        g => NcPoly::generator(alg, g)?,
    })
}

fn run_liealg(c: &LieAlgConfig, base: &Path, out: &mut Outputs) -> Result<Value> {
    let k = contract_pipeline(c, base)?;
    let schedule: Vec<(&str, i32)> = c.schedule.iter().map(|(g, p)| (g.as_str(), *p)).collect();
    let isomorphic = match &c.target {
        Some(t) => {
            let target = load_algebra(t, base)?;
            let mapping = c.mapping.clone().unwrap_or_else(|| default_mapping(c, &k.contracted));
            let pairs: Vec<(&str, &str)> = mapping.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            Some(same_structure(&k.contracted, &target, &pairs)?)
        }
        None => None,
    };
    let mut casimirs = Vec::new();
    for name in &c.casimirs {
        let p = casimir_poly(name, &k.extended)?.change_basis(&k.map)?;
        let parts = contract_casimir(&p, &k.rebased, &schedule)?;
        let components = parts
            .iter()
            .map(|(pow, q)| {
                Ok(json!({
                    "eps_power": pow,
                    "polynomial": q.format(k.contracted.names()),
                    "is_casimir": is_casimir(q, &k.contracted)?,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        casimirs.push(json!({
            "name": name,
            "rebased": p.normalize(&k.rebased)?.format(k.rebased.names()),
            "components": components,
        }));
    }
    let report = json!({
        "stages": {
            "source": stage(&k.source),
            "extended": stage(&k.extended),
            "rebased": stage(&k.rebased),
            "rescaled": stage(&k.rescaled),
            "contracted": stage(&k.contracted),
        },
        "epsilon_free": k.contracted.is_epsilon_free(),
        "isomorphic": isomorphic,
        "casimirs": casimirs,
    });
    let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Runtime(e.to_string()))?;
    out.write(&c.report_file, text.as_bytes())?;
    out.write(&c.algebra_file, to_json(&k.contracted).as_bytes())?;
    Ok(report)
}
