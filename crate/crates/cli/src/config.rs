//! Experiment configuration: a hand-checked JSON schema that reports every
//! problem with its JSON path and, when there are none, yields typed values.

use decohere_core::gtfd::EquilibriumParams;
use decohere_core::spinbath::PartitionSpec;
use decohere_liealg::{GaussianRational, Rational, Scalar};
use num_complex::Complex64;
use serde_json::{Map, Value};
use std::fmt;
use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub seed: u64,
    pub spec: ExperimentSpec,
}

#[derive(Debug, Clone)]
pub enum ExperimentSpec {
    SpinBath(SpinBathConfig),
    Mhi(MhiConfig),
    LieAlg(LieAlgConfig),
}

impl ExperimentSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::SpinBath(_) => "spinbath_gtfd",
            Self::Mhi(_) => "mhi_context",
            Self::LieAlg(_) => "liealg_contract",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Couplings {
    List(Vec<f64>),
    /// Uniform in `[low, high)`; `seed` defaults to the experiment seed.
    Random { low: f64, high: f64, seed: Option<u64> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum BathState {
    Uniform([Complex64; 2]),
    Random,
    List(Vec<[Complex64; 2]>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Observables {
    Pauli,
    Collective,
    Labels(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Analytic,
    StateVector,
    Dense,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Self::Analytic => "analytic",
            Self::StateVector => "state_vector",
            Self::Dense => "dense",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpinBathConfig {
    pub n_bath: usize,
    pub couplings: Couplings,
    pub p: [Complex64; 2],
    pub bath: BathState,
    pub partition: PartitionSpec,
    pub observables: Observables,
    pub backend: Backend,
    pub times: (f64, f64, usize),
    pub detection: EquilibriumParams<f64>,
    pub series_file: String,
    pub verdict_file: String,
}

#[derive(Debug, Clone)]
pub struct MhiConfig {
    pub hamiltonian: PathBuf,
    pub candidates: Vec<(String, PathBuf)>,
    pub group_tol: f64,
    pub tol: f64,
    pub csp_first: Option<Vec<usize>>,
    pub invariance: Option<(PathBuf, Vec<f64>)>,
    pub report_file: String,
}

#[derive(Debug, Clone)]
pub enum AlgebraSource {
    Builtin(String),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct Replacement {
    pub old: String,
    pub new: String,
    pub terms: Vec<(String, Scalar)>,
}

#[derive(Debug, Clone)]
pub struct LieAlgConfig {
    pub source: AlgebraSource,
    pub central: Option<String>,
    pub basis_change: Vec<Replacement>,
    pub schedule: Vec<(String, i32)>,
    pub target: Option<AlgebraSource>,
    pub mapping: Option<Vec<(String, String)>>,
    pub casimirs: Vec<String>,
    pub report_file: String,
    pub algebra_file: String,
}

pub const BUILTIN_ALGEBRAS: [&str; 4] = ["poincare", "extended_galilei", "su2", "abelian3"];
pub const MIN_TIME_POINTS: usize = 16;
pub const MAX_BATH: usize = 62;

/// Validates `text` and, if clean, returns the typed experiment.
pub fn parse_config(text: &str) -> Result<Experiment, Vec<Diagnostic>> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        vec![Diagnostic {
            path: "$".into(),
            message: format!("not valid JSON: {e}"),
        }]
    })?;
    let mut cx = Checker::default();
    let exp = cx.experiment(&value);
    match exp {
        Some(e) if cx.diags.is_empty() => Ok(e),
        _ => Err(cx.diags),
    }
}

/// Schema diagnostics only; empty when the config is valid.
pub fn validate(text: &str) -> Vec<Diagnostic> {
    parse_config(text).err().unwrap_or_default()
}

#[derive(Default)]
struct Checker {
    diags: Vec<Diagnostic>,
}

fn join(path: &str, key: &str) -> String {
    format!("{path}.{key}")
}

impl Checker {
    fn err<T>(&mut self, path: &str, message: impl Into<String>) -> Option<T> {
        self.diags.push(Diagnostic {
            path: path.to_string(),
            message: message.into(),
        });
        None
    }

    fn object<'a>(&mut self, v: &'a Value, path: &str, allowed: &[&str]) -> Option<&'a Map<String, Value>> {
        let Some(obj) = v.as_object() else {
            return self.err(path, "expected an object");
        };
        for key in obj.keys() {
            if !allowed.contains(&key.as_str()) {
                self.err::<()>(&join(path, key), "unknown field");
            }
        }
        Some(obj)
    }

    fn required<'a>(&mut self, obj: &'a Map<String, Value>, path: &str, key: &str) -> Option<&'a Value> {
        match obj.get(key) {
            Some(v) => Some(v),
            None => self.err(&join(path, key), "required field missing"),
        }
    }

    fn number(&mut self, v: &Value, path: &str) -> Option<f64> {
        match v.as_f64() {
            Some(x) if x.is_finite() => Some(x),
            _ => self.err(path, "expected a finite number"),
        }
    }

    fn count(&mut self, v: &Value, path: &str) -> Option<usize> {
        match v.as_i64() {
            Some(n) if n >= 0 => Some(n as usize),
            Some(_) => self.err(path, "must be a non-negative integer"),
            None => self.err(path, "expected an integer"),
        }
    }

    fn string(&mut self, v: &Value, path: &str) -> Option<String> {
        match v.as_str() {
            Some(s) => Some(s.to_string()),
            None => self.err(path, "expected a string"),
        }
    }

    fn file_name(&mut self, obj: &Map<String, Value>, path: &str, key: &str, default: &str) -> Option<String> {
        let Some(v) = obj.get(key) else {
            return Some(default.to_string());
        };
        let p = join(path, key);
        let name = self.string(v, &p)?;
        if name.is_empty() || name.contains(['/', '\\']) || name == "config.json" || name == "report.json" {
            return self.err(&p, "must be a plain file name other than config.json and report.json");
        }
        Some(name)
    }

    fn experiment(&mut self, v: &Value) -> Option<Experiment> {
        let obj = v.as_object().or_else(|| self.err("$", "expected an object"))?;
        let seed = match self.required(obj, "$", "seed") {
            Some(s) => match s.as_u64() {
                Some(n) => Some(n),
                None => self.err("$.seed", "expected a non-negative integer"),
            },
            None => None,
        };
        let kind = self.required(obj, "$", "kind").and_then(|k| self.string(k, "$.kind"));
        let spec = match kind.as_deref() {
            Some("spinbath_gtfd") => self.spinbath(obj).map(ExperimentSpec::SpinBath),
            Some("mhi_context") => self.mhi(obj).map(ExperimentSpec::Mhi),
            Some("liealg_contract") => self.liealg(obj).map(ExperimentSpec::LieAlg),
            Some(other) => self.err(
                "$.kind",
                format!("unknown kind `{other}`; expected spinbath_gtfd, mhi_context or liealg_contract"),
            ),
            None => None,
        };
        Some(Experiment { seed: seed?, spec: spec? })
    }

    // ---- spinbath_gtfd ----

    fn spinbath(&mut self, obj: &Map<String, Value>) -> Option<SpinBathConfig> {
        let allowed = [
            "kind",
            "seed",
            "model",
            "partition",
            "observables",
            "backend",
            "times",
            "detection",
            "output",
        ];
        self.object(&Value::Object(obj.clone()), "$", &allowed);
        let (n_bath, couplings, p, bath) = match self.required(obj, "$", "model") {
            Some(m) => self.model(m),
            None => (None, None, None, None),
        };
        let partition = self
            .required(obj, "$", "partition")
            .and_then(|v| self.partition(v, n_bath));
        let observables = match obj.get("observables") {
            None => Some(Observables::Pauli),
            Some(v) => self.observables(v),
        };
        let backend = match obj.get("backend").map(|v| (v, v.as_str())) {
            None => Some(Backend::Analytic),
            Some((_, Some("analytic"))) => Some(Backend::Analytic),
            Some((_, Some("state_vector"))) => Some(Backend::StateVector),
            Some((_, Some("dense"))) => Some(Backend::Dense),
            Some(_) => self.err("$.backend", "expected \"analytic\", \"state_vector\" or \"dense\""),
        };
        let times = self.required(obj, "$", "times").and_then(|v| self.times(v));
        let detection = match obj.get("detection") {
            None => Some(EquilibriumParams::default()),
            Some(v) => self.detection(v),
        };
        let (series_file, verdict_file) = match obj.get("output") {
            None => (Some("series.csv".to_string()), Some("verdict.json".to_string())),
            Some(v) => match self.object(v, "$.output", &["series", "verdict"]) {
                Some(o) => (
                    self.file_name(o, "$.output", "series", "series.csv"),
                    self.file_name(o, "$.output", "verdict", "verdict.json"),
                ),
                None => (None, None),
            },
        };
        Some(SpinBathConfig {
            n_bath: n_bath?,
            couplings: couplings?,
            p: p?,
            bath: bath?,
            partition: partition?,
            observables: observables?,
            backend: backend?,
            times: times?,
            detection: detection?,
            series_file: series_file?,
            verdict_file: verdict_file?,
        })
    }

    #[allow(clippy::type_complexity)]
    fn model(&mut self, v: &Value) -> (Option<usize>, Option<Couplings>, Option<[Complex64; 2]>, Option<BathState>) {
        let path = "$.model";
        let Some(obj) = self.object(v, path, &["n_bath", "couplings", "initial"]) else {
            return (None, None, None, None);
        };
        let n_bath = self.required(obj, path, "n_bath").and_then(|n| match n.as_i64() {
            Some(k) if (1..=MAX_BATH as i64).contains(&k) => Some(k as usize),
            Some(_) => self.err("$.model.n_bath", format!("must be an integer in 1..={MAX_BATH}")),
            None => self.err("$.model.n_bath", "expected an integer"),
        });
        let couplings = self.required(obj, path, "couplings").and_then(|c| self.couplings(c, n_bath));
        let (p, bath) = match self.required(obj, path, "initial") {
            Some(s) => self.initial_state(s, n_bath),
            None => (None, None),
        };
        (n_bath, couplings, p, bath)
    }

    fn couplings(&mut self, v: &Value, n_bath: Option<usize>) -> Option<Couplings> {
        let path = "$.model.couplings";
        if let Some(list) = v.as_array() {
            let vals: Vec<Option<f64>> = list
                .iter()
                .enumerate()
                .map(|(i, x)| self.number(x, &format!("{path}[{i}]")))
                .collect();
            if let Some(n) = n_bath {
                if list.len() != n {
                    self.err::<()>(path, format!("{} couplings for n_bath = {n}", list.len()));
                }
            }
            return vals.into_iter().collect::<Option<Vec<_>>>().map(Couplings::List);
        }
        let obj = self.object(v, path, &["random"])?;
        let r = self.required(obj, path, "random")?;
        let rp = "$.model.couplings.random";
        let ro = self.object(r, rp, &["low", "high", "seed"])?;
        let low = self.required(ro, rp, "low").and_then(|x| self.number(x, &join(rp, "low")));
        let high = self.required(ro, rp, "high").and_then(|x| self.number(x, &join(rp, "high")));
        let seed = match ro.get("seed") {
            None => Some(None),
            Some(x) => match x.as_u64() {
                Some(k) => Some(Some(k)),
                None => self.err(&join(rp, "seed"), "expected a non-negative integer"),
            },
        };
        let (low, high, seed) = (low?, high?, seed?);
        if low >= high {
            return self.err(rp, "low must be smaller than high");
        }
        Some(Couplings::Random { low, high, seed })
    }

    fn amplitude(&mut self, v: &Value, path: &str) -> Option<[Complex64; 2]> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match v.as_str() {
            Some("plus") => return Some([Complex64::new(s, 0.0), Complex64::new(s, 0.0)]),
            Some("zero") => return Some([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]),
            Some("one") => return Some([Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
            Some(other) => return self.err(path, format!("unknown state `{other}`; expected plus, zero, one or [[re,im],[re,im]]")),
            None => {}
        }
        let pair = v.as_array().filter(|a| a.len() == 2);
        let Some(pair) = pair else {
            return self.err(path, "expected a named state or [[re,im],[re,im]]");
        };
        let mut out = [Complex64::new(0.0, 0.0); 2];
        for (k, z) in pair.iter().enumerate() {
            let zp = format!("{path}[{k}]");
            match z.as_array().filter(|a| a.len() == 2) {
                Some(c) => {
                    let re = self.number(&c[0], &format!("{zp}[0]"))?;
                    let im = self.number(&c[1], &format!("{zp}[1]"))?;
                    out[k] = Complex64::new(re, im);
                }
                None => return self.err(&zp, "expected [re, im]"),
            }
        }
        let norm = out[0].norm_sqr() + out[1].norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return self.err(path, format!("amplitudes have squared norm {norm}, expected 1"));
        }
        Some(out)
    }

    fn initial_state(&mut self, v: &Value, n_bath: Option<usize>) -> (Option<[Complex64; 2]>, Option<BathState>) {
        let path = "$.model.initial";
        let Some(obj) = self.object(v, path, &["p", "bath"]) else {
            return (None, None);
        };
        let p = self.required(obj, path, "p").and_then(|x| self.amplitude(x, "$.model.initial.p"));
        let bp = "$.model.initial.bath";
        let bath = self.required(obj, path, "bath").and_then(|b| {
            if b.as_str() == Some("random") {
                return Some(BathState::Random);
            }
            // A lone amplitude is [[re,im],[re,im]]; anything else array-shaped is per-spin.
            let single = b
                .as_array()
                .is_some_and(|a| a.len() == 2 && a.iter().all(|z| z.as_array().is_some_and(|c| c.iter().all(Value::is_number))));
            let list = b.as_array().filter(|_| !single);
            match list {
                Some(items) => {
                    let amps: Vec<Option<[Complex64; 2]>> = items
                        .iter()
                        .enumerate()
                        .map(|(i, x)| self.amplitude(x, &format!("{bp}[{i}]")))
                        .collect();
                    if let Some(n) = n_bath {
                        if items.len() != n {
                            self.err::<()>(bp, format!("{} bath states for n_bath = {n}", items.len()));
                        }
                    }
                    amps.into_iter().collect::<Option<Vec<_>>>().map(BathState::List)
                }
                None => self.amplitude(b, bp).map(BathState::Uniform),
            }
        });
        (p, bath)
    }

    fn partition(&mut self, v: &Value, n_bath: Option<usize>) -> Option<PartitionSpec> {
        let path = "$.partition";
        if v.as_str() == Some("dec1") {
            return Some(PartitionSpec::Dec1);
        }
        let obj = match v.as_object() {
            Some(o) if o.len() == 1 => o,
            _ => return self.err(path, "expected \"dec1\", {\"dec2\": j}, {\"dec3\": p} or {\"custom\": [factors]}"),
        };
        let (key, val) = obj.iter().next().unwrap();
        let kp = join(path, key);
        let in_range = |cx: &mut Self, k: usize, lo: usize| match n_bath {
            Some(n) if k < lo || k > n => cx.err(&kp, format!("must lie in {lo}..={n}")),
            _ => Some(k),
        };
        match key.as_str() {
            "dec2" => {
                let j = self.count(val, &kp)?;
                in_range(self, j, 1).map(PartitionSpec::Dec2)
            }
            "dec3" => {
                let p = self.count(val, &kp)?;
                in_range(self, p, 1).map(PartitionSpec::Dec3)
            }
            "custom" => {
                let Some(items) = val.as_array() else {
                    return self.err(&kp, "expected a list of factor indices");
                };
                let mut out = Vec::new();
                for (i, x) in items.iter().enumerate() {
                    let k = self.count(x, &format!("{kp}[{i}]"))?;
                    out.push(in_range(self, k, 0)?);
                }
                if out.is_empty() {
                    return self.err(&kp, "system must contain at least one factor");
                }
                Some(PartitionSpec::Custom(out))
            }
            other => self.err(&kp, format!("unknown partition `{other}`")),
        }
    }

    fn observables(&mut self, v: &Value) -> Option<Observables> {
        let path = "$.observables";
        match v {
            Value::String(s) if s == "pauli" => Some(Observables::Pauli),
            Value::String(s) if s == "collective" => Some(Observables::Collective),
            Value::Array(items) if !items.is_empty() => {
                let labels: Vec<Option<String>> = items
                    .iter()
                    .enumerate()
                    .map(|(i, x)| {
                        let p = format!("{path}[{i}]");
                        let s = self.string(x, &p)?;
                        if s.is_empty() || !s.chars().all(|c| "IXYZ".contains(c)) {
                            return self.err(&p, "Pauli labels use the letters I, X, Y, Z");
                        }
                        Some(s)
                    })
                    .collect();
                labels.into_iter().collect::<Option<Vec<_>>>().map(Observables::Labels)
            }
            _ => self.err(path, "expected \"pauli\", \"collective\" or a non-empty list of Pauli labels"),
        }
    }

    fn times(&mut self, v: &Value) -> Option<(f64, f64, usize)> {
        let path = "$.times";
        let obj = self.object(v, path, &["start", "end", "count"])?;
        let start = self.required(obj, path, "start").and_then(|x| self.number(x, "$.times.start"));
        let end = self.required(obj, path, "end").and_then(|x| self.number(x, "$.times.end"));
        let count = self.required(obj, path, "count").and_then(|x| self.count(x, "$.times.count"));
        let (start, end, count) = (start?, end?, count?);
        if count < MIN_TIME_POINTS {
            return self.err("$.times.count", format!("need at least {MIN_TIME_POINTS} points"));
        }
        if end <= start {
            return self.err(path, "grid must be strictly increasing (end > start)");
        }
        Some((start, end, count))
    }

    fn detection(&mut self, v: &Value) -> Option<EquilibriumParams<f64>> {
        let path = "$.detection";
        let obj = self.object(v, path, &["window_fraction", "band_tol", "recurrence_guard"])?;
        let mut p = EquilibriumParams::default();
        if let Some(x) = obj.get("window_fraction") {
            let f = self.number(x, "$.detection.window_fraction")?;
            if !(f > 0.0 && f < 1.0) {
                return self.err("$.detection.window_fraction", "must lie strictly between 0 and 1");
            }
            p.window_fraction = f;
        }
        for (key, slot) in [("band_tol", &mut p.band_tol), ("recurrence_guard", &mut p.recurrence_guard)] {
            if let Some(x) = obj.get(key) {
                let kp = join(path, key);
                let val = self.number(x, &kp)?;
                if val < 0.0 {
                    return self.err(&kp, "must be non-negative");
                }
                *slot = val;
            }
        }
        Some(p)
    }

    // ---- mhi_context ----

    fn path_field(&mut self, obj: &Map<String, Value>, path: &str, key: &str) -> Option<PathBuf> {
        self.required(obj, path, key)
            .and_then(|v| self.string(v, &join(path, key)))
            .map(PathBuf::from)
    }

    fn positive(&mut self, obj: &Map<String, Value>, key: &str, default: f64) -> Option<f64> {
        let Some(v) = obj.get(key) else {
            return Some(default);
        };
        let p = join("$", key);
        let x = self.number(v, &p)?;
        if x <= 0.0 {
            return self.err(&p, "must be positive");
        }
        Some(x)
    }

    fn mhi(&mut self, obj: &Map<String, Value>) -> Option<MhiConfig> {
        let allowed = ["kind", "seed", "hamiltonian", "candidates", "group_tol", "tol", "csp", "invariance", "output"];
        self.object(&Value::Object(obj.clone()), "$", &allowed);
        let hamiltonian = self.path_field(obj, "$", "hamiltonian");
        let candidates = match obj.get("candidates") {
            None => Some(Vec::new()),
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let p = format!("$.candidates[{i}]");
                    let o = self.object(c, &p, &["label", "file"])?;
                    let label = self.required(o, &p, "label").and_then(|v| self.string(v, &join(&p, "label")));
                    let file = self.path_field(o, &p, "file");
                    Some((label?, file?))
                })
                .collect::<Vec<_>>()
                .into_iter()
                .collect(),
            Some(_) => self.err("$.candidates", "expected a list of {label, file}"),
        };
        let group_tol = self.positive(obj, "group_tol", 1e-8);
        let tol = self.positive(obj, "tol", 1e-8);
        let csp_first = match obj.get("csp") {
            None => Some(None),
            Some(v) => self.object(v, "$.csp", &["first"]).and_then(|o| {
                let f = self.required(o, "$.csp", "first")?;
                let items = f.as_array().or_else(|| self.err("$.csp.first", "expected a list of factor indices"))?;
                items
                    .iter()
                    .enumerate()
                    .map(|(i, x)| self.count(x, &format!("$.csp.first[{i}]")))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .map(Some)
            }),
        };
        let invariance = match obj.get("invariance") {
            None => Some(None),
            Some(v) => self.object(v, "$.invariance", &["generator", "params"]).and_then(|o| {
                let g = self.path_field(o, "$.invariance", "generator");
                let params = self.required(o, "$.invariance", "params").and_then(|p| match p.as_array() {
                    Some(items) if !items.is_empty() => items
                        .iter()
                        .enumerate()
                        .map(|(i, x)| self.number(x, &format!("$.invariance.params[{i}]")))
                        .collect::<Vec<_>>()
                        .into_iter()
                        .collect::<Option<Vec<_>>>(),
                    _ => self.err("$.invariance.params", "expected a non-empty list of numbers"),
                });
                Some(Some((g?, params?)))
            }),
        };
        let report_file = match obj.get("output") {
            None => Some("context.json".to_string()),
            Some(v) => self
                .object(v, "$.output", &["report"])
                .and_then(|o| self.file_name(o, "$.output", "report", "context.json")),
        };
        Some(MhiConfig {
            hamiltonian: hamiltonian?,
            candidates: candidates?,
            group_tol: group_tol?,
            tol: tol?,
            csp_first: csp_first?,
            invariance: invariance?,
            report_file: report_file?,
        })
    }

    // ---- liealg_contract ----

    fn algebra_source(&mut self, v: &Value, path: &str) -> Option<AlgebraSource> {
        if let Some(s) = v.as_str() {
            if BUILTIN_ALGEBRAS.contains(&s) {
                return Some(AlgebraSource::Builtin(s.to_string()));
            }
            return self.err(path, format!("unknown builtin `{s}`; expected one of {}", BUILTIN_ALGEBRAS.join(", ")));
        }
        let o = self.object(v, path, &["file"])?;
        self.path_field(o, path, "file").map(AlgebraSource::File)
    }

    fn rational(&mut self, v: &Value, path: &str) -> Option<Rational> {
        match v {
            Value::Number(n) if n.is_i64() => Some(Rational::from_integer(n.as_i64().unwrap().into())),
            Value::String(s) => match s.trim().parse::<Rational>() {
                Ok(r) => Some(r),
                Err(_) => self.err(path, format!("`{s}` is not a rational like \"-3/4\"")),
            },
            _ => self.err(path, "expected an integer or a rational string like \"1/2\""),
        }
    }

    fn coefficient(&mut self, v: &Value, path: &str) -> Option<Scalar> {
        let zero = Rational::from_integer(0.into());
        match v.as_array() {
            Some(pair) if pair.len() == 2 => {
                let re = self.rational(&pair[0], &format!("{path}[0]"));
                let im = self.rational(&pair[1], &format!("{path}[1]"));
                Some(Scalar::constant(GaussianRational::new(re?, im?)))
            }
            Some(_) => self.err(path, "expected [re, im]"),
            None => self
                .rational(v, path)
                .map(|re| Scalar::constant(GaussianRational::new(re, zero))),
        }
    }

    fn liealg(&mut self, obj: &Map<String, Value>) -> Option<LieAlgConfig> {
        let allowed = [
            "kind",
            "seed",
            "source",
            "central",
            "basis_change",
            "schedule",
            "target",
            "mapping",
            "casimirs",
            "output",
        ];
        self.object(&Value::Object(obj.clone()), "$", &allowed);
        let source = self
            .required(obj, "$", "source")
            .and_then(|v| self.algebra_source(v, "$.source"));
        let central = match obj.get("central") {
            None => Some(None),
            Some(v) => self.string(v, "$.central").map(Some),
        };
        let basis_change = match obj.get("basis_change") {
            None => Some(Vec::new()),
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let p = format!("$.basis_change[{i}]");
                    let o = self.object(r, &p, &["replace", "with", "terms"])?;
                    let old = self.required(o, &p, "replace").and_then(|v| self.string(v, &join(&p, "replace")));
                    let new = self.required(o, &p, "with").and_then(|v| self.string(v, &join(&p, "with")));
                    let tp = join(&p, "terms");
                    let terms = self.required(o, &p, "terms").and_then(|t| {
                        let to = t.as_object().or_else(|| self.err(&tp, "expected {generator: coefficient}"))?;
                        to.iter()
                            .map(|(g, c)| Some((g.clone(), self.coefficient(c, &join(&tp, g))?)))
                            .collect::<Vec<_>>()
                            .into_iter()
                            .collect::<Option<Vec<_>>>()
                    });
                    Some(Replacement {
                        old: old?,
                        new: new?,
                        terms: terms?,
                    })
                })
                .collect::<Vec<_>>()
                .into_iter()
                .collect(),
            Some(_) => self.err("$.basis_change", "expected a list of {replace, with, terms}"),
        };
        let schedule = self.required(obj, "$", "schedule").and_then(|s| {
            let so = s.as_object().or_else(|| self.err("$.schedule", "expected {generator: power}"))?;
            so.iter()
                .map(|(g, k)| {
                    let p = join("$.schedule", g);
                    match k.as_i64().and_then(|x| i32::try_from(x).ok()) {
                        Some(x) => Some((g.clone(), x)),
                        None => self.err(&p, "expected an integer power"),
                    }
                })
                .collect::<Vec<_>>()
                .into_iter()
                .collect::<Option<Vec<_>>>()
        });
        let target = match obj.get("target") {
            None => Some(None),
            Some(v) => self.algebra_source(v, "$.target").map(Some),
        };
        let mapping = match obj.get("mapping") {
            None => Some(None),
            Some(v) => v
                .as_object()
                .or_else(|| self.err("$.mapping", "expected {contracted_name: target_name}"))
                .and_then(|m| {
                    m.iter()
                        .map(|(a, b)| Some((a.clone(), self.string(b, &join("$.mapping", a))?)))
                        .collect::<Vec<_>>()
                        .into_iter()
                        .collect::<Option<Vec<_>>>()
                        .map(Some)
                }),
        };
        let casimirs = match obj.get("casimirs") {
            None => Some(Vec::new()),
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(i, x)| self.string(x, &format!("$.casimirs[{i}]")))
                .collect::<Vec<_>>()
                .into_iter()
                .collect(),
            Some(_) => self.err("$.casimirs", "expected a list of names"),
        };
        let (report_file, algebra_file) = match obj.get("output") {
            None => (Some("contraction.json".to_string()), Some("contracted_algebra.json".to_string())),
            Some(v) => match self.object(v, "$.output", &["report", "algebra"]) {
                Some(o) => (
                    self.file_name(o, "$.output", "report", "contraction.json"),
                    self.file_name(o, "$.output", "algebra", "contracted_algebra.json"),
                ),
                None => (None, None),
            },
        };
        Some(LieAlgConfig {
            source: source?,
            central: central?,
            basis_change: basis_change?,
            schedule: schedule?,
            target: target?,
            mapping: mapping?,
            casimirs: casimirs?,
            report_file: report_file?,
            algebra_file: algebra_file?,
        })
    }
}
