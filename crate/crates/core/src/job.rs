//! Batch jobs: a validated configuration goes in, a schema-versioned report
//! envelope and an exit status come out.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::completion::{
    crt_bijectivity, kernel_intersection_check, odometer_checks, orbit_product_check, same_orbit,
    OrbitProductReport, OrbitVerdict, RationalTorusPoint,
};
use crate::endo::{crt_check, independent, validate_standard, CrtReport, GroupFamily, IndependenceReport, LatticeEndo, StandardEndoReport};
use crate::error::{Error, Result};
use crate::harness::{
    check_p1_p4, check_pi, check_rel, trace_density, PiReport, RelationReport, TraceDensityReport, Verdict,
    Window, DEFAULT_MIN_COMPARED,
};
use crate::ktheory::{b_map, classify, k_endo, k_poly, k_shift, k_solenoid, poincare_check, ClassificationFlags, KReport};
use crate::lattice::IntMatrix;

pub const SCHEMA_VERSION: &str = "1.0";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const MAX_RANK: usize = 8;
pub const MAX_WINDOW: i64 = 512;
pub const MAX_DEPTH: usize = 16;
pub const MAX_ORBIT_DEPTH: usize = 12;
pub const DEFAULT_DEPTH: usize = 3;
pub const DEFAULT_ORBIT_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Endo,
    Poly,
    Verify,
    Complete,
    Orbit,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::Parse(format!("unknown format '{other}', expected json or text"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub window: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_compared: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<RationalTorusPoint>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<RationalTorusPoint>,
}

/// One analysis request. `matrix` is the single endomorphism; `phi`, `psi`
/// form a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none", default, with = "family_str")]
    pub family: Option<GroupFamily>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<IntMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phi: Option<IntMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub psi: Option<IntMatrix>,
    #[serde(default)]
    pub parameters: Parameters,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub format: Option<Format>,
}

mod family_str {
    use super::GroupFamily;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &Option<GroupFamily>, s: S) -> Result<S::Ok, S::Error> {
        match f {
            Some(f) => s.serialize_str(&f.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<GroupFamily>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| GroupFamily::parse(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        JobConfig {
            command,
            family: None,
            matrix: None,
            phi: None,
            psi: None,
            parameters: Parameters::default(),
            output: None,
            format: None,
        }
    }

    /// Parses a TOML job file; errors carry line and column.
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string().trim().to_string()))
    }

    fn lattice_family(&self) -> bool {
        matches!(self.family, None | Some(GroupFamily::Lattice { .. }))
    }

    /// Checks shapes and caps.
    pub fn validate(&self) -> Result<()> {
        if let Some(f) = &self.family {
            f.validate()?;
        }
        for m in [&self.matrix, &self.phi, &self.psi].into_iter().flatten() {
            if m.rows() > MAX_RANK || m.cols() > MAX_RANK {
                return Err(Error::Cap(format!("rank {} exceeds the cap {MAX_RANK}", m.rows().max(m.cols()))));
            }
        }
        let p = &self.parameters;
        if let Some(w) = p.window {
            if w > MAX_WINDOW {
                return Err(Error::Cap(format!("window radius {w} exceeds the cap {MAX_WINDOW}")));
            }
            if w < 1 {
                return Err(Error::Parameter(format!("window radius must be at least 1, got {w}")));
            }
        }
        if let Some(d) = p.depth {
            let cap = if self.command == Command::Orbit { MAX_ORBIT_DEPTH } else { MAX_DEPTH };
            if d > cap {
                return Err(Error::Cap(format!("depth {d} exceeds the cap {cap}")));
            }
        }
        if !self.lattice_family() && self.command != Command::Endo {
            return Err(Error::Parameter(format!(
                "family {} is only supported by the endo command",
                self.family.as_ref().map(ToString::to_string).unwrap_or_default()
            )));
        }
        let pair = self.phi.is_some() || self.psi.is_some();
        if pair && (self.phi.is_none() || self.psi.is_none()) {
            return Err(Error::Parameter("a pair needs both phi and psi".into()));
        }
        if pair && self.matrix.is_some() {
            return Err(Error::Parameter("give either matrix or phi/psi, not both".into()));
        }
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(Error::Parameter(what.into())) };
        match self.command {
            Command::Endo if self.lattice_family() => need(self.matrix.is_some(), "endo needs --matrix for the lattice family"),
            Command::Endo => Ok(()),
            Command::Poly => need(pair, "poly needs --phi and --psi"),
            Command::Verify | Command::Complete => need(pair || self.matrix.is_some(), "needs --matrix or --phi/--psi"),
            Command::Orbit => {
                need(p.x.is_some(), "orbit needs --x")?;
                if pair {
                    Ok(())
                } else {
                    need(self.matrix.is_some() && p.y.is_some(), "orbit needs --matrix with --x and --y, or --phi/--psi with --x")
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ChecksFailed,
    ValidationError,
    InvariantViolation,
}

impl Status {
    /// 0 success, 1 invariant violation, 2 validation rejection, 3 a check
    /// failed or was inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvariantViolation => 1,
            Status::ValidationError => 2,
            Status::ChecksFailed => 3,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BMapChecks {
    /// `b(φ)` is integral in every degree.
    pub integral: bool,
    /// `b(φ) Λφ = N(φ) id` in every degree.
    pub defining_identity: bool,
    pub poincare_duality: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub endomorphisms: Vec<StandardEndoReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub independence: Option<IndependenceReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub crt: Option<CrtReport>,
    pub b_maps: Vec<BMapChecks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSection {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub same_orbit: Option<OrbitVerdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub product: Option<OrbitProductReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema_version: String,
    pub tool_version: String,
    pub input: JobConfig,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorInfo>,
    pub validation: Validation,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flags: Option<ClassificationFlags>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ktheory: Option<KReport>,
    pub checks: Vec<RelationReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pi: Option<PiReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace_density: Option<TraceDensityReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit: Option<OrbitSection>,
    pub warnings: Vec<String>,
}

impl ReportEnvelope {
    fn empty(input: JobConfig) -> Self {
        ReportEnvelope {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            input,
            status: Status::Ok,
            error: None,
            validation: Validation::default(),
            flags: None,
            ktheory: None,
            checks: Vec::new(),
            pi: None,
            trace_density: None,
            orbit: None,
            warnings: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// A report for input that failed to parse.
    pub fn parse_failure(command: Command, err: &Error) -> Self {
        let mut env = Self::empty(JobConfig::new(command));
        env.fail(err);
        env
    }

    fn fail(&mut self, err: &Error) {
        self.status = if err.is_validation() { Status::ValidationError } else { Status::InvariantViolation };
        self.error = Some(ErrorInfo {
            kind: err.kind().into(),
            message: err.to_string(),
        });
    }

    fn all_verdicts_positive(&self) -> bool {
        let checks = self.checks.iter().all(RelationReport::passed);
        let pi = self.pi.as_ref().is_none_or(|p| p.verdict == Verdict::Pass);
        let density = self.trace_density.as_ref().is_none_or(|d| d.verdict == Verdict::Pass);
        let orbit = self
            .orbit
            .as_ref()
            .and_then(|o| o.product.as_ref())
            .is_none_or(|p| p.verdict);
        let crt = self.validation.crt.as_ref().is_none_or(|c| c.ok);
        let bmaps = self
            .validation
            .b_maps
            .iter()
            .all(|b| b.integral && b.defining_identity && b.poincare_duality);
        checks && pi && density && orbit && crt && bmaps
    }
}

fn endo_of(m: &Option<IntMatrix>, name: &str) -> Result<LatticeEndo> {
    let m = m.clone().ok_or_else(|| Error::Parameter(format!("missing {name}")))?;
    LatticeEndo::new(m)
}

fn b_checks(e: &LatticeEndo) -> Result<BMapChecks> {
    let b = b_map(e)?;
    let lam = crate::ktheory::lambda_functor(e.matrix())?;
    Ok(BMapChecks {
        integral: true,
        defining_identity: b.compose(&lam)? == crate::ktheory::norm_identity(e),
        poincare_duality: poincare_check(e)?,
    })
}

fn window_for(cfg: &JobConfig, n: usize) -> Result<Window> {
    match cfg.parameters.window {
        Some(r) => Window::new(n, r),
        None => Window::default_for(n),
    }
}

fn run_inner(cfg: &JobConfig, env: &mut ReportEnvelope) -> Result<()> {
    cfg.validate()?;
    let p = &cfg.parameters;
    let min = p.min_compared.unwrap_or(DEFAULT_MIN_COMPARED);
    match cfg.command {
        Command::Endo => match cfg.family.clone().unwrap_or(GroupFamily::Lattice { n: 0 }) {
            GroupFamily::Shift { n } => {
                env.ktheory = Some(k_shift(n, p.level)?);
                env.flags = Some(single_flags());
            }
            GroupFamily::Solenoid { p: a, q } => {
                env.ktheory = Some(k_solenoid(a, q)?);
                env.flags = Some(single_flags());
            }
            GroupFamily::Lattice { .. } => {
                let e = endo_of(&cfg.matrix, "matrix")?;
                env.validation.endomorphisms.push(validate_standard(&e));
                env.validation.b_maps.push(b_checks(&e)?);
                env.ktheory = Some(k_endo(&e)?);
                env.flags = Some(classify(&e, None)?);
            }
        },
        Command::Poly => {
            let (f, g) = (endo_of(&cfg.phi, "phi")?, endo_of(&cfg.psi, "psi")?);
            env.validation.endomorphisms.push(validate_standard(&f));
            env.validation.endomorphisms.push(validate_standard(&g));
            env.validation.independence = Some(independent(&f, &g)?);
            env.ktheory = Some(k_poly(&f, &g)?);
            env.validation.crt = Some(crt_check(&f, &g)?);
            for e in [&f, &g, &f.compose(&g)?] {
                env.validation.b_maps.push(b_checks(e)?);
            }
            env.flags = Some(classify(&f, Some(&g))?);
        }
        Command::Verify => {
            if let Some(m) = &cfg.matrix {
                let e = LatticeEndo::new(m.clone())?;
                let w = window_for(cfg, e.rank())?;
                env.checks = check_rel(&e, w, min)?;
                env.trace_density = Some(trace_density(&e, None, w)?);
            } else {
                let (f, g) = (endo_of(&cfg.phi, "phi")?, endo_of(&cfg.psi, "psi")?);
                let w = window_for(cfg, f.rank())?;
                let ind = independent(&f, &g)?;
                env.pi = Some(check_pi(&f, &g, w, min)?);
                if ind.verdict {
                    env.checks = check_p1_p4(&f, &g, w, min)?;
                    env.trace_density = Some(trace_density(&f, Some(&g), w)?);
                } else {
                    env.warnings.push("pair is not independent: P1-P4 and trace density skipped".into());
                }
                env.validation.independence = Some(ind);
            }
        }
        Command::Complete => {
            let depth = p.depth.unwrap_or(DEFAULT_DEPTH);
            if let Some(m) = &cfg.matrix {
                let e = LatticeEndo::new(m.clone())?;
                env.checks = odometer_checks(&e, depth)?;
            } else {
                let (f, g) = (endo_of(&cfg.phi, "phi")?, endo_of(&cfg.psi, "psi")?);
                env.validation.independence = Some(independent(&f, &g)?);
                env.checks = odometer_checks(&f, depth)?;
                env.checks.extend(odometer_checks(&g, depth)?);
                env.checks.push(crt_bijectivity(&f, &g, depth)?);
                env.checks.push(kernel_intersection_check(&f, &g, depth)?);
            }
        }
        Command::Orbit => {
            let depth = p.depth.unwrap_or(DEFAULT_ORBIT_DEPTH);
            let x = p.x.clone().expect("validated");
            if let Some(m) = &cfg.matrix {
                let e = LatticeEndo::new(m.clone())?;
                let y = p.y.clone().expect("validated");
                let v = same_orbit(&e, &x, &y, depth)?;
                if !v.found() {
                    env.warnings.push(format!("no common orbit point within depth {depth}; larger depths not searched"));
                }
                env.orbit = Some(OrbitSection { same_orbit: Some(v), product: None });
            } else {
                let (f, g) = (endo_of(&cfg.phi, "phi")?, endo_of(&cfg.psi, "psi")?);
                let r = orbit_product_check(&f, &g, &x, depth)?;
                env.orbit = Some(OrbitSection { same_orbit: None, product: Some(r) });
            }
        }
    }
    Ok(())
}

fn single_flags() -> ClassificationFlags {
    ClassificationFlags {
        simple: true,
        purely_infinite: true,
        unique_trace: false,
    }
}

/// Runs a job. Failures are recorded in the envelope, never returned.
pub fn run(cfg: &JobConfig) -> ReportEnvelope {
    let mut env = ReportEnvelope::empty(cfg.clone());
    match run_inner(cfg, &mut env) {
        Ok(()) => {
            if !env.all_verdicts_positive() {
                env.status = Status::ChecksFailed;
            }
        }
        Err(e) => env.fail(&e),
    }
    env
}

/// JSON (pretty, trailing newline) or a plain-text summary.
pub fn render(env: &ReportEnvelope, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(env).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(env),
    }
}

pub fn parse_report(json: &str) -> Result<ReportEnvelope> {
    serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
}

fn render_text(env: &ReportEnvelope) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "endok {} (schema {})", env.tool_version, env.schema_version);
    let _ = writeln!(s, "command: {}", format!("{:?}", env.input.command).to_lowercase());
    let _ = writeln!(s, "status: {:?} (exit {})", env.status, env.exit_code());
    if let Some(e) = &env.error {
        let _ = writeln!(s, "error: {}", e.message);
    }
    for r in &env.validation.endomorphisms {
        let _ = writeln!(
            s,
            "endomorphism: index {}, cokernel {}, charpoly {}, exact {}{}",
            r.index,
            r.cokernel,
            r.charpoly,
            r.exact,
            r.exactness_witness.as_ref().map(|w| format!(" (factor {w})")).unwrap_or_default()
        );
    }
    if let Some(i) = &env.validation.independence {
        let _ = writeln!(
            s,
            "independence: commute {}, sum {}, index {}, intersection {}, verdict {}",
            i.commute, i.cond_a, i.cond_b, i.cond_c, i.verdict
        );
    }
    if let Some(c) = &env.validation.crt {
        let _ = writeln!(s, "crt: {} = {} ({})", c.lhs, c.rhs, c.ok);
    }
    for b in &env.validation.b_maps {
        let _ = writeln!(
            s,
            "b-map: integral {}, identity {}, duality {}",
            b.integral, b.defining_identity, b.poincare_duality
        );
    }
    if let Some(f) = &env.flags {
        let _ = writeln!(
            s,
            "flags: simple {}, purely infinite {}, unique trace {}",
            f.simple, f.purely_infinite, f.unique_trace
        );
    }
    if let Some(k) = &env.ktheory {
        let _ = writeln!(s, "{k}");
        let _ = writeln!(s, "  split: {}", k.split);
        if let Some(b) = &k.k_b {
            let join = |v: &[crate::ktheory::Label]| {
                if v.is_empty() {
                    "0".to_string()
                } else {
                    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ⊕ ")
                }
            };
            let _ = writeln!(s, "  K0(B) = {}, K1(B) = {}", join(&b.k0), join(&b.k1));
        }
    }
    for c in &env.checks {
        let _ = writeln!(s, "check {c}");
    }
    if let Some(p) = &env.pi {
        let _ = writeln!(s, "pi: equal {}, expected {}, agree {} -> {}", p.equal, p.expected, p.agree, p.verdict);
    }
    if let Some(d) = &env.trace_density {
        for e in &d.entries {
            let _ = writeln!(
                s,
                "density {}: measured {}, predicted {}, deviation {:.6} (tol {:.6}) {}",
                e.quantity,
                e.measured,
                e.predicted,
                e.deviation,
                e.tolerance,
                if e.ok { "ok" } else { "FAIL" }
            );
        }
    }
    if let Some(o) = &env.orbit {
        match &o.same_orbit {
            Some(OrbitVerdict::Found { n, m, point }) => {
                let _ = writeln!(s, "same orbit: alpha^{n}(y) = alpha^{m}(x) = {point}");
            }
            Some(OrbitVerdict::NotFoundWithin { depth }) => {
                let _ = writeln!(s, "same orbit: not found within depth {depth}");
            }
            None => {}
        }
        if let Some(p) = &o.product {
            let _ = writeln!(
                s,
                "orbit product: kernel intersection trivial {}, max coset intersection {} over {} pairs, segment intersection {}, verdict {}",
                p.kernel_intersection_trivial, p.max_coset_intersection, p.pairs_checked, p.orbit_segment_intersection, p.verdict
            );
        }
    }
    for w in &env.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::mat;

    fn job(command: Command) -> JobConfig {
        JobConfig::new(command)
    }

    #[test]
    fn endo_pipeline() {
        let mut cfg = job(Command::Endo);
        cfg.matrix = Some(mat(&[&[2]]));
        let env = run(&cfg);
        assert_eq!(env.exit_code(), 0);
        let k = env.ktheory.as_ref().unwrap();
        assert_eq!(k.k0.label_strings(), ["Z"]);
        assert_eq!(k.k1.label_strings(), ["Z"]);
        let f = env.flags.unwrap();
        assert!(f.simple && f.purely_infinite);
    }

    #[test]
    fn not_exact_is_a_validation_error() {
        let mut cfg = job(Command::Endo);
        cfg.matrix = Some(mat(&[&[2, 0], &[0, 1]]));
        let env = run(&cfg);
        assert_eq!(env.exit_code(), 2);
        assert_eq!(env.error.unwrap().message, "not exact: factor x - 1");
    }

    #[test]
    fn dependent_pair_rejected() {
        let mut cfg = job(Command::Poly);
        cfg.phi = Some(mat(&[&[2]]));
        cfg.psi = Some(mat(&[&[2]]));
        let env = run(&cfg);
        assert_eq!(env.exit_code(), 2);
        assert_eq!(env.error.unwrap().message, "independence fails: φG + ψG ≠ G");
    }

    #[test]
    fn caps_enforced() {
        let mut cfg = job(Command::Verify);
        cfg.matrix = Some(mat(&[&[2]]));
        cfg.parameters.window = Some(513);
        assert_eq!(run(&cfg).exit_code(), 2);
        let mut cfg = job(Command::Orbit);
        cfg.matrix = Some(mat(&[&[2]]));
        cfg.parameters.x = Some("1/3".parse().unwrap());
        cfg.parameters.y = Some("1/5".parse().unwrap());
        cfg.parameters.depth = Some(13);
        assert_eq!(run(&cfg).exit_code(), 2);
    }

    #[test]
    fn json_round_trip() {
        let mut cfg = job(Command::Poly);
        cfg.phi = Some(mat(&[&[5]]));
        cfg.psi = Some(mat(&[&[3]]));
        let env = run(&cfg);
        let a = render(&env, Format::Json);
        let b = render(&parse_report(&a).unwrap(), Format::Json);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["checks"], serde_json::json!([]));
    }

    #[test]
    fn solenoid_json_labels() {
        let mut cfg = job(Command::Endo);
        cfg.family = Some(GroupFamily::Solenoid { p: 2, q: 3 });
        let env = run(&cfg);
        assert_eq!(env.exit_code(), 0);
        let v: serde_json::Value = serde_json::to_value(&env).unwrap();
        assert_eq!(v["ktheory"]["labels"]["K0"], serde_json::json!(["Z/2", "Z[1/2]"]));
        assert_eq!(v["ktheory"]["labels"]["K1"], serde_json::json!(["Z[1/2]"]));
    }

    #[test]
    fn toml_job() {
        let cfg = JobConfig::from_toml("command = \"poly\"\nphi = [[5]]\npsi = [[3]]\n[parameters]\nwindow = 32\n").unwrap();
        assert_eq!(cfg.phi, Some(mat(&[&[5]])));
        assert_eq!(cfg.parameters.window, Some(32));
        let err = JobConfig::from_toml("command = \"poly\"\nphi = [[5]\n").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
        assert!(JobConfig::from_toml("command = \"nope\"").is_err());
    }
}
