//! Command-line front end. [`run`] parses arguments, executes one subcommand
//! and returns a [`RunReport`]; the binary only prints it.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::classify2d::{enumerate_grouplike, verify_table1};
use crate::coalgebra::{Coalgebra, CoalgebraError};
use crate::exactfield::{FieldError, FieldSpec};
use crate::fixtures::{hopf_fixture, lie_fixture, rack_fixture, raw_shelf_fixture, FixtureError};
use crate::hochschild::{check_first_order_deformation, cohochschild_d, hochschild_d, total_d, BialgebraCochain, HochschildError};
use crate::liecoh::{
    central_extend, cocycle_basis as lie_cocycle_basis, is_lie_coboundary, lie_cocycle_check, lie_cohomology_dim, lift_psi_hat,
    lift_zeta_hat, virasoro_cocycle, Coefficients, LieAlgebra, LieCochain, LieError,
};
use crate::quandlecoh::{
    cocycle_basis as quandle_cocycle_basis, lift_2cocycle, lift_3cocycle, nontrivial_cocycle, quandle_cohomology_dim, FiniteRack, RackError,
};
use crate::shelfcohomology::{probe_full_complex, Cochain, CohomologyError, ShelfComplex};
use crate::shelfmap::{
    check_comult_compatible, check_counit_behavior, check_self_distributive, q_adjoint, q_from_lie, q_from_rack, ShelfError, ShelfStructure,
};
use crate::tensorspace::LinearMap;
use crate::yangbaxter::{check_adjoint_identities, check_induced_shelf, check_ybe, lie_r_closed_form, q_from_r, r_from_shelf};

/// Seed used by randomized subcommands when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20240607;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Shelf(#[from] ShelfError),
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Rack(#[from] RackError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

#[derive(Debug, Parser)]
#[command(
    name = "shelfcoh",
    version,
    about = "Exact checks for self-distributive maps on coalgebras and their cohomology"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Ground field: q, qi, fp:<p> (or f<p>).
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Rack fixture (dihedral:n, conj:S3, trivial:n) or rack file.
    #[arg(long, global = true)]
    pub rack: Option<String>,
    /// Lie fixture (witt:p, sl2-type) or Lie file.
    #[arg(long, global = true)]
    pub lie: Option<String>,
    /// Hopf fixture (group:Z2, group:Z3, group:S3) or structure file.
    #[arg(long, global = true)]
    pub hopf: Option<String>,
    /// Explicit shelf: trig, trig:<row>, or a structure file with a map `q`.
    #[arg(long, global = true)]
    pub structure: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Replace the Lie algebra by its central extension along a nontrivial
    /// trivial-coefficient 2-cocycle.
    #[arg(long, global = true)]
    pub central_ext: bool,
    /// Include cocycle bases in the report.
    #[arg(long, global = true)]
    pub dump_kernel: bool,
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timings (reports are otherwise reproducible byte for byte).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Self-distributivity, compatibility and counit behaviour of a shelf.
    VerifyShelf,
    /// The Yang–Baxter operator R_q of a shelf.
    YbeCheck,
    /// Whether q_R = (ε⊗1)R is a shelf when R meets the hypotheses.
    #[command(name = "induced-shelf", alias = "thm42-check")]
    InducedShelf,
    /// The adjoint map of a Hopf algebra and its two structural identities.
    #[command(name = "adjoint-identities", alias = "prop46-check")]
    AdjointIdentities,
    /// Dimensions of the restricted shelf cohomology in degree 2 or 3.
    Cohomology,
    /// Lift a nontrivial quandle cocycle into the shelf complex.
    LiftQuandle,
    /// Lift an adjoint Lie cocycle into the shelf complex.
    LiftLie,
    /// Classify the maps on the 2-dimensional group-like coalgebra.
    #[command(name = "enumerate-2d")]
    Enumerate2d,
    /// Verify the trigonometric solution table over ℚ(i).
    #[command(name = "table1-verify", alias = "trig-table-verify")]
    TrigTable,
    /// Hochschild and coHochschild differentials on random cochains.
    HochschildCheck,
    /// First-order deformations against the degree-2 cocycle condition.
    DeformCheck,
    /// Exploratory evaluation of D₃D₂ on pairs with η₂ ≠ 0.
    ProbeFullComplex,
    /// Quandle cohomology dimensions.
    QuandleCohomology,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyShelf => "verify-shelf",
            Command::YbeCheck => "ybe-check",
            Command::InducedShelf => "induced-shelf",
            Command::AdjointIdentities => "adjoint-identities",
            Command::Cohomology => "cohomology",
            Command::LiftQuandle => "lift-quandle",
            Command::LiftLie => "lift-lie",
            Command::Enumerate2d => "enumerate-2d",
            Command::TrigTable => "table1-verify",
            Command::HochschildCheck => "hochschild-check",
            Command::DeformCheck => "deform-check",
            Command::ProbeFullComplex => "probe-full-complex",
            Command::QuandleCohomology => "quandle-cohomology",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Asserted checks decide the exit status; the rest are reported only.
    pub asserted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub subcommand: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<CheckResult>,
    pub values: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
    pub exit_status: i32,
}

impl RunReport {
    fn new(cmd: Command, record_timings: bool) -> Self {
        RunReport {
            subcommand: cmd.name().to_string(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            values: BTreeMap::new(),
            timings_ms: record_timings.then(BTreeMap::new),
            exit_status: 0,
        }
    }

    fn input(&mut self, k: &str, v: impl ToString) {
        self.inputs.insert(k.to_string(), v.to_string());
    }

    fn assert(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            asserted: true,
            detail,
        });
    }

    fn observe(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            asserted: false,
            detail,
        });
    }

    fn value(&mut self, k: &str, v: Value) {
        self.values.insert(k.to_string(), v);
    }

    fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if let Some(tm) = self.timings_ms.as_mut() {
            tm.insert(stage.to_string(), t.elapsed().as_millis());
        }
        out
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn finish(mut self) -> Self {
        self.exit_status = if self.checks.iter().all(|c| c.passed || !c.asserted) {
            0
        } else {
            1
        };
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.subcommand);
        for (k, v) in &self.inputs {
            s.push_str(&format!("  {k} = {v}\n"));
        }
        for c in &self.checks {
            let tag = match (c.asserted, c.passed) {
                (true, true) => "PASS",
                (true, false) => "FAIL",
                (false, true) => "yes ",
                (false, false) => "no  ",
            };
            s.push_str(&format!("  [{tag}] {}", c.name));
            if let Some(d) = &c.detail {
                s.push_str(&format!("  ({d})"));
            }
            s.push('\n');
        }
        for (k, v) in &self.values {
            let text = match v {
                Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("  {k}: {text}\n"));
        }
        if let Some(tm) = &self.timings_ms {
            for (k, v) in tm {
                s.push_str(&format!("  time {k}: {v} ms\n"));
            }
        }
        s.push_str(&format!("exit status {}\n", self.exit_status));
        s
    }
}

fn field_opt(o: &Opts) -> Result<Option<FieldSpec>, CliError> {
    Ok(o.field.as_deref().map(str::parse).transpose()?)
}

fn rng(o: &Opts) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(o.seed.unwrap_or(DEFAULT_SEED))
}

fn require_rack(o: &Opts, rep: &mut RunReport) -> Result<FiniteRack, CliError> {
    let arg = o.rack.as_deref().ok_or_else(|| CliError::Usage("--rack is required".into()))?;
    rep.input("rack", arg);
    Ok(rack_fixture(arg)?)
}

/// A nontrivial trivial-coefficient 2-cocycle: the Virasoro cocycle on
/// Witt algebras, otherwise the first non-coboundary basis cocycle.
fn central_cocycle(arg: &str, g: &LieAlgebra) -> Result<LieCochain, CliError> {
    if let Some(p) = arg.strip_prefix("witt:").and_then(|p| p.parse().ok()) {
        return Ok(virasoro_cocycle(p)?.1);
    }
    lie_cocycle_basis(g, 2, Coefficients::Trivial)
        .into_iter()
        .find(|c| !is_lie_coboundary(c, g))
        .ok_or_else(|| CliError::Usage(format!("{arg} has no nontrivial 2-cocycle to extend along")))
}

fn require_lie(o: &Opts, rep: &mut RunReport) -> Result<LieAlgebra, CliError> {
    let arg = o.lie.as_deref().ok_or_else(|| CliError::Usage("--lie is required".into()))?;
    rep.input("lie", arg);
    let g = lie_fixture(arg, field_opt(o)?)?;
    rep.input("field", g.field());
    if o.central_ext {
        rep.input("central_ext", true);
        let c = central_cocycle(arg, &g)?;
        return Ok(central_extend(&g, &c)?.0);
    }
    Ok(g)
}

/// The shelf named by exactly one of the input flags.
fn shelf_input(o: &Opts, rep: &mut RunReport) -> Result<ShelfStructure, CliError> {
    let field = field_opt(o)?;
    match (&o.rack, &o.lie, &o.hopf, &o.structure) {
        (Some(_), None, None, None) => {
            let r = require_rack(o, rep)?;
            let f = field.unwrap_or(FieldSpec::Rationals);
            rep.input("field", f);
            Ok(q_from_rack(&r, f)?)
        }
        (None, Some(_), None, None) => Ok(q_from_lie(&require_lie(o, rep)?)?),
        (None, None, Some(arg), None) => {
            rep.input("hopf", arg);
            let h = hopf_fixture(arg, field)?;
            rep.input("field", h.space().field());
            Ok(q_adjoint(&h)?)
        }
        (None, None, None, Some(arg)) => {
            rep.input("structure", arg);
            let (c, q) = raw_shelf_fixture(arg, field)?;
            rep.input("field", c.field());
            Ok(ShelfStructure::new(c, q, crate::shelfmap::Provenance::Explicit)?)
        }
        _ => Err(CliError::Usage("give exactly one of --rack, --lie, --hopf, --structure".into())),
    }
}

fn map_list(maps: impl Iterator<Item = String>) -> Value {
    Value::Array(maps.map(Value::String).collect())
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Result<RunReport, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    execute(cli.command, &cli.opts)
}

pub fn execute(cmd: Command, o: &Opts) -> Result<RunReport, CliError> {
    let mut rep = RunReport::new(cmd, o.timings);
    match cmd {
        Command::VerifyShelf => verify_shelf(o, &mut rep)?,
        Command::YbeCheck => ybe(o, &mut rep)?,
        Command::InducedShelf => induced_shelf(o, &mut rep)?,
        Command::AdjointIdentities => adjoint_identities(o, &mut rep)?,
        Command::Cohomology => cohomology(o, &mut rep)?,
        Command::LiftQuandle => lift_quandle(o, &mut rep)?,
        Command::LiftLie => lift_lie(o, &mut rep)?,
        Command::Enumerate2d => enumerate_2d(&mut rep),
        Command::TrigTable => trig_table(&mut rep),
        Command::HochschildCheck => hochschild(o, &mut rep)?,
        Command::DeformCheck => deform(o, &mut rep)?,
        Command::ProbeFullComplex => probe(o, &mut rep)?,
        Command::QuandleCohomology => quandle_cohomology(o, &mut rep)?,
    }
    Ok(rep.finish())
}

fn raw_input(o: &Opts, rep: &mut RunReport) -> Result<(Coalgebra, LinearMap), CliError> {
    if let Some(arg) = &o.structure {
        if o.rack.is_some() || o.lie.is_some() || o.hopf.is_some() {
            return Err(CliError::Usage("give exactly one of --rack, --lie, --hopf, --structure".into()));
        }
        rep.input("structure", arg);
        let (c, q) = raw_shelf_fixture(arg, field_opt(o)?)?;
        rep.input("field", c.field());
        return Ok((c, q));
    }
    let s = shelf_input(o, rep)?;
    Ok((s.coalgebra, s.q))
}

fn verify_shelf(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let (c, q) = raw_input(o, rep)?;
    let (sd, compat, counit) = rep.timed("checks", || {
        (
            check_self_distributive(&q, &c),
            check_comult_compatible(&q, &c),
            check_counit_behavior(&q, &c),
        )
    });
    rep.assert("self_distributive", sd?, None);
    rep.assert("compatible", compat?, None);
    let counit = counit?;
    rep.observe("strict_counit", counit.strict, Some("εq = ε⊗ε".into()));
    if let Some(w) = counit.weak {
        rep.observe("weak_counit", w, Some("εq = q(ε⊗1)".into()));
    }
    rep.value("dim", json!(c.dim()));
    Ok(())
}

fn ybe(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let s = shelf_input(o, rep)?;
    let r = r_from_shelf(&s);
    let ok = rep.timed("ybe", || check_ybe(&r));
    rep.assert("yang_baxter", ok, None);
    rep.assert("counit_round_trip", q_from_r(&r, &s.coalgebra) == s.q, Some("(ε⊗1)R_q = q".into()));
    if o.lie.is_some() {
        let g = require_lie(o, &mut RunReport::new(Command::YbeCheck, false))?;
        rep.assert("lie_closed_form", lie_r_closed_form(&g, &s.coalgebra.space) == r.r, None);
    }
    rep.observe("invertible", r.invertible, None);
    Ok(())
}

fn induced_shelf(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let s = shelf_input(o, rep)?;
    let r = r_from_shelf(&s);
    let report = rep.timed("checks", || check_induced_shelf(&r, &s.coalgebra));
    rep.observe("yang_baxter", report.ybe, None);
    rep.observe("counit_condition", report.counit_condition, Some("(ε⊗ε)R = ε⊗ε".into()));
    rep.observe("fixed_point", report.fixed_point, Some("R_{q_R} = R".into()));
    rep.observe("self_distributive", report.self_distributive, None);
    rep.observe("compatible", report.compatible, None);
    rep.observe("strict_counit", report.strict_counit, None);
    let hypotheses = report.conclusion.is_some();
    rep.observe("hypotheses_hold", hypotheses, None);
    rep.assert(
        "conclusion_consistent",
        report.conclusion != Some(false),
        Some(match report.conclusion {
            Some(true) => "q_R is a shelf in cocommutative coalgebras".into(),
            Some(false) => "hypotheses hold but q_R is not a shelf".into(),
            None => "hypotheses do not hold; nothing to conclude".into(),
        }),
    );
    Ok(())
}

fn adjoint_identities(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let arg = o.hopf.as_deref().ok_or_else(|| CliError::Usage("--hopf is required".into()))?;
    rep.input("hopf", arg);
    let h = hopf_fixture(arg, field_opt(o)?)?;
    rep.input("field", h.space().field());
    let s = q_adjoint(&h)?;
    rep.assert("self_distributive", true, None);
    let ids = rep.timed("identities", || check_adjoint_identities(&s.q, &h));
    rep.assert("product_identity", ids.eq1, Some("q(q⊗1) = q(1⊗μ)".into()));
    rep.assert(
        "coproduct_identity",
        ids.eq2,
        Some("(q⊗μ)(1⊗τ⊗1)(Δ⊗Δ) = (1⊗μ)(τ⊗1)(1⊗Δ)(1⊗q)(τ⊗1)(1⊗Δ)".into()),
    );
    rep.assert("yang_baxter", check_ybe(&r_from_shelf(&s)), None);
    rep.observe("compatible", s.compatible, None);
    Ok(())
}

fn cohomology(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let s = shelf_input(o, rep)?;
    let degree = o.degree.unwrap_or(2);
    rep.input("degree", degree);
    let cx = ShelfComplex::new(&s);
    let dims = rep.timed("ranks", || cx.cohomology_dim(degree))?;
    rep.value("dim_z", json!(dims.z));
    rep.value("dim_b", json!(dims.b));
    rep.value("dim_h", json!(dims.h));
    let (dj, prev) = (cx.restricted(degree)?, cx.restricted(degree - 1)?);
    rep.value("chain_dims", json!([prev.source_dim, dj.source_dim, dj.target_dim]));
    let composite = dj.matrix.mul(&prev.matrix).expect("shapes").is_zero();
    if degree == 2 {
        rep.assert("composite_vanishes", composite, None);
    } else {
        rep.observe(
            "literal_composite_vanishes",
            composite,
            Some("η₁ ↦ d^{2,1}(η₁,0) then d^{3,1}(·,0,0)".into()),
        );
        let c2 = cx.coupled_restricted(2)?;
        let c3 = cx.coupled_restricted(3)?;
        rep.assert(
            "coupled_composite_vanishes",
            c3.matrix.mul(&c2.matrix).expect("shapes").is_zero(),
            None,
        );
    }
    if o.dump_kernel {
        let basis = cx.cocycle_basis(degree)?;
        rep.value("cocycle_basis", map_list(basis.iter().map(|c| c.map.to_text("z"))));
    }
    Ok(())
}

fn lift_quandle(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let r = require_rack(o, rep)?;
    let field = field_opt(o)?.unwrap_or(FieldSpec::Prime(2));
    rep.input("field", field);
    let degree = o.degree.unwrap_or(2);
    rep.input("degree", degree);
    if !(2..=3).contains(&degree) {
        return Err(CliError::Usage("--degree must be 2 or 3".into()));
    }
    let dims = quandle_cohomology_dim(&r, degree, field);
    rep.value("quandle_dims", json!(dims));
    let Some(c) = rep.timed("cocycle", || nontrivial_cocycle(&r, degree, field)) else {
        rep.observe("nontrivial_cocycle", false, Some("quandle cohomology vanishes".into()));
        return Ok(());
    };
    rep.observe("nontrivial_cocycle", true, None);
    rep.value("cocycle", json!(c.values.iter().map(ToString::to_string).collect::<Vec<_>>()));
    let lifted = rep.timed("lift", || {
        if degree == 2 {
            lift_2cocycle(&c, &r, field)
        } else {
            lift_3cocycle(&c, &r, field)
        }
    });
    match lifted {
        Ok((s, hat)) => {
            rep.assert("lift_is_cocycle", true, None);
            let cx = ShelfComplex::new(&s);
            let cob = rep.timed("coboundary", || cx.is_coboundary(&hat))?;
            rep.assert("lift_not_coboundary", !cob, None);
        }
        Err(RackError::LiftFailed) => rep.assert("lift_is_cocycle", false, None),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn first_noncoboundary(g: &LieAlgebra, degree: usize) -> Option<LieCochain> {
    let basis = lie_cocycle_basis(g, degree, Coefficients::Adjoint);
    basis.iter().find(|c| !is_lie_coboundary(c, g)).or(basis.first()).cloned()
}

fn lift_lie(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let arg = o.lie.as_deref().ok_or_else(|| CliError::Usage("--lie is required".into()))?;
    let degree = o.degree.unwrap_or(2);
    rep.input("degree", degree);
    let (g, psi) = if o.central_ext {
        rep.input("lie", arg);
        rep.input("central_ext", true);
        let base = lie_fixture(arg, field_opt(o)?)?;
        rep.input("field", base.field());
        let c = central_cocycle(arg, &base)?;
        rep.assert("trivial_cocycle", lie_cocycle_check(&c, &base), None);
        rep.assert("trivial_not_coboundary", !is_lie_coboundary(&c, &base), None);
        let (g, psi) = central_extend(&base, &c)?;
        rep.assert("extension_cocycle_adjoint", lie_cocycle_check(&psi, &g), None);
        (g, Some(psi))
    } else {
        (require_lie(o, rep)?, None)
    };
    match degree {
        2 => {
            let psi = match psi {
                Some(p) => p,
                None => first_noncoboundary(&g, 2).ok_or_else(|| CliError::Usage("no adjoint 2-cocycle".into()))?,
            };
            rep.observe("lie_coboundary", is_lie_coboundary(&psi, &g), None);
            match rep.timed("lift", || lift_psi_hat(&psi, &g)) {
                Ok((s, hat)) => {
                    rep.assert("lift_is_cocycle", true, Some("d^{2,1} = d^{2,2} = 0".into()));
                    let cob = ShelfComplex::new(&s).is_coboundary(&hat)?;
                    let expected = is_lie_coboundary(&psi, &g);
                    rep.assert(
                        "coboundary_status_preserved",
                        cob == expected,
                        Some(format!("shelf coboundary: {cob}")),
                    );
                }
                Err(LieError::LiftFailed) => rep.assert("lift_is_cocycle", false, None),
                Err(e) => return Err(e.into()),
            }
        }
        3 => {
            let zeta = rep
                .timed("cocycle", || first_noncoboundary(&g, 3))
                .ok_or_else(|| CliError::Usage("no adjoint 3-cocycle".into()))?;
            rep.observe("lie_coboundary", is_lie_coboundary(&zeta, &g), None);
            rep.value("adjoint_h3", json!(lie_cohomology_dim(&g, 3, Coefficients::Adjoint)));
            match rep.timed("lift", || lift_zeta_hat(&zeta, &g)) {
                Ok(_) => rep.assert("lift_is_cocycle", true, Some("d^{3,1}(ζ̂,0,0) = 0".into())),
                Err(LieError::LiftFailed) => rep.assert("lift_is_cocycle", false, None),
                Err(e) => return Err(e.into()),
            }
        }
        _ => return Err(CliError::Usage("--degree must be 2 or 3".into())),
    }
    Ok(())
}

fn enumerate_2d(rep: &mut RunReport) {
    let cls = rep.timed("enumerate", enumerate_grouplike);
    rep.assert(
        "candidate_count",
        cls.candidates == 81,
        Some(format!("{} candidates", cls.candidates)),
    );
    rep.assert("shelves_are_all_nonzero", cls.shelves_are_all_nonzero, None);
    rep.assert("swap_closed", cls.swap_closed, None);
    rep.assert(
        "mixed_values_incompatible",
        cls.mixed_probe.compatible == 0,
        Some(format!("{} sampled", cls.mixed_probe.sampled)),
    );
    let missing: Vec<String> = cls
        .listed
        .iter()
        .filter(|c| !c.found)
        .map(|c| format!("column {} = {}", c.index, c.label))
        .collect();
    rep.assert(
        "listed_columns_are_solutions",
        missing.is_empty(),
        (!missing.is_empty()).then(|| missing.join(", ")),
    );
    rep.assert(
        "solutions_are_listed",
        cls.unlisted_solutions.is_empty(),
        (!cls.unlisted_solutions.is_empty()).then(|| format!("unlisted: {}", cls.unlisted_solutions.join(", "))),
    );
    rep.value("solutions", map_list(cls.solutions.iter().map(|s| s.label.clone())));
    rep.value("shelves", map_list(cls.shelves().map(|s| s.label.clone())));
    rep.value("order", json!("q(x⊗x) q(x⊗y) q(y⊗x) q(y⊗y)"));
}

fn trig_table(rep: &mut RunReport) {
    rep.input("field", FieldSpec::GaussianRationals);
    let rows = rep.timed("verify", verify_table1);
    let passed = rows.iter().filter(|r| r.passes()).count();
    for r in &rows {
        rep.assert(
            &format!("row {:02}", r.index + 1),
            r.passes(),
            Some(format!(
                "sd {} compat {} strict counit {} expected {}",
                r.self_distributive, r.compatible, r.strict_counit, r.counit_predicted
            )),
        );
    }
    rep.value("rows_passed", json!(format!("{passed}/{}", rows.len())));
}

fn hochschild(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let arg = o.hopf.as_deref().unwrap_or("group:Z2");
    rep.input("hopf", arg);
    let h = hopf_fixture(arg, field_opt(o)?)?;
    rep.input("field", h.space().field());
    let trials = o.trials.unwrap_or(50);
    rep.input("trials", trials);
    rep.input("seed", o.seed.unwrap_or(DEFAULT_SEED));
    let mut rng = rng(o);
    let space = h.space().clone();
    let mut counts = [0usize; 5];
    rep.timed("trials", || -> Result<(), CliError> {
        for _ in 0..trials {
            let f = BialgebraCochain::new(LinearMap::random(&space, 1, 1, &mut rng));
            let dh = hochschild_d(&f, &h)?;
            let dc = cohochschild_d(&f, &h)?;
            counts[0] += hochschild_d(&dh, &h)?.is_zero() as usize;
            counts[1] += cohochschild_d(&dc, &h)?.is_zero() as usize;
            counts[2] += (cohochschild_d(&dh, &h)? == hochschild_d(&dc, &h)?) as usize;
            counts[3] += total_d(&total_d(&[f], &h)?, &h)?.iter().all(BialgebraCochain::is_zero) as usize;
            let phi = [
                BialgebraCochain::new(LinearMap::random(&space, 2, 1, &mut rng)),
                BialgebraCochain::new(LinearMap::random(&space, 1, 2, &mut rng)),
            ];
            counts[4] += total_d(&total_d(&phi, &h)?, &h)?.iter().all(BialgebraCochain::is_zero) as usize;
        }
        Ok(())
    })?;
    let names = [
        ("hochschild_squares_vanish", "d_H∘d_H = 0"),
        ("cohochschild_squares_vanish", "d_C∘d_C = 0"),
        ("differentials_commute", "d_C d_H = d_H d_C"),
        ("total_square_vanishes_degree_1", "D∘D = 0"),
        ("total_square_vanishes_degree_2", "D∘D = 0"),
    ];
    for ((n, formula), c) in names.iter().zip(counts) {
        rep.assert(n, c == trials, Some(format!("{formula}: {c}/{trials}")));
    }
    Ok(())
}

fn deform(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let s = shelf_input(o, rep)?;
    let trials = o.trials.unwrap_or(50);
    rep.input("trials", trials);
    rep.input("seed", o.seed.unwrap_or(DEFAULT_SEED));
    let mut rng = rng(o);
    let cx = ShelfComplex::new(&s);
    let space = s.coalgebra.space.clone();
    let mut agree = 0;
    let mut cocycles = 0;
    let mut positives_ok = 0;
    let positives = trials.div_ceil(5);
    rep.timed("trials", || -> Result<(), CliError> {
        for _ in 0..trials {
            let r = check_first_order_deformation(
                &s,
                &LinearMap::random(&space, 2, 1, &mut rng),
                &LinearMap::random(&space, 1, 2, &mut rng),
            )?;
            agree += r.agree as usize;
            cocycles += r.is_2cocycle as usize;
        }
        for _ in 0..positives {
            let (e1, e2) = cx.d1(&Cochain::random(&s, 1, 1, &mut rng));
            let r = check_first_order_deformation(&s, &e1.map, &e2.map)?;
            positives_ok += (r.agree && r.axioms_mod_t2) as usize;
        }
        Ok(())
    })?;
    let zero = check_first_order_deformation(&s, &LinearMap::zero(&space, 2, 1), &LinearMap::zero(&space, 1, 2))?;
    rep.assert(
        "random_pairs_agree",
        agree == trials,
        Some(format!("{agree}/{trials}, {cocycles} cocycles")),
    );
    rep.assert(
        "coboundary_pairs_deform",
        positives_ok == positives,
        Some(format!("{positives_ok}/{positives}")),
    );
    rep.assert("zero_pair_deforms", zero.axioms_mod_t2 && zero.is_2cocycle, None);
    Ok(())
}

fn probe(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let s = shelf_input(o, rep)?;
    let trials = o.trials.unwrap_or(10);
    let seed = o.seed.unwrap_or(DEFAULT_SEED);
    rep.input("trials", trials);
    rep.input("seed", seed);
    let p = rep.timed("probe", || probe_full_complex(&s, trials, seed))?;
    for kind in ["zero", "eta1_only", "symmetric_eta2", "random"] {
        let n = p.trials.iter().filter(|t| t.kind == kind).count();
        rep.value(
            &format!("vanishing_{kind}"),
            json!({ "trials": n, "per_component": p.summary(kind) }),
        );
    }
    Ok(())
}

fn quandle_cohomology(o: &Opts, rep: &mut RunReport) -> Result<(), CliError> {
    let r = require_rack(o, rep)?;
    let field = field_opt(o)?.unwrap_or(FieldSpec::Prime(2));
    rep.input("field", field);
    let degree = o.degree.unwrap_or(2);
    if !(1..=3).contains(&degree) {
        return Err(CliError::Usage("--degree must be 1, 2 or 3".into()));
    }
    rep.input("degree", degree);
    rep.input("quandle", r.quandle);
    let dims = rep.timed("ranks", || quandle_cohomology_dim(&r, degree, field));
    rep.value("dim_z", json!(dims.z));
    rep.value("dim_b", json!(dims.b));
    rep.value("dim_h", json!(dims.h));
    if o.dump_kernel {
        let basis = quandle_cocycle_basis(&r, degree, field);
        rep.value(
            "cocycle_basis",
            Value::Array(
                basis
                    .iter()
                    .map(|c| json!(c.values.iter().map(ToString::to_string).collect::<Vec<_>>()))
                    .collect(),
            ),
        );
    }
    Ok(())
}
