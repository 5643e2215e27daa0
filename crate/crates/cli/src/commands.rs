use std::fs;
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::{json, Value};

use wmtrop_core::batch::par_map;
use wmtrop_core::monodromy::{
    check_wmc, default_tolerance, monodromy_filtration, weight_decomposition, weight_filtration, FrobeniusData,
    NilpotentOperator, Violation, WmcReport,
};
use wmtrop_core::rational::{format_rational, parse_decimal_or_rational};
use wmtrop_core::tropbundle::{
    ample_with_abelian_part, construct_f, extends_to, form_matrix, leading_minors, minimal_level, verify_section,
    BundleData, SectionReport,
};
use wmtrop_core::troplattice::{
    descriptor, dual_graph, max_dividing_width, quotient_components, tower_preimages, tower_project, QuotientModel,
};
use wmtrop_core::{Error, Rational};

use crate::report::{Report, Status};
use crate::schema::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    WmcCheck,
    MonodromyFiltration,
    WeightFiltration,
    TropModel,
    TropTower,
    BundleExtend,
    BundleMinlevel,
    BundleConstructF,
    BundleVerifyF,
    BundleAmple,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::WmcCheck => "wmc-check",
            Command::MonodromyFiltration => "monodromy-filtration",
            Command::WeightFiltration => "weight-filtration",
            Command::TropModel => "trop-model",
            Command::TropTower => "trop-tower",
            Command::BundleExtend => "bundle-extend",
            Command::BundleMinlevel => "bundle-minlevel",
            Command::BundleConstructF => "bundle-construct-f",
            Command::BundleVerifyF => "bundle-verify-f",
            Command::BundleAmple => "bundle-ample",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Dot,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    File(PathBuf),
    Inline(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub input: Input,
    pub format: Format,
    /// Weil-weight tolerance, as a rational or decimal string.
    pub tol: Option<String>,
}

pub const DEFAULT_TOL: &str = "1/100000000000000000000";

/// Result of a job (or batch): reports in input order plus the rendered
/// output. `batch` records whether the input was an array.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub reports: Vec<Report>,
    pub batch: bool,
}

impl RunOutput {
    pub fn status(&self) -> Status {
        crate::report::overall(&self.reports)
    }

    pub fn exit_code(&self) -> i32 {
        self.status().exit_code()
    }

    /// Deterministic rendering; `Err` when the format does not apply.
    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => {
                let v = if self.batch {
                    Value::Array(self.reports.iter().map(Report::to_json).collect())
                } else {
                    self.reports[0].to_json()
                };
                Ok(serde_json::to_string_pretty(&v).expect("json") + "\n")
            }
            Format::Text => Ok(self.reports.iter().map(Report::to_text).collect::<Vec<_>>().join("---\n")),
            Format::Dot => {
                let mut out = String::new();
                for r in &self.reports {
                    match &r.dot {
                        Some(d) => out.push_str(d),
                        None => return Err(format!("{}: no DOT rendering (only trop-model on rank-1 lattices)", r.command)),
                    }
                }
                Ok(out)
            }
        }
    }
}

pub fn run(job: &JobSpec) -> RunOutput {
    let name = job.command.name();
    let single_error = |msg: String| RunOutput { reports: vec![Report::error(name, msg)], batch: false };
    let tol = match parse_tol(job.tol.as_deref()) {
        Ok(t) => t,
        Err(e) => return single_error(e),
    };
    let text = match &job.input {
        Input::Inline(s) => s.clone(),
        Input::File(p) => match fs::read_to_string(p) {
            Ok(s) => s,
            Err(e) => return single_error(format!("cannot read {}: {e}", p.display())),
        },
    };
    let value: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return single_error(format!("field `<root>`: invalid JSON: {e}")),
    };
    match value {
        Value::Array(items) => {
            let reports = par_map(&items, |v| run_value(job.command, v, &tol));
            RunOutput { reports, batch: true }
        }
        v => RunOutput { reports: vec![run_value(job.command, &v, &tol)], batch: false },
    }
}

pub fn parse_tol(s: Option<&str>) -> Result<Rational, String> {
    let Some(s) = s else { return Ok(default_tolerance()) };
    match parse_decimal_or_rational(s) {
        Ok(t) if t > Rational::default() => Ok(t),
        Ok(_) => Err(format!("--tol must be positive, got {s}")),
        Err(e) => Err(format!("--tol: {e}")),
    }
}

enum JobError {
    Schema(SchemaError),
    Domain(Error),
}

impl From<SchemaError> for JobError {
    fn from(e: SchemaError) -> Self {
        JobError::Schema(e)
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        JobError::Domain(e)
    }
}

struct Outcome {
    status: Status,
    payload: Value,
    diagnostics: Vec<String>,
    dot: Option<String>,
}

impl Outcome {
    fn new(pass: bool, payload: Value) -> Self {
        Outcome { status: if pass { Status::Pass } else { Status::Fail }, payload, diagnostics: Vec::new(), dot: None }
    }

    fn with(mut self, diagnostics: Vec<String>) -> Self {
        self.diagnostics.extend(diagnostics);
        self
    }
}

/// Runs one job object.
pub fn run_value(command: Command, v: &Value, tol: &Rational) -> Report {
    let name = command.name();
    match dispatch(command, v, tol) {
        Ok(o) => Report { command: name.to_string(), status: o.status, payload: o.payload, diagnostics: o.diagnostics, dot: o.dot },
        Err(JobError::Schema(e)) => Report::error(name, e.to_string()),
        Err(JobError::Domain(e)) => Report::error(name, e.to_string()),
    }
}

fn fields(command: Command) -> &'static [&'static str] {
    match command {
        Command::WmcCheck => &["schema_version", "n", "phi", "q", "i", "strict_range"],
        Command::MonodromyFiltration => &["schema_version", "n"],
        Command::WeightFiltration => &["schema_version", "phi", "q"],
        Command::TropModel => &["schema_version", "lattice", "alpha", "p", "level"],
        Command::TropTower => &["schema_version", "lattice", "alpha", "p", "level", "steps"],
        Command::BundleExtend => &["schema_version", "bundle", "alpha", "p"],
        Command::BundleMinlevel => &["schema_version", "bundle", "alpha", "p"],
        Command::BundleConstructF => &["schema_version", "bundle", "alpha"],
        Command::BundleVerifyF => &["schema_version", "bundle", "section"],
        Command::BundleAmple => &["schema_version", "bundle"],
    }
}

fn dispatch(command: Command, v: &Value, tol: &Rational) -> Result<Outcome, JobError> {
    let o = Obj::new(v, "", fields(command))?;
    check_version(&o)?;
    match command {
        Command::WmcCheck => wmc_check(&o, tol),
        Command::MonodromyFiltration => {
            let n = nilpotent(&o)?;
            let fil = monodromy_filtration(&n);
            Ok(Outcome::new(true, json!({ "nilpotency_index": n.nilpotency_index(), "filtration": filtration_to_json(&fil) })))
        }
        Command::WeightFiltration => {
            let f = frobenius(&o)?;
            match weight_decomposition(&f, tol) {
                Ok(w) => {
                    let comps: Vec<Value> = w
                        .components()
                        .iter()
                        .map(|(k, s)| json!({ "weight": k, "dim": s.dim(), "basis": matrix_to_json(s.basis()) }))
                        .collect();
                    let fil = weight_filtration(&w);
                    Ok(Outcome::new(true, json!({ "components": comps, "filtration": filtration_to_json(&fil) })))
                }
                Err(e @ Error::NotPure { .. }) => Ok(Outcome::new(false, Value::Null).with(vec![e.to_string()])),
                Err(e) => Err(e.into()),
            }
        }
        Command::TropModel => trop_model(&o),
        Command::TropTower => trop_tower(&o),
        Command::BundleExtend => bundle_extend(&o),
        Command::BundleMinlevel => {
            let b = bundle(&o)?;
            let alpha = parse_width(o.req("alpha")?, &o.path("alpha"))?;
            let p = o.u64("p")?;
            match minimal_level(&b, &alpha, p) {
                Ok(n) => Ok(Outcome::new(
                    true,
                    json!({ "minimal_level": n, "width": rational_to_json(alpha.refine(p, n).value()) }),
                )),
                Err(e @ Error::NoPLevel { .. }) => {
                    Ok(Outcome::new(false, json!({ "minimal_level": Value::Null })).with(vec![e.to_string()]))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::BundleConstructF => {
            let b = bundle(&o)?;
            let alpha = parse_width(o.req("alpha")?, &o.path("alpha"))?;
            let f = construct_f(&b, &alpha)?;
            let r = verify_section(&b, &f)?;
            Ok(Outcome::new(r.passed(), json!({ "section": section_to_json(&f), "verified": r.passed() }))
                .with(r.diagnostics))
        }
        Command::BundleVerifyF => {
            let b = bundle(&o)?;
            let defaults = rank_one_defaults(&b);
            let f = parse_section(
                o.req("section")?,
                &o.path("section"),
                defaults.as_ref().map(|(l, d, v)| (l, d, v)),
            )?;
            let r = verify_section(&b, &f)?;
            let diagnostics = r.diagnostics.clone();
            Ok(Outcome::new(r.passed(), section_report_json(&r)).with(diagnostics))
        }
        Command::BundleAmple => {
            let b = bundle(&o)?;
            let minors: Vec<Value> = leading_minors(&b).iter().map(rational_to_json).collect();
            let definite = wmtrop_core::tropbundle::ample_check(&b);
            let ample = ample_with_abelian_part(&b);
            let mut diagnostics = Vec::new();
            if !definite {
                diagnostics.push("form S is not positive definite".to_string());
            }
            if !b.abelian_part_ample {
                diagnostics.push("abelian part is not ample".to_string());
            }
            Ok(Outcome::new(
                ample,
                json!({
                    "form": matrix_to_json(&form_matrix(&b)),
                    "leading_minors": minors,
                    "positive_definite": definite,
                    "abelian_part_ample": b.abelian_part_ample,
                    "ample": ample,
                }),
            )
            .with(diagnostics))
        }
    }
}

fn nilpotent(o: &Obj<'_>) -> Result<NilpotentOperator, JobError> {
    let m = parse_square(o.req("n")?, &o.path("n"))?;
    NilpotentOperator::new(m).map_err(|e| SchemaError::new(o.path("n"), e.to_string()).into())
}

fn frobenius(o: &Obj<'_>) -> Result<FrobeniusData, JobError> {
    let m = parse_square(o.req("phi")?, &o.path("phi"))?;
    let q = o.i64("q")?;
    FrobeniusData::new(m, q).map_err(|e| {
        let field = if matches!(e, Error::BadQ(_)) { o.path("q") } else { o.path("phi") };
        SchemaError::new(field, e.to_string()).into()
    })
}

fn bundle(o: &Obj<'_>) -> Result<BundleData, JobError> {
    Ok(parse_bundle(o.req("bundle")?, &o.path("bundle"))?)
}

/// `(λ, d, v)` for a rank-1 bundle, normalized to a positive generator.
fn rank_one_defaults(b: &BundleData) -> Option<(Rational, Rational, Rational)> {
    if b.rank() != 1 {
        return None;
    }
    let lambda = b.lattice().generators()[(0, 0)].clone();
    let d = b.sigma()[(0, 0)].clone();
    if lambda > Rational::default() {
        Some((lambda, d, b.chi_vals()[0].clone()))
    } else {
        let v = wmtrop_core::tropbundle::chi_valuation(b, &[(-1).into()]);
        Some((-lambda, d, v))
    }
}

fn wmc_check(o: &Obj<'_>, tol: &Rational) -> Result<Outcome, JobError> {
    let n = nilpotent(o)?;
    let f = frobenius(o)?;
    let i = o.i64("i")?;
    if n.dim() != f.dim() {
        return Err(SchemaError::new(o.path("phi"), format!("Φ is {0}x{0} but N is {1}x{1}", f.dim(), n.dim())).into());
    }
    let r = check_wmc(&n, &f, i, tol)?;
    let mut diagnostics: Vec<String> = r.violations.iter().map(Violation::to_string).collect();
    let mut pass = r.passed();
    if o.opt_bool("strict_range")?.unwrap_or(false) {
        if let Ok(w) = weight_decomposition(&f, tol) {
            if let Err(e) = w.check_range(i) {
                diagnostics.push(e.to_string());
                pass = false;
            }
        }
    }
    Ok(Outcome::new(pass, wmc_json(&r)).with(diagnostics))
}

pub fn wmc_json(r: &WmcReport) -> Value {
    let graded: Vec<Value> = r
        .graded_weights
        .iter()
        .map(|(j, ws)| {
            let ws: Vec<Value> = ws.iter().map(|(w, m)| json!({ "weight": w, "multiplicity": m })).collect();
            json!({ "index": j, "weights": ws })
        })
        .collect();
    json!({
        "commutation_ok": r.commutation_ok,
        "filtrations_equal": r.filtrations_equal,
        "graded_weights": graded,
        "violations": r.violations.iter().map(Violation::to_string).collect::<Vec<_>>(),
        "monodromy_filtration": filtration_to_json(&r.monodromy),
        "weight_filtration": r.weight.as_ref().map(filtration_to_json),
    })
}

fn quotient(o: &Obj<'_>, level: u32) -> Result<QuotientModel, JobError> {
    let lat = parse_lattice(o.req("lattice")?, &o.path("lattice"))?;
    let alpha = match o.get("alpha") {
        Some(v) => parse_width(v, &o.path("alpha"))?,
        None => max_dividing_width(&lat),
    };
    let p = o.u64("p")?;
    QuotientModel::new(lat, alpha, p, level).map_err(|e| match e {
        Error::NotPrime(_) => SchemaError::new(o.path("p"), e.to_string()).into(),
        other => other.into(),
    })
}

fn trop_model(o: &Obj<'_>) -> Result<Outcome, JobError> {
    let level = o.opt_u32("level")?.unwrap_or(0);
    let q = quotient(o, level)?;
    let graph = if q.lattice().rank() == 1 { Some(dual_graph(&q)?) } else { None };
    let graph_json = graph.as_ref().map(|g| {
        let edges: Vec<Value> = g.edges.iter().map(|&(a, b, m)| json!({ "from": a, "to": b, "multiplicity": m })).collect();
        json!({ "vertices": g.vertices, "edges": edges })
    });
    let d = descriptor(&q);
    let mut out = Outcome::new(
        true,
        json!({
            "components": quotient_components(&q).to_string(),
            "width": rational_to_json(q.width().value()),
            "max_dividing_width": rational_to_json(max_dividing_width(q.lattice()).value()),
            "hnf": matrix_to_json(&d.hnf),
            "descriptor": d.to_string(),
            "dual_graph": graph_json,
        }),
    );
    out.dot = graph.map(|g| g.to_dot());
    Ok(out)
}

/// Largest number of cells listed in a tower report.
const MAX_TOWER_CELLS: i64 = 100_000;

fn trop_tower(o: &Obj<'_>) -> Result<Outcome, JobError> {
    let level = o.opt_u32("level")?.unwrap_or(0);
    let steps = o.u32("steps")?;
    let q = quotient(o, level)?;
    let mut levels = Vec::new();
    for n in level..=level.checked_add(steps).ok_or(Error::Overflow("level"))? {
        let qn = q.at_level(n)?;
        levels.push(json!({
            "level": n,
            "width": rational_to_json(qn.width().value()),
            "components": quotient_components(&qn).to_string(),
        }));
    }
    let mut payload = json!({ "levels": levels });
    if q.lattice().rank() == 1 {
        let top = q.at_level(level + steps)?.modulus()?;
        if top > MAX_TOWER_CELLS {
            return Err(Error::Unsupported(format!("{top} cells at the top level exceed the listing limit {MAX_TOWER_CELLS}")).into());
        }
        let mut projections = Vec::new();
        for n in level..level + steps {
            let qn = q.at_level(n)?;
            let upper = qn.at_level(n + 1)?.modulus()?;
            let map: Vec<i64> = (0..upper).map(|e| tower_project(e, &qn)).collect::<Result<_, _>>()?;
            projections.push(json!({ "from_level": n + 1, "to_level": n, "map": map }));
        }
        let preimages: Vec<Value> = (0..q.modulus()?)
            .map(|e| tower_preimages(e, &q, steps).map(|pre| json!({ "cell": e, "preimages": pre })))
            .collect::<Result<_, _>>()?;
        payload["projections"] = Value::Array(projections);
        payload["preimages"] = Value::Array(preimages);
    }
    Ok(Outcome::new(true, payload))
}

fn bundle_extend(o: &Obj<'_>) -> Result<Outcome, JobError> {
    let b = bundle(o)?;
    let alpha = parse_width(o.req("alpha")?, &o.path("alpha"))?;
    let p = o.opt_u64("p")?;
    if extends_to(&b, &alpha)? {
        return Ok(Outcome::new(true, json!({ "extends": true })));
    }
    let mut diagnostics = vec![format!("bundle does not extend to the width-{alpha} model")];
    let mut payload = json!({ "extends": false });
    if let Some(p) = p {
        match minimal_level(&b, &alpha, p) {
            Ok(n) => {
                let w = alpha.refine(p, n);
                diagnostics.push(format!("suggestion: minimal level {n} (width {w})"));
                payload["minimal_level"] = json!(n);
                payload["suggested_width"] = rational_to_json(w.value());
            }
            Err(e @ Error::NoPLevel { .. }) => diagnostics.push(e.to_string()),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::new(false, payload).with(diagnostics))
}

fn section_report_json(r: &SectionReport) -> Value {
    let faces: Vec<Value> = r
        .faces
        .iter()
        .map(|f| {
            json!({
                "position": rational_to_json(&f.position),
                "left_cell": f.left_cell,
                "right_cell": f.right_cell,
                "slope_difference": rational_to_json(&f.slope_difference),
                "transition": affine_to_json(&f.transition),
                "value_left": rational_to_json(&f.value_left),
                "value_right": rational_to_json(&f.value_right),
                "transition_valuation_at_face": format_rational(&(&f.value_left - &f.value_right)),
                "continuous": f.continuous,
            })
        })
        .collect();
    json!({
        "integer_slopes": r.integer_slopes,
        "width_matches": r.width_matches,
        "periodicity_data_matches": r.periodicity_data_matches,
        "period_sum_ok": r.period_sum_ok,
        "continuous": r.continuous,
        "faces": faces,
    })
}

/// Canonical form of a job object: every schema field parsed and
/// re-serialized, other fields copied. `normalize ∘ normalize = normalize`.
pub fn normalize_job(command: Command, v: &Value) -> Result<Value, SchemaError> {
    let o = Obj::new(v, "", fields(command))?;
    check_version(&o)?;
    let mut out = v.clone();
    let map = out.as_object_mut().expect("checked object");
    for key in ["n", "phi"] {
        if let Some(x) = o.get(key) {
            map.insert(key.into(), matrix_to_json(&parse_square(x, key)?));
        }
    }
    if let Some(x) = o.get("lattice") {
        map.insert("lattice".into(), lattice_to_json(&parse_lattice(x, "lattice")?));
    }
    if let Some(x) = o.get("alpha") {
        map.insert("alpha".into(), rational_to_json(parse_width(x, "alpha")?.value()));
    }
    let b = o.get("bundle").map(|x| parse_bundle(x, "bundle")).transpose()?;
    if let Some(b) = &b {
        map.insert("bundle".into(), bundle_to_json(b));
    }
    if let Some(x) = o.get("section") {
        let defaults = b.as_ref().and_then(rank_one_defaults);
        let f = parse_section(x, "section", defaults.as_ref().map(|(l, d, v)| (l, d, v)))?;
        map.insert("section".into(), section_to_json(&f));
    }
    Ok(out)
}
