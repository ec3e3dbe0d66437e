//! Runs the tasks of a validated workspace and assembles the report.

use std::sync::Arc;
use std::time::Instant;

use gseq_core::analysis::{
    grivel_check, presentation_bound, splitting_check, thom_check, tncz_analyze, AnalysisError,
};
use gseq_core::derivation::{ComplexError, DerivationComplex};
use gseq_core::sequences::{Ladder, LesReport, Names, TermKind};
use gseq_core::{QAlgebra, QMorphism, Rational};
use num_traits::{One, Zero};

use crate::dsl::parse_poly;
use crate::report::{Report, Row, TaskReport};
use crate::workspace::{poly_to_element, MapEntry, TaskKind, TaskSpec, Workspace};

/// Largest degree window a task may request.
pub const MAX_WINDOW: usize = 200;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Run only this task; `None` or `"all"` runs every task.
    pub task: Option<String>,
    pub max_degree: Option<usize>,
    /// Record wall-clock time per task. Off by default so that reports
    /// are byte-identical across runs.
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    /// Bad task parameters or unmet preconditions.
    #[error("task `{task}`: {message}")]
    Task { task: String, message: String },
    /// An internal consistency check failed.
    #[error("task `{task}`: internal check failed: {message}")]
    Internal { task: String, message: String },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Task { .. } => 1,
            RunError::Internal { .. } => 3,
        }
    }
}

struct Ctx<'a> {
    ws: &'a Workspace,
    spec: &'a TaskSpec,
    window: usize,
    assumptions: &'a mut Vec<String>,
}

impl<'a> Ctx<'a> {
    fn task_error(&self, message: impl Into<String>) -> RunError {
        RunError::Task {
            task: self.spec.name.clone(),
            message: message.into(),
        }
    }

    fn internal(&self, message: impl Into<String>) -> RunError {
        RunError::Internal {
            task: self.spec.name.clone(),
            message: message.into(),
        }
    }

    fn complex(&self, e: ComplexError) -> RunError {
        self.internal(e.to_string())
    }

    fn analysis(&self, e: AnalysisError) -> RunError {
        match e {
            AnalysisError::Complex(e) => self.complex(e),
            other => self.task_error(other.to_string()),
        }
    }

    fn param(&self, key: &str) -> &'a str {
        let spec: &'a TaskSpec = self.spec;
        &spec.params[key]
    }

    fn model(&self, key: &str) -> &'a Arc<QAlgebra> {
        let ws: &'a Workspace = self.ws;
        &ws.models[self.param(key)]
    }

    fn map(&self) -> (&'a str, &'a MapEntry) {
        let ws: &'a Workspace = self.ws;
        let name = self.param("map");
        (name, &ws.maps[name])
    }

    fn ladder(&self) -> Result<Ladder<Rational>, RunError> {
        let (name, entry) = self.map();
        let names = Names::new(&entry.source, &entry.target, name);
        Ladder::new(entry.morphism.clone(), names)
            .map(|l| l.with_window(self.window))
            .map_err(|e| self.complex(e))
    }

    fn map_subject(&self) -> String {
        let (name, entry) = self.map();
        format!("{name}: {} -> {}", entry.source, entry.target)
    }

    fn report(&self, subject: String) -> TaskReport {
        TaskReport::new(&self.spec.name, self.spec.kind, subject)
    }
}

fn describe(alg: &QAlgebra) -> String {
    let gens: Vec<&str> = alg.generators().iter().map(|g| g.name.as_str()).collect();
    let mut out = format!("Λ({})", gens.join(", "));
    for (i, g) in alg.generators().iter().enumerate() {
        let d = alg.generator_differential(i);
        if !d.is_zero() {
            out.push_str(&format!(", d {} = {}", g.name, alg.display(d)));
        }
    }
    out
}

fn default_window(algebras: &[&QAlgebra]) -> usize {
    let top = algebras.iter().map(|a| a.max_generator_degree()).max().unwrap_or(0);
    2 * top as usize + 2
}

fn involved<'a>(ws: &'a Workspace, spec: &TaskSpec) -> Vec<&'a QAlgebra> {
    let mut out = Vec::new();
    for key in ["model", "total", "fiber"] {
        if let Some(m) = spec.params.get(key) {
            out.push(ws.models[m].as_ref());
        }
    }
    if let Some(m) = spec.params.get("map") {
        let e = &ws.maps[m];
        out.push(e.morphism.source().as_ref());
        out.push(e.morphism.target().as_ref());
    }
    out
}

pub fn run_tasks(ws: &Workspace, opts: &RunOptions) -> Result<Report, RunError> {
    let selected: Vec<&TaskSpec> = match opts.task.as_deref() {
        None | Some("all") => ws.tasks.iter().collect(),
        Some(name) => {
            let t = ws.tasks.iter().find(|t| t.name == name).ok_or_else(|| RunError::Task {
                task: name.to_string(),
                message: "no such task".into(),
            })?;
            vec![t]
        }
    };
    let mut report = Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        assumptions: Vec::new(),
        tasks: Vec::new(),
    };
    for b in &ws.builtins {
        report
            .assumptions
            .push(format!("{b} is the built-in model {}", describe(&ws.models[b])));
    }
    for spec in selected {
        let window = spec
            .max_degree
            .or(opts.max_degree)
            .unwrap_or_else(|| default_window(&involved(ws, spec)));
        if window > MAX_WINDOW {
            return Err(RunError::Task {
                task: spec.name.clone(),
                message: format!("degree window {window} exceeds the limit of {MAX_WINDOW}"),
            });
        }
        report
            .assumptions
            .push(format!("task {}: degree window 2..={window}", spec.name));
        let start = Instant::now();
        let mut ctx = Ctx {
            ws,
            spec,
            window,
            assumptions: &mut report.assumptions,
        };
        let mut sections = run_one(&mut ctx)?;
        if opts.timing {
            let ms = start.elapsed().as_millis() as u64;
            for s in &mut sections {
                s.elapsed_ms = Some(ms);
            }
        }
        report.tasks.extend(sections);
    }
    Ok(report)
}

fn run_one(ctx: &mut Ctx<'_>) -> Result<Vec<TaskReport>, RunError> {
    Ok(match ctx.spec.kind {
        TaskKind::HomotopyGroups => vec![homotopy_groups(ctx)?],
        TaskKind::Gottlieb => vec![gottlieb(ctx)?],
        TaskKind::EvaluationSubgroups => vec![evaluation_subgroups(ctx)?],
        TaskKind::GSequence => vec![g_sequence(ctx)?],
        TaskKind::Exactness => vec![exactness(ctx)?],
        TaskKind::OmegaHomology => vec![omega_homology(ctx)?],
        TaskKind::Les => les(ctx)?,
        TaskKind::BasedGroups => vec![based_groups(ctx)?],
        TaskKind::Thom => vec![thom(ctx)?],
        TaskKind::Grivel => vec![grivel(ctx)?],
        TaskKind::Splitting => vec![splitting(ctx)?],
        TaskKind::Tncz => vec![tncz(ctx)?],
    })
}

fn der_label(a: &str, b: &str, phi: &str, n: usize) -> String {
    format!("H_{n}(Der({a},{b};{phi}))")
}

fn homology_rows(
    t: &mut TaskReport,
    der: &DerivationComplex<Rational>,
    labels: impl Fn(usize) -> String,
    window: usize,
) {
    for n in 2..=window {
        let h = der.homology(n);
        let label = labels(n);
        let row = t.row(n);
        row.dim(label.clone(), h.dim());
        for z in h.representatives() {
            row.witness(&label, der.render(n, z));
        }
    }
}

fn homotopy_groups(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let (phi, names, subject): (QMorphism, Names, String) = match ctx.spec.params.get("map") {
        Some(_) => {
            let (name, e) = ctx.map();
            (e.morphism.clone(), Names::new(&e.source, &e.target, name), ctx.map_subject())
        }
        None => {
            let x = ctx.param("model").to_string();
            let phi = QMorphism::identity(Arc::clone(ctx.model("model")));
            (phi, Names::new(&x, &x, "1"), format!("1: {x} -> {x}"))
        }
    };
    let der = DerivationComplex::new(phi).map_err(|e| ctx.complex(e))?;
    let mut t = ctx.report(subject);
    homology_rows(&mut t, &der, |n| der_label(&names.source, &names.target, &names.map, n), ctx.window);
    t.notes.push(format!(
        "H_n(Der({},{};{})) is π_n of the mapping-space component, tensored with ℚ",
        names.source, names.target, names.map
    ));
    Ok(t)
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); dim];
    e[i] = Rational::one();
    e
}

fn subgroup_row(row: &mut Row, ladder: &Ladder<Rational>, kind: TermKind, n: usize) {
    let s = ladder.subgroup(kind, n);
    row.dim(s.label.clone(), s.dim());
    for i in 0..s.dim() {
        let chain = s.representative(&unit(s.dim(), i));
        row.witness(&s.label, ladder.render(kind, n, &chain));
    }
}

fn gottlieb(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let x = ctx.param("model").to_string();
    let phi = QMorphism::identity(Arc::clone(ctx.model("model")));
    let ladder = Ladder::new(phi, Names::new(&x, &x, "1"))
        .map_err(|e| ctx.complex(e))?
        .with_window(ctx.window);
    let mut t = ctx.report(x);
    for n in 2..=ctx.window {
        subgroup_row(t.row(n), &ladder, TermKind::Gottlieb, n);
    }
    Ok(t)
}

fn evaluation_subgroups(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let ladder = ctx.ladder()?;
    let mut t = ctx.report(ctx.map_subject());
    for n in 2..=ctx.window {
        let row = t.row(n);
        subgroup_row(row, &ladder, TermKind::Evaluation, n);
        subgroup_row(row, &ladder, TermKind::Relative, n);
    }
    Ok(t)
}

fn g_sequence(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let ladder = ctx.ladder()?;
    let g = ladder.g_sequence().map_err(|e| ctx.complex(e))?;
    let mut t = ctx.report(ctx.map_subject());
    for ((_, s), v) in g.terms.iter().zip(&g.verdicts) {
        let row = t.row(s.degree);
        row.dim(v.label.clone(), v.dim);
        if !v.audited {
            row.unaudited.push(v.label.clone());
        } else if !v.exact {
            row.exact = false;
            row.non_exact.push(v.label.clone());
        }
        for w in &v.witnesses {
            row.witness(&v.label, w);
        }
    }
    let bad: Vec<&str> = g.non_exact().map(|v| v.label.as_str()).collect();
    t.notes.push(if bad.is_empty() {
        "exact at every audited term".to_string()
    } else {
        format!("non-exact at {}", bad.join(", "))
    });
    Ok(t)
}

fn exactness(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let ladder = ctx.ladder()?;
    let g = ladder.g_sequence().map_err(|e| ctx.complex(e))?;
    let mut t = ctx.report(ctx.map_subject());
    for v in g.non_exact() {
        let label = format!("defect at {}", v.label);
        let row = t.row(v.degree);
        row.exact = false;
        row.dim(label.clone(), v.defect);
        row.non_exact.push(label.clone());
        for w in &v.witnesses {
            row.witness(&label, w);
        }
    }
    let audited = g.verdicts.iter().filter(|v| v.audited).count();
    t.notes.push(format!(
        "{} of {audited} audited terms are non-exact",
        g.non_exact().count()
    ));
    Ok(t)
}

fn omega_homology(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let ladder = ctx.ladder()?;
    let target = ladder.names().target.clone();
    let mut t = ctx.report(ctx.map_subject());
    for n in 2..=ctx.window {
        let w = ladder.omega_homology(n).map_err(|e| ctx.complex(e))?;
        let label = format!("H^ω_{n}({target})");
        let row = t.row(n);
        row.dim(label.clone(), w.dim);
        for x in &w.witnesses {
            row.witness(&label, x);
        }
    }
    Ok(t)
}

fn les_section(ctx: &Ctx<'_>, suffix: &str, les: LesReport) -> TaskReport {
    let mut t = TaskReport::new(&format!("{}/{suffix}", ctx.spec.name), ctx.spec.kind, les.name.clone());
    for term in les.terms.iter().filter(|t| t.degree <= ctx.window) {
        let row = t.row(term.degree);
        row.dim(term.label.clone(), term.dim);
        if !term.audited {
            row.unaudited.push(term.label.clone());
        } else if !term.exact {
            row.exact = false;
            row.non_exact.push(term.label.clone());
        }
    }
    for term in les.terms.iter().filter(|t| t.degree == 2) {
        if let Some(m) = &term.meaning {
            t.notes.push(format!("{} reads as {m}", term.label));
        }
    }
    t
}

fn les(ctx: &mut Ctx<'_>) -> Result<Vec<TaskReport>, RunError> {
    let ladder = ctx.ladder()?;
    let sequences = [
        ("f-star", ladder.les_of_fstar()),
        ("f", ladder.les_of_f()),
        ("evaluation", ladder.les_of_eval_fibration()),
    ];
    let mut out = Vec::new();
    for (suffix, les) in sequences {
        let les = les.map_err(|e| ctx.complex(e))?;
        out.push(les_section(ctx, suffix, les));
    }
    Ok(out)
}

fn based_groups(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let (name, entry) = ctx.map();
    let der = DerivationComplex::augmentation_ideal(entry.morphism.clone()).map_err(|e| ctx.complex(e))?;
    let (s, x, f) = (entry.source.clone(), entry.target.clone(), name.to_string());
    let mut t = ctx.report(ctx.map_subject());
    homology_rows(&mut t, &der, |n| der_label(&s, &format!("{x}~"), &format!("{f}~"), n), ctx.window);
    t.notes.push(format!(
        "H_n(Der({s},{x}~;{f}~)) is π_n of the based mapping space, tensored with ℚ"
    ));
    Ok(t)
}

fn thom(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let x_name = ctx.param("model").to_string();
    let x = Arc::clone(ctx.model("model"));
    let m: u32 = ctx.param("m").parse().expect("validated");
    if m < 2 {
        return Err(ctx.task_error("`m` must be at least 2"));
    }
    let image = match ctx.spec.params.get("image") {
        Some(text) => {
            let poly = parse_poly(text).map_err(|e| ctx.task_error(e.to_string()))?;
            let e = poly_to_element(&x, &poly, m).map_err(|errs| {
                let msgs: Vec<String> = errs.iter().map(|d| d.message.clone()).collect();
                ctx.task_error(format!("image `{text}`: {}", msgs.join("; ")))
            })?;
            Some(e)
        }
        None => None,
    };
    let image_text = image.as_ref().map_or("0".to_string(), |e| x.display(e));
    let rows = thom_check(&x, m, image, 2..=m as usize).map_err(|e| ctx.analysis(e))?;
    ctx.assumptions.push(format!(
        "task {}: Λ(z{m}) → {x_name} sends z{m} to {image_text}",
        ctx.spec.name
    ));
    let mut t = ctx.report(format!("z{m} ↦ {image_text} in {x_name}"));
    for r in &rows {
        let row = t.row(r.degree);
        row.dim(der_label(&format!("Λ(z{m})"), &x_name, "φ", r.degree), r.derivation_dim);
        row.dim(format!("H^{}({x_name})", m as usize - r.degree), r.cohomology_dim);
        row.exact = r.agrees();
        if !r.agrees() {
            return Err(ctx.internal(format!("Thom comparison disagrees in degree {}", r.degree)));
        }
    }
    Ok(t)
}

fn grivel(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let (name, entry) = ctx.map();
    let (y, x) = (entry.source.clone(), entry.target.clone());
    let degrees: Vec<usize> = match ctx.spec.params.get("degree") {
        Some(d) => {
            let d: usize = d.parse().expect("validated");
            if d < 2 || d % 2 == 1 {
                return Err(ctx.task_error("`degree` must be even and at least 2"));
            }
            vec![d]
        }
        None => (2..=ctx.window).filter(|n| n % 2 == 0).collect(),
    };
    let phi = &entry.morphism;
    let rows = grivel_check(phi, degrees).map_err(|e| ctx.analysis(e))?;
    let bound = presentation_bound(phi.source().as_ref()).max(presentation_bound(phi.target().as_ref()));
    ctx.assumptions.push(format!(
        "task {}: {y} and {x} are taken to be F₀; checked no odd cohomology and no cohomology in degrees {}..={bound}; cohomology presented up to degree {bound}",
        ctx.spec.name,
        bound / 2 + 1,
    ));
    let mut t = ctx.report(ctx.map_subject());
    for r in &rows {
        let n = r.degree;
        let row = t.row(n);
        row.dim(der_label(&y, &x, name, n), r.derivation_dim);
        row.dim(format!("Der_{n}(H*({y}),H*({x});H({name}))"), r.cohomology_dim);
        row.exact = r.agrees();
        if !r.agrees() {
            return Err(ctx.internal(format!("Grivel comparison disagrees in degree {n}")));
        }
    }
    Ok(t)
}

fn splitting(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let mut t = ctx.report(ctx.map_subject());
    let (_, entry) = ctx.map();
    let x = entry.target.clone();
    let rows = match splitting_check(&entry.morphism, Some(ctx.window)) {
        Ok(rows) => rows,
        Err(AnalysisError::Hypothesis(reason)) => {
            t.refused = Some(reason);
            return Ok(t);
        }
        Err(e @ AnalysisError::NotF0 { .. }) => {
            t.refused = Some(e.to_string());
            return Ok(t);
        }
        Err(e) => return Err(ctx.analysis(e)),
    };
    ctx.assumptions.push(format!(
        "task {}: {x} is taken to be F₀; checked no odd cohomology below degree {}",
        ctx.spec.name,
        presentation_bound(entry.morphism.target().as_ref()) + 1
    ));
    let ladder = ctx.ladder()?;
    for r in &rows {
        let n = r.degree;
        let row = t.row(n);
        for (kind, k) in [
            (TermKind::Evaluation, n + 1),
            (TermKind::Relative, n + 1),
            (TermKind::Gottlieb, n),
        ] {
            row.dim(ladder.label(kind, k), ladder.subgroup(kind, k).dim());
        }
        row.exact = r.holds();
        if !r.holds() {
            return Err(ctx.internal(format!("short exact sequence fails in degree {n}")));
        }
    }
    Ok(t)
}

fn tncz(ctx: &mut Ctx<'_>) -> Result<TaskReport, RunError> {
    let total = Arc::clone(ctx.model("total"));
    let fiber = Arc::clone(ctx.model("fiber"));
    let v = tncz_analyze(&total, &fiber).map_err(|e| ctx.analysis(e))?;
    let u = &total.generators()[0];
    let mut t = ctx.report(format!("{} over {}", ctx.param("total"), u.name));
    let row = t.row(u.degree as usize);
    row.dim("ψ", usize::from(v.psi.is_some()));
    row.exact = v.trivializes();
    if let Some(psi) = &v.psi_display {
        row.witness("ψ", psi);
    }
    for o in &v.obstruction {
        row.witnesses.push(format!("obstruction: {o}"));
    }
    t.notes.extend(v.audit.iter().cloned());
    if let Some(phi) = &v.trivialization {
        for (i, g) in total.generators().iter().enumerate() {
            t.notes.push(format!("Φ({}) = {}", g.name, phi.target().display(phi.image(i))));
        }
    }
    Ok(t)
}
