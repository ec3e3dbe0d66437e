//! Semantic validation: turns a parsed workspace into algebras, maps and
//! task requests, collecting every error rather than stopping at the first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use gseq_core::algebra::{AlgebraError, Element, FreeDga, Generator, Monomial, Morphism};
use gseq_core::models;
use gseq_core::{QAlgebra, QMorphism, Rational, Scalar};
use indexmap::IndexMap;

use crate::dsl::{Ast, Item, Poly, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: Span,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TaskKind {
    HomotopyGroups,
    Gottlieb,
    EvaluationSubgroups,
    GSequence,
    Exactness,
    OmegaHomology,
    Les,
    BasedGroups,
    Thom,
    Grivel,
    Splitting,
    Tncz,
}

impl TaskKind {
    pub const ALL: [TaskKind; 12] = [
        TaskKind::HomotopyGroups,
        TaskKind::Gottlieb,
        TaskKind::EvaluationSubgroups,
        TaskKind::GSequence,
        TaskKind::Exactness,
        TaskKind::OmegaHomology,
        TaskKind::Les,
        TaskKind::BasedGroups,
        TaskKind::Thom,
        TaskKind::Grivel,
        TaskKind::Splitting,
        TaskKind::Tncz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::HomotopyGroups => "homotopy-groups",
            TaskKind::Gottlieb => "gottlieb",
            TaskKind::EvaluationSubgroups => "evaluation-subgroups",
            TaskKind::GSequence => "g-sequence",
            TaskKind::Exactness => "exactness",
            TaskKind::OmegaHomology => "omega-homology",
            TaskKind::Les => "les",
            TaskKind::BasedGroups => "based-groups",
            TaskKind::Thom => "thom",
            TaskKind::Grivel => "grivel",
            TaskKind::Splitting => "splitting",
            TaskKind::Tncz => "tncz",
        }
    }

    pub fn from_name(name: &str) -> Option<TaskKind> {
        TaskKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Parameters accepted besides `kind` and `max-degree`, and whether
    /// each is required.
    fn params(self) -> &'static [(&'static str, bool)] {
        match self {
            TaskKind::HomotopyGroups => &[("map", false), ("model", false)],
            TaskKind::Gottlieb => &[("model", true)],
            TaskKind::Thom => &[("model", true), ("m", true), ("image", false)],
            TaskKind::Grivel => &[("map", true), ("degree", false)],
            TaskKind::Tncz => &[("total", true), ("fiber", true)],
            _ => &[("map", true)],
        }
    }
}

#[derive(Clone, Debug)]
pub struct MapEntry {
    pub source: String,
    pub target: String,
    pub morphism: QMorphism,
}

#[derive(Clone, Debug)]
pub struct TaskSpec {
    pub name: String,
    pub kind: TaskKind,
    pub params: BTreeMap<String, String>,
    pub max_degree: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub models: IndexMap<String, Arc<QAlgebra>>,
    pub maps: IndexMap<String, MapEntry>,
    pub tasks: Vec<TaskSpec>,
    /// Names resolved to the built-in library.
    pub builtins: Vec<String>,
}

impl Workspace {
    pub fn model(&self, name: &str) -> Option<&Arc<QAlgebra>> {
        self.models.get(name)
    }

    pub fn map(&self, name: &str) -> Option<&MapEntry> {
        self.maps.get(name)
    }
}

/// Prefix of generator names in built-in models.
pub const BUILTIN_PREFIX: &str = "x";

struct Builder {
    ws: Workspace,
    errors: Vec<Diagnostic>,
    /// Declared names that failed validation, so later references do not
    /// report them again.
    broken: Vec<String>,
}

impl Builder {
    fn error(&mut self, span: Span, message: impl Into<String>) {
        self.errors.push(Diagnostic {
            span,
            message: message.into(),
        });
    }

    fn resolve_model(&mut self, name: &str, span: Span) -> Option<Arc<QAlgebra>> {
        if let Some(m) = self.ws.models.get(name) {
            return Some(Arc::clone(m));
        }
        if self.broken.iter().any(|b| b == name) {
            return None;
        }
        if let Some(alg) = models::builtin::<Rational>(name, BUILTIN_PREFIX) {
            let alg = Arc::new(alg);
            self.ws.models.insert(name.to_string(), Arc::clone(&alg));
            self.ws.builtins.push(name.to_string());
            return Some(alg);
        }
        self.error(span, format!("unknown model `{name}`"));
        None
    }
}

/// Converts a polynomial over the generators of `alg`, checking that
/// every term has degree `degree`.
pub fn poly_to_element(
    alg: &FreeDga<Rational>,
    poly: &Poly,
    degree: u32,
) -> Result<Element<Rational>, Vec<Diagnostic>> {
    let mut errors = Vec::new();
    let mut out = Element::zero();
    for term in &poly.terms {
        let mut value = Element::unit();
        let mut term_degree = 0u64;
        let mut ok = true;
        for f in &term.factors {
            let Some(i) = alg.generator_index(&f.name.text) else {
                errors.push(Diagnostic {
                    span: f.name.span,
                    message: format!("unknown generator `{}`", f.name.text),
                });
                ok = false;
                continue;
            };
            let power = f.power.unwrap_or(1);
            let g = &alg.generators()[i];
            if g.is_odd() && power > 1 {
                errors.push(Diagnostic {
                    span: f.name.span,
                    message: format!("{}^{power} is zero: `{}` has odd degree", g.name, g.name),
                });
            }
            term_degree += u64::from(g.degree) * u64::from(power);
            if ok {
                let factor = Element::monomial(Monomial::generator_power(i, power));
                value = alg.multiply(&value, &factor).expect("factors lie in the algebra");
            }
        }
        if !ok {
            continue;
        }
        if term_degree != u64::from(degree) {
            errors.push(Diagnostic {
                span: term.span,
                message: format!("degree mismatch: term has degree {term_degree}, expected {degree}"),
            });
        }
        let coef = match term.coef {
            Some((p, q)) => {
                Rational::from_int(p as i64) / Rational::from_int(q.unwrap_or(1) as i64)
            }
            None => Rational::from_int(1),
        };
        let coef = if term.negative { -coef } else { coef };
        out.add_scaled(&coef, &value);
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(errors)
    }
}

pub fn build_workspace(ast: &Ast) -> Result<Workspace, Vec<Diagnostic>> {
    let mut b = Builder {
        ws: Workspace::default(),
        errors: Vec::new(),
        broken: Vec::new(),
    };
    let mut seen: HashMap<(&str, String), Span> = HashMap::new();
    for item in &ast.items {
        let (kind, name) = match item {
            Item::Model(m) => ("model", &m.name),
            Item::Map(m) => ("map", &m.name),
            Item::Task(t) => ("task", &t.name),
        };
        if let Some(first) = seen.insert((kind, name.text.clone()), name.span) {
            b.error(
                name.span,
                format!("{kind} `{}` is already declared at {first}", name.text),
            );
        }
    }

    for item in &ast.items {
        if let Item::Model(m) = item {
            if b.ws.models.contains_key(&m.name.text) {
                continue;
            }
            match build_model(m) {
                Ok(alg) => {
                    b.ws.models.insert(m.name.text.clone(), Arc::new(alg));
                }
                Err(errs) => {
                    b.errors.extend(errs);
                    b.broken.push(m.name.text.clone());
                }
            }
        }
    }
    for item in &ast.items {
        if let Item::Map(m) = item {
            if b.ws.maps.contains_key(&m.name.text) {
                continue;
            }
            let source = b.resolve_model(&m.source.text, m.source.span);
            let target = b.resolve_model(&m.target.text, m.target.span);
            let (Some(source), Some(target)) = (source, target) else {
                b.broken.push(m.name.text.clone());
                continue;
            };
            match build_map(m, source, target) {
                Ok(morphism) => {
                    b.ws.maps.insert(
                        m.name.text.clone(),
                        MapEntry {
                            source: m.source.text.clone(),
                            target: m.target.text.clone(),
                            morphism,
                        },
                    );
                }
                Err(errs) => {
                    b.errors.extend(errs);
                    b.broken.push(m.name.text.clone());
                }
            }
        }
    }
    for item in &ast.items {
        if let Item::Task(t) = item {
            if let Some(spec) = build_task(&mut b, t) {
                b.ws.tasks.push(spec);
            }
        }
    }
    if b.errors.is_empty() {
        Ok(b.ws)
    } else {
        b.errors.sort_by_key(|d| (d.span.line, d.span.col));
        Err(b.errors)
    }
}

fn build_model(m: &crate::dsl::ModelDecl) -> Result<QAlgebra, Vec<Diagnostic>> {
    let mut errors = Vec::new();
    let mut gens = Vec::new();
    for g in &m.gens {
        if g.degree == 0 {
            errors.push(Diagnostic {
                span: g.name.span,
                message: format!("generator `{}` must have positive degree", g.name.text),
            });
        } else if gens.iter().any(|h: &Generator| h.name == g.name.text) {
            errors.push(Diagnostic {
                span: g.name.span,
                message: format!("generator `{}` declared twice", g.name.text),
            });
        } else {
            gens.push(Generator::new(g.name.text.clone(), g.degree));
        }
    }
    let shell = match FreeDga::<Rational>::unvalidated(gens.clone(), Vec::new()) {
        Ok(s) => s,
        Err(e) => {
            errors.push(Diagnostic {
                span: m.name.span,
                message: e.to_string(),
            });
            return Err(errors);
        }
    };
    let mut diffs = vec![Element::zero(); gens.len()];
    let mut assigned = vec![false; gens.len()];
    for (g, poly) in &m.diffs {
        let Some(i) = shell.generator_index(&g.text) else {
            errors.push(Diagnostic {
                span: g.span,
                message: format!("unknown generator `{}`", g.text),
            });
            continue;
        };
        if std::mem::replace(&mut assigned[i], true) {
            errors.push(Diagnostic {
                span: g.span,
                message: format!("differential of `{}` given twice", g.text),
            });
        }
        match poly_to_element(&shell, poly, gens[i].degree + 1) {
            Ok(e) => diffs[i] = e,
            Err(errs) => errors.extend(errs),
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    FreeDga::new(gens, diffs).map_err(|e| {
        vec![Diagnostic {
            span: m.name.span,
            message: format!("model `{}`: {}", m.name.text, explain(&e)),
        }]
    })
}

fn explain(e: &AlgebraError) -> String {
    match e {
        AlgebraError::DSquaredNonzero(g) => format!("d² ≠ 0: d(d({g})) is nonzero"),
        other => other.to_string(),
    }
}

fn build_map(
    m: &crate::dsl::MapDecl,
    source: Arc<QAlgebra>,
    target: Arc<QAlgebra>,
) -> Result<QMorphism, Vec<Diagnostic>> {
    let mut errors = Vec::new();
    let mut images = vec![Element::zero(); source.num_generators()];
    let mut assigned = vec![false; source.num_generators()];
    for (g, poly) in &m.images {
        let Some(i) = source.generator_index(&g.text) else {
            errors.push(Diagnostic {
                span: g.span,
                message: format!("`{}` is not a generator of `{}`", g.text, m.source.text),
            });
            continue;
        };
        if std::mem::replace(&mut assigned[i], true) {
            errors.push(Diagnostic {
                span: g.span,
                message: format!("image of `{}` given twice", g.text),
            });
        }
        match poly_to_element(&target, poly, source.generator_degree(i)) {
            Ok(e) => images[i] = e,
            Err(errs) => errors.extend(errs),
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    Morphism::new(source, target, images).map_err(|e| {
        vec![Diagnostic {
            span: m.name.span,
            message: format!("map `{}`: {}", m.name.text, explain(&e)),
        }]
    })
}

fn build_task(b: &mut Builder, t: &crate::dsl::TaskDecl) -> Option<TaskSpec> {
    let errors_before = b.errors.len();
    let mut params = BTreeMap::new();
    let mut spans = HashMap::new();
    for (k, v) in &t.params {
        if params.insert(k.text.clone(), v.text.clone()).is_some() {
            b.error(k.span, format!("parameter `{}` given twice", k.text));
        }
        spans.insert(k.text.clone(), v.span);
    }
    let Some(kind_name) = params.remove("kind") else {
        b.error(t.name.span, format!("task `{}` has no `kind`", t.name.text));
        return None;
    };
    let Some(kind) = TaskKind::from_name(&kind_name) else {
        let known: Vec<_> = TaskKind::ALL.iter().map(|k| k.name()).collect();
        b.error(
            spans["kind"],
            format!("unknown task kind `{kind_name}` (expected one of {})", known.join(", ")),
        );
        return None;
    };
    let max_degree = match params.remove("max-degree") {
        Some(v) => match v.parse::<usize>() {
            Ok(n) => Some(n),
            Err(_) => {
                b.error(spans["max-degree"], format!("`max-degree` must be a non-negative integer, found `{v}`"));
                None
            }
        },
        None => None,
    };
    let allowed = kind.params();
    for key in params.keys() {
        if !allowed.iter().any(|(k, _)| k == key) {
            b.error(spans[key], format!("task kind `{}` takes no parameter `{key}`", kind.name()));
        }
    }
    for (key, required) in allowed {
        if *required && !params.contains_key(*key) {
            b.error(t.name.span, format!("task `{}` needs a `{key}` parameter", t.name.text));
        }
    }
    if kind == TaskKind::HomotopyGroups && params.contains_key("map") == params.contains_key("model") {
        b.error(t.name.span, format!("task `{}` needs exactly one of `map` or `model`", t.name.text));
    }
    for key in ["model", "total", "fiber"] {
        if let Some(name) = params.get(key).cloned() {
            b.resolve_model(&name, spans[key]);
        }
    }
    if let Some(name) = params.get("map") {
        if !b.ws.maps.contains_key(name) && !b.broken.contains(name) {
            b.error(spans["map"], format!("unknown map `{name}`"));
        }
    }
    for key in ["m", "degree"] {
        if let Some(v) = params.get(key) {
            if v.parse::<u32>().is_err() {
                b.error(spans[key], format!("`{key}` must be a non-negative integer, found `{v}`"));
            }
        }
    }
    if let Some(v) = params.get("image") {
        if let Err(e) = crate::dsl::parse_poly(v) {
            b.error(spans["image"], format!("invalid polynomial `{v}`: {}", e.message));
        }
    }
    (b.errors.len() == errors_before).then(|| TaskSpec {
        name: t.name.text.clone(),
        kind,
        params,
        max_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_workspace;

    fn build(text: &str) -> Result<Workspace, Vec<Diagnostic>> {
        build_workspace(&parse_workspace(text).unwrap())
    }

    #[test]
    fn example_validates() {
        let ws = build(
            "model X { gen x4 : 4; gen x11 : 11; d x11 = x4^3; }
             model Y { gen y8 : 8; gen y15 : 15; gen y4 : 4; gen y19 : 19;
                       d y15 = y8^2; d y19 = y4^5; }
             map f : Y -> X { y8 |-> x4^2; y15 |-> x4*x11; y4 |-> x4; y19 |-> x4^2*x11; }
             task t { kind = g-sequence; map = f; }",
        )
        .unwrap();
        assert_eq!(ws.models.len(), 2);
        assert_eq!(ws.tasks[0].kind, TaskKind::GSequence);
        let f = &ws.maps["f"].morphism;
        assert_eq!(f.target().display(f.image(1)), "x4*x11");
    }

    #[test]
    fn odd_square_reports_every_problem() {
        let errs = build("model A { gen a : 3; d a = a^2; }").unwrap_err();
        let messages: Vec<_> = errs.iter().map(|d| d.message.as_str()).collect();
        assert_eq!(messages.len(), 2, "{messages:?}");
        assert!(messages[0].contains("odd degree"));
        assert!(messages[1].contains("degree mismatch"));
        assert_eq!((errs[0].span.line, errs[0].span.col), (1, 28));
    }

    #[test]
    fn collects_errors_across_items() {
        let errs = build(
            "model A { gen a : 2; gen b : 3; d b = a; }
             model B { gen x : 2; }
             map f : A -> Q { a |-> x; }
             map g : B -> B { x |-> y; }
             task t { kind = frobnicate; }
             task u { kind = gottlieb; }",
        )
        .unwrap_err();
        let lines: Vec<_> = errs.iter().map(|d| d.span.line).collect();
        assert_eq!(lines, vec![1, 3, 4, 5, 6], "{errs:?}");
    }

    #[test]
    fn d_squared_and_chain_map_failures() {
        let errs = build("model A { gen a : 2; gen b : 3; gen c : 4; d b = a^2; d c = a*b; }").unwrap_err();
        assert!(errs[0].message.contains("d² ≠ 0"), "{errs:?}");

        let errs = build(
            "model S { gen x : 2; gen y : 3; d y = x^2; }
             model F { gen z : 2; }
             map f : S -> F { x |-> z; }",
        )
        .unwrap_err();
        assert!(errs[0].message.contains("does not commute"), "{errs:?}");
    }

    #[test]
    fn builtins_resolve_by_name() {
        let ws = build("map f : K4 -> S2 { x4 |-> x2^2; } task t { kind = gottlieb; model = HP2; }").unwrap();
        assert_eq!(ws.builtins, vec!["K4", "S2", "HP2"]);
        assert_eq!(ws.models["HP2"].num_generators(), 2);
    }
}
