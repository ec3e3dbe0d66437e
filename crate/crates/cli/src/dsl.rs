//! The workspace language.
//!
//! ```text
//! model X { gen x4 : 4; gen x11 : 11; d x11 = x4^3; }
//! map f : Y -> X { y4 |-> x4; y8 |-> x4^2; }
//! task seq { kind = g-sequence; map = f; }
//! ```
//!
//! `map f : Y -> X` declares an algebra map `M_Y → M_X`, which models a
//! map of spaces `X → Y`. Generators without a `d` line are cycles and
//! generators without an image go to zero. `#` starts a comment.

use std::fmt::{self, Write};

/// 1-based source position. Positions never take part in equality, so
/// two parses of equivalent text compare equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub text: String,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ast {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Model(ModelDecl),
    Map(MapDecl),
    Task(TaskDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDecl {
    pub name: Ident,
    pub gens: Vec<GenDecl>,
    pub diffs: Vec<(Ident, Poly)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: Ident,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: Ident,
    pub source: Ident,
    pub target: Ident,
    pub images: Vec<(Ident, Poly)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskDecl {
    pub name: Ident,
    pub params: Vec<(Ident, Value)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value {
    pub text: String,
    pub quoted: bool,
    pub span: Span,
}

/// A polynomial; no terms means `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub terms: Vec<Term>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    /// `p` or `p/q`.
    pub coef: Option<(u64, Option<u64>)>,
    pub factors: Vec<Factor>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub name: Ident,
    pub power: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

pub fn parse_workspace(text: &str) -> Result<Ast, ParseError> {
    let mut p = Parser::new(text);
    let mut items = Vec::new();
    loop {
        p.skip_trivia();
        if p.at_end() {
            break;
        }
        let start = p.span();
        let word = p.ident("`model`, `map` or `task`")?;
        items.push(match word.text.as_str() {
            "model" => Item::Model(p.model()?),
            "map" => Item::Map(p.map()?),
            "task" => Item::Task(p.task()?),
            other => return Err(p.error_at(start, format!("expected `model`, `map` or `task`, found `{other}`"))),
        });
    }
    Ok(Ast { items })
}

/// Parses a standalone polynomial, as used in task parameters.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser::new(text);
    let poly = p.poly()?;
    p.skip_trivia();
    if !p.at_end() {
        return Err(p.error("unexpected input after polynomial"));
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn span(&self) -> Span {
        Span {
            line: self.line,
            col: self.col,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.span(), message.into())
    }

    fn error_at(&self, span: Span, message: String) -> ParseError {
        ParseError { span, message }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) => format!("`{c}`"),
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        self.skip_trivia();
        let matches = token
            .chars()
            .enumerate()
            .all(|(i, c)| self.chars.get(self.pos + i) == Some(&c));
        if !matches {
            return Err(self.error(format!("expected `{token}`, found {}", self.found())));
        }
        for _ in token.chars() {
            self.bump();
        }
        Ok(())
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_trivia();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn word(&mut self, hyphens: bool, what: &str) -> Result<Ident, ParseError> {
        self.skip_trivia();
        let span = self.span();
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return Err(self.error(format!("expected {what}, found {}", self.found())));
        }
        let mut text = String::new();
        while let Some(c) = self.peek() {
            let continues = c.is_ascii_alphanumeric()
                || c == '_'
                || (hyphens && c == '-' && self.chars.get(self.pos + 1).is_some_and(|d| d.is_ascii_alphanumeric()));
            if !continues {
                break;
            }
            text.push(c);
            self.bump();
        }
        Ok(Ident { text, span })
    }

    fn ident(&mut self, what: &str) -> Result<Ident, ParseError> {
        self.word(false, what)
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_trivia();
        let span = self.span();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            return Err(self.error(format!("expected an integer, found {}", self.found())));
        }
        digits
            .parse()
            .map_err(|_| self.error_at(span, format!("integer `{digits}` is too large")))
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let span = self.span();
        let n = self.int()?;
        u32::try_from(n).map_err(|_| self.error_at(span, format!("integer {n} is too large")))
    }

    fn model(&mut self) -> Result<ModelDecl, ParseError> {
        let name = self.ident("a model name")?;
        self.expect("{")?;
        let mut gens = Vec::new();
        let mut diffs = Vec::new();
        while !self.eat('}') {
            let kw = self.ident("`gen`, `d` or `}`")?;
            match kw.text.as_str() {
                "gen" if diffs.is_empty() => {
                    let name = self.ident("a generator name")?;
                    self.expect(":")?;
                    let degree = self.small_int()?;
                    self.expect(";")?;
                    gens.push(GenDecl { name, degree });
                }
                "gen" => {
                    return Err(self.error_at(
                        kw.span,
                        "generators must be declared before differentials".into(),
                    ))
                }
                "d" => {
                    let g = self.ident("a generator name")?;
                    self.expect("=")?;
                    let poly = self.poly()?;
                    self.expect(";")?;
                    diffs.push((g, poly));
                }
                other => {
                    return Err(self.error_at(kw.span, format!("expected `gen` or `d`, found `{other}`")))
                }
            }
        }
        Ok(ModelDecl { name, gens, diffs })
    }

    fn map(&mut self) -> Result<MapDecl, ParseError> {
        let name = self.ident("a map name")?;
        self.expect(":")?;
        let source = self.ident("a model name")?;
        self.expect("->")?;
        let target = self.ident("a model name")?;
        self.expect("{")?;
        let mut images = Vec::new();
        while !self.eat('}') {
            let g = self.ident("a generator name or `}`")?;
            self.expect("|->")?;
            let poly = self.poly()?;
            self.expect(";")?;
            images.push((g, poly));
        }
        Ok(MapDecl {
            name,
            source,
            target,
            images,
        })
    }

    fn task(&mut self) -> Result<TaskDecl, ParseError> {
        let name = self.ident("a task name")?;
        self.expect("{")?;
        let mut params = Vec::new();
        while !self.eat('}') {
            let key = self.word(true, "a parameter name or `}`")?;
            self.expect("=")?;
            let value = self.value()?;
            self.expect(";")?;
            params.push((key, value));
        }
        Ok(TaskDecl { name, params })
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        self.skip_trivia();
        let span = self.span();
        let mut text = String::new();
        if self.peek() == Some('"') {
            self.bump();
            loop {
                match self.bump() {
                    Some('"') => break,
                    Some('\n') | None => return Err(self.error_at(span, "unterminated string".into())),
                    Some(c) => text.push(c),
                }
            }
            return Ok(Value {
                text,
                quoted: true,
                span,
            });
        }
        while let Some(c) = self.peek().filter(|c| !c.is_whitespace() && *c != ';' && *c != '}') {
            text.push(c);
            self.bump();
        }
        if text.is_empty() {
            return Err(self.error(format!("expected a value, found {}", self.found())));
        }
        Ok(Value {
            text,
            quoted: false,
            span,
        })
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        self.skip_trivia();
        let span = self.span();
        if self.peek() == Some('0') && !self.chars.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit() || *c == '/') {
            self.bump();
            return Ok(Poly {
                terms: Vec::new(),
                span,
            });
        }
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        loop {
            terms.push(self.term(negative)?);
            self.skip_trivia();
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                _ => break,
            }
            self.bump();
        }
        Ok(Poly { terms, span })
    }

    fn term(&mut self, negative: bool) -> Result<Term, ParseError> {
        self.skip_trivia();
        let span = self.span();
        let coef = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let p = self.int()?;
            let q = if self.eat('/') {
                let q_span = self.span();
                let q = self.int()?;
                if q == 0 {
                    return Err(self.error_at(q_span, "zero denominator".into()));
                }
                Some(q)
            } else {
                None
            };
            self.eat('*');
            Some((p, q))
        } else {
            None
        };
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(Term {
            negative,
            coef,
            factors,
            span,
        })
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        let name = self.ident("a generator name")?;
        let power = if self.eat('^') {
            Some(self.small_int()?)
        } else {
            None
        };
        Ok(Factor { name, power })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match t.coef {
                Some((p, Some(q))) => write!(f, "{p}/{q}*")?,
                Some((p, None)) => write!(f, "{p}*")?,
                None => {}
            }
            for (j, factor) in t.factors.iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                f.write_str(&factor.name.text)?;
                if let Some(k) = factor.power {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Prints a workspace in canonical layout; parsing the output gives back
/// an equal [`Ast`].
pub fn print_workspace(ast: &Ast) -> String {
    let mut out = String::new();
    for (i, item) in ast.items.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match item {
            Item::Model(m) => {
                let _ = writeln!(out, "model {} {{", m.name.text);
                for g in &m.gens {
                    let _ = writeln!(out, "  gen {} : {};", g.name.text, g.degree);
                }
                for (g, p) in &m.diffs {
                    let _ = writeln!(out, "  d {} = {};", g.text, p);
                }
                out.push_str("}\n");
            }
            Item::Map(m) => {
                let _ = writeln!(out, "map {} : {} -> {} {{", m.name.text, m.source.text, m.target.text);
                for (g, p) in &m.images {
                    let _ = writeln!(out, "  {} |-> {};", g.text, p);
                }
                out.push_str("}\n");
            }
            Item::Task(t) => {
                let _ = writeln!(out, "task {} {{", t.name.text);
                for (k, v) in &t.params {
                    if v.quoted {
                        let _ = writeln!(out, "  {} = \"{}\";", k.text, v.text);
                    } else {
                        let _ = writeln!(out, "  {} = {};", k.text, v.text);
                    }
                }
                out.push_str("}\n");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE: &str = "
        model X { gen x4 : 4; gen x11 : 11; d x11 = x4^3; }
        model Y {
          gen y8 : 8; gen y15 : 15; gen y4 : 4; gen y19 : 19;
          d y15 = y8^2;   # the first relation
          d y19 = y4^5;
        }
        map f : Y -> X { y8 |-> x4^2; y15 |-> x4*x11; y4 |-> x4; y19 |-> x4^2*x11; }
        task seq { kind = g-sequence; map = f; max-degree = 24; }
    ";

    #[test]
    fn parses_the_example() {
        let ast = parse_workspace(EXAMPLE).unwrap();
        assert_eq!(ast.items.len(), 4);
        let Item::Model(y) = &ast.items[1] else { panic!() };
        assert_eq!(y.gens.len(), 4);
        assert_eq!(y.diffs[0].1.to_string(), "y8^2");
        let Item::Task(t) = &ast.items[3] else { panic!() };
        assert_eq!(t.params[2].0.text, "max-degree");
        assert_eq!(t.params[0].1.text, "g-sequence");
    }

    #[test]
    fn print_parse_fixpoint() {
        let ast = parse_workspace(EXAMPLE).unwrap();
        let printed = print_workspace(&ast);
        let again = parse_workspace(&printed).unwrap();
        assert_eq!(ast, again);
        assert_eq!(print_workspace(&again), printed);
    }

    #[test]
    fn polynomials() {
        let p = parse_poly("-3/2 x4^2*x11 + 5*y - z").unwrap();
        assert_eq!(p.to_string(), "-3/2*x4^2*x11 + 5*y - z");
        assert!(parse_poly("0").unwrap().terms.is_empty());
        assert_eq!(parse_poly("x +").unwrap_err().span.col, 4);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = parse_workspace("model X {\n  gen x : 3\n}").unwrap_err();
        assert_eq!((err.span.line, err.span.col), (3, 1));
        assert!(err.message.contains("`;`"), "{}", err.message);

        let err = parse_workspace("modle X {}").unwrap_err();
        assert_eq!((err.span.line, err.span.col), (1, 1));

        let err = parse_workspace("task t { kind = \"open }").unwrap_err();
        assert_eq!(err.message, "unterminated string");

        let err = parse_workspace("map f : A > B {}").unwrap_err();
        assert_eq!((err.span.line, err.span.col), (1, 11));
    }

    fn ident() -> impl Strategy<Value = String> {
        "[a-z][a-z0-9]{0,3}".prop_filter("keyword", |s| !matches!(s.as_str(), "d" | "gen"))
    }

    fn poly() -> impl Strategy<Value = String> {
        let term = (
            proptest::option::of((1u64..50, proptest::option::of(1u64..9))),
            proptest::collection::vec((ident(), proptest::option::of(1u32..5)), 1..3),
        )
            .prop_map(|(c, fs)| {
                let mut s = match c {
                    Some((p, Some(q))) => format!("{p}/{q} "),
                    Some((p, None)) => format!("{p} "),
                    None => String::new(),
                };
                let fs: Vec<String> = fs
                    .into_iter()
                    .map(|(n, k)| k.map_or(n.clone(), |k| format!("{n}^{k}")))
                    .collect();
                s.push_str(&fs.join(" * "));
                s
            });
        (proptest::collection::vec((term, any::<bool>()), 1..4), any::<bool>()).prop_map(|(ts, lead)| {
            let mut s = if lead { "- ".to_string() } else { String::new() };
            for (i, (t, neg)) in ts.into_iter().enumerate() {
                if i > 0 {
                    s.push_str(if neg { " -  " } else { "+" });
                }
                s.push_str(&t);
            }
            s
        })
    }

    proptest! {
        #[test]
        fn printed_polynomials_reparse(text in poly()) {
            let p = parse_poly(&text).unwrap();
            let q = parse_poly(&p.to_string()).unwrap();
            prop_assert_eq!(&p, &q);
            prop_assert_eq!(p.to_string(), q.to_string());
        }
    }
}
