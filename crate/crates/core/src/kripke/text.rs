use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::{One, Zero};

use super::{is_variable_name, validate_model, FanFamily, FanModel, FiniteModel, ModelError, Violation};
use crate::algebra::{EventualExpr, Rational, TruthValue};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ModelError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (ln + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let tok = if c.is_ascii_alphabetic() || c == '_' {
                let begin = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[begin..i].iter().collect())
            } else if c.is_ascii_digit() {
                let begin = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                // `p/q` is one literal; a slash followed by `(` is division.
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                Tok::Number(chars[begin..i].iter().collect())
            } else if "{}:,=+-/()".contains(c) {
                i += 1;
                Tok::Sym(c)
            } else {
                return Err(ModelError::Syntax {
                    line,
                    column,
                    message: format!("unexpected character `{c}`"),
                });
            };
            out.push(Spanned { tok, line, column });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    violations: Vec<Violation>,
}

const KEYWORDS: [&str; 6] = ["model", "worlds", "edge", "val", "fan", "from"];

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(s) if self.pos < self.toks.len() => (s.line, s.column),
            Some(s) => (s.line, s.column + 1),
            None => (1, 1),
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ModelError> {
        let (line, column) = self.here();
        Err(ModelError::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Some(Tok::Ident(s)) | Some(Tok::Number(s)) => format!("`{s}`"),
            Some(Tok::Sym(c)) => format!("`{c}`"),
            None => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ModelError> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected `{c}`, found {}", self.describe()))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(&Tok::Sym(c));
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ModelError> {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected `{kw}`, found {}", self.describe()))
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn name(&mut self, what: &str) -> Result<String, ModelError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn variable(&mut self) -> Result<String, ModelError> {
        let at = self.pos;
        let v = self.name("a variable")?;
        if !is_variable_name(&v) {
            self.pos = at;
            return self.fail(format!("`{v}` is not a variable name (expected [a-z][a-z0-9]*)"));
        }
        Ok(v)
    }

    fn rational(&mut self) -> Result<Rational, ModelError> {
        match self.peek() {
            Some(Tok::Number(s)) => {
                let s = s.clone();
                match crate::algebra::parse_rational(&s) {
                    Ok(r) => {
                        self.pos += 1;
                        Ok(r)
                    }
                    Err(e) => self.fail(e.to_string()),
                }
            }
            _ => self.fail(format!("expected a rational, found {}", self.describe())),
        }
    }

    fn integer(&mut self) -> Result<u64, ModelError> {
        match self.peek() {
            Some(Tok::Number(s)) if !s.contains('/') => match s.parse() {
                Ok(n) => {
                    self.pos += 1;
                    Ok(n)
                }
                Err(_) => self.fail(format!("integer `{s}` is too large")),
            },
            _ => self.fail(format!("expected an integer, found {}", self.describe())),
        }
    }

    fn world(&mut self, m: &FiniteModel) -> Result<usize, ModelError> {
        let at = self.pos;
        let w = self.name("a world name")?;
        match m.world_index(&w) {
            Some(i) => Ok(i),
            None => {
                self.pos = at;
                self.fail(format!("unknown world `{w}`"))
            }
        }
    }

    fn model_block(&mut self) -> Result<FiniteModel, ModelError> {
        self.expect_keyword("model")?;
        self.expect_sym('{')?;
        self.expect_keyword("worlds")?;
        self.expect_sym(':')?;
        let mut names: Vec<String> = Vec::new();
        loop {
            let at = self.pos;
            let w = self.name("a world name")?;
            if names.contains(&w) {
                self.pos = at;
                return self.fail(format!("duplicate world `{w}`"));
            }
            names.push(w);
            if !self.eat_sym(',') {
                break;
            }
        }
        let mut m = FiniteModel::new(names)?;
        loop {
            if self.eat_sym('}') {
                return Ok(m);
            }
            if self.at_keyword("edge") {
                self.pos += 1;
                let from = self.world(&m)?;
                let to = self.world(&m)?;
                self.expect_sym('=')?;
                let w = self.rational()?;
                match TruthValue::from_rational(w) {
                    Ok(tv) => m.set_edge(from, to, tv),
                    Err(_) => self.violations.push(Violation::EdgeOutOfRange {
                        from: m.world_name(from).to_string(),
                        to: m.world_name(to).to_string(),
                        weight: w,
                    }),
                }
            } else if self.at_keyword("val") {
                self.pos += 1;
                let world = self.world(&m)?;
                self.expect_sym('{')?;
                while !self.eat_sym('}') {
                    let var = self.variable()?;
                    self.expect_sym('=')?;
                    let v = self.rational()?;
                    match TruthValue::from_rational(v) {
                        Ok(tv) => m.set_value(world, var, tv),
                        Err(_) => self.violations.push(Violation::ValueOutOfRange {
                            world: m.world_name(world).to_string(),
                            var,
                            value: v,
                        }),
                    }
                    self.eat_sym(',');
                }
            } else {
                return self.fail(format!("expected `edge`, `val` or `}}`, found {}", self.describe()));
            }
        }
    }

    fn fan_block(&mut self, m: &FiniteModel) -> Result<FanFamily, ModelError> {
        self.expect_keyword("fan")?;
        let name = self.name("a family name")?;
        self.expect_keyword("at")?;
        let anchor = self.world(m)?;
        self.expect_sym('{')?;
        self.expect_keyword("from")?;
        let start = self.integer()?;
        let mut fam = FanFamily::new(name, m.world_name(anchor), start);
        while !self.eat_sym('}') {
            let var = self.variable()?;
            self.expect_sym('=')?;
            let limit = self.rational()?;
            let mut dev = Rational::zero();
            let mut offset = 0;
            let sign = if self.eat_sym('+') {
                Some(Rational::one())
            } else if self.eat_sym('-') {
                Some(-Rational::one())
            } else {
                None
            };
            if let Some(sign) = sign {
                dev = sign * self.rational()?;
                self.expect_sym('/')?;
                self.expect_sym('(')?;
                self.expect_keyword("i")?;
                if self.eat_sym('+') {
                    offset = self.integer()?;
                }
                self.expect_sym(')')?;
            }
            match EventualExpr::hyper(limit, dev, offset) {
                Ok(expr) => fam.set(var, expr),
                Err(_) => self.violations.push(Violation::LimitOutOfRange {
                    family: fam.name.clone(),
                    var,
                    limit,
                }),
            }
            self.eat_sym(',');
        }
        Ok(fam)
    }
}

/// Parses the model text format.
///
/// ```text
/// model { worlds: u, v1, w
///         edge u v1 = 1
///         edge u w = 1/2
///         val v1 { x = 1/3, y = 1/2 } }
/// fan F at u { from 2
///              x = 1/2 + 1/(i+0)
///              y = 1/2 }
/// ```
///
/// `#` starts a comment. Omitted edges have weight `0` and omitted values are
/// `0`. Out-of-range numbers and family problems are collected and reported
/// together as [`ModelError::Invalid`].
pub fn parse_model(text: &str) -> Result<FanModel, ModelError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        violations: Vec::new(),
    };
    let base = p.model_block()?;
    let mut families = Vec::new();
    while p.peek().is_some() {
        families.push(p.fan_block(&base)?);
    }
    let model = FanModel::new(base, families);
    let mut violations = p.violations;
    violations.extend(validate_model(&model));
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(ModelError::Invalid(violations))
    }
}

pub(super) fn unparse_finite(m: &FiniteModel) -> String {
    let mut s = String::new();
    writeln!(s, "model {{").unwrap();
    writeln!(s, "  worlds: {}", m.worlds().join(", ")).unwrap();
    for (&(a, b), w) in m.edges() {
        writeln!(s, "  edge {} {} = {w}", m.world_name(a), m.world_name(b)).unwrap();
    }
    for i in 0..m.len() {
        let vals = m.valuation(i);
        if !vals.is_empty() {
            writeln!(s, "  val {} {{ {} }}", m.world_name(i), assignments(vals)).unwrap();
        }
    }
    s.push_str("}\n");
    s
}

fn assignments<V: std::fmt::Display>(vals: &BTreeMap<String, V>) -> String {
    vals.iter()
        .map(|(k, v)| format!("{k} = {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Renders a model in the format read by [`parse_model`].
pub fn unparse_model(m: &FanModel) -> String {
    let mut s = unparse_finite(&m.base);
    for fam in &m.families {
        writeln!(s, "fan {} at {} {{", fam.name, fam.anchor).unwrap();
        writeln!(s, "  from {}", fam.start).unwrap();
        for (var, expr) in &fam.valuation {
            writeln!(s, "  {var} = {expr}").unwrap();
        }
        s.push_str("}\n");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const REMARK: &str = "
        # two worlds, one valued edge
        model { worlds: v, w
                edge v w = 1/2
                val w { x = 1, y = 1/2, z = 0 } }
    ";

    const LEMMA1: &str = "
        model { worlds: u }
        fan v at u { from 2
                     x = 1/2 + 1/(i+0)
                     y = 1/2 }
    ";

    #[test]
    fn valued_two_world_model() {
        let m = parse_model(REMARK).unwrap();
        assert!(m.families.is_empty());
        assert_eq!(m.base.worlds(), ["v", "w"]);
        assert_eq!(m.base.weight(0, 1), TruthValue::new(1, 2).unwrap());
        assert!(!m.base.is_crisp());
        assert_eq!(m.base.value(1, "x"), TruthValue::ONE);
        assert_eq!(m.base.value(1, "z"), TruthValue::ZERO);
    }

    #[test]
    fn fan_family() {
        let m = parse_model(LEMMA1).unwrap();
        assert_eq!(m.families.len(), 1);
        let fam = &m.families[0];
        assert_eq!((fam.name.as_str(), fam.anchor.as_str(), fam.start), ("v", "u", 2));
        assert_eq!(fam.expr("x").to_string(), "1/2 + 1/(i+0)");
        assert_eq!(fam.expr("y").to_string(), "1/2");
        assert_eq!(fam.expr("z").to_string(), "0");
    }

    #[test]
    fn round_trip() {
        for text in [REMARK, LEMMA1] {
            let m = parse_model(text).unwrap();
            assert_eq!(parse_model(&unparse_model(&m)).unwrap(), m);
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_model("model { worlds: }").unwrap_err();
        assert!(matches!(e, ModelError::Syntax { line: 1, column: 17, .. }), "{e}");
        let e = parse_model("model { worlds: a, a }").unwrap_err();
        assert_eq!(e.to_string(), "1:20: duplicate world `a`");
        let e = parse_model("model { worlds: a\n  edge a b = 1 }").unwrap_err();
        assert_eq!(e.to_string(), "2:10: unknown world `b`");
        let e = parse_model("model { worlds: a ; }").unwrap_err();
        assert_eq!(e.to_string(), "1:19: unexpected character `;`");
        let e = parse_model("").unwrap_err();
        assert!(matches!(e, ModelError::Syntax { .. }));
    }

    #[test]
    fn range_problems_are_violations() {
        let e = parse_model("model { worlds: a, b\n edge a b = 3/2 }").unwrap_err();
        assert_eq!(
            e,
            ModelError::Invalid(vec![Violation::EdgeOutOfRange {
                from: "a".into(),
                to: "b".into(),
                weight: Rational::new(3, 2),
            }])
        );
        let e = parse_model("model { worlds: u }\nfan v at u { from 1\n x = 1/2 + 1/(i+0) }").unwrap_err();
        assert_eq!(e.to_string(), "invalid model: family v: x takes value 3/2 outside [0,1] at i=1");
        let e = parse_model("model { worlds: a val a { x = 2 } }").unwrap_err();
        assert!(matches!(e, ModelError::Invalid(ref v) if matches!(v[0], Violation::ValueOutOfRange { .. })));
    }
}
