use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty formula")]
    Empty,
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected `{found}`, expected {expected}")]
    UnexpectedToken { found: String, expected: &'static str },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("unclosed parenthesis")]
    Unclosed,
    #[error("unmatched closing parenthesis")]
    Unmatched,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(String),
    Zero,
    One,
    Tilde,
    Box,
    Diamond,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Var(v) => v.clone(),
            Tok::Zero => "0".into(),
            Tok::One => "1".into(),
            Tok::Tilde => "~".into(),
            Tok::Box => "[]".into(),
            Tok::Diamond => "<>".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Arrow => "->".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn err(kind: ParseErrorKind, position: usize) -> ParseError {
    ParseError { kind, position }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let two = |next: u8| bytes.get(i + 1) == Some(&next);
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'a'..=b'z' => {
                let begin = i;
                while i < bytes.len() && matches!(bytes[i], b'a'..=b'z' | b'0'..=b'9') {
                    i += 1;
                }
                out.push((Tok::Var(text[begin..i].to_string()), begin));
                continue;
            }
            b'0' => Tok::Zero,
            b'1' => Tok::One,
            b'~' => Tok::Tilde,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' if two(b']') => Tok::Box,
            b'<' if two(b'>') => Tok::Diamond,
            b'-' if two(b'>') => Tok::Arrow,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(ParseErrorKind::UnexpectedChar(ch), i));
            }
        };
        let width = if matches!(tok, Tok::Box | Tok::Diamond | Tok::Arrow) { 2 } else { 1 };
        out.push((tok, i));
        i += width;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, o)| o)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        const EXPECTED: &str = "a variable, constant, unary operator or `(`";
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(err(ParseErrorKind::UnexpectedEnd(EXPECTED), at));
        };
        self.pos += 1;
        match tok {
            Tok::Var(v) => Ok(Formula::Var(v)),
            Tok::Zero => Ok(Formula::Bottom),
            Tok::One => Ok(Formula::top()),
            Tok::Tilde => Ok(Formula::neg(self.unary()?)),
            Tok::Box => Ok(Formula::boxed(self.unary()?)),
            Tok::Diamond => Ok(Formula::diamond(self.unary()?)),
            Tok::LParen => {
                let inner = self.implication()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    None => Err(err(ParseErrorKind::Unclosed, at)),
                    Some(other) => Err(err(
                        ParseErrorKind::UnexpectedToken {
                            found: other.text(),
                            expected: "`)` or a binary operator",
                        },
                        self.offset(),
                    )),
                }
            }
            Tok::RParen => Err(err(ParseErrorKind::Unmatched, at)),
            other => Err(err(
                ParseErrorKind::UnexpectedToken {
                    found: other.text(),
                    expected: EXPECTED,
                },
                at,
            )),
        }
    }
}

/// Parses the ASCII formula grammar: variables `[a-z][a-z0-9]*`, constants
/// `0`/`1`, prefix `~ [] <>`, and `&` > `|` > `->` (right-associative).
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(err(ParseErrorKind::Empty, 0));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = p.implication()?;
    match p.peek() {
        None => Ok(f),
        Some(Tok::RParen) => Err(err(ParseErrorKind::Unmatched, p.offset())),
        Some(other) => Err(err(
            ParseErrorKind::UnexpectedToken {
                found: other.text(),
                expected: "a binary operator or end of input",
            },
            p.offset(),
        )),
    }
}
