//! Recursive-descent parser for the ASCII rule syntax.
//!
//! ```text
//! rule     := premlist "|-" conclist
//! premlist := ε | formula ("," formula)*
//! conclist := ε | formula ("|" formula)*
//! formula  := PRED "(" term ")" | term "=" term | term "<=" term
//! term     := tm ("\/" tm)*
//! tm       := tn ("/\" tn)*
//! tn       := "~" tn | "(" term ")" | VAR | "#t" | "#n" | "#b" | "#f"
//! ```
//!
//! `#f` is read as `~#t` and `t <= u` as `t \/ u = u`; neither survives
//! into the syntax tree.

use super::{Constant, Formula, Pred, Rule, SigSpec, Term};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    UnknownPredicate(String),
    UnknownConstant(String),
    Arity { pred: String, expected: usize, found: usize },
}

/// A parse failure at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: ", self.pos)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found {found:?}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "expected {expected}, found end of input")
            }
            ParseErrorKind::UnknownPredicate(p) => {
                write!(f, "predicate {p} is not in the signature")
            }
            ParseErrorKind::UnknownConstant(c) => {
                write!(f, "constant {c} is not in the signature")
            }
            ParseErrorKind::Arity {
                pred,
                expected,
                found,
            } => write!(f, "{pred} takes {expected} argument(s), found {found}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(String),
    Meet,
    Join,
    Neg,
    LParen,
    RParen,
    Comma,
    Turnstile,
    Bar,
    Equals,
    Leq,
}

impl Tok {
    fn show(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Const(s) => s.clone(),
            Tok::Meet => "/\\".into(),
            Tok::Join => "\\/".into(),
            Tok::Neg => "~".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Comma => ",".into(),
            Tok::Turnstile => "|-".into(),
            Tok::Bar => "|".into(),
            Tok::Equals => "=".into(),
            Tok::Leq => "<=".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let two = |s: &[u8]| bytes.get(i..i + 2) == Some(s);
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'/' if two(b"/\\") => {
                i += 2;
                Tok::Meet
            }
            b'\\' if two(b"\\/") => {
                i += 2;
                Tok::Join
            }
            b'|' if two(b"|-") => {
                i += 2;
                Tok::Turnstile
            }
            b'<' if two(b"<=") => {
                i += 2;
                Tok::Leq
            }
            b'|' => {
                i += 1;
                Tok::Bar
            }
            b'~' => {
                i += 1;
                Tok::Neg
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'=' => {
                i += 1;
                Tok::Equals
            }
            b'#' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Const(input[start..i].to_string())
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Ident(input[start..i].to_string())
            }
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    pos: i,
                    kind: ParseErrorKind::UnexpectedChar(ch),
                });
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: &'a SigSpec,
}

impl<'a> Parser<'a> {
    fn new(input: &str, sig: &'a SigSpec) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(input)?,
            pos: 0,
            end: input.len(),
            sig,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.pos) {
            Some((p, t)) => ParseError {
                pos: *p,
                kind: ParseErrorKind::UnexpectedToken {
                    found: t.show(),
                    expected,
                },
            },
            None => ParseError {
                pos: self.end,
                kind: ParseErrorKind::UnexpectedEnd { expected },
            },
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            Err(self.unexpected("end of input"))
        } else {
            Ok(())
        }
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let mut premises = Vec::new();
        if self.peek() != Some(&Tok::Turnstile) {
            premises.push(self.formula()?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                premises.push(self.formula()?);
            }
        }
        self.expect(Tok::Turnstile, "`|-`")?;
        let mut conclusions = Vec::new();
        if self.peek().is_some() {
            conclusions.push(self.formula()?);
            while self.peek() == Some(&Tok::Bar) {
                self.pos += 1;
                conclusions.push(self.formula()?);
            }
        }
        self.finish()?;
        Ok(Rule::new(premises, conclusions))
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        if let (Some(Tok::Ident(name)), Some(Tok::LParen)) = (self.peek(), self.peek2()) {
            if let Some(pred) = Pred::from_name(name).filter(|p| p.arity() == 1) {
                let at = self.offset();
                if !self.sig.has_pred(pred) {
                    return Err(ParseError {
                        pos: at,
                        kind: ParseErrorKind::UnknownPredicate(name.clone()),
                    });
                }
                self.pos += 2;
                let mut args = vec![self.term()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                if args.len() != 1 {
                    return Err(ParseError {
                        pos: at,
                        kind: ParseErrorKind::Arity {
                            pred: pred.name().into(),
                            expected: 1,
                            found: args.len(),
                        },
                    });
                }
                return Ok(Formula::unary(pred, args.pop().unwrap()));
            }
        }
        let lhs = self.term()?;
        let at = self.offset();
        let leq = match self.peek() {
            Some(Tok::Equals) => false,
            Some(Tok::Leq) => true,
            _ => return Err(self.unexpected("`=` or `<=`")),
        };
        if !self.sig.has_pred(Pred::Eq) {
            return Err(ParseError {
                pos: at,
                kind: ParseErrorKind::UnknownPredicate("=".into()),
            });
        }
        self.pos += 1;
        let rhs = self.term()?;
        Ok(if leq {
            Formula::eq(Term::join(lhs, rhs.clone()), rhs)
        } else {
            Formula::eq(lhs, rhs)
        })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.meet_term()?;
        while self.peek() == Some(&Tok::Join) {
            self.pos += 1;
            let rhs = self.meet_term()?;
            t = Term::join(t, rhs);
        }
        Ok(t)
    }

    fn meet_term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.unary_term()?;
        while self.peek() == Some(&Tok::Meet) {
            self.pos += 1;
            let rhs = self.unary_term()?;
            t = Term::meet(t, rhs);
        }
        Ok(t)
    }

    fn unary_term(&mut self) -> Result<Term, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Neg) => {
                self.pos += 1;
                Ok(Term::neg(self.unary_term()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Term::var(&name))
            }
            Some(Tok::Const(sym)) => {
                self.pos += 1;
                let (c, negated) = if sym == "#f" {
                    (Constant::Top, true)
                } else {
                    match Constant::from_symbol(&sym) {
                        Some(c) => (c, false),
                        None => {
                            return Err(ParseError {
                                pos: at,
                                kind: ParseErrorKind::UnknownConstant(sym),
                            })
                        }
                    }
                };
                if !self.sig.has_constant(c) {
                    return Err(ParseError {
                        pos: at,
                        kind: ParseErrorKind::UnknownConstant(sym),
                    });
                }
                let t = Term::constant(c);
                Ok(if negated { Term::neg(t) } else { t })
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

/// Parses a rule in the given signature.
pub fn parse_rule(text: &str, sig: &SigSpec) -> Result<Rule, ParseError> {
    Parser::new(text, sig)?.rule()
}

/// Parses a single atomic formula.
pub fn parse_formula(text: &str, sig: &SigSpec) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a term; constants must be in the signature.
pub fn parse_term(text: &str, sig: &SigSpec) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full() -> SigSpec {
        SigSpec::new(Pred::ALL, Constant::ALL).unwrap()
    }

    #[test]
    fn parses_interaction_rule() {
        let r = parse_rule("E(x), T(~x \\/ y) |- T(y)", &full()).unwrap();
        let x = Term::var("x");
        let y = Term::var("y");
        let expected = Rule::single(
            [
                Formula::unary(Pred::E, x.clone()),
                Formula::unary(Pred::T, Term::join(Term::neg(x), y.clone())),
            ],
            Formula::unary(Pred::T, y),
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn parses_empty_sides() {
        let r = parse_rule("|- x = x", &full()).unwrap();
        assert!(r.premises().is_empty());
        assert_eq!(
            r.conclusion(),
            Some(&Formula::eq(Term::var("x"), Term::var("x")))
        );

        let r = parse_rule("T(~x), NF(x) |-", &full()).unwrap();
        assert_eq!(r.premises().len(), 2);
        assert!(r.conclusions().is_empty());

        let r = parse_rule("|-", &full()).unwrap();
        assert_eq!(r, Rule::default());
    }

    #[test]
    fn precedence_and_associativity() {
        let t = parse_term("~x /\\ y \\/ z /\\ ~~w", &full()).unwrap();
        let expected = Term::join(
            Term::meet(Term::neg(Term::var("x")), Term::var("y")),
            Term::meet(Term::var("z"), Term::neg(Term::neg(Term::var("w")))),
        );
        assert_eq!(t, expected);
        let t = parse_term("x \\/ y \\/ z", &full()).unwrap();
        assert_eq!(
            t,
            Term::join(Term::join(Term::var("x"), Term::var("y")), Term::var("z"))
        );
    }

    #[test]
    fn sugar_is_desugared() {
        let f = parse_formula("#f = ~#t", &full()).unwrap();
        let nt = Term::neg(Term::constant(Constant::Top));
        assert_eq!(f, Formula::eq(nt.clone(), nt));

        let f = parse_formula("x <= y", &full()).unwrap();
        assert_eq!(
            f,
            Formula::eq(Term::join(Term::var("x"), Term::var("y")), Term::var("y"))
        );
    }

    #[test]
    fn multiple_conclusions() {
        let r = parse_rule("NF(x \\/ y) |- NF(x) | NF(y)", &full()).unwrap();
        assert_eq!(r.conclusions().len(), 2);
    }

    #[test]
    fn reports_positions() {
        let sig = SigSpec::new([Pred::T], []).unwrap();
        let err = parse_rule("T(x), T(y) |- x = y", &sig).unwrap_err();
        assert_eq!(err.pos, 16);
        assert!(matches!(err.kind, ParseErrorKind::UnknownPredicate(_)));

        let err = parse_rule("T(x) |- E(x)", &sig).unwrap_err();
        assert_eq!(err.pos, 8);

        let err = parse_rule("T(x) |- T(#n)", &sig).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownConstant("#n".into()));

        let err = parse_rule("T(x, y) |-", &sig).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Arity { found: 2, .. }));

        let err = parse_rule("T(x) $ |-", &sig).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedChar('$'));
        assert_eq!(err.pos, 5);

        let err = parse_rule("T(x /\\ ) |-", &sig).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedToken { .. }));

        let err = parse_rule("T(x)", &sig).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedEnd { .. }));
    }

    #[test]
    fn predicate_names_can_be_variables() {
        let r = parse_rule("|- T = E", &full()).unwrap();
        assert_eq!(r.to_string(), "|- T = E");
    }
}
