//! Recursive-descent parser for the constraint language.
//!
//! ```text
//! constraint := conj ( OR conj )*
//! conj       := lit ( AND lit )*
//! lit        := NOT lit | '(' constraint ')' | item
//! ```
//!
//! The parse tree is flattened to DNF without distributing anything, so an
//! `OR` beneath an `AND` or a `NOT` over anything but an item is rejected.

use crate::error::{Error, Result};
use crate::taxonomy::{ConceptHierarchy, ItemCode};

use super::{Constraint, Literal};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    And,
    Or,
    Not,
    Comma,
    Item(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | ')' | ',' => {
                chars.next();
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => Tok::Comma,
                };
                out.push((pos, tok));
            }
            '"' => {
                chars.next();
                let mut label = String::new();
                loop {
                    match chars.next() {
                        Some((_, '"')) => break,
                        Some((_, ch)) => label.push(ch),
                        None => {
                            return Err(Error::Syntax {
                                pos,
                                message: "unterminated quoted label".into(),
                            })
                        }
                    }
                }
                out.push((pos, Tok::Item(label)));
            }
            _ => {
                let mut word = String::new();
                while let Some(&(_, ch)) = chars.peek() {
                    if ch.is_whitespace() || matches!(ch, '(' | ')' | ',' | '"') {
                        break;
                    }
                    word.push(ch);
                    chars.next();
                }
                let tok = match word.to_ascii_uppercase().as_str() {
                    "AND" => Tok::And,
                    "OR" => Tok::Or,
                    "NOT" | "NON" => Tok::Not,
                    _ => Tok::Item(word),
                };
                out.push((pos, tok));
            }
        }
    }
    Ok(out)
}

#[derive(Debug)]
enum Expr {
    Item(usize, String),
    Not(usize, Box<Expr>),
    And(usize, Vec<Expr>),
    Or(Vec<Expr>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    commas: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn or_expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.and_expr()?];
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            terms.push(self.and_expr()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Or(terms) })
    }

    fn and_expr(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let mut terms = vec![self.unary()?];
        loop {
            match self.peek() {
                Some(Tok::And) => {}
                Some(Tok::Comma) if self.commas => {}
                _ => break,
            }
            self.at += 1;
            terms.push(self.unary()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::And(pos, terms) })
    }

    fn unary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.at += 1;
                Ok(Expr::Not(pos, Box::new(self.unary()?)))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.or_expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.syntax("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(Tok::Item(name)) => {
                self.at += 1;
                Ok(Expr::Item(pos, name))
            }
            Some(tok) => self.syntax(format!("unexpected {tok:?}")),
            None => self.syntax("unexpected end of input"),
        }
    }
}

fn parse_expr(text: &str, commas: bool) -> Result<Option<Expr>> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Ok(None);
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        commas,
    };
    let expr = p.or_expr()?;
    if p.at != p.toks.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(Some(expr))
}

fn to_dnf(expr: Expr, h: &ConceptHierarchy) -> Result<Vec<Vec<Literal>>> {
    match expr {
        Expr::Item(_, name) => Ok(vec![vec![Literal::pos(h.resolve(&name)?)]]),
        Expr::Not(_, inner) => match *inner {
            Expr::Item(_, name) => Ok(vec![vec![Literal::neg(h.resolve(&name)?)]]),
            other => Err(Error::NonDnf {
                pos: start(&other),
                message: "NOT may only apply to a single item".into(),
            }),
        },
        Expr::And(_, terms) => {
            let mut lits = Vec::new();
            for term in terms {
                let pos = start(&term);
                let mut dnf = to_dnf(term, h)?;
                if dnf.len() != 1 {
                    return Err(Error::NonDnf {
                        pos,
                        message: "OR nested under AND".into(),
                    });
                }
                lits.append(&mut dnf[0]);
            }
            Ok(vec![lits])
        }
        Expr::Or(terms) => {
            let mut out = Vec::new();
            for term in terms {
                out.extend(to_dnf(term, h)?);
            }
            Ok(out)
        }
    }
}

fn start(expr: &Expr) -> usize {
    match expr {
        Expr::Item(p, _) | Expr::Not(p, _) | Expr::And(p, _) => *p,
        Expr::Or(terms) => terms.first().map_or(0, start),
    }
}

pub(super) fn parse_constraint(text: &str, h: &ConceptHierarchy) -> Result<Constraint> {
    match parse_expr(text, false)? {
        None => Ok(Constraint::tautology()),
        Some(expr) => Constraint::from_literals(to_dnf(expr, h)?),
    }
}

/// Items of a pure-negation conjunction; bare items count as negated.
pub(super) fn parse_negation_list(text: &str, h: &ConceptHierarchy) -> Result<Vec<ItemCode>> {
    let Some(expr) = parse_expr(text, true)? else {
        return Ok(Vec::new());
    };
    let pos = start(&expr);
    let mut dnf = to_dnf(expr, h)?;
    if dnf.len() != 1 {
        return Err(Error::NonDnf {
            pos,
            message: "the negation part must be a single conjunction".into(),
        });
    }
    Ok(dnf.remove(0).into_iter().map(|l| l.item).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::Conjunction;
    use crate::sample;
    use crate::taxonomy::ROOT;

    fn code(s: &str) -> ItemCode {
        s.parse().unwrap()
    }

    #[test]
    fn flat_example() {
        let h = sample::hierarchy();
        let ct = parse_constraint("(NOT 3** AND 11*) OR 2**", &h).unwrap();
        let expected = Constraint::from_literals(vec![
            vec![Literal::neg(code("3")), Literal::pos(code("1.1"))],
            vec![Literal::pos(code("2"))],
        ])
        .unwrap();
        assert_eq!(ct, expected);
        let wordy = parse_constraint("((NON (3**)) AND (11*)) OR (2**)", &h).unwrap();
        assert_eq!(wordy, expected);
    }

    #[test]
    fn precedence() {
        let h = ConceptHierarchy::build(["A", "B", "C", "D", "E"].map(|x| (ROOT, x))).unwrap();
        let ct = parse_constraint("A AND B OR D AND C", &h).unwrap();
        assert_eq!(ct.conjunctions().len(), 2);
        assert_eq!(ct.conjunctions()[0].literals().len(), 2);
        let ct = parse_constraint("not a and B", &h);
        assert!(matches!(ct, Err(Error::UnknownItem(_))), "labels are case-sensitive");
        let ct = parse_constraint("not A and B", &h).unwrap();
        assert_eq!(ct.conjunctions()[0].literals()[0], Literal::neg(h.resolve("A").unwrap()));
    }

    #[test]
    fn quoted_labels() {
        let h = sample::hierarchy();
        let ct = parse_constraint("\"2% milk\" AND NOT \"white bread\"", &h).unwrap();
        assert_eq!(
            ct.conjunctions()[0],
            Conjunction::new(vec![Literal::pos(code("11")), Literal::neg(code("21"))]).unwrap()
        );
        assert!(matches!(
            parse_constraint("\"2% milk", &h),
            Err(Error::Syntax { pos: 0, .. })
        ));
    }

    #[test]
    fn rejects_non_dnf() {
        let h = ConceptHierarchy::build(["A", "B", "C"].map(|x| (ROOT, x))).unwrap();
        assert!(matches!(parse_constraint("NOT (A OR B)", &h), Err(Error::NonDnf { .. })));
        assert!(matches!(parse_constraint("NOT (A AND B)", &h), Err(Error::NonDnf { .. })));
        assert!(matches!(parse_constraint("NOT NOT A", &h), Err(Error::NonDnf { .. })));
        assert!(matches!(
            parse_constraint("A AND (B OR C)", &h),
            Err(Error::NonDnf { pos: 7, .. })
        ));
        assert!(parse_constraint("(A OR B) OR (C)", &h).is_ok());
    }

    #[test]
    fn syntax_errors_report_position() {
        let h = ConceptHierarchy::build(["A", "B"].map(|x| (ROOT, x))).unwrap();
        assert!(matches!(parse_constraint("A AND", &h), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_constraint("A B", &h), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_constraint("(A", &h), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_constraint("A, B", &h), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_constraint(") A", &h), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn conflicting_signs() {
        let h = sample::hierarchy();
        assert!(matches!(
            parse_constraint("1** AND NOT 1**", &h),
            Err(Error::ConflictingLiteral(_))
        ));
        // Across conjunctions it is allowed.
        assert!(parse_constraint("(1** AND NOT 3**) OR (2** AND 3**)", &h).is_ok());
    }

    #[test]
    fn unknown_items() {
        let h = sample::hierarchy();
        assert!(matches!(parse_constraint("4**", &h), Err(Error::UnknownItem(_))));
        assert!(matches!(parse_constraint("butter", &h), Err(Error::UnknownItem(_))));
    }
}
