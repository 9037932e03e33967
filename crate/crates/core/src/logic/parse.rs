//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Precedence from tightest: `~`, `&`, `|`, `->`, `<->`. `->` associates to
//! the right; `&`, `|` and `<->` to the left. `T` and `F` are the constants.

use super::{Formula, Language};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'~' => {
                tokens.push((i, Token::Not));
                i += 1;
            }
            b'&' => {
                tokens.push((i, Token::And));
                i += 1;
            }
            b'|' => {
                tokens.push((i, Token::Or));
                i += 1;
            }
            b'(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            b')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                tokens.push((i, Token::Implies));
                i += 2;
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                tokens.push((i, Token::Iff));
                i += 3;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(text[start..i].to_string())));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    lang: &'a Language,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut left = self.implication()?;
        while self.eat(&Token::Iff) {
            let right = self.implication()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if self.eat(&Token::Implies) {
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut left = self.conjunction()?;
        while self.eat(&Token::Or) {
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.eat(&Token::And) {
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Token::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        let offset = self.offset();
        match self.tokens.get(self.pos).cloned() {
            Some((_, Token::LParen)) => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Token::RParen) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Some((_, Token::Ident(name))) => {
                self.pos += 1;
                match name.as_str() {
                    "T" => Ok(Formula::Verum),
                    "F" => Ok(Formula::Falsum),
                    _ => self
                        .lang
                        .atom_index(&name)
                        .map(Formula::Atom)
                        .ok_or(Error::UnknownAtom(name)),
                }
            }
            Some((_, t)) => Err(syntax(offset, format!("unexpected token {t:?}"))),
            None => Err(syntax(offset, "unexpected end of input")),
        }
    }
}

pub fn parse_formula(text: &str, lang: &Language) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        lang,
    };
    let formula = parser.iff()?;
    if parser.pos != parser.tokens.len() {
        return Err(syntax(parser.offset(), "trailing input"));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Language {
        Language::new(["A", "B"]).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let lang = ab();
        let (a, b) = (Formula::Atom(0), Formula::Atom(1));
        assert_eq!(
            parse_formula("A & B", &lang).unwrap(),
            Formula::and(a.clone(), b.clone())
        );
        assert_eq!(
            parse_formula("~(A | B)", &lang).unwrap(),
            Formula::not(Formula::or(a.clone(), b.clone()))
        );
        assert_eq!(
            parse_formula("A -> (B <-> ~A)", &lang).unwrap(),
            Formula::implies(a.clone(), Formula::iff(b, Formula::not(a)))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let lang = Language::new(["A", "B", "C"]).unwrap();
        let (a, b, c) = (Formula::Atom(0), Formula::Atom(1), Formula::Atom(2));
        assert_eq!(
            parse_formula("A | B & C", &lang).unwrap(),
            Formula::or(a.clone(), Formula::and(b.clone(), c.clone()))
        );
        assert_eq!(
            parse_formula("A -> B -> C", &lang).unwrap(),
            Formula::implies(a.clone(), Formula::implies(b.clone(), c.clone()))
        );
        assert_eq!(
            parse_formula("A & B & C", &lang).unwrap(),
            Formula::and(Formula::and(a.clone(), b.clone()), c.clone())
        );
        assert_eq!(
            parse_formula("A <-> B -> C", &lang).unwrap(),
            Formula::iff(a.clone(), Formula::implies(b.clone(), c.clone()))
        );
        assert_eq!(
            parse_formula("~A & T | F", &lang).unwrap(),
            Formula::or(Formula::and(Formula::not(a), Formula::Verum), Formula::Falsum)
        );
    }

    #[test]
    fn errors_carry_positions() {
        let lang = ab();
        assert_eq!(
            parse_formula("A & C", &lang),
            Err(Error::UnknownAtom("C".into()))
        );
        match parse_formula("A & ", &lang) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_formula("(A | B", &lang) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_formula("A # B", &lang) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_formula("A B", &lang),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(parse_formula("", &lang).is_err());
    }
}
