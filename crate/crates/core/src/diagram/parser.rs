//! Recursive-descent parser for diagram programs.
//!
//! ```text
//! program := decl* "term" term
//! decl    := "obj" NAME | "gen" NAME ":" objexpr "->" objexpr
//! objexpr := objatom ("*" objatom)*
//! objatom := "e" | NAME | "inv(" objexpr ")" | "(" objexpr ")"
//! term    := hterm (";" hterm)*
//! hterm   := atom ("*" atom)*
//! atom    := "id(" objexpr ")" | "epsilon(" objexpr ")" | "iota(" objexpr ")"
//!          | "vinv(" term ")" | "(" term ")" | NAME
//! ```

use super::ast::{Decl, ObjExpr, Program, Term};
use super::DiagramError;

const RESERVED: [&str; 9] = ["e", "id", "inv", "epsilon", "iota", "vinv", "obj", "gen", "term"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    LParen,
    RParen,
    Star,
    Semi,
    Colon,
    Arrow,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("'{n}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Star => "'*'".into(),
            Tok::Semi => "';'".into(),
            Tok::Colon => "':'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, DiagramError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'*' => Tok::Star,
            b';' => Tok::Semi,
            b':' => Tok::Colon,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((i, Tok::Arrow));
                i += 2;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(DiagramError::SyntaxError {
                    position: i,
                    expected: "a name, '(', ')', '*', ';', ':' or '->'".into(),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek_name(&self) -> Option<&str> {
        match self.peek() {
            Tok::Name(n) => Some(n),
            _ => None,
        }
    }

    fn error<T>(&self, expected: &str) -> Result<T, DiagramError> {
        Err(DiagramError::SyntaxError {
            position: self.toks[self.at].0,
            expected: format!("{expected}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), DiagramError> {
        if *self.peek() == tok {
            self.at += 1;
            Ok(())
        } else {
            self.error(&tok.describe())
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.peek_name() == Some(kw) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> Result<String, DiagramError> {
        match self.peek_name() {
            Some(n) if !RESERVED.contains(&n) => {
                let n = n.to_string();
                self.at += 1;
                Ok(n)
            }
            _ => self.error("a name"),
        }
    }

    fn program(&mut self) -> Result<Program, DiagramError> {
        let mut decls = Vec::new();
        loop {
            if self.keyword("obj") {
                decls.push(Decl::Obj(self.name()?));
            } else if self.keyword("gen") {
                let name = self.name()?;
                self.expect(Tok::Colon)?;
                let source = self.objexpr()?;
                self.expect(Tok::Arrow)?;
                let target = self.objexpr()?;
                decls.push(Decl::Gen { name, source, target });
            } else if self.keyword("term") {
                let term = self.term()?;
                self.expect(Tok::End)?;
                return Ok(Program { decls, term });
            } else {
                return self.error("'obj', 'gen' or 'term'");
            }
        }
    }

    fn objexpr(&mut self) -> Result<ObjExpr, DiagramError> {
        let mut acc = self.objatom()?;
        while *self.peek() == Tok::Star {
            self.at += 1;
            acc = ObjExpr::mul(acc, self.objatom()?);
        }
        Ok(acc)
    }

    fn objatom(&mut self) -> Result<ObjExpr, DiagramError> {
        if *self.peek() == Tok::LParen {
            self.at += 1;
            let o = self.objexpr()?;
            self.expect(Tok::RParen)?;
            return Ok(o);
        }
        if self.keyword("e") {
            return Ok(ObjExpr::Unit);
        }
        if self.keyword("inv") {
            self.expect(Tok::LParen)?;
            let o = self.objexpr()?;
            self.expect(Tok::RParen)?;
            return Ok(ObjExpr::inv(o));
        }
        match self.name() {
            Ok(n) => Ok(ObjExpr::Sym(n)),
            Err(_) => self.error("an object expression"),
        }
    }

    fn term(&mut self) -> Result<Term, DiagramError> {
        let mut acc = self.hterm()?;
        while *self.peek() == Tok::Semi {
            self.at += 1;
            acc = Term::vcomp(acc, self.hterm()?);
        }
        Ok(acc)
    }

    fn hterm(&mut self) -> Result<Term, DiagramError> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Star {
            self.at += 1;
            acc = Term::hcomp(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term, DiagramError> {
        if *self.peek() == Tok::LParen {
            self.at += 1;
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(t);
        }
        for (kw, build) in [
            ("id", Term::Id as fn(ObjExpr) -> Term),
            ("epsilon", Term::Epsilon),
            ("iota", Term::Iota),
        ] {
            if self.keyword(kw) {
                self.expect(Tok::LParen)?;
                let o = self.objexpr()?;
                self.expect(Tok::RParen)?;
                return Ok(build(o));
            }
        }
        if self.keyword("vinv") {
            self.expect(Tok::LParen)?;
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(Term::vinv(t));
        }
        match self.name() {
            Ok(n) => Ok(Term::Gen(n)),
            Err(_) => self.error("a term"),
        }
    }
}

pub fn parse_program(text: &str) -> Result<Program, DiagramError> {
    Parser { toks: lex(text)?, at: 0 }.program()
}

/// Parses a bare term, without declarations.
pub fn parse_term(text: &str) -> Result<Term, DiagramError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let t = p.term()?;
    p.expect(Tok::End)?;
    Ok(t)
}

pub fn parse_objexpr(text: &str) -> Result<ObjExpr, DiagramError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let o = p.objexpr()?;
    p.expect(Tok::End)?;
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_on_unit() {
        assert_eq!(parse_term("id(e)").unwrap(), Term::Id(ObjExpr::Unit));
    }

    #[test]
    fn vertical_composite() {
        assert_eq!(parse_term("f ; g").unwrap(), Term::vcomp(Term::gen("f"), Term::gen("g")));
    }

    #[test]
    fn mixed_and_precedence() {
        let t = parse_term("(f * id(y)) ; h").unwrap();
        assert_eq!(
            t,
            Term::vcomp(Term::hcomp(Term::gen("f"), Term::Id(ObjExpr::sym("y"))), Term::gen("h"))
        );
        // `*` binds tighter than `;`, both associate to the left
        assert_eq!(parse_term("a * b ; c * d").unwrap(), parse_term("(a * b) ; (c * d)").unwrap());
        assert_eq!(parse_term("a ; b ; c").unwrap(), parse_term("(a ; b) ; c").unwrap());
        assert_eq!(parse_term("a*b*c").unwrap(), parse_term("(a * b) * c").unwrap());
    }

    #[test]
    fn programs() {
        let p = parse_program("obj x obj y\n gen f : x * inv(y) -> e\nterm vinv(f) ; f").unwrap();
        assert_eq!(p.decls.len(), 3);
        assert_eq!(parse_program(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_term("f ; ") {
            Err(DiagramError::SyntaxError { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_term("f # g"), Err(DiagramError::SyntaxError { position: 2, .. })));
        assert!(parse_term("id").is_err());
        assert!(parse_term("e").is_err());
        assert!(parse_program("obj id term id(e)").is_err());
        assert!(parse_program("term f g").is_err());
    }

    #[test]
    fn right_nested_products_print_with_parentheses() {
        let t = Term::hcomp(Term::gen("a"), Term::hcomp(Term::gen("b"), Term::gen("c")));
        assert_eq!(t.to_string(), "a * (b * c)");
        assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        let o = ObjExpr::mul(ObjExpr::sym("x"), ObjExpr::mul(ObjExpr::Unit, ObjExpr::sym("y")));
        assert_eq!(o.to_string(), "x * (e * y)");
        assert_eq!(parse_objexpr(&o.to_string()).unwrap(), o);
    }
}
