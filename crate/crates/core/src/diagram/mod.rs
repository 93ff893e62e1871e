//! A small language of string-diagram terms, checked and evaluated in a
//! crossed module.
//!
//! Objects name elements of the base group and generators name arrows. A
//! generator `f : a -> b` bound to `h` must satisfy `d(h) * b = a`, so it is
//! the arrow `(h, b)`.

mod ast;
mod parser;

use std::collections::HashMap;

use thiserror::Error;

use crate::crossed::{Arrow, CrossedModule};

pub use ast::{Decl, ObjExpr, Program, Term};
pub use parser::{parse_objexpr, parse_program, parse_term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at byte {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },
    #[error("unbound symbol '{0}'")]
    UnboundSymbol(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("duplicate declaration of '{0}'")]
    DuplicateDeclaration(String),
    #[error("value {value} for '{name}' is out of range")]
    ValueOutOfRange { name: String, value: usize },
}

impl DiagramError {
    pub fn kind(&self) -> &'static str {
        match self {
            DiagramError::SyntaxError { .. } => "SyntaxError",
            DiagramError::UnboundSymbol(_) => "UnboundSymbol",
            DiagramError::BoundaryMismatch(_) => "BoundaryMismatch",
            DiagramError::DuplicateDeclaration(_) => "DuplicateDeclaration",
            DiagramError::ValueOutOfRange { .. } => "ValueOutOfRange",
        }
    }
}

#[derive(Debug, Clone)]
struct Generator {
    target: ObjExpr,
    value: usize,
}

/// Symbol bindings for evaluating terms in one crossed module.
#[derive(Debug, Clone)]
pub struct Context<'a> {
    xm: &'a CrossedModule,
    objects: HashMap<String, usize>,
    generators: HashMap<String, Generator>,
}

impl<'a> Context<'a> {
    pub fn new(xm: &'a CrossedModule) -> Self {
        Context {
            xm,
            objects: HashMap::new(),
            generators: HashMap::new(),
        }
    }

    /// Builds a context from a program's declarations and values for every
    /// declared symbol.
    pub fn from_program(
        xm: &'a CrossedModule,
        program: &Program,
        objects: &HashMap<String, usize>,
        generators: &HashMap<String, usize>,
    ) -> Result<Self, DiagramError> {
        let mut ctx = Context::new(xm);
        for decl in &program.decls {
            match decl {
                Decl::Obj(name) => {
                    let v = *objects.get(name).ok_or_else(|| DiagramError::UnboundSymbol(name.clone()))?;
                    ctx.bind_object(name, v)?;
                }
                Decl::Gen { name, .. } if !generators.contains_key(name) => {
                    return Err(DiagramError::UnboundSymbol(name.clone()));
                }
                Decl::Gen { .. } => {}
            }
        }
        for decl in &program.decls {
            if let Decl::Gen { name, source, target } = decl {
                ctx.bind_generator(name, source.clone(), target.clone(), generators[name])?;
            }
        }
        Ok(ctx)
    }

    pub fn crossed_module(&self) -> &CrossedModule {
        self.xm
    }

    pub fn bind_object(&mut self, name: &str, value: usize) -> Result<(), DiagramError> {
        if value >= self.xm.d_group().order() {
            return Err(DiagramError::ValueOutOfRange { name: name.into(), value });
        }
        if self.objects.contains_key(name) || self.generators.contains_key(name) {
            return Err(DiagramError::DuplicateDeclaration(name.into()));
        }
        self.objects.insert(name.into(), value);
        Ok(())
    }

    /// Binds `name : source -> target` to `value`; the objects it mentions
    /// must already be bound.
    pub fn bind_generator(
        &mut self,
        name: &str,
        source: ObjExpr,
        target: ObjExpr,
        value: usize,
    ) -> Result<(), DiagramError> {
        if value >= self.xm.h().order() {
            return Err(DiagramError::ValueOutOfRange { name: name.into(), value });
        }
        if self.objects.contains_key(name) || self.generators.contains_key(name) {
            return Err(DiagramError::DuplicateDeclaration(name.into()));
        }
        let a = self.eval_obj(&source)?;
        let b = self.eval_obj(&target)?;
        let dg = self.xm.d_group();
        if dg.mul(self.xm.d(value), b) != a {
            return Err(DiagramError::BoundaryMismatch(format!(
                "generator {name} : {source} -> {target} bound to {value}"
            )));
        }
        self.generators.insert(name.into(), Generator { target, value });
        Ok(())
    }

    pub fn eval_obj(&self, o: &ObjExpr) -> Result<usize, DiagramError> {
        let g = self.xm.d_group();
        Ok(match o {
            ObjExpr::Unit => g.identity(),
            ObjExpr::Sym(s) => *self.objects.get(s).ok_or_else(|| DiagramError::UnboundSymbol(s.clone()))?,
            ObjExpr::Mul(a, b) => g.mul(self.eval_obj(a)?, self.eval_obj(b)?),
            ObjExpr::Inv(a) => g.inv(self.eval_obj(a)?),
        })
    }

    /// Source and target words of a term, as base-group elements.
    pub fn typecheck(&self, t: &Term) -> Result<(usize, usize), DiagramError> {
        let a = self.evaluate(t)?;
        Ok((self.xm.source(a), self.xm.target(a)))
    }

    pub fn evaluate(&self, t: &Term) -> Result<Arrow, DiagramError> {
        let xm = self.xm;
        match t {
            Term::Id(o) => Ok(xm.identity_arrow(self.eval_obj(o)?)),
            Term::Gen(name) => {
                let g = self
                    .generators
                    .get(name)
                    .ok_or_else(|| DiagramError::UnboundSymbol(name.clone()))?;
                Ok(Arrow::new(g.value, self.eval_obj(&g.target)?))
            }
            Term::Epsilon(o) | Term::Iota(o) => {
                self.eval_obj(o)?;
                Ok(xm.identity_arrow(xm.d_group().identity()))
            }
            Term::VInv(a) => Ok(xm.invert_arrow(self.evaluate(a)?)),
            Term::HComp(a, b) => Ok(xm.mult_arrows(self.evaluate(a)?, self.evaluate(b)?)),
            Term::VComp(a, b) => {
                let (x, y) = (self.evaluate(a)?, self.evaluate(b)?);
                xm.compose_arrows(x, y).map_err(|_| {
                    DiagramError::BoundaryMismatch(format!(
                        "'{a}' ends at {} but '{b}' starts at {}",
                        xm.target(x),
                        xm.source(y)
                    ))
                })
            }
        }
    }

    /// Whether two terms with equal boundaries denote the same arrow.
    pub fn terms_equal(&self, a: &Term, b: &Term) -> Result<bool, DiagramError> {
        let (x, y) = (self.evaluate(a)?, self.evaluate(b)?);
        let (bx, by) = ((self.xm.source(x), x.y), (self.xm.source(y), y.y));
        if bx != by {
            return Err(DiagramError::BoundaryMismatch(format!(
                "'{a}' has boundary {bx:?} but '{b}' has boundary {by:?}"
            )));
        }
        Ok(x == y)
    }
}

/// Parses and evaluates a whole program.
pub fn evaluate_program(
    xm: &CrossedModule,
    text: &str,
    objects: &HashMap<String, usize>,
    generators: &HashMap<String, usize>,
) -> Result<Arrow, DiagramError> {
    let program = parse_program(text)?;
    Context::from_program(xm, &program, objects, generators)?.evaluate(&program.term)
}
