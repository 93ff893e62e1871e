use std::fmt;

/// A word in the object symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ObjExpr {
    Unit,
    Sym(String),
    Mul(Box<ObjExpr>, Box<ObjExpr>),
    Inv(Box<ObjExpr>),
}

impl ObjExpr {
    pub fn sym(name: &str) -> Self {
        ObjExpr::Sym(name.to_string())
    }

    pub fn mul(a: ObjExpr, b: ObjExpr) -> Self {
        ObjExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn inv(a: ObjExpr) -> Self {
        ObjExpr::Inv(Box::new(a))
    }
}

/// A string-diagram term. Vertical composition is diagrammatic: in
/// `VComp(a, b)`, `a` is on top.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Id(ObjExpr),
    Gen(String),
    Epsilon(ObjExpr),
    Iota(ObjExpr),
    VInv(Box<Term>),
    HComp(Box<Term>, Box<Term>),
    VComp(Box<Term>, Box<Term>),
}

impl Term {
    pub fn gen(name: &str) -> Self {
        Term::Gen(name.to_string())
    }

    pub fn hcomp(a: Term, b: Term) -> Self {
        Term::HComp(Box::new(a), Box::new(b))
    }

    pub fn vcomp(a: Term, b: Term) -> Self {
        Term::VComp(Box::new(a), Box::new(b))
    }

    pub fn vinv(a: Term) -> Self {
        Term::VInv(Box::new(a))
    }

    /// Nesting depth; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Id(_) | Term::Gen(_) | Term::Epsilon(_) | Term::Iota(_) => 1,
            Term::VInv(t) => 1 + t.depth(),
            Term::HComp(a, b) | Term::VComp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Obj(String),
    Gen { name: String, source: ObjExpr, target: ObjExpr },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub decls: Vec<Decl>,
    pub term: Term,
}

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjExpr::Unit => f.write_str("e"),
            ObjExpr::Sym(s) => f.write_str(s),
            ObjExpr::Inv(a) => write!(f, "inv({a})"),
            ObjExpr::Mul(a, b) => match **b {
                ObjExpr::Mul(..) => write!(f, "{a} * ({b})"),
                _ => write!(f, "{a} * {b}"),
            },
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Id(o) => write!(f, "id({o})"),
            Term::Gen(s) => f.write_str(s),
            Term::Epsilon(o) => write!(f, "epsilon({o})"),
            Term::Iota(o) => write!(f, "iota({o})"),
            Term::VInv(t) => write!(f, "vinv({t})"),
            Term::VComp(a, b) => match **b {
                Term::VComp(..) => write!(f, "{a} ; ({b})"),
                _ => write!(f, "{a} ; {b}"),
            },
            Term::HComp(a, b) => {
                match **a {
                    Term::VComp(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                f.write_str(" * ")?;
                match **b {
                    Term::VComp(..) | Term::HComp(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Obj(name) => write!(f, "obj {name}"),
            Decl::Gen { name, source, target } => write!(f, "gen {name} : {source} -> {target}"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        write!(f, "term {}", self.term)
    }
}
