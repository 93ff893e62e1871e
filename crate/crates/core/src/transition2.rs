//! 2-transitions in Breen normal form on a cover shape.
//!
//! A cocycle is `λ: C2 → D` and `g: C3 → H`, optionally with `η: C1 → H`,
//! subject to
//!
//! * boundary: `d(g(t))·λ(d02 t) = λ(d01 t)·λ(d12 t)`
//! * tetrahedron: `g(d012 q)·g(d023 q) = l(λ(d01 d012 q))(g(d123 q))·g(d013 q)`
//! * units, without `η`: `λ∘s0 ≡ e` and `g ≡ e` on degenerate triples
//! * units, with `η`: `d(η(x))·λ(s0 x) = e`, `g(s0 p) = η(d0 p)⁻¹` and
//!   `g(s1 p) = l(λ(p))(η(d1 p)⁻¹)`
//!
//! A morphism `(μ, δ)` with `μ: C1 → D`, `δ: C2 → H` satisfies
//!
//! * `λ'(p)·μ(d1 p) = d(δ(p))·μ(d0 p)·λ(p)`
//! * `g'(t)·δ(d02 t) = l(λ'(d01 t))(δ(d12 t))·δ(d01 t)·l(μ(d0 d01 t))(g(t))`
//! * `δ(s0 x) = η'(x)⁻¹·l(μ(x))(η(x))`, which is `e` between semistrict cocycles
//!
//! and a 2-morphism `θ: C1 → H` between parallel morphisms satisfies
//! `μ'(x) = d(θ(x))·μ(x)` and `δ'(p)·θ(d0 p) = l(λ'(p))(θ(d1 p))·δ(p)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::crossed::CrossedModule;
use crate::diagram::{self, Context, DiagramError, Program};
use crate::linalg::{ElementaryAbelian, Matrix};
use crate::search::{BudgetExceeded, Problem, UnionFind, DEFAULT_BUDGET};
use crate::shape::{CoverShape, NerveMap};
use crate::transition1::Transition1;

/// Where a unit law failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSite {
    /// `λ` on the degenerate pair over this point.
    Lambda(usize),
    /// `g` on this degenerate triple.
    Triple(usize),
}

impl fmt::Display for UnitSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitSite::Lambda(x) => write!(f, "lambda over point {x}"),
            UnitSite::Triple(t) => write!(f, "g at degenerate triple {t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Transition2Error {
    #[error("inputs do not fit together: {0}")]
    ShapeMismatch(String),
    #[error("unit law fails: {0}")]
    UnitViolation(UnitSite),
    #[error("eta boundary law fails at point {0}")]
    EtaBoundaryViolation(usize),
    #[error("boundary law fails at triple {0}")]
    BoundaryViolation(usize),
    #[error("tetrahedron law fails at quadruple {0}")]
    TetrahedronViolation(usize),
    #[error("object law fails at pair {0}")]
    ObjectLawViolation(usize),
    #[error("arrow law fails at triple {0}")]
    ArrowLawViolation(usize),
    #[error("degenerate delta law fails at point {0}")]
    DegenerateDeltaViolation(usize),
    #[error("mu law fails at point {0}")]
    MuLawViolation(usize),
    #[error("delta law fails at pair {0}")]
    DeltaLawViolation(usize),
    #[error("not composable")]
    NotComposable,
    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("abelian and generic classification disagree: {0}")]
    CrossCheckMismatch(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl Transition2Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Transition2Error::ShapeMismatch(_) => "ShapeMismatch",
            Transition2Error::UnitViolation(_) => "UnitViolation",
            Transition2Error::EtaBoundaryViolation(_) => "EtaBoundaryViolation",
            Transition2Error::BoundaryViolation(_) => "BoundaryViolation",
            Transition2Error::TetrahedronViolation(_) => "TetrahedronViolation",
            Transition2Error::ObjectLawViolation(_) => "ObjectLawViolation",
            Transition2Error::ArrowLawViolation(_) => "ArrowLawViolation",
            Transition2Error::DegenerateDeltaViolation(_) => "DegenerateDeltaViolation",
            Transition2Error::MuLawViolation(_) => "MuLawViolation",
            Transition2Error::DeltaLawViolation(_) => "DeltaLawViolation",
            Transition2Error::NotComposable => "NotComposable",
            Transition2Error::BudgetExceeded(_) => "BudgetExceeded",
            Transition2Error::CrossCheckMismatch(_) => "CrossCheckMismatch",
            Transition2Error::Diagram(e) => e.kind(),
        }
    }
}

impl From<BudgetExceeded> for Transition2Error {
    fn from(e: BudgetExceeded) -> Self {
        Transition2Error::BudgetExceeded(e.budget)
    }
}

type Result<T> = std::result::Result<T, Transition2Error>;

/// Which tetrahedra [`Cocycle2::validate_with`] visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TetrahedronMode {
    All,
    /// Skip quadruples with a repeated adjacent index.
    NonDegenerate,
}

/// A 2-transition `(λ, g, η)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    shape: Arc<CoverShape>,
    xm: Arc<CrossedModule>,
    lambda: Vec<usize>,
    g: Vec<usize>,
    eta: Option<Vec<usize>>,
}

fn same<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Cocycle2 {
    /// Checks sizes only; see [`Cocycle2::validate`]. An `η` that is the
    /// identity everywhere is dropped.
    pub fn new(
        shape: impl Into<Arc<CoverShape>>,
        xm: impl Into<Arc<CrossedModule>>,
        lambda: Vec<usize>,
        g: Vec<usize>,
        eta: Option<Vec<usize>>,
    ) -> Result<Self> {
        let (shape, xm) = (shape.into(), xm.into());
        let (nh, nd) = (xm.h().order(), xm.d_group().order());
        if lambda.len() != shape.size(2) || lambda.iter().any(|&v| v >= nd) {
            return Err(Transition2Error::ShapeMismatch("lambda must map every pair into D".into()));
        }
        if g.len() != shape.size(3) || g.iter().any(|&v| v >= nh) {
            return Err(Transition2Error::ShapeMismatch("g must map every triple into H".into()));
        }
        if let Some(eta) = &eta {
            if eta.len() != shape.size(1) || eta.iter().any(|&v| v >= nh) {
                return Err(Transition2Error::ShapeMismatch("eta must map every point into H".into()));
            }
        }
        let e = xm.h().identity();
        let eta = eta.filter(|v| v.iter().any(|&x| x != e));
        Ok(Cocycle2 { shape, xm, lambda, g, eta })
    }

    pub fn trivial(shape: impl Into<Arc<CoverShape>>, xm: impl Into<Arc<CrossedModule>>) -> Self {
        let (shape, xm) = (shape.into(), xm.into());
        Cocycle2 {
            lambda: vec![xm.d_group().identity(); shape.size(2)],
            g: vec![xm.h().identity(); shape.size(3)],
            eta: None,
            shape,
            xm,
        }
    }

    /// A G-transition as a cocycle over the discrete 2-group on `G`, which
    /// must be `xm`.
    pub fn from_transition(t: &Transition1, xm: impl Into<Arc<CrossedModule>>) -> Result<Self> {
        let xm = xm.into();
        if xm.d_group() != &**t.group() || xm.h().order() != 1 {
            return Err(Transition2Error::ShapeMismatch("expected the discrete 2-group of the transition's group".into()));
        }
        let g = vec![xm.h().identity(); t.shape().size(3)];
        Cocycle2::new(t.shape().clone(), xm, t.values().to_vec(), g, None)
    }

    pub fn shape(&self) -> &Arc<CoverShape> {
        &self.shape
    }

    pub fn crossed_module(&self) -> &Arc<CrossedModule> {
        &self.xm
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn g(&self) -> &[usize] {
        &self.g
    }

    pub fn eta(&self) -> Option<&[usize]> {
        self.eta.as_deref()
    }

    pub fn is_semistrict(&self) -> bool {
        self.eta.is_none()
    }

    fn eta_at(&self, x: usize) -> usize {
        self.eta.as_ref().map_or(self.xm.h().identity(), |v| v[x])
    }

    fn compatible(&self, other: &Cocycle2) -> bool {
        same(&self.shape, &other.shape) && same(&self.xm, &other.xm)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with(TetrahedronMode::All)
    }

    pub fn validate_with(&self, mode: TetrahedronMode) -> Result<()> {
        self.check_units()?;
        self.check_boundary()?;
        self.check_tetrahedra(mode)
    }

    /// The unit laws, in the branch selected by the presence of `η`.
    pub fn check_units(&self) -> Result<()> {
        let (s, xm) = (&*self.shape, &*self.xm);
        let (h, d) = (xm.h(), xm.d_group());
        for x in 0..s.size(1) {
            let l = self.lambda[s.apply(NerveMap::S0C1, x)];
            match &self.eta {
                None if l != d.identity() => return Err(Transition2Error::UnitViolation(UnitSite::Lambda(x))),
                Some(eta) if d.mul(xm.d(eta[x]), l) != d.identity() => {
                    return Err(Transition2Error::EtaBoundaryViolation(x))
                }
                _ => {}
            }
        }
        for p in 0..s.size(2) {
            let (x, y) = (s.apply(NerveMap::D0, p), s.apply(NerveMap::D1, p));
            let t0 = s.apply(NerveMap::S0C2, p);
            if self.g[t0] != h.inv(self.eta_at(x)) {
                return Err(Transition2Error::UnitViolation(UnitSite::Triple(t0)));
            }
            let t1 = s.apply(NerveMap::S1C2, p);
            if self.g[t1] != xm.l(self.lambda[p], h.inv(self.eta_at(y))) {
                return Err(Transition2Error::UnitViolation(UnitSite::Triple(t1)));
            }
        }
        Ok(())
    }

    pub fn check_boundary(&self) -> Result<()> {
        let (s, xm) = (&*self.shape, &*self.xm);
        for t in 0..s.size(3) {
            if !boundary_holds(s, xm, &self.lambda, &self.g, t) {
                return Err(Transition2Error::BoundaryViolation(t));
            }
        }
        Ok(())
    }

    pub fn check_tetrahedra(&self, mode: TetrahedronMode) -> Result<()> {
        let (s, xm) = (&*self.shape, &*self.xm);
        for q in 0..s.size(4) {
            if mode == TetrahedronMode::NonDegenerate && s.is_degenerate(4, q) {
                continue;
            }
            if !tetrahedron_holds(s, xm, &self.lambda, &self.g, q) {
                return Err(Transition2Error::TetrahedronViolation(q));
            }
        }
        Ok(())
    }

    /// The target of the morphism `(μ, δ)` out of `self`, solved from the
    /// morphism laws.
    pub fn gauge(&self, mu: &[usize], delta: &[usize]) -> Result<Cocycle2> {
        let (s, xm) = (&*self.shape, &*self.xm);
        if mu.len() != s.size(1) || delta.len() != s.size(2) {
            return Err(Transition2Error::ShapeMismatch("mu lives on C1 and delta on C2".into()));
        }
        if mu.iter().any(|&v| v >= xm.d_group().order()) || delta.iter().any(|&v| v >= xm.h().order()) {
            return Err(Transition2Error::ShapeMismatch("mu must lie in D and delta in H".into()));
        }
        let (lambda, g) = gauge_values(s, xm, &self.lambda, &self.g, mu, delta);
        let h = xm.h();
        let eta = (0..s.size(1))
            .map(|x| h.mul(xm.l(mu[x], self.eta_at(x)), h.inv(delta[s.apply(NerveMap::S0C1, x)])))
            .collect();
        Cocycle2::new(self.shape.clone(), self.xm.clone(), lambda, g, Some(eta))
    }

    /// A random semistrict cocycle, found by randomised search.
    pub fn random<R: Rng + ?Sized>(
        shape: impl Into<Arc<CoverShape>>,
        xm: impl Into<Arc<CrossedModule>>,
        rng: &mut R,
    ) -> Result<Self> {
        let (shape, xm) = (shape.into(), xm.into());
        let layout = Layout::new(&shape, &xm);
        let a = cocycle_problem(&shape, &xm, &layout)
            .solve_random(rng, DEFAULT_BUDGET)?
            .expect("the trivial cocycle always exists");
        let (lambda, g) = layout.expand(&xm, &a);
        Cocycle2::new(shape, xm, lambda, g, None)
    }

    /// A random cocycle with a random `η`: a semistrict cocycle moved by a
    /// random gauge whose degenerate `δ` is not the identity.
    pub fn random_general<R: Rng + ?Sized>(
        shape: impl Into<Arc<CoverShape>>,
        xm: impl Into<Arc<CrossedModule>>,
        rng: &mut R,
    ) -> Result<Self> {
        let c = Cocycle2::random(shape, xm, rng)?;
        let s = &c.shape;
        let (nh, nd) = (c.xm.h().order(), c.xm.d_group().order());
        let mu: Vec<usize> = (0..s.size(1)).map(|_| rng.gen_range(0..nd)).collect();
        let delta: Vec<usize> = (0..s.size(2)).map(|_| rng.gen_range(0..nh)).collect();
        c.gauge(&mu, &delta)
    }
}

fn boundary_holds(s: &CoverShape, xm: &CrossedModule, lambda: &[usize], g: &[usize], t: usize) -> bool {
    let d = xm.d_group();
    let lhs = d.mul(xm.d(g[t]), lambda[s.apply(NerveMap::D02, t)]);
    lhs == d.mul(lambda[s.apply(NerveMap::D01, t)], lambda[s.apply(NerveMap::D12, t)])
}

fn tetrahedron_holds(s: &CoverShape, xm: &CrossedModule, lambda: &[usize], g: &[usize], q: usize) -> bool {
    let h = xm.h();
    let (t012, t013, t023, t123) = (
        s.apply(NerveMap::D012, q),
        s.apply(NerveMap::D013, q),
        s.apply(NerveMap::D023, q),
        s.apply(NerveMap::D123, q),
    );
    let lhs = h.mul(g[t012], g[t023]);
    let rhs = h.mul(xm.l(lambda[s.apply(NerveMap::D01, t012)], g[t123]), g[t013]);
    lhs == rhs
}

fn gauge_values(
    s: &CoverShape,
    xm: &CrossedModule,
    lambda: &[usize],
    g: &[usize],
    mu: &[usize],
    delta: &[usize],
) -> (Vec<usize>, Vec<usize>) {
    let (h, d) = (xm.h(), xm.d_group());
    let lambda2: Vec<usize> = (0..s.size(2))
        .map(|p| {
            let (x, y) = (s.apply(NerveMap::D0, p), s.apply(NerveMap::D1, p));
            d.product([xm.d(delta[p]), mu[x], lambda[p], d.inv(mu[y])])
        })
        .collect();
    let g2 = (0..s.size(3))
        .map(|t| {
            let (p01, p12, p02) = (s.apply(NerveMap::D01, t), s.apply(NerveMap::D12, t), s.apply(NerveMap::D02, t));
            let x = s.apply(NerveMap::D0, p01);
            h.product([
                xm.l(lambda2[p01], delta[p12]),
                delta[p01],
                xm.l(mu[x], g[t]),
                h.inv(delta[p02]),
            ])
        })
        .collect();
    (lambda2, g2)
}

/// A morphism `(μ, δ)` of cocycles on the same shape and crossed module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism2 {
    source: Cocycle2,
    target: Cocycle2,
    mu: Vec<usize>,
    delta: Vec<usize>,
}

impl Morphism2 {
    /// Checks sizes only; see [`Morphism2::validate`].
    pub fn new(source: Cocycle2, target: Cocycle2, mu: Vec<usize>, delta: Vec<usize>) -> Result<Self> {
        if !source.compatible(&target) {
            return Err(Transition2Error::ShapeMismatch(
                "source and target live on different shapes or crossed modules".into(),
            ));
        }
        let (s, xm) = (&source.shape, &source.xm);
        if mu.len() != s.size(1) || mu.iter().any(|&v| v >= xm.d_group().order()) {
            return Err(Transition2Error::ShapeMismatch("mu must map every point into D".into()));
        }
        if delta.len() != s.size(2) || delta.iter().any(|&v| v >= xm.h().order()) {
            return Err(Transition2Error::ShapeMismatch("delta must map every pair into H".into()));
        }
        Ok(Morphism2 { source, target, mu, delta })
    }

    pub fn identity(c: &Cocycle2) -> Self {
        Morphism2 {
            source: c.clone(),
            target: c.clone(),
            mu: vec![c.xm.d_group().identity(); c.shape.size(1)],
            delta: vec![c.xm.h().identity(); c.shape.size(2)],
        }
    }

    /// The morphism `(μ, δ)` out of `c`, with its target.
    pub fn from_gauge(c: &Cocycle2, mu: Vec<usize>, delta: Vec<usize>) -> Result<Self> {
        let target = c.gauge(&mu, &delta)?;
        Morphism2::new(c.clone(), target, mu, delta)
    }

    pub fn source(&self) -> &Cocycle2 {
        &self.source
    }

    pub fn target(&self) -> &Cocycle2 {
        &self.target
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }

    pub fn validate(&self) -> Result<()> {
        let (s, xm) = (&*self.source.shape, &*self.source.xm);
        let (h, d) = (xm.h(), xm.d_group());
        let (c, c2) = (&self.source, &self.target);
        for p in 0..s.size(2) {
            let (x, y) = (s.apply(NerveMap::D0, p), s.apply(NerveMap::D1, p));
            let lhs = d.mul(c2.lambda[p], self.mu[y]);
            let rhs = d.product([xm.d(self.delta[p]), self.mu[x], c.lambda[p]]);
            if lhs != rhs {
                return Err(Transition2Error::ObjectLawViolation(p));
            }
        }
        for x in 0..s.size(1) {
            let expected = h.mul(h.inv(c2.eta_at(x)), xm.l(self.mu[x], c.eta_at(x)));
            if self.delta[s.apply(NerveMap::S0C1, x)] != expected {
                return Err(Transition2Error::DegenerateDeltaViolation(x));
            }
        }
        for t in 0..s.size(3) {
            let (p01, p12, p02) = (s.apply(NerveMap::D01, t), s.apply(NerveMap::D12, t), s.apply(NerveMap::D02, t));
            let x = s.apply(NerveMap::D0, p01);
            let lhs = h.mul(c2.g[t], self.delta[p02]);
            let rhs = h.product([
                xm.l(c2.lambda[p01], self.delta[p12]),
                self.delta[p01],
                xm.l(self.mu[x], c.g[t]),
            ]);
            if lhs != rhs {
                return Err(Transition2Error::ArrowLawViolation(t));
            }
        }
        Ok(())
    }

    /// `self` then `next`.
    pub fn compose(&self, next: &Morphism2) -> Result<Morphism2> {
        if self.target != next.source {
            return Err(Transition2Error::NotComposable);
        }
        let s = &self.source.shape;
        let xm = &self.source.xm;
        let (h, d) = (xm.h(), xm.d_group());
        let mu = self.mu.iter().zip(&next.mu).map(|(&a, &b)| d.mul(b, a)).collect();
        let delta = (0..s.size(2))
            .map(|p| h.mul(next.delta[p], xm.l(next.mu[s.apply(NerveMap::D0, p)], self.delta[p])))
            .collect();
        let out = Morphism2 {
            source: self.source.clone(),
            target: next.target.clone(),
            mu,
            delta,
        };
        out.validate()?;
        Ok(out)
    }

    /// The inverse gauge: composing either way gives an identity.
    pub fn inverse(&self) -> Morphism2 {
        let s = &self.source.shape;
        let xm = &self.source.xm;
        let (h, d) = (xm.h(), xm.d_group());
        let mu: Vec<usize> = self.mu.iter().map(|&m| d.inv(m)).collect();
        let delta = (0..s.size(2))
            .map(|p| h.inv(xm.l(mu[s.apply(NerveMap::D0, p)], self.delta[p])))
            .collect();
        Morphism2 {
            source: self.target.clone(),
            target: self.source.clone(),
            mu,
            delta,
        }
    }
}

/// Which side a morphism is whiskered onto a 2-morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The morphism comes first.
    Left,
    /// The morphism comes after.
    Right,
}

/// A 2-morphism `θ` between parallel morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoMorphism2 {
    source: Morphism2,
    target: Morphism2,
    theta: Vec<usize>,
}

impl TwoMorphism2 {
    /// Checks that the endpoints are parallel and the sizes fit.
    pub fn new(source: Morphism2, target: Morphism2, theta: Vec<usize>) -> Result<Self> {
        if source.source != target.source || source.target != target.target {
            return Err(Transition2Error::ShapeMismatch("2-morphism endpoints are not parallel".into()));
        }
        let (s, xm) = (&source.source.shape, &source.source.xm);
        if theta.len() != s.size(1) || theta.iter().any(|&v| v >= xm.h().order()) {
            return Err(Transition2Error::ShapeMismatch("theta must map every point into H".into()));
        }
        Ok(TwoMorphism2 { source, target, theta })
    }

    pub fn identity(m: &Morphism2) -> Self {
        TwoMorphism2 {
            source: m.clone(),
            target: m.clone(),
            theta: vec![m.source.xm.h().identity(); m.source.shape.size(1)],
        }
    }

    /// The 2-morphism `θ` out of `m`, with its target solved from the laws.
    pub fn from_theta(m: &Morphism2, theta: Vec<usize>) -> Result<Self> {
        let s = &m.source.shape;
        let xm = &m.source.xm;
        let (h, d) = (xm.h(), xm.d_group());
        if theta.len() != s.size(1) || theta.iter().any(|&v| v >= h.order()) {
            return Err(Transition2Error::ShapeMismatch("theta must map every point into H".into()));
        }
        let mu = (0..s.size(1)).map(|x| d.mul(xm.d(theta[x]), m.mu[x])).collect();
        let delta = (0..s.size(2))
            .map(|p| {
                let (x, y) = (s.apply(NerveMap::D0, p), s.apply(NerveMap::D1, p));
                h.product([xm.l(m.target.lambda[p], theta[y]), m.delta[p], h.inv(theta[x])])
            })
            .collect();
        let target = Morphism2::new(m.source.clone(), m.target.clone(), mu, delta)?;
        TwoMorphism2::new(m.clone(), target, theta)
    }

    pub fn source(&self) -> &Morphism2 {
        &self.source
    }

    pub fn target(&self) -> &Morphism2 {
        &self.target
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn validate(&self) -> Result<()> {
        let (m, m2) = (&self.source, &self.target);
        let s = &m.source.shape;
        let xm = &m.source.xm;
        let (h, d) = (xm.h(), xm.d_group());
        for x in 0..s.size(1) {
            if m2.mu[x] != d.mul(xm.d(self.theta[x]), m.mu[x]) {
                return Err(Transition2Error::MuLawViolation(x));
            }
        }
        for p in 0..s.size(2) {
            let (x, y) = (s.apply(NerveMap::D0, p), s.apply(NerveMap::D1, p));
            let lhs = h.mul(m2.delta[p], self.theta[x]);
            let rhs = h.mul(xm.l(m.target.lambda[p], self.theta[y]), m.delta[p]);
            if lhs != rhs {
                return Err(Transition2Error::DeltaLawViolation(p));
            }
        }
        Ok(())
    }

    /// `self` then `next`, pointwise `θ'(x)·θ(x)`.
    pub fn vcompose(&self, next: &TwoMorphism2) -> Result<TwoMorphism2> {
        if self.target != next.source {
            return Err(Transition2Error::NotComposable);
        }
        let h = self.source.source.xm.h();
        let theta = self.theta.iter().zip(&next.theta).map(|(&a, &b)| h.mul(b, a)).collect();
        let out = TwoMorphism2 {
            source: self.source.clone(),
            target: next.target.clone(),
            theta,
        };
        out.validate()?;
        Ok(out)
    }

    pub fn inverse(&self) -> TwoMorphism2 {
        let h = self.source.source.xm.h();
        TwoMorphism2 {
            source: self.target.clone(),
            target: self.source.clone(),
            theta: self.theta.iter().map(|&t| h.inv(t)).collect(),
        }
    }

    /// Whiskers `m` onto `self`. On the left `θ` is unchanged; on the right
    /// it becomes `l(μ(x))(θ(x))`.
    pub fn whisker(&self, side: Side, m: &Morphism2) -> Result<TwoMorphism2> {
        let xm = &m.source.xm;
        let out = match side {
            Side::Left => {
                if m.target != self.source.source {
                    return Err(Transition2Error::NotComposable);
                }
                TwoMorphism2 {
                    source: m.compose(&self.source)?,
                    target: m.compose(&self.target)?,
                    theta: self.theta.clone(),
                }
            }
            Side::Right => {
                if self.source.target != m.source {
                    return Err(Transition2Error::NotComposable);
                }
                TwoMorphism2 {
                    source: self.source.compose(m)?,
                    target: self.target.compose(m)?,
                    theta: self.theta.iter().zip(&m.mu).map(|(&t, &u)| xm.l(u, t)).collect(),
                }
            }
        };
        out.validate()?;
        Ok(out)
    }
}

/// The product term that rewrites `g` for a semistrict `λ'`.
pub const SEMISTRICT_PRODUCT: &str = "\
obj lxy
obj lyy
obj lyz
obj lzz
obj lxz
gen cyyz : lyy * lyz -> lyz
gen cxyz : lxy * lyz -> lxz
term (id(lxy * inv(lyy)) * vinv(cyyz) * id(inv(lzz)))
   ; (id(lxy) * epsilon(lyy) * id(lyz * inv(lzz)))
   ; (cxyz * id(inv(lzz)))";

/// A semistrict replacement together with the equivalence data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semistrictification {
    pub cocycle: Cocycle2,
    pub forward: Morphism2,
    pub backward: Morphism2,
    /// `forward ; backward ⇒ id`
    pub unit: TwoMorphism2,
    /// `backward ; forward ⇒ id`
    pub counit: TwoMorphism2,
}

pub fn semistrictify(c: &Cocycle2) -> Result<Semistrictification> {
    c.validate()?;
    let (s, xm) = (&*c.shape, &*c.xm);
    let (h, d) = (xm.h(), xm.d_group());
    let diag = |y: usize| s.find(&[y, y]).expect("degenerate pairs lie in C2");
    let lambda: Vec<usize> = (0..s.size(2))
        .map(|p| d.mul(c.lambda[p], d.inv(c.lambda[diag(s.apply(NerveMap::D1, p))])))
        .collect();

    let program: Program = diagram::parse_program(SEMISTRICT_PRODUCT)?;
    let mut g = Vec::with_capacity(s.size(3));
    for t in 0..s.size(3) {
        let (y, z) = (s.tuple(3, t)[1], s.tuple(3, t)[2]);
        let yyz = s.find(&[y, y, z]).expect("degenerate triples lie in C3");
        let objects = HashMap::from([
            ("lxy".to_string(), c.lambda[s.apply(NerveMap::D01, t)]),
            ("lyy".to_string(), c.lambda[diag(y)]),
            ("lyz".to_string(), c.lambda[s.apply(NerveMap::D12, t)]),
            ("lzz".to_string(), c.lambda[diag(z)]),
            ("lxz".to_string(), c.lambda[s.apply(NerveMap::D02, t)]),
        ]);
        let generators = HashMap::from([("cyyz".to_string(), c.g[yyz]), ("cxyz".to_string(), c.g[t])]);
        let arrow = Context::from_program(xm, &program, &objects, &generators)?.evaluate(&program.term)?;
        debug_assert_eq!(arrow.y, lambda[s.apply(NerveMap::D02, t)]);
        g.push(arrow.h);
    }
    let out = Cocycle2::new(c.shape.clone(), c.xm.clone(), lambda, g, None)?;
    out.validate()?;

    let mu = vec![d.identity(); s.size(1)];
    let back_delta: Vec<usize> = (0..s.size(2)).map(|p| c.g[s.apply(NerveMap::S1C2, p)]).collect();
    let fwd_delta = back_delta.iter().map(|&v| h.inv(v)).collect();
    let forward = Morphism2::new(c.clone(), out.clone(), mu.clone(), fwd_delta)?;
    let backward = Morphism2::new(out.clone(), c.clone(), mu, back_delta)?;
    forward.validate()?;
    backward.validate()?;
    let unit = TwoMorphism2::new(forward.compose(&backward)?, Morphism2::identity(c), vec![h.identity(); s.size(1)])?;
    let counit = TwoMorphism2::new(backward.compose(&forward)?, Morphism2::identity(&out), vec![h.identity(); s.size(1)])?;
    unit.validate()?;
    counit.validate()?;
    Ok(Semistrictification {
        cocycle: out,
        forward,
        backward,
        unit,
        counit,
    })
}

/// Enumeration variables for semistrict cocycles: `λ` on non-degenerate
/// pairs and `g` on non-degenerate triples.
struct Layout {
    pair_var: Vec<Option<usize>>,
    triple_var: Vec<Option<usize>>,
    domains: Vec<Vec<usize>>,
}

impl Layout {
    fn new(s: &CoverShape, xm: &CrossedModule) -> Self {
        let mut entries: Vec<(usize, Vec<usize>, bool, usize)> = Vec::new();
        for p in 0..s.size(2) {
            if !s.is_degenerate(2, p) {
                let t = s.tuple(2, p).to_vec();
                entries.push((*t.iter().max().unwrap(), t, false, p));
            }
        }
        for t in 0..s.size(3) {
            if !s.is_degenerate(3, t) {
                let v = s.tuple(3, t).to_vec();
                entries.push((*v.iter().max().unwrap(), v, true, t));
            }
        }
        entries.sort();
        let mut pair_var = vec![None; s.size(2)];
        let mut triple_var = vec![None; s.size(3)];
        let mut domains = Vec::with_capacity(entries.len());
        for (i, (_, _, is_triple, idx)) in entries.into_iter().enumerate() {
            if is_triple {
                triple_var[idx] = Some(i);
                domains.push(xm.h().elements().collect());
            } else {
                pair_var[idx] = Some(i);
                domains.push(xm.d_group().elements().collect());
            }
        }
        Layout { pair_var, triple_var, domains }
    }

    fn expand(&self, xm: &CrossedModule, a: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let e_d = xm.d_group().identity();
        let e_h = xm.h().identity();
        (
            self.pair_var.iter().map(|v| v.map_or(e_d, |i| a[i])).collect(),
            self.triple_var.iter().map(|v| v.map_or(e_h, |i| a[i])).collect(),
        )
    }
}

fn cocycle_problem<'a>(s: &'a CoverShape, xm: &'a CrossedModule, layout: &'a Layout) -> Problem<'a> {
    let mut problem = Problem::new(layout.domains.clone());
    let e_d = xm.d_group().identity();
    let e_h = xm.h().identity();
    let lam = move |p: usize, a: &[usize]| layout.pair_var[p].map_or(e_d, |i| a[i]);
    let gg = move |t: usize, a: &[usize]| layout.triple_var[t].map_or(e_h, |i| a[i]);
    for t in 0..s.size(3) {
        let pairs = [s.apply(NerveMap::D01, t), s.apply(NerveMap::D12, t), s.apply(NerveMap::D02, t)];
        let mut vars: Vec<usize> = pairs.iter().filter_map(|&p| layout.pair_var[p]).collect();
        vars.extend(layout.triple_var[t]);
        problem.constrain(&vars, move |a| {
            let d = xm.d_group();
            d.mul(xm.d(gg(t, a)), lam(pairs[2], a)) == d.mul(lam(pairs[0], a), lam(pairs[1], a))
        });
    }
    for q in 0..s.size(4) {
        if s.is_degenerate(4, q) {
            continue;
        }
        let faces = [
            s.apply(NerveMap::D012, q),
            s.apply(NerveMap::D023, q),
            s.apply(NerveMap::D123, q),
            s.apply(NerveMap::D013, q),
        ];
        let p01 = s.apply(NerveMap::D01, faces[0]);
        let mut vars: Vec<usize> = faces.iter().filter_map(|&t| layout.triple_var[t]).collect();
        vars.extend(layout.pair_var[p01]);
        problem.constrain(&vars, move |a| {
            let h = xm.h();
            h.mul(gg(faces[0], a), gg(faces[1], a)) == h.mul(xm.l(lam(p01, a), gg(faces[2], a)), gg(faces[3], a))
        });
    }
    problem
}

/// One class of semistrict cocycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class2 {
    pub lambda: Vec<usize>,
    pub g: Vec<usize>,
    pub size: u64,
}

impl Class2 {
    pub fn cocycle(&self, shape: &Arc<CoverShape>, xm: &Arc<CrossedModule>) -> Cocycle2 {
        Cocycle2 {
            shape: shape.clone(),
            xm: xm.clone(),
            lambda: self.lambda.clone(),
            g: self.g.clone(),
            eta: None,
        }
    }
}

/// How a classification was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exhaustive enumeration and orbit merging.
    Generic,
    /// Generic enumeration, confirmed by cochain linear algebra.
    CrossChecked,
    /// Cochain linear algebra alone.
    Abelian,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Generic => "generic",
            Method::CrossChecked => "cross-checked",
            Method::Abelian => "abelian",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification2 {
    /// Sorted by representative.
    pub classes: Vec<Class2>,
    /// Number of semistrict cocycles; saturates at `u64::MAX`.
    pub cocycles: u64,
    pub method: Method,
}

/// Classes of semistrict cocycles on `shape` under morphism equivalence.
///
/// When `D` is trivial and `H` is elementary abelian the classes are also
/// computed by cochain linear algebra. If enumeration then fits the budget
/// the two answers must agree, otherwise the linear-algebra answer stands.
pub fn classify2(shape: &Arc<CoverShape>, xm: &Arc<CrossedModule>, budget: u64) -> Result<Classification2> {
    let abelian = classify2_abelian(shape, xm, budget).transpose()?;
    match generic_orbits(shape, xm, budget) {
        Ok((generic, index)) => {
            let Some(abelian) = abelian else {
                return Ok(generic);
            };
            cross_check(&generic, &abelian, &index)?;
            Ok(Classification2 {
                method: Method::CrossChecked,
                ..generic
            })
        }
        Err(Transition2Error::BudgetExceeded(_)) if abelian.is_some() => Ok(abelian.unwrap()),
        Err(e) => Err(e),
    }
}

/// Classification by exhaustive enumeration alone.
pub fn classify2_generic(shape: &Arc<CoverShape>, xm: &Arc<CrossedModule>, budget: u64) -> Result<Classification2> {
    Ok(generic_orbits(shape, xm, budget)?.0)
}

fn cross_check(generic: &Classification2, abelian: &Classification2, index: &HashMap<Vec<usize>, usize>) -> Result<()> {
    let mismatch = |msg: String| Err(Transition2Error::CrossCheckMismatch(msg));
    if generic.classes.len() != abelian.classes.len() {
        return mismatch(format!(
            "{} generic classes, {} abelian",
            generic.classes.len(),
            abelian.classes.len()
        ));
    }
    if generic.cocycles != abelian.cocycles {
        return mismatch(format!("{} generic cocycles, {} abelian", generic.cocycles, abelian.cocycles));
    }
    let mut seen = vec![false; generic.classes.len()];
    for c in &abelian.classes {
        let key: Vec<usize> = c.lambda.iter().chain(&c.g).copied().collect();
        let Some(&orbit) = index.get(&key) else {
            return mismatch("an abelian representative is not a cocycle".into());
        };
        if std::mem::replace(&mut seen[orbit], true) {
            return mismatch("two abelian representatives share an orbit".into());
        }
        if generic.classes[orbit].size != c.size {
            return mismatch("orbit sizes differ".into());
        }
    }
    Ok(())
}

/// The generic classification, plus a map from each cocycle's `(λ, g)`
/// encoding to the position of its class.
fn generic_orbits(
    shape: &Arc<CoverShape>,
    xm: &Arc<CrossedModule>,
    budget: u64,
) -> Result<(Classification2, HashMap<Vec<usize>, usize>)> {
    let (s, m) = (&**shape, &**xm);
    let layout = Layout::new(s, m);
    let solutions = cocycle_problem(s, m, &layout).solve_all(budget)?;
    let all: Vec<(Vec<usize>, Vec<usize>)> = solutions.iter().map(|a| layout.expand(m, a)).collect();
    let key = |l: &[usize], g: &[usize]| -> Vec<usize> { l.iter().chain(g).copied().collect() };
    let index: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(i, (l, g))| (key(l, g), i)).collect();

    let (h, d) = (m.h(), m.d_group());
    let mut moves: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for x in 0..s.size(1) {
        for gen in d.generators() {
            let mut mu = vec![d.identity(); s.size(1)];
            mu[x] = gen;
            moves.push((mu, vec![h.identity(); s.size(2)]));
        }
    }
    for p in (0..s.size(2)).filter(|&p| !s.is_degenerate(2, p)) {
        for gen in h.generators() {
            let mut delta = vec![h.identity(); s.size(2)];
            delta[p] = gen;
            moves.push((vec![d.identity(); s.size(1)], delta));
        }
    }
    let mut uf = UnionFind::new(all.len());
    for (i, (l, g)) in all.iter().enumerate() {
        for (mu, delta) in &moves {
            let (l2, g2) = gauge_values(s, m, l, g, mu, delta);
            let j = *index.get(&key(&l2, &g2)).expect("gauges preserve the cocycle laws");
            uf.union(i, j);
        }
    }
    let mut classes: Vec<(Class2, Vec<usize>)> = uf
        .components()
        .into_iter()
        .map(|members| {
            let rep = members
                .iter()
                .map(|&i| (&all[i].0, &all[i].1))
                .min()
                .expect("orbits are non-empty");
            let class = Class2 {
                lambda: rep.0.clone(),
                g: rep.1.clone(),
                size: members.len() as u64,
            };
            (class, members)
        })
        .collect();
    classes.sort_by(|a, b| (&a.0.lambda, &a.0.g).cmp(&(&b.0.lambda, &b.0.g)));
    let mut orbit_of = HashMap::with_capacity(all.len());
    for (pos, (_, members)) in classes.iter().enumerate() {
        for &i in members {
            orbit_of.insert(key(&all[i].0, &all[i].1), pos);
        }
    }
    Ok((
        Classification2 {
            classes: classes.into_iter().map(|(c, _)| c).collect(),
            cocycles: all.len() as u64,
            method: Method::Generic,
        },
        orbit_of,
    ))
}

fn saturating_pow(base: u64, exp: usize) -> u64 {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e)).unwrap_or(u64::MAX)
}

/// Classification by normalised cochains over GF(p), when `D` is trivial
/// and `H ≅ (Z/p)^r`; `None` otherwise.
pub fn classify2_abelian(shape: &CoverShape, xm: &CrossedModule, budget: u64) -> Option<Result<Classification2>> {
    if !xm.d_group().is_trivial() {
        return None;
    }
    let ea = ElementaryAbelian::recognise(xm.h())?;
    Some(abelian_classes(shape, xm, &ea, budget))
}

fn abelian_classes(s: &CoverShape, xm: &CrossedModule, ea: &ElementaryAbelian, budget: u64) -> Result<Classification2> {
    let p = ea.p;
    let pairs: Vec<usize> = (0..s.size(2)).filter(|&i| !s.is_degenerate(2, i)).collect();
    let triples: Vec<usize> = (0..s.size(3)).filter(|&i| !s.is_degenerate(3, i)).collect();
    let pair_col: HashMap<usize, usize> = pairs.iter().enumerate().map(|(c, &i)| (i, c)).collect();
    let triple_col: HashMap<usize, usize> = triples.iter().enumerate().map(|(c, &i)| (i, c)).collect();

    // δ¹: C¹ → C², rows indexed by triples
    let mut d1 = Matrix::zero(p, triples.len(), pairs.len());
    for (r, &t) in triples.iter().enumerate() {
        for (map, sign) in [(NerveMap::D12, 1), (NerveMap::D01, 1), (NerveMap::D02, -1)] {
            if let Some(&c) = pair_col.get(&s.apply(map, t)) {
                d1.add(r, c, sign);
            }
        }
    }
    let quads: Vec<usize> = (0..s.size(4)).filter(|&q| !s.is_degenerate(4, q)).collect();
    let mut d2 = Matrix::zero(p, quads.len(), triples.len());
    for (r, &q) in quads.iter().enumerate() {
        for (map, sign) in [
            (NerveMap::D012, 1),
            (NerveMap::D023, 1),
            (NerveMap::D123, -1),
            (NerveMap::D013, -1),
        ] {
            if let Some(&c) = triple_col.get(&s.apply(map, q)) {
                d2.add(r, c, sign);
            }
        }
    }
    let cycles = d2.kernel();
    let mut boundaries = d1.transpose();
    let b_pivots = boundaries.rref();
    let reduced: Vec<Vec<u32>> = cycles
        .iter()
        .map(|z| {
            let mut v = z.clone();
            boundaries.reduce(&b_pivots, &mut v);
            v
        })
        .collect();
    let mut complement = Matrix::from_rows(p, triples.len(), reduced);
    complement.rref();

    let r = ea.rank();
    let m = complement.rows();
    let count = saturating_pow(p as u64, r * m);
    if count > budget {
        return Err(Transition2Error::BudgetExceeded(budget));
    }
    let e_h = xm.h().identity();
    let mut classes = Vec::with_capacity(count as usize);
    for code in 0..count {
        // coefficient of basis vector i in coordinate j is digit j·m + i
        let mut digits = Vec::with_capacity(r * m);
        let mut rest = code;
        for _ in 0..r * m {
            digits.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        let mut g = vec![e_h; s.size(3)];
        for (col, &t) in triples.iter().enumerate() {
            let coords: Vec<u32> = (0..r)
                .map(|j| (0..m).map(|i| digits[j * m + i] * complement.get(i, col)).sum::<u32>() % p)
                .collect();
            g[t] = ea.element(&coords);
        }
        classes.push(Class2 {
            lambda: vec![xm.d_group().identity(); s.size(2)],
            g,
            size: saturating_pow(p as u64, r * b_pivots.len()),
        });
    }
    classes.sort_by(|a, b| a.g.cmp(&b.g));
    Ok(Classification2 {
        classes,
        cocycles: saturating_pow(p as u64, r * cycles.len()),
        method: Method::Abelian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::groups;
    use crate::shape::SimplicialComplex;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn triangle() -> Arc<CoverShape> {
        Arc::new(CoverShape::complex(&SimplicialComplex::hollow_triangle()))
    }

    fn aut_z3() -> Arc<CrossedModule> {
        Arc::new(CrossedModule::automorphism(&groups::cyclic(3)).unwrap())
    }

    #[test]
    fn trivial_cocycle_is_valid() {
        let c = Cocycle2::trivial(triangle(), aut_z3());
        c.validate().unwrap();
        Morphism2::identity(&c).validate().unwrap();
    }

    #[test]
    fn broken_boundary() {
        // d is trivial here, so the boundary law only sees lambda
        let c = Cocycle2::trivial(triangle(), aut_z3());
        let s = c.shape().clone();
        let p = s.find(&[0, 1]).unwrap();
        let mut lambda = c.lambda().to_vec();
        lambda[p] = 1;
        let bad = Cocycle2::new(s, c.crossed_module().clone(), lambda, c.g().to_vec(), None).unwrap();
        assert_eq!(bad.validate().unwrap_err().kind(), "BoundaryViolation");
    }

    #[test]
    fn gauge_targets_validate() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let c = Cocycle2::random(triangle(), aut_z3(), &mut rng).unwrap();
            c.validate().unwrap();
            let g = Cocycle2::random_general(triangle(), aut_z3(), &mut rng).unwrap();
            g.validate().unwrap();
        }
    }

    #[test]
    fn sphere_classes() {
        let s = Arc::new(CoverShape::complex(&SimplicialComplex::boundary_of_simplex(3)));
        let xm = Arc::new(CrossedModule::shifted(&groups::cyclic(2)).unwrap());
        let c = classify2(&s, &xm, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.classes.len(), 2);
        assert_eq!(c.method, Method::CrossChecked);
    }
}
