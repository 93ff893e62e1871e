//! G-transitions (Čech 1-cocycles) on a cover shape, their morphisms at a
//! fixed cover, brute-force classification, and the associated bundle.
//!
//! A transition is `g: C2 → G` with `g(x,y)·g(y,z) = g(x,z)` on every
//! triple and `g(x,x) = e`. A morphism `g ⇒ g'` is stored by its diagonal
//! `β: C1 → G` and satisfies `g(x,y)·β(y) = β(x)·g'(x,y)`; the full
//! `b(x,x') = g(x,x')·β(x')` is recovered by [`Morphism1::full_components`].

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::finset::{self, EquivRelation, FinMap, FinSetError};
use crate::group::{FiniteGroup, RightAction};
use crate::search::{BudgetExceeded, Problem, UnionFind};
use crate::shape::{CoverShape, NerveMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransitionError {
    #[error("inputs do not fit together: {0}")]
    ShapeMismatch(String),
    #[error("cocycle law fails at triple {0}")]
    GammaViolation(usize),
    #[error("unit law fails at point {0}")]
    EtaViolation(usize),
    #[error("morphism law fails at pair {0}")]
    MorphismLawViolation(usize),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("associated bundles need a Čech shape")]
    NotCechShape,
    #[error(transparent)]
    FinSet(#[from] FinSetError),
    #[error("bundle law fails: {0}")]
    BundleLawViolation(String),
}

impl TransitionError {
    pub fn kind(&self) -> &'static str {
        match self {
            TransitionError::ShapeMismatch(_) => "ShapeMismatch",
            TransitionError::GammaViolation(_) => "GammaViolation",
            TransitionError::EtaViolation(_) => "EtaViolation",
            TransitionError::MorphismLawViolation(_) => "MorphismLawViolation",
            TransitionError::NotComposable => "NotComposable",
            TransitionError::BudgetExceeded(_) => "BudgetExceeded",
            TransitionError::NotCechShape => "NotCechShape",
            TransitionError::FinSet(e) => e.kind(),
            TransitionError::BundleLawViolation(_) => "BundleLawViolation",
        }
    }
}

impl From<BudgetExceeded> for TransitionError {
    fn from(e: BudgetExceeded) -> Self {
        TransitionError::BudgetExceeded(e.budget)
    }
}

/// A G-transition on a cover shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition1 {
    shape: Arc<CoverShape>,
    group: Arc<FiniteGroup>,
    g: Vec<usize>,
}

impl Transition1 {
    /// Checks sizes only; see [`Transition1::validate`].
    pub fn new(
        shape: impl Into<Arc<CoverShape>>,
        group: impl Into<Arc<FiniteGroup>>,
        g: Vec<usize>,
    ) -> Result<Self, TransitionError> {
        let (shape, group) = (shape.into(), group.into());
        if g.len() != shape.size(2) {
            return Err(TransitionError::ShapeMismatch(format!(
                "g has {} values for {} pairs",
                g.len(),
                shape.size(2)
            )));
        }
        if g.iter().any(|&v| v >= group.order()) {
            return Err(TransitionError::ShapeMismatch("g takes a value outside the group".into()));
        }
        Ok(Transition1 { shape, group, g })
    }

    /// `g ≡ e`.
    pub fn trivial(shape: impl Into<Arc<CoverShape>>, group: impl Into<Arc<FiniteGroup>>) -> Self {
        let (shape, group) = (shape.into(), group.into());
        let g = vec![group.identity(); shape.size(2)];
        Transition1 { shape, group, g }
    }

    pub fn shape(&self) -> &Arc<CoverShape> {
        &self.shape
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[usize] {
        &self.g
    }

    #[inline]
    pub fn value(&self, p: usize) -> usize {
        self.g[p]
    }

    /// Value on the pair `(x, y)` of points, if it lies in `C2`.
    pub fn at(&self, x: usize, y: usize) -> Option<usize> {
        self.shape.find(&[x, y]).map(|p| self.g[p])
    }

    /// The cocycle law on every element of `C3`.
    pub fn check_gamma(&self) -> Result<(), TransitionError> {
        let (s, m) = (&self.shape, &self.group);
        for t in 0..s.size(3) {
            let lhs = m.mul(self.g[s.apply(NerveMap::D01, t)], self.g[s.apply(NerveMap::D12, t)]);
            if lhs != self.g[s.apply(NerveMap::D02, t)] {
                return Err(TransitionError::GammaViolation(t));
            }
        }
        Ok(())
    }

    /// The unit law on every point.
    pub fn check_eta(&self) -> Result<(), TransitionError> {
        for x in 0..self.shape.size(1) {
            if self.g[self.shape.apply(NerveMap::S0C1, x)] != self.group.identity() {
                return Err(TransitionError::EtaViolation(x));
            }
        }
        Ok(())
    }

    /// Both laws. The unit law follows from the cocycle law, so an
    /// `EtaViolation` here means the shape itself is defective.
    pub fn validate(&self) -> Result<(), TransitionError> {
        self.check_gamma()?;
        self.check_eta()
    }

    /// Product of `g` around the closed path `points[0] → points[1] → … → points[0]`.
    pub fn holonomy(&self, points: &[usize]) -> Option<usize> {
        let mut acc = self.group.identity();
        for i in 0..points.len() {
            let v = self.at(points[i], points[(i + 1) % points.len()])?;
            acc = self.group.mul(acc, v);
        }
        Some(acc)
    }

    /// The transition `g'(x,y) = β(x)⁻¹·g(x,y)·β(y)`, the target of the
    /// morphism with diagonal `β`.
    pub fn gauge(&self, beta: &[usize]) -> Transition1 {
        let (s, m) = (&self.shape, &self.group);
        let g = (0..s.size(2))
            .map(|p| {
                let (x, y) = (s.apply(NerveMap::D0, p), s.apply(NerveMap::D1, p));
                m.mul(m.mul(m.inv(beta[x]), self.g[p]), beta[y])
            })
            .collect();
        Transition1 {
            shape: self.shape.clone(),
            group: self.group.clone(),
            g,
        }
    }

    /// A transition satisfying the cocycle law, found by randomised search.
    /// The unit law is not imposed.
    pub fn random<R: Rng + ?Sized>(
        shape: impl Into<Arc<CoverShape>>,
        group: impl Into<Arc<FiniteGroup>>,
        rng: &mut R,
    ) -> Result<Self, TransitionError> {
        let (shape, group) = (shape.into(), group.into());
        let g = cocycle_problem_naive(&shape, &group)
            .solve_random(rng, crate::search::DEFAULT_BUDGET)?
            .ok_or_else(|| TransitionError::ShapeMismatch("no cocycle exists".into()))?;
        Ok(Transition1 { shape, group, g })
    }
}

/// A morphism of transitions on the same shape, stored by its diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism1 {
    source: Transition1,
    target: Transition1,
    beta: Vec<usize>,
}

impl Morphism1 {
    pub fn new(source: Transition1, target: Transition1, beta: Vec<usize>) -> Result<Self, TransitionError> {
        if source.shape != target.shape || source.group != target.group {
            return Err(TransitionError::ShapeMismatch(
                "source and target live on different shapes or groups".into(),
            ));
        }
        if beta.len() != source.shape.size(1) || beta.iter().any(|&v| v >= source.group.order()) {
            return Err(TransitionError::ShapeMismatch("beta must assign a group element to every point".into()));
        }
        Ok(Morphism1 { source, target, beta })
    }

    pub fn identity(t: &Transition1) -> Self {
        Morphism1 {
            source: t.clone(),
            target: t.clone(),
            beta: vec![t.group.identity(); t.shape.size(1)],
        }
    }

    /// The morphism with diagonal `beta` out of `t`, together with its target.
    pub fn from_gauge(t: &Transition1, beta: Vec<usize>) -> Result<Self, TransitionError> {
        let target = t.gauge(&beta);
        Morphism1::new(t.clone(), target, beta)
    }

    pub fn source(&self) -> &Transition1 {
        &self.source
    }

    pub fn target(&self) -> &Transition1 {
        &self.target
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    /// `g(p)·β(d1 p) = β(d0 p)·g'(p)` on every pair.
    pub fn validate(&self) -> Result<(), TransitionError> {
        let (s, m) = (&self.source.shape, &self.source.group);
        for p in 0..s.size(2) {
            let lhs = m.mul(self.source.g[p], self.beta[s.apply(NerveMap::D1, p)]);
            let rhs = m.mul(self.beta[s.apply(NerveMap::D0, p)], self.target.g[p]);
            if lhs != rhs {
                return Err(TransitionError::MorphismLawViolation(p));
            }
        }
        Ok(())
    }

    /// `self` then `next`; the diagonal is the pointwise product.
    pub fn compose(&self, next: &Morphism1) -> Result<Morphism1, TransitionError> {
        if self.target != next.source {
            return Err(TransitionError::NotComposable);
        }
        let m = &self.source.group;
        let beta = self.beta.iter().zip(&next.beta).map(|(&a, &b)| m.mul(a, b)).collect();
        let out = Morphism1 {
            source: self.source.clone(),
            target: next.target.clone(),
            beta,
        };
        out.validate()?;
        Ok(out)
    }

    pub fn inverse(&self) -> Morphism1 {
        let m = &self.source.group;
        Morphism1 {
            source: self.target.clone(),
            target: self.source.clone(),
            beta: self.beta.iter().map(|&b| m.inv(b)).collect(),
        }
    }

    /// `b(x, x') = g(x, x')·β(x')` on every pair of `C2`.
    pub fn full_components(&self) -> Vec<usize> {
        let (s, m) = (&self.source.shape, &self.source.group);
        (0..s.size(2))
            .map(|p| m.mul(self.source.g[p], self.beta[s.apply(NerveMap::D1, p)]))
            .collect()
    }
}

/// Checks the left and right action laws of a full morphism `b: C2 → G`
/// between `g` and `g'` on a common cover: `g(x,y)·b(y,x') = b(x,x')` and
/// `b(x,x')·g'(x',y') = b(x,y')`, each over every triple.
pub fn check_full_morphism(g: &Transition1, target: &Transition1, b: &[usize]) -> Result<(), TransitionError> {
    let (s, m) = (&g.shape, &g.group);
    for t in 0..s.size(3) {
        let (p01, p12, p02) = (s.apply(NerveMap::D01, t), s.apply(NerveMap::D12, t), s.apply(NerveMap::D02, t));
        if m.mul(g.g[p01], b[p12]) != b[p02] {
            return Err(TransitionError::MorphismLawViolation(p02));
        }
        if m.mul(b[p01], target.g[p12]) != b[p02] {
            return Err(TransitionError::MorphismLawViolation(p02));
        }
    }
    Ok(())
}

/// One equivalence class of transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class1 {
    /// Lexicographically least member, as values on `C2`.
    pub representative: Vec<usize>,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification1 {
    pub classes: Vec<Class1>,
    /// Number of valid transitions.
    pub transitions: usize,
}

/// How each pair's value is obtained from the free parameters.
#[derive(Debug, Clone, Copy)]
enum PairValue {
    Identity,
    Free(usize),
    InverseOf(usize),
}

fn pair_parametrisation(shape: &CoverShape) -> (Vec<PairValue>, usize) {
    let mut vars: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::with_capacity(shape.size(2));
    for p in 0..shape.size(2) {
        let t = shape.tuple(2, p);
        let (x, y) = (t[0], t[1]);
        let value = if x == y {
            PairValue::Identity
        } else if let Some(rev) = shape.find(&[y, x]).filter(|_| x > y) {
            PairValue::InverseOf(vars[&rev])
        } else {
            let v = vars.len();
            vars.insert(p, v);
            PairValue::Free(v)
        };
        out.push(value);
    }
    let n = vars.len();
    (out, n)
}

fn expand(group: &FiniteGroup, params: &[PairValue], assignment: &[usize]) -> Vec<usize> {
    params
        .iter()
        .map(|pv| match *pv {
            PairValue::Identity => group.identity(),
            PairValue::Free(v) => assignment[v],
            PairValue::InverseOf(v) => group.inv(assignment[v]),
        })
        .collect()
}

/// All transitions, enumerating only entries not forced by the unit law or
/// by `g(y,x) = g(x,y)⁻¹`.
pub fn enumerate_transitions(shape: &CoverShape, group: &FiniteGroup, budget: u64) -> Result<Vec<Vec<usize>>, TransitionError> {
    let (params, n) = pair_parametrisation(shape);
    let mut problem = Problem::new(vec![group.elements().collect(); n]);
    for t in 0..shape.size(3) {
        let faces = [
            shape.apply(NerveMap::D01, t),
            shape.apply(NerveMap::D12, t),
            shape.apply(NerveMap::D02, t),
        ];
        let vars: Vec<usize> = faces
            .iter()
            .filter_map(|&p| match params[p] {
                PairValue::Identity => None,
                PairValue::Free(v) | PairValue::InverseOf(v) => Some(v),
            })
            .collect();
        let params = &params;
        problem.constrain(&vars, move |a| {
            let val = |p: usize| match params[p] {
                PairValue::Identity => group.identity(),
                PairValue::Free(v) => a[v],
                PairValue::InverseOf(v) => group.inv(a[v]),
            };
            group.mul(val(faces[0]), val(faces[1])) == val(faces[2])
        });
    }
    let solutions = problem.solve_all(budget)?;
    Ok(solutions.iter().map(|a| expand(group, &params, a)).collect())
}

/// The cocycle law alone, one variable per pair.
fn cocycle_problem_naive<'a>(shape: &'a CoverShape, group: &'a FiniteGroup) -> Problem<'a> {
    let mut problem = Problem::new(vec![group.elements().collect(); shape.size(2)]);
    for t in 0..shape.size(3) {
        let (a, b, c) = (
            shape.apply(NerveMap::D01, t),
            shape.apply(NerveMap::D12, t),
            shape.apply(NerveMap::D02, t),
        );
        problem.constrain(&[a, b, c], move |g| group.mul(g[a], g[b]) == g[c]);
    }
    problem
}

/// All transitions by naive enumeration of every pair value.
pub fn enumerate_transitions_naive(shape: &CoverShape, group: &FiniteGroup, budget: u64) -> Result<Vec<Vec<usize>>, TransitionError> {
    Ok(cocycle_problem_naive(shape, group).solve_all(budget)?)
}

/// Classes of transitions on `shape` under morphism equivalence.
pub fn classify1(shape: &CoverShape, group: &FiniteGroup, budget: u64) -> Result<Classification1, TransitionError> {
    let all = enumerate_transitions(shape, group, budget)?;
    Ok(orbits1(shape, group, all))
}

/// Orbits of the gauge action on a complete, sorted list of transitions.
pub fn orbits1(shape: &CoverShape, group: &FiniteGroup, all: Vec<Vec<usize>>) -> Classification1 {
    let index: HashMap<&[usize], usize> = all.iter().enumerate().map(|(i, g)| (g.as_slice(), i)).collect();
    let mut uf = UnionFind::new(all.len());
    let gens = group.generators();
    for (i, g) in all.iter().enumerate() {
        for x in 0..shape.size(1) {
            for &s in &gens {
                let moved: Vec<usize> = (0..shape.size(2))
                    .map(|p| {
                        let (a, b) = (shape.apply(NerveMap::D0, p), shape.apply(NerveMap::D1, p));
                        let left = if a == x { group.inv(s) } else { group.identity() };
                        let right = if b == x { s } else { group.identity() };
                        group.mul(group.mul(left, g[p]), right)
                    })
                    .collect();
                let j = *index.get(moved.as_slice()).expect("gauge action preserves the cocycle law");
                uf.union(i, j);
            }
        }
    }
    let classes = uf
        .components()
        .into_iter()
        .map(|members| Class1 {
            representative: all[members[0]].clone(),
            size: members.len(),
        })
        .collect();
    Classification1 {
        classes,
        transitions: all.len(),
    }
}

/// The associated bundle `E → B` with fibre `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle1 {
    fibre: RightAction,
    cover: FinMap,
    /// `E → B`
    pub proj: FinMap,
    /// `F × U → E`, with `(w, x)` at index `w·|U| + x`.
    pub jtilde: FinMap,
}

impl Bundle1 {
    pub fn total_size(&self) -> usize {
        self.proj.source_size()
    }

    pub fn base_size(&self) -> usize {
        self.cover.target_size()
    }

    pub fn fibre(&self) -> &RightAction {
        &self.fibre
    }

    #[inline]
    pub fn j(&self, w: usize, x: usize) -> usize {
        self.jtilde.apply(w * self.cover.source_size() + x)
    }

    /// The square commutes, `F × U` is its pullback, and
    /// `j(act(w, g(p)), d1 p) = j(w, d0 p)` for all `w`, `p`.
    pub fn validate(&self, t: &Transition1) -> Result<(), TransitionError> {
        let s = &t.shape;
        let nf = self.fibre.set_size();
        let npts = self.cover.source_size();
        for w in 0..nf {
            for x in 0..npts {
                if self.proj.apply(self.j(w, x)) != self.cover.apply(x) {
                    return Err(TransitionError::BundleLawViolation(format!("square fails at ({w}, {x})")));
                }
            }
        }
        for b in 0..self.base_size() {
            let fibre_size = (0..self.total_size()).filter(|&e| self.proj.apply(e) == b).count();
            if fibre_size != nf {
                return Err(TransitionError::BundleLawViolation(format!(
                    "fibre over {b} has {fibre_size} elements, expected {nf}"
                )));
            }
        }
        for x in 0..npts {
            let image: std::collections::BTreeSet<usize> = (0..nf).map(|w| self.j(w, x)).collect();
            if image.len() != nf {
                return Err(TransitionError::BundleLawViolation(format!("j is not injective on the fibre at {x}")));
            }
        }
        for p in 0..s.size(2) {
            let (x, y) = (s.apply(NerveMap::D0, p), s.apply(NerveMap::D1, p));
            for w in 0..nf {
                if self.j(self.fibre.act(w, t.g[p]), y) != self.j(w, x) {
                    return Err(TransitionError::BundleLawViolation(format!("theta law fails at ({w}, {p})")));
                }
            }
        }
        Ok(())
    }

    /// The action `[(w, x)]·k = [(k⁻¹·w, x)]` on the fibre over `b`, for a
    /// bundle whose fibre is the group acting on itself.
    pub fn fibre_torsor(&self, group: &FiniteGroup, b: usize) -> Result<RightAction, TransitionError> {
        if self.fibre != RightAction::regular(group) {
            return Err(TransitionError::ShapeMismatch("fibre is not the regular action".into()));
        }
        let x = (0..self.cover.source_size())
            .find(|&x| self.cover.apply(x) == b)
            .ok_or_else(|| TransitionError::ShapeMismatch(format!("no point over {b}")))?;
        let members: Vec<usize> = (0..self.total_size()).filter(|&e| self.proj.apply(e) == b).collect();
        let position: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut table = vec![vec![0; group.order()]; members.len()];
        for w in group.elements() {
            let row = position[&self.j(w, x)];
            for k in group.elements() {
                table[row][k] = position[&self.j(group.mul(group.inv(k), w), x)];
            }
        }
        RightAction::new(group.clone(), &table).map_err(|e| TransitionError::BundleLawViolation(e.to_string()))
    }

    /// Recovers the transition from a principal bundle: `g(x, y)` is the
    /// unique `k` with `j(k, y) = j(e, x)`.
    pub fn recover_transition(&self, shape: &Arc<CoverShape>, group: &Arc<FiniteGroup>) -> Result<Transition1, TransitionError> {
        let g = (0..shape.size(2))
            .map(|p| {
                let (x, y) = (shape.apply(NerveMap::D0, p), shape.apply(NerveMap::D1, p));
                let target = self.j(group.identity(), x);
                let found: Vec<usize> = group.elements().filter(|&k| self.j(k, y) == target).collect();
                match found.as_slice() {
                    [k] => Ok(*k),
                    _ => Err(TransitionError::BundleLawViolation(format!("no unique transition value at pair {p}"))),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Transition1::new(shape.clone(), group.clone(), g)
    }
}

/// The bundle associated to `t` with fibre `fibre`: the quotient of `F × U`
/// identifying `(w, d0 p)` with `(act(w, g(p)), d1 p)`.
pub fn associate_bundle(t: &Transition1, fibre: &RightAction) -> Result<Bundle1, TransitionError> {
    let s = &t.shape;
    let cover = s.cover().ok_or(TransitionError::NotCechShape)?.clone();
    if fibre.group() != t.group.as_ref() {
        return Err(TransitionError::ShapeMismatch("fibre is acted on by a different group".into()));
    }
    let (nf, npts, npairs) = (fibre.set_size(), s.size(1), s.size(2));
    let carrier = nf * npts;
    let mut j0 = Vec::with_capacity(nf * npairs);
    let mut j1 = Vec::with_capacity(nf * npairs);
    for w in 0..nf {
        for p in 0..npairs {
            let (x, y) = (s.apply(NerveMap::D0, p), s.apply(NerveMap::D1, p));
            j0.push(w * npts + x);
            j1.push(fibre.act(w, t.g[p]) * npts + y);
        }
    }
    let reflexivity = (0..nf)
        .flat_map(|w| (0..npts).map(move |x| (w, x)))
        .map(|(w, x)| w * npairs + s.apply(NerveMap::S0C1, x))
        .collect();
    let rel = EquivRelation {
        j0: FinMap::new(carrier, j0)?,
        j1: FinMap::new(carrier, j1)?,
        reflexivity: FinMap::new(nf * npairs, reflexivity)?,
    };
    let quotient = finset::quotient_equiv_relation(&rel)?;
    let base_of = FinMap::new(cover.target_size(), (0..carrier).map(|i| cover.apply(i % npts)).collect())?;
    let proj = finset::factor_through(&quotient, &base_of)
        .ok_or_else(|| TransitionError::BundleLawViolation("projection is not constant on classes".into()))?;
    let bundle = Bundle1 {
        fibre: fibre.clone(),
        cover,
        proj,
        jtilde: quotient,
    };
    bundle.validate(t)?;
    Ok(bundle)
}

/// The bijection `[(w, x)] ↦ [(act(w, β(x)), x)]` between the bundles of the
/// source and target of `m`, checked against both projections and both `j`.
pub fn bundle_isomorphism(m: &Morphism1, source: &Bundle1, target: &Bundle1) -> Result<FinMap, TransitionError> {
    let fibre = &source.fibre;
    let npts = source.cover.source_size();
    let mut values = vec![usize::MAX; source.total_size()];
    for w in 0..fibre.set_size() {
        for x in 0..npts {
            let e = source.j(w, x);
            let image = target.j(fibre.act(w, m.beta[x]), x);
            if values[e] == usize::MAX {
                values[e] = image;
            } else if values[e] != image {
                return Err(TransitionError::BundleLawViolation(format!("map is not well defined at {e}")));
            }
        }
    }
    let iso = FinMap::new(target.total_size(), values)?;
    if !iso.is_injective() || !iso.is_surjective() {
        return Err(TransitionError::BundleLawViolation("map is not a bijection".into()));
    }
    if iso.then(&target.proj)? != source.proj {
        return Err(TransitionError::BundleLawViolation("map does not commute with projections".into()));
    }
    Ok(iso)
}
