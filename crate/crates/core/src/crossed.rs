//! Crossed modules `(H, D, d, l)` and the strict 2-group they present.
//!
//! An arrow is a pair `(h, y)` with `h ∈ H`, `y ∈ D`; it runs from
//! `d(h)·y` to `y`. Horizontal product is the semidirect product
//! `(h, y)·(h', y') = (h·l(y)(h'), y·y')` and vertical composition
//! multiplies the `H` components.

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, GroupHom, RightAction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossedModuleError {
    #[error("boundary map is not a homomorphism: {0}")]
    NotHomomorphism(GroupError),
    #[error("l is not a left action at ({0}, {1}, h = {2})")]
    NotAction(usize, usize, usize),
    #[error("l({0}) is not an automorphism of H")]
    NotAutomorphism(usize),
    #[error("equivariance fails at y = {0}, h = {1}")]
    EquivarianceViolation(usize, usize),
    #[error("Peiffer identity fails at h = {0}, h' = {1}")]
    PeifferViolation(usize, usize),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("action is not by automorphisms at y = {0}")]
    ActionNotByAutomorphisms(usize),
    #[error("arrows are not composable")]
    NotComposable,
    #[error("malformed crossed module: {0}")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl CrossedModuleError {
    pub fn kind(&self) -> &'static str {
        match self {
            CrossedModuleError::NotHomomorphism(_) => "NotHomomorphism",
            CrossedModuleError::NotAction(..) => "NotAction",
            CrossedModuleError::NotAutomorphism(_) => "NotAutomorphism",
            CrossedModuleError::EquivarianceViolation(..) => "EquivarianceViolation",
            CrossedModuleError::PeifferViolation(..) => "PeifferViolation",
            CrossedModuleError::NotAbelian => "NotAbelian",
            CrossedModuleError::ActionNotByAutomorphisms(_) => "ActionNotByAutomorphisms",
            CrossedModuleError::NotComposable => "NotComposable",
            CrossedModuleError::Malformed(_) => "Malformed",
            CrossedModuleError::Group(e) => e.kind(),
        }
    }
}

/// An arrow `(h, y): d(h)·y → y` of the strict 2-group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub h: usize,
    pub y: usize,
}

impl Arrow {
    pub fn new(h: usize, y: usize) -> Self {
        Arrow { h, y }
    }
}

/// A crossed module. Construct with [`CrossedModule::new`], which validates
/// every axiom, or one of the standard constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    base: FiniteGroup,
    automorphisms: FiniteGroup,
    boundary: Vec<usize>,
    action: Vec<usize>,
}

impl CrossedModule {
    /// `action[y][h] = l(y)(h)`.
    pub fn new(
        base: FiniteGroup,
        automorphisms: FiniteGroup,
        boundary: Vec<usize>,
        action: &[Vec<usize>],
    ) -> Result<Self, CrossedModuleError> {
        let xm = Self::new_unchecked(base, automorphisms, boundary, action)?;
        xm.validate()?;
        Ok(xm)
    }

    /// Checks only table shapes; [`CrossedModule::validate`] checks the axioms.
    pub fn new_unchecked(
        base: FiniteGroup,
        automorphisms: FiniteGroup,
        boundary: Vec<usize>,
        action: &[Vec<usize>],
    ) -> Result<Self, CrossedModuleError> {
        let (nh, nd) = (base.order(), automorphisms.order());
        if boundary.len() != nh || boundary.iter().any(|&v| v >= nd) {
            return Err(CrossedModuleError::Malformed(format!(
                "boundary map must list {nh} elements of D"
            )));
        }
        if action.len() != nd || action.iter().any(|r| r.len() != nh || r.iter().any(|&v| v >= nh)) {
            return Err(CrossedModuleError::Malformed(format!(
                "action table must be {nd} rows of {nh} elements of H"
            )));
        }
        Ok(CrossedModule {
            base,
            automorphisms,
            boundary,
            action: action.iter().flatten().copied().collect(),
        })
    }

    /// The base group `H` (arrow labels).
    pub fn h(&self) -> &FiniteGroup {
        &self.base
    }

    /// The group `D` (objects).
    pub fn d_group(&self) -> &FiniteGroup {
        &self.automorphisms
    }

    #[inline]
    pub fn d(&self, h: usize) -> usize {
        self.boundary[h]
    }

    /// `l(y)(h)`
    #[inline]
    pub fn l(&self, y: usize, h: usize) -> usize {
        self.action[y * self.base.order() + h]
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn action_table(&self) -> Vec<Vec<usize>> {
        self.action.chunks(self.base.order()).map(|r| r.to_vec()).collect()
    }

    pub fn boundary_hom(&self) -> Result<GroupHom, GroupError> {
        GroupHom::new(self.base.clone(), self.automorphisms.clone(), self.boundary.clone())
    }

    /// Checks homomorphism, action, automorphism, equivariance and Peiffer
    /// laws, in that order.
    pub fn validate(&self) -> Result<(), CrossedModuleError> {
        let (hg, dg) = (&self.base, &self.automorphisms);
        self.boundary_hom().map_err(CrossedModuleError::NotHomomorphism)?;
        for h in hg.elements() {
            if self.l(dg.identity(), h) != h {
                return Err(CrossedModuleError::NotAction(dg.identity(), dg.identity(), h));
            }
        }
        for y in dg.elements() {
            for z in dg.elements() {
                let yz = dg.mul(y, z);
                for h in hg.elements() {
                    if self.l(yz, h) != self.l(y, self.l(z, h)) {
                        return Err(CrossedModuleError::NotAction(y, z, h));
                    }
                }
            }
        }
        for y in dg.elements() {
            for a in hg.elements() {
                for b in hg.elements() {
                    if self.l(y, hg.mul(a, b)) != hg.mul(self.l(y, a), self.l(y, b)) {
                        return Err(CrossedModuleError::NotAutomorphism(y));
                    }
                }
            }
        }
        for y in dg.elements() {
            for h in hg.elements() {
                if self.d(self.l(y, h)) != dg.conj(y, self.d(h)) {
                    return Err(CrossedModuleError::EquivarianceViolation(y, h));
                }
            }
        }
        for h in hg.elements() {
            for h2 in hg.elements() {
                if self.l(self.d(h), h2) != hg.conj(h, h2) {
                    return Err(CrossedModuleError::PeifferViolation(h, h2));
                }
            }
        }
        Ok(())
    }

    // --- standard constructors ---

    /// `H = G`, `D = Aut(G)`, `d` = inner automorphisms, `l` = evaluation.
    ///
    /// Elements of `D` are the automorphisms in lexicographic order of their
    /// permutation vectors; `(y·z)(h) = y(z(h))`.
    pub fn automorphism(g: &FiniteGroup) -> Result<Self, CrossedModuleError> {
        let auts = g.automorphisms()?;
        let index_of = |p: &[usize]| auts.iter().position(|q| q.as_slice() == p);
        let table: Vec<Vec<usize>> = auts
            .iter()
            .map(|y| {
                auts.iter()
                    .map(|z| {
                        let yz: Vec<usize> = (0..g.order()).map(|h| y[z[h]]).collect();
                        index_of(&yz).expect("automorphisms are closed under composition")
                    })
                    .collect()
            })
            .collect();
        let d_group = FiniteGroup::from_table(&table)?;
        let boundary = g
            .elements()
            .map(|h| {
                let inner: Vec<usize> = g.elements().map(|k| g.conj(h, k)).collect();
                index_of(&inner).expect("inner automorphisms are automorphisms")
            })
            .collect();
        CrossedModule::new(g.clone(), d_group, boundary, &auts)
    }

    /// `H = 1`, `D = G`: the categorically discrete 2-group on `G`.
    pub fn discrete(g: &FiniteGroup) -> Result<Self, CrossedModuleError> {
        let h = crate::group::groups::trivial();
        let action = vec![vec![0]; g.order()];
        CrossedModule::new(h, g.clone(), vec![g.identity()], &action)
    }

    /// `H = A`, `D = 1` for abelian `A`.
    pub fn shifted(a: &FiniteGroup) -> Result<Self, CrossedModuleError> {
        if !a.is_abelian() {
            return Err(CrossedModuleError::NotAbelian);
        }
        let d = crate::group::groups::trivial();
        let action = vec![a.elements().collect()];
        CrossedModule::new(a.clone(), d, vec![0; a.order()], &action)
    }

    /// `H = F`, `D = G`, `d` trivial, `l(y)(w) = act(w, y⁻¹)`, for a right
    /// action of `G` on the abelian group `F` by automorphisms.
    ///
    /// The map `(h, y) ↦ (y, act(h, y))` carries the arrow product to
    /// `(x, w)·(x', w') = (x·x', act(w, x') + w')`.
    pub fn vector(fibre: &FiniteGroup, action: &RightAction) -> Result<Self, CrossedModuleError> {
        if !fibre.is_abelian() {
            return Err(CrossedModuleError::NotAbelian);
        }
        if action.set_size() != fibre.order() {
            return Err(CrossedModuleError::Malformed(
                "action must be on the underlying set of the fibre group".into(),
            ));
        }
        let g = action.group();
        for y in g.elements() {
            for a in fibre.elements() {
                for b in fibre.elements() {
                    if action.act(fibre.mul(a, b), y) != fibre.mul(action.act(a, y), action.act(b, y)) {
                        return Err(CrossedModuleError::ActionNotByAutomorphisms(y));
                    }
                }
            }
        }
        let table: Vec<Vec<usize>> = g
            .elements()
            .map(|y| fibre.elements().map(|w| action.act(w, g.inv(y))).collect())
            .collect();
        CrossedModule::new(fibre.clone(), g.clone(), vec![g.identity(); fibre.order()], &table)
    }

    // --- arrow arithmetic ---

    pub fn source(&self, a: Arrow) -> usize {
        self.automorphisms.mul(self.d(a.h), a.y)
    }

    pub fn target(&self, a: Arrow) -> usize {
        a.y
    }

    pub fn identity_arrow(&self, y: usize) -> Arrow {
        Arrow::new(self.base.identity(), y)
    }

    /// Horizontal (tensor) product.
    pub fn mult_arrows(&self, a: Arrow, b: Arrow) -> Arrow {
        Arrow::new(
            self.base.mul(a.h, self.l(a.y, b.h)),
            self.automorphisms.mul(a.y, b.y),
        )
    }

    /// Vertical composite, `first` on top.
    pub fn compose_arrows(&self, first: Arrow, then: Arrow) -> Result<Arrow, CrossedModuleError> {
        if self.target(first) != self.source(then) {
            return Err(CrossedModuleError::NotComposable);
        }
        Ok(Arrow::new(self.base.mul(first.h, then.h), then.y))
    }

    /// Vertical inverse.
    pub fn invert_arrow(&self, a: Arrow) -> Arrow {
        Arrow::new(self.base.inv(a.h), self.source(a))
    }

    /// Horizontal inverse.
    pub fn mult_inverse(&self, a: Arrow) -> Arrow {
        let y_inv = self.automorphisms.inv(a.y);
        Arrow::new(self.l(y_inv, self.base.inv(a.h)), y_inv)
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.base
            .elements()
            .flat_map(move |h| self.automorphisms.elements().map(move |y| Arrow::new(h, y)))
    }

    pub fn arrow_count(&self) -> usize {
        self.base.order() * self.automorphisms.order()
    }
}
