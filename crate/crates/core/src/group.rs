//! Finite groups given by multiplication tables, homomorphisms between
//! them, and finite right G-sets.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::finset::FinMap;

/// Largest order for which automorphism and isomorphism searches run.
pub const MAX_SEARCH_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed table: {0}")]
    InvalidTable(String),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("unit law fails for set element {0}")]
    UnitLawViolation(usize),
    #[error("associative law fails at ({0}, {1}, {2})")]
    AssocLawViolation(usize, usize, usize),
    #[error("group of order {0} exceeds the brute-force search bound {MAX_SEARCH_ORDER}")]
    TooLarge(usize),
}

impl GroupError {
    pub fn kind(&self) -> &'static str {
        match self {
            GroupError::InvalidTable(_) => "InvalidTable",
            GroupError::NoIdentity => "NoIdentity",
            GroupError::NotAssociative(..) => "NotAssociative",
            GroupError::NoInverse(_) => "NoInverse",
            GroupError::NotHomomorphism(..) => "NotHomomorphism",
            GroupError::UnitLawViolation(_) => "UnitLawViolation",
            GroupError::AssocLawViolation(..) => "AssocLawViolation",
            GroupError::TooLarge(_) => "TooLarge",
        }
    }
}

/// A validated finite group. Elements are the indices `0..order`.
///
/// The identity is discovered from the table and need not be element 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Checks the group axioms exhaustively.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(GroupError::InvalidTable(format!("entry {v} in row {i} is out of range")));
            }
        }
        let mult: Vec<usize> = table.iter().flatten().copied().collect();
        let m = |a: usize, b: usize| mult[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let inv = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| m(a, b) == identity && m(b, a) == identity)
                    .ok_or(GroupError::NoInverse(a))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroup {
            order: n,
            mult,
            inv,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a · b⁻¹`
    #[inline]
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv(b))
    }

    /// `g · x · g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        self.elements().filter(|&a| seen[a]).collect()
    }

    /// Greedy generating set: each element is added when it is not yet generated.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in self.elements() {
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generated_by(&gens);
            }
        }
        gens
    }

    /// Orbits of conjugation, each sorted, listed by least representative.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in self.elements() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let orbit: BTreeSet<usize> = self.elements().map(|g| self.conj(g, x)).collect();
            for &y in &orbit {
                class_of[y] = classes.len();
            }
            classes.push(orbit.into_iter().collect());
        }
        classes
    }

    /// Least element of the conjugacy class of `x`.
    pub fn class_representative(&self, x: usize) -> usize {
        self.elements().map(|g| self.conj(g, x)).min().unwrap()
    }

    /// All automorphisms as permutation vectors, sorted lexicographically.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>, GroupError> {
        if self.order > MAX_SEARCH_ORDER {
            return Err(GroupError::TooLarge(self.order));
        }
        let mut out = homomorphism_search(self, self, true);
        out.sort();
        Ok(out)
    }

    /// An isomorphism `self -> other`, if one exists.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Result<Option<GroupHom>, GroupError> {
        if self.order > MAX_SEARCH_ORDER {
            return Err(GroupError::TooLarge(self.order));
        }
        if self.order != other.order {
            return Ok(None);
        }
        Ok(homomorphism_search(self, other, true).into_iter().min().map(|values| GroupHom {
            domain: self.clone(),
            codomain: other.clone(),
            values: FinMap::new(other.order, values).expect("search yields indices in range"),
        }))
    }

    /// The same group with elements relabelled: element `a` becomes `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteGroup, GroupError> {
        let n = self.order;
        let mut inverse = vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            inverse[p] = a;
        }
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| perm[self.mul(inverse[i], inverse[j])]).collect())
            .collect();
        FiniteGroup::from_table(&table)
    }
}

/// Exhaustive search over images of a generating set. With `bijective`,
/// only isomorphisms are returned.
fn homomorphism_search(g: &FiniteGroup, h: &FiniteGroup, bijective: bool) -> Vec<Vec<usize>> {
    let gens = g.generators();
    let orders: Vec<usize> = gens.iter().map(|&s| g.element_order(s)).collect();
    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    fn rec(
        k: usize,
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        orders: &[usize],
        images: &mut Vec<usize>,
        bijective: bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == gens.len() {
            if let Some(values) = extend_on_generators(g, h, gens, images) {
                if !bijective || FinMap::new(h.order(), values.clone()).unwrap().is_injective() {
                    out.push(values);
                }
            }
            return;
        }
        for cand in h.elements() {
            let ord = h.element_order(cand);
            if (bijective && ord != orders[k]) || !orders[k].is_multiple_of(ord) {
                continue;
            }
            images[k] = cand;
            rec(k + 1, g, h, gens, orders, images, bijective, out);
        }
    }
    rec(0, g, h, &gens, &orders, &mut images, bijective, &mut out);
    out
}

fn extend_on_generators(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut phi = vec![usize::MAX; g.order()];
    phi[g.identity()] = h.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(a) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let b = g.mul(a, s);
            let image = h.mul(phi[a], t);
            if phi[b] == usize::MAX {
                phi[b] = image;
                queue.push_back(b);
            } else if phi[b] != image {
                return None;
            }
        }
    }
    for a in g.elements() {
        for b in g.elements() {
            if phi[g.mul(a, b)] != h.mul(phi[a], phi[b]) {
                return None;
            }
        }
    }
    Some(phi)
}

/// A homomorphism of finite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    domain: FiniteGroup,
    codomain: FiniteGroup,
    values: FinMap,
}

impl GroupHom {
    pub fn new(domain: FiniteGroup, codomain: FiniteGroup, values: Vec<usize>) -> Result<Self, GroupError> {
        if values.len() != domain.order() {
            return Err(GroupError::InvalidTable(format!(
                "homomorphism has {} values for a domain of order {}",
                values.len(),
                domain.order()
            )));
        }
        let values = FinMap::new(codomain.order(), values)
            .map_err(|e| GroupError::InvalidTable(e.to_string()))?;
        if values.apply(domain.identity()) != codomain.identity() {
            return Err(GroupError::NotHomomorphism(domain.identity(), domain.identity()));
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if values.apply(domain.mul(a, b)) != codomain.mul(values.apply(a), values.apply(b)) {
                    return Err(GroupError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            values,
        })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            values: FinMap::identity(g.order()),
        }
    }

    pub fn trivial(domain: &FiniteGroup, codomain: &FiniteGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            values: FinMap::constant(domain.order(), codomain.order(), codomain.identity())
                .expect("identity index is in range"),
        }
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        &self.codomain
    }

    pub fn values(&self) -> &FinMap {
        &self.values
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.values.apply(a)
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom, GroupError> {
        if self.codomain != next.domain {
            return Err(GroupError::InvalidTable("homomorphisms are not composable".into()));
        }
        Ok(GroupHom {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            values: self.values.then(&next.values).expect("sizes agree"),
        })
    }
}

/// A finite right G-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightAction {
    group: FiniteGroup,
    set_size: usize,
    act: Vec<usize>,
}

impl RightAction {
    /// Builds and validates an action from its `set_size × order` table.
    pub fn new(group: FiniteGroup, table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let set_size = table.len();
        for (w, row) in table.iter().enumerate() {
            if row.len() != group.order() {
                return Err(GroupError::InvalidTable(format!(
                    "action row {w} has {} entries, expected {}",
                    row.len(),
                    group.order()
                )));
            }
            if row.iter().any(|&v| v >= set_size) {
                return Err(GroupError::InvalidTable(format!("action row {w} leaves the set")));
            }
        }
        let a = RightAction {
            group,
            set_size,
            act: table.iter().flatten().copied().collect(),
        };
        a.validate()?;
        Ok(a)
    }

    /// `G` acting on itself by right multiplication.
    pub fn regular(group: &FiniteGroup) -> Self {
        let n = group.order();
        RightAction {
            group: group.clone(),
            set_size: n,
            act: (0..n).flat_map(|w| (0..n).map(move |x| (w, x))).map(|(w, x)| group.mul(w, x)).collect(),
        }
    }

    pub fn trivial(group: &FiniteGroup, set_size: usize) -> Self {
        RightAction {
            group: group.clone(),
            set_size,
            act: (0..set_size).flat_map(|w| std::iter::repeat_n(w, group.order())).collect(),
        }
    }

    /// Disjoint union, with the second summand's elements shifted past the first.
    pub fn disjoint_union(&self, other: &RightAction) -> Result<Self, GroupError> {
        if self.group != other.group {
            return Err(GroupError::InvalidTable("actions of different groups".into()));
        }
        let mut act = self.act.clone();
        act.extend(other.act.iter().map(|&v| v + self.set_size));
        Ok(RightAction {
            group: self.group.clone(),
            set_size: self.set_size + other.set_size,
            act,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    #[inline]
    pub fn act(&self, w: usize, x: usize) -> usize {
        self.act[w * self.group.order() + x]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.group.order()).map(|r| r.to_vec()).collect()
    }

    /// Checks the unit and associative laws for every element.
    pub fn validate(&self) -> Result<(), GroupError> {
        let g = &self.group;
        for w in 0..self.set_size {
            if self.act(w, g.identity()) != w {
                return Err(GroupError::UnitLawViolation(w));
            }
        }
        for w in 0..self.set_size {
            for x in g.elements() {
                let wx = self.act(w, x);
                for y in g.elements() {
                    if self.act(wx, y) != self.act(w, g.mul(x, y)) {
                        return Err(GroupError::AssocLawViolation(w, x, y));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_torsor(&self) -> bool {
        self.torsor_witness().is_some()
    }

    /// For a torsor, the equivariant bijection `set -> G` sending `w` to the
    /// unique `k` with `act(0, k) = w`.
    pub fn torsor_witness(&self) -> Option<FinMap> {
        if self.set_size != self.group.order() || self.set_size == 0 {
            return None;
        }
        let mut witness = vec![usize::MAX; self.set_size];
        for k in self.group.elements() {
            let w = self.act(0, k);
            if witness[w] != usize::MAX {
                return None;
            }
            witness[w] = k;
        }
        FinMap::new(self.group.order(), witness).ok()
    }

    /// Restriction to a subset closed under the action; elements are renumbered
    /// in the order given.
    pub fn restrict(&self, subset: &[usize]) -> Option<RightAction> {
        let index: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let mut act = Vec::with_capacity(subset.len() * self.group.order());
        for &w in subset {
            for x in self.group.elements() {
                act.push(*index.get(&self.act(w, x))?);
            }
        }
        Some(RightAction {
            group: self.group.clone(),
            set_size: subset.len(),
            act,
        })
    }
}

/// Standard small groups with fixed labellings.
pub mod groups {
    use super::FiniteGroup;

    pub fn trivial() -> FiniteGroup {
        cyclic(1)
    }

    /// `Z/n`, element `k` is the residue `k`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(&table).expect("cyclic table is a group")
    }

    /// `(Z/p)^×`, element `k` is the residue `k + 1`.
    pub fn units_mod(p: usize) -> FiniteGroup {
        let units: Vec<usize> = (1..p).filter(|&a| gcd(a, p) == 1).collect();
        let table: Vec<Vec<usize>> = units
            .iter()
            .map(|&a| {
                units
                    .iter()
                    .map(|&b| units.iter().position(|&c| c == a * b % p).unwrap())
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("units form a group")
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    /// All permutations of `0..n` in lexicographic order; the product `p·q`
    /// applies `p` first, then `q`.
    pub fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for i in 0..n {
                if !prefix.contains(&i) {
                    prefix.push(i);
                    rec(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), n, &mut out);
        out
    }

    /// `S_n` on permutations in lexicographic order.
    pub fn symmetric(n: usize) -> FiniteGroup {
        let perms = permutations(n);
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq: Vec<usize> = (0..n).map(|i| q[p[i]]).collect();
                        perms.iter().position(|r| *r == pq).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("symmetric group table")
    }

    /// `A × B` with element `(a, b)` at index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let nb = b.order();
        let n = a.order() * nb;
        let table: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("product of groups")
    }

    /// Every group of order at most 6, up to isomorphism.
    pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
        vec![
            ("1", trivial()),
            ("Z2", cyclic(2)),
            ("Z3", cyclic(3)),
            ("Z4", cyclic(4)),
            ("Z2xZ2", direct_product(&cyclic(2), &cyclic(2))),
            ("Z5", cyclic(5)),
            ("Z6", cyclic(6)),
            ("S3", symmetric(3)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::groups::*;
    use super::*;

    #[test]
    fn s3_is_a_group() {
        let s3 = symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::from_table(&s3.table()).unwrap(), s3);
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes(), vec![vec![0]]);
    }

    #[test]
    fn identity_need_not_be_zero() {
        // Z/2 with the identity labelled 1
        let g = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.identity(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn broken_associativity_is_found() {
        let mut t = symmetric(3).table();
        // Products of two non-identity elements; perturb one so the identity row stays intact.
        let (a, b, c) = (1, 2, 3);
        let g = symmetric(3);
        assert_eq!(g.mul(a, g.mul(b, c)), g.mul(g.mul(a, b), c));
        let bc = g.mul(b, c);
        let wrong = (0..6).find(|&x| x != t[a][bc] && x != 0).unwrap();
        t[a][bc] = wrong;
        assert!(matches!(FiniteGroup::from_table(&t), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn missing_identity_and_inverse() {
        assert_eq!(
            FiniteGroup::from_table(&[vec![0, 0], vec![0, 0]]),
            Err(GroupError::NoIdentity)
        );
        // {0,1} with max: identity 0, associative, 1 has no inverse
        assert_eq!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]),
            Err(GroupError::NoInverse(1))
        );
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1]]),
            Err(GroupError::InvalidTable(_))
        ));
    }

    #[test]
    fn regular_and_trivial_actions() {
        let s3 = symmetric(3);
        let reg = RightAction::regular(&s3);
        reg.validate().unwrap();
        assert!(reg.is_torsor());
        RightAction::trivial(&s3, 4).validate().unwrap();
        assert!(RightAction::new(s3.clone(), &reg.table()).is_ok());
    }

    #[test]
    fn swap_with_broken_unit_law() {
        let z2 = cyclic(2);
        let a = RightAction::new(z2, &[vec![1, 1], vec![0, 0]]);
        assert_eq!(a, Err(GroupError::UnitLawViolation(0)));
    }

    #[test]
    fn torsor_recognition() {
        let z2 = cyclic(2);
        assert!(!RightAction::trivial(&z2, 2).is_torsor());
        let reg = RightAction::regular(&z2);
        assert!(!reg.disjoint_union(&reg).unwrap().is_torsor());
        for (_, g) in small_groups() {
            let reg = RightAction::regular(&g);
            let w = reg.torsor_witness().unwrap();
            // equivariance: witness(act(w, k)) = witness(w)·k
            for x in 0..g.order() {
                for k in g.elements() {
                    assert_eq!(w.apply(reg.act(x, k)), g.mul(w.apply(x), k));
                }
            }
        }
    }

    #[test]
    fn conjugacy_classes_of_small_groups() {
        let classes = symmetric(3).conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        assert_eq!(classes.len(), 3);
        assert_eq!(sizes[0], 1);
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(cyclic(4).conjugacy_classes().len(), 4);
        for (_, g) in small_groups() {
            let cs = g.conjugacy_classes();
            assert_eq!(cs.iter().map(|c| c.len()).sum::<usize>(), g.order());
            assert!(cs.iter().all(|c| g.order() % c.len() == 0));
        }
    }

    #[test]
    fn automorphism_groups() {
        assert_eq!(cyclic(3).automorphisms().unwrap().len(), 2);
        assert_eq!(symmetric(3).automorphisms().unwrap().len(), 6);
        assert_eq!(cyclic(5).automorphisms().unwrap().len(), 4);
        assert_eq!(direct_product(&cyclic(2), &cyclic(2)).automorphisms().unwrap().len(), 6);
        assert_eq!(symmetric(4).automorphisms(), Err(GroupError::TooLarge(24)));
    }

    #[test]
    fn isomorphism_search() {
        let s3 = symmetric(3);
        let relabelled = s3.relabel(&[3, 0, 5, 1, 4, 2]).unwrap();
        let iso = s3.isomorphism_to(&relabelled).unwrap().unwrap();
        assert!(iso.values().is_injective());
        assert!(cyclic(6).isomorphism_to(&s3).unwrap().is_none());
        assert!(units_mod(5).isomorphism_to(&cyclic(4)).unwrap().is_some());
    }

    #[test]
    fn homomorphism_composition() {
        let z6 = cyclic(6);
        let z3 = cyclic(3);
        let z2 = cyclic(2);
        let f = GroupHom::new(z6.clone(), z3.clone(), (0..6).map(|a| a % 3).collect()).unwrap();
        let g = GroupHom::trivial(&z3, &z2);
        let h = f.then(&g).unwrap();
        assert_eq!(h.values().values(), &[0; 6]);
        assert!(matches!(
            GroupHom::new(z3.clone(), z2.clone(), vec![0, 1, 1]),
            Err(GroupError::NotHomomorphism(..))
        ));
    }
}
