//! Finite sets as index ranges `0..n`, maps between them, pullbacks,
//! and quotients of equivalence relations.

use std::fmt;

use thiserror::Error;

/// Which equivalence-relation axiom failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationDefect {
    NotJointlyMonic,
    NotReflexive,
    NotEuclidean,
}

impl fmt::Display for RelationDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationDefect::NotJointlyMonic => "NotJointlyMonic",
            RelationDefect::NotReflexive => "NotReflexive",
            RelationDefect::NotEuclidean => "NotEuclidean",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinSetError {
    #[error("maps do not form the expected diagram: {0}")]
    DiagramMismatch(String),
    #[error("value {value} at position {index} is out of range for a target of size {target_size}")]
    ValueOutOfRange {
        index: usize,
        value: usize,
        target_size: usize,
    },
    #[error("not an equivalence relation: {0}")]
    NotEquivalenceRelation(RelationDefect),
}

impl FinSetError {
    pub fn kind(&self) -> &'static str {
        match self {
            FinSetError::DiagramMismatch(_) => "DiagramMismatch",
            FinSetError::ValueOutOfRange { .. } => "ValueOutOfRange",
            FinSetError::NotEquivalenceRelation(_) => "NotEquivalenceRelation",
        }
    }
}

/// A map between finite sets `{0..source_size} -> {0..target_size}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinMap {
    target_size: usize,
    values: Vec<usize>,
}

impl FinMap {
    pub fn new(target_size: usize, values: Vec<usize>) -> Result<Self, FinSetError> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= target_size) {
            return Err(FinSetError::ValueOutOfRange {
                index,
                value,
                target_size,
            });
        }
        Ok(FinMap {
            target_size,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        FinMap {
            target_size: n,
            values: (0..n).collect(),
        }
    }

    pub fn constant(source_size: usize, target_size: usize, value: usize) -> Result<Self, FinSetError> {
        FinMap::new(target_size, vec![value; source_size])
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &FinMap) -> Result<FinMap, FinSetError> {
        if self.target_size != other.source_size() {
            return Err(FinSetError::DiagramMismatch(format!(
                "cannot compose a map into {} elements with a map from {} elements",
                self.target_size,
                other.source_size()
            )));
        }
        Ok(FinMap {
            target_size: other.target_size,
            values: self.values.iter().map(|&v| other.values[v]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_size];
        for &v in &self.values {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target_size];
        for &v in &self.values {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        true
    }
}

/// Two maps out of a common apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub left: FinMap,
    pub right: FinMap,
}

impl Span {
    pub fn apex_size(&self) -> usize {
        self.left.source_size()
    }
}

/// Pullback of `f: X -> Z` and `g: Y -> Z`.
///
/// The apex lists the pairs `(x, y)` with `f(x) = g(y)` in lexicographic order.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Span, FinSetError> {
    if f.target_size() != g.target_size() {
        return Err(FinSetError::DiagramMismatch(format!(
            "pullback legs have targets of size {} and {}",
            f.target_size(),
            g.target_size()
        )));
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for x in 0..f.source_size() {
        for y in 0..g.source_size() {
            if f.apply(x) == g.apply(y) {
                left.push(x);
                right.push(y);
            }
        }
    }
    Ok(Span {
        left: FinMap::new(f.source_size(), left)?,
        right: FinMap::new(g.source_size(), right)?,
    })
}

/// True iff `a ↦ (j0(a), j1(a))` is injective.
pub fn is_jointly_monic(j0: &FinMap, j1: &FinMap) -> Result<bool, FinSetError> {
    if j0.source_size() != j1.source_size() {
        return Err(FinSetError::DiagramMismatch(format!(
            "maps have sources of size {} and {}",
            j0.source_size(),
            j1.source_size()
        )));
    }
    let mut seen = std::collections::HashSet::with_capacity(j0.source_size());
    Ok((0..j0.source_size()).all(|a| seen.insert((j0.apply(a), j1.apply(a)))))
}

/// An internal equivalence relation `R² ⇉ U` with its reflexivity map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivRelation {
    pub j0: FinMap,
    pub j1: FinMap,
    pub reflexivity: FinMap,
}

impl EquivRelation {
    pub fn carrier_size(&self) -> usize {
        self.j0.target_size()
    }

    pub fn r2_size(&self) -> usize {
        self.j0.source_size()
    }

    /// Kernel pair of `u`, with the diagonal as reflexivity map.
    pub fn kernel_pair(u: &FinMap) -> Self {
        let span = pullback(u, u).expect("a map always has a kernel pair");
        let n = u.source_size();
        let reflexivity = (0..n)
            .map(|x| {
                (0..span.apex_size())
                    .find(|&a| span.left.apply(a) == x && span.right.apply(a) == x)
                    .expect("diagonal lies in the kernel pair")
            })
            .collect();
        EquivRelation {
            reflexivity: FinMap::new(span.apex_size(), reflexivity).expect("indices in range"),
            j0: span.left,
            j1: span.right,
        }
    }

    /// Relation listing each pair of `pairs` once; reflexivity is located among them.
    pub fn from_pairs(carrier_size: usize, pairs: &[(usize, usize)]) -> Result<Self, FinSetError> {
        let j0 = FinMap::new(carrier_size, pairs.iter().map(|p| p.0).collect())?;
        let j1 = FinMap::new(carrier_size, pairs.iter().map(|p| p.1).collect())?;
        let reflexivity = (0..carrier_size)
            .map(|x| {
                pairs
                    .iter()
                    .position(|&p| p == (x, x))
                    .ok_or(FinSetError::NotEquivalenceRelation(RelationDefect::NotReflexive))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EquivRelation {
            j0,
            j1,
            reflexivity: FinMap::new(pairs.len(), reflexivity)?,
        })
    }

    pub fn validate(&self) -> Result<(), FinSetError> {
        let n = self.carrier_size();
        if self.j1.target_size() != n
            || self.j1.source_size() != self.r2_size()
            || self.reflexivity.source_size() != n
            || self.reflexivity.target_size() != self.r2_size()
        {
            return Err(FinSetError::DiagramMismatch(
                "relation maps have inconsistent sizes".into(),
            ));
        }
        if !is_jointly_monic(&self.j0, &self.j1)? {
            return Err(FinSetError::NotEquivalenceRelation(RelationDefect::NotJointlyMonic));
        }
        for x in 0..n {
            let r = self.reflexivity.apply(x);
            if self.j0.apply(r) != x || self.j1.apply(r) != x {
                return Err(FinSetError::NotEquivalenceRelation(RelationDefect::NotReflexive));
            }
        }
        let related: std::collections::HashSet<(usize, usize)> = (0..self.r2_size())
            .map(|a| (self.j0.apply(a), self.j1.apply(a)))
            .collect();
        for a in 0..self.r2_size() {
            for b in 0..self.r2_size() {
                if self.j0.apply(a) == self.j0.apply(b)
                    && !related.contains(&(self.j1.apply(a), self.j1.apply(b)))
                {
                    return Err(FinSetError::NotEquivalenceRelation(RelationDefect::NotEuclidean));
                }
            }
        }
        Ok(())
    }
}

/// Quotient map `U -> Q` of a validated equivalence relation.
///
/// Classes are numbered in order of their least element.
pub fn quotient_equiv_relation(rel: &EquivRelation) -> Result<FinMap, FinSetError> {
    rel.validate()?;
    let n = rel.carrier_size();
    let mut class = vec![usize::MAX; n];
    let mut count = 0;
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        // With reflexivity and Euclideanness, the class of x is exactly j1 over j0⁻¹(x).
        for a in 0..rel.r2_size() {
            if rel.j0.apply(a) == x {
                class[rel.j1.apply(a)] = count;
            }
        }
        count += 1;
    }
    FinMap::new(count, class)
}

/// The unique `v` with `v ∘ quotient = x`, if `x` is constant on the fibres of `quotient`.
pub fn factor_through(quotient: &FinMap, x: &FinMap) -> Option<FinMap> {
    if quotient.source_size() != x.source_size() {
        return None;
    }
    let mut values = vec![None; quotient.target_size()];
    for u in 0..x.source_size() {
        let slot = &mut values[quotient.apply(u)];
        match *slot {
            None => *slot = Some(x.apply(u)),
            Some(v) if v != x.apply(u) => return None,
            Some(_) => {}
        }
    }
    let values = values.into_iter().collect::<Option<Vec<_>>>()?;
    FinMap::new(x.target_size(), values).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(t: usize, v: &[usize]) -> FinMap {
        FinMap::new(t, v.to_vec()).unwrap()
    }

    #[test]
    fn pullback_over_a_point_is_the_product() {
        let f = map(1, &[0, 0]);
        let span = pullback(&f, &f).unwrap();
        assert_eq!(span.apex_size(), 4);
        assert_eq!(span.left.values(), &[0, 0, 1, 1]);
        assert_eq!(span.right.values(), &[0, 1, 0, 1]);
    }

    #[test]
    fn pullback_along_identity() {
        let g = map(3, &[2, 0, 0, 1]);
        let span = pullback(&FinMap::identity(3), &g).unwrap();
        assert_eq!(span.apex_size(), 4);
        let mut right = span.right.values().to_vec();
        right.sort();
        assert_eq!(right, vec![0, 1, 2, 3]);
        for a in 0..4 {
            assert_eq!(span.left.apply(a), g.apply(span.right.apply(a)));
        }
    }

    #[test]
    fn pullback_of_mod_two_reduction() {
        let r = map(2, &[0, 1, 0, 1]);
        let span = pullback(&r, &r).unwrap();
        let mut expected = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                if a % 2 == b % 2 {
                    expected.push((a, b));
                }
            }
        }
        assert_eq!(expected.len(), 8);
        let got: Vec<_> = (0..8).map(|i| (span.left.apply(i), span.right.apply(i))).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn pullback_target_mismatch() {
        let err = pullback(&map(2, &[0]), &map(3, &[0])).unwrap_err();
        assert_eq!(err.kind(), "DiagramMismatch");
    }

    #[test]
    fn kernel_pair_quotient_recovers_the_cover() {
        let u = map(2, &[0, 0, 1]);
        let rel = EquivRelation::kernel_pair(&u);
        assert_eq!(rel.r2_size(), 5);
        let q = quotient_equiv_relation(&rel).unwrap();
        assert_eq!(q, u);
    }

    #[test]
    fn discrete_and_codiscrete_relations() {
        let discrete = EquivRelation::kernel_pair(&FinMap::identity(4));
        assert_eq!(quotient_equiv_relation(&discrete).unwrap(), FinMap::identity(4));
        let full = EquivRelation::kernel_pair(&map(1, &[0, 0, 0]));
        let q = quotient_equiv_relation(&full).unwrap();
        assert_eq!(q.target_size(), 1);
    }

    #[test]
    fn joint_monicity() {
        let u = map(2, &[0, 0, 1]);
        let span = pullback(&u, &u).unwrap();
        assert!(is_jointly_monic(&span.left, &span.right).unwrap());
        let c = map(1, &[0, 0]);
        assert!(!is_jointly_monic(&c, &c).unwrap());
        let j0 = map(3, &[0, 0, 1, 1, 2]);
        let j1 = map(3, &[0, 1, 0, 1, 2]);
        assert!(is_jointly_monic(&j0, &j1).unwrap());
        assert!(is_jointly_monic(&map(2, &[0]), &map(2, &[0, 1])).is_err());
    }

    #[test]
    fn relation_defects_are_reported() {
        // duplicate pair
        let rel = EquivRelation {
            j0: map(1, &[0, 0]),
            j1: map(1, &[0, 0]),
            reflexivity: map(2, &[0]),
        };
        assert_eq!(
            rel.validate(),
            Err(FinSetError::NotEquivalenceRelation(RelationDefect::NotJointlyMonic))
        );
        // missing diagonal
        let bad = EquivRelation::from_pairs(2, &[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(
            bad,
            Err(FinSetError::NotEquivalenceRelation(RelationDefect::NotReflexive))
        );
        // 0~1, 0~2 but not 1~2
        let rel = EquivRelation::from_pairs(
            3,
            &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (0, 2), (2, 0)],
        )
        .unwrap();
        assert_eq!(
            quotient_equiv_relation(&rel),
            Err(FinSetError::NotEquivalenceRelation(RelationDefect::NotEuclidean))
        );
    }

    #[test]
    fn factorization_is_unique_and_detects_non_coequalizers() {
        let q = map(2, &[0, 0, 1]);
        assert_eq!(factor_through(&q, &map(3, &[2, 2, 0])), Some(map(3, &[2, 0])));
        assert_eq!(factor_through(&q, &map(3, &[2, 1, 0])), None);
    }
}
