//! Truncated cover nerves: the levels `C1..C4` with their face and
//! degeneracy maps.
//!
//! An element of `C_k` is an ordered `k`-tuple of points (repeats allowed).
//! Every structure map retains a list of positions: `D02` keeps positions
//! `[0, 2]` of a triple, `S0C2` sends `(x, y)` to `(x, x, y)`. Levels are
//! enumerated in lexicographic tuple order.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::finset::{FinMap, FinSetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("cover map is not surjective")]
    NotSurjective,
    #[error("face family is not downward closed: missing {0:?}")]
    NotDownwardClosed(Vec<usize>),
    #[error("simplicial identity {which} fails at element {element}")]
    SimplicialIdentityViolation { which: String, element: usize },
    #[error("malformed shape: {0}")]
    Malformed(String),
}

impl ShapeError {
    pub fn kind(&self) -> &'static str {
        match self {
            ShapeError::NotSurjective => "NotSurjective",
            ShapeError::NotDownwardClosed(_) => "NotDownwardClosed",
            ShapeError::SimplicialIdentityViolation { .. } => "SimplicialIdentityViolation",
            ShapeError::Malformed(_) => "Malformed",
        }
    }
}

impl From<FinSetError> for ShapeError {
    fn from(e: FinSetError) -> Self {
        ShapeError::Malformed(e.to_string())
    }
}

/// The named structure maps of a cover shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NerveMap {
    D0,
    D1,
    D01,
    D12,
    D02,
    D012,
    D013,
    D023,
    D123,
    S0C1,
    S0C2,
    S1C2,
    S0C3,
    S1C3,
    S2C3,
}

impl NerveMap {
    pub const ALL: [NerveMap; 15] = [
        NerveMap::D0,
        NerveMap::D1,
        NerveMap::D01,
        NerveMap::D12,
        NerveMap::D02,
        NerveMap::D012,
        NerveMap::D013,
        NerveMap::D023,
        NerveMap::D123,
        NerveMap::S0C1,
        NerveMap::S0C2,
        NerveMap::S1C2,
        NerveMap::S0C3,
        NerveMap::S1C3,
        NerveMap::S2C3,
    ];

    /// Level of the domain (1-based).
    pub fn domain(self) -> usize {
        match self {
            NerveMap::S0C1 => 1,
            NerveMap::D0 | NerveMap::D1 | NerveMap::S0C2 | NerveMap::S1C2 => 2,
            NerveMap::D01 | NerveMap::D12 | NerveMap::D02 | NerveMap::S0C3 | NerveMap::S1C3 | NerveMap::S2C3 => 3,
            NerveMap::D012 | NerveMap::D013 | NerveMap::D023 | NerveMap::D123 => 4,
        }
    }

    /// Level of the codomain.
    pub fn codomain(self) -> usize {
        self.retained().len()
    }

    /// Positions of the domain tuple that make up the image tuple.
    pub fn retained(self) -> &'static [usize] {
        match self {
            NerveMap::D0 => &[0],
            NerveMap::D1 => &[1],
            NerveMap::D01 => &[0, 1],
            NerveMap::D12 => &[1, 2],
            NerveMap::D02 => &[0, 2],
            NerveMap::D012 => &[0, 1, 2],
            NerveMap::D013 => &[0, 1, 3],
            NerveMap::D023 => &[0, 2, 3],
            NerveMap::D123 => &[1, 2, 3],
            NerveMap::S0C1 => &[0, 0],
            NerveMap::S0C2 => &[0, 0, 1],
            NerveMap::S1C2 => &[0, 1, 1],
            NerveMap::S0C3 => &[0, 0, 1, 2],
            NerveMap::S1C3 => &[0, 1, 1, 2],
            NerveMap::S2C3 => &[0, 1, 2, 2],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NerveMap::D0 => "d0",
            NerveMap::D1 => "d1",
            NerveMap::D01 => "d01",
            NerveMap::D12 => "d12",
            NerveMap::D02 => "d02",
            NerveMap::D012 => "d012",
            NerveMap::D013 => "d013",
            NerveMap::D023 => "d023",
            NerveMap::D123 => "d123",
            NerveMap::S0C1 => "s0[1]",
            NerveMap::S0C2 => "s0[2]",
            NerveMap::S1C2 => "s1[2]",
            NerveMap::S0C3 => "s0[3]",
            NerveMap::S1C3 => "s1[3]",
            NerveMap::S2C3 => "s2[3]",
        }
    }

    fn index(self) -> usize {
        NerveMap::ALL.iter().position(|&m| m == self).unwrap()
    }
}

/// A simplicial complex on vertices `0..vertices`; faces are sorted vertex lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Takes the complete face family and checks that it is downward closed
    /// and contains every vertex.
    pub fn new(vertices: usize, faces: &[Vec<usize>]) -> Result<Self, ShapeError> {
        let mut set = BTreeSet::new();
        for f in faces {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() || f.iter().any(|&v| v >= vertices) {
                return Err(ShapeError::Malformed(format!("invalid face {f:?}")));
            }
            set.insert(f);
        }
        for v in 0..vertices {
            if !set.contains(&vec![v]) {
                return Err(ShapeError::NotDownwardClosed(vec![v]));
            }
        }
        for f in &set {
            if f.len() > 1 {
                for skip in 0..f.len() {
                    let sub: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    if !set.contains(&sub) {
                        return Err(ShapeError::NotDownwardClosed(sub));
                    }
                }
            }
        }
        Ok(SimplicialComplex { vertices, faces: set })
    }

    /// The downward closure of the given faces.
    pub fn from_maximal(vertices: usize, maximal: &[Vec<usize>]) -> Result<Self, ShapeError> {
        let mut faces: BTreeSet<Vec<usize>> = (0..vertices).map(|v| vec![v]).collect();
        for m in maximal {
            let mut m = m.clone();
            m.sort_unstable();
            m.dedup();
            for mask in 1u32..(1 << m.len()) {
                faces.insert(m.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        SimplicialComplex::new(vertices, &faces.into_iter().collect::<Vec<_>>())
    }

    /// The full simplex on `n + 1` vertices.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex::from_maximal(n + 1, &[(0..=n).collect()]).expect("simplex")
    }

    /// All proper faces of the `n`-simplex.
    pub fn boundary_of_simplex(n: usize) -> Self {
        let maximal: Vec<Vec<usize>> = (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect()).collect();
        SimplicialComplex::from_maximal(n + 1, &maximal).expect("boundary of a simplex")
    }

    /// Three vertices and three edges.
    pub fn hollow_triangle() -> Self {
        SimplicialComplex::boundary_of_simplex(2)
    }

    pub fn point() -> Self {
        SimplicialComplex::simplex(0)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces.contains(face)
    }
}

/// A truncated cover nerve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverShape {
    levels: [Vec<Vec<usize>>; 4],
    maps: Vec<FinMap>,
    cover: Option<FinMap>,
    complex: Option<SimplicialComplex>,
}

impl CoverShape {
    /// Čech nerve of a surjection `u: U -> B`.
    pub fn cech(u: &FinMap) -> Result<Self, ShapeError> {
        if !u.is_surjective() {
            return Err(ShapeError::NotSurjective);
        }
        let mut shape = CoverShape::from_admissible(u.source_size(), |set| {
            set.iter().all(|&x| u.apply(x) == u.apply(set[0]))
        });
        shape.cover = Some(u.clone());
        Ok(shape)
    }

    /// Nerve whose `k`-tuples are those with underlying set a face of `complex`.
    pub fn complex(complex: &SimplicialComplex) -> Self {
        let mut shape = CoverShape::from_admissible(complex.vertices(), |set| complex.contains(set));
        shape.complex = Some(complex.clone());
        shape
    }

    /// `admissible` receives sorted, duplicate-free point sets and must be
    /// downward closed.
    fn from_admissible(points: usize, admissible: impl Fn(&[usize]) -> bool) -> Self {
        fn extend(
            prefix: &mut Vec<usize>,
            k: usize,
            points: usize,
            admissible: &dyn Fn(&[usize]) -> bool,
            out: &mut Vec<Vec<usize>>,
        ) {
            if prefix.len() == k {
                out.push(prefix.clone());
                return;
            }
            for x in 0..points {
                prefix.push(x);
                let mut set = prefix.clone();
                set.sort_unstable();
                set.dedup();
                if admissible(&set) {
                    extend(prefix, k, points, admissible, out);
                }
                prefix.pop();
            }
        }
        let levels: [Vec<Vec<usize>>; 4] = std::array::from_fn(|i| {
            let mut out = Vec::new();
            extend(&mut Vec::new(), i + 1, points, &admissible, &mut out);
            out
        });
        let index: Vec<HashMap<&[usize], usize>> = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect())
            .collect();
        let maps = NerveMap::ALL
            .iter()
            .map(|&m| {
                let (dom, cod) = (m.domain(), m.codomain());
                let values = levels[dom - 1]
                    .iter()
                    .map(|t| {
                        let image: Vec<usize> = m.retained().iter().map(|&i| t[i]).collect();
                        index[cod - 1][image.as_slice()]
                    })
                    .collect();
                FinMap::new(levels[cod - 1].len(), values).expect("indices in range")
            })
            .collect();
        CoverShape {
            levels,
            maps,
            cover: None,
            complex: None,
        }
    }

    /// Reassembles a shape from tuple lists and maps, in [`NerveMap::ALL`] order,
    /// without checking anything.
    pub fn from_parts(levels: [Vec<Vec<usize>>; 4], maps: Vec<FinMap>) -> Self {
        CoverShape {
            levels,
            maps,
            cover: None,
            complex: None,
        }
    }

    pub fn into_parts(self) -> ([Vec<Vec<usize>>; 4], Vec<FinMap>) {
        (self.levels, self.maps)
    }

    /// Size of level `k` (1-based).
    pub fn size(&self, k: usize) -> usize {
        self.levels[k - 1].len()
    }

    pub fn points(&self) -> usize {
        self.size(1)
    }

    /// The tuple at `index` of level `k`.
    pub fn tuple(&self, k: usize, index: usize) -> &[usize] {
        &self.levels[k - 1][index]
    }

    pub fn tuples(&self, k: usize) -> &[Vec<usize>] {
        &self.levels[k - 1]
    }

    /// Index of a tuple in its level.
    pub fn find(&self, tuple: &[usize]) -> Option<usize> {
        let level = self.levels.get(tuple.len().checked_sub(1)?)?;
        level.binary_search_by(|t| t.as_slice().cmp(tuple)).ok()
    }

    pub fn map(&self, m: NerveMap) -> &FinMap {
        &self.maps[m.index()]
    }

    #[inline]
    pub fn apply(&self, m: NerveMap, x: usize) -> usize {
        self.maps[m.index()].apply(x)
    }

    /// The cover map, for Čech shapes.
    pub fn cover(&self) -> Option<&FinMap> {
        self.cover.as_ref()
    }

    /// The generating complex, for complex shapes.
    pub fn simplicial_complex(&self) -> Option<&SimplicialComplex> {
        self.complex.as_ref()
    }

    /// Degenerate elements of level `k ≥ 2`: images of degeneracy maps.
    pub fn is_degenerate(&self, k: usize, index: usize) -> bool {
        self.tuple(k, index).windows(2).any(|w| w[0] == w[1])
    }

    /// Checks every identity between composites of structure maps.
    ///
    /// Chains of two or three maps are grouped by their composite retain list;
    /// all chains in a group must agree, and agree with the identity or the
    /// named map having that list.
    pub fn validate(&self) -> Result<(), ShapeError> {
        for &m in &NerveMap::ALL {
            let f = self.map(m);
            if f.source_size() != self.size(m.domain()) || f.target_size() != self.size(m.codomain()) {
                return Err(ShapeError::Malformed(format!("{} has the wrong shape", m.name())));
            }
        }
        let mut chains: Vec<(Vec<NerveMap>, Vec<usize>)> = Vec::new();
        for &a in &NerveMap::ALL {
            for &b in &NerveMap::ALL {
                if a.codomain() == b.domain() {
                    chains.push((vec![a, b], compose_retained(&[a, b])));
                    for &c in &NerveMap::ALL {
                        if b.codomain() == c.domain() {
                            chains.push((vec![a, b, c], compose_retained(&[a, b, c])));
                        }
                    }
                }
            }
        }
        let mut reference: HashMap<(usize, Vec<usize>), (String, Vec<usize>)> = HashMap::new();
        for &m in &NerveMap::ALL {
            reference.insert((m.domain(), m.retained().to_vec()), (m.name().to_string(), self.map(m).values().to_vec()));
        }
        for k in 1..=4 {
            reference.insert(((k), (0..k).collect()), ("id".to_string(), (0..self.size(k)).collect()));
        }
        for (chain, list) in chains {
            let dom = chain[0].domain();
            let mut values: Vec<usize> = (0..self.size(dom)).collect();
            for &m in &chain {
                values = values.iter().map(|&x| self.apply(m, x)).collect();
            }
            let name = chain.iter().map(|m| m.name()).collect::<Vec<_>>().join(" then ");
            match reference.get(&(dom, list.clone())) {
                Some((ref_name, ref_values)) => {
                    if let Some(element) = (0..values.len()).find(|&i| values[i] != ref_values[i]) {
                        return Err(ShapeError::SimplicialIdentityViolation {
                            which: format!("{name} = {ref_name}"),
                            element,
                        });
                    }
                }
                None => {
                    reference.insert((dom, list), (name, values));
                }
            }
        }
        Ok(())
    }
}

/// Retain list of a chain of maps applied left to right.
fn compose_retained(chain: &[NerveMap]) -> Vec<usize> {
    let mut list: Vec<usize> = (0..chain[0].domain()).collect();
    for &m in chain {
        list = m.retained().iter().map(|&i| list[i]).collect();
    }
    list
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_levels() {
        for m in NerveMap::ALL {
            assert_eq!(m.codomain(), m.retained().len());
            let expected_domain = match m {
                NerveMap::D0 | NerveMap::D1 => 2,
                NerveMap::D01 | NerveMap::D12 | NerveMap::D02 => 3,
                NerveMap::D012 | NerveMap::D013 | NerveMap::D023 | NerveMap::D123 => 4,
                NerveMap::S0C1 => 1,
                NerveMap::S0C2 | NerveMap::S1C2 => 2,
                _ => 3,
            };
            assert_eq!(m.domain(), expected_domain, "{}", m.name());
        }
    }

    #[test]
    fn cech_of_identity_is_diagonal() {
        let s = CoverShape::cech(&FinMap::identity(2)).unwrap();
        assert_eq!(s.size(2), 2);
        s.validate().unwrap();
    }

    #[test]
    fn cech_level_sizes() {
        let u = FinMap::new(2, vec![0, 0, 1]).unwrap();
        let s = CoverShape::cech(&u).unwrap();
        assert_eq!(s.size(2), 5);
        assert_eq!(s.size(3), 9);
        assert_eq!(s.size(4), 17);
        s.validate().unwrap();
        assert_eq!(CoverShape::cech(&FinMap::new(3, vec![0, 0]).unwrap()), Err(ShapeError::NotSurjective));
    }

    #[test]
    fn complex_level_sizes() {
        let s = CoverShape::complex(&SimplicialComplex::hollow_triangle());
        assert_eq!((s.size(1), s.size(2), s.size(3)), (3, 9, 21));
        s.validate().unwrap();
        let s = CoverShape::complex(&SimplicialComplex::boundary_of_simplex(3));
        assert_eq!((s.size(3), s.size(4)), (64, 232));
        s.validate().unwrap();
        let s = CoverShape::complex(&SimplicialComplex::point());
        assert_eq!((1..=4).map(|k| s.size(k)).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn not_downward_closed() {
        let err = SimplicialComplex::new(3, &[vec![0], vec![1], vec![2], vec![0, 1, 2]]).unwrap_err();
        assert_eq!(err.kind(), "NotDownwardClosed");
        assert!(matches!(SimplicialComplex::new(2, &[vec![0]]), Err(ShapeError::NotDownwardClosed(_))));
    }

    #[test]
    fn mutated_degeneracy_is_detected() {
        let s = CoverShape::complex(&SimplicialComplex::hollow_triangle());
        let (levels, mut maps) = s.into_parts();
        let i = NerveMap::ALL.iter().position(|&m| m == NerveMap::S0C1).unwrap();
        let wrong = (maps[i].apply(1) + 1) % maps[i].target_size();
        let mut values = maps[i].values().to_vec();
        values[1] = wrong;
        maps[i] = FinMap::new(maps[i].target_size(), values).unwrap();
        let bad = CoverShape::from_parts(levels, maps);
        assert!(matches!(bad.validate(), Err(ShapeError::SimplicialIdentityViolation { .. })));
    }

    #[test]
    fn cech_c2_is_the_kernel_pair() {
        let u = FinMap::new(2, vec![1, 0, 1, 0]).unwrap();
        let s = CoverShape::cech(&u).unwrap();
        let span = crate::finset::pullback(&u, &u).unwrap();
        assert_eq!(&span.left, s.map(NerveMap::D0));
        assert_eq!(&span.right, s.map(NerveMap::D1));
        assert!(crate::finset::is_jointly_monic(&span.left, &span.right).unwrap());
    }

    #[test]
    fn full_simplex_matches_constant_cover() {
        for n in 0..4 {
            let a = CoverShape::complex(&SimplicialComplex::simplex(n));
            let b = CoverShape::cech(&FinMap::constant(n + 1, 1, 0).unwrap()).unwrap();
            assert_eq!(a.levels, b.levels);
            assert_eq!(a.maps, b.maps);
        }
    }
}
