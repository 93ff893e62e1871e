//! Independent reference computations.
//!
//! Nothing here shares code with the classifiers: cohomology is computed from
//! unnormalised ordered cochains with a separate rank routine, and orbit
//! counts use Burnside's lemma rather than explicit orbits.

use std::collections::HashMap;

use crate::group::FiniteGroup;
use crate::shape::{CoverShape, SimplicialComplex};

/// Ordered tuples of length `len` whose underlying set is a face.
fn ordered_tuples(k: &SimplicialComplex, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(k: &SimplicialComplex, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..k.vertices() {
            cur.push(v);
            let mut set = cur.clone();
            set.sort_unstable();
            set.dedup();
            if k.contains(&set) {
                rec(k, len, cur, out);
            }
            cur.pop();
        }
    }
    rec(k, len, &mut cur, &mut out);
    out
}

fn rank_mod_p(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..m.len()).find(|&r| m[r][c].rem_euclid(p) != 0) else {
            continue;
        };
        m.swap(rank, r);
        let pivot = m[rank][c].rem_euclid(p);
        let inv = (1..p).find(|i| (pivot * i) % p == 1).expect("p is prime");
        for r in 0..m.len() {
            if r != rank {
                let f = (m[r][c] * inv).rem_euclid(p);
                if f != 0 {
                    for j in 0..cols {
                        m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(p);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Matrix of the coboundary from cochains on `len`-tuples to
/// `len + 1`-tuples, with alternating face signs.
fn coboundary(k: &SimplicialComplex, len: usize) -> Vec<Vec<i64>> {
    let domain = ordered_tuples(k, len);
    let index: HashMap<Vec<usize>, usize> = domain.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    ordered_tuples(k, len + 1)
        .iter()
        .map(|t| {
            let mut row = vec![0i64; domain.len()];
            for i in 0..t.len() {
                let mut face = t.clone();
                face.remove(i);
                row[index[&face]] += if i % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

/// Dimension of the second cohomology of `k` with coefficients in `Z/p`.
pub fn h2_dimension(k: &SimplicialComplex, p: u32) -> usize {
    let p = p as i64;
    let c2 = ordered_tuples(k, 3).len();
    c2 - rank_mod_p(coboundary(k, 3), p) - rank_mod_p(coboundary(k, 2), p)
}

/// Dimension of the first cohomology of `k` with coefficients in `Z/p`.
pub fn h1_dimension(k: &SimplicialComplex, p: u32) -> usize {
    let p = p as i64;
    let c1 = ordered_tuples(k, 2).len();
    c1 - rank_mod_p(coboundary(k, 2), p) - rank_mod_p(coboundary(k, 1), p)
}

/// The complex whose faces are the subsets of the cover's fibres.
pub fn complex_of_shape(shape: &CoverShape) -> SimplicialComplex {
    if let Some(k) = shape.simplicial_complex() {
        return k.clone();
    }
    let n = shape.points();
    let u = shape.cover().expect("a shape is built from a complex or a cover");
    let mut faces = Vec::new();
    for b in 0..u.target_size() {
        let fibre: Vec<usize> = (0..n).filter(|&x| u.apply(x) == b).collect();
        for mask in 1u64..(1 << fibre.len()) {
            faces.push(
                fibre
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect(),
            );
        }
    }
    SimplicialComplex::new(n, &faces).expect("subsets of fibres are downward closed")
}

/// Number of conjugacy classes, by Burnside's lemma.
pub fn conjugacy_class_count(g: &FiniteGroup) -> usize {
    commuting_tuple_orbits(g, 1)
}

/// Orbits of `G` acting on `G^r` by simultaneous conjugation, by Burnside.
pub fn commuting_tuple_orbits(g: &FiniteGroup, r: u32) -> usize {
    let n = g.order();
    let fixed: usize = (0..n)
        .map(|a| {
            let centraliser = (0..n).filter(|&b| g.mul(a, b) == g.mul(b, a)).count();
            centraliser.pow(r)
        })
        .sum();
    assert_eq!(fixed % n, 0);
    fixed / n
}

/// For a complex with no 2-faces, the number of gauge classes of flat
/// `G`-transitions, as a product over connected components of the number of
/// conjugation orbits on `G^b`, with `b` the component's cycle rank.
pub fn graph_transition_classes(k: &SimplicialComplex, g: &FiniteGroup) -> Option<usize> {
    if k.faces().any(|f| f.len() > 2) {
        return None;
    }
    let n = k.vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    let edges: Vec<&Vec<usize>> = k.faces().filter(|f| f.len() == 2).collect();
    for e in &edges {
        let (a, b) = (root(&mut parent, e[0]), root(&mut parent, e[1]));
        parent[a] = b;
    }
    let mut vertices_in = HashMap::new();
    let mut edges_in = HashMap::new();
    for v in 0..n {
        *vertices_in.entry(root(&mut parent, v)).or_insert(0usize) += 1;
    }
    for e in &edges {
        *edges_in.entry(root(&mut parent, e[0])).or_insert(0usize) += 1;
    }
    Some(
        vertices_in
            .iter()
            .map(|(c, &v)| {
                let e = edges_in.get(c).copied().unwrap_or(0);
                commuting_tuple_orbits(g, (e + 1 - v) as u32)
            })
            .product(),
    )
}
