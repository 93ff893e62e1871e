//! Dense linear algebra over GF(p), and coordinates on elementary abelian
//! groups.

use crate::group::FiniteGroup;

/// A dense matrix over GF(p), stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    p: u32,
    cols: usize,
    rows: Vec<Vec<u32>>,
}

impl Matrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            cols,
            rows: vec![vec![0; cols]; rows],
        }
    }

    pub fn from_rows(p: u32, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                r.into_iter().map(|x| x % p).collect()
            })
            .collect();
        Matrix { p, cols, rows }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    /// Adds `value` (an integer, possibly negative) to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, value: i64) {
        let p = self.p as i64;
        let cur = self.rows[i][j] as i64;
        self.rows[i][j] = (cur + value).rem_euclid(p) as u32;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.p, self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                t.rows[j][i] = x;
            }
        }
        t
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(k) = (r..self.rows.len()).find(|&k| self.rows[k][c] != 0) else {
                continue;
            };
            self.rows.swap(r, k);
            let inv = inverse_mod(self.rows[r][c], p);
            for x in self.rows[r].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot_row = self.rows[r].clone();
            for (k, row) in self.rows.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m.rows[r][f]) % p;
                }
                v
            })
            .collect()
    }

    /// Reduces `v` against the rows of a matrix already in RREF with the
    /// given pivots.
    pub fn reduce(&self, pivots: &[usize], v: &mut [u32]) {
        let p = self.p;
        for (r, &c) in pivots.iter().enumerate() {
            let f = v[c];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(&self.rows[r]) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % self.p as u64) as u32)
            .collect()
    }
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Coordinates on an elementary abelian p-group.
#[derive(Debug, Clone)]
pub struct ElementaryAbelian {
    pub p: u32,
    pub basis: Vec<usize>,
    coords: Vec<Vec<u32>>,
    elements: Vec<usize>,
}

impl ElementaryAbelian {
    /// Recognises `g` as `(Z/p)^r`, with `r >= 1`; `None` otherwise.
    pub fn recognise(g: &FiniteGroup) -> Option<Self> {
        if g.order() < 2 || !g.is_abelian() {
            return None;
        }
        let p = g.element_order((0..g.order()).find(|&a| a != g.identity())?);
        if !is_prime(p) || g.elements().any(|a| a != g.identity() && g.element_order(a) != p) {
            return None;
        }
        let mut basis: Vec<usize> = Vec::new();
        let mut span = vec![g.identity()];
        for a in g.elements() {
            if !span.contains(&a) {
                basis.push(a);
                span = g.generated_by(&basis);
            }
        }
        let r = basis.len();
        let size = p.pow(r as u32);
        let mut coords = vec![Vec::new(); g.order()];
        let mut elements = vec![0; size];
        for code in 0..size {
            let mut c = Vec::with_capacity(r);
            let mut rest = code;
            let mut x = g.identity();
            for &b in &basis {
                let k = rest % p;
                rest /= p;
                c.push(k as u32);
                for _ in 0..k {
                    x = g.mul(x, b);
                }
            }
            coords[x] = c;
            elements[code] = x;
        }
        Some(ElementaryAbelian {
            p: p as u32,
            basis,
            coords,
            elements,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, x: usize) -> &[u32] {
        &self.coords[x]
    }

    pub fn element(&self, coords: &[u32]) -> usize {
        let p = self.p as usize;
        let code = coords.iter().rev().fold(0usize, |acc, &c| acc * p + c as usize);
        self.elements[code]
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::groups;

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_rows(3, 3, vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        // second row is 2 * first mod 3
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(m.apply(&k[0]), vec![0, 0, 0]);
    }

    #[test]
    fn rref_and_reduce() {
        let mut m = Matrix::from_rows(5, 3, vec![vec![2, 4, 1], vec![0, 0, 3]]);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 2]);
        let mut v = vec![1, 2, 4];
        m.reduce(&pivots, &mut v);
        assert_eq!(v, vec![0, 0, 0]);
    }

    #[test]
    fn recognises_klein_four() {
        let v4 = groups::direct_product(&groups::cyclic(2), &groups::cyclic(2));
        let e = ElementaryAbelian::recognise(&v4).unwrap();
        assert_eq!((e.p, e.rank()), (2, 2));
        for x in v4.elements() {
            assert_eq!(e.element(e.coords(x)), x);
        }
        for (a, b) in v4.elements().flat_map(|a| v4.elements().map(move |b| (a, b))) {
            let sum: Vec<u32> = e.coords(a).iter().zip(e.coords(b)).map(|(x, y)| (x + y) % 2).collect();
            assert_eq!(e.element(&sum), v4.mul(a, b));
        }
        assert!(ElementaryAbelian::recognise(&groups::cyclic(4)).is_none());
        assert!(ElementaryAbelian::recognise(&groups::cyclic(6)).is_none());
        assert!(ElementaryAbelian::recognise(&groups::symmetric(3)).is_none());
        assert!(ElementaryAbelian::recognise(&groups::trivial()).is_none());
        assert_eq!(ElementaryAbelian::recognise(&groups::cyclic(5)).unwrap().p, 5);
    }
}
