//! Exhaustive backtracking over finite-domain variables, with a node budget,
//! plus the orbit bookkeeping shared by the classifiers.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

/// Default cap on search nodes for classification.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Raised when enumeration would visit more nodes than allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub budget: u64,
}

type Check<'a> = Box<dyn Fn(&[usize]) -> bool + Send + Sync + 'a>;

/// A constraint problem over variables `0..n`, assigned in index order.
///
/// Each constraint is checked as soon as its highest variable is assigned;
/// the closure sees the full assignment vector, of which only the first
/// `max(vars) + 1` entries are meaningful.
pub struct Problem<'a> {
    domains: Vec<Vec<usize>>,
    checks_at: Vec<Vec<Check<'a>>>,
    unconditional: Vec<Check<'a>>,
}

impl<'a> Problem<'a> {
    pub fn new(domains: Vec<Vec<usize>>) -> Self {
        let n = domains.len();
        Problem {
            domains,
            checks_at: (0..n).map(|_| Vec::new()).collect(),
            unconditional: Vec::new(),
        }
    }

    pub fn variables(&self) -> usize {
        self.domains.len()
    }

    /// Adds a constraint over `vars`. A constraint with no variables is
    /// checked once before the search starts.
    pub fn constrain(&mut self, vars: &[usize], check: impl Fn(&[usize]) -> bool + Send + Sync + 'a) {
        match vars.iter().max() {
            Some(&last) => self.checks_at[last].push(Box::new(check)),
            None => self.unconditional.push(Box::new(check)),
        }
    }

    fn accepts(&self, var: usize, assignment: &[usize]) -> bool {
        self.checks_at[var].iter().all(|c| c(assignment))
    }

    /// Every solution, in lexicographic order.
    pub fn solve_all(&self, budget: u64) -> Result<Vec<Vec<usize>>, BudgetExceeded> {
        let n = self.domains.len();
        if !self.unconditional.iter().all(|c| c(&vec![0; n])) {
            return Ok(Vec::new());
        }
        if n == 0 {
            return Ok(vec![Vec::new()]);
        }
        // Split the tree at a shallow depth and search the subtrees in parallel.
        let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
        let mut depth = 0;
        let nodes = AtomicU64::new(0);
        while depth < n && prefixes.len() < 64 {
            let mut next = Vec::new();
            for p in &prefixes {
                for &v in &self.domains[depth] {
                    if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
                        return Err(BudgetExceeded { budget });
                    }
                    let mut q = p.clone();
                    q.push(v);
                    let mut full = q.clone();
                    full.resize(n, 0);
                    if self.accepts(depth, &full) {
                        next.push(q);
                    }
                }
            }
            prefixes = next;
            depth += 1;
        }
        if depth == n {
            return Ok(prefixes);
        }
        let parts: Vec<Result<Vec<Vec<usize>>, BudgetExceeded>> = prefixes
            .par_iter()
            .map(|p| {
                let mut assignment = p.clone();
                assignment.resize(n, 0);
                let mut out = Vec::new();
                self.descend(depth, &mut assignment, &nodes, budget, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for part in parts {
            all.extend(part?);
        }
        Ok(all)
    }

    fn descend(
        &self,
        var: usize,
        assignment: &mut Vec<usize>,
        nodes: &AtomicU64,
        budget: u64,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), BudgetExceeded> {
        if var == assignment.len() {
            out.push(assignment.clone());
            return Ok(());
        }
        for &v in &self.domains[var] {
            if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
                return Err(BudgetExceeded { budget });
            }
            assignment[var] = v;
            if self.accepts(var, assignment) {
                self.descend(var + 1, assignment, nodes, budget, out)?;
            }
        }
        Ok(())
    }

    /// One solution found by depth-first search with shuffled value order.
    pub fn solve_random<R: Rng + ?Sized>(&self, rng: &mut R, budget: u64) -> Result<Option<Vec<usize>>, BudgetExceeded> {
        let n = self.domains.len();
        let mut assignment = vec![0; n];
        let mut nodes = 0u64;
        fn rec<R: Rng + ?Sized>(
            p: &Problem<'_>,
            var: usize,
            a: &mut Vec<usize>,
            rng: &mut R,
            nodes: &mut u64,
            budget: u64,
        ) -> Result<bool, BudgetExceeded> {
            if var == a.len() {
                return Ok(true);
            }
            let mut values = p.domains[var].clone();
            values.shuffle(rng);
            for v in values {
                *nodes += 1;
                if *nodes > budget {
                    return Err(BudgetExceeded { budget });
                }
                a[var] = v;
                if p.accepts(var, a) && rec(p, var + 1, a, rng, nodes, budget)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        if !self.unconditional.iter().all(|c| c(&assignment)) {
            return Ok(None);
        }
        if n == 0 {
            return Ok(Some(Vec::new()));
        }
        Ok(rec(self, 0, &mut assignment, rng, &mut nodes, budget)?.then_some(assignment))
    }
}

/// Disjoint-set forest with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Components as sorted member lists, ordered by least member.
    pub fn components(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }
}
