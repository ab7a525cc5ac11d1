//! Square assignment solvers: Hungarian, Murty's k-best ranking, a
//! level-pruned branch-and-bound and brute-force enumeration.
//!
//! Costs are minimised. Forbidden cells hold `f64::INFINITY`. All solvers
//! break ties toward the lowest column index so results are reproducible.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::permmap::{Codebook, Codeword};

/// Largest dimension [`brute_force_best`] will enumerate without a codebook.
pub const BRUTE_FORCE_MAX_M: usize = 8;

/// Square cost matrix, row-major. Rows are frequencies, columns time slots.
#[derive(Clone, Debug, PartialEq)]
pub struct CostMatrix {
    m: usize,
    cells: Vec<f64>,
}

impl CostMatrix {
    pub fn new(m: usize, cells: Vec<f64>) -> Result<Self> {
        if m == 0 || cells.len() != m * m {
            return Err(Error::Input(format!(
                "expected {} cells for M = {m}, found {}",
                m * m,
                cells.len()
            )));
        }
        if cells.iter().any(|c| c.is_nan() || *c == f64::NEG_INFINITY) {
            return Err(Error::Input("cost cells must be finite or +inf".into()));
        }
        Ok(Self { m, cells })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Input("cost matrix is not square".into()));
        }
        Self::new(m, rows.concat())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.cells[row * self.m + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.cells[row * self.m + col] = value;
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            m: self.m,
            cells: self.cells.iter().map(|c| c * alpha).collect(),
        }
    }

    /// Total cost of a row-to-column assignment.
    pub fn cost_of(&self, perm: &[usize]) -> f64 {
        perm.iter().enumerate().map(|(i, &j)| self.get(i, j)).sum()
    }

    /// Total cost of transmitting `word` (symbol `word[j]` in slot `j`).
    pub fn codeword_cost(&self, word: &[u8]) -> f64 {
        word.iter()
            .enumerate()
            .map(|(j, &s)| self.get(s as usize - 1, j))
            .sum()
    }
}

/// A perfect matching of rows to columns and its cost.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    /// `perm[row]` is the 0-based column matched to `row`.
    pub perm: Vec<usize>,
    pub cost: f64,
}

impl Assignment {
    pub fn new(perm: Vec<usize>, c: &CostMatrix) -> Self {
        let cost = c.cost_of(&perm);
        Self { perm, cost }
    }

    /// The permutation codeword this matching represents: slot `j` carries the
    /// (1-based) frequency matched to column `j`.
    pub fn codeword(&self) -> Codeword {
        let mut symbols = vec![0u8; self.perm.len()];
        for (row, &col) in self.perm.iter().enumerate() {
            symbols[col] = (row + 1) as u8;
        }
        Codeword::new(symbols)
    }

    pub fn from_codeword(word: &[u8], c: &CostMatrix) -> Self {
        let mut perm = vec![0; word.len()];
        for (col, &s) in word.iter().enumerate() {
            perm[s as usize - 1] = col;
        }
        Self::new(perm, c)
    }

    /// True when every row has a distinct column.
    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.perm.len()];
        self.perm
            .iter()
            .all(|&j| j < seen.len() && !std::mem::replace(&mut seen[j], true))
    }
}

/// Minimum-cost assignment.
pub fn hungarian(c: &CostMatrix) -> Result<Assignment> {
    let mut ops = 0;
    hungarian_counted(c, &mut ops)
}

/// [`hungarian`] that adds its inner-loop iterations to `ops`.
///
/// Shortest augmenting paths with row/column potentials, one row added per
/// phase; `O(M^3)`.
pub fn hungarian_counted(c: &CostMatrix, ops: &mut u64) -> Result<Assignment> {
    let n = c.m;
    let inf = f64::INFINITY;
    // 1-based arrays; index 0 is the virtual source column.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut minv = vec![inf; n + 1];
    let mut used = vec![false; n + 1];

    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0;
        minv.iter_mut().for_each(|x| *x = inf);
        used.iter_mut().for_each(|x| *x = false);
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                *ops += 1;
                if used[j] {
                    continue;
                }
                let cur = c.get(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if !delta.is_finite() {
                return Err(Error::Infeasible);
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut perm = vec![0; n];
    for j in 1..=n {
        perm[matched_row[j] - 1] = j - 1;
    }
    Ok(Assignment::new(perm, c))
}

struct Node {
    fixed: Vec<(usize, usize)>,
    forbidden: Vec<(usize, usize)>,
    solution: Assignment,
    seq: u64,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // Reversed so the max-heap pops the cheapest, oldest node first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .solution
            .cost
            .total_cmp(&self.solution.cost)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Lazily ranks assignments in non-decreasing cost order (Murty's method).
///
/// Each popped solution is partitioned into subproblems that keep a prefix of
/// its free row-column pairs and forbid the next one; the cheapest pending
/// subproblem supplies the next assignment. Partitioning is deferred until
/// the following call so taking only the first item costs a single solve.
pub struct MurtyRanker<'a> {
    cost: &'a CostMatrix,
    heap: BinaryHeap<Node>,
    pending: Option<Node>,
    started: bool,
    seq: u64,
    ops: u64,
}

impl<'a> MurtyRanker<'a> {
    pub fn new(cost: &'a CostMatrix) -> Self {
        Self {
            cost,
            heap: BinaryHeap::new(),
            pending: None,
            started: false,
            seq: 0,
            ops: 0,
        }
    }

    /// Elementary operations spent so far.
    pub fn ops(&self) -> u64 {
        self.ops
    }

    fn solve(&mut self, fixed: Vec<(usize, usize)>, forbidden: Vec<(usize, usize)>) {
        let m = self.cost.m;
        let mut row_fixed = vec![false; m];
        let mut col_fixed = vec![false; m];
        for &(i, j) in &fixed {
            row_fixed[i] = true;
            col_fixed[j] = true;
        }
        let rows: Vec<usize> = (0..m).filter(|&i| !row_fixed[i]).collect();
        let cols: Vec<usize> = (0..m).filter(|&j| !col_fixed[j]).collect();
        let r = rows.len();
        let mut perm = vec![usize::MAX; m];
        for &(i, j) in &fixed {
            perm[i] = j;
        }
        if r > 0 {
            let mut cells = Vec::with_capacity(r * r);
            for &i in &rows {
                for &j in &cols {
                    cells.push(self.cost.get(i, j));
                }
            }
            let mut sub = CostMatrix { m: r, cells };
            for &(i, j) in &forbidden {
                if let (Ok(a), Ok(b)) = (rows.binary_search(&i), cols.binary_search(&j)) {
                    sub.set(a, b, f64::INFINITY);
                }
            }
            self.ops += (r * r) as u64;
            match hungarian_counted(&sub, &mut self.ops) {
                Ok(a) => {
                    for (a_row, &a_col) in a.perm.iter().enumerate() {
                        perm[rows[a_row]] = cols[a_col];
                    }
                }
                Err(_) => return,
            }
        }
        let solution = Assignment::new(perm, self.cost);
        if !solution.cost.is_finite() {
            return;
        }
        self.seq += 1;
        self.heap.push(Node {
            fixed,
            forbidden,
            solution,
            seq: self.seq,
        });
    }

    fn partition(&mut self, node: Node) {
        let m = self.cost.m;
        let mut is_fixed = vec![false; m];
        for &(i, _) in &node.fixed {
            is_fixed[i] = true;
        }
        let free: Vec<usize> = (0..m).filter(|&i| !is_fixed[i]).collect();
        let mut fixed = node.fixed.clone();
        for &row in free.iter().take(free.len().saturating_sub(1)) {
            let pair = (row, node.solution.perm[row]);
            let mut forbidden = node.forbidden.clone();
            forbidden.push(pair);
            self.solve(fixed.clone(), forbidden);
            fixed.push(pair);
        }
    }
}

impl Iterator for MurtyRanker<'_> {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        if !self.started {
            self.started = true;
            self.solve(Vec::new(), Vec::new());
        }
        if let Some(node) = self.pending.take() {
            self.partition(node);
        }
        let node = self.heap.pop()?;
        let out = node.solution.clone();
        self.pending = Some(node);
        Some(out)
    }
}

/// The `k` cheapest assignments in non-decreasing cost order (fewer when
/// fewer than `k` feasible assignments exist).
pub fn murty_kbest(c: &CostMatrix, k: usize) -> Result<Vec<Assignment>> {
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    let ranked: Vec<_> = MurtyRanker::new(c).take(k).collect();
    if ranked.is_empty() {
        return Err(Error::Infeasible);
    }
    Ok(ranked)
}

/// Level-by-level tree search that keeps a single survivor per level.
///
/// Row `e` is scheduled at level `e + 1`. Each unused column `t` is scored by
/// the cost already committed, plus `c[e][t]`, plus the sum over the later
/// rows of their smallest cost among columns that are neither scheduled nor
/// `t`. The cheapest child survives (lowest column on ties) and the rest are
/// pruned; there is no backtracking, so the result is a valid assignment
/// whose cost is at least the optimum.
pub fn branch_and_bound(c: &CostMatrix) -> Result<Assignment> {
    let mut ops = 0;
    branch_and_bound_counted(c, &mut ops)
}

pub fn branch_and_bound_counted(c: &CostMatrix, ops: &mut u64) -> Result<Assignment> {
    if c.cells.iter().any(|x| !x.is_finite()) {
        return Err(Error::Input("branch and bound needs a fully finite cost matrix".into()));
    }
    let m = c.m;
    let mut used = vec![false; m];
    let mut perm = vec![0; m];
    let mut committed = 0.0;
    // Smallest and second-smallest cost per later row, with the column of the smallest.
    let mut best1 = vec![(f64::INFINITY, usize::MAX); m];
    let mut best2 = vec![f64::INFINITY; m];

    for level in 0..m {
        for i in level + 1..m {
            let (mut b1, mut b1_col, mut b2) = (f64::INFINITY, usize::MAX, f64::INFINITY);
            for j in (0..m).filter(|&j| !used[j]) {
                *ops += 1;
                let x = c.get(i, j);
                if x < b1 {
                    b2 = b1;
                    b1 = x;
                    b1_col = j;
                } else if x < b2 {
                    b2 = x;
                }
            }
            best1[i] = (b1, b1_col);
            best2[i] = b2;
        }
        let mut survivor = (f64::INFINITY, usize::MAX);
        for t in (0..m).filter(|&j| !used[j]) {
            let mut bound = committed + c.get(level, t);
            for i in level + 1..m {
                *ops += 1;
                bound += if best1[i].1 == t { best2[i] } else { best1[i].0 };
            }
            if bound < survivor.0 {
                survivor = (bound, t);
            }
        }
        let t = survivor.1;
        used[t] = true;
        perm[level] = t;
        committed += c.get(level, t);
    }
    Ok(Assignment::new(perm, c))
}

/// Exhaustive minimum.
///
/// Without a codebook every permutation is tried (`M <= 8`). With a codebook
/// only its codewords are candidates, which is the optimal in-codebook
/// decision. Ties go to the first candidate in enumeration order.
pub fn brute_force_best(c: &CostMatrix, book: Option<&Codebook>) -> Result<Assignment> {
    let mut ops = 0;
    brute_force_counted(c, book, &mut ops)
}

pub fn brute_force_counted(
    c: &CostMatrix,
    book: Option<&Codebook>,
    ops: &mut u64,
) -> Result<Assignment> {
    let m = c.m;
    match book {
        Some(book) => {
            if book.m() != m {
                return Err(Error::Input(format!(
                    "codebook length {} does not match matrix dimension {m}",
                    book.m()
                )));
            }
            let mut best: Option<(f64, &Codeword)> = None;
            for (_, word) in book.rows() {
                *ops += m as u64;
                let cost = c.codeword_cost(word.symbols());
                if best.map_or(true, |(b, _)| cost < b) {
                    best = Some((cost, word));
                }
            }
            let (_, word) = best.expect("codebooks are never empty");
            Ok(Assignment::from_codeword(word.symbols(), c))
        }
        None => {
            if m > BRUTE_FORCE_MAX_M {
                return Err(Error::Refused(format!(
                    "{m}! permutations is too many to enumerate (limit M = {BRUTE_FORCE_MAX_M})"
                )));
            }
            let mut best_perm = Vec::new();
            let mut best_cost = f64::INFINITY;
            for_each_permutation(m, |perm| {
                *ops += m as u64;
                let cost = c.cost_of(perm);
                if cost < best_cost {
                    best_cost = cost;
                    best_perm = perm.to_vec();
                }
            });
            if best_perm.is_empty() {
                return Err(Error::Infeasible);
            }
            Ok(Assignment::new(best_perm, c))
        }
    }
}

/// Visits all permutations of `0..m` in lexicographic order.
pub fn for_each_permutation(m: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        visit(&perm);
        // Next lexicographic permutation.
        let Some(i) = (1..m).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..m).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize) -> CostMatrix {
        CostMatrix::new(m, (0..m * m).map(|_| -rng.gen::<f64>()).collect()).unwrap()
    }

    /// Every permutation cost, sorted. Independent of the solvers.
    fn all_costs(c: &CostMatrix) -> Vec<f64> {
        let mut costs = Vec::new();
        for_each_permutation(c.m(), |p| costs.push(c.cost_of(p)));
        costs.sort_by(f64::total_cmp);
        costs
    }

    fn diagonal3() -> CostMatrix {
        CostMatrix::from_rows(&[
            vec![-1.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, -1.0],
        ])
        .unwrap()
    }

    #[test]
    fn permutation_enumeration() {
        let mut count = 0;
        let mut last = Vec::new();
        for_each_permutation(4, |p| {
            count += 1;
            assert!(p > &last[..]);
            last = p.to_vec();
        });
        assert_eq!(count, 24);
        let mut one = 0;
        for_each_permutation(1, |_| one += 1);
        assert_eq!(one, 1);
    }

    #[test]
    fn hungarian_diagonal() {
        let a = hungarian(&diagonal3()).unwrap();
        assert_eq!(a.perm, vec![0, 1, 2]);
        assert_eq!(a.cost, -3.0);
        assert_eq!(a.codeword().symbols(), &[1, 2, 3]);
    }

    #[test]
    fn hungarian_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in 1..=6 {
            for _ in 0..200 {
                let c = random_matrix(&mut rng, m);
                let a = hungarian(&c).unwrap();
                assert!(a.is_valid());
                assert!((a.cost - all_costs(&c)[0]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn hungarian_detects_infeasibility() {
        let inf = f64::INFINITY;
        let c = CostMatrix::from_rows(&[vec![inf, inf], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(hungarian(&c), Err(Error::Infeasible)));
        let c = CostMatrix::from_rows(&[vec![0.0, inf], vec![0.0, inf]]).unwrap();
        assert!(matches!(hungarian(&c), Err(Error::Infeasible)));
        let c = CostMatrix::from_rows(&[vec![inf, 2.0], vec![1.0, inf]]).unwrap();
        assert_eq!(hungarian(&c).unwrap().perm, vec![1, 0]);
    }

    #[test]
    fn hungarian_ties_go_to_lowest_columns() {
        let c = CostMatrix::new(3, vec![0.0; 9]).unwrap();
        assert_eq!(hungarian(&c).unwrap().perm, vec![0, 1, 2]);
    }

    #[test]
    fn rejects_nan() {
        assert!(CostMatrix::new(2, vec![0.0, f64::NAN, 0.0, 0.0]).is_err());
        assert!(CostMatrix::new(2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn murty_two_by_two() {
        let c = CostMatrix::from_rows(&[vec![-2.0, -1.0], vec![-1.0, -2.0]]).unwrap();
        let ranked = murty_kbest(&c, 2).unwrap();
        let costs: Vec<f64> = ranked.iter().map(|a| a.cost).collect();
        assert_eq!(costs, vec![-4.0, -2.0]);
        // Asking for more than 2! returns both.
        assert_eq!(murty_kbest(&c, 10).unwrap().len(), 2);
    }

    #[test]
    fn murty_first_is_hungarian() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let c = random_matrix(&mut rng, 5);
            let first = &murty_kbest(&c, 1).unwrap()[0];
            assert_eq!(first, &hungarian(&c).unwrap());
        }
    }

    #[test]
    fn murty_matches_sorted_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 2..=5 {
            for _ in 0..100 {
                let c = random_matrix(&mut rng, m);
                let k = 10.min((1..=m).product());
                let ranked = murty_kbest(&c, k).unwrap();
                let brute = all_costs(&c);
                assert_eq!(ranked.len(), k);
                for (g, a) in ranked.iter().enumerate() {
                    assert!(a.is_valid());
                    assert!((a.cost - brute[g]).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn murty_enumerates_everything_once() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let c = random_matrix(&mut rng, 4);
        let mut all: Vec<Vec<usize>> = MurtyRanker::new(&c).map(|a| a.perm).collect();
        assert_eq!(all.len(), 24);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 24);
    }

    #[test]
    fn murty_handles_ties() {
        // 0/-1 costs as produced by the threshold detector.
        let c = CostMatrix::from_rows(&[
            vec![-1.0, 0.0, -1.0],
            vec![0.0, -1.0, 0.0],
            vec![-1.0, 0.0, 0.0],
        ])
        .unwrap();
        let ranked: Vec<_> = MurtyRanker::new(&c).collect();
        assert_eq!(ranked.len(), 6);
        let costs: Vec<f64> = ranked.iter().map(|a| a.cost).collect();
        assert_eq!(costs, all_costs(&c));
    }

    #[test]
    fn bb_diagonal() {
        let a = branch_and_bound(&diagonal3()).unwrap();
        assert_eq!(a.perm, vec![0, 1, 2]);
        assert_eq!(a.cost, -3.0);
    }

    #[test]
    fn bb_is_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in 1..=8 {
            for _ in 0..100 {
                let c = random_matrix(&mut rng, m);
                let bb = branch_and_bound(&c).unwrap();
                assert!(bb.is_valid());
                assert!(bb.cost >= hungarian(&c).unwrap().cost - 1e-12);
            }
        }
    }

    #[test]
    fn bb_rejects_forbidden_cells() {
        let c = CostMatrix::from_rows(&[vec![f64::INFINITY, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(branch_and_bound(&c).is_err());
    }

    /// Searches small integer matrices for one where single-survivor pruning
    /// misses the optimum, and checks the result is still a valid assignment.
    #[test]
    fn bb_can_be_suboptimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut found = None;
        for _ in 0..10_000 {
            let c = CostMatrix::new(3, (0..9).map(|_| -(rng.gen_range(0..4) as f64)).collect()).unwrap();
            let bb = branch_and_bound(&c).unwrap();
            if bb.cost > all_costs(&c)[0] {
                found = Some((c, bb));
                break;
            }
        }
        let (c, bb) = found.expect("an adversarial 3x3 instance exists");
        assert!(bb.is_valid());
        assert!(bb.cost > hungarian(&c).unwrap().cost);
    }

    #[test]
    fn brute_force_without_book() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(2..=6);
            let c = random_matrix(&mut rng, m);
            let a = brute_force_best(&c, None).unwrap();
            assert!((a.cost - hungarian(&c).unwrap().cost).abs() < 1e-9);
        }
        let big = CostMatrix::new(9, vec![0.0; 81]).unwrap();
        assert!(matches!(brute_force_best(&big, None), Err(Error::Refused(_))));
    }

    #[test]
    fn brute_force_with_book() {
        let book = Codebook::n2_m3();
        let s = crate::modem::modulate(&[2, 3, 1], 1.0).unwrap();
        let c = CostMatrix::new(3, s.cells().iter().map(|x| -x).collect()).unwrap();
        let a = brute_force_best(&c, Some(&book)).unwrap();
        assert_eq!(a.codeword().symbols(), &[2, 3, 1]);
        assert_eq!(a.cost, -3.0);

        // Unrestricted optimum 321 is not a codeword.
        let s = crate::modem::modulate(&[3, 2, 1], 1.0).unwrap();
        let c = CostMatrix::new(3, s.cells().iter().map(|x| -x).collect()).unwrap();
        assert!(!book.contains(&[3, 2, 1]));
        let in_book = brute_force_best(&c, Some(&book)).unwrap();
        let free = brute_force_best(&c, None).unwrap();
        assert!(book.contains(in_book.codeword().symbols()));
        assert!(in_book.cost > free.cost);
        // 123 and 231 each share one cell with 321; 123 comes first.
        assert_eq!(in_book.codeword().symbols(), &[1, 2, 3]);
    }

    #[test]
    fn codeword_assignment_round_trip() {
        let c = CostMatrix::new(4, (0..16).map(|x| x as f64).collect()).unwrap();
        let a = Assignment::from_codeword(&[3, 2, 1, 4], &c);
        assert_eq!(a.codeword().symbols(), &[3, 2, 1, 4]);
        assert_eq!(a.cost, c.codeword_cost(&[3, 2, 1, 4]));
    }

    #[test]
    fn scaling_keeps_argmin() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let c = random_matrix(&mut rng, 5);
            let alpha = rng.gen_range(0.01..100.0);
            let a = hungarian(&c).unwrap();
            let b = hungarian(&c.scaled(alpha)).unwrap();
            assert_eq!(a.perm, b.perm);
            assert!((b.cost - alpha * a.cost).abs() < 1e-9 * alpha.max(1.0));
        }
    }
}
