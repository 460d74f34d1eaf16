//! Integer homology via Smith normal form.
//!
//! The heavy lifting happens in two stages. A sparse elimination pass works
//! on machine integers and removes pivots of value `±1` (which is almost all
//! of a simplicial boundary matrix), deleting the pivot row and column each
//! time. Whatever remains — typically a small dense core, or nothing — goes
//! through an exact big-integer Smith normal form. Invariant factors of the
//! original matrix are the unit pivots followed by the factors of the core.
//!
//! On top of that sit chain-complex helpers: boundary matrices for the
//! two-dimensional [`Complex`] type and for arbitrary-dimension facet lists,
//! and [`chain_homology`], which turns ranks and invariant factors into
//! Betti numbers and torsion coefficients.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::Complex;
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Sparse matrices
// ---------------------------------------------------------------------------

/// A sparse integer matrix in triplet form. Duplicate positions are summed
/// on construction; explicit zeros are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    triplets: Vec<(u32, u32, i64)>,
}

impl SparseMatrix {
    pub fn from_triplets(rows: usize, cols: usize, entries: &[(u32, u32, i64)]) -> Result<Self> {
        let mut merged: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for &(r, c, v) in entries {
            if r as usize >= rows || c as usize >= cols {
                return Err(Error::input(format!(
                    "entry at ({r}, {c}) is outside a {rows} x {cols} matrix"
                )));
            }
            *merged.entry((r, c)).or_insert(0) = merged
                .get(&(r, c))
                .copied()
                .unwrap_or(0)
                .checked_add(v)
                .ok_or_else(|| Error::input("matrix entry overflows i64"))?;
        }
        let triplets =
            merged.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect();
        Ok(SparseMatrix { rows, cols, triplets })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry_count(&self) -> usize {
        self.triplets.len()
    }

    /// Entries as `(row, col, value)`, sorted by position.
    pub fn triplets(&self) -> &[(u32, u32, i64)] {
        &self.triplets
    }
}

// ---------------------------------------------------------------------------
// Dense Smith normal form
// ---------------------------------------------------------------------------

/// Result of a Smith normal form computation: `left * A * right = diag`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal of the normal form, length `min(rows, cols)`: a divisibility
    /// chain of nonnegative integers with zeros at the end.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    /// Unimodular row transform, present when requested.
    pub left: Option<Vec<Vec<BigInt>>>,
    /// Unimodular column transform, present when requested.
    pub right: Option<Vec<Vec<BigInt>>>,
}

/// Computes the Smith normal form of a dense integer matrix. With
/// `with_transforms`, also returns unimodular `U`, `V` with `U A V` equal to
/// the diagonal form.
pub fn smith_normal_form(matrix: &[Vec<BigInt>], with_transforms: bool) -> Result<Smith> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::input("ragged matrix"));
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut left = with_transforms.then(|| identity_matrix(rows));
    let mut right = with_transforms.then(|| identity_matrix(cols));

    diagonalize(&mut a, &mut left, &mut right, 0);
    normalize_signs(&mut a, &mut left);
    repair_divisibility(&mut a, &mut left, &mut right);

    let n = rows.min(cols);
    let diagonal: Vec<BigInt> = (0..n).map(|i| a[i][i].clone()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    Ok(Smith { diagonal, rank, left, right })
}

fn identity_matrix(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

type Transform = Option<Vec<Vec<BigInt>>>;

/// Brings `a[start.., start..]` to diagonal form by repeated reduction at
/// the smallest-magnitude pivot. Truncating division shrinks the remainders,
/// so each pivot position stabilizes after finitely many rounds.
fn diagonalize(a: &mut [Vec<BigInt>], left: &mut Transform, right: &mut Transform, start: usize) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    for t in start..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the working submatrix becomes the
            // pivot candidate.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && pivot.is_none_or(|(pi, pj)| {
                            a[i][j].magnitude() < a[pi][pj].magnitude()
                        })
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { return };
            swap_rows(a, left, t, pi);
            swap_cols(a, right, t, pj);

            let mut clean = true;
            for k in t + 1..rows {
                if !a[k][t].is_zero() {
                    let q = &a[k][t] / &a[t][t];
                    row_subtract(a, left, k, t, &q);
                    clean &= a[k][t].is_zero();
                }
            }
            for k in t + 1..cols {
                if !a[t][k].is_zero() {
                    let q = &a[t][k] / &a[t][t];
                    col_subtract(a, right, k, t, &q);
                    clean &= a[t][k].is_zero();
                }
            }
            if clean {
                break;
            }
        }
    }
}

fn normalize_signs(a: &mut [Vec<BigInt>], left: &mut Transform) {
    let cols = a.first().map_or(0, |r| r.len());
    for t in 0..a.len().min(cols) {
        if a[t][t].is_negative() {
            for v in a[t].iter_mut() {
                *v = -std::mem::take(v);
            }
            if let Some(u) = left {
                for v in u[t].iter_mut() {
                    *v = -std::mem::take(v);
                }
            }
        }
    }
}

/// Enforces the divisibility chain `d1 | d2 | ...`. A violating adjacent
/// pair `(a, b)` is replaced by `(gcd, lcm)` through explicit unimodular
/// operations confined to those two rows and columns: with
/// `g = x a + y b`, add column `i+1` to column `i`, apply the row transform
/// `[[x, y], [-b/g, a/g]]` (determinant one), and clear the leftover entry
/// by one column subtraction. Each fix strictly shrinks an earlier diagonal
/// entry, so the rescan loop terminates.
fn repair_divisibility(a: &mut [Vec<BigInt>], left: &mut Transform, right: &mut Transform) {
    let cols = a.first().map_or(0, |r| r.len());
    let n = a.len().min(cols);
    loop {
        let mut fixed_any = false;
        for i in 0..n.saturating_sub(1) {
            let (d1, d2) = (a[i][i].clone(), a[i + 1][i + 1].clone());
            if d1.is_zero() || d2.is_zero() || (&d2 % &d1).is_zero() {
                continue;
            }
            col_add(a, right, i, i + 1);
            let eg = num_integer::Integer::extended_gcd(&d1, &d2);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let neg = -(&d2 / &g);
            let pos = &d1 / &g;
            row_combine(a, left, i, i + 1, &x, &y, &neg, &pos);
            let q = &a[i][i + 1] / &g;
            col_subtract(a, right, i + 1, i, &q);
            fixed_any = true;
        }
        if !fixed_any {
            break;
        }
    }
    normalize_signs(a, left);
}

/// `(row i, row j) <- (p * row i + q * row j, r * row i + s * row j)`.
fn row_combine(
    a: &mut [Vec<BigInt>],
    left: &mut Transform,
    i: usize,
    j: usize,
    p: &BigInt,
    q: &BigInt,
    r: &BigInt,
    s: &BigInt,
) {
    let combine = |top: &[BigInt], bottom: &[BigInt]| -> (Vec<BigInt>, Vec<BigInt>) {
        let new_top: Vec<BigInt> =
            top.iter().zip(bottom).map(|(t, b)| p * t + q * b).collect();
        let new_bottom: Vec<BigInt> =
            top.iter().zip(bottom).map(|(t, b)| r * t + s * b).collect();
        (new_top, new_bottom)
    };
    let (ti, tj) = combine(&a[i], &a[j]);
    a[i] = ti;
    a[j] = tj;
    if let Some(u) = left {
        let (ti, tj) = combine(&u[i], &u[j]);
        u[i] = ti;
        u[j] = tj;
    }
}

fn swap_rows(a: &mut [Vec<BigInt>], left: &mut Transform, i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
        if let Some(u) = left {
            u.swap(i, j);
        }
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], right: &mut Transform, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = right {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }
}

/// `row k -= q * row t`.
fn row_subtract(a: &mut [Vec<BigInt>], left: &mut Transform, k: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let cols = a[t].len();
    for j in 0..cols {
        let delta = q * &a[t][j];
        a[k][j] -= delta;
    }
    if let Some(u) = left {
        let w = u[t].clone();
        for (x, y) in u[k].iter_mut().zip(w.iter()) {
            *x -= q * y;
        }
    }
}

/// `col k -= q * col t`.
fn col_subtract(a: &mut [Vec<BigInt>], right: &mut Transform, k: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let delta = q * &row[t];
        row[k] -= delta;
    }
    if let Some(v) = right {
        for row in v.iter_mut() {
            let delta = q * &row[t];
            row[k] -= delta;
        }
    }
}

/// `col i += col j`.
fn col_add(a: &mut [Vec<BigInt>], right: &mut Transform, i: usize, j: usize) {
    for row in a.iter_mut() {
        let delta = row[j].clone();
        row[i] += delta;
    }
    if let Some(v) = right {
        for row in v.iter_mut() {
            let delta = row[j].clone();
            row[i] += delta;
        }
    }
}

// ---------------------------------------------------------------------------
// Sparse elimination with dense fallback
// ---------------------------------------------------------------------------

/// Rank and nonzero invariant factors of a sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithInvariants {
    pub rank: usize,
    /// The divisibility chain `d1 | d2 | ... | d_rank`; torsion computations
    /// care about the entries exceeding one.
    pub factors: Vec<BigInt>,
}

impl SmithInvariants {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|f| **f > BigInt::one()).cloned().collect()
    }
}

/// A residual small enough to hand to the dense big-integer routine.
const DENSE_CORE_CELLS: usize = 40_000;

/// Computes rank and invariant factors via sparse `±1` elimination with a
/// dense big-integer core.
pub fn smith_invariants(matrix: &SparseMatrix) -> Result<SmithInvariants> {
    smith_invariants_bounded(matrix, None)
}

/// [`smith_invariants`] with an optional proven upper bound on the rank.
///
/// Elimination runs in rounds: each round removes every affordable unit
/// pivot, then the surviving rows are re-posed transposed, which flips the
/// fill geometry and can expose fresh unit pivots. A small leftover core
/// goes through the dense big-integer routine. A large leftover core first
/// gets the certified shortcut: when a rank bound is supplied (for a
/// boundary map, the kernel dimension of its neighbor) and one residual
/// minor of that size has unit determinant-gcd, the whole matrix provably
/// has all-unit invariant factors and the dense phase is skipped.
pub fn smith_invariants_bounded(
    matrix: &SparseMatrix,
    rank_bound: Option<usize>,
) -> Result<SmithInvariants> {
    let debug = std::env::var_os("TDLC_ELIM_DEBUG").is_some();
    let mut unit_pivots = 0usize;
    let mut round = 0usize;
    let mut current: Option<SparseMatrix> = None;
    let core = loop {
        let mut state = SparseElimination::new(current.as_ref().unwrap_or(matrix));
        let units = state.run();
        unit_pivots += units;
        round += 1;
        let (live_rows, live_cols, live_entries) = state.live_size();
        if debug {
            eprintln!(
                "[smith round {round}] units={units} residual {live_rows}x{live_cols} entries={live_entries}"
            );
        }
        if live_rows == 0 {
            break Vec::new();
        }
        if units == 0 || live_rows * live_cols <= DENSE_CORE_CELLS {
            if live_rows * live_cols > DENSE_CORE_CELLS {
                if let Some(deficit) =
                    rank_bound.and_then(|bound| bound.checked_sub(unit_pivots))
                {
                    if deficit > 0 && state.core_is_certified_unimodular(deficit, debug) {
                        let bound = unit_pivots + deficit;
                        return Ok(SmithInvariants {
                            rank: bound,
                            factors: vec![BigInt::one(); bound],
                        });
                    }
                }
            }
            break state.residual();
        }
        current = Some(state.residual_transpose()?);
    };
    let mut factors = vec![BigInt::one(); unit_pivots];
    let mut rank = unit_pivots;
    if !core.is_empty() {
        let smith = smith_normal_form(&core, false)?;
        rank += smith.rank;
        factors.extend(smith.diagonal.into_iter().take(smith.rank));
    }
    Ok(SmithInvariants { rank, factors })
}

/// Rank of a sparse integer matrix.
pub fn sparse_rank(matrix: &SparseMatrix) -> Result<usize> {
    Ok(smith_invariants(matrix)?.rank)
}

/// Largest magnitude the sparse phase lets an entry reach. Capping growth
/// here keeps the leftover core within comfortable 128-bit range for the
/// echelon compression that follows.
const SPARSE_VALUE_LIMIT: i64 = 1 << 20;

/// Working state of the sparse phase: sorted sparse rows, a column index
/// with exact live counts, and a lazy priority queue of unit pivots.
struct SparseElimination {
    /// Sorted `(column, value)` pairs per row; dead rows are empty.
    rows: Vec<Vec<(u32, i64)>>,
    row_alive: Vec<bool>,
    /// Rows whose elimination was abandoned because it would push entries
    /// past the value cap; they stay live for the core but are no longer
    /// offered as pivots.
    retired: Vec<bool>,
    /// Per column, a superset of the rows meeting it. Entries go stale when
    /// a row drops the column and are filtered out on use.
    col_rows: Vec<Vec<u32>>,
    /// Exact number of live rows meeting each column.
    col_len: Vec<u32>,
    /// Unit pivot candidates `(markowitz cost, row, column)`. Recorded
    /// costs may be stale; every pop is re-validated against the current
    /// state, so the greedy order is deterministic regardless.
    queue: BinaryHeap<Reverse<(u64, u32, u32)>>,
}

impl SparseElimination {
    fn new(matrix: &SparseMatrix) -> Self {
        let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); matrix.rows()];
        for &(r, c, v) in matrix.triplets() {
            rows[r as usize].push((c, v));
        }
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); matrix.cols()];
        let mut col_len = vec![0u32; matrix.cols()];
        for (r, row) in rows.iter_mut().enumerate() {
            row.sort_unstable_by_key(|&(c, _)| c);
            for &(c, _) in row.iter() {
                col_rows[c as usize].push(r as u32);
                col_len[c as usize] += 1;
            }
        }
        let mut state = SparseElimination {
            row_alive: vec![true; rows.len()],
            retired: vec![false; rows.len()],
            rows,
            col_rows,
            col_len,
            queue: BinaryHeap::new(),
        };
        for r in 0..state.rows.len() as u32 {
            state.push_best(r);
        }
        state
    }

    /// The cheapest unit entry of a row under the Markowitz cost
    /// `(row_fill - 1) * (col_fill - 1)`, ties broken by column.
    fn best_unit(&self, r: u32) -> Option<(u64, u32)> {
        let row = &self.rows[r as usize];
        let row_cost = row.len() as u64 - 1;
        row.iter()
            .filter(|&&(_, v)| v.abs() == 1)
            .map(|&(c, _)| {
                (row_cost * self.col_len[c as usize].saturating_sub(1) as u64, c)
            })
            .min()
    }

    fn push_best(&mut self, r: u32) {
        if self.retired[r as usize] || self.rows[r as usize].is_empty() {
            return;
        }
        if let Some((cost, c)) = self.best_unit(r) {
            self.queue.push(Reverse((cost, r, c)));
        }
    }

    /// Eliminates `±1` pivots greedily by Markowitz cost until no usable
    /// ones remain; returns the number of pivots.
    fn run(&mut self) -> usize {
        let debug = std::env::var_os("TDLC_ELIM_DEBUG").is_some();
        let started = std::time::Instant::now();
        let mut pivots = 0;
        let mut capped = 0usize;
        while let Some(Reverse((queued_cost, r, _))) = self.queue.pop() {
            if !self.row_alive[r as usize]
                || self.retired[r as usize]
                || self.rows[r as usize].is_empty()
            {
                continue;
            }
            let Some((cost, c)) = self.best_unit(r) else {
                continue;
            };
            if cost > queued_cost {
                // The candidate got more expensive; requeue and let a
                // cheaper one go first.
                self.queue.push(Reverse((cost, r, c)));
                continue;
            }
            match self.eliminate(r, c) {
                Ok(()) => pivots += 1,
                Err(()) => {
                    // The update would blow past the value cap. The row is
                    // restored and retired; the core phases handle it.
                    capped += 1;
                    continue;
                }
            }
            if debug && (pivots % 2000 == 0 || (cost > 2000 && pivots % 50 == 0)) {
                let mut entries = 0usize;
                let mut longest = 0usize;
                let mut live = 0usize;
                let mut biggest = 0i64;
                for (k, row) in self.rows.iter().enumerate() {
                    if self.row_alive[k] && !row.is_empty() {
                        live += 1;
                        entries += row.len();
                        longest = longest.max(row.len());
                        for &(_, v) in row {
                            biggest = biggest.max(v.abs());
                        }
                    }
                }
                eprintln!(
                    "[elim {:?}] pivots={pivots} cost={cost} live={live} entries={entries} longest={longest} biggest={biggest} queue={}",
                    started.elapsed(),
                    self.queue.len()
                );
            }
        }
        if debug {
            let live =
                (0..self.rows.len()).filter(|&k| self.row_alive[k] && !self.rows[k].is_empty());
            let (mut rows, mut entries) = (0usize, 0usize);
            for k in live {
                rows += 1;
                entries += self.rows[k].len();
            }
            eprintln!(
                "[elim {:?}] done: pivots={pivots} capped={capped} residual rows={rows} entries={entries}",
                started.elapsed()
            );
        }
        pivots
    }

    fn row_entry(&self, r: u32, c: u32) -> Option<i64> {
        let row = &self.rows[r as usize];
        row.binary_search_by_key(&c, |&(col, _)| col).ok().map(|i| row[i].1)
    }

    /// Clears column `c` using the unit pivot at `(r, c)`, then removes row
    /// `r` and column `c`. Every affected row is updated atomically, so if
    /// an update would exceed the value cap the state is still
    /// row-equivalent to the input matrix; the pivot row is then retired.
    fn eliminate(&mut self, r: u32, c: u32) -> std::result::Result<(), ()> {
        let pivot_row = std::mem::take(&mut self.rows[r as usize]);
        let pivot_val = pivot_row
            [pivot_row.binary_search_by_key(&c, |&(col, _)| col).expect("pivot entry")]
        .1;
        let mut members: Vec<u32> = self.col_rows[c as usize]
            .iter()
            .copied()
            .filter(|&k| {
                k != r && self.row_alive[k as usize] && self.row_entry(k, c).is_some()
            })
            .collect();
        members.sort_unstable();
        members.dedup();
        for k in members {
            // factor * pivot_val equals the entry at (k, c), so subtracting
            // factor times the pivot row clears it; |pivot_val| = 1 keeps
            // this multiplication exact.
            let factor = self.row_entry(k, c).expect("member entry") * pivot_val;
            let merged = match merge_rows(&self.rows[k as usize], &pivot_row, factor) {
                Ok(merged) => merged,
                Err(()) => {
                    self.rows[r as usize] = pivot_row;
                    self.retired[r as usize] = true;
                    return Err(());
                }
            };
            self.commit_row(k, merged);
            self.push_best(k);
        }
        for &(col, _) in &pivot_row {
            self.col_len[col as usize] -= 1;
        }
        self.col_rows[c as usize] = Vec::new();
        self.row_alive[r as usize] = false;
        Ok(())
    }

    /// Replaces row `k`, keeping the exact column counts and the column
    /// index in step with the support change.
    fn commit_row(&mut self, k: u32, new_row: Vec<(u32, i64)>) {
        let old_row = std::mem::replace(&mut self.rows[k as usize], new_row);
        let mut gained: Vec<u32> = Vec::new();
        {
            let new_row = &self.rows[k as usize];
            let (mut i, mut j) = (0, 0);
            while i < old_row.len() || j < new_row.len() {
                let old_col = old_row.get(i).map(|&(c, _)| c);
                let new_col = new_row.get(j).map(|&(c, _)| c);
                match (old_col, new_col) {
                    (Some(a), Some(b)) if a == b => {
                        i += 1;
                        j += 1;
                    }
                    (Some(a), Some(b)) if a < b => {
                        self.col_len[a as usize] -= 1;
                        i += 1;
                    }
                    (Some(a), None) => {
                        self.col_len[a as usize] -= 1;
                        i += 1;
                    }
                    (_, Some(b)) => {
                        self.col_len[b as usize] += 1;
                        gained.push(b);
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
        }
        for c in gained {
            self.insert_col_row(c, k);
        }
    }

    /// Records that row `k` now meets column `c`, compacting the stale
    /// column index when it has grown well past the live count.
    fn insert_col_row(&mut self, c: u32, k: u32) {
        self.col_rows[c as usize].push(k);
        let live = self.col_len[c as usize] as usize;
        if self.col_rows[c as usize].len() > 4 * live + 8 {
            let mut compacted: Vec<u32> = std::mem::take(&mut self.col_rows[c as usize])
                .into_iter()
                .filter(|&row| {
                    self.row_alive[row as usize] && self.row_entry(row, c).is_some()
                })
                .collect();
            compacted.sort_unstable();
            compacted.dedup();
            self.col_rows[c as usize] = compacted;
        }
    }

    /// Live row count, live column count, and live entry count.
    fn live_size(&self) -> (usize, usize, usize) {
        let mut rows = 0usize;
        let mut entries = 0usize;
        let mut cols: BTreeSet<u32> = BTreeSet::new();
        for (r, row) in self.rows.iter().enumerate() {
            if self.row_alive[r] && !row.is_empty() {
                rows += 1;
                entries += row.len();
                cols.extend(row.iter().map(|&(c, _)| c));
            }
        }
        (rows, cols.len(), entries)
    }

    /// Proves, when possible, that the live residual has rank exactly
    /// `deficit` with all invariant factors one.
    ///
    /// The caller guarantees `deficit` is an upper bound on the residual
    /// rank. A modular elimination that reaches `deficit` pivots exhibits a
    /// `deficit x deficit` minor with nonzero determinant, so the rank is
    /// exactly `deficit`; the greatest common divisor of all such minors is
    /// the product of the invariant factors, so once the determinants of a
    /// few exhibited minors (computed exactly) have gcd one, every
    /// invariant factor is one. Failure to certify returns `false` and
    /// decides nothing.
    fn core_is_certified_unimodular(&self, deficit: usize, debug: bool) -> bool {
        use num_integer::Integer;
        use rand::seq::SliceRandom;
        use rand::SeedableRng;

        let started = std::time::Instant::now();
        let live_rows: Vec<u32> = (0..self.rows.len() as u32)
            .filter(|&r| self.row_alive[r as usize] && !self.rows[r as usize].is_empty())
            .collect();
        let live_cols: Vec<u32> = {
            let mut cols: BTreeSet<u32> = BTreeSet::new();
            for &r in &live_rows {
                cols.extend(self.rows[r as usize].iter().map(|&(c, _)| c));
            }
            cols.into_iter().collect()
        };
        let (m, n) = (live_rows.len(), live_cols.len());
        if deficit > m.min(n) {
            return false;
        }
        let col_pos: BTreeMap<u32, usize> =
            live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let raw: Vec<Vec<i64>> = live_rows
            .iter()
            .map(|&r| {
                let mut row = vec![0i64; n];
                for &(c, v) in &self.rows[r as usize] {
                    row[col_pos[&c]] = v;
                }
                row
            })
            .collect();

        const PRIMES: [u64; 4] = [1_000_000_007, 998_244_353, 2_147_483_647, 1_000_000_009];
        let mut gcd = BigInt::zero();
        for attempt in 0..8usize {
            let prime = PRIMES[attempt % PRIMES.len()];
            // Vary both row and column preference so successive minors draw
            // on genuinely different submatrices; otherwise their
            // determinants can share incidental factors forever.
            let mut row_order: Vec<usize> = (0..m).collect();
            let mut col_order: Vec<usize> = (0..n).collect();
            if attempt > 0 {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(attempt as u64);
                row_order.shuffle(&mut rng);
                col_order.shuffle(&mut rng);
            }
            let Some((pivot_rows, pivot_cols)) =
                modular_pivots(&raw, prime, &row_order, &col_order, deficit)
            else {
                continue;
            };
            let minor: Vec<Vec<BigInt>> = pivot_rows
                .iter()
                .map(|&i| pivot_cols.iter().map(|&j| BigInt::from(raw[i][j])).collect())
                .collect();
            let det = bareiss_determinant(minor);
            gcd = gcd.gcd(&det);
            if debug {
                eprintln!(
                    "[core cert {:?}] attempt={attempt} prime={prime} det bits={} gcd={gcd}",
                    started.elapsed(),
                    det.bits()
                );
            }
            if gcd == BigInt::one() {
                return true;
            }
        }
        false
    }

    /// The transpose of the live residual, with rows and columns compacted.
    ///
    /// Exchanging rows and columns preserves invariant factors, so the
    /// result can seed another elimination round.
    fn residual_transpose(&self) -> Result<SparseMatrix> {
        let live_rows: Vec<u32> = (0..self.rows.len() as u32)
            .filter(|&r| self.row_alive[r as usize] && !self.rows[r as usize].is_empty())
            .collect();
        let live_cols: Vec<u32> = {
            let mut cols: BTreeSet<u32> = BTreeSet::new();
            for &r in &live_rows {
                cols.extend(self.rows[r as usize].iter().map(|&(c, _)| c));
            }
            cols.into_iter().collect()
        };
        let col_pos: BTreeMap<u32, u32> =
            live_cols.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let mut triplets = Vec::new();
        for (i, &r) in live_rows.iter().enumerate() {
            for &(c, v) in &self.rows[r as usize] {
                triplets.push((col_pos[&c], i as u32, v));
            }
        }
        SparseMatrix::from_triplets(live_cols.len(), live_rows.len(), &triplets)
    }

    /// The remaining nonzero rows and columns as a dense matrix.
    fn residual(&self) -> Vec<Vec<BigInt>> {
        let live_rows: Vec<u32> = (0..self.rows.len() as u32)
            .filter(|&r| self.row_alive[r as usize] && !self.rows[r as usize].is_empty())
            .collect();
        let live_cols: Vec<u32> = {
            let mut cols: BTreeSet<u32> = BTreeSet::new();
            for &r in &live_rows {
                cols.extend(self.rows[r as usize].iter().map(|&(c, _)| c));
            }
            cols.into_iter().collect()
        };
        let col_pos: BTreeMap<u32, usize> =
            live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        live_rows
            .iter()
            .map(|&r| {
                let mut row = vec![BigInt::zero(); live_cols.len()];
                for &(c, v) in &self.rows[r as usize] {
                    row[col_pos[&c]] = BigInt::from(v);
                }
                row
            })
            .collect()
    }
}

/// Row-echelon elimination modulo a prime below `2^31`, consuming rows and
/// probing lead columns in the orders given. Returns the first `target`
/// pivot positions `(rows, cols)` reached, or `None` if the modular rank
/// falls short.
fn modular_pivots(
    raw: &[Vec<i64>],
    prime: u64,
    row_order: &[usize],
    col_order: &[usize],
    target: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pivot_rows: Vec<Vec<u64>> = Vec::new();
    for &index in row_order {
        if pivots.len() == target {
            break;
        }
        let mut row: Vec<u64> =
            raw[index].iter().map(|&v| v.rem_euclid(prime as i64) as u64).collect();
        for (&(_, pc), pivot) in pivots.iter().zip(&pivot_rows) {
            let f = row[pc];
            if f != 0 {
                for (v, &pv) in row.iter_mut().zip(pivot) {
                    *v = (*v + prime * prime - f * pv) % prime;
                }
            }
        }
        if let Some(&lead) = col_order.iter().find(|&&c| row[c] != 0) {
            let inv = modular_inverse(row[lead], prime);
            for v in row.iter_mut() {
                *v = *v * inv % prime;
            }
            pivots.push((index, lead));
            pivot_rows.push(row);
        }
    }
    if pivots.len() == target {
        Some((
            pivots.iter().map(|&(r, _)| r).collect(),
            pivots.iter().map(|&(_, c)| c).collect(),
        ))
    } else {
        None
    }
}

/// `a^(p-2) mod p` for prime `p`: the inverse of `a` when `a != 0`.
fn modular_inverse(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Exact determinant by fraction-free (Bareiss) elimination.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let size = a.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut previous = BigInt::one();
    let mut sign = 1i64;
    for k in 0..size {
        let Some(p) = (k..size).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let value = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &previous;
                a[i][j] = value;
            }
            a[i][k] = BigInt::zero();
        }
        previous = a[k][k].clone();
    }
    a[size - 1][size - 1].clone() * BigInt::from(sign)
}

/// `a - factor * b` on sorted sparse rows; fails if any result magnitude
/// would exceed the sparse-phase value cap.
fn merge_rows(
    a: &[(u32, i64)],
    b: &[(u32, i64)],
    factor: i64,
) -> std::result::Result<Vec<(u32, i64)>, ()> {
    let capped = |v: i64| if v.abs() > SPARSE_VALUE_LIMIT { Err(()) } else { Ok(v) };
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let left = a.get(i).copied();
        let right = b.get(j).copied();
        match (left, right) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let delta = vb.checked_mul(factor).ok_or(())?;
                let value = capped(va.checked_sub(delta).ok_or(())?)?;
                if value != 0 {
                    out.push((ca, value));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((ca, va));
                i += 1;
            }
            (Some((ca, va)), None) => {
                out.push((ca, va));
                i += 1;
            }
            (_, Some((cb, vb))) => {
                let delta = vb.checked_mul(factor).ok_or(())?;
                out.push((cb, capped(0i64.checked_sub(delta).ok_or(())?)?));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Chain complexes and homology
// ---------------------------------------------------------------------------

/// One homology group: free rank plus torsion coefficients (the invariant
/// factors exceeding one, in divisibility order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Human-readable form such as `Z^2 + Z/2`, with `0` for the trivial
    /// group.
    pub fn display(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Homology of a chain complex of free `Z`-modules given by the rank of each
/// chain group and the boundary matrices `boundaries[k] : C_{k+1} -> C_k`.
/// Returns `H_0 .. H_d` (unreduced, so `H_0` counts connected components in
/// the simplicial case). Validates shapes and that consecutive boundaries
/// compose to zero.
pub fn chain_homology(
    dimensions: &[usize],
    boundaries: &[SparseMatrix],
) -> Result<Vec<HomologyGroup>> {
    if dimensions.is_empty() {
        return Err(Error::input("chain complex needs at least one chain group"));
    }
    if boundaries.len() + 1 != dimensions.len() {
        return Err(Error::input(format!(
            "{} chain groups need {} boundary maps, got {}",
            dimensions.len(),
            dimensions.len() - 1,
            boundaries.len()
        )));
    }
    for (k, b) in boundaries.iter().enumerate() {
        if b.rows() != dimensions[k] || b.cols() != dimensions[k + 1] {
            return Err(Error::input(format!(
                "boundary map {} is {} x {}, expected {} x {}",
                k + 1,
                b.rows(),
                b.cols(),
                dimensions[k],
                dimensions[k + 1]
            )));
        }
    }
    for k in 0..boundaries.len().saturating_sub(1) {
        if !compose_to_zero(&boundaries[k], &boundaries[k + 1]) {
            return Err(Error::input(format!(
                "boundary maps {} and {} do not compose to zero",
                k + 1,
                k + 2
            )));
        }
    }

    // Ascending through the complex, each boundary's image lies inside the
    // previous one's kernel, whose dimension is a proven rank bound.
    let mut smiths: Vec<SmithInvariants> = Vec::with_capacity(boundaries.len());
    for (k, boundary) in boundaries.iter().enumerate() {
        let bound = if k == 0 {
            None
        } else {
            Some(dimensions[k] - smiths[k - 1].rank)
        };
        smiths.push(smith_invariants_bounded(boundary, bound)?);
    }
    let rank_of = |k: usize| -> usize {
        if k == 0 || k > smiths.len() {
            0
        } else {
            smiths[k - 1].rank
        }
    };
    let mut groups = Vec::with_capacity(dimensions.len());
    for k in 0..dimensions.len() {
        let betti = dimensions[k] - rank_of(k) - rank_of(k + 1);
        let torsion = if k + 1 <= smiths.len() { smiths[k].torsion() } else { Vec::new() };
        groups.push(HomologyGroup { betti, torsion });
    }
    Ok(groups)
}

fn compose_to_zero(first: &SparseMatrix, second: &SparseMatrix) -> bool {
    // Index the columns of `first` once, then push each column of `second`
    // through it.
    let mut first_cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); first.cols()];
    for &(r, c, v) in first.triplets() {
        first_cols[c as usize].push((r, v));
    }
    let mut second_cols: BTreeMap<u32, Vec<(u32, i64)>> = BTreeMap::new();
    for &(r, c, v) in second.triplets() {
        second_cols.entry(c).or_default().push((r, v));
    }
    second_cols.values().all(|col| {
        let mut acc: BTreeMap<u32, i128> = BTreeMap::new();
        for &(mid, v) in col {
            for &(out, w) in &first_cols[mid as usize] {
                *acc.entry(out).or_insert(0) += i128::from(v) * i128::from(w);
            }
        }
        acc.values().all(|&v| v == 0)
    })
}

/// Chain group ranks and boundary matrices of a two-dimensional complex, in
/// its canonical vertex/edge/triangle order.
pub fn complex_boundaries(complex: &Complex) -> (Vec<usize>, Vec<SparseMatrix>) {
    let dims = vec![complex.vertex_count(), complex.edge_count(), complex.triangle_count()];
    let mut d1 = Vec::with_capacity(2 * complex.edge_count());
    for (i, &(u, v)) in complex.edges().iter().enumerate() {
        d1.push((u, i as u32, -1));
        d1.push((v, i as u32, 1));
    }
    let mut d2 = Vec::with_capacity(3 * complex.triangle_count());
    for (i, &[a, b, c]) in complex.triangles().iter().enumerate() {
        d2.push((complex.edge_id(a, b).unwrap(), i as u32, 1));
        d2.push((complex.edge_id(a, c).unwrap(), i as u32, -1));
        d2.push((complex.edge_id(b, c).unwrap(), i as u32, 1));
    }
    let b1 = SparseMatrix::from_triplets(dims[0], dims[1], &d1)
        .expect("boundary entries are in range");
    let b2 = SparseMatrix::from_triplets(dims[1], dims[2], &d2)
        .expect("boundary entries are in range");
    (dims, vec![b1, b2])
}

/// Integral homology `H_0, H_1, H_2` of a two-dimensional complex.
pub fn complex_homology(complex: &Complex) -> Result<Vec<HomologyGroup>> {
    let (dims, boundaries) = complex_boundaries(complex);
    chain_homology(&dims, &boundaries)
}

/// Largest facet size accepted by [`simplicial_boundaries`]; subsets are
/// enumerated bitwise, so this bounds that blowup.
const MAX_FACET_SIZE: usize = 12;

/// Builds the full simplicial chain complex (all dimensions) spanned by a
/// facet list: simplices are the nonempty vertex subsets of facets. Vertices
/// `0..vertex_count` all contribute to dimension zero, including isolated
/// ones.
pub fn simplicial_boundaries(
    vertex_count: usize,
    facets: &[Vec<u32>],
) -> Result<(Vec<usize>, Vec<SparseMatrix>)> {
    let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
    for facet in facets {
        let mut f = facet.clone();
        f.sort_unstable();
        if f.is_empty() {
            return Err(Error::input("empty facet"));
        }
        if f.len() > MAX_FACET_SIZE {
            return Err(Error::input(format!(
                "facet with {} vertices exceeds the supported maximum {MAX_FACET_SIZE}",
                f.len()
            )));
        }
        if f.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input(format!("facet {facet:?} repeats a vertex")));
        }
        if let Some(&v) = f.last() {
            if v as usize >= vertex_count {
                return Err(Error::input(format!(
                    "facet {facet:?} uses vertex {v}, but there are only {vertex_count}"
                )));
            }
        }
        while by_dim.len() < f.len() {
            by_dim.push(BTreeSet::new());
        }
        for mask in 1u32..(1 << f.len()) {
            let subset: Vec<u32> =
                (0..f.len()).filter(|&i| mask & (1 << i) != 0).map(|i| f[i]).collect();
            by_dim[subset.len() - 1].insert(subset);
        }
    }
    if by_dim.is_empty() {
        by_dim.push(BTreeSet::new());
    }
    // Dimension zero always covers the full vertex range.
    by_dim[0] = (0..vertex_count as u32).map(|v| vec![v]).collect();

    let bases: Vec<Vec<Vec<u32>>> =
        by_dim.iter().map(|set| set.iter().cloned().collect()).collect();
    let index: Vec<BTreeMap<&[u32], u32>> = bases
        .iter()
        .map(|basis| basis.iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32)).collect())
        .collect();

    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let mut boundaries = Vec::new();
    for k in 1..bases.len() {
        let mut entries = Vec::new();
        for (col, simplex) in bases[k].iter().enumerate() {
            for (i, _) in simplex.iter().enumerate() {
                let mut face = simplex.clone();
                face.remove(i);
                let row = index[k - 1][face.as_slice()];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                entries.push((row, col as u32, sign));
            }
        }
        boundaries.push(SparseMatrix::from_triplets(dims[k - 1], dims[k], &entries)?);
    }
    Ok((dims, boundaries))
}

/// Integral homology of the simplicial complex spanned by a facet list, in
/// every dimension up to the largest facet.
pub fn facet_homology(vertex_count: usize, facets: &[Vec<u32>]) -> Result<Vec<HomologyGroup>> {
    let (dims, boundaries) = simplicial_boundaries(vertex_count, facets)?;
    chain_homology(&dims, &boundaries)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
