//! Smith normal form, Hermite normal form, kernels and integer solving.
//!
//! Pivot selection is by minimal absolute value with row-major tie break,
//! which keeps intermediate entries small on the incidence-style matrices
//! produced by chain and Čech complexes and makes every run deterministic.

use crate::arith::{xgcd, Int};
use crate::matrix::Mat;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// U * A * V = diag(divisors) padded with zeros; det(U), det(V) = ±1.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Mat,
    pub v: Mat,
    pub divisors: Vec<Int>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Smith {
    pub fn diagonal_matrix(&self) -> Mat {
        let mut d = Mat::zero(self.rows, self.cols);
        for (i, q) in self.divisors.iter().enumerate() {
            d.set(i, i, q.clone());
        }
        d
    }
}

struct Work {
    b: Vec<Vec<Int>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<Int>>>,
    v: Option<Vec<Vec<Int>>>,
}

impl Work {
    fn new(a: &Mat, transforms: bool) -> Work {
        let rows = a.rows();
        let cols = a.cols();
        let b = (0..rows).map(|r| a.row(r)).collect();
        let ident = |n: usize| -> Vec<Vec<Int>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { Int::one() } else { Int::zero() })
                        .collect()
                })
                .collect()
        };
        Work {
            b,
            rows,
            cols,
            u: transforms.then(|| ident(rows)),
            v: transforms.then(|| ident(cols)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.b.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.b {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            if !self.b[j][c].is_zero() {
                let t = &self.b[i][c] - q * &self.b[j][c];
                self.b[i][c] = t;
            }
        }
        if let Some(u) = &mut self.u {
            for c in 0..u[0].len() {
                if !u[j][c].is_zero() {
                    let t = &u[i][c] - q * &u[j][c];
                    u[i][c] = t;
                }
            }
        }
    }

    /// col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            if !self.b[r][j].is_zero() {
                let t = &self.b[r][i] - q * &self.b[r][j];
                self.b[r][i] = t;
            }
        }
        if let Some(v) = &mut self.v {
            for r in 0..v.len() {
                if !v[r][j].is_zero() {
                    let t = &v[r][i] - q * &v[r][j];
                    v[r][i] = t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            if !self.b[i][c].is_zero() {
                let t = -self.b[i][c].clone();
                self.b[i][c] = t;
            }
        }
        if let Some(u) = &mut self.u {
            for c in 0..u[0].len() {
                if !u[i][c].is_zero() {
                    let t = -u[i][c].clone();
                    u[i][c] = t;
                }
            }
        }
    }

    /// Minimal |entry| in the trailing submatrix starting at t, row-major tie
    /// break; early exit on a unit.
    fn pick_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(Int, usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let x = &self.b[r][c];
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                match &best {
                    Some((m, _, _)) if *m <= a => {}
                    _ => {
                        let unit = a.is_one();
                        best = Some((a, r, c));
                        if unit {
                            return Some((r, c));
                        }
                    }
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    /// Diagonalize (no global divisibility yet); returns the rank.
    fn diagonalize(&mut self) -> usize {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pr, pc)) = self.pick_pivot(t) else {
                break;
            };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                // Clear column t with euclidean steps.
                let mut dirty = false;
                for r in t + 1..self.rows {
                    if self.b[r][t].is_zero() {
                        continue;
                    }
                    let (q, rem) = self.b[r][t].div_rem(&self.b[t][t]);
                    self.row_sub(r, t, &q);
                    if !rem.is_zero() {
                        self.swap_rows(t, r);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                for c in t + 1..self.cols {
                    if self.b[t][c].is_zero() {
                        continue;
                    }
                    let (q, rem) = self.b[t][c].div_rem(&self.b[t][t]);
                    self.col_sub(c, t, &q);
                    if !rem.is_zero() {
                        self.swap_cols(t, c);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            if self.b[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }

    /// Make the diagonal a divisibility chain d1 | d2 | ... .
    fn fix_divisibility(&mut self, rank: usize) {
        if rank < 2 {
            return;
        }
        loop {
            let mut stable = true;
            for i in 0..rank - 1 {
                for j in i + 1..rank {
                    let a = self.b[i][i].clone();
                    let b = self.b[j][j].clone();
                    if (&b % &a).is_zero() {
                        continue;
                    }
                    stable = false;
                    // col_i += col_j brings b into column i; then clear the
                    // 2x2 block with bezout row/col operations.
                    let minus_one = -Int::one();
                    self.col_sub(i, j, &minus_one);
                    let (g, s, _tt) = xgcd(&a, &b);
                    // row_i <- row_i + k*row_j with k chosen so that entry
                    // (i,i) becomes g: s*a + t*b = g, entry(i,i) = a,
                    // entry(j,i) = b. Use generalized steps: replace rows.
                    // row_i' = s*row_i + t*row_j ; row_j' = -(b/g)*row_i + (a/g)*row_j
                    let t_co = (&g - &s * &a) / &b;
                    let bg = &b / &g;
                    let ag = &a / &g;
                    self.row_combine(i, j, &s, &t_co, &(-bg), &ag);
                    // Now entry (i,i) = g, entry (j,i) = 0, entry (i,j) = t*b? clean up:
                    let (q, _) = self.b[i][j].div_rem(&self.b[i][i]);
                    self.col_sub(j, i, &q);
                    // entry (j,j) should now be ±lcm; re-clear any residue.
                    let (q2, _) = self.b[j][i].div_rem(&self.b[i][i]);
                    if !q2.is_zero() {
                        self.row_sub(j, i, &q2);
                    }
                    if self.b[i][i].is_negative() {
                        self.negate_row(i);
                    }
                    if self.b[j][j].is_negative() {
                        self.negate_row(j);
                    }
                    debug_assert!(self.b[i][j].is_zero() && self.b[j][i].is_zero());
                }
            }
            if stable {
                break;
            }
        }
    }

    /// rows i, j <- (a*row_i + b*row_j, c*row_i + d*row_j), with ad-bc = ±1.
    fn row_combine(&mut self, i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        for col in 0..self.cols {
            let x = self.b[i][col].clone();
            let y = self.b[j][col].clone();
            self.b[i][col] = a * &x + b * &y;
            self.b[j][col] = c * &x + d * &y;
        }
        if let Some(u) = &mut self.u {
            for col in 0..u[0].len() {
                let x = u[i][col].clone();
                let y = u[j][col].clone();
                u[i][col] = a * &x + b * &y;
                u[j][col] = c * &x + d * &y;
            }
        }
    }
}

/// Full Smith normal form with transforms.
pub fn smith(a: &Mat) -> Smith {
    let mut w = Work::new(a, true);
    let rank = w.diagonalize();
    w.fix_divisibility(rank);
    let divisors: Vec<Int> = (0..rank).map(|i| w.b[i][i].clone()).collect();
    debug_assert!(divisors.iter().all(|d| d.is_positive()));
    let u_rows = w.u.take().unwrap();
    let v_rows = w.v.take().unwrap();
    let u = Mat::from_fn(a.rows(), a.rows(), |r, c| u_rows[r][c].clone());
    let v = Mat::from_fn(a.cols(), a.cols(), |r, c| v_rows[r][c].clone());
    Smith {
        u,
        v,
        divisors,
        rank,
        rows: a.rows(),
        cols: a.cols(),
    }
}

/// Divisors and rank only (skips transform bookkeeping).
pub fn smith_divisors(a: &Mat) -> (Vec<Int>, usize) {
    let mut w = Work::new(a, false);
    let rank = w.diagonalize();
    w.fix_divisibility(rank);
    ((0..rank).map(|i| w.b[i][i].clone()).collect(), rank)
}

/// Exact rank over the integers (equivalently over Q), by sparse
/// fraction-free elimination with content reduction.
pub fn rank(a: &Mat) -> usize {
    // sparse rows
    let mut rows: Vec<std::collections::BTreeMap<usize, Int>> = (0..a.rows())
        .map(|r| {
            (0..a.cols())
                .filter(|&c| !a.at(r, c).is_zero())
                .map(|c| (c, a.at(r, c).clone()))
                .collect()
        })
        .filter(|m: &std::collections::BTreeMap<usize, Int>| !m.is_empty())
        .collect();
    let mut rank = 0;
    // per-column occupancy for pivot search
    let mut by_col: Vec<Vec<usize>> = vec![Vec::new(); a.cols()];
    for (i, r) in rows.iter().enumerate() {
        for (&c, _) in r.iter() {
            by_col[c].push(i);
        }
    }
    let mut row_alive = vec![true; rows.len()];
    for col in 0..a.cols() {
        // candidate rows with a nonzero in this column
        let mut best: Option<(bool, usize, usize)> = None; // (non-unit, fill, row)
        for &ri in &by_col[col] {
            if !row_alive[ri] {
                continue;
            }
            let Some(v) = rows[ri].get(&col) else { continue };
            if v.is_zero() {
                continue;
            }
            let key = (!v.abs().is_one(), rows[ri].len(), ri);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        let Some((_, _, pi)) = best else { continue };
        rank += 1;
        row_alive[pi] = false;
        let pivot_row = rows[pi].clone();
        let pv = pivot_row[&col].clone();
        let victims: Vec<usize> = by_col[col]
            .iter()
            .copied()
            .filter(|&ri| row_alive[ri] && rows[ri].contains_key(&col))
            .collect();
        for ri in victims {
            let rv = match rows[ri].get(&col) {
                Some(v) if !v.is_zero() => v.clone(),
                _ => continue,
            };
            let g = crate::arith::gcd(&pv, &rv);
            let (mp, mr) = (&rv / &g, &pv / &g);
            // row_ri <- mr*row_ri - mp*pivot_row
            let mut content = Int::zero();
            let keys: Vec<usize> = pivot_row.keys().copied().collect();
            for (_, v) in rows[ri].iter_mut() {
                *v = &*v * &mr;
            }
            for k in keys {
                let sub = &mp * &pivot_row[&k];
                let entry = rows[ri].entry(k).or_insert_with(Int::zero);
                *entry -= sub;
                if entry.is_zero() {
                    rows[ri].remove(&k);
                } else if k != col {
                    by_col[k].push(ri);
                }
            }
            rows[ri].remove(&col);
            for (_, v) in rows[ri].iter() {
                content = crate::arith::gcd(&content, v);
            }
            if content > Int::one() {
                for (_, v) in rows[ri].iter_mut() {
                    *v = &*v / &content;
                }
            }
        }
    }
    rank
}

/// Columns spanning the saturated lattice {x : A x = 0}, in column HNF.
pub fn kernel_basis(a: &Mat) -> Mat {
    if a.cols() == 0 {
        return Mat::zero(0, 0);
    }
    if a.rows() == 0 {
        return Mat::identity(a.cols());
    }
    let sm = smith(a);
    let cols: Vec<Vec<Int>> = (sm.rank..a.cols()).map(|i| sm.v.column(i)).collect();
    column_hnf(&Mat::from_columns(a.cols(), &cols))
}

/// Integer solution X of A X = B, if one exists.
pub fn solve(a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows(), b.rows());
    if a.cols() == 0 {
        return b.is_zero().then(|| Mat::zero(0, b.cols()));
    }
    let sm = smith(a);
    solve_with(&sm, b)
}

/// Solve A X = B reusing a precomputed Smith decomposition of A.
pub fn solve_with(sm: &Smith, b: &Mat) -> Option<Mat> {
    assert_eq!(sm.rows, b.rows());
    let ub = sm.u.mul(b);
    let mut z = Mat::zero(sm.cols, b.cols());
    for r in 0..sm.rows {
        for c in 0..b.cols() {
            let val = ub.at(r, c);
            if r < sm.rank {
                let (q, rem) = val.div_rem(&sm.divisors[r]);
                if !rem.is_zero() {
                    return None;
                }
                if r < sm.cols {
                    z.set(r, c, q);
                }
            } else if !val.is_zero() {
                return None;
            }
        }
    }
    Some(sm.v.mul(&z))
}

/// Canonical row Hermite normal form: pivots positive, entries above each
/// pivot reduced into [0, pivot), zero rows dropped.
pub fn row_hnf(a: &Mat) -> Mat {
    let rows = a.rows();
    let cols = a.cols();
    let mut b: Vec<Vec<Int>> = (0..rows).map(|r| a.row(r)).collect();
    let mut pivot_row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..cols {
        // Reduce all rows >= pivot_row in this column to a single nonzero.
        loop {
            let mut idx: Option<usize> = None;
            for r in pivot_row..rows {
                if !b[r][col].is_zero() {
                    match idx {
                        Some(i) if b[i][col].abs() <= b[r][col].abs() => {}
                        _ => idx = Some(r),
                    }
                }
            }
            let Some(best) = idx else {
                break;
            };
            b.swap(pivot_row, best);
            let mut any = false;
            for r in pivot_row + 1..rows {
                if b[r][col].is_zero() {
                    continue;
                }
                let q = div_floor_q(&b[r][col], &b[pivot_row][col]);
                for c in col..cols {
                    let t = &b[r][c] - &q * &b[pivot_row][c];
                    b[r][c] = t;
                }
                if !b[r][col].is_zero() {
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        if pivot_row < rows && !b[pivot_row][col].is_zero() {
            if b[pivot_row][col].is_negative() {
                for c in 0..cols {
                    let t = -b[pivot_row][c].clone();
                    b[pivot_row][c] = t;
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
            if pivot_row == rows {
                break;
            }
        }
    }
    // Reduce entries above each pivot.
    for &(pr, pc) in pivots.iter() {
        for r in 0..pr {
            if b[r][pc].is_zero() {
                continue;
            }
            let q = div_floor_q(&b[r][pc], &b[pr][pc]);
            if q.is_zero() {
                continue;
            }
            for c in 0..cols {
                let t = &b[r][c] - &q * &b[pr][c];
                b[r][c] = t;
            }
        }
    }
    let nonzero = pivots.len();
    Mat::from_fn(nonzero, cols, |r, c| b[r][c].clone())
}

fn div_floor_q(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

/// Canonical column HNF (transposed row HNF), zero columns dropped.
pub fn column_hnf(a: &Mat) -> Mat {
    row_hnf(&a.transpose()).transpose()
}

/// Betti number and torsion divisors of coker(A : Z^cols -> Z^rows).
pub fn cokernel_invariants(a: &Mat) -> (usize, Vec<Int>) {
    let (div, rank) = smith_divisors(a);
    let betti = a.rows() - rank;
    let torsion = div.into_iter().filter(|d| !d.abs().is_one()).collect();
    (betti, torsion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn check(a: &Mat) {
        let sm = smith(a);
        let d = sm.u.mul(a).mul(&sm.v);
        assert_eq!(d, sm.diagonal_matrix(), "UAV not diagonal for {:?}", a);
        assert!(sm.u.det().abs().is_one());
        assert!(sm.v.det().abs().is_one());
        for i in 1..sm.divisors.len() {
            assert!(
                (&sm.divisors[i] % &sm.divisors[i - 1]).is_zero(),
                "divisibility chain broken: {:?}",
                sm.divisors
            );
        }
    }

    #[test]
    fn smith_small() {
        let a = Mat::identity(2);
        let sm = smith(&a);
        assert_eq!(sm.divisors, vec![int(1), int(1)]);
        assert_eq!(sm.rank, 2);

        let b = Mat::from_rows_i64(&[&[2, 4], &[6, 8]]);
        check(&b);
        let sm = smith(&b);
        assert_eq!(sm.divisors, vec![int(2), int(4)]);

        // T - id for the focus-focus transvection.
        let c = Mat::from_rows_i64(&[&[0, 1], &[0, 0]]);
        let sm = smith(&c);
        assert_eq!(sm.divisors, vec![int(1)]);
        assert_eq!(sm.rank, 1);
        let k = kernel_basis(&c);
        assert_eq!(k, Mat::from_rows_i64(&[&[1], &[0]]));
    }

    #[test]
    fn smith_stress() {
        let mut rng = crate::arith::XorShift::new(42);
        for _ in 0..60 {
            let r = rng.int_in(1, 5) as usize;
            let c = rng.int_in(1, 5) as usize;
            let a = Mat::from_fn(r, c, |_, _| int(rng.int_in(-9, 9)));
            check(&a);
        }
    }

    #[test]
    fn hnf_canonical() {
        let a = Mat::from_rows_i64(&[&[2, 0], &[0, 2], &[1, 1]]);
        let h = row_hnf(&a);
        // lattice spanned by rows: (2,0),(0,2),(1,1) = index-2 sublattice
        assert_eq!(h, Mat::from_rows_i64(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn solve_works() {
        let a = Mat::from_rows_i64(&[&[2, 0], &[0, 3]]);
        let b = Mat::from_rows_i64(&[&[4], &[9]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        let b2 = Mat::from_rows_i64(&[&[3], &[9]]);
        assert!(solve(&a, &b2).is_none());
    }
}
