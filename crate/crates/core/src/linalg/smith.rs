//! Smith normal form.

use super::echelon::row_echelon;
use super::{Int, Matrix};

/// `u * a * v = diag(d_0, .., d_{r-1}, 0, ..)` with `d_i | d_{i+1}`, all positive.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<Int>,
    pub u: Matrix,
    pub v: Matrix,
    /// `v^{-1}`, maintained alongside `v`.
    pub v_inv: Matrix,
}

struct Work {
    a: Vec<Vec<Int>>,
    u: Vec<Vec<Int>>,
    v: Vec<Vec<Int>>,
    vi: Vec<Vec<Int>>,
    track: bool,
}

impl Work {
    fn row_comb(&mut self, i: usize, j: usize, s: &Int, t: &Int, x: &Int, y: &Int) {
        // rows (i, j) <- (s*ri + t*rj, x*ri + y*rj)
        let comb = |m: &mut Vec<Vec<Int>>| {
            for k in 0..m[i].len() {
                let (a, b) = (m[i][k].clone(), m[j][k].clone());
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                m[i][k] = &(s * &a) + &(t * &b);
                m[j][k] = &(x * &a) + &(y * &b);
            }
        };
        comb(&mut self.a);
        if self.track {
            comb(&mut self.u);
        }
    }

    fn col_comb(&mut self, i: usize, j: usize, s: &Int, t: &Int, x: &Int, y: &Int) {
        // cols (i, j) <- (s*ci + t*cj, x*ci + y*cj)
        let comb = |m: &mut Vec<Vec<Int>>| {
            for row in m.iter_mut() {
                let (a, b) = (row[i].clone(), row[j].clone());
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                row[i] = &(s * &a) + &(t * &b);
                row[j] = &(x * &a) + &(y * &b);
            }
        };
        comb(&mut self.a);
        if self.track {
            comb(&mut self.v);
            // The inverse transforms by the inverse row operation.
            let det = &(s * y) - &(t * x);
            let (is, it, ix, iy) = (y * &det, -(t * &det), -(x * &det), s * &det);
            let m = &mut self.vi;
            for k in 0..m[i].len() {
                let (a, b) = (m[i][k].clone(), m[j][k].clone());
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                // rows of v^{-1}: (ri, rj) <- inverse of the 2x2 applied on the left
                m[i][k] = &(&is * &a) + &(&ix * &b);
                m[j][k] = &(&it * &a) + &(&iy * &b);
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if self.track {
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if self.track {
            for row in self.v.iter_mut() {
                row.swap(i, j);
            }
            self.vi.swap(i, j);
        }
    }
}

fn negate_row(w: &mut Work, i: usize) {
    for v in w.a[i].iter_mut() {
        *v = -&*v;
    }
    if w.track {
        for v in w.u[i].iter_mut() {
            *v = -&*v;
        }
    }
}

fn run(a: &Matrix, track: bool) -> (Vec<Int>, Work) {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.to_rows(),
        u: if track {
            Matrix::identity(m).to_rows()
        } else {
            Vec::new()
        },
        v: if track {
            Matrix::identity(n).to_rows()
        } else {
            Vec::new()
        },
        vi: if track {
            Matrix::identity(n).to_rows()
        } else {
            Vec::new()
        },
        track,
    };
    let mut t = 0;
    let mut diag = Vec::new();
    // Diagonalise one pivot at a time so the sign fix touches a single row.
    while t < m.min(n) {
        let d = diagonalise_step(&mut w, t, m, n);
        match d {
            Some(v) => {
                if v.is_negative() {
                    negate_row(&mut w, t);
                }
                diag.push(w.a[t][t].clone());
                t += 1;
            }
            None => break,
        }
    }
    (diag, w)
}

fn diagonalise_step(w: &mut Work, t: usize, m: usize, n: usize) -> Option<Int> {
    let mut best: Option<(usize, usize, Int)> = None;
    'search: for i in t..m {
        for j in t..n {
            if !w.a[i][j].is_zero() {
                let av = w.a[i][j].abs();
                if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                    let one = av.is_one();
                    best = Some((i, j, av));
                    if one {
                        break 'search;
                    }
                }
            }
        }
    }
    let (bi, bj, _) = best?;
    w.swap_rows(t, bi);
    w.swap_cols(t, bj);
    loop {
        let mut changed = false;
        for i in t + 1..m {
            if w.a[i][t].is_zero() {
                continue;
            }
            let (p, b) = (w.a[t][t].clone(), w.a[i][t].clone());
            if p.divides(&b) {
                let q = b.div_exact(&p);
                w.row_comb(t, i, &Int::ONE, &Int::ZERO, &-&q, &Int::ONE);
            } else {
                let (g, s, tt) = Int::ext_gcd(&p, &b);
                let (x, y) = (-b.div_exact(&g), p.div_exact(&g));
                w.row_comb(t, i, &s, &tt, &x, &y);
                changed = true;
            }
        }
        for j in t + 1..n {
            if w.a[t][j].is_zero() {
                continue;
            }
            let (p, b) = (w.a[t][t].clone(), w.a[t][j].clone());
            if p.divides(&b) {
                let q = b.div_exact(&p);
                w.col_comb(t, j, &Int::ONE, &Int::ZERO, &-&q, &Int::ONE);
            } else {
                let (g, s, tt) = Int::ext_gcd(&p, &b);
                let (x, y) = (-b.div_exact(&g), p.div_exact(&g));
                w.col_comb(t, j, &s, &tt, &x, &y);
                changed = true;
            }
        }
        if changed || (t + 1..m).any(|i| !w.a[i][t].is_zero()) {
            continue;
        }
        let p = w.a[t][t].clone();
        let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !p.divides(&w.a[i][j])));
        match bad {
            Some(i) => w.row_comb(t, i, &Int::ONE, &Int::ONE, &Int::ZERO, &Int::ONE),
            None => break,
        }
    }
    Some(w.a[t][t].clone())
}

/// Smith form with transforms.
pub fn smith(a: &Matrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let (diag, w) = run(a, true);
    Smith {
        diag,
        u: Matrix::from_int_rows(w.u, m),
        v: Matrix::from_int_rows(w.v, n),
        v_inv: Matrix::from_int_rows(w.vi, n),
    }
}

/// Nonzero invariant factors of `a`, including units.
pub fn invariant_factors(a: &Matrix) -> Vec<Int> {
    // Shrink to a square full-rank block by two Hermite reductions first.
    let e = row_echelon(a, false, false);
    let r = e.rank();
    if r == 0 {
        return Vec::new();
    }
    let top = e.h.select_rows(&(0..r).collect::<Vec<_>>());
    let e2 = row_echelon(&top.transpose(), false, false);
    let sq = e2.h.select_rows(&(0..r).collect::<Vec<_>>());
    run(&sq, false).0
}

/// Invariant factors greater than one.
pub fn elementary_divisors(a: &Matrix) -> Vec<Int> {
    invariant_factors(a).into_iter().filter(|d| !d.is_one()).collect()
}
