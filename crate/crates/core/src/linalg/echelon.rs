//! Row Hermite normal form, integer kernels and linear solving.

use super::{Int, Matrix};

/// Result of row reduction: `u * a = h` with `u` unimodular.
///
/// The first `pivots.len()` rows of `h` are nonzero and in echelon form; the
/// remaining rows are zero.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub h: Matrix,
    pub u: Option<Matrix>,
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn sub_row(target: &mut [Int], src: &[Int], q: &Int, from: usize) {
    for (t, s) in target[from..].iter_mut().zip(&src[from..]) {
        if !s.is_zero() {
            t.sub_mul(q, s);
        }
    }
}

fn two_rows(rows: &mut [Vec<Int>], a: usize, b: usize) -> (&mut Vec<Int>, &mut Vec<Int>) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = rows.split_at_mut(b);
        (&mut lo[a], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(a);
        (&mut hi[0], &mut lo[b])
    }
}

/// Row-reduces `a`. With `hermite`, entries above each pivot are reduced into
/// `[0, pivot)` so the result is the Hermite normal form.
pub fn row_echelon(a: &Matrix, transform: bool, hermite: bool) -> RowEchelon {
    let (m, n) = (a.rows(), a.cols());
    let mut h: Vec<Vec<Int>> = a.to_rows();
    let mut u: Vec<Vec<Int>> = if transform {
        Matrix::identity(m).to_rows()
    } else {
        Vec::new()
    };
    let mut pivots = Vec::new();
    let mut p = 0;
    for c in 0..n {
        if p == m {
            break;
        }
        loop {
            let mut best: Option<(usize, Int)> = None;
            for (i, row) in h.iter().enumerate().skip(p) {
                if !row[c].is_zero() {
                    let av = row[c].abs();
                    if best.as_ref().is_none_or(|(_, b)| av < *b) {
                        let one = av.is_one();
                        best = Some((i, av));
                        if one {
                            break;
                        }
                    }
                }
            }
            let Some((bi, _)) = best else { break };
            h.swap(p, bi);
            if transform {
                u.swap(p, bi);
            }
            let mut clean = true;
            for i in p + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_round(&h[p][c]);
                {
                    let (ti, tp) = two_rows(&mut h, i, p);
                    sub_row(ti, tp, &q, c);
                }
                if transform {
                    let (ti, tp) = two_rows(&mut u, i, p);
                    sub_row(ti, tp, &q, 0);
                }
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if p < m && !h[p][c].is_zero() {
            if h[p][c].is_negative() {
                for v in h[p][c..].iter_mut() {
                    *v = -&*v;
                }
                if transform {
                    for v in u[p].iter_mut() {
                        *v = -&*v;
                    }
                }
            }
            if hermite {
                for i in 0..p {
                    if h[i][c].is_zero() {
                        continue;
                    }
                    let q = h[i][c].div_floor(&h[p][c]);
                    if q.is_zero() {
                        continue;
                    }
                    {
                        let (ti, tp) = two_rows(&mut h, i, p);
                        sub_row(ti, tp, &q, c);
                    }
                    if transform {
                        let (ti, tp) = two_rows(&mut u, i, p);
                        sub_row(ti, tp, &q, 0);
                    }
                }
            }
            pivots.push(c);
            p += 1;
        }
    }
    RowEchelon {
        h: Matrix::from_int_rows(h, n),
        u: transform.then(|| Matrix::from_int_rows(u, m)),
        pivots,
    }
}

/// Hermite normal form of the row span, zero rows dropped.
pub fn hnf_rows(a: &Matrix) -> Matrix {
    let e = row_echelon(a, false, true);
    let r = e.rank();
    e.h.select_rows(&(0..r).collect::<Vec<_>>())
}

pub fn rank(a: &Matrix) -> usize {
    if a.rows() > a.cols() {
        row_echelon(&a.transpose(), false, false).rank()
    } else {
        row_echelon(a, false, false).rank()
    }
}

/// Basis (as rows, in Hermite form) of `{x : a x = 0}`.
pub fn kernel(a: &Matrix) -> Matrix {
    let n = a.cols();
    if a.rows() == 0 {
        return Matrix::identity(n);
    }
    let e = row_echelon(&a.transpose(), true, false);
    let r = e.rank();
    let u = e.u.expect("transform requested");
    let k = u.select_rows(&(r..n).collect::<Vec<_>>());
    hnf_rows(&k)
}

/// Solver for `a x = b` with a fixed `a`.
#[derive(Clone, Debug)]
pub struct Solver {
    h: Matrix,
    u: Matrix,
    pivots: Vec<usize>,
    m: usize,
    n: usize,
}

impl Solver {
    pub fn new(a: &Matrix) -> Solver {
        let e = row_echelon(&a.transpose(), true, false);
        Solver {
            h: e.h,
            u: e.u.expect("transform requested"),
            pivots: e.pivots,
            m: a.rows(),
            n: a.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Some integer solution of `a x = b`, if one exists.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.m);
        let r = self.pivots.len();
        let mut y: Vec<Int> = Vec::with_capacity(r);
        for i in 0..r {
            let pc = self.pivots[i];
            let mut val = b[pc].clone();
            for (j, yj) in y.iter().enumerate() {
                let hj = &self.h[(j, pc)];
                if !hj.is_zero() && !yj.is_zero() {
                    val.sub_mul(hj, yj);
                }
            }
            let piv = &self.h[(i, pc)];
            if !piv.divides(&val) {
                return None;
            }
            y.push(val.div_exact(piv));
        }
        for row in 0..self.m {
            let mut acc = Int::ZERO;
            for (j, yj) in y.iter().enumerate() {
                let hj = &self.h[(j, row)];
                if !hj.is_zero() && !yj.is_zero() {
                    acc.add_mul(hj, yj);
                }
            }
            if acc != b[row] {
                return None;
            }
        }
        let mut x = vec![Int::ZERO; self.n];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (xk, uk) in x.iter_mut().zip(self.u.row(i)) {
                if !uk.is_zero() {
                    xk.add_mul(yi, uk);
                }
            }
        }
        Some(x)
    }
}

/// A subgroup of `Z^dim`, stored as Hermite-form basis rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Lattice {
        Lattice {
            dim,
            basis: Matrix::zeros(0, dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Lattice {
        Lattice {
            dim,
            basis: Matrix::identity(dim),
            pivots: (0..dim).collect(),
        }
    }

    /// Lattice spanned by the rows of `gens`.
    pub fn from_rows(gens: &Matrix) -> Lattice {
        let dim = gens.cols();
        let e = row_echelon(gens, false, true);
        let r = e.rank();
        Lattice {
            dim,
            basis: e.h.select_rows(&(0..r).collect::<Vec<_>>()),
            pivots: e.pivots,
        }
    }

    pub fn from_vectors(dim: usize, gens: &[Vec<Int>]) -> Lattice {
        Lattice::from_rows(&Matrix::from_int_rows(gens.to_vec(), dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Int>> {
        self.basis.to_rows()
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut v = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            if v[pc].is_zero() {
                continue;
            }
            let q = v[pc].div_floor(&self.basis[(i, pc)]);
            if !q.is_zero() {
                sub_row(&mut v, self.basis.row(i), &q, pc);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.reduce(v).iter().all(Int::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        (0..other.basis.rows()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::from_rows(&Matrix::vstack(&[&self.basis, &other.basis]))
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    /// Index in `Z^dim`; `None` unless of full rank.
    pub fn index(&self) -> Option<Int> {
        if !self.is_full() {
            return None;
        }
        Some((0..self.dim).map(|i| self.basis[(i, i)].clone()).product())
    }

    /// Coordinates of `v` with respect to the stored basis.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        let mut v = v.to_vec();
        let mut c = Vec::with_capacity(self.rank());
        for (i, &pc) in self.pivots.iter().enumerate() {
            let piv = &self.basis[(i, pc)];
            if !piv.divides(&v[pc]) {
                return None;
            }
            let q = v[pc].div_exact(piv);
            if !q.is_zero() {
                sub_row(&mut v, self.basis.row(i), &q, pc);
            }
            c.push(q);
        }
        v.iter().all(Int::is_zero).then_some(c)
    }

    /// `{x : f x ∈ target}` as a lattice in `Z^{f.cols()}`.
    pub fn preimage(f: &Matrix, target: &Lattice) -> Lattice {
        assert_eq!(f.rows(), target.dim);
        let k = f.cols();
        if target.rank() == 0 {
            return Lattice::from_rows(&kernel(f));
        }
        let aug = Matrix::hstack(&[f, &target.basis.transpose().neg()]);
        let ker = kernel(&aug);
        let cols: Vec<usize> = (0..k).collect();
        Lattice::from_rows(&ker.select_cols(&cols))
    }

    /// Saturation `(L ⊗ Q) ∩ Z^dim`.
    pub fn saturation(&self) -> Lattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let perp = kernel(&self.basis);
        if perp.rows() == 0 {
            return Lattice::full(self.dim);
        }
        Lattice::from_rows(&kernel(&perp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = Matrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
            prop::collection::vec(-6i64..=6, r * c)
                .prop_map(move |v| Matrix::from_i64(&v.chunks(c).map(|x| x.to_vec()).collect::<Vec<_>>()))
        })
    }

    #[test]
    fn hnf_example() {
        let a = Matrix::from_i64(&[vec![2, 4], vec![3, 5]]);
        let e = row_echelon(&a, true, true);
        assert_eq!(e.h, Matrix::from_i64(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(e.u.unwrap().mul(&a), e.h);
    }

    #[test]
    fn kernel_example() {
        let a = Matrix::from_i64(&[vec![1, 1, 1]]);
        let k = kernel(&a);
        assert_eq!(k.rows(), 2);
        for r in k.to_rows() {
            assert!(a.mul_vec(&r).iter().all(Int::is_zero));
        }
    }

    #[test]
    fn saturation_example() {
        let l = Lattice::from_vectors(2, &[vec![Int::from(2), Int::from(4)]]);
        let s = l.saturation();
        assert!(s.contains(&[Int::from(1), Int::from(2)]));
        assert_eq!(s.rank(), 1);
    }

    proptest! {
        #[test]
        fn echelon_transform_invariant(a in small_matrix(5, 5)) {
            let e = row_echelon(&a, true, true);
            let u = e.u.clone().unwrap();
            prop_assert_eq!(u.mul(&a), e.h.clone());
            prop_assert!(u.determinant().abs().is_one());
            for (i, &p) in e.pivots.iter().enumerate() {
                prop_assert!(e.h[(i, p)] > Int::ZERO);
                for j in 0..i {
                    prop_assert!(e.h[(j, p)] >= Int::ZERO && e.h[(j, p)] < e.h[(i, p)]);
                }
            }
        }

        #[test]
        fn kernel_is_saturated_and_annihilated(a in small_matrix(4, 6)) {
            let k = kernel(&a);
            prop_assert_eq!(k.rows() + rank(&a), a.cols());
            for r in k.to_rows() {
                prop_assert!(a.mul_vec(&r).iter().all(Int::is_zero));
            }
            let l = Lattice::from_rows(&k);
            prop_assert_eq!(l.saturation(), l);
        }

        #[test]
        fn solver_recovers_images(a in small_matrix(4, 4), x in prop::collection::vec(-5i64..5, 4)) {
            let x: Vec<Int> = x.iter().take(a.cols()).map(|&v| Int::from(v)).collect();
            let x = if x.len() < a.cols() { vec![Int::ZERO; a.cols()] } else { x };
            let b = a.mul_vec(&x);
            let s = Solver::new(&a);
            let sol = s.solve(&b).expect("b is in the image");
            prop_assert_eq!(a.mul_vec(&sol), b);
        }

        #[test]
        fn reduce_is_canonical(a in small_matrix(3, 3), v in prop::collection::vec(-9i64..9, 3), w in prop::collection::vec(-3i64..3, 3)) {
            let l = Lattice::from_rows(&a);
            let v: Vec<Int> = v.iter().take(a.cols()).map(|&x| Int::from(x)).collect();
            prop_assume!(v.len() == a.cols() && w.len() >= a.rows());
            let mut shifted = v.clone();
            for (i, row) in a.to_rows().iter().enumerate() {
                for (s, e) in shifted.iter_mut().zip(row) {
                    s.add_mul(&Int::from(w[i]), e);
                }
            }
            prop_assert_eq!(l.reduce(&v), l.reduce(&shifted));
        }
    }
}
