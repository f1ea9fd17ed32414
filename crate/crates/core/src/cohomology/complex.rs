//! The complete normalized bar complex and homology of integer complexes.

use super::TateClass;
use crate::config::Config;
use crate::error::Result;
use crate::group::Subgroup;
use crate::linalg::{invariant_factors, kernel, rank, Int, Lattice, Matrix};
use crate::module::{DMap, DModule};
use std::sync::OnceLock;

/// One term of an integer cochain complex: `Z^dim` modulo relations.
#[derive(Clone, Debug)]
pub struct Term {
    pub dim: usize,
    pub rel: Option<Lattice>,
}

impl Term {
    pub fn free(dim: usize) -> Term {
        Term { dim, rel: None }
    }

    pub fn direct_sum(a: &Term, b: &Term) -> Term {
        let rel = match (&a.rel, &b.rel) {
            (None, None) => None,
            _ => {
                let ra = a.rel.as_ref().map_or(Matrix::zeros(0, a.dim), |l| l.basis().clone());
                let rb = b.rel.as_ref().map_or(Matrix::zeros(0, b.dim), |l| l.basis().clone());
                Some(Lattice::from_rows(&Matrix::block_diag(&[&ra, &rb])))
            }
        };
        Term {
            dim: a.dim + b.dim,
            rel,
        }
    }

    fn rel_rows(&self) -> Matrix {
        self.rel
            .as_ref()
            .map_or(Matrix::zeros(0, self.dim), |l| l.basis().clone())
    }
}

/// `H = {x : d_out x ∈ rel_out} / (im d_in + rel_mid)`.
#[derive(Debug)]
pub struct Homology {
    d_in: Matrix,
    d_out: Matrix,
    mid: Term,
    out: Term,
    pub class: TateClass,
    pub free_rank: usize,
    cycles: OnceLock<Lattice>,
}

impl Homology {
    pub fn compute(d_in: Matrix, mid: Term, d_out: Matrix, out: Term) -> Homology {
        assert_eq!(d_in.rows(), mid.dim);
        assert_eq!(d_out.cols(), mid.dim);
        assert_eq!(d_out.rows(), out.dim);
        let cycles = OnceLock::new();
        let (class, free_rank) = if mid.rel.is_none() && out.rel.is_none() {
            // The cycle lattice is saturated, so the torsion of Z/B is that of coker(d_in).
            let inv = invariant_factors(&d_in);
            let zrank = mid.dim - rank(&d_out);
            (TateClass::from_invariants(&inv), zrank - inv.len())
        } else {
            let z = cycle_lattice(&d_out, &out);
            let b = Matrix::vstack(&[&d_in.transpose(), &mid.rel_rows()]);
            let coords: Vec<Vec<Int>> = b
                .to_rows()
                .iter()
                .map(|v| z.coordinates(v).expect("boundaries are cycles"))
                .collect();
            let inv = invariant_factors(&Matrix::from_int_rows(coords, z.rank()));
            let fr = z.rank() - inv.len();
            let _ = cycles.set(z);
            (TateClass::from_invariants(&inv), fr)
        };
        Homology {
            d_in,
            d_out,
            mid,
            out,
            class,
            free_rank,
            cycles,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Int {
        self.class.order()
    }

    fn cycles(&self) -> &Lattice {
        self.cycles.get_or_init(|| cycle_lattice(&self.d_out, &self.out))
    }

    /// `|Z / (B + extra)|` for extra cycles given as rows; assumes finiteness.
    fn quotient_order(&self, extra: &Matrix) -> Int {
        let b = Matrix::vstack(&[&self.d_in.transpose(), &self.mid.rel_rows(), extra]);
        if self.mid.rel.is_none() && self.out.rel.is_none() {
            invariant_factors(&b).into_iter().product()
        } else {
            let z = self.cycles();
            let coords: Vec<Vec<Int>> = b.to_rows().iter().map(|v| z.coordinates(v).expect("cycles")).collect();
            let m = Matrix::from_int_rows(coords, z.rank());
            invariant_factors(&m).into_iter().product()
        }
    }
}

fn cycle_lattice(d_out: &Matrix, out: &Term) -> Lattice {
    match &out.rel {
        None => Lattice::from_rows(&kernel(d_out)),
        Some(r) => Lattice::preimage(d_out, r),
    }
}

/// Order of the image of the map induced by the chain-level matrix `f`.
/// Both homology groups must be finite.
pub fn image_order(f: &Matrix, src: &Homology, dst: &Homology) -> Int {
    assert_eq!(f.cols(), src.mid.dim);
    assert_eq!(f.rows(), dst.mid.dim);
    if src.class.is_zero() || dst.class.is_zero() {
        return Int::ONE;
    }
    let fz = f.mul(&src.cycles().basis().transpose()).transpose();
    let co = dst.quotient_order(&fz);
    dst.order().div_exact(&co)
}

/// The complete normalized bar complex `Ĉ^n(Θ, M)`.
///
/// Degree `n ≥ 0`: maps `(Θ∖1)^n → M`. Degree `-1-n`: `Z[(Θ∖1)^n] ⊗ M`.
/// Coordinates are `tuple_index * ngens + generator`, tuples in lexicographic
/// order of their entries' positions in `Θ∖1`.
#[derive(Clone, Debug)]
pub struct TateComplex {
    module: DModule,
    elems: Vec<usize>,
    identity: usize,
    pos: Vec<Option<usize>>,
}

impl TateComplex {
    pub fn new(module: &DModule, theta: &Subgroup) -> TateComplex {
        let g = module.group();
        let elems: Vec<usize> = theta
            .elements()
            .iter()
            .copied()
            .filter(|&x| x != g.identity())
            .collect();
        let mut pos = vec![None; g.order()];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = Some(i);
        }
        TateComplex {
            module: module.clone(),
            elems,
            identity: g.identity(),
            pos,
        }
    }

    pub fn module(&self) -> &DModule {
        &self.module
    }

    fn tuple_len(n: i64) -> usize {
        if n >= 0 {
            n as usize
        } else {
            (-1 - n) as usize
        }
    }

    fn ntuples(&self, len: usize) -> usize {
        self.elems.len().pow(len as u32)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.ntuples(Self::tuple_len(n)) * self.module.ngens()
    }

    pub fn term(&self, n: i64) -> Term {
        let t = self.ntuples(Self::tuple_len(n));
        if self.module.is_lattice() {
            return Term::free(t * self.module.ngens());
        }
        let r = self.module.relations();
        Term {
            dim: t * self.module.ngens(),
            rel: Some(Lattice::from_rows(&r.repeat_diag(t))),
        }
    }

    fn decode(&self, mut idx: usize, len: usize) -> Vec<usize> {
        let m = self.elems.len();
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = idx % m;
            idx /= m;
        }
        t
    }

    fn encode(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &x| acc * self.elems.len() + x)
    }

    /// Index of the tuple obtained by merging slots `i` and `i+1`, or `None`
    /// when the product is the identity (a degenerate tuple).
    fn merged(&self, t: &[usize], i: usize) -> Option<usize> {
        let g = self.module.group();
        let p = g.mul(self.elems[t[i]], self.elems[t[i + 1]]);
        if p == self.identity {
            return None;
        }
        let mut u: Vec<usize> = Vec::with_capacity(t.len() - 1);
        u.extend_from_slice(&t[..i]);
        u.push(self.pos[p].expect("closed"));
        u.extend_from_slice(&t[i + 2..]);
        Some(self.encode(&u))
    }

    /// `d^n : Ĉ^n → Ĉ^{n+1}`.
    pub fn differential(&self, n: i64, cfg: &Config) -> Result<Matrix> {
        let (src, dst) = (self.dim(n), self.dim(n + 1));
        cfg.check_dim("cochain dimension", src.max(dst))?;
        cfg.check_cancel()?;
        let k = self.module.ngens();
        let mut d = Matrix::zeros(dst, src);
        let add_block = |d: &mut Matrix, r: usize, c: usize, a: &Matrix, sign: i64| {
            for i in 0..k {
                for j in 0..k {
                    let v = &a[(i, j)];
                    if !v.is_zero() {
                        if sign > 0 {
                            d[(r * k + i, c * k + j)] += v;
                        } else {
                            d[(r * k + i, c * k + j)] -= v;
                        }
                    }
                }
            }
        };
        let add_id = |d: &mut Matrix, r: usize, c: usize, sign: i64| {
            let s = Int::from(sign);
            for i in 0..k {
                d[(r * k + i, c * k + i)] += &s;
            }
        };
        if n == -1 {
            let norm = self.module.norm_matrix(
                &std::iter::once(self.identity)
                    .chain(self.elems.iter().copied())
                    .collect::<Vec<_>>(),
            );
            add_block(&mut d, 0, 0, &norm, 1);
        } else if n >= 0 {
            let len = n as usize + 1;
            for r in 0..self.ntuples(len) {
                let t = self.decode(r, len);
                let a = self.module.action(self.elems[t[0]]);
                add_block(&mut d, r, self.encode(&t[1..]), a, 1);
                for i in 0..len - 1 {
                    if let Some(c) = self.merged(&t, i) {
                        add_id(&mut d, r, c, if (i + 1) % 2 == 0 { 1 } else { -1 });
                    }
                }
                add_id(&mut d, r, self.encode(&t[..len - 1]), if len.is_multiple_of(2) { 1 } else { -1 });
            }
        } else {
            // ∂ on C_len → C_{len-1}, len = -1 - n.
            let len = (-1 - n) as usize;
            let g = self.module.group();
            for c in 0..self.ntuples(len) {
                let t = self.decode(c, len);
                let inv = self.module.action(g.inv(self.elems[t[0]]));
                add_block(&mut d, self.encode(&t[1..]), c, inv, 1);
                for i in 0..len - 1 {
                    if let Some(r) = self.merged(&t, i) {
                        add_id(&mut d, r, c, if (i + 1) % 2 == 0 { 1 } else { -1 });
                    }
                }
                add_id(&mut d, self.encode(&t[..len - 1]), c, if len.is_multiple_of(2) { 1 } else { -1 });
            }
        }
        if let Some(rel) = self.term(n + 1).rel {
            let cols: Vec<Vec<Int>> = d.to_columns().iter().map(|c| rel.reduce(c)).collect();
            d = Matrix::from_columns(&cols, dst);
        }
        Ok(d)
    }

    /// Homology in Tate degree `n`.
    pub fn homology(&self, n: i64, cfg: &Config) -> Result<Homology> {
        Ok(Homology::compute(
            self.differential(n - 1, cfg)?,
            self.term(n),
            self.differential(n, cfg)?,
            self.term(n + 1),
        ))
    }

    /// The chain map `Ĉ^n(f)` for an equivariant `f` out of this complex's module.
    pub fn chain_map(&self, f: &DMap, n: i64) -> Matrix {
        f.matrix().repeat_diag(self.ntuples(Self::tuple_len(n)))
    }
}
