//! Tate hypercohomology of bounded complexes `C^a → … → C^b`.

use super::complex::{Homology, TateComplex, Term};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::linalg::Matrix;
use crate::module::{DMap, DModule};

/// Terms in degrees `low, low + 1, …` with differentials between neighbours.
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    low: i64,
    terms: Vec<DModule>,
    maps: Vec<DMap>,
}

impl ModuleComplex {
    pub fn new(low: i64, terms: Vec<DModule>, maps: Vec<DMap>) -> Result<ModuleComplex> {
        if terms.is_empty() || maps.len() + 1 != terms.len() {
            return Err(Error::Input(
                "a complex needs one map between each pair of terms".to_string(),
            ));
        }
        for (k, d) in maps.iter().enumerate() {
            if d.source() != &terms[k] || d.target() != &terms[k + 1] {
                return Err(Error::Input(format!("differential {k} does not match its terms")));
            }
        }
        for (k, w) in maps.windows(2).enumerate() {
            if !w[1].after(&w[0]).is_zero() {
                return Err(Error::verification("complex", format!("d∘d ≠ 0 after term {k}")));
            }
        }
        Ok(ModuleComplex { low, terms, maps })
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(DModule::is_zero)
    }

    pub fn terms(&self) -> &[DModule] {
        &self.terms
    }

    pub fn maps(&self) -> &[DMap] {
        &self.maps
    }
}

/// A morphism of complexes over the same degree range, one map per degree.
#[derive(Clone, Debug)]
pub struct ComplexMorphism {
    pub components: Vec<DMap>,
}

impl ComplexMorphism {
    pub fn new(src: &ModuleComplex, dst: &ModuleComplex, components: Vec<DMap>) -> Result<ComplexMorphism> {
        if src.low != dst.low || src.len() != dst.len() || components.len() != src.len() {
            return Err(Error::Input(
                "complex morphism needs matching degree ranges".to_string(),
            ));
        }
        for k in 0..src.maps.len() {
            let a = dst.maps[k].after(&components[k]);
            let b = components[k + 1].after(&src.maps[k]);
            if !a.equals(&b) {
                return Err(Error::verification(
                    "complex morphism",
                    format!("square {k} does not commute"),
                ));
            }
        }
        Ok(ComplexMorphism { components })
    }
}

/// `Tot^n = ⊕_k Ĉ^{n−k}(C^k)` with `D = (−1)^k δ + Ĉ(d_k)`.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    complex: ModuleComplex,
    tate: Vec<TateComplex>,
}

impl TotalComplex {
    pub fn new(c: &ModuleComplex, theta: &Subgroup) -> TotalComplex {
        TotalComplex {
            complex: c.clone(),
            tate: c.terms.iter().map(|m| TateComplex::new(m, theta)).collect(),
        }
    }

    fn degree(&self, k: usize) -> i64 {
        self.complex.low + k as i64
    }

    fn dims(&self, n: i64) -> Vec<usize> {
        (0..self.tate.len())
            .map(|k| self.tate[k].dim(n - self.degree(k)))
            .collect()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims(n).iter().sum()
    }

    pub fn term(&self, n: i64) -> Term {
        let mut t = Term::free(0);
        for (k, tc) in self.tate.iter().enumerate() {
            t = Term::direct_sum(&t, &tc.term(n - self.degree(k)));
        }
        t
    }

    pub fn differential(&self, n: i64, cfg: &Config) -> Result<Matrix> {
        let src = self.dims(n);
        let dst = self.dims(n + 1);
        let off = |d: &[usize], k: usize| d[..k].iter().sum::<usize>();
        let mut d = Matrix::zeros(dst.iter().sum(), src.iter().sum());
        for k in 0..self.tate.len() {
            let deg = n - self.degree(k);
            let mut inner = self.tate[k].differential(deg, cfg)?;
            if self.degree(k).rem_euclid(2) == 1 {
                inner = inner.neg();
            }
            d.set_block(off(&dst, k), off(&src, k), &inner);
            if k + 1 < self.tate.len() {
                let f = self.tate[k].chain_map(&self.complex.maps[k], deg);
                d.set_block(off(&dst, k + 1), off(&src, k), &f);
            }
        }
        Ok(d)
    }

    pub fn homology(&self, n: i64, cfg: &Config) -> Result<Homology> {
        Ok(Homology::compute(
            self.differential(n - 1, cfg)?,
            self.term(n),
            self.differential(n, cfg)?,
            self.term(n + 1),
        ))
    }

    /// Chain-level matrix `Tot^n(self) → Tot^n(dst)` of a morphism out of this complex.
    pub fn induced(&self, m: &ComplexMorphism, n: i64) -> Matrix {
        let blocks: Vec<Matrix> = (0..self.tate.len())
            .map(|k| self.tate[k].chain_map(&m.components[k], n - self.degree(k)))
            .collect();
        Matrix::block_diag(&blocks.iter().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{hyper_tate, tate, TwoTermComplex};
    use crate::group::FiniteGroup;
    use crate::module::permutation_module;

    #[test]
    fn agrees_with_two_term_complexes() {
        let cfg = Config::default();
        let g = FiniteGroup::cyclic(2);
        let reg = permutation_module(&g, &[(g.trivial_subgroup(), 1)]);
        let z = DModule::trivial(&g, 1);
        let eps = DMap::new(&reg, &z, Matrix::from_i64(&[vec![1, 1]])).unwrap();
        let c = ModuleComplex::new(-1, vec![reg.clone(), z.clone()], vec![eps.clone()]).unwrap();
        let t = TotalComplex::new(&c, &g.whole());
        for n in -2..=2 {
            let a = t.homology(n, &cfg).unwrap().class;
            let b = hyper_tate(&TwoTermComplex::new(eps.clone()), &g.whole(), n, &cfg).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn three_term_resolution_computes_its_cohomology() {
        // [Z → Z[Δ] → Z[Δ]] in degrees −2..0 for Δ = Z/2, with maps N and 1 − σ,
        // is quasi-isomorphic to Z in degree 0.
        let cfg = Config::default();
        let g = FiniteGroup::cyclic(2);
        let reg = permutation_module(&g, &[(g.trivial_subgroup(), 1)]);
        let z = DModule::trivial(&g, 1);
        let norm = DMap::new(&z, &reg, Matrix::from_i64(&[vec![1], vec![1]])).unwrap();
        let diff = DMap::new(&reg, &reg, Matrix::from_i64(&[vec![1, -1], vec![-1, 1]])).unwrap();
        let c = ModuleComplex::new(-2, vec![z.clone(), reg.clone(), reg], vec![norm, diff]).unwrap();
        let t = TotalComplex::new(&c, &g.whole());
        for n in -2..=2 {
            let got = t.homology(n, &cfg).unwrap().class;
            let want = tate(&g.whole(), &z, n, &cfg).unwrap();
            assert_eq!(got, want, "degree {n}");
        }
    }
}
