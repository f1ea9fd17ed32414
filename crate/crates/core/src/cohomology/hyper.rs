//! Tate hypercohomology of two-term complexes `[L → U]` in degrees −1, 0.

use super::complex::{image_order, Homology, TateComplex, Term};
use super::TateClass;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::linalg::{Int, Matrix};
use crate::module::{cokernel, kernel, DMap, DModule};
use serde::Serialize;

/// `lower → upper`, with `lower` in degree −1.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    pub d: DMap,
}

impl TwoTermComplex {
    pub fn new(d: DMap) -> TwoTermComplex {
        TwoTermComplex { d }
    }

    pub fn lower(&self) -> &DModule {
        self.d.source()
    }

    pub fn upper(&self) -> &DModule {
        self.d.target()
    }

    /// `[M → 0]`, computing `Ĥ^{i+1}(M)` in degree `i`.
    pub fn shifted(m: &DModule) -> TwoTermComplex {
        TwoTermComplex::new(DMap::zero(m, &DModule::zero(m.group())))
    }

    /// `[0 → M]`, computing `Ĥ^i(M)`.
    pub fn concentrated(m: &DModule) -> TwoTermComplex {
        TwoTermComplex::new(DMap::zero(&DModule::zero(m.group()), m))
    }
}

/// A morphism of two-term complexes: a commuting square.
#[derive(Clone, Debug)]
pub struct TwoTermMap {
    pub lower: DMap,
    pub upper: DMap,
}

impl TwoTermMap {
    pub fn new(src: &TwoTermComplex, dst: &TwoTermComplex, lower: DMap, upper: DMap) -> Result<TwoTermMap> {
        let a = upper.after(&src.d);
        let b = dst.d.after(&lower);
        if !a.equals(&b) {
            return Err(Error::verification("complex map", "square does not commute"));
        }
        Ok(TwoTermMap { lower, upper })
    }

    /// The induced map `ker d_src → ker d_dst`.
    pub fn on_kernels(&self, src: &TwoTermComplex, dst: &TwoTermComplex) -> DMap {
        let ks = kernel(&src.d).inclusion;
        let kd = kernel(&dst.d).inclusion;
        kd.lift(&self.lower.after(&ks)).expect("complex maps preserve kernels")
    }

    /// The induced map `coker d_src → coker d_dst`.
    pub fn on_cokernels(&self, src: &TwoTermComplex, dst: &TwoTermComplex) -> DMap {
        let cs = cokernel(&src.d).projection;
        let cd = cokernel(&dst.d).projection;
        cs.descend(&cd.after(&self.upper))
            .expect("complex maps preserve cokernels")
    }

    /// Both induced maps are isomorphisms.
    pub fn is_quasi_iso(&self, src: &TwoTermComplex, dst: &TwoTermComplex) -> bool {
        self.on_kernels(src, dst).is_iso() && self.on_cokernels(src, dst).is_iso()
    }
}

/// The total complex `Tot^n = Ĉ^{n+1}(L) ⊕ Ĉ^n(U)`, `D(a, b) = (−d a, f a + d b)`.
#[derive(Clone, Debug)]
pub struct HyperComplex {
    complex: TwoTermComplex,
    lower: TateComplex,
    upper: TateComplex,
}

impl HyperComplex {
    pub fn new(c: &TwoTermComplex, theta: &Subgroup) -> HyperComplex {
        HyperComplex {
            complex: c.clone(),
            lower: TateComplex::new(c.lower(), theta),
            upper: TateComplex::new(c.upper(), theta),
        }
    }

    pub fn term(&self, n: i64) -> Term {
        Term::direct_sum(&self.lower.term(n + 1), &self.upper.term(n))
    }

    pub fn dim(&self, n: i64) -> usize {
        self.lower.dim(n + 1) + self.upper.dim(n)
    }

    pub fn differential(&self, n: i64, cfg: &Config) -> Result<Matrix> {
        let dl = self.lower.differential(n + 1, cfg)?;
        let du = self.upper.differential(n, cfg)?;
        let f = self.lower.chain_map(&self.complex.d, n + 1);
        let (a_out, u_out) = (self.lower.dim(n + 2), self.upper.dim(n + 1));
        let (a_in, u_in) = (self.lower.dim(n + 1), self.upper.dim(n));
        let mut d = Matrix::zeros(a_out + u_out, a_in + u_in);
        d.set_block(0, 0, &dl.neg());
        d.set_block(a_out, 0, &f);
        d.set_block(a_out, a_in, &du);
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

    /// Chain-level matrix `Tot^n(src) → Tot^n(dst)` of a complex morphism.
    pub fn induced(&self, m: &TwoTermMap, n: i64) -> Matrix {
        let a = self.lower.chain_map(&m.lower, n + 1);
        let b = self.upper.chain_map(&m.upper, n);
        Matrix::block_diag(&[&a, &b])
    }

    /// `Ĉ^n(U) → Tot^n`.
    pub fn upper_inclusion(&self, n: i64) -> Matrix {
        let (a, u) = (self.lower.dim(n + 1), self.upper.dim(n));
        let mut m = Matrix::zeros(a + u, u);
        m.set_block(a, 0, &Matrix::identity(u));
        m
    }

    /// `Tot^n → Ĉ^{n+1}(L)`.
    pub fn lower_projection(&self, n: i64) -> Matrix {
        let (a, u) = (self.lower.dim(n + 1), self.upper.dim(n));
        let mut m = Matrix::zeros(a, a + u);
        m.set_block(0, 0, &Matrix::identity(a));
        m
    }

    pub fn lower_complex(&self) -> &TateComplex {
        &self.lower
    }

    pub fn upper_complex(&self) -> &TateComplex {
        &self.upper
    }
}

/// `ℍ^i(Θ, [L → U])`.
pub fn hyper_tate(c: &TwoTermComplex, theta: &Subgroup, i: i64, cfg: &Config) -> Result<TateClass> {
    let h = HyperComplex::new(c, theta).homology(i, cfg)?;
    if !h.is_finite() {
        return Err(Error::verification("hyper_tate", "hypercohomology is not finite"));
    }
    Ok(h.class)
}

#[derive(Clone, Debug, Serialize)]
pub struct LesNode {
    pub label: String,
    pub class: TateClass,
}

/// A stretch of a long exact sequence with the image order of each map.
#[derive(Clone, Debug, Serialize)]
pub struct LesExcerpt {
    pub nodes: Vec<LesNode>,
    /// `image_orders[k]` is for the map `nodes[k] → nodes[k+1]`.
    pub image_orders: Vec<Int>,
    /// Whether each composite `nodes[k] → nodes[k+2]` vanishes.
    pub composites_zero: Vec<bool>,
    /// Exactness at each interior node.
    pub exact_at: Vec<bool>,
    pub exact: bool,
}

impl LesExcerpt {
    pub fn assemble(nodes: Vec<LesNode>, image_orders: Vec<Int>, composites_zero: Vec<bool>) -> LesExcerpt {
        let mut exact_at = Vec::new();
        for j in 1..nodes.len() - 1 {
            let ok = composites_zero[j - 1] && &image_orders[j - 1] * &image_orders[j] == nodes[j].class.order();
            exact_at.push(ok);
        }
        let exact = exact_at.iter().all(|&b| b);
        LesExcerpt {
            nodes,
            image_orders,
            composites_zero,
            exact_at,
            exact,
        }
    }
}

/// `Ĥ^i(L) → Ĥ^i(U) → ℍ^i → Ĥ^{i+1}(L) → Ĥ^{i+1}(U) → ℍ^{i+1}`.
pub fn hyper_tate_les(c: &TwoTermComplex, theta: &Subgroup, i: i64, cfg: &Config) -> Result<LesExcerpt> {
    let hc = HyperComplex::new(c, theta);
    let (tl, tu) = (hc.lower_complex(), hc.upper_complex());
    let hl = [tl.homology(i, cfg)?, tl.homology(i + 1, cfg)?];
    let hu = [tu.homology(i, cfg)?, tu.homology(i + 1, cfg)?];
    let hh = [hc.homology(i, cfg)?, hc.homology(i + 1, cfg)?];
    let f = |n: i64| tl.chain_map(&c.d, n);
    let mut images = Vec::new();
    let mut zero = Vec::new();
    // Ĥ^i(L) → Ĥ^i(U)
    images.push(image_order(&f(i), &hl[0], &hu[0]));
    // Ĥ^i(U) → ℍ^i
    images.push(image_order(&hc.upper_inclusion(i), &hu[0], &hh[0]));
    // ℍ^i → Ĥ^{i+1}(L)
    images.push(image_order(&hc.lower_projection(i), &hh[0], &hl[1]));
    // Ĥ^{i+1}(L) → Ĥ^{i+1}(U)
    images.push(image_order(&f(i + 1), &hl[1], &hu[1]));
    // Ĥ^{i+1}(U) → ℍ^{i+1}
    images.push(image_order(&hc.upper_inclusion(i + 1), &hu[1], &hh[1]));
    zero.push(image_order(&hc.upper_inclusion(i).mul(&f(i)), &hl[0], &hh[0]).is_one());
    zero.push(hc.lower_projection(i).mul(&hc.upper_inclusion(i)).is_zero());
    zero.push(image_order(&f(i + 1).mul(&hc.lower_projection(i)), &hh[0], &hu[1]).is_one());
    zero.push(image_order(&hc.upper_inclusion(i + 1).mul(&f(i + 1)), &hl[1], &hh[1]).is_one());
    let nodes = vec![
        LesNode {
            label: format!("H^{i}(lower)"),
            class: hl[0].class.clone(),
        },
        LesNode {
            label: format!("H^{i}(upper)"),
            class: hu[0].class.clone(),
        },
        LesNode {
            label: format!("HH^{i}"),
            class: hh[0].class.clone(),
        },
        LesNode {
            label: format!("H^{}(lower)", i + 1),
            class: hl[1].class.clone(),
        },
        LesNode {
            label: format!("H^{}(upper)", i + 1),
            class: hu[1].class.clone(),
        },
        LesNode {
            label: format!("HH^{}", i + 1),
            class: hh[1].class.clone(),
        },
    ];
    Ok(LesExcerpt::assemble(nodes, images, zero))
}
