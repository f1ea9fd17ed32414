//! Root data with a Δ-action and the lattices attached to them.
//!
//! Characters `X = Z^n` carry the module action `x ↦ A_g x`; cocharacters
//! `Y = Z^n` carry the contragredient `y ↦ A_{g⁻¹}^T y`, and the pairing is the
//! dot product.

mod construct;
mod morphism;

pub use construct::{DatumSequence, DerivedFactorization, ProductDatum, SequenceKind};
pub use morphism::DatumMorphism;

use crate::cohomology::TwoTermComplex;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{dot, Int, Lattice, Matrix, Solver};
use crate::module::{
    check_exact, cokernel, dual, exact_at, quotient_by, sublattice_module, torsion_free_quotient, DMap, DModule,
};
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

/// Raw root datum: the character lattice with its action, roots in `X` and
/// coroots in `Y` indexed in bijection.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub x: DModule,
    pub roots: Vec<Vec<Int>>,
    pub coroots: Vec<Vec<Int>>,
}

fn reflect(v: &[Int], a: &[Int], coef: &Int) -> Vec<Int> {
    v.iter().zip(a).map(|(x, y)| x - &(coef * y)).collect()
}

impl RootDatum {
    pub fn new(x: &DModule, roots: Vec<Vec<Int>>, coroots: Vec<Vec<Int>>) -> RootDatum {
        RootDatum {
            x: x.clone(),
            roots,
            coroots,
        }
    }

    pub fn torus(x: &DModule) -> RootDatum {
        RootDatum::new(x, Vec::new(), Vec::new())
    }

    /// Closes simple roots and coroots under the simple reflections.
    pub fn from_simple(x: &DModule, simple: &[Vec<Int>], simple_co: &[Vec<Int>]) -> RootDatum {
        let mut roots: Vec<Vec<Int>> = Vec::new();
        let mut coroots: Vec<Vec<Int>> = Vec::new();
        let mut seen: HashMap<Vec<Int>, usize> = HashMap::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (a, c) in simple.iter().zip(simple_co) {
            if !seen.contains_key(a) {
                seen.insert(a.clone(), roots.len());
                queue.push_back(roots.len());
                roots.push(a.clone());
                coroots.push(c.clone());
            }
        }
        while let Some(i) = queue.pop_front() {
            for (a, c) in simple.iter().zip(simple_co) {
                let r = reflect(&roots[i], a, &dot(&roots[i], c));
                if !seen.contains_key(&r) {
                    let rc = reflect(&coroots[i], c, &dot(a, &coroots[i]));
                    seen.insert(r.clone(), roots.len());
                    queue.push_back(roots.len());
                    roots.push(r);
                    coroots.push(rc);
                }
            }
        }
        RootDatum::new(x, roots, coroots)
    }

    pub fn group(&self) -> &FiniteGroup {
        self.x.group()
    }

    pub fn rank(&self) -> usize {
        self.x.ngens()
    }

    fn violation(axiom: &str, witness: String) -> Error {
        Error::AxiomViolation {
            axiom: axiom.to_string(),
            witness,
        }
    }

    /// Checks the root datum axioms and compatibility of the action.
    pub fn check(&self) -> Result<()> {
        let n = self.rank();
        if !self.x.is_lattice() {
            return Err(Error::HasTorsion);
        }
        if self.roots.len() != self.coroots.len() {
            return Err(Self::violation(
                "bijection",
                format!("{} roots but {} coroots", self.roots.len(), self.coroots.len()),
            ));
        }
        let mut index: HashMap<&[Int], usize> = HashMap::new();
        for (i, (a, c)) in self.roots.iter().zip(&self.coroots).enumerate() {
            if a.len() != n || c.len() != n {
                return Err(Error::Input(format!("root {i} does not have length {n}")));
            }
            if index.insert(a.as_slice(), i).is_some() {
                return Err(Self::violation("distinct", format!("root {i} is repeated")));
            }
            let p = dot(a, c);
            if p != 2 {
                return Err(Self::violation("pairing", format!("<root {i}, coroot {i}> = {p}")));
            }
        }
        let mut coindex: HashMap<&[Int], usize> = HashMap::new();
        for (i, c) in self.coroots.iter().enumerate() {
            if coindex.insert(c.as_slice(), i).is_some() {
                return Err(Self::violation("distinct", format!("coroot {i} is repeated")));
            }
        }
        for (i, a) in self.roots.iter().enumerate() {
            let twice: Vec<Int> = a.iter().map(|v| v * &Int::from(2)).collect();
            if let Some(&j) = index.get(twice.as_slice()) {
                return Err(Self::violation("reduced", format!("root {j} is twice root {i}")));
            }
        }
        for (i, (a, ac)) in self.roots.iter().zip(&self.coroots).enumerate() {
            for (j, (b, bc)) in self.roots.iter().zip(&self.coroots).enumerate() {
                let r = reflect(b, a, &dot(b, ac));
                let rc = reflect(bc, ac, &dot(a, bc));
                let k = index.get(r.as_slice()).ok_or_else(|| {
                    Self::violation("reflection", format!("s_{i} maps root {j} outside the root set"))
                })?;
                if self.coroots[*k] != rc {
                    return Err(Self::violation(
                        "reflection",
                        format!("s_{i} on coroot {j} does not give coroot {k}"),
                    ));
                }
            }
        }
        let g = self.group();
        for s in g.elements() {
            let a = self.x.action(s);
            let ac = self.x.action(g.inv(s)).transpose();
            for (j, (b, bc)) in self.roots.iter().zip(&self.coroots).enumerate() {
                let gb = a.mul_vec(b);
                let Some(&k) = index.get(gb.as_slice()) else {
                    return Err(Error::ActionNotCompatible {
                        element: s,
                        detail: format!("root {j} is mapped outside the root set"),
                    });
                };
                if ac.mul_vec(bc) != self.coroots[k] {
                    return Err(Error::ActionNotCompatible {
                        element: s,
                        detail: format!("coroot {j} is not mapped to coroot {k}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The four-term sequence `0 → X₀ → X/ZΦ → P/ZΦ → μ → 0`.
#[derive(Clone, Debug)]
pub struct CenterSequence {
    pub x0_to_center: DMap,
    pub center_to_p: DMap,
    pub p_to_mu: DMap,
}

#[derive(Debug)]
struct Inner {
    rd: RootDatum,
    x0: DMap,
    root_lattice: Lattice,
    to_center: DMap,
    to_radical: DMap,
    coroot_basis: Matrix,
    to_p: DMap,
    p_to_center: DMap,
    to_mu: DMap,
    y: DModule,
    to_pi1: DMap,
    sequence: CenterSequence,
}

/// A validated root datum with its derived lattices.
#[derive(Clone, Debug)]
pub struct GroupDatum(Arc<Inner>);

/// `P` as the dual of the coroot lattice with basis `B`, so `X → P` is `x ↦ Bx`.
fn weight_module(x: &DModule, b: &Matrix) -> Result<(DModule, DMap)> {
    let g = x.group();
    let r = b.rows();
    let bt = b.transpose();
    let solver = Solver::new(&bt);
    let mut action = Vec::with_capacity(g.order());
    for s in g.elements() {
        let rhs = x.action(s).transpose().mul(&bt);
        let mut cols = Vec::with_capacity(r);
        for c in rhs.to_columns() {
            cols.push(solver.solve(&c).ok_or_else(|| Error::ActionNotCompatible {
                element: s,
                detail: "coroot lattice is not stable".to_string(),
            })?);
        }
        action.push(Matrix::from_columns(&cols, r).transpose());
    }
    let p = DModule::lattice(g, action)?;
    let to_p = DMap::new(x, &p, b.clone())?;
    Ok((p, to_p))
}

impl GroupDatum {
    pub fn new(rd: RootDatum) -> Result<GroupDatum> {
        rd.check()?;
        let x = rd.x.clone();
        let n = x.ngens();
        let co = if rd.coroots.is_empty() {
            Matrix::zeros(0, n)
        } else {
            Matrix::from_int_rows(rd.coroots.clone(), n)
        };
        let x0_lat = Lattice::from_rows(&crate::linalg::kernel(&co));
        let (_, x0) = sublattice_module(&x, &x0_lat)?;
        let root_lattice = Lattice::from_vectors(n, &rd.roots);
        let (_, to_center) = quotient_by(&x, &rd.roots);
        let (_, to_radical) = torsion_free_quotient(to_center.target());
        let to_radical = to_radical.after(&to_center);
        let coroot_basis = Lattice::from_vectors(n, &rd.coroots).basis().clone();
        let (p, to_p) = weight_module(&x, &coroot_basis)?;
        let root_images: Vec<Vec<Int>> = rd.roots.iter().map(|a| to_p.apply(a)).collect();
        let (_, p_to_center) = quotient_by(&p, &root_images);
        let to_mu = cokernel(&to_p).projection;
        let y = dual(&x)?;
        let (_, to_pi1) = quotient_by(&y, &rd.coroots);
        let center_to_p = to_center
            .descend(&p_to_center.after(&to_p))
            .ok_or_else(|| Error::ExactnessFailure("center map does not descend".to_string()))?;
        let p_to_mu = p_to_center
            .descend(&to_mu)
            .ok_or_else(|| Error::ExactnessFailure("P/ZΦ → μ does not descend".to_string()))?;
        let sequence = CenterSequence {
            x0_to_center: to_center.after(&x0),
            center_to_p,
            p_to_mu,
        };
        let gd = GroupDatum(Arc::new(Inner {
            rd,
            x0,
            root_lattice,
            to_center,
            to_radical,
            coroot_basis,
            to_p,
            p_to_center,
            to_mu,
            y,
            to_pi1,
            sequence,
        }));
        gd.audit_center_sequence()?;
        Ok(gd)
    }

    fn audit_center_sequence(&self) -> Result<()> {
        let s = &self.0.sequence;
        let ok = s.x0_to_center.is_injective()
            && exact_at(&s.x0_to_center, &s.center_to_p)
            && exact_at(&s.center_to_p, &s.p_to_mu)
            && s.p_to_mu.is_surjective();
        if !ok {
            return Err(Error::ExactnessFailure("0 → X₀ → X/ZΦ → P/ZΦ → μ → 0".to_string()));
        }
        check_exact(&self.0.x0, &self.to_derived_quotient())?;
        Ok(())
    }

    /// `X → X/X₀`, realized as the image of `X` in `P`.
    fn to_derived_quotient(&self) -> DMap {
        crate::module::image(&self.0.to_p).surjection
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.0.rd
    }

    pub fn group(&self) -> &FiniteGroup {
        self.0.rd.group()
    }

    pub fn characters(&self) -> &DModule {
        &self.0.rd.x
    }

    pub fn roots(&self) -> &[Vec<Int>] {
        &self.0.rd.roots
    }

    pub fn coroots(&self) -> &[Vec<Int>] {
        &self.0.rd.coroots
    }

    pub fn rank(&self) -> usize {
        self.0.rd.rank()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.0.coroot_basis.rows()
    }

    pub fn is_torus(&self) -> bool {
        self.0.rd.roots.is_empty()
    }

    pub fn is_semisimple(&self) -> bool {
        self.0.x0.source().ngens() == 0
    }

    /// Characters of the coradical, `X₀ = {x : ⟨x, α∨⟩ = 0 ∀α}`, with the inclusion.
    pub fn coradical(&self) -> &DMap {
        &self.0.x0
    }

    pub fn root_lattice(&self) -> &Lattice {
        &self.0.root_lattice
    }

    /// `X → X/ZΦ`, the characters of the center.
    pub fn center(&self) -> &DMap {
        &self.0.to_center
    }

    /// `X → (X/ZΦ)/torsion`, the characters of the radical.
    pub fn radical(&self) -> &DMap {
        &self.0.to_radical
    }

    /// HNF basis of the coroot lattice, one row per basis vector.
    pub fn coroot_basis(&self) -> &Matrix {
        &self.0.coroot_basis
    }

    /// `X → P` into the weight lattice of the derived datum.
    pub fn weights(&self) -> &DMap {
        &self.0.to_p
    }

    /// `P → P/ZΦ`, the characters of the center of the simply connected cover.
    pub fn weight_center(&self) -> &DMap {
        &self.0.p_to_center
    }

    /// `P → μ = P/X`, the characters of the fundamental group.
    pub fn fundamental(&self) -> &DMap {
        &self.0.to_mu
    }

    pub fn mu(&self) -> &DModule {
        self.0.to_mu.target()
    }

    pub fn cocharacters(&self) -> &DModule {
        &self.0.y
    }

    /// `Y → Y/ZΦ∨`.
    pub fn pi1_cocharacter_map(&self) -> &DMap {
        &self.0.to_pi1
    }

    /// `Y/ZΦ∨`.
    pub fn pi1_cocharacter(&self) -> &DModule {
        self.0.to_pi1.target()
    }

    pub fn center_sequence(&self) -> &CenterSequence {
        &self.0.sequence
    }

    /// `[X/ZΦ → P/ZΦ]` in degrees −1, 0.
    pub fn center_complex(&self) -> TwoTermComplex {
        TwoTermComplex::new(self.0.sequence.center_to_p.clone())
    }

    /// The same datum with the action restricted to a subgroup.
    pub fn restrict(&self, h: &crate::group::Subgroup) -> Result<GroupDatum> {
        let rd = &self.0.rd;
        GroupDatum::new(RootDatum::new(&rd.x.restrict(h), rd.roots.clone(), rd.coroots.clone()))
    }
}
