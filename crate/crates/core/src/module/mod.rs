//! Finitely generated Δ-modules given by presentations.
//!
//! An element is a column vector in `Z^k` modulo the row span of the relation
//! matrix; `g` acts by `m ↦ A_g m`.

mod build;
mod hom;
mod map;

pub use build::{
    augmentation_ideal, coinduce_embed, dual, dual_map, fixed_lattice, fixed_points, minus_one_dual,
    permutation_basis_holds, permutation_module, quotient_by, sublattice_module, tensor, torsion_free_quotient,
    torsion_submodule,
};
pub use hom::{hom_space, iso_finite, split_extension, HomSpace};
pub use map::{check_exact, cokernel, exact_at, image, kernel, normalize, Cokernel, DMap, Image, Kernel, Normalized};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{invariant_factors, Int, Lattice, Matrix};
use serde::Serialize;
use std::collections::VecDeque;
use std::sync::Arc;

/// Records that a module was built as `⊕ Z[Δ/Θ]^{m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationTag {
    pub summands: Vec<(Subgroup, usize)>,
}

impl PermutationTag {
    pub fn rank(&self, g: &FiniteGroup) -> usize {
        self.summands.iter().map(|(h, m)| m * g.order() / h.order()).sum()
    }

    pub fn concat(tags: &[&PermutationTag]) -> PermutationTag {
        PermutationTag {
            summands: tags.iter().flat_map(|t| t.summands.iter().cloned()).collect(),
        }
    }
}

/// `Z^free_rank ⊕ ⊕ Z/d_i` with `d_1 | d_2 | ..`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianInvariants {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn order(&self) -> Option<Int> {
        (self.free_rank == 0).then(|| self.torsion.iter().cloned().product())
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug)]
struct ModuleData {
    group: FiniteGroup,
    ngens: usize,
    relations: Lattice,
    action: Vec<Matrix>,
    invariants: AbelianInvariants,
    perm: Option<PermutationTag>,
}

/// A Δ-module presentation. Cheap to clone.
#[derive(Clone, Debug)]
pub struct DModule(Arc<ModuleData>);

impl PartialEq for DModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.group == other.0.group
                && self.0.ngens == other.0.ngens
                && self.0.relations == other.0.relations
                && self.0.action == other.0.action)
    }
}

impl Eq for DModule {}

fn reduce_columns(m: &Matrix, rel: &Lattice) -> Matrix {
    if rel.rank() == 0 {
        return m.clone();
    }
    let cols: Vec<Vec<Int>> = m.to_columns().iter().map(|c| rel.reduce(c)).collect();
    Matrix::from_columns(&cols, m.rows())
}

impl DModule {
    /// Builds a module from the action of every group element.
    pub fn new(group: &FiniteGroup, ngens: usize, relations: &Matrix, action: Vec<Matrix>) -> Result<DModule> {
        if relations.cols() != ngens && relations.rows() > 0 {
            return Err(Error::IllDefinedAction(format!(
                "relation rows have length {}, expected {ngens}",
                relations.cols()
            )));
        }
        if action.len() != group.order() {
            return Err(Error::IllDefinedAction(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for (g, a) in action.iter().enumerate() {
            if a.rows() != ngens || a.cols() != ngens {
                return Err(Error::IllDefinedAction(format!(
                    "action of element {g} is {}x{}, expected {ngens}x{ngens}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        let rel = if relations.rows() == 0 {
            Lattice::zero(ngens)
        } else {
            Lattice::from_rows(relations)
        };
        let action: Vec<Matrix> = action.iter().map(|a| reduce_columns(a, &rel)).collect();
        let m = DModule::assemble(group, ngens, rel, action, None);
        m.validate()?;
        Ok(m)
    }

    /// Builds a module from the action of a generating set, completing it by
    /// closure. Elements not listed are reached as products of listed ones.
    pub fn from_generator_action(
        group: &FiniteGroup,
        ngens: usize,
        relations: &Matrix,
        gens: &[(usize, Matrix)],
    ) -> Result<DModule> {
        let n = group.order();
        let mut action: Vec<Option<Matrix>> = vec![None; n];
        action[group.identity()] = Some(Matrix::identity(ngens));
        for (g, a) in gens {
            if *g >= n {
                return Err(Error::Input(format!("element index {g} out of range")));
            }
            if a.rows() != ngens || a.cols() != ngens {
                return Err(Error::IllDefinedAction(format!(
                    "action of element {g} has the wrong shape"
                )));
            }
        }
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, a) in gens {
                let y = group.mul(*s, x);
                if action[y].is_none() {
                    let ax = action[x].as_ref().expect("visited");
                    action[y] = Some(a.mul(ax));
                    queue.push_back(y);
                }
            }
        }
        let action: Option<Vec<Matrix>> = action.into_iter().collect();
        let action = action.ok_or_else(|| Error::Input("listed elements do not generate the group".to_string()))?;
        let m = DModule::new(group, ngens, relations, action)?;
        for (s, a) in gens {
            let rel = m.relation_lattice();
            if reduce_columns(a, rel) != *m.action(*s) {
                return Err(Error::NotHomomorphism { g: *s, h: *s });
            }
        }
        Ok(m)
    }

    pub fn lattice(group: &FiniteGroup, action: Vec<Matrix>) -> Result<DModule> {
        let k = action.first().map_or(0, Matrix::rows);
        DModule::new(group, k, &Matrix::zeros(0, k), action)
    }

    pub fn trivial(group: &FiniteGroup, rank: usize) -> DModule {
        DModule::assemble(
            group,
            rank,
            Lattice::zero(rank),
            vec![Matrix::identity(rank); group.order()],
            None,
        )
    }

    pub fn zero(group: &FiniteGroup) -> DModule {
        DModule::trivial(group, 0)
    }

    /// `Z/n` with trivial action.
    pub fn cyclic_trivial(group: &FiniteGroup, n: i64) -> DModule {
        DModule::assemble(
            group,
            1,
            Lattice::from_rows(&Matrix::from_i64(&[vec![n]])),
            vec![Matrix::identity(1); group.order()],
            None,
        )
    }

    pub(crate) fn assemble(
        group: &FiniteGroup,
        ngens: usize,
        relations: Lattice,
        action: Vec<Matrix>,
        perm: Option<PermutationTag>,
    ) -> DModule {
        let inv = invariant_factors(relations.basis());
        let torsion: Vec<Int> = inv.into_iter().filter(|d| !d.is_one()).collect();
        let invariants = AbelianInvariants {
            free_rank: ngens - relations.rank(),
            torsion,
        };
        DModule(Arc::new(ModuleData {
            group: group.clone(),
            ngens,
            relations,
            action,
            invariants,
            perm,
        }))
    }

    /// Checks well-definedness and the homomorphism property.
    pub fn validate(&self) -> Result<()> {
        let g = self.group();
        let rel = self.relation_lattice();
        for (e, a) in self.0.action.iter().enumerate() {
            for r in rel.vectors() {
                if !rel.contains(&a.mul_vec(&r)) {
                    return Err(Error::IllDefinedAction(format!(
                        "element {e} does not preserve the relations"
                    )));
                }
            }
        }
        if !self.is_zero_endo(&self.action(g.identity()).sub(&Matrix::identity(self.ngens()))) {
            return Err(Error::NotHomomorphism {
                g: g.identity(),
                h: g.identity(),
            });
        }
        for s in g.generators() {
            for h in g.elements() {
                let lhs = self.action(g.mul(s, h));
                let rhs = self.action(s).mul(self.action(h));
                if !self.is_zero_endo(&lhs.sub(&rhs)) {
                    return Err(Error::NotHomomorphism { g: s, h });
                }
            }
        }
        Ok(())
    }

    fn is_zero_endo(&self, m: &Matrix) -> bool {
        m.to_columns().iter().all(|c| self.relation_lattice().contains(c))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.0.group
    }

    pub fn ngens(&self) -> usize {
        self.0.ngens
    }

    pub fn relation_lattice(&self) -> &Lattice {
        &self.0.relations
    }

    /// Hermite-form relation rows.
    pub fn relations(&self) -> &Matrix {
        self.0.relations.basis()
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.0.action[g]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.0.action
    }

    pub fn act(&self, g: usize, v: &[Int]) -> Vec<Int> {
        self.reduce(&self.action(g).mul_vec(v))
    }

    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        self.0.relations.reduce(v)
    }

    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        self.0.relations.contains(v)
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.0.invariants
    }

    pub fn permutation_tag(&self) -> Option<&PermutationTag> {
        self.0.perm.as_ref()
    }

    pub fn is_lattice(&self) -> bool {
        self.0.relations.rank() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.0.invariants.free_rank == 0
    }

    pub fn is_zero(&self) -> bool {
        self.0.invariants.is_zero()
    }

    /// True when the presentation is `⊕ Z/d_i ⊕ Z^r` on the standard basis,
    /// torsion coordinates first.
    pub fn is_normalized(&self) -> bool {
        let rel = self.relations();
        let r = rel.rows();
        (0..r).all(|i| {
            (0..self.ngens()).all(|j| {
                if i == j {
                    rel[(i, j)] > Int::ONE
                } else {
                    rel[(i, j)].is_zero()
                }
            })
        })
    }

    /// Orders of the torsion generators of a normalized presentation; zero for
    /// free coordinates.
    pub fn generator_orders(&self) -> Vec<Int> {
        let rel = self.relations();
        (0..self.ngens())
            .map(|i| if i < rel.rows() { rel[(i, i)].clone() } else { Int::ZERO })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.0.invariants.free_rank
    }

    /// Order of a finite module.
    pub fn order(&self) -> Option<Int> {
        self.0.invariants.order()
    }

    /// `⊕ modules`, with injections and projections.
    pub fn direct_sum(parts: &[&DModule]) -> (DModule, Vec<DMap>, Vec<DMap>) {
        let group = parts.first().map_or_else(FiniteGroup::trivial, |m| m.group().clone());
        let k: usize = parts.iter().map(|m| m.ngens()).sum();
        let rels: Vec<Matrix> = parts
            .iter()
            .map(|m| {
                let r = m.relations();
                if r.rows() == 0 {
                    Matrix::zeros(0, m.ngens())
                } else {
                    r.clone()
                }
            })
            .collect();
        let relations = if rels.iter().all(|r| r.rows() == 0) {
            Lattice::zero(k)
        } else {
            Lattice::from_rows(&Matrix::block_diag(&rels.iter().collect::<Vec<_>>()))
        };
        let action: Vec<Matrix> = group
            .elements()
            .map(|g| Matrix::block_diag(&parts.iter().map(|m| m.action(g)).collect::<Vec<_>>()))
            .collect();
        let tags: Option<Vec<&PermutationTag>> = parts.iter().map(|m| m.permutation_tag()).collect();
        let tag = tags.map(|t| PermutationTag::concat(&t));
        let sum = DModule::assemble(&group, k, relations, action, tag);
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        let mut off = 0;
        for m in parts {
            let mut i = Matrix::zeros(k, m.ngens());
            let mut p = Matrix::zeros(m.ngens(), k);
            for j in 0..m.ngens() {
                i[(off + j, j)] = Int::ONE;
                p[(j, off + j)] = Int::ONE;
            }
            inj.push(DMap::new_unchecked(m, &sum, i));
            proj.push(DMap::new_unchecked(&sum, m, p));
            off += m.ngens();
        }
        (sum, inj, proj)
    }

    /// The same presentation viewed over a subgroup (as a group in its own right).
    pub fn restrict(&self, h: &Subgroup) -> DModule {
        let (hg, emb) = self.group().subgroup_as_group(h);
        let action = emb.iter().map(|&x| self.action(x).clone()).collect();
        DModule::assemble(&hg, self.ngens(), self.relation_lattice().clone(), action, None)
    }

    /// Sum of `A_θ` over `θ ∈ Θ`.
    pub fn norm_matrix(&self, theta: &[usize]) -> Matrix {
        let mut n = Matrix::zeros(self.ngens(), self.ngens());
        for &t in theta {
            n = n.add(self.action(t));
        }
        n
    }

    /// Elements of the module, for finite modules in normalized form.
    pub fn enumerate(&self) -> Result<Vec<Vec<Int>>> {
        if !self.is_finite() || !self.is_normalized() {
            return Err(Error::NotFinite);
        }
        let orders = self.generator_orders();
        let mut out = vec![Vec::new()];
        for d in &orders {
            let d = d.to_i64().ok_or(Error::NotFinite)?;
            let mut next = Vec::new();
            for v in &out {
                for x in 0..d {
                    let mut w = v.clone();
                    w.push(Int::from(x));
                    next.push(w);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
