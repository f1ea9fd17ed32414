use super::GroupDatum;
use crate::error::{Error, Result};
use crate::linalg::{Lattice, Matrix, Solver};
use crate::module::DMap;

/// A homomorphism `G₁ → G₂` given by its pullback `X₂ → X₁` on characters.
///
/// Supported morphisms pull roots of `G₂` into the root lattice of `G₁` and
/// push coroots of `G₁` into the coroot lattice of `G₂`.
#[derive(Clone, Debug)]
pub struct DatumMorphism {
    pub source: GroupDatum,
    pub target: GroupDatum,
    pub pullback: DMap,
}

impl DatumMorphism {
    pub fn new(source: &GroupDatum, target: &GroupDatum, pullback: Matrix) -> Result<DatumMorphism> {
        let f = DMap::new(target.characters(), source.characters(), pullback)
            .map_err(|e| Error::UnsupportedMorphism(format!("pullback is not equivariant: {e}")))?;
        for (i, a) in target.roots().iter().enumerate() {
            if !source.root_lattice().contains(&f.apply(a)) {
                return Err(Error::UnsupportedMorphism(format!(
                    "root {i} does not pull back into the root lattice"
                )));
            }
        }
        let co = Lattice::from_vectors(target.rank(), target.coroots());
        let push = f.matrix().transpose();
        for (i, c) in source.coroots().iter().enumerate() {
            if !co.contains(&push.mul_vec(c)) {
                return Err(Error::UnsupportedMorphism(format!(
                    "coroot {i} does not push into the coroot lattice"
                )));
            }
        }
        Ok(DatumMorphism {
            source: source.clone(),
            target: target.clone(),
            pullback: f,
        })
    }

    pub fn identity(g: &GroupDatum) -> DatumMorphism {
        DatumMorphism {
            source: g.clone(),
            target: g.clone(),
            pullback: DMap::identity(g.characters()),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &DatumMorphism) -> DatumMorphism {
        DatumMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            pullback: first.pullback.after(&self.pullback),
        }
    }

    /// `X₂/ZΦ₂ → X₁/ZΦ₁`.
    pub fn on_center(&self) -> DMap {
        let h = self.source.center().after(&self.pullback);
        self.target
            .center()
            .descend(&h)
            .expect("roots pull back into the root lattice")
    }

    /// `P₂ → P₁`, restriction of functionals along `ZΦ₁∨ → ZΦ₂∨`.
    pub fn on_weights(&self) -> DMap {
        let b1 = self.source.coroot_basis();
        let b2t = self.target.coroot_basis().transpose();
        let push = self.pullback.matrix().transpose();
        let solver = Solver::new(&b2t);
        let r1 = b1.rows();
        let r2 = b2t.cols();
        let mut c = Matrix::zeros(r1, r2);
        for j in 0..r1 {
            let v = push.mul_vec(b1.row(j));
            let coords = solver.solve(&v).expect("coroots push into the coroot lattice");
            for (k, x) in coords.into_iter().enumerate() {
                c[(j, k)] = x;
            }
        }
        let src = self.target.weights().target();
        let dst = self.source.weights().target();
        DMap::new(src, dst, c).expect("weight map is equivariant")
    }

    /// `μ₂ → μ₁` on characters of fundamental groups.
    pub fn on_mu(&self) -> DMap {
        let h = self.source.fundamental().after(&self.on_weights());
        self.target
            .fundamental()
            .descend(&h)
            .expect("weights of X₂ map into X₁")
    }

    /// `X₀(G₂) → X₀(G₁)` on characters of coradicals.
    pub fn on_coradical(&self) -> DMap {
        let h = self.pullback.after(self.target.coradical());
        self.source
            .coradical()
            .lift(&h)
            .expect("coradical characters pull back")
    }

    /// `Y₁/ZΦ₁∨ → Y₂/ZΦ₂∨`.
    pub fn on_pi1_cocharacter(&self) -> DMap {
        let push = DMap::new(
            self.source.cocharacters(),
            self.target.cocharacters(),
            self.pullback.matrix().transpose(),
        )
        .expect("transpose of an equivariant pullback");
        let h = self.target.pi1_cocharacter_map().after(&push);
        self.source
            .pi1_cocharacter_map()
            .descend(&h)
            .expect("coroots push into the coroot lattice")
    }
}
