use super::{DatumMorphism, GroupDatum, RootDatum};
use crate::error::{Error, Result};
use crate::linalg::{Int, Lattice, Solver};
use crate::module::{check_exact, dual, sublattice_module, DModule};

impl GroupDatum {
    /// The derived datum on `X/X₀` and the inclusion `G^der → G`.
    pub fn derived(&self) -> Result<(GroupDatum, DatumMorphism)> {
        let q = crate::module::image(self.weights()).surjection;
        let xd = q.target().clone();
        let roots: Vec<Vec<Int>> = self.roots().iter().map(|a| q.apply(a)).collect();
        let solver = Solver::new(&q.matrix().transpose());
        let coroots: Vec<Vec<Int>> = self
            .coroots()
            .iter()
            .map(|c| solver.solve(c).expect("coroots vanish on X₀"))
            .collect();
        let der = GroupDatum::new(RootDatum::new(&xd, roots, coroots))?;
        let m = DatumMorphism::new(&der, self, q.matrix().clone())?;
        Ok((der, m))
    }

    /// The coradical torus on `X₀` and the projection `G → G^tor`.
    pub fn coradical_torus(&self) -> Result<(GroupDatum, DatumMorphism)> {
        let inc = self.coradical();
        let t = GroupDatum::new(RootDatum::torus(inc.source()))?;
        let m = DatumMorphism::new(self, &t, inc.matrix().clone())?;
        Ok((t, m))
    }

    /// `G / N` for the normal subgroup whose quotient has characters `lat`,
    /// a saturated stable sublattice of `X`. Roots of `G` inside `lat` are kept
    /// and coroots restricted.
    pub fn quotient_by_characters(&self, lat: &Lattice) -> Result<(GroupDatum, DatumMorphism)> {
        if lat.saturation() != *lat {
            return Err(Error::Input("quotient characters must be saturated".to_string()));
        }
        let (xq, inc) = sublattice_module(self.characters(), lat)?;
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let it = inc.matrix().transpose();
        let solver = Solver::new(inc.matrix());
        for (a, c) in self.roots().iter().zip(self.coroots()) {
            if lat.contains(a) {
                roots.push(solver.solve(a).expect("root lies in the sublattice"));
                coroots.push(it.mul_vec(c));
            }
        }
        let q = GroupDatum::new(RootDatum::new(&xq, roots, coroots))?;
        let m = DatumMorphism::new(self, &q, inc.matrix().clone())?;
        Ok((q, m))
    }

    /// `G/T` for a central torus with cocharacter basis `torus`, with `T → G`
    /// and `G → G/T`.
    pub fn central_torus_quotient(
        &self,
        torus: &[Vec<Int>],
    ) -> Result<(GroupDatum, DatumMorphism, GroupDatum, DatumMorphism)> {
        let n = self.rank();
        for (i, a) in self.roots().iter().enumerate() {
            for t in torus {
                if !crate::linalg::dot(a, t).is_zero() {
                    return Err(Error::Input(format!(
                        "torus is not central: root {i} is nontrivial on it"
                    )));
                }
            }
        }
        let yt = Lattice::from_vectors(n, torus);
        if yt.saturation() != yt {
            return Err(Error::Input(
                "torus cocharacters must span a saturated lattice".to_string(),
            ));
        }
        let (yt_mod, yt_inc) = sublattice_module(self.cocharacters(), &yt)?;
        let xt = dual(&yt_mod)?;
        let t = GroupDatum::new(RootDatum::torus(&xt))?;
        let restrict = yt_inc.matrix().transpose();
        let t_to_g = DatumMorphism::new(&t, self, restrict.clone())?;
        let xq = Lattice::from_rows(&crate::linalg::kernel(&restrict));
        let (q, g_to_q) = self.quotient_by_characters(&xq)?;
        Ok((t, t_to_g, q, g_to_q))
    }

    /// `A × B` with its injections and projections.
    pub fn product(a: &GroupDatum, b: &GroupDatum) -> Result<ProductDatum> {
        let (na, nb) = (a.rank(), b.rank());
        let (x, inj, proj) = DModule::direct_sum(&[a.characters(), b.characters()]);
        let pad = |v: &[Int], left: bool| -> Vec<Int> {
            let mut out = vec![Int::ZERO; na + nb];
            let off = if left { 0 } else { na };
            for (i, e) in v.iter().enumerate() {
                out[off + i] = e.clone();
            }
            out
        };
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        for (r, c) in a.roots().iter().zip(a.coroots()) {
            roots.push(pad(r, true));
            coroots.push(pad(c, true));
        }
        for (r, c) in b.roots().iter().zip(b.coroots()) {
            roots.push(pad(r, false));
            coroots.push(pad(c, false));
        }
        let ab = GroupDatum::new(RootDatum::new(&x, roots, coroots))?;
        Ok(ProductDatum {
            inj_a: DatumMorphism::new(a, &ab, proj[0].matrix().clone())?,
            inj_b: DatumMorphism::new(b, &ab, proj[1].matrix().clone())?,
            proj_a: DatumMorphism::new(&ab, a, inj[0].matrix().clone())?,
            proj_b: DatumMorphism::new(&ab, b, inj[1].matrix().clone())?,
            datum: ab,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ProductDatum {
    pub datum: GroupDatum,
    pub inj_a: DatumMorphism,
    pub inj_b: DatumMorphism,
    pub proj_a: DatumMorphism,
    pub proj_b: DatumMorphism,
}

/// The supported ways of producing `1 → G₁ → G₂ → G₃ → 1`.
#[derive(Clone, Debug)]
pub enum SequenceKind {
    /// `1 → T → G → G/T → 1` for a central torus with the given cocharacters.
    CentralTorusQuotient { datum: GroupDatum, torus: Vec<Vec<Int>> },
    /// `1 → G^der → G → G^tor → 1`.
    DerivedCoradical { datum: GroupDatum },
    /// `1 → A → A × B → B → 1`.
    Product { left: GroupDatum, right: GroupDatum },
}

/// An exact sequence `1 → G₁ → G₂ → G₃ → 1` of group data.
#[derive(Clone, Debug)]
pub struct DatumSequence {
    pub g1: GroupDatum,
    pub g2: GroupDatum,
    pub g3: GroupDatum,
    pub kappa: DatumMorphism,
    pub lambda: DatumMorphism,
}

impl DatumSequence {
    pub fn build(kind: &SequenceKind) -> Result<DatumSequence> {
        let s = match kind {
            SequenceKind::CentralTorusQuotient { datum, torus } => {
                let (t, kappa, q, lambda) = datum.central_torus_quotient(torus)?;
                DatumSequence {
                    g1: t,
                    g2: datum.clone(),
                    g3: q,
                    kappa,
                    lambda,
                }
            }
            SequenceKind::DerivedCoradical { datum } => {
                let (der, kappa) = datum.derived()?;
                let (tor, lambda) = datum.coradical_torus()?;
                DatumSequence {
                    g1: der,
                    g2: datum.clone(),
                    g3: tor,
                    kappa,
                    lambda,
                }
            }
            SequenceKind::Product { left, right } => {
                let p = GroupDatum::product(left, right)?;
                DatumSequence {
                    g1: left.clone(),
                    g2: p.datum.clone(),
                    g3: right.clone(),
                    kappa: p.inj_a,
                    lambda: p.proj_b,
                }
            }
        };
        s.audit()?;
        Ok(s)
    }

    /// `0 → X₃ → X₂ → X₁ → 0` on characters.
    pub fn audit(&self) -> Result<()> {
        check_exact(&self.lambda.pullback, &self.kappa.pullback)
            .map_err(|e| Error::ExactnessFailure(format!("character sequence: {e}")))
    }

    /// `G₃' = G₂ / G₁^der` with `G₂ → G₃'`, `G₁^tor → G₃'` and `G₃' → G₃`.
    pub fn through_derived_quotient(&self) -> Result<DerivedFactorization> {
        let (d1, d1_to_g1) = self.g1.derived()?;
        let (t1, g1_to_t1) = self.g1.coradical_torus()?;
        // Characters of G₂ whose pullback to G₁ lies in X₀(G₁).
        let k = self.kappa.pullback.matrix();
        let x0 = self.g1.coradical().image_lattice();
        let lat = Lattice::preimage(k, &x0);
        let (g3p, g2_to_g3p) = self.g2.quotient_by_characters(&lat)?;
        let inc = g2_to_g3p.pullback.clone();
        // G₁^tor → G₃': X₃' → X₂ → X₁ lands in X₀(G₁).
        let h = self.kappa.pullback.after(&inc);
        let to_x0 = self
            .g1
            .coradical()
            .lift(&h)
            .ok_or_else(|| Error::ExactnessFailure("X₃' does not pull back to X₀".to_string()))?;
        let t1_to_g3p = DatumMorphism::new(&t1, &g3p, to_x0.matrix().clone())?;
        // G₃' → G₃: X₃ → X₂ lands in X₃'.
        let l = self.lambda.pullback.clone();
        let to_x3p = inc
            .lift(&l)
            .ok_or_else(|| Error::ExactnessFailure("X₃ does not lie in X₃'".to_string()))?;
        let g3p_to_g3 = DatumMorphism::new(&g3p, &self.g3, to_x3p.matrix().clone())?;
        let d1_to_g2 = self.kappa.after(&d1_to_g1);
        let first = DatumSequence {
            g1: d1,
            g2: self.g2.clone(),
            g3: g3p.clone(),
            kappa: d1_to_g2,
            lambda: g2_to_g3p,
        };
        let second = DatumSequence {
            g1: t1,
            g2: g3p,
            g3: self.g3.clone(),
            kappa: t1_to_g3p,
            lambda: g3p_to_g3,
        };
        first.audit()?;
        second.audit()?;
        Ok(DerivedFactorization {
            first,
            second,
            derived_to_g1: d1_to_g1,
            g1_to_torus: g1_to_t1,
        })
    }
}

/// `1 → G₁^der → G₂ → G₃' → 1` and `1 → G₁^tor → G₃' → G₃ → 1`.
#[derive(Clone, Debug)]
pub struct DerivedFactorization {
    pub first: DatumSequence,
    pub second: DatumSequence,
    /// `G₁^der → G₁`.
    pub derived_to_g1: DatumMorphism,
    /// `G₁ → G₁^tor`.
    pub g1_to_torus: DatumMorphism,
}
