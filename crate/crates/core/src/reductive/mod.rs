//! Flasque resolutions `1 → F → H → G → 1` of reductive group data, worked out
//! on character lattices, and the algebraic fundamental group `π₁ = coker[F_* → R_*]`.
//!
//! The maximal torus of `H` is `(T_R × T_G~ × F)/M` where `M` is the kernel of
//! `R × G~ → G`; its characters are the fiber product `(R₀ ⊕ P) ×_M F`.

mod lifting;
mod sequences;
mod verify;

pub use lifting::{compare_resolutions, induced_pi1_map, Comparison, InducedMap};
pub use sequences::{
    verify_cover_exactness, verify_functoriality, verify_theorem_3_14, CoverReport, FunctorialityReport, Route,
    TheoremReport,
};
pub use verify::{verify_prop_3_4, verify_prop_3_9, RoofReport, StageCheck, TorsionSequenceReport};

use crate::cohomology::TwoTermComplex;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{Int, Lattice, Matrix, Solver};
use crate::module::{
    check_exact, coinduce_embed, cokernel, dual_map, exact_at, iso_finite, kernel, permutation_basis_holds,
    split_extension, torsion_submodule, DMap, DModule,
};
use crate::resolutions::{flasque_cover_on, TermFlags};
use crate::rootdatum::GroupDatum;
use serde::Serialize;

/// Which generators of `M` the free cover uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum CoverGenerators {
    /// Normalized generators of `M`, skipping those already in the Δ-span of
    /// the earlier ones.
    #[default]
    Basis,
    /// The [`CoverGenerators::Basis`] choice in reverse order followed by its sum.
    Redundant,
}

/// Exactness of `0 → X₀ → Rch → Fch → μ → 0`, stage by stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceAudit {
    pub injective: bool,
    pub exact_at_rch: bool,
    pub exact_at_fch: bool,
    pub surjective: bool,
    pub fch_flasque: bool,
    pub rch_permutation: bool,
}

impl SequenceAudit {
    pub fn holds(&self) -> bool {
        self.injective
            && self.exact_at_rch
            && self.exact_at_fch
            && self.surjective
            && self.fch_flasque
            && self.rch_permutation
    }
}

/// A flasque resolution of a group datum at character level.
#[derive(Clone, Debug)]
pub struct ResolutionRecord {
    pub gd: GroupDatum,
    /// Characters of the flasque torus `F`.
    pub fch: DModule,
    /// Characters of `R = H^tor`, a permutation module.
    pub rch: DModule,
    /// `Rch → Fch`, restriction along `F → H → R`.
    pub rho: DMap,
    pub audit: SequenceAudit,
    /// The weight lattice `P` of the simply connected cover.
    pub sc: DModule,
    /// Characters of the maximal torus of `H`.
    pub xh: DModule,
    /// `X → X_H` along `H → G`.
    pub j: DMap,
    /// `X_H → Fch` along `F → H`.
    pub c: DMap,
    /// `X_H → P` along `G~ → H`.
    pub p: DMap,
    /// `Rch → X_H`, onto the characters vanishing on `G~`.
    pub incl_r: DMap,
    /// `X₀ → Rch` along `H^tor → G^tor`.
    pub x0_to_r: DMap,
    /// `Fch → μ`.
    pub f_to_mu: DMap,
    pub flags: [TermFlags; 2],
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ExactnessFailure(what.to_string()))
    }
}

fn cover_generators(m: &DModule, choice: CoverGenerators) -> Vec<Vec<Int>> {
    let n = m.ngens();
    let unit = |i: usize| {
        let mut e = vec![Int::ZERO; n];
        e[i] = Int::ONE;
        e
    };
    match choice {
        CoverGenerators::Basis => {
            let mut span = m.relation_lattice().vectors();
            let mut out = Vec::new();
            for i in 0..n {
                let e = unit(i);
                if Lattice::from_vectors(n, &span).contains(&e) {
                    continue;
                }
                span.extend(m.group().elements().map(|g| m.act(g, &e)));
                out.push(e);
            }
            out
        }
        CoverGenerators::Redundant => {
            let mut g = cover_generators(m, CoverGenerators::Basis);
            g.reverse();
            if !g.is_empty() {
                let sum = g.iter().fold(vec![Int::ZERO; n], |acc, v| {
                    acc.iter().zip(v).map(|(a, b)| a + b).collect()
                });
                g.push(sum);
            }
            g
        }
    }
}

/// [`flasque_resolution_with`] using the normalized generators.
pub fn flasque_resolution(gd: &GroupDatum, cfg: &Config) -> Result<ResolutionRecord> {
    flasque_resolution_with(gd, CoverGenerators::Basis, cfg)
}

pub fn flasque_resolution_with(gd: &GroupDatum, choice: CoverGenerators, cfg: &Config) -> Result<ResolutionRecord> {
    let p_mod = gd.weights().target().clone();
    // Characters of R₀ ↠ rad(G) and of R₀ × G~.
    let (r0, emb) = coinduce_embed(gd.radical().target())?;
    cfg.check_dim("radical cover rank", r0.ngens())?;
    let (w, w_inj, w_proj) = DModule::direct_sum(&[&r0, &p_mod]);
    let phi = w_inj[0]
        .after(&emb.after(gd.radical()))
        .add(&w_inj[1].after(gd.weights()));
    require(phi.is_injective(), "X → R₀ ⊕ P is not injective")?;
    let mco = cokernel(&phi);
    let m = mco.module.clone();
    let cover = flasque_cover_on(&m, &cover_generators(&m, choice), cfg)?;
    let f = cover.middle.clone();
    // X_H = {(w, f) : [w] = [f] in M}.
    let (_, s_inj, s_proj) = DModule::direct_sum(&[&w, &f]);
    let psi = mco.projection.after(&s_proj[0]).sub(&cover.pi.after(&s_proj[1]));
    let xh_k = kernel(&psi);
    let xh = xh_k.module.clone();
    let incl = xh_k.inclusion.clone();
    let p = w_proj[1].after(&s_proj[0]).after(&incl);
    let c = s_proj[1].after(&incl);
    let j = incl
        .lift(&s_inj[0].after(&phi))
        .ok_or_else(|| Error::ExactnessFailure("X does not lie in X_H".to_string()))?;
    require(p.is_surjective(), "X_H → P is not surjective")?;
    require(c.is_surjective(), "X_H → F is not surjective")?;
    // K = ker p is an extension 0 → Q → K → R₀ → 0.
    let k = kernel(&p);
    let q_to_k = k
        .inclusion
        .lift(&incl.lift(&s_inj[1].after(&cover.iota)).expect("Q lies in X_H"))
        .expect("Q vanishes on P");
    let k_to_r0 = w_proj[0].after(&s_proj[0]).after(&incl).after(&k.inclusion);
    let sec = split_extension(&q_to_k, &k_to_r0)?
        .ok_or_else(|| Error::SectionNotFound("0 → Q → H^tor characters → R₀ → 0 does not split".to_string()))?;
    let (rch, _, r_proj) = DModule::direct_sum(&[&r0, &cover.left]);
    let to_k = sec.after(&r_proj[0]).add(&q_to_k.after(&r_proj[1]));
    require(to_k.is_iso(), "R₀ ⊕ Q → ker p is not an isomorphism")?;
    let incl_r = k.inclusion.after(&to_k);
    let rho = c.after(&incl_r);
    let x0_to_r = incl_r
        .lift(&j.after(gd.coradical()))
        .ok_or_else(|| Error::ExactnessFailure("X₀ does not restrict into Rch".to_string()))?;
    let f_to_mu = c
        .descend(&gd.fundamental().after(&p))
        .ok_or_else(|| Error::ExactnessFailure("Fch → μ does not descend".to_string()))?;
    let fch_flasque = cover.flags[1].flasque == Some(true);
    let audit = SequenceAudit {
        injective: x0_to_r.is_injective(),
        exact_at_rch: exact_at(&x0_to_r, &rho),
        exact_at_fch: exact_at(&rho, &f_to_mu),
        surjective: f_to_mu.is_surjective(),
        fch_flasque,
        rch_permutation: permutation_basis_holds(&rch, cfg)?,
    };
    if !audit.holds() {
        return Err(Error::ExactnessFailure(format!(
            "0 → X₀ → Rch → Fch → μ → 0 fails: {audit:?}"
        )));
    }
    Ok(ResolutionRecord {
        gd: gd.clone(),
        fch: f,
        rch,
        rho,
        audit,
        sc: p_mod,
        xh,
        j,
        c,
        p,
        incl_r,
        x0_to_r,
        f_to_mu,
        flags: [
            cover.flags[1],
            TermFlags {
                permutation: true,
                flasque: Some(true),
                coflasque: Some(true),
            },
        ],
    })
}

impl ResolutionRecord {
    /// The resolution `1 → F × Q → H × Q → G → 1` for a permutation module `extra`.
    pub fn stabilized(&self, extra: &DModule) -> Result<ResolutionRecord> {
        if extra.permutation_tag().is_none() {
            return Err(Error::Input(
                "stabilizing summand must be a permutation module".to_string(),
            ));
        }
        let (fch, f_inj, f_proj) = DModule::direct_sum(&[&self.fch, extra]);
        let (rch, r_inj, r_proj) = DModule::direct_sum(&[&self.rch, extra]);
        let (xh, h_inj, h_proj) = DModule::direct_sum(&[&self.xh, extra]);
        let c = f_inj[0]
            .after(&self.c.after(&h_proj[0]))
            .add(&f_inj[1].after(&h_proj[1]));
        let p = self.p.after(&h_proj[0]);
        let j = h_inj[0].after(&self.j);
        let incl_r = h_inj[0]
            .after(&self.incl_r.after(&r_proj[0]))
            .add(&h_inj[1].after(&r_proj[1]));
        let rho = c.after(&incl_r);
        let x0_to_r = r_inj[0].after(&self.x0_to_r);
        let f_to_mu = self.f_to_mu.after(&f_proj[0]);
        let audit = SequenceAudit {
            injective: x0_to_r.is_injective(),
            exact_at_rch: exact_at(&x0_to_r, &rho),
            exact_at_fch: exact_at(&rho, &f_to_mu),
            surjective: f_to_mu.is_surjective(),
            fch_flasque: self.audit.fch_flasque,
            rch_permutation: self.audit.rch_permutation,
        };
        require(audit.holds(), "stabilized sequence is not exact")?;
        Ok(ResolutionRecord {
            gd: self.gd.clone(),
            fch,
            rch,
            rho,
            audit,
            sc: self.sc.clone(),
            xh,
            j,
            c,
            p,
            incl_r,
            x0_to_r,
            f_to_mu,
            flags: self.flags,
        })
    }

    /// `[Rch → Fch]` in degrees −1, 0.
    pub fn complex(&self) -> TwoTermComplex {
        TwoTermComplex::new(self.rho.clone())
    }

    pub fn group(&self) -> &FiniteGroup {
        self.gd.group()
    }

    /// A canonical serializable view, for digests and determinism checks.
    pub fn view(&self) -> RecordView {
        RecordView {
            fch: ModuleView::of(&self.fch),
            rch: ModuleView::of(&self.rch),
            xh: ModuleView::of(&self.xh),
            rho: self.rho.matrix().clone(),
            j: self.j.matrix().clone(),
            c: self.c.matrix().clone(),
            p: self.p.matrix().clone(),
            incl_r: self.incl_r.matrix().clone(),
            audit: self.audit.clone(),
        }
    }
}

/// The action of the generators of Δ and the relations of a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleView {
    pub ngens: usize,
    pub relations: Matrix,
    pub generator_actions: Vec<Matrix>,
    pub permutation: Option<Vec<(Vec<usize>, usize)>>,
}

impl ModuleView {
    pub fn of(m: &DModule) -> ModuleView {
        ModuleView {
            ngens: m.ngens(),
            relations: m.relations().clone(),
            generator_actions: m.group().generators().iter().map(|&g| m.action(g).clone()).collect(),
            permutation: m
                .permutation_tag()
                .map(|t| t.summands.iter().map(|(h, k)| (h.elements().to_vec(), *k)).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordView {
    pub fch: ModuleView,
    pub rch: ModuleView,
    pub xh: ModuleView,
    pub rho: Matrix,
    pub j: Matrix,
    pub c: Matrix,
    pub p: Matrix,
    pub incl_r: Matrix,
    pub audit: SequenceAudit,
}

/// `π₁ = coker[F_* → R_*]` with the presentation maps.
#[derive(Clone, Debug)]
pub struct FundamentalGroup {
    pub module: DModule,
    /// `F_* → R_*`, the dual of `ρ`.
    pub f_star: DMap,
    /// `R_* → π₁`.
    pub projection: DMap,
    /// Representatives in `R_*` of the generators of `π₁`.
    pub lift: Matrix,
}

impl FundamentalGroup {
    pub fn r_star(&self) -> &DModule {
        self.projection.source()
    }
}

/// `π₁(G) = coker[F_* → R_*]`, checking `0 → F_* → R_* → π₁ → 0`.
pub fn pi1(res: &ResolutionRecord) -> Result<FundamentalGroup> {
    let f_star = dual_map(&res.rho)?;
    require(f_star.is_injective(), "F_* → R_* is not injective")?;
    let co = cokernel(&f_star);
    check_exact(&f_star, &co.projection)?;
    Ok(FundamentalGroup {
        module: co.module,
        f_star,
        projection: co.projection,
        lift: co.lift,
    })
}

/// A section over `Z` of a surjective matrix, `a · s = 1`.
pub(crate) fn z_section(a: &Matrix) -> Result<Matrix> {
    let solver = Solver::new(a);
    let mut cols = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut e = vec![Int::ZERO; a.rows()];
        e[i] = Int::ONE;
        cols.push(
            solver
                .solve(&e)
                .ok_or_else(|| Error::SectionNotFound("map has no section over Z".to_string()))?,
        );
    }
    Ok(Matrix::from_columns(&cols, a.cols()))
}

/// The natural map `π₁(G) → Y/ZΦ∨`: lift `R_*` to cocharacters of `H` and push
/// them forward to `G`.
pub fn natural_map(res: &ResolutionRecord, pi: &FundamentalGroup) -> Result<DMap> {
    let gd = &res.gd;
    let restrict = dual_map(&res.incl_r)?;
    let s = z_section(restrict.matrix())?;
    let push = dual_map(&res.j)?;
    let m = gd.pi1_cocharacter_map().matrix().mul(push.matrix()).mul(&s);
    let h = DMap::new(pi.r_star(), gd.pi1_cocharacter(), m)?;
    pi.projection
        .descend(&h)
        .ok_or_else(|| Error::ExactnessFailure("R_* → Y/ZΦ∨ does not kill F_*".to_string()))
}

/// Cross-check of `π₁` against the cocharacter oracle `Y/ZΦ∨`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Check {
    pub pi1_free_rank: usize,
    pub pi1_torsion: Vec<Int>,
    pub oracle_free_rank: usize,
    pub oracle_torsion: Vec<Int>,
    /// The natural map is an isomorphism.
    pub natural_iso: bool,
    /// An equivariant isomorphism of torsion parts found by search.
    pub torsion_iso: bool,
}

impl Pi1Check {
    pub fn holds(&self) -> bool {
        self.pi1_free_rank == self.oracle_free_rank
            && self.pi1_torsion == self.oracle_torsion
            && self.natural_iso
            && self.torsion_iso
    }
}

pub fn pi1_check(res: &ResolutionRecord, pi: &FundamentalGroup, cfg: &Config) -> Result<Pi1Check> {
    let oracle = res.gd.pi1_cocharacter();
    let nat = natural_map(res, pi)?;
    let (t1, _) = torsion_submodule(&pi.module);
    let (t2, _) = torsion_submodule(oracle);
    Ok(Pi1Check {
        pi1_free_rank: pi.module.invariants().free_rank,
        pi1_torsion: pi.module.invariants().torsion.clone(),
        oracle_free_rank: oracle.invariants().free_rank,
        oracle_torsion: oracle.invariants().torsion.clone(),
        natural_iso: nat.is_iso(),
        torsion_iso: iso_finite(&t1, &t2, cfg)?.is_some(),
    })
}

/// Whether `F` is known to be invertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Invertibility {
    /// Δ is metacyclic, so every flasque module split by Δ is invertible.
    Invertible,
    Unknown,
}

pub fn invertibility_flag(res: &ResolutionRecord, cfg: &Config) -> Result<Invertibility> {
    Ok(if res.group().is_metacyclic(cfg)? {
        Invertibility::Invertible
    } else {
        Invertibility::Unknown
    })
}
