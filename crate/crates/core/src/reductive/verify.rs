use super::{pi1, ResolutionRecord};
use crate::cohomology::{TwoTermComplex, TwoTermMap};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{Int, Matrix};
use crate::module::{
    cokernel, dual_map, exact_at, kernel, minus_one_dual, quotient_by, AbelianInvariants, DMap, DModule,
};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageCheck {
    pub stage: String,
    pub holds: bool,
}

impl StageCheck {
    fn new(stage: &str, holds: bool) -> StageCheck {
        StageCheck {
            stage: stage.to_string(),
            holds,
        }
    }
}

fn first_failure(stages: &[StageCheck], what: &str) -> Result<()> {
    match stages.iter().find(|s| !s.holds) {
        None => Ok(()),
        Some(s) => Err(Error::verification(what, s.stage.clone())),
    }
}

/// `[Rch → Fch] ≃ [X/ZΦ → P/ZΦ]` through a roof of quasi-isomorphisms.
#[derive(Clone, Debug, Serialize)]
pub struct RoofReport {
    pub center_kernel: AbelianInvariants,
    pub center_cokernel: AbelianInvariants,
    pub resolution_kernel: AbelianInvariants,
    pub resolution_cokernel: AbelianInvariants,
    pub stages: Vec<StageCheck>,
}

/// Builds `C = [Rch ⊕ X/ZΦ → X_H/jZΦ]` with maps to both complexes and checks
/// that each is a quasi-isomorphism; also identifies the kernels with `X₀` and
/// the cokernels with `μ`.
pub fn verify_prop_3_4(res: &ResolutionRecord, _cfg: &Config) -> Result<RoofReport> {
    let gd = &res.gd;
    let cc = gd.center_complex();
    let cr = res.complex();
    let root_images: Vec<Vec<Int>> = gd.roots().iter().map(|a| res.j.apply(a)).collect();
    let (_, to_u) = quotient_by(&res.xh, &root_images);
    let jbar = gd
        .center()
        .descend(&to_u.after(&res.j))
        .ok_or_else(|| Error::verification("roof", "X → X_H/jZΦ does not descend"))?;
    let (_, _, l_proj) = DModule::direct_sum(&[&res.rch, gd.center().target()]);
    let d = to_u.after(&res.incl_r).after(&l_proj[0]).add(&jbar.after(&l_proj[1]));
    let cm = TwoTermComplex::new(d);
    let to_center_upper = to_u
        .descend(&gd.weight_center().after(&res.p))
        .ok_or_else(|| Error::verification("roof", "X_H → P/ZΦ does not descend"))?;
    let to_res_upper = to_u
        .descend(&res.c)
        .ok_or_else(|| Error::verification("roof", "X_H → Fch does not kill jZΦ"))?;
    let a = TwoTermMap::new(&cm, &cc, l_proj[1].clone(), to_center_upper)?;
    let b = TwoTermMap::new(&cm, &cr, l_proj[0].clone(), to_res_upper)?;

    let seq = gd.center_sequence();
    let kc = kernel(&cc.d);
    let kr = kernel(&cr.d);
    let coc = cokernel(&cc.d);
    let cor = cokernel(&cr.d);
    let x0_center = kc.inclusion.lift(&seq.x0_to_center).filter(DMap::is_iso);
    let x0_res = kr.inclusion.lift(&res.x0_to_r).filter(DMap::is_iso);
    let mu_center = coc.projection.descend(&seq.p_to_mu).filter(DMap::is_iso);
    let mu_res = cor.projection.descend(&res.f_to_mu).filter(DMap::is_iso);

    let stages = vec![
        StageCheck::new("roof to center complex on kernels", a.on_kernels(&cm, &cc).is_iso()),
        StageCheck::new("roof to center complex on cokernels", a.on_cokernels(&cm, &cc).is_iso()),
        StageCheck::new("roof to resolution complex on kernels", b.on_kernels(&cm, &cr).is_iso()),
        StageCheck::new(
            "roof to resolution complex on cokernels",
            b.on_cokernels(&cm, &cr).is_iso(),
        ),
        StageCheck::new("X₀ is the kernel of X/ZΦ → P/ZΦ", x0_center.is_some()),
        StageCheck::new("X₀ is the kernel of Rch → Fch", x0_res.is_some()),
        StageCheck::new("μ is the cokernel of X/ZΦ → P/ZΦ", mu_center.is_some()),
        StageCheck::new("μ is the cokernel of Rch → Fch", mu_res.is_some()),
    ];
    first_failure(&stages, "quasi-isomorphism")?;
    Ok(RoofReport {
        center_kernel: kc.module.invariants().clone(),
        center_cokernel: coc.module.invariants().clone(),
        resolution_kernel: kr.module.invariants().clone(),
        resolution_cokernel: cor.module.invariants().clone(),
        stages,
    })
}

/// `0 → μ(−1) → π₁ → X₀^∨ → 0`.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionSequenceReport {
    pub mu_minus_one: AbelianInvariants,
    pub pi1: AbelianInvariants,
    pub coradical_dual: AbelianInvariants,
    pub stages: Vec<StageCheck>,
}

/// The maps `μ(−1) → π₁ → X₀^∨` and their exactness.
pub struct TorsionSequenceMaps {
    pub torsion: DMap,
    pub to_coradical: DMap,
}

/// `χ_j ↦ [ρ^∨(π_j)/d_j]` where `π_j` is the `j`-th coordinate of `Fch → μ`,
/// and `π₁ → X₀^∨` induced by the dual of `X₀ → Rch`.
pub fn torsion_sequence_maps(res: &ResolutionRecord) -> Result<TorsionSequenceMaps> {
    let pi = pi1(res)?;
    let (dm, nrm) = minus_one_dual(res.gd.mu())?;
    let proj = nrm.to.after(&res.f_to_mu);
    let orders = nrm.module.generator_orders();
    let f_star = pi.f_star.matrix();
    let mut cols = Vec::with_capacity(orders.len());
    for (jdx, d) in orders.iter().enumerate() {
        let row = proj.matrix().row(jdx).to_vec();
        let r = f_star.mul_vec(&row);
        let mut scaled = Vec::with_capacity(r.len());
        for x in r {
            if !d.divides(&x) {
                return Err(Error::verification(
                    "μ(−1) → π₁",
                    format!("coordinate {jdx} of ρ^∨ is not divisible by {d}"),
                ));
            }
            scaled.push(x.div_exact(d));
        }
        cols.push(pi.projection.apply(&scaled));
    }
    let ngens = pi.module.ngens();
    let torsion = DMap::new(&dm, &pi.module, Matrix::from_columns(&cols, ngens))?;
    let e = dual_map(&res.x0_to_r)?;
    let to_coradical = pi
        .projection
        .descend(&e)
        .ok_or_else(|| Error::verification("π₁ → X₀^∨", "does not kill F_*"))?;
    Ok(TorsionSequenceMaps { torsion, to_coradical })
}

pub fn verify_prop_3_9(res: &ResolutionRecord, _cfg: &Config) -> Result<TorsionSequenceReport> {
    let maps = torsion_sequence_maps(res)?;
    let composite = maps.to_coradical.after(&maps.torsion).is_zero();
    let stages = vec![
        StageCheck::new("μ(−1) → π₁ is injective", maps.torsion.is_injective()),
        StageCheck::new("composite μ(−1) → X₀^∨ vanishes", composite),
        StageCheck::new("exact at π₁", exact_at(&maps.torsion, &maps.to_coradical)),
        StageCheck::new("π₁ → X₀^∨ is surjective", maps.to_coradical.is_surjective()),
    ];
    first_failure(&stages, "μ(−1) → π₁ → X₀^∨")?;
    Ok(TorsionSequenceReport {
        mu_minus_one: maps.torsion.source().invariants().clone(),
        pi1: maps.torsion.target().invariants().clone(),
        coradical_dual: maps.to_coradical.target().invariants().clone(),
        stages,
    })
}
