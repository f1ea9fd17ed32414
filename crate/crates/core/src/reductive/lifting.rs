use super::{natural_map, pi1, FundamentalGroup, ResolutionRecord};
use crate::cohomology::tate;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::module::{cokernel, dual_map, hom_space, kernel, split_extension, DMap, DModule};
use crate::rootdatum::{DatumMorphism, GroupDatum};
use serde::Serialize;

fn same_datum(a: &GroupDatum, b: &GroupDatum) -> bool {
    a.characters() == b.characters() && a.roots() == b.roots() && a.coroots() == b.coroots()
}

/// The map of fundamental groups induced by `λ : G₁ → G₂` through lifts of the
/// resolutions over `λ`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    /// `π₁(G₁) → π₁(G₂)`.
    pub map: DMap,
    /// `X_{H₂} → X_{H₁}`.
    pub lifting: DMap,
    /// `Rch₂ → Rch₁`.
    pub on_r: DMap,
    /// `Fch₂ → Fch₁`.
    pub on_f: DMap,
    /// Whether a second section gives the same map; `None` if `Hom_Δ(F₂, Rch₁) = 0`.
    pub independent: Option<bool>,
    /// Agreement with `Y₁/ZΦ₁∨ → Y₂/ZΦ₂∨` under the natural maps.
    pub matches_cocharacters: bool,
    pub source: FundamentalGroup,
    pub target: FundamentalGroup,
}

/// `X_E = (X_{H₁} ⊕ X_{H₂}) / X₂`, the characters of `H₁ ×_{G₂} H₂`-type fiber
/// product, with the pieces needed to split off `Rch₁`.
struct Fiber {
    in1: DMap,
    in2: DMap,
    kinc: DMap,
    iota: DMap,
    to_f2: DMap,
}

fn fiber(lam: &DatumMorphism, r1: &ResolutionRecord, r2: &ResolutionRecord) -> Result<Fiber> {
    let (_, inj, proj) = DModule::direct_sum(&[&r1.xh, &r2.xh]);
    let a = inj[0].after(&r1.j).after(&lam.pullback).sub(&inj[1].after(&r2.j));
    let co = cokernel(&a);
    if !co.module.is_lattice() {
        return Err(Error::verification("lifting", "fiber product characters have torsion"));
    }
    let q = co.projection;
    let in1 = q.after(&inj[0]);
    let in2 = q.after(&inj[1]);
    let lp = lam.on_weights();
    let pe = q
        .descend(&r1.p.after(&proj[0]).add(&lp.after(&r2.p).after(&proj[1])))
        .ok_or_else(|| Error::verification("lifting", "weight projections do not agree on X₂"))?;
    let k = kernel(&pe);
    let iota = k
        .inclusion
        .lift(&in1.after(&r1.incl_r))
        .ok_or_else(|| Error::verification("lifting", "Rch₁ does not vanish on the cover"))?;
    let qf = q
        .descend(&r2.c.after(&proj[1]))
        .ok_or_else(|| Error::verification("lifting", "X₂ does not vanish on F₂"))?;
    Ok(Fiber {
        in1,
        in2,
        to_f2: qf.after(&k.inclusion),
        kinc: k.inclusion,
        iota,
    })
}

/// `φ : X_{H₂} → X_{H₁}` from a section `σ` of `K_E → F₂`.
fn lifting_from(fb: &Fiber, sigma: &DMap, r1: &ResolutionRecord, r2: &ResolutionRecord) -> Result<DMap> {
    let (_, _, sproj) = DModule::direct_sum(&[&r1.xh, &r2.fch]);
    let iso = fb.in1.after(&sproj[0]).add(&fb.kinc.after(sigma).after(&sproj[1]));
    if !iso.is_iso() {
        return Err(Error::verification(
            "lifting",
            "X_{H₁} ⊕ F₂ → X_E is not an isomorphism",
        ));
    }
    let inv = iso
        .descend(&DMap::identity(iso.source()))
        .ok_or_else(|| Error::verification("lifting", "X_E does not invert"))?;
    Ok(sproj[0].after(&inv).after(&fb.in2))
}

fn pi1_map_from(
    phi: &DMap,
    r1: &ResolutionRecord,
    r2: &ResolutionRecord,
    p1: &FundamentalGroup,
    p2: &FundamentalGroup,
) -> Result<(DMap, DMap, DMap)> {
    let on_r = r1
        .incl_r
        .lift(&phi.after(&r2.incl_r))
        .ok_or_else(|| Error::verification("lifting", "Rch₂ does not map into Rch₁"))?;
    let on_f =
        r2.c.descend(&r1.c.after(phi))
            .ok_or_else(|| Error::verification("lifting", "Q₂ does not map into Q₁"))?;
    if !r1.rho.after(&on_r).equals(&on_f.after(&r2.rho)) {
        return Err(Error::verification("lifting", "ρ is not compatible with the lift"));
    }
    let push = p2.projection.after(&dual_map(&on_r)?);
    let map = p1
        .projection
        .descend(&push)
        .ok_or_else(|| Error::verification("lifting", "F₁_* is not sent into F₂_*"))?;
    Ok((map, on_r, on_f))
}

pub fn induced_pi1_map(
    lam: &DatumMorphism,
    res1: &ResolutionRecord,
    res2: &ResolutionRecord,
    _cfg: &Config,
) -> Result<InducedMap> {
    if !same_datum(&lam.source, &res1.gd) || !same_datum(&lam.target, &res2.gd) {
        return Err(Error::Input("resolutions do not match the morphism".to_string()));
    }
    let fb = fiber(lam, res1, res2)?;
    let sigma = split_extension(&fb.iota, &fb.to_f2)?
        .ok_or_else(|| Error::SectionNotFound("K_E → F₂ has no equivariant section".to_string()))?;
    let phi = lifting_from(&fb, &sigma, res1, res2)?;
    if !phi.after(&res2.j).equals(&res1.j.after(&lam.pullback)) {
        return Err(Error::verification("lifting", "lift does not restrict to λ on X₂"));
    }
    if !res1.p.after(&phi).equals(&lam.on_weights().after(&res2.p)) {
        return Err(Error::verification("lifting", "lift is not compatible with the covers"));
    }
    let p1 = pi1(res1)?;
    let p2 = pi1(res2)?;
    let (map, on_r, on_f) = pi1_map_from(&phi, res1, res2, &p1, &p2)?;
    let hs = hom_space(&res2.fch, &res1.rch);
    let independent = match hs.generators.first() {
        None => None,
        Some(h) => {
            let sigma2 = sigma.add(&fb.iota.after(h));
            let phi2 = lifting_from(&fb, &sigma2, res1, res2)?;
            let (map2, _, _) = pi1_map_from(&phi2, res1, res2, &p1, &p2)?;
            Some(map2.equals(&map))
        }
    };
    let n1 = natural_map(res1, &p1)?;
    let n2 = natural_map(res2, &p2)?;
    let matches_cocharacters = n2.after(&map).equals(&lam.on_pi1_cocharacter().after(&n1));
    Ok(InducedMap {
        map,
        lifting: phi,
        on_r,
        on_f,
        independent,
        matches_cocharacters,
        source: p1,
        target: p2,
    })
}

/// Two resolutions of one datum compared through the lifts of the identity.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    /// `π₁` from the first resolution maps isomorphically onto the second.
    pub forward_iso: bool,
    /// The lifts in both directions are mutually inverse on `π₁`.
    pub inverse: bool,
    /// Both maps are independent of the chosen sections, where testable.
    pub independent: bool,
    /// Both maps agree with the cocharacter identification.
    pub natural: bool,
    /// `rank Rch₁ + rank Fch₂ = rank Rch₂ + rank Fch₁`.
    pub ranks_agree: bool,
    /// `Ĥ^i(Θ, Rch₁ ⊕ Fch₂) = Ĥ^i(Θ, Rch₂ ⊕ Fch₁)` for every subgroup representative and `i ∈ {−1, 0, 1}`.
    pub tate_agree: bool,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.forward_iso && self.inverse && self.independent && self.natural && self.ranks_agree && self.tate_agree
    }
}

pub fn compare_resolutions(res1: &ResolutionRecord, res2: &ResolutionRecord, cfg: &Config) -> Result<Comparison> {
    if !same_datum(&res1.gd, &res2.gd) {
        return Err(Error::Input("resolutions are of different data".to_string()));
    }
    let id = DatumMorphism::identity(&res1.gd);
    let fwd = induced_pi1_map(&id, res1, res2, cfg)?;
    let bwd = induced_pi1_map(&id, res2, res1, cfg)?;
    let inverse = bwd.map.after(&fwd.map).equals(&DMap::identity(fwd.map.source()))
        && fwd.map.after(&bwd.map).equals(&DMap::identity(bwd.map.source()));
    let (a, _, _) = DModule::direct_sum(&[&res1.rch, &res2.fch]);
    let (b, _, _) = DModule::direct_sum(&[&res2.rch, &res1.fch]);
    let mut tate_agree = true;
    for theta in res1.group().subgroups(cfg)?.representatives() {
        for i in -1..=1 {
            if tate(theta, &a, i, cfg)? != tate(theta, &b, i, cfg)? {
                tate_agree = false;
            }
        }
    }
    Ok(Comparison {
        forward_iso: fwd.map.is_iso(),
        inverse,
        independent: fwd.independent != Some(false) && bwd.independent != Some(false),
        natural: fwd.matches_cocharacters && bwd.matches_cocharacters,
        ranks_agree: a.rank() == b.rank(),
        tate_agree,
    })
}
