use super::verify::StageCheck;
use super::{flasque_resolution, induced_pi1_map, z_section, InducedMap, ResolutionRecord};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Solver};
use crate::module::{check_exact, exact_at, kernel, AbelianInvariants, DMap};
use crate::rootdatum::{DatumMorphism, DatumSequence};
use serde::Serialize;

/// One way of establishing `0 → π₁(G₁) → π₁(G₂) → π₁(G₃) → 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Route {
    pub name: String,
    pub stages: Vec<StageCheck>,
}

impl Route {
    pub fn holds(&self) -> bool {
        self.stages.iter().all(|s| s.holds)
    }

    fn check(&self) -> Result<()> {
        match self.stages.iter().find(|s| !s.holds) {
            None => Ok(()),
            Some(s) => Err(Error::verification(self.name.clone(), s.stage.clone())),
        }
    }
}

fn stage(name: &str, holds: bool) -> StageCheck {
    StageCheck {
        stage: name.to_string(),
        holds,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub pi1: Vec<AbelianInvariants>,
    /// `π₁(G₁) → π₁(G₂)` on the normalized generators.
    pub kappa_star: Matrix,
    /// `π₁(G₂) → π₁(G₃)`.
    pub lambda_star: Matrix,
    pub direct: Route,
    pub factored: Route,
}

fn lemma_stages(prefix: &str, a: &InducedMap, b: &InducedMap) -> Vec<StageCheck> {
    vec![
        stage(&format!("{prefix}: exact"), check_exact(&a.map, &b.map).is_ok()),
        stage(
            &format!("{prefix}: natural"),
            a.matches_cocharacters && b.matches_cocharacters,
        ),
        stage(
            &format!("{prefix}: independent of sections"),
            a.independent != Some(false) && b.independent != Some(false),
        ),
    ]
}

/// Exactness of `0 → π₁(G₁) → π₁(G₂) → π₁(G₃) → 0` directly, and through
/// `G₃' = G₂/G₁^der` with the comparison diagram against `G₁^der → G₁ → G₁^tor`.
pub fn verify_theorem_3_14(seq: &DatumSequence, cfg: &Config) -> Result<TheoremReport> {
    let ind = |m: &DatumMorphism, r1: &ResolutionRecord, r2: &ResolutionRecord| induced_pi1_map(m, r1, r2, cfg);
    let r1 = flasque_resolution(&seq.g1, cfg)?;
    let r2 = flasque_resolution(&seq.g2, cfg)?;
    let r3 = flasque_resolution(&seq.g3, cfg)?;
    let k = ind(&seq.kappa, &r1, &r2)?;
    let l = ind(&seq.lambda, &r2, &r3)?;
    let direct = Route {
        name: "direct".to_string(),
        stages: lemma_stages("π₁(G₁) → π₁(G₂) → π₁(G₃)", &k, &l),
    };

    let f = seq.through_derived_quotient()?;
    let rd = flasque_resolution(&f.first.g1, cfg)?;
    let rt = flasque_resolution(&f.second.g1, cfg)?;
    let r3p = flasque_resolution(&f.first.g3, cfg)?;
    let a = ind(&f.first.kappa, &rd, &r2)?;
    let b = ind(&f.first.lambda, &r2, &r3p)?;
    let c = ind(&f.second.kappa, &rt, &r3p)?;
    let d = ind(&f.second.lambda, &r3p, &r3)?;
    let e = ind(&f.derived_to_g1, &rd, &r1)?;
    let t = ind(&f.g1_to_torus, &r1, &rt)?;
    let mut stages = lemma_stages("derived part", &a, &b);
    stages.extend(lemma_stages("toric part", &c, &d));
    stages.extend(lemma_stages("G₁ itself", &e, &t));
    stages.push(stage(
        "λ factors through G₃'",
        f.second
            .lambda
            .after(&f.first.lambda)
            .pullback
            .equals(&seq.lambda.pullback),
    ));
    stages.push(stage("λ_* is the composite", d.map.after(&b.map).equals(&l.map)));
    stages.push(stage(
        "κ_* restricts to the derived part",
        k.map.after(&e.map).equals(&a.map),
    ));
    let kl = kernel(&l.map);
    let left = kl.inclusion.lift(&a.map);
    let right = c
        .map
        .lift(&b.map.after(&kl.inclusion))
        .filter(|g| c.map.after(g).equals(&b.map.after(&kl.inclusion)));
    let mid = kl.inclusion.lift(&k.map);
    let bottom = match (&left, &right) {
        (Some(x), Some(y)) => check_exact(x, y).is_ok(),
        _ => false,
    };
    stages.push(stage("0 → π₁(G₁^der) → ker λ_* → π₁(G₁^tor) → 0", bottom));
    let squares = match (&left, &right, &mid) {
        (Some(x), Some(y), Some(m)) => m.after(&e.map).equals(x) && y.after(m).equals(&t.map),
        _ => false,
    };
    stages.push(stage("comparison squares commute", squares));
    stages.push(stage(
        "π₁(G₁) → ker λ_* is an isomorphism",
        mid.as_ref().is_some_and(DMap::is_iso),
    ));
    let factored = Route {
        name: "through G₂/G₁^der".to_string(),
        stages,
    };
    direct.check()?;
    factored.check()?;
    Ok(TheoremReport {
        pi1: vec![
            k.source.module.invariants().clone(),
            k.target.module.invariants().clone(),
            l.target.module.invariants().clone(),
        ],
        kappa_star: k.map.matrix().clone(),
        lambda_star: l.map.matrix().clone(),
        direct,
        factored,
    })
}

/// Exactness of `0 → P₃ → P₂ → P₁ → 0` and of
/// `0 → X₀(G₃) → X₀(G₂) → X₀(G₁) → μ₃ → μ₂ → μ₁ → 0`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub weights_exact: bool,
    pub terms: Vec<(String, AbelianInvariants)>,
    pub stages: Vec<StageCheck>,
}

impl CoverReport {
    pub fn holds(&self) -> bool {
        self.weights_exact && self.stages.iter().all(|s| s.holds)
    }
}

/// `X₀(G₁) → μ₃`: lift `x₁` to `x₂ ∈ X₂`, then the weight of `x₂` comes from `P₃`.
pub fn connecting_map(seq: &DatumSequence) -> Result<DMap> {
    let sec = z_section(seq.kappa.pullback.matrix())?;
    let lp = seq.lambda.on_weights();
    let solver = Solver::new(lp.matrix());
    let x0 = seq.g1.coradical();
    let mut cols = Vec::new();
    for x1 in x0.matrix().to_columns() {
        let x2 = sec.mul_vec(&x1);
        let w = seq.g2.weights().apply(&x2);
        let p3 = solver
            .solve(&w)
            .ok_or_else(|| Error::ExactnessFailure("weight of a lift does not come from P₃".to_string()))?;
        cols.push(seq.g3.fundamental().apply(&p3));
    }
    let mu3 = seq.g3.mu();
    DMap::new(x0.source(), mu3, Matrix::from_columns(&cols, mu3.ngens()))
}

pub fn verify_cover_exactness(seq: &DatumSequence, _cfg: &Config) -> Result<CoverReport> {
    let weights_exact = check_exact(&seq.lambda.on_weights(), &seq.kappa.on_weights()).is_ok();
    let m1 = seq.lambda.on_coradical();
    let m2 = seq.kappa.on_coradical();
    let m3 = connecting_map(seq)?;
    let m4 = seq.lambda.on_mu();
    let m5 = seq.kappa.on_mu();
    let stages = vec![
        stage("X₀(G₃) → X₀(G₂) is injective", m1.is_injective()),
        stage("exact at X₀(G₂)", exact_at(&m1, &m2)),
        stage("exact at X₀(G₁)", exact_at(&m2, &m3)),
        stage("exact at μ₃", exact_at(&m3, &m4)),
        stage("exact at μ₂", exact_at(&m4, &m5)),
        stage("μ₂ → μ₁ is surjective", m5.is_surjective()),
    ];
    let terms = [
        ("X₀(G₃)", m1.source()),
        ("X₀(G₂)", m2.source()),
        ("X₀(G₁)", m3.source()),
        ("μ₃", m4.source()),
        ("μ₂", m5.source()),
        ("μ₁", m5.target()),
    ]
    .iter()
    .map(|(n, m)| (n.to_string(), m.invariants().clone()))
    .collect();
    let report = CoverReport {
        weights_exact,
        terms,
        stages,
    };
    if !report.weights_exact {
        return Err(Error::verification(
            "cover sequence",
            "0 → P₃ → P₂ → P₁ → 0 is not exact",
        ));
    }
    if let Some(s) = report.stages.iter().find(|s| !s.holds) {
        return Err(Error::verification("six-term sequence", s.stage.clone()));
    }
    Ok(report)
}

/// Functoriality of `π₁` along the two maps of a sequence.
#[derive(Clone, Debug, Serialize)]
pub struct FunctorialityReport {
    pub kappa_star: Matrix,
    pub lambda_star: Matrix,
    pub stages: Vec<StageCheck>,
}

pub fn verify_functoriality(seq: &DatumSequence, cfg: &Config) -> Result<FunctorialityReport> {
    let r1 = flasque_resolution(&seq.g1, cfg)?;
    let r2 = flasque_resolution(&seq.g2, cfg)?;
    let r3 = flasque_resolution(&seq.g3, cfg)?;
    let k = induced_pi1_map(&seq.kappa, &r1, &r2, cfg)?;
    let l = induced_pi1_map(&seq.lambda, &r2, &r3, cfg)?;
    let id = induced_pi1_map(&DatumMorphism::identity(&seq.g2), &r2, &r2, cfg)?;
    let lk = induced_pi1_map(&seq.lambda.after(&seq.kappa), &r1, &r3, cfg)?;
    let stages = vec![
        stage(
            "identity induces the identity",
            id.map.equals(&DMap::identity(id.map.source())),
        ),
        stage(
            "independent of sections",
            [&k, &l, &lk].iter().all(|m| m.independent != Some(false)),
        ),
        stage(
            "agrees with cocharacters",
            k.matches_cocharacters && l.matches_cocharacters,
        ),
        stage("(λ∘κ)_* = λ_*∘κ_*", lk.map.equals(&l.map.after(&k.map))),
    ];
    Route {
        name: "functoriality of π₁".to_string(),
        stages: stages.clone(),
    }
    .check()?;
    Ok(FunctorialityReport {
        kappa_star: k.map.matrix().clone(),
        lambda_star: l.map.matrix().clone(),
        stages,
    })
}
