//! Coflasque resolutions, flasque quotients and flasque covers.

use crate::cohomology::{is_coflasque, is_flasque};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::linalg::{Int, Lattice, Matrix};
use crate::module::{check_exact, cokernel, dual, dual_map, fixed_lattice, kernel, permutation_module, DMap, DModule};
use serde::Serialize;

/// What was verified about one term of a short exact sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TermFlags {
    pub permutation: bool,
    /// `None` for modules with torsion.
    pub flasque: Option<bool>,
    pub coflasque: Option<bool>,
}

/// `0 → left → middle → right → 0`, audited on construction.
#[derive(Clone, Debug)]
pub struct ResolutionTriple {
    pub left: DModule,
    pub middle: DModule,
    pub right: DModule,
    pub iota: DMap,
    pub pi: DMap,
    pub flags: [TermFlags; 3],
}

fn flags_of(m: &DModule, cfg: &Config) -> Result<TermFlags> {
    let permutation = m.permutation_tag().is_some();
    if !m.is_lattice() {
        return Ok(TermFlags {
            permutation,
            ..TermFlags::default()
        });
    }
    Ok(TermFlags {
        permutation,
        flasque: Some(is_flasque(m, cfg)?.holds),
        coflasque: Some(is_coflasque(m, cfg)?.holds),
    })
}

impl ResolutionTriple {
    pub fn new(iota: DMap, pi: DMap, cfg: &Config) -> Result<ResolutionTriple> {
        check_exact(&iota, &pi)?;
        let flags = [
            flags_of(iota.source(), cfg)?,
            flags_of(iota.target(), cfg)?,
            flags_of(pi.target(), cfg)?,
        ];
        Ok(ResolutionTriple {
            left: iota.source().clone(),
            middle: iota.target().clone(),
            right: pi.target().clone(),
            iota,
            pi,
            flags,
        })
    }

    fn require(&self, idx: usize, what: &str, ok: bool) -> Result<()> {
        if ok {
            Ok(())
        } else {
            let name = ["left", "middle", "right"][idx];
            Err(Error::verification("resolution", format!("{name} term is not {what}")))
        }
    }
}

/// `0 → C → P → X → 0` with `P` a permutation module and `C` coflasque.
///
/// `P` has one summand `Z[Δ/Θ]` per chosen vector of `X^Θ`, mapping the trivial
/// coset to that vector. Θ runs over conjugacy class representatives from the
/// largest down, and a basis vector of `X^Θ` is chosen only when it is not
/// already in the image of `P^Θ`.
pub fn coflasque_resolution(x: &DModule, cfg: &Config) -> Result<ResolutionTriple> {
    if !x.is_lattice() {
        return Err(Error::HasTorsion);
    }
    let g = x.group();
    let lat = g.subgroups(cfg)?;
    let mut reps = lat.representatives();
    reps.sort_by_key(|t| std::cmp::Reverse(t.order()));
    let mut chosen: Vec<(Subgroup, Vec<Int>)> = Vec::new();
    for theta in &reps {
        let mut basis = fixed_lattice(x, theta).vectors();
        basis.sort();
        let mut image = fixed_image(x, &chosen, theta, cfg)?;
        for v in basis {
            if !image.contains(&v) {
                chosen.push(((*theta).clone(), v));
                image = fixed_image(x, &chosen, theta, cfg)?;
            }
        }
    }
    let (_, pi) = evaluation(x, &chosen, cfg)?;
    // Surjectivity on fixed points for every representative.
    for theta in &reps {
        if fixed_image(x, &chosen, theta, cfg)? != fixed_lattice(x, theta) {
            return Err(Error::verification(
                "coflasque resolution",
                format!("not surjective on fixed points of {:?}", theta.elements()),
            ));
        }
    }
    let ker = kernel(&pi);
    let t = ResolutionTriple::new(ker.inclusion, pi, cfg)?;
    t.require(1, "a permutation module", t.flags[1].permutation)?;
    t.require(0, "coflasque", t.flags[0].coflasque == Some(true))?;
    Ok(t)
}

/// `⊕ Z[Δ/Θ] → X` sending the trivial coset of each summand to its vector.
fn evaluation(x: &DModule, chosen: &[(Subgroup, Vec<Int>)], cfg: &Config) -> Result<(DModule, DMap)> {
    let g = x.group();
    let mut parts: Vec<(Subgroup, usize)> = Vec::new();
    let mut columns: Vec<Vec<Int>> = Vec::new();
    for (theta, v) in chosen {
        match parts.last_mut() {
            Some((t, n)) if t == theta => *n += 1,
            _ => parts.push((theta.clone(), 1)),
        }
        for r in theta.left_coset_reps(g) {
            columns.push(x.act(r, v));
        }
    }
    cfg.check_dim("permutation cover rank", columns.len())?;
    let p = permutation_module(g, &parts);
    let pi = DMap::new(&p, x, Matrix::from_columns(&columns, x.ngens()))?;
    Ok((p, pi))
}

/// The image of `P^Θ` in `X^Θ` for the summands chosen so far.
fn fixed_image(x: &DModule, chosen: &[(Subgroup, Vec<Int>)], theta: &Subgroup, cfg: &Config) -> Result<Lattice> {
    let (p, pi) = evaluation(x, chosen, cfg)?;
    let img: Vec<Vec<Int>> = fixed_lattice(&p, theta).vectors().iter().map(|v| pi.apply(v)).collect();
    Ok(Lattice::from_vectors(x.ngens(), &img))
}

/// `0 → L → P → F → 0` with `P` a permutation module and `F` flasque, the dual
/// of the coflasque resolution of `L^∨`.
pub fn flasque_quotient_embedding(l: &DModule, cfg: &Config) -> Result<ResolutionTriple> {
    let r = coflasque_resolution(&dual(l)?, cfg)?;
    // L^∨∨ is L on the same basis.
    let iota = dual_map(&r.pi)?.retarget(l, &dual(&r.middle)?);
    let pi = dual_map(&r.iota)?;
    let t = ResolutionTriple::new(iota, pi, cfg)?;
    t.require(1, "a permutation module", t.flags[1].permutation)?;
    t.require(2, "flasque", t.flags[2].flasque == Some(true))?;
    Ok(t)
}

/// `0 → P → F → M → 0` with `P` a permutation module and `F` flasque.
///
/// Built from the free cover `Z[Δ]^m → M` on the given generators, a flasque
/// quotient embedding `L₁ → P` of its kernel, and the pushout
/// `F = (Z[Δ]^m ⊕ P) / {(l, −l)}`.
pub fn flasque_cover(m: &DModule, cfg: &Config) -> Result<ResolutionTriple> {
    let gens: Vec<Vec<Int>> = (0..m.ngens())
        .map(|i| {
            let mut e = vec![Int::ZERO; m.ngens()];
            e[i] = Int::ONE;
            e
        })
        .collect();
    flasque_cover_on(m, &gens, cfg)
}

/// [`flasque_cover`] on an explicit list of generators of `M` as a Δ-module.
pub fn flasque_cover_on(m: &DModule, gens: &[Vec<Int>], cfg: &Config) -> Result<ResolutionTriple> {
    let g = m.group();
    let n = m.ngens();
    let free = permutation_module(g, &[(g.trivial_subgroup(), gens.len())]);
    let ord = g.order();
    // Summand i, element h at index i * |Δ| + h; it maps to h·x_i.
    let mut cols = Vec::with_capacity(ord * gens.len());
    for e in gens {
        for h in g.elements() {
            cols.push(m.act(h, e));
        }
    }
    let eps = DMap::new(&free, m, Matrix::from_columns(&cols, n))?;
    if !eps.is_surjective() {
        return Err(Error::Input(
            "flasque cover: elements do not generate the module".to_string(),
        ));
    }
    let k1 = kernel(&eps);
    let emb = flasque_quotient_embedding(&k1.module, cfg)?;
    let p1 = emb.middle.clone();
    let (sum, inj, _) = DModule::direct_sum(&[&free, &p1]);
    let anti = inj[0].after(&k1.inclusion).sub(&inj[1].after(&emb.iota));
    let co = cokernel(&anti);
    let f = co.module.clone();
    let iota = co.projection.after(&inj[1]);
    let to_m = DMap::new(&sum, m, Matrix::hstack(&[eps.matrix(), &Matrix::zeros(n, p1.ngens())]))?;
    let pi = co
        .projection
        .descend(&to_m)
        .ok_or_else(|| Error::verification("flasque cover", "map to M does not descend"))?;
    let pi = DMap::new(&f, m, pi.matrix().clone())?;
    let t = ResolutionTriple::new(iota, pi, cfg)?;
    t.require(0, "a permutation module", t.flags[0].permutation)?;
    t.require(1, "flasque", t.flags[1].flasque == Some(true))?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::tate;
    use crate::group::{FiniteGroup, Subgroup};
    use crate::module::{augmentation_ideal, iso_finite};

    fn m1(v: i64) -> Matrix {
        Matrix::from_i64(&[vec![v]])
    }

    fn sign() -> DModule {
        DModule::from_generator_action(&FiniteGroup::cyclic(2), 1, &Matrix::zeros(0, 1), &[(1, m1(-1))]).unwrap()
    }

    #[test]
    fn zero_inputs() {
        let cfg = Config::default();
        let g = FiniteGroup::cyclic(2);
        let z = DModule::zero(&g);
        for t in [
            coflasque_resolution(&z, &cfg).unwrap(),
            flasque_quotient_embedding(&z, &cfg).unwrap(),
            flasque_cover(&z, &cfg).unwrap(),
        ] {
            assert!(t.left.is_zero() && t.middle.is_zero() && t.right.is_zero());
        }
    }

    #[test]
    fn coflasque_resolution_of_trivial_and_sign() {
        let cfg = Config::default();
        let g = FiniteGroup::cyclic(2);
        let t = coflasque_resolution(&DModule::trivial(&g, 1), &cfg).unwrap();
        // A single summand Z for Δ already covers X.
        assert_eq!(t.middle.ngens(), 1);
        assert!(t.left.is_zero());
        assert_eq!(t.flags[0].coflasque, Some(true));
        let t = coflasque_resolution(&sign(), &cfg).unwrap();
        assert_eq!(t.middle.ngens(), 2);
        assert_eq!(t.left.ngens(), 1);
        // The kernel of Z[Δ] → sign is spanned by e + σ, a trivial line.
        assert!(t.left.action(1).is_identity());
        assert!(tate(&g.whole(), &t.left, 1, &cfg).unwrap().is_zero());
    }

    #[test]
    fn flasque_quotients() {
        let cfg = Config::default();
        let g = FiniteGroup::cyclic(2);
        let t = flasque_quotient_embedding(&DModule::trivial(&g, 1), &cfg).unwrap();
        assert_eq!(t.flags[2].flasque, Some(true));
        let s3 = FiniteGroup::s3();
        let aug = augmentation_ideal(&s3);
        let t = flasque_quotient_embedding(&aug, &cfg).unwrap();
        assert_eq!(t.right.ngens(), t.middle.ngens() - aug.ngens());
        assert_eq!(t.flags[2].flasque, Some(true));
        let full = Config {
            audit: crate::config::AuditMode::Full,
            ..Config::default()
        };
        assert!(is_flasque(&t.right, &full).unwrap().holds);
    }

    #[test]
    fn flasque_cover_over_trivial_group() {
        let cfg = Config::default();
        let g = FiniteGroup::trivial();
        let m = DModule::cyclic_trivial(&g, 2);
        let t = flasque_cover(&m, &cfg).unwrap();
        assert_eq!(t.middle.rank(), t.left.rank());
        assert_eq!(t.right.order(), Some(Int::from(2)));
    }

    #[test]
    fn flasque_cover_of_twisted_z3() {
        let cfg = Config::default();
        let g = FiniteGroup::cyclic(2);
        let m = DModule::from_generator_action(&g, 1, &m1(3), &[(1, m1(2))]).unwrap();
        let t = flasque_cover(&m, &cfg).unwrap();
        assert!(t.flags[0].permutation);
        assert_eq!(t.flags[1].flasque, Some(true));
        // The cokernel of P → F recovers M.
        let q = cokernel(&t.iota).module;
        assert!(iso_finite(&q, &m, &cfg).unwrap().is_some());
        assert!(tate(&g.whole(), &t.middle, -1, &cfg).unwrap().is_zero());
    }

    #[test]
    fn flasque_cover_of_a_lattice_over_s3() {
        let cfg = Config::default();
        let s3 = FiniteGroup::s3();
        let aug = augmentation_ideal(&s3);
        let t = flasque_cover(&aug, &cfg).unwrap();
        assert_eq!(t.middle.rank(), t.left.rank() + aug.rank());
        let h = Subgroup::new(&s3, &[0, 1]).unwrap();
        assert!(tate(&h, &t.middle, -1, &cfg).unwrap().is_zero());
    }
}
