use super::*;
use crate::catalog::{self, with_trivial_action};
use crate::cohomology::TwoTermComplex;
use crate::group::FiniteGroup;
use crate::reductive::flasque_resolution;
use crate::rootdatum::GroupDatum;

fn c2() -> FiniteGroup {
    FiniteGroup::cyclic(2)
}

fn twisted() -> Vec<(&'static str, GroupDatum)> {
    vec![
        ("SL2", with_trivial_action(&catalog::sl(2), &c2())),
        ("PGL2", with_trivial_action(&catalog::pgl(2), &c2())),
        ("GL2", with_trivial_action(&catalog::gl(2), &c2())),
        ("U2", catalog::u2()),
        ("SU3", catalog::quasi_split_su3()),
        ("PU3", catalog::quasi_split_pu3()),
        ("sign torus", catalog::sign_torus()),
        ("norm-one torus of C3", catalog::norm_one_torus(&FiniteGroup::cyclic(3))),
    ]
}

fn class(gd: &GroupDatum, i: i64) -> TateClass {
    dual_ab_cohomology(gd, i, &Config::default()).unwrap()
}

#[test]
fn projective_line_group_with_trivial_twist() {
    let gd = with_trivial_action(&catalog::pgl(2), &c2());
    assert_eq!(class(&gd, 0), TateClass::cyclic(2));
    assert_eq!(class(&gd, 1), TateClass::cyclic(2));
    let whole = gd.group().whole();
    let mu = tate(&whole, gd.mu(), 0, &Config::default()).unwrap();
    assert_eq!(mu, TateClass::cyclic(2));
}

#[test]
fn shortcuts_agree_with_hypercohomology() {
    let cfg = Config::default();
    for (name, gd) in twisted() {
        let r = ab_cohomology_report(&gd, &[-1, 0, 1, 2], &cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(r.holds(), "{name}");
        if gd.is_semisimple() || gd.mu().is_zero() {
            assert!(r.rows.iter().all(|row| row.shortcut.is_some()), "{name}");
        }
    }
}

#[test]
fn torus_matches_one_term_complex() {
    let cfg = Config::default();
    for gd in [catalog::sign_torus(), catalog::norm_one_torus(&FiniteGroup::cyclic(3))] {
        let shifted = TwoTermComplex::shifted(gd.characters());
        for i in -1..=1 {
            let direct = hyper_tate(&shifted, &gd.group().whole(), i, &cfg).unwrap();
            assert_eq!(class(&gd, i), direct);
        }
    }
}

#[test]
fn sign_torus_values() {
    // Ĥ^n(C2, Z⁻) is Z/2 for odd n.
    let gd = catalog::sign_torus();
    assert_eq!(class(&gd, -1), TateClass::zero());
    assert_eq!(class(&gd, 0), TateClass::cyclic(2));
    assert_eq!(class(&gd, 1), TateClass::zero());
}

#[test]
fn dual_abelian_sequence_is_exact() {
    let cfg = Config::default();
    for (name, gd) in twisted() {
        let r = verify_kamb_star(&gd, &cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(r.holds(), "{name}");
        assert_eq!(r.excerpts.len(), 2);
        if gd.is_semisimple() {
            // X₀ = 0, so the middle map is an isomorphism onto Ĥ^i(μ).
            for e in &r.excerpts {
                assert_eq!(e.nodes[2].class, e.nodes[3].class, "{name}");
            }
        }
    }
}

#[test]
fn resolution_computes_dual_abelian_cohomology() {
    let cfg = Config::default();
    for (name, gd) in twisted() {
        let res = flasque_resolution(&gd, &cfg).unwrap();
        let r = verify_prop_4_2_dual(&res, &cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(r.les.iter().all(|l| l.exact), "{name}");
    }
    let res = flasque_resolution(&with_trivial_action(&catalog::pgl(2), &c2()), &cfg).unwrap();
    let r = verify_prop_4_2_dual(&res, &cfg).unwrap();
    assert_eq!(r.rows[1].1, TateClass::cyclic(2));
    assert_eq!(r.rows[2].1, TateClass::cyclic(2));
    let res = flasque_resolution(&with_trivial_action(&catalog::gl(2), &c2()), &cfg).unwrap();
    let r = verify_prop_4_2_dual(&res, &cfg).unwrap();
    for (i, a, _) in &r.rows {
        let z = DModule::trivial(&c2(), 1);
        assert_eq!(a, &tate(&c2().whole(), &z, i + 1, &cfg).unwrap());
    }
}

#[test]
fn kernel_and_cokernel_of_the_resolution() {
    let cfg = Config::default();
    let inv = |a: &AbelianInvariants| {
        (
            a.free_rank,
            a.torsion.iter().map(|d| d.to_i64().unwrap()).collect::<Vec<_>>(),
        )
    };
    for (name, gd) in twisted() {
        let res = flasque_resolution(&gd, &cfg).unwrap();
        verify_cor_4_3_dual(&res, &cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let r = |gd: GroupDatum| verify_cor_4_3_dual(&flasque_resolution(&gd, &cfg).unwrap(), &cfg).unwrap();
    let pgl = r(with_trivial_action(&catalog::pgl(2), &c2()));
    assert_eq!((inv(&pgl.kernel), inv(&pgl.cokernel)), ((0, vec![]), (0, vec![2])));
    let gl = r(with_trivial_action(&catalog::gl(2), &c2()));
    assert_eq!((inv(&gl.kernel), inv(&gl.cokernel)), ((1, vec![]), (0, vec![])));
    let t = r(catalog::norm_one_torus(&FiniteGroup::cyclic(3)));
    assert_eq!((inv(&t.kernel), inv(&t.cokernel)), ((2, vec![]), (0, vec![])));
}
