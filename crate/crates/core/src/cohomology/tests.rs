use super::*;
use crate::group::FiniteGroup;
use crate::module::{augmentation_ideal, cokernel, permutation_module};
use proptest::prelude::*;

fn m1(v: i64) -> Matrix {
    Matrix::from_i64(&[vec![v]])
}

/// The sign character: involutions act by −1.
fn sign(g: &FiniteGroup) -> DModule {
    let act = g
        .elements()
        .map(|x| m1(if g.element_order(x) == 2 { -1 } else { 1 }))
        .collect();
    DModule::lattice(g, act).unwrap()
}

fn classes(theta: &Subgroup, m: &DModule, lo: i64, hi: i64) -> Vec<TateClass> {
    let cfg = Config::default();
    (lo..=hi).map(|i| tate(theta, m, i, &cfg).unwrap()).collect()
}

fn c(orders: &[i64]) -> TateClass {
    let v: Vec<Int> = orders.iter().map(|&o| Int::from(o)).collect();
    TateClass::from_cyclic_orders(&v)
}

#[test]
fn class_normal_form() {
    assert_eq!(c(&[2, 3]), c(&[6]));
    assert_eq!(c(&[4, 6]).divisors(), &[Int::from(2), Int::from(12)]);
    assert_eq!(c(&[1, 1]), TateClass::zero());
    assert_eq!(c(&[2, 4]).to_string(), "Z/2 + Z/4");
    assert_eq!(TateClass::zero().to_string(), "0");
}

#[test]
fn cyclic_groups_with_trivial_coefficients() {
    for n in [2usize, 3, 4, 6] {
        let g = FiniteGroup::cyclic(n);
        let z = DModule::trivial(&g, 1);
        let got = classes(&g.whole(), &z, -3, 3);
        let want: Vec<TateClass> = (-3..=3)
            .map(|i: i64| {
                if i % 2 == 0 {
                    TateClass::cyclic(n as i64)
                } else {
                    TateClass::zero()
                }
            })
            .collect();
        assert_eq!(got, want, "Z/{n}");
    }
}

#[test]
fn formulas_agree_with_bar_complex() {
    let cfg = Config::default();
    let s3 = FiniteGroup::s3();
    let h = Subgroup::new(&s3, &[0, 1]).unwrap();
    let mods = [
        DModule::trivial(&s3, 1),
        permutation_module(&s3, &[(h.clone(), 1)]),
        augmentation_ideal(&s3),
        sign(&s3),
        DModule::cyclic_trivial(&s3, 4),
    ];
    for m in &mods {
        for theta in s3.subgroups(&cfg).unwrap().all.iter() {
            for i in [-1, 0] {
                let a = tate(theta, m, i, &cfg).unwrap();
                let b = tate_complete(theta, m, i, &cfg).unwrap();
                assert_eq!(a, b, "degree {i} over {:?}", theta.elements());
            }
        }
    }
}

#[test]
fn s3_with_integer_coefficients() {
    let s3 = FiniteGroup::s3();
    let z = DModule::trivial(&s3, 1);
    // Abelianization, 0, group order, 0, dual of abelianization, Schur multiplier.
    assert_eq!(
        classes(&s3.whole(), &z, -2, 3),
        vec![c(&[2]), c(&[]), c(&[6]), c(&[]), c(&[2]), c(&[])]
    );
}

#[test]
fn klein_four_with_integer_coefficients() {
    let v = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    let z = DModule::trivial(&v, 1);
    assert_eq!(
        classes(&v.whole(), &z, -3, 3),
        vec![c(&[2]), c(&[2, 2]), c(&[]), c(&[4]), c(&[]), c(&[2, 2]), c(&[2])]
    );
}

#[test]
fn shapiro_for_coset_modules() {
    // Ĥ^i(S3, Z[S3/H]) = Ĥ^i(H, Z).
    let s3 = FiniteGroup::s3();
    let cfg = Config::default();
    for h in s3.subgroups(&cfg).unwrap().all.iter() {
        let p = permutation_module(&s3, &[(h.clone(), 1)]);
        let got = classes(&s3.whole(), &p, -2, 2);
        let (hg, emb) = s3.subgroup_as_group(h);
        assert_eq!(emb.len(), h.order());
        let want = classes(&hg.whole(), &DModule::trivial(&hg, 1), -2, 2);
        assert_eq!(got, want, "H = {:?}", h.elements());
    }
}

#[test]
fn sign_and_finite_coefficients() {
    let g = FiniteGroup::cyclic(2);
    let s = sign(&g);
    assert_eq!(
        classes(&g.whole(), &s, -2, 2),
        vec![c(&[]), c(&[2]), c(&[]), c(&[2]), c(&[])]
    );
    let z2 = DModule::cyclic_trivial(&g, 2);
    assert!(classes(&g.whole(), &z2, -2, 2).iter().all(|x| *x == c(&[2])));
    // Coprime order kills everything.
    let z3 = DModule::from_generator_action(&g, 1, &m1(3), &[(1, m1(2))]).unwrap();
    assert!(classes(&g.whole(), &z3, -2, 2).iter().all(TateClass::is_zero));
    // Over the trivial subgroup every Tate group vanishes.
    assert!(classes(&g.trivial_subgroup(), &s, -2, 2).iter().all(TateClass::is_zero));
}

#[test]
fn flasque_predicates() {
    let cfg = Config::default();
    let s3 = FiniteGroup::s3();
    let h = Subgroup::new(&s3, &[0, 1]).unwrap();
    let p = permutation_module(&s3, &[(h, 2), (s3.trivial_subgroup(), 1)]);
    assert!(is_flasque(&p, &cfg).unwrap().holds);
    assert!(is_coflasque(&p, &cfg).unwrap().holds);
    let aug = augmentation_ideal(&s3);
    let r = is_coflasque(&aug, &cfg).unwrap();
    assert!(!r.holds);
    // Ĥ^1(Θ, I) = Z/|Θ|.
    for e in r.entries.iter() {
        assert_eq!(e.class.order(), Int::from(e.subgroup.order() as i64));
    }
    // Ĥ^{-1}(Θ, I) is the abelianization of Θ.
    let r = is_flasque(&aug, &cfg).unwrap();
    let ab: Vec<i64> = r.entries.iter().map(|e| e.class.order().to_i64().unwrap()).collect();
    assert_eq!(ab, vec![1, 2, 3, 2]);
    let full = Config {
        audit: AuditMode::Full,
        ..Config::default()
    };
    assert_eq!(is_coflasque(&aug, &full).unwrap().entries.len(), 6);
    let s = sign(&FiniteGroup::cyclic(2));
    let r = is_flasque(&s, &cfg).unwrap();
    assert_eq!(r.failures().len(), 1);
    assert!(!r.torsion_warning);
}

#[test]
fn duality_examples() {
    let cfg = Config::default();
    let s3 = FiniteGroup::s3();
    for m in [augmentation_ideal(&s3), DModule::trivial(&s3, 2), sign(&s3)] {
        for theta in s3.subgroups(&cfg).unwrap().all.iter() {
            assert!(duality_check(&m, theta, &cfg).unwrap().holds);
        }
    }
}

#[test]
fn augmentation_sequence_is_exact() {
    let cfg = Config::default();
    let s3 = FiniteGroup::s3();
    let reg = permutation_module(&s3, &[(s3.trivial_subgroup(), 1)]);
    let eps = DMap::new(&reg, &DModule::trivial(&s3, 1), Matrix::from_i64(&[vec![1; 6]])).unwrap();
    let k = crate::module::kernel(&eps);
    let audit = ses_les_audit(&k.inclusion, &eps, &s3.whole(), -2, 2, &cfg).unwrap();
    assert!(audit.exact);
    assert_eq!(audit.rows.len(), 5);
    assert!(audit.rows.iter().all(|r| r.b.is_zero()));
}

#[test]
fn hypercohomology_of_simple_complexes() {
    let cfg = Config::default();
    let g = FiniteGroup::cyclic(2);
    let th = g.whole();
    let s = sign(&g);
    let z = DModule::trivial(&g, 1);
    for i in -2..=2 {
        assert_eq!(
            hyper_tate(&TwoTermComplex::concentrated(&s), &th, i, &cfg).unwrap(),
            tate(&th, &s, i, &cfg).unwrap()
        );
        assert_eq!(
            hyper_tate(&TwoTermComplex::shifted(&z), &th, i, &cfg).unwrap(),
            tate(&th, &z, i + 1, &cfg).unwrap()
        );
        let id = TwoTermComplex::new(DMap::identity(&s));
        assert!(hyper_tate(&id, &th, i, &cfg).unwrap().is_zero());
        // [Z --2--> Z] is quasi-isomorphic to Z/2 in degree 0.
        let two = TwoTermComplex::new(DMap::new(&z, &z, m1(2)).unwrap());
        assert_eq!(hyper_tate(&two, &th, i, &cfg).unwrap(), c(&[2]));
    }
}

#[test]
fn injective_complexes_compute_the_cokernel() {
    let cfg = Config::default();
    let s3 = FiniteGroup::s3();
    let reg = permutation_module(&s3, &[(s3.trivial_subgroup(), 1)]);
    let z = DModule::trivial(&s3, 1);
    let norm = DMap::new(&z, &reg, Matrix::from_i64(&vec![vec![1]; 6])).unwrap();
    let j = cokernel(&norm).module;
    let cx = TwoTermComplex::new(norm);
    let h = Subgroup::new(&s3, &[0, 1]).unwrap();
    for theta in [s3.whole(), h] {
        for i in -1..=1 {
            assert_eq!(
                hyper_tate(&cx, &theta, i, &cfg).unwrap(),
                tate(&theta, &j, i, &cfg).unwrap()
            );
            let les = hyper_tate_les(&cx, &theta, i, &cfg).unwrap();
            assert!(les.exact, "{les:?}");
            assert_eq!(les.nodes.len(), 6);
        }
    }
}

#[test]
fn les_of_a_non_injective_complex() {
    let cfg = Config::default();
    let g = FiniteGroup::cyclic(2);
    let reg = permutation_module(&g, &[(g.trivial_subgroup(), 1)]);
    let s = sign(&g);
    // Z[Z/2] → sign, e ↦ 1, σ ↦ −1: surjective with trivial kernel Z.
    let f = DMap::new(&reg, &s, Matrix::from_i64(&[vec![1, -1]])).unwrap();
    let cx = TwoTermComplex::new(f);
    for i in -2..=2 {
        let les = hyper_tate_les(&cx, &g.whole(), i, &cfg).unwrap();
        assert!(les.exact);
        // ℍ^i = Ĥ^{i+1}(ker) for surjective maps.
        assert_eq!(
            les.nodes[2].class,
            tate(&g.whole(), &DModule::trivial(&g, 1), i + 1, &cfg).unwrap()
        );
    }
}

fn z2_lattice(kind: u8) -> DModule {
    let g = FiniteGroup::cyclic(2);
    match kind % 3 {
        0 => DModule::trivial(&g, 1),
        1 => sign(&g),
        _ => permutation_module(&g, &[(g.trivial_subgroup(), 1)]),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tate_is_additive(a in 0u8..3, b in 0u8..3, i in -2i64..=2) {
        let cfg = Config::default();
        let (ma, mb) = (z2_lattice(a), z2_lattice(b));
        let (sum, _, _) = DModule::direct_sum(&[&ma, &mb]);
        let th = ma.group().whole();
        let lhs = tate_complete(&th, &sum, i, &cfg).unwrap();
        let rhs = tate(&th, &ma, i, &cfg).unwrap().direct_sum(&tate(&th, &mb, i, &cfg).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn duality_holds_for_sums(a in 0u8..3, b in 0u8..3) {
        let cfg = Config::default();
        let (ma, mb) = (z2_lattice(a), z2_lattice(b));
        let (sum, _, _) = DModule::direct_sum(&[&ma, &mb]);
        prop_assert!(duality_check(&sum, &sum.group().whole(), &cfg).unwrap().holds);
    }
}
