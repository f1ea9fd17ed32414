use super::*;
use crate::config::Config;
use proptest::prelude::*;

fn z2() -> FiniteGroup {
    FiniteGroup::cyclic(2)
}

fn m1(v: i64) -> Matrix {
    Matrix::from_i64(&[vec![v]])
}

fn sign(g: &FiniteGroup) -> DModule {
    DModule::from_generator_action(g, 1, &Matrix::zeros(0, 1), &[(1, m1(-1))]).unwrap()
}

fn z3_twisted() -> DModule {
    DModule::from_generator_action(&z2(), 1, &Matrix::from_i64(&[vec![3]]), &[(1, m1(2))]).unwrap()
}

#[test]
fn rejects_bad_actions() {
    let g = z2();
    // σ ↦ 2 on Z is not invertible, so σ² ≠ 1.
    assert!(matches!(
        DModule::from_generator_action(&g, 1, &Matrix::zeros(0, 1), &[(1, m1(2))]),
        Err(Error::NotHomomorphism { .. })
    ));
    // σ ↦ 2 on Z/4 does not square to the identity either.
    assert!(DModule::from_generator_action(&g, 1, &Matrix::from_i64(&[vec![4]]), &[(1, m1(2))]).is_err());
    assert!(z3_twisted().validate().is_ok());
}

#[test]
fn permutation_modules() {
    let g = z2();
    let reg = permutation_module(&g, &[(g.trivial_subgroup(), 1)]);
    assert_eq!(reg.ngens(), 2);
    assert_eq!(reg.action(1), &Matrix::from_i64(&[vec![0, 1], vec![1, 0]]));
    let triv = permutation_module(&g, &[(g.whole(), 1)]);
    assert_eq!(triv.ngens(), 1);
    assert!(triv.action(1).is_identity());
    let s3 = FiniteGroup::s3();
    let h = Subgroup::new(&s3, &[0, 1]).unwrap();
    let p = permutation_module(&s3, &[(h.clone(), 1)]);
    assert_eq!(p.ngens(), 3);
    // Each element permutes the three cosets; check against direct coset action.
    let reps = h.left_coset_reps(&s3);
    for x in s3.elements() {
        for (i, &r) in reps.iter().enumerate() {
            let xr = s3.mul(x, r);
            let j = reps
                .iter()
                .position(|&q| h.elements().iter().any(|&t| s3.mul(q, t) == xr))
                .unwrap();
            assert!(p.action(x)[(j, i)].is_one());
        }
    }
    assert_eq!(p.permutation_tag().unwrap().rank(&s3), 3);
}

#[test]
fn kernels_and_cokernels() {
    let g = z2();
    let z = DModule::trivial(&g, 1);
    let two = DMap::new(&z, &z, m1(2)).unwrap();
    assert!(kernel(&two).module.is_zero());
    for n in 2..6 {
        let c = cokernel(&DMap::new(&z, &z, m1(n)).unwrap());
        assert_eq!(c.module.invariants().torsion, vec![Int::from(n)]);
        assert!(c.module.action(1).is_identity());
    }
    let reg = permutation_module(&g, &[(g.trivial_subgroup(), 1)]);
    let norm = DMap::new(&z, &reg, Matrix::from_i64(&[vec![1], vec![1]])).unwrap();
    let c = cokernel(&norm);
    assert_eq!(c.module.invariants().free_rank, 1);
    assert!(c.module.invariants().torsion.is_empty());
    assert_eq!(c.module.action(1), &m1(-1));
    check_exact(&norm, &c.projection).unwrap();
    let k = kernel(&c.projection);
    assert_eq!(k.module.ngens(), 1);
    assert!(k.module.action(1).is_identity());
}

#[test]
fn duals() {
    let g = z2();
    let z = DModule::trivial(&g, 1);
    assert_eq!(dual(&z).unwrap(), z);
    let s = sign(&g);
    assert_eq!(dual(&s).unwrap(), s);
    let reg = permutation_module(&g, &[(g.trivial_subgroup(), 1)]);
    let d = dual(&reg).unwrap();
    assert_eq!(d.actions(), reg.actions());
    assert!(d.permutation_tag().is_some());
    assert_eq!(dual(&z3_twisted()), Err(Error::HasTorsion));
}

#[test]
fn minus_one_duals() {
    let g = z2();
    let (d, _) = minus_one_dual(&DModule::cyclic_trivial(&g, 5)).unwrap();
    assert_eq!(d.invariants().torsion, vec![Int::from(5)]);
    assert!(d.action(1).is_identity());
    let (d, _) = minus_one_dual(&DModule::zero(&g)).unwrap();
    assert!(d.is_zero());
    // Hom(Z/3, Q/Z): f(1) = a/3, (σf)(1) = f(σ⁻¹·1) = f(2) = 2a/3.
    let (d, _) = minus_one_dual(&z3_twisted()).unwrap();
    assert_eq!(d.action(1), &m1(2));
    assert_eq!(minus_one_dual(&DModule::trivial(&g, 1)).err(), Some(Error::NotFinite));
}

#[test]
fn fixed_point_modules() {
    let g = z2();
    let reg = permutation_module(&g, &[(g.trivial_subgroup(), 1)]);
    let (f, inc) = fixed_points(&reg, &g.whole());
    assert_eq!(f.ngens(), 1);
    assert_eq!(inc.matrix(), &Matrix::from_i64(&[vec![1], vec![1]]));
    let (f, _) = fixed_points(&sign(&g), &g.whole());
    assert!(f.is_zero());
    let (f, _) = fixed_points(&reg, &g.trivial_subgroup());
    assert_eq!(f.ngens(), 2);
}

#[test]
fn coinduction() {
    let g = z2();
    let (p, e) = coinduce_embed(&DModule::zero(&g)).unwrap();
    assert!(p.is_zero() && e.matrix().cols() == 0);
    let (p, e) = coinduce_embed(&DModule::trivial(&g, 1)).unwrap();
    assert_eq!(p.ngens(), 2);
    assert_eq!(e.matrix(), &Matrix::from_i64(&[vec![1], vec![1]]));
    let (_, e) = coinduce_embed(&sign(&g)).unwrap();
    assert_eq!(e.matrix(), &Matrix::from_i64(&[vec![1], vec![-1]]));
    assert!(e.is_injective());
}

#[test]
fn splitting() {
    let g = z2();
    let c = DModule::trivial(&g, 1);
    let zero = DModule::zero(&g);
    let s = split_extension(&DMap::zero(&zero, &c), &DMap::identity(&c))
        .unwrap()
        .unwrap();
    assert!(s.matrix().is_identity());
    let (sum, inj, proj) = DModule::direct_sum(&[&c, &c]);
    let s = split_extension(&inj[0], &proj[1]).unwrap().unwrap();
    assert!(proj[1].after(&s).matrix().is_identity());
    assert_eq!(s.target(), &sum);
    // 0 → Z(sign) → Z[Z/2] → Z → 0 does not split.
    let reg = permutation_module(&g, &[(g.trivial_subgroup(), 1)]);
    let i = DMap::new(&sign(&g), &reg, Matrix::from_i64(&[vec![1], vec![-1]])).unwrap();
    let aug = DMap::new(&reg, &c, Matrix::from_i64(&[vec![1, 1]])).unwrap();
    assert_eq!(split_extension(&i, &aug).unwrap(), None);
    // A non-exact pair is rejected.
    let bad = DMap::new(&reg, &c, Matrix::from_i64(&[vec![2, 2]])).unwrap();
    assert!(matches!(split_extension(&i, &bad), Err(Error::NotExact(_))));
}

#[test]
fn finite_isomorphisms() {
    let cfg = Config::default();
    let g = z2();
    let a = DModule::cyclic_trivial(&g, 2);
    let b = DModule::cyclic_trivial(&g, 2);
    assert!(iso_finite(&a, &b, &cfg).unwrap().is_some());
    let z4 = DModule::cyclic_trivial(&g, 4);
    let (v4, _, _) = DModule::direct_sum(&[&a, &b]);
    assert!(iso_finite(&z4, &v4, &cfg).unwrap().is_none());
    let t = DModule::cyclic_trivial(&g, 3);
    assert!(iso_finite(&z3_twisted(), &t, &cfg).unwrap().is_none());
    // Z/3 ⊕ Z/3 with the swap is isomorphic to itself through a nontrivial presentation change.
    let swap = Matrix::from_i64(&[vec![0, 1], vec![1, 0]]);
    let m = DModule::from_generator_action(&g, 2, &Matrix::from_i64(&[vec![3, 0], vec![0, 3]]), &[(1, swap)]).unwrap();
    let n = DModule::from_generator_action(
        &g,
        2,
        &Matrix::from_i64(&[vec![3, 3], vec![0, 3]]),
        &[(1, Matrix::from_i64(&[vec![1, 1], vec![0, -1]]))],
    );
    if let Ok(n) = n {
        let f = iso_finite(&m, &n, &cfg).unwrap().expect("isomorphic");
        assert!(f.is_iso());
    }
}

#[test]
fn rank_nullity_example() {
    let g = z2();
    let reg = permutation_module(&g, &[(g.trivial_subgroup(), 1)]);
    let aug = DMap::new(&reg, &DModule::trivial(&g, 1), Matrix::from_i64(&[vec![1, 1]])).unwrap();
    let k = kernel(&aug);
    let im = image(&aug);
    assert_eq!(k.module.rank() + im.module.rank(), reg.rank());
    assert_eq!(k.module.action(1), &m1(-1));
    assert!(im.inclusion.after(&im.surjection).equals(&aug));
}

#[test]
fn tensor_with_augmentation() {
    let g = z2();
    let i = augmentation_ideal(&g);
    assert_eq!(i.action(1), &m1(-1));
    let t = tensor(&i, &sign(&g));
    assert!(t.action(1).is_identity());
    let t = tensor(&DModule::cyclic_trivial(&g, 2), &DModule::cyclic_trivial(&g, 3));
    assert!(t.is_zero());
}

fn random_z2_lattice() -> impl Strategy<Value = DModule> {
    // Direct sums of trivial, sign and regular blocks conjugated by a unimodular matrix.
    (prop::collection::vec(0u8..3, 1..4), prop::collection::vec(-2i64..=2, 6)).prop_map(|(kinds, shear)| {
        let g = FiniteGroup::cyclic(2);
        let blocks: Vec<Matrix> = kinds
            .iter()
            .map(|k| match k {
                0 => m1(1),
                1 => m1(-1),
                _ => Matrix::from_i64(&[vec![0, 1], vec![1, 0]]),
            })
            .collect();
        let a = Matrix::block_diag(&blocks.iter().collect::<Vec<_>>());
        let n = a.rows();
        let mut u = Matrix::identity(n);
        for (t, s) in shear.iter().enumerate() {
            let (i, j) = (t % n, (t + 1) % n);
            if i != j {
                u[(i, j)] = Int::from(*s);
            }
        }
        // u is unitriangular up to wrap-around; only accept if unimodular.
        let u = if u.determinant().abs().is_one() {
            u
        } else {
            Matrix::identity(n)
        };
        let ui = crate::linalg::Solver::new(&u);
        let inv_cols: Vec<Vec<Int>> = (0..n)
            .map(|j| {
                let mut e = vec![Int::ZERO; n];
                e[j] = Int::ONE;
                ui.solve(&e).unwrap()
            })
            .collect();
        let uinv = Matrix::from_columns(&inv_cols, n);
        DModule::lattice(&g, vec![Matrix::identity(n), u.mul(&a).mul(&uinv)]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in random_z2_lattice(), n in random_z2_lattice(), w in prop::collection::vec(-2i64..=2, 16)) {
        // Average an arbitrary matrix over the group to get an equivariant map.
        let (km, kn) = (m.ngens(), n.ngens());
        let mut raw = Matrix::zeros(kn, km);
        for i in 0..kn {
            for j in 0..km {
                raw[(i, j)] = Int::from(w[(i * km + j) % 16]);
            }
        }
        let avg = raw.add(&n.action(1).mul(&raw).mul(m.action(1)));
        let f = DMap::new(&m, &n, avg).unwrap();
        let k = kernel(&f);
        let im = image(&f);
        prop_assert_eq!(k.module.rank() + im.module.rank(), m.rank());
        prop_assert!(f.after(&k.inclusion).is_zero());
        let c = cokernel(&f);
        let stacked = crate::linalg::elementary_divisors(&f.matrix().transpose());
        prop_assert_eq!(&c.module.invariants().torsion, &stacked);
        prop_assert_eq!(c.module.rank(), kn - crate::linalg::rank(f.matrix()));
    }

    #[test]
    fn duality_is_an_involution(m in random_z2_lattice()) {
        let dd = dual(&dual(&m).unwrap()).unwrap();
        prop_assert_eq!(dd, m.clone());
        let (_, e) = coinduce_embed(&m).unwrap();
        prop_assert!(e.is_injective());
    }
}
