//! Standard data: split classical groups, small quasi-split forms and tori.

use crate::group::FiniteGroup;
use crate::linalg::{Int, Matrix};
use crate::module::{augmentation_ideal, dual, DModule};
use crate::rootdatum::{GroupDatum, RootDatum};

fn iv(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn cartan_a(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => Int::from(2),
                    1 => Int::from(-1),
                    _ => Int::ZERO,
                })
                .collect()
        })
        .collect()
}

fn unit(n: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::ZERO; n];
    v[i] = Int::ONE;
    v
}

fn split_simple(n: usize, simple: &[Vec<Int>], simple_co: &[Vec<Int>]) -> GroupDatum {
    let x = DModule::trivial(&FiniteGroup::trivial(), n);
    GroupDatum::new(RootDatum::from_simple(&x, simple, simple_co)).expect("valid split datum")
}

fn flip2() -> DModule {
    let g = FiniteGroup::cyclic(2);
    let flip = Matrix::from_i64(&[vec![0, 1], vec![1, 0]]);
    DModule::from_generator_action(&g, 2, &Matrix::zeros(0, 2), &[(1, flip)]).expect("involution")
}

/// `SL_n` on the weight lattice, `n ≥ 2`.
pub fn sl(n: usize) -> GroupDatum {
    let r = n - 1;
    let co: Vec<Vec<Int>> = (0..r).map(|i| unit(r, i)).collect();
    split_simple(r, &cartan_a(r), &co)
}

/// `PGL_n` on the root lattice, `n ≥ 2`.
pub fn pgl(n: usize) -> GroupDatum {
    let r = n - 1;
    let simple: Vec<Vec<Int>> = (0..r).map(|i| unit(r, i)).collect();
    split_simple(r, &simple, &cartan_a(r))
}

/// `GL_n` on `Z^n`, `n ≥ 2`.
pub fn gl(n: usize) -> GroupDatum {
    let simple: Vec<Vec<Int>> = (0..n - 1)
        .map(|i| {
            let mut a = unit(n, i);
            a[i + 1] = Int::from(-1);
            a
        })
        .collect();
    split_simple(n, &simple, &simple)
}

pub fn sp4() -> GroupDatum {
    split_simple(2, &[iv(&[1, -1]), iv(&[0, 2])], &[iv(&[1, -1]), iv(&[0, 1])])
}

pub fn so5() -> GroupDatum {
    split_simple(2, &[iv(&[1, -1]), iv(&[0, 1])], &[iv(&[1, -1]), iv(&[0, 2])])
}

pub fn torus(x: &DModule) -> GroupDatum {
    GroupDatum::new(RootDatum::torus(x)).expect("torus")
}

pub fn split_torus(rank: usize) -> GroupDatum {
    torus(&DModule::trivial(&FiniteGroup::trivial(), rank))
}

/// The rank one torus split by a quadratic extension.
pub fn sign_torus() -> GroupDatum {
    let g = FiniteGroup::cyclic(2);
    let x = DModule::from_generator_action(&g, 1, &Matrix::zeros(0, 1), &[(1, Matrix::from_i64(&[vec![-1]]))])
        .expect("sign character");
    torus(&x)
}

/// The norm-one torus of a Galois extension with group `g`.
pub fn norm_one_torus(g: &FiniteGroup) -> GroupDatum {
    torus(&dual(&augmentation_ideal(g)).expect("augmentation ideal is a lattice"))
}

/// The Weil restriction of `G_m` along a Galois extension with group `g`.
pub fn induced_torus(g: &FiniteGroup) -> GroupDatum {
    torus(&crate::module::permutation_module(g, &[(g.trivial_subgroup(), 1)]))
}

fn gl2_on(x: &DModule) -> GroupDatum {
    let a = vec![iv(&[1, -1])];
    GroupDatum::new(RootDatum::from_simple(x, &a, &a)).expect("GL2 form")
}

/// The quasi-split unitary group in two variables.
pub fn u2() -> GroupDatum {
    let g = FiniteGroup::cyclic(2);
    let flip = Matrix::from_i64(&[vec![0, -1], vec![-1, 0]]);
    let x = DModule::from_generator_action(&g, 2, &Matrix::zeros(0, 2), &[(1, flip)]).expect("involution");
    gl2_on(&x)
}

/// Quasi-split `SU_3`, with the involution swapping the simple roots.
pub fn quasi_split_su3() -> GroupDatum {
    GroupDatum::new(RootDatum::from_simple(
        &flip2(),
        &cartan_a(2),
        &[iv(&[1, 0]), iv(&[0, 1])],
    ))
    .expect("SU3")
}

/// Quasi-split `PU_3`.
pub fn quasi_split_pu3() -> GroupDatum {
    GroupDatum::new(RootDatum::from_simple(
        &flip2(),
        &[iv(&[1, 0]), iv(&[0, 1])],
        &cartan_a(2),
    ))
    .expect("PU3")
}

/// A split datum with `g` acting trivially on its characters.
pub fn with_trivial_action(gd: &GroupDatum, g: &FiniteGroup) -> GroupDatum {
    let x = DModule::trivial(g, gd.rank());
    GroupDatum::new(RootDatum::new(&x, gd.roots().to_vec(), gd.coroots().to_vec())).expect("trivial action")
}
