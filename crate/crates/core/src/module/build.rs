use super::{normalize, reduce_columns, DMap, DModule, PermutationTag};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{Int, Lattice, Matrix};

/// `⊕ Z[Δ/Θ]^{m}`; the basis of each summand is indexed by left cosets in
/// the order of [`Subgroup::left_coset_reps`].
pub fn permutation_module(group: &FiniteGroup, parts: &[(Subgroup, usize)]) -> DModule {
    let mut blocks: Vec<Vec<Matrix>> = vec![Vec::new(); group.order()];
    for (h, mult) in parts {
        let reps = h.left_coset_reps(group);
        let mut coset_of = vec![0; group.order()];
        for (i, &r) in reps.iter().enumerate() {
            for &x in h.elements() {
                coset_of[group.mul(r, x)] = i;
            }
        }
        let n = reps.len();
        for g in group.elements() {
            let mut p = Matrix::zeros(n, n);
            for (i, &r) in reps.iter().enumerate() {
                p[(coset_of[group.mul(g, r)], i)] = Int::ONE;
            }
            for _ in 0..*mult {
                blocks[g].push(p.clone());
            }
        }
    }
    let action: Vec<Matrix> = blocks
        .iter()
        .map(|b| Matrix::block_diag(&b.iter().collect::<Vec<_>>()))
        .collect();
    let k = action.first().map_or(0, Matrix::rows);
    let tag = PermutationTag {
        summands: parts.to_vec(),
    };
    DModule::assemble(group, k, Lattice::zero(k), action, Some(tag))
}

/// Contragredient lattice `Hom(L, Z)`, acting by inverse transposes.
pub fn dual(l: &DModule) -> Result<DModule> {
    if !l.is_lattice() {
        return Err(Error::HasTorsion);
    }
    let g = l.group();
    let action: Vec<Matrix> = g.elements().map(|x| l.action(g.inv(x)).transpose()).collect();
    Ok(DModule::assemble(
        g,
        l.ngens(),
        Lattice::zero(l.ngens()),
        action,
        l.permutation_tag().cloned(),
    ))
}

/// `f^∨ : N^∨ → M^∨` for a map of lattices `f : M → N`.
pub fn dual_map(f: &DMap) -> Result<DMap> {
    DMap::new(&dual(f.target())?, &dual(f.source())?, f.matrix().transpose())
}

/// `Hom(μ, Q/Z)` with `(σf)(x) = f(σ⁻¹x)`, on the basis dual to a normalized
/// presentation of `μ`. Returns the module and the normalization of `μ` used.
pub fn minus_one_dual(mu: &DModule) -> Result<(DModule, super::Normalized)> {
    if !mu.is_finite() {
        return Err(Error::NotFinite);
    }
    let n = normalize(mu);
    let m = &n.module;
    let d = m.generator_orders();
    let k = m.ngens();
    let g = m.group();
    let action: Vec<Matrix> = g
        .elements()
        .map(|s| {
            let a = m.action(g.inv(s));
            let mut c = Matrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    if !a[(i, j)].is_zero() {
                        c[(j, i)] = (&a[(i, j)] * &d[j]).div_exact(&d[i]);
                    }
                }
            }
            c
        })
        .collect();
    let rel = m.relation_lattice().clone();
    let action = action.iter().map(|a| reduce_columns(a, &rel)).collect();
    let out = DModule::assemble(g, k, rel, action, None);
    out.validate()?;
    Ok((out, n))
}

/// `{x : θx = x for θ ∈ Θ}` (relations included) as a lattice in generator coordinates.
pub fn fixed_lattice(m: &DModule, theta: &Subgroup) -> Lattice {
    let g = m.group();
    let k = m.ngens();
    let gens = theta.generators(g);
    if gens.is_empty() {
        return Lattice::full(k);
    }
    let blocks: Vec<Matrix> = gens.iter().map(|&t| m.action(t).sub(&Matrix::identity(k))).collect();
    let stacked = Matrix::vstack(&blocks.iter().collect::<Vec<_>>());
    let target = if m.relation_lattice().rank() == 0 {
        Lattice::zero(k * gens.len())
    } else {
        let r = m.relations();
        Lattice::from_rows(&Matrix::block_diag(&vec![r; gens.len()]))
    };
    Lattice::preimage(&stacked, &target)
}

/// `M^Θ` as a module over Θ (viewed as a group) with trivial action, and its
/// inclusion into `M` restricted to Θ.
pub fn fixed_points(m: &DModule, theta: &Subgroup) -> (DModule, DMap) {
    let lat = fixed_lattice(m, theta);
    let sub = sublattice_on(m.restrict(theta), &lat);
    (sub.0, sub.1)
}

fn sublattice_on(m: DModule, lat: &Lattice) -> (DModule, DMap) {
    let basis = lat.basis().clone();
    let l = basis.rows();
    let rels: Vec<Vec<Int>> = m
        .relation_lattice()
        .vectors()
        .iter()
        .map(|r| lat.coordinates(r).expect("relations lie in the sublattice"))
        .collect();
    let rel_l = if rels.is_empty() {
        Lattice::zero(l)
    } else {
        Lattice::from_vectors(l, &rels)
    };
    let bt = basis.transpose();
    let action: Vec<Matrix> = m
        .actions()
        .iter()
        .map(|a| {
            let cols: Vec<Vec<Int>> = a
                .mul(&bt)
                .to_columns()
                .iter()
                .map(|c| lat.coordinates(c).expect("sublattice is stable"))
                .collect();
            reduce_columns(&Matrix::from_columns(&cols, l), &rel_l)
        })
        .collect();
    let raw = DModule::assemble(m.group(), l, rel_l, action, None);
    let inc = DMap::new_unchecked(&raw, &m, bt);
    let n = normalize(&raw);
    (n.module.clone(), inc.after(&n.from))
}

/// The submodule generated by a stable lattice containing the relations.
pub fn sublattice_module(m: &DModule, lat: &Lattice) -> Result<(DModule, DMap)> {
    if !lat.contains_lattice(m.relation_lattice()) {
        return Err(Error::Input("sublattice must contain the relations".to_string()));
    }
    for g in m.group().generators() {
        for v in lat.vectors() {
            if !lat.contains(&m.action(g).mul_vec(&v)) {
                return Err(Error::IllDefinedAction("sublattice is not stable".to_string()));
            }
        }
    }
    Ok(sublattice_on(m.clone(), lat))
}

/// `M / ⟨vectors⟩_Δ` together with the projection, normalized.
pub fn quotient_by(m: &DModule, vectors: &[Vec<Int>]) -> (DModule, DMap) {
    let g = m.group();
    let mut gens: Vec<Vec<Int>> = m.relation_lattice().vectors();
    for v in vectors {
        for x in g.elements() {
            gens.push(m.action(x).mul_vec(v));
        }
    }
    let rel = if gens.is_empty() {
        Lattice::zero(m.ngens())
    } else {
        Lattice::from_vectors(m.ngens(), &gens)
    };
    let action: Vec<Matrix> = m.actions().iter().map(|a| reduce_columns(a, &rel)).collect();
    let raw = DModule::assemble(g, m.ngens(), rel, action, None);
    let proj = DMap::new_unchecked(m, &raw, Matrix::identity(m.ngens()));
    let n = normalize(&raw);
    (n.module.clone(), n.to.after(&proj))
}

/// `Z[Δ]^{rank L}` with the embedding `l ↦ Σ_h Σ_i (h l)_i e_{h⁻¹, i}`.
///
/// The basis vector `e_{h,i}` sits at index `h * rank + i`.
pub fn coinduce_embed(l: &DModule) -> Result<(DModule, DMap)> {
    if !l.is_lattice() {
        return Err(Error::HasTorsion);
    }
    let g = l.group();
    let n = l.ngens();
    let p = permutation_module(g, &[(g.trivial_subgroup(), n)]);
    // permutation_module lays out the regular representation block-wise:
    // summand i, coset h at index i * |Δ| + h. Reindex to h * n + i.
    let ord = g.order();
    let perm: Vec<usize> = (0..ord * n).map(|idx| (idx % n) * ord + idx / n).collect();
    let mut pm = Matrix::zeros(ord * n, ord * n);
    for (new, &old) in perm.iter().enumerate() {
        pm[(new, old)] = Int::ONE;
    }
    let pmt = pm.transpose();
    let action: Vec<Matrix> = p.actions().iter().map(|a| pm.mul(a).mul(&pmt)).collect();
    let p = DModule::assemble(g, ord * n, Lattice::zero(ord * n), action, p.permutation_tag().cloned());
    let mut emb = Matrix::zeros(ord * n, n);
    for h in g.elements() {
        let a = l.action(h);
        let hi = g.inv(h);
        for i in 0..n {
            for j in 0..n {
                emb[(hi * n + i, j)] = a[(i, j)].clone();
            }
        }
    }
    let f = DMap::new(l, &p, emb)?;
    Ok((p, f))
}

/// Kernel of the augmentation `Z[G] → Z` for the group of `m`, with basis
/// `g - 1` for `g ≠ 1` in index order.
pub fn augmentation_ideal(group: &FiniteGroup) -> DModule {
    let e = group.identity();
    let others: Vec<usize> = group.elements().filter(|&x| x != e).collect();
    let pos = |x: usize| others.iter().position(|&y| y == x);
    let k = others.len();
    let action: Vec<Matrix> = group
        .elements()
        .map(|s| {
            // s(g - 1) = (sg - 1) - (s - 1)
            let mut a = Matrix::zeros(k, k);
            for (j, &g) in others.iter().enumerate() {
                if let Some(i) = pos(group.mul(s, g)) {
                    a[(i, j)] += &Int::ONE;
                }
                if let Some(i) = pos(s) {
                    a[(i, j)] -= &Int::ONE;
                }
            }
            a
        })
        .collect();
    DModule::assemble(group, k, Lattice::zero(k), action, None)
}

/// `M ⊗_Z N` with diagonal action; generator `(i, j)` at index `i * n + j`.
pub fn tensor(m: &DModule, n: &DModule) -> DModule {
    let (a, b) = (m.ngens(), n.ngens());
    let mut rels: Vec<Vec<Int>> = Vec::new();
    for r in m.relation_lattice().vectors() {
        for j in 0..b {
            let mut v = vec![Int::ZERO; a * b];
            for i in 0..a {
                v[i * b + j] = r[i].clone();
            }
            rels.push(v);
        }
    }
    for s in n.relation_lattice().vectors() {
        for i in 0..a {
            let mut v = vec![Int::ZERO; a * b];
            for j in 0..b {
                v[i * b + j] = s[j].clone();
            }
            rels.push(v);
        }
    }
    let rel = if rels.is_empty() {
        Lattice::zero(a * b)
    } else {
        Lattice::from_vectors(a * b, &rels)
    };
    let g = m.group();
    let action: Vec<Matrix> = g
        .elements()
        .map(|x| {
            let (p, q) = (m.action(x), n.action(x));
            let mut k = Matrix::zeros(a * b, a * b);
            for i in 0..a {
                for i2 in 0..a {
                    if p[(i, i2)].is_zero() {
                        continue;
                    }
                    for j in 0..b {
                        for j2 in 0..b {
                            if !q[(j, j2)].is_zero() {
                                k[(i * b + j, i2 * b + j2)] = &p[(i, i2)] * &q[(j, j2)];
                            }
                        }
                    }
                }
            }
            reduce_columns(&k, &rel)
        })
        .collect();
    DModule::assemble(g, a * b, rel, action, None)
}

/// The torsion submodule and its inclusion.
pub fn torsion_submodule(m: &DModule) -> (DModule, DMap) {
    let sat = m.relation_lattice().saturation();
    sublattice_on(m.clone(), &sat)
}

/// `M / M_tors` and the projection.
pub fn torsion_free_quotient(m: &DModule) -> (DModule, DMap) {
    let sat = m.relation_lattice().saturation();
    quotient_by(m, &sat.vectors())
}

/// Whether the tag describes the module: the action permutes the standard basis
/// and orbit stabilizers match the tagged summands up to conjugacy.
pub fn permutation_basis_holds(m: &DModule, cfg: &Config) -> Result<bool> {
    let Some(tag) = m.permutation_tag() else {
        return Ok(false);
    };
    if !m.is_lattice() {
        return Ok(false);
    }
    let g = m.group();
    let k = m.ngens();
    let mut image = vec![vec![0usize; k]; g.order()];
    for s in g.elements() {
        let a = m.action(s);
        for (c, slot) in image[s].iter_mut().enumerate() {
            let col = a.col(c);
            let ones: Vec<usize> = (0..k).filter(|&r| !col[r].is_zero()).collect();
            if ones.len() != 1 || !col[ones[0]].is_one() {
                return Ok(false);
            }
            *slot = ones[0];
        }
    }
    let lat = g.subgroups(cfg)?;
    let class = |h: &Subgroup| -> usize {
        let idx = lat
            .all
            .iter()
            .position(|x| x == h)
            .expect("subgroup lattice is complete");
        lat.class_of[idx]
    };
    let mut seen = vec![false; k];
    let mut found: Vec<usize> = Vec::new();
    for b in 0..k {
        if seen[b] {
            continue;
        }
        let mut stab = Vec::new();
        for s in g.elements() {
            seen[image[s][b]] = true;
            if image[s][b] == b {
                stab.push(s);
            }
        }
        found.push(class(&Subgroup::new(g, &stab)?));
    }
    let mut want: Vec<usize> = tag
        .summands
        .iter()
        .flat_map(|(h, mult)| std::iter::repeat_n(class(h), *mult))
        .collect();
    found.sort_unstable();
    want.sort_unstable();
    Ok(found == want)
}
