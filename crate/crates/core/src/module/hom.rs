use super::{check_exact, fixed_lattice, DMap, DModule};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{kernel, smith, Int, Lattice, Matrix, Solver};

/// Linear constraints on `vec(Φ)` (row-major, `Φ: M → N`) expressing that Φ
/// is a well-defined equivariant map, with slack variables for target relations.
struct HomSystem {
    rows: Vec<Vec<Int>>,
    nvars: usize,
    nphi: usize,
}

fn hom_system(m: &DModule, n: &DModule) -> HomSystem {
    let (km, kn) = (m.ngens(), n.ngens());
    let nphi = km * kn;
    let rn = n.relations().rows();
    let gens = m.group().generators();
    let mrels = m.relation_lattice().vectors();
    let nblocks = gens.len() * km + mrels.len();
    let nvars = nphi + nblocks * rn;
    let rel_t = n.relations().transpose();
    let mut rows = Vec::with_capacity(nblocks * kn);
    let mut block = 0;
    let push_slack = |row: &mut Vec<Int>, a: usize, block: usize| {
        for t in 0..rn {
            row[nphi + block * rn + t] = -&rel_t[(a, t)];
        }
    };
    for &s in &gens {
        let (a_s, b_s) = (m.action(s), n.action(s));
        for j in 0..km {
            for a in 0..kn {
                let mut row = vec![Int::ZERO; nvars];
                for b in 0..km {
                    row[a * km + b] += &a_s[(b, j)];
                }
                for c in 0..kn {
                    row[c * km + j] -= &b_s[(a, c)];
                }
                push_slack(&mut row, a, block);
                rows.push(row);
            }
            block += 1;
        }
    }
    for r in &mrels {
        for a in 0..kn {
            let mut row = vec![Int::ZERO; nvars];
            for b in 0..km {
                row[a * km + b] = r[b].clone();
            }
            push_slack(&mut row, a, block);
            rows.push(row);
        }
        block += 1;
    }
    HomSystem { rows, nvars, nphi }
}

fn unvec(v: &[Int], kn: usize, km: usize) -> Matrix {
    if km == 0 {
        return Matrix::zeros(kn, 0);
    }
    Matrix::from_int_rows(v.chunks(km).map(|c| c.to_vec()).collect(), km)
}

/// `Hom_Δ(M, N)` as the quotient of a lattice of valid matrices by the
/// matrices with every column in the target relations.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: DModule,
    pub target: DModule,
    /// Generators of the quotient group, one per invariant factor.
    pub generators: Vec<DMap>,
    /// Order of each generator; zero for free generators.
    pub orders: Vec<Int>,
}

impl HomSpace {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Number of elements, for finite Hom groups.
    pub fn order(&self) -> Option<Int> {
        if self.orders.iter().any(Int::is_zero) {
            None
        } else {
            Some(self.orders.iter().cloned().product())
        }
    }
}

pub fn hom_space(m: &DModule, n: &DModule) -> HomSpace {
    let (km, kn) = (m.ngens(), n.ngens());
    let sys = hom_system(m, n);
    let phi_cols: Vec<usize> = (0..sys.nphi).collect();
    let valid = if sys.rows.is_empty() {
        Lattice::full(sys.nphi)
    } else {
        let c = Matrix::from_int_rows(sys.rows, sys.nvars);
        Lattice::from_rows(&kernel(&c).select_cols(&phi_cols))
    };
    let mut zero_gens: Vec<Vec<Int>> = Vec::new();
    for r in n.relation_lattice().vectors() {
        for b in 0..km {
            let mut v = vec![Int::ZERO; sys.nphi];
            for a in 0..kn {
                v[a * km + b] = r[a].clone();
            }
            zero_gens.push(v);
        }
    }
    let coords: Vec<Vec<Int>> = zero_gens
        .iter()
        .map(|z| valid.coordinates(z).expect("zero maps are valid"))
        .collect();
    let d = valid.rank();
    let rel = Matrix::from_int_rows(coords, d);
    let s = smith(&if rel.rows() == 0 { Matrix::zeros(0, d) } else { rel });
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    let sinv_t = s.v_inv.transpose();
    let basis = valid.basis();
    for i in 0..d {
        let order = s.diag.get(i).cloned().unwrap_or(Int::ZERO);
        if order.is_one() {
            continue;
        }
        let mut v = vec![Int::ZERO; sys.nphi];
        for j in 0..d {
            let c = &sinv_t[(j, i)];
            if c.is_zero() {
                continue;
            }
            for (x, b) in v.iter_mut().zip(basis.row(j)) {
                x.add_mul(c, b);
            }
        }
        generators.push(DMap::new_unchecked(m, n, unvec(&v, kn, km)));
        orders.push(order);
    }
    HomSpace {
        source: m.clone(),
        target: n.clone(),
        generators,
        orders,
    }
}

/// An equivariant section of `π` for an exact `0 → A → B → C → 0`, if one exists.
pub fn split_extension(iota: &DMap, pi: &DMap) -> Result<Option<DMap>> {
    check_exact(iota, pi)?;
    let (b, c) = (pi.source(), pi.target());
    let (kb, kc) = (b.ngens(), c.ngens());
    let sys = hom_system(c, b);
    let rc = c.relations().rows();
    let extra = kc * rc;
    let nvars = sys.nvars + extra;
    let mut rows: Vec<Vec<Int>> = sys
        .rows
        .into_iter()
        .map(|mut r| {
            r.resize(nvars, Int::ZERO);
            r
        })
        .collect();
    let mut rhs = vec![Int::ZERO; rows.len()];
    let p = pi.matrix();
    let rel_t = c.relations().transpose();
    for j in 0..kc {
        for cc in 0..kc {
            let mut row = vec![Int::ZERO; nvars];
            for bb in 0..kb {
                row[bb * kc + j] = p[(cc, bb)].clone();
            }
            for t in 0..rc {
                row[sys.nvars + j * rc + t] = -&rel_t[(cc, t)];
            }
            rows.push(row);
            rhs.push(if cc == j { Int::ONE } else { Int::ZERO });
        }
    }
    let a = Matrix::from_int_rows(rows, nvars);
    let Some(x) = Solver::new(&a).solve(&rhs) else {
        return Ok(None);
    };
    let s = DMap::new(c, b, unvec(&x[..kb * kc], kb, kc))?;
    if !pi.after(&s).equals(&DMap::identity(c)) {
        return Err(Error::verification("split_extension", "section check failed"));
    }
    Ok(Some(s))
}

fn fixed_counts(m: &DModule) -> Vec<Int> {
    let g = m.group();
    g.elements()
        .map(|x| {
            let h = g.generate(&[x]);
            let fl = fixed_lattice(m, &h);
            // |M^h| = [fixed lattice : relations]
            let coords: Vec<Vec<Int>> = m
                .relation_lattice()
                .vectors()
                .iter()
                .map(|r| fl.coordinates(r).expect("relations are fixed"))
                .collect();
            let rel = Matrix::from_int_rows(coords, fl.rank());
            crate::linalg::invariant_factors(&rel).into_iter().product()
        })
        .collect()
}

/// An equivariant isomorphism between finite modules, if one exists.
pub fn iso_finite(m: &DModule, n: &DModule, cfg: &Config) -> Result<Option<DMap>> {
    if !m.is_finite() || !n.is_finite() {
        return Err(Error::NotFinite);
    }
    let limit = Int::from(10_000i64);
    for x in [m, n] {
        let o = x.order().expect("finite");
        if o > limit {
            return Err(Error::budget("finite module order", o, limit));
        }
    }
    if m.invariants() != n.invariants() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(DMap::zero(m, n)));
    }
    if fixed_counts(m) != fixed_counts(n) {
        return Ok(None);
    }
    let hom = hom_space(m, n);
    let total = hom.order().ok_or(Error::NotFinite)?;
    if total > Int::from(cfg.enumeration_budget) {
        return Err(Error::budget("Hom enumeration", total, cfg.enumeration_budget));
    }
    let orders: Vec<i64> = hom.orders.iter().map(|o| o.to_i64().expect("small")).collect();
    let mut digits = vec![0i64; orders.len()];
    loop {
        cfg.check_cancel()?;
        let mut f = DMap::zero(m, n);
        for (g, &d) in hom.generators.iter().zip(&digits) {
            if d != 0 {
                f = f.add(&g.scale(&Int::from(d)));
            }
        }
        if f.is_injective() {
            return Ok(Some(f));
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(None);
            }
            digits[i] += 1;
            if digits[i] < orders[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
