use super::{reduce_columns, DModule};
use crate::error::{Error, Result};
use crate::linalg::{smith, Int, Lattice, Matrix};

/// An equivariant homomorphism, as a matrix on generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMap {
    source: DModule,
    target: DModule,
    matrix: Matrix,
}

impl DMap {
    /// Validates shape, well-definedness and equivariance.
    pub fn new(source: &DModule, target: &DModule, matrix: Matrix) -> Result<DMap> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::InvalidMap(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let f = DMap::new_unchecked(source, target, matrix);
        for r in source.relation_lattice().vectors() {
            if !target.is_zero_element(&f.matrix.mul_vec(&r)) {
                return Err(Error::InvalidMap(
                    "a source relation is not sent into the target relations".to_string(),
                ));
            }
        }
        for s in source.group().generators() {
            let lhs = f.matrix.mul(source.action(s));
            let rhs = target.action(s).mul(&f.matrix);
            if !target_zero(target, &lhs.sub(&rhs)) {
                return Err(Error::InvalidMap(format!("not equivariant for element {s}")));
            }
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &DModule, target: &DModule, matrix: Matrix) -> DMap {
        let matrix = reduce_columns(&matrix, target.relation_lattice());
        DMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn identity(m: &DModule) -> DMap {
        DMap::new_unchecked(m, m, Matrix::identity(m.ngens()))
    }

    pub fn zero(source: &DModule, target: &DModule) -> DMap {
        DMap::new_unchecked(source, target, Matrix::zeros(target.ngens(), source.ngens()))
    }

    pub fn source(&self) -> &DModule {
        &self.source
    }

    pub fn target(&self) -> &DModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(v))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &DMap) -> DMap {
        assert_eq!(first.target.ngens(), self.source.ngens(), "composition mismatch");
        DMap::new_unchecked(&first.source, &self.target, self.matrix.mul(&first.matrix))
    }

    pub fn add(&self, other: &DMap) -> DMap {
        DMap::new_unchecked(&self.source, &self.target, self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &DMap) -> DMap {
        DMap::new_unchecked(&self.source, &self.target, self.matrix.sub(&other.matrix))
    }

    pub fn neg(&self) -> DMap {
        DMap::new_unchecked(&self.source, &self.target, self.matrix.neg())
    }

    pub fn scale(&self, s: &Int) -> DMap {
        DMap::new_unchecked(&self.source, &self.target, self.matrix.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn equals(&self, other: &DMap) -> bool {
        self.matrix == other.matrix
    }

    /// Replaces source and target by equal presentations.
    pub fn retarget(&self, source: &DModule, target: &DModule) -> DMap {
        DMap::new_unchecked(source, target, self.matrix.clone())
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).module.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        cokernel(self).module.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Lattice `{m : f m = 0}` in source coordinates (contains the source relations).
    pub fn kernel_lattice(&self) -> Lattice {
        Lattice::preimage(&self.matrix, self.target.relation_lattice())
    }

    /// Image lattice plus target relations, in target coordinates.
    pub fn image_lattice(&self) -> Lattice {
        let cols = self.matrix.transpose();
        Lattice::from_rows(&Matrix::vstack(&[&cols, &rel_rows(&self.target)]))
    }

    /// `g` with `self ∘ g = h`, for `self` injective; `None` if `h` does not
    /// factor through.
    pub fn lift(&self, h: &DMap) -> Option<DMap> {
        let aug = Matrix::hstack(&[&self.matrix, &rel_rows(&self.target).transpose()]);
        let solver = crate::linalg::Solver::new(&aug);
        let k = self.source.ngens();
        let mut cols = Vec::with_capacity(h.source.ngens());
        for c in h.matrix.to_columns() {
            let x = solver.solve(&c)?;
            cols.push(x[..k].to_vec());
        }
        Some(DMap::new_unchecked(
            &h.source,
            &self.source,
            Matrix::from_columns(&cols, k),
        ))
    }

    /// `g` with `g ∘ self = h`, for `self` surjective with `h ∘ ker = 0`.
    pub fn descend(&self, h: &DMap) -> Option<DMap> {
        // Solve g F ≡ H column-wise by transposition: F^T g^T = H^T mod relations.
        let c = cokernel(self);
        if !c.module.is_zero() {
            return None;
        }
        let sec = section_matrix(self)?;
        let g = DMap::new_unchecked(&self.target, &h.target, h.matrix.mul(&sec));
        g.after(self).equals(h).then_some(g)
    }
}

fn rel_rows(m: &DModule) -> Matrix {
    let r = m.relations();
    if r.rows() == 0 {
        Matrix::zeros(0, m.ngens())
    } else {
        r.clone()
    }
}

fn target_zero(target: &DModule, m: &Matrix) -> bool {
    m.to_columns().iter().all(|c| target.is_zero_element(c))
}

/// Z-linear right inverse of a surjection on generator coordinates.
fn section_matrix(f: &DMap) -> Option<Matrix> {
    let aug = Matrix::hstack(&[f.matrix(), &rel_rows(f.target()).transpose()]);
    let solver = crate::linalg::Solver::new(&aug);
    let k = f.source().ngens();
    let mut cols = Vec::new();
    for j in 0..f.target().ngens() {
        let mut e = vec![Int::ZERO; f.target().ngens()];
        e[j] = Int::ONE;
        let x = solver.solve(&e)?;
        cols.push(x[..k].to_vec());
    }
    Some(Matrix::from_columns(&cols, k))
}

/// A module rewritten as `⊕ Z/d_i ⊕ Z^r` on the standard basis.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub module: DModule,
    /// Old presentation to new.
    pub to: DMap,
    /// New presentation to old.
    pub from: DMap,
}

pub fn normalize(m: &DModule) -> Normalized {
    if m.is_lattice() || m.is_normalized() {
        return Normalized {
            module: m.clone(),
            to: DMap::identity(m),
            from: DMap::identity(m),
        };
    }
    let k = m.ngens();
    let s = smith(m.relations());
    let t_full = s.v.transpose();
    let s_full = s.v_inv.transpose();
    let mut keep = Vec::new();
    let mut orders = Vec::new();
    for (i, d) in s.diag.iter().enumerate() {
        if !d.is_one() {
            keep.push(i);
            orders.push(d.clone());
        }
    }
    keep.extend(s.diag.len()..k);
    let t = t_full.select_rows(&keep);
    let sm = s_full.select_cols(&keep);
    let k2 = keep.len();
    let mut rel = Matrix::zeros(orders.len(), k2);
    for (i, d) in orders.iter().enumerate() {
        rel[(i, i)] = d.clone();
    }
    let rel_l = if orders.is_empty() {
        Lattice::zero(k2)
    } else {
        Lattice::from_rows(&rel)
    };
    let action: Vec<Matrix> = m
        .actions()
        .iter()
        .map(|a| reduce_columns(&t.mul(a).mul(&sm), &rel_l))
        .collect();
    let module = DModule::assemble(m.group(), k2, rel_l, action, None);
    let to = DMap::new_unchecked(m, &module, t);
    let from = DMap::new_unchecked(&module, m, sm);
    debug_assert!(DMap::new(m, &module, to.matrix().clone()).is_ok());
    debug_assert!(to.after(&from).equals(&DMap::identity(&module)));
    Normalized { module, to, from }
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub module: DModule,
    pub inclusion: DMap,
}

pub fn kernel(f: &DMap) -> Kernel {
    let src = f.source();
    let lat = f.kernel_lattice();
    let basis = lat.basis().clone();
    let l = basis.rows();
    let rels: Vec<Vec<Int>> = src
        .relation_lattice()
        .vectors()
        .iter()
        .map(|r| lat.coordinates(r).expect("relations lie in the kernel"))
        .collect();
    let rel_l = if rels.is_empty() {
        Lattice::zero(l)
    } else {
        Lattice::from_vectors(l, &rels)
    };
    let bt = basis.transpose();
    let action: Vec<Matrix> = src
        .actions()
        .iter()
        .map(|a| {
            let img = a.mul(&bt);
            let cols: Vec<Vec<Int>> = img
                .to_columns()
                .iter()
                .map(|c| lat.coordinates(c).expect("kernel is stable"))
                .collect();
            reduce_columns(&Matrix::from_columns(&cols, l), &rel_l)
        })
        .collect();
    let raw = DModule::assemble(src.group(), l, rel_l, action, None);
    let inc = DMap::new_unchecked(&raw, src, bt);
    let n = normalize(&raw);
    Kernel {
        inclusion: inc.after(&n.from),
        module: n.module,
    }
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: DModule,
    pub projection: DMap,
    /// Z-linear lift of cokernel generators to target coordinates.
    pub lift: Matrix,
}

pub fn cokernel(f: &DMap) -> Cokernel {
    let tgt = f.target();
    let rel = Matrix::vstack(&[&rel_rows(tgt), &f.matrix().transpose()]);
    let rel_l = if rel.rows() == 0 {
        Lattice::zero(tgt.ngens())
    } else {
        Lattice::from_rows(&rel)
    };
    let action: Vec<Matrix> = tgt.actions().iter().map(|a| reduce_columns(a, &rel_l)).collect();
    let raw = DModule::assemble(tgt.group(), tgt.ngens(), rel_l, action, None);
    let proj = DMap::new_unchecked(tgt, &raw, Matrix::identity(tgt.ngens()));
    let n = normalize(&raw);
    Cokernel {
        projection: n.to.after(&proj),
        lift: n.from.matrix().clone(),
        module: n.module,
    }
}

#[derive(Clone, Debug)]
pub struct Image {
    pub module: DModule,
    pub surjection: DMap,
    pub inclusion: DMap,
}

pub fn image(f: &DMap) -> Image {
    let src = f.source();
    let lat = f.kernel_lattice();
    let action: Vec<Matrix> = src.actions().iter().map(|a| reduce_columns(a, &lat)).collect();
    let raw = DModule::assemble(src.group(), src.ngens(), lat, action, None);
    let n = normalize(&raw);
    let surj =
        n.to.after(&DMap::new_unchecked(src, &raw, Matrix::identity(src.ngens())));
    let inc = DMap::new_unchecked(&n.module, f.target(), f.matrix().mul(n.from.matrix()));
    Image {
        module: n.module,
        surjection: surj,
        inclusion: inc,
    }
}

/// Whether `A → B → C` is exact at `B`.
pub fn exact_at(f: &DMap, g: &DMap) -> bool {
    g.after(f).is_zero() && g.kernel_lattice() == f.image_lattice()
}

/// Audits `0 → A → B → C → 0`.
pub fn check_exact(iota: &DMap, pi: &DMap) -> Result<()> {
    if !pi.after(iota).is_zero() {
        return Err(Error::NotExact("composite is nonzero".to_string()));
    }
    if !iota.is_injective() {
        return Err(Error::NotExact("left map is not injective".to_string()));
    }
    if pi.kernel_lattice() != iota.image_lattice() {
        return Err(Error::NotExact("kernel differs from image in the middle".to_string()));
    }
    if !pi.is_surjective() {
        return Err(Error::NotExact("right map is not surjective".to_string()));
    }
    Ok(())
}
