//! Finite groups given by multiplication tables, and their subgroup lattices.

use crate::config::Config;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
struct GroupData {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

/// A validated finite group. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup(Arc<GroupData>);

impl FiniteGroup {
    /// Validates a Cayley table `mul[a][b] = a*b`.
    pub fn from_table(mul: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::MalformedTable);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or(Error::NoIdentity)?;
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&b| mul[a][b] == identity && mul[b][a] == identity)
                .ok_or(Error::NoInverse(a))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup(Arc::new(GroupData {
            order: n,
            mul: mul.iter().flatten().copied().collect(),
            inv,
            identity,
        })))
    }

    /// Closure of permutations of `{0..degree-1}` under composition.
    ///
    /// Element 0 is the identity; the distinct non-identity generators follow
    /// in the order given, then the rest in breadth-first order. The product
    /// `a*b` is the composite `a ∘ b` (apply `b` first).
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>], cfg: &Config) -> Result<FiniteGroup> {
        for (i, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::NotBijection(i));
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::NotBijection(i));
                }
                seen[x] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        for g in generators {
            if !index.contains_key(g) {
                index.insert(g.clone(), elems.len());
                elems.push(g.clone());
            }
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
        let mut queue: VecDeque<usize> = (0..elems.len()).collect();
        while let Some(i) = queue.pop_front() {
            cfg.check_cancel()?;
            for g in generators {
                let p = compose(g, &elems[i]);
                if !index.contains_key(&p) {
                    if elems.len() >= cfg.order_budget {
                        return Err(Error::budget("group order", "more", cfg.order_budget));
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        let n = elems.len();
        let mut mul = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                mul[a][b] = index[&compose(&elems[a], &elems[b])];
            }
        }
        FiniteGroup::from_table(&mul)
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_table(&[vec![0]]).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(&mul).expect("cyclic group")
    }

    /// `G × H` with `(g, h)` at index `g * |H| + h`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (m, n) = (g.order(), h.order());
        let mut mul = vec![vec![0; m * n]; m * n];
        for a in 0..m * n {
            for b in 0..m * n {
                mul[a][b] = g.mul(a / n, b / n) * n + h.mul(a % n, b % n);
            }
        }
        FiniteGroup::from_table(&mul).expect("product group")
    }

    /// The symmetric group on three letters, generated by (0 1) and (0 1 2).
    pub fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], &Config::default()).expect("S3")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.0.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul[a * self.0.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.0.mul.chunks(self.0.order).map(|r| r.to_vec()).collect()
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of a set of elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity()]);
        let mut frontier: Vec<usize> = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            elements: set.into_iter().collect(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: self.elements().collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: vec![self.identity()],
        }
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        self.whole().generators(self)
    }

    /// All subgroups, grouped into conjugacy classes.
    pub fn subgroups(&self, cfg: &Config) -> Result<SubgroupLattice> {
        if self.order() > cfg.order_budget {
            return Err(Error::budget("group order", self.order(), cfg.order_budget));
        }
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in self.elements() {
            found.insert(self.generate(&[a]).elements);
        }
        let cyclic: Vec<Vec<usize>> = found.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = cyclic.clone();
        while !frontier.is_empty() {
            cfg.check_cancel()?;
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.iter().all(|x| h.binary_search(x).is_ok()) {
                        continue;
                    }
                    let mut gens = h.clone();
                    gens.extend(c);
                    let j = self.generate(&gens).elements;
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<Subgroup> = found.into_iter().map(|elements| Subgroup { elements }).collect();
        all.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        let pos: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(i, s)| (s.elements.clone(), i)).collect();
        let mut class_of = vec![usize::MAX; all.len()];
        let mut classes = Vec::new();
        for i in 0..all.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members = BTreeSet::new();
            for g in self.elements() {
                let mut c: Vec<usize> = all[i].elements.iter().map(|&x| self.conj(g, x)).collect();
                c.sort_unstable();
                members.insert(pos[&c]);
            }
            let members: Vec<usize> = members.into_iter().collect();
            for &m in &members {
                class_of[m] = classes.len();
            }
            // Members share an order, so the least index is the lexicographically least set.
            classes.push(ConjugacyClass {
                representative: members[0],
                members,
            });
        }
        Ok(SubgroupLattice { all, classes, class_of })
    }

    /// True iff every Sylow subgroup is cyclic.
    pub fn is_metacyclic(&self, cfg: &Config) -> Result<bool> {
        let lat = self.subgroups(cfg)?;
        let n = self.order();
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            if m.is_multiple_of(p) {
                let mut pk = 1;
                while m.is_multiple_of(p) {
                    m /= p;
                    pk *= p;
                }
                let sylow = lat.all.iter().find(|s| s.order() == pk).expect("Sylow subgroups exist");
                if !sylow.is_cyclic(self) {
                    return Ok(false);
                }
            }
            p += 1;
        }
        Ok(true)
    }

    /// The subgroup as a group in its own right, with the index embedding.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let emb = h.elements.clone();
        let pos: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mul: Vec<Vec<usize>> = emb
            .iter()
            .map(|&a| emb.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        (FiniteGroup::from_table(&mul).expect("subgroup closed"), emb)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates closure; `elements` need not be sorted.
    pub fn new(g: &FiniteGroup, elements: &[usize]) -> Result<Subgroup> {
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        let closed = e.binary_search(&g.identity()).is_ok()
            && e.iter().all(|&a| {
                a < g.order()
                    && e.binary_search(&g.inv(a)).is_ok()
                    && e.iter().all(|&b| e.binary_search(&g.mul(a, b)).is_ok())
            });
        if !closed {
            return Err(Error::Input(format!("{elements:?} is not a subgroup")));
        }
        Ok(Subgroup { elements: e })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.elements.iter().any(|&x| g.element_order(x) == self.order())
    }

    pub fn generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = g.generate(&[]);
        for &x in &self.elements {
            if !span.contains(x) {
                gens.push(x);
                span = g.generate(&gens);
            }
        }
        gens
    }

    /// Left coset representatives (least element of each coset `xH`).
    pub fn left_coset_reps(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &h in &self.elements {
                seen[g.mul(x, h)] = true;
            }
        }
        reps
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    /// Index into [`SubgroupLattice::all`].
    pub representative: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupLattice {
    /// Sorted by order, then by element set.
    pub all: Vec<Subgroup>,
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
}

impl SubgroupLattice {
    pub fn representatives(&self) -> Vec<&Subgroup> {
        self.classes.iter().map(|c| &self.all[c.representative]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure_oracle(g: &FiniteGroup) -> Vec<Vec<usize>> {
        // Brute force over all subsets containing the identity.
        let n = g.order();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            if mask & 1 << g.identity() == 0 {
                continue;
            }
            let e: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if e.iter().all(|&a| e.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1)) {
                out.push(e);
            }
        }
        out
    }

    #[test]
    fn rejects_non_groups() {
        assert_eq!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]),
            Err(Error::NoInverse(1))
        );
        assert_eq!(
            FiniteGroup::from_table(&[vec![1, 0], vec![0, 0]]),
            Err(Error::NoIdentity)
        );
        // A Latin square with identity 0 that is not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&t), Err(Error::NotAssociative { .. })));
    }

    #[test]
    fn small_groups() {
        let z2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.inv(1), 1);
        let triv = FiniteGroup::from_permutations(3, &[], &Config::default()).unwrap();
        assert_eq!(triv.order(), 1);
        let s3 = FiniteGroup::s3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(matches!(
            FiniteGroup::from_permutations(2, &[vec![0, 0]], &Config::default()),
            Err(Error::NotBijection(0))
        ));
        let cfg = Config {
            order_budget: 5,
            ..Config::default()
        };
        assert!(matches!(
            FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], &cfg),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        let cfg = Config::default();
        let z2 = FiniteGroup::cyclic(2);
        let l = z2.subgroups(&cfg).unwrap();
        assert_eq!((l.all.len(), l.classes.len()), (2, 2));
        let z4 = FiniteGroup::cyclic(4);
        let l = z4.subgroups(&cfg).unwrap();
        let sets: Vec<Vec<usize>> = l.all.iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(sets, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        let s3 = FiniteGroup::s3();
        let l = s3.subgroups(&cfg).unwrap();
        assert_eq!((l.all.len(), l.classes.len()), (6, 4));
        for g in [z4, s3, FiniteGroup::product(&z2, &z2), FiniteGroup::cyclic(6)] {
            let l = g.subgroups(&cfg).unwrap();
            let mut ours: Vec<Vec<usize>> = l.all.iter().map(|s| s.elements().to_vec()).collect();
            let mut theirs = closure_oracle(&g);
            ours.sort();
            theirs.sort();
            assert_eq!(ours, theirs);
            for s in &l.all {
                assert_eq!(g.order() % s.order(), 0);
            }
            let covered: usize = l.classes.iter().map(|c| c.members.len()).sum();
            assert_eq!(covered, l.all.len());
        }
    }

    #[test]
    fn metacyclic() {
        let cfg = Config::default();
        assert!(FiniteGroup::cyclic(6).is_metacyclic(&cfg).unwrap());
        assert!(FiniteGroup::s3().is_metacyclic(&cfg).unwrap());
        let v4 = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert!(!v4.is_metacyclic(&cfg).unwrap());
    }

    #[test]
    fn regenerating_from_permutations_is_isomorphic() {
        let cfg = Config::default();
        for g in [
            FiniteGroup::s3(),
            FiniteGroup::cyclic(4),
            FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        ] {
            let table = g.table();
            let perms: Vec<Vec<usize>> = g.generators().iter().map(|&a| table[a].clone()).collect();
            let h = FiniteGroup::from_permutations(g.order(), &perms, &cfg).unwrap();
            assert_eq!(h.order(), g.order());
            let orders = |x: &FiniteGroup| {
                let mut v: Vec<usize> = x.subgroups(&cfg).unwrap().all.iter().map(Subgroup::order).collect();
                v.sort();
                v
            };
            assert_eq!(orders(&g), orders(&h));
        }
    }
}
