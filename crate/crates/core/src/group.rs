//! Finite binary groups stored as multiplication tables.
//!
//! Elements are the indices `0..m` and the identity is always index 0. The
//! subgroup, automorphism and quotient machinery here is what the polyadic
//! layers reduce to.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::limits::Limits;

const UNSET: usize = usize::MAX;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a square table: entries in range, identity at 0, Latin
    /// square, associativity. Each failure names the first violation.
    pub fn new(rows: &[Vec<usize>]) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(m * m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(m, flat)
    }

    /// Same checks as [`FiniteGroup::new`] on a row-major table.
    pub fn from_flat(order: usize, table: Vec<usize>) -> Result<Self> {
        let m = order;
        if m == 0 || table.len() != m * m {
            return Err(Error::MalformedTable(format!(
                "expected {} entries, got {}",
                m * m,
                table.len()
            )));
        }
        if let Some(pos) = table.iter().position(|&v| v >= m) {
            return Err(Error::MalformedTable(format!(
                "entry ({}, {}) = {} out of range",
                pos / m,
                pos % m,
                table[pos]
            )));
        }
        for i in 0..m {
            if table[i] != i || table[i * m] != i {
                return Err(Error::NoIdentityAtZero { index: i });
            }
        }
        let mut seen = vec![false; m];
        for column in [false, true] {
            for i in 0..m {
                seen.iter_mut().for_each(|s| *s = false);
                for j in 0..m {
                    let v = if column { table[j * m + i] } else { table[i * m + j] };
                    if seen[v] {
                        return Err(Error::NotLatinSquare { index: i, column });
                    }
                    seen[v] = true;
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = table[a * m + b];
                for c in 0..m {
                    if table[ab * m + c] != table[a * m + table[b * m + c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let mut inverse = vec![0; m];
        for a in 0..m {
            inverse[a] = (0..m).find(|&b| table[a * m + b] == 0).unwrap();
        }
        Ok(FiniteGroup { order: m, table, inverse })
    }

    /// Builds and validates the table `i·j = mul(i, j)`.
    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                table.push(mul(i, j));
            }
        }
        Self::from_flat(order, table)
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, table: vec![0], inverse: vec![0] }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Product of a sequence, left to right.
    pub fn product(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, x: usize) -> bool {
        (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x))
    }

    /// `a·x·a⁻¹`.
    #[inline]
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(a, x), self.inv(a))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Direct product; the pair `(x, y)` has index `x·|other| + y`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (m1, m2) = (self.order, other.order);
        let m = m1 * m2;
        let mut table = Vec::with_capacity(m * m);
        let mut inverse = Vec::with_capacity(m);
        for p in 0..m {
            let (a, b) = (p / m2, p % m2);
            inverse.push(self.inv(a) * m2 + other.inv(b));
            for q in 0..m {
                let (c, d) = (q / m2, q % m2);
                table.push(self.mul(a, c) * m2 + other.mul(b, d));
            }
        }
        FiniteGroup { order: m, table, inverse }
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
        mask
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        Subgroup::from_mask(&self.closure_mask(gens))
    }

    /// True when `set` contains 0 and is closed under the product.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut mask = vec![false; self.order];
        for &x in set {
            mask[x] = true;
        }
        mask[0] && set.iter().all(|&x| set.iter().all(|&y| mask[self.mul(x, y)]))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let mask = h.mask(self.order);
        (0..self.order).all(|a| h.members.iter().all(|&x| mask[self.conjugate(a, x)]))
    }

    /// A short generating sequence, chosen greedily by descending element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by_key(|&x| (core::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = self.closure_mask(&gens);
        for x in by_order {
            if !span[x] {
                gens.push(x);
                span = self.closure_mask(&gens);
            }
        }
        gens
    }

    /// Every subgroup containing `seed`, in canonical order.
    pub fn subgroups_containing(&self, seed: &[usize]) -> Vec<Subgroup> {
        let start = self.closure_mask(seed);
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let first = Subgroup::from_mask(&start).members;
        found.insert(first);
        let mut stack = vec![(start, seed.to_vec())];
        while let Some((mask, gens)) = stack.pop() {
            for x in (0..self.order).filter(|&x| !mask[x]) {
                let mut next_gens = gens.clone();
                next_gens.push(x);
                let next = self.closure_mask(&next_gens);
                if found.insert(Subgroup::from_mask(&next).members) {
                    stack.push((next, next_gens));
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|members| Subgroup { members }).collect();
        out.sort();
        out
    }

    /// Complete list of subgroups passing `filter`, sorted by size then members.
    pub fn enumerate_subgroups(&self, filter: SubgroupFilter<'_>) -> Vec<Subgroup> {
        self.subgroups_containing(&[])
            .into_iter()
            .filter(|h| match filter {
                SubgroupFilter::All => true,
                SubgroupFilter::Normal => self.is_normal(h),
                SubgroupFilter::ThetaInvariant(theta) => theta.preserves(h),
                SubgroupFilter::ThetaInvariantNormal(theta) => {
                    theta.preserves(h) && self.is_normal(h)
                }
            })
            .collect()
    }

    /// Propagates generator images along the Cayley graph of the generated
    /// subgroup. `None` on an inconsistency; unreached elements stay `UNSET`.
    fn propagate_hom(&self, gens: &[usize], images: &[usize], target: &FiniteGroup) -> Option<Vec<usize>> {
        let mut map = vec![UNSET; self.order];
        map[0] = 0;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let v = target.mul(map[x], img);
                if map[y] == UNSET {
                    map[y] = v;
                    stack.push(y);
                } else if map[y] != v {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// All group homomorphisms into `target`, as image arrays in lexicographic order.
    pub fn homomorphisms_to(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        let gens = self.generating_set();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                (0..target.order).filter(|&y| k.is_multiple_of(target.element_order(y))).collect()
            })
            .collect();
        let mut out = Vec::new();
        if gens.is_empty() {
            return vec![vec![0]];
        }
        let mut images = vec![0; gens.len()];
        self.hom_search(&gens, &candidates, 0, &mut images, target, &mut |map| {
            out.push(map);
        });
        out.sort();
        out
    }

    fn hom_search(
        &self,
        gens: &[usize],
        candidates: &[Vec<usize>],
        depth: usize,
        images: &mut Vec<usize>,
        target: &FiniteGroup,
        emit: &mut dyn FnMut(Vec<usize>),
    ) {
        for &c in &candidates[depth] {
            images[depth] = c;
            let Some(map) = self.propagate_hom(&gens[..=depth], &images[..=depth], target) else {
                continue;
            };
            if depth + 1 == gens.len() {
                emit(map);
            } else {
                self.hom_search(gens, candidates, depth + 1, images, target, emit);
            }
        }
    }

    /// The full automorphism group, sorted lexicographically by permutation.
    pub fn automorphisms(&self, limits: &Limits) -> Result<Vec<Automorphism>> {
        limits.check_order(self.order)?;
        let gens = self.generating_set();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                (0..self.order).filter(|&y| self.element_order(y) == k).collect()
            })
            .collect();
        if gens.is_empty() {
            return Ok(vec![Automorphism::identity(1)]);
        }
        let mut out = Vec::new();
        let mut images = vec![0; gens.len()];
        let m = self.order;
        self.hom_search(&gens, &candidates, 0, &mut images, self, &mut |map| {
            let mut hit = vec![false; m];
            if map.iter().all(|&v| !core::mem::replace(&mut hit[v], true)) {
                out.push(Automorphism { perm: map });
            }
        });
        out.sort();
        Ok(out)
    }

    /// `I_a : x ↦ a·x·a⁻¹`.
    pub fn inner_automorphism(&self, a: usize) -> Automorphism {
        Automorphism { perm: (0..self.order).map(|x| self.conjugate(a, x)).collect() }
    }

    /// Smallest `a` with `alpha = I_a`.
    pub fn is_inner(&self, alpha: &Automorphism) -> Option<usize> {
        (0..self.order).find(|&a| (0..self.order).all(|x| alpha.apply(x) == self.conjugate(a, x)))
    }

    /// Quotient by a normal subgroup. Cosets are labelled in order of their
    /// smallest element, so the coset of 0 is 0.
    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientGroup> {
        if !self.is_subgroup(&n.members) || !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut projection = vec![UNSET; self.order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut reps = Vec::new();
        for x in 0..self.order {
            if projection[x] != UNSET {
                continue;
            }
            let label = classes.len();
            let mut coset: Vec<usize> = n.members.iter().map(|&h| self.mul(x, h)).collect();
            coset.sort_unstable();
            for &y in &coset {
                projection[y] = label;
            }
            classes.push(coset);
            reps.push(x);
        }
        let k = classes.len();
        let group = FiniteGroup::from_fn(k, |i, j| projection[self.mul(reps[i], reps[j])])?;
        Ok(QuotientGroup { group, projection, classes })
    }

    /// The automorphism `θ_K : xK ↦ θ(x)K` of `G/K`.
    pub fn induced_automorphism(&self, theta: &Automorphism, k: &Subgroup) -> Result<Automorphism> {
        let q = self.quotient(k)?;
        q.induced(theta)
    }

    /// Elementwise product `{a·b : a ∈ A, b ∈ B}`, sorted.
    pub fn product_set(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The right translate `A·u`, sorted.
    pub fn right_translate(&self, a: &[usize], u: usize) -> Vec<usize> {
        self.product_set(a, &[u])
    }
}

/// Which subgroups [`FiniteGroup::enumerate_subgroups`] keeps.
#[derive(Debug, Clone, Copy)]
pub enum SubgroupFilter<'a> {
    All,
    Normal,
    ThetaInvariant(&'a Automorphism),
    ThetaInvariantNormal(&'a Automorphism),
}

/// A subgroup as a sorted member list. The ambient group is supplied by the
/// caller wherever it matters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn whole(order: usize) -> Self {
        Subgroup { members: (0..order).collect() }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Subgroup { members: mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect() }
    }

    pub fn mask(&self, order: usize) -> Vec<bool> {
        let mut mask = vec![false; order];
        for &x in &self.members {
            mask[x] = true;
        }
        mask
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.len().cmp(&other.members.len()).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An automorphism as the image of each element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    perm: Vec<usize>,
}

impl Automorphism {
    /// Validates that `perm` is a bijection fixing 0 that respects the product.
    pub fn new(group: &FiniteGroup, perm: Vec<usize>) -> Result<Self> {
        let m = group.order();
        if perm.len() != m {
            return Err(Error::NotAutomorphism(format!("expected {m} images, got {}", perm.len())));
        }
        let mut hit = vec![false; m];
        for &v in &perm {
            if v >= m || core::mem::replace(&mut hit[v], true) {
                return Err(Error::NotAutomorphism("not a bijection".into()));
            }
        }
        if perm[0] != 0 {
            return Err(Error::NotAutomorphism("identity is not fixed".into()));
        }
        for i in 0..m {
            for j in 0..m {
                if perm[group.mul(i, j)] != group.mul(perm[i], perm[j]) {
                    return Err(Error::NotAutomorphism(format!("product of {i} and {j} not preserved")));
                }
            }
        }
        Ok(Automorphism { perm })
    }

    pub fn identity(order: usize) -> Self {
        Automorphism { perm: (0..order).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn into_perm(self) -> Vec<usize> {
        self.perm
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { perm: other.perm.iter().map(|&x| self.perm[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            perm[y] = x;
        }
        Automorphism { perm }
    }

    pub fn pow(&self, k: usize) -> Automorphism {
        (0..k).fold(Automorphism::identity(self.perm.len()), |acc, _| self.compose(&acc))
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// True when `θ(H) = H` setwise.
    pub fn preserves(&self, h: &Subgroup) -> bool {
        h.members.iter().all(|&x| h.contains(self.perm[x]))
    }

    /// `θ × θ` on a direct square indexed as in [`FiniteGroup::direct_product`].
    pub fn square(&self) -> Automorphism {
        let m = self.perm.len();
        Automorphism { perm: (0..m * m).map(|p| self.perm[p / m] * m + self.perm[p % m]).collect() }
    }
}

/// `G/N` together with the canonical projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl QuotientGroup {
    /// `θ_K`, provided `θ` maps the kernel onto itself.
    pub fn induced(&self, theta: &Automorphism) -> Result<Automorphism> {
        let kernel = Subgroup { members: self.classes[0].clone() };
        if !theta.preserves(&kernel) {
            return Err(Error::NotInvariant);
        }
        let perm = self.classes.iter().map(|class| self.projection[theta.apply(class[0])]).collect();
        Ok(Automorphism { perm })
    }
}
