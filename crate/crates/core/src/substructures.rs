//! Polyadic subgroups, their normality, cosets and quotients.
//!
//! Subgroups are found two ways. The oracle inspects subsets of the carrier
//! directly. The structural route goes through the groups `G_u`: the carrier
//! with `x ∗ y = x·u⁻¹·y` and automorphism `ψ_u(x) = u·θ(x)·θ(u⁻¹)`, in which
//! polyadic subgroups are the `ψ_u`-invariant subgroups containing `f(u, …, u)`.
//!
//! All sets handed in or out are carrier elements. `G_u` and the normality
//! criteria work on indices of the presentation's base group.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::group::{Automorphism, FiniteGroup, SubgroupFilter};
use crate::limits::{pow_u128, Limits};
use crate::polyadic::{next_tuple, NaryOp, PolyadicGroup, RawTable};

/// A subset closed under the operation and skew. Comparison and ordering look
/// at `members` only; `witness_u` is whatever element produced it.
#[derive(Debug, Clone)]
pub struct PolyadicSubgroup {
    pub members: Vec<usize>,
    pub witness_u: Option<usize>,
}

impl PolyadicSubgroup {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        PolyadicSubgroup { members, witness_u: None }
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

impl PartialEq for PolyadicSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for PolyadicSubgroup {}

impl Ord for PolyadicSubgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.len().cmp(&other.members.len()).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for PolyadicSubgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `G_u` relabelled by the transposition `u ↔ 0`, with `ψ_u` transported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuGroup {
    /// Base index of `u`.
    pub u: usize,
    pub group: FiniteGroup,
    pub psi: Automorphism,
    /// Base index to `group` index; an involution.
    pub relabel: Vec<usize>,
}

impl GuGroup {
    /// `x ∗ y` on base indices.
    pub fn star(&self, x: usize, y: usize) -> usize {
        self.relabel[self.group.mul(self.relabel[x], self.relabel[y])]
    }

    /// `x^{-u}` on base indices.
    pub fn inverse(&self, x: usize) -> usize {
        self.relabel[self.group.inv(self.relabel[x])]
    }

    /// `ψ_u(x)` on base indices.
    pub fn psi_at(&self, x: usize) -> usize {
        self.relabel[self.psi.apply(self.relabel[x])]
    }

    /// Maps a set of `group` indices back to base indices.
    pub fn to_base_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| self.relabel[x]).collect();
        out.sort_unstable();
        out
    }
}

/// Builds `G_u` for the carrier element `u`.
pub fn gu_group(p: &PolyadicGroup, u: usize) -> Result<GuGroup> {
    let pres = p.presentation();
    let g = &pres.base;
    let m = g.order();
    let ub = pres.to_base[u];
    let u_inv = g.inv(ub);
    let relabel: Vec<usize> = (0..m).map(|x| if x == ub { 0 } else if x == 0 { ub } else { x }).collect();
    let mut flat = vec![0; m * m];
    for x in 0..m {
        for y in 0..m {
            flat[relabel[x] * m + relabel[y]] = relabel[g.mul(g.mul(x, u_inv), y)];
        }
    }
    let group = FiniteGroup::from_flat(m, flat)?;
    let theta_u_inv = pres.theta.apply(u_inv);
    let mut perm = vec![0; m];
    for x in 0..m {
        perm[relabel[x]] = relabel[g.mul(g.mul(ub, pres.theta.apply(x)), theta_u_inv)];
    }
    let psi = Automorphism::new(&group, perm)?;
    Ok(GuGroup { u: ub, group, psi, relabel })
}

/// Closed under `f` on all member tuples and under skew.
pub fn is_polyadic_subgroup(p: &PolyadicGroup, members: &[usize]) -> bool {
    if members.is_empty() {
        return false;
    }
    let mask = mask_of(p.order(), members);
    if !members.iter().all(|&x| mask[p.skew(x)]) {
        return false;
    }
    let n = p.arity();
    let s = members.len();
    let mut idx = vec![0; n];
    let mut args = vec![0; n];
    loop {
        for (a, &i) in args.iter_mut().zip(&idx) {
            *a = members[i];
        }
        if !mask[p.eval(&args)] {
            return false;
        }
        if !next_tuple(&mut idx, s) {
            return true;
        }
    }
}

fn mask_of(order: usize, members: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; order];
    for &x in members {
        mask[x] = true;
    }
    mask
}

fn members_of(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// Smallest polyadic subgroup containing `seed`.
pub fn polyadic_closure(p: &PolyadicGroup, seed: &[usize], limits: &Limits) -> Result<Vec<usize>> {
    let m = p.order();
    let n = p.arity();
    let mut mask = mask_of(m, seed);
    loop {
        let members = members_of(&mask);
        limits.check_cost(pow_u128(members.len(), n))?;
        let before = members.len();
        for &x in &members {
            mask[p.skew(x)] = true;
        }
        let mut idx = vec![0; n];
        let mut args = vec![0; n];
        loop {
            for (a, &i) in args.iter_mut().zip(&idx) {
                *a = members[i];
            }
            mask[p.eval(&args)] = true;
            if !next_tuple(&mut idx, members.len()) {
                break;
            }
        }
        if mask.iter().filter(|&&b| b).count() == before {
            return Ok(members);
        }
    }
}

/// How to enumerate polyadic subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupStrategy {
    /// Subsets of the carrier checked directly (closure search on large carriers).
    Oracle,
    /// `ψ_u`-invariant subgroups of each `G_u`.
    Theorem,
}

/// Every polyadic subgroup, sorted by size then members.
pub fn enumerate_polyadic_subgroups(
    p: &PolyadicGroup,
    strategy: SubgroupStrategy,
    limits: &Limits,
) -> Result<Vec<PolyadicSubgroup>> {
    limits.check_order(p.order())?;
    match strategy {
        SubgroupStrategy::Oracle if p.order() <= limits.max_subset_scan_order => Ok(subgroups_by_subsets(p)),
        SubgroupStrategy::Oracle => subgroups_by_closure(p, limits),
        SubgroupStrategy::Theorem => subgroups_via_gu(p),
    }
}

/// Scans all `2^m − 1` nonempty subsets.
pub fn subgroups_by_subsets(p: &PolyadicGroup) -> Vec<PolyadicSubgroup> {
    let m = p.order();
    let mut out: Vec<PolyadicSubgroup> = (1u64..(1u64 << m))
        .map(|bits| (0..m).filter(|&i| bits >> i & 1 == 1).collect::<Vec<usize>>())
        .filter(|set| is_polyadic_subgroup(p, set))
        .map(PolyadicSubgroup::new)
        .collect();
    out.sort();
    out
}

/// Closures of singletons, then repeated joins with one more element until
/// nothing new appears.
pub fn subgroups_by_closure(p: &PolyadicGroup, limits: &Limits) -> Result<Vec<PolyadicSubgroup>> {
    let m = p.order();
    let mut found: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    let mut stack = Vec::new();
    for x in 0..m {
        let c = polyadic_closure(p, &[x], limits)?;
        if found.insert(c.clone(), ()).is_none() {
            stack.push(c);
        }
    }
    while let Some(set) = stack.pop() {
        let mask = mask_of(m, &set);
        for x in (0..m).filter(|&x| !mask[x]) {
            let mut seed = set.clone();
            seed.push(x);
            let c = polyadic_closure(p, &seed, limits)?;
            if found.insert(c.clone(), ()).is_none() {
                stack.push(c);
            }
        }
    }
    let mut out: Vec<PolyadicSubgroup> = found.into_keys().map(PolyadicSubgroup::new).collect();
    out.sort();
    Ok(out)
}

/// `f(u, …, u)` for a base index `u`, as a base index.
fn power_constant_base(p: &PolyadicGroup, ub: usize) -> usize {
    let pres = p.presentation();
    pres.to_base[p.power_constant(pres.from_base[ub])]
}

fn collect_with_witness(p: &PolyadicGroup, found: BTreeMap<Vec<usize>, usize>) -> Vec<PolyadicSubgroup> {
    let pres = p.presentation();
    let mut out: Vec<PolyadicSubgroup> = found
        .into_iter()
        .map(|(base_set, ub)| PolyadicSubgroup {
            members: pres.to_carrier_set(&base_set),
            witness_u: Some(pres.from_base[ub]),
        })
        .collect();
    out.sort();
    out
}

fn subgroups_via_gu(p: &PolyadicGroup) -> Result<Vec<PolyadicSubgroup>> {
    let m = p.order();
    let pres = p.presentation();
    let mut found: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for u in 0..m {
        let gu = gu_group(p, u)?;
        let c = power_constant_base(p, gu.u);
        for s in gu.group.enumerate_subgroups(SubgroupFilter::ThetaInvariant(&gu.psi)) {
            let set = gu.to_base_set(&s.members);
            if set.binary_search(&c).is_ok() {
                found.entry(set).or_insert(pres.to_base[u]);
            }
        }
    }
    Ok(collect_with_witness(p, found))
}

/// Normality through `θ⁻¹(x⁻¹h)x ∈ H` for all `x ∈ G`, `h ∈ H`. False when
/// `members` is not a polyadic subgroup.
pub fn is_normal_polyadic(p: &PolyadicGroup, members: &[usize]) -> bool {
    if !is_polyadic_subgroup(p, members) {
        return false;
    }
    let verdict = normal_by_theta(p, members);
    debug_assert_eq!(verdict, normal_by_definition(p, members));
    verdict
}

fn normal_by_theta(p: &PolyadicGroup, members: &[usize]) -> bool {
    let pres = p.presentation();
    let g = &pres.base;
    let theta_inv = pres.theta.inverse();
    let hb = pres.to_base_set(members);
    let mask = mask_of(g.order(), &hb);
    (0..g.order()).all(|x| hb.iter().all(|&h| mask[g.mul(theta_inv.apply(g.mul(g.inv(x), h)), x)]))
}

/// Normality straight from `f(x̄, x, …, x, h, x) ∈ H` (with `n − 3` middle
/// copies of `x`). For `n = 2` that expression does not exist and the
/// `θ`-criterion is used instead.
pub fn is_normal_polyadic_by_definition(p: &PolyadicGroup, members: &[usize]) -> bool {
    is_polyadic_subgroup(p, members) && normal_by_definition(p, members)
}

fn normal_by_definition(p: &PolyadicGroup, members: &[usize]) -> bool {
    let n = p.arity();
    if n < 3 {
        return normal_by_theta(p, members);
    }
    let mask = mask_of(p.order(), members);
    let mut args = vec![0; n];
    (0..p.order()).all(|x| {
        args.iter_mut().for_each(|a| *a = x);
        args[0] = p.skew(x);
        members.iter().all(|&h| {
            args[n - 2] = h;
            mask[p.eval(&args)]
        })
    })
}

/// How to enumerate normal polyadic subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalStrategy {
    /// Oracle subgroups filtered by the defining condition.
    Oracle,
    /// Cosets `K·u⁻¹` of `θ`-invariant normal `K` with `θ_K = I_{uK}`.
    Theorem,
    /// `ψ_u`-invariant normal subgroups of each `G_u`.
    GuNormal,
}

pub fn enumerate_normal_polyadic(
    p: &PolyadicGroup,
    strategy: NormalStrategy,
    limits: &Limits,
) -> Result<Vec<PolyadicSubgroup>> {
    limits.check_order(p.order())?;
    match strategy {
        NormalStrategy::Oracle => Ok(enumerate_polyadic_subgroups(p, SubgroupStrategy::Oracle, limits)?
            .into_iter()
            .filter(|h| normal_by_definition(p, &h.members))
            .collect()),
        NormalStrategy::Theorem => normal_via_quotients(p),
        NormalStrategy::GuNormal => normal_via_gu(p),
    }
}

/// For each `θ`-invariant normal `K` and each coset `uK` with `θ_K = I_{uK}`,
/// the set `H = K·u⁻¹` is kept when it also contains `f(u⁻¹, …, u⁻¹)`.
fn normal_via_quotients(p: &PolyadicGroup) -> Result<Vec<PolyadicSubgroup>> {
    let pres = p.presentation();
    let g = &pres.base;
    let mut found: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for k in g.enumerate_subgroups(SubgroupFilter::ThetaInvariantNormal(&pres.theta)) {
        let q = g.quotient(&k)?;
        let theta_k = q.induced(&pres.theta)?;
        for coset in 0..q.group.order() {
            if q.group.inner_automorphism(coset) != theta_k {
                continue;
            }
            let w = g.inv(q.classes[coset][0]);
            let h = g.right_translate(&k.members, w);
            if h.binary_search(&power_constant_base(p, w)).is_ok() {
                found.entry(h).or_insert(w);
            }
        }
    }
    Ok(collect_with_witness(p, found))
}

/// Subgroups `H` of `G_u` that are normal and `ψ_u`-invariant, satisfy
/// `θ⁻¹(x⁻¹u)x ∈ H` for every `x`, and contain `f(u, …, u)`.
fn normal_via_gu(p: &PolyadicGroup) -> Result<Vec<PolyadicSubgroup>> {
    let pres = p.presentation();
    let g = &pres.base;
    let theta_inv = pres.theta.inverse();
    let mut found: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for u in 0..p.order() {
        let gu = gu_group(p, u)?;
        let c = power_constant_base(p, gu.u);
        for s in gu.group.enumerate_subgroups(SubgroupFilter::ThetaInvariantNormal(&gu.psi)) {
            let set = gu.to_base_set(&s.members);
            let mask = mask_of(g.order(), &set);
            let condition = (0..g.order()).all(|x| mask[g.mul(theta_inv.apply(g.mul(g.inv(x), gu.u)), x)]);
            if condition && mask[c] {
                found.entry(set).or_insert(gu.u);
            }
        }
    }
    Ok(collect_with_witness(p, found))
}

/// `{f(x, h₁, …, h_{n-1}) : hᵢ ∈ H}`, sorted. `H` should be a normal
/// polyadic subgroup.
pub fn polyadic_coset(p: &PolyadicGroup, members: &[usize], x: usize) -> Vec<usize> {
    let n = p.arity();
    let mut mask = vec![false; p.order()];
    let mut idx = vec![0; n - 1];
    let mut args = vec![x; n];
    loop {
        for (a, &i) in args[1..].iter_mut().zip(&idx) {
            *a = members[i];
        }
        mask[p.eval(&args)] = true;
        if !next_tuple(&mut idx, members.len()) {
            break;
        }
    }
    members_of(&mask)
}

/// `(G/H, f_H)` on class indices, classes ordered by smallest element.
#[derive(Debug, Clone)]
pub struct PolyadicQuotient {
    pub classes: Vec<Vec<usize>>,
    pub projection: Vec<usize>,
    pub quotient: PolyadicGroup,
}

pub fn quotient_polyadic(p: &PolyadicGroup, members: &[usize], limits: &Limits) -> Result<PolyadicQuotient> {
    if !is_normal_polyadic(p, members) {
        return Err(Error::NotNormal);
    }
    let m = p.order();
    let n = p.arity();
    const UNSET: usize = usize::MAX;
    let mut projection = vec![UNSET; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..m {
        if projection[x] != UNSET {
            continue;
        }
        let coset = polyadic_coset(p, members, x);
        if coset.binary_search(&x).is_err() || coset.iter().any(|&y| projection[y] != UNSET) {
            return Err(Error::IllDefined);
        }
        for &y in &coset {
            projection[y] = classes.len();
        }
        classes.push(coset);
    }
    let k = classes.len();
    let mut flat = Vec::with_capacity(pow_u128(k, n) as usize);
    let mut idx = vec![0; n];
    let mut args = vec![0; n];
    loop {
        for (a, &i) in args.iter_mut().zip(&idx) {
            *a = classes[i][0];
        }
        flat.push(projection[p.eval(&args)]);
        if !next_tuple(&mut idx, k) {
            break;
        }
    }
    let table = RawTable::new(n, k, flat)?;
    limits.check_cost(pow_u128(m, n))?;
    let mut args = vec![0; n];
    let mut cls = vec![0; n];
    loop {
        for (c, &a) in cls.iter_mut().zip(&args) {
            *c = projection[a];
        }
        if projection[p.eval(&args)] != table.eval(&cls) {
            return Err(Error::IllDefined);
        }
        if !next_tuple(&mut args, m) {
            break;
        }
    }
    let quotient = PolyadicGroup::from_table_trusted(table, limits)?;
    if !quotient.is_reduced() {
        return Err(Error::Internal("quotient by a normal polyadic subgroup has no n-ary identity"));
    }
    Ok(PolyadicQuotient { classes, projection, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, klein, negation};

    fn lim() -> Limits {
        Limits::default()
    }

    fn t3() -> PolyadicGroup {
        PolyadicGroup::reduced(cyclic(3), 3, &lim()).unwrap()
    }

    fn t4inv() -> PolyadicGroup {
        PolyadicGroup::derive(cyclic(4), negation(4), 0, 3, &lim()).unwrap()
    }

    fn t2b() -> PolyadicGroup {
        PolyadicGroup::derive_b(cyclic(2), 1, 3, &lim()).unwrap()
    }

    fn t9() -> PolyadicGroup {
        PolyadicGroup::derive(cyclic(9), negation(9), 0, 3, &lim()).unwrap()
    }

    fn v4swap() -> PolyadicGroup {
        let swap = Automorphism::new(&klein(), vec![0, 2, 1, 3]).unwrap();
        PolyadicGroup::derive(klein(), swap, 0, 3, &lim()).unwrap()
    }

    fn members(list: &[PolyadicSubgroup]) -> Vec<Vec<usize>> {
        list.iter().map(|h| h.members.clone()).collect()
    }

    #[test]
    fn gu_examples() {
        let gu = gu_group(&t3(), 0).unwrap();
        assert_eq!(gu.group, cyclic(3));
        assert!(gu.psi.is_identity());

        let p = t4inv();
        let gu = gu_group(&p, 1).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(gu.star(x, y), (x + 3 + y) % 4);
            }
            assert_eq!(gu.psi_at(x), (6 - x) % 4);
            assert_eq!(gu.inverse(x), (1 + 4 - x + 1) % 4);
        }

        let gu = gu_group(&t9(), 0).unwrap();
        assert_eq!(gu.group, cyclic(9));
        assert_eq!(gu.psi, negation(9));
    }

    #[test]
    fn polyadic_subgroup_examples() {
        for strategy in [SubgroupStrategy::Oracle, SubgroupStrategy::Theorem] {
            let subs = enumerate_polyadic_subgroups(&t3(), strategy, &lim()).unwrap();
            assert_eq!(members(&subs), vec![vec![0], vec![0, 1, 2]]);
            let subs = enumerate_polyadic_subgroups(&t2b(), strategy, &lim()).unwrap();
            assert_eq!(members(&subs), vec![vec![0, 1]]);
            let subs = enumerate_polyadic_subgroups(&t4inv(), strategy, &lim()).unwrap();
            for x in 0..4 {
                assert!(subs.iter().any(|h| h.members == vec![x]));
            }
            assert!(subs.iter().any(|h| h.members == vec![0, 1, 2, 3]));
        }
        assert_eq!(subgroups_by_closure(&t4inv(), &lim()).unwrap(), subgroups_by_subsets(&t4inv()));
    }

    #[test]
    fn normality_examples() {
        assert!(is_normal_polyadic(&t2b(), &[0, 1]));
        assert!(is_normal_polyadic(&v4swap(), &[0, 3]));
        assert!(!is_normal_polyadic(&t4inv(), &[1]));
        assert!(!is_normal_polyadic_by_definition(&t4inv(), &[1]));
        // Not even a polyadic subgroup.
        assert!(!is_normal_polyadic(&t2b(), &[0]));
    }

    #[test]
    fn normal_enumeration_examples() {
        for strategy in [NormalStrategy::Oracle, NormalStrategy::Theorem, NormalStrategy::GuNormal] {
            let t9 = enumerate_normal_polyadic(&t9(), strategy, &lim()).unwrap();
            assert_eq!(members(&t9), vec![(0..9).collect::<Vec<_>>()], "{strategy:?}");
            let v4 = enumerate_normal_polyadic(&v4swap(), strategy, &lim()).unwrap();
            assert_eq!(members(&v4), vec![vec![0, 3], vec![1, 2], vec![0, 1, 2, 3]], "{strategy:?}");
            let t3 = enumerate_normal_polyadic(&t3(), strategy, &lim()).unwrap();
            assert_eq!(members(&t3), vec![vec![0], vec![0, 1, 2]], "{strategy:?}");
            let t2b = enumerate_normal_polyadic(&t2b(), strategy, &lim()).unwrap();
            assert_eq!(members(&t2b), vec![vec![0, 1]], "{strategy:?}");
        }
    }

    #[test]
    fn coset_examples() {
        assert_eq!(polyadic_coset(&v4swap(), &[0, 3], 2), vec![1, 2]);
        assert_eq!(polyadic_coset(&v4swap(), &[0, 3], 3), vec![0, 3]);
        assert_eq!(polyadic_coset(&t3(), &[0], 2), vec![2]);
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_polyadic(&v4swap(), &[0, 3], &lim()).unwrap();
        assert_eq!(q.classes, vec![vec![0, 3], vec![1, 2]]);
        assert_eq!(q.quotient.order(), 2);
        assert!(q.quotient.is_reduced());

        let q = quotient_polyadic(&t2b(), &[0, 1], &lim()).unwrap();
        assert_eq!(q.classes.len(), 1);

        let q = quotient_polyadic(&t3(), &[0], &lim()).unwrap();
        assert_eq!(q.quotient, t3());
        assert_eq!(q.quotient.n_ary_identity(), Some(0));

        assert_eq!(quotient_polyadic(&t4inv(), &[1], &lim()).unwrap_err(), Error::NotNormal);
    }
}
