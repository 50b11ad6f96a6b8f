//! Congruences of a polyadic group.
//!
//! A congruence is an equivalence on the carrier compatible with the
//! operation and with skew. The brute-force enumerator scans every partition;
//! the structural one lists the `θ`-invariant subgroups of `G × G` that contain
//! the diagonal. Partitions are always in canonical form: each class sorted,
//! classes ordered by their smallest element.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::limits::{pow_u128, Limits};
use crate::polyadic::{next_tuple, NaryOp, PolyadicGroup};
use crate::substructures::{is_normal_polyadic, is_polyadic_subgroup, polyadic_coset};

/// Ordered finest first (more classes first), then by classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    classes: Vec<Vec<usize>>,
}

impl Ord for Congruence {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        other.classes.len().cmp(&self.classes.len()).then_with(|| self.classes.cmp(&other.classes))
    }
}

impl PartialOrd for Congruence {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Congruence {
    /// Validates that `classes` partition `0..order` and canonicalizes them.
    pub fn from_classes(order: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut labels = vec![usize::MAX; order];
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::MalformedTable("empty congruence class".into()));
            }
            for &x in class {
                if x >= order {
                    return Err(Error::ElementOutOfRange { element: x, order });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::MalformedTable(alloc::format!("element {x} lies in two classes")));
                }
                labels[x] = i;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::MalformedTable(alloc::format!("element {x} is in no class")));
        }
        Ok(Self::from_labels(&labels))
    }

    /// Partition whose classes are the fibres of `labels`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first = vec![usize::MAX; labels.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            if l >= first.len() {
                first.resize(l + 1, usize::MAX);
            }
            if first[l] == usize::MAX {
                first[l] = classes.len();
                classes.push(Vec::new());
            }
            classes[first[l]].push(x);
        }
        Congruence { classes }
    }

    pub fn diagonal(order: usize) -> Self {
        Congruence { classes: (0..order).map(|x| vec![x]).collect() }
    }

    pub fn full(order: usize) -> Self {
        Congruence { classes: if order == 0 { Vec::new() } else { vec![(0..order).collect()] } }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<Vec<usize>> {
        self.classes
    }

    pub fn order(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class index of every element.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.order()];
        for (i, class) in self.classes.iter().enumerate() {
            for &x in class {
                labels[x] = i;
            }
        }
        labels
    }

    pub fn class_of(&self, x: usize) -> &[usize] {
        self.classes.iter().find(|c| c.binary_search(&x).is_ok()).expect("element in carrier")
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of(x).binary_search(&y).is_ok()
    }

    pub fn is_diagonal(&self) -> bool {
        self.classes.len() == self.order()
    }

    pub fn is_full(&self) -> bool {
        self.classes.len() <= 1
    }

    /// The pair set as a mask indexed by `x·m + y`.
    pub fn pair_mask(&self) -> Vec<bool> {
        let m = self.order();
        let labels = self.labels();
        let mut mask = vec![false; m * m];
        for x in 0..m {
            for y in 0..m {
                mask[x * m + y] = labels[x] == labels[y];
            }
        }
        mask
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        let labels = other.labels();
        self.classes.iter().all(|c| c.iter().all(|&x| labels[x] == labels[c[0]]))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let (a, b) = (self.labels(), other.labels());
        let k = other.num_classes();
        Congruence::from_labels(&a.iter().zip(&b).map(|(&x, &y)| x * k + y).collect::<Vec<_>>())
    }

    /// Smallest equivalence containing both.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let m = self.order();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for class in self.classes.iter().chain(other.classes.iter()) {
            for &x in &class[1..] {
                let (r0, r1) = (find(&mut parent, class[0]), find(&mut parent, x));
                parent[r1.max(r0)] = r1.min(r0);
            }
        }
        let labels: Vec<usize> = (0..m).map(|x| find(&mut parent, x)).collect();
        Congruence::from_labels(&labels)
    }

    /// The partition read off a pair mask, if the mask is an equivalence.
    pub fn from_pair_mask(order: usize, mask: &[bool]) -> Option<Congruence> {
        let mut labels = vec![usize::MAX; order];
        for x in 0..order {
            if labels[x] != usize::MAX {
                continue;
            }
            for y in x..order {
                if mask[x * order + y] {
                    if labels[y] != usize::MAX {
                        return None;
                    }
                    labels[y] = x;
                }
            }
        }
        let c = Congruence::from_labels(&labels);
        (c.pair_mask() == mask).then_some(c)
    }
}

/// Every distinct unary map `x ↦ f(z₁, …, x, …, z_n)`. An equivalence is
/// compatible with `f` exactly when it is compatible with each of these.
fn translations(p: &PolyadicGroup) -> Vec<Vec<usize>> {
    let m = p.order();
    let n = p.arity();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut others = vec![0; n - 1];
    let mut args = vec![0; n];
    for i in 0..n {
        others.iter_mut().for_each(|z| *z = 0);
        loop {
            args[..i].copy_from_slice(&others[..i]);
            args[i + 1..].copy_from_slice(&others[i..]);
            let map: Vec<usize> = (0..m)
                .map(|x| {
                    args[i] = x;
                    p.eval(&args)
                })
                .collect();
            out.insert(map);
            if !next_tuple(&mut others, m) {
                break;
            }
        }
    }
    out.into_iter().collect()
}

fn compatible(labels: &[usize], classes: &[Vec<usize>], maps: &[Vec<usize>]) -> bool {
    classes.iter().all(|class| {
        let r = class[0];
        class[1..].iter().all(|&y| maps.iter().all(|t| labels[t[r]] == labels[t[y]]))
    })
}

/// All congruences by scanning every partition of the carrier, sorted.
pub fn congruences_bruteforce(p: &PolyadicGroup, limits: &Limits) -> Result<Vec<Congruence>> {
    let m = p.order();
    if m > limits.max_partition_order {
        return Err(Error::OrderCapExceeded { order: m, cap: limits.max_partition_order });
    }
    limits.check_cost(pow_u128(m, p.arity() - 1) * p.arity() as u128)?;
    let mut maps = translations(p);
    maps.push((0..m).map(|x| p.skew(x)).collect());
    let mut out = Vec::new();
    if m == 0 {
        return Ok(out);
    }
    // Restricted growth strings: rgs[0] = 0, rgs[i] ≤ 1 + max(rgs[..i]).
    let mut rgs = vec![0usize; m];
    let mut maxes = vec![0usize; m];
    loop {
        let c = Congruence::from_labels(&rgs);
        if compatible(&rgs, &c.classes, &maps) {
            out.push(c);
        }
        let mut i = m - 1;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            if rgs[i] <= maxes[i - 1] {
                rgs[i] += 1;
                maxes[i] = maxes[i - 1].max(rgs[i]);
                for j in i + 1..m {
                    rgs[j] = 0;
                    maxes[j] = maxes[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

/// All congruences as `θ`-invariant subgroups of `G × G` containing the
/// diagonal, sorted.
pub fn congruences_theorem(p: &PolyadicGroup, limits: &Limits) -> Result<Vec<Congruence>> {
    let m = p.order();
    if m * m > limits.max_square_order {
        return Err(Error::OrderCapExceeded { order: m * m, cap: limits.max_square_order });
    }
    let pres = p.presentation();
    let square = pres.base.direct_product(&pres.base);
    let theta2 = pres.theta.square();
    let diagonal: Vec<usize> = (0..m).map(|x| x * m + x).collect();
    let mut out: Vec<Congruence> = square
        .subgroups_containing(&diagonal)
        .into_iter()
        .filter(|r| theta2.preserves(r))
        .map(|r| {
            let mut mask = vec![false; m * m];
            for &xy in &r.members {
                let (x, y) = (pres.from_base[xy / m], pres.from_base[xy % m]);
                mask[x * m + y] = true;
            }
            Congruence::from_pair_mask(m, &mask).expect("subgroup containing the diagonal is an equivalence")
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Direct check of both compatibility conditions.
pub fn is_congruence(p: &PolyadicGroup, r: &Congruence) -> bool {
    let mut maps = translations(p);
    maps.push((0..p.order()).map(|x| p.skew(x)).collect());
    compatible(&r.labels(), &r.classes, &maps)
}

/// The class of the base-group identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelClass {
    /// Carrier elements.
    pub members: Vec<usize>,
    /// Whether `members` is a polyadic subgroup.
    pub is_polyadic_subgroup: bool,
    /// Whether `b` and the identity are related.
    pub b_related_to_identity: bool,
}

pub fn kernel_class(p: &PolyadicGroup, r: &Congruence) -> Result<KernelClass> {
    let pres = p.presentation();
    let e = pres.from_base[0];
    let members = r.class_of(e).to_vec();
    let hb = Subgroup::new(pres.to_base_set(&members));
    if !pres.base.is_subgroup(&hb.members) || !pres.base.is_normal(&hb) || !pres.theta.preserves(&hb) {
        return Err(Error::Internal("identity class is not a θ-invariant normal subgroup"));
    }
    Ok(KernelClass {
        is_polyadic_subgroup: is_polyadic_subgroup(p, &members),
        b_related_to_identity: r.related(pres.from_base[pres.b], e),
        members,
    })
}

/// Meet, join and the lattice identities for one pair of congruences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeOps {
    pub meet: Congruence,
    pub join: Congruence,
    /// `RQ = QR` as subsets of `G × G`.
    pub commutes: bool,
    /// `R ∘ Q = RQ`.
    pub composition_is_product: bool,
    /// `RQ` equals the join.
    pub join_is_product: bool,
    /// `H_{RQ} = H_R·H_Q` and `H_{R∩Q} = H_R ∩ H_Q`.
    pub kernel_identities: bool,
}

impl LatticeOps {
    pub fn all_hold(&self) -> bool {
        self.commutes && self.composition_is_product && self.join_is_product && self.kernel_identities
    }
}

/// Pair-set product in `G × G`, on carrier pairs.
fn pair_product(p: &PolyadicGroup, r: &[bool], q: &[bool]) -> Vec<bool> {
    let pres = p.presentation();
    let g = &pres.base;
    let m = p.order();
    let mut out = vec![false; m * m];
    let rp: Vec<(usize, usize)> = pairs_in_base(p, r);
    let qp: Vec<(usize, usize)> = pairs_in_base(p, q);
    for &(x1, y1) in &rp {
        for &(x2, y2) in &qp {
            let (x, y) = (pres.from_base[g.mul(x1, x2)], pres.from_base[g.mul(y1, y2)]);
            out[x * m + y] = true;
        }
    }
    out
}

fn pairs_in_base(p: &PolyadicGroup, mask: &[bool]) -> Vec<(usize, usize)> {
    let pres = p.presentation();
    let m = p.order();
    (0..m * m).filter(|&i| mask[i]).map(|i| (pres.to_base[i / m], pres.to_base[i % m])).collect()
}

pub fn lattice_ops(p: &PolyadicGroup, r: &Congruence, q: &Congruence) -> LatticeOps {
    let m = p.order();
    let meet = r.meet(q);
    let join = r.join(q);
    let (rm, qm) = (r.pair_mask(), q.pair_mask());
    let rq = pair_product(p, &rm, &qm);
    let qr = pair_product(p, &qm, &rm);
    // (x, y) ∈ R∘Q iff x Q u and u R y for some u.
    let mut comp = vec![false; m * m];
    for x in 0..m {
        for u in q.class_of(x) {
            for &y in r.class_of(*u) {
                comp[x * m + y] = true;
            }
        }
    }
    let pres = p.presentation();
    let g = &pres.base;
    let kernel = |c: &Congruence| pres.to_base_set(c.class_of(pres.from_base[0]));
    let (hr, hq) = (kernel(r), kernel(q));
    let product = g.product_set(&hr, &hq);
    let intersection: Vec<usize> = hr.iter().copied().filter(|x| hq.binary_search(x).is_ok()).collect();
    LatticeOps {
        commutes: rq == qr,
        composition_is_product: comp == rq,
        join_is_product: rq == join.pair_mask(),
        kernel_identities: kernel(&join) == product && kernel(&meet) == intersection,
        meet,
        join,
    }
}

/// `R ∨ (Q ∧ T) = (R ∨ Q) ∧ T` whenever `R ⊆ T`, over all triples. Returns the
/// first failing triple of indices.
pub fn modular_law_violation(congruences: &[Congruence]) -> Option<(usize, usize, usize)> {
    for (i, r) in congruences.iter().enumerate() {
        for (k, t) in congruences.iter().enumerate() {
            if !r.refines(t) {
                continue;
            }
            for (j, q) in congruences.iter().enumerate() {
                if r.join(&q.meet(t)) != r.join(q).meet(t) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Whether the congruences are totally ordered by inclusion.
pub fn is_chain(congruences: &[Congruence]) -> bool {
    congruences.iter().all(|r| congruences.iter().all(|q| r.refines(q) || q.refines(r)))
}

/// The congruence whose classes are the polyadic cosets of a normal `H`.
pub fn sim_h(p: &PolyadicGroup, members: &[usize]) -> Result<Congruence> {
    if !is_normal_polyadic(p, members) {
        return Err(Error::NotNormal);
    }
    let m = p.order();
    let mut labels = vec![usize::MAX; m];
    for x in 0..m {
        if labels[x] == usize::MAX {
            for y in polyadic_coset(p, members, x) {
                labels[y] = x;
            }
        }
    }
    Ok(Congruence::from_labels(&labels))
}

/// A witness that `R = ∼_H` for a normal polyadic subgroup `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalWitness {
    pub a: usize,
    /// `H = a·H_R`, carrier elements.
    pub subgroup: Vec<usize>,
}

/// Smallest `a` with `a R ā` and `θ⁻¹(x⁻¹a)x R a` for all `x`, with the
/// normal polyadic subgroup it determines.
pub fn is_normal_congruence(p: &PolyadicGroup, r: &Congruence) -> Result<Option<NormalWitness>> {
    let pres = p.presentation();
    let g = &pres.base;
    let m = p.order();
    let labels = r.labels();
    let theta_inv = pres.theta.inverse();
    let lb = |x: usize| labels[pres.from_base[x]];
    for a in 0..m {
        let ab = pres.to_base[a];
        let cond1 = labels[a] == labels[p.skew(a)];
        let cond2 = cond1 && (0..m).all(|x| lb(g.mul(theta_inv.apply(g.mul(g.inv(x), ab)), x)) == labels[a]);
        debug_assert_eq!(cond1 && cond2, cond1 && normal_by_operation(p, &labels, a));
        if !cond2 {
            continue;
        }
        let hr = pres.to_base_set(r.class_of(pres.from_base[0]));
        let subgroup = pres.to_carrier_set(&g.product_set(&[ab], &hr));
        if sim_h(p, &subgroup).ok().as_ref() != Some(r) {
            return Err(Error::Internal("a·H_R does not reproduce the congruence"));
        }
        return Ok(Some(NormalWitness { a, subgroup }));
    }
    Ok(None)
}

/// `f(x̄, x, …, x, a, x) R a` for all `x` (`n − 3` middle copies).
fn normal_by_operation(p: &PolyadicGroup, labels: &[usize], a: usize) -> bool {
    let n = p.arity();
    if n < 3 {
        let pres = p.presentation();
        let g = &pres.base;
        let theta_inv = pres.theta.inverse();
        let ab = pres.to_base[a];
        return (0..p.order())
            .all(|x| labels[pres.from_base[g.mul(theta_inv.apply(g.mul(g.inv(x), ab)), x)]] == labels[a]);
    }
    let mut args = vec![0; n];
    (0..p.order()).all(|x| {
        args.iter_mut().for_each(|v| *v = x);
        args[0] = p.skew(x);
        args[n - 2] = a;
        labels[p.eval(&args)] == labels[a]
    })
}

/// `G/R` presented as `der_{θ_R, b_R}(G/H_R)`, with the projection from the
/// carrier.
#[derive(Debug, Clone)]
pub struct CongruenceQuotient {
    pub quotient: PolyadicGroup,
    pub projection: Vec<usize>,
}

pub fn quotient_by_congruence(p: &PolyadicGroup, r: &Congruence, limits: &Limits) -> Result<CongruenceQuotient> {
    let pres = p.presentation();
    let g = &pres.base;
    let hr = Subgroup::new(pres.to_base_set(r.class_of(pres.from_base[0])));
    let q = g.quotient(&hr)?;
    let theta_r = q.induced(&pres.theta)?;
    let b_r = q.projection[pres.b];
    let quotient = PolyadicGroup::derive(q.group.clone(), theta_r, b_r, p.arity(), limits)?;
    let projection: Vec<usize> = (0..p.order()).map(|x| q.projection[pres.to_base[x]]).collect();
    // The classes of R must be exactly the fibres of the projection.
    if Congruence::from_labels(&projection) != *r {
        return Err(Error::Internal("congruence classes are not cosets of the identity class"));
    }
    limits.check_cost(pow_u128(p.order(), p.arity()))?;
    let n = p.arity();
    let mut args = vec![0; n];
    let mut images = vec![0; n];
    loop {
        for (img, &x) in images.iter_mut().zip(&args) {
            *img = projection[x];
        }
        if projection[p.eval(&args)] != quotient.eval(&images) {
            return Err(Error::IllDefined);
        }
        if !next_tuple(&mut args, p.order()) {
            break;
        }
    }
    Ok(CongruenceQuotient { quotient, projection })
}
