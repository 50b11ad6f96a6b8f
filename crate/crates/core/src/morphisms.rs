//! Homomorphisms between polyadic groups of the same arity.
//!
//! With `P = der_{θ,b}(G)` and `Q = der_{η,c}(H)`, every homomorphism has the
//! form `ψ(x) = φ(x) ∗ a` for a group homomorphism `φ: G → H` and `a ∈ H` with
//! `h(a, …, a) = φ(b) ∗ a` and `φ∘θ = I_a∘η∘φ`. Since `φ` fixes the identity,
//! `a = ψ(e)` and the pair `(a, φ)` is determined by `ψ`.
//!
//! Maps are carrier-indexed. `a` and `φ` live on the presentations' base
//! groups, which coincide with the carriers for derived-form groups.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::limits::{pow_u128, Limits};
use crate::polyadic::{next_tuple, NaryOp, PolyadicGroup};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyadicHom {
    pub map: Vec<usize>,
}

impl PolyadicHom {
    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        self.map.iter().all(|&y| y < seen.len() && !core::mem::replace(&mut seen[y], true))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PolyadicHom) -> PolyadicHom {
        PolyadicHom { map: self.map.iter().map(|&x| other.map[x]).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDecomposition {
    /// Base index in the target.
    pub a: usize,
    /// Group homomorphism between the base groups.
    pub phi: Vec<usize>,
}

fn check_shapes(p: &PolyadicGroup, q: &PolyadicGroup, map: &[usize]) -> Result<()> {
    if p.arity() != q.arity() {
        return Err(Error::ArityMismatch { expected: p.arity(), got: q.arity() });
    }
    if map.len() != p.order() {
        return Err(Error::MalformedTable(alloc::format!("map has {} entries, source has {}", map.len(), p.order())));
    }
    if let Some(&y) = map.iter().find(|&&y| y >= q.order()) {
        return Err(Error::ElementOutOfRange { element: y, order: q.order() });
    }
    Ok(())
}

/// First tuple where `ψ(f(x₁, …, x_n)) ≠ h(ψ(x₁), …, ψ(x_n))`, if any.
pub fn hom_violation(p: &PolyadicGroup, q: &PolyadicGroup, map: &[usize], limits: &Limits) -> Result<Option<Vec<usize>>> {
    check_shapes(p, q, map)?;
    limits.check_cost(pow_u128(p.order(), p.arity()))?;
    Ok(first_violation(p, q, map))
}

fn first_violation(p: &PolyadicGroup, q: &PolyadicGroup, map: &[usize]) -> Option<Vec<usize>> {
    let n = p.arity();
    let mut args = vec![0; n];
    let mut images = vec![0; n];
    loop {
        for (img, &x) in images.iter_mut().zip(&args) {
            *img = map[x];
        }
        if map[p.eval(&args)] != q.eval(&images) {
            return Some(args);
        }
        if !next_tuple(&mut args, p.order()) {
            return None;
        }
    }
}

pub fn is_polyadic_hom(p: &PolyadicGroup, q: &PolyadicGroup, map: &[usize], limits: &Limits) -> Result<bool> {
    Ok(hom_violation(p, q, map, limits)?.is_none())
}

/// Validates `map` as a homomorphism.
pub fn polyadic_hom(p: &PolyadicGroup, q: &PolyadicGroup, map: Vec<usize>, limits: &Limits) -> Result<PolyadicHom> {
    match hom_violation(p, q, &map, limits)? {
        Some(args) => Err(Error::NotHomomorphism { args }),
        None => Ok(PolyadicHom { map }),
    }
}

/// `ψ` in base coordinates: `to_base_Q ∘ ψ ∘ from_base_P`.
fn base_map(p: &PolyadicGroup, q: &PolyadicGroup, map: &[usize]) -> Vec<usize> {
    let (pp, qp) = (p.presentation(), q.presentation());
    (0..p.order()).map(|x| qp.to_base[map[pp.from_base[x]]]).collect()
}

/// `(a, φ)` with `ψ = R_a φ`. Fails only if `map` is not a homomorphism.
pub fn decompose_hom(p: &PolyadicGroup, q: &PolyadicGroup, hom: &PolyadicHom) -> Result<HomDecomposition> {
    check_shapes(p, q, &hom.map)?;
    let h = &q.presentation().base;
    let psi = base_map(p, q, &hom.map);
    let a = psi[0];
    let a_inv = h.inv(a);
    let phi: Vec<usize> = psi.iter().map(|&y| h.mul(y, a_inv)).collect();
    if let Some(which) = condition_failure(p, q, a, &phi) {
        return Err(Error::DecompositionFailed(which.into()));
    }
    Ok(HomDecomposition { a, phi })
}

/// Which requirement on `(a, φ)` fails first, if any.
fn condition_failure(p: &PolyadicGroup, q: &PolyadicGroup, a: usize, phi: &[usize]) -> Option<&'static str> {
    let (pp, qp) = (p.presentation(), q.presentation());
    let (g, h) = (&pp.base, &qp.base);
    if phi.len() != g.order() || phi.iter().any(|&y| y >= h.order()) {
        return Some("phi is not a map between the base groups");
    }
    let is_hom = (0..g.order()).all(|x| (0..g.order()).all(|y| phi[g.mul(x, y)] == h.mul(phi[x], phi[y])));
    if !is_hom {
        return Some("phi is not a group homomorphism");
    }
    let lhs = qp.to_base[q.power_constant(qp.from_base[a])];
    if lhs != h.mul(phi[pp.b], a) {
        return Some("h(a, ..., a) = phi(b) * a");
    }
    let a_inv = h.inv(a);
    let intertwines = (0..g.order())
        .all(|x| phi[pp.theta.apply(x)] == h.mul(h.mul(a, qp.theta.apply(phi[x])), a_inv));
    if !intertwines {
        return Some("phi . theta = I_a . eta . phi");
    }
    None
}

/// `ψ = R_a φ` after checking both requirements on `(a, φ)`.
pub fn compose_hom(p: &PolyadicGroup, q: &PolyadicGroup, a: usize, phi: &[usize]) -> Result<PolyadicHom> {
    if p.arity() != q.arity() {
        return Err(Error::ArityMismatch { expected: p.arity(), got: q.arity() });
    }
    if a >= q.order() {
        return Err(Error::ElementOutOfRange { element: a, order: q.order() });
    }
    if let Some(which) = condition_failure(p, q, a, phi) {
        return Err(Error::ConditionViolated(which));
    }
    Ok(assemble(p, q, a, phi))
}

fn assemble(p: &PolyadicGroup, q: &PolyadicGroup, a: usize, phi: &[usize]) -> PolyadicHom {
    let (pp, qp) = (p.presentation(), q.presentation());
    let h = &qp.base;
    PolyadicHom { map: (0..p.order()).map(|x| qp.from_base[h.mul(phi[pp.to_base[x]], a)]).collect() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomMethod {
    /// Group homomorphisms `φ` crossed with admissible `a`.
    Theorem,
    /// Every map `P → Q` checked directly.
    Oracle,
}

/// All homomorphisms, sorted by map.
pub fn enumerate_homs(p: &PolyadicGroup, q: &PolyadicGroup, method: HomMethod, limits: &Limits) -> Result<Vec<PolyadicHom>> {
    if p.arity() != q.arity() {
        return Err(Error::ArityMismatch { expected: p.arity(), got: q.arity() });
    }
    let mut out = match method {
        HomMethod::Theorem => homs_by_decomposition(p, q, false),
        HomMethod::Oracle => homs_by_scan(p, q, limits)?,
    };
    out.sort();
    Ok(out)
}

fn homs_by_decomposition(p: &PolyadicGroup, q: &PolyadicGroup, bijective_only: bool) -> Vec<PolyadicHom> {
    let (g, h) = (&p.presentation().base, &q.presentation().base);
    let mut out = Vec::new();
    for phi in g.homomorphisms_to(h) {
        if bijective_only && !(PolyadicHom { map: phi.clone() }).is_bijective() {
            continue;
        }
        for a in 0..h.order() {
            if condition_failure(p, q, a, &phi).is_none() {
                out.push(assemble(p, q, a, &phi));
            }
        }
    }
    out
}

fn homs_by_scan(p: &PolyadicGroup, q: &PolyadicGroup, limits: &Limits) -> Result<Vec<PolyadicHom>> {
    let candidates = pow_u128(q.order(), p.order());
    if candidates > limits.max_hom_candidates {
        return Err(Error::CostCapExceeded { required: candidates, cap: limits.max_hom_candidates });
    }
    let mut out = Vec::new();
    let mut map = vec![0; p.order()];
    loop {
        if first_violation(p, q, &map).is_none() {
            out.push(PolyadicHom { map: map.clone() });
        }
        if !next_tuple(&mut map, q.order()) {
            return Ok(out);
        }
    }
}

/// Cheap invariants that isomorphic groups share.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoInvariants {
    pub order: usize,
    pub arity: usize,
    pub reduced: bool,
    pub skew_fixed_points: usize,
    pub idempotents: usize,
    /// `None` when the congruence count is beyond the caps.
    pub congruences: Option<usize>,
}

pub fn iso_invariants(p: &PolyadicGroup, limits: &Limits) -> IsoInvariants {
    IsoInvariants {
        order: p.order(),
        arity: p.arity(),
        reduced: p.is_reduced(),
        skew_fixed_points: p.skew_fixed_points(),
        idempotents: (0..p.order()).filter(|&x| p.power_constant(x) == x).count(),
        congruences: crate::congruence::congruences_theorem(p, limits).ok().map(|c| c.len()),
    }
}

/// The smallest isomorphism `P → Q` in map order, if one exists.
pub fn are_isomorphic(p: &PolyadicGroup, q: &PolyadicGroup, limits: &Limits) -> Result<Option<PolyadicHom>> {
    if p.arity() != q.arity() || p.order() != q.order() {
        return Ok(None);
    }
    limits.check_order(p.order())?;
    if iso_invariants(p, limits) != iso_invariants(q, limits) {
        return Ok(None);
    }
    Ok(homs_by_decomposition(p, q, true).into_iter().min())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, negation};

    fn lim() -> Limits {
        Limits::default()
    }

    fn t3() -> PolyadicGroup {
        PolyadicGroup::reduced(cyclic(3), 3, &lim()).unwrap()
    }

    #[test]
    fn hom_check_examples() {
        let p = t3();
        assert!(is_polyadic_hom(&p, &p, &[0, 1, 2], &lim()).unwrap());
        assert!(is_polyadic_hom(&p, &p, &[0, 2, 1], &lim()).unwrap());
        assert_eq!(hom_violation(&p, &p, &[1, 2, 0], &lim()).unwrap(), Some(vec![0, 0, 0]));
        assert!(matches!(polyadic_hom(&p, &p, vec![0, 1], &lim()), Err(Error::MalformedTable(_))));
    }

    #[test]
    fn decomposition_examples() {
        let p = t3();
        let d = decompose_hom(&p, &p, &PolyadicHom { map: vec![0, 1, 2] }).unwrap();
        assert_eq!(d, HomDecomposition { a: 0, phi: vec![0, 1, 2] });
        let d = decompose_hom(&p, &p, &PolyadicHom { map: vec![0, 2, 1] }).unwrap();
        assert_eq!(d, HomDecomposition { a: 0, phi: vec![0, 2, 1] });
        assert_eq!(compose_hom(&p, &p, 0, &[0, 2, 1]).unwrap().map, vec![0, 2, 1]);
        assert_eq!(compose_hom(&p, &p, 1, &[0, 1, 2]).unwrap_err(), Error::ConditionViolated("h(a, ..., a) = phi(b) * a"));
        assert!(matches!(decompose_hom(&p, &p, &PolyadicHom { map: vec![1, 2, 0] }), Err(Error::DecompositionFailed(_))));
    }

    #[test]
    fn enumeration_examples() {
        let p = t3();
        let theorem = enumerate_homs(&p, &p, HomMethod::Theorem, &lim()).unwrap();
        assert_eq!(theorem, enumerate_homs(&p, &p, HomMethod::Oracle, &lim()).unwrap());
        // Constant maps onto idempotents (only 0 here) plus identity and doubling.
        let maps: Vec<Vec<usize>> = theorem.iter().map(|h| h.map.clone()).collect();
        assert_eq!(maps, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);

        let one = PolyadicGroup::reduced(cyclic(1), 3, &lim()).unwrap();
        assert_eq!(enumerate_homs(&p, &one, HomMethod::Theorem, &lim()).unwrap().len(), 1);
        assert_eq!(enumerate_homs(&p, &one, HomMethod::Oracle, &lim()).unwrap().len(), 1);

        let z2 = PolyadicGroup::reduced(cyclic(2), 3, &lim()).unwrap();
        let t2b = PolyadicGroup::derive_b(cyclic(2), 1, 3, &lim()).unwrap();
        let oracle = enumerate_homs(&z2, &t2b, HomMethod::Oracle, &lim()).unwrap();
        assert_eq!(oracle, enumerate_homs(&z2, &t2b, HomMethod::Theorem, &lim()).unwrap());
        assert!(oracle.is_empty());
    }

    #[test]
    fn isomorphism_examples() {
        let z2 = PolyadicGroup::reduced(cyclic(2), 3, &lim()).unwrap();
        let t2b = PolyadicGroup::derive_b(cyclic(2), 1, 3, &lim()).unwrap();
        assert_eq!(are_isomorphic(&z2, &t2b, &lim()).unwrap(), None);
        assert_eq!(are_isomorphic(&t3(), &t3(), &lim()).unwrap().unwrap().map, vec![0, 1, 2]);
        let t4 = PolyadicGroup::reduced(cyclic(4), 3, &lim()).unwrap();
        let t4inv = PolyadicGroup::derive(cyclic(4), negation(4), 0, 3, &lim()).unwrap();
        assert_eq!(are_isomorphic(&t4inv, &t4, &lim()).unwrap(), None);
        // x + y + z + 1 on Z_3 is isomorphic to x + y + z via x ↦ x + 2.
        let shifted = PolyadicGroup::derive_b(cyclic(3), 1, 3, &lim()).unwrap();
        let iso = are_isomorphic(&shifted, &t3(), &lim()).unwrap().unwrap();
        assert!(is_polyadic_hom(&shifted, &t3(), &iso.map, &lim()).unwrap());
    }
}
