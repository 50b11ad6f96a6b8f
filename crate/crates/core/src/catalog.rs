//! Built-in small groups and the corpus of polyadic groups derived from them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::group::{Automorphism, FiniteGroup};
use crate::limits::Limits;
use crate::polyadic::PolyadicGroup;

pub fn cyclic(m: usize) -> FiniteGroup {
    FiniteGroup::from_fn(m, |i, j| (i + j) % m).expect("cyclic table is a group")
}

/// `Z_2 × Z_2` with componentwise XOR on the indices `0..4`.
pub fn klein() -> FiniteGroup {
    FiniteGroup::from_fn(4, |i, j| i ^ j).expect("xor table is a group")
}

/// `Z_2³` with XOR on `0..8`.
pub fn elementary_abelian8() -> FiniteGroup {
    FiniteGroup::from_fn(8, |i, j| i ^ j).expect("xor table is a group")
}

/// Tabulates the closure of `gens` under composition; the identity permutation
/// gets index 0 and the rest follow in breadth-first order.
pub fn permutation_group(gens: &[Vec<usize>]) -> FiniteGroup {
    let degree = gens[0].len();
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
    let mut elems: Vec<Vec<usize>> = vec![(0..degree).collect()];
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    index.insert(elems[0].clone(), 0);
    let mut head = 0;
    while head < elems.len() {
        for g in gens {
            let next = compose(&elems[head], g);
            if !index.contains_key(&next) {
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
        head += 1;
    }
    let m = elems.len();
    FiniteGroup::from_fn(m, |i, j| index[&compose(&elems[i], &elems[j])])
        .expect("permutation closure is a group")
}

pub fn symmetric3() -> FiniteGroup {
    permutation_group(&[vec![1, 0, 2], vec![1, 2, 0]])
}

pub fn dihedral(k: usize) -> FiniteGroup {
    let rotation: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
    let reflection: Vec<usize> = (0..k).map(|i| (k - i) % k).collect();
    permutation_group(&[rotation, reflection])
}

pub fn alternating4() -> FiniteGroup {
    permutation_group(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// Quaternion group; index `2·u + s` encodes `±{1, i, j, k}[u]` with sign bit `s`.
pub fn quaternion() -> FiniteGroup {
    // Unit products as (sign, unit) with units 1, i, j, k.
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_fn(8, |x, y| {
        let (ux, sx, uy, sy) = (x / 2, x % 2, y / 2, y % 2);
        let (s, u) = UNITS[ux][uy];
        2 * u + (s ^ sx ^ sy)
    })
    .expect("quaternion table is a group")
}

/// Every catalog group with its name, ordered by group order and then name.
pub fn catalog() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = (1..=12).map(|m| (format!("Z{m}"), cyclic(m))).collect();
    out.push(("Z2xZ2".into(), klein()));
    out.push(("Z2xZ4".into(), cyclic(2).direct_product(&cyclic(4))));
    out.push(("Z2xZ2xZ2".into(), elementary_abelian8()));
    out.push(("S3".into(), symmetric3()));
    out.push(("D4".into(), dihedral(4)));
    out.push(("Q8".into(), quaternion()));
    out.push(("D5".into(), dihedral(5)));
    out.push(("A4".into(), alternating4()));
    out.push(("Z3xZ3".into(), cyclic(3).direct_product(&cyclic(3))));
    out.sort_by(|a, b| a.1.order().cmp(&b.1.order()).then_with(|| a.0.cmp(&b.0)));
    out
}

pub fn by_name(name: &str) -> Option<FiniteGroup> {
    catalog().into_iter().find(|(n, _)| n == name).map(|(_, g)| g)
}

pub fn of_order(m: usize) -> Vec<(String, FiniteGroup)> {
    catalog().into_iter().filter(|(_, g)| g.order() == m).collect()
}

/// One polyadic group of the test corpus with the data it was derived from.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub base_name: String,
    pub theta: Automorphism,
    pub b: usize,
    pub group: PolyadicGroup,
}

impl CorpusEntry {
    pub fn label(&self) -> String {
        format!(
            "der[{}; theta={:?}; b={}; n={}]",
            self.base_name,
            self.theta.perm(),
            self.b,
            self.group.arity()
        )
    }
}

/// Every valid `(θ, b)` pair over a base group for arity `n`: `θ(b) = b` and
/// `θ^{n-1}` equal to conjugation by `b`.
pub fn derivations(base: &FiniteGroup, n: usize, limits: &Limits) -> Result<Vec<(Automorphism, usize)>> {
    let mut out = Vec::new();
    for theta in base.automorphisms(limits)? {
        let power = theta.pow(n - 1);
        for b in 0..base.order() {
            if theta.apply(b) == b && power == base.inner_automorphism(b) {
                out.push((theta.clone(), b));
            }
        }
    }
    Ok(out)
}

/// All polyadic groups derived from catalog groups of order at most
/// `max_order`, for each requested arity.
pub fn corpus(max_order: usize, arities: &[usize], limits: &Limits) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (name, base) in catalog().into_iter().filter(|(_, g)| g.order() <= max_order) {
        for &n in arities {
            for (theta, b) in derivations(&base, n, limits)? {
                let group = PolyadicGroup::derive(base.clone(), theta.clone(), b, n, limits)?;
                out.push(CorpusEntry { base_name: name.clone(), theta, b, group });
            }
        }
    }
    Ok(out)
}

/// `x ↦ k·x` on `Z_m`; an automorphism when `gcd(k, m) = 1`.
pub fn scaling(m: usize, k: usize) -> Automorphism {
    Automorphism::new(&cyclic(m), (0..m).map(|x| (k * x) % m).collect()).expect("unit scaling")
}

/// `x ↦ −x` on `Z_m`.
pub fn negation(m: usize) -> Automorphism {
    scaling(m, m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let orders: Vec<(String, usize)> = catalog().into_iter().map(|(n, g)| (n, g.order())).collect();
        assert_eq!(orders.len(), 21);
        for (name, m) in [("S3", 6), ("D4", 8), ("Q8", 8), ("D5", 10), ("A4", 12), ("Z3xZ3", 9), ("Z2xZ4", 8)] {
            assert_eq!(by_name(name).unwrap().order(), m, "{name}");
        }
    }

    #[test]
    fn nonabelian_members() {
        for name in ["S3", "D4", "Q8", "D5", "A4"] {
            assert!(!by_name(name).unwrap().is_abelian(), "{name}");
        }
        let q8 = quaternion();
        // A single involution, -1.
        assert_eq!((1..8).filter(|&x| q8.element_order(x) == 2).count(), 1);
        let d4 = dihedral(4);
        assert_eq!((1..8).filter(|&x| d4.element_order(x) == 2).count(), 5);
    }

    #[test]
    fn derivations_of_z5() {
        let lim = Limits::default();
        let z5 = cyclic(5);
        // Abelian: θ^{n-1} = id and θ(b) = b.
        let n3 = derivations(&z5, 3, &lim).unwrap();
        // θ ∈ {id, x↦4x}; id fixes all b, x↦4x fixes only 0.
        assert_eq!(n3.len(), 6);
        let n5 = derivations(&z5, 5, &lim).unwrap();
        assert_eq!(n5.len(), 5 + 3);
    }
}
