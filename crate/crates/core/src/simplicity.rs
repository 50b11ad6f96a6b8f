//! Simplicity deciders and a small-order census.
//!
//! Three notions are decided:
//! - UAS: the only congruences are equality and the full relation.
//! - GTS: every normal polyadic subgroup is a singleton or everything.
//! - GTS*: every normal polyadic subgroup is everything.
//!
//! Each has a structural decider and an oracle. With [`Method::Both`] the two
//! must agree or [`Error::MethodDisagreement`] is returned. One-element
//! groups satisfy all three vacuously and are flagged `degenerate`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::{derivations, of_order};
use crate::congruence::{congruences_bruteforce, Congruence};
use crate::error::{Error, Result};
use crate::group::{Automorphism, FiniteGroup, Subgroup, SubgroupFilter};
use crate::limits::{pow_u128, Limits};
use crate::morphisms::are_isomorphic;
use crate::polyadic::{verify_axioms, PolyadicGroup, RawTable};
use crate::substructures::{enumerate_normal_polyadic, NormalStrategy, PolyadicSubgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Theorem,
    Oracle,
    Both,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Theorem => "theorem",
            Method::Oracle => "oracle",
            Method::Both => "both",
        }
    }
}

/// No `θ`-invariant normal subgroups besides the trivial one and `G`.
pub fn is_theta_simple(g: &FiniteGroup, theta: &Automorphism) -> bool {
    first_proper_invariant(g, theta).is_none()
}

fn first_proper_invariant(g: &FiniteGroup, theta: &Automorphism) -> Option<Subgroup> {
    g.enumerate_subgroups(SubgroupFilter::ThetaInvariantNormal(theta))
        .into_iter()
        .find(|k| k.len() != 1 && k.len() != g.order())
}

/// A decision with the smallest counterexample when it is negative, and the
/// method that actually ran.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision<W> {
    pub holds: bool,
    pub witness: Option<W>,
    pub method: Method,
}

fn combine<W>(
    method: Method,
    what: &'static str,
    theorem: impl FnOnce() -> Result<Option<W>>,
    oracle: impl FnOnce() -> Result<Option<W>>,
) -> Result<Decision<W>> {
    let decided = |w: Option<W>, method| Decision { holds: w.is_none(), witness: w, method };
    match method {
        Method::Theorem => Ok(decided(theorem()?, Method::Theorem)),
        Method::Oracle => Ok(decided(oracle()?, Method::Oracle)),
        Method::Both => {
            let t = theorem()?;
            match oracle() {
                Ok(o) if o.is_some() != t.is_some() => Err(Error::MethodDisagreement(what)),
                Ok(o) => Ok(decided(o, Method::Both)),
                Err(e) if e.is_cap() => Ok(decided(t, Method::Theorem)),
                Err(e) => Err(e),
            }
        }
    }
}

/// UAS, with a congruence other than equality and the full relation as
/// witness.
pub fn is_uas(p: &PolyadicGroup, method: Method, limits: &Limits) -> Result<Decision<Congruence>> {
    combine(
        method,
        "UAS",
        || {
            let pres = p.presentation();
            Ok(first_proper_invariant(&pres.base, &pres.theta).map(|k| {
                let q = pres.base.quotient(&k).expect("invariant normal subgroup");
                let labels: Vec<usize> = (0..p.order()).map(|x| q.projection[pres.to_base[x]]).collect();
                Congruence::from_labels(&labels)
            }))
        },
        || {
            Ok(congruences_bruteforce(p, limits)?
                .into_iter()
                .find(|c| !c.is_diagonal() && !c.is_full()))
        },
    )
}

fn normal_subgroups(p: &PolyadicGroup, method: Method, limits: &Limits) -> Result<Vec<PolyadicSubgroup>> {
    let strategy = if method == Method::Oracle { NormalStrategy::Oracle } else { NormalStrategy::Theorem };
    enumerate_normal_polyadic(p, strategy, limits)
}

/// GTS, with a normal polyadic subgroup of size strictly between 1 and `m` as
/// witness.
pub fn is_gts(p: &PolyadicGroup, method: Method, limits: &Limits) -> Result<Decision<PolyadicSubgroup>> {
    let m = p.order();
    let pick = |list: Vec<PolyadicSubgroup>| list.into_iter().find(|h| h.len() != 1 && h.len() != m);
    combine(
        method,
        "GTS",
        || Ok(pick(normal_subgroups(p, Method::Theorem, limits)?)),
        || Ok(pick(normal_subgroups(p, Method::Oracle, limits)?)),
    )
}

/// GTS*, with a proper normal polyadic subgroup as witness. The structural
/// method scans `θ`-invariant normal `K ≠ G` whose induced automorphism is
/// inner, keeping only cosets that actually give a normal polyadic subgroup.
pub fn is_gts_star(p: &PolyadicGroup, method: Method, limits: &Limits) -> Result<Decision<PolyadicSubgroup>> {
    let m = p.order();
    let pick = |list: Vec<PolyadicSubgroup>| list.into_iter().find(|h| h.len() != m);
    combine(
        method,
        "GTS*",
        || Ok(pick(normal_subgroups(p, Method::Theorem, limits)?)),
        || Ok(pick(normal_subgroups(p, Method::Oracle, limits)?)),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witnesses {
    pub uas: Option<Congruence>,
    pub gts: Option<PolyadicSubgroup>,
    pub gts_star: Option<PolyadicSubgroup>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub uas: bool,
    pub gts: bool,
    pub gts_star: bool,
    pub reduced: bool,
    /// One-element carrier; every flag holds vacuously.
    pub degenerate: bool,
    pub witnesses: Witnesses,
    /// `Both` only when every decider ran both methods.
    pub method: Method,
}

impl SimplicityReport {
    /// `uas ⇒ gts` and `gts ∧ ¬gts_star ⇒ reduced`.
    pub fn is_consistent(&self) -> bool {
        (!self.uas || self.gts) && (!(self.gts && !self.gts_star) || self.reduced)
    }
}

pub fn simplicity_report(p: &PolyadicGroup, method: Method, limits: &Limits) -> Result<SimplicityReport> {
    let uas = is_uas(p, method, limits)?;
    let gts = is_gts(p, method, limits)?;
    let gts_star = is_gts_star(p, method, limits)?;
    let ran = if [uas.method, gts.method, gts_star.method].iter().all(|&m| m == method) { method } else { Method::Theorem };
    Ok(SimplicityReport {
        uas: uas.holds,
        gts: gts.holds,
        gts_star: gts_star.holds,
        reduced: p.is_reduced(),
        degenerate: p.order() == 1,
        witnesses: Witnesses { uas: uas.witness, gts: gts.witness, gts_star: gts_star.witness },
        method: ran,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    /// Every `der_{θ,b}` over catalog groups of the given order.
    Derived,
    /// Every raw operation table.
    Exhaustive,
}

#[derive(Debug, Clone)]
pub struct CensusEntry {
    pub label: String,
    pub group: PolyadicGroup,
    pub report: SimplicityReport,
}

/// Polyadic groups of order `m` and arity `n` up to isomorphism, one
/// representative per class in discovery order.
pub fn census(m: usize, n: usize, mode: CensusMode, limits: &Limits) -> Result<Vec<CensusEntry>> {
    limits.check_order(m)?;
    limits.check_arity(n)?;
    let mut reps: Vec<(String, PolyadicGroup)> = Vec::new();
    let mut keep = |label: String, p: PolyadicGroup| -> Result<()> {
        for (_, q) in &reps {
            if are_isomorphic(&p, q, limits)?.is_some() {
                return Ok(());
            }
        }
        reps.push((label, p));
        Ok(())
    };
    match mode {
        CensusMode::Derived => {
            for (name, base) in of_order(m) {
                for (theta, b) in derivations(&base, n, limits)? {
                    let label = format!("der[{name}; theta={:?}; b={b}]", theta.perm());
                    keep(label, PolyadicGroup::derive(base.clone(), theta, b, n, limits)?)?;
                }
            }
        }
        CensusMode::Exhaustive => {
            let cells = pow_u128(m, n);
            let tables = if cells > 64 { u128::MAX } else { pow_u128(m, cells as usize) };
            if tables > limits.max_census_tables {
                return Err(Error::CostCapExceeded { required: tables, cap: limits.max_census_tables });
            }
            let cells = cells as usize;
            let mut flat = vec![0; cells];
            loop {
                let table = RawTable::new(n, m, flat.clone())?;
                if verify_axioms(&table, limits)?.is_group() {
                    let p = PolyadicGroup::from_table(table, limits)?;
                    keep(format!("table{flat:?}"), p)?;
                }
                if !crate::polyadic::next_tuple(&mut flat, m) {
                    break;
                }
            }
        }
    }
    reps.into_iter()
        .map(|(label, group)| {
            let report = simplicity_report(&group, Method::Both, limits)?;
            Ok(CensusEntry { label, group, report })
        })
        .collect()
}

/// Whether two census listings name the same isomorphism classes.
pub fn same_classes(a: &[CensusEntry], b: &[CensusEntry], limits: &Limits) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for x in a {
        let mut found = false;
        for y in b {
            if are_isomorphic(&x.group, &y.group, limits)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, klein, negation, scaling};

    fn lim() -> Limits {
        Limits::default()
    }

    fn t9() -> PolyadicGroup {
        PolyadicGroup::derive(cyclic(9), negation(9), 0, 3, &lim()).unwrap()
    }

    fn t5() -> PolyadicGroup {
        PolyadicGroup::derive(cyclic(5), scaling(5, 2), 0, 5, &lim()).unwrap()
    }

    fn v4swap() -> PolyadicGroup {
        let swap = Automorphism::new(&klein(), vec![0, 2, 1, 3]).unwrap();
        PolyadicGroup::derive(klein(), swap, 0, 3, &lim()).unwrap()
    }

    #[test]
    fn theta_simple_examples() {
        assert!(is_theta_simple(&cyclic(5), &scaling(5, 2)));
        assert!(!is_theta_simple(&cyclic(9), &negation(9)));
        let swap = Automorphism::new(&klein(), vec![0, 2, 1, 3]).unwrap();
        assert!(!is_theta_simple(&klein(), &swap));
    }

    #[test]
    fn uas_examples() {
        let d = is_uas(&t5(), Method::Both, &lim()).unwrap();
        assert!(d.holds && d.method == Method::Both);
        let d = is_uas(&t9(), Method::Both, &lim()).unwrap();
        assert!(!d.holds);
        assert_eq!(d.witness.unwrap().classes()[0], vec![0, 3, 6]);
        let one = PolyadicGroup::reduced(cyclic(1), 3, &lim()).unwrap();
        assert!(is_uas(&one, Method::Both, &lim()).unwrap().holds);
        // Oracle over the cap falls back to the theorem under Both.
        let small = Limits { max_partition_order: 4, ..lim() };
        assert_eq!(is_uas(&t9(), Method::Both, &small).unwrap().method, Method::Theorem);
        assert!(is_uas(&t9(), Method::Oracle, &small).unwrap_err().is_cap());
    }

    #[test]
    fn gts_examples() {
        let r = simplicity_report(&t9(), Method::Both, &lim()).unwrap();
        assert_eq!((r.uas, r.gts, r.gts_star, r.reduced), (false, true, true, false));
        let d = is_gts(&v4swap(), Method::Both, &lim()).unwrap();
        assert!(!d.holds);
        assert_eq!(d.witness.unwrap().members, vec![0, 3]);
        let t3 = PolyadicGroup::reduced(cyclic(3), 3, &lim()).unwrap();
        let r = simplicity_report(&t3, Method::Both, &lim()).unwrap();
        assert!(r.gts && !r.gts_star);
        assert_eq!(r.witnesses.gts_star.unwrap().members, vec![0]);
        // θ = 2x is not inner, so T5 has no n-ary identity and {0} fails
        // θ⁻¹(−x) + x ∈ {0}; no singleton is normal.
        let r = simplicity_report(&t5(), Method::Both, &lim()).unwrap();
        assert_eq!((r.uas, r.gts, r.gts_star, r.reduced), (true, true, true, false));
        assert!(!crate::substructures::is_normal_polyadic(&t5(), &[0]));
        let t2b = PolyadicGroup::derive_b(cyclic(2), 1, 3, &lim()).unwrap();
        let r = simplicity_report(&t2b, Method::Both, &lim()).unwrap();
        assert_eq!((r.uas, r.gts, r.gts_star, r.reduced), (true, true, true, false));
        for p in [t9(), t5(), v4swap(), t3, t2b] {
            assert!(simplicity_report(&p, Method::Both, &lim()).unwrap().is_consistent());
        }
    }

    #[test]
    fn degenerate_report() {
        let one = PolyadicGroup::reduced(cyclic(1), 4, &lim()).unwrap();
        let r = simplicity_report(&one, Method::Both, &lim()).unwrap();
        assert!(r.uas && r.gts && r.gts_star && r.degenerate);
    }

    #[test]
    fn census_small() {
        let ex = census(2, 3, CensusMode::Exhaustive, &lim()).unwrap();
        let de = census(2, 3, CensusMode::Derived, &lim()).unwrap();
        assert_eq!(ex.len(), 2);
        assert!(same_classes(&ex, &de, &lim()).unwrap());
        assert_eq!(census(1, 3, CensusMode::Derived, &lim()).unwrap().len(), 1);
        // Z_3 with θ ∈ {id, −x}; b any fixed point.
        let z3 = census(3, 3, CensusMode::Derived, &lim()).unwrap();
        assert!(z3.len() >= 2);
        assert!(census(3, 3, CensusMode::Exhaustive, &lim()).unwrap_err().is_cap());
    }
}
