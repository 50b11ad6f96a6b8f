//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with `harness = false` so the lines appear in order and uncaptured.
//! Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pglab_core::catalog::{corpus, cyclic, klein, negation, scaling, CorpusEntry};
use pglab_core::congruence::{
    congruences_bruteforce, congruences_theorem, is_congruence, lattice_ops, modular_law_violation,
    quotient_by_congruence, sim_h,
};
use pglab_core::morphisms::{are_isomorphic, compose_hom, decompose_hom, enumerate_homs, HomMethod};
use pglab_core::polyadic::skew_oracle;
use pglab_core::simplicity::{census, is_gts, is_gts_star, is_uas, same_classes, simplicity_report, CensusMode, Method};
use pglab_core::substructures::{enumerate_normal_polyadic, quotient_polyadic, NormalStrategy};
use pglab_core::{Automorphism, Limits, NaryOp, PolyadicGroup};

/// Wall-clock budget for the congruence characterization sweep.
const CONGRUENCE_BUDGET: Duration = Duration::from_secs(300);
/// Wall-clock budget for the exhaustive order-2 ternary census.
const CENSUS_BUDGET: Duration = Duration::from_secs(1);
/// Largest `|Q|^|P|` for which hom enumeration is compared.
const HOM_PAIR_CAP: u128 = 10_000;
const MAX_BASE_ORDER: usize = 8;
const ARITIES: [usize; 3] = [3, 4, 5];

type Outcome = Result<String, String>;

fn lim() -> Limits {
    Limits::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: pglab_core::Error) -> String {
    e.to_string()
}

fn derived(m: usize, theta: Automorphism, n: usize) -> PolyadicGroup {
    PolyadicGroup::derive(cyclic(m), theta, 0, n, &lim()).unwrap()
}

fn t5() -> PolyadicGroup {
    derived(5, scaling(5, 2), 5)
}

fn t9() -> PolyadicGroup {
    derived(9, negation(9), 3)
}

fn v4swap() -> PolyadicGroup {
    let swap = Automorphism::new(&klein(), vec![0, 2, 1, 3]).unwrap();
    PolyadicGroup::derive(klein(), swap, 0, 3, &lim()).unwrap()
}

fn c1_congruences(corpus: &[CorpusEntry]) -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for e in corpus {
        let brute = congruences_bruteforce(&e.group, &lim()).map_err(err)?;
        let theorem = congruences_theorem(&e.group, &lim()).map_err(err)?;
        ensure(brute == theorem, || format!("{}: {} vs {} congruences", e.label(), brute.len(), theorem.len()))?;
        total += brute.len();
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= CONGRUENCE_BUDGET, || format!("took {elapsed:?}, budget {CONGRUENCE_BUDGET:?}"))?;
    Ok(format!("{} structures, {total} congruences, {elapsed:.2?}", corpus.len()))
}

fn c2_normal_subgroups(corpus: &[CorpusEntry]) -> Outcome {
    let mut total = 0;
    for e in corpus {
        let oracle = enumerate_normal_polyadic(&e.group, NormalStrategy::Oracle, &lim()).map_err(err)?;
        for strategy in [NormalStrategy::Theorem, NormalStrategy::GuNormal] {
            let other = enumerate_normal_polyadic(&e.group, strategy, &lim()).map_err(err)?;
            ensure(oracle == other, || format!("{}: oracle and {strategy:?} differ", e.label()))?;
        }
        total += oracle.len();
    }
    Ok(format!("{} structures, {total} normal polyadic subgroups, three methods agree", corpus.len()))
}

fn c3_uas() -> Outcome {
    let a = is_uas(&t5(), Method::Both, &lim()).map_err(err)?;
    ensure(a.holds && a.method == Method::Both, || format!("T5: {a:?}"))?;
    let b = is_uas(&t9(), Method::Both, &lim()).map_err(err)?;
    ensure(!b.holds && b.method == Method::Both, || format!("T9: {b:?}"))?;
    Ok("der_{2x,0}(Z5,5) UAS; der_{-x,0}(Z9,3) not UAS; both methods".into())
}

fn c4_gts_star() -> Outcome {
    let p = t9();
    let s = is_gts_star(&p, Method::Both, &lim()).map_err(err)?;
    let u = is_uas(&p, Method::Both, &lim()).map_err(err)?;
    ensure(s.holds && !u.holds && s.method == Method::Both, || "T9 should be GTS* and not UAS".into())?;
    let g = is_gts(&v4swap(), Method::Both, &lim()).map_err(err)?;
    let witness = g.witness.as_ref().map(|h| h.members.clone());
    ensure(!g.holds && witness == Some(vec![0, 3]), || format!("V4swap: {g:?}"))?;
    let t3 = PolyadicGroup::reduced(cyclic(3), 3, &lim()).unwrap();
    let g = is_gts(&t3, Method::Both, &lim()).map_err(err)?;
    let s = is_gts_star(&t3, Method::Both, &lim()).map_err(err)?;
    ensure(g.holds && !s.holds && s.method == Method::Both, || "T3 should be GTS, not GTS*".into())?;
    Ok("T9 GTS* not UAS; V4swap not GTS (diagonal); T3 GTS not GTS*".into())
}

fn c5_implications(corpus: &[CorpusEntry]) -> Outcome {
    let mut uas = 0;
    let mut singleton = 0;
    for e in corpus {
        let r = simplicity_report(&e.group, Method::Both, &lim()).map_err(err)?;
        ensure(!r.uas || r.gts, || format!("{}: UAS without GTS", e.label()))?;
        ensure(r.is_consistent(), || format!("{}: inconsistent report {r:?}", e.label()))?;
        let normal = enumerate_normal_polyadic(&e.group, NormalStrategy::Oracle, &lim()).map_err(err)?;
        if normal.iter().any(|h| h.len() == 1) {
            singleton += 1;
            ensure(e.group.is_reduced(), || format!("{}: singleton normal but not reduced", e.label()))?;
        }
        uas += r.uas as usize;
    }
    Ok(format!("0 counterexamples ({uas} UAS, {singleton} with a singleton normal subgroup)"))
}

fn c6_skew(corpus: &[CorpusEntry]) -> Outcome {
    for e in corpus {
        for x in 0..e.group.order() {
            let oracle = skew_oracle(&e.group, x).map_err(err)?;
            ensure(oracle == e.group.skew(x), || format!("{}: skew({x})", e.label()))?;
        }
    }
    Ok(format!("{} structures", corpus.len()))
}

fn c7_dornte(corpus: &[CorpusEntry]) -> Outcome {
    for e in corpus {
        e.group.dornte_check().map_err(|v| format!("{}: {v:?}", e.label()))?;
    }
    let mut survivors = 0;
    for (m, n, mode) in [(2, 3, CensusMode::Exhaustive), (3, 3, CensusMode::Derived), (4, 4, CensusMode::Derived)] {
        for entry in census(m, n, mode, &lim()).map_err(err)? {
            entry.group.dornte_check().map_err(|v| format!("census {}: {v:?}", entry.label))?;
            survivors += 1;
        }
    }
    Ok(format!("{} corpus structures, {survivors} census classes", corpus.len()))
}

fn c8_roundtrip(corpus: &[CorpusEntry]) -> Outcome {
    let mut anchors = 0;
    for e in corpus {
        let p = &e.group;
        let n = p.arity();
        for a in 0..p.order() {
            let pres = p.hosszu_gloskin(a, &lim()).map_err(err)?;
            let g = &pres.base;
            let mut args = vec![0; n];
            loop {
                let mut acc = 0;
                let mut theta_k: Vec<usize> = (0..g.order()).collect();
                for &x in &args {
                    acc = g.mul(acc, theta_k[pres.to_base[x]]);
                    theta_k = theta_k.iter().map(|&y| pres.theta.apply(y)).collect();
                }
                let value = pres.from_base[g.mul(acc, pres.b)];
                ensure(value == p.eval(&args), || format!("{}: anchor {a}, args {args:?}", e.label()))?;
                if !odometer(&mut args, p.order()) {
                    break;
                }
            }
            anchors += 1;
        }
    }
    Ok(format!("{anchors} anchors, table-exact"))
}

fn odometer(args: &mut [usize], m: usize) -> bool {
    for v in args.iter_mut().rev() {
        *v += 1;
        if *v < m {
            return true;
        }
        *v = 0;
    }
    false
}

fn c9_homs(corpus: &[CorpusEntry]) -> Outcome {
    let mut pairs = 0;
    let mut homs = 0;
    for p in corpus {
        for q in corpus {
            let (p, q) = (&p.group, &q.group);
            if p.arity() != q.arity() || (q.order() as u128).pow(p.order() as u32) > HOM_PAIR_CAP {
                continue;
            }
            let oracle = enumerate_homs(p, q, HomMethod::Oracle, &lim()).map_err(err)?;
            let theorem = enumerate_homs(p, q, HomMethod::Theorem, &lim()).map_err(err)?;
            ensure(oracle == theorem, || format!("hom sets differ: {} vs {}", oracle.len(), theorem.len()))?;
            for h in &oracle {
                let d = decompose_hom(p, q, h).map_err(err)?;
                let back = compose_hom(p, q, d.a, &d.phi).map_err(err)?;
                ensure(back == *h, || format!("roundtrip failed for {:?}", h.map))?;
            }
            pairs += 1;
            homs += oracle.len();
        }
    }
    Ok(format!("{pairs} pairs, {homs} homomorphisms, decompose/compose exact"))
}

fn c10_quotients(corpus: &[CorpusEntry]) -> Outcome {
    let mut count = 0;
    for e in corpus {
        for h in enumerate_normal_polyadic(&e.group, NormalStrategy::Oracle, &lim()).map_err(err)? {
            let q = quotient_polyadic(&e.group, &h.members, &lim()).map_err(err)?;
            ensure(q.quotient.is_reduced(), || format!("{}: quotient by {:?} not reduced", e.label(), h.members))?;
            let r = sim_h(&e.group, &h.members).map_err(err)?;
            let qc = quotient_by_congruence(&e.group, &r, &lim()).map_err(err)?;
            let iso = are_isomorphic(&qc.quotient, &q.quotient, &lim()).map_err(err)?;
            ensure(iso.is_some(), || format!("{}: quotients by {:?} differ", e.label(), h.members))?;
            count += 1;
        }
    }
    Ok(format!("{count} normal subgroups; all quotients reduced and isomorphic"))
}

fn c11_lattice(corpus: &[CorpusEntry]) -> Outcome {
    let mut pairs = 0;
    for e in corpus {
        let congs = congruences_theorem(&e.group, &lim()).map_err(err)?;
        for r in &congs {
            for q in &congs {
                let ops = lattice_ops(&e.group, r, q);
                ensure(ops.all_hold(), || format!("{}: {ops:?}", e.label()))?;
                ensure(is_congruence(&e.group, &ops.meet) && is_congruence(&e.group, &ops.join), || {
                    format!("{}: meet or join is not a congruence", e.label())
                })?;
                pairs += 1;
            }
        }
        if let Some(t) = modular_law_violation(&congs) {
            return Err(format!("{}: modular law fails at {t:?}", e.label()));
        }
    }
    Ok(format!("{pairs} ordered pairs; modular law on every lattice"))
}

fn c12_census() -> Outcome {
    let start = Instant::now();
    let exhaustive = census(2, 3, CensusMode::Exhaustive, &lim()).map_err(err)?;
    let derived = census(2, 3, CensusMode::Derived, &lim()).map_err(err)?;
    let same = same_classes(&exhaustive, &derived, &lim()).map_err(err)?;
    let elapsed = start.elapsed();
    ensure(exhaustive.len() == 2 && same, || format!("{} exhaustive vs {} derived classes", exhaustive.len(), derived.len()))?;
    ensure(elapsed <= CENSUS_BUDGET, || format!("took {elapsed:?}, budget {CENSUS_BUDGET:?}"))?;
    Ok(format!("2 classes from 256 tables, {elapsed:.2?}"))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let corpus = corpus(MAX_BASE_ORDER, &ARITIES, &lim()).expect("corpus builds");
    let criteria: Vec<Criterion<'_>> = vec![
        ("congruences: theorem = brute force", Box::new(|| c1_congruences(&corpus))),
        ("normal polyadic subgroups: oracle = theorem", Box::new(|| c2_normal_subgroups(&corpus))),
        ("UAS decider", Box::new(c3_uas)),
        ("GTS / GTS* deciders", Box::new(c4_gts_star)),
        ("UAS => GTS, singleton normal => reduced", Box::new(|| c5_implications(&corpus))),
        ("skew formula = skew oracle", Box::new(|| c6_skew(&corpus))),
        ("Dornte identities", Box::new(|| c7_dornte(&corpus))),
        ("derived presentation roundtrip", Box::new(|| c8_roundtrip(&corpus))),
        ("hom enumeration and decomposition", Box::new(|| c9_homs(&corpus))),
        ("quotients", Box::new(|| c10_quotients(&corpus))),
        ("congruence lattice identities", Box::new(|| c11_lattice(&corpus))),
        ("census completeness (m=2, n=3)", Box::new(c12_census)),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {title} — {detail} [{t:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {title} — {detail} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
