//! Subcommands and their text/JSON rendering.
//!
//! Exit codes: 0 on success, 1 when the input fails validation (or a
//! requested property does not hold, e.g. a map is not a homomorphism), 2 when
//! a configured cap is exceeded.

use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use pglab_core::congruence::{
    congruences_theorem, is_chain, kernel_class, lattice_ops, modular_law_violation, quotient_by_congruence,
};
use pglab_core::morphisms::{decompose_hom, enumerate_homs, hom_violation, are_isomorphic, HomMethod, PolyadicHom};
use pglab_core::polyadic::{verify_axioms, AxiomViolation, DornteIdentity};
use pglab_core::simplicity::{census, same_classes, simplicity_report, CensusEntry, CensusMode, Method};
use pglab_core::substructures::{
    enumerate_normal_polyadic, enumerate_polyadic_subgroups, quotient_polyadic, NormalStrategy, SubgroupStrategy,
};
use pglab_core::{Error, Limits, PolyadicGroup, RawTable};

use crate::doc::{ClassesDoc, Document, HomDoc, LatticeDoc, PolyadicDoc, PresentationDoc, ReportDoc, SubgroupDoc};

#[derive(Debug, Parser)]
#[command(name = "pglab", version, about = "Construct, verify and analyze finite n-ary groups")]
pub struct Cli {
    #[command(flatten)]
    pub caps: Caps,
    #[command(subcommand)]
    pub command: Command,
}

/// Caps; each falls back to a `PGLAB_*` environment variable, then to the
/// library default.
#[derive(Debug, Args, Default)]
pub struct Caps {
    #[arg(long, global = true, env = "PGLAB_MAX_ORDER")]
    pub max_order: Option<usize>,
    #[arg(long, global = true, env = "PGLAB_MAX_ARITY")]
    pub max_arity: Option<usize>,
    #[arg(long, global = true, env = "PGLAB_MAX_COST")]
    pub max_cost: Option<u128>,
    #[arg(long, global = true, env = "PGLAB_MAX_PARTITION_ORDER")]
    pub max_partition_order: Option<usize>,
    #[arg(long, global = true, env = "PGLAB_MAX_SQUARE_ORDER")]
    pub max_square_order: Option<usize>,
    #[arg(long, global = true, env = "PGLAB_MAX_HOM_CANDIDATES")]
    pub max_hom_candidates: Option<u128>,
    #[arg(long, global = true, env = "PGLAB_MAX_CENSUS_TABLES")]
    pub max_census_tables: Option<u128>,
}

impl Caps {
    pub fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_order: self.max_order.unwrap_or(d.max_order),
            max_arity: self.max_arity.unwrap_or(d.max_arity),
            max_cost: self.max_cost.unwrap_or(d.max_cost),
            max_partition_order: self.max_partition_order.unwrap_or(d.max_partition_order),
            max_square_order: self.max_square_order.unwrap_or(d.max_square_order),
            max_hom_candidates: self.max_hom_candidates.unwrap_or(d.max_hom_candidates),
            max_census_tables: self.max_census_tables.unwrap_or(d.max_census_tables),
            ..d
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Theorem,
    Oracle,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Theorem => Method::Theorem,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Derived,
    Exhaustive,
    /// Run both and compare.
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a group or polyadic document against the axioms.
    Verify {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run analyses on a polyadic document.
    Analyze(AnalyzeArgs),
    /// List n-ary groups of a given order and arity up to isomorphism.
    Census {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        arity: usize,
        #[arg(long, value_enum, default_value = "derived")]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Check one map or list all homomorphisms between two polyadic groups.
    #[command(group(ArgGroup::new("what").required(true).args(["map", "enumerate"])))]
    Hom {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Comma-separated images of 0, 1, …
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        enumerate: bool,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Find an isomorphism between two polyadic groups.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write the quotient by a normal polyadic subgroup or a congruence as a
    /// polyadic document.
    #[command(group(ArgGroup::new("by").required(true).args(["subgroup", "classes"])))]
    Quotient {
        path: PathBuf,
        /// Comma-separated members of a normal polyadic subgroup.
        #[arg(long)]
        subgroup: Option<String>,
        /// Congruence as JSON, e.g. `[[0,3],[1,2]]`.
        #[arg(long)]
        classes: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub path: PathBuf,
    #[arg(long)]
    pub skew: bool,
    /// Retract `x ∗ y = f(x, a, …, a, y)` at this element.
    #[arg(long, value_name = "A")]
    pub retract: Option<usize>,
    #[arg(long)]
    pub subgroups: bool,
    #[arg(long)]
    pub normal: bool,
    #[arg(long)]
    pub congruences: bool,
    #[arg(long)]
    pub simplicity: bool,
    /// Comma-separated members of a normal polyadic subgroup.
    #[arg(long, value_name = "MEMBERS")]
    pub quotient: Option<String>,
    #[arg(long, value_enum, default_value = "both")]
    pub method: MethodArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, io::Error),
    Parse(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_cap() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Parse(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(PathBuf::from("<stdout>"), e)
    }
}

type CliResult = Result<bool, CliError>;

pub fn load(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_polyadic(path: &Path, limits: &Limits) -> Result<PolyadicGroup, CliError> {
    match load(path)? {
        Document::Polyadic(doc) => Ok(doc.build(limits)?),
        Document::Group(_) => Err(CliError::Parse(format!("{}: expected a polyadic document", path.display()))),
    }
}

pub fn parse_csv(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| CliError::Parse(format!("not an element index: {t:?}"))))
        .collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn tuple(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("({})", items.join(","))
}

fn print_json(out: &mut dyn Write, v: &impl serde::Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(io::Error::other)?;
    writeln!(out)
}

/// Runs one command; `Ok(false)` means the input was readable but failed the
/// requested check.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    let limits = cli.caps.limits();
    match cli.command {
        Command::Verify { path, json } => verify(&path, json, &limits, out),
        Command::Analyze(args) => analyze(&args, &limits, out),
        Command::Census { order, arity, mode, json } => cmd_census(order, arity, mode, json, &limits, out),
        Command::Hom { from, to, map, enumerate: _, method, json } => {
            hom(&from, &to, map.as_deref(), method.into(), json, &limits, out)
        }
        Command::Iso { first, second, json } => iso(&first, &second, json, &limits, out),
        Command::Quotient { path, subgroup, classes } => {
            quotient(&path, subgroup.as_deref(), classes.as_deref(), &limits, out)
        }
    }
}

fn describe_violation(v: &AxiomViolation) -> String {
    match v {
        AxiomViolation::Associativity { args, first, second } => format!(
            "associativity fails at {}: inner application at slot {first} and slot {second} disagree",
            tuple(args)
        ),
        AxiomViolation::Solvability { position, args, target } => format!(
            "solvability fails: with {} fixed, no x in slot {position} gives {target}",
            tuple(args)
        ),
    }
}

fn describe_dornte(identity: DornteIdentity) -> &'static str {
    match identity {
        DornteIdentity::LeftNeutral => "f(x, …, x̄, …, x, y) = y",
        DornteIdentity::RightNeutral => "f(y, x, …, x̄, …, x) = y",
        DornteIdentity::SkewPosition => "f(x, …, x̄, …, x) = x",
        DornteIdentity::MissingSkew => "x̄ exists and is unique",
    }
}

fn verify(path: &Path, json: bool, limits: &Limits, out: &mut dyn Write) -> CliResult {
    let doc = load(path)?;
    let mut problems: Vec<String> = Vec::new();
    let (mut associative, mut solvable, mut dornte) = (None, None, None);
    let mut kind = "group";
    match &doc {
        Document::Group(g) => {
            if let Err(e) = g.to_group() {
                problems.push(e.to_string());
            }
        }
        Document::Polyadic(p) => {
            kind = "polyadic";
            let raw = match &p.presentation {
                PresentationDoc::Table { order, flat } => Some(RawTable::new(p.arity, *order, flat.clone())?),
                PresentationDoc::Derived { .. } => None,
            };
            if let Some(table) = &raw {
                let report = verify_axioms(table, limits)?;
                associative = Some(report.associative);
                solvable = Some(report.solvable);
                problems.extend(report.violations.iter().map(describe_violation));
            }
            if problems.is_empty() {
                match p.build(limits) {
                    Ok(group) => {
                        if raw.is_none() && pglab_core::polyadic::axiom_cost(group.order(), group.arity()) <= limits.max_cost {
                            let report = verify_axioms(&group, limits)?;
                            associative = Some(report.associative);
                            solvable = Some(report.solvable);
                            problems.extend(report.violations.iter().map(describe_violation));
                        }
                        match group.dornte_check() {
                            Ok(()) => dornte = Some(true),
                            Err(v) => {
                                dornte = Some(false);
                                problems.push(format!(
                                    "Dörnte identity {} fails at position {} for x = {}, y = {}",
                                    describe_dornte(v.identity),
                                    v.position,
                                    v.x,
                                    v.y
                                ));
                            }
                        }
                    }
                    Err(e) if e.is_cap() => return Err(e.into()),
                    Err(e) => problems.push(e.to_string()),
                }
            }
        }
    }
    let valid = problems.is_empty();
    if json {
        print_json(
            out,
            &json!({
                "kind": kind,
                "valid": valid,
                "associative": associative,
                "solvable": solvable,
                "dornte": dornte,
                "violations": problems,
            }),
        )?;
    } else {
        let flag = |b: Option<bool>| b.map_or("by construction", yes);
        if kind == "polyadic" {
            writeln!(out, "associative: {}, solvable: {}, Dörnte: {}", flag(associative), flag(solvable), dornte.map_or("not checked", yes))?;
        }
        for p in &problems {
            writeln!(out, "violation: {p}")?;
        }
        writeln!(out, "{}", if valid { "valid" } else { "invalid" })?;
    }
    Ok(valid)
}

fn summary(p: &PolyadicGroup) -> Value {
    json!({
        "arity": p.arity(),
        "order": p.order(),
        "form": format!("{:?}", p.form()).to_lowercase(),
        "reduced": p.is_reduced(),
        "n_ary_identity": p.n_ary_identity(),
        "skew_fixed_points": p.skew_fixed_points(),
    })
}

fn lattice_doc(p: &PolyadicGroup, limits: &Limits) -> Result<LatticeDoc, CliError> {
    let congs = congruences_theorem(p, limits)?;
    let index = |c: &pglab_core::congruence::Congruence| congs.iter().position(|d| d == c).expect("closed under meet and join");
    let mut meet = vec![vec![0; congs.len()]; congs.len()];
    let mut join = meet.clone();
    let mut identities = true;
    for (i, r) in congs.iter().enumerate() {
        for (j, q) in congs.iter().enumerate() {
            let ops = lattice_ops(p, r, q);
            identities &= ops.all_hold();
            meet[i][j] = index(&ops.meet);
            join[i][j] = index(&ops.join);
        }
    }
    Ok(LatticeDoc {
        chain: is_chain(&congs),
        modular: modular_law_violation(&congs).is_none(),
        identities_hold: identities,
        congruences: congs.iter().map(ClassesDoc::from).collect(),
        meet,
        join,
    })
}

/// Oracle result for comparison; under `both` a cap on the oracle side is
/// tolerated and the theorem result stands.
fn cross_check<T>(method: Method, oracle: Result<T, Error>) -> Result<Option<T>, Error> {
    match oracle {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_cap() && method == Method::Both => Ok(None),
        Err(e) => Err(e),
    }
}

fn analyze(args: &AnalyzeArgs, limits: &Limits, out: &mut dyn Write) -> CliResult {
    let p = load_polyadic(&args.path, limits)?;
    let method: Method = args.method.into();
    let mut obj = Map::new();
    let s = summary(&p);
    if !args.json {
        writeln!(
            out,
            "{}-ary group of order {} ({} form); reduced: {}; skew fixed points: {}",
            p.arity(),
            p.order(),
            s["form"].as_str().unwrap_or_default(),
            yes(p.is_reduced()),
            p.skew_fixed_points()
        )?;
    }
    obj.insert("summary".into(), s);
    if args.skew {
        let skew: Vec<usize> = (0..p.order()).map(|x| p.skew(x)).collect();
        if !args.json {
            writeln!(out, "skew:")?;
            for (x, s) in skew.iter().enumerate() {
                writeln!(out, "  {x:>3} ↦ {s}")?;
            }
        }
        obj.insert("skew".into(), json!(skew));
    }
    if let Some(a) = args.retract {
        if a >= p.order() {
            return Err(Error::ElementOutOfRange { element: a, order: p.order() }.into());
        }
        let (g, relabel) = p.retract(a)?;
        let m = p.order();
        let table: Vec<Vec<usize>> =
            (0..m).map(|x| (0..m).map(|y| relabel[g.mul(relabel[x], relabel[y])]).collect()).collect();
        let identity = relabel[0];
        if !args.json {
            writeln!(out, "retract at {a}: x ∗ y = f(x, {a}, …, {a}, y), identity {identity}")?;
            let w = m.to_string().len().max(1);
            for row in &table {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>w$}")).collect();
                writeln!(out, "  {}", cells.join(" "))?;
            }
        }
        obj.insert("retract".into(), json!({ "a": a, "identity": identity, "table": table }));
    }
    if args.subgroups {
        let subs = enumerate_polyadic_subgroups(&p, SubgroupStrategy::Theorem, limits)?;
        if method != Method::Theorem {
            let oracle = cross_check(method, enumerate_polyadic_subgroups(&p, SubgroupStrategy::Oracle, limits))?;
            if oracle.is_some_and(|o| o != subs) {
                return Err(Error::MethodDisagreement("polyadic subgroups").into());
            }
        }
        if !args.json {
            writeln!(out, "{} polyadic subgroups", subs.len())?;
            for h in &subs {
                writeln!(out, "  {}", set(&h.members))?;
            }
        }
        obj.insert("subgroups".into(), json!(subs.iter().map(SubgroupDoc::from).collect::<Vec<_>>()));
    }
    if args.normal {
        let normal = enumerate_normal_polyadic(&p, NormalStrategy::Theorem, limits)?;
        if method != Method::Theorem {
            let oracle = cross_check(method, enumerate_normal_polyadic(&p, NormalStrategy::Oracle, limits))?;
            if oracle.is_some_and(|o| o != normal) {
                return Err(Error::MethodDisagreement("normal polyadic subgroups").into());
            }
        }
        if !args.json {
            writeln!(out, "{} normal polyadic subgroups", normal.len())?;
            for h in &normal {
                writeln!(out, "  {}", set(&h.members))?;
            }
        }
        obj.insert("normal".into(), json!(normal.iter().map(SubgroupDoc::from).collect::<Vec<_>>()));
    }
    if args.congruences {
        let lattice = lattice_doc(&p, limits)?;
        if method != Method::Theorem {
            if let Some(brute) = cross_check(method, pglab_core::congruence::congruences_bruteforce(&p, limits))? {
                let brute: Vec<ClassesDoc> = brute.iter().map(ClassesDoc::from).collect();
                if brute != lattice.congruences {
                    return Err(Error::MethodDisagreement("congruences").into());
                }
            }
        }
        if !args.json {
            writeln!(
                out,
                "{} congruences; lattice: {}; modular: {}",
                lattice.congruences.len(),
                if lattice.chain { "chain" } else { "not a chain" },
                yes(lattice.modular)
            )?;
            let congs = congruences_theorem(&p, limits)?;
            for (i, c) in congs.iter().enumerate() {
                let k = kernel_class(&p, c)?;
                let classes: Vec<String> = c.classes().iter().map(|cl| set(cl)).collect();
                writeln!(out, "  [{i}] {}  identity class {}", classes.join(" "), set(&k.members))?;
            }
        }
        obj.insert("congruences".into(), serde_json::to_value(&lattice).map_err(io::Error::other)?);
    }
    if args.simplicity {
        let report = simplicity_report(&p, method, limits)?;
        let doc = ReportDoc::from(&report);
        if !args.json {
            writeln!(
                out,
                "UAS: {}, GTS: {}, GTS*: {}, reduced: {}{}",
                yes(report.uas),
                yes(report.gts),
                yes(report.gts_star),
                yes(report.reduced),
                if report.degenerate { " (one-element, vacuous)" } else { "" }
            )?;
            if let Some(c) = &report.witnesses.uas {
                let classes: Vec<String> = c.classes().iter().map(|cl| set(cl)).collect();
                writeln!(out, "  not UAS: congruence {}", classes.join(" "))?;
            }
            if let Some(h) = &report.witnesses.gts {
                writeln!(out, "  not GTS: normal polyadic subgroup {}", set(&h.members))?;
            }
            if let Some(h) = &report.witnesses.gts_star {
                writeln!(out, "  not GTS*: normal polyadic subgroup {}", set(&h.members))?;
            }
            writeln!(out, "  method: {}", report.method.as_str())?;
        }
        obj.insert("simplicity".into(), serde_json::to_value(&doc).map_err(io::Error::other)?);
    }
    if let Some(list) = &args.quotient {
        let members = parse_csv(list)?;
        let q = quotient_polyadic(&p, &members, limits)?;
        let doc = PolyadicDoc::from_group(&q.quotient, limits)?;
        if !args.json {
            let classes: Vec<String> = q.classes.iter().map(|cl| set(cl)).collect();
            writeln!(
                out,
                "quotient by {}: order {}, reduced: {}",
                set(&members),
                q.quotient.order(),
                yes(q.quotient.is_reduced())
            )?;
            writeln!(out, "  classes {}", classes.join(" "))?;
        }
        obj.insert(
            "quotient".into(),
            json!({ "classes": q.classes, "document": Document::Polyadic(doc) }),
        );
    }
    if args.json {
        print_json(out, &Value::Object(obj))?;
    }
    Ok(true)
}

fn census_entry_json(e: &CensusEntry, limits: &Limits) -> Result<Value, CliError> {
    Ok(json!({
        "label": e.label,
        "document": Document::Polyadic(PolyadicDoc::from_group(&e.group, limits)?),
        "report": ReportDoc::from(&e.report),
    }))
}

fn cmd_census(order: usize, arity: usize, mode: ModeArg, json: bool, limits: &Limits, out: &mut dyn Write) -> CliResult {
    let (entries, agree) = match mode {
        ModeArg::Derived => (census(order, arity, CensusMode::Derived, limits)?, None),
        ModeArg::Exhaustive => (census(order, arity, CensusMode::Exhaustive, limits)?, None),
        ModeArg::Both => {
            let ex = census(order, arity, CensusMode::Exhaustive, limits)?;
            let de = census(order, arity, CensusMode::Derived, limits)?;
            let same = same_classes(&ex, &de, limits)?;
            (ex, Some(same))
        }
    };
    let mode_name = format!("{mode:?}").to_lowercase();
    if json {
        let classes = entries.iter().map(|e| census_entry_json(e, limits)).collect::<Result<Vec<_>, _>>()?;
        print_json(
            out,
            &json!({ "order": order, "arity": arity, "mode": mode_name, "agree": agree, "classes": classes }),
        )?;
    } else {
        writeln!(out, "census order {order}, arity {arity}, mode {mode_name}: {} classes", entries.len())?;
        for (i, e) in entries.iter().enumerate() {
            let r = &e.report;
            writeln!(
                out,
                "  [{i}] {:<44} UAS: {:<3} GTS: {:<3} GTS*: {:<3} reduced: {}",
                e.label,
                yes(r.uas),
                yes(r.gts),
                yes(r.gts_star),
                yes(r.reduced)
            )?;
        }
        if let Some(same) = agree {
            writeln!(out, "derived and exhaustive classes agree: {}", yes(same))?;
        }
    }
    Ok(agree.unwrap_or(true))
}

fn hom(
    from: &Path,
    to: &Path,
    map: Option<&str>,
    method: Method,
    json: bool,
    limits: &Limits,
    out: &mut dyn Write,
) -> CliResult {
    let p = load_polyadic(from, limits)?;
    let q = load_polyadic(to, limits)?;
    if let Some(map) = map {
        let map = parse_csv(map)?;
        if let Some(args) = hom_violation(&p, &q, &map, limits)? {
            if json {
                print_json(out, &json!({ "homomorphism": false, "witness": args }))?;
            } else {
                writeln!(out, "not a homomorphism, witness {}", tuple(&args))?;
            }
            return Ok(false);
        }
        let hom = PolyadicHom { map };
        let d = decompose_hom(&p, &q, &hom)?;
        if json {
            print_json(out, &HomDoc::new(&hom, &d))?;
        } else {
            writeln!(out, "homomorphism {}", tuple(&hom.map))?;
            writeln!(out, "  a = {}, phi = {}", d.a, tuple(&d.phi))?;
        }
        return Ok(true);
    }
    let homs = match method {
        Method::Theorem => enumerate_homs(&p, &q, HomMethod::Theorem, limits)?,
        Method::Oracle => enumerate_homs(&p, &q, HomMethod::Oracle, limits)?,
        Method::Both => {
            let t = enumerate_homs(&p, &q, HomMethod::Theorem, limits)?;
            match enumerate_homs(&p, &q, HomMethod::Oracle, limits) {
                Ok(o) if o != t => return Err(Error::MethodDisagreement("homomorphisms").into()),
                Ok(_) => t,
                Err(e) if e.is_cap() => t,
                Err(e) => return Err(e.into()),
            }
        }
    };
    let docs = homs
        .iter()
        .map(|h| Ok(HomDoc::new(h, &decompose_hom(&p, &q, h)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    if json {
        print_json(out, &docs)?;
    } else {
        writeln!(out, "{} homomorphisms", docs.len())?;
        for d in &docs {
            writeln!(out, "  {}  a = {}, phi = {}", tuple(&d.map), d.decomposition.a, tuple(&d.decomposition.phi))?;
        }
    }
    Ok(true)
}

fn iso(first: &Path, second: &Path, json: bool, limits: &Limits, out: &mut dyn Write) -> CliResult {
    let p = load_polyadic(first, limits)?;
    let q = load_polyadic(second, limits)?;
    let found = are_isomorphic(&p, &q, limits)?;
    if json {
        print_json(out, &json!({ "isomorphic": found.is_some(), "map": found.as_ref().map(|h| &h.map) }))?;
    } else {
        match &found {
            Some(h) => writeln!(out, "isomorphic via {}", tuple(&h.map))?,
            None => writeln!(out, "not isomorphic")?,
        }
    }
    Ok(true)
}

fn quotient(path: &Path, subgroup: Option<&str>, classes: Option<&str>, limits: &Limits, out: &mut dyn Write) -> CliResult {
    let p = load_polyadic(path, limits)?;
    let group = match (subgroup, classes) {
        (Some(members), _) => quotient_polyadic(&p, &parse_csv(members)?, limits)?.quotient,
        (None, Some(text)) => {
            let classes: Vec<Vec<usize>> =
                serde_json::from_str(text).map_err(|e| CliError::Parse(format!("--classes: {e}")))?;
            let r = ClassesDoc { classes }.to_congruence(p.order())?;
            if !pglab_core::congruence::is_congruence(&p, &r) {
                return Err(CliError::Parse("--classes: not compatible with the operation and skew".into()));
            }
            quotient_by_congruence(&p, &r, limits)?.quotient
        }
        (None, None) => unreachable!("clap requires one of --subgroup, --classes"),
    };
    print_json(out, &Document::Polyadic(PolyadicDoc::from_group(&group, limits)?))?;
    Ok(true)
}

/// Parses the process arguments, runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
