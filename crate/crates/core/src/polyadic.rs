//! n-ary groups: construction, axiom verification, skew elements, retracts and
//! the reconstruction of a derived presentation `x₁θ(x₂)⋯θ^{n-1}(xₙ)b` from a
//! raw operation table.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::group::{Automorphism, FiniteGroup};
use crate::limits::{pow_u128, Limits};

/// Operation tables with at most this many entries are cached for derived groups.
const TABLE_CACHE_LIMIT: u128 = 1 << 20;

/// Anything that evaluates an n-ary operation on `0..order`.
pub trait NaryOp {
    fn arity(&self) -> usize;
    fn order(&self) -> usize;
    /// `args.len()` must equal `arity()`.
    fn eval(&self, args: &[usize]) -> usize;
}

/// Flat index of `args`: the last argument varies fastest.
#[inline]
pub fn flat_index(order: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &x| acc * order + x)
}

/// Advances `args` as an odometer over `0..order`; false once it wraps.
#[inline]
pub(crate) fn next_tuple(args: &mut [usize], order: usize) -> bool {
    for slot in args.iter_mut().rev() {
        *slot += 1;
        if *slot < order {
            return true;
        }
        *slot = 0;
    }
    false
}

/// A raw operation table: `order^arity` entries, row-major, last argument fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawTable {
    arity: usize,
    order: usize,
    flat: Vec<usize>,
}

impl RawTable {
    pub fn new(arity: usize, order: usize, flat: Vec<usize>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::MalformedTable(format!("arity {arity} is below 2")));
        }
        if order == 0 {
            return Err(Error::MalformedTable("empty carrier".into()));
        }
        let expected = pow_u128(order, arity);
        if flat.len() as u128 != expected {
            return Err(Error::MalformedTable(format!("expected {expected} entries, got {}", flat.len())));
        }
        if let Some(pos) = flat.iter().position(|&v| v >= order) {
            return Err(Error::MalformedTable(format!("entry {pos} = {} out of range", flat[pos])));
        }
        Ok(RawTable { arity, order, flat })
    }

    /// Tabulates `op`; fails on out-of-range values.
    pub fn from_op(op: &impl NaryOp) -> Result<Self> {
        let (n, m) = (op.arity(), op.order());
        let mut flat = Vec::with_capacity(pow_u128(m, n) as usize);
        let mut args = vec![0; n];
        loop {
            flat.push(op.eval(&args));
            if !next_tuple(&mut args, m) {
                break;
            }
        }
        Self::new(n, m, flat)
    }

    pub fn flat(&self) -> &[usize] {
        &self.flat
    }

    pub fn into_flat(self) -> Vec<usize> {
        self.flat
    }

    /// Overwrites one entry; used to build negative controls.
    pub fn set(&mut self, args: &[usize], value: usize) {
        let i = flat_index(self.order, args);
        self.flat[i] = value;
    }
}

impl NaryOp for RawTable {
    fn arity(&self) -> usize {
        self.arity
    }
    fn order(&self) -> usize {
        self.order
    }
    #[inline]
    fn eval(&self, args: &[usize]) -> usize {
        self.flat[flat_index(self.order, args)]
    }
}

/// A derived presentation `(G, ·, θ, b)` of a polyadic group, together with the
/// bijection between carrier elements and indices of the base group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub base: FiniteGroup,
    pub theta: Automorphism,
    pub b: usize,
    /// Carrier element to base index.
    pub to_base: Vec<usize>,
    /// Base index to carrier element.
    pub from_base: Vec<usize>,
}

impl Presentation {
    pub fn is_identity_relabel(&self) -> bool {
        self.to_base.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Carrier element playing the role of the base identity.
    pub fn identity(&self) -> usize {
        self.from_base[0]
    }

    pub fn to_carrier_set(&self, base_set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = base_set.iter().map(|&x| self.from_base[x]).collect();
        out.sort_unstable();
        out
    }

    pub fn to_base_set(&self, carrier_set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = carrier_set.iter().map(|&x| self.to_base[x]).collect();
        out.sort_unstable();
        out
    }

    /// `θ^0, …, θ^{arity-1}` as image arrays.
    pub fn theta_powers(&self, arity: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(arity);
        let mut current: Vec<usize> = (0..self.base.order()).collect();
        for _ in 0..arity {
            let next = current.iter().map(|&x| self.theta.apply(x)).collect();
            out.push(core::mem::replace(&mut current, next));
        }
        out
    }

    /// `x₁θ(x₂)⋯θ^{n-1}(xₙ)b` on carrier elements, via the base group.
    pub fn eval_carrier(&self, powers: &[Vec<usize>], args: &[usize]) -> usize {
        let g = &self.base;
        let mut acc = 0;
        for (k, &x) in args.iter().enumerate() {
            acc = g.mul(acc, powers[k][self.to_base[x]]);
        }
        self.from_base[g.mul(acc, self.b)]
    }
}

/// Whether a polyadic group was supplied as a derived presentation or as a raw table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Derived,
    Table,
}

/// A finite n-ary group. Every instance carries a derived presentation; table
/// inputs get theirs from the retract anchored at 0.
#[derive(Debug, Clone)]
pub struct PolyadicGroup {
    arity: usize,
    form: Form,
    pres: Presentation,
    /// `θ^k` for `k = 0..arity`, base coordinates.
    theta_powers: Vec<Vec<usize>>,
    /// Full operation table in carrier coordinates, when small enough.
    table: Option<Vec<usize>>,
    skews: Vec<usize>,
}

impl PartialEq for PolyadicGroup {
    /// Equal operations on the same carrier, regardless of presentation.
    fn eq(&self, other: &Self) -> bool {
        if self.arity != other.arity || self.order() != other.order() {
            return false;
        }
        let mut args = vec![0; self.arity];
        loop {
            if self.eval(&args) != other.eval(&args) {
                return false;
            }
            if !next_tuple(&mut args, self.order()) {
                return true;
            }
        }
    }
}

impl NaryOp for PolyadicGroup {
    fn arity(&self) -> usize {
        self.arity
    }
    fn order(&self) -> usize {
        self.pres.base.order()
    }
    #[inline]
    fn eval(&self, args: &[usize]) -> usize {
        match &self.table {
            Some(t) => t[flat_index(self.order(), args)],
            None => self.eval_derived(args),
        }
    }
}

impl PolyadicGroup {
    /// `der_{θ,b}(G, ·)` with arity `n`. Rejects `θ(b) ≠ b` and
    /// `θ^{n-1} ≠ I_b`; associativity holds by construction.
    pub fn derive(base: FiniteGroup, theta: Automorphism, b: usize, n: usize, limits: &Limits) -> Result<Self> {
        if n < 2 {
            return Err(Error::MalformedTable(format!("arity {n} is below 2")));
        }
        limits.check_arity(n)?;
        limits.check_order(base.order())?;
        let m = base.order();
        if theta.perm().len() != m {
            return Err(Error::NotAutomorphism(format!("expected {m} images, got {}", theta.perm().len())));
        }
        if b >= m {
            return Err(Error::ElementOutOfRange { element: b, order: m });
        }
        if theta.apply(b) != b {
            return Err(Error::BNotFixed { b, image: theta.apply(b) });
        }
        let power = theta.pow(n - 1);
        if let Some(element) = (0..m).find(|&x| power.apply(x) != base.conjugate(b, x)) {
            return Err(Error::PowerCondition { element });
        }
        let pres = Presentation {
            base,
            theta,
            b,
            to_base: (0..m).collect(),
            from_base: (0..m).collect(),
        };
        Ok(Self::assemble(n, Form::Derived, pres, None))
    }

    /// `der_b(G, ·)`: `x₁x₂⋯xₙb` for a central `b`.
    pub fn derive_b(base: FiniteGroup, b: usize, n: usize, limits: &Limits) -> Result<Self> {
        if b >= base.order() {
            return Err(Error::ElementOutOfRange { element: b, order: base.order() });
        }
        if !base.is_central(b) {
            return Err(Error::NotCentral { element: b });
        }
        let id = Automorphism::identity(base.order());
        Self::derive(base, id, b, n, limits)
    }

    /// `der(G, ·)` of arity `n`.
    pub fn reduced(base: FiniteGroup, n: usize, limits: &Limits) -> Result<Self> {
        Self::derive_b(base, 0, n, limits)
    }

    /// Validates a raw table exhaustively and attaches the presentation
    /// anchored at 0. Fails with the axiom report summary when the table is
    /// not an n-ary group.
    pub fn from_table(table: RawTable, limits: &Limits) -> Result<Self> {
        limits.check_arity(table.arity)?;
        limits.check_order(table.order)?;
        let report = verify_axioms(&table, limits)?;
        if !report.is_group() {
            return Err(Error::NotPolyadicGroup(format!("{:?}", report.violations)));
        }
        Self::from_table_trusted(table, limits)
    }

    /// Builds a table-form group whose axioms are guaranteed by construction.
    /// The presentation is still checked entry by entry against the table,
    /// which by itself certifies an n-ary group.
    pub(crate) fn from_table_trusted(table: RawTable, limits: &Limits) -> Result<Self> {
        let pres = presentation_of(&table, 0, limits, true)?;
        let n = table.arity;
        Ok(Self::assemble(n, Form::Table, pres, Some(table.flat)))
    }

    fn assemble(arity: usize, form: Form, pres: Presentation, table: Option<Vec<usize>>) -> Self {
        let m = pres.base.order();
        let theta_powers = pres.theta_powers(arity);
        let mut group = PolyadicGroup { arity, form, pres, theta_powers, table, skews: Vec::new() };
        if group.table.is_none() && pow_u128(m, arity) <= TABLE_CACHE_LIMIT {
            let mut flat = Vec::with_capacity(pow_u128(m, arity) as usize);
            let mut args = vec![0; arity];
            loop {
                flat.push(group.eval_derived(&args));
                if !next_tuple(&mut args, m) {
                    break;
                }
            }
            group.table = Some(flat);
        }
        group.skews = (0..m)
            .map(|x| match group.form {
                Form::Derived => group.skew_formula(x),
                Form::Table => skew_oracle(&group, x).expect("validated n-ary group has unique skews"),
            })
            .collect();
        group
    }

    /// Evaluates through the presentation, carrier coordinates in and out.
    fn eval_derived(&self, args: &[usize]) -> usize {
        self.pres.eval_carrier(&self.theta_powers, args)
    }

    /// `b⁻¹θ^{n-2}(x⁻¹)⋯θ(x⁻¹)`, computed in base coordinates.
    fn skew_formula(&self, x: usize) -> usize {
        let g = &self.pres.base;
        let xi = g.inv(self.pres.to_base[x]);
        let mut acc = g.inv(self.pres.b);
        for k in (1..self.arity - 1).rev() {
            acc = g.mul(acc, self.theta_powers[k][xi]);
        }
        self.pres.from_base[acc]
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.pres.base.order()
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    /// The table supplied for a table-form group.
    pub fn raw_table(&self) -> Option<&[usize]> {
        match self.form {
            Form::Table => self.table.as_deref(),
            Form::Derived => None,
        }
    }

    /// Tabulates the operation; `m^n` evaluations must fit the cost cap.
    pub fn operation_table(&self, limits: &Limits) -> Result<RawTable> {
        if let Some(t) = &self.table {
            return RawTable::new(self.arity, self.order(), t.clone());
        }
        limits.check_cost(pow_u128(self.order(), self.arity))?;
        RawTable::from_op(self)
    }

    /// Checked evaluation of `f(args)`.
    pub fn eval_f(&self, args: &[usize]) -> Result<usize> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        if let Some(&x) = args.iter().find(|&&x| x >= self.order()) {
            return Err(Error::ElementOutOfRange { element: x, order: self.order() });
        }
        Ok(self.eval(args))
    }

    /// The skew element `x̄`: closed formula for derived groups, scan for tables.
    #[inline]
    pub fn skew(&self, x: usize) -> usize {
        self.skews[x]
    }

    /// `θ^k` applied in base coordinates.
    #[inline]
    pub fn theta_power(&self, k: usize, x: usize) -> usize {
        self.theta_powers[k][x]
    }

    /// `f(a, …, a)`.
    pub fn power_constant(&self, a: usize) -> usize {
        self.eval(&vec![a; self.arity])
    }

    /// The retract `ret_a`, relabelled so that its identity `ā` becomes 0.
    pub fn retract(&self, a: usize) -> Result<(FiniteGroup, Vec<usize>)> {
        retract_of(self, a, self.skew(a))
    }

    /// Presentation over `ret_a`: `φ(x) = f(ā, x, a, …, a)`, `c = f(ā, …, ā)`.
    /// Checked against the operation on every tuple when `m^n` fits the cost
    /// cap, on a fixed random sample otherwise.
    pub fn hosszu_gloskin(&self, a: usize, limits: &Limits) -> Result<Presentation> {
        presentation_of(self, a, limits, false)
    }

    /// Smallest `n`-ary identity, if any.
    pub fn n_ary_identity(&self) -> Option<usize> {
        n_ary_identity(self)
    }

    pub fn is_reduced(&self) -> bool {
        self.n_ary_identity().is_some()
    }

    pub fn dornte_check(&self) -> core::result::Result<(), DornteViolation> {
        dornte_check(self)
    }

    /// Carrier elements that are their own skew.
    pub fn skew_fixed_points(&self) -> usize {
        (0..self.order()).filter(|&x| self.skew(x) == x).count()
    }
}

/// Scans for the unique `y` with `f(x, …, x, y) = x`.
pub fn skew_oracle(op: &impl NaryOp, x: usize) -> Result<usize> {
    let n = op.arity();
    let mut args = vec![x; n];
    let mut found = None;
    for y in 0..op.order() {
        args[n - 1] = y;
        if op.eval(&args) == x {
            if found.is_some() {
                return Err(Error::NotUnique { position: n });
            }
            found = Some(y);
        }
    }
    found.ok_or(Error::NoSolution { position: n })
}

/// Smallest `a` with `f(a, …, a, x, a, …, a) = x` for every `x` and slot.
pub fn n_ary_identity(op: &impl NaryOp) -> Option<usize> {
    let n = op.arity();
    let m = op.order();
    (0..m).find(|&a| {
        let mut args = vec![a; n];
        (0..n).all(|i| {
            let ok = (0..m).all(|x| {
                args[i] = x;
                op.eval(&args) == x
            });
            args[i] = a;
            ok
        })
    })
}

fn transposition(order: usize, a: usize) -> Vec<usize> {
    (0..order).map(|x| if x == a { 0 } else if x == 0 { a } else { x }).collect()
}

/// `x ∗ y = f(x, a, …, a, y)` relabelled with `ā ↦ 0` by a transposition.
fn retract_of(op: &impl NaryOp, a: usize, a_skew: usize) -> Result<(FiniteGroup, Vec<usize>)> {
    let n = op.arity();
    let m = op.order();
    let relabel = transposition(m, a_skew);
    let mut args = vec![a; n];
    let mut flat = vec![0; m * m];
    for x in 0..m {
        for y in 0..m {
            args[0] = x;
            args[n - 1] = y;
            flat[relabel[x] * m + relabel[y]] = relabel[op.eval(&args)];
        }
    }
    Ok((FiniteGroup::from_flat(m, flat)?, relabel))
}

fn presentation_of(op: &impl NaryOp, a: usize, limits: &Limits, exhaustive_only: bool) -> Result<Presentation> {
    let n = op.arity();
    let m = op.order();
    let a_skew = skew_oracle(op, a)?;
    let (base, relabel) = retract_of(op, a, a_skew)?;
    let mut args = vec![a; n];
    args[0] = a_skew;
    let mut phi = vec![0; m];
    for x in 0..m {
        args[1] = x;
        phi[relabel[x]] = relabel[op.eval(&args)];
    }
    let c = relabel[op.eval(&vec![a_skew; n])];
    let theta = Automorphism::new(&base, phi).map_err(|_| Error::RoundTripMismatch { args: vec![] })?;
    if theta.apply(c) != c || theta.pow(n - 1) != base.inner_automorphism(c) {
        return Err(Error::RoundTripMismatch { args: vec![] });
    }
    let pres = Presentation { base, theta, b: c, from_base: relabel.clone(), to_base: relabel };
    let total = pow_u128(m, n);
    let powers = pres.theta_powers(n);
    let check = |args: &[usize]| -> Result<()> {
        if op.eval(args) != pres.eval_carrier(&powers, args) {
            return Err(Error::RoundTripMismatch { args: args.to_vec() });
        }
        Ok(())
    };
    if total <= limits.max_cost {
        let mut args = vec![0; n];
        loop {
            check(&args)?;
            if !next_tuple(&mut args, m) {
                break;
            }
        }
    } else if exhaustive_only {
        return Err(Error::CostCapExceeded { required: total, cap: limits.max_cost });
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut args = vec![0; n];
        for _ in 0..limits.max_cost.min(100_000) {
            for slot in args.iter_mut() {
                *slot = (rng.next_u64() % m as u64) as usize;
            }
            check(&args)?;
        }
    }
    Ok(pres)
}

/// Which Dörnte identity failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DornteIdentity {
    /// `f(x^(i-2), x̄, x^(n-i), y) = y`.
    LeftNeutral,
    /// `f(y, x^(n-j), x̄, x^(j-2)) = y`.
    RightNeutral,
    /// `f(x^(k-1), x̄, x^(n-k)) = x`.
    SkewPosition,
    /// No unique skew exists for `x`.
    MissingSkew,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DornteViolation {
    pub identity: DornteIdentity,
    /// 1-based index `i`, `j` or `k` of the identity.
    pub position: usize,
    pub x: usize,
    pub y: usize,
}

/// Checks all Dörnte identities for every `x`, `y`.
pub fn dornte_check(op: &impl NaryOp) -> core::result::Result<(), DornteViolation> {
    let n = op.arity();
    let m = op.order();
    let mut args = vec![0; n];
    for x in 0..m {
        let skew = skew_oracle(op, x).map_err(|_| DornteViolation {
            identity: DornteIdentity::MissingSkew,
            position: n,
            x,
            y: x,
        })?;
        for i in 2..=n {
            for y in 0..m {
                // f(x^(i-2), x̄, x^(n-i), y)
                args.iter_mut().for_each(|s| *s = x);
                args[i - 2] = skew;
                args[n - 1] = y;
                if op.eval(&args) != y {
                    return Err(DornteViolation { identity: DornteIdentity::LeftNeutral, position: i, x, y });
                }
                // f(y, x^(n-i), x̄, x^(i-2))
                args.iter_mut().for_each(|s| *s = x);
                args[0] = y;
                args[n - i + 1] = skew;
                if op.eval(&args) != y {
                    return Err(DornteViolation { identity: DornteIdentity::RightNeutral, position: i, x, y });
                }
            }
        }
        for k in 1..=n {
            args.iter_mut().for_each(|s| *s = x);
            args[k - 1] = skew;
            if op.eval(&args) != x {
                return Err(DornteViolation { identity: DornteIdentity::SkewPosition, position: k, x, y: x });
            }
        }
    }
    Ok(())
}

/// One failed instance of an n-ary group axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// Inner evaluation at 1-based slots `first` and `second` disagree on `args`
    /// (a `2n-1`-tuple).
    Associativity { args: Vec<usize>, first: usize, second: usize },
    /// With the other arguments fixed as in `args`, no value in slot
    /// `position` (1-based; `args` holds a placeholder there) yields `target`.
    Solvability { position: usize, args: Vec<usize>, target: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub associative: bool,
    pub solvable: bool,
    pub violations: Vec<AxiomViolation>,
    pub checked_exhaustively: bool,
}

impl AxiomReport {
    pub fn is_group(&self) -> bool {
        self.associative && self.solvable
    }
}

/// Elementary evaluations performed by [`verify_axioms`].
pub fn axiom_cost(order: usize, arity: usize) -> u128 {
    let assoc = pow_u128(order, 2 * arity - 1).saturating_mul(2 * arity as u128);
    let solv = pow_u128(order, arity).saturating_mul(arity as u128);
    assoc.saturating_add(solv)
}

/// `f(x_1^{i-1}, f(x_i^{i+n-1}), x_{i+n}^{2n-1})` for 0-based `i`.
fn inner_at(op: &impl NaryOp, wide: &[usize], i: usize, scratch: &mut [usize]) -> usize {
    let n = op.arity();
    let inner = op.eval(&wide[i..i + n]);
    scratch[..i].copy_from_slice(&wide[..i]);
    scratch[i] = inner;
    scratch[i + 1..].copy_from_slice(&wide[i + n..]);
    op.eval(scratch)
}

/// Exhaustive check of associativity at every pair of slots and solvability
/// at every position. Refuses with `CostCapExceeded` rather than sampling.
pub fn verify_axioms(op: &impl NaryOp, limits: &Limits) -> Result<AxiomReport> {
    let n = op.arity();
    let m = op.order();
    limits.check_cost(axiom_cost(m, n))?;
    let mut report = AxiomReport { associative: true, solvable: true, violations: Vec::new(), checked_exhaustively: true };
    let mut wide = vec![0; 2 * n - 1];
    let mut scratch = vec![0; n];
    'assoc: loop {
        let first = inner_at(op, &wide, 0, &mut scratch);
        for i in 1..n {
            if inner_at(op, &wide, i, &mut scratch) != first {
                report.associative = false;
                report.violations.push(AxiomViolation::Associativity { args: wide.clone(), first: 1, second: i + 1 });
                break 'assoc;
            }
        }
        if !next_tuple(&mut wide, m) {
            break;
        }
    }
    if let Some(v) = find_unsolvable(op) {
        report.solvable = false;
        report.violations.push(v);
    }
    Ok(report)
}

fn find_unsolvable(op: &impl NaryOp) -> Option<AxiomViolation> {
    let n = op.arity();
    let m = op.order();
    let mut hit = vec![false; m];
    let mut context = vec![0; n - 1];
    let mut args = vec![0; n];
    for position in 0..n {
        context.iter_mut().for_each(|s| *s = 0);
        loop {
            args[..position].copy_from_slice(&context[..position]);
            args[position + 1..].copy_from_slice(&context[position..]);
            hit.iter_mut().for_each(|h| *h = false);
            for x in 0..m {
                args[position] = x;
                hit[op.eval(&args)] = true;
            }
            if let Some(target) = hit.iter().position(|&h| !h) {
                args[position] = 0;
                return Some(AxiomViolation::Solvability { position: position + 1, args: args.clone(), target });
            }
            if !next_tuple(&mut context, m) {
                break;
            }
        }
    }
    None
}

/// Associativity on `samples` random `2n-1`-tuples plus the exhaustive
/// solvability scan. Labelled `checked_exhaustively = false`.
pub fn verify_axioms_sampled(op: &impl NaryOp, samples: usize, seed: u64) -> AxiomReport {
    let n = op.arity();
    let m = op.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport { associative: true, solvable: true, violations: Vec::new(), checked_exhaustively: false };
    let mut wide = vec![0; 2 * n - 1];
    let mut scratch = vec![0; n];
    'assoc: for _ in 0..samples {
        for slot in wide.iter_mut() {
            *slot = (rng.next_u64() % m as u64) as usize;
        }
        let first = inner_at(op, &wide, 0, &mut scratch);
        for i in 1..n {
            if inner_at(op, &wide, i, &mut scratch) != first {
                report.associative = false;
                report.violations.push(AxiomViolation::Associativity { args: wide.clone(), first: 1, second: i + 1 });
                break 'assoc;
            }
        }
    }
    if let Some(v) = find_unsolvable(op) {
        report.solvable = false;
        report.violations.push(v);
    }
    report
}
