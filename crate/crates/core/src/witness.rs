//! Constructive existence of covers with profiles `[e_i, 1, ..., 1]`.
//!
//! The Riemann-Hurwitz condition for such data reads
//! `sum e_i = 2(g - 1 + d) + n`. Whenever it holds with `g >= 0` we build an
//! explicit monodromy tuple: cycles `s_1, ..., s_n` in `Sym(d)` with
//! `length(s_i) = e_i`, product `s_n * ... * s_1 = id`, and a transitive
//! generated group.
//!
//! The construction recurses on the degree. Each step lowers some orders by
//! one, solves the smaller problem in `Sym(d-1)` and lifts the answer back by
//! augmenting pairs of cycles (see [`crate::augment`]). Two recursions are
//! used:
//!
//! * [`construct_k1`] handles data where some `e_i = d`: every full-length
//!   index (padded by one more index when their number is odd) is lowered and
//!   the cycles are augmented two at a time.
//! * [`construct_k2`] handles everything else: one order `>= 3` and a neighbour
//!   are lowered together until a base case or the first recursion applies.
//!
//! The tuple product is taken right to left (`s_1` acts first). Reversing a
//! tuple turns `s_n * ... * s_1 = id` into `s_1 * ... * s_n = id`, so either
//! convention describes the same covers.

use crate::augment::{augment_pairs, PairChoice};
use crate::error::{Error, Result};
use crate::perm::{common_moved_point, is_transitive, product, Cycle, Permutation};

/// Genus from `sum e_i = 2(g - 1 + d) + n`. May be negative.
pub fn rh_genus(degree: usize, orders: &[usize]) -> Result<i64> {
    if degree < 2 {
        return Err(Error::OutOfScope(format!("degree {degree} < 2")));
    }
    check_orders(degree, orders)?;
    let excess = orders.iter().sum::<usize>() as i64 - orders.len() as i64;
    if excess % 2 != 0 {
        return Err(Error::ParityError(excess));
    }
    Ok(excess / 2 - degree as i64 + 1)
}

fn check_orders(degree: usize, orders: &[usize]) -> Result<()> {
    match orders.iter().find(|&&e| e < 2 || e > degree) {
        Some(&order) => Err(Error::InvalidOrder { order, degree }),
        None => Ok(()),
    }
}

/// `(d, n)`-admissibility: `2 <= e_i <= d`, and `sum e_i - n` is even and at
/// least `2(d - 1)`. Equivalent to [`rh_genus`] succeeding with `g >= 0`.
pub fn is_admissible(degree: usize, orders: &[usize]) -> Result<bool> {
    if degree < 2 || orders.len() < 2 {
        return Err(Error::OutOfScope(format!(
            "admissibility needs d >= 2 and n >= 2 (got d = {degree}, n = {})",
            orders.len()
        )));
    }
    if check_orders(degree, orders).is_err() {
        return Ok(false);
    }
    let excess = orders.iter().sum::<usize>() - orders.len();
    Ok(excess.is_multiple_of(2) && excess >= 2 * (degree - 1))
}

/// Some order equals the degree, or all orders are 2.
pub fn is_extremal(degree: usize, orders: &[usize]) -> bool {
    orders.contains(&degree) || orders.iter().all(|&e| e == 2)
}

/// Degree, ramification orders and the genus they force (if the parity works out).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationData {
    degree: usize,
    orders: Vec<usize>,
    genus: Option<i64>,
}

impl RamificationData {
    pub fn new(degree: usize, orders: Vec<usize>) -> Result<Self> {
        if degree < 2 {
            return Err(Error::OutOfScope(format!("degree {degree} < 2")));
        }
        if orders.is_empty() {
            return Err(Error::OutOfScope("no branch points".into()));
        }
        let genus = match rh_genus(degree, &orders) {
            Ok(g) => Some(g),
            Err(Error::ParityError(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(RamificationData {
            degree,
            orders,
            genus,
        })
    }

    /// Replace the derived genus with a claimed one, e.g. read from a record.
    pub fn with_genus(mut self, genus: Option<i64>) -> Self {
        self.genus = genus;
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn n(&self) -> usize {
        self.orders.len()
    }

    pub fn genus(&self) -> Option<i64> {
        self.genus
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    /// `length(s_i) = e_i`
    Lengths,
    /// `s_n * ... * s_1 = id`
    Product,
    Transitive,
    /// Genus recomputed from the cycle lengths matches the claimed genus.
    Genus,
    /// Neighbouring cycles share a moved point (strict mode only).
    Consecutive,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Lengths => "lengths",
            CheckKind::Product => "product",
            CheckKind::Transitive => "transitive",
            CheckKind::Genus => "genus",
            CheckKind::Consecutive => "consecutive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn checks(&self) -> &[CheckResult] {
        &self.checks
    }

    /// True if at least one check ran and every check passed.
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, kind: CheckKind) -> Option<bool> {
        self.checks.iter().find(|c| c.kind == kind).map(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, kind: CheckKind, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            kind,
            passed,
            detail: detail.into(),
        });
    }
}

/// A tuple of cycles of one degree, with the report of its last verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTuple {
    degree: usize,
    cycles: Vec<Cycle>,
    report: VerificationReport,
}

impl WitnessTuple {
    /// Unverified tuple; the report stays empty until [`WitnessTuple::certify`].
    pub fn new(degree: usize, cycles: Vec<Cycle>) -> Result<Self> {
        if let Some(c) = cycles.iter().find(|c| c.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: c.degree(),
            });
        }
        Ok(WitnessTuple {
            degree,
            cycles,
            report: VerificationReport::default(),
        })
    }

    /// Run [`verify_witness`] and keep its report.
    pub fn certify(mut self, data: &RamificationData, strict: bool) -> Self {
        self.report = verify_witness(&self, data, strict);
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn report(&self) -> &VerificationReport {
        &self.report
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Cycle::len).collect()
    }

    pub fn permutations(&self) -> Vec<Permutation> {
        self.cycles.iter().map(Cycle::to_permutation).collect()
    }

    /// Same tuple conjugated by `tau`, entry by entry.
    pub fn conjugate_by(&self, tau: &Permutation) -> Result<WitnessTuple> {
        let cycles = self
            .cycles
            .iter()
            .map(|c| {
                let p = c.to_permutation().conjugate_by(tau)?;
                Cycle::try_from_permutation(&p)
            })
            .collect::<Result<Vec<_>>>()?;
        WitnessTuple::new(self.degree, cycles)
    }
}

/// Check a tuple against ramification data. Failures are reported, not raised.
pub fn verify_witness(tuple: &WitnessTuple, data: &RamificationData, strict: bool) -> VerificationReport {
    let mut report = VerificationReport::default();
    let d = tuple.degree;
    let degree_ok = d == data.degree;

    let lengths = tuple.lengths();
    let lengths_ok = degree_ok && lengths == data.orders;
    report.push(
        CheckKind::Lengths,
        lengths_ok,
        if lengths_ok {
            "lengths match orders".to_string()
        } else if !degree_ok {
            format!("tuple degree {d} differs from data degree {}", data.degree)
        } else {
            format!("lengths {lengths:?} differ from orders {:?}", data.orders)
        },
    );

    let perms = tuple.permutations();
    let prod = product(&perms, d).expect("cycles share the tuple degree");
    report.push(
        CheckKind::Product,
        degree_ok && prod.is_identity(),
        format!("product is {prod}"),
    );

    let transitive = degree_ok && is_transitive(&perms, d).expect("cycles share the tuple degree");
    report.push(
        CheckKind::Transitive,
        transitive,
        if transitive { "transitive" } else { "not transitive" },
    );

    let ramification: usize = lengths.iter().map(|l| l - 1).sum();
    let genus_ok;
    let detail;
    if !ramification.is_multiple_of(2) {
        genus_ok = false;
        detail = format!("total ramification {ramification} is odd");
    } else {
        let g = (ramification / 2) as i64 - d as i64 + 1;
        genus_ok = degree_ok && data.genus == Some(g);
        detail = format!("recomputed genus {g}, claimed {:?}", data.genus);
    }
    report.push(CheckKind::Genus, genus_ok, detail);

    if strict {
        let bad = tuple
            .cycles
            .windows(2)
            .position(|w| common_moved_point(&w[0], &w[1]).is_none());
        report.push(
            CheckKind::Consecutive,
            bad.is_none(),
            match bad {
                None => "neighbouring cycles overlap".to_string(),
                Some(i) => format!("cycles {} and {} are disjoint", i + 1, i + 2),
            },
        );
    }
    report
}

/// How a recursion step lowered the orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionKind {
    /// All full-length indices are lowered, plus `padding` when their count is odd.
    Simultaneous {
        full_length: Vec<usize>,
        padding: Option<usize>,
    },
    /// A pivot with order `>= 3` and one neighbour are lowered.
    Pivot { pivot: usize, neighbour: usize },
}

/// One step from data in degree `d` to data in degree `d - 1`. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub degree: usize,
    pub kind: ReductionKind,
    /// Indices whose order drops by one, ascending. Always of even size.
    pub lowered: Vec<usize>,
    /// The lowered index whose order reached 1, if any.
    pub dropped: Option<usize>,
    /// Surviving indices, ascending.
    pub kept: Vec<usize>,
    /// Orders of the surviving indices in degree `d - 1`.
    pub reduced_orders: Vec<usize>,
}

impl ReductionStep {
    fn from_lowered(degree: usize, orders: &[usize], kind: ReductionKind, mut lowered: Vec<usize>) -> Self {
        lowered.sort_unstable();
        let mut reduced: Vec<usize> = orders.to_vec();
        for &i in &lowered {
            reduced[i] -= 1;
        }
        let dropped = lowered.iter().copied().find(|&i| reduced[i] == 1);
        let kept: Vec<usize> = (0..orders.len()).filter(|&i| reduced[i] >= 2).collect();
        let reduced_orders = kept.iter().map(|&i| reduced[i]).collect();
        ReductionStep {
            degree,
            kind,
            lowered,
            dropped,
            kept,
            reduced_orders,
        }
    }
}

/// Step of the full-length recursion. Expects some `e_i = d` and the data not
/// already in a base case.
pub fn simultaneous_reduction(degree: usize, orders: &[usize]) -> ReductionStep {
    let full_length: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] == degree).collect();
    let mut lowered = full_length.clone();
    let padding = if full_length.len() % 2 == 1 {
        let xi = (0..orders.len())
            .find(|&i| orders[i] != degree)
            .expect("some order below the degree");
        lowered.push(xi);
        Some(xi)
    } else {
        None
    };
    ReductionStep::from_lowered(
        degree,
        orders,
        ReductionKind::Simultaneous {
            full_length,
            padding,
        },
        lowered,
    )
}

/// Step of the pivot recursion: the first order `>= 3` and its right neighbour
/// (left neighbour for the last index).
pub fn pivot_reduction(degree: usize, orders: &[usize]) -> ReductionStep {
    let n = orders.len();
    let pivot = orders
        .iter()
        .position(|&e| e >= 3)
        .expect("some order of at least 3");
    let neighbour = if pivot + 1 < n { pivot + 1 } else { pivot - 1 };
    ReductionStep::from_lowered(
        degree,
        orders,
        ReductionKind::Pivot { pivot, neighbour },
        vec![pivot, neighbour],
    )
}

/// Cycles of length `e_i` with product `s_n * ... * s_1 = id` and neighbouring
/// cycles overlapping, for admissible data with some `e_i = d`.
pub fn construct_k1(degree: usize, orders: &[usize]) -> Result<WitnessTuple> {
    if degree < 2 || orders.len() < 2 {
        return Err(Error::NotApplicable(format!(
            "needs d >= 2 and n >= 2 (got d = {degree}, n = {})",
            orders.len()
        )));
    }
    if let Err(e) = check_orders(degree, orders) {
        return Err(Error::NotApplicable(e.to_string()));
    }
    if !orders.contains(&degree) {
        return Err(Error::NotApplicable(format!("no order equals the degree {degree}")));
    }
    let excess = orders.iter().sum::<usize>() - orders.len();
    if !excess.is_multiple_of(2) {
        return Err(Error::NotApplicable(format!("sum of orders minus n is odd ({excess})")));
    }
    // Parity alone is not enough: (d, 2) with d even, or (5, 2, 2), have no
    // solution at all. Admissible data always does.
    if excess < 2 * (degree - 1) {
        return Err(Error::NotApplicable(format!(
            "sum of orders minus n is {excess} < {}, no such tuple exists",
            2 * (degree - 1)
        )));
    }
    let cycles = k1_cycles(degree, orders)?;
    finish(degree, orders, cycles)
}

/// Cycles of length `e_i` with product the identity, transitive, and
/// neighbouring cycles overlapping, for any admissible data.
pub fn construct_k2(degree: usize, orders: &[usize]) -> Result<WitnessTuple> {
    if !is_admissible(degree, orders).unwrap_or(false) {
        return Err(Error::NotAdmissible {
            degree,
            orders: orders.to_vec(),
        });
    }
    let cycles = k2_cycles(degree, orders)?;
    finish(degree, orders, cycles)
}

/// Genus and a verified monodromy tuple for the data, or the reason none exists.
pub fn construct_witness(degree: usize, orders: &[usize]) -> Result<(i64, WitnessTuple)> {
    if degree < 2 {
        return Err(Error::OutOfScope(format!("degree {degree} < 2")));
    }
    check_orders(degree, orders)?;
    match orders.len() {
        0 => return Err(Error::OutOfScope("no branch points".into())),
        1 => return Err(Error::Vacuous),
        _ => {}
    }
    let genus = rh_genus(degree, orders)?;
    if genus < 0 {
        return Err(Error::NegativeGenus(genus));
    }
    let witness = construct_k2(degree, orders)?;
    Ok((genus, witness))
}

fn finish(degree: usize, orders: &[usize], cycles: Vec<Cycle>) -> Result<WitnessTuple> {
    let data = RamificationData::new(degree, orders.to_vec())?;
    let witness = WitnessTuple::new(degree, cycles)?.certify(&data, true);
    if !witness.report().passed() {
        let reasons: Vec<String> = witness
            .report()
            .failures()
            .map(|c| format!("{}: {}", c.kind.name(), c.detail))
            .collect();
        return Err(Error::ConstructionBug(format!(
            "d = {degree}, orders {orders:?}: {}",
            reasons.join("; ")
        )));
    }
    Ok(witness)
}

fn bug(msg: String) -> Error {
    Error::ConstructionBug(msg)
}

// (1 2 ... d), its inverse, alternating; for odd n the last inverse is split
// into two copies of its square root.
fn full_cycle_chain(degree: usize, n: usize) -> Result<Vec<Cycle>> {
    let c = Cycle::standard(degree);
    let c_inv = c.inverse();
    let even = n - n % 2;
    let mut out: Vec<Cycle> = (0..even)
        .map(|i| if i % 2 == 0 { c.clone() } else { c_inv.clone() })
        .collect();
    if n % 2 == 1 {
        if degree.is_multiple_of(2) || n < 3 {
            return Err(bug(format!("odd chain of {n} full cycles in even degree {degree}")));
        }
        let last = out.pop().expect("n >= 3").to_permutation();
        let root = Cycle::try_from_permutation(&last.pow((degree as u64).div_ceil(2)))?;
        out.push(root.clone());
        out.push(root);
    }
    Ok(out)
}

// (1 2), (2 3), ..., (d-1 d), (d-1 d), ..., (1 2), then (1 2) repeated.
fn transposition_chain(degree: usize, n: usize) -> Result<Vec<Cycle>> {
    let chain = 2 * (degree - 1);
    if n < chain || !(n - chain).is_multiple_of(2) {
        return Err(bug(format!("{n} transpositions cannot close a chain in degree {degree}")));
    }
    let up = (1..degree).map(|j| Cycle::from_support_unchecked(degree, vec![j, j + 1]));
    let mut out: Vec<Cycle> = up.collect();
    let down: Vec<Cycle> = out.iter().rev().cloned().collect();
    out.extend(down);
    out.resize(n, Cycle::from_support_unchecked(degree, vec![1, 2]));
    Ok(out)
}

// Lift the solution on the kept indices back to all n positions, identity at
// the dropped one.
fn embed(sub: Vec<Cycle>, step: &ReductionStep, n: usize) -> Vec<Cycle> {
    let mut full = vec![Cycle::identity(step.degree - 1); n];
    for (cycle, &i) in sub.into_iter().zip(&step.kept) {
        full[i] = cycle;
    }
    full
}

fn smallest_moved(c: &Cycle) -> Option<usize> {
    c.support().iter().copied().min()
}

fn k1_cycles(degree: usize, orders: &[usize]) -> Result<Vec<Cycle>> {
    let n = orders.len();
    if orders.iter().all(|&e| e == 2) {
        // only reachable with degree 2
        return Ok(vec![Cycle::standard(degree); n]);
    }
    if orders.iter().all(|&e| e == degree) {
        return full_cycle_chain(degree, n);
    }

    let step = simultaneous_reduction(degree, orders);
    let sub = k1_cycles(degree - 1, &step.reduced_orders)?;
    let full = embed(sub, &step, n);

    // Anchor for the padding index if it became the identity: a point moved
    // by both of its neighbours, so the new transposition overlaps each.
    let padding_anchor = match step.dropped {
        None => None,
        Some(xi) => {
            let point = if xi == 0 {
                smallest_moved(&full[1])
            } else if xi == n - 1 {
                smallest_moved(&full[n - 2])
            } else {
                common_moved_point(&full[xi - 1], &full[xi + 1])
            };
            Some((xi, point.ok_or_else(|| bug(format!("no anchor for padding index {xi}")))?))
        }
    };

    let mut pairs = Vec::with_capacity(step.lowered.len() / 2);
    for pair in step.lowered.chunks(2) {
        let (lower, upper) = (pair[0], pair[1]);
        let x = match padding_anchor {
            Some((xi, c)) if xi == upper => Some(c),
            Some((xi, c)) if xi == lower => {
                // the lower cycle is opened at alpha^-1(x), so x = alpha(c)
                let alpha = crate::augment::pair_conjugator(&full, lower, upper)?;
                Some(alpha.apply(c))
            }
            _ => None,
        };
        pairs.push(PairChoice::new(lower, upper, x));
    }
    augment_pairs(&full, &pairs).map_err(|e| bug(format!("lifting to degree {degree}: {e}")))
}

fn k2_cycles(degree: usize, orders: &[usize]) -> Result<Vec<Cycle>> {
    let n = orders.len();
    if orders.iter().all(|&e| e == 2) {
        return transposition_chain(degree, n);
    }
    if orders.contains(&degree) {
        return k1_cycles(degree, orders);
    }

    let step = pivot_reduction(degree, orders);
    let (pivot, neighbour) = match step.kind {
        ReductionKind::Pivot { pivot, neighbour } => (pivot, neighbour),
        ReductionKind::Simultaneous { .. } => unreachable!("pivot_reduction"),
    };
    let sub = k2_cycles(degree - 1, &step.reduced_orders)?;
    let full = embed(sub, &step, n);

    // Neighbours share a moved point unless the neighbour vanished; then
    // anchor on a point the pivot shares with the cycle beyond it.
    let x = if step.dropped.is_some() {
        let point = if neighbour == 0 || neighbour == n - 1 {
            smallest_moved(&full[pivot])
        } else if neighbour == pivot + 1 {
            common_moved_point(&full[pivot], &full[pivot + 2])
        } else {
            common_moved_point(&full[pivot - 2], &full[pivot])
        };
        Some(point.ok_or_else(|| bug(format!("no anchor for pivot {pivot}")))?)
    } else {
        None
    };
    let pair = PairChoice::new(pivot.min(neighbour), pivot.max(neighbour), x);
    augment_pairs(&full, &[pair]).map_err(|e| bug(format!("lifting to degree {degree}: {e}")))
}
