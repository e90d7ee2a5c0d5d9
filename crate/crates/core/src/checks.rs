//! Named machine checks over a built family, consumed by the verification
//! command and by the acceptance suite. Each check returns a status with a
//! human-readable detail; failures carry a concrete counterexample.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::dyadic::Dyadic;
use crate::family::{
    enumerate_bruteforce, enumerate_patterns, shift_pattern, PatternFamily,
};
use crate::func::{fourier_transform, FunctionVector};
use crate::gf2::CircVector;
use crate::interval::Interval;
use crate::matrix::{
    alternating_chain_identity_holds, classify_fourier_entries, expansion_matches_reference,
    exponent_height_report, full_space_expansion, reference_expansion, ExpansionMatrix,
    FourierMatrix, IncidenceMatrix,
};
use crate::Result;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

pub struct CheckOutcome {
    pub status: CheckStatus,
    pub detail: String,
}

fn pass(detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome { status: CheckStatus::Pass, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome { status: CheckStatus::Fail, detail: detail.into() }
}

fn skip(detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome { status: CheckStatus::Skip, detail: detail.into() }
}

/// All check names accepted by the verification surface, in run order.
pub const CHECK_NAMES: &[&str] = &[
    "bijection",
    "p15",
    "bshift",
    "order",
    "thm24",
    "cor25",
    "chain-identity",
    "fourier",
    "conjecture34",
    "hypothesis36",
    "expansion",
    "rotation",
];

/// True iff the named check needs the three matrices.
pub fn needs_matrices(name: &str) -> bool {
    matches!(
        name,
        "thm24" | "chain-identity" | "fourier" | "conjecture34" | "hypothesis36" | "expansion"
            | "rotation"
    )
}

pub struct MatrixSet {
    pub incidence: IncidenceMatrix,
    pub expansion: ExpansionMatrix,
    pub fourier: FourierMatrix,
}

pub fn build_matrix_set(family: &PatternFamily) -> Result<MatrixSet> {
    let incidence = crate::matrix::incidence_matrix(family);
    let expansion = crate::matrix::expansion_matrix(family, &incidence)?;
    let fourier = crate::matrix::fourier_matrix(family, &incidence)?;
    Ok(MatrixSet { incidence, expansion, fourier })
}

/// Family size, parity bijectivity, and (at oracle scale) agreement of the
/// recursive enumeration with the direct search.
pub fn check_bijection(family: &PatternFamily) -> CheckOutcome {
    let d = family.dim();
    if family.len() != 1 << d {
        return fail(format!("family has {} members, expected {}", family.len(), 1u64 << d));
    }
    // the vector table is total and collision-free by construction; verify
    // surjectivity independently
    let mut hit = vec![false; 1 << d];
    for r in 0..family.len() {
        hit[family.parity_bits(r) as usize] = true;
    }
    if let Some(miss) = hit.iter().position(|h| !h) {
        return fail(format!("no pattern has parity vector with bits {miss:#x}"));
    }
    if d <= 8 {
        let brute = match enumerate_bruteforce(d) {
            Ok(b) => b,
            Err(e) => return fail(e.to_string()),
        };
        let rec = enumerate_patterns(d).expect("family was already built");
        if brute != rec {
            return fail("direct and recursive enumerations differ");
        }
        pass(format!(
            "2^{d} patterns, parity map bijective, direct search agrees"
        ))
    } else {
        pass(format!("2^{d} patterns, parity map bijective (direct search skipped above 8)"))
    }
}

/// The singleton-membership criterion through covering counts, both ways.
pub fn check_singleton_criterion(family: &PatternFamily) -> CheckOutcome {
    let m = family.dim() + 1;
    for b in family.patterns() {
        for i in 1..=m {
            let g = b.cover_count(i);
            let prev = b.cover_count(if i == 1 { m } else { i - 1 });
            let next = b.cover_count(if i == m { 1 } else { i + 1 });
            let criterion = g >= 1 && prev + 1 == g && next + 1 == g;
            let member = b.contains_arc(&Interval::new(m, i, 1));
            if member != criterion {
                return fail(format!("criterion fails for {b} at point {i}"));
            }
        }
    }
    pass(format!("both directions over {} patterns x {m} points", family.len()))
}

/// The shift move: stays in the family, moves the parity vector by `e_i`,
/// and obeys the size rule. The chain lemmas assert inside the move.
pub fn check_shift_law(family: &PatternFamily) -> CheckOutcome {
    let m = family.dim() + 1;
    let mut moves = 0usize;
    for b in family.patterns() {
        for i in 1..=m {
            if !b.contains_arc(&Interval::new(m, i, 1)) {
                continue;
            }
            match shift_pattern(b, i) {
                Ok(shifted) => {
                    if family.rank_of(&shifted).is_none() {
                        return fail(format!("shift of {b} at {i} left the family"));
                    }
                    moves += 1;
                }
                Err(e) => return fail(format!("shift of {b} at {i}: {e}")),
            }
        }
    }
    pass(format!("{moves} singleton moves verified"))
}

/// Order axioms: unique bottom, reflexivity, antisymmetry, and membership
/// of each parity vector in its own span.
pub fn check_order_axioms(family: &PatternFamily) -> CheckOutcome {
    let n = family.len();
    let bottom = family.linext()[0] as usize;
    if family.size_of(bottom) != 0 {
        return fail("minimum of the linear extension is not the empty pattern");
    }
    for b in 0..n {
        if !family.leq(bottom, b) {
            return fail(format!("empty pattern not below {}", family.label(b)));
        }
        if !family.leq(b, b) {
            return fail(format!("{} not reflexive", family.label(b)));
        }
        if !family.span_of(b).contains_bits(family.parity_bits(b)) {
            return fail(format!("parity of {} outside its span", family.label(b)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && family.leq(a, b) && family.leq(b, a) {
                return fail(format!(
                    "antisymmetry fails between {} and {}",
                    family.label(a),
                    family.label(b)
                ));
            }
        }
    }
    pass(format!("axioms hold over {n} patterns"))
}

/// Every nonzero entry of the expansion matrix relates a column pattern of
/// no larger size.
pub fn check_expansion_monotone(family: &PatternFamily, exp: &ExpansionMatrix) -> CheckOutcome {
    let mut nonzero = 0usize;
    for p in 0..exp.size() {
        let row_rank = family.linext()[p] as usize;
        for (q, _) in exp.row(p) {
            let col_rank = family.linext()[*q as usize] as usize;
            if family.size_of(col_rank) > family.size_of(row_rank) {
                return fail(format!(
                    "entry ({}, {}) grows in size",
                    family.label(row_rank),
                    family.label(col_rank)
                ));
            }
            nonzero += 1;
        }
    }
    pass(format!("{nonzero} nonzero entries, all size-monotone"))
}

/// Comparability implies a size inequality, exhaustively.
pub fn check_order_monotone(family: &PatternFamily) -> CheckOutcome {
    let n = family.len();
    let mut pairs = 0usize;
    for a in 0..n {
        for b in 0..n {
            if family.leq(a, b) {
                if family.size_of(a) > family.size_of(b) {
                    return fail(format!(
                        "{} <= {} but sizes decrease",
                        family.label(a),
                        family.label(b)
                    ));
                }
                pairs += 1;
            }
        }
    }
    pass(format!("{pairs} comparable pairs, all size-monotone"))
}

/// The alternating power-series identity between the incidence matrix and
/// the strict part of its inverse; guarded to small dimensions where the
/// dense accumulation is cheap.
pub fn check_chain_identity(
    family: &PatternFamily,
    inc: &IncidenceMatrix,
    exp: &ExpansionMatrix,
) -> CheckOutcome {
    if family.dim() > 6 {
        return skip("guarded to dimensions <= 6");
    }
    if alternating_chain_identity_holds(inc, exp) {
        pass("alternating chain sum reproduces the incidence matrix")
    } else {
        fail("alternating chain sum disagrees with the incidence matrix")
    }
}

/// Structural transform identities: the point-basis transform squares to
/// the identity, the indicator-basis matrix squares to the identity, and
/// the incidence matrix and its inverse multiply to the identity.
pub fn check_fourier_identities(family: &PatternFamily, set: &MatrixSet) -> CheckOutcome {
    let d = family.dim();
    // involution on the point basis
    if d <= 8 {
        for bits in 0..1u64 << d {
            let x = CircVector::from_bits(d, bits).expect("canonical");
            let f = FunctionVector::point_mass(d, &x).expect("valid dim");
            if fourier_transform(&fourier_transform(&f)) != f {
                return fail(format!("double transform moves the point mass at {x}"));
            }
        }
    } else {
        // spot-check on all indicators instead of all 2^D point masses
        for rank in 0..family.len() {
            let f = FunctionVector::indicator(family.span_of(rank)).expect("valid dim");
            if fourier_transform(&fourier_transform(&f)) != f {
                return fail(format!("double transform moves indicator {}", family.label(rank)));
            }
        }
    }
    // involution in the indicator basis
    let four = &set.fourier;
    for p in 0..four.size() {
        let mut acc: BTreeMap<u32, Dyadic> = BTreeMap::new();
        for (q, v) in four.row(p) {
            for (c, w) in four.row(*q as usize) {
                let slot = acc.entry(*c).or_insert_with(Dyadic::zero);
                *slot = &*slot + &(v * w);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        if acc.len() != 1 || acc.get(&(p as u32)) != Some(&Dyadic::one()) {
            return fail(format!(
                "square of the indicator-basis matrix is not the identity at row {}",
                family.label(family.linext()[p] as usize)
            ));
        }
    }
    // incidence times inverse
    for p in 0..set.incidence.size() {
        let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
        for q in set.incidence.row_ones(p) {
            for (c, v) in set.expansion.row(q) {
                *acc.entry(*c).or_insert_with(BigInt::zero) += v;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        if acc.len() != 1 || acc.get(&(p as u32)) != Some(&BigInt::one()) {
            return fail(format!("incidence times inverse misses the identity at row {p}"));
        }
    }
    // row sums of the empty-pattern row: sum of entries = 2^{-D/2}
    let sum = four
        .row(0)
        .iter()
        .fold(Dyadic::zero(), |acc, (_, v)| &acc + v);
    if sum != Dyadic::new(1, d / 2) {
        return fail(format!("empty-row entry sum is {sum}, expected 1/2^{}", d / 2));
    }
    pass("transform involutions, inverse identity and row-sum identity hold")
}

/// Every nonzero indicator-basis entry is a signed power `±2^{-t}`,
/// `t <= D/2`.
pub fn check_entry_powers(family: &PatternFamily, four: &FourierMatrix) -> CheckOutcome {
    let report = classify_fourier_entries(family, four);
    let histogram: Vec<String> =
        report.histogram.iter().map(|(t, c)| format!("t={t}:{c}")).collect();
    if report.pass {
        pass(format!("all entries signed powers; histogram {}", histogram.join(" ")))
    } else {
        let (r, c, v) = &report.violations[0];
        fail(format!(
            "entry ({}, {}) = {v} is not a signed power within range; histogram {}",
            family.label(*r),
            family.label(*c),
            histogram.join(" ")
        ))
    }
}

/// The report-only comparison of entry exponents against chain heights.
/// Never fails.
pub fn check_height_exponents(family: &PatternFamily, four: &FourierMatrix) -> CheckOutcome {
    let report = exponent_height_report(family, four);
    let signs: Vec<String> = report
        .signs_by_height
        .iter()
        .map(|(h, (p, n))| format!("k={h}:+{p}/-{n}"))
        .collect();
    pass(format!(
        "exponent = D/2 - height on {}/{} rows; signs by height {}",
        report.agree_count,
        report.rows.len(),
        signs.join(" ")
    ))
}

/// The rotation-orbit expansion of the constant-one function against the
/// reference tables, as multisets of (coefficient, orbit) pairs.
pub fn check_reference_expansion(family: &PatternFamily, four: &FourierMatrix) -> CheckOutcome {
    let expansion = match full_space_expansion(family, four) {
        Ok(e) => e,
        Err(e) => return fail(e.to_string()),
    };
    match reference_expansion(family.dim()) {
        Some(reference) => match expansion_matches_reference(family, &expansion, reference) {
            Ok(true) => pass(format!("matches reference: {expansion}")),
            Ok(false) => fail(format!("computed {expansion} differs from the reference")),
            Err(e) => fail(e.to_string()),
        },
        None => skip(format!("no reference table; computed {expansion}")),
    }
}

/// Conjugating the whole pipeline by the cyclic relabeling leaves the
/// parity map, the order and all three matrices invariant.
pub fn check_rotation_invariance(family: &PatternFamily, set: &MatrixSet) -> CheckOutcome {
    let n = family.len();
    let perm = family.rotation_permutation();
    for r in 0..n {
        if family.parity_of(perm[r] as usize) != family.parity_of(r).rotated() {
            return fail(format!("parity map does not commute at {}", family.label(r)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if family.leq(a, b) != family.leq(perm[a] as usize, perm[b] as usize) {
                return fail(format!(
                    "order not preserved on ({}, {})",
                    family.label(a),
                    family.label(b)
                ));
            }
        }
    }
    // matrices, compared through rank-indexed access
    let pos = |rank: usize| family.linext_pos(rank);
    for a in 0..n {
        for b in 0..n {
            let (pa, pb) = (pos(a), pos(b));
            let (qa, qb) = (pos(perm[a] as usize), pos(perm[b] as usize));
            if set.incidence.get(pa, pb) != set.incidence.get(qa, qb) {
                return fail(format!(
                    "incidence not rotation-invariant at ({}, {})",
                    family.label(a),
                    family.label(b)
                ));
            }
        }
    }
    for p in 0..n {
        let a = family.linext()[p] as usize;
        let qa = pos(perm[a] as usize);
        for (q, v) in set.expansion.row(p) {
            let b = family.linext()[*q as usize] as usize;
            if set.expansion.get(qa, pos(perm[b] as usize)) != *v {
                return fail(format!(
                    "inverse incidence not rotation-invariant at ({}, {})",
                    family.label(a),
                    family.label(b)
                ));
            }
        }
        for (q, v) in set.fourier.row(p) {
            let b = family.linext()[*q as usize] as usize;
            if set.fourier.get(qa, pos(perm[b] as usize)) != *v {
                return fail(format!(
                    "transform matrix not rotation-invariant at ({}, {})",
                    family.label(a),
                    family.label(b)
                ));
            }
        }
    }
    pass("parity map, order and all three matrices are rotation-invariant")
}

/// Runs one named check, assuming the matrices were built when the check
/// needs them.
pub fn run_named_check(
    name: &str,
    family: &PatternFamily,
    matrices: Option<&MatrixSet>,
) -> Option<CheckOutcome> {
    let outcome = match name {
        "bijection" => check_bijection(family),
        "p15" => check_singleton_criterion(family),
        "bshift" => check_shift_law(family),
        "order" => check_order_axioms(family),
        "thm24" => check_expansion_monotone(family, &matrices?.expansion),
        "cor25" => check_order_monotone(family),
        "chain-identity" => {
            let m = matrices?;
            check_chain_identity(family, &m.incidence, &m.expansion)
        }
        "fourier" => check_fourier_identities(family, matrices?),
        "conjecture34" => check_entry_powers(family, &matrices?.fourier),
        "hypothesis36" => check_height_exponents(family, &matrices?.fourier),
        "expansion" => check_reference_expansion(family, &matrices?.fourier),
        "rotation" => check_rotation_invariance(family, matrices?),
        _ => return None,
    };
    Some(outcome)
}
