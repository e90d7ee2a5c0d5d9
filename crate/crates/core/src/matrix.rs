//! Exact matrices over the pattern family, indexed by its linear
//! extension: the 0/1 incidence between subspace indicators and point
//! masses, its integer inverse, and the Fourier transform written in the
//! indicator basis, together with entry classification, the chain-height
//! exponent report, and the rotation-orbit expansion of the constant-one
//! function.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bits::BitMatrix;
use crate::dyadic::Dyadic;
use crate::family::PatternFamily;
use crate::func::wht_of_indicator;
use crate::gf2::adjacency_image;
use crate::{Error, Result};

/// 0/1 matrix with `entry[row][col] = 1` iff the parity vector of the
/// column pattern lies in the span of the row pattern. Unitriangular with
/// respect to the order; row `A` carries exactly `2^{|A|}` ones.
pub struct IncidenceMatrix {
    pub(crate) rows: BitMatrix,
}

impl IncidenceMatrix {
    pub fn size(&self) -> usize {
        self.rows.rows()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows.get(row, col)
    }

    pub fn row_ones(&self, row: usize) -> Vec<usize> {
        self.rows.row_ones(row).collect()
    }

    pub fn row_count_ones(&self, row: usize) -> usize {
        self.rows.row_count_ones(row)
    }
}

pub fn incidence_matrix(family: &PatternFamily) -> IncidenceMatrix {
    let n = family.len();
    let mut rows = BitMatrix::new(n, n);
    for row in 0..n {
        let rank = family.linext()[row] as usize;
        for point in family.span_of(rank).points() {
            let col = family.linext_pos(family.rank_of_vector_bits(point));
            rows.set(row, col);
        }
    }
    IncidenceMatrix { rows }
}

/// Integer matrix expressing each point mass in subspace indicators; the
/// exact inverse of the incidence matrix. Sparse rows sorted by column.
pub struct ExpansionMatrix {
    rows: Vec<Vec<(u32, BigInt)>>,
}

impl ExpansionMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, row: usize) -> &[(u32, BigInt)] {
        &self.rows[row]
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        match self.rows[row].binary_search_by_key(&(col as u32), |e| e.0) {
            Ok(i) => self.rows[row][i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }
}

pub fn expansion_matrix(family: &PatternFamily, inc: &IncidenceMatrix) -> Result<ExpansionMatrix> {
    let n = inc.size();
    let mut rows: Vec<Vec<(u32, BigInt)>> = Vec::with_capacity(n);
    for p in 0..n {
        let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
        acc.insert(p as u32, BigInt::one());
        for q in inc.rows.row_ones(p) {
            if q == p {
                continue;
            }
            for (c, v) in &rows[q] {
                let slot = acc.entry(*c).or_insert_with(BigInt::zero);
                *slot -= v;
            }
        }
        let row: Vec<(u32, BigInt)> =
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        match row.binary_search_by_key(&(p as u32), |e| e.0) {
            Ok(i) if row[i].1.is_one() => {}
            _ => {
                return Err(Error::ConstructionMismatch(format!(
                    "diagonal of the inverse is not 1 at {}",
                    family.label(family.linext()[p] as usize)
                )))
            }
        }
        rows.push(row);
    }
    Ok(ExpansionMatrix { rows })
}

/// The Fourier transform written in the indicator basis: sparse dyadic
/// rows, triangular against the order with strictly growing pattern size
/// off the diagonal and `±1` on it.
pub struct FourierMatrix {
    rows: Vec<Vec<(u32, Dyadic)>>,
}

impl FourierMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, row: usize) -> &[(u32, Dyadic)] {
        &self.rows[row]
    }

    pub fn get(&self, row: usize, col: usize) -> Dyadic {
        match self.rows[row].binary_search_by_key(&(col as u32), |e| e.0) {
            Ok(i) => self.rows[row][i].1.clone(),
            Err(_) => Dyadic::zero(),
        }
    }
}

pub fn fourier_matrix(family: &PatternFamily, inc: &IncidenceMatrix) -> Result<FourierMatrix> {
    let d = family.dim();
    let n = family.len();
    let size = 1usize << d;
    let mut rows: Vec<Vec<(u32, Dyadic)>> = Vec::with_capacity(n);
    for row in 0..n {
        let rank = family.linext()[row] as usize;
        let k = family.size_of(rank) as u32;
        let span = family.span_of(rank);
        // transform of the indicator, as integers scaled by 2^{D/2}
        let wht = wht_of_indicator(d, &span.points());

        // independent route: the transform must be 2^{|B|} on the perp of
        // the span (after scaling) and 0 elsewhere
        let perp = span.perp();
        let expect = BigInt::one() << k;
        for y in 0..size as u64 {
            let v = &wht[adjacency_image(y, d) as usize];
            let ok = if perp.contains_bits(y) { *v == expect } else { v.is_zero() };
            if !ok {
                return Err(Error::ConstructionMismatch(format!(
                    "transform of {} disagrees with its perp indicator at point {y}",
                    family.label(rank)
                )));
            }
        }

        // back-substitution against the incidence matrix, from the top of
        // the linear extension down
        let mut coeffs: Vec<(u32, Dyadic)> = Vec::new();
        for q in (0..n).rev() {
            let y = family.parity_bits(family.linext()[q] as usize);
            let mut c = Dyadic::new(wht[adjacency_image(y, d) as usize].clone(), d / 2);
            for (q2, c2) in &coeffs {
                if inc.get(*q2 as usize, q) {
                    c = &c - c2;
                }
            }
            if !c.is_zero() {
                coeffs.push((q as u32, c));
            }
        }
        coeffs.reverse();

        // triangularity and the unit diagonal
        let mut saw_diag = false;
        for (q, c) in &coeffs {
            let col_rank = family.linext()[*q as usize] as usize;
            if *q as usize == row {
                saw_diag = true;
                if c.signed_unit_power() != Some(0) {
                    return Err(Error::ConstructionMismatch(format!(
                        "diagonal entry {c} at {} is not a sign",
                        family.label(rank)
                    )));
                }
            } else if !(family.leq(rank, col_rank) && family.size_of(rank) < family.size_of(col_rank))
            {
                return Err(Error::ConstructionMismatch(format!(
                    "entry ({}, {}) breaks triangularity",
                    family.label(rank),
                    family.label(col_rank)
                )));
            }
        }
        if !saw_diag {
            return Err(Error::ConstructionMismatch(format!(
                "zero diagonal at {}",
                family.label(rank)
            )));
        }
        rows.push(coeffs);
    }
    Ok(FourierMatrix { rows })
}

/// Verifies the alternating-chain identity: with `r = I + N`, the
/// incidence matrix equals `sum_k (-1)^k N^k` entrywise.
pub fn alternating_chain_identity_holds(
    inc: &IncidenceMatrix,
    exp: &ExpansionMatrix,
) -> bool {
    let n = inc.size();
    // strict part of the expansion matrix
    let strict: Vec<Vec<(u32, BigInt)>> = (0..n)
        .map(|p| {
            exp.row(p)
                .iter()
                .filter(|(c, _)| *c as usize != p)
                .cloned()
                .collect()
        })
        .collect();
    // accumulate I - N + N^2 - ...
    let mut total: Vec<BTreeMap<u32, BigInt>> = (0..n)
        .map(|p| BTreeMap::from([(p as u32, BigInt::one())]))
        .collect();
    let mut term: Vec<Vec<(u32, BigInt)>> = (0..n)
        .map(|p| vec![(p as u32, BigInt::one())])
        .collect();
    let mut sign = -1;
    loop {
        // term <- term * N
        let mut next: Vec<Vec<(u32, BigInt)>> = Vec::with_capacity(n);
        let mut all_empty = true;
        for row in &term {
            let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
            for (mid, v) in row {
                for (c, w) in &strict[*mid as usize] {
                    let slot = acc.entry(*c).or_insert_with(BigInt::zero);
                    *slot += v * w;
                }
            }
            let r: Vec<(u32, BigInt)> =
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if !r.is_empty() {
                all_empty = false;
            }
            next.push(r);
        }
        if all_empty {
            break;
        }
        for (p, row) in next.iter().enumerate() {
            for (c, v) in row {
                let slot = total[p].entry(*c).or_insert_with(BigInt::zero);
                if sign > 0 {
                    *slot += v;
                } else {
                    *slot -= v;
                }
            }
        }
        term = next;
        sign = -sign;
    }
    for (p, row) in total.iter().enumerate() {
        for c in 0..n {
            let got = row.get(&(c as u32)).cloned().unwrap_or_else(BigInt::zero);
            let want = BigInt::from(u8::from(inc.get(p, c)));
            if got != want {
                return false;
            }
        }
    }
    true
}

/// Classification of the nonzero Fourier-matrix entries: every entry should
/// be a signed power `±2^{-t}` with `0 <= t <= D/2`. Violations are
/// findings, not errors.
pub struct EntryPowerReport {
    pub pass: bool,
    /// exponent -> count over all nonzero entries
    pub histogram: BTreeMap<u32, usize>,
    /// `(row rank, col rank, entry)` for entries outside the expected form
    pub violations: Vec<(usize, usize, Dyadic)>,
}

pub fn classify_fourier_entries(family: &PatternFamily, four: &FourierMatrix) -> EntryPowerReport {
    let half_dim = family.dim() / 2;
    let mut histogram = BTreeMap::new();
    let mut violations = Vec::new();
    for row in 0..four.size() {
        for (col, entry) in four.row(row) {
            match entry.signed_unit_power() {
                Some(t) if t <= half_dim => {
                    *histogram.entry(t).or_insert(0) += 1;
                }
                _ => violations.push((
                    family.linext()[row] as usize,
                    family.linext()[*col as usize] as usize,
                    entry.clone(),
                )),
            }
        }
    }
    EntryPowerReport { pass: violations.is_empty(), histogram, violations }
}

/// One row of the chain-height report: for a pattern with a nonzero entry
/// in the empty-pattern row, the entry's exponent against the predicted
/// value `D/2 - (longest ascending chain)`.
pub struct HeightExponentRow {
    pub rank: usize,
    pub entry: Dyadic,
    pub exponent: Option<u32>,
    pub height: usize,
    pub predicted: i64,
    pub agrees: bool,
}

pub struct HeightExponentReport {
    pub rows: Vec<HeightExponentRow>,
    pub agree_count: usize,
    /// height -> (positive entries, negative entries)
    pub signs_by_height: BTreeMap<usize, (usize, usize)>,
}

pub fn exponent_height_report(
    family: &PatternFamily,
    four: &FourierMatrix,
) -> HeightExponentReport {
    let empty_row = 0usize; // the empty pattern is the unique minimum
    debug_assert_eq!(family.size_of(family.linext()[empty_row] as usize), 0);
    let mut rows = Vec::new();
    let mut agree_count = 0;
    let mut signs_by_height: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (col, entry) in four.row(empty_row) {
        let rank = family.linext()[*col as usize] as usize;
        let height = family.chain_height(rank);
        let predicted = family.dim() as i64 / 2 - height as i64;
        let exponent = entry.signed_unit_power();
        let agrees = exponent.map(|t| t as i64 == predicted).unwrap_or(false);
        if agrees {
            agree_count += 1;
        }
        let slot = signs_by_height.entry(height).or_insert((0, 0));
        if entry.signum() > 0 {
            slot.0 += 1;
        } else {
            slot.1 += 1;
        }
        rows.push(HeightExponentRow { rank, entry: entry.clone(), exponent, height, predicted, agrees });
    }
    HeightExponentReport { rows, agree_count, signs_by_height }
}

/// A term of the rotation-orbit expansion: `coefficient` times the sum of
/// indicators over the orbit of the vector with support `representative`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTerm {
    pub coefficient: Dyadic,
    pub representative: Vec<u32>,
    pub orbit_size: usize,
}

pub struct OrbitExpansion {
    pub dim: u32,
    pub terms: Vec<OrbitTerm>,
}

impl OrbitExpansion {
    fn label_of(rep: &[u32], dim: u32) -> String {
        if rep.is_empty() {
            return "[-]".into();
        }
        let parts: Vec<String> = rep.iter().map(|i| i.to_string()).collect();
        if dim + 1 <= 9 {
            format!("[{}]", parts.join(""))
        } else {
            format!("[{}]", parts.join(" "))
        }
    }
}

impl std::fmt::Display for OrbitExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, term) in self.terms.iter().enumerate() {
            let mag = term.coefficient.abs();
            if term.coefficient.signum() < 0 {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            if mag != Dyadic::one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{}", Self::label_of(&term.representative, self.dim))?;
        }
        Ok(())
    }
}

/// Canonical representative of the rotation class of the vector with the
/// given canonical bits.
///
/// Every vector of the class is `e_J` for exactly two subsets `J` of the
/// cycle (a set and its complement, since the circular vectors sum to
/// zero); the representative is the smallest such `J` over the whole
/// class, ordered by size and then lexicographically.
pub fn orbit_class_rep(family: &PatternFamily, bits: u64) -> Vec<u32> {
    let d = family.dim();
    let mut v = crate::gf2::CircVector::from_bits(d, bits).expect("canonical bits");
    let mut best: Option<Vec<u32>> = None;
    let mut consider = |s: Vec<u32>| {
        let better = match &best {
            None => true,
            Some(b) => (s.len(), &s) < (b.len(), b),
        };
        if better {
            best = Some(s);
        }
    };
    for _ in 0..d + 1 {
        let sup = v.support();
        let co: Vec<u32> = (1..=d + 1).filter(|i| !sup.contains(i)).collect();
        consider(sup);
        consider(co);
        v = v.rotated();
    }
    best.unwrap()
}

/// Expansion of the constant-one function (the full-space indicator) into
/// rotation orbits of indicator sums, scaled so the leading coefficients
/// are integers whenever the entry exponents stay within `D/2`.
pub fn full_space_expansion(
    family: &PatternFamily,
    four: &FourierMatrix,
) -> Result<OrbitExpansion> {
    let d = family.dim();
    let n = family.len();
    // coefficient per pattern rank: 2^{D/2} times the empty-row entry
    let mut coeff: Vec<Dyadic> = vec![Dyadic::zero(); n];
    for (col, entry) in four.row(0) {
        let rank = family.linext()[*col as usize] as usize;
        coeff[rank] = entry.mul_pow2(d as i32 / 2);
    }

    let perm = family.rotation_permutation();
    let mut seen = vec![false; n];
    let mut terms = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut r = start;
        loop {
            seen[r] = true;
            orbit.push(r);
            r = perm[r] as usize;
            if r == start {
                break;
            }
        }
        let c = coeff[start].clone();
        for &r in &orbit {
            if coeff[r] != c {
                return Err(Error::ConstructionMismatch(format!(
                    "coefficient not constant on the rotation orbit of {}",
                    family.label(start)
                )));
            }
        }
        if c.is_zero() {
            continue;
        }
        let rep = orbit_class_rep(family, family.parity_bits(start));
        terms.push(OrbitTerm { coefficient: c, representative: rep, orbit_size: orbit.len() });
    }
    terms.sort_by(|a, b| {
        b.representative
            .len()
            .cmp(&a.representative.len())
            .then_with(|| a.representative.cmp(&b.representative))
    });
    Ok(OrbitExpansion { dim: d, terms })
}

/// Reference expansions for small dimensions, as `(coefficient, support)`
/// pairs; the support names one subset of the cycle whose rotation orbit
/// the term sums over.
pub fn reference_expansion(dim: u32) -> Option<&'static [(i64, &'static [u32])]> {
    const D2: &[(i64, &[u32])] = &[(1, &[1]), (-2, &[])];
    const D4: &[(i64, &[u32])] = &[(1, &[1, 2, 3]), (-4, &[])];
    const D6: &[(i64, &[u32])] = &[
        (1, &[1, 2, 4, 5]),
        (1, &[1, 2, 3, 5]),
        (1, &[1, 2, 3, 6]),
        (-2, &[1, 2, 3]),
        (-2, &[1, 3, 5]),
        (4, &[1, 3]),
        (-4, &[1]),
        (8, &[]),
    ];
    const D8: &[(i64, &[u32])] = &[
        (1, &[1, 2, 4, 6]),
        (1, &[1, 2, 3, 4, 6, 7]),
        (1, &[1, 2, 4, 5, 6, 7]),
        (-2, &[1, 2, 3, 4, 5, 6, 7]),
        (2, &[1, 2, 3, 4, 5, 7]),
        (2, &[1, 3, 4, 5, 6, 7]),
        (2, &[1, 2, 3, 5, 6, 7]),
        (-2, &[1, 3, 4, 5, 7]),
        (-2, &[1, 2, 3, 5, 7]),
        (-2, &[1, 3, 5, 6, 7]),
        (-4, &[1, 2, 3, 4, 5]),
        (4, &[1, 2, 3, 5]),
        (4, &[1, 2, 3, 8]),
        (4, &[1, 4, 7]),
        (-8, &[1, 2, 3]),
        (8, &[1, 3]),
        (-8, &[1, 4]),
        (16, &[]),
    ];
    match dim {
        2 => Some(D2),
        4 => Some(D4),
        6 => Some(D6),
        8 => Some(D8),
        _ => None,
    }
}

/// Compares a computed expansion against a reference list as multisets of
/// `(coefficient, orbit class)` pairs.
pub fn expansion_matches_reference(
    family: &PatternFamily,
    expansion: &OrbitExpansion,
    reference: &[(i64, &[u32])],
) -> Result<bool> {
    let mut got: Vec<(Vec<u32>, Dyadic)> = expansion
        .terms
        .iter()
        .map(|t| (t.representative.clone(), t.coefficient.clone()))
        .collect();
    let mut want: Vec<(Vec<u32>, Dyadic)> = Vec::new();
    for (c, subset) in reference {
        let v = crate::gf2::CircVector::from_subset(family.dim(), subset)?;
        want.push((orbit_class_rep(family, v.bits()), Dyadic::from_int(*c)));
    }
    let key = |e: &(Vec<u32>, Dyadic)| (e.0.clone(), e.1.numerator().clone(), e.1.exponent());
    got.sort_by_key(key);
    want.sort_by_key(key);
    Ok(got == want)
}

// ---------------------------------------------------------------------
// exports

pub enum MatrixData<'a> {
    Incidence(&'a IncidenceMatrix),
    Expansion(&'a ExpansionMatrix),
    Fourier(&'a FourierMatrix),
}

impl<'a> MatrixData<'a> {
    fn size(&self) -> usize {
        match self {
            MatrixData::Incidence(m) => m.size(),
            MatrixData::Expansion(m) => m.size(),
            MatrixData::Fourier(m) => m.size(),
        }
    }

    /// Entries of one row as `(col, numerator, exponent)`, ascending by
    /// column; zero entries omitted.
    fn row_entries(&self, row: usize) -> Vec<(usize, BigInt, u32)> {
        match self {
            MatrixData::Incidence(m) => m
                .rows
                .row_ones(row)
                .map(|c| (c, BigInt::one(), 0))
                .collect(),
            MatrixData::Expansion(m) => m
                .row(row)
                .iter()
                .map(|(c, v)| (*c as usize, v.clone(), 0))
                .collect(),
            MatrixData::Fourier(m) => m
                .row(row)
                .iter()
                .map(|(c, v)| (*c as usize, v.numerator().clone(), v.exponent()))
                .collect(),
        }
    }
}

fn entry_text(num: &BigInt, exp: u32) -> String {
    if exp == 0 {
        num.to_string()
    } else {
        format!("{num}/2^{exp}")
    }
}

/// Dense CSV grid with quoted pattern labels on the first row and column.
/// Integer entries print plain; dyadic entries as `p/2^t`.
pub fn matrix_csv(family: &PatternFamily, data: MatrixData) -> String {
    let n = data.size();
    let label = |q: usize| format!("\"{}\"", family.label(family.linext()[q] as usize));
    let mut out = String::new();
    out.push_str("\"\"");
    for q in 0..n {
        out.push(',');
        out.push_str(&label(q));
    }
    out.push('\n');
    for row in 0..n {
        out.push_str(&label(row));
        let entries = data.row_entries(row);
        let mut next = entries.iter().peekable();
        for col in 0..n {
            out.push(',');
            match next.peek() {
                Some((c, num, exp)) if *c == col => {
                    out.push_str(&entry_text(num, *exp));
                    next.next();
                }
                _ => out.push('0'),
            }
        }
        out.push('\n');
    }
    out
}

/// Sparse JSON object `{dim, order, entries}` where `entries` holds
/// `[row, col, numerator, exponent]` quadruples in row-major order, with
/// the numerator as a decimal string.
pub fn matrix_json(family: &PatternFamily, data: MatrixData) -> String {
    let n = data.size();
    let order: Vec<String> = (0..n)
        .map(|q| family.label(family.linext()[q] as usize).to_string())
        .collect();
    let mut entries = Vec::new();
    for row in 0..n {
        for (col, num, exp) in data.row_entries(row) {
            entries.push(serde_json::json!([row, col, num.to_string(), exp]));
        }
    }
    serde_json::json!({
        "dim": family.dim(),
        "order": order,
        "entries": entries,
    })
    .to_string()
}
