//! Arc combinatorics on the `(D+1)`-cycle: odd intervals, the nesting and
//! separation relations, split points, covering counts and the parity
//! vector of a pattern, plus the two admissibility conditions that carve
//! out the pattern family.
//!
//! Points of the cycle are labeled `1..=D+1`. An interval is a nonempty
//! proper arc of cyclically consecutive points, canonically identified by
//! its start and length, so equality of element sets is equality of the
//! `(start, len)` pair.

use crate::gf2::{CircVector, Gf2Subspace};
use crate::{Error, Result};

#[inline]
fn reduce1(a: i64, modulus: u32) -> u32 {
    ((a - 1).rem_euclid(modulus as i64) + 1) as u32
}

/// A nonempty proper arc on the cycle `Z/(D+1)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Interval {
    modulus: u32,
    start: u32,
    len: u32,
}

impl Interval {
    /// # Panics
    /// If `len` is not in `[1, modulus - 1]` or `modulus < 3`.
    pub fn new(modulus: u32, start: u32, len: u32) -> Self {
        assert!(modulus >= 3, "cycle needs at least 3 points");
        assert!(
            (1..modulus).contains(&len),
            "arc length {len} out of range [1, {}]",
            modulus - 1
        );
        Interval { modulus, start: reduce1(start as i64, modulus), len }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn end(&self) -> u32 {
        reduce1(self.start as i64 + self.len as i64 - 1, self.modulus)
    }

    pub fn is_odd(&self) -> bool {
        self.len % 2 == 1
    }

    pub fn contains(&self, point: u32) -> bool {
        debug_assert!((1..=self.modulus).contains(&point));
        (point as i64 - self.start as i64).rem_euclid(self.modulus as i64) < self.len as i64
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        assert_eq!(self.modulus, other.modulus, "arcs on different cycles");
        let off = (other.start as i64 - self.start as i64).rem_euclid(self.modulus as i64) as u32;
        off + other.len <= self.len
    }

    pub fn points(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len).map(move |k| reduce1(self.start as i64 + k as i64, self.modulus))
    }

    /// Strict interior containment: `self` is a proper subset of `outer`
    /// sharing neither boundary, so the difference is two nonempty arcs.
    pub fn is_nested_in(&self, outer: &Interval) -> bool {
        assert_eq!(self.modulus, outer.modulus, "arcs on different cycles");
        debug_assert!(self.is_odd() && outer.is_odd());
        let off = (self.start as i64 - outer.start as i64).rem_euclid(self.modulus as i64) as u32;
        off >= 1 && off + self.len < outer.len
    }

    /// Disjoint with at least one point of the cycle strictly between the
    /// two arcs on both sides, so the union is not an arc.
    pub fn is_separated_from(&self, other: &Interval) -> bool {
        assert_eq!(self.modulus, other.modulus, "arcs on different cycles");
        debug_assert!(self.is_odd() && other.is_odd());
        let m = self.modulus as i64;
        let disjoint = !self.contains(other.start) && !other.contains(self.start);
        if !disjoint {
            return false;
        }
        let gap_a = (other.start as i64 - self.start as i64 - self.len as i64).rem_euclid(m);
        let gap_b = (self.start as i64 - other.start as i64 - other.len as i64).rem_euclid(m);
        gap_a >= 1 && gap_b >= 1
    }

    /// Points whose removal splits the arc into two separated odd arcs.
    ///
    /// There are exactly `(len - 1) / 2` of them: the interior points at odd
    /// offset from the start (cross-checked against this closed form in
    /// tests).
    pub fn split_points(&self) -> Vec<u32> {
        assert!(self.is_odd(), "split points are defined for odd arcs");
        let mut out = Vec::new();
        for p in 1..self.len.saturating_sub(1) {
            let left = Interval::new(self.modulus, self.start, p);
            let right = Interval::new(
                self.modulus,
                reduce1(self.start as i64 + p as i64 + 1, self.modulus),
                self.len - p - 1,
            );
            if left.is_odd() && right.is_odd() && left.is_separated_from(&right) {
                out.push(reduce1(self.start as i64 + p as i64, self.modulus));
            }
        }
        out
    }

    /// The characteristic vector `e_I` of the arc.
    pub fn char_vector(&self) -> CircVector {
        let pts: Vec<u32> = self.points().collect();
        CircVector::from_subset(self.modulus - 1, &pts).expect("arc points are in range")
    }

    /// The arc shifted by one step around the cycle.
    pub fn rotated(&self) -> Interval {
        Interval::new(self.modulus, reduce1(self.start as i64 + 1, self.modulus), self.len)
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.start, self.end())
    }
}

/// A finite set of distinct odd arcs on the `(D+1)`-cycle, kept sorted by
/// `(start, len)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern {
    dim: u32,
    arcs: Vec<Interval>,
}

impl Pattern {
    pub fn empty(dim: u32) -> Self {
        Pattern { dim, arcs: Vec::new() }
    }

    pub fn new(dim: u32, mut arcs: Vec<Interval>) -> Result<Self> {
        crate::gf2::check_dim(dim)?;
        for a in &arcs {
            if a.modulus() != dim + 1 {
                return Err(Error::Precondition(format!(
                    "arc {a} lives on a {}-cycle, pattern needs {}",
                    a.modulus(),
                    dim + 1
                )));
            }
            if !a.is_odd() {
                return Err(Error::Precondition(format!("arc {a} has even length")));
            }
        }
        arcs.sort_unstable();
        if arcs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("repeated arc in pattern".into()));
        }
        Ok(Pattern { dim, arcs })
    }

    /// Convenience constructor from `(start, len)` pairs.
    pub fn from_specs(dim: u32, specs: &[(u32, u32)]) -> Result<Self> {
        let arcs = specs.iter().map(|&(s, l)| Interval::new(dim + 1, s, l)).collect();
        Pattern::new(dim, arcs)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn arcs(&self) -> &[Interval] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains_arc(&self, arc: &Interval) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    /// Number of arcs covering the point `i`.
    pub fn cover_count(&self, i: u32) -> usize {
        assert!(
            (1..=self.dim + 1).contains(&i),
            "point {i} out of range [1, {}]",
            self.dim + 1
        );
        self.arcs.iter().filter(|a| a.contains(i)).count()
    }

    /// The vector whose coordinate at `e_i` is the parity of the triangular
    /// number `g_i (g_i + 1) / 2` of the covering count `g_i`, summed over
    /// all `D+1` cycle points.
    pub fn parity_vector(&self) -> CircVector {
        let odd: Vec<u32> = (1..=self.dim + 1)
            .filter(|&i| {
                let g = self.cover_count(i) % 4;
                g == 1 || g == 2
            })
            .collect();
        CircVector::from_subset(self.dim, &odd).expect("points are in range")
    }

    /// First admissibility condition: every pair of distinct arcs is either
    /// nested (one way) or separated.
    pub fn pairwise_admissible(&self) -> bool {
        for (i, a) in self.arcs.iter().enumerate() {
            for b in &self.arcs[i + 1..] {
                if !(a.is_separated_from(b) || a.is_nested_in(b) || b.is_nested_in(a)) {
                    return false;
                }
            }
        }
        true
    }

    /// Second admissibility condition: for every arc, its split points are
    /// covered by pairwise-disjoint member arcs nested in it.
    ///
    /// Uses the fact that under the first condition any such cover can be
    /// coarsened to the inclusion-maximal nested members, which are
    /// automatically pairwise separated; the equivalence with the
    /// exhaustive cover search is property-tested.
    ///
    /// # Panics
    /// If the pattern fails `pairwise_admissible` (that condition must be
    /// checked first).
    pub fn interiors_covered(&self) -> bool {
        assert!(self.pairwise_admissible(), "pairwise admissibility is a precondition");
        for outer in &self.arcs {
            let nested: Vec<&Interval> =
                self.arcs.iter().filter(|a| a.is_nested_in(outer)).collect();
            let maximal: Vec<&&Interval> = nested
                .iter()
                .filter(|a| !nested.iter().any(|b| a.is_nested_in(b)))
                .collect();
            for p in outer.split_points() {
                if !maximal.iter().any(|a| a.contains(p)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_admissible(&self) -> bool {
        self.pairwise_admissible() && self.interiors_covered()
    }

    /// The subspace spanned by the characteristic vectors of the arcs.
    pub fn span(&self) -> Gf2Subspace {
        let vecs: Vec<CircVector> = self.arcs.iter().map(|a| a.char_vector()).collect();
        Gf2Subspace::span(self.dim, &vecs)
    }

    /// The pattern rotated one step around the cycle.
    pub fn rotated(&self) -> Pattern {
        let arcs = self.arcs.iter().map(|a| a.rotated()).collect();
        Pattern::new(self.dim, arcs).expect("rotation preserves validity")
    }

    /// Canonical text form, e.g. `{1..1, 4..1}`; the empty pattern prints
    /// as `{}`. This is the label grammar used by all exports.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, a) in self.arcs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(m: u32, s: u32, l: u32) -> Interval {
        Interval::new(m, s, l)
    }

    #[test]
    fn interval_canonical_form() {
        let wrap = arc(5, 4, 3);
        assert_eq!(wrap.points().collect::<Vec<_>>(), vec![4, 5, 1]);
        assert_eq!(wrap.end(), 1);
        assert_eq!(wrap.to_string(), "4..1");
        assert_eq!(arc(5, 6, 1), arc(5, 1, 1));
        assert!(wrap.contains(5) && wrap.contains(1) && !wrap.contains(2));
    }

    #[test]
    fn nesting_examples() {
        // D = 4, cycle of 5 points
        assert!(arc(5, 2, 1).is_nested_in(&arc(5, 1, 3)));
        assert!(!arc(5, 1, 1).is_nested_in(&arc(5, 1, 3)));
        assert!(!arc(5, 1, 3).is_nested_in(&arc(5, 1, 3)));
        // wrapping outer arc
        assert!(arc(5, 5, 1).is_nested_in(&arc(5, 4, 3)));
    }

    #[test]
    fn separation_examples() {
        assert!(arc(5, 1, 1).is_separated_from(&arc(5, 3, 1)));
        assert!(!arc(5, 1, 1).is_separated_from(&arc(5, 2, 1)));
        assert!(!arc(5, 2, 1).is_separated_from(&arc(5, 1, 3)));
        // mod 3, any two distinct singletons are cyclically adjacent
        assert!(!arc(3, 1, 1).is_separated_from(&arc(3, 2, 1)));
        assert!(!arc(3, 1, 1).is_separated_from(&arc(3, 3, 1)));
    }

    #[test]
    fn split_point_examples() {
        assert!(arc(5, 2, 1).split_points().is_empty());
        assert_eq!(arc(5, 1, 3).split_points(), vec![2]);
        assert_eq!(arc(7, 6, 5).split_points(), vec![7, 2]);
    }

    #[test]
    fn split_points_match_closed_form_up_to_d10() {
        for d in [2u32, 4, 6, 8, 10] {
            let m = d + 1;
            for start in 1..=m {
                for len in (1..=d).step_by(2) {
                    let a = arc(m, start, len);
                    let s = a.split_points();
                    assert_eq!(s.len() as u32, (len - 1) / 2, "size law for {a}");
                    let closed: Vec<u32> = (1..len.saturating_sub(1))
                        .filter(|p| p % 2 == 1)
                        .map(|p| ((start as i64 + p as i64 - 1).rem_euclid(m as i64) + 1) as u32)
                        .collect();
                    assert_eq!(s, closed, "closed form for {a}");
                }
            }
        }
    }

    #[test]
    fn cover_count_examples() {
        let b = Pattern::from_specs(4, &[(2, 1), (1, 3)]).unwrap();
        assert_eq!(Pattern::empty(4).cover_count(3), 0);
        assert_eq!(b.cover_count(2), 2);
        assert_eq!(b.cover_count(4), 0);
    }

    #[test]
    fn parity_vector_examples() {
        assert!(Pattern::empty(4).parity_vector().is_zero());
        for i in 1..=5 {
            let b = Pattern::from_specs(4, &[(i, 1)]).unwrap();
            assert_eq!(b.parity_vector(), CircVector::basis(4, i).unwrap());
        }
        // covering counts (1,2,1,0,0) give parities (1,1,1,0,0)
        let b = Pattern::from_specs(4, &[(2, 1), (1, 3)]).unwrap();
        assert_eq!(b.parity_vector(), CircVector::from_subset(4, &[1, 2, 3]).unwrap());
    }

    #[test]
    fn parity_vector_hand_oracle_d4() {
        // recompute through the definition, point by point
        let b = Pattern::from_specs(4, &[(2, 1), (1, 3)]).unwrap();
        let mut acc = CircVector::zero(4).unwrap();
        for i in 1..=5u32 {
            let g = b.cover_count(i) as u64;
            if (g * (g + 1) / 2) % 2 == 1 {
                acc = acc + CircVector::basis(4, i).unwrap();
            }
        }
        assert_eq!(b.parity_vector(), acc);
    }

    #[test]
    fn pairwise_admissible_examples() {
        assert!(Pattern::empty(4).pairwise_admissible());
        assert!(!Pattern::from_specs(4, &[(1, 1), (2, 1)]).unwrap().pairwise_admissible());
        assert!(Pattern::from_specs(4, &[(1, 1), (3, 1)]).unwrap().pairwise_admissible());
    }

    #[test]
    fn interiors_covered_examples() {
        assert!(!Pattern::from_specs(4, &[(1, 3)]).unwrap().interiors_covered());
        assert!(Pattern::from_specs(4, &[(2, 1), (1, 3)]).unwrap().interiors_covered());
        for i in 1..=5 {
            assert!(Pattern::from_specs(4, &[(i, 1)]).unwrap().is_admissible());
        }
    }

    #[test]
    fn span_examples() {
        assert_eq!(Pattern::empty(4).span().rank(), 0);
        let s = Pattern::from_specs(4, &[(1, 1)]).unwrap().span();
        assert_eq!(s.rank(), 1);
        assert!(s.contains(&CircVector::basis(4, 1).unwrap()));
    }

    #[test]
    fn pattern_validation() {
        assert!(Pattern::from_specs(4, &[(1, 2)]).is_err());
        assert!(Pattern::from_specs(4, &[(1, 1), (1, 1)]).is_err());
        let cross_modulus = vec![Interval::new(7, 1, 1)];
        assert!(Pattern::new(4, cross_modulus).is_err());
    }

    #[test]
    fn label_grammar() {
        assert_eq!(Pattern::empty(4).label(), "{}");
        let b = Pattern::from_specs(4, &[(4, 3), (1, 1)]).unwrap();
        assert_eq!(b.label(), "{1..1, 4..1}");
    }
}
