//! The family of admissible patterns over `V_D`: two independent
//! enumerations (direct search and dimension recursion), the bijection with
//! `V_D` through parity vectors, the singleton shift move, the partial
//! order generated by "parity vector lies in the span", and chain
//! statistics on that order.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeMap};

use crate::bits::BitMatrix;
use crate::func::FunctionVector;
use crate::gf2::{check_dim, CircVector, Gf2Subspace};
use crate::interval::{Interval, Pattern};
use crate::{Error, Result};

#[inline]
fn reduce1(a: i64, modulus: u32) -> u32 {
    ((a - 1).rem_euclid(modulus as i64) + 1) as u32
}

/// All patterns satisfying the first admissibility condition, found by
/// depth-first search over odd arcs in canonical order with pairwise
/// pruning.
pub(crate) fn pairwise_admissible_patterns(dim: u32) -> Vec<Pattern> {
    let m = dim + 1;
    let mut arcs = Vec::new();
    for start in 1..=m {
        for len in (1..=dim).step_by(2) {
            arcs.push(Interval::new(m, start, len));
        }
    }
    arcs.sort_unstable();

    let mut out = Vec::new();
    let mut chosen: Vec<Interval> = Vec::new();
    fn rec(dim: u32, arcs: &[Interval], from: usize, chosen: &mut Vec<Interval>, out: &mut Vec<Pattern>) {
        out.push(Pattern::new(dim, chosen.clone()).expect("search respects validity"));
        for idx in from..arcs.len() {
            let cand = arcs[idx];
            let ok = chosen.iter().all(|a| {
                a.is_separated_from(&cand) || a.is_nested_in(&cand) || cand.is_nested_in(a)
            });
            if ok {
                chosen.push(cand);
                rec(dim, arcs, idx + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(dim, &arcs, 0, &mut chosen, &mut out);
    out
}

/// Direct enumeration of the admissible family by exhaustive search.
/// Intended as the independent oracle at small scale.
pub fn enumerate_bruteforce(dim: u32) -> Result<Vec<Pattern>> {
    check_dim(dim)?;
    if dim > 8 {
        return Err(Error::ScaleGuard { what: "direct enumeration", max: 8, got: dim });
    }
    let mut out: Vec<Pattern> = pairwise_admissible_patterns(dim)
        .into_iter()
        .filter(|b| b.interiors_covered())
        .collect();
    out.sort_unstable_by_key(|b| b.label());
    Ok(out)
}

/// The injective linear map `V_{D-2} -> V_D` that expands the cycle point
/// carrying position `j` into the three points `j-1, j, j+1`.
///
/// It is compatible with the form, and its image is a complement of the
/// line through `e_j` inside the perp of `e_j`.
pub fn embed_vector(j: u32, x: &CircVector) -> Result<CircVector> {
    let ds = x.dim();
    let d = ds + 2;
    if j < 1 || j > d + 1 {
        return Err(Error::IndexOutOfRange { index: j, max: d + 1 });
    }
    let full = (1u64 << d) - 1;
    let bit = |i: u32| -> u64 {
        if i == d + 1 {
            full
        } else {
            1 << (i - 1)
        }
    };
    let mut acc = 0u64;
    for p in x.support() {
        acc ^= if j == 1 {
            bit(p + 2)
        } else if j == d + 1 {
            if p == 1 {
                bit(d) ^ full ^ bit(1)
            } else {
                bit(p)
            }
        } else if p <= j - 2 {
            bit(p)
        } else if p == j - 1 {
            bit(j - 1) ^ bit(j) ^ bit(j + 1)
        } else {
            bit(p + 2)
        };
    }
    CircVector::from_bits(d, acc)
}

/// Linear extension of the embedding to functions: a point mass at `x`
/// maps to the sum of point masses at the embedded point and its translate
/// by `e_j`.
pub fn embed_function(j: u32, f: &FunctionVector) -> Result<FunctionVector> {
    let ds = f.dim();
    let d = ds + 2;
    let ej = CircVector::basis(d, j).map_err(|_| Error::IndexOutOfRange { index: j, max: d + 1 })?;
    let mut out = FunctionVector::zero(d)?;
    for bits in 0..1u64 << ds {
        let c = f.value_at_bits(bits);
        if c.is_zero() {
            continue;
        }
        let t = embed_vector(j, &CircVector::from_bits(ds, bits)?)?;
        out.add_at_bits(t.bits(), c);
        out.add_at_bits(t.bits() ^ ej.bits(), c);
    }
    Ok(out)
}

/// Combinatorial companion of [`embed_vector`] on patterns: stretch the
/// small cycle into the large one by expanding one point into three, map
/// every arc through the stretch, and adjoin the singleton `{j}`.
///
/// The defining property is the span identity
/// `span(result) = embed(span(input)) + F e_j`; it is asserted at runtime
/// together with admissibility of the result, and any failure reports a
/// construction mismatch rather than a user error.
pub fn embed_pattern(j: u32, b: &Pattern) -> Result<Pattern> {
    let ds = b.dim();
    let d = ds + 2;
    let ms = ds + 1;
    let m = d + 1;
    if j < 1 || j > m {
        return Err(Error::IndexOutOfRange { index: j, max: m });
    }
    // the small-cycle point that expands into {j-1, j, j+1}
    let pstar = reduce1(j as i64 - 1, ms);
    let mut arcs = vec![Interval::new(m, j, 1)];
    for a in b.arcs() {
        let off = (a.start() as i64 - pstar as i64).rem_euclid(ms as i64) as u32;
        let img = if off == 0 {
            Interval::new(m, reduce1(j as i64 - 1, m), a.len() + 2)
        } else {
            let wraps = off + a.len() > ms;
            let start = reduce1(j as i64 + 1 + off as i64, m);
            Interval::new(m, start, if wraps { a.len() + 2 } else { a.len() })
        };
        arcs.push(img);
    }
    let result = Pattern::new(d, arcs)
        .map_err(|e| Error::ConstructionMismatch(format!("stretched arcs invalid: {e}")))?;

    if result.len() != b.len() + 1 {
        return Err(Error::ConstructionMismatch("stretch collapsed arcs".into()));
    }
    if !result.pairwise_admissible() || !result.interiors_covered() {
        return Err(Error::ConstructionMismatch(format!(
            "embedded pattern {result} is not admissible"
        )));
    }
    // span identity, computed through the vector embedding as a second route
    let mut gens: Vec<CircVector> = Vec::with_capacity(b.len() + 1);
    for a in b.arcs() {
        gens.push(embed_vector(j, &a.char_vector())?);
    }
    gens.push(CircVector::basis(d, j)?);
    if result.span() != Gf2Subspace::span(d, &gens) {
        return Err(Error::ConstructionMismatch(format!(
            "span identity fails for j={j}, input {b}"
        )));
    }
    Ok(result)
}

/// The shift move at a singleton: with the arcs through `i` arranged as a
/// nesting chain `{i} = I_1 ⊂ I_2 ⊂ ...`, either removes `{i}` (chain of
/// length one) or replaces `I_1, I_2` by the two halves of `I_2 - {i}`.
/// The parity vector moves by exactly `e_i`.
pub fn shift_pattern(b: &Pattern, i: u32) -> Result<Pattern> {
    let d = b.dim();
    let m = d + 1;
    if i < 1 || i > m {
        return Err(Error::IndexOutOfRange { index: i, max: m });
    }
    if !b.is_admissible() {
        return Err(Error::Precondition(format!("{b} is not an admissible pattern")));
    }
    let singleton = Interval::new(m, i, 1);
    if !b.contains_arc(&singleton) {
        return Err(Error::Precondition(format!("{{{i}}} is not an arc of {b}")));
    }

    let mut chain: Vec<Interval> = b.arcs().iter().copied().filter(|a| a.contains(i)).collect();
    chain.sort_unstable_by_key(|a| a.len());
    let mismatch = |msg: String| Error::ConstructionMismatch(msg);
    if chain[0] != singleton {
        return Err(mismatch("smallest covering arc is not the singleton".into()));
    }
    for w in chain.windows(2) {
        if !w[0].is_nested_in(&w[1]) {
            return Err(mismatch(format!("arcs through {i} do not form a chain in {b}")));
        }
    }

    let mut arcs: Vec<Interval> = b.arcs().to_vec();
    if chain.len() == 1 {
        arcs.retain(|a| *a != singleton);
    } else {
        let outer = chain[1];
        if !outer.split_points().contains(&i) {
            return Err(mismatch(format!("{i} is not a split point of {outer}")));
        }
        if chain.len() >= 3 && chain[2].split_points().contains(&i) {
            return Err(mismatch(format!("{i} is a split point of {}", chain[2])));
        }
        let off = (i as i64 - outer.start() as i64).rem_euclid(m as i64) as u32;
        let left = Interval::new(m, outer.start(), off);
        let right = Interval::new(m, reduce1(i as i64 + 1, m), outer.len() - off - 1);
        if b.contains_arc(&left) || b.contains_arc(&right) {
            return Err(mismatch("split halves already present".into()));
        }
        arcs.retain(|a| *a != singleton && *a != outer);
        arcs.push(left);
        arcs.push(right);
    }
    let result = Pattern::new(d, arcs)?;

    let expected_len = if chain.len() == 1 { b.len() - 1 } else { b.len() };
    if result.len() != expected_len {
        return Err(mismatch("size rule violated".into()));
    }
    if !result.is_admissible() {
        return Err(mismatch(format!("shift of {b} at {i} left the family")));
    }
    let shifted = b.parity_vector() + CircVector::basis(d, i)?;
    if result.parity_vector() != shifted {
        return Err(mismatch(format!("parity vector did not move by e_{i}")));
    }
    Ok(result)
}

/// Recursive enumeration of the admissible family: the base dimension 2
/// has the empty pattern and the three singletons; above that, every
/// non-empty member arises (with repetition) as an embedded pattern.
pub fn enumerate_patterns(dim: u32) -> Result<Vec<Pattern>> {
    check_dim(dim)?;
    if dim > 24 {
        return Err(Error::ScaleGuard { what: "family enumeration", max: 24, got: dim });
    }
    if dim == 2 {
        let mut out = vec![Pattern::empty(2)];
        for i in 1..=3 {
            out.push(Pattern::from_specs(2, &[(i, 1)])?);
        }
        out.sort_unstable_by_key(|b| b.label());
        return Ok(out);
    }
    let prev = enumerate_patterns(dim - 2)?;
    let mut seen: BTreeMap<String, Pattern> = BTreeMap::new();
    let empty = Pattern::empty(dim);
    seen.insert(empty.label(), empty);
    for j in 1..=dim + 1 {
        for b in &prev {
            let t = embed_pattern(j, b)?;
            seen.insert(t.label(), t);
        }
    }
    if seen.len() != 1 << dim {
        return Err(Error::ConstructionMismatch(format!(
            "family at dimension {dim} has {} members, expected {}",
            seen.len(),
            1u64 << dim
        )));
    }
    Ok(seen.into_values().collect())
}

/// The fully built family: patterns in canonical label order, the parity
/// bijection tables, the partial order closure, a deterministic linear
/// extension, and chain statistics.
pub struct PatternFamily {
    dim: u32,
    patterns: Vec<Pattern>,
    labels: Vec<String>,
    sizes: Vec<u32>,
    spans: Vec<Gf2Subspace>,
    parity_bits: Vec<u64>,
    rank_by_vector: Vec<u32>,
    leq_rows: BitMatrix, // row b = down-set of b
    geq_rows: BitMatrix, // row b = up-set of b
    linext: Vec<u32>,
    pos: Vec<u32>,
    depth: Vec<u32>,
    height: Vec<u32>,
}

impl PatternFamily {
    pub fn build(dim: u32) -> Result<Self> {
        let patterns = enumerate_patterns(dim)?;
        let n = patterns.len();
        let labels: Vec<String> = patterns.iter().map(|p| p.label()).collect();
        let sizes: Vec<u32> = patterns.iter().map(|p| p.len() as u32).collect();
        let spans: Vec<Gf2Subspace> = patterns.iter().map(|p| p.span()).collect();

        for (p, s) in patterns.iter().zip(&spans) {
            if s.rank() != p.len() {
                return Err(Error::ConstructionMismatch(format!(
                    "arc vectors of {p} are dependent"
                )));
            }
        }

        let mut parity_bits = vec![0u64; n];
        let mut rank_by_vector = vec![u32::MAX; 1 << dim];
        for (r, p) in patterns.iter().enumerate() {
            let bits = p.parity_vector().bits();
            if rank_by_vector[bits as usize] != u32::MAX {
                return Err(Error::ConstructionMismatch(format!(
                    "parity collision between {} and {}",
                    patterns[rank_by_vector[bits as usize] as usize], p
                )));
            }
            parity_bits[r] = bits;
            rank_by_vector[bits as usize] = r as u32;
        }

        // base relation: a -> b iff parity(a) lies in span(b)
        let mut base_down: Vec<Vec<u32>> = Vec::with_capacity(n);
        for (b, span) in spans.iter().enumerate() {
            let mut below: Vec<u32> =
                span.points().iter().map(|&p| rank_by_vector[p as usize]).collect();
            below.sort_unstable();
            if !below.contains(&(b as u32)) {
                return Err(Error::ConstructionMismatch(format!(
                    "parity vector of {} is outside its span",
                    patterns[b]
                )));
            }
            base_down.push(below);
        }
        let mut out_edges: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut indeg: Vec<u32> = vec![0; n];
        for (b, below) in base_down.iter().enumerate() {
            for &p in below {
                if p as usize != b {
                    out_edges[p as usize].push(b as u32);
                    indeg[b] += 1;
                }
            }
        }

        // Kahn with deterministic tie-breaking builds the closure and the
        // linear extension in one pass; a stuck queue means a cycle, i.e.
        // the relation would not be antisymmetric.
        let mut leq_rows = BitMatrix::new(n, n);
        let mut linext: Vec<u32> = Vec::with_capacity(n);
        let mut heap: BinaryHeap<Reverse<(u32, String, u32)>> = BinaryHeap::new();
        for b in 0..n {
            if indeg[b] == 0 {
                heap.push(Reverse((sizes[b], labels[b].clone(), b as u32)));
            }
        }
        while let Some(Reverse((_, _, b))) = heap.pop() {
            let b = b as usize;
            linext.push(b as u32);
            leq_rows.set(b, b);
            for &p in &base_down[b] {
                leq_rows.or_rows(b, p as usize);
            }
            for &t in &out_edges[b] {
                indeg[t as usize] -= 1;
                if indeg[t as usize] == 0 {
                    heap.push(Reverse((sizes[t as usize], labels[t as usize].clone(), t)));
                }
            }
        }
        if linext.len() != n {
            return Err(Error::ConstructionMismatch(
                "order relation is not antisymmetric".into(),
            ));
        }
        let mut pos = vec![0u32; n];
        for (q, &r) in linext.iter().enumerate() {
            pos[r as usize] = q as u32;
        }
        let geq_rows = leq_rows.transpose();

        // longest chain from the bottom / to the top, over the closed order
        let mut depth = vec![0u32; n];
        for &b in &linext {
            let b = b as usize;
            let mut best = 0;
            for p in leq_rows.row_ones(b) {
                if p != b {
                    best = best.max(depth[p] + 1);
                }
            }
            depth[b] = best;
        }
        let mut height = vec![0u32; n];
        for &b in linext.iter().rev() {
            let b = b as usize;
            let mut best = 0;
            for q in geq_rows.row_ones(b) {
                if q != b {
                    best = best.max(height[q] + 1);
                }
            }
            height[b] = best;
        }

        Ok(PatternFamily {
            dim,
            patterns,
            labels,
            sizes,
            spans,
            parity_bits,
            rank_by_vector,
            leq_rows,
            geq_rows,
            linext,
            pos,
            depth,
            height,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn pattern(&self, rank: usize) -> &Pattern {
        &self.patterns[rank]
    }

    pub fn label(&self, rank: usize) -> &str {
        &self.labels[rank]
    }

    pub fn size_of(&self, rank: usize) -> usize {
        self.sizes[rank] as usize
    }

    pub fn span_of(&self, rank: usize) -> &Gf2Subspace {
        &self.spans[rank]
    }

    pub fn rank_of(&self, pattern: &Pattern) -> Option<usize> {
        let label = pattern.label();
        self.labels.binary_search(&label).ok()
    }

    pub fn parity_bits(&self, rank: usize) -> u64 {
        self.parity_bits[rank]
    }

    pub fn parity_of(&self, rank: usize) -> CircVector {
        CircVector::from_bits(self.dim, self.parity_bits[rank]).expect("stored bits are canonical")
    }

    /// Rank of the unique pattern whose parity vector is `x`.
    pub fn rank_of_vector(&self, x: &CircVector) -> usize {
        assert_eq!(x.dim(), self.dim);
        self.rank_by_vector[x.bits() as usize] as usize
    }

    pub fn rank_of_vector_bits(&self, bits: u64) -> usize {
        self.rank_by_vector[bits as usize] as usize
    }

    /// The partial order: true iff `a <= b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq_rows.get(b, a)
    }

    /// Deterministic linear extension: position -> rank.
    pub fn linext(&self) -> &[u32] {
        &self.linext
    }

    /// Position of a rank in the linear extension.
    pub fn linext_pos(&self, rank: usize) -> usize {
        self.pos[rank] as usize
    }

    /// Length of the longest strict chain from the empty pattern up to the
    /// pattern of `x`.
    pub fn chain_depth_of_vector(&self, x: &CircVector) -> usize {
        self.depth[self.rank_of_vector(x)] as usize
    }

    pub fn chain_depth(&self, rank: usize) -> usize {
        self.depth[rank] as usize
    }

    /// Length of the longest strict chain ascending from the pattern.
    pub fn chain_height(&self, rank: usize) -> usize {
        self.height[rank] as usize
    }

    /// The permutation induced by the cyclic relabeling `i -> i+1`.
    pub fn rotation_permutation(&self) -> Vec<u32> {
        self.patterns
            .iter()
            .map(|p| {
                self.rank_of(&p.rotated())
                    .expect("rotation permutes the family") as u32
            })
            .collect()
    }

    /// Covering relations `(lower, upper)` of the order, by rank.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for b in 0..n {
            for a in self.leq_rows.row_ones(b) {
                if a == b {
                    continue;
                }
                // a < b is a cover iff only a and b lie in [a, b]
                if self.leq_rows.intersection_count(b, &self.geq_rows, a) == 2 {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Hasse diagram in DOT format, nodes carrying the pattern label and
    /// its parity vector.
    pub fn hasse_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for &r in &self.linext {
            let r = r as usize;
            s.push_str(&format!(
                "  n{} [label=\"{}\\neps={}\"];\n",
                r,
                self.labels[r],
                self.parity_of(r)
            ));
        }
        for (a, b) in self.covers() {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Checks that recursive and direct enumeration agree as sets.
pub fn enumerations_agree(dim: u32) -> Result<bool> {
    let brute = enumerate_bruteforce(dim)?;
    let rec = enumerate_patterns(dim)?;
    Ok(brute == rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn bruteforce_d2() {
        let fam = enumerate_bruteforce(2).unwrap();
        let expect: HashSet<String> =
            ["{}", "{1..1}", "{2..2}", "{3..3}"].iter().map(|s| s.to_string()).collect();
        let got: HashSet<String> = fam.iter().map(|p| p.label()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn bruteforce_d4_counts() {
        let fam = enumerate_bruteforce(4).unwrap();
        assert_eq!(fam.len(), 16);
        let mut by_size = [0usize; 3];
        for p in &fam {
            by_size[p.len()] += 1;
        }
        assert_eq!(by_size, [1, 5, 10]);
        for p in &fam {
            assert_eq!(p.span().rank(), p.len(), "independent arc vectors for {p}");
            assert!(p.span().is_isotropic(), "{p} spans an isotropic subspace");
        }
    }

    #[test]
    fn second_condition_fast_path_matches_exhaustive_cover_search() {
        // exhaustive search over subcollections, the definitional reading
        fn covered_exhaustive(b: &Pattern) -> bool {
            'outer_loop: for outer in b.arcs() {
                let split = outer.split_points();
                if split.is_empty() {
                    continue;
                }
                let nested: Vec<&Interval> =
                    b.arcs().iter().filter(|a| a.is_nested_in(outer)).collect();
                let k = nested.len();
                for mask in 0u32..1 << k {
                    let sel: Vec<&&Interval> =
                        nested.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| a).collect();
                    let disjoint = sel.iter().enumerate().all(|(i, a)| {
                        sel[i + 1..].iter().all(|c| {
                            a.points().all(|p| !c.contains(p))
                        })
                    });
                    if disjoint && split.iter().all(|&p| sel.iter().any(|a| a.contains(p))) {
                        continue 'outer_loop;
                    }
                }
                return false;
            }
            true
        }
        for d in [2u32, 4, 6] {
            for b in pairwise_admissible_patterns(d) {
                assert_eq!(b.interiors_covered(), covered_exhaustive(&b), "pattern {b} at D={d}");
            }
        }
    }

    #[test]
    fn embed_vector_examples() {
        let zero = CircVector::zero(2).unwrap();
        for j in 1..=5 {
            assert!(embed_vector(j, &zero).unwrap().is_zero());
        }
        let e1 = CircVector::basis(2, 1).unwrap();
        assert_eq!(
            embed_vector(2, &e1).unwrap(),
            CircVector::from_subset(4, &[1, 2, 3]).unwrap()
        );
        assert!(embed_vector(6, &e1).is_err());
    }

    #[test]
    fn embed_vector_preserves_form() {
        for d_small in [2u32, 4] {
            let d = d_small + 2;
            for j in 1..=d + 1 {
                for xb in 0..1u64 << d_small {
                    let x = CircVector::from_bits(d_small, xb).unwrap();
                    for yb in 0..1u64 << d_small {
                        let y = CircVector::from_bits(d_small, yb).unwrap();
                        assert_eq!(
                            x.form(&y),
                            embed_vector(j, &x).unwrap().form(&embed_vector(j, &y).unwrap()),
                            "j={j} D={d}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn embed_vector_image_complements_the_line() {
        for j in 1..=7u32 {
            let d = 6;
            let ej = CircVector::basis(d, j).unwrap();
            let image: Vec<CircVector> = (0..16u64)
                .map(|b| embed_vector(j, &CircVector::from_bits(4, b).unwrap()).unwrap())
                .collect();
            let img_span = Gf2Subspace::span(d, &image);
            assert_eq!(img_span.rank(), 4, "injective at j={j}");
            assert!(!img_span.contains(&ej));
            for v in &image {
                assert_eq!(v.form(&ej), 0, "image lands in the perp of e_j");
            }
        }
    }

    #[test]
    fn embed_function_examples() {
        let zero = FunctionVector::zero(2).unwrap();
        assert_eq!(embed_function(3, &zero).unwrap(), FunctionVector::zero(4).unwrap());

        let pm = FunctionVector::point_mass(2, &CircVector::zero(2).unwrap()).unwrap();
        let out = embed_function(3, &pm).unwrap();
        let e3 = CircVector::basis(4, 3).unwrap();
        for bits in 0..16u64 {
            let expect = u32::from(bits == 0 || bits == e3.bits());
            assert_eq!(out.value_at_bits(bits), &crate::Dyadic::from_int(expect as i64));
        }
    }

    #[test]
    fn embed_function_maps_indicators_to_indicators() {
        for d_small in [2u32, 4] {
            let fam = enumerate_patterns(d_small).unwrap();
            for j in 1..=d_small + 3 {
                for b in &fam {
                    let lifted = embed_pattern(j, b).unwrap();
                    let lhs = embed_function(j, &FunctionVector::indicator(&b.span()).unwrap()).unwrap();
                    let rhs = FunctionVector::indicator(&lifted.span()).unwrap();
                    assert_eq!(lhs, rhs, "indicator identity at j={j} for {b}");
                }
            }
        }
    }

    #[test]
    fn embed_pattern_examples() {
        for j in 1..=5u32 {
            let t = embed_pattern(j, &Pattern::empty(2)).unwrap();
            assert_eq!(t, Pattern::from_specs(4, &[(j, 1)]).unwrap());
        }
        let b = Pattern::from_specs(2, &[(1, 1)]).unwrap();
        let t = embed_pattern(2, &b).unwrap();
        assert_eq!(t, Pattern::from_specs(4, &[(1, 3), (2, 1)]).unwrap());
    }

    #[test]
    fn embed_pattern_parity_shift() {
        // parity of the embedded pattern differs from the embedded parity
        // by at most e_j
        for d_small in [2u32, 4] {
            let fam = enumerate_patterns(d_small).unwrap();
            let d = d_small + 2;
            for j in 1..=d + 1 {
                let ej = CircVector::basis(d, j).unwrap();
                for b in &fam {
                    let t = embed_pattern(j, b).unwrap();
                    let via = embed_vector(j, &b.parity_vector()).unwrap();
                    let got = t.parity_vector();
                    assert!(got == via || got == via + ej, "j={j}, {b}");
                }
            }
        }
    }

    #[test]
    fn recursive_enumeration_counts() {
        assert_eq!(enumerate_patterns(2).unwrap().len(), 4);
        assert_eq!(enumerate_patterns(4).unwrap().len(), 16);
        assert_eq!(enumerate_patterns(6).unwrap().len(), 64);
    }

    #[test]
    fn recursive_agrees_with_bruteforce_small() {
        for d in [2u32, 4, 6] {
            assert!(enumerations_agree(d).unwrap(), "enumerations differ at D={d}");
        }
    }

    #[test]
    fn shift_examples() {
        let b = Pattern::from_specs(4, &[(2, 1)]).unwrap();
        assert_eq!(shift_pattern(&b, 2).unwrap(), Pattern::empty(4));

        let b = Pattern::from_specs(4, &[(2, 1), (1, 3)]).unwrap();
        let shifted = shift_pattern(&b, 2).unwrap();
        assert_eq!(shifted, Pattern::from_specs(4, &[(1, 1), (3, 1)]).unwrap());
        // oracle: parity of {{1},{3}} is e1 + e3 = parity(b) + e2
        assert_eq!(
            shifted.parity_vector(),
            b.parity_vector() + CircVector::basis(4, 2).unwrap()
        );

        assert!(matches!(shift_pattern(&b, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn shift_law_exhaustive_d6() {
        let fam = PatternFamily::build(6).unwrap();
        for b in fam.patterns() {
            for i in 1..=7u32 {
                let singleton = Interval::new(7, i, 1);
                if !b.contains_arc(&singleton) {
                    continue;
                }
                let shifted = shift_pattern(b, i).unwrap();
                assert!(fam.rank_of(&shifted).is_some());
                let expect = b.parity_vector() + CircVector::basis(6, i).unwrap();
                assert_eq!(shifted.parity_vector(), expect);
            }
        }
    }

    #[test]
    fn family_order_basics_d4() {
        let fam = PatternFamily::build(4).unwrap();
        let empty_rank = fam.rank_of(&Pattern::empty(4)).unwrap();
        for b in 0..fam.len() {
            assert!(fam.leq(empty_rank, b), "empty pattern below everything");
            assert!(fam.leq(b, b), "reflexive");
        }
        for a in 0..fam.len() {
            for b in 0..fam.len() {
                if a != b && fam.leq(a, b) {
                    assert!(!fam.leq(b, a), "antisymmetric");
                    assert!(fam.size_of(a) <= fam.size_of(b), "size-monotone");
                }
            }
        }
        // linext is a linear extension
        for (q, &r) in fam.linext().iter().enumerate() {
            for &r2 in &fam.linext()[q + 1..] {
                assert!(!fam.leq(r2 as usize, r as usize) || r == r2);
            }
        }
        assert_eq!(fam.linext()[0] as usize, empty_rank);
    }

    #[test]
    fn chain_statistics_d2() {
        let fam = PatternFamily::build(2).unwrap();
        let empty_rank = fam.rank_of(&Pattern::empty(2)).unwrap();
        assert_eq!(fam.chain_depth_of_vector(&CircVector::zero(2).unwrap()), 0);
        for i in 1..=3 {
            let e = CircVector::basis(2, i).unwrap();
            assert_eq!(fam.chain_depth_of_vector(&e), 1);
        }
        assert_eq!(fam.chain_height(empty_rank), 1);
        let max_depth = (0..fam.len()).map(|r| fam.chain_depth(r)).max().unwrap();
        assert_eq!(fam.chain_height(empty_rank), max_depth);
    }

    #[test]
    fn depth_strictly_increases_along_order() {
        let fam = PatternFamily::build(6).unwrap();
        for a in 0..fam.len() {
            for b in 0..fam.len() {
                if a != b && fam.leq(a, b) {
                    assert!(fam.chain_depth(a) < fam.chain_depth(b));
                }
            }
        }
    }

    #[test]
    fn rotation_commutes_with_parity_d6() {
        let fam = PatternFamily::build(6).unwrap();
        let perm = fam.rotation_permutation();
        for r in 0..fam.len() {
            let rotated_parity = fam.parity_of(r).rotated();
            assert_eq!(fam.parity_of(perm[r] as usize), rotated_parity);
        }
        // and acts as an order automorphism
        for a in 0..fam.len() {
            for b in 0..fam.len() {
                assert_eq!(fam.leq(a, b), fam.leq(perm[a] as usize, perm[b] as usize));
            }
        }
    }

    #[test]
    fn singleton_criterion_d6() {
        let fam = PatternFamily::build(6).unwrap();
        for b in fam.patterns() {
            for i in 1..=7u32 {
                let g = b.cover_count(i);
                let prev = b.cover_count(if i == 1 { 7 } else { i - 1 });
                let next = b.cover_count(if i == 7 { 1 } else { i + 1 });
                let criterion = g >= 1 && prev + 1 == g && next + 1 == g;
                let member = b.contains_arc(&Interval::new(7, i, 1));
                assert_eq!(member, criterion, "pattern {b}, point {i}");
            }
        }
    }

    #[test]
    fn hasse_d2() {
        let fam = PatternFamily::build(2).unwrap();
        assert_eq!(fam.covers().len(), 3);
        let dot = fam.hasse_dot();
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert_eq!(dot.matches("label=").count(), 4);
    }
}
