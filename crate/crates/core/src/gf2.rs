//! Exact linear algebra over F2 for the space `V_D` carrying a circular
//! basis `e_1, ..., e_{D+1}` with `e_1 + ... + e_{D+1} = 0` and a
//! nondegenerate symplectic form pairing cyclically adjacent basis vectors.
//!
//! Vectors are stored as bitmasks over the linear basis `e_1, ..., e_D`;
//! occurrences of `e_{D+1}` are eliminated eagerly, so equality is plain
//! bitmask equality. Restricted to `e_1..e_D` the Gram matrix is the path
//! adjacency: `(e_i, e_j) = 1` iff `|i - j| = 1` (all signs coincide over
//! F2).

use crate::{Error, Result};

pub const MAX_DIM: u32 = 62;

#[inline]
pub(crate) fn dim_mask(dim: u32) -> u64 {
    (1u64 << dim) - 1
}

/// Image of `bits` under the Gram matrix: bit `i` of the result is
/// `x_{i-1} + x_{i+1}` over F2.
#[inline]
pub(crate) fn adjacency_image(bits: u64, dim: u32) -> u64 {
    ((bits << 1) ^ (bits >> 1)) & dim_mask(dim)
}

pub(crate) fn check_dim(dim: u32) -> Result<()> {
    if dim < 2 || dim % 2 != 0 || dim > MAX_DIM {
        return Err(Error::InvalidDimension(dim));
    }
    Ok(())
}

/// An element of `V_D` in canonical coordinates over `e_1, ..., e_D`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CircVector {
    dim: u32,
    bits: u64,
}

impl CircVector {
    pub fn zero(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(CircVector { dim, bits: 0 })
    }

    /// The canonical form of `e_S` for a subset `S` of `[1, D+1]`.
    ///
    /// If `D+1` is in `S` the relation `e_{D+1} = e_1 + ... + e_D` is applied,
    /// which complements the remaining coordinates.
    pub fn from_subset(dim: u32, subset: &[u32]) -> Result<Self> {
        check_dim(dim)?;
        let mut bits = 0u64;
        let mut complement = false;
        for &s in subset {
            if s < 1 || s > dim + 1 {
                return Err(Error::IndexOutOfRange { index: s, max: dim + 1 });
            }
            if s == dim + 1 {
                complement = !complement;
            } else {
                bits ^= 1 << (s - 1);
            }
        }
        if complement {
            bits ^= dim_mask(dim);
        }
        Ok(CircVector { dim, bits })
    }

    /// The circular basis vector `e_i`, `i` in `[1, D+1]`.
    pub fn basis(dim: u32, i: u32) -> Result<Self> {
        Self::from_subset(dim, &[i])
    }

    /// Builds a vector from raw canonical coordinates.
    pub fn from_bits(dim: u32, bits: u64) -> Result<Self> {
        check_dim(dim)?;
        if bits & !dim_mask(dim) != 0 {
            return Err(Error::IndexOutOfRange {
                index: 64 - bits.leading_zeros(),
                max: dim,
            });
        }
        Ok(CircVector { dim, bits })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinates set in the canonical form, ascending.
    pub fn support(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.bits.count_ones() as usize);
        let mut b = self.bits;
        while b != 0 {
            out.push(b.trailing_zeros() + 1);
            b &= b - 1;
        }
        out
    }

    /// The symplectic form `(x, y)`.
    pub fn form(&self, other: &CircVector) -> u8 {
        assert_eq!(self.dim, other.dim, "form on mismatched dimensions");
        ((self.bits & adjacency_image(other.bits, self.dim)).count_ones() & 1) as u8
    }

    /// The cyclic relabeling `e_i -> e_{i+1 mod D+1}` applied to this vector.
    pub fn rotated(&self) -> CircVector {
        let full = dim_mask(self.dim);
        let top = 1u64 << (self.dim - 1);
        let mut bits = (self.bits & !top) << 1;
        if self.bits & top != 0 {
            // e_D maps to e_{D+1} = e_1 + ... + e_D
            bits ^= full;
        }
        CircVector { dim: self.dim, bits }
    }
}

impl std::ops::Add for CircVector {
    type Output = CircVector;

    fn add(self, rhs: CircVector) -> CircVector {
        assert_eq!(self.dim, rhs.dim, "adding vectors of mismatched dimensions");
        CircVector { dim: self.dim, bits: self.bits ^ rhs.bits }
    }
}

impl std::fmt::Display for CircVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.support().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A subspace of `V_D` kept in reduced row-echelon form: pivots (lowest set
/// bits) strictly increasing, each pivot cleared from every other row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Subspace {
    dim: u32,
    rows: Vec<u64>,
}

fn pivot(bits: u64) -> u32 {
    bits.trailing_zeros()
}

impl Gf2Subspace {
    pub fn zero(dim: u32) -> Self {
        Gf2Subspace { dim, rows: Vec::new() }
    }

    pub fn full(dim: u32) -> Self {
        Gf2Subspace {
            dim,
            rows: (0..dim).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn span(dim: u32, vectors: &[CircVector]) -> Self {
        let mut s = Gf2Subspace::zero(dim);
        for v in vectors {
            assert_eq!(v.dim(), dim, "span over mismatched dimensions");
            s.insert(v.bits());
        }
        s
    }

    fn insert(&mut self, mut bits: u64) {
        for &row in &self.rows {
            if bits >> pivot(row) & 1 == 1 {
                bits ^= row;
            }
        }
        if bits == 0 {
            return;
        }
        // clear the new pivot from existing rows, keep pivot order
        let p = pivot(bits);
        for row in &mut self.rows {
            if *row >> p & 1 == 1 {
                *row ^= bits;
            }
        }
        let at = self.rows.partition_point(|r| pivot(*r) < p);
        self.rows.insert(at, bits);
    }

    pub fn dim_ambient(&self) -> u32 {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis_rows(&self) -> Vec<CircVector> {
        self.rows
            .iter()
            .map(|&b| CircVector { dim: self.dim, bits: b })
            .collect()
    }

    pub fn contains_bits(&self, mut bits: u64) -> bool {
        for &row in &self.rows {
            if bits >> pivot(row) & 1 == 1 {
                bits ^= row;
            }
        }
        bits == 0
    }

    pub fn contains(&self, v: &CircVector) -> bool {
        assert_eq!(v.dim(), self.dim, "membership test on mismatched dimensions");
        self.contains_bits(v.bits())
    }

    pub fn contains_subspace(&self, other: &Gf2Subspace) -> bool {
        other.rows.iter().all(|&r| self.contains_bits(r))
    }

    /// All `2^rank` points of the subspace, as canonical bitmasks.
    pub fn points(&self) -> Vec<u64> {
        assert!(self.rank() <= 30, "subspace too large to enumerate");
        let mut out = vec![0u64];
        for &row in &self.rows {
            for k in 0..out.len() {
                let v = out[k] ^ row;
                out.push(v);
            }
        }
        out
    }

    /// The orthogonal complement `{x : (x, s) = 0 for all s in self}`.
    pub fn perp(&self) -> Gf2Subspace {
        // kernel of the constraint matrix whose rows are the Gram images
        // of the basis rows
        let mut constraints = Gf2Subspace::zero(self.dim);
        for &row in &self.rows {
            constraints.insert(adjacency_image(row, self.dim));
        }
        // nondegeneracy makes the constraints independent
        debug_assert_eq!(constraints.rank(), self.rank());
        let pivots: Vec<u32> = constraints.rows.iter().map(|&r| pivot(r)).collect();
        let mut kernel = Gf2Subspace::zero(self.dim);
        for f in 0..self.dim {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = 1u64 << f;
            for (&row, &p) in constraints.rows.iter().zip(&pivots) {
                if row >> f & 1 == 1 {
                    v |= 1 << p;
                }
            }
            kernel.insert(v);
        }
        debug_assert_eq!(kernel.rank() as u32, self.dim - self.rank() as u32);
        kernel
    }

    /// True iff the form vanishes on the subspace.
    pub fn is_isotropic(&self) -> bool {
        let rows = self.basis_rows();
        for (i, u) in rows.iter().enumerate() {
            for v in &rows[i + 1..] {
                if u.form(v) != 0 {
                    return false;
                }
            }
        }
        true
    }
}
