//! Functions on `V_D` with exact dyadic values, and the Fourier transform
//! with kernel `2^{-D/2} (-1)^{(x,y)}`.
//!
//! The transform factors through the standard Walsh-Hadamard transform:
//! `(x, y) = x . (A y)` for the Gram matrix `A`, so applying the dot-product
//! transform and then substituting `y -> A y` gives the symplectic kernel.
//! `A` is invertible, hence the substitution is a permutation of indices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dyadic::Dyadic;
use crate::gf2::{adjacency_image, check_dim, CircVector, Gf2Subspace};
use crate::Result;

/// A function `V_D -> dyadic rationals`, stored densely and indexed by the
/// canonical bitmask of the argument.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctionVector {
    dim: u32,
    values: Vec<Dyadic>,
}

impl FunctionVector {
    pub fn zero(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(FunctionVector { dim, values: vec![Dyadic::zero(); 1 << dim] })
    }

    pub fn point_mass(dim: u32, at: &CircVector) -> Result<Self> {
        let mut f = Self::zero(dim)?;
        f.values[at.bits() as usize] = Dyadic::one();
        Ok(f)
    }

    /// Characteristic function of a subspace.
    pub fn indicator(space: &Gf2Subspace) -> Result<Self> {
        let mut f = Self::zero(space.dim_ambient())?;
        for p in space.points() {
            f.values[p as usize] = Dyadic::one();
        }
        Ok(f)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn values(&self) -> &[Dyadic] {
        &self.values
    }

    pub fn value_at_bits(&self, bits: u64) -> &Dyadic {
        &self.values[bits as usize]
    }

    pub fn value(&self, at: &CircVector) -> &Dyadic {
        assert_eq!(at.dim(), self.dim);
        self.value_at_bits(at.bits())
    }

    pub fn add_at_bits(&mut self, bits: u64, c: &Dyadic) {
        let v = &self.values[bits as usize] + c;
        self.values[bits as usize] = v;
    }

    pub fn scaled(&self, by: &Dyadic) -> FunctionVector {
        FunctionVector {
            dim: self.dim,
            values: self.values.iter().map(|v| v * by).collect(),
        }
    }
}

impl std::ops::Add for &FunctionVector {
    type Output = FunctionVector;
    fn add(self, rhs: &FunctionVector) -> FunctionVector {
        assert_eq!(self.dim, rhs.dim);
        FunctionVector {
            dim: self.dim,
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// In-place unnormalized Walsh-Hadamard transform:
/// `v[z] <- sum_x (-1)^{popcount(x & z)} v[x]`.
pub(crate) fn wht_in_place(v: &mut [BigInt]) {
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(h * 2) {
            for i in block..block + h {
                let a = v[i].clone();
                let b = v[i + h].clone();
                v[i] = &a + &b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Entry of the Fourier kernel at `(x, y)`: `(-1)^{(x,y)} 2^{-D/2}`.
pub fn fourier_entry(x: &CircVector, y: &CircVector) -> Dyadic {
    let d = x.dim();
    assert_eq!(d, y.dim());
    let sign = if x.form(y) == 1 { -1 } else { 1 };
    Dyadic::new(sign, d / 2)
}

/// The exact Fourier transform of `f`.
pub fn fourier_transform(f: &FunctionVector) -> FunctionVector {
    let d = f.dim;
    let n = 1usize << d;
    let e_max = f.values.iter().map(|v| v.exponent()).max().unwrap_or(0);
    let mut nums: Vec<BigInt> = f
        .values
        .iter()
        .map(|v| v.numerator().clone() << (e_max - v.exponent()))
        .collect();
    wht_in_place(&mut nums);
    let values = (0..n)
        .map(|y| {
            let z = adjacency_image(y as u64, d) as usize;
            Dyadic::new(nums[z].clone(), e_max + d / 2)
        })
        .collect();
    FunctionVector { dim: d, values }
}

/// Walsh-Hadamard transform of a 0/1 indicator given by subspace points,
/// returned as raw integers (the Fourier values scaled by `2^{D/2}`).
pub(crate) fn wht_of_indicator(dim: u32, points: &[u64]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); 1 << dim];
    for &p in points {
        v[p as usize] = BigInt::one();
    }
    wht_in_place(&mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wht_matches_naive() {
        for d in [2u32, 4] {
            let n = 1usize << d;
            let input: Vec<BigInt> = (0..n).map(|i| BigInt::from((i * 7 % 5) as i64 - 2)).collect();
            let mut fast = input.clone();
            wht_in_place(&mut fast);
            for z in 0..n {
                let mut acc = BigInt::zero();
                for (x, v) in input.iter().enumerate() {
                    if (x & z).count_ones() % 2 == 0 {
                        acc += v;
                    } else {
                        acc -= v;
                    }
                }
                assert_eq!(fast[z], acc, "entry {z} at D={d}");
            }
        }
    }

    #[test]
    fn transform_of_point_mass_at_zero() {
        for d in [2u32, 4, 6] {
            let f = FunctionVector::point_mass(d, &CircVector::zero(d).unwrap()).unwrap();
            let t = fourier_transform(&f);
            let expect = Dyadic::new(1, d / 2);
            assert!(t.values().iter().all(|v| *v == expect));
        }
    }

    #[test]
    fn transform_entry_agrees_with_kernel() {
        let d = 4;
        for xb in 0..16u64 {
            let x = CircVector::from_bits(d, xb).unwrap();
            let f = FunctionVector::point_mass(d, &x).unwrap();
            let t = fourier_transform(&f);
            for yb in 0..16u64 {
                let y = CircVector::from_bits(d, yb).unwrap();
                assert_eq!(*t.value(&y), fourier_entry(&x, &y));
            }
        }
    }

    #[test]
    fn transform_is_involution_small() {
        for d in [2u32, 4, 6] {
            for bits in 0..1u64 << d {
                let x = CircVector::from_bits(d, bits).unwrap();
                let f = FunctionVector::point_mass(d, &x).unwrap();
                assert_eq!(fourier_transform(&fourier_transform(&f)), f);
            }
        }
    }

    proptest! {
        #[test]
        fn transform_is_linear(a in proptest::collection::vec(-8i64..8, 16), b in proptest::collection::vec(-8i64..8, 16)) {
            let d = 4;
            let mk = |vals: &[i64]| {
                let mut f = FunctionVector::zero(d).unwrap();
                for (i, &v) in vals.iter().enumerate() {
                    f.add_at_bits(i as u64, &Dyadic::from_int(v));
                }
                f
            };
            let fa = mk(&a);
            let fb = mk(&b);
            let lhs = fourier_transform(&(&fa + &fb));
            let rhs = &fourier_transform(&fa) + &fourier_transform(&fb);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
