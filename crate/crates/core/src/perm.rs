//! Coordinate permutations.
//!
//! Positions are 1-based at the API boundary, matching the `{1, ..., n}`
//! convention of the file formats; the image table is stored 0-based.
//! A permutation σ acts on words by moving the entry at position `i` to
//! position `σ(i)`, i.e. `σ(v)_{σ(i)} = v_i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVector;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n as u32).collect(),
        }
    }

    /// From a 1-based image list `[σ(1), ..., σ(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &j in images {
            if j == 0 || j > n {
                return Err(Error::InvalidPermutation(format!("image {j} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[j - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {j} repeated")));
            }
            image.push((j - 1) as u32);
        }
        Ok(Permutation { image })
    }

    /// From a 0-based image table.
    pub fn from_zero_based(image: Vec<usize>) -> Result<Self> {
        Self::from_images(&image.iter().map(|&j| j + 1).collect::<Vec<_>>())
    }

    /// From disjoint cycles in 1-based notation; `(1,5)(2,8,3)` is `&[&[1,5],&[2,8,3]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (1..=n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::InvalidPermutation(format!("cycle entry outside 1..={n}")));
                }
                image[a - 1] = b;
            }
        }
        Self::from_images(&image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// σ(i) for a 1-based position.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize + 1
    }

    /// σ(i) for a 0-based index.
    #[inline]
    pub fn apply0(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&j| j as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            image: other.image.iter().map(|&j| self.image[j as usize]).collect(),
        }
    }

    /// `σ(v)` with `σ(v)_{σ(i)} = v_i`.
    pub fn act(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.len(), "permutation/word length mismatch");
        let mut out = BitVector::zeros(v.len());
        for i in v.support() {
            out.set(self.image[i] as usize, true);
        }
        out
    }

    /// Same action on a generic symbol sequence.
    pub fn act_slice<T: Copy + Default>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.len(), "permutation/word length mismatch");
        let mut out = vec![T::default(); v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.image[i] as usize] = x;
        }
        out
    }

    /// `(σ_1 | σ_2 | ...)`: each part acts on its own consecutive block.
    pub fn concat(parts: &[&Permutation]) -> Permutation {
        let mut image = Vec::new();
        let mut offset = 0u32;
        for p in parts {
            image.extend(p.image.iter().map(|&j| j + offset));
            offset += p.len() as u32;
        }
        Permutation { image }
    }

    /// `(σ | σ | ... )` with `copies` blocks.
    pub fn repeat(&self, copies: usize) -> Permutation {
        Permutation::concat(&vec![self; copies])
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(&images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycles_and_images_agree() {
        let p = Permutation::from_cycles(8, &[&[1, 5], &[2, 8, 3, 6, 4, 7]]).unwrap();
        assert_eq!(p.images(), vec![5, 8, 6, 7, 1, 4, 2, 3]);
        assert_eq!(p.apply(8), 3);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[3, 1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[2,2,1]").is_err());
    }

    #[test]
    fn action_moves_entry_i_to_sigma_i() {
        let p = Permutation::from_images(&[2, 3, 1]).unwrap();
        let v = BitVector::parse("100").unwrap();
        assert_eq!(p.act(&v).to_string(), "010");
        assert_eq!(p.act_slice(&[7u8, 8, 9]), vec![9, 7, 8]);
    }

    #[test]
    fn concat_offsets_blocks() {
        let p = Permutation::from_images(&[2, 1]).unwrap();
        assert_eq!(p.repeat(2).images(), vec![2, 1, 4, 3]);
    }

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_zero_based(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(p in (1usize..40).prop_flat_map(perm)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }

        #[test]
        fn action_is_a_homomorphism((p, q, bits) in (1usize..30).prop_flat_map(|n| (perm(n), perm(n), proptest::collection::vec(any::<bool>(), n)))) {
            let v = BitVector::from_bits(bits);
            prop_assert_eq!(p.act(&q.act(&v)), p.compose(&q).act(&v));
        }
    }
}
