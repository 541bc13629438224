//! The binary linear Hadamard code `H_m`.
//!
//! Column 1 of the generator is `(1, 0)`; column `j + 2` is `(1, α^j)` for
//! `j = 0..2^m - 2`, so the first `m + 1` columns are `e_1, e_1 + e_2, ...`
//! and positions `{1, ..., m + 1}` form an information set.

use crate::code::{hadamard_error_capability, CodeDescriptor, SystematicCode};
use crate::error::{Error, Result};
use crate::gf2::{default_primitive_poly, format_poly, BitMatrix, BitVector, GaloisField};
use crate::perm::Permutation;

pub const MAX_BINARY_M: u32 = 20;

#[derive(Clone, Debug)]
pub struct HadamardCodeBinary {
    base_m: u32,
    doublings: u32,
    poly: u64,
    generator: BitMatrix,
    /// Column labels as masks, bit 0 the first coordinate.
    labels: Vec<u64>,
    /// mask -> 0-based position
    label_index: Vec<u32>,
    info_set: Vec<usize>,
    /// Inverse of the generator restricted to the information columns.
    info_inverse: BitMatrix,
}

impl HadamardCodeBinary {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("m must be at least 2, got {m}")));
        }
        Self::with_poly(m, default_primitive_poly(m)?)
    }

    pub fn with_poly(m: u32, poly: u64) -> Result<Self> {
        if !(2..=MAX_BINARY_M).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "m must be in 2..={MAX_BINARY_M}, got {m}"
            )));
        }
        let gf = GaloisField::with_poly(m, poly)?;
        let labels: Vec<u64> = std::iter::once(1u64)
            .chain(gf.alpha_powers().iter().map(|&a| 1 | (a as u64) << 1))
            .collect();
        Self::from_labels(m, 0, poly, labels, (1..=m as usize + 1).collect())
    }

    fn from_labels(base_m: u32, doublings: u32, poly: u64, labels: Vec<u64>, info_set: Vec<usize>) -> Result<Self> {
        let m = (base_m + doublings) as usize;
        let n = labels.len();
        debug_assert_eq!(n, 1 << m);
        let generator = BitMatrix::from_rows(
            (0..=m)
                .map(|r| BitVector::from_bits(labels.iter().map(|&l| l >> r & 1 == 1)))
                .collect(),
        )?;
        let mut label_index = vec![u32::MAX; 2 << m];
        for (i, &l) in labels.iter().enumerate() {
            label_index[l as usize] = i as u32;
        }
        let info_cols = BitMatrix::from_rows(info_set.iter().map(|&i| generator.column(i - 1)).collect())?.transpose();
        let info_inverse = info_cols
            .inverse()
            .map_err(|_| Error::InvalidParameter("positions are not an information set".into()))?;
        Ok(HadamardCodeBinary {
            base_m,
            doublings,
            poly,
            generator,
            labels,
            label_index,
            info_set,
            info_inverse,
        })
    }

    /// The code generated by `(G | G ; 0 | 1)` with information set
    /// `I ∪ {min(I) + n}`.
    pub fn doubled(&self) -> Result<Self> {
        let m = self.m();
        if m >= MAX_BINARY_M {
            return Err(Error::InvalidParameter("doubled code too long".into()));
        }
        let top = 1u64 << (m + 1);
        let labels = self
            .labels
            .iter()
            .copied()
            .chain(self.labels.iter().map(|&l| l | top))
            .collect();
        let mut info = self.info_set.clone();
        info.push(info.iter().min().unwrap() + self.length());
        Self::from_labels(self.base_m, self.doublings + 1, self.poly, labels, info)
    }

    /// `log2` of the length.
    pub fn m(&self) -> u32 {
        self.base_m + self.doublings
    }

    pub fn doublings(&self) -> u32 {
        self.doublings
    }

    pub fn poly(&self) -> u64 {
        self.poly
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    /// Label of a 1-based position as an `(m + 1)`-bit row vector.
    pub fn label(&self, position: usize) -> BitVector {
        BitVector::from_u64(self.labels[position - 1], self.m() as usize + 1)
    }

    pub fn label_masks(&self) -> &[u64] {
        &self.labels
    }

    /// 1-based position carrying the given label mask.
    pub fn position_of_label(&self, mask: u64) -> Option<usize> {
        self.label_index
            .get(mask as usize)
            .filter(|&&i| i != u32::MAX)
            .map(|&i| i as usize + 1)
    }

    /// Information positions together with their labels.
    pub fn info_set_with_labels(&self) -> (Vec<usize>, Vec<BitVector>) {
        let labels = self.info_set.iter().map(|&p| self.label(p)).collect();
        (self.info_set.clone(), labels)
    }

    /// `u·G` for a message `u` of length `m + 1`.
    pub fn encode_message(&self, u: &BitVector) -> BitVector {
        self.generator.left_mul_vec(u)
    }
}

impl SystematicCode for HadamardCodeBinary {
    fn length(&self) -> usize {
        self.labels.len()
    }

    fn dimension(&self) -> usize {
        self.m() as usize + 1
    }

    fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    fn error_capability(&self) -> usize {
        hadamard_error_capability(self.m() as usize)
    }

    fn encode_systematic(&self, values: &BitVector) -> Result<BitVector> {
        if values.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                got: values.len(),
            });
        }
        Ok(self.encode_message(&self.info_inverse.left_mul_vec(values)))
    }

    fn descriptor(&self) -> CodeDescriptor {
        let default = default_primitive_poly(self.base_m).ok();
        CodeDescriptor::Binary {
            m: self.base_m,
            doublings: self.doublings,
            poly: (default != Some(self.poly)).then(|| format_poly(self.poly)),
        }
    }

    /// Linear code: it suffices that every generator row maps into the code.
    fn is_automorphism(&self, p: &Permutation) -> bool {
        p.len() == self.length() && self.generator.rows().iter().all(|r| self.contains(&p.act(r)))
    }
}

pub fn build_binary_hadamard(m: u32) -> Result<HadamardCodeBinary> {
    HadamardCodeBinary::new(m)
}

pub fn info_set_binary(code: &HadamardCodeBinary) -> (Vec<usize>, Vec<BitVector>) {
    code.info_set_with_labels()
}

pub fn systematic_encode_binary(code: &HadamardCodeBinary, values: &BitVector) -> Result<BitVector> {
    code.encode_systematic(values)
}

pub fn contains_binary(code: &HadamardCodeBinary, word: &BitVector) -> bool {
    code.contains(word)
}
