//! Quaternary linear Hadamard codes `H_{γ,δ}` and their Gray images.
//!
//! The generator is grown from `G_{0,1} = (1)` by the two recursive steps
//!
//! ```text
//!   quadruple: ( G G G G )      double: ( G G )
//!              ( 0 1 2 3 )              ( 0 2 )
//! ```
//!
//! The canonical code applies `δ - 1` quadruple steps and then `γ` double
//! steps; other step orders give equivalent codes with the columns arranged
//! differently, which is what the quadrupling of PD-sets produces.

use std::collections::HashMap;
use std::fmt;

use crate::code::{hadamard_error_capability, CodeDescriptor, SystematicCode, MAX_ENUMERATION_DIM};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::perm::Permutation;
use crate::z4::{LBlockShape, Z4Matrix};

/// Largest `m = γ + 2δ - 1` accepted; the encode table has `2^{m+1}` entries.
pub const MAX_Z4_M: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Quadruple,
    Double,
}

impl Step {
    fn letter(self) -> char {
        match self {
            Step::Quadruple => 'Q',
            Step::Double => 'D',
        }
    }
}

/// Parses a step word such as `"QQD"`.
pub fn parse_steps(s: &str) -> Result<Vec<Step>> {
    s.chars()
        .map(|c| match c.to_ascii_uppercase() {
            'Q' => Ok(Step::Quadruple),
            'D' => Ok(Step::Double),
            _ => Err(Error::Parse(format!("invalid construction step {c:?}"))),
        })
        .collect()
}

pub fn format_steps(steps: &[Step]) -> String {
    steps.iter().map(|s| s.letter()).collect()
}

fn canonical_steps(gamma: usize, delta: usize) -> Vec<Step> {
    let mut steps = vec![Step::Quadruple; delta - 1];
    steps.extend(std::iter::repeat_n(Step::Double, gamma));
    steps
}

#[derive(Clone)]
pub struct HadamardCodeZ4 {
    gamma: usize,
    delta: usize,
    steps: Vec<Step>,
    /// Order-4 rows first, then the order-2 rows.
    generator: Z4Matrix,
    /// Column labels packed base 4, coordinate r in bits `2r..2r+2`.
    labels: Vec<u64>,
    label_index: HashMap<u64, u32>,
    q_info_set: Vec<usize>,
    binary_info_set: Vec<usize>,
    /// restriction bits on `binary_info_set` -> message index
    table: Vec<u32>,
}

impl fmt::Debug for HadamardCodeZ4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HadamardCodeZ4")
            .field("gamma", &self.gamma)
            .field("delta", &self.delta)
            .field("steps", &format_steps(&self.steps))
            .finish()
    }
}

impl HadamardCodeZ4 {
    pub fn new(gamma: usize, delta: usize) -> Result<Self> {
        if delta < 1 {
            return Err(Error::InvalidParameter(format!(
                "delta must be at least 1, got {delta}"
            )));
        }
        Self::from_steps(&canonical_steps(gamma, delta))
    }

    /// The code reached from `G_{0,1}` by the given steps in order.
    pub fn from_steps(steps: &[Step]) -> Result<Self> {
        let delta = 1 + steps.iter().filter(|&&s| s == Step::Quadruple).count();
        let gamma = steps.len() + 1 - delta;
        let m = gamma + 2 * delta - 1;
        if m > MAX_Z4_M {
            return Err(Error::InvalidParameter(format!(
                "gamma + 2 delta - 1 = {m} exceeds {MAX_Z4_M}"
            )));
        }
        let mut rows4: Vec<Vec<u8>> = vec![vec![1]];
        let mut rows2: Vec<Vec<u8>> = Vec::new();
        // (position, is order 4) in recursion order
        let mut info: Vec<(usize, bool)> = vec![(1, true)];
        for &step in steps {
            let beta = rows4[0].len();
            let copies = match step {
                Step::Quadruple => 4,
                Step::Double => 2,
            };
            for r in rows4.iter_mut().chain(rows2.iter_mut()) {
                *r = r.repeat(copies);
            }
            let new_row: Vec<u8> = match step {
                Step::Quadruple => (0..4u8).flat_map(|b| std::iter::repeat_n(b, beta)).collect(),
                Step::Double => (0..2u8).flat_map(|b| std::iter::repeat_n(2 * b, beta)).collect(),
            };
            match step {
                Step::Quadruple => rows4.push(new_row),
                Step::Double => rows2.push(new_row),
            }
            info.push((beta + 1, step == Step::Quadruple));
        }
        rows4.extend(rows2);
        let generator = Z4Matrix::from_rows(&rows4)?;
        let beta = generator.ncols();

        let labels: Vec<u64> = (0..beta)
            .map(|c| (0..generator.nrows()).fold(0u64, |acc, r| acc | (generator.get(r, c) as u64) << (2 * r)))
            .collect();
        let label_index = labels.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();

        let q_info_set: Vec<usize> = info
            .iter()
            .filter(|e| e.1)
            .chain(info.iter().filter(|e| !e.1))
            .map(|e| e.0)
            .collect();
        let mut binary_info_set: Vec<usize> = info
            .iter()
            .flat_map(|&(p, four)| if four { vec![2 * p - 1, 2 * p] } else { vec![2 * p - 1] })
            .collect();
        binary_info_set.sort_unstable();

        let mut code = HadamardCodeZ4 {
            gamma,
            delta,
            steps: steps.to_vec(),
            generator,
            labels,
            label_index,
            q_info_set,
            binary_info_set,
            table: Vec::new(),
        };
        code.build_table()?;
        Ok(code)
    }

    fn build_table(&mut self) -> Result<()> {
        let k = self.m() + 1;
        let mut table = vec![u32::MAX; 1 << k];
        for msg in 0..1u32 << k {
            let key = self.restriction_key(&self.message_vector(msg));
            if table[key as usize] != u32::MAX {
                return Err(Error::InvalidParameter("positions are not an information set".into()));
            }
            table[key as usize] = msg;
        }
        self.table = table;
        Ok(())
    }

    /// Message coefficients `(λ_4, λ_2)`: two bits per order-4 row, one per order-2 row.
    fn message_vector(&self, msg: u32) -> Vec<u8> {
        (0..self.gamma + self.delta)
            .map(|r| {
                if r < self.delta {
                    (msg >> (2 * r) & 3) as u8
                } else {
                    (msg >> (2 * self.delta + r - self.delta) & 1) as u8
                }
            })
            .collect()
    }

    /// Gray bits of `λ·G` on the binary information set, bit k for position k.
    fn restriction_key(&self, lambda: &[u8]) -> u64 {
        let mut key = 0u64;
        for (k, &p) in self.binary_info_set.iter().enumerate() {
            let coord = (p - 1) / 2;
            let x =
                (0..lambda.len()).fold(0u8, |acc, r| acc.wrapping_add(lambda[r] * self.generator.get(r, coord))) & 3;
            let (hi, lo) = gray_pair(x);
            let bit = if (p - 1) % 2 == 0 { hi } else { lo };
            key |= (bit as u64) << k;
        }
        key
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn shape(&self) -> LBlockShape {
        LBlockShape {
            gamma: self.gamma,
            delta: self.delta,
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_canonical(&self) -> bool {
        self.steps == canonical_steps(self.gamma, self.delta)
    }

    /// `γ + 2δ - 1`, so the binary length is `2^m`.
    pub fn m(&self) -> usize {
        self.gamma + 2 * self.delta - 1
    }

    /// Quaternary length `β = 2^{m-1}`.
    pub fn beta(&self) -> usize {
        self.labels.len()
    }

    pub fn generator(&self) -> &Z4Matrix {
        &self.generator
    }

    /// Column label of a 1-based quaternary position, read top-down.
    pub fn label(&self, position: usize) -> Vec<u8> {
        self.generator.column(position - 1)
    }

    /// 1-based quaternary position whose label is `v`.
    pub fn position_of_label(&self, v: &[u8]) -> Option<usize> {
        let key = v
            .iter()
            .enumerate()
            .fold(0u64, |acc, (r, &x)| acc | ((x & 3) as u64) << (2 * r));
        self.label_index.get(&key).map(|&i| i as usize + 1)
    }

    /// Quaternary information set, order-4 positions first.
    pub fn q_info_set(&self) -> &[usize] {
        &self.q_info_set
    }

    pub fn q_info_set_with_labels(&self) -> (Vec<usize>, Vec<Vec<u8>>) {
        let labels = self.q_info_set.iter().map(|&p| self.label(p)).collect();
        (self.q_info_set.clone(), labels)
    }

    /// `Φ(I)` in increasing order.
    pub fn binary_info_set(&self) -> &[usize] {
        &self.binary_info_set
    }

    /// `λ·G` for a message over `Z4^δ × Z2^γ`; order-2 entries are taken mod 2.
    pub fn encode_quaternary(&self, lambda: &[u8]) -> Result<Vec<u8>> {
        if lambda.len() != self.gamma + self.delta {
            return Err(Error::LengthMismatch {
                expected: self.gamma + self.delta,
                got: lambda.len(),
            });
        }
        let reduced: Vec<u8> = lambda
            .iter()
            .enumerate()
            .map(|(r, &x)| if r < self.delta { x & 3 } else { x & 1 })
            .collect();
        Ok(self.generator.left_mul_vec(&reduced))
    }

    /// The quaternary codeword whose Gray image restricts to `values` on `Φ(I)`.
    pub fn encode_systematic_quaternary(&self, values: &BitVector) -> Result<Vec<u8>> {
        let k = self.m() + 1;
        if values.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: values.len(),
            });
        }
        let msg = self.table[values.to_u64() as usize];
        Ok(self.generator.left_mul_vec(&self.message_vector(msg)))
    }

    pub fn contains_quaternary(&self, v: &[u8]) -> bool {
        if v.len() != self.beta() {
            return false;
        }
        self.encode_systematic_quaternary(&gray_map(v).restrict(&self.info_set0()))
            .is_ok_and(|c| c == v)
    }

    /// All `2^γ 4^δ` quaternary codewords in message order.
    pub fn quaternary_codewords(&self) -> Vec<Vec<u8>> {
        let k = self.m() + 1;
        assert!(k <= MAX_ENUMERATION_DIM, "refusing to enumerate 2^{k} codewords");
        (0..1u32 << k)
            .map(|msg| self.generator.left_mul_vec(&self.message_vector(msg)))
            .collect()
    }

    /// Whether a permutation of the β quaternary coordinates fixes the code.
    pub fn is_quaternary_automorphism(&self, tau: &Permutation) -> bool {
        tau.len() == self.beta()
            && self
                .generator
                .row_vectors()
                .iter()
                .all(|r| self.contains_quaternary(&tau.act_slice(r)))
    }

    /// The code obtained by one more double step.
    pub fn doubled(&self) -> Result<Self> {
        let mut steps = self.steps.clone();
        steps.push(Step::Double);
        Self::from_steps(&steps)
    }

    /// The code obtained by one more quadruple step.
    pub fn quadrupled(&self) -> Result<Self> {
        let mut steps = self.steps.clone();
        steps.push(Step::Quadruple);
        Self::from_steps(&steps)
    }
}

impl SystematicCode for HadamardCodeZ4 {
    fn length(&self) -> usize {
        2 * self.beta()
    }

    fn dimension(&self) -> usize {
        self.m() + 1
    }

    fn info_set(&self) -> &[usize] {
        &self.binary_info_set
    }

    fn error_capability(&self) -> usize {
        hadamard_error_capability(self.m())
    }

    fn encode_systematic(&self, values: &BitVector) -> Result<BitVector> {
        Ok(gray_map(&self.encode_systematic_quaternary(values)?))
    }

    fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor::Z4 {
            gamma: self.gamma,
            delta: self.delta,
            steps: (!self.is_canonical()).then(|| format_steps(&self.steps)),
        }
    }

    /// Gray lifts are checked on the quaternary generator; any other
    /// permutation is checked against every codeword.
    fn is_automorphism(&self, p: &Permutation) -> bool {
        if p.len() != self.length() {
            return false;
        }
        match gray_unlift(p) {
            Some(tau) => self.is_quaternary_automorphism(&tau),
            None => self
                .quaternary_codewords()
                .iter()
                .all(|c| self.contains(&p.act(&gray_map(c)))),
        }
    }
}

fn gray_pair(x: u8) -> (bool, bool) {
    let hi = x >> 1 & 1 == 1;
    (hi, hi ^ (x & 1 == 1))
}

/// φ(0) = 00, φ(1) = 01, φ(2) = 11, φ(3) = 10, coordinatewise.
pub fn gray_map(v: &[u8]) -> BitVector {
    BitVector::from_bits(v.iter().flat_map(|&x| {
        let (a, b) = gray_pair(x & 3);
        [a, b]
    }))
}

/// Inverse of [`gray_map`].
pub fn gray_unmap(bits: &BitVector) -> Result<Vec<u8>> {
    if !bits.len().is_multiple_of(2) {
        return Err(Error::InvalidParameter("Gray image must have even length".into()));
    }
    Ok((0..bits.len() / 2)
        .map(|k| match (bits.get(2 * k), bits.get(2 * k + 1)) {
            (false, false) => 0,
            (false, true) => 1,
            (true, true) => 2,
            (true, false) => 3,
        })
        .collect())
}

pub fn build_quaternary_hadamard(gamma: usize, delta: usize) -> Result<HadamardCodeZ4> {
    HadamardCodeZ4::new(gamma, delta)
}

pub fn quaternary_info_set(gamma: usize, delta: usize) -> Result<(Vec<usize>, Vec<Vec<u8>>)> {
    Ok(HadamardCodeZ4::new(gamma, delta)?.q_info_set_with_labels())
}

pub fn binary_info_set(code: &HadamardCodeZ4) -> Vec<usize> {
    code.binary_info_set.clone()
}

/// `Φ(τ)`: moves the pair `(2k-1, 2k)` to `(2τ(k)-1, 2τ(k))`.
pub fn phi_lift_permutation(tau: &Permutation) -> Permutation {
    let image = (0..tau.len())
        .flat_map(|k| {
            let j = tau.apply0(k);
            [2 * j, 2 * j + 1]
        })
        .collect();
    Permutation::from_zero_based(image).expect("lift of a permutation is a permutation")
}

/// τ with `Φ(τ) = p`, if `p` is a Gray lift.
pub fn gray_unlift(p: &Permutation) -> Option<Permutation> {
    if !p.len().is_multiple_of(2) {
        return None;
    }
    let mut image = Vec::with_capacity(p.len() / 2);
    for k in 0..p.len() / 2 {
        let (a, b) = (p.apply0(2 * k), p.apply0(2 * k + 1));
        if a % 2 != 0 || b != a + 1 {
            return None;
        }
        image.push(a / 2);
    }
    Permutation::from_zero_based(image).ok()
}

/// σ with `σ(i) = j` iff `w_j = w_i·M`. With this convention
/// `perm(MN) = perm(N) ∘ perm(M)`.
pub fn z4_matrix_to_permutation(code: &HadamardCodeZ4, m: &Z4Matrix) -> Result<Permutation> {
    let k = code.gamma + code.delta;
    if m.nrows() != k || m.ncols() != k {
        return Err(Error::DimensionMismatch(format!(
            "expected {k}x{k}, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let image = (1..=code.beta())
        .map(|i| {
            code.position_of_label(&m.left_mul_vec(&code.label(i)))
                .ok_or_else(|| Error::NotAutomorphism(format!("label of position {i} is not mapped to a label")))
        })
        .collect::<Result<Vec<usize>>>()?;
    Permutation::from_images(&image).map_err(|_| Error::NotAutomorphism("labels are not permuted".into()))
}

pub fn systematic_encode_z4(code: &HadamardCodeZ4, values: &BitVector) -> Result<BitVector> {
    code.encode_systematic(values)
}
