//! Dense bit-packed linear algebra over GF(2) and arithmetic in GF(2^m).

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A binary vector packed into 64-bit words. Bit `i` (0-based) lives in word
/// `i / 64` at position `i % 64`; unused high bits of the last word are zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_tail();
        v
    }

    /// Unit vector with a one at 0-based index `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        BitVector { len, words }
    }

    /// Low `len` bits of `mask`, bit 0 first.
    pub fn from_u64(mask: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask;
            v.clear_tail();
        }
        v
    }

    /// The first (up to) 64 bits as an integer, bit 0 first.
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / WORD];
        if b {
            *w |= 1 << (i % WORD);
        } else {
            *w &= !(1 << (i % WORD));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Hamming distance.
    pub fn distance(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// 0-based indices of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD + b);
                w &= w - 1;
            }
        }
        out
    }

    /// The bits at the given 0-based positions, in order.
    pub fn restrict(&self, positions: &[usize]) -> BitVector {
        BitVector::from_bits(positions.iter().map(|&p| self.get(p)))
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        BitVector::from_bits(self.iter().chain(other.iter()))
    }

    /// Parses a digit string such as `"11100"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::Parse(format!("invalid binary digit {c:?}"))),
            }
        }
        Ok(BitVector::from_bits(bits))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVector::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Convenience for literal tables; panics on ragged input.
    pub fn from_u8_rows(rows: &[&[u8]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| BitVector::from_bits(r.iter().map(|&b| b & 1 == 1)))
            .collect();
        BitMatrix::from_rows(rows).expect("ragged matrix literal")
    }

    /// Parses the one-row-per-line digit format.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(BitVector::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b)
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bits(self.rows.iter().map(|r| r.get(c)))
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix {
            cols: self.nrows(),
            rows: (0..self.cols).map(|c| self.column(c)).collect(),
        }
    }

    /// Row vector times matrix: the XOR of the rows selected by `v`.
    pub fn left_mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.nrows(), "vector/matrix dimension mismatch");
        let mut acc = BitVector::zeros(self.cols);
        for i in v.support() {
            acc.xor_assign(&self.rows[i]);
        }
        acc
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        Ok(BitMatrix {
            cols: other.cols,
            rows: self.rows.iter().map(|r| other.left_mul_vec(r)).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse; pivots on the first row with a set bit.
    pub fn inverse(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.cols;
        let mut a = self.rows.clone();
        let mut inv = BitMatrix::identity(n).rows;
        for c in 0..n {
            let p = (c..n).find(|&r| a[r].get(c)).ok_or(Error::SingularMatrix)?;
            a.swap(c, p);
            inv.swap(c, p);
            let (pa, pi) = (a[c].clone(), inv[c].clone());
            for r in 0..n {
                if r != c && a[r].get(c) {
                    a[r].xor_assign(&pa);
                    inv[r].xor_assign(&pi);
                }
            }
        }
        Ok(BitMatrix { cols: n, rows: inv })
    }

    /// Block-diagonal `diag(self, Id_k)`.
    pub fn extend_identity(&self, k: usize) -> BitMatrix {
        let n = self.cols + k;
        let mut rows = Vec::with_capacity(self.nrows() + k);
        for r in &self.rows {
            rows.push(BitVector::from_bits(r.iter().chain(std::iter::repeat_n(false, k))));
        }
        for i in 0..k {
            rows.push(BitVector::unit(n, self.cols + i));
        }
        BitMatrix { cols: n, rows }
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows(), self.cols)?;
        write!(f, "{self}")
    }
}

/// Inverts `M` over GF(2).
pub fn gf2_mat_inv(m: &BitMatrix) -> Result<BitMatrix> {
    m.inverse()
}

/// The star map: row 1 unchanged, row `i` replaced by `row_1 + row_i`.
pub fn star_binary(m: &BitMatrix) -> BitMatrix {
    let mut out = m.clone();
    if let Some(first) = m.rows.first() {
        for row in out.rows.iter_mut().skip(1) {
            row.xor_assign(first);
        }
    }
    out
}

/// One primitive polynomial per degree 2..=20: minimum weight, then least as
/// an integer. Bit `k` is the coefficient of `x^k`.
pub const PRIMITIVE_POLYS: [(u32, u64); 19] = [
    (2, 0x7),
    (3, 0xb),
    (4, 0x13),
    (5, 0x25),
    (6, 0x43),
    (7, 0x83),
    (8, 0x11d),
    (9, 0x211),
    (10, 0x409),
    (11, 0x805),
    (12, 0x1053),
    (13, 0x201b),
    (14, 0x402b),
    (15, 0x8003),
    (16, 0x1002d),
    (17, 0x20009),
    (18, 0x40081),
    (19, 0x80027),
    (20, 0x100009),
];

pub const MAX_FIELD_DEGREE: u32 = 20;

/// Default primitive polynomial of degree `m` (x + 1 for m = 1).
pub fn default_primitive_poly(m: u32) -> Result<u64> {
    if m == 1 {
        return Ok(0b11);
    }
    PRIMITIVE_POLYS
        .iter()
        .find(|(d, _)| *d == m)
        .map(|&(_, p)| p)
        .ok_or_else(|| Error::InvalidParameter(format!("no built-in primitive polynomial of degree {m}")))
}

/// Degree of a nonzero binary polynomial mask.
pub fn poly_degree(poly: u64) -> Option<u32> {
    (poly != 0).then(|| 63 - poly.leading_zeros())
}

/// Parses a coefficient string, low degree first (`"11001"` is 1 + x + x^4).
pub fn parse_poly(s: &str) -> Result<u64> {
    let s = s.trim();
    if s.is_empty() || s.len() > 63 {
        return Err(Error::Parse(format!("bad polynomial {s:?}")));
    }
    let mut poly = 0u64;
    for (k, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => poly |= 1 << k,
            _ => return Err(Error::Parse(format!("invalid coefficient {c:?}"))),
        }
    }
    Ok(poly)
}

pub fn format_poly(poly: u64) -> String {
    let d = poly_degree(poly).unwrap_or(0);
    (0..=d).map(|k| if poly >> k & 1 == 1 { '1' } else { '0' }).collect()
}

/// GF(2^m) = GF(2)[x]/(f) with α the class of x. Elements are `u32` masks,
/// bit `k` the coefficient of α^k.
#[derive(Clone, Debug)]
pub struct GaloisField {
    m: u32,
    poly: u64,
    alpha_powers: Vec<u32>,
    log: Vec<u32>,
}

impl GaloisField {
    /// Field over the built-in primitive polynomial of degree `m`.
    pub fn new(m: u32) -> Result<Self> {
        Self::with_poly(m, default_primitive_poly(m)?)
    }

    /// Field over `poly`, which must be primitive of degree `m`.
    pub fn with_poly(m: u32, poly: u64) -> Result<Self> {
        if m == 0 || m > MAX_FIELD_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "field degree {m} out of range 1..={MAX_FIELD_DEGREE}"
            )));
        }
        if poly_degree(poly) != Some(m) {
            return Err(Error::InvalidParameter(format!(
                "polynomial {} does not have degree {m}",
                format_poly(poly)
            )));
        }
        let order = (1usize << m) - 1;
        let mut alpha_powers = Vec::with_capacity(order);
        let mut log = vec![u32::MAX; 1 << m];
        let mut x: u64 = 1;
        for e in 0..order {
            if log[x as usize] != u32::MAX || x == 0 {
                return Err(Error::NotPrimitive(format_poly(poly)));
            }
            log[x as usize] = e as u32;
            alpha_powers.push(x as u32);
            x <<= 1;
            if x >> m & 1 == 1 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive(format_poly(poly)));
        }
        Ok(GaloisField {
            m,
            poly,
            alpha_powers,
            log,
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> u64 {
        self.poly
    }

    /// Multiplicative order 2^m - 1.
    pub fn order(&self) -> usize {
        self.alpha_powers.len()
    }

    /// α^e as a mask, with `e` reduced mod 2^m - 1.
    pub fn pow(&self, e: u64) -> u32 {
        self.alpha_powers[(e % self.order() as u64) as usize]
    }

    pub fn alpha_powers(&self) -> &[u32] {
        &self.alpha_powers
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: u32) -> Option<u32> {
        self.log.get(a as usize).copied().filter(|&l| l != u32::MAX)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match (self.log(a), self.log(b)) {
            (Some(x), Some(y)) => self.pow(x as u64 + y as u64),
            _ => 0,
        }
    }

    /// Coefficient vector of an element, low degree first.
    pub fn to_bits(&self, a: u32) -> BitVector {
        BitVector::from_u64(a as u64, self.m as usize)
    }

    /// Formats an element as its coefficient string.
    pub fn format(&self, a: u32) -> String {
        self.to_bits(a).to_string()
    }
}

/// α^e as a coefficient vector in the basis 1, x, ..., x^{m-1}.
pub fn gf2m_power(ctx: &GaloisField, e: u64) -> BitVector {
    ctx.to_bits(ctx.pow(e))
}
