//! The systematic-code interface shared by the binary and Z4-linear Hadamard
//! codes, and a serializable descriptor used by the file formats.

use serde::{Deserialize, Serialize};

use crate::code_binary::HadamardCodeBinary;
use crate::code_z4::{parse_steps, HadamardCodeZ4};
use crate::error::{Error, Result};
use crate::gf2::{parse_poly, BitVector};
use crate::perm::Permutation;

/// Largest `log2 |C|` for which [`SystematicCode::codewords`] will enumerate.
pub const MAX_ENUMERATION_DIM: usize = 24;

/// A binary code of size `2^k` with a known information set and a
/// re-encoding map from information bits to codewords.
pub trait SystematicCode: Sync {
    /// Code length `n`.
    fn length(&self) -> usize;

    /// `k` with `|C| = 2^k`.
    fn dimension(&self) -> usize;

    /// 1-based information positions, in the order the encoder reads them.
    fn info_set(&self) -> &[usize];

    /// Number of errors the code corrects, `floor((d - 1) / 2)`.
    fn error_capability(&self) -> usize;

    /// The unique codeword whose restriction to the information set is `values`.
    fn encode_systematic(&self, values: &BitVector) -> Result<BitVector>;

    fn descriptor(&self) -> CodeDescriptor;

    /// 0-based copy of the information set.
    fn info_set0(&self) -> Vec<usize> {
        self.info_set().iter().map(|&i| i - 1).collect()
    }

    fn contains(&self, word: &BitVector) -> bool {
        if word.len() != self.length() {
            return false;
        }
        self.encode_systematic(&word.restrict(&self.info_set0()))
            .is_ok_and(|c| &c == word)
    }

    /// All `2^k` codewords, in order of their information values.
    fn codewords(&self) -> Vec<BitVector> {
        let k = self.dimension();
        assert!(k <= MAX_ENUMERATION_DIM, "refusing to enumerate 2^{k} codewords");
        (0..1u64 << k)
            .map(|v| {
                self.encode_systematic(&BitVector::from_u64(v, k))
                    .expect("information set is valid")
            })
            .collect()
    }

    /// Whether `σ(C) = C`. The default checks every codeword.
    fn is_automorphism(&self, p: &Permutation) -> bool {
        p.len() == self.length() && self.codewords().iter().all(|c| self.contains(&p.act(c)))
    }
}

/// Identifies a code so it can be rebuilt from a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CodeDescriptor {
    /// `H_m` in α-power column order, optionally doubled `(G | G ; 0 | 1)`
    /// `doublings` times.
    Binary {
        m: u32,
        #[serde(default)]
        doublings: u32,
        /// Primitive polynomial as a low-degree-first coefficient string.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        poly: Option<String>,
    },
    /// `H_{γ,δ}`; `steps` records a non-canonical construction order as a
    /// word over `Q` (quadruple) and `D` (double).
    Z4 {
        gamma: usize,
        delta: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        steps: Option<String>,
    },
}

impl CodeDescriptor {
    pub fn build(&self) -> Result<AnyCode> {
        match self {
            CodeDescriptor::Binary { m, doublings, poly } => {
                let mut code = match poly {
                    Some(p) => HadamardCodeBinary::with_poly(*m, parse_poly(p)?)?,
                    None => HadamardCodeBinary::new(*m)?,
                };
                for _ in 0..*doublings {
                    code = code.doubled()?;
                }
                Ok(AnyCode::Binary(code))
            }
            CodeDescriptor::Z4 { gamma, delta, steps } => {
                let code = match steps {
                    Some(w) => HadamardCodeZ4::from_steps(&parse_steps(w)?)?,
                    None => HadamardCodeZ4::new(*gamma, *delta)?,
                };
                if (code.gamma(), code.delta()) != (*gamma, *delta) {
                    return Err(Error::InvalidParameter(
                        "construction steps do not match (gamma, delta)".into(),
                    ));
                }
                Ok(AnyCode::Z4(code))
            }
        }
    }

    /// `log2` of the binary length.
    pub fn log_length(&self) -> usize {
        match self {
            CodeDescriptor::Binary { m, doublings, .. } => (m + doublings) as usize,
            CodeDescriptor::Z4 { gamma, delta, .. } => gamma + 2 * delta - 1,
        }
    }
}

/// Either kind of Hadamard code behind one type.
#[derive(Clone, Debug)]
pub enum AnyCode {
    Binary(HadamardCodeBinary),
    Z4(HadamardCodeZ4),
}

impl AnyCode {
    pub fn as_binary(&self) -> Result<&HadamardCodeBinary> {
        match self {
            AnyCode::Binary(c) => Ok(c),
            AnyCode::Z4(_) => Err(Error::InvalidParameter("expected a binary code".into())),
        }
    }

    pub fn as_z4(&self) -> Result<&HadamardCodeZ4> {
        match self {
            AnyCode::Z4(c) => Ok(c),
            AnyCode::Binary(_) => Err(Error::InvalidParameter("expected a Z4-linear code".into())),
        }
    }

    fn inner(&self) -> &dyn SystematicCode {
        match self {
            AnyCode::Binary(c) => c,
            AnyCode::Z4(c) => c,
        }
    }
}

impl SystematicCode for AnyCode {
    fn length(&self) -> usize {
        self.inner().length()
    }
    fn dimension(&self) -> usize {
        self.inner().dimension()
    }
    fn info_set(&self) -> &[usize] {
        self.inner().info_set()
    }
    fn error_capability(&self) -> usize {
        self.inner().error_capability()
    }
    fn encode_systematic(&self, values: &BitVector) -> Result<BitVector> {
        self.inner().encode_systematic(values)
    }
    fn descriptor(&self) -> CodeDescriptor {
        self.inner().descriptor()
    }
    fn contains(&self, word: &BitVector) -> bool {
        self.inner().contains(word)
    }
    fn is_automorphism(&self, p: &Permutation) -> bool {
        self.inner().is_automorphism(p)
    }
}

/// `2^{m-2} - 1` for a Hadamard code of length `2^m`.
pub fn hadamard_error_capability(m: usize) -> usize {
    if m < 2 {
        0
    } else {
        (1usize << (m - 2)) - 1
    }
}
