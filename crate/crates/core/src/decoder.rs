//! Permutation decoding and a seeded error-injection simulator.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::SystematicCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::pdset::PdSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecodeStatus {
    Decoded,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    pub codeword: Option<BitVector>,
    /// Index of the accepting permutation.
    pub perm_index: Option<usize>,
    /// Distance between the received word and the returned codeword.
    pub distance: Option<usize>,
}

impl DecodeResult {
    pub fn is_decoded(&self) -> bool {
        self.status == DecodeStatus::Decoded
    }
}

/// Tries each σ in order: re-encodes `σ(y)` from its information positions
/// and accepts when the result is within `t` of `σ(y)`.
pub fn perm_decode(code: &dyn SystematicCode, pdset: &PdSet, y: &BitVector) -> Result<DecodeResult> {
    let n = code.length();
    if y.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: y.len(),
        });
    }
    if pdset.n != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: pdset.n,
        });
    }
    let info = code.info_set0();
    if pdset.info_set != code.info_set() {
        return Err(Error::InvalidParameter(
            "PD-set information set differs from the code's".into(),
        ));
    }
    let t = code.error_capability();
    for (k, sigma) in pdset.perms.iter().enumerate() {
        let u = sigma.act(y);
        let c = code.encode_systematic(&u.restrict(&info))?;
        let d = u.distance(&c);
        if d <= t {
            return Ok(DecodeResult {
                status: DecodeStatus::Decoded,
                codeword: Some(sigma.inverse().act(&c)),
                perm_index: Some(k),
                distance: Some(d),
            });
        }
    }
    Ok(DecodeResult {
        status: DecodeStatus::Failed,
        codeword: None,
        perm_index: None,
        distance: None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightStats {
    pub weight: usize,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelStats {
    pub seed: u64,
    pub trials: u64,
    pub rows: Vec<WeightStats>,
}

/// The generator for one trial; depends only on the seed, the weight and
/// the trial index.
fn trial_rng(seed: u64, weight: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((weight as u64) << 40 | trial);
    rng
}

/// For each weight, decodes `trials` random codewords hit by random errors
/// of exactly that weight and counts exact recoveries.
pub fn simulate_channel(
    code: &dyn SystematicCode,
    pdset: &PdSet,
    weights: &[usize],
    trials: u64,
    seed: u64,
) -> Result<ChannelStats> {
    let n = code.length();
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if let Some(&w) = weights.iter().find(|&&w| w > n) {
        return Err(Error::InvalidParameter(format!("weight {w} exceeds length {n}")));
    }
    let k = code.dimension();
    let mut rows = Vec::with_capacity(weights.len());
    for &w in weights {
        let successes: u64 = (0..trials)
            .into_par_iter()
            .map(|trial| -> Result<u64> {
                let mut rng = trial_rng(seed, w, trial);
                let values = BitVector::from_bits((0..k).map(|_| rng.gen::<bool>()));
                let x = code.encode_systematic(&values)?;
                let mut y = x.clone();
                for p in sample(&mut rng, n, w) {
                    y.flip(p);
                }
                let r = perm_decode(code, pdset, &y)?;
                Ok((r.codeword.as_ref() == Some(&x)) as u64)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        rows.push(WeightStats {
            weight: w,
            trials,
            successes,
            rate: successes as f64 / trials as f64,
        });
    }
    Ok(ChannelStats { seed, trials, rows })
}

/// Nearest codeword by exhaustive search, `None` on a tie.
pub fn minimum_distance_decode(codewords: &[BitVector], y: &BitVector) -> Option<BitVector> {
    let mut best: Option<(usize, &BitVector)> = None;
    let mut tie = false;
    for c in codewords {
        let d = c.distance(y);
        match best {
            Some((bd, _)) if d > bd => {}
            Some((bd, _)) if d == bd => tie = true,
            _ => {
                best = Some((d, c));
                tie = false;
            }
        }
    }
    if tie {
        None
    } else {
        best.map(|(_, c)| c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code_binary::build_binary_hadamard;
    use crate::pdset_binary::construct_explicit_binary;

    fn setup() -> (crate::HadamardCodeBinary, PdSet) {
        let code = build_binary_hadamard(4).unwrap();
        let pd = construct_explicit_binary(&code).unwrap().pdset;
        (code, pd)
    }

    #[test]
    fn error_free_word_decodes_at_first_permutation() {
        let (code, pd) = setup();
        let x = code.codewords()[7].clone();
        let r = perm_decode(&code, &pd, &x).unwrap();
        assert_eq!(r.status, DecodeStatus::Decoded);
        assert_eq!(r.perm_index, Some(0));
        assert_eq!(r.distance, Some(0));
        assert_eq!(r.codeword, Some(x));
    }

    #[test]
    fn errors_inside_the_information_set() {
        let (code, pd) = setup();
        let mut y = BitVector::zeros(16);
        y.flip(0);
        y.flip(1);
        let r = perm_decode(&code, &pd, &y).unwrap();
        assert!(r.is_decoded());
        assert_eq!(r.codeword, Some(BitVector::zeros(16)));
        assert_eq!(
            minimum_distance_decode(&code.codewords(), &y),
            Some(BitVector::zeros(16))
        );
    }

    #[test]
    fn length_is_checked() {
        let (code, pd) = setup();
        assert!(matches!(
            perm_decode(&code, &pd, &BitVector::zeros(15)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn decoder_agrees_with_nearest_codeword_when_it_decodes() {
        let (code, pd) = setup();
        let words = code.codewords();
        for x in words.iter().step_by(5) {
            for e in 0..1u32 << 16 {
                if e % 97 != 0 {
                    continue;
                }
                let y = x.xor(&BitVector::from_u64(e as u64, 16));
                let r = perm_decode(&code, &pd, &y).unwrap();
                if let Some(c) = r.codeword {
                    assert!(c.distance(&y) <= code.error_capability());
                    assert_eq!(Some(c), minimum_distance_decode(&words, &y));
                }
            }
        }
    }

    #[test]
    fn simulation_is_deterministic_and_complete_up_to_s() {
        let (code, pd) = setup();
        let a = simulate_channel(&code, &pd, &[0, 1, 2, 8], 200, 11).unwrap();
        let b = simulate_channel(&code, &pd, &[0, 1, 2, 8], 200, 11).unwrap();
        assert_eq!(a, b);
        for row in &a.rows[..3] {
            assert_eq!(row.successes, row.trials);
        }
        assert!(a.rows[3].rate < 1.0);
        let c = simulate_channel(&code, &pd, &[3], 200, 12).unwrap();
        assert!(c.rows[0].successes <= 200);
        assert!(simulate_channel(&code, &pd, &[17], 1, 0).is_err());
    }
}
