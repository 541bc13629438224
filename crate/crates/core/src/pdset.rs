//! PD-sets independent of the code family: the container type, the
//! Gordon–Schönheim bound, the exhaustive verifier, prefixes and doubling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{AnyCode, CodeDescriptor, SystematicCode};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::perm::Permutation;
use crate::z4::{LBlockShape, Z4Matrix};

pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// Largest `m` accepted by [`hadamard_bounds`].
pub const MAX_BOUNDS_M: u32 = 16;

/// Largest `s` tabulated in a [`BoundsReport`].
pub const BOUNDS_TABLE_CAP: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Explicit,
    Recursive,
    Manual,
}

/// Matrices that induce the permutations of a PD-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdMatrices {
    Binary(Vec<BitMatrix>),
    Z4 {
        shape: LBlockShape,
        matrices: Vec<Z4Matrix>,
    },
}

/// Quaternary-level data of a PD-set for a Z4-linear code: the permutations
/// τ with `Φ(τ)` in the binary set, and the quaternary information set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternaryLevel {
    pub perms: Vec<Permutation>,
    pub info_set: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PdSet {
    pub code: CodeDescriptor,
    pub n: usize,
    pub perms: Vec<Permutation>,
    /// 1-based binary information positions.
    pub info_set: Vec<usize>,
    pub s: usize,
    pub provenance: Provenance,
    /// Construction history, oldest first.
    pub derivation: Vec<String>,
    pub matrices: Option<PdMatrices>,
    pub quaternary: Option<QuaternaryLevel>,
}

impl PdSet {
    /// Builds a PD-set for `code`, checking that every permutation is an
    /// automorphism and that there are at least `s + 1` of them.
    pub fn new(
        code: &dyn SystematicCode,
        perms: Vec<Permutation>,
        s: usize,
        provenance: Provenance,
        derivation: Vec<String>,
    ) -> Result<Self> {
        let pd = PdSet {
            code: code.descriptor(),
            n: code.length(),
            perms,
            info_set: code.info_set().to_vec(),
            s,
            provenance,
            derivation,
            matrices: None,
            quaternary: None,
        };
        pd.check_against(code)?;
        Ok(pd)
    }

    /// Validates sizes and automorphisms against `code`.
    pub fn check_against(&self, code: &dyn SystematicCode) -> Result<()> {
        if self.perms.len() < self.s + 1 {
            return Err(Error::InvalidParameter(format!(
                "{} permutations cannot form a {}-PD-set",
                self.perms.len(),
                self.s
            )));
        }
        if self.n != code.length() {
            return Err(Error::LengthMismatch {
                expected: code.length(),
                got: self.n,
            });
        }
        for (k, p) in self.perms.iter().enumerate() {
            if p.len() != self.n {
                return Err(Error::LengthMismatch {
                    expected: self.n,
                    got: p.len(),
                });
            }
            if !code.is_automorphism(p) {
                return Err(Error::NotAutomorphism(format!(
                    "permutation {k} does not preserve the code"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i + 1) as u128,
            None => return u128::MAX,
        };
    }
    acc
}

/// `⌈n/r ⌈(n-1)/(r-1) ⌈ ... ⌈(n-t+1)/(r-t+1)⌉ ... ⌉⌉⌉` with `r = n - k`,
/// evaluated from the innermost ceiling outwards.
pub fn gordon_schonheim(n: u64, k: u64, t: u64) -> Result<u128> {
    if t == 0 || k > n || n - k < t {
        return Err(Error::InvalidParameter(format!(
            "need n - k >= t >= 1, got n={n}, k={k}, t={t}"
        )));
    }
    let r = n - k;
    let mut v: u128 = 1;
    for i in (0..t).rev() {
        let num = ((n - i) as u128)
            .checked_mul(v)
            .ok_or_else(|| Error::InvalidParameter("bound overflows u128".into()))?;
        v = num.div_ceil((r - i) as u128);
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub m: u32,
    pub n: u64,
    pub k: u64,
    pub t_m: u64,
    /// `(s, g_m(s))` for `s = 1 ..= min(t_m, 1024)`.
    pub g_m: Vec<(u64, u128)>,
    pub f_m: u64,
}

/// `⌊(2^m - m - 1) / (m + 1)⌋`.
pub fn f_m_closed_form(m: u32) -> u64 {
    let n = 1u64 << m;
    (n - m as u64 - 1) / (m as u64 + 1)
}

/// Bound table for the binary Hadamard code of length `2^m`, with `f_m`
/// computed both by search and by closed form.
pub fn hadamard_bounds(m: u32) -> Result<BoundsReport> {
    if !(4..=MAX_BOUNDS_M).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "m must be in 4..={MAX_BOUNDS_M}, got {m}"
        )));
    }
    let n = 1u64 << m;
    let k = m as u64 + 1;
    let t_m = (1u64 << (m - 2)) - 1;
    let g = |s: u64| gordon_schonheim(n, k, s);
    let g_m = (1..=t_m.min(BOUNDS_TABLE_CAP))
        .map(|s| g(s).map(|v| (s, v)))
        .collect::<Result<Vec<_>>>()?;
    let mut s = 2;
    while s <= t_m && g(s)? == s as u128 + 1 {
        s += 1;
    }
    let searched = s - 1;
    let closed = f_m_closed_form(m);
    if searched != closed {
        return Err(Error::InconsistentBound(format!(
            "f_{m}: search gives {searched}, closed form gives {closed}"
        )));
    }
    Ok(BoundsReport {
        m,
        n,
        k,
        t_m,
        g_m,
        f_m: closed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceOptions {
    /// Maximum number of s-subsets to enumerate.
    pub budget: u128,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            budget: DEFAULT_BUDGET,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceOutcome {
    pub passed: bool,
    /// Lexicographically least s-subset (1-based) that no permutation moves
    /// off the information set.
    pub witness: Option<Vec<usize>>,
    pub subsets: u128,
}

/// For every position, the set of permutations that send it into the
/// information set, as a bitmask over permutation indices.
struct HitTable {
    words: usize,
    rows: Vec<u64>,
    full: Vec<u64>,
}

impl HitTable {
    fn new(n: usize, perms: &[Permutation], info_set: &[usize]) -> Self {
        let mut in_info = vec![false; n];
        for &i in info_set {
            in_info[i - 1] = true;
        }
        let words = perms.len().div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for (k, p) in perms.iter().enumerate() {
            for pos in 0..n {
                if in_info[p.apply0(pos)] {
                    rows[pos * words + k / 64] |= 1 << (k % 64);
                }
            }
        }
        let mut full = vec![0u64; words];
        for k in 0..perms.len() {
            full[k / 64] |= 1 << (k % 64);
        }
        HitTable { words, rows, full }
    }

    fn row(&self, pos: usize) -> &[u64] {
        &self.rows[pos * self.words..(pos + 1) * self.words]
    }
}

/// Depth-first search in lexicographic order below a fixed prefix. `acc`
/// holds one OR-accumulator per depth.
fn search(table: &HitTable, n: usize, s: usize, prefix: &mut Vec<usize>, acc: &mut [Vec<u64>]) -> Option<Vec<usize>> {
    let depth = prefix.len();
    let start = prefix.last().map_or(0, |&p| p + 1);
    let w = table.words;
    for p in start..=n - (s - depth) {
        let (head, tail) = acc.split_at_mut(depth + 1);
        let cur = &mut tail[0];
        for (c, (a, r)) in cur.iter_mut().zip(head[depth].iter().zip(table.row(p))) {
            *c = a | r;
        }
        if cur[..w] == table.full[..] {
            // every completion fails; the smallest one is the next positions in order
            let mut witness = prefix.clone();
            witness.extend(p..p + (s - depth));
            return Some(witness);
        }
        if depth + 1 < s {
            prefix.push(p);
            let found = search(table, n, s, prefix, acc);
            prefix.pop();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Checks that every s-subset of `{1..n}` is moved off `info_set` by some
/// permutation.
pub fn verify_pd_property(
    n: usize,
    perms: &[Permutation],
    info_set: &[usize],
    s: usize,
    opts: &BruteForceOptions,
) -> Result<BruteForceOutcome> {
    if s > n {
        return Err(Error::InvalidParameter(format!("s = {s} exceeds n = {n}")));
    }
    if info_set.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::InvalidParameter("information position out of range".into()));
    }
    if let Some(p) = perms.iter().find(|p| p.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            got: p.len(),
        });
    }
    let required = binomial(n as u64, s as u64);
    if required > opts.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }
    if s == 0 {
        let passed = !perms.is_empty();
        return Ok(BruteForceOutcome {
            passed,
            witness: (!passed).then(Vec::new),
            subsets: 1,
        });
    }
    let table = HitTable::new(n, perms, info_set);
    let run = || {
        (0..=n - s).into_par_iter().find_map_first(|first| {
            let mut acc = vec![vec![0u64; table.words]; s + 1];
            for (c, r) in acc[1].iter_mut().zip(table.row(first)) {
                *c = *r;
            }
            if acc[1] == table.full {
                return Some((first..first + s).collect::<Vec<_>>());
            }
            if s == 1 {
                return None;
            }
            let mut prefix = vec![first];
            search(&table, n, s, &mut prefix, &mut acc)
        })
    };
    let witness = match opts.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    Ok(BruteForceOutcome {
        passed: witness.is_none(),
        witness: witness.map(|w| w.into_iter().map(|p| p + 1).collect()),
        subsets: required,
    })
}

/// Exhaustive check of the PD property of `pdset` at `s`.
pub fn verify_bruteforce(pdset: &PdSet, s: usize, opts: &BruteForceOptions) -> Result<BruteForceOutcome> {
    verify_pd_property(pdset.n, &pdset.perms, &pdset.info_set, s, opts)
}

/// The first `k + 1` permutations of a minimum-size s-PD-set, as a k-PD-set.
pub fn nested_subsets(pdset: &PdSet, k: usize) -> Result<PdSet> {
    if pdset.perms.len() != pdset.s + 1 {
        return Err(Error::NotApplicable(format!(
            "nesting needs exactly s + 1 = {} permutations, found {}",
            pdset.s + 1,
            pdset.perms.len()
        )));
    }
    if k > pdset.s {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds s = {}", pdset.s)));
    }
    let mut out = pdset.clone();
    out.perms.truncate(k + 1);
    out.s = k;
    out.derivation.push(format!("prefix({})", k + 1));
    out.matrices = match &pdset.matrices {
        Some(PdMatrices::Binary(ms)) => Some(PdMatrices::Binary(ms[..=k].to_vec())),
        Some(PdMatrices::Z4 { shape, matrices }) => Some(PdMatrices::Z4 {
            shape: *shape,
            matrices: matrices[..=k].to_vec(),
        }),
        None => None,
    };
    if let Some(q) = &mut out.quaternary {
        q.perms.truncate(k + 1);
    }
    Ok(out)
}

/// `(S|S)`: each σ becomes `(σ|σ)` on twice the length, for the doubled code
/// with information set `I ∪ {min(I) + n}`.
pub fn double_pdset(code: &AnyCode, pdset: &PdSet) -> Result<(AnyCode, PdSet)> {
    if pdset.code != code.descriptor() {
        return Err(Error::InvalidParameter("PD-set does not belong to this code".into()));
    }
    let doubled = match code {
        AnyCode::Binary(c) => AnyCode::Binary(c.doubled()?),
        AnyCode::Z4(c) => AnyCode::Z4(c.doubled()?),
    };
    let n = pdset.n;
    let mut info = pdset.info_set.clone();
    info.push(info.iter().min().copied().unwrap_or(1) + n);
    info.sort_unstable();
    let mut expected = doubled.info_set().to_vec();
    expected.sort_unstable();
    debug_assert_eq!(info, expected);

    let perms = pdset.perms.iter().map(|p| p.repeat(2)).collect();
    let mut derivation = pdset.derivation.clone();
    derivation.push("double".into());
    let mut out = PdSet::new(&doubled, perms, pdset.s, Provenance::Recursive, derivation)?;
    out.quaternary = pdset.quaternary.as_ref().map(|q| {
        let beta = n / 2;
        let mut qi = q.info_set.clone();
        qi.push(qi.iter().min().copied().unwrap_or(1) + beta);
        QuaternaryLevel {
            perms: q.perms.iter().map(|t| t.repeat(2)).collect(),
            info_set: qi,
        }
    });
    Ok((doubled, out))
}
