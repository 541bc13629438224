//! PD-sets for the binary Hadamard code from invertible matrices with first
//! column `e_1`, which act on the column labels by right multiplication.

use std::collections::HashSet;

use crate::code::SystematicCode;
use crate::code_binary::HadamardCodeBinary;
use crate::error::{Error, Result};
use crate::gf2::{star_binary, BitMatrix, BitVector, GaloisField};
use crate::pdset::{f_m_closed_form, PdMatrices, PdSet, Provenance};
use crate::perm::Permutation;

fn check_in_paut(m: &BitMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotInPAut(format!("{}x{} is not square", m.nrows(), m.ncols())));
    }
    if m.column(0) != BitVector::unit(m.nrows(), 0) {
        return Err(Error::NotInPAut("first column is not e_1".into()));
    }
    if m.rank() != m.nrows() {
        return Err(Error::NotInPAut("singular".into()));
    }
    Ok(())
}

/// True iff the rows of all `(M_i^{-1})*` are pairwise distinct, which for
/// `s + 1` matrices is exactly the s-PD property on `{1, ..., m+1}`.
pub fn verify_criterion_binary(matrices: &[BitMatrix]) -> Result<bool> {
    let mut seen = HashSet::new();
    for m in matrices {
        check_in_paut(m)?;
        if m.nrows() != matrices[0].nrows() {
            return Err(Error::DimensionMismatch("matrices of different sizes".into()));
        }
        for row in star_binary(&m.inverse()?).rows() {
            if !seen.insert(row.clone()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// σ with `σ(i) = j` iff `w_j = w_i·M`. Then `perm(MN) = perm(N) ∘ perm(M)`.
pub fn binary_matrix_to_permutation(code: &HadamardCodeBinary, m: &BitMatrix) -> Result<Permutation> {
    check_in_paut(m)?;
    let k = code.dimension();
    if m.nrows() != k {
        return Err(Error::DimensionMismatch(format!(
            "expected {k}x{k}, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let row_masks: Vec<u64> = m.rows().iter().map(BitVector::to_u64).collect();
    let image = code
        .label_masks()
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let target = (0..k)
                .filter(|&r| w >> r & 1 == 1)
                .fold(0u64, |acc, r| acc ^ row_masks[r]);
            code.position_of_label(target)
                .ok_or_else(|| Error::NotAutomorphism(format!("label of position {} has no image", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_images(&image)
}

/// The PD-set of `code` induced by criterion-checked matrices, with `s`
/// one less than the number of matrices.
pub fn pdset_from_binary_matrices(
    code: &HadamardCodeBinary,
    matrices: Vec<BitMatrix>,
    provenance: Provenance,
    derivation: Vec<String>,
) -> Result<PdSet> {
    if matrices.is_empty() {
        return Err(Error::InvalidParameter("no matrices".into()));
    }
    let perms = matrices
        .iter()
        .map(|m| binary_matrix_to_permutation(code, m))
        .collect::<Result<Vec<_>>>()?;
    let mut pd = PdSet::new(code, perms, matrices.len() - 1, provenance, derivation)?;
    pd.matrices = Some(PdMatrices::Binary(matrices));
    Ok(pd)
}

#[derive(Clone, Debug)]
pub struct ExplicitBinary {
    /// `N_0, ..., N_f`.
    pub n_matrices: Vec<BitMatrix>,
    /// `M_i = N_i^{-1}`, the matrices whose permutations form the PD-set.
    pub matrices: Vec<BitMatrix>,
    pub pdset: PdSet,
}

fn field_row(lead: bool, a: u32, m: u32) -> BitVector {
    BitVector::from_u64(lead as u64 | (a as u64) << 1, m as usize + 1)
}

/// The `f_m`-PD-set of size `f_m + 1` built from consecutive powers of α.
/// Row 0 of `N_i` is `(1, α^{(m+1)i-1})`; row j is
/// `(0, α^{(m+1)i+j-1} + α^{(m+1)i-1})`.
pub fn construct_explicit_binary(code: &HadamardCodeBinary) -> Result<ExplicitBinary> {
    let m = code.m();
    if code.doublings() != 0 {
        return Err(Error::InvalidParameter(
            "explicit construction needs an undoubled code".into(),
        ));
    }
    if m < 3 {
        return Err(Error::InvalidParameter(format!("m must be at least 3, got {m}")));
    }
    let gf = GaloisField::with_poly(m, code.poly())?;
    let f = f_m_closed_form(m);
    let mm = m as u64 + 1;
    assert!(f * mm + m as u64 - 1 <= (1u64 << m) - 2);
    let mut n_matrices = vec![BitMatrix::identity(m as usize + 1)];
    for i in 1..=f {
        let base = mm * i - 1;
        let lead = gf.pow(base);
        let mut rows = vec![field_row(true, lead, m)];
        rows.extend((1..=m as u64).map(|j| field_row(false, gf.pow(base + j) ^ lead, m)));
        n_matrices.push(BitMatrix::from_rows(rows)?);
    }
    let matrices = n_matrices
        .iter()
        .map(|n| {
            n.inverse()
                .map_err(|_| Error::InvalidParameter("N_i is singular".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let pdset = pdset_from_binary_matrices(
        code,
        matrices.clone(),
        Provenance::Explicit,
        vec![format!("explicit(m={m})")],
    )?;
    Ok(ExplicitBinary {
        n_matrices,
        matrices,
        pdset,
    })
}

/// `(M^{-1}(κ))^{-1}` for each M, where `A(κ) = diag(A, Id_κ)`.
pub fn extend_kappa_binary(matrices: &[BitMatrix], kappa: usize) -> Result<Vec<BitMatrix>> {
    if kappa == 0 {
        return Err(Error::InvalidParameter("kappa must be at least 1".into()));
    }
    matrices
        .iter()
        .map(|m| {
            check_in_paut(m)?;
            m.inverse()?.extend_identity(kappa).inverse()
        })
        .collect()
}
