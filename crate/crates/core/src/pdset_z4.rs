//! PD-sets for Z4-linear Hadamard codes. Matrices live in π(L) and act on
//! the quaternary column labels; their Gray lifts act on the binary image.

use std::collections::HashSet;

use crate::code::{AnyCode, SystematicCode};
use crate::code_z4::{gray_unlift, phi_lift_permutation, z4_matrix_to_permutation, HadamardCodeZ4};
use crate::error::{Error, Result};
use crate::gf2::{default_primitive_poly, poly_degree};
use crate::pdset::{
    double_pdset, verify_pd_property, BruteForceOptions, BruteForceOutcome, PdMatrices, PdSet, Provenance,
    QuaternaryLevel,
};
use crate::perm::Permutation;
use crate::z4::{
    extend_kappa_z4_matrix, hensel_lift_primitive, is_in_pi_l, pi_l_inverse, star_quaternary, GaloisRing, LBlockShape,
    Z4Matrix,
};

fn check_pi_l(m: &Z4Matrix, shape: LBlockShape) -> Result<()> {
    if is_in_pi_l(m, shape) {
        Ok(())
    } else {
        Err(Error::NotInPiL(format!(
            "matrix is not in π(L) for (gamma, delta) = ({}, {})",
            shape.gamma, shape.delta
        )))
    }
}

/// `⌊(2^{γ+2δ-2} - γ - δ) / (γ + δ)⌋`, clamped at 0.
pub fn f_gamma_delta(gamma: usize, delta: usize) -> u64 {
    let k = (gamma + delta) as u64;
    let top = 1u64 << (gamma + 2 * delta - 2);
    top.saturating_sub(k) / k
}

/// True iff the rows of all `(M_i^{-1})*` are pairwise distinct, inverses
/// taken in π(L).
pub fn verify_criterion_z4(matrices: &[Z4Matrix], shape: LBlockShape) -> Result<bool> {
    let mut seen = HashSet::new();
    for m in matrices {
        check_pi_l(m, shape)?;
        let star = star_quaternary(&pi_l_inverse(m, shape)?, shape);
        for row in star.row_vectors() {
            if !seen.insert(row) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Quaternary permutations induced by π(L) matrices.
pub fn quaternary_permutations(code: &HadamardCodeZ4, matrices: &[Z4Matrix]) -> Result<Vec<Permutation>> {
    matrices
        .iter()
        .map(|m| {
            check_pi_l(m, code.shape())?;
            z4_matrix_to_permutation(code, m)
        })
        .collect()
}

/// Every s-set of column labels is mapped off the quaternary information set
/// by some matrix.
pub fn verify_bruteforce_quaternary(
    code: &HadamardCodeZ4,
    matrices: &[Z4Matrix],
    s: usize,
    opts: &BruteForceOptions,
) -> Result<BruteForceOutcome> {
    let perms = quaternary_permutations(code, matrices)?;
    verify_pd_property(code.beta(), &perms, code.q_info_set(), s, opts)
}

/// Same check at the quaternary level for a PD-set that carries τ's.
pub fn verify_quaternary_level(pdset: &PdSet, s: usize, opts: &BruteForceOptions) -> Result<BruteForceOutcome> {
    let q = pdset
        .quaternary
        .as_ref()
        .ok_or_else(|| Error::NotApplicable("PD-set has no quaternary permutations".into()))?;
    verify_pd_property(pdset.n / 2, &q.perms, &q.info_set, s, opts)
}

/// The PD-set `Φ(P)` induced by π(L) matrices; `s` is one less than their number.
pub fn pdset_from_z4_matrices(
    code: &HadamardCodeZ4,
    matrices: Vec<Z4Matrix>,
    provenance: Provenance,
    derivation: Vec<String>,
) -> Result<PdSet> {
    if matrices.is_empty() {
        return Err(Error::InvalidParameter("no matrices".into()));
    }
    let taus = quaternary_permutations(code, &matrices)?;
    let perms = taus.iter().map(phi_lift_permutation).collect();
    let mut pd = PdSet::new(code, perms, matrices.len() - 1, provenance, derivation)?;
    pd.matrices = Some(PdMatrices::Z4 {
        shape: code.shape(),
        matrices,
    });
    pd.quaternary = Some(QuaternaryLevel {
        perms: taus,
        info_set: code.q_info_set().to_vec(),
    });
    Ok(pd)
}

#[derive(Clone, Debug)]
pub struct ExplicitZ4 {
    pub ring: GaloisRing,
    /// `N_0, ..., N_f` for `H_{0,δ}`.
    pub n_matrices: Vec<Z4Matrix>,
    /// `M_i = N_i^{-1}`.
    pub matrices: Vec<Z4Matrix>,
    /// The PD-set for `H_{0,δ}`.
    pub base: PdSet,
    /// The PD-set for `H_{γ,δ}`, obtained from `base` by γ doublings.
    pub pdset: PdSet,
    pub code: HadamardCodeZ4,
}

/// Splits the ordered ring `r_1, ..., r_{4^{δ-1}}` into blocks of δ; block i
/// gives `N_i` with row 1 `(1, r_{δi+1})` and row j `(0, r_{δi+j} - r_{δi+1})`.
pub fn construct_explicit_z4(gamma: usize, delta: usize) -> Result<ExplicitZ4> {
    construct_explicit_z4_with(gamma, delta, None)
}

/// As [`construct_explicit_z4`], lifting `f_poly` (degree δ-1) instead of the
/// built-in primitive polynomial.
pub fn construct_explicit_z4_with(gamma: usize, delta: usize, f_poly: Option<u64>) -> Result<ExplicitZ4> {
    if delta < 3 {
        return Err(Error::InvalidParameter(format!(
            "explicit Z4 construction needs delta >= 3 (got {delta}); the binary construction covers the linear cases"
        )));
    }
    let f_poly = match f_poly {
        Some(f) => f,
        None => default_primitive_poly((delta - 1) as u32)?,
    };
    if poly_degree(f_poly) != Some((delta - 1) as u32) {
        return Err(Error::InvalidParameter(format!(
            "polynomial must have degree {}",
            delta - 1
        )));
    }
    let ring = hensel_lift_primitive(f_poly)?;
    let r = ring.r_order();
    let f = f_gamma_delta(0, delta) as usize;
    assert!((f + 1) * delta <= r.len());
    let mut n_matrices = Vec::with_capacity(f + 1);
    for i in 0..=f {
        let lead = &r[delta * i];
        let mut rows = vec![std::iter::once(1u8).chain(lead.iter().copied()).collect::<Vec<u8>>()];
        for j in 1..delta {
            let diff = ring.sub(&r[delta * i + j], lead);
            rows.push(std::iter::once(0u8).chain(diff).collect());
        }
        n_matrices.push(Z4Matrix::from_rows(&rows)?);
    }
    let matrices = n_matrices.iter().map(Z4Matrix::inverse).collect::<Result<Vec<_>>>()?;
    let base_code = HadamardCodeZ4::new(0, delta)?;
    let base = pdset_from_z4_matrices(
        &base_code,
        matrices.clone(),
        Provenance::Explicit,
        vec![format!("explicit(gamma=0, delta={delta})")],
    )?;
    let mut code = AnyCode::Z4(base_code);
    let mut pdset = base.clone();
    for _ in 0..gamma {
        let (c, p) = double_pdset(&code, &pdset)?;
        code = c;
        pdset = p;
    }
    let code = match code {
        AnyCode::Z4(c) => c,
        AnyCode::Binary(_) => unreachable!(),
    };
    Ok(ExplicitZ4 {
        ring,
        n_matrices,
        matrices,
        base,
        pdset,
        code,
    })
}

/// `(M^{-1}(κ))^{-1}` with `Id_κ = Id_j ⊕ Id_i` split between the order-4
/// and order-2 bands; returns the matrices and their new shape.
pub fn extend_kappa_z4(
    matrices: &[Z4Matrix],
    shape: LBlockShape,
    i: usize,
    j: usize,
) -> Result<(Vec<Z4Matrix>, LBlockShape)> {
    if i + j == 0 {
        return Err(Error::InvalidParameter("kappa = i + j must be at least 1".into()));
    }
    let new_shape = LBlockShape::new(shape.gamma + i, shape.delta + j)?;
    let out = matrices
        .iter()
        .map(|m| {
            check_pi_l(m, shape)?;
            let ext = extend_kappa_z4_matrix(&pi_l_inverse(m, shape)?, shape, i, j)?;
            pi_l_inverse(&ext, new_shape)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((out, new_shape))
}

fn quaternary_perms_of(code: &HadamardCodeZ4, pdset: &PdSet) -> Result<Vec<Permutation>> {
    let taus = match &pdset.quaternary {
        Some(q) => q.perms.clone(),
        None => pdset
            .perms
            .iter()
            .map(|p| {
                gray_unlift(p).ok_or_else(|| Error::NotQuaternaryAutomorphism("permutation is not a Gray lift".into()))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    for (k, t) in taus.iter().enumerate() {
        if !code.is_quaternary_automorphism(t) {
            return Err(Error::NotQuaternaryAutomorphism(format!(
                "permutation {k} does not preserve the quaternary code"
            )));
        }
    }
    Ok(taus)
}

/// `Φ((S|S|S|S))` for quaternary automorphisms: an s-PD-set for the
/// quadrupled code with information set `Φ(I) ∪ {n+1, n+2}`.
pub fn quadruple_pdset_z4(code: &HadamardCodeZ4, pdset: &PdSet) -> Result<(HadamardCodeZ4, PdSet)> {
    if pdset.code != code.descriptor() {
        return Err(Error::InvalidParameter("PD-set does not belong to this code".into()));
    }
    let taus = quaternary_perms_of(code, pdset)?;
    let big = code.quadrupled()?;
    let new_taus: Vec<Permutation> = taus.iter().map(|t| t.repeat(4)).collect();
    let perms = new_taus.iter().map(phi_lift_permutation).collect();

    let n = code.length();
    let mut smallest = pdset.info_set.clone();
    smallest.sort_unstable();
    let mut info = pdset.info_set.clone();
    info.extend([smallest[0] + n, smallest[1] + n]);
    info.sort_unstable();
    debug_assert_eq!(info, big.binary_info_set());

    let mut derivation = pdset.derivation.clone();
    derivation.push("quadruple".into());
    let mut out = PdSet::new(&big, perms, pdset.s, Provenance::Recursive, derivation)?;
    let mut qi = code.q_info_set().to_vec();
    qi.push(code.beta() + 1);
    out.quaternary = Some(QuaternaryLevel {
        perms: new_taus,
        info_set: big.q_info_set().to_vec(),
    });
    debug_assert_eq!(
        qi.iter().collect::<HashSet<_>>(),
        big.q_info_set().iter().collect::<HashSet<_>>()
    );
    Ok((big, out))
}

/// `Φ(2^{i+2j} S)`: j quadruplings followed by i doublings.
pub fn power_extend(code: &HadamardCodeZ4, pdset: &PdSet, i: usize, j: usize) -> Result<(HadamardCodeZ4, PdSet)> {
    let mut code = code.clone();
    let mut pd = pdset.clone();
    for _ in 0..j {
        (code, pd) = quadruple_pdset_z4(&code, &pd)?;
    }
    let mut any = AnyCode::Z4(code);
    for _ in 0..i {
        (any, pd) = double_pdset(&any, &pd)?;
    }
    match any {
        AnyCode::Z4(c) => Ok((c, pd)),
        AnyCode::Binary(_) => unreachable!(),
    }
}
