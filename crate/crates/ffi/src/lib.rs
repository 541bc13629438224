//! C interface to `hadamard-pd`.
//!
//! Codes and PD-sets are opaque handles released with their `_free`
//! function. Every call returns an [`HpdStatus`]; on failure the message is
//! available from [`hpd_last_error`] on the same thread. Words cross the
//! boundary as arrays of bytes holding 0 or 1, positions as 1-based indices.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hadamard_pd::decoder::perm_decode;
use hadamard_pd::io::{to_json, PdSetFile};
use hadamard_pd::pdset::{verify_bruteforce, BruteForceOptions, DEFAULT_BUDGET};
use hadamard_pd::pdset_binary::construct_explicit_binary;
use hadamard_pd::pdset_z4::construct_explicit_z4;
use hadamard_pd::{AnyCode, BitVector, Error, HadamardCodeBinary, HadamardCodeZ4, PdSet, SystematicCode};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    ParseError = 4,
    NotAutomorphism = 5,
    BudgetExceeded = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

/// A binary or Z4-linear Hadamard code.
pub struct HpdCode {
    inner: AnyCode,
}

/// A PD-set together with the code it belongs to.
pub struct HpdPdSet {
    code: AnyCode,
    inner: PdSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> HpdStatus {
    match err {
        Error::LengthMismatch { .. } | Error::DimensionMismatch(_) => HpdStatus::LengthMismatch,
        Error::Parse(_) => HpdStatus::ParseError,
        Error::BudgetExceeded { .. } => HpdStatus::BudgetExceeded,
        Error::NotAutomorphism(_)
        | Error::NotQuaternaryAutomorphism(_)
        | Error::NotInPAut(_)
        | Error::NotInL(_)
        | Error::NotInPiL(_) => HpdStatus::NotAutomorphism,
        _ => HpdStatus::InvalidArgument,
    }
}

struct Fail(HpdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HpdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HpdStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            HpdStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(HpdStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail(HpdStatus::NullPointer, format!("{what} is null")))
}

unsafe fn bits_in(p: *const u8, len: usize, what: &str) -> Result<BitVector, Fail> {
    if len == 0 {
        return Ok(BitVector::zeros(0));
    }
    let bytes = std::slice::from_raw_parts(deref(p, what)?, len);
    if let Some(b) = bytes.iter().find(|&&b| b > 1) {
        return Err(Fail(
            HpdStatus::InvalidArgument,
            format!("{what} holds {b}, expected 0 or 1"),
        ));
    }
    Ok(BitVector::from_bits(bytes.iter().map(|&b| b == 1)))
}

unsafe fn bits_out(v: &BitVector, p: *mut u8, cap: usize) -> Result<(), Fail> {
    if cap < v.len() {
        return Err(Fail(
            HpdStatus::BufferTooSmall,
            format!("buffer holds {cap} entries, {} needed", v.len()),
        ));
    }
    if v.is_empty() {
        return Ok(());
    }
    let out = std::slice::from_raw_parts_mut(out_ptr(p, "output buffer")?, v.len());
    for (o, b) in out.iter_mut().zip(v.iter()) {
        *o = b as u8;
    }
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call on this thread.
#[no_mangle]
pub extern "C" fn hpd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// The binary Hadamard code of length `2^m`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hpd_code_binary_new(m: u32, out: *mut *mut HpdCode) -> HpdStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(HpdCode {
            inner: AnyCode::Binary(HadamardCodeBinary::new(m)?),
        });
        Ok(())
    })
}

/// The Z4-linear Hadamard code of type `2^γ 4^δ`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hpd_code_z4_new(gamma: usize, delta: usize, out: *mut *mut HpdCode) -> HpdStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(HpdCode {
            inner: AnyCode::Z4(HadamardCodeZ4::new(gamma, delta)?),
        });
        Ok(())
    })
}

/// # Safety
/// `code` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hpd_code_free(code: *mut HpdCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Length, dimension (information set size) and error capability `t`.
///
/// # Safety
/// `code` must be a live handle; each out pointer must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hpd_code_params(
    code: *const HpdCode,
    length: *mut usize,
    dimension: *mut usize,
    t: *mut usize,
) -> HpdStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        for (p, v) in [
            (length, c.length()),
            (dimension, c.dimension()),
            (t, c.error_capability()),
        ] {
            if let Some(p) = p.as_mut() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Writes the 1-based information set into `buf` (capacity `cap`) and its
/// size into `len`.
///
/// # Safety
/// `code` must be a live handle, `buf` valid for `cap` writes, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn hpd_code_info_set(
    code: *const HpdCode,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> HpdStatus {
    guard(|| {
        let info = deref(code, "code")?.inner.info_set();
        *out_ptr(len, "len")? = info.len();
        if cap < info.len() {
            return Err(Fail(
                HpdStatus::BufferTooSmall,
                format!("{} entries needed", info.len()),
            ));
        }
        std::slice::from_raw_parts_mut(out_ptr(buf, "buf")?, info.len()).copy_from_slice(info);
        Ok(())
    })
}

/// The codeword taking `values` on the information set.
///
/// # Safety
/// `values` must hold `k` bytes, `out` room for `out_cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn hpd_code_encode(
    code: *const HpdCode,
    values: *const u8,
    k: usize,
    out: *mut u8,
    out_cap: usize,
) -> HpdStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        let x = c.encode_systematic(&bits_in(values, k, "values")?)?;
        bits_out(&x, out, out_cap)
    })
}

/// The explicit PD-set of the code: the binary one for `H_m` (m >= 3), or
/// the doubled Z4 one for `H_{γ,δ}` (δ >= 3).
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hpd_pdset_explicit(code: *const HpdCode, out: *mut *mut HpdPdSet) -> HpdStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        let out = out_ptr(out, "out")?;
        let inner = match c {
            AnyCode::Binary(b) => construct_explicit_binary(b)?.pdset,
            AnyCode::Z4(z) => {
                if !z.is_canonical() {
                    return Err(Fail(HpdStatus::InvalidArgument, "code is not in canonical form".into()));
                }
                construct_explicit_z4(z.gamma(), z.delta())?.pdset
            }
        };
        *out = boxed(HpdPdSet { code: c.clone(), inner });
        Ok(())
    })
}

/// Loads a PD-set from its JSON file format, checking every permutation
/// against the named code.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hpd_pdset_from_json(json: *const c_char, out: *mut *mut HpdPdSet) -> HpdStatus {
    guard(|| {
        let text = CStr::from_ptr(deref(json, "json")?)
            .to_str()
            .map_err(|e| Fail(HpdStatus::ParseError, e.to_string()))?;
        let out = out_ptr(out, "out")?;
        let file: PdSetFile = serde_json::from_str(text).map_err(|e| Fail(HpdStatus::ParseError, e.to_string()))?;
        let (code, inner) = file.into_pdset()?;
        *out = boxed(HpdPdSet { code, inner });
        Ok(())
    })
}

/// Serializes to the JSON file format; release the string with
/// [`hpd_string_free`].
///
/// # Safety
/// `pdset` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hpd_pdset_to_json(pdset: *const HpdPdSet, out: *mut *mut c_char) -> HpdStatus {
    guard(|| {
        let pd = &deref(pdset, "pdset")?.inner;
        let out = out_ptr(out, "out")?;
        let text = CString::new(to_json(&PdSetFile::from(pd))).map_err(|e| Fail(HpdStatus::Internal, e.to_string()))?;
        *out = text.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hpd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `pdset` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hpd_pdset_free(pdset: *mut HpdPdSet) {
    if !pdset.is_null() {
        drop(Box::from_raw(pdset));
    }
}

/// Number of permutations and the claimed `s`.
///
/// # Safety
/// `pdset` must be a live handle; each out pointer must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hpd_pdset_params(pdset: *const HpdPdSet, size: *mut usize, s: *mut usize) -> HpdStatus {
    guard(|| {
        let pd = &deref(pdset, "pdset")?.inner;
        if let Some(p) = size.as_mut() {
            *p = pd.len();
        }
        if let Some(p) = s.as_mut() {
            *p = pd.s;
        }
        Ok(())
    })
}

/// Exhaustive check over all s-subsets with at most `budget` subsets
/// (0 selects the default). On failure `witness`, if non-null, receives the
/// lexicographically least uncovered subset (room for `s` entries).
///
/// # Safety
/// `pdset` must be a live handle, `passed` valid, `witness` null or valid
/// for `s` writes.
#[no_mangle]
pub unsafe extern "C" fn hpd_pdset_verify(
    pdset: *const HpdPdSet,
    s: usize,
    budget: u64,
    passed: *mut bool,
    witness: *mut usize,
) -> HpdStatus {
    guard(|| {
        let pd = &deref(pdset, "pdset")?.inner;
        let passed = out_ptr(passed, "passed")?;
        let opts = BruteForceOptions {
            budget: if budget == 0 { DEFAULT_BUDGET } else { budget as u128 },
            threads: None,
        };
        let outcome = verify_bruteforce(pd, s, &opts)?;
        *passed = outcome.passed;
        if let (Some(w), false) = (outcome.witness, witness.is_null()) {
            std::slice::from_raw_parts_mut(witness, w.len()).copy_from_slice(&w);
        }
        Ok(())
    })
}

/// Permutation-decodes `word` (length `n`). On success `decoded` is set and
/// the codeword written to `out`; otherwise `decoded` is false.
///
/// # Safety
/// `pdset` must be a live handle, `word` valid for `n` reads, `out` for
/// `out_cap` writes, `decoded` valid.
#[no_mangle]
pub unsafe extern "C" fn hpd_decode(
    pdset: *const HpdPdSet,
    word: *const u8,
    n: usize,
    out: *mut u8,
    out_cap: usize,
    decoded: *mut bool,
) -> HpdStatus {
    guard(|| {
        let h = deref(pdset, "pdset")?;
        let decoded = out_ptr(decoded, "decoded")?;
        let r = perm_decode(&h.code, &h.inner, &bits_in(word, n, "word")?)?;
        *decoded = r.is_decoded();
        match r.codeword {
            Some(c) => bits_out(&c, out, out_cap),
            None => Ok(()),
        }
    })
}
