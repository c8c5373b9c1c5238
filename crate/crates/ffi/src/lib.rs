//! C ABI for the torsionpair engine.
//!
//! Conventions:
//! - Opaque handles (`TpGroup`, `TpExtension`, `TpCharacter`) are created
//!   and destroyed by the paired `_new` / `_free` functions; never free a
//!   handle twice or use it after freeing.
//! - Every fallible call returns a [`TpStatus`]; on failure a thread-local
//!   message is readable through [`tp_last_error_message`].
//! - Rational values are returned as (numerator, denominator) pairs of
//!   signed 64-bit integers; values that do not fit report
//!   `TP_STATUS_OVERFLOW`.

use std::cell::RefCell;
use std::os::raw::c_char;
use std::ptr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use torsionpair::detpair::{log_det_pairing, zeta_generator_check, CMatrix};
use torsionpair::error::Error;
use torsionpair::group::FgGroup;
use torsionpair::lambda::kk_group;
use torsionpair::matrix::IntMatrix;
use torsionpair::pairing::{delta_via_extension, ExtensionClass};
use torsionpair::qz::{QZHom, QZValue};
use torsionpair::spectral::{eta_circle, rho_relative, FlatLineBundle};

/// Status codes: 0 = success, 1 = mathematical failure, 2 = invalid input,
/// 3 = null pointer, 4 = result does not fit in the output type.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TpStatus {
    Ok = 0,
    MathError = 1,
    InputError = 2,
    NullPointer = 3,
    Overflow = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(err: &Error) -> TpStatus {
    match err {
        Error::Residual { .. }
        | Error::IncompatibleFamily(_)
        | Error::InconsistentBonding { .. }
        | Error::NotInPairingKernel(_) => TpStatus::MathError,
        _ => TpStatus::InputError,
    }
}

fn fail(err: &Error) -> TpStatus {
    set_error(err.to_string());
    status_of(err)
}

/// Copy the last error message into `buffer` (NUL-terminated, truncated to
/// `length` bytes).  Returns the full message length in bytes.
///
/// # Safety
/// `buffer` must point to at least `length` writable bytes, or be null (in
/// which case only the length is returned).
#[no_mangle]
pub unsafe extern "C" fn tp_last_error_message(buffer: *mut c_char, length: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buffer.is_null() && length > 0 {
            let n = bytes.len().min(length - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr(), buffer.cast(), n);
            *buffer.add(n) = 0;
        }
        bytes.len()
    })
}

/// Opaque finitely generated abelian group in normal form.
pub struct TpGroup(FgGroup);

/// Opaque extension class `0 -> Z -> E -> K1 -> 0`.
pub struct TpExtension(ExtensionClass);

/// Opaque character of a finite group, valued in Q/Z.
pub struct TpCharacter(QZHom);

unsafe fn slice_or_empty<'a, T>(data: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if data.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(data, len))
    }
}

/// Create a group `Z^free_rank (+) Z/factors[0] (+) ...`; the factors must
/// form a divisibility chain with every entry at least 2.
///
/// # Safety
/// `factors` must point to `factors_len` readable values (or be null when
/// `factors_len` is 0) and `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_group_new(
    free_rank: usize,
    factors: *const i64,
    factors_len: usize,
    out: *mut *mut TpGroup,
) -> TpStatus {
    if out.is_null() {
        return TpStatus::NullPointer;
    }
    let Some(factors) = slice_or_empty(factors, factors_len) else {
        return TpStatus::NullPointer;
    };
    match FgGroup::new(
        free_rank,
        factors.iter().map(|&f| BigInt::from(f)).collect(),
    ) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(TpGroup(g)));
            TpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Normal form of the cokernel of a relation matrix, given row-major with
/// `rows * cols` entries; each row is one relation among `cols` generators.
///
/// # Safety
/// `entries` must point to `rows * cols` readable values (or be null when
/// that product is 0) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tp_group_from_presentation(
    entries: *const i64,
    rows: usize,
    cols: usize,
    out: *mut *mut TpGroup,
) -> TpStatus {
    if out.is_null() {
        return TpStatus::NullPointer;
    }
    let Some(entries) = slice_or_empty(entries, rows * cols) else {
        return TpStatus::NullPointer;
    };
    let m = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * cols + j]));
    match torsionpair::group::group_from_presentation(cols, &m) {
        Ok((g, _)) => {
            *out = Box::into_raw(Box::new(TpGroup(g)));
            TpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `group` must be a live handle from this library, or null (a no-op).
#[no_mangle]
pub unsafe extern "C" fn tp_group_free(group: *mut TpGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tp_group_free_rank(group: *const TpGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.free_rank())
}

/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tp_group_torsion_len(group: *const TpGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.invariant_factors().len())
}

/// Fetch the `index`-th invariant factor.
///
/// # Safety
/// `group` must be a live handle and `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn tp_group_torsion_factor(
    group: *const TpGroup,
    index: usize,
    out: *mut i64,
) -> TpStatus {
    let (Some(g), false) = (group.as_ref(), out.is_null()) else {
        return TpStatus::NullPointer;
    };
    let Some(f) = g.0.invariant_factors().get(index) else {
        set_error(format!("torsion index {index} out of range"));
        return TpStatus::InputError;
    };
    match f.to_i64() {
        Some(v) => {
            *out = v;
            TpStatus::Ok
        }
        None => {
            set_error("invariant factor does not fit in i64");
            TpStatus::Overflow
        }
    }
}

/// The extension `0 -> Z --d--> Z -> Z/d -> 0`.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_extension_mult_by_d(d: u64, out: *mut *mut TpExtension) -> TpStatus {
    if out.is_null() {
        return TpStatus::NullPointer;
    }
    match ExtensionClass::mult_by_d(d) {
        Ok(x) => {
            *out = Box::into_raw(Box::new(TpExtension(x)));
            TpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// The extension of `k1` by Z classified by one residue per torsion
/// generator; the induced character sends generator `i` to
/// `[residues[i] / d_i]`.
///
/// # Safety
/// `k1` must be a live handle, `residues` must hold one value per torsion
/// generator of `k1`, and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tp_extension_from_character_data(
    k1: *const TpGroup,
    residues: *const i64,
    residues_len: usize,
    out: *mut *mut TpExtension,
) -> TpStatus {
    let (Some(k1), false) = (k1.as_ref(), out.is_null()) else {
        return TpStatus::NullPointer;
    };
    let Some(residues) = slice_or_empty(residues, residues_len) else {
        return TpStatus::NullPointer;
    };
    let data: Vec<BigInt> = residues.iter().map(|&r| BigInt::from(r)).collect();
    match ExtensionClass::from_character_data(&k1.0, &data) {
        Ok(x) => {
            *out = Box::into_raw(Box::new(TpExtension(x)));
            TpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `extension` must be a live handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn tp_extension_free(extension: *mut TpExtension) {
    if !extension.is_null() {
        drop(Box::from_raw(extension));
    }
}

/// The pairing character of an extension class, as a new handle.
///
/// # Safety
/// `extension` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tp_extension_pairing(
    extension: *const TpExtension,
    out: *mut *mut TpCharacter,
) -> TpStatus {
    let (Some(x), false) = (extension.as_ref(), out.is_null()) else {
        return TpStatus::NullPointer;
    };
    match delta_via_extension(&x.0) {
        Ok(delta) => {
            *out = Box::into_raw(Box::new(TpCharacter(delta)));
            TpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `character` must be a live handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn tp_character_free(character: *mut TpCharacter) {
    if !character.is_null() {
        drop(Box::from_raw(character));
    }
}

/// Number of torsion generators the character is defined on.
///
/// # Safety
/// `character` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tp_character_len(character: *const TpCharacter) -> usize {
    character.as_ref().map_or(0, |c| c.0.values().len())
}

/// The value of the character on the `index`-th torsion generator, as a
/// reduced fraction.
///
/// # Safety
/// `character` must be a live handle; `out_num` and `out_den` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tp_character_value(
    character: *const TpCharacter,
    index: usize,
    out_num: *mut i64,
    out_den: *mut i64,
) -> TpStatus {
    let Some(c) = character.as_ref() else {
        return TpStatus::NullPointer;
    };
    if out_num.is_null() || out_den.is_null() {
        return TpStatus::NullPointer;
    }
    let Some(v) = c.0.values().get(index) else {
        set_error(format!("character index {index} out of range"));
        return TpStatus::InputError;
    };
    match (v.numerator().to_i64(), v.denominator().to_i64()) {
        (Some(n), Some(d)) => {
            *out_num = n;
            *out_den = d;
            TpStatus::Ok
        }
        _ => {
            set_error("character value does not fit in i64");
            TpStatus::Overflow
        }
    }
}

/// Entry of the coefficient-morphism table: the group is cyclic of
/// `group_order` (0 encodes Z, 1 the trivial group) and the canonical
/// generator acts as `[1] -> [image_of_one]` between the recorded moduli
/// (again 0 encodes Z).
#[repr(C)]
#[derive(Clone, Copy)]
pub struct TpKkEntry {
    pub group_order: u64,
    pub source_modulus: u64,
    pub target_modulus: u64,
    pub image_of_one: u64,
}

/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_kk_group(n: u64, m: u64, degree: u8, out: *mut TpKkEntry) -> TpStatus {
    if out.is_null() {
        return TpStatus::NullPointer;
    }
    match kk_group(n, m, degree) {
        Ok(d) => {
            let order = if d.group.free_rank() > 0 {
                0
            } else {
                d.group.order().and_then(|o| o.to_u64()).unwrap_or(u64::MAX)
            };
            *out = TpKkEntry {
                group_order: order,
                source_modulus: d.generator_action.source_modulus,
                target_modulus: d.generator_action.target_modulus,
                image_of_one: d.generator_action.image_of_one,
            };
            TpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Eta invariant of the circle operator twisted by holonomy `num/den`.
///
/// # Safety
/// `out_eta` and `out_kernel_dim` must be valid destinations.
#[no_mangle]
pub unsafe extern "C" fn tp_eta_circle(
    num: i64,
    den: i64,
    out_eta: *mut f64,
    out_kernel_dim: *mut usize,
) -> TpStatus {
    if out_eta.is_null() || out_kernel_dim.is_null() {
        return TpStatus::NullPointer;
    }
    if den == 0 {
        set_error("holonomy denominator must be nonzero");
        return TpStatus::InputError;
    }
    match eta_circle(&FlatLineBundle::from_fraction(num, den)) {
        Ok(r) => {
            *out_eta = r.eta;
            *out_kernel_dim = r.kernel_dim;
            TpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Relative eta invariant of two holonomies, certified to a fraction with
/// denominator at most `cap` (0 = derive the cap from the inputs).
///
/// # Safety
/// The three output pointers must be valid destinations.
#[no_mangle]
pub unsafe extern "C" fn tp_rho_relative(
    num1: i64,
    den1: i64,
    num2: i64,
    den2: i64,
    cap: u64,
    out_num: *mut i64,
    out_den: *mut i64,
    out_residual: *mut f64,
) -> TpStatus {
    if out_num.is_null() || out_den.is_null() || out_residual.is_null() {
        return TpStatus::NullPointer;
    }
    if den1 == 0 || den2 == 0 {
        set_error("holonomy denominators must be nonzero");
        return TpStatus::InputError;
    }
    let v = FlatLineBundle::from_fraction(num1, den1);
    let w = FlatLineBundle::from_fraction(num2, den2);
    let cap = if cap == 0 { None } else { Some(cap) };
    match rho_relative(&v, &w, cap) {
        Ok(r) => write_qz(&r.value, r.residual, out_num, out_den, out_residual),
        Err(e) => fail(&e),
    }
}

unsafe fn write_qz(
    value: &QZValue,
    residual: f64,
    out_num: *mut i64,
    out_den: *mut i64,
    out_residual: *mut f64,
) -> TpStatus {
    match (value.numerator().to_i64(), value.denominator().to_i64()) {
        (Some(n), Some(d)) => {
            *out_num = n;
            *out_den = d;
            *out_residual = residual;
            TpStatus::Ok
        }
        _ => {
            set_error("certified value does not fit in i64");
            TpStatus::Overflow
        }
    }
}

/// Logarithmic determinant pairing of two unitary matrices, passed as
/// row-major interleaved (re, im) arrays of `2 * dim * dim` doubles each.
///
/// # Safety
/// `pi` and `sigma` must each point to `2 * dim * dim` readable doubles;
/// the three output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tp_log_det_pairing(
    pi: *const f64,
    sigma: *const f64,
    dim: usize,
    cap: u64,
    out_num: *mut i64,
    out_den: *mut i64,
    out_residual: *mut f64,
) -> TpStatus {
    if out_num.is_null() || out_den.is_null() || out_residual.is_null() {
        return TpStatus::NullPointer;
    }
    if dim == 0 {
        set_error("matrix dimension must be positive");
        return TpStatus::InputError;
    }
    let n = 2 * dim * dim;
    let (Some(pi), Some(sigma)) = (slice_or_empty(pi, n), slice_or_empty(sigma, n)) else {
        return TpStatus::NullPointer;
    };
    let unpack = |data: &[f64]| {
        CMatrix::from_fn(dim, dim, |i, j| {
            let k = 2 * (i * dim + j);
            num_complex::Complex64::new(data[k], data[k + 1])
        })
    };
    match log_det_pairing(&unpack(pi), &unpack(sigma), cap) {
        Ok(r) => write_qz(&r.value, r.numeric_residual, out_num, out_den, out_residual),
        Err(e) => fail(&e),
    }
}

/// Winding-generator check for the mod-m coefficient class over the n x n
/// matrix algebra; succeeds exactly when the value certifies to `[1/m]`.
///
/// # Safety
/// The three output pointers must be valid destinations.
#[no_mangle]
pub unsafe extern "C" fn tp_zeta_generator_check(
    m: u64,
    n: u64,
    out_num: *mut i64,
    out_den: *mut i64,
    out_residual: *mut f64,
) -> TpStatus {
    if out_num.is_null() || out_den.is_null() || out_residual.is_null() {
        return TpStatus::NullPointer;
    }
    match zeta_generator_check(m, n) {
        Ok(r) => write_qz(&r.value, r.numeric_residual, out_num, out_den, out_residual),
        Err(e) => fail(&e),
    }
}

/// Run the three pipelines (extension, spectral, determinant) on the
/// order-d class; writes 1 when all agree on `[1/d]`.
///
/// # Safety
/// `out_ok` must be a valid destination.
#[no_mangle]
pub unsafe extern "C" fn tp_crosscheck(d: u64, out_ok: *mut u8) -> TpStatus {
    if out_ok.is_null() {
        return TpStatus::NullPointer;
    }
    let run = || -> torsionpair::Result<bool> {
        let eta = torsionpair::spectral::pairing_crosscheck(d)?;
        let det = torsionpair::detpair::pairing_crosscheck_group(d)?;
        Ok(eta && det)
    };
    match run() {
        Ok(ok) => {
            *out_ok = ok as u8;
            TpStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Static library version string (do not free).
#[no_mangle]
pub extern "C" fn tp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
