//! C ABI over the `nullcone` crate.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free`. Every fallible call returns an [`NcStatus`]; on
//! failure the message is available from [`nc_last_error_message`] on the
//! same thread. Strings returned to the caller are freed with
//! [`nc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nullcone::nullcone::{enumerate_n_standard, n_straighten, sample_nullcone_point, NullconeContext};
use nullcone::straighten::{straighten, StandardCombination, WeightConfig};
use nullcone::tableau::{parse_int_list, parse_product, Shape};
use nullcone::Error;

/// Status codes. `Domain`, `Parameter` and `Resource` equal the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcStatus {
    Ok = 0,
    Domain = 1,
    Parameter = 2,
    Resource = 3,
    Invariant = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
}

impl From<&Error> for NcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => NcStatus::Domain,
            Error::Parameter(_) => NcStatus::Parameter,
            Error::Resource(_) => NcStatus::Resource,
            Error::Invariant(_) => NcStatus::Invariant,
        }
    }
}

/// A linear combination of standard monomials.
pub struct NcCombination(StandardCombination);

/// Parameters `(k, n)` of the nullcone `N_{k,2n}`.
pub struct NcNullcone(NullconeContext);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: NcStatus, msg: impl Into<String>) -> NcStatus {
    set_error(msg.into());
    status
}

fn guarded(f: impl FnOnce() -> Result<(), (NcStatus, String)>) -> NcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NcStatus::Ok,
        Ok(Err((s, msg))) => fail(s, msg),
        Err(_) => fail(NcStatus::Invariant, "internal panic"),
    }
}

fn lift(e: Error) -> (NcStatus, String) {
    ((&e).into(), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (NcStatus, String)> {
    if s.is_null() {
        return Err((NcStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (NcStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

fn check_out<T>(out: *mut T) -> Result<(), (NcStatus, String)> {
    if out.is_null() {
        Err((NcStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> Result<*mut c_char, (NcStatus, String)> {
    CString::new(s).map(CString::into_raw).map_err(|_| (NcStatus::Invariant, "interior NUL in output".into()))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn nc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Straightens a product such as `"[1:2],[2:1]"` in `C[M_{n,m}]` with the
/// default weight base.
///
/// # Safety
/// `product` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nc_straighten(n: u32, m: u32, product: *const c_char, out: *mut *mut NcCombination) -> NcStatus {
    guarded(|| {
        check_out(out)?;
        let spec = read_str(product)?;
        let prod = parse_product(spec, n, m).map_err(lift)?;
        let comb = straighten(&prod, &WeightConfig::default_for(n, m)).map_err(lift)?;
        *out = Box::into_raw(Box::new(NcCombination(comb)));
        Ok(())
    })
}

/// Number of terms, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn nc_combination_len(c: *const NcCombination) -> usize {
    c.as_ref().map_or(0, |c| c.0.terms.len())
}

/// JSON form `{"terms":[{"coef","tableau"}],"weight_base"}`.
///
/// # Safety
/// `c` must be a handle from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nc_combination_to_json(c: *const NcCombination, out: *mut *mut c_char) -> NcStatus {
    guarded(|| {
        check_out(out)?;
        let c = c.as_ref().ok_or((NcStatus::NullPointer, "null combination".into()))?;
        let s = serde_json::to_string(&c.0).map_err(|e| (NcStatus::Invariant, e.to_string()))?;
        *out = to_c_string(s)?;
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn nc_combination_free(c: *mut NcCombination) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nc_nullcone_new(k: u32, n: u32, out: *mut *mut NcNullcone) -> NcStatus {
    guarded(|| {
        check_out(out)?;
        let ctx = NullconeContext::new(k, n).map_err(lift)?;
        *out = Box::into_raw(Box::new(NcNullcone(ctx)));
        Ok(())
    })
}

/// # Safety
/// `ctx` must be null or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn nc_nullcone_free(ctx: *mut NcNullcone) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Number of N-standard monomials of a shape given as `"2,1"`.
///
/// # Safety
/// `ctx` must be a handle from this library, `shape` a valid string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nc_nullcone_count(ctx: *const NcNullcone, shape: *const c_char, out: *mut u64) -> NcStatus {
    guarded(|| {
        check_out(out)?;
        let ctx = ctx.as_ref().ok_or((NcStatus::NullPointer, "null nullcone".into()))?;
        let shape = Shape::new(parse_int_list(read_str(shape)?).map_err(lift)?).map_err(lift)?;
        *out = enumerate_n_standard(&shape, &ctx.0).map_err(lift)?.len() as u64;
        Ok(())
    })
}

/// Rewrites a product of minors over `M_{k,2n}` as N-standard monomials.
///
/// # Safety
/// `ctx` must be a handle from this library, `product` a valid string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nc_nullcone_straighten(
    ctx: *const NcNullcone,
    product: *const c_char,
    out: *mut *mut NcCombination,
) -> NcStatus {
    guarded(|| {
        check_out(out)?;
        let ctx = ctx.as_ref().ok_or((NcStatus::NullPointer, "null nullcone".into()))?;
        let prod = parse_product(read_str(product)?, ctx.0.k(), 2 * ctx.0.n()).map_err(lift)?;
        let comb = n_straighten(&prod, &ctx.0).map_err(lift)?;
        *out = Box::into_raw(Box::new(NcCombination(comb)));
        Ok(())
    })
}

/// A nullcone point as a JSON matrix of `"a/b"` strings.
///
/// # Safety
/// `ctx` must be a handle from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nc_nullcone_sample(ctx: *const NcNullcone, seed: u64, out: *mut *mut c_char) -> NcStatus {
    guarded(|| {
        check_out(out)?;
        let ctx = ctx.as_ref().ok_or((NcStatus::NullPointer, "null nullcone".into()))?;
        let pt = sample_nullcone_point(&ctx.0, seed);
        let rows: Vec<Vec<String>> =
            pt.iter().map(|r| r.iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect()).collect();
        let s = serde_json::to_string(&rows).map_err(|e| (NcStatus::Invariant, e.to_string()))?;
        *out = to_c_string(s)?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn nc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
