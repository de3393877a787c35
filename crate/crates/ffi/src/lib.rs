//! C interface to `absorder`.
//!
//! Every fallible function returns an [`AbsorderStatus`]. On failure a message
//! is available from [`absorder_last_error_message`] on the same thread.
//! Posets are opaque handles released with [`absorder_poset_free`]; strings
//! returned through `char **` out-parameters are released with
//! [`absorder_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use absorder::poset::export_dot;
use absorder::sperner::{is_strong_sperner, SpernerError};
use absorder::{
    claw_product, factorize, max_k_family, AbsoluteOrder, Element, GradedPoset, GroupError,
    GroupId, DEFAULT_MAX_GROUP_ORDER,
};

/// Result codes. The nonzero values 2 to 4 agree with the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsorderStatus {
    Ok = 0,
    /// A null pointer, a zero `k`, or a non-UTF-8 string.
    InvalidArgument = 1,
    /// The group id or element text did not parse.
    Parse = 2,
    /// The group is larger than the size guard.
    TooLarge = 3,
    /// An internal certificate failed validation.
    VerificationFailed = 4,
    /// The output buffer is too short; the required length was still written.
    BufferTooSmall = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// A graded poset whose vertices carry text labels.
pub struct AbsorderPoset {
    poset: GradedPoset<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(message).expect("no interior nul"));
}

struct Failure(AbsorderStatus, String);

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure(AbsorderStatus::InvalidArgument, message.into())
    }
}

impl From<GroupError> for Failure {
    fn from(err: GroupError) -> Self {
        let status = match err {
            GroupError::TooLarge { .. } => AbsorderStatus::TooLarge,
            _ => AbsorderStatus::Parse,
        };
        Failure(status, err.to_string())
    }
}

impl From<SpernerError> for Failure {
    fn from(err: SpernerError) -> Self {
        let status = match err {
            SpernerError::ZeroK => AbsorderStatus::InvalidArgument,
            SpernerError::TooLarge { .. } => AbsorderStatus::TooLarge,
            _ => AbsorderStatus::VerificationFailed,
        };
        Failure(status, err.to_string())
    }
}

/// Runs `body`, converting errors and panics into a status and a stored message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> AbsorderStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            AbsorderStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {message}"));
            AbsorderStatus::Panic
        }
    }
}

/// # Safety
/// `text` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(Failure::invalid(format!("{what} is null")));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| Failure::invalid(format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
unsafe fn read_poset<'a>(p: *const AbsorderPoset) -> Result<&'a AbsorderPoset, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::invalid("poset handle is null"))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::invalid("output pointer is null"))
    } else {
        Ok(())
    }
}

fn limit_or_default(max_group: u64) -> u64 {
    if max_group == 0 {
        DEFAULT_MAX_GROUP_ORDER
    } else {
        max_group
    }
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text).expect("no interior nul").into_raw()
}

/// Builds the absolute order of `group` (`"a3"`, `"b2"`, `"i2:7"`), labelled by
/// element text. `max_group` = 0 selects the default size guard.
///
/// # Safety
/// `group` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn absorder_absolute_order_new(
    group: *const c_char,
    max_group: u64,
    out: *mut *mut AbsorderPoset,
) -> AbsorderStatus {
    guard(|| {
        check_out(out)?;
        let g: GroupId = read_str(group, "group")?.parse()?;
        let order = AbsoluteOrder::build(g, limit_or_default(max_group))?;
        let poset = order.poset().map_labels(Element::to_string);
        *out = Box::into_raw(Box::new(AbsorderPoset { poset }));
        Ok(())
    })
}

/// Builds the product of tier claws of `group`, labelled by tier tuples.
///
/// # Safety
/// `group` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn absorder_claw_product_new(
    group: *const c_char,
    max_group: u64,
    out: *mut *mut AbsorderPoset,
) -> AbsorderStatus {
    guard(|| {
        check_out(out)?;
        let g: GroupId = read_str(group, "group")?.parse()?;
        g.check_order(limit_or_default(max_group))?;
        let poset = claw_product(g).map_labels(|f| f.to_string());
        *out = Box::into_raw(Box::new(AbsorderPoset { poset }));
        Ok(())
    })
}

/// Releases a poset. Null is ignored.
///
/// # Safety
/// `p` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn absorder_poset_free(p: *mut AbsorderPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn absorder_poset_len(p: *const AbsorderPoset) -> usize {
    p.as_ref().map_or(0, |p| p.poset.len())
}

/// Copies the rank sequence into `buf`. `*written` always receives the full
/// length, so a call with `buf` = null and `len` = 0 queries the size.
///
/// # Safety
/// `buf` must have room for `len` values (or be null when `len` is 0) and
/// `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn absorder_poset_rank_sequence(
    p: *const AbsorderPoset,
    buf: *mut u64,
    len: usize,
    written: *mut usize,
) -> AbsorderStatus {
    guard(|| {
        let p = read_poset(p)?;
        check_out(written)?;
        let ranks = p.poset.rank_sequence().0;
        *written = ranks.len();
        if len < ranks.len() {
            return Err(Failure(
                AbsorderStatus::BufferTooSmall,
                format!(
                    "rank sequence needs {} entries, buffer holds {len}",
                    ranks.len()
                ),
            ));
        }
        if buf.is_null() {
            return Err(Failure::invalid("buffer is null"));
        }
        ptr::copy_nonoverlapping(ranks.as_ptr(), buf, ranks.len());
        Ok(())
    })
}

/// Size of a largest `k`-family. The certificate behind it is validated before
/// returning; a rejected certificate yields `VERIFICATION_FAILED`.
///
/// # Safety
/// `p` must be an unfreed handle and `out_size` writable.
#[no_mangle]
pub unsafe extern "C" fn absorder_max_k_family(
    p: *const AbsorderPoset,
    k: usize,
    out_size: *mut usize,
) -> AbsorderStatus {
    guard(|| {
        let p = read_poset(p)?;
        check_out(out_size)?;
        *out_size = max_k_family(&p.poset, k)?.size;
        Ok(())
    })
}

/// Whether every `k`-family is at most the sum of the `k` largest ranks.
///
/// # Safety
/// `p` must be an unfreed handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn absorder_is_strong_sperner(
    p: *const AbsorderPoset,
    out: *mut bool,
) -> AbsorderStatus {
    guard(|| {
        let p = read_poset(p)?;
        check_out(out)?;
        *out = is_strong_sperner(&p.poset)?;
        Ok(())
    })
}

/// Writes the tier factorization of `element` in `group` as text, for example
/// `"(2 3)(1 2)"`. Free the result with [`absorder_string_free`].
///
/// # Safety
/// `group` and `element` must be valid C strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn absorder_factorize(
    group: *const c_char,
    element: *const c_char,
    out: *mut *mut c_char,
) -> AbsorderStatus {
    guard(|| {
        check_out(out)?;
        let g: GroupId = read_str(group, "group")?.parse()?;
        let text = read_str(element, "element")?;
        let w = Element::parse(text, g)
            .map_err(|err| Failure(AbsorderStatus::Parse, err.to_string()))?;
        *out = into_c_string(factorize(&w).to_string());
        Ok(())
    })
}

/// Writes a Graphviz rendering of the poset. Free the result with
/// [`absorder_string_free`].
///
/// # Safety
/// `p` must be an unfreed handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn absorder_poset_to_dot(
    p: *const AbsorderPoset,
    out: *mut *mut c_char,
) -> AbsorderStatus {
    guard(|| {
        let p = read_poset(p)?;
        check_out(out)?;
        *out = into_c_string(export_dot(&p.poset, String::clone));
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or an unfreed string from this library.
#[no_mangle]
pub unsafe extern "C" fn absorder_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or `""` after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn absorder_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}
