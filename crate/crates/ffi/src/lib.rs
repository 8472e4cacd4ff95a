//! C ABI over `pickernel`.
//!
//! Groups, modules and abelian groups are opaque handles created by
//! `pk_*` constructors and released by the matching `pk_*_free`. Every
//! fallible call returns a [`PkStatus`] and writes its result through an
//! out-pointer; on failure `pk_last_error` describes what went wrong on the
//! calling thread. Strings returned by the library are released with
//! `pk_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use pickernel::cli::{load_group, load_module, CommandError, ExitStatus};
use pickernel::cohomology::cohomology;
use pickernel::gmodules::{FiniteGroup, GModule};
use pickernel::inseparable::desk_scale_class_count;
use pickernel::picard::{
    conductor_square_pic, descent_kernel, group_ring_pic, pic_torsion, ConductorSquareSpec, UnitModel,
};
use pickernel::zlattice::FgAbelianGroup;

/// Result of every fallible call. The first five values match the exit
/// codes of the command-line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PkStatus {
    Ok = 0,
    CheckFailed = 1,
    InputError = 2,
    Inconsistent = 3,
    GuardExceeded = 4,
    NullPointer = 5,
    Panic = 6,
}

/// A finite group given by its multiplication table.
pub struct PkGroup {
    inner: Arc<FiniteGroup>,
}

/// A finitely generated module over a `PkGroup`.
pub struct PkModule {
    inner: GModule,
}

/// A finitely generated abelian group in invariant-factor form.
pub struct PkAbelianGroup {
    inner: FgAbelianGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: PkStatus,
    message: String,
}

impl Failure {
    fn new(status: PkStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }
}

impl<E: Into<CommandError>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e: CommandError = e.into();
        let status = match e.status {
            ExitStatus::Success => PkStatus::Ok,
            ExitStatus::CheckFailed => PkStatus::CheckFailed,
            ExitStatus::InputError => PkStatus::InputError,
            ExitStatus::Inconsistent => PkStatus::Inconsistent,
            ExitStatus::GuardExceeded => PkStatus::GuardExceeded,
        };
        Failure { status, message: e.message }
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn run(f: impl FnOnce() -> Result<(), Failure>) -> PkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PkStatus::Ok,
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(_) => {
            set_last_error("internal panic");
            PkStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(PkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure::new(PkStatus::InputError, "string argument is not UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(PkStatus::NullPointer, "null handle"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(PkStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Description of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// A builtin group (`C6`, `D4`, `S3`, `Q8`, `cyclic(5)`, ...) or a group
/// given as JSON `{"order": n, "table": [[...], ...]}`.
///
/// # Safety
/// `source` is a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pk_group_new(source: *const c_char, out: *mut *mut PkGroup) -> PkStatus {
    run(|| {
        let g = load_group(text(source)?)?;
        write(out, boxed(PkGroup { inner: g }))
    })
}

/// # Safety
/// `g` is null or a live handle from `pk_group_new`.
#[no_mangle]
pub unsafe extern "C" fn pk_group_free(g: *mut PkGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Order of the group; 0 for a null handle.
///
/// # Safety
/// `g` is null or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn pk_group_order(g: *const PkGroup) -> usize {
    g.as_ref().map_or(0, |g| g.inner.order())
}

/// `G/[G, G]`.
///
/// # Safety
/// `g` is a live group handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pk_group_abelianization(g: *const PkGroup, out: *mut *mut PkAbelianGroup) -> PkStatus {
    run(|| {
        let g = handle(g)?;
        write(out, boxed(PkAbelianGroup { inner: g.inner.abelianization() }))
    })
}

/// A module over `g`: `regular`, `trivial`, `coaugmentation`, `negation`,
/// or JSON `{"ambient_rank", "relations", "action"}`.
///
/// # Safety
/// `g` is a live group handle, `source` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pk_module_new(
    g: *const PkGroup,
    source: *const c_char,
    out: *mut *mut PkModule,
) -> PkStatus {
    run(|| {
        let g = handle(g)?;
        let m = load_module(&g.inner, text(source)?)?;
        write(out, boxed(PkModule { inner: m }))
    })
}

/// # Safety
/// `m` is null or a live handle from `pk_module_new`.
#[no_mangle]
pub unsafe extern "C" fn pk_module_free(m: *mut PkModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Rank of the ambient lattice; 0 for a null handle.
///
/// # Safety
/// `m` is null or a live module handle.
#[no_mangle]
pub unsafe extern "C" fn pk_module_rank(m: *const PkModule) -> usize {
    m.as_ref().map_or(0, |m| m.inner.rank())
}

/// `Hⁿ(G, M)` for `n ≤ 2`.
///
/// # Safety
/// `m` is a live module handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pk_cohomology(m: *const PkModule, degree: usize, out: *mut *mut PkAbelianGroup) -> PkStatus {
    run(|| {
        let m = handle(m)?;
        let h = cohomology(&m.inner, degree)?;
        write(out, boxed(PkAbelianGroup { inner: h }))
    })
}

/// `Pic` of the invariants of the group ring of the coaugmentation quotient.
/// `matches` receives whether it equals `G/[G, G]` and both computations
/// agree; pass null to skip.
///
/// # Safety
/// `g` is a live group handle, `out` a valid pointer, `matches` null or
/// valid.
#[no_mangle]
pub unsafe extern "C" fn pk_group_ring_pic(
    g: *const PkGroup,
    out: *mut *mut PkAbelianGroup,
    matches: *mut bool,
) -> PkStatus {
    run(|| {
        let g = handle(g)?;
        let pic = group_ring_pic(&g.inner)?;
        if !matches.is_null() {
            matches.write(pic.matches_abelianization && pic.paths_agree());
        }
        write(out, boxed(PkAbelianGroup { inner: pic.pic }))
    })
}

/// Descent kernel of the real circle `x² + y² = 1` over `C/R`.
///
/// # Safety
/// `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pk_circle_descent_kernel(out: *mut *mut PkAbelianGroup) -> PkStatus {
    run(|| {
        let k = descent_kernel(&UnitModel::circle())?;
        write(out, boxed(PkAbelianGroup { inner: k }))
    })
}

/// `n`-torsion of the Picard group of a conductor square: family `node`
/// with ring `Q` or `Z[1/m]`, or family `cusp` with field `F_q`.
///
/// # Safety
/// `family` and `ring` are NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pk_conductor_torsion(
    family: *const c_char,
    ring: *const c_char,
    n: u64,
    out: *mut *mut PkAbelianGroup,
) -> PkStatus {
    run(|| {
        let spec = ConductorSquareSpec::parse(text(family)?, text(ring)?)?;
        let t = pic_torsion(&conductor_square_pic(spec)?, n)?;
        write(out, boxed(PkAbelianGroup { inner: t }))
    })
}

/// Number of classes `M(a)^r`, `a ∈ F_p`, separated by log-derivatives.
///
/// # Safety
/// `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pk_inseparable_class_count(p: u64, q: u64, out: *mut usize) -> PkStatus {
    run(|| write(out, desk_scale_class_count(p, q)?))
}

/// # Safety
/// `a` is null or a live abelian-group handle.
#[no_mangle]
pub unsafe extern "C" fn pk_abelian_free(a: *mut PkAbelianGroup) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` is null or a live abelian-group handle.
#[no_mangle]
pub unsafe extern "C" fn pk_abelian_free_rank(a: *const PkAbelianGroup) -> usize {
    a.as_ref().map_or(0, |a| a.inner.free_rank())
}

/// Number of invariant factors `d₁ | d₂ | …`, all greater than 1.
///
/// # Safety
/// `a` is null or a live abelian-group handle.
#[no_mangle]
pub unsafe extern "C" fn pk_abelian_num_factors(a: *const PkAbelianGroup) -> usize {
    a.as_ref().map_or(0, |a| a.inner.invariant_factors().len())
}

/// The `i`-th invariant factor, if it fits in 64 bits.
///
/// # Safety
/// `a` is a live abelian-group handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pk_abelian_factor(a: *const PkAbelianGroup, i: usize, out: *mut u64) -> PkStatus {
    run(|| {
        let a = handle(a)?;
        let d = a
            .inner
            .invariant_factors()
            .get(i)
            .ok_or_else(|| Failure::new(PkStatus::InputError, format!("no invariant factor {i}")))?;
        let d = d.to_u64().ok_or_else(|| Failure::new(PkStatus::GuardExceeded, "invariant factor exceeds 64 bits"))?;
        write(out, d)
    })
}

/// `{"free_rank": n, "invariant_factors": [...]}`, to be released with
/// `pk_string_free`.
///
/// # Safety
/// `a` is a live abelian-group handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pk_abelian_to_json(a: *const PkAbelianGroup, out: *mut *mut c_char) -> PkStatus {
    run(|| {
        let a = handle(a)?;
        let json = serde_json::to_string(&a.inner).expect("plain data");
        write(out, CString::new(json).expect("JSON has no NUL").into_raw())
    })
}

/// Renders as `Z/2 ⊕ Z/2`, `Z^3` or `0`, to be released with
/// `pk_string_free`.
///
/// # Safety
/// `a` is a live abelian-group handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pk_abelian_to_string(a: *const PkAbelianGroup, out: *mut *mut c_char) -> PkStatus {
    run(|| {
        let a = handle(a)?;
        write(out, CString::new(a.inner.to_string()).expect("no NUL").into_raw())
    })
}
