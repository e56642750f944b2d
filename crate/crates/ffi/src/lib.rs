//! C interface to `spectra`.
//!
//! Complexes live behind an opaque `SpectraComplex` handle. Every call
//! returns a `SpectraStatus`; on failure `spectra_last_error` describes the
//! problem. Strings handed out by the library are released with
//! `spectra_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spectra::complex::{from_json, to_json, FilteredComplex, Level};
use spectra::linalg::Ring;
use spectra::spectral::{spectral_invariant, torsion_depth_all};
use spectra::Error;

/// Opaque handle to a validated filtered complex.
pub struct SpectraComplex {
    inner: FilteredComplex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectraStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidComplex = 4,
    InvalidArgument = 5,
    Computation = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SpectraStatus {
    match e {
        Error::Parse(_) | Error::Json(_) => SpectraStatus::Parse,
        Error::InvalidComplex(_) => SpectraStatus::InvalidComplex,
        Error::Input { .. }
        | Error::UnknownGenerator(_)
        | Error::NotACycle(_)
        | Error::ClassMismatch(_)
        | Error::InvalidRing(_) => SpectraStatus::InvalidArgument,
        _ => SpectraStatus::Computation,
    }
}

type Step<T> = std::result::Result<T, (SpectraStatus, String)>;

fn lib<T>(r: spectra::Result<T>) -> Step<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn guard(f: impl FnOnce() -> Step<()>) -> SpectraStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpectraStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SpectraStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Step<&'a str> {
    if p.is_null() {
        return Err((SpectraStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (SpectraStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const SpectraComplex) -> Step<&'a FilteredComplex> {
    p.as_ref().map(|h| &h.inner).ok_or((SpectraStatus::NullPointer, "complex handle is null".into()))
}

unsafe fn give(out: *mut *mut c_char, s: String) -> Step<()> {
    if out.is_null() {
        return Err((SpectraStatus::NullPointer, "output pointer is null".into()));
    }
    let s = CString::new(s).map_err(|_| (SpectraStatus::Computation, "output contains nul".into()))?;
    *out = s.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread. Owned by the library,
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn spectra_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses and validates a complex from its JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn spectra_complex_from_json(json: *const c_char, out: *mut *mut SpectraComplex) -> SpectraStatus {
    guard(|| {
        if out.is_null() {
            return Err((SpectraStatus::NullPointer, "output pointer is null".into()));
        }
        let c = lib(from_json(text(json, "json")?))?;
        lib(c.ensure_valid())?;
        *out = Box::into_raw(Box::new(SpectraComplex { inner: c }));
        Ok(())
    })
}

/// # Safety
/// `c` must come from `spectra_complex_from_json` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn spectra_complex_free(c: *mut SpectraComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of generators.
///
/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn spectra_complex_len(c: *const SpectraComplex, out: *mut usize) -> SpectraStatus {
    guard(|| {
        let c = handle(c)?;
        if out.is_null() {
            return Err((SpectraStatus::NullPointer, "output pointer is null".into()));
        }
        *out = c.len();
        Ok(())
    })
}

/// Canonical JSON of the complex.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_complex_to_json(c: *const SpectraComplex, out: *mut *mut c_char) -> SpectraStatus {
    guard(|| give(out, to_json(handle(c)?)))
}

/// Spectral invariant of a class given as `id=coef,...` over `ring`
/// (`Z`, `Q` or `Z/m`). `degree < 0` means "infer from the chain".
/// Writes the value as text: a rational, `-inf` or `inf`.
///
/// # Safety
/// `c` must be a live handle, strings nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_spectral_invariant(
    c: *const SpectraComplex,
    ring: *const c_char,
    degree: i64,
    class: *const c_char,
    out: *mut *mut c_char,
) -> SpectraStatus {
    guard(|| {
        let c = handle(c)?;
        let ring: Ring = lib(text(ring, "ring")?.parse())?;
        let degree = (degree >= 0).then_some(degree);
        let a = lib(spectra::cli::resolve_class(c, text(class, "class")?, ring, degree, &Level::Infinite))?;
        let v = lib(spectral_invariant(c, &a))?;
        give(out, v.to_string())
    })
}

/// Torsion depth of the whole complex, as a rational in text form.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_torsion_depth(c: *const SpectraComplex, out: *mut *mut c_char) -> SpectraStatus {
    guard(|| give(out, torsion_depth_all(handle(c)?).0.to_string()))
}

/// Runs the command line tool in-process. `argv` excludes the program
/// name. Standard output and error come back as strings.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; the out pointers must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_cli_run(
    argc: c_int,
    argv: *const *const c_char,
    exit_code: *mut c_int,
    stdout: *mut *mut c_char,
    stderr: *mut *mut c_char,
) -> SpectraStatus {
    guard(|| {
        if exit_code.is_null() || (argc > 0 && argv.is_null()) {
            return Err((SpectraStatus::NullPointer, "argument pointer is null".into()));
        }
        let mut args = vec!["spectra".to_string()];
        for i in 0..argc.max(0) as usize {
            args.push(text(*argv.add(i), "argument")?.to_string());
        }
        let o = spectra::cli::run(args);
        give(stdout, o.stdout)?;
        if let Err(e) = give(stderr, o.stderr) {
            spectra_string_free(*stdout);
            *stdout = ptr::null_mut();
            return Err(e);
        }
        *exit_code = o.code as c_int;
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn spectra_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
