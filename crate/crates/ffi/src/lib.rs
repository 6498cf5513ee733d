//! C interface to `flowknot`.
//!
//! Diagrams live behind opaque handles created by `fk_*_parse` and released
//! with the matching `fk_*_free`. Every fallible call returns an `FkStatus`
//! code; on failure `fk_last_error` describes the problem. Reports come back
//! as NUL-terminated JSON strings owned by the caller and released with
//! `fk_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use flowknot::cli::{flowcat_report, grid_report, gridflow_report, khovanov_report, Config, Report};
use flowknot::grid::{grid_homology, parse_grid, Coefficients, GridDiagram};
use flowknot::khovanov::{parse_pd, LadybugPolicy, LinkDiagram};
use flowknot::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    OutOfRange = 5,
    Computation = 6,
    Panic = 7,
}

pub const FK_COEFF_GF2: i32 = 0;
pub const FK_COEFF_INT: i32 = 1;

pub const FK_POLICY_RIGHT: i32 = 0;
pub const FK_POLICY_LEFT: i32 = 1;

/// A planar diagram.
pub struct FkLink(LinkDiagram);

/// A grid diagram.
pub struct FkGrid(GridDiagram);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FkStatus {
    match e {
        Error::Parse { .. } | Error::Io(_) => FkStatus::Parse,
        Error::InvalidDiagram(_) | Error::NonPlanar(_) | Error::InvalidGrid(_) | Error::InvalidDomain(_) => FkStatus::InvalidInput,
        Error::OutOfRange(_) => FkStatus::OutOfRange,
        _ => FkStatus::Computation,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (FkStatus, String)>) -> FkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FkStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (FkStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, (FkStatus, String)> {
    if p.is_null() {
        return Err((FkStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (FkStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, (FkStatus, String)> {
    p.as_ref().ok_or((FkStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (FkStatus, String)> {
    if out.is_null() {
        return Err((FkStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, report: Report) -> Result<(), (FkStatus, String)> {
    let s = CString::new(report.render(true)).map_err(|e| (FkStatus::Computation, e.to_string()))?;
    write_out(out, s.into_raw())
}

fn config(coeff: i32, policy: i32, mu_max: i32) -> Result<Config, (FkStatus, String)> {
    let coefficients = match coeff {
        FK_COEFF_GF2 => Coefficients::Gf2,
        FK_COEFF_INT => Coefficients::Int,
        _ => return Err((FkStatus::InvalidInput, format!("unknown coefficients {coeff}"))),
    };
    let policy = match policy {
        FK_POLICY_RIGHT => LadybugPolicy::Right,
        FK_POLICY_LEFT => LadybugPolicy::Left,
        _ => return Err((FkStatus::InvalidInput, format!("unknown ladybug policy {policy}"))),
    };
    Ok(Config { coefficients, policy, mu_max })
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn fk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a PD code (`PD[X[..], ..]`, JSON, or `unknots=k`).
///
/// # Safety
/// `pd` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_link_parse(pd: *const c_char, out: *mut *mut FkLink) -> FkStatus {
    guard(|| {
        let d = parse_pd(text(pd)?).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(FkLink(d))))
    })
}

/// # Safety
/// `link` must be NULL or a handle from `fk_link_parse`, freed once.
#[no_mangle]
pub unsafe extern "C" fn fk_link_free(link: *mut FkLink) {
    if !link.is_null() {
        drop(Box::from_raw(link));
    }
}

/// # Safety
/// `link` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_link_crossings(link: *const FkLink, out: *mut usize) -> FkStatus {
    guard(|| write_out(out, handle(link)?.0.n()))
}

/// Khovanov complex report as JSON.
///
/// # Safety
/// `link` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_khovanov_json(link: *const FkLink, coeff: i32, out: *mut *mut c_char) -> FkStatus {
    guard(|| {
        let r = khovanov_report(&handle(link)?.0, &config(coeff, FK_POLICY_RIGHT, 3)?).map_err(lib_err)?;
        write_json(out, r)
    })
}

/// Flow category report as JSON.
///
/// # Safety
/// `link` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_flowcat_json(
    link: *const FkLink,
    coeff: i32,
    policy: i32,
    out: *mut *mut c_char,
) -> FkStatus {
    guard(|| {
        let r = flowcat_report(Some(&handle(link)?.0), None, "link", &config(coeff, policy, 3)?).map_err(lib_err)?;
        write_json(out, r)
    })
}

/// Report for the cube flow category of dimension `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fk_hypercube_json(n: usize, out: *mut *mut c_char) -> FkStatus {
    guard(|| {
        let cfg = config(FK_COEFF_GF2, FK_POLICY_RIGHT, 3)?;
        let r = flowcat_report(None, Some(n), &format!("hypercube {n}"), &cfg).map_err(lib_err)?;
        write_json(out, r)
    })
}

/// Parses a grid diagram (text or JSON).
///
/// # Safety
/// `grid` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_grid_parse(grid: *const c_char, out: *mut *mut FkGrid) -> FkStatus {
    guard(|| {
        let g = parse_grid(text(grid)?).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(FkGrid(g))))
    })
}

/// # Safety
/// `grid` must be NULL or a handle from `fk_grid_parse`, freed once.
#[no_mangle]
pub unsafe extern "C" fn fk_grid_free(grid: *mut FkGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// # Safety
/// `grid` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_grid_size(grid: *const FkGrid, out: *mut usize) -> FkStatus {
    guard(|| write_out(out, handle(grid)?.0.n()))
}

/// Total rank of tilde grid homology.
///
/// # Safety
/// `grid` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_grid_rank(grid: *const FkGrid, coeff: i32, out: *mut usize) -> FkStatus {
    guard(|| {
        let cfg = config(coeff, FK_POLICY_RIGHT, 3)?;
        let h = grid_homology(&handle(grid)?.0, cfg.coefficients).map_err(lib_err)?;
        write_out(out, h.total_rank())
    })
}

/// Grid homology report as JSON; with `cd` nonzero it includes the
/// obstruction complex up to index `mu_max`.
///
/// # Safety
/// `grid` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_grid_json(
    grid: *const FkGrid,
    coeff: i32,
    cd: bool,
    mu_max: i32,
    out: *mut *mut c_char,
) -> FkStatus {
    guard(|| {
        let r = grid_report(&handle(grid)?.0, cd, &config(coeff, FK_POLICY_RIGHT, mu_max)?).map_err(lib_err)?;
        write_json(out, r)
    })
}

/// Positive domain report as JSON.
///
/// # Safety
/// `grid` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_gridflow_json(grid: *const FkGrid, mu_max: i32, out: *mut *mut c_char) -> FkStatus {
    guard(|| {
        let cfg = config(FK_COEFF_INT, FK_POLICY_RIGHT, mu_max)?;
        let r = gridflow_report(&handle(grid)?.0, &cfg).map_err(lib_err)?;
        write_json(out, r)
    })
}
