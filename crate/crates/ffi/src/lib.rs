//! C ABI over revforge.
//!
//! States and reports are opaque handles released with their `_free`
//! function. Every fallible call returns an [`RfStatus`]; on failure the
//! message is available from [`rf_last_error_message`] on the same thread.
//! Strings returned through `char **out` are owned by the caller and must
//! be released with [`rf_string_free`].
//!
//! Formulas use the ASCII syntax (`~`, `&`, `|`, `->`, `<->`, `T`, `F`)
//! over atoms named `A`, `B`, `C`, ... in world-label order.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use revforge::postulates::{self, CheckOptions, CheckReport, InstanceSpace, Operators, PostulateId};
use revforge::scenario::{Format, Scenario};
use revforge::{
    Error, Language, ParallelContractionOperator, ParallelRevisionOperator, SerialRevision, Tpo,
    WorldSet,
};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    InvalidTpo = 4,
    InconsistentInput = 5,
    UnknownName = 6,
    SizeGuard = 7,
    IncompatibleConfig = 8,
    Scenario = 9,
    Panic = 10,
}

/// A belief state: a total preorder over worlds.
pub struct RfTpo(Tpo);

/// The result of a postulate check.
pub struct RfReport(CheckReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(RfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } | Error::UnknownAtom(_) | Error::InvalidWorld(_) => RfStatus::Syntax,
            Error::InvalidTpo(_) => RfStatus::InvalidTpo,
            Error::InconsistentInput { .. } => RfStatus::InconsistentInput,
            Error::UnknownOperator(_) | Error::UnknownStrategy(_) | Error::UnknownPostulate(_) => {
                RfStatus::UnknownName
            }
            Error::SizeGuard(_) => RfStatus::SizeGuard,
            Error::IncompatibleConfig(_) | Error::InvalidLanguage(_) | Error::Unsatisfiable => {
                RfStatus::IncompatibleConfig
            }
            Error::Scenario(_) | Error::Step { .. } => RfStatus::Scenario,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            RfStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(Some(message));
            status
        }
        Err(_) => {
            set_last_error(Some("internal panic".into()));
            RfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(RfStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(RfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn opt_str_arg<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, what).map(Some)
    }
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(RfStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_arg<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(RfStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn out_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(RfStatus::Panic, "string has a nul byte".into()))?;
    out_arg(out, c.into_raw())
}

unsafe fn out_tpo(out: *mut *mut RfTpo, t: Tpo) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(RfStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(Box::into_raw(Box::new(RfTpo(t))));
    Ok(())
}

/// Model sets of `count` formulas over the default language of `atoms`.
unsafe fn formula_models(
    atoms: usize,
    formulas: *const *const c_char,
    count: usize,
) -> Result<Vec<WorldSet>, Failure> {
    if count > 0 && formulas.is_null() {
        return Err(Failure(RfStatus::NullPointer, "formula array is null".into()));
    }
    let lang = Language::with_atom_count(atoms)?;
    (0..count)
        .map(|i| {
            let text = str_arg(*formulas.add(i), "formula")?;
            Ok(lang.parse(text)?.models(&lang))
        })
        .collect()
}

/// The message for the last failed call on this thread, or null. Valid
/// until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn rf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn rf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The state where every world over `atoms` atoms is equally plausible.
#[no_mangle]
pub unsafe extern "C" fn rf_tpo_uniform(atoms: u32, out: *mut *mut RfTpo) -> RfStatus {
    guard(|| {
        Language::with_atom_count(atoms as usize)?;
        out_tpo(out, Tpo::uniform(atoms as usize))
    })
}

/// Parses `[{00} < {01,10,11}]`, most plausible block first.
#[no_mangle]
pub unsafe extern "C" fn rf_tpo_parse(text: *const c_char, out: *mut *mut RfTpo) -> RfStatus {
    guard(|| out_tpo(out, Tpo::parse(str_arg(text, "text")?)?))
}

#[no_mangle]
pub unsafe extern "C" fn rf_tpo_free(t: *mut RfTpo) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

#[no_mangle]
pub unsafe extern "C" fn rf_tpo_atoms(t: *const RfTpo) -> u32 {
    t.as_ref().map_or(0, |t| t.0.atoms() as u32)
}

#[no_mangle]
pub unsafe extern "C" fn rf_tpo_render(t: *const RfTpo, out: *mut *mut c_char) -> RfStatus {
    guard(|| out_string(out, ref_arg(t, "state")?.0.render()))
}

/// Whether `formula` holds in every most plausible world.
#[no_mangle]
pub unsafe extern "C" fn rf_tpo_believes(
    t: *const RfTpo,
    formula: *const c_char,
    out: *mut bool,
) -> RfStatus {
    guard(|| {
        let t = &ref_arg(t, "state")?.0;
        let models = formula_models(t.atoms(), &formula, 1)?;
        out_arg(out, t.belief_worlds().is_subset(&models[0]))
    })
}

/// Revises by a set of formulas. `op` is an operator string such as
/// `parallel(base=natural, finisher=lex, agg=stq)`; null selects the
/// default operator.
#[no_mangle]
pub unsafe extern "C" fn rf_parallel_revise(
    t: *const RfTpo,
    op: *const c_char,
    formulas: *const *const c_char,
    count: usize,
    out: *mut *mut RfTpo,
) -> RfStatus {
    guard(|| {
        let t = &ref_arg(t, "state")?.0;
        let op: ParallelRevisionOperator = match opt_str_arg(op, "operator")? {
            Some(s) => s.parse()?,
            None => ParallelRevisionOperator::default(),
        };
        let members = formula_models(t.atoms(), formulas, count)?;
        out_tpo(out, op.apply(t, &members)?)
    })
}

/// Contracts by a set of formulas. `op` is an operator string such as
/// `parallel-contract(base=natural-contract, agg=stq)`, or null.
#[no_mangle]
pub unsafe extern "C" fn rf_parallel_contract(
    t: *const RfTpo,
    op: *const c_char,
    formulas: *const *const c_char,
    count: usize,
    out: *mut *mut RfTpo,
) -> RfStatus {
    guard(|| {
        let t = &ref_arg(t, "state")?.0;
        let op: ParallelContractionOperator = match opt_str_arg(op, "operator")? {
            Some(s) => s.parse()?,
            None => ParallelContractionOperator::default(),
        };
        let members = formula_models(t.atoms(), formulas, count)?;
        out_tpo(out, op.apply(t, &members))
    })
}

/// Serial revision by one formula; `op` is `natural`, `lex` or `restrained`.
#[no_mangle]
pub unsafe extern "C" fn rf_serial_revise(
    t: *const RfTpo,
    op: *const c_char,
    formula: *const c_char,
    out: *mut *mut RfTpo,
) -> RfStatus {
    guard(|| {
        let t = &ref_arg(t, "state")?.0;
        let op: SerialRevision = str_arg(op, "operator")?.parse()?;
        let models = formula_models(t.atoms(), &formula, 1)?;
        out_tpo(out, op.apply(t, &models[0])?)
    })
}

/// Checks a postulate. `op` is a parallel operator string or null; serial
/// postulates use its base operator. `samples == 0` enumerates every
/// instance (at most 2 atoms); otherwise `samples` instances are drawn
/// with `seed`.
#[no_mangle]
pub unsafe extern "C" fn rf_check(
    postulate: *const c_char,
    atoms: u32,
    op: *const c_char,
    samples: u64,
    seed: u64,
    out: *mut *mut RfReport,
) -> RfStatus {
    guard(|| {
        let id = PostulateId::parse(str_arg(postulate, "postulate")?)?;
        let parallel: ParallelRevisionOperator = match opt_str_arg(op, "operator")? {
            Some(s) => s.parse()?,
            None => ParallelRevisionOperator::default(),
        };
        let ops = Operators {
            serial: parallel.base,
            ..Operators::with_parallel(parallel)
        };
        let space = if samples == 0 {
            InstanceSpace::exhaustive(atoms as usize, ops)
        } else {
            InstanceSpace::sampled(atoms as usize, samples, seed, ops)
        };
        let report = postulates::check(id, &space, CheckOptions::default())?;
        if out.is_null() {
            return Err(Failure(RfStatus::NullPointer, "output pointer is null".into()));
        }
        out.write(Box::into_raw(Box::new(RfReport(report))));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rf_report_free(r: *mut RfReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Whether the outcome matches the postulate's expected status.
#[no_mangle]
pub unsafe extern "C" fn rf_report_passed(r: *const RfReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.passed())
}

#[no_mangle]
pub unsafe extern "C" fn rf_report_checked(r: *const RfReport) -> u64 {
    r.as_ref().map_or(0, |r| r.0.checked)
}

#[no_mangle]
pub unsafe extern "C" fn rf_report_violation_count(r: *const RfReport) -> u64 {
    r.as_ref().map_or(0, |r| r.0.violation_count)
}

#[no_mangle]
pub unsafe extern "C" fn rf_report_json(r: *const RfReport, out: *mut *mut c_char) -> RfStatus {
    guard(|| out_string(out, ref_arg(r, "report")?.0.to_json()))
}

/// Runs a JSON scenario and renders its trace as `text`, `json` or `dot`.
#[no_mangle]
pub unsafe extern "C" fn rf_run_scenario(
    scenario_json: *const c_char,
    format: *const c_char,
    out: *mut *mut c_char,
) -> RfStatus {
    guard(|| {
        let scenario = Scenario::from_json(str_arg(scenario_json, "scenario")?)?;
        let format: Format = str_arg(format, "format")?.parse()?;
        out_string(out, scenario.run()?.render(format))
    })
}
