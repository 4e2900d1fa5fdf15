//! C ABI over privarg-core.
//!
//! Every fallible function returns a [`PrivargStatus`]; on failure the
//! message is available from [`privarg_last_error`] on the same thread.
//! Handles are opaque and must be released with their `_free` function.
//! Strings returned through out-parameters are owned by the caller and
//! released with [`privarg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use privarg_core::argumentation::Side;
use privarg_core::config::RunConfig;
use privarg_core::dataset::{self, generate_dataset, Dataset, GenParams};
use privarg_core::dispute::{run_dispute, DisputeOutcome, EngineOptions, Team, Teams};
use privarg_core::error::Error;
use privarg_core::explain::export_graph;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrivargStatus {
    Ok = 0,
    InvalidInput = 1,
    Parse = 2,
    Protocol = 3,
    Engine = 4,
    Io = 5,
    ResourceLimit = 6,
    NullPointer = 7,
    Panic = 8,
}

/// A generated or parsed dataset.
pub struct PrivargDataset {
    inner: Dataset,
}

/// A finished dispute.
pub struct PrivargOutcome {
    inner: DisputeOutcome,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PrivargStatus {
    match e {
        Error::ResourceLimit { .. } => PrivargStatus::ResourceLimit,
        Error::InvalidInput(_) => PrivargStatus::InvalidInput,
        Error::ProtocolViolation { .. } | Error::IllegalMove(_) => PrivargStatus::Protocol,
        Error::EngineInvariant(_) => PrivargStatus::Engine,
        Error::Parse { .. } => PrivargStatus::Parse,
        Error::Case { source, .. } => status_of(source),
        Error::Io { .. } => PrivargStatus::Io,
    }
}

enum Fail {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

/// Runs `f`, turning errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PrivargStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PrivargStatus::Ok,
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("`{what}` is a null pointer"));
            PrivargStatus::NullPointer
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            PrivargStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Core(Error::invalid(format!("`{what}` is not valid UTF-8"))))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior nul")
        .into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn privarg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn privarg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn privarg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Generates a dataset; the ratios of ordinary premises and defeasible
/// rules keep their defaults.
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn privarg_dataset_generate(
    dispute_amount: usize,
    dispute_size: usize,
    max_argument_size: usize,
    max_branches: usize,
    seed: u64,
    out: *mut *mut PrivargDataset,
) -> PrivargStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let params = GenParams {
            dispute_amount,
            dispute_size,
            max_argument_size,
            max_branches,
            seed,
            ..GenParams::default()
        };
        let inner = generate_dataset(&params)?;
        *out = Box::into_raw(Box::new(PrivargDataset { inner }));
        Ok(())
    })
}

/// # Safety
/// `text` must be a nul-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn privarg_dataset_parse(
    text: *const c_char,
    out: *mut *mut PrivargDataset,
) -> PrivargStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let out = out_arg(out, "out")?;
        let inner = dataset::parse(text)?;
        *out = Box::into_raw(Box::new(PrivargDataset { inner }));
        Ok(())
    })
}

/// # Safety
/// `ds` must be a live dataset handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn privarg_dataset_serialize(
    ds: *const PrivargDataset,
    out: *mut *mut c_char,
) -> PrivargStatus {
    guard(|| {
        let ds = ref_arg(ds, "ds")?;
        let out = out_arg(out, "out")?;
        *out = c_string(dataset::serialize(&ds.inner));
        Ok(())
    })
}

/// Number of cases, or 0 for a null handle.
///
/// # Safety
/// `ds` must be null or a live dataset handle.
#[no_mangle]
pub unsafe extern "C" fn privarg_dataset_case_count(ds: *const PrivargDataset) -> usize {
    ds.as_ref().map_or(0, |d| d.inner.cases.len())
}

/// # Safety
/// `ds` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn privarg_dataset_free(ds: *mut PrivargDataset) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// Runs one dispute. Teams are comma-separated agent references: `indifferent`,
/// a user type such as `amateur`, or a behavior such as `shortest:all_args:50`.
///
/// # Safety
/// `ds` must be a live dataset handle, the strings nul-terminated and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn privarg_dispute_run(
    ds: *const PrivargDataset,
    case_id: *const c_char,
    proponent_team: *const c_char,
    opponent_team: *const c_char,
    seed: u64,
    out: *mut *mut PrivargOutcome,
) -> PrivargStatus {
    guard(|| {
        let ds = ref_arg(ds, "ds")?;
        let case_id = str_arg(case_id, "case_id")?;
        let pro = str_arg(proponent_team, "proponent_team")?;
        let opp = str_arg(opponent_team, "opponent_team")?;
        let out = out_arg(out, "out")?;
        let case = ds
            .inner
            .cases
            .iter()
            .find(|c| c.id == case_id)
            .ok_or_else(|| Error::invalid(format!("no case `{case_id}`")))?;
        let cfg = RunConfig::default();
        let team = |side, roster: &str| -> Result<Team, Error> {
            let members = roster
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|n| cfg.agent(n))
                .collect::<Result<Vec<_>, _>>()?;
            Team::new(side, members)
        };
        let teams = Teams::new(team(Side::Proponent, pro)?, team(Side::Opponent, opp)?)?;
        let prepared = Arc::new(case.clone().prepare()?);
        let inner = run_dispute(&prepared, &teams, seed, EngineOptions::default())?;
        *out = Box::into_raw(Box::new(PrivargOutcome { inner }));
        Ok(())
    })
}

/// 0 when the proponent won, 1 when the opponent won, -1 for a null handle.
///
/// # Safety
/// `o` must be null or a live outcome handle.
#[no_mangle]
pub unsafe extern "C" fn privarg_outcome_winner(o: *const PrivargOutcome) -> i32 {
    match o.as_ref() {
        None => -1,
        Some(o) => match o.inner.winner {
            Side::Proponent => 0,
            Side::Opponent => 1,
        },
    }
}

/// Participants, proponents first, or 0 for a null handle.
///
/// # Safety
/// `o` must be null or a live outcome handle.
#[no_mangle]
pub unsafe extern "C" fn privarg_outcome_participant_count(o: *const PrivargOutcome) -> usize {
    o.as_ref().map_or(0, |o| o.inner.concealment.len())
}

/// Number of extensions made before the forfeit.
///
/// # Safety
/// `o` must be null or a live outcome handle.
#[no_mangle]
pub unsafe extern "C" fn privarg_outcome_move_count(o: *const PrivargOutcome) -> usize {
    o.as_ref().map_or(0, |o| o.inner.state.move_log().len())
}

/// # Safety
/// `o` must be a live outcome handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn privarg_outcome_concealment(
    o: *const PrivargOutcome,
    participant: usize,
    out: *mut f64,
) -> PrivargStatus {
    guard(|| {
        let o = ref_arg(o, "o")?;
        let out = out_arg(out, "out")?;
        *out = *o.inner.concealment.get(participant).ok_or_else(|| {
            Error::invalid(format!(
                "participant {participant} out of range ({} participants)",
                o.inner.concealment.len()
            ))
        })?;
        Ok(())
    })
}

/// Move log, one line per extension.
///
/// # Safety
/// `o` must be a live outcome handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn privarg_outcome_trace(
    o: *const PrivargOutcome,
    out: *mut *mut c_char,
) -> PrivargStatus {
    guard(|| {
        let o = ref_arg(o, "o")?;
        let out = out_arg(out, "out")?;
        *out = c_string(o.inner.state.trace());
        Ok(())
    })
}

/// Final argument graph in DOT.
///
/// # Safety
/// `o` must be a live outcome handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn privarg_outcome_dot(
    o: *const PrivargOutcome,
    out: *mut *mut c_char,
) -> PrivargStatus {
    guard(|| {
        let o = ref_arg(o, "o")?;
        let out = out_arg(out, "out")?;
        *out = c_string(export_graph(&o.inner));
        Ok(())
    })
}

/// # Safety
/// `o` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn privarg_outcome_free(o: *mut PrivargOutcome) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}
