//! C ABI over `balanced-forge`.
//!
//! Objects cross the boundary as opaque handles (`BfCatalog`, `BfGame`,
//! `BfHypergraph`) created by `bf_*` constructors and released with the
//! matching `*_free`. Every fallible call returns a [`BfStatus`]; on failure
//! `bf_last_error_message` describes the problem for the calling thread.
//! Strings handed out by the library are NUL-terminated UTF-8 and must be
//! released with [`bf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use balanced_forge::catalog::CollectionJson;
use balanced_forge::counting::{count_cumulative, count_spanning, count_total};
use balanced_forge::enumeration::{duality_bound, enumerate_mbc, enumerate_mbc_oracle, mbc_via_duality};
use balanced_forge::games::{core_lp, core_mbc, random_game, CoreVerdict, Game};
use balanced_forge::{arith::format_rational, decompose_all, Error, Hypergraph, MbcCatalog};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    OutOfRange = 3,
    Parse = 4,
    Validation = 5,
    Version = 6,
    Incomplete = 7,
    Io = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfMethod {
    Direct = 0,
    Duality = 1,
    Oracle = 2,
}

pub struct BfCatalog(MbcCatalog);
pub struct BfGame(Game);
pub struct BfHypergraph(Hypergraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BfStatus {
    match e {
        Error::InvalidInput(_) | Error::DimensionMismatch { .. } => BfStatus::InvalidInput,
        Error::OutOfRange(_) => BfStatus::OutOfRange,
        Error::Parse(_) | Error::Json(_) => BfStatus::Parse,
        Error::Validation(_) => BfStatus::Validation,
        Error::Version(_) => BfStatus::Version,
        Error::Incomplete(_) => BfStatus::Incomplete,
        Error::Io(_) => BfStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BfStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            BfStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            BfStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn as_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::Parse(format!("{what} is not valid UTF-8"))))
}

unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Lib(Error::Validation("string holds a NUL byte".into())))?;
    put(out, c.into_raw(), "out")
}

unsafe fn put_box<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(value)), "out")
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn bf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn bf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Enumerates the minimal balanced collections on `n` players.
///
/// # Safety
/// `out` must be a valid pointer; on success it receives a new handle.
#[no_mangle]
pub unsafe extern "C" fn bf_catalog_enumerate(n: usize, method: BfMethod, out: *mut *mut BfCatalog) -> BfStatus {
    guard(|| {
        let cat = match method {
            BfMethod::Direct => enumerate_mbc(n)?,
            BfMethod::Oracle => enumerate_mbc_oracle(n)?,
            BfMethod::Duality => mbc_via_duality(n, duality_bound(n))?,
        };
        put_box(out, BfCatalog(cat))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_catalog_load(path: *const c_char, out: *mut *mut BfCatalog) -> BfStatus {
    guard(|| {
        let path = as_str(path, "path")?;
        put_box(out, BfCatalog(MbcCatalog::load(Path::new(path))?))
    })
}

/// # Safety
/// `cat` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn bf_catalog_save(cat: *const BfCatalog, path: *const c_char) -> BfStatus {
    guard(|| {
        let cat = as_ref(cat, "catalog")?;
        cat.0.save(Path::new(as_str(path, "path")?))?;
        Ok(())
    })
}

/// Number of collections, or 0 for NULL.
///
/// # Safety
/// `cat` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bf_catalog_len(cat: *const BfCatalog) -> usize {
    cat.as_ref().map_or(0, |c| c.0.len())
}

/// Player count, or 0 for NULL.
///
/// # Safety
/// `cat` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bf_catalog_players(cat: *const BfCatalog) -> usize {
    cat.as_ref().map_or(0, |c| c.0.n())
}

/// Text form of collection `index`, e.g. `n=3; [{1,2}:1/2, {1,3}:1/2, {2,3}:1/2]`.
///
/// # Safety
/// `cat` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_catalog_collection(cat: *const BfCatalog, index: usize, out: *mut *mut c_char) -> BfStatus {
    guard(|| {
        let cat = as_ref(cat, "catalog")?;
        let b = cat.0.collections().get(index).ok_or_else(|| {
            Error::OutOfRange(format!("index {index} past {} collections", cat.0.len()))
        })?;
        put_string(out, b.to_string())
    })
}

/// # Safety
/// `cat` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn bf_catalog_free(cat: *mut BfCatalog) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

/// Parses a game from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_game_from_json(json: *const c_char, out: *mut *mut BfGame) -> BfStatus {
    guard(|| {
        let value: serde_json::Value = serde_json::from_str(as_str(json, "json")?).map_err(Error::from)?;
        put_box(out, BfGame(Game::from_json(&value)?))
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_game_random(n: usize, seed: u64, magnitude: u64, out: *mut *mut BfGame) -> BfStatus {
    guard(|| put_box(out, BfGame(random_game(n, seed, magnitude)?)))
}

/// # Safety
/// `game` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_game_to_json(game: *const BfGame, out: *mut *mut c_char) -> BfStatus {
    guard(|| {
        let g = as_ref(game, "game")?;
        put_string(out, g.0.to_json().to_string())
    })
}

/// Decides whether the core is nonempty. With a NULL `catalog` the linear
/// program decides; otherwise the catalog's collections do. The certificate
/// is written as JSON: `{"nonempty":true,"point":[...]}` or
/// `{"nonempty":false,"collection":{...},"efficiency":"..."}`.
///
/// # Safety
/// `game` must be a live handle, `catalog` NULL or a live handle, and both
/// out-pointers valid. `certificate` may be NULL to skip it.
#[no_mangle]
pub unsafe extern "C" fn bf_game_core(
    game: *const BfGame,
    catalog: *const BfCatalog,
    nonempty: *mut bool,
    certificate: *mut *mut c_char,
) -> BfStatus {
    guard(|| {
        let g = &as_ref(game, "game")?.0;
        let verdict = match catalog.as_ref() {
            Some(cat) => core_mbc(g, &cat.0)?,
            None => core_lp(g)?,
        };
        put(nonempty, verdict.is_nonempty(), "nonempty")?;
        if !certificate.is_null() {
            let json = match &verdict {
                CoreVerdict::Nonempty { point } => serde_json::json!({
                    "nonempty": true,
                    "point": point.iter().map(format_rational).collect::<Vec<_>>(),
                }),
                CoreVerdict::Empty { collection, efficiency } => serde_json::json!({
                    "nonempty": false,
                    "collection": CollectionJson::from(collection),
                    "efficiency": format_rational(efficiency),
                }),
            };
            put_string(certificate, json.to_string())?;
        }
        Ok(())
    })
}

/// # Safety
/// `game` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn bf_game_free(game: *mut BfGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Parses `n=3; edges=[{1,2},{1,3},{2,3}]`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_hypergraph_parse(text: *const c_char, out: *mut *mut BfHypergraph) -> BfStatus {
    guard(|| put_box(out, BfHypergraph(as_str(text, "text")?.parse()?)))
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_hypergraph_to_string(h: *const BfHypergraph, out: *mut *mut c_char) -> BfStatus {
    guard(|| put_string(out, as_ref(h, "hypergraph")?.0.to_string()))
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_hypergraph_dual(h: *const BfHypergraph, out: *mut *mut BfHypergraph) -> BfStatus {
    guard(|| put_box(out, BfHypergraph(as_ref(h, "hypergraph")?.0.dual()?)))
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_hypergraph_is_minimally_uniform(h: *const BfHypergraph, out: *mut bool) -> BfStatus {
    guard(|| put(out, as_ref(h, "hypergraph")?.0.is_minimally_uniform(), "out"))
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_hypergraph_is_minimally_regular(h: *const BfHypergraph, out: *mut bool) -> BfStatus {
    guard(|| put(out, as_ref(h, "hypergraph")?.0.is_minimally_regular(), "out"))
}

/// Every partition into minimally uniform blocks, as a JSON list of lists
/// of blocks.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_hypergraph_decompose_all(h: *const BfHypergraph, out: *mut *mut c_char) -> BfStatus {
    guard(|| {
        let parts = decompose_all(&as_ref(h, "hypergraph")?.0)?;
        let v: Vec<Vec<Vec<usize>>> = parts
            .iter()
            .map(|p| p.blocks.iter().map(|b| b.nodes.players().collect()).collect())
            .collect();
        put_string(out, serde_json::to_string(&v).map_err(Error::from)?)
    })
}

/// # Safety
/// `h` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn bf_hypergraph_free(h: *mut BfHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Spanning `k`-uniform hypergraphs with `p` edges on exactly `n` labeled
/// nodes, written in decimal.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_count_spanning(n: u64, k: u64, p: u64, out: *mut *mut c_char) -> BfStatus {
    guard(|| put_string(out, count_spanning(n, k, p).to_string()))
}

/// `k`-uniform hypergraphs with `p` edges on `n` nodes, spanning or not.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_count_total(n: u64, k: u64, p: u64, out: *mut *mut c_char) -> BfStatus {
    guard(|| put_string(out, count_total(n, k, p).to_string()))
}

/// Spanning counts summed over node counts `k..=n_max`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bf_count_cumulative(n_max: u64, k: u64, p: u64, out: *mut *mut c_char) -> BfStatus {
    guard(|| put_string(out, count_cumulative(n_max, k, p).to_string()))
}
