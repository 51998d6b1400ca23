//! C ABI over the girth8 toolkit. Field contexts are opaque handles; every
//! function returns an error code and writes results through out-pointers.
//! The header is generated into include/girth8.h at build time.

use std::os::raw::c_int;

use girth8::ffield::FieldContext;
use girth8::filters::alpha;
use girth8::monograph::{GirthMode, MonomialGraph, MonomialGraphSpec};
use girth8::permpoly::{eval_a, eval_b, is_pp_bruteforce, is_pp_a_hermite, is_pp_b_hermite};

/// Status codes returned by every fallible function.
pub const GIRTH8_OK: c_int = 0;
/// A pointer argument was null.
pub const GIRTH8_ERR_NULL: c_int = 1;
/// An argument was out of range or otherwise invalid.
pub const GIRTH8_ERR_INVALID: c_int = 2;
/// The requested object could not be constructed.
pub const GIRTH8_ERR_CONSTRUCT: c_int = 3;

/// Opaque finite-field handle.
pub struct Girth8Field {
    ctx: FieldContext,
}

/// Build F_{p^e}. On success writes a handle that must be released with
/// `girth8_field_free`.
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn girth8_field_new(p: u64, e: u32, out: *mut *mut Girth8Field) -> c_int {
    if out.is_null() {
        return GIRTH8_ERR_NULL;
    }
    match FieldContext::build(p, e) {
        Ok(ctx) => {
            let handle = Box::into_raw(Box::new(Girth8Field { ctx }));
            unsafe { *out = handle };
            GIRTH8_OK
        }
        Err(_) => GIRTH8_ERR_CONSTRUCT,
    }
}

/// Release a field handle. Null is a no-op.
/// # Safety
/// `field` must be null or a handle from `girth8_field_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn girth8_field_free(field: *mut Girth8Field) {
    if !field.is_null() {
        drop(unsafe { Box::from_raw(field) });
    }
}

/// Field order q = p^e.
/// # Safety
/// `field` must be a live handle; `out_q` must be valid for one u64 write.
#[no_mangle]
pub unsafe extern "C" fn girth8_field_order(field: *const Girth8Field, out_q: *mut u64) -> c_int {
    if field.is_null() || out_q.is_null() {
        return GIRTH8_ERR_NULL;
    }
    unsafe { *out_q = (*field).ctx.q() };
    GIRTH8_OK
}

fn pp_out(is_pp: bool, out: *mut c_int) -> c_int {
    unsafe { *out = is_pp as c_int };
    GIRTH8_OK
}

/// Whether A_k = X^k[(X+1)^k - X^k] permutes the field (brute force).
/// # Safety
/// `field` must be a live handle; `out_is_pp` must be valid for one int write.
#[no_mangle]
pub unsafe extern "C" fn girth8_is_pp_a(field: *const Girth8Field, k: u64, out_is_pp: *mut c_int) -> c_int {
    if field.is_null() || out_is_pp.is_null() {
        return GIRTH8_ERR_NULL;
    }
    let ctx = unsafe { &(*field).ctx };
    if k == 0 || k >= ctx.q() {
        return GIRTH8_ERR_INVALID;
    }
    pp_out(is_pp_bruteforce(ctx, |x| eval_a(ctx, k, x)).is_pp, out_is_pp)
}

/// Whether B_k = [(X+1)^{2k} - 1]X^{q-1-k} - 2X^{q-1} permutes the field
/// (brute force).
/// # Safety
/// `field` must be a live handle; `out_is_pp` must be valid for one int write.
#[no_mangle]
pub unsafe extern "C" fn girth8_is_pp_b(field: *const Girth8Field, k: u64, out_is_pp: *mut c_int) -> c_int {
    if field.is_null() || out_is_pp.is_null() {
        return GIRTH8_ERR_NULL;
    }
    let ctx = unsafe { &(*field).ctx };
    if k == 0 || k >= ctx.q() {
        return GIRTH8_ERR_INVALID;
    }
    pp_out(is_pp_bruteforce(ctx, |x| eval_b(ctx, k, x)).is_pp, out_is_pp)
}

/// Same tests via Hermite's criterion; needs only (q, p, k).
/// # Safety
/// `out_is_pp` must be valid for one int write.
#[no_mangle]
pub unsafe extern "C" fn girth8_is_pp_a_hermite(q: u64, p: u64, k: u64, out_is_pp: *mut c_int) -> c_int {
    if out_is_pp.is_null() {
        return GIRTH8_ERR_NULL;
    }
    if k == 0 || k >= q {
        return GIRTH8_ERR_INVALID;
    }
    pp_out(is_pp_a_hermite(q, p, k).is_pp, out_is_pp)
}

/// # Safety
/// `out_is_pp` must be valid for one int write.
#[no_mangle]
pub unsafe extern "C" fn girth8_is_pp_b_hermite(q: u64, p: u64, k: u64, out_is_pp: *mut c_int) -> c_int {
    if out_is_pp.is_null() {
        return GIRTH8_ERR_NULL;
    }
    if k == 0 || k >= q {
        return GIRTH8_ERR_INVALID;
    }
    pp_out(is_pp_b_hermite(q, p, k).is_pp, out_is_pp)
}

/// alpha(p): smallest positive even u with C(u, u/2) = (-1)^{u/2} 2^u mod p.
/// # Safety
/// `out_alpha` must be valid for one u64 write.
#[no_mangle]
pub unsafe extern "C" fn girth8_alpha(p: u64, out_alpha: *mut u64) -> c_int {
    if out_alpha.is_null() {
        return GIRTH8_ERR_NULL;
    }
    match alpha(p) {
        Ok(rec) => {
            unsafe { *out_alpha = rec.alpha };
            GIRTH8_OK
        }
        Err(_) => GIRTH8_ERR_INVALID,
    }
}

/// Girth of G_q(X^{m1}Y^{n1}, X^{m2}Y^{n2}) by exhaustive BFS when
/// `symmetry_mode` is 0, or rooted only at representative points when 1.
/// Writes 0 when the graph is acyclic.
/// # Safety
/// `field` must be a live handle; `out_girth` must be valid for one u32 write.
#[no_mangle]
pub unsafe extern "C" fn girth8_girth(
    field: *const Girth8Field,
    m1: u64,
    n1: u64,
    m2: u64,
    n2: u64,
    symmetry_mode: c_int,
    out_girth: *mut u32,
) -> c_int {
    if field.is_null() || out_girth.is_null() {
        return GIRTH8_ERR_NULL;
    }
    let ctx = unsafe { &(*field).ctx };
    let spec = match MonomialGraphSpec::new(ctx.q(), m1, n1, m2, n2) {
        Ok(s) => s,
        Err(_) => return GIRTH8_ERR_INVALID,
    };
    let graph = match MonomialGraph::new(ctx, spec) {
        Ok(g) => g,
        Err(_) => return GIRTH8_ERR_CONSTRUCT,
    };
    let mode = if symmetry_mode == 0 {
        GirthMode::Full
    } else {
        GirthMode::Symmetry
    };
    match graph.girth(mode) {
        Ok(r) => {
            unsafe { *out_girth = r.girth.unwrap_or(0) };
            GIRTH8_OK
        }
        Err(_) => GIRTH8_ERR_INVALID,
    }
}
