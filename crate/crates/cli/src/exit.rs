//! Process exit codes.
//!
//! - `0`: a gdl was produced (or, for `verify`, the input is one)
//! - `1`: bad input: unparsable family, malformed JSON, I/O failure
//! - `2`: known non-existence (exception family or exhausted search)
//! - `3`: undecided: no construction applies, or the search ran out of budget

use gdl_core::{Certificate, Status};

pub const OK: i32 = 0;
pub const USAGE: i32 = 1;
pub const NO_GDL: i32 = 2;
pub const UNDECIDED: i32 = 3;

pub fn for_certificate(cert: &Certificate) -> i32 {
    match cert.status {
        Status::Gdl { .. } => OK,
        Status::NoGdlExhaustive { .. } | Status::Unsupported { exception: true, .. } => NO_GDL,
        Status::Unsupported { .. } | Status::Timeout { .. } => UNDECIDED,
    }
}
