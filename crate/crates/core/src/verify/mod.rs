//! Bounded distance checks used to verify candidate pairs.
//!
//! [`banded_verify`] decides `ED(a, b) <= bound` touching at most
//! `bound + 1` matrix cells per row. [`extension_verify`] and
//! [`verify_posting_list`] exploit the matched segment of a candidate pair to
//! split the check into two much tighter banded checks, and the posting-list
//! form additionally reuses matrix rows across candidates that share prefixes.

mod banded;
mod extension;

pub use banded::{banded_verify, banded_verify_counted, DpCounter};
pub use extension::{extension_verify, verify_posting_list, Anchor, PostingVerifier};

