//! lie3cert: exact-arithmetic certification of the real subalgebra
//! classifications of sl3(R), su(2,1) and su(3).
//!
//! The crate encodes the classification tables, stabilizer families and
//! proof witnesses as a checkable registry, re-derives every verifiable
//! statement with exact arithmetic over Q(i, √2, √3), and reports a
//! per-claim verdict. See the `verifier` module and the `lie3cert` binary.

pub mod exactfield;
pub mod galois;
pub mod liecore;
pub mod linalg3;

pub(crate) fn serialize_opt_fe<S: serde::Serializer>(
    v: &Option<exactfield::FieldElement>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}
