use serde::Serializer;

use crate::binom::BigCount;

/// Big counts are serialized as decimal strings so arbitrary precision
/// survives JSON without loss.
pub fn big_as_string<S: Serializer>(v: &BigCount, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn opt_big_as_string<S: Serializer>(v: &Option<BigCount>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}
