//! Serde helpers for the certificate wire formats.

/// Serializes a 0-based index as 1-based, matching the generator numbering
/// used everywhere in serialized certificates and rendered reports.
pub(crate) mod one_based {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(index: &usize, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u64(*index as u64 + 1)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<usize, D::Error> {
        let raw = usize::deserialize(deserializer)?;
        raw.checked_sub(1)
            .ok_or_else(|| D::Error::custom("index must be 1-based (got 0)"))
    }
}
