//! Offset sequences.
//!
//! An offset sequence records, for an elementary move at position `i`, the
//! signed clearances met while the move's effect is traced toward the
//! sink: one entry per position `i+1 ..= n-1`, each either an integer or a
//! bypass marker for a position the trace skips over. The same sequence is
//! computable from a flow and from the matching grove; zero entries are
//! exactly what blocks tracking.

use std::fmt;

use serde::{Serialize, Serializer};

/// One entry of an [`OffsetSeq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Offset {
    Int(i64),
    /// The trace stepped over this position.
    Bypass,
}

impl Offset {
    pub fn is_zero(self) -> bool {
        self == Offset::Int(0)
    }
}

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Offset::Int(z) => write!(f, "{z}"),
            Offset::Bypass => write!(f, "none"),
        }
    }
}

impl Serialize for Offset {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Offset::Int(z) => ser.serialize_i64(*z),
            Offset::Bypass => ser.serialize_str("none"),
        }
    }
}

/// Offset sequence for a move at position `i`: entries for `i+1 ..= n-1`,
/// possibly empty (a move at the last position has nothing to trace).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct OffsetSeq {
    entries: Vec<Offset>,
}

impl OffsetSeq {
    pub fn new(entries: Vec<Offset>) -> Self {
        OffsetSeq { entries }
    }

    pub fn entries(&self) -> &[Offset] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A zero entry means the traced move collides with an empty edge.
    pub fn has_zero(&self) -> bool {
        self.entries.iter().any(|e| e.is_zero())
    }
}

impl fmt::Display for OffsetSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_zero_detection() {
        let s = OffsetSeq::new(vec![Offset::Int(2), Offset::Bypass, Offset::Int(-1)]);
        assert_eq!(s.to_string(), "[2,none,-1]");
        assert!(!s.has_zero());
        let z = OffsetSeq::new(vec![Offset::Int(1), Offset::Int(0)]);
        assert!(z.has_zero());
        assert_eq!(OffsetSeq::new(vec![]).to_string(), "[]");
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2,\"none\",-1]");
    }
}
