//! Resource caps for enumeration-heavy operations.
//!
//! All counts are checked *before* materialising large objects, so a caller
//! that trips a cap pays only the cost of a counting pass.

/// Limits applied by enumeration and linear-algebra entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of multipartitions a single enumeration may produce.
    pub max_enumeration: usize,
    /// Maximum number of matrix cells a single linear-algebra problem may
    /// allocate.
    pub max_matrix_cells: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_enumeration: 1_000_000,
            max_matrix_cells: 25_000_000,
        }
    }
}

impl Caps {
    /// A cap set suitable for unit tests (small, so failures are cheap).
    pub fn tiny() -> Self {
        Caps {
            max_enumeration: 64,
            max_matrix_cells: 4_096,
        }
    }
}
