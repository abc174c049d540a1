use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Which guarded quantity a [`Error::ResourceExceeded`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    /// Attribute count of a materialized vote matrix.
    MatrixAttributes,
    /// Size of a parent set handed to the fixed-parent-set solver.
    ParentBits,
    /// Size of the candidate pool of the exhaustive oracle.
    ExhaustivePool,
    /// Total rule count of a generated instance.
    GeneratedRules,
}

impl core::fmt::Display for Resource {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Resource::MatrixAttributes => "matrix attribute count",
            Resource::ParentBits => "parent set size",
            Resource::ExhaustivePool => "exhaustive pool size",
            Resource::GeneratedRules => "generated rule count",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("attribute count {0} outside the supported range 1..={max}", max = crate::MAX_ATTRIBUTES)]
    UnsupportedAttributeCount(usize),
    #[error("attribute {attr} out of range for n = {n} (parents must be < {limit})", limit = n.saturating_sub(1))]
    AttributeOutOfRange { attr: usize, n: usize },
    #[error("incomplete CPT: parent set needs {expected} rules, got {found}")]
    IncompleteCpt { expected: usize, found: usize },
    #[error("an instance needs at least one CPT")]
    EmptyInstance,
    #[error("attribute universes differ: n = {left} vs n = {right}")]
    UniverseMismatch { left: usize, right: usize },
    #[error("invalid selection: {0}")]
    InvalidSelection(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("resource guard exceeded: {resource} {requested} > limit {limit}")]
    ResourceExceeded { resource: Resource, requested: u64, limit: u64 },
}

impl Error {
    /// True for guard violations, as opposed to malformed input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceExceeded { .. })
    }
}
