use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: Z[zeta_{left}] vs Z[zeta_{right}]")]
    RingMismatch { left: u32, right: u32 },

    #[error("unsupported root-of-unity order {0} (expected one of 1, 2, 3, 4, 6)")]
    UnsupportedOrder(u32),

    #[error("model {model} cannot be realized over Z[zeta_{m}]")]
    IncompatibleModel { m: u32, model: &'static str },

    #[error("G({m},{p}) is not an admissible case: {reason}")]
    InvalidCase { m: u32, p: u32, reason: String },

    #[error("G(2,2) is excluded: the representation is not irreducible")]
    ReducibleCase,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("element is not a pseudoreflection")]
    NotPseudoreflection,

    #[error("matrix is singular")]
    Singular,

    #[error("kernel subgroup is not invariant under the group")]
    NotInvariant,

    #[error("kernel subgroup contains the axis element {0}")]
    AxisElement(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
