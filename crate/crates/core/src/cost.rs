use serde::Serialize;

/// Bits of each resource spent on one construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResourceCost {
    pub instruction_bits: u64,
    pub memory_bits: u64,
    pub random_bits: u64,
}

/// `b(k) = floor(log2 k) + 1`, the length of the binary expansion of `k >= 1`.
pub fn bit_length(k: u64) -> u64 {
    assert!(k >= 1, "bit_length is defined for k >= 1");
    u64::from(u64::BITS - k.leading_zeros())
}
