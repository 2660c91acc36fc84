use num_bigint::BigUint;
use num_traits::One;

use crate::cost::{bit_length, ResourceCost};

/// `C(i-1, floor((i-1)/2))` for `i = 1..=n`, the largest number of
/// neighbourhoods vertex `i` can choose between.
pub fn central_binomials(n: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n);
    let mut c = BigUint::one();
    for i in 1..=n {
        if i > 1 {
            // step from C(m, floor(m/2)) to C(m+1, floor((m+1)/2)) with m = i-2
            let m = (i - 2) as u64;
            let k = m / 2;
            if m.is_multiple_of(2) {
                c = c * (m + 1) / (k + 1);
            } else {
                c *= 2u32;
            }
        }
        out.push(c.clone());
    }
    out
}

fn bits_of(v: &BigUint) -> u64 {
    v.bits()
}

/// `a(n)`: random bits consumed by the vertex addition process on `n`
/// vertices, `a(1) = 0` and
/// `a(n) = a(n-1) + len(C_max(n) - 1) + len(n - 1)`:
/// the binary expansion of the degree draw plus the subset index at the
/// largest binomial coefficient.
pub fn randomness_cost_a(n: usize) -> u64 {
    assert!(n >= 1, "a(n) is defined for n >= 1");
    let central = central_binomials(n);
    let mut a = 0;
    for i in 2..=n {
        a += bits_of(&(&central[i - 1] - 1u32)) + bit_length((i - 1) as u64);
    }
    a
}

/// The summed form of `a(n)`:
/// `Σ_{i=3}^{n} floor(log2(C_max(i) - 1)) + Σ_{i=2}^{n} floor(log2(i - 1)) + 2n - 3`
/// for `n >= 2`, and 0 for `n = 1`.
pub fn randomness_cost_a_closed(n: usize) -> u64 {
    assert!(n >= 1, "a(n) is defined for n >= 1");
    if n == 1 {
        return 0;
    }
    let central = central_binomials(n);
    let subset: u64 = (3..=n).map(|i| bits_of(&(&central[i - 1] - 1u32)) - 1).sum();
    let degree: u64 = (2..=n).map(|i| bit_length((i - 1) as u64) - 1).sum();
    subset + degree + 2 * n as u64 - 3
}

/// `C(n, 2)`: one fair coin per dyad.
pub fn dyad_bits(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub fn vertex_addition_cost(n: usize) -> ResourceCost {
    ResourceCost { random_bits: randomness_cost_a(n), ..ResourceCost::default() }
}
