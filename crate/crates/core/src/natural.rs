//! Bijective codings on the naturals shared by the term and pair numerations.
//!
//! Every code here is an arbitrary-precision [`BigUint`]; nested pairings
//! double the bit length at each level, so fixed-width integers overflow on
//! moderately sized inputs.

use num_bigint::BigUint;
use num_traits::Zero;

/// Cantor pairing `(x, y) ↦ (x + y)(x + y + 1)/2 + y`, a bijection ℕ² → ℕ.
pub fn cantor_pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    let tri = (&s * (&s + 1u32)) >> 1u32;
    tri + y
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let root = ((z << 3u32) + 1u32).sqrt();
    let w: BigUint = (root - 1u32) >> 1u32;
    let tri = (&w * (&w + 1u32)) >> 1u32;
    let y = z - tri;
    let x = &w - &y;
    (x, y)
}

/// Characteristic number `Σ 2^i` of a finite set of naturals.
pub fn bitset_code<I: IntoIterator<Item = u64>>(members: I) -> BigUint {
    let mut code = BigUint::zero();
    for m in members {
        code.set_bit(m, true);
    }
    code
}

/// Members of the finite set whose characteristic number is `code`, ascending.
pub fn bitset_members(code: &BigUint) -> Vec<u64> {
    (0..code.bits()).filter(|&i| code.bit(i)).collect()
}
