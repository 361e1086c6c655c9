//! Bit strings for intermediate values and message payloads (MSB first).

use bitvec::prelude::*;

pub type Bits = BitVec<u8, Msb0>;

/// Segment `index` of `count` equal contiguous segments.
pub fn segment(bits: &BitSlice<u8, Msb0>, count: usize, index: usize) -> Bits {
    let len = bits.len() / count;
    bits[index * len..(index + 1) * len].to_bitvec()
}

/// Concatenation of segments.
pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Bits>) -> Bits {
    let mut out = Bits::new();
    for p in parts {
        out.extend_from_bitslice(p);
    }
    out
}

pub fn xor(a: &BitSlice<u8, Msb0>, b: &BitSlice<u8, Msb0>) -> Bits {
    assert_eq!(a.len(), b.len(), "xor of unequal lengths");
    let mut out = a.to_bitvec();
    out ^= b;
    out
}

/// Reads up to 64 bits as an integer, first bit most significant.
pub fn to_u64(bits: &BitSlice<u8, Msb0>) -> u64 {
    assert!(bits.len() <= 64);
    bits.iter().fold(0u64, |acc, b| (acc << 1) | *b as u64)
}

pub fn from_u64(value: u64, len: usize) -> Bits {
    assert!(len <= 64);
    (0..len).rev().map(|i| (value >> i) & 1 == 1).collect()
}

/// Lowercase hex of the backing bytes; trailing pad bits are zero.
pub fn to_hex(bits: &Bits) -> String {
    let mut b = bits.clone();
    b.set_uninitialized(false);
    hex::encode(b.as_raw_slice())
}
