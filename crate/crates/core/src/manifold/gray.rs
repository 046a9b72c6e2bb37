//! Binary-reflected Gray code.

#[inline]
pub fn gray_encode(i: u64) -> u64 {
    i ^ (i >> 1)
}

#[inline]
pub fn gray_decode(mut g: u64) -> u64 {
    let mut shift = 1;
    while shift < 64 {
        g ^= g >> shift;
        shift <<= 1;
    }
    g
}
