//! SplitMix64: the 64-bit mixing generator behind every seeded draw in this
//! crate. Fixed constants and wrapping arithmetic make the stream identical
//! on every platform.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..=max` by rejection sampling (no modulo bias).
    pub fn up_to(&mut self, max: u64) -> u64 {
        let Some(bound) = max.checked_add(1) else {
            return self.next_u64();
        };
        let zone = (u64::MAX / bound) * bound;
        loop {
            let r = self.next_u64();
            if r < zone {
                return r % bound;
            }
        }
    }
}
