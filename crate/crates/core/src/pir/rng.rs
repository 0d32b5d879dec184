use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::gf::Field;

/// Seeded counter-based stream mapped to uniform field elements by
/// rejection sampling.
#[derive(Debug, Clone)]
pub struct FieldRng {
    inner: ChaCha20Rng,
    seed: u64,
}

impl FieldRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha20Rng::seed_from_u64(seed),
            seed,
        }
    }

    /// Independent stream derived from this seed and a label.
    pub fn derive(seed: u64, label: u64) -> Self {
        let mut mixer = ChaCha20Rng::seed_from_u64(seed);
        mixer.set_stream(label);
        Self::new(mixer.next_u64())
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform integer in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let limit = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.inner.next_u64();
            if x < limit {
                return x % n;
            }
        }
    }

    pub fn element<F: Field>(&mut self, field: &F) -> F::Elem {
        field.from_index(self.below(field.order()))
    }

    pub fn nonzero_element<F: Field>(&mut self, field: &F) -> F::Elem {
        field.from_index(1 + self.below(field.order() - 1))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}
