//! Seeded sample streams used to certify identities beyond frame tuples.
//!
//! Every check draws from its own stream. The stream seed is
//! `seed XOR fnv1a64(label)` (FNV-1a, offset `0xcbf29ce484222325`, prime
//! `0x100000001b3`), fed to SplitMix64:
//!
//! ```text
//! state += 0x9e3779b97f4a7c15
//! z = state
//! z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//! z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//! output z ^ (z >> 31)
//! ```
//!
//! A random polynomial assigns each monomial of total degree `<= max_degree`,
//! visited in ascending graded-lex order, the coefficient `(next % 7) - 3`.
//! Graded samples fill their components blade by blade in index-lex order;
//! random degrees in `0..=max` are drawn as `next % (max + 1)`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{AlgebraError, Result};
use crate::graded::{blades, Graded, Kind};
use crate::scalar::{rational, Scalar};

/// Sampling parameters shared by every verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub max_degree: u32,
    pub trials: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_degree: 2,
            trials: 32,
        }
    }
}

impl SampleConfig {
    pub fn new(seed: u64, max_degree: u32, trials: usize) -> Result<Self> {
        if trials == 0 {
            return Err(AlgebraError::InvalidStructure(
                "sample trials must be at least 1".into(),
            ));
        }
        Ok(Self {
            seed,
            max_degree,
            trials,
        })
    }
}

pub fn fnv1a64(label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Exponent vectors of total degree `<= max_degree`, ascending graded-lex.
fn monomials(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn with_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
        if nvars == 0 {
            return if d == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 0..=d {
            for mut rest in with_degree(nvars - 1, d - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    (0..=max_degree).flat_map(|d| with_degree(nvars, d)).collect()
}

pub struct Sampler {
    rng: SplitMix64,
    nvars: usize,
    monomials: Vec<Vec<u32>>,
}

impl Sampler {
    pub fn new(config: &SampleConfig, nvars: usize, label: &str) -> Self {
        let state = config.seed ^ fnv1a64(label);
        Self {
            rng: SplitMix64::from_seed(state.to_le_bytes()),
            nvars,
            monomials: monomials(nvars, config.max_degree),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn coefficient(&mut self) -> i64 {
        (self.next_u64() % 7) as i64 - 3
    }

    pub fn scalar(&mut self) -> Scalar {
        let mut out = Scalar::zero(self.nvars);
        for k in 0..self.monomials.len() {
            let c = self.coefficient();
            let exps = self.monomials[k].clone();
            out += &Scalar::monomial(self.nvars, exps, rational(c)).expect("sized by nvars");
        }
        out
    }

    pub fn graded<K: Kind>(&mut self, rank: usize, degree: usize) -> Graded<K> {
        let mut out = Graded::zero(rank, degree, self.nvars);
        for b in blades(rank, degree) {
            let c = self.scalar();
            out.insert(b, c);
        }
        out
    }

    /// A degree in `0..=max`, drawn as `next % (max + 1)`.
    pub fn degree(&mut self, max: usize) -> usize {
        (self.next_u64() % (max as u64 + 1)) as usize
    }

    pub fn section(&mut self, rank: usize) -> Graded<crate::graded::Vectors> {
        self.graded(rank, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_stream() {
        let mut rng = SplitMix64::from_seed(0u64.to_le_bytes());
        assert_eq!(rng.next_u64(), 0xe220_a839_7b1d_cdaf);
        assert_eq!(rng.next_u64(), 0x6e78_9e6a_a1b9_65f4);
    }

    #[test]
    fn fnv_reference() {
        assert_eq!(fnv1a64(""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a64("a"), 0xaf63_dc4c_8601_ec8c);
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(monomials(3, 2).len(), 10);
        assert_eq!(monomials(0, 2), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn streams_are_reproducible_and_labelled() {
        let cfg = SampleConfig::default();
        let a: Vec<Scalar> = {
            let mut s = Sampler::new(&cfg, 2, "alpha");
            (0..4).map(|_| s.scalar()).collect()
        };
        let b: Vec<Scalar> = {
            let mut s = Sampler::new(&cfg, 2, "alpha");
            (0..4).map(|_| s.scalar()).collect()
        };
        let c: Vec<Scalar> = {
            let mut s = Sampler::new(&cfg, 2, "beta");
            (0..4).map(|_| s.scalar()).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.iter().all(|p| p.total_degree().unwrap_or(0) <= 2));
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(SampleConfig::new(1, 2, 0).is_err());
    }
}
