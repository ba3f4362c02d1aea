//! File library and demand vectors.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// `N` equal-length files of `F` bits each. `F` is always a whole number of
/// bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Library {
    file_size_bits: u64,
    contents: Vec<Vec<u8>>,
}

impl Library {
    pub fn new(contents: Vec<Vec<u8>>) -> Result<Self> {
        let len = contents.first().map_or(0, Vec::len);
        if contents.iter().any(|f| f.len() != len) {
            return Err(Error::LengthError("library files differ in length".into()));
        }
        Ok(Self { file_size_bits: 8 * len as u64, contents })
    }

    /// Uniformly random library from a seed.
    pub fn random(n_files: usize, file_size_bits: u64, seed: u64) -> Result<Self> {
        if file_size_bits % 8 != 0 {
            return Err(Error::IndivisibleFileSize {
                bits: file_size_bits,
                reason: "file size must be a whole number of bytes".into(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let contents = (0..n_files)
            .map(|_| {
                let mut f = vec![0u8; (file_size_bits / 8) as usize];
                rng.fill_bytes(&mut f);
                f
            })
            .collect();
        Ok(Self { file_size_bits, contents })
    }

    pub fn n_files(&self) -> usize {
        self.contents.len()
    }

    pub fn file_size_bits(&self) -> u64 {
        self.file_size_bits
    }

    pub fn file_size_bytes(&self) -> usize {
        (self.file_size_bits / 8) as usize
    }

    /// File `W_n`, 1-based.
    pub fn file(&self, n: usize) -> &[u8] {
        &self.contents[n - 1]
    }
}

/// Checks a demand vector (1-based file ids, one per UE). Returns `true` when
/// all requests are distinct; repeated requests are allowed but void the
/// worst-case guarantee, so they are logged.
pub fn validate_demand(demand: &[usize], k: usize, n_files: usize) -> Result<bool> {
    if demand.len() != k {
        return Err(Error::DemandLengthMismatch { expected: k, got: demand.len() });
    }
    if let Some(&bad) = demand.iter().find(|&&d| d == 0 || d > n_files) {
        return Err(Error::DemandOutOfRange { value: bad, n_files });
    }
    let mut sorted = demand.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let distinct = sorted.len() == demand.len();
    if !distinct {
        log::warn!("demand vector has repeated files; the worst-case delivery time still applies");
    }
    Ok(distinct)
}

/// `d_k = k` for `k = 1..=K`.
pub fn identity_demand(k: usize) -> Vec<usize> {
    (1..=k).collect()
}

/// Splits `bits` into `parts` equal pieces, as bytes.
pub(crate) fn split_bytes(bits: u64, parts: usize, what: &str) -> Result<usize> {
    let parts = parts as u64;
    if parts == 0 || bits % (8 * parts) != 0 {
        return Err(Error::IndivisibleFileSize {
            bits,
            reason: format!("{what} of {bits} bits does not split into {parts} whole-byte pieces"),
        });
    }
    Ok((bits / (8 * parts)) as usize)
}
