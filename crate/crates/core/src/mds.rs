//! Systematic `(H, r)` Reed-Solomon erasure code over GF(256).
//!
//! The generator is `V * V_top^-1`, where `V` is the `H x r` Vandermonde
//! matrix on evaluation points `1..=H`; its first `r` rows are the identity,
//! so chunks `1..=r` are the plain stripes of the file.

use crate::error::{Error, Result};
use crate::gf256::{self, Matrix};

/// Coded chunk `f_n^i` of one file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodedChunk {
    pub file_id: usize,
    pub chunk_id: usize,
    pub payload: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct MdsCode {
    h: usize,
    r: usize,
    generator: Matrix,
}

impl MdsCode {
    pub fn new(h: usize, r: usize) -> Result<Self> {
        if h > 255 {
            return Err(Error::FieldOverflow { h });
        }
        if r == 0 || r > h {
            return Err(Error::InvalidConnectivity { h, r });
        }
        let v: Matrix = (1..=h)
            .map(|x| (0..r).map(|j| gf256::pow(x as u8, j)).collect())
            .collect();
        let top_inv = gf256::invert(&v[..r].to_vec()).expect("Vandermonde on distinct points");
        Ok(Self { h, r, generator: gf256::mat_mul(&v, &top_inv) })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Row `i` (1-based) of the generator.
    pub fn generator_row(&self, i: usize) -> &[u8] {
        &self.generator[i - 1]
    }

    pub fn encode(&self, file_id: usize, file: &[u8]) -> Result<Vec<CodedChunk>> {
        if file.len() % self.r != 0 {
            return Err(Error::LengthError(format!(
                "file of {} bytes is not divisible into {} stripes",
                file.len(),
                self.r
            )));
        }
        let stripe = file.len() / self.r;
        let stripes: Vec<&[u8]> = file.chunks(stripe.max(1)).take(self.r).collect();
        Ok((1..=self.h)
            .map(|i| {
                let row = self.generator_row(i);
                let mut payload = vec![0u8; stripe];
                for (g, s) in row.iter().zip(&stripes) {
                    if *g == 0 {
                        continue;
                    }
                    for (p, &b) in payload.iter_mut().zip(s.iter()) {
                        *p ^= gf256::mul(*g, b);
                    }
                }
                CodedChunk { file_id, chunk_id: i, payload }
            })
            .collect())
    }

    /// Reconstructs the file from exactly `r` chunks with distinct ids.
    pub fn decode(&self, chunks: &[CodedChunk]) -> Result<Vec<u8>> {
        if chunks.len() != self.r {
            return Err(Error::LengthError(format!("need {} chunks, got {}", self.r, chunks.len())));
        }
        let file_id = chunks[0].file_id;
        let len = chunks[0].payload.len();
        let mut ids: Vec<usize> = Vec::with_capacity(self.r);
        for c in chunks {
            if c.file_id != file_id || c.payload.len() != len {
                return Err(Error::DuplicateChunk(format!("chunk {} of file {}", c.chunk_id, c.file_id)));
            }
            if c.chunk_id == 0 || c.chunk_id > self.h {
                return Err(Error::OutOfRange { what: "chunk id", value: c.chunk_id, max: self.h });
            }
            if ids.contains(&c.chunk_id) {
                return Err(Error::DuplicateChunk(format!("chunk {} appears twice", c.chunk_id)));
            }
            ids.push(c.chunk_id);
        }
        let sub: Matrix = ids.iter().map(|&i| self.generator_row(i).to_vec()).collect();
        let dec = gf256::invert(&sub).ok_or_else(|| Error::SingularSystem(ids.clone()))?;
        let mut file = vec![0u8; len * self.r];
        for (j, out) in file.chunks_mut(len.max(1)).take(self.r).enumerate() {
            for (c, chunk) in chunks.iter().enumerate() {
                let g = dec[j][c];
                if g == 0 {
                    continue;
                }
                for (o, &b) in out.iter_mut().zip(&chunk.payload) {
                    *o ^= gf256::mul(g, b);
                }
            }
        }
        Ok(file)
    }
}
