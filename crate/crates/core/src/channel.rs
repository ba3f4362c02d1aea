//! Edge channel matrices, null spaces and zero-forcing beamformers.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::topology::NetworkTopology;

/// `K x H` complex gains `h_{k,i}`; zero wherever EN `i` does not reach UE `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix<T: Real = f64> {
    pub seed: u64,
    entries: DMatrix<Complex<T>>,
}

/// Draws i.i.d. unit-variance circular complex Gaussian gains on the
/// connected links.
pub fn draw_channel<T: Real>(t: &NetworkTopology, seed: u64) -> ChannelMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut entries = DMatrix::from_element(t.k(), t.h(), Complex::new(T::zero(), T::zero()));
    for k in t.ues() {
        for &i in t.ens_of(k) {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            entries[(k - 1, i - 1)] =
                Complex::new(T::from_f64(re * scale).unwrap(), T::from_f64(im * scale).unwrap());
        }
    }
    ChannelMatrix { seed, entries }
}

impl<T: Real> ChannelMatrix<T> {
    pub fn k(&self) -> usize {
        self.entries.nrows()
    }

    pub fn h(&self) -> usize {
        self.entries.ncols()
    }

    /// `h_{k,i}`, 1-based.
    pub fn gain(&self, k: usize, i: usize) -> Complex<T> {
        self.entries[(k - 1, i - 1)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.entries
    }

    /// Rows of the given UEs stacked in order.
    pub fn rows_of(&self, ues: &[usize]) -> DMatrix<Complex<T>> {
        let h = self.h();
        DMatrix::from_fn(ues.len(), h, |r, c| self.entries[(ues[r] - 1, c)])
    }

    /// Received coefficient `h_k . v` at UE `k`.
    pub fn coefficient(&self, k: usize, v: &DVector<Complex<T>>) -> Complex<T> {
        self.entries.row(k - 1).transpose().dot(v)
    }
}

/// Orthonormal basis of the kernel of `m` (`rows <= cols`), from an SVD of
/// `m` padded with zero rows to a square matrix.
pub fn null_space<T: Real>(m: &DMatrix<Complex<T>>) -> Vec<DVector<Complex<T>>> {
    let (rows, n) = m.shape();
    assert!(rows <= n, "null_space expects a wide or square matrix, got {rows}x{n}");
    let zero = Complex::new(T::zero(), T::zero());
    if rows == 0 {
        return (0..n)
            .map(|j| DVector::from_fn(n, |i, _| if i == j { Complex::new(T::one(), T::zero()) } else { zero }))
            .collect();
    }
    let mut padded = DMatrix::from_element(n, n, zero);
    padded.rows_mut(0, rows).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.iter().copied().fold(T::zero(), |a, b| a.max(b));
    let cutoff = T::rank_tolerance() * smax;
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= cutoff)
        .map(|(j, _)| v_t.row(j).transpose().map(|z| z.conj()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamMode {
    /// Sum of all null-space basis vectors.
    SumOfBasis,
    /// The single null vector of an `(H-1) x H` system.
    SingleNull,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Beamformer<T: Real = f64> {
    pub pi: Vec<usize>,
    pub mode: BeamMode,
    pub null_dim: usize,
    /// Unit-norm transmit vector over the `H` ENs.
    pub v: DVector<Complex<T>>,
}

/// Builds `v_pi`, which is nulled at every UE in `pi`.
pub fn make_beamformer<T: Real>(ch: &ChannelMatrix<T>, pi: &[usize], mode: BeamMode) -> Result<Beamformer<T>> {
    let h = ch.h();
    if pi.len() >= h {
        return Err(Error::EmptyNullSpace { rows: pi.len(), cols: h });
    }
    let hp = ch.rows_of(pi);
    let basis = null_space(&hp);
    if basis.is_empty() {
        return Err(Error::EmptyNullSpace { rows: pi.len(), cols: h });
    }
    let mut v = DVector::from_element(h, Complex::new(T::zero(), T::zero()));
    match mode {
        BeamMode::SumOfBasis => {
            for b in &basis {
                v += b;
            }
        }
        BeamMode::SingleNull => v += &basis[0],
    }
    let norm = v.norm();
    if norm <= T::desired_floor() {
        return Err(Error::EmptyNullSpace { rows: pi.len(), cols: h });
    }
    v.unscale_mut(norm);
    for (row, &k) in pi.iter().enumerate() {
        let leak = hp.row(row).transpose().dot(&v).modulus();
        if leak > T::zf_tolerance() {
            return Err(Error::InterferenceLeak {
                ue: k,
                label: format!("null vector for {pi:?}"),
                magnitude: leak.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(Beamformer { pi: pi.to_vec(), mode, null_dim: basis.len(), v })
}

/// `||H_pi v|| / ||v||`.
pub fn zf_residual<T: Real>(ch: &ChannelMatrix<T>, bf: &Beamformer<T>) -> T {
    (ch.rows_of(&bf.pi) * &bf.v).norm() / bf.v.norm()
}
