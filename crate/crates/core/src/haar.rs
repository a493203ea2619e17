//! Monte-Carlo estimates of trace moments from Haar-random unitaries.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratfunc::{ratio_to_f64, RationalFunction};
use crate::words::{FreeWord, WordTuple};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    /// `|Im|` of the sample mean; the exact moment is real.
    pub residual: f64,
    pub samples: u64,
    pub dim: usize,
    pub seed: u64,
}

/// Haar-distributed element of U(n): QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal pushed into `Q`.
pub fn sample_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    assert!(n >= 1, "dimension must be positive");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for (i, mut col) in q.column_iter_mut().enumerate() {
        let d = r[(i, i)];
        let norm = d.norm();
        if norm > 0.0 {
            col *= d / norm;
        }
    }
    q
}

/// The random stream of one sample: keyed by the master seed and the sample
/// index, so results do not depend on scheduling.
fn sample_rng(seed: u64, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn trace_of(w: &FreeWord, mats: &[DMatrix<Complex64>], adj: &[DMatrix<Complex64>], n: usize) -> Complex64 {
    let mut acc = DMatrix::<Complex64>::identity(n, n);
    for l in w.letters() {
        let g = l.generator.index();
        acc = if l.inverse { acc * &adj[g] } else { acc * &mats[g] };
    }
    acc.trace()
}

fn sample_value(t: &WordTuple, n: usize, rank: usize, seed: u64, index: u64) -> Complex64 {
    let mut rng = sample_rng(seed, index);
    let mats: Vec<_> = (0..rank).map(|_| sample_unitary(n, &mut rng)).collect();
    let adj: Vec<_> = mats.iter().map(|m| m.adjoint()).collect();
    let mut value = Complex64::new((n as f64).powi(t.trivial() as i32), 0.0);
    for w in t.words() {
        value *= trace_of(w, &mats, &adj, n);
    }
    value
}

/// Sum with a fixed binary tree over the index range.
fn pairwise_sum<T: Copy + std::ops::Add<Output = T>>(xs: &[T], zero: T) -> T {
    match xs.len() {
        0 => zero,
        1 => xs[0],
        len => {
            let (a, b) = xs.split_at(len / 2);
            pairwise_sum(a, zero) + pairwise_sum(b, zero)
        }
    }
}

/// Sample mean of `Π tr(w_i(A_1, …, A_r))` over `samples` Haar tuples.
pub fn estimate(t: &WordTuple, n: usize, samples: u64, seed: u64) -> Result<MCEstimate> {
    if n == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    if samples < 2 {
        return Err(Error::Invalid("at least 2 samples are needed".into()));
    }
    // every generator index up to the largest one in use gets its own matrix
    let rank = t.generators().iter().map(|g| g.index() + 1).max().unwrap_or(0);
    let values: Vec<Complex64> = (0..samples).into_par_iter().map(|i| sample_value(t, n, rank, seed, i)).collect();
    let count = samples as f64;
    let mean = pairwise_sum(&values, Complex64::new(0.0, 0.0)) / count;
    let sq: Vec<f64> = values.iter().map(|v| (v.re - mean.re).powi(2)).collect();
    let var = pairwise_sum(&sq, 0.0) / (count - 1.0);
    Ok(MCEstimate { mean: mean.re, stderr: (var / count).sqrt(), residual: mean.im.abs(), samples, dim: n, seed })
}

/// `(mean − exact(n)) / stderr`.
pub fn compare(e: &MCEstimate, exact: &RationalFunction) -> Result<f64> {
    let value = ratio_to_f64(&exact.evaluate(&BigRational::from_integer(e.dim.into()))?);
    let diff = e.mean - value;
    if e.stderr > 0.0 {
        Ok(diff / e.stderr)
    } else if diff == 0.0 {
        Ok(0.0)
    } else {
        Ok(diff.signum() * f64::INFINITY)
    }
}
