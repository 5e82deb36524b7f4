//! The permutation representation on ordered ell-tuples of distinct
//! elements, and Fourier coefficients of distributions at it. For a
//! distribution the Fourier matrix entry at (row tuple, column tuple) is
//! exactly the corresponding ell-way marginal, so these matrices are doubly
//! stochastic.
//!
//! Tuples are enumerated lexicographically and the index layout is part of
//! the public contract; the dimension is the falling factorial
//! `n (n-1) ... (n-ell+1)`.

use nalgebra::DMatrix;

use crate::dist::{DensePmf, SparseRankingMixture};
use crate::error::{Error, Result};
use crate::perm::{enumerate_sn, Permutation};

/// Default ceiling on the tuple-representation dimension.
pub const TABLOID_DIM_CAP: usize = 5040;

/// Number of ordered ell-tuples with distinct entries from an n-set.
pub fn tabloid_dimension(n: usize, ell: usize) -> Result<usize> {
    tabloid_dimension_capped(n, ell, TABLOID_DIM_CAP)
}

pub fn tabloid_dimension_capped(n: usize, ell: usize, cap: usize) -> Result<usize> {
    if ell == 0 || ell > n.saturating_sub(1) {
        return Err(Error::InvalidParameter(format!(
            "tuple length must satisfy 1 <= ell <= n - 1; got ell = {ell}, n = {n}"
        )));
    }
    let mut dim: u128 = 1;
    for i in 0..ell {
        dim *= (n - i) as u128;
        if dim > cap as u128 {
            return Err(Error::DimensionCapExceeded { dim, cap });
        }
    }
    Ok(dim as usize)
}

/// Lexicographic indexing of ordered distinct tuples over `{0..n-1}`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TupleIndexer {
    n: usize,
    ell: usize,
}

impl TupleIndexer {
    pub(crate) fn new(n: usize, ell: usize) -> Self {
        TupleIndexer { n, ell }
    }

    /// Count of distinct j-tuples from m elements.
    fn falling(m: usize, j: usize) -> usize {
        (0..j).map(|i| m - i).product()
    }

    pub(crate) fn index_of(&self, tuple: &[usize]) -> usize {
        let mut avail: Vec<usize> = (0..self.n).collect();
        let mut idx = 0;
        for (r, &a) in tuple.iter().enumerate() {
            let pos = avail.iter().position(|&v| v == a).expect("distinct entry");
            idx += pos * Self::falling(self.n - 1 - r, self.ell - 1 - r);
            avail.remove(pos);
        }
        idx
    }

    pub(crate) fn tuple_at(&self, mut idx: usize) -> Vec<usize> {
        let mut avail: Vec<usize> = (0..self.n).collect();
        let mut out = Vec::with_capacity(self.ell);
        for r in 0..self.ell {
            let block = Self::falling(self.n - 1 - r, self.ell - 1 - r);
            let pos = idx / block;
            idx %= block;
            out.push(avail.remove(pos));
        }
        out
    }
}

/// A real D x D matrix indexed by ordered ell-tuples; for exact
/// distributions the (i-bar, j-bar) entry is `Pr[sigma(i_r) = j_r for all r]`.
#[derive(Clone, Debug)]
pub struct MarginalMatrix {
    n: usize,
    ell: usize,
    mat: DMatrix<f64>,
}

impl MarginalMatrix {
    pub(crate) fn from_parts(n: usize, ell: usize, mat: DMatrix<f64>) -> Self {
        MarginalMatrix { n, ell, mat }
    }

    pub fn zeros(n: usize, ell: usize) -> Result<Self> {
        let d = tabloid_dimension(n, ell)?;
        Ok(MarginalMatrix {
            n,
            ell,
            mat: DMatrix::zeros(d, d),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut DMatrix<f64> {
        &mut self.mat
    }

    /// The 1-based tuple labelling row (and column) `idx`.
    pub fn tuple_label(&self, idx: usize) -> Vec<usize> {
        TupleIndexer::new(self.n, self.ell)
            .tuple_at(idx)
            .into_iter()
            .map(|v| v + 1)
            .collect()
    }

    fn tuple_index(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.ell {
            return Err(Error::InvalidTuple(format!(
                "tuple length {} does not match ell = {}",
                tuple.len(),
                self.ell
            )));
        }
        let mut zero_based = Vec::with_capacity(self.ell);
        for (pos, &v) in tuple.iter().enumerate() {
            if v < 1 || v > self.n {
                return Err(Error::InvalidTuple(format!(
                    "entry {v} out of range 1..={}",
                    self.n
                )));
            }
            if tuple[..pos].contains(&v) {
                return Err(Error::InvalidTuple(format!("entry {v} repeated")));
            }
            zero_based.push(v - 1);
        }
        Ok(TupleIndexer::new(self.n, self.ell).index_of(&zero_based))
    }

    /// Entry by 1-based tuples.
    pub fn entry(&self, ibar: &[usize], jbar: &[usize]) -> Result<f64> {
        Ok(self.mat[(self.tuple_index(ibar)?, self.tuple_index(jbar)?)])
    }

    pub fn max_abs_diff(&self, other: &MarginalMatrix) -> f64 {
        (&self.mat - &other.mat).abs().max()
    }
}

fn apply_to_tuple(g: &Permutation, tuple: &[usize]) -> Vec<usize> {
    tuple.iter().map(|&a| g.apply0(a)).collect()
}

/// The 0/1 matrix of `g` on ordered ell-tuples: entry (a-bar, b-bar) is 1
/// iff `g(a_r) = b_r` for all r. A permutation matrix of size D.
pub fn rep_matrix(g: &Permutation, ell: usize) -> Result<MarginalMatrix> {
    let n = g.n();
    let d = tabloid_dimension(n, ell)?;
    let indexer = TupleIndexer::new(n, ell);
    let mut mat = DMatrix::zeros(d, d);
    for row in 0..d {
        let t = indexer.tuple_at(row);
        mat[(row, indexer.index_of(&apply_to_tuple(g, &t)))] = 1.0;
    }
    Ok(MarginalMatrix::from_parts(n, ell, mat))
}

/// Fourier coefficient of a dense pmf at the tuple representation:
/// `sum_g p(g) rep(g)`; entries are the exact ell-way marginals.
pub fn exact_fourier_dense(p: &DensePmf, ell: usize) -> Result<MarginalMatrix> {
    let n = p.n();
    let d = tabloid_dimension(n, ell)?;
    let indexer = TupleIndexer::new(n, ell);
    let mut out = MarginalMatrix::zeros(n, ell)?;
    for (rank, g) in enumerate_sn(n)?.iter().enumerate() {
        let w = p.prob_by_rank(rank);
        if w == 0.0 {
            continue;
        }
        for row in 0..d {
            let t = indexer.tuple_at(row);
            out.matrix_mut()[(row, indexer.index_of(&apply_to_tuple(g, &t)))] += w;
        }
    }
    Ok(out)
}

/// Fourier coefficient of a sparse mixture at the tuple representation.
pub fn exact_fourier_sparse(f: &SparseRankingMixture, ell: usize) -> Result<MarginalMatrix> {
    let n = f.n();
    let d = tabloid_dimension(n, ell)?;
    let indexer = TupleIndexer::new(n, ell);
    let mut out = MarginalMatrix::zeros(n, ell)?;
    for (g, w) in f.atoms() {
        for row in 0..d {
            let t = indexer.tuple_at(row);
            out.matrix_mut()[(row, indexer.index_of(&apply_to_tuple(g, &t)))] += w;
        }
    }
    Ok(out)
}

/// Empirical Fourier coefficient: the sample mean of `rep(sample)`. Row sums
/// are exactly 1 for any sample set; entries concentrate at Hoeffding rate.
pub fn empirical_fourier(samples: &[Permutation], ell: usize) -> Result<MarginalMatrix> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("samples"));
    }
    let n = samples[0].n();
    let d = tabloid_dimension(n, ell)?;
    let indexer = TupleIndexer::new(n, ell);
    let mut out = MarginalMatrix::zeros(n, ell)?;
    let w = 1.0 / samples.len() as f64;
    for g in samples {
        if g.n() != n {
            return Err(Error::SizeMismatch(g.n(), n));
        }
        for row in 0..d {
            let t = indexer.tuple_at(row);
            out.matrix_mut()[(row, indexer.index_of(&apply_to_tuple(g, &t)))] += w;
        }
    }
    Ok(out)
}

/// Eigenvalues of a numerically symmetric matrix, descending. Fourier
/// matrices of conjugation-invariant noise are symmetric because such a pmf
/// weights `g` and `g^{-1}` equally.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>, tol: f64) -> Result<Vec<f64>> {
    let asym = (m - m.transpose()).abs().max();
    if asym > tol {
        return Err(Error::InvalidParameter(format!(
            "matrix is not symmetric (max asymmetry {asym:.3e})"
        )));
    }
    let sym = (m + m.transpose()) * 0.5;
    let mut eigs: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(eigs)
}

/// Smallest singular value.
pub fn sigma_min(m: &DMatrix<f64>) -> f64 {
    let svals = m.clone().svd(false, false).singular_values;
    svals.iter().copied().fold(f64::INFINITY, f64::min)
}
