//! Sparse and dense probability distributions on S_n: exact convolution,
//! marginals, total variation distance, and sampling. This is the
//! brute-force oracle layer; dense objects are bounded by the enumeration
//! cap, sparse mixtures are not.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{enumerate_sn, factorial_usize, Permutation, ENUMERATION_CAP};

/// Tolerance for accepting and renormalizing mixture weights.
const WEIGHT_SUM_TOL: f64 = 1e-9;
/// Tolerance on dense pmf mass.
const DENSE_SUM_TOL: f64 = 1e-10;

/// A sparse distribution on S_n: distinct support permutations with strictly
/// positive weights summing to one. The unknown mixture `f` and the
/// learner's output `g` both live here.
#[derive(Clone, Debug)]
pub struct SparseRankingMixture {
    n: usize,
    atoms: Vec<(Permutation, f64)>,
    cumulative: Vec<f64>,
    epsilon: Option<f64>,
}

impl SparseRankingMixture {
    /// Builds and validates a mixture. Weight sums within `1e-9` of one are
    /// renormalized; anything further off is rejected.
    pub fn new(n: usize, atoms: Vec<(Permutation, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyInput("mixture atoms"));
        }
        let mut seen = HashMap::new();
        for (p, w) in &atoms {
            if p.n() != n {
                return Err(Error::SizeMismatch(p.n(), n));
            }
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "atom weight {w} must be positive"
                )));
            }
            if seen.insert(p.clone(), ()).is_some() {
                return Err(Error::InvalidParameter(format!("atom {p} repeated")));
            }
        }
        let sum: f64 = atoms.iter().map(|(_, w)| w).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidParameter(format!(
                "atom weights sum to {sum}, not 1"
            )));
        }
        let atoms: Vec<(Permutation, f64)> =
            atoms.into_iter().map(|(p, w)| (p, w / sum)).collect();
        let mut cumulative = Vec::with_capacity(atoms.len());
        let mut acc = 0.0;
        for (_, w) in &atoms {
            acc += w;
            cumulative.push(acc);
        }
        Ok(SparseRankingMixture {
            n,
            atoms,
            cumulative,
            epsilon: None,
        })
    }

    /// Records the heaviness floor and checks every weight meets it.
    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        if let Some((p, w)) = self.atoms.iter().find(|(_, w)| *w < epsilon - 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "atom {p} has weight {w} below the heaviness floor {epsilon}"
            )));
        }
        self.epsilon = Some(epsilon);
        Ok(self)
    }

    pub fn point_mass(p: Permutation) -> Self {
        let n = p.n();
        SparseRankingMixture {
            n,
            atoms: vec![(p, 1.0)],
            cumulative: vec![1.0],
            epsilon: Some(1.0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[(Permutation, f64)] {
        &self.atoms
    }

    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    pub fn weight_of(&self, p: &Permutation) -> f64 {
        self.atoms
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, w)| *w)
            .unwrap_or(0.0)
    }

    /// Draws atom `i` with probability `w_i`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> &Permutation {
        let u: f64 = rng.gen();
        let idx = self
            .cumulative
            .partition_point(|&c| c < u)
            .min(self.atoms.len() - 1);
        &self.atoms[idx].0
    }

    /// `Pr[sigma(i_r) = j_r for all r]` for 1-based tuples of distinct
    /// positions and values.
    pub fn exact_marginal(&self, ibar: &[usize], jbar: &[usize]) -> Result<f64> {
        check_tuples(self.n, ibar, jbar)?;
        Ok(self
            .atoms
            .iter()
            .filter(|(p, _)| ibar.iter().zip(jbar).all(|(&i, &j)| p.apply(i) == j))
            .map(|(_, w)| w)
            .sum())
    }

    /// Densifies onto all of S_n; bounded by the enumeration cap.
    pub fn to_dense(&self) -> Result<DensePmf> {
        if self.n > ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                n: self.n,
                cap: ENUMERATION_CAP,
            });
        }
        let mut values = vec![0.0; factorial_usize(self.n)?];
        for (p, w) in &self.atoms {
            values[p.rank()] += w;
        }
        Ok(DensePmf {
            n: self.n,
            values,
        })
    }
}

/// A dense pmf over all of S_n, indexed by lexicographic rank. Oracle
/// representation for noise distributions and convolutions.
#[derive(Clone, Debug)]
pub struct DensePmf {
    n: usize,
    values: Vec<f64>,
}

impl DensePmf {
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        let total = factorial_usize(n)?;
        if values.len() != total {
            return Err(Error::InvalidParameter(format!(
                "dense pmf over S_{n} needs {total} values, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite() || *v < -1e-15) {
            return Err(Error::InvalidParameter("negative pmf value".into()));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > DENSE_SUM_TOL {
            return Err(Error::InvalidParameter(format!(
                "dense pmf sums to {sum}, not 1"
            )));
        }
        Ok(DensePmf { n, values })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        let total = factorial_usize(n)?;
        Ok(DensePmf {
            n,
            values: vec![1.0 / total as f64; total],
        })
    }

    pub fn point_mass(p: &Permutation) -> Result<Self> {
        let total = factorial_usize(p.n())?;
        let mut values = vec![0.0; total];
        values[p.rank()] = 1.0;
        Ok(DensePmf {
            n: p.n(),
            values,
        })
    }

    /// Empirical frequencies of a sample set.
    pub fn empirical(n: usize, samples: &[Permutation]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput("samples"));
        }
        let mut counts = vec![0u64; factorial_usize(n)?];
        for s in samples {
            if s.n() != n {
                return Err(Error::SizeMismatch(s.n(), n));
            }
            counts[s.rank()] += 1;
        }
        let total = samples.len() as f64;
        Ok(DensePmf {
            n,
            values: counts.into_iter().map(|c| c as f64 / total).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn prob(&self, p: &Permutation) -> f64 {
        self.values[p.rank()]
    }

    pub fn prob_by_rank(&self, rank: usize) -> f64 {
        self.values[rank]
    }

    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn exact_marginal(&self, ibar: &[usize], jbar: &[usize]) -> Result<f64> {
        check_tuples(self.n, ibar, jbar)?;
        let mut acc = 0.0;
        for (rank, p) in enumerate_sn(self.n)?.iter().enumerate() {
            if ibar.iter().zip(jbar).all(|(&i, &j)| p.apply(i) == j) {
                acc += self.values[rank];
            }
        }
        Ok(acc)
    }

    /// Inverse-CDF sampler over the full group.
    pub fn sampler(&self) -> Result<DensePmfSampler> {
        let perms = enumerate_sn(self.n)?;
        let mut cumulative = Vec::with_capacity(self.values.len());
        let mut acc = 0.0;
        for v in &self.values {
            acc += v;
            cumulative.push(acc);
        }
        Ok(DensePmfSampler { perms, cumulative })
    }
}

/// Precomputed cumulative table for repeated draws from a [`DensePmf`].
pub struct DensePmfSampler {
    perms: Vec<Permutation>,
    cumulative: Vec<f64>,
}

impl DensePmfSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> &Permutation {
        let u: f64 = rng.gen();
        let idx = self
            .cumulative
            .partition_point(|&c| c < u)
            .min(self.perms.len() - 1);
        &self.perms[idx]
    }
}

fn check_tuples(n: usize, ibar: &[usize], jbar: &[usize]) -> Result<()> {
    if ibar.len() != jbar.len() {
        return Err(Error::InvalidTuple(format!(
            "tuple lengths {} vs {}",
            ibar.len(),
            jbar.len()
        )));
    }
    for tuple in [ibar, jbar] {
        for (idx, &v) in tuple.iter().enumerate() {
            if v < 1 || v > n {
                return Err(Error::InvalidTuple(format!("entry {v} out of range 1..={n}")));
            }
            if tuple[..idx].contains(&v) {
                return Err(Error::InvalidTuple(format!("entry {v} repeated")));
            }
        }
    }
    Ok(())
}

/// Total variation distance between sparse mixtures: half the l1 distance
/// over the union of supports.
pub fn tv_distance(a: &SparseRankingMixture, b: &SparseRankingMixture) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    let mut diff: HashMap<&Permutation, f64> = HashMap::new();
    for (p, w) in a.atoms() {
        *diff.entry(p).or_insert(0.0) += w;
    }
    for (p, w) in b.atoms() {
        *diff.entry(p).or_insert(0.0) -= w;
    }
    Ok(diff.values().map(|d| d.abs()).sum::<f64>() / 2.0)
}

pub fn tv_distance_dense(a: &DensePmf, b: &DensePmf) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).abs())
        .sum::<f64>()
        / 2.0)
}

pub fn tv_distance_mixed(a: &SparseRankingMixture, b: &DensePmf) -> Result<f64> {
    tv_distance_dense(&a.to_dense()?, b)
}

/// Group convolution `(K * f)(h) = sum_{pi sigma = h} K(pi) f(sigma)`:
/// the distribution of `compose(pi, sigma)` with `pi ~ K`, `sigma ~ f`.
pub fn convolve_exact(noise: &DensePmf, f: &SparseRankingMixture) -> Result<DensePmf> {
    if noise.n() != f.n() {
        return Err(Error::SizeMismatch(noise.n(), f.n()));
    }
    let mut values = vec![0.0; noise.values.len()];
    for h in enumerate_sn(noise.n())? {
        let mut acc = 0.0;
        for (sigma, w) in f.atoms() {
            // pi = h sigma^{-1}
            let pi = h.compose(&sigma.inverse())?;
            acc += noise.prob(&pi) * w;
        }
        values[h.rank()] = acc;
    }
    Ok(DensePmf {
        n: noise.n(),
        values,
    })
}

/// Dense-dense convolution, for layering noise in oracle tests.
pub fn convolve_dense(a: &DensePmf, b: &DensePmf) -> Result<DensePmf> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    let perms = enumerate_sn(a.n())?;
    let mut values = vec![0.0; a.values.len()];
    for pi in &perms {
        let w_a = a.prob(pi);
        if w_a == 0.0 {
            continue;
        }
        let pi_inv = pi.inverse();
        for h in &perms {
            // sigma = pi^{-1} h
            let sigma = pi_inv.compose(h)?;
            values[h.rank()] += w_a * b.prob(&sigma);
        }
    }
    Ok(DensePmf {
        n: a.n(),
        values,
    })
}

/// Serialized form of a mixture: `{"n": 3, "atoms": [{"perm": "2,3,1", "w": 0.5}, ...]}`.
#[derive(Serialize, Deserialize)]
struct MixtureJson {
    n: usize,
    atoms: Vec<AtomJson>,
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    perm: String,
    w: f64,
}

impl SparseRankingMixture {
    pub fn to_json(&self) -> String {
        let doc = MixtureJson {
            n: self.n,
            atoms: self
                .atoms
                .iter()
                .map(|(p, w)| AtomJson {
                    perm: p.to_string(),
                    w: *w,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("mixture serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MixtureJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("mixture JSON: {e}")))?;
        let atoms = doc
            .atoms
            .into_iter()
            .map(|a| Ok((a.perm.parse::<Permutation>()?, a.w)))
            .collect::<Result<Vec<_>>>()?;
        SparseRankingMixture::new(doc.n, atoms)
    }
}
