//! The three parametric noise families on S_n: symmetric subset scrambles,
//! the heat-kernel transposition walk, and the Cayley-Mallows (Ewens) model.
//! Each comes with a sampler, an exact pmf, and analytic Fourier multipliers
//! (the scalar eigenvalues of the noise at each irreducible representation).
//!
//! The exact heat pmf is built from the truncated Poisson series over
//! convolution powers of the lazy transposition step, while its multiplier
//! uses the Poisson generating-function closed form; their agreement is a
//! test, not an assumption.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::character::transposition_ratio;
use crate::dist::{DensePmf, DensePmfSampler};
use crate::error::{Error, Result};
use crate::partition::{hook_partition, lattice_paths, Partition};
use crate::perm::{enumerate_sn, factorial_usize, Permutation, ENUMERATION_CAP};

/// Poisson tail mass dropped (then renormalized) in the exact heat pmf.
const POISSON_TAIL: f64 = 1e-12;

/// A parametric noise distribution on S_n.
///
/// Serialized as `{"model": "symmetric"|"heat"|"mallows", "n": ..., <param>}`
/// with exactly the parameter field of the chosen variant.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum NoiseModel {
    /// Scramble a uniformly random size-j subset, j drawn from `pbar`
    /// (a probability vector of length n + 1).
    #[serde(rename = "symmetric")]
    Symmetric { n: usize, pbar: Vec<f64> },
    /// Poisson(t)-many steps of the lazy random-transposition walk.
    #[serde(rename = "heat")]
    HeatKernel { n: usize, t: f64 },
    /// Probability proportional to `q^{cycles(pi)}` with `q = e^theta`.
    /// `theta = 0` is the uniform distribution.
    #[serde(rename = "mallows")]
    CayleyMallows { n: usize, theta: f64 },
}

impl NoiseModel {
    pub fn n(&self) -> usize {
        match self {
            NoiseModel::Symmetric { n, .. }
            | NoiseModel::HeatKernel { n, .. }
            | NoiseModel::CayleyMallows { n, .. } => *n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            NoiseModel::Symmetric { n, pbar } => {
                if pbar.len() != n + 1 {
                    return Err(Error::InvalidParameter(format!(
                        "pbar needs {} entries for n = {n}, got {}",
                        n + 1,
                        pbar.len()
                    )));
                }
                if pbar.iter().any(|p| !p.is_finite() || *p < 0.0) {
                    return Err(Error::InvalidParameter("pbar entries must be >= 0".into()));
                }
                let sum: f64 = pbar.iter().sum();
                if (sum - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "pbar sums to {sum}, not 1"
                    )));
                }
            }
            NoiseModel::HeatKernel { t, .. } => {
                if !t.is_finite() || *t <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "heat kernel needs t > 0, got {t}"
                    )));
                }
            }
            NoiseModel::CayleyMallows { theta, .. } => {
                if !theta.is_finite() || *theta < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "Cayley-Mallows needs theta >= 0, got {theta}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Exact pmf over all of S_n; bounded by the enumeration cap.
    pub fn pmf_exact(&self) -> Result<DensePmf> {
        self.validate()?;
        let n = self.n();
        if n > ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                n,
                cap: ENUMERATION_CAP,
            });
        }
        match self {
            NoiseModel::Symmetric { n, pbar } => symmetric_pmf(*n, pbar),
            NoiseModel::HeatKernel { n, t } => heat_pmf(*n, *t),
            NoiseModel::CayleyMallows { n, theta } => mallows_pmf(*n, *theta),
        }
    }

    /// The scalar `c` with `Khat(rho_mu) = c * Id`, in closed form.
    pub fn multiplier(&self, mu: &Partition) -> Result<f64> {
        self.validate()?;
        let n = self.n();
        if mu.weight() != n {
            return Err(Error::WeightMismatch(mu.weight(), n));
        }
        match self {
            NoiseModel::Symmetric { n: _, pbar } => {
                let dim = mu.irrep_dimension()? as f64;
                let mut acc = 0.0;
                for (j, &p) in pbar.iter().enumerate() {
                    if p == 0.0 {
                        continue;
                    }
                    let paths = lattice_paths(&Partition::trivial(j), mu)? as f64;
                    acc += p * paths;
                }
                Ok(acc / dim)
            }
            NoiseModel::HeatKernel { n, t } => {
                Ok((-t * (1.0 - trans_eigenvalue(*n, mu)?)).exp())
            }
            NoiseModel::CayleyMallows { n, theta } => {
                let q = theta.exp();
                let mut num = 1.0;
                for cell in mu.cell_annotations() {
                    num *= q + cell.content as f64;
                }
                Ok(num / mallows_normalizer(q, *n))
            }
        }
    }

    /// All multipliers, one per partition of n, in reverse lex order.
    pub fn spectrum(&self) -> Result<Vec<(Partition, f64)>> {
        crate::partition::all_partitions(self.n())?
            .into_iter()
            .map(|mu| {
                let c = self.multiplier(&mu)?;
                Ok((mu, c))
            })
            .collect()
    }

    /// `min |multiplier(mu)|` over the dominance up-set of the hook
    /// partition `(n - ell, 1^ell)`: the smallest singular value of the
    /// noise's Fourier coefficient at the tuple representation.
    pub fn min_multiplier_up(&self, ell: usize) -> Result<f64> {
        let hook = hook_partition(self.n(), ell)?;
        let mut best = f64::INFINITY;
        for mu in hook.up_set()? {
            best = best.min(self.multiplier(&mu)?.abs());
        }
        Ok(best)
    }

    /// Prepared sampler; precomputes inverse-CDF tables where applicable.
    pub fn sampler(&self) -> Result<NoiseSampler> {
        self.validate()?;
        let n = self.n();
        let kind = match self {
            NoiseModel::Symmetric { pbar, .. } => {
                let mut cumulative = Vec::with_capacity(pbar.len());
                let mut acc = 0.0;
                for p in pbar {
                    acc += p;
                    cumulative.push(acc);
                }
                SamplerKind::Symmetric { cumulative }
            }
            NoiseModel::HeatKernel { t, .. } => SamplerKind::Heat { t: *t },
            NoiseModel::CayleyMallows { theta, .. } => {
                if n <= ENUMERATION_CAP {
                    SamplerKind::MallowsExact {
                        table: self.pmf_exact()?.sampler()?,
                    }
                } else {
                    SamplerKind::MallowsMetropolis {
                        theta: *theta,
                        burn_in: default_metropolis_burn_in(n),
                    }
                }
            }
        };
        Ok(NoiseSampler { n, kind })
    }
}

/// `dist(theta, ell) = min_{j in 1..=ell} |e^theta - j|`; zero exactly when
/// `e^theta` hits an integer at or below `ell`, the unidentifiable regime.
pub fn dist_theta(theta: f64, ell: usize) -> f64 {
    let q = theta.exp();
    (1..=ell)
        .map(|j| (q - j as f64).abs())
        .fold(f64::INFINITY, f64::min)
}

/// `q (q+1) ... (q+n-1)`, the Cayley-Mallows normalizer in the q-variable.
pub fn mallows_normalizer(q: f64, n: usize) -> f64 {
    (0..n).map(|i| q + i as f64).product()
}

/// Default burn-in for the Metropolis sampler: 20 n ceil(ln n) steps.
pub fn default_metropolis_burn_in(n: usize) -> usize {
    20 * n * (n as f64).ln().ceil().max(1.0) as usize
}

/// Eigenvalue of the lazy transposition step at the irreducible `mu`:
/// `1/n + ((n-1)/n) * chi_mu(tau) / dim(mu)`.
pub fn trans_eigenvalue(n: usize, mu: &Partition) -> Result<f64> {
    if n < 2 {
        return Ok(1.0);
    }
    let ratio = transposition_ratio(mu)?;
    let ratio = *ratio.numer() as f64 / *ratio.denom() as f64;
    Ok(1.0 / n as f64 + (n as f64 - 1.0) / n as f64 * ratio)
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// Symmetric-noise pmf in closed form: a permutation moving exactly m
/// elements can arise from any scrambled subset A containing those m, so
/// `pmf(pi) = sum_{j >= m} p_j C(n-m, j-m) / (C(n,j) j!)`.
fn symmetric_pmf(n: usize, pbar: &[f64]) -> Result<DensePmf> {
    let perms = enumerate_sn(n)?;
    let mut by_moved = vec![0.0; n + 1];
    for m in 0..=n {
        let mut acc = 0.0;
        for (j, &p) in pbar.iter().enumerate().skip(m) {
            if p > 0.0 {
                acc += p * binom(n - m, j - m) / (binom(n, j) * factorial_usize(j)? as f64);
            }
        }
        by_moved[m] = acc;
    }
    let values = perms.iter().map(|p| by_moved[p.moved_count()]).collect();
    Ok(DensePmf::from_values(n, values)?)
}

/// The lazy transposition step: identity with probability 1/n, each
/// transposition with probability 2/n^2.
fn trans_support(n: usize) -> Vec<(Permutation, f64)> {
    let mut out = vec![(Permutation::identity(n), 1.0 / n as f64)];
    let w = 2.0 / (n as f64 * n as f64);
    for a in 1..=n {
        for b in (a + 1)..=n {
            out.push((Permutation::transposition(n, a, b).unwrap(), w));
        }
    }
    out
}

fn heat_pmf(n: usize, t: f64) -> Result<DensePmf> {
    let total = factorial_usize(n)?;
    let step = trans_support(n);
    // Walk power pmf, convolved one lazy step at a time.
    let mut power = vec![0.0; total];
    power[Permutation::identity(n).rank()] = 1.0;
    let mut acc = vec![0.0; total];

    let perms = enumerate_sn(n)?;
    let mut weight = (-t).exp(); // Poi(t)(0)
    let mut cum = 0.0;
    let mut j = 0usize;
    loop {
        for (v, p) in acc.iter_mut().zip(&power) {
            *v += weight * p;
        }
        cum += weight;
        if 1.0 - cum < POISSON_TAIL || j > 2000 {
            break;
        }
        // power <- trans * power
        let mut next = vec![0.0; total];
        for (g_rank, &pg) in power.iter().enumerate() {
            if pg == 0.0 {
                continue;
            }
            let g = &perms[g_rank];
            for (tau, wt) in &step {
                next[tau.compose(g)?.rank()] += wt * pg;
            }
        }
        power = next;
        j += 1;
        weight *= t / j as f64;
    }
    for v in acc.iter_mut() {
        *v /= cum;
    }
    Ok(DensePmf::from_values(n, acc)?)
}

fn mallows_pmf(n: usize, theta: f64) -> Result<DensePmf> {
    let q = theta.exp();
    let z = mallows_normalizer(q, n);
    let values = enumerate_sn(n)?
        .iter()
        .map(|p| q.powi(p.cycle_count() as i32) / z)
        .collect();
    Ok(DensePmf::from_values(n, values)?)
}

/// Prepared sampler for a [`NoiseModel`].
pub struct NoiseSampler {
    n: usize,
    kind: SamplerKind,
}

enum SamplerKind {
    Symmetric { cumulative: Vec<f64> },
    Heat { t: f64 },
    MallowsExact { table: DensePmfSampler },
    MallowsMetropolis { theta: f64, burn_in: usize },
}

impl NoiseSampler {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let n = self.n;
        match &self.kind {
            SamplerKind::Symmetric { cumulative } => {
                let u: f64 = rng.gen();
                let j = cumulative
                    .partition_point(|&c| c < u)
                    .min(cumulative.len() - 1);
                random_subset_scramble(n, j, rng)
            }
            SamplerKind::Heat { t } => {
                let steps = Poisson::new(*t).expect("t > 0 validated").sample(rng) as usize;
                let mut cur = Permutation::identity(n);
                for _ in 0..steps {
                    cur = transposition_walk_step(&cur, rng);
                }
                cur
            }
            SamplerKind::MallowsExact { table } => table.sample(rng).clone(),
            SamplerKind::MallowsMetropolis { theta, burn_in } => {
                sample_mallows_metropolis(*theta, n, *burn_in, rng)
            }
        }
    }
}

/// One-shot draw; prefer [`NoiseModel::sampler`] in loops so the Mallows
/// inverse-CDF table is built once.
pub fn sample_noise<R: Rng + ?Sized>(model: &NoiseModel, rng: &mut R) -> Result<Permutation> {
    Ok(model.sampler()?.sample(rng))
}

/// Uniformly scramble a uniformly random subset of size `j`.
fn random_subset_scramble<R: Rng + ?Sized>(n: usize, j: usize, rng: &mut R) -> Permutation {
    // Partial Fisher-Yates picks the subset; a second shuffle permutes it.
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..j {
        let pick = rng.gen_range(i..n);
        pool.swap(i, pick);
    }
    let subset = &mut pool[..j];
    subset.sort_unstable();
    let mut images: Vec<usize> = subset.to_vec();
    for i in (1..images.len()).rev() {
        let k = rng.gen_range(0..=i);
        images.swap(i, k);
    }
    let mut image: Vec<u8> = (0..n as u8).collect();
    for (slot, img) in subset.iter().zip(&images) {
        image[*slot] = *img as u8;
    }
    Permutation::from_zero_based_unchecked(image)
}

/// One step of the lazy transposition walk: hold with probability 1/n, else
/// left-multiply by a uniformly random transposition.
pub fn transposition_walk_step<R: Rng + ?Sized>(cur: &Permutation, rng: &mut R) -> Permutation {
    let n = cur.n();
    if n < 2 || rng.gen::<f64>() < 1.0 / n as f64 {
        return cur.clone();
    }
    let (a, b) = random_transposition_pair(n, rng);
    let tau = Permutation::transposition(n, a, b).expect("valid pair");
    tau.compose(cur).expect("same n")
}

fn random_transposition_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.gen_range(1..=n);
    let mut b = rng.gen_range(1..=n - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Metropolis chain for the Cayley-Mallows target: propose multiplication by
/// a uniform transposition, accept with `min(1, q^{delta cycles})`. Returns
/// the state after `steps` moves from the identity.
pub fn sample_mallows_metropolis<R: Rng + ?Sized>(
    theta: f64,
    n: usize,
    steps: usize,
    rng: &mut R,
) -> Permutation {
    let q = theta.exp();
    let mut cur = Permutation::identity(n);
    if n < 2 {
        return cur;
    }
    for _ in 0..steps {
        let (a, b) = random_transposition_pair(n, rng);
        // Left-multiplying by (a b) splits a's cycle when b shares it
        // (cycle count +1), else merges two cycles (cycle count -1).
        let same_cycle = {
            let mut found = false;
            let mut x = cur.apply(a);
            while x != a {
                if x == b {
                    found = true;
                    break;
                }
                x = cur.apply(x);
            }
            found
        };
        let accept = if same_cycle {
            true // delta = +1 and q >= 1
        } else {
            rng.gen::<f64>() < 1.0 / q
        };
        if accept {
            let tau = Permutation::transposition(n, a, b).expect("valid pair");
            cur = tau.compose(&cur).expect("same n");
        }
    }
    cur
}
