//! Integer partitions / Young diagrams: dominance order, hook lengths and
//! contents, irreducible dimensions via the hook length formula, and path
//! counting in Young's lattice.
//!
//! Dimensions and path counts are computed in checked 128-bit arithmetic;
//! overflow is reported as an error, never wrapped.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::factorial_u128;

/// Ceiling on `all_partitions`; p(30) = 5604 entries.
pub const PARTITION_CAP: usize = 30;

/// A partition of n: weakly decreasing positive parts summing to n.
/// The empty partition (n = 0) is allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Per-cell hook length and content annotation, row-major, 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellAnnotation {
    pub row: usize,
    pub col: usize,
    pub hook: u32,
    pub content: i64,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts not weakly decreasing: {parts:?}"
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        Ok(Partition { parts })
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The single-part partition `(j)`; `(0)` is the empty partition.
    pub fn trivial(j: usize) -> Self {
        if j == 0 {
            Partition::empty()
        } else {
            Partition {
                parts: vec![j as u32],
            }
        }
    }

    /// The single-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition {
            parts: vec![1; n],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, row: usize) -> u32 {
        self.parts.get(row).copied().unwrap_or(0)
    }

    /// Transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize >= c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Diagram containment (cellwise), regardless of weights.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i) >= p)
    }

    /// Dominance order: `self` dominates `other` iff every prefix sum of
    /// `self` is at least that of `other`. Errors unless weights agree.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.weight() != other.weight() {
            return Err(Error::WeightMismatch(self.weight(), other.weight()));
        }
        let rows = self.rows().max(other.rows());
        let mut acc_self = 0u64;
        let mut acc_other = 0u64;
        for i in 0..rows {
            acc_self += self.part(i) as u64;
            acc_other += other.part(i) as u64;
            if acc_self < acc_other {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Hook length and content of every cell, row-major.
    pub fn cell_annotations(&self) -> Vec<CellAnnotation> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.weight());
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 0..len as usize {
                let arm = len as usize - 1 - j;
                let leg = conj.part(j) as usize - 1 - i;
                out.push(CellAnnotation {
                    row: i + 1,
                    col: j + 1,
                    hook: (arm + leg + 1) as u32,
                    content: j as i64 - i as i64,
                });
            }
        }
        out
    }

    pub fn hook_product(&self) -> Result<u128> {
        let mut acc: u128 = 1;
        for cell in self.cell_annotations() {
            acc = acc
                .checked_mul(cell.hook as u128)
                .ok_or(Error::Overflow("hook product"))?;
        }
        Ok(acc)
    }

    /// Dimension of the irreducible representation indexed by this partition:
    /// `n! / prod of hook lengths`, which also counts standard Young tableaux.
    pub fn irrep_dimension(&self) -> Result<u128> {
        Ok(factorial_u128(self.weight())? / self.hook_product()?)
    }

    /// All partitions obtained by adding a single box.
    pub fn one_box_additions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.rows() {
            let here = self.part(i);
            let above = if i == 0 { u32::MAX } else { self.part(i - 1) };
            if here < above {
                let mut parts = self.parts.clone();
                if i == self.rows() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push(Partition { parts });
            }
        }
        out
    }

    /// All partitions `mu` of the same weight with `mu` dominating `self`,
    /// including `self`.
    pub fn up_set(&self) -> Result<Vec<Partition>> {
        Ok(all_partitions(self.weight())?
            .into_iter()
            .filter(|mu| mu.dominates(self).unwrap_or(false))
            .collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses comma-separated parts, e.g. `"3,1,1"`.
    fn from_str(s: &str) -> Result<Partition> {
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Result<Vec<u32>> = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad partition part {tok:?}: {e}")))
            })
            .collect();
        Partition::new(parts?)
    }
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn all_partitions(n: usize) -> Result<Vec<Partition>> {
    if n > PARTITION_CAP {
        return Err(Error::CapExceeded {
            n,
            cap: PARTITION_CAP,
        });
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    gen_partitions(n as u32, n as u32, &mut stack, &mut out);
    Ok(out)
}

fn gen_partitions(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    let mut p = remaining.min(max_part);
    while p >= 1 {
        stack.push(p);
        gen_partitions(remaining - p, p, stack, out);
        stack.pop();
        p -= 1;
    }
}

/// The hook partition `(n - ell, 1^ell)`.
pub fn hook_partition(n: usize, ell: usize) -> Result<Partition> {
    if n == 0 || ell >= n {
        return Err(Error::InvalidParameter(format!(
            "hook partition needs ell < n, got n = {n}, ell = {ell}"
        )));
    }
    let mut parts = vec![(n - ell) as u32];
    parts.extend(std::iter::repeat(1).take(ell));
    // (1, 1, ..., 1) when ell = n - 1; otherwise first part dominates.
    Partition::new(parts)
}

/// Number of chains in Young's lattice from `mu` to `lambda`, each step
/// adding one box; 0 when `mu` is not contained in `lambda`. This equals the
/// number of standard fillings of the skew shape `lambda / mu`.
pub fn lattice_paths(mu: &Partition, lambda: &Partition) -> Result<u128> {
    if mu.weight() > lambda.weight() || !lambda.contains(mu) {
        return Ok(0);
    }
    let mut level: HashMap<Partition, u128> = HashMap::from([(mu.clone(), 1u128)]);
    for _ in mu.weight()..lambda.weight() {
        let mut next: HashMap<Partition, u128> = HashMap::new();
        for (nu, count) in level {
            for up in nu.one_box_additions() {
                if lambda.contains(&up) {
                    let slot = next.entry(up).or_insert(0);
                    *slot = slot
                        .checked_add(count)
                        .ok_or(Error::Overflow("lattice paths"))?;
                }
            }
        }
        level = next;
    }
    Ok(level.remove(lambda).unwrap_or(0))
}
