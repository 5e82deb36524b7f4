//! Exact integer characters of the symmetric group, computed by the
//! Murnaghan-Nakayama border-strip recursion, plus the transposition
//! character-ratio formula and bulk character tables.
//!
//! All arithmetic here is exact; floating point enters only at the Fourier
//! and estimation layers.

use std::collections::HashMap;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::partition::{all_partitions, Partition};
use crate::perm::{factorial_u128, CycleType, Permutation, ENUMERATION_CAP};

/// The character of the irreducible representation indexed by `lambda`,
/// evaluated on the conjugacy class of cycle type `class`. Always an integer
/// for the symmetric group; `character(lambda, identity class)` equals the
/// irreducible dimension.
pub fn character(lambda: &Partition, class: &CycleType) -> Result<i64> {
    if lambda.weight() != class.n() {
        return Err(Error::WeightMismatch(lambda.weight(), class.n()));
    }
    let mut memo = HashMap::new();
    Ok(mn_recurse(
        lambda.parts().to_vec(),
        class.partition().parts(),
        0,
        &mut memo,
    ))
}

/// Border-strip recursion over beta numbers. Removing a strip of size `t`
/// from the partition with beta set `B` replaces some `b` in `B` by `b - t`
/// (when `b - t` is non-negative and not already in `B`); the sign is
/// `(-1)^height` where the height counts beta numbers strictly between.
fn mn_recurse(
    lambda: Vec<u32>,
    class_parts: &[u32],
    idx: usize,
    memo: &mut HashMap<(Vec<u32>, usize), i64>,
) -> i64 {
    if idx == class_parts.len() {
        debug_assert!(lambda.is_empty());
        return 1;
    }
    if let Some(&v) = memo.get(&(lambda.clone(), idx)) {
        return v;
    }
    let t = class_parts[idx] as i64;
    let r = lambda.len();
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (r - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        let target = b - t;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut new_beta = beta.clone();
        new_beta[i] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let next: Vec<u32> = new_beta
            .iter()
            .enumerate()
            .map(|(j, &nb)| (nb - (r - 1 - j) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn_recurse(next, class_parts, idx + 1, memo);
    }
    memo.insert((lambda, idx), total);
    total
}

/// The ratio `chi_mu(transposition) / dim(rho_mu)` in closed form:
/// `(1 / n(n-1)) * sum_j [(mu_j - j)(mu_j - j + 1) - j(j - 1)]` over the
/// 1-based rows `j` of `mu`.
pub fn transposition_ratio(mu: &Partition) -> Result<Rational64> {
    let n = mu.weight() as i64;
    if n < 2 {
        return Err(Error::InvalidParameter(
            "transposition ratio needs weight >= 2".into(),
        ));
    }
    let mut num = 0i64;
    for (row, &p) in mu.parts().iter().enumerate() {
        let j = row as i64 + 1;
        let m = p as i64;
        num += (m - j) * (m - j + 1) - j * (j - 1);
    }
    Ok(Rational64::new(num, n * (n - 1)))
}

/// A permutation with the given cycle type, built from consecutive blocks.
pub fn class_representative(alpha: &Partition) -> Permutation {
    let n = alpha.weight();
    let mut image = vec![0u8; n];
    let mut offset = 0usize;
    for &len in alpha.parts() {
        let len = len as usize;
        for i in 0..len {
            image[offset + i] = (offset + (i + 1) % len) as u8;
        }
        offset += len;
    }
    Permutation::from_zero_based_unchecked(image)
}

/// Size of the conjugacy class with cycle type `alpha`: `n! / z_alpha` where
/// `z_alpha = prod_j j^{m_j} m_j!` over the part multiplicities.
pub fn class_size(alpha: &Partition) -> Result<u128> {
    let mut z: u128 = 1;
    let mut mult: HashMap<u32, u128> = HashMap::new();
    for &p in alpha.parts() {
        *mult.entry(p).or_insert(0) += 1;
    }
    for (&j, &m) in mult.iter() {
        for _ in 0..m {
            z = z.checked_mul(j as u128).ok_or(Error::Overflow("z_alpha"))?;
        }
        for i in 1..=m {
            z = z.checked_mul(i).ok_or(Error::Overflow("z_alpha"))?;
        }
    }
    Ok(factorial_u128(alpha.weight())? / z)
}

/// Complete character table of S_n: rows indexed by partitions (irreducible
/// representations), columns by cycle types (conjugacy classes), both in
/// reverse lexicographic order.
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    class_sizes: Vec<u128>,
    values: Vec<Vec<i64>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Result<Self> {
        if n > ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                n,
                cap: ENUMERATION_CAP,
            });
        }
        let partitions = all_partitions(n)?;
        let class_sizes = partitions
            .iter()
            .map(class_size)
            .collect::<Result<Vec<_>>>()?;
        let mut values = Vec::with_capacity(partitions.len());
        for lam in &partitions {
            let row = partitions
                .iter()
                .map(|alpha| character(lam, &CycleType::new(alpha.clone())))
                .collect::<Result<Vec<_>>>()?;
            values.push(row);
        }
        let index = partitions
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(CharacterTable {
            n,
            partitions,
            class_sizes,
            values,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row / column labels, in reverse lexicographic order.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn class_size(&self, class_idx: usize) -> u128 {
        self.class_sizes[class_idx]
    }

    pub fn value(&self, lambda_idx: usize, class_idx: usize) -> i64 {
        self.values[lambda_idx][class_idx]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Character value by labels rather than indices.
    pub fn value_of(&self, lambda: &Partition, class: &CycleType) -> Result<i64> {
        let li = self
            .index_of(lambda)
            .ok_or_else(|| Error::InvalidPartition(format!("{lambda} not a partition of {}", self.n)))?;
        let ci = self
            .index_of(class.partition())
            .ok_or_else(|| Error::InvalidPartition(format!("bad class {}", class.partition())))?;
        Ok(self.values[li][ci])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn ct(parts: &[u32]) -> CycleType {
        CycleType::new(Partition::new(parts.to_vec()).unwrap())
    }

    #[test]
    fn trivial_character_is_one() {
        for n in 1..=6usize {
            let triv = Partition::trivial(n);
            for alpha in all_partitions(n).unwrap() {
                assert_eq!(character(&triv, &CycleType::new(alpha)).unwrap(), 1);
            }
        }
    }

    #[test]
    fn identity_class_gives_dimension() {
        for n in 1..=8usize {
            let id = CycleType::new(Partition::column(n));
            for lam in all_partitions(n).unwrap() {
                assert_eq!(
                    character(&lam, &id).unwrap() as u128,
                    lam.irrep_dimension().unwrap()
                );
            }
        }
    }

    #[test]
    fn s2_table() {
        let table = CharacterTable::new(2).unwrap();
        // Partitions in reverse lex order: (2), (1,1); same for classes.
        assert_eq!(table.partitions()[0].parts(), &[2]);
        assert_eq!(table.value(0, 0), 1); // trivial at the 2-cycle class
        assert_eq!(table.value(0, 1), 1); // trivial at the identity
        assert_eq!(table.value(1, 0), -1); // sign at the 2-cycle class
        assert_eq!(table.value(1, 1), 1); // sign at the identity
    }

    #[test]
    fn standard_character_counts_fixed_points_minus_one() {
        for n in 2..=6usize {
            let std_rep = Partition::new(vec![n as u32 - 1, 1]).unwrap();
            for alpha in all_partitions(n).unwrap() {
                let rep = class_representative(&alpha);
                let fixed = (1..=n).filter(|&i| rep.apply(i) == i).count() as i64;
                assert_eq!(
                    character(&std_rep, &CycleType::new(alpha)).unwrap(),
                    fixed - 1
                );
            }
        }
    }

    #[test]
    fn first_orthogonality_exact() {
        for n in 2..=6usize {
            let table = CharacterTable::new(n).unwrap();
            let order = factorial_u128(n).unwrap() as i128;
            let count = table.partitions().len();
            for a in 0..count {
                for b in 0..count {
                    let mut sum: i128 = 0;
                    for c in 0..count {
                        sum += table.class_size(c) as i128
                            * table.value(a, c) as i128
                            * table.value(b, c) as i128;
                    }
                    assert_eq!(sum, if a == b { order } else { 0 });
                }
            }
        }
    }

    #[test]
    fn nontrivial_characters_sum_to_zero() {
        for n in 2..=6usize {
            let table = CharacterTable::new(n).unwrap();
            for (li, lam) in table.partitions().iter().enumerate() {
                let sum: i128 = (0..table.partitions().len())
                    .map(|c| table.class_size(c) as i128 * table.value(li, c) as i128)
                    .sum();
                if lam == &Partition::trivial(n) {
                    assert_eq!(sum, factorial_u128(n).unwrap() as i128);
                } else {
                    assert_eq!(sum, 0, "{lam}");
                }
            }
        }
    }

    #[test]
    fn column_orthogonality_exact() {
        for n in 2..=6usize {
            let table = CharacterTable::new(n).unwrap();
            let order = factorial_u128(n).unwrap() as i128;
            let count = table.partitions().len();
            for c1 in 0..count {
                for c2 in 0..count {
                    let mut sum: i128 = 0;
                    for l in 0..count {
                        sum += table.value(l, c1) as i128 * table.value(l, c2) as i128;
                    }
                    let expect = if c1 == c2 {
                        order / table.class_size(c1) as i128
                    } else {
                        0
                    };
                    assert_eq!(sum, expect);
                }
            }
        }
    }

    #[test]
    fn transposition_ratio_examples() {
        assert_eq!(
            transposition_ratio(&Partition::trivial(5)).unwrap(),
            Rational64::one()
        );
        // (n-1, 1) gives (n-3)/(n-1); n = 5 is 1/2.
        assert_eq!(
            transposition_ratio(&Partition::new(vec![4, 1]).unwrap()).unwrap(),
            Rational64::new(1, 2)
        );
        for n in 3..=8 {
            assert_eq!(
                transposition_ratio(&Partition::new(vec![n - 1, 1]).unwrap()).unwrap(),
                Rational64::new(n as i64 - 3, n as i64 - 1)
            );
        }
        // Sign representation: the sum telescopes to -1.
        for n in 2..=8usize {
            assert_eq!(
                transposition_ratio(&Partition::column(n)).unwrap(),
                -Rational64::one()
            );
        }
    }

    #[test]
    fn transposition_ratio_matches_character_up_to_8() {
        for n in 2..=8usize {
            let mut trans_parts = vec![2u32];
            trans_parts.extend(std::iter::repeat(1).take(n - 2));
            let trans = ct(&trans_parts);
            for mu in all_partitions(n).unwrap() {
                let chi = character(&mu, &trans).unwrap();
                let dim = mu.irrep_dimension().unwrap() as i64;
                let ratio = transposition_ratio(&mu).unwrap();
                assert_eq!(
                    Rational64::new(chi, dim),
                    ratio,
                    "mu = {mu}, chi = {chi}, dim = {dim}"
                );
            }
        }
    }

    fn big_ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn pow(q: &BigRational, e: usize) -> BigRational {
        let mut acc = BigRational::one();
        for _ in 0..e {
            acc *= q;
        }
        acc
    }

    /// The q-cycle class sum identity:
    /// (1/n!) sum_sigma chi_mu(sigma) q^{cycles(sigma)}
    ///   = prod_{u in mu} (q + c(u)) / h(u),
    /// exact in rational arithmetic.
    #[test]
    fn q_cycle_identity_exact() {
        let qs = [big_ratio(1, 2), big_ratio(1, 1), big_ratio(2, 1), big_ratio(7, 3)];
        for n in 1..=6usize {
            let table = CharacterTable::new(n).unwrap();
            let order = BigInt::from(factorial_u128(n).unwrap());
            for (li, mu) in table.partitions().iter().enumerate() {
                for q in &qs {
                    let mut lhs = BigRational::zero();
                    for (ci, alpha) in table.partitions().iter().enumerate() {
                        let size = BigInt::from(table.class_size(ci));
                        let chi = BigInt::from(table.value(li, ci));
                        lhs += BigRational::from(size * chi) * pow(q, alpha.rows());
                    }
                    lhs /= BigRational::from(order.clone());
                    let mut rhs = BigRational::one();
                    for cell in mu.cell_annotations() {
                        rhs *= (q + BigRational::from(BigInt::from(cell.content)))
                            / BigRational::from(BigInt::from(cell.hook as i64));
                    }
                    assert_eq!(lhs, rhs, "mu = {mu}, q = {q}");
                }
            }
        }
    }

    #[test]
    fn weight_mismatch_rejected() {
        let lam = Partition::trivial(4);
        assert!(character(&lam, &ct(&[3])).is_err());
    }
}
