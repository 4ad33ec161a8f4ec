//! The partition lattice with its merge labeling, the inversion-sequence
//! bijection for its label words, and closed-form Chow polynomials that never
//! build the lattice: isolated-descent inversion sequences are enumerated
//! directly, with products accumulated per descent count.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{one_plus_x_pow, IntPolynomial};
use crate::poset::GradedPoset;
use crate::rlabel::EdgeLabeling;

/// Ground-set size cap for explicit partition lattices (Bell(10) elements).
pub const PARTITION_GROUND_CAP: usize = 10;

/// Cap for the closed-form expansions (products still fit in 64 bits).
pub const BRAID_FORMULA_CAP: usize = 12;

/// Partition of {1, ..., m} in canonical form: each block sorted, blocks
/// ordered by their minima.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SetPartition {
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let p = SetPartition { blocks };
        let mut all: Vec<u32> = p.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        let m = all.len() as u32;
        if p.blocks.iter().any(Vec::is_empty) || all != (1..=m).collect::<Vec<u32>>() {
            return Err(Error::InvalidParameter(format!(
                "blocks do not partition a set {{1, ..., m}}: {p}"
            )));
        }
        Ok(p)
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Rank in the partition lattice: ground size minus number of blocks.
    pub fn rank(&self) -> usize {
        self.ground_size() - self.num_blocks()
    }

    /// The partition with blocks i and j merged (indices into `blocks`).
    pub fn merge(&self, i: usize, j: usize) -> SetPartition {
        let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(self.blocks.len() - 1);
        let mut merged = self.blocks[i].clone();
        merged.extend_from_slice(&self.blocks[j]);
        merged.sort_unstable();
        for (k, b) in self.blocks.iter().enumerate() {
            if k != i && k != j {
                blocks.push(b.clone());
            }
        }
        blocks.push(merged);
        blocks.sort();
        SetPartition { blocks }
    }

    /// Every partition of {1, ..., m}, by restricted growth strings.
    pub fn all_partitions(m: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut assignment = vec![0usize; m];
        fn rec(
            assignment: &mut Vec<usize>,
            pos: usize,
            max_used: usize,
            out: &mut Vec<SetPartition>,
        ) {
            let m = assignment.len();
            if pos == m {
                let blocks_count = max_used;
                let mut blocks = vec![Vec::new(); blocks_count];
                for (i, &b) in assignment.iter().enumerate() {
                    blocks[b].push(i as u32 + 1);
                }
                blocks.sort();
                out.push(SetPartition { blocks });
                return;
            }
            for b in 0..=max_used {
                assignment[pos] = b;
                rec(assignment, pos + 1, max_used.max(b + 1), out);
            }
        }
        if m == 0 {
            return vec![SetPartition { blocks: Vec::new() }];
        }
        rec(&mut assignment, 0, 0, &mut out);
        out
    }
}

impl std::fmt::Display for SetPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// The lattice of set partitions of {1, ..., n+1} ordered by refinement,
/// with each merge of blocks B, B' labeled max(min B, min B'). This is the
/// intersection lattice of the braid arrangement of rank n.
pub fn partition_lattice(n: usize) -> Result<(GradedPoset, EdgeLabeling)> {
    let ground = n + 1;
    if ground > PARTITION_GROUND_CAP {
        return Err(Error::SizeCap {
            what: format!("partition lattice on a ground set of {ground}"),
            max: PARTITION_GROUND_CAP,
        });
    }
    let mut parts = SetPartition::all_partitions(ground);
    parts.sort_by(|a, b| {
        a.rank()
            .cmp(&b.rank())
            .then_with(|| a.blocks.cmp(&b.blocks))
    });
    let index: HashMap<&SetPartition, usize> =
        parts.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let names = parts.iter().map(|p| p.to_string()).collect();
    let mut covers = Vec::new();
    let mut labeling = EdgeLabeling::new();
    for (i, p) in parts.iter().enumerate() {
        for bi in 0..p.num_blocks() {
            for bj in bi + 1..p.num_blocks() {
                let merged = p.merge(bi, bj);
                let j = index[&merged];
                covers.push((i, j));
                let label = p.blocks[bi][0].max(p.blocks[bj][0]);
                labeling.set(i, j, label)?;
            }
        }
    }
    let poset = GradedPoset::from_named_covers(names, covers)?;
    Ok((poset, labeling))
}

/// Inversion sequence of a label-word permutation: entry i (1-indexed) lies
/// in {1, ..., n+1-i}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InversionSequence {
    entries: Vec<u32>,
}

impl InversionSequence {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        for (i, &a) in entries.iter().enumerate() {
            let max = (n - i) as u32;
            if a == 0 || a > max {
                return Err(Error::InvalidInversionEntry {
                    position: i + 1,
                    value: a,
                    max,
                });
            }
        }
        Ok(InversionSequence { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Product of the entries: the number of maximal chains carrying the
    /// corresponding label word.
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &a in &self.entries {
            acc *= a;
        }
        acc
    }
}

fn validate_label_permutation(sigma: &[u32]) -> Result<()> {
    let n = sigma.len();
    let top = (n + 1) as u32;
    let mut seen = vec![false; n];
    for &v in sigma {
        if v < 2 || v > top || std::mem::replace(&mut seen[(v - 2) as usize], true) {
            return Err(Error::InvalidPermutation { top });
        }
    }
    Ok(())
}

/// Inversion sequence of a permutation of {2, ..., n+1}: a_i counts the j >= i
/// with sigma_j <= sigma_i. The equivalent partial-count form
/// a_i = sigma_i - #{j <= i : sigma_j <= sigma_i} is computed as well and the
/// two are cross-checked.
pub fn inversion_sequence(sigma: &[u32]) -> Result<InversionSequence> {
    validate_label_permutation(sigma)?;
    let n = sigma.len();
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let suffix = (i..n).filter(|&j| sigma[j] <= sigma[i]).count() as u32;
        let prefix = (0..=i).filter(|&j| sigma[j] <= sigma[i]).count() as u32;
        let partial = sigma[i] - prefix;
        if suffix != partial {
            return Err(Error::Internal(format!(
                "inversion count formulas disagree at position {}: {suffix} vs {partial}",
                i + 1
            )));
        }
        entries.push(suffix);
    }
    InversionSequence::new(entries)
}

/// Inverse of the bijection: entry a_i picks the a_i-th smallest unused value
/// of {2, ..., n+1}.
pub fn inversion_sequence_inverse(entries: &[u32]) -> Result<Vec<u32>> {
    let seq = InversionSequence::new(entries.to_vec())?;
    let n = seq.entries.len();
    let mut remaining: Vec<u32> = (2..=(n + 1) as u32).collect();
    let mut sigma = Vec::with_capacity(n);
    for &a in &seq.entries {
        sigma.push(remaining.remove(a as usize - 1));
    }
    Ok(sigma)
}

/// Number of maximal chains of the partition lattice whose label word is the
/// given permutation of {2, ..., n+1}: the product of its inversion sequence.
pub fn count_chains_with_label(sigma: &[u32]) -> Result<BigInt> {
    Ok(inversion_sequence(sigma)?.product())
}

/// Chow polynomial of the rank-n partition lattice by the closed descent
/// expansion over inversion sequences; never builds the lattice.
pub fn chow_braid(n: usize) -> Result<IntPolynomial> {
    braid_polynomial(n, false)
}

pub fn augmented_chow_braid(n: usize) -> Result<IntPolynomial> {
    braid_polynomial(n, true)
}

/// The gamma coefficients of the (augmented) Chow polynomial: index d holds
/// the total weight of isolated-descent inversion sequences with d descents.
pub fn braid_gamma(n: usize, augmented: bool) -> Result<Vec<BigInt>> {
    if n > BRAID_FORMULA_CAP {
        return Err(Error::SizeCap {
            what: format!("closed-form braid expansion at rank {n}"),
            max: BRAID_FORMULA_CAP,
        });
    }
    Ok(descent_weights(n, augmented)
        .into_iter()
        .map(BigInt::from)
        .collect())
}

fn braid_polynomial(n: usize, augmented: bool) -> Result<IntPolynomial> {
    let weights = braid_gamma(n, augmented)?;
    let m = if augmented { n } else { n.saturating_sub(1) };
    let mut acc = IntPolynomial::zero();
    for (d, w) in weights.into_iter().enumerate() {
        if num_traits::Zero::is_zero(&w) {
            continue;
        }
        acc = acc.add(&IntPolynomial::monomial(w, d).mul(&one_plus_x_pow(m - 2 * d)));
    }
    Ok(acc)
}

/// Sum of entry products over inversion sequences with isolated descents
/// (excluding descents at position 1 unless `augmented`), grouped by descent
/// count. Sequences are pruned as soon as two consecutive descents appear.
fn descent_weights(n: usize, augmented: bool) -> Vec<u128> {
    let d_max = if augmented {
        n / 2
    } else {
        n.saturating_sub(1) / 2
    };
    if n == 0 {
        return vec![1];
    }
    (1..=n as u32)
        .into_par_iter()
        .map(|a1| {
            let mut w = vec![0u128; d_max + 1];
            extend_sequences(n, 2, a1, false, 0, a1 as u128, augmented, &mut w);
            w
        })
        .reduce(
            || vec![0u128; d_max + 1],
            |mut acc, w| {
                for (a, b) in acc.iter_mut().zip(w) {
                    *a += b;
                }
                acc
            },
        )
}

#[allow(clippy::too_many_arguments)]
fn extend_sequences(
    n: usize,
    pos: usize,
    last: u32,
    last_descended: bool,
    descents: usize,
    product: u128,
    augmented: bool,
    weights: &mut [u128],
) {
    if pos > n {
        weights[descents] += product;
        return;
    }
    let max_entry = (n + 1 - pos) as u32;
    for a in 1..=max_entry {
        let descended = last > a;
        if descended {
            if last_descended {
                continue;
            }
            if !augmented && pos == 2 {
                continue;
            }
        }
        extend_sequences(
            n,
            pos + 1,
            a,
            descended,
            descents + descended as usize,
            product * a as u128,
            augmented,
            weights,
        );
    }
}
