//! Edge labelings of graded posets and the R-labeling condition: every
//! interval must have exactly one maximal chain with a weakly increasing
//! label word.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::abpoly::{ABWord, Letter};
use crate::error::{Error, Result};
use crate::poset::{Chain, GradedPoset};

/// Positive integer labels on cover relations, keyed by element index pairs.
/// Partial labelings are allowed; operations that need a label on an
/// unlabeled cover report it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeLabeling {
    labels: BTreeMap<(usize, usize), u32>,
}

impl EdgeLabeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, lo: usize, hi: usize, label: u32) -> Result<()> {
        if label == 0 {
            return Err(Error::ZeroLabel {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        self.labels.insert((lo, hi), label);
        Ok(())
    }

    pub fn get(&self, lo: usize, hi: usize) -> Option<u32> {
        self.labels.get(&(lo, hi)).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.labels.iter().map(|(&k, &v)| (k, v))
    }

    fn require(&self, poset: &GradedPoset, lo: usize, hi: usize) -> Result<u32> {
        self.get(lo, hi).ok_or_else(|| Error::MissingLabel {
            lo: poset.name(lo).to_string(),
            hi: poset.name(hi).to_string(),
        })
    }

    /// Check that every cover of the poset carries a label.
    pub fn complete_for(&self, poset: &GradedPoset) -> Result<()> {
        for &(lo, hi) in poset.covers() {
            self.require(poset, lo, hi)?;
        }
        Ok(())
    }
}

/// Label sequence read along a maximal chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelWord(Vec<u32>);

impl LabelWord {
    pub fn new(values: Vec<u32>) -> Self {
        LabelWord(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn descent_set(&self) -> BTreeSet<usize> {
        descent_set(&self.0)
    }
}

impl fmt::Display for LabelWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Labels along a maximal chain (bottom to top through covers).
pub fn label_word(
    poset: &GradedPoset,
    labeling: &EdgeLabeling,
    chain: &Chain,
) -> Result<LabelWord> {
    let elems = chain.elements();
    if elems.len() != poset.rank() + 1 || elems[0] != poset.bottom() {
        return Err(Error::InvalidChain(
            "label words are read along maximal chains only".into(),
        ));
    }
    let mut values = Vec::with_capacity(poset.rank());
    for w in elems.windows(2) {
        values.push(labeling.require(poset, w[0], w[1])?);
    }
    Ok(LabelWord(values))
}

/// Positions i (1-indexed) where the word strictly decreases.
pub fn descent_set(values: &[u32]) -> BTreeSet<usize> {
    values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect()
}

/// No two positions in the set are consecutive.
pub fn is_isolated(set: &BTreeSet<usize>) -> bool {
    let mut prev: Option<usize> = None;
    for &i in set {
        if prev == Some(i.wrapping_sub(1)) {
            return false;
        }
        prev = Some(i);
    }
    true
}

/// The sign-adjusted sequence (0, ±λ_1, ..., ±λ_n): entries at positions in
/// `flips` (1-indexed) are negated.
pub fn signed_word(word: &LabelWord, flips: &BTreeSet<usize>) -> Result<Vec<i64>> {
    let n = word.len();
    if let Some(&bad) = flips.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::FlipIndexOutOfRange { index: bad, n });
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(0);
    for (i, &v) in word.values().iter().enumerate() {
        let v = v as i64;
        out.push(if flips.contains(&(i + 1)) { -v } else { v });
    }
    Ok(out)
}

/// The ab-word u with u_i = a if the sign-adjusted sequence weakly rises at
/// step i and b otherwise; one letter per label.
pub fn u_monomial(word: &LabelWord, flips: &BTreeSet<usize>) -> Result<ABWord> {
    let signed = signed_word(word, flips)?;
    let letters = signed
        .windows(2)
        .map(|w| if w[0] <= w[1] { Letter::A } else { Letter::B })
        .collect();
    Ok(ABWord::new(letters))
}

/// Witness that a labeling fails the R-condition on some interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RLabelingViolation {
    pub lower: usize,
    pub upper: usize,
    pub lower_name: String,
    pub upper_name: String,
    /// Number of weakly increasing maximal chains found in the interval
    /// (0, or 2 meaning "at least two"; never 1).
    pub increasing_chains: usize,
}

impl fmt::Display for RLabelingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "interval [{}, {}] has {} weakly increasing maximal chains (expected exactly 1)",
            self.lower_name,
            self.upper_name,
            if self.increasing_chains >= 2 {
                "at least 2".to_string()
            } else {
                self.increasing_chains.to_string()
            }
        )
    }
}

/// Scan every interval, in order of increasing rank span, for the R-condition.
/// Returns the first offending interval, or None when the labeling is an
/// R-labeling. Errors if some cover in the poset has no label.
pub fn check_r_labeling(
    poset: &GradedPoset,
    labeling: &EdgeLabeling,
) -> Result<Option<RLabelingViolation>> {
    labeling.complete_for(poset)?;
    let n = poset.n_elements();
    let mut pairs = Vec::new();
    for f in 0..n {
        for g in 0..n {
            if f != g && poset.leq(f, g) {
                pairs.push((f, g));
            }
        }
    }
    pairs.sort_by_key(|&(f, g)| (poset.rank_of(g) - poset.rank_of(f), f, g));
    for (f, g) in pairs {
        let mut count = 0usize;
        count_weakly_increasing(poset, labeling, f, g, 0, &mut count);
        if count != 1 {
            return Ok(Some(RLabelingViolation {
                lower: f,
                upper: g,
                lower_name: poset.name(f).to_string(),
                upper_name: poset.name(g).to_string(),
                increasing_chains: count,
            }));
        }
    }
    Ok(None)
}

fn count_weakly_increasing(
    poset: &GradedPoset,
    labeling: &EdgeLabeling,
    at: usize,
    goal: usize,
    min_label: u32,
    count: &mut usize,
) {
    if *count >= 2 {
        return;
    }
    if at == goal {
        *count += 1;
        return;
    }
    for &w in poset.upper_covers(at) {
        if poset.leq(w, goal) {
            let lab = labeling.get(at, w).expect("checked by complete_for");
            if lab >= min_label {
                count_weakly_increasing(poset, labeling, w, goal, lab, count);
            }
        }
    }
}

pub fn verify_r_labeling(poset: &GradedPoset, labeling: &EdgeLabeling) -> Result<bool> {
    Ok(check_r_labeling(poset, labeling)?.is_none())
}
