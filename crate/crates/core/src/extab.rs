//! The ab-index and its Poincaré extension. `ext_ab_index` sums interval
//! Poincaré products against rank-set weights over all chains ending at the
//! maximum; `ext_ab_via_labeling` produces the same polynomial from the label
//! words of maximal chains alone, and the identities relating the two (and
//! their specializations) are exposed as checks.

use std::collections::{BTreeSet, HashMap};

use num_traits::Signed;

use crate::abpoly::{wt_weight, ABPolynomial, ABWord, Letter};
use crate::error::Result;
use crate::poly::IntPolynomial;
use crate::poset::GradedPoset;
use crate::rlabel::{label_word, EdgeLabeling};

/// Sum over every chain ending at the maximum of the chain's interval
/// Poincaré product (in y) times the weight of its rank set.
pub fn ext_ab_index(poset: &GradedPoset) -> ABPolynomial {
    let n = poset.rank();
    let mut weight_cache: HashMap<u64, ABPolynomial> = HashMap::new();
    let mut acc = ABPolynomial::zero();
    for chain in poset.chains_to_top(false) {
        let elems = chain.elements();
        let coeff = poset
            .chain_poincare(&chain)
            .expect("iterator yields valid chains");
        let wt = if n < 64 {
            let mut mask = 0u64;
            for &e in &elems[..elems.len() - 1] {
                mask |= 1 << poset.rank_of(e);
            }
            weight_cache
                .entry(mask)
                .or_insert_with(|| {
                    let set: BTreeSet<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
                    wt_weight(&set, n).expect("ranks below the top are < n")
                })
                .clone()
        } else {
            let set: BTreeSet<usize> = elems[..elems.len() - 1]
                .iter()
                .map(|&e| poset.rank_of(e))
                .collect();
            wt_weight(&set, n).expect("ranks below the top are < n")
        };
        acc = acc.add(&wt.scalar_mul(&coeff));
    }
    acc
}

/// The ab-index: the extension at y = 0.
pub fn ab_index(poset: &GradedPoset) -> ABPolynomial {
    ext_ab_index(poset).substitute_y(&IntPolynomial::zero())
}

/// The extension with every word's leading letter deleted. Errors on a rank-0
/// poset, whose extension is the empty word.
pub fn ext_ab_index_truncated(poset: &GradedPoset) -> Result<ABPolynomial> {
    ext_ab_index(poset).iota()
}

/// Sum over chains anchored at the minimum (and ending at the maximum) of the
/// Poincaré product times the rank-set weight.
pub fn bottom_anchored_chain_sum(poset: &GradedPoset) -> ABPolynomial {
    let n = poset.rank();
    let mut acc = ABPolynomial::zero();
    for chain in poset.chains_to_top(true) {
        let elems = chain.elements();
        let set: BTreeSet<usize> = elems[..elems.len() - 1]
            .iter()
            .map(|&e| poset.rank_of(e))
            .collect();
        let wt = wt_weight(&set, n).expect("ranks below the top are < n");
        let coeff = poset
            .chain_poincare(&chain)
            .expect("iterator yields valid chains");
        acc = acc.add(&wt.scalar_mul(&coeff));
    }
    acc
}

/// Rebuild the extended ab-index from label words: for each maximal chain F
/// and each subset E of label positions, add y^|E| times the rise/descent
/// word of F's sign-adjusted label sequence. Requires a complete labeling
/// (and produces the extension itself only when it is an R-labeling).
pub fn ext_ab_via_labeling(poset: &GradedPoset, labeling: &EdgeLabeling) -> Result<ABPolynomial> {
    let n = poset.rank();
    let mut acc = ABPolynomial::zero();
    for chain in poset.maximal_chains() {
        let word = label_word(poset, labeling, &chain)?;
        let values = word.values();
        debug_assert_eq!(values.len(), n);
        let mut signed = vec![0i64; n + 1];
        for mask in 0u64..(1 << n) {
            for (i, &v) in values.iter().enumerate() {
                let v = v as i64;
                signed[i + 1] = if mask >> i & 1 == 1 { -v } else { v };
            }
            let letters: Vec<Letter> = signed
                .windows(2)
                .map(|w| if w[0] <= w[1] { Letter::A } else { Letter::B })
                .collect();
            let y_power = IntPolynomial::monomial(1.into(), mask.count_ones() as usize);
            acc.add_term(ABWord::new(letters), y_power);
        }
    }
    Ok(acc)
}

/// ω applied to the ab-index equals the extended ab-index. Holds whenever the
/// poset admits an R-labeling.
pub fn omega_identity_check(poset: &GradedPoset) -> bool {
    ab_index(poset).omega() == ext_ab_index(poset)
}

/// b times the truncated extension equals the bottom-anchored chain sum, and
/// that sum has nonnegative coefficients. Errors on a rank-0 poset.
pub fn truncation_identity_check(poset: &GradedPoset) -> Result<bool> {
    let truncated = ext_ab_index_truncated(poset)?;
    let b = ABPolynomial::from_term(ABWord::new(vec![Letter::B]), IntPolynomial::one());
    let lhs = b.mul(&truncated);
    let rhs = bottom_anchored_chain_sum(poset);
    let nonneg = rhs
        .terms()
        .all(|(_, c)| c.coeffs().iter().all(|x| !x.is_negative()));
    Ok(lhs == rhs && nonneg)
}

/// Numerator and denominator of the coarse flag Hilbert-Poincare series at
/// the given values: (the truncated extended index at (y_val, 1, t_val),
/// (1 - t_val)^rank). No division is performed. Errors on a rank-0 poset.
pub fn coarse_flag_hp(
    poset: &GradedPoset,
    y_val: &IntPolynomial,
    t_val: &IntPolynomial,
) -> Result<(IntPolynomial, IntPolynomial)> {
    let truncated = ext_ab_index_truncated(poset)?;
    let numerator = truncated.evaluate(y_val, &IntPolynomial::one(), t_val);
    let denominator = IntPolynomial::one().sub(t_val).pow(poset.rank());
    Ok((numerator, denominator))
}

/// The series with y and t kept separate: numerator coefficient of t^k is a
/// polynomial in y, the denominator is (1 - t)^rank.
pub struct CoarseFlagSeries {
    /// Index k holds the y-polynomial coefficient of t^k in the numerator.
    pub numerator_t_coeffs: Vec<IntPolynomial>,
    pub denominator_power: usize,
}

pub fn coarse_flag_series(poset: &GradedPoset) -> Result<CoarseFlagSeries> {
    let truncated = ext_ab_index_truncated(poset)?;
    let mut numerator_t_coeffs = vec![IntPolynomial::zero(); poset.rank().max(1)];
    for (word, coeff) in truncated.terms() {
        let k = word.letters().iter().filter(|&&l| l == Letter::B).count();
        if numerator_t_coeffs.len() <= k {
            numerator_t_coeffs.resize(k + 1, IntPolynomial::zero());
        }
        numerator_t_coeffs[k] = numerator_t_coeffs[k].add(coeff);
    }
    while numerator_t_coeffs.len() > 1
        && numerator_t_coeffs
            .last()
            .is_some_and(IntPolynomial::is_zero)
    {
        numerator_t_coeffs.pop();
    }
    Ok(CoarseFlagSeries {
        numerator_t_coeffs,
        denominator_power: poset.rank(),
    })
}
