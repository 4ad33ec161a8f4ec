use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    A,
    B,
}

/// Word in the noncommuting letters a, b. Ordered shortlex: by length first,
/// then lexicographically with a < b.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ABWord(Vec<Letter>);

impl ABWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        ABWord(letters)
    }

    pub fn empty() -> Self {
        ABWord(Vec::new())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                'a' => letters.push(Letter::A),
                'b' => letters.push(Letter::B),
                _ => {
                    return Err(Error::Schema(format!(
                        "word {s:?} contains {ch:?}; only 'a' and 'b' are allowed"
                    )))
                }
            }
        }
        Ok(ABWord(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        ABWord(letters)
    }

    /// The word with its first letter removed; errors on the empty word.
    pub fn strip_first(&self) -> Result<Self> {
        if self.0.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(ABWord(self.0[1..].to_vec()))
    }
}

impl Ord for ABWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ABWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ABWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::A => "a",
                Letter::B => "b",
            })?;
        }
        Ok(())
    }
}

/// Element of ℤ[y]⟨a,b⟩: a finite sum of ab-words with polynomial coefficients
/// in a central variable y. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<TermJson>", into = "Vec<TermJson>")]
pub struct ABPolynomial {
    terms: BTreeMap<ABWord, IntPolynomial>,
}

impl ABPolynomial {
    pub fn zero() -> Self {
        ABPolynomial {
            terms: BTreeMap::new(),
        }
    }

    /// The empty word with coefficient 1.
    pub fn one() -> Self {
        Self::from_term(ABWord::empty(), IntPolynomial::one())
    }

    pub fn from_term(word: ABWord, coeff: IntPolynomial) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ABWord, &IntPolynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &ABWord) -> IntPolynomial {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(IntPolynomial::zero)
    }

    pub fn add_term(&mut self, word: ABWord, coeff: IntPolynomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ABPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    /// Concatenation product; y-coefficients commute, words do not.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scalar_mul(&self, c: &IntPolynomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ABPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Common length of all words if the polynomial is homogeneous (the zero
    /// polynomial is homogeneous of every length; reported as None).
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let first = it.next()?.len();
        it.all(|w| w.len() == first).then_some(first)
    }

    /// Delete the leading letter of every word. Errors if any term is the
    /// empty word.
    pub fn iota(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.strip_first()?, c.clone());
        }
        Ok(out)
    }

    /// Substitute a polynomial for the central variable y in every
    /// coefficient.
    pub fn substitute_y(&self, value: &IntPolynomial) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.compose(value));
        }
        out
    }

    /// Evaluate with y -> y_val, a -> a_val, b -> b_val, all commuting.
    pub fn evaluate(
        &self,
        y_val: &IntPolynomial,
        a_val: &IntPolynomial,
        b_val: &IntPolynomial,
    ) -> IntPolynomial {
        let mut acc = IntPolynomial::zero();
        for (w, c) in &self.terms {
            let mut term = c.compose(y_val);
            for l in w.letters() {
                if term.is_zero() {
                    break;
                }
                term = term.mul(match l {
                    Letter::A => a_val,
                    Letter::B => b_val,
                });
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// The substitution ω: in each word, first replace every maximal-run
    /// leftmost-first occurrence of ab by ab + y·ba + y·ab + y²·ba, then send
    /// each remaining letter a -> a + y·b and b -> b + y·a. Both phases act
    /// simultaneously on the original word; replacement output is never
    /// rescanned.
    pub fn omega(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut factor = Self::one();
            let letters = w.letters();
            let mut i = 0;
            while i < letters.len() {
                let seg = if i + 1 < letters.len()
                    && letters[i] == Letter::A
                    && letters[i + 1] == Letter::B
                {
                    i += 2;
                    omega_block_factor()
                } else {
                    let l = letters[i];
                    i += 1;
                    omega_letter_factor(l)
                };
                factor = factor.mul(&seg);
            }
            out = out.add(&factor.scalar_mul(c));
        }
        out
    }
}

/// ab -> (1+y)·ab + (y+y²)·ba
fn omega_block_factor() -> ABPolynomial {
    let mut f = ABPolynomial::zero();
    f.add_term(
        ABWord::new(vec![Letter::A, Letter::B]),
        IntPolynomial::from_i64(&[1, 1]),
    );
    f.add_term(
        ABWord::new(vec![Letter::B, Letter::A]),
        IntPolynomial::from_i64(&[0, 1, 1]),
    );
    f
}

/// a -> a + y·b and b -> b + y·a
fn omega_letter_factor(l: Letter) -> ABPolynomial {
    let (keep, swap) = match l {
        Letter::A => (Letter::A, Letter::B),
        Letter::B => (Letter::B, Letter::A),
    };
    let mut f = ABPolynomial::zero();
    f.add_term(ABWord::new(vec![keep]), IntPolynomial::one());
    f.add_term(ABWord::new(vec![swap]), IntPolynomial::from_i64(&[0, 1]));
    f
}

/// Weight of a rank set: the product w_0 w_1 ... w_(n-1) with w_k = b when
/// k is in the set and w_k = a - b otherwise.
pub fn wt_weight(set: &BTreeSet<usize>, n: usize) -> Result<ABPolynomial> {
    if let Some(&bad) = set.iter().find(|&&k| k >= n) {
        return Err(Error::WeightIndexOutOfRange { index: bad, n });
    }
    let mut acc = ABPolynomial::one();
    for k in 0..n {
        let mut f = ABPolynomial::zero();
        if set.contains(&k) {
            f.add_term(ABWord::new(vec![Letter::B]), IntPolynomial::one());
        } else {
            f.add_term(ABWord::new(vec![Letter::A]), IntPolynomial::one());
            f.add_term(
                ABWord::new(vec![Letter::B]),
                IntPolynomial::constant((-1).into()),
            );
        }
        acc = acc.mul(&f);
    }
    Ok(acc)
}

impl fmt::Display for ABPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let multi = self.terms.len() > 1;
        let mut first = true;
        for (w, c) in &self.terms {
            let monomials = c.coeffs().iter().filter(|x| !x.is_zero()).count();
            let cs = c.to_string_with_var("y");
            let body = if w.is_empty() {
                if monomials > 1 && multi {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if c == &IntPolynomial::one() {
                w.to_string()
            } else if c.coeffs().len() == 1 && c.coeff(0) == (-1).into() {
                format!("-{w}")
            } else if monomials == 1 {
                format!("{cs}*{w}")
            } else {
                format!("({cs})*{w}")
            };
            if first {
                f.write_str(&body)?;
                first = false;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ABPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ABPolynomial({})", self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: String,
    coeff: IntPolynomial,
}

impl From<ABPolynomial> for Vec<TermJson> {
    fn from(p: ABPolynomial) -> Self {
        p.terms
            .iter()
            .map(|(w, c)| TermJson {
                word: w.to_string(),
                coeff: c.clone(),
            })
            .collect()
    }
}

impl TryFrom<Vec<TermJson>> for ABPolynomial {
    type Error = String;
    fn try_from(raw: Vec<TermJson>) -> std::result::Result<Self, String> {
        let mut p = ABPolynomial::zero();
        for t in raw {
            let w = ABWord::parse(&t.word).map_err(|e| e.to_string())?;
            p.add_term(w, t.coeff);
        }
        Ok(p)
    }
}
