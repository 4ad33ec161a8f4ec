use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense univariate polynomial over the integers, coefficients in ascending
/// order of degree. Invariant: the last stored coefficient is nonzero, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            if let Some(d) = other.coeffs.get(i) {
                c += d;
            }
            out.push(c);
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        IntPolynomial { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient self / divisor when the division is exact over ℤ[x]; errors on
    /// a nonzero remainder or a coefficient division that leaves ℤ.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.coeffs.len();
        let m = divisor.coeffs.len();
        if n < m {
            return Err(Error::NonzeroRemainder);
        }
        let dlead = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let lead = std::mem::take(&mut rem[k + m - 1]);
            if lead.is_zero() {
                continue;
            }
            let (q, r) = lead.div_rem(dlead);
            if !r.is_zero() {
                return Err(Error::NonzeroRemainder);
            }
            for (j, d) in divisor.coeffs.iter().take(m - 1).enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonzeroRemainder);
        }
        Ok(Self::new(quot))
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitute `inner` for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::new(coeffs)
    }

    /// True when coeff(i) == coeff(center - i) for all i, reading absent
    /// coefficients as zero. The zero polynomial is palindromic about any
    /// center; a polynomial of degree above the center is never palindromic.
    pub fn is_palindromic(&self, center: usize) -> bool {
        match self.degree() {
            None => true,
            Some(d) if d > center => false,
            Some(_) => (0..=center / 2).all(|i| self.coeff(i) == self.coeff(center - i)),
        }
    }

    /// True when the coefficient sequence weakly rises and then weakly falls.
    /// Interior zero coefficients count, so x^2 + 1 is not unimodal.
    pub fn is_unimodal(&self) -> bool {
        let mut falling = false;
        for w in self.coeffs.windows(2) {
            if w[1] > w[0] {
                if falling {
                    return false;
                }
            } else if w[1] < w[0] {
                falling = true;
            }
        }
        true
    }

    /// Expand a polynomial palindromic about `center_degree` in the basis
    /// x^k (1+x)^(center_degree - 2k), 0 <= k <= center_degree/2, by repeated
    /// elimination of the lowest surviving coefficient.
    pub fn gamma_vector(&self, center_degree: usize) -> Result<GammaVector> {
        if !self.is_palindromic(center_degree) {
            return Err(Error::NotPalindromic {
                center: center_degree,
            });
        }
        let d = center_degree;
        let mut gammas = Vec::with_capacity(d / 2 + 1);
        let mut residual = self.clone();
        for k in 0..=d / 2 {
            let g = residual.coeff(k);
            if !g.is_zero() {
                let term = Self::monomial(g.clone(), k).mul(&one_plus_x_pow(d - 2 * k));
                residual = residual.sub(&term);
            }
            gammas.push(g);
        }
        debug_assert!(residual.is_zero());
        Ok(GammaVector {
            center_degree: d,
            gammas,
        })
    }

    /// Exact test for "every complex root is real", via a Sturm chain of the
    /// squarefree part: the number of distinct real roots must equal the
    /// squarefree degree.
    pub fn real_roots_diagnostic(&self) -> bool {
        let Some(d) = self.degree() else { return true };
        if d <= 1 {
            return true;
        }
        let pp = self.strip_positive_content();
        let g = poly_gcd(&pp, &pp.derivative());
        let s = pp.exact_div(&g).expect("gcd divides its argument");
        let sd = s.degree().unwrap();
        if sd <= 1 {
            return true;
        }
        let mut chain = vec![s.clone(), s.derivative()];
        loop {
            let last = &chain[chain.len() - 1];
            if last.degree().is_none_or(|dg| dg == 0) {
                break;
            }
            let r = chain[chain.len() - 2].positive_rem(last);
            if r.is_zero() {
                debug_assert!(false, "squarefree Sturm chain hit a zero remainder");
                break;
            }
            chain.push(r.neg().strip_positive_content());
        }
        let variations = |at_neg_inf: bool| -> isize {
            let signs: Vec<bool> = chain
                .iter()
                .map(|p| {
                    let neg = p.leading_coeff().unwrap().is_negative();
                    neg ^ (at_neg_inf && p.degree().unwrap() % 2 == 1)
                })
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count() as isize
        };
        variations(true) - variations(false) == sd as isize
    }

    /// Remainder of self modulo b, correct up to a positive constant factor.
    /// Each reduction step scales by |lc(b)|, which keeps every coefficient in
    /// ℤ without disturbing the sign data Sturm chains depend on.
    fn positive_rem(&self, b: &Self) -> Self {
        let m = b.coeffs.len();
        let lc = b.leading_coeff().expect("nonzero divisor").clone();
        let lc_abs = lc.abs();
        let flip = lc.is_negative();
        let mut r = self.clone();
        while !r.is_zero() && r.coeffs.len() >= m {
            let shift = r.coeffs.len() - m;
            let lead = r.leading_coeff().unwrap().clone();
            let q = if flip { -lead } else { lead };
            r = r.scale(&lc_abs).sub(&b.mul(&Self::monomial(q, shift)));
        }
        r
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divide out the (positive) content, keeping the sign of the polynomial.
    fn strip_positive_content(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    fn primitive_positive(&self) -> Self {
        let p = self.strip_positive_content();
        if p.leading_coeff().is_some_and(|c| c.is_negative()) {
            p.neg()
        } else {
            p
        }
    }

    pub fn to_string_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mag = c.magnitude();
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            if i > 0 {
                out.push_str(var);
                if i > 1 {
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }
}

/// gcd over ℤ[x] via the primitive remainder sequence; the result is primitive
/// with positive leading coefficient (or zero if both inputs are zero).
fn poly_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let mut a = a.primitive_positive();
    let mut b = b.primitive_positive();
    if a.coeffs.len() < b.coeffs.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.positive_rem(&b).primitive_positive();
        a = b;
        b = r;
    }
    a
}

/// (1 + x)^k by the multiplicative binomial recurrence.
pub fn one_plus_x_pow(k: usize) -> IntPolynomial {
    let mut coeffs = Vec::with_capacity(k + 1);
    let mut c = BigInt::one();
    coeffs.push(c.clone());
    for i in 1..=k {
        c = c * BigInt::from(k - i + 1) / BigInt::from(i);
        coeffs.push(c.clone());
    }
    IntPolynomial { coeffs }
}

/// Coefficients of a palindromic polynomial in the gamma basis
/// x^k (1+x)^(center_degree - 2k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GammaJson", into = "GammaJson")]
pub struct GammaVector {
    pub center_degree: usize,
    pub gammas: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct GammaJson {
    center_degree: usize,
    gammas: Vec<String>,
}

impl From<GammaVector> for GammaJson {
    fn from(g: GammaVector) -> Self {
        GammaJson {
            center_degree: g.center_degree,
            gammas: g.gammas.iter().map(|c| c.to_str_radix(10)).collect(),
        }
    }
}

impl TryFrom<GammaJson> for GammaVector {
    type Error = String;
    fn try_from(raw: GammaJson) -> std::result::Result<Self, String> {
        let mut gammas = Vec::with_capacity(raw.gammas.len());
        for s in &raw.gammas {
            let c: BigInt = s
                .parse()
                .map_err(|_| format!("gamma entry {s:?} is not a decimal integer"))?;
            gammas.push(c);
        }
        Ok(GammaVector {
            center_degree: raw.center_degree,
            gammas,
        })
    }
}

impl GammaVector {
    pub fn reconstruct(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::zero();
        for (k, g) in self.gammas.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let term = IntPolynomial::monomial(g.clone(), k)
                .mul(&one_plus_x_pow(self.center_degree - 2 * k));
            acc = acc.add(&term);
        }
        acc
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gammas.iter().all(|g| !g.is_negative())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with_var("x"))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self)
    }
}

impl std::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::mul(self, rhs)
    }
}

impl std::ops::Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::neg(self)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    coeffs: Vec<String>,
}

impl From<IntPolynomial> for PolyJson {
    fn from(p: IntPolynomial) -> Self {
        PolyJson {
            coeffs: p.coeffs.iter().map(|c| c.to_str_radix(10)).collect(),
        }
    }
}

impl TryFrom<PolyJson> for IntPolynomial {
    type Error = String;
    fn try_from(raw: PolyJson) -> std::result::Result<Self, String> {
        let mut coeffs = Vec::with_capacity(raw.coeffs.len());
        for s in &raw.coeffs {
            let c: BigInt = s
                .parse()
                .map_err(|_| format!("coefficient {s:?} is not a decimal integer"))?;
            coeffs.push(c);
        }
        Ok(IntPolynomial::new(coeffs))
    }
}
