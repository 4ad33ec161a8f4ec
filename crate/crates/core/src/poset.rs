use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Row-major reachability bitmap: bit (i, j) means i <= j.
struct BitMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64).max(1);
        BitMatrix {
            words_per_row,
            bits: vec![0; words_per_row * n],
        }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    fn or_row_into(&mut self, dst: usize, src: usize) {
        let w = self.words_per_row;
        for k in 0..w {
            let v = self.bits[src * w + k];
            self.bits[dst * w + k] |= v;
        }
    }
}

/// Finite graded poset with a unique minimum and maximum, presented by its
/// cover relations. Construction validates boundedness, acyclicity, and that
/// every cover raises rank by exactly one. Möbius values and interval
/// polynomials are memoized per poset.
pub struct GradedPoset {
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    rank_of: Vec<usize>,
    bottom: usize,
    top: usize,
    rank: usize,
    leq: OnceLock<BitMatrix>,
    mobius_memo: Mutex<HashMap<(usize, usize), BigInt>>,
    poincare_memo: Mutex<HashMap<(usize, usize), IntPolynomial>>,
    reduced_char_memo: Mutex<HashMap<(usize, usize), IntPolynomial>>,
}

impl GradedPoset {
    /// Elements named by their index.
    pub fn from_covers(n: usize, covers: Vec<(usize, usize)>) -> Result<Self> {
        Self::from_named_covers((0..n).map(|i| i.to_string()).collect(), covers)
    }

    pub fn from_named_covers(names: Vec<String>, mut covers: Vec<(usize, usize)>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MultipleMinima { count: 0 });
        }
        {
            let mut seen = std::collections::HashSet::with_capacity(n);
            for name in &names {
                if !seen.insert(name.as_str()) {
                    return Err(Error::Schema(format!("duplicate element name {name:?}")));
                }
            }
        }
        covers.sort();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for w in covers.windows(2) {
            if w[0] == w[1] {
                return Err(Error::BadCover {
                    lo: names[w[0].0].clone(),
                    hi: names[w[0].1].clone(),
                });
            }
        }
        for &(lo, hi) in &covers {
            if lo >= n || hi >= n || lo == hi {
                return Err(Error::BadCover {
                    lo: names.get(lo).cloned().unwrap_or_else(|| lo.to_string()),
                    hi: names.get(hi).cloned().unwrap_or_else(|| hi.to_string()),
                });
            }
            upper[lo].push(hi);
            lower[hi].push(lo);
        }

        // Kahn's algorithm: detects cycles and gives a topological order.
        let mut indegree: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let minima = queue.len();
        if minima != 1 {
            return Err(Error::MultipleMinima { count: minima });
        }
        let bottom = queue[0];
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop() {
            topo.push(v);
            for &u in &upper[v] {
                indegree[u] -= 1;
                if indegree[u] == 0 {
                    queue.push(u);
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&v| indegree[v] > 0).unwrap();
            return Err(Error::CycleDetected {
                element: names[stuck].clone(),
            });
        }

        let maxima = (0..n).filter(|&v| upper[v].is_empty()).count();
        if maxima != 1 {
            return Err(Error::MultipleMaxima { count: maxima });
        }
        let top = (0..n).find(|&v| upper[v].is_empty()).unwrap();

        // Longest path from the bottom; with every element above the unique
        // minimum, this is total and a cover that skips a rank is the graded
        // condition's only failure mode.
        let mut rank_of = vec![0usize; n];
        for &v in &topo {
            for &u in &upper[v] {
                rank_of[u] = rank_of[u].max(rank_of[v] + 1);
            }
        }
        for &(lo, hi) in &covers {
            if rank_of[hi] != rank_of[lo] + 1 {
                return Err(Error::NonGradedCover {
                    lo: names[lo].clone(),
                    hi: names[hi].clone(),
                    lo_rank: rank_of[lo],
                    hi_rank: rank_of[hi],
                });
            }
        }

        for adj in upper.iter_mut().chain(lower.iter_mut()) {
            adj.sort_unstable();
        }
        let rank = rank_of[top];
        Ok(GradedPoset {
            names,
            covers,
            upper,
            lower,
            rank_of,
            bottom,
            top,
            rank,
            leq: OnceLock::new(),
            mobius_memo: Mutex::new(HashMap::new()),
            poincare_memo: Mutex::new(HashMap::new()),
            reduced_char_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn n_elements(&self) -> usize {
        self.names.len()
    }

    /// Rank of the poset: the common length of all maximal chains.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rank_of(&self, e: usize) -> usize {
        self.rank_of[e]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Cover pairs (lower, upper), sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, e: usize) -> &[usize] {
        &self.upper[e]
    }

    pub fn lower_covers(&self, e: usize) -> &[usize] {
        &self.lower[e]
    }

    /// Order relation a <= b. The reachability bitmap is built on first use;
    /// cover-walk operations (maximal chains, descent expansions) never
    /// trigger it.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        if self.rank_of[a] >= self.rank_of[b] {
            return false;
        }
        self.leq_matrix().get(a, b)
    }

    fn leq_matrix(&self) -> &BitMatrix {
        self.leq.get_or_init(|| {
            let n = self.names.len();
            let mut m = BitMatrix::new(n);
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&u| std::cmp::Reverse(self.rank_of[u]));
            for u in order {
                m.set(u, u);
                for &v in &self.upper[u] {
                    m.or_row_into(u, v);
                }
            }
            m
        })
    }

    /// Elements of the closed interval [f, g], sorted by rank then index.
    fn interval_elements(&self, f: usize, g: usize) -> Vec<usize> {
        let mut elems: Vec<usize> = (0..self.names.len())
            .filter(|&h| self.leq(f, h) && self.leq(h, g))
            .collect();
        elems.sort_by_key(|&h| self.rank_of[h]);
        elems
    }

    /// Möbius function of the pair (f, g); errors unless f <= g.
    pub fn mobius(&self, f: usize, g: usize) -> Result<BigInt> {
        if !self.leq(f, g) {
            return Err(Error::NotComparable {
                f: self.names[f].clone(),
                g: self.names[g].clone(),
            });
        }
        if let Some(v) = self.mobius_memo.lock().unwrap().get(&(f, g)) {
            return Ok(v.clone());
        }
        let elems = self.interval_elements(f, g);
        let mut local: Vec<BigInt> = Vec::with_capacity(elems.len());
        for (i, &h) in elems.iter().enumerate() {
            let mu = if h == f {
                BigInt::one()
            } else {
                let mut s = BigInt::zero();
                for (j, &k) in elems.iter().enumerate().take(i) {
                    if self.leq(k, h) {
                        s += &local[j];
                    }
                }
                -s
            };
            local.push(mu);
        }
        let out = local[elems.iter().position(|&h| h == g).unwrap()].clone();
        let mut memo = self.mobius_memo.lock().unwrap();
        for (i, &h) in elems.iter().enumerate() {
            memo.entry((f, h)).or_insert_with(|| local[i].clone());
        }
        Ok(out)
    }

    /// Poincaré polynomial of the interval [u, v]:
    /// sum over h in [u, v] of mu(u, h) (-q)^(rank h - rank u).
    pub fn interval_poincare(&self, u: usize, v: usize) -> Result<IntPolynomial> {
        if !self.leq(u, v) {
            return Err(Error::NotComparable {
                f: self.names[u].clone(),
                g: self.names[v].clone(),
            });
        }
        if let Some(p) = self.poincare_memo.lock().unwrap().get(&(u, v)) {
            return Ok(p.clone());
        }
        let mut coeffs = vec![BigInt::zero(); self.rank_of[v] - self.rank_of[u] + 1];
        for h in self.interval_elements(u, v) {
            let mu = self.mobius(u, h)?;
            let r = self.rank_of[h] - self.rank_of[u];
            if r.is_multiple_of(2) {
                coeffs[r] += mu;
            } else {
                coeffs[r] -= mu;
            }
        }
        let p = IntPolynomial::new(coeffs);
        self.poincare_memo.lock().unwrap().insert((u, v), p.clone());
        Ok(p)
    }

    /// Characteristic polynomial of [u, v]:
    /// sum over h of mu(u, h) q^(rank v - rank h).
    pub fn interval_characteristic(&self, u: usize, v: usize) -> Result<IntPolynomial> {
        if !self.leq(u, v) {
            return Err(Error::NotComparable {
                f: self.names[u].clone(),
                g: self.names[v].clone(),
            });
        }
        let span = self.rank_of[v] - self.rank_of[u];
        let mut coeffs = vec![BigInt::zero(); span + 1];
        for h in self.interval_elements(u, v) {
            let mu = self.mobius(u, h)?;
            coeffs[span - (self.rank_of[h] - self.rank_of[u])] += mu;
        }
        Ok(IntPolynomial::new(coeffs))
    }

    /// Reduced characteristic polynomial of [u, v]: the characteristic
    /// polynomial divided by (q - 1), exact for any interval of rank >= 1.
    pub fn interval_reduced_characteristic(&self, u: usize, v: usize) -> Result<IntPolynomial> {
        if let Some(p) = self.reduced_char_memo.lock().unwrap().get(&(u, v)) {
            return Ok(p.clone());
        }
        let chi = self.interval_characteristic(u, v)?;
        let p = chi
            .exact_div(&IntPolynomial::from_i64(&[-1, 1]))
            .map_err(|_| {
                Error::Internal(format!(
                    "characteristic polynomial of [{}, {}] is not divisible by q - 1",
                    self.names[u], self.names[v]
                ))
            })?;
        self.reduced_char_memo
            .lock()
            .unwrap()
            .insert((u, v), p.clone());
        Ok(p)
    }

    pub fn poincare_polynomial(&self) -> IntPolynomial {
        self.interval_poincare(self.bottom, self.top)
            .expect("bottom <= top")
    }

    pub fn characteristic_polynomial(&self) -> IntPolynomial {
        self.interval_characteristic(self.bottom, self.top)
            .expect("bottom <= top")
    }

    /// Errors on a rank-0 poset, where q - 1 does not divide.
    pub fn reduced_characteristic_polynomial(&self) -> Result<IntPolynomial> {
        if self.rank == 0 {
            return Err(Error::NonzeroRemainder);
        }
        self.interval_reduced_characteristic(self.bottom, self.top)
    }

    /// The closed interval [f, g] as a poset of its own. Names carry over.
    pub fn interval(&self, f: usize, g: usize) -> Result<GradedPoset> {
        if !self.leq(f, g) {
            return Err(Error::NotComparable {
                f: self.names[f].clone(),
                g: self.names[g].clone(),
            });
        }
        let elems = self.interval_elements(f, g);
        let mut index = HashMap::with_capacity(elems.len());
        for (i, &h) in elems.iter().enumerate() {
            index.insert(h, i);
        }
        let names = elems.iter().map(|&h| self.names[h].clone()).collect();
        let covers = self
            .covers
            .iter()
            .filter_map(|&(lo, hi)| Some((*index.get(&lo)?, *index.get(&hi)?)))
            .collect();
        GradedPoset::from_named_covers(names, covers)
    }

    /// All elements strictly below e, ascending.
    fn strictly_below(&self, e: usize) -> Vec<usize> {
        (0..self.names.len())
            .filter(|&f| f != e && self.leq(f, e))
            .collect()
    }

    /// Stream every chain that ends at the maximum; with `require_bottom`,
    /// only chains whose least element is the minimum. The singleton {top}
    /// is included (it is bottom-anchored only in a rank-0 poset).
    pub fn chains_to_top(&self, require_bottom: bool) -> ChainsToTop<'_> {
        ChainsToTop {
            poset: self,
            require_bottom,
            current: Vec::new(),
            frames: Vec::new(),
            started: false,
        }
    }

    /// Stream every maximal chain (bottom to top through covers).
    pub fn maximal_chains(&self) -> MaximalChains<'_> {
        MaximalChains {
            poset: self,
            current: Vec::new(),
            pos_stack: Vec::new(),
            started: false,
        }
    }

    /// Number of maximal chains, by dynamic programming over covers; serves
    /// as an independent check on the chain iterators.
    pub fn maximal_chain_count(&self) -> BigInt {
        let mut count = vec![BigInt::zero(); self.names.len()];
        count[self.bottom] = BigInt::one();
        let mut order: Vec<usize> = (0..self.names.len()).collect();
        order.sort_by_key(|&v| self.rank_of[v]);
        for v in order {
            if count[v].is_zero() {
                continue;
            }
            let c = count[v].clone();
            for &u in &self.upper[v] {
                count[u] += &c;
            }
        }
        count[self.top].clone()
    }

    fn validate_chain_elements(&self, elements: &[usize]) -> Result<()> {
        if elements.is_empty() {
            return Err(Error::InvalidChain("chain is empty".into()));
        }
        if let Some(&e) = elements.iter().find(|&&e| e >= self.names.len()) {
            return Err(Error::InvalidChain(format!(
                "element index {e} out of range"
            )));
        }
        if *elements.last().unwrap() != self.top {
            return Err(Error::InvalidChain(format!(
                "chain must end at the maximum {:?}",
                self.names[self.top]
            )));
        }
        for w in elements.windows(2) {
            if w[0] == w[1] || !self.leq(w[0], w[1]) {
                return Err(Error::InvalidChain(format!(
                    "{:?} is not strictly below {:?}",
                    self.names[w[0]], self.names[w[1]]
                )));
            }
        }
        Ok(())
    }

    /// Product over consecutive chain intervals of their Poincaré polynomials.
    pub fn chain_poincare(&self, chain: &Chain) -> Result<IntPolynomial> {
        self.validate_chain_elements(&chain.elements)?;
        let mut acc = IntPolynomial::one();
        for w in chain.elements.windows(2) {
            acc = acc.mul(&self.interval_poincare(w[0], w[1])?);
        }
        Ok(acc)
    }

    /// Product over consecutive chain intervals of their reduced
    /// characteristic polynomials.
    pub fn chain_reduced_characteristic(&self, chain: &Chain) -> Result<IntPolynomial> {
        self.validate_chain_elements(&chain.elements)?;
        let mut acc = IntPolynomial::one();
        for w in chain.elements.windows(2) {
            acc = acc.mul(&self.interval_reduced_characteristic(w[0], w[1])?);
        }
        Ok(acc)
    }
}

impl PartialEq for GradedPoset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.covers == other.covers
    }
}

impl Eq for GradedPoset {}

impl fmt::Debug for GradedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedPoset(elements: {}, rank: {}, covers: {})",
            self.names.len(),
            self.rank,
            self.covers.len()
        )
    }
}

/// Strictly increasing sequence of elements ending at the maximum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    elements: Vec<usize>,
}

impl Chain {
    pub fn new(poset: &GradedPoset, elements: Vec<usize>) -> Result<Chain> {
        poset.validate_chain_elements(&elements)?;
        Ok(Chain { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

struct Frame {
    cands: Vec<usize>,
    pos: usize,
}

pub struct ChainsToTop<'p> {
    poset: &'p GradedPoset,
    require_bottom: bool,
    current: Vec<usize>,
    frames: Vec<Frame>,
    started: bool,
}

impl ChainsToTop<'_> {
    fn emit(&self) -> Chain {
        let mut elements = self.current.clone();
        elements.reverse();
        Chain { elements }
    }
}

impl Iterator for ChainsToTop<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        if !self.started {
            self.started = true;
            let top = self.poset.top;
            self.current.push(top);
            self.frames.push(Frame {
                cands: self.poset.strictly_below(top),
                pos: 0,
            });
            if !self.require_bottom || top == self.poset.bottom {
                return Some(self.emit());
            }
        }
        loop {
            let frame = self.frames.last_mut()?;
            if frame.pos < frame.cands.len() {
                let e = frame.cands[frame.pos];
                frame.pos += 1;
                self.current.push(e);
                self.frames.push(Frame {
                    cands: self.poset.strictly_below(e),
                    pos: 0,
                });
                if !self.require_bottom || e == self.poset.bottom {
                    return Some(self.emit());
                }
            } else {
                self.frames.pop();
                self.current.pop();
            }
        }
    }
}

pub struct MaximalChains<'p> {
    poset: &'p GradedPoset,
    current: Vec<usize>,
    pos_stack: Vec<usize>,
    started: bool,
}

impl Iterator for MaximalChains<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        if !self.started {
            self.started = true;
            self.current.push(self.poset.bottom);
            self.pos_stack.push(0);
            if self.poset.bottom == self.poset.top {
                return Some(Chain {
                    elements: self.current.clone(),
                });
            }
        }
        loop {
            if self.pos_stack.is_empty() {
                return None;
            }
            let depth = self.pos_stack.len() - 1;
            let u = self.current[depth];
            let pos = self.pos_stack[depth];
            let ups = &self.poset.upper[u];
            if pos < ups.len() {
                self.pos_stack[depth] += 1;
                let v = ups[pos];
                self.current.push(v);
                self.pos_stack.push(0);
                if v == self.poset.top {
                    return Some(Chain {
                        elements: self.current.clone(),
                    });
                }
            } else {
                self.pos_stack.pop();
                self.current.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Diamond: bottom, two atoms, top.
    fn diamond() -> GradedPoset {
        GradedPoset::from_covers(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Bottom, three atoms, top; the face of rank-2 partition structure.
    fn three_atom() -> GradedPoset {
        GradedPoset::from_covers(5, vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    fn chain_poset(len: usize) -> GradedPoset {
        GradedPoset::from_covers(len + 1, (0..len).map(|i| (i, i + 1)).collect()).unwrap()
    }

    /// Möbius by brute force: alternating sum over chain counts from x to y.
    fn mobius_oracle(p: &GradedPoset, x: usize, y: usize) -> BigInt {
        fn chains_between(p: &GradedPoset, x: usize, y: usize) -> Vec<usize> {
            // counts[k] = number of chains x = z0 < ... < zk = y
            if x == y {
                return vec![1];
            }
            let mut counts = Vec::new();
            let mids: Vec<usize> = (0..p.n_elements())
                .filter(|&m| m != x && p.leq(x, m) && p.leq(m, y))
                .collect();
            // chains by final step: z_{k-1} ranges over [x, y) with z_{k-1} < y
            for &m in &mids {
                if m == y {
                    continue;
                }
                let sub = chains_between(p, x, m);
                for (k, c) in sub.iter().enumerate() {
                    if counts.len() <= k + 1 {
                        counts.resize(k + 2, 0);
                    }
                    counts[k + 1] += c;
                }
            }
            if counts.is_empty() {
                counts.resize(2, 0);
            }
            counts[1] += 1; // the chain x < y directly... only if x < y, which holds here
            counts
        }
        let counts = chains_between(p, x, y);
        let mut mu = BigInt::zero();
        for (k, c) in counts.iter().enumerate() {
            let term = BigInt::from(*c as i64);
            if k % 2 == 0 {
                mu += term;
            } else {
                mu -= term;
            }
        }
        mu
    }

    #[test]
    fn construction_validates() {
        assert!(matches!(
            GradedPoset::from_covers(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap_err(),
            Error::NonGradedCover {
                lo_rank: 0,
                hi_rank: 2,
                ..
            }
        ));
        assert!(matches!(
            GradedPoset::from_covers(2, vec![(0, 1), (1, 0)]).unwrap_err(),
            Error::MultipleMinima { count: 0 }
        ));
        assert!(matches!(
            GradedPoset::from_covers(4, vec![(0, 1), (1, 2), (2, 1), (2, 3)]).unwrap_err(),
            Error::CycleDetected { .. }
        ));
        assert!(matches!(
            GradedPoset::from_covers(3, vec![(0, 2), (1, 2)]).unwrap_err(),
            Error::MultipleMinima { count: 2 }
        ));
        assert!(matches!(
            GradedPoset::from_covers(3, vec![(0, 1), (0, 2)]).unwrap_err(),
            Error::MultipleMaxima { count: 2 }
        ));
        assert!(matches!(
            GradedPoset::from_covers(2, vec![(0, 1), (0, 1)]).unwrap_err(),
            Error::BadCover { .. }
        ));
        assert!(matches!(
            GradedPoset::from_covers(1, vec![(0, 0)]).unwrap_err(),
            Error::BadCover { .. }
        ));
    }

    #[test]
    fn rank_zero_poset() {
        let p = GradedPoset::from_covers(1, vec![]).unwrap();
        assert_eq!(p.rank(), 0);
        assert_eq!(p.bottom(), p.top());
        assert_eq!(p.poincare_polynomial(), IntPolynomial::one());
        assert_eq!(p.characteristic_polynomial(), IntPolynomial::one());
        assert!(p.reduced_characteristic_polynomial().is_err());
        let chains: Vec<Chain> = p.chains_to_top(false).collect();
        assert_eq!(chains.len(), 1);
        assert_eq!(p.maximal_chains().count(), 1);
        assert_eq!(p.maximal_chain_count(), BigInt::one());
    }

    #[test]
    fn diamond_polynomials() {
        let p = diamond();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.mobius(0, 3).unwrap(), BigInt::one());
        assert_eq!(p.poincare_polynomial(), IntPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(
            p.characteristic_polynomial(),
            IntPolynomial::from_i64(&[1, -2, 1])
        );
        assert_eq!(
            p.reduced_characteristic_polynomial().unwrap(),
            IntPolynomial::from_i64(&[-1, 1])
        );
    }

    #[test]
    fn three_atom_polynomials() {
        let p = three_atom();
        assert_eq!(p.mobius(0, 4).unwrap(), BigInt::from(2));
        assert_eq!(p.poincare_polynomial(), IntPolynomial::from_i64(&[1, 3, 2]));
        assert_eq!(
            p.characteristic_polynomial(),
            IntPolynomial::from_i64(&[2, -3, 1])
        );
        assert_eq!(
            p.reduced_characteristic_polynomial().unwrap(),
            IntPolynomial::from_i64(&[-2, 1])
        );
    }

    #[test]
    fn chain_poset_has_trivial_mobius() {
        let p = chain_poset(3);
        assert_eq!(p.mobius(0, 1).unwrap(), BigInt::from(-1));
        assert_eq!(p.mobius(0, 2).unwrap(), BigInt::zero());
        assert_eq!(p.mobius(0, 3).unwrap(), BigInt::zero());
        assert_eq!(
            p.characteristic_polynomial(),
            IntPolynomial::from_i64(&[0, 0, -1, 1])
        );
        assert_eq!(
            p.reduced_characteristic_polynomial().unwrap(),
            IntPolynomial::from_i64(&[0, 0, 1])
        );
    }

    #[test]
    fn mobius_matches_alternating_chain_count() {
        for p in [diamond(), three_atom(), chain_poset(4)] {
            for x in 0..p.n_elements() {
                for y in 0..p.n_elements() {
                    if p.leq(x, y) {
                        assert_eq!(p.mobius(x, y).unwrap(), mobius_oracle(&p, x, y));
                    } else {
                        assert!(p.mobius(x, y).is_err());
                    }
                }
            }
        }
    }

    #[test]
    fn mobius_sums_to_zero_over_proper_intervals() {
        for p in [diamond(), three_atom(), chain_poset(4)] {
            for x in 0..p.n_elements() {
                for y in 0..p.n_elements() {
                    if x != y && p.leq(x, y) {
                        let mut s = BigInt::zero();
                        for h in 0..p.n_elements() {
                            if p.leq(x, h) && p.leq(h, y) {
                                s += p.mobius(x, h).unwrap();
                            }
                        }
                        assert!(s.is_zero(), "interval [{x}, {y}] sums to {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn leq_is_a_partial_order() {
        let p = three_atom();
        for a in 0..p.n_elements() {
            assert!(p.leq(a, a));
            for b in 0..p.n_elements() {
                if a != b && p.leq(a, b) {
                    assert!(!p.leq(b, a));
                }
            }
        }
        assert!(!p.leq(1, 2));
        assert!(p.leq(0, 4));
    }

    #[test]
    fn chain_enumeration_counts() {
        let p = three_atom();
        let all: Vec<Chain> = p.chains_to_top(false).collect();
        assert_eq!(all.len(), 8);
        let anchored: Vec<Chain> = p.chains_to_top(true).collect();
        assert_eq!(anchored.len(), 4);
        for c in &anchored {
            assert_eq!(c.elements()[0], p.bottom());
        }
        // all chains end at the top
        for c in &all {
            assert_eq!(*c.elements().last().unwrap(), p.top());
        }
        // deterministic
        let again: Vec<Chain> = p.chains_to_top(false).collect();
        assert_eq!(all, again);
    }

    #[test]
    fn maximal_chain_enumeration() {
        let p = diamond();
        let chains: Vec<Chain> = p.maximal_chains().collect();
        assert_eq!(chains.len(), 2);
        assert_eq!(chains[0].elements(), &[0, 1, 3]);
        assert_eq!(chains[1].elements(), &[0, 2, 3]);
        assert_eq!(p.maximal_chain_count(), BigInt::from(2));

        let p = three_atom();
        assert_eq!(p.maximal_chains().count(), 3);
        assert_eq!(p.maximal_chain_count(), BigInt::from(3));
    }

    #[test]
    fn chain_products() {
        let p = diamond();
        let c = Chain::new(&p, vec![0, 1, 3]).unwrap();
        // both cover intervals have Poincaré polynomial 1 + q
        assert_eq!(
            p.chain_poincare(&c).unwrap(),
            IntPolynomial::from_i64(&[1, 2, 1])
        );
        assert_eq!(
            p.chain_reduced_characteristic(&c).unwrap(),
            IntPolynomial::one()
        );
        let c = Chain::new(&p, vec![0, 3]).unwrap();
        assert_eq!(
            p.chain_poincare(&c).unwrap(),
            IntPolynomial::from_i64(&[1, 2, 1])
        );
        assert_eq!(
            p.chain_reduced_characteristic(&c).unwrap(),
            IntPolynomial::from_i64(&[-1, 1])
        );
        let c = Chain::new(&p, vec![3]).unwrap();
        assert_eq!(p.chain_poincare(&c).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn chain_validation() {
        let p = diamond();
        assert!(Chain::new(&p, vec![0, 1]).is_err()); // does not end at top
        assert!(Chain::new(&p, vec![1, 2, 3]).is_err()); // atoms incomparable
        assert!(Chain::new(&p, vec![]).is_err());
        assert!(Chain::new(&p, vec![0, 0, 3]).is_err());
        assert!(Chain::new(&p, vec![0, 1, 3]).is_ok());
    }

    #[test]
    fn interval_extraction() {
        let p = three_atom();
        let i = p.interval(1, 4).unwrap();
        assert_eq!(i.rank(), 1);
        assert_eq!(i.n_elements(), 2);
        assert_eq!(i.names(), &["1".to_string(), "4".to_string()]);
        let whole = p.interval(0, 4).unwrap();
        assert_eq!(whole.n_elements(), 5);
        assert!(p.interval(1, 2).is_err());
    }
}
