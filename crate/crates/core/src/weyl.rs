//! The hyperoctahedral Weyl group `W` of type `C_n` acting on Laurent
//! polynomials in `α_1..α_n`: the alternator, the Weyl denominator and exact
//! division by it.
//!
//! A signed permutation `w = (σ, s)` acts on `Z^n` by `w(e_i) = s_i·e_{σ(i)}`
//! and on monomials by `α^e ↦ α^{w·e}`. Positive roots are `e_j ± e_i`
//! (`i < j`) and `2e_i`; the simple reflections are the sign change of the
//! first coordinate and the adjacent transpositions, so the dominant cone is
//! `0 ≤ k_1 ≤ … ≤ k_n` and `ρ = (1, 2, …, n)`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field_arith::Sign;
use crate::laurent::{LaurentPoly, Monomial};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<Sign>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<Sign>) -> Result<Self, Error> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: signs.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidConfig(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        Ok(Self { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![Sign::Plus; n],
        }
    }

    /// `α ↦ α^{-1}` coordinatewise; the longest element.
    pub fn longest(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![Sign::Minus; n],
        }
    }

    /// Sign change of coordinate `i` (zero-based).
    pub fn flip(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.signs[i] = Sign::Minus;
        w
    }

    /// Transposition of coordinates `i` and `j` (zero-based).
    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut w = Self::identity(n);
        w.perm.swap(i, j);
        w
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.rank(), rhs.rank());
        let perm = rhs.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = rhs
            .perm
            .iter()
            .zip(&rhs.signs)
            .map(|(&j, &s)| s * self.signs[j])
            .collect();
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![Sign::Plus; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// `w·e`.
    pub fn apply(&self, e: &[i32]) -> Vec<i32> {
        let mut out = vec![0; e.len()];
        for (i, &x) in e.iter().enumerate() {
            out[self.perm[i]] = self.signs[i].to_i64() as i32 * x;
        }
        out
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let n = self.rank();
        let mut count = 0;
        for root in positive_roots(n) {
            if !is_positive(&self.apply(&root)) {
                count += 1;
            }
        }
        count
    }

    /// `(−1)^{length}`, computed as the determinant of the signed permutation matrix.
    pub fn sign(&self) -> Sign {
        let mut s = self.signs.iter().fold(Sign::Plus, |acc, &x| acc * x);
        let n = self.rank();
        for i in 0..n {
            for j in i + 1..n {
                if self.perm[i] > self.perm[j] {
                    s = -s;
                }
            }
        }
        s
    }
}

fn is_positive(root: &[i32]) -> bool {
    root.iter().rev().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Positive roots `e_j − e_i`, `e_j + e_i` (`i < j`) and `2e_i`, as integer vectors.
pub fn positive_roots(n: usize) -> Vec<Vec<i32>> {
    let mut roots = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..j {
            let mut a = vec![0; n];
            a[j] = 1;
            a[i] = -1;
            roots.push(a);
            let mut b = vec![0; n];
            b[j] = 1;
            b[i] = 1;
            roots.push(b);
        }
        let mut c = vec![0; n];
        c[j] = 2;
        roots.push(c);
    }
    roots
}

/// The sign change of the first coordinate followed by the `n − 1` adjacent
/// transpositions.
pub fn simple_reflections(n: usize) -> Vec<SignedPermutation> {
    let mut gens = vec![SignedPermutation::flip(n, 0)];
    gens.extend((1..n).map(|i| SignedPermutation::swap(n, i - 1, i)));
    gens
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All `2^n·n!` elements in a fixed order.
pub fn elements(n: usize) -> Vec<SignedPermutation> {
    let mut out = Vec::with_capacity((1usize << n) * (1..=n).product::<usize>());
    for perm in permutations(n) {
        for mask in 0u32..(1 << n) {
            let signs = (0..n)
                .map(|i| Sign::from_parity(mask >> i & 1 == 1))
                .collect();
            out.push(SignedPermutation {
                perm: perm.clone(),
                signs,
            });
        }
    }
    out
}

/// Word length of every element by breadth-first search over simple reflections.
pub fn lengths_by_reduced_words(n: usize) -> HashMap<SignedPermutation, usize> {
    let gens = simple_reflections(n);
    let mut dist = HashMap::new();
    let id = SignedPermutation::identity(n);
    dist.insert(id.clone(), 0);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for s in &gens {
            let ws = w.compose(s);
            if !dist.contains_key(&ws) {
                dist.insert(ws.clone(), d + 1);
                queue.push_back(ws);
            }
        }
    }
    dist
}

type SignedElements = Arc<Vec<(SignedPermutation, Sign)>>;

fn signed_elements(n: usize) -> SignedElements {
    static CACHE: OnceLock<Mutex<HashMap<usize, SignedElements>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let v: Arc<Vec<_>> = Arc::new(
        elements(n)
            .into_iter()
            .map(|w| {
                let s = w.sign();
                (w, s)
            })
            .collect(),
    );
    cache.lock().unwrap().insert(n, v.clone());
    v
}

pub fn act(w: &SignedPermutation, p: &LaurentPoly) -> Result<LaurentPoly, Error> {
    if w.rank() != p.nvars() {
        return Err(Error::DimensionMismatch {
            expected: p.nvars(),
            found: w.rank(),
        });
    }
    Ok(p.map_exponents(|e| w.apply(e)))
}

fn signed(p: LaurentPoly, s: Sign) -> LaurentPoly {
    match s {
        Sign::Plus => p,
        Sign::Minus => -&p,
    }
}

/// `A(p) = Σ_w (−1)^{ℓ(w)} w·p`, by full enumeration of the group as a
/// parallel map-reduce.
pub fn alternator_naive(p: &LaurentPoly) -> LaurentPoly {
    let n = p.nvars();
    let group = signed_elements(n);
    group
        .par_iter()
        .map(|(w, s)| signed(p.map_exponents(|e| w.apply(e)), *s))
        .reduce(|| LaurentPoly::zero(n), |a, b| &a + &b)
}

/// Orbit-reduced alternator: monomials fixed by a reflection (a zero
/// exponent, or two exponents of equal absolute value) cancel; every other
/// monomial is moved to its strictly dominant representative and each
/// representative is expanded over its free orbit once.
pub fn alternator(p: &LaurentPoly) -> LaurentPoly {
    let n = p.nvars();
    let mut reps: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (m, c) in p.terms() {
        if let Some((dominant, s)) = dominant_representative(&m.alpha) {
            let entry = reps
                .entry(Monomial::new(dominant, m.v))
                .or_insert_with(BigInt::zero);
            match s {
                Sign::Plus => *entry += c,
                Sign::Minus => *entry -= c,
            }
        }
    }
    reps.retain(|_, c| !c.is_zero());
    let group = signed_elements(n);
    reps.into_par_iter()
        .map(|(m, c)| {
            let mut out = LaurentPoly::zero(n);
            for (w, s) in group.iter() {
                let coeff = match s {
                    Sign::Plus => c.clone(),
                    Sign::Minus => -c.clone(),
                };
                out.add_term(Monomial::new(w.apply(&m.alpha), m.v), coeff);
            }
            out
        })
        .reduce(|| LaurentPoly::zero(n), |a, b| &a + &b)
}

/// For an exponent vector with trivial stabilizer, returns the strictly
/// dominant `d` and `(−1)^{ℓ(w)}` for the `w` with `w·d = e`.
fn dominant_representative(e: &[i32]) -> Option<(Vec<i32>, Sign)> {
    let mut abs: Vec<i32> = e.iter().map(|x| x.abs()).collect();
    if abs.contains(&0) {
        return None;
    }
    let mut s = e
        .iter()
        .fold(Sign::Plus, |acc, &x| acc * Sign::from_parity(x < 0));
    for i in 0..abs.len() {
        for j in i + 1..abs.len() {
            if abs[i] == abs[j] {
                return None;
            }
            if abs[i] > abs[j] {
                s = -s;
            }
        }
    }
    abs.sort_unstable();
    Some((abs, s))
}

/// `ρ = (1, …, n)` as an exponent vector.
pub fn rho(n: usize) -> Vec<i32> {
    (1..=n as i32).collect()
}

/// `Δ = A(α^ρ)`.
pub fn weyl_denominator(n: usize) -> Arc<LaurentPoly> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LaurentPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&n) {
        return d.clone();
    }
    let d = Arc::new(alternator(&LaurentPoly::monomial(rho(n))));
    cache.lock().unwrap().insert(n, d.clone());
    d
}

/// Whether `s·p = −p` for every simple reflection `s`.
pub fn is_alternating(p: &LaurentPoly) -> bool {
    simple_reflections(p.nvars())
        .iter()
        .all(|s| p.map_exponents(|e| s.apply(e)) == -p)
}

/// Exact quotient `p / Δ` of an alternating polynomial, by leading-term
/// elimination under the canonical order.
pub fn divide_by_delta(p: &LaurentPoly) -> Result<LaurentPoly, Error> {
    let n = p.nvars();
    if !is_alternating(p) {
        return Err(Error::NotAlternating);
    }
    let delta = weyl_denominator(n);
    if p.is_zero() {
        return Ok(LaurentPoly::zero(n));
    }
    let (dlead, dcoeff) = delta
        .leading()
        .map(|(m, c)| (m.clone(), c.clone()))
        .expect("Δ ≠ 0");
    // Per-variable exponent ranges bound the support of any exact quotient.
    let range = |poly: &LaurentPoly, i: usize| {
        let it = poly.terms().map(|(m, _)| m.alpha[i]);
        (it.clone().min().unwrap(), it.max().unwrap())
    };
    let bounds: Vec<(i32, i32)> = (0..n)
        .map(|i| {
            let (pl, ph) = range(p, i);
            let (dl, dh) = range(&delta, i);
            (pl - dl, ph - dh)
        })
        .collect();

    let mut rem = p.clone();
    let mut quotient = LaurentPoly::zero(n);
    while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let (q, r) = c.div_rem(&dcoeff);
        if !r.is_zero() {
            return Err(Error::NonDivisible);
        }
        let alpha: Vec<i32> = m
            .alpha
            .iter()
            .zip(&dlead.alpha)
            .map(|(a, b)| a - b)
            .collect();
        if alpha
            .iter()
            .zip(&bounds)
            .any(|(&e, &(lo, hi))| e < lo || e > hi)
        {
            return Err(Error::NonDivisible);
        }
        let t = Monomial::new(alpha, m.v - dlead.v);
        rem = &rem - &delta.mul_monomial(&t, &q);
        quotient.add_term(t, q);
    }
    Ok(quotient)
}
