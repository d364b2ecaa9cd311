//! Multivariate Laurent polynomials in `α_1..α_n` over `Z[v, v^{-1}]`,
//! with `v = q^{1/2}` kept symbolic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{GaussRat, Scalar};
use crate::Error;

/// Exponent vector in `α` plus the exponent of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub alpha: Vec<i32>,
    pub v: i32,
}

impl Monomial {
    pub fn new(alpha: Vec<i32>, v: i32) -> Self {
        Self { alpha, v }
    }

    pub fn degree(&self) -> i64 {
        self.alpha.iter().map(|&e| e as i64).sum()
    }

    fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial {
            alpha: self
                .alpha
                .iter()
                .zip(&rhs.alpha)
                .map(|(a, b)| a + b)
                .collect(),
            v: self.v + rhs.v,
        }
    }
}

/// Graded-lexicographic on the `α` exponents, then by the `v` exponent.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.v.cmp(&other.v))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::term(nvars, vec![0; nvars], 0, c)
    }

    /// `c · v^v_exp · α^alpha`.
    pub fn term(nvars: usize, alpha: Vec<i32>, v_exp: i32, c: BigInt) -> Self {
        assert_eq!(alpha.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::new(alpha, v_exp), c);
        p
    }

    pub fn monomial(alpha: Vec<i32>) -> Self {
        let n = alpha.len();
        Self::term(n, alpha, 0, BigInt::one())
    }

    /// `α_i` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e)
    }

    pub fn v_pow(nvars: usize, e: i32) -> Self {
        Self::term(nvars, vec![0; nvars], e, BigInt::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.alpha.len(), nvars, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.nvars)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + Clone {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest term under the canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.check(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    /// Applies `f` to every exponent vector; `f` must be injective.
    pub fn map_exponents(&self, mut f: impl FnMut(&[i32]) -> Vec<i32>) -> LaurentPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(Monomial::new(f(&m.alpha), m.v), c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        (0..e).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Substitutes exact values for `α` and `v = q^{1/2}`.
    pub fn eval(&self, alpha: &[GaussRat], q: u64) -> Result<Scalar, Error> {
        if alpha.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: alpha.len(),
            });
        }
        let mut powers: Vec<HashMap<i32, GaussRat>> = vec![HashMap::new(); self.nvars];
        let mut by_v: BTreeMap<i32, GaussRat> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut x = GaussRat::new(BigRational::from_integer(c.clone()), BigRational::zero());
            for (i, &e) in m.alpha.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = match powers[i].get(&e) {
                    Some(p) => p.clone(),
                    None => {
                        let p = alpha[i].pow(e as i64).ok_or_else(|| {
                            Error::InvalidConfig(format!("alpha_{} must be nonzero", i + 1))
                        })?;
                        powers[i].insert(e, p.clone());
                        p
                    }
                };
                x = &x * &p;
            }
            let slot = by_v.entry(m.v).or_insert_with(GaussRat::zero);
            *slot = &*slot + &x;
        }
        let mut acc = Scalar::zero(q);
        for (e, x) in by_v {
            acc = &acc + &(&Scalar::v_pow(q, e as i64) * &Scalar::from_gauss(q, x));
        }
        Ok(acc)
    }

    fn check(&self, rhs: &LaurentPoly) {
        assert_eq!(
            self.nvars, rhs.nvars,
            "Laurent polynomials in different variable counts"
        );
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check(rhs);
        let mut out = LaurentPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text form: terms in decreasing canonical order, each written
    /// `c * v^a * a1^e1 * ... * an^en`, joined by ` + `. The zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * v^{}", m.v)?;
            for (i, e) in m.alpha.iter().enumerate() {
                write!(f, " * a{}^{e}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parses the canonical text form for a polynomial in `nvars` variables.
    pub fn parse(s: &str, nvars: usize) -> Result<Self, Error> {
        let bad =
            |why: &str| Error::Parse(format!("invalid Laurent polynomial term ({why}) in {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(nvars));
        }
        let mut p = Self::zero(nvars);
        for term in s.split(" + ") {
            let mut factors = term.split(" * ");
            let c = BigInt::from_str(factors.next().ok_or_else(|| bad("empty"))?.trim())
                .map_err(|_| bad("coefficient"))?;
            let mut alpha = vec![0i32; nvars];
            let mut v = 0i32;
            for fac in factors {
                let (base, exp) = fac.trim().split_once('^').ok_or_else(|| bad("factor"))?;
                let exp: i32 = exp.parse().map_err(|_| bad("exponent"))?;
                if base == "v" {
                    v += exp;
                } else {
                    let idx: usize = base
                        .strip_prefix('a')
                        .and_then(|i| i.parse().ok())
                        .filter(|&i| i >= 1 && i <= nvars)
                        .ok_or_else(|| bad("variable"))?;
                    alpha[idx - 1] += exp;
                }
            }
            p.add_term(Monomial::new(alpha, v), c);
        }
        Ok(p)
    }
}
