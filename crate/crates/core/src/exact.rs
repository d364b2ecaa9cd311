//! Exact scalars: Gaussian rationals `Q(i)` and the extension `Q(i)(√q)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field_arith::{FieldConfig, Phase, Sign};
use crate::Error;

/// `re + im·i` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// `|z|²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Some(acc)
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// `a`, `bi`, or `a+bi` with rational `a`, `b` (e.g. `3/5+4/5i`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = |r: &BigRational| -> String {
            if r.is_one() {
                "i".into()
            } else if (-r).is_one() {
                "-i".into()
            } else {
                format!("{}i", fmt_rat(r))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&fmt_rat(&self.re)),
            (true, false) => f.write_str(&im(&self.im)),
            (false, false) => {
                let s = im(&self.im);
                if s.starts_with('-') {
                    write!(f, "{}{}", fmt_rat(&self.re), s)
                } else {
                    write!(f, "{}+{}", fmt_rat(&self.re), s)
                }
            }
        }
    }
}

/// Parses one signed term such as `3`, `-2/7`, `i`, `-4i`, `4/5i`.
fn parse_term(t: &str) -> Option<GaussRat> {
    let (is_im, body) = match t.strip_suffix('i') {
        Some(b) => (true, b),
        None => (false, t),
    };
    let body = match body {
        "" | "+" if is_im => "1",
        "-" if is_im => "-1",
        b => b.strip_prefix('+').unwrap_or(b),
    };
    if body.is_empty() || body.starts_with(['+', '-']) && body.len() == 1 {
        return None;
    }
    let r = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(body.parse().ok()?),
    };
    Some(if is_im {
        GaussRat::new(BigRational::zero(), r)
    } else {
        GaussRat::new(r, BigRational::zero())
    })
}

fn parse_sum(s: &str) -> Option<GaussRat> {
    let mut terms = Vec::new();
    let mut start = 0;
    for (idx, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && idx > start {
            terms.push(&s[start..idx]);
            start = idx;
        }
    }
    terms.push(&s[start..]);
    let mut acc = GaussRat::zero();
    for t in terms {
        acc = &acc + &parse_term(t)?;
    }
    Some(acc)
}

impl FromStr for GaussRat {
    type Err = Error;

    /// Accepts `p/q`, `a+bi`, `a+bi/c` (the whole sum over `c`), `(a+bi)/c`,
    /// and sums of rational terms like `3/5+4/5i`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid exact scalar {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some(rest) = t.strip_prefix('(') {
            let (inner, tail) = rest.split_once(')').ok_or_else(bad)?;
            let z = parse_sum(inner).ok_or_else(bad)?;
            if tail.is_empty() {
                return Ok(z);
            }
            let d = tail.strip_prefix('/').ok_or_else(bad)?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            let d = BigRational::from_integer(d);
            return Ok(GaussRat::new(z.re / &d, z.im / &d));
        }
        if let Some(z) = parse_sum(&t) {
            return Ok(z);
        }
        // `a+bi/c`: a complex numerator over a trailing integer denominator.
        let (num, den) = t.rsplit_once('/').ok_or_else(bad)?;
        let z = parse_sum(num).ok_or_else(bad)?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        let d = BigRational::from_integer(d);
        Ok(GaussRat::new(z.re / &d, z.im / &d))
    }
}

/// `a + b·v` in `Q(i)[v]/(v² − q)` with `v = q^{1/2}`. When `q` is a perfect
/// square the `v` part is folded into `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    q: u64,
    a: GaussRat,
    b: GaussRat,
}

impl Scalar {
    pub fn new(q: u64, a: GaussRat, b: GaussRat) -> Self {
        let r = q.sqrt();
        if r * r == q {
            let a = &a + &(&b * &GaussRat::from_int(r as i64));
            Self {
                q,
                a,
                b: GaussRat::zero(),
            }
        } else {
            Self { q, a, b }
        }
    }

    pub fn from_gauss(q: u64, a: GaussRat) -> Self {
        Self::new(q, a, GaussRat::zero())
    }

    pub fn zero(q: u64) -> Self {
        Self::from_gauss(q, GaussRat::zero())
    }

    pub fn one(q: u64) -> Self {
        Self::from_gauss(q, GaussRat::one())
    }

    /// `v^e = q^{e/2}`.
    pub fn v_pow(q: u64, e: i64) -> Self {
        let half = e.div_euclid(2);
        let qr = GaussRat::from_int(q as i64)
            .pow(half)
            .expect("q is nonzero");
        if e.rem_euclid(2) == 0 {
            Self::from_gauss(q, qr)
        } else {
            Self::new(q, GaussRat::zero(), qr)
        }
    }

    /// Image of a phase under `g ↦ g_value`.
    pub fn from_phase(q: u64, phase: Phase, g_value: &GaussRat) -> Self {
        let base = if phase.g_power == 0 {
            GaussRat::one()
        } else {
            g_value.clone()
        };
        let z = match phase.sign {
            Sign::Plus => base,
            Sign::Minus => -base,
        };
        Self::from_gauss(q, z)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rational_part(&self) -> &GaussRat {
        &self.a
    }

    pub fn sqrt_part(&self) -> &GaussRat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        // (a + bv)^{-1} = (a − bv) / (a² − q b²); the norm is nonzero for q non-square.
        let qg = GaussRat::from_int(self.q as i64);
        let n = &(&self.a * &self.a) - &(&qg * &(&self.b * &self.b));
        let ni = n.inv()?;
        Some(Self::new(self.q, &self.a * &ni, -(&self.b * &ni)))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.q);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    fn check(&self, rhs: &Scalar) {
        assert_eq!(self.q, rhs.q, "scalars over different residue fields");
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        Scalar::new(self.q, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        Scalar::new(self.q, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        let qg = GaussRat::from_int(self.q as i64);
        let a = &(&self.a * &rhs.a) + &(&qg * &(&self.b * &rhs.b));
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        Scalar::new(self.q, a, b)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(self.q, -&self.a, -&self.b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*v", self.b)
        } else {
            write!(f, "{} + ({})*v", self.a, self.b)
        }
    }
}

/// Exact field operations needed by the elimination in [`crate::linalg`].
pub trait ExactField: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Exact division; `rhs` is nonzero.
    fn div(&self, rhs: &Self) -> Self;
}

impl ExactField for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl ExactField for GaussRat {
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self * &rhs.inv().expect("division by zero")
    }
}

/// The two admissible values of `g = γ_ψ(π)` inside `Q(i)`: the square roots
/// of `(π, π)_F`.
pub fn g_values(cfg: &FieldConfig) -> [GaussRat; 2] {
    if cfg.minus_one_is_square() {
        [GaussRat::one(), GaussRat::from_int(-1)]
    } else {
        [GaussRat::i(), -GaussRat::i()]
    }
}
