//! Arithmetic of `F*/F*²` for a p-adic field `F` of odd residual characteristic.
//!
//! Elements of `F*` are modelled by their valuation together with the class of
//! their unit part in `O*/O*²`. Every quantity used by the unramified theory
//! (Hilbert symbols, quadratic characters, the Weil index of a normalized
//! additive character) factors through this quotient.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Residue field data. Only `q mod 4` enters the tame symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldConfig {
    q: u64,
}

impl FieldConfig {
    /// Validates that `q` is an odd prime power `>= 3`.
    pub fn new(q: u64) -> Result<Self, Error> {
        if q < 3 || q.is_multiple_of(2) || !is_prime_power(q) {
            return Err(Error::InvalidConfig(format!(
                "residue field size q = {q} must be an odd prime power >= 3"
            )));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `-1` is a square in the residue field iff `q ≡ 1 (mod 4)`.
    pub fn minus_one_is_square(&self) -> bool {
        self.q % 4 == 1
    }

    /// The value of `(π, π)_F = (-1, π)_F`, which is also `g²` for `g = γ_ψ(π)`.
    pub fn pi_pi(&self) -> Sign {
        if self.minus_one_is_square() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `η_π(-1)`: whether `-1` lies in `O*²`.
    pub fn eta_pi_minus_one(&self) -> Sign {
        self.pi_pi()
    }
}

fn is_prime_power(q: u64) -> bool {
    let mut p = 2;
    let mut m = q;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    m > 1
}

/// A sign `±1`, written multiplicatively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `(-1)^e`.
    pub fn pow_minus_one(e: i64) -> Self {
        Self::from_parity(e.rem_euclid(2) == 1)
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn pow(self, e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            self
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Class of a unit in `O*/O*²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnitClass {
    Trivial,
    /// The fixed non-square unit `u0`.
    U0,
}

impl UnitClass {
    /// The nontrivial quadratic character of `O*`.
    pub fn legendre(self) -> Sign {
        match self {
            UnitClass::Trivial => Sign::Plus,
            UnitClass::U0 => Sign::Minus,
        }
    }
}

impl Mul for UnitClass {
    type Output = UnitClass;
    fn mul(self, rhs: UnitClass) -> UnitClass {
        if self == rhs {
            UnitClass::Trivial
        } else {
            UnitClass::U0
        }
    }
}

/// `π^ord · u` with `u` known modulo `O*²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SquareClassElement {
    pub ord: i64,
    pub unit: UnitClass,
}

impl SquareClassElement {
    pub const ONE: Self = Self::new(0, UnitClass::Trivial);
    pub const U0: Self = Self::new(0, UnitClass::U0);
    pub const PI: Self = Self::new(1, UnitClass::Trivial);
    pub const PI_U0: Self = Self::new(1, UnitClass::U0);

    /// The representatives `{1, u0, π, π·u0}` of `F*/F*²`.
    pub const REPRESENTATIVES: [Self; 4] = [Self::ONE, Self::U0, Self::PI, Self::PI_U0];

    pub const fn new(ord: i64, unit: UnitClass) -> Self {
        Self { ord, unit }
    }

    pub const fn pi_pow(ord: i64) -> Self {
        Self::new(ord, UnitClass::Trivial)
    }

    pub const fn unit(unit: UnitClass) -> Self {
        Self::new(0, unit)
    }

    pub fn inv(self) -> Self {
        Self::new(-self.ord, self.unit)
    }

    pub fn pow(self, e: i64) -> Self {
        let unit = if e.rem_euclid(2) == 1 {
            self.unit
        } else {
            UnitClass::Trivial
        };
        Self::new(self.ord * e, unit)
    }

    /// Reduction to one of the four representatives of `F*/F*²`.
    pub fn square_class(self) -> Self {
        Self::new(self.ord.rem_euclid(2), self.unit)
    }

    pub fn is_square(self) -> bool {
        self.ord.rem_euclid(2) == 0 && self.unit == UnitClass::Trivial
    }

    pub fn is_unit(self) -> bool {
        self.ord == 0
    }
}

impl Mul for SquareClassElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.ord + rhs.ord, self.unit * rhs.unit)
    }
}

impl fmt::Display for SquareClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = self.unit == UnitClass::U0;
        match (self.ord, u) {
            (0, false) => f.write_str("1"),
            (0, true) => f.write_str("u0"),
            (1, false) => f.write_str("pi"),
            (1, true) => f.write_str("piu0"),
            (k, false) => write!(f, "pi^{k}"),
            (k, true) => write!(f, "pi^{k}u0"),
        }
    }
}

impl FromStr for SquareClassElement {
    type Err = Error;

    /// Accepts `1`, `u0`, `pi`, `piu0`, `pi^k`, `pi^ku0` (and `pi^k*u0`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid square-class token {s:?}"));
        let t = s.trim().replace('*', "");
        let (head, unit) = match t.strip_suffix("u0") {
            Some(h) => (h.to_string(), UnitClass::U0),
            None => (t.clone(), UnitClass::Trivial),
        };
        let ord = match head.as_str() {
            "" if unit == UnitClass::U0 => 0,
            "1" if unit == UnitClass::Trivial => 0,
            "pi" => 1,
            h => {
                let e = h.strip_prefix("pi^").ok_or_else(bad)?;
                let e = e
                    .strip_prefix('(')
                    .and_then(|e| e.strip_suffix(')'))
                    .unwrap_or(e);
                e.parse::<i64>().map_err(|_| bad())?
            }
        };
        Ok(Self::new(ord, unit))
    }
}

/// The quadratic Hilbert symbol `(a, b)_F` (tame symbol).
pub fn hilbert(a: SquareClassElement, b: SquareClassElement, cfg: &FieldConfig) -> Sign {
    let m = a.ord;
    let n = b.ord;
    let minus_one = cfg.pi_pi().pow(m * n);
    minus_one * b.unit.legendre().pow(m) * a.unit.legendre().pow(n)
}

/// The quadratic character `η_a = (a, ·)_F`.
pub fn eta(a: SquareClassElement, b: SquareClassElement, cfg: &FieldConfig) -> Sign {
    hilbert(a, b, cfg)
}

/// `γ_ψ(a)` for the fixed normalized `ψ`, exact in the phase group `{±1, ±g}`.
pub fn gamma_weil(a: SquareClassElement, cfg: &FieldConfig) -> Phase {
    let c = a.square_class();
    let _ = cfg;
    match (c.ord, c.unit) {
        (0, _) => Phase::ONE,
        (_, UnitClass::Trivial) => Phase::G,
        (_, UnitClass::U0) => -Phase::G,
    }
}

/// Element `sign · g^g_power` of the cyclic group generated by `g = γ_ψ(π)`,
/// where `g² = (π, π)_F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Phase {
    pub sign: Sign,
    pub g_power: u8,
}

impl Phase {
    pub const ONE: Phase = Phase {
        sign: Sign::Plus,
        g_power: 0,
    };
    pub const G: Phase = Phase {
        sign: Sign::Plus,
        g_power: 1,
    };

    pub fn from_sign(sign: Sign) -> Self {
        Phase { sign, g_power: 0 }
    }

    pub fn mul(self, rhs: Phase, cfg: &FieldConfig) -> Phase {
        let mut sign = self.sign * rhs.sign;
        let mut g_power = self.g_power + rhs.g_power;
        if g_power == 2 {
            sign = sign * cfg.pi_pi();
            g_power = 0;
        }
        Phase { sign, g_power }
    }

    pub fn mul_sign(self, s: Sign) -> Phase {
        Phase {
            sign: self.sign * s,
            g_power: self.g_power,
        }
    }

    pub fn inv(self, cfg: &FieldConfig) -> Phase {
        if self.g_power == 0 {
            self
        } else {
            // (s·g)^{-1} = s·g / g² = s·(π,π)·g
            Phase {
                sign: self.sign * cfg.pi_pi(),
                g_power: 1,
            }
        }
    }

    pub fn pow(self, e: i64, cfg: &FieldConfig) -> Phase {
        let base = if e < 0 { self.inv(cfg) } else { self };
        (0..e.unsigned_abs()).fold(Phase::ONE, |acc, _| acc.mul(base, cfg))
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        self.mul_sign(Sign::Minus)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.sign, self.g_power) {
            (Sign::Plus, 0) => f.write_str("+1"),
            (Sign::Minus, 0) => f.write_str("-1"),
            (Sign::Plus, _) => f.write_str("+g"),
            (Sign::Minus, _) => f.write_str("-g"),
        }
    }
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let (sign, g_power) = match s.trim() {
            "+1" | "1" => (Sign::Plus, 0),
            "-1" => (Sign::Minus, 0),
            "+g" | "g" => (Sign::Plus, 1),
            "-g" => (Sign::Minus, 1),
            other => return Err(Error::Parse(format!("invalid phase {other:?}"))),
        };
        Ok(Phase { sign, g_power })
    }
}
