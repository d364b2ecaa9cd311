//! Diagonal elements of the metaplectic double cover of `GSp(2n)`.
//!
//! `[t, y] = diag(t, y·t^{-1})` with `t = diag(a_n, …, a_1)`; here `t[i]` holds
//! `a_{i+1}`, the entry paired with `α_{i+1}`. Cover elements `(g, ε)` multiply
//! through the torus cocycle `c̃([t,y],[t',y']) = (det t, y'·det t')_F`.

use serde::{Deserialize, Serialize};

use crate::field_arith::{hilbert, FieldConfig, Sign, SquareClassElement, UnitClass};
use crate::Error;

type SC = SquareClassElement;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusElement {
    pub t: Vec<SC>,
    pub y: SC,
}

impl TorusElement {
    pub fn new(t: Vec<SC>, y: SC) -> Self {
        Self { t, y }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![SC::ONE; n], SC::ONE)
    }

    /// `i(λ) = diag(I_n, λ·I_n)`.
    pub fn iota(n: usize, lambda: SC) -> Self {
        Self::new(vec![SC::ONE; n], lambda)
    }

    /// `a·I_{2n} = [a·I_n, a²]`.
    pub fn scalar(n: usize, a: SC) -> Self {
        Self::new(vec![a; n], a * a)
    }

    /// `[t, 1]`, an element of the `Sp(2n)` torus.
    pub fn sp(t: Vec<SC>) -> Self {
        Self::new(t, SC::ONE)
    }

    pub fn rank(&self) -> usize {
        self.t.len()
    }

    pub fn det(&self) -> SC {
        self.t.iter().fold(SC::ONE, |acc, &a| acc * a)
    }

    pub fn lambda(&self) -> SC {
        self.y
    }

    pub fn mul(&self, rhs: &TorusElement) -> TorusElement {
        assert_eq!(self.rank(), rhs.rank(), "torus elements of different rank");
        TorusElement {
            t: self.t.iter().zip(&rhs.t).map(|(&a, &b)| a * b).collect(),
            y: self.y * rhs.y,
        }
    }

    pub fn inv(&self) -> TorusElement {
        TorusElement {
            t: self.t.iter().map(|a| a.inv()).collect(),
            y: self.y.inv(),
        }
    }

    /// Whether the element is `a·I_{2n}` for some `a`.
    pub fn as_scalar(&self) -> Option<SC> {
        let a = *self.t.first()?;
        (self.t.iter().all(|&x| x == a) && self.y == a * a).then_some(a)
    }
}

pub fn cocycle(g1: &TorusElement, g2: &TorusElement, cfg: &FieldConfig) -> Sign {
    hilbert(g1.det(), g2.y * g2.det(), cfg)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverTorusElement {
    pub base: TorusElement,
    pub eps: Sign,
}

impl CoverTorusElement {
    pub fn new(base: TorusElement, eps: Sign) -> Self {
        Self { base, eps }
    }

    pub fn lift(base: TorusElement) -> Self {
        Self::new(base, Sign::Plus)
    }

    pub fn identity(n: usize) -> Self {
        Self::lift(TorusElement::identity(n))
    }

    /// `(I_{2n}, −1)`.
    pub fn minus_one(n: usize) -> Self {
        Self::new(TorusElement::identity(n), Sign::Minus)
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn lambda(&self) -> SC {
        self.base.y
    }

    pub fn mul(&self, rhs: &CoverTorusElement, cfg: &FieldConfig) -> CoverTorusElement {
        CoverTorusElement {
            base: self.base.mul(&rhs.base),
            eps: self.eps * rhs.eps * cocycle(&self.base, &rhs.base, cfg),
        }
    }

    pub fn inv(&self, cfg: &FieldConfig) -> CoverTorusElement {
        let b = self.base.inv();
        let eps = self.eps * cocycle(&self.base, &b, cfg);
        CoverTorusElement { base: b, eps }
    }

    /// `g^{-1}·self·g`.
    pub fn conjugate(&self, g: &CoverTorusElement, cfg: &FieldConfig) -> CoverTorusElement {
        g.inv(cfg).mul(self, cfg).mul(g, cfg)
    }

    pub fn commutes_with(&self, other: &CoverTorusElement, cfg: &FieldConfig) -> bool {
        self.mul(other, cfg) == other.mul(self, cfg)
    }
}

/// `h^{(i(c), 1)}`.
pub fn conjugate_by_iota(h: &CoverTorusElement, c: SC, cfg: &FieldConfig) -> CoverTorusElement {
    let g = CoverTorusElement::lift(TorusElement::iota(h.rank(), c));
    h.conjugate(&g, cfg)
}

/// `(g, ε)^{(a·I, ε')} = (g, ε·(λ(g), aⁿ)_F)`.
pub fn conjugate_by_scalar_closed_form(
    h: &CoverTorusElement,
    a: SC,
    cfg: &FieldConfig,
) -> CoverTorusElement {
    let n = h.rank() as i64;
    CoverTorusElement::new(h.base.clone(), h.eps * hilbert(h.lambda(), a.pow(n), cfg))
}

/// `(a·I, ε)^{(g, ε')} = (a·I, ε·(λ(g), aⁿ)_F)`.
pub fn conjugate_scalar_closed_form(
    a: SC,
    eps: Sign,
    g: &CoverTorusElement,
    cfg: &FieldConfig,
) -> CoverTorusElement {
    let n = g.rank();
    CoverTorusElement::new(
        TorusElement::scalar(n, a),
        eps * hilbert(g.lambda(), a.pow(n as i64), cfg),
    )
}

/// Which group's center is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CenterScope {
    /// The cover of `GSp(2n)`: `F*·I` for `n` even, `F*²·I` for `n` odd.
    CoverGSp,
    /// The cover of `GSp⁺(2n)` (similitude a square): `F*·I`.
    CoverGSpPlus,
    /// The cover of the diagonal torus: `y` and `det t` both squares.
    CoverTorus,
}

pub fn is_central(h: &CoverTorusElement, scope: CenterScope, _cfg: &FieldConfig) -> bool {
    match scope {
        CenterScope::CoverGSp => match h.base.as_scalar() {
            Some(a) => h.rank().is_multiple_of(2) || a.is_square(),
            None => false,
        },
        CenterScope::CoverGSpPlus => h.base.as_scalar().is_some(),
        CenterScope::CoverTorus => h.base.y.is_square() && h.base.det().is_square(),
    }
}

/// Every torus element whose entries and similitude are among `{1, u0, π, π·u0}`.
pub fn square_class_torus(n: usize) -> Vec<TorusElement> {
    let reps = SC::REPRESENTATIVES;
    let total = 4usize.pow(n as u32 + 1);
    (0..total)
        .map(|mut code| {
            let mut t = Vec::with_capacity(n);
            for _ in 0..n {
                t.push(reps[code % 4]);
                code /= 4;
            }
            TorusElement::new(t, reps[code % 4])
        })
        .collect()
}

/// Decomposition `h = (i(π^{-m}),1)(b·I,1)([t,1],1)(i(u),ε)` of a cover torus
/// element, with `m ∈ {0,1}`, `b = π^l·(unit)` and `u` a unit class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HNormalForm {
    pub m: u8,
    pub b: SC,
    pub t: Vec<SC>,
    pub u: UnitClass,
    pub eps: Sign,
}

impl HNormalForm {
    /// `k_i = ord(a_i)`.
    pub fn k(&self) -> Vec<i64> {
        self.t.iter().map(|a| a.ord).collect()
    }

    /// `l = ord(b)`.
    pub fn l(&self) -> i64 {
        self.b.ord
    }

    pub fn t_det(&self) -> SC {
        self.t.iter().fold(SC::ONE, |acc, &a| acc * a)
    }

    /// Multiplies the four factors back together in the cover.
    pub fn recompose(&self, cfg: &FieldConfig) -> CoverTorusElement {
        let n = self.t.len();
        let lift = |g| CoverTorusElement::lift(g);
        lift(TorusElement::iota(n, SC::pi_pow(-(self.m as i64))))
            .mul(&lift(TorusElement::scalar(n, self.b)), cfg)
            .mul(&lift(TorusElement::sp(self.t.clone())), cfg)
            .mul(
                &CoverTorusElement::new(TorusElement::iota(n, SC::unit(self.u)), self.eps),
                cfg,
            )
    }
}

/// Normal form with `b` a pure power of `π`.
pub fn normal_form(h: &CoverTorusElement, cfg: &FieldConfig) -> HNormalForm {
    normal_form_with_unit(h, UnitClass::Trivial, cfg)
}

/// Normal form with the unit class of `b` prescribed; `t`, `u` and `ε`
/// compensate so that recomposition is exact.
pub fn normal_form_with_unit(
    h: &CoverTorusElement,
    b_unit: UnitClass,
    cfg: &FieldConfig,
) -> HNormalForm {
    let y = h.base.y;
    let m = y.ord.rem_euclid(2);
    let l = (y.ord + m) / 2;
    let b = SC::new(l, b_unit);
    let t: Vec<SC> = h.base.t.iter().map(|&a| a * b.inv()).collect();
    let mut nf = HNormalForm {
        m: m as u8,
        b,
        t,
        u: y.unit,
        eps: Sign::Plus,
    };
    let probe = nf.recompose(cfg);
    debug_assert_eq!(probe.base, h.base);
    nf.eps = h.eps * probe.eps;
    nf
}

pub fn check_same_rank(a: usize, b: usize) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        })
    }
}
