//! Unramified genuine characters of the torus cover and the data attached to
//! them: the extension set `E(ω)`, the Weyl action on Satake parameters,
//! quadratic twists and the invariant `R(ω)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::GaussRat;
use crate::field_arith::{gamma_weil, FieldConfig, Phase, Sign, SquareClassElement, UnitClass};
use crate::torus::CoverTorusElement;
use crate::weyl::{elements, SignedPermutation};
use crate::Error;

/// Standard extension (`Plus`) or its `i(π)`-conjugate (`Minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    /// The `m`-parity of the support.
    pub fn parity(self) -> u8 {
        match self {
            Branch::Plus => 0,
            Branch::Minus => 1,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            _ => Err(Error::Parse(format!("unknown branch {s:?}"))),
        }
    }
}

/// The quadratic character `η` of `O*` used to extend across `i(F*)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EtaChoice {
    #[serde(rename = "1")]
    Eta1,
    #[serde(rename = "pi")]
    EtaPi,
}

impl EtaChoice {
    pub fn on_unit(self, u: UnitClass) -> Sign {
        match self {
            EtaChoice::Eta1 => Sign::Plus,
            EtaChoice::EtaPi => u.legendre(),
        }
    }
}

impl fmt::Display for EtaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EtaChoice::Eta1 => "1",
            EtaChoice::EtaPi => "pi",
        })
    }
}

impl FromStr for EtaChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "1" | "eta_1" => Ok(EtaChoice::Eta1),
            "pi" | "eta_pi" => Ok(EtaChoice::EtaPi),
            _ => Err(Error::Parse(format!("unknown eta {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnramifiedData {
    pub n: usize,
    pub alpha: Vec<GaussRat>,
    pub beta: GaussRat,
    pub branch: Branch,
    pub eta: EtaChoice,
}

impl UnramifiedData {
    pub fn new(
        alpha: Vec<GaussRat>,
        beta: GaussRat,
        branch: Branch,
        eta: EtaChoice,
    ) -> Result<Self, Error> {
        if alpha.is_empty() {
            return Err(Error::InvalidConfig("rank must be at least 1".into()));
        }
        if let Some(i) = alpha.iter().position(GaussRat::is_zero) {
            return Err(Error::InvalidConfig(format!(
                "alpha_{} must be nonzero",
                i + 1
            )));
        }
        if beta.is_zero() {
            return Err(Error::InvalidConfig("beta must be nonzero".into()));
        }
        Ok(Self {
            n: alpha.len(),
            alpha,
            beta,
            branch,
            eta,
        })
    }

    pub fn label(&self) -> ExtensionLabel {
        ExtensionLabel {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            sign: self.branch,
        }
    }

    pub fn with_label(&self, label: &ExtensionLabel) -> UnramifiedData {
        UnramifiedData {
            n: self.n,
            alpha: label.alpha.clone(),
            beta: label.beta.clone(),
            branch: label.sign,
            eta: self.eta,
        }
    }

    /// Whether every `|α_i|² = 1` exactly.
    pub fn is_unitary(&self) -> bool {
        self.alpha.iter().all(|a| a.norm().is_one())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionLabel {
    pub alpha: Vec<GaussRat>,
    pub beta: GaussRat,
    pub sign: Branch,
}

impl fmt::Display for ExtensionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<String> = self.alpha.iter().map(|a| a.to_string()).collect();
        let s = match self.sign {
            Branch::Plus => "+",
            Branch::Minus => "-",
        };
        write!(f, "({};{})^{s}", alpha.join(","), self.beta)
    }
}

/// `(χ_α)_ψ` on the cover of the `Sp` torus: `ε·∏α_i^{k_i}·γ_ψ(det t)`.
pub fn chi_psi_eval(
    d: &UnramifiedData,
    ct: &CoverTorusElement,
    cfg: &FieldConfig,
) -> Result<(Phase, GaussRat), Error> {
    if ct.rank() != d.n {
        return Err(Error::DimensionMismatch {
            expected: d.n,
            found: ct.rank(),
        });
    }
    if !ct.lambda().is_square() {
        return Err(Error::InvalidConfig(
            "similitude must be a square class".into(),
        ));
    }
    let mut value = GaussRat::one();
    for (a, x) in d.alpha.iter().zip(&ct.base.t) {
        value = &value * &a.pow(x.ord).expect("alpha is nonzero");
    }
    let phase = gamma_weil(ct.base.det(), cfg).mul_sign(ct.eps);
    Ok((phase, value))
}

/// Twist by `η_c`. Only the unramified classes keep the family unramified.
pub fn quadratic_twist(d: &UnramifiedData, c: SquareClassElement) -> Result<UnramifiedData, Error> {
    if c.ord.rem_euclid(2) != 0 {
        return Err(Error::TwistNotUnramified);
    }
    let mut out = d.clone();
    if c.unit == UnitClass::U0 {
        out.alpha = d.alpha.iter().map(|a| -a).collect();
    }
    Ok(out)
}

/// `(^wα)_i = α_{σ(i)}^{s_i}`, so that `(w·p)(α) = p(^wα)`.
pub fn weyl_act_alpha(w: &SignedPermutation, alpha: &[GaussRat]) -> Result<Vec<GaussRat>, Error> {
    if w.rank() != alpha.len() {
        return Err(Error::DimensionMismatch {
            expected: w.rank(),
            found: alpha.len(),
        });
    }
    w.perm()
        .iter()
        .zip(w.signs())
        .map(|(&j, &s)| match s {
            Sign::Plus => Ok(alpha[j].clone()),
            Sign::Minus => alpha[j]
                .inv()
                .ok_or_else(|| Error::InvalidConfig("alpha must be nonzero".into())),
        })
        .collect()
}

/// `E(ω) = {(α,β)^±, (−α,(−1)ⁿβ)^±}`, standard labels first.
pub fn extension_set(d: &UnramifiedData) -> [ExtensionLabel; 4] {
    let neg_alpha: Vec<GaussRat> = d.alpha.iter().map(|a| -a).collect();
    let neg_beta = if d.n.is_multiple_of(2) {
        d.beta.clone()
    } else {
        -&d.beta
    };
    let label = |alpha: &Vec<GaussRat>, beta: &GaussRat, sign| ExtensionLabel {
        alpha: alpha.clone(),
        beta: beta.clone(),
        sign,
    };
    [
        label(&d.alpha, &d.beta, Branch::Plus),
        label(&neg_alpha, &neg_beta, Branch::Plus),
        label(&d.alpha, &d.beta, Branch::Minus),
        label(&neg_alpha, &neg_beta, Branch::Minus),
    ]
}

/// `R(ω)` as a subgroup of `{1, u0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ROmega {
    pub classes: Vec<SquareClassElement>,
}

impl ROmega {
    pub fn trivial() -> Self {
        Self {
            classes: vec![SquareClassElement::ONE],
        }
    }

    pub fn order_two() -> Self {
        Self {
            classes: vec![SquareClassElement::ONE, SquareClassElement::U0],
        }
    }

    pub fn order(&self) -> usize {
        self.classes.len()
    }
}

/// Searches the Weyl group for `w` with `^wα = −α`; the `β` part of the
/// `u0`-twist additionally requires `(−1)ⁿβ = β`.
pub fn r_omega_brute(d: &UnramifiedData) -> ROmega {
    if d.n % 2 == 1 {
        return ROmega::trivial();
    }
    let target: Vec<GaussRat> = d.alpha.iter().map(|a| -a).collect();
    let found = elements(d.n).par_iter().any(|w| {
        weyl_act_alpha(w, &d.alpha)
            .map(|x| x == target)
            .unwrap_or(false)
    });
    if found {
        ROmega::order_two()
    } else {
        ROmega::trivial()
    }
}

fn inversion_class(a: &GaussRat) -> GaussRat {
    let inv = a.inv().expect("alpha is nonzero");
    if &inv < a {
        inv
    } else {
        a.clone()
    }
}

/// `n` even and `α` is W-conjugate to `(a₁,−a₁,a₂,−a₂,…)`: the classes
/// `{a, a⁻¹}` pair off with their negatives.
pub fn r_omega_criterion(d: &UnramifiedData) -> ROmega {
    if d.n % 2 == 1 {
        return ROmega::trivial();
    }
    let mut mult: BTreeMap<GaussRat, usize> = BTreeMap::new();
    for a in &d.alpha {
        *mult.entry(inversion_class(a)).or_default() += 1;
    }
    let ok = mult.iter().all(|(c, &m)| {
        let neg = inversion_class(&-c);
        if &neg == c {
            m % 2 == 0
        } else {
            mult.get(&neg).copied().unwrap_or(0) == m
        }
    });
    if ok {
        ROmega::order_two()
    } else {
        ROmega::trivial()
    }
}

pub fn r_omega(d: &UnramifiedData) -> Result<ROmega, Error> {
    let brute = r_omega_brute(d);
    let crit = r_omega_criterion(d);
    if brute != crit {
        return Err(Error::InvariantViolation(format!(
            "R(omega) search gives order {} but the pairing criterion gives {}",
            brute.order(),
            crit.order()
        )));
    }
    Ok(brute)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Irreducible,
    TwoGenericSummands,
    Unknown,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Irreducible => "Irreducible",
            Classification::TwoGenericSummands => "TwoGenericSummands",
            Classification::Unknown => "Unknown",
        })
    }
}

pub fn classify(d: &UnramifiedData) -> Result<Classification, Error> {
    let r = r_omega(d)?;
    if !d.is_unitary() {
        return Ok(Classification::Unknown);
    }
    Ok(match r.order() {
        1 => Classification::Irreducible,
        _ => Classification::TwoGenericSummands,
    })
}

/// `L(η_{u0}, s) = (1 + q^{-s})^{-1}`.
pub fn l_factor_u0(q: u64, s: u32) -> BigRational {
    let qs = BigRational::from_integer(num_bigint::BigInt::from(q).pow(s));
    (BigRational::one() + qs.recip()).recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::TorusElement;

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    fn data(alpha: &[&str], beta: &str) -> UnramifiedData {
        UnramifiedData::new(
            alpha.iter().map(|s| g(s)).collect(),
            g(beta),
            Branch::Plus,
            EtaChoice::Eta1,
        )
        .unwrap()
    }

    #[test]
    fn chi_psi_values() {
        let cfg = FieldConfig::new(3).unwrap();
        let d = data(&["3"], "1");
        let id = CoverTorusElement::identity(1);
        assert_eq!(
            chi_psi_eval(&d, &id, &cfg).unwrap(),
            (Phase::ONE, GaussRat::one())
        );
        let h = CoverTorusElement::lift(TorusElement::sp(vec![SquareClassElement::PI]));
        assert_eq!(chi_psi_eval(&d, &h, &cfg).unwrap(), (Phase::G, g("3")));
        let neg = CoverTorusElement::new(h.base.clone(), Sign::Minus);
        assert_eq!(chi_psi_eval(&d, &neg, &cfg).unwrap(), (-Phase::G, g("3")));
        let bad = CoverTorusElement::lift(TorusElement::iota(1, SquareClassElement::PI));
        assert!(chi_psi_eval(&d, &bad, &cfg).is_err());
    }

    #[test]
    fn twists() {
        let d = data(&["2", "5"], "7");
        assert_eq!(
            quadratic_twist(&d, SquareClassElement::U0).unwrap().alpha,
            vec![g("-2"), g("-5")]
        );
        assert_eq!(quadratic_twist(&d, SquareClassElement::ONE).unwrap(), d);
        assert_eq!(
            quadratic_twist(&d, SquareClassElement::PI),
            Err(Error::TwistNotUnramified)
        );
        assert_eq!(
            quadratic_twist(&d, SquareClassElement::PI_U0),
            Err(Error::TwistNotUnramified)
        );
    }

    #[test]
    fn weyl_action_on_alpha() {
        let alpha = vec![g("2"), g("3")];
        assert_eq!(
            weyl_act_alpha(&SignedPermutation::swap(2, 0, 1), &alpha).unwrap(),
            vec![g("3"), g("2")]
        );
        assert_eq!(
            weyl_act_alpha(&SignedPermutation::longest(2), &alpha).unwrap(),
            vec![g("1/2"), g("1/3")]
        );
        let flips = SignedPermutation::flip(2, 0).compose(&SignedPermutation::flip(2, 1));
        assert_eq!(flips, SignedPermutation::longest(2));
        // right action: (w1 w2)·α = w2·(w1·α)
        for w1 in elements(2) {
            for w2 in elements(2) {
                let lhs = weyl_act_alpha(&w1.compose(&w2), &alpha).unwrap();
                let rhs = weyl_act_alpha(&w2, &weyl_act_alpha(&w1, &alpha).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn extension_sets() {
        let labels = extension_set(&data(&["2", "3"], "7"));
        assert_eq!(labels[1].alpha, vec![g("-2"), g("-3")]);
        assert_eq!(labels[1].beta, g("7"));
        let labels = extension_set(&data(&["2"], "7"));
        assert_eq!(labels[1].beta, g("-7"));
        for (i, a) in labels.iter().enumerate() {
            for b in &labels[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn r_omega_examples() {
        assert_eq!(r_omega(&data(&["i"], "1")).unwrap().order(), 1);
        assert_eq!(r_omega(&data(&["2"], "1")).unwrap().order(), 1);
        assert_eq!(r_omega(&data(&["5", "-5"], "1")).unwrap().order(), 2);
        assert_eq!(r_omega(&data(&["5", "-1/5"], "1")).unwrap().order(), 2);
        assert_eq!(r_omega(&data(&["2", "3"], "1")).unwrap().order(), 1);
        assert_eq!(r_omega(&data(&["i", "i"], "1")).unwrap().order(), 2);
        assert_eq!(
            r_omega(&data(&["i", "2", "i", "-2"], "1")).unwrap().order(),
            2
        );
        assert_eq!(
            r_omega(&data(&["i", "2", "3", "-2"], "1")).unwrap().order(),
            1
        );
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify(&data(&["i", "-i"], "1")).unwrap(),
            Classification::TwoGenericSummands
        );
        assert_eq!(
            classify(&data(&["3/5+4/5i"], "1")).unwrap(),
            Classification::Irreducible
        );
        assert_eq!(
            classify(&data(&["2", "-2"], "1")).unwrap(),
            Classification::Unknown
        );
        assert_eq!(
            classify(&data(&["i", "3/5+4/5i"], "1")).unwrap(),
            Classification::Irreducible
        );
    }

    #[test]
    fn l_factors() {
        assert_eq!(l_factor_u0(3, 0), BigRational::new(1.into(), 2.into()));
        assert_eq!(l_factor_u0(3, 1), BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!(UnramifiedData::new(vec![g("0")], g("1"), Branch::Plus, EtaChoice::Eta1).is_err());
        assert!(UnramifiedData::new(vec![g("1")], g("0"), Branch::Plus, EtaChoice::Eta1).is_err());
        assert!(UnramifiedData::new(vec![], g("1"), Branch::Plus, EtaChoice::Eta1).is_err());
    }
}
