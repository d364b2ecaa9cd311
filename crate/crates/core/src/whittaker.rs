//! Closed-form spherical Whittaker functions on the torus of the cover.
//!
//! A value is stored as `phase · v^{v_power} · β^{beta_power} · body(α)` with
//! `v = q^{1/2}` and `body` an exact Laurent polynomial, so the same value can be
//! printed symbolically or specialized at exact Satake parameters.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::characters::{extension_set, Branch, EtaChoice, ExtensionLabel, UnramifiedData};
use crate::exact::{g_values, GaussRat, Scalar};
use crate::field_arith::{
    gamma_weil, hilbert, FieldConfig, Phase, Sign, SquareClassElement, UnitClass,
};
use crate::laurent::LaurentPoly;
use crate::linalg::rank;
use crate::torus::{normal_form, CoverTorusElement, HNormalForm, TorusElement};
use crate::weyl::{alternator, divide_by_delta};
use crate::Error;

type SC = SquareClassElement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhittakerValue {
    pub phase: Phase,
    pub v_power: i64,
    pub beta_power: i64,
    pub body: LaurentPoly,
}

impl WhittakerValue {
    pub fn zero(n: usize) -> Self {
        Self {
            phase: Phase::ONE,
            v_power: 0,
            beta_power: 0,
            body: LaurentPoly::zero(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn mul_sign(mut self, s: Sign) -> Self {
        if self.is_zero() {
            return self;
        }
        self.phase = self.phase.mul_sign(s);
        self
    }

    /// Substitutes exact `α`, `β` and `g = γ_ψ(π)`.
    pub fn specialize(
        &self,
        alpha: &[GaussRat],
        beta: &GaussRat,
        cfg: &FieldConfig,
        g: &GaussRat,
    ) -> Result<Scalar, Error> {
        let q = cfg.q();
        if self.is_zero() {
            return Ok(Scalar::zero(q));
        }
        let b = beta
            .pow(self.beta_power)
            .ok_or_else(|| Error::InvalidConfig("beta must be nonzero".into()))?;
        let body = self.body.eval(alpha, q)?;
        Ok(
            &(&(&Scalar::from_phase(q, self.phase, g) * &Scalar::v_pow(q, self.v_power))
                * &Scalar::from_gauss(q, b))
                * &body,
        )
    }
}

impl fmt::Display for WhittakerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(f, "{}", self.phase)?;
        if self.v_power != 0 {
            write!(f, " * v^{}", self.v_power)?;
        }
        if self.beta_power != 0 {
            write!(f, " * beta^{}", self.beta_power)?;
        }
        write!(f, " * ({})", self.body)
    }
}

/// `k_i = ord(a_i)` for `t = diag(a_n, …, a_1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusOrders {
    pub k: Vec<i64>,
}

impl TorusOrders {
    pub fn new(k: Vec<i64>) -> Self {
        Self { k }
    }

    pub fn rank(&self) -> usize {
        self.k.len()
    }

    /// `0 ≤ k₁ ≤ k₂ ≤ … ≤ kₙ`.
    pub fn is_dominant(&self) -> bool {
        self.k.first().is_none_or(|&k| k >= 0) && self.k.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn total(&self) -> i64 {
        self.k.iter().sum()
    }

    /// `[diag(π^{k}), 1]` in the cover.
    pub fn torus_point(&self) -> CoverTorusElement {
        CoverTorusElement::lift(TorusElement::sp(
            self.k.iter().map(|&e| SC::pi_pow(e)).collect(),
        ))
    }
}

impl fmt::Display for TorusOrders {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.k.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dominant orders with `Σk_i ≤ max_sum`, in lexicographic order.
pub fn dominant_orders(n: usize, max_sum: i64) -> Vec<TorusOrders> {
    fn rec(n: usize, lo: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<TorusOrders>) {
        if cur.len() == n {
            out.push(TorusOrders::new(cur.clone()));
            return;
        }
        let slots = (n - cur.len()) as i64;
        let mut k = lo;
        while k * slots <= left {
            cur.push(k);
            rec(n, k, left - k, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(n, 0, max_sum, &mut Vec::new(), &mut out);
    out
}

/// Dominant orders with `k_n ≤ k_max`, in lexicographic order.
pub fn dominant_orders_bounded(n: usize, k_max: i64) -> Vec<TorusOrders> {
    fn rec(n: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<TorusOrders>) {
        if cur.len() == n {
            out.push(TorusOrders::new(cur.clone()));
            return;
        }
        for k in lo..=hi {
            cur.push(k);
            rec(n, k, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, k_max, &mut Vec::new(), &mut out);
    out
}

/// `δ(t)^{1/2} = q^{-Σ i·k_i}` as a power of `v`.
pub fn delta_half(k: &TorusOrders) -> i64 {
    -2 * k
        .k
        .iter()
        .enumerate()
        .map(|(i, &k)| (i as i64 + 1) * k)
        .sum::<i64>()
}

/// `η_π(−y)` for a unit class `y`.
fn unit_branch_coefficient(y: SC, cfg: &FieldConfig) -> Sign {
    cfg.eta_pi_minus_one() * y.unit.legendre()
}

fn check_y(y: SC) -> Result<(), Error> {
    if y.ord == 0 || y.ord == 1 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "y must have order 0 or 1, got {y}"
        )))
    }
}

/// `D(α, y)`.
pub fn d_factor(n: usize, y: SC, cfg: &FieldConfig) -> Result<LaurentPoly, Error> {
    check_y(y)?;
    let one = LaurentPoly::one(n);
    let e = |pairs: &[(usize, i32)]| {
        let mut a = vec![0; n];
        for &(i, x) in pairs {
            a[i] += x;
        }
        a
    };
    let mut d = one.clone();
    for i in 0..n {
        for j in i + 1..n {
            let f1 = &one - &LaurentPoly::term(n, e(&[(j, 1), (i, -1)]), -2, BigInt::from(1));
            let f2 = &one - &LaurentPoly::term(n, e(&[(j, 1), (i, 1)]), -2, BigInt::from(1));
            d = &(&d * &f1) * &f2;
        }
    }
    for i in 0..n {
        let f = if y.ord == 0 {
            let c = unit_branch_coefficient(y, cfg).to_i64();
            &one + &LaurentPoly::term(n, e(&[(i, 1)]), -1, BigInt::from(c))
        } else {
            &one - &LaurentPoly::term(n, e(&[(i, 2)]), -2, BigInt::from(1))
        };
        d = &d * &f;
    }
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum BodyKind {
    /// `∏(1 − c·v^{-1}·α_i^{-1})·α_i^{k_i+i}`.
    Unit(Sign),
    /// `∏α_i^{k_i+i}`.
    Pi,
}

type BodyCache = Mutex<HashMap<(BodyKind, Vec<i64>), Arc<LaurentPoly>>>;

fn body_cache() -> &'static BodyCache {
    static CACHE: OnceLock<BodyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn numerator(kind: BodyKind, k: &[i64]) -> LaurentPoly {
    let n = k.len();
    let mut p = LaurentPoly::one(n);
    for (i, &ki) in k.iter().enumerate() {
        let mut a = vec![0; n];
        a[i] = (ki + i as i64 + 1) as i32;
        let top = LaurentPoly::term(n, a.clone(), 0, BigInt::from(1));
        let f = match kind {
            BodyKind::Pi => top,
            BodyKind::Unit(c) => {
                a[i] -= 1;
                &top - &LaurentPoly::term(n, a, -1, BigInt::from(c.to_i64()))
            }
        };
        p = &p * &f;
    }
    p
}

fn body(kind: BodyKind, k: &[i64]) -> Result<Arc<LaurentPoly>, Error> {
    let key = (kind, k.to_vec());
    if let Some(b) = body_cache().lock().expect("body cache poisoned").get(&key) {
        return Ok(b.clone());
    }
    let b = Arc::new(divide_by_delta(&alternator(&numerator(kind, k)))?);
    body_cache()
        .lock()
        .expect("body cache poisoned")
        .insert(key, b.clone());
    Ok(b)
}

/// The alternating numerators used by the Whittaker bodies, exposed for
/// division round-trip checks.
pub fn unit_numerator(k: &TorusOrders, c: Sign) -> LaurentPoly {
    numerator(BodyKind::Unit(c), &k.k)
}

pub fn pi_numerator(k: &TorusOrders) -> LaurentPoly {
    numerator(BodyKind::Pi, &k.k)
}

/// The `Sp` Whittaker function of the `y`-orbit at `[diag(π^k), 1]`,
/// normalized to be `1` at the identity.
pub fn sp_whittaker(
    n: usize,
    y: SC,
    k: &TorusOrders,
    cfg: &FieldConfig,
) -> Result<WhittakerValue, Error> {
    check_y(y)?;
    if k.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: k.rank(),
        });
    }
    if !k.is_dominant() {
        return Ok(WhittakerValue::zero(n));
    }
    let kind = if y.ord == 0 {
        BodyKind::Unit(unit_branch_coefficient(y, cfg))
    } else {
        BodyKind::Pi
    };
    Ok(WhittakerValue {
        phase: gamma_weil(SC::pi_pow(k.total()), cfg).inv(cfg),
        v_power: delta_half(k),
        beta_power: 0,
        body: (*body(kind, &k.k)?).clone(),
    })
}

/// The `SL₂` value with `D = 1 − q^{-1}α²` divided out:
/// `q^{-k}·γ_ψ^{-1}(π^k)·Σ_{j=0}^{k} α^{k−2j}`.
pub fn rank_one_whittaker(k1: i64, cfg: &FieldConfig) -> WhittakerValue {
    if k1 < 0 {
        return WhittakerValue::zero(1);
    }
    let body = LaurentPoly::from_terms(
        1,
        (0..=k1).map(|j| {
            (
                crate::laurent::Monomial::new(vec![(k1 - 2 * j) as i32], 0),
                BigInt::from(1),
            )
        }),
    );
    WhittakerValue {
        phase: gamma_weil(SC::pi_pow(k1), cfg).inv(cfg),
        v_power: -2 * k1,
        beta_power: 0,
        body,
    }
}

/// The extension function `k^{η±}` on the cover of `GSp(2n)` evaluated at a
/// torus element already in normal form.
pub fn k_from_normal_form(
    eta: EtaChoice,
    branch: Branch,
    nf: &HNormalForm,
    cfg: &FieldConfig,
) -> Result<WhittakerValue, Error> {
    let n = nf.t.len();
    let k = TorusOrders::new(nf.k());
    if nf.m != branch.parity() || !k.is_dominant() {
        return Ok(WhittakerValue::zero(n));
    }
    let kind = match branch {
        Branch::Plus => BodyKind::Unit(cfg.eta_pi_minus_one()),
        Branch::Minus => BodyKind::Pi,
    };
    let phase = Phase::from_sign(nf.eps * eta.on_unit(nf.u))
        .mul(gamma_weil(nf.b.pow(n as i64), cfg).inv(cfg), cfg)
        .mul(gamma_weil(nf.t_det(), cfg).inv(cfg), cfg);
    Ok(WhittakerValue {
        phase,
        v_power: delta_half(&k),
        beta_power: nf.l(),
        body: (*body(kind, &k.k)?).clone(),
    })
}

/// `k^{η±}_{α,β}(h)`; `α` and `β` enter only on specialization.
pub fn k_eval(
    d: &UnramifiedData,
    h: &CoverTorusElement,
    cfg: &FieldConfig,
) -> Result<WhittakerValue, Error> {
    if h.rank() != d.n {
        return Err(Error::DimensionMismatch {
            expected: d.n,
            found: h.rank(),
        });
    }
    k_from_normal_form(d.eta, d.branch, &normal_form(h, cfg), cfg)
}

/// `k^{η±}_{α,β}(h)` as an exact scalar with `g` specialized to `g`.
pub fn k_eval_scalar(
    d: &UnramifiedData,
    h: &CoverTorusElement,
    cfg: &FieldConfig,
    g: &GaussRat,
) -> Result<Scalar, Error> {
    k_eval(d, h, cfg)?.specialize(&d.alpha, &d.beta, cfg, g)
}

/// The Whittaker function attached to the orbit of `y ∈ {1, u0, π, πu0}`,
/// built directly from the `Sp` value of that orbit.
pub fn orbit_whittaker(
    d: &UnramifiedData,
    y: SC,
    h: &CoverTorusElement,
    cfg: &FieldConfig,
) -> Result<WhittakerValue, Error> {
    check_y(y)?;
    let n = d.n;
    let nf = normal_form(h, cfg);
    let k = TorusOrders::new(nf.k());
    if nf.m as i64 != y.ord || !k.is_dominant() {
        return Ok(WhittakerValue::zero(n));
    }
    let bn = nf.b.pow(n as i64);
    let twist = hilbert(SC::unit(y.unit), bn * nf.t_det(), cfg);
    let mut w = sp_whittaker(n, y, &k, cfg)?;
    w.phase = Phase::from_sign(nf.eps * d.eta.on_unit(nf.u) * twist)
        .mul(gamma_weil(bn, cfg).inv(cfg), cfg)
        .mul(gamma_weil(nf.t_det(), cfg).inv(cfg), cfg);
    w.beta_power = nf.l();
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KFunction {
    pub label: ExtensionLabel,
    pub eta: EtaChoice,
}

impl KFunction {
    pub fn data(&self) -> UnramifiedData {
        UnramifiedData {
            n: self.label.alpha.len(),
            alpha: self.label.alpha.clone(),
            beta: self.label.beta.clone(),
            branch: self.label.sign,
            eta: self.eta,
        }
    }

    pub fn eval(&self, h: &CoverTorusElement, cfg: &FieldConfig) -> Result<WhittakerValue, Error> {
        k_eval(&self.data(), h, cfg)
    }

    pub fn eval_scalar(
        &self,
        h: &CoverTorusElement,
        cfg: &FieldConfig,
        g: &GaussRat,
    ) -> Result<Scalar, Error> {
        k_eval_scalar(&self.data(), h, cfg, g)
    }
}

/// `{k^{η±}_{α,β}, k^{η±}_{−α,(−1)ⁿβ}}`, in the order of [`extension_set`].
pub fn spanning_set(d: &UnramifiedData) -> [KFunction; 4] {
    extension_set(d).map(|label| KFunction { label, eta: d.eta })
}

/// Dominant `k` with `Σk_i ≤ 4`, both `m`-parities and both unit classes of `λ`.
pub fn default_probes(n: usize) -> Vec<CoverTorusElement> {
    probes(n, 4, &[0])
}

/// Probes `[π^{l+k}, π^{2l−m}·u]` over the given grid; `m` is the parity of `ord λ`.
pub fn probes(n: usize, max_sum: i64, ls: &[i64]) -> Vec<CoverTorusElement> {
    let mut out = Vec::new();
    for k in dominant_orders(n, max_sum) {
        for m in [0i64, 1] {
            for u in [UnitClass::Trivial, UnitClass::U0] {
                for &l in ls {
                    let t = k.k.iter().map(|&e| SC::pi_pow(l + e)).collect();
                    out.push(CoverTorusElement::lift(TorusElement::new(
                        t,
                        SC::new(2 * l - m, u),
                    )));
                }
            }
        }
    }
    out
}

/// Rank of the `4 × |probes|` evaluation matrix of the spanning set, computed
/// for both admissible values of `g`; the two must agree.
pub fn rank_of_span(
    d: &UnramifiedData,
    probes: &[CoverTorusElement],
    cfg: &FieldConfig,
) -> Result<usize, Error> {
    if probes.is_empty() {
        return Ok(0);
    }
    let fs = spanning_set(d);
    let mut ranks = Vec::with_capacity(2);
    for g in g_values(cfg) {
        let rows = fs
            .iter()
            .map(|f| {
                probes
                    .iter()
                    .map(|h| f.eval_scalar(h, cfg, &g))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        ranks.push(rank(&rows));
    }
    if ranks[0] != ranks[1] {
        return Err(Error::InvariantViolation(format!(
            "rank depends on the choice of g: {} vs {}",
            ranks[0], ranks[1]
        )));
    }
    Ok(ranks[0])
}

/// A central element `(a·I, ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralPoint {
    pub a: SC,
    pub eps: Sign,
}

impl CentralPoint {
    pub fn element(&self, n: usize) -> CoverTorusElement {
        CoverTorusElement::new(TorusElement::scalar(n, self.a), self.eps)
    }
}

impl fmt::Display for CentralPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}I,{})", self.a, self.eps)
    }
}

#[derive(Debug, Clone)]
pub struct CentralCharacter {
    pub label: ExtensionLabel,
    /// Points where the function is nonzero and the ratio was taken.
    pub support_probes: usize,
    pub values: Vec<(CentralPoint, Scalar)>,
}

#[derive(Debug, Clone)]
pub struct EquivarianceReport {
    pub characters: Vec<CentralCharacter>,
    pub constant: bool,
    pub pairwise_distinct: bool,
    pub genuine: bool,
}

impl EquivarianceReport {
    pub fn ok(&self) -> bool {
        self.constant && self.pairwise_distinct && self.genuine
    }
}

pub fn central_points() -> Vec<CentralPoint> {
    let mut out = Vec::new();
    for a in [
        SC::ONE,
        SC::U0,
        SC::PI,
        SC::PI_U0,
        SC::pi_pow(2),
        SC::pi_pow(-1),
    ] {
        for eps in [Sign::Plus, Sign::Minus] {
            out.push(CentralPoint { a, eps });
        }
    }
    out
}

/// For `n` odd, computes `f(z·h)/f(h)` for each of the four functions over
/// central `z = (a·I, ε)` and probes `h`, and checks that each ratio is a
/// character independent of `h` and that the four characters differ.
pub fn central_equivariance_check(
    d: &UnramifiedData,
    cfg: &FieldConfig,
) -> Result<EquivarianceReport, Error> {
    if d.n.is_multiple_of(2) {
        return Err(Error::Unsupported("odd rank".into()));
    }
    let g = g_values(cfg)[0].clone();
    let hs = probes(d.n, 4, &[-1, 0, 1]);
    let zs = central_points();
    let mut characters = Vec::new();
    let mut constant = true;
    for f in spanning_set(d) {
        let mut base = Vec::new();
        for h in &hs {
            let v = f.eval_scalar(h, cfg, &g)?;
            if !v.is_zero() {
                base.push((h, v));
            }
        }
        let mut values = Vec::new();
        for z in &zs {
            let ze = z.element(d.n);
            let mut mu: Option<Scalar> = None;
            for (h, v) in &base {
                let r = &f.eval_scalar(&ze.mul(h, cfg), cfg, &g)? / v;
                match &mu {
                    None => mu = Some(r),
                    Some(m) if *m == r => {}
                    Some(_) => constant = false,
                }
            }
            values.push((*z, mu.unwrap_or_else(|| Scalar::zero(cfg.q()))));
        }
        characters.push(CentralCharacter {
            label: f.label,
            support_probes: base.len(),
            values,
        });
    }
    let genuine = characters.iter().all(|c| {
        c.values
            .iter()
            .filter(|(z, _)| z.a == SC::ONE && z.eps == Sign::Minus)
            .all(|(_, v)| *v == -&Scalar::one(cfg.q()))
    });
    let mut pairwise_distinct = true;
    for i in 0..characters.len() {
        for j in i + 1..characters.len() {
            if characters[i].values == characters[j].values {
                pairwise_distinct = false;
            }
        }
    }
    Ok(EquivarianceReport {
        characters,
        constant,
        pairwise_distinct,
        genuine,
    })
}

/// `±(L(η_{u0},0)/L(η_{u0},1))^{n/2} = ±((1+q^{-1})/2)^{n/2}`.
pub fn l_ratio_eigenvalues(
    n: usize,
    cfg: &FieldConfig,
) -> Result<(BigRational, BigRational), Error> {
    if n % 2 == 1 {
        return Err(Error::Unsupported("even rank".into()));
    }
    let q = BigRational::from_integer(BigInt::from(cfg.q()));
    let one = BigRational::from_integer(BigInt::from(1));
    let two = BigRational::from_integer(BigInt::from(2));
    let base = (one + q.recip()) / two;
    let mut e = BigRational::from_integer(BigInt::from(1));
    for _ in 0..n / 2 {
        e *= &base;
    }
    Ok((e.clone(), -e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::positive_roots;

    fn cfg(q: u64) -> FieldConfig {
        FieldConfig::new(q).unwrap()
    }

    #[test]
    fn delta_half_matches_root_sum() {
        assert_eq!(delta_half(&TorusOrders::new(vec![0, 0, 0])), 0);
        assert_eq!(delta_half(&TorusOrders::new(vec![1])), -2);
        assert_eq!(delta_half(&TorusOrders::new(vec![0, 1])), -4);
        for k in dominant_orders(3, 5) {
            let pairing: i64 = positive_roots(3)
                .iter()
                .map(|r| r.iter().zip(&k.k).map(|(&a, &b)| a as i64 * b).sum::<i64>())
                .sum();
            assert_eq!(delta_half(&k), -pairing);
        }
    }

    #[test]
    fn dominant_grids() {
        assert_eq!(dominant_orders(1, 4).len(), 5);
        assert_eq!(dominant_orders(2, 2).len(), 4);
        assert!(dominant_orders(3, 4)
            .iter()
            .all(|k| k.is_dominant() && k.total() <= 4));
        assert_eq!(dominant_orders_bounded(2, 2).len(), 6);
        assert!(!TorusOrders::new(vec![1, 0]).is_dominant());
        assert!(!TorusOrders::new(vec![-1, 0]).is_dominant());
    }

    #[test]
    fn d_factor_rank_one() {
        let c = cfg(5);
        let d = d_factor(1, SC::ONE, &c).unwrap();
        assert_eq!(d, LaurentPoly::parse("1 + 1 * v^-1 * a1^1", 1).unwrap());
        let d = d_factor(1, SC::PI, &c).unwrap();
        assert_eq!(d, LaurentPoly::parse("1 + -1 * v^-2 * a1^2", 1).unwrap());
        let d = d_factor(1, SC::ONE, &cfg(3)).unwrap();
        assert_eq!(d, LaurentPoly::parse("1 + -1 * v^-1 * a1^1", 1).unwrap());
        assert!(d_factor(1, SC::pi_pow(2), &c).is_err());
        let factors = [
            "1 + -1 * v^-2 * a1^-1 * a2^1",
            "1 + -1 * v^-2 * a1^1 * a2^1",
            "1 + 1 * v^-1 * a1^1 * a2^0",
            "1 + 1 * v^-1 * a1^0 * a2^1",
        ];
        let direct = factors.iter().fold(LaurentPoly::one(2), |acc, f| {
            &acc * &LaurentPoly::parse(f, 2).unwrap()
        });
        assert_eq!(d_factor(2, SC::ONE, &c).unwrap(), direct);
    }

    #[test]
    fn rank_one_agrees_with_sp() {
        for q in [3, 5, 9] {
            let c = cfg(q);
            for k in 0..=10 {
                let sp = sp_whittaker(1, SC::PI, &TorusOrders::new(vec![k]), &c).unwrap();
                assert_eq!(sp, rank_one_whittaker(k, &c));
            }
        }
    }

    #[test]
    fn identity_values() {
        let c = cfg(7);
        for n in 1..=3 {
            for y in SC::REPRESENTATIVES {
                let w = sp_whittaker(n, y, &TorusOrders::new(vec![0; n]), &c).unwrap();
                assert!(
                    w.body.is_one() && w.phase == Phase::ONE && w.v_power == 0,
                    "n={n} y={y}: {w}"
                );
            }
        }
    }

    #[test]
    fn off_cone_vanishes() {
        let c = cfg(3);
        assert!(sp_whittaker(2, SC::ONE, &TorusOrders::new(vec![1, 0]), &c)
            .unwrap()
            .is_zero());
        assert!(sp_whittaker(1, SC::PI, &TorusOrders::new(vec![-1]), &c)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn k_function_basics() {
        let c = cfg(5);
        let d = UnramifiedData::new(
            vec![GaussRat::from_int(2)],
            GaussRat::from_int(3),
            Branch::Plus,
            EtaChoice::Eta1,
        )
        .unwrap();
        let id = CoverTorusElement::identity(1);
        let w = k_eval(&d, &id, &c).unwrap();
        assert_eq!(w.to_string(), "+1 * (1 * v^0 * a1^0)");
        let odd = CoverTorusElement::lift(TorusElement::iota(1, SC::PI));
        assert!(k_eval(&d, &odd, &c).unwrap().is_zero());
        let neg = CoverTorusElement::minus_one(1);
        assert_eq!(
            k_eval(&d, &neg, &c).unwrap(),
            w.clone().mul_sign(Sign::Minus)
        );
    }

    #[test]
    fn l_ratio_values() {
        let (p, m) = l_ratio_eigenvalues(2, &cfg(3)).unwrap();
        assert_eq!(p, BigRational::new(2.into(), 3.into()));
        assert_eq!(m, -p);
        let (p, _) = l_ratio_eigenvalues(4, &cfg(5)).unwrap();
        assert_eq!(p, BigRational::new(9.into(), 25.into()));
        assert!(l_ratio_eigenvalues(3, &cfg(5)).is_err());
    }
}
