//! A quick run of the library's invariants, used by `mwhit selfcheck`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characters::{
    r_omega_brute, r_omega_criterion, weyl_act_alpha, Branch, EtaChoice, UnramifiedData,
};
use crate::exact::{g_values, GaussRat};
use crate::field_arith::{
    gamma_weil, hilbert, FieldConfig, Sign, SquareClassElement as SC, UnitClass,
};
use crate::laurent::{LaurentPoly, Monomial};
use crate::torus::{cocycle, normal_form, CoverTorusElement, TorusElement};
use crate::weyl::{alternator, alternator_naive, elements};
use crate::whittaker::{
    central_equivariance_check, k_eval_scalar, probes, rank_one_whittaker, sp_whittaker,
    TorusOrders,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub q: u64,
    pub n: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfcheckReport {
    pub checks: Vec<CheckLine>,
    pub passed: bool,
}

pub fn random_square_class(rng: &mut impl Rng, max_ord: i64) -> SC {
    let unit = if rng.gen() {
        UnitClass::U0
    } else {
        UnitClass::Trivial
    };
    SC::new(rng.gen_range(-max_ord..=max_ord), unit)
}

pub fn random_torus(rng: &mut impl Rng, n: usize) -> TorusElement {
    TorusElement::new(
        (0..n).map(|_| random_square_class(rng, 3)).collect(),
        random_square_class(rng, 3),
    )
}

/// A Laurent polynomial with up to `terms` terms, exponents in `-e..=e`,
/// `v`-exponents in `-2..=2` and coefficients in `-5..=5`.
pub fn random_laurent(rng: &mut impl Rng, n: usize, terms: usize, e: i32) -> LaurentPoly {
    LaurentPoly::from_terms(
        n,
        (0..terms).map(|_| {
            let alpha = (0..n).map(|_| rng.gen_range(-e..=e)).collect();
            (
                Monomial::new(alpha, rng.gen_range(-2..=2)),
                BigInt::from(rng.gen_range(-5..=5)),
            )
        }),
    )
}

/// A nonzero Gaussian rational drawn from a small pool that makes coincidences
/// such as `a = −b` or `a = b⁻¹` likely.
pub fn random_parameter(rng: &mut impl Rng) -> GaussRat {
    const POOL: [&str; 10] = [
        "2", "-2", "1/2", "-1/2", "3", "-3", "i", "-i", "3/5+4/5i", "1",
    ];
    POOL[rng.gen_range(0..POOL.len())]
        .parse()
        .expect("pool entries parse")
}

fn line(name: &str, q: u64, n: usize, passed: bool, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        name: name.into(),
        q,
        n,
        passed,
        detail: detail.into(),
    }
}

fn field_checks(cfg: &FieldConfig) -> Vec<CheckLine> {
    let q = cfg.q();
    let reps = SC::REPRESENTATIVES;
    let mut weil = true;
    let mut symbol = true;
    for a in reps {
        for b in reps {
            let lhs = gamma_weil(a * b, cfg);
            let rhs = gamma_weil(a, cfg)
                .mul(gamma_weil(b, cfg), cfg)
                .mul_sign(hilbert(a, b, cfg));
            weil &= lhs == rhs;
            symbol &= hilbert(a, b, cfg) == hilbert(b, a, cfg);
            for c in reps {
                symbol &= hilbert(a * b, c, cfg) == hilbert(a, c, cfg) * hilbert(b, c, cfg);
            }
        }
        if a != SC::ONE {
            symbol &= reps.iter().any(|&b| hilbert(a, b, cfg) == Sign::Minus);
        }
    }
    vec![
        line("weil-index-multiplicativity", q, 0, weil, "16 class pairs"),
        line(
            "hilbert-symbol-axioms",
            q,
            0,
            symbol,
            "symmetry, bilinearity, non-degeneracy",
        ),
    ]
}

fn torus_checks(cfg: &FieldConfig, n: usize, rng: &mut ChaCha8Rng) -> Vec<CheckLine> {
    let q = cfg.q();
    let mut ok = true;
    for _ in 0..500 {
        let (g1, g2, g3) = (
            random_torus(rng, n),
            random_torus(rng, n),
            random_torus(rng, n),
        );
        ok &= cocycle(&g1, &g2, cfg) * cocycle(&g1.mul(&g2), &g3, cfg)
            == cocycle(&g2, &g3, cfg) * cocycle(&g1, &g2.mul(&g3), cfg);
    }
    let mut round = true;
    for _ in 0..500 {
        let eps = if rng.gen() { Sign::Minus } else { Sign::Plus };
        let h = CoverTorusElement::new(random_torus(rng, n), eps);
        round &= normal_form(&h, cfg).recompose(cfg) == h;
    }
    vec![
        line("cocycle-identity", q, n, ok, "500 random triples"),
        line("normal-form-round-trip", q, n, round, "500 random elements"),
    ]
}

fn alternator_check(n: usize, rng: &mut ChaCha8Rng) -> CheckLine {
    let ok = (0..10).all(|_| {
        let p = random_laurent(rng, n, 4, 3);
        alternator(&p) == alternator_naive(&p)
    });
    line("alternator-agreement", 0, n, ok, "10 random polynomials")
}

fn whittaker_checks(cfg: &FieldConfig, n: usize) -> Vec<CheckLine> {
    let q = cfg.q();
    let mut out = Vec::new();
    let identity = SC::REPRESENTATIVES.iter().all(|&y| {
        sp_whittaker(n, y, &TorusOrders::new(vec![0; n]), cfg)
            .map(|w| w.body.is_one())
            .unwrap_or(false)
    });
    out.push(line("identity-value", q, n, identity, "all four orbits"));

    let alpha: Vec<GaussRat> = ["2", "-3", "5/7"][..n]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect();
    let g = g_values(cfg)[0].clone();
    let hs = probes(n, 2, &[0, 1]);
    let mut sym = true;
    for branch in [Branch::Plus, Branch::Minus] {
        let d = UnramifiedData::new(
            alpha.clone(),
            GaussRat::from_int(3),
            branch,
            EtaChoice::EtaPi,
        )
        .expect("valid data");
        let base: Vec<_> = hs.iter().map(|h| k_eval_scalar(&d, h, cfg, &g)).collect();
        for w in elements(n) {
            let dw = UnramifiedData {
                alpha: weyl_act_alpha(&w, &alpha).expect("rank matches"),
                ..d.clone()
            };
            for (h, v) in hs.iter().zip(&base) {
                sym &= k_eval_scalar(&dw, h, cfg, &g).ok() == v.clone().ok();
            }
        }
    }
    out.push(line(
        "weyl-symmetry",
        q,
        n,
        sym,
        format!("{} probes", hs.len()),
    ));

    if n % 2 == 1 {
        let d = UnramifiedData::new(alpha, GaussRat::from_int(3), Branch::Plus, EtaChoice::Eta1)
            .expect("valid data");
        let ok = central_equivariance_check(&d, cfg)
            .map(|r| r.ok())
            .unwrap_or(false);
        out.push(line(
            "central-equivariance",
            q,
            n,
            ok,
            "four distinct central characters",
        ));
    }
    out
}

pub fn run_selfcheck(n_max: usize, qs: &[u64]) -> SelfcheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checks = Vec::new();
    for n in 1..=n_max {
        checks.push(alternator_check(n, &mut rng));
        let ok = (0..50).all(|_| {
            let alpha = (0..n).map(|_| random_parameter(&mut rng)).collect();
            let d = UnramifiedData::new(alpha, GaussRat::one(), Branch::Plus, EtaChoice::Eta1)
                .expect("nonzero pool");
            r_omega_brute(&d) == r_omega_criterion(&d)
        });
        checks.push(line("r-omega-agreement", 0, n, ok, "50 random parameters"));
    }
    for &q in qs {
        let Ok(cfg) = FieldConfig::new(q) else {
            checks.push(line("field-config", q, 0, false, "invalid q"));
            continue;
        };
        checks.extend(field_checks(&cfg));
        let rank_one = (0..=10).all(|k| {
            sp_whittaker(1, SC::PI, &TorusOrders::new(vec![k]), &cfg).ok()
                == Some(rank_one_whittaker(k, &cfg))
        });
        checks.push(line("rank-one-agreement", q, 1, rank_one, "k <= 10"));
        for n in 1..=n_max {
            checks.extend(torus_checks(&cfg, n, &mut rng));
            checks.extend(whittaker_checks(&cfg, n));
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    SelfcheckReport { checks, passed }
}
