//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary so the PASS/FAIL lines are always printed. Each
//! criterion must succeed with exact arithmetic inside its time budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Proc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use metaplectic_whittaker::characters::{
    r_omega_brute, r_omega_criterion, weyl_act_alpha, Branch, Classification, EtaChoice,
    UnramifiedData,
};
use metaplectic_whittaker::cli::{
    cmd_classify, cmd_whittaker_table, render, Command, Envelope, JobConfig, TableResult,
};
use metaplectic_whittaker::exact::{g_values, GaussRat, Scalar};
use metaplectic_whittaker::field_arith::{
    gamma_weil, hilbert, FieldConfig, Phase, Sign, SquareClassElement as SC,
};
use metaplectic_whittaker::laurent::LaurentPoly;
use metaplectic_whittaker::selfcheck::{random_laurent, random_parameter, random_torus};
use metaplectic_whittaker::torus::{
    cocycle, conjugate_by_scalar_closed_form, conjugate_scalar_closed_form, CoverTorusElement,
    TorusElement,
};
use metaplectic_whittaker::weyl::{
    act, alternator, alternator_naive, divide_by_delta, elements, weyl_denominator,
};
use metaplectic_whittaker::whittaker::{
    central_equivariance_check, default_probes, dominant_orders, k_eval, l_ratio_eigenvalues,
    pi_numerator, probes, rank_of_span, rank_one_whittaker, sp_whittaker, spanning_set,
    unit_numerator, TorusOrders,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg(q: u64) -> FieldConfig {
    FieldConfig::new(q).expect("valid q")
}

fn g(s: &str) -> GaussRat {
    s.parse().expect("literal")
}

fn data(alpha: &[GaussRat], beta: &str, branch: Branch, eta: EtaChoice) -> UnramifiedData {
    UnramifiedData::new(alpha.to_vec(), g(beta), branch, eta).expect("valid data")
}

fn field_arithmetic() -> Outcome {
    let mut pairs = 0;
    for q in [3, 5, 7, 9] {
        let c = cfg(q);
        let reps = SC::REPRESENTATIVES;
        for a in reps {
            for b in reps {
                let lhs = gamma_weil(a * b, &c);
                let rhs = gamma_weil(a, &c)
                    .mul(gamma_weil(b, &c), &c)
                    .mul_sign(hilbert(a, b, &c));
                ensure(lhs == rhs, || {
                    format!("Weil index not multiplicative at q={q}, a={a}, b={b}")
                })?;
                ensure(hilbert(a, b, &c) == hilbert(b, a, &c), || {
                    format!("asymmetric at q={q} ({a},{b})")
                })?;
                for x in reps {
                    ensure(
                        hilbert(a * b, x, &c) == hilbert(a, x, &c) * hilbert(b, x, &c),
                        || format!("not bilinear at q={q} ({a}{b},{x})"),
                    )?;
                }
                pairs += 1;
            }
            if a != SC::ONE {
                ensure(
                    reps.iter().any(|&b| hilbert(a, b, &c) == Sign::Minus),
                    || format!("degenerate at q={q} a={a}"),
                )?;
            }
        }
        // (u0, π) = −1 for every odd q; (π, π) = +1 iff q ≡ 1 mod 4
        ensure(hilbert(SC::U0, SC::PI, &c) == Sign::Minus, || {
            format!("(u0,pi) != -1 at q={q}")
        })?;
        ensure(
            (hilbert(SC::PI, SC::PI, &c) == Sign::Plus) == (q % 4 == 1),
            || format!("(pi,pi) wrong at q={q}"),
        )?;
    }
    Ok(format!("{pairs} class pairs over q in {{3,5,7,9}}"))
}

fn cocycle_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut triples = 0;
    for q in [3, 5] {
        let c = cfg(q);
        for n in 1..=3 {
            for _ in 0..10_000 {
                let (g1, g2, g3) = (
                    random_torus(&mut rng, n),
                    random_torus(&mut rng, n),
                    random_torus(&mut rng, n),
                );
                let lhs = cocycle(&g1, &g2, &c) * cocycle(&g1.mul(&g2), &g3, &c);
                let rhs = cocycle(&g2, &g3, &c) * cocycle(&g1, &g2.mul(&g3), &c);
                ensure(lhs == rhs, || {
                    format!("cocycle identity fails at q={q}: {g1:?} {g2:?} {g3:?}")
                })?;
                triples += 1;
            }
            for _ in 0..500 {
                let eps = if rng.gen() { Sign::Minus } else { Sign::Plus };
                let h = CoverTorusElement::new(random_torus(&mut rng, n), eps);
                let a = random_torus(&mut rng, 1).t[0];
                let z = CoverTorusElement::new(TorusElement::scalar(n, a), eps);
                ensure(
                    h.conjugate(&z, &c) == conjugate_by_scalar_closed_form(&h, a, &c),
                    || format!("scalar conjugation closed form fails at q={q} h={h:?} a={a}"),
                )?;
                ensure(
                    z.conjugate(&h, &c) == conjugate_scalar_closed_form(a, eps, &h, &c),
                    || format!("conjugated scalar closed form fails at q={q} h={h:?} a={a}"),
                )?;
            }
        }
    }
    Ok(format!("{triples} random triples, 6000 conjugations"))
}

fn alternator_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..100 {
        let n = 1 + i % 4;
        let p = random_laurent(&mut rng, n, 5, 4);
        ensure(alternator(&p) == alternator_naive(&p), || {
            format!("alternators differ on {p}")
        })?;
    }
    let mut checks = 0;
    for n in 1..=3 {
        for _ in 0..5 {
            let a = alternator(&random_laurent(&mut rng, n, 4, 3));
            for w in elements(n) {
                let expected = if w.length() % 2 == 0 { a.clone() } else { -&a };
                ensure(act(&w, &a).map_err(|e| e.to_string())? == expected, || {
                    format!("antisymmetry fails for {w:?}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("100 polynomials, {checks} antisymmetry checks"))
}

fn division_suite() -> Outcome {
    let mut count = 0;
    for n in 1..=3 {
        let delta = weyl_denominator(n);
        for k in dominant_orders(n, 6) {
            for p in [
                unit_numerator(&k, Sign::Plus),
                unit_numerator(&k, Sign::Minus),
                pi_numerator(&k),
            ] {
                let a = alternator(&p);
                let quotient = divide_by_delta(&a).map_err(|e| format!("k={k}: {e}"))?;
                ensure(&quotient * &*delta == a, || {
                    format!("quotient times delta differs at k={k}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} round trips"))
}

fn whittaker_closed_forms() -> Outcome {
    let alpha = LaurentPoly::var(1, 0);
    let alpha_inv = LaurentPoly::monomial(vec![-1]);
    for q in [3, 5, 7, 9] {
        let c = cfg(q);
        for k in 0..=10i32 {
            let w = sp_whittaker(1, SC::PI, &TorusOrders::new(vec![k as i64]), &c)
                .map_err(|e| e.to_string())?;
            let display =
                &LaurentPoly::monomial(vec![k + 1]) - &LaurentPoly::monomial(vec![-k - 1]);
            ensure(&w.body * &(&alpha - &alpha_inv) == display, || {
                format!("SL2 display differs at q={q} k={k}")
            })?;
            // γ_ψ(π^k) depends on the class of π^k: 1 for k even, g for k odd,
            // and g⁻¹ = (π,π)·g since g² = (π,π)
            let phase = if k % 2 == 0 {
                Phase::ONE
            } else {
                Phase::G.mul_sign(c.pi_pi())
            };
            ensure(
                w.phase == phase && w.v_power == -2 * k as i64 && w.beta_power == 0,
                || format!("prefactor differs at q={q} k={k}: {w}"),
            )?;
            ensure(w == rank_one_whittaker(k as i64, &c), || {
                format!("rank-one value differs at q={q} k={k}")
            })?;
        }
        for n in 1..=3 {
            for y in SC::REPRESENTATIVES {
                let w = sp_whittaker(n, y, &TorusOrders::new(vec![0; n]), &c)
                    .map_err(|e| e.to_string())?;
                ensure(
                    w.body.is_one() && w.phase == Phase::ONE && w.v_power == 0,
                    || format!("identity value at q={q} n={n} y={y} is {w}"),
                )?;
            }
        }
    }
    let c = cfg(3);
    let mut support = 0;
    for n in 1..=3 {
        let d = data(
            &[g("2"), g("3"), g("5")][..n],
            "7",
            Branch::Plus,
            EtaChoice::EtaPi,
        );
        let total = 7usize.pow(n as u32);
        for code in 0..total {
            let k: Vec<i64> = (0..n)
                .map(|i| (code / 7usize.pow(i as u32) % 7) as i64 - 3)
                .collect();
            let ko = TorusOrders::new(k.clone());
            for y in SC::REPRESENTATIVES {
                let w = sp_whittaker(n, y, &ko, &c).map_err(|e| e.to_string())?;
                ensure(w.is_zero() != ko.is_dominant(), || {
                    format!("sp support wrong at k={ko} y={y}")
                })?;
                let t = k.iter().map(|&e| SC::pi_pow(e)).collect();
                let h = CoverTorusElement::lift(TorusElement::new(t, SC::new(-y.ord, y.unit)));
                for branch in [Branch::Plus, Branch::Minus] {
                    let v = k_eval(
                        &UnramifiedData {
                            branch,
                            ..d.clone()
                        },
                        &h,
                        &c,
                    )
                    .map_err(|e| e.to_string())?;
                    let on = ko.is_dominant() && y.ord == branch.parity() as i64;
                    ensure(v.is_zero() != on, || {
                        format!("k-function support wrong at k={ko} y={y} {branch}")
                    })?;
                }
                support += 1;
            }
        }
    }
    Ok(format!(
        "k <= 10 displays, identity values, {support} support points"
    ))
}

fn symmetry_suite() -> Outcome {
    let alpha = [g("2"), g("3/5+4/5i"), g("-1/3")];
    let mut evals = 0;
    for q in [3, 5] {
        let c = cfg(q);
        let gv = g_values(&c)[0].clone();
        for n in 1..=3 {
            let hs = probes(n, 4, &[0, 1]);
            let a = &alpha[..n];
            for eta in [EtaChoice::Eta1, EtaChoice::EtaPi] {
                for branch in [Branch::Plus, Branch::Minus] {
                    let d = data(a, "5", branch, eta);
                    let symbolic: Vec<_> = hs
                        .iter()
                        .map(|h| k_eval(&d, h, &c))
                        .collect::<Result<_, _>>()
                        .map_err(|e| e.to_string())?;
                    let base: Vec<Scalar> = symbolic
                        .iter()
                        .map(|w| w.specialize(a, &d.beta, &c, &gv))
                        .collect::<Result<_, _>>()
                        .map_err(|e| e.to_string())?;
                    for w in elements(n) {
                        let wa = weyl_act_alpha(&w, a).map_err(|e| e.to_string())?;
                        for (s, b) in symbolic.iter().zip(&base) {
                            let v = s
                                .specialize(&wa, &d.beta, &c, &gv)
                                .map_err(|e| e.to_string())?;
                            ensure(&v == b, || {
                                format!("not W-symmetric at q={q} n={n} w={w:?}")
                            })?;
                            evals += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{evals} exact comparisons"))
}

fn structure_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nontrivial = 0;
    for n in 1..=4 {
        for _ in 0..500 {
            let mut alpha: Vec<GaussRat> = (0..n).map(|_| random_parameter(&mut rng)).collect();
            if n % 2 == 0 && rng.gen_bool(0.3) {
                for i in (0..n).step_by(2) {
                    alpha[i + 1] = -&alpha[i];
                }
            }
            let d = data(&alpha, "1", Branch::Plus, EtaChoice::Eta1);
            let (b, c) = (r_omega_brute(&d), r_omega_criterion(&d));
            ensure(b == c, || {
                format!("R(omega) disagreement at alpha={alpha:?}")
            })?;
            ensure(n % 2 == 0 || b.order() == 1, || {
                format!("nontrivial R(omega) for odd n at {alpha:?}")
            })?;
            nontrivial += usize::from(b.order() == 2);
        }
    }
    let c = cfg(3);
    let gv = g_values(&c)[0].clone();
    let hs = default_probes(2);
    for a in ["i", "2", "3/5+4/5i", "-1/2"] {
        let d = data(&[g(a), -&g(a)], "3", Branch::Plus, EtaChoice::EtaPi);
        ensure(
            rank_of_span(&d, &hs, &c).map_err(|e| e.to_string())? == 2,
            || format!("rank != 2 at a={a}"),
        )?;
        let fs = spanning_set(&d);
        for h in &hs {
            for (x, y) in [(&fs[0], &fs[1]), (&fs[2], &fs[3])] {
                let (vx, vy) = (x.eval_scalar(h, &c, &gv), y.eval_scalar(h, &c, &gv));
                ensure(vx == vy, || {
                    format!("paired functions differ at a={a}, h={h:?}")
                })?;
            }
        }
    }
    for alpha in [
        vec!["2"],
        vec!["2", "3"],
        vec!["i", "3/5+4/5i"],
        vec!["2", "3", "5"],
    ] {
        let alpha: Vec<GaussRat> = alpha.into_iter().map(g).collect();
        let n = alpha.len();
        let d = data(&alpha, "3", Branch::Plus, EtaChoice::Eta1);
        let r = rank_of_span(&d, &default_probes(n), &c).map_err(|e| e.to_string())?;
        ensure(r == 4, || {
            format!("rank {r} != 4 for generic alpha={alpha:?}")
        })?;
    }
    Ok(format!(
        "2000 random parameters ({nontrivial} with R = 2), ranks 2 and 4"
    ))
}

fn equivariance_suite() -> Outcome {
    let mut lines = 0;
    for q in [3, 5] {
        let c = cfg(q);
        for (alpha, beta) in [(vec!["2"], "3"), (vec!["2", "3/5+4/5i", "-3"], "7")] {
            let alpha: Vec<GaussRat> = alpha.into_iter().map(g).collect();
            for eta in [EtaChoice::Eta1, EtaChoice::EtaPi] {
                let d = data(&alpha, beta, Branch::Plus, eta);
                let r = central_equivariance_check(&d, &c).map_err(|e| e.to_string())?;
                ensure(r.constant, || {
                    format!("ratio not constant at q={q} alpha={alpha:?}")
                })?;
                ensure(r.genuine, || format!("(I,-1) does not act by -1 at q={q}"))?;
                ensure(r.pairwise_distinct, || {
                    format!("central characters coincide at q={q} alpha={alpha:?}")
                })?;
                for ch in &r.characters {
                    ensure(ch.support_probes >= 20, || {
                        format!("only {} probes for {}", ch.support_probes, ch.label)
                    })?;
                }
                // on squares a²I the four characters agree
                for z in 0..r.characters[0].values.len() {
                    let (pt, v) = &r.characters[0].values[z];
                    if pt.a.is_square() {
                        ensure(r.characters.iter().all(|ch| &ch.values[z].1 == v), || {
                            format!("restriction differs at {pt}")
                        })?;
                    }
                }
                lines += 1;
            }
        }
    }
    Ok(format!(
        "{lines} configurations with four distinct characters"
    ))
}

fn l_ratio_oracle(q: u64, n: usize) -> BigRational {
    let qr = BigRational::from_integer(BigInt::from(q));
    // L(η_{u0}, s) = 1/(1 − η_{u0}(π) q^{-s}) with η_{u0}(π) = −1
    let l = |s: i32| -> BigRational {
        let mut qs = BigRational::one();
        for _ in 0..s {
            qs /= &qr;
        }
        (BigRational::one() + qs).recip()
    };
    let ratio = l(0) / l(1);
    (0..n / 2).fold(BigRational::one(), |acc, _| acc * &ratio)
}

fn classifier_suite() -> Outcome {
    for q in [3u64, 5, 7] {
        let mut job = JobConfig::new(Command::Classify);
        job.q = Some(q);
        job.alpha = Some(vec!["i".into(), "-i".into()]);
        let env = cmd_classify(&job).map_err(|e| e.to_string())?;
        ensure(
            env.results.classification == Classification::TwoGenericSummands,
            || format!("q={q}: {:?}", env.results),
        )?;
        let expected = BigRational::new(BigInt::from(q + 1), BigInt::from(2 * q));
        let [p, m] = env.results.eigenvalues.clone().ok_or("no eigenvalues")?;
        ensure(
            p == expected.to_string() && m == (-&expected).to_string(),
            || format!("q={q}: eigenvalues {p}, {m}"),
        )?;
    }
    for q in [3u64, 5, 7, 9, 25] {
        for n in [2usize, 4, 6, 8] {
            let (p, m) = l_ratio_eigenvalues(n, &cfg(q)).map_err(|e| e.to_string())?;
            let oracle = l_ratio_oracle(q, n);
            ensure(p == oracle && m == -&oracle && !p.is_zero(), || {
                format!("q={q} n={n}: {p} vs {oracle}")
            })?;
        }
    }
    Ok("q in {3,5,7}, n in {2,4,6,8}".into())
}

fn determinism_suite() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_mwhit");
    let run = |workers: &str, output: &str| -> Result<Vec<u8>, String> {
        let out = Proc::new(bin)
            .args([
                "--workers",
                workers,
                "--output",
                output,
                "whittaker-table",
                "--q",
                "3",
                "--n",
                "2",
            ])
            .args(["--alpha", "2,3/5+4/5i", "--y", "1", "--k-max", "4"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            String::from_utf8_lossy(&out.stderr).into_owned()
        })?;
        Ok(out.stdout)
    };
    for output in ["json", "csv"] {
        let first = run("1", output)?;
        ensure(first == run("1", output)?, || {
            format!("{output}: repeated run differs")
        })?;
        ensure(first == run("4", output)?, || {
            format!("{output}: 1 vs 4 workers differ")
        })?;
    }
    let json = run("4", "json")?;
    let parsed: Envelope<TableResult> = serde_json::from_slice(&json).map_err(|e| e.to_string())?;
    let again = render(&parsed, parsed.config.output).map_err(|e| e.to_string())?;
    ensure(again.as_bytes() == json.as_slice(), || {
        "JSON does not round-trip".into()
    })?;
    let mut job = JobConfig::new(Command::WhittakerTable);
    job.q = Some(3);
    job.n = Some(2);
    job.y = Some("1".into());
    job.k_max = Some(4);
    job.alpha = Some(vec!["2".into(), "3/5+4/5i".into()]);
    let direct = render(
        &cmd_whittaker_table(&job).map_err(|e| e.to_string())?,
        job.output,
    )
    .map_err(|e| e.to_string())?;
    ensure(direct.as_bytes() == json.as_slice(), || {
        "library and binary output differ".into()
    })?;
    Ok(format!(
        "{} bytes identical across runs and worker counts",
        json.len()
    ))
}

fn main() {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("field arithmetic", 1, field_arithmetic),
        ("cocycle", 10, cocycle_suite),
        ("alternator", 30, alternator_suite),
        ("division", 30, division_suite),
        ("whittaker closed forms", 60, whittaker_closed_forms),
        ("weyl symmetry", 120, symmetry_suite),
        ("structure", 60, structure_suite),
        ("central equivariance", 30, equivariance_suite),
        ("classifier and eigenvalues", 5, classifier_suite),
        ("determinism", 10, determinism_suite),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(budget);
        let (ok, detail) = match result {
            Ok(d) if elapsed < budget => (true, d),
            Ok(d) => (false, format!("{d}; over time budget")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {:<28} {} ({:.2}s < {}s) {}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            detail
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
