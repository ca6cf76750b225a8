//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use calogero_core::kernel::zero_energy_states;
use calogero_core::multipoly::invariant_basis;
use calogero_core::radial::dressing::{build_r_vacuum, check_f_commutator_l, r_spectrum, LadderSign};
use calogero_core::radial::time::{check_canonical_commutator, resolve_mu_c, time_eigenstate_residual, Weights};
use calogero_core::radial::{coherent_state, radial_apply_word, realize, RadialVector};
use calogero_core::realization::{
    apply_generator, apply_t0, apply_tminus, apply_tplus, check_commutator_formula, check_su11_commutators,
    jastrow_conjugation_check, Generator, SystemParams,
};
use calogero_core::report::Status;
use calogero_core::session::{random_point, random_univariate};
use calogero_core::{GaussScalar, MultiPoly, Rational};

use common::{brute_force_kernel_dimension, random_lambda, random_rational};

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Runs `body`, prints the verdict line, and fails the test on error or overrun.
fn criterion(id: u32, title: &str, budget: Duration, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = match outcome {
        Ok(detail) if elapsed > budget => Err(format!("{detail}; over budget ({elapsed:.2?} > {budget:?})")),
        other => other,
    };
    match &outcome {
        Ok(detail) => println!("PASS criterion {id:>2} {title}: {detail} [{elapsed:.2?}]"),
        Err(why) => println!("FAIL criterion {id:>2} {title}: {why} [{elapsed:.2?}]"),
    }
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Negative lowest weights from random physical parameters, plus fixed ones.
fn sample_weights(rng: &mut ChaCha8Rng, count: usize) -> Vec<Rational> {
    let mut out = vec![q("-5/4"), q("-7/3"), q("-1/6")];
    while out.len() < count {
        let n = rng.gen_range(2..=4usize);
        let lambda = Rational::frac(rng.gen_range(1..=12), rng.gen_range(1..=5));
        let m = rng.gen_range(0..=6u32);
        let mu = SystemParams::new(n, lambda).unwrap().mu(m);
        if !out.contains(&mu) {
            out.push(mu);
        }
    }
    out
}

#[test]
fn criterion_01_su11_algebra() {
    criterion(1, "su(1,1) brackets on invariant bases", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut checked = 0;
        for n in 2..=4usize {
            for _ in 0..5 {
                let params = SystemParams::new(n, random_lambda(&mut rng)).unwrap();
                for m in 0..=8 {
                    let basis = invariant_basis(n, m).map_err(|e| e.to_string())?;
                    let rep = check_su11_commutators(&basis.elements, &params).map_err(|e| e.to_string())?;
                    ensure(rep.passed(), || format!("N={n} lambda={} m={m}: {:?}", params.lambda(), rep.residuals))?;
                    checked += rep.residuals.len();
                }
            }
        }
        Ok(format!("{checked} zero residuals"))
    });
}

#[test]
fn criterion_02_commutator_formula() {
    criterion(2, "[T+, f(T-)] formula", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for trial in 0..20 {
            let n = rng.gen_range(2..=3usize);
            let params = SystemParams::new(n, random_lambda(&mut rng)).unwrap();
            let f = random_univariate(&mut rng, 4);
            let m = 2 * rng.gen_range(0..=3u32);
            let basis = invariant_basis(n, m).map_err(|e| e.to_string())?;
            let p = basis
                .elements
                .iter()
                .fold(MultiPoly::zero(n), |acc, e| acc.checked_add(&e.scale_rational(&random_rational(&mut rng, 5, 3))).unwrap());
            let rep = check_commutator_formula(&f, &p, &params).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("trial {trial}: {:?}", rep.residuals))?;
        }
        Ok("20 random (f, p) pairs".into())
    });
}

#[test]
fn criterion_03_jastrow_conjugation() {
    criterion(3, "Jastrow conjugation at rational points", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut evaluations = 0;
        for n in 2..=4usize {
            let params = SystemParams::new(n, random_lambda(&mut rng)).unwrap();
            let points: Vec<Vec<Rational>> = (0..100).map(|_| random_point(&mut rng, n)).collect();
            for m in 0..=4 {
                for p in invariant_basis(n, m).map_err(|e| e.to_string())?.elements {
                    let rep = jastrow_conjugation_check(&p, &points, &params).map_err(|e| e.to_string())?;
                    ensure(rep.passed(), || format!("N={n} p={p}: {:?}", rep.residuals.iter().find(|r| !r.is_zero())))?;
                    evaluations += points.len();
                }
            }
        }
        Ok(format!("{evaluations} exact point evaluations"))
    });
}

/// Kernel bases used by criteria 4 and 5.
fn kernel_cases() -> Vec<(SystemParams, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cases = Vec::new();
    for n in 2..=3usize {
        let mut lambdas = vec![q("1/2"), q("-1/3")];
        lambdas.push(random_lambda(&mut rng));
        lambdas.push(random_lambda(&mut rng));
        for lambda in lambdas {
            let params = SystemParams::new(n, lambda).unwrap();
            for m in 0..=6 {
                cases.push((params.clone(), m));
            }
        }
    }
    cases
}

#[test]
fn criterion_04_zero_energy_kernels() {
    criterion(4, "zero-energy kernels against brute-force elimination", Duration::from_secs(120), || {
        let three = SystemParams::new(3, q("1/2")).unwrap();
        for (m, expected) in [(2, 0), (3, 1)] {
            let dim = zero_energy_states(&three, m).map_err(|e| e.to_string())?.dimension();
            ensure(dim == expected, || format!("N=3 m={m}: dimension {dim}, expected {expected}"))?;
        }
        let mut vectors = 0;
        for (params, m) in kernel_cases() {
            let k = zero_energy_states(&params, m).map_err(|e| e.to_string())?;
            let oracle = brute_force_kernel_dimension(params.n(), params.lambda(), m);
            ensure(k.dimension() == oracle, || {
                format!("N={} lambda={} m={m}: {} vs oracle {oracle}", params.n(), params.lambda(), k.dimension())
            })?;
            let mu: GaussScalar = k.mu().into();
            for v in &k.vectors {
                ensure(apply_tplus(v, &params).unwrap().is_zero(), || format!("T+ P != 0 for {v}"))?;
                let t0 = apply_t0(v, &params).unwrap();
                ensure(t0 == v.scale(&mu), || format!("T0 P != mu P for {v}"))?;
                vectors += 1;
            }
        }
        Ok(format!("{} cases, {vectors} kernel vectors re-verified", kernel_cases().len()))
    });
}

fn words(max_len: usize) -> Vec<Vec<Generator>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Generator>| {
                Generator::ALL.iter().map(move |&g| {
                    let mut w2 = w.clone();
                    w2.push(g);
                    w2
                })
            })
            .collect();
        out.extend(layer.clone());
    }
    out
}

#[test]
fn criterion_05_realization_consistency() {
    criterion(5, "concrete and radial actions agree", Duration::from_secs(120), || {
        let all_words = words(3);
        let mut comparisons = 0;
        for (params, m) in kernel_cases() {
            let k = zero_energy_states(&params, m).map_err(|e| e.to_string())?;
            for p in &k.vectors {
                let mut start = p.clone();
                for j in 0..=4 {
                    if j > 0 {
                        start = apply_tminus(&start, &params).unwrap();
                    }
                    for w in &all_words {
                        let concrete = w.iter().rev().try_fold(start.clone(), |acc, &g| apply_generator(g, &acc, &params));
                        let concrete = concrete.map_err(|e| e.to_string())?;
                        let radial = radial_apply_word(w, &RadialVector::basis(k.mu(), j));
                        let realized = realize(&radial, p, &params).map_err(|e| e.to_string())?;
                        ensure(concrete == realized, || format!("word {w:?} on T-^{j} {p}"))?;
                        comparisons += 1;
                    }
                }
            }
        }
        Ok(format!("{comparisons} word comparisons"))
    });
}

#[test]
fn criterion_06_time_operator() {
    criterion(6, "canonical commutator of the time operator", Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mus = sample_weights(&mut rng, 12);
        for mu in &mus {
            let w = resolve_mu_c(&Weights::new(mu.clone()).unwrap(), 20).map_err(|e| e.to_string())?;
            let rep = check_canonical_commutator(&w, 20, false).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("mu={mu}: {:?}", rep.residuals))?;
            ensure(!rep.conventions.is_empty(), || "no convention recorded".into())?;

            let rejected = w.rejected().ok_or("no rejected root")?;
            let bad = check_canonical_commutator(&w.clone().with_mu_c(rejected), 0, false).map_err(|e| e.to_string())?;
            let coeff = GaussScalar::new(Rational::zero(), -(Rational::from(2) * mu) - Rational::one());
            let expected = RadialVector::basis(mu.clone(), 0).scale(&coeff).to_string();
            let got = &bad.residuals[0].value;
            ensure(*got == expected, || format!("mu={mu}: rejected-root residual {got}, expected {expected}"))?;
        }
        Ok(format!("{} weights, a <= 20", mus.len()))
    });
}

#[test]
fn criterion_07_coherent_states() {
    criterion(7, "coherent states and the Bessel series", Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mus = sample_weights(&mut rng, 10);
        for mu in &mus {
            let e = GaussScalar::new(random_rational(&mut rng, 9, 7), random_rational(&mut rng, 9, 7));
            let w = resolve_mu_c(&Weights::new(mu.clone()).unwrap(), 16).map_err(|e| e.to_string())?;
            let cs = coherent_state(&e, &w, 16).map_err(|e| e.to_string())?;
            ensure(cs.report.passed(), || format!("mu={mu} E={e}: {:?}", cs.report.residuals))?;
            let nu = -(Rational::from(2) * mu) - Rational::one();
            for k in 0..16u32 {
                let k1 = Rational::from(k as i64 + 1);
                let lhs = cs.state.coeff(k + 1).scale(&(&k1 * &(&k1 + &nu)));
                ensure(lhs == &e * &cs.state.coeff(k), || format!("mu={mu}: ratio fails at k={k}"))?;
            }
        }
        Ok(format!("{} (E, mu) pairs, exact through order 15", mus.len()))
    });
}

#[test]
fn criterion_08_time_eigenstates() {
    criterion(8, "time eigenstates and the lowest-component defect", Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mus = sample_weights(&mut rng, 10);
        for mu in &mus {
            let t = loop {
                let t = random_rational(&mut rng, 9, 4);
                if !t.is_zero() {
                    break t;
                }
            };
            let w = resolve_mu_c(&Weights::new(mu.clone()).unwrap(), 12).map_err(|e| e.to_string())?;
            let rep = time_eigenstate_residual(&t, &w, 12).map_err(|e| e.to_string())?;
            ensure(rep.status == Status::Defect, || format!("mu={mu} t={t}: status {}", rep.status))?;
            ensure(rep.all_residuals_zero(), || format!("mu={mu} t={t}: {:?}", rep.residuals))?;
            let beta = Rational::from(2) * mu + Rational::one();
            let mut expected = RadialVector::zero(mu.clone(), beta).unwrap();
            expected.add_at(0, GaussScalar::real(-t.clone()));
            let defect = rep.observation("defect (iT - t)psi (orders <= K)").unwrap_or("");
            ensure(defect == expected.to_string(), || format!("mu={mu} t={t}: defect {defect}"))?;
        }
        Ok(format!("{} (t, mu) pairs, K = 12", mus.len()))
    });
}

#[test]
fn criterion_09_r_sector() {
    criterion(9, "R sector: vacuum, spectrum, ladders", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mus = sample_weights(&mut rng, 5);
        for mu in &mus {
            let omega = Rational::frac(rng.gen_range(1..=9), rng.gen_range(1..=4));
            let w = Weights::new(mu.clone()).unwrap();
            let (vac, vac_rep) = build_r_vacuum(&w, &omega).map_err(|e| e.to_string())?;
            ensure(vac_rep.passed(), || format!("mu={mu}: vacuum {:?}", vac_rep.residuals))?;
            ensure(vac.s == GaussScalar::real(-omega.clone()), || format!("vacuum exponent {}", vac.s))?;

            let rep = r_spectrum(&w, &omega, 8).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("mu={mu} omega={omega}: {:?}", rep.residuals.iter().find(|r| !r.is_zero())))?;
            for n in 0..=8 {
                let expected = (Rational::from(n as i64) - mu).to_string();
                let got = rep.observation(&format!("eigenvalue[{n}]")).unwrap_or("");
                ensure(got == expected, || format!("mu={mu} n={n}: eigenvalue {got}"))?;
                let ratio = rep.observation(&format!("ratio[{n}]")).unwrap_or("0/1");
                ensure(ratio != "0/1" && ratio != "0", || format!("mu={mu} n={n}: zero ratio"))?;
            }

            let f = random_univariate(&mut rng, 3);
            for sign in [LadderSign::Plus, LadderSign::Minus] {
                let fr = check_f_commutator_l(&f, sign, &w, &omega, &vac, 8).map_err(|e| e.to_string())?;
                ensure(fr.passed(), || format!("mu={mu} {sign:?}: {:?}", fr.residuals))?;
            }
        }
        Ok(format!("{} weights, n <= 8", mus.len()))
    });
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_calogero-verify")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn criterion_10_determinism_and_exit_codes() {
    criterion(10, "deterministic reports and exit codes", Duration::from_secs(10), || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let config = dir.path().join("session.json");
        std::fs::write(
            &config,
            r#"{"n_particles": 3, "lambda": "1/2", "degrees": [0, 3], "truncation_K": 8, "seed": 42, "t_values": ["1", "-2/3"]}"#,
        )
        .map_err(|e| e.to_string())?;
        let cfg = config.to_str().unwrap();
        let out = dir.path().join("report.json");
        let out_arg = out.to_str().unwrap();
        let mut runs = Vec::new();
        for _ in 0..2 {
            let (code, _) = run_cli(&["all", "--config", cfg, "--out", out_arg]);
            ensure(code == 0, || format!("pass case exit code {code}"))?;
            runs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        ensure(!runs[0].is_empty() && runs[0] == runs[1], || "reports differ between runs".into())?;

        let (forced, _) = run_cli(&["time-op", "--config", cfg, "--root-policy", "positive-root"]);
        ensure(forced == 1, || format!("forced wrong root: exit {forced}"))?;

        let bad = dir.path().join("bad.json");
        std::fs::write(&bad, r#"{"lambda": "2/0"}"#).map_err(|e| e.to_string())?;
        let (malformed, _) = run_cli(&["all", "--config", bad.to_str().unwrap()]);
        ensure(malformed == 2, || format!("malformed config: exit {malformed}"))?;
        Ok("byte-identical JSON; exit codes 0/1/2".into())
    });
}
