//! Session configuration and orchestration of the verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::kernel_report;
use crate::multipoly::invariant_basis;
use crate::numeric::{GaussScalar, Rational};
use crate::radial::dressing::{
    build_r_vacuum, check_f_commutator_l, r_spectrum, verify_dressing, LadderSign, SectorOp,
};
use crate::radial::time::{
    check_canonical_commutator, check_shift_identity, resolve_mu_c, time_eigenstate_residual, Weights,
};
use crate::radial::{coherent_state, RadialVector};
use crate::realization::{check_commutator_formula, check_su11_commutators, jastrow_conjugation_check, SystemParams};
use crate::report::{ReportDocument, Status, VerificationReport};

/// Environment variable naming the default report directory.
pub const REPORT_DIR_ENV: &str = "CALOGERO_REPORT_DIR";

/// Check groups in execution order.
pub const CHECK_ORDER: [&str; 6] = ["algebra", "jastrow", "kernel", "coherent", "time-op", "r-sector"];

/// Number of random sample points per Jastrow report.
pub const JASTROW_POINTS: usize = 100;

/// Session settings; scalars are exact strings so a config file round-trips.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SessionConfig {
    pub n_particles: usize,
    pub lambda: String,
    pub degrees: Vec<u32>,
    pub omega: String,
    pub energy: String,
    pub t_values: Vec<String>,
    #[serde(rename = "truncation_K")]
    pub truncation_k: u32,
    pub checks: Vec<String>,
    pub seed: u64,
    pub out_path: Option<String>,
    /// `commutator` (select the root that satisfies the canonical
    /// commutator) or `positive-root` (force the nonnegative square root).
    pub root_policy: String,
    /// Also evaluate the swapped operator order of the time operator.
    pub compare_order: bool,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            n_particles: 2,
            lambda: "2".into(),
            degrees: vec![0],
            omega: "1".into(),
            energy: "1".into(),
            t_values: vec!["1".into()],
            truncation_k: 16,
            checks: CHECK_ORDER.iter().map(|s| s.to_string()).collect(),
            seed: 0,
            out_path: None,
            root_policy: "commutator".into(),
            compare_order: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootPolicy {
    Commutator,
    PositiveRoot,
}

/// Parsed and validated session.
#[derive(Debug, Clone)]
pub struct Session {
    pub params: SystemParams,
    pub omega: Rational,
    pub energy: GaussScalar,
    pub t_values: Vec<Rational>,
    pub degrees: Vec<u32>,
    pub truncation_k: u32,
    pub checks: Vec<String>,
    pub seed: u64,
    pub root_policy: RootPolicy,
    pub compare_order: bool,
}

fn config_err(field: &str, message: impl ToString) -> Error {
    Error::Config { field: field.to_string(), message: message.to_string() }
}

impl SessionConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| config_err("config", e))
    }

    pub fn validate(&self) -> Result<Session> {
        if self.n_particles < 2 {
            return Err(config_err("n_particles", "must be at least 2"));
        }
        if self.truncation_k < 2 {
            return Err(config_err("truncation_K", "must be at least 2"));
        }
        let lambda: Rational = self.lambda.parse().map_err(|e| config_err("lambda", e))?;
        let omega: Rational = self.omega.parse().map_err(|e| config_err("omega", e))?;
        if !omega.is_positive() {
            return Err(config_err("omega", "must be positive"));
        }
        let energy: GaussScalar = self.energy.parse().map_err(|e| config_err("energy", e))?;
        let t_values = self
            .t_values
            .iter()
            .map(|t| {
                let v: Rational = t.parse().map_err(|e| config_err("t_values", e))?;
                if v.is_zero() {
                    return Err(config_err("t_values", "t must be nonzero"));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        for c in &self.checks {
            if !CHECK_ORDER.contains(&c.as_str()) {
                return Err(config_err("checks", format!("unknown check {c:?}")));
            }
        }
        let root_policy = match self.root_policy.as_str() {
            "commutator" => RootPolicy::Commutator,
            "positive-root" => RootPolicy::PositiveRoot,
            other => return Err(config_err("root_policy", format!("unknown policy {other:?}"))),
        };
        let params = SystemParams::new(self.n_particles, lambda)
            .and_then(|p| p.with_omega(omega.clone()))
            .map_err(|e| config_err("n_particles", e))?;
        let mut checks: Vec<String> = CHECK_ORDER
            .iter()
            .filter(|c| self.checks.iter().any(|s| s == *c))
            .map(|c| c.to_string())
            .collect();
        checks.dedup();
        Ok(Session {
            params,
            omega,
            energy,
            t_values,
            degrees: self.degrees.clone(),
            truncation_k: self.truncation_k,
            checks,
            seed: self.seed,
            root_policy,
            compare_order: self.compare_order,
        })
    }
}

fn guard(name: String, r: Result<VerificationReport>) -> VerificationReport {
    match r {
        Ok(mut rep) => {
            rep.check_name = name;
            rep
        }
        Err(e) => VerificationReport::from_error(name, &e),
    }
}

/// Random univariate polynomial of degree at most `max_deg`, small rational coefficients.
pub fn random_univariate(rng: &mut impl Rng, max_deg: usize) -> Vec<GaussScalar> {
    let deg = rng.gen_range(1..=max_deg);
    (0..=deg)
        .map(|_| GaussScalar::real(Rational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=5))))
        .collect()
}

/// Random point with pairwise-distinct rational coordinates.
pub fn random_point(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    loop {
        let pt: Vec<Rational> =
            (0..n).map(|_| Rational::frac(rng.gen_range(-30..=30), rng.gen_range(1..=7))).collect();
        let distinct = (0..n).all(|i| (i + 1..n).all(|j| pt[i] != pt[j]));
        if distinct {
            return pt;
        }
    }
}

impl Session {
    fn weights(&self, m: u32) -> Result<Weights> {
        let w = Weights::new(self.params.mu(m))?;
        match self.root_policy {
            RootPolicy::Commutator => resolve_mu_c(&w, self.truncation_k),
            RootPolicy::PositiveRoot => {
                let root = w.positive_root().clone();
                Ok(w.with_mu_c(root))
            }
        }
    }

    fn algebra(&self, rng: &mut ChaCha8Rng, out: &mut Vec<VerificationReport>) {
        for &m in &self.degrees {
            let basis = invariant_basis(self.params.n(), m);
            out.push(guard(
                format!("algebra:su11[m={m}]"),
                basis.clone().and_then(|b| check_su11_commutators(&b.elements, &self.params)),
            ));
            let f = random_univariate(rng, 4);
            let r = basis.and_then(|b| {
                let mut rep = VerificationReport::new("");
                for (k, e) in b.elements.iter().enumerate() {
                    let sub = check_commutator_formula(&f, e, &self.params)?;
                    rep.params_echo = sub.params_echo.clone();
                    rep.absorb(&format!("basis[{k}]:"), sub);
                }
                Ok(rep.finish())
            });
            out.push(guard(format!("algebra:commutator-formula[m={m}]"), r));
        }
    }

    fn jastrow(&self, rng: &mut ChaCha8Rng, out: &mut Vec<VerificationReport>) {
        let n = self.params.n();
        for &m in &self.degrees {
            let points: Vec<Vec<Rational>> = (0..JASTROW_POINTS).map(|_| random_point(rng, n)).collect();
            let r = invariant_basis(n, m).and_then(|b| {
                let mut rep = VerificationReport::new("");
                for (k, e) in b.elements.iter().enumerate() {
                    let mut sub = jastrow_conjugation_check(e, &points, &self.params)?;
                    sub.observations.clear();
                    rep.params_echo = sub.params_echo.clone();
                    rep.absorb(&format!("basis[{k}]:"), sub);
                }
                Ok(rep.finish())
            });
            out.push(guard(format!("jastrow[m={m}]"), r));
        }
    }

    fn kernel(&self, out: &mut Vec<VerificationReport>) {
        for &m in &self.degrees {
            out.push(guard(format!("kernel[m={m}]"), kernel_report(&self.params, m)));
        }
    }

    fn coherent(&self, out: &mut Vec<VerificationReport>) {
        let k = self.truncation_k;
        for &m in &self.degrees {
            let r = self.weights(m).and_then(|w| coherent_state(&self.energy, &w, k).map(|c| c.report));
            out.push(guard(format!("coherent:state[m={m}]"), r));
            let mu = self.params.mu(m);
            let r = (|| {
                let v = RadialVector::basis(mu.clone(), 0)
                    .add(&RadialVector::basis(mu.clone(), 2).scale(&GaussScalar::from_int(2)));
                let mut rep = VerificationReport::new("");
                for n in 0..=3u32 {
                    // Shift parameter equal to the tower weight keeps clear of poles for μ < 0.
                    let sub = check_shift_identity(n, &mu, &v)?;
                    rep.absorb(&format!("n={n}:"), sub);
                }
                Ok(rep.param("mu", &mu).finish())
            })();
            out.push(guard(format!("coherent:shift-identity[m={m}]"), r));
        }
    }

    fn time_op(&self, out: &mut Vec<VerificationReport>) {
        let k = self.truncation_k;
        for &m in &self.degrees {
            let w = match self.weights(m) {
                Ok(w) => w,
                Err(e) => {
                    out.push(VerificationReport::from_error(format!("time-op:weights[m={m}]"), &e));
                    continue;
                }
            };
            out.push(guard(
                format!("time-op:canonical-commutator[m={m}]"),
                check_canonical_commutator(&w, k, self.compare_order),
            ));
            for t in &self.t_values {
                out.push(guard(
                    format!("time-op:eigenstate[m={m},t={t}]"),
                    time_eigenstate_residual(t, &w, k),
                ));
            }
        }
    }

    fn r_sector(&self, rng: &mut ChaCha8Rng, out: &mut Vec<VerificationReport>) {
        let n_max = self.truncation_k;
        for &m in &self.degrees {
            // The R sector uses only μ; no Casimir root is needed.
            let w = match Weights::new(self.params.mu(m)) {
                Ok(w) => w,
                Err(e) => {
                    out.push(VerificationReport::from_error(format!("r-sector:weights[m={m}]"), &e));
                    continue;
                }
            };
            let mut spectrum = guard(format!("r-sector:spectrum[m={m}]"), r_spectrum(&w, &self.omega, n_max));
            spectrum.note("T_R = c+ ln L+ + c- ln L- + g(L0) with c+ - c- = 1 is not constructed; [L0, f(L+-)] is checked for polynomial f");
            out.push(spectrum);

            let f = random_univariate(rng, 3);
            let r = build_r_vacuum(&w, &self.omega).and_then(|(vac, vac_report)| {
                let mut rep = VerificationReport::new("");
                rep.conventions = vac_report.conventions;
                for sign in [LadderSign::Plus, LadderSign::Minus] {
                    let sub = check_f_commutator_l(&f, sign, &w, &self.omega, &vac, n_max)?;
                    rep.params_echo = sub.params_echo.clone();
                    rep.absorb(&format!("{sign:?}:"), sub);
                }
                Ok(rep.finish())
            });
            out.push(guard(format!("r-sector:f-commutator[m={m}]"), r));

            let s = GaussScalar::new(
                Rational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
                Rational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
            );
            let r = (|| {
                let mut rep = VerificationReport::new("").param("s", &s);
                for g in [SectorOp::Tplus, SectorOp::T0, SectorOp::Tminus, SectorOp::Lplus, SectorOp::Lminus, SectorOp::R] {
                    for a in 0..=3 {
                        let mut sub = verify_dressing(g, &s, Some(&self.omega), &w.mu, a, n_max)?;
                        sub.observations.clear();
                        rep.absorb(&format!("{g:?}:a={a}:"), sub);
                    }
                }
                rep.exact_through_order = crate::report::ExactOrder::Through(n_max as usize - 1);
                Ok(rep.finish())
            })();
            out.push(guard(format!("r-sector:dressing[m={m}]"), r));
        }
    }
}

/// Runs the requested checks in the fixed group order.
pub fn run_session(config: &SessionConfig) -> Result<Vec<VerificationReport>> {
    let session = config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(session.seed);
    let mut out = Vec::new();
    for check in &session.checks {
        match check.as_str() {
            "algebra" => session.algebra(&mut rng, &mut out),
            "jastrow" => session.jastrow(&mut rng, &mut out),
            "kernel" => session.kernel(&mut out),
            "coherent" => session.coherent(&mut out),
            "time-op" => session.time_op(&mut out),
            "r-sector" => session.r_sector(&mut rng, &mut out),
            _ => unreachable!("validated"),
        }
    }
    Ok(out)
}

pub fn document(config: &SessionConfig, checks: Vec<VerificationReport>) -> ReportDocument {
    ReportDocument {
        session: serde_json::to_value(config).expect("config serializes"),
        checks,
    }
}

/// 0 when every check passes (or shows only a characterized defect), 1 on
/// any identity violation, 2 when a check could not run.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(checks: &[&str]) -> SessionConfig {
        SessionConfig { checks: checks.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    #[test]
    fn algebra_session_passes() {
        let c = SessionConfig { degrees: vec![0, 2, 4], ..cfg(&["algebra"]) };
        let reps = run_session(&c).unwrap();
        assert_eq!(reps.len(), 6);
        assert!(reps.iter().all(VerificationReport::passed), "{reps:?}");
    }

    #[test]
    fn time_op_session() {
        let c = SessionConfig { truncation_k: 12, ..cfg(&["time-op"]) };
        let reps = run_session(&c).unwrap();
        assert_eq!(reps[0].status, Status::Pass);
        assert_eq!(reps[1].status, Status::Defect);
        assert_eq!(exit_code(&reps), 0);
    }

    #[test]
    fn bad_lambda() {
        let c = SessionConfig { lambda: "2/0".into(), ..Default::default() };
        assert!(matches!(run_session(&c), Err(Error::Config { field, .. }) if field == "lambda"));
    }

    #[test]
    fn unknown_check_and_field() {
        assert!(cfg(&["nope"]).validate().is_err());
        assert!(SessionConfig::from_json(r#"{"bogus": 1}"#).is_err());
        let parsed = SessionConfig::from_json(r#"{"n_particles": 3, "truncation_K": 5}"#).unwrap();
        assert_eq!((parsed.n_particles, parsed.truncation_k), (3, 5));
    }

    #[test]
    fn forced_root_fails() {
        let c = SessionConfig { root_policy: "positive-root".into(), ..cfg(&["time-op"]) };
        let reps = run_session(&c).unwrap();
        assert_eq!(exit_code(&reps), 1);
    }
}
