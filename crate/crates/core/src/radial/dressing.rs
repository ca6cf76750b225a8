//! Dressing by `e^{s T-}` and the compact sector
//! `R = ½(−T+/ω + ω T-)`, `L± = ½(T+/ω + ω T-) ± T0`.
//!
//! Conjugation maps every generator to a finite combination:
//! `e^{−sT-} T+ e^{sT-} = T+ − 2s T0 + s² T-`, `e^{−sT-} T0 e^{sT-} = T0 − s T-`,
//! and `T-` is unchanged. States `e^{sT-} p` are therefore handled exactly by
//! acting with the dressed operator on `p`, with no series truncation.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{factorial, GaussScalar, Rational};
use crate::realization::Generator;
use crate::report::{ExactOrder, VerificationReport};

use super::time::Weights;
use super::{radial_apply, RadialVector};

/// Operators of the compact sector, plus the bare generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorOp {
    Tplus,
    T0,
    Tminus,
    Lplus,
    Lminus,
    R,
}

/// `a·T+ + b·T0 + c·T- + d·1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratorCombo {
    pub tplus: GaussScalar,
    pub t0: GaussScalar,
    pub tminus: GaussScalar,
    pub identity: GaussScalar,
}

impl GeneratorCombo {
    fn of(g: Generator) -> Self {
        let mut c = GeneratorCombo::default();
        match g {
            Generator::Tplus => c.tplus = GaussScalar::one(),
            Generator::T0 => c.t0 = GaussScalar::one(),
            Generator::Tminus => c.tminus = GaussScalar::one(),
        }
        c
    }

    fn add(&self, other: &Self) -> Self {
        GeneratorCombo {
            tplus: &self.tplus + &other.tplus,
            t0: &self.t0 + &other.t0,
            tminus: &self.tminus + &other.tminus,
            identity: &self.identity + &other.identity,
        }
    }

    fn scale(&self, c: &GaussScalar) -> Self {
        GeneratorCombo {
            tplus: &self.tplus * c,
            t0: &self.t0 * c,
            tminus: &self.tminus * c,
            identity: &self.identity * c,
        }
    }

    pub fn apply(&self, v: &RadialVector) -> RadialVector {
        let mut out = v.scale(&self.identity);
        for (g, c) in [(Generator::Tplus, &self.tplus), (Generator::T0, &self.t0), (Generator::Tminus, &self.tminus)] {
            if !c.is_zero() {
                out = out.add(&radial_apply(g, v).scale(c));
            }
        }
        out
    }

    /// `f(G) v` by Horner's rule; `coeffs[k]` multiplies `G^k`.
    pub fn apply_poly(&self, coeffs: &[GaussScalar], v: &RadialVector) -> RadialVector {
        coeffs.iter().rev().fold(v.empty_like(), |acc, c| self.apply(&acc).add(&v.scale(c)))
    }

    pub fn apply_pow(&self, n: u32, v: &RadialVector) -> RadialVector {
        (0..n).fold(v.clone(), |acc, _| self.apply(&acc))
    }
}

impl fmt::Display for GeneratorCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [(&self.tplus, "T+"), (&self.t0, "T0"), (&self.tminus, "T-"), (&self.identity, "1")]
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| format!("({c})*{name}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `G̃` with `G e^{sT-} = e^{sT-} G̃`.
pub fn dressed_generator(g: SectorOp, s: &GaussScalar, omega: Option<&Rational>) -> Result<GeneratorCombo> {
    let tp = GeneratorCombo::of(Generator::Tplus)
        .add(&GeneratorCombo::of(Generator::T0).scale(&s.scale(&Rational::from(-2))))
        .add(&GeneratorCombo::of(Generator::Tminus).scale(&(s * s)));
    let t0 = GeneratorCombo::of(Generator::T0).add(&GeneratorCombo::of(Generator::Tminus).scale(&-s));
    let tm = GeneratorCombo::of(Generator::Tminus);
    let omega = || -> Result<&Rational> {
        match omega {
            Some(w) if w.is_positive() => Ok(w),
            Some(w) => Err(Error::NonPositiveOmega(w.to_string())),
            None => Err(Error::NonPositiveOmega("unset".into())),
        }
    };
    Ok(match g {
        SectorOp::Tplus => tp,
        SectorOp::T0 => t0,
        SectorOp::Tminus => tm,
        SectorOp::Lplus | SectorOp::Lminus | SectorOp::R => {
            let w = omega()?;
            let inv2w = GaussScalar::real((Rational::from(2) * w).recip()?);
            let half_w = GaussScalar::real(w * &Rational::frac(1, 2));
            match g {
                SectorOp::Lplus => tp.scale(&inv2w).add(&tm.scale(&half_w)).add(&t0),
                SectorOp::Lminus => tp.scale(&inv2w).add(&tm.scale(&half_w)).add(&t0.scale(&GaussScalar::from_int(-1))),
                _ => tp.scale(&-inv2w).add(&tm.scale(&half_w)),
            }
        }
    })
}

/// Dressing exponent `s` of a state `e^{s T-} p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DressedSpec {
    pub s: GaussScalar,
    /// Series order, only for operators that are not finite combinations.
    pub truncation_k: Option<u32>,
}

/// `Σ_{k≤K} s^k/k! T-^k v`.
fn truncated_exp(s: &GaussScalar, k: u32, v: &RadialVector) -> RadialVector {
    let mut acc = v.clone();
    let mut term = v.clone();
    for j in 1..=k {
        term = radial_apply(Generator::Tminus, &term).scale(&s.scale(&Rational::frac(1, j as i64)));
        acc = acc.add(&term);
    }
    acc
}

/// Order-by-order check of `G e^{sT-} F_a = e^{sT-} G̃ F_a` on truncated
/// exponentials; exact through tower index `a + K − 1`.
pub fn verify_dressing(g: SectorOp, s: &GaussScalar, omega: Option<&Rational>, mu: &Rational, a: u32, k: u32) -> Result<VerificationReport> {
    let bare = dressed_generator(g, &GaussScalar::zero(), omega)?;
    let dressed = dressed_generator(g, s, omega)?;
    let f = RadialVector::basis(mu.clone(), a);
    let lhs = bare.apply(&truncated_exp(s, k, &f));
    let rhs = truncated_exp(s, k, &dressed.apply(&f));
    let mut report = VerificationReport::new("dressing")
        .param("operator", format!("{g:?}"))
        .param("s", s)
        .param("a", a)
        .param("K", k);
    report.exact_through_order = ExactOrder::Through((a + k - 1) as usize);
    report.observe("dressed", &dressed);
    report.residual("G e^{sT-} F_a - e^{sT-} G~ F_a", lhs.sub(&rhs).truncate(a + k - 1));
    Ok(report.finish())
}

/// Resolves the sign of the vacuum `e^{±ω T-} P` by requiring `L- |0> = 0`.
pub fn build_r_vacuum(w: &Weights, omega: &Rational) -> Result<(DressedSpec, VerificationReport)> {
    if !omega.is_positive() {
        return Err(Error::NonPositiveOmega(omega.to_string()));
    }
    let p = RadialVector::basis(w.mu.clone(), 0);
    let plus = GaussScalar::real(omega.clone());
    let minus = -&plus;
    let lminus_on = |s: &GaussScalar| -> Result<RadialVector> {
        Ok(dressed_generator(SectorOp::Lminus, s, Some(omega))?.apply(&p))
    };
    let (r_plus, r_minus) = (lminus_on(&plus)?, lminus_on(&minus)?);
    let (s, rejected, rejected_res) = match (r_plus.is_zero(), r_minus.is_zero()) {
        (true, false) => (plus, minus, r_minus),
        (false, true) => (minus, plus, r_plus),
        _ => return Err(Error::NoAnnihilatedVacuum),
    };
    let mut report = VerificationReport::new("r-vacuum").param("mu", &w.mu).param("omega", omega);
    report.convention(
        "vacuum dressing exponent s in e^{s T-} P",
        omega,
        &s,
        "L- annihilates the vacuum",
    );
    report.residual("L- |0>", lminus_on(&s)?);
    let r = dressed_generator(SectorOp::R, &s, Some(omega))?;
    report.residual("L0 |0> + mu |0>", r.apply(&p).add(&p.scale(&w.mu.clone().into())));
    report.observe("L0 eigenvalue", -&w.mu);
    report.observe(format!("rejected s={rejected}: L- |0>"), rejected_res);
    report.observe("dressed R", r);
    Ok((DressedSpec { s, truncation_k: None }, report.finish()))
}

/// `L_n^α(2ω T-) P` with `α = −2μ − 1`, as a primary-tower vector:
/// coefficient of `F_k` is `(−1)^k C(n+α, n−k) (2ω)^k / k!`.
pub fn laguerre_state(n: u32, mu: &Rational, omega: &Rational) -> RadialVector {
    let alpha = -(Rational::from(2) * mu) - Rational::one();
    let two_w = Rational::from(2) * omega;
    let mut v = RadialVector::primary(mu.clone());
    for k in 0..=n {
        let binom = (&alpha + Rational::from(k as i64 + 1)).rising_factorial(n - k) / factorial(n - k);
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        let c = sign * binom * two_w.pow(k) / factorial(k);
        v.add_at(k, c.into());
    }
    v
}

/// Eigenvalue read off the top component of `G v`, with the residual
/// `G v − λ v`.
fn eigen_pair(g: &GeneratorCombo, v: &RadialVector) -> Result<(GaussScalar, RadialVector)> {
    let top = v.max_index().ok_or_else(|| Error::VerificationFailed("zero state".into()))?;
    let gv = g.apply(v);
    let lambda = gv.coeff(top).checked_div(&v.coeff(top))?;
    Ok((lambda.clone(), gv.sub(&v.scale(&lambda))))
}

fn check_omega(omega: &Rational) -> Result<()> {
    if omega.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveOmega(omega.to_string()))
    }
}

/// `L0 L_n^α(2ωT-)|0> = (n − μ) L_n^α(2ωT-)|0>`.
pub fn laguerre_eigenstate_check(n: u32, w: &Weights, omega: &Rational, vacuum: &DressedSpec) -> Result<VerificationReport> {
    check_omega(omega)?;
    let r = dressed_generator(SectorOp::R, &vacuum.s, Some(omega))?;
    let v = laguerre_state(n, &w.mu, omega);
    let (lambda, res) = eigen_pair(&r, &v)?;
    let expected = GaussScalar::real(Rational::from(n as i64) - &w.mu);
    let mut report = VerificationReport::new("laguerre-eigenstate")
        .param("n", n)
        .param("mu", &w.mu)
        .param("omega", omega)
        .param("s", &vacuum.s);
    report.observe("state", &v);
    report.observe("eigenvalue", &lambda);
    report.residual("L0 v - lambda v", res);
    report.residual("lambda - (n - mu)", &lambda - &expected);
    Ok(report.finish())
}

/// Ladder states `L+^n |0>`: eigenvalue, proportionality to the Laguerre
/// state, and the so(2,1) brackets on `F_a`, `a ≤ n + 2`.
pub fn ladder_states_check(n: u32, w: &Weights, omega: &Rational, vacuum: &DressedSpec) -> Result<VerificationReport> {
    check_omega(omega)?;
    let s = &vacuum.s;
    let lp = dressed_generator(SectorOp::Lplus, s, Some(omega))?;
    let lm = dressed_generator(SectorOp::Lminus, s, Some(omega))?;
    let r = dressed_generator(SectorOp::R, s, Some(omega))?;
    let p = RadialVector::basis(w.mu.clone(), 0);
    let v = lp.apply_pow(n, &p);
    let (lambda, res) = eigen_pair(&r, &v)?;
    let expected = GaussScalar::real(Rational::from(n as i64) - &w.mu);

    let mut report = VerificationReport::new("ladder-state")
        .param("n", n)
        .param("mu", &w.mu)
        .param("omega", omega)
        .param("s", s);
    report.observe("state", &v);
    report.observe("eigenvalue", &lambda);
    report.residual("L0 v - lambda v", res);
    report.residual("lambda - (n - mu)", &lambda - &expected);

    let lag = laguerre_state(n, &w.mu, omega);
    let ratio = v.coeff(n).checked_div(&lag.coeff(n))?;
    report.observe("ratio to laguerre state", &ratio);
    report.residual("v - ratio * laguerre", v.sub(&lag.scale(&ratio)));

    for a in 0..=n + 2 {
        let f = RadialVector::basis(w.mu.clone(), a);
        let rlp = r.apply(&lp.apply(&f)).sub(&lp.apply(&r.apply(&f)));
        report.residual(format!("a={a}:[R,L+]-L+"), rlp.sub(&lp.apply(&f)));
        let rlm = r.apply(&lm.apply(&f)).sub(&lm.apply(&r.apply(&f)));
        report.residual(format!("a={a}:[R,L-]+L-"), rlm.add(&lm.apply(&f)));
        let pm = lp.apply(&lm.apply(&f)).sub(&lm.apply(&lp.apply(&f)));
        report.residual(format!("a={a}:[L+,L-]+2R"), pm.add(&r.apply(&f).scale(&GaussScalar::from_int(2))));
    }
    Ok(report.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderSign {
    Plus,
    Minus,
}

/// Residual of `[L0, f(L±)] = ± L± f'(L±)` on `F_0..F_K`.
pub fn check_f_commutator_l(
    f_coeffs: &[GaussScalar],
    sign: LadderSign,
    w: &Weights,
    omega: &Rational,
    vacuum: &DressedSpec,
    k: u32,
) -> Result<VerificationReport> {
    check_omega(omega)?;
    let op = match sign {
        LadderSign::Plus => SectorOp::Lplus,
        LadderSign::Minus => SectorOp::Lminus,
    };
    let l = dressed_generator(op, &vacuum.s, Some(omega))?;
    let r = dressed_generator(SectorOp::R, &vacuum.s, Some(omega))?;
    let fprime = crate::realization::derivative_coeffs(f_coeffs);
    let sgn = match sign {
        LadderSign::Plus => GaussScalar::one(),
        LadderSign::Minus => GaussScalar::from_int(-1),
    };
    let f_text: Vec<String> = f_coeffs.iter().map(ToString::to_string).collect();
    let mut report = VerificationReport::new("f-commutator-L")
        .param("sign", format!("{sign:?}"))
        .param("f_coeffs", f_text.join(","))
        .param("mu", &w.mu)
        .param("omega", omega)
        .param("K", k);
    for a in 0..=k {
        let f = RadialVector::basis(w.mu.clone(), a);
        let comm = r.apply(&l.apply_poly(f_coeffs, &f)).sub(&l.apply_poly(f_coeffs, &r.apply(&f)));
        let rhs = l.apply(&l.apply_poly(&fprime, &f)).scale(&sgn);
        report.residual(format!("a={a}"), comm.sub(&rhs));
    }
    Ok(report.finish())
}

/// Vacuum resolution plus Laguerre and ladder families for `n = 0..=n_max`.
pub fn r_spectrum(w: &Weights, omega: &Rational, n_max: u32) -> Result<VerificationReport> {
    let (vacuum, vac_report) = build_r_vacuum(w, omega)?;
    let mut report = VerificationReport::new("r-spectrum")
        .param("mu", &w.mu)
        .param("omega", omega)
        .param("n_max", n_max);
    report.absorb("vacuum:", vac_report);
    let mut eigenvalues = Vec::new();
    for n in 0..=n_max {
        let lag = laguerre_eigenstate_check(n, w, omega, &vacuum)?;
        let lad = ladder_states_check(n, w, omega, &vacuum)?;
        let lambda = lag.observation("eigenvalue").unwrap_or("?").to_string();
        if lad.observation("eigenvalue") != Some(lambda.as_str()) {
            report.residual(format!("n={n}:ladder vs laguerre eigenvalue"), "mismatch");
        }
        eigenvalues.push(lambda.clone());
        report.observe(format!("eigenvalue[{n}]"), &lambda);
        report.observe(
            format!("ratio[{n}]"),
            lad.observation("ratio to laguerre state").unwrap_or("?"),
        );
        report.absorb(&format!("n={n}:laguerre:"), without_observations(lag));
        report.absorb(&format!("n={n}:ladder:"), without_observations(lad));
    }
    let distinct: std::collections::BTreeSet<&String> = eigenvalues.iter().collect();
    if distinct.len() != eigenvalues.len() {
        report.residual("multiplicity", "repeated eigenvalue");
    }
    Ok(report.finish())
}

fn without_observations(mut r: VerificationReport) -> VerificationReport {
    r.observations.clear();
    r
}
