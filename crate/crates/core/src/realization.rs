//! Differential-operator realization of the conformal generators on
//! symmetric, translation-invariant polynomials:
//!
//! ```text
//! T+ = ½ Σ ∂i² + (λ/2) Σ_{i≠j} (∂i − ∂j) / (xi − xj)
//! T0 = −½ (Σ xi ∂i + E0 − ½)
//! T- = ½ Σ (xi − X)²
//! ```
//!
//! with `E0 = λ N (N−1)/2 + N/2`. `T+` is the Jastrow-conjugated Calogero
//! Hamiltonian (up to sign); [`jastrow_conjugation_check`] verifies that
//! relation pointwise.

use crate::error::{Error, Result};
use crate::multipoly::{shifted_power_sum, MultiPoly};
use crate::numeric::{GaussScalar, Rational};
use crate::report::VerificationReport;

/// Particle number, coupling and the derived scale constant `E0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemParams {
    n: usize,
    lambda: Rational,
    e0: Rational,
    omega: Option<Rational>,
    /// `½ Σ (xi − X)²`, cached.
    half_p2: MultiPoly,
}

impl SystemParams {
    pub fn new(n: usize, lambda: Rational) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("need at least 2 particles, got {n}")));
        }
        let n_r = Rational::from(n as i64);
        let e0 = &lambda * &n_r * Rational::from(n as i64 - 1) / Rational::from(2) + &n_r / Rational::from(2);
        let half_p2 = shifted_power_sum(n, 2)?.scale_rational(&Rational::frac(1, 2));
        Ok(SystemParams { n, lambda, e0, omega: None, half_p2 })
    }

    pub fn with_omega(mut self, omega: Rational) -> Result<Self> {
        if !omega.is_positive() {
            return Err(Error::NonPositiveOmega(omega.to_string()));
        }
        self.omega = Some(omega);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// Coupling `g = λ(λ−1)` of the inverse-square potential.
    pub fn coupling(&self) -> Rational {
        &self.lambda * &(&self.lambda - Rational::one())
    }

    pub fn e0(&self) -> &Rational {
        &self.e0
    }

    pub fn omega(&self) -> Option<&Rational> {
        self.omega.as_ref()
    }

    /// Lowest weight `μ_m = −(m + E0 − ½)/2` of the degree-`m` zero-energy states.
    pub fn mu(&self, m: u32) -> Rational {
        -(Rational::from(m as i64) + &self.e0 - Rational::frac(1, 2)) / Rational::from(2)
    }
}

/// Fails unless `p` is symmetric and translation invariant.
pub fn check_domain(p: &MultiPoly, params: &SystemParams) -> Result<()> {
    if p.n_vars() != params.n {
        return Err(Error::DimensionMismatch { left: params.n, right: p.n_vars() });
    }
    if !p.is_translation_invariant() {
        return Err(Error::NotTranslationInvariant);
    }
    if !p.is_symmetric() {
        return Err(Error::NonSymmetricInput);
    }
    Ok(())
}

pub(crate) fn tplus_raw(p: &MultiPoly, params: &SystemParams) -> Result<MultiPoly> {
    let n = params.n;
    let mut kinetic = MultiPoly::zero(n);
    let mut firsts = Vec::with_capacity(n);
    for i in 0..n {
        let d = p.partial_derivative(i)?;
        kinetic = kinetic.checked_add(&d.partial_derivative(i)?)?;
        firsts.push(d);
    }
    // (λ/2) Σ_{i≠j} is λ Σ_{i<j}: each unordered pair contributes twice.
    let mut interaction = MultiPoly::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let anti = firsts[i].checked_sub(&firsts[j])?;
            let q = anti.divide_by_difference(i, j).map_err(|e| match e {
                Error::NotDivisible { .. } => Error::NonSymmetricInput,
                other => other,
            })?;
            interaction = interaction.checked_add(&q)?;
        }
    }
    kinetic
        .scale_rational(&Rational::frac(1, 2))
        .checked_add(&interaction.scale_rational(&params.lambda))
}

pub(crate) fn t0_raw(p: &MultiPoly, params: &SystemParams) -> Result<MultiPoly> {
    let shift = &params.e0 - Rational::frac(1, 2);
    let inner = p.euler().checked_add(&p.scale_rational(&shift))?;
    Ok(inner.scale_rational(&Rational::frac(-1, 2)))
}

pub(crate) fn tminus_raw(p: &MultiPoly, params: &SystemParams) -> Result<MultiPoly> {
    params.half_p2.checked_mul(p)
}

pub fn apply_tplus(p: &MultiPoly, params: &SystemParams) -> Result<MultiPoly> {
    check_domain(p, params)?;
    tplus_raw(p, params)
}

pub fn apply_t0(p: &MultiPoly, params: &SystemParams) -> Result<MultiPoly> {
    check_domain(p, params)?;
    t0_raw(p, params)
}

pub fn apply_tminus(p: &MultiPoly, params: &SystemParams) -> Result<MultiPoly> {
    check_domain(p, params)?;
    tminus_raw(p, params)
}

/// `Ĉ p = T+ T- p − T0 (T0 − 1) p`.
pub fn apply_casimir(p: &MultiPoly, params: &SystemParams) -> Result<MultiPoly> {
    check_domain(p, params)?;
    let tpm = tplus_raw(&tminus_raw(p, params)?, params)?;
    let t0p = t0_raw(p, params)?;
    let t00 = t0_raw(&t0p.checked_sub(p)?, params)?;
    tpm.checked_sub(&t00)
}

/// The three generators, for building operator words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Tplus,
    T0,
    Tminus,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::Tplus, Generator::T0, Generator::Tminus];

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::Tplus => "T+",
            Generator::T0 => "T0",
            Generator::Tminus => "T-",
        }
    }
}

pub fn apply_generator(g: Generator, p: &MultiPoly, params: &SystemParams) -> Result<MultiPoly> {
    match g {
        Generator::Tplus => apply_tplus(p, params),
        Generator::T0 => apply_t0(p, params),
        Generator::Tminus => apply_tminus(p, params),
    }
}

/// `f(T-) p` by Horner's rule; `coeffs[k]` multiplies `T-^k`.
pub fn apply_poly_in_tminus(coeffs: &[GaussScalar], p: &MultiPoly, params: &SystemParams) -> Result<MultiPoly> {
    let mut acc = MultiPoly::zero(params.n);
    for c in coeffs.iter().rev() {
        acc = tminus_raw(&acc, params)?.checked_add(&p.scale(c))?;
    }
    Ok(acc)
}

/// Coefficients of the formal derivative of a univariate polynomial.
pub fn derivative_coeffs(coeffs: &[GaussScalar]) -> Vec<GaussScalar> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&Rational::from(k as i64)))
        .collect()
}

/// Residuals of the su(1,1) brackets on each basis element:
/// `([T+,T-] + 2T0)p`, `([T0,T+] − T+)p`, `([T0,T-] + T-)p`.
pub fn check_su11_commutators(basis: &[MultiPoly], params: &SystemParams) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("su11-commutators")
        .param("n_particles", params.n)
        .param("lambda", &params.lambda);
    for (k, p) in basis.iter().enumerate() {
        check_domain(p, params)?;
        let tp = tplus_raw(p, params)?;
        let t0 = t0_raw(p, params)?;
        let tm = tminus_raw(p, params)?;

        let r1 = tplus_raw(&tm, params)?
            .checked_sub(&tminus_raw(&tp, params)?)?
            .checked_add(&t0.scale_rational(&Rational::from(2)))?;
        let r2 = t0_raw(&tp, params)?.checked_sub(&tplus_raw(&t0, params)?)?.checked_sub(&tp)?;
        let r3 = t0_raw(&tm, params)?.checked_sub(&tminus_raw(&t0, params)?)?.checked_add(&tm)?;
        report.residual(format!("basis[{k}]:[T+,T-]+2T0"), r1);
        report.residual(format!("basis[{k}]:[T0,T+]-T+"), r2);
        report.residual(format!("basis[{k}]:[T0,T-]+T-"), r3);
    }
    Ok(report.finish())
}

/// Residual of `[T+, f(T-)] = T- f''(T-) − 2 f'(T-) T0` on `p`.
pub fn check_commutator_formula(
    f_coeffs: &[GaussScalar],
    p: &MultiPoly,
    params: &SystemParams,
) -> Result<VerificationReport> {
    check_domain(p, params)?;
    let f1 = derivative_coeffs(f_coeffs);
    let f2 = derivative_coeffs(&f1);

    let fp = apply_poly_in_tminus(f_coeffs, p, params)?;
    let lhs = tplus_raw(&fp, params)?.checked_sub(&apply_poly_in_tminus(f_coeffs, &tplus_raw(p, params)?, params)?)?;
    let rhs = tminus_raw(&apply_poly_in_tminus(&f2, p, params)?, params)?
        .checked_sub(&apply_poly_in_tminus(&f1, &t0_raw(p, params)?, params)?.scale_rational(&Rational::from(2)))?;

    let f_text: Vec<String> = f_coeffs.iter().map(ToString::to_string).collect();
    let mut report = VerificationReport::new("commutator-formula")
        .param("n_particles", params.n)
        .param("lambda", &params.lambda)
        .param("f_coeffs", f_text.join(","));
    report.residual("[T+,f(T-)]-T-f''(T-)+2f'(T-)T0", lhs.checked_sub(&rhs)?);
    Ok(report.finish())
}

/// Both sides of the Jastrow similarity transformation applied to `p` at a
/// rational point.
///
/// The left side is expanded through logarithmic derivatives of
/// `V = Π_{i<j}(xi − xj)`: with `Ai = Σ_{j≠i} 1/(xi − xj)` and
/// `Bi = Σ_{j≠i} 1/(xi − xj)²`,
///
/// ```text
/// V^{-λ} ∂i² (V^λ p) = ∂i² p + 2λ Ai ∂i p + (λ² Ai² − λ Bi) p
/// ```
///
/// so only rational quantities appear. The right side evaluates the
/// polynomial `T+ p` at the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JastrowSides {
    pub lhs: GaussScalar,
    pub rhs: GaussScalar,
}

pub fn jastrow_sides(p: &MultiPoly, point: &[Rational], params: &SystemParams) -> Result<JastrowSides> {
    let n = params.n;
    if point.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: point.len() });
    }
    let mut a = vec![Rational::zero(); n];
    let mut b = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = &point[i] - &point[j];
            if d.is_zero() {
                return Err(Error::CoincidentCoordinates { i: i + 1, j: j + 1 });
            }
            let inv = d.recip()?;
            b[i] += &(&inv * &inv);
            a[i] += &inv;
        }
    }
    let lambda = &params.lambda;
    let p_val = p.eval_rational(point)?;
    let mut lhs = GaussScalar::zero();
    let mut potential_sum = Rational::zero();
    for i in 0..n {
        let d1 = p.partial_derivative(i)?;
        let d2 = d1.partial_derivative(i)?.eval_rational(point)?;
        let d1 = d1.eval_rational(point)?;
        let self_term = lambda * lambda * &a[i] * &a[i] - lambda * &b[i];
        let kin = d2 + d1.scale(&(Rational::from(2) * lambda * &a[i])) + p_val.scale(&self_term);
        lhs += &kin.scale(&Rational::frac(1, 2));
        potential_sum += &b[i];
    }
    // −(g/2) Σ_{i≠j} (xi − xj)^{-2}; Σ_i Bi is the same double sum.
    let potential = -(params.coupling() * potential_sum / Rational::from(2));
    lhs += &p_val.scale(&potential);

    let rhs = tplus_raw(p, params)?.eval_rational(point)?;
    Ok(JastrowSides { lhs, rhs })
}

/// Exact comparison of the conjugated Hamiltonian with `T+` on `p`, sampled
/// at each point.
pub fn jastrow_conjugation_check(
    p: &MultiPoly,
    points: &[Vec<Rational>],
    params: &SystemParams,
) -> Result<VerificationReport> {
    check_domain(p, params)?;
    let mut report = VerificationReport::new("jastrow-conjugation")
        .param("n_particles", params.n)
        .param("lambda", &params.lambda)
        .param("points", points.len());
    for pt in points {
        let sides = jastrow_sides(p, pt, params)?;
        let loc: Vec<String> = pt.iter().map(ToString::to_string).collect();
        let loc = format!("({})", loc.join(","));
        report.residual(loc.clone(), &sides.lhs - &sides.rhs);
        report.observe(format!("{loc}:lhs"), sides.lhs);
    }
    report.note(&format!("sampled at {} rational points", points.len()));
    Ok(report.finish())
}
