//! Coherent states `Ψ = e^{E T̂} P`, truncated at order `K`.

use crate::error::{Error, Result};
use crate::numeric::{factorial, GaussScalar, Rational};
use crate::realization::Generator;
use crate::report::{ExactOrder, VerificationReport};

use super::time::{apply_time_operator, Weights};
use super::{radial_apply, RadialVector};

#[derive(Debug, Clone)]
pub struct CoherentState {
    pub state: RadialVector,
    pub report: VerificationReport,
}

/// Modified-Bessel series coefficients `E^k / (k! (ν+1)_k)`, `k = 0..=K`.
pub fn bessel_series_coeffs(e: &GaussScalar, nu: &Rational, k: u32) -> Result<Vec<GaussScalar>> {
    let nu1 = nu + &Rational::one();
    (0..=k)
        .map(|j| {
            let denom = factorial(j) * nu1.rising_factorial(j);
            Ok(e.pow(j).scale(&denom.recip()?))
        })
        .collect()
}

/// Builds `Σ_{k≤K} E^k/k! T̂^k F_0` and checks it against the eigenvalue
/// equation `T+ Ψ = E Ψ`, the Bessel series, and `∂Ψ/∂E = T̂ Ψ`.
pub fn coherent_state(e: &GaussScalar, w: &Weights, k: u32) -> Result<CoherentState> {
    if k < 2 {
        return Err(Error::TruncationTooSmall(k as usize));
    }
    let mu_c = w.mu_c()?.clone();
    let nu = -(Rational::from(2) * &w.mu) - Rational::one();

    let mut state = RadialVector::primary(w.mu.clone());
    let mut term = RadialVector::basis(w.mu.clone(), 0);
    for j in 0..=k {
        if j > 0 {
            term = apply_time_operator(&term, w)?.scale(&e.scale(&Rational::frac(1, j as i64)));
        }
        state = state.add(&term);
    }

    let mut report = VerificationReport::new("coherent-state")
        .param("mu", &w.mu)
        .param("mu_c", &mu_c)
        .param("E", e)
        .param("K", k);
    w.record_convention(&mut report);
    report.convention(
        "coherent-state eigenvalue sign",
        "-T+ Psi = E Psi",
        "T+ Psi = E Psi (the -T+ convention is recovered by E -> -E)",
        "e^{E T} P is an exact T+ eigenvector with eigenvalue +E",
    );
    report.exact_through_order = ExactOrder::Through(k as usize - 1);
    report.observe("nu", &nu);

    // (T+ − E)Ψ through order K−1; the order-K component is the truncation tail.
    let eigen = radial_apply(Generator::Tplus, &state).sub(&state.scale(e));
    report.residual("(T+ - E)Psi (orders <= K-1)", eigen.truncate(k - 1));
    report.observe("truncation tail at order K", eigen.coeff(k));

    let bessel = bessel_series_coeffs(e, &nu, k)?;
    for (j, b) in bessel.iter().enumerate() {
        let j = j as u32;
        report.residual(format!("c_{j} - bessel_{j}"), &state.coeff(j) - b);
        if j < k {
            // c_{j+1} (j+1)(j+1+ν) = E c_j, the Bessel ratio without division.
            let lhs = state.coeff(j + 1).scale(&(Rational::from(j as i64 + 1) * (Rational::from(j as i64 + 1) + &nu)));
            report.residual(format!("ratio c_{}/c_{j}", j + 1), lhs - e * &state.coeff(j));
        }
    }

    // dΨ/dE from the closed form versus T̂Ψ, orders 1..=K.
    let t_psi = apply_time_operator(&state, w)?;
    for j in 1..=k {
        let denom = factorial(j) * (&nu + &Rational::one()).rising_factorial(j);
        let dcoeff = e.pow(j - 1).scale(&(Rational::from(j as i64) * denom.recip()?));
        report.residual(format!("dPsi/dE - T Psi at order {j}"), dcoeff - t_psi.coeff(j));
    }

    let report = report.finish();
    Ok(CoherentState { state, report })
}
