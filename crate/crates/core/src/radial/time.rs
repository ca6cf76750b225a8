//! The time operator `T̂ = T- · (−1/(T0 + μ_c))`, the choice of Casimir root
//! `μ_c`, and the time-operator eigenstates on the `β = 2μ+1` tower.

use crate::error::{Error, Result};
use crate::numeric::{factorial, GaussScalar, Rational};
use crate::realization::Generator;
use crate::report::{ExactOrder, VerificationReport};

use super::{casimir_value, radial_apply, RadialVector};

/// Lowest weight, Casimir value and the two roots of `x(x+1) = −Ĉ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weights {
    pub mu: Rational,
    pub casimir: Rational,
    /// `((−1 − √(1−4Ĉ))/2, (−1 + √(1−4Ĉ))/2)`.
    pub mu_c_candidates: (Rational, Rational),
    pub mu_c_selected: Option<Rational>,
}

impl Weights {
    pub fn new(mu: Rational) -> Result<Self> {
        let casimir = casimir_value(&mu);
        let disc = Rational::one() - Rational::from(4) * &casimir;
        let root = disc.exact_sqrt()?;
        let half = Rational::frac(1, 2);
        let lo = (-Rational::one() - &root) * &half;
        let hi = (-Rational::one() + &root) * &half;
        Ok(Weights { mu, casimir, mu_c_candidates: (lo, hi), mu_c_selected: None })
    }

    /// The root taken with the nonnegative square root.
    pub fn positive_root(&self) -> &Rational {
        &self.mu_c_candidates.1
    }

    /// The other root.
    pub fn alternate(&self) -> &Rational {
        &self.mu_c_candidates.0
    }

    /// Forces a particular root (used to demonstrate the failing choice).
    pub fn with_mu_c(mut self, mu_c: Rational) -> Self {
        self.mu_c_selected = Some(mu_c);
        self
    }

    pub fn mu_c(&self) -> Result<&Rational> {
        self.mu_c_selected.as_ref().ok_or(Error::RootNotSelected)
    }

    /// Root distinct from `mu_c` among the candidates, if any.
    pub fn rejected(&self) -> Option<Rational> {
        let sel = self.mu_c_selected.as_ref()?;
        let (a, b) = &self.mu_c_candidates;
        if a == b {
            None
        } else if sel == a {
            Some(b.clone())
        } else {
            Some(a.clone())
        }
    }

    pub fn record_convention(&self, report: &mut VerificationReport) {
        let selected = self.mu_c_selected.as_ref().map_or("unset".to_string(), ToString::to_string);
        report.convention(
            "mu_c (Casimir root in the time operator)",
            self.positive_root(),
            selected,
            "[T+, iT] - i vanishes on F_a for all tested a",
        );
    }
}

/// Placement of `T-` relative to the resolvent in `T̂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OperatorOrder {
    /// `T- · (−1/(T0 + μ_c))`, resolvent applied first.
    #[default]
    ResolventFirst,
    /// `(−1/(T0 + μ_c)) · T-`.
    TminusFirst,
}

/// `T̂ v` with the selected root.
pub fn apply_time_operator(v: &RadialVector, w: &Weights) -> Result<RadialVector> {
    apply_time_operator_with(v, w.mu_c()?, OperatorOrder::ResolventFirst)
}

pub fn apply_time_operator_with(v: &RadialVector, mu_c: &Rational, order: OperatorOrder) -> Result<RadialVector> {
    let mut out = v.empty_like();
    for (j, c) in v.coeffs() {
        let a = v.exponent(j);
        // T0 eigenvalue seen by the resolvent.
        let t0 = match order {
            OperatorOrder::ResolventFirst => v.weight() - &a,
            OperatorOrder::TminusFirst => v.weight() - &a - Rational::one(),
        };
        let denom = t0 + mu_c;
        if denom.is_zero() {
            return Err(Error::ResolventPole { exponent: a.to_string() });
        }
        out.add_at(j + 1, c.scale(&(-denom.recip()?)));
    }
    Ok(out)
}

/// `(−T0 + shift)^{-1} v`.
fn apply_resolvent(v: &RadialVector, shift: &Rational) -> Result<RadialVector> {
    let mut out = v.empty_like();
    for (j, c) in v.coeffs() {
        let a = v.exponent(j);
        let denom = -(v.weight() - &a) + shift;
        if denom.is_zero() {
            return Err(Error::ResolventPole { exponent: a.to_string() });
        }
        out.add_at(j, c.scale(&denom.recip()?));
    }
    Ok(out)
}

/// `([T+, iT̂] − i) F_a` for one basis vector.
fn canonical_residual(f: &RadialVector, mu_c: &Rational, order: OperatorOrder) -> Result<RadialVector> {
    let i = GaussScalar::i();
    let t_then_p = radial_apply(Generator::Tplus, &apply_time_operator_with(f, mu_c, order)?);
    let p_then_t = apply_time_operator_with(&radial_apply(Generator::Tplus, f), mu_c, order)?;
    Ok(t_then_p.sub(&p_then_t).scale(&i).sub(&f.scale(&i)))
}

fn commutator_holds(mu: &Rational, mu_c: &Rational, k: u32) -> bool {
    (0..=k).all(|a| {
        canonical_residual(&RadialVector::basis(mu.clone(), a), mu_c, OperatorOrder::ResolventFirst)
            .map(|r| r.is_zero())
            .unwrap_or(false)
    })
}

/// Selects the Casimir root for which `[T+, iT̂] = i` holds on `F_0..F_K`.
pub fn resolve_mu_c(w: &Weights, k: u32) -> Result<Weights> {
    let (lo, hi) = &w.mu_c_candidates;
    if lo == hi {
        return if commutator_holds(&w.mu, lo, k) {
            Ok(w.clone().with_mu_c(lo.clone()))
        } else {
            Err(Error::NoConsistentRoot)
        };
    }
    match (commutator_holds(&w.mu, lo, k), commutator_holds(&w.mu, hi, k)) {
        (true, false) => Ok(w.clone().with_mu_c(lo.clone())),
        (false, true) => Ok(w.clone().with_mu_c(hi.clone())),
        (true, true) => Err(Error::AmbiguousRoot),
        (false, false) => Err(Error::NoConsistentRoot),
    }
}

/// Residuals of the canonical commutator on `F_0..F_K`. With `compare_order`
/// the swapped operator order is evaluated too and recorded as observations
/// only.
pub fn check_canonical_commutator(w: &Weights, k: u32, compare_order: bool) -> Result<VerificationReport> {
    let mu_c = w.mu_c()?;
    let mut report = VerificationReport::new("canonical-commutator")
        .param("mu", &w.mu)
        .param("mu_c", mu_c)
        .param("K", k);
    w.record_convention(&mut report);
    report.observe("casimir", &w.casimir);
    report.observe("mu_c_candidates", format!("{},{}", w.mu_c_candidates.0, w.mu_c_candidates.1));
    for a in 0..=k {
        let f = RadialVector::basis(w.mu.clone(), a);
        report.residual(format!("a={a}"), canonical_residual(&f, mu_c, OperatorOrder::ResolventFirst)?);
        if compare_order {
            let alt = match canonical_residual(&f, mu_c, OperatorOrder::TminusFirst) {
                Ok(r) => r.to_string(),
                Err(e) => format!("error: {e}"),
            };
            report.observe(format!("swapped-order:a={a}"), alt);
        }
    }
    if let Some(rej) = w.rejected() {
        let r0 = canonical_residual(&RadialVector::basis(w.mu.clone(), 0), &rej, OperatorOrder::ResolventFirst)?;
        report.observe(format!("rejected-root({rej}):a=0"), r0);
    }
    Ok(report.finish())
}

/// Residual of `T-^n (−T0 − μ + n)^{-1} = (−T0 − μ)^{-1} T-^n` on `v`.
pub fn check_shift_identity(n: u32, mu: &Rational, v: &RadialVector) -> Result<VerificationReport> {
    let raise = |v: &RadialVector| (0..n).fold(v.clone(), |acc, _| radial_apply(Generator::Tminus, &acc));
    let lhs = raise(&apply_resolvent(v, &(-mu + Rational::from(n as i64)))?);
    let rhs = apply_resolvent(&raise(v), &-mu)?;
    let mut report = VerificationReport::new("shift-identity")
        .param("n", n)
        .param("mu", mu)
        .param("weight", v.weight());
    report.observe("lhs", &lhs);
    report.residual("lhs-rhs", lhs.sub(&rhs));
    Ok(report.finish())
}

/// Eigenstate analysis of `iT̂` on `ψ_t = Σ_{k≤K} (i/t)^k/k! F_{β+k}`,
/// `β = 2μ + 1`.
///
/// Residuals: the weight of `F_β` against `−(μ_c + 1)`, the annihilation
/// `T+ F_β = 0`, and the deviation of `(iT̂ − t)ψ_t` from the closed-form
/// defect `−t F_β`. When those vanish but the defect itself is nonzero the
/// status is [`Status::Defect`](crate::report::Status::Defect).
pub fn time_eigenstate_residual(t: &Rational, w: &Weights, k: u32) -> Result<VerificationReport> {
    if t.is_zero() {
        return Err(Error::InvalidParams("t must be nonzero".into()));
    }
    let mu_c = w.mu_c()?;
    let beta = Rational::from(2) * &w.mu + Rational::one();
    let s = GaussScalar::new(Rational::zero(), t.recip()?);
    let mut psi = RadialVector::zero(w.mu.clone(), beta.clone())?;
    let mut coeff = GaussScalar::one();
    for j in 0..=k {
        if j > 0 {
            coeff = (&coeff * &s).scale(&Rational::frac(1, j as i64));
        }
        psi.add_at(j, coeff.clone());
    }

    let mut report = VerificationReport::new("time-eigenstate")
        .param("mu", &w.mu)
        .param("mu_c", mu_c)
        .param("t", t)
        .param("K", k);
    w.record_convention(&mut report);
    report.exact_through_order = ExactOrder::Through(k as usize);

    let q0 = psi.unit_like(0);
    let weight_res = radial_apply(Generator::T0, &q0).add(&q0.scale(&(mu_c + &Rational::one()).into()));
    report.residual("T0 Q + (mu_c+1) Q", weight_res);
    report.residual("T+ Q", radial_apply(Generator::Tplus, &q0));

    let t_g = GaussScalar::real(t.clone());
    let i_t_psi = apply_time_operator(&psi, w)?.scale(&GaussScalar::i());
    let defect = i_t_psi.sub(&psi.scale(&t_g)).truncate(k);
    let expected = q0.scale(&-&t_g);
    report.residual("(iT - t)psi + t F_beta (orders <= K)", defect.sub(&expected));
    report.observe("beta", &beta);
    report.observe("defect (iT - t)psi (orders <= K)", &defect);
    let tail = factorial(k + 1).recip()?;
    report.observe(
        "truncation tail at order K+1",
        (&t_g * &s.pow(k + 1)).scale(&tail),
    );
    let report = report.finish();
    if report.passed() && !defect.is_zero() {
        let mut r = report;
        r.status = crate::report::Status::Defect;
        r.note("eigenvalue equation fails as stated: (iT - t)psi_t = -t F_beta, supported on the lowest tower component only");
        return Ok(r);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn candidates_and_selection() {
        let w = Weights::new(q("-5/4")).unwrap();
        assert_eq!(w.mu_c_candidates, (q("-5/4"), q("1/4")));
        assert_eq!(w.positive_root(), &q("1/4"));
        let r = resolve_mu_c(&w, 20).unwrap();
        assert_eq!(r.mu_c_selected, Some(q("-5/4")));

        let deg = resolve_mu_c(&Weights::new(q("-1/2")).unwrap(), 10).unwrap();
        assert_eq!(deg.mu_c_selected, Some(q("-1/2")));
        assert_eq!(deg.rejected(), None);

        let w2 = resolve_mu_c(&Weights::new(q("-9/4")).unwrap(), 20).unwrap();
        assert_eq!(w2.mu_c_selected, Some(q("-9/4")));
    }

    #[test]
    fn time_operator_action() {
        let w = Weights::new(q("-5/4")).unwrap().with_mu_c(q("-5/4"));
        let f0 = RadialVector::basis(q("-5/4"), 0);
        assert_eq!(apply_time_operator(&f0, &w).unwrap(), RadialVector::basis(q("-5/4"), 1).scale(&q("2/5").into()));
        let f3 = RadialVector::basis(q("-5/4"), 3);
        // 1/(a + 5/2) at a = 3
        assert_eq!(apply_time_operator(&f3, &w).unwrap(), RadialVector::basis(q("-5/4"), 4).scale(&q("2/11").into()));
        let wr = Weights::new(q("-5/4")).unwrap().with_mu_c(q("1/4"));
        assert_eq!(apply_time_operator(&f3, &wr).unwrap(), RadialVector::basis(q("-5/4"), 4).scale(&q("1/4").into()));
    }

    #[test]
    fn resolvent_pole_reported() {
        // μ = μ_c = 1: denominator 2μ − a vanishes at a = 2.
        let w = Weights::new(q("1")).unwrap().with_mu_c(q("1"));
        let f2 = RadialVector::basis(q("1"), 2);
        assert_eq!(apply_time_operator(&f2, &w), Err(Error::ResolventPole { exponent: "2/1".into() }));
    }

    #[test]
    fn canonical_commutator_selected_and_rejected() {
        let w = resolve_mu_c(&Weights::new(q("-5/4")).unwrap(), 20).unwrap();
        let rep = check_canonical_commutator(&w, 20, false).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.conventions.len(), 1);

        let forced = Weights::new(q("-5/4")).unwrap().with_mu_c(q("1/4"));
        let bad = check_canonical_commutator(&forced, 20, false).unwrap();
        assert_eq!(bad.status, Status::Fail);
        // i(−2μ − 1) F_0 = (3/2) i F_0
        assert_eq!(bad.residuals[0].value, "3/2*i * F[0/1]");
        assert!(bad.residuals[1..].iter().all(|e| e.is_zero()));

        let dbl = resolve_mu_c(&Weights::new(q("-1/2")).unwrap(), 20).unwrap();
        assert!(check_canonical_commutator(&dbl, 20, true).unwrap().passed());
    }

    #[test]
    fn shift_identity() {
        let f0 = RadialVector::basis(q("-5/4"), 0);
        let r = check_shift_identity(1, &q("0"), &f0).unwrap();
        assert!(r.passed());
        assert_eq!(r.observation("lhs"), Some("4/9 * F[1/1]"));
        assert!(check_shift_identity(0, &q("3/5"), &f0).unwrap().passed());
        let v = f0.add(&RadialVector::basis(q("-5/4"), 2).scale(&GaussScalar::from_int(2)));
        assert!(check_shift_identity(3, &q("7/11"), &v).unwrap().passed());
        // −(w − a) − μ + n = 0 at w = −5/4, a = 0, n = 1, μ = 9/4
        assert!(matches!(check_shift_identity(1, &q("9/4"), &f0), Err(Error::ResolventPole { .. })));
    }

    #[test]
    fn time_eigenstate_defect() {
        let w = resolve_mu_c(&Weights::new(q("-5/4")).unwrap(), 12).unwrap();
        let r = time_eigenstate_residual(&q("1"), &w, 12).unwrap();
        assert_eq!(r.status, Status::Defect, "{r:?}");
        assert_eq!(r.observation("defect (iT - t)psi (orders <= K)"), Some("-1/1 * F[-3/2]"));

        let forced = Weights::new(q("-5/4")).unwrap().with_mu_c(q("1/4"));
        assert_eq!(time_eigenstate_residual(&q("1"), &forced, 12).unwrap().status, Status::Fail);
    }
}
