//! Zero-energy polynomials: the exact nullspace of `T+` restricted to the
//! degree-`m` invariant polynomials.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{self, ExactMatrix};
use crate::multipoly::{invariant_basis, InvariantBasis, Monomial, MultiPoly};
use crate::numeric::{GaussScalar, Rational};
use crate::realization::{t0_raw, tplus_raw, SystemParams};
use crate::report::VerificationReport;

/// Coordinates of polynomials in a fixed invariant basis.
struct Coordinatizer {
    monomials: BTreeMap<Monomial, usize>,
    basis: ExactMatrix,
}

impl Coordinatizer {
    fn new(basis: &InvariantBasis) -> Self {
        let mut monomials = BTreeMap::new();
        for e in &basis.elements {
            for (m, _) in e.terms() {
                let next = monomials.len();
                monomials.entry(m.clone()).or_insert(next);
            }
        }
        let columns: Vec<Vec<GaussScalar>> =
            basis.elements.iter().map(|e| Self::dense(&monomials, e).expect("own monomials")).collect();
        Coordinatizer { basis: ExactMatrix::from_columns(monomials.len(), &columns), monomials }
    }

    fn dense(index: &BTreeMap<Monomial, usize>, p: &MultiPoly) -> Option<Vec<GaussScalar>> {
        let mut v = vec![GaussScalar::zero(); index.len()];
        for (m, c) in p.terms() {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    fn coordinates(&self, p: &MultiPoly) -> Result<Vec<GaussScalar>> {
        if self.basis.cols() == 0 {
            return if p.is_zero() { Ok(Vec::new()) } else { Err(Error::NotInSpan) };
        }
        let b = Self::dense(&self.monomials, p).ok_or(Error::NotInSpan)?;
        matrix::solve(&self.basis, &b).ok_or(Error::NotInSpan)
    }
}

/// Matrix of `T+ : V_m → V_{m−2}` in the invariant bases; column `k` holds
/// the image of the `k`-th domain basis element.
pub fn assemble_tplus_matrix(params: &SystemParams, m: u32) -> Result<ExactMatrix> {
    let domain = invariant_basis(params.n(), m)?;
    assemble_on(params, &domain)
}

fn assemble_on(params: &SystemParams, domain: &InvariantBasis) -> Result<ExactMatrix> {
    let n = params.n();
    if domain.degree < 2 {
        return Ok(ExactMatrix::zeros(0, domain.len()));
    }
    let target = invariant_basis(n, domain.degree - 2)?;
    let coords = Coordinatizer::new(&target);
    // Columns are independent; the indexed collect keeps basis order.
    let columns: Vec<Vec<GaussScalar>> = domain
        .elements
        .par_iter()
        .map(|e| coords.coordinates(&tplus_raw(e, params)?))
        .collect::<Result<_>>()?;
    Ok(ExactMatrix::from_columns(target.len(), &columns))
}

pub fn exact_nullspace(m: &ExactMatrix) -> Vec<Vec<GaussScalar>> {
    m.nullspace()
}

/// Zero-energy states of one degree.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub params: SystemParams,
    pub degree: u32,
    /// Coordinates in [`invariant_basis`] order, reduced echelon form.
    pub coefficients: Vec<Vec<GaussScalar>>,
    pub vectors: Vec<MultiPoly>,
    pub domain_dimension: usize,
    pub rank: usize,
    /// True when the kernel is larger than `dim V_m − dim V_{m−2}`, the
    /// dimension seen at generic coupling.
    pub non_generic: bool,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn mu(&self) -> Rational {
        self.params.mu(self.degree)
    }

    pub fn descriptor(&self) -> KernelDescriptor {
        KernelDescriptor {
            n: self.params.n(),
            lambda: self.params.lambda().to_string(),
            m: self.degree,
            dimension: self.dimension(),
            basis: self.vectors.iter().map(ToString::to_string).collect(),
        }
    }
}

/// JSON export of a kernel basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelDescriptor {
    #[serde(rename = "N")]
    pub n: usize,
    pub lambda: String,
    pub m: u32,
    pub dimension: usize,
    pub basis: Vec<String>,
}

pub fn zero_energy_states(params: &SystemParams, m: u32) -> Result<KernelBasis> {
    let domain = invariant_basis(params.n(), m)?;
    let matrix = assemble_on(params, &domain)?;
    let coefficients = matrix.nullspace();
    let rank = matrix.rank();
    let mu = params.mu(m);
    let mut vectors = Vec::with_capacity(coefficients.len());
    for coeffs in &coefficients {
        let mut v = MultiPoly::zero(params.n());
        for (c, e) in coeffs.iter().zip(&domain.elements) {
            v = v.checked_add(&e.scale(c))?;
        }
        if !tplus_raw(&v, params)?.is_zero() {
            return Err(Error::VerificationFailed(format!("T+ P_{m} != 0 for {v}")));
        }
        if t0_raw(&v, params)? != v.scale_rational(&mu) {
            return Err(Error::VerificationFailed(format!("T0 P_{m} != mu_m P_{m} for {v}")));
        }
        vectors.push(v);
    }
    let generic = domain.len().saturating_sub(matrix.rows());
    Ok(KernelBasis {
        params: params.clone(),
        degree: m,
        non_generic: coefficients.len() > generic,
        coefficients,
        vectors,
        domain_dimension: domain.len(),
        rank,
    })
}

/// Kernel report for one degree, re-verifying every basis vector.
pub fn kernel_report(params: &SystemParams, m: u32) -> Result<VerificationReport> {
    let kb = zero_energy_states(params, m)?;
    let mu = kb.mu();
    let mut report = VerificationReport::new(format!("kernel[m={m}]"))
        .param("n_particles", params.n())
        .param("lambda", params.lambda())
        .param("degree", m);
    report.observe("dimension", kb.dimension());
    report.observe("domain_dimension", kb.domain_dimension);
    report.observe("rank", kb.rank);
    report.observe("mu_m", &mu);
    for (k, v) in kb.vectors.iter().enumerate() {
        report.observe(format!("basis[{k}]"), v);
        report.residual(format!("basis[{k}]:T+P"), tplus_raw(v, params)?);
        report.residual(format!("basis[{k}]:T0P-mu*P"), t0_raw(v, params)?.checked_sub(&v.scale_rational(&mu))?);
    }
    if kb.domain_dimension != kb.dimension() + kb.rank {
        report.residual("rank-nullity", format!("{}", kb.domain_dimension as i64 - (kb.dimension() + kb.rank) as i64));
    }
    if kb.non_generic {
        report.note("non-generic coupling: kernel larger than at generic lambda");
    }
    Ok(report.finish())
}
