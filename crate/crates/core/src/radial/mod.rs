//! The abstract lowest-weight su(1,1) module.
//!
//! States are finite combinations of `F_a = T-^a P` where `T+ P = 0` and
//! `T0 P = μ P`. The generators act on single terms by
//!
//! ```text
//! T- F_a = F_{a+1}
//! T0 F_a = (μ − a) F_a
//! T+ F_a = a (a − 1 − 2μ) F_{a−1}
//! ```
//!
//! Exponents run over `a = β + j`, `j ≥ 0`, with `β = 0` (the tower on `P`)
//! or `β = 2μ + 1` (the tower on `Q = T-^β P`, itself annihilated by `T+`).

pub mod coherent;
pub mod dressing;
pub mod time;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::numeric::{GaussScalar, Rational};
use crate::realization::{tminus_raw, Generator, SystemParams};

pub use coherent::{coherent_state, CoherentState};
pub use dressing::{
    build_r_vacuum, check_f_commutator_l, dressed_generator, laguerre_eigenstate_check, laguerre_state,
    ladder_states_check, r_spectrum, verify_dressing, DressedSpec, GeneratorCombo, LadderSign, SectorOp,
};
pub use time::{
    apply_time_operator, check_canonical_commutator, check_shift_identity, resolve_mu_c,
    time_eigenstate_residual, OperatorOrder, Weights,
};

/// Finite combination `Σ_j c_j F_{β+j}` on a tower of weight `μ`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRadialVector")]
pub struct RadialVector {
    weight: Rational,
    beta: Rational,
    coeffs: BTreeMap<u32, GaussScalar>,
}

#[derive(Deserialize)]
struct RawRadialVector {
    weight: Rational,
    beta: Rational,
    coeffs: BTreeMap<u32, GaussScalar>,
}

impl TryFrom<RawRadialVector> for RadialVector {
    type Error = Error;

    fn try_from(raw: RawRadialVector) -> Result<Self> {
        let mut v = RadialVector::zero(raw.weight, raw.beta)?;
        for (j, c) in raw.coeffs {
            v.add_at(j, c);
        }
        Ok(v)
    }
}

impl RadialVector {
    /// Zero vector on the tower with base exponent `beta`; `beta` must be
    /// `0` or `2·weight + 1` so that the base vector is annihilated by `T+`.
    pub fn zero(weight: Rational, beta: Rational) -> Result<Self> {
        let alt = Rational::from(2) * &weight + Rational::one();
        if !beta.is_zero() && beta != alt {
            return Err(Error::InvalidTower { weight: weight.to_string(), beta: beta.to_string() });
        }
        Ok(RadialVector { weight, beta, coeffs: BTreeMap::new() })
    }

    /// Zero vector on the primary tower (`β = 0`).
    pub fn primary(weight: Rational) -> Self {
        RadialVector { weight, beta: Rational::zero(), coeffs: BTreeMap::new() }
    }

    /// `F_j` on the primary tower.
    pub fn basis(weight: Rational, j: u32) -> Self {
        let mut v = Self::primary(weight);
        v.add_at(j, GaussScalar::one());
        v
    }

    /// Zero vector of the same tower.
    pub fn empty_like(&self) -> Self {
        RadialVector { weight: self.weight.clone(), beta: self.beta.clone(), coeffs: BTreeMap::new() }
    }

    /// `F_{β+j}` on the same tower.
    pub fn unit_like(&self, j: u32) -> Self {
        let mut v = self.empty_like();
        v.add_at(j, GaussScalar::one());
        v
    }

    pub fn from_coeffs(
        weight: Rational,
        beta: Rational,
        coeffs: impl IntoIterator<Item = (u32, GaussScalar)>,
    ) -> Result<Self> {
        let mut v = Self::zero(weight, beta)?;
        for (j, c) in coeffs {
            v.add_at(j, c);
        }
        Ok(v)
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// Exponent `a = β + j` of tower index `j`.
    pub fn exponent(&self, j: u32) -> Rational {
        &self.beta + Rational::from(j as i64)
    }

    pub fn coeff(&self, j: u32) -> GaussScalar {
        self.coeffs.get(&j).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &GaussScalar)> {
        self.coeffs.iter().map(|(&j, c)| (j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_at(&mut self, j: u32, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(j).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&j);
        }
    }

    fn same_tower(&self, other: &RadialVector) {
        assert!(
            self.weight == other.weight && self.beta == other.beta,
            "radial vectors live on different towers"
        );
    }

    pub fn add(&self, other: &RadialVector) -> RadialVector {
        self.same_tower(other);
        let mut out = self.clone();
        for (&j, c) in &other.coeffs {
            out.add_at(j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RadialVector) -> RadialVector {
        self.add(&other.scale(&GaussScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &GaussScalar) -> RadialVector {
        let mut out = self.empty_like();
        for (&j, a) in &self.coeffs {
            out.add_at(j, a * c);
        }
        out
    }

    /// Components with index `j ≤ max_j`.
    pub fn truncate(&self, max_j: u32) -> RadialVector {
        let mut out = self.empty_like();
        for (&j, c) in self.coeffs.range(..=max_j) {
            out.add_at(j, c.clone());
        }
        out
    }
}

impl fmt::Display for RadialVector {
    /// `c * F[a]` terms in increasing exponent, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&j, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} * F[{}]", self.exponent(j))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RadialVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadialVector(mu={}, beta={}: {self})", self.weight, self.beta)
    }
}

/// `−μ(μ+1)`, the value of the Casimir on the module of lowest weight `μ`.
pub fn casimir_value(mu: &Rational) -> Rational {
    -(mu * &(mu + Rational::one()))
}

/// Action of a generator, extended linearly from the single-term rules.
pub fn radial_apply(g: Generator, v: &RadialVector) -> RadialVector {
    let mut out = v.empty_like();
    let two_mu = Rational::from(2) * &v.weight;
    for (&j, c) in &v.coeffs {
        let a = v.exponent(j);
        match g {
            Generator::Tminus => out.add_at(j + 1, c.clone()),
            Generator::T0 => out.add_at(j, c.scale(&(&v.weight - &a))),
            Generator::Tplus => {
                let factor = &a * &(&a - Rational::one() - &two_mu);
                if factor.is_zero() {
                    continue;
                }
                // Nonzero factors never occur at j = 0 on an admissible tower.
                out.add_at(j - 1, c.scale(&factor));
            }
        }
    }
    out
}

/// Applies a word of generators, rightmost first (as written).
pub fn radial_apply_word(word: &[Generator], v: &RadialVector) -> RadialVector {
    word.iter().rev().fold(v.clone(), |acc, &g| radial_apply(g, &acc))
}

/// Maps a primary-tower vector to the concrete polynomial `Σ c_j T-^j P`.
pub fn realize(v: &RadialVector, p: &MultiPoly, params: &SystemParams) -> Result<MultiPoly> {
    if !v.beta.is_zero() {
        return Err(Error::InvalidTower { weight: v.weight.to_string(), beta: v.beta.to_string() });
    }
    let mut out = MultiPoly::zero(params.n());
    let mut power = p.clone();
    let mut k = 0;
    for (&j, c) in &v.coeffs {
        while k < j {
            power = tminus_raw(&power, params)?;
            k += 1;
        }
        out = out.checked_add(&power.scale(c))?;
    }
    Ok(out)
}
