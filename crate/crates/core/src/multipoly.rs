//! Sparse multivariate polynomials in `x1..xN` over ℚ(i).
//!
//! Polynomials are kept in plain `x` coordinates. The translation-invariant
//! subspace (annihilated by `Σ ∂i`) stands in for polynomials in the
//! center-of-mass variables `ξi = xi - X`; on that subspace the plain
//! derivatives agree with the constrained ones.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{GaussScalar, Rational};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then lexicographically with `x1 > x2 > ... > xN`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Monomial, GaussScalar>,
}

/// Ring operation selector for [`poly_arith`].
#[derive(Debug, Clone)]
pub enum PolyOp {
    Add,
    Mul,
    /// Multiply the first operand by a scalar; the second operand is ignored.
    Scale(GaussScalar),
}

pub fn poly_arith(p: &MultiPoly, q: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    match op {
        PolyOp::Add => p.checked_add(q),
        PolyOp::Mul => p.checked_mul(q),
        PolyOp::Scale(c) => Ok(p.scale(&c)),
    }
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: GaussScalar) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial::one(n_vars), c);
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, GaussScalar::one())
    }

    /// The coordinate `x_{index+1}` (0-based index).
    pub fn var(n_vars: usize, index: usize) -> Result<Self> {
        if index >= n_vars {
            return Err(Error::IndexOutOfRange { index, n_vars });
        }
        let mut e = vec![0; n_vars];
        e[index] = 1;
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial(e), GaussScalar::one());
        Ok(p)
    }

    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, GaussScalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n_vars);
        for (e, c) in terms {
            if e.len() != n_vars {
                return Err(Error::DimensionMismatch { left: n_vars, right: e.len() });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading (largest graded-lex) monomial downwards.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussScalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Value as a constant, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<GaussScalar> {
        match self.terms.len() {
            0 => Some(GaussScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &MultiPoly) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch { left: self.n_vars, right: other.n_vars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = MultiPoly::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n_vars);
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> MultiPoly {
        self.scale(&GaussScalar::real(r.clone()))
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.n_vars);
        for _ in 0..exp {
            acc = acc.checked_mul(self).expect("same dimension");
        }
        acc
    }

    /// Exact formal derivative with respect to `x_{index+1}` (0-based index).
    pub fn partial_derivative(&self, index: usize) -> Result<MultiPoly> {
        if index >= self.n_vars {
            return Err(Error::IndexOutOfRange { index, n_vars: self.n_vars });
        }
        let mut out = MultiPoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[index] -= 1;
            out.add_term(d, c.scale(&Rational::from(e as i64)));
        }
        Ok(out)
    }

    /// `Σ_i ∂_i p`.
    pub fn total_derivative(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n_vars);
        for i in 0..self.n_vars {
            out = out.checked_add(&self.partial_derivative(i).unwrap()).unwrap();
        }
        out
    }

    /// Euler operator `Σ_i x_i ∂_i`: scales each term by its degree.
    pub fn euler(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.scale(&Rational::from(m.degree() as i64)));
        }
        out
    }

    /// Quotient `q` with `q · (x_i - x_j) = p` (0-based indices).
    pub fn divide_by_difference(&self, i: usize, j: usize) -> Result<MultiPoly> {
        for idx in [i, j] {
            if idx >= self.n_vars {
                return Err(Error::IndexOutOfRange { index: idx, n_vars: self.n_vars });
            }
        }
        if i == j {
            return Err(Error::NotDivisible { i: i + 1, j: j + 1 });
        }
        // Bucket terms by the exponent of x_i, then peel off the top power
        // repeatedly: c·x_i^e·r = c·x_i^(e-1)·r·(x_i - x_j) + c·x_i^(e-1)·x_j·r.
        let top = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
        let mut buckets: Vec<BTreeMap<Monomial, GaussScalar>> = vec![BTreeMap::new(); top + 1];
        for (m, c) in &self.terms {
            buckets[m.0[i] as usize].insert(m.clone(), c.clone());
        }
        let mut quotient = MultiPoly::zero(self.n_vars);
        for e in (1..=top).rev() {
            let bucket = std::mem::take(&mut buckets[e]);
            for (mut m, c) in bucket {
                if c.is_zero() {
                    continue;
                }
                m.0[i] -= 1;
                quotient.add_term(m.clone(), c.clone());
                m.0[j] += 1;
                let slot = buckets[e - 1].entry(m).or_default();
                *slot += &c;
            }
        }
        if buckets[0].values().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible { i: i + 1, j: j + 1 });
        }
        Ok(quotient)
    }

    /// Exchange of coordinates `x_i` and `x_j` (0-based).
    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            let mut s = m.clone();
            s.0.swap(i, j);
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n_vars.saturating_sub(1)).all(|i| self.swap_vars(i, i + 1) == *self)
    }

    pub fn is_translation_invariant(&self) -> bool {
        self.total_derivative().is_zero()
    }

    /// Common total degree of every term; `None` for inhomogeneous input and
    /// for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn eval(&self, point: &[GaussScalar]) -> Result<GaussScalar> {
        if point.len() != self.n_vars {
            return Err(Error::DimensionMismatch { left: self.n_vars, right: point.len() });
        }
        let mut acc = GaussScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Result<GaussScalar> {
        let pt: Vec<GaussScalar> = point.iter().cloned().map(GaussScalar::real).collect();
        self.eval(&pt)
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(s: &str, n_vars: usize) -> Result<MultiPoly> {
        let bad = || Error::Parse { kind: "polynomial", input: s.to_string() };
        let s = s.trim();
        if s == "0" {
            return Ok(MultiPoly::zero(n_vars));
        }
        let mut p = MultiPoly::zero(n_vars);
        for term in s.split(" + ") {
            let (coeff, vars) = term.split_once(" * ").ok_or_else(bad)?;
            let c: GaussScalar = coeff.parse()?;
            let mut e = vec![0u32; n_vars];
            let mut seen = vec![false; n_vars];
            for v in vars.split(' ') {
                let (name, pow) = v.split_once('^').ok_or_else(bad)?;
                let idx: usize = name.strip_prefix('x').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if idx == 0 || idx > n_vars || seen[idx - 1] {
                    return Err(bad());
                }
                seen[idx - 1] = true;
                e[idx - 1] = pow.parse().map_err(|_| bad())?;
            }
            if seen.iter().any(|s| !s) {
                return Err(bad());
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    /// `coeff * x1^a1 ... xN^aN` terms, leading term first, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} *")?;
            for (v, e) in m.0.iter().enumerate() {
                write!(f, " x{}^{}", v + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Flags reported by [`invariance_predicates`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariance {
    pub symmetric: bool,
    pub translation_invariant: bool,
    pub homogeneous_degree: Option<u32>,
}

pub fn invariance_predicates(p: &MultiPoly) -> Invariance {
    Invariance {
        symmetric: p.is_symmetric(),
        translation_invariant: p.is_translation_invariant(),
        homogeneous_degree: p.homogeneous_degree(),
    }
}

/// `Σ_i (x_i - X)^k` with `X` the coordinate mean.
pub fn shifted_power_sum(n: usize, k: u32) -> Result<MultiPoly> {
    if k < 2 {
        return Err(Error::InvalidDegree(k));
    }
    if n < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 coordinates, got {n}")));
    }
    let mean_coeff = GaussScalar::real(Rational::frac(-1, n as i64));
    let mut centre = MultiPoly::zero(n);
    for i in 0..n {
        centre = centre.checked_add(&MultiPoly::var(n, i)?.scale(&mean_coeff))?;
    }
    let mut out = MultiPoly::zero(n);
    for i in 0..n {
        let xi = MultiPoly::var(n, i)?.checked_add(&centre)?;
        out = out.checked_add(&xi.pow(k))?;
    }
    Ok(out)
}

/// Basis of the homogeneous, symmetric, translation-invariant polynomials of
/// a fixed degree: monomials in the shifted power sums `p_2 .. p_N`.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    pub n_vars: usize,
    pub degree: u32,
    /// Exponents `(a_2, .., a_N)` of each element, in basis order.
    pub partitions: Vec<Vec<u32>>,
    pub elements: Vec<MultiPoly>,
}

impl InvariantBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Human-readable label such as `p2^2 p3`.
    pub fn label(&self, index: usize) -> String {
        let parts: Vec<String> = self.partitions[index]
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(k, &a)| if a == 1 { format!("p{}", k + 2) } else { format!("p{}^{}", k + 2, a) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Exponent vectors `(a_2..a_N)` with `Σ k·a_k = m`, largest `a_2` first.
fn power_sum_partitions(n: usize, m: u32) -> Vec<Vec<u32>> {
    fn rec(k: u32, max_k: u32, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k > max_k {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in (0..=rest / k).rev() {
            cur.push(a);
            rec(k + 1, max_k, rest - a * k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(2, n as u32, m, &mut Vec::new(), &mut out);
    out
}

pub fn invariant_basis(n: usize, m: u32) -> Result<InvariantBasis> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 particles, got {n}")));
    }
    let partitions = power_sum_partitions(n, m);
    let sums: Vec<MultiPoly> =
        (2..=n as u32).map(|k| shifted_power_sum(n, k)).collect::<Result<_>>()?;
    let elements = partitions
        .iter()
        .map(|exps| {
            exps.iter()
                .zip(&sums)
                .filter(|(&a, _)| a > 0)
                .try_fold(MultiPoly::one(n), |acc, (&a, p)| acc.checked_mul(&p.pow(a)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantBasis { n_vars: n, degree: m, partitions, elements })
}
