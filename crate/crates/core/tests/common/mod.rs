//! Test oracles that share no code with the library's polynomial or linear
//! algebra layers.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use calogero_core::Rational;

type Poly = BTreeMap<Vec<u32>, BigRational>;

fn add_term(p: &mut Poly, exps: Vec<u32>, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(exps).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        p.retain(|_, v| !v.is_zero());
    }
}

fn derivative(p: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        if e[i] > 0 {
            let mut e2 = e.clone();
            e2[i] -= 1;
            add_term(&mut out, e2, c * BigRational::from_integer(BigInt::from(e[i])));
        }
    }
    out
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        add_term(&mut out, e.clone(), -c.clone());
    }
    out
}

/// Long division by `x_i − x_j`, eliminating the highest power of `x_i` first.
fn divide_by_difference(h: &Poly, i: usize, j: usize) -> Poly {
    let mut rem = h.clone();
    let mut q = Poly::new();
    loop {
        let top = rem.iter().filter(|(e, _)| e[i] > 0).max_by_key(|(e, _)| e[i]).map(|(e, c)| (e.clone(), c.clone()));
        let Some((e, c)) = top else { break };
        let mut qe = e.clone();
        qe[i] -= 1;
        add_term(&mut q, qe.clone(), c.clone());
        // rem -= c x^qe (x_i − x_j)
        add_term(&mut rem, e, -c.clone());
        let mut ej = qe;
        ej[j] += 1;
        add_term(&mut rem, ej, c);
    }
    assert!(rem.is_empty(), "not divisible by x{} - x{}", i + 1, j + 1);
    q
}

/// `½ Σ ∂ᵢ² p + λ Σ_{i<j} (∂ᵢ − ∂ⱼ) p / (xᵢ − xⱼ)`.
fn tplus(p: &Poly, n: usize, lambda: &BigRational) -> Poly {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut out = Poly::new();
    for i in 0..n {
        for (e, c) in derivative(&derivative(p, i), i) {
            add_term(&mut out, e, c * &half);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let diff = sub(&derivative(p, i), &derivative(p, j));
            for (e, c) in divide_by_difference(&diff, i, j) {
                add_term(&mut out, e, c * lambda);
            }
        }
    }
    out
}

/// Partitions of `m` into at most `n` positive parts, padded with zeros.
fn partitions(m: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(rem: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            let mut p = cur.clone();
            p.resize(cur.len() + slots, 0);
            out.push(p);
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max.min(rem)).rev() {
            cur.push(part);
            rec(rem - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, n, &mut Vec::new(), &mut out);
    out
}

fn permutations(v: &[u32]) -> Vec<Vec<u32>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Monomial symmetric function `m_α`.
fn monomial_symmetric(alpha: &[u32]) -> Poly {
    permutations(alpha).into_iter().map(|e| (e, BigRational::one())).collect()
}

/// Rank by plain Gaussian elimination with division.
fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let f = &rows[k][c] / &pivot;
                for cc in c..cols {
                    let d = &rows[r][cc] * &f;
                    rows[k][cc] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the space of symmetric, translation-invariant, homogeneous
/// degree-`m` polynomials annihilated by `T+`.
pub fn brute_force_kernel_dimension(n: usize, lambda: &Rational, m: u32) -> usize {
    let lambda = lambda.as_big().clone();
    let basis: Vec<Poly> = partitions(m, n).iter().map(|a| monomial_symmetric(a)).collect();
    if basis.is_empty() {
        return 0;
    }
    // Each unknown maps to the concatenation of Σ∂ᵢ p and T+ p in monomial coordinates.
    let images: Vec<Poly> = basis
        .iter()
        .map(|p| {
            let mut shift = Poly::new();
            for i in 0..n {
                for (e, c) in derivative(p, i) {
                    add_term(&mut shift, e, c);
                }
            }
            let mut img = Poly::new();
            for (mut e, c) in shift {
                e.push(0);
                add_term(&mut img, e, c);
            }
            for (mut e, c) in tplus(p, n, &lambda) {
                e.push(1);
                add_term(&mut img, e, c);
            }
            img
        })
        .collect();
    let keys: Vec<Vec<u32>> = {
        let mut k: Vec<Vec<u32>> = images.iter().flat_map(|p| p.keys().cloned()).collect();
        k.sort();
        k.dedup();
        k
    };
    // Rows are unknowns; rank of the map equals rank of this matrix.
    let rows: Vec<Vec<BigRational>> = images
        .iter()
        .map(|p| keys.iter().map(|k| p.get(k).cloned().unwrap_or_else(BigRational::zero)).collect())
        .collect();
    basis.len() - rank(rows)
}

pub fn random_rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    Rational::frac(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// Random coupling avoiding zero.
pub fn random_lambda(rng: &mut impl Rng) -> Rational {
    loop {
        let l = random_rational(rng, 12, 5);
        if !l.is_zero() {
            return l;
        }
    }
}
