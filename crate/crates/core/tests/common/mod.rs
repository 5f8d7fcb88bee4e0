//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use antibidiag::{Rational, StructuredMatrix};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `σ_j` by summing over every `j`-subset (bitmask enumeration).
pub fn brute_sigma(values: &[Rational], j: usize) -> Rational {
    let n = values.len();
    let mut total = Rational::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != j {
            continue;
        }
        let mut prod = Rational::one();
        for (i, v) in values.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod *= v.clone();
            }
        }
        total += prod;
    }
    total
}

/// Coefficients (low to high) of `∏(λ - r)` via Vieta and brute-force `σ_j`.
pub fn vieta_coeffs(roots: &[Rational]) -> Vec<Rational> {
    let n = roots.len();
    (0..=n)
        .map(|k| {
            let s = brute_sigma(roots, n - k);
            if (n - k) % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect()
}

type Poly = Vec<Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x.clone() * y.clone();
        }
    }
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(Rational::zero)
                + b.get(i).cloned().unwrap_or_else(Rational::zero)
        })
        .collect()
}

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Determinant of a matrix of polynomials by Laplace expansion along the
/// first row.
fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total: Poly = vec![Rational::zero()];
    for (c, entry) in m[0].iter().enumerate() {
        if entry.iter().all(|x| x.is_zero()) {
            continue;
        }
        let sub: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let mut term = poly_mul(entry, &poly_det(&sub));
        if c % 2 == 1 {
            term = term.into_iter().map(|x| -x).collect();
        }
        total = poly_add(&total, &term);
    }
    trim(total)
}

/// `det(λI - M)` by cofactor expansion, coefficients low to high.
pub fn charpoly_cofactor(m: &StructuredMatrix<Rational>) -> Vec<Rational> {
    let n = m.n();
    let entries: Vec<Vec<Poly>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let c = -m.get(i, j).clone();
                    if i == j {
                        vec![c, Rational::one()]
                    } else {
                        vec![c]
                    }
                })
                .collect()
        })
        .collect();
    let mut p = poly_det(&entries);
    p.resize(n + 1, Rational::zero());
    p
}

/// Scalar determinant by Laplace expansion.
pub fn det_cofactor(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut total = Rational::zero();
    for c in 0..n {
        if rows[0][c].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Rational>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = rows[0][c].clone() * det_cofactor(&sub);
        if c % 2 == 0 {
            total += t;
        } else {
            total -= t;
        }
    }
    total
}

/// Plain integer fraction `(num, den)` with `den > 0`, never reduced; used to
/// cross-check rational field operations by cross-multiplication.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: BigInt,
    pub den: BigInt,
}

impl Frac {
    pub fn new(num: i64, den: i64) -> Frac {
        assert!(den > 0);
        Frac {
            num: num.into(),
            den: den.into(),
        }
    }

    pub fn add(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.den + &o.num * &self.den,
            den: &self.den * &o.den,
        }
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.den - &o.num * &self.den,
            den: &self.den * &o.den,
        }
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    pub fn div(&self, o: &Frac) -> Option<Frac> {
        if o.num.is_zero() {
            return None;
        }
        let (mut num, mut den) = (&self.num * &o.den, &self.den * &o.num);
        if den < BigInt::zero() {
            num = -num;
            den = -den;
        }
        Some(Frac { num, den })
    }

    pub fn matches(&self, r: &Rational) -> bool {
        &self.num * r.denom() == r.numer() * &self.den
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone())
    }
}
