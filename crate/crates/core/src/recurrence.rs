//! Forward three-term recurrences producing the characteristic polynomials of
//! the anti-bidiagonal family (`p` system) and of the trailing principal
//! submatrices of the special Jacobi matrix (`q` system).

use crate::error::{Error, Result};
use crate::matrix::CoefficientVector;
use crate::poly::{MonicPoly, Parity};
use crate::scalar::Scalar;

/// `a_1` together with `a_2^2, ..., a_n^2`. The recurrences only ever need the
/// squares, which keeps them exact in the rational backend.
#[derive(Debug, Clone, PartialEq)]
pub struct SquaredCoefficients<S> {
    a1: S,
    squares: Vec<S>,
}

impl<S: Scalar> SquaredCoefficients<S> {
    /// `squares[i]` is `a_{i+2}^2`.
    pub fn new(a1: S, squares: Vec<S>) -> Result<Self> {
        if !a1.gt_zero() {
            return Err(Error::NonPositiveEntry {
                index: 1,
                value: a1.to_string(),
            });
        }
        if let Some((i, v)) = squares.iter().enumerate().find(|(_, v)| !v.gt_zero()) {
            return Err(Error::NonPositiveEntry {
                index: i + 2,
                value: v.to_string(),
            });
        }
        Ok(SquaredCoefficients { a1, squares })
    }

    pub fn len(&self) -> usize {
        self.squares.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn a1(&self) -> &S {
        &self.a1
    }

    /// `a_k^2` for `k >= 2`.
    pub fn square(&self, k: usize) -> &S {
        &self.squares[k - 2]
    }

    pub fn squares(&self) -> &[S] {
        &self.squares
    }

    /// `a_k^2` for every `k`, including `a_1^2`.
    pub fn all_squares(&self) -> Vec<S> {
        std::iter::once(self.a1.clone() * self.a1.clone())
            .chain(self.squares.iter().cloned())
            .collect()
    }

    /// Take square roots. `None` in the rational backend.
    pub fn to_coefficients(&self) -> Option<CoefficientVector<S>> {
        let mut a = vec![self.a1.clone()];
        for s in &self.squares {
            a.push(s.sqrt()?);
        }
        CoefficientVector::new(a).ok()
    }
}

impl<S: Scalar> From<&CoefficientVector<S>> for SquaredCoefficients<S> {
    fn from(a: &CoefficientVector<S>) -> Self {
        let v = a.as_slice();
        SquaredCoefficients {
            a1: v[0].clone(),
            squares: v[1..].iter().map(|x| x.clone() * x.clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceSystem {
    /// `p_k = λ p_{k-1} - a_k^2 p_{k-2}`, `p_1 = λ - a_1`.
    P,
    /// `q_k` is the characteristic polynomial of the trailing `k x k` block of
    /// the special Jacobi matrix.
    Q,
}

/// Polynomials of degrees `0..=n`; `polys[k]` has degree `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPolySequence<S> {
    pub polys: Vec<MonicPoly<S>>,
    pub source: RecurrenceSystem,
}

impl<S: Scalar> CharPolySequence<S> {
    pub fn n(&self) -> usize {
        self.polys.len() - 1
    }

    /// The characteristic polynomial of the full matrix.
    pub fn top(&self) -> &MonicPoly<S> {
        self.polys.last().expect("sequence always holds p_0")
    }
}

/// `λ p - c q` for monic `p` of degree `d` and `q` of degree `d - 1`.
fn three_term<S: Scalar>(p: &MonicPoly<S>, c: &S, q: &MonicPoly<S>) -> Vec<S> {
    let mut out = p.shift_up().coeffs().to_vec();
    for (k, qk) in q.coeffs().iter().enumerate() {
        out[k] = out[k].clone() - c.clone() * qk.clone();
    }
    out
}

/// `p_0 = 1`, `p_1 = λ - a_1`, `p_k = λ p_{k-1} - a_k^2 p_{k-2}`.
pub fn forward_p<S: Scalar>(a: &SquaredCoefficients<S>) -> CharPolySequence<S> {
    let n = a.len();
    let mut polys = vec![MonicPoly::one()];
    polys.push(MonicPoly::from_raw(vec![-a.a1().clone(), S::one()], Parity::None));
    for k in 2..=n {
        let coeffs = three_term(&polys[k - 1], a.square(k), &polys[k - 2]);
        polys.push(MonicPoly::from_raw(coeffs, Parity::None));
    }
    CharPolySequence {
        polys,
        source: RecurrenceSystem::P,
    }
}

/// `q_0 = 1`, `q_1 = λ`, `q_k = λ q_{k-1} - a_{n-k+2}^2 q_{k-2}` for
/// `2 <= k <= n-1`, and finally `q_n = (λ - a_1) q_{n-1} - a_2^2 q_{n-2}`.
/// For `n = 1` the sequence is `1, λ - a_1`.
pub fn forward_q<S: Scalar>(a: &SquaredCoefficients<S>) -> CharPolySequence<S> {
    let n = a.len();
    let mut polys = vec![MonicPoly::one()];
    if n == 1 {
        polys.push(MonicPoly::from_raw(vec![-a.a1().clone(), S::one()], Parity::None));
        return CharPolySequence {
            polys,
            source: RecurrenceSystem::Q,
        };
    }
    polys.push(MonicPoly::lambda());
    for k in 2..n {
        let coeffs = three_term(&polys[k - 1], a.square(n - k + 2), &polys[k - 2]);
        polys.push(MonicPoly::from_raw(coeffs, Parity::of_degree(k)));
    }
    // (λ - a_1) q_{n-1} - a_2^2 q_{n-2}
    let mut top = three_term(&polys[n - 1], a.square(2), &polys[n - 2]);
    for (k, c) in polys[n - 1].coeffs().iter().enumerate() {
        top[k] = top[k].clone() - a.a1().clone() * c.clone();
    }
    polys.push(MonicPoly::from_raw(top, Parity::None));
    CharPolySequence {
        polys,
        source: RecurrenceSystem::Q,
    }
}
