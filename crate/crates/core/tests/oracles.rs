mod common;

use antibidiag::sampling::{random_rational_coefficients, random_rational_entry, random_rational_spectrum};
use antibidiag::scalar::ratio;
use antibidiag::{
    build_antibidiagonal, build_jacobi_special, elementary_symmetric, forward_p, forward_q,
    solve, validate_spectrum, CoefficientVector, IndexSet, MonicPoly, Rational, Scalar,
    SolveOptions, SquaredCoefficients, StructuredMatrix, TolerancePolicy,
};
use common::{brute_sigma, charpoly_cofactor, det_cofactor, vieta_coeffs, Frac};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(v: i64) -> Rational {
    ratio(v, 1)
}

fn random_rows(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|_| (0..n).map(|_| random_rational_entry(rng)).collect())
        .collect()
}

#[test]
fn worked_instance_matches_hand_derivation() {
    let spectrum = validate_spectrum(vec![r(3), r(-2), r(1)]).unwrap();
    let trace = solve(&spectrum, &SolveOptions::default()).unwrap();
    assert_eq!(trace.squared.a1(), &r(2));
    assert_eq!(trace.squared.squares(), &[r(2), r(3)]);
    let polys = &trace.q_polys.polys;
    assert_eq!(polys[3].coeffs(), &[r(6), r(-5), r(-2), r(1)]);
    assert_eq!(polys[2].coeffs(), &[r(-3), r(0), r(1)]);
    assert_eq!(polys[1].coeffs(), &[r(0), r(1)]);
}

#[test]
fn elementary_symmetric_matches_subset_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=8 {
        let v: Vec<Rational> = (0..n).map(|_| random_rational_entry(&mut rng)).collect();
        for j in 0..=n {
            assert_eq!(elementary_symmetric(&v, j).unwrap(), brute_sigma(&v, j), "n={n} j={j}");
        }
    }
}

#[test]
fn from_roots_matches_vieta() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let policy = TolerancePolicy::default();
    for n in 1..=9 {
        let roots = random_rational_spectrum(&mut rng, n);
        let p = MonicPoly::from_roots(&roots, &policy).unwrap();
        assert_eq!(p.coeffs(), vieta_coeffs(&roots).as_slice());
    }
}

#[test]
fn recurrences_match_cofactor_characteristic_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..40 {
        let n = rng.random_range(1..=6);
        let a = CoefficientVector::new(random_rational_coefficients(&mut rng, n)).unwrap();
        let sq = SquaredCoefficients::from(&a);
        let anti = charpoly_cofactor(&build_antibidiagonal(&a));
        let jac = charpoly_cofactor(&build_jacobi_special(&a));
        assert_eq!(forward_p(&sq).top().coeffs(), anti.as_slice());
        assert_eq!(forward_q(&sq).top().coeffs(), jac.as_slice());
    }
}

#[test]
fn trailing_blocks_have_q_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 2..=6 {
        let a = CoefficientVector::new(random_rational_coefficients(&mut rng, n)).unwrap();
        let b = build_jacobi_special(&a);
        let q = forward_q(&SquaredCoefficients::from(&a));
        for k in 1..n {
            let block = b.principal(n - k + 1, n);
            assert_eq!(q.polys[k].coeffs(), charpoly_cofactor(&block).as_slice(), "n={n} k={k}");
        }
    }
}

#[test]
fn exact_determinant_matches_cofactor() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in 1..=6 {
        for _ in 0..10 {
            let rows = random_rows(&mut rng, n);
            let m = StructuredMatrix::from_rows(rows.clone()).unwrap();
            assert_eq!(m.determinant(), det_cofactor(&rows));
        }
    }
}

#[test]
fn float_determinant_matches_cofactor() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for n in 1..=6 {
        for _ in 0..10 {
            let rows = random_rows(&mut rng, n);
            let exact = det_cofactor(&rows).to_float();
            let m = StructuredMatrix::from_rows(rows).unwrap().to_float();
            let d = m.determinant();
            assert!((d - exact).abs() <= 1e-9 * exact.abs().max(1.0), "{d} vs {exact}");
        }
    }
}

#[test]
fn minors_match_cofactor_of_submatrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let rows = random_rows(&mut rng, 5);
    let m = StructuredMatrix::from_rows(rows.clone()).unwrap();
    let picks = [(vec![1, 3], vec![2, 5]), (vec![2, 3, 4], vec![1, 2, 5]), (vec![5], vec![1])];
    for (ri, ci) in picks {
        let sub: Vec<Vec<Rational>> = ri
            .iter()
            .map(|&i| ci.iter().map(|&j| rows[i - 1][j - 1].clone()).collect())
            .collect();
        let got = m
            .minor(&IndexSet::new(ri).unwrap(), &IndexSet::new(ci).unwrap())
            .unwrap();
        assert_eq!(got, det_cofactor(&sub));
    }
}

#[test]
fn rational_field_operations_match_cross_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let draw = |rng: &mut ChaCha8Rng| Frac::new(rng.random_range(-50..=50), rng.random_range(1..=30));
    let mut acc = draw(&mut rng);
    let mut exact = acc.to_rational();
    for step in 0..1000 {
        let x = draw(&mut rng);
        let xr = x.to_rational();
        match step % 4 {
            0 => {
                acc = acc.add(&x);
                exact += xr;
            }
            1 => {
                acc = acc.sub(&x);
                exact -= xr;
            }
            2 => {
                acc = acc.mul(&x);
                exact *= xr;
            }
            _ => match acc.div(&x) {
                Some(q) => {
                    acc = q;
                    exact /= xr;
                }
                None => continue,
            },
        }
        assert!(acc.matches(&exact), "step {step}");
        // keep the unreduced oracle from growing without bound
        if step % 16 == 15 {
            acc = Frac {
                num: exact.numer().clone(),
                den: exact.denom().clone(),
            };
        }
    }
}

#[test]
fn jacobi_sqrt_worked_matrix() {
    let mus = antibidiag::PositiveTuple::new(vec![9.0, 4.0, 1.0]).unwrap();
    let out = antibidiag::jacobi_sqrt(&mus, &SolveOptions::default()).unwrap();
    let s6 = 6f64.sqrt();
    let s8 = 8f64.sqrt();
    let expected = [[3.0, s6, 0.0], [s6, 6.0, s8], [0.0, s8, 5.0]];
    for i in 1..=3 {
        for j in 1..=3 {
            assert!((out.square.get(i, j) - expected[i - 1][j - 1]).abs() <= 1e-12);
        }
    }
}

#[test]
fn float_class_plus_matches_exact_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let policy = TolerancePolicy::default();
    for case in 0..150 {
        let n = rng.random_range(2..=5);
        let spectrum = antibidiag::sampling::random_spectrum(&mut rng, n, 0.1, 10.0, 0.1);
        let trace = solve(&validate_spectrum(spectrum).unwrap(), &SolveOptions::default()).unwrap();
        let a = trace.a.expect("solved coefficients");
        let a_float = build_antibidiagonal(&a);
        let exact: Vec<Rational> = a
            .as_slice()
            .iter()
            .map(|v| Rational::from_f64_exact(*v).unwrap())
            .collect();
        let a_exact = build_antibidiagonal(&CoefficientVector::new(exact).unwrap());
        let float_m = antibidiag::check_class_plus(&a_float, 2 * n, &policy).unwrap();
        let exact_m = antibidiag::check_class_plus(&a_exact, 2 * n, &policy).unwrap();
        assert_eq!(float_m, exact_m, "case {case} (n={n})");
        assert!(exact_m.is_some_and(|m| m < n), "case {case} (n={n})");
    }
}
