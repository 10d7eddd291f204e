//! Exact-rational reference evaluations shared by the test targets.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

fn q(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn qi(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// `2F1(-n, b; c; x)` summed term by term in exact rationals.
pub fn hyp2f1_exact(n: usize, b: f64, c: f64, x: f64) -> f64 {
    let (b, c, x) = (q(b), q(c), q(x));
    let mut term = BigRational::one();
    let mut sum = term.clone();
    for k in 0..n as i64 {
        term = term * (qi(k) - qi(n as i64)) * (&b + qi(k)) * &x / ((&c + qi(k)) * qi(k + 1));
        sum += &term;
    }
    sum.to_f64().unwrap()
}

/// Jacobi polynomials from the three-term recurrence, exact rationals.
pub fn jacobi_recurrence(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let (a, b, x) = (q(alpha), q(beta), q(x));
    let two = qi(2);
    let mut p0 = BigRational::one();
    if n == 0 {
        return 1.0;
    }
    let mut p1 = (&a + qi(1)) + (&a + &b + qi(2)) * (&x - qi(1)) / &two;
    for k in 2..=n as i64 {
        let k_q = qi(k);
        let s = &a + &b;
        let c0 = &two * &k_q * (&k_q + &s) * (&two * &k_q + &s - qi(2));
        let c1 =
            (&two * &k_q + &s - qi(1)) * ((&two * &k_q + &s) * (&two * &k_q + &s - qi(2)) * &x + &a * &a - &b * &b);
        let c2 = &two * (&k_q + &a - qi(1)) * (&k_q + &b - qi(1)) * (&two * &k_q + &s);
        let p2 = (c1 * &p1 - c2 * &p0) / c0;
        p0 = p1;
        p1 = p2;
    }
    p1.to_f64().unwrap()
}

/// Associated Laguerre polynomials from the three-term recurrence, exact rationals.
pub fn laguerre_recurrence(n: usize, alpha: f64, x: f64) -> f64 {
    let (a, x) = (q(alpha), q(x));
    let mut l0 = BigRational::one();
    if n == 0 {
        return 1.0;
    }
    let mut l1 = qi(1) + &a - &x;
    for k in 1..n as i64 {
        let l2 = ((qi(2 * k + 1) + &a - &x) * &l1 - (qi(k) + &a) * &l0) / qi(k + 1);
        l0 = l1;
        l1 = l2;
    }
    l1.to_f64().unwrap()
}
