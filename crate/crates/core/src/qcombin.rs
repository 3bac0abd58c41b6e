//! q-integers, q-factorials, q-binomials and truncated q-exponentials.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::Cyclotomic;

/// `(n)_q = 1 + q + … + q^{n-1}`.
pub fn qint(n: u32, q: &Cyclotomic) -> Cyclotomic {
    let mut acc = q.field().zero();
    let mut p = q.field().one();
    for _ in 0..n {
        acc += &p;
        p = &p * q;
    }
    acc
}

/// `(n)_q! = (1)_q (2)_q ⋯ (n)_q`.
pub fn qfact(n: u32, q: &Cyclotomic) -> Cyclotomic {
    let mut acc = q.field().one();
    for k in 1..=n {
        acc = &acc * &qint(k, q);
    }
    acc
}

/// Gaussian binomial via the q-Pascal rule
/// `[n, k] = [n-1, k-1] + q^k [n-1, k]`, defined for every `q`.
pub fn qbinom(n: u32, k: u32, q: &Cyclotomic) -> Cyclotomic {
    let field = q.field();
    if k > n {
        return field.zero();
    }
    let mut row = alloc::vec![field.one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m as usize + 1);
        for j in 0..=m {
            let left = if j >= 1 { row[(j - 1) as usize].clone() } else { field.zero() };
            let right = if j < m {
                &row[j as usize] * &q.pow(j as i64).expect("q nonzero")
            } else {
                field.zero()
            };
            next.push(left + right);
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Coefficients `1/(i)_q!` of `exp_q` for `i < T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpCoeffs {
    pub q: Cyclotomic,
    pub coeffs: Vec<Cyclotomic>,
}

impl QExpCoeffs {
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }
}

pub fn qexp_coeffs(q: &Cyclotomic, t: u32) -> Result<QExpCoeffs> {
    let mut coeffs = Vec::with_capacity(t as usize);
    let mut fact = q.field().one();
    for i in 0..t {
        if i > 0 {
            fact = &fact * &qint(i, q);
        }
        if fact.is_zero() {
            return Err(Error::NonInvertibleFactorial { index: i as usize });
        }
        coeffs.push(fact.inv()?);
    }
    Ok(QExpCoeffs {
        q: q.clone(),
        coeffs,
    })
}
