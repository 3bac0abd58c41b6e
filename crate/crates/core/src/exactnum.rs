//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored as a rational polynomial of degree `< φ(N)` reduced
//! modulo the cyclotomic polynomial `Φ_N`, with integer numerators over a
//! single positive common denominator. Every element carries a handle to its
//! field so that the usual operator traits can be implemented.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug)]
struct FieldData {
    conductor: u32,
    degree: usize,
    /// Coefficients of `Φ_N`, lowest first, monic.
    phi: Vec<i64>,
    /// `x^k mod Φ_N` for `k < max(N, 2·degree)`.
    xpow: Vec<Vec<i64>>,
    /// Residues `k mod N` coprime to `N`, excluding 1.
    galois: Vec<u32>,
}

/// Handle to the field `Q(ζ_N)`; cheap to clone.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.conductor == other.0.conductor
    }
}
impl Eq for Field {}

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quo = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quo
}

/// Integer coefficients of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let n = n as usize;
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_divexact(&num, &cyclotomic_polynomial(d as u32));
        }
    }
    num
}

impl Field {
    /// Builds `Q(ζ_N)`.
    pub fn new(conductor: u32) -> Field {
        assert!(conductor >= 1, "conductor must be positive");
        let phi = cyclotomic_polynomial(conductor);
        let degree = phi.len() - 1;
        let limit = core::cmp::max(conductor as usize, 2 * degree);
        let mut xpow = Vec::with_capacity(limit);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..limit {
            xpow.push(cur.clone());
            // multiply by x
            let top = cur[degree - 1];
            for j in (1..degree).rev() {
                cur[j] = cur[j - 1] - top * phi[j];
            }
            cur[0] = -top * phi[0];
        }
        let galois = (2..conductor)
            .filter(|k| k.gcd(&conductor) == 1)
            .collect();
        Field(Arc::new(FieldData {
            conductor,
            degree,
            phi,
            xpow,
            galois,
        }))
    }

    pub fn conductor(&self) -> u32 {
        self.0.conductor
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn phi(&self) -> &[i64] {
        &self.0.phi
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic {
            field: self.clone(),
            num: vec![BigInt::zero(); self.0.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> Cyclotomic {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> Cyclotomic {
        let mut z = self.zero();
        z.num[0] = BigInt::from(n);
        z
    }

    pub fn rational(&self, n: i64, d: i64) -> Result<Cyclotomic> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut z = self.zero();
        z.num[0] = BigInt::from(n);
        z.den = BigInt::from(d);
        z.normalize();
        Ok(z)
    }

    /// `ζ_N^e` for any integer exponent.
    pub fn root_of_unity(&self, e: i64) -> Cyclotomic {
        let n = self.0.conductor as i64;
        let k = e.rem_euclid(n) as usize;
        self.from_small(&self.0.xpow[k])
    }

    /// Element with the given rational coefficients on `1, ζ, ζ², …`
    /// (any length; reduced modulo `Φ_N`).
    pub fn from_coeffs(&self, coeffs: &[(i64, i64)]) -> Result<Cyclotomic> {
        let mut acc = self.zero();
        for (k, (n, d)) in coeffs.iter().enumerate() {
            if *n == 0 {
                continue;
            }
            let c = self.rational(*n, *d)?;
            acc += &(&c * &self.root_of_unity(k as i64));
        }
        Ok(acc)
    }

    fn from_small(&self, v: &[i64]) -> Cyclotomic {
        Cyclotomic {
            field: self.clone(),
            num: v.iter().map(|c| BigInt::from(*c)).collect(),
            den: BigInt::one(),
        }
    }
}

/// Multiplicative order of a nonzero cyclotomic number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// An element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    field: Field,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.den == other.den && self.num == other.num
    }
}
impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but canonical total order, for use as map keys.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.conductor()
            .cmp(&other.conductor())
            .then_with(|| self.den.cmp(&other.den))
            .then_with(|| self.num.cmp(&other.num))
    }
}

impl Cyclotomic {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Rational coefficients `(numerator, denominator)` on `1, ζ, …, ζ^{φ(N)-1}`.
    pub fn coeffs(&self) -> Vec<(BigInt, BigInt)> {
        self.num
            .iter()
            .map(|n| {
                let g = n.gcd(&self.den);
                if g.is_zero() {
                    (BigInt::zero(), BigInt::one())
                } else {
                    (n / &g, &self.den / &g)
                }
            })
            .collect()
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -core::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -core::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    fn check(&self, other: &Cyclotomic) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ConductorMismatch {
                left: self.conductor(),
                right: other.conductor(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_in_place(other);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_in_place(&mut self, other: &Cyclotomic) {
        if other.is_zero() {
            return;
        }
        if self.den == other.den {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                *a += b;
            }
        } else {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                *a *= &other.den;
                *a += b * &self.den;
            }
            self.den *= &other.den;
        }
        self.normalize();
    }

    fn sub_in_place(&mut self, other: &Cyclotomic) {
        if other.is_zero() {
            return;
        }
        if self.den == other.den {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                *a -= b;
            }
        } else {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                *a *= &other.den;
                *a -= b * &self.den;
            }
            self.den *= &other.den;
        }
        self.normalize();
    }

    fn mul_poly(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.field.0.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = prod[..d].to_vec();
        for (k, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (j, r) in self.field.0.xpow[k].iter().enumerate() {
                if *r != 0 {
                    out[j] += c * BigInt::from(*r);
                }
            }
        }
        out
    }

    fn mul_unchecked(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        let num = if other.is_rational() {
            self.num.iter().map(|c| c * &other.num[0]).collect()
        } else if self.is_rational() {
            other.num.iter().map(|c| c * &self.num[0]).collect()
        } else {
            self.mul_poly(&self.num, &other.num)
        };
        let mut out = Cyclotomic {
            field: self.field.clone(),
            num,
            den: &self.den * &other.den,
        };
        out.normalize();
        out
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k`.
    fn galois_poly(&self, k: u32) -> Vec<BigInt> {
        let n = self.field.0.conductor as usize;
        let d = self.field.0.degree;
        let mut out = vec![BigInt::zero(); d];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j * k as usize) % n;
            for (t, r) in self.field.0.xpow[e].iter().enumerate() {
                if *r != 0 {
                    out[t] += c * BigInt::from(*r);
                }
            }
        }
        out
    }

    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.field.0.degree;
        // a^{-1} = den · Π_{σ≠1} σ(num) / N(num)
        let mut conj = vec![BigInt::zero(); d];
        conj[0] = BigInt::one();
        if !self.is_rational() {
            for &k in &self.field.0.galois {
                conj = self.mul_poly(&conj, &self.galois_poly(k));
            }
        }
        let norm_poly = self.mul_poly(&conj, &self.num);
        debug_assert!(norm_poly[1..].iter().all(|c| c.is_zero()));
        let norm = norm_poly[0].clone();
        let mut out = Cyclotomic {
            field: self.field.clone(),
            num: conj.into_iter().map(|c| c * &self.den).collect(),
            den: norm,
        };
        out.normalize();
        Ok(out)
    }

    pub fn try_div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Cyclotomic> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc)
    }

    /// Smallest `n ≥ 1` with `self^n = 1`, or [`Order::Infinite`].
    pub fn multiplicative_order(&self) -> Result<Order> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // roots of unity in Q(ζ_N) have order dividing lcm(2, N)
        let bound = 2 * self.field.0.conductor;
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_one() {
                return Ok(Order::Finite(n));
            }
            acc = acc.mul_unchecked(self);
        }
        Ok(Order::Infinite)
    }

    /// If the element is `±ζ_N^e`, returns the exponent of `ζ_{2N}` form as
    /// `(sign, e)`; used only for display.
    pub fn as_root_of_unity(&self) -> Option<(bool, u32)> {
        let n = self.field.0.conductor;
        for e in 0..n {
            let z = self.field.root_of_unity(e as i64);
            if &z == self {
                return Some((true, e));
            }
            if (-&z) == *self {
                return Some((false, e));
            }
        }
        None
    }

    pub fn to_f64_parts(&self) -> Vec<f64> {
        self.num
            .iter()
            .map(|n| n.to_f64().unwrap_or(f64::NAN) / self.den.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let n = self.field.conductor();
        if !self.is_rational() {
            if let Some((pos, e)) = self.as_root_of_unity() {
                let sign = if pos { "" } else { "-" };
                return if e == 1 {
                    write!(f, "{sign}z{n}")
                } else {
                    write!(f, "{sign}z{n}^{e}")
                };
            }
        }
        let mut first = true;
        for (k, (num, den)) in self.coeffs().iter().enumerate() {
            if num.is_zero() {
                continue;
            }
            let neg = num.is_negative();
            let abs = num.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff_shown = k == 0 || !abs.is_one() || !den.is_one();
            if coeff_shown {
                write!(f, "{abs}")?;
                if !den.is_one() {
                    write!(f, "/{den}")?;
                }
            }
            if k > 0 {
                if coeff_shown {
                    f.write_str("*")?;
                }
                if k == 1 {
                    write!(f, "z{n}")?;
                } else {
                    write!(f, "z{n}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.check(rhs).expect("mixed conductors");
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                f(self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let mut o = a.clone();
    o.add_in_place(b);
    o
});
binop!(Sub, sub, |a, b| {
    let mut o = a.clone();
    o.sub_in_place(b);
    o
});
binop!(Mul, mul, |a, b| a.mul_unchecked(b));

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.check(rhs).expect("mixed conductors");
        self.add_in_place(rhs);
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        self.check(rhs).expect("mixed conductors");
        self.sub_in_place(rhs);
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        self.check(rhs).expect("mixed conductors");
        *self = self.mul_unchecked(rhs);
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// `ζ_N^e` in a freshly built field of conductor `N`.
pub fn root_of_unity(n: u32, e: i64) -> Cyclotomic {
    Field::new(n).root_of_unity(e)
}
