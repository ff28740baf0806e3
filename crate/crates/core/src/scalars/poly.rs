//! Dense univariate polynomials over ℤ and ℚ.
//!
//! Coefficients are stored low degree first and trailing zeros are always
//! trimmed, so the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = IntPoly(vec![c]);
        p.trim();
        p
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        IntPoly(v)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly(coeffs);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = other.0.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        IntPoly::from_coeffs(v)
    }

    pub fn neg(&self) -> Self {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Shift by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        IntPoly(v)
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide them exactly.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        IntPoly(self.0.iter().map(|x| x / c).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    /// Pseudo-remainder `lc(b)^k · a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo_rem by zero polynomial");
        let lb = b.lc();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc();
            let t = b.shift(dr - db).scale(&lr);
            r = r.scale(&lb).sub(&t);
        }
        r
    }

    /// Greatest common divisor in ℤ[x], normalised to positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let cg = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.degree() == Some(0) {
                return IntPoly::constant(cg);
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.scale(&cg);
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// Exact division in ℤ[x]; panics if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Self {
        if b.is_one() {
            return self.clone();
        }
        let db = b.degree().expect("division by zero polynomial");
        if db == 0 {
            return self.div_exact_scalar(&b.0[0]);
        }
        let lb = b.lc();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.0.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let (c, rem) = r.lc().div_rem(&lb);
            assert!(rem.is_zero(), "inexact polynomial division");
            q[dr - db] = c.clone();
            r = r.sub(&b.shift(dr - db).scale(&c));
        }
        assert!(r.is_zero(), "inexact polynomial division");
        IntPoly::from_coeffs(q)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Formats with the given variable name, e.g. `3*q^2 - q + 1`.
    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

/// Polynomials over ℚ, used for cyclotomic reduction and inversion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly(pub Vec<BigRational>);

impl RatPoly {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly(coeffs);
        p.trim();
        p
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly(p.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = BigRational::zero();
        RatPoly::from_coeffs(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        RatPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatPoly::default();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        RatPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return RatPoly::default();
        }
        RatPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Quotient and remainder by a nonzero polynomial.
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.0[db].clone();
        let mut r = self.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = &r.0[dr] / &lb;
            let mut shifted = vec![BigRational::zero(); dr - db];
            shifted.extend(b.0.iter().map(|x| x * &c));
            q[dr - db] = c;
            r = r.sub(&RatPoly(shifted));
        }
        (RatPoly::from_coeffs(q), r)
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    /// Inverse of `self` modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        // extended Euclid tracking only the coefficient of `self`
        let mut r0 = m.clone();
        let mut r1 = self.rem(m);
        let mut s0 = RatPoly::default();
        let mut s1 = RatPoly(vec![BigRational::one()]);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.0[0].recip();
        Some(s0.scale(&c).rem(m))
    }
}

/// The n-th cyclotomic polynomial, by dividing `x^n - 1` by `Φ_d` for proper divisors `d`.
pub fn cyclotomic_polynomial(n: u32) -> IntPoly {
    assert!(n >= 1);
    let mut p = IntPoly::monomial(n as usize).sub(&IntPoly::one());
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic_polynomial(d));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic_polynomial(1), ip(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ip(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ip(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ip(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ip(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn gcd_shares_factor() {
        // (x-1)(x+2) and (x-1)(2x+3)
        let a = ip(&[-1, 1]).mul(&ip(&[2, 1]));
        let b = ip(&[-1, 1]).mul(&ip(&[3, 2]));
        assert_eq!(a.gcd(&b), ip(&[-1, 1]));
        assert_eq!(ip(&[4, 6]).gcd(&ip(&[2])), ip(&[2]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = ip(&[3, -2, 5]);
        let b = ip(&[1, 1]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }

    #[test]
    fn inverse_mod_cyclotomic() {
        let m = RatPoly::from_int(&cyclotomic_polynomial(5));
        let a = RatPoly::from_int(&ip(&[1, 1]));
        let inv = a.inv_mod(&m).unwrap();
        let prod = a.mul(&inv).rem(&m);
        assert_eq!(prod, RatPoly(vec![BigRational::one()]));
    }

    #[test]
    fn format_polynomial() {
        assert_eq!(ip(&[1, -1, 3]).format("q"), "3*q^2 - q + 1");
        assert_eq!(ip(&[0, -1]).format("q"), "-q");
    }
}
