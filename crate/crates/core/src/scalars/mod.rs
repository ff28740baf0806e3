//! Exact field arithmetic over ℚ, ℚ(q) and ℚ(ζₙ).
//!
//! Every [`Scalar`] is kept in canonical form, so structural equality is
//! field equality. Nothing here ever touches floating point.

mod parse;
pub mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::parse_scalar;
use poly::{cyclotomic_polynomial, IntPoly, RatPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
}

/// The ground field a model lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    RationalFunction { var: String },
    Cyclotomic { order: u32, var: String },
}

impl FieldSpec {
    pub fn rational_function(var: &str) -> Self {
        FieldSpec::RationalFunction { var: var.to_string() }
    }

    pub fn cyclotomic(order: u32, var: &str) -> Self {
        FieldSpec::Cyclotomic { order, var: var.to_string() }
    }

    pub fn validate(&self) -> Result<(), ScalarError> {
        let valid_ident = |v: &str| {
            let mut chars = v.chars();
            matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        };
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::RationalFunction { var } if valid_ident(var) => Ok(()),
            FieldSpec::Cyclotomic { order, var } if *order >= 1 && valid_ident(var) => Ok(()),
            other => Err(ScalarError::InvalidField(format!("{other:?}"))),
        }
    }

    pub fn var(&self) -> Option<&str> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::RationalFunction { var } | FieldSpec::Cyclotomic { var, .. } => Some(var),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, r: BigRational) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(r),
            FieldSpec::RationalFunction { .. } => Scalar::RatFunc(RatFunc::from_rational(&r)),
            FieldSpec::Cyclotomic { order, .. } => Scalar::Cyclotomic(Cyclo::new(*order, vec![r])),
        }
    }

    /// The distinguished generator: `q` for ℚ(q), `ζ` for ℚ(ζₙ).
    pub fn generator(&self) -> Result<Scalar, ScalarError> {
        match self {
            FieldSpec::Rationals => Err(ScalarError::FieldMismatch(
                "the rationals have no generator symbol".into(),
            )),
            FieldSpec::RationalFunction { .. } => Ok(Scalar::RatFunc(RatFunc::from_poly(IntPoly::monomial(1)))),
            FieldSpec::Cyclotomic { order, .. } => Ok(Scalar::Cyclotomic(Cyclo::new(
                *order,
                vec![BigRational::zero(), BigRational::one()],
            ))),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (FieldSpec::Rationals, Scalar::Rational(_))
                | (FieldSpec::RationalFunction { .. }, Scalar::RatFunc(_))
        ) || matches!((self, s), (FieldSpec::Cyclotomic { order, .. }, Scalar::Cyclotomic(c)) if c.order == *order)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::RationalFunction { var } => write!(f, "Q({var})"),
            FieldSpec::Cyclotomic { order, var } => write!(f, "Q({var}), {var} primitive {order}-th root of unity"),
        }
    }
}

/// Reduced quotient of integer polynomials with positive leading denominator coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc { num: p, den: IntPoly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RatFunc::new(IntPoly::constant(r.numer().clone()), IntPoly::constant(r.denom().clone()))
    }

    /// Builds `num/den` in canonical form. Panics on a zero denominator.
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: IntPoly::one() };
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            if self.den.is_one() {
                return RatFunc { num: self.num.add(&o.num), den: IntPoly::one() };
            }
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    fn mul(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: IntPoly::one() };
        }
        if self.is_zero() || o.is_zero() {
            return RatFunc::from_poly(IntPoly::zero());
        }
        // cross-cancel first to keep intermediate sizes down
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = self.num.div_exact(&g1).mul(&o.num.div_exact(&g2));
        let d = self.den.div_exact(&g2).mul(&o.den.div_exact(&g1));
        RatFunc::new(n, d)
    }

    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()))
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

static MODULI: Lazy<Mutex<HashMap<u32, Arc<RatPoly>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn modulus(order: u32) -> Arc<RatPoly> {
    let mut cache = MODULI.lock().unwrap();
    cache
        .entry(order)
        .or_insert_with(|| Arc::new(RatPoly::from_int(&cyclotomic_polynomial(order))))
        .clone()
}

/// Element of ℚ(ζₙ) as a polynomial in ζ of degree below φ(n).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn new(order: u32, coeffs: Vec<BigRational>) -> Self {
        let reduced = RatPoly::from_coeffs(coeffs).rem(&modulus(order));
        Cyclo { order, coeffs: reduced.0 }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn poly(&self) -> RatPoly {
        RatPoly(self.coeffs.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    RatFunc(RatFunc),
    Cyclotomic(Cyclo),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::RatFunc(f) => f.is_zero(),
            Scalar::Cyclotomic(c) => c.coeffs.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::RatFunc(f) => f.num.is_one() && f.den.is_one(),
            Scalar::Cyclotomic(c) => c.coeffs.len() == 1 && c.coeffs[0].is_one(),
        }
    }

    /// Zero of the same field as `self`.
    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::zero()),
            Scalar::RatFunc(_) => Scalar::RatFunc(RatFunc::from_poly(IntPoly::zero())),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclo { order: c.order, coeffs: Vec::new() }),
        }
    }

    fn mismatch(&self, other: &Scalar) -> ScalarError {
        ScalarError::FieldMismatch(format!("{self:?} vs {other:?}"))
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::RatFunc(a), Scalar::RatFunc(b)) => Scalar::RatFunc(a.add(b)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order == b.order => {
                Scalar::Cyclotomic(Cyclo { order: a.order, coeffs: a.poly().add(&b.poly()).0 })
            }
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::RatFunc(a), Scalar::RatFunc(b)) => Scalar::RatFunc(a.mul(b)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order == b.order => {
                let p = a.poly().mul(&b.poly()).rem(&modulus(a.order));
                Scalar::Cyclotomic(Cyclo { order: a.order, coeffs: p.0 })
            }
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::RatFunc(a) => Scalar::RatFunc(a.neg()),
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(Cyclo { order: a.order, coeffs: a.poly().neg().0 }),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::RatFunc(a) => Scalar::RatFunc(a.inv().ok_or(ScalarError::DivisionByZero)?),
            Scalar::Cyclotomic(a) => {
                let inv = a.poly().inv_mod(&modulus(a.order)).ok_or(ScalarError::DivisionByZero)?;
                Scalar::Cyclotomic(Cyclo { order: a.order, coeffs: inv.0 })
            }
        })
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_mul(&o.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::RatFunc(_) => Scalar::RatFunc(RatFunc::from_poly(IntPoly::one())),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclo::new(c.order, vec![BigRational::one()])),
        };
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            n >>= 1;
        }
        Ok(acc)
    }

    /// Image under the evaluation homomorphism ℚ(q) → ℚ at `q = x`.
    /// Elements of ℚ pass through unchanged.
    pub fn specialize(&self, x: &BigRational) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(r) => Ok(Scalar::Rational(r.clone())),
            Scalar::RatFunc(f) => f.eval(x).map(Scalar::Rational).ok_or(ScalarError::DivisionByZero),
            Scalar::Cyclotomic(_) => Err(ScalarError::FieldMismatch("cannot specialise a cyclotomic element".into())),
        }
    }

    /// Canonical text in the expression grammar understood by [`parse_scalar`].
    pub fn format(&self, field: &FieldSpec) -> String {
        let var = field.var().unwrap_or("q");
        match self {
            Scalar::Rational(r) => r.to_string(),
            Scalar::RatFunc(f) => {
                if f.den.is_one() {
                    f.num.format(var)
                } else {
                    let n = f.num.format(var);
                    let n = if f.num.0.iter().filter(|c| !c.is_zero()).count() > 1 { format!("({n})") } else { n };
                    format!("{n}/({})", f.den.format(var))
                }
            }
            Scalar::Cyclotomic(c) => {
                if c.coeffs.is_empty() {
                    return "0".into();
                }
                let mut out = String::new();
                for (k, a) in c.coeffs.iter().enumerate().rev() {
                    if a.is_zero() {
                        continue;
                    }
                    let neg = a.is_negative();
                    let abs = a.abs();
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
                    match (mono.is_empty(), abs.is_one()) {
                        (true, _) => out.push_str(&abs.to_string()),
                        (false, true) => out.push_str(&mono),
                        (false, false) => out.push_str(&format!("{abs}*{mono}")),
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::RatFunc(_) => FieldSpec::rational_function("q"),
            Scalar::Cyclotomic(c) => FieldSpec::cyclotomic(c.order, "z"),
        };
        write!(f, "{}", self.format(&field))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $call:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$call(rhs).expect(concat!("scalar ", stringify!($m)))
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$call(&rhs).expect(concat!("scalar ", stringify!($m)))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qf() -> FieldSpec {
        FieldSpec::rational_function("q")
    }

    #[test]
    fn q_minus_inverse_times_q() {
        let f = qf();
        let q = f.generator().unwrap();
        let lhs = &(&q - &q.inv().unwrap()) * &q;
        assert_eq!(lhs, parse_scalar("q^2 - 1", &f).unwrap());
    }

    #[test]
    fn cube_root_relation() {
        let f = FieldSpec::cyclotomic(3, "z");
        let z = f.generator().unwrap();
        let s = &(&f.one() + &z) + &z.pow(2).unwrap();
        assert!(s.is_zero());
        assert!(z.pow(3).unwrap().is_one());
    }

    #[test]
    fn rational_inverse() {
        let f = FieldSpec::Rationals;
        let a = parse_scalar("3/4", &f).unwrap();
        assert_eq!(a.inv().unwrap(), parse_scalar("4/3", &f).unwrap());
        assert_eq!(f.zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = FieldSpec::Rationals.one();
        let b = qf().one();
        assert!(matches!(a.try_add(&b), Err(ScalarError::FieldMismatch(_))));
        let c = FieldSpec::cyclotomic(3, "z").one();
        let d = FieldSpec::cyclotomic(5, "z").one();
        assert!(matches!(c.try_mul(&d), Err(ScalarError::FieldMismatch(_))));
    }

    #[test]
    fn canonical_denominator_sign() {
        let f = qf();
        let a = parse_scalar("1/(1-q)", &f).unwrap();
        let b = parse_scalar("-1/(q-1)", &f).unwrap();
        assert_eq!(a, b);
        if let Scalar::RatFunc(r) = &a {
            assert!(r.denom().lc().is_positive());
        }
    }

    #[test]
    fn specialization_is_a_homomorphism_on_samples() {
        let f = qf();
        let x = BigRational::new(3.into(), 2.into());
        let a = parse_scalar("(q^2+1)/(q-5)", &f).unwrap();
        let b = parse_scalar("q - 1/q", &f).unwrap();
        let ev = |s: &Scalar| s.specialize(&x).unwrap();
        assert_eq!(ev(&(&a * &b)), &ev(&a) * &ev(&b));
        assert_eq!(ev(&(&a + &b)), &ev(&a) + &ev(&b));
        assert_eq!(ev(&(&a / &b)), &ev(&a) / &ev(&b));
        assert!(parse_scalar("1/(q-1)", &f).unwrap().specialize(&BigRational::one()).is_err());
    }

    fn small_ratfunc() -> impl Strategy<Value = Scalar> {
        (prop::collection::vec(-4i64..5, 0..4), prop::collection::vec(-3i64..4, 1..3)).prop_filter_map(
            "nonzero denominator",
            |(n, d)| {
                let num = IntPoly::from_coeffs(n.into_iter().map(BigInt::from).collect());
                let den = IntPoly::from_coeffs(d.into_iter().map(BigInt::from).collect());
                (!den.is_zero()).then(|| Scalar::RatFunc(RatFunc::new(num, den)))
            },
        )
    }

    fn small_cyclo() -> impl Strategy<Value = Scalar> {
        prop::collection::vec(-3i64..4, 0..7).prop_map(|v| {
            Scalar::Cyclotomic(Cyclo::new(
                7,
                v.into_iter().map(|c| BigRational::from_integer(c.into())).collect(),
            ))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ratfunc_field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn cyclotomic_field_axioms(a in small_cyclo(), b in small_cyclo(), c in small_cyclo()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn print_parse_roundtrip(a in small_ratfunc()) {
            let f = qf();
            prop_assert_eq!(parse_scalar(&a.format(&f), &f).unwrap(), a);
        }

        #[test]
        fn print_parse_roundtrip_cyclo(a in small_cyclo()) {
            let f = FieldSpec::cyclotomic(7, "z");
            prop_assert_eq!(parse_scalar(&a.format(&f), &f).unwrap(), a);
        }
    }
}
