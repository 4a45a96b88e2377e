//! The valued field `F{t}`: fractions of finite-support series
//! `Σ a_j t^j` with nonnegative rational exponents. The valuation of a
//! series is its least exponent.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::field::BaseField;
use crate::rational::{format_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HahnError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative exponent {0} in a polynomial")]
    NegativeExponent(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("exponent {exponent} is not a multiple of 1/{bound}: incompatible Andre context")]
    IncompatibleAndre { exponent: String, bound: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Element of `F⟨t⟩`: finitely many nonzero coefficients on nonnegative
/// rational exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HahnPoly<F> {
    terms: BTreeMap<Rational, F>,
}

impl<F: BaseField> HahnPoly<F> {
    pub fn zero() -> Self {
        HahnPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, <Rational as Zero>::zero()).expect("zero exponent is valid")
    }

    pub fn monomial(c: F, exponent: Rational) -> Result<Self, HahnError> {
        Self::from_terms([(exponent, c)])
    }

    /// Sums duplicate exponents and drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Rational, F)>>(terms: I) -> Result<Self, HahnError> {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            if e.is_negative() {
                return Err(HahnError::NegativeExponent(format_rational(&e)));
            }
            add_term(&mut out, e, c);
        }
        Ok(HahnPoly { terms: out })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.first_key_value().is_some_and(|(e, c)| Zero::is_zero(e) && *c == F::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    /// Coefficient of the lowest-order term.
    pub fn leading(&self) -> Option<&F> {
        self.terms.values().next()
    }

    pub fn sigma(&self) -> Self {
        HahnPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.sigma())).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HahnPoly { terms: self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c.clone())).collect() }
    }

    /// Multiplies by `t^shift` (`shift ≥ 0`).
    pub fn shift_up(&self, shift: &Rational) -> Self {
        debug_assert!(!shift.is_negative());
        HahnPoly { terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect() }
    }

    /// Divides by `t^shift` when every exponent stays nonnegative.
    pub fn shift_down(&self, shift: &Rational) -> Option<Self> {
        if self.min_exponent().is_some_and(|m| m < shift) {
            return None;
        }
        Some(HahnPoly { terms: self.terms.iter().map(|(e, c)| (e - shift, c.clone())).collect() })
    }
}

fn add_term<F: BaseField>(map: &mut BTreeMap<Rational, F>, e: Rational, c: F) {
    if c.is_zero() {
        return;
    }
    match map.remove(&e) {
        Some(prev) => {
            let sum = prev + c;
            if !sum.is_zero() {
                map.insert(e, sum);
            }
        }
        None => {
            map.insert(e, c);
        }
    }
}

impl<F: BaseField> Add for &HahnPoly<F> {
    type Output = HahnPoly<F>;
    fn add(self, rhs: &HahnPoly<F>) -> HahnPoly<F> {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            add_term(&mut terms, e.clone(), c.clone());
        }
        HahnPoly { terms }
    }
}

impl<F: BaseField> Neg for &HahnPoly<F> {
    type Output = HahnPoly<F>;
    fn neg(self) -> HahnPoly<F> {
        HahnPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl<F: BaseField> Sub for &HahnPoly<F> {
    type Output = HahnPoly<F>;
    fn sub(self, rhs: &HahnPoly<F>) -> HahnPoly<F> {
        self + &(-rhs)
    }
}

impl<F: BaseField> Mul for &HahnPoly<F> {
    type Output = HahnPoly<F>;
    fn mul(self, rhs: &HahnPoly<F>) -> HahnPoly<F> {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                add_term(&mut terms, e1 + e2, c1.clone() * c2.clone());
            }
        }
        HahnPoly { terms }
    }
}

fn format_exponent(e: &Rational) -> String {
    if e.is_integer() {
        format!("t^{e}")
    } else {
        format!("t^{{{}}}", format_rational(e))
    }
}

impl<F: BaseField> fmt::Display for HahnPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let raw = c.to_string();
            let (neg, body) = match raw.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, raw),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = if Zero::is_zero(e) {
                String::new()
            } else if *e == Rational::from_integer(1.into()) {
                "t".to_string()
            } else {
                format_exponent(e)
            };
            match (mono.is_empty(), body == "1") {
                (true, _) => write!(f, "{body}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{body}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Element of the quotient field `F{t}`, kept as an unreduced fraction.
/// Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct HahnElement<F> {
    num: HahnPoly<F>,
    den: HahnPoly<F>,
}

impl<F: BaseField> HahnElement<F> {
    pub fn new(num: HahnPoly<F>, den: HahnPoly<F>) -> Result<Self, HahnError> {
        if den.is_zero() {
            return Err(HahnError::ZeroDenominator);
        }
        Ok(HahnElement { num, den })
    }

    pub fn from_poly(p: HahnPoly<F>) -> Self {
        HahnElement { num: p, den: HahnPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(HahnPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(HahnPoly::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(HahnPoly::constant(c))
    }

    /// `t^e` for any rational `e`.
    pub fn t_pow(e: &Rational) -> Self {
        if e.is_negative() {
            let den = HahnPoly::monomial(F::one(), -e).expect("positive exponent");
            HahnElement { num: HahnPoly::one(), den }
        } else {
            Self::from_poly(HahnPoly::monomial(F::one(), e.clone()).expect("nonnegative exponent"))
        }
    }

    pub fn num(&self) -> &HahnPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &HahnPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Least exponent of the numerator minus least exponent of the
    /// denominator; `None` stands for `∞` (the zero element).
    pub fn valuation(&self) -> Option<Rational> {
        let n = self.num.min_exponent()?;
        let d = self.den.min_exponent().expect("denominator is nonzero");
        Some(n - d)
    }

    pub fn sigma(&self) -> Self {
        HahnElement { num: self.num.sigma(), den: self.den.sigma() }
    }

    pub fn sigma_pow(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..(k % F::SIGMA_ORDER) {
            out = out.sigma();
        }
        out
    }

    pub fn inv(&self) -> Result<Self, HahnError> {
        if self.is_zero() {
            return Err(HahnError::DivisionByZero);
        }
        Ok(HahnElement { num: self.den.clone(), den: self.num.clone() })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, HahnError> {
        Ok(self * &rhs.inv()?)
    }

    /// Multiplies by `t^shift`, keeping both parts polynomial.
    pub fn mul_t_power(&self, shift: &Rational) -> Self {
        if self.is_zero() || Zero::is_zero(shift) {
            return self.clone();
        }
        if !shift.is_negative() {
            return HahnElement { num: self.num.shift_up(shift), den: self.den.clone() };
        }
        let down = -shift;
        match self.num.shift_down(&down) {
            Some(num) => HahnElement { num, den: self.den.clone() },
            None => HahnElement { num: self.num.clone(), den: self.den.shift_up(&down) },
        }
    }

    /// Every exponent appearing in numerator or denominator.
    pub fn exponents(&self) -> impl Iterator<Item = &Rational> {
        self.num.terms().chain(self.den.terms()).map(|(e, _)| e)
    }
}

impl<F: BaseField> PartialEq for HahnElement<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<F: BaseField> Eq for HahnElement<F> {}

impl<F: BaseField> Add for &HahnElement<F> {
    type Output = HahnElement<F>;
    fn add(self, rhs: &HahnElement<F>) -> HahnElement<F> {
        if self.den == rhs.den {
            return HahnElement { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        HahnElement {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl<F: BaseField> Neg for &HahnElement<F> {
    type Output = HahnElement<F>;
    fn neg(self) -> HahnElement<F> {
        HahnElement { num: -&self.num, den: self.den.clone() }
    }
}

impl<F: BaseField> Sub for &HahnElement<F> {
    type Output = HahnElement<F>;
    fn sub(self, rhs: &HahnElement<F>) -> HahnElement<F> {
        self + &(-rhs)
    }
}

impl<F: BaseField> Mul for &HahnElement<F> {
    type Output = HahnElement<F>;
    fn mul(self, rhs: &HahnElement<F>) -> HahnElement<F> {
        if self.is_zero() || rhs.is_zero() {
            return HahnElement::zero();
        }
        let den = if self.den.is_one() {
            rhs.den.clone()
        } else if rhs.den.is_one() {
            self.den.clone()
        } else {
            &self.den * &rhs.den
        };
        HahnElement { num: &self.num * &rhs.num, den }
    }
}

impl<F: BaseField> fmt::Display for HahnElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Parses expressions such as `3*t^{1/2} + t^2 - 1` or `(1 + t)/t^3` over `Q`.
pub fn parse_series(input: &str) -> Result<HahnElement<Rational>, HahnError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> HahnError {
        HahnError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), HahnError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<HahnElement<Rational>, HahnError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<HahnElement<Rational>, HahnError> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if op == b'*' {
                &acc * &rhs
            } else {
                acc.div(&rhs).map_err(|_| self.error("division by zero"))?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<HahnElement<Rational>, HahnError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    Rational::from_integer(1.into())
                };
                Ok(HahnElement::t_pow(&e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(HahnElement::constant(Rational::from_integer(n.into())))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn exponent(&mut self) -> Result<Rational, HahnError> {
        if self.peek() == Some(b'{') {
            self.pos += 1;
            let start = self.pos;
            while self.src.get(self.pos).is_some_and(|&c| c != b'}') {
                self.pos += 1;
            }
            let raw = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            let e = crate::rational::parse_rational(raw).ok_or_else(|| {
                HahnError::Parse { pos: start, msg: format!("invalid exponent {raw:?}") }
            })?;
            self.expect(b'}')?;
            return Ok(e);
        }
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = Rational::from_integer(self.integer()?.into());
        Ok(if neg { -n } else { n })
    }

    fn integer(&mut self) -> Result<i64, HahnError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(HahnError::Parse { pos: start, msg: "expected an integer".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F9;
    use crate::rational::{int, rat};

    type Q = Rational;

    fn t(e: Rational) -> HahnPoly<Q> {
        HahnPoly::monomial(int(1), e).unwrap()
    }

    #[test]
    fn polynomial_products() {
        assert_eq!(&t(rat(1, 2)) * &t(rat(1, 2)), t(int(1)));
        let one = HahnPoly::<Q>::one();
        assert_eq!(&(&one + &t(int(1))) * &(&one - &t(int(1))), &one - &t(int(2)));
        let lhs = &(&t(rat(1, 3)) + &t(int(1))) * &t(rat(2, 3));
        assert_eq!(lhs, &t(int(1)) + &t(rat(5, 3)));
        assert!((&t(int(1)) - &t(int(1))).is_zero());
    }

    #[test]
    fn negative_exponents_rejected_in_polys() {
        assert!(matches!(HahnPoly::<Q>::monomial(int(1), int(-1)), Err(HahnError::NegativeExponent(_))));
    }

    #[test]
    fn field_operations() {
        let te = HahnElement::<Q>::from_poly(t(int(1)));
        let inv = te.inv().unwrap();
        assert_eq!(inv, HahnElement::new(HahnPoly::one(), t(int(1))).unwrap());
        let one_plus_t = HahnElement::from_poly(&HahnPoly::one() + &t(int(1)));
        let frac = te.div(&one_plus_t).unwrap();
        assert_eq!(&frac * &one_plus_t, te);
        let sum = &inv + &te;
        let expected = HahnElement::new(&HahnPoly::one() + &t(int(2)), t(int(1))).unwrap();
        assert_eq!(sum, expected);
        assert_eq!(HahnElement::<Q>::zero().inv(), Err(HahnError::DivisionByZero));
        assert_eq!(HahnElement::<Q>::new(HahnPoly::one(), HahnPoly::zero()).err(), Some(HahnError::ZeroDenominator));
    }

    #[test]
    fn valuations() {
        let x = parse_series("t^{1/2} + 3*t^2").unwrap();
        assert_eq!(x.valuation(), Some(rat(1, 2)));
        let y = parse_series("(t + t^2)/t^3").unwrap();
        assert_eq!(y.valuation(), Some(int(-2)));
        assert_eq!(HahnElement::<Q>::zero().valuation(), None);
    }

    #[test]
    fn sigma_extension() {
        let x = parse_series("2*t^{1/3} - 1").unwrap();
        assert_eq!(x.sigma(), x);
        let c = F9::new(1, 1);
        let y = HahnElement::from_poly(HahnPoly::monomial(c, rat(1, 2)).unwrap());
        let expected = HahnElement::from_poly(HahnPoly::monomial(c.pow(3), rat(1, 2)).unwrap());
        assert_eq!(y.sigma(), expected);
        assert_ne!(y.sigma(), y);
        assert!(HahnElement::<F9>::zero().sigma().is_zero());
    }

    #[test]
    fn mul_t_power_round_trip() {
        let x = parse_series("1 + t").unwrap();
        let shifted = x.mul_t_power(&rat(-3, 2));
        assert_eq!(shifted.valuation(), Some(rat(-3, 2)));
        assert_eq!(shifted.mul_t_power(&rat(3, 2)), x);
        let y = parse_series("t^2 + t^3").unwrap().mul_t_power(&int(-2));
        assert!(y.den().is_one());
        assert_eq!(y.valuation(), Some(int(0)));
    }

    #[test]
    fn parse_and_display() {
        let x = parse_series("3*t^{1/2} + t^2 - 1").unwrap();
        assert_eq!(x.to_string(), "-1 + 3*t^{1/2} + t^2");
        assert_eq!(parse_series("t^-1").unwrap().valuation(), Some(int(-1)));
        assert!(matches!(parse_series("3*"), Err(HahnError::Parse { .. })));
        assert!(matches!(parse_series("1 / (t - t)"), Err(HahnError::Parse { .. })));
        assert!(matches!(parse_series("t^{a}"), Err(HahnError::Parse { .. })));
        assert!(matches!(parse_series("1 )"), Err(HahnError::Parse { pos: 2, .. })));
    }
}
