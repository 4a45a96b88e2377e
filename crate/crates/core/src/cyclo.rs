//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`.
//!
//! Elements are stored as the canonical remainder modulo the cyclotomic
//! polynomial `Φ_m`, so equality is coefficient-wise comparison. For polygon
//! parameter `n` the field used throughout is `Q(ζ_{4n})`, which contains the
//! imaginary unit `ζ^n` together with every `sin(kπ/n)` and `cos(kπ/n)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, format_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("incompatible cyclotomic contexts: zeta_{left} vs zeta_{right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),
    #[error("value is not real")]
    NotReal,
    #[error("sign of a nonzero value could not be separated from zero in double precision")]
    SignUndecided,
    #[error("coefficient vector of length {got} does not match degree {expected} of Phi_{m}")]
    BadLength { m: u32, expected: usize, got: usize },
}

static PHI_CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();

fn phi(m: u32) -> Arc<[i64]> {
    let cache = PHI_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("phi cache poisoned").get(&m) {
        return p.clone();
    }
    let computed: Arc<[i64]> = compute_phi(m).into();
    cache
        .lock()
        .expect("phi cache poisoned")
        .entry(m)
        .or_insert(computed)
        .clone()
}

fn compute_phi(m: u32) -> Vec<i64> {
    // x^m - 1 = prod_{d | m} Phi_d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m % d == 0) {
        num = div_exact_monic(&num, &phi(d));
    }
    num
}

fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Coefficients of `Φ_m` in ascending powers of `x`.
///
/// ```
/// assert_eq!(polyval::cyclo::cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
/// ```
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    phi(m).to_vec()
}

/// An exact element of `Q(ζ_m)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CycloRepr", into = "CycloRepr")]
pub struct CycloNumber {
    m: u32,
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    m: u32,
    #[serde(
        serialize_with = "rational::serialize_rationals",
        deserialize_with = "rational::deserialize_rationals"
    )]
    coeffs: Vec<Rational>,
}

impl From<CycloNumber> for CycloRepr {
    fn from(c: CycloNumber) -> Self {
        CycloRepr { m: c.m, coeffs: c.coeffs }
    }
}

impl TryFrom<CycloRepr> for CycloNumber {
    type Error = CycloError;

    fn try_from(r: CycloRepr) -> Result<Self, CycloError> {
        CycloNumber::from_coeffs(r.m, r.coeffs)
    }
}

fn reduce(m: u32, mut dense: Vec<Rational>) -> Vec<Rational> {
    let p = phi(m);
    let d = p.len() - 1;
    if dense.len() > d {
        for i in (d..dense.len()).rev() {
            let c = std::mem::replace(&mut dense[i], Rational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in p[..d].iter().enumerate() {
                if pj != 0 {
                    dense[i - d + j] -= &c * rational::int(pj);
                }
            }
        }
    }
    dense.resize(d, Rational::zero());
    dense
}

impl CycloNumber {
    pub fn zero(m: u32) -> Self {
        assert!(m >= 1);
        CycloNumber { m, coeffs: vec![Rational::zero(); phi(m).len() - 1] }
    }

    pub fn from_rational(m: u32, q: Rational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, Rational::one())
    }

    /// Builds an element from coefficients already reduced modulo `Φ_m`.
    pub fn from_coeffs(m: u32, coeffs: Vec<Rational>) -> Result<Self, CycloError> {
        let expected = phi(m).len() - 1;
        if coeffs.len() != expected {
            return Err(CycloError::BadLength { m, expected, got: coeffs.len() });
        }
        Ok(CycloNumber { m, coeffs })
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_power(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let d = phi(m).len() - 1;
        let mut dense = vec![Rational::zero(); (e + 1).max(d)];
        dense[e] = Rational::one();
        CycloNumber { m, coeffs: reduce(m, dense) }
    }

    /// Exact `sin(kπ/n)` in `Q(ζ_{4n})`, as `(ζ^{2k} − ζ^{−2k}) / (2ζ^n)`.
    pub fn sin_pi_frac(k: i64, n: u32) -> Self {
        assert!(n >= 1, "sin_pi_frac needs n >= 1");
        let m = 4 * n;
        let n = n as i64;
        let lhs = Self::zeta_power(m, 2 * k + 3 * n);
        let rhs = Self::zeta_power(m, 3 * n - 2 * k);
        (&lhs - &rhs).scale(&rational::rat(1, 2))
    }

    /// Exact `cos(kπ/n)` in `Q(ζ_{4n})`.
    pub fn cos_pi_frac(k: i64, n: u32) -> Self {
        assert!(n >= 1, "cos_pi_frac needs n >= 1");
        let m = 4 * n;
        let lhs = Self::zeta_power(m, 2 * k);
        let rhs = Self::zeta_power(m, -2 * k);
        (&lhs + &rhs).scale(&rational::rat(1, 2))
    }

    pub fn modulus_index(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), CycloError> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(CycloError::ModulusMismatch { left: self.m, right: other.m })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloNumber { m: self.m, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloNumber { m: self.m, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let d = self.coeffs.len();
        let mut dense = vec![Rational::zero(); 2 * d];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                dense[i + j] += a * b;
            }
        }
        Ok(CycloNumber { m: self.m, coeffs: reduce(self.m, dense) })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_m`.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero(self.m));
        }
        let modulus: Vec<Rational> = phi(self.m).iter().map(|&c| rational::int(c)).collect();
        let (mut r0, mut r1) = (modulus, poly::trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly::divrem(&r0, &r1);
            let s2 = poly::sub(&s0, &poly::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_m is irreducible
        let g = r0[0].clone();
        let mut dense: Vec<Rational> = s0.into_iter().map(|c| c / &g).collect();
        if dense.is_empty() {
            dense.push(Rational::zero());
        }
        Ok(CycloNumber { m: self.m, coeffs: reduce(self.m, dense) })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloNumber { m: self.m, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let d = self.coeffs.len();
        let m = self.m as usize;
        let mut dense = vec![Rational::zero(); m.max(d)];
        for (j, c) in self.coeffs.iter().enumerate() {
            dense[(m - j) % m] += c;
        }
        CycloNumber { m: self.m, coeffs: reduce(self.m, dense) }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Floating approximation, for reports only.
    pub fn to_complex(&self) -> Complex64 {
        let step = std::f64::consts::TAU / self.m as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| Complex64::from_polar(1.0, step * j as f64) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Real part of [`to_complex`](Self::to_complex).
    pub fn to_f64(&self) -> f64 {
        self.to_complex().re
    }

    /// Sign of a real element. Zero is decided exactly; the sign of a nonzero
    /// value comes from its floating approximation.
    pub fn signum(&self) -> Result<Ordering, CycloError> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { Ordering::Greater } else { Ordering::Less });
        }
        if !self.is_real() {
            return Err(CycloError::NotReal);
        }
        let f = self.to_f64();
        if f.abs() < 1e-9 {
            return Err(CycloError::SignUndecided);
        }
        Ok(if f > 0.0 { Ordering::Greater } else { Ordering::Less })
    }

    /// `√d` inside this field, when `d ∈ {2, 3}` and the field contains it.
    pub fn sqrt_small(m: u32, d: u32) -> Option<Self> {
        let order = match d {
            2 => 8,
            3 => 12,
            _ => return None,
        };
        if m % order != 0 {
            return None;
        }
        let k = (m / order) as i64;
        Some(&Self::zeta_power(m, k) + &Self::zeta_power(m, -k))
    }

    /// Radical form when available, polynomial form in `ζ_m` otherwise.
    pub fn exact_string(&self) -> String {
        self.radical_form().unwrap_or_else(|| self.to_string())
    }

    /// Writes the value as `a + b√d` with rational `a, b` when possible.
    pub fn radical_form(&self) -> Option<String> {
        if let Some(q) = self.as_rational() {
            return Some(format_rational(&q));
        }
        for d in [2u32, 3] {
            let Some(root) = Self::sqrt_small(self.m, d) else { continue };
            let Some(j) = (1..root.coeffs.len()).find(|&j| !root.coeffs[j].is_zero()) else {
                continue;
            };
            let b = &self.coeffs[j] / &root.coeffs[j];
            let a = &self.coeffs[0] - &b * &root.coeffs[0];
            let candidate = &Self::from_rational(self.m, a.clone()) + &root.scale(&b);
            if candidate == *self {
                return Some(format_surd(&a, &b, d));
            }
        }
        None
    }
}

fn format_surd(a: &Rational, b: &Rational, d: u32) -> String {
    let surd = |b: &Rational| -> String {
        let num = b.numer().abs();
        let den = b.denom();
        let head = if num.is_one() { String::new() } else { num.to_string() };
        let tail = if den.is_one() { String::new() } else { format!("/{den}") };
        format!("{head}√{d}{tail}")
    };
    if a.is_zero() {
        let sign = if b.is_negative() { "-" } else { "" };
        return format!("{sign}{}", surd(b));
    }
    let op = if b.is_negative() { "-" } else { "+" };
    format!("{} {op} {}", format_rational(a), surd(b))
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &Rational)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = match j {
                0 => String::new(),
                1 => format!("z{}", self.m),
                _ => format!("z{}^{j}", self.m),
            };
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radical_form() {
            Some(r) => write!(f, "CycloNumber({r} in Q(z{}))", self.m),
            None => write!(f, "CycloNumber({self})"),
        }
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);
panicking_op!(Mul, mul, try_mul);

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

/// Dense polynomial helpers over `Q` (ascending coefficients, no trailing zeros).
mod poly {
    use num_traits::Zero;

    use crate::rational::Rational;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] -= c;
        }
        trim(out)
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rem = trim(a.to_vec());
        let lead = b.last().expect("division by zero polynomial").clone();
        let db = b.len() - 1;
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![Rational::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] / &lead;
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    rem[i + j] -= &c * bj;
                }
            }
            quot[i] = c;
        }
        (trim(quot), trim(rem))
    }
}
