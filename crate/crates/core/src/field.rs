//! Coefficient fields for the Hahn construction, each with a distinguished
//! automorphism `σ` of finite order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use crate::rational::{self, Rational};

pub trait BaseField:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Order of [`sigma`](BaseField::sigma).
    const SIGMA_ORDER: u32;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn sigma(&self) -> Self;
    /// A random element, biased toward small representatives.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn sigma_pow(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..(k % Self::SIGMA_ORDER) {
            out = out.sigma();
        }
        out
    }

    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x = Self::sample(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

impl BaseField for Rational {
    const SIGMA_ORDER: u32 = 1;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_i64(v: i64) -> Self {
        rational::int(v)
    }
    fn sigma(&self) -> Self {
        self.clone()
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rational::rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
    }
}

const fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Smallest quadratic non-residue modulo an odd prime `p`.
const fn non_residue(p: u64) -> u64 {
    let mut a = 2;
    while a < p {
        if pow_mod(a, (p - 1) / 2, p) == p - 1 {
            return a;
        }
        a += 1;
    }
    0
}

/// The prime field `F_p` with `σ = id`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> BaseField for Fp<P> {
    const SIGMA_ORDER: u32 = 1;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        (self.0 != 0).then(|| Fp(pow_mod(self.0, P - 2, P)))
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    fn sigma(&self) -> Self {
        *self
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
}

/// The quadratic extension `F_{p²} = F_p(w)`, `w² = r` for the least
/// non-residue `r`, with `σ` the Frobenius `x ↦ x^p` (order 2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp2<const P: u64> {
    re: u64,
    im: u64,
}

impl<const P: u64> Fp2<P> {
    const NR: u64 = non_residue(P);

    pub fn new(re: u64, im: u64) -> Self {
        Fp2 { re: re % P, im: im % P }
    }

    pub fn parts(self) -> (u64, u64) {
        (self.re, self.im)
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut acc = <Self as BaseField>::one();
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Display for Fp2<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "w"),
            (0, b) => write!(f, "{b}w"),
            (a, 1) => write!(f, "({a}+w)"),
            (a, b) => write!(f, "({a}+{b}w)"),
        }
    }
}

impl<const P: u64> Add for Fp2<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp2::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<const P: u64> Sub for Fp2<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp2::new(self.re + P - rhs.re, self.im + P - rhs.im)
    }
}

impl<const P: u64> Mul for Fp2<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re * rhs.re % P + Self::NR * (self.im * rhs.im % P) % P;
        let im = self.re * rhs.im % P + self.im * rhs.re % P;
        Fp2::new(re, im)
    }
}

impl<const P: u64> Neg for Fp2<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp2::new(P - self.re, P - self.im)
    }
}

impl<const P: u64> BaseField for Fp2<P> {
    const SIGMA_ORDER: u32 = 2;

    fn zero() -> Self {
        Fp2 { re: 0, im: 0 }
    }
    fn one() -> Self {
        Fp2::new(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + bw)^{-1} = (a - bw) / (a² - r b²)
        let norm = (self.re * self.re % P + P - Self::NR * (self.im * self.im % P) % P) % P;
        let ninv = pow_mod(norm, P - 2, P);
        Some(Fp2::new(self.re * ninv, (P - self.im) % P * ninv))
    }
    fn from_i64(v: i64) -> Self {
        Fp2::new(v.rem_euclid(P as i64) as u64, 0)
    }
    fn sigma(&self) -> Self {
        // w^p = w · r^{(p-1)/2} = -w
        Fp2::new(self.re, (P - self.im) % P)
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp2::new(rng.gen_range(0..P), rng.gen_range(0..P))
    }
}

pub type F9 = Fp2<3>;

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn axioms<F: BaseField + Copy>(samples: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..samples {
            let (a, b, c) = (F::sample(&mut rng), F::sample(&mut rng), F::sample(&mut rng));
            assert_eq!(a + b, b + a);
            assert_eq!((a * b) * c, a * (b * c));
            assert_eq!(a * (b + c), a * b + a * c);
            assert_eq!(a - a, F::zero());
            assert_eq!(a + (-a), F::zero());
            if let Some(ai) = a.inv() {
                assert_eq!(a * ai, F::one());
            } else {
                assert!(a.is_zero());
            }
            assert_eq!((a * b).sigma(), a.sigma() * b.sigma());
            assert_eq!((a + b).sigma(), a.sigma() + b.sigma());
            assert_eq!(a.sigma_pow(F::SIGMA_ORDER), a);
        }
    }

    #[test]
    fn field_axioms_on_samples() {
        axioms::<Fp<7>>(500);
        axioms::<Fp<13>>(500);
        axioms::<F9>(500);
        axioms::<Fp2<7>>(500);
    }

    #[test]
    fn frobenius_is_the_p_th_power() {
        for re in 0..3 {
            for im in 0..3 {
                let x = F9::new(re, im);
                assert_eq!(x.sigma(), x.pow(3));
            }
        }
        let w = F9::new(0, 1);
        assert_ne!(w.sigma(), w);
        assert_eq!(w.sigma().sigma(), w);
    }

    #[test]
    fn f9_has_nine_elements_and_cyclic_units() {
        // some element has multiplicative order 8
        let gens = (0..3)
            .flat_map(|a| (0..3).map(move |b| F9::new(a, b)))
            .filter(|g| (1..8).all(|k| g.pow(k) != F9::one()) && g.pow(8) == F9::one())
            .count();
        assert_eq!(gens, 4); // φ(8)
    }

    #[test]
    fn rational_sigma_is_identity() {
        let q = rational::rat(3, 7);
        assert_eq!(q.sigma(), q);
        assert_eq!(BaseField::inv(&q), Some(rational::rat(7, 3)));
    }
}
