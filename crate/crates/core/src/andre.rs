//! André quasifield on `F{t}`: `x ∘ y = x · σ^{λ(x)}(y)` with
//! `λ(x) = (N·v(x)) mod |σ|`, for exponents in `(1/N)ℤ`.

use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::BaseField;
use crate::hahn::{HahnElement, HahnError, HahnPoly};
use crate::rational::{self, format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AndreContext {
    denom_bound: u32,
}

impl AndreContext {
    pub fn new(denom_bound: u32) -> Self {
        assert!(denom_bound >= 1, "denominator bound must be positive");
        AndreContext { denom_bound }
    }

    pub fn denom_bound(&self) -> u32 {
        self.denom_bound
    }

    /// Fails unless every exponent of `x` lies in `(1/N)ℤ`.
    pub fn check<F: BaseField>(&self, x: &HahnElement<F>) -> Result<(), HahnError> {
        let n = rational::int(self.denom_bound as i64);
        for e in x.exponents() {
            if !(e * &n).is_integer() {
                return Err(HahnError::IncompatibleAndre {
                    exponent: format_rational(e),
                    bound: self.denom_bound,
                });
            }
        }
        Ok(())
    }

    fn lambda_of(&self, v: &Rational, order: u32) -> u32 {
        let scaled = (v * rational::int(self.denom_bound as i64)).to_integer();
        scaled.mod_floor(&order.into()).to_u32().expect("residue fits in u32")
    }

    /// The twist exponent `λ(x)`; zero for `x = 0`.
    pub fn twist<F: BaseField>(&self, x: &HahnElement<F>) -> Result<u32, HahnError> {
        self.check(x)?;
        Ok(match x.valuation() {
            Some(v) => self.lambda_of(&v, F::SIGMA_ORDER),
            None => 0,
        })
    }

    pub fn multiply<F: BaseField>(
        &self,
        x: &HahnElement<F>,
        y: &HahnElement<F>,
    ) -> Result<HahnElement<F>, HahnError> {
        self.check(y)?;
        if x.is_zero() {
            self.check(x)?;
            return Ok(HahnElement::zero());
        }
        let k = self.twist(x)?;
        Ok(x * &y.sigma_pow(k))
    }

    /// The unique `x` with `a ∘ x = b`.
    pub fn solve_left<F: BaseField>(
        &self,
        a: &HahnElement<F>,
        b: &HahnElement<F>,
    ) -> Result<HahnElement<F>, HahnError> {
        self.check(b)?;
        let k = self.twist(a)?;
        let q = b.div(a)?;
        Ok(q.sigma_pow(F::SIGMA_ORDER - k % F::SIGMA_ORDER))
    }

    /// The unique `x` with `x ∘ a = b`.
    pub fn solve_right<F: BaseField>(
        &self,
        a: &HahnElement<F>,
        b: &HahnElement<F>,
    ) -> Result<HahnElement<F>, HahnError> {
        self.check(a)?;
        self.check(b)?;
        if a.is_zero() {
            return Err(HahnError::DivisionByZero);
        }
        let Some(vb) = b.valuation() else {
            return Ok(HahnElement::zero());
        };
        let va = a.valuation().expect("a is nonzero");
        let k = self.lambda_of(&(vb - va), F::SIGMA_ORDER);
        b.div(&a.sigma_pow(k))
    }

    /// The unique `x` with `m1 ∘ x − m2 ∘ x = c` for `m1 ≠ m2`; this is the
    /// intersection abscissa of two non-parallel lines of the André plane.
    pub fn solve_difference<F: BaseField>(
        &self,
        m1: &HahnElement<F>,
        m2: &HahnElement<F>,
        c: &HahnElement<F>,
    ) -> Result<HahnElement<F>, HahnError> {
        if m1 == m2 {
            return Err(HahnError::DivisionByZero);
        }
        self.check(c)?;
        let (k1, k2) = (self.twist(m1)?, self.twist(m2)?);
        if k1 == k2 {
            let inner = c.div(&(m1 - m2))?;
            return Ok(inner.sigma_pow(F::SIGMA_ORDER - k1 % F::SIGMA_ORDER));
        }
        if F::SIGMA_ORDER != 2 {
            return Err(HahnError::Unsupported(format!(
                "semilinear solve for automorphism order {}",
                F::SIGMA_ORDER
            )));
        }
        // a·x + b·σ(x) = c together with its σ-image, solved by Cramer's rule
        let (a, b) = if k1 == 0 { (m1.clone(), -m2) } else { (-m2, m1.clone()) };
        let (sa, sb, sc) = (a.sigma(), b.sigma(), c.sigma());
        let det = &(&a * &sa) - &(&b * &sb);
        (&(c * &sa) - &(&b * &sc)).div(&det)
    }
}

/// A random element with one to three terms, exponents in `(1/N)ℤ ∩ [−2, 2]`.
pub fn sample_element<F: BaseField, R: Rng + ?Sized>(ctx: &AndreContext, rng: &mut R) -> HahnElement<F> {
    if rng.gen_ratio(1, 10) {
        return HahnElement::zero();
    }
    let d = ctx.denom_bound() as i64;
    let terms: Vec<_> =
        (0..rng.gen_range(1..=3)).map(|_| (rational::rat(rng.gen_range(0..=4 * d), d), F::sample_nonzero(rng))).collect();
    let p = HahnElement::from_poly(HahnPoly::from_terms(terms).expect("nonnegative exponents"));
    p.mul_t_power(&rational::int(-2))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LawTally {
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl LawTally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            self.first_failure.get_or_insert_with(witness);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RightDistributivityWitness {
    pub x: String,
    pub y: String,
    pub z: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub denom_bound: u32,
    pub sigma_order: u32,
    pub triples: usize,
    pub seed: u64,
    pub pass: bool,
    pub identity: LawTally,
    pub left_distributive: LawTally,
    pub left_division: LawTally,
    pub right_division: LawTally,
    pub valuation_additive: LawTally,
    /// `(x + y) ∘ z ≠ x ∘ z + y ∘ z`; present iff one was found.
    pub right_distributivity_failure: Option<RightDistributivityWitness>,
}

/// Checks the quasifield laws on `triples` seeded random triples. The
/// right-distributive law is expected to fail and only a witness is kept.
pub fn check_laws<F: BaseField>(ctx: &AndreContext, triples: usize, seed: u64) -> Result<LawReport, HahnError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mul = |a: &HahnElement<F>, b: &HahnElement<F>| ctx.multiply(a, b);
    let val_sum = |a: Option<Rational>, b: Option<Rational>| Some(a? + b?);
    let (mut identity, mut left_dist, mut ldiv, mut rdiv, mut vadd) = Default::default();
    let mut witness = None;
    let one = HahnElement::<F>::one();
    let show3 = |x: &HahnElement<F>, y: &HahnElement<F>, z: &HahnElement<F>| format!("x = {x}, y = {y}, z = {z}");
    for _ in 0..triples {
        let [x, y, z] = std::array::from_fn(|_| sample_element::<F, _>(ctx, &mut rng));
        let tally = |t: &mut LawTally, ok: bool| t.record(ok, || show3(&x, &y, &z));
        tally(&mut identity, mul(&one, &x)? == x && mul(&x, &one)? == x);
        tally(&mut left_dist, mul(&x, &(&y + &z))? == &mul(&x, &y)? + &mul(&x, &z)?);
        if !x.is_zero() {
            let s = ctx.solve_left(&x, &y)?;
            tally(&mut ldiv, mul(&x, &s)? == y);
            let s = ctx.solve_right(&x, &y)?;
            tally(&mut rdiv, mul(&s, &x)? == y);
        }
        tally(&mut vadd, mul(&x, &y)?.valuation() == val_sum(x.valuation(), y.valuation()));
        if witness.is_none() {
            let lhs = mul(&(&x + &y), &z)?;
            let rhs = &mul(&x, &z)? + &mul(&y, &z)?;
            if lhs != rhs {
                witness = Some(RightDistributivityWitness {
                    x: x.to_string(),
                    y: y.to_string(),
                    z: z.to_string(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    let tallies: [&LawTally; 5] = [&identity, &left_dist, &ldiv, &rdiv, &vadd];
    Ok(LawReport {
        denom_bound: ctx.denom_bound(),
        sigma_order: F::SIGMA_ORDER,
        triples,
        seed,
        pass: tallies.iter().all(|t| t.failed == 0),
        identity,
        left_distributive: left_dist,
        left_division: ldiv,
        right_division: rdiv,
        valuation_additive: vadd,
        right_distributivity_failure: witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F9;
    use crate::hahn::HahnPoly;
    use crate::rational::{int, rat};

    fn mono(c: F9, e: Rational) -> HahnElement<F9> {
        HahnElement::from_poly(HahnPoly::monomial(c, e).unwrap())
    }

    #[test]
    fn identity_and_twist() {
        let ctx = AndreContext::new(2);
        let y = &mono(F9::new(1, 2), rat(1, 2)) + &mono(F9::new(0, 1), int(3));
        assert_eq!(ctx.multiply(&HahnElement::one(), &y).unwrap(), y);
        assert_eq!(ctx.multiply(&y, &HahnElement::one()).unwrap(), y);
        let x = mono(F9::new(1, 0), rat(3, 2));
        assert_eq!(ctx.twist(&x).unwrap(), 1);
        assert_eq!(ctx.multiply(&x, &y).unwrap(), &x * &y.sigma());
    }

    #[test]
    fn rejects_foreign_exponents() {
        let ctx = AndreContext::new(2);
        let x = mono(F9::new(1, 0), rat(1, 3));
        assert!(matches!(ctx.multiply(&x, &HahnElement::one()), Err(HahnError::IncompatibleAndre { bound: 2, .. })));
    }

    #[test]
    fn right_distributivity_fails() {
        let ctx = AndreContext::new(2);
        let x = HahnElement::<F9>::one();
        let y = mono(F9::new(1, 0), rat(1, 2));
        let z = mono(F9::new(0, 1), int(0));
        let lhs = ctx.multiply(&(&x + &y), &z).unwrap();
        let rhs = &ctx.multiply(&x, &z).unwrap() + &ctx.multiply(&y, &z).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn difference_equation() {
        let ctx = AndreContext::new(2);
        let m1 = mono(F9::new(2, 1), int(0));
        let m2 = mono(F9::new(1, 1), rat(1, 2));
        let c = &mono(F9::new(0, 1), int(1)) + &HahnElement::one();
        let x = ctx.solve_difference(&m1, &m2, &c).unwrap();
        let lhs = &ctx.multiply(&m1, &x).unwrap() - &ctx.multiply(&m2, &x).unwrap();
        assert_eq!(lhs, c);
        // same twist class
        let m3 = mono(F9::new(1, 0), int(1));
        let x = ctx.solve_difference(&m1, &m3, &c).unwrap();
        let lhs = &ctx.multiply(&m1, &x).unwrap() - &ctx.multiply(&m3, &x).unwrap();
        assert_eq!(lhs, c);
    }

    #[test]
    fn sampled_laws() {
        let r = check_laws::<F9>(&AndreContext::new(2), 200, 5).unwrap();
        assert!(r.pass, "{}", serde_json::to_string(&r).unwrap());
        assert!(r.right_distributivity_failure.is_some());
        let q = check_laws::<Rational>(&AndreContext::new(2), 50, 5).unwrap();
        assert!(q.pass && q.right_distributivity_failure.is_none());
    }
}
