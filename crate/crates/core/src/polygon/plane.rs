use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{sample_triangles, Chain, Geometry, Kind};
use crate::field::BaseField;
use crate::hahn::{HahnElement, HahnPoly};
use crate::rational::{self, Rational};

/// Exact field arithmetic together with a valuation into `ℚ ∪ {∞}`.
pub trait ValuedField {
    type Elem: Clone + fmt::Debug + fmt::Display;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `None` is `∞`.
    fn valuation(&self, a: &Self::Elem) -> Option<Rational>;
    /// Multiplies by a fixed element of valuation `e`; `e` must lie in the
    /// value group.
    fn shift(&self, a: &Self::Elem, e: &Rational) -> Self::Elem;
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// A random element of valuation exactly 0.
    fn sample_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// A random element of the value group.
    fn sample_shift<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational;

    /// Scales so the least coordinate valuation is 0.
    fn unimodular(&self, v: &[Self::Elem; 3]) -> Option<[Self::Elem; 3]> {
        let m = v.iter().filter_map(|c| self.valuation(c)).min()?;
        let shift = -m;
        Some([self.shift(&v[0], &shift), self.shift(&v[1], &shift), self.shift(&v[2], &shift)])
    }

    fn cross(&self, a: &[Self::Elem; 3], b: &[Self::Elem; 3]) -> [Self::Elem; 3] {
        let m = |i: usize, j: usize| self.sub(&self.mul(&a[i], &b[j]), &self.mul(&a[j], &b[i]));
        [m(1, 2), m(2, 0), m(0, 1)]
    }

    fn dot(&self, a: &[Self::Elem; 3], b: &[Self::Elem; 3]) -> Self::Elem {
        let s = self.add(&self.mul(&a[0], &b[0]), &self.mul(&a[1], &b[1]));
        self.add(&s, &self.mul(&a[2], &b[2]))
    }
}

/// `ℚ` with the `p`-adic valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAdicRationals {
    p: u64,
}

impl PAdicRationals {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0), "{p} is not prime");
        PAdicRationals { p }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn order(&self, x: &BigInt) -> i64 {
        let p = BigInt::from(self.p);
        let mut x = x.clone();
        let mut k = 0;
        while (&x % &p).is_zero() {
            x /= &p;
            k += 1;
        }
        k
    }

    fn unit_int<R: Rng + ?Sized>(&self, rng: &mut R, max: i64) -> i64 {
        loop {
            let v = rng.gen_range(1..=max);
            if v as u64 % self.p != 0 {
                return v;
            }
        }
    }
}

impl ValuedField for PAdicRationals {
    type Elem = Rational;

    fn name(&self) -> String {
        format!("rationals/{}-adic", self.p)
    }
    fn zero(&self) -> Rational {
        <Rational as Zero>::zero()
    }
    fn one(&self) -> Rational {
        <Rational as One>::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn is_zero(&self, a: &Rational) -> bool {
        Zero::is_zero(a)
    }
    fn valuation(&self, a: &Rational) -> Option<Rational> {
        if Zero::is_zero(a) {
            return None;
        }
        Some(rational::int(self.order(a.numer()) - self.order(a.denom())))
    }
    fn shift(&self, a: &Rational, e: &Rational) -> Rational {
        assert!(rational::is_integer(e), "p-adic value group is the integers");
        let k: BigInt = e.to_integer();
        let p = Rational::from_integer(BigInt::from(self.p));
        let mut out = a.clone();
        let steps = k.abs();
        let mut i = BigInt::zero();
        while i < steps {
            out = if k.is_positive() { out * &p } else { out / &p };
            i += 1;
        }
        out
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        if rng.gen_ratio(1, 6) {
            return <Rational as Zero>::zero();
        }
        let sign = if rng.gen() { 1 } else { -1 };
        let num = sign * self.unit_int(rng, 12) * (self.p as i64).pow(rng.gen_range(0..=2));
        let den = self.unit_int(rng, 7) * (self.p as i64).pow(rng.gen_range(0..=1));
        rational::rat(num, den)
    }
    fn sample_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        let sign = if rng.gen() { 1 } else { -1 };
        rational::rat(sign * self.unit_int(rng, 12), self.unit_int(rng, 7))
    }
    fn sample_shift<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        rational::int(rng.gen_range(-3..=3))
    }
}

/// `F{t}` with exponents drawn from `(1/denom)ℤ` when sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HahnValued<F> {
    denom: u32,
    _field: std::marker::PhantomData<F>,
}

impl<F: BaseField> HahnValued<F> {
    pub fn new(denom: u32) -> Self {
        assert!(denom >= 1);
        HahnValued { denom, _field: std::marker::PhantomData }
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    fn exponent<R: Rng + ?Sized>(&self, rng: &mut R, max_steps: i64) -> Rational {
        rational::rat(rng.gen_range(0..=max_steps), self.denom as i64)
    }
}

impl<F: BaseField> ValuedField for HahnValued<F> {
    type Elem = HahnElement<F>;

    fn name(&self) -> String {
        format!("hahn(1/{})", self.denom)
    }
    fn zero(&self) -> Self::Elem {
        HahnElement::zero()
    }
    fn one(&self) -> Self::Elem {
        HahnElement::one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a - b
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        -a
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn valuation(&self, a: &Self::Elem) -> Option<Rational> {
        a.valuation()
    }
    fn shift(&self, a: &Self::Elem, e: &Rational) -> Self::Elem {
        a.mul_t_power(e)
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        if rng.gen_ratio(1, 6) {
            return HahnElement::zero();
        }
        let max = 3 * self.denom as i64;
        let terms: Vec<_> = (0..rng.gen_range(1..=3))
            .map(|_| (self.exponent(rng, max), F::sample_nonzero(rng)))
            .collect();
        let poly = HahnPoly::from_terms(terms).expect("nonnegative exponents");
        if poly.is_zero() {
            return self.sample(rng);
        }
        HahnElement::from_poly(poly)
    }
    fn sample_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let mut terms = vec![(<Rational as Zero>::zero(), F::sample_nonzero(rng))];
        for _ in 0..rng.gen_range(0..=2) {
            let e = rational::rat(rng.gen_range(1..=2 * self.denom as i64), self.denom as i64);
            terms.push((e, F::sample_nonzero(rng)));
        }
        let num = HahnPoly::from_terms(terms).expect("nonnegative exponents");
        if rng.gen_ratio(1, 3) {
            // a genuine fraction, still of valuation 0
            let e = rational::rat(rng.gen_range(1..=2 * self.denom as i64), self.denom as i64);
            let den = HahnPoly::from_terms([(<Rational as Zero>::zero(), F::one()), (e, F::sample_nonzero(rng))])
                .expect("nonnegative exponents");
            return HahnElement::new(num, den).expect("unit denominator");
        }
        HahnElement::from_poly(num)
    }
    fn sample_shift<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        let d = self.denom as i64;
        rational::rat(rng.gen_range(-3 * d..=3 * d), d)
    }
}

/// A point or line of `PG(2, K)` in unimodular coordinates.
#[derive(Clone, Debug)]
pub struct PlaneElem<E> {
    pub kind: Kind,
    pub coords: [E; 3],
}

impl<E: fmt::Display> fmt::Display for PlaneElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (open, close) = match self.kind {
            Kind::Point => ('(', ')'),
            Kind::Line => ('[', ']'),
        };
        write!(f, "{open}{}, {}, {}{close}", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// Oracle for the Desarguesian plane over a valued field.
#[derive(Clone, Debug)]
pub struct ProjectivePlane<K> {
    field: K,
}

impl<K: ValuedField> ProjectivePlane<K> {
    pub fn new(field: K) -> Self {
        ProjectivePlane { field }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    /// Builds an element from any nonzero coordinate vector.
    pub fn element(&self, kind: Kind, coords: [K::Elem; 3]) -> Option<PlaneElem<K::Elem>> {
        let coords = self.field.unimodular(&coords)?;
        Some(PlaneElem { kind, coords })
    }

    pub fn point(&self, coords: [K::Elem; 3]) -> Option<PlaneElem<K::Elem>> {
        self.element(Kind::Point, coords)
    }

    pub fn line(&self, coords: [K::Elem; 3]) -> Option<PlaneElem<K::Elem>> {
        self.element(Kind::Line, coords)
    }

    /// The line through two points, or the point on two lines.
    pub fn join(&self, x: &PlaneElem<K::Elem>, y: &PlaneElem<K::Elem>) -> Option<PlaneElem<K::Elem>> {
        if x.kind != y.kind {
            return None;
        }
        self.element(x.kind.dual(), self.field.cross(&x.coords, &y.coords))
    }

    /// Two elements of the pencil of `x` whose minors include a unit.
    pub fn pencil_basis(&self, x: &PlaneElem<K::Elem>) -> [PlaneElem<K::Elem>; 2] {
        let f = &self.field;
        let k = (0..3)
            .find(|&i| f.valuation(&x.coords[i]).is_some_and(|v| Zero::is_zero(&v)))
            .expect("unimodular coordinates have a unit entry");
        let mut others = (0..3).filter(|&i| i != k);
        let (i, j) = (others.next().unwrap(), others.next().unwrap());
        let basis = |i: usize| {
            let mut c = [f.zero(), f.zero(), f.zero()];
            c[i] = x.coords[k].clone();
            c[k] = f.neg(&x.coords[i]);
            self.element(x.kind.dual(), c).expect("nonzero vector")
        };
        [basis(i), basis(j)]
    }
}

impl<K: ValuedField> Geometry for ProjectivePlane<K> {
    type Elem = PlaneElem<K::Elem>;

    fn kind(&self, x: &Self::Elem) -> Kind {
        x.kind
    }

    fn incident(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        x.kind != y.kind && self.field.is_zero(&self.field.dot(&x.coords, &y.coords))
    }

    fn same(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        x.kind == y.kind && self.field.cross(&x.coords, &y.coords).iter().all(|c| self.field.is_zero(c))
    }

    fn sample_element<R: Rng + ?Sized>(&self, kind: Kind, rng: &mut R) -> Self::Elem {
        loop {
            let c = [self.field.sample(rng), self.field.sample(rng), self.field.sample(rng)];
            if let Some(e) = self.element(kind, c) {
                return e;
            }
        }
    }

    fn sample_pencil<R: Rng + ?Sized>(&self, x: &Self::Elem, count: usize, rng: &mut R) -> Vec<Self::Elem> {
        let f = &self.field;
        let [b1, b2] = self.pencil_basis(x);
        let mut out: Vec<Self::Elem> = Vec::with_capacity(count);
        let push = |e: Self::Elem, out: &mut Vec<Self::Elem>| {
            if out.len() < count && !out.iter().any(|o| self.same(o, &e)) {
                out.push(e);
            }
        };
        push(b1.clone(), &mut out);
        push(b2.clone(), &mut out);
        let mut attempts = 0;
        while out.len() < count && attempts < 50 * count + 50 {
            attempts += 1;
            let (s, t) = (f.sample(rng), f.sample(rng));
            let c: Vec<_> = (0..3)
                .map(|i| f.add(&f.mul(&s, &b1.coords[i]), &f.mul(&t, &b2.coords[i])))
                .collect();
            if let Some(e) = self.element(x.kind.dual(), [c[0].clone(), c[1].clone(), c[2].clone()]) {
                push(e, &mut out);
            }
        }
        out
    }

    fn connect(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem> {
        if x.kind != y.kind || self.same(x, y) {
            return None;
        }
        self.join(x, y)
    }

    fn closed_chains<R: Rng + ?Sized>(
        &self,
        n: usize,
        base: Option<&Self::Elem>,
        limit: usize,
        rng: &mut R,
    ) -> Vec<Chain<Self::Elem>> {
        if n != 3 {
            return Vec::new();
        }
        sample_triangles(self, base, limit, rng)
    }

    fn describe(&self, x: &Self::Elem) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> Rational {
        int(v)
    }

    #[test]
    fn join_and_meet_of_coordinate_elements() {
        let plane = ProjectivePlane::new(PAdicRationals::new(3));
        let e1 = plane.point([q(1), q(0), q(0)]).unwrap();
        let e2 = plane.point([q(0), q(1), q(0)]).unwrap();
        let l = plane.join(&e1, &e2).unwrap();
        assert_eq!(l.coords, [q(0), q(0), q(1)]);
        let m = plane.line([q(0), q(1), q(0)]).unwrap();
        let p = plane.join(&l, &m).unwrap();
        assert!(plane.same(&p, &e1));
        assert!(plane.incident(&p, &l) && plane.incident(&p, &m));
    }

    #[test]
    fn unimodular_scaling() {
        let k = PAdicRationals::new(3);
        let v = k.unimodular(&[rational::rat(9, 2), q(0), rational::rat(6, 5)]).unwrap();
        assert_eq!(v, [rational::rat(3, 2), q(0), rational::rat(2, 5)]);
        assert!(k.unimodular(&[q(0), q(0), q(0)]).is_none());
        let h = HahnValued::<Rational>::new(2);
        let t = HahnElement::<Rational>::t_pow(&rational::rat(1, 2));
        let v = h.unimodular(&[t.clone(), &t * &t, HahnElement::zero()]).unwrap();
        assert_eq!(v[0].valuation(), Some(q(0)));
        assert_eq!(v[1].valuation(), Some(rational::rat(1, 2)));
    }

    #[test]
    fn pencil_sampler_contract() {
        let plane = ProjectivePlane::new(HahnValued::<Rational>::new(2));
        let f = plane.field().clone();
        let l = plane.line([f.zero(), f.zero(), f.one()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pencil = plane.sample_pencil(&l, 5, &mut rng);
        assert_eq!(pencil.len(), 5);
        for (i, p) in pencil.iter().enumerate() {
            assert!(p.coords[2].is_zero());
            assert!(plane.incident(p, &l));
            assert!(pencil[..i].iter().all(|o| !plane.same(o, p)));
        }
    }

    #[test]
    fn sampled_joins_round_trip() {
        let plane = ProjectivePlane::new(PAdicRationals::new(3));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = plane.sample_element(Kind::Point, &mut rng);
            let b = plane.sample_element(Kind::Point, &mut rng);
            let Some(l) = plane.connect(&a, &b) else {
                assert!(plane.same(&a, &b));
                continue;
            };
            assert!(plane.incident(&a, &l) && plane.incident(&b, &l));
            let c = plane.sample_element(Kind::Point, &mut rng);
            if let Some(m) = plane.connect(&a, &c) {
                if !plane.same(&l, &m) {
                    assert!(plane.same(&plane.connect(&l, &m).unwrap(), &a));
                }
            }
        }
    }

    #[test]
    fn padic_valuation() {
        let k = PAdicRationals::new(3);
        assert_eq!(k.valuation(&rational::rat(18, 5)), Some(q(2)));
        assert_eq!(k.valuation(&rational::rat(2, 27)), Some(q(-3)));
        assert_eq!(k.valuation(&q(0)), None);
        assert_eq!(k.shift(&q(2), &q(-1)), rational::rat(2, 3));
    }
}
