use std::fmt;

use num_traits::Signed;
use rand::Rng;

use super::{Chain, Geometry, Kind};
use crate::andre::AndreContext;
use crate::field::BaseField;
use crate::hahn::{HahnElement, HahnError, HahnPoly};
use crate::rational;

type H<F> = HahnElement<F>;

/// Elements of the translation plane coordinatized by an André quasifield.
#[derive(Clone, Debug)]
pub enum QElem<F> {
    /// `(x, y)`.
    Affine(H<F>, H<F>),
    /// `(m)`, the common point of all lines of slope `m`.
    Slope(H<F>),
    /// `(∞)`, the common point of all vertical lines.
    InfPoint,
    /// `[m, k] = {(x, m∘x + k)}`.
    Line(H<F>, H<F>),
    /// `[c] = {(c, y)}`.
    Vertical(H<F>),
    /// The line at infinity.
    InfLine,
}

impl<F: BaseField> PartialEq for QElem<F> {
    fn eq(&self, other: &Self) -> bool {
        use QElem::*;
        match (self, other) {
            (Affine(a, b), Affine(c, d)) | (Line(a, b), Line(c, d)) => a == c && b == d,
            (Slope(a), Slope(b)) | (Vertical(a), Vertical(b)) => a == b,
            (InfPoint, InfPoint) | (InfLine, InfLine) => true,
            _ => false,
        }
    }
}

impl<F: BaseField> QElem<F> {
    pub fn kind(&self) -> Kind {
        match self {
            QElem::Affine(..) | QElem::Slope(_) | QElem::InfPoint => Kind::Point,
            _ => Kind::Line,
        }
    }

    fn coords(&self) -> Vec<&H<F>> {
        match self {
            QElem::Affine(a, b) | QElem::Line(a, b) => vec![a, b],
            QElem::Slope(a) | QElem::Vertical(a) => vec![a],
            QElem::InfPoint | QElem::InfLine => vec![],
        }
    }
}

impl<F: BaseField> fmt::Display for QElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QElem::Affine(x, y) => write!(f, "({x}, {y})"),
            QElem::Slope(m) => write!(f, "({m})"),
            QElem::InfPoint => f.write_str("(inf)"),
            QElem::Line(m, k) => write!(f, "[{m}, {k}]"),
            QElem::Vertical(c) => write!(f, "[{c}]"),
            QElem::InfLine => f.write_str("[inf]"),
        }
    }
}

/// Oracle for the André plane over `F{t}`. Samplers stay inside the
/// integral patch: every coordinate has valuation `≥ 0` and exponents in
/// `(1/N)ℤ`.
#[derive(Clone, Debug)]
pub struct QuasiPlane<F> {
    ctx: AndreContext,
    _field: std::marker::PhantomData<F>,
}

impl<F: BaseField> QuasiPlane<F> {
    pub fn new(ctx: AndreContext) -> Self {
        QuasiPlane { ctx, _field: std::marker::PhantomData }
    }

    pub fn context(&self) -> &AndreContext {
        &self.ctx
    }

    /// `m∘x`; operands from the samplers always satisfy the exponent bound.
    pub fn mul(&self, m: &H<F>, x: &H<F>) -> Result<H<F>, HahnError> {
        self.ctx.multiply(m, x)
    }

    pub fn is_integral(x: &H<F>) -> bool {
        x.valuation().map_or(true, |v| !v.is_negative())
    }

    /// Every coordinate of `x` is integral.
    pub fn in_patch(&self, x: &QElem<F>) -> bool {
        x.coords().into_iter().all(Self::is_integral)
    }

    pub fn try_incident(&self, a: &QElem<F>, b: &QElem<F>) -> Result<bool, HahnError> {
        use QElem::*;
        let (p, l) = match (a.kind(), b.kind()) {
            (Kind::Point, Kind::Line) => (a, b),
            (Kind::Line, Kind::Point) => (b, a),
            _ => return Ok(false),
        };
        Ok(match (p, l) {
            (Affine(x, y), Line(m, k)) => *y == &self.mul(m, x)? + k,
            (Affine(x, _), Vertical(c)) => x == c,
            (Slope(m), Line(m2, _)) => m == m2,
            (Slope(_), InfLine) | (InfPoint, Vertical(_)) | (InfPoint, InfLine) => true,
            _ => false,
        })
    }

    pub fn try_connect(&self, a: &QElem<F>, b: &QElem<F>) -> Result<Option<QElem<F>>, HahnError> {
        use QElem::*;
        if a.kind() != b.kind() || a == b {
            return Ok(None);
        }
        let out = match (a, b) {
            (Affine(x1, y1), Affine(x2, y2)) => {
                if x1 == x2 {
                    Vertical(x1.clone())
                } else {
                    let m = self.ctx.solve_right(&(x1 - x2), &(y1 - y2))?;
                    let k = y1 - &self.mul(&m, x1)?;
                    Line(m, k)
                }
            }
            (Affine(x, y), Slope(m)) | (Slope(m), Affine(x, y)) => Line(m.clone(), y - &self.mul(m, x)?),
            (Affine(x, _), InfPoint) | (InfPoint, Affine(x, _)) => Vertical(x.clone()),
            (Slope(_) | InfPoint, Slope(_) | InfPoint) => InfLine,
            (Line(m1, k1), Line(m2, k2)) => {
                if m1 == m2 {
                    Slope(m1.clone())
                } else {
                    let x = self.ctx.solve_difference(m1, m2, &(k2 - k1))?;
                    let y = &self.mul(m1, &x)? + k1;
                    Affine(x, y)
                }
            }
            (Line(m, k), Vertical(c)) | (Vertical(c), Line(m, k)) => Affine(c.clone(), &self.mul(m, c)? + k),
            (Line(m, _), InfLine) | (InfLine, Line(m, _)) => Slope(m.clone()),
            (Vertical(_), Vertical(_)) | (Vertical(_), InfLine) | (InfLine, Vertical(_)) => InfPoint,
            _ => return Ok(None),
        };
        Ok(Some(out))
    }

    /// A random integral element with exponents in `(1/N)ℤ`.
    pub fn sample_coord<R: Rng + ?Sized>(&self, rng: &mut R) -> H<F> {
        if rng.gen_ratio(1, 8) {
            return H::zero();
        }
        let d = self.ctx.denom_bound() as i64;
        let terms: Vec<_> = (0..rng.gen_range(1..=2))
            .map(|_| (rational::rat(rng.gen_range(0..=2 * d), d), F::sample_nonzero(rng)))
            .collect();
        HahnElement::from_poly(HahnPoly::from_terms(terms).expect("nonnegative exponents"))
    }

    fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> QElem<F> {
        match rng.gen_range(0..20) {
            0 => QElem::InfPoint,
            1..=2 => QElem::Slope(self.sample_coord(rng)),
            _ => QElem::Affine(self.sample_coord(rng), self.sample_coord(rng)),
        }
    }

    fn sample_line<R: Rng + ?Sized>(&self, rng: &mut R) -> QElem<F> {
        match rng.gen_range(0..20) {
            0 => QElem::InfLine,
            1..=2 => QElem::Vertical(self.sample_coord(rng)),
            _ => QElem::Line(self.sample_coord(rng), self.sample_coord(rng)),
        }
    }

    fn pencil_member<R: Rng + ?Sized>(&self, x: &QElem<F>, rng: &mut R) -> Result<QElem<F>, HahnError> {
        use QElem::*;
        let s = self.sample_coord(rng);
        let special = rng.gen_ratio(1, 10);
        Ok(match x {
            Line(m, _) if special => Slope(m.clone()),
            Line(m, k) => Affine(s.clone(), &self.mul(m, &s)? + k),
            Vertical(_) if special => InfPoint,
            Vertical(c) => Affine(c.clone(), s),
            InfLine if special => InfPoint,
            InfLine => Slope(s),
            Affine(x, _) if special => Vertical(x.clone()),
            Affine(x, y) => Line(s.clone(), y - &self.mul(&s, x)?),
            Slope(_) if special => InfLine,
            Slope(m) => Line(m.clone(), s),
            InfPoint if special => InfLine,
            InfPoint => Vertical(s),
        })
    }
}

impl<F: BaseField> Geometry for QuasiPlane<F> {
    type Elem = QElem<F>;

    fn kind(&self, x: &QElem<F>) -> Kind {
        x.kind()
    }

    fn incident(&self, x: &QElem<F>, y: &QElem<F>) -> bool {
        self.try_incident(x, y).expect("samplers respect the André context")
    }

    fn same(&self, x: &QElem<F>, y: &QElem<F>) -> bool {
        x == y
    }

    fn sample_element<R: Rng + ?Sized>(&self, kind: Kind, rng: &mut R) -> QElem<F> {
        match kind {
            Kind::Point => self.sample_point(rng),
            Kind::Line => self.sample_line(rng),
        }
    }

    fn sample_pencil<R: Rng + ?Sized>(&self, x: &QElem<F>, count: usize, rng: &mut R) -> Vec<QElem<F>> {
        let mut out: Vec<QElem<F>> = Vec::with_capacity(count);
        let mut attempts = 0;
        while out.len() < count && attempts < 50 * count + 50 {
            attempts += 1;
            let Ok(e) = self.pencil_member(x, rng) else { continue };
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }

    fn connect(&self, x: &QElem<F>, y: &QElem<F>) -> Option<QElem<F>> {
        self.try_connect(x, y).ok().flatten()
    }

    /// Triangles whose six elements all lie in the integral patch.
    fn closed_chains<R: Rng + ?Sized>(
        &self,
        n: usize,
        base: Option<&QElem<F>>,
        limit: usize,
        rng: &mut R,
    ) -> Vec<Chain<QElem<F>>> {
        if n != 3 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut rounds = 0;
        while out.len() < limit && rounds < 50 * limit + 100 {
            rounds += 1;
            let batch = super::sample_triangles(self, base, 1, rng);
            out.extend(batch.into_iter().filter(|c| c.elements.iter().all(|e| self.in_patch(e))));
        }
        out
    }

    fn describe(&self, x: &QElem<F>) -> String {
        x.to_string()
    }
}
