//! The valuation `u`, weight sequences and the (U1)–(U4) checkers.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::field::BaseField;
use crate::hahn::HahnError;
use crate::polygon::io::{GeometryFile, Scalar, ValuationEntries};
use crate::polygon::{Element, FiniteGeometry, Geometry, Kind, PlaneElem, ProjectivePlane, QElem, QuasiPlane, ValuedField};
use crate::rational::{format_rational, parse_rational, Rational};

mod checks;
mod suite;
mod weights;

pub use checks::{check_u1, check_u2, check_u3, check_u4, U1Report, U2Report, U3Report, U4Report};
pub use suite::{
    run_finite_suite, run_plane_suite, AxiomTally, FiniteSuiteReport, PlaneSuiteConfig, PlaneSuiteReport,
};
pub use weights::{classify, euclidean_weights, rescale_discrete, Rescaled, WeightSequence, WsLabel};

/// A value of `u`: a nonnegative rational or `∞`, ordered with `∞` on top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyValue {
    Finite(Rational),
    Infinite,
}

impl PolyValue {
    pub fn zero() -> Self {
        PolyValue::Finite(<Rational as Zero>::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PolyValue::Finite(q) if Zero::is_zero(q))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            PolyValue::Finite(q) => Some(q),
            PolyValue::Infinite => None,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s.trim() == "inf" {
            return Some(PolyValue::Infinite);
        }
        parse_rational(s).filter(|q| !q.is_negative()).map(PolyValue::Finite)
    }

    fn from_option(v: Option<Rational>) -> Self {
        v.map_or(PolyValue::Infinite, PolyValue::Finite)
    }
}

impl fmt::Display for PolyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyValue::Finite(q) => f.write_str(&format_rational(q)),
            PolyValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for PolyValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PolyValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Scalar::deserialize(d)?;
        PolyValue::parse(&raw.to_string())
            .ok_or_else(|| serde::de::Error::custom(format!("invalid valuation value {raw}")))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("{0} and {1} are not adjacent")]
    NotAdjacent(String, String),
    #[error("no value for the pair {0}, {1}")]
    Missing(String, String),
    #[error("unknown element id {0:?}")]
    UnknownId(String),
    #[error("invalid value {value:?} for the pair {x}, {y}")]
    BadValue { x: String, y: String, value: String },
    #[error("{0} and {1} are proportional")]
    Proportional(String, String),
    #[error("{0} lies outside the integral patch")]
    OutsidePatch(String),
    #[error("chain has length {got}, expected {expected}")]
    ChainLength { expected: usize, got: usize },
    #[error("invalid weight sequence: {0}")]
    Weights(String),
    #[error("no discrete weight sequences for n = {0}")]
    NotDiscrete(usize),
    #[error(transparent)]
    Hahn(#[from] HahnError),
}

/// `u` on adjacent pairs of a geometry, with `u(x, x) = ∞`.
pub trait Valuation<G: Geometry> {
    fn value(&self, g: &G, x: &G::Elem, y: &G::Elem) -> Result<PolyValue, ValuationError>;
}

/// An explicit table for a finite geometry. Entries are directed; a
/// missing reverse entry is filled from the given one, so asymmetric input
/// survives and is caught by (U3).
#[derive(Clone, Debug)]
pub struct TableValuation {
    table: HashMap<(Element, Element), PolyValue>,
    default: Option<PolyValue>,
}

impl TableValuation {
    /// `u ≡ 0` off the diagonal.
    pub fn trivial() -> Self {
        TableValuation { table: HashMap::new(), default: Some(PolyValue::zero()) }
    }

    /// A total table; pairs absent from `entries` take `default` when given.
    pub fn from_entries<I>(g: &FiniteGeometry, entries: I, default: Option<PolyValue>) -> Result<Self, ValuationError>
    where
        I: IntoIterator<Item = (Element, Element, PolyValue)>,
    {
        let mut table = HashMap::new();
        let mut given = Vec::new();
        for (x, y, v) in entries {
            if x == y || x.kind != y.kind || g.connect(&x, &y).is_none() {
                return Err(ValuationError::NotAdjacent(g.id(x).into(), g.id(y).into()));
            }
            table.insert((x, y), v.clone());
            given.push((x, y, v));
        }
        for (x, y, v) in given {
            table.entry((y, x)).or_insert(v);
        }
        let out = TableValuation { table, default };
        if out.default.is_none() {
            for x in g.elements() {
                for l in g.neighbors(x) {
                    for y in g.neighbors(l) {
                        if x != y && !out.table.contains_key(&(x, y)) {
                            return Err(ValuationError::Missing(g.id(x).into(), g.id(y).into()));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reads the `valuation` block of a geometry file.
    pub fn from_file(g: &FiniteGeometry, entries: &ValuationEntries) -> Result<Self, ValuationError> {
        let lookup = |id: &str, kind: Kind| {
            g.element_by_id(id)
                .filter(|e| e.kind == kind)
                .ok_or_else(|| ValuationError::UnknownId(id.to_string()))
        };
        let mut parsed = Vec::new();
        for (kind, list) in [(Kind::Point, &entries.points), (Kind::Line, &entries.lines)] {
            for (a, b, v) in list {
                let (x, y) = (lookup(&a.to_string(), kind)?, lookup(&b.to_string(), kind)?);
                let value = PolyValue::parse(&v.to_string()).ok_or_else(|| ValuationError::BadValue {
                    x: a.to_string(),
                    y: b.to_string(),
                    value: v.to_string(),
                })?;
                parsed.push((x, y, value));
            }
        }
        Self::from_entries(g, parsed, None)
    }

    pub fn set(&mut self, x: Element, y: Element, v: PolyValue) {
        self.table.insert((x, y), v.clone());
        self.table.insert((y, x), v);
    }

    /// Swaps the roles of points and lines, keeping every value.
    pub fn dual(&self) -> TableValuation {
        let flip = |e: &Element| Element { kind: e.kind.dual(), index: e.index };
        TableValuation {
            table: self.table.iter().map(|((x, y), v)| ((flip(x), flip(y)), v.clone())).collect(),
            default: self.default.clone(),
        }
    }

    /// Entries in the on-disk form, sorted for stable output. Every adjacent
    /// pair is written once; the reverse pair only when its value differs.
    pub fn to_entries(&self, g: &FiniteGeometry) -> ValuationEntries {
        let mut out = ValuationEntries::default();
        let value = |x: Element, y: Element| self.table.get(&(x, y)).or(self.default.as_ref());
        for x in g.elements() {
            let mut others: Vec<Element> =
                g.neighbors(x).flat_map(|l| g.neighbors(l)).filter(|&y| y != x).collect();
            others.sort();
            others.dedup();
            for y in others {
                let Some(v) = value(x, y) else { continue };
                if x > y && value(y, x) == Some(v) {
                    continue;
                }
                let row = (g.id(x).into(), g.id(y).into(), Scalar::Str(v.to_string()));
                match x.kind {
                    Kind::Point => out.points.push(row),
                    Kind::Line => out.lines.push(row),
                }
            }
        }
        out
    }
}

impl Valuation<FiniteGeometry> for TableValuation {
    fn value(&self, g: &FiniteGeometry, x: &Element, y: &Element) -> Result<PolyValue, ValuationError> {
        if x == y {
            return Ok(PolyValue::Infinite);
        }
        if x.kind != y.kind || g.connect(x, y).is_none() {
            return Err(ValuationError::NotAdjacent(g.id(*x).into(), g.id(*y).into()));
        }
        self.table
            .get(&(*x, *y))
            .or(self.default.as_ref())
            .cloned()
            .ok_or_else(|| ValuationError::Missing(g.id(*x).into(), g.id(*y).into()))
    }
}

/// Swaps points and lines of a finite geometry and transports `u`.
pub fn dualize(g: &FiniteGeometry, u: &TableValuation) -> (FiniteGeometry, TableValuation) {
    (g.dual(), u.dual())
}

/// Loads a geometry file together with its valuation and weights.
pub fn load_valued_geometry(
    file: &GeometryFile,
) -> Result<(FiniteGeometry, TableValuation, Option<WeightSequence>), String> {
    let g = file.to_geometry().map_err(|e| e.to_string())?;
    let u = match &file.valuation {
        Some(entries) => TableValuation::from_file(&g, entries).map_err(|e| format!("valuation: {e}"))?,
        None => TableValuation::trivial(),
    };
    let ws = match (&file.weights, file.n) {
        (None, Some(n)) => Some(euclidean_weights(n)),
        (None, None) => None,
        (Some(spec), n) => Some(WeightSequence::from_spec(spec, n).map_err(|e| format!("weights: {e}"))?),
    };
    Ok((g, u, ws))
}

/// Minimum valuation of the 2×2 minors of two unimodular coordinate rows.
pub fn minor_valuation<K: ValuedField>(
    k: &K,
    p: &[K::Elem; 3],
    q: &[K::Elem; 3],
) -> Result<PolyValue, ValuationError> {
    let describe = |v: &[K::Elem; 3]| format!("({}, {}, {})", v[0], v[1], v[2]);
    let (Some(a), Some(b)) = (k.unimodular(p), k.unimodular(q)) else {
        return Err(ValuationError::Proportional(describe(p), describe(q)));
    };
    let minors = k.cross(&a, &b);
    minors
        .iter()
        .filter_map(|m| k.valuation(m))
        .min()
        .map(PolyValue::Finite)
        .ok_or_else(|| ValuationError::Proportional(describe(p), describe(q)))
}

/// The unimodular-minor valuation on `PG(2, K)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinorValuation;

impl<K: ValuedField> Valuation<ProjectivePlane<K>> for MinorValuation {
    fn value(
        &self,
        g: &ProjectivePlane<K>,
        x: &PlaneElem<K::Elem>,
        y: &PlaneElem<K::Elem>,
    ) -> Result<PolyValue, ValuationError> {
        if x.kind != y.kind {
            return Err(ValuationError::NotAdjacent(x.to_string(), y.to_string()));
        }
        if g.same(x, y) {
            return Ok(PolyValue::Infinite);
        }
        minor_valuation(g.field(), &x.coords, &y.coords)
    }
}

/// The affine-coordinate valuation on the integral patch of an André plane.
#[derive(Clone, Copy, Debug, Default)]
pub struct AffineValuation;

impl<F: BaseField> Valuation<QuasiPlane<F>> for AffineValuation {
    fn value(&self, g: &QuasiPlane<F>, x: &QElem<F>, y: &QElem<F>) -> Result<PolyValue, ValuationError> {
        affine_valuation(g, x, y)
    }
}

pub fn affine_valuation<F: BaseField>(
    g: &QuasiPlane<F>,
    x: &QElem<F>,
    y: &QElem<F>,
) -> Result<PolyValue, ValuationError> {
    use QElem::*;
    for e in [x, y] {
        if !g.in_patch(e) {
            return Err(ValuationError::OutsidePatch(e.to_string()));
        }
    }
    if x.kind() != y.kind() {
        return Err(ValuationError::NotAdjacent(x.to_string(), y.to_string()));
    }
    if x == y {
        return Ok(PolyValue::Infinite);
    }
    let v = |a: &crate::hahn::HahnElement<F>, b: &crate::hahn::HahnElement<F>| PolyValue::from_option((a - b).valuation());
    let via = g.try_connect(x, y)?.expect("distinct elements of one kind are connected");
    let outside = |e: &QElem<F>| ValuationError::OutsidePatch(format!("{e} (joining {x} and {y})"));
    Ok(match (x, y) {
        (Affine(x1, y1), Affine(x2, y2)) => {
            if !g.in_patch(&via) {
                return Err(outside(&via));
            }
            if x1 == x2 {
                v(y1, y2)
            } else {
                v(x1, x2)
            }
        }
        (Slope(m1), Slope(m2)) => v(m1, m2),
        (Line(m1, k1), Line(m2, k2)) => {
            if !g.in_patch(&via) {
                return Err(outside(&via));
            }
            if m1 == m2 {
                v(k1, k2)
            } else {
                v(m1, m2)
            }
        }
        (Vertical(c1), Vertical(c2)) => v(c1, c2),
        _ => PolyValue::zero(),
    })
}

#[cfg(test)]
pub(crate) fn int_value(v: i64) -> PolyValue {
    PolyValue::Finite(crate::rational::int(v))
}
