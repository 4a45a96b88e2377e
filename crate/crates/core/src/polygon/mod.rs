//! Incidence geometries: finite generalized polygons and oracle-backed
//! projective planes over valued fields and André quasifields.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

mod finite;
pub mod io;
mod plane;
mod quasi;

pub use finite::{
    enumerate_finite_chains, generate_pg2, generate_w2, ordinary_polygon, verify_gp_axioms,
    Element, FiniteGeometry, GpReport, GpViolation,
};
pub use io::GeometryFile;
pub use plane::{HahnValued, PAdicRationals, PlaneElem, ProjectivePlane, ValuedField};
pub use quasi::{QElem, QuasiPlane};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("duplicate element id {0:?}")]
    DuplicateId(String),
    #[error("unknown {kind} id {id:?}")]
    UnknownId { kind: &'static str, id: String },
    #[error("geometry is empty")]
    Empty,
    #[error("{0:?} and {1:?} are not incident")]
    NotIncident(String, String),
    #[error(transparent)]
    Field(#[from] crate::gf::GfError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Point,
    Line,
}

impl Kind {
    pub fn dual(self) -> Kind {
        match self {
            Kind::Point => Kind::Line,
            Kind::Line => Kind::Point,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Point => "point",
            Kind::Line => "line",
        })
    }
}

/// A closed chain `x_1 I x_2 I … I x_{2n} I x_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain<E> {
    pub elements: Vec<E>,
    pub degenerate: bool,
}

impl<E: Clone> Chain<E> {
    /// Builds a chain and flags it degenerate when two entries coincide.
    pub fn new<G: Geometry<Elem = E> + ?Sized>(g: &G, elements: Vec<E>) -> Self {
        let degenerate = elements
            .iter()
            .enumerate()
            .any(|(i, x)| elements[i + 1..].iter().any(|y| g.same(x, y)));
        Chain { elements, degenerate }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Starts the chain `k` places later.
    pub fn rotated(&self, k: usize) -> Self {
        let mut elements = self.elements.clone();
        if !elements.is_empty() {
            let len = elements.len();
            elements.rotate_left(k % len);
        }
        Chain { elements, degenerate: self.degenerate }
    }

    /// `x'_k = x_{2n-k}`, which keeps `x_0 = x_{2n}` fixed.
    pub fn reversed(&self) -> Self {
        let len = self.elements.len();
        let elements = (1..=len).map(|k| self.elements[(2 * len - k - 1) % len].clone()).collect();
        Chain { elements, degenerate: self.degenerate }
    }
}

/// Uniform access to finite geometries and deterministic infinite oracles.
pub trait Geometry {
    type Elem: Clone + fmt::Debug;

    fn kind(&self, x: &Self::Elem) -> Kind;

    fn incident(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    fn same(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    fn sample_element<R: Rng + ?Sized>(&self, kind: Kind, rng: &mut R) -> Self::Elem;

    /// Distinct elements incident with `x`.
    fn sample_pencil<R: Rng + ?Sized>(
        &self,
        x: &Self::Elem,
        count: usize,
        rng: &mut R,
    ) -> Vec<Self::Elem>;

    /// The full pencil of `x`, when it is finite.
    fn full_pencil(&self, _x: &Self::Elem) -> Option<Vec<Self::Elem>> {
        None
    }

    /// An element incident with both `x` and `y` (join of two points, meet
    /// of two lines), when one exists.
    fn connect(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;

    /// Closed chains of length `2n`: exhaustive for finite geometries,
    /// seeded samples for oracles.
    fn closed_chains<R: Rng + ?Sized>(
        &self,
        n: usize,
        base: Option<&Self::Elem>,
        limit: usize,
        rng: &mut R,
    ) -> Vec<Chain<Self::Elem>>;

    fn describe(&self, x: &Self::Elem) -> String;

    /// Whether `x`, `y`, `z` lie in one pencil (collinear points or
    /// concurrent lines), repetitions allowed.
    fn in_common_pencil(&self, x: &Self::Elem, y: &Self::Elem, z: &Self::Elem) -> bool {
        let k = self.kind(x);
        if self.kind(y) != k || self.kind(z) != k {
            return false;
        }
        let (a, b, c) = if !self.same(x, y) {
            (x, y, z)
        } else if !self.same(x, z) {
            (x, z, y)
        } else {
            return true;
        };
        match self.connect(a, b) {
            Some(l) => self.incident(&l, c),
            None => false,
        }
    }
}

/// Free-function form of [`Geometry::closed_chains`] seeded from a `u64`.
pub fn enumerate_chains<G: Geometry>(
    g: &G,
    n: usize,
    base: Option<&G::Elem>,
    limit: usize,
    seed: u64,
) -> Vec<Chain<G::Elem>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    g.closed_chains(n, base, limit, &mut rng)
}

/// Three points in general position closed into a triangle via joins.
pub(crate) fn sample_triangles<G: Geometry, R: Rng + ?Sized>(
    g: &G,
    base: Option<&G::Elem>,
    limit: usize,
    rng: &mut R,
) -> Vec<Chain<G::Elem>> {
    let mut out = Vec::with_capacity(limit);
    let mut attempts = 0;
    while out.len() < limit && attempts < 20 * limit + 100 {
        attempts += 1;
        let p1 = match base {
            Some(b) if g.kind(b) == Kind::Point => b.clone(),
            _ => g.sample_element(Kind::Point, rng),
        };
        let p2 = g.sample_element(Kind::Point, rng);
        let p3 = g.sample_element(Kind::Point, rng);
        if g.same(&p1, &p2) || g.same(&p2, &p3) || g.same(&p1, &p3) {
            continue;
        }
        let Some(l12) = g.connect(&p1, &p2) else { continue };
        if g.incident(&p3, &l12) {
            continue;
        }
        let (Some(l23), Some(l31)) = (g.connect(&p2, &p3), g.connect(&p3, &p1)) else {
            continue;
        };
        if let Some(b) = base.filter(|b| g.kind(b) == Kind::Line) {
            if !g.same(b, &l12) {
                continue;
            }
        }
        out.push(Chain::new(g, vec![p1, l12, p2, l23, p3, l31]));
    }
    out
}
