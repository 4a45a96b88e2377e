use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{Chain, Geometry, GeometryError, Kind};
use crate::gf::SmallField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub kind: Kind,
    pub index: usize,
}

impl Element {
    pub fn point(index: usize) -> Self {
        Element { kind: Kind::Point, index }
    }

    pub fn line(index: usize) -> Self {
        Element { kind: Kind::Line, index }
    }
}

/// A finite point-line geometry with incidence stored once and queried
/// from both sides.
#[derive(Clone, Debug)]
pub struct FiniteGeometry {
    point_ids: Vec<String>,
    line_ids: Vec<String>,
    point_lines: Vec<Vec<usize>>,
    line_points: Vec<Vec<usize>>,
    incidence: HashSet<(usize, usize)>,
}

impl FiniteGeometry {
    pub fn new<I>(points: Vec<String>, lines: Vec<String>, incidence: I) -> Result<Self, GeometryError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut seen = HashSet::new();
        for id in points.iter().chain(&lines) {
            if !seen.insert(id.as_str()) {
                return Err(GeometryError::DuplicateId(id.clone()));
            }
        }
        let p_index: HashMap<&str, usize> = points.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let l_index: HashMap<&str, usize> = lines.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut pairs = Vec::new();
        for (p, l) in incidence {
            let pi = *p_index
                .get(p.as_str())
                .ok_or_else(|| GeometryError::UnknownId { kind: "point", id: p.clone() })?;
            let li = *l_index
                .get(l.as_str())
                .ok_or_else(|| GeometryError::UnknownId { kind: "line", id: l.clone() })?;
            pairs.push((pi, li));
        }
        Ok(Self::from_indices(points, lines, pairs))
    }

    fn from_indices(points: Vec<String>, lines: Vec<String>, pairs: Vec<(usize, usize)>) -> Self {
        let mut point_lines = vec![Vec::new(); points.len()];
        let mut line_points = vec![Vec::new(); lines.len()];
        let mut incidence = HashSet::new();
        for (p, l) in pairs {
            if incidence.insert((p, l)) {
                point_lines[p].push(l);
                line_points[l].push(p);
            }
        }
        for v in point_lines.iter_mut().chain(line_points.iter_mut()) {
            v.sort_unstable();
        }
        FiniteGeometry { point_ids: points, line_ids: lines, point_lines, line_points, incidence }
    }

    pub fn num_points(&self) -> usize {
        self.point_ids.len()
    }

    pub fn num_lines(&self) -> usize {
        self.line_ids.len()
    }

    pub fn num_incidences(&self) -> usize {
        self.incidence.len()
    }

    pub fn points(&self) -> impl Iterator<Item = Element> {
        (0..self.num_points()).map(Element::point)
    }

    pub fn lines(&self) -> impl Iterator<Item = Element> {
        (0..self.num_lines()).map(Element::line)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        self.points().chain(self.lines())
    }

    pub fn id(&self, e: Element) -> &str {
        match e.kind {
            Kind::Point => &self.point_ids[e.index],
            Kind::Line => &self.line_ids[e.index],
        }
    }

    pub fn element_by_id(&self, id: &str) -> Option<Element> {
        if let Some(i) = self.point_ids.iter().position(|s| s == id) {
            return Some(Element::point(i));
        }
        self.line_ids.iter().position(|s| s == id).map(Element::line)
    }

    pub fn neighbors(&self, e: Element) -> impl Iterator<Item = Element> + '_ {
        let (list, kind) = match e.kind {
            Kind::Point => (&self.point_lines[e.index], Kind::Line),
            Kind::Line => (&self.line_points[e.index], Kind::Point),
        };
        list.iter().map(move |&index| Element { kind, index })
    }

    pub fn degree(&self, e: Element) -> usize {
        match e.kind {
            Kind::Point => self.point_lines[e.index].len(),
            Kind::Line => self.line_points[e.index].len(),
        }
    }

    pub fn is_incident(&self, a: Element, b: Element) -> bool {
        match (a.kind, b.kind) {
            (Kind::Point, Kind::Line) => self.incidence.contains(&(a.index, b.index)),
            (Kind::Line, Kind::Point) => self.incidence.contains(&(b.index, a.index)),
            _ => false,
        }
    }

    /// Incidences as `(point id, line id)` pairs, sorted by index.
    pub fn incidence_pairs(&self) -> Vec<(String, String)> {
        let mut pairs: Vec<_> = self.incidence.iter().copied().collect();
        pairs.sort_unstable();
        pairs
            .into_iter()
            .map(|(p, l)| (self.point_ids[p].clone(), self.line_ids[l].clone()))
            .collect()
    }

    pub fn point_ids(&self) -> &[String] {
        &self.point_ids
    }

    pub fn line_ids(&self) -> &[String] {
        &self.line_ids
    }

    /// Swaps the roles of points and lines.
    pub fn dual(&self) -> FiniteGeometry {
        let pairs = self.incidence.iter().map(|&(p, l)| (l, p)).collect();
        Self::from_indices(self.line_ids.clone(), self.point_ids.clone(), pairs)
    }

    pub fn without_incidence(&self, point: &str, line: &str) -> Result<FiniteGeometry, GeometryError> {
        let p = self.point_ids.iter().position(|s| s == point);
        let l = self.line_ids.iter().position(|s| s == line);
        let (Some(p), Some(l)) = (p, l) else {
            return Err(GeometryError::NotIncident(point.into(), line.into()));
        };
        if !self.incidence.contains(&(p, l)) {
            return Err(GeometryError::NotIncident(point.into(), line.into()));
        }
        let pairs = self.incidence.iter().copied().filter(|&pl| pl != (p, l)).collect();
        Ok(Self::from_indices(self.point_ids.clone(), self.line_ids.clone(), pairs))
    }

    fn vertex(&self, e: Element) -> usize {
        match e.kind {
            Kind::Point => e.index,
            Kind::Line => self.num_points() + e.index,
        }
    }

    fn element_of(&self, v: usize) -> Element {
        if v < self.num_points() {
            Element::point(v)
        } else {
            Element::line(v - self.num_points())
        }
    }

    /// Adjacency lists of the bipartite incidence graph.
    fn graph(&self) -> Vec<Vec<usize>> {
        let np = self.num_points();
        let mut adj: Vec<Vec<usize>> = self.point_lines.iter().map(|ls| ls.iter().map(|l| np + l).collect()).collect();
        adj.extend(self.line_points.iter().cloned());
        adj
    }
}

impl Geometry for FiniteGeometry {
    type Elem = Element;

    fn kind(&self, x: &Element) -> Kind {
        x.kind
    }

    fn incident(&self, x: &Element, y: &Element) -> bool {
        self.is_incident(*x, *y)
    }

    fn same(&self, x: &Element, y: &Element) -> bool {
        x == y
    }

    fn sample_element<R: Rng + ?Sized>(&self, kind: Kind, rng: &mut R) -> Element {
        match kind {
            Kind::Point => Element::point(rng.gen_range(0..self.num_points())),
            Kind::Line => Element::line(rng.gen_range(0..self.num_lines())),
        }
    }

    fn sample_pencil<R: Rng + ?Sized>(&self, x: &Element, count: usize, rng: &mut R) -> Vec<Element> {
        let mut all: Vec<Element> = self.neighbors(*x).collect();
        all.shuffle(rng);
        all.truncate(count);
        all
    }

    fn full_pencil(&self, x: &Element) -> Option<Vec<Element>> {
        Some(self.neighbors(*x).collect())
    }

    fn connect(&self, x: &Element, y: &Element) -> Option<Element> {
        if x.kind != y.kind || x == y {
            return None;
        }
        self.neighbors(*x).find(|z| self.is_incident(*z, *y))
    }

    fn closed_chains<R: Rng + ?Sized>(
        &self,
        n: usize,
        base: Option<&Element>,
        limit: usize,
        _rng: &mut R,
    ) -> Vec<Chain<Element>> {
        enumerate_finite_chains(self, n, base.copied(), limit)
    }

    fn describe(&self, x: &Element) -> String {
        self.id(*x).to_string()
    }
}

/// Every closed walk of length `2n`, once per rotation/reflection class,
/// in a deterministic order and truncated at `limit`.
pub fn enumerate_finite_chains(
    g: &FiniteGeometry,
    n: usize,
    base: Option<Element>,
    limit: usize,
) -> Vec<Chain<Element>> {
    let adj = g.graph();
    let len = 2 * n;
    let base_v = base.map(|b| g.vertex(b));
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(len);
    for start in 0..adj.len() {
        if out.len() >= limit {
            break;
        }
        path.clear();
        path.push(start);
        walk(&adj, len, base_v, limit, &mut path, &mut out);
    }
    out.into_iter()
        .map(|vs| Chain::new(g, vs.into_iter().map(|v| g.element_of(v)).collect()))
        .collect()
}

fn walk(
    adj: &[Vec<usize>],
    len: usize,
    base: Option<usize>,
    limit: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() >= limit {
        return;
    }
    let start = path[0];
    let last = *path.last().expect("path is nonempty");
    if path.len() == len {
        if adj[last].contains(&start)
            && base.map_or(true, |b| path.contains(&b))
            && is_canonical(path)
        {
            out.push(path.clone());
        }
        return;
    }
    for &next in &adj[last] {
        if next < start {
            continue;
        }
        path.push(next);
        walk(adj, len, base, limit, path, out);
        path.pop();
    }
}

/// A cyclic sequence is canonical when it is the lexicographic minimum of
/// all its rotations and reflections.
fn is_canonical(seq: &[usize]) -> bool {
    let len = seq.len();
    for shift in 0..len {
        for reflect in [false, true] {
            let image = (0..len).map(|i| {
                if reflect {
                    seq[(shift + len - i) % len]
                } else {
                    seq[(shift + i) % len]
                }
            });
            match image.cmp(seq.iter().copied()) {
                std::cmp::Ordering::Less => return false,
                _ => continue,
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom")]
pub enum GpViolation {
    /// An element with fewer than two neighbours.
    GP1 { element: String, degree: usize },
    /// A pair further apart than `n` (`distance: None` when disconnected).
    GP2 { from: String, to: String, distance: Option<usize> },
    /// A pair at distance `< n` joined by two different geodesics.
    GP3 { from: String, to: String, distance: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct GpReport {
    pub n: usize,
    pub pass: bool,
    pub points: usize,
    pub lines: usize,
    pub incidences: usize,
    pub min_degree: usize,
    pub diameter: Option<usize>,
    pub girth: Option<usize>,
    pub violation: Option<GpViolation>,
}

/// Checks the generalized `n`-gon axioms on the incidence graph: minimum
/// degree two, diameter at most `n`, and unique geodesics below distance `n`.
pub fn verify_gp_axioms(g: &FiniteGeometry, n: usize) -> GpReport {
    let adj = g.graph();
    let nv = adj.len();
    let min_degree = adj.iter().map(Vec::len).min().unwrap_or(0);
    let mut violation = None;

    if let Some(v) = (0..nv).find(|&v| adj[v].len() < 2) {
        violation = Some(GpViolation::GP1 { element: g.id(g.element_of(v)).into(), degree: adj[v].len() });
    }

    let mut diameter = Some(0);
    let mut girth: Option<usize> = None;
    for s in 0..nv {
        let (dist, paths, cycle) = bfs(&adj, s);
        if let Some(c) = cycle {
            girth = Some(girth.map_or(c, |g0| g0.min(c)));
        }
        for t in 0..nv {
            match dist[t] {
                None => {
                    diameter = None;
                    if violation.is_none() {
                        violation = Some(GpViolation::GP2 {
                            from: g.id(g.element_of(s)).into(),
                            to: g.id(g.element_of(t)).into(),
                            distance: None,
                        });
                    }
                }
                Some(d) => {
                    if let Some(dm) = diameter.as_mut() {
                        *dm = (*dm).max(d);
                    }
                    if violation.is_none() && d > n {
                        violation = Some(GpViolation::GP2 {
                            from: g.id(g.element_of(s)).into(),
                            to: g.id(g.element_of(t)).into(),
                            distance: Some(d),
                        });
                    }
                    if violation.is_none() && d < n && paths[t] > 1 {
                        violation = Some(GpViolation::GP3 {
                            from: g.id(g.element_of(s)).into(),
                            to: g.id(g.element_of(t)).into(),
                            distance: d,
                        });
                    }
                }
            }
        }
    }
    if nv == 0 {
        diameter = None;
    }
    GpReport {
        n,
        pass: violation.is_none() && nv > 0,
        points: g.num_points(),
        lines: g.num_lines(),
        incidences: g.num_incidences(),
        min_degree,
        diameter,
        girth,
        violation,
    }
}

/// Distances, geodesic counts (saturating at 2) and the shortest cycle
/// through a BFS tree edge conflict.
fn bfs(adj: &[Vec<usize>], s: usize) -> (Vec<Option<usize>>, Vec<u8>, Option<usize>) {
    let mut dist = vec![None; adj.len()];
    let mut paths = vec![0u8; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    let mut cycle = None;
    dist[s] = Some(0);
    paths[s] = 1;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have distances");
        for &w in &adj[u] {
            match dist[w] {
                None => {
                    dist[w] = Some(du + 1);
                    paths[w] = paths[u];
                    parent[w] = u;
                    queue.push_back(w);
                }
                Some(dw) => {
                    if dw == du + 1 {
                        paths[w] = paths[w].saturating_add(paths[u]).min(2);
                    }
                    if parent[u] != w {
                        let c = du + dw + 1;
                        cycle = Some(cycle.map_or(c, |c0: usize| c0.min(c)));
                    }
                }
            }
        }
    }
    (dist, paths, cycle)
}

/// The Desarguesian plane `PG(2, q)`.
pub fn generate_pg2(q: u32) -> Result<FiniteGeometry, GeometryError> {
    let field = SmallField::new(q)?;
    let triples = field.normalized_triples();
    let fmt = |prefix: char, t: &[u32; 3]| format!("{prefix}[{},{},{}]", t[0], t[1], t[2]);
    let points = triples.iter().map(|t| fmt('p', t)).collect();
    let lines = triples.iter().map(|t| fmt('l', t)).collect();
    let mut pairs = Vec::new();
    for (i, p) in triples.iter().enumerate() {
        for (j, l) in triples.iter().enumerate() {
            if field.dot(p, l) == 0 {
                pairs.push((i, j));
            }
        }
    }
    Ok(FiniteGeometry::from_indices(points, lines, pairs))
}

/// The symplectic quadrangle `W(2)`: points of `PG(3, 2)` and the lines
/// totally isotropic for `x0y1 + x1y0 + x2y3 + x3y2`.
pub fn generate_w2() -> FiniteGeometry {
    let bits = |v: u32| [(v >> 3) & 1, (v >> 2) & 1, (v >> 1) & 1, v & 1];
    let form = |a: u32, b: u32| {
        let (x, y) = (bits(a), bits(b));
        (x[0] * y[1] + x[1] * y[0] + x[2] * y[3] + x[3] * y[2]) % 2
    };
    let mut lines: Vec<[u32; 3]> = Vec::new();
    for a in 1..16u32 {
        for b in (a + 1)..16 {
            if form(a, b) == 0 {
                let mut l = [a, b, a ^ b];
                l.sort_unstable();
                if !lines.contains(&l) {
                    lines.push(l);
                }
            }
        }
    }
    lines.sort_unstable();
    let fmt_vec = |v: u32| bits(v).iter().map(u32::to_string).collect::<String>();
    let points = (1..16).map(|v| format!("p{}", fmt_vec(v))).collect();
    let line_ids = lines
        .iter()
        .map(|l| format!("l{{{}}}", l.iter().map(|&v| fmt_vec(v)).collect::<Vec<_>>().join(",")))
        .collect();
    let pairs = lines
        .iter()
        .enumerate()
        .flat_map(|(j, l)| l.iter().map(move |&v| (v as usize - 1, j)))
        .collect();
    FiniteGeometry::from_indices(points, line_ids, pairs)
}

/// The ordinary `k`-gon: points `p_i` and lines `l_i = p_i p_{i+1}`.
pub fn ordinary_polygon(k: usize) -> FiniteGeometry {
    let points = (0..k).map(|i| format!("p{i}")).collect();
    let lines = (0..k).map(|i| format!("l{i}")).collect();
    let pairs = (0..k).flat_map(|i| [(i, i), ((i + 1) % k, i)]).collect();
    FiniteGeometry::from_indices(points, lines, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg2_counts() {
        let fano = generate_pg2(2).unwrap();
        assert_eq!((fano.num_points(), fano.num_lines(), fano.num_incidences()), (7, 7, 21));
        assert!(fano.lines().all(|l| fano.degree(l) == 3));
        let pg3 = generate_pg2(3).unwrap();
        assert_eq!((pg3.num_points(), pg3.num_lines()), (13, 13));
        for q in [4, 5, 7, 8, 9] {
            let g = generate_pg2(q).unwrap();
            let size = (q * q + q + 1) as usize;
            assert_eq!(g.num_points(), size);
            assert_eq!(g.num_incidences(), size * (q as usize + 1));
        }
        assert!(generate_pg2(6).is_err());
    }

    #[test]
    fn gp_checks_on_fixtures() {
        let fano = generate_pg2(2).unwrap();
        let r = verify_gp_axioms(&fano, 3);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.girth, Some(6));
        assert_eq!(r.diameter, Some(3));
        assert!(verify_gp_axioms(&ordinary_polygon(5), 5).pass);
        let broken = fano.without_incidence(fano.point_ids()[0].as_str(), fano.line_ids()[fano.neighbors(Element::point(0)).next().unwrap().index].as_str()).unwrap();
        let r = verify_gp_axioms(&broken, 3);
        assert!(!r.pass);
        assert!(matches!(r.violation, Some(GpViolation::GP2 { .. }) | Some(GpViolation::GP1 { .. })));
    }

    #[test]
    fn w2_is_a_quadrangle() {
        let w = generate_w2();
        assert_eq!((w.num_points(), w.num_lines()), (15, 15));
        assert!(w.elements().all(|e| w.degree(e) == 3));
        assert!(verify_gp_axioms(&w, 4).pass);
        let r = verify_gp_axioms(&w, 3);
        assert!(!r.pass);
        assert_eq!(r.girth, Some(8));
    }

    #[test]
    fn digon_and_gp1() {
        // every point on every line: a generalized 2-gon
        let g = FiniteGeometry::new(
            vec!["a".into(), "b".into()],
            vec!["L".into(), "M".into()],
            [("a", "L"), ("a", "M"), ("b", "L"), ("b", "M")].map(|(p, l)| (p.to_string(), l.to_string())),
        )
        .unwrap();
        assert!(verify_gp_axioms(&g, 2).pass);
        let lonely = FiniteGeometry::new(vec!["a".into()], vec!["L".into()], [("a".to_string(), "L".to_string())]).unwrap();
        assert!(matches!(verify_gp_axioms(&lonely, 2).violation, Some(GpViolation::GP1 { .. })));
    }

    #[test]
    fn construction_errors() {
        let dup = FiniteGeometry::new(vec!["x".into()], vec!["x".into()], []);
        assert_eq!(dup.err(), Some(GeometryError::DuplicateId("x".into())));
        let unknown = FiniteGeometry::new(vec!["x".into()], vec!["y".into()], [("x".to_string(), "z".to_string())]);
        assert!(matches!(unknown, Err(GeometryError::UnknownId { kind: "line", .. })));
    }

    #[test]
    fn ordinary_polygon_has_one_apartment() {
        for k in 3..=7 {
            let g = ordinary_polygon(k);
            let chains = enumerate_finite_chains(&g, k, None, usize::MAX);
            assert_eq!(chains.iter().filter(|c| !c.degenerate).count(), 1, "k = {k}");
            assert!(chains.iter().any(|c| c.degenerate));
        }
    }

    #[test]
    fn canonical_form_is_unique_per_class() {
        assert!(is_canonical(&[0, 1, 2, 3]));
        assert!(!is_canonical(&[0, 3, 2, 1]) || !is_canonical(&[0, 1, 2, 3]));
        assert!(!is_canonical(&[1, 2, 3, 0]));
    }

    #[test]
    fn dual_round_trip() {
        let w = generate_w2();
        let dd = w.dual().dual();
        assert_eq!(dd.point_ids(), w.point_ids());
        assert_eq!(dd.incidence_pairs(), w.incidence_pairs());
        assert!(verify_gp_axioms(&w.dual(), 4).pass);
    }
}
