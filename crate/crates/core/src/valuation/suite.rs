use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::{
    check_u1, check_u2, check_u3, check_u4, TableValuation, U1Report, U2Report, U3Report, U4Report, Valuation,
    ValuationError, WeightSequence,
};
use crate::polygon::{enumerate_finite_chains, FiniteGeometry, Geometry, Kind};

/// Counts for one axiom plus the first failing witness.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AxiomTally {
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<Value>,
}

impl AxiomTally {
    fn record<T: Serialize + Verdict>(&mut self, result: Result<T, ValuationError>) {
        self.checked += 1;
        let witness = match result {
            Ok(r) if r.passed() => return,
            Ok(r) => serde_json::to_value(r).expect("reports serialize"),
            Err(e) => json!({ "error": e.to_string() }),
        };
        self.failed += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(witness);
        }
    }

    pub fn pass(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteSuiteReport {
    pub n: usize,
    pub weights: Vec<String>,
    pub pass: bool,
    pub u1: AxiomTally,
    pub u2: AxiomTally,
    pub u3: AxiomTally,
    pub u4: AxiomTally,
    pub chains: usize,
    pub degenerate_chains: usize,
    pub chain_limit_reached: bool,
}

/// Exhaustive (U1)–(U4) over a finite geometry. (U3) runs over every
/// multiset of three elements of each pencil; (U4) over every rotation and
/// reversal of every closed chain, up to `chain_limit` chain classes.
pub fn run_finite_suite(
    g: &FiniteGeometry,
    u: &TableValuation,
    ws: &WeightSequence,
    chain_limit: usize,
) -> FiniteSuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut u1, mut u2, mut u3, mut u4) = <(AxiomTally, AxiomTally, AxiomTally, AxiomTally)>::default();
    for x in g.elements() {
        u1.record(check_u1(g, u, &x, usize::MAX, &mut rng));
        let pencil: Vec<_> = g.neighbors(x).collect();
        for a in &pencil {
            for b in &pencil {
                u2.record(check_u2(g, u, a, b));
            }
        }
        for i in 0..pencil.len() {
            for j in i..pencil.len() {
                for k in j..pencil.len() {
                    if i != k {
                        u3.record(check_u3(g, u, &pencil[i], &pencil[j], &pencil[k]));
                    }
                }
            }
        }
    }
    let n = ws.n();
    let chains = enumerate_finite_chains(g, n, None, chain_limit);
    let mut degenerate = 0;
    for c in &chains {
        if c.degenerate {
            degenerate += 1;
        }
        for variant in [c.clone(), c.reversed()] {
            for r in 0..variant.len() {
                u4.record(check_u4(g, u, ws, &variant.rotated(r)));
            }
        }
    }
    let tallies: [&AxiomTally; 4] = [&u1, &u2, &u3, &u4];
    FiniteSuiteReport {
        n,
        weights: ws.exact_strings(),
        pass: tallies.iter().all(|t| t.pass()),
        chain_limit_reached: chains.len() >= chain_limit,
        chains: chains.len(),
        degenerate_chains: degenerate,
        u1,
        u2,
        u3,
        u4,
    }
}

trait Verdict {
    fn passed(&self) -> bool;
}

macro_rules! verdict {
    ($($t:ty),*) => {
        $(impl Verdict for $t {
            fn passed(&self) -> bool {
                self.pass
            }
        })*
    };
}

verdict!(U1Report, U2Report, U3Report, U4Report);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneSuiteConfig {
    pub seed: u64,
    /// Triples for (U2) and (U3), each drawn from one sampled pencil.
    pub triples: usize,
    /// Elements whose pencils are searched for (U1).
    pub u1_elements: usize,
    pub u1_budget: usize,
    /// Triangles for (U4); each is checked from a point and from a line.
    pub triangles: usize,
}

impl PlaneSuiteConfig {
    /// The layout used by the command line: `samples` triples and
    /// triangles, a tenth as many (U1) pencils with a budget of 1000 pairs.
    pub fn from_samples(samples: usize, seed: u64) -> Self {
        PlaneSuiteConfig { seed, triples: samples, u1_elements: (samples / 10).max(1), u1_budget: 1000, triangles: samples }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneSuiteReport {
    pub geometry: String,
    pub config: PlaneSuiteConfig,
    pub weights: Vec<String>,
    pub pass: bool,
    pub u1: AxiomTally,
    pub u2: AxiomTally,
    pub u3: AxiomTally,
    pub u4: AxiomTally,
    pub triangles_sampled: usize,
}

fn stream(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

fn alternate(i: usize) -> Kind {
    if i % 2 == 0 {
        Kind::Line
    } else {
        Kind::Point
    }
}

/// Seeded (U1)–(U4) sampling on an oracle geometry. Identical inputs give
/// identical reports.
pub fn run_plane_suite<G, V>(g: &G, u: &V, ws: &WeightSequence, name: &str, config: &PlaneSuiteConfig) -> PlaneSuiteReport
where
    G: Geometry,
    V: Valuation<G>,
{
    let (mut u1, mut u2, mut u3, mut u4) = <(AxiomTally, AxiomTally, AxiomTally, AxiomTally)>::default();

    let mut rng = stream(config.seed, 1);
    for i in 0..config.triples {
        let x = g.sample_element(alternate(i), &mut rng);
        let pencil = g.sample_pencil(&x, 5, &mut rng);
        let mut pick = || pencil[rng.gen_range(0..pencil.len())].clone();
        let (a, b, c) = (pick(), pick(), pick());
        for (p, q) in [(&a, &b), (&b, &c), (&a, &c)] {
            u2.record(check_u2(g, u, p, q));
        }
        u3.record(check_u3(g, u, &a, &b, &c));
    }

    let mut rng = stream(config.seed, 2);
    for i in 0..config.u1_elements {
        let x = g.sample_element(alternate(i), &mut rng);
        u1.record(check_u1(g, u, &x, config.u1_budget, &mut rng));
    }

    let mut rng = stream(config.seed, 3);
    let chains = g.closed_chains(ws.n(), None, config.triangles, &mut rng);
    for c in &chains {
        for r in [0, 1] {
            u4.record(check_u4(g, u, ws, &c.rotated(r)));
        }
    }
    let pass = [&u1, &u2, &u3, &u4].iter().all(|t| t.pass()) && chains.len() == config.triangles;
    PlaneSuiteReport {
        geometry: name.to_string(),
        config: config.clone(),
        weights: ws.exact_strings(),
        pass,
        u1,
        u2,
        u3,
        u4,
        triangles_sampled: chains.len(),
    }
}
