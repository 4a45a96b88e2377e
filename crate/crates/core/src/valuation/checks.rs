use rand::Rng;
use serde::Serialize;

use super::{PolyValue, Valuation, ValuationError, WeightSequence};
use crate::cyclo::CycloNumber;
use crate::polygon::{Chain, Geometry};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct U1Report {
    pub element: String,
    pub pass: bool,
    /// A pair in the pencil with `u = 0`.
    pub witness: Option<(String, String)>,
    pub pairs_examined: usize,
    pub exhaustive: bool,
}

/// Searches the pencil of `x` for two elements at valuation 0; finite
/// pencils are searched exhaustively, infinite ones up to `budget` pairs.
pub fn check_u1<G, V, R>(g: &G, u: &V, x: &G::Elem, budget: usize, rng: &mut R) -> Result<U1Report, ValuationError>
where
    G: Geometry,
    V: Valuation<G>,
    R: Rng + ?Sized,
{
    let (pencil, exhaustive) = match g.full_pencil(x) {
        Some(p) => (p, true),
        None => {
            let mut size = 2;
            while size * (size - 1) / 2 < budget {
                size += 1;
            }
            (g.sample_pencil(x, size, rng), false)
        }
    };
    let mut examined = 0;
    for (i, a) in pencil.iter().enumerate() {
        for b in &pencil[i + 1..] {
            if !exhaustive && examined >= budget {
                break;
            }
            examined += 1;
            if u.value(g, a, b)?.is_zero() {
                return Ok(U1Report {
                    element: g.describe(x),
                    pass: true,
                    witness: Some((g.describe(a), g.describe(b))),
                    pairs_examined: examined,
                    exhaustive,
                });
            }
        }
    }
    Ok(U1Report { element: g.describe(x), pass: false, witness: None, pairs_examined: examined, exhaustive })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct U2Report {
    pub x: String,
    pub y: String,
    pub value: PolyValue,
    pub same: bool,
    pub pass: bool,
}

/// `u(x, y) = ∞` exactly when `x = y`.
pub fn check_u2<G: Geometry, V: Valuation<G>>(
    g: &G,
    u: &V,
    x: &G::Elem,
    y: &G::Elem,
) -> Result<U2Report, ValuationError> {
    let value = u.value(g, x, y)?;
    let same = g.same(x, y);
    let pass = (value == PolyValue::Infinite) == same;
    Ok(U2Report { x: g.describe(x), y: g.describe(y), value, same, pass })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct U3Report {
    pub elements: [String; 3],
    /// `u(x, y)`, `u(y, z)`, `u(x, z)`.
    pub values: [PolyValue; 3],
    pub pass: bool,
    /// The ordering `(a, b, c)` with `u(a,b) < u(b,c)` but `u(a,c) ≠ u(a,b)`.
    pub violation: Option<[String; 3]>,
}

fn adjacent<G: Geometry>(g: &G, a: &G::Elem, b: &G::Elem) -> bool {
    g.kind(a) == g.kind(b) && (g.same(a, b) || g.connect(a, b).is_some())
}

/// `u(x,y) < u(y,z) ⇒ u(x,z) = u(x,y)` over all six orderings of a
/// pairwise adjacent triple. Repetitions are allowed; `x = z` is the
/// symmetry test.
pub fn check_u3<G: Geometry, V: Valuation<G>>(
    g: &G,
    u: &V,
    x: &G::Elem,
    y: &G::Elem,
    z: &G::Elem,
) -> Result<U3Report, ValuationError> {
    let el = [x, y, z];
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        if !adjacent(g, el[i], el[j]) {
            return Err(ValuationError::NotAdjacent(g.describe(el[i]), g.describe(el[j])));
        }
    }
    let mut table: [[PolyValue; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| PolyValue::Infinite));
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                table[i][j] = u.value(g, el[i], el[j])?;
            }
        }
    }
    let mut violation = None;
    for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
        if table[a][b] < table[b][c] && table[a][c] != table[a][b] {
            violation = Some([g.describe(el[a]), g.describe(el[b]), g.describe(el[c])]);
            break;
        }
    }
    Ok(U3Report {
        elements: [g.describe(x), g.describe(y), g.describe(z)],
        values: [table[0][1].clone(), table[1][2].clone(), table[0][2].clone()],
        pass: violation.is_none(),
        violation,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct U4Report {
    pub chain: Vec<String>,
    pub degenerate: bool,
    pub pass: bool,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    /// `u(x_{i−1}, x_{i+1})` for `i = 1, …, 2n−1`, `i ≠ n`.
    pub values: Vec<PolyValue>,
}

/// The balance `Σ_{i<n} a_i u(x_{i−1},x_{i+1}) = Σ_{i>n} a_i u(x_{i−1},x_{i+1})`
/// with `x_0 = x_{2n}`, evaluated exactly.
pub fn check_u4<G: Geometry, V: Valuation<G>>(
    g: &G,
    u: &V,
    ws: &WeightSequence,
    chain: &Chain<G::Elem>,
) -> Result<U4Report, ValuationError> {
    let n = ws.n();
    let len = chain.len();
    if len != 2 * n {
        return Err(ValuationError::ChainLength { expected: 2 * n, got: len });
    }
    let x = |k: usize| &chain.elements[(k + len - 1) % len];
    for k in 1..=len {
        if !g.incident(x(k), x(k + 1)) {
            return Err(ValuationError::NotAdjacent(g.describe(x(k)), g.describe(x(k + 1))));
        }
    }
    let names = chain.elements.iter().map(|e| g.describe(e)).collect();
    if chain.degenerate {
        return Ok(U4Report { chain: names, degenerate: true, pass: true, lhs: None, rhs: None, values: vec![] });
    }
    let m = 4 * n as u32;
    let (mut lhs, mut rhs) = (CycloNumber::zero(m), CycloNumber::zero(m));
    let mut values = Vec::with_capacity(2 * n - 2);
    let mut finite = true;
    for i in (1..2 * n).filter(|&i| i != n) {
        let v = u.value(g, x(i - 1), x(i + 1))?;
        match v.finite() {
            Some(q) => {
                let term = ws.get(i).scale(q);
                if i < n {
                    lhs = &lhs + &term;
                } else {
                    rhs = &rhs + &term;
                }
            }
            None => finite = false,
        }
        values.push(v);
    }
    Ok(U4Report {
        chain: names,
        degenerate: false,
        pass: finite && lhs == rhs,
        lhs: Some(lhs.exact_string()),
        rhs: Some(rhs.exact_string()),
        values,
    })
}
