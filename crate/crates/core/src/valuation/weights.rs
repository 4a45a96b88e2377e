use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::ValuationError;
use crate::cyclo::CycloNumber;
use crate::polygon::io::{Scalar, WeightsSpec};
use crate::rational::{self, parse_rational, Rational};

/// `(a_1, …, a_{n−1}, a_{n+1}, …, a_{2n−1})`, stored in `Q(ζ_{4n})`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSequence {
    n: usize,
    entries: Vec<CycloNumber>,
}

impl WeightSequence {
    pub fn new(n: usize, entries: Vec<CycloNumber>) -> Result<Self, ValuationError> {
        if n < 2 {
            return Err(ValuationError::Weights(format!("n = {n} is too small")));
        }
        if entries.len() != 2 * n - 2 {
            return Err(ValuationError::Weights(format!(
                "expected {} entries for n = {n}, got {}",
                2 * n - 2,
                entries.len()
            )));
        }
        let m = 4 * n as u32;
        for (k, e) in entries.iter().enumerate() {
            if e.modulus_index() != m {
                return Err(ValuationError::Weights(format!("entry {k} is not in Q(z{m})")));
            }
            if e.signum() != Ok(Ordering::Greater) {
                return Err(ValuationError::Weights(format!("entry {} is not positive", e.exact_string())));
            }
        }
        Ok(WeightSequence { n, entries })
    }

    pub fn from_rationals(n: usize, entries: &[Rational]) -> Result<Self, ValuationError> {
        let m = 4 * n as u32;
        Self::new(n, entries.iter().map(|q| CycloNumber::from_rational(m, q.clone())).collect())
    }

    pub fn from_integers(n: usize, entries: &[u64]) -> Result<Self, ValuationError> {
        let qs: Vec<_> = entries.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect();
        Self::from_rationals(n, &qs)
    }

    /// `"euclidean"` (needs `n`) or a list of rationals whose length fixes `n`.
    pub fn from_spec(spec: &WeightsSpec, n: Option<usize>) -> Result<Self, ValuationError> {
        match spec {
            WeightsSpec::Named(name) if name == "euclidean" => match n {
                Some(n) if n >= 2 => Ok(euclidean_weights(n)),
                _ => Err(ValuationError::Weights("\"euclidean\" needs n".into())),
            },
            WeightsSpec::Named(name) => Err(ValuationError::Weights(format!("unknown weights {name:?}"))),
            WeightsSpec::List(items) => {
                if items.len() % 2 != 0 || items.is_empty() {
                    return Err(ValuationError::Weights(format!("odd or empty length {}", items.len())));
                }
                let implied = items.len() / 2 + 1;
                if let Some(n) = n.filter(|&n| n != implied) {
                    return Err(ValuationError::Weights(format!("{} entries do not fit n = {n}", items.len())));
                }
                let qs = items
                    .iter()
                    .map(|s| match s {
                        Scalar::Int(v) => Ok(rational::int(*v)),
                        Scalar::Str(s) => {
                            parse_rational(s).ok_or_else(|| ValuationError::Weights(format!("invalid entry {s:?}")))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Self::from_rationals(implied, &qs)
            }
        }
    }

    /// Parses a comma-separated list such as `1,3,2,3,1,1,3,2,3,1`.
    pub fn parse_list(text: &str) -> Result<Self, ValuationError> {
        let items = text.split(',').map(|s| Scalar::Str(s.trim().to_string())).collect();
        Self::from_spec(&WeightsSpec::List(items), None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[CycloNumber] {
        &self.entries
    }

    /// `a_i` for `1 ≤ i ≤ 2n − 1`, `i ≠ n`.
    pub fn get(&self, i: usize) -> &CycloNumber {
        assert!(i >= 1 && i < 2 * self.n && i != self.n, "no weight a_{i}");
        if i < self.n {
            &self.entries[i - 1]
        } else {
            &self.entries[i - 2]
        }
    }

    /// `a'_i = a_{2n−i}`, the weights matching a reversed chain.
    pub fn reversed(&self) -> Self {
        WeightSequence { n: self.n, entries: self.entries.iter().rev().cloned().collect() }
    }

    pub fn scaled(&self, q: &Rational) -> Result<Self, ValuationError> {
        Self::new(self.n, self.entries.iter().map(|e| e.scale(q)).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }

    pub fn to_integers(&self) -> Option<Vec<u64>> {
        self.entries
            .iter()
            .map(|e| e.as_rational().filter(rational::is_integer).and_then(|q| q.to_integer().to_u64()))
            .collect()
    }

    pub fn exact_strings(&self) -> Vec<String> {
        self.entries.iter().map(CycloNumber::exact_string).collect()
    }

    pub fn floats(&self) -> Vec<f64> {
        self.entries.iter().map(CycloNumber::to_f64).collect()
    }

    /// Entries as rationals relative to `a_1`, scaled to coprime integers.
    /// `None` when some ratio is irrational.
    pub fn integerized(&self) -> Option<Vec<u64>> {
        let first = &self.entries[0];
        let ratios: Vec<Rational> = self
            .entries
            .iter()
            .map(|e| e.try_div(first).ok()?.as_rational())
            .collect::<Option<_>>()?;
        let lcm = ratios.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = ratios.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        ints.iter().map(|v| (v / &gcd).to_u64()).collect()
    }
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.exact_strings().join(", "))
    }
}

/// `a_i = |sin(iπ/n)|`.
pub fn euclidean_weights(n: usize) -> WeightSequence {
    assert!(n >= 2, "weight sequences need n >= 2");
    let entries = (1..2 * n)
        .filter(|&i| i != n)
        .map(|i| {
            let s = CycloNumber::sin_pi_frac(i as i64, n as u32);
            if i < n {
                s
            } else {
                -s
            }
        })
        .collect();
    WeightSequence::new(n, entries).expect("|sin(iπ/n)| is positive off i = n")
}

#[derive(Clone, Debug)]
pub struct Rescaled {
    pub n: usize,
    /// Divisor applied to one parity class of the Euclidean weights.
    pub factor: CycloNumber,
    /// From dividing the even-indexed entries, then the odd-indexed ones.
    pub sequences: [Vec<u64>; 2],
}

/// Turns the Euclidean weights for `n ∈ {3, 4, 6}` into the two integer
/// sequences of the discrete case.
pub fn rescale_discrete(n: usize) -> Result<Rescaled, ValuationError> {
    let m = 4 * n as u32;
    let factor = match n {
        3 => CycloNumber::one(m),
        4 => CycloNumber::sqrt_small(m, 2).expect("8 divides 16"),
        6 => CycloNumber::sqrt_small(m, 3).expect("12 divides 24"),
        _ => return Err(ValuationError::NotDiscrete(n)),
    };
    let base = euclidean_weights(n);
    let divide = |parity: usize| {
        let entries = (1..2 * n)
            .filter(|&i| i != n)
            .map(|i| {
                let a = base.get(i);
                if i % 2 == parity {
                    a.try_div(&factor).expect("nonzero factor")
                } else {
                    a.clone()
                }
            })
            .collect();
        WeightSequence::new(n, entries)
            .expect("rescaling keeps entries positive")
            .integerized()
            .expect("discrete rescaling has rational ratios")
    };
    let sequences = [divide(0), divide(1)];
    Ok(Rescaled { n, factor, sequences })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WsLabel {
    WS3,
    WS4a,
    WS4b,
    WS6a,
    WS6b,
    Other,
}

impl fmt::Display for WsLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WsLabel::WS3 => "WS3",
            WsLabel::WS4a => "WS4-a",
            WsLabel::WS4b => "WS4-b",
            WsLabel::WS6a => "WS6-a",
            WsLabel::WS6b => "WS6-b",
            WsLabel::Other => "other",
        })
    }
}

impl Serialize for WsLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

const TABLES: [(WsLabel, &[u64]); 5] = [
    (WsLabel::WS3, &[1, 1, 1, 1]),
    (WsLabel::WS4a, &[1, 1, 1, 1, 1, 1]),
    (WsLabel::WS4b, &[1, 2, 1, 1, 2, 1]),
    (WsLabel::WS6a, &[1, 1, 2, 1, 1, 1, 1, 2, 1, 1]),
    (WsLabel::WS6b, &[1, 3, 2, 3, 1, 1, 3, 2, 3, 1]),
];

/// Looks an integer sequence up in the discrete tables, also accepting the
/// two halves swapped. No rescaling is attempted.
pub fn classify(entries: &[u64]) -> WsLabel {
    let half = entries.len() / 2;
    let swapped: Vec<u64> = entries[half..].iter().chain(&entries[..half]).copied().collect();
    TABLES
        .iter()
        .find(|(_, t)| *t == entries || *t == swapped.as_slice())
        .map_or(WsLabel::Other, |(label, _)| *label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn euclidean_values() {
        let w = euclidean_weights(4);
        let s = w.exact_strings();
        assert_eq!(s, ["√2/2", "1", "√2/2", "√2/2", "1", "√2/2"]);
        let w3 = euclidean_weights(3);
        assert!(w3.entries().windows(2).all(|p| p[0] == p[1]));
        assert!(w3.is_symmetric());
        assert_eq!(w3.get(4), w3.get(2));
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(WeightSequence::from_rationals(3, &[rat(1, 1), rat(0, 1), rat(1, 1), rat(1, 1)]).is_err());
        assert!(WeightSequence::from_integers(3, &[1, 1, 1]).is_err());
        assert!(WeightSequence::parse_list("1,1,x,1").is_err());
        assert_eq!(WeightSequence::parse_list("1,2,1,1,2,1").unwrap().n(), 4);
    }

    #[test]
    fn rescaling_tables() {
        assert_eq!(rescale_discrete(3).unwrap().sequences, [vec![1, 1, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(rescale_discrete(4).unwrap().sequences, [vec![1; 6], vec![1, 2, 1, 1, 2, 1]]);
        let r6 = rescale_discrete(6).unwrap();
        assert_eq!(r6.sequences[0], [1, 1, 2, 1, 1, 1, 1, 2, 1, 1]);
        assert_eq!(r6.sequences[1], [1, 3, 2, 3, 1, 1, 3, 2, 3, 1]);
        assert_eq!(r6.factor.exact_string(), "√3");
        assert!(matches!(rescale_discrete(5), Err(ValuationError::NotDiscrete(5))));
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&[1, 1, 1, 1]), WsLabel::WS3);
        assert_eq!(classify(&[1, 3, 2, 3, 1, 1, 3, 2, 3, 1]), WsLabel::WS6b);
        assert_eq!(classify(&[2, 2, 2, 2]), WsLabel::Other);
        assert_eq!(classify(&[1, 2, 1, 1, 2, 1]).to_string(), "WS4-b");
        assert_eq!(classify(&[]), WsLabel::Other);
    }

    #[test]
    fn integerized_scaling() {
        let w = euclidean_weights(3).scaled(&rat(7, 3)).unwrap();
        assert_eq!(w.integerized(), Some(vec![1, 1, 1, 1]));
        assert_eq!(euclidean_weights(4).integerized(), None);
        assert_eq!(WeightSequence::from_integers(3, &[2, 4, 2, 6]).unwrap().integerized(), Some(vec![1, 2, 1, 3]));
    }
}
