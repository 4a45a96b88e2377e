//! Table-driven `GF(q)` for small prime powers, used to build finite
//! projective planes.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a supported prime power (need q <= 13)")]
    Unsupported(u32),
}

/// Elements are `0..q`, read as base-`p` digit vectors of a polynomial
/// modulo a fixed irreducible of degree `k`.
#[derive(Clone, Debug)]
pub struct SmallField {
    q: u32,
    p: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k).map(|i| x / p.pow(i) % p).collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Monic irreducible of degree `k ≤ 3` over `F_p` (no roots suffices there).
fn irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    for low in 0..p.pow(k) {
        let mut f = digits(low, p, k);
        f.push(1);
        let has_root = (0..p).any(|x| f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0);
        if !has_root {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl SmallField {
    pub fn new(q: u32) -> Result<Self, GfError> {
        let (p, k) = prime_power(q).filter(|_| q <= 13).ok_or(GfError::Unsupported(q))?;
        let modulus = irreducible(p, k);
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum, p);
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for i in (k as usize..prod.len()).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    for (j, m) in modulus.iter().enumerate() {
                        let idx = i - k as usize + j;
                        prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                    }
                }
                mul[(a * q + b) as usize] = undigits(&prod[..k as usize], p);
            }
        }
        Ok(SmallField { q, p, add, mul })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn dot(&self, x: &[u32; 3], y: &[u32; 3]) -> u32 {
        (0..3).fold(0, |acc, i| self.add(acc, self.mul(x[i], y[i])))
    }

    /// Nonzero triples whose first nonzero entry is 1, one per projective point.
    pub fn normalized_triples(&self) -> Vec<[u32; 3]> {
        let q = self.q;
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let v = [a, b, c];
                    if v.iter().find(|&&x| x != 0) == Some(&1) {
                        out.push(v);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supported_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13] {
            assert!(SmallField::new(q).is_ok(), "q = {q}");
        }
        for q in [0, 1, 6, 10, 12, 16] {
            assert_eq!(SmallField::new(q).err(), Some(GfError::Unsupported(q)));
        }
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for q in [4, 8, 9, 13] {
            let f = SmallField::new(q).unwrap();
            for a in 1..q {
                assert_eq!((0..q).filter(|&b| f.mul(a, b) == 1).count(), 1, "q={q} a={a}");
            }
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
