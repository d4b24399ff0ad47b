//! Irreducibility over `Q` by Kronecker's interpolation method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::QPoly;
use super::Rational;
use crate::error::{Error, Result};

/// Cap on the number of candidate factors examined for one degree.
const CANDIDATE_LIMIT: u64 = 20_000_000;

/// Whether `p` is irreducible over `Q`. Constants are not irreducible.
pub fn is_irreducible(p: &QPoly) -> Result<bool> {
    let n = match p.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let p = primitive_integer(p);
    if p.coeff(0).is_zero() {
        return Ok(false);
    }
    for d in 1..=n / 2 {
        if has_factor_of_degree(&p, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scales to an integer polynomial with content 1.
fn primitive_integer(p: &QPoly) -> QPoly {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    QPoly::new(ints.into_iter().map(|c| Rational::from_integer(c / &content)).collect())
}

fn divisors(v: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= v {
        if v % i == 0 {
            small.push(i);
            if i * i != v {
                large.push(v / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn has_factor_of_degree(p: &QPoly, d: usize) -> Result<bool> {
    // candidate evaluation points, preferring values with few divisors
    let mut pts: Vec<(usize, i64, Vec<u64>)> = Vec::new();
    for k in 0..60i64 {
        let x = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let v = p.eval(&Rational::from_integer(x.into()));
        if v.is_zero() {
            return Ok(true);
        }
        let Some(abs) = v.to_integer().abs().to_u64() else { continue };
        if abs > 1_000_000_000_000 {
            continue;
        }
        let divs = divisors(abs);
        pts.push((divs.len(), x, divs));
    }
    if pts.len() < d + 1 {
        return Err(Error::bound("irreducibility test: polynomial values too large"));
    }
    pts.sort_by_key(|(n, x, _)| (*n, x.abs(), *x));
    pts.truncate(d + 1);
    let total: u64 = pts.iter().map(|(n, _, _)| 2 * *n as u64).product::<u64>() / 2;
    if total > CANDIDATE_LIMIT {
        return Err(Error::bound("irreducibility test: too many candidate factors"));
    }
    let xs: Vec<Rational> = pts.iter().map(|(_, x, _)| Rational::from_integer((*x).into())).collect();
    let basis: Vec<QPoly> = (0..=d)
        .map(|i| {
            let mut b = QPoly::one();
            for j in 0..=d {
                if i != j {
                    let lin = QPoly::new(vec![-xs[j].clone(), Rational::one()]);
                    b = (&b * &lin).scale(&(&xs[i] - &xs[j]).recip());
                }
            }
            b
        })
        .collect();
    // signed divisor choices per point; the first point stays positive since
    // q and -q are both factors
    let choices: Vec<Vec<Rational>> = pts
        .iter()
        .enumerate()
        .map(|(i, (_, _, divs))| {
            let mut c: Vec<Rational> = divs.iter().map(|&v| Rational::from_integer(v.into())).collect();
            if i > 0 {
                let neg: Vec<Rational> = c.iter().map(|v| -v).collect();
                c.extend(neg);
            }
            c
        })
        .collect();
    let mut idx = vec![0usize; d + 1];
    loop {
        let mut q = QPoly::zero();
        for (i, &k) in idx.iter().enumerate() {
            q = &q + &basis[i].scale(&choices[i][k]);
        }
        if q.degree() == Some(d) && q.coeffs().iter().all(|c| c.is_integer()) && p.rem(&q).is_zero() {
            return Ok(true);
        }
        // advance the mixed-radix counter
        let mut pos = 0;
        loop {
            if pos > d {
                return Ok(false);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
