//! Burnside–Dixon character table computation: common eigenvectors of the
//! class-sum multiplication matrices modulo a prime `p ≡ 1 (mod e)`, lifted
//! to `Q(ζ_e)` through eigenvalue multiplicities.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numfield::{int, CycValue, Cyclotomic};

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p ≡ 1 (mod e)` with `p² > 4|G|`.
pub(crate) fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    loop {
        if p * p > 4 * order && is_prime(p) {
            return p;
        }
        p += exponent;
    }
}

fn primitive_root(p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    (2..p).find(|&g| fs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).unwrap_or(1)
}

/// Row-reduced basis (rows) of a subspace of `F_p^r`.
fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let f = rows[i][col];
                for c in 0..width {
                    rows[i][c] = (rows[i][c] + p - f * rows[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

fn pivots(rows: &[Vec<u64>]) -> Vec<usize> {
    rows.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect()
}

/// Basis of `{c : c·A = 0}` for a square matrix `A`.
fn left_kernel(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = a.len();
    // transpose, then the ordinary kernel
    let t: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|j| a[j][i]).collect()).collect();
    let r = rref(t, p);
    let piv = pivots(&r);
    let mut out = Vec::new();
    for free in (0..d).filter(|c| !piv.contains(c)) {
        let mut v = vec![0u64; d];
        v[free] = 1;
        for (row, &pc) in r.iter().zip(&piv) {
            v[pc] = (p - row[free]) % p;
        }
        out.push(v);
    }
    out
}

/// Characteristic polynomial (constant first, monic) via Hessenberg reduction.
fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            let u = h[i][m - 1] * inv % p;
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + p - u * h[m][j] % p) % p;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + u * row[i]) % p;
            }
        }
    }
    // p_k(λ) = det(λI - H_k) by the standard recurrence
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut next = vec![0u64; m + 1];
        let prev = &polys[m - 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + p - h[m - 1][m - 1] * c % p) % p;
        }
        let mut t = 1u64;
        for i in 1..m {
            t = t * h[m - i][m - i - 1] % p;
            let coef = t * h[m - i - 1][m - 1] % p;
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                next[k] = (next[k] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn eval_poly(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &k| (acc * x + k) % p)
}

/// Irreducible character values, one row per character in arbitrary order,
/// columns in the group's class order.
pub(crate) fn dixon(g: &FiniteGroup) -> Result<Vec<Vec<CycValue>>> {
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let n = g.order() as u64;
    let e = g.exponent();
    let p = dixon_prime(e as u64, n);
    let sizes: Vec<u64> = classes.iter().map(|c| c.size() as u64).collect();
    let inv_class: Vec<usize> = classes.iter().map(|c| g.class_of(g.inv(c.representative))).collect();

    // structure constants: A_j[k][l] = #{x in C_j : x^-1 z_l in C_k}
    let mut structure = vec![vec![vec![0u64; r]; r]; r];
    for (j, cj) in classes.iter().enumerate() {
        for (l, cl) in classes.iter().enumerate() {
            let z = cl.representative;
            for &x in &cj.members {
                let k = g.class_of(g.mul(g.inv(x), z));
                structure[j][k][l] += 1;
            }
        }
    }

    let identity_row: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_row];
    for a in &structure {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            let piv = pivots(&basis);
            // restricted matrix: A b_i = Σ_m R[i][m] b_m
            let restricted: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    let image: Vec<u64> =
                        (0..r).map(|k| (0..r).fold(0, |acc, l| (acc + a[k][l] % p * b[l]) % p)).collect();
                    piv.iter().map(|&c| image[c]).collect()
                })
                .collect();
            let cp = charpoly(&restricted, p);
            let roots: Vec<u64> = (0..p).filter(|&x| eval_poly(&cp, x, p) == 0).collect();
            if roots.len() == 1 {
                next.push(basis);
                continue;
            }
            let mut found = 0;
            for lambda in roots {
                let mut shifted = restricted.clone();
                for (i, row) in shifted.iter_mut().enumerate() {
                    row[i] = (row[i] + p - lambda) % p;
                }
                let coeffs = left_kernel(&shifted, p);
                found += coeffs.len();
                let sub: Vec<Vec<u64>> = coeffs
                    .iter()
                    .map(|c| (0..r).map(|col| (0..d).fold(0, |acc, i| (acc + c[i] * basis[i][col]) % p)).collect())
                    .collect();
                next.push(rref(sub, p));
            }
            if found != d {
                return Err(Error::invariant("splitting failure: class matrix not diagonalizable mod p"));
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::invariant("splitting failure: eigenspaces did not separate"));
    }

    let z = pow_mod(primitive_root(p), (p - 1) / e as u64, p);
    let field = Cyclotomic::new(e);
    let mut table = Vec::with_capacity(r);
    for space in spaces {
        let mut w = space.into_iter().next().unwrap();
        // normalize so that ω(identity class) = 1
        let s = inv_mod(w[0], p);
        for x in w.iter_mut() {
            *x = *x * s % p;
        }
        let norm = (0..r).fold(0, |acc, l| (acc + w[l] * w[inv_class[l]] % p * inv_mod(sizes[l] % p, p)) % p);
        let target = n % p * inv_mod(norm, p) % p;
        let degree = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|d| d * d % p == target && n % d == 0)
            .ok_or_else(|| Error::invariant("splitting failure: no admissible degree"))?;
        let theta: Vec<u64> = (0..r).map(|l| degree * w[l] % p * inv_mod(sizes[l] % p, p) % p).collect();
        let mut row = Vec::with_capacity(r);
        for c in classes {
            let x = c.representative;
            let o = g.elem_order(x) as u64;
            let zo = pow_mod(z, e as u64 / o, p);
            let powers: Vec<u64> = (0..o).map(|i| theta[g.class_of(g.pow(x, i as i64))]).collect();
            let inv_o = inv_mod(o % p, p);
            let mut value = field.rational(int(0));
            let mut total = 0;
            for k in 0..o {
                let m = (0..o).fold(0, |acc, i| (acc + powers[i as usize] * pow_mod(zo, (p - 1) - (i * k) % (p - 1), p)) % p)
                    * inv_o
                    % p;
                if m > degree {
                    return Err(Error::invariant("splitting failure: eigenvalue multiplicity out of range"));
                }
                total += m;
                if m > 0 {
                    let term = field.root_power((k * (e as u64 / o)) as i64).scale(&int(m as i64));
                    value = &value + &term;
                }
            }
            if total != degree {
                return Err(Error::invariant("splitting failure: multiplicities do not sum to the degree"));
            }
            row.push(value);
        }
        table.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(dixon_prime(40, 80), 41);
        assert_eq!(dixon_prime(1, 1), 3);
        assert_eq!(dixon_prime(6, 6), 7);
        assert_eq!(primitive_root(41), 6);
    }

    #[test]
    fn charpoly_matches_determinant() {
        let p = 101;
        let a = vec![vec![2, 1, 0], vec![1, 3, 4], vec![5, 0, 7]];
        let cp = charpoly(&a, p);
        // det(λI - A) at λ = 0 equals -det(A)
        let det = (2 * (3 * 7) as i64 - 1 * (7 - 20) + 0) as i64;
        assert_eq!(cp[0], ((-det).rem_euclid(p as i64)) as u64);
        assert_eq!(cp[3], 1);
        assert_eq!(cp[2], (p - 12) % p);
    }
}
