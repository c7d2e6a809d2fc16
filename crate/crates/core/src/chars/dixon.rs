//! Dixon's modular variant of Burnside's algorithm.
//!
//! The class-multiplication matrices are simultaneously diagonalised over a
//! prime field `F_l` with `l = 1 (mod exp H)` and `l > 2 sqrt|H|`. Each common
//! eigenvector gives a central character modulo `l`; degrees are recovered
//! from the orthogonality relation and values are lifted to `Q(zeta_e)` by
//! computing eigenvalue multiplicities with a primitive `e`-th root of unity
//! in `F_l`.

use crate::arith;
use crate::cyclo::Accumulator;
use crate::error::{Error, Result};
use crate::group::{ConjClasses, FiniteGroup};
use crate::{CycElem, Rational};

/// Smallest prime `l = 1 (mod e)` with `l > 2 sqrt(order)`.
pub fn dixon_prime(exponent: u64, order: usize) -> u64 {
    let mut l = exponent + 1;
    loop {
        if arith::is_prime(l) && (l * l) as u128 > 4 * order as u128 {
            return l;
        }
        l += exponent;
    }
}

fn primitive_root(l: u64) -> u64 {
    let factors = arith::factorize(l - 1);
    (2..l)
        .find(|&g| factors.iter().all(|&(q, _)| arith::pow_mod(g, (l - 1) / q, l) != 1))
        .unwrap_or(1)
}

/// Class structure constants: `coeffs[i][j][k]` = #{x in C_i : x^-1 z_k in C_j}.
fn structure_constants(group: &FiniteGroup, classes: &ConjClasses) -> Vec<Vec<Vec<u64>>> {
    let r = classes.len();
    let mut out = vec![vec![vec![0u64; r]; r]; r];
    for (i, block) in out.iter_mut().enumerate() {
        for k in 0..r {
            let z = classes.rep(k);
            for &x in classes.members(i) {
                let j = classes.class_of(group.mul(group.inv(x), z));
                block[j][k] += 1;
            }
        }
    }
    out
}

/// Row-reduced basis of a subspace of `F_l^r`, with its pivot columns.
#[derive(Clone, Debug)]
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn rref(mut rows: Vec<Vec<u64>>, l: u64) -> Subspace {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = arith::inv_mod(rows[rank][col], l).expect("nonzero mod prime");
        for x in rows[rank].iter_mut() {
            *x = arith::mul_mod(*x, inv, l);
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + l - arith::mul_mod(c, *y, l)) % l;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Subspace { rows, pivots }
}

/// Basis of the kernel of a `d x d` matrix over `F_l`.
fn kernel(a: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let d = a.len();
    let red = rref(a.to_vec(), l);
    let free: Vec<usize> = (0..d).filter(|c| !red.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; d];
            v[f] = 1;
            for (row, &pc) in red.rows.iter().zip(&red.pivots) {
                v[pc] = (l - row[f]) % l;
            }
            v
        })
        .collect()
}

fn apply(mat: &[Vec<u64>], v: &[u64], l: u64) -> Vec<u64> {
    mat.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + arith::mul_mod(*a % l, *b, l)) % l))
        .collect()
}

/// Splits `space` into eigenspaces of `mat` (which must leave it invariant).
fn split(space: &Subspace, mat: &[Vec<u64>], l: u64) -> Result<Vec<Subspace>> {
    let d = space.rows.len();
    // restricted matrix: coordinates of mat * b_t read off at the pivots
    let images: Vec<Vec<u64>> = space.rows.iter().map(|b| apply(mat, b, l)).collect();
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|s| (0..d).map(|t| images[t][space.pivots[s]]).collect())
        .collect();
    let mut parts = Vec::new();
    let mut found = 0;
    for lambda in 0..l {
        if found == d {
            break;
        }
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { (x + l - lambda) % l } else { x })
                    .collect()
            })
            .collect();
        let ker = kernel(&shifted, l);
        if ker.is_empty() {
            continue;
        }
        found += ker.len();
        let vectors: Vec<Vec<u64>> = ker
            .iter()
            .map(|c| {
                let mut v = vec![0u64; space.rows[0].len()];
                for (ct, b) in c.iter().zip(&space.rows) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + arith::mul_mod(*ct, *y, l)) % l;
                    }
                }
                v
            })
            .collect();
        parts.push(rref(vectors, l));
    }
    if found != d {
        return Err(Error::CharacterTable(format!(
            "class matrix is not diagonalisable over F_{l} on a subspace of dimension {d}"
        )));
    }
    Ok(parts)
}

/// Irreducible character values (one vector per character, indexed by class)
/// and degrees, in no particular order.
pub fn dixon_burnside(group: &FiniteGroup, classes: &ConjClasses) -> Result<Vec<(u64, Vec<CycElem>)>> {
    let r = classes.len();
    let order = group.order() as u64;
    let e = group.exponent();
    let l = dixon_prime(e, group.order());
    let z = arith::pow_mod(primitive_root(l), (l - 1) / e, l);

    let consts = structure_constants(group, classes);
    let mut spaces = vec![rref(
        (0..r)
            .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
            .collect(),
        l,
    )];
    for mat in consts.iter().skip(1) {
        if spaces.iter().all(|s| s.rows.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for s in &spaces {
            if s.rows.len() == 1 {
                next.push(s.clone());
            } else {
                next.extend(split(s, mat, l)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::CharacterTable(format!(
            "found {} common eigenspaces for {r} classes",
            spaces.len()
        )));
    }

    let sizes = classes.sizes();
    let inverse: Vec<usize> = (0..r).map(|c| classes.inverse_class(group, c)).collect();
    let power: Vec<Vec<usize>> = (0..r)
        .map(|c| (0..e).map(|t| classes.power_class(group, c, t)).collect())
        .collect();
    let e_inv = arith::inv_mod(e % l, l).expect("l = 1 mod e");

    let mut out = Vec::with_capacity(r);
    for space in spaces {
        let v = &space.rows[0];
        let scale = arith::inv_mod(v[0], l)
            .ok_or_else(|| Error::CharacterTable("eigenvector vanishes at the identity class".into()))?;
        let omega: Vec<u64> = v.iter().map(|&x| arith::mul_mod(x, scale, l)).collect();
        // chi(1)^2 = |H| / sum_k omega_k omega_k' / |C_k|
        let s = (0..r).fold(0u64, |acc, k| {
            let term = arith::mul_mod(omega[k], omega[inverse[k]], l);
            let term = arith::mul_mod(term, arith::inv_mod(sizes[k] as u64 % l, l).expect("l > class size"), l);
            (acc + term) % l
        });
        let sq = arith::mul_mod(order % l, arith::inv_mod(s, l).ok_or_else(|| {
            Error::CharacterTable("degenerate central character".into())
        })?, l);
        let degree = (1..=order)
            .take_while(|d| d * d <= order)
            .find(|&d| arith::mul_mod(d, d, l) == sq)
            .ok_or_else(|| Error::CharacterTable("no admissible degree".into()))?;
        let theta: Vec<u64> = (0..r)
            .map(|k| {
                let inv_size = arith::inv_mod(sizes[k] as u64 % l, l).expect("l > class size");
                arith::mul_mod(arith::mul_mod(omega[k], degree, l), inv_size, l)
            })
            .collect();

        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let mut acc = Accumulator::<Rational>::new(e);
            let mut total = 0;
            for j in 0..e {
                // multiplicity of zeta^j as an eigenvalue of rho(g_k)
                let mut m = 0u64;
                for t in 0..e {
                    let zt = arith::pow_mod(z, (e - (j * t) % e) % e, l);
                    m = (m + arith::mul_mod(theta[power[k][t as usize]], zt, l)) % l;
                }
                let m = arith::mul_mod(m, e_inv, l);
                if m > degree {
                    return Err(Error::CharacterTable(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree}"
                    )));
                }
                total += m;
                if m > 0 {
                    acc.add_monomial(&Rational::from_integer(m.into()), j);
                }
            }
            if total != degree {
                return Err(Error::CharacterTable("multiplicities do not sum to the degree".into()));
            }
            values.push(acc.finish());
        }
        out.push((degree, values));
    }
    Ok(out)
}
