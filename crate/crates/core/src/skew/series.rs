use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::ring::{Coeff, CoeffRing};
use crate::arith;
use crate::error::{Error, Result};

/// `O[X; tau, delta] / (p^k, Z^m)` with `delta = tau - id`, `Z = (1+X)^e - 1`,
/// `e = ord(tau)` and `m = ceil((d+1)/e)`.
///
/// `Z` is central and monic of degree `e` in `X`, so the quotient is free on
/// `1, X, ..., X^(N-1)` with `N = e m >= d+1`; for `tau = id` it is the usual
/// truncation at `X^(d+1)`.
#[derive(Debug, PartialEq, Eq)]
pub struct SkewRing {
    coeff: CoeffRing,
    d: usize,
    len: usize,
    /// `(Y^e - 1)^m` in `Y = 1 + X`, monic of degree `len`.
    relation: Vec<u64>,
    /// Binomials mod `p^k` up to `2 len`.
    binom: Vec<Vec<u64>>,
}

impl SkewRing {
    pub fn new(coeff: CoeffRing, d: usize) -> Arc<Self> {
        let q = coeff.modulus();
        let e = coeff.tau_order();
        let m = (d + 1).div_ceil(e);
        let len = e * m;
        let top = 2 * len + 1;
        let mut binom = vec![vec![0u64; top]; top];
        for n in 0..top {
            binom[n][0] = 1 % q;
            for r in 1..=n {
                binom[n][r] = (binom[n - 1][r - 1] + binom[n - 1][r]) % q;
            }
        }
        // (Y^e - 1)^m = sum_i C(m, i) (-1)^(m-i) Y^(e i)
        let mut relation = vec![0u64; len + 1];
        for i in 0..=m {
            let c = binom[m][i];
            relation[e * i] = if (m - i).is_multiple_of(2) { c } else { (q - c) % q };
        }
        Arc::new(Self {
            coeff,
            d,
            len,
            relation,
            binom,
        })
    }

    pub fn coeff_ring(&self) -> &CoeffRing {
        &self.coeff
    }

    /// The requested precision `d`.
    pub fn precision(&self) -> usize {
        self.d
    }

    /// Number of stored coefficients `N`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn sign(&self, c: u64, negative: bool) -> u64 {
        let q = self.coeff.modulus();
        if negative {
            (q - c % q) % q
        } else {
            c % q
        }
    }

    fn x_to_y(&self, xs: &[Coeff]) -> Vec<Coeff> {
        let r = &self.coeff;
        let mut ys = vec![r.zero(); self.len];
        for (s, c) in xs.iter().enumerate() {
            if r.is_zero(c) {
                continue;
            }
            for (i, y) in ys.iter_mut().enumerate().take(s + 1) {
                let b = self.sign(self.binom[s][i], (s - i) % 2 == 1);
                *y = r.add(y, &r.scale(c, b));
            }
        }
        ys
    }

    fn y_to_x(&self, ys: &[Coeff]) -> Vec<Coeff> {
        let r = &self.coeff;
        let mut xs = vec![r.zero(); self.len];
        for (i, c) in ys.iter().enumerate() {
            if r.is_zero(c) {
                continue;
            }
            for (s, x) in xs.iter_mut().enumerate().take(i + 1) {
                *x = r.add(x, &r.scale(c, self.binom[i][s]));
            }
        }
        xs
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SkewSeries {
    ring: Arc<SkewRing>,
    coeffs: Vec<Coeff>,
}

impl fmt::Debug for SkewSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl SkewSeries {
    /// Coefficients of `1, X, X^2, ...`; missing ones are zero, extra ones are
    /// reduced through the defining relation.
    pub fn new(ring: &Arc<SkewRing>, coeffs: Vec<Coeff>) -> Self {
        let r = &ring.coeff;
        let coeffs: Vec<Coeff> = coeffs.into_iter().map(|c| r.add(&c, &r.zero())).collect();
        if coeffs.len() <= ring.len {
            let mut coeffs = coeffs;
            coeffs.resize(ring.len, r.zero());
            return Self {
                ring: ring.clone(),
                coeffs,
            };
        }
        // reduce a long X-polynomial via the Y basis
        let big = SkewRing::new(r.clone(), coeffs.len() - 1);
        let mut x = coeffs;
        x.resize(big.len, r.zero());
        let y = big.x_to_y(&x);
        let y = reduce(ring, y);
        Self {
            ring: ring.clone(),
            coeffs: ring.y_to_x(&y),
        }
    }

    pub fn constant(ring: &Arc<SkewRing>, c: Coeff) -> Self {
        Self::new(ring, vec![c])
    }

    pub fn zero(ring: &Arc<SkewRing>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn one(ring: &Arc<SkewRing>) -> Self {
        Self::constant(ring, ring.coeff.one())
    }

    /// The variable `X`.
    pub fn x(ring: &Arc<SkewRing>) -> Self {
        let r = &ring.coeff;
        Self::new(ring, vec![r.zero(), r.one()])
    }

    pub fn random(ring: &Arc<SkewRing>, rng: &mut impl Rng) -> Self {
        let coeffs = (0..ring.len).map(|_| ring.coeff.random(rng)).collect();
        Self::new(ring, coeffs)
    }

    pub fn ring(&self) -> &Arc<SkewRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&Coeff> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.coeff.is_zero(c))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let r = &self.ring.coeff;
        Ok(self.with(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| r.add(a, b)).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let r = &self.ring.coeff;
        Ok(self.with(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| r.sub(a, b)).collect()))
    }

    fn with(&self, coeffs: Vec<Coeff>) -> Self {
        Self {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Product using `Y c = tau(c) Y` for `Y = 1 + X`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let ring = &self.ring;
        let r = &ring.coeff;
        let a = ring.x_to_y(&self.coeffs);
        let b = ring.x_to_y(&other.coeffs);
        let e = r.tau_order();
        let mut twisted: Vec<Vec<Coeff>> = Vec::with_capacity(e);
        let mut cur = b;
        for _ in 0..e {
            let next = cur.iter().map(|c| r.tau(c)).collect();
            twisted.push(std::mem::replace(&mut cur, next));
        }
        let mut prod = vec![r.zero(); 2 * ring.len];
        for (s, x) in a.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (u, y) in twisted[s % e].iter().enumerate() {
                prod[s + u] = r.add(&prod[s + u], &r.mul(x, y));
            }
        }
        Ok(self.with(ring.y_to_x(&reduce(ring, prod))))
    }

    /// Two-sided inverse, or [`Error::SkewNotAUnit`].
    pub fn inv(&self) -> Result<Self> {
        let ring = &self.ring;
        let r = &ring.coeff;
        let mut b = self.inv_mod_p()?;
        let two = Self::constant(ring, r.from_int(2));
        let one = Self::one(ring);
        for _ in 0..=2 * r.precision() {
            let ab = self.mul(&b)?;
            if ab == one {
                debug_assert_eq!(b.mul(self)?, one);
                return Ok(b);
            }
            b = b.mul(&two.sub(&ab)?)?;
        }
        Err(Error::SkewNotAUnit)
    }

    /// Right inverse modulo `p` by linear algebra over `F_p`.
    fn inv_mod_p(&self) -> Result<Self> {
        let ring = &self.ring;
        let r = &ring.coeff;
        let (p, f, n) = (r.p(), r.residue_degree(), ring.len);
        let dim = n * f;
        // column (s, l): coordinates of self * t^l X^s
        let mut mat = vec![vec![0u64; dim + 1]; dim];
        let t = r.gen();
        for s in 0..n {
            for l in 0..f {
                let mut coeffs = vec![r.zero(); s + 1];
                coeffs[s] = r.pow(&t, l as u64);
                let col = self.mul(&Self::new(ring, coeffs))?;
                for (i, c) in col.coeffs.iter().enumerate() {
                    for (h, v) in c.iter().enumerate() {
                        mat[i * f + h][s * f + l] = v % p;
                    }
                }
            }
        }
        mat[0][dim] = 1;
        let sol = solve_mod_p(mat, p).ok_or(Error::SkewNotAUnit)?;
        let coeffs = (0..n).map(|s| sol[s * f..(s + 1) * f].to_vec()).collect();
        Ok(Self::new(ring, coeffs))
    }
}

/// Reduce a `Y`-polynomial modulo the central relation.
fn reduce(ring: &SkewRing, mut y: Vec<Coeff>) -> Vec<Coeff> {
    let r = &ring.coeff;
    let n = ring.len;
    while y.len() > n {
        let c = y.pop().expect("nonempty");
        if r.is_zero(&c) {
            continue;
        }
        let base = y.len() - n;
        for (l, &rel) in ring.relation[..n].iter().enumerate() {
            if rel != 0 {
                y[base + l] = r.sub(&y[base + l], &r.scale(&c, rel));
            }
        }
    }
    y.resize(n, r.zero());
    y
}

/// Solve an augmented system over `F_p`; `None` if the matrix is singular.
fn solve_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> Option<Vec<u64>> {
    let dim = m.len();
    for col in 0..dim {
        let piv = (col..dim).find(|&r| m[r][col] != 0)?;
        m.swap(col, piv);
        let inv = arith::inv_mod(m[col][col], p)?;
        for v in m[col].iter_mut() {
            *v = arith::mul_mod(*v, inv, p);
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + p - arith::mul_mod(c, pv, p)) % p;
            }
        }
    }
    Some(m.into_iter().map(|row| row[dim]).collect())
}
