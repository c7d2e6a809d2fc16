use rand::Rng;

use crate::arith;
use crate::error::{Error, Result};

/// Polynomials over `Z/m`, lowest coefficient first.
pub(crate) mod poly {
    use crate::arith;

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + arith::mul_mod(x, y, m)) % m;
            }
        }
        out
    }

    /// Remainder modulo a monic `g`.
    pub fn rem_monic(mut a: Vec<u64>, g: &[u64], m: u64) -> Vec<u64> {
        let dg = g.len() - 1;
        while a.len() > dg {
            let c = a.pop().expect("nonempty");
            if c == 0 {
                continue;
            }
            let base = a.len() - dg;
            for (l, &gl) in g[..dg].iter().enumerate() {
                a[base + l] = (a[base + l] + m - arith::mul_mod(c, gl, m)) % m;
            }
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + m - b.get(i).copied().unwrap_or(0) % m) % m)
            .collect()
    }

    /// `(a, b) -> (q, r)` over the prime field `F_p`.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead_inv = arith::inv_mod(b[db], p).expect("nonzero leading coefficient");
        let mut q = vec![0u64; r.len().saturating_sub(db)];
        while r.len() > db {
            let c = arith::mul_mod(*r.last().expect("nonempty"), lead_inv, p);
            let shift = r.len() - 1 - db;
            q[shift] = c;
            for (l, &bl) in b.iter().enumerate() {
                r[shift + l] = (r[shift + l] + p - arith::mul_mod(c, bl, p)) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Inverse of `a` modulo `g` over `F_p`, if coprime.
    pub fn inv_mod(a: &[u64], g: &[u64], p: u64) -> Option<Vec<u64>> {
        // extended Euclid keeping only the cofactor of a
        let (mut r0, mut r1) = (trim(g.to_vec()), trim(a.iter().map(|x| x % p).collect()));
        let (mut s0, mut s1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = trim(sub(&s0, &mul(&q, &s1, p), p));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = arith::inv_mod(r0[0], p)?;
        let (_, out) = divrem(&s0.iter().map(|&x| arith::mul_mod(x, c, p)).collect::<Vec<_>>(), g, p);
        Some(out)
    }

    /// `base^e mod g` over `Z/m`, `g` monic.
    pub fn pow_mod(base: &[u64], mut e: u64, g: &[u64], m: u64) -> Vec<u64> {
        let mut result = rem_monic(vec![1 % m], g, m);
        let mut b = rem_monic(base.to_vec(), g, m);
        while e > 0 {
            if e & 1 == 1 {
                result = rem_monic(mul(&result, &b, m), g, m);
            }
            b = rem_monic(mul(&b, &b, m), g, m);
            e >>= 1;
        }
        result
    }

    /// Rabin's irreducibility test for a monic `g` over `F_p`.
    pub fn is_irreducible(g: &[u64], p: u64) -> bool {
        let f = (g.len() - 1) as u32;
        if f == 0 {
            return false;
        }
        let t = vec![0, 1];
        let frob = |k: u32| -> Vec<u64> {
            (0..k).fold(t.clone(), |acc, _| pow_mod(&acc, p, g, p))
        };
        let t_mod_g = rem_monic(t.clone(), g, p);
        if !trim(sub(&frob(f), &t_mod_g, p)).is_empty() {
            return false;
        }
        arith::factorize(f as u64).iter().all(|&(r, _)| {
            let h = sub(&frob(f / r as u32), &t_mod_g, p);
            gcd(g, &h, p).len() == 1
        })
    }
}

/// `W(F_{p^f}) / p^k` as `(Z/p^k)[t]/(g)`, with the lift `tau` of `x -> x^(p^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffRing {
    p: u64,
    k: u32,
    q: u64,
    f: usize,
    j: usize,
    g: Vec<u64>,
    tau_pows: Vec<Vec<u64>>,
    tau_order: usize,
}

/// An element of a [`CoeffRing`]: `f` coordinates in the basis `1, t, ..., t^(f-1)`.
pub type Coeff = Vec<u64>;

impl CoeffRing {
    pub fn build(p: u64, k: u32, f: usize, j: usize) -> Result<Self> {
        if p.is_multiple_of(2) || !arith::is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if k == 0 || f == 0 || j >= f {
            return Err(Error::InvalidRing(format!("need k >= 1, f >= 1 and 0 <= j < f (k = {k}, f = {f}, j = {j})")));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q < 1 << 31)
            .ok_or_else(|| Error::InvalidRing(format!("{p}^{k} is too large")))?;
        let g = smallest_irreducible(p, f);
        let mut ring = Self {
            p,
            k,
            q,
            f,
            j,
            g,
            tau_pows: Vec::new(),
            tau_order: 1,
        };
        let root = ring.lift_frobenius_root()?;
        ring.tau_pows = (0..f).map(|i| ring.pow(&root, i as u64)).collect();
        ring.tau_order = ring.measure_tau_order()?;
        let expected = f / arith::gcd(f as u64, j as u64) as usize;
        if ring.tau_order != expected {
            return Err(Error::LiftFailure(format!(
                "tau has order {} instead of {expected}",
                ring.tau_order
            )));
        }
        Ok(ring)
    }

    /// Newton iteration for the root of `g` congruent to `t^(p^j)` mod `p`.
    fn lift_frobenius_root(&self) -> Result<Coeff> {
        let t = self.gen();
        let mut r = poly::pow_mod(&[0, 1], self.p.pow(self.j as u32), &self.g, self.p);
        r.resize(self.f, 0);
        let dg: Vec<u64> = self.g.iter().enumerate().skip(1).map(|(i, &c)| c * i as u64 % self.q).collect();
        for _ in 0..64 {
            let val = self.eval(&self.g, &r);
            if val.iter().all(|&x| x == 0) {
                let check = poly::pow_mod(&t, self.p.pow(self.j as u32), &self.g, self.p);
                let r_mod_p: Vec<u64> = poly::trim(r.iter().map(|x| x % self.p).collect());
                if poly::trim(check) != r_mod_p {
                    return Err(Error::LiftFailure("lifted root left its residue class".into()));
                }
                return Ok(r);
            }
            let deriv = self.eval(&dg, &r);
            let inv = self
                .inv(&deriv)
                .ok_or_else(|| Error::LiftFailure("g' vanishes at the residue root".into()))?;
            r = self.sub(&r, &self.mul(&val, &inv));
        }
        Err(Error::LiftFailure("Newton iteration did not converge".into()))
    }

    fn measure_tau_order(&self) -> Result<usize> {
        let t = self.gen();
        let mut x = self.tau(&t);
        for order in 1..=self.f {
            if x == t {
                return Ok(order);
            }
            x = self.tau(&x);
        }
        Err(Error::LiftFailure("tau does not have order dividing f".into()))
    }

    fn eval(&self, poly_coeffs: &[u64], x: &Coeff) -> Coeff {
        poly_coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, &c| self.add(&self.mul(&acc, x), &self.from_int(c as i64)))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn residue_degree(&self) -> usize {
        self.f
    }

    pub fn frobenius_power(&self) -> usize {
        self.j
    }

    /// The defining polynomial, monic, lowest coefficient first.
    pub fn defining_poly(&self) -> &[u64] {
        &self.g
    }

    pub fn tau_order(&self) -> usize {
        self.tau_order
    }

    pub fn zero(&self) -> Coeff {
        vec![0; self.f]
    }

    pub fn one(&self) -> Coeff {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> Coeff {
        let mut x = self.zero();
        x[0] = c.rem_euclid(self.q as i64) as u64;
        x
    }

    /// The class of `t`.
    pub fn gen(&self) -> Coeff {
        poly::rem_monic(vec![0, 1], &self.g, self.q)
            .into_iter()
            .chain(std::iter::repeat(0))
            .take(self.f)
            .collect()
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.q).collect()
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        a.iter().zip(b).map(|(x, y)| (x + self.q - y) % self.q).collect()
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        a.iter().map(|x| (self.q - x) % self.q).collect()
    }

    pub fn scale(&self, a: &Coeff, c: u64) -> Coeff {
        a.iter().map(|&x| arith::mul_mod(x, c % self.q, self.q)).collect()
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let mut r = poly::rem_monic(poly::mul(a, b, self.q), &self.g, self.q);
        r.resize(self.f, 0);
        r
    }

    pub fn pow(&self, a: &Coeff, e: u64) -> Coeff {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn is_unit(&self, a: &Coeff) -> bool {
        a.iter().any(|&x| x % self.p != 0)
    }

    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        let mut b = poly::inv_mod(a, &self.g, self.p)?;
        b.resize(self.f, 0);
        // b <- b (2 - a b) doubles the p-adic precision
        let two = self.from_int(2);
        for _ in 0..=self.k {
            let ab = self.mul(a, &b);
            if ab == self.one() {
                return Some(b);
            }
            b = self.mul(&b, &self.sub(&two, &ab));
        }
        (self.mul(a, &b) == self.one()).then_some(b)
    }

    pub fn tau(&self, a: &Coeff) -> Coeff {
        a.iter()
            .zip(&self.tau_pows)
            .fold(self.zero(), |acc, (&c, tp)| self.add(&acc, &self.scale(tp, c)))
    }

    pub fn tau_pow(&self, a: &Coeff, i: usize) -> Coeff {
        (0..i % self.tau_order).fold(a.clone(), |x, _| self.tau(&x))
    }

    /// `delta = tau - id`.
    pub fn delta(&self, a: &Coeff) -> Coeff {
        self.sub(&self.tau(a), a)
    }

    pub fn random(&self, rng: &mut impl Rng) -> Coeff {
        (0..self.f).map(|_| rng.gen_range(0..self.q)).collect()
    }
}

/// Smallest monic irreducible of degree `f` over `F_p`, ordering by the
/// base-`p` number formed by the lower coefficients.
fn smallest_irreducible(p: u64, f: usize) -> Vec<u64> {
    if f == 1 {
        return vec![0, 1];
    }
    (0..p.pow(f as u32))
        .map(|mut c| {
            let mut g: Vec<u64> = (0..f)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect();
            g.push(1);
            g
        })
        .find(|g| poly::is_irreducible(g, p))
        .expect("irreducible polynomials exist in every degree")
}
