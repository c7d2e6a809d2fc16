//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Elements are dense coordinate vectors in the power basis
//! `1, zeta, ..., zeta^(phi(n)-1)`, reduced modulo the `n`-th cyclotomic
//! polynomial. The representation is canonical for a fixed modulus, so
//! equality is decided coefficientwise. Binary operations on elements of
//! different moduli first embed both operands into `Q(zeta_lcm)`.

mod matrix;
pub mod table;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

pub use matrix::CycMatrixOf;
use table::table;

#[derive(Clone, Debug)]
pub struct Cyclotomic<T> {
    modulus: u64,
    coeffs: Vec<T>,
}

impl<T: ExactScalar> Cyclotomic<T> {
    /// Builds an element from power-basis coordinates; `coeffs.len()` must be `phi(n)`.
    pub fn from_coeffs(modulus: u64, coeffs: Vec<T>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::MalformedMatrix("modulus must be positive".into()));
        }
        let phi = table(modulus).phi;
        if coeffs.len() != phi {
            return Err(Error::MalformedMatrix(format!(
                "expected {phi} coordinates for modulus {modulus}, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { modulus, coeffs })
    }

    pub fn zero(modulus: u64) -> Self {
        Self::from_scalar(modulus, T::zero())
    }

    pub fn one(modulus: u64) -> Self {
        Self::from_scalar(modulus, T::one())
    }

    pub fn from_scalar(modulus: u64, c: T) -> Self {
        let phi = table(modulus).phi;
        let mut coeffs = vec![T::zero(); phi];
        coeffs[0] = c;
        Self { modulus, coeffs }
    }

    pub fn from_int(modulus: u64, c: i64) -> Self {
        Self::from_scalar(modulus, T::from_i64(c))
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(modulus: u64, k: i64) -> Self {
        let n = modulus as i64;
        let mut buf = vec![T::zero(); modulus as usize];
        buf[k.rem_euclid(n) as usize] = T::one();
        Self::reduce(modulus, buf)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&T> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| &self.coeffs[0])
    }

    /// True when all power-basis coordinates are integers, i.e. the element
    /// lies in `Z[zeta_n]`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::one(), |acc, c| T::lcm_int(&acc, &c.denom()))
    }

    /// Reduces a vector indexed by exponents `0..n` modulo `Phi_n`.
    fn reduce(modulus: u64, mut buf: Vec<T>) -> Self {
        let t = table(modulus);
        debug_assert_eq!(buf.len(), modulus as usize);
        for j in t.phi..(modulus as usize) {
            if buf[j].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut buf[j], T::zero());
            for (slot, r) in buf[..t.phi].iter_mut().zip(&t.rows[j - t.phi]) {
                if *r != 0 {
                    *slot = slot.clone() + c.clone() * T::from_i64(*r);
                }
            }
        }
        buf.truncate(t.phi);
        Self {
            modulus,
            coeffs: buf,
        }
    }

    /// Image under `Q(zeta_m) -> Q(zeta_n)`, `zeta_m -> zeta_n^(n/m)`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.modulus) {
            return Err(Error::ModulusIncompatible {
                from: self.modulus,
                to: target,
            });
        }
        if target == self.modulus {
            return Ok(self.clone());
        }
        let step = target / self.modulus;
        let mut buf = vec![T::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                buf[(i as u64 * step % target) as usize] = c.clone();
            }
        }
        Ok(Self::reduce(target, buf))
    }

    /// Image under the automorphism `zeta_n -> zeta_n^a`.
    pub fn galois(&self, a: u64) -> Result<Self> {
        let n = self.modulus;
        if arith::gcd(a % n, n) != 1 && n != 1 {
            return Err(Error::NotAUnit { a, n });
        }
        let a = a % n;
        if a == 1 % n {
            return Ok(self.clone());
        }
        let mut buf = vec![T::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let slot = &mut buf[(i as u64 * a % n) as usize];
                *slot = slot.clone() + c.clone();
            }
        }
        Ok(Self::reduce(n, buf))
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let n = self.modulus;
        self.galois(n - 1 + u64::from(n == 1))
            .expect("n - 1 is always a unit")
    }

    /// Product of elements of the same field; errors on differing moduli.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        let mut acc = Accumulator::new(self.modulus);
        acc.add_product(self, other);
        Ok(acc.finish())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Brings both operands to the modulus `lcm(m, n)`.
    pub fn normalize_pair(a: &Self, b: &Self) -> (Self, Self) {
        if a.modulus == b.modulus {
            return (a.clone(), b.clone());
        }
        let l = arith::lcm(a.modulus, b.modulus);
        (
            a.embed(l).expect("lcm is a multiple"),
            b.embed(l).expect("lcm is a multiple"),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Field norm to `Q` together with the product of the non-trivial conjugates.
    fn norm_and_cofactor(&self) -> (T, Self) {
        let n = self.modulus;
        let mut cof = Self::one(n);
        for a in arith::units(n) {
            if a != 1 % n {
                cof = &cof * &self.galois(a).expect("unit");
            }
        }
        let prod = &cof * self;
        let norm = prod
            .as_rational()
            .cloned()
            .expect("norm of a cyclotomic number is rational");
        (norm, cof)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (norm, cof) = self.norm_and_cofactor();
        Some(cof.scale(&(T::one() / norm)))
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.inverse()?)
    }
}

/// Accumulates sums of products in `Z/n`-indexed buffers and reduces once.
pub struct Accumulator<T> {
    modulus: u64,
    buf: Vec<T>,
}

impl<T: ExactScalar> Accumulator<T> {
    pub fn new(modulus: u64) -> Self {
        Self {
            modulus,
            buf: vec![T::zero(); modulus as usize],
        }
    }

    pub fn add(&mut self, a: &Cyclotomic<T>) {
        debug_assert_eq!(a.modulus, self.modulus);
        for (slot, c) in self.buf.iter_mut().zip(&a.coeffs) {
            if !c.is_zero() {
                *slot = slot.clone() + c.clone();
            }
        }
    }

    pub fn add_product(&mut self, a: &Cyclotomic<T>, b: &Cyclotomic<T>) {
        debug_assert_eq!(a.modulus, self.modulus);
        debug_assert_eq!(b.modulus, self.modulus);
        let n = self.modulus as usize;
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mut k = i + j;
                if k >= n {
                    k -= n;
                }
                self.buf[k] = self.buf[k].clone() + x.clone() * y.clone();
            }
        }
    }

    /// Adds `c * zeta^k`.
    pub fn add_monomial(&mut self, c: &T, k: u64) {
        let k = (k % self.modulus) as usize;
        self.buf[k] = self.buf[k].clone() + c.clone();
    }

    pub fn finish(self) -> Cyclotomic<T> {
        Cyclotomic::reduce(self.modulus, self.buf)
    }
}

impl<T: ExactScalar> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.modulus == other.modulus {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::normalize_pair(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl<T: ExactScalar> Eq for Cyclotomic<T> {}

impl<T: ExactScalar> PartialOrd for Cyclotomic<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on power-basis coordinates (after normalising moduli).
impl<T: ExactScalar> Ord for Cyclotomic<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.modulus == other.modulus {
            self.coeffs.cmp(&other.coeffs)
        } else {
            let (a, b) = Self::normalize_pair(self, other);
            a.coeffs.cmp(&b.coeffs)
        }
    }
}

impl<'a, T: ExactScalar> Add<&'a Cyclotomic<T>> for &'a Cyclotomic<T> {
    type Output = Cyclotomic<T>;

    fn add(self, rhs: &'a Cyclotomic<T>) -> Cyclotomic<T> {
        if self.modulus == rhs.modulus {
            self.zip_with(rhs, |a, b| a.clone() + b.clone())
        } else {
            let (a, b) = Cyclotomic::normalize_pair(self, rhs);
            a.zip_with(&b, |x, y| x.clone() + y.clone())
        }
    }
}

impl<'a, T: ExactScalar> Sub<&'a Cyclotomic<T>> for &'a Cyclotomic<T> {
    type Output = Cyclotomic<T>;

    fn sub(self, rhs: &'a Cyclotomic<T>) -> Cyclotomic<T> {
        if self.modulus == rhs.modulus {
            self.zip_with(rhs, |a, b| a.clone() - b.clone())
        } else {
            let (a, b) = Cyclotomic::normalize_pair(self, rhs);
            a.zip_with(&b, |x, y| x.clone() - y.clone())
        }
    }
}

impl<'a, T: ExactScalar> Mul<&'a Cyclotomic<T>> for &'a Cyclotomic<T> {
    type Output = Cyclotomic<T>;

    fn mul(self, rhs: &'a Cyclotomic<T>) -> Cyclotomic<T> {
        if self.modulus == rhs.modulus {
            self.checked_mul(rhs).expect("same modulus")
        } else {
            let (a, b) = Cyclotomic::normalize_pair(self, rhs);
            a.checked_mul(&b).expect("same modulus")
        }
    }
}

impl<T: ExactScalar> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;

    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: ExactScalar> $tr<Cyclotomic<T>> for Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $m(self, rhs: Cyclotomic<T>) -> Cyclotomic<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: ExactScalar> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if wrote {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{i}", self.modulus)?,
                (_, false) => write!(f, "{mag}*z{}^{i}", self.modulus)?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    n: u64,
    coeffs: Vec<String>,
}

impl<T: ExactScalar> Serialize for Cyclotomic<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycRepr {
            n: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c.to_fraction_text()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: ExactScalar> Deserialize<'de> for Cyclotomic<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| T::parse_fraction_text(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Cyclotomic::from_coeffs(repr.n, coeffs).map_err(D::Error::custom)
    }
}
