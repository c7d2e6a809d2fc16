//! Finite groups as dense Cayley tables, automorphisms encoding the action
//! of a topological generator of `Z_p`, and conjugacy classes.

mod action;
mod classes;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith;
use crate::error::{Error, Result};

pub use action::GammaAction;
pub use classes::ConjClasses;

pub const DEFAULT_ORDER_CAP: usize = 256;

/// How a group was described; kept so character tables can use closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(u64),
    Abelian(Vec<u64>),
    /// `C_n x| C_k`, the generator of `C_k` acting by `x -> x^m`.
    Metacyclic { n: u64, k: u64, m: u64 },
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    elem_orders: Vec<u64>,
    exponent: u64,
    spec: GroupSpec,
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec, cap: usize) -> Result<Self> {
        match spec {
            GroupSpec::Cyclic(n) => Self::abelian_checked(&[*n], cap, spec.clone()),
            GroupSpec::Abelian(ns) => Self::abelian_checked(ns, cap, spec.clone()),
            GroupSpec::Metacyclic { n, k, m } => Self::metacyclic_checked(*n, *k, *m, cap),
            GroupSpec::Table(rows) => Self::from_table(rows, cap),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::build(&GroupSpec::Cyclic(n), DEFAULT_ORDER_CAP)
    }

    pub fn abelian(ns: &[u64]) -> Result<Self> {
        Self::build(&GroupSpec::Abelian(ns.to_vec()), DEFAULT_ORDER_CAP)
    }

    pub fn metacyclic(n: u64, k: u64, m: u64) -> Result<Self> {
        Self::build(&GroupSpec::Metacyclic { n, k, m }, DEFAULT_ORDER_CAP)
    }

    fn abelian_checked(ns: &[u64], cap: usize, spec: GroupSpec) -> Result<Self> {
        if ns.contains(&0) {
            return Err(Error::InvalidPresentation("cyclic factors must have positive order".into()));
        }
        let order = ns.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n as usize));
        let order = match order {
            Some(o) if o <= cap => o,
            _ => {
                return Err(Error::CapExceeded {
                    order: order.unwrap_or(usize::MAX),
                    cap,
                })
            }
        };
        // mixed radix, first factor varies fastest
        let digits = |mut x: usize| -> Vec<u64> {
            ns.iter()
                .map(|&n| {
                    let d = (x % n as usize) as u64;
                    x /= n as usize;
                    d
                })
                .collect()
        };
        let index = |ds: &[u64]| -> usize {
            ds.iter()
                .zip(ns)
                .rev()
                .fold(0usize, |acc, (&d, &n)| acc * n as usize + d as usize)
        };
        let mut mult = vec![0u32; order * order];
        for a in 0..order {
            let da = digits(a);
            for b in 0..order {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).zip(ns).map(|((x, y), n)| (x + y) % n).collect();
                mult[a * order + b] = index(&sum) as u32;
            }
        }
        Ok(Self::finish(order, mult, spec))
    }

    fn metacyclic_checked(n: u64, k: u64, m: u64, cap: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidPresentation("metacyclic parameters must be positive".into()));
        }
        if arith::gcd(m % n.max(1), n) != 1 && n > 1 {
            return Err(Error::InvalidPresentation(format!("{m} is not a unit modulo {n}")));
        }
        if arith::pow_mod(m, k, n) != 1 % n {
            return Err(Error::InvalidPresentation(format!(
                "relation fails: {m}^{k} is not 1 modulo {n}"
            )));
        }
        let order = (n * k) as usize;
        if order > cap {
            return Err(Error::CapExceeded { order, cap });
        }
        let pows: Vec<u64> = (0..k).map(|b| arith::pow_mod(m, b, n)).collect();
        let mut mult = vec![0u32; order * order];
        for i in 0..order {
            let (a, b) = ((i as u64) % n, (i as u64) / n);
            for j in 0..order {
                let (c, d) = ((j as u64) % n, (j as u64) / n);
                let x = (a + pows[b as usize] * c) % n;
                let y = (b + d) % k;
                mult[i * order + j] = (x + n * y) as u32;
            }
        }
        Ok(Self::finish(order, mult, GroupSpec::Metacyclic { n, k, m }))
    }

    fn from_table(rows: &[Vec<usize>], cap: usize) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if order > cap {
            return Err(Error::CapExceeded { order, cap });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; order];
            for &x in row {
                if x >= order || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!("row {i} is not a permutation")));
                }
            }
        }
        for j in 0..order {
            let mut seen = vec![false; order];
            for row in rows {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::InvalidTable(format!("column {j} is not a permutation")));
                }
            }
        }
        if (0..order).any(|x| rows[0][x] != x || rows[x][0] != x) {
            return Err(Error::InvalidTable("element 0 is not the identity".into()));
        }
        for a in 0..order {
            for b in 0..order {
                let ab = rows[a][b];
                for c in 0..order {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(Error::InvalidTable(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mult = rows.iter().flatten().map(|&x| x as u32).collect();
        Ok(Self::finish(order, mult, GroupSpec::Table(rows.to_vec())))
    }

    fn finish(order: usize, mult: Vec<u32>, spec: GroupSpec) -> Self {
        let mut inv = vec![0u32; order];
        for a in 0..order {
            for b in 0..order {
                if mult[a * order + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let elem_orders: Vec<u64> = (0..order)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = mult[x * order + a] as usize;
                    k += 1;
                }
                k
            })
            .collect();
        let exponent = elem_orders.iter().fold(1, |acc, &o| arith::lcm(acc, o));
        Self {
            order,
            mult,
            inv,
            elem_orders,
            exponent,
            spec,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let e = e % self.elem_orders[a];
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.elem_orders[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        self.mult
            .chunks(self.order)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// Hex SHA-256 of the Cayley table, used as a cache key.
    pub fn canonical_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order as u64).to_le_bytes());
        for &x in &self.mult {
            h.update(x.to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}
