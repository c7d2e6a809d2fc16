use super::Cyclotomic;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Dense row-major matrix over a single cyclotomic field.
#[derive(Clone, Debug)]
pub struct CycMatrixOf<T> {
    rows: usize,
    cols: usize,
    modulus: u64,
    entries: Vec<Cyclotomic<T>>,
}

impl<T: ExactScalar> CycMatrixOf<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Cyclotomic<T>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let modulus = entries.first().map_or(1, |e| e.modulus());
        if let Some(bad) = entries.iter().find(|e| e.modulus() != modulus) {
            return Err(Error::ModulusMismatch {
                left: modulus,
                right: bad.modulus(),
            });
        }
        Ok(Self {
            rows,
            cols,
            modulus,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, modulus: u64, f: impl Fn(usize, usize) -> Cyclotomic<T>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j).embed(modulus)?);
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn identity(k: usize, modulus: u64) -> Self {
        Self::from_fn(k, k, modulus, |i, j| {
            if i == j {
                Cyclotomic::one(modulus)
            } else {
                Cyclotomic::zero(modulus)
            }
        })
        .expect("identity is well formed")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic<T> {
        &self.entries[i * self.cols + j]
    }

    /// Exact rank over `Q(zeta_n)`.
    ///
    /// Rows are first scaled by the lcm of their coordinate denominators so
    /// every entry lies in `Z[zeta_n]`; fraction-free Bareiss elimination then
    /// keeps all intermediate entries integral (each is a minor of the scaled
    /// matrix). The division by the previous pivot is exact and is carried out
    /// as multiplication by its field inverse, computed once per step.
    pub fn rank(&self) -> usize {
        let n = self.modulus;
        let mut m: Vec<Vec<Cyclotomic<T>>> = self
            .entries
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|row| {
                let l = row
                    .iter()
                    .fold(T::one(), |acc, e| T::lcm_int(&acc, &e.denominator()));
                row.iter().map(|e| e.scale(&l)).collect()
            })
            .collect();
        if self.cols == 0 {
            return 0;
        }

        let mut prev_inv: Option<Cyclotomic<T>> = None;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, piv);
            let (top, rest) = m.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            let pivot = pivot_row[col].clone();
            for row in rest.iter_mut() {
                let lead = row[col].clone();
                for j in (col + 1)..self.cols {
                    let mut acc = super::Accumulator::new(n);
                    acc.add_product(&pivot, &row[j]);
                    acc.add_product(&(-&lead), &pivot_row[j]);
                    let mut v = acc.finish();
                    if let Some(inv) = &prev_inv {
                        v = &v * inv;
                        debug_assert!(v.is_integral(), "Bareiss quotient left Z[zeta]");
                    }
                    row[j] = v;
                }
                row[col] = Cyclotomic::zero(n);
            }
            prev_inv = pivot.inverse();
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CycElem;

    fn z(n: u64, k: i64) -> CycElem {
        CycElem::zeta_pow(n, k)
    }

    #[test]
    fn identity_and_zero() {
        for k in 0..5 {
            assert_eq!(crate::CycMatrix::identity(k, 5).rank(), k);
        }
        let zero = CycMatrixOf::from_fn(3, 4, 7, |_, _| CycElem::zero(7)).unwrap();
        assert_eq!(zero.rank(), 0);
    }

    #[test]
    fn dependent_rows_over_q_zeta3() {
        // row2 = zeta^2 * row1 because zeta^3 = 1
        let m = CycMatrixOf::new(2, 2, vec![CycElem::one(3), z(3, 1), z(3, 2), CycElem::one(3)]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn vandermonde_full_rank() {
        // rows (zeta^(ij)) for 0 <= i, j < 5 over Q(zeta_5): DFT matrix, invertible
        let m = CycMatrixOf::from_fn(5, 5, 5, |i, j| z(5, (i * j) as i64)).unwrap();
        assert_eq!(m.rank(), 5);
        // rational multiples of one row
        let m = CycMatrixOf::from_fn(4, 3, 12, |i, j| {
            let base = z(12, j as i64 + 1);
            base.scale(&crate::Rational::new((i as i64 + 1).into(), 3.into()))
        })
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rejects_mixed_moduli() {
        let err = CycMatrixOf::new(1, 2, vec![CycElem::one(3), CycElem::one(4)]).unwrap_err();
        assert!(matches!(err, Error::ModulusMismatch { .. }));
        assert!(CycMatrixOf::<crate::Rational>::new(2, 2, vec![CycElem::one(3)]).is_err());
    }
}
