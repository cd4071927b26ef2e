//! Smith normal form over arbitrary-precision integers: U * A * V = D with
//! U, V unimodular and D diagonal with a divisibility chain.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::argument("entry count does not match the shape"));
        }
        Ok(IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&v| BigInt::from(v)).collect(),
        })
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a * other.get(k, c);
                    let cur = out.get(r, c) + add;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let add = factor * self.get(source, c);
            let v = self.get(target, c) + add;
            self.set(target, c, v);
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let add = factor * self.get(r, source);
            let v = self.get(r, target) + add;
            self.set(r, target, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }

    /// Determinant by fraction-free elimination; used to verify
    /// unimodularity of the transforms.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut divisor = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    let v = (m.get(k, k) * m.get(r, c) - m.get(r, k) * m.get(k, c)) / &divisor;
                    m.set(r, c, v);
                }
                m.set(r, k, BigInt::zero());
            }
            divisor = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

/// The decomposition U * A * V = D.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// The nonzero diagonal entries d1 | d2 | ... (all positive).
    pub invariants: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors bigger than one, the torsion coefficients.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

/// Compute the Smith normal form by pivoting on the smallest nonzero entry.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);

    for k in 0..n {
        loop {
            // find the smallest nonzero entry in the remaining block
            let mut pivot: Option<(usize, usize)> = None;
            for r in k..d.rows {
                for c in k..d.cols {
                    if !d.get(r, c).is_zero()
                        && pivot
                            .map(|(pr, pc)| d.get(r, c).abs() < d.get(pr, pc).abs())
                            .unwrap_or(true)
                    {
                        pivot = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = pivot else {
                // rest of the matrix is zero
                let invariants = collect_invariants(&d, k);
                return SnfResult { d, u, v, invariants };
            };
            if pr != k {
                d.swap_rows(k, pr);
                u.swap_rows(k, pr);
            }
            if pc != k {
                d.swap_cols(k, pc);
                v.swap_cols(k, pc);
            }
            if d.get(k, k).is_negative() {
                d.negate_row(k);
                u.negate_row(k);
            }
            // clear the pivot row and column
            let mut dirty = false;
            for r in k + 1..d.rows {
                if !d.get(r, k).is_zero() {
                    let q = -(d.get(r, k) / d.get(k, k));
                    d.add_row_multiple(r, k, &q);
                    u.add_row_multiple(r, k, &q);
                    if !d.get(r, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            for c in k + 1..d.cols {
                if !d.get(k, c).is_zero() {
                    let q = -(d.get(k, c) / d.get(k, k));
                    d.add_col_multiple(c, k, &q);
                    v.add_col_multiple(c, k, &q);
                    if !d.get(k, c).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility: if some remaining entry is not divisible
            // by the pivot, fold its row in and restart the block
            let mut fixed = true;
            'scan: for r in k + 1..d.rows {
                for c in k + 1..d.cols {
                    if !(d.get(r, c) % d.get(k, k)).is_zero() {
                        let one = BigInt::one();
                        d.add_row_multiple(k, r, &one);
                        u.add_row_multiple(k, r, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    let invariants = collect_invariants(&d, n);
    SnfResult { d, u, v, invariants }
}

fn collect_invariants(d: &IntMatrix, upto: usize) -> Vec<BigInt> {
    (0..upto)
        .map(|k| d.get(k, k).clone())
        .take_while(|v| !v.is_zero())
        .collect()
}
