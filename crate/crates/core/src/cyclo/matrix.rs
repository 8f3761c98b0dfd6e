use std::fmt;

use super::{CycNumber, CycPoly};
use crate::error::{Error, Result};

/// Dense row-major matrix over ℚ(ζ).
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNumber>,
}

impl CycMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<CycNumber>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::domain(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        Ok(CycMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<CycNumber>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::domain("ragged matrix rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycNumber) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CycMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| CycNumber::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &CycNumber::one())
    }

    pub fn scalar(n: usize, c: &CycNumber) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { c.clone() } else { CycNumber::zero() })
    }

    pub fn diagonal(entries: &[CycNumber]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                CycNumber::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNumber) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[CycNumber] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<CycNumber>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<CycNumber> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::domain(format!("{what} needs a square matrix")))
        }
    }

    pub fn mul(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.cols != other.rows {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let mut acc = vec![CycNumber::zero(); other.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *slot = a.checked_mul(b)?.checked_add(slot)?;
                    }
                }
            }
            out.extend(acc);
        }
        Ok(CycMatrix {
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    pub fn mul_vec(&self, v: &[CycNumber]) -> Result<Vec<CycNumber>> {
        if v.len() != self.cols {
            return Err(Error::domain("vector length mismatch"));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNumber::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = a.checked_mul(x)?.checked_add(&acc)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    pub fn add(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::domain("matrix shape mismatch in addition"));
        }
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.checked_add(b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn sub(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.add(&other.scale(&CycNumber::from_integer(-1))?)
    }

    pub fn scale(&self, c: &CycNumber) -> Result<CycMatrix> {
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|a| a.checked_mul(c))
                .collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> CycMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Result<CycNumber> {
        self.require_square("trace")?;
        (0..self.rows).try_fold(CycNumber::zero(), |acc, i| acc.checked_add(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNumber::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Exactly one nonzero entry in every row and every column.
    pub fn is_monomial(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut col_hits = vec![0usize; self.cols];
        for i in 0..self.rows {
            let mut hits = 0;
            for (j, v) in self.row(i).iter().enumerate() {
                if !v.is_zero() {
                    hits += 1;
                    col_hits[j] += 1;
                }
            }
            if hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&h| h == 1)
    }

    pub fn diagonal_entries(&self) -> Vec<CycNumber> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn kronecker(&self, other: &CycMatrix) -> Result<CycMatrix> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let a = self.get(i / other.rows, j / other.cols);
                let b = other.get(i % other.rows, j % other.cols);
                data.push(if a.is_zero() || b.is_zero() {
                    CycNumber::zero()
                } else {
                    a.checked_mul(b)?
                });
            }
        }
        Ok(CycMatrix { rows, cols, data })
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<CycMatrix> {
        self.require_square("inverse")?;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = CycMatrix::identity(n).to_rows();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].inv()?;
            for v in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *v = v.checked_mul(&p)?;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for k in 0..n {
                    if !a[col][k].is_zero() {
                        a[r][k] = a[r][k].checked_sub(&f.checked_mul(&a[col][k])?)?;
                    }
                    if !inv[col][k].is_zero() {
                        inv[r][k] = inv[r][k].checked_sub(&f.checked_mul(&inv[col][k])?)?;
                    }
                }
            }
        }
        CycMatrix::from_rows(inv)
    }

    pub fn pow(&self, k: i64) -> Result<CycMatrix> {
        self.require_square("power")?;
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycMatrix::identity(self.rows);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(row_reduce(self.to_rows())?.len())
    }

    /// Basis of the row space in reduced echelon form.
    pub fn row_space(&self) -> Result<Vec<Vec<CycNumber>>> {
        row_reduce(self.to_rows())
    }

    /// P(self), by Horner's rule.
    pub fn eval_poly(&self, p: &CycPoly) -> Result<CycMatrix> {
        self.require_square("polynomial evaluation")?;
        let n = self.rows;
        let mut acc = CycMatrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&CycMatrix::scalar(n, c))?;
        }
        Ok(acc)
    }

    fn eval_poly_on_vec(&self, p: &CycPoly, v: &[CycNumber]) -> Result<Vec<CycNumber>> {
        let mut acc = vec![CycNumber::zero(); v.len()];
        for c in p.coeffs().iter().rev() {
            acc = self.mul_vec(&acc)?;
            for (a, x) in acc.iter_mut().zip(v) {
                if !c.is_zero() && !x.is_zero() {
                    *a = a.checked_add(&c.checked_mul(x)?)?;
                }
            }
        }
        Ok(acc)
    }

    /// Monic generator of the ideal of polynomials annihilating `v`, from the
    /// first linear dependency in the Krylov sequence v, Mv, M²v, ….
    pub fn local_minpoly(&self, v: &[CycNumber]) -> Result<CycPoly> {
        self.require_square("minimal polynomial")?;
        let n = self.rows;
        // (reduced vector, pivot, combination of Krylov vectors)
        let mut basis: Vec<(Vec<CycNumber>, usize, Vec<CycNumber>)> = Vec::new();
        let mut x = v.to_vec();
        for k in 0..=n {
            let mut r = x.clone();
            let mut comb = vec![CycNumber::zero(); k + 1];
            comb[k] = CycNumber::one();
            for (b, piv, bc) in &basis {
                if r[*piv].is_zero() {
                    continue;
                }
                let f = r[*piv].checked_div(&b[*piv])?;
                for (ri, bi) in r.iter_mut().zip(b) {
                    if !bi.is_zero() {
                        *ri = ri.checked_sub(&f.checked_mul(bi)?)?;
                    }
                }
                for (ci, bci) in comb.iter_mut().zip(bc) {
                    if !bci.is_zero() {
                        *ci = ci.checked_sub(&f.checked_mul(bci)?)?;
                    }
                }
            }
            match r.iter().position(|c| !c.is_zero()) {
                None => return CycPoly::new(comb),
                Some(piv) => basis.push((r, piv, comb)),
            }
            x = self.mul_vec(&x)?;
        }
        Err(Error::integrity(
            "krylov_dependency",
            "no linear dependency within n+1 Krylov vectors",
        ))
    }

    /// Minimal polynomial, as the running product P ← P·μ_{P(M)e_i} over the
    /// standard basis vectors e_i (which equals lcm of the local minimal
    /// polynomials).
    pub fn minpoly(&self) -> Result<CycPoly> {
        self.require_square("minimal polynomial")?;
        let n = self.rows;
        let mut p = CycPoly::one();
        for i in 0..n {
            let mut e = vec![CycNumber::zero(); n];
            e[i] = CycNumber::one();
            let w = self.eval_poly_on_vec(&p, &e)?;
            if w.iter().any(|c| !c.is_zero()) {
                p = p.mul(&self.local_minpoly(&w)?);
            }
        }
        Ok(p)
    }

    /// Companion matrix of a monic polynomial: multiplication by z on the
    /// basis 1, z, …, z^{d−1} of ℚ(ζ)[z]/(p).
    pub fn companion(p: &CycPoly) -> Result<CycMatrix> {
        let d = p.degree();
        if d == 0 {
            return Err(Error::domain("companion matrix of a constant polynomial"));
        }
        let c = p.coeffs();
        Ok(Self::from_fn(d, d, |i, j| {
            if j + 1 < d {
                if i == j + 1 {
                    CycNumber::one()
                } else {
                    CycNumber::zero()
                }
            } else {
                -&c[i]
            }
        }))
    }
}

/// Reduced row echelon basis of the span of `rows`.
pub fn row_reduce(mut rows: Vec<Vec<CycNumber>>) -> Result<Vec<Vec<CycNumber>>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut out = 0;
    for col in 0..ncols {
        let Some(piv) = (out..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(out, piv);
        let p = rows[out][col].inv()?;
        for v in rows[out].iter_mut() {
            *v = v.checked_mul(&p)?;
        }
        for r in 0..rows.len() {
            if r == out || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for k in col..ncols {
                if !rows[out][k].is_zero() {
                    rows[r][k] = rows[r][k].checked_sub(&f.checked_mul(&rows[out][k])?)?;
                }
            }
        }
        out += 1;
    }
    rows.truncate(out);
    Ok(rows)
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_mat(rows: &[&[i64]]) -> CycMatrix {
        CycMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| CycNumber::from_integer(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn int_poly(c: &[i64]) -> CycPoly {
        CycPoly::new(c.iter().map(|&v| CycNumber::from_integer(v)).collect()).unwrap()
    }

    #[test]
    fn minpoly_examples() {
        assert_eq!(CycMatrix::identity(2).minpoly().unwrap(), int_poly(&[-1, 1]));
        let fib = int_poly(&[-1, -1, 1]);
        assert_eq!(CycMatrix::companion(&fib).unwrap().minpoly().unwrap(), fib);
        assert_eq!(int_mat(&[&[0, 1], &[1, 0]]).minpoly().unwrap(), int_poly(&[-1, 0, 1]));
    }

    #[test]
    fn minpoly_of_jordan_block_and_scalar_part() {
        // J_2(2) ⊕ [2] has minimal polynomial (z-2)^2
        let m = int_mat(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(m.minpoly().unwrap(), int_poly(&[4, -4, 1]));
        assert!(m.eval_poly(&m.minpoly().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let z = CycNumber::zeta(5, 1).unwrap();
        let m = CycMatrix::from_rows(vec![
            vec![z.clone(), CycNumber::one()],
            vec![CycNumber::from_integer(3), z.pow(2).unwrap()],
        ])
        .unwrap();
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
        assert!(int_mat(&[&[1, 2], &[2, 4]]).inverse().is_err());
        assert_eq!(int_mat(&[&[1, 2], &[2, 4]]).rank().unwrap(), 1);
    }

    #[test]
    fn shape_predicates() {
        let p = int_mat(&[&[0, 2], &[-1, 0]]);
        assert!(p.is_monomial());
        assert!(!int_mat(&[&[1, 1], &[0, 1]]).is_monomial());
        assert!(CycMatrix::identity(3).is_diagonal());
        let k = p.kronecker(&CycMatrix::identity(2)).unwrap();
        assert_eq!(k.rows(), 4);
        assert!(k.is_monomial());
    }
}
