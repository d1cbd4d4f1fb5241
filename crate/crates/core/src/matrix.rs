//! Dense matrices over a [`Semiring`] with star, ω and Büchi-ω operators.
//!
//! `star` and `omega` run a backward sweep that peels one row and column at a
//! time (split 1 / n−1), which costs O(n³). The literal block formulas with an
//! arbitrary split point are kept for cross-checking.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::{Ext, Semiring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    sr: Semiring,
    rows: usize,
    cols: usize,
    data: Vec<Ext>,
}

/// A column vector, typically the result of an ω operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaVector {
    pub semiring: Semiring,
    pub entries: Vec<Ext>,
}

/// Which of the two block forms of the matrix star to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarForm {
    /// Off-diagonal blocks `(a+bd*c)* b d*` and `(d+ca*b)* c a*`.
    Left,
    /// Off-diagonal blocks `a* b (d+ca*b)*` and `d* c (a+bd*c)*`.
    Right,
}

impl Matrix {
    pub fn zero(sr: Semiring, rows: usize, cols: usize) -> Matrix {
        Matrix { sr, rows, cols, data: vec![sr.zero(); rows * cols] }
    }

    pub fn identity(sr: Semiring, n: usize) -> Matrix {
        let mut m = Matrix::zero(sr, n, n);
        for i in 0..n {
            m.set(i, i, sr.one());
        }
        m
    }

    pub fn from_rows(sr: Semiring, rows: Vec<Vec<Ext>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for v in row {
                data.push(sr.check(v)?);
            }
        }
        Ok(Matrix { sr, rows: r, cols: c, data })
    }

    /// Builds a square matrix from a row-major slice of finite values.
    pub fn square(sr: Semiring, n: usize, vals: &[Ext]) -> Result<Matrix> {
        if vals.len() != n * n {
            return Err(Error::Dimension(format!("{} values for {n}x{n}", vals.len())));
        }
        Matrix::from_rows(sr, vals.chunks(n.max(1)).take(n).map(<[Ext]>::to_vec).collect())
    }

    pub fn semiring(&self) -> Semiring {
        self.sr
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Ext {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Ext) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Ext>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[Ext]>::to_vec).collect()
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)))
        }
    }

    fn same_semiring(&self, other: Semiring) -> Result<()> {
        if self.sr == other {
            Ok(())
        } else {
            Err(Error::MixedSemirings(self.sr, other))
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_semiring(other.sr)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.sr.add(a, b)).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_semiring(other.sr)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let sr = self.sr;
        let mut out = Matrix::zero(sr, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if sr.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = sr.add(out.data[idx], sr.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &OmegaVector) -> Result<OmegaVector> {
        self.same_semiring(v.semiring)?;
        if self.cols != v.entries.len() {
            return Err(Error::Dimension(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.entries.len()
            )));
        }
        let sr = self.sr;
        let entries = (0..self.rows)
            .map(|i| sr.sum((0..self.cols).map(|j| sr.mul(self.get(i, j), v.entries[j]))))
            .collect();
        Ok(OmegaVector { semiring: sr, entries })
    }

    /// The submatrix with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut out = Matrix::zero(self.sr, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j));
            }
        }
        out
    }

    /// Assembles `[[tl, tr], [bl, br]]`.
    pub fn from_blocks(tl: &Matrix, tr: &Matrix, bl: &Matrix, br: &Matrix) -> Matrix {
        let (n1, n2) = (tl.rows, br.rows);
        let (m1, m2) = (tl.cols, br.cols);
        let mut out = Matrix::zero(tl.sr, n1 + n2, m1 + m2);
        for (blk, r0, c0) in [(tl, 0, 0), (tr, 0, m1), (bl, n1, 0), (br, n1, m1)] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    out.set(r0 + i, c0 + j, blk.get(i, j));
                }
            }
        }
        out
    }

    fn column(&self, v: &[Ext]) -> Matrix {
        Matrix { sr: self.sr, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// `M* = Σ_j M^j`.
    pub fn star(&self) -> Result<Matrix> {
        self.require_square()?;
        Ok(self.sweep(false).0)
    }

    /// `M^ω`, the infinite-path sum from every row.
    pub fn omega(&self) -> Result<OmegaVector> {
        self.require_square()?;
        Ok(OmegaVector { semiring: self.sr, entries: self.sweep(true).1 })
    }

    /// Backward sweep computing the star and, optionally, the ω vector.
    fn sweep(&self, with_omega: bool) -> (Matrix, Vec<Ext>) {
        let sr = self.sr;
        let n = self.rows;
        // star and omega of the trailing block k+1..n
        let mut s: Vec<Ext> = Vec::new();
        let mut w: Vec<Ext> = Vec::new();
        for k in (0..n).rev() {
            let r = n - k - 1;
            let b = |j: usize| self.get(k, k + 1 + j);
            let c = |i: usize| self.get(k + 1 + i, k);
            let mut bs = vec![sr.zero(); r];
            let mut sc = vec![sr.zero(); r];
            for l in 0..r {
                let bl = b(l);
                let cl = c(l);
                for j in 0..r {
                    if !sr.is_zero(bl) {
                        bs[j] = sr.add(bs[j], sr.mul(bl, s[l * r + j]));
                    }
                    if !sr.is_zero(cl) {
                        sc[j] = sr.add(sc[j], sr.mul(s[j * r + l], cl));
                    }
                }
            }
            let x = sr.add(self.get(k, k), sr.sum((0..r).map(|j| sr.mul(bs[j], c(j)))));
            let xs = sr.star(x);
            let r1 = r + 1;
            let mut s2 = vec![sr.zero(); r1 * r1];
            s2[0] = xs;
            for j in 0..r {
                s2[1 + j] = sr.mul(xs, bs[j]);
                s2[(1 + j) * r1] = sr.mul(sc[j], xs);
            }
            for i in 0..r {
                let left = sr.mul(sc[i], xs);
                for j in 0..r {
                    s2[(1 + i) * r1 + 1 + j] = sr.add(s[i * r + j], sr.mul(left, bs[j]));
                }
            }
            if with_omega {
                let bw = sr.sum((0..r).map(|j| sr.mul(b(j), w[j])));
                let top = sr.add(sr.omega(x), sr.mul(xs, bw));
                let mut w2 = Vec::with_capacity(r1);
                w2.push(top);
                for i in 0..r {
                    w2.push(sr.add(w[i], sr.mul(sc[i], top)));
                }
                w = w2;
            }
            s = s2;
        }
        (Matrix { sr, rows: n, cols: n, data: s }, w)
    }

    /// `M^{ω,t}`: infinite paths visiting the first `t` indices infinitely often.
    pub fn omega_t(&self, t: usize) -> Result<OmegaVector> {
        let n = self.require_square()?;
        if t > n {
            return Err(Error::IndexOutOfRange { index: t, limit: n });
        }
        let sr = self.sr;
        if t == 0 {
            return Ok(OmegaVector { semiring: sr, entries: vec![sr.zero(); n] });
        }
        let (a, b, c, d) = self.quarters(t);
        let ds = d.sweep(false).0;
        let dsc = ds.mul(&c)?;
        let top = a.add(&b.mul(&dsc)?)?.sweep(true).1;
        let bottom = dsc.mul(&self.column(&top))?;
        let mut entries = top;
        entries.extend(bottom.data);
        Ok(OmegaVector { semiring: sr, entries })
    }

    /// Computes `M^{ω,t}` through the decomposition with a `k×k` top-left block:
    /// `((a+bd*c)^{ω,t}; d*c (a+bd*c)^{ω,t})`.
    pub fn omega_t_alt(&self, t: usize, k: usize) -> Result<OmegaVector> {
        let n = self.require_square()?;
        if t > k || k > n {
            return Err(Error::IndexOutOfRange { index: t.max(k), limit: n });
        }
        if k == 0 {
            return Ok(OmegaVector { semiring: self.sr, entries: vec![self.sr.zero(); n] });
        }
        let (a, b, c, d) = self.quarters(k);
        let dsc = d.sweep(false).0.mul(&c)?;
        let top = a.add(&b.mul(&dsc)?)?.omega_t(t)?.entries;
        let bottom = dsc.mul(&self.column(&top))?;
        let mut entries = top;
        entries.extend(bottom.data);
        Ok(OmegaVector { semiring: self.sr, entries })
    }

    fn quarters(&self, n1: usize) -> (Matrix, Matrix, Matrix, Matrix) {
        let n = self.rows;
        (
            self.block(0, n1, 0, n1),
            self.block(0, n1, n1, n),
            self.block(n1, n, 0, n1),
            self.block(n1, n, n1, n),
        )
    }

    /// The literal block formula for `M*` with top-left block of size `n1`.
    pub fn star_split(&self, n1: usize, form: StarForm) -> Result<Matrix> {
        let n = self.require_square()?;
        if n1 == 0 || n1 >= n {
            return self.star();
        }
        let (a, b, c, d) = self.quarters(n1);
        let as_ = a.star()?;
        let ds = d.star()?;
        let top = a.add(&b.mul(&ds)?.mul(&c)?)?.star()?;
        let bot = d.add(&c.mul(&as_)?.mul(&b)?)?.star()?;
        let (tr, bl) = match form {
            StarForm::Left => (top.mul(&b)?.mul(&ds)?, bot.mul(&c)?.mul(&as_)?),
            StarForm::Right => (as_.mul(&b)?.mul(&bot)?, ds.mul(&c)?.mul(&top)?),
        };
        Ok(Matrix::from_blocks(&top, &tr, &bl, &bot))
    }

    /// The literal block formula for `M^ω` with top-left block of size `n1`.
    pub fn omega_split(&self, n1: usize) -> Result<OmegaVector> {
        let n = self.require_square()?;
        if n1 == 0 || n1 >= n {
            return self.omega();
        }
        let (a, b, c, d) = self.quarters(n1);
        let x = a.add(&b.mul(&d.star()?)?.mul(&c)?)?;
        let y = d.add(&c.mul(&a.star()?)?.mul(&b)?)?;
        let dw = self.column(&d.omega()?.entries);
        let aw = self.column(&a.omega()?.entries);
        let top = self
            .column(&x.omega()?.entries)
            .add(&x.star()?.mul(&b)?.mul(&dw)?)?;
        let bottom = self
            .column(&y.omega()?.entries)
            .add(&y.star()?.mul(&c)?.mul(&aw)?)?;
        let mut entries = top.data;
        entries.extend(bottom.data);
        Ok(OmegaVector { semiring: self.sr, entries })
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson { semiring: self.sr, n: self.rows, rows: self.to_rows() }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Matrix> {
        let m = Matrix::from_rows(j.semiring, j.rows.clone())?;
        if m.rows != j.n || (m.rows > 0 && m.cols != j.n) {
            return Err(Error::Dimension(format!("declared n = {} does not match rows", j.n)));
        }
        Ok(Matrix { cols: j.n, ..m })
    }
}

impl OmegaVector {
    pub fn as_column(&self) -> Matrix {
        Matrix {
            sr: self.semiring,
            rows: self.entries.len(),
            cols: 1,
            data: self.entries.clone(),
        }
    }
}

/// JSON form `{"semiring": ..., "n": n, "rows": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub semiring: Semiring,
    pub n: usize,
    pub rows: Vec<Vec<Ext>>,
}
