//! Dense matrices over Laurent polynomials: products, exact determinants via
//! fraction-free elimination, and adjugates.

use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::laurent::{CoeffDomain, LaurentPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    domain: CoeffDomain,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(rows: usize, cols: usize, dom: &CoeffDomain) -> Self {
        LaurentMatrix {
            rows,
            cols,
            domain: *dom,
            entries: vec![LaurentPoly::zero(dom); rows * cols],
        }
    }

    pub fn identity(n: usize, dom: &CoeffDomain) -> Self {
        let mut m = Self::zero(n, n, dom);
        for i in 0..n {
            *m.at_mut(i, i) = LaurentPoly::one(dom);
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        dom: &CoeffDomain,
        mut f: impl FnMut(usize, usize) -> LaurentPoly,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                debug_assert!(e.domain() == *dom);
                entries.push(e);
            }
        }
        LaurentMatrix {
            rows,
            cols,
            domain: *dom,
            entries,
        }
    }

    pub fn from_rows(dom: &CoeffDomain, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::MatrixShape("ragged rows".into()));
        }
        for row in &rows {
            for e in row {
                if e.domain() != *dom {
                    return Err(Error::DomainMismatch(
                        dom.name().into(),
                        e.domain().name().into(),
                    ));
                }
            }
        }
        Ok(LaurentMatrix {
            rows: r,
            cols: c,
            domain: *dom,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.domain, |i, j| {
            self.at(j, i).clone()
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::MatrixShape(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = a.add(b)?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.neg();
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::MatrixShape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.rows, rhs.cols, &self.domain);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b)?)?;
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &LaurentPoly) -> Result<Self> {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.mul(s)?;
        }
        Ok(out)
    }

    /// Deletes row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        Self::from_fn(self.rows - 1, self.cols - 1, &self.domain, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            let cc = if c < j { c } else { c + 1 };
            self.at(rr, cc).clone()
        })
    }

    /// Exact determinant. Exact domains clear each row by a unit monomial,
    /// run fraction-free (Bareiss) elimination and restore the unit factor;
    /// the complex domain uses partially pivoted Gaussian elimination.
    pub fn laurent_det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let dom = self.domain;
        if n == 0 {
            return Ok(LaurentPoly::one(&dom));
        }
        if !dom.is_exact() {
            return self.det_numeric();
        }
        // A matrix of x <-> 1/x symmetric entries (the zero-sheet pairings) is
        // eliminated in the variable t = x + 1/x, which halves every degree
        // span; substituting t back is a ring homomorphism, so the
        // determinant is unchanged. The same reduction applies one level down
        // when every q-coefficient is symmetric (a polynomial in q + 1/q).
        let nonconstant = |p: &LaurentPoly| p.min_max_deg().is_ok_and(|(_, hi)| hi > 0);
        if n > 2
            && self.entries.iter().all(LaurentPoly::is_symmetric)
            && self.entries.iter().any(nonconstant)
        {
            let in_t = Self::from_fn(n, n, &dom, |i, j| {
                self.at(i, j).to_t_variable().expect("checked symmetric")
            });
            let det_t = in_t.laurent_det()?;
            return det_t.substitute(&LaurentPoly::t_elem(&dom));
        }
        if n > 2 && self.entries.iter().all(q_symmetric) {
            let folded = Self::from_fn(n, n, &dom, |i, j| {
                q_fold(self.at(i, j)).expect("checked q-symmetric")
            });
            let det_folded = folded.det_bareiss()?;
            return Ok(q_unfold(&det_folded));
        }
        self.det_bareiss()
    }

    fn det_bareiss(&self) -> Result<LaurentPoly> {
        let n = self.rows;
        let dom = self.domain;

        // Clear row units so every entry has nonnegative degree in x.
        let mut unit_shift = 0i64;
        let mut m: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        for i in 0..n {
            let row_min = (0..n)
                .filter_map(|j| self.at(i, j).min_max_deg().ok().map(|(lo, _)| lo))
                .min();
            let Some(row_min) = row_min else {
                return Ok(LaurentPoly::zero(&dom)); // a zero row
            };
            unit_shift += row_min;
            m.push((0..n).map(|j| self.at(i, j).shift(-row_min)).collect());
        }

        let mut sign = 1i64;
        let mut prev = LaurentPoly::one(&dom);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(LaurentPoly::zero(&dom));
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k].mul(&m[i][j])?.sub(&m[i][k].mul(&m[k][j])?)?;
                    m[i][j] = prev.exact_div(&num).expect("Bareiss division is exact");
                }
                m[i][k] = LaurentPoly::zero(&dom);
            }
            prev = m[k][k].clone();
        }
        let mut det = m[n - 1][n - 1].shift(unit_shift);
        if sign < 0 {
            det = det.neg();
        }
        Ok(det)
    }

    fn det_numeric(&self) -> Result<LaurentPoly> {
        let n = self.rows;
        let dom = self.domain;
        let eps = dom.eps();
        let mut m: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        // The numeric path is used on matrices of complex scalars; polynomial
        // entries fall back to fraction-free elimination with tolerant division.
        let scalar = |p: &LaurentPoly| -> Option<Complex64> {
            match p.min_max_deg() {
                Err(_) => Some(Complex64::new(0.0, 0.0)),
                Ok((0, 0)) => p.eval_complex(Complex64::new(1.0, 0.0), None).ok(),
                _ => None,
            }
        };
        if self.entries.iter().any(|p| scalar(p).is_none()) {
            let mut sign = 1i64;
            let mut prev = LaurentPoly::one(&dom);
            for k in 0..n.saturating_sub(1) {
                if m[k][k].is_zero() {
                    let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                        return Ok(LaurentPoly::zero(&dom));
                    };
                    m.swap(k, swap);
                    sign = -sign;
                }
                for i in k + 1..n {
                    for j in k + 1..n {
                        let num = m[k][k].mul(&m[i][j])?.sub(&m[i][k].mul(&m[k][j])?)?;
                        m[i][j] = prev.exact_div(&num)?;
                    }
                    m[i][k] = LaurentPoly::zero(&dom);
                }
                prev = m[k][k].clone();
            }
            let mut det = m[n - 1][n - 1].clone();
            if sign < 0 {
                det = det.neg();
            }
            return Ok(det);
        }
        let mut a: Vec<Vec<Complex64>> = m
            .iter()
            .map(|row| row.iter().map(|p| scalar(p).unwrap()).collect())
            .collect();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let (piv, norm) = (k..n)
                .map(|i| (i, a[i][k].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if norm <= eps {
                return Ok(LaurentPoly::zero(&dom));
            }
            if piv != k {
                a.swap(k, piv);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    let v = a[k][j];
                    a[i][j] -= f * v;
                }
            }
        }
        let mut out = LaurentPoly::zero(&dom);
        out = out.add(&scale_complex(&dom, det))?;
        Ok(out)
    }

    /// The adjugate `N` with `N * self = self * N = det(self) * I`, built from
    /// signed cofactors.
    pub fn adjugate(&self) -> Result<LaurentMatrix> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        if n == 1 {
            return Ok(Self::identity(1, &self.domain));
        }
        let mut out = Self::zero(n, n, &self.domain);
        for i in 0..n {
            for j in 0..n {
                let mut c = self.minor(j, i).laurent_det()?;
                if (i + j) % 2 == 1 {
                    c = c.neg();
                }
                *out.at_mut(i, j) = c;
            }
        }
        Ok(out)
    }

    pub fn eq_eps(&self, rhs: &Self) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self
                .entries
                .iter()
                .zip(&rhs.entries)
                .all(|(a, b)| a.eq_eps(b))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| {
                    Value::Array((0..self.cols).map(|j| self.at(i, j).to_json()).collect())
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value, dom: &CoeffDomain) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let cells = row
                .as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
            out.push(
                cells
                    .iter()
                    .map(|c| LaurentPoly::from_json(c, dom))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Self::from_rows(dom, out)
    }

    /// Plain-text table with aligned columns.
    pub fn fmt_table(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at(i, j).fmt_with_var("x"))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for row in &cells {
            out.push('[');
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{:>width$}", cell, width = widths[j]));
            }
            out.push_str("]\n");
        }
        out
    }
}

fn q_symmetric(p: &LaurentPoly) -> bool {
    match p {
        LaurentPoly::LaurentInQ(p) => p.terms().all(|(_, c)| c.is_symmetric(0.0)),
        _ => false,
    }
}

/// Rewrites every (symmetric) q-coefficient as a polynomial in `q + 1/q`.
fn q_fold(p: &LaurentPoly) -> Option<LaurentPoly> {
    match p {
        LaurentPoly::LaurentInQ(p) => {
            let mut terms = Vec::new();
            for (e, c) in p.terms() {
                terms.push((e, c.to_t_variable(0.0)?));
            }
            Some(LaurentPoly::LaurentInQ(crate::poly::Poly::from_terms(
                &terms, 0.0,
            )))
        }
        _ => None,
    }
}

/// Substitutes `q + 1/q` back into every folded coefficient.
fn q_unfold(p: &LaurentPoly) -> LaurentPoly {
    match p {
        LaurentPoly::LaurentInQ(p) => {
            let tq = crate::poly::QPoly::from_terms(
                &[(1, crate::rat::Rat::ONE), (-1, crate::rat::Rat::ONE)],
                0.0,
            );
            let mut terms = Vec::new();
            for (e, c) in p.terms() {
                terms.push((
                    e,
                    c.substitute_poly(&tq, 0.0)
                        .expect("folded coefficients are ordinary polynomials"),
                ));
            }
            LaurentPoly::LaurentInQ(crate::poly::Poly::from_terms(&terms, 0.0))
        }
        _ => unreachable!("q-fold only exists in the symbolic domain"),
    }
}

fn scale_complex(dom: &CoeffDomain, c: Complex64) -> LaurentPoly {
    match dom {
        CoeffDomain::Complex { q, tol } => LaurentPoly::Complex {
            p: crate::poly::Poly::constant(c),
            q: *q,
            tol: *tol,
        },
        _ => unreachable!("numeric scaling in exact domain"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn ratm(rows: Vec<Vec<i64>>) -> LaurentMatrix {
        let dom = CoeffDomain::Rational;
        LaurentMatrix::from_rows(
            &dom,
            rows.into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|c| LaurentPoly::from_rat_terms(&dom, &[(0, Rat::from_i64(c))]))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_trivial() {
        assert_eq!(
            ratm(vec![vec![1]]).laurent_det().unwrap(),
            LaurentPoly::one(&CoeffDomain::Rational)
        );
        let m = ratm(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(
            m.laurent_det().unwrap(),
            LaurentPoly::from_int_terms(&CoeffDomain::Rational, &[(0, -2)])
        );
    }

    #[test]
    fn det_with_pivot_swap_and_zero() {
        let m = ratm(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(
            m.laurent_det().unwrap(),
            LaurentPoly::from_int_terms(&CoeffDomain::Rational, &[(0, -1)])
        );
        let z = ratm(vec![vec![0, 0], vec![1, 2]]);
        assert!(z.laurent_det().unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let dom = CoeffDomain::LaurentInQ;
        let m = LaurentMatrix::from_rows(
            &dom,
            vec![
                vec![LaurentPoly::delta(&dom).unwrap(), LaurentPoly::x_pow(&dom, -1)],
                vec![LaurentPoly::zero(&dom), LaurentPoly::t_elem(&dom)],
            ],
        )
        .unwrap();
        let back = LaurentMatrix::from_json(&m.to_json(), &dom).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn adjugate_times_matrix_is_det() {
        let dom = CoeffDomain::LaurentInQ;
        let x = |e: i64| LaurentPoly::x_pow(&dom, e);
        let d = LaurentPoly::delta(&dom).unwrap();
        let m = LaurentMatrix::from_rows(
            &dom,
            vec![
                vec![d.clone(), LaurentPoly::one(&dom), x(-1)],
                vec![LaurentPoly::one(&dom), d.clone(), x(1)],
                vec![x(1), x(-1), d.clone()],
            ],
        )
        .unwrap();
        let det = m.laurent_det().unwrap();
        let adj = m.adjugate().unwrap();
        let prod = adj.mul(&m).unwrap();
        let expect = LaurentMatrix::identity(3, &dom).scale(&det).unwrap();
        assert_eq!(prod, expect);
        assert_eq!(m.mul(&adj).unwrap(), expect);
    }
}
