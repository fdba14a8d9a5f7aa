//! Rational and Laurent-polynomial matrices and their ranks.

use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::laurent::LaurentPoly;
use crate::rational::{q, Q};
use crate::Error;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rank by Gaussian elimination over the rationals.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Q>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = a[rank][col].recip();
            let pivot = a[rank].clone();
            for row in a.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let f = &row[col] * &inv;
                for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &f * y;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn nullity_left(&self) -> usize {
        self.rows - self.rank()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(crate::rational::fmt_q).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense row-major matrix of Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(LaurentMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: LaurentPoly) {
        self.data[i * self.cols + j] = f;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn eval(&self, point: &Q) -> Result<RatMatrix, Error> {
        let data = self.data.iter().map(|f| f.eval(point)).collect::<Result<_, _>>()?;
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Rank over the field of rational functions in `z`.
    pub fn rank_fraction_field(&self) -> usize {
        rank_fraction_field(self)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense polynomial over the rationals, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<Q>);

impl Poly {
    fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    fn one() -> Self {
        Poly(vec![Q::one()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).cloned().unwrap_or_else(Q::zero);
        Poly::new((0..n).map(|i| get(self, i) - get(other, i)).collect())
    }

    /// Quotient of an exact division; `None` if the remainder is nonzero.
    fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly(Vec::new()));
        }
        if self.0.len() < d.0.len() {
            return None;
        }
        let mut rem = self.0.clone();
        let lead = d.0.last().expect("nonzero").recip();
        let mut quo = vec![Q::zero(); rem.len() - d.0.len() + 1];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + d.0.len() - 1] * &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            quo[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| Poly::new(quo))
    }
}

/// Multiplies every row by the power of `z` that makes its lowest exponent zero.
fn clear_row_powers(m: &LaurentMatrix) -> Vec<Vec<Poly>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let lo = row.iter().filter_map(LaurentPoly::min_exp).min().unwrap_or(0);
            row.iter()
                .map(|f| {
                    if f.is_zero() {
                        Poly(Vec::new())
                    } else {
                        let shift = f.min_exp().expect("nonzero") - lo;
                        let mut dense = vec![Q::zero(); shift as usize];
                        dense.extend(f.to_dense());
                        Poly::new(dense)
                    }
                })
                .collect()
        })
        .collect()
}

/// Rank over `Q(z)` by fraction-free (Bareiss) elimination over `Q[z]`.
///
/// Rows are first multiplied by units `z^k` so every entry is a polynomial.
/// The pivot is the lowest-degree nonzero entry in the current column, ties to
/// the lowest row index; columns with no nonzero candidate are skipped.
pub fn rank_fraction_field(m: &LaurentMatrix) -> usize {
    let mut a = clear_row_powers(m);
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = Poly::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let piv = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| (a[r][col].degree(), r));
        let Some(piv) = piv else { continue };
        a.swap(rank, piv);
        let pivot = a[rank][col].clone();
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = pivot.mul(&a[r][c]).sub(&a[r][col].mul(&a[rank][c]));
                a[r][c] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            a[r][col] = Poly(Vec::new());
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Maximum exact rank of `m` evaluated at the given nonzero points.
pub fn rank_by_evaluation(m: &LaurentMatrix, points: &[Q]) -> Result<usize, Error> {
    let mut best = 0;
    for x in points {
        best = best.max(m.eval(x)?.rank());
    }
    Ok(best)
}

/// Small-height evaluation points: `±1, ±2, ±3, ±5, ±7, ±1/2, ±1/3`.
pub fn base_eval_points() -> Vec<Q> {
    let mut out = Vec::new();
    for (n, d) in [(1, 1), (2, 1), (3, 1), (5, 1), (7, 1), (1, 2), (1, 3)] {
        out.push(q(n, d));
        out.push(q(-n, d));
    }
    out
}

/// Fallback points once the base set has been used up.
fn extra_eval_points() -> Vec<Q> {
    let mut out = Vec::new();
    for (n, d) in [(4, 1), (2, 3), (3, 2), (1, 5), (5, 2), (2, 5), (6, 1), (1, 7), (7, 3), (3, 7)] {
        out.push(q(n, d));
        out.push(q(-n, d));
    }
    out
}

/// Outcome of the evaluation-rank oracle with redraws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub agreed: bool,
    pub draws_used: usize,
    /// Largest evaluated rank seen over all draws.
    pub best: usize,
}

/// Compares `expected` against the evaluation rank, drawing `per_draw` fresh
/// points at a time (never reusing a point) for at most `max_draws` draws.
pub fn evaluation_oracle<R: Rng>(
    m: &LaurentMatrix,
    expected: usize,
    max_draws: usize,
    per_draw: usize,
    rng: &mut R,
) -> OracleOutcome {
    let mut pool = base_eval_points();
    let mut spare = extra_eval_points();
    let mut best = 0;
    for draw in 1..=max_draws {
        if pool.len() < per_draw {
            pool.append(&mut spare);
        }
        pool.shuffle(rng);
        let take = per_draw.min(pool.len());
        let pts: Vec<Q> = pool.drain(..take).collect();
        let r = rank_by_evaluation(m, &pts).expect("pool excludes zero");
        best = best.max(r);
        if best == expected {
            return OracleOutcome { agreed: true, draws_used: draw, best };
        }
    }
    OracleOutcome { agreed: false, draws_used: max_draws, best }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn z(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(qi(1), k)
    }

    fn c(x: i64) -> LaurentPoly {
        LaurentPoly::constant(qi(x))
    }

    #[test]
    fn identity_rank() {
        let m = LaurentMatrix::identity(3);
        assert_eq!(rank_fraction_field(&m), 3);
        assert_eq!(rank_by_evaluation(&m, &[qi(2)]).unwrap(), 3);
    }

    #[test]
    fn one_nonzero_row() {
        let m = LaurentMatrix::from_rows(vec![
            vec![&c(1) - &z(1), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), LaurentPoly::zero()],
        ])
        .unwrap();
        assert_eq!(rank_fraction_field(&m), 1);
    }

    #[test]
    fn dependent_laurent_rows() {
        let m = LaurentMatrix::from_rows(vec![vec![c(1), z(1)], vec![z(-1), c(1)]]).unwrap();
        assert_eq!(rank_fraction_field(&m), 1);
        assert_eq!(rank_by_evaluation(&m, &base_eval_points()).unwrap(), 1);
    }

    #[test]
    fn unlucky_point() {
        let m = LaurentMatrix::from_rows(vec![vec![&c(1) - &z(1)]]).unwrap();
        assert_eq!(rank_by_evaluation(&m, &[qi(1)]).unwrap(), 0);
        assert_eq!(rank_by_evaluation(&m, &[qi(1), qi(2)]).unwrap(), 1);
        assert_eq!(rank_fraction_field(&m), 1);
        assert!(rank_by_evaluation(&m, &[qi(0)]).is_err());
    }

    #[test]
    fn skipped_columns_still_divide_exactly() {
        // Column 0 vanishes, column 1 is rank one, column 2 carries the second pivot.
        let m = LaurentMatrix::from_rows(vec![
            vec![LaurentPoly::zero(), &c(1) + &z(1), z(2)],
            vec![LaurentPoly::zero(), &(&c(1) + &z(1)) * &z(3), &c(2) - &z(-1)],
            vec![LaurentPoly::zero(), &(&c(1) + &z(1)) * &c(3), &z(2) * &c(3)],
        ])
        .unwrap();
        assert_eq!(rank_fraction_field(&m), 2);
        assert_eq!(rank_fraction_field(&m.transpose()), 2);
    }

    #[test]
    fn rational_rank() {
        let m = RatMatrix::from_rows(vec![
            vec![qi(1), qi(2), qi(3)],
            vec![qi(2), qi(4), qi(6)],
            vec![qi(0), qi(1), qi(1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullity_left(), 1);
        assert_eq!(RatMatrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn poly_division() {
        let p = Poly::new(vec![qi(-1), qi(0), qi(1)]);
        let d = Poly::new(vec![qi(1), qi(1)]);
        assert_eq!(p.div_exact(&d), Some(Poly::new(vec![qi(-1), qi(1)])));
        assert_eq!(d.div_exact(&p), None);
        assert_eq!(Poly::new(vec![qi(1), qi(0), qi(1)]).div_exact(&d), None);
    }
}
