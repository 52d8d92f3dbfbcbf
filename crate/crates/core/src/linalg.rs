//! Exact rational and integer linear algebra on small dense matrices.
//!
//! Everything here works on dimensions up to about a dozen, so the
//! representations are plain `Vec`s. Square solves go through fraction-free
//! (Bareiss) elimination on an integer-scaled copy of the system; lattice
//! bookkeeping uses Hermite and Smith normal forms over `i64`.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], s: Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Σ cᵢ vᵢ over integer or rational coefficients.
pub fn combine<'a, I>(dim: usize, terms: I) -> Vec<Q>
where
    I: IntoIterator<Item = (Q, &'a [Q])>,
{
    let mut out = zeros(dim);
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Least common multiple of the denominators (1 for an empty input).
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Q>>(xs: I) -> i64 {
    xs.into_iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

/// `true` when the rational is an integer.
pub fn is_integer(x: &Q) -> bool {
    *x.denom() == 1
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - x.floor()
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend_from_slice(row);
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Q>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Exact determinant (square only).
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let (m, s) = integer_scaled(self);
        let d = bareiss_det(m);
        // det(sA) = s^n det(A)
        let sn = (0..self.rows).fold(Q::one(), |acc, _| acc * q(s));
        Q::from_integer(i64::try_from(d).expect("determinant overflow")) / sn
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            cols.push(solve(self, &unit(n, j))?);
        }
        Some(Self::from_cols(&cols))
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// Multiply by the lcm of all denominators; returns the integer matrix and the scale.
fn integer_scaled(a: &QMatrix) -> (Vec<Vec<i128>>, i64) {
    let s = denominator_lcm(a.data.iter());
    let m = (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| i128::from((x * q(s)).to_integer()))
                .collect()
        })
        .collect();
    (m, s)
}

fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Solve `A x = b` exactly for square nonsingular `A` by fraction-free elimination.
///
/// Each row of the augmented system is scaled to integers separately, Bareiss
/// elimination brings it to upper triangular form with exact integer
/// divisions, and the back substitution runs over the rationals.
pub fn solve(a: &QMatrix, b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(a.rows, a.cols, "square system expected");
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let n = a.rows;
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let s = denominator_lcm(a.row(i).iter().chain(std::iter::once(&b[i])));
            let sq = q(s);
            let mut row: Vec<i128> = a
                .row(i)
                .iter()
                .map(|x| i128::from((x * sq).to_integer()))
                .collect();
            row.push(i128::from((b[i] * sq).to_integer()));
            row
        })
        .collect();
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let r = (k + 1..n).find(|&r| m[r][k] != 0)?;
            m.swap(k, r);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    let to_q = |x: i128| Q::from_integer(i64::try_from(x).expect("elimination overflow"));
    let mut x = zeros(n);
    for i in (0..n).rev() {
        let mut acc = to_q(m[i][n]);
        for j in i + 1..n {
            acc -= to_q(m[i][j]) * x[j];
        }
        x[i] = acc / to_q(m[i][i]);
    }
    Some(x)
}

/// Coordinates of `x` with respect to a family of linearly independent
/// vectors (given as rows), or `None` if `x` is not in their span.
pub fn coordinates(basis: &[Vec<Q>], x: &[Q]) -> Option<Vec<Q>> {
    let r = basis.len();
    if r == 0 {
        return is_zero(x).then(Vec::new);
    }
    let mut gram = QMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            gram[(i, j)] = dot(&basis[i], &basis[j]);
        }
    }
    let rhs: Vec<Q> = basis.iter().map(|b| dot(b, x)).collect();
    let c = solve(&gram, &rhs)?;
    let back = combine(x.len(), c.iter().copied().zip(basis.iter().map(Vec::as_slice)));
    (back == x).then_some(c)
}

/// Integer matrix as a list of rows.
pub type IMatrix = Vec<Vec<i64>>;

pub fn identity_i(n: usize) -> IMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mul_i(a: &IMatrix, b: &IMatrix) -> IMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Row-style Hermite normal form: returns the nonzero rows of an upper
/// echelon basis of the row lattice, with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(mut m: IMatrix) -> IMatrix {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        // Euclid down the column until only the pivot row is nonzero.
        loop {
            let piv = (r..m.len())
                .filter(|&i| m[i][c] != 0)
                .min_by_key(|&i| m[i][c].abs());
            let Some(p) = piv else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c] != 0 {
                    let f = Integer::div_floor(&m[i][c], &m[r][c]);
                    for j in 0..cols {
                        m[i][j] -= f * m[r][j];
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for x in m[r].iter_mut() {
                *x = -*x;
            }
        }
        let p = m[r][c];
        for i in 0..r {
            let f = Integer::div_floor(&m[i][c], &p);
            if f != 0 {
                for j in 0..cols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|&x| x != 0));
    m
}

/// Smith normal form `U·A·V = D` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal entries `d₁ | d₂ | …` (nonnegative), length `min(rows, cols)`.
    pub diagonal: Vec<i64>,
    pub u: IMatrix,
    pub v: IMatrix,
}

pub fn smith(a: &IMatrix) -> Smith {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let mut u = identity_i(rows);
    let mut v = identity_i(cols);

    let swap_cols = |m: &mut IMatrix, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    // col_j -= f * col_i
    let col_op = |m: &mut IMatrix, i: usize, j: usize, f: i64| {
        for row in m.iter_mut() {
            row[j] -= f * row[i];
        }
    };
    // row_j -= f * row_i
    let row_op = |m: &mut IMatrix, i: usize, j: usize, f: i64| {
        let src = m[i].clone();
        for (x, s) in m[j].iter_mut().zip(src) {
            *x -= f * s;
        }
    };

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);

            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = Integer::div_floor(&m[i][t], &p);
                if f != 0 {
                    row_op(&mut m, t, i, f);
                    row_op(&mut u, t, i, f);
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = Integer::div_floor(&m[t][j], &p);
                if f != 0 {
                    col_op(&mut m, t, j, f);
                    col_op(&mut v, t, j, f);
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row t and go again.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_op(&mut m, i, t, -1);
                    row_op(&mut u, i, t, -1);
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diagonal = (0..rows.min(cols)).map(|i| m[i][i]).collect();
    Smith { diagonal, u, v }
}

/// Integer vector from rationals, or `None` if some entry is fractional.
pub fn to_integers(x: &[Q]) -> Option<Vec<i64>> {
    x.iter()
        .map(|v| is_integer(v).then(|| v.to_integer()))
        .collect()
}

pub fn abs_q(x: Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_system() {
        let a = QMatrix::from_rows(&[vec![q(2), q(1)], vec![q(1), q(3)]]);
        let x = solve(&a, &[q(3), qf(7, 2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(3), qf(7, 2)]);
    }

    #[test]
    fn singular_system_rejected() {
        let a = QMatrix::from_rows(&[vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(solve(&a, &[q(1), q(1)]).is_none());
        assert_eq!(a.det(), q(0));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = QMatrix::from_rows(&[
            vec![q(2), q(-1), q(0)],
            vec![q(-1), q(2), q(-1)],
            vec![q(0), q(-1), q(2)],
        ]);
        assert_eq!(a.det(), q(4));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(inv[(0, 0)], qf(3, 4));
    }

    #[test]
    fn coordinates_outside_span() {
        let basis = vec![vec![q(1), q(-1), q(0)]];
        assert_eq!(coordinates(&basis, &[q(2), q(-2), q(0)]), Some(vec![q(2)]));
        assert_eq!(coordinates(&basis, &[q(1), q(0), q(0)]), None);
    }

    #[test]
    fn hermite_of_redundant_generators() {
        let h = hermite_rows(vec![vec![2, 0], vec![0, 2], vec![1, 1]]);
        assert_eq!(h.len(), 2);
        // lattice has index 2 in Z^2
        assert_eq!(h[0][0] * h[1][1], 2);
    }

    #[test]
    fn smith_of_cartan_a3() {
        let a = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        let s = smith(&a);
        assert_eq!(s.diagonal, vec![1, 1, 4]);
        let d = mul_i(&mul_i(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { s.diagonal[i] } else { 0 });
            }
        }
    }

    #[test]
    fn smith_d4_cartan() {
        let a = vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ];
        assert_eq!(smith(&a).diagonal, vec![1, 1, 2, 2]);
    }
}
