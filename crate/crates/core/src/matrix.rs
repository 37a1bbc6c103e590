//! Dense exact matrices and the constructions of `A_{n,m}` and
//! `B_{n,m} = A·Aᵀ`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::count::xi_data;
use crate::error::{domain, Error, Result};
use crate::modular::{crt_combine, euler_phi, PrimePower};
use crate::projective::{KPartition, Point, ProjectiveSpace};
use crate::scalar::Scalar;

/// Dense row-major matrix, optionally labeled by projective points.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    row_labels: Option<Vec<Point>>,
    col_labels: Option<Vec<Point>>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_vec(rows.len(), cols, rows.concat())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[Vec<T>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != len) {
            return Err(Error::Dimension(format!("columns must have length {len}")));
        }
        Ok(Self::from_fn(len, columns.len(), |r, c| {
            columns[c][r].clone()
        }))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, size, |r, c| if r == c { T::one() } else { T::zero() })
    }

    /// `J`: every entry one.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::one())
    }

    pub fn with_labels(mut self, rows: Vec<Point>, cols: Vec<Point>) -> Result<Self> {
        if rows.len() != self.rows || cols.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{} row and {} column labels for a {}x{} matrix",
                rows.len(),
                cols.len(),
                self.rows,
                self.cols
            )));
        }
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        Ok(self)
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

    pub fn row_labels(&self) -> Option<&[Point]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[Point]> {
        self.col_labels.as_deref()
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        }
    }

    pub fn to_exact(&self) -> Matrix<BigInt> {
        self.map(Scalar::to_bigint)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone());
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// `self - λ·I`.
    pub fn shift_diagonal(&self, lambda: &T) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "diagonal shift needs a square matrix".into(),
            ));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            out.data[idx] = out.data[idx].clone() - lambda.clone();
        }
        Ok(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(
                "cannot add matrices of different shapes".into(),
            ));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.clone() + b.clone();
        }
        Ok(out)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `trace(M²) = Σ_ij M_ij M_ji`.
    pub fn trace_of_square(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc = acc + self.get(i, j).clone() * self.get(j, i).clone();
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.rows)
            .map(|r| self.row(r).iter().fold(T::zero(), |a, x| a + x.clone()))
            .collect()
    }

    /// Entries of the rows in `rows` and columns in `cols`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        });
        if let Some(l) = &self.row_labels {
            out.row_labels = Some(rows.iter().map(|&i| l[i].clone()).collect());
        }
        if let Some(l) = &self.col_labels {
            out.col_labels = Some(cols.iter().map(|&i| l[i].clone()).collect());
        }
        out
    }

    /// Equality of entries, ignoring labels.
    pub fn same_entries(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

/// A bijection of `[0, size)`; `forward[i]` is where index `i` moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    forward: Vec<usize>,
}

impl Permutation {
    pub fn new(forward: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; forward.len()];
        for &t in &forward {
            if t >= forward.len() || std::mem::replace(&mut seen[t], true) {
                return Err(domain("permutation is not a bijection"));
            }
        }
        Ok(Permutation { forward })
    }

    pub fn identity(size: usize) -> Self {
        Permutation {
            forward: (0..size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.forward.len()
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn apply(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.forward.len()];
        for (i, &t) in self.forward.iter().enumerate() {
            inv[t] = i;
        }
        Permutation { forward: inv }
    }

    /// Moves entry `i` of `v` to position `forward[i]`.
    pub fn permute_vec<T: Clone>(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.size() {
            return Err(Error::Dimension(format!(
                "vector of length {} against permutation of size {}",
                v.len(),
                self.size()
            )));
        }
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.forward[i]] = x.clone();
        }
        Ok(out)
    }
}

/// `P·M·Pᵀ`: entry `(i, j)` of `M` moves to `(forward[i], forward[j])`.
pub fn apply_simultaneous_permutation<T: Scalar>(
    m: &Matrix<T>,
    perm: &Permutation,
) -> Result<Matrix<T>> {
    if !m.is_square() || m.rows() != perm.size() {
        return Err(Error::Dimension(format!(
            "permutation of size {} against a {}x{} matrix",
            perm.size(),
            m.rows(),
            m.cols()
        )));
    }
    let inv = perm.inverse();
    let mut out = Matrix::from_fn(m.rows(), m.cols(), |r, c| {
        m.get(inv.apply(r), inv.apply(c)).clone()
    });
    out.row_labels = m
        .row_labels
        .as_ref()
        .map(|l| perm.permute_vec(l))
        .transpose()?;
    out.col_labels = m
        .col_labels
        .as_ref()
        .map(|l| perm.permute_vec(l))
        .transpose()?;
    Ok(out)
}

/// `M1 ⊗ M2 = (a_ij · M2)`; row `i1·rows2 + i2`, column `j1·cols2 + j2`.
pub fn tensor_product<T: Scalar>(m1: &Matrix<T>, m2: &Matrix<T>) -> Matrix<T> {
    Matrix::from_fn(m1.rows * m2.rows, m1.cols * m2.cols, |r, c| {
        let (r1, r2) = r.div_rem(&m2.rows);
        let (c1, c2) = c.div_rem(&m2.cols);
        m1.get(r1, c1).clone() * m2.get(r2, c2).clone()
    })
}

/// Kronecker product of vectors, same index convention as [`tensor_product`].
pub fn tensor_vec<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.clone() * y.clone()))
        .collect()
}

/// `A_{n,m}`: entry 1 when `<u, v> ≡ 0 (mod m)`, labeled by the space order.
pub fn build_a<T: Scalar>(space: &ProjectiveSpace) -> Matrix<T> {
    let pts = space.points();
    Matrix::from_fn(pts.len(), pts.len(), |r, c| {
        if pts[r].inner(&pts[c]) == 0 {
            T::one()
        } else {
            T::zero()
        }
    })
    .with_labels(pts.to_vec(), pts.to_vec())
    .expect("labels match by construction")
}

/// `A·Aᵀ`.
pub fn build_b_product<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "A must be square, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    a.mul(&a.transpose())
}

/// `B_{n,m}` labeled by `space`, computed as `A·Aᵀ` over machine integers
/// (entries are at most `θ_{n,m}`).
pub fn build_b(space: &ProjectiveSpace) -> Matrix<BigInt> {
    let a: Matrix<i64> = build_a(space);
    build_b_product(&a)
        .expect("A is square by construction")
        .to_exact()
}

/// Entry `(u, v)` of `B_{n,p^e}` in closed form:
/// `(p^{ν_p(ξ) + e(n-2)} - p^{min(ν_p(ξ), e-1) + (e-1)(n-2)}) / φ(p^e)`.
pub fn entry_b_uv(u: &Point, v: &Point, pp: PrimePower) -> Result<BigInt> {
    let data = xi_data(u, v, pp)?;
    let n = u.dim() as u32;
    let e = pp.e;
    let p = BigUint::from(pp.p);
    let hi = p.pow(data.nu_xi + e * (n - 2));
    let lo = p.pow(data.nu_xi.min(e - 1) + (e - 1) * (n - 2));
    let phi = BigUint::from(euler_phi(&pp.modulus()));
    let (q, r) = (hi - lo).div_rem(&phi);
    if !r.is_zero() {
        return Err(Error::Invariant(format!(
            "entry for {u}, {v} is not divisible by φ({})",
            pp.value()
        )));
    }
    Ok(BigInt::from(q))
}

/// `B_{n,p^e}` assembled entrywise from [`entry_b_uv`].
pub fn build_b_analytic(space: &ProjectiveSpace) -> Result<Matrix<BigInt>> {
    let pp = space.modulus().as_prime_power().ok_or_else(|| {
        Error::Unsupported(format!(
            "closed-form entries need a prime-power modulus, got {}",
            space.m()
        ))
    })?;
    let pts = space.points();
    let mut data = Vec::with_capacity(pts.len() * pts.len());
    for u in pts {
        for v in pts {
            data.push(entry_b_uv(u, v, pp)?);
        }
    }
    Matrix::from_vec(pts.len(), pts.len(), data)?.with_labels(pts.to_vec(), pts.to_vec())
}

/// Bijection `P_{n,m_1} × ... × P_{n,m_r} → P_{n,m}` given by coordinatewise
/// CRT, with `m` the product of the pairwise coprime `moduli`. Source index is
/// mixed radix over the lex orders of the factor spaces (the
/// [`tensor_product`] convention); target index is the lex order of
/// `P_{n,m}`.
pub fn crt_permutation_multi(n: usize, moduli: &[u64], guardrail: usize) -> Result<Permutation> {
    let spaces = moduli
        .iter()
        .map(|&m| ProjectiveSpace::lex(n, m, guardrail))
        .collect::<Result<Vec<_>>>()?;
    let m = moduli
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .ok_or_else(|| domain("modulus product overflows"))?;
    for (i, &a) in moduli.iter().enumerate() {
        for &b in &moduli[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(domain(format!("moduli {a} and {b} are not coprime")));
            }
        }
    }
    let target = ProjectiveSpace::lex(n, m, guardrail)?;
    crt_permutation_between(&spaces, &target)
}

/// [`crt_permutation_multi`] for prebuilt factor spaces and target space.
pub fn crt_permutation_between(
    factors: &[ProjectiveSpace],
    target: &ProjectiveSpace,
) -> Result<Permutation> {
    let n = target.n();
    let size: usize = factors.iter().map(ProjectiveSpace::len).product();
    if size != target.len() {
        return Err(Error::Invariant(format!(
            "factor spaces have {size} point tuples, target has {}",
            target.len()
        )));
    }
    let mut forward = Vec::with_capacity(size);
    let mut digits = vec![0usize; factors.len()];
    let mut coords = vec![0u64; n];
    for _ in 0..size {
        for (i, c) in coords.iter_mut().enumerate() {
            let residues: Vec<(u64, u64)> = factors
                .iter()
                .zip(&digits)
                .map(|(s, &d)| (s.point(d).coords()[i], s.m()))
                .collect();
            *c = crt_combine(&residues)?;
        }
        forward.push(target.index_of_tuple(&coords)?);
        for (d, s) in digits.iter_mut().zip(factors).rev() {
            *d += 1;
            if *d < s.len() {
                break;
            }
            *d = 0;
        }
    }
    Permutation::new(forward)
}

/// Two-factor case of [`crt_permutation_multi`].
pub fn crt_permutation(n: usize, m1: u64, m2: u64, guardrail: usize) -> Result<Permutation> {
    if m1.gcd(&m2) != 1 {
        return Err(domain(format!("moduli {m1} and {m2} are not coprime")));
    }
    crt_permutation_multi(n, &[m1, m2], guardrail)
}

/// Rows of the block `C_ab` of `B_{n,p^e}`: the points of `K_a` against the
/// points of `K_b`, each listed in base-point order so that entries over the
/// same base point fall on the block diagonal. `b_matrix` may use any
/// ordering; rows are looked up through its labels.
pub fn block_c(
    a: usize,
    b: usize,
    partition: &KPartition,
    b_matrix: &Matrix<BigInt>,
) -> Result<Matrix<BigInt>> {
    if partition.n() < 3 {
        return Err(Error::Unsupported(
            "the block identity for C_ab needs n >= 3".into(),
        ));
    }
    let l = partition.l();
    if a >= l || b >= l {
        return Err(domain(format!("class index out of range 0..{l}")));
    }
    let labels = b_matrix
        .row_labels()
        .ok_or_else(|| domain("B must carry point labels"))?;
    let lookup: std::collections::HashMap<&Point, usize> =
        labels.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let positions = |h: usize| -> Result<Vec<usize>> {
        partition.classes()[h]
            .iter()
            .map(|p| {
                lookup
                    .get(p)
                    .copied()
                    .ok_or_else(|| domain(format!("{p} is not a label of B")))
            })
            .collect()
    };
    Ok(b_matrix.submatrix(&positions(a)?, &positions(b)?))
}

/// Right-hand side of the block identity:
/// `p^{n-3}·B_{n,p^{e-1}} - p^{(e-1)(n-2)-1}·I`, plus
/// `p^{e(n-2)}·I` when `a = b`. `base_b` must be in the lex order of
/// `partition.base()`.
pub fn block_c_expected(
    same_class: bool,
    partition: &KPartition,
    base_b: &Matrix<BigInt>,
) -> Result<Matrix<BigInt>> {
    let (p, e, n) = (partition.p(), partition.e(), partition.n() as u32);
    if n < 3 {
        return Err(Error::Unsupported(
            "the block identity for C_ab needs n >= 3".into(),
        ));
    }
    let k = base_b.rows();
    if k != partition.base().len() || !base_b.is_square() {
        return Err(Error::Dimension(
            "base matrix does not match the partition".into(),
        ));
    }
    let p = BigInt::from(p);
    let mut diag = -p.pow((e - 1) * (n - 2) - 1);
    if same_class {
        diag += p.pow(e * (n - 2));
    }
    let scaled = base_b.scale(&p.pow(n - 3));
    scaled.add(&Matrix::identity(k).scale(&diag))
}

/// `J_{k×1}` as a vector.
pub fn ones_vec<T: Scalar>(k: usize) -> Vec<T> {
    vec![T::one(); k]
}

/// True when the matrix is a 0/1 permutation matrix.
pub fn is_permutation_matrix<T: Scalar>(m: &Matrix<T>) -> bool {
    m.is_square()
        && m.entries().iter().all(|x| x.is_zero() || x.is_one())
        && m.row_sums().iter().all(One::is_one)
        && m.transpose().row_sums().iter().all(One::is_one)
}

/// Converts an exact matrix to machine integers when every entry fits.
pub fn to_small(m: &Matrix<BigInt>) -> Option<Matrix<i64>> {
    let data = m
        .entries()
        .iter()
        .map(|x| x.to_i64())
        .collect::<Option<Vec<_>>>()?;
    let mut out = Matrix::from_vec(m.rows(), m.cols(), data).ok()?;
    out.row_labels = m.row_labels.clone();
    out.col_labels = m.col_labels.clone();
    Some(out)
}
