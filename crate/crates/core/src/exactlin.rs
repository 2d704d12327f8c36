//! Exact integer number theory and fraction-free linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Matrices are
//! dense and row-major; indices in this module are 0-based.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Dense integer matrix with at least one row and one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::BadShape(format!("{rows}x{cols} matrix is empty")));
        }
        if data.len() != rows * cols {
            return Err(Error::BadShape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Matrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::BadShape("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(cols: &[Vec<Int>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|col| col.len() != r) {
            return Err(Error::BadShape("columns of different lengths".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Matrix::new(r, c, data)
    }

    /// Convenience constructor for literals; panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| Int::from(v)).collect())
            .collect();
        Matrix::from_rows(rows).expect("well-formed literal matrix")
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

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Sub-matrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix::new(self.rows, cols.len(), data).expect("nonempty selection")
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix::new(rows.len(), self.cols, data).expect("nonempty selection")
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(l, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] -= factor * row[source]`
    pub fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let d = factor * &self[(source, j)];
            self[(target, j)] -= d;
        }
    }

    pub fn scale_row(&mut self, i: usize, factor: &Int) {
        for j in 0..self.cols {
            self[(i, j)] *= factor;
        }
    }

    /// Largest absolute value among the entries.
    pub fn max_abs(&self) -> Int {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_default()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Int;

    fn index(&self, (i, j): (usize, usize)) -> &Int {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("compatible shapes")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.data.iter().map(|v| v.to_string()).collect();
        let width = strs.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", strs[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(Int::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<IntRepr>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(IntRepr::into_int).collect())
            .collect::<std::result::Result<Vec<Vec<Int>>, String>>()
            .map_err(D::Error::custom)?;
        Matrix::from_rows(rows).map_err(D::Error::custom)
    }
}

/// Integer as it may appear in JSON input: a decimal string (canonical) or
/// a plain JSON integer.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum IntRepr {
    Str(String),
    Num(i64),
}

impl IntRepr {
    pub(crate) fn into_int(self) -> std::result::Result<Int, String> {
        match self {
            IntRepr::Num(v) => Ok(Int::from(v)),
            IntRepr::Str(s) => s
                .trim()
                .parse::<Int>()
                .map_err(|_| format!("{s:?} is not a decimal integer")),
        }
    }
}

/// Serde adapter for a single [`Int`] stored as a decimal string.
pub mod int_string {
    use super::{Int, IntRepr};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        IntRepr::deserialize(d)?.into_int().map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Number theory

/// Extended gcd: returns `(g, u, v)` with `g = u*a + v*b` and `g >= 0`.
pub fn xgcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    if a.is_zero() && b.is_zero() {
        return (Int::zero(), Int::zero(), Int::zero());
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Int::one(), Int::zero());
    let (mut t0, mut t1) = (Int::zero(), Int::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Nonnegative generator of the ideal spanned by `values`; zero for the
/// empty list.
pub fn gcd_many<'a, I>(values: I) -> Int
where
    I: IntoIterator<Item = &'a Int>,
{
    values
        .into_iter()
        .fold(Int::zero(), |g, v| if g.is_one() { g } else { g.gcd(v) })
}

/// Nonnegative gcd together with Bézout coefficients:
/// `g = sum(coeffs[i] * values[i])`.
///
/// Coefficients are built by folding [`xgcd`] from left to right, so the
/// result is deterministic.
pub fn gcd_bezout(values: &[Int]) -> (Int, Vec<Int>) {
    let mut g = Int::zero();
    let mut coeffs: Vec<Int> = Vec::with_capacity(values.len());
    for v in values {
        let (g2, s, t) = xgcd(&g, v);
        if !s.is_one() {
            for c in coeffs.iter_mut() {
                *c *= &s;
            }
        }
        coeffs.push(t);
        g = g2;
    }
    (g, coeffs)
}

/// q-adic valuation of an integer. `Infinite` sorts after every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(m) => Some(m),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(m) => write!(f, "{m}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Largest `m` with `q^m | a`. Fails unless `|q|` is prime.
pub fn valuation(a: &Int, q: &Int) -> Result<Valuation> {
    if !is_prime(q) {
        return Err(Error::NonPrimeModulus(q.clone()));
    }
    Ok(valuation_unchecked(a, &q.abs()))
}

/// [`valuation`] without the primality check; `q` must be > 1.
pub(crate) fn valuation_unchecked(a: &Int, q: &Int) -> Valuation {
    if a.is_zero() {
        return Valuation::Infinite;
    }
    let mut m = 0;
    let mut rest = a.clone();
    loop {
        let (quot, rem) = rest.div_rem(q);
        if !rem.is_zero() {
            return Valuation::Finite(m);
        }
        rest = quot;
        m += 1;
    }
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Primality of `|n|`.
///
/// Trial division for small inputs, Miller-Rabin over the first twelve prime
/// bases otherwise; this is exact below 3.3e24, which covers every value the
/// library meets in practice.
pub fn is_prime(n: &Int) -> bool {
    let n = n.abs();
    let Some(small) = n.to_u64() else {
        return miller_rabin(&n);
    };
    if small < 2 {
        return false;
    }
    for p in MR_BASES {
        if small == p {
            return true;
        }
        if small % p == 0 {
            return false;
        }
    }
    if small < 41 * 41 {
        return true;
    }
    miller_rabin(&n)
}

fn miller_rabin(n: &Int) -> bool {
    let one = Int::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'bases: for b in MR_BASES {
        let b = Int::from(b);
        if &b >= n {
            continue;
        }
        let mut x = b.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Trial-division bound used by [`factorize`].
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Prime factorization of `|n|` as `(prime, exponent)` pairs in increasing
/// order. `|n| <= 1` gives the empty list.
///
/// Uses trial division up to [`TRIAL_DIVISION_LIMIT`]; a remaining
/// composite cofactor is reported as a resource error.
pub fn factorize(n: &Int) -> Result<Vec<(Int, u32)>> {
    if n.is_zero() {
        return Err(Error::PreconditionViolated("cannot factor zero".into()));
    }
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_LIMIT {
        let pp = Int::from(p);
        if &pp * &pp > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        if is_prime(&rest) {
            out.push((rest, 1));
        } else {
            return Err(Error::ResourceLimit(format!(
                "cofactor {rest} has no prime factor below {TRIAL_DIVISION_LIMIT}"
            )));
        }
    }
    Ok(out)
}

/// Chinese remainder: the unique `x` in `[0, prod m_i)` with
/// `x = r_i (mod m_i)` for every congruence.
pub fn crt(congruences: &[(Int, Int)]) -> Result<Int> {
    for (_, m) in congruences {
        if m < &int(2) {
            return Err(Error::InvalidModulus(m.clone()));
        }
    }
    for (a, (_, ma)) in congruences.iter().enumerate() {
        for (_, mb) in &congruences[a + 1..] {
            if !ma.gcd(mb).is_one() {
                return Err(Error::NonCoprimeModuli(ma.clone(), mb.clone()));
            }
        }
    }
    let mut x = Int::zero();
    let mut modulus = Int::one();
    for (r, m) in congruences {
        // x + modulus * t = r (mod m)
        let (_, inv, _) = xgcd(&modulus, m);
        let t = ((r - &x) * inv).mod_floor(m);
        x += &modulus * t;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    Ok(x)
}

/// `(q^k - 1) / (q - 1)`, the number of points of projective (k-1)-space
/// over the field with `q` elements.
pub fn projective_count(q: &Int, k: usize) -> Result<Int> {
    if !is_prime(q) || q.is_negative() {
        return Err(Error::NonPrimeModulus(q.clone()));
    }
    if k == 0 {
        return Err(Error::BadShape("projective count needs k >= 1".into()));
    }
    let mut total = Int::zero();
    let mut power = Int::one();
    for _ in 0..k {
        total += &power;
        power *= q;
    }
    Ok(total)
}

/// Binomial coefficient as a machine integer (saturating).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Iterator over the `k`-element subsets of `0..n` as increasing index
/// vectors, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

pub fn combinations(n: usize, k: usize) -> Combinations {
    let current = if k <= n { Some((0..k).collect()) } else { None };
    Combinations { n, current }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// Linear algebra

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det(a: &Matrix) -> Result<Int> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut sign = 1;
    let mut prev = Int::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(Int::zero());
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = v / &prev;
            }
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    Ok(if sign < 0 { -d } else { d })
}

/// Determinant of the square matrix whose columns are `cols`.
pub fn det_columns(cols: &[&[Int]]) -> Int {
    let k = cols.len();
    let mut data = Vec::with_capacity(k * k);
    for i in 0..k {
        for c in cols {
            data.push(c[i].clone());
        }
    }
    det(&Matrix::new(k, k, data).expect("square")).expect("square")
}

/// Column Hermite normal form `a * u = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    /// Lower triangular, positive diagonal, entries left of the diagonal
    /// reduced into `[0, h[i][i])`.
    pub h: Matrix,
    /// Unimodular column transform.
    pub u: Matrix,
}

/// Column-style Hermite normal form of a nonsingular square matrix.
pub fn column_hnf(a: &Matrix) -> Result<HnfResult> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut h = a.clone();
    let mut u = Matrix::identity(n);
    for i in 0..n {
        // Fold row i's entries right of the diagonal into column i.
        for j in i + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            let (p, q) = (h[(i, i)].clone(), h[(i, j)].clone());
            let (g, s, t) = xgcd(&p, &q);
            let (pg, qg) = (&p / &g, &q / &g);
            // [ci cj] <- [ci cj] * [[s, -q/g], [t, p/g]], determinant 1
            combine_columns(&mut h, i, j, &s, &t, &qg, &pg);
            combine_columns(&mut u, i, j, &s, &t, &qg, &pg);
        }
        if h[(i, i)].is_zero() {
            return Err(Error::SingularMatrix);
        }
        if h[(i, i)].is_negative() {
            negate_column(&mut h, i);
            negate_column(&mut u, i);
        }
    }
    for i in 1..n {
        for j in 0..i {
            let q = h[(i, j)].div_floor(&h[(i, i)]);
            if !q.is_zero() {
                sub_column_multiple(&mut h, j, i, &q);
                sub_column_multiple(&mut u, j, i, &q);
            }
        }
    }
    Ok(HnfResult { h, u })
}

fn combine_columns(m: &mut Matrix, i: usize, j: usize, s: &Int, t: &Int, qg: &Int, pg: &Int) {
    for r in 0..m.rows() {
        let ci = m[(r, i)].clone();
        let cj = m[(r, j)].clone();
        m[(r, i)] = s * &ci + t * &cj;
        m[(r, j)] = pg * &cj - qg * &ci;
    }
}

fn negate_column(m: &mut Matrix, j: usize) {
    for r in 0..m.rows() {
        let v = -&m[(r, j)];
        m[(r, j)] = v;
    }
}

fn sub_column_multiple(m: &mut Matrix, target: usize, source: usize, factor: &Int) {
    for r in 0..m.rows() {
        let d = factor * &m[(r, source)];
        m[(r, target)] -= d;
    }
}

/// Volume of a `k x r` matrix with `r <= k`: the nonnegative gcd of all
/// `r x r` minors. For one column this is the gcd of its entries.
pub fn volume(a: &Matrix) -> Result<Int> {
    let (k, r) = (a.rows(), a.cols());
    if r > k {
        return Err(Error::BadShape(format!(
            "volume needs at most as many columns as rows, got {k}x{r}"
        )));
    }
    if r == k {
        return Ok(det(a)?.abs());
    }
    let mut g = Int::zero();
    for rows in combinations(k, r) {
        g = g.gcd(&det(&a.select_rows(&rows))?);
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// Volume of a single integer vector (gcd of its coordinates).
pub fn vector_volume(v: &[Int]) -> Int {
    gcd_many(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn xgcd_examples() {
        assert_eq!(xgcd(&int(0), &int(0)), (int(0), int(0), int(0)));
        let (g, u, v) = xgcd(&int(6), &int(4));
        assert_eq!(g, int(2));
        assert_eq!(u * 6 + v * 4, int(2));
        assert_eq!(xgcd(&int(-3), &int(0)), (int(3), int(-1), int(0)));
    }

    #[test]
    fn gcd_many_examples() {
        assert_eq!(gcd_many(&[int(3), int(3), int(3)]), int(3));
        assert_eq!(gcd_many(&[]), int(0));
        assert_eq!(gcd_many(&[int(4), int(6), int(9)]), int(1));
        let vals = [int(12), int(-18), int(27)];
        let (g, c) = gcd_bezout(&vals);
        assert_eq!(g, int(3));
        let s: Int = c.iter().zip(&vals).map(|(a, b)| a * b).sum();
        assert_eq!(s, g);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&int(12), &int(2)).unwrap(), Valuation::Finite(2));
        assert_eq!(valuation(&int(0), &int(5)).unwrap(), Valuation::Infinite);
        assert_eq!(valuation(&int(7), &int(2)).unwrap(), Valuation::Finite(0));
        assert!(matches!(
            valuation(&int(8), &int(4)),
            Err(Error::NonPrimeModulus(_))
        ));
        assert!(Valuation::Finite(100) < Valuation::Infinite);
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[(int(1), int(2)), (int(2), int(3))]).unwrap(), int(5));
        assert_eq!(crt(&[(int(0), int(7))]).unwrap(), int(0));
        assert_eq!(
            crt(&[(int(1), int(2)), (int(1), int(3)), (int(1), int(5))]).unwrap(),
            int(1)
        );
        assert!(matches!(
            crt(&[(int(1), int(4)), (int(1), int(6))]),
            Err(Error::NonCoprimeModuli(_, _))
        ));
        assert!(crt(&[(int(1), int(1))]).is_err());
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&Matrix::identity(3)).unwrap(), int(1));
        assert_eq!(det(&m(&[&[1, 1], &[0, 3]])).unwrap(), int(3));
        assert_eq!(det(&m(&[&[2, 1], &[3, 0]])).unwrap(), int(-3));
        assert_eq!(det(&m(&[&[0, 1], &[0, 2]])).unwrap(), int(0));
        assert!(matches!(
            det(&m(&[&[1, 2, 3]])),
            Err(Error::NotSquare { rows: 1, cols: 3 })
        ));
    }

    fn check_hnf(a: &Matrix) {
        let HnfResult { h, u } = column_hnf(a).unwrap();
        assert_eq!(&(a * &u), &h);
        assert_eq!(det(&u).unwrap().abs(), int(1));
        let n = a.rows();
        for i in 0..n {
            assert!(h[(i, i)] > Int::zero());
            for j in 0..n {
                if i < j {
                    assert!(h[(i, j)].is_zero());
                } else if i > j {
                    assert!(h[(i, j)] >= Int::zero() && h[(i, j)] < h[(i, i)]);
                }
            }
        }
        assert_eq!(det(&h).unwrap(), det(a).unwrap().abs());
    }

    #[test]
    fn hnf_examples() {
        let r = column_hnf(&Matrix::identity(3)).unwrap();
        assert_eq!(r.h, Matrix::identity(3));
        assert_eq!(r.u, Matrix::identity(3));
        check_hnf(&m(&[&[2, 1], &[0, 3]]));
        let r = column_hnf(&m(&[&[2, 1], &[0, 3]])).unwrap();
        assert_eq!(r.h[(0, 0)], int(1));
        let r = column_hnf(&m(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(r.h, Matrix::identity(2));
        assert_eq!(r.u, m(&[&[0, 1], &[1, 0]]));
        check_hnf(&m(&[&[-4, 6, 1], &[2, 0, -3], &[5, 5, 5]]));
        assert!(matches!(
            column_hnf(&m(&[&[1, 2], &[2, 4]])),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn volume_examples() {
        assert_eq!(volume(&m(&[&[4], &[6]])).unwrap(), int(2));
        assert_eq!(volume(&m(&[&[2, 0], &[0, 3]])).unwrap(), int(6));
        assert_eq!(volume(&m(&[&[1], &[2], &[0]])).unwrap(), int(1));
        assert_eq!(volume(&m(&[&[1, 0], &[0, 2], &[0, 2]])).unwrap(), int(2));
        assert!(matches!(volume(&m(&[&[1, 2]])), Err(Error::BadShape(_))));
    }

    #[test]
    fn projective_count_examples() {
        assert_eq!(projective_count(&int(2), 2).unwrap(), int(3));
        assert_eq!(projective_count(&int(2), 3).unwrap(), int(7));
        assert_eq!(projective_count(&int(3), 2).unwrap(), int(4));
        assert!(projective_count(&int(4), 2).is_err());
    }

    #[test]
    fn primes_and_factorization() {
        let primes: Vec<i64> = (0..60).filter(|&v| is_prime(&int(v))).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(&int(1_000_000_007)));
        assert!(!is_prime(&int(3_215_031_751))); // strong pseudoprime to 2,3,5,7
        assert_eq!(
            factorize(&int(-360)).unwrap(),
            vec![(int(2), 3), (int(3), 2), (int(5), 1)]
        );
        assert_eq!(factorize(&int(1)).unwrap(), vec![]);
        let big = Int::from(1_000_000_007i64) * Int::from(998_244_353i64);
        assert!(matches!(factorize(&big), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(combinations(9, 4).count() as u64, binomial(9, 4));
    }

    #[test]
    fn matrix_json_uses_decimal_strings() {
        let a = m(&[&[1, 1, 0], &[0, 3, 3]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[["1","1","0"],["0","3","3"]]"#);
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let big: Matrix = serde_json::from_str(r#"[["123456789012345678901234567890"]]"#).unwrap();
        assert_eq!(big[(0, 0)].to_string(), "123456789012345678901234567890");
        assert!(serde_json::from_str::<Matrix>(r#"[["1","x"]]"#).is_err());
        assert!(serde_json::from_str::<Matrix>(r#"[["1","2"],["3"]]"#).is_err());
    }
}
