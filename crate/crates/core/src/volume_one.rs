//! Representations whose columns are primitive vectors ("volume one").
//!
//! A nowhere-zero consistent specialization `s` with content
//! `eps = gcd(all values)` has a representation with primitive columns iff
//!
//! 1. for every label `i` the gcd of the values on subsets containing `i`
//!    is already `eps`, and
//! 2. for every prime `q | eps`, the columns of the reduced representation
//!    do not cover every point of the projective space over `F_q`.
//!
//! Condition 2 is evaluated through the relation `i ~ j` ("columns `i` and
//! `j` span the same line mod `q`"), which holds iff every k-subset
//! containing both has `q`-valuation strictly above that of `eps`.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{
    binomial, crt, factorize, gcd_many, int_string, is_prime, projective_count,
    valuation_unchecked, vector_volume, volume, xgcd, Int, Matrix, Valuation,
};
use crate::pluecker::{first_violation, pluecker_of_matrix, Specialization};
use crate::realize::realize_unchecked;

/// Content of a specialization and its factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Epsilon {
    #[serde(with = "int_string")]
    pub value: Int,
    #[serde(serialize_with = "ser_factors")]
    pub factors: Vec<(Int, u32)>,
}

fn ser_factors<S: serde::Serializer>(f: &[(Int, u32)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(f.len()))?;
    for (q, d) in f {
        seq.serialize_element(&serde_json::json!({"prime": q.to_string(), "exponent": d}))?;
    }
    seq.end()
}

/// Why no volume-one representation exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition")]
pub enum FailedCondition {
    /// The gcd of the values on subsets containing `index` is `gcd`, not
    /// `eps`.
    Cond1 {
        index: usize,
        #[serde(with = "int_string")]
        gcd: Int,
    },
    /// `witness` has as many elements as the projective space over `F_prime`
    /// has points, and its columns are pairwise on distinct lines.
    Cond2 {
        #[serde(with = "int_string")]
        prime: Int,
        witness: Vec<usize>,
        classes: usize,
        #[serde(with = "int_string")]
        projective_points: Int,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeOneVerdict {
    pub exists: bool,
    #[serde(with = "int_string")]
    pub epsilon: Int,
    #[serde(serialize_with = "ser_factors")]
    pub prime_factors: Vec<(Int, u32)>,
    pub failed_condition: Option<FailedCondition>,
}

/// Nonnegative gcd of all values, with its prime factorization.
pub fn epsilon_of(s: &Specialization) -> Result<Epsilon> {
    s.require_nonzero()?;
    let value = gcd_many(s.iter().map(|(_, v)| v));
    let factors = factorize(&value)?;
    Ok(Epsilon { value, factors })
}

/// Per-label gcd condition. `None` when it holds.
pub fn check_condition1(s: &Specialization) -> Result<Option<FailedCondition>> {
    let eps = epsilon_of(s)?.value;
    let mut per_label = vec![Int::zero(); s.n() + 1];
    for (idx, v) in s.iter() {
        for &i in &idx {
            per_label[i] = per_label[i].gcd(v);
        }
    }
    Ok((1..=s.n())
        .find(|&i| per_label[i] != eps)
        .map(|i| FailedCondition::Cond1 {
            index: i,
            gcd: per_label[i].clone(),
        }))
}

/// Equivalence classes of labels under "same line mod `q`", as sorted
/// label lists ordered by their smallest element.
pub fn line_classes(s: &Specialization, q: &Int, eps: &Int) -> Result<Vec<Vec<usize>>> {
    let n = s.n();
    let m = valuation_unchecked(eps, q);
    let mut distinct = vec![vec![false; n + 1]; n + 1];
    for (idx, v) in s.iter() {
        if valuation_unchecked(v, q) == m {
            for (a, &i) in idx.iter().enumerate() {
                for &j in &idx[a + 1..] {
                    distinct[i][j] = true;
                    distinct[j][i] = true;
                }
            }
        }
    }
    let same = |i: usize, j: usize| i == j || !distinct[i][j];
    for i in 1..=n {
        for j in 1..=n {
            if !same(i, j) {
                continue;
            }
            for l in 1..=n {
                if same(j, l) && !same(i, l) {
                    return Err(Error::NonTransitiveRelation {
                        prime: q.clone(),
                        i,
                        j,
                        l,
                    });
                }
            }
        }
    }
    let mut seen = vec![false; n + 1];
    let mut classes = Vec::new();
    for i in 1..=n {
        if seen[i] {
            continue;
        }
        let class: Vec<usize> = (i..=n).filter(|&j| same(i, j)).collect();
        for &j in &class {
            seen[j] = true;
        }
        classes.push(class);
    }
    Ok(classes)
}

/// Projective-space condition for every prime dividing `eps`. `None` when
/// it holds. Assumes the Plücker relations hold.
pub fn check_condition2(s: &Specialization) -> Result<Option<FailedCondition>> {
    let Epsilon { value: eps, factors } = epsilon_of(s)?;
    for (q, _) in &factors {
        let points = projective_count(q, s.k())?;
        let classes = if s.k() == 1 {
            // no pairs to compare: every label is its own class
            (1..=s.n()).map(|i| vec![i]).collect()
        } else {
            line_classes(s, q, &eps)?
        };
        if Int::from(classes.len()) >= points {
            let take = points.to_string().parse::<usize>().unwrap_or(usize::MAX);
            let witness = classes.iter().take(take).map(|c| c[0]).collect();
            return Ok(Some(FailedCondition::Cond2 {
                prime: q.clone(),
                witness,
                classes: classes.len(),
                projective_points: points,
            }));
        }
    }
    Ok(None)
}

/// Decides whether `s` has a representation with primitive columns.
pub fn decide_volume_one(s: &Specialization) -> Result<VolumeOneVerdict> {
    s.require_nonzero()?;
    if let Some(v) = first_violation(s) {
        return Err(Error::InconsistentSpecialization(v.to_string()));
    }
    let Epsilon { value, factors } = epsilon_of(s)?;
    let failed = match check_condition1(s)? {
        Some(f) => Some(f),
        None => check_condition2(s)?,
    };
    Ok(VolumeOneVerdict {
        exists: failed.is_none(),
        epsilon: value,
        prime_factors: factors,
        failed_condition: failed,
    })
}

/// Result of [`reduce_prime_row`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub matrix: Matrix,
    /// Factor relating the new minors to the old ones. The reduction
    /// compensates odd row swaps, so this is always `+1`.
    pub sign: i32,
}

/// Determinant-one row operations making every entry of the first row
/// divisible by `q`, keeping all columns primitive.
///
/// Requires primitive columns and `q | ` every maximal minor.
pub fn reduce_prime_row(x: &Matrix, q: &Int) -> Result<RowReduction> {
    if !is_prime(q) || !q.is_positive() {
        return Err(Error::NonPrimeModulus(q.clone()));
    }
    let (k, n) = (x.rows(), x.cols());
    for j in 0..n {
        if !vector_volume(&x.column(j)).is_one() {
            return Err(Error::PreconditionViolated(format!(
                "column {} is not primitive",
                j + 1
            )));
        }
    }
    if k <= n {
        let minors = pluecker_of_matrix(x)?;
        let bad = minors.iter().find(|(_, v)| !v.is_multiple_of(q)).map(|(idx, _)| idx);
        if let Some(idx) = bad {
            return Err(Error::PreconditionViolated(format!(
                "{q} does not divide the minor on {idx:?}"
            )));
        }
    }
    let mut m = x.clone();
    let mut is_pivot = vec![false; k];
    for c in 0..n {
        let Some(p) = (0..k).find(|&r| !is_pivot[r] && !m[(r, c)].is_multiple_of(q)) else {
            continue;
        };
        is_pivot[p] = true;
        let (_, inv, _) = xgcd(&m[(p, c)], q);
        for r in 0..k {
            if is_pivot[r] {
                continue;
            }
            let f = (&m[(r, c)] * &inv).mod_floor(q);
            m.sub_row_multiple(r, p, &f);
        }
    }
    let Some(free) = (0..k).find(|&r| !is_pivot[r]) else {
        return Err(Error::PreconditionViolated(format!(
            "matrix has full rank modulo {q}"
        )));
    };
    if free != 0 {
        m.swap_rows(0, free);
        let minus = -Int::one();
        m.scale_row(free, &minus);
    }
    Ok(RowReduction { matrix: m, sign: 1 })
}

/// Builds a representation of `s` whose columns are all primitive.
pub fn construct_volume_one(s: &Specialization) -> Result<Matrix> {
    let verdict = decide_volume_one(s)?;
    if let Some(f) = verdict.failed_condition {
        return Err(Error::ConditionsNotSatisfied(
            serde_json::to_string(&f).unwrap_or_default(),
        ));
    }
    let (k, n) = (s.k(), s.n());
    let eps = verdict.epsilon;

    // First row of the recursive representation divided by eps; the
    // minors become p / eps.
    let mut xp = realize_unchecked(s)?;
    for j in 0..n {
        let (quot, rem) = xp[(0, j)].div_rem(&eps);
        if !rem.is_zero() {
            return Err(Error::InternalPostconditionFailure(format!(
                "first-row entry {} is not divisible by {eps}",
                xp[(0, j)]
            )));
        }
        xp[(0, j)] = quot;
    }

    // Per prime: pivot row j and multipliers mu_m (m > j) read off from a
    // point v of P(F_q^k) outside every column line.
    let mut pivots: Vec<(Int, u32, usize, Vec<Int>)> = Vec::new();
    for (q, d) in &verdict.prime_factors {
        let lines: HashSet<Vec<Int>> = (0..n)
            .map(|j| {
                let col: Vec<Int> = xp.column(j).iter().map(|v| v.mod_floor(q)).collect();
                projective_normal_form(&col, q)
            })
            .collect::<Option<_>>()
            .ok_or_else(|| {
                Error::InternalPostconditionFailure(format!("a column vanishes modulo {q}"))
            })?;
        let v = ProjectivePoints::new(q.clone(), k)
            .find(|p| !lines.contains(p))
            .ok_or_else(|| {
                Error::InternalPostconditionFailure(format!(
                    "columns cover every point of P(F_{q}^{k})"
                ))
            })?;
        let j = v.iter().position(|c| !c.is_zero()).expect("nonzero point");
        pivots.push((q.clone(), *d, j, v));
    }

    // mu[r][s] glued across primes by CRT; nonzero only for r > s.
    let mut mu = Matrix::zeros(k, k);
    if !pivots.is_empty() {
        for r in 0..k {
            for c in 0..r {
                let congruences: Vec<(Int, Int)> = pivots
                    .iter()
                    .map(|(q, _, j, v)| {
                        let target = if *j == c { v[r].clone() } else { Int::zero() };
                        (target, q.clone())
                    })
                    .collect();
                mu[(r, c)] = crt(&congruences)?;
            }
        }
    }
    let mut transform = Matrix::identity(k);
    for r in 0..k {
        for c in 0..r {
            transform[(r, c)] = -&mu[(r, c)];
        }
    }
    let mut z = &transform * &xp;
    for (q, d, j, _) in &pivots {
        z.scale_row(*j, &num_traits::pow(q.clone(), *d as usize));
    }

    if &pluecker_of_matrix(&z)? != s {
        return Err(Error::InternalPostconditionFailure(
            "constructed matrix does not reproduce the prescribed minors".into(),
        ));
    }
    if let Some(j) = (0..n).find(|&j| !vector_volume(&z.column(j)).is_one()) {
        return Err(Error::InternalPostconditionFailure(format!(
            "column {} of the constructed matrix is not primitive",
            j + 1
        )));
    }
    Ok(z)
}

/// Scales a nonzero vector over `F_q` so its first nonzero entry is 1.
fn projective_normal_form(v: &[Int], q: &Int) -> Option<Vec<Int>> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    let (_, inv, _) = xgcd(lead, q);
    Some(v.iter().map(|c| (c * &inv).mod_floor(q)).collect())
}

/// Points of `P(F_q^k)` in normal form (leading entry 1), ordered by the
/// position of the leading entry and then lexicographically.
struct ProjectivePoints {
    q: Int,
    k: usize,
    lead: usize,
    tail: Option<Vec<Int>>,
}

impl ProjectivePoints {
    fn new(q: Int, k: usize) -> Self {
        ProjectivePoints {
            q,
            k,
            lead: 0,
            tail: Some(vec![Int::zero(); k - 1]),
        }
    }
}

impl Iterator for ProjectivePoints {
    type Item = Vec<Int>;

    fn next(&mut self) -> Option<Vec<Int>> {
        loop {
            if self.lead >= self.k {
                return None;
            }
            if let Some(tail) = self.tail.take() {
                let mut point = vec![Int::zero(); self.lead];
                point.push(Int::one());
                point.extend(tail.iter().cloned());
                // odometer increment
                let mut next = tail;
                let mut pos = next.len();
                let mut carried = true;
                while carried && pos > 0 {
                    pos -= 1;
                    next[pos] += 1;
                    if next[pos] == self.q {
                        next[pos] = Int::zero();
                    } else {
                        carried = false;
                    }
                }
                self.tail = if carried { None } else { Some(next) };
                return Some(point);
            }
            self.lead += 1;
            if self.lead < self.k {
                self.tail = Some(vec![Int::zero(); self.k - 1 - self.lead]);
            }
        }
    }
}

/// Outcome of the valuation bound check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NBound {
    /// Whether all values share one `q`-valuation.
    pub applicable: bool,
    pub holds: bool,
    /// `C(n, k-1)`
    pub lines: u64,
    #[serde(with = "int_string")]
    pub projective_points: Int,
}

/// When all values share one `q`-valuation, a representation reduces to
/// `C(n, k-1)` distinct hyperplanes mod `q`, so that count must not exceed
/// the number of points of `P(F_q^k)`.
pub fn check_n_bound(s: &Specialization, q: &Int) -> Result<NBound> {
    s.require_nonzero()?;
    let points = projective_count(q, s.k())?;
    let lines = binomial(s.n(), s.k() - 1);
    let mut vals = s.iter().map(|(_, v)| valuation_unchecked(v, q));
    let first = vals.next().unwrap_or(Valuation::Finite(0));
    let applicable = vals.all(|v| v == first);
    let holds = !applicable || Int::from(lines) <= points;
    Ok(NBound {
        applicable,
        holds,
        lines,
        projective_points: points,
    })
}

/// Whether every column of `x` is primitive.
pub fn has_primitive_columns(x: &Matrix) -> bool {
    (0..x.cols()).all(|j| vector_volume(&x.column(j)).is_one())
}

/// Matrix volume helper re-exported for validators.
pub fn column_volumes(x: &Matrix) -> Vec<Int> {
    (0..x.cols())
        .map(|j| volume(&x.select_columns(&[j])).expect("single column"))
        .collect()
}
