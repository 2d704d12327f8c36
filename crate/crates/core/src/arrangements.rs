//! Hyperplane arrangements from `±1` cluster specializations.
//!
//! Specializing a non-crossing cluster to units yields integer
//! representations whose columns can be read as hyperplane normals; the
//! reflection arrangements of types A3 and B3 and the simplicial
//! arrangement A(16,3) arise this way. This module verifies such data:
//! non-crossing of the cluster, the prescribed minors, the induced line
//! set and the comparison with positive root systems.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{det, int_string, vector_volume, Int, IntRepr, Matrix};
use crate::pluecker::KSubset;

/// Values prescribed on a cluster of `k`-subsets. Frozen windows not listed
/// are implicitly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterAssignment {
    k: usize,
    n: usize,
    entries: Vec<(KSubset, Int)>,
}

impl ClusterAssignment {
    /// Values must be `-1`, `0` or `1`; subsets must be `k`-subsets of
    /// `1..=n`.
    pub fn new(k: usize, n: usize, entries: Vec<(Vec<usize>, Int)>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::BadShape(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        let mut out = Vec::with_capacity(entries.len());
        for (idx, v) in entries {
            if idx.len() != k {
                return Err(Error::Parse(format!("subset {idx:?} does not have {k} entries")));
            }
            if v.abs() > Int::one() {
                return Err(Error::Parse(format!("cluster value {v} is not in {{-1, 0, 1}}")));
            }
            out.push((KSubset::new(n, idx)?, v));
        }
        Ok(ClusterAssignment { k, n, entries: out })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(KSubset, Int)] {
        &self.entries
    }

    pub fn subsets(&self) -> Vec<Vec<usize>> {
        self.entries.iter().map(|(s, _)| s.indices().to_vec()).collect()
    }

    /// Listed subsets together with the frozen windows, without repeats.
    pub fn with_frozen(&self) -> Vec<(Vec<usize>, Int)> {
        let mut out: Vec<(Vec<usize>, Int)> = self
            .entries
            .iter()
            .map(|(s, v)| (s.indices().to_vec(), v.clone()))
            .collect();
        for w in frozen_windows(self.k, self.n) {
            if !out.iter().any(|(s, _)| *s == w) {
                out.push((w, Int::one()));
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct ClusterEntryJson {
    subset: Vec<usize>,
    value: IntRepr,
}

#[derive(Serialize, Deserialize)]
struct ClusterJson {
    k: usize,
    n: usize,
    cluster: Vec<ClusterEntryJson>,
}

impl Serialize for ClusterAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClusterJson {
            k: self.k,
            n: self.n,
            cluster: self
                .entries
                .iter()
                .map(|(sub, v)| ClusterEntryJson {
                    subset: sub.indices().to_vec(),
                    value: IntRepr::Str(v.to_string()),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClusterAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ClusterJson::deserialize(d)?;
        let entries = raw
            .cluster
            .into_iter()
            .map(|e| Ok((e.subset, e.value.into_int().map_err(D::Error::custom)?)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        ClusterAssignment::new(raw.k, raw.n, entries).map_err(D::Error::custom)
    }
}

/// Sorted label sets of the `n` cyclic windows `[i, ..., i+k-1]`.
pub fn frozen_windows(k: usize, n: usize) -> Vec<Vec<usize>> {
    (1..=n)
        .map(|i| {
            let mut w: Vec<usize> = (0..k).map(|t| (i - 1 + t) % n + 1).collect();
            w.sort_unstable();
            w
        })
        .collect()
}

/// Two chords `{a, b}` and `{c, d}` of the polygon cross iff their
/// endpoints strictly interleave around the cycle.
pub fn chords_cross(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let (c, d) = (c.min(d), c.max(d));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Whether no chord spanned by `i \ j` crosses a chord spanned by `j \ i`.
pub fn pair_non_crossing(i: &[usize], j: &[usize]) -> bool {
    let only_i: Vec<usize> = i.iter().copied().filter(|v| !j.contains(v)).collect();
    let only_j: Vec<usize> = j.iter().copied().filter(|v| !i.contains(v)).collect();
    for (x, &a) in only_i.iter().enumerate() {
        for &b in &only_i[x + 1..] {
            for (y, &c) in only_j.iter().enumerate() {
                for &d in &only_j[y + 1..] {
                    if chords_cross(a, b, c, d) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonCrossingReport {
    pub non_crossing: bool,
    /// First crossing pair found, in input order.
    pub offending: Option<(Vec<usize>, Vec<usize>)>,
}

/// Pairwise non-crossing test for a collection of label sets.
pub fn check_non_crossing(subsets: &[Vec<usize>]) -> NonCrossingReport {
    for (x, i) in subsets.iter().enumerate() {
        for j in &subsets[x + 1..] {
            if !pair_non_crossing(i, j) {
                return NonCrossingReport {
                    non_crossing: false,
                    offending: Some((i.clone(), j.clone())),
                };
            }
        }
    }
    NonCrossingReport {
        non_crossing: true,
        offending: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueMismatch {
    pub subset: Vec<usize>,
    #[serde(with = "int_string")]
    pub expected: Int,
    #[serde(with = "int_string")]
    pub actual: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterCheck {
    pub matches: bool,
    pub mismatches: Vec<ValueMismatch>,
}

/// Compares the maximal minors of `x` on the cluster (and the frozen
/// windows, which must be 1 unless listed) with the assignment.
pub fn verify_cluster_values(x: &Matrix, c: &ClusterAssignment) -> Result<ClusterCheck> {
    if x.rows() != c.k || x.cols() != c.n {
        return Err(Error::ShapeMismatch(format!(
            "matrix is {}x{}, assignment is for k={}, n={}",
            x.rows(),
            x.cols(),
            c.k,
            c.n
        )));
    }
    let mut mismatches = Vec::new();
    for (subset, expected) in c.with_frozen() {
        let cols: Vec<usize> = subset.iter().map(|i| i - 1).collect();
        let actual = det(&x.select_columns(&cols))?;
        if actual != expected {
            mismatches.push(ValueMismatch {
                subset,
                expected,
                actual,
            });
        }
    }
    Ok(ClusterCheck {
        matches: mismatches.is_empty(),
        mismatches,
    })
}

/// Primitive normals with first nonzero coordinate positive, one per line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineSet {
    #[serde(serialize_with = "ser_normals")]
    pub normals: BTreeSet<Vec<Int>>,
}

fn ser_normals<S: serde::Serializer>(
    v: &BTreeSet<Vec<Int>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|n| n.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

impl LineSet {
    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }
}

fn sign_normalized(v: &[Int]) -> Vec<Int> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) if lead.is_negative() => v.iter().map(|x| -x).collect(),
        _ => v.to_vec(),
    }
}

/// Lines spanned by the columns of `x`.
pub fn line_set(x: &Matrix) -> Result<LineSet> {
    let mut normals = BTreeSet::new();
    for j in 0..x.cols() {
        let col = x.column(j);
        let g = vector_volume(&col);
        if g.is_zero() {
            return Err(Error::ZeroColumn(j + 1));
        }
        let prim: Vec<Int> = col.iter().map(|v| v / &g).collect();
        normals.insert(sign_normalized(&prim));
    }
    Ok(LineSet { normals })
}

/// Root systems with built-in positive-root tables (simple-root
/// coordinates).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootSystem {
    A3,
    B3,
}

impl RootSystem {
    pub fn positive_roots(self) -> Vec<[i64; 3]> {
        match self {
            RootSystem::A3 => vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 1, 1]],
            RootSystem::B3 => vec![
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, 1],
                [1, 1, 0],
                [0, 1, 1],
                [1, 1, 1],
                [0, 1, 2],
                [1, 1, 2],
                [1, 2, 2],
            ],
        }
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A3" => Ok(RootSystem::A3),
            "B3" => Ok(RootSystem::B3),
            _ => Err(Error::UnknownSystem(s.to_string())),
        }
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Whether the columns of `x`, each up to sign, are exactly the positive
/// roots of `system` (as multisets).
pub fn compare_positive_roots(x: &Matrix, system: RootSystem) -> Result<bool> {
    if x.rows() != 3 {
        return Err(Error::ShapeMismatch(format!(
            "root systems are rank 3, matrix has {} rows",
            x.rows()
        )));
    }
    let mut cols: Vec<Vec<Int>> = x.columns().iter().map(|c| sign_normalized(c)).collect();
    let mut roots: Vec<Vec<Int>> = system
        .positive_roots()
        .iter()
        .map(|r| r.iter().map(|&v| Int::from(v)).collect())
        .collect();
    cols.sort();
    roots.sort();
    Ok(cols == roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    fn a3() -> Matrix {
        Matrix::from_i64(&[[0, 1, 1, 0, 1, 0], [0, 0, 1, 1, 1, 1], [1, 0, 0, 1, 1, 0]])
    }

    fn a3_cluster() -> ClusterAssignment {
        ClusterAssignment::new(
            3,
            6,
            vec![
                (vec![1, 2, 4], int(1)),
                (vec![1, 2, 5], int(1)),
                (vec![1, 3, 4], int(1)),
                (vec![1, 4, 5], int(-1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn crossing_diagonals() {
        assert!(!check_non_crossing(&[vec![1, 3], vec![2, 4]]).non_crossing);
        assert!(check_non_crossing(&[vec![1, 3], vec![1, 4]]).non_crossing);
        assert!(check_non_crossing(&a3_cluster().subsets()).non_crossing);
    }

    #[test]
    fn a3_values() {
        let check = verify_cluster_values(&a3(), &a3_cluster()).unwrap();
        assert!(check.matches, "{:?}", check.mismatches);
        let mut bad = a3();
        bad[(0, 1)] = int(2);
        assert!(!verify_cluster_values(&bad, &a3_cluster()).unwrap().matches);
        let wide = Matrix::from_i64(&[[1, 0, 0, 0, 0, 0, 0]; 3]);
        assert!(matches!(
            verify_cluster_values(&wide, &a3_cluster()),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn lines() {
        assert_eq!(line_set(&a3()).unwrap().len(), 6);
        let x = Matrix::from_i64(&[[1, -2, 0], [1, -2, 1]]);
        let l = line_set(&x).unwrap();
        assert_eq!(l.len(), 2);
        assert!(l.normals.contains(&vec![int(1), int(1)]));
        let z = Matrix::from_i64(&[[1, 0], [1, 0]]);
        assert!(matches!(line_set(&z), Err(Error::ZeroColumn(2))));
    }

    #[test]
    fn roots() {
        assert!(compare_positive_roots(&a3(), RootSystem::A3).unwrap());
        assert!(!compare_positive_roots(&a3(), RootSystem::B3).unwrap());
        let mut z = a3();
        for r in 0..3 {
            z[(r, 0)] = int(0);
        }
        assert!(!compare_positive_roots(&z, RootSystem::A3).unwrap());
        assert!(matches!("G2".parse::<RootSystem>(), Err(Error::UnknownSystem(_))));
    }

    #[test]
    fn assignment_json_round_trip() {
        let c = a3_cluster();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains(r#""value":"-1""#));
        let back: ClusterAssignment = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        let bad = r#"{"k":3,"n":6,"cluster":[{"subset":[1,2,4],"value":"2"}]}"#;
        assert!(serde_json::from_str::<ClusterAssignment>(bad).is_err());
    }
}
