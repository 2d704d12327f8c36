//! Frieze patterns.
//!
//! * Conway–Coxeter friezes (`k = 2`) from polygon triangulations by
//!   Ptolemy propagation, and the arithmetic tests telling which labelled
//!   triangles and subpolygons occur inside them.
//! * `SL_k` friezes: positive specializations whose frozen values (the
//!   cyclically consecutive windows) are all 1, and the insertion procedure
//!   that extends a positive configuration of primitive vectors to one.
//!
//! Cyclic windows use the twisted periodic extension `x_{j+n} =
//! (-1)^(k-1) x_j`: with it, the determinant of `k` consecutive columns
//! is the value on the sorted label set, so wrapped frozen values of a
//! positive configuration are positive for every `k`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{
    column_hnf, combinations, det_columns, int_string, is_prime, valuation_unchecked,
    vector_volume, Int, Matrix, Valuation,
};
use crate::pluecker::{first_violation, Specialization};

// ---------------------------------------------------------------------------
// Triangulations

/// A triangulation of the convex `n`-gon with vertices `1..=n`, given by
/// its `n - 3` diagonals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<(usize, usize)>,
}

fn chords_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

impl Triangulation {
    /// Validates and normalizes (`i < j`, sorted) the diagonals.
    pub fn new(n: usize, diagonals: &[(usize, usize)]) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidTriangulation(msg));
        if n < 3 {
            return bad(format!("polygon needs at least 3 vertices, got {n}"));
        }
        let mut diags: Vec<(usize, usize)> = diagonals
            .iter()
            .map(|&(i, j)| (i.min(j), i.max(j)))
            .collect();
        diags.sort_unstable();
        for &(i, j) in &diags {
            if i < 1 || j > n {
                return bad(format!("{i}-{j} is out of range 1..{n}"));
            }
            if j - i < 2 || (i == 1 && j == n) {
                return bad(format!("{i}-{j} is not a diagonal"));
            }
        }
        if let Some(w) = diags.windows(2).find(|w| w[0] == w[1]) {
            return bad(format!("{}-{} is repeated", w[0].0, w[0].1));
        }
        for (a, &d) in diags.iter().enumerate() {
            if let Some(&e) = diags[a + 1..].iter().find(|&&e| chords_cross(d, e)) {
                return bad(format!("{}-{} crosses {}-{}", d.0, d.1, e.0, e.1));
            }
        }
        if diags.len() != n - 3 {
            return bad(format!(
                "{} diagonals given, a triangulation of the {n}-gon has {}",
                diags.len(),
                n - 3
            ));
        }
        Ok(Triangulation { n, diagonals: diags })
    }

    /// Parses comma-separated `i-j` pairs, e.g. `"1-3,1-4"`. The empty
    /// string is the triangulation of the triangle.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut diags = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("expected i-j, got {part:?}")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex {s:?} in {part:?}")))
            };
            diags.push((parse(a)?, parse(b)?));
        }
        Triangulation::new(n, &diags)
    }

    /// Fan of diagonals from vertex 1.
    pub fn fan(n: usize) -> Result<Self> {
        let diags: Vec<_> = (3..n).map(|j| (1, j)).collect();
        Triangulation::new(n, &diags)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Triangulation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({"n": self.n, "diagonals": self.diagonals}).serialize(s)
    }
}

/// Largest polygon [`enumerate_triangulations`] accepts.
pub const MAX_ENUMERATION_N: usize = 12;

/// All `Catalan(n - 2)` triangulations of the `n`-gon, `3 <= n <= 12`.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Triangulation>> {
    if n < 3 {
        return Err(Error::InvalidTriangulation(format!(
            "polygon needs at least 3 vertices, got {n}"
        )));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::ResourceLimit(format!(
            "enumerating triangulations is limited to n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    let mut out = Vec::new();
    for diags in triangulate_chain(1, n) {
        out.push(Triangulation::new(n, &diags)?);
    }
    Ok(out)
}

// Diagonal sets triangulating the polygon a, a+1, ..., b (closing edge a-b).
fn triangulate_chain(a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
    if b - a < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for apex in a + 1..b {
        let left = triangulate_chain(a, apex);
        let right = triangulate_chain(apex, b);
        for l in &left {
            for r in &right {
                let mut d = Vec::with_capacity(l.len() + r.len() + 2);
                if apex - a >= 2 {
                    d.push((a, apex));
                }
                if b - apex >= 2 {
                    d.push((apex, b));
                }
                d.extend_from_slice(l);
                d.extend_from_slice(r);
                out.push(d);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Conway–Coxeter friezes

/// Scan order for Ptolemy propagation. The result does not depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropagationOrder {
    Forward,
    Reverse,
}

/// The Conway–Coxeter frieze of a triangulation: 1 on edges and diagonals,
/// every other pair value determined by Ptolemy relations.
pub fn cc_frieze(t: &Triangulation) -> Result<Specialization> {
    cc_frieze_with_order(t, PropagationOrder::Forward)
}

pub fn cc_frieze_with_order(t: &Triangulation, order: PropagationOrder) -> Result<Specialization> {
    let n = t.n;
    let mut p: Vec<Vec<Option<Int>>> = vec![vec![None; n + 1]; n + 1];
    for i in 1..=n {
        let j = i % n + 1;
        p[i.min(j)][i.max(j)] = Some(Int::one());
    }
    for &(i, j) in &t.diagonals {
        p[i][j] = Some(Int::one());
    }
    let mut quads: Vec<Vec<usize>> = combinations(n, 4)
        .map(|c| c.iter().map(|i| i + 1).collect())
        .collect();
    if order == PropagationOrder::Reverse {
        quads.reverse();
    }
    let mut unknown = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i][j].is_none())
        .count();
    while unknown > 0 {
        let before = unknown;
        for q in &quads {
            let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
            // p_ik p_jl = p_ij p_kl + p_il p_jk
            let rhs = match (&p[i][j], &p[k][l], &p[i][l], &p[j][k]) {
                (Some(a), Some(b), Some(c), Some(d)) => a * b + c * d,
                _ => continue,
            };
            let target = match (&p[i][k], &p[j][l]) {
                (None, Some(jl)) => Some(((i, k), jl.clone())),
                (Some(ik), None) => Some(((j, l), ik.clone())),
                _ => None,
            };
            if let Some(((a, b), divisor)) = target {
                let (quot, rem) = rhs.div_rem(&divisor);
                if !rem.is_zero() {
                    return Err(Error::InternalPostconditionFailure(format!(
                        "Ptolemy quotient for {a}-{b} is not integral"
                    )));
                }
                p[a][b] = Some(quot);
                unknown -= 1;
            }
        }
        if unknown == before {
            return Err(Error::InternalPostconditionFailure(
                "Ptolemy propagation stalled".into(),
            ));
        }
    }
    let s = Specialization::from_fn(2, n, |idx| Ok(p[idx[0]][idx[1]].clone().unwrap_or_default()))?;
    if let Some(v) = first_violation(&s) {
        return Err(Error::InternalPostconditionFailure(format!(
            "frieze violates a Plücker relation: {v}"
        )));
    }
    Ok(s)
}

/// Restriction to the vertices `subset` (strictly increasing, 1-based),
/// relabelled `1..=|subset|` in order.
pub fn restrict(s: &Specialization, subset: &[usize]) -> Result<Specialization> {
    if subset.len() < s.k() {
        return Err(Error::SubsetTooSmall {
            size: subset.len(),
            k: s.k(),
        });
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) || subset[0] < 1 || subset[subset.len() - 1] > s.n() {
        return Err(Error::BadShape(format!(
            "vertex subset {subset:?} is not increasing within 1..{}",
            s.n()
        )));
    }
    Specialization::from_fn(s.k(), subset.len(), |idx| {
        let mapped: Vec<usize> = idx.iter().map(|&i| subset[i - 1]).collect();
        Ok(s.get(&mapped).clone())
    })
}

/// Whether the triangle labels `(a, b, c)` occur in some Conway–Coxeter
/// frieze: equal pairwise gcds, and the 2-adic valuations are either all
/// zero or not all equal.
pub fn triangle_admissible(a: &Int, b: &Int, c: &Int) -> Result<bool> {
    for v in [a, b, c] {
        if !v.is_positive() {
            return Err(Error::NonPositive(v.clone()));
        }
    }
    let g = a.gcd(b);
    if b.gcd(c) != g || a.gcd(c) != g {
        return Ok(false);
    }
    let two = Int::from(2);
    let vals: BTreeSet<Valuation> = [a, b, c]
        .iter()
        .map(|v| valuation_unchecked(v, &two))
        .collect();
    Ok(vals.len() > 1 || vals.contains(&Valuation::Finite(0)))
}

/// Why a specialization is not a subpolygon of a Conway–Coxeter frieze.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubpolygonWitness {
    /// The three pair values on these vertices have unequal gcds.
    Triangle { vertices: [usize; 3] },
    /// All pairs in `vertices` (a `(prime+1)`-set) share one positive
    /// `prime`-valuation.
    Prime {
        #[serde(with = "int_string")]
        prime: Int,
        vertices: Vec<usize>,
        valuation: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubpolygonVerdict {
    pub admissible: bool,
    pub witness: Option<SubpolygonWitness>,
}

/// Whether a positive consistent `k = 2` specialization occurs as a
/// subpolygon of some Conway–Coxeter frieze.
pub fn subpolygon_admissible(s: &Specialization) -> Result<SubpolygonVerdict> {
    if s.k() != 2 {
        return Err(Error::BadShape(format!("expected k = 2, got k = {}", s.k())));
    }
    if let Some((_, v)) = s.iter().find(|(_, v)| !v.is_positive()) {
        return Err(Error::NonPositive(v.clone()));
    }
    if let Some(v) = first_violation(s) {
        return Err(Error::InconsistentSpecialization(v.to_string()));
    }
    let n = s.n();
    let p = |i: usize, j: usize| s.get(&[i.min(j), i.max(j)]);

    for c in combinations(n, 3) {
        let (i, j, l) = (c[0] + 1, c[1] + 1, c[2] + 1);
        let g = p(i, j).gcd(p(j, l));
        if p(i, l).gcd(p(j, l)) != g || p(i, j).gcd(p(i, l)) != g {
            return Ok(SubpolygonVerdict {
                admissible: false,
                witness: Some(SubpolygonWitness::Triangle { vertices: [i, j, l] }),
            });
        }
    }

    for q in (2..n).filter(|&q| is_prime(&Int::from(q))) {
        let qi = Int::from(q);
        let val: Vec<Vec<u32>> = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        if i == 0 || j == 0 || i == j {
                            0
                        } else {
                            valuation_unchecked(p(i, j), &qi).finite().unwrap_or(0)
                        }
                    })
                    .collect()
            })
            .collect();
        let levels: BTreeSet<u32> = val.iter().flatten().copied().filter(|&m| m > 0).collect();
        for m in levels {
            let mut clique = Vec::new();
            if find_clique(n, q + 1, &|i, j| val[i][j] == m, 1, &mut clique) {
                return Ok(SubpolygonVerdict {
                    admissible: false,
                    witness: Some(SubpolygonWitness::Prime {
                        prime: qi,
                        vertices: clique,
                        valuation: m,
                    }),
                });
            }
        }
    }
    Ok(SubpolygonVerdict {
        admissible: true,
        witness: None,
    })
}

// Backtracking search for `size` vertices pairwise related by `edge`.
fn find_clique(
    n: usize,
    size: usize,
    edge: &dyn Fn(usize, usize) -> bool,
    from: usize,
    clique: &mut Vec<usize>,
) -> bool {
    if clique.len() == size {
        return true;
    }
    for v in from..=n {
        if n + 1 - v < size - clique.len() {
            break;
        }
        if clique.iter().all(|&u| edge(u, v)) {
            clique.push(v);
            if find_clique(n, size, edge, v + 1, clique) {
                return true;
            }
            clique.pop();
        }
    }
    false
}

/// Result of the triangle sweep over small Conway–Coxeter friezes.
#[derive(Clone, Debug, Serialize)]
pub struct TriangleSweep {
    pub n_max: usize,
    pub label_max: u64,
    /// Sorted triples seen as subtriangles with all labels `<= label_max`.
    pub realized: BTreeSet<[u64; 3]>,
    /// Sorted triples `<= label_max` accepted by [`triangle_admissible`].
    pub accepted: BTreeSet<[u64; 3]>,
}

impl TriangleSweep {
    /// Accepted triples not seen in the sweep.
    pub fn unrealized(&self) -> Vec<[u64; 3]> {
        self.accepted.difference(&self.realized).copied().collect()
    }

    /// Seen triples that the arithmetic test rejects; always a bug.
    pub fn rejected_but_realized(&self) -> Vec<[u64; 3]> {
        self.realized.difference(&self.accepted).copied().collect()
    }
}

/// Collects every subtriangle of every Conway–Coxeter frieze with
/// `3 <= n <= n_max` and compares with [`triangle_admissible`].
pub fn triangle_sweep(n_max: usize, label_max: u64) -> Result<TriangleSweep> {
    let mut realized = BTreeSet::new();
    for n in 3..=n_max {
        for t in enumerate_triangulations(n)? {
            let s = cc_frieze(&t)?;
            for c in combinations(n, 3) {
                let (i, j, l) = (c[0] + 1, c[1] + 1, c[2] + 1);
                let mut tri = [s.get(&[i, j]), s.get(&[j, l]), s.get(&[i, l])]
                    .map(|v| u64::try_from(v).unwrap_or(u64::MAX));
                tri.sort_unstable();
                if tri[2] <= label_max {
                    realized.insert(tri);
                }
            }
        }
    }
    let mut accepted = BTreeSet::new();
    for a in 1..=label_max {
        for b in a..=label_max {
            for c in b..=label_max {
                let (x, y, z) = (Int::from(a), Int::from(b), Int::from(c));
                if triangle_admissible(&x, &y, &z)? {
                    accepted.insert([a, b, c]);
                }
            }
        }
    }
    Ok(TriangleSweep {
        n_max,
        label_max,
        realized,
        accepted,
    })
}

// ---------------------------------------------------------------------------
// SL_k friezes

/// Value on the sorted label set of the `i`-th cyclic window
/// `[i, i+1, ..., i+k-1]` (labels mod `n`, 1-based).
pub fn frozen_value(s: &Specialization, i: usize) -> Int {
    let (k, n) = (s.k(), s.n());
    let mut idx: Vec<usize> = (0..k).map(|t| (i - 1 + t) % n + 1).collect();
    idx.sort_unstable();
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return Int::zero();
    }
    s.get(&idx).clone()
}

/// All values positive and every frozen value equal to 1.
pub fn is_slk_frieze(s: &Specialization) -> bool {
    s.all_positive() && (1..=s.n()).all(|i| frozen_value(s, i).is_one())
}

/// Rows of the frieze display: entry `(r, c)` is the signed value on the
/// word `[r, r+1, ..., r+k-2, c]` with labels reduced mod `n`, which is 0
/// when `c` falls inside the run.
pub fn frieze_table(s: &Specialization) -> Vec<Vec<Int>> {
    let (k, n) = (s.k(), s.n());
    (1..=n)
        .map(|r| {
            (1..=n)
                .map(|c| {
                    let mut word: Vec<usize> = (0..k - 1).map(|t| (r - 1 + t) % n + 1).collect();
                    word.push(c);
                    s.value_at(&word)
                })
                .collect()
        })
        .collect()
}

/// A cyclic sequence of integer `k`-vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriezeSequence {
    k: usize,
    columns: Vec<Vec<Int>>,
}

impl FriezeSequence {
    pub fn new(k: usize, columns: Vec<Vec<Int>>) -> Result<Self> {
        if k == 0 || columns.is_empty() || columns.iter().any(|c| c.len() != k) {
            return Err(Error::BadShape(format!(
                "need a nonempty list of vectors of length {k}"
            )));
        }
        Ok(FriezeSequence { k, columns })
    }

    pub fn from_matrix(x: &Matrix) -> Self {
        FriezeSequence {
            k: x.rows(),
            columns: x.columns(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Vec<Int>] {
        &self.columns
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.columns).expect("nonempty sequence")
    }

    /// Column `t` of the twisted periodic extension (`t >= 0`).
    fn twisted(&self, t: usize) -> Vec<Int> {
        let len = self.columns.len();
        let col = &self.columns[t % len];
        if self.k.is_multiple_of(2) && !(t / len).is_multiple_of(2) {
            col.iter().map(|v| -v).collect()
        } else {
            col.clone()
        }
    }

    /// Determinants of the `len` cyclic windows of `k` consecutive columns.
    pub fn frozen_values(&self) -> Vec<Int> {
        (0..self.len()).map(|s| self.window_det(s)).collect()
    }

    fn window_det(&self, start: usize) -> Int {
        let cols: Vec<Vec<Int>> = (start..start + self.k).map(|t| self.twisted(t)).collect();
        let refs: Vec<&[Int]> = cols.iter().map(Vec::as_slice).collect();
        det_columns(&refs)
    }

    /// Product of the frozen values.
    pub fn frozen_product(&self) -> Int {
        self.frozen_values().iter().product()
    }
}

impl Serialize for FriezeSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_matrix().serialize(s)
    }
}

/// Normals of the `k` consecutive `(k-1)`-windows of a frame of `2k - 2`
/// columns.
///
/// `alpha_j . y` is the determinant of the window obtained by inserting
/// `y` between frame columns `k - 1` and `k` (1-based) into the `k - 1`
/// columns `j, ..., j + k - 2`, so `alpha_j` is orthogonal to those
/// columns. Stacked as rows they form a matrix `A` whose determinant is,
/// up to sign, the product of the `k - 1` frame windows of length `k`
/// that straddle the insertion point.
pub fn alpha_normals(frame: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
    let k = frame.first().map_or(0, Vec::len);
    if k < 2 || frame.len() != 2 * k - 2 || frame.iter().any(|c| c.len() != k) {
        return Err(Error::BadShape(format!(
            "frame must consist of 2k-2 vectors of length k >= 2, got {} vectors",
            frame.len()
        )));
    }
    let mut alphas = Vec::with_capacity(k);
    for j in 0..k {
        let cols = &frame[j..j + k - 1];
        // y sits at position k-1-j of the window
        let pos = k - 1 - j;
        let alpha: Vec<Int> = (0..k)
            .map(|i| {
                let rows: Vec<usize> = (0..k).filter(|&r| r != i).collect();
                let minor_cols: Vec<Vec<Int>> = cols
                    .iter()
                    .map(|c| rows.iter().map(|&r| c[r].clone()).collect())
                    .collect();
                let refs: Vec<&[Int]> = minor_cols.iter().map(Vec::as_slice).collect();
                let m = det_columns(&refs);
                if (i + pos) % 2 == 1 {
                    -m
                } else {
                    m
                }
            })
            .collect();
        if alpha.iter().all(Zero::is_zero) {
            return Err(Error::RankDeficientWindow(j + 1));
        }
        alphas.push(alpha);
    }
    Ok(alphas)
}

/// Which branch produced an insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InsertionCase {
    /// Some normal is not primitive; normals are divided by their content
    /// before the Hermite normal form.
    A,
    /// All normals primitive.
    B,
}

/// How the inserted vector was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InsertionMethod {
    /// Read off the Hermite normal form.
    Hnf,
    /// Hermite choice did not lower the frozen product (or broke
    /// positivity); a lattice search over the same window found the
    /// insertion with the smallest product.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionStep {
    /// 1-based start of the window in the sequence before insertion.
    pub window: usize,
    /// 1-based position of the new vector in the sequence after insertion.
    pub position: usize,
    #[serde(serialize_with = "ser_vec")]
    pub vector: Vec<Int>,
    pub case: InsertionCase,
    pub method: InsertionMethod,
    #[serde(with = "int_string")]
    pub d_before: Int,
    #[serde(with = "int_string")]
    pub d_after: Int,
}

fn ser_vec<S: Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionTrace {
    pub steps: Vec<ExtensionStep>,
    #[serde(rename = "final")]
    pub final_sequence: FriezeSequence,
    /// 1-based position in the final sequence of each original column.
    pub embedding: Vec<usize>,
}

/// Upper bound on lattice candidates enumerated in one window.
const SEARCH_LIMIT: usize = 2_000_000;
/// Upper bound on candidate insertions examined over a whole extension.
const ATTEMPT_LIMIT: usize = 1_000_000;

/// Extends a configuration of primitive vectors with positive maximal
/// minors to an `SL_k` frieze by inserting vectors between consecutive
/// columns, each insertion strictly lowering the product `D` of the frozen
/// values while keeping every increasing minor positive.
///
/// Insertions are tried in a fixed preference order: windows whose first
/// frozen value exceeds 1 by increasing start, then the remaining windows
/// that straddle a frozen value above 1; within a window the Hermite choice
/// first, then every other strictly decreasing lattice vector by product.
/// The first choice is almost always final; when it leads to a state with
/// no decreasing insertion the search backs up and tries the next one.
pub fn extend_to_slk(x: &Matrix) -> Result<ExtensionTrace> {
    let (k, n) = (x.rows(), x.cols());
    if k > n {
        return Err(Error::PreconditionViolated(format!(
            "need at least k = {k} columns, got {n}"
        )));
    }
    if let Some(j) = (0..n).find(|&j| !vector_volume(&x.column(j)).is_one()) {
        return Err(Error::PreconditionViolated(format!(
            "column {} is not primitive",
            j + 1
        )));
    }
    for c in combinations(n, k) {
        let cols: Vec<Vec<Int>> = c.iter().map(|&j| x.column(j)).collect();
        let refs: Vec<&[Int]> = cols.iter().map(Vec::as_slice).collect();
        if !det_columns(&refs).is_positive() {
            let labels: Vec<usize> = c.iter().map(|j| j + 1).collect();
            return Err(Error::PreconditionViolated(format!(
                "minor on {labels:?} is not positive"
            )));
        }
    }

    let mut seq = FriezeSequence::from_matrix(x);
    let mut origin: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut steps: Vec<ExtensionStep> = Vec::new();
    let mut stack = vec![Frame::new(seq.frozen_product())];
    let mut dead: HashSet<Vec<Vec<Int>>> = HashSet::new();
    let mut attempts = 0usize;

    loop {
        let frame = stack.last_mut().expect("nonempty search stack");
        if frame.d.is_one() {
            break;
        }
        match frame.next_candidate(&seq)? {
            Some(c) => {
                attempts += 1;
                if attempts > ATTEMPT_LIMIT {
                    return Err(Error::ResourceLimit(format!(
                        "more than {ATTEMPT_LIMIT} candidate insertions examined"
                    )));
                }
                let Some(next) = admissible(&seq, c.index, &c.vector) else {
                    continue;
                };
                if dead.contains(next.columns()) {
                    continue;
                }
                let d_after = next.frozen_product();
                steps.push(ExtensionStep {
                    window: c.window + 1,
                    position: c.index + 1,
                    vector: c.vector,
                    case: c.case,
                    method: c.method,
                    d_before: frame.d.clone(),
                    d_after: d_after.clone(),
                });
                seq = next;
                origin.insert(c.index, None);
                stack.push(Frame::new(d_after));
            }
            None => {
                dead.insert(seq.columns.clone());
                stack.pop();
                let Some(step) = steps.pop() else {
                    return Err(Error::InternalPostconditionFailure(
                        "no sequence of insertions lowering the frozen product reaches 1".into(),
                    ));
                };
                seq.columns.remove(step.position - 1);
                origin.remove(step.position - 1);
            }
        }
    }

    let mut embedding = vec![0; n];
    for (pos, o) in origin.iter().enumerate() {
        if let Some(j) = o {
            embedding[*j] = pos + 1;
        }
    }
    Ok(ExtensionTrace {
        steps,
        final_sequence: seq,
        embedding,
    })
}

struct Candidate {
    window: usize,
    index: usize,
    vector: Vec<Int>,
    case: InsertionCase,
    method: InsertionMethod,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Stage {
    Hermite,
    Search,
}

// Search state for one sequence on the insertion stack. Holds no copy of
// the sequence: while a frame is on top, the working sequence is its own.
struct Frame {
    d: Int,
    // 0: windows whose first frozen value exceeds 1; 1: the others
    phase: u8,
    next_window: usize,
    current: Option<(usize, Stage)>,
    pending: Vec<Candidate>,
}

impl Frame {
    fn new(d: Int) -> Self {
        Frame {
            d,
            phase: 0,
            next_window: 0,
            current: None,
            pending: Vec::new(),
        }
    }

    fn next_candidate(&mut self, seq: &FriezeSequence) -> Result<Option<Candidate>> {
        loop {
            if let Some(c) = self.pending.pop() {
                return Ok(Some(c));
            }
            match self.current {
                Some((s, Stage::Hermite)) => {
                    self.current = Some((s, Stage::Search));
                    let w = Window::new(seq, s)?;
                    let mut found = w.search()?;
                    found.reverse();
                    self.pending = found;
                }
                _ => {
                    let Some(s) = self.advance(seq) else {
                        return Ok(None);
                    };
                    self.current = Some((s, Stage::Hermite));
                    self.pending = vec![Window::new(seq, s)?.hermite()?];
                }
            }
        }
    }

    fn advance(&mut self, seq: &FriezeSequence) -> Option<usize> {
        let frozen = seq.frozen_values();
        let len = seq.len();
        let k = seq.k();
        while self.phase < 2 {
            while self.next_window < len {
                let s = self.next_window;
                self.next_window += 1;
                let first_big = frozen[s] > Int::one();
                let straddles_big = (s..s + k - 1).any(|t| frozen[t % len] > Int::one());
                let take = if self.phase == 0 {
                    first_big
                } else {
                    !first_big && straddles_big
                };
                if take {
                    return Some(s);
                }
            }
            self.phase += 1;
            self.next_window = 0;
        }
        None
    }
}

// Geometry of inserting after frame column k-2 of the frame starting at s.
struct Window {
    s: usize,
    alphas: Vec<Vec<Int>>,
    // product of the frozen values the insertion replaces; the new ones are
    // alpha_j . y, so a decreasing y has prod(alpha_j . y) < removed
    removed: Int,
    index: usize,
    flip: bool,
    case: InsertionCase,
}

impl Window {
    fn new(seq: &FriezeSequence, s: usize) -> Result<Self> {
        let k = seq.k();
        let len = seq.len();
        let frame: Vec<Vec<Int>> = (s..s + 2 * k - 2).map(|t| seq.twisted(t)).collect();
        let alphas = alpha_normals(&frame)?;
        let removed: Int = (s..s + k - 1).map(|t| seq.window_det(t % len)).product();
        let after = s + k - 2;
        let case = if alphas.iter().all(|a| vector_volume(a).is_one()) {
            InsertionCase::B
        } else {
            InsertionCase::A
        };
        Ok(Window {
            s,
            alphas,
            removed,
            index: after % len + 1,
            flip: k.is_multiple_of(2) && !(after / len).is_multiple_of(2),
            case,
        })
    }

    // frame coordinates -> sequence coordinates
    fn place(&self, y: &[Int]) -> Vec<Int> {
        if self.flip {
            y.iter().map(|v| -v).collect()
        } else {
            y.to_vec()
        }
    }

    fn candidate(&self, y: &[Int], method: InsertionMethod) -> Candidate {
        Candidate {
            window: self.s,
            index: self.index,
            vector: self.place(y),
            case: self.case,
            method,
        }
    }

    /// Hermite normal form of the normals divided by their contents; each
    /// coordinate of `z` is taken as the least representative in
    /// `(0, h_ii]` of its residue class.
    fn hermite(&self) -> Result<Candidate> {
        let k = self.alphas.len();
        let normalized: Vec<Vec<Int>> = self
            .alphas
            .iter()
            .map(|a| {
                let c = vector_volume(a);
                a.iter().map(|v| v / &c).collect()
            })
            .collect();
        let hnf = column_hnf(&Matrix::from_rows(normalized)?)?;
        let mut yp = vec![Int::zero(); k];
        for i in 0..k {
            let c: Int = (0..i).map(|m| &hnf.h[(i, m)] * &yp[m]).sum();
            let hii = &hnf.h[(i, i)];
            yp[i] = (hii - &c).div_floor(hii);
        }
        Ok(self.candidate(&hnf.u.apply(&yp), InsertionMethod::Hnf))
    }

    /// Every `y` with all `alpha_j . y > 0` and product below `removed`,
    /// smallest product first.
    fn search(&self) -> Result<Vec<Candidate>> {
        let k = self.alphas.len();
        let hnf = column_hnf(&Matrix::from_rows(self.alphas.clone())?)?;
        let mut found = Vec::new();
        let mut yp = vec![Int::zero(); k];
        lattice_points(&hnf.h, &self.removed, 0, &Int::one(), &mut yp, &mut Vec::new(), &mut found)?;
        found.sort();
        Ok(found
            .into_iter()
            .map(|(_, _, yp)| self.candidate(&hnf.u.apply(&yp), InsertionMethod::Search))
            .collect())
    }
}

// All y' with every z_i = (H y')_i positive and prod z < bound, as
// (product, z, y').
fn lattice_points(
    h: &Matrix,
    bound: &Int,
    i: usize,
    product: &Int,
    yp: &mut Vec<Int>,
    z: &mut Vec<Int>,
    out: &mut Vec<(Int, Vec<Int>, Vec<Int>)>,
) -> Result<()> {
    let k = h.rows();
    if i == k {
        if out.len() >= SEARCH_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "more than {SEARCH_LIMIT} lattice candidates in one window"
            )));
        }
        out.push((product.clone(), z.clone(), yp.clone()));
        return Ok(());
    }
    let c: Int = (0..i).map(|m| &h[(i, m)] * &yp[m]).sum();
    let hii = h[(i, i)].clone();
    let mut t = (&hii - &c).div_floor(&hii);
    loop {
        let zi = &c + &hii * &t;
        let next = product * &zi;
        if &next >= bound {
            break;
        }
        yp[i] = t.clone();
        z.push(zi);
        lattice_points(h, bound, i + 1, &next, yp, z, out)?;
        z.pop();
        t += 1;
    }
    yp[i] = Int::zero();
    Ok(())
}

// The sequence with `y` inserted at `index` if `y` is primitive, lowers
// the frozen product, and keeps every increasing minor through it positive.
fn admissible(seq: &FriezeSequence, index: usize, y: &[Int]) -> Option<FriezeSequence> {
    if !vector_volume(y).is_one() {
        return None;
    }
    let k = seq.k();
    let mut columns = seq.columns.clone();
    columns.insert(index, y.to_vec());
    let next = FriezeSequence { k, columns };
    let frozen = next.frozen_values();
    if frozen.iter().any(|v| !v.is_positive()) {
        return None;
    }
    let new_product: Int = frozen.iter().product();
    if new_product >= seq.frozen_product() {
        return None;
    }
    let new_len = next.len();
    let others: Vec<usize> = (0..new_len).filter(|&j| j != index).collect();
    for c in combinations(new_len - 1, k - 1) {
        let mut labels: Vec<usize> = c.iter().map(|&t| others[t]).collect();
        labels.push(index);
        labels.sort_unstable();
        let refs: Vec<&[Int]> = labels.iter().map(|&j| next.columns[j].as_slice()).collect();
        if !det_columns(&refs).is_positive() {
            return None;
        }
    }
    Some(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::pluecker::pluecker_of_matrix;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn triangulation_validation() {
        assert!(Triangulation::parse(4, "1-3").is_ok());
        assert!(Triangulation::parse(3, "").is_ok());
        assert!(Triangulation::parse(5, "1-3,2-4").is_err());
        assert!(Triangulation::parse(5, "1-3").is_err());
        assert!(Triangulation::parse(5, "1-2,1-3").is_err());
        assert!(Triangulation::parse(5, "1-3,1-3").is_err());
        assert!(Triangulation::parse(5, "1-3,x").is_err());
        assert_eq!(Triangulation::parse(6, "1-3,1-4,1-5").unwrap().to_string(), "1-3,1-4,1-5");
    }

    #[test]
    fn triangulation_counts() {
        let counts: Vec<usize> = (3..=9)
            .map(|n| enumerate_triangulations(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132, 429]);
        let all = enumerate_triangulations(7).unwrap();
        let distinct: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(matches!(enumerate_triangulations(13), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn square_and_triangle_friezes() {
        let s = cc_frieze(&Triangulation::parse(4, "1-3").unwrap()).unwrap();
        assert_eq!(*s.get(&[2, 4]), int(2));
        assert_eq!(s.iter().filter(|(_, v)| v.is_one()).count(), 5);
        let s = cc_frieze(&Triangulation::parse(3, "").unwrap()).unwrap();
        assert!(s.iter().all(|(_, v)| v.is_one()));
    }

    #[test]
    fn pentagon_value_multiset() {
        for t in enumerate_triangulations(5).unwrap() {
            let s = cc_frieze(&t).unwrap();
            let ones = s.iter().filter(|(_, v)| v.is_one()).count();
            let twos = s.iter().filter(|(_, v)| **v == int(2)).count();
            let threes = s.iter().filter(|(_, v)| **v == int(3)).count();
            // quiddity row is a rotation of (1, 3, 1, 2, 2)
            assert_eq!((ones, twos, threes), (7, 2, 1), "{t}");
        }
    }

    #[test]
    fn propagation_order_is_irrelevant() {
        for t in enumerate_triangulations(8).unwrap() {
            assert_eq!(
                cc_frieze_with_order(&t, PropagationOrder::Forward).unwrap(),
                cc_frieze_with_order(&t, PropagationOrder::Reverse).unwrap()
            );
        }
    }

    #[test]
    fn restriction() {
        let s = cc_frieze(&Triangulation::fan(6).unwrap()).unwrap();
        assert_eq!(restrict(&s, &[1, 2, 3, 4, 5, 6]).unwrap(), s);
        let r = restrict(&s, &[2, 4, 6]).unwrap();
        assert_eq!(*r.get(&[1, 2]), *s.get(&[2, 4]));
        assert_eq!(*r.get(&[2, 3]), *s.get(&[4, 6]));
        let (a, b, c) = (r.get(&[1, 2]), r.get(&[2, 3]), r.get(&[1, 3]));
        assert!(triangle_admissible(a, b, c).unwrap());
        assert!(matches!(
            restrict(&s, &[3]),
            Err(Error::SubsetTooSmall { size: 1, k: 2 })
        ));
        assert!(restrict(&s, &[3, 2]).is_err());
    }

    #[test]
    fn triangles() {
        let t = |a, b, c| triangle_admissible(&int(a), &int(b), &int(c)).unwrap();
        assert!(t(1, 1, 1));
        assert!(!t(2, 2, 2));
        assert!(t(3, 3, 3));
        assert!(t(2, 2, 4));
        assert!(!t(2, 3, 4));
        assert!(matches!(
            triangle_admissible(&int(0), &int(1), &int(1)),
            Err(Error::NonPositive(_))
        ));
    }

    #[test]
    fn subpolygons() {
        for t in enumerate_triangulations(7).unwrap() {
            assert!(subpolygon_admissible(&cc_frieze(&t).unwrap()).unwrap().admissible);
        }
        let twos = Specialization::constant(2, 3, int(2)).unwrap();
        let v = subpolygon_admissible(&twos).unwrap();
        assert_eq!(
            v.witness,
            Some(SubpolygonWitness::Prime {
                prime: int(2),
                vertices: vec![1, 2, 3],
                valuation: 1
            })
        );
        let map = [(vec![1, 2], int(2)), (vec![1, 3], int(2)), (vec![2, 3], int(1))]
            .into_iter()
            .collect();
        let s = Specialization::from_map(2, 3, &map).unwrap();
        // gcd(2, 2) differs from gcd(2, 1)
        assert!(matches!(
            subpolygon_admissible(&s).unwrap().witness,
            Some(SubpolygonWitness::Triangle { .. })
        ));
    }

    #[test]
    fn slk_frieze_recognition() {
        for t in enumerate_triangulations(6).unwrap() {
            assert!(is_slk_frieze(&cc_frieze(&t).unwrap()));
        }
        assert!(!is_slk_frieze(&Specialization::constant(2, 3, int(3)).unwrap()));
        let a3 = Matrix::from_i64(&[[0, 1, 1, 0, 1, 0], [0, 0, 1, 1, 1, 1], [1, 0, 0, 1, 1, 0]]);
        assert!(!is_slk_frieze(&pluecker_of_matrix(&a3).unwrap()));
    }

    #[test]
    fn alpha_convention() {
        let frame = vec![ints(&[1, 0]), ints(&[0, 1])];
        let a = alpha_normals(&frame).unwrap();
        // alpha_1 . y = det(x1, y), alpha_2 . y = det(y, x2)
        assert_eq!(a, vec![ints(&[0, 1]), ints(&[1, 0])]);

        let a3 = Matrix::from_i64(&[[0, 1, 1, 0, 1, 0], [0, 0, 1, 1, 1, 1], [1, 0, 0, 1, 1, 0]]);
        let frame: Vec<Vec<Int>> = (0..4).map(|j| a3.column(j)).collect();
        let alphas = alpha_normals(&frame).unwrap();
        for (j, alpha) in alphas.iter().enumerate() {
            for col in &frame[j..j + 2] {
                let dot: Int = alpha.iter().zip(col).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        assert!(matches!(
            alpha_normals(&[ints(&[1, 0, 0]), ints(&[2, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]),
            Err(Error::RankDeficientWindow(1))
        ));
    }

    #[test]
    fn extension_of_an_slk_frieze_is_trivial() {
        let x = Matrix::from_i64(&[[1, 0, -1], [0, 1, 1]]);
        let trace = extend_to_slk(&x).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.embedding, vec![1, 2, 3]);
    }

    #[test]
    fn extension_rank_two() {
        let x = Matrix::from_i64(&[[1, 0, -1], [0, 1, 2]]);
        let trace = extend_to_slk(&x).unwrap();
        let fin = trace.final_sequence.to_matrix();
        assert!(is_slk_frieze(&pluecker_of_matrix(&fin).unwrap()));
        for (j, &pos) in trace.embedding.iter().enumerate() {
            assert_eq!(fin.column(pos - 1), x.column(j));
        }
        for w in trace.steps.windows(2) {
            assert_eq!(w[0].d_after, w[1].d_before);
        }
        assert!(trace.steps.iter().all(|s| s.d_after < s.d_before));
    }

    #[test]
    fn extension_rank_three() {
        let x = Matrix::from_i64(&[[1, 0, 0, 1], [0, 1, 0, -2], [0, 0, 1, 3]]);
        let s = pluecker_of_matrix(&x).unwrap();
        assert!(s.all_positive());
        let trace = extend_to_slk(&x).unwrap();
        let fin = pluecker_of_matrix(&trace.final_sequence.to_matrix()).unwrap();
        assert!(is_slk_frieze(&fin));
    }

    #[test]
    fn extension_preconditions() {
        let x = Matrix::from_i64(&[[2, 0], [0, 1]]);
        assert!(matches!(extend_to_slk(&x), Err(Error::PreconditionViolated(_))));
        let x = Matrix::from_i64(&[[0, 1], [1, 0]]);
        assert!(matches!(extend_to_slk(&x), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn table_has_zero_diagonal_and_unit_neighbours() {
        let t = Triangulation::fan(5).unwrap();
        let s = cc_frieze(&t).unwrap();
        let table = frieze_table(&s);
        assert_eq!(table.len(), 5);
        // diagonal zeros, frozen ones next to them
        for (r, row) in table.iter().enumerate() {
            assert!(row[r].is_zero());
            assert!(row[(r + 1) % 5].is_one() || r == 4);
        }
    }
}
