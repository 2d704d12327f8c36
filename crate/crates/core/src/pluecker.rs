//! k-subsets, Plücker coordinates of integer matrices, and the quadratic
//! Plücker relations.
//!
//! Column labels are 1-based throughout this module: a [`KSubset`] of
//! `{1, ..., n}` selects columns `i - 1` of a matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{binomial, combinations, det_columns, Int, IntRepr, Matrix};

/// Strictly increasing k-subset of `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct KSubset {
    n: usize,
    indices: Vec<usize>,
}

impl KSubset {
    pub fn new(n: usize, indices: Vec<usize>) -> Result<Self> {
        if indices.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::BadShape(format!("{indices:?} not within 1..={n}")));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadShape(format!("{indices:?} is not strictly increasing")));
        }
        Ok(KSubset { n, indices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// 0-based column positions.
    pub fn columns(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i - 1).collect()
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join_indices(&self.indices))
    }
}

pub(crate) fn join_indices(idx: &[usize]) -> String {
    idx.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Arbitrary sequence of labels in `{1, ..., n}`; repetitions allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IndexWord {
    n: usize,
    letters: Vec<usize>,
}

impl IndexWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if letters.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::BadShape(format!("{letters:?} not within 1..={n}")));
        }
        Ok(IndexWord { n, letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }
}

/// Sorts a word. Returns the sign of the sorting permutation and the sorted
/// subset, or `(0, None)` when a letter repeats.
pub fn normalize_index(w: &IndexWord) -> (i32, Option<KSubset>) {
    match sort_with_sign(&w.letters) {
        Some((sign, sorted)) => (sign, Some(KSubset { n: w.n, indices: sorted })),
        None => (0, None),
    }
}

pub(crate) fn sort_with_sign(letters: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut v = letters.to_vec();
    let mut sign = 1;
    // insertion sort; the word length is k
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// Integer values on all k-subsets of `{1, ..., n}`.
///
/// Values are stored on sorted subsets only; signed access for arbitrary
/// words goes through [`Specialization::value_at`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Specialization {
    k: usize,
    n: usize,
    // colexicographic rank -> value
    values: Vec<Int>,
}

fn colex_rank(sorted: &[usize]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(pos, &i)| binomial(i - 1, pos + 1) as usize)
        .sum()
}

impl Specialization {
    /// Builds a specialization by evaluating `f` on every sorted 1-based
    /// subset.
    pub fn from_fn<F>(k: usize, n: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Result<Int>,
    {
        if k == 0 || k > n {
            return Err(Error::BadShape(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        let len = binomial(n, k);
        if len > 50_000_000 {
            return Err(Error::ResourceLimit(format!("C({n},{k}) subsets")));
        }
        let mut values = vec![Int::zero(); len as usize];
        for c in combinations(n, k) {
            let idx: Vec<usize> = c.iter().map(|i| i + 1).collect();
            values[colex_rank(&idx)] = f(&idx)?;
        }
        Ok(Specialization { k, n, values })
    }

    /// Builds a specialization from an explicit table; every subset must be
    /// present.
    pub fn from_map(k: usize, n: usize, map: &BTreeMap<Vec<usize>, Int>) -> Result<Self> {
        for key in map.keys() {
            KSubset::new(n, key.clone())?;
            if key.len() != k {
                return Err(Error::Parse(format!("key {key:?} does not have {k} entries")));
            }
        }
        Specialization::from_fn(k, n, |idx| {
            map.get(idx)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("missing value for {}", join_indices(idx))))
        })
    }

    /// Same value on every subset.
    pub fn constant(k: usize, n: usize, value: Int) -> Result<Self> {
        Specialization::from_fn(k, n, |_| Ok(value.clone()))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on a sorted 1-based subset.
    pub fn get(&self, sorted: &[usize]) -> &Int {
        debug_assert_eq!(sorted.len(), self.k);
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
        &self.values[colex_rank(sorted)]
    }

    pub fn get_subset(&self, s: &KSubset) -> &Int {
        self.get(&s.indices)
    }

    /// Signed value on an arbitrary word of labels; zero on repeated letters.
    pub fn value_at(&self, word: &[usize]) -> Int {
        match sort_with_sign(word) {
            Some((sign, sorted)) => {
                let v = self.get(&sorted);
                if sign < 0 {
                    -v
                } else {
                    v.clone()
                }
            }
            None => Int::zero(),
        }
    }

    /// `(subset, value)` pairs in lexicographic order of the subsets.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Int)> + '_ {
        combinations(self.n, self.k).map(move |c| {
            let idx: Vec<usize> = c.iter().map(|i| i + 1).collect();
            let v = self.get(&idx);
            (idx, v)
        })
    }

    /// First subset (lexicographically) with value zero.
    pub fn first_zero(&self) -> Option<Vec<usize>> {
        self.iter().find(|(_, v)| v.is_zero()).map(|(s, _)| s)
    }

    pub fn require_nonzero(&self) -> Result<()> {
        match self.first_zero() {
            Some(s) => Err(Error::ZeroValue(s)),
            None => Ok(()),
        }
    }

    pub fn all_positive(&self) -> bool {
        self.values.iter().all(Signed::is_positive)
    }

    /// Applies `f` to every value.
    pub fn map_values<F: FnMut(&Int) -> Int>(&self, f: F) -> Specialization {
        Specialization {
            k: self.k,
            n: self.n,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn to_map(&self) -> BTreeMap<Vec<usize>, Int> {
        self.iter().map(|(s, v)| (s, v.clone())).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SpecializationJson<V> {
    k: usize,
    n: usize,
    values: BTreeMap<String, V>,
}

impl Serialize for Specialization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // BTreeMap on strings would sort "1,10" before "1,2"; keep subset order.
        use serde::ser::SerializeMap;
        struct Values<'a>(&'a Specialization);
        impl Serialize for Values<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (idx, v) in self.0.iter() {
                    m.serialize_entry(&join_indices(&idx), &v.to_string())?;
                }
                m.end()
            }
        }
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Specialization", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("values", &Values(self))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Specialization {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: SpecializationJson<IntRepr> = SpecializationJson::deserialize(d)?;
        let mut map = BTreeMap::new();
        for (key, v) in raw.values {
            let idx = key
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| D::Error::custom(format!("bad subset key {key:?}")))?;
            let v = v.into_int().map_err(D::Error::custom)?;
            if map.insert(idx, v).is_some() {
                return Err(D::Error::custom(format!("duplicate key {key:?}")));
            }
        }
        Specialization::from_map(raw.k, raw.n, &map).map_err(D::Error::custom)
    }
}

/// Maximal minors of a `k x n` matrix.
pub fn pluecker_of_matrix(x: &Matrix) -> Result<Specialization> {
    let (k, n) = (x.rows(), x.cols());
    if k > n {
        return Err(Error::BadShape(format!(
            "{k}x{n} matrix has no maximal minors on column subsets"
        )));
    }
    let cols = x.columns();
    Specialization::from_fn(k, n, |idx| {
        let sel: Vec<&[Int]> = idx.iter().map(|&i| cols[i - 1].as_slice()).collect();
        Ok(det_columns(&sel))
    })
}

/// Signed value of `s` on a word.
pub fn value_at(s: &Specialization, w: &IndexWord) -> Int {
    s.value_at(w.letters())
}

/// One nonzero instance of the three-term (more generally (k+1)-term)
/// exchange relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    /// The (k-1)-subset `i_1 < ... < i_{k-1}`.
    pub i: Vec<usize>,
    /// The (k+1)-subset `j_0 < ... < j_k`.
    pub j: Vec<usize>,
    #[serde(with = "crate::exactlin::int_string")]
    pub value: Int,
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relation i=({}) j=({}) evaluates to {}",
            join_indices(&self.i),
            join_indices(&self.j),
            self.value
        )
    }
}

/// Evaluates `sum_r (-1)^r p[i, j_r] p[j \ j_r]` for the relation indexed by
/// `(i, j)`.
pub fn relation_value(s: &Specialization, i: &[usize], j: &[usize]) -> Int {
    let mut total = Int::zero();
    let mut word = Vec::with_capacity(i.len() + 1);
    let mut rest = Vec::with_capacity(j.len() - 1);
    for r in 0..j.len() {
        word.clear();
        word.extend_from_slice(i);
        word.push(j[r]);
        let left = s.value_at(&word);
        if left.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(j.iter().enumerate().filter(|&(t, _)| t != r).map(|(_, &v)| v));
        let term = left * s.get(&rest);
        if r % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// All violated Plücker relations, with `i` ranging over (k-1)-subsets and
/// `j` over (k+1)-subsets. Empty iff `s` is consistent.
pub fn check_pluecker_relations(s: &Specialization) -> Vec<RelationViolation> {
    let mut out = Vec::new();
    for_each_relation(s, |i, j, v| {
        out.push(RelationViolation {
            i: i.to_vec(),
            j: j.to_vec(),
            value: v,
        });
        true
    });
    out
}

/// First violated relation, if any.
pub fn first_violation(s: &Specialization) -> Option<RelationViolation> {
    let mut found = None;
    for_each_relation(s, |i, j, v| {
        found = Some(RelationViolation {
            i: i.to_vec(),
            j: j.to_vec(),
            value: v,
        });
        false
    });
    found
}

pub fn is_consistent(s: &Specialization) -> bool {
    first_violation(s).is_none()
}

fn for_each_relation<F>(s: &Specialization, mut on_violation: F)
where
    F: FnMut(&[usize], &[usize], Int) -> bool,
{
    let (k, n) = (s.k(), s.n());
    if k + 1 > n {
        return;
    }
    for ic in combinations(n, k - 1) {
        let i: Vec<usize> = ic.iter().map(|v| v + 1).collect();
        for jc in combinations(n, k + 1) {
            let j: Vec<usize> = jc.iter().map(|v| v + 1).collect();
            let v = relation_value(s, &i, &j);
            if !v.is_zero() && !on_violation(&i, &j, v) {
                return;
            }
        }
    }
}

/// Zero set of a specialization plus a basis-exchange audit of its
/// complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatroidSupport {
    pub zero_set: Vec<Vec<usize>>,
    pub exchange_holds: bool,
    /// `(B1, B2, x)` with no `y` in `B2 \ B1` such that `B1 - x + y` is a
    /// basis.
    pub exchange_witness: Option<(Vec<usize>, Vec<usize>, usize)>,
}

pub fn support_matroid(s: &Specialization) -> MatroidSupport {
    let zero_set: Vec<Vec<usize>> = s
        .iter()
        .filter(|(_, v)| v.is_zero())
        .map(|(idx, _)| idx)
        .collect();
    let bases: Vec<Vec<usize>> = s
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(idx, _)| idx)
        .collect();
    let is_basis = |set: &[usize]| -> bool { !s.get(set).is_zero() };
    let mut witness = None;
    if bases.is_empty() {
        return MatroidSupport {
            zero_set,
            exchange_holds: false,
            exchange_witness: None,
        };
    }
    'outer: for b1 in &bases {
        for b2 in &bases {
            for &x in b1.iter().filter(|x| !b2.contains(x)) {
                let ok = b2.iter().filter(|y| !b1.contains(y)).any(|&y| {
                    let mut cand: Vec<usize> =
                        b1.iter().copied().filter(|&v| v != x).chain([y]).collect();
                    cand.sort_unstable();
                    is_basis(&cand)
                });
                if !ok {
                    witness = Some((b1.clone(), b2.clone(), x));
                    break 'outer;
                }
            }
        }
    }
    MatroidSupport {
        zero_set,
        exchange_holds: witness.is_none(),
        exchange_witness: witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    fn spec(k: usize, n: usize, vals: &[(&[usize], i64)]) -> Specialization {
        let map = vals.iter().map(|(s, v)| (s.to_vec(), int(*v))).collect();
        Specialization::from_map(k, n, &map).unwrap()
    }

    #[test]
    fn normalize_index_examples() {
        let w = IndexWord::new(3, vec![2, 1]).unwrap();
        assert_eq!(normalize_index(&w), (-1, Some(KSubset::new(3, vec![1, 2]).unwrap())));
        let w = IndexWord::new(3, vec![1, 3, 2]).unwrap();
        assert_eq!(normalize_index(&w), (-1, Some(KSubset::new(3, vec![1, 2, 3]).unwrap())));
        let w = IndexWord::new(4, vec![1, 1, 4]).unwrap();
        assert_eq!(normalize_index(&w), (0, None));
        let w = IndexWord::new(4, vec![3, 1, 2]).unwrap();
        assert_eq!(normalize_index(&w).0, 1);
        assert!(IndexWord::new(3, vec![0, 1]).is_err());
        assert!(KSubset::new(3, vec![2, 1]).is_err());
    }

    #[test]
    fn pluecker_of_reference_matrices() {
        for m in [
            Matrix::from_i64(&[[1, 1, 0], [0, 3, 3]]),
            Matrix::from_i64(&[[1, 2, 1], [0, 3, 3]]),
        ] {
            let s = pluecker_of_matrix(&m).unwrap();
            assert_eq!(s, Specialization::constant(2, 3, int(3)).unwrap());
        }
        let s = pluecker_of_matrix(&Matrix::identity(2)).unwrap();
        assert_eq!(s.get(&[1, 2]), &int(1));
        assert_eq!(s.len(), 1);
        assert!(pluecker_of_matrix(&Matrix::from_i64(&[[1], [2]])).is_err());
    }

    #[test]
    fn value_at_examples() {
        let s = spec(2, 2, &[(&[1, 2], 3)]);
        assert_eq!(s.value_at(&[2, 1]), int(-3));
        assert_eq!(s.value_at(&[1, 1]), int(0));
        let s = pluecker_of_matrix(&Matrix::from_i64(&[[1, 1, 0], [0, 3, 3]])).unwrap();
        let w = IndexWord::new(3, vec![3, 2]).unwrap();
        assert_eq!(value_at(&s, &w), int(-3));
    }

    #[test]
    fn relation_examples() {
        let s = spec(2, 3, &[(&[1, 2], 3), (&[1, 3], 3), (&[2, 3], 3)]);
        assert!(check_pluecker_relations(&s).is_empty());
        let bad = spec(
            2,
            4,
            &[
                (&[1, 2], 1),
                (&[1, 3], 1),
                (&[1, 4], 1),
                (&[2, 3], 1),
                (&[2, 4], 1),
                (&[3, 4], 5),
            ],
        );
        let v = check_pluecker_relations(&bad);
        assert!(!v.is_empty());
        // p12 p34 - p13 p24 + p14 p23 = 5 - 1 + 1
        let three_term = v.iter().find(|r| r.i == vec![1] && r.j == vec![2, 3, 4]);
        assert_eq!(three_term.map(|r| r.value.clone()), Some(int(5)));
        let rows = [[2, -1, 0, 3], [1, 4, -2, 1]];
        let s = pluecker_of_matrix(&Matrix::from_i64(&rows)).unwrap();
        assert!(check_pluecker_relations(&s).is_empty());
    }

    #[test]
    fn support_matroid_examples() {
        let a3 = Matrix::from_i64(&[
            [0, 1, 1, 0, 1, 0],
            [0, 0, 1, 1, 1, 1],
            [1, 0, 0, 1, 1, 0],
        ]);
        let sup = support_matroid(&pluecker_of_matrix(&a3).unwrap());
        assert!(sup.zero_set.contains(&vec![2, 3, 6]));
        assert!(sup.exchange_holds);

        let uni = support_matroid(&Specialization::constant(2, 4, int(1)).unwrap());
        assert!(uni.zero_set.is_empty());
        assert!(uni.exchange_holds);

        let rep = Matrix::from_i64(&[[1, 0, 1, 2], [0, 1, 0, 5]]);
        let sup = support_matroid(&pluecker_of_matrix(&rep).unwrap());
        assert_eq!(sup.zero_set, vec![vec![1, 3]]);

        // {12, 34} alone violates exchange
        let s = spec(
            2,
            4,
            &[
                (&[1, 2], 1),
                (&[1, 3], 0),
                (&[1, 4], 0),
                (&[2, 3], 0),
                (&[2, 4], 0),
                (&[3, 4], 1),
            ],
        );
        assert!(!support_matroid(&s).exchange_holds);
    }

    #[test]
    fn json_round_trip_and_missing_keys() {
        let s = pluecker_of_matrix(&Matrix::from_i64(&[[1, 1, 0], [0, 3, 3]])).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"k":2,"n":3,"values":{"1,2":"3","1,3":"3","2,3":"3"}}"#
        );
        let back: Specialization = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let missing = r#"{"k":2,"n":3,"values":{"1,2":"3","1,3":"3"}}"#;
        assert!(serde_json::from_str::<Specialization>(missing).is_err());
        let unsorted = r#"{"k":2,"n":3,"values":{"2,1":"3","1,3":"3","2,3":"3"}}"#;
        assert!(serde_json::from_str::<Specialization>(unsorted).is_err());
    }
}
