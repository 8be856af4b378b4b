//! Finite stand-ins for the generalized Cantor and Baire spaces.
//!
//! A [`FiniteSpace`] is a set of length-`d` words over `{0..b-1}`; basic sets
//! are generated by stems. Finite spaces are discrete, so every subset is
//! clopen and every hierarchy on them collapses at once. What this module
//! checks is construction fidelity: the embedding and universal-set recursions
//! produce exactly the sets they are supposed to.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_POINT_CAP: usize = 4096;
pub const PARAM_ROW_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("bad stem {0}")]
    BadStem(String),
    #[error("bad point {0}")]
    BadPoint(String),
    #[error("bad space: {0}")]
    BadSpace(String),
    #[error("operands belong to different spaces")]
    SpaceMismatch,
    #[error("basis does not separate points {0} and {1}")]
    NotT0(String, String),
    #[error("{what} has size {size}, cap is {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
}

/// A word of length at most `d`; also used for points (length exactly `d`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Stem(pub Vec<u8>);

impl Stem {
    pub fn empty() -> Stem {
        Stem(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &[u8]) -> bool {
        other.starts_with(&self.0)
    }
}

impl fmt::Display for Stem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

impl FromStr for Stem {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<Vec<u8>>>()
            .map(Stem)
            .ok_or_else(|| SpaceError::BadStem(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    b: u8,
    d: usize,
    points: Vec<Stem>,
    /// base-b code of a word -> index in `points`
    index: Vec<Option<u32>>,
    tag: u64,
}

#[derive(Serialize, Deserialize)]
struct SpaceDoc {
    b: u8,
    d: usize,
    points: Vec<String>,
}

fn word_code(b: u8, w: &[u8]) -> usize {
    w.iter().fold(0usize, |acc, &c| acc * b as usize + c as usize)
}

impl FiniteSpace {
    /// Space with the given points; `b^d` must not exceed `cap`.
    pub fn with_cap(b: u8, d: usize, points: Vec<Stem>, cap: usize) -> Result<FiniteSpace, SpaceError> {
        if !(2..=10).contains(&b) {
            return Err(SpaceError::BadSpace(format!("branching {} outside 2..=10", b)));
        }
        if d == 0 {
            return Err(SpaceError::BadSpace("depth must be at least 1".into()));
        }
        let size = (b as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(SpaceError::CapExceeded { what: "b^d", size, cap: cap as u128 });
        }
        let mut points = points;
        points.sort();
        points.dedup();
        let mut index = vec![None; size as usize];
        for (i, p) in points.iter().enumerate() {
            if p.len() != d || p.0.iter().any(|&c| c >= b) {
                return Err(SpaceError::BadPoint(p.to_string()));
            }
            index[word_code(b, &p.0)] = Some(i as u32);
        }
        let mut h = DefaultHasher::new();
        (b, d, &points).hash(&mut h);
        Ok(FiniteSpace { b, d, points, index, tag: h.finish() })
    }

    pub fn new(b: u8, d: usize, points: Vec<Stem>) -> Result<FiniteSpace, SpaceError> {
        FiniteSpace::with_cap(b, d, points, DEFAULT_POINT_CAP)
    }

    /// All of `b^d`.
    pub fn full(b: u8, d: usize) -> Result<FiniteSpace, SpaceError> {
        let size = (b as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if size > DEFAULT_POINT_CAP as u128 {
            return Err(SpaceError::CapExceeded { what: "b^d", size, cap: DEFAULT_POINT_CAP as u128 });
        }
        FiniteSpace::new(b, d, words(b, d))
    }

    pub fn from_json(text: &str) -> Result<FiniteSpace, SpaceError> {
        let doc: SpaceDoc = serde_json::from_str(text).map_err(|e| SpaceError::BadSpace(e.to_string()))?;
        let points = doc.points.iter().map(|p| p.parse()).collect::<Result<Vec<Stem>, _>>()?;
        FiniteSpace::new(doc.b, doc.d, points)
    }

    pub fn to_json(&self) -> String {
        let doc = SpaceDoc { b: self.b, d: self.d, points: self.points.iter().map(|p| p.to_string()).collect() };
        serde_json::to_string(&doc).expect("plain data")
    }

    pub fn b(&self) -> u8 {
        self.b
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Stem] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Stem {
        &self.points[i]
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        if w.len() != self.d || w.iter().any(|&c| c >= self.b) {
            return None;
        }
        self.index[word_code(self.b, w)].map(|i| i as usize)
    }

    pub fn check_stem(&self, s: &Stem) -> Result<(), SpaceError> {
        if s.len() > self.d || s.0.iter().any(|&c| c >= self.b) {
            return Err(SpaceError::BadStem(s.to_string()));
        }
        Ok(())
    }

    /// All stems of length at most `n` (capped at `d`), shortest first.
    pub fn stems_upto(&self, n: usize) -> Vec<Stem> {
        (0..=n.min(self.d)).flat_map(|k| words(self.b, k)).collect()
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet { tag: self.tag, bits: FixedBitSet::with_capacity(self.len()) }
    }

    pub fn whole(&self) -> PointSet {
        let mut s = self.empty_set();
        s.bits.insert_range(..);
        s
    }

    pub fn set_from_indices(&self, idx: impl IntoIterator<Item = usize>) -> PointSet {
        let mut s = self.empty_set();
        for i in idx {
            s.bits.insert(i);
        }
        s
    }

    /// Set from point strings such as `["00","01"]`.
    pub fn set_from_words(&self, words: &[&str]) -> Result<PointSet, SpaceError> {
        let mut s = self.empty_set();
        for w in words {
            let stem: Stem = w.parse()?;
            let i = self.index_of(&stem.0).ok_or_else(|| SpaceError::BadPoint(w.to_string()))?;
            s.bits.insert(i);
        }
        Ok(s)
    }

    /// `[s] = {x ∈ X | s ⊆ x}`.
    pub fn basic(&self, s: &Stem) -> Result<PointSet, SpaceError> {
        self.check_stem(s)?;
        Ok(self.set_from_indices((0..self.len()).filter(|&i| s.is_prefix_of(&self.points[i].0))))
    }

    pub fn words_of(&self, set: &PointSet) -> Vec<String> {
        set.iter().map(|i| self.points[i].to_string()).collect()
    }

    fn owns(&self, set: &PointSet) -> Result<(), SpaceError> {
        if set.tag == self.tag {
            Ok(())
        } else {
            Err(SpaceError::SpaceMismatch)
        }
    }
}

/// All words of length `n` over `{0..b-1}` in lexicographic order.
pub fn words(b: u8, n: usize) -> Vec<Stem> {
    let mut out = vec![Stem::empty()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..b).map(move |c| {
                    let mut v = w.0.clone();
                    v.push(c);
                    Stem(v)
                })
            })
            .collect();
    }
    out
}

/// Subset of the points of one [`FiniteSpace`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    tag: u64,
    bits: FixedBitSet,
}

impl PointSet {
    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    fn check(&self, other: &PointSet) -> Result<(), SpaceError> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(SpaceError::SpaceMismatch)
        }
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet, SpaceError> {
        self.check(other)?;
        let mut s = self.clone();
        s.bits.union_with(&other.bits);
        Ok(s)
    }

    pub fn intersection(&self, other: &PointSet) -> Result<PointSet, SpaceError> {
        self.check(other)?;
        let mut s = self.clone();
        s.bits.intersect_with(&other.bits);
        Ok(s)
    }

    pub fn difference(&self, other: &PointSet) -> Result<PointSet, SpaceError> {
        self.check(other)?;
        let mut s = self.clone();
        s.bits.difference_with(&other.bits);
        Ok(s)
    }

    pub fn complement(&self) -> PointSet {
        let mut s = self.clone();
        s.bits.toggle_range(..);
        s
    }

    /// Bitmask of the first 128 points; handy as a hash key for small spaces.
    pub fn mask(&self) -> u128 {
        self.iter().filter(|&i| i < 128).fold(0u128, |m, i| m | (1u128 << i))
    }
}

/// Boolean expression over point sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Set(PointSet),
    Union(Vec<SetExpr>),
    Intersection(Vec<SetExpr>),
    Complement(Box<SetExpr>),
}

impl SetExpr {
    pub fn complement(e: SetExpr) -> SetExpr {
        SetExpr::Complement(Box::new(e))
    }

    fn member(&self, i: usize) -> bool {
        match self {
            SetExpr::Set(s) => s.contains(i),
            SetExpr::Union(es) => es.iter().any(|e| e.member(i)),
            SetExpr::Intersection(es) => es.iter().all(|e| e.member(i)),
            SetExpr::Complement(e) => !e.member(i),
        }
    }

    fn check_owner(&self, space: &FiniteSpace) -> Result<(), SpaceError> {
        match self {
            SetExpr::Set(s) => space.owns(s),
            SetExpr::Union(es) | SetExpr::Intersection(es) => es.iter().try_for_each(|e| e.check_owner(space)),
            SetExpr::Complement(e) => e.check_owner(space),
        }
    }
}

/// Evaluates `e` point by point; the reference semantics for every set test.
pub fn set_algebra_oracle(space: &FiniteSpace, e: &SetExpr) -> Result<PointSet, SpaceError> {
    e.check_owner(space)?;
    Ok(space.set_from_indices((0..space.len()).filter(|&i| e.member(i))))
}

/// Indicator vectors `x ↦ (x ∈ B_0, x ∈ B_1, ...)`, one row per point.
pub fn embed_into_cantor(space: &FiniteSpace, basis: &[PointSet]) -> Result<Vec<Vec<bool>>, SpaceError> {
    for b in basis {
        space.owns(b)?;
    }
    let rows: Vec<Vec<bool>> = (0..space.len()).map(|i| basis.iter().map(|b| b.contains(i)).collect()).collect();
    let mut sorted: Vec<(&Vec<bool>, usize)> = rows.iter().zip(0..).collect();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(SpaceError::NotT0(space.point(w[0].1).to_string(), space.point(w[1].1).to_string()));
        }
    }
    Ok(rows)
}

/// Preimage of the cylinder fixing coordinates `fixed` under the indicator map,
/// as an intersection of basis sets and their complements.
pub fn cylinder_preimage(basis: &[PointSet], fixed: &[(usize, bool)]) -> SetExpr {
    SetExpr::Intersection(
        fixed
            .iter()
            .map(|&(i, bit)| {
                let b = SetExpr::Set(basis[i].clone());
                if bit {
                    b
                } else {
                    SetExpr::complement(b)
                }
            })
            .collect(),
    )
}

/// `pair(δ, i) = δ·L + i`.
pub fn pair(delta: usize, i: usize, l: usize) -> usize {
    delta * l + i
}

pub fn unpair(n: usize, l: usize) -> (usize, usize) {
    (n / l, n % l)
}

/// A universal relation, one section per parameter row.
///
/// Row `y` is a 0/1 vector stored as an integer: coordinate `i` is bit `i`.
#[derive(Debug, Clone)]
pub struct Universal {
    pub level: u8,
    pub l: usize,
    pub m: usize,
    sections: Vec<PointSet>,
}

impl Universal {
    pub fn param_len(&self) -> usize {
        if self.level == 1 {
            self.l
        } else {
            self.m * self.l
        }
    }

    pub fn rows(&self) -> usize {
        self.sections.len()
    }

    pub fn section(&self, y: &[bool]) -> Option<&PointSet> {
        if y.len() != self.param_len() {
            return None;
        }
        let code = y.iter().rev().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        self.sections.get(code)
    }

    pub fn section_by_code(&self, y: usize) -> &PointSet {
        &self.sections[y]
    }

    pub fn sections(&self) -> &[PointSet] {
        &self.sections
    }

    pub fn contains(&self, y: usize, x: usize) -> bool {
        self.sections[y].contains(x)
    }
}

/// Slice map `f_δ(y)(i) = y(pair(δ, i))`.
pub fn slice(y: usize, delta: usize, l: usize) -> usize {
    (0..l).fold(0usize, |acc, i| acc | (((y >> pair(delta, i, l)) & 1) << i))
}

/// Level 1: `(y, x) ∈ U` iff `x ∈ ⋃{U_i | y(i) = 1}`.
/// Level 2: `(y, x) ∈ U` iff for some `δ < m`, `(f_δ(y), x) ∉ U_1`.
pub fn build_universal(level: u8, space: &FiniteSpace, basis: &[PointSet], m: usize) -> Result<Universal, SpaceError> {
    for b in basis {
        space.owns(b)?;
    }
    let l = basis.len();
    let param_len = match level {
        1 => l,
        2 if m >= 1 => m * l,
        2 => return Err(SpaceError::BadSpace("level 2 needs at least one slice".into())),
        _ => return Err(SpaceError::BadSpace(format!("level {} is not constructed", level))),
    };
    let rows = 1u128.checked_shl(param_len as u32).unwrap_or(u128::MAX);
    if rows > PARAM_ROW_CAP as u128 {
        return Err(SpaceError::CapExceeded { what: "parameter rows", size: rows, cap: PARAM_ROW_CAP as u128 });
    }
    let level_one: Vec<PointSet> = (0..1usize << l)
        .map(|y| {
            let mut s = space.empty_set();
            for (i, b) in basis.iter().enumerate() {
                if (y >> i) & 1 == 1 {
                    s.bits.union_with(&b.bits);
                }
            }
            s
        })
        .collect();
    let sections = if level == 1 {
        level_one
    } else {
        (0..rows as usize)
            .map(|y| {
                let mut s = space.empty_set();
                for delta in 0..m {
                    s.bits.union_with(&level_one[slice(y, delta, l)].complement().bits);
                }
                s
            })
            .collect()
    };
    Ok(Universal { level, l, m, sections })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_examples() {
        let x = FiniteSpace::full(2, 2).unwrap();
        assert_eq!(x.words_of(&x.basic(&"0".parse().unwrap()).unwrap()), ["00", "01"]);
        assert_eq!(x.basic(&Stem::empty()).unwrap(), x.whole());
        assert_eq!(x.words_of(&x.basic(&"10".parse().unwrap()).unwrap()), ["10"]);
        assert!(x.basic(&"2".parse().unwrap()).is_err());
        assert!(x.basic(&"000".parse().unwrap()).is_err());
    }

    #[test]
    fn oracle_examples() {
        let x = FiniteSpace::full(2, 2).unwrap();
        let zero = x.basic(&"0".parse().unwrap()).unwrap();
        let one = x.basic(&"1".parse().unwrap()).unwrap();
        let c = set_algebra_oracle(&x, &SetExpr::complement(SetExpr::Set(zero.clone()))).unwrap();
        assert_eq!(x.words_of(&c), ["10", "11"]);
        let u = SetExpr::Union(vec![SetExpr::Set(x.empty_set()), SetExpr::Set(x.whole())]);
        assert_eq!(set_algebra_oracle(&x, &u).unwrap(), x.whole());
        let i = SetExpr::Intersection(vec![SetExpr::Set(zero), SetExpr::Set(one)]);
        assert!(set_algebra_oracle(&x, &i).unwrap().is_empty());
        let y = FiniteSpace::full(3, 1).unwrap();
        assert_eq!(set_algebra_oracle(&x, &SetExpr::Set(y.whole())), Err(SpaceError::SpaceMismatch));
    }

    #[test]
    fn embed_examples() {
        let x = FiniteSpace::new(2, 2, vec!["00".parse().unwrap(), "01".parse().unwrap()]).unwrap();
        let basis = [x.basic(&"0".parse().unwrap()).unwrap(), x.basic(&"01".parse().unwrap()).unwrap()];
        assert_eq!(embed_into_cantor(&x, &basis).unwrap(), vec![vec![true, false], vec![true, true]]);
        let single = FiniteSpace::new(2, 1, vec!["0".parse().unwrap()]).unwrap();
        assert_eq!(embed_into_cantor(&single, &[]).unwrap(), vec![Vec::<bool>::new()]);
        let full = FiniteSpace::full(2, 2).unwrap();
        let coarse = [full.basic(&"0".parse().unwrap()).unwrap(), full.basic(&"1".parse().unwrap()).unwrap()];
        assert!(matches!(embed_into_cantor(&full, &coarse), Err(SpaceError::NotT0(..))));
    }

    #[test]
    fn universal_examples() {
        let x = FiniteSpace::full(2, 1).unwrap();
        let basis = [x.basic(&"0".parse().unwrap()).unwrap(), x.basic(&"1".parse().unwrap()).unwrap()];
        let u = build_universal(1, &x, &basis, 0).unwrap();
        assert_eq!(x.words_of(u.section(&[true, false]).unwrap()), ["0"]);
        assert!(u.section(&[false, false]).unwrap().is_empty());
        let big: Vec<PointSet> = (0..17).map(|_| x.whole()).collect();
        assert!(matches!(build_universal(1, &x, &big, 0), Err(SpaceError::CapExceeded { .. })));
    }

    #[test]
    fn space_json_round_trip() {
        let x = FiniteSpace::from_json(r#"{"b":2,"d":2,"points":["00","01","10","11"]}"#).unwrap();
        assert_eq!(x, FiniteSpace::full(2, 2).unwrap());
        assert_eq!(FiniteSpace::from_json(&x.to_json()).unwrap(), x);
        assert!(FiniteSpace::from_json(r#"{"b":2,"d":2,"points":["002"]}"#).is_err());
    }
}
