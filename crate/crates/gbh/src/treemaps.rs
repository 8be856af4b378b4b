//! Maps between finite trees: order properties, ∃-perfect embeddings into
//! product-alphabet trees, induced body maps and closed images.
//!
//! At finite depth the body map of an order-preserving map is just its value
//! on maximal nodes, and "closed image" is the combinatorial statement that
//! the image of the body is the set of maximal nodes of the downward closure
//! of the image.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("map is not strict order preserving")]
    NotStrict,
    #[error("map is not order preserving")]
    NotOrderPreserving,
    #[error("map is not an order embedding")]
    NotEmbedding,
    #[error("image of branch {0} stops short of the target depth")]
    DepthShortfall(String),
    #[error("target alphabet is not a product")]
    NotProduct,
    #[error("characterizations disagree: {0:?}")]
    CharacterizationMismatch([bool; 3]),
    #[error("bad tree map: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Plain(u16),
    /// Letter `(i, j)` has id `i·n2 + j`; its first coordinate is `i`.
    Product(u16, u16),
}

impl Alphabet {
    pub fn size(self) -> u16 {
        match self {
            Alphabet::Plain(n) => n,
            Alphabet::Product(a, b) => a * b,
        }
    }

    pub fn first(self, letter: u16) -> u16 {
        match self {
            Alphabet::Plain(_) => letter,
            Alphabet::Product(_, b) => letter / b,
        }
    }

    fn letter_name(self, letter: u16) -> String {
        match self {
            Alphabet::Plain(_) => letter.to_string(),
            Alphabet::Product(_, b) => format!("{}{}", (b'a' + (letter / b) as u8) as char, letter % b),
        }
    }

    fn parse_word(self, s: &str) -> Option<Vec<u16>> {
        let bytes = s.as_bytes();
        match self {
            Alphabet::Plain(n) => bytes
                .iter()
                .map(|&c| c.checked_sub(b'0').map(u16::from).filter(|&d| d < n && c.is_ascii_digit()))
                .collect(),
            Alphabet::Product(a, b) => {
                if bytes.len() % 2 != 0 {
                    return None;
                }
                bytes
                    .chunks(2)
                    .map(|p| {
                        let i = p[0].checked_sub(b'a').map(u16::from).filter(|&i| i < a && p[0].is_ascii_lowercase())?;
                        let j = p[1].checked_sub(b'0').map(u16::from).filter(|&j| j < b && p[1].is_ascii_digit())?;
                        Some(i * b + j)
                    })
                    .collect()
            }
        }
    }
}

/// A prefix-closed set of words of length at most `depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTree {
    alphabet: Alphabet,
    depth: usize,
    nodes: Vec<Vec<u16>>,
    index: BTreeMap<Vec<u16>, usize>,
}

impl FiniteTree {
    /// All words of length at most `depth`, shortest first then lexicographic.
    pub fn full(alphabet: Alphabet, depth: usize) -> FiniteTree {
        let mut nodes = vec![Vec::new()];
        let mut level = vec![Vec::new()];
        for _ in 0..depth {
            level = level
                .iter()
                .flat_map(|w: &Vec<u16>| {
                    (0..alphabet.size()).map(move |c| {
                        let mut v = w.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
            nodes.extend(level.iter().cloned());
        }
        FiniteTree::from_nodes(alphabet, depth, nodes).expect("full trees are prefix closed")
    }

    pub fn from_nodes(alphabet: Alphabet, depth: usize, nodes: Vec<Vec<u16>>) -> Result<FiniteTree, TreeError> {
        let set: BTreeSet<Vec<u16>> = nodes.into_iter().collect();
        if !set.contains(&Vec::new()) {
            return Err(TreeError::Malformed("tree lacks the root".into()));
        }
        for w in &set {
            if w.len() > depth || w.iter().any(|&c| c >= alphabet.size()) {
                return Err(TreeError::Malformed(format!("node {:?} out of range", w)));
            }
            if !w.is_empty() && !set.contains(&w[..w.len() - 1]) {
                return Err(TreeError::Malformed(format!("node {:?} has no parent", w)));
            }
        }
        let mut nodes: Vec<Vec<u16>> = set.into_iter().collect();
        nodes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = nodes.iter().cloned().zip(0..).collect();
        Ok(FiniteTree { alphabet, depth, nodes, index })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &[u16] {
        &self.nodes[i]
    }

    pub fn index_of(&self, w: &[u16]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn name(&self, i: usize) -> String {
        self.nodes[i].iter().map(|&c| self.alphabet.letter_name(c)).collect()
    }

    pub fn parse_node(&self, s: &str) -> Option<usize> {
        self.alphabet.parse_word(s).and_then(|w| self.index_of(&w))
    }

    /// Nodes with no proper extension in the tree.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let w = &self.nodes[i];
                !self.nodes.iter().any(|v| v.len() == w.len() + 1 && v.starts_with(w))
            })
            .collect()
    }

    /// Nodes of length exactly `depth`.
    pub fn full_branches(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.nodes[i].len() == self.depth).collect()
    }
}

pub fn is_prefix(a: &[u16], b: &[u16]) -> bool {
    b.starts_with(a)
}

pub fn is_strict_prefix(a: &[u16], b: &[u16]) -> bool {
    a.len() < b.len() && b.starts_with(a)
}

pub fn incompatible(a: &[u16], b: &[u16]) -> bool {
    !is_prefix(a, b) && !is_prefix(b, a)
}

/// A total map from the nodes of `source` to the nodes of `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMap {
    pub source: FiniteTree,
    pub target: FiniteTree,
    pub map: Vec<usize>,
}

impl TreeMap {
    pub fn new(source: FiniteTree, target: FiniteTree, map: Vec<usize>) -> Result<TreeMap, TreeError> {
        if map.len() != source.len() || map.iter().any(|&t| t >= target.len()) {
            return Err(TreeError::Malformed("map is not total into the target".into()));
        }
        Ok(TreeMap { source, target, map })
    }

    pub fn image(&self, s: usize) -> &[u16] {
        self.target.node(self.map[s])
    }

    /// Builds a map from a word function.
    pub fn from_fn(source: FiniteTree, target: FiniteTree, f: impl Fn(&[u16]) -> Vec<u16>) -> Result<TreeMap, TreeError> {
        let map = (0..source.len())
            .map(|i| {
                let w = f(source.node(i));
                target.index_of(&w).ok_or_else(|| TreeError::Malformed(format!("image {:?} not in target", w)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        TreeMap::new(source, target, map)
    }

    pub fn identity(tree: &FiniteTree) -> TreeMap {
        TreeMap { source: tree.clone(), target: tree.clone(), map: (0..tree.len()).collect() }
    }

    /// `ψ ∘ self`.
    pub fn then(&self, psi: &TreeMap) -> Result<TreeMap, TreeError> {
        if psi.source != self.target {
            return Err(TreeError::Malformed("composition across different trees".into()));
        }
        let map = self.map.iter().map(|&t| psi.map[t]).collect();
        TreeMap::new(self.source.clone(), psi.target.clone(), map)
    }

    /// Parses `{"source_depth":1,"source_alphabet":2,"map":{"":"","0":"a0","1":"b0"}}`.
    ///
    /// Optional `target_alphabet` (a number, or `[n1, n2]` for a product) and
    /// `target_depth`; by default a product alphabet is inferred from
    /// letter-digit pairs and the depth from the longest image.
    pub fn from_json(text: &str) -> Result<TreeMap, TreeError> {
        let bad = |m: String| TreeError::Malformed(m);
        let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let uint = |key: &str| v.get(key).and_then(Value::as_u64).ok_or_else(|| bad(format!("{}: expected a number", key)));
        let source = FiniteTree::full(Alphabet::Plain(uint("source_alphabet")? as u16), uint("source_depth")? as usize);
        let entries = v.get("map").and_then(Value::as_object).ok_or_else(|| bad("map: expected an object".into()))?;
        let images: Vec<(&String, &str)> = entries
            .iter()
            .map(|(k, x)| x.as_str().map(|s| (k, s)).ok_or_else(|| bad(format!("map.{}: expected a string", k))))
            .collect::<Result<_, _>>()?;
        let alphabet = match v.get("target_alphabet") {
            Some(Value::Array(a)) if a.len() == 2 => {
                let n = |x: &Value| x.as_u64().map(|n| n as u16).ok_or_else(|| bad("target_alphabet: numbers".into()));
                Alphabet::Product(n(&a[0])?, n(&a[1])?)
            }
            Some(x) => Alphabet::Plain(x.as_u64().ok_or_else(|| bad("target_alphabet: expected a number".into()))? as u16),
            None => infer_alphabet(images.iter().map(|(_, s)| *s)),
        };
        let words: Vec<(&String, Vec<u16>)> = images
            .iter()
            .map(|(k, s)| alphabet.parse_word(s).map(|w| (*k, w)).ok_or_else(|| bad(format!("map.{}: bad word {}", k, s))))
            .collect::<Result<_, _>>()?;
        let depth = match v.get("target_depth") {
            Some(x) => x.as_u64().ok_or_else(|| bad("target_depth: expected a number".into()))? as usize,
            None => words.iter().map(|(_, w)| w.len()).max().unwrap_or(0),
        };
        let target = FiniteTree::full(alphabet, depth);
        let mut map = vec![usize::MAX; source.len()];
        for (k, w) in words {
            let s = source.parse_node(k).ok_or_else(|| bad(format!("map: {} is not a source node", k)))?;
            map[s] = target.index_of(&w).ok_or_else(|| bad(format!("map.{}: image too deep", k)))?;
        }
        if let Some(s) = map.iter().position(|&t| t == usize::MAX) {
            return Err(bad(format!("map: missing source node {:?}", source.name(s))));
        }
        TreeMap::new(source, target, map)
    }

    pub fn to_json(&self) -> String {
        let mut m = serde_json::Map::new();
        for s in 0..self.source.len() {
            m.insert(self.source.name(s), Value::String(self.target.name(self.map[s])));
        }
        let ta = match self.target.alphabet {
            Alphabet::Plain(n) => Value::from(n),
            Alphabet::Product(a, b) => Value::from(vec![a, b]),
        };
        let src = match self.source.alphabet {
            Alphabet::Plain(n) | Alphabet::Product(n, _) => n,
        };
        serde_json::json!({
            "source_depth": self.source.depth,
            "source_alphabet": src,
            "target_alphabet": ta,
            "target_depth": self.target.depth,
            "map": m,
        })
        .to_string()
    }
}

fn infer_alphabet<'a>(words: impl Iterator<Item = &'a str> + Clone) -> Alphabet {
    let product = words.clone().any(|w| w.bytes().any(|c| c.is_ascii_lowercase()));
    if product {
        let (mut a, mut b) = (1u16, 1u16);
        for w in words {
            for p in w.as_bytes().chunks(2) {
                a = a.max(p[0].wrapping_sub(b'a') as u16 + 1);
                if let Some(&c) = p.get(1) {
                    b = b.max(c.wrapping_sub(b'0') as u16 + 1);
                }
            }
        }
        Alphabet::Product(a, b.max(2))
    } else {
        let max = words.flat_map(|w| w.bytes()).map(|c| c.wrapping_sub(b'0') as u16).max().unwrap_or(1);
        Alphabet::Plain((max + 1).max(2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OrderProps {
    pub order_preserving: bool,
    pub strict: bool,
    pub preserves_incompatibility: bool,
    pub order_embedding: bool,
}

impl fmt::Display for OrderProps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order_preserving={} strict={} preserves_incompatibility={} order_embedding={}",
            self.order_preserving, self.strict, self.preserves_incompatibility, self.order_embedding
        )
    }
}

fn props_of(n: usize, word: impl Fn(usize) -> Vec<u16>, src: impl Fn(usize) -> Vec<u16>) -> OrderProps {
    let mut p = OrderProps { order_preserving: true, strict: true, preserves_incompatibility: true, order_embedding: false };
    let images: Vec<Vec<u16>> = (0..n).map(&word).collect();
    let sources: Vec<Vec<u16>> = (0..n).map(&src).collect();
    for s in 0..n {
        for t in 0..n {
            if is_strict_prefix(&sources[s], &sources[t]) {
                p.order_preserving &= is_prefix(&images[s], &images[t]);
                p.strict &= is_strict_prefix(&images[s], &images[t]);
            } else if s < t && incompatible(&sources[s], &sources[t]) {
                p.preserves_incompatibility &= incompatible(&images[s], &images[t]);
            }
        }
    }
    p.order_embedding = p.strict && p.preserves_incompatibility;
    p
}

pub fn check_order_props(phi: &TreeMap) -> OrderProps {
    props_of(phi.source.len(), |s| phi.image(s).to_vec(), |s| phi.source.node(s).to_vec())
}

/// First-coordinate projection of a word over a product alphabet.
pub fn project_word(alphabet: Alphabet, w: &[u16]) -> Vec<u16> {
    w.iter().map(|&c| alphabet.first(c)).collect()
}

/// The projection `π` as a tree map onto the first-coordinate tree.
pub fn projection_map(tree: &FiniteTree) -> Result<TreeMap, TreeError> {
    let Alphabet::Product(a, _) = tree.alphabet else {
        return Err(TreeError::NotProduct);
    };
    let nodes: Vec<Vec<u16>> = (0..tree.len()).map(|i| project_word(tree.alphabet, tree.node(i))).collect();
    let target = FiniteTree::from_nodes(Alphabet::Plain(a), tree.depth, nodes)?;
    TreeMap::from_fn(tree.clone(), target, |w| project_word(tree.alphabet, w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExistsPerfect {
    pub value: bool,
    /// `φ` strict and `π∘φ` preserves incompatibility.
    pub strict_and_projection_incompatible: bool,
    /// `π∘φ` is an order embedding.
    pub projection_embedding: bool,
    /// `φ` and `π` restricted to `φ[S]` are order embeddings.
    pub both_embeddings: bool,
}

/// Evaluates the three characterizations of ∃-perfect embeddings for an
/// order-preserving `φ` into a product-alphabet tree.
pub fn check_exists_perfect(phi: &TreeMap) -> Result<ExistsPerfect, TreeError> {
    let alphabet = phi.target.alphabet;
    if !matches!(alphabet, Alphabet::Product(..)) {
        return Err(TreeError::NotProduct);
    }
    let props = check_order_props(phi);
    if !props.order_preserving {
        return Err(TreeError::NotOrderPreserving);
    }
    let n = phi.source.len();
    let pi_phi = props_of(n, |s| project_word(alphabet, phi.image(s)), |s| phi.source.node(s).to_vec());
    let c1 = props.strict && pi_phi.preserves_incompatibility;
    let c2 = pi_phi.order_embedding;
    let image: BTreeSet<&[u16]> = (0..n).map(|s| phi.image(s)).collect();
    let image: Vec<&[u16]> = image.into_iter().collect();
    let pi_on_image = props_of(image.len(), |i| project_word(alphabet, image[i]), |i| image[i].to_vec());
    let c3 = props.order_embedding && pi_on_image.order_embedding;
    if c1 != c2 || c2 != c3 {
        return Err(TreeError::CharacterizationMismatch([c1, c2, c3]));
    }
    Ok(ExistsPerfect {
        value: c1,
        strict_and_projection_incompatible: c1,
        projection_embedding: c2,
        both_embeddings: c3,
    })
}

/// `f_φ` on the full-length source branches: source node index to target node index.
pub type BodyMap = BTreeMap<usize, usize>;

/// `f_φ(x) = ⋃_k φ(x↾k)` for full-length `x`; each value must reach the target depth.
pub fn body_map(phi: &TreeMap) -> Result<BodyMap, TreeError> {
    if !check_order_props(phi).strict {
        return Err(TreeError::NotStrict);
    }
    let mut out = BodyMap::new();
    for x in phi.source.full_branches() {
        let word = phi.source.node(x);
        let longest = (0..=word.len())
            .map(|k| phi.map[phi.source.index_of(&word[..k]).expect("prefix closed")])
            .max_by_key(|&t| phi.target.node(t).len())
            .expect("nonempty");
        if phi.target.node(longest).len() < phi.target.depth {
            return Err(TreeError::DepthShortfall(phi.source.name(x)));
        }
        out.insert(x, longest);
    }
    Ok(out)
}

/// Whether `f_φ[[T]]` equals the maximal nodes of the downward closure of `φ[T]`.
pub fn closed_image_check(phi: &TreeMap) -> Result<bool, TreeError> {
    if !check_order_props(phi).order_embedding {
        return Err(TreeError::NotEmbedding);
    }
    let body: BTreeSet<Vec<u16>> = phi
        .source
        .maximal()
        .into_iter()
        .map(|x| phi.image(x).to_vec())
        .collect();
    let mut closure: BTreeSet<Vec<u16>> = BTreeSet::new();
    for s in 0..phi.source.len() {
        let w = phi.image(s);
        for k in 0..=w.len() {
            closure.insert(w[..k].to_vec());
        }
    }
    let maximal: BTreeSet<Vec<u16>> = closure
        .iter()
        .filter(|w| !closure.iter().any(|v| is_strict_prefix(w, v)))
        .cloned()
        .collect();
    Ok(body == maximal)
}

/// Every total map from `source` to `target`, in lexicographic order of values.
pub fn all_maps<'a>(source: &'a FiniteTree, target: &'a FiniteTree) -> impl Iterator<Item = TreeMap> + 'a {
    let n = source.len();
    let m = target.len();
    let total = (m as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut map = vec![0; n];
        for v in map.iter_mut().rev() {
            *v = (code % m as u64) as usize;
            code /= m as u64;
        }
        TreeMap { source: source.clone(), target: target.clone(), map }
    })
}

/// Every order embedding from `source` into `target`.
pub fn all_embeddings(source: &FiniteTree, target: &FiniteTree) -> Vec<TreeMap> {
    fn go(source: &FiniteTree, target: &FiniteTree, i: usize, map: &mut Vec<usize>, out: &mut Vec<TreeMap>) {
        if i == source.len() {
            out.push(TreeMap { source: source.clone(), target: target.clone(), map: map.clone() });
            return;
        }
        let w = source.node(i);
        for t in 0..target.len() {
            let v = target.node(t);
            let ok = (0..i).all(|j| {
                let u = source.node(j);
                let img = target.node(map[j]);
                if is_strict_prefix(u, w) {
                    is_strict_prefix(img, v)
                } else {
                    incompatible(img, v)
                }
            });
            if ok {
                map.push(t);
                go(source, target, i + 1, map, out);
                map.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(source, target, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(depth: usize) -> FiniteTree {
        FiniteTree::full(Alphabet::Plain(2), depth)
    }

    #[test]
    fn order_prop_examples() {
        let id = TreeMap::identity(&binary(2));
        let p = check_order_props(&id);
        assert!(p.order_preserving && p.strict && p.preserves_incompatibility && p.order_embedding);
        let constant = TreeMap::from_fn(binary(2), binary(2), |_| vec![]).unwrap();
        let p = check_order_props(&constant);
        assert!(p.order_preserving && !p.strict);
        let src = binary(1);
        let tgt = FiniteTree::full(Alphabet::Plain(2), 2);
        let comparable = TreeMap::from_fn(src, tgt, |w| match w {
            [] => vec![],
            [0] => vec![0],
            _ => vec![0, 0],
        })
        .unwrap();
        assert!(!check_order_props(&comparable).preserves_incompatibility);
    }

    #[test]
    fn exists_perfect_examples() {
        let tgt = FiniteTree::full(Alphabet::Product(3, 2), 2);
        let copy = TreeMap::from_json(
            r#"{"source_depth":1,"source_alphabet":2,"target_alphabet":[3,2],"target_depth":2,"map":{"":"","0":"a0","1":"b0"}}"#,
        )
        .unwrap();
        assert_eq!(copy.target, tgt);
        assert!(check_exists_perfect(&copy).unwrap().value);
        let collapsed = TreeMap::from_fn(binary(1), tgt, |w| match w {
            [] => vec![],
            [0] => vec![0],
            _ => vec![1],
        })
        .unwrap();
        assert!(!check_exists_perfect(&collapsed).unwrap().value);
    }

    #[test]
    fn body_map_examples() {
        let id = TreeMap::identity(&binary(2));
        for (x, y) in body_map(&id).unwrap() {
            assert_eq!(x, y);
        }
        let doubling = TreeMap::from_fn(binary(1), binary(2), |w| w.iter().flat_map(|&c| [c, c]).collect()).unwrap();
        let f = body_map(&doubling).unwrap();
        let names: Vec<(String, String)> =
            f.iter().map(|(&x, &y)| (doubling.source.name(x), doubling.target.name(y))).collect();
        assert_eq!(names, [("0".to_string(), "00".to_string()), ("1".to_string(), "11".to_string())]);
        assert!(closed_image_check(&doubling).unwrap());
        let short = TreeMap::from_fn(binary(1), binary(2), |w| w.to_vec()).unwrap();
        assert!(matches!(body_map(&short), Err(TreeError::DepthShortfall(_))));
        let constant = TreeMap::from_fn(binary(1), binary(2), |_| vec![]).unwrap();
        assert_eq!(body_map(&constant), Err(TreeError::NotStrict));
    }

    #[test]
    fn json_round_trip() {
        let m = TreeMap::from_json(r#"{"source_depth":1,"source_alphabet":2,"map":{"":"","0":"a0","1":"b0"}}"#).unwrap();
        assert_eq!(TreeMap::from_json(&m.to_json()).unwrap(), m);
        assert!(TreeMap::from_json(r#"{"source_depth":1,"source_alphabet":2,"map":{"":""}}"#).is_err());
    }
}
