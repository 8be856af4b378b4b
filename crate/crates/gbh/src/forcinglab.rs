//! A finitized single-step α-forcing poset.
//!
//! The template is the full tree `b^{≤α}`; conditions are pairs `⟨f_p, R_p⟩`
//! of a partial leaf labeling by stems and a set of promises `⟨t, x⟩` with `t`
//! internal. The size bound `|f_p| + |R_p| ≤ s_max` stands in for `< κ`.
//! Compatibility ignores the size bound; [`MeetError::BudgetExceeded`] keeps
//! the two apart.
//!
//! [`Lab`] enumerates the bounded poset as bitsets over atoms, which is what
//! the exhaustive law checks run on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use thiserror::Error;

use crate::borelcodes::{interpret, CodeTree};
use crate::spacelab::{FiniteSpace, PointSet, SpaceError, Stem};

pub const TEMPLATE_NODE_CAP: usize = 4096;
pub const LAB_ATOM_CAP: usize = 256;
pub const LAB_CONDITION_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("bad template: {0}")]
    BadTemplate(String),
    #[error("bad node {0}")]
    BadNode(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("A and B must be disjoint")]
    NotDisjoint,
    #[error("dense set {set} cannot be met below {witness}")]
    Stuck { set: String, witness: String },
    #[error("unlabeled leaves: {0:?}")]
    PartialLabels(Vec<String>),
    #[error("{what} is {size}, cap is {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("malformed condition: {0}")]
    Malformed(String),
}

/// The tree `b^{≤α}`, nodes numbered shortest first then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    alpha: usize,
    b: u8,
    nodes: Vec<Vec<u8>>,
    index: BTreeMap<Vec<u8>, usize>,
}

impl Template {
    pub fn new(alpha: usize, b: u8) -> Result<Template, ForcingError> {
        if alpha < 2 {
            return Err(ForcingError::BadTemplate("alpha must be at least 2".into()));
        }
        if !(2..=10).contains(&b) {
            return Err(ForcingError::BadTemplate("branching must be in 2..=10".into()));
        }
        let size: u128 = (0..=alpha as u32).map(|k| (b as u128).pow(k)).sum();
        if size > TEMPLATE_NODE_CAP as u128 {
            return Err(ForcingError::CapExceeded { what: "template size", size: size as usize, cap: TEMPLATE_NODE_CAP });
        }
        let mut nodes = vec![Vec::new()];
        let mut level: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..alpha {
            level = level
                .iter()
                .flat_map(|w| {
                    (0..b).map(move |c| {
                        let mut v = w.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
            nodes.extend(level.iter().cloned());
        }
        let index = nodes.iter().cloned().zip(0..).collect();
        Ok(Template { alpha, b, nodes, index })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn b(&self) -> u8 {
        self.b
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, t: usize) -> &[u8] {
        &self.nodes[t]
    }

    pub fn name(&self, t: usize) -> String {
        Stem(self.nodes[t].clone()).to_string()
    }

    pub fn parse_node(&self, s: &str) -> Result<usize, ForcingError> {
        let stem: Stem = s.parse().map_err(|_| ForcingError::BadNode(s.to_string()))?;
        self.index.get(&stem.0).copied().ok_or_else(|| ForcingError::BadNode(s.to_string()))
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn is_leaf(&self, t: usize) -> bool {
        self.nodes[t].len() == self.alpha
    }

    /// `rank(t) = α − |t|`.
    pub fn rank(&self, t: usize) -> usize {
        self.alpha - self.nodes[t].len()
    }

    pub fn children(&self, t: usize) -> Vec<usize> {
        if self.is_leaf(t) {
            return Vec::new();
        }
        (0..self.b)
            .map(|c| {
                let mut w = self.nodes[t].clone();
                w.push(c);
                self.index[&w]
            })
            .collect()
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        let w = &self.nodes[t];
        (!w.is_empty()).then(|| self.index[&w[..w.len() - 1]])
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&t| self.is_leaf(t))
    }

    pub fn internal(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&t| !self.is_leaf(t))
    }

    /// Nodes of the subtree at `t`, `t` first.
    pub fn subtree(&self, t: usize) -> Vec<usize> {
        let w = &self.nodes[t];
        (0..self.len()).filter(|&s| self.nodes[s].starts_with(w)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Condition {
    pub f: BTreeMap<usize, Stem>,
    pub r: BTreeSet<(usize, usize)>,
}

impl Condition {
    /// The trivial condition `𝟙`.
    pub fn one() -> Condition {
        Condition::default()
    }

    pub fn size(&self) -> usize {
        self.f.len() + self.r.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// `f_p` is a partial map from leaves to stems of the space.
    A,
    /// `R_p` pairs internal nodes with points.
    B,
    /// No promise for `x` at both `t` and a successor, and no successor label containing `x`.
    C,
    /// No promise at a successor of the root for a point of `A`.
    D,
    /// No promise at the root for a point of `B`.
    E,
    /// `|f_p| + |R_p| ≤ s_max`.
    Budget,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::A => "(a)",
            Clause::B => "(b)",
            Clause::C => "(c)",
            Clause::D => "(d)",
            Clause::E => "(e)",
            Clause::Budget => "budget",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeetError {
    #[error("incompatible, clause {0}")]
    Incompatible(Clause),
    #[error("compatible, but the meet has size {0} over the budget")]
    BudgetExceeded(usize),
}

/// `𝔹𝕄_α(A, B, X)` with `X` the points of `space`.
#[derive(Debug, Clone)]
pub struct Forcing {
    pub template: Template,
    pub space: FiniteSpace,
    pub a: PointSet,
    pub b: PointSet,
    pub s_max: usize,
}

impl Forcing {
    pub fn new(template: Template, space: FiniteSpace, a: PointSet, b: PointSet, s_max: usize) -> Result<Forcing, ForcingError> {
        if !a.intersection(&b)?.is_empty() {
            return Err(ForcingError::NotDisjoint);
        }
        Ok(Forcing { template, space, a, b, s_max })
    }

    fn logical_violation(&self, p: &Condition) -> Option<Violation> {
        let t = &self.template;
        for (&leaf, stem) in &p.f {
            if leaf >= t.len() || !t.is_leaf(leaf) {
                return Some(Violation { clause: Clause::A, detail: format!("node {} is not a leaf", leaf) });
            }
            if self.space.check_stem(stem).is_err() {
                return Some(Violation { clause: Clause::A, detail: format!("bad stem {}", stem) });
            }
        }
        for &(node, x) in &p.r {
            if node >= t.len() || t.is_leaf(node) || x >= self.space.len() {
                return Some(Violation { clause: Clause::B, detail: format!("bad promise ({}, {})", node, x) });
            }
        }
        for &(node, x) in &p.r {
            let point = &self.space.point(x).0;
            for c in t.children(node) {
                if p.r.contains(&(c, x)) {
                    return Some(Violation {
                        clause: Clause::C,
                        detail: format!("<{},{}> and <{},{}>", t.name(node), self.space.point(x), t.name(c), self.space.point(x)),
                    });
                }
                if let Some(s) = p.f.get(&c) {
                    if s.is_prefix_of(point) {
                        return Some(Violation {
                            clause: Clause::C,
                            detail: format!("<{},{}> but {} is labeled {}", t.name(node), self.space.point(x), t.name(c), s),
                        });
                    }
                }
            }
            if t.parent(node) == Some(t.root()) && self.a.contains(x) {
                return Some(Violation { clause: Clause::D, detail: format!("<{},{}> with x in A", t.name(node), self.space.point(x)) });
            }
            if node == t.root() && self.b.contains(x) {
                return Some(Violation { clause: Clause::E, detail: format!("<root,{}> with x in B", self.space.point(x)) });
            }
        }
        None
    }

    /// Checks clauses (a) to (e) and the budget.
    pub fn is_condition(&self, p: &Condition) -> Result<(), Violation> {
        if let Some(v) = self.logical_violation(p) {
            return Err(v);
        }
        if p.size() > self.s_max {
            return Err(Violation { clause: Clause::Budget, detail: format!("size {} over {}", p.size(), self.s_max) });
        }
        Ok(())
    }

    /// `q ≤ p`.
    pub fn leq(&self, q: &Condition, p: &Condition) -> bool {
        p.f.iter().all(|(k, v)| q.f.get(k) == Some(v)) && p.r.is_subset(&q.r)
    }

    fn union(p: &Condition, q: &Condition) -> Result<Condition, MeetError> {
        let mut f = p.f.clone();
        for (k, v) in &q.f {
            if let Some(old) = f.insert(*k, v.clone()) {
                if &old != v {
                    return Err(MeetError::Incompatible(Clause::A));
                }
            }
        }
        Ok(Condition { f, r: p.r.union(&q.r).copied().collect() })
    }

    /// Pointwise union if it is a condition.
    pub fn meet(&self, p: &Condition, q: &Condition) -> Result<Condition, MeetError> {
        let u = Forcing::union(p, q)?;
        if let Some(v) = self.logical_violation(&u) {
            return Err(MeetError::Incompatible(v.clause));
        }
        if u.size() > self.s_max {
            return Err(MeetError::BudgetExceeded(u.size()));
        }
        Ok(u)
    }

    /// Compatibility in the unbounded poset.
    pub fn compatible(&self, p: &Condition, q: &Condition) -> bool {
        !matches!(self.meet(p, q), Err(MeetError::Incompatible(_)))
    }

    /// `p ∥* q`: compatibility of `⟨∅, R_p⟩` and `⟨∅, R_q⟩`.
    pub fn compatible_star(&self, p: &Condition, q: &Condition) -> bool {
        let strip = |c: &Condition| Condition { f: BTreeMap::new(), r: c.r.clone() };
        self.compatible(&strip(p), &strip(q))
    }

    pub fn crank(&self, p: &Condition, h: &PointSet) -> usize {
        p.r.iter().filter(|&&(_, x)| !h.contains(x)).map(|&(t, _)| self.template.rank(t)).max().unwrap_or(0)
    }

    /// Keeps the promises `⟨t, x⟩` with `x ∈ H` or `rank(t) ≤ β`.
    pub fn restrict(&self, p: &Condition, h: &PointSet, beta: usize) -> Condition {
        Condition {
            f: p.f.clone(),
            r: p.r.iter().copied().filter(|&(t, x)| h.contains(x) || self.template.rank(t) <= beta).collect(),
        }
    }

    /// `(f_p, g_p)` with `g_p(x) = ψ(h_{x,p})`, `ψ` the bitmask of internal node ids.
    pub fn linked_reduction(&self, p: &Condition) -> (BTreeMap<usize, Stem>, BTreeMap<usize, u128>) {
        let ids: BTreeMap<usize, usize> = self.template.internal().zip(0..).collect();
        let mut g: BTreeMap<usize, u128> = BTreeMap::new();
        for &(t, x) in &p.r {
            *g.entry(x).or_insert(0) |= 1u128 << ids[&t];
        }
        (p.f.clone(), g)
    }

    pub fn dense_contains(&self, set: &DenseSet, p: &Condition) -> bool {
        let t = &self.template;
        match *set {
            DenseSet::Promise(node, x) => {
                if p.r.contains(&(node, x)) {
                    return true;
                }
                let point = &self.space.point(x).0;
                t.children(node).into_iter().any(|c| {
                    if t.rank(node) == 1 {
                        p.f.get(&c).is_some_and(|s| s.is_prefix_of(point))
                    } else {
                        p.r.contains(&(c, x))
                    }
                })
            }
            DenseSet::Total(leaf) => p.f.contains_key(&leaf),
        }
    }

    /// Every condition one atom above `p` (ignoring the budget).
    pub fn one_atom_extensions(&self, p: &Condition) -> Vec<Condition> {
        let mut out = Vec::new();
        let stems = self.space.stems_upto(self.space.d());
        for leaf in self.template.leaves() {
            if p.f.contains_key(&leaf) {
                continue;
            }
            for s in &stems {
                let mut q = p.clone();
                q.f.insert(leaf, s.clone());
                if self.logical_violation(&q).is_none() {
                    out.push(q);
                }
            }
        }
        for node in self.template.internal() {
            for x in 0..self.space.len() {
                if p.r.contains(&(node, x)) {
                    continue;
                }
                let mut q = p.clone();
                q.r.insert((node, x));
                if self.logical_violation(&q).is_none() {
                    out.push(q);
                }
            }
        }
        out
    }

    pub fn condition_to_json(&self, p: &Condition) -> String {
        let f: serde_json::Map<String, Value> =
            p.f.iter().map(|(&l, s)| (self.template.name(l), Value::String(s.to_string()))).collect();
        let r: Vec<Value> = p
            .r
            .iter()
            .map(|&(t, x)| Value::from(vec![self.template.name(t), self.space.point(x).to_string()]))
            .collect();
        serde_json::json!({
            "f": f,
            "R": r,
            "A": self.space.words_of(&self.a),
            "B": self.space.words_of(&self.b),
        })
        .to_string()
    }

    /// Parses `{"f":{"00":"1"},"R":[["0","10"]]}`; `A` and `B`, if present,
    /// must agree with this poset's parameters.
    pub fn condition_from_json(&self, text: &str) -> Result<Condition, ForcingError> {
        let bad = |m: String| ForcingError::Malformed(m);
        let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let mut p = Condition::one();
        if let Some(f) = v.get("f") {
            let f = f.as_object().ok_or_else(|| bad("f: expected an object".into()))?;
            for (k, s) in f {
                let leaf = self.template.parse_node(k)?;
                let s = s.as_str().ok_or_else(|| bad(format!("f.{}: expected a string", k)))?;
                p.f.insert(leaf, s.parse()?);
            }
        }
        if let Some(r) = v.get("R") {
            let r = r.as_array().ok_or_else(|| bad("R: expected an array".into()))?;
            for (i, pair) in r.iter().enumerate() {
                let pair = pair.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad(format!("R[{}]: expected a pair", i)))?;
                let t = pair[0].as_str().ok_or_else(|| bad(format!("R[{}][0]: expected a string", i)))?;
                let x = pair[1].as_str().ok_or_else(|| bad(format!("R[{}][1]: expected a string", i)))?;
                let xs: Stem = x.parse()?;
                let xi = self.space.index_of(&xs.0).ok_or_else(|| bad(format!("R[{}][1]: {} is not a point", i, x)))?;
                p.r.insert((self.template.parse_node(t)?, xi));
            }
        }
        for (key, set) in [("A", &self.a), ("B", &self.b)] {
            if let Some(list) = v.get(key) {
                let words: Vec<&str> = list
                    .as_array()
                    .ok_or_else(|| bad(format!("{}: expected an array", key)))?
                    .iter()
                    .map(|w| w.as_str().ok_or_else(|| bad(format!("{}: expected strings", key))))
                    .collect::<Result<_, _>>()?;
                if &self.space.set_from_words(&words)? != set {
                    return Err(bad(format!("{} differs from the poset parameter", key)));
                }
            }
        }
        Ok(p)
    }
}

/// Parameters `A`, `B` read from a condition document, if present.
pub fn params_from_json(space: &FiniteSpace, text: &str) -> Result<(PointSet, PointSet), ForcingError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ForcingError::Malformed(e.to_string()))?;
    let read = |key: &str| -> Result<PointSet, ForcingError> {
        match v.get(key).and_then(Value::as_array) {
            None => Ok(space.empty_set()),
            Some(a) => {
                let words: Vec<&str> = a.iter().filter_map(Value::as_str).collect();
                Ok(space.set_from_words(&words)?)
            }
        }
    };
    Ok((read("A")?, read("B")?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DenseSet {
    /// `D_{t,x}`.
    Promise(usize, usize),
    /// Conditions labeling the given leaf.
    Total(usize),
}

impl DenseSet {
    pub fn name(&self, forcing: &Forcing) -> String {
        match *self {
            DenseSet::Promise(t, x) => format!("D[{},{}]", forcing.template.name(t), forcing.space.point(x)),
            DenseSet::Total(l) => format!("Total[{}]", forcing.template.name(l)),
        }
    }
}

/// All `D_{t,x}` for internal `t` below `top` (top-down), then totality for its leaves.
pub fn full_dense_list(forcing: &Forcing, top: usize) -> Vec<DenseSet> {
    let t = &forcing.template;
    let nodes = t.subtree(top);
    let mut out: Vec<DenseSet> = nodes
        .iter()
        .filter(|&&s| !t.is_leaf(s))
        .flat_map(|&s| (0..forcing.space.len()).map(move |x| DenseSet::Promise(s, x)))
        .collect();
    out.extend(nodes.iter().filter(|&&s| t.is_leaf(s)).map(|&s| DenseSet::Total(s)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterState {
    pub chain: Vec<Condition>,
    pub f_g: BTreeMap<usize, Stem>,
    pub r_g: BTreeSet<(usize, usize)>,
}

/// Descends from `𝟙`, meeting each listed set by a one-atom extension
/// chosen with a seeded RNG. The budget is not enforced here.
pub fn build_generic(forcing: &Forcing, dense: &[DenseSet], seed: u64) -> Result<FilterState, ForcingError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Condition::one();
    let mut chain = vec![p.clone()];
    for set in dense {
        if forcing.dense_contains(set, &p) {
            continue;
        }
        let candidates: Vec<Condition> =
            forcing.one_atom_extensions(&p).into_iter().filter(|q| forcing.dense_contains(set, q)).collect();
        let next = candidates.choose(&mut rng).cloned().ok_or_else(|| ForcingError::Stuck {
            set: set.name(forcing),
            witness: forcing.condition_to_json(&p),
        })?;
        p = next;
        chain.push(p.clone());
    }
    Ok(FilterState { f_g: p.f.clone(), r_g: p.r.clone(), chain })
}

/// `G_t = I^{f_G}(t)` over the whole space.
pub fn interpret_generic(forcing: &Forcing, f_g: &BTreeMap<usize, Stem>, t: usize) -> Result<PointSet, ForcingError> {
    let tmpl = &forcing.template;
    let nodes = tmpl.subtree(t);
    let missing: Vec<String> = nodes.iter().filter(|&&s| tmpl.is_leaf(s) && !f_g.contains_key(&s)).map(|&s| tmpl.name(s)).collect();
    if !missing.is_empty() {
        return Err(ForcingError::PartialLabels(missing));
    }
    fn build(tmpl: &Template, f_g: &BTreeMap<usize, Stem>, s: usize) -> CodeTree {
        if tmpl.is_leaf(s) {
            CodeTree::leaf(f_g[&s].clone())
        } else {
            CodeTree::node(tmpl.children(s).into_iter().map(|c| build(tmpl, f_g, c)).collect()).expect("b >= 2 children")
        }
    }
    let code = build(tmpl, f_g, t);
    interpret(&code, &forcing.space, &forcing.space.whole()).map_err(|e| match e {
        crate::borelcodes::CodeError::Space(s) => ForcingError::Space(s),
        other => ForcingError::Malformed(other.to_string()),
    })
}

/// Fixed-width bitset over lab atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Bits([u64; 4]);

impl Bits {
    pub fn with(mut self, i: usize) -> Bits {
        self.0[i / 64] |= 1 << (i % 64);
        self
    }

    pub fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn or(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|k| self.0[k] | o.0[k]))
    }

    pub fn and(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|k| self.0[k] & o.0[k]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn disjoint(&self, o: &Bits) -> bool {
        self.and(o).is_zero()
    }

    pub fn subset(&self, o: &Bits) -> bool {
        (0..4).all(|k| self.0[k] & !o.0[k] == 0)
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..256).filter(move |&i| self.has(i))
    }

    /// All subsets of `self`.
    pub fn subsets(&self) -> Vec<Bits> {
        let idx: Vec<usize> = self.iter().collect();
        (0u32..1 << idx.len())
            .map(|m| idx.iter().enumerate().filter(|(j, _)| m >> j & 1 == 1).fold(Bits::default(), |b, (_, &i)| b.with(i)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Label(usize, usize),
    Promise(usize, usize),
}

/// The bounded poset of a [`Forcing`] enumerated as atom bitsets.
///
/// Validity of a set of atoms is pairwise apart from the unary clauses (d),
/// (e), so a condition is a conflict-free set of allowed atoms.
#[derive(Debug, Clone)]
pub struct Lab {
    pub atoms: Vec<Atom>,
    pub stems: Vec<Stem>,
    pub allowed: Bits,
    pub conflicts: Vec<Bits>,
    pub label_atoms: Bits,
    pub promise_atoms: Bits,
    pub conditions: Vec<Bits>,
}

impl Lab {
    pub fn new(forcing: &Forcing) -> Result<Lab, ForcingError> {
        let stems = forcing.space.stems_upto(forcing.space.d());
        let mut atoms = Vec::new();
        for leaf in forcing.template.leaves() {
            for s in 0..stems.len() {
                atoms.push(Atom::Label(leaf, s));
            }
        }
        for node in forcing.template.internal() {
            for x in 0..forcing.space.len() {
                atoms.push(Atom::Promise(node, x));
            }
        }
        if atoms.len() > LAB_ATOM_CAP {
            return Err(ForcingError::CapExceeded { what: "atom count", size: atoms.len(), cap: LAB_ATOM_CAP });
        }
        let mut lab = Lab {
            stems,
            allowed: Bits::default(),
            conflicts: vec![Bits::default(); atoms.len()],
            label_atoms: Bits::default(),
            promise_atoms: Bits::default(),
            conditions: Vec::new(),
            atoms,
        };
        for i in 0..lab.atoms.len() {
            let single = lab.to_condition(&Bits::default().with(i));
            if forcing.logical_violation(&single).is_none() {
                lab.allowed = lab.allowed.with(i);
            }
            match lab.atoms[i] {
                Atom::Label(..) => lab.label_atoms = lab.label_atoms.with(i),
                Atom::Promise(..) => lab.promise_atoms = lab.promise_atoms.with(i),
            }
        }
        for i in 0..lab.atoms.len() {
            for j in 0..lab.atoms.len() {
                if i != j && lab.allowed.has(i) && lab.allowed.has(j) {
                    let pair = lab.to_condition(&Bits::default().with(i).with(j));
                    let same_leaf = matches!((lab.atoms[i], lab.atoms[j]), (Atom::Label(a, _), Atom::Label(b, _)) if a == b);
                    if same_leaf || forcing.logical_violation(&pair).is_some() {
                        lab.conflicts[i] = lab.conflicts[i].with(j);
                    }
                }
            }
        }
        lab.enumerate(forcing.s_max)?;
        Ok(lab)
    }

    fn enumerate(&mut self, s_max: usize) -> Result<(), ForcingError> {
        let allowed: Vec<usize> = self.allowed.iter().collect();
        let mut out = Vec::new();
        let mut stack: Vec<(Bits, Bits, usize)> = vec![(Bits::default(), Bits::default(), 0)];
        while let Some((cur, conf, start)) = stack.pop() {
            out.push(cur);
            if out.len() > LAB_CONDITION_CAP {
                return Err(ForcingError::CapExceeded { what: "condition count", size: out.len(), cap: LAB_CONDITION_CAP });
            }
            if cur.count() == s_max {
                continue;
            }
            for (k, &a) in allowed.iter().enumerate().skip(start) {
                if !conf.has(a) {
                    stack.push((cur.with(a), conf.or(&self.conflicts[a]), k + 1));
                }
            }
        }
        out.sort();
        self.conditions = out;
        Ok(())
    }

    pub fn to_condition(&self, bits: &Bits) -> Condition {
        let mut p = Condition::one();
        for i in bits.iter() {
            match self.atoms[i] {
                Atom::Label(l, s) => {
                    p.f.insert(l, self.stems[s].clone());
                }
                Atom::Promise(t, x) => {
                    p.r.insert((t, x));
                }
            }
        }
        p
    }

    /// Inverse of [`Lab::to_condition`]; `None` if `p` uses an atom outside the lab.
    pub fn bits_of(&self, p: &Condition) -> Option<Bits> {
        let mut out = Bits::default();
        for (&leaf, stem) in &p.f {
            let s = self.stems.iter().position(|t| t == stem)?;
            out = out.with(self.atoms.iter().position(|&a| a == Atom::Label(leaf, s))?);
        }
        for &(t, x) in &p.r {
            out = out.with(self.atoms.iter().position(|&a| a == Atom::Promise(t, x))?);
        }
        Some(out)
    }

    /// Union of the conflict sets of the atoms of `p`.
    pub fn conflict_mask(&self, p: &Bits) -> Bits {
        p.iter().fold(Bits::default(), |m, i| m.or(&self.conflicts[i]))
    }

    /// Conflict-free and allowed, ignoring the budget.
    pub fn valid(&self, p: &Bits) -> bool {
        p.subset(&self.allowed) && self.conflict_mask(p).disjoint(p)
    }

    /// Atoms whose presence puts a condition in the dense set.
    pub fn dense_atoms(&self, forcing: &Forcing, set: &DenseSet) -> Bits {
        (0..self.atoms.len())
            .filter(|&i| forcing.dense_contains(set, &self.to_condition(&Bits::default().with(i))))
            .fold(Bits::default(), |b, i| b.with(i))
    }
}

/// For every `r` with `crank(r, H) < β` in the lab: `restrict(p,H,β) ∥ r ⇒ p ∥ r`.
pub fn projection_check(forcing: &Forcing, lab: &Lab, p: &Condition, h: &PointSet, beta: usize) -> bool {
    let q = forcing.restrict(p, h, beta);
    lab.conditions
        .iter()
        .map(|r| lab.to_condition(r))
        .filter(|r| forcing.crank(r, h) < beta)
        .all(|r| !forcing.compatible(&q, &r) || forcing.compatible(p, &r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(a: &[&str], b: &[&str]) -> Forcing {
        let space = FiniteSpace::new(3, 2, vec!["00".parse().unwrap(), "01".parse().unwrap()]).unwrap();
        let a = space.set_from_words(a).unwrap();
        let b = space.set_from_words(b).unwrap();
        Forcing::new(Template::new(2, 3).unwrap(), space, a, b, 2).unwrap()
    }

    fn cond(f: &Forcing, text: &str) -> Condition {
        f.condition_from_json(text).unwrap()
    }

    #[test]
    fn condition_examples() {
        let f = setup(&[], &["00"]);
        assert!(f.is_condition(&Condition::one()).is_ok());
        let bad = cond(&f, r#"{"R":[["","01"],["0","01"]]}"#);
        assert_eq!(f.is_condition(&bad).unwrap_err().clause, Clause::C);
        let bad = cond(&f, r#"{"R":[["","00"]]}"#);
        assert_eq!(f.is_condition(&bad).unwrap_err().clause, Clause::E);
        let g = setup(&["00"], &[]);
        let bad = cond(&g, r#"{"R":[["1","00"]]}"#);
        assert_eq!(g.is_condition(&bad).unwrap_err().clause, Clause::D);
    }

    #[test]
    fn order_and_meet_examples() {
        let f = setup(&[], &[]);
        let p = cond(&f, r#"{"f":{"00":"1"},"R":[["1","00"]]}"#);
        assert!(f.leq(&p, &Condition::one()));
        assert!(f.leq(&p, &p));
        let q = cond(&f, r#"{"f":{"00":"1"},"R":[["1","00"],["2","01"]]}"#);
        assert!(f.leq(&q, &p) && !f.leq(&p, &q));
        assert_eq!(f.meet(&p, &Condition::one()).unwrap(), p);
        let clash = cond(&f, r#"{"f":{"10":"0"}}"#);
        let promise = cond(&f, r#"{"R":[["1","00"]]}"#);
        assert_eq!(f.meet(&clash, &promise), Err(MeetError::Incompatible(Clause::C)));
        let other = cond(&f, r#"{"f":{"21":"2"},"R":[["2","01"]]}"#);
        assert_eq!(f.meet(&p, &other), Err(MeetError::BudgetExceeded(4)));
    }

    #[test]
    fn crank_and_restrict_examples() {
        let f = setup(&[], &[]);
        let x = f.space.whole();
        let none = f.space.empty_set();
        assert_eq!(f.crank(&Condition::one(), &none), 0);
        let p = cond(&f, r#"{"R":[["","00"]]}"#);
        assert_eq!(f.crank(&p, &none), 2);
        assert_eq!(f.crank(&p, &x), 0);
        assert_eq!(f.restrict(&p, &x, 0), p);
        assert_eq!(f.restrict(&p, &none, 0), Condition::one());
        assert_eq!(f.restrict(&p, &none, 2), p);
    }

    #[test]
    fn density_examples() {
        let f = setup(&[], &[]);
        let root = f.template.root();
        let x = f.space.index_of(&[0, 0]).unwrap();
        let p = cond(&f, r#"{"R":[["","00"]]}"#);
        assert!(f.dense_contains(&DenseSet::Promise(root, x), &p));
        let t = f.template.parse_node("1").unwrap();
        let q = cond(&f, r#"{"f":{"12":"00"}}"#);
        assert!(f.dense_contains(&DenseSet::Promise(t, x), &q));
    }

    #[test]
    fn generic_examples() {
        let f = setup(&["00"], &[]);
        let run = build_generic(&f, &[], 1).unwrap();
        assert_eq!(run.chain, vec![Condition::one()]);
        let list = full_dense_list(&f, f.template.root());
        let run = build_generic(&f, &list, 7).unwrap();
        let g_root = interpret_generic(&f, &run.f_g, f.template.root()).unwrap();
        assert!(f.a.is_subset(&g_root));
        assert!(matches!(interpret_generic(&f, &BTreeMap::new(), 0), Err(ForcingError::PartialLabels(_))));
    }

    #[test]
    fn linked_reduction_example() {
        let f = setup(&[], &[]);
        let (fp, g) = f.linked_reduction(&Condition::one());
        assert!(fp.is_empty() && g.is_empty());
    }

    #[test]
    fn lab_agrees_with_is_condition() {
        let f = setup(&["00"], &["01"]);
        let lab = Lab::new(&f).unwrap();
        for c in &lab.conditions {
            assert!(f.is_condition(&lab.to_condition(c)).is_ok());
        }
        let total: usize = lab.conditions.len();
        assert!(total > 1000);
    }
}
