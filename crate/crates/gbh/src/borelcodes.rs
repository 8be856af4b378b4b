//! Well-founded codes `⟨S, f⟩` and their canonical Suslin trees.
//!
//! A leaf `s` denotes `[f(s)] ∩ X`; an internal node denotes the intersection
//! of the complements (in `X`) of its children.

use std::collections::{BTreeSet, VecDeque};

use serde_json::{Map, Value};
use thiserror::Error;

use crate::spacelab::{FiniteSpace, PointSet, SpaceError, Stem};

/// Default cap on code size for [`canonical_tree`].
pub const CANONICAL_NODE_CAP: usize = 12;
/// Cap on the number of full branches of a canonical tree.
pub const CANONICAL_BRANCH_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("malformed code: {0}")]
    Malformed(String),
    #[error("{what} is {size}, cap is {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
}

/// A finite code tree. Node 0 is the root; children are ordered, so node
/// addresses are sequences of child positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeTree {
    children: Vec<Vec<usize>>,
    labels: Vec<Option<Stem>>,
}

impl CodeTree {
    pub fn leaf(label: Stem) -> CodeTree {
        CodeTree { children: vec![Vec::new()], labels: vec![Some(label)] }
    }

    /// Internal root over the given subtrees; `kids` must be nonempty.
    pub fn node(kids: Vec<CodeTree>) -> Result<CodeTree, CodeError> {
        if kids.is_empty() {
            return Err(CodeError::Malformed("internal node without children".into()));
        }
        let mut out = CodeTree { children: vec![Vec::new()], labels: vec![None] };
        for k in kids {
            let id = out.graft(&k);
            out.children[0].push(id);
        }
        Ok(out)
    }

    fn graft(&mut self, sub: &CodeTree) -> usize {
        let offset = self.children.len();
        for (kids, label) in sub.children.iter().zip(&sub.labels) {
            self.children.push(kids.iter().map(|c| c + offset).collect());
            self.labels.push(label.clone());
        }
        offset
    }

    /// Builds a code from a shape (children lists, root 0) and labels for its
    /// leaves in node order.
    pub fn from_shape(children: Vec<Vec<usize>>, leaf_labels: &[Stem]) -> Result<CodeTree, CodeError> {
        let mut labels = Vec::with_capacity(children.len());
        let mut next = leaf_labels.iter();
        for kids in &children {
            if kids.is_empty() {
                let l = next.next().ok_or_else(|| CodeError::Malformed("too few leaf labels".into()))?;
                labels.push(Some(l.clone()));
            } else {
                labels.push(None);
            }
        }
        if next.next().is_some() {
            return Err(CodeError::Malformed("too many leaf labels".into()));
        }
        let code = CodeTree { children, labels };
        code.validate()?;
        Ok(code)
    }

    /// Checks that the nodes form a tree rooted at 0 with every node reachable.
    pub fn validate(&self) -> Result<(), CodeError> {
        let n = self.children.len();
        if n == 0 || self.labels.len() != n {
            return Err(CodeError::Malformed("empty code".into()));
        }
        let mut parent = vec![usize::MAX; n];
        for (p, kids) in self.children.iter().enumerate() {
            for &c in kids {
                if c >= n || c == 0 || parent[c] != usize::MAX {
                    return Err(CodeError::Malformed(format!("node {} has a bad parent structure", c)));
                }
                parent[c] = p;
            }
            if kids.is_empty() != self.labels[p].is_some() {
                return Err(CodeError::Malformed(format!("node {} labeled iff leaf fails", p)));
            }
        }
        let reached = self.bfs().len();
        if reached != n {
            return Err(CodeError::Malformed("unreachable or cyclic nodes".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn children(&self, s: usize) -> &[usize] {
        &self.children[s]
    }

    pub fn label(&self, s: usize) -> Option<&Stem> {
        self.labels[s].as_ref()
    }

    pub fn is_leaf(&self, s: usize) -> bool {
        self.children[s].is_empty()
    }

    /// Nodes in breadth-first order from the root.
    pub fn bfs(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            if std::mem::replace(&mut seen[s], true) {
                continue;
            }
            out.push(s);
            queue.extend(self.children[s].iter().copied());
        }
        out
    }

    /// Address of every node as a sequence of child positions.
    pub fn addresses(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for s in self.bfs() {
            for (i, &c) in self.children[s].iter().enumerate() {
                let mut a = out[s].clone();
                a.push(i);
                out[c] = a;
            }
        }
        out
    }

    /// Parses `{"nodes":{"":["a","b"],"a":[]},"labels":{"a":"0","b":"1"}}`.
    /// Nodes missing from `nodes` or with an empty list are leaves.
    pub fn from_json(text: &str) -> Result<CodeTree, CodeError> {
        let v: Value = serde_json::from_str(text).map_err(|e| CodeError::Malformed(e.to_string()))?;
        let bad = |m: String| CodeError::Malformed(m);
        let nodes = v.get("nodes").and_then(Value::as_object).ok_or_else(|| bad("nodes: expected an object".into()))?;
        let labels = v.get("labels").and_then(Value::as_object).ok_or_else(|| bad("labels: expected an object".into()))?;
        let mut seen: BTreeSet<String> = BTreeSet::from([String::new()]);
        let mut order: Vec<String> = vec![String::new()];
        let mut children: Vec<Vec<usize>> = Vec::new();
        let mut out_labels = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let name = order[i].clone();
            let kids = match nodes.get(&name) {
                Some(k) => k.as_array().ok_or_else(|| bad(format!("nodes.{}: expected an array", name)))?.clone(),
                None => Vec::new(),
            };
            let mut kid_ids = Vec::new();
            for k in &kids {
                let kname = k.as_str().ok_or_else(|| bad(format!("nodes.{}: expected strings", name)))?;
                if !seen.insert(kname.to_string()) {
                    return Err(bad(format!("node {} listed twice", kname)));
                }
                kid_ids.push(order.len());
                order.push(kname.to_string());
            }
            let label = if kid_ids.is_empty() {
                let l = labels
                    .get(&name)
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad(format!("labels.{}: missing leaf label", name)))?;
                Some(l.parse::<Stem>()?)
            } else {
                None
            };
            children.push(kid_ids);
            out_labels.push(label);
            i += 1;
        }
        if let Some(extra) = nodes.keys().chain(labels.keys()).find(|k| !seen.contains(k.as_str())) {
            return Err(bad(format!("node {} is unreachable", extra)));
        }
        let code = CodeTree { children, labels: out_labels };
        code.validate()?;
        Ok(code)
    }

    /// Serializes with dot-separated child positions as node names.
    pub fn to_json(&self) -> String {
        let name = |a: &[usize]| a.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".");
        let addr = self.addresses();
        let mut nodes = Map::new();
        let mut labels = Map::new();
        for s in self.bfs() {
            if let Some(l) = &self.labels[s] {
                labels.insert(name(&addr[s]), Value::String(l.to_string()));
            } else {
                let kids = self.children[s].iter().map(|&c| Value::String(name(&addr[c]))).collect();
                nodes.insert(name(&addr[s]), Value::Array(kids));
            }
        }
        let mut root = Map::new();
        root.insert("nodes".into(), Value::Object(nodes));
        root.insert("labels".into(), Value::Object(labels));
        Value::Object(root).to_string()
    }
}

/// `rank(s) = 0` at leaves, `sup{rank(t) + 1}` over children otherwise.
pub fn rank(code: &CodeTree) -> Vec<usize> {
    let mut r = vec![0; code.len()];
    for &s in code.bfs().iter().rev() {
        r[s] = code.children(s).iter().map(|&c| r[c] + 1).max().unwrap_or(0);
    }
    r
}

pub fn root_rank(code: &CodeTree) -> usize {
    rank(code)[0]
}

/// Interpretation of every node.
pub fn interpret_all(code: &CodeTree, space: &FiniteSpace, x: &PointSet) -> Result<Vec<PointSet>, CodeError> {
    let mut out = vec![space.empty_set(); code.len()];
    for &s in code.bfs().iter().rev() {
        out[s] = match code.label(s) {
            Some(stem) => space.basic(stem)?.intersection(x)?,
            None => {
                let mut acc = x.clone();
                for &c in code.children(s) {
                    acc = acc.difference(&out[c])?;
                }
                acc
            }
        };
    }
    Ok(out)
}

/// `I^f_{S,X}(root)`.
pub fn interpret(code: &CodeTree, space: &FiniteSpace, x: &PointSet) -> Result<PointSet, CodeError> {
    Ok(interpret_all(code, space, x)?.swap_remove(0))
}

/// Code for the empty set: a root whose only child is the leaf `""`.
pub fn empty_code() -> CodeTree {
    CodeTree::node(vec![CodeTree::leaf(Stem::empty())]).expect("one child")
}

/// Code for `X`.
pub fn whole_code() -> CodeTree {
    CodeTree::leaf(Stem::empty())
}

/// Root rank grows by exactly one.
pub fn code_complement(c: &CodeTree) -> CodeTree {
    CodeTree::node(vec![c.clone()]).expect("one child")
}

/// `⋃ I(c_i) = X ∖ ⋂ (X ∖ I(c_i))`; root rank grows by at most two.
pub fn code_union(cs: &[CodeTree]) -> CodeTree {
    if cs.is_empty() {
        return empty_code();
    }
    code_complement(&CodeTree::node(cs.to_vec()).expect("nonempty"))
}

/// Intersections merge the children of internal roots and meet leaf stems
/// directly, so root rank grows by at most one.
pub fn code_intersection(cs: &[CodeTree]) -> CodeTree {
    let mut stems: Vec<&Stem> = Vec::new();
    let mut internal: Vec<&CodeTree> = Vec::new();
    for c in cs {
        match c.label(0) {
            Some(s) => stems.push(s),
            None => internal.push(c),
        }
    }
    // [s] ∩ [t] is the longer stem's set when comparable, empty otherwise.
    let mut meet: Option<Stem> = Some(Stem::empty());
    for s in &stems {
        meet = meet.and_then(|m| {
            if m.is_prefix_of(&s.0) {
                Some((*s).clone())
            } else if s.is_prefix_of(&m.0) {
                Some(m)
            } else {
                None
            }
        });
    }
    let Some(meet) = meet else {
        return empty_code();
    };
    if internal.is_empty() {
        return CodeTree::leaf(meet);
    }
    let mut kids: Vec<CodeTree> = Vec::new();
    for c in internal {
        for &k in c.children(0) {
            kids.push(subtree(c, k));
        }
    }
    if !meet.is_empty() {
        kids.push(code_complement(&CodeTree::leaf(meet)));
    }
    CodeTree::node(kids).expect("nonempty")
}

/// The subtree rooted at `s`.
pub fn subtree(code: &CodeTree, s: usize) -> CodeTree {
    let mut out = CodeTree { children: Vec::new(), labels: Vec::new() };
    fn copy(code: &CodeTree, s: usize, out: &mut CodeTree) -> usize {
        let id = out.children.len();
        out.children.push(Vec::new());
        out.labels.push(code.labels[s].clone());
        for &c in &code.children[s] {
            let k = copy(code, c, out);
            out.children[id].push(k);
        }
        id
    }
    copy(code, s, &mut out);
    out
}

/// One letter of a canonical-tree branch. Position `k` carries `x(k)` for
/// `k < d` and `y`, `z` at the `k`-th node (breadth-first) for `k < |S|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub x: Option<u8>,
    pub y: Option<bool>,
    pub z: Option<usize>,
}

/// A finite tree over [`Triple`] letters, stored as its set of nodes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SuslinTree {
    pub height: usize,
    pub d: usize,
    pub nodes: BTreeSet<Vec<Triple>>,
}

impl SuslinTree {
    pub fn branches(&self) -> impl Iterator<Item = &Vec<Triple>> + '_ {
        self.nodes.iter().filter(move |n| n.len() == self.height)
    }
}

/// Canonical tree of a code: the downward closure of the correct triples
/// `(x, y, z)` with `x ∈ X`. The null witness for `z` is the root (index 0).
pub fn canonical_tree(code: &CodeTree, space: &FiniteSpace, x: &PointSet) -> Result<SuslinTree, CodeError> {
    let n = code.len();
    if n > CANONICAL_NODE_CAP {
        return Err(CodeError::CapExceeded { what: "code size", size: n, cap: CANONICAL_NODE_CAP });
    }
    let order = code.bfs();
    let mut pos = vec![0; n];
    for (i, &s) in order.iter().enumerate() {
        pos[s] = i;
    }
    let mut leaf_sets = vec![None; n];
    for s in 0..n {
        if let Some(stem) = code.label(s) {
            space.check_stem(stem)?;
            leaf_sets[pos[s]] = Some(stem.clone());
        }
    }
    let kids: Vec<Vec<usize>> = order.iter().map(|&s| code.children(s).iter().map(|&c| pos[c]).collect()).collect();
    let d = space.d();
    let height = d.max(n);
    let mut tree = SuslinTree { height, d, nodes: BTreeSet::new() };
    let mut branches = 0usize;
    for xi in x.iter() {
        let point = &space.point(xi).0;
        for y in 0u32..(1u32 << n) {
            let bit = |k: usize| (y >> k) & 1 == 1;
            if !bit(0) {
                continue;
            }
            let correct = (0..n).all(|k| match &leaf_sets[k] {
                Some(stem) => bit(k) == stem.is_prefix_of(point),
                None => bit(k) != kids[k].iter().any(|&c| bit(c)),
            });
            if !correct {
                continue;
            }
            let choices: Vec<Vec<usize>> = (0..n)
                .map(|k| {
                    if leaf_sets[k].is_none() && !bit(k) {
                        kids[k].iter().copied().filter(|&c| bit(c)).collect()
                    } else {
                        vec![0]
                    }
                })
                .collect();
            let mut idx = vec![0usize; n];
            loop {
                branches += 1;
                if branches > CANONICAL_BRANCH_CAP {
                    return Err(CodeError::CapExceeded {
                        what: "branch count",
                        size: branches,
                        cap: CANONICAL_BRANCH_CAP,
                    });
                }
                let branch: Vec<Triple> = (0..height)
                    .map(|k| Triple {
                        x: (k < d).then(|| point[k]),
                        y: (k < n).then(|| bit(k)),
                        z: (k < n).then(|| choices[k][idx[k]]),
                    })
                    .collect();
                for len in 0..=height {
                    tree.nodes.insert(branch[..len].to_vec());
                }
                let mut k = 0;
                while k < n {
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
    }
    Ok(tree)
}

/// First-coordinate projection of the full-length branches.
pub fn project(tree: &SuslinTree, space: &FiniteSpace) -> PointSet {
    let mut out = space.empty_set();
    for b in tree.branches() {
        let word: Option<Vec<u8>> = b.iter().take(tree.d).map(|t| t.x).collect();
        if let Some(i) = word.and_then(|w| space.index_of(&w)) {
            out.insert(i);
        }
    }
    out
}
