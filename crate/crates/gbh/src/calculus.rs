//! Symbolic pointclass calculus.
//!
//! Queries answer `holds`, `fails` or `unknown`. Every decisive answer carries
//! the rules it used; the rules live in [`RULES`] and [`audit`] re-checks a
//! verdict against that table.
//!
//! Levels are ordinals `≥ 1`. At base κ a level is read as `1+α`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinals::{
    ord_cmp, ord_cof, ord_double, ord_half, parse_ordinal, CofClass, OrdCmp, Ordinal,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("missing assumption: {0}")]
    MissingAssumption(String),
    #[error("invalid level: {0}")]
    InvalidLevel(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("cannot translate: {0}")]
    Untranslatable(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaKind {
    Regular,
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CardinalContext {
    kind: KappaKind,
    cof_kappa: CofClass,
}

impl CardinalContext {
    pub fn regular() -> Self {
        CardinalContext { kind: KappaKind::Regular, cof_kappa: CofClass::Kappa }
    }

    pub fn singular(cof_kappa: CofClass) -> Result<Self, CalcError> {
        match cof_kappa {
            CofClass::Omega | CofClass::OtherLtKappa => {
                Ok(CardinalContext { kind: KappaKind::Singular, cof_kappa })
            }
            other => Err(CalcError::InvalidContext(format!(
                "a singular kappa needs cof_kappa omega or other_lt_kappa, got {}",
                other
            ))),
        }
    }

    pub fn kind(&self) -> KappaKind {
        self.kind
    }

    pub fn cof_kappa(&self) -> CofClass {
        self.cof_kappa
    }

    pub fn is_singular(&self) -> bool {
        self.kind == KappaKind::Singular
    }

    /// Replaces the symbolic `cof_kappa` tag by its value in this context.
    pub fn resolve(&self, c: CofClass) -> CofClass {
        if c == CofClass::CofKappa {
            self.cof_kappa
        } else {
            c
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceFlag {
    RegularHausdorffWeightLeKappa,
    OpensAreCofkUnionsOfClosed,
    SubspaceOfCantor,
    CofkAdditive,
    HasCantorCopy,
    HasKplusBorelEmbeddingOfCantor,
    AtMostOneNonisolatedPoint,
    SizeGtKappa,
}

impl SpaceFlag {
    pub const ALL: [SpaceFlag; 8] = [
        SpaceFlag::RegularHausdorffWeightLeKappa,
        SpaceFlag::OpensAreCofkUnionsOfClosed,
        SpaceFlag::SubspaceOfCantor,
        SpaceFlag::CofkAdditive,
        SpaceFlag::HasCantorCopy,
        SpaceFlag::HasKplusBorelEmbeddingOfCantor,
        SpaceFlag::AtMostOneNonisolatedPoint,
        SpaceFlag::SizeGtKappa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpaceFlag::RegularHausdorffWeightLeKappa => "regular_hausdorff_weight_le_kappa",
            SpaceFlag::OpensAreCofkUnionsOfClosed => "opens_are_cofk_unions_of_closed",
            SpaceFlag::SubspaceOfCantor => "subspace_of_cantor",
            SpaceFlag::CofkAdditive => "cofk_additive",
            SpaceFlag::HasCantorCopy => "has_cantor_copy",
            SpaceFlag::HasKplusBorelEmbeddingOfCantor => "has_kplus_borel_embedding_of_cantor",
            SpaceFlag::AtMostOneNonisolatedPoint => "at_most_one_nonisolated_point",
            SpaceFlag::SizeGtKappa => "size_gt_kappa",
        }
    }

    pub fn parse(s: &str) -> Option<SpaceFlag> {
        SpaceFlag::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Flags describing the space; implied flags are added on construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpaceAssumptions {
    flags: BTreeSet<SpaceFlag>,
}

impl SpaceAssumptions {
    pub fn new(flags: impl IntoIterator<Item = SpaceFlag>) -> Self {
        let mut flags: BTreeSet<SpaceFlag> = flags.into_iter().collect();
        if flags.contains(&SpaceFlag::SubspaceOfCantor) {
            flags.insert(SpaceFlag::RegularHausdorffWeightLeKappa);
            flags.insert(SpaceFlag::OpensAreCofkUnionsOfClosed);
        }
        SpaceAssumptions { flags }
    }

    pub fn has(&self, f: SpaceFlag) -> bool {
        self.flags.contains(&f)
    }

    pub fn flags(&self) -> impl Iterator<Item = SpaceFlag> + '_ {
        self.flags.iter().copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Kappa,
    KappaPlus,
}

impl Base {
    pub fn name(self) -> &'static str {
        match self {
            Base::Kappa => "k",
            Base::KappaPlus => "k+",
        }
    }

    pub fn parse(s: &str) -> Option<Base> {
        match s.trim() {
            "k" | "kappa" => Some(Base::Kappa),
            "k+" | "kappa_plus" | "kappa+" => Some(Base::KappaPlus),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Sigma,
    Pi,
    Delta,
    Borel,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointclassDesc {
    pub kind: Kind,
    pub level: Option<Ordinal>,
    pub base: Base,
}

impl PointclassDesc {
    pub fn new(kind: Kind, level: Ordinal, base: Base) -> Result<Self, CalcError> {
        if kind == Kind::Borel {
            return Ok(PointclassDesc::borel(base));
        }
        if level.is_zero() {
            return Err(CalcError::InvalidLevel("levels start at 1".into()));
        }
        Ok(PointclassDesc { kind, level: Some(level), base })
    }

    pub fn borel(base: Base) -> Self {
        PointclassDesc { kind: Kind::Borel, level: None, base }
    }

    pub fn sigma(level: u64, base: Base) -> Self {
        PointclassDesc::new(Kind::Sigma, Ordinal::nat(level), base).expect("level >= 1")
    }

    pub fn pi(level: u64, base: Base) -> Self {
        PointclassDesc::new(Kind::Pi, Ordinal::nat(level), base).expect("level >= 1")
    }

    pub fn delta(level: u64, base: Base) -> Self {
        PointclassDesc::new(Kind::Delta, Ordinal::nat(level), base).expect("level >= 1")
    }
}

impl fmt::Display for PointclassDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            Kind::Sigma => "Sigma",
            Kind::Pi => "Pi",
            Kind::Delta => "Delta",
            Kind::Borel => return write!(f, "Borel({})", self.base.name()),
        };
        let level = self.level.as_ref().expect("leveled class");
        write!(f, "{}(0,{},{})", name, level, self.base.name())
    }
}

impl FromStr for PointclassDesc {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |column: usize, message: &str| CalcError::Parse { column, message: message.into() };
        let t = s.trim();
        let offset = s.len() - s.trim_start().len();
        let open = t.find('(').ok_or_else(|| err(offset + t.len() + 1, "expected '('"))?;
        if !t.ends_with(')') {
            return Err(err(offset + t.len() + 1, "expected ')'"));
        }
        let inner = &t[open + 1..t.len() - 1];
        let inner_col = offset + open + 2;
        let kind = match &t[..open] {
            "Sigma" => Kind::Sigma,
            "Pi" => Kind::Pi,
            "Delta" => Kind::Delta,
            "Borel" => {
                let base = Base::parse(inner).ok_or_else(|| err(inner_col, "expected k or k+"))?;
                return Ok(PointclassDesc::borel(base));
            }
            _ => return Err(err(offset + 1, "expected Sigma, Pi, Delta or Borel")),
        };
        let first = inner.find(',').ok_or_else(|| err(inner_col, "expected '0,'"))?;
        if inner[..first].trim() != "0" {
            return Err(err(inner_col, "superscript must be 0"));
        }
        let last = inner.rfind(',').filter(|&i| i > first).ok_or_else(|| err(inner_col, "expected a base"))?;
        let base = Base::parse(&inner[last + 1..]).ok_or_else(|| err(inner_col + last + 1, "expected k or k+"))?;
        let level = parse_ordinal(&inner[first + 1..last]).map_err(|e| match e {
            crate::ordinals::OrdinalError::Parse { column, message } => {
                err(inner_col + first + column, &message)
            }
            other => err(inner_col + first + 1, &other.to_string()),
        })?;
        PointclassDesc::new(kind, level, base)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Holds,
    Fails,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule_id: &'static str,
    pub citation: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub answer: Answer,
    pub trace: Vec<TraceStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing: Option<String>,
}

impl Verdict {
    fn decided(answer: Answer, ids: &[&'static str]) -> Verdict {
        let mut trace: Vec<TraceStep> = Vec::new();
        for id in ids {
            let step = step(id);
            if !trace.contains(&step) {
                trace.push(step);
            }
        }
        Verdict { answer, trace, missing: None }
    }

    fn holds(ids: &[&'static str]) -> Verdict {
        Verdict::decided(Answer::Holds, ids)
    }

    fn fails(ids: &[&'static str]) -> Verdict {
        Verdict::decided(Answer::Fails, ids)
    }

    fn unknown(missing: impl Into<String>) -> Verdict {
        Verdict { answer: Answer::Unknown, trace: Vec::new(), missing: Some(missing.into()) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Gt,
    Eq,
}

/// Bound of an order fact. `Top` is the κ⁺ ceiling (no collapse).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bound {
    Ord(Ordinal),
    Top,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Ord(o) => write!(f, "{}", o),
            Bound::Top => f.write_str("top"),
        }
    }
}

fn bound_cmp(a: &Bound, b: &Bound) -> OrdCmp {
    match (a, b) {
        (Bound::Top, Bound::Top) => OrdCmp::Eq,
        (Bound::Top, _) => OrdCmp::Gt,
        (_, Bound::Top) => OrdCmp::Lt,
        (Bound::Ord(x), Bound::Ord(y)) => ord_cmp(x, y),
    }
}

/// `ord_base(X) rel bound`, about sets or (with `functions`) about functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderFact {
    pub relation: Relation,
    pub bound: Bound,
    pub base: Base,
    pub functions: bool,
}

impl OrderFact {
    pub fn new(relation: Relation, bound: Ordinal, base: Base) -> Self {
        OrderFact { relation, bound: Bound::Ord(bound), base, functions: false }
    }
}

impl fmt::Display for OrderFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        };
        let name = if self.functions { "ord_fun" } else { "ord" };
        write!(f, "{}_{} {} {}", name, self.base.name(), rel, self.bound)
    }
}

/// Everything a query is evaluated against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Env {
    pub ctx: CardinalContext,
    pub sa: SpaceAssumptions,
    pub facts: Vec<OrderFact>,
}

impl Env {
    pub fn new(ctx: CardinalContext, sa: SpaceAssumptions, facts: Vec<OrderFact>) -> Self {
        Env { ctx, sa, facts }
    }

    /// Parses the JSON context document.
    pub fn from_json(text: &str) -> Result<Env, CalcError> {
        let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| CalcError::Parse {
            column: e.column(),
            message: format!("line {}: {}", e.line(), e),
        })?;
        env_from_value(&doc)
    }

    fn has_k_hypothesis(&self) -> bool {
        self.ctx.is_singular() && self.sa.has(SpaceFlag::OpensAreCofkUnionsOfClosed)
    }
}

fn schema(path: &str, message: impl Into<String>) -> CalcError {
    CalcError::Schema { path: path.into(), message: message.into() }
}

fn env_from_value(doc: &serde_json::Value) -> Result<Env, CalcError> {
    let obj = doc.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    let kappa = obj.get("kappa").and_then(|v| v.as_str()).ok_or_else(|| schema("kappa", "expected a string"))?;
    let cof = match obj.get("cof_kappa") {
        None => None,
        Some(v) => {
            let s = v.as_str().ok_or_else(|| schema("cof_kappa", "expected a string"))?;
            Some(CofClass::parse(s).ok_or_else(|| schema("cof_kappa", format!("unknown class {}", s)))?)
        }
    };
    let ctx = match kappa {
        "regular" => match cof {
            None | Some(CofClass::Kappa) | Some(CofClass::CofKappa) => CardinalContext::regular(),
            Some(_) => return Err(schema("cof_kappa", "a regular kappa has cof_kappa = kappa")),
        },
        "singular" => CardinalContext::singular(cof.unwrap_or(CofClass::Omega))
            .map_err(|e| schema("cof_kappa", e.to_string()))?,
        other => return Err(schema("kappa", format!("expected regular or singular, got {}", other))),
    };
    let mut flags = Vec::new();
    if let Some(space) = obj.get("space") {
        let arr = space.as_array().ok_or_else(|| schema("space", "expected an array"))?;
        for (i, v) in arr.iter().enumerate() {
            let path = format!("space[{}]", i);
            let s = v.as_str().ok_or_else(|| schema(&path, "expected a string"))?;
            flags.push(SpaceFlag::parse(s).ok_or_else(|| schema(&path, format!("unknown flag {}", s)))?);
        }
    }
    let mut facts = Vec::new();
    if let Some(fs) = obj.get("facts") {
        let arr = fs.as_array().ok_or_else(|| schema("facts", "expected an array"))?;
        for (i, v) in arr.iter().enumerate() {
            facts.push(fact_from_value(v, &format!("facts[{}]", i))?);
        }
    }
    Ok(Env::new(ctx, SpaceAssumptions::new(flags), facts))
}

/// Parses `{"ord":{"base":"k+","rel":"gt","bound":"3"}}` (or `"ord_fun"`).
pub fn fact_from_value(v: &serde_json::Value, path: &str) -> Result<OrderFact, CalcError> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    let (key, functions) = if obj.contains_key("ord") {
        ("ord", false)
    } else if obj.contains_key("ord_fun") {
        ("ord_fun", true)
    } else {
        return Err(schema(path, "expected key ord or ord_fun"));
    };
    let path = format!("{}.{}", path, key);
    let inner = obj[key].as_object().ok_or_else(|| schema(&path, "expected an object"))?;
    let field = |name: &str| -> Result<&str, CalcError> {
        inner
            .get(name)
            .and_then(|x| x.as_str())
            .ok_or_else(|| schema(&format!("{}.{}", path, name), "expected a string"))
    };
    let base = Base::parse(field("base")?).ok_or_else(|| schema(&format!("{}.base", path), "expected k or k+"))?;
    let relation = match field("rel")? {
        "le" => Relation::Le,
        "gt" => Relation::Gt,
        "eq" => Relation::Eq,
        other => return Err(schema(&format!("{}.rel", path), format!("unknown relation {}", other))),
    };
    let bound_text = field("bound")?;
    let bound = if bound_text == "top" {
        Bound::Top
    } else {
        Bound::Ord(parse_ordinal(bound_text).map_err(|e| schema(&format!("{}.bound", path), e.to_string()))?)
    };
    Ok(OrderFact { relation, bound, base, functions })
}

// ---------------------------------------------------------------------------
// Rule table

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Yields {
    Holds,
    Fails,
    Either,
    Support,
}

#[derive(Debug, Clone, Copy)]
pub struct Rule {
    pub id: &'static str,
    pub pattern: &'static str,
    pub yields: Yields,
    pub citation: &'static str,
}

pub static RULES: &[Rule] = &[
    Rule {
        id: "def.delta",
        pattern: "Delta(a) vs Sigma(a)/Pi(a); Delta closed under complements",
        yields: Yields::Holds,
        citation: "Δ_α is the intersection of Σ_α and Π_α, hence a self-dual subclass of both.",
    },
    Rule {
        id: "def.levels",
        pattern: "Sigma(b) <= Pi(a), Pi(b) <= Sigma(a), b < a",
        yields: Yields::Holds,
        citation: "For β < α, Σ_β ⊆ Π_α and Π_β ⊆ Σ_α, directly from the recursive definition of the levels.",
    },
    Rule {
        id: "def.borel_top",
        pattern: "any class <= Borel",
        yields: Yields::Holds,
        citation: "Every level of the γ-hierarchy consists of γ-Borel sets.",
    },
    Rule {
        id: "refl",
        pattern: "p <= p",
        yields: Yields::Holds,
        citation: "Inclusion is reflexive.",
    },
    Rule {
        id: "incl.above_two",
        pattern: "Gamma(b) <= Gamma(a), 2 <= b < a, or b = 1 and a >= 3",
        yields: Yields::Holds,
        citation: "Without assumptions on the space the hierarchy increases from level 2 on: Σ_β ⊆ Σ_α and Π_β ⊆ Π_α for 2 ≤ β ≤ α, and Σ_1 ⊆ Π_2 ⊆ Σ_3.",
    },
    Rule {
        id: "incl.level_one_regular",
        pattern: "Sigma(1,k+) <= Sigma(2,k+)",
        yields: Yields::Holds,
        citation: "On a regular space of weight at most κ every open set is a union of at most κ closed sets, so Σ_1(κ⁺) ⊆ Σ_2(κ⁺) and the κ⁺-hierarchy is increasing.",
    },
    Rule {
        id: "incl.level_one_kappa",
        pattern: "Sigma(1,k) <= Sigma(2,k)",
        yields: Yields::Holds,
        citation: "If every open set is a union of cof(κ) closed sets then Σ_1(κ) ⊆ Σ_2(cof(κ)⁺) ⊆ Σ_2(κ), so the κ-hierarchy is increasing.",
    },
    Rule {
        id: "incl.into_delta",
        pattern: "Sigma(b), Pi(b) <= Delta(a), b < a",
        yields: Yields::Holds,
        citation: "In an increasing hierarchy Σ_β ∪ Π_β ⊆ Δ_α whenever β < α.",
    },
    Rule {
        id: "incl.delta_monotone",
        pattern: "Delta(b) <= Delta(a), b <= a",
        yields: Yields::Holds,
        citation: "For β ≤ α, Δ_β ⊆ Δ_α and Σ_β ∪ Π_β ⊆ Σ_α ∪ Π_α on every space.",
    },
    Rule {
        id: "parity.even",
        pattern: "Gamma(1+a,k) = Gamma(1+a/2,k+), a even",
        yields: Yields::Support,
        citation: "For singular κ, if every open set is a union of cof(κ) closed sets, then Σ_{1+α}(κ) = Σ_{1+α/2}(κ⁺) and Π_{1+α}(κ) = Π_{1+α/2}(κ⁺) for even α.",
    },
    Rule {
        id: "parity.odd",
        pattern: "Sigma(1+a,k) = Pi(1+a,k) = Delta(1+a,k), a odd",
        yields: Yields::Either,
        citation: "For singular κ, if every open set is a union of cof(κ) closed sets, then Σ_{1+α}(κ) = Π_{1+α}(κ) = Δ_{1+α}(κ) for odd α.",
    },
    Rule {
        id: "parity.borel",
        pattern: "Borel(k) = Borel(k+), k singular",
        yields: Yields::Support,
        citation: "For singular κ the κ-Borel sets and the κ⁺-Borel sets coincide.",
    },
    Rule {
        id: "order.fact",
        pattern: "stated order fact",
        yields: Yields::Support,
        citation: "Order facts supplied with the query are taken as given.",
    },
    Rule {
        id: "order.translate",
        pattern: "ord_k+ <= 1+a iff ord_k <= 1+2a",
        yields: Yields::Support,
        citation: "For singular κ, if every open set is a union of cof(κ) closed sets, then ord_{κ⁺}(X) ≤ 1+α iff ord_κ(X) ≤ 1+2·α; if either order is a limit ordinal both orders are equal.",
    },
    Rule {
        id: "order.collapse",
        pattern: "ord <= a",
        yields: Yields::Either,
        citation: "ord_γ(X) ≤ α iff Σ_α (equivalently Π_α or Δ_α) is the whole γ-Borel class; then Σ_β = Π_β = Δ_β = Borel for all β ≥ α.",
    },
    Rule {
        id: "order.def",
        pattern: "ord > a",
        yields: Yields::Fails,
        citation: "If ord_γ(X) > α then none of Σ_α, Π_α, Δ_α is the whole γ-Borel class.",
    },
    Rule {
        id: "collapse.selfdual",
        pattern: "Sigma(a) = Pi(a) => ord <= a, gamma regular",
        yields: Yields::Either,
        citation: "If γ is not a singular cardinal and Σ_α(γ) = Π_α(γ), then ord_γ(X) ≤ α.",
    },
    Rule {
        id: "proper.same_level",
        pattern: "Sigma(a,k+) vs Pi(a,k+), a < ord",
        yields: Yields::Fails,
        citation: "For 1 ≤ α < ord_{κ⁺}(X), Δ_α(κ⁺) ⊊ Σ_α(κ⁺): the class Σ_α(κ⁺) is not self-dual.",
    },
    Rule {
        id: "proper.same_level_kappa",
        pattern: "Sigma(1+a,k) vs Pi(1+a,k), a even, 1+a < ord_k",
        yields: Yields::Fails,
        citation: "For singular κ with opens unions of cof(κ) closed sets, even α and 1+α < ord_κ(X), the class Σ_{1+α}(κ) is not self-dual.",
    },
    Rule {
        id: "proper.lower_levels",
        pattern: "Delta(a) not <= Sigma(b) u Pi(b), b < a, b < ord",
        yields: Yields::Fails,
        citation: "For β < α with β < ord, Δ_α is not contained in Σ_β ∪ Π_β: below the order every level adds new sets, and from the order on Δ_α is the whole Borel class.",
    },
    Rule {
        id: "closure.topology",
        pattern: "open/closed sets",
        yields: Yields::Holds,
        citation: "Open sets are closed under arbitrary unions and closed sets under arbitrary intersections.",
    },
    Rule {
        id: "closure.finite",
        pattern: "finite unions/intersections",
        yields: Yields::Holds,
        citation: "Every level Σ_α, Π_α, Δ_α is closed under finite unions and finite intersections.",
    },
    Rule {
        id: "closure.borel_algebra",
        pattern: "Borel closure",
        yields: Yields::Holds,
        citation: "The κ⁺-Borel sets form a κ⁺-algebra: closed under complements and under unions and intersections of size at most κ.",
    },
    Rule {
        id: "closure.kplus",
        pattern: "Sigma/Pi/Delta(a,k+), a > 1",
        yields: Yields::Holds,
        citation: "For 1 < α < κ⁺, Σ_α(κ⁺) is closed under unions of size κ and intersections of size < α̂, Π_α(κ⁺) dually, and Δ_α(κ⁺) is an α̂-algebra; α̂ = cof(α) for limit α and cof(κ) otherwise.",
    },
    Rule {
        id: "closure.kplus_level_one",
        pattern: "Sigma/Pi/Delta(1,k+), cof(k)-additive",
        yields: Yields::Holds,
        citation: "If X is cof(κ)-additive, Σ_1 is closed under intersections of size < cof(κ), Π_1 under unions of size < cof(κ), and Δ_1 is a cof(κ)-algebra.",
    },
    Rule {
        id: "closure.kappa_even",
        pattern: "Sigma/Pi/Delta(1+a,k), a even",
        yields: Yields::Holds,
        citation: "For singular κ with opens unions of cof(κ) closed sets and even α (α > 0, or α = 0 on a cof(κ)-additive space), Σ_{1+α}(κ) is closed under unions of size κ and intersections of size < α̂, Π_{1+α}(κ) dually, and Δ_{1+α}(κ) is an α̂-algebra.",
    },
    Rule {
        id: "closure.kappa_odd",
        pattern: "Sigma(1+a,k), a odd",
        yields: Yields::Holds,
        citation: "For singular κ with opens unions of cof(κ) closed sets and odd α, the self-dual class Σ_{1+α}(κ) is a cof(κ)-algebra.",
    },
    Rule {
        id: "optimal.regular",
        pattern: "k regular, a < ord",
        yields: Yields::Fails,
        citation: "For regular κ and 1 ≤ α < ord_{κ⁺}(X): Σ_α(κ⁺) is not closed under complements or intersections of size α̂, Π_α(κ⁺) not under complements or unions of size α̂, and Δ_α(κ⁺) (for α > 1, or α = 1 on subspaces of the Cantor space) not under unions or intersections of size α̂.",
    },
    Rule {
        id: "optimal.singular_kplus",
        pattern: "k singular, a < ord_k+",
        yields: Yields::Fails,
        citation: "For singular κ with opens unions of cof(κ) closed sets, the same non-closure holds for the κ⁺-hierarchy below its order, with α̂ = cof(κ) at successor levels.",
    },
    Rule {
        id: "optimal.kappa_even",
        pattern: "Sigma/Pi/Delta(1+a,k), a even, 1+a < ord_k",
        yields: Yields::Fails,
        citation: "For singular κ with opens unions of cof(κ) closed sets, even α and 1+α < ord_κ(X): Σ_{1+α}(κ) is not closed under complements or intersections of size α̂, Π_{1+α}(κ) dually, and Δ_{1+α}(κ) (α > 0, or α = 0 on subspaces of the Cantor space) not under unions or intersections of size α̂.",
    },
    Rule {
        id: "optimal.kappa_odd",
        pattern: "Sigma(1+a,k), a odd, 1+a < ord_k",
        yields: Yields::Fails,
        citation: "For singular κ with opens unions of cof(κ) closed sets, odd α and 1+α < ord_κ(X), Σ_{1+α}(κ) is not closed under unions or intersections of size cof(κ).",
    },
    Rule {
        id: "collapse.equal_levels",
        pattern: "Delta(a)=Sigma(b), Sigma(a)=Sigma(b), Sigma(a)=Delta(b), b > a",
        yields: Yields::Holds,
        citation: "If for some β > α one has Δ_α = Σ_β, Σ_α = Σ_β, or (γ not singular) Σ_α = Δ_β, or a dual of these, then ord_γ(X) ≤ α.",
    },
    Rule {
        id: "collapse.equal_levels_increasing",
        pattern: "Sigma(a)=Pi(b), Delta(a)=Delta(b), b > a, increasing above a",
        yields: Yields::Holds,
        citation: "If the hierarchy is increasing above α and for some β > α one of Σ_α, Π_α, Δ_α equals one of Σ_β, Π_β, or (γ not singular) Δ_α = Δ_β, then ord_γ(X) ≤ α.",
    },
    Rule {
        id: "collapse.long_intersections",
        pattern: "Sigma(a) closed under <gamma intersections",
        yields: Yields::Holds,
        citation: "If Σ_1 ∪ Π_1 ⊆ Σ_α and Σ_α (or Δ_α) is closed under intersections shorter than γ, then ord_γ(X) ≤ α.",
    },
    Rule {
        id: "collapse.kappa",
        pattern: "k-hierarchy collapse criteria",
        yields: Yields::Holds,
        citation: "For singular κ with opens unions of cof(κ) closed sets, ord_κ(X) ≤ 1+α follows if some class at level 1+α equals a Σ, Π or Δ class at a higher level, if Σ_{1+α}(κ) is closed under intersections of size κ or of size < κ, or if Δ_{1+α}(κ) (α ≥ 1) is.",
    },
    Rule {
        id: "collapse.kappa_selfdual_even",
        pattern: "Sigma(1+a,k) = Pi(1+a,k), a even",
        yields: Yields::Holds,
        citation: "For singular κ with opens unions of cof(κ) closed sets and even α, self-duality of Σ_{1+α}(κ) implies ord_κ(X) ≤ 1+α.",
    },
    Rule {
        id: "universal.kplus",
        pattern: "Sigma/Pi(a,k+) universal",
        yields: Yields::Holds,
        citation: "For 1 ≤ α < κ⁺, Σ_α(κ⁺)(X) and Π_α(κ⁺)(X) have Cantor-space-universal sets; the Cantor space may be replaced by X when it embeds into X.",
    },
    Rule {
        id: "universal.selfdual",
        pattern: "self-dual class has no X-universal set",
        yields: Yields::Fails,
        citation: "A boldface class that is self-dual on X has no X-universal set (diagonal argument).",
    },
    Rule {
        id: "universal.transfer",
        pattern: "Z embeds in Y: Z-universal => Y-universal",
        yields: Yields::Support,
        citation: "For hereditary boldface classes, a Z-universal set yields a Y-universal set whenever Z embeds into Y.",
    },
    Rule {
        id: "function.order",
        pattern: "ord_fun = ord",
        yields: Yields::Support,
        citation: "For Hausdorff Y with at least two points, the order of the κ⁺-hierarchy of functions X → Y equals ord_{κ⁺}(X).",
    },
];

pub fn rule(id: &str) -> Option<&'static Rule> {
    RULES.iter().find(|r| r.id == id)
}

fn step(id: &'static str) -> TraceStep {
    let r = rule(id).unwrap_or_else(|| panic!("rule {} missing from table", id));
    TraceStep { rule_id: r.id, citation: r.citation }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("decisive verdict without trace")]
    EmptyTrace,
    #[error("unknown rule {0}")]
    UnknownRule(String),
    #[error("citation mismatch for {0}")]
    CitationMismatch(String),
    #[error("no rule in the trace can yield {0:?}")]
    NoConcludingRule(Answer),
}

/// Re-checks a verdict's trace against [`RULES`].
pub fn audit(v: &Verdict) -> Result<(), AuditError> {
    if v.answer != Answer::Unknown && v.trace.is_empty() {
        return Err(AuditError::EmptyTrace);
    }
    let mut concluding = false;
    for s in &v.trace {
        let r = rule(s.rule_id).ok_or_else(|| AuditError::UnknownRule(s.rule_id.into()))?;
        if r.citation != s.citation {
            return Err(AuditError::CitationMismatch(s.rule_id.into()));
        }
        concluding |= matches!(
            (v.answer, r.yields),
            (Answer::Holds, Yields::Holds | Yields::Either) | (Answer::Fails, Yields::Fails | Yields::Either)
        );
    }
    if v.answer != Answer::Unknown && !concluding {
        return Err(AuditError::NoConcludingRule(v.answer));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Levels and order knowledge

/// `α` with `1+α = level`.
pub fn alpha_of_level(level: &Ordinal) -> Ordinal {
    match level.as_nat() {
        Some(n) => Ordinal::nat(n.saturating_sub(1)),
        None => level.clone(),
    }
}

/// `1+α`.
pub fn level_of_alpha(alpha: &Ordinal) -> Ordinal {
    match alpha.as_nat() {
        Some(n) => Ordinal::nat(n + 1),
        None => alpha.clone(),
    }
}

fn ge(a: &Ordinal, b: &Ordinal) -> bool {
    matches!(ord_cmp(a, b), OrdCmp::Gt | OrdCmp::Eq)
}

fn ge_nat(a: &Ordinal, n: u64) -> bool {
    ge(a, &Ordinal::nat(n))
}

#[derive(Debug, Clone)]
struct Known {
    relation: Relation,
    bound: Bound,
    why: Vec<&'static str>,
}

/// Order facts about one base, including translated ones.
#[derive(Debug, Clone, Default)]
struct Knowledge {
    items: Vec<Known>,
}

impl Knowledge {
    /// A derivation of `ord > x`.
    fn gt(&self, x: &Ordinal) -> Option<Vec<&'static str>> {
        let x = Bound::Ord(x.clone());
        self.items.iter().find_map(|k| {
            let c = bound_cmp(&k.bound, &x);
            let ok = match k.relation {
                Relation::Gt => matches!(c, OrdCmp::Gt | OrdCmp::Eq),
                Relation::Eq => c == OrdCmp::Gt,
                Relation::Le => false,
            };
            ok.then(|| k.why.clone())
        })
    }

    /// A derivation of `ord ≤ x`.
    fn le(&self, x: &Ordinal) -> Option<Vec<&'static str>> {
        let x = Bound::Ord(x.clone());
        self.items.iter().find_map(|k| {
            let c = bound_cmp(&k.bound, &x);
            let ok = matches!(k.relation, Relation::Le | Relation::Eq) && matches!(c, OrdCmp::Lt | OrdCmp::Eq);
            ok.then(|| k.why.clone())
        })
    }

    fn consistent(&self) -> bool {
        for a in &self.items {
            if a.relation == Relation::Gt && a.bound == Bound::Top {
                return false;
            }
            for b in &self.items {
                let c = bound_cmp(&b.bound, &a.bound);
                let clash = match (a.relation, b.relation) {
                    (Relation::Gt, Relation::Le) | (Relation::Gt, Relation::Eq) => {
                        matches!(c, OrdCmp::Lt | OrdCmp::Eq)
                    }
                    (Relation::Eq, Relation::Le) => c == OrdCmp::Lt,
                    (Relation::Eq, Relation::Eq) => matches!(c, OrdCmp::Lt | OrdCmp::Gt),
                    _ => false,
                };
                if clash {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone)]
struct Book {
    kplus: Knowledge,
    kappa: Knowledge,
}

impl Book {
    fn build(env: &Env, extra: &[(OrderFact, Vec<&'static str>)]) -> Book {
        let mut book = Book { kplus: Knowledge::default(), kappa: Knowledge::default() };
        let given = env.facts.iter().map(|f| (f.clone(), vec!["order.fact"]));
        for (f, why) in given.chain(extra.iter().cloned()) {
            if f.functions {
                continue;
            }
            book.at_mut(f.base).items.push(Known { relation: f.relation, bound: f.bound.clone(), why: why.clone() });
            if let Ok(t) = translate_order(&f, &env.ctx, &env.sa) {
                let mut why = why;
                why.push("order.translate");
                book.at_mut(t.base).items.push(Known { relation: t.relation, bound: t.bound, why });
            }
        }
        book
    }

    fn at(&self, base: Base) -> &Knowledge {
        match base {
            Base::Kappa => &self.kappa,
            Base::KappaPlus => &self.kplus,
        }
    }

    fn at_mut(&mut self, base: Base) -> &mut Knowledge {
        match base {
            Base::Kappa => &mut self.kappa,
            Base::KappaPlus => &mut self.kplus,
        }
    }

    fn consistent(&self) -> bool {
        self.kplus.consistent() && self.kappa.consistent()
    }
}

const INCONSISTENT: &str = "consistent order facts";

fn missing_k_hypothesis(env: &Env) -> String {
    if env.ctx.is_singular() {
        SpaceFlag::OpensAreCofkUnionsOfClosed.name().to_string()
    } else {
        "singular kappa".to_string()
    }
}

// ---------------------------------------------------------------------------
// Normalization and duality

fn normalize_traced(p: &PointclassDesc, env: &Env) -> Result<(PointclassDesc, Vec<&'static str>), CalcError> {
    if p.base == Base::KappaPlus {
        return Ok((p.clone(), Vec::new()));
    }
    if !env.ctx.is_singular() {
        return Err(CalcError::MissingAssumption("singular kappa".into()));
    }
    if p.kind == Kind::Borel {
        return Ok((PointclassDesc::borel(Base::KappaPlus), vec!["parity.borel"]));
    }
    if !env.sa.has(SpaceFlag::OpensAreCofkUnionsOfClosed) {
        return Err(CalcError::MissingAssumption(SpaceFlag::OpensAreCofkUnionsOfClosed.name().into()));
    }
    let level = p.level.as_ref().expect("leveled class");
    let alpha = alpha_of_level(level);
    if alpha.is_even() {
        let half = ord_half(&alpha).expect("even");
        let q = PointclassDesc { kind: p.kind, level: Some(level_of_alpha(&half)), base: Base::KappaPlus };
        Ok((q, vec!["parity.even"]))
    } else {
        let q = PointclassDesc { kind: Kind::Delta, level: Some(level.clone()), base: Base::Kappa };
        Ok((q, vec!["parity.odd"]))
    }
}

/// Canonical form: even κ-levels move to κ⁺, odd κ-levels become Delta.
pub fn normalize(p: &PointclassDesc, ctx: &CardinalContext, sa: &SpaceAssumptions) -> Result<PointclassDesc, CalcError> {
    let env = Env::new(*ctx, sa.clone(), Vec::new());
    normalize_traced(p, &env).map(|(q, _)| q)
}

pub fn dual(p: &PointclassDesc) -> PointclassDesc {
    let kind = match p.kind {
        Kind::Sigma => Kind::Pi,
        Kind::Pi => Kind::Sigma,
        k => k,
    };
    PointclassDesc { kind, ..p.clone() }
}

// ---------------------------------------------------------------------------
// Inclusion

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scale {
    KPlus,
    K,
}

impl Scale {
    fn base(self) -> Base {
        match self {
            Scale::KPlus => Base::KappaPlus,
            Scale::K => Base::Kappa,
        }
    }
}

#[derive(Debug, Clone)]
struct Pos {
    kind: Kind,
    level: Option<Ordinal>,
}

/// Places `p` on the given scale. On the κ scale odd levels become Delta.
fn place(p: &PointclassDesc, scale: Scale, why: &mut Vec<&'static str>) -> Pos {
    if p.kind == Kind::Borel {
        if p.base == Base::Kappa {
            why.push("parity.borel");
        }
        return Pos { kind: Kind::Borel, level: None };
    }
    let level = p.level.clone().expect("leveled class");
    match (scale, p.base) {
        (Scale::KPlus, _) => Pos { kind: p.kind, level: Some(level) },
        (Scale::K, Base::Kappa) => {
            let alpha = alpha_of_level(&level);
            if !alpha.is_even() && p.kind != Kind::Delta {
                why.push("parity.odd");
                return Pos { kind: Kind::Delta, level: Some(level) };
            }
            Pos { kind: p.kind, level: Some(level) }
        }
        (Scale::K, Base::KappaPlus) => {
            why.push("parity.even");
            let beta = alpha_of_level(&level);
            Pos { kind: p.kind, level: Some(level_of_alpha(&ord_double(&beta))) }
        }
    }
}

fn needs_k_scale(p: &PointclassDesc) -> bool {
    p.kind != Kind::Borel && p.base == Base::Kappa
}

/// Verdict on `p ⊆ q`.
pub fn compare(p: &PointclassDesc, q: &PointclassDesc, env: &Env) -> Verdict {
    let book = Book::build(env, &[]);
    if !book.consistent() {
        return Verdict::unknown(INCONSISTENT);
    }
    let uses_kappa = [p, q].iter().any(|c| c.base == Base::Kappa);
    if uses_kappa && !env.ctx.is_singular() {
        return Verdict::unknown("singular kappa");
    }
    if p == q {
        return Verdict::holds(&["refl"]);
    }
    let scale = if needs_k_scale(p) || needs_k_scale(q) {
        if !env.has_k_hypothesis() {
            return Verdict::unknown(missing_k_hypothesis(env));
        }
        Scale::K
    } else {
        Scale::KPlus
    };
    let mut why = Vec::new();
    let a = place(p, scale, &mut why);
    let b = place(q, scale, &mut why);
    let know = book.at(scale.base());
    let finish = |mut v: Verdict| {
        if v.answer != Answer::Unknown {
            let mut trace: Vec<TraceStep> = why.iter().map(|id| step(id)).collect();
            for s in v.trace.drain(..) {
                if !trace.contains(&s) {
                    trace.push(s);
                }
            }
            v.trace = trace;
        }
        v
    };
    finish(include(&a, &b, scale, know, env))
}

fn with(mut base: Vec<&'static str>, more: &[&'static str]) -> Vec<&'static str> {
    base.extend_from_slice(more);
    base
}

fn level_one_increasing(scale: Scale, env: &Env) -> Option<&'static str> {
    match scale {
        Scale::KPlus => env.sa.has(SpaceFlag::RegularHausdorffWeightLeKappa).then_some("incl.level_one_regular"),
        Scale::K => Some("incl.level_one_kappa"),
    }
}

fn include(a: &Pos, b: &Pos, scale: Scale, know: &Knowledge, env: &Env) -> Verdict {
    if b.kind == Kind::Borel {
        return Verdict::holds(&["def.borel_top"]);
    }
    let lb = b.level.as_ref().expect("leveled");
    if let Some(why) = know.le(lb) {
        return Verdict::holds(&with(why, &["order.collapse", "def.borel_top"]));
    }
    let Some(la) = a.level.as_ref() else {
        return match know.gt(lb) {
            Some(why) => Verdict::fails(&with(why, &["order.def"])),
            None => Verdict::unknown(format!("order fact about level {}", lb)),
        };
    };
    match ord_cmp(la, lb) {
        OrdCmp::Incomparable => Verdict::unknown("comparable levels"),
        OrdCmp::Eq => {
            if a.kind == b.kind {
                return Verdict::holds(&["refl"]);
            }
            if a.kind == Kind::Delta {
                return Verdict::holds(&["def.delta"]);
            }
            match (scale, know.gt(la)) {
                (Scale::KPlus, Some(why)) => Verdict::fails(&with(why, &["proper.same_level", "collapse.selfdual"])),
                (Scale::K, Some(why)) => Verdict::fails(&with(why, &["proper.same_level_kappa"])),
                (_, None) => Verdict::unknown(format!("order fact ord > {}", la)),
            }
        }
        OrdCmp::Lt => {
            if a.kind == Kind::Delta {
                return if b.kind == Kind::Delta {
                    Verdict::holds(&["incl.delta_monotone"])
                } else {
                    Verdict::holds(&["def.delta", "def.levels"])
                };
            }
            let cross = matches!((a.kind, b.kind), (Kind::Sigma, Kind::Pi) | (Kind::Pi, Kind::Sigma));
            if cross {
                return Verdict::holds(&["def.levels"]);
            }
            let target = if b.kind == Kind::Delta { "incl.into_delta" } else { "incl.above_two" };
            if ge_nat(la, 2) {
                return Verdict::holds(&["incl.above_two", target]);
            }
            if ge_nat(lb, 3) {
                return Verdict::holds(&["def.levels", "incl.above_two", target]);
            }
            match level_one_increasing(scale, env) {
                Some(r) => Verdict::holds(&[r, target]),
                None => Verdict::unknown(SpaceFlag::RegularHausdorffWeightLeKappa.name()),
            }
        }
        OrdCmp::Gt => {
            let Some(why) = know.gt(lb) else {
                return Verdict::unknown(format!("order fact ord > {}", lb));
            };
            let allowed = scale == Scale::K
                || ge_nat(lb, 2)
                || ge_nat(la, 3)
                || env.sa.has(SpaceFlag::RegularHausdorffWeightLeKappa);
            if !allowed {
                return Verdict::unknown(SpaceFlag::RegularHausdorffWeightLeKappa.name());
            }
            let proper = if scale == Scale::K { "proper.same_level_kappa" } else { "collapse.selfdual" };
            Verdict::fails(&with(why, &["incl.delta_monotone", "proper.lower_levels", proper]))
        }
    }
}

// ---------------------------------------------------------------------------
// Closure

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetOp {
    Union,
    Intersection,
    Complement,
}

/// Size of a family: exactly `Card(c)` many sets, or `Below(c)`: fewer than `c`.
/// `Card(Finite)` stands for finite families of any size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Size {
    Card(CofClass),
    Below(CofClass),
}

/// Compares two cardinal tags in a context; `None` when undecidable.
pub fn card_cmp(a: CofClass, b: CofClass, ctx: &CardinalContext) -> Option<Ordering> {
    if a == b && a != CofClass::OtherLtKappa {
        return Some(Ordering::Equal);
    }
    let (ra, rb) = (ctx.resolve(a), ctx.resolve(b));
    let rank = |c: CofClass| match c {
        CofClass::Finite => 0,
        CofClass::Omega => 1,
        CofClass::OtherLtKappa => 2,
        CofClass::CofKappa | CofClass::Kappa => 3,
    };
    if ra == CofClass::OtherLtKappa && rb == CofClass::OtherLtKappa {
        return None;
    }
    Some(rank(ra).cmp(&rank(rb)))
}

fn size_below(size: Size, lambda: CofClass, ctx: &CardinalContext) -> Option<bool> {
    match size {
        Size::Card(CofClass::Finite) | Size::Below(CofClass::Finite) => Some(true),
        Size::Card(c) => card_cmp(c, lambda, ctx).map(|o| o == Ordering::Less),
        Size::Below(c) => card_cmp(c, lambda, ctx).map(|o| o != Ordering::Greater),
    }
}

fn size_reaches(size: Size, lambda: CofClass, ctx: &CardinalContext) -> Option<bool> {
    match size {
        Size::Card(CofClass::Finite) | Size::Below(CofClass::Finite) => Some(false),
        Size::Card(c) => card_cmp(c, lambda, ctx).map(|o| o != Ordering::Less),
        Size::Below(c) => card_cmp(c, lambda, ctx).map(|o| o == Ordering::Greater),
    }
}

/// `α̂`: `cof(α)` at limits, `cof(κ)` otherwise.
pub fn alpha_hat(alpha: &Ordinal) -> CofClass {
    if alpha.is_limit() {
        ord_cof(alpha)
    } else {
        CofClass::CofKappa
    }
}

/// Verdict on "`p` is closed under `op` applied to families of the given size".
pub fn closure(p: &PointclassDesc, op: SetOp, size: Size, env: &Env) -> Verdict {
    let book = Book::build(env, &[]);
    if !book.consistent() {
        return Verdict::unknown(INCONSISTENT);
    }
    if p.base == Base::Kappa && !env.ctx.is_singular() {
        return Verdict::unknown("singular kappa");
    }
    if p.kind == Kind::Borel {
        let mut ids = vec![];
        if p.base == Base::Kappa {
            ids.push("parity.borel");
        }
        ids.push("closure.borel_algebra");
        return Verdict::holds(&ids);
    }
    let level = p.level.as_ref().expect("leveled");
    match p.base {
        Base::KappaPlus => closure_kplus(p.kind, level, op, size, env, book.at(Base::KappaPlus)),
        Base::Kappa => {
            if !env.has_k_hypothesis() {
                return Verdict::unknown(missing_k_hypothesis(env));
            }
            closure_kappa(p.kind, level, op, size, env, book.at(Base::Kappa))
        }
    }
}

/// Whether `op` is the operation a class is closed under without size limit.
fn long_op(kind: Kind, op: SetOp) -> bool {
    matches!((kind, op), (Kind::Sigma, SetOp::Union) | (Kind::Pi, SetOp::Intersection))
}

fn closure_kplus(kind: Kind, level: &Ordinal, op: SetOp, size: Size, env: &Env, know: &Knowledge) -> Verdict {
    let ctx = &env.ctx;
    if let Some(why) = know.le(level) {
        return Verdict::holds(&with(why, &["order.collapse", "closure.borel_algebra"]));
    }
    let below_ord = know.gt(level);
    if op == SetOp::Complement {
        if kind == Kind::Delta {
            return Verdict::holds(&["def.delta"]);
        }
        return match below_ord {
            Some(why) => Verdict::fails(&with(why, &["proper.same_level", "collapse.selfdual"])),
            None => Verdict::unknown(format!("order fact ord > {}", level)),
        };
    }
    if size == Size::Card(CofClass::Finite) {
        return Verdict::holds(&["closure.finite"]);
    }
    let level_one = level.as_nat() == Some(1);
    if long_op(kind, op) {
        return Verdict::holds(&[if level_one { "closure.topology" } else { "closure.kplus" }]);
    }
    let (hat, positive_rule) = if level_one {
        let hat = if ctx.is_singular() { CofClass::CofKappa } else { CofClass::Kappa };
        (hat, env.sa.has(SpaceFlag::CofkAdditive).then_some("closure.kplus_level_one"))
    } else {
        (alpha_hat(level), Some("closure.kplus"))
    };
    if let Some(rule_id) = positive_rule {
        let bound = if level_one { CofClass::CofKappa } else { hat };
        if size_below(size, bound, ctx) == Some(true) {
            return Verdict::holds(&[rule_id]);
        }
    }
    if size_reaches(size, hat, ctx) == Some(true) {
        if kind == Kind::Delta && level_one && !env.sa.has(SpaceFlag::SubspaceOfCantor) {
            return Verdict::unknown(SpaceFlag::SubspaceOfCantor.name());
        }
        let rule_id = if ctx.is_singular() {
            if !env.sa.has(SpaceFlag::OpensAreCofkUnionsOfClosed) {
                return Verdict::unknown(SpaceFlag::OpensAreCofkUnionsOfClosed.name());
            }
            "optimal.singular_kplus"
        } else {
            "optimal.regular"
        };
        return match below_ord {
            Some(why) => Verdict::fails(&with(why, &[rule_id])),
            None => Verdict::unknown(format!("order fact ord > {}", level)),
        };
    }
    if level_one && positive_rule.is_none() {
        return Verdict::unknown(SpaceFlag::CofkAdditive.name());
    }
    Verdict::unknown("comparable sizes")
}

fn closure_kappa(kind: Kind, level: &Ordinal, op: SetOp, size: Size, env: &Env, know: &Knowledge) -> Verdict {
    let ctx = &env.ctx;
    if let Some(why) = know.le(level) {
        return Verdict::holds(&with(why, &["order.collapse", "parity.borel", "closure.borel_algebra"]));
    }
    let below_ord = know.gt(level);
    let alpha = alpha_of_level(level);
    if !alpha.is_even() {
        if op == SetOp::Complement {
            return Verdict::holds(&["parity.odd"]);
        }
        if size_below(size, CofClass::CofKappa, ctx) == Some(true) {
            return Verdict::holds(&["closure.kappa_odd"]);
        }
        if size_reaches(size, CofClass::CofKappa, ctx) == Some(true) {
            return match below_ord {
                Some(why) => Verdict::fails(&with(why, &["optimal.kappa_odd"])),
                None => Verdict::unknown(format!("order fact ord_k > {}", level)),
            };
        }
        return Verdict::unknown("comparable sizes");
    }
    if op == SetOp::Complement {
        if kind == Kind::Delta {
            return Verdict::holds(&["def.delta"]);
        }
        return match below_ord {
            Some(why) => Verdict::fails(&with(why, &["optimal.kappa_even"])),
            None => Verdict::unknown(format!("order fact ord_k > {}", level)),
        };
    }
    if size == Size::Card(CofClass::Finite) {
        return Verdict::holds(&["closure.finite"]);
    }
    if long_op(kind, op) {
        return Verdict::holds(&["closure.kappa_even"]);
    }
    let hat = alpha_hat(&alpha);
    let zero = alpha.is_zero();
    let positive = !zero || env.sa.has(SpaceFlag::CofkAdditive);
    if positive && size_below(size, hat, ctx) == Some(true) {
        return Verdict::holds(&["closure.kappa_even"]);
    }
    if size_reaches(size, hat, ctx) == Some(true) {
        if kind == Kind::Delta && zero && !env.sa.has(SpaceFlag::SubspaceOfCantor) {
            return Verdict::unknown(SpaceFlag::SubspaceOfCantor.name());
        }
        return match below_ord {
            Some(why) => Verdict::fails(&with(why, &["optimal.kappa_even"])),
            None => Verdict::unknown(format!("order fact ord_k > {}", level)),
        };
    }
    if !positive {
        return Verdict::unknown(SpaceFlag::CofkAdditive.name());
    }
    Verdict::unknown("comparable sizes")
}

// ---------------------------------------------------------------------------
// Order translation and collapse

/// Moves an order fact between the κ and κ⁺ hierarchies.
pub fn translate_order(f: &OrderFact, ctx: &CardinalContext, sa: &SpaceAssumptions) -> Result<OrderFact, CalcError> {
    if !ctx.is_singular() {
        return Err(CalcError::MissingAssumption("singular kappa".into()));
    }
    if !sa.has(SpaceFlag::OpensAreCofkUnionsOfClosed) {
        return Err(CalcError::MissingAssumption(SpaceFlag::OpensAreCofkUnionsOfClosed.name().into()));
    }
    if f.functions {
        return Err(CalcError::Untranslatable("function orders live on the k+ hierarchy only".into()));
    }
    let target = match f.base {
        Base::Kappa => Base::KappaPlus,
        Base::KappaPlus => Base::Kappa,
    };
    let bound = match &f.bound {
        Bound::Top => Bound::Top,
        Bound::Ord(b) => {
            if b.is_zero() {
                return Err(CalcError::InvalidLevel("order bounds start at 1".into()));
            }
            let alpha = alpha_of_level(b);
            if f.relation == Relation::Eq && !b.is_limit() {
                return Err(CalcError::Untranslatable(format!("equality at successor bound {}", b)));
            }
            let moved = match f.base {
                Base::KappaPlus => ord_double(&alpha),
                Base::Kappa if alpha.is_even() => ord_half(&alpha).expect("even"),
                Base::Kappa => {
                    // Odd: round to the neighbouring even level on the safe side.
                    let even = match f.relation {
                        Relation::Le => alpha.succ(),
                        _ => alpha.pred().expect("odd ordinals are successors"),
                    };
                    ord_half(&even).expect("even")
                }
            };
            Bound::Ord(level_of_alpha(&moved))
        }
    };
    Ok(OrderFact { relation: f.relation, bound, base: target, functions: false })
}

/// Target space data for [`function_hierarchy_order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionTarget {
    pub hausdorff: bool,
    pub at_least_two_points: bool,
}

/// Swaps a set-order fact with the corresponding function-order fact.
pub fn function_hierarchy_order(f: &OrderFact, target: FunctionTarget) -> Result<OrderFact, CalcError> {
    if !target.hausdorff {
        return Err(CalcError::MissingAssumption("hausdorff target".into()));
    }
    if !target.at_least_two_points {
        return Err(CalcError::MissingAssumption("target with at least two points".into()));
    }
    if f.base != Base::KappaPlus {
        return Err(CalcError::Untranslatable("function orders are stated for the k+ hierarchy".into()));
    }
    Ok(OrderFact { functions: !f.functions, ..f.clone() })
}

/// Atomic evidence for [`collapse_criteria`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Order(OrderFact),
    Equal(PointclassDesc, PointclassDesc),
    Closed(PointclassDesc, SetOp, Size),
}

fn derive_bound(e: &Evidence, env: &Env) -> Option<(OrderFact, Vec<&'static str>)> {
    match e {
        Evidence::Order(_) => None,
        Evidence::Equal(p, q) => derive_from_equality(p, q, env),
        Evidence::Closed(p, op, size) => derive_from_closure(p, *op, *size, env),
    }
}

fn le_fact(level: &Ordinal, base: Base, why: Vec<&'static str>) -> Option<(OrderFact, Vec<&'static str>)> {
    Some((OrderFact::new(Relation::Le, level.clone(), base), why))
}

fn derive_from_equality(p: &PointclassDesc, q: &PointclassDesc, env: &Env) -> Option<(OrderFact, Vec<&'static str>)> {
    if [p, q].iter().any(|c| c.base == Base::Kappa) && !env.ctx.is_singular() {
        return None;
    }
    let scale = if needs_k_scale(p) || needs_k_scale(q) {
        if !env.has_k_hypothesis() {
            return None;
        }
        Scale::K
    } else {
        Scale::KPlus
    };
    let mut why = Vec::new();
    let mut a = place(p, scale, &mut why);
    let mut b = place(q, scale, &mut why);
    if a.kind == Kind::Borel && b.kind == Kind::Borel {
        return None;
    }
    if a.kind == Kind::Borel {
        std::mem::swap(&mut a, &mut b);
    }
    let la = a.level.clone().expect("leveled");
    if b.kind == Kind::Borel {
        return le_fact(&la, scale.base(), with(why, &["order.collapse"]));
    }
    let lb = b.level.clone().expect("leveled");
    let (lo, hi, low_level) = match ord_cmp(&la, &lb) {
        OrdCmp::Incomparable => return None,
        OrdCmp::Eq => {
            if a.kind == b.kind {
                return None;
            }
            return match scale {
                Scale::KPlus => le_fact(&la, Base::KappaPlus, with(why, &["collapse.selfdual"])),
                Scale::K => {
                    // Odd levels are self-dual anyway; equality says nothing there.
                    if !alpha_of_level(&la).is_even() || p.kind == Kind::Borel {
                        return None;
                    }
                    le_fact(&la, Base::Kappa, with(why, &["collapse.kappa_selfdual_even"]))
                }
            };
        }
        OrdCmp::Lt => (a, b, la),
        OrdCmp::Gt => (b, a, lb),
    };
    match scale {
        Scale::K => le_fact(&low_level, Base::Kappa, with(why, &["collapse.kappa"])),
        Scale::KPlus => {
            let plain = matches!(
                (lo.kind, hi.kind),
                (Kind::Sigma, Kind::Sigma)
                    | (Kind::Pi, Kind::Pi)
                    | (Kind::Delta, Kind::Sigma)
                    | (Kind::Delta, Kind::Pi)
                    | (Kind::Sigma, Kind::Delta)
                    | (Kind::Pi, Kind::Delta)
            );
            if plain {
                return le_fact(&low_level, Base::KappaPlus, with(why, &["collapse.equal_levels"]));
            }
            if ge_nat(&low_level, 2) {
                return le_fact(
                    &low_level,
                    Base::KappaPlus,
                    with(why, &["incl.above_two", "collapse.equal_levels_increasing"]),
                );
            }
            if env.sa.has(SpaceFlag::RegularHausdorffWeightLeKappa) {
                return le_fact(
                    &low_level,
                    Base::KappaPlus,
                    with(why, &["incl.level_one_regular", "collapse.equal_levels_increasing"]),
                );
            }
            None
        }
    }
}

fn derive_from_closure(p: &PointclassDesc, op: SetOp, size: Size, env: &Env) -> Option<(OrderFact, Vec<&'static str>)> {
    let level = p.level.as_ref()?;
    match p.base {
        Base::KappaPlus => {
            if op == SetOp::Complement {
                if p.kind == Kind::Delta {
                    return None;
                }
                return le_fact(level, Base::KappaPlus, vec!["collapse.selfdual"]);
            }
            let long = matches!(
                (p.kind, op),
                (Kind::Sigma, SetOp::Intersection) | (Kind::Pi, SetOp::Union) | (Kind::Delta, _)
            );
            if !long || size != Size::Card(CofClass::Kappa) {
                return None;
            }
            let below = if ge_nat(level, 3) {
                vec!["def.levels", "incl.above_two"]
            } else if level.as_nat() == Some(2) && env.sa.has(SpaceFlag::RegularHausdorffWeightLeKappa) {
                vec!["incl.level_one_regular", "def.levels"]
            } else {
                return None;
            };
            le_fact(level, Base::KappaPlus, with(below, &["collapse.long_intersections"]))
        }
        Base::Kappa => {
            if !env.has_k_hypothesis() {
                return None;
            }
            let alpha = alpha_of_level(level);
            if op == SetOp::Complement {
                if p.kind == Kind::Delta || !alpha.is_even() {
                    return None;
                }
                return le_fact(level, Base::Kappa, vec!["collapse.kappa_selfdual_even"]);
            }
            let kappa_sized = matches!(size, Size::Card(CofClass::Kappa) | Size::Below(CofClass::Kappa));
            if !kappa_sized {
                return None;
            }
            let fits = match (p.kind, op) {
                (Kind::Sigma, SetOp::Intersection) | (Kind::Pi, SetOp::Union) => true,
                (Kind::Delta, _) => !alpha.is_zero() || env.sa.has(SpaceFlag::SubspaceOfCantor),
                _ => false,
            };
            fits.then(|| (OrderFact::new(Relation::Le, level.clone(), Base::Kappa), vec!["collapse.kappa"]))
        }
    }
}

/// Verdict on `ord_base(X) ≤ target`, from the evidence plus the environment's facts.
pub fn collapse_criteria(evidence: &[Evidence], base: Base, target: &Ordinal, env: &Env) -> Verdict {
    let mut extra: Vec<(OrderFact, Vec<&'static str>)> = Vec::new();
    for e in evidence {
        match e {
            Evidence::Order(f) => extra.push((f.clone(), vec!["order.fact"])),
            other => extra.extend(derive_bound(other, env)),
        }
    }
    let book = Book::build(env, &extra);
    if !book.consistent() {
        return Verdict::unknown(INCONSISTENT);
    }
    if base == Base::Kappa && !env.ctx.is_singular() {
        return Verdict::unknown("singular kappa");
    }
    let know = book.at(base);
    if let Some(why) = know.le(target) {
        return Verdict::holds(&with(why, &["order.collapse"]));
    }
    if let Some(why) = know.gt(target) {
        return Verdict::fails(&with(why, &["order.def"]));
    }
    Verdict::unknown("evidence for collapse")
}

// ---------------------------------------------------------------------------
// Universal sets

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamSpace {
    Cantor,
    SpaceItself,
}

pub fn universal_exists(p: &PointclassDesc, over: ParamSpace, env: &Env) -> Verdict {
    if p.base == Base::Kappa && !env.ctx.is_singular() {
        return Verdict::unknown("singular kappa");
    }
    let mut why: Vec<&'static str> = Vec::new();
    let self_dual = match p.kind {
        Kind::Borel => {
            if p.base == Base::Kappa {
                why.push("parity.borel");
            }
            true
        }
        Kind::Delta => {
            why.push("def.delta");
            true
        }
        _ if p.base == Base::Kappa => {
            if !env.has_k_hypothesis() {
                return Verdict::unknown(missing_k_hypothesis(env));
            }
            let alpha = alpha_of_level(p.level.as_ref().expect("leveled"));
            if alpha.is_even() {
                why.push("parity.even");
                false
            } else {
                why.push("parity.odd");
                true
            }
        }
        _ => false,
    };
    let cantor_copy = env.sa.has(SpaceFlag::HasCantorCopy);
    if self_dual {
        return match over {
            ParamSpace::SpaceItself => Verdict::fails(&with(why, &["universal.selfdual"])),
            ParamSpace::Cantor if cantor_copy => {
                Verdict::fails(&with(why, &["universal.transfer", "universal.selfdual"]))
            }
            ParamSpace::Cantor => Verdict::unknown(SpaceFlag::HasCantorCopy.name()),
        };
    }
    match over {
        ParamSpace::Cantor => Verdict::holds(&with(why, &["universal.kplus"])),
        ParamSpace::SpaceItself if cantor_copy => {
            Verdict::holds(&with(why, &["universal.kplus", "universal.transfer"]))
        }
        ParamSpace::SpaceItself => Verdict::unknown(SpaceFlag::HasCantorCopy.name()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(s: &str) -> PointclassDesc {
        s.parse().unwrap()
    }

    fn singular() -> Env {
        Env::new(
            CardinalContext::singular(CofClass::Omega).unwrap(),
            SpaceAssumptions::new([SpaceFlag::OpensAreCofkUnionsOfClosed]),
            vec![],
        )
    }

    fn regular(flags: &[SpaceFlag], facts: Vec<OrderFact>) -> Env {
        Env::new(CardinalContext::regular(), SpaceAssumptions::new(flags.iter().copied()), facts)
    }

    fn gt(n: &str, base: Base) -> OrderFact {
        OrderFact::new(Relation::Gt, n.parse().unwrap(), base)
    }

    #[test]
    fn pointclass_round_trip() {
        for s in ["Sigma(0,3,k)", "Pi(0,w^2+1,k+)", "Delta(0,L(cofk)+2,k+)", "Borel(k)"] {
            assert_eq!(pc(s).to_string(), s);
        }
        assert!("Sigma(1,3,k)".parse::<PointclassDesc>().is_err());
        assert!("Sigma(0,0,k)".parse::<PointclassDesc>().is_err());
        assert!("Gamma(0,1,k)".parse::<PointclassDesc>().is_err());
    }

    #[test]
    fn normalize_examples() {
        let env = singular();
        assert_eq!(normalize(&pc("Sigma(0,3,k)"), &env.ctx, &env.sa).unwrap(), pc("Sigma(0,2,k+)"));
        assert_eq!(normalize(&pc("Sigma(0,2,k)"), &env.ctx, &env.sa).unwrap(), pc("Delta(0,2,k)"));
        assert_eq!(normalize(&pc("Pi(0,5,k+)"), &env.ctx, &env.sa).unwrap(), pc("Pi(0,5,k+)"));
        let bare = SpaceAssumptions::default();
        assert!(matches!(normalize(&pc("Sigma(0,3,k)"), &env.ctx, &bare), Err(CalcError::MissingAssumption(_))));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual(&pc("Sigma(0,2,k+)")), pc("Pi(0,2,k+)"));
        assert_eq!(dual(&pc("Delta(0,3,k+)")), pc("Delta(0,3,k+)"));
        assert_eq!(dual(&dual(&pc("Sigma(0,w,k+)"))), pc("Sigma(0,w,k+)"));
    }

    #[test]
    fn compare_examples() {
        let env = regular(&[SpaceFlag::RegularHausdorffWeightLeKappa], vec![]);
        let v = compare(&pc("Sigma(0,1,k+)"), &pc("Sigma(0,2,k+)"), &env);
        assert_eq!(v.answer, Answer::Holds);
        assert!(v.trace.iter().any(|s| s.rule_id == "incl.level_one_regular"));
        let bare = regular(&[], vec![]);
        assert_eq!(compare(&pc("Sigma(0,1,k+)"), &pc("Sigma(0,2,k+)"), &bare).answer, Answer::Unknown);
        assert_eq!(compare(&pc("Delta(0,4,k+)"), &pc("Sigma(0,4,k+)"), &bare).answer, Answer::Holds);
        let facts = regular(&[], vec![gt("3", Base::KappaPlus)]);
        let v = compare(&pc("Sigma(0,3,k+)"), &pc("Delta(0,3,k+)"), &facts);
        assert_eq!(v.answer, Answer::Fails);
        assert!(v.trace.iter().any(|s| s.rule_id == "proper.same_level"));
        assert_eq!(compare(&pc("Sigma(0,3,k+)"), &pc("Delta(0,3,k+)"), &bare).answer, Answer::Unknown);
    }

    #[test]
    fn compare_across_bases() {
        let env = singular();
        assert_eq!(compare(&pc("Sigma(0,3,k)"), &pc("Sigma(0,2,k+)"), &env).answer, Answer::Holds);
        assert_eq!(compare(&pc("Sigma(0,2,k)"), &pc("Pi(0,2,k)"), &env).answer, Answer::Holds);
        assert_eq!(compare(&pc("Sigma(0,1,k+)"), &pc("Delta(0,2,k)"), &env).answer, Answer::Holds);
        assert_eq!(compare(&pc("Borel(k)"), &pc("Borel(k+)"), &env).answer, Answer::Holds);
    }

    #[test]
    fn closure_examples() {
        let env = regular(&[], vec![]);
        let sig = PointclassDesc::new(Kind::Sigma, "w+1".parse().unwrap(), Base::KappaPlus).unwrap();
        assert_eq!(closure(&sig, SetOp::Intersection, Size::Below(CofClass::CofKappa), &env).answer, Answer::Holds);
        let facts = regular(&[], vec![gt("2", Base::KappaPlus)]);
        assert_eq!(closure(&pc("Pi(0,2,k+)"), SetOp::Complement, Size::Card(CofClass::Finite), &facts).answer, Answer::Fails);
        let facts = regular(&[], vec![gt("w", Base::KappaPlus)]);
        let v = closure(&pc("Delta(0,w,k+)"), SetOp::Union, Size::Card(CofClass::Omega), &facts);
        assert_eq!(v.answer, Answer::Fails);
        assert!(v.trace.iter().any(|s| s.rule_id == "optimal.regular"));
    }

    #[test]
    fn translate_examples() {
        let env = singular();
        let f = OrderFact::new(Relation::Le, Ordinal::nat(3), Base::KappaPlus);
        assert_eq!(translate_order(&f, &env.ctx, &env.sa).unwrap(), OrderFact::new(Relation::Le, Ordinal::nat(5), Base::Kappa));
        let f = OrderFact::new(Relation::Le, Ordinal::omega(), Base::KappaPlus);
        assert_eq!(translate_order(&f, &env.ctx, &env.sa).unwrap().bound, Bound::Ord(Ordinal::omega()));
        let f = OrderFact::new(Relation::Le, Ordinal::nat(1), Base::Kappa);
        assert_eq!(translate_order(&f, &env.ctx, &env.sa).unwrap(), OrderFact::new(Relation::Le, Ordinal::nat(1), Base::KappaPlus));
        let reg = CardinalContext::regular();
        assert!(translate_order(&f, &reg, &env.sa).is_err());
    }

    #[test]
    fn collapse_examples() {
        let env = regular(&[], vec![]);
        let ev = [Evidence::Equal(pc("Sigma(0,3,k+)"), pc("Pi(0,3,k+)"))];
        assert_eq!(collapse_criteria(&ev, Base::KappaPlus, &Ordinal::nat(3), &env).answer, Answer::Holds);
        let ev = [Evidence::Equal(pc("Sigma(0,2,k)"), pc("Pi(0,2,k)"))];
        assert_eq!(collapse_criteria(&ev, Base::Kappa, &Ordinal::nat(2), &singular()).answer, Answer::Unknown);
        assert_eq!(collapse_criteria(&[], Base::KappaPlus, &Ordinal::nat(3), &env).answer, Answer::Unknown);
        let ev = [Evidence::Equal(pc("Sigma(0,3,k)"), pc("Pi(0,3,k)"))];
        assert_eq!(collapse_criteria(&ev, Base::KappaPlus, &Ordinal::nat(2), &singular()).answer, Answer::Holds);
    }

    #[test]
    fn universal_examples() {
        let env = regular(&[], vec![]);
        assert_eq!(universal_exists(&pc("Sigma(0,4,k+)"), ParamSpace::Cantor, &env).answer, Answer::Holds);
        let mut s = singular();
        s.sa = SpaceAssumptions::new([SpaceFlag::OpensAreCofkUnionsOfClosed, SpaceFlag::HasCantorCopy]);
        assert_eq!(universal_exists(&pc("Sigma(0,2,k)"), ParamSpace::Cantor, &s).answer, Answer::Fails);
        assert_eq!(universal_exists(&pc("Sigma(0,2,k)"), ParamSpace::Cantor, &singular()).answer, Answer::Unknown);
        assert_eq!(universal_exists(&pc("Delta(0,3,k+)"), ParamSpace::SpaceItself, &env).answer, Answer::Fails);
    }

    #[test]
    fn function_order_examples() {
        let t = FunctionTarget { hausdorff: true, at_least_two_points: true };
        let f = OrderFact::new(Relation::Eq, Ordinal::nat(5), Base::KappaPlus);
        let g = function_hierarchy_order(&f, t).unwrap();
        assert!(g.functions);
        assert_eq!(function_hierarchy_order(&g, t).unwrap(), f);
        let bad = FunctionTarget { hausdorff: true, at_least_two_points: false };
        assert!(function_hierarchy_order(&f, bad).is_err());
    }

    #[test]
    fn every_rule_id_is_unique() {
        let ids: BTreeSet<_> = RULES.iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), RULES.len());
    }

    #[test]
    fn env_json() {
        let env = Env::from_json(
            r#"{"kappa":"singular","cof_kappa":"omega","space":["subspace_of_cantor"],
                "facts":[{"ord":{"base":"k+","rel":"gt","bound":"3"}}]}"#,
        )
        .unwrap();
        assert!(env.sa.has(SpaceFlag::OpensAreCofkUnionsOfClosed));
        assert_eq!(env.facts.len(), 1);
        match Env::from_json(r#"{"kappa":"regular","facts":[{"ord":{"base":"q","rel":"gt","bound":"3"}}]}"#) {
            Err(CalcError::Schema { path, .. }) => assert_eq!(path, "facts[0].ord.base"),
            other => panic!("{:?}", other),
        }
    }
}
