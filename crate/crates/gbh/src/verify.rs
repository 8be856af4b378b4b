//! The ten acceptance suites, shared by `gbh verify` and the `acceptance` test.
//!
//! Every suite returns a one-line summary on success or the first
//! counterexample on failure. Reference implementations the suites compare
//! against live in [`oracle`] and share no code with the modules under test.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::borelcodes::{
    canonical_tree, code_complement, code_intersection, code_union, empty_code, interpret, project, rank, whole_code, CodeTree,
};
use crate::calculus::{
    alpha_of_level, audit, closure, collapse_criteria, dual, level_of_alpha, normalize, translate_order, Answer, Base,
    Bound, CardinalContext, Env, Kind, OrderFact, PointclassDesc, Relation, SetOp, Size, SpaceAssumptions, SpaceFlag,
};
use crate::forcinglab::{
    build_generic, full_dense_list, interpret_generic, Bits, Condition, DenseSet, Forcing, Lab, MeetError, Template,
};
use crate::ordinals::{ord_add, ord_cmp, ord_double, ord_half, parse_ordinal, CofClass, OrdCmp, Ordinal};
use crate::spacelab::{build_universal, pair, set_algebra_oracle, unpair, FiniteSpace, PointSet, Stem};
use crate::treemaps::{
    all_embeddings, all_maps, body_map, check_exists_perfect, check_order_props, closed_image_check, projection_map,
    Alphabet, FiniteTree,
};

pub type Outcome = Result<String, String>;

#[derive(Debug, Clone)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
    run: fn(u64) -> Outcome,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Report {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {}: {} ({:.2}s, limit {}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "ordinal laws", limit: Duration::from_secs(1), run: ordinal_laws },
    Criterion { id: 2, name: "parity translation", limit: Duration::from_secs(1), run: parity_translation },
    Criterion { id: 3, name: "order translation", limit: Duration::from_secs(1), run: order_translation },
    Criterion { id: 4, name: "calculus consistency", limit: Duration::from_secs(5), run: calculus_consistency },
    Criterion { id: 5, name: "code semantics", limit: Duration::from_secs(10), run: code_semantics },
    Criterion { id: 6, name: "canonical tree", limit: Duration::from_secs(30), run: canonical_trees },
    Criterion { id: 7, name: "universal sets", limit: Duration::from_secs(5), run: universal_sets },
    Criterion { id: 8, name: "embedding characterizations", limit: Duration::from_secs(60), run: embeddings },
    Criterion { id: 9, name: "forcing poset laws", limit: Duration::from_secs(300), run: forcing_laws },
    Criterion { id: 10, name: "generic semantics", limit: Duration::from_secs(30), run: generic_semantics },
];

pub fn run(id: u8, seed: u64) -> Option<Report> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let outcome = (c.run)(seed);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(s) => (true, s),
        Err(s) => (false, s),
    };
    if passed && elapsed > c.limit {
        passed = false;
        detail = format!("over time: {}", detail);
    }
    Some(Report { id: c.id, name: c.name, passed, detail, elapsed, limit: c.limit })
}

pub fn run_all(seed: u64) -> Vec<Report> {
    CRITERIA.iter().filter_map(|c| run(c.id, seed)).collect()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Reference implementations.
pub mod oracle {
    use super::*;

    /// `ω²·a + ω·b + c` as a plain triple.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    pub struct Cnf3(pub u64, pub u64, pub u64);

    impl Cnf3 {
        pub fn text(&self) -> String {
            let mut parts = Vec::new();
            if self.0 > 0 {
                parts.push(format!("w^2*{}", self.0));
            }
            if self.1 > 0 {
                parts.push(format!("w*{}", self.1));
            }
            if self.2 > 0 || parts.is_empty() {
                parts.push(self.2.to_string());
            }
            parts.join(" + ")
        }

        /// Left summands are absorbed by the leading term of the right one.
        pub fn add(&self, o: &Cnf3) -> Cnf3 {
            if o.0 > 0 {
                Cnf3(self.0 + o.0, o.1, o.2)
            } else if o.1 > 0 {
                Cnf3(self.0, self.1 + o.1, o.2)
            } else {
                Cnf3(self.0, self.1, self.2 + o.2)
            }
        }
    }

    /// Unfolds `I^f` into a set expression: leaves are `[s] ∩ X`, inner
    /// nodes `X ∖ ⋃ children`.
    pub fn code_expr(code: &CodeTree, space: &FiniteSpace, x: &PointSet) -> crate::spacelab::SetExpr {
        use crate::spacelab::SetExpr;
        fn go(code: &CodeTree, space: &FiniteSpace, x: &PointSet, s: usize) -> SetExpr {
            match code.label(s) {
                Some(stem) => SetExpr::Intersection(vec![
                    SetExpr::Set(space.basic(stem).expect("valid stem")),
                    SetExpr::Set(x.clone()),
                ]),
                None => SetExpr::Intersection(vec![
                    SetExpr::Set(x.clone()),
                    SetExpr::complement(SetExpr::Union(code.children(s).iter().map(|&c| go(code, space, x, c)).collect())),
                ]),
            }
        }
        go(code, space, x, 0)
    }

    /// Every union of basis members, as point masks.
    pub fn unions(basis: &[PointSet]) -> BTreeSet<u128> {
        (0u32..1 << basis.len())
            .map(|m| basis.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0u128, |acc, (_, b)| acc | b.mask()))
            .collect()
    }

    fn strict_prefix(a: &[u16], b: &[u16]) -> bool {
        a.len() < b.len() && b.starts_with(a)
    }

    fn comparable(a: &[u16], b: &[u16]) -> bool {
        a.starts_with(b) || b.starts_with(a)
    }

    /// The three ∃-perfect characterizations, straight from the definitions.
    pub fn exists_perfect(source: &[Vec<u16>], images: &[Vec<u16>], n2: u16) -> [bool; 3] {
        let proj = |w: &Vec<u16>| -> Vec<u16> { w.iter().map(|c| c / n2).collect() };
        let n = source.len();
        let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
        let embedding = |f: &dyn Fn(usize) -> Vec<u16>| {
            pairs().all(|(i, j)| {
                let (s, t) = (&source[i], &source[j]);
                if strict_prefix(s, t) {
                    strict_prefix(&f(i), &f(j))
                } else if !comparable(s, t) {
                    !comparable(&f(i), &f(j))
                } else {
                    true
                }
            })
        };
        let strict = pairs().all(|(i, j)| !strict_prefix(&source[i], &source[j]) || strict_prefix(&images[i], &images[j]));
        let proj_incompat = pairs()
            .all(|(i, j)| comparable(&source[i], &source[j]) || !comparable(&proj(&images[i]), &proj(&images[j])));
        let c1 = strict && proj_incompat;
        let c2 = embedding(&|i| proj(&images[i]));
        let img: Vec<Vec<u16>> = images.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let pi_on_image = (0..img.len()).all(|i| {
            (0..img.len()).all(|j| {
                if strict_prefix(&img[i], &img[j]) {
                    strict_prefix(&proj(&img[i]), &proj(&img[j]))
                } else if !comparable(&img[i], &img[j]) {
                    !comparable(&proj(&img[i]), &proj(&img[j]))
                } else {
                    true
                }
            })
        });
        let c3 = embedding(&|i| images[i].clone()) && pi_on_image;
        [c1, c2, c3]
    }

    /// Ordered rooted trees with `n` nodes as children lists, nodes in preorder.
    pub fn shapes(n: usize) -> Vec<Vec<Vec<usize>>> {
        fn dyck(open: usize, close: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
            if open == 0 && close == 0 {
                out.push(cur.clone());
                return;
            }
            if open > 0 {
                cur.push(true);
                dyck(open - 1, close + 1, cur, out);
                cur.pop();
            }
            if close > 0 {
                cur.push(false);
                dyck(open, close - 1, cur, out);
                cur.pop();
            }
        }
        let mut words = Vec::new();
        dyck(n - 1, 0, &mut Vec::new(), &mut words);
        words
            .into_iter()
            .map(|w| {
                let mut children = vec![Vec::new()];
                let mut stack = vec![0];
                for up in w {
                    if up {
                        let id = children.len();
                        children.push(Vec::new());
                        children[*stack.last().expect("root")].push(id);
                        stack.push(id);
                    } else {
                        stack.pop();
                    }
                }
                children
            })
            .collect()
    }

    /// Every code with at most `max_nodes` nodes and labels from `stems`.
    pub fn all_codes(max_nodes: usize, stems: &[Stem], mut visit: impl FnMut(&CodeTree)) {
        for n in 1..=max_nodes {
            for shape in shapes(n) {
                let leaves = shape.iter().filter(|k| k.is_empty()).count();
                let total = stems.len().pow(leaves as u32);
                for mut code in 0..total {
                    let labels: Vec<Stem> = (0..leaves)
                        .map(|_| {
                            let s = stems[code % stems.len()].clone();
                            code /= stems.len();
                            s
                        })
                        .collect();
                    visit(&CodeTree::from_shape(shape.clone(), &labels).expect("valid shape"));
                }
            }
        }
    }

    /// A random code: node `i > 0` hangs below a random earlier node.
    pub fn random_code(rng: &mut ChaCha8Rng, max_nodes: usize, stems: &[Stem]) -> CodeTree {
        let n = rng.gen_range(1..=max_nodes);
        let mut children = vec![Vec::new(); n];
        for i in 1..n {
            let p = rng.gen_range(0..i);
            children[p].push(i);
        }
        let leaves = children.iter().filter(|k| k.is_empty()).count();
        let labels: Vec<Stem> = (0..leaves).map(|_| stems[rng.gen_range(0..stems.len())].clone()).collect();
        CodeTree::from_shape(children, &labels).expect("valid shape")
    }
}

use oracle::Cnf3;

fn sample_cnf3(rng: &mut ChaCha8Rng, n: usize) -> Vec<Cnf3> {
    (0..n).map(|_| Cnf3(rng.gen_range(0..4), rng.gen_range(0..6), rng.gen_range(0..12))).collect()
}

fn sample_lambda(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let cofs = ["omega", "cofk", "oltk", "kappa"];
    (0..n)
        .map(|_| {
            let c = cofs[rng.gen_range(0..cofs.len())];
            match rng.gen_range(0..12u64) {
                0 => format!("L({})", c),
                k => format!("L({})+{}", c, k),
            }
        })
        .collect()
}

fn parse(s: &str) -> Result<Ordinal, String> {
    parse_ordinal(s).map_err(|e| format!("{}: {}", s, e))
}

/// Pure CNF below ω³ plus `Λ`-headed forms, seeded.
fn ordinal_sample(seed: u64) -> Result<(Vec<(Cnf3, Ordinal)>, Vec<Ordinal>), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pure = sample_cnf3(&mut rng, 500)
        .into_iter()
        .map(|t| parse(&t.text()).map(|o| (t, o)))
        .collect::<Result<Vec<_>, _>>()?;
    let lambda = sample_lambda(&mut rng, 50).iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
    Ok((pure, lambda))
}

fn ordinal_laws(seed: u64) -> Outcome {
    let (pure, lambda) = ordinal_sample(seed)?;
    let all: Vec<&Ordinal> = pure.iter().map(|(_, o)| o).chain(lambda.iter()).collect();
    for a in &all {
        ensure!(a.is_normal(), "{} not normal", a);
        ensure!(&&parse(&a.to_string())? == a, "{} does not round-trip", a);
        let s = a.succ();
        ensure!(s.is_normal() && s.is_even() != a.is_even(), "parity does not alternate at {}", a);
        let d = ord_double(a);
        ensure!(d.is_normal(), "2*{} not normal", a);
        let h = ord_half(&d).map_err(|e| e.to_string())?;
        ensure!(&&h == a, "half(double({})) = {}", a, h);
        if a.is_even() {
            let h = ord_half(a).map_err(|e| e.to_string())?;
            ensure!(h.is_normal() && &&ord_double(&h) == a, "double(half({})) != {}", a, a);
        } else {
            ensure!(ord_half(a).is_err(), "half accepted odd {}", a);
        }
    }
    let mut compared = 0usize;
    for (ta, a) in &pure {
        for (tb, b) in &pure {
            let want = OrdCmp::from_ordering(ta.cmp(tb));
            ensure!(ord_cmp(a, b) == want, "ord_cmp({}, {}) disagrees with the oracle", a, b);
            compared += 1;
        }
    }
    for w in pure.windows(2) {
        let ((ta, a), (tb, b)) = (&w[0], &w[1]);
        let sum = ord_add(a, b).map_err(|e| e.to_string())?;
        ensure!(sum.is_normal() && sum == parse(&ta.add(tb).text())?, "{} + {} = {}", a, b, sum);
    }
    for l in &lambda {
        for (_, p) in &pure {
            ensure!(ord_cmp(l, p) == OrdCmp::Gt, "{} not above {}", l, p);
        }
    }
    Ok(format!("{} pure + {} limit-atom ordinals, {} comparisons", pure.len(), lambda.len(), compared))
}

fn singular_env(cof: CofClass) -> Env {
    Env::new(
        CardinalContext::singular(cof).expect("singular cofinality"),
        SpaceAssumptions::new([SpaceFlag::OpensAreCofkUnionsOfClosed]),
        Vec::new(),
    )
}

fn parity_translation(seed: u64) -> Outcome {
    let (pure, lambda) = ordinal_sample(seed)?;
    let alphas: Vec<Ordinal> = pure.into_iter().map(|(_, o)| o).chain(lambda).collect();
    let mut checked = 0;
    for cof in [CofClass::Omega, CofClass::OtherLtKappa] {
        let env = singular_env(cof);
        for alpha in &alphas {
            let level = level_of_alpha(alpha);
            for kind in [Kind::Sigma, Kind::Pi] {
                let p = PointclassDesc::new(kind, level.clone(), Base::Kappa).map_err(|e| e.to_string())?;
                let n = normalize(&p, &env.ctx, &env.sa).map_err(|e| e.to_string())?;
                let nn = normalize(&n, &env.ctx, &env.sa).map_err(|e| e.to_string())?;
                ensure!(n == nn, "normalize not idempotent at {}", p);
                let back = alpha_of_level(n.level.as_ref().expect("leveled"));
                if alpha.is_even() {
                    ensure!(n.base == Base::KappaPlus && n.kind == kind, "{} normalized to {}", p, n);
                    let half = ord_half(alpha).map_err(|e| e.to_string())?;
                    ensure!(back == half, "{} normalized to level 1+{}, want 1+{}", p, back, half);
                    ensure!(&ord_double(&back) == alpha, "doubling {} does not give {}", back, alpha);
                    let dn = normalize(&dual(&p), &env.ctx, &env.sa).map_err(|e| e.to_string())?;
                    ensure!(dn == dual(&n), "normalize and dual do not commute at {}", p);
                } else {
                    ensure!(n.kind == Kind::Delta && n.base == Base::Kappa, "odd {} normalized to {}", p, n);
                }
                let q = PointclassDesc::new(kind, level.clone(), Base::KappaPlus).map_err(|e| e.to_string())?;
                ensure!(normalize(&q, &env.ctx, &env.sa).map_err(|e| e.to_string())? == q, "{} moved", q);
                checked += 1;
            }
        }
    }
    Ok(format!("{} classes normalized", checked))
}

fn order_translation(seed: u64) -> Outcome {
    let (pure, lambda) = ordinal_sample(seed)?;
    let env = singular_env(CofClass::Omega);
    let mut limits = 0;
    let bounds = pure.into_iter().map(|(_, o)| o).chain(lambda).filter(|o| !o.is_zero());
    let mut n = 0;
    for b in bounds {
        for rel in [Relation::Le, Relation::Gt] {
            let f = OrderFact::new(rel, b.clone(), Base::KappaPlus);
            let g = translate_order(&f, &env.ctx, &env.sa).map_err(|e| e.to_string())?;
            let h = translate_order(&g, &env.ctx, &env.sa).map_err(|e| e.to_string())?;
            ensure!(h == f, "{} -> {} -> {}", f, g, h);
            if b.is_limit() {
                ensure!(g.bound == Bound::Ord(b.clone()), "limit bound {} moved to {}", b, g.bound);
                limits += 1;
            }
            n += 1;
        }
    }
    ensure!(limits > 0, "sample has no limit bounds");
    Ok(format!("{} facts round-tripped, {} at limit bounds", n, limits))
}

fn random_env(rng: &mut ChaCha8Rng, levels: &[Ordinal]) -> Env {
    let ctx = match rng.gen_range(0..3) {
        0 => CardinalContext::regular(),
        1 => CardinalContext::singular(CofClass::Omega).expect("singular"),
        _ => CardinalContext::singular(CofClass::OtherLtKappa).expect("singular"),
    };
    let flags: Vec<SpaceFlag> = SpaceFlag::ALL.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
    let nfacts = rng.gen_range(0..4);
    let facts = (0..nfacts)
        .map(|_| {
            let rel = [Relation::Le, Relation::Gt, Relation::Eq][rng.gen_range(0..3)];
            let base = if ctx.is_singular() && rng.gen_bool(0.5) { Base::Kappa } else { Base::KappaPlus };
            let mut f = OrderFact::new(rel, levels[rng.gen_range(0..levels.len())].clone(), base);
            if rng.gen_range(0..8) == 0 {
                f.bound = Bound::Top;
            }
            f
        })
        .collect();
    Env::new(ctx, SpaceAssumptions::new(flags), facts)
}

fn calculus_consistency(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let levels: Vec<Ordinal> =
        ["1", "2", "3", "4", "5", "w", "w+1", "w+2", "w*2", "w*2+3", "L(omega)", "L(cofk)+1"]
            .iter()
            .map(|s| parse(s))
            .collect::<Result<_, _>>()?;
    let mut pairs = 0usize;
    let mut decided = 0usize;
    for _ in 0..200 {
        let env = random_env(&mut rng, &levels);
        let bases: &[Base] = if env.ctx.is_singular() { &[Base::KappaPlus, Base::Kappa] } else { &[Base::KappaPlus] };
        for &base in bases {
            for level in &levels {
                let order = collapse_criteria(&[], base, level, &env);
                audit(&order).map_err(|e| format!("audit: {}", e))?;
                for (kind, op) in [(Kind::Sigma, SetOp::Intersection), (Kind::Pi, SetOp::Union), (Kind::Delta, SetOp::Intersection)] {
                    let p = PointclassDesc::new(kind, level.clone(), base).map_err(|e| e.to_string())?;
                    let closed = closure(&p, op, Size::Card(CofClass::Kappa), &env);
                    audit(&closed).map_err(|e| format!("audit: {}", e))?;
                    ensure!(
                        !(closed.answer == Answer::Holds && order.answer == Answer::Fails),
                        "{} closed under kappa-sized {:?} and ord_{} > {} both hold under {:?}",
                        p,
                        op,
                        base.name(),
                        level,
                        env
                    );
                    pairs += 1;
                    decided += (closed.answer != Answer::Unknown) as usize;
                }
            }
        }
    }
    Ok(format!("200 environments, {} query pairs, {} decided closure verdicts", pairs, decided))
}

fn code_semantics(_seed: u64) -> Outcome {
    let space = FiniteSpace::full(2, 2).map_err(|e| e.to_string())?;
    let stems = space.stems_upto(2);
    let whole = space.whole();
    let part = space.set_from_words(&["00", "01", "10"]).map_err(|e| e.to_string())?;
    let mut n = 0usize;
    let mut failure = None;
    oracle::all_codes(7, &stems, |code| {
        if failure.is_some() {
            return;
        }
        let xs: &[&PointSet] = if code.len() <= 5 { &[&whole, &part] } else { &[&whole] };
        for x in xs {
            let got = interpret(code, &space, x).expect("valid code");
            let want = set_algebra_oracle(&space, &oracle::code_expr(code, &space, x)).expect("same space");
            if got != want {
                failure = Some(format!("code {} over {:?}", code.to_json(), space.words_of(x)));
            }
        }
        n += 1;
    });
    if let Some(f) = failure {
        return Err(f);
    }
    let i = |c: &CodeTree| interpret(c, &space, &whole).expect("valid code");
    ensure!(i(&empty_code()).is_empty() && i(&code_union(&[])).is_empty(), "empty code is not empty");
    ensure!(i(&whole_code()) == whole, "whole code is not X");
    let mut small = Vec::new();
    oracle::all_codes(3, &stems, |c| small.push(c.clone()));
    let mut identities = 0usize;
    for a in &small {
        let ca = code_complement(a);
        ensure!(i(&ca) == i(a).complement(), "complement of {}", a.to_json());
        ensure!(rank(&ca)[0] == rank(a)[0] + 1, "complement rank of {}", a.to_json());
        for b in &small {
            let (ia, ib) = (i(a), i(b));
            let u = code_union(&[a.clone(), b.clone()]);
            let m = code_intersection(&[a.clone(), b.clone()]);
            let max = rank(a)[0].max(rank(b)[0]);
            ensure!(i(&u) == ia.union(&ib).expect("same space"), "union of {} {}", a.to_json(), b.to_json());
            ensure!(i(&m) == ia.intersection(&ib).expect("same space"), "intersection of {} {}", a.to_json(), b.to_json());
            ensure!(rank(&u)[0] <= max + 2 && rank(&m)[0] <= max + 1, "rank bound for {} {}", a.to_json(), b.to_json());
            let cu = code_complement(&u);
            let mc = code_intersection(&[code_complement(a), code_complement(b)]);
            ensure!(i(&cu) == i(&mc), "De Morgan for union at {} {}", a.to_json(), b.to_json());
            let cm = code_complement(&m);
            let uc = code_union(&[code_complement(a), code_complement(b)]);
            ensure!(i(&cm) == i(&uc), "De Morgan for intersection at {} {}", a.to_json(), b.to_json());
            identities += 2;
        }
    }
    Ok(format!("{} codes against the oracle, {} De Morgan identities", n, identities))
}

fn canonical_trees(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = FiniteSpace::full(2, 2).map_err(|e| e.to_string())?;
    let stems = space.stems_upto(2);
    let mut branches = 0usize;
    for k in 0..100 {
        let code = oracle::random_code(&mut rng, 6, &stems);
        let x = if k % 2 == 0 {
            space.whole()
        } else {
            space.set_from_indices((0..space.len()).filter(|_| rng.gen_bool(0.7)))
        };
        let tree = canonical_tree(&code, &space, &x).map_err(|e| e.to_string())?;
        branches += tree.branches().count();
        let want = interpret(&code, &space, &x).map_err(|e| e.to_string())?;
        ensure!(project(&tree, &space) == want, "projection differs for {}", code.to_json());
    }
    Ok(format!("100 codes, {} branches enumerated", branches))
}

fn universal_sets(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = FiniteSpace::full(2, 2).map_err(|e| e.to_string())?;
    let mut bases = 0;
    for l in 1..=6usize {
        for _ in 0..20 {
            let basis: Vec<PointSet> = (0..l)
                .map(|_| space.set_from_indices((0..space.len()).filter(|_| rng.gen_bool(0.5))))
                .collect();
            let u = build_universal(1, &space, &basis, 1).map_err(|e| e.to_string())?;
            let got: BTreeSet<u128> = u.sections().iter().map(|s| s.mask()).collect();
            let opens = oracle::unions(&basis);
            ensure!(got == opens, "level-1 sections differ for L = {}", l);
            if l <= 3 {
                for m in 1..=2usize {
                    let u2 = build_universal(2, &space, &basis, m).map_err(|e| e.to_string())?;
                    let got: BTreeSet<u128> = u2.sections().iter().map(|s| s.mask()).collect();
                    let full = space.whole().mask();
                    let mut want: BTreeSet<u128> = opens.iter().map(|o| full & !o).collect();
                    for _ in 1..m {
                        want = want.iter().flat_map(|a| opens.iter().map(move |o| a | (full & !o))).collect();
                    }
                    ensure!(got == want, "level-2 sections differ for L = {}, m = {}", l, m);
                }
            }
            bases += 1;
        }
    }
    for m in 1..=4usize {
        for l in 1..=6usize {
            let mut seen = vec![false; m * l];
            for d in 0..m {
                for i in 0..l {
                    let n = pair(d, i, l);
                    ensure!(n < m * l && !seen[n], "pair not injective at ({}, {}), L = {}", d, i, l);
                    seen[n] = true;
                    ensure!(unpair(n, l) == (d, i), "unpair does not invert pair at {}", n);
                }
            }
            ensure!(seen.iter().all(|&s| s), "pair not onto for m = {}, L = {}", m, l);
        }
    }
    Ok(format!("{} bases checked, pairing bijective for m <= 4, L <= 6", bases))
}

fn embeddings(_seed: u64) -> Outcome {
    let source = FiniteTree::full(Alphabet::Plain(2), 1);
    let target = FiniteTree::full(Alphabet::Product(3, 2), 2);
    let pi = projection_map(&target).map_err(|e| e.to_string())?;
    let src_words: Vec<Vec<u16>> = (0..source.len()).map(|i| source.node(i).to_vec()).collect();
    let (mut total, mut preserving, mut perfect, mut composed, mut closed) = (0usize, 0usize, 0usize, 0usize, 0usize);
    for phi in all_maps(&source, &target) {
        total += 1;
        let props = check_order_props(&phi);
        if !props.order_preserving {
            ensure!(check_exists_perfect(&phi).is_err(), "non-order-preserving map accepted");
            continue;
        }
        preserving += 1;
        let images: Vec<Vec<u16>> = (0..source.len()).map(|i| phi.image(i).to_vec()).collect();
        let want = oracle::exists_perfect(&src_words, &images, 2);
        let got = check_exists_perfect(&phi).map_err(|e| format!("{}: {}", phi.to_json(), e))?;
        ensure!(
            [got.strict_and_projection_incompatible, got.projection_embedding, got.both_embeddings] == want,
            "characterizations of {} are {:?}, oracle says {:?}",
            phi.to_json(),
            got,
            want
        );
        ensure!(want[0] == want[1] && want[1] == want[2], "oracle characterizations disagree at {}", phi.to_json());
        perfect += got.value as usize;
        if let Ok(f_phi) = body_map(&phi) {
            let comp = phi.then(&pi).map_err(|e| e.to_string())?;
            let f_comp = body_map(&comp).map_err(|e| format!("{}: {}", phi.to_json(), e))?;
            let f_pi = body_map(&pi).map_err(|e| e.to_string())?;
            let chained: BTreeMap<usize, usize> = f_phi.iter().map(|(&x, y)| (x, f_pi[y])).collect();
            ensure!(f_comp == chained, "f of the composite differs at {}", phi.to_json());
            composed += 1;
        }
        if props.order_embedding {
            ensure!(closed_image_check(&phi).map_err(|e| e.to_string())?, "closed image fails at {}", phi.to_json());
            closed += 1;
        }
    }
    ensure!(total >= 10_000, "corpus has only {} maps", total);
    let small = FiniteTree::full(Alphabet::Plain(2), 2);
    let big = FiniteTree::full(Alphabet::Plain(3), 3);
    let embs = all_embeddings(&small, &big);
    for phi in &embs {
        ensure!(closed_image_check(phi).map_err(|e| e.to_string())?, "closed image fails at {}", phi.to_json());
    }
    Ok(format!(
        "{} maps, {} order-preserving, {} exists-perfect, {} composites, {} + {} closed images",
        total,
        preserving,
        perfect,
        composed,
        closed,
        embs.len()
    ))
}

/// The four poset instances: `|X| ∈ {2, 3}`, `(A, B) ∈ {(∅, ∅), ({x₀}, X ∖ {x₀})}`.
pub fn forcing_instances() -> Vec<Forcing> {
    let mut out = Vec::new();
    for words in [vec!["00", "01"], vec!["00", "01", "12"]] {
        let points = words.iter().map(|w| w.parse().expect("digits")).collect();
        let space = FiniteSpace::new(3, 2, points).expect("valid space");
        let x0 = space.set_from_indices([0]);
        let rest = x0.complement();
        for (a, b) in [(space.empty_set(), space.empty_set()), (x0, rest)] {
            let template = Template::new(2, 3).expect("valid template");
            out.push(Forcing::new(template, space.clone(), a, b, 2).expect("disjoint"));
        }
    }
    out
}

fn subsets_of(space: &FiniteSpace) -> Vec<PointSet> {
    (0u32..1 << space.len())
        .map(|m| space.set_from_indices((0..space.len()).filter(|i| m >> i & 1 == 1)))
        .collect()
}

/// Every set of at most `s_max` atoms that passes `is_condition`.
fn brute_conditions(forcing: &Forcing, lab: &Lab) -> BTreeSet<Bits> {
    let n = lab.atoms.len();
    let mut out = BTreeSet::new();
    let mut push = |b: Bits| {
        if forcing.is_condition(&lab.to_condition(&b)).is_ok() && lab.to_condition(&b).size() == b.count() {
            out.insert(b);
        }
    };
    push(Bits::default());
    for i in 0..n {
        push(Bits::default().with(i));
        if forcing.s_max >= 2 {
            for j in i + 1..n {
                push(Bits::default().with(i).with(j));
            }
        }
    }
    out
}

fn forcing_laws(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = Vec::new();
    for forcing in forcing_instances() {
        ensure!(forcing.s_max == 2, "brute-force oracle assumes s_max = 2");
        ensure!(
            forcing.template.b() as usize > forcing.s_max,
            "branching {} does not exceed s_max {}",
            forcing.template.b(),
            forcing.s_max
        );
        let lab = Lab::new(&forcing).map_err(|e| e.to_string())?;
        let conds = &lab.conditions;
        let structural: Vec<Condition> = conds.iter().map(|c| lab.to_condition(c)).collect();
        let brute = brute_conditions(&forcing, &lab);
        ensure!(brute == conds.iter().copied().collect::<BTreeSet<_>>(), "lab enumeration differs from is_condition");
        let index: BTreeMap<Bits, usize> = conds.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let ups = |r: &Bits| -> Vec<usize> { r.subsets().iter().map(|s| index[s]).collect() };
        let hs = subsets_of(&forcing.space);

        // Partial order and well-met law, driven by the common lower bound r.
        for (ri, r) in conds.iter().enumerate() {
            let rc = &structural[ri];
            ensure!(forcing.leq(rc, rc), "leq not reflexive");
            let up = ups(r);
            for &pi in &up {
                let p = &structural[pi];
                ensure!(forcing.leq(rc, p), "r not below its subset");
                for &qi in &up {
                    let q = &structural[qi];
                    if forcing.leq(p, q) && forcing.leq(q, p) {
                        ensure!(pi == qi, "antisymmetry fails");
                    }
                    if conds[qi].subset(&conds[pi]) {
                        ensure!(forcing.leq(p, q) && forcing.leq(rc, q), "transitivity fails");
                    }
                    let m = forcing.meet(p, q).map_err(|e| format!("common lower bound but {}", e))?;
                    ensure!(forcing.leq(&m, p) && forcing.leq(&m, q), "meet is not a lower bound");
                    ensure!(forcing.leq(rc, &m), "meet is not greatest");
                    for h in &hs {
                        let want = forcing.crank(p, h).max(forcing.crank(q, h));
                        ensure!(forcing.crank(&m, h) == want, "crank max-law fails");
                    }
                }
            }
        }

        // All pairs on the bitset side.
        let conf: Vec<Bits> = conds.iter().map(|c| lab.conflict_mask(c)).collect();
        let rbits: Vec<Bits> = conds.iter().map(|c| c.and(&lab.promise_atoms)).collect();
        let rconf: Vec<Bits> = rbits.iter().map(|c| lab.conflict_mask(c).and(&lab.promise_atoms)).collect();
        let fbits: Vec<Bits> = conds.iter().map(|c| c.and(&lab.label_atoms)).collect();
        let npoints = forcing.space.len();
        let gvec: Vec<Vec<u128>> = structural
            .iter()
            .map(|p| {
                let (_, g) = forcing.linked_reduction(p);
                (0..npoints).map(|x| g.get(&x).copied().unwrap_or(0)).collect()
            })
            .collect();
        let mut compatible_pairs = 0usize;
        for i in 0..conds.len() {
            for j in 0..conds.len() {
                let compat = conf[i].disjoint(&conds[j]);
                let union = conds[i].or(&conds[j]);
                ensure!(compat == lab.valid(&union), "pairwise conflicts disagree with validity");
                if compat {
                    compatible_pairs += 1;
                    if union.count() <= forcing.s_max {
                        ensure!(index.contains_key(&union), "in-budget meet missing from the poset");
                    }
                }
                let star = rconf[i].disjoint(&rbits[j]);
                let agree = (0..npoints).all(|x| gvec[i][x] == 0 || gvec[j][x] == 0 || gvec[i][x] == gvec[j][x]);
                ensure!(!agree || star, "linked reduction unsound: {} vs {}", forcing.condition_to_json(&structural[i]), forcing.condition_to_json(&structural[j]));
                ensure!(!(star && fbits[i] == fbits[j]) || compat, "equal labels and star-compatible but incompatible");
            }
        }

        // Sampled agreement of the structural API with the bitsets.
        for _ in 0..100_000 {
            let (i, j) = (rng.gen_range(0..conds.len()), rng.gen_range(0..conds.len()));
            let (p, q) = (&structural[i], &structural[j]);
            ensure!(forcing.leq(p, q) == conds[j].subset(&conds[i]), "leq disagrees with bitsets");
            let union = conds[i].or(&conds[j]);
            let expect = if !conf[i].disjoint(&conds[j]) {
                None
            } else if union.count() > forcing.s_max {
                Some(Err(MeetError::BudgetExceeded(union.count())))
            } else {
                Some(Ok(lab.to_condition(&union)))
            };
            match (forcing.meet(p, q), expect) {
                (Err(MeetError::Incompatible(_)), None) => {}
                (got, Some(want)) if got == want => {}
                (got, _) => return Err(format!("meet disagrees with bitsets: {:?}", got)),
            }
            ensure!(forcing.compatible_star(p, q) == rconf[i].disjoint(&rbits[j]), "star compatibility disagrees");
        }

        // Density with one atom of headroom.
        let dense: Vec<(DenseSet, Bits)> = forcing
            .template
            .internal()
            .flat_map(|t| (0..npoints).map(move |x| DenseSet::Promise(t, x)))
            .map(|d| (d, lab.dense_atoms(&forcing, &d)))
            .collect();
        let mut extended = 0usize;
        for (i, p) in conds.iter().enumerate() {
            for (d, atoms) in &dense {
                if !atoms.disjoint(p) {
                    continue;
                }
                let hit = atoms.iter().find(|&a| lab.allowed.has(a) && conf[i].disjoint(&Bits::default().with(a)) && lab.conflicts[a].disjoint(p));
                let Some(a) = hit else {
                    return Err(format!("{} has no extension below {}", d.name(&forcing), forcing.condition_to_json(&structural[i])));
                };
                let q = lab.to_condition(&p.with(a));
                ensure!(forcing.dense_contains(d, &q) && forcing.leq(&q, &structural[i]), "bad density witness");
                extended += 1;
            }
        }

        // Projection: restrict(p) ∥ r ⇒ p ∥ r whenever crank(r, H) < β.
        let beta_range = 1..forcing.template.alpha();
        let mut projection_pairs = 0usize;
        for h in &hs {
            let cranks: Vec<usize> = structural.iter().map(|r| forcing.crank(r, h)).collect();
            for beta in beta_range.clone() {
                let low: Vec<usize> = (0..conds.len()).filter(|&k| cranks[k] < beta).collect();
                for (i, p) in structural.iter().enumerate() {
                    let q = forcing.restrict(p, h, beta);
                    ensure!(forcing.is_condition(&q).is_ok(), "restriction is not a condition");
                    let qbits = index[&lab.bits_of(&q).ok_or("restriction leaves the lab")?];
                    for &k in &low {
                        if conf[qbits].disjoint(&conds[k]) {
                            ensure!(conf[i].disjoint(&conds[k]), "projection fails");
                        }
                        projection_pairs += 1;
                    }
                }
            }
        }
        summary.push(format!(
            "|X|={} |A|={}: {} conditions, {} compatible pairs, {} density witnesses, {} projection pairs",
            npoints,
            forcing.a.len(),
            conds.len(),
            compatible_pairs,
            extended,
            projection_pairs
        ));
    }
    Ok(summary.join("; "))
}

fn generic_semantics(seed: u64) -> Outcome {
    let mut covered = 0usize;
    for run in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(run));
        let words: &[&str] = if run % 2 == 0 { &["00", "01"] } else { &["00", "01", "12"] };
        let space = FiniteSpace::new(3, 2, words.iter().map(|w| w.parse().expect("digits")).collect()).map_err(|e| e.to_string())?;
        let mut a = space.empty_set();
        let mut b = space.empty_set();
        for x in 0..space.len() {
            match rng.gen_range(0..3) {
                0 => a.insert(x),
                1 => b.insert(x),
                _ => {}
            }
        }
        let template = Template::new(2, 3).map_err(|e| e.to_string())?;
        let forcing = Forcing::new(template, space, a, b, usize::MAX).map_err(|e| e.to_string())?;
        let top = forcing.template.root();
        let list = full_dense_list(&forcing, top);
        let state = build_generic(&forcing, &list, rng.gen()).map_err(|e| format!("run {}: {}", run, e))?;
        for w in state.chain.windows(2) {
            ensure!(forcing.leq(&w[1], &w[0]), "run {}: chain is not decreasing", run);
        }
        let last = state.chain.last().expect("nonempty chain");
        ensure!(forcing.is_condition(last).is_ok(), "run {}: final condition invalid", run);
        for t in forcing.template.subtree(top) {
            if forcing.template.is_leaf(t) {
                continue;
            }
            let g = interpret_generic(&forcing, &state.f_g, t).map_err(|e| e.to_string())?;
            for x in 0..forcing.space.len() {
                ensure!(
                    g.contains(x) == state.r_g.contains(&(t, x)),
                    "run {}: membership of {} in G_{} disagrees with R_G",
                    run,
                    forcing.space.point(x),
                    forcing.template.name(t)
                );
                covered += 1;
            }
        }
        let g_root = interpret_generic(&forcing, &state.f_g, top).map_err(|e| e.to_string())?;
        ensure!(forcing.a.is_subset(&g_root), "run {}: A not inside G_root", run);
        ensure!(g_root.intersection(&forcing.b).map_err(|e| e.to_string())?.is_empty(), "run {}: G_root meets B", run);
    }
    Ok(format!("50 runs, {} (node, point) pairs covered", covered))
}
