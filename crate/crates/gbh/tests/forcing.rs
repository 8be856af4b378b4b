use std::collections::{BTreeMap, BTreeSet};

use gbh::forcinglab::*;
use gbh::spacelab::*;
use proptest::prelude::*;

const POINTS: [&str; 3] = ["00", "01", "12"];
const LEAVES: [&str; 9] = ["00", "01", "02", "10", "11", "12", "20", "21", "22"];
const INTERNAL: [&str; 4] = ["", "0", "1", "2"];
const STEMS: [&str; 13] = ["", "0", "1", "2", "00", "01", "02", "10", "11", "12", "20", "21", "22"];

/// A condition written with node and point names.
#[derive(Debug, Clone, Default)]
struct Raw {
    f: BTreeMap<&'static str, &'static str>,
    r: BTreeSet<(&'static str, &'static str)>,
}

impl Raw {
    fn json(&self) -> String {
        let f: BTreeMap<&str, &str> = self.f.clone();
        let r: Vec<[&str; 2]> = self.r.iter().map(|&(t, x)| [t, x]).collect();
        serde_json::json!({ "f": f, "R": r }).to_string()
    }

    fn union(&self, o: &Raw) -> Option<Raw> {
        let mut out = self.clone();
        for (k, v) in &o.f {
            if *out.f.entry(k).or_insert(v) != *v {
                return None;
            }
        }
        out.r.extend(o.r.iter().copied());
        Some(out)
    }

    fn size(&self) -> usize {
        self.f.len() + self.r.len()
    }

    /// Clauses (c) to (e) read off the definition.
    fn logical(&self, a: &[&str], b: &[&str]) -> bool {
        self.r.iter().all(|&(t, x)| {
            let kids = (0..3).map(|c| format!("{}{}", t, c));
            let c_ok = kids.into_iter().all(|c| {
                !self.r.contains(&(c.as_str(), x)) && !self.f.get(c.as_str()).is_some_and(|s| x.starts_with(s))
            });
            let d_ok = !(t.len() == 1 && a.contains(&x));
            let e_ok = !(t.is_empty() && b.contains(&x));
            c_ok && d_ok && e_ok
        })
    }
}

fn raw() -> impl Strategy<Value = Raw> {
    let label = (0..LEAVES.len(), 0..STEMS.len()).prop_map(|(l, s)| (LEAVES[l], STEMS[s]));
    let promise = (0..INTERNAL.len(), 0..POINTS.len()).prop_map(|(t, x)| (INTERNAL[t], POINTS[x]));
    (proptest::collection::vec(label, 0..3), proptest::collection::btree_set(promise, 0..4))
        .prop_map(|(f, r)| Raw { f: f.into_iter().collect(), r })
}

fn params() -> impl Strategy<Value = (Vec<&'static str>, Vec<&'static str>)> {
    proptest::collection::vec(0u8..3, 3).prop_map(|side| {
        let pick = |k| POINTS.iter().zip(&side).filter(|(_, s)| **s == k).map(|(p, _)| *p).collect();
        (pick(0), pick(1))
    })
}

fn forcing(a: &[&str], b: &[&str], s_max: usize) -> Forcing {
    let space = FiniteSpace::new(3, 2, POINTS.iter().map(|w| w.parse().unwrap()).collect()).unwrap();
    let a = space.set_from_words(a).unwrap();
    let b = space.set_from_words(b).unwrap();
    Forcing::new(Template::new(2, 3).unwrap(), space, a, b, s_max).unwrap()
}

fn cond(f: &Forcing, r: &Raw) -> Condition {
    f.condition_from_json(&r.json()).unwrap()
}

#[test]
fn rejects_overlapping_parameters() {
    let space = FiniteSpace::new(3, 2, vec!["00".parse().unwrap()]).unwrap();
    let a = space.whole();
    let t = Template::new(2, 3).unwrap();
    assert!(matches!(Forcing::new(t, space, a.clone(), a, 2), Err(ForcingError::NotDisjoint)));
    assert!(Template::new(1, 3).is_err());
    assert!(Template::new(2, 11).is_err());
}

#[test]
fn condition_json_errors() {
    let f = forcing(&[], &[], 4);
    assert!(f.condition_from_json(r#"{"f":{"0":"1"}}"#).is_err() || f.is_condition(&f.condition_from_json(r#"{"f":{"0":"1"}}"#).unwrap()).is_err());
    assert!(f.condition_from_json(r#"{"R":[["","22"]]}"#).is_err());
    assert!(f.condition_from_json("[").is_err());
}

proptest! {
    #[test]
    fn is_condition_matches_definition(p in raw(), (a, b) in params(), s_max in 0usize..6) {
        let f = forcing(&a, &b, s_max);
        let want = p.logical(&a, &b) && p.size() <= s_max;
        let got = f.is_condition(&cond(&f, &p));
        prop_assert_eq!(got.is_ok(), want, "{:?}", got);
        if p.logical(&a, &b) && p.size() > s_max {
            prop_assert_eq!(got.unwrap_err().clause, Clause::Budget);
        }
    }

    #[test]
    fn meet_is_the_union_when_defined(p in raw(), q in raw(), (a, b) in params()) {
        let f = forcing(&a, &b, 4);
        prop_assume!(p.logical(&a, &b) && q.logical(&a, &b) && p.size() <= 4 && q.size() <= 4);
        let (cp, cq) = (cond(&f, &p), cond(&f, &q));
        let union = p.union(&q).filter(|u| u.logical(&a, &b));
        prop_assert_eq!(f.compatible(&cp, &cq), union.is_some());
        prop_assert_eq!(f.compatible(&cp, &cq), f.compatible(&cq, &cp));
        match (f.meet(&cp, &cq), union) {
            (Ok(m), Some(u)) => {
                prop_assert!(u.size() <= 4);
                prop_assert_eq!(&m, &cond(&f, &u));
                prop_assert!(f.leq(&m, &cp) && f.leq(&m, &cq));
                prop_assert_eq!(f.meet(&cq, &cp).unwrap(), m);
            }
            (Err(MeetError::BudgetExceeded(n)), Some(u)) => prop_assert!(n == u.size() && n > 4),
            (Err(MeetError::Incompatible(_)), None) => {}
            (got, want) => prop_assert!(false, "{:?} vs {:?}", got, want),
        }
    }

    #[test]
    fn order_is_a_partial_order(p in raw(), q in raw(), r in raw()) {
        let f = forcing(&[], &[], usize::MAX);
        let (cp, cq, cr) = (cond(&f, &p), cond(&f, &q), cond(&f, &r));
        prop_assert!(f.leq(&cp, &cp));
        prop_assert!(f.leq(&cp, &Condition::one()));
        if f.leq(&cp, &cq) && f.leq(&cq, &cp) {
            prop_assert_eq!(&cp, &cq);
        }
        if f.leq(&cp, &cq) && f.leq(&cq, &cr) {
            prop_assert!(f.leq(&cp, &cr));
        }
    }

    #[test]
    fn crank_and_restriction(p in raw(), keep in proptest::collection::vec(any::<bool>(), 3), beta in 0usize..3) {
        let f = forcing(&[], &[], usize::MAX);
        prop_assume!(p.logical(&[], &[]));
        let cp = cond(&f, &p);
        let h = f.space.set_from_indices((0..3).filter(|&i| keep[i]));
        let want = p.r.iter().filter(|(_, x)| !keep[POINTS.iter().position(|w| w == x).unwrap()])
            .map(|(t, _)| 2 - t.len()).max().unwrap_or(0);
        prop_assert_eq!(f.crank(&cp, &h), want);
        let q = f.restrict(&cp, &h, beta);
        prop_assert!(f.is_condition(&q).is_ok());
        prop_assert!(f.leq(&cp, &q));
        prop_assert!(f.crank(&q, &h) <= beta);
        prop_assert_eq!(f.restrict(&cp, &h, 2), cp.clone());
        prop_assert_eq!(f.restrict(&cp, &f.space.whole(), 0), cp);
    }

    #[test]
    fn linked_reduction_determines_compatibility(p in raw(), q in raw()) {
        let f = forcing(&[], &[], usize::MAX);
        prop_assume!(p.logical(&[], &[]) && q.logical(&[], &[]));
        let (cp, cq) = (cond(&f, &p), cond(&f, &q));
        let (fp, gp) = f.linked_reduction(&cp);
        prop_assert_eq!(&fp, &cp.f);
        prop_assert_eq!(gp.values().map(|m| m.count_ones() as usize).sum::<usize>(), cp.r.len());
        if f.linked_reduction(&cq) == (fp, gp) {
            prop_assert!(f.compatible(&cp, &cq));
        }
    }

    #[test]
    fn generic_filter_separates_parameters((a, b) in params(), seed in any::<u64>()) {
        let f = forcing(&a, &b, usize::MAX);
        let root = f.template.root();
        let run = build_generic(&f, &full_dense_list(&f, root), seed).unwrap();
        for w in run.chain.windows(2) {
            prop_assert!(f.leq(&w[1], &w[0]));
        }
        prop_assert!(f.is_condition(run.chain.last().unwrap()).is_ok());
        for t in f.template.internal() {
            let g = interpret_generic(&f, &run.f_g, t).unwrap();
            for x in 0..3 {
                prop_assert_eq!(g.contains(x), run.r_g.contains(&(t, x)));
            }
        }
        let g = interpret_generic(&f, &run.f_g, root).unwrap();
        prop_assert!(f.a.is_subset(&g));
        prop_assert!(g.intersection(&f.b).unwrap().is_empty());
    }
}

#[test]
fn projection_holds_on_a_small_lab() {
    let f = forcing(&["00"], &["12"], 2);
    let lab = Lab::new(&f).unwrap();
    let mut checked = 0;
    for (i, c) in lab.conditions.iter().enumerate().step_by(211) {
        let p = lab.to_condition(c);
        for mask in 0..8usize {
            let h = f.space.set_from_indices((0..3).filter(|&x| (mask >> x) & 1 == 1));
            for beta in 1..=2 {
                assert!(projection_check(&f, &lab, &p, &h, beta), "condition {} H {} beta {}", i, mask, beta);
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn lab_enumeration_is_exactly_the_conditions() {
    let f = forcing(&["00"], &["12"], 2);
    let lab = Lab::new(&f).unwrap();
    let listed: BTreeSet<Condition> = lab.conditions.iter().map(|c| lab.to_condition(c)).collect();
    assert_eq!(listed.len(), lab.conditions.len());
    let mut count = 0;
    let atoms: Vec<Raw> = LEAVES
        .iter()
        .flat_map(|&l| STEMS.iter().map(move |&s| Raw { f: [(l, s)].into(), r: BTreeSet::new() }))
        .chain(INTERNAL.iter().flat_map(|&t| POINTS.iter().map(move |&x| Raw { f: BTreeMap::new(), r: [(t, x)].into() })))
        .collect();
    let mut consider = |r: &Raw| {
        if r.logical(&["00"], &["12"]) {
            count += 1;
            assert!(listed.contains(&cond(&f, r)), "{}", r.json());
        }
    };
    consider(&Raw::default());
    for i in 0..atoms.len() {
        consider(&atoms[i]);
        for j in i + 1..atoms.len() {
            if let Some(u) = atoms[i].union(&atoms[j]).filter(|u| u.size() == 2) {
                consider(&u);
            }
        }
    }
    assert_eq!(count, listed.len());
}
