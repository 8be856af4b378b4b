use std::collections::BTreeSet;

use gbh::spacelab::*;
use proptest::prelude::*;

fn all_words(b: u8, n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out.iter().flat_map(|w| (0..b).map(move |c| format!("{}{}", w, c))).collect();
    }
    out
}

/// A space together with its points as plain strings.
fn space() -> impl Strategy<Value = (FiniteSpace, Vec<String>)> {
    (2u8..4, 1usize..4)
        .prop_flat_map(|(b, d)| {
            let n = all_words(b, d).len();
            (Just(b), Just(d), proptest::collection::vec(any::<bool>(), n))
        })
        .prop_filter_map("nonempty", |(b, d, keep)| {
            let pts: Vec<String> =
                all_words(b, d).into_iter().zip(keep).filter(|(_, k)| *k).map(|(w, _)| w).collect();
            if pts.is_empty() {
                return None;
            }
            let stems = pts.iter().map(|w| w.parse().unwrap()).collect();
            Some((FiniteSpace::new(b, d, stems).unwrap(), pts))
        })
}

fn words(space: &FiniteSpace, s: &PointSet) -> BTreeSet<String> {
    space.words_of(s).into_iter().collect()
}

fn subset(space: &FiniteSpace, bits: &[bool]) -> PointSet {
    space.set_from_indices((0..space.len()).filter(|&i| bits[i % bits.len()]))
}

proptest! {
    #[test]
    fn basic_sets_are_prefix_cones((x, pts) in space(), seed in 0usize..1000) {
        let stems: Vec<String> = (0..=x.d()).flat_map(|n| all_words(x.b(), n)).collect();
        let s = &stems[seed % stems.len()];
        let want: BTreeSet<String> = pts.iter().filter(|w| w.starts_with(s.as_str())).cloned().collect();
        let got = x.basic(&s.parse().unwrap()).unwrap();
        prop_assert_eq!(words(&x, &got), want);
        for c in 0..x.b() {
            let t = format!("{}{}", s, c);
            if t.len() <= x.d() {
                let sub = x.basic(&t.parse().unwrap()).unwrap();
                prop_assert!(sub.is_subset(&got));
            }
        }
    }

    #[test]
    fn set_operations_match_string_sets((x, _) in space(), a in proptest::collection::vec(any::<bool>(), 1..30), b in proptest::collection::vec(any::<bool>(), 1..30)) {
        let (p, q) = (subset(&x, &a), subset(&x, &b));
        let (wp, wq) = (words(&x, &p), words(&x, &q));
        let all = words(&x, &x.whole());
        prop_assert_eq!(words(&x, &p.union(&q).unwrap()), wp.union(&wq).cloned().collect::<BTreeSet<_>>());
        prop_assert_eq!(words(&x, &p.intersection(&q).unwrap()), wp.intersection(&wq).cloned().collect::<BTreeSet<_>>());
        prop_assert_eq!(words(&x, &p.complement()), all.difference(&wp).cloned().collect::<BTreeSet<_>>());
        let expr = SetExpr::Union(vec![
            SetExpr::complement(SetExpr::Set(p.clone())),
            SetExpr::Intersection(vec![SetExpr::Set(p.clone()), SetExpr::Set(q.clone())]),
        ]);
        let want: BTreeSet<String> = all.iter().filter(|w| !wp.contains(*w) || wq.contains(*w)).cloned().collect();
        prop_assert_eq!(words(&x, &set_algebra_oracle(&x, &expr).unwrap()), want);
    }

    #[test]
    fn embedding_separates_exactly_when_rows_differ((x, pts) in space(), picks in proptest::collection::vec(0usize..64, 0..5)) {
        let stems: Vec<String> = (1..=x.d()).flat_map(|n| all_words(x.b(), n)).collect();
        let basis: Vec<PointSet> = picks.iter().map(|&i| x.basic(&stems[i % stems.len()].parse().unwrap()).unwrap()).collect();
        let rows: Vec<Vec<bool>> = pts
            .iter()
            .map(|w| picks.iter().map(|&i| w.starts_with(stems[i % stems.len()].as_str())).collect())
            .collect();
        let distinct = rows.iter().collect::<BTreeSet<_>>().len() == rows.len();
        match embed_into_cantor(&x, &basis) {
            Ok(got) => {
                prop_assert!(distinct);
                prop_assert_eq!(&got, &rows);
                let fixed: Vec<(usize, bool)> = got[0].iter().copied().enumerate().collect();
                let cyl = set_algebra_oracle(&x, &cylinder_preimage(&basis, &fixed)).unwrap();
                prop_assert_eq!(x.words_of(&cyl), vec![pts[0].clone()]);
            }
            Err(SpaceError::NotT0(..)) => prop_assert!(!distinct),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn level_one_sections_are_basis_unions((x, _) in space(), picks in proptest::collection::vec(0usize..64, 1..5)) {
        let stems: Vec<String> = (0..=x.d()).flat_map(|n| all_words(x.b(), n)).collect();
        let basis: Vec<PointSet> = picks.iter().map(|&i| x.basic(&stems[i % stems.len()].parse().unwrap()).unwrap()).collect();
        let u = build_universal(1, &x, &basis, 0).unwrap();
        prop_assert_eq!(u.rows(), 1 << basis.len());
        for y in 0..u.rows() {
            let mut want = BTreeSet::new();
            for (i, b) in basis.iter().enumerate() {
                if (y >> i) & 1 == 1 {
                    want.extend(words(&x, b));
                }
            }
            prop_assert_eq!(words(&x, u.section_by_code(y)), want);
        }
    }

    #[test]
    fn level_two_sections_are_unions_of_complements((x, _) in space(), picks in proptest::collection::vec(0usize..64, 1..4), m in 1usize..3) {
        let stems: Vec<String> = (0..=x.d()).flat_map(|n| all_words(x.b(), n)).collect();
        let basis: Vec<PointSet> = picks.iter().map(|&i| x.basic(&stems[i % stems.len()].parse().unwrap()).unwrap()).collect();
        let l = basis.len();
        let u1 = build_universal(1, &x, &basis, 0).unwrap();
        let u2 = build_universal(2, &x, &basis, m).unwrap();
        prop_assert_eq!(u2.param_len(), m * l);
        for y in 0..u2.rows() {
            let bits: Vec<bool> = (0..m * l).map(|k| (y >> k) & 1 == 1).collect();
            let mut want = BTreeSet::new();
            for delta in 0..m {
                let row: Vec<bool> = (0..l).map(|i| bits[delta * l + i]).collect();
                want.extend(words(&x, &u1.section(&row).unwrap().complement()));
            }
            prop_assert_eq!(words(&x, u2.section(&bits).unwrap()), want);
        }
    }

    #[test]
    fn pairing_is_a_bijection(m in 1usize..12, l in 1usize..12) {
        let mut seen = BTreeSet::new();
        for delta in 0..m {
            for i in 0..l {
                let n = pair(delta, i, l);
                prop_assert!(n < m * l);
                prop_assert_eq!(unpair(n, l), (delta, i));
                seen.insert(n);
            }
        }
        prop_assert_eq!(seen.len(), m * l);
    }
}

#[test]
fn json_round_trip_and_errors() {
    let x = FiniteSpace::from_json(r#"{"b":2,"d":2,"points":["00","01","11"]}"#).unwrap();
    assert_eq!(FiniteSpace::from_json(&x.to_json()).unwrap(), x);
    assert!(matches!(FiniteSpace::from_json(r#"{"b":2,"d":2,"points":["0"]}"#), Err(SpaceError::BadPoint(_))));
    assert!(FiniteSpace::from_json(r#"{"b":2,"d":2,"points":["02"]}"#).is_err());
    let y = FiniteSpace::full(2, 2).unwrap();
    assert_eq!(x.whole().union(&y.whole()), Err(SpaceError::SpaceMismatch));
}
