use gbh::calculus::*;
use gbh::ordinals::*;
use proptest::prelude::*;

fn pc(s: &str) -> PointclassDesc {
    s.parse().unwrap()
}

fn ord(s: &str) -> Ordinal {
    parse_ordinal(s).unwrap()
}

fn env(ctx: CardinalContext, flags: &[SpaceFlag], facts: Vec<OrderFact>) -> Env {
    Env::new(ctx, SpaceAssumptions::new(flags.iter().copied()), facts)
}

fn singular() -> Env {
    env(CardinalContext::singular(CofClass::Omega).unwrap(), &[SpaceFlag::OpensAreCofkUnionsOfClosed], vec![])
}

fn regular() -> Env {
    env(CardinalContext::regular(), &[], vec![])
}

fn cites(v: &Verdict, id: &str) -> bool {
    v.trace.iter().any(|s| s.rule_id == id)
}

fn assert_answer(v: &Verdict, want: Answer) {
    assert_eq!(v.answer, want, "{:?}", v);
    audit(v).unwrap();
}

#[test]
fn normalize_examples() {
    let e = singular();
    assert_eq!(normalize(&pc("Sigma(0,3,k)"), &e.ctx, &e.sa).unwrap(), pc("Sigma(0,2,k+)"));
    assert_eq!(normalize(&pc("Sigma(0,2,k)"), &e.ctx, &e.sa).unwrap(), pc("Delta(0,2,k)"));
    assert_eq!(normalize(&pc("Pi(0,5,k+)"), &e.ctx, &e.sa).unwrap(), pc("Pi(0,5,k+)"));
    assert!(normalize(&pc("Sigma(0,3,k)"), &CardinalContext::regular(), &e.sa).is_err());
}

#[test]
fn dual_examples() {
    assert_eq!(dual(&pc("Sigma(0,2,k+)")), pc("Pi(0,2,k+)"));
    assert_eq!(dual(&pc("Delta(0,3,k+)")), pc("Delta(0,3,k+)"));
    assert_eq!(dual(&dual(&pc("Sigma(0,w,k+)"))), pc("Sigma(0,w,k+)"));
}

#[test]
fn compare_examples() {
    let e = env(CardinalContext::regular(), &[SpaceFlag::RegularHausdorffWeightLeKappa], vec![]);
    let v = compare(&pc("Sigma(0,1,k+)"), &pc("Sigma(0,2,k+)"), &e);
    assert_answer(&v, Answer::Holds);
    assert!(cites(&v, "incl.level_one_regular"), "{:?}", v);

    assert_answer(&compare(&pc("Delta(0,4,k+)"), &pc("Sigma(0,4,k+)"), &regular()), Answer::Holds);

    let e = env(CardinalContext::regular(), &[], vec![OrderFact::new(Relation::Gt, ord("3"), Base::KappaPlus)]);
    let v = compare(&pc("Sigma(0,3,k+)"), &pc("Delta(0,3,k+)"), &e);
    assert_answer(&v, Answer::Fails);
    assert!(cites(&v, "proper.same_level"), "{:?}", v);

    let v = compare(&pc("Sigma(0,1,k+)"), &pc("Sigma(0,2,k+)"), &regular());
    assert_eq!(v.answer, Answer::Unknown);
    assert!(v.missing.is_some());
}

#[test]
fn closure_examples() {
    let v = closure(&pc("Sigma(0,w+1,k+)"), SetOp::Intersection, Size::Below(CofClass::CofKappa), &regular());
    assert_answer(&v, Answer::Holds);

    let gt2 = env(CardinalContext::regular(), &[], vec![OrderFact::new(Relation::Gt, ord("2"), Base::KappaPlus)]);
    assert_answer(&closure(&pc("Pi(0,2,k+)"), SetOp::Complement, Size::Card(CofClass::Finite), &gt2), Answer::Fails);

    let gtw = env(CardinalContext::regular(), &[], vec![OrderFact::new(Relation::Gt, ord("w"), Base::KappaPlus)]);
    let v = closure(&pc("Delta(0,w,k+)"), SetOp::Union, Size::Card(CofClass::Omega), &gtw);
    assert_answer(&v, Answer::Fails);
    assert!(cites(&v, "optimal.regular"));
}

#[test]
fn translate_examples() {
    let e = singular();
    let t = |rel, b: &str, base| translate_order(&OrderFact::new(rel, ord(b), base), &e.ctx, &e.sa).unwrap();
    assert_eq!(t(Relation::Le, "3", Base::KappaPlus), OrderFact::new(Relation::Le, ord("5"), Base::Kappa));
    assert_eq!(t(Relation::Le, "w", Base::KappaPlus), OrderFact::new(Relation::Le, ord("w"), Base::Kappa));
    assert_eq!(t(Relation::Le, "1", Base::Kappa), OrderFact::new(Relation::Le, ord("1"), Base::KappaPlus));
}

#[test]
fn collapse_examples() {
    let v = collapse_criteria(&[Evidence::Equal(pc("Sigma(0,3,k+)"), pc("Pi(0,3,k+)"))], Base::KappaPlus, &ord("3"), &regular());
    assert_answer(&v, Answer::Holds);
    let v = collapse_criteria(&[Evidence::Equal(pc("Sigma(0,2,k)"), pc("Pi(0,2,k)"))], Base::Kappa, &ord("2"), &singular());
    assert_eq!(v.answer, Answer::Unknown);
    assert_eq!(collapse_criteria(&[], Base::KappaPlus, &ord("3"), &regular()).answer, Answer::Unknown);
}

#[test]
fn universal_examples() {
    assert_answer(&universal_exists(&pc("Sigma(0,4,k+)"), ParamSpace::Cantor, &regular()), Answer::Holds);
    let cantor = env(
        CardinalContext::singular(CofClass::Omega).unwrap(),
        &[SpaceFlag::OpensAreCofkUnionsOfClosed, SpaceFlag::HasCantorCopy],
        vec![],
    );
    assert_answer(&universal_exists(&pc("Sigma(0,2,k)"), ParamSpace::Cantor, &cantor), Answer::Fails);
    assert_answer(&universal_exists(&pc("Delta(0,3,k+)"), ParamSpace::SpaceItself, &regular()), Answer::Fails);
}

#[test]
fn function_order_examples() {
    let t = FunctionTarget { hausdorff: true, at_least_two_points: true };
    let f = OrderFact::new(Relation::Eq, ord("5"), Base::KappaPlus);
    let g = function_hierarchy_order(&f, t).unwrap();
    assert!(g.functions && g.bound == Bound::Ord(ord("5")));
    let le = OrderFact { functions: true, ..OrderFact::new(Relation::Le, ord("2"), Base::KappaPlus) };
    assert!(!function_hierarchy_order(&le, t).unwrap().functions);
    let bad = FunctionTarget { hausdorff: true, at_least_two_points: false };
    assert!(matches!(function_hierarchy_order(&f, bad), Err(CalcError::MissingAssumption(_))));
}

#[test]
fn env_json_errors() {
    assert!(Env::from_json(r#"{"kappa":"singular","cof_kappa":"omega"}"#).is_ok());
    assert!(matches!(Env::from_json("{"), Err(CalcError::Parse { .. })));
    assert!(Env::from_json(r#"{"kappa":"singular","cof_kappa":"kappa"}"#).is_err());
    assert!(matches!("Sigma(1,2,k)".parse::<PointclassDesc>(), Err(CalcError::Parse { .. })));
    assert!(matches!("Sigma(0,0,k)".parse::<PointclassDesc>(), Err(CalcError::InvalidLevel(_))));
}

fn level() -> impl Strategy<Value = Ordinal> {
    prop_oneof![
        (1u64..12).prop_map(Ordinal::nat),
        (1u64..4, 0u64..6).prop_map(|(a, n)| ord(&format!("w*{}+{}", a, n))),
        (prop_oneof![Just("omega"), Just("cofk"), Just("oltk")], 0u64..6)
            .prop_map(|(c, n)| ord(&format!("L({})+{}", c, n))),
    ]
}

fn desc() -> impl Strategy<Value = PointclassDesc> {
    (
        prop_oneof![Just(Kind::Sigma), Just(Kind::Pi), Just(Kind::Delta), Just(Kind::Borel)],
        level(),
        prop_oneof![Just(Base::Kappa), Just(Base::KappaPlus)],
    )
        .prop_map(|(k, l, b)| PointclassDesc::new(k, l, b).unwrap())
}

fn any_env() -> impl Strategy<Value = Env> {
    let ctx = prop_oneof![
        Just(CardinalContext::regular()),
        Just(CardinalContext::singular(CofClass::Omega).unwrap()),
        Just(CardinalContext::singular(CofClass::OtherLtKappa).unwrap()),
    ];
    let fact = (
        prop_oneof![Just(Relation::Le), Just(Relation::Gt), Just(Relation::Eq)],
        level(),
        prop_oneof![Just(Base::Kappa), Just(Base::KappaPlus)],
    )
        .prop_map(|(r, l, b)| OrderFact::new(r, l, b));
    (ctx, proptest::collection::vec(any::<bool>(), 8), proptest::collection::vec(fact, 0..3)).prop_map(
        |(ctx, bits, facts)| {
            let flags = SpaceFlag::ALL.into_iter().zip(bits).filter(|(_, b)| *b).map(|(f, _)| f);
            let facts = facts.into_iter().filter(|f| ctx.is_singular() || f.base == Base::KappaPlus).collect();
            Env::new(ctx, SpaceAssumptions::new(flags), facts)
        },
    )
}

proptest! {
    #[test]
    fn dual_is_an_involution(p in desc()) {
        prop_assert_eq!(dual(&dual(&p)), p.clone());
        prop_assert_eq!(p.to_string().parse::<PointclassDesc>().unwrap(), p);
    }

    #[test]
    fn normalize_is_idempotent_and_commutes_with_dual(p in desc()) {
        let e = singular();
        let n = normalize(&p, &e.ctx, &e.sa).unwrap();
        prop_assert_eq!(normalize(&n, &e.ctx, &e.sa).unwrap(), n.clone());
        prop_assert_eq!(normalize(&dual(&p), &e.ctx, &e.sa).unwrap(), dual(&n));
    }

    #[test]
    fn even_levels_halve(a in level(), kind in prop_oneof![Just(Kind::Sigma), Just(Kind::Pi)]) {
        let e = singular();
        let alpha = alpha_of_level(&a);
        let p = PointclassDesc::new(kind, a, Base::Kappa).unwrap();
        let n = normalize(&p, &e.ctx, &e.sa).unwrap();
        if alpha.is_even() {
            prop_assert_eq!(n.base, Base::KappaPlus);
            prop_assert_eq!(alpha_of_level(n.level.as_ref().unwrap()), ord_half(&alpha).unwrap());
        } else {
            prop_assert_eq!(n.kind, Kind::Delta);
        }
    }

    #[test]
    fn translate_round_trips(b in level(), rel in prop_oneof![Just(Relation::Le), Just(Relation::Gt)]) {
        let e = singular();
        let f = OrderFact::new(rel, b.clone(), Base::KappaPlus);
        let g = translate_order(&f, &e.ctx, &e.sa).unwrap();
        prop_assert_eq!(g.base, Base::Kappa);
        prop_assert_eq!(translate_order(&g, &e.ctx, &e.sa).unwrap(), f);
        if b.is_limit() {
            prop_assert_eq!(g.bound, Bound::Ord(b));
        }
    }

    #[test]
    fn every_verdict_audits(p in desc(), q in desc(), e in any_env()) {
        for v in [
            compare(&p, &q, &e),
            closure(&p, SetOp::Union, Size::Card(CofClass::Kappa), &e),
            closure(&p, SetOp::Complement, Size::Card(CofClass::Finite), &e),
            universal_exists(&p, ParamSpace::Cantor, &e),
            universal_exists(&p, ParamSpace::SpaceItself, &e),
        ] {
            prop_assert!(audit(&v).is_ok(), "{:?}", v);
            prop_assert_eq!(v.answer == Answer::Unknown, v.trace.is_empty());
        }
    }

    #[test]
    fn reflexive_and_dual_compare(p in desc(), e in any_env()) {
        prop_assume!(p.base == Base::KappaPlus || e.ctx.is_singular());
        let refl = compare(&p, &p, &e);
        prop_assume!(refl.missing.as_deref() != Some("consistent order facts"));
        prop_assert_eq!(refl.answer, Answer::Holds);
        let a = compare(&p, &dual(&p), &e).answer;
        let b = compare(&dual(&p), &p, &e).answer;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn closure_never_contradicts_collapse(a in level(), e in any_env()) {
        let order = collapse_criteria(&[], Base::KappaPlus, &a, &e);
        for (kind, op) in [(Kind::Sigma, SetOp::Intersection), (Kind::Pi, SetOp::Union)] {
            let p = PointclassDesc::new(kind, a.clone(), Base::KappaPlus).unwrap();
            let c = closure(&p, op, Size::Card(CofClass::Kappa), &e);
            prop_assert!(!(c.answer == Answer::Holds && order.answer == Answer::Fails));
        }
    }
}
