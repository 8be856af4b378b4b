use gbh::ordinals::*;
use proptest::prelude::*;

/// `ω²·a + ω·b + c`, compared and added as plain triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Triple(u64, u64, u64);

impl Triple {
    fn text(self) -> String {
        format!("w^2*{} + w*{} + {}", self.0, self.1, self.2)
    }

    fn ordinal(self) -> Ordinal {
        let mut acc = Ordinal::zero();
        for (exp, c) in [(2, self.0), (1, self.1), (0, self.2)] {
            let term = Ordinal::omega_pow(Ordinal::nat(exp), c);
            acc = ord_add(&acc, &term).unwrap();
        }
        acc
    }

    fn plus(self, o: Triple) -> Triple {
        match o {
            Triple(a, b, c) if a > 0 => Triple(self.0 + a, b, c),
            Triple(0, b, c) if b > 0 => Triple(self.0, self.1 + b, c),
            Triple(_, _, c) => Triple(self.0, self.1, self.2 + c),
        }
    }
}

fn triple() -> impl Strategy<Value = Triple> {
    (0u64..5, 0u64..5, 0u64..9).prop_map(|(a, b, c)| Triple(a, b, c))
}

fn lambda() -> impl Strategy<Value = Ordinal> {
    (prop_oneof![Just("omega"), Just("cofk"), Just("oltk"), Just("kappa")], 0u64..9)
        .prop_map(|(c, n)| parse_ordinal(&format!("L({})+{}", c, n)).unwrap())
}

fn ord(s: &str) -> Ordinal {
    parse_ordinal(s).unwrap()
}

#[test]
fn documented_values() {
    assert_eq!(ord_add(&ord("w"), &ord("1")).unwrap().to_string(), "w+1");
    assert_eq!(ord_add(&ord("1"), &ord("w")).unwrap().to_string(), "w");
    assert_eq!(ord_add(&ord("w*2+3"), &ord("w+1")).unwrap().to_string(), "w*3+1");
    assert_eq!(ord_double(&ord("w+3")), ord("w+6"));
    assert_eq!(ord_double(&ord("5")), ord("10"));
    assert_eq!(ord_double(&ord("w")), ord("w"));
    assert_eq!(ord_half(&ord("w+4")).unwrap(), ord("w+2"));
    assert_eq!(ord_half(&ord("6")).unwrap(), ord("3"));
    assert_eq!(ord_half(&ord("w")).unwrap(), ord("w"));
    assert!(matches!(ord_half(&ord("w+3")), Err(OrdinalError::OddOrdinal(_))));
    assert_eq!(ord_cof(&ord("w+1")), CofClass::Finite);
    assert_eq!(ord_cof(&ord("w*2")), CofClass::Omega);
    assert_eq!(ord_cof(&ord("L(cofk)")), CofClass::CofKappa);
    assert_eq!(ord_cmp(&ord("w"), &ord("w+1")), OrdCmp::Lt);
    assert_eq!(ord_cmp(&ord("L(omega)+1"), &ord("w^2")), OrdCmp::Gt);
    assert_eq!(ord_cmp(&ord("L(omega)"), &ord("L(cofk)")), OrdCmp::Incomparable);
    assert!(matches!(ord_add(&ord("w"), &ord("L(omega)")), Err(OrdinalError::UnsupportedSymbolic(_))));
    assert_eq!(ord_add(&ord("3"), &ord("L(omega)+1")).unwrap(), ord("L(omega)+1"));
}

#[test]
fn parse_errors_carry_columns() {
    match parse_ordinal("w + x") {
        Err(OrdinalError::Parse { column, .. }) => assert_eq!(column, 5),
        other => panic!("{:?}", other),
    }
    assert!(parse_ordinal("L(foo)").is_err());
    assert!(parse_ordinal("w^L(omega)").is_err());
}

proptest! {
    #[test]
    fn cmp_matches_triples(a in triple(), b in triple()) {
        let (x, y) = (a.ordinal(), b.ordinal());
        prop_assert_eq!(ord_cmp(&x, &y).ordering(), Some(a.cmp(&b)));
    }

    #[test]
    fn add_matches_triples(a in triple(), b in triple()) {
        let sum = ord_add(&a.ordinal(), &b.ordinal()).unwrap();
        prop_assert!(sum.is_normal());
        prop_assert_eq!(sum, a.plus(b).ordinal());
    }

    #[test]
    fn add_is_associative(a in triple(), b in triple(), c in triple()) {
        let (x, y, z) = (a.ordinal(), b.ordinal(), c.ordinal());
        let left = ord_add(&ord_add(&x, &y).unwrap(), &z).unwrap();
        let right = ord_add(&x, &ord_add(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(ord_add(&x, &Ordinal::zero()).unwrap(), x.clone());
        prop_assert_eq!(ord_add(&Ordinal::zero(), &x).unwrap(), x);
    }

    #[test]
    fn text_round_trips(a in triple(), l in lambda()) {
        let x = parse_ordinal(&a.text()).unwrap();
        prop_assert_eq!(&x, &a.ordinal());
        prop_assert_eq!(parse_ordinal(&x.to_string()).unwrap(), x);
        prop_assert_eq!(parse_ordinal(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn halving_and_doubling(a in triple(), l in lambda()) {
        for x in [a.ordinal(), l] {
            prop_assert_eq!(ord_half(&ord_double(&x)).unwrap(), x.clone());
            prop_assert!(ord_double(&x).is_normal());
            prop_assert_ne!(x.succ().is_even(), x.is_even());
            if x.is_even() {
                prop_assert_eq!(ord_double(&ord_half(&x).unwrap()), x.clone());
            }
        }
    }

    #[test]
    fn limit_atoms_sit_above_cnf(a in triple(), l in lambda()) {
        prop_assert_eq!(ord_cmp(&l, &a.ordinal()), OrdCmp::Gt);
        prop_assert_eq!(ord_cmp(&a.ordinal(), &l), OrdCmp::Lt);
    }
}
