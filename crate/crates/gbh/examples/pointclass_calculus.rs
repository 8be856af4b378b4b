//! Queries against the pointclass calculus. Every decided verdict carries a
//! trace of the rules used; undecided ones name the missing assumption.
//!
//! ```bash
//! cargo run --example pointclass_calculus
//! ```

use gbh::calculus::*;
use gbh::ordinals::{parse_ordinal, CofClass};

fn pc(s: &str) -> PointclassDesc {
    s.parse().expect("valid pointclass")
}

fn show(query: &str, v: &Verdict) {
    audit(v).expect("verdicts audit");
    let rules: Vec<&str> = v.trace.iter().map(|s| s.rule_id).collect();
    match &v.missing {
        Some(m) => println!("{:<48} {:?}, missing {}", query, v.answer, m),
        None => println!("{:<48} {:?} via {}", query, v.answer, rules.join(", ")),
    }
}

fn main() {
    let hausdorff = Env::new(
        CardinalContext::regular(),
        SpaceAssumptions::new([SpaceFlag::RegularHausdorffWeightLeKappa]),
        Vec::new(),
    );
    show("Sigma(1,k+) in Sigma(2,k+)", &compare(&pc("Sigma(0,1,k+)"), &pc("Sigma(0,2,k+)"), &hausdorff));

    let bare = Env::new(CardinalContext::regular(), SpaceAssumptions::default(), Vec::new());
    show("Sigma(1,k+) in Sigma(2,k+), no flags", &compare(&pc("Sigma(0,1,k+)"), &pc("Sigma(0,2,k+)"), &bare));
    show("Delta(4,k+) in Sigma(4,k+)", &compare(&pc("Delta(0,4,k+)"), &pc("Sigma(0,4,k+)"), &bare));

    let tall = Env::new(
        CardinalContext::regular(),
        SpaceAssumptions::default(),
        vec![OrderFact::new(Relation::Gt, parse_ordinal("w").unwrap(), Base::KappaPlus)],
    );
    show("Sigma(3,k+) in Delta(3,k+), ord > w", &compare(&pc("Sigma(0,3,k+)"), &pc("Delta(0,3,k+)"), &tall));
    show(
        "Sigma(w+1,k+) closed under < cof(k) meets",
        &closure(&pc("Sigma(0,w+1,k+)"), SetOp::Intersection, Size::Below(CofClass::CofKappa), &bare),
    );
    show(
        "Delta(w,k+) closed under w-unions, ord > w",
        &closure(&pc("Delta(0,w,k+)"), SetOp::Union, Size::Card(CofClass::Omega), &tall),
    );

    let evidence = [Evidence::Equal(pc("Sigma(0,3,k+)"), pc("Pi(0,3,k+)"))];
    show("Sigma(3)=Pi(3) gives ord <= 3", &collapse_criteria(&evidence, Base::KappaPlus, &parse_ordinal("3").unwrap(), &bare));
    show("universal Sigma(4,k+) over Cantor", &universal_exists(&pc("Sigma(0,4,k+)"), ParamSpace::Cantor, &bare));
    show("universal Delta(3,k+) over X", &universal_exists(&pc("Delta(0,3,k+)"), ParamSpace::SpaceItself, &bare));
}
