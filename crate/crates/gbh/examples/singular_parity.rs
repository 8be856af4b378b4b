//! For singular kappa the kappa-hierarchy interleaves with the kappa-plus one:
//! even levels move over at half height, odd levels are self-dual. Order facts
//! translate between the two bases accordingly.
//!
//! ```bash
//! cargo run --example singular_parity
//! ```

use gbh::calculus::*;
use gbh::ordinals::{parse_ordinal, CofClass};

fn main() {
    let env = Env::from_json(r#"{"kappa":"singular","cof_kappa":"omega","space":["opens_are_cofk_unions_of_closed"]}"#)
        .expect("context");
    for level in ["1", "2", "3", "4", "5", "w", "w+1", "w+2", "w*2+1"] {
        let p: PointclassDesc = format!("Sigma(0,{},k)", level).parse().unwrap();
        let n = normalize(&p, &env.ctx, &env.sa).unwrap();
        println!("{:<18} -> {:<18} dual -> {}", p.to_string(), n.to_string(), normalize(&dual(&p), &env.ctx, &env.sa).unwrap());
    }

    println!();
    for bound in ["1", "3", "4", "w", "w+1"] {
        let f = OrderFact::new(Relation::Le, parse_ordinal(bound).unwrap(), Base::KappaPlus);
        let g = translate_order(&f, &env.ctx, &env.sa).unwrap();
        let back = translate_order(&g, &env.ctx, &env.sa).unwrap();
        println!("{:<14} -> {:<14} -> {}", f.to_string(), g.to_string(), back);
    }

    let uncountable = CardinalContext::singular(CofClass::OtherLtKappa).unwrap();
    let n = normalize(&"Pi(0,3,k)".parse().unwrap(), &uncountable, &env.sa).unwrap();
    println!("\nwith cof(kappa) uncountable: Pi(0,3,k) -> {}", n);
}
