//! The finitized forcing poset: condition clauses, meets, the bounded poset
//! as atom bitsets, and a generic filter built from a dense list.
//!
//! ```bash
//! cargo run --example forcing_generic -- 11
//! ```

use gbh::forcinglab::*;
use gbh::spacelab::FiniteSpace;

fn main() -> Result<(), ForcingError> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let space = FiniteSpace::new(3, 2, ["00", "01", "12"].iter().map(|w| w.parse().unwrap()).collect())?;
    let a = space.set_from_words(&["00"])?;
    let b = space.set_from_words(&["12"])?;
    let f = Forcing::new(Template::new(2, 3)?, space, a, b, 2)?;

    for text in [r#"{}"#, r#"{"R":[["","12"]]}"#, r#"{"R":[["0","00"]]}"#, r#"{"f":{"10":"0"},"R":[["1","01"]]}"#] {
        let p = f.condition_from_json(text)?;
        match f.is_condition(&p) {
            Ok(()) => println!("{:<36} condition", text),
            Err(v) => println!("{:<36} clause {}: {}", text, v.clause, v.detail),
        }
    }

    let p = f.condition_from_json(r#"{"R":[["1","00"]]}"#)?;
    let q = f.condition_from_json(r#"{"f":{"10":"0"}}"#)?;
    println!("meet: {:?}", f.meet(&p, &q));

    let lab = Lab::new(&f)?;
    println!("bounded poset: {} atoms, {} conditions", lab.atoms.len(), lab.conditions.len());

    let mut open = f.clone();
    open.s_max = usize::MAX;
    let root = open.template.root();
    let run = build_generic(&open, &full_dense_list(&open, root), seed)?;
    println!("generic run (seed {}): chain of {}", seed, run.chain.len());
    for t in open.template.internal() {
        let g = interpret_generic(&open, &run.f_g, t)?;
        println!("  G_{:<2} = {:?}", open.template.name(t), open.space.words_of(&g));
    }
    Ok(())
}
