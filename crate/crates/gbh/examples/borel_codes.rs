//! Well-founded code trees, their interpretation and rank, the set
//! combinators, and the canonical Suslin tree whose projection recovers the
//! coded set.
//!
//! ```bash
//! cargo run --example borel_codes
//! ```

use gbh::borelcodes::*;
use gbh::spacelab::FiniteSpace;

fn main() -> Result<(), CodeError> {
    let x = FiniteSpace::full(2, 2)?;
    let all = x.whole();
    let leaf = |s: &str| CodeTree::leaf(s.parse().unwrap());

    let not_zero = CodeTree::node(vec![leaf("0")])?;
    let twice = CodeTree::node(vec![not_zero.clone()])?;
    for (name, c) in [("X - [0]", &not_zero), ("X - (X - [0])", &twice)] {
        println!("{:<16} rank {}  -> {:?}", name, root_rank(c), x.words_of(&interpret(c, &x, &all)?));
    }

    let json = r#"{"nodes":{"":["a","b"],"a":[],"b":[]},"labels":{"a":"0","b":"11"}}"#;
    let parsed = CodeTree::from_json(json)?;
    println!("{} -> {:?}", json, x.words_of(&interpret(&parsed, &x, &all)?));

    let u = code_union(&[leaf("00"), leaf("11")]);
    let i = code_intersection(&[leaf("0"), not_zero.clone()]);
    println!("[00] u [11] -> {:?} (rank {})", x.words_of(&interpret(&u, &x, &all)?), root_rank(&u));
    println!("[0] n (X - [0]) -> {:?}", x.words_of(&interpret(&i, &x, &all)?));

    let tree = canonical_tree(&parsed, &x, &all)?;
    println!(
        "canonical tree: {} nodes, {} branches, projection {:?}",
        tree.nodes.len(),
        tree.branches().count(),
        x.words_of(&project(&tree, &x))
    );
    Ok(())
}
