//! Maps between finite trees: order properties, the three equivalent forms
//! of an exists-perfect map into a product tree, body maps and closed images.
//!
//! ```bash
//! cargo run --example tree_embeddings
//! ```

use gbh::treemaps::*;

fn main() -> Result<(), TreeError> {
    let s = FiniteTree::full(Alphabet::Plain(2), 1);
    let t = FiniteTree::full(Alphabet::Plain(2), 2);

    let double = TreeMap::from_fn(s.clone(), t.clone(), |w| w.iter().flat_map(|&c| [c, c]).collect())?;
    println!("doubling: {}", check_order_props(&double));
    for (x, y) in body_map(&double)? {
        println!("  f({}) = {}", s.name(x), t.name(y));
    }
    println!("  closed image: {}", closed_image_check(&double)?);

    let bent = TreeMap::from_fn(s.clone(), t.clone(), |w| match w {
        [] => vec![],
        [0] => vec![1],
        _ => vec![1, 0],
    })?;
    println!("bent: {}", check_order_props(&bent));

    let product = FiniteTree::full(Alphabet::Product(3, 2), 2);
    let mut counts = [0usize; 2];
    for phi in all_maps(&s, &product) {
        if let Ok(e) = check_exists_perfect(&phi) {
            counts[e.value as usize] += 1;
        }
    }
    println!("maps 2^<=1 -> (3x2)^<=2: {} order-preserving, {} exists-perfect", counts[0] + counts[1], counts[1]);

    let n = all_embeddings(&t, &FiniteTree::full(Alphabet::Plain(3), 3)).len();
    println!("order embeddings 2^<=2 -> 3^<=3: {}", n);
    Ok(())
}
