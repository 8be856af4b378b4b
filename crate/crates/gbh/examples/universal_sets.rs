//! Finite spaces of words, the indicator embedding into Cantor space, and
//! the level-1 and level-2 universal sets built from a basis.
//!
//! ```bash
//! cargo run --example universal_sets
//! ```

use gbh::spacelab::*;

fn main() -> Result<(), SpaceError> {
    let x = FiniteSpace::full(2, 2)?;
    let basis: Vec<PointSet> = ["0", "01", "10"].iter().map(|s| x.basic(&s.parse().unwrap())).collect::<Result<_, _>>()?;

    match embed_into_cantor(&x, &basis) {
        Ok(rows) => {
            for (i, row) in rows.iter().enumerate() {
                let bits: String = row.iter().map(|&b| if b { '1' } else { '0' }).collect();
                println!("{} -> {}", x.point(i), bits);
            }
        }
        Err(e) => println!("{}", e),
    }
    let coarse = [x.basic(&"0".parse().unwrap())?, x.basic(&"1".parse().unwrap())?];
    println!("basis [0],[1]: {}", embed_into_cantor(&x, &coarse).unwrap_err());

    let u1 = build_universal(1, &x, &basis, 0)?;
    println!("\nlevel 1, {} sections:", u1.rows());
    for y in 0..u1.rows() {
        println!("  y={:03b} {:?}", y, x.words_of(u1.section_by_code(y)));
    }

    let u2 = build_universal(2, &x, &basis[..2], 2)?;
    let distinct: std::collections::BTreeSet<Vec<String>> = u2.sections().iter().map(|s| x.words_of(s)).collect();
    println!("\nlevel 2 over m=2 slices: {} rows, {} distinct sections", u2.rows(), distinct.len());
    println!("pair(1, 2, L=3) = {}, unpair(5, 3) = {:?}", pair(1, 2, 3), unpair(5, 3));
    Ok(())
}
