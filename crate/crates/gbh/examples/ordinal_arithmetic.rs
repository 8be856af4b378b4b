//! Ordinal arithmetic in Cantor normal form, with symbolic limit atoms.
//!
//! ```bash
//! cargo run --example ordinal_arithmetic
//! ```

use gbh::ordinals::{ord_add, ord_cmp, ord_cof, ord_double, ord_half, parse_ordinal, Ordinal};

fn ord(s: &str) -> Ordinal {
    parse_ordinal(s).expect("valid ordinal")
}

fn main() {
    for (a, b) in [("w", "1"), ("1", "w"), ("w*2+3", "w+1"), ("3", "L(omega)+1")] {
        let sum = ord_add(&ord(a), &ord(b)).expect("supported sum");
        println!("{} + {} = {}", a, b, sum);
    }

    for a in ["5", "w+3", "w^2*2+w+1", "L(cofk)+2"] {
        let x = ord(a);
        let d = ord_double(&x);
        println!("2*({}) = {}  half back = {}  cof = {:?}", x, d, ord_half(&d).expect("even"), ord_cof(&x));
    }

    match ord_half(&ord("w+3")) {
        Ok(h) => println!("w+3 halves to {}", h),
        Err(e) => println!("w+3: {}", e),
    }

    for (a, b) in [("w", "w+1"), ("L(omega)+1", "w^2"), ("L(omega)", "L(cofk)")] {
        println!("cmp({}, {}) = {:?}", a, b, ord_cmp(&ord(a), &ord(b)));
    }
}
