//! Runs acceptance criteria by number, or all of them.
//!
//! ```bash
//! cargo run --release --example acceptance -- 1 3 5
//! ```

fn main() {
    let ids: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let reports = if ids.is_empty() {
        gbh::verify::run_all(7)
    } else {
        ids.iter().filter_map(|&id| gbh::verify::run(id, 7)).collect()
    };
    for r in &reports {
        println!("{}", r.line());
    }
}
