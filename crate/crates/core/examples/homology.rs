//! Integral homology of a quandle in all three theories.
//!
//! `cargo run --release --example homology -- qs6 3`

use qhk::chain::{ChainComplex, Theory};
use qhk::io::parse_builtin;

fn main() {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| "qs6".to_string());
    let max: usize = args.next().map_or(3, |s| s.parse().expect("degree"));
    let q = parse_builtin(&spec).expect("builtin spec");
    for theory in Theory::ALL {
        let groups = ChainComplex::new(&q, theory).unwrap().homology_up_to(max).unwrap();
        for (i, g) in groups.iter().enumerate() {
            println!("H_{}^{theory}({spec}) = {g}", i + 1);
        }
    }
}
