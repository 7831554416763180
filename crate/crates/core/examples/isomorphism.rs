//! Matches the conjugacy class of 4-cycles in S_4 against the bundled QS(6)
//! table and prints the relabelling.

use qhk::quandle::{corpus, find_isomorphism, make_conjugation_class, DEFAULT_SEARCH_BUDGET};

fn main() {
    let built = make_conjugation_class(4, &[4]).unwrap();
    let table = corpus::qs6();
    match find_isomorphism(&built, &table, DEFAULT_SEARCH_BUDGET).unwrap() {
        Some(h) => {
            for (a, b) in h.iter().enumerate() {
                println!("{} -> {}", a + 1, b + 1);
            }
            assert_eq!(built.relabel(&h), table);
        }
        None => println!("not isomorphic"),
    }
}
