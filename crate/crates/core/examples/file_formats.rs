//! Round-trips a table through the text format and exports a boundary matrix
//! in coordinate form.

use qhk::chain::{ChainComplex, Theory};
use qhk::io::{format_matrix, format_table, parse_matrix, parse_table};
use qhk::quandle::make_dihedral;

fn main() {
    let q = make_dihedral(3).unwrap();
    let text = format_table(&q);
    print!("{text}");
    assert_eq!(parse_table(&text).unwrap(), q);

    let d2 = ChainComplex::new(&q, Theory::Quandle).unwrap().boundary(2).unwrap();
    let exported = format_matrix(&d2);
    print!("{exported}");
    assert_eq!(parse_matrix(&exported).unwrap(), d2);
}
