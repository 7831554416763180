//! Smith normal form of a small sparse integer matrix.

use qhk::chain::{smith_form, SparseIntMatrix};

fn main() {
    let m = SparseIntMatrix::from_dense(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let form = smith_form(&m);
    let factors: Vec<String> = form.torsion.iter().map(|d| d.to_string()).collect();
    println!("rank {}, invariant factors > 1: [{}]", form.rank, factors.join(", "));
}
