//! Orders of inner automorphism groups, including the dihedral quandles
//! R_{2k} with k odd, whose inner group is D_k of order 2k.

use qhk::quandle::{corpus, inner_group, make_conjugation_class, make_dihedral};

fn main() {
    println!("|Inn(QS(6))| = {}", inner_group(&corpus::qs6()).unwrap().order);
    println!("|Inn(Q(12,10))| = {}", inner_group(&corpus::q12_10()).unwrap().order);
    println!("|Inn(Q(15,2))| = {}", inner_group(&make_conjugation_class(5, &[2, 2, 1]).unwrap()).unwrap().order);
    for k in [3, 5, 7] {
        println!("|Inn(R_{})| = {}", 2 * k, inner_group(&make_dihedral(2 * k).unwrap()).unwrap().order);
    }
}
