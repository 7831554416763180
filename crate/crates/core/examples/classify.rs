//! Builds a few quandles from constructors and prints their classification.

use qhk::quandle::{
    aq_profile, inner_group, is_connected, is_quasigroup, make_alexander, make_conjugation_class, make_dihedral,
    make_trivial, orbits, QuandleTable,
};

fn main() {
    let corpus: Vec<(&str, QuandleTable)> = vec![
        ("T_3", make_trivial(3).unwrap()),
        ("R_5", make_dihedral(5).unwrap()),
        ("R_6", make_dihedral(6).unwrap()),
        ("Alexander(8, 3)", make_alexander(8, 3).unwrap()),
        ("QS(6)", make_conjugation_class(4, &[4]).unwrap()),
        ("Q(15,2)", make_conjugation_class(5, &[2, 2, 1]).unwrap()),
    ];
    for (name, q) in &corpus {
        let aq = match aq_profile(q) {
            Some(p) => format!("m = {}, trivial stabilizers {}", p.m, p.trivial_stabilizers),
            None => "not m-AQ".to_string(),
        };
        println!(
            "{name:>16}: |X| = {:2}, orbits {}, connected {:5}, quasigroup {:5}, |Inn| = {:3}, {aq}",
            q.size(),
            orbits(q).count(),
            is_connected(q),
            is_quasigroup(q),
            inner_group(q).unwrap().order,
        );
    }
}
