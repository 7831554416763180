//! Extends quasigroup quandles over trivial quandles and checks the
//! resulting m-AQ parameter against (n - 1)|X| + 1.

use qhk::extension::{extend, quasigroup_by_trivial_cocycle};
use qhk::quandle::{are_isomorphic, aq_profile, corpus, is_connected, make_dihedral, orbits};

fn main() {
    for (p, n) in [(3, 2), (5, 3), (7, 2)] {
        let x = make_dihedral(p).unwrap();
        let y = extend(&quasigroup_by_trivial_cocycle(&x, n).unwrap()).unwrap();
        let profile = aq_profile(&y).unwrap();
        println!(
            "R_{p} over T_{n}: |Y| = {}, m = {} (expected {}), orbits {}, connected {}",
            y.size(),
            profile.m,
            (n - 1) * p + 1,
            orbits(&y).count(),
            is_connected(&y)
        );
    }
    let y = extend(&quasigroup_by_trivial_cocycle(&make_dihedral(3).unwrap(), 2).unwrap()).unwrap();
    println!("R_3 over T_2 matches the bundled table: {}", are_isomorphic(&y, &corpus::r3_x_t2()).unwrap());
}
