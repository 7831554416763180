//! Checks the four chain homotopy identities tuple by tuple on QS(6), and
//! shows where the argument breaks on a quandle whose stabilizers are not
//! trivial.

use qhk::homotopy::{diagnose_cancellation, verify_all_identities, HomotopyError};
use qhk::quandle::{aq_profile, corpus};

fn main() {
    let q = corpus::qs6();
    let p = aq_profile(&q).unwrap();
    for r in verify_all_identities(&q, &p, 3).unwrap() {
        println!("{} n={} j={}: {} tuples, max residual {}", r.family, r.degree, r.j, r.tuples_checked, r.max_residual);
    }

    let q = corpus::r3_x_t2();
    let p = aq_profile(&q).unwrap();
    assert_eq!(verify_all_identities(&q, &p, 2).unwrap_err(), HomotopyError::HypothesisFail);
    if let Some(w) = diagnose_cancellation(&q, &p, 2, 1).unwrap() {
        println!("R_3 x T_2: cancellation fails at {:?} with residual {:?}", w.tuple, w.residual);
    }
}
