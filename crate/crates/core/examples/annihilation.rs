//! Runs the full annihilation pipeline: identities, then homology, then
//! divisibility of every invariant factor by N = m lcm(|X|, |X| - m).

use qhk::homotopy::verify_annihilation_pipeline;
use qhk::quandle::{aq_profile, corpus, make_conjugation_class};

fn main() {
    let corpus = [("QS(6)", corpus::qs6(), 3), ("Q(12,10)", corpus::q12_10(), 2), (
        "Q(15,2)",
        make_conjugation_class(5, &[2, 2, 1]).unwrap(),
        3,
    )];
    for (name, q, n_max) in corpus {
        let p = aq_profile(&q).unwrap();
        let r = verify_annihilation_pipeline(&q, &p, n_max).unwrap();
        println!("{name}: m = {}, N = {:?}, passed {}", r.m, r.bound.value(), r.passed());
        for d in &r.degrees {
            println!("  H_{}^{} = {}", d.degree, d.theory, d.group);
        }
    }
}
