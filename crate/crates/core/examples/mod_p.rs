//! Homology with Z_p coefficients next to the integral groups, which the
//! universal coefficient theorem ties together.

use qhk::chain::{ChainComplex, Coefficients, Theory};
use qhk::quandle::corpus;

fn main() {
    let q = corpus::qs6();
    let c = ChainComplex::new(&q, Theory::Quandle).unwrap();
    let integral = c.homology_up_to(3).unwrap();
    for p in [2u32, 3, 5] {
        let dims: Vec<usize> = c.sweep(3, Coefficients::Prime(p)).unwrap().iter().map(|(g, _)| g.rank).collect();
        println!("Z_{p}: dims {dims:?}");
    }
    for (i, g) in integral.iter().enumerate() {
        println!("H_{}^Q(QS(6)) = {g}", i + 1);
    }
}
