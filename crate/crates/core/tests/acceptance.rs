//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! fails. All comparisons are exact; time budgets are wall-clock on this
//! machine.

mod common;

use std::collections::HashMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{aq_members, corpus, dense_invariants, random_matrix, stabilizer_lemma};
use qhk::chain::{
    check_torsion_annihilated, rank_prediction, smith_invariants, AbelianGroup, ChainComplex, Coefficients,
    SparseIntMatrix, Theory,
};
use qhk::extension::{extend, quasigroup_by_trivial_cocycle};
use qhk::homotopy::{verify_all_identities, verify_annihilation_pipeline, HomotopyError};
use qhk::io::load_table;
use qhk::quandle::{
    are_isomorphic, aq_profile, corpus as tables, inner_group, make_conjugation_class, make_dihedral, QuandleTable,
};
use rand::SeedableRng;

type Groups = HashMap<(String, Theory), Vec<AbelianGroup>>;

struct Suite {
    failures: usize,
    started: Instant,
}

impl Suite {
    fn record(&mut self, id: &str, budget: Option<Duration>, run: impl FnOnce() -> Result<String, String>) {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let over = budget.filter(|b| elapsed > *b);
        let (ok, detail) = match (result, over) {
            (Ok(d), None) => (true, d),
            (Ok(d), Some(b)) => (false, format!("{d}; over the {} s budget", b.as_secs())),
            (Err(e), _) => (false, e),
        };
        if !ok {
            self.failures += 1;
        }
        let budget = budget.map_or(String::new(), |b| format!(", budget {} s", b.as_secs()));
        println!(
            "[{}] {id}: {detail} ({:.1} s{budget})",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(rank: usize, torsion: &[u64]) -> AbelianGroup {
    AbelianGroup::from_cyclic_orders(rank, torsion)
}

fn q15() -> QuandleTable {
    make_conjugation_class(5, &[2, 2, 1]).unwrap()
}

fn table_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tables").join(name)
}

fn sweep(q: &QuandleTable, theory: Theory, max: usize) -> Result<Vec<AbelianGroup>, String> {
    ChainComplex::new(q, theory).and_then(|c| c.homology_up_to(max)).map_err(|e| e.to_string())
}

fn main() {
    let mut suite = Suite { failures: 0, started: Instant::now() };
    let mut groups: Groups = HashMap::new();

    suite.record("qs6-h3q", Some(Duration::from_secs(60)), || {
        let q = load_table(table_file("qs6.qnd")).map_err(|e| e.to_string())?;
        let h = ChainComplex::new(&q, Theory::Quandle)
            .and_then(|c| c.homology(3, Coefficients::Integers))
            .map_err(|e| e.to_string())?;
        ensure(h == group(0, &[24]), || format!("H_3^Q = {h}"))?;
        Ok(format!("H_3^Q(QS(6)) = {h}"))
    });

    suite.record("r3xt2-groups", Some(Duration::from_secs(600)), || {
        let y = extend(&quasigroup_by_trivial_cocycle(&make_dihedral(3).unwrap(), 2).unwrap()).unwrap();
        let file = load_table(table_file("r3xt2.qnd")).map_err(|e| e.to_string())?;
        ensure(are_isomorphic(&y, &file).unwrap(), || "extension is not isomorphic to the table".into())?;
        let rack = sweep(&y, Theory::Rack, 4)?;
        let quandle = sweep(&y, Theory::Quandle, 4)?;
        let expected = [
            (&rack[1], group(4, &[])),
            (&rack[2], group(8, &[3, 3])),
            (&rack[3], group(16, &[3; 8])),
            (&quandle[1], group(2, &[])),
            (&quandle[2], group(2, &[3, 3])),
            (&quandle[3], group(2, &[3; 6])),
        ];
        for (got, want) in &expected {
            ensure(**got == *want, || format!("got {got}, expected {want}"))?;
        }
        Ok(format!("6/6 groups match, e.g. H_4^Q = {}", quandle[3]))
    });

    suite.record("q15-h2q", Some(Duration::from_secs(300)), || {
        let h = sweep(&q15(), Theory::Quandle, 2)?;
        ensure(h[1] == group(0, &[2, 2]), || format!("H_2^Q = {}", h[1]))?;
        Ok(format!("H_2^Q(Q(15,2)) = {}", h[1]))
    });

    suite.record("q15-h3 (stretch)", Some(Duration::from_secs(600)), || {
        let q = q15();
        let hq = sweep(&q, Theory::Quandle, 3)?;
        let hr = sweep(&q, Theory::Rack, 3)?;
        ensure(hq[2] == group(0, &[2, 30]), || format!("H_3^Q = {}", hq[2]))?;
        ensure(hr[2] == group(1, &[2, 2, 2, 30]), || format!("H_3^R = {}", hr[2]))?;
        Ok(format!("H_3^Q = {}, H_3^R = {}", hq[2], hr[2]))
    });

    suite.record("rank-formulas", None, || {
        let mut checked = 0;
        for (name, q) in corpus() {
            for theory in Theory::ALL {
                let h = sweep(&q, theory, 4)?;
                for (i, g) in h.iter().enumerate() {
                    let want = rank_prediction(&q, i + 1, theory);
                    ensure(g.rank == want, || format!("{name} {theory} n={}: rank {} vs {want}", i + 1, g.rank))?;
                    checked += 1;
                }
                groups.insert((name.to_string(), theory), h);
            }
        }
        Ok(format!("{checked} ranks equal the orbit formula"))
    });

    suite.record("inn-orders", None, || {
        let cases = [
            ("QS(6)", tables::qs6(), 24),
            ("Q(12,10)", tables::q12_10(), 216),
            ("Q(15,2)", q15(), 60),
            ("R6", make_dihedral(6).unwrap(), 6),
            ("R10", make_dihedral(10).unwrap(), 10),
        ];
        for (name, q, want) in &cases {
            let got = inner_group(q).map_err(|e| e.to_string())?.order;
            ensure(got == *want, || format!("|Inn({name})| = {got}, expected {want}"))?;
        }
        Ok("24, 216, 60, 6, 10".into())
    });

    suite.record("homotopy-identities", Some(Duration::from_secs(300)), || {
        let mut count = 0;
        for q in [tables::qs6(), tables::q12_10()] {
            let p = aq_profile(&q).ok_or("not m-AQ")?;
            for r in verify_all_identities(&q, &p, 3).map_err(|e| e.to_string())? {
                ensure(r.holds(), || format!("{} n={} j={} residual {}", r.family, r.degree, r.j, r.max_residual))?;
                count += 1;
            }
        }
        let t2 = tables::r3_x_t2();
        let p = aq_profile(&t2).ok_or("not m-AQ")?;
        let refused = verify_all_identities(&t2, &p, 3);
        ensure(refused == Err(HomotopyError::HypothesisFail), || format!("R3xT2 gave {refused:?}"))?;
        Ok(format!("{count} identities with zero residual; HypothesisFail on R3xT2"))
    });

    suite.record("annihilation", None, || {
        let cases = [("QS(6)", tables::qs6(), 4, 24), ("Q(12,10)", tables::q12_10(), 3, 108), ("Q(15,2)", q15(), 3, 180)];
        let mut summary = Vec::new();
        for (name, q, n_max, bound) in cases {
            let p = aq_profile(&q).ok_or("not m-AQ")?;
            ensure(p.annihilation_bound.value() == Some(bound), || format!("{name}: bound {:?}", p.annihilation_bound))?;
            let r = verify_annihilation_pipeline(&q, &p, n_max).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{name}: pipeline failed"))?;
            let exponent = r.degrees.iter().map(|d| d.group.exponent()).max().unwrap_or(1);
            if name == "QS(6)" {
                let h3 = r.degrees.iter().find(|d| d.theory == Theory::Quandle && d.degree == 3).unwrap();
                ensure(h3.group.exponent() == 24, || format!("H_3^Q(QS(6)) = {}", h3.group))?;
            }
            summary.push(format!("{name} n<={n_max} N={bound} max exponent {exponent}"));
        }
        Ok(summary.join("; ") + "; 24 attained by H_3^Q(QS(6))")
    });

    suite.record("square-zero", None, || {
        let mut count = 0;
        for (name, q) in corpus() {
            for theory in Theory::ALL {
                let c = ChainComplex::new(&q, theory).map_err(|e| e.to_string())?;
                for n in 1..=4 {
                    ensure(c.verify_square_zero(n).map_err(|e| e.to_string())?, || format!("{name} {theory} n={n}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} products vanish"))
    });

    suite.record("smith-vs-dense-oracle", None, || {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let mut with_torsion = 0;
        for i in 0..500 {
            let rows = random_matrix(&mut rng);
            let sparse = smith_invariants(&SparseIntMatrix::from_dense(&rows));
            let dense = dense_invariants(&rows);
            ensure(sparse == dense, || format!("matrix {i}: {sparse:?} vs {dense:?}"))?;
            with_torsion += usize::from(sparse.iter().any(|d| *d > 1u32.into()));
        }
        Ok(format!("500 matrices agree ({with_torsion} with torsion)"))
    });

    suite.record("splitting", None, || {
        let mut count = 0;
        for (name, _) in corpus() {
            let get = |t| groups.get(&(name.to_string(), t)).ok_or(format!("{name} {t} not computed"));
            let (r, d, q) = (get(Theory::Rack)?, get(Theory::Degenerate)?, get(Theory::Quandle)?);
            for n in 0..4 {
                let sum = d[n].direct_sum(&q[n]);
                ensure(r[n] == sum, || format!("{name} n={}: {} vs {sum}", n + 1, r[n]))?;
                count += 1;
            }
        }
        Ok(format!("H^R = H^D + H^Q in {count} cases"))
    });

    suite.record("stabilizer-lemma", None, || {
        let members = aq_members();
        for (name, q) in &members {
            stabilizer_lemma(q).map_err(|e| format!("{name}: {e}"))?;
        }
        Ok(format!("{} m-AQ quandles", members.len()))
    });

    suite.record("universal-coefficients", None, || {
        let mut count = 0;
        for (name, q) in corpus() {
            for theory in Theory::ALL {
                let integral = match groups.get(&(name.to_string(), theory)) {
                    Some(g) => g.clone(),
                    None => sweep(&q, theory, 3)?,
                };
                let h0 = AbelianGroup::free(usize::from(theory != Theory::Degenerate));
                let c = ChainComplex::new(&q, theory).map_err(|e| e.to_string())?;
                for p in [2u32, 3, 5] {
                    let modp = c.sweep(3, Coefficients::Prime(p)).map_err(|e| e.to_string())?;
                    let divisible = |g: &AbelianGroup| g.torsion.iter().filter(|&&d| d % p as u64 == 0).count();
                    for n in 1..=3 {
                        let below = if n == 1 { &h0 } else { &integral[n - 2] };
                        let want = integral[n - 1].rank + divisible(&integral[n - 1]) + divisible(below);
                        let got = modp[n - 1].0.rank;
                        ensure(got == want, || format!("{name} {theory} n={n} p={p}: {got} vs {want}"))?;
                        count += 1;
                    }
                }
            }
        }
        Ok(format!("{count} mod-p dimensions consistent"))
    });

    suite.record("even-dihedral-torsion", None, || {
        let mut out = Vec::new();
        for k in [3u64, 5] {
            let q = make_dihedral(2 * k as usize).unwrap();
            let h = match groups.get(&(format!("R{}", 2 * k), Theory::Rack)) {
                Some(h) => h.clone(),
                None => sweep(&q, Theory::Rack, 4)?,
            };
            for (i, g) in h.iter().enumerate() {
                ensure(check_torsion_annihilated(g, k), || format!("H_{}^R(R{}) = {g}", i + 1, 2 * k))?;
            }
            out.push(format!("H_4^R(R{}) = {}", 2 * k, h[3]));
        }
        Ok(out.join(", "))
    });

    println!(
        "{} failed, total {:.1} s",
        suite.failures,
        suite.started.elapsed().as_secs_f64()
    );
    if suite.failures > 0 {
        std::process::exit(1);
    }
}
