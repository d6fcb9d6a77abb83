//! Frozen oracle results for the corpus. `STRATA_BLESS=1` rewrites the
//! fixtures from the constructed spaces.

mod common;

use common::{formula_record, oracle_record, partitions, read_golden, Golden};
use strata::corpus;

#[test]
fn fixtures_match_oracles_and_formulas() {
    let bless = std::env::var("STRATA_BLESS").is_ok_and(|v| v == "1");
    for e in corpus::all() {
        let mut fresh = Golden::new();
        for part in partitions(&e) {
            let p = e.model.panels(&part).unwrap();
            fresh.insert(part.to_string(), oracle_record(&p));
        }
        if bless {
            let path = common::golden_dir().join(e.fixture());
            std::fs::write(&path, serde_json::to_string_pretty(&fresh).unwrap() + "\n").unwrap();
            continue;
        }
        let golden = read_golden(&e);
        assert_eq!(golden, fresh, "{}: oracle drifted from fixture", e.name);
        for part in partitions(&e) {
            let p = e.model.panels(&part).unwrap();
            assert_eq!(formula_record(&p), golden[&part.to_string()], "{} [{part}]", e.name);
        }
    }
}

#[test]
fn fixtures_hold_the_known_spaces() {
    let betti = |name: &str, field: fn(&common::Record) -> Vec<usize>| {
        let e = corpus::by_name(name).unwrap();
        let g = read_golden(&e);
        field(&g[&strata::corners::Partition::trivial(e.model.m()).to_string()])
    };
    assert_eq!(betti("interval", |r| r.complex_z.betti()), vec![1, 0, 0, 1]);
    assert_eq!(betti("interval", |r| r.real_z.betti()), vec![1, 1]);
    assert_eq!(betti("square", |r| r.complex_z.betti()), vec![1, 0, 0, 2, 0, 0, 1]);
    assert_eq!(betti("annulus", |r| r.real_z.betti()), vec![1, 2, 1]);
    let e = corpus::by_name("mobius").unwrap();
    let g = &read_golden(&e)["1"];
    assert_eq!(g.real_z.get(2).torsion, vec![2]);
    assert_eq!(g.real_z.betti(), vec![1, 1, 0]);
}
