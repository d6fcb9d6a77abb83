#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use strata::corners::{PanelStructure, Partition};
use strata::corpus::CorpusEntry;
use strata::hochster::HochsterTable;
use strata::oracle::{build_real_zq, build_zq_chain, oracle_real_ring, PairingRanks, DEFAULT_CELL_BUDGET};
use strata::rings::{CohomologyRing, RingLaw};
use strata::{Coeffs, GradedAbelianGroup};

/// Trivial partition first, then the coarse one if the entry has it.
pub fn partitions(e: &CorpusEntry) -> Vec<Partition> {
    let mut v = vec![Partition::trivial(e.model.m())];
    if let Some(c) = &e.coarse {
        v.push(c.clone());
    }
    v
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Cohomology of one model under one partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub real_z: GradedAbelianGroup,
    pub real_z2: GradedAbelianGroup,
    pub complex_z: GradedAbelianGroup,
    pub complex_z2: GradedAbelianGroup,
    pub real_ring_ranks_z: BTreeMap<String, usize>,
    pub real_ring_ranks_z2: BTreeMap<String, usize>,
}

/// Golden file: partition string to record.
pub type Golden = BTreeMap<String, Record>;

/// Everything computed on the constructed spaces.
pub fn oracle_record(p: &PanelStructure<'_>) -> Record {
    let sheets = build_real_zq(p, DEFAULT_CELL_BUDGET).unwrap();
    let cz = build_zq_chain(p, Coeffs::Integers, DEFAULT_CELL_BUDGET).unwrap();
    let c2 = build_zq_chain(p, Coeffs::Mod(2), DEFAULT_CELL_BUDGET).unwrap();
    Record {
        real_z: sheets.complex.chain_complex(Coeffs::Integers).cohomology(),
        real_z2: sheets.complex.chain_complex(Coeffs::Mod(2)).cohomology(),
        complex_z: cz.chain.cohomology(),
        complex_z2: c2.chain.cohomology(),
        real_ring_ranks_z: oracle_real_ring(&sheets, Coeffs::Integers).0,
        real_ring_ranks_z2: oracle_real_ring(&sheets, Coeffs::Mod(2)).0,
    }
}

fn ring_ranks(table: &HochsterTable) -> PairingRanks {
    CohomologyRing::new(table, RingLaw::real(table.k())).unwrap().structure_constants().multiplication_ranks()
}

/// Everything computed from the decomposition over index sets.
pub fn formula_record(p: &PanelStructure<'_>) -> Record {
    let tz = HochsterTable::new(p, Coeffs::Integers);
    let t2 = HochsterTable::new(p, Coeffs::Mod(2));
    Record {
        real_z: tz.total(|_| 0),
        real_z2: t2.total(|_| 0),
        complex_z: tz.total(|o| o.len()),
        complex_z2: t2.total(|o| o.len()),
        real_ring_ranks_z: ring_ranks(&tz).0,
        real_ring_ranks_z2: ring_ranks(&t2).0,
    }
}

pub fn read_golden(e: &CorpusEntry) -> Golden {
    let path = golden_dir().join(e.fixture());
    let text = std::fs::read_to_string(&path).unwrap_or_else(|err| panic!("{}: {err}", path.display()));
    serde_json::from_str(&text).unwrap()
}
