use proptest::prelude::*;
use strata::corners::Partition;
use strata::corpus::by_name;
use strata::delta::{cup_product, glue, CohomologyBasis, DeltaComplex, Identification, SimplexRef, Subcomplex};
use strata::face_ring::FaceRing;
use strata::hochster::HochsterTable;
use strata::oracle::{compare_complex, compare_real, DEFAULT_CELL_BUDGET};
use strata::{Coeffs, IndexSet};

fn random_partition(m: usize, labels: &[usize]) -> Partition {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for (j, &l) in labels.iter().take(m).enumerate() {
        match seen.iter().position(|&s| s == l) {
            Some(b) => blocks[b].push(j + 1),
            None => {
                seen.push(l);
                blocks.push(vec![j + 1]);
            }
        }
    }
    Partition::from_one_based(&blocks, m).unwrap()
}

/// Random integer combination of the degree-`p` generators.
fn class(b: &CohomologyBasis, p: usize, seed: &[i64]) -> Vec<i64> {
    let coords: Vec<i64> = (0..b.rank(p)).map(|i| seed[i % seed.len()]).collect();
    b.reconstitute(p, &coords)
}

fn all_simplices(x: &DeltaComplex) -> Vec<SimplexRef> {
    (0..x.num_dims()).flat_map(|n| (0..x.count(n)).map(move |i| (n, i))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_partitions_agree_with_oracles(m in 3usize..=6, labels in prop::collection::vec(0usize..4, 6)) {
        let e = by_name(&format!("polygon({m})")).unwrap();
        let part = random_partition(m, &labels);
        let p = e.model.panels(&part).unwrap();
        for coeffs in [Coeffs::Integers, Coeffs::Mod(2)] {
            prop_assert!(compare_real(&p, coeffs, DEFAULT_CELL_BUDGET, true).unwrap().ok);
            prop_assert!(compare_complex(&p, coeffs, DEFAULT_CELL_BUDGET).unwrap().ok);
        }
    }

    #[test]
    fn euler_characteristic_is_coefficient_free(
        name in prop::sample::select(vec!["square", "pentagon", "annulus", "mobius", "pair_of_pants", "cube"]),
        labels in prop::collection::vec(0usize..3, 6),
    ) {
        let e = by_name(name).unwrap();
        let part = random_partition(e.model.m(), &labels);
        let p = e.model.panels(&part).unwrap();
        let z = HochsterTable::new(&p, Coeffs::Integers).euler_characteristic();
        let z2 = HochsterTable::new(&p, Coeffs::Mod(2)).euler_characteristic();
        prop_assert_eq!(z, z2);
        let x = e.model.complex();
        prop_assert_eq!(x.chain_complex(Coeffs::Integers).euler_characteristic(), x.euler_characteristic());
    }

    #[test]
    fn gluing_ignores_identification_order(m in 3usize..=7, mask in 1u32..128, shuffle in any::<u64>()) {
        let e = by_name(&format!("polygon({m})")).unwrap();
        let q = &e.model;
        let sheets = vec![q.complex().clone(), q.complex().clone()];
        let glued_facets: Vec<usize> = (0..m).filter(|j| mask & (1 << j) != 0).collect();
        let mut ids: Vec<Identification> = glued_facets
            .iter()
            .map(|&j| {
                let pairs = q.facet(j).simplices().into_iter().map(|s| (s, s)).collect();
                Identification { sheet_a: 0, sheet_b: 1, pairs }
            })
            .collect();
        let a = glue(&sheets, &ids).unwrap();
        let mut state = shuffle;
        for i in (1..ids.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ids.swap(i, (state >> 33) as usize % (i + 1));
        }
        for id in ids.iter_mut() {
            id.pairs.reverse();
            std::mem::swap(&mut id.sheet_a, &mut id.sheet_b);
        }
        let b = glue(&sheets, &ids).unwrap();
        prop_assert_eq!(a.complex.total_simplices(), b.complex.total_simplices());
        for coeffs in [Coeffs::Integers, Coeffs::Mod(2)] {
            prop_assert_eq!(
                a.complex.chain_complex(coeffs).homology(),
                b.complex.chain_complex(coeffs).homology()
            );
        }
    }

    #[test]
    fn cup_is_associative_and_graded_commutative(
        name in prop::sample::select(vec!["torus_minus_disk", "annulus", "pair_of_pants"]),
        coeffs in prop::sample::select(vec![Coeffs::Integers, Coeffs::Mod(2)]),
        seed in prop::collection::vec(-3i64..=3, 1..5),
    ) {
        // the doubled surface is closed, so degree-1 products land in H^2
        let e = by_name(name).unwrap();
        let p = e.model.panels(&Partition::whole(e.model.m())).unwrap();
        let sheets = strata::oracle::build_real_zq(&p, DEFAULT_CELL_BUDGET).unwrap();
        let x = &sheets.complex;
        let b = CohomologyBasis::of_complex(x, coeffs);
        let u = class(&b, 1, &seed);
        let v = class(&b, 1, &seed[1..].iter().chain(&seed[..1]).copied().collect::<Vec<_>>());
        let w = class(&b, 0, &seed);
        let uv = b.express(2, &cup_product(x, 1, &u, 1, &v, coeffs)).unwrap();
        let vu = b.express(2, &cup_product(x, 1, &v, 1, &u, coeffs)).unwrap();
        let neg: Vec<i64> = vu.iter().map(|&c| coeffs.neg(c)).collect();
        prop_assert_eq!(uv.clone(), b.reduce(2, &neg));
        let left = cup_product(x, 1, &cup_product(x, 0, &w, 1, &u, coeffs), 1, &v, coeffs);
        let right = cup_product(x, 0, &w, 2, &cup_product(x, 1, &u, 1, &v, coeffs), coeffs);
        prop_assert_eq!(b.express(2, &left).unwrap(), b.express(2, &right).unwrap());
    }

    #[test]
    fn restriction_is_natural(
        name in prop::sample::select(vec!["annulus", "pair_of_pants", "torus_minus_disk", "cube"]),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..8),
        split in 0usize..8,
        coeffs in prop::sample::select(vec![Coeffs::Integers, Coeffs::Mod(2)]),
    ) {
        let e = by_name(name).unwrap();
        let x = e.model.complex();
        let all = all_simplices(x);
        let chosen: Vec<SimplexRef> = picks.iter().map(|i| *i.get(&all)).collect();
        let inner = &chosen[..split.min(chosen.len())];
        let y1 = Subcomplex::closure(x, &chosen).unwrap();
        let y2 = Subcomplex::closure(x, inner).unwrap();
        let b0 = CohomologyBasis::of_complex(x, coeffs);
        let b1 = CohomologyBasis::absolute(x, &y1, coeffs).unwrap();
        let b2 = CohomologyBasis::absolute(x, &y2, coeffs).unwrap();
        for n in 0..=1 {
            let direct = b0.induced_map(&b2, n).unwrap();
            let composed = b1.induced_map(&b2, n).unwrap().mul(&b0.induced_map(&b1, n).unwrap(), coeffs);
            for j in 0..direct.ncols() {
                prop_assert_eq!(b2.reduce(n, &direct.column(j)), b2.reduce(n, &composed.column(j)));
            }
        }
    }

    #[test]
    fn star_product_is_associative_and_unital(
        name in prop::sample::select(vec!["square", "pentagon", "annulus", "mobius", "cube"]),
        coeffs in prop::sample::select(vec![Coeffs::Integers, Coeffs::Mod(2)]),
        picks in prop::collection::vec((any::<prop::sample::Index>(), 1u32..3), 3),
    ) {
        let e = by_name(name).unwrap();
        let p = e.model.panels(&Partition::trivial(e.model.m())).unwrap();
        let ring = FaceRing::standard(&p, coeffs).unwrap();
        // basis terms φ ⊗ x^e over nerve faces
        let mut terms = Vec::new();
        for omega in ring.nerve().faces_with_empty() {
            let b = ring.basis(omega).unwrap();
            for deg in 0..b.num_degrees() {
                for i in 0..b.rank(deg) {
                    terms.push((omega, deg, i));
                }
            }
        }
        let elems: Vec<_> = picks
            .iter()
            .map(|(idx, ex)| {
                let (omega, deg, i): (IndexSet, usize, usize) = *idx.get(&terms);
                let rank = ring.basis(omega).unwrap().rank(deg);
                let mut coords = vec![0; rank];
                coords[i] = 1;
                let exps: Vec<u32> = (0..ring.k()).map(|j| if omega.contains(j) { *ex } else { 0 }).collect();
                ring.term(omega, deg, coords, exps).unwrap()
            })
            .collect();
        let (a, b, c) = (&elems[0], &elems[1], &elems[2]);
        let left = ring.star(&ring.star(a, b).unwrap(), c).unwrap();
        let right = ring.star(a, &ring.star(b, c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(&ring.star(&ring.one(), a).unwrap(), a);
        prop_assert_eq!(&ring.star(a, &ring.one()).unwrap(), a);
        for i in 0..ring.k() {
            ring.module_action(i, a).unwrap();
        }
    }
}
