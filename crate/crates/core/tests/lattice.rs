//! The subgroup lattice against brute-force closure of generating sets.

use std::collections::BTreeSet;

use isotypic::io::load_group;
use isotypic::{Bounds, FiniteGroup};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn group(name: &str) -> FiniteGroup {
    load_group(format!("{FIXTURES}/{name}_group.json"), &Bounds::default()).unwrap()
}

/// Every subgroup generated by at most `k` elements.
fn brute_force(g: &FiniteGroup, k: usize) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut subs = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for gens in &frontier {
            let start = gens.last().map_or(0, |&l| l + 1);
            for a in start..n {
                let mut gs = gens.clone();
                gs.push(a);
                let h = g.subgroup_generated(&gs).unwrap();
                if subs.insert(h.members().to_vec()) {
                    next.push(gs);
                }
            }
        }
        frontier = next;
    }
    subs.insert(vec![0]);
    subs
}

fn conjugacy_classes_of(g: &FiniteGroup, subs: &BTreeSet<Vec<usize>>) -> BTreeSet<Vec<usize>> {
    subs.iter()
        .map(|m| {
            (0..g.order())
                .map(|x| {
                    let mut c: Vec<usize> = m.iter().map(|&a| g.conjugate(a, x)).collect();
                    c.sort_unstable();
                    c
                })
                .min()
                .unwrap()
        })
        .collect()
}

#[test]
fn lattice_matches_brute_force() {
    let expected = [("s3", 4), ("d4", 8), ("q8", 6), ("a4", 5), ("s4", 11), ("sl23", 7), ("g80", 20)];
    for (name, count) in expected {
        let g = group(name);
        let lat = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
        let brute = conjugacy_classes_of(&g, &brute_force(&g, 3));
        assert_eq!(lat.len(), brute.len(), "{name}");
        assert_eq!(lat.len(), count, "{name}");
        let ours: BTreeSet<Vec<usize>> = lat.classes().iter().map(|h| h.members().to_vec()).collect();
        assert_eq!(ours, brute, "{name}: representatives differ");
        let total: usize = (0..lat.len()).map(|i| lat.class_size(i)).sum();
        assert_eq!(total, brute_force(&g, 3).len(), "{name}: class sizes");
        assert_eq!(lat.get(0).order(), 1);
        assert_eq!(lat.get(lat.len() - 1).order(), g.order());
        assert!(lat.classes().windows(2).all(|w| w[0].order() <= w[1].order()));
    }
}
