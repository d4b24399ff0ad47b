//! Decomposition invariants and brute-force soundness of the lattice searches.

use std::collections::BTreeSet;
use std::sync::Arc;

use isotypic::decomp::{Decomposer, Subject, Verdict};
use isotypic::io::{group_from_json, load_group, load_table};
use isotypic::{Bounds, CharacterTable, FiniteGroup};
use serde_json::json;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
const CORPUS: [&str; 6] = ["s3", "d4", "q8", "a4", "s4", "sl23"];

fn decomposer(name: &str) -> Decomposer {
    let g = Arc::new(load_group(format!("{FIXTURES}/{name}_group.json"), &Bounds::default()).unwrap());
    let t = if name == "g80" {
        load_table(&g, format!("{FIXTURES}/g80_table.json")).unwrap()
    } else {
        CharacterTable::compute(&g).unwrap()
    };
    Decomposer::build(g, t, &Bounds::default()).unwrap()
}

fn cyclic(p: usize) -> Decomposer {
    let perm: Vec<usize> = (0..p).map(|i| (i + 1) % p).collect();
    let g = Arc::new(group_from_json(&json!({"permutations": [perm]}), &Bounds::default()).unwrap());
    let t = CharacterTable::compute(&g).unwrap();
    Decomposer::build(g, t, &Bounds::default()).unwrap()
}

/// `ρ_H` multiplicities straight from the character table.
fn rho(d: &Decomposer, i: usize) -> Vec<u32> {
    let h = d.lattice().get(i);
    d.irreps()
        .iter()
        .map(|w| d.table().fixed_dim(w.representative(), h).unwrap() / w.schur.provisional_m())
        .collect()
}

fn contained(g: &FiniteGroup, d: &Decomposer, i: usize, k: usize) -> bool {
    let (h, n) = (d.lattice().get(i), d.lattice().get(k));
    (0..g.order()).any(|x| h.members().iter().all(|&a| n.contains(g.conjugate(a, x))))
}

/// `ρ_{H_i} − ρ_{H_k}` for containments, by brute force.
fn differences(d: &Decomposer) -> Vec<(usize, usize, Vec<u32>)> {
    let l = d.lattice().len();
    let rhos: Vec<Vec<u32>> = (0..l).map(|i| rho(d, i)).collect();
    let mut out = Vec::new();
    for i in 0..l {
        for k in 0..l {
            if contained(d.group(), d, i, k) {
                let diff: Vec<u32> = rhos[i].iter().zip(&rhos[k]).map(|(a, b)| a.checked_sub(*b).expect("monotone")).collect();
                out.push((i, k, diff));
            }
        }
    }
    out
}

#[test]
fn intermediate_exponents_match_rho() {
    for name in CORPUS.iter().chain(&["g80"]) {
        let d = decomposer(name);
        for (i, h) in d.lattice().classes().iter().enumerate() {
            let r = d.decompose_intermediate(h).unwrap();
            let exps: Vec<u32> = (0..d.irreps().len()).map(|j| r.exponent(j)).collect();
            assert_eq!(exps, rho(&d, i), "{name}, class {i}");
            assert_eq!(exps, d.rho(i), "{name}, class {i}");
        }
        let jac = d.decompose_jacobian();
        assert_eq!(jac.subject, Subject::Jacobian);
        assert_eq!(jac.exponent(0), 1, "{name}: JW_G factor");
        let whole = d.decompose_intermediate(&d.group().whole_group()).unwrap();
        assert_eq!(whole.factors.len(), 1, "{name}: JW_G has only the trivial factor");
        let trivial = d.decompose_intermediate(&d.group().trivial_subgroup()).unwrap();
        assert_eq!(trivial, isotypic::decomp::DecompositionReport { subject: trivial.subject.clone(), ..jac });
    }
}

#[test]
fn prym_of_g_over_itself_is_empty_and_containment_is_required() {
    let d = decomposer("s4");
    let g = d.group().clone();
    let r = d.decompose_prym(&g.whole_group(), &g.whole_group()).unwrap();
    assert!(r.factors.is_empty());
    let full = d.decompose_prym(&g.trivial_subgroup(), &g.whole_group()).unwrap();
    assert!(full.exponent(0) == 0 && full.factors.len() == d.irreps().len() - 1);
    let s3 = g.parse_subgroup("<x, y^2*x*y^2>").unwrap();
    let c4 = g.parse_subgroup("<y>").unwrap();
    assert!(d.decompose_prym(&c4, &s3).is_err());
}

#[test]
fn prym_pairs_are_exactly_the_isolating_containments() {
    for name in CORPUS.iter().chain(&["g80"]) {
        let d = decomposer(name);
        let diffs = differences(&d);
        for w in 0..d.irreps().len() {
            let expected: BTreeSet<(usize, usize)> = diffs
                .iter()
                .filter(|(_, _, diff)| diff.iter().enumerate().all(|(j, &c)| c == u32::from(j == w)))
                .map(|&(i, k, _)| (i, k))
                .collect();
            let found: BTreeSet<(usize, usize)> = d.find_prym_realizations(w).iter().map(|p| (p.h, p.n)).collect();
            assert_eq!(found, expected, "{name}, irreducible {w}");
            for p in d.find_prym_realizations(w) {
                assert!(Verdict::PrymPair(p).validate(&d, w));
            }
        }
    }
}

#[test]
fn pairwise_intersections_match_brute_force() {
    for name in CORPUS.iter().chain(&["g80"]) {
        let d = decomposer(name);
        let diffs = differences(&d);
        for w in 1..d.irreps().len() {
            let mut expected = BTreeSet::new();
            for (a, (h1, n1, d1)) in diffs.iter().enumerate() {
                for (h2, n2, d2) in &diffs[a + 1..] {
                    if h1 != h2 || d1[w] != 1 || d2[w] != 1 {
                        continue;
                    }
                    let r1: Vec<bool> = d1.iter().enumerate().map(|(j, &c)| j != w && c > 0).collect();
                    let r2: Vec<bool> = d2.iter().enumerate().map(|(j, &c)| j != w && c > 0).collect();
                    let disjoint = r1.iter().zip(&r2).all(|(x, y)| !(x & y));
                    if r1.contains(&true) && r2.contains(&true) && disjoint {
                        expected.insert((*h1, vec![(*n1).min(*n2), (*n1).max(*n2)]));
                    }
                }
            }
            let found: BTreeSet<(usize, Vec<usize>)> =
                d.find_intersection_realizations(w, 2).into_iter().map(|f| (f.h, f.ns)).collect();
            assert_eq!(found, expected, "{name}, irreducible {w}");
        }
    }
}

#[test]
fn every_verdict_validates_and_none_is_unresolved() {
    for name in CORPUS.iter().chain(&["g80"]) {
        let d = decomposer(name);
        for w in 1..d.irreps().len() {
            let v = d.classify_factor(w, 4);
            assert!(!matches!(v, Verdict::Unresolved), "{name}, irreducible {w}");
            assert!(v.validate(&d, w), "{name}, irreducible {w}: {v:?}");
            for f in d.find_intersection_realizations(w, 4) {
                assert!((2..=4).contains(&f.ns.len()));
                assert!(Verdict::Intersection(f).validate(&d, w));
            }
        }
    }
}

#[test]
fn intersection_families_are_minimal() {
    let d = decomposer("g80");
    for w in 1..d.irreps().len() {
        let fams = d.find_intersection_realizations(w, 4);
        let keys: BTreeSet<(usize, Vec<usize>)> = fams.iter().map(|f| (f.h, f.ns.clone())).collect();
        for f in &fams {
            for other in &keys {
                let proper = other.0 == f.h && other.1.len() < f.ns.len() && other.1.iter().all(|n| f.ns.contains(n));
                assert!(!proper, "{:?} contains the family {other:?}", (f.h, &f.ns));
            }
        }
    }
}

#[test]
fn prym_isogenies_are_sound_and_complete() {
    for name in CORPUS {
        let d = decomposer(name);
        let diffs = differences(&d);
        let mut expected = BTreeSet::new();
        for (a, (s, r, d1)) in diffs.iter().enumerate() {
            for (x, y, d2) in &diffs[a + 1..] {
                if d1 == d2 && d1.iter().any(|&c| c > 0) {
                    expected.insert(((*s, *r), (*x, *y)));
                }
            }
        }
        let found: BTreeSet<((usize, usize), (usize, usize))> =
            d.find_prym_isogenies().iter().map(|p| ((p.s, p.r), (p.x, p.y))).collect();
        assert_eq!(found, expected, "{name}");
        assert!(found.iter().all(|(a, b)| a != b));
    }
    for p in [2, 3, 5, 7] {
        assert!(cyclic(p).find_prym_isogenies().is_empty(), "Z/{p}");
    }
}

#[test]
fn full_report_accounts_for_every_factor() {
    for name in CORPUS.iter().chain(&["g80"]) {
        let d = decomposer(name);
        let r = d.full_report(4);
        let jac = d.decompose_jacobian();
        assert_eq!(r.factors.len(), jac.factors.len(), "{name}");
        for f in &r.factors {
            assert_eq!(f.exponent, jac.exponent(f.irrep), "{name}");
            assert!(f.verdict.validate(&d, f.irrep));
        }
        assert_eq!(r.factors[0].factor, "JW_G");
        let text = isotypic::decomp::render_full_report(&d, &r);
        assert!(text.contains("JW ~ JW_G"), "{name}");
        assert_eq!(text, isotypic::decomp::render_full_report(&d, &d.full_report(4)), "{name}: not deterministic");
    }
}

#[test]
fn quasi_prym_is_flagged() {
    let d = decomposer("sl23");
    let text = isotypic::decomp::render_full_report(&d, &d.full_report(4));
    assert!(text.contains("quasi-Prym"), "{text}");
    let d = decomposer("g80");
    assert!(!isotypic::decomp::render_full_report(&d, &d.full_report(4)).contains("quasi-Prym"));
}

#[test]
fn unresolved_schur_index_is_flagged_until_asserted() {
    let g = Arc::new(load_group(format!("{FIXTURES}/g80_group.json"), &Bounds::default()).unwrap());
    let t = CharacterTable::compute(&g).unwrap();
    let lattice = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
    let mut irreps = isotypic::RationalIrreps::new(&t, &lattice).unwrap();
    let w = (0..irreps.len()).find(|&j| !irreps.get(j).schur.is_resolved()).expect("an unresolved orbit");
    assert_eq!(irreps.get(w).degree, 4);
    let d = Decomposer::new(g.clone(), t.clone(), lattice.clone(), irreps.clone()).unwrap();
    let jac = d.decompose_jacobian();
    assert!(jac.is_conditional());
    assert_eq!(jac.exponent(w), 4);
    assert!(irreps.assert_schur(w, 3, "bad").is_err());
    irreps.assert_schur(w, 2, "test").unwrap();
    let d = Decomposer::new(g, t, lattice, irreps).unwrap();
    let jac = d.decompose_jacobian();
    assert!(!jac.is_conditional());
    assert_eq!(jac.exponent(w), 2);
}
