use super::*;
use crate::config::Bounds;
use crate::numfield::{char_field_stabilizer, Field};
use crate::testing::*;

fn degrees(t: &CharacterTable) -> Vec<u32> {
    t.characters().iter().map(Character::degree).collect()
}

/// Character of a permutation action: number of fixed points per class.
fn fixed_points(t: &CharacterTable, perm_of: impl Fn(usize) -> Vec<usize>) -> Vec<CycValue> {
    let f = Cyclotomic::new(t.level());
    t.class_representatives()
        .iter()
        .map(|&a| f.rational(int(perm_of(a).iter().enumerate().filter(|(i, x)| *i == **x).count() as i64)))
        .collect()
}

#[test]
fn trivial_group() {
    let g = trivial();
    let t = CharacterTable::compute(&g).unwrap();
    assert_eq!(t.len(), 1);
    assert!(t.character(0).is_trivial());
}

#[test]
fn s3_table() {
    let g = s3();
    let t = CharacterTable::compute(&g).unwrap();
    assert_eq!(degrees(&t), vec![1, 1, 2]);
    assert!(t.characters().iter().all(Character::is_rational));
    assert!(t.character(0).is_trivial());
    // the natural permutation character minus the trivial one is irreducible
    let labels_perm = |a: usize| {
        let mut pts: Vec<usize> = (0..3).collect();
        for &gi in &g.tree_word(a) {
            let p = [[1, 0, 2], [1, 2, 0]][gi];
            pts = pts.iter().map(|&i| p[i]).collect();
        }
        pts
    };
    let perm = fixed_points(&t, labels_perm);
    let f = Cyclotomic::new(t.level());
    let std: Vec<CycValue> = perm.iter().map(|v| f.sub(v, &f.one())).collect();
    assert!(t.find(&std).is_some());
    assert_eq!(t.inner_product(&std, &std).to_rational(), Some(int(1)));
}

#[test]
fn s4_is_rational_and_orbits_are_singletons() {
    let g = s4();
    let t = CharacterTable::compute(&g).unwrap();
    let mut d = degrees(&t);
    d.sort_unstable();
    assert_eq!(d, vec![1, 1, 2, 3, 3]);
    let orbits = galois_orbits(&t).unwrap();
    assert!(orbits.iter().all(|(o, _)| o.len() == 1));
    assert_eq!(orbits.len(), g.rational_fusion_classes().len());
}

#[test]
fn regular_character_multiplicities_equal_degrees() {
    for g in [s3(), q8(), a4(), d4(), sl23()] {
        let t = CharacterTable::compute(&g).unwrap();
        let f = Cyclotomic::new(t.level());
        let mut reg = vec![f.rational(int(0)); t.class_sizes().len()];
        reg[0] = f.rational(int(g.order() as i64));
        for (i, c) in t.characters().iter().enumerate() {
            assert_eq!(t.inner_product(&reg, c.values()).to_rational(), Some(int(c.degree() as i64)), "char {i}");
        }
        let orbits = galois_orbits(&t).unwrap();
        assert_eq!(orbits.len(), g.rational_fusion_classes().len());
    }
}

#[test]
fn order_80_table() {
    let g = g80();
    let t = CharacterTable::compute(&g).unwrap();
    assert_eq!(t.len(), 14);
    let mut d = degrees(&t);
    d.sort_unstable();
    assert_eq!(d, [vec![1; 8], vec![2; 2], vec![4; 4]].concat());
    let f = Cyclotomic::new(20);
    let w = |k: i64| f.root_power(k);
    let k = &(&(&w(1) + &w(9)) - &w(13)) - &w(17);
    let x = g.parse_element("x").unwrap();
    let x10 = g.parse_element("x^10").unwrap();
    let v = t
        .characters()
        .iter()
        .position(|c| c.value(t.class_of(x)) == &k && c.value(t.class_of(x10)).to_rational() == Some(int(-4)))
        .expect("a degree-4 character with value sqrt(-5) at x");
    let one = g.trivial_subgroup();
    assert_eq!(t.fixed_dim(v, &one).unwrap(), 4);
    assert_eq!(t.fixed_dim(v, &g.subgroup_from_words(&["x^10"]).unwrap()).unwrap(), 0);
    assert_eq!(t.fixed_dim(v, &g.subgroup_from_words(&["x y^2"]).unwrap()).unwrap(), 2);
    let stab = char_field_stabilizer(t.level(), t.character(v).values()).unwrap();
    assert_eq!(stab.index(), 2);
    let lattice = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
    let irreps = RationalIrreps::new(&t, &lattice).unwrap();
    assert_eq!(irreps.len(), 10);
    let w13 = irreps.get(irreps.of_character(v));
    assert_eq!(w13.orbit.len(), 2);
    assert_eq!(w13.divisor_bound, 2);
    assert_eq!(irreps.len(), g.rational_fusion_classes().len());
}

#[test]
fn q8_schur_index_certified() {
    let g = q8();
    let t = CharacterTable::compute(&g).unwrap();
    assert_eq!(degrees(&t), vec![1, 1, 1, 1, 2]);
    assert_eq!(t.frobenius_schur(4), -1);
    assert_eq!(t.frobenius_schur(0), 1);
    let lattice = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
    let irreps = RationalIrreps::new(&t, &lattice).unwrap();
    let w = irreps.get(irreps.of_character(4));
    assert_eq!(w.schur.m(), Some(2));
    let (chi, scaled) = rational_character(&t, w);
    assert!(scaled);
    assert_eq!(chi[0], int(4));
    let rho1 = irreps.rho_decomposition(&t, &g.trivial_subgroup()).unwrap();
    assert_eq!(rho1.multiplicities, vec![1, 1, 1, 1, 1]);
    assert!(!rho1.conditional);
}

#[test]
fn rho_dimension_count() {
    for g in [s3(), s4(), q8(), a4(), d4(), sl23()] {
        let t = CharacterTable::compute(&g).unwrap();
        let lattice = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
        let irreps = RationalIrreps::new(&t, &lattice).unwrap();
        assert!(irreps.iter().all(|w| w.schur.is_resolved()));
        for h in lattice.classes() {
            let rho = irreps.rho_decomposition(&t, h).unwrap();
            let dim: u32 = rho.multiplicities.iter().zip(irreps.iter()).map(|(a, w)| a * w.rational_dim()).sum();
            assert_eq!(dim as usize, g.order() / h.order());
            // the permutation character agrees with Σ a_j χ_{W_j}
            let perm = t.permutation_character(h);
            for (l, pv) in perm.iter().enumerate() {
                let mut s = int(0);
                for (a, w) in rho.multiplicities.iter().zip(irreps.iter()) {
                    s += rational_character(&t, w).0[l].clone() * int(*a as i64);
                }
                assert_eq!(&s, pv);
            }
            assert_eq!(t.fixed_dim(0, h).unwrap(), 1);
        }
        let whole = irreps.rho_decomposition(&t, &g.whole_group()).unwrap();
        assert_eq!(whole.multiplicities[0], 1);
        assert_eq!(whole.multiplicities.iter().sum::<u32>(), 1);
    }
}

#[test]
fn loaded_tables_are_validated() {
    let g = s3();
    let t = CharacterTable::compute(&g).unwrap();
    let rows: Vec<Vec<CycValue>> = t.characters().iter().map(|c| c.values().to_vec()).collect();
    let again = CharacterTable::from_rows(&g, rows.clone(), Default::default()).unwrap();
    assert_eq!(again.characters(), t.characters());
    let mut bad = rows.clone();
    bad[2][1] = bad[2][1].field().rational(int(1));
    let err = CharacterTable::from_rows(&g, bad, Default::default()).unwrap_err();
    assert!(err.to_string().contains("orthogonality"), "{err}");
    assert!(CharacterTable::from_rows(&g, rows[..2].to_vec(), Default::default()).is_err());
}

#[test]
fn resolve_irrep_specs() {
    let g = g80();
    let t = CharacterTable::compute(&g).unwrap();
    let lattice = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
    let irreps = RationalIrreps::new(&t, &lattice).unwrap();
    let w = irreps.len() - 1;
    let orbit = &irreps.get(w).orbit;
    let spec = format!("{}-{}", orbit[0] + 1, orbit[1] + 1);
    assert_eq!(irreps.resolve(&spec).unwrap(), w);
    assert!(irreps.resolve("1-14").is_err());
    assert!(irreps.resolve("99").is_err());
}
