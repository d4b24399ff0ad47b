//! Small groups shared by unit tests.

use crate::config::Bounds;
use crate::group::{FiniteGroup, Presentation};

pub fn perm_group(perms: &[&[usize]]) -> FiniteGroup {
    let perms: Vec<Vec<usize>> = perms.iter().map(|p| p.to_vec()).collect();
    FiniteGroup::from_permutations(&perms, None, &Bounds::default()).unwrap()
}

pub fn presented(gens: &[&str], relators: Vec<Vec<i32>>) -> FiniteGroup {
    let p = Presentation::new(gens.len(), relators).with_names(gens);
    FiniteGroup::from_presentation(&p, &Bounds::default()).unwrap()
}

pub fn trivial() -> FiniteGroup {
    perm_group(&[])
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let p: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    perm_group(&[&p])
}

pub fn s3() -> FiniteGroup {
    perm_group(&[&[1, 0, 2], &[1, 2, 0]])
}

pub fn s4() -> FiniteGroup {
    perm_group(&[&[1, 0, 2, 3], &[1, 2, 3, 0]])
}

pub fn a4() -> FiniteGroup {
    perm_group(&[&[1, 2, 0, 3], &[0, 2, 3, 1]])
}

pub fn d4() -> FiniteGroup {
    perm_group(&[&[1, 2, 3, 0], &[0, 3, 2, 1]])
}

pub fn q8() -> FiniteGroup {
    presented(&["x", "y"], vec![vec![1; 4], vec![1, 1, -2, -2], vec![-2, 1, 2, 1]])
}

/// `⟨x,y,z : x⁴, y⁴, z³, y⁻¹xyx, z⁻¹xzy⁻¹, z⁻¹yz(xy)⁻¹⟩`
pub fn sl23() -> FiniteGroup {
    presented(
        &["x", "y", "z"],
        vec![vec![1; 4], vec![2; 4], vec![3; 3], vec![-2, 1, 2, 1], vec![-3, 1, 3, -2], vec![-3, 2, 3, -2, -1]],
    )
}

/// `⟨x,y : x²⁰, y⁸, x¹⁰y⁴, y⁻¹xyx⁻³⟩`
pub fn g80() -> FiniteGroup {
    presented(
        &["x", "y"],
        vec![vec![1; 20], vec![2; 8], [vec![1; 10], vec![2; 4]].concat(), vec![-2, 1, 2, -1, -1, -1]],
    )
}
