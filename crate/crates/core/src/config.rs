/// Size limits applied by the enumeration algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group order accepted by coset enumeration and permutation closure.
    pub max_group_order: usize,
    /// Largest group order for which the subgroup lattice is enumerated.
    pub max_lattice_order: usize,
    /// Largest number of Prym varieties intersected when realizing a factor.
    pub max_intersection_arity: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_group_order: 10_000, max_lattice_order: 2_000, max_intersection_arity: 4 }
    }
}
