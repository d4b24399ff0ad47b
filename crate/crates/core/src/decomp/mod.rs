//! Symbolic isotypical decompositions of `JW`, of the intermediate Jacobians
//! `JW_H` and of the Prym varieties `P(W_H/W_N)`, tracked purely by
//! multiplicity vectors over the rational irreducibles, together with the
//! lattice searches that realize individual factors.

mod render;
mod search;

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::chars::{CharacterTable, RationalIrreps, SchurStatus};
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupLattice};

pub use render::{render_full_report, render_report, render_verdict};
pub use search::{ComplementWitness, IntersectionFamily, PrymIsogeny, PrymPair, Verdict};

/// What a report decomposes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subject {
    Jacobian,
    Intermediate { h: String },
    Prym { h: String, n: String },
}

/// One factor `B_j^{exponent}` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    /// Index into the rational irreducibles.
    pub irrep: usize,
    pub label: String,
    pub exponent: u32,
    /// Schur index status the exponent depends on.
    pub schur: String,
    /// The exponent was divided by an unresolved Schur index (taken as 1).
    pub conditional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub subject: Subject,
    /// Nonzero factors in rational-irreducible order.
    pub factors: Vec<Factor>,
}

impl DecompositionReport {
    pub fn exponent(&self, irrep: usize) -> u32 {
        self.factors.iter().find(|f| f.irrep == irrep).map_or(0, |f| f.exponent)
    }

    pub fn is_conditional(&self) -> bool {
        self.factors.iter().any(|f| f.conditional)
    }
}

/// Character-theoretic data of a group with every `ρ_H` decomposition and
/// every containment between subgroup classes precomputed.
pub struct Decomposer {
    group: Arc<FiniteGroup>,
    table: CharacterTable,
    irreps: RationalIrreps,
    lattice: SubgroupLattice,
    /// `rho[i][j]`: multiplicity of `W_j` in `ρ_{H_i}`.
    rho: Vec<Vec<u32>>,
    /// `inside[i][k]`: least `g` with `g⁻¹ H_i g ⊆ H_k`.
    inside: Vec<Vec<Option<usize>>>,
    names: Vec<String>,
}

impl Decomposer {
    /// Builds the lattice and the rational irreducibles, then the caches.
    pub fn build(group: Arc<FiniteGroup>, table: CharacterTable, bounds: &Bounds) -> Result<Self> {
        let lattice = group.subgroups_up_to_conjugacy(bounds)?;
        let irreps = RationalIrreps::new(&table, &lattice)?;
        Self::new(group, table, lattice, irreps)
    }

    /// Uses given irreducibles, e.g. after Schur indices were asserted.
    pub fn new(group: Arc<FiniteGroup>, table: CharacterTable, lattice: SubgroupLattice, irreps: RationalIrreps) -> Result<Self> {
        let rho = lattice
            .classes()
            .par_iter()
            .map(|h| irreps.rho_decomposition(&table, h).map(|d| d.multiplicities))
            .collect::<Result<Vec<_>>>()?;
        let inside = lattice
            .classes()
            .par_iter()
            .map(|h| lattice.classes().iter().map(|n| group.conjugate_into(h, n)).collect())
            .collect();
        let names = lattice.classes().iter().map(|h| subgroup_name(&group, h)).collect();
        Ok(Decomposer { group, table, irreps, lattice, rho, inside, names })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn irreps(&self) -> &RationalIrreps {
        &self.irreps
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    /// Multiplicities of `ρ_H` for the `i`-th subgroup class.
    pub fn rho(&self, i: usize) -> &[u32] {
        &self.rho[i]
    }

    /// Display name `<g1, g2, ...>` of the `i`-th subgroup class.
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Least `g` conjugating class `i` into class `k`.
    pub fn conjugator(&self, i: usize, k: usize) -> Option<usize> {
        self.inside[i][k]
    }

    pub fn class_of(&self, h: &Subgroup) -> Result<usize> {
        self.lattice.index_of(h).ok_or_else(|| Error::invalid("subgroup is not in the lattice"))
    }

    fn factors(&self, exponents: &[u32], used: impl Fn(usize) -> bool) -> Vec<Factor> {
        exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| {
                let w = self.irreps.get(j);
                Factor {
                    irrep: j,
                    label: self.irrep_label(j),
                    exponent: e,
                    schur: w.schur.to_string(),
                    conditional: used(j) && !w.schur.is_resolved(),
                }
            })
            .collect()
    }

    /// `W_j` in display form: `V5+V6`, or `2(V13+V14)` when `m > 1`.
    pub fn irrep_label(&self, j: usize) -> String {
        let w = self.irreps.get(j);
        match &w.schur {
            SchurStatus::Exact { m, .. } | SchurStatus::Asserted { m, .. } if *m > 1 => format!("{m}({})", w.label()),
            _ => w.label(),
        }
    }

    /// `JW ~ ∏ B_j^{n_j}` with `n_j = dim V_j / m_j`.
    pub fn decompose_jacobian(&self) -> DecompositionReport {
        let exps: Vec<u32> = self.irreps.iter().map(|w| w.degree / w.schur.provisional_m()).collect();
        DecompositionReport { subject: Subject::Jacobian, factors: self.factors(&exps, |_| true) }
    }

    /// `JW_H ~ ∏ B_j^{dim V_j^H / m_j}`.
    pub fn decompose_intermediate(&self, h: &Subgroup) -> Result<DecompositionReport> {
        let d = self.irreps.rho_decomposition(&self.table, h)?;
        let fixed = d.fixed_dims.clone();
        Ok(DecompositionReport {
            subject: Subject::Intermediate { h: subgroup_name(&self.group, h) },
            factors: self.factors(&d.multiplicities, |j| fixed[j] > 0),
        })
    }

    /// `P(W_H/W_N) ~ ∏ B_j^{s_j}`, `s_j = (dim V_j^H − dim V_j^N)/m_j`. `H`
    /// must be conjugate into `N`.
    pub fn decompose_prym(&self, h: &Subgroup, n: &Subgroup) -> Result<DecompositionReport> {
        if self.group.conjugate_into(h, n).is_none() {
            return Err(Error::invalid(format!(
                "no conjugate of {} lies in {}",
                subgroup_name(&self.group, h),
                subgroup_name(&self.group, n)
            )));
        }
        let dh = self.irreps.rho_decomposition(&self.table, h)?;
        let dn = self.irreps.rho_decomposition(&self.table, n)?;
        let mut s = Vec::with_capacity(dh.multiplicities.len());
        for (j, (&a, &b)) in dh.multiplicities.iter().zip(&dn.multiplicities).enumerate() {
            s.push(a.checked_sub(b).ok_or_else(|| {
                Error::invariant(format!("negative Prym exponent for {}: {a} - {b}", self.irrep_label(j)))
            })?);
        }
        let fixed = dh.fixed_dims;
        Ok(DecompositionReport {
            subject: Subject::Prym { h: subgroup_name(&self.group, h), n: subgroup_name(&self.group, n) },
            factors: self.factors(&s, |j| fixed[j] > 0),
        })
    }
}

/// `<a, b, ...>` from a greedy generating set preferring short labels.
pub fn subgroup_name(g: &FiniteGroup, h: &Subgroup) -> String {
    if h.order() == 1 {
        return "1".into();
    }
    if h.order() == g.order() {
        return "G".into();
    }
    let gens = small_generating_set(g, h);
    let labels: Vec<&str> = gens.iter().map(|&a| g.label(a)).collect();
    format!("<{}>", labels.join(", "))
}

/// Greedy generating set of `h`: elements by increasing label length, kept
/// when they enlarge the generated subgroup.
pub fn small_generating_set(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut candidates: Vec<usize> = h.members().iter().copied().filter(|&a| a != 0).collect();
    candidates.sort_by_key(|&a| (std::cmp::Reverse(g.elem_order(a)), g.label(a).len(), a));
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for a in candidates {
        if span.binary_search(&a).is_ok() {
            continue;
        }
        gens.push(a);
        span = g.subgroup_generated(&gens).expect("valid elements").members().to_vec();
        if span.len() == h.order() {
            break;
        }
    }
    gens
}

/// A subgroup class as it appears in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupInfo {
    pub class: usize,
    pub name: String,
    pub order: usize,
    pub conjugates: usize,
}

/// One factor of `JW` with its realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub irrep: usize,
    pub label: String,
    pub exponent: u32,
    pub schur: String,
    pub conditional: bool,
    /// Symbolic variety: `JW_G`, `P(W_H/W_N)` or `B_k`.
    pub factor: String,
    /// Human-readable witness.
    pub witness: String,
    pub verdict: Verdict,
}

/// `JW ~ ∏ factors` with every factor classified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullReport {
    pub subject: Subject,
    pub group_order: usize,
    pub conjugacy_classes: usize,
    pub subgroups: Vec<SubgroupInfo>,
    pub factors: Vec<ReportEntry>,
}

impl Decomposer {
    pub fn subgroup_info(&self) -> Vec<SubgroupInfo> {
        (0..self.lattice.len())
            .map(|i| SubgroupInfo {
                class: i,
                name: self.names[i].clone(),
                order: self.lattice.get(i).order(),
                conjugates: self.lattice.class_size(i),
            })
            .collect()
    }

    /// `P(W_H/W_N)` with class names.
    pub fn prym_name(&self, h: usize, n: usize) -> String {
        format!("P(W_{}/W_{})", self.names[h], self.names[n])
    }

    /// Decomposition of `JW` with a realization of every factor. Factors
    /// realized as Prym varieties come first, then intersections, then
    /// complements, each group in irreducible order; the trivial factor is
    /// `JW_G`.
    pub fn full_report(&self, max_arity: usize) -> FullReport {
        let jac = self.decompose_jacobian();
        let verdicts: Vec<Verdict> = jac
            .factors
            .par_iter()
            .map(|f| if f.irrep == 0 { Verdict::Unresolved } else { self.classify_factor(f.irrep, max_arity) })
            .collect();
        let rank = |f: &Factor, v: &Verdict| match v {
            _ if f.irrep == 0 => 0,
            Verdict::PrymPair(_) => 1,
            Verdict::Intersection(_) => 2,
            Verdict::Complement(_) => 3,
            Verdict::Unresolved => 4,
        };
        let mut order: Vec<usize> = (0..jac.factors.len()).collect();
        order.sort_by_key(|&i| (rank(&jac.factors[i], &verdicts[i]), jac.factors[i].irrep));
        let mut next_b = 1;
        let factors = order
            .into_iter()
            .map(|i| {
                let f = &jac.factors[i];
                let v = verdicts[i].clone();
                let (factor, witness) = if f.irrep == 0 {
                    ("JW_G".to_string(), "trivial representation".to_string())
                } else {
                    match &v {
                        Verdict::PrymPair(p) => (self.prym_name(p.h, p.n), format!("rho_H = W + rho_N for H = {}, N = {}", self.names[p.h], self.names[p.n])),
                        other => {
                            let name = format!("B_{next_b}");
                            next_b += 1;
                            let w = render::render_verdict(self, f.irrep, other);
                            (name, w)
                        }
                    }
                };
                ReportEntry {
                    irrep: f.irrep,
                    label: f.label.clone(),
                    exponent: f.exponent,
                    schur: f.schur.clone(),
                    conditional: f.conditional,
                    factor,
                    witness,
                    verdict: v,
                }
            })
            .collect();
        FullReport {
            subject: Subject::Jacobian,
            group_order: self.group.order(),
            conjugacy_classes: self.group.conjugacy_classes().len(),
            subgroups: self.subgroup_info(),
            factors,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    fn decomposer(g: FiniteGroup) -> Decomposer {
        let g = Arc::new(g);
        let t = CharacterTable::compute(&g).unwrap();
        Decomposer::build(g, t, &Bounds::default()).unwrap()
    }

    #[test]
    fn names_and_labels() {
        let d = decomposer(q8());
        assert_eq!(d.name(0), "1");
        assert_eq!(d.name(d.lattice().len() - 1), "G");
        assert_eq!(d.name(1), "<x^2>");
        let two = (0..d.irreps().len()).find(|&j| d.irreps().get(j).degree == 2).unwrap();
        assert_eq!(d.irrep_label(two), "2(V5)");
        assert_eq!(d.prym_name(0, 1), "P(W_1/W_<x^2>)");
    }

    #[test]
    fn cyclic_prime_order() {
        // Z/5: one rational irreducible besides the trivial one, of dimension 4.
        let d = decomposer(cyclic(5));
        assert_eq!(d.irreps().len(), 2);
        assert_eq!(d.decompose_jacobian().exponent(1), 1);
        match d.classify_factor(1, 4) {
            Verdict::PrymPair(p) => assert_eq!((p.h, p.n), (0, 1)),
            v => panic!("{v:?}"),
        }
        assert!(d.find_prym_isogenies().is_empty());
    }

    #[test]
    fn s3_decomposition() {
        let d = decomposer(s3());
        let jac = d.decompose_jacobian();
        let exps: Vec<u32> = (0..3).map(|j| jac.exponent(j)).collect();
        assert_eq!(exps, [1, 1, 2]);
        let t = d.group().parse_subgroup("x").unwrap();
        let r = d.decompose_intermediate(&t).unwrap();
        assert_eq!((r.exponent(0), r.exponent(1), r.exponent(2)), (1, 0, 1));
        assert!(!r.is_conditional());
        let text = render_report(&d, &d.decompose_prym(&t, &d.group().whole_group()).unwrap());
        assert!(text.starts_with("P(W_<x>/W_G) ~ B(V3)\n"), "{text}");
    }

    #[test]
    fn asserted_schur_index_must_agree_with_certificate() {
        let g = Arc::new(q8());
        let t = CharacterTable::compute(&g).unwrap();
        let lattice = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
        let mut irreps = RationalIrreps::new(&t, &lattice).unwrap();
        let two = irreps.resolve("5").unwrap();
        assert!(irreps.assert_schur(two, 1, "wrong").is_err());
        assert!(irreps.assert_schur(two, 2, "consistent").is_ok());
        let d = Decomposer::new(g, t, lattice, irreps).unwrap();
        assert!(!d.decompose_jacobian().is_conditional());
    }
}
