//! Galois orbits of irreducible characters, Schur index bookkeeping and the
//! decomposition of permutation characters into rational irreducibles.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use crate::chars::CharacterTable;
use crate::error::{Error, Result};
use crate::group::{Subgroup, SubgroupLattice};
use crate::numfield::{char_field_stabilizer, int, Rational, UnitSubgroup};

/// What is known about the rational Schur index `m` of an irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchurStatus {
    /// `m` is proved, with a short description of the certificate.
    Exact { m: u32, evidence: String },
    /// `m` was supplied by the user and passed the available checks.
    Asserted { m: u32, evidence: String },
    /// Only `1 ≤ m` and `m | divisor_multiple` are known.
    Bounded { divisor_multiple: u32 },
}

impl SchurStatus {
    /// The Schur index when it is exact or asserted.
    pub fn m(&self) -> Option<u32> {
        match self {
            SchurStatus::Exact { m, .. } | SchurStatus::Asserted { m, .. } => Some(*m),
            SchurStatus::Bounded { .. } => None,
        }
    }

    /// `m` if resolved, otherwise the lower bound 1.
    pub fn provisional_m(&self) -> u32 {
        self.m().unwrap_or(1)
    }

    pub fn is_resolved(&self) -> bool {
        self.m().is_some()
    }
}

impl fmt::Display for SchurStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchurStatus::Exact { m, evidence } => write!(f, "exact m = {m} ({evidence})"),
            SchurStatus::Asserted { m, evidence } => write!(f, "asserted m = {m} ({evidence})"),
            SchurStatus::Bounded { divisor_multiple } => write!(f, "bounded: m divides {divisor_multiple}"),
        }
    }
}

/// A Galois orbit `{V^σ}` of complex irreducibles; the rational irreducible
/// `W` has character `m · Σ_σ χ_{V^σ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalIrrep {
    /// Character indices, ascending.
    pub orbit: Vec<usize>,
    /// Stabilizer in `(Z/e)^×` of the character field `K`.
    pub stabilizer: UnitSubgroup,
    /// Degree `n` of each orbit member.
    pub degree: u32,
    pub schur: SchurStatus,
    /// gcd of `⟨ρ_H, V⟩` over all subgroup classes; a multiple of `m`.
    pub divisor_bound: u32,
}

impl RationalIrrep {
    /// The orbit member used for `V`.
    pub fn representative(&self) -> usize {
        self.orbit[0]
    }

    /// `[K:Q]`.
    pub fn field_degree(&self) -> usize {
        self.orbit.len()
    }

    /// `dim_Q W = m · n · [K:Q]`, using `m = 1` when unresolved.
    pub fn rational_dim(&self) -> u32 {
        self.schur.provisional_m() * self.degree * self.orbit.len() as u32
    }

    /// Label built from 1-based character indices, e.g. `V13+V14`.
    pub fn label(&self) -> String {
        self.orbit.iter().map(|i| format!("V{}", i + 1)).collect::<Vec<_>>().join("+")
    }
}

/// Partition of the characters into Galois orbits, each with the stabilizer
/// of its character field. Orbits are ordered by their least member.
pub fn galois_orbits(table: &CharacterTable) -> Result<Vec<(Vec<usize>, UnitSubgroup)>> {
    let e = table.level();
    let key = |values: &[crate::numfield::CycValue]| -> Vec<Vec<Rational>> {
        values.iter().map(|v| v.coeffs().to_vec()).collect()
    };
    let index: HashMap<Vec<Vec<Rational>>, usize> =
        table.characters().iter().enumerate().map(|(i, c)| (key(c.values()), i)).collect();
    let units = crate::numfield::Cyclotomic::new(e).units();
    let mut assigned = vec![false; table.len()];
    let mut out = Vec::new();
    for i in 0..table.len() {
        if assigned[i] {
            continue;
        }
        let values = table.character(i).values();
        let mut orbit = Vec::new();
        for &k in &units {
            let image: Vec<_> = values.iter().map(|v| v.galois(k as i64)).collect::<Result<_>>()?;
            let j = *index
                .get(&key(&image))
                .ok_or_else(|| Error::invalid(format!("Galois conjugate of character {} is not in the table", i + 1)))?;
            if !orbit.contains(&j) {
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        for &j in &orbit {
            assigned[j] = true;
        }
        let stab = char_field_stabilizer(e, values)?;
        if stab.index() != orbit.len() {
            return Err(Error::invariant(format!("orbit of character {} has size {} but [K:Q] = {}", i + 1, orbit.len(), stab.index())));
        }
        out.push((orbit, stab));
    }
    Ok(out)
}

/// `m · Tr_{K/Q} χ_V` with the resolved `m`; with an unresolved index the
/// unscaled trace character is returned and the flag is `false`.
pub fn rational_character(table: &CharacterTable, w: &RationalIrrep) -> (Vec<Rational>, bool) {
    let m = w.schur.m();
    let scale = int(m.unwrap_or(1) as i64);
    let values = (0..table.class_sizes().len())
        .map(|l| {
            let mut acc = table.character(w.orbit[0]).value(l).field().rational(int(0));
            for &j in &w.orbit {
                acc = &acc + table.character(j).value(l);
            }
            acc.to_rational().expect("orbit sums are rational") * &scale
        })
        .collect();
    (values, m.is_some())
}

/// `ρ_H = Σ_j a_j W_j` with `a_j = ⟨ρ_H, V_j⟩ / m_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoDecomposition {
    pub subgroup: Subgroup,
    /// `⟨ρ_H, V_j⟩` per rational irreducible.
    pub fixed_dims: Vec<u32>,
    pub multiplicities: Vec<u32>,
    /// Set when some nonzero entry used an unresolved Schur index.
    pub conditional: bool,
}

/// The rational irreducibles of a group with their Schur statuses.
#[derive(Clone, Debug)]
pub struct RationalIrreps {
    irreps: Vec<RationalIrrep>,
    char_to_irrep: Vec<usize>,
}

impl RationalIrreps {
    /// Orbits plus Schur statuses. `g` is the gcd of `⟨ρ_H, V⟩` over the
    /// lattice; `g = 1` certifies `m = 1`, an indicator of `-1` together with
    /// `g = 2` certifies `m = 2`, and indices declared by the table file are
    /// accepted when they divide `g`.
    pub fn new(table: &CharacterTable, lattice: &SubgroupLattice) -> Result<Self> {
        let mut irreps = Vec::new();
        let mut char_to_irrep = vec![0; table.len()];
        for (orbit, stabilizer) in galois_orbits(table)? {
            let v = orbit[0];
            let mut g = 0u32;
            for h in lattice.classes() {
                g = g.gcd(&table.fixed_dim(v, h)?);
            }
            let declared: Vec<u32> = orbit.iter().filter_map(|j| table.declared_schur().get(j).copied()).collect();
            let schur = if g == 1 {
                SchurStatus::Exact { m: 1, evidence: "some subgroup has a one-dimensional fixed space".into() }
            } else if g == 2 && table.frobenius_schur(v) == -1 {
                SchurStatus::Exact { m: 2, evidence: "Frobenius-Schur indicator -1 and fixed-space gcd 2".into() }
            } else {
                SchurStatus::Bounded { divisor_multiple: g }
            };
            let schur = match declared.first() {
                None => schur,
                Some(&m) if declared.iter().any(|&d| d != m) => {
                    return Err(Error::invalid(format!("conflicting Schur annotations on the orbit of V{}", v + 1)));
                }
                Some(&m) if g % m != 0 => {
                    return Err(Error::invalid(format!(
                        "declared Schur index {m} of V{} does not divide the fixed-space gcd {g}",
                        v + 1
                    )));
                }
                Some(&m) => match schur {
                    SchurStatus::Exact { m: known, .. } if known != m => {
                        return Err(Error::invalid(format!(
                            "declared Schur index {m} of V{} contradicts the certified value {known}",
                            v + 1
                        )));
                    }
                    SchurStatus::Exact { .. } => schur,
                    _ => SchurStatus::Asserted { m, evidence: format!("declared with the table; divides fixed-space gcd {g}") },
                },
            };
            for &j in &orbit {
                char_to_irrep[j] = irreps.len();
            }
            irreps.push(RationalIrrep { degree: table.character(v).degree(), orbit, stabilizer, schur, divisor_bound: g });
        }
        Ok(RationalIrreps { irreps, char_to_irrep })
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RationalIrrep> {
        self.irreps.iter()
    }

    pub fn get(&self, i: usize) -> &RationalIrrep {
        &self.irreps[i]
    }

    pub fn as_slice(&self) -> &[RationalIrrep] {
        &self.irreps
    }

    /// The rational irreducible containing character `j`.
    pub fn of_character(&self, j: usize) -> usize {
        self.char_to_irrep[j]
    }

    /// Resolves `"13"`, `"13-14"`, `"13,14"` or `"V13+V14"` (1-based
    /// character indices) to a rational irreducible. Every listed index must
    /// lie in one orbit.
    pub fn resolve(&self, spec: &str) -> Result<usize> {
        let parts: Vec<&str> = spec
            .split(['-', ',', '+'])
            .map(|s| s.trim().trim_start_matches(['V', 'v']))
            .filter(|s| !s.is_empty())
            .collect();
        if parts.is_empty() {
            return Err(Error::invalid(format!("empty irreducible specification {spec:?}")));
        }
        let mut found = None;
        for p in parts {
            let k: usize = p.parse().map_err(|_| Error::invalid(format!("bad irreducible index {p:?} in {spec:?}")))?;
            if k == 0 || k > self.char_to_irrep.len() {
                return Err(Error::invalid(format!("irreducible index {k} out of range")));
            }
            let w = self.char_to_irrep[k - 1];
            if found.is_some_and(|f| f != w) {
                return Err(Error::invalid(format!("{spec:?} mixes different Galois orbits")));
            }
            found = Some(w);
        }
        Ok(found.unwrap())
    }

    /// Records a user-supplied Schur index after checking it against the
    /// divisibility constraints. An exact status is never overridden.
    pub fn assert_schur(&mut self, w: usize, m: u32, evidence: impl Into<String>) -> Result<()> {
        let irrep = &mut self.irreps[w];
        if m == 0 || irrep.divisor_bound % m != 0 {
            return Err(Error::invalid(format!(
                "asserted Schur index {m} for {} does not divide the fixed-space gcd {}",
                irrep.label(),
                irrep.divisor_bound
            )));
        }
        match &irrep.schur {
            SchurStatus::Exact { m: known, .. } if *known != m => Err(Error::invalid(format!(
                "asserted Schur index {m} for {} contradicts the certified value {known}",
                irrep.label()
            ))),
            SchurStatus::Exact { .. } => Ok(()),
            _ => {
                irrep.schur = SchurStatus::Asserted { m, evidence: evidence.into() };
                Ok(())
            }
        }
    }

    /// Decomposes `ρ_H` into rational irreducibles.
    pub fn rho_decomposition(&self, table: &CharacterTable, h: &Subgroup) -> Result<RhoDecomposition> {
        let mut fixed_dims = Vec::with_capacity(self.irreps.len());
        let mut multiplicities = Vec::with_capacity(self.irreps.len());
        let mut conditional = false;
        for w in &self.irreps {
            let d = table.fixed_dim(w.representative(), h)?;
            let m = w.schur.provisional_m();
            if d % m != 0 {
                return Err(Error::invariant(format!(
                    "Schur index inconsistent with fixed-space dimension: <rho_H, {}> = {d} is not divisible by m = {m}",
                    w.label()
                )));
            }
            if d > 0 && !w.schur.is_resolved() {
                conditional = true;
            }
            fixed_dims.push(d);
            multiplicities.push(d / m);
        }
        Ok(RhoDecomposition { subgroup: h.clone(), fixed_dims, multiplicities, conditional })
    }
}
