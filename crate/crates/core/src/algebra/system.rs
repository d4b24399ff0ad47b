//! Primitive idempotents from a matrix representation: `ℓ_j`, the orbit
//! modules `M_j`, the blocks `u_s^h`, and the symmetrizations `k_s`, `f_s`.

use std::sync::Arc;

use crate::algebra::{central_idempotent_ev, central_idempotent_ew, AlgebraElement, MatrixRep, Transcript};
use crate::chars::{CharacterTable, RationalIrrep};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::numfield::{Field, NumField, Rational, Rationals};

/// `ℓ_j = (n/|G|) Σ_g r_jj(g⁻¹) g`.
pub fn ell_from_representation(rep: &MatrixRep, j: usize) -> Result<AlgebraElement<NumField>> {
    let g = rep.group();
    let n = rep.degree();
    if j >= n {
        return Err(Error::invalid(format!("diagonal index {} out of range for degree {n}", j + 1)));
    }
    let f = rep.field();
    let factor = Rational::new((n as i64).into(), (g.order() as i64).into());
    let coeffs = (0..g.order()).map(|a| f.scale(&rep.matrix(g.inv(a))[j][j], &factor)).collect();
    AlgebraElement::from_coeffs(g, f, coeffs)
}

/// Verdict on `M_j = Σ_{τ ∈ Gal(L/K)} L[G] τ(ℓ_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitModuleCheck {
    /// No `τ ≠ 1` maps `L[G]ℓ_j` to itself.
    pub stabilizer_trivial: bool,
    /// The sum defining `M_j` is direct.
    pub direct: bool,
    /// `dim_L M_j`.
    pub dim: usize,
    /// `[L:K] · n`.
    pub expected_dim: usize,
}

impl OrbitModuleCheck {
    pub fn passed(&self) -> bool {
        self.stabilizer_trivial && self.direct && self.dim == self.expected_dim
    }
}

fn orbit_span(ell: &AlgebraElement<NumField>, into: &mut Echelon<NumField>) {
    let f = ell.field();
    for &t in f.subfield_fixers() {
        let image = ell.apply_automorphism(t);
        for g in 0..ell.group().order() {
            into.insert(image.left_translate(g).coeffs());
        }
    }
}

/// Dimension and directness of `M_j` for the idempotent `ℓ` of an
/// `n`-dimensional representation.
pub fn orbit_module_check(ell: &AlgebraElement<NumField>, n: usize) -> OrbitModuleCheck {
    let f = ell.field();
    let fixers = f.subfield_fixers();
    let id = f.identity_index();
    let stabilizer_trivial = fixers.iter().filter(|&&t| t != id).all(|&t| !ell.ideal_contains(&ell.apply_automorphism(t)));
    let mut span = Echelon::new(f.clone(), ell.group().order());
    orbit_span(ell, &mut span);
    let expected_dim = fixers.len() * n;
    let dim = span.rank();
    OrbitModuleCheck { stabilizer_trivial, direct: dim == expected_dim, dim, expected_dim }
}

/// The outcome of the construction: blocks `u_s^h` with `u_s^h = τ_h(u_s^1)`,
/// `k_s ∈ K[G]` and `f_s ∈ Q[G]`.
#[derive(Clone, Debug)]
pub struct IdempotentSystem {
    pub degree: usize,
    /// `m = [L:K]`.
    pub schur_index: usize,
    /// `[K:Q]`.
    pub field_degree: usize,
    pub ells: Vec<AlgebraElement<NumField>>,
    /// 0-based indices `j_s` of the selected `ℓ_j`.
    pub selected: Vec<usize>,
    /// Automorphism indices of `Gal(L/K)`, identity first.
    pub tau: Vec<usize>,
    /// Automorphism indices representing `Gal(K/Q)`, identity first.
    pub phi: Vec<usize>,
    /// `u[s][h]`.
    pub u: Vec<Vec<AlgebraElement<NumField>>>,
    pub k: Vec<AlgebraElement<NumField>>,
    pub f: Vec<AlgebraElement<Rationals>>,
    pub e_v: AlgebraElement<NumField>,
    pub e_w: AlgebraElement<Rationals>,
    pub orbit_checks: Vec<OrbitModuleCheck>,
}

impl IdempotentSystem {
    /// Greedy selection of `ℓ_j` outside the current span, a basis of each
    /// `L[G]ℓ_{j_s}` from the first independent translates `g·ℓ_{j_s}`, its
    /// `Gal(L/K)` images, and the coordinates of `e_V` in that basis.
    pub fn construct(rep: &MatrixRep, table: &CharacterTable, w: &RationalIrrep) -> Result<Self> {
        let g: &Arc<_> = rep.group();
        let f = rep.field();
        let n = rep.degree();
        let order = g.order();
        if !w.orbit.contains(&rep.character()) {
            return Err(Error::invalid("representation does not belong to the given rational irreducible"));
        }
        let id = f.identity_index();
        let mut tau: Vec<usize> = vec![id];
        tau.extend(f.subfield_fixers().iter().copied().filter(|&t| t != id));
        let phi = f.coset_reps_over_fixers();
        let m = tau.len();
        if n % m != 0 {
            return Err(Error::invalid(format!("field degree inconsistent with Schur index: m = {m} does not divide n = {n}")));
        }
        let ev_k = central_idempotent_ev(g, table, rep.character())?;
        let emb = rep.embedding();
        let e_v = AlgebraElement::from_coeffs(g, f, ev_k.coeffs().iter().map(|c| emb.embed(c)).collect::<Result<_>>()?)?;
        let e_w = central_idempotent_ew(g, table, w)?;

        let ells = (0..n).map(|j| ell_from_representation(rep, j)).collect::<Result<Vec<_>>>()?;
        let mut span = Echelon::new(f.clone(), order);
        let mut selected = Vec::new();
        let mut orbit_checks = Vec::new();
        for (j, ell) in ells.iter().enumerate() {
            if span.contains(ell.coeffs()) {
                continue;
            }
            let check = orbit_module_check(ell, n);
            if !check.passed() {
                return Err(Error::invariant(format!(
                    "orbit module of l_{} fails: stabilizer trivial {}, direct {}, dim {} (expected {})",
                    j + 1,
                    check.stabilizer_trivial,
                    check.direct,
                    check.dim,
                    check.expected_dim
                )));
            }
            orbit_span(ell, &mut span);
            selected.push(j);
            orbit_checks.push(check);
        }
        if selected.len() * m != n {
            return Err(Error::invariant(format!(
                "field degree inconsistent with Schur index: {} blocks selected, expected n/m = {}",
                selected.len(),
                n / m
            )));
        }

        // B = ∪_{s,h} τ_h(B_s^1), in block order
        let mut basis: Vec<(usize, usize, AlgebraElement<NumField>)> = Vec::new();
        for (s, &j) in selected.iter().enumerate() {
            let mut local = Echelon::new(f.clone(), order);
            let mut b1 = Vec::new();
            for a in 0..order {
                let v = ells[j].left_translate(a);
                if local.insert(v.coeffs()) {
                    b1.push(v);
                    if b1.len() == n {
                        break;
                    }
                }
            }
            if b1.len() != n {
                return Err(Error::invariant(format!("basis assembly failed: L[G]l_{} has dimension {}", j + 1, b1.len())));
            }
            for (h, &t) in tau.iter().enumerate() {
                for b in &b1 {
                    basis.push((s, h, b.apply_automorphism(t)));
                }
            }
        }
        let mut solver = Echelon::tracking(f.clone(), order);
        for (_, _, b) in &basis {
            if !solver.insert(b.coeffs()) {
                return Err(Error::invariant("basis assembly failed: blocks are not independent"));
            }
        }
        let coords = solver
            .express(e_v.coeffs())
            .ok_or_else(|| Error::invariant("basis assembly failed: e_V is not in the span of the blocks"))?;
        let blocks = selected.len();
        let mut u = vec![vec![AlgebraElement::zero(g, f); m]; blocks];
        for ((s, h, b), c) in basis.iter().zip(&coords) {
            if !f.is_zero(c) {
                u[*s][*h] = u[*s][*h].add(&b.scale(c));
            }
        }
        let k: Vec<_> = (0..blocks)
            .map(|s| tau.iter().fold(AlgebraElement::zero(g, f), |acc, &t| acc.add(&u[s][0].apply_automorphism(t))))
            .collect();
        let fs = k
            .iter()
            .map(|ks| {
                phi.iter()
                    .fold(AlgebraElement::zero(g, f), |acc, &p| acc.add(&ks.apply_automorphism(p)))
                    .to_rational()
                    .ok_or_else(|| Error::invariant("f_s has irrational coefficients"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IdempotentSystem {
            degree: n,
            schur_index: m,
            field_degree: phi.len(),
            ells,
            selected,
            tau,
            phi,
            u,
            k,
            f: fs,
            e_v,
            e_w,
            orbit_checks,
        })
    }

    /// Every conclusion about `ℓ_j`, `u_s^h`, `k_s` and `f_s`, as exact checks.
    pub fn verify(&self) -> Transcript {
        let mut t = Transcript::new();
        let (n, m) = (self.degree, self.schur_index);
        let field = self.e_v.field().clone();

        let mut sum = AlgebraElement::zero(self.e_v.group(), &field);
        for (j, l) in self.ells.iter().enumerate() {
            t.check(format!("l_{} idempotent", j + 1), l.is_idempotent());
            t.check_with(format!("l_{} primitive", j + 1), l.ideal_dim() == n, format!("dim_L L[G]l = {n}"));
            for (i, other) in self.ells.iter().enumerate().skip(j + 1) {
                t.check(format!("l_{} l_{} orthogonal", j + 1, i + 1), l.is_orthogonal_to(other));
            }
            sum = sum.add(l);
        }
        t.check("sum of l_j equals e_V", sum == self.e_v);
        for (s, c) in self.orbit_checks.iter().enumerate() {
            t.check_with(
                format!("orbit module of l_{}", self.selected[s] + 1),
                c.passed(),
                format!("stabilizer trivial {}, direct {}, dim {}", c.stabilizer_trivial, c.direct, c.dim),
            );
        }
        let mut modules: Vec<Echelon<NumField>> = Vec::new();
        for l in &self.ells {
            let mut e = Echelon::new(field.clone(), l.group().order());
            orbit_span(l, &mut e);
            modules.push(e);
        }
        let mut equal_or_disjoint = true;
        for i in 0..modules.len() {
            for j in i + 1..modules.len() {
                let mut joint = modules[i].clone();
                for r in modules[j].rows() {
                    joint.insert(r);
                }
                let (a, b, c) = (modules[i].rank(), modules[j].rank(), joint.rank());
                equal_or_disjoint &= (c == a && a == b) || c == a + b;
            }
        }
        t.check("orbit modules pairwise equal or independent", equal_or_disjoint);

        let mut total = AlgebraElement::zero(self.e_v.group(), &field);
        let all_u: Vec<(usize, usize, &AlgebraElement<NumField>)> = self
            .u
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().enumerate().map(move |(h, x)| (s, h, x)))
            .collect();
        let mut table_ok = true;
        for &(s, h, x) in &all_u {
            t.check(
                format!("u_{}^{} = tau_{}(u_{}^1)", s + 1, h + 1, h + 1, s + 1),
                *x == self.u[s][0].apply_automorphism(self.tau[h]),
            );
            for &(s2, h2, y) in &all_u {
                let p = x.mul(y);
                let ok = if (s, h) == (s2, h2) { p == *x } else { p.is_zero() };
                table_ok &= ok;
            }
            total = total.add(x);
        }
        t.check("u_s^h u_t^l = delta u_s^h", table_ok);
        t.check("sum of u_s^h equals e_V", total == self.e_v);
        for (s, x) in self.u.iter().enumerate() {
            t.check_with(format!("u_{}^1 primitive", s + 1), x[0].ideal_dim() == n, format!("dim_L = {n}"));
        }

        let mut ksum = AlgebraElement::zero(self.e_v.group(), &field);
        for (s, k) in self.k.iter().enumerate() {
            let in_k = self.tau.iter().all(|&x| k.apply_automorphism(x) == *k);
            t.check(format!("k_{} has coefficients in K", s + 1), in_k);
            t.check(format!("k_{} idempotent", s + 1), k.is_idempotent());
            t.check_with(format!("k_{} primitive", s + 1), k.ideal_dim() == m * n, format!("dim_L = {}", m * n));
            for (s2, k2) in self.k.iter().enumerate().skip(s + 1) {
                t.check(format!("k_{} k_{} orthogonal", s + 1, s2 + 1), k.is_orthogonal_to(k2));
            }
            ksum = ksum.add(k);
        }
        t.check("sum of k_s equals e_V", ksum == self.e_v);
        let conj: Vec<(usize, usize, AlgebraElement<NumField>)> = self
            .phi
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| self.k.iter().enumerate().map(move |(s, k)| (i, s, k.apply_automorphism(p))))
            .collect();
        let mut conj_ok = true;
        for (i, s, a) in &conj {
            for (j, s2, b) in &conj {
                let p = a.mul(b);
                conj_ok &= if (i, s) == (j, s2) { p == *a } else { p.is_zero() };
            }
        }
        t.check("phi_i(k_s) phi_j(k_t) = delta phi_i(k_s)", conj_ok);

        let mut fsum = AlgebraElement::zero(self.e_w.group(), &Rationals);
        let dim_w = m * n * self.field_degree;
        for (s, x) in self.f.iter().enumerate() {
            t.check(format!("f_{} idempotent", s + 1), x.is_idempotent());
            t.check_with(format!("f_{} primitive", s + 1), x.ideal_dim() == dim_w, format!("dim_Q = {dim_w}"));
            for (s2, y) in self.f.iter().enumerate().skip(s + 1) {
                t.check(format!("f_{} f_{} orthogonal", s + 1, s2 + 1), x.is_orthogonal_to(y));
            }
            fsum = fsum.add(x);
        }
        t.check("sum of f_s equals e_W", fsum == self.e_w);
        t
    }
}
