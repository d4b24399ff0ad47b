//! Matrix representations over a declared number field `L`, with an explicit
//! embedding of the character field `K ⊂ Q(ζ_e)` into `L`.

use std::sync::Arc;

use crate::chars::CharacterTable;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::Echelon;
use crate::numfield::{char_field_stabilizer, CycValue, Cyclotomic, Field, NfElem, NumField, Rational, Rationals, UnitSubgroup};

pub type Matrix = Vec<Vec<NfElem>>;

/// `K → L` determined by the image of a primitive element `γ` of `K`.
#[derive(Clone, Debug)]
pub struct Embedding {
    field: NumField,
    gamma: CycValue,
    image: NfElem,
    stabilizer: UnitSubgroup,
    powers: Echelon<Rationals>,
    image_powers: Vec<NfElem>,
}

impl Embedding {
    /// Validates that `γ` generates the fixed field `K` of `stabilizer`, that
    /// `image` is a root of the minimal polynomial of `γ`, and that `L`'s
    /// declared subfield fixers cut out exactly the image of `K`.
    pub fn new(field: &NumField, gamma: CycValue, image: NfElem, stabilizer: &UnitSubgroup) -> Result<Self> {
        let e = stabilizer.modulus();
        let gamma = gamma.to_level(e)?;
        if !stabilizer.fixes(&gamma) {
            return Err(Error::invalid("embedding generator does not lie in the character field"));
        }
        let reps = stabilizer.coset_reps();
        let conjugates: Vec<CycValue> = reps.iter().map(|&k| gamma.galois(k as i64)).collect::<Result<_>>()?;
        for i in 0..conjugates.len() {
            for j in i + 1..conjugates.len() {
                if conjugates[i] == conjugates[j] {
                    return Err(Error::invalid("embedding generator does not generate the character field"));
                }
            }
        }
        let d = conjugates.len();
        // minimal polynomial Π (X - γ^σ), coefficients constant first
        let cyc = Cyclotomic::new(e);
        let mut poly = vec![cyc.rational(Rational::from_integer(1.into()))];
        for c in &conjugates {
            let mut next = vec![cyc.rational(Rational::from_integer(0.into())); poly.len() + 1];
            for (i, a) in poly.iter().enumerate() {
                next[i + 1] = &next[i + 1] + a;
                next[i] = &next[i] - &(a * c);
            }
            poly = next;
        }
        let mut value = field.zero();
        for coef in poly.iter().rev() {
            let q = coef.to_rational().ok_or_else(|| Error::invariant("minimal polynomial is not rational"))?;
            value = field.add(&field.mul(&value, &image), &field.from_rational(&q));
        }
        if !field.is_zero(&value) {
            return Err(Error::invalid("declared image is not a root of the generator's minimal polynomial"));
        }
        let fixers = field.subfield_fixers();
        if field.automorphisms().len() != fixers.len() * d {
            return Err(Error::invalid(format!(
                "[L:Q]/|Gal(L/K)| = {}/{} does not match [K:Q] = {d}",
                field.automorphisms().len(),
                fixers.len()
            )));
        }
        if fixers.iter().any(|&i| field.apply_automorphism(i, &image) != image) {
            return Err(Error::invalid("Gal(L/K) does not fix the image of the character field"));
        }
        let mut powers = Echelon::tracking(Rationals, cyc.phi());
        let mut image_powers = Vec::with_capacity(d);
        let mut gp = cyc.rational(Rational::from_integer(1.into()));
        let mut ip = field.one();
        for _ in 0..d {
            powers.insert(gp.coeffs());
            image_powers.push(ip.clone());
            gp = &gp * &gamma;
            ip = field.mul(&ip, &image);
        }
        Ok(Embedding { field: field.clone(), gamma, image, stabilizer: stabilizer.clone(), powers, image_powers })
    }

    /// The embedding of `Q` into `L`.
    pub fn rational(field: &NumField, level: u32) -> Self {
        let cyc = Cyclotomic::new(level);
        Self::new(field, cyc.rational(Rational::from_integer(1.into())), field.one(), &UnitSubgroup::full(level))
            .expect("Q embeds into every field")
    }

    pub fn field(&self) -> &NumField {
        &self.field
    }

    pub fn generator(&self) -> (&CycValue, &NfElem) {
        (&self.gamma, &self.image)
    }

    pub fn stabilizer(&self) -> &UnitSubgroup {
        &self.stabilizer
    }

    /// `ι(v)` for `v ∈ K`.
    pub fn embed(&self, v: &CycValue) -> Result<NfElem> {
        let v = v.to_level(self.stabilizer.modulus())?;
        let coeffs = self
            .powers
            .express(v.coeffs())
            .ok_or_else(|| Error::invalid(format!("value {v} does not lie in the embedded character field")))?;
        let f = &self.field;
        let mut out = f.zero();
        for (c, p) in coeffs.iter().zip(&self.image_powers) {
            out = f.add(&out, &f.scale(p, c));
        }
        Ok(out)
    }
}

fn mat_mul(f: &NumField, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = f.zero();
                    for k in 0..n {
                        if !f.is_zero(&a[i][k]) && !f.is_zero(&b[k][j]) {
                            f.mul_add_assign(&mut s, &a[i][k], &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn identity(f: &NumField, n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
}

/// An `L`-representation given by generator matrices, extended to every
/// element along the group's spanning tree and checked for multiplicativity.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    group: Arc<FiniteGroup>,
    field: NumField,
    degree: usize,
    matrices: Vec<Matrix>,
    embedding: Embedding,
    character: usize,
}

impl MatrixRep {
    /// `character` links the representation to a row of `table`; when absent
    /// it is detected from the traces.
    pub fn new(
        group: &Arc<FiniteGroup>,
        table: &CharacterTable,
        field: &NumField,
        generator_matrices: Vec<Matrix>,
        embedding: Embedding,
        character: Option<usize>,
    ) -> Result<Self> {
        let inconsistent = |msg: String| Error::invalid(format!("representation inconsistent with character: {msg}"));
        if generator_matrices.len() != group.generators().len() {
            return Err(Error::invalid(format!(
                "{} generator matrices given for {} generators",
                generator_matrices.len(),
                group.generators().len()
            )));
        }
        let n = generator_matrices.first().map_or(0, Vec::len);
        if n == 0 || generator_matrices.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(Error::invalid("generator matrices must be square of a common positive size"));
        }
        if !embedding.field().same(field) {
            return Err(Error::invalid("embedding targets a different field"));
        }
        let order = group.order();
        let mut matrices: Vec<Matrix> = vec![Vec::new(); order];
        matrices[0] = identity(field, n);
        let mut by_depth: Vec<usize> = (1..order).collect();
        by_depth.sort_by_key(|&a| group.tree_word(a).len());
        for a in by_depth {
            let (p, s) = group.tree_step(a).expect("non-identity elements have a parent");
            matrices[a] = mat_mul(field, &matrices[p], &generator_matrices[s]);
        }
        for a in 0..order {
            for (s, &gen) in group.generators().iter().enumerate() {
                if mat_mul(field, &matrices[a], &generator_matrices[s]) != matrices[group.mul(a, gen)] {
                    return Err(Error::invalid(format!(
                        "matrices are not multiplicative: M({})·M({}) != M({})",
                        group.label(a),
                        group.generator_names()[s],
                        group.label(group.mul(a, gen))
                    )));
                }
            }
        }
        let traces: Vec<NfElem> = table
            .class_representatives()
            .iter()
            .map(|&a| {
                let mut s = field.zero();
                for i in 0..n {
                    s = field.add(&s, &matrices[a][i][i]);
                }
                s
            })
            .collect();
        let matches = |j: usize| -> Result<bool> {
            let stab = char_field_stabilizer(table.level(), table.character(j).values())?;
            if stab != *embedding.stabilizer() {
                return Ok(false);
            }
            for (l, t) in traces.iter().enumerate() {
                if embedding.embed(table.character(j).value(l))? != *t {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let character = match character {
            Some(j) => {
                if j >= table.len() {
                    return Err(inconsistent(format!("character index {} out of range", j + 1)));
                }
                if !matches(j)? {
                    return Err(inconsistent(format!("traces do not match character {}", j + 1)));
                }
                j
            }
            None => {
                let mut found = None;
                for j in 0..table.len() {
                    if matches(j)? {
                        found = Some(j);
                        break;
                    }
                }
                found.ok_or_else(|| inconsistent("traces match no irreducible character".into()))?
            }
        };
        if table.character(character).degree() as usize != n {
            return Err(inconsistent("degree mismatch".into()));
        }
        Ok(MatrixRep { group: group.clone(), field: field.clone(), degree: n, matrices, embedding, character })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &NumField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self, a: usize) -> &Matrix {
        &self.matrices[a]
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// Index of the linked irreducible character.
    pub fn character(&self) -> usize {
        self.character
    }
}
