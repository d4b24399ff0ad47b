//! Central idempotents `e_V`, `e_W` and the subgroup idempotents `p_H`, `f_H`.

use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::chars::{CharacterTable, RationalIrrep};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::numfield::{int, Cyclotomic, Rational, Rationals};

fn check_table(g: &FiniteGroup, table: &CharacterTable) -> Result<()> {
    if table.group_order() != g.order() {
        return Err(Error::invalid("character table belongs to a different group"));
    }
    Ok(())
}

/// `e_V = (n/|G|) Σ_g χ_V(g⁻¹) g` over `Q(ζ_e)`.
pub fn central_idempotent_ev(g: &Arc<FiniteGroup>, table: &CharacterTable, v: usize) -> Result<AlgebraElement<Cyclotomic>> {
    check_table(g, table)?;
    let field = Cyclotomic::new(table.level());
    let factor = Rational::new(table.character(v).degree().into(), (g.order() as u32).into());
    let coeffs = (0..g.order()).map(|a| table.value_at(v, g.inv(a)).scale(&factor)).collect();
    AlgebraElement::from_coeffs(g, &field, coeffs)
}

/// `e_W = (n/|G|) Σ_g Tr_{K/Q}(χ_V(g⁻¹)) g`; independent of the Schur index.
pub fn central_idempotent_ew(g: &Arc<FiniteGroup>, table: &CharacterTable, w: &RationalIrrep) -> Result<AlgebraElement<Rationals>> {
    check_table(g, table)?;
    let factor = Rational::new(w.degree.into(), (g.order() as u32).into());
    let field = Cyclotomic::new(table.level());
    let coeffs = (0..g.order())
        .map(|a| {
            let inv = g.inv(a);
            let mut s = field.rational(int(0));
            for &j in &w.orbit {
                s = &s + table.value_at(j, inv);
            }
            s.to_rational().map(|q| q * &factor).ok_or_else(|| Error::invariant("orbit trace is not rational"))
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraElement::from_coeffs(g, &Rationals, coeffs)
}

/// `p_H = (1/|H|) Σ_{h∈H} h`.
pub fn projector_ph(g: &Arc<FiniteGroup>, h: &Subgroup) -> AlgebraElement<Rationals> {
    let c = Rational::new(1.into(), (h.order() as u32).into());
    AlgebraElement::rational(g, h.members().iter().map(|&a| (a, c.clone()))).expect("subgroup elements are in range")
}

/// `f_H = p_H · e_W`.
pub fn subgroup_idempotent_fh(
    g: &Arc<FiniteGroup>,
    table: &CharacterTable,
    h: &Subgroup,
    w: &RationalIrrep,
) -> Result<AlgebraElement<Rationals>> {
    Ok(projector_ph(g, h).mul(&central_idempotent_ew(g, table, w)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::RationalIrreps;
    use crate::config::Bounds;
    use crate::numfield::rat;
    use crate::testing::*;

    fn setup(g: FiniteGroup) -> (Arc<FiniteGroup>, CharacterTable, RationalIrreps) {
        let g = Arc::new(g);
        let t = CharacterTable::compute(&g).unwrap();
        let lat = g.subgroups_up_to_conjugacy(&Bounds::default()).unwrap();
        let irreps = RationalIrreps::new(&t, &lat).unwrap();
        (g, t, irreps)
    }

    #[test]
    fn q8_two_dimensional_block() {
        let (g, t, irreps) = setup(q8());
        let ev = central_idempotent_ev(&g, &t, 4).unwrap();
        let z = g.parse_element("x^2").unwrap();
        let expect = AlgebraElement::rational(&g, [(0, rat(1, 2)), (z, rat(-1, 2))]).unwrap();
        assert_eq!(ev.to_rational().unwrap(), expect);
        let ew = central_idempotent_ew(&g, &t, irreps.get(irreps.of_character(4))).unwrap();
        assert_eq!(ew, expect);
    }

    #[test]
    fn trivial_character_and_projectors() {
        let (g, t, irreps) = setup(s3());
        let e1 = central_idempotent_ew(&g, &t, irreps.get(0)).unwrap();
        let whole = projector_ph(&g, &g.whole_group());
        assert_eq!(e1, whole);
        assert_eq!(projector_ph(&g, &g.trivial_subgroup()), AlgebraElement::identity(&g, &Rationals));
        let h = g.subgroup_from_words(&["x"]).unwrap();
        let ph = projector_ph(&g, &h);
        assert!(ph.is_idempotent());
        assert!(ph.is_bi_invariant(&h));
        // standard representation with a transposition: ideal dimension 1·2·1
        let std = irreps.iter().position(|w| w.degree == 2).unwrap();
        let fh = subgroup_idempotent_fh(&g, &t, &h, irreps.get(std)).unwrap();
        assert!(fh.is_idempotent());
        assert_eq!(fh.ideal_dim(), 2);
    }

    #[test]
    fn central_idempotents_partition_unity() {
        for grp in [s3(), d4(), q8(), a4(), s4(), sl23()] {
            let (g, t, irreps) = setup(grp);
            let mut sum = AlgebraElement::zero(&g, &Rationals);
            let es: Vec<_> = irreps.iter().map(|w| central_idempotent_ew(&g, &t, w).unwrap()).collect();
            for (i, e) in es.iter().enumerate() {
                assert!(e.is_idempotent() && e.is_central());
                for f in &es[i + 1..] {
                    assert!(e.is_orthogonal_to(f));
                }
                sum = sum.add(e);
            }
            assert_eq!(sum, AlgebraElement::identity(&g, &Rationals));
            for v in 0..t.len() {
                let ev = central_idempotent_ev(&g, &t, v).unwrap();
                assert!(ev.is_idempotent() && ev.is_central());
                let n = t.character(v).degree() as usize;
                assert_eq!(ev.ideal_dim(), n * n);
            }
        }
    }
}
