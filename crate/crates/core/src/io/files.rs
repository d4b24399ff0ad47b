//! JSON file formats for groups, character tables, number fields, matrix
//! representations and group-algebra elements.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use super::scalars::{
    cyc_from_json, cyc_symbols, cyc_to_json, nf_from_json, nf_symbols, nf_to_json, poly_from_json, rational_from_json,
    rational_to_json,
};
use crate::algebra::{AlgebraElement, Embedding, MatrixRep};
use crate::chars::CharacterTable;
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Presentation};
use crate::numfield::{char_field_stabilizer, Cyclotomic, Field, NfElem, NumField, Rational, Rationals};

pub(crate) fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::invalid(format!("{what} must be a JSON object")))
}

fn usize_table(v: &Value, what: &str) -> Result<Vec<Vec<usize>>> {
    serde_json::from_value(v.clone()).map_err(|e| Error::invalid(format!("{what}: {e}")))
}

/// Reads a group file holding exactly one of `presentation`, `permutations`
/// or `cayley`. A declared `"order"` must agree with the group.
pub fn group_from_json(v: &Value, bounds: &Bounds) -> Result<FiniteGroup> {
    let o = object(v, "group file")?;
    let sources: Vec<&str> =
        ["presentation", "permutations", "cayley"].into_iter().filter(|k| o.contains_key(*k)).collect();
    if sources.len() != 1 {
        return Err(Error::invalid(format!(
            "group file must contain exactly one of presentation, permutations, cayley (found {})",
            if sources.is_empty() { "none".to_string() } else { sources.join(", ") }
        )));
    }
    let names = match o.get("names") {
        Some(n) => Some(
            serde_json::from_value::<Vec<String>>(n.clone())
                .map_err(|e| Error::invalid(format!("names: {e}")))?,
        ),
        None => None,
    };
    let g = match sources[0] {
        "presentation" => {
            let mut p: Presentation = serde_json::from_value(o["presentation"].clone())
                .map_err(|e| Error::invalid(format!("presentation: {e}")))?;
            if p.names.is_none() {
                p.names = names;
            }
            FiniteGroup::from_presentation(&p, bounds)?
        }
        "permutations" => FiniteGroup::from_permutations(&usize_table(&o["permutations"], "permutations")?, names, bounds)?,
        _ => {
            let table = usize_table(&o["cayley"], "cayley")?;
            if table.len() > bounds.max_group_order {
                return Err(Error::bound(format!(
                    "group order {} exceeds the configured maximum {}",
                    table.len(),
                    bounds.max_group_order
                )));
            }
            FiniteGroup::from_cayley_table(&table)?
        }
    };
    if let Some(n) = o.get("order").and_then(Value::as_u64) {
        if n as usize != g.order() {
            return Err(Error::invalid(format!("declared order {n} but the group has order {}", g.order())));
        }
    }
    Ok(g)
}

pub fn load_group(path: impl AsRef<Path>, bounds: &Bounds) -> Result<FiniteGroup> {
    group_from_json(&read_json(path.as_ref())?, bounds)
}

/// `{"order", "names", "permutations", "labels"}`: the generators as
/// permutations of the elements under right multiplication, which reloads
/// with the same element numbering and words.
pub fn group_to_json(g: &FiniteGroup) -> Value {
    let perms: Vec<Vec<usize>> =
        g.generators().iter().map(|&s| (0..g.order()).map(|a| g.mul(a, s)).collect()).collect();
    json!({"order": g.order(), "names": g.generator_names(), "permutations": perms, "labels": g.labels()})
}

fn element_ref(g: &FiniteGroup, v: &Value) -> Result<usize> {
    match v {
        Value::String(s) => g.parse_element(s),
        Value::Number(n) => n
            .as_u64()
            .map(|k| k as usize)
            .filter(|&k| k < g.order())
            .ok_or_else(|| Error::invalid(format!("element index {n} out of range"))),
        other => Err(Error::invalid(format!("expected an element word or index, got {other}"))),
    }
}

/// Reads a character table file and re-columns it to the group's class
/// order. Values may be `{"level", "coeffs"}` objects, integers or
/// expressions in roots of unity (`w20^3`, `-2 w4`) and declared symbols.
/// An optional `"schur": {"13": 2}` declares Schur indices by 1-based row.
pub fn table_from_json(g: &FiniteGroup, v: &Value) -> Result<CharacterTable> {
    let o = object(v, "character table file")?;
    let level = o
        .get("level")
        .and_then(Value::as_u64)
        .filter(|&l| l > 0 && l <= u32::MAX as u64)
        .ok_or_else(|| Error::invalid("character table needs a positive \"level\""))? as u32;
    let cyc = Cyclotomic::new(level);
    let symbols = cyc_symbols(o.get("symbols"), &cyc)?;
    let classes = o.get("classes").and_then(Value::as_array).ok_or_else(|| Error::invalid("missing \"classes\" list"))?;
    let r = g.conjugacy_classes().len();
    if classes.len() != r {
        return Err(Error::invalid(format!("table lists {} classes, the group has {r}", classes.len())));
    }
    let mut column_class = Vec::with_capacity(r);
    let mut seen = vec![false; r];
    for c in classes {
        let k = g.class_of(element_ref(g, c)?);
        if std::mem::replace(&mut seen[k], true) {
            return Err(Error::invalid(format!("class {c} listed twice")));
        }
        column_class.push(k);
    }
    let chars = o.get("chars").and_then(Value::as_array).ok_or_else(|| Error::invalid("missing \"chars\" list"))?;
    let mut rows = Vec::with_capacity(chars.len());
    for (i, row) in chars.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Error::invalid(format!("character {} is not a list", i + 1)))?;
        if row.len() != r {
            return Err(Error::invalid(format!("character {} has {} values, expected {r}", i + 1, row.len())));
        }
        let mut values = vec![cyc.rational(Rational::zero()); r];
        for (x, &k) in row.iter().zip(&column_class) {
            values[k] = cyc_from_json(x, &cyc, &symbols).map_err(|e| Error::invalid(format!("character {}: {e}", i + 1)))?;
        }
        rows.push(values);
    }
    let mut schur = BTreeMap::new();
    if let Some(s) = o.get("schur") {
        for (k, m) in object(s, "\"schur\"")? {
            let i: usize = k.trim_start_matches(['V', 'v']).parse().map_err(|_| Error::invalid(format!("bad Schur key {k:?}")))?;
            let m = m.as_u64().filter(|&m| m > 0).ok_or_else(|| Error::invalid(format!("bad Schur index for {k}")))?;
            if i == 0 {
                return Err(Error::invalid("Schur keys are 1-based"));
            }
            schur.insert(i - 1, m as u32);
        }
    }
    CharacterTable::from_rows(g, rows, schur)
}

pub fn load_table(g: &FiniteGroup, path: impl AsRef<Path>) -> Result<CharacterTable> {
    table_from_json(g, &read_json(path.as_ref())?)
}

pub fn table_to_json(g: &FiniteGroup, t: &CharacterTable) -> Value {
    let classes: Vec<&str> = t.class_representatives().iter().map(|&a| g.label(a)).collect();
    let chars: Vec<Vec<Value>> = t.characters().iter().map(|c| c.values().iter().map(cyc_to_json).collect()).collect();
    let mut v = json!({"level": t.level(), "classes": classes, "class_sizes": t.class_sizes(), "chars": chars});
    if !t.declared_schur().is_empty() {
        let s: Map<String, Value> = t.declared_schur().iter().map(|(&i, &m)| ((i + 1).to_string(), json!(m))).collect();
        v["schur"] = Value::Object(s);
    }
    v
}

/// Reads `"Q"` or `{"minpoly", "automorphisms", "subfield_fixers"}`;
/// polynomials are coefficient lists (constant first) or expressions in `t`.
pub fn field_from_json(v: &Value) -> Result<NumField> {
    if v.as_str().is_some_and(|s| s == "Q") {
        return Ok(NumField::rationals());
    }
    let o = object(v, "field descriptor")?;
    let minpoly = poly_from_json(o.get("minpoly").ok_or_else(|| Error::invalid("field descriptor needs \"minpoly\""))?)?;
    let autos = o
        .get("automorphisms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::invalid("field descriptor needs an \"automorphisms\" list"))?
        .iter()
        .map(poly_from_json)
        .collect::<Result<Vec<_>>>()?;
    let fixers: Vec<usize> = match o.get("subfield_fixers") {
        Some(f) => serde_json::from_value(f.clone()).map_err(|e| Error::invalid(format!("subfield_fixers: {e}")))?,
        None => vec![0],
    };
    NumField::new(minpoly, autos, fixers)
}

pub fn field_to_json(f: &NumField) -> Value {
    if f.degree() == 1 {
        return json!("Q");
    }
    let poly = |p: &crate::numfield::QPoly| Value::Array(p.coeffs().iter().map(rational_to_json).collect());
    json!({
        "minpoly": poly(f.minpoly()),
        "automorphisms": f.automorphisms().iter().map(poly).collect::<Vec<_>>(),
        "subfield_fixers": f.subfield_fixers(),
    })
}

/// Reads a matrix representation file:
/// `{"field", "symbols"?, "generators": [matrix per generator],
///   "character"? (1-based), "embedding"?: {"generator", "image"}}`.
/// Without an embedding the character field must be `Q`.
pub fn rep_from_json(g: &Arc<FiniteGroup>, table: &CharacterTable, v: &Value) -> Result<MatrixRep> {
    let o = object(v, "representation file")?;
    let field = field_from_json(o.get("field").unwrap_or(&json!("Q")))?;
    let symbols = nf_symbols(o.get("symbols"), &field)?;
    let gens = o.get("generators").and_then(Value::as_array).ok_or_else(|| Error::invalid("missing \"generators\""))?;
    let mut matrices = Vec::with_capacity(gens.len());
    for (s, m) in gens.iter().enumerate() {
        let rows = m.as_array().ok_or_else(|| Error::invalid(format!("generator matrix {} is not a list", s + 1)))?;
        let mut mat: Vec<Vec<NfElem>> = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| Error::invalid(format!("generator matrix {} has a non-list row", s + 1)))?;
            mat.push(row.iter().map(|x| nf_from_json(x, &field, &symbols)).collect::<Result<_>>()?);
        }
        matrices.push(mat);
    }
    let character = match o.get("character") {
        None | Some(Value::Null) => None,
        Some(c) => {
            let j = c.as_u64().filter(|&j| j > 0).ok_or_else(|| Error::invalid("\"character\" is a 1-based row index"))?;
            Some(j as usize - 1)
        }
    };
    let level = table.level();
    let embedding = match o.get("embedding") {
        None | Some(Value::Null) => Embedding::rational(&field, level),
        Some(e) => {
            let e = object(e, "embedding")?;
            let cyc = Cyclotomic::new(level);
            let gamma = cyc_from_json(e.get("generator").ok_or_else(|| Error::invalid("embedding needs \"generator\""))?, &cyc, &HashMap::new())?;
            let image = nf_from_json(e.get("image").ok_or_else(|| Error::invalid("embedding needs \"image\""))?, &field, &symbols)?;
            let stabilizer = match character {
                Some(j) if j < table.len() => char_field_stabilizer(level, table.character(j).values())?,
                _ => char_field_stabilizer(level, std::slice::from_ref(&gamma))?,
            };
            Embedding::new(&field, gamma, image, &stabilizer)?
        }
    };
    MatrixRep::new(g, table, &field, matrices, embedding, character)
}

pub fn load_rep(g: &Arc<FiniteGroup>, table: &CharacterTable, path: impl AsRef<Path>) -> Result<MatrixRep> {
    rep_from_json(g, table, &read_json(path.as_ref())?)
}

/// A group-algebra element over whichever field its file declares.
#[derive(Clone, Debug)]
pub enum AnyElement {
    Rational(AlgebraElement<Rationals>),
    Cyclotomic(AlgebraElement<Cyclotomic>),
    NumField(AlgebraElement<NumField>),
}

impl AnyElement {
    pub fn to_json(&self) -> Value {
        fn terms<F: Field>(a: &AlgebraElement<F>, enc: impl Fn(&F::Elem) -> Value) -> Value {
            Value::Array(a.support().map(|(g, c)| json!([g, enc(c)])).collect())
        }
        match self {
            AnyElement::Rational(a) => json!({"field": "Q", "coeffs": terms(a, rational_to_json)}),
            AnyElement::Cyclotomic(a) => {
                json!({"field": {"cyclotomic": a.field().level()}, "coeffs": terms(a, cyc_to_json)})
            }
            AnyElement::NumField(a) => {
                let f = a.field().clone();
                json!({"field": field_to_json(&f), "coeffs": terms(a, |c| nf_to_json(&f, c))})
            }
        }
    }

    pub fn from_json(g: &Arc<FiniteGroup>, v: &Value) -> Result<Self> {
        let o = object(v, "algebra element file")?;
        let q = json!("Q");
        let field = o.get("field").unwrap_or(&q);
        let coeffs = o.get("coeffs").and_then(Value::as_array).ok_or_else(|| Error::invalid("missing \"coeffs\""))?;
        let pairs = coeffs
            .iter()
            .map(|t| match t.as_array().map(Vec::as_slice) {
                Some([idx, c]) => Ok((element_ref(g, idx)?, c)),
                _ => Err(Error::invalid(format!("coefficient entry {t} is not [element, scalar]"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if field.as_str() == Some("Q") {
            let terms = pairs.into_iter().map(|(i, c)| Ok((i, rational_from_json(c)?))).collect::<Result<Vec<_>>>()?;
            return Ok(AnyElement::Rational(AlgebraElement::from_sparse(g, &Rationals, terms)?));
        }
        if let Some(e) = field.get("cyclotomic") {
            let e = e.as_u64().filter(|&e| e > 0).ok_or_else(|| Error::invalid("bad cyclotomic level"))?;
            let cyc = Cyclotomic::new(e as u32);
            let none = HashMap::new();
            let terms = pairs.into_iter().map(|(i, c)| Ok((i, cyc_from_json(c, &cyc, &none)?))).collect::<Result<Vec<_>>>()?;
            return Ok(AnyElement::Cyclotomic(AlgebraElement::from_sparse(g, &cyc, terms)?));
        }
        let nf = field_from_json(field)?;
        let symbols = nf_symbols(o.get("symbols"), &nf)?;
        let terms = pairs.into_iter().map(|(i, c)| Ok((i, nf_from_json(c, &nf, &symbols)?))).collect::<Result<Vec<_>>>()?;
        Ok(AnyElement::NumField(AlgebraElement::from_sparse(g, &nf, terms)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing;

    #[test]
    fn group_file_sources() {
        let b = Bounds::default();
        let p = json!({"presentation": {"generators": 2, "relators": [[1,1,1],[2,2],[-2,1,2,1]]}});
        assert_eq!(group_from_json(&p, &b).unwrap().order(), 6);
        let s = json!({"permutations": [[1,2,0],[1,0,2]], "names": ["a", "b"]});
        let g = group_from_json(&s, &b).unwrap();
        assert_eq!(g.generator_names(), ["a", "b"]);
        let back = group_from_json(&group_to_json(&g), &b).unwrap();
        assert_eq!(back.order(), 6);
        assert_eq!(back.cayley_table(), g.cayley_table());
        for bad in [json!({}), json!({"cayley": [[0]], "permutations": [[0]]}), json!({"cayley": [[0, 1], [0, 1]]})] {
            assert!(group_from_json(&bad, &b).is_err());
        }
    }

    #[test]
    fn table_round_trip_and_recolumning() {
        let g = testing::s3();
        let t = CharacterTable::compute(&g).unwrap();
        let back = table_from_json(&g, &table_to_json(&g, &t)).unwrap();
        assert_eq!(back.characters(), t.characters());
        // same table with the columns listed in reverse order
        let mut v = table_to_json(&g, &t);
        v["classes"].as_array_mut().unwrap().reverse();
        for row in v["chars"].as_array_mut().unwrap() {
            row.as_array_mut().unwrap().reverse();
        }
        assert_eq!(table_from_json(&g, &v).unwrap().characters(), t.characters());
        v["classes"][0] = v["classes"][1].clone();
        assert!(table_from_json(&g, &v).is_err());
    }

    #[test]
    fn element_file_round_trip() {
        let g = Arc::new(testing::q8());
        let f = field_from_json(&json!({"minpoly": "t^2 + 1", "automorphisms": ["t", "-t"], "subfield_fixers": [0, 1]})).unwrap();
        let a = AlgebraElement::from_sparse(&g, &f, [(1, f.generator()), (3, f.one())]).unwrap();
        let v = AnyElement::NumField(a.clone()).to_json();
        let AnyElement::NumField(b) = AnyElement::from_json(&g, &v).unwrap() else { panic!("field kind") };
        assert_eq!(b.coeffs(), a.coeffs());
        let q = json!({"field": "Q", "coeffs": [["x^2", "1/2"], [0, "1/2"]]});
        let AnyElement::Rational(q) = AnyElement::from_json(&g, &q).unwrap() else { panic!("field kind") };
        assert!(q.is_idempotent());
    }
}
