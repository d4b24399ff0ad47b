//! Fixture manifests: named group-algebra elements written in the
//! expression language, plus relations that must hold exactly.
//!
//! ```json
//! {
//!   "group": "g80_group.json",
//!   "table": "g80_table.json",
//!   "field": {"minpoly": "t^4 - 16 t^2 + 144", "automorphisms": [...], "subfield_fixers": [0, 1]},
//!   "symbols": {"k": "(t^2 - 8)/4"},
//!   "automorphisms": {"tau": 1},
//!   "subgroups": {"H": ["x y^2"]},
//!   "irreps": {"W": "13-14"},
//!   "elements": {"e_V": "(1/20)(identity - x^10)(4 - k x + ...)"},
//!   "relations": [{"kind": "idempotent", "a": "e_V"}]
//! }
//! ```
//!
//! Every subgroup `H` also defines the element `p_H`. An optional `"rep"`
//! (a representation file over the same field) defines `rep_ell1`, ...,
//! `rep_elln`, the idempotents read off its diagonal entries; with
//! `"system": "<irrep>"` it also defines the constructed `sys_u<s><h>`,
//! `sys_k<s>`, `sys_f<s>` and `sys_e_V`. Relation kinds:
//! `idempotent`, `orthogonal`, `equal`, `zero`, `central`, `rational`,
//! `fixed_by_K`, `h_invariant`, `ideal_dim`, `central_idempotent`,
//! `fixed_dim` and `rho_difference`.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use super::expr::{evaluate, Domain};
use super::files::{field_from_json, group_from_json, read_json, rep_from_json, table_from_json};
use super::scalars::nf_symbols;
use crate::algebra::{central_idempotent_ew, ell_from_representation, projector_ph, AlgebraElement, IdempotentSystem, Transcript};
use crate::chars::{CharacterTable, RationalIrreps};
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::numfield::{Field, NfElem, NumField, Rational};

type Elem = AlgebraElement<NumField>;

struct AlgDomain<'a> {
    group: &'a Arc<FiniteGroup>,
    field: &'a NumField,
    scalars: &'a HashMap<String, NfElem>,
    elements: &'a HashMap<String, Elem>,
    autos: &'a HashMap<String, usize>,
}

impl AlgDomain<'_> {
    fn scalar(&self, c: NfElem) -> Elem {
        Elem::identity(self.group, self.field).scale(&c)
    }
}

impl Domain for AlgDomain<'_> {
    type V = Elem;

    fn number(&self, n: &BigInt) -> Elem {
        self.scalar(self.field.from_rational(&Rational::from_integer(n.clone())))
    }

    fn name(&self, name: &str) -> Option<Elem> {
        if let Some(e) = self.elements.get(name) {
            return Some(e.clone());
        }
        if let Some(c) = self.scalars.get(name) {
            return Some(self.scalar(c.clone()));
        }
        if name == "t" && self.field.degree() > 1 {
            return Some(self.scalar(self.field.generator()));
        }
        if matches!(name, "identity" | "id") {
            return Some(Elem::identity(self.group, self.field));
        }
        let s = self.group.generator_names().iter().position(|n| n == name)?;
        Some(Elem::basis(self.group, self.field, self.group.generators()[s]))
    }

    fn is_function(&self, name: &str) -> bool {
        self.autos.contains_key(name)
    }

    fn call(&self, func: &str, arg: Elem) -> Option<Result<Elem>> {
        self.autos.get(func).map(|&i| Ok(arg.apply_automorphism(i)))
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.add(b)
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.sub(b)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        a.mul(b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        a.neg()
    }

    fn inverse(&self, a: &Elem) -> Result<Elem> {
        let terms: Vec<(usize, &NfElem)> = a.support().collect();
        match terms.as_slice() {
            [(g, c)] => {
                let ci = self.field.inv(c).expect("support is nonzero");
                Ok(Elem::basis(self.group, self.field, self.group.inv(*g)).scale(&ci))
            }
            [] => Err(Error::invalid("division by zero")),
            _ => Err(Error::invalid("only scalar multiples of group elements can be inverted")),
        }
    }
}

/// Loaded manifest state: the evaluation context plus the lazily built
/// character-theoretic data.
struct Context {
    group: Arc<FiniteGroup>,
    field: NumField,
    scalars: HashMap<String, NfElem>,
    autos: HashMap<String, usize>,
    elements: HashMap<String, Elem>,
    subgroups: HashMap<String, Subgroup>,
    table: Option<CharacterTable>,
    irreps: Option<RationalIrreps>,
    labels: HashMap<String, usize>,
    bounds: Bounds,
}

impl Context {
    fn eval(&self, src: &str) -> Result<Elem> {
        let d = AlgDomain {
            group: &self.group,
            field: &self.field,
            scalars: &self.scalars,
            elements: &self.elements,
            autos: &self.autos,
        };
        evaluate(&d, src)
    }

    fn table(&self) -> Result<&CharacterTable> {
        self.table.as_ref().ok_or_else(|| Error::invalid("this relation needs a \"table\" in the manifest"))
    }

    fn irreps(&mut self) -> Result<&RationalIrreps> {
        if self.irreps.is_none() {
            let lattice = self.group.subgroups_up_to_conjugacy(&self.bounds)?;
            let irreps = RationalIrreps::new(self.table()?, &lattice)?;
            self.irreps = Some(irreps);
        }
        Ok(self.irreps.as_ref().expect("just built"))
    }

    fn subgroup(&self, name: &str) -> Result<Subgroup> {
        match name {
            "1" => Ok(self.group.trivial_subgroup()),
            "G" => Ok(self.group.whole_group()),
            _ => self.subgroups.get(name).cloned().ok_or_else(|| Error::invalid(format!("unknown subgroup {name:?}"))),
        }
    }

    /// Resolves an irreducible given as a bound label or a row spec such as
    /// `"13-14"`.
    fn irrep(&mut self, spec: &str) -> Result<usize> {
        if let Some(&w) = self.labels.get(spec) {
            return Ok(w);
        }
        self.irreps()?.resolve(spec)
    }

    fn bind(&mut self, label: &str, spec: &Value) -> Result<()> {
        let w = match spec {
            Value::String(s) => self.irrep(s)?,
            Value::Object(o) => {
                let src = o.get("element").and_then(Value::as_str).ok_or_else(|| {
                    Error::invalid(format!("irrep {label}: expected a row spec or {{\"element\": ...}}"))
                })?;
                let target = self.eval(src)?;
                let irreps = self.irreps()?.clone();
                let table = self.table()?;
                let mut found = None;
                for (i, w) in irreps.iter().enumerate() {
                    let e = central_idempotent_ew(&self.group, table, w)?.to_numfield(&self.field);
                    if e.coeffs() == target.coeffs() {
                        found = Some(i);
                        break;
                    }
                }
                found.ok_or_else(|| Error::invariant(format!("{src} is not the central idempotent of any rational irreducible")))?
            }
            other => return Err(Error::invalid(format!("irrep {label}: unsupported binding {other}"))),
        };
        self.labels.insert(label.to_string(), w);
        Ok(())
    }
}

fn str_field<'a>(r: &'a Map<String, Value>, key: &str, kind: &str) -> Result<&'a str> {
    r.get(key).and_then(Value::as_str).ok_or_else(|| Error::invalid(format!("relation {kind} needs a string \"{key}\"")))
}

fn resolve_source(v: &Value, base: &Path) -> Result<Value> {
    match v {
        Value::String(p) => read_json(&base.join(p)),
        other => Ok(other.clone()),
    }
}

/// Verifies a manifest file; paths inside it are relative to its directory.
pub fn verify_manifest(path: impl AsRef<Path>, bounds: &Bounds) -> Result<Transcript> {
    let path = path.as_ref();
    let v = read_json(path)?;
    verify_manifest_json(&v, path.parent().unwrap_or(Path::new(".")), bounds)
}

/// Checks every relation in order. Malformed manifests are errors; failed
/// relations are recorded in the transcript.
pub fn verify_manifest_json(v: &Value, base: &Path, bounds: &Bounds) -> Result<Transcript> {
    let o = v.as_object().ok_or_else(|| Error::invalid("manifest must be a JSON object"))?;
    let group_src = o.get("group").ok_or_else(|| Error::invalid("manifest needs a \"group\""))?;
    let group = Arc::new(group_from_json(&resolve_source(group_src, base)?, bounds)?);
    let table = match o.get("table") {
        Some(t) => Some(table_from_json(&group, &resolve_source(t, base)?)?),
        None => None,
    };
    let field = field_from_json(o.get("field").unwrap_or(&Value::String("Q".into())))?;
    let scalars = nf_symbols(o.get("symbols"), &field)?;
    for name in scalars.keys() {
        if group.generator_names().contains(name) {
            return Err(Error::invalid(format!("symbol {name:?} clashes with a generator name")));
        }
    }
    let mut autos = HashMap::new();
    if let Some(a) = o.get("automorphisms") {
        for (name, i) in a.as_object().ok_or_else(|| Error::invalid("\"automorphisms\" must be an object"))? {
            let i = i.as_u64().map(|i| i as usize).filter(|&i| i < field.automorphisms().len()).ok_or_else(|| {
                Error::invalid(format!("automorphism {name:?} must index the field's automorphism list"))
            })?;
            autos.insert(name.clone(), i);
        }
    }
    let mut cx = Context {
        group: group.clone(),
        field: field.clone(),
        scalars,
        autos,
        elements: HashMap::new(),
        subgroups: HashMap::new(),
        table,
        irreps: None,
        labels: HashMap::new(),
        bounds: bounds.clone(),
    };
    if let Some(s) = o.get("subgroups") {
        for (name, gens) in s.as_object().ok_or_else(|| Error::invalid("\"subgroups\" must be an object"))? {
            let words: Vec<String> =
                serde_json::from_value(gens.clone()).map_err(|e| Error::invalid(format!("subgroup {name}: {e}")))?;
            let h = group.subgroup_from_words(&words)?;
            cx.elements.insert(format!("p_{name}"), projector_ph(&group, &h).to_numfield(&field));
            cx.subgroups.insert(name.clone(), h);
        }
    }
    if let Some(r) = o.get("rep") {
        let table = cx.table.as_ref().ok_or_else(|| Error::invalid("\"rep\" needs a \"table\" in the manifest"))?;
        let rep = rep_from_json(&group, table, &resolve_source(r, base)?)?;
        if !rep.field().same(&field) {
            return Err(Error::invalid("the representation is not over the manifest's field"));
        }
        for j in 0..rep.degree() {
            let ell = ell_from_representation(&rep, j)?;
            let e = AlgebraElement::from_coeffs(&group, &field, ell.coeffs().to_vec())?;
            cx.elements.insert(format!("rep_ell{}", j + 1), e);
        }
        if let Some(spec) = o.get("system") {
            let spec = spec.as_str().ok_or_else(|| Error::invalid("\"system\" must name a rational irreducible"))?;
            let w = cx.irrep(spec)?;
            let irreps = cx.irreps()?.clone();
            let sys = IdempotentSystem::construct(&rep, cx.table()?, irreps.get(w))?;
            let own = |e: &Elem| AlgebraElement::from_coeffs(&group, &field, e.coeffs().to_vec());
            for (s, row) in sys.u.iter().enumerate() {
                for (h, u) in row.iter().enumerate() {
                    cx.elements.insert(format!("sys_u{}{}", s + 1, h + 1), own(u)?);
                }
                cx.elements.insert(format!("sys_k{}", s + 1), own(&sys.k[s])?);
                cx.elements.insert(format!("sys_f{}", s + 1), sys.f[s].to_numfield(&field));
            }
            cx.elements.insert("sys_e_V".into(), own(&sys.e_v)?);
        }
    }
    if let Some(es) = o.get("elements") {
        for (name, src) in es.as_object().ok_or_else(|| Error::invalid("\"elements\" must be an object"))? {
            let src = src.as_str().ok_or_else(|| Error::invalid(format!("element {name} must be an expression string")))?;
            let e = cx.eval(src).map_err(|e| Error::invalid(format!("element {name}: {e}")))?;
            cx.elements.insert(name.clone(), e);
        }
    }
    if let Some(ls) = o.get("irreps") {
        for (label, spec) in ls.as_object().ok_or_else(|| Error::invalid("\"irreps\" must be an object"))? {
            cx.bind(label, spec)?;
        }
    }
    let relations = o.get("relations").and_then(Value::as_array).ok_or_else(|| Error::invalid("manifest needs \"relations\""))?;
    let mut t = Transcript::new();
    for r in relations {
        check_relation(&mut cx, r, &mut t)?;
    }
    Ok(t)
}

fn check_relation(cx: &mut Context, r: &Value, t: &mut Transcript) -> Result<()> {
    let r = r.as_object().ok_or_else(|| Error::invalid("relation must be an object"))?;
    let kind = r.get("kind").and_then(Value::as_str).ok_or_else(|| Error::invalid("relation needs a \"kind\""))?;
    let a_src = || str_field(r, "a", kind);
    match kind {
        "idempotent" => {
            let a = cx.eval(a_src()?)?;
            t.check(format!("idempotent: {}", a_src()?), a.is_idempotent());
        }
        "zero" => {
            let a = cx.eval(a_src()?)?;
            t.check(format!("zero: {}", a_src()?), a.is_zero());
        }
        "central" => {
            let a = cx.eval(a_src()?)?;
            t.check(format!("central: {}", a_src()?), a.is_central());
        }
        "rational" => {
            let a = cx.eval(a_src()?)?;
            t.check(format!("rational coefficients: {}", a_src()?), a.is_rational());
        }
        "fixed_by_K" => {
            let a = cx.eval(a_src()?)?;
            let fixed = cx.field.subfield_fixers().iter().all(|&i| a.apply_automorphism(i).coeffs() == a.coeffs());
            t.check(format!("coefficients in K: {}", a_src()?), fixed);
        }
        "orthogonal" | "equal" => {
            let b_src = str_field(r, "b", kind)?;
            let a = cx.eval(a_src()?)?;
            let b = cx.eval(b_src)?;
            if kind == "equal" {
                let diff = a.sub(&b);
                let f = &cx.field;
                let shown: Vec<String> = diff
                    .support()
                    .take(6)
                    .map(|(g, _)| format!("{}: {} vs {}", cx.group.label(g), f.render(a.coeff(g)), f.render(b.coeff(g))))
                    .collect();
                let more = diff.support().count().saturating_sub(shown.len());
                let mut detail = shown.join("; ");
                if more > 0 {
                    detail.push_str(&format!("; {more} more"));
                }
                t.check_with(format!("{} = {}", a_src()?, b_src), diff.is_zero(), detail);
            } else {
                t.check(format!("orthogonal: {}, {}", a_src()?, b_src), a.is_orthogonal_to(&b));
            }
        }
        "h_invariant" => {
            let h_name = str_field(r, "subgroup", kind)?;
            let h = cx.subgroup(h_name)?;
            let a = cx.eval(a_src()?)?;
            t.check(format!("{h_name}-bi-invariant: {}", a_src()?), a.is_bi_invariant(&h));
        }
        "ideal_dim" => {
            let want = r.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::invalid("ideal_dim needs \"dim\""))? as usize;
            let over = r.get("over").and_then(Value::as_str).unwrap_or("L");
            let a = cx.eval(a_src()?)?;
            let got = match over {
                "Q" => match a.to_rational() {
                    Some(q) => Some(q.ideal_dim()),
                    None => None,
                },
                "L" => Some(a.ideal_dim()),
                other => return Err(Error::invalid(format!("ideal_dim over {other:?}: expected \"L\" or \"Q\""))),
            };
            let detail = match got {
                Some(d) => format!("got {d}"),
                None => "coefficients are not rational".into(),
            };
            t.check_with(format!("dim_{over} of the left ideal of {} = {want}", a_src()?), got == Some(want), detail);
        }
        "central_idempotent" => {
            let spec = str_field(r, "irrep", kind)?;
            let w = cx.irrep(spec)?;
            let a = cx.eval(a_src()?)?;
            let irreps = cx.irreps()?.clone();
            let e = central_idempotent_ew(&cx.group, cx.table()?, irreps.get(w))?.to_numfield(&cx.field);
            t.check(format!("{} = e_W for {}", a_src()?, irreps.get(w).label()), e.coeffs() == a.coeffs());
        }
        "fixed_dim" => {
            let h_name = str_field(r, "subgroup", kind)?;
            let spec = str_field(r, "character", kind)?;
            let want = r.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::invalid("fixed_dim needs \"dim\""))? as u32;
            let j: usize = spec.trim_start_matches(['V', 'v']).parse().map_err(|_| Error::invalid(format!("bad character {spec:?}")))?;
            let h = cx.subgroup(h_name)?;
            let table = cx.table()?;
            if j == 0 || j > table.len() {
                return Err(Error::invalid(format!("character {j} out of range")));
            }
            let got = table.fixed_dim(j - 1, &h)?;
            t.check_with(format!("<rho_{h_name}, V{j}> = {want}"), got == want, format!("got {got}"));
        }
        "rho_difference" => rho_difference(cx, r, t)?,
        other => return Err(Error::invalid(format!("unknown relation kind {other:?}"))),
    }
    Ok(())
}

/// `ρ_H − ρ_N = Σ c_L · L (+ R)`: each label names one rational irreducible
/// (bound on first use), `remainder` names a nonzero representation disjoint
/// from the labelled ones.
fn rho_difference(cx: &mut Context, r: &Map<String, Value>, t: &mut Transcript) -> Result<()> {
    let h_name = str_field(r, "h", "rho_difference")?;
    let n_name = str_field(r, "n", "rho_difference")?;
    let h = cx.subgroup(h_name)?;
    let n = cx.subgroup(n_name)?;
    let expect = r.get("expect").and_then(Value::as_object).ok_or_else(|| Error::invalid("rho_difference needs \"expect\""))?;
    let remainder = r.get("remainder").and_then(Value::as_str);
    let irreps = cx.irreps()?.clone();
    let table = cx.table()?;
    let dh = irreps.rho_decomposition(table, &h)?;
    let dn = irreps.rho_decomposition(table, &n)?;
    let mut diff: Vec<i64> = dh.multiplicities.iter().zip(&dn.multiplicities).map(|(&a, &b)| a as i64 - b as i64).collect();
    let mut desc: Vec<String> = expect.iter().map(|(l, c)| format!("{c} {l}")).collect();
    if let Some(rest) = remainder {
        desc.push(rest.to_string());
    }
    let name = format!("rho_{h_name} - rho_{n_name} = {}", desc.join(" + "));
    let mut ok = true;
    let mut detail = String::new();
    for (label, c) in expect {
        let c = c.as_i64().ok_or_else(|| Error::invalid(format!("coefficient of {label} must be an integer")))?;
        let w = match cx.labels.get(label) {
            Some(&w) => Some(w),
            None => {
                let taken: Vec<usize> = cx.labels.values().copied().collect();
                let w = (0..diff.len()).find(|&w| diff[w] == c && !taken.contains(&w));
                if let Some(w) = w {
                    cx.labels.insert(label.clone(), w);
                }
                w
            }
        };
        match w {
            Some(w) if diff[w] == c => diff[w] = 0,
            Some(w) => {
                ok = false;
                detail = format!("{label} = {} occurs {} times", irreps.get(w).label(), diff[w]);
                break;
            }
            None => {
                ok = false;
                detail = format!("no unlabelled irreducible occurs {c} times for {label}");
                break;
            }
        }
    }
    if ok {
        let rest: Vec<String> = diff
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(w, d)| format!("{d} {}", irreps.get(w).label()))
            .collect();
        if diff.iter().any(|&d| d < 0) {
            ok = false;
            detail = format!("negative remainder {}", rest.join(" + "));
        } else {
            match (remainder, rest.is_empty()) {
                (None, false) => {
                    ok = false;
                    detail = format!("unexpected {}", rest.join(" + "));
                }
                (Some(l), true) => {
                    ok = false;
                    detail = format!("{l} is zero");
                }
                (Some(l), false) => detail = format!("{l} = {}", rest.join(" + ")),
                (None, true) => {}
            }
        }
    }
    t.check_with(name, ok, detail);
    Ok(())
}
