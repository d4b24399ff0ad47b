use std::sync::Arc;

use isotypic::algebra::{
    central_idempotent_ew, projector_ph, AlgebraElement, IdempotentSystem, MatrixRep, Transcript,
};
use isotypic::decomp::{render_full_report, render_report, render_verdict, Decomposer, Verdict};
use isotypic::io::{group_to_json, load_group, load_rep, load_table, table_to_json, verify_manifest, AnyElement};
use isotypic::numfield::Field;
use isotypic::{Bounds, CharacterTable, Error, FiniteGroup, RationalIrreps, Result};
use serde_json::{json, Value};

use crate::{Cli, Command, DecomposeSubject, GlobalOpts, IdempotentKind};

/// Rendered output of a command. `passed` is false when a verification
/// transcript contains a failure.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, passed: true }
    }
}

struct Session {
    opts: GlobalOpts,
    bounds: Bounds,
    group: Arc<FiniteGroup>,
    table: CharacterTable,
}

impl Session {
    fn open(opts: &GlobalOpts) -> Result<Self> {
        let bounds = Bounds {
            max_group_order: opts.max_group_order,
            max_lattice_order: opts.max_lattice_order,
            max_intersection_arity: opts.max_intersection_arity,
        };
        let path = opts.group.as_ref().ok_or_else(|| Error::invalid("--group is required for this command"))?;
        let group = Arc::new(load_group(path, &bounds)?);
        let table = match &opts.table {
            Some(p) => load_table(&group, p)?,
            None => CharacterTable::compute(&group)?,
        };
        Ok(Session { opts: opts.clone(), bounds, group, table })
    }

    /// Rational irreducibles with the `--assert-schur` annotations applied.
    fn decomposer(&self) -> Result<Decomposer> {
        let lattice = self.group.subgroups_up_to_conjugacy(&self.bounds)?;
        let mut irreps = RationalIrreps::new(&self.table, &lattice)?;
        for a in &self.opts.assert_schur {
            let (spec, m) = a
                .rsplit_once('=')
                .ok_or_else(|| Error::invalid(format!("--assert-schur expects IRREP=m, got {a:?}")))?;
            let m: u32 = m.trim().parse().map_err(|_| Error::invalid(format!("bad Schur index in {a:?}")))?;
            let w = irreps.resolve(spec)?;
            irreps.assert_schur(w, m, "asserted on the command line")?;
        }
        Decomposer::new(self.group.clone(), self.table.clone(), lattice, irreps)
    }

    fn reps(&self) -> Result<Vec<MatrixRep>> {
        self.opts.rep.iter().map(|p| load_rep(&self.group, &self.table, p)).collect()
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    if let Command::Verify { manifest } = &cli.command {
        let bounds = Bounds { max_group_order: cli.opts.max_group_order, ..Bounds::default() };
        return Ok(transcript_output(verify_manifest(manifest, &bounds)?, json!({"manifest": manifest})));
    }
    let s = Session::open(&cli.opts)?;
    match &cli.command {
        Command::GroupInfo => group_info(&s),
        Command::Chartable => chartable(&s),
        Command::Idempotents { which } => idempotents(&s, which),
        Command::Decompose { subject } => decompose(&s, subject),
        Command::Classify { irrep } => classify(&s, irrep.as_deref()),
        Command::FullReport => {
            let d = s.decomposer()?;
            let r = d.full_report(s.opts.max_intersection_arity);
            Ok(Output::ok(render_full_report(&d, &r), serde_json::to_value(&r)?))
        }
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

fn transcript_output(t: Transcript, mut json: Value) -> Output {
    let passed = t.all_passed();
    let mut text = t.to_string();
    if let Some(f) = t.first_failure() {
        text.push_str(&format!("first failure: {}\n", f.name));
    }
    json["passed"] = json!(passed);
    json["checks"] = serde_json::to_value(&t).expect("transcript serializes")["checks"].clone();
    Output { text, json, passed }
}

fn group_info(s: &Session) -> Result<Output> {
    let g = &s.group;
    let lattice = g.subgroups_up_to_conjugacy(&s.bounds);
    let mut text = format!("order {}, {} classes", g.order(), g.conjugacy_classes().len());
    if let Ok(l) = &lattice {
        text.push_str(&format!(", {} subgroup classes", l.len()));
    }
    text.push('\n');
    text.push_str(&format!("generators: {}\n", g.generator_names().join(", ")));
    text.push_str(&format!("{:<4} {:<16} {:>6} {:>6}\n", "", "representative", "size", "order"));
    let mut classes = Vec::new();
    for (i, c) in g.conjugacy_classes().iter().enumerate() {
        let r = c.representative;
        text.push_str(&format!("C{:<3} {:<16} {:>6} {:>6}\n", i + 1, g.label(r), c.size(), g.elem_order(r)));
        classes.push(json!({"representative": g.label(r), "size": c.size(), "order": g.elem_order(r)}));
    }
    let mut json = json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "classes": classes,
        "group": group_to_json(g),
    });
    match lattice {
        Ok(l) => json["subgroup_classes"] = json!(l.len()),
        Err(Error::Bound(_)) => json["subgroup_classes"] = Value::Null,
        Err(e) => return Err(e),
    }
    Ok(Output::ok(text, json))
}

fn chartable(s: &Session) -> Result<Output> {
    let (g, t) = (&s.group, &s.table);
    let cells: Vec<Vec<String>> = t.characters().iter().map(|c| c.values().iter().map(|v| v.to_string()).collect()).collect();
    let heads: Vec<String> = t.class_representatives().iter().map(|&a| g.label(a).to_string()).collect();
    let width = cells.iter().flatten().chain(&heads).map(|c| c.chars().count()).max().unwrap_or(1);
    let mut text = format!("{:<5}", "");
    for h in &heads {
        text.push_str(&format!(" {h:>width$}"));
    }
    text.push('\n');
    for (i, row) in cells.iter().enumerate() {
        text.push_str(&format!("{:<5}", format!("V{}", i + 1)));
        for c in row {
            text.push_str(&format!(" {c:>width$}"));
        }
        text.push('\n');
    }
    Ok(Output::ok(text, table_to_json(g, t)))
}

fn element_json<F: Field>(name: &str, a: &AlgebraElement<F>, any: AnyElement) -> Value {
    json!({"name": name, "display": a.to_string(), "element": any.to_json()})
}

fn idempotents(s: &Session, which: &IdempotentKind) -> Result<Output> {
    let d = s.decomposer()?;
    let g = &s.group;
    let mut t = Transcript::new();
    let mut text = String::new();
    let mut elements = Vec::new();
    match which {
        IdempotentKind::Central { irrep } => {
            let ws: Vec<usize> = match irrep {
                Some(spec) => vec![d.irreps().resolve(spec)?],
                None => (0..d.irreps().len()).collect(),
            };
            let mut all = Vec::new();
            for &w in &ws {
                let e = central_idempotent_ew(g, &s.table, d.irreps().get(w))?;
                let name = format!("e_{}", d.irreps().get(w).label());
                t.check(format!("{name} idempotent"), e.is_idempotent());
                t.check(format!("{name} central"), e.is_central());
                text.push_str(&format!("{name} = {e}\n"));
                elements.push(element_json(&name, &e, AnyElement::Rational(e.clone())));
                all.push(e);
            }
            if irrep.is_none() {
                let sum = all.iter().fold(AlgebraElement::zero(g, &isotypic::numfield::Rationals), |acc, e| acc.add(e));
                t.check("sum of e_W equals 1", sum == AlgebraElement::identity(g, &isotypic::numfield::Rationals));
                let orth = all.iter().enumerate().all(|(i, a)| all[i + 1..].iter().all(|b| a.is_orthogonal_to(b)));
                t.check("e_W pairwise orthogonal", orth);
            }
        }
        IdempotentKind::Subgroup { h, irrep } => {
            let h = g.parse_subgroup(h)?;
            let w = d.irreps().resolve(irrep)?;
            let wi = d.irreps().get(w);
            let f = projector_ph(g, &h).mul(&central_idempotent_ew(g, &s.table, wi)?);
            let fixed = s.table.fixed_dim(wi.representative(), &h)?;
            t.check("f_H idempotent", f.is_idempotent());
            t.check("f_H bi-invariant under H", f.is_bi_invariant(&h));
            t.check_with("f_H = 0 iff dim V^H = 0", f.is_zero() == (fixed == 0), format!("dim V^H = {fixed}"));
            if fixed > 0 {
                let expect = fixed as usize * wi.degree as usize * wi.field_degree();
                t.check_with("dim_Q Q[G]f_H", f.ideal_dim() == expect, format!("expected {expect}"));
            } else {
                text.push_str("dim V^H = 0, so f_H is zero\n");
            }
            text.push_str(&format!("f_H = {f}\n"));
            elements.push(element_json("f_H", &f, AnyElement::Rational(f.clone())));
        }
        IdempotentKind::Primitive { irrep } => {
            let reps = s.reps()?;
            if reps.is_empty() {
                return Err(Error::invalid("primitive idempotents need a representation file (--rep)"));
            }
            let wanted = irrep.as_deref().map(|spec| d.irreps().resolve(spec)).transpose()?;
            let rep = reps
                .iter()
                .find(|r| wanted.is_none_or(|w| d.irreps().of_character(r.character()) == w))
                .ok_or_else(|| Error::invalid("no --rep file affords the requested irreducible"))?;
            let w = d.irreps().get(d.irreps().of_character(rep.character()));
            let sys = IdempotentSystem::construct(rep, &s.table, w)?;
            t.extend(sys.verify());
            for (i, row) in sys.u.iter().enumerate() {
                for (h, u) in row.iter().enumerate() {
                    let name = format!("u_{}^{}", i + 1, h + 1);
                    text.push_str(&format!("{name} = {u}\n"));
                    elements.push(element_json(&name, u, AnyElement::NumField(u.clone())));
                }
            }
            for (i, k) in sys.k.iter().enumerate() {
                let name = format!("k_{}", i + 1);
                text.push_str(&format!("{name} = {k}\n"));
                elements.push(element_json(&name, k, AnyElement::NumField(k.clone())));
            }
            for (i, f) in sys.f.iter().enumerate() {
                let name = format!("f_{}", i + 1);
                text.push_str(&format!("{name} = {f}\n"));
                elements.push(element_json(&name, f, AnyElement::Rational(f.clone())));
            }
        }
    }
    let mut out = transcript_output(t, json!({"elements": elements}));
    out.text = text + &out.text;
    Ok(out)
}

fn decompose(s: &Session, subject: &DecomposeSubject) -> Result<Output> {
    let d = s.decomposer()?;
    let g = &s.group;
    let r = match subject {
        DecomposeSubject::Jacobian => d.decompose_jacobian(),
        DecomposeSubject::Intermediate { h } => d.decompose_intermediate(&g.parse_subgroup(h)?)?,
        DecomposeSubject::Prym { h, n } => d.decompose_prym(&g.parse_subgroup(h)?, &g.parse_subgroup(n)?)?,
    };
    Ok(Output::ok(render_report(&d, &r), serde_json::to_value(&r)?))
}

fn classify(s: &Session, irrep: Option<&str>) -> Result<Output> {
    let d = s.decomposer()?;
    let ws: Vec<usize> = match irrep {
        Some(spec) => vec![d.irreps().resolve(spec)?],
        None => (1..d.irreps().len()).collect(),
    };
    let arity = s.opts.max_intersection_arity;
    let mut text = String::new();
    let mut rows = Vec::new();
    for w in ws {
        let v = if w == 0 { Verdict::Unresolved } else { d.classify_factor(w, arity) };
        let line = if w == 0 { "JW_G".to_string() } else { render_verdict(&d, w, &v) };
        text.push_str(&format!("{}: {line}\n", d.irrep_label(w)));
        rows.push(json!({"irrep": w, "label": d.irrep_label(w), "witness": line, "verdict": v}));
    }
    Ok(Output::ok(text, json!({"max_intersection_arity": arity, "factors": rows})))
}
