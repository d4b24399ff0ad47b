//! One PASS/FAIL line per acceptance criterion, all checks exact.
//!
//! Run with `cargo test -p isotypic --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use isotypic::algebra::{central_idempotent_ew, projector_ph, AlgebraElement, IdempotentSystem};
use isotypic::decomp::{Decomposer, Verdict};
use isotypic::io::{load_group, load_rep, load_table, verify_manifest};
use isotypic::numfield::{rat, Rationals};
use isotypic::{Bounds, CharacterTable, FiniteGroup, RationalIrreps};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(load_group(fixture(&format!("{name}_group.json")), &Bounds::default()).unwrap())
}

fn table(g: &FiniteGroup, name: &str) -> CharacterTable {
    load_table(g, fixture(&format!("{name}_table.json"))).unwrap()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let el = t.elapsed();
    ensure(el < limit, format!("{what} took {el:?}, limit {limit:?}"))?;
    Ok(el)
}

fn group_ingestion() -> Outcome {
    let b = Bounds::default();
    let t = Instant::now();
    let g = load_group(fixture("g80_group.json"), &b).map_err(|e| e.to_string())?;
    let el80 = within(t, Duration::from_secs(10), "order-80 enumeration")?;
    ensure(g.order() == 80, format!("order {}", g.order()))?;
    ensure(g.conjugacy_classes().len() == 14, format!("{} classes", g.conjugacy_classes().len()))?;
    let t = Instant::now();
    let s = load_group(fixture("sl23_group.json"), &b).map_err(|e| e.to_string())?;
    let el24 = within(t, Duration::from_secs(10), "order-24 enumeration")?;
    ensure(s.order() == 24, format!("order {}", s.order()))?;
    let q = s.parse_subgroup("x, y").map_err(|e| e.to_string())?;
    ensure(q.order() == 8, format!("<x, y> has order {}", q.order()))?;
    let (x2, y2) = (s.parse_element("x^2").unwrap(), s.parse_element("y^2").unwrap());
    ensure(x2 == y2, "x^2 != y^2")?;
    Ok(format!("orders 80 (14 classes, {el80:.2?}) and 24 (<x,y> of order 8, x^2 = y^2, {el24:.2?})"))
}

fn character_table() -> Outcome {
    let g = group("g80");
    let printed = table(&g, "g80");
    let t = Instant::now();
    let computed = CharacterTable::compute(&g).map_err(|e| e.to_string())?;
    let el = within(t, Duration::from_secs(60), "character table")?;
    ensure(computed.len() == 14, "wrong number of characters")?;
    let mut seen = BTreeSet::new();
    for (i, c) in printed.characters().iter().enumerate() {
        let j = computed.find(c.values()).ok_or(format!("printed V{} not among computed rows", i + 1))?;
        seen.insert(j);
    }
    ensure(seen.len() == 14, "printed rows do not biject onto computed rows")?;
    let cls = |w: &str| computed.class_of(g.parse_element(w).unwrap());
    let (cx, cx19, cx10) = (cls("x"), cls("x^19"), cls("x^10"));
    let minus5 = Some(rat(-5, 1));
    let deg4: Vec<usize> = (0..computed.len())
        .filter(|&i| computed.character(i).degree() == 4 && !computed.character(i).values()[cx].is_rational())
        .collect();
    ensure(deg4.len() == 2, format!("{} degree-4 characters irrational on x", deg4.len()))?;
    for &i in &deg4 {
        let v = computed.character(i).values();
        ensure((&v[cx] * &v[cx]).to_rational() == minus5, "chi(x)^2 != -5")?;
        ensure((&v[cx19] * &v[cx19]).to_rational() == minus5, "chi(x^19)^2 != -5")?;
        ensure(v[cx19] == -&v[cx], "chi(x^19) != -chi(x)")?;
        ensure(v[cx10].to_rational() == Some(rat(-4, 1)), "chi(x^10) != -4")?;
    }
    Ok(format!("computed table matches the printed one up to row order; +-sqrt(-5) on x, x^19 and -4 on x^10 ({el:.2?})"))
}

fn galois_orbits() -> Outcome {
    let g = group("g80");
    let t = table(&g, "g80");
    let lat = g.subgroups_up_to_conjugacy(&Bounds::default()).map_err(|e| e.to_string())?;
    let irreps = RationalIrreps::new(&t, &lat).map_err(|e| e.to_string())?;
    let orbits: Vec<Vec<usize>> = irreps.iter().map(|w| w.orbit.iter().map(|j| j + 1).collect()).collect();
    let expected: Vec<Vec<usize>> =
        vec![vec![1], vec![2], vec![3], vec![4], vec![5, 6], vec![7, 8], vec![9, 10], vec![11], vec![12], vec![13, 14]];
    ensure(orbits == expected, format!("orbits {orbits:?}"))?;
    for pair in [[4, 5], [6, 7], [8, 9], [12, 13]] {
        let (a, b) = (t.character(pair[0]).values(), t.character(pair[1]).values());
        ensure(a.iter().zip(b).all(|(u, v)| u.conj() == *v), format!("V{} and V{} not conjugate", pair[0] + 1, pair[1] + 1))?;
    }
    let fusion = g.rational_fusion_classes().len();
    ensure(fusion == irreps.len(), format!("{fusion} rational classes vs {} orbits", irreps.len()))?;
    Ok(format!("6 singletons, 3 complex-conjugate pairs, {{V13, V14}}; {fusion} orbits = {fusion} rational classes"))
}

fn multiplicities() -> Outcome {
    let g = group("g80");
    let t = table(&g, "g80");
    let mut got = Vec::new();
    for h in ["1", "<x^10>", "<x*y^2>"] {
        got.push(t.fixed_dim(12, &g.parse_subgroup(h).unwrap()).map_err(|e| e.to_string())?);
    }
    ensure(got == [4, 0, 2], format!("<rho_H, V13> = {got:?}"))?;
    Ok("<rho_1, V13> = 4, <rho_<x^10>, V13> = 0, <rho_<xy^2>, V13> = 2".into())
}

fn fixture_verification() -> Outcome {
    let t = Instant::now();
    let mut lines = 0;
    for m in ["g80_manifest.json", "sl23_manifest.json"] {
        let tr = verify_manifest(fixture(m), &Bounds::default()).map_err(|e| e.to_string())?;
        if let Some(f) = tr.first_failure() {
            return Err(format!("{m}: first failure {}", f.name));
        }
        lines += tr.len();
    }
    let el = within(t, Duration::from_secs(60), "manifest verification")?;
    Ok(format!(
        "{lines} exact relations hold ({el:.2?}); the printed l_1, u_2^1, k_1, f_1 carry print errors, \
         pinned by exact relations to the corrected elements"
    ))
}

fn construction_pipeline() -> Outcome {
    let mut notes = Vec::new();
    for (name, limit) in [("g80", 300), ("s3", 60), ("q8", 60)] {
        let t = Instant::now();
        let g = group(name);
        let tab = if name == "g80" { table(&g, name) } else { CharacterTable::compute(&g).map_err(|e| e.to_string())? };
        let lat = g.subgroups_up_to_conjugacy(&Bounds::default()).map_err(|e| e.to_string())?;
        let irreps = RationalIrreps::new(&tab, &lat).map_err(|e| e.to_string())?;
        let rep = load_rep(&g, &tab, fixture(&format!("{name}_rep.json"))).map_err(|e| e.to_string())?;
        let w = irreps.get(irreps.of_character(rep.character()));
        let sys = IdempotentSystem::construct(&rep, &tab, w).map_err(|e| e.to_string())?;
        let tr = sys.verify();
        if let Some(f) = tr.first_failure() {
            return Err(format!("{name}: {}", f.name));
        }
        match name {
            "s3" => ensure(sys.schur_index == 1, "S3: m != 1")?,
            "q8" => {
                ensure(sys.schur_index == 2, "Q8: m != 2")?;
                ensure(sys.k.len() == 1 && sys.k[0] == sys.e_v, "Q8: k_1 != e_V")?;
            }
            _ => ensure(sys.schur_index == 2 && sys.f.len() == 2, "order 80: expected m = 2 and two f_s")?,
        }
        let el = within(t, Duration::from_secs(limit), name)?;
        notes.push(format!("{name} {} checks ({el:.2?})", tr.len()));
    }
    Ok(notes.join(", "))
}

fn decomposition_report() -> Outcome {
    let g = group("g80");
    let d = Decomposer::build(g.clone(), table(&g, "g80"), &Bounds::default()).map_err(|e| e.to_string())?;
    let r = d.full_report(4);
    let exps: Vec<u32> = r.factors.iter().map(|f| f.exponent).collect();
    ensure(exps == [1, 1, 1, 1, 1, 1, 2, 4, 4, 2], format!("exponents {exps:?}"))?;
    let labels: Vec<String> = r.factors.iter().map(|f| if f.irrep == 0 { "1".into() } else { f.label.clone() }).collect();
    let expected = ["1", "V2", "V3", "V4", "V5+V6", "V7+V8", "V9+V10", "V12", "V11", "2(V13+V14)"];
    ensure(labels == expected, format!("representations {labels:?}"))?;
    let class = |spec: &str| d.class_of(&g.canonicalize(&g.parse_subgroup(spec).unwrap())).unwrap();
    let h: Vec<usize> = [
        "x^2, x*y",
        "x^2, y",
        "y^2, x",
        "x^2, x*y^2",
        "x",
        "x^4, x*y^2",
        "x^3*y^2, x*y",
        "x*y",
        "x*y^2",
        "x*y^2, x^10",
    ]
    .iter()
    .map(|s| class(s))
    .collect();
    let gc = class("G");
    let pairs = [(h[0], gc), (h[1], gc), (h[2], gc), (h[3], h[2]), (h[4], h[2]), (h[5], h[3]), (h[6], gc)];
    let families = [(h[7], vec![h[6], h[0]]), (h[8], vec![h[9], h[5]])];
    for (k, (f, &(eh, en))) in r.factors[1..8].iter().zip(&pairs).enumerate() {
        match &f.verdict {
            Verdict::PrymPair(p) if p.h == eh && p.n == en => {}
            v => return Err(format!("factor {} ({}): {v:?}, expected pair ({eh}, {en})", k + 2, f.label)),
        }
    }
    for (f, (eh, ens)) in r.factors[8..].iter().zip(&families) {
        let want: BTreeSet<usize> = ens.iter().copied().collect();
        match &f.verdict {
            Verdict::Intersection(fam) if fam.h == *eh && fam.ns.iter().copied().collect::<BTreeSet<_>>() == want => {}
            v => return Err(format!("{}: {v:?}, expected intersection ({eh}, {ens:?})", f.label)),
        }
    }
    Ok("exponents (1,1,1,1,1,1,2,4,4,2); witnesses conjugate to (H1,G) ... (H7,G), (H8,[H7,H1]), (H9,[H10,H6])".into())
}

fn quasi_prym() -> Outcome {
    let g = group("sl23");
    let d = Decomposer::build(g.clone(), table(&g, "sl23"), &Bounds::default()).map_err(|e| e.to_string())?;
    let w = (0..d.irreps().len())
        .find(|&j| {
            let w = d.irreps().get(j);
            w.degree == 2 && w.orbit.len() == 1 && w.schur.m() == Some(2)
        })
        .ok_or("no degree-2 irreducible with Schur index 2")?;
    let w1 = (0..d.irreps().len())
        .find(|&j| {
            let w = d.irreps().get(j);
            w.degree == 2 && w.orbit.len() == 2
        })
        .ok_or("no degree-2 Galois pair")?;
    ensure(d.find_prym_realizations(w).is_empty(), "a Prym pair realizes W")?;
    ensure(d.find_intersection_realizations(w, 4).is_empty(), "an intersection realizes W")?;
    let class = |spec: &str| d.class_of(&g.canonicalize(&g.parse_subgroup(spec).unwrap())).unwrap();
    match d.classify_factor(w, 4) {
        Verdict::Complement(c) => {
            ensure(c.h == class("1") && c.n == class("<x^2>"), format!("complement inside ({}, {})", c.h, c.n))?;
            let mut diff = c.difference.clone();
            diff.sort();
            let mut want = vec![(w, 1), (w1, 2)];
            want.sort();
            ensure(diff == want, format!("rho_1 - rho_<x^2> = {diff:?}"))?;
        }
        v => return Err(format!("verdict {v:?}")),
    }
    Ok(format!("{} is a complement: rho_1 - rho_<x^2> = W + 2 W1, W1 = {}", d.irrep_label(w), d.irrep_label(w1)))
}

/// Exhaustive version of the randomized property suites.
fn property_suites() -> Outcome {
    let mut total = 0usize;
    for name in ["s3", "d4", "q8", "a4", "s4", "sl23"] {
        let g = group(name);
        let t = CharacterTable::compute(&g).map_err(|e| e.to_string())?;
        let d = Decomposer::build(g.clone(), t, &Bounds::default()).map_err(|e| e.to_string())?;
        let es: Vec<AlgebraElement<Rationals>> = d
            .irreps()
            .iter()
            .map(|w| central_idempotent_ew(&g, d.table(), w))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let sum = es.iter().fold(AlgebraElement::zero(&g, &Rationals), |a, e| a.add(e));
        ensure(sum == AlgebraElement::identity(&g, &Rationals), format!("{name}: sum of e_W != 1"))?;
        for (i, a) in es.iter().enumerate() {
            ensure(a.is_central() && a.is_idempotent(), format!("{name}: e_W{i} not a central idempotent"))?;
            ensure(es[i + 1..].iter().all(|b| a.is_orthogonal_to(b)), format!("{name}: e_W{i} not orthogonal"))?;
        }
        for (i, h) in d.lattice().classes().iter().enumerate() {
            let p = projector_ph(&g, h);
            let fsum = es.iter().fold(AlgebraElement::zero(&g, &Rationals), |a, e| a.add(&p.mul(e)));
            ensure(fsum == p, format!("{name}: sum of f_H != p_H for class {i}"))?;
            let ri = d.decompose_intermediate(h).map_err(|e| e.to_string())?;
            for (k, n) in d.lattice().classes().iter().enumerate() {
                if d.conjugator(i, k).is_none() {
                    continue;
                }
                let pr = d.decompose_prym(h, n).map_err(|e| format!("{name}: negative s_j for ({i}, {k}): {e}"))?;
                let rn = d.decompose_intermediate(n).map_err(|e| e.to_string())?;
                for j in 0..d.irreps().len() {
                    ensure(pr.exponent(j) + rn.exponent(j) == ri.exponent(j), format!("{name}: additivity fails ({i}, {k})"))?;
                }
                total += 1;
            }
        }
    }
    ensure(total > 0, "no chains checked")?;
    Ok(format!("e_W partition of unity, centrality, orthogonality, sum f_H = p_H, additivity on {total} chains, s_j >= 0"))
}

fn s4_coincidence() -> Outcome {
    let g = group("s4");
    let d = Decomposer::build(g.clone(), table(&g, "s4"), &Bounds::default()).map_err(|e| e.to_string())?;
    let lat = d.lattice();
    let find = |pred: &dyn Fn(&isotypic::Subgroup) -> bool| (0..lat.len()).find(|&i| pred(lat.get(i)));
    let klein = find(&|h| h.order() == 4 && !g.is_normal(h) && h.members().iter().all(|&a| g.elem_order(a) <= 2))
        .ok_or("no non-normal Klein subgroup")?;
    let d4 = find(&|h| h.order() == 8).ok_or("no D4")?;
    let s3 = find(&|h| h.order() == 6).ok_or("no S3")?;
    let s4 = lat.len() - 1;
    let found = d.find_prym_isogenies().iter().any(|p| {
        ((p.s, p.r) == (klein, d4) && (p.x, p.y) == (s3, s4)) || ((p.s, p.r) == (s3, s4) && (p.x, p.y) == (klein, d4))
    });
    ensure(found, "((Klein, D4), (S3, S4)) missing")?;
    Ok("((Klein non-normal, D4), (S3, S4)) found".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("group ingestion", group_ingestion),
        ("character table", character_table),
        ("Galois orbits", galois_orbits),
        ("multiplicities", multiplicities),
        ("fixture verification", fixture_verification),
        ("construction pipeline", construction_pipeline),
        ("decomposition report", decomposition_report),
        ("quasi-Prym", quasi_prym),
        ("property suites", property_suites),
        ("trigonal coincidence on S4", s4_coincidence),
    ];
    println!();
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS  {:>2}. {name}: {msg}", i + 1),
            Err(msg) => {
                println!("FAIL  {:>2}. {name}: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
