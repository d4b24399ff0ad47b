//! Theorem-style text rendering of decompositions and realizations.

use std::fmt::Write;

use super::{Decomposer, DecompositionReport, FullReport, Subject, Verdict};

fn power(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

fn combination(d: &Decomposer, terms: &[(usize, u32)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|&(j, c)| {
            let label = d.irrep_label(j);
            match c {
                1 => label,
                _ if label.contains(['+', '(']) => format!("{c}×({label})"),
                _ => format!("{c}×{label}"),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn subject_name(s: &Subject) -> String {
    match s {
        Subject::Jacobian => "JW".into(),
        Subject::Intermediate { h } => format!("JW_{h}"),
        Subject::Prym { h, n } => format!("P(W_{h}/W_{n})"),
    }
}

/// `JW_H ~ B(V1) × B(V2)^2 × ...`, then one line per factor with its Schur
/// provenance.
pub fn render_report(_d: &Decomposer, r: &DecompositionReport) -> String {
    let mut out = String::new();
    let product = if r.factors.is_empty() {
        "0".to_string()
    } else {
        r.factors.iter().map(|f| power(&format!("B({})", f.label), f.exponent)).collect::<Vec<_>>().join(" × ")
    };
    let _ = writeln!(out, "{} ~ {product}", subject_name(&r.subject));
    let lw = r.factors.iter().map(|f| f.label.chars().count()).max().unwrap_or(0);
    for f in &r.factors {
        let flag = if f.conditional { "  [conditional on m]" } else { "" };
        let _ = writeln!(out, "  {:<lw$}  exponent {:<3} {}{flag}", f.label, f.exponent, f.schur);
    }
    out
}

/// One-line description of how a factor `B_W` is realized.
pub fn render_verdict(d: &Decomposer, w: usize, v: &Verdict) -> String {
    match v {
        Verdict::PrymPair(p) => {
            format!("{} (rho_{} = W + rho_{})", d.prym_name(p.h, p.n), d.name(p.h), d.name(p.n))
        }
        Verdict::Intersection(f) => {
            let pryms: Vec<String> = f.ns.iter().map(|&n| d.prym_name(f.h, n)).collect();
            let rels: Vec<String> = f
                .ns
                .iter()
                .zip(&f.residues)
                .map(|(&n, res)| format!("rho_{} - rho_{} = W + {}", d.name(f.h), d.name(n), combination(d, res)))
                .collect();
            format!("{} ({})", pryms.join(" ∩ "), rels.join("; "))
        }
        Verdict::Complement(c) => {
            let others: Vec<(usize, u32)> = c.difference.iter().copied().filter(|&(j, _)| j != w).collect();
            format!(
                "complement of {} inside {} (rho_{} - rho_{} = {})",
                combination(d, &others),
                d.prym_name(c.h, c.n),
                d.name(c.h),
                d.name(c.n),
                combination(d, &c.difference)
            )
        }
        Verdict::Unresolved => "unresolved".into(),
    }
}

/// The decomposition of `JW` in the shape of a theorem: the product, the
/// definitions of the `B_k`, and the associated representations.
pub fn render_full_report(_d: &Decomposer, r: &FullReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "group of order {}, {} conjugacy classes, {} subgroup classes, {} rational irreducibles",
        r.group_order,
        r.conjugacy_classes,
        r.subgroups.len(),
        r.factors.len()
    );
    let product: Vec<String> = r.factors.iter().map(|f| power(&f.factor, f.exponent)).collect();
    let _ = writeln!(out, "JW ~ {}", product.join(" × "));
    let defs: Vec<String> = r
        .factors
        .iter()
        .filter(|f| f.factor.starts_with("B_"))
        .map(|f| format!("  {} = {}", f.factor, f.witness))
        .collect();
    if !defs.is_empty() {
        let _ = writeln!(out, "where");
        for line in defs {
            let _ = writeln!(out, "{line}");
        }
    }
    let labels: Vec<String> =
        r.factors.iter().map(|f| if f.irrep == 0 { "1".to_string() } else { f.label.clone() }).collect();
    let _ = writeln!(out, "associated representations: {}", labels.join(", "));
    let _ = writeln!(out);
    let fw = r.factors.iter().map(|f| f.factor.chars().count()).max().unwrap_or(0).max(6);
    let lw = r.factors.iter().map(|f| f.label.chars().count()).max().unwrap_or(0).max(14);
    let _ = writeln!(out, "{:<fw$}  {:>8}  {:<lw$}  schur", "factor", "exponent", "representation");
    for f in &r.factors {
        let flag = if f.conditional { "  [conditional on m]" } else { "" };
        let _ = writeln!(out, "{:<fw$}  {:>8}  {:<lw$}  {}{flag}", f.factor, f.exponent, f.label, f.schur);
    }
    if r.factors.iter().any(|f| matches!(f.verdict, Verdict::Complement(_))) {
        let _ = writeln!(out);
        for f in r.factors.iter().filter(|f| matches!(f.verdict, Verdict::Complement(_))) {
            let _ = writeln!(
                out,
                "{} ({}) is not a Prym variety nor an intersection of Prym varieties within the searched arity: quasi-Prym",
                f.factor, f.label
            );
        }
    }
    out
}
