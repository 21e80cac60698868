use std::fs;
use std::path::Path;

use confhom::certificates::{certificates, run_certificate, CheckOptions};
use confhom::complex::{closed_surface_homology, hn_presentation, homology_cl, kernel_k, TwoComplexPresentation};
use confhom::graded::{johnson_a, johnson_closed_form, sn_quotient_membership, TensorElt};
use confhom::magnus::icfg_kernel;
use confhom::surfaces::{a_edge, act_endomorphism, delta_zeta, EndoSpec, SurfaceSpec};
use confhom::{ConfError, EdgeAlphabet};
use serde_json::{json, Value};

use crate::budget;
use crate::report::{group_json, matrix_json, matrix_text, Report};

#[derive(Debug)]
pub enum CliError {
    /// Rejected input; exit code 2.
    Input(String),
    /// A broken internal invariant such as ∂² ≠ 0; exit code 1.
    Internal(String),
}

impl From<ConfError> for CliError {
    fn from(e: ConfError) -> Self {
        match e {
            ConfError::BoundarySquare(_) | ConfError::KernelNotPreserved | ConfError::Overflow | ConfError::Lin(_) => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// Genus g with p ≥ 1 punctures: ζ on a₁…a₋g plus p − 1 free edges.
fn punctured(genus: usize, punctures: usize) -> CliResult<SurfaceSpec> {
    if punctures == 0 {
        return Err(CliError::Input("an open surface needs at least one puncture (use `closed` for closed surfaces)".into()));
    }
    Ok(SurfaceSpec::new(genus, punctures - 1))
}

fn guard(estimate: f64, force: bool) -> CliResult<()> {
    if estimate > budget::LIMIT && !force {
        return Err(CliError::Input(format!(
            "estimated basis size {estimate:.3e} exceeds {:.0e}; pass --force to run anyway",
            budget::LIMIT
        )));
    }
    Ok(())
}

pub fn homology(genus: usize, punctures: usize, points: usize, codim: usize, force: bool) -> CliResult<Report> {
    let spec = punctured(genus, punctures)?;
    let p = spec.presentation();
    guard(budget::bar_cells(p.alphabet().len(), points), force)?;
    let h = homology_cl(&p, points, codim)?;
    let mut r = Report::new("homology");
    r.set("genus", genus).set("punctures", punctures).set("points", points).set("codim", codim);
    r.set("degree", points + codim).group(&h);
    r.line(format!("H^cl_{}(conf_{points}) = {h}", points + codim));
    Ok(r)
}

pub fn group(path: &Path, points: usize, force: bool) -> CliResult<Report> {
    let p = TwoComplexPresentation::parse(&read_file(path)?)?;
    guard(budget::u1_basis(p.alphabet().len(), points), force)?;
    let hn = hn_presentation(&p, points);
    let mut r = Report::new("group");
    r.set("generators", p.alphabet().len()).set("relators", p.relators().len()).set("points", points);
    r.set("u1_basis", hn.basis().len()).group(hn.invariants());
    r.line(format!("H_{points} = {}", hn.invariants()));
    r.line(format!("({} generators, {} relators, {} basis elements over the 1-skeleton)", p.alphabet().len(), p.relators().len(), hn.basis().len()));
    Ok(r)
}

pub fn delta_zeta_cmd(genus: usize, order: usize, force: bool) -> CliResult<Report> {
    if order == 0 {
        return Err(CliError::Input("order must be at least 1".into()));
    }
    guard(budget::u1_basis(2 * genus, order), force)?;
    let al = EdgeAlphabet::surface(genus, 0);
    let x = delta_zeta(genus, order);
    let mut r = Report::new("delta-zeta");
    r.set("genus", genus).set("order", order);
    let terms: Vec<Value> = x.terms().iter().map(|(b, &c)| json!({ "cell": b.render(&al), "coeff": c })).collect();
    r.set("terms", terms);
    r.line(x.render(&al));
    Ok(r)
}

pub fn kernel(genus: usize, punctures: usize, order: usize, force: bool) -> CliResult<Report> {
    let spec = punctured(genus, punctures)?;
    let p = spec.presentation();
    guard(budget::u1_basis(p.alphabet().len(), order), force)?;
    let k = kernel_k(&p, order);
    let mut r = Report::new("kernel");
    r.set("genus", genus).set("punctures", punctures).set("order", order);
    r.set("spanning_set", k.generators.n_cols()).group(&k.invariants);
    r.line(format!("K_{order} = {} (spanned by {} vectors in a basis of {})", k.invariants, k.generators.n_cols(), k.basis.len()));
    Ok(r)
}

pub fn icfg(genus: usize, order: usize, force: bool) -> CliResult<Report> {
    if order == 0 {
        return Err(CliError::Input("order must be at least 1".into()));
    }
    guard(budget::u1_basis(2 * genus, order), force)?;
    let spec = SurfaceSpec::new(genus, 0);
    let al = spec.alphabet();
    let k = icfg_kernel(&spec.presentation(), order)?;
    let mut r = Report::new("icfg");
    r.set("genus", genus).set("order", order).group(&k.invariants);
    let gens: Vec<String> = k.generators.iter().map(|g| g.render(&al)).collect();
    r.line(format!("I^cfg_{order} = {} ({} generators)", k.invariants, gens.len()));
    for g in &gens {
        r.line(format!("  {g}"));
    }
    r.set("generators", gens);
    Ok(r)
}

pub fn johnson(genus: usize, n: usize, c: Option<&str>, force: bool) -> CliResult<Report> {
    if genus < 2 || n < 3 {
        return Err(CliError::Input("johnson needs genus ≥ 2 and n ≥ 3".into()));
    }
    guard((2.0 * genus as f64).powi(n as i32), force)?;
    let al = EdgeAlphabet::surface(genus, 0);
    let cs: Vec<TensorElt> = match c {
        Some(s) => s.split(',').map(|t| TensorElt::parse_linear(t.trim(), &al)).collect::<Result<_, _>>()?,
        None => (0..n - 2).map(|i| TensorElt::letter(a_edge(i / 2 % genus + 1, i % 2 == 1))).collect(),
    };
    if cs.len() != n - 2 {
        return Err(CliError::Input(format!("expected {} comma-separated degree-one elements, got {}", n - 2, cs.len())));
    }
    let a = johnson_a(genus, n, &cs)?;
    let vanishes = sn_quotient_membership(genus, &a);
    let mut r = Report::new("johnson");
    r.set("genus", genus).set("n", n);
    r.set("c", cs.iter().map(|x| x.render(&al)).collect::<Vec<_>>());
    r.set("element", a.render(&al)).set("vanishes_mod_mu", vanishes);
    r.line(format!("a = {}", a.render(&al)));
    r.line(format!("vanishes modulo the μ-ideal: {vanishes}"));
    if n == 4 {
        let ok = sn_quotient_membership(genus, &a.minus(&johnson_closed_form(genus, &cs[0], &cs[1])));
        r.set("closed_form_holds", ok);
        r.line(format!("agrees with (−μ₁₃+μ₁₄−μ₂₄)(c₁c₂+c₂c₁) modulo the μ-ideal: {ok}"));
    }
    Ok(r)
}

pub fn closed(genus: usize, points: usize, force: bool) -> CliResult<Report> {
    guard((points as f64 + 1.0) * budget::bar_cells(2 * genus, points), force)?;
    let h = closed_surface_homology(genus, points)?;
    let mut r = Report::new("closed");
    r.set("genus", genus).set("points", points);
    let mut rows = Vec::new();
    for (d, g) in &h {
        let mut o = group_json(g);
        o["degree"] = json!(d);
        rows.push(o);
        r.line(format!("H_{d} = {g}"));
    }
    r.set("homology", rows);
    Ok(r)
}

pub fn act(genus: usize, punctures: usize, map: &Path, points: usize, force: bool) -> CliResult<Report> {
    let spec = punctured(genus, punctures)?;
    guard(budget::u1_basis(spec.alphabet().len(), points), force)?;
    let e = EndoSpec::parse(spec, &read_file(map)?)?;
    let a = act_endomorphism(&e, points)?;
    let mut r = Report::new("act");
    r.set("genus", genus).set("punctures", punctures).set("points", points);
    r.set("target", group_json(a.hn.invariants())).set("identity", a.is_identity).set("matrix", matrix_json(&a.matrix));
    r.line(format!("H_{points} = {}", a.hn.invariants()));
    r.line(format!("identity: {}", a.is_identity));
    if a.matrix.n_rows() > 0 {
        r.line(matrix_text(&a.matrix));
    }
    Ok(r)
}

/// Runs the certificate suite; the report is returned even on failure so
/// that it can be printed before exiting.
pub fn paper_check(only: &[u32], inject_sign_flip: bool) -> (Report, bool) {
    let opts = CheckOptions { inject_sign_flip };
    let mut r = Report::new("paper-check");
    let mut items = Vec::new();
    let mut all = true;
    for c in certificates().iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let o = run_certificate(c, &opts);
        all &= o.passed();
        let status = if o.passed() { "PASS" } else { "FAIL" };
        match &o.result {
            Ok(()) => r.line(format!("{status} {:>2} {} ({:.2} s)", o.id, o.name, o.secs)),
            Err(e) => r.line(format!("{status} {:>2} {} ({:.2} s): {e}", o.id, o.name, o.secs)),
        };
        items.push(json!({
            "id": o.id,
            "name": o.name,
            "passed": o.passed(),
            "seconds": o.secs,
            "message": o.result.as_ref().err(),
        }));
    }
    r.set("items", items).set("passed", all);
    (r, all)
}
