//! Text, markdown and JSON renderings for the CLI.

use std::fmt::Write;

use lghodge::hodge::{Check, ConjectureReport, HodgeTable, IVerdict};
use lghodge::lattice::{restriction_surjective, section_augmented_matrix, wheel_gram};
use lghodge::nilpotent::NilpotentProfile;
use lghodge::rational::format_rational;
use lghodge::surface::{relative_partition, SurfaceModel};
use lghodge::Error;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Palette {
    Plain,
    Ansi,
}

impl Palette {
    fn paint(self, text: &str, code: &str) -> String {
        match self {
            Palette::Plain => text.to_string(),
            Palette::Ansi => format!("\x1b[{code}m{text}\x1b[0m"),
        }
    }

    fn check(self, c: Check) -> String {
        match c {
            Check::Pass => self.paint("pass", "32"),
            Check::Fail => self.paint("FAIL", "31"),
            Check::NotApplicable => self.paint("n/a", "2"),
        }
    }

    fn flag(self, ok: bool) -> String {
        self.check(if ok { Check::Pass } else { Check::Fail })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
    Plain,
}

fn check_of(ok: Option<&Vec<bool>>) -> Check {
    match ok {
        None => Check::NotApplicable,
        Some(v) if v.iter().all(|&b| b) => Check::Pass,
        Some(_) => Check::Fail,
    }
}

fn verdict_text(v: &IVerdict) -> String {
    match v {
        IVerdict::Holds => "a divisible table matches h".to_string(),
        IVerdict::CounterexampleImpossibleToAvoid => {
            "no divisible table matches h, so i != h".to_string()
        }
        IVerdict::NotApplicable(why) => format!("not applicable: {why}"),
    }
}

pub fn report_json(r: &ConjectureReport) -> anyhow::Result<Value> {
    Ok(json!({
        "d": r.d,
        "h": r.h,
        "f": r.f,
        "x": r.x,
        "checks": {
            "all_applicable_pass": r.all_applicable_pass(),
            "fano_type": r.fano_type,
            "jordan_partition": r.jordan_partition,
            "sum_identity": r.sum_identity,
            "f_equals_h": r.f_equals_h,
            "mirror_rotation": r.mirror_rotation,
            "i_obstruction": r.i_obstruction,
        },
    }))
}

fn padded(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    v.resize(5, 0);
    v
}

fn cohomology_rows(model: &SurfaceModel) -> Vec<(&'static str, Vec<u64>)> {
    vec![
        ("Z", padded(&model.h_z)),
        ("D", padded(&model.h_d)),
        ("Y (compact)", padded(&model.hc_y)),
        ("Y", padded(&model.h_y)),
        ("(Y, Y_b)", padded(&model.h_rel)),
    ]
}

fn markdown_table(t: &HodgeTable) -> String {
    let n = t.n();
    let mut out = String::from("| q \\ p |");
    for p in 0..=n {
        write!(out, " {p} |").unwrap();
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(n + 1));
    out.push('\n');
    for q in (0..=n).rev() {
        write!(out, "| {q} |").unwrap();
        for p in 0..=n {
            write!(out, " {} |", t.get(p, q).unwrap_or(0)).unwrap();
        }
        out.push('\n');
    }
    out
}

fn markdown_record(r: &ConjectureReport, model: &SurfaceModel) -> String {
    let mut out = String::new();
    writeln!(out, "## d = {}\n", r.d).unwrap();
    let rows = cohomology_rows(model);
    out.push_str("| i |");
    for (name, _) in &rows {
        write!(out, " {name} |").unwrap();
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(rows.len()));
    out.push('\n');
    for i in 0..5 {
        write!(out, "| {i} |").unwrap();
        for (_, v) in &rows {
            write!(out, " {} |", v[i]).unwrap();
        }
        out.push('\n');
    }
    for (title, table) in [
        ("h^{p,q}(Y, w)", r.h.as_ref()),
        ("f^{p,q}(Y, w)", Some(&r.f)),
        ("h^{p,q}(X)", r.x.as_ref()),
    ] {
        write!(out, "\n### {title}\n\n").unwrap();
        match table {
            Some(t) => out.push_str(&markdown_table(t)),
            None => out.push_str("undefined\n"),
        }
    }
    out.push_str("\n### Checks\n\n");
    let p = Palette::Plain;
    let lines = checks_lines(r, p);
    for line in lines {
        writeln!(out, "- {line}").unwrap();
    }
    out
}

fn checks_lines(r: &ConjectureReport, p: Palette) -> Vec<String> {
    vec![
        format!("Fano type: {}", if r.fano_type { "yes" } else { "no" }),
        format!("Jordan partition of N_rel: {:?}", r.jordan_partition),
        format!("sum identity (f): {}", p.check(check_of(Some(&r.sum_identity.f)))),
        format!("sum identity (h): {}", p.check(check_of(r.sum_identity.h.as_ref()))),
        format!("f = h: {}", p.check(r.f_equals_h)),
        format!("f^{{p,q}} = h^{{p,2-q}}(X): {}", p.check(r.mirror_rotation)),
        format!(
            "i obstruction ({} nodal fibers{}): {}",
            r.i_obstruction.nodal_fibers,
            if r.i_obstruction.extension { ", extension" } else { "" },
            verdict_text(&r.i_obstruction.verdict)
        ),
        format!("all applicable checks: {}", p.flag(r.all_applicable_pass())),
    ]
}

fn plain_record(r: &ConjectureReport, model: &SurfaceModel, p: Palette) -> String {
    let mut out = String::new();
    writeln!(out, "d = {}", r.d).unwrap();
    for (name, v) in cohomology_rows(model) {
        writeln!(out, "  {name:<12} {v:?}").unwrap();
    }
    for (title, table) in [("h(Y, w)", r.h.as_ref()), ("f(Y, w)", Some(&r.f)), ("h(X)", r.x.as_ref())] {
        writeln!(out, "  {title}:").unwrap();
        match table {
            Some(t) => {
                for line in t.to_string().lines() {
                    writeln!(out, "    {line}").unwrap();
                }
            }
            None => writeln!(out, "    undefined").unwrap(),
        }
    }
    for line in checks_lines(r, p) {
        writeln!(out, "  {line}").unwrap();
    }
    out
}

pub fn report(
    reports: &[ConjectureReport],
    models: &[SurfaceModel],
    format: ReportFormat,
    all: bool,
    palette: Palette,
) -> anyhow::Result<String> {
    Ok(match format {
        ReportFormat::Json => {
            let records = reports.iter().map(report_json).collect::<anyhow::Result<Vec<_>>>()?;
            let value = if all { Value::Array(records) } else { records.into_iter().next().unwrap() };
            format!("{}\n", serde_json::to_string_pretty(&value)?)
        }
        ReportFormat::Markdown => {
            let parts: Vec<String> = reports.iter().zip(models).map(|(r, m)| markdown_record(r, m)).collect();
            parts.join("\n")
        }
        ReportFormat::Plain => {
            let parts: Vec<String> = reports
                .iter()
                .zip(models)
                .map(|(r, m)| plain_record(r, m, palette))
                .collect();
            parts.join("\n")
        }
    })
}

fn matrix_json(m: &lghodge::RationalMatrix) -> Value {
    serde_json::to_value(m.to_json()).expect("matrix serializes")
}

pub fn surface_json(model: &SurfaceModel) -> anyhow::Result<Value> {
    Ok(json!({
        "d": model.d,
        "euler_z": model.euler_z,
        "h_z": model.h_z,
        "h_d": model.h_d,
        "hc_y": model.hc_y,
        "h_y": model.h_y,
        "h_rel": model.h_rel,
        "surjectivity": model.surjectivity,
        "chases": model.chases,
        "fiber_monodromy": matrix_json(model.fiber_monodromy()),
        "ell": matrix_json(&model.monodromy.ell),
        "boundary": matrix_json(&model.monodromy.boundary),
        "t_rel": matrix_json(&model.t_rel),
        "n_rel": matrix_json(&model.n_rel),
        "jordan_partition": relative_partition(model)?,
        "assembly_checks": model.monodromy.verify()?,
    }))
}

pub fn surface_plain(model: &SurfaceModel) -> anyhow::Result<String> {
    let mut out = String::new();
    writeln!(out, "d = {}, chi(Z) = {}", model.d, model.euler_z)?;
    for (name, v) in cohomology_rows(model) {
        writeln!(out, "{name:<12} {v:?}")?;
    }
    for chase in &model.chases {
        writeln!(out, "\n{}:", chase.name)?;
        for fact in &chase.facts {
            writeln!(out, "  * {fact}")?;
        }
        for line in chase.solution.to_string().lines() {
            writeln!(out, "  {line}")?;
        }
    }
    writeln!(out, "\nT_B =\n{}", model.fiber_monodromy())?;
    writeln!(out, "\nT_rel =\n{}", model.t_rel)?;
    writeln!(out, "\nN_rel =\n{}", model.n_rel)?;
    writeln!(out, "\nJordan partition of N_rel: {:?}", relative_partition(model)?)?;
    Ok(out)
}

pub fn lattice_plain(d: usize) -> anyhow::Result<String> {
    if d < 2 {
        return Err(Error::DOutOfRange { d, lo: 2, hi: 9 }.into());
    }
    let wheel = wheel_gram(d)?;
    let augmented = section_augmented_matrix(d)?;
    let mut out = String::new();
    writeln!(out, "Gram matrix of D_1..D_{d}:\n{}", wheel.gram)?;
    writeln!(out, "det = {}", format_rational(&wheel.gram.determinant()?))?;
    if let Some(note) = wheel.modeling_note() {
        writeln!(out, "note: {note}")?;
    }
    writeln!(out, "\nsection-augmented matrix (last row E):\n{augmented}")?;
    writeln!(out, "det = {}", format_rational(&augmented.determinant()?))?;
    let s = restriction_surjective(d)?;
    writeln!(out, "H^2(Z) -> H^2(D) surjective: {}", s.surjective)?;
    Ok(out)
}

pub fn jordan_json(profile: &NilpotentProfile) -> Value {
    let chains: Vec<Vec<Vec<String>>> = profile
        .chains
        .iter()
        .map(|c| c.iter().map(|v| v.iter().map(format_rational).collect()).collect())
        .collect();
    json!({
        "dim": profile.dim,
        "nilpotency_index": profile.nilpotency_index(),
        "partition": profile.partition,
        "power_ranks": profile.power_ranks,
        "chains": chains,
    })
}

pub fn jordan_plain(profile: &NilpotentProfile) -> String {
    let mut out = String::new();
    writeln!(out, "dim = {}", profile.dim).unwrap();
    writeln!(out, "nilpotency index = {}", profile.nilpotency_index()).unwrap();
    writeln!(out, "ranks of N^k = {:?}", profile.power_ranks).unwrap();
    writeln!(out, "partition = {:?}", profile.partition).unwrap();
    for (i, chain) in profile.chains.iter().enumerate() {
        writeln!(out, "chain {i} (length {}):", chain.len()).unwrap();
        for v in chain {
            let v: Vec<String> = v.iter().map(format_rational).collect();
            writeln!(out, "  [{}]", v.join(", ")).unwrap();
        }
    }
    out
}
