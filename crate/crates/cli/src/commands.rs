use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::json;

use polyamory::cluster::{enumerate, InventoryReport, Seed};
use polyamory::frieze::{
    classify_two_row_friezes, frieze_from_labelling, render_frieze, solve_polygon, specialised_labelling,
    symbolic_frieze, verify_frieze, Frieze, FriezeValue, Layout, Triangulation,
};
use polyamory::specialize::{enumerate_polyamorous, is_polyamorous_algebra, is_polycule, is_vacuous, polyamorous_vertices};
use polyamory::{LaurentPoly, Quiver, Specialization};

use crate::args::Format;
use crate::error::CliError;

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn set_text(s: &BTreeSet<usize>) -> String {
    if s.is_empty() {
        return "none".into();
    }
    let parts: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn mutate(q: &Quiver, vertices: &[usize], format: Format) -> Result<String, CliError> {
    let seed = Seed::initial(q).mutate_sequence(vertices)?;
    let cluster: Vec<String> = seed.cluster().iter().map(LaurentPoly::to_fraction_string).collect();
    Ok(match format {
        Format::Json => to_json(&json!({
            "sequence": vertices,
            "cluster": cluster,
            "quiver": seed.quiver().to_file(),
        })),
        Format::Text => format!("cluster: {}\nquiver: {}\n", cluster.join(", "), seed.quiver()),
    })
}

pub fn enumerate_seeds(q: &Quiver, cap: usize, format: Format) -> Result<String, CliError> {
    let inv = enumerate(q, cap)?;
    let report = InventoryReport::from(&inv);
    if format == Format::Json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    writeln!(out, "{}", inv.summary()).unwrap();
    writeln!(out, "seeds visited: {}", inv.seed_count).unwrap();
    writeln!(out, "variables:").unwrap();
    for (k, v) in report.variables.iter().enumerate() {
        writeln!(out, "  [{k}] {v}").unwrap();
    }
    writeln!(out, "clusters:").unwrap();
    for c in &report.clusters {
        let parts: Vec<String> = c.iter().map(usize::to_string).collect();
        writeln!(out, "  [{}]", parts.join(", ")).unwrap();
    }
    Ok(out)
}

pub fn polyamory(q: &Quiver, sigma: &Specialization, format: Format) -> Result<String, CliError> {
    sigma.check_units(q.n())?;
    let poly = polyamorous_vertices(q, sigma)?;
    let algebra = is_polyamorous_algebra(q, sigma)?;
    let vacuous = is_vacuous(q, sigma);
    if format == Format::Json {
        let vertices: Vec<_> = (1..=q.n())
            .map(|v| match sigma.get(v) {
                Some(x) => json!({"vertex": v, "specialised": x}),
                None => json!({"vertex": v, "polyamorous": poly.contains(&v)}),
            })
            .collect();
        return Ok(to_json(&json!({
            "specialisation": sigma,
            "vertices": vertices,
            "polyamorous_vertices": poly,
            "algebra_polyamorous": algebra,
            "vacuous": vacuous,
        })));
    }
    let mut out = format!("specialisation: {sigma}\n");
    for v in 1..=q.n() {
        match sigma.get(v) {
            Some(x) => writeln!(out, "vertex {v}: specialised to {x}").unwrap(),
            None if is_polycule(q, sigma, v)? => writeln!(out, "vertex {v}: polyamorous").unwrap(),
            None => writeln!(out, "vertex {v}: not polyamorous").unwrap(),
        }
    }
    writeln!(out, "polyamorous vertices: {}", set_text(&poly)).unwrap();
    let verdict = match (algebra, vacuous) {
        (true, true) => "polyamorous (vacuous)",
        (true, false) => "polyamorous",
        (false, _) => "not polyamorous",
    };
    writeln!(out, "algebra: {verdict}").unwrap();
    Ok(out)
}

pub fn enumerate_poly(q: &Quiver, include_vacuous: bool, format: Format) -> Result<String, CliError> {
    let found = enumerate_polyamorous(q, include_vacuous)?;
    if format == Format::Json {
        return Ok(to_json(&found));
    }
    let mut out = format!("{} polyamorous specialisations\n", found.len());
    for ps in &found {
        write!(out, "{}  unspecialised: {}", ps.specialization, set_text(&ps.unspecialised)).unwrap();
        if ps.vacuous {
            out.push_str("  (vacuous)");
        }
        out.push('\n');
    }
    Ok(out)
}

pub struct FriezeRequest {
    pub n: Option<usize>,
    pub triangulation: Option<Triangulation>,
    pub sigma: Specialization,
    pub assign: Specialization,
    pub symbolic: bool,
    pub verify: bool,
    pub width: Option<usize>,
    pub mark: bool,
}

fn frieze_output<T: FriezeValue>(
    f: &Frieze<T>,
    t: &Triangulation,
    req: &FriezeRequest,
    format: Format,
) -> String {
    let report = req.verify.then(|| verify_frieze(f));
    if format == Format::Json {
        let mut v = f.to_json();
        let obj = v.as_object_mut().expect("object");
        obj.insert("diagonals".into(), json!(t.to_file().diagonals));
        obj.insert("specialisation".into(), json!(req.sigma));
        if !req.symbolic {
            obj.insert("assignment".into(), json!(req.assign));
        }
        if let Some(r) = &report {
            obj.insert("verification".into(), json!(r));
        }
        return to_json(&v);
    }
    let mut out = String::new();
    let ds: Vec<String> = t
        .diagonals()
        .iter()
        .enumerate()
        .map(|(k, (i, j))| format!("x{} = {{{i}, {j}}}", k + 1))
        .collect();
    writeln!(out, "diagonals: {}", ds.join(", ")).unwrap();
    writeln!(out, "specialisation: {}", req.sigma).unwrap();
    if !req.symbolic {
        writeln!(out, "assignment: {}", req.assign).unwrap();
    }
    out.push('\n');
    let layout = Layout {
        width: req.width.unwrap_or(2 * f.period()),
        mark_domain: req.mark,
    };
    out.push_str(&render_frieze(f, layout));
    if let Some(r) = report {
        writeln!(out, "\n{r}").unwrap();
    }
    out
}

pub fn frieze(req: &FriezeRequest, format: Format) -> Result<String, CliError> {
    let t = match (&req.triangulation, req.n) {
        (Some(t), Some(n)) if t.n() != n => {
            return Err(CliError::Input(format!(
                "triangulation has {} diagonals but --n is {n}",
                t.n()
            )))
        }
        (Some(t), _) => t.clone(),
        (None, Some(n)) if n >= 1 => Triangulation::fan(n),
        (None, Some(_)) => return Err(CliError::Input("--n must be at least 1".into())),
        (None, None) => return Err(CliError::Input("give --n or --triangulation".into())),
    };
    if req.width == Some(0) {
        return Err(CliError::Input("--width must be positive".into()));
    }
    let p = solve_polygon(&t)?;
    if req.symbolic {
        if !req.assign.is_empty() {
            return Err(CliError::Input("--assign cannot be combined with --symbolic".into()));
        }
        let f = symbolic_frieze(&specialised_labelling(&p, &req.sigma)?);
        return Ok(frieze_output(&f, &t, req, format));
    }
    let f = frieze_from_labelling(&p, &req.sigma, &req.assign)?;
    Ok(frieze_output(&f, &t, req, format))
}

pub fn classify(bound: i64, format: Format) -> Result<String, CliError> {
    if !(0..=50).contains(&bound) {
        return Err(CliError::Input(format!("--bound must lie in 0..=50, got {bound}")));
    }
    let rep = classify_two_row_friezes(bound);
    if format == Format::Json {
        return Ok(to_json(&rep));
    }
    let mut out = String::new();
    writeln!(out, "two-row friezes with entries in [-{bound}, {bound}]: {}", rep.total).unwrap();
    writeln!(out, "positive: {}", rep.positive).unwrap();
    writeln!(out, "translates of 1 2 2 1 3: {}", rep.conway_coxeter.len()).unwrap();
    writeln!(out, "negative family: {}", rep.negative_family.len()).unwrap();
    writeln!(out, "unexplained: {}", rep.unexplained.len()).unwrap();
    for row in &rep.unexplained {
        writeln!(out, "  {row:?}").unwrap();
    }
    Ok(out)
}
