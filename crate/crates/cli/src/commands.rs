use serde_json::{json, Value};
use verlinde_core::centerlat::{Center, CenterElement, CenterSubgroup, SubgroupSpec};
use verlinde_core::fusion::{self, INTEGRALITY_TOLERANCE, UNITARITY_TOLERANCE};
use verlinde_core::phases;
use verlinde_core::verlinde::{self, Evaluation, Verlinde};
use verlinde_core::weyl::{self, WeylGroup};
use verlinde_core::{Error, Execution, RootDatum};

use crate::output::{clean, labels_cell, Report};
use crate::{Common, Failure, VerlindeArgs, WithLevel};

/// Overrides the integrality tolerance.
pub const TOLERANCE_ENV: &str = "VERLINDE_TOLERANCE";

struct Setup {
    rd: RootDatum,
    center: Center,
    z: CenterSubgroup,
    exec: Execution,
}

fn setup(a: &Common) -> Result<Setup, Failure> {
    let rd = RootDatum::new(a.ty.parse()?);
    let center = Center::new(&rd);
    let spec = if a.gens.is_empty() {
        SubgroupSpec::parse(&a.center, rd.rank())?
    } else {
        SubgroupSpec::parse(&format!("gen:{}", a.gens.join(",")), rd.rank())?
    };
    let z = spec.build(&rd, &center)?;
    let exec = if a.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    Ok(Setup {
        rd,
        center,
        z,
        exec,
    })
}

fn weyl_group(s: &Setup, a: &Common) -> Result<WeylGroup, Failure> {
    Ok(weyl::enumerate_weyl(&s.rd, a.max_weyl_order)?)
}

fn tolerance() -> Result<f64, Failure> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0 && t.is_finite())
            .ok_or_else(|| Failure::Usage(format!("{TOLERANCE_ENV}={v:?} is not a positive number"))),
        Err(_) => Ok(INTEGRALITY_TOLERANCE),
    }
}

/// `e`, `w3`, `2w1+w3`: a center element by its coweight representative.
fn element_name(rd: &RootDatum, c: &CenterElement) -> String {
    if c.is_identity() {
        return "e".into();
    }
    rd.coweight_coords(c.representative())
        .iter()
        .enumerate()
        .filter(|(_, x)| **x != 0.into())
        .map(|(i, x)| {
            if *x == 1.into() {
                format!("w{}", i + 1)
            } else {
                format!("{x}w{}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

fn parse_labels(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Usage(format!("bad label list {s:?}")))
        })
        .collect()
}

pub fn rootdata(a: &Common) -> Result<Report, Failure> {
    let s = setup(a)?;
    let rd = &s.rd;
    let mut r = Report::new("rootdata");
    let cartan = rd.cartan();
    r.set("type", rd.lie_type().to_string());
    r.set("rank", rd.rank());
    r.set("cartan", json!(cartan));
    r.set("marks", json!(rd.marks()));
    r.set("comarks", json!(rd.comarks()));
    r.set("coxeter_number", rd.coxeter_number());
    r.set("dual_coxeter_number", rd.dual_coxeter_number());
    r.set("positive_roots", rd.num_positive_roots());
    r.set("weyl_order", rd.lie_type().weyl_order());
    r.set("ZG", s.center.structure_name());
    let els: Vec<String> = s.center.elements().iter().map(|c| element_name(rd, c)).collect();
    r.set("center_elements", json!(els));
    r.set("diagnostics", json!({}));
    r.header = vec!["key", "value"];
    r.rows = vec![
        vec!["type".into(), rd.lie_type().to_string()],
        vec!["rank".into(), rd.rank().to_string()],
        vec!["marks".into(), labels_cell(rd.marks())],
        vec!["comarks".into(), labels_cell(rd.comarks())],
        vec!["coxeter_number".into(), rd.coxeter_number().to_string()],
        vec!["dual_coxeter_number".into(), rd.dual_coxeter_number().to_string()],
        vec!["positive_roots".into(), rd.num_positive_roots().to_string()],
        vec!["weyl_order".into(), rd.lie_type().weyl_order().to_string()],
        vec!["ZG".into(), s.center.structure_name()],
    ];
    Ok(r)
}

pub fn levels(a: &Common) -> Result<Report, Failure> {
    let s = setup(a)?;
    let (k0, k1) = s.z.levels(&s.rd);
    let gens: Vec<String> = s.z.generators().iter().map(|c| element_name(&s.rd, c)).collect();
    let mut r = Report::new("levels");
    r.set("type", s.rd.lie_type().to_string());
    r.set("ZG", s.center.structure_name());
    r.set("Z", s.z.structure_name());
    r.set("generators", json!(gens));
    r.set("k0", k0);
    r.set("k1", k1);
    r.set("diagnostics", json!({}));
    r.header = vec!["type", "ZG", "Z", "generators", "k0", "k1"];
    r.rows = vec![vec![
        s.rd.lie_type().to_string(),
        s.center.structure_name(),
        s.z.structure_name(),
        gens.join(" "),
        k0.to_string(),
        k1.to_string(),
    ]];
    Ok(r)
}

pub fn smatrix(a: &WithLevel) -> Result<Report, Failure> {
    let s = setup(&a.common)?;
    let group = weyl_group(&s, &a.common)?;
    let table = fusion::level_weights(&s.rd, a.k)?;
    let sm = fusion::s_matrix(&s.rd, &group, &table, s.exec);
    let unitarity = sm.unitarity_residual();
    if unitarity > UNITARITY_TOLERANCE {
        return Err(Failure::Compute(Error::Residual {
            value: unitarity,
            residual: unitarity,
            tolerance: UNITARITY_TOLERANCE,
        }));
    }
    let n = sm.size();
    let weights: Vec<&[i64]> = (0..n).map(|i| table.labels(i)).collect();
    let re: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| clean(sm.get(i, j).re)).collect())
        .collect();
    let im: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| clean(sm.get(i, j).im)).collect())
        .collect();
    let mut r = Report::new("smatrix");
    r.set("type", s.rd.lie_type().to_string());
    r.set("k", a.k);
    r.set("weights", json!(weights));
    r.set("re", json!(re));
    r.set("im", json!(im));
    r.set(
        "diagnostics",
        json!({
            "torus_order": sm.torus_order(),
            "symmetry_residual": sm.symmetry_residual(),
            "unitarity_residual": unitarity,
            "tolerance": UNITARITY_TOLERANCE,
        }),
    );
    r.header = vec!["mu", "lambda", "re", "im"];
    for i in 0..n {
        for j in 0..n {
            r.rows.push(vec![
                labels_cell(table.labels(i)),
                labels_cell(table.labels(j)),
                re[i][j].to_string(),
                im[i][j].to_string(),
            ]);
        }
    }
    Ok(r)
}

pub fn delta(a: &WithLevel) -> Result<Report, Failure> {
    let s = setup(&a.common)?;
    let table = phases::delta_table(&s.rd, &s.z, a.k)?;
    let els = s.z.elements();
    let mut entries = Vec::new();
    let mut mismatches = 0usize;
    let mut undefined = 0usize;
    let mut r = Report::new("delta");
    r.header = vec!["c1", "c2", "exponent", "re", "im", "closed_form", "agrees"];
    for (i, c1) in els.iter().enumerate() {
        for (j, c2) in els.iter().enumerate() {
            let closed = phases::delta_closed_form(&s.rd, &s.center, &s.z, a.k, c1, c2).ok();
            let lattice = table[i][j];
            let agrees = match (lattice, closed) {
                (Some(l), Some(c)) => Some(l == c),
                _ => None,
            };
            if agrees == Some(false) {
                mismatches += 1;
            }
            if lattice.is_none() {
                undefined += 1;
            }
            let (n1, n2) = (element_name(&s.rd, c1), element_name(&s.rd, c2));
            let value = lattice.map(|p| p.value());
            entries.push(json!({
                "c1": n1,
                "c2": n2,
                "exponent": lattice.map(|p| p.exponent().to_string()),
                "value": value.map(|v| json!([clean(v.re), clean(v.im)])),
                "closed_form": closed.map(|p| p.exponent().to_string()),
                "agrees": agrees,
            }));
            let opt = |x: Option<String>| x.unwrap_or_default();
            r.rows.push(vec![
                n1,
                n2,
                opt(lattice.map(|p| p.exponent().to_string())),
                opt(value.map(|v| clean(v.re).to_string())),
                opt(value.map(|v| clean(v.im).to_string())),
                opt(closed.map(|p| p.exponent().to_string())),
                opt(agrees.map(|b| b.to_string())),
            ]);
        }
    }
    r.set("type", s.rd.lie_type().to_string());
    r.set("Z", s.z.structure_name());
    r.set("k", a.k);
    r.set("entries", Value::Array(entries));
    r.set(
        "diagnostics",
        json!({ "undefined_pairs": undefined, "closed_form_mismatches": mismatches }),
    );
    Ok(r)
}

fn parse_phi(v: &Verlinde, spec: &str, genus: u32) -> Result<Vec<verlinde_core::centerlat::CenterCharacter>, Failure> {
    let z = v.subgroup();
    let parts: Vec<&str> = spec.split(';').filter(|p| !p.trim().is_empty()).collect();
    if parts.len() != 2 * genus as usize {
        return Err(Failure::Usage(format!(
            "--phi needs {} exponent vectors for genus {genus}, got {}",
            2 * genus,
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| Ok(z.character(&parse_labels(p)?)?))
        .collect()
}

pub fn verlinde(a: &VerlindeArgs) -> Result<Report, Failure> {
    let common = &a.level.common;
    let s = setup(common)?;
    let group = weyl_group(&s, common)?;
    let tol = tolerance()?;
    let v = Verlinde::new(&s.rd, &group, &s.center, &s.z, a.level.k, s.exec)?.with_tolerance(tol);
    let g = a.genus;
    let twists = match a.phi.as_deref().map(str::trim) {
        Some("all") => verlinde::all_twists(&s.z, g),
        Some(p) => vec![parse_phi(&v, p, g)?],
        None => vec![vec![s.z.trivial_character(); 2 * g as usize]],
    };
    let mus: Vec<usize> = match &a.mu {
        Some(m) => vec![v.table().require(&parse_labels(m)?)?],
        None => (0..v.table().len()).collect(),
    };
    let mut rows = Vec::new();
    let mut r = Report::new("verlinde");
    r.header = vec!["mu", "phi", "Q", "leading", "correction", "residual"];
    let mut max_residual: f64 = 0.0;
    for phi in &twists {
        let values: Vec<Evaluation> = v.verlinde_nsc_all(g, phi)?;
        let phi_json: Vec<&[i64]> = phi.iter().map(|c| c.exponents()).collect();
        for &m in &mus {
            let e = values[m];
            max_residual = max_residual.max(e.residual);
            rows.push(json!({
                "mu": v.table().labels(m),
                "phi": phi_json,
                "Q": e.value,
                "leading": clean(e.leading.re),
                "correction": clean(e.correction.re),
                "residual": e.residual,
            }));
            r.rows.push(vec![
                labels_cell(v.table().labels(m)),
                phi_json.iter().map(|p| labels_cell(p)).collect::<Vec<_>>().join(";"),
                e.value.to_string(),
                clean(e.leading.re).to_string(),
                clean(e.correction.re).to_string(),
                format!("{:e}", e.residual),
            ]);
        }
    }
    r.set("type", s.rd.lie_type().to_string());
    r.set("Z", s.z.structure_name());
    r.set("k", a.level.k);
    r.set("genus", g);
    r.set("rows", Value::Array(rows));
    r.set(
        "diagnostics",
        json!({ "max_residual": max_residual, "tolerance": tol }),
    );
    Ok(r)
}
