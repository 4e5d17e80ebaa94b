use std::fmt::Write as _;
use std::fs;

use poisson_core::catalog::{self, Expected, Params};
use poisson_core::cohomology::{
    delta, delta_matrix, delta_via_forms, slice_dims, structure_degree, GradedSlice, SliceDims,
    SliceFilter,
};
use poisson_core::poly::Rational;
use poisson_core::{Bivector, Error, MultiDerivation, PoissonStructure, Polynomial, WeightVector};
use rayon::prelude::*;
use serde_json::json;

use crate::args::{CatalogAction, Cli, Command, Format, Source, Via};
use crate::format::{BivectorJson, CochainJson};
use crate::{CliError, Outcome};

pub(crate) fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Verify(src) => verify(src, fmt),
        Command::Bracket { source, p, q } => bracket(source, p, q, fmt),
        Command::Delta {
            source,
            cochain,
            cochain_file,
            via,
        } => {
            let text = match (cochain, cochain_file) {
                (Some(t), _) => t.clone(),
                (None, Some(path)) => fs::read_to_string(path)?,
                (None, None) => {
                    return Err(CliError::Input(String::from(
                        "delta needs --cochain or --cochain-file",
                    )))
                }
            };
            run_delta(source, &text, *via, fmt)
        }
        Command::Cohomology {
            source,
            k,
            kmax,
            degree,
            cutoff,
            invariant,
            exclude_x0,
            matrix_csv,
        } => {
            let s = load_verified(source)?;
            let n = s.nvars();
            let ks: Vec<usize> = match (k, kmax) {
                (Some(k), _) => vec![*k],
                (None, Some(m)) => (0..=*m).collect(),
                (None, None) => (0..=n).collect(),
            };
            let ds: Vec<u32> = match degree {
                Some(d) => vec![*d],
                None => (0..=*cutoff).collect(),
            };
            let filter = filter_for(&s, *invariant, *exclude_x0)?;
            if let Some(path) = matrix_csv {
                write_matrix(&s, ks[0], ds[0], &filter, path)?;
            }
            cohomology(
                &s,
                &ks,
                &ds,
                &filter,
                degree.is_none().then_some(*cutoff),
                fmt,
            )
        }
        Command::Catalog { action } => catalog_cmd(action, fmt),
        Command::Reproduce { id } => Ok(crate::reproduce(*id).render(fmt)),
    }
}

pub(crate) fn parse_params(bindings: &[String]) -> Result<Params, CliError> {
    let mut out = Params::new();
    for b in bindings {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("parameter `{b}` is not NAME=VALUE")))?;
        let v: Rational = value
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("`{value}` is not a rational number")))?;
        out.insert(name.trim().to_string(), v);
    }
    Ok(out)
}

/// The bivector named by the source and its label base.
fn load(src: &Source) -> Result<(Bivector, usize), CliError> {
    if let Some(name) = &src.catalog {
        let params = parse_params(&src.params)?;
        return match catalog::bivector(name, &params, src.n) {
            Ok(b) => Ok(b),
            Err(e) => Err(CliError::Input(e.to_string())),
        };
    }
    let text = match (&src.file, &src.json) {
        (Some(path), _) => fs::read_to_string(path)?,
        (None, Some(t)) => t.clone(),
        (None, None) => {
            return Err(CliError::Input(String::from(
                "no structure given; use --catalog, --file or --json",
            )))
        }
    };
    let parsed: BivectorJson = serde_json::from_str(&text)?;
    Ok((parsed.to_bivector()?, parsed.base()))
}

fn load_verified(src: &Source) -> Result<PoissonStructure, CliError> {
    let (b, base) = load(src)?;
    Ok(PoissonStructure::verify_labeled(b, base)?)
}

fn verify(src: &Source, fmt: Format) -> Result<Outcome, CliError> {
    let (b, base) = load(src)?;
    let n = b.nvars();
    match PoissonStructure::verify_labeled(b, base) {
        Ok(_) => {
            let forms = (n >= 3).then_some(true);
            let out = match fmt {
                Format::Json => {
                    json!({"integrable": true, "n": n, "jacobi": true, "forms": forms}).to_string()
                        + "\n"
                }
                Format::Csv => format!("integrable,n\ntrue,{n}\n"),
                Format::Text => {
                    let mut s = String::from("integrable: yes\njacobi sums: all zero\n");
                    match forms {
                        Some(_) => s.push_str("exterior criterion: holds\n"),
                        None => s.push_str("exterior criterion: not applicable for n < 3\n"),
                    }
                    s
                }
            };
            Ok(Outcome::ok(out))
        }
        Err(Error::NotIntegrable { triple, witness }) => {
            let label = format!("({},{},{})", triple[0], triple[1], triple[2]);
            let out = match fmt {
                Format::Json => {
                    json!({"integrable": false, "n": n, "witness": {"triple": triple, "sum": witness}})
                        .to_string()
                        + "\n"
                }
                Format::Csv => format!("integrable,n,triple,sum\nfalse,{n},{label},{witness}\n"),
                Format::Text => format!("integrable: no\nwitness {label}: {witness}\n"),
            };
            Ok(Outcome::negative(out))
        }
        Err(e) => Err(e.into()),
    }
}

fn bracket(src: &Source, p: &str, q: &str, fmt: Format) -> Result<Outcome, CliError> {
    let s = load_verified(src)?;
    let n = s.nvars();
    let base = s.base();
    let p = Polynomial::parse(p, n, base)?;
    let q = Polynomial::parse(q, n, base)?;
    let v = s.bracket(&p, &q)?.to_text(base);
    Ok(Outcome::ok(match fmt {
        Format::Json => json!({ "bracket": v }).to_string() + "\n",
        _ => v + "\n",
    }))
}

fn run_delta(src: &Source, cochain: &str, via: Via, fmt: Format) -> Result<Outcome, CliError> {
    let s = load_verified(src)?;
    let parsed: CochainJson = serde_json::from_str(cochain)?;
    if parsed.n != s.nvars() {
        return Err(CliError::Input(format!(
            "cochain has {} variables, structure has {}",
            parsed.n,
            s.nvars()
        )));
    }
    let phi = parsed.to_cochain(s.base())?;
    let out = match via {
        Via::Formula => delta(&s, &phi)?,
        Via::Forms => delta_via_forms(&s, &phi)?,
    };
    Ok(Outcome::ok(render_cochain(&out, s.base(), fmt)?))
}

fn render_cochain(phi: &MultiDerivation, base: usize, fmt: Format) -> Result<String, CliError> {
    Ok(match fmt {
        Format::Json => serde_json::to_string(&CochainJson::from_cochain(phi, base))? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["args", "poly"]).map_err(csv_err)?;
            for (t, p) in phi.values() {
                w.write_record([t.display(base), p.to_text(base)])
                    .map_err(csv_err)?;
            }
            into_string(w)?
        }
        Format::Text => {
            if phi.is_zero() {
                format!("zero {}-cochain\n", phi.arity())
            } else {
                let mut s = String::new();
                for (t, p) in phi.values() {
                    let _ = writeln!(s, "{} -> {}", t.display(base), p.to_text(base));
                }
                s
            }
        }
    })
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Input(e.to_string())
}

fn into_string(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Input(e.to_string()))
}

fn filter_for(
    s: &PoissonStructure,
    invariant: bool,
    exclude_x0: bool,
) -> Result<SliceFilter, CliError> {
    if !invariant && !exclude_x0 {
        return Ok(SliceFilter::none());
    }
    if s.base() != 0 {
        return Err(CliError::Input(String::from(
            "--invariant and --exclude-x0 need a structure labelled from X0",
        )));
    }
    let n = s.nvars();
    let mut f = SliceFilter::torus_relative(WeightVector::sequential(n, 0), 0);
    if !invariant {
        f.weights = None;
    }
    Ok(f)
}

fn write_matrix(
    s: &PoissonStructure,
    k: usize,
    d: u32,
    filter: &SliceFilter,
    path: &std::path::Path,
) -> Result<(), CliError> {
    let m = delta_matrix(s, &GradedSlice::new(s.nvars(), k, d, filter))?;
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["row", "col", "value"]).map_err(csv_err)?;
    for (r, c, v) in m.matrix.triplets() {
        w.write_record([r.to_string(), c.to_string(), v.to_string()])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn cohomology(
    s: &PoissonStructure,
    ks: &[usize],
    ds: &[u32],
    filter: &SliceFilter,
    cutoff: Option<u32>,
    fmt: Format,
) -> Result<Outcome, CliError> {
    match structure_degree(s) {
        Ok(_) => {}
        Err(Error::NotHomogeneous) => {
            return Err(CliError::Negative(String::from(
                "the structure's entries are not homogeneous of one degree; \
                 split it into homogeneous parts and run each separately",
            )))
        }
        Err(e) => return Err(e.into()),
    }
    let pairs: Vec<(usize, u32)> = ks
        .iter()
        .flat_map(|&k| ds.iter().map(move |&d| (k, d)))
        .collect();
    let mut rows = pairs
        .par_iter()
        .map(|&(k, d)| slice_dims(s, k, d, filter))
        .collect::<Result<Vec<SliceDims>, _>>()?;
    rows.sort_by_key(|r| (r.k, r.d));
    let totals: Vec<(usize, usize)> = ks
        .iter()
        .map(|&k| (k, rows.iter().filter(|r| r.k == k).map(|r| r.dim_h).sum()))
        .collect();
    let out = match fmt {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({"k": r.k, "d": r.d, "dim_chi": r.dim_chi, "dim_Z": r.dim_z,
                           "dim_B": r.dim_b, "dim_H": r.dim_h})
                })
                .collect();
            let totals: Vec<_> = totals
                .iter()
                .map(|&(k, h)| json!({"k": k, "dim_H": h}))
                .collect();
            json!({"cutoff": cutoff, "rows": rows, "totals": totals}).to_string() + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["k", "d", "dim_chi", "dim_Z", "dim_B", "dim_H"])
                .map_err(csv_err)?;
            for r in &rows {
                w.write_record(
                    [r.k, r.d as usize, r.dim_chi, r.dim_z, r.dim_b, r.dim_h]
                        .map(|v| v.to_string()),
                )
                .map_err(csv_err)?;
            }
            into_string(w)?
        }
        Format::Text => {
            let mut t = String::from("  k   d  dim_chi  dim_Z  dim_B  dim_H\n");
            for r in &rows {
                let _ = writeln!(
                    t,
                    "{:>3} {:>3} {:>8} {:>6} {:>6} {:>6}",
                    r.k, r.d, r.dim_chi, r.dim_z, r.dim_b, r.dim_h
                );
            }
            let scope = match cutoff {
                Some(c) => format!("d <= {c}"),
                None => format!("d = {}", ds[0]),
            };
            let parts: Vec<String> = totals.iter().map(|(k, h)| format!("H^{k} = {h}")).collect();
            let _ = writeln!(t, "totals over {scope}: {}", parts.join(", "));
            t
        }
    };
    Ok(Outcome::ok(out))
}

fn catalog_cmd(action: &CatalogAction, fmt: Format) -> Result<Outcome, CliError> {
    match action {
        CatalogAction::List => {
            let entries = catalog::entries();
            let out = match fmt {
                Format::Json => {
                    let list: Vec<_> = entries
                        .iter()
                        .map(|e| {
                            json!({"name": e.name, "parameters": e.param_summary(),
                                   "description": e.description, "note": e.note})
                        })
                        .collect();
                    serde_json::to_string(&list)? + "\n"
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["name", "parameters", "description"])
                        .map_err(csv_err)?;
                    for e in &entries {
                        w.write_record([e.name, &e.param_summary(), e.description])
                            .map_err(csv_err)?;
                    }
                    into_string(w)?
                }
                Format::Text => {
                    let mut t = String::new();
                    for e in &entries {
                        let _ = writeln!(
                            t,
                            "{:<12} {:<34} {}",
                            e.name,
                            e.param_summary(),
                            e.description
                        );
                        if let Some(note) = e.note {
                            let _ = writeln!(t, "{:<12} note: {note}", "");
                        }
                    }
                    t
                }
            };
            Ok(Outcome::ok(out))
        }
        CatalogAction::Show { name, params, n } => {
            let params = parse_params(params)?;
            let (b, base) =
                catalog::bivector(name, &params, *n).map_err(|e| CliError::Input(e.to_string()))?;
            let out = match fmt {
                Format::Text => {
                    let mut t = String::new();
                    for (tu, p) in b.values() {
                        let [i, j] = [tu.slots()[0] + base, tu.slots()[1] + base];
                        let _ = writeln!(t, "{{X{i},X{j}}} = {}", p.to_text(base));
                    }
                    if b.nvars() >= 3 {
                        let _ = writeln!(t, "Omega = {}", b.omega().to_text(base));
                    }
                    if let Some(note) = catalog::entry(name).ok().and_then(|e| e.note) {
                        let _ = writeln!(t, "note: {note}");
                    }
                    t
                }
                _ => serde_json::to_string(&BivectorJson::from_bivector(&b, base))? + "\n",
            };
            Ok(Outcome::ok(out))
        }
        CatalogAction::Expected { name } => {
            let e = catalog::expected(name).map_err(|e| CliError::Input(e.to_string()))?;
            let value = match e {
                Expected::CohomologyTotals(t) => json!({"H": t}),
                Expected::P2 { h22, b22 } => json!({"H2_2": pairs(&h22), "B2_2": pairs(&b22)}),
                Expected::Rigid { h21_from_7, h22 } => {
                    json!({"H2_1_from_n7": h21_from_7, "H2_2": pairs(&h22)})
                }
                Expected::Integrable(v) => json!({ "integrable": v }),
                Expected::DeformedMu { fails_from } => {
                    json!({"integrable_below": fails_from, "fails_from": fails_from})
                }
            };
            let out = match fmt {
                Format::Json => value.to_string() + "\n",
                _ => serde_json::to_string_pretty(&value)? + "\n",
            };
            Ok(Outcome::ok(out))
        }
    }
}

fn pairs(v: &[(usize, usize)]) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> =
        v.iter().map(|(n, x)| (n.to_string(), json!(x))).collect();
    serde_json::Value::Object(map)
}
