use anyhow::{anyhow, bail, Result};
use serde_json::{json, Map, Value};

use delpezzo_core::degeneration::{incident_lines, make_configuration, orbit_decomposition};
use delpezzo_core::geometry::{coplanar_triples, disjoint_line_sets, double_sixes, enumerate_any, enumerate_classes, lines, root_from_six};
use delpezzo_core::period::{make_period, restrict_to_coroots, weyl_canonicalize_with_cap, DEFAULT_PERIOD_CAP};
use delpezzo_core::roots::{enumerate_roots, height, positive_roots};
use delpezzo_core::weights::{adjoint_weight_system, dual_partner, fundamental_weight_lift, is_minuscule};
use delpezzo_core::weyl::{orbit_with_cap, DEFAULT_ORBIT_CAP};
use delpezzo_core::{Error, LatticeVector, MarkedLattice, TorsionPoint};

use crate::report::Report;
use crate::Command;

fn vector_item(v: &LatticeVector) -> Value {
    json!({
        "vector": v.to_string(),
        "coords": v.coords(),
        "self_int": v.norm(),
        "degree": v.degree(),
    })
}

fn names(vs: &[LatticeVector]) -> Value {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().into()
}

fn args(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Splits a comma-separated list of vectors, shifting parse positions so they
/// point into the full argument.
fn parse_vector_list(input: &str, r: usize) -> Result<Vec<LatticeVector>, Error> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in input.split(',') {
        match LatticeVector::parse(piece, r) {
            Ok(v) => out.push(v),
            Err(Error::Parse { position, message, .. }) => {
                return Err(Error::Parse {
                    input: input.to_string(),
                    position: position + offset,
                    message,
                })
            }
            Err(e) => return Err(e),
        }
        offset += piece.chars().count() + 1;
    }
    Ok(out)
}

fn symbol_index(sym: &str, r: usize) -> Option<usize> {
    if sym == "h" {
        return Some(0);
    }
    let i: usize = sym.strip_prefix('e')?.parse().ok()?;
    (1..=r).contains(&i).then_some(i)
}

pub fn run(cmd: &Command, orbit_cap: Option<usize>) -> Result<Report> {
    match cmd {
        Command::Roots { r, positive } => {
            let m = MarkedLattice::new(*r)?;
            let roots = if *positive { positive_roots(&m) } else { enumerate_roots(&m) };
            let items = roots
                .iter()
                .map(|a| {
                    let mut item = vector_item(a);
                    item["height"] = height(&m, a)?.into();
                    Ok(item)
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(Report::new("roots", args(&[("r", json!(r)), ("positive", json!(positive))]), items))
        }
        Command::Lines { r } => {
            let m = MarkedLattice::new(*r)?;
            let items = lines(&m).iter().map(vector_item).collect();
            Ok(Report::new("lines", args(&[("r", json!(r))]), items))
        }
        Command::Classes { r, self_int, degree, any } => {
            let m = MarkedLattice::new(*r)?;
            let classes = if *any {
                enumerate_any(&m, *self_int, *degree)
            } else {
                enumerate_classes(&m, *self_int, *degree)?
            };
            let items = classes.iter().map(|c| vector_item(&c.vector)).collect();
            let a = args(&[
                ("r", json!(r)),
                ("self_int", json!(self_int)),
                ("degree", json!(degree)),
                ("any", json!(any)),
            ]);
            Ok(Report::new("classes", a, items))
        }
        Command::Triples { r } => {
            let m = MarkedLattice::new(*r)?;
            let items = coplanar_triples(&m)?
                .iter()
                .map(|t| json!({ "lines": names(t) }))
                .collect();
            Ok(Report::new("triples", args(&[("r", json!(r))]), items))
        }
        Command::Sixes { r, double } => {
            let m = MarkedLattice::new(*r)?;
            if m.r() != 6 {
                return Err(Error::Unsupported(format!("sixes requires r = 6, got r={r}")).into());
            }
            let items = if *double {
                double_sixes(&m)?
                    .iter()
                    .map(|d| {
                        Ok(json!({
                            "six": names(&d.six),
                            "partner": names(&d.partner),
                            "root": root_from_six(&d.six, &m)?.to_string(),
                        }))
                    })
                    .collect::<Result<Vec<_>, Error>>()?
            } else {
                disjoint_line_sets(&m, 6)?
                    .iter()
                    .map(|s| Ok(json!({ "six": names(s), "root": root_from_six(s, &m)?.to_string() })))
                    .collect::<Result<Vec<_>, Error>>()?
            };
            Ok(Report::new("sixes", args(&[("r", json!(r)), ("double", json!(double))]), items))
        }
        Command::Orbit { r, weight } => {
            let m = MarkedLattice::new(*r)?;
            let w = LatticeVector::parse(weight, *r)?;
            let orb = orbit_with_cap(&w, &m, orbit_cap.unwrap_or(DEFAULT_ORBIT_CAP))?;
            let items = orb.iter().map(vector_item).collect();
            Ok(Report::new("orbit", args(&[("r", json!(r)), ("weight", json!(w.to_string()))]), items))
        }
        Command::Weights {
            r,
            fundamental,
            minuscule,
            dual,
            adjoint,
        } => weights(*r, *fundamental, *minuscule, *dual, *adjoint),
        Command::Degenerate { r, curves } => {
            let m = MarkedLattice::new(*r)?;
            let cs = if curves.trim().is_empty() {
                Vec::new()
            } else {
                parse_vector_list(curves, *r)?
            };
            let config = make_configuration(&cs, &m)?;
            let parts = orbit_decomposition(&config, &lines(&m), &m)?;
            let items = parts
                .iter()
                .map(|p| {
                    json!({
                        "representative": p.representative().to_string(),
                        "size": p.size(),
                        "label": p.label(),
                        "members": names(&p.members),
                    })
                })
                .collect();
            let incident: Vec<LatticeVector> = incident_lines(&config, &m).into_iter().map(|c| c.vector).collect();
            Ok(Report::new("degenerate", args(&[("r", json!(r)), ("curves", names(&cs))]), items)
                .tally("size")
                .with("gauge_type", config.gauge_type().to_string())
                .with("incident_lines", names(&incident)))
        }
        Command::Period { r, assign, canonical } => {
            let m = MarkedLattice::new(*r)?;
            let mut images = vec![TorsionPoint::zero(); r + 1];
            let mut given = vec![false; r + 1];
            for a in assign {
                let (sym, point) = a
                    .split_once('=')
                    .ok_or_else(|| Error::Parse {
                        input: a.clone(),
                        position: 0,
                        message: "expected SYMBOL=a/b,c/d".into(),
                    })?;
                let i = symbol_index(sym.trim(), *r).ok_or_else(|| Error::Parse {
                    input: a.clone(),
                    position: 0,
                    message: format!("unknown symbol {sym:?}; expected h or e1..e{r}"),
                })?;
                if given[i] {
                    bail!(Error::Domain(format!("symbol {sym} assigned twice")));
                }
                given[i] = true;
                images[i] = point.parse().map_err(|e| match e {
                    Error::Parse { position, message, .. } => Error::Parse {
                        input: a.clone(),
                        position: position + sym.chars().count() + 1,
                        message,
                    },
                    other => other,
                })?;
            }
            let p = make_period(images, &m)?;
            let symbols: Map<String, Value> = m
                .basis()
                .iter()
                .zip(p.images())
                .map(|(b, t)| (b.to_string(), Value::String(t.to_string())))
                .collect();
            let a = args(&[
                ("r", json!(r)),
                ("assign", Value::Object(symbols.clone())),
                ("canonical", json!(canonical)),
            ]);
            let report = if *canonical {
                let cap = orbit_cap.unwrap_or(DEFAULT_PERIOD_CAP);
                let c = weyl_canonicalize_with_cap(&p, &m, cap)?;
                let items = c
                    .values
                    .iter()
                    .enumerate()
                    .map(|(i, t)| json!({ "index": i + 1, "value": t.to_string() }))
                    .collect();
                Report::new("period", a, items).with("orbit_size", c.orbit_size)
            } else {
                let items = m
                    .simple_coroots()
                    .iter()
                    .zip(restrict_to_coroots(&p, &m)?)
                    .enumerate()
                    .map(|(i, (c, t))| json!({ "index": i + 1, "coroot": c.to_string(), "value": t.to_string() }))
                    .collect();
                Report::new("period", a, items)
            };
            Ok(report.with("images", symbols))
        }
    }
}

fn weights(r: usize, fundamental: Option<usize>, minuscule: bool, dual: bool, adjoint: bool) -> Result<Report> {
    let m = MarkedLattice::new(r)?;
    let a = args(&[
        ("r", json!(r)),
        ("fundamental", json!(fundamental)),
        ("minuscule", json!(minuscule)),
        ("dual", json!(dual)),
        ("adjoint", json!(adjoint)),
    ]);
    if adjoint {
        let ws = adjoint_weight_system(&m)?;
        let items = ws
            .weights
            .iter()
            .map(|(w, k)| json!({ "vector": w.to_string(), "multiplicity": k }))
            .collect();
        return Ok(Report::new("weights", a, items)
            .with("dimension", ws.dimension)
            .with("highest", ws.highest.to_string()));
    }
    let indices: Vec<usize> = match fundamental {
        Some(i) => vec![i],
        None if dual => bail!(Error::Domain("--dual needs --fundamental".into())),
        None => (1..=r).collect(),
    };
    let mut items = Vec::new();
    for i in indices {
        let lift = fundamental_weight_lift(&m, i)?.vector;
        let is_min = is_minuscule(&lift, &m)?;
        if minuscule && fundamental.is_none() && !is_min {
            continue;
        }
        let mut item = json!({
            "index": i,
            "vector": lift.to_string(),
            "coroot_values": m.evaluate_on_coroots(&lift)?,
            "minuscule": is_min,
        });
        if dual {
            let p = dual_partner(i, &m)?;
            item["partner"] = p.j.into();
            item["word"] = p.word.to_string().into();
            item["n"] = p.n.into();
        }
        items.push(item);
    }
    if items.is_empty() && fundamental.is_some() {
        return Err(anyhow!("no weights selected"));
    }
    Ok(Report::new("weights", a, items))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_list_positions_are_global() {
        match parse_vector_list("e1-e2,e1+x", 6) {
            Err(Error::Parse { position, input, .. }) => {
                assert_eq!(input, "e1-e2,e1+x");
                assert_eq!(position, 9);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_vector_list("e1-e2,h-e1-e2-e3", 6).unwrap().len(), 2);
    }

    #[test]
    fn symbols() {
        assert_eq!(symbol_index("h", 6), Some(0));
        assert_eq!(symbol_index("e6", 6), Some(6));
        assert_eq!(symbol_index("e7", 6), None);
        assert_eq!(symbol_index("x", 6), None);
    }
}
