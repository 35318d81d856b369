use std::collections::BTreeMap;

use serde_json::{json, Value};

use leafalg::coinv::{coinvariants_truncated, family_fields, verify_hp0, CoinvariantTable, Family};
use leafalg::geom::{
    chain_colengths, degenerate_locus, hp0_series, jacobian_bracket_matrix, leaves_check, milnor_number, rank_strata,
    tjurina, Stratum,
};
use leafalg::groebner::{krull_dimension, quotient_dimension};
use leafalg::sympower::{brute_sym2_coinvariants, sym2_mismatch, sym_power_series, sym_power_series_natural, BigradedSeries};
use leafalg::vfields::{derivations_up_to_degree, exceptional_ideal, incompressibility_truncated, BracketMatrix, Incompressibility, VectorField};
use leafalg::{buchberger, Colength, Error, GroebnerBasis, MonomialOrder, PolyRing, Polynomial, Structure, Variety};

use crate::{Cli, CliError, Command, FamilyArg, InputDocument, OrderArg, Report};

fn colength_json(c: &Colength) -> Value {
    match c {
        Colength::Finite(n) => json!(n),
        Colength::Infinite => json!("infinite"),
    }
}

fn ideal_json(gb: &GroebnerBasis) -> Value {
    gb.elements().iter().map(|p| p.to_string()).collect()
}

fn field_json(v: &VectorField) -> Value {
    json!({
        "coefficients": v.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "display": v.to_string(),
        "weight": v.weight(),
    })
}

fn fields_report(fields: &[VectorField]) -> Report {
    let text = if fields.is_empty() {
        "no fields".to_string()
    } else {
        fields
            .iter()
            .map(|v| match v.weight() {
                Some(w) => format!("[{w}] {v}"),
                None => v.to_string(),
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    Report {
        text,
        result: json!({"count": fields.len(), "fields": fields.iter().map(field_json).collect::<Vec<_>>()}),
    }
}

fn stratum_json(s: &Stratum) -> Value {
    json!({"rank": s.rank, "ideal": ideal_json(&s.ideal), "dimension": s.dimension})
}

fn table_json(t: &CoinvariantTable) -> Value {
    json!({
        "family": t.family,
        "generators": t.generators,
        "max_degree": t.max_degree,
        "dims": t.dims,
        "total": t.total(),
    })
}

fn series_layers(s: &BigradedSeries) -> Value {
    let layers: serde_json::Map<String, Value> = (0..=s.n_max())
        .map(|n| {
            let layer: serde_json::Map<String, Value> =
                s.layer(n).into_iter().map(|(e, c)| (e.to_string(), json!(c.to_string()))).collect();
            (n.to_string(), Value::Object(layer))
        })
        .collect();
    Value::Object(layers)
}

fn need_doc(doc: Option<&InputDocument>) -> Result<&InputDocument, CliError> {
    doc.ok_or_else(|| CliError::input("$", "this command needs an input document (-i FILE)"))
}

fn parse_arg(ring: &std::sync::Arc<PolyRing>, text: &str, flag: &str) -> Result<Polynomial, CliError> {
    ring.parse(text).map_err(|e| CliError::input(flag, e.to_string()))
}

/// The bracket matrix a structure provides, if any.
fn bracket_of(x: &Variety) -> Result<BracketMatrix, CliError> {
    match x.structure() {
        Structure::Bracket(pi) => Ok(pi.clone()),
        Structure::Jacobi(j) => Ok(j.pi.clone()),
        Structure::Jacobian => Ok(jacobian_bracket_matrix(x)?),
        other => Err(Error::WrongStructure(format!("no bracket for a {} structure", other.kind())).into()),
    }
}

fn poly_coefficients(p: &Polynomial) -> Result<BTreeMap<i64, i64>, CliError> {
    let mut out = BTreeMap::new();
    for (m, c) in p.terms() {
        if !c.is_integer() {
            return Err(CliError::input("--poly", format!("coefficient {c} is not an integer")));
        }
        let c: i64 = c
            .to_integer()
            .try_into()
            .map_err(|_| CliError::input("--poly", "coefficient too large"))?;
        out.insert(m.degree() as i64, c);
    }
    Ok(out)
}

pub(crate) fn dispatch(cli: &Cli, doc: Option<&InputDocument>) -> Result<Report, CliError> {
    if let Command::Sympower { poly, degree, n_max } = &cli.command {
        return sympower(doc, poly.as_deref(), *degree, *n_max);
    }
    let doc = need_doc(doc)?;
    let x = doc.variety()?;
    let ring = x.ring();
    let depth = cli.bracket_depth;
    let max_degree = |default: i64| cli.max_degree.unwrap_or(default);
    let order = match cli.order {
        OrderArg::Wgrevlex => MonomialOrder::WeightedGrevlex,
        OrderArg::Lex => MonomialOrder::Lex,
    };

    let report = match &cli.command {
        Command::Gb => {
            let gb = buchberger(ring, x.equations(), order)?;
            let qdim = quotient_dimension(&gb);
            let mut text: Vec<String> = gb.elements().iter().map(|p| p.to_string()).collect();
            if text.is_empty() {
                text.push("0".into());
            }
            Report {
                text: text.join("\n"),
                result: json!({
                    "order": format!("{order}"),
                    "basis": ideal_json(&gb),
                    "dimension": krull_dimension(&gb),
                    "quotient_dimension": qdim,
                }),
            }
        }
        Command::Member { poly } => {
            let p = parse_arg(ring, poly, "--poly")?;
            let gb = buchberger(ring, x.equations(), order)?;
            let nf = gb.normal_form(&p);
            let member = nf.is_zero();
            Report {
                text: format!("{member}\nnormal form: {nf}"),
                result: json!({"poly": p.to_string(), "member": member, "normal_form": nf.to_string()}),
            }
        }
        Command::Milnor => {
            let chain = chain_colengths(&x)?;
            let mu = milnor_number(&x)?;
            let mut text = format!("mu = {mu}");
            if let Some(i) = chain.iter().position(|c| !c.is_finite()) {
                text.push_str(&format!("\nJ_{} has infinite colength: the singularity is not isolated", i + 1));
            }
            Report {
                text,
                result: json!({"mu": colength_json(&mu), "chain_colengths": chain.iter().map(colength_json).collect::<Vec<_>>()}),
            }
        }
        Command::Tjurina => {
            let r = tjurina(&x)?;
            Report {
                text: r.to_string(),
                result: json!({
                    "mu": r.milnor,
                    "tau": r.tjurina,
                    "gap": r.gap,
                    "singularity_ring_series": r.singularity_ring_series.as_ref().map(|s| s.to_string()),
                    "predicted_local_coinv_dim": r.predicted_local_coinv_dim,
                }),
            }
        }
        Command::Gap => {
            let r = tjurina(&x)?;
            Report {
                text: format!("gap = {} (mu = {}, tau = {})", r.gap, r.milnor, r.tjurina),
                result: json!({"gap": r.gap, "mu": r.milnor, "tau": r.tjurina}),
            }
        }
        Command::Hp0 => {
            let s = hp0_series(&x)?;
            let total = s.at_one().unwrap_or(0);
            let coefficients: serde_json::Map<String, Value> =
                s.numerator().iter().map(|(e, c)| (e.to_string(), json!(c))).collect();
            Report {
                text: format!("P(u) = {s}\ntotal = {total}"),
                result: json!({"series": s.to_string(), "coefficients": coefficients, "total": total}),
            }
        }
        Command::Coinv { family } => {
            let family = match family {
                FamilyArg::Hamiltonian => Family::Hamiltonian,
                FamilyArg::Derivations => Family::Derivations,
            };
            let t = coinvariants_truncated(&x, &family, max_degree(6))?;
            Report {
                text: t.to_string(),
                result: table_json(&t),
            }
        }
        Command::VerifyHp0 => {
            let check = verify_hp0(&x, max_degree(2))?;
            Report {
                text: check.to_string(),
                result: json!({
                    "match": check.is_match(),
                    "series": check.series.to_string(),
                    "table": table_json(&check.table),
                    "mismatch": check.mismatch.map(|(w, o, c)| json!({"weight": w, "oracle": o, "closed_form": c})),
                }),
            }
        }
        Command::Strata => {
            let strata = rank_strata(&x, depth)?;
            Report {
                text: strata.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("\n"),
                result: json!({"strata": strata.iter().map(stratum_json).collect::<Vec<_>>()}),
            }
        }
        Command::Leaves => {
            let v = leaves_check(&x, depth)?;
            Report {
                text: v.to_string(),
                result: json!({
                    "pass": v.passed(),
                    "strata": v.strata.iter().map(stratum_json).collect::<Vec<_>>(),
                    "witness": v.witness.as_ref().map(stratum_json),
                }),
            }
        }
        Command::Degenerate => {
            let d = degenerate_locus(&x)?;
            let verdict = if d.is_finite() { "finite" } else { "not finite" };
            Report {
                text: format!("{verdict}: ideal {} has dimension {}", d.ideal, d.dimension),
                result: json!({"finite": d.is_finite(), "dimension": d.dimension, "ideal": ideal_json(&d.ideal)}),
            }
        }
        Command::Bracket { f, g } => match (f, g) {
            (Some(f), Some(g)) => {
                let (f, g) = (parse_arg(ring, f, "-f")?, parse_arg(ring, g, "-g")?);
                let value = match x.structure() {
                    Structure::Jacobi(j) => j.bracket(&f, &g),
                    _ => bracket_of(&x)?.bracket(&f, &g),
                };
                let reduced = x.gb().normal_form(&value);
                Report {
                    text: value.to_string(),
                    result: json!({"f": f.to_string(), "g": g.to_string(), "value": value.to_string(), "normal_form": reduced.to_string()}),
                }
            }
            (None, None) => {
                let pi = bracket_of(&x)?;
                let vars = ring.vars();
                let mut lines = Vec::new();
                for i in 0..vars.len() {
                    for j in i + 1..vars.len() {
                        lines.push(format!("{{{}, {}}} = {}", vars[i], vars[j], pi.entry(i, j)));
                    }
                }
                let matrix: Vec<Vec<String>> =
                    pi.entries().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
                Report {
                    text: lines.join("\n"),
                    result: json!({"matrix": matrix}),
                }
            }
            _ => return Err(CliError::input("-f/-g", "give both -f and -g, or neither")),
        },
        Command::Hamvec { f } => {
            let f = parse_arg(ring, f, "-f")?;
            let xi = match x.structure() {
                Structure::Jacobi(j) => j.hamiltonian(&f),
                _ => bracket_of(&x)?.hamiltonian(&f),
            };
            Report {
                text: xi.to_string(),
                result: json!({"f": f.to_string(), "field": field_json(&xi)}),
            }
        }
        Command::Hamgen => fields_report(&family_fields(&x, &Family::Hamiltonian, max_degree(2))?),
        Command::Derivations => fields_report(&derivations_up_to_degree(x.gb(), max_degree(2))?),
        Command::Exceptional => {
            let fields = derivations_up_to_degree(x.gb(), max_degree(2))?;
            let ideal = exceptional_ideal(&fields, x.gb())?;
            let dim = krull_dimension(&ideal);
            Report {
                text: format!("exceptional ideal {ideal} (dimension {dim}, from {} fields)", fields.len()),
                result: json!({
                    "ideal": ideal_json(&ideal),
                    "dimension": dim,
                    "quotient_dimension": quotient_dimension(&ideal),
                    "fields": fields.len(),
                }),
            }
        }
        Command::Incompressible => {
            let d = max_degree(3);
            let fields = family_fields(&x, &Family::Hamiltonian, d)?;
            match incompressibility_truncated(&fields, x.gb(), d)? {
                Incompressibility::ConsistentTo { max_degree, relations } => Report {
                    text: format!("consistent through degree {max_degree} ({relations} relations checked)"),
                    result: json!({"consistent": true, "max_degree": max_degree, "relations": relations}),
                },
                Incompressibility::Violated { witness, value } => Report {
                    text: format!(
                        "violated: sum f_i xi_i = 0 with f = ({}) but sum xi_i(f_i) = {value}",
                        witness.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
                    ),
                    result: json!({
                        "consistent": false,
                        "witness": witness.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "value": value.to_string(),
                    }),
                },
            }
        }
        Command::Sym2Brute { guard } => {
            let t = brute_sym2_coinvariants(&x, max_degree(6), *guard)?;
            let mut text = t.to_string();
            let mut comparison = Value::Null;
            if matches!(x.structure(), Structure::Jacobian) && x.codimension() == 1 {
                if let (Ok(hp0), Some(d)) = (hp0_series(&x), x.equations()[0].homogeneous_degree()) {
                    let d = d as i64;
                    let mismatch = sym2_mismatch(&t, hp0.numerator(), d)?;
                    let natural = sym_power_series_natural(hp0.numerator(), d, 2)?;
                    let conjectural = x.expected_dimension() != 2;
                    let label = if conjectural { " (conjectural comparison)" } else { "" };
                    text.push_str(&format!(
                        "\nseries s^2 layer{label}: {}",
                        match mismatch {
                            None => "agrees".to_string(),
                            Some((w, a, b)) => format!("differs at weight {w}: direct {a}, series {b}"),
                        }
                    ));
                    comparison = json!({
                        "conjectural": conjectural,
                        "series_dims": (0..=t.max_degree).map(|w| natural.coefficient(2, w).to_string()).collect::<Vec<_>>(),
                        "mismatch": mismatch.map(|(w, a, b)| json!({"weight": w, "direct": a, "series": b.to_string()})),
                    });
                }
            }
            let mut result = table_json(&t);
            result["comparison"] = comparison;
            Report { text, result }
        }
        Command::Sympower { .. } => unreachable!("handled above"),
    };
    Ok(report)
}

fn sympower(doc: Option<&InputDocument>, poly: Option<&str>, degree: Option<i64>, n_max: u32) -> Result<Report, CliError> {
    let (p, d) = match poly {
        Some(text) => {
            let ring = PolyRing::standard(&["u"]).expect("one variable");
            let p = parse_arg(&ring, text, "--poly")?;
            (poly_coefficients(&p)?, degree.unwrap_or(0))
        }
        None => {
            let doc = need_doc(doc)?;
            let x = doc.variety()?;
            let series = hp0_series(&x)?;
            let d = match degree {
                Some(d) => d,
                None => x
                    .equations()
                    .last()
                    .and_then(|f| f.homogeneous_degree())
                    .ok_or_else(|| Error::NonHomogeneous("last equation".into()))? as i64,
            };
            (series.numerator().clone(), d)
        }
    };
    let corrected = sym_power_series(&p, d, n_max)?;
    let uncorrected = sym_power_series(&p, 0, n_max)?;
    let natural = sym_power_series_natural(&p, d, n_max)?;
    let text = format!("corrected (d = {d}):\n{corrected}\nuncorrected:\n{uncorrected}\nfunction weights:\n{natural}");
    Ok(Report {
        text,
        result: json!({
            "p": p.iter().map(|(e, c)| (e.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
            "d": d,
            "n_max": n_max,
            "corrected": series_layers(&corrected),
            "uncorrected": series_layers(&uncorrected),
            "natural": series_layers(&natural),
        }),
    })
}
