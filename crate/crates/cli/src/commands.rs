//! One function per subcommand. Each returns the document to emit and
//! whether its checks passed.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use starph_core::arrangement::{chamber_witness, reduced_chamber_poset};
use starph_core::homology::{betti1_euler, closed_form_betti1, connected_components, fundamental_cycles};
use starph_core::model::{build_full_model, build_reduced_model, filter_at};
use starph_core::oracle::oracle_check;
use starph_core::persistence::{
    build_representation, decomposition_json, interval_decomposition, verify_decomposition,
};
use starph_core::spanning::{biased_spanning_forest, biased_spanning_tree, model_weights};
use starph_core::verify::{run_on_lengths, run_suite, SuiteConfig};
use starph_core::{EdgeLengthVector, ModelGraph, Rational, Region, SpanningTree};

use crate::render::Diagram;
use crate::scenario::{Format, Scenario};

/// Rendered output plus whether every check passed.
pub struct Outcome {
    pub document: String,
    pub passed: bool,
    /// JSON for stderr when checks fail and the document is not JSON.
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn json(value: &Value, passed: bool) -> Outcome {
        Outcome {
            document: pretty(value),
            passed,
            diagnostic: None,
        }
    }
}

fn pretty(value: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(value).expect("JSON values serialize"))
}

/// Bad input or an unsupported request; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<starph_core::Error> for UsageError {
    fn from(e: starph_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn unsupported(cmd: &str, format: Format) -> UsageError {
    UsageError(format!("{cmd} does not support --format {}", format.extension()))
}

fn full_rank(lengths: &EdgeLengthVector, r: &Rational, l: &Rational) -> usize {
    betti1_euler(&filter_at(&build_full_model(&lengths.with_first(l.clone())), r))
}

pub fn ranks(scenario: &Scenario, format: Format) -> Result<Outcome, UsageError> {
    let lengths = scenario.edge_lengths().map_err(|e| UsageError(e.0))?;
    let rep = build_representation(&lengths)?;
    let mut rows = Vec::new();
    let mut passed = true;
    for (i, c) in rep.poset().chambers().iter().enumerate() {
        if !scenario.sweep.admits(c.band, c.side) {
            continue;
        }
        let (r, l) = chamber_witness(c, &lengths);
        let euler = full_rank(&lengths, &r, &l);
        let reduced = rep.space(i).dim();
        let closed = closed_form_betti1(c, &lengths);
        let matches = euler == reduced && closed.is_none_or(|v| v == euler);
        passed &= matches;
        rows.push(json!({
            "chamber": i,
            "band": c.band,
            "interval": c.band_label(),
            "side": c.side,
            "witness": {"r": r, "L": l},
            "euler_rank": euler,
            "reduced_rank": reduced,
            "closed_form": closed,
            "match": matches,
        }));
    }
    let queries: Vec<Value> = scenario
        .queries
        .iter()
        .map(|q| {
            json!({
                "r": q.r,
                "L": q.l,
                "chamber": rep.poset().chamber_of(&q.r, &q.l),
                "euler_rank": full_rank(&lengths, &q.r, &q.l),
            })
        })
        .collect();
    match format {
        Format::Json => Ok(Outcome::json(
            &json!({
                "k": lengths.k(),
                "lengths": lengths.user_order(),
                "chambers": rows,
                "queries": queries,
            }),
            passed,
        )),
        Format::Ascii => {
            let mut table = vec![[
                "chamber", "interval", "side", "euler", "reduced", "closed", "match",
            ]
            .map(String::from)
            .to_vec()];
            for row in &rows {
                table.push(vec![
                    row["chamber"].to_string(),
                    row["interval"].as_str().unwrap_or_default().to_string(),
                    row["side"].as_str().unwrap_or_default().to_string(),
                    row["euler_rank"].to_string(),
                    row["reduced_rank"].to_string(),
                    row["closed_form"].as_u64().map_or("-".to_string(), |v| v.to_string()),
                    if row["match"] == true { "yes" } else { "NO" }.to_string(),
                ]);
            }
            for q in &queries {
                table.push(vec![
                    "query".to_string(),
                    format!("r={} L={}", q["r"].as_str().unwrap_or_default(), q["L"].as_str().unwrap_or_default()),
                    String::new(),
                    q["euler_rank"].to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]);
            }
            Ok(Outcome {
                document: aligned(&table),
                passed,
                diagnostic: (!passed).then(|| pretty(&json!({"chambers": rows}))),
            })
        }
        Format::Svg => Err(unsupported("ranks", format)),
    }
}

fn aligned(rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// `KIND:BOUND`, e.g. `trapezoid:2` or `rectangle:1/2`.
pub fn parse_overlay(spec: &str) -> Result<Region, UsageError> {
    let (kind, bound) = spec
        .split_once(':')
        .ok_or_else(|| UsageError(format!("overlay {spec:?} is not KIND:BOUND")))?;
    let bound: Rational = bound.parse()?;
    match kind.to_ascii_lowercase().as_str() {
        "trapezoid" | "t" => Ok(Region::Trapezoid(bound)),
        "rectangle" | "r" => Ok(Region::Rectangle(bound)),
        other => Err(UsageError(format!("unknown overlay kind {other:?}"))),
    }
}

pub fn arrangement(scenario: &Scenario, format: Format, overlay: Option<Region>) -> Result<Outcome, UsageError> {
    let lengths = scenario.edge_lengths().map_err(|e| UsageError(e.0))?;
    let poset = reduced_chamber_poset(&lengths);
    let rep = build_representation(&lengths)?;
    let ranks = rep.dims();
    let mut verticals: BTreeMap<Rational, usize> = BTreeMap::new();
    for t in lengths.tail() {
        *verticals.entry(t.clone()).or_default() += 1;
    }
    let diagram = Diagram {
        poset: &poset,
        ranks: &ranks,
        verticals,
        overlay,
    };
    let document = match format {
        Format::Ascii => diagram.ascii(),
        Format::Svg => diagram.svg(),
        Format::Json => {
            let chambers: Vec<Value> = poset
                .chambers()
                .iter()
                .zip(&ranks)
                .map(|(c, rank)| {
                    let (r, l) = chamber_witness(c, &lengths);
                    json!({
                        "id": c.id,
                        "band": c.band,
                        "lower": c.lower,
                        "upper": c.upper,
                        "side": c.side,
                        "rank": rank,
                        "witness": {"r": r, "L": l},
                        "in_overlay": diagram.overlay.as_ref().map(|o| o.contains_chamber(c)),
                    })
                })
                .collect();
            let value = json!({
                "k": lengths.k(),
                "lengths": lengths.user_order(),
                "verticals": diagram.verticals.iter().map(|(v, m)| json!({"r": v, "multiplicity": m})).collect::<Vec<_>>(),
                "diagonal": "L = r",
                "chambers": chambers,
                "order": poset.hasse_edges(),
                "overlay": diagram.overlay.as_ref().map(|o| json!({"kind": o.kind(), "bound": o.bound()})),
            });
            return Ok(Outcome::json(&value, true));
        }
    };
    Ok(Outcome {
        document,
        passed: true,
        diagnostic: None,
    })
}

pub fn decompose(scenario: &Scenario, format: Format) -> Result<Outcome, UsageError> {
    let lengths = scenario.edge_lengths().map_err(|e| UsageError(e.0))?;
    let rep = build_representation(&lengths)?;
    let summands = interval_decomposition(&rep)?;
    let report = verify_decomposition(&rep, &summands);
    let passed = report.passed();
    match format {
        Format::Json => Ok(Outcome::json(&decomposition_json(&rep, &summands, &report), passed)),
        Format::Ascii => {
            let mut out = format!("k = {}\n", lengths.k());
            for s in &summands {
                out.push_str(&format!("{} x{}\n", s.region, s.multiplicity));
            }
            out.push_str(if passed { "verified\n" } else { "verification FAILED\n" });
            for f in &report.failures {
                out.push_str(&format!("  {f}\n"));
            }
            Ok(Outcome {
                document: out,
                passed,
                diagnostic: (!passed).then(|| pretty(&decomposition_json(&rep, &summands, &report))),
            })
        }
        Format::Svg => Err(unsupported("decompose", format)),
    }
}

pub struct VerifyArgs {
    pub k: Option<usize>,
    pub seed: u64,
    pub trials: usize,
    pub with_oracle: bool,
}

/// Fixed lengths when a scenario is given, random samples otherwise.
pub fn verify(scenario: Option<&Scenario>, args: &VerifyArgs, format: Format) -> Result<Outcome, UsageError> {
    if format != Format::Json {
        return Err(unsupported("verify", format));
    }
    let report = match scenario {
        Some(s) => run_on_lengths(&s.edge_lengths().map_err(|e| UsageError(e.0))?, args.seed, args.with_oracle),
        None => {
            let mut config = SuiteConfig {
                trials: args.trials,
                seed: args.seed,
                with_oracle: args.with_oracle,
                ..SuiteConfig::default()
            };
            if let Some(k) = args.k {
                if k < 3 {
                    return Err(UsageError(format!("k must be at least 3, got {k}")));
                }
                config.k_min = k;
                config.k_max = k;
            }
            run_suite(&config)
        }
    };
    let value = serde_json::to_value(&report).expect("report serializes");
    Ok(Outcome::json(&value, report.all_passed()))
}

fn tree_json(g: &ModelGraph, t: &SpanningTree) -> Result<Value, UsageError> {
    let w = model_weights(g);
    let edges: Vec<Value> = t
        .edges
        .iter()
        .map(|i| {
            let e = g.edge(*i).expect("tree edges belong to the graph");
            json!({"index": i, "endpoints": [e.endpoints.0.to_string(), e.endpoints.1.to_string()]})
        })
        .collect();
    Ok(json!({
        "root": t.root.to_string(),
        "vertices": t.vertices.len(),
        "edges": edges,
        "total_priority": t.total_priority(g, &w)?,
    }))
}

/// Biased spanning tree of the reduced model, and biased forests of the
/// full model at each query point.
pub fn tree(scenario: &Scenario, format: Format) -> Result<Outcome, UsageError> {
    if format != Format::Json {
        return Err(unsupported("tree", format));
    }
    let lengths = scenario.edge_lengths().map_err(|e| UsageError(e.0))?;
    let g = build_reduced_model(&lengths);
    let w = model_weights(&g);
    let t = biased_spanning_tree(&g, &w)?;
    let cycles = fundamental_cycles(&g, std::slice::from_ref(&t))?;
    let mut queries = Vec::new();
    for q in &scenario.queries {
        let g = filter_at(&build_full_model(&lengths.with_first(q.l.clone())), &q.r);
        let forest = biased_spanning_forest(&g, &model_weights(&g))?;
        let cycles = fundamental_cycles(&g, &forest)?;
        queries.push(json!({
            "r": q.r,
            "L": q.l,
            "components": connected_components(&g).0,
            "forest": forest.iter().map(|t| tree_json(&g, t)).collect::<Result<Vec<_>, _>>()?,
            "fundamental_cycles": cycles.len(),
        }));
    }
    let value = json!({
        "k": lengths.k(),
        "lengths": lengths.user_order(),
        "reduced": {
            "tree": tree_json(&g, &t)?,
            "fundamental_cycles": cycles.len(),
        },
        "queries": queries,
    });
    Ok(Outcome::json(&value, true))
}

pub const ORACLE_MAX_K: usize = 5;

pub fn oracle(scenario: &Scenario, format: Format) -> Result<Outcome, UsageError> {
    if format != Format::Json {
        return Err(unsupported("oracle-check", format));
    }
    if scenario.k > ORACLE_MAX_K {
        return Err(UsageError(format!(
            "oracle-check is limited to k <= {ORACLE_MAX_K}, got k = {}",
            scenario.k
        )));
    }
    let lengths = scenario.edge_lengths().map_err(|e| UsageError(e.0))?;
    let comparisons = oracle_check(&lengths)?;
    let passed = comparisons.iter().all(|c| c.agrees());
    let rows: Vec<Value> = comparisons
        .iter()
        .map(|c| {
            json!({
                "r": c.r,
                "L": c.l,
                "complex": {"b0": c.oracle.0, "b1": c.oracle.1, "b2": c.oracle_b2},
                "model": {"b0": c.model.0, "b1": c.model.1},
                "agrees": c.agrees(),
            })
        })
        .collect();
    let value = json!({
        "k": lengths.k(),
        "lengths": lengths.user_order(),
        "points": rows.len(),
        "agree": passed,
        "comparisons": rows,
    });
    Ok(Outcome::json(&value, passed))
}
