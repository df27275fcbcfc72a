use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use odsk_core::completion::dedekind_macneille;
use odsk_core::dimension::{order_dimension, DimensionError, DimensionOptions};
use odsk_core::factors::{boolean_greedy, factorization_report, ordinal_factorization};
use odsk_core::fca::{canonical_base, concepts, is_guttman, parse_cxt, write_cxt, FormalContext};
use odsk_core::layout::{layout_registry, quality, render, Format, LayoutOptions};
use odsk_core::omspace::{
    mediated_metric, parse_distance_csv, relational_distortion, FiniteMetric, OmSpace,
};
use odsk_core::order::{
    is_linear_extension, parse_edge_list, parse_relation, pareto_maxima, product_order,
    product_order_without_quotient, strict_domination_order, write_edge_list, OrdinalStructure, Poset, Relation,
};
use odsk_core::scaling::{
    apply_scaling, ordinal_structure, parse_scaling_config, parse_table_csv, ManyValuedTable,
};
use serde_json::{json, Value};

use crate::{Cli, Command, DrawArgs, OmCommand};

pub enum Failure {
    /// Unreadable or invalid input.
    Input(anyhow::Error),
    /// Budget ran out; carries the bounds report.
    Budget(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn render(self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.text
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_context(path: &Path) -> Result<FormalContext> {
    parse_cxt(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_poset(path: &Path) -> Result<Poset> {
    parse_edge_list(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_metric(path: &Path) -> Result<FiniteMetric> {
    parse_distance_csv(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_table(table: &Path, spec: &Path) -> Result<(ManyValuedTable, OrdinalStructure)> {
    let t = parse_table_csv(&read(table)?).with_context(|| format!("parsing {}", table.display()))?;
    let config =
        parse_scaling_config(&read(spec)?).with_context(|| format!("parsing {}", spec.display()))?;
    let s = ordinal_structure(&t, &config)?;
    Ok((t, s))
}

fn domination_poset(s: &OrdinalStructure, weak: bool, no_quotient: bool) -> Poset {
    match (weak, no_quotient) {
        (false, _) => strict_domination_order(s),
        (true, true) => product_order_without_quotient(s),
        (true, false) => product_order(s).poset,
    }
}

fn budget(ms: Option<u64>) -> Duration {
    ms.map(Duration::from_millis)
        .unwrap_or_else(|| DimensionOptions::default().budget)
}

fn names_of(all: &[String], set: impl IntoIterator<Item = usize>) -> Vec<String> {
    set.into_iter().map(|i| all[i].clone()).collect()
}

fn write_or_print(output: &Option<PathBuf>, content: String, json: Value) -> Result<Output> {
    match output {
        Some(path) => {
            fs::write(path, &content).with_context(|| format!("writing {}", path.display()))?;
            Ok(Output {
                text: format!("written: {}\n", path.display()),
                json: json!({ "written": path.display().to_string() }),
            })
        }
        None => Ok(Output {
            text: content.clone(),
            json,
        }),
    }
}

pub fn run(cli: &Cli) -> Result<String, Failure> {
    let out = match &cli.command {
        Command::Concepts {
            context,
            reduced_labels,
        } => cmd_concepts(context, *reduced_labels)?,
        Command::Implications { context } => cmd_implications(context)?,
        Command::Guttman { context } => cmd_guttman(context)?,
        Command::Complete { poset } => cmd_complete(poset)?,
        Command::Dimension {
            input,
            spec,
            max_k,
            budget_ms,
            weak,
            no_quotient,
        } => {
            let p = match spec {
                Some(spec) => domination_poset(&read_table(input, spec)?.1, *weak, *no_quotient),
                None => read_poset(input)?,
            };
            let opts = DimensionOptions {
                max_k: *max_k,
                budget: budget(*budget_ms),
            };
            cmd_dimension(&p, opts, cli.json)?
        }
        Command::Pareto {
            table,
            spec,
            verify_points,
        } => cmd_pareto(table, spec, *verify_points)?,
        Command::Domination {
            table,
            spec,
            weak,
            no_quotient,
            output,
        } => {
            let p = domination_poset(&read_table(table, spec)?.1, *weak, *no_quotient);
            let json = json!({
                "elements": p.elements(),
                "covers": p.covers().iter().map(|&(a, b)| [p.name(a), p.name(b)]).collect::<Vec<_>>(),
            });
            write_or_print(output, write_edge_list(&p), json)?
        }
        Command::Scale {
            table,
            spec,
            output,
        } => {
            let t = parse_table_csv(&read(table)?)
                .with_context(|| format!("parsing {}", table.display()))?;
            let config = parse_scaling_config(&read(spec)?)
                .with_context(|| format!("parsing {}", spec.display()))?;
            let ctx = apply_scaling(&t, &config).map_err(anyhow::Error::from)?;
            let json = json!({
                "objects": ctx.objects(),
                "attributes": ctx.attributes(),
                "incidences": ctx.incidences(),
            });
            write_or_print(output, write_cxt(&ctx), json)?
        }
        Command::Factors {
            context,
            k,
            boolean,
        } => cmd_factors(context, *k, *boolean)?,
        Command::Omspace { command } => match command {
            OmCommand::Distortion {
                relation,
                distances,
                raw_relation,
                reflexive_close,
            } => cmd_distortion(relation, distances, *raw_relation, *reflexive_close)?,
            OmCommand::Mediate { context, distances } => cmd_mediate(context, distances)?,
        },
        Command::Draw(args) => cmd_draw(args, cli.seed)?,
    };
    Ok(out.render(cli.json))
}

fn cmd_concepts(path: &Path, reduced: bool) -> Result<Output> {
    let ctx = read_context(path)?;
    let lattice = concepts(&ctx)?;
    let mut text = format!("concepts: {}\n", lattice.len());
    let mut items = Vec::new();
    for (i, c) in lattice.concepts().iter().enumerate() {
        let label = if reduced {
            lattice.reduced_label(&ctx, i)
        } else {
            lattice.full_label(&ctx, i)
        };
        let _ = writeln!(text, "{i}\t{label}");
        items.push(json!({
            "extent": names_of(ctx.objects(), c.extent.iter()),
            "intent": names_of(ctx.attributes(), c.intent.iter()),
        }));
    }
    Ok(Output {
        text,
        json: json!({ "count": lattice.len(), "concepts": items }),
    })
}

fn cmd_implications(path: &Path) -> Result<Output> {
    let ctx = read_context(path)?;
    let base = canonical_base(&ctx)?;
    let mut text = format!("implications: {}\n", base.len());
    for imp in &base {
        let _ = writeln!(text, "{}", imp.display(&ctx));
    }
    let items: Vec<Value> = base
        .iter()
        .map(|imp| {
            json!({
                "premise": names_of(ctx.attributes(), imp.premise().iter()),
                "conclusion": names_of(ctx.attributes(), imp.conclusion().iter()),
            })
        })
        .collect();
    Ok(Output {
        text,
        json: json!({ "count": base.len(), "implications": items }),
    })
}

fn cmd_guttman(path: &Path) -> Result<Output> {
    let ctx = read_context(path)?;
    let witness = is_guttman(&ctx);
    let mut text = format!("guttman: {}\n", witness.is_some());
    let json = match &witness {
        Some(w) => {
            text.push_str("# object\trank\n");
            for (g, r) in w.object_rank.iter().enumerate() {
                let _ = writeln!(text, "{}\t{r}", ctx.objects()[g]);
            }
            text.push_str("# attribute\trank\n");
            for (m, r) in w.attribute_rank.iter().enumerate() {
                let _ = writeln!(text, "{}\t{r}", ctx.attributes()[m]);
            }
            json!({
                "guttman": true,
                "object_rank": ctx.objects().iter().zip(&w.object_rank).collect::<Vec<_>>(),
                "attribute_rank": ctx.attributes().iter().zip(&w.attribute_rank).collect::<Vec<_>>(),
            })
        }
        None => json!({ "guttman": false }),
    };
    Ok(Output { text, json })
}

fn cmd_complete(path: &Path) -> Result<Output> {
    let p = read_poset(path)?;
    let c = dedekind_macneille(&p);
    let lattice = c.to_poset();
    let new_nodes: Vec<String> = c.new_nodes.iter().map(|&n| c.label(n)).collect();
    let text = format!(
        "elements: {}\nlattice size: {}\nnew nodes: {}\n{}",
        p.len(),
        lattice.len(),
        new_nodes.len(),
        write_edge_list(&lattice)
    );
    let json = json!({
        "elements": p.len(),
        "lattice_size": lattice.len(),
        "new_nodes": new_nodes,
        "covers": lattice.covers().iter().map(|&(a, b)| [lattice.name(a), lattice.name(b)]).collect::<Vec<_>>(),
    });
    Ok(Output { text, json })
}

fn cmd_dimension(p: &Poset, opts: DimensionOptions, as_json: bool) -> Result<Output, Failure> {
    match order_dimension(p, opts) {
        Ok(d) => {
            let verified = d.realizer.realizes(p);
            let text = format!(
                "elements: {}\ndimension: {}\nverified: {verified}\nrealizer:\n{}",
                p.len(),
                d.dim,
                d.realizer.to_text(p.elements())
            );
            let json = json!({
                "elements": p.len(),
                "dimension": d.dim,
                "verified": verified,
                "realizer": d.realizer.extensions.iter().map(|e| e.names(p.elements())).collect::<Vec<_>>(),
            });
            Ok(Output { text, json })
        }
        Err(DimensionError::InvalidMaxK) => Err(Failure::Input(anyhow!("--max-k must be at least 1"))),
        Err(e) => {
            let (bounds, reason) = match &e {
                DimensionError::BudgetExceeded(b) => (*b, "budget"),
                DimensionError::ExceedsMaxK { bounds, .. } => (*bounds, "max-k"),
                DimensionError::InvalidMaxK => unreachable!(),
            };
            let out = Output {
                text: format!(
                    "elements: {}\nstopped: {reason}\nlower: {}\nupper: {}\n",
                    p.len(),
                    bounds.lower,
                    bounds.upper
                ),
                json: json!({
                    "elements": p.len(),
                    "stopped": reason,
                    "lower": bounds.lower,
                    "upper": bounds.upper,
                }),
            };
            Err(Failure::Budget(out.render(as_json)))
        }
    }
}

fn cmd_pareto(table: &Path, spec: &Path, verify_points: bool) -> Result<Output> {
    let (t, s) = read_table(table, spec)?;
    let maxima = names_of(s.elements(), pareto_maxima(&s));
    let mut text = String::from("maxima:\n");
    for m in &maxima {
        let _ = writeln!(text, "{m}");
    }
    let mut json = json!({ "maxima": maxima });
    if verify_points {
        let col = |name: &str| -> Result<Vec<f64>> {
            let c = t
                .column(name)
                .ok_or_else(|| anyhow!("--verify-points needs a `{name}` column"))?;
            (0..t.objects().len())
                .map(|r| c.number(r).ok_or_else(|| anyhow!("column `{name}` is not numeric")))
                .collect()
        };
        let (w, d, pts, gd) = (col("W")?, col("D")?, col("Pts")?, col("GD")?);
        let mismatches: Vec<String> = (0..t.objects().len())
            .filter(|&r| pts[r] != 3.0 * w[r] + d[r])
            .map(|r| t.objects()[r].clone())
            .collect();
        let p = strict_domination_order(&s);
        let mut ranking: Vec<usize> = (0..p.len()).collect();
        ranking.sort_by(|&a, &b| pts[a].total_cmp(&pts[b]).then(gd[a].total_cmp(&gd[b])));
        let extends = is_linear_extension(&p, &ranking);
        let _ = writeln!(text, "points check: {}", if mismatches.is_empty() { "ok" } else { "mismatch" });
        for m in &mismatches {
            let _ = writeln!(text, "points mismatch: {m}");
        }
        let _ = writeln!(text, "pts-gd ranking extends domination: {extends}");
        json["points_mismatches"] = json!(mismatches);
        json["ranking_extends_domination"] = json!(extends);
        if !mismatches.is_empty() {
            bail!("points differ from 3W + D for {}", mismatches.join(", "));
        }
    }
    Ok(Output { text, json })
}

fn cmd_factors(path: &Path, k: usize, boolean: bool) -> Result<Output> {
    let ctx = read_context(path)?;
    let pairs = |v: &[(usize, usize)]| -> Vec<[String; 2]> {
        v.iter()
            .map(|&(g, m)| [ctx.objects()[g].clone(), ctx.attributes()[m].clone()])
            .collect()
    };
    if boolean {
        let b = boolean_greedy(&ctx, Some(k))?;
        let mut text = format!("factors: {}\n", b.factors.len());
        for c in &b.factors {
            let _ = writeln!(
                text,
                "{{{}}} | {{{}}}",
                names_of(ctx.objects(), c.extent.iter()).join(", "),
                names_of(ctx.attributes(), c.intent.iter()).join(", ")
            );
        }
        let _ = writeln!(text, "uncovered: {}", b.uncovered.len());
        for &(g, m) in &b.uncovered {
            let _ = writeln!(text, "{}\t{}", ctx.objects()[g], ctx.attributes()[m]);
        }
        let json = json!({
            "factors": b.factors.iter().map(|c| json!({
                "extent": names_of(ctx.objects(), c.extent.iter()),
                "intent": names_of(ctx.attributes(), c.intent.iter()),
            })).collect::<Vec<_>>(),
            "uncovered": pairs(&b.uncovered),
        });
        return Ok(Output { text, json });
    }
    let fz = ordinal_factorization(&ctx, k)?;
    let json = json!({
        "factors": fz.factors.iter().map(|f| f.chain.iter().map(|c| json!({
            "extent": names_of(ctx.objects(), c.extent.iter()),
            "intent": names_of(ctx.attributes(), c.intent.iter()),
        })).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "covered": fz.covered.len(),
        "uncovered": pairs(&fz.uncovered),
    });
    Ok(Output {
        text: factorization_report(&ctx, &fz),
        json,
    })
}

/// The relation re-indexed to the metric's element order.
fn align(rel: &Relation, metric: &FiniteMetric) -> Result<Relation> {
    let mut pairs = Vec::new();
    for &(a, b) in rel.pairs() {
        let find = |i: usize| {
            let name = &rel.elements()[i];
            metric
                .index_of(name)
                .ok_or_else(|| anyhow!("`{name}` has no row in the distance matrix"))
        };
        pairs.push((find(a)?, find(b)?));
    }
    for e in rel.elements() {
        if metric.index_of(e).is_none() {
            bail!("`{e}` has no row in the distance matrix");
        }
    }
    Ok(Relation::with_pairs(metric.elements().to_vec(), pairs)?)
}

fn cmd_distortion(
    relation: &Path,
    distances: &Path,
    raw: bool,
    reflexive_close: bool,
) -> Result<Output> {
    let text = read(relation)?;
    let rel = if raw {
        parse_relation(&text)?
    } else {
        let p = parse_edge_list(&text)?;
        Relation::with_pairs(
            p.elements().to_vec(),
            (0..p.len()).flat_map(|a| p.up_set(a).iter().map(move |b| (a, b))),
        )?
    };
    let metric = read_metric(distances)?;
    let mut space = OmSpace::new(align(&rel, &metric)?, metric)?;
    if reflexive_close {
        space = space.reflexive_closure();
    }
    let r = relational_distortion(&space)?;
    let names = space.relation().elements();
    let (a, b) = (&names[r.witness.0], &names[r.witness.1]);
    Ok(Output {
        text: format!("distortion: {}\nwitness: {a}\t{b}\n", r.value),
        json: json!({ "distortion": r.value.to_string(), "witness": [a, b] }),
    })
}

fn cmd_mediate(context: &Path, distances: &Path) -> Result<Output> {
    let ctx = read_context(context)?;
    let metric = read_metric(distances)?;
    let m = mediated_metric(&ctx, &metric)?;
    let mut text = m.to_table();
    for e in &m.empty_extents {
        let _ = writeln!(text, "empty extent: {e}");
    }
    let json = json!({
        "attributes": m.attributes,
        "distances": m.distances.iter().map(|row| row.iter().map(|v| v.map(|v| v.to_string())).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "empty_extents": m.empty_extents,
    });
    Ok(Output { text, json })
}

fn cmd_draw(args: &DrawArgs, seed: u64) -> Result<Output> {
    let registry = layout_registry();
    let algo = registry.get(&args.algo)?;
    let opts = LayoutOptions {
        seed,
        budget: budget(args.budget_ms),
    };
    let is_cxt = args.input.extension().is_some_and(|e| e == "cxt");
    let drawing = if is_cxt {
        let ctx = read_context(&args.input)?;
        let lattice = concepts(&ctx)?;
        let p = lattice.index_poset();
        let labels = (0..lattice.len())
            .map(|i| {
                if args.reduced_labels {
                    lattice.reduced_label(&ctx, i)
                } else {
                    lattice.full_label(&ctx, i)
                }
            })
            .collect();
        algo.draw(&p, &opts).with_labels(labels)
    } else {
        algo.draw(&read_poset(&args.input)?, &opts)
    };
    let format: Format = match (&args.format, &args.output) {
        (Some(f), _) => f.parse().map_err(|e: String| anyhow!(e))?,
        (None, Some(path)) if path.extension().is_some_and(|e| e == "dot") => Format::Dot,
        _ => Format::Svg,
    };
    let doc = render(&drawing, format);
    let q = quality(&drawing);
    match &args.output {
        Some(path) => {
            fs::write(path, doc).with_context(|| format!("writing {}", path.display()))?;
            let min = q
                .min_node_edge_distance
                .map_or("-".to_string(), |v| format!("{v:.3}"));
            let text = format!(
                "written: {}\nalgorithm: {}\nexact realizer: {}\ncrossings: {}\nslopes: {}\ndownward edges: {}\nmin node-edge distance: {min}\n",
                path.display(),
                drawing.algorithm,
                drawing.exact_realizer,
                q.crossings,
                q.distinct_slopes,
                q.downward_edges,
            );
            let json = json!({
                "written": path.display().to_string(),
                "algorithm": drawing.algorithm,
                "exact_realizer": drawing.exact_realizer,
                "crossings": q.crossings,
                "slopes": q.distinct_slopes,
                "downward_edges": q.downward_edges,
                "min_node_edge_distance": q.min_node_edge_distance,
            });
            Ok(Output { text, json })
        }
        None => Ok(Output {
            json: json!({ "document": doc }),
            text: doc,
        }),
    }
}
