//! Subcommand implementations. Each writes its report to `out`, any timing
//! information to `diag`, and returns the exit code.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use interf_core::model::tree_profile;
use interf_core::reduction::{
    build_gadgets, cross_gadget_perturbations, hamilton_from_tree, tree_from_hamilton_path,
    GadgetSet, PerturbScope,
};
use interf_core::solvers::{
    decide_interference_le, emst_tree, local_search, minmax_bnb, minmax_exhaustive,
};
use interf_core::{
    interference, radii_from_tree, symmetric_comm_graph, validate_tree, verify_hamilton_path,
    Decision, GridGraph, NodeSet, Role, SearchBudget, SpanningTree,
};
use serde::Serialize;

use crate::format::{self, Instance};
use crate::{svg, Command, Exit, Mode};

pub fn run(cmd: &Command, out: &mut dyn Write, diag: &mut dyn Write) -> Result<Exit> {
    match cmd {
        Command::Eval { input, json } => eval(&read(input)?, *json, out),
        Command::Reduce {
            input,
            with_tree,
            out: path,
        } => reduce(&read(input)?, *with_tree, path.as_deref(), out),
        Command::Solve {
            input,
            mode,
            k,
            budget,
            json,
            out: path,
        } => solve(
            &read(input)?,
            &SolveOptions {
                mode: *mode,
                k: *k,
                budget: budget.to_budget(),
                json: *json,
                out: path.as_deref(),
            },
            out,
            diag,
        ),
        Command::Hamilton { input, json } => hamilton(&read(input)?, *json, out),
        Command::VerifyLemmas {
            input,
            budget,
            json,
        } => verify_lemmas(&read(input)?, &budget.to_budget(), *json, out),
        Command::Svg {
            input,
            no_tree,
            out: path,
        } => draw(&read(input)?, *no_tree, path.as_deref(), out),
    }
}

fn read(path: &Path) -> Result<Instance> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    format::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).context("writing output"),
    }
}

fn points(instance: &Instance) -> Result<(&NodeSet, Option<&SpanningTree>)> {
    match instance {
        Instance::Points { nodes, tree } => Ok((nodes, tree.as_ref())),
        Instance::Grid(_) => bail!("expected a points instance, got a grid instance"),
    }
}

fn grid(instance: &Instance) -> Result<&GridGraph> {
    match instance {
        Instance::Grid(g) => Ok(g),
        Instance::Points { .. } => bail!("expected a grid instance, got a points instance"),
    }
}

fn json_line(value: &impl Serialize, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct NodeReport {
    index: usize,
    x: i64,
    y: i64,
    sq_radius: u64,
    /// approximate, grid units
    radius_approx: f64,
    interference: usize,
}

#[derive(Serialize)]
struct EvalReport {
    nodes: Vec<NodeReport>,
    max_interference: usize,
    comm_graph_edges: usize,
}

pub fn eval(instance: &Instance, json: bool, out: &mut dyn Write) -> Result<Exit> {
    let (nodes, tree) = points(instance)?;
    let tree = tree.context("instance has no tree block")?;
    validate_tree(nodes, tree)?;
    let radii = radii_from_tree(nodes, tree)?;
    let profile = interference(nodes, &radii)?;
    let comm = symmetric_comm_graph(nodes, &radii)?;
    let report = EvalReport {
        nodes: nodes
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| NodeReport {
                index: i,
                x: p.x,
                y: p.y,
                sq_radius: radii.get(i).value(),
                radius_approx: radii.get(i).approx_grid_length(),
                interference: profile.counts[i],
            })
            .collect(),
        max_interference: profile.max,
        comm_graph_edges: comm.len(),
    };
    if json {
        json_line(&report, out)?;
        return Ok(Exit::Success);
    }
    writeln!(
        out,
        "{:>5} {:>8} {:>8} {:>10} {:>12} {:>12}",
        "node", "x", "y", "sq_radius", "~radius", "interference"
    )?;
    for n in &report.nodes {
        writeln!(
            out,
            "{:>5} {:>8} {:>8} {:>10} {:>12.4} {:>12}",
            n.index, n.x, n.y, n.sq_radius, n.radius_approx, n.interference
        )?;
    }
    writeln!(out, "max interference: {}", report.max_interference)?;
    writeln!(
        out,
        "symmetric communication graph: {} edges",
        report.comm_graph_edges
    )?;
    writeln!(
        out,
        "coordinates and sq_radius are exact quarter-units; ~radius is an approximation in grid units"
    )?;
    Ok(Exit::Success)
}

pub fn reduce(
    instance: &Instance,
    with_tree: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Exit> {
    let g = grid(instance)?;
    let gs = build_gadgets(g)?;
    let tree = if with_tree {
        g.hamilton_path()
            .map(|p| tree_from_hamilton_path(&gs, &p))
            .transpose()?
    } else {
        None
    };
    let result = Instance::Points {
        nodes: gs.nodes().clone(),
        tree,
    };
    emit(&format::serialize(&result), path, out)?;
    Ok(Exit::Success)
}

pub struct SolveOptions<'a> {
    pub mode: Mode,
    pub k: Option<usize>,
    pub budget: SearchBudget,
    pub json: bool,
    pub out: Option<&'a Path>,
}

#[derive(Serialize)]
struct SolveReport {
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    objective: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified: Option<bool>,
    tree: Option<Vec<(usize, usize)>>,
    trees_examined: u64,
    nodes_pruned: u64,
}

pub fn solve(
    instance: &Instance,
    opts: &SolveOptions<'_>,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> Result<Exit> {
    let (nodes, _) = points(instance)?;
    let mode = match opts.mode {
        Mode::Exhaustive => "exhaustive",
        Mode::Bnb => "bnb",
        Mode::Heuristic => "heuristic",
    };
    let (report, tree, code, elapsed) = if let Some(k) = opts.k {
        let (decision, stats) = decide_interference_le(nodes, k, &opts.budget)?;
        let (outcome, tree, code) = match decision {
            Decision::Found(t) => ("found", Some(t), Exit::Success),
            Decision::None => ("none", None, Exit::DecidedNone),
            Decision::BudgetExhausted => ("budget-exhausted", None, Exit::BudgetExhausted),
        };
        let objective = tree
            .as_ref()
            .map(|t| tree_profile(nodes, t).map(|p| p.max))
            .transpose()?;
        let report = SolveReport {
            mode: "bnb",
            k: Some(k),
            outcome,
            objective,
            certified: None,
            tree: tree.as_ref().map(pairs),
            trees_examined: stats.trees_examined,
            nodes_pruned: stats.nodes_pruned,
        };
        (report, tree, code, stats.elapsed)
    } else {
        let result = match opts.mode {
            Mode::Exhaustive => minmax_exhaustive(nodes)?,
            Mode::Bnb => minmax_bnb(nodes, &opts.budget)?,
            Mode::Heuristic => local_search(nodes, &emst_tree(nodes), &opts.budget)?,
        };
        let code = if opts.mode == Mode::Bnb && !result.certified {
            Exit::BudgetExhausted
        } else {
            Exit::Success
        };
        let report = SolveReport {
            mode,
            k: None,
            outcome: if result.certified {
                "optimal"
            } else {
                "best-found"
            },
            objective: Some(result.objective),
            certified: Some(result.certified),
            tree: Some(pairs(&result.tree)),
            trees_examined: result.stats.trees_examined,
            nodes_pruned: result.stats.nodes_pruned,
        };
        (report, Some(result.tree), code, result.stats.elapsed)
    };
    writeln!(diag, "elapsed: {:.3}s", elapsed.as_secs_f64())?;

    if opts.json {
        json_line(&report, out)?;
    } else {
        if let Some(k) = report.k {
            writeln!(out, "decision (interference <= {k}): {}", report.outcome)?;
        } else {
            writeln!(out, "mode: {}", report.mode)?;
            writeln!(out, "status: {}", report.outcome)?;
        }
        if let Some(obj) = report.objective {
            writeln!(out, "objective: {obj}")?;
        }
        if let Some(edges) = &report.tree {
            let list: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            writeln!(out, "tree: {}", list.join(" "))?;
        }
        writeln!(out, "trees examined: {}", report.trees_examined)?;
        writeln!(out, "nodes pruned: {}", report.nodes_pruned)?;
    }
    if let (Some(path), Some(tree)) = (opts.out, tree) {
        let inst = Instance::Points {
            nodes: nodes.clone(),
            tree: Some(tree),
        };
        std::fs::write(path, format::serialize(&inst))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(code)
}

fn pairs(t: &SpanningTree) -> Vec<(usize, usize)> {
    t.edges().iter().map(|e| (e.a, e.b)).collect()
}

#[derive(Serialize)]
struct HamiltonReport {
    path: Option<Vec<(i64, i64)>>,
}

pub fn hamilton(instance: &Instance, json: bool, out: &mut dyn Write) -> Result<Exit> {
    let g = grid(instance)?;
    let path = g.hamilton_path();
    if let Some(p) = &path {
        verify_hamilton_path(g, p)
            .map_err(|e| anyhow::anyhow!("oracle returned an invalid path: {e}"))?;
    }
    let report = HamiltonReport {
        path: path
            .as_ref()
            .map(|p| p.iter().map(|v| (v.x, v.y)).collect()),
    };
    if json {
        json_line(&report, out)?;
    } else {
        match &report.path {
            Some(p) => {
                let s: Vec<String> = p.iter().map(|(x, y)| format!("({x}, {y})")).collect();
                writeln!(out, "path: {}", s.join(" "))?;
            }
            None => writeln!(out, "none")?,
        }
    }
    Ok(if path.is_some() {
        Exit::Success
    } else {
        Exit::DecidedNone
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepStatus {
    Pass,
    Fail,
    Skipped,
    Exhausted,
}

#[derive(Debug, Serialize)]
pub struct Step {
    pub name: &'static str,
    pub status: StepStatus,
    pub detail: String,
}

fn step(name: &'static str, ok: bool, detail: String) -> Step {
    Step {
        name,
        status: if ok {
            StepStatus::Pass
        } else {
            StepStatus::Fail
        },
        detail,
    }
}

/// The full chain: oracle, gadgets, Hamilton-path tree, perturbations,
/// extraction, and the interference-3 decision.
pub fn lemma_steps(g: &GridGraph, budget: &SearchBudget) -> Result<Vec<Step>> {
    if !g.is_connected() {
        bail!("the reduction requires a connected grid graph");
    }
    let gs = build_gadgets(g)?;
    let mut steps = Vec::new();
    let path = g.hamilton_path();
    steps.push(Step {
        name: "hamilton oracle",
        status: StepStatus::Pass,
        detail: match &path {
            Some(p) => match verify_hamilton_path(g, p) {
                Ok(()) => format!("Hamilton path over {} vertices", p.len()),
                Err(e) => bail!("oracle returned an invalid path: {e}"),
            },
            None => "no Hamilton path".into(),
        },
    });
    steps.push(Step {
        name: "gadgets",
        status: StepStatus::Pass,
        detail: format!("{} nodes", gs.nodes().len()),
    });

    match &path {
        Some(p) => lemma_chain(&gs, p, &mut steps)?,
        None => {
            for name in ["lemma 1", "lemma 2", "lemma 3"] {
                steps.push(Step {
                    name,
                    status: StepStatus::Skipped,
                    detail: "no Hamilton path; Lemma 1/3 steps skipped".into(),
                });
            }
        }
    }

    let (decision, _) = decide_interference_le(gs.nodes(), 3, budget)?;
    steps.push(match (decision, &path) {
        (Decision::BudgetExhausted, _) => Step {
            name: "theorem 1",
            status: StepStatus::Exhausted,
            detail: "decision solver ran out of budget at k=3".into(),
        },
        (Decision::None, None) => step(
            "theorem 1",
            true,
            "decision solver confirms none at k=3".into(),
        ),
        (Decision::None, Some(_)) => step(
            "theorem 1",
            false,
            "decision solver found no tree at k=3 although a Hamilton path exists".into(),
        ),
        (Decision::Found(_), None) => step(
            "theorem 1",
            false,
            "decision solver found a tree at k=3 although no Hamilton path exists".into(),
        ),
        (Decision::Found(tree), Some(_)) => match hamilton_from_tree(&gs, &tree) {
            Ok(back) => step(
                "theorem 1",
                verify_hamilton_path(g, &back).is_ok(),
                "decision solver found a tree at k=3; it contracts to a Hamilton path".into(),
            ),
            Err(e) => step("theorem 1", false, format!("extraction failed: {e}")),
        },
    });
    Ok(steps)
}

fn lemma_chain(
    gs: &GadgetSet,
    path: &[interf_core::GridVertex],
    steps: &mut Vec<Step>,
) -> Result<()> {
    let tree = tree_from_hamilton_path(gs, path)?;
    let profile = tree_profile(gs.nodes(), &tree)?;
    let anns = gs.nodes().annotations().expect("gadget sets are annotated");
    let centers_ok = anns
        .iter()
        .zip(&profile.counts)
        .all(|(a, &c)| a.role != Role::Center || c == 3);
    let sats_ok = anns
        .iter()
        .zip(&profile.counts)
        .all(|(a, &c)| a.role != Role::Satellite || c <= 3);
    steps.push(step(
        "lemma 1",
        profile.max == 3 && centers_ok && sats_ok,
        format!(
            "tree with {} edges, max interference {}",
            tree.len(),
            profile.max
        ),
    ));

    let perturbations = cross_gadget_perturbations(gs, &tree, PerturbScope::PartnerEdges)?;
    let mut escapes = Vec::new();
    for p in &perturbations {
        if tree_profile(gs.nodes(), &p.tree)?.max < 4 {
            escapes.push(format!("-{} +{}", p.removed, p.added));
        }
    }
    steps.push(step(
        "lemma 2",
        escapes.is_empty(),
        if escapes.is_empty() {
            format!(
                "all {} partner-edge perturbations reach interference >= 4",
                perturbations.len()
            )
        } else {
            format!(
                "{} of {} perturbations stay below 4: {}",
                escapes.len(),
                perturbations.len(),
                escapes.join(", ")
            )
        },
    ));

    steps.push(match hamilton_from_tree(gs, &tree) {
        Ok(back) => step(
            "lemma 3",
            verify_hamilton_path(gs.grid(), &back).is_ok(),
            "extracted sequence is a Hamilton path".into(),
        ),
        Err(e) => step("lemma 3", false, e.to_string()),
    });
    Ok(())
}

pub fn verify_lemmas(
    instance: &Instance,
    budget: &SearchBudget,
    json: bool,
    out: &mut dyn Write,
) -> Result<Exit> {
    let g = grid(instance)?;
    let steps = lemma_steps(g, budget)?;
    if json {
        json_line(&steps, out)?;
    } else {
        for s in &steps {
            let tag = match s.status {
                StepStatus::Pass => "PASS",
                StepStatus::Fail => "FAIL",
                StepStatus::Skipped => "SKIP",
                StepStatus::Exhausted => "BUDGET",
            };
            writeln!(out, "[{tag}] {}: {}", s.name, s.detail)?;
        }
    }
    let code = if steps.iter().any(|s| s.status == StepStatus::Fail) {
        Exit::DecidedNone
    } else if steps.iter().any(|s| s.status == StepStatus::Exhausted) {
        Exit::BudgetExhausted
    } else {
        Exit::Success
    };
    Ok(code)
}

pub fn draw(
    instance: &Instance,
    no_tree: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Exit> {
    let (nodes, tree) = points(instance)?;
    let tree = if no_tree { None } else { tree };
    if let Some(t) = tree {
        validate_tree(nodes, t)?;
    }
    emit(&svg::render(nodes, tree), path, out)?;
    Ok(Exit::Success)
}
