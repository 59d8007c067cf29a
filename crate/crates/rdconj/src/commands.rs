//! One function per subcommand, each producing a report or CSV text.

use num_rational::Rational64;
use num_traits::ToPrimitive;
use rdconj_core::bounds::{bcp_epsilon, neighborhood_n, theorem_bound, PresentationConstants};
use rdconj_core::cayley::{cayley_graph, coned_off, DeltaEstimate, DeltaMode, MetricGraph, Subgroup};
use rdconj_core::conjugacy::{
    bounded_conjugacy, brute_force_conjugator, free_group_conjugacy, nilpotent_conjugator, ConjugacyResult,
    ConjugacyStatus, Profile, ProfileOptions, Solver,
};
use rdconj_core::group::{Ball, Element, GroupModel, Length};
use rdconj_core::homology::{
    burghelea_split, check_identities, conj_classes, cyclic_complex, hochschild_complex, homology_dims, prop_141_maps,
    HomologyError,
};
use rdconj_core::rdalgebra::BoundingFunction;
use serde_json::{json, Map, Value};

use crate::cache::BallCache;
use crate::cli::{BoundsCommand, Command, ConjCommand, GroupArg, ProfileArgs, RdCommand, SolverArg};
use crate::config::{group_from_value, parse_group, Format, NumericMode, RunConfig};
use crate::drivers;
use crate::error::CliError;
use crate::render;
use crate::report::Report;

pub struct Context {
    pub cfg: RunConfig,
    pub cache: BallCache,
}

pub enum Output {
    Report(Report),
    Csv(String),
}

impl Context {
    fn group(&self, arg: &GroupArg) -> Result<GroupModel, CliError> {
        match (&arg.group, &self.cfg.group) {
            (Some(s), _) => parse_group(s),
            (None, Some(Value::String(s))) => parse_group(s),
            (None, Some(v)) => group_from_value(v, "group"),
            (None, None) => Err(CliError::Config("no group given: pass --group or set group in the config".into())),
        }
    }

    fn radius(&self, r: u32) -> Result<u32, CliError> {
        if r > self.cfg.caps.radius {
            return Err(CliError::Resource(format!("radius {r} above the cap {}", self.cfg.caps.radius)));
        }
        Ok(r)
    }

    fn ball(&self, model: &GroupModel, radius: u32) -> Result<Ball, CliError> {
        self.cache.ball(model, self.radius(radius)?, self.cfg.caps.ball_size)
    }

    fn element(&self, model: &GroupModel, s: &str) -> Result<Element, CliError> {
        model.parse_element(s).map_err(|e| CliError::Config(e.to_string()))
    }

    fn exact_length(&self, model: &GroupModel, g: &Element) -> Result<u32, CliError> {
        match model.word_length(g, self.cfg.caps.radius)? {
            Length::Exact(l) => Ok(l),
            Length::AtLeast(l) => Err(CliError::Resource(format!(
                "length of {} is at least {l}, beyond the radius cap {}",
                render(model, g),
                self.cfg.caps.radius
            ))),
        }
    }
}

fn model_json(model: &GroupModel) -> Value {
    serde_json::to_value(model).expect("models serialize")
}

fn parse_function(s: &str) -> Result<BoundingFunction, CliError> {
    Ok(BoundingFunction::parse(s)?)
}

fn scaled_weight(w: u32) -> String {
    Rational64::new(i64::from(w), 2).to_string()
}

fn edges_csv(graph: &MetricGraph) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["vertex_a", "vertex_b", "weight"]).map_err(csv_error)?;
    for (a, b, wt) in graph.edges() {
        w.write_record([graph.label(a), graph.label(b), &scaled_weight(wt)]).map_err(csv_error)?;
    }
    finish_csv(w)
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

fn delta_json(graph: &MetricGraph, est: &DeltaEstimate) -> Value {
    json!({
        "delta": est.delta.to_string(),
        "delta_f64": est.delta.to_f64(),
        "exhaustive": est.exhaustive,
        "quadruples": est.quadruples,
        "witness": est.witness.map(|q| q.iter().map(|&v| graph.label(v).to_string()).collect::<Vec<_>>()),
    })
}

/// Relabels a Cayley graph with [`render`] names.
fn labelled_graph(model: &GroupModel, ball: &Ball) -> Result<MetricGraph, CliError> {
    let graph = cayley_graph(model, ball);
    let labels = ball.elements().iter().map(|g| render(model, g)).collect();
    Ok(MetricGraph::from_edges(labels, &graph.edges())?)
}

pub fn execute(command: &Command, ctx: &Context) -> Result<Output, CliError> {
    let mut out = match command {
        Command::Ball { group, radius, list } => ball(ctx, group, *radius, *list)?,
        Command::Graph { group, radius, edges, samples } => graph(ctx, group, *radius, edges.as_deref(), *samples)?,
        Command::Delta { group, radius, samples, exhaustive } => delta(ctx, group, *radius, *samples, *exhaustive)?,
        Command::Coned { group, radius, subgroups, from, to } => {
            coned(ctx, group, *radius, subgroups, from.as_deref().zip(to.as_deref()))?
        }
        Command::Bounds(BoundsCommand::Eval { k, delta, r }) => bounds_eval(ctx, *k, *delta, *r)?,
        Command::Bounds(BoundsCommand::Theorem { lu, lv, c, q }) => bounds_theorem(ctx, *lu, *lv, c, q)?,
        Command::Conj(ConjCommand::Solve { group, u, v, solver, radius, bound }) => {
            conj_solve(ctx, group, u, v, *solver, *radius, bound.as_deref())?
        }
        Command::Conj(ConjCommand::Profile(args)) | Command::Profile(args) => profile(ctx, args)?,
        Command::Rd(RdCommand::Check { group, trials, f, radius, support }) => {
            rd_check(ctx, group, *trials, f, *radius, *support)?
        }
        Command::Homology { group, nmax, split, simplicial } => homology(ctx, group, *nmax, *split, *simplicial)?,
    };
    if let Output::Report(r) = &mut out {
        if ctx.cfg.format == Format::Csv {
            r.warnings.push("csv output is only available for graph and profile; wrote json".into());
        }
    }
    Ok(out)
}

fn ball(ctx: &Context, group: &GroupArg, radius: u32, list: bool) -> Result<Output, CliError> {
    let model = ctx.group(group)?;
    let ball = ctx.ball(&model, radius)?;
    let mut report = Report::new("ball", json!({"group": model_json(&model), "radius": radius, "list": list}));
    let mut results = json!({
        "radius": radius,
        "size": ball.len(),
        "sphere_sizes": ball.sphere_sizes(),
    });
    if list {
        results["elements"] = ball
            .elements()
            .iter()
            .zip(ball.lengths())
            .map(|(g, l)| json!({"element": render(&model, g), "length": l}))
            .collect();
    }
    report.results = results;
    Ok(Output::Report(report))
}

fn graph(
    ctx: &Context,
    group: &GroupArg,
    radius: u32,
    edges: Option<&std::path::Path>,
    samples: u64,
) -> Result<Output, CliError> {
    let model = ctx.group(group)?;
    let ball = ctx.ball(&model, radius)?;
    let graph = labelled_graph(&model, &ball)?;
    let csv = edges_csv(&graph)?;
    if let Some(path) = edges {
        std::fs::write(path, &csv)?;
    }
    if ctx.cfg.format == Format::Csv {
        return Ok(Output::Csv(csv));
    }
    let est = drivers::delta(&graph, DeltaMode::Auto(samples), ctx.cfg.seed)?;
    let mut report = Report::new(
        "graph",
        json!({"group": model_json(&model), "radius": radius, "samples": samples, "seed": ctx.cfg.seed}),
    );
    report.results = json!({
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "connected": graph.is_connected(),
        "delta_estimate": delta_json(&graph, &est),
    });
    if !est.exhaustive {
        report.warnings.push(format!("delta is a lower bound from {} sampled quadruples", est.quadruples));
    }
    Ok(Output::Report(report))
}

fn delta(ctx: &Context, group: &GroupArg, radius: u32, samples: Option<u64>, exhaustive: bool) -> Result<Output, CliError> {
    let model = ctx.group(group)?;
    let ball = ctx.ball(&model, radius)?;
    let graph = labelled_graph(&model, &ball)?;
    let mode = match (exhaustive, samples) {
        (true, _) => DeltaMode::Exhaustive,
        (false, Some(n)) => DeltaMode::Sampled(n),
        (false, None) => DeltaMode::Auto(100_000),
    };
    let est = drivers::delta(&graph, mode, ctx.cfg.seed)?;
    let mut report = Report::new(
        "delta",
        json!({"group": model_json(&model), "radius": radius, "samples": samples, "exhaustive": exhaustive, "seed": ctx.cfg.seed}),
    );
    report.results = delta_json(&graph, &est);
    report.warnings.push("computed on a finite ball, whose boundary can add defects absent from the whole graph".into());
    if !est.exhaustive {
        report.warnings.push(format!("delta is a lower bound from {} sampled quadruples", est.quadruples));
    }
    Ok(Output::Report(report))
}

fn parse_subgroup(ctx: &Context, model: &GroupModel, s: &str) -> Result<Subgroup, CliError> {
    match s.split_once(':') {
        Some(("factor", i)) => i
            .trim()
            .parse()
            .map(|factor| Subgroup::Factor { factor })
            .map_err(|_| CliError::Config(format!("subgroup {s:?}: bad factor index"))),
        Some(("cyclic", g)) => Ok(Subgroup::Cyclic { generator: ctx.element(model, g)? }),
        _ => Err(CliError::Config(format!("subgroup {s:?}: expected factor:<i> or cyclic:<element>"))),
    }
}

fn coned(
    ctx: &Context,
    group: &GroupArg,
    radius: u32,
    subgroups: &[String],
    pair: Option<(&str, &str)>,
) -> Result<Output, CliError> {
    let model = ctx.group(group)?;
    let ball = ctx.ball(&model, radius)?;
    let subs = subgroups.iter().map(|s| parse_subgroup(ctx, &model, s)).collect::<Result<Vec<_>, _>>()?;
    let coned = coned_off(&model, &ball, &subs)?;
    let mut report = Report::new(
        "coned",
        json!({
            "group": model_json(&model),
            "radius": radius,
            "subgroups": subgroups,
            "from": pair.map(|p| p.0),
            "to": pair.map(|p| p.1),
        }),
    );
    let mut results = json!({
        "base_vertices": coned.base_vertex_count(),
        "cone_vertices": coned.cone_vertex_count(),
        "edges": coned.graph().edge_count(),
        "subgroups": subs.iter().map(Subgroup::describe).collect::<Vec<_>>(),
    });
    if let Some((a, b)) = pair {
        let index = |s: &str| -> Result<u32, CliError> {
            let g = ctx.element(&model, s)?;
            ball.index_of(&g)
                .map(|i| i as u32)
                .ok_or_else(|| CliError::Domain(format!("{s} lies outside the radius-{radius} ball")))
        };
        let (u, v) = (index(a)?, index(b)?);
        let d = coned.distance(u, v)?;
        let dc = coned.cayley_distance(u, v)?;
        results["distance"] = json!({"coned": d.to_string(), "cayley": dc.to_string()});
        report.warnings.push("distances are taken inside the ball".into());
    }
    report.results = results;
    Ok(Output::Report(report))
}

fn constants_json(consts: &PresentationConstants) -> Value {
    serde_json::to_value(consts).expect("constants serialize")
}

fn bounds_eval(ctx: &Context, k: f64, delta: Option<f64>, r: f64) -> Result<Output, CliError> {
    let mut consts = ctx.cfg.constants.clone();
    if let Some(d) = delta {
        consts.delta = d;
    }
    consts.validate()?;
    let eff = consts.effective_delta();
    let nb = neighborhood_n(k, r, eff)?;
    let chain = bcp_epsilon(k, &consts)?;
    let mut report = Report::new("bounds eval", json!({"k": k, "delta": delta, "r": r}));
    report.constants = constants_json(&consts);
    report.results = json!({
        "k": k,
        "delta": eff,
        "n_tilde": nb.n_tilde,
        "N": nb.n,
        "n_proof": nb.n_proof,
        "K0": chain.k0,
        "K": chain.k_const,
        "eps_prime": chain.eps_prime,
        "C_prime": chain.c_prime,
        "D": chain.d,
        "epsilon": chain.epsilon,
    });
    report.warnings = consts.warnings();
    report
        .warnings
        .push("N uses R + 2δ; the argument establishing it only gives R + 4δ, reported as n_proof".into());
    Ok(Output::Report(report))
}

fn bounds_theorem(ctx: &Context, lu: f64, lv: f64, c: &str, q: &[String]) -> Result<Output, CliError> {
    let consts = ctx.cfg.constants.clone();
    let c_of_k = parse_function(c)?;
    let polys = q
        .iter()
        .map(|s| {
            parse_function(s)?
                .polynomial_majorant()
                .ok_or_else(|| CliError::Config(format!("q {s:?}: not bounded by a polynomial")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let tb = theorem_bound(lu, lv, &consts, &c_of_k, &polys)?;
    let mut report = Report::new("bounds theorem", json!({"lu": lu, "lv": lv, "c": c, "q": q}));
    report.constants = constants_json(&consts);
    report.constants["c"] = json!(c_of_k.to_string());
    report.constants["q"] = polys.iter().map(|p| json!(p.to_string())).collect();
    report.results = serde_json::to_value(&tb).expect("bounds serialize");
    report.warnings = consts.warnings();
    if q.is_empty() {
        report.warnings.push("no subgroup bounds given; Q = 0".into());
    }
    Ok(Output::Report(report))
}

fn result_json(model: &GroupModel, res: &ConjugacyResult) -> Value {
    match &res.status {
        ConjugacyStatus::Conjugate { witness } => json!({
            "status": "conjugate",
            "witness": render(model, witness),
            "witness_length": res.witness_length,
        }),
        ConjugacyStatus::NotConjugate { certificate } => json!({
            "status": "not_conjugate",
            "certificate": certificate,
        }),
        ConjugacyStatus::Unknown { searched_radius } => json!({
            "status": "unknown",
            "searched_radius": searched_radius,
        }),
    }
}

fn auto_solver(model: &GroupModel) -> SolverArg {
    match model {
        GroupModel::Free { .. } => SolverArg::Free,
        GroupModel::TwoStepNilpotent(_) => SolverArg::Nilpotent,
        _ => SolverArg::Brute,
    }
}

fn conj_solve(
    ctx: &Context,
    group: &GroupArg,
    u: &str,
    v: &str,
    solver: SolverArg,
    radius: Option<u32>,
    bound: Option<&str>,
) -> Result<Output, CliError> {
    let model = ctx.group(group)?;
    let (ue, ve) = (ctx.element(&model, u)?, ctx.element(&model, v)?);
    let (lu, lv) = (ctx.exact_length(&model, &ue)?, ctx.exact_length(&model, &ve)?);
    let cap = ctx.cfg.caps.ball_size;
    let mut report = Report::new(
        "conj solve",
        json!({"group": model_json(&model), "u": u, "v": v, "solver": format!("{solver:?}").to_lowercase(), "radius": radius, "bound": bound}),
    );
    let (used, res) = if let Some(b) = bound {
        let f = parse_function(b)?;
        report.constants = json!({"bound": f.to_string()});
        ("bounded", bounded_conjugacy(&model, &ue, &ve, &f, ctx.cfg.caps.radius, cap)?)
    } else {
        let solver = if solver == SolverArg::Auto { auto_solver(&model) } else { solver };
        match solver {
            SolverArg::Free => ("free", free_group_conjugacy(&model, &ue, &ve)?),
            SolverArg::Nilpotent => ("nilpotent", nilpotent_conjugator(&model, &ue, &ve)?),
            SolverArg::Brute | SolverArg::Auto => {
                let r = match (radius, model.as_finite()) {
                    (Some(r), _) => r,
                    (None, Some(f)) => f.order() as u32,
                    (None, None) => lu + lv,
                };
                ("brute", brute_force_conjugator(&model, &ue, &ve, ctx.radius(r)?, cap)?)
            }
        }
    };
    let mut res = res;
    if let (ConjugacyStatus::Conjugate { witness }, None) = (&res.status, res.witness_length) {
        res.witness_length = model.word_length(witness, ctx.cfg.caps.radius)?.exact();
    }
    let mut results = result_json(&model, &res);
    results["solver"] = json!(used);
    results["u_length"] = json!(lu);
    results["v_length"] = json!(lv);
    if matches!(res.status, ConjugacyStatus::Unknown { .. }) {
        report.warnings.push("search exhausted without a conjugator; conjugacy is undecided".into());
    }
    report.results = results;
    Ok(Output::Report(report))
}

fn profile_csv(model: &GroupModel, p: &Profile) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["input_length", "u", "v", "min_conj_length", "class_rep"]).map_err(csv_error)?;
    for r in &p.records {
        w.write_record([
            r.input_length.to_string(),
            render(model, &r.u),
            render(model, &r.v),
            r.min_conjugator_length.to_string(),
            render(model, &r.class_rep),
        ])
        .map_err(csv_error)?;
    }
    finish_csv(w)
}

fn profile(ctx: &Context, args: &ProfileArgs) -> Result<Output, CliError> {
    let model = ctx.group(&args.group)?;
    ctx.radius(args.radius)?;
    ctx.radius(2 * args.radius + args.slack)?;
    let a_cap = rdconj_core::rational_serde::parse(&args.a_cap)
        .map_err(|e| CliError::Config(format!("a-cap: {e}")))?;
    let opts = ProfileOptions {
        slack: args.slack,
        a_cap,
        max_degree: args.max_degree,
        ball_cap: ctx.cfg.caps.ball_size,
        solver: Solver::from(args.solver),
    };
    let p = drivers::profile(&model, args.radius, &opts, &ctx.cache)?;
    let csv = profile_csv(&model, &p)?;
    if let Some(path) = &args.csv {
        std::fs::write(path, &csv)?;
    }
    if ctx.cfg.format == Format::Csv {
        return Ok(Output::Csv(csv));
    }
    let mut by_length: Vec<(u32, u32)> = Vec::new();
    for r in &p.records {
        match by_length.iter_mut().find(|(l, _)| *l == r.input_length) {
            Some((_, m)) => *m = (*m).max(r.min_conjugator_length),
            None => by_length.push((r.input_length, r.min_conjugator_length)),
        }
    }
    let a = match ctx.cfg.numeric {
        NumericMode::Exact => json!(p.fit.a.to_string()),
        NumericMode::Float => json!(p.fit.a.to_f64()),
    };
    let mut report = Report::new(
        "profile",
        json!({
            "group": model_json(&model),
            "radius": args.radius,
            "slack": args.slack,
            "a_cap": args.a_cap,
            "max_degree": args.max_degree,
            "solver": format!("{:?}", args.solver).to_lowercase(),
        }),
    );
    report.constants = json!({"a_cap": opts.a_cap.to_string(), "max_degree": opts.max_degree});
    report.results = json!({
        "radius": p.radius,
        "search_radius": p.search_radius,
        "records": p.records.len(),
        "max_min_conjugator_length": p.records.iter().map(|r| r.min_conjugator_length).max(),
        "max_by_input_length": by_length.iter().map(|(l, m)| json!({"input_length": l, "max_min_conjugator_length": m})).collect::<Vec<_>>(),
        "fit": {
            "degree": p.fit.degree,
            "a": a,
            "within_cap": p.fit.within_cap,
            "dominates_all": p.fit.dominates_all,
        },
        "unknown": p.unknown.iter().map(|u| json!({
            "u": render(&model, &u.u),
            "v": render(&model, &u.v),
            "input_length": u.input_length,
            "witness": u.witness.as_ref().map(|w| render(&model, w)),
        })).collect::<Vec<_>>(),
    });
    if !p.fit.within_cap {
        report.warnings.push(format!("no degree up to {} fits under the multiplier cap", p.fit.degree));
    }
    if !p.unknown.is_empty() {
        report.warnings.push(format!("{} conjugate or undecided pairs lie beyond the search radius", p.unknown.len()));
    }
    Ok(Output::Report(report))
}

fn rd_check(
    ctx: &Context,
    group: &GroupArg,
    trials: usize,
    fs: &[String],
    radius: u32,
    support: usize,
) -> Result<Output, CliError> {
    if support == 0 {
        return Err(CliError::Config("support: must be positive".into()));
    }
    let model = ctx.group(group)?;
    let ball = ctx.ball(&model, radius)?;
    let funcs = fs.iter().map(|s| parse_function(s)).collect::<Result<Vec<_>, _>>()?;
    let summaries =
        drivers::product_estimates(&model, &ball, &funcs, trials, support, ctx.cfg.seed, ctx.cfg.numeric)?;
    let mut report = Report::new(
        "rd check",
        json!({"group": model_json(&model), "trials": trials, "f": fs, "radius": radius, "support": support, "seed": ctx.cfg.seed}),
    );
    report.constants = Value::Object(
        funcs.iter().map(|f| (f.to_string(), json!({"class": f.class(), "f2": f.f2_of().to_string()}))).collect(),
    );
    let all_hold = summaries.iter().all(|s| s.failures == 0);
    report.results = json!({
        "all_hold": all_hold,
        "functions": serde_json::to_value(&summaries).expect("summaries serialize"),
    });
    Ok(Output::Report(report))
}

/// Largest `d ≤ limit` for which the identity checks fit the basis cap.
fn identity_degree(order: usize, limit: usize, cap: usize) -> Option<usize> {
    (0..=limit).rev().find(|&d| order.checked_pow(d as u32 + 3).is_some_and(|s| s <= cap))
}

fn homology(ctx: &Context, group: &GroupArg, nmax: Option<usize>, split: bool, simplicial: bool) -> Result<Output, CliError> {
    let model = ctx.group(group)?;
    let order = model
        .as_finite()
        .ok_or_else(|| CliError::from(HomologyError::NotFinite { operation: "homology", got: model.kind() }))?
        .order();
    let n_max = nmax.unwrap_or(match order {
        0..=6 => 3,
        7..=12 => 2,
        _ => 1,
    });
    let cap = ctx.cfg.caps.basis_size;
    let table = conj_classes(&model)?;
    let names: Vec<String> = table.classes.iter().map(|c| render(&model, &c.representative)).collect();
    let slice = if split { burghelea_split(&model, n_max, cap)? } else { hochschild_complex(&model, n_max, cap)? };
    let hh = homology_dims(&slice);
    let hc = homology_dims(&cyclic_complex(&model, n_max, cap, split)?);
    let per_class = |dims: &Option<Vec<Vec<usize>>>| -> Value {
        match dims {
            Some(d) => Value::Object(names.iter().cloned().zip(d.iter().map(|v| json!(v))).collect()),
            None => Value::Null,
        }
    };

    let mut report = Report::new(
        "homology",
        json!({"group": model_json(&model), "nmax": n_max, "split": split, "simplicial": simplicial}),
    );
    report.constants = json!({"basis_cap": cap});
    let mut results = json!({
        "order": order,
        "classes": names,
        "per_degree": hh.per_degree,
        "per_class": per_class(&hh.per_class),
        "cyclic": {"per_degree": hc.per_degree, "per_class": per_class(&hc.per_class)},
    });

    match identity_degree(order, n_max.min(2), cap) {
        Some(d) => {
            let checks = check_identities(&model, d, cap)?;
            let mut ids = Map::new();
            for (name, key) in [("b∘b", "b2"), ("B∘B", "B2"), ("bB+Bb", "bB_plus_Bb")] {
                let nonzero: usize = checks.iter().filter(|c| c.identity == name).map(|c| c.nonzero_entries).sum();
                ids.insert(key.into(), json!(if nonzero == 0 { "0".to_string() } else { format!("{nonzero} nonzero entries") }));
            }
            ids.insert("through_degree".into(), json!(d));
            results["identities"] = Value::Object(ids);
        }
        None => report.warnings.push("identity checks skipped: basis cap too small".into()),
    }

    if simplicial {
        let mut reports = Vec::new();
        for class in 0..table.len() {
            for n in 0..=n_max.min(2) {
                reports.push(prop_141_maps(&model, class, n)?);
            }
        }
        results["simplicial"] = json!({
            "all_bijections": reports.iter().all(|r| r.is_bijection()),
            "reports": serde_json::to_value(&reports).expect("reports serialize"),
        });
        if n_max > 2 {
            report.warnings.push("simplicial checks stop at degree 2".into());
        }
    }
    report.results = results;
    report.warnings.push("over the rationals the reduced and unreduced complexes give the same homology".into());
    Ok(Output::Report(report))
}
