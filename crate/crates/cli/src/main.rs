//! Command-line front end: build models, run exact analyses, emit
//! deterministic JSON/CSV/text reports, and run the verification suites.
//!
//! Exit codes: 0 success, 2 validation error, 3 budget exhausted,
//! 4 mathematical property violation or verification failure.

use clap::{Args, Parser, Subcommand};
use rwalk_core::action::ActionTable;
use rwalk_core::coxeter::{
    exchange_mixing_bound, exchange_spectrum, exchange_stationary, exchange_walk, CoxeterSpec,
    CoxeterSystem,
};
use rwalk_core::green::{
    check_generalized_tree_monoid, is_aperiodic, is_karnofsky_rhodes, is_left_regular_band,
    is_r_trivial, GreenStructure,
};
use rwalk_core::lattice::{spectrum, verify_spectrum_by_traces, IdempotentLattice, Spectrum};
use rwalk_core::models::free_tree::ft_generators;
use rwalk_core::models::sandpile::{sandpile_generators, ArborescenceSpec};
use rwalk_core::models::toom::{
    check_interlibrary_conjecture, toom_fixed_generators, toom_fixed_spectrum,
    toom_loan_generators, toom_loan_spectrum, ToomFixedSpec, ToomLoanSpec,
};
use rwalk_core::models::tsetlin::tsetlin_generators;
use rwalk_core::models::{lookup_model, model_registry};
use rwalk_core::monoid::FiniteMonoid;
use rwalk_core::prob::{ProbabilityAssignment, ProbabilityScheme};
use rwalk_core::ratio::{format_rat, parse_rat, rat_to_f64, Rat};
use rwalk_core::report::{
    distribution_report, spectrum_report, BoundEntry, DistributionReport, ErrorObject,
    SimulationReport, SpectrumReport, StructureReport,
};
use rwalk_core::sim::{empirical_tv, simulate_state_distribution};
use rwalk_core::transform::GeneratorSet;
use rwalk_core::walk::{
    absorption_distribution_exact, ergodicity_check, expected_absorption_general,
    expected_absorption_lrb, lrb_tv_bound, markov_mixing_bound, mass_outside_minimal_ideal,
    simplex_mixing_bound, state_distribution_after, stationary_chain_formula, stationary_exact,
    stationary_kr_product, stationary_lumped, stationary_reduced_words, transition_matrix,
    tv_distance, ErgodicityVerdict, WalkContext,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "rwalk", version, about = "Exact random walks on finite R-trivial monoids")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a model and report structure, spectrum, stationary
    /// distributions, and bounds.
    Analyze(AnalyzeArgs),
    /// Run the exact verification suite for a model instance.
    Verify(VerifyArgs),
    /// Monte Carlo simulation of the state walk, checked against the exact
    /// distribution when available.
    Simulate(SimulateArgs),
    /// List the built-in models and their parameters.
    ListModels(ListArgs),
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Model name; see list-models.
    #[arg(long)]
    model: String,
    /// tsetlin: number of books.
    #[arg(long)]
    k: Option<usize>,
    /// toom-fixed: copies per book, e.g. 2,2.
    #[arg(long)]
    content: Option<String>,
    /// toom-loan: number of book titles.
    #[arg(long)]
    m: Option<usize>,
    /// toom-loan: shelf length.
    #[arg(long)]
    shelf: Option<usize>,
    /// free-tree: number of letters.
    #[arg(long)]
    n: Option<usize>,
    /// sandpile: parent per vertex, -1 for the root, e.g. -1,0,0.
    #[arg(long)]
    parents: Option<String>,
    /// sandpile: threshold per vertex, e.g. 1,2.
    #[arg(long)]
    thresholds: Option<String>,
    /// exchange-walk: Coxeter system, e.g. A2xA1 or I2(5).
    #[arg(long)]
    system: Option<String>,
    /// Probability scheme: uniform, powers, or explicit fractions p1,p2,...
    #[arg(long, default_value = "uniform")]
    probs: String,
    /// Cap on the number of monoid elements enumerated.
    #[arg(long, default_value_t = 200_000)]
    budget_elements: usize,
    /// Cap on chain expansions in the exact formulas.
    #[arg(long, default_value_t = 10_000_000)]
    budget_chains: u64,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: json, csv, or text.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Add decimal renderings next to the exact fractions.
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Comma list of analyses: structure, spectrum, stationary, bounds.
    #[arg(long, default_value = "structure")]
    analyses: String,
    /// Number of steps for the bound table.
    #[arg(long, default_value_t = 10)]
    bound_steps: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// toom-loan only: run the conjecture sweep and include its report.
    #[arg(long)]
    conjecture: bool,
    /// Self-test: perturb one multiplicity before trace verification; the
    /// run must then fail (exit 4).
    #[arg(long)]
    inject_multiplicity_error: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 30)]
    steps: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ListArgs {
    #[command(flatten)]
    output: OutputArgs,
}

/// CLI-level error carrying the exit code contract.
struct CliError {
    code: i32,
    kind: &'static str,
    message: String,
}

type CliResult<T> = Result<T, CliError>;

fn from_core(e: rwalk_core::Error) -> CliError {
    use rwalk_core::Error::*;
    let (code, kind) = match &e {
        CapExceeded { .. } | BudgetExceeded { .. } => (3, "budget"),
        NotRTrivial { .. } | NotErgodic(_) | NotAdapted | MultiplicityMismatch { .. }
        | NotKarnofskyRhodes(_) | NotLeftRegularBand(_) | NoConstants | Precondition(_) => {
            (4, "property")
        }
        NotStochastic(_) | DimensionMismatch(_) | UnknownModel(_) | UnsupportedType(_)
        | InvalidInput(_) => (2, "validation"),
    };
    CliError {
        code,
        kind,
        message: e.to_string(),
    }
}

fn validation(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        kind: "validation",
        message: message.into(),
    }
}

fn parse_usize_list(text: &str, what: &str) -> CliResult<Vec<u64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| validation(format!("bad {what} entry '{part}'")))
        })
        .collect()
}

/// A built model instance: generator set plus the objects every analysis
/// shares.
struct Instance {
    label: String,
    monoid: FiniteMonoid,
    green: GreenStructure,
    p: ProbabilityAssignment,
    coxeter: Option<(CoxeterSystem, Vec<Vec<usize>>)>,
}

fn build_generators(args: &ModelArgs) -> CliResult<(GeneratorSet, String, Option<(CoxeterSystem, Vec<Vec<usize>>)>)> {
    lookup_model(&args.model).map_err(from_core)?;
    match args.model.as_str() {
        "tsetlin" => {
            let k = args.k.ok_or_else(|| validation("tsetlin needs --k"))?;
            let gens = tsetlin_generators(k).map_err(from_core)?;
            Ok((gens, format!("tsetlin k={k}"), None))
        }
        "toom-fixed" => {
            let text = args
                .content
                .as_deref()
                .ok_or_else(|| validation("toom-fixed needs --content"))?;
            let content = parse_usize_list(text, "content")?;
            let spec = ToomFixedSpec::uniform(content.clone()).map_err(from_core)?;
            let gens = toom_fixed_generators(&spec).map_err(from_core)?;
            Ok((gens, format!("toom-fixed {content:?}"), None))
        }
        "toom-loan" => {
            let m = args.m.ok_or_else(|| validation("toom-loan needs --m"))?;
            let shelf = args
                .shelf
                .ok_or_else(|| validation("toom-loan needs --shelf"))?;
            let spec = ToomLoanSpec::uniform(m, shelf).map_err(from_core)?;
            let gens = toom_loan_generators(&spec).map_err(from_core)?;
            Ok((gens, format!("toom-loan m={m} L={shelf}"), None))
        }
        "free-tree" => {
            let n = args.n.ok_or_else(|| validation("free-tree needs --n"))?;
            let gens = ft_generators(n).map_err(from_core)?;
            Ok((gens, format!("free-tree n={n}"), None))
        }
        "sandpile" => {
            let parents_text = args
                .parents
                .as_deref()
                .ok_or_else(|| validation("sandpile needs --parents"))?;
            let thresholds_text = args
                .thresholds
                .as_deref()
                .ok_or_else(|| validation("sandpile needs --thresholds"))?;
            let parents: Vec<Option<usize>> = parents_text
                .split(',')
                .map(|part| {
                    let part = part.trim();
                    if part == "-1" {
                        Ok(None)
                    } else {
                        part.parse::<usize>()
                            .map(Some)
                            .map_err(|_| validation(format!("bad parent entry '{part}'")))
                    }
                })
                .collect::<CliResult<_>>()?;
            let thresholds = parse_usize_list(thresholds_text, "thresholds")?;
            let spec = ArborescenceSpec::new(parents, thresholds).map_err(from_core)?;
            let gens = sandpile_generators(&spec).map_err(from_core)?;
            Ok((gens, "sandpile".to_string(), None))
        }
        "exchange-walk" => {
            let text = args
                .system
                .as_deref()
                .ok_or_else(|| validation("exchange-walk needs --system"))?;
            let spec = CoxeterSpec::parse(text).map_err(from_core)?;
            let sys = CoxeterSystem::build(spec, args.budget_elements).map_err(from_core)?;
            let walk = exchange_walk(&sys, args.budget_chains).map_err(from_core)?;
            Ok((
                walk.generators,
                format!("exchange-walk {text}"),
                Some((sys, walk.words)),
            ))
        }
        other => Err(validation(format!("unknown model '{other}'"))),
    }
}

fn build_instance(args: &ModelArgs) -> CliResult<Instance> {
    let (gens, label, coxeter) = build_generators(args)?;
    let monoid = FiniteMonoid::close(gens, args.budget_elements).map_err(from_core)?;
    let p = match args.probs.as_str() {
        "uniform" => {
            ProbabilityAssignment::scheme_on_generators(&monoid, ProbabilityScheme::Uniform)
        }
        "powers" => {
            ProbabilityAssignment::scheme_on_generators(&monoid, ProbabilityScheme::Powers)
        }
        text => {
            let weights: Vec<Rat> = text
                .split(',')
                .map(|part| parse_rat(part.trim()))
                .collect::<rwalk_core::Result<_>>()
                .map_err(from_core)?;
            ProbabilityAssignment::on_generators(&monoid, &weights)
        }
    }
    .map_err(from_core)?;
    let green = GreenStructure::compute(&monoid);
    Ok(Instance {
        label,
        monoid,
        green,
        p,
        coxeter,
    })
}

fn structure_report(inst: &Instance) -> StructureReport {
    let m = &inst.monoid;
    let lattice_nodes = IdempotentLattice::build(m, &inst.green).ok().map(|l| l.len());
    StructureReport {
        states: m.gens.states.size(),
        elements: m.size(),
        idempotents: m.idempotents().len(),
        r_classes: inst.green.r_classes.len(),
        l_classes: inst.green.l_classes.len(),
        minimal_ideal_size: inst.green.minimal_ideal.len(),
        r_trivial: is_r_trivial(&inst.green).0,
        aperiodic: is_aperiodic(m),
        left_regular_band: is_left_regular_band(m).0,
        karnofsky_rhodes: is_karnofsky_rhodes(m).0,
        lattice_nodes,
    }
}

fn spectrum_analysis(inst: &Instance, with_floats: bool) -> CliResult<SpectrumReport> {
    let lat = IdempotentLattice::build(&inst.monoid, &inst.green).map_err(from_core)?;
    let action = ActionTable::natural(&inst.monoid);
    let spec = spectrum(&lat, &action, &inst.p).map_err(from_core)?;
    let t = transition_matrix(&action, &inst.p);
    let verified = verify_spectrum_by_traces(&t, &spec, action.size().max(1)).map_err(from_core)?;
    if !verified {
        return Err(CliError {
            code: 4,
            kind: "property",
            message: "spectrum failed trace verification".into(),
        });
    }
    Ok(spectrum_report(&inst.monoid, &lat, &spec, verified, with_floats))
}

#[derive(Serialize)]
struct StationarySection {
    /// Exact absorption distribution on the minimal ideal, by element word.
    absorption: DistributionReport,
    /// Projection to the acted-on states.
    states: DistributionReport,
    routes_checked: Vec<&'static str>,
}

fn stationary_analysis(
    inst: &Instance,
    budget: u64,
    with_floats: bool,
) -> CliResult<StationarySection> {
    let lat = IdempotentLattice::build(&inst.monoid, &inst.green).map_err(from_core)?;
    let action = ActionTable::natural(&inst.monoid);
    let ctx = WalkContext::new(&inst.monoid, &inst.green, &lat, &inst.p).map_err(from_core)?;
    let chain = stationary_chain_formula(&ctx, budget).map_err(from_core)?;
    let mut routes = vec!["chain"];
    let words = stationary_reduced_words(&ctx, budget).map_err(from_core)?;
    check_route(&chain, &words, "reduced-words")?;
    routes.push("reduced-words");
    let solved = absorption_distribution_exact(&ctx).map_err(from_core)?;
    check_route(&chain, &solved, "linear-solve")?;
    routes.push("linear-solve");
    if let Ok(product) = stationary_kr_product(&ctx) {
        check_route(&chain, &product, "kr-product")?;
        routes.push("kr-product");
    }
    let lumped = stationary_lumped(&ctx, &action, &chain).map_err(from_core)?;
    if ergodicity_check(&inst.monoid, &action, &inst.p) == ErgodicityVerdict::Ergodic {
        let exact = stationary_exact(&inst.monoid, &action, &inst.p).map_err(from_core)?;
        check_route(&lumped, &exact, "null-space")?;
        routes.push("null-space");
    }
    let m = &inst.monoid;
    let labels: Vec<String> = inst
        .green
        .minimal_ideal
        .iter()
        .map(|&x| m.word_name(x))
        .collect();
    let values: Vec<Rat> = inst
        .green
        .minimal_ideal
        .iter()
        .map(|&x| chain[x].clone())
        .collect();
    Ok(StationarySection {
        absorption: distribution_report(&labels, &values, with_floats),
        states: distribution_report(&m.gens.states.labels, &lumped, with_floats),
        routes_checked: routes,
    })
}

fn check_route(reference: &[Rat], candidate: &[Rat], name: &str) -> CliResult<()> {
    if reference == candidate {
        Ok(())
    } else {
        Err(CliError {
            code: 4,
            kind: "property",
            message: format!("stationary route '{name}' disagrees with the chain formula"),
        })
    }
}

#[derive(Serialize)]
struct BoundsSection {
    expected_absorption: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_absorption_float: Option<f64>,
    entries: Vec<BoundEntry>,
}

fn bounds_analysis(
    inst: &Instance,
    steps: usize,
    budget: u64,
    with_floats: bool,
) -> CliResult<BoundsSection> {
    let lat = IdempotentLattice::build(&inst.monoid, &inst.green).map_err(from_core)?;
    let ctx = WalkContext::new(&inst.monoid, &inst.green, &lat, &inst.p).map_err(from_core)?;
    let expected = expected_absorption_general(&ctx, budget).map_err(from_core)?;
    if let Ok(v) = expected_absorption_lrb(&inst.monoid, &inst.green, &lat, &inst.p) {
        if v != expected {
            return Err(CliError {
                code: 4,
                kind: "property",
                message: "absorption-time formulas disagree".into(),
            });
        }
    }
    let mut entries = Vec::new();
    for n in 0..=steps {
        let markov = markov_mixing_bound(&expected, n);
        entries.push(bound_entry(n, "markov", &markov, with_floats));
        let simplex = simplex_mixing_bound(&ctx, n, budget).map_err(from_core)?;
        entries.push(bound_entry(n, "simplex", &simplex, with_floats));
        if let Ok(lrb) = lrb_tv_bound(&inst.monoid, &lat, &inst.p, n) {
            if lrb != mass_outside_minimal_ideal(&inst.monoid, &inst.green, &inst.p, n) {
                return Err(CliError {
                    code: 4,
                    kind: "property",
                    message: format!("LRB bound identity fails at n = {n}"),
                });
            }
            entries.push(bound_entry(n, "lrb", &lrb, with_floats));
        }
    }
    Ok(BoundsSection {
        expected_absorption: format_rat(&expected),
        expected_absorption_float: with_floats.then(|| rat_to_f64(&expected)),
        entries,
    })
}

fn bound_entry(n: usize, kind: &'static str, value: &Rat, with_floats: bool) -> BoundEntry {
    BoundEntry {
        n,
        kind,
        value: format_rat(value),
        value_float: with_floats.then(|| rat_to_f64(value)),
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    structure: Option<StructureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectrum: Option<SpectrumReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stationary: Option<StationarySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<BoundsSection>,
}

fn cmd_analyze(args: &AnalyzeArgs) -> CliResult<String> {
    let inst = build_instance(&args.model)?;
    let mut report = AnalyzeReport {
        model: inst.label.clone(),
        structure: None,
        spectrum: None,
        stationary: None,
        bounds: None,
    };
    for analysis in args.analyses.split(',') {
        match analysis.trim() {
            "structure" => report.structure = Some(structure_report(&inst)),
            "spectrum" => report.spectrum = Some(spectrum_analysis(&inst, args.output.float)?),
            "stationary" => {
                report.stationary = Some(stationary_analysis(
                    &inst,
                    args.model.budget_chains,
                    args.output.float,
                )?)
            }
            "bounds" => {
                report.bounds = Some(bounds_analysis(
                    &inst,
                    args.bound_steps,
                    args.model.budget_chains,
                    args.output.float,
                )?)
            }
            other => return Err(validation(format!("unknown analysis '{other}'"))),
        }
    }
    render(&args.output, &report)
}

#[derive(Serialize)]
struct CheckResult {
    name: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct VerifyReport {
    model: String,
    checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conjecture: Option<ConjectureSection>,
    pass: bool,
}

#[derive(Serialize)]
struct ConjectureSection {
    tuples: usize,
    mismatches: usize,
    entries: Vec<ConjectureLine>,
}

#[derive(Serialize)]
struct ConjectureLine {
    subsets: String,
    computed: String,
    conjectured: String,
    matches: bool,
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<String> {
    let inst = build_instance(&args.model)?;
    let mut checks = Vec::new();
    let mut record = |name: &str, pass: bool, detail: Option<String>| {
        checks.push(CheckResult {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    let lat = IdempotentLattice::build(&inst.monoid, &inst.green).map_err(from_core)?;
    let action = ActionTable::natural(&inst.monoid);
    let mut spec = spectrum(&lat, &action, &inst.p).map_err(from_core)?;
    if args.inject_multiplicity_error {
        // negative-control self-test: break one multiplicity on purpose
        if let Some(node) = spec.nodes.first_mut() {
            node.multiplicity += num_bigint::BigInt::from(1);
        }
        spec.omega_size += 1;
    }
    let t = transition_matrix(&action, &inst.p);
    let traces_ok = match verify_spectrum_by_traces(&t, &spec, action.size().max(1)) {
        Ok(v) => v,
        Err(_) => false,
    };
    record("trace-identities", traces_ok, None);

    let closed_ok = closed_form_check(&args.model, &spec);
    if let Some((pass, detail)) = closed_ok {
        record("closed-form-spectrum", pass, detail);
    }

    let ctx = WalkContext::new(&inst.monoid, &inst.green, &lat, &inst.p).map_err(from_core)?;
    let chain = stationary_chain_formula(&ctx, args.model.budget_chains).map_err(from_core)?;
    let words = stationary_reduced_words(&ctx, args.model.budget_chains).map_err(from_core)?;
    let solved = absorption_distribution_exact(&ctx).map_err(from_core)?;
    record("stationary-reduced-words", chain == words, None);
    record("stationary-linear-solve", chain == solved, None);
    if let Ok(product) = stationary_kr_product(&ctx) {
        record("stationary-kr-product", chain == product, None);
    }
    if let Some((sys, ex_words)) = &inst.coxeter {
        let weights: Vec<Rat> = (0..sys.rank())
            .map(|s| inst.p.prob(inst.monoid.generator_elt[s]).clone())
            .collect();
        let closed = exchange_stationary(sys, ex_words, &weights).map_err(from_core)?;
        let lumped = stationary_lumped(&ctx, &action, &chain).map_err(from_core)?;
        record("exchange-stationary", closed == lumped, None);
        let entries = exchange_spectrum(sys, &weights).map_err(from_core)?;
        let claimed = Spectrum {
            nodes: entries
                .iter()
                .enumerate()
                .map(|(i, e)| rwalk_core::lattice::SpectrumNode {
                    node: i,
                    lambda: e.lambda.clone(),
                    multiplicity: e.multiplicity.clone(),
                    fixed_points: 0,
                })
                .collect(),
            omega_size: action.size(),
        };
        let ok = verify_spectrum_by_traces(&t, &claimed, action.size().max(1))
            .map_err(from_core)?;
        record("exchange-spectrum", ok, None);
        if let Ok(steps) = exchange_mixing_bound(sys, &weights, 1) {
            if ergodicity_check(&inst.monoid, &action, &inst.p) == ErgodicityVerdict::Ergodic {
                let pi = stationary_exact(&inst.monoid, &action, &inst.p).map_err(from_core)?;
                let dist = state_distribution_after(&action, &inst.p, 0, steps as usize);
                let tv = tv_distance(&dist, &pi).map_err(from_core)?;
                record(
                    "exchange-mixing-bound",
                    rat_to_f64(&tv) <= (-1.0f64).exp(),
                    Some(format!("TV {} at {} steps", format_rat(&tv), steps)),
                );
            }
        }
    }
    if inst.monoid.gens.tree_order.is_some() {
        let report = check_generalized_tree_monoid(&inst.monoid.gens);
        record(
            "tree-monoid-certificate",
            report.holds,
            report.certificate.map(|names| names.join(", ")),
        );
    }

    let mut bound_ok = true;
    let mut bound_detail = None;
    if ergodicity_check(&inst.monoid, &action, &inst.p) == ErgodicityVerdict::Ergodic {
        let pi = stationary_exact(&inst.monoid, &action, &inst.p).map_err(from_core)?;
        let expected =
            expected_absorption_general(&ctx, args.model.budget_chains).map_err(from_core)?;
        for n in 0..=10usize {
            let dist = state_distribution_after(&action, &inst.p, 0, n);
            let tv = tv_distance(&dist, &pi).map_err(from_core)?;
            if tv > markov_mixing_bound(&expected, n) {
                bound_ok = false;
                bound_detail = Some(format!("Markov bound fails at n = {n}"));
                break;
            }
            if let Ok(lrb) = lrb_tv_bound(&inst.monoid, &lat, &inst.p, n) {
                if tv > lrb {
                    bound_ok = false;
                    bound_detail = Some(format!("LRB bound fails at n = {n}"));
                    break;
                }
            }
        }
        record("bound-domination", bound_ok, bound_detail);
    }

    let conjecture = if args.conjecture {
        if args.model.model != "toom-loan" {
            return Err(validation("--conjecture applies to toom-loan only"));
        }
        let m = args.model.m.unwrap_or(2);
        let shelf = args.model.shelf.unwrap_or(2);
        let report = check_interlibrary_conjecture(m, shelf, args.model.budget_chains)
            .map_err(from_core)?;
        Some(ConjectureSection {
            tuples: report.entries.len(),
            mismatches: report.mismatches,
            entries: report
                .entries
                .iter()
                .map(|e| ConjectureLine {
                    subsets: format!("{:?}", e.subsets),
                    computed: e.computed.to_string(),
                    conjectured: e.conjectured.to_string(),
                    matches: e.matches,
                })
                .collect(),
        })
    } else {
        None
    };

    let pass = checks.iter().all(|c| c.pass);
    let report = VerifyReport {
        model: inst.label,
        checks,
        conjecture,
        pass,
    };
    let rendered = render(&args.output, &report)?;
    if !pass {
        emit(&args.output, &rendered)?;
        return Err(CliError {
            code: 4,
            kind: "property",
            message: "verification failed".into(),
        });
    }
    Ok(rendered)
}

/// For models with a published closed-form spectrum, compare it against the
/// generic engine's merged spectrum.
fn closed_form_check(args: &ModelArgs, generic: &Spectrum) -> Option<(bool, Option<String>)> {
    let merged = generic.merged();
    let closed = match args.model.as_str() {
        "toom-fixed" => {
            let content = parse_usize_list(args.content.as_deref()?, "content").ok()?;
            let spec = ToomFixedSpec::uniform(content).ok()?;
            if args.probs != "uniform" {
                return None;
            }
            toom_fixed_spectrum(&spec)
        }
        "toom-loan" => {
            let spec = ToomLoanSpec::uniform(args.m?, args.shelf?).ok()?;
            if args.probs != "uniform" {
                return None;
            }
            toom_loan_spectrum(&spec)
        }
        _ => return None,
    };
    let mut merged_closed: Vec<(Rat, num_bigint::BigInt)> = Vec::new();
    for e in &closed {
        match merged_closed.iter_mut().find(|(l, _)| l == &e.lambda) {
            Some((_, m)) => *m += &e.multiplicity,
            None => merged_closed.push((e.lambda.clone(), e.multiplicity.clone())),
        }
    }
    merged_closed.retain(|(_, m)| !num_traits::Zero::is_zero(m));
    merged_closed.sort_by(|a, b| b.0.cmp(&a.0));
    let pass = merged_closed == merged;
    let detail = (!pass).then(|| "closed form disagrees with the generic engine".to_string());
    Some((pass, detail))
}

fn cmd_simulate(args: &SimulateArgs) -> CliResult<String> {
    let inst = build_instance(&args.model)?;
    let action = ActionTable::natural(&inst.monoid);
    let empirical = simulate_state_distribution(
        &action,
        &inst.p,
        0,
        args.steps,
        args.trials,
        args.seed,
    );
    let tv = match ergodicity_check(&inst.monoid, &action, &inst.p) {
        ErgodicityVerdict::Ergodic => {
            let pi = stationary_exact(&inst.monoid, &action, &inst.p).map_err(from_core)?;
            Some(empirical_tv(&empirical, &pi))
        }
        _ => None,
    };
    let report = SimulationReport {
        seed: args.seed,
        trials: args.trials,
        monte_carlo: true,
        empirical,
        empirical_tv_to_exact: tv,
    };
    render(&args.output, &report)
}

#[derive(Serialize)]
struct RegistryReport {
    models: Vec<RegistryLine>,
}

#[derive(Serialize)]
struct RegistryLine {
    name: &'static str,
    summary: &'static str,
    params: &'static str,
}

fn cmd_list_models(args: &ListArgs) -> CliResult<String> {
    let report = RegistryReport {
        models: model_registry()
            .into_iter()
            .map(|m| RegistryLine {
                name: m.name,
                summary: m.summary,
                params: m.params,
            })
            .collect(),
    };
    render(&args.output, &report)
}

/// Renders a report in the requested format. JSON is canonical; CSV and
/// text are flat renderings of the same JSON document.
fn render<T: Serialize>(output: &OutputArgs, report: &T) -> CliResult<String> {
    let value = serde_json::to_value(report).map_err(|e| validation(e.to_string()))?;
    match output.format.as_str() {
        "json" => {
            let mut text =
                serde_json::to_string_pretty(&value).map_err(|e| validation(e.to_string()))?;
            text.push('\n');
            Ok(text)
        }
        "csv" => {
            let mut lines = vec!["path,value".to_string()];
            flatten(&value, String::new(), &mut lines);
            Ok(lines.join("\n") + "\n")
        }
        "text" => {
            let mut lines = Vec::new();
            flatten_text(&value, 0, &mut lines);
            Ok(lines.join("\n") + "\n")
        }
        other => Err(validation(format!("unknown format '{other}'"))),
    }
}

fn flatten(value: &serde_json::Value, path: String, out: &mut Vec<String>) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let next = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(v, next, out);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, format!("{path}[{i}]"), out);
            }
        }
        other => {
            let text = match other {
                serde_json::Value::String(s) => s.clone(),
                v => v.to_string(),
            };
            out.push(format!("{path},\"{}\"", text.replace('"', "\"\"")));
        }
    }
}

fn flatten_text(value: &serde_json::Value, indent: usize, out: &mut Vec<String>) {
    let pad = "  ".repeat(indent);
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                match v {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push(format!("{pad}{k}:"));
                        flatten_text(v, indent + 1, out);
                    }
                    _ => out.push(format!("{pad}{k}: {}", plain(v))),
                }
            }
        }
        serde_json::Value::Array(items) => {
            for v in items {
                match v {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push(format!("{pad}-"));
                        flatten_text(v, indent + 1, out);
                    }
                    _ => out.push(format!("{pad}- {}", plain(v))),
                }
            }
        }
        _ => out.push(format!("{pad}{}", plain(value))),
    }
}

fn plain(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

fn emit(output: &OutputArgs, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| validation(e.to_string())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Analyze(args) => cmd_analyze(args).and_then(|text| emit(&args.output, &text)),
        Cmd::Verify(args) => match cmd_verify(args) {
            Ok(text) => emit(&args.output, &text),
            Err(e) => Err(e),
        },
        Cmd::Simulate(args) => cmd_simulate(args).and_then(|text| emit(&args.output, &text)),
        Cmd::ListModels(args) => cmd_list_models(args).and_then(|text| emit(&args.output, &text)),
    };
    if let Err(e) = result {
        let obj = ErrorObject {
            error: e.message,
            kind: e.kind,
        };
        eprintln!("{}", serde_json::to_string(&obj).expect("error object serializes"));
        std::process::exit(e.code);
    }
}
