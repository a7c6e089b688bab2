mod render;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use achord::analyticity::{forbidden_subdiagram, is_analytic, is_analytic_via_graph, reduction_trace, PatternKind};
use achord::cordage::{contract, decompose, Cordage};
use achord::curves::{
    brute_force_rooted_curves, marked_curve_count, pluecker_admissible, rooted_curve_count, rp2_bound,
    sphere_bound, sphere_total, tutte_slicings, CombinatorialCurve, Passport, Variant,
};
use achord::enumeration::{
    all_diagrams, count_analytic_linear, count_connected_rooted, count_cyclic_analytic, count_dihedral_analytic,
    count_labeled_bushes, Budget,
};
use achord::graph::{accessibility_graph, check_bush, forbidden_witness, split_decomposition, BushMethod};
use achord::series::{
    asymptotic_estimate, bracket_constants, cn_closed_form, solve_a, solve_bush_series, solve_c,
    verify_poly_relation, BiPoly, Interval, PowerSeries, RootBracket, Which,
};
use achord::{canonical_cyclic, canonical_dihedral, parse_diagram, LinearDiagram, SimpleGraph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "achord", version, about = "Analytic chord diagrams, bushes, cordages, series and curve counts")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Bfile,
    Svg,
}

/// Exhaustive-search limits. Unset flags fall back to `ACHORD_MAX_*`
/// variables, then to the library defaults.
#[derive(Args)]
struct BudgetArgs {
    #[arg(long, global = true)]
    max_chords: Option<usize>,
    #[arg(long, global = true)]
    max_vertices: Option<usize>,
    #[arg(long, global = true)]
    max_curve_edges: Option<usize>,
}

impl BudgetArgs {
    fn resolve(&self) -> Budget {
        let mut b = Budget::from_env();
        b.max_chords = self.max_chords.unwrap_or(b.max_chords);
        b.max_vertices = self.max_vertices.unwrap_or(b.max_vertices);
        b.max_curve_edges = self.max_curve_edges.unwrap_or(b.max_curve_edges);
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyticity of a diagram with its reduction trace, or bush tests on a graph.
    Check {
        diagram: Option<String>,
        /// Graph file in the `V=k` / `u v` text format ("-" for stdin).
        #[arg(long, conflicts_with = "diagram")]
        graph: Option<String>,
        /// Cross-check all characterizations exhaustively.
        #[arg(long, conflicts_with_all = ["diagram", "graph"])]
        exhaustive: bool,
        #[arg(long, default_value_t = 7)]
        chords: usize,
        #[arg(long, default_value_t = 7)]
        vertices: usize,
    },
    /// Cordage of a connected analytic rooted diagram, or split decomposition of a graph.
    Decompose {
        diagram: Option<String>,
        #[arg(long, conflicts_with = "diagram")]
        graph: Option<String>,
        /// Check both round trips exhaustively.
        #[arg(long, conflicts_with_all = ["diagram", "graph"])]
        exhaustive: bool,
        #[arg(long, default_value_t = 7)]
        chords: usize,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
    },
    /// Exhaustive counts for every size up to `n`, or a stream of diagrams.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "analytic")]
        filter: Filter,
        #[arg(long, value_enum, default_value = "counts")]
        emit: Emit,
    },
    /// Coefficients of a generating series.
    Series {
        #[arg(long, value_enum, ignore_case = true, default_value = "a")]
        which: SeriesName,
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Check the algebraic relation or identities of the series.
        #[arg(long)]
        verify: bool,
        /// Compare coefficients against an independent route.
        #[arg(long)]
        cross_check: bool,
        /// Compare coefficients with their asymptotic estimate.
        #[arg(long)]
        asymptotic: bool,
    },
    /// Certified brackets of the growth constants.
    Constants,
    #[command(subcommand)]
    Curves(CurvesCommand),
    /// SVG figure of a diagram, its cordage, or a combinatorial curve.
    Render {
        diagram: Option<String>,
        #[arg(long)]
        cordage: bool,
        /// Vertex diagrams separated by ';'.
        #[arg(long, conflicts_with = "diagram", requires = "alpha")]
        curve: Option<String>,
        /// Ray pairing, comma separated.
        #[arg(long)]
        alpha: Option<String>,
        /// Accepted for symmetry with `--format svg`.
        #[arg(long)]
        svg: bool,
    },
}

#[derive(Subcommand)]
enum CurvesCommand {
    /// Closed-form or brute-force curve counts for a passport.
    Count {
        #[arg(long)]
        passport: Passport,
        #[arg(long, value_enum, default_value = "rooted")]
        mode: CountMode,
        #[arg(long, value_enum, default_value = "corrected")]
        variant: VariantArg,
    },
    /// Growth bounds on the sphere (`--c`) or the projective plane (`--d`).
    Bound {
        #[arg(long, required_unless_present = "d")]
        c: Option<usize>,
        #[arg(long, conflicts_with = "c")]
        d: Option<usize>,
        /// Also enumerate the rooted curves with at most `c` edges.
        #[arg(long, requires = "c")]
        total: bool,
    },
    /// Pluecker-type admissibility of a passport in degree `d`.
    Pluecker {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        passport: Passport,
    },
    /// Closed form against brute force for every passport with at most `max_c` edges.
    Oracle {
        #[arg(long, default_value_t = 4)]
        max_c: usize,
    },
    /// Genus, faces and strands of a combinatorial curve.
    Inspect {
        /// Vertex diagrams separated by ';'.
        #[arg(long)]
        diagrams: String,
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    Analytic,
    Connected,
    Cyclic,
    Dihedral,
    Bushes,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Counts,
    Diagrams,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    A,
    B,
    Bk,
    C,
    Ct,
    L,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMode {
    Rooted,
    Marked,
    Slicings,
    Bruteforce,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Corrected,
    Printed,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Corrected => Variant::Corrected,
            VariantArg::Printed => Variant::Printed,
        }
    }
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<achord::Error> for Failure {
    fn from(e: achord::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Out = Result<String, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn formats(f: Format, allowed: &[Format], cmd: &str) -> Result<(), Failure> {
    if allowed.contains(&f) {
        Ok(())
    } else {
        let names: Vec<_> = allowed
            .iter()
            .map(|a| a.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default())
            .collect();
        usage(format!("{cmd} supports --format {}", names.join("|")))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn diagram_arg(text: &str) -> Result<LinearDiagram, Failure> {
    Ok(parse_diagram(text)?)
}

fn read_graph(path: &str) -> Result<SimpleGraph, Failure> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Domain(e.to_string()))?
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{path}: {e}")))?
    };
    Ok(SimpleGraph::parse(&text)?)
}

fn curve_arg(diagrams: &str, alpha: &str) -> Result<CombinatorialCurve, Failure> {
    let ds = diagrams.split(';').map(diagram_arg).collect::<Result<Vec<_>, _>>()?;
    let alpha = alpha
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Domain(format!("invalid alpha: {e}")))?;
    Ok(CombinatorialCurve::new(&ds, alpha)?)
}

fn pattern_name(k: PatternKind) -> &'static str {
    match k {
        PatternKind::Isolated => "isolated",
        PatternKind::Fork => "fork",
        PatternKind::TrueTwins => "true twins",
        PatternKind::FalseTwins => "false twins",
    }
}

fn shown(d: &LinearDiagram) -> String {
    if d.is_empty() {
        "(empty)".into()
    } else {
        d.to_text()
    }
}

fn method_name(m: BushMethod) -> &'static str {
    match m {
        BushMethod::Reduction => "reduction",
        BushMethod::Metric => "metric",
        BushMethod::FourPoint => "four-point",
        BushMethod::Forbidden => "forbidden",
    }
}

fn check_diagram(d: &LinearDiagram, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Json], "check")?;
    let trace = reduction_trace(d);
    let analytic = is_analytic(d);
    let canonical = canonical_cyclic(d).rep;
    let witness = if analytic { None } else { forbidden_subdiagram(d) };
    if format == Format::Json {
        let steps: Vec<Value> = trace
            .iter()
            .map(|s| {
                json!({
                    "pattern": s.pattern.kind,
                    "chord": s.pattern.chord,
                    "partner": s.pattern.partner,
                    "before": s.before.to_text(),
                    "after": s.after.to_text(),
                })
            })
            .collect();
        let w = witness.map(|w| json!({"shape": w.shape, "chords": w.chords, "subdiagram": w.subdiagram.to_text()}));
        return Ok(pretty(&json!({
            "diagram": d.to_text(),
            "canonical": canonical.to_text(),
            "analytic": analytic,
            "trace": steps,
            "witness": w,
        })));
    }
    let mut s = String::new();
    writeln!(s, "{}", if analytic { "analytic" } else { "not analytic" }).unwrap();
    writeln!(s, "canonical: {}", shown(&canonical)).unwrap();
    for (i, step) in trace.iter().enumerate() {
        let p = step.pattern;
        let with = p.partner.map(|q| format!(" with {}", q)).unwrap_or_default();
        writeln!(
            s,
            "  {}. {} chord {}{with}: {} -> {}",
            i + 1,
            pattern_name(p.kind),
            p.chord,
            shown(&step.before),
            shown(&step.after)
        )
        .unwrap();
    }
    if let Some(w) = witness {
        let stuck = trace.last().map_or(d.clone(), |s| s.after.clone());
        writeln!(s, "irreducible: {}", shown(&stuck)).unwrap();
        writeln!(s, "witness: {:?} on chords {:?}: {}", w.shape, w.chords, w.subdiagram).unwrap();
    }
    Ok(s)
}

fn check_graph(g: &SimpleGraph, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Json], "check")?;
    let results: Vec<(BushMethod, bool)> = BushMethod::ALL.iter().map(|&m| (m, check_bush(g, m))).collect();
    let bush = results[0].1;
    let witness = forbidden_witness(g).map(|(mask, shape)| {
        let vs: Vec<usize> = (0..g.vertex_count()).filter(|v| mask >> v & 1 == 1).collect();
        (shape, vs)
    });
    if format == Format::Json {
        let methods: BTreeMap<&str, bool> = results.iter().map(|&(m, r)| (method_name(m), r)).collect();
        let w = witness.map(|(shape, vs)| json!({"shape": shape, "vertices": vs}));
        return Ok(pretty(&json!({"bush": bush, "methods": methods, "witness": w})));
    }
    let mut s = String::new();
    writeln!(s, "{}", if bush { "bush" } else { "not a bush" }).unwrap();
    for (m, r) in results {
        writeln!(s, "  {}: {}", method_name(m), r).unwrap();
    }
    if let Some((shape, vs)) = witness {
        writeln!(s, "witness: {shape:?} on vertices {vs:?}").unwrap();
    }
    Ok(s)
}

fn connected_graphs(v: usize) -> impl Iterator<Item = SimpleGraph> {
    let pairs = v * v.saturating_sub(1) / 2;
    (0..1u64 << pairs)
        .map(move |code| SimpleGraph::from_code(v, code))
        .filter(SimpleGraph::is_connected)
}

fn check_exhaustive(chords: usize, vertices: usize, budget: &Budget, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Json], "check")?;
    if chords > budget.max_chords || vertices > budget.max_vertices {
        return Err(achord::Error::BudgetExceeded {
            what: if chords > budget.max_chords { "chords" } else { "vertices" },
            value: chords.max(vertices),
            limit: if chords > budget.max_chords { budget.max_chords } else { budget.max_vertices },
        }
        .into());
    }
    let mut graph_rows = Vec::new();
    let mut bad = Vec::new();
    for v in 1..=vertices {
        let (mut total, mut bushes) = (0u64, 0u64);
        for g in connected_graphs(v) {
            let r = check_bush(&g, BushMethod::Reduction);
            if BushMethod::ALL[1..].iter().any(|&m| check_bush(&g, m) != r) {
                bad.push(format!("graph code {} on {v} vertices", g.code()));
            }
            total += 1;
            bushes += r as u64;
        }
        graph_rows.push((v, total, bushes));
    }
    let mut diagram_rows = Vec::new();
    for n in 0..=chords {
        let (mut total, mut analytic) = (0u64, 0u64);
        for d in all_diagrams(n) {
            let a = is_analytic(&d);
            if a != is_analytic_via_graph(&d) || a == forbidden_subdiagram(&d).is_some() {
                bad.push(format!("diagram {d}"));
            }
            total += 1;
            analytic += a as u64;
        }
        diagram_rows.push((n, total, analytic));
    }
    let ok = bad.is_empty();
    let out = if format == Format::Json {
        pretty(&json!({
            "agree": ok,
            "graphs": graph_rows.iter().map(|r| json!({"vertices": r.0, "connected": r.1.to_string(), "bushes": r.2.to_string()})).collect::<Vec<_>>(),
            "diagrams": diagram_rows.iter().map(|r| json!({"chords": r.0, "total": r.1.to_string(), "analytic": r.2.to_string()})).collect::<Vec<_>>(),
            "disagreements": bad,
        }))
    } else {
        let mut s = String::new();
        for (v, t, b) in &graph_rows {
            writeln!(s, "graphs V={v}: {t} connected, {b} bushes").unwrap();
        }
        for (n, t, a) in &diagram_rows {
            writeln!(s, "diagrams n={n}: {t} total, {a} analytic").unwrap();
        }
        for b in &bad {
            writeln!(s, "disagreement: {b}").unwrap();
        }
        writeln!(s, "{}", if ok { "all characterizations agree" } else { "characterizations disagree" }).unwrap();
        s
    };
    if ok {
        Ok(out)
    } else {
        Err(Failure::Domain(out))
    }
}

fn cordage_text(c: &Cordage, depth: usize, s: &mut String) {
    let pad = "  ".repeat(depth);
    match c {
        Cordage::Leaf => writeln!(s, "{pad}leaf").unwrap(),
        Cordage::Node { pulley, children } => {
            writeln!(s, "{pad}{pulley:?}").unwrap();
            for k in children {
                cordage_text(k, depth + 1, s);
            }
        }
    }
}

fn decompose_cmd(
    diagram: Option<String>,
    graph: Option<String>,
    exhaustive: bool,
    chords: usize,
    vertices: usize,
    budget: &Budget,
    format: Format,
) -> Out {
    if exhaustive {
        return decompose_exhaustive(chords, vertices, budget, format);
    }
    if let Some(path) = graph {
        formats(format, &[Format::Text, Format::Json], "decompose --graph")?;
        let g = read_graph(&path)?;
        if !g.is_connected() {
            return Err(achord::Error::Disconnected.into());
        }
        let t = split_decomposition(&g);
        if format == Format::Json {
            return Ok(pretty(&serde_json::to_value(&t).expect("serializable")));
        }
        let mut s = format!("{} leaves, {} nodes\n", t.leaves, t.nodes.len());
        for (i, n) in t.nodes.iter().enumerate() {
            writeln!(s, "node {i}: {:?}, attached to {:?}", n.kind, n.phi).unwrap();
        }
        return Ok(s);
    }
    let Some(text) = diagram else {
        return usage("decompose needs a diagram, --graph or --exhaustive");
    };
    formats(format, &[Format::Text, Format::Json, Format::Svg], "decompose")?;
    let d = diagram_arg(&text)?;
    let c = decompose(&d)?;
    Ok(match format {
        Format::Json => pretty(&serde_json::to_value(&c).expect("serializable")),
        Format::Svg => render::render_cordage(&c),
        _ => {
            let mut s = String::new();
            cordage_text(&c, 0, &mut s);
            s
        }
    })
}

fn decompose_exhaustive(chords: usize, vertices: usize, budget: &Budget, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Json], "decompose")?;
    if chords > budget.max_chords {
        return Err(achord::Error::BudgetExceeded { what: "chords", value: chords, limit: budget.max_chords }.into());
    }
    if vertices > budget.max_vertices {
        return Err(achord::Error::BudgetExceeded { what: "vertices", value: vertices, limit: budget.max_vertices }.into());
    }
    let mut bad = Vec::new();
    let mut graphs = 0u64;
    for v in 1..=vertices {
        for g in connected_graphs(v) {
            graphs += 1;
            if accessibility_graph(&split_decomposition(&g)) != g {
                bad.push(format!("graph code {} on {v} vertices", g.code()));
            }
        }
    }
    let mut diagrams = 0u64;
    for n in 2..=chords {
        for d in all_diagrams(n) {
            if SimpleGraph::interlacement(&d).is_connected() && is_analytic(&d) {
                diagrams += 1;
                if decompose(&d).map(|c| contract(&c) != d).unwrap_or(true) {
                    bad.push(format!("diagram {d}"));
                }
            }
        }
    }
    let ok = bad.is_empty();
    let out = if format == Format::Json {
        pretty(&json!({"round_trips": ok, "graphs": graphs.to_string(), "diagrams": diagrams.to_string(), "failures": bad}))
    } else {
        let mut s = format!(
            "split decomposition: {graphs} connected graphs up to {vertices} vertices\ncordages: {diagrams} connected analytic rooted diagrams up to {chords} chords\n"
        );
        for b in &bad {
            writeln!(s, "failure: {b}").unwrap();
        }
        writeln!(s, "{}", if ok { "all round trips hold" } else { "round trips fail" }).unwrap();
        s
    };
    if ok {
        Ok(out)
    } else {
        Err(Failure::Domain(out))
    }
}

fn keep(filter: Filter, d: &LinearDiagram) -> bool {
    match filter {
        Filter::All => true,
        Filter::Analytic => is_analytic(d),
        Filter::Connected => SimpleGraph::interlacement(d).is_connected() && is_analytic(d),
        Filter::Cyclic => is_analytic(d) && canonical_cyclic(d).rep == *d,
        Filter::Dihedral => is_analytic(d) && canonical_dihedral(d).rep == *d,
        Filter::Bushes => false,
    }
}

fn enumerate_cmd(n: usize, filter: Filter, emit: Emit, budget: &Budget, format: Format) -> Out {
    if emit == Emit::Diagrams {
        formats(format, &[Format::Text], "enumerate --emit diagrams")?;
        if filter == Filter::Bushes {
            return usage("--emit diagrams does not apply to --filter bushes");
        }
        // rooted connected diagrams of size n have n + 1 chords
        let chords = if filter == Filter::Connected { n + 1 } else { n };
        if chords > budget.max_chords {
            return Err(achord::Error::BudgetExceeded { what: "chords", value: chords, limit: budget.max_chords }.into());
        }
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        for d in all_diagrams(chords).filter(|d| keep(filter, d)) {
            if writeln!(lock, "{}", d.to_text()).is_err() {
                break;
            }
        }
        return Ok(String::new());
    }
    formats(format, &[Format::Text, Format::Json, Format::Bfile], "enumerate")?;
    let start = match filter {
        Filter::Connected | Filter::Cyclic | Filter::Dihedral => 1,
        _ => 0,
    };
    let mut rows: Vec<(usize, BigUint, Option<Value>)> = Vec::new();
    for m in start..=n {
        let (count, extra) = match filter {
            Filter::All => {
                if m > budget.max_chords {
                    return Err(achord::Error::BudgetExceeded { what: "chords", value: m, limit: budget.max_chords }.into());
                }
                ((1..2 * m).step_by(2).map(|k| BigUint::from(k as u64)).product(), None)
            }
            Filter::Analytic => (count_analytic_linear(m, budget)?, None),
            Filter::Connected => (count_connected_rooted(m, budget)?, None),
            Filter::Bushes => (count_labeled_bushes(m, budget)?, None),
            Filter::Dihedral => {
                let c = count_dihedral_analytic(m, budget)?;
                let extra = json!({"burnside": c.burnside.to_string()});
                (c.orbits, Some(extra))
            }
            Filter::Cyclic => {
                let c = count_cyclic_analytic(m, budget)?;
                let a = count_analytic_linear(m, budget)?;
                let ratio = ratio_f64(&(BigUint::from(m) * &c.orbits), &a);
                let extra = json!({
                    "stabilizer_sum": c.stabilizer_sum.to_string(),
                    "over_2n": c.over_2n.to_string(),
                    "over_n": c.over_n.to_string(),
                    "linear": a.to_string(),
                    "n_orbits_over_linear": format!("{ratio:.6}"),
                });
                (c.orbits, Some(extra))
            }
        };
        rows.push((m, count, extra));
    }
    Ok(match format {
        Format::Json => {
            let v: Vec<Value> = rows
                .into_iter()
                .map(|(m, c, extra)| {
                    let mut o = json!({"n": m, "count": c.to_string()});
                    if let (Some(Value::Object(e)), Value::Object(map)) = (extra, &mut o) {
                        map.extend(e);
                    }
                    o
                })
                .collect();
            pretty(&Value::Array(v))
        }
        Format::Text if matches!(filter, Filter::Cyclic | Filter::Dihedral) => {
            let mut s = String::new();
            for (m, c, extra) in rows {
                write!(s, "{m} {c}").unwrap();
                if let Some(Value::Object(e)) = extra {
                    for (k, v) in e {
                        write!(s, " {k}={}", v.as_str().unwrap_or_default()).unwrap();
                    }
                }
                s.push('\n');
            }
            s
        }
        _ => bfile(rows.into_iter().map(|(m, c, _)| (m, c.to_string()))),
    })
}

fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    Ratio::new(a.clone(), b.clone()).to_f64().unwrap_or(f64::NAN)
}

fn to_f64(a: &BigUint) -> f64 {
    a.to_f64().unwrap_or(f64::INFINITY)
}

fn bfile(rows: impl Iterator<Item = (usize, String)>) -> String {
    let mut s = String::new();
    for (n, v) in rows {
        writeln!(s, "{n} {v}").unwrap();
    }
    s
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).product()
}

/// Exact coefficients as text; exponential series are scaled by `n!`.
fn coefficient_strings(s: &PowerSeries, egf: bool) -> Vec<String> {
    (0..=s.order())
        .map(|n| {
            let mut c = s.coeff(n);
            if egf {
                c *= BigRational::from_integer(factorial(n).into());
            }
            c.to_string()
        })
        .collect()
}

fn series_cmd(which: SeriesName, order: usize, verify: bool, cross: bool, asym: bool, budget: &Budget, format: Format) -> Out {
    if asym {
        return series_asymptotic(which, order, format);
    }
    formats(format, &[Format::Text, Format::Json, Format::Bfile], "series")?;
    let mut checks: Vec<(String, bool)> = Vec::new();
    let coeffs: Vec<String> = match which {
        SeriesName::A => {
            let a = solve_a(order)?;
            if verify {
                checks.push(("sextic relation".into(), verify_poly_relation(&a, &BiPoly::sextic_a(), order)));
            }
            if cross {
                for n in 0..=order.min(budget.max_chords) {
                    let e = count_analytic_linear(n, budget)?;
                    checks.push((format!("A_{n} = {e} by enumeration"), a.coeff(n) == big_rat(&e)));
                }
            }
            a.naturals("A")?.iter().map(ToString::to_string).collect()
        }
        SeriesName::B | SeriesName::Bk => {
            let bs = solve_bush_series(order)?;
            if verify {
                let one = PowerSeries::one(order);
                checks.push(("B_K = B_S*".into(), bs.bk == bs.bs_star));
                checks.push(("B_S' = 1 - exp(-B_K)".into(), bs.bs_prime == &one - &(-&bs.bk).exp()?));
            }
            if cross {
                // B_n is counted on graphs with n + 1 vertices
                for n in 0..=order.min(budget.max_vertices.saturating_sub(1)) {
                    let e = count_labeled_bushes(n, budget)?;
                    checks.push((format!("B_{n} = {e} by labeled graphs"), bs.labeled[n] == e));
                }
            }
            if which == SeriesName::B {
                bs.labeled.iter().map(ToString::to_string).collect()
            } else {
                coefficient_strings(&bs.bk, true)
            }
        }
        SeriesName::C | SeriesName::Ct | SeriesName::L => {
            let cs = solve_c(order)?;
            let (s, rel) = match which {
                SeriesName::C => (&cs.c, BiPoly::cubic_c()),
                SeriesName::Ct => (&cs.ct, BiPoly::cubic_ct()),
                _ => (&cs.l, BiPoly::cubic_l()),
            };
            if verify {
                checks.push(("cubic relation".into(), verify_poly_relation(s, &rel, order)));
                checks.push(("C_T = C_D*".into(), cs.ct == cs.cd_star));
            }
            if cross && which == SeriesName::C {
                for n in 1..=order {
                    let closed = cn_closed_form(n);
                    let mut ok = cs.c.coeff(n) == big_rat(&closed);
                    let mut note = format!("C_{n} = {closed} by closed form");
                    if n < budget.max_chords {
                        let e = count_connected_rooted(n, budget)?;
                        ok &= e == closed;
                        note.push_str(" and enumeration");
                    }
                    checks.push((note, ok));
                }
            } else if cross {
                return usage("--cross-check is available for A, B, BK and C");
            }
            coefficient_strings(s, false)
        }
    };
    let ok = checks.iter().all(|c| c.1);
    let out = match format {
        Format::Json => pretty(&json!({
            "order": order,
            "coefficients": coeffs,
            "checks": checks.iter().map(|(k, v)| json!({"check": k, "holds": v})).collect::<Vec<_>>(),
        })),
        Format::Bfile if checks.is_empty() => bfile(coeffs.into_iter().enumerate()),
        _ => {
            let mut s = bfile(coeffs.into_iter().enumerate());
            for (k, v) in &checks {
                writeln!(s, "# {k}: {}", if *v { "holds" } else { "FAILS" }).unwrap();
            }
            s
        }
    };
    if ok {
        Ok(out)
    } else {
        Err(Failure::Domain(out))
    }
}

fn big_rat(x: &BigUint) -> BigRational {
    BigRational::from_integer(x.clone().into())
}

fn series_asymptotic(which: SeriesName, order: usize, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Json], "series --asymptotic")?;
    let k = bracket_constants()?;
    let (w, values): (Which, Vec<BigUint>) = match which {
        SeriesName::A => (Which::A, solve_a(order)?.naturals("A")?),
        SeriesName::B => (Which::B, solve_bush_series(order)?.labeled),
        SeriesName::C => (Which::C, solve_c(order)?.c.naturals("C")?),
        _ => return usage("--asymptotic is available for A, B and C"),
    };
    let rows: Vec<(usize, String, f64, f64)> = (1..=order)
        .map(|n| {
            let est = asymptotic_estimate(n, w, &k);
            let v = values[n].to_f64().unwrap_or(f64::INFINITY);
            (n, values[n].to_string(), est, v / est)
        })
        .collect();
    if format == Format::Json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(n, a, e, r)| json!({"n": n, "value": a, "estimate": format!("{e:.6e}"), "ratio": format!("{r:.6}")}))
            .collect();
        return Ok(pretty(&Value::Array(v)));
    }
    let mut s = String::from("# n value estimate ratio\n");
    for (n, a, e, r) in rows {
        writeln!(s, "{n} {a} {e:.6e} {r:.6}").unwrap();
    }
    Ok(s)
}

fn bracket_json(lo: &BigRational, hi: &BigRational) -> Value {
    json!({"lo": lo.to_string(), "hi": hi.to_string()})
}

fn constants_cmd(format: Format) -> Out {
    formats(format, &[Format::Text, Format::Json], "constants")?;
    let k = bracket_constants()?;
    let root = |b: &RootBracket| (b.lo.clone(), b.hi.clone(), b.is_certified());
    let intervals: Vec<(&str, BigRational, BigRational, Option<bool>)> = {
        let iv = |i: &Interval| (i.lo.clone(), i.hi.clone());
        let (alo, ahi, ac) = root(&k.alpha);
        let (glo, ghi, gc) = root(&k.gamma);
        let mut v = vec![("alpha", alo, ahi, Some(ac)), ("gamma", glo, ghi, Some(gc))];
        for (name, i) in [
            ("alpha_inv", &k.alpha_inv),
            ("s", &k.s),
            ("beta", &k.beta),
            ("beta_inv", &k.beta_inv),
            ("beta_printed", &k.beta_printed),
            ("b0", &k.b0),
        ] {
            let (lo, hi) = iv(i);
            v.push((name, lo, hi, None));
        }
        v
    };
    if format == Format::Json {
        let mut map = serde_json::Map::new();
        map.insert("alpha_poly".into(), json!(k.alpha_poly.to_string()));
        map.insert("gamma_poly".into(), json!(k.gamma.poly.to_string()));
        for (name, lo, hi, cert) in &intervals {
            let mut b = bracket_json(lo, hi);
            if let (Some(c), Value::Object(m)) = (cert, &mut b) {
                m.insert("certified".into(), json!(c));
            }
            map.insert((*name).into(), b);
        }
        map.insert("a0".into(), json!(format!("{}", k.a0)));
        return Ok(pretty(&Value::Object(map)));
    }
    let mut s = String::new();
    writeln!(s, "alpha is the least positive root of {}", k.alpha_poly).unwrap();
    writeln!(s, "gamma is the real root of {}", k.gamma.poly).unwrap();
    for (name, lo, hi, cert) in intervals {
        let mid = ((&lo + &hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN);
        let tag = match cert {
            Some(true) => " certified",
            Some(false) => " NOT certified",
            None => "",
        };
        writeln!(s, "{name} ~ {mid:.12}{tag}\n  lo = {lo}\n  hi = {hi}").unwrap();
    }
    writeln!(s, "a0 ~ {} (bracket midpoint)", k.a0).unwrap();
    Ok(s)
}

fn curves_cmd(cmd: CurvesCommand, budget: &Budget, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Json], "curves")?;
    let json = format == Format::Json;
    match cmd {
        CurvesCommand::Count { passport, mode, variant } => {
            let v = Variant::from(variant);
            let value = match mode {
                CountMode::Rooted => rooted_curve_count(&passport, v)?,
                CountMode::Marked => marked_curve_count(&passport, v)?,
                CountMode::Slicings => tutte_slicings(&passport, v)?,
                CountMode::Bruteforce => brute_force_rooted_curves(&passport, budget)?,
            };
            Ok(if json {
                pretty(&json!({"passport": passport.parts(), "count": value.to_string()}))
            } else {
                format!("{value}\n")
            })
        }
        CurvesCommand::Bound { c: Some(c), total, .. } => {
            let mut rows = Vec::new();
            let cs: Vec<usize> = if total { (1..=c).collect() } else { vec![c] };
            for c in cs {
                let t = if total { Some(sphere_total(c, budget)?) } else { None };
                rows.push((c, sphere_bound(c), t));
            }
            if json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|(c, b, t)| {
                        json!({"c": c, "bound": format!("{b:.6e}"), "total": t.as_ref().map(ToString::to_string),
                               "below": t.as_ref().map(|t| to_f64(t) < *b)})
                    })
                    .collect();
                return Ok(pretty(&Value::Array(v)));
            }
            let mut s = String::new();
            for (c, b, t) in rows {
                match t {
                    Some(t) => {
                        let below = to_f64(&t) < b;
                        writeln!(s, "c={c} total={t} bound={b:.6e} below={below}").unwrap()
                    }
                    None => writeln!(s, "{b:.6e}").unwrap(),
                }
            }
            Ok(s)
        }
        CurvesCommand::Bound { d: Some(d), .. } => {
            let b = rp2_bound(d);
            Ok(if json { pretty(&json!({"d": d, "bound": format!("{b:.6e}")})) } else { format!("{b:.6e}\n") })
        }
        CurvesCommand::Bound { .. } => usage("curves bound needs --c or --d"),
        CurvesCommand::Pluecker { d, passport } => {
            let ok = pluecker_admissible(&passport, d);
            Ok(if json {
                pretty(&json!({"d": d, "passport": passport.parts(), "admissible": ok}))
            } else {
                format!("{}\n", if ok { "admissible" } else { "not admissible" })
            })
        }
        CurvesCommand::Oracle { max_c } => curves_oracle(max_c, budget, json),
        CurvesCommand::Inspect { diagrams, alpha } => {
            let curve = curve_arg(&diagrams, &alpha)?;
            let m = &curve.map;
            let (v, e, f) = (m.vertices().len(), m.ray_count() / 2, m.faces().len());
            let genus = if m.is_connected() { Some(curve.genus()?) } else { None };
            let strands = curve.strands();
            Ok(if json {
                pretty(&json!({"vertices": v, "edges": e, "faces": f, "connected": m.is_connected(),
                               "euler_characteristic": m.euler_characteristic(), "genus": genus, "strands": strands}))
            } else {
                let mut s = format!("V={v} E={e} F={f} chi={}\n", m.euler_characteristic());
                match genus {
                    Some(g) => writeln!(s, "genus {g}").unwrap(),
                    None => writeln!(s, "disconnected").unwrap(),
                }
                writeln!(s, "{} strands", strands.len()).unwrap();
                for st in strands {
                    writeln!(s, "  {st:?}").unwrap();
                }
                s
            })
        }
    }
}

fn curves_oracle(max_c: usize, budget: &Budget, json: bool) -> Out {
    let mut rows = Vec::new();
    let mut sums: BTreeMap<(usize, Vec<usize>), (BigUint, BigUint)> = BTreeMap::new();
    for c in 1..=max_c {
        for k in Passport::compositions(c) {
            let brute = brute_force_rooted_curves(&k, budget)?;
            let formula = rooted_curve_count(&k, Variant::Corrected)?;
            let mut tail = k.parts()[1..].to_vec();
            tail.sort_unstable();
            let e = sums.entry((k.parts()[0], tail)).or_default();
            e.0 += &brute;
            e.1 += &formula;
            rows.push((k, brute, formula));
        }
    }
    let agree = rows.iter().all(|r| r.1 == r.2);
    let sums_agree = sums.values().all(|(b, f)| b == f);
    if json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(k, b, f)| json!({"passport": k.parts(), "bruteforce": b.to_string(), "formula": f.to_string()}))
            .collect();
        return Ok(pretty(&json!({"passports": v, "agree": agree, "agree_summed_over_tail_orderings": sums_agree})));
    }
    let mut s = String::from("# passport bruteforce formula\n");
    for (k, b, f) in &rows {
        let mark = if b == f { "" } else { "  FINDING" };
        writeln!(s, "{k} {b} {f}{mark}").unwrap();
    }
    writeln!(s, "per passport: {}", if agree { "agree" } else { "differ" }).unwrap();
    writeln!(s, "summed over orderings of k_2..k_s: {}", if sums_agree { "agree" } else { "differ" }).unwrap();
    Ok(s)
}

fn render_cmd(diagram: Option<String>, cordage: bool, curve: Option<String>, alpha: Option<String>, format: Format) -> Out {
    formats(format, &[Format::Text, Format::Svg], "render")?;
    if let Some(ds) = curve {
        return Ok(render::render_curve(&curve_arg(&ds, alpha.as_deref().unwrap_or(""))?));
    }
    let Some(text) = diagram else {
        return usage("render needs a diagram or --curve");
    };
    let d = diagram_arg(&text)?;
    Ok(if cordage {
        render::render_cordage(&decompose(&d)?)
    } else {
        render::render_diagram(&d)
    })
}

fn run(cli: Cli) -> Out {
    let budget = cli.budget.resolve();
    let format = cli.format;
    match cli.command {
        Command::Check { diagram, graph, exhaustive, chords, vertices } => {
            if exhaustive {
                check_exhaustive(chords, vertices, &budget, format)
            } else if let Some(path) = graph {
                check_graph(&read_graph(&path)?, format)
            } else if let Some(text) = diagram {
                check_diagram(&diagram_arg(&text)?, format)
            } else {
                usage("check needs a diagram, --graph or --exhaustive")
            }
        }
        Command::Decompose { diagram, graph, exhaustive, chords, vertices } => {
            decompose_cmd(diagram, graph, exhaustive, chords, vertices, &budget, format)
        }
        Command::Enumerate { n, filter, emit } => enumerate_cmd(n, filter, emit, &budget, format),
        Command::Series { which, order, verify, cross_check, asymptotic } => {
            series_cmd(which, order, verify, cross_check, asymptotic, &budget, format)
        }
        Command::Constants => constants_cmd(format),
        Command::Curves(c) => curves_cmd(c, &budget, format),
        Command::Render { diagram, cordage, curve, alpha, svg: _ } => render_cmd(diagram, cordage, curve, alpha, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            // a closed pipe is not an error for a filter-style tool
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            if msg.ends_with('\n') {
                let _ = std::io::stdout().write_all(msg.as_bytes());
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
    }
}
