use crate::args::*;
use crate::output::{sig, to_json, with_wall_seconds};
use fanspec_core::constructors::{ConstructSpec, Constructed};
use fanspec_core::extremal::fan_extremal_number;
use fanspec_core::oracle::{
    brute_force_extremal, brute_force_f, family_search, verify_main_theorem, Mode, SearchOptions, DEFAULT_MAX_N,
    MAX_N_ENV,
};
use fanspec_core::patterns::contains_fan;
use fanspec_core::spectral::{
    maximizer_lower_bound, multipartite_charpoly_eval, multipartite_charpoly_exact, multipartite_spectral_radius,
    perron_entry_bound_check, signless_laplacian_radius, SpectralInput, SpectralOptions, SpectrumResult,
};
use fanspec_core::{FanSpec, Graph, PartitionSizes};
use serde::Serialize;
use std::io::{BufRead, Write};
use std::path::Path;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 3,
        }
    }
}

impl From<fanspec_core::Error> for CliError {
    fn from(e: fanspec_core::Error) -> Self {
        use fanspec_core::Error as E;
        match e {
            E::NoConvergence { .. } | E::Checkpoint(_) => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

pub type CliResult<T = i32> = Result<T, CliError>;

pub fn run(command: Command, out: &mut dyn Write, stdin: &mut dyn BufRead) -> CliResult {
    match command {
        Command::Construct(a) => construct(a, out),
        Command::Lambda(a) => spectral(a, false, out, stdin),
        Command::Qlambda(a) => spectral(a, true, out, stdin),
        Command::Charpoly(a) => charpoly(a, out),
        Command::Check(a) => check(a, out, stdin),
        Command::Turannum(a) => turannum(a, out),
        Command::Brute(a) => brute(a, out),
        Command::BruteF(a) => brute_f(a, out),
        Command::Family(a) => family(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Perron(a) => perron(a, out, stdin),
    }
}

fn need<T>(value: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("{family} needs --{flag}")))
}

fn fan(k: usize, r: usize) -> CliResult<FanSpec> {
    Ok(FanSpec::new(k, r)?)
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> CliResult {
    let spec = match a.family {
        Family::Turan => ConstructSpec::Turan {
            n: need(a.n, "n", "turan")?,
            p: need(a.p, "p", "turan")?,
        },
        Family::Multipartite => {
            ConstructSpec::Multipartite(need(a.sizes, "sizes", "multipartite")?.parse::<PartitionSizes>()?)
        }
        Family::Fan => ConstructSpec::Fan(fan(need(a.k, "k", "fan")?, need(a.r, "r", "fan")?)?),
        Family::Extremal => ConstructSpec::Extremal {
            n: need(a.n, "n", "extremal")?,
            spec: fan(need(a.k, "k", "extremal")?, need(a.r, "r", "extremal")?)?,
            part: a.part,
        },
        Family::Split => ConstructSpec::Split {
            n: need(a.n, "n", "split")?,
            k: need(a.k, "k", "split")?,
        },
        Family::Ch => ConstructSpec::ChvatalHanson {
            k: need(a.k, "k", "ch")?,
        },
    };
    writeln!(out, "{}", spec.build()?.to_graph()?.to_graph6())?;
    Ok(0)
}

/// Graphs named by the source flags, or graph6 lines from stdin.
fn load(source: &Source, stdin: &mut dyn BufRead) -> CliResult<Vec<(String, Constructed)>> {
    fn lines(text: impl Iterator<Item = std::io::Result<String>>) -> CliResult<Vec<(String, Constructed)>> {
        let mut graphs = Vec::new();
        for line in text {
            let line = line?;
            let line = line.trim();
            if !line.is_empty() {
                graphs.push((line.to_string(), Constructed::Dense(Graph::from_graph6(line)?)));
            }
        }
        Ok(graphs)
    }
    if let Some(g6) = &source.graph6 {
        return Ok(vec![(g6.clone(), Constructed::Dense(Graph::from_graph6(g6)?))]);
    }
    if let Some(path) = &source.file {
        let file = std::fs::File::open(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        return lines(std::io::BufReader::new(file).lines());
    }
    if let Some(expr) = &source.construct {
        return Ok(vec![(expr.clone(), expr.parse::<ConstructSpec>()?.build()?)]);
    }
    lines(stdin.lines())
}

struct Sweep {
    name: String,
    values: Vec<usize>,
}

fn parse_sweep(text: &str) -> CliResult<Sweep> {
    let bad = || CliError::Usage(format!("--sweep expects name=start:step:end, got {text:?}"));
    let (name, range) = text.split_once('=').ok_or_else(bad)?;
    let nums: Vec<usize> = range
        .split(':')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect::<CliResult<_>>()?;
    let [start, step, end] = nums[..] else {
        return Err(bad());
    };
    if step == 0 || name.trim().is_empty() {
        return Err(bad());
    }
    Ok(Sweep {
        name: name.trim().to_string(),
        values: (start..=end).step_by(step).collect(),
    })
}

#[derive(Serialize)]
struct SpectralLine<'a> {
    lambda: f64,
    residual: f64,
    iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    vector: Option<&'a [f64]>,
}

fn eigen(g: &Constructed, signless: bool, opts: &SpectralOptions) -> CliResult<SpectrumResult> {
    Ok(if signless {
        signless_laplacian_radius(&g.to_graph()?, opts)?
    } else {
        g.adjacency_radius(opts)?
    })
}

fn spectral(a: SpectralArgs, signless: bool, out: &mut dyn Write, stdin: &mut dyn BufRead) -> CliResult {
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", a.tol)));
    }
    let opts = SpectralOptions {
        tol: a.tol,
        max_iters: a.max_iters,
    };
    let vector_text = |v: &[f64]| v.iter().map(|&x| sig(x)).collect::<Vec<_>>().join(" ");

    if let Some(sweep) = &a.sweep {
        let sweep = parse_sweep(sweep)?;
        let template = a.source.construct.as_deref().expect("clap requires --construct");
        let placeholder = format!("{{{}}}", sweep.name);
        if !template.contains(&placeholder) {
            return Err(CliError::Usage(format!("--construct has no {placeholder} placeholder")));
        }
        let format = a.format.unwrap_or(Format::Csv);
        if format == Format::Csv {
            write!(
                out,
                "{},vertices,edges,lambda,lower_bound,residual,iterations",
                sweep.name
            )?;
            writeln!(out, "{}", if a.vector { ",vector" } else { "" })?;
        }
        for value in sweep.values {
            let expr = template.replace(&placeholder, &value.to_string());
            let spec: ConstructSpec = expr.parse()?;
            let g = spec.build()?;
            let res = eigen(&g, signless, &opts)?;
            let bound = match spec {
                ConstructSpec::Extremal { n, spec, .. } if !signless => Some(maximizer_lower_bound(n, spec.r())),
                _ => None,
            };
            match format {
                Format::Csv => {
                    write!(
                        out,
                        "{value},{},{},{},{},{},{}",
                        g.n(),
                        g.edge_count(),
                        sig(res.lambda),
                        bound.map(sig).unwrap_or_default(),
                        sig(res.residual),
                        res.iterations
                    )?;
                    if a.vector {
                        write!(out, ",{}", vector_text(&res.vector))?;
                    }
                    writeln!(out)?;
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    to_json(&serde_json::json!({
                        sweep.name.as_str(): value,
                        "vertices": g.n(),
                        "edges": g.edge_count(),
                        "lambda": res.lambda,
                        "lower_bound": bound,
                        "residual": res.residual,
                        "iterations": res.iterations,
                    }))
                )?,
                Format::Raw => writeln!(out, "{}", sig(res.lambda))?,
            }
        }
        return Ok(0);
    }

    let graphs = load(&a.source, stdin)?;
    let format = a.format.unwrap_or(Format::Json);
    if format == Format::Csv {
        writeln!(
            out,
            "graph,lambda,residual,iterations{}",
            if a.vector { ",vector" } else { "" }
        )?;
    }
    for (label, g) in &graphs {
        let res = eigen(g, signless, &opts)?;
        match format {
            Format::Json => {
                let line = SpectralLine {
                    lambda: res.lambda,
                    residual: res.residual,
                    iterations: res.iterations,
                    vector: a.vector.then_some(res.vector.as_slice()),
                };
                writeln!(out, "{}", to_json(&line))?;
            }
            Format::Csv => {
                write!(
                    out,
                    "\"{label}\",{},{},{}",
                    sig(res.lambda),
                    sig(res.residual),
                    res.iterations
                )?;
                if a.vector {
                    write!(out, ",{}", vector_text(&res.vector))?;
                }
                writeln!(out)?;
            }
            Format::Raw => {
                writeln!(out, "{}", sig(res.lambda))?;
                if a.vector {
                    writeln!(out, "{}", vector_text(&res.vector))?;
                }
            }
        }
    }
    Ok(0)
}

fn charpoly(a: CharpolyArgs, out: &mut dyn Write) -> CliResult {
    let sizes: PartitionSizes = a.sizes.parse()?;
    let value = multipartite_charpoly_eval(&sizes, a.x);
    let exact = (a.x.fract() == 0.0 && a.x.abs() < 1e15)
        .then(|| multipartite_charpoly_exact(&sizes, a.x as i64).ok())
        .flatten();
    if a.raw {
        match exact {
            Some(v) => writeln!(out, "{v}")?,
            None => writeln!(out, "{}", sig(value))?,
        }
        return Ok(0);
    }
    let root = multipartite_spectral_radius(&sizes, 1e-12)?;
    let line = serde_json::json!({
        "sizes": sizes.as_slice(),
        "x": a.x,
        "value": value,
        "exact": exact.map(|v| v.to_string()),
        "spectral_radius": root.lambda,
    });
    writeln!(out, "{}", to_json(&line))?;
    Ok(0)
}

fn check(a: CheckArgs, out: &mut dyn Write, stdin: &mut dyn BufRead) -> CliResult {
    let spec = fan(a.k, a.r)?;
    let mut found = false;
    for (label, g) in load(&a.source, stdin)? {
        let witness = contains_fan(&g.to_graph()?, spec);
        found |= witness.is_some();
        if a.witness {
            let line = serde_json::json!({
                "graph": label,
                "free": witness.is_none(),
                "witness": witness,
            });
            writeln!(out, "{}", to_json(&line))?;
        } else {
            writeln!(out, "{}", if witness.is_some() { "contains" } else { "free" })?;
        }
    }
    Ok(i32::from(found))
}

fn turannum(a: TurannumArgs, out: &mut dyn Write) -> CliResult {
    let f = fan_extremal_number(a.n, fan(a.k, a.r)?)?;
    if a.raw {
        writeln!(out, "{}", f.value)?;
    } else {
        let line = serde_json::json!({
            "n": a.n, "k": a.k, "r": a.r,
            "value": f.value, "applicable": f.applicable, "threshold": f.threshold,
        });
        writeln!(out, "{}", to_json(&line))?;
    }
    Ok(0)
}

fn enumeration_cap() -> CliResult<usize> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_N_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn search_options(s: &SearchArgs) -> CliResult<SearchOptions> {
    Ok(SearchOptions {
        jobs: s.jobs.map(usize::from),
        max_n: enumeration_cap()?,
        ..Default::default()
    })
}

fn emit(text: String, out_file: Option<&Path>, out: &mut dyn Write) -> CliResult {
    if let Some(path) = out_file {
        std::fs::write(path, format!("{text}\n"))?;
    }
    writeln!(out, "{text}")?;
    Ok(0)
}

fn brute(a: BruteArgs, out: &mut dyn Write) -> CliResult {
    let spec = fan(a.k, a.r)?;
    let mut opts = search_options(&a.search)?;
    opts.checkpoint = a.checkpoint.clone().or_else(|| {
        a.search.out.as_ref().map(|p| {
            let mut name = p.file_name().unwrap_or_default().to_os_string();
            name.push(".checkpoint.json");
            p.with_file_name(name)
        })
    });
    if a.resume && opts.checkpoint.is_none() {
        return Err(CliError::Usage("--resume needs --checkpoint or --out".into()));
    }
    opts.resume = a.resume;
    let mode = match a.mode {
        ModeArg::Edges => Mode::Edges,
        ModeArg::Lambda => Mode::Lambda,
    };
    let start = Instant::now();
    let report = brute_force_extremal(a.n, spec, mode, &opts)?;
    emit(
        with_wall_seconds(&report, start.elapsed().as_secs_f64()),
        a.search.out.as_deref(),
        out,
    )
}

fn brute_f(a: BruteFArgs, out: &mut dyn Write) -> CliResult {
    let opts = search_options(&a.search)?;
    let start = Instant::now();
    let report = brute_force_f(a.beta, a.delta, a.n_max, &opts)?;
    emit(
        with_wall_seconds(&report, start.elapsed().as_secs_f64()),
        a.search.out.as_deref(),
        out,
    )
}

fn family(a: FamilyArgs, out: &mut dyn Write) -> CliResult {
    let opts = search_options(&a.search)?;
    let start = Instant::now();
    let report = family_search(a.n, fan(a.k, a.r)?, a.imbalance, &opts)?;
    emit(
        with_wall_seconds(&report, start.elapsed().as_secs_f64()),
        a.search.out.as_deref(),
        out,
    )
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CliResult {
    let opts = search_options(&a.search)?;
    let start = Instant::now();
    let check = verify_main_theorem(a.n, fan(a.k, a.r)?, &opts)?;
    emit(
        with_wall_seconds(&check, start.elapsed().as_secs_f64()),
        a.search.out.as_deref(),
        out,
    )
}

fn perron(a: PerronArgs, out: &mut dyn Write, stdin: &mut dyn BufRead) -> CliResult {
    let spec = fan(a.k, a.r)?;
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", a.tol)));
    }
    for (label, g) in load(&a.source, stdin)? {
        let check = perron_entry_bound_check(&g, spec, &SpectralOptions::with_tol(a.tol))?;
        let line = serde_json::json!({
            "graph": label,
            "n": g.n(),
            "min_entry": check.min_entry,
            "bound": check.bound,
            "holds": check.holds,
        });
        writeln!(out, "{}", to_json(&line))?;
    }
    Ok(0)
}
