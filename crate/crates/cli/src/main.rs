use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use reslat_core::coann::{classify_baer_rickart, skeleton};
use reslat_core::dot::{hasse_dot, spectrum_dot};
use reslat_core::enumerate::{census, enumerate_residuated, EnumConfig};
use reslat_core::filters::{generate_filter, is_domain, quotient};
use reslat_core::io::{serialize_lattice, serialize_lattice_compact, LatticeDocument};
use reslat_core::lattice::boolean_center;
use reslat_core::mp::{mp_check_analysis, MpReport};
use reslat_core::purity::{iota_check, pure_filters, pure_part};
use reslat_core::spectra::{coannihilator_basis_topology, separation_check, FiniteTopology, Space, Variant};
use reslat_core::{Analysis, ElementSet, Error, Filter, IoError, ResiduatedLattice};

mod render;

use render::*;

const OK: u8 = 0;
const INPUT: u8 = 1;
const CONSISTENCY: u8 = 2;
const MP_FAILS: u8 = 3;

/// Analyze finite residuated lattices.
#[derive(Parser)]
#[command(name = "reslat", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the residuated-lattice axioms.
    Validate { file: PathBuf },
    /// Filters, prime spectrum, coannulets and the Boolean center.
    Analyze { file: PathBuf },
    /// Decide mp by every characterization; exit 3 when it fails.
    Mp {
        file: PathBuf,
        /// Print the evidence behind each verdict.
        #[arg(long)]
        witness: bool,
    },
    /// Pure filters, purely-maximal and purely-prime filters.
    Pure { file: PathBuf },
    /// A spectral topology and its separation properties.
    Topology {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SpaceArg::Spec)]
        space: SpaceArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Dual)]
        variant: VariantArg,
    },
    /// Quotient by a filter given as comma-separated labels.
    Quotient {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        filter: Vec<String>,
    },
    /// All residuated lattices of one order, or a census of orders 1..=size.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        census: bool,
    },
    /// Graphviz output.
    Dot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DotArg::Hasse)]
        what: DotArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Spec,
    Min,
    Spp,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Hull,
    Dual,
    Patch,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotArg {
    Hasse,
    Spec,
}

enum Failure {
    Input(String),
    Consistency(String, Option<Box<MpReport>>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => Failure::Consistency(e.to_string(), None),
            Error::Disagreement { summary, report, lattice } => Failure::Consistency(
                format!("mp characterizations disagree: {summary}\nlattice:\n{lattice}"),
                Some(report),
            ),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Lattice(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT } else { OK });
        }
    };
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT)
        }
        Err(Failure::Consistency(msg, report)) => {
            if let (true, Some(report)) = (cli.json, report) {
                println!("{}", pretty(&serde_json::to_value(&report).expect("report serializes")));
            }
            eprintln!("error: {msg}");
            ExitCode::from(CONSISTENCY)
        }
    }
}

fn load(path: &Path) -> Result<ResiduatedLattice, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let doc: LatticeDocument = serde_json::from_str(&text).map_err(|e| Failure::from(IoError::from(e)))?;
    let l = doc.to_lattice()?;
    if l.name().is_empty() {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok(l.with_name(stem));
    }
    Ok(l)
}

fn run(cli: &Cli, out: &mut String) -> Outcome {
    match &cli.command {
        Command::Validate { file } => validate(file, cli.json, out),
        Command::Analyze { file } => analyze(&Analysis::new(load(file)?)?, cli.json, out),
        Command::Mp { file, witness } => mp(&Analysis::new(load(file)?)?, *witness, cli.json, out),
        Command::Pure { file } => pure(&Analysis::new(load(file)?)?, cli.json, out),
        Command::Topology { file, space, variant } => {
            topology(&Analysis::new(load(file)?)?, *space, *variant, cli.json, out)
        }
        Command::Quotient { file, filter } => quotient_cmd(&load(file)?, filter, cli.json, out),
        Command::Enumerate { size, census } => enumerate(*size, *census, cli.json, out),
        Command::Dot { file, what } => {
            let l = load(file)?;
            out.push_str(&match what {
                DotArg::Hasse => hasse_dot(&l),
                DotArg::Spec => spectrum_dot(&Analysis::new(l)?),
            });
            Ok(OK)
        }
    }
}

fn validate(file: &Path, as_json: bool, out: &mut String) -> Outcome {
    let report = match load(file) {
        Ok(l) => {
            let line = format!("valid: {} ({} elements)", display_name(&l), l.size());
            if as_json {
                out.push_str(&pretty(&json!({ "valid": true, "name": l.name(), "size": l.size() })));
            } else {
                out.push_str(&line);
            }
            out.push('\n');
            return Ok(OK);
        }
        Err(Failure::Input(msg)) => msg,
        Err(other) => return Err(other),
    };
    if as_json {
        out.push_str(&pretty(&json!({ "valid": false, "error": report })));
        out.push('\n');
        Ok(INPUT)
    } else {
        Err(Failure::Input(report))
    }
}

fn analyze(an: &Analysis, as_json: bool, out: &mut String) -> Outcome {
    let l = an.lattice();
    let spec = an.spectrum();
    let filters: Vec<Filter> = an.filters().filters().to_vec();
    let primes: Vec<Filter> = spec.primes().to_vec();
    let pick = |set: reslat_core::PointSet| -> Vec<Filter> { set.iter().map(|p| spec.prime(p)).collect() };
    let maximal = pick(spec.maximal());
    let minimal = pick(spec.minimal());
    let coannulets: Vec<(usize, Filter)> = (0..l.size()).map(|x| (x, an.coannulet(x))).collect();
    let beta = boolean_center(l);
    let domain = is_domain(l);
    let br = classify_baer_rickart(an, &skeleton(an)?);

    if as_json {
        let v = json!({
            "name": l.name(),
            "size": l.size(),
            "filters": filters.iter().map(|&f| labels(l, f.elements())).collect::<Vec<_>>(),
            "primes": primes.iter().map(|&f| labels(l, f.elements())).collect::<Vec<_>>(),
            "maximal": maximal.iter().map(|&f| labels(l, f.elements())).collect::<Vec<_>>(),
            "minimal": minimal.iter().map(|&f| labels(l, f.elements())).collect::<Vec<_>>(),
            "coannulets": coannulets.iter().map(|&(x, f)| (l.label(x).to_string(), labels(l, f.elements()))).collect::<serde_json::Map<_, _>>(),
            "boolean_center": labels(l, beta),
            "domain": domain.domain,
            "rickart": br.rickart,
            "baer": br.baer,
        });
        out.push_str(&pretty(&v));
        out.push('\n');
        return Ok(OK);
    }
    line(out, format!("lattice: {} ({} elements)", display_name(l), l.size()));
    line(out, format!("filters ({}): {}", filters.len(), sets(l, &filters)));
    line(out, format!("prime filters ({}): {}", primes.len(), sets(l, &primes)));
    line(out, format!("maximal filters: {}", sets(l, &maximal)));
    line(out, format!("minimal prime filters: {}", sets(l, &minimal)));
    line(out, "coannulets:".into());
    for (x, f) in coannulets {
        line(out, format!("  {}⊥ = {}", l.label(x), l.format_set(f.elements())));
    }
    line(out, format!("boolean center: {}", l.format_set(beta)));
    line(out, format!("domain: {}{}", domain.domain, pair_note(l, domain.witness, "v")));
    line(out, format!("rickart: {}", br.rickart));
    line(out, format!("baer: {}", br.baer));
    Ok(OK)
}

fn mp(an: &Analysis, witness: bool, as_json: bool, out: &mut String) -> Outcome {
    let report = mp_check_analysis(an)?;
    let code = if report.final_verdict { OK } else { MP_FAILS };
    if as_json {
        out.push_str(&pretty(&serde_json::to_value(&report).expect("report serializes")));
        out.push('\n');
        return Ok(code);
    }
    line(
        out,
        format!(
            "mp: {} ({}/{} characterizations agree)",
            report.final_verdict,
            report.agreeing(),
            report.total()
        ),
    );
    if witness {
        if let Some(w) = report.first_witness() {
            line(out, format!("witness: {}", w.summary));
        }
        for v in &report.verdicts {
            let role = match v.role {
                reslat_core::mp::Role::Equivalent => "",
                reslat_core::mp::Role::Necessary => " (necessary only)",
            };
            line(out, format!("  [{}] {}/{}{role}: {}", mark(v.value), v.family, v.id, v.statement));
            if let Some(w) = &v.witness {
                line(out, format!("      {}", w.summary));
            }
        }
    }
    Ok(code)
}

fn pure(an: &Analysis, as_json: bool, out: &mut String) -> Outcome {
    let l = an.lattice();
    let ps = pure_filters(an)?;
    let iota = iota_check(an, &ps)?;
    let parts: Vec<(Filter, Filter)> = an
        .filters()
        .filters()
        .iter()
        .map(|&f| Ok((f, pure_part(an, &ps, f)?)))
        .collect::<Result<_, Error>>()?;
    if as_json {
        let v = json!({
            "pure": ps.pure.iter().map(|&f| labels(l, f.elements())).collect::<Vec<_>>(),
            "purely_maximal": ps.purely_maximal.iter().map(|&f| labels(l, f.elements())).collect::<Vec<_>>(),
            "purely_prime": ps.purely_prime.iter().map(|&f| labels(l, f.elements())).collect::<Vec<_>>(),
            "pure_parts": parts.iter().map(|&(f, r)| json!({ "filter": labels(l, f.elements()), "pure_part": labels(l, r.elements()) })).collect::<Vec<_>>(),
            "spp_topology": topology_json(&ps.topology, |p| labels(l, ps.purely_prime[p].elements()), None),
            "iota": { "bijective": iota.bijective, "homeomorphism": iota.homeomorphism },
        });
        out.push_str(&pretty(&v));
        out.push('\n');
        return Ok(OK);
    }
    line(out, format!("pure filters ({}): {}", ps.pure.len(), sets(l, &ps.pure)));
    line(out, format!("purely-maximal: {}", sets(l, &ps.purely_maximal)));
    line(out, format!("purely-prime (Spp): {}", sets(l, &ps.purely_prime)));
    line(out, "pure parts:".into());
    for (f, r) in parts {
        line(out, format!("  ρ({}) = {}", l.format_set(f.elements()), l.format_set(r.elements())));
    }
    line(out, format!("identity Spp -> Min_d: bijective {}, homeomorphism {}", iota.bijective, iota.homeomorphism));
    Ok(OK)
}

fn topology(an: &Analysis, space: SpaceArg, variant: VariantArg, as_json: bool, out: &mut String) -> Outcome {
    let l = an.lattice();
    let spec = an.spectrum();
    let (t, names): (FiniteTopology, Vec<String>) = match space {
        SpaceArg::Spp => {
            let ps = pure_filters(an)?;
            let names = ps.purely_prime.iter().map(|&f| l.format_set(f.elements())).collect();
            (ps.topology, names)
        }
        SpaceArg::Spec | SpaceArg::Min => {
            let space = if matches!(space, SpaceArg::Spec) { Space::Spec } else { Space::Min };
            let variant = match variant {
                VariantArg::Hull => Variant::Hull,
                VariantArg::Dual => Variant::Dual,
                VariantArg::Patch => Variant::Patch,
            };
            let t = coannihilator_basis_topology(an, space, variant)?;
            let names = t.points().iter().map(|&p| l.format_set(spec.prime(p).elements())).collect();
            (t, names)
        }
    };
    let sep = separation_check(&t);
    if as_json {
        let v = topology_json(&t, |i| json!(names[i]), Some(&sep));
        out.push_str(&pretty(&v));
        out.push('\n');
        return Ok(OK);
    }
    line(out, format!("space: {} ({} variant), {} points", t.space(), t.variant(), t.len()));
    for i in 0..t.len() {
        line(out, format!("  N({}) = {}", names[i], point_set(&names, t.min_nbhd(i))));
    }
    let opens = t.opens();
    if opens.len() <= 64 {
        line(out, format!("open sets ({}): {}", opens.len(), opens.iter().map(|&s| point_set(&names, s)).collect::<Vec<_>>().join(", ")));
    } else {
        line(out, format!("open sets: {}", opens.len()));
    }
    line(out, format!("T1: {}", sep.t1));
    line(out, format!("Hausdorff: {}{}", sep.hausdorff, point_pair(&names, sep.hausdorff_witness)));
    line(out, format!("normal: {}{}", sep.normal, point_pair(&names, sep.normal_witness)));
    Ok(OK)
}

fn quotient_cmd(l: &ResiduatedLattice, filter: &[String], as_json: bool, out: &mut String) -> Outcome {
    let mut set = ElementSet::empty();
    for label in filter {
        let x = l
            .index_of(label.trim())
            .ok_or_else(|| Failure::Input(format!("unknown label {label:?}")))?;
        set.insert(x);
    }
    let f = Filter::new(l, set).ok_or_else(|| {
        Failure::Input(format!(
            "{} is not a filter; the filter it generates is {}",
            l.format_set(set),
            l.format_set(generate_filter(l, set).elements())
        ))
    })?;
    let q = quotient(l, f)?;
    let domain = is_domain(&q.lattice);
    if as_json {
        let doc: Value = serde_json::from_str(&serialize_lattice(&q.lattice)).expect("canonical document is JSON");
        let v = json!({
            "filter": labels(l, f.elements()),
            "classes": q.classes.iter().map(|&c| labels(l, c)).collect::<Vec<_>>(),
            "domain": domain.domain,
            "lattice": doc,
        });
        out.push_str(&pretty(&v));
        out.push('\n');
        return Ok(OK);
    }
    line(out, format!("quotient by {}: {} classes", l.format_set(f.elements()), q.classes.len()));
    line(out, format!("classes: {}", q.classes.iter().map(|&c| l.format_set(c)).collect::<Vec<_>>().join(", ")));
    line(out, format!("domain: {}{}", domain.domain, pair_note(&q.lattice, domain.witness, "v")));
    out.push_str(&serialize_lattice(&q.lattice));
    Ok(OK)
}

fn enumerate(size: usize, with_census: bool, as_json: bool, out: &mut String) -> Outcome {
    let config = EnumConfig::from_env()?;
    if with_census {
        let rows = census(size, &config)?;
        if as_json {
            out.push_str(&pretty(&serde_json::to_value(&rows).expect("rows serialize")));
            out.push('\n');
            return Ok(OK);
        }
        line(out, format!("{:>5} {:>9} {:>10} {:>6} {:>8} {:>6} {:>7}", "order", "lattices", "residuated", "mp", "rickart", "baer", "domain"));
        for r in rows {
            line(
                out,
                format!(
                    "{:>5} {:>9} {:>10} {:>6} {:>8} {:>6} {:>7}",
                    r.order, r.lattices, r.residuated, r.mp, r.rickart, r.baer, r.domain
                ),
            );
        }
        return Ok(OK);
    }
    for l in enumerate_residuated(size, &config)? {
        line(out, serialize_lattice_compact(&l));
    }
    Ok(OK)
}
