//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Tolerances are exact throughout (set equality, boolean agreement, byte
//! equality). Wall-clock limits are listed next to each criterion.

mod oracle;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

use reslat_core::enumerate::{isomorphism_key, naive_oracle};
use reslat_core::filters::quotient;
use reslat_core::purity::{f_sub_a, pure_filters, sigma};
use reslat_core::spectra::{coannihilator_basis_topology, separation_check};
use reslat_core::{
    bundled, enumerate_residuated, mp_check, Analysis, ElementSet, EnumConfig, Filter, PointSet, ResiduatedLattice, Space,
    Variant,
};

use oracle::{has, members, subset, Oracle, Set};

/// Criteria 1 and 2: per CLI invocation.
const CLI_LIMIT: Duration = Duration::from_secs(1);
/// Criterion 3.
const AGREEMENT_LIMIT: Duration = Duration::from_secs(600);
/// Criterion 3 covers every lattice up to this order; the structural checks reuse the corpus.
const CORPUS_ORDER: usize = 7;
/// Largest space handed to the open-set enumeration.
const MAX_POINTS: usize = 12;

type Outcome = Result<String, String>;
/// File, filters, maximal filters, minimal primes.
type Golden<'a> = (&'a str, &'a [&'a [&'a str]], &'a [&'a [&'a str]], &'a [&'a [&'a str]]);
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

struct Corpus {
    lattices: Vec<ResiduatedLattice>,
    orders: usize,
}

impl Corpus {
    fn load() -> Self {
        let config = EnumConfig::default();
        let mut lattices = Vec::new();
        for n in 1..=CORPUS_ORDER {
            lattices.extend(enumerate_residuated(n, &config).expect("enumeration within cap"));
        }
        lattices.push(bundled::a6());
        lattices.push(bundled::a8());
        Self {
            lattices,
            orders: CORPUS_ORDER,
        }
    }

    fn describe(&self) -> String {
        format!("{} lattices (order <= {}, plus A6, A8)", self.lattices.len(), self.orders)
    }
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn reslat(args: &[&str], env: &[(&str, &str)]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_reslat"))
        .args(args)
        .envs(env.iter().copied())
        .output()
        .expect("binary runs");
    (out, start.elapsed())
}

fn timed_json(args: &[&str]) -> Result<(Value, Duration), String> {
    let (out, took) = reslat(args, &[]);
    if took > CLI_LIMIT {
        return Err(format!("`reslat {}` took {:?}", args.join(" "), took));
    }
    let v = serde_json::from_slice(&out.stdout).map_err(|e| format!("`reslat {}`: {e}", args.join(" ")))?;
    Ok((v, took))
}

fn label_sets(v: &Value) -> BTreeSet<BTreeSet<String>> {
    serde_json::from_value::<Vec<BTreeSet<String>>>(v.clone()).unwrap_or_default().into_iter().collect()
}

fn expect_sets(xs: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    xs.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect()
}

fn golden_tables() -> Outcome {
    let cases: [Golden; 2] = [
        (
            "a6.json",
            &[&["1"], &["a", "b", "d", "1"], &["c", "d", "1"], &["d", "1"], &["0", "a", "b", "c", "d", "1"]],
            &[&["a", "b", "d", "1"], &["c", "d", "1"]],
            &[&["1"]],
        ),
        (
            "a8.json",
            &[
                &["1"],
                &["a", "c", "d", "e", "f", "1"],
                &["c", "e", "1"],
                &["f", "1"],
                &["0", "a", "b", "c", "d", "e", "f", "1"],
            ],
            &[&["a", "c", "d", "e", "f", "1"]],
            &[&["c", "e", "1"], &["f", "1"]],
        ),
    ];
    let mut slowest = Duration::ZERO;
    for (file, filters, maximal, minimal) in cases {
        let (v, took) = timed_json(&["analyze", &data(file), "--json"])?;
        slowest = slowest.max(took);
        for (key, want) in [("filters", filters), ("maximal", maximal), ("minimal", minimal)] {
            if label_sets(&v[key]) != expect_sets(want) {
                return Err(format!("{file}: {key} is {}", v[key]));
            }
        }
    }
    Ok(format!("A6 and A8 filters, Max, Min exact; slowest run {slowest:?} < {CLI_LIMIT:?}"))
}

fn mp_verdicts() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (file, want, code) in [("a6.json", true, 0), ("a8.json", false, 3)] {
        let (out, took) = reslat(&["mp", &data(file), "--json"], &[]);
        if took > CLI_LIMIT {
            return Err(format!("mp {file} took {took:?}"));
        }
        slowest = slowest.max(took);
        if out.status.code() != Some(code) {
            return Err(format!("mp {file} exited with {:?}", out.status.code()));
        }
        let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        if v["final"] != want || v["agree"] != true {
            return Err(format!("mp {file}: final {} agree {}", v["final"], v["agree"]));
        }
        let verdicts = v["verdicts"].as_object().ok_or("no verdicts")?;
        let families: BTreeSet<&str> = verdicts.values().filter_map(|x| x["family"].as_str()).collect();
        for (id, x) in verdicts {
            if x["role"] == "equivalent" && x["value"] != want {
                return Err(format!("mp {file}: {id} says {}", x["value"]));
            }
        }
        if families.len() != 5 {
            return Err(format!("mp {file}: families {families:?}"));
        }
    }
    Ok(format!("A6 true, A8 false, all 5 families agree; slowest run {slowest:?} < {CLI_LIMIT:?}"))
}

fn agreement(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut mp = 0;
    for l in &corpus.lattices {
        let report = mp_check(l).map_err(|e| format!("{}: {e}", l.name()))?;
        if !report.agree {
            return Err(format!("{} disagrees", l.name()));
        }
        mp += usize::from(report.final_verdict);
    }
    let took = start.elapsed();
    if took > AGREEMENT_LIMIT {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{}: all agree, {mp} mp; {took:?} < {AGREEMENT_LIMIT:?}", corpus.describe()))
}

fn oracle_equivalence() -> Outcome {
    let config = EnumConfig::default();
    let mut counts = Vec::new();
    for n in 1..=4 {
        let listed = enumerate_residuated(n, &config).map_err(|e| e.to_string())?;
        let fast: BTreeSet<Vec<u8>> = listed.iter().map(isomorphism_key).collect();
        let slow: Vec<ResiduatedLattice> = naive_oracle(n).map_err(|e| e.to_string())?;
        let slow_keys: BTreeSet<Vec<u8>> = slow.iter().map(isomorphism_key).collect();
        if fast != slow_keys || listed.len() != fast.len() || slow.len() != slow_keys.len() {
            return Err(format!("order {n}: fast {} vs naive {}", fast.len(), slow.len()));
        }
        counts.push(fast.len());
    }
    if counts[2] != 2 {
        return Err(format!("order 3 count {}", counts[2]));
    }
    Ok(format!("orders 1..4 give {counts:?} classes on both sides"))
}

fn sigma_definitions(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    for l in &corpus.lattices {
        let o = Oracle::new(l);
        let an = Analysis::new(l.clone()).map_err(|e| e.to_string())?;
        for &f in &o.filters {
            let spectral = o.sigma_spectral(f);
            let coann = o.sigma_coannulets(f);
            let lib = sigma(&an, Filter::new(l, ElementSet::from_bits(f)).ok_or("oracle filter rejected")?)
                .map_err(|e| e.to_string())?;
            if spectral != coann || lib.elements().bits() != spectral {
                return Err(format!(
                    "{} at {}: kGh {spectral:b}, coannulets {coann:b}, library {:b}",
                    l.name(),
                    l.format_set(ElementSet::from_bits(f)),
                    lib.elements().bits()
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} filters over {}", corpus.describe()))
}

/// A library space next to the oracle space built on the same points.
fn compare_space(name: &str, t: &reslat_core::FiniteTopology, o: &oracle::Space) -> Result<(), String> {
    let lib_opens: BTreeSet<Set> = t.opens().into_iter().map(|u| u.bits()).collect();
    if lib_opens != o.opens {
        return Err(format!("{name}: opens differ"));
    }
    let sep = separation_check(t);
    if sep.hausdorff != o.hausdorff() || sep.normal != o.normal() {
        return Err(format!(
            "{name}: hausdorff {} vs {}, normal {} vs {}",
            sep.hausdorff,
            o.hausdorff(),
            sep.normal,
            o.normal()
        ));
    }
    for s in 0..=o.all() {
        if t.closure(PointSet::from_bits(s)).bits() != o.closure(s) {
            return Err(format!("{name}: closure of {s:b}"));
        }
    }
    Ok(())
}

/// Oracle topology on `points` (element sets of primes) for a variant.
fn spectral_space(o: &Oracle, points: &[Set], variant: Variant) -> oracle::Space {
    let hull = |x: usize| -> Set {
        points
            .iter()
            .enumerate()
            .filter(|(_, &p)| has(p, x))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    };
    let all = (1u64 << points.len()) - 1;
    let subbasis: Vec<Set> = (0..o.n)
        .flat_map(|x| match variant {
            Variant::Dual => vec![hull(x)],
            Variant::Hull => vec![all & !hull(x)],
            _ => vec![hull(x), all & !hull(x)],
        })
        .collect();
    oracle::Space::generated(points.len(), &subbasis)
}

fn topology_engine(corpus: &Corpus) -> Outcome {
    let mut spaces = 0;
    let mut pointwise = 0;
    let mut skipped = 0;
    for l in &corpus.lattices {
        let o = Oracle::new(l);
        let an = Analysis::new(l.clone()).map_err(|e| e.to_string())?;
        let spec = an.spectrum();
        let primes: Vec<Set> = spec.primes().iter().map(|p| p.elements().bits()).collect();
        if primes.iter().copied().collect::<BTreeSet<_>>() != o.primes.iter().copied().collect() {
            return Err(format!("{}: prime filters differ from the subset scan", l.name()));
        }
        if primes.len() > MAX_POINTS {
            skipped += 1;
            continue;
        }
        for space in [Space::Spec, Space::Min] {
            let points: Vec<Set> = match space {
                Space::Spec => primes.clone(),
                _ => spec.minimal().iter().map(|p| primes[p]).collect(),
            };
            for variant in [Variant::Hull, Variant::Dual, Variant::Patch] {
                let t = coannihilator_basis_topology(&an, space, variant).map_err(|e| e.to_string())?;
                let want = spectral_space(&o, &points, variant);
                compare_space(&format!("{} {space} {variant}", l.name()), &t, &want)?;
                spaces += 1;
            }
        }
        let ps = pure_filters(&an).map_err(|e| e.to_string())?;
        let pure = o.pure();
        let spp: Vec<Set> = ps.purely_prime.iter().map(|p| p.elements().bits()).collect();
        let opens: Vec<Set> = pure
            .iter()
            .map(|&f| (0..spp.len()).filter(|&i| !subset(f, spp[i])).fold(0, |acc, i| acc | 1 << i))
            .collect();
        compare_space(&format!("{} spp", l.name()), &ps.topology, &oracle::Space::generated(spp.len(), &opens))?;
        spaces += 1;

        let hull_space = spectral_space(&o, &primes, Variant::Hull);
        let dual_space = spectral_space(&o, &primes, Variant::Dual);
        for p in 0..primes.len() {
            for q in 0..primes.len() {
                let inclusion = subset(primes[p], primes[q]);
                let in_hull_closure = has(hull_space.closure(1 << p), q);
                let in_dual_closure = has(dual_space.closure(1 << q), p);
                if inclusion != in_hull_closure || inclusion != in_dual_closure || inclusion != spec.contained(p, q) {
                    return Err(format!("{}: inclusion and the two point closures disagree at primes {p}, {q}", l.name()));
                }
                pointwise += 1;
            }
        }
    }
    Ok(format!(
        "{spaces} spaces, {pointwise} prime pairs; {skipped} spectra above {MAX_POINTS} points skipped"
    ))
}

fn structure_theorems(corpus: &Corpus) -> Outcome {
    let mut on_mp = 0;
    let mut on_other = 0;
    let mut quotients = 0;
    for l in &corpus.lattices {
        let name = l.name();
        let fail = |what: &str| Err(format!("{name}: {what}"));
        let o = Oracle::new(l);
        let an = Analysis::new(l.clone()).map_err(|e| e.to_string())?;
        let ps = pure_filters(&an).map_err(|e| e.to_string())?;
        let pure = o.pure();
        let lib_pure: Vec<Set> = ps.pure.iter().map(|f| f.elements().bits()).collect();
        if lib_pure.iter().collect::<BTreeSet<_>>() != pure.iter().collect::<BTreeSet<_>>() {
            return fail("pure filters differ from the oracle");
        }

        // every lattice
        for &f in o.filters.iter().filter(|&&f| f != o.whole) {
            let q = quotient(l, Filter::new(l, ElementSet::from_bits(f)).expect("filter"))
                .map_err(|e| e.to_string())?;
            let ql = &q.lattice;
            let domain = (0..ql.size())
                .all(|x| (0..ql.size()).all(|y| x == ql.top() || y == ql.top() || ql.join(x, y) != ql.top()));
            if domain != o.primes.contains(&f) {
                return fail(&format!("quotient by {} is a domain: {domain}", l.format_set(ElementSet::from_bits(f))));
            }
            quotients += 1;
        }
        if o.kernel(o.maximal.iter().map(|&m| o.rho(&pure, m))) != o.unit {
            return fail("the pure parts of the maximal filters meet above {1}");
        }
        let pure_primes: Vec<Set> = o.primes.iter().copied().filter(|p| pure.contains(p)).collect();
        for &p in &pure_primes {
            for &q in &pure_primes {
                if p != q && o.join(p, q) != o.whole {
                    return fail("two pure primes are not comaximal");
                }
            }
        }

        let mp = o.is_mp();
        let report = mp_check(l).map_err(|e| e.to_string())?;
        if report.final_verdict != mp {
            return fail("mp verdict differs from the oracle");
        }
        if !mp {
            on_other += 1;
            continue;
        }
        on_mp += 1;
        let minimal_in = |c: &[Set]| -> Set { o.kernel(o.minimal.iter().copied().filter(|m| c.contains(m))) };

        for &f in pure.iter().filter(|&&f| f != o.whole) {
            if minimal_in(&o.hull(f)) != f {
                return fail("a proper pure filter is not the kernel of the minimal primes above it");
            }
        }

        let dual = spectral_space(&o, &o.primes, Variant::Dual);
        let from_closed: BTreeSet<Set> = dual
            .closed()
            .into_iter()
            .map(|c| {
                let c: Vec<Set> = members(c).map(|i| o.primes[i]).collect();
                minimal_in(&c)
            })
            .collect();
        let pure_set: BTreeSet<Set> = pure.iter().copied().collect();
        if from_closed != pure_set {
            return fail("pure filters are not the kernels of Min over dual-closed sets");
        }
        let from_maximal: BTreeSet<Set> = o
            .filters
            .iter()
            .map(|&f| o.kernel(o.maximal.iter().copied().filter(|&m| subset(f, m)).map(|m| o.rho(&pure, m))))
            .collect();
        if from_maximal != pure_set {
            return fail("pure filters are not the meets of pure parts of maximal filters");
        }

        for a in 0..o.n {
            let fa = o.f_sub(&pure, a);
            let lib = f_sub_a(&an, &ps, a).map_err(|e| e.to_string())?;
            if lib.elements().bits() != fa {
                return fail(&format!("F_{} differs from the oracle", l.label(a)));
            }
            if o.coannulet(a) & fa != o.unit {
                return fail(&format!("{}⊥ meets F_{} above 1", l.label(a), l.label(a)));
            }
        }
        for &m in &o.minimal {
            let joined = members(m).fold(o.unit, |acc, a| o.join(acc, o.f_sub(&pure, a)));
            if joined != m {
                return fail("a minimal prime is not the join of its F_a");
            }
        }

        let spp = o.purely_prime(&pure);
        let lib_spp: BTreeSet<Set> = ps.purely_prime.iter().map(|p| p.elements().bits()).collect();
        if lib_spp != spp.iter().copied().collect() {
            return fail("purely-prime filters differ from the oracle");
        }
        let max_sigma = o.purely_maximal(&pure);
        if !spp.iter().all(|p| max_sigma.contains(p)) {
            return fail("a purely-prime filter is not purely-maximal");
        }
        let opens: Vec<Set> = pure
            .iter()
            .map(|&f| (0..spp.len()).filter(|&i| !subset(f, spp[i])).fold(0, |acc, i| acc | 1 << i))
            .collect();
        if !oracle::Space::generated(spp.len(), &opens).hausdorff() {
            return fail("Spp is not Hausdorff");
        }

        let min_points: Set = (0..o.primes.len())
            .filter(|&i| o.minimal.contains(&o.primes[i]))
            .fold(0, |acc, i| acc | 1 << i);
        let min_d = dual.subspace(min_points);
        let boolean_hulls: BTreeSet<Set> = o
            .boolean()
            .into_iter()
            .map(|e| {
                o.minimal
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| has(m, e))
                    .fold(0, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        // subspace points follow the order of the primes, as does `o.minimal`
        if min_d.clopens() != boolean_hulls {
            return fail("clopens of Min_d are not the traces of Boolean hulls");
        }
    }
    Ok(format!(
        "{} mp lattices (7 statements), {} others; 3 statements on all, {quotients} quotients",
        on_mp, on_other
    ))
}

fn determinism() -> Outcome {
    let runs: Vec<Vec<u8>> = ["1", "4"]
        .iter()
        .map(|t| reslat(&["enumerate", "--size", "5"], &[("RESLAT_THREADS", t)]).0.stdout)
        .collect();
    if runs[0].is_empty() || runs[0] != runs[1] {
        return Err("RESLAT_THREADS=1 and =4 differ".into());
    }
    let lines = runs[0].iter().filter(|&&b| b == b'\n').count();
    Ok(format!("RESLAT_THREADS=1 and =4 byte-identical ({} bytes, {lines} lattices)", runs[0].len()))
}

fn main() {
    let corpus = Corpus::load();
    let criteria: [Criterion; 8] = [
        ("golden tables", Box::new(golden_tables)),
        ("mp verdicts", Box::new(mp_verdicts)),
        ("characterization agreement", Box::new(|| agreement(&corpus))),
        ("enumerator vs naive oracle", Box::new(oracle_equivalence)),
        ("sigma dual definition", Box::new(|| sigma_definitions(&corpus))),
        ("topology engine", Box::new(|| topology_engine(&corpus))),
        ("structure theorems", Box::new(|| structure_theorems(&corpus))),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
