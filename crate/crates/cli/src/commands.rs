use std::fmt::Write as _;
use std::fs;
use std::time::Instant;

use anyhow::{bail, Context as _};
use serde::Serialize;

use wordmap::chartable::{builtin_table_file, DEFAULT_COMPUTE_BOUND, DEFAULT_RETRIES};
use wordmap::fourier::{enumeration_size, evaluate_formula};
use wordmap::letters::GeneratorProfile;
use wordmap::reduction::TraceStep;
use wordmap::{
    builtin, compute_character_table, normalize_with, oracle_expansion, parse_word, rational_annotation,
    Alphabet, CharacterTable, FiniteGroup, ReducedForm, SplitDecomposition, Strategy, Word,
};

use crate::render::{self, complex, fraction, Cx};
use crate::{Failure, Format, Options, StrategyArg};

fn strategy(opts: &Options) -> Strategy {
    match opts.strategy {
        StrategyArg::SquaresFirst => Strategy::SquaresFirst,
        StrategyArg::DismissiblesFirst => Strategy::DismissiblesFirst,
    }
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::SquaresFirst => "squares-first",
        Strategy::DismissiblesFirst => "dismissibles-first",
    }
}

fn parse_input(text: &str, opts: &Options) -> anyhow::Result<Word> {
    let alphabet = opts.alphabet.as_deref().map(Alphabet::parse_list).transpose()?;
    let w = parse_word(text, alphabet.as_ref())?;
    if w.alphabet().is_inferred() {
        eprintln!(
            "warning: alphabet inferred from the word as {}; pass --alphabet to fix the ambient rank",
            w.alphabet()
        );
    }
    Ok(w)
}

struct GroupContext {
    group: FiniteGroup,
    table: CharacterTable,
    source: String,
}

fn load_group(opts: &Options) -> anyhow::Result<GroupContext> {
    let (group, builtin_name) = match (&opts.group, &opts.group_file) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (FiniteGroup::parse_file(&text)?, None)
        }
        (Some(name), None) => (builtin(name)?, Some(name.as_str())),
        (None, None) => bail!("this command needs --group or --group-file"),
    };
    let (table, source) = if let Some(path) = &opts.table_file {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        (CharacterTable::parse_file(&group, &text)?, format!("file {}", path.display()))
    } else if let Some(text) = builtin_name.and_then(builtin_table_file) {
        (CharacterTable::parse_file(&group, text)?, "built-in".to_string())
    } else {
        let t = compute_character_table(&group, opts.seed, DEFAULT_RETRIES, DEFAULT_COMPUTE_BOUND)?;
        (t, format!("computed, seed {}", opts.seed))
    };
    Ok(GroupContext { group, table, source })
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    input: &'a str,
    reduced: String,
    was_reduced: bool,
    alphabet: &'a [String],
    alphabet_inferred: bool,
    generators: &'a [GeneratorProfile],
}

pub fn classify(text: &str, opts: &Options) -> anyhow::Result<String> {
    let w = parse_input(text, opts)?;
    let p = wordmap::classify(&w);
    let report = ClassifyReport {
        input: text,
        reduced: p.word.to_string(),
        was_reduced: p.was_reduced,
        alphabet: w.alphabet().names(),
        alphabet_inferred: w.alphabet().is_inferred(),
        generators: &p.generators,
    };
    if opts.format == Format::Json {
        return render::json(&report);
    }
    let mut out = String::new();
    writeln!(out, "word      {}", report.reduced)?;
    if report.was_reduced {
        writeln!(out, "          (freely reduced from {text})")?;
    }
    writeln!(out, "alphabet  {}\n", w.alphabet())?;
    let rows: Vec<Vec<String>> = p
        .generators
        .iter()
        .map(|g| {
            vec![
                g.name.clone(),
                g.positive.to_string(),
                g.negative.to_string(),
                render::list(&g.positions),
                g.class.as_str().to_string(),
            ]
        })
        .collect();
    out.push_str(&render::table(&["letter", "+", "-", "positions", "class"], &rows));
    Ok(out)
}

#[derive(Serialize)]
struct Prefactor {
    g_exponent: i64,
    deg_exponent: i64,
    fs_exponent: u32,
    trivial_only: bool,
    claim: String,
}

impl From<&ReducedForm> for Prefactor {
    fn from(rf: &ReducedForm) -> Self {
        Prefactor {
            g_exponent: rf.g_exponent,
            deg_exponent: rf.deg_exponent,
            fs_exponent: rf.fs_exponent,
            trivial_only: rf.trivial_only,
            claim: rf.claim(),
        }
    }
}

#[derive(Serialize)]
struct SplitReport {
    dismissibles: Vec<String>,
    n: usize,
    r: usize,
    rotated_word: String,
    segments: Vec<String>,
    slots: Vec<String>,
    tau: Vec<usize>,
    sigma: Vec<usize>,
    cycles: Vec<Vec<usize>>,
    split_words: Vec<String>,
    residual_alphabet: Vec<String>,
}

impl From<&SplitDecomposition> for SplitReport {
    fn from(s: &SplitDecomposition) -> Self {
        let names = s.word.alphabet();
        SplitReport {
            dismissibles: s.dismissibles.iter().map(|&g| names.name(g).to_string()).collect(),
            n: s.n,
            r: s.r(),
            rotated_word: s.shifted_word().to_string(),
            segments: s.segments.iter().map(Word::to_string).collect(),
            slots: s
                .slots
                .iter()
                .map(|l| format!("{}{}", names.name(l.generator), if l.inverse { "^-1" } else { "" }))
                .collect(),
            tau: s.tau.clone(),
            sigma: s.sigma.clone(),
            cycles: s.cycles.clone(),
            split_words: s.split_words.iter().map(Word::to_string).collect(),
            residual_alphabet: s.residual_alphabet.names().to_vec(),
        }
    }
}

#[derive(Serialize)]
struct FormReport {
    strategy: &'static str,
    prefactor: Prefactor,
    residual_alphabet: Vec<String>,
    residual_words: Vec<String>,
    trace: Vec<TraceStep>,
}

impl FormReport {
    fn new(rf: &ReducedForm, s: Strategy) -> Self {
        FormReport {
            strategy: strategy_name(s),
            prefactor: rf.into(),
            residual_alphabet: rf.residual_alphabet.names().to_vec(),
            residual_words: rf.residual_words.iter().map(Word::to_string).collect(),
            trace: rf.trace.clone(),
        }
    }
}

#[derive(Serialize)]
struct ReduceReport<'a> {
    input: &'a str,
    alphabet: &'a [String],
    /// The split of the word's own dismissible letters, before any square step.
    split: Option<SplitReport>,
    split_prefactor: Option<Prefactor>,
    normal_form: FormReport,
}

pub fn reduce(text: &str, opts: &Options) -> anyhow::Result<String> {
    let w = parse_input(text, opts)?;
    let direct = normalize_with(&w, Strategy::DismissiblesFirst);
    let s = strategy(opts);
    let form = normalize_with(&w, s);
    let report = ReduceReport {
        input: text,
        alphabet: w.alphabet().names(),
        split: direct.split.as_ref().map(SplitReport::from),
        split_prefactor: direct.split.as_ref().map(|_| Prefactor::from(&direct)),
        normal_form: FormReport::new(&form, s),
    };
    if opts.format == Format::Json {
        return render::json(&report);
    }
    let mut out = String::new();
    writeln!(out, "word      {}", w.free_reduce())?;
    writeln!(out, "alphabet  {}", w.alphabet())?;
    if let (Some(split), Some(pre)) = (&report.split, &report.split_prefactor) {
        writeln!(out, "\nsplit of the dismissible letters {}", render::list(&split.dismissibles))?;
        writeln!(out, "  n = {}, r = {}", split.n, split.r)?;
        writeln!(out, "  rotated   {}", split.rotated_word)?;
        for (i, (seg, slot)) in split.segments.iter().zip(&split.slots).enumerate() {
            writeln!(out, "  w{i} = {seg:<16} z{i} = {slot}")?;
        }
        writeln!(out, "  tau       {:?}", split.tau)?;
        writeln!(out, "  sigma     {:?}", split.sigma)?;
        writeln!(out, "  cycles    {:?}", split.cycles)?;
        for (i, wi) in split.split_words.iter().enumerate() {
            writeln!(out, "  W{} = {wi}", i + 1)?;
        }
        writeln!(out, "  N^chi = {}", pre.claim)?;
    }
    let nf = &report.normal_form;
    writeln!(out, "\nnormal form ({})", nf.strategy)?;
    if nf.trace.is_empty() {
        writeln!(out, "  no reduction applies")?;
    }
    for step in &nf.trace {
        let d = step.delta;
        writeln!(
            out,
            "  {:<7} {:<12} |G|^{:+} chi(1)^{:+} FS^{:+}  -> {}",
            format!("{:?}", step.rule).to_lowercase(),
            step.generators.join(","),
            d.g_exponent,
            -d.deg_exponent,
            d.fs_exponent,
            step.words.join(" ; ")
        )?;
    }
    writeln!(out, "  N^chi = {}", nf.prefactor.claim)?;
    Ok(out)
}

#[derive(Serialize)]
struct CharacterRow {
    index: usize,
    degree: usize,
    fs: Option<i8>,
    real: bool,
    coefficient: Cx,
    exact: Option<String>,
    oracle: Option<Cx>,
    delta: Option<f64>,
}

#[derive(Serialize)]
struct ExpandReport<'a> {
    input: &'a str,
    alphabet: &'a [String],
    group: String,
    order: usize,
    classes: usize,
    table: String,
    seed: Option<u64>,
    strategy: &'static str,
    claim: String,
    formula_evaluations: u64,
    oracle_evaluations: Option<u64>,
    tolerance: Option<f64>,
    max_delta: Option<f64>,
    characters: Vec<CharacterRow>,
}

pub fn expand(text: &str, opts: &Options) -> anyhow::Result<String> {
    let w = parse_input(text, opts)?;
    let ctx = load_group(opts)?;
    let (g, t) = (&ctx.group, &ctx.table);
    let s = strategy(opts);
    let rf = normalize_with(&w, s);
    let chis: Vec<usize> = (0..t.len()).collect();
    let values = evaluate_formula(&rf, g, t, &chis, opts.budget)?;
    let oracle = if opts.verify { Some(oracle_expansion(&w, g, t, opts.budget)?) } else { None };
    let n = rf.deg_exponent.max(0) as u32;
    let characters: Vec<CharacterRow> = chis
        .iter()
        .map(|&chi| {
            let value = values[chi].value;
            let o = oracle.as_ref().map(|o| o.coefficient(chi));
            CharacterRow {
                index: chi,
                degree: t.degree(chi),
                fs: t.fs_indicator(chi).ok(),
                real: t.is_real(chi),
                coefficient: value.into(),
                exact: rational_annotation(value, g.order(), t.degree(chi), n).map(fraction),
                oracle: o.map(Cx::from),
                delta: o.map(|o| (o - value).norm()),
            }
        })
        .collect();
    let max_delta = oracle.as_ref().map(|_| characters.iter().filter_map(|c| c.delta).fold(0.0, f64::max));
    let report = ExpandReport {
        input: text,
        alphabet: w.alphabet().names(),
        group: g.name().to_string(),
        order: g.order(),
        classes: t.len(),
        table: ctx.source.clone(),
        seed: t.seed,
        strategy: strategy_name(s),
        claim: rf.claim(),
        formula_evaluations: values.iter().map(|v| v.evaluations).max().unwrap_or(0),
        oracle_evaluations: oracle.as_ref().map(|_| (g.order() as u64).pow(w.alphabet().rank() as u32)),
        tolerance: oracle.as_ref().map(|_| opts.tol),
        max_delta,
        characters,
    };
    let out = if opts.format == Format::Json {
        render::json(&report)?
    } else {
        let mut out = String::new();
        writeln!(out, "word      {}", w.free_reduce())?;
        writeln!(out, "alphabet  {}", w.alphabet())?;
        writeln!(out, "group     {} (order {}, {} classes, table {})", report.group, report.order, report.classes, report.table)?;
        writeln!(out, "formula   N^chi = {}", report.claim)?;
        write!(out, "sum       {} substitutions", report.formula_evaluations)?;
        if let Some(e) = report.oracle_evaluations {
            write!(out, " (brute force: {e})")?;
        }
        out.push_str("\n\n");
        let mut header = vec!["chi", "deg", "FS", "coefficient", "exact"];
        if opts.verify {
            header.extend(["oracle", "delta"]);
        }
        let rows: Vec<Vec<String>> = report
            .characters
            .iter()
            .zip(&values)
            .map(|(c, v)| {
                let mut row = vec![
                    c.index.to_string(),
                    c.degree.to_string(),
                    c.fs.map_or("?".into(), |f| f.to_string()),
                    complex(v.value),
                    c.exact.clone().unwrap_or_else(|| "-".into()),
                ];
                if let Some(o) = &oracle {
                    row.push(complex(o.coefficient(c.index)));
                    row.push(format!("{:.1e}", c.delta.unwrap_or(0.0)));
                }
                row
            })
            .collect();
        out.push_str(&render::table(&header, &rows));
        if let Some(m) = max_delta {
            let verdict = if m <= opts.tol { "agrees" } else { "DISAGREES" };
            writeln!(out, "\nformula {verdict} with brute force: max delta {m:.1e}, tolerance {:.1e}", opts.tol)?;
        }
        out
    };
    if let Some(m) = max_delta {
        if m > opts.tol {
            print!("{out}");
            return Err(Failure::Verification(format!("max delta {m:e} exceeds tolerance {:e}", opts.tol)).into());
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct BenchRow {
    method: &'static str,
    claim: Option<String>,
    evaluations: Option<u64>,
    seconds: Option<f64>,
    max_delta: Option<f64>,
    note: Option<String>,
}

pub fn bench(text: &str, opts: &Options) -> anyhow::Result<String> {
    let w = parse_input(text, opts)?;
    let ctx = load_group(opts)?;
    let (g, t) = (&ctx.group, &ctx.table);
    let chis: Vec<usize> = (0..t.len()).collect();
    let mut rows = Vec::new();

    let rank = w.alphabet().rank();
    let start = Instant::now();
    let oracle = match oracle_expansion(&w, g, t, opts.budget) {
        Ok(o) => {
            rows.push(BenchRow {
                method: "oracle",
                claim: None,
                evaluations: Some((g.order() as u64).pow(rank as u32)),
                seconds: Some(start.elapsed().as_secs_f64()),
                max_delta: None,
                note: None,
            });
            Some(o)
        }
        Err(e) => {
            rows.push(BenchRow {
                method: "oracle",
                claim: None,
                evaluations: enumeration_size(g.order(), rank, u64::MAX).ok(),
                seconds: None,
                max_delta: None,
                note: Some(e.to_string()),
            });
            None
        }
    };
    for s in [Strategy::SquaresFirst, Strategy::DismissiblesFirst] {
        let rf = normalize_with(&w, s);
        let start = Instant::now();
        let row = match evaluate_formula(&rf, g, t, &chis, opts.budget) {
            Ok(values) => BenchRow {
                method: strategy_name(s),
                claim: Some(rf.claim()),
                evaluations: Some(values.iter().map(|v| v.evaluations).max().unwrap_or(0)),
                seconds: Some(start.elapsed().as_secs_f64()),
                max_delta: oracle.as_ref().map(|o| {
                    values.iter().zip(&chis).map(|(v, &c)| (v.value - o.coefficient(c)).norm()).fold(0.0, f64::max)
                }),
                note: None,
            },
            Err(e) => BenchRow {
                method: strategy_name(s),
                claim: Some(rf.claim()),
                evaluations: enumeration_size(g.order(), rf.residual_rank(), u64::MAX).ok(),
                seconds: None,
                max_delta: None,
                note: Some(e.to_string()),
            },
        };
        rows.push(row);
    }
    if opts.format == Format::Json {
        return render::json(&rows);
    }
    let opt = |x: Option<String>| x.unwrap_or_default();
    let mut out = String::from("method,evaluations,seconds,max_delta,claim,note\n");
    for r in &rows {
        let fields = [
            r.method.to_string(),
            opt(r.evaluations.map(|e| e.to_string())),
            opt(r.seconds.map(|s| format!("{s:.6}"))),
            opt(r.max_delta.map(|d| format!("{d:.3e}"))),
            csv_field(&opt(r.claim.clone())),
            csv_field(&opt(r.note.clone())),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Serialize)]
struct GenusReport<'a> {
    input: &'a str,
    n: usize,
    r: usize,
    genus: usize,
}

pub fn genus(text: &str, opts: &Options) -> anyhow::Result<String> {
    let w = parse_input(text, opts)?;
    let g = wordmap::genus(&w)?;
    let report = GenusReport { input: text, n: g.n, r: g.r, genus: g.genus };
    if opts.format == Format::Json {
        return render::json(&report);
    }
    Ok(format!("n = {}, r = {}, genus = {}\n", g.n, g.r, g.genus))
}
